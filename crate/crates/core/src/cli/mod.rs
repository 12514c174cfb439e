//! The `rdstab` command line.
//!
//! ```text
//! rdstab analyze  --config le.cfg --length 100 --modes 400 --json
//! rdstab bounds   --config le.cfg --u0 3.8:4.2 --v0 2.8:3.2 --json
//! rdstab simulate --config le.cfg --mode pde --L 100 --n 256 --tend 200 --dt-out 1 --out run/ --svg
//! rdstab sweep    --config le.cfg --axis a --values 5.59,6.0 --out sweep/
//! ```
//!
//! Config files are flat `key = value` text holding the model keys and,
//! optionally, scenario keys (`mode`, `length`, `nodes`, `t_end`,
//! `dt_out`, `init`, `u0`, `v0`, `amp`, `wavelen`, `wave`, `modes`, `out`,
//! `seed`). Flags override file values. `RDSTAB_THREADS` caps sweep
//! parallelism.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_analyze, cmd_bounds, cmd_simulate, cmd_sweep, exit_code, parse_range, parse_values,
    read_sweep_csv, write_sweep_csv, AnalyzeReport, SimulateResult, SweepRow, EXIT_BLOWUP,
    EXIT_LOAD, EXIT_OK, EXIT_PRECONDITION, EXIT_ROOT,
};
pub use config::{config_hash, InitKind, RunConfig, ScenarioConfig};
pub use output::{
    fmt_num, read_manifest, read_table, render_svg, RunManifest, Table, DIAGNOSTICS_FILE,
    MANIFEST_FILE, PLOT_FILE, SWEEP_FILE, TRAJECTORY_FILE,
};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "rdstab",
    version,
    about = "Stability analysis and simulation of two-species reaction-diffusion systems"
)]
struct Cli {
    /// Run configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write plot.svg.
    #[arg(long, global = true)]
    svg: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hypotheses, equilibrium, Turing classification, bounds and global verdict.
    Analyze {
        /// Interval length for the Neumann spectrum.
        #[arg(long)]
        length: Option<f64>,
        /// Number of nonzero modes in the spectrum.
        #[arg(long)]
        modes: Option<usize>,
    },
    /// Trapping rectangle and solution bounds for ranges of initial data.
    Bounds {
        #[arg(long, value_name = "MIN:MAX")]
        u0: Option<String>,
        #[arg(long, value_name = "MIN:MAX")]
        v0: Option<String>,
    },
    /// Integrate the kinetics or the 1-D PDE and write CSV output.
    Simulate(SimArgs),
    /// Vary one model parameter and summarize each value.
    Sweep {
        #[arg(long)]
        axis: String,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Debug, Args)]
struct SimArgs {
    /// `ode` or `pde`.
    #[arg(long)]
    mode: Option<String>,
    /// Domain length.
    #[arg(long = "L", alias = "length")]
    length: Option<f64>,
    /// Grid nodes.
    #[arg(long = "n", alias = "nodes")]
    nodes: Option<usize>,
    #[arg(long = "tend")]
    t_end: Option<f64>,
    #[arg(long = "dt-out")]
    dt_out: Option<f64>,
    /// `constant`, `sine` or `mode`.
    #[arg(long)]
    init: Option<String>,
    #[arg(long)]
    u0: Option<f64>,
    #[arg(long)]
    v0: Option<f64>,
    #[arg(long)]
    amp: Option<f64>,
    #[arg(long)]
    wavelen: Option<f64>,
}

impl SimArgs {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        let sc = &mut cfg.scenario;
        if let Some(m) = &self.mode {
            sc.mode = config::parse_mode(m)?;
        }
        if let Some(init) = &self.init {
            sc.init = init.parse()?;
        }
        sc.length = self.length.unwrap_or(sc.length);
        sc.nodes = self.nodes.unwrap_or(sc.nodes);
        sc.t_end = self.t_end.or(sc.t_end);
        sc.dt_out = self.dt_out.or(sc.dt_out);
        sc.u0 = self.u0.or(sc.u0);
        sc.v0 = self.v0.or(sc.v0);
        sc.amp = self.amp.unwrap_or(sc.amp);
        sc.wavelen = self.wavelen.unwrap_or(sc.wavelen);
        Ok(())
    }
}

/// Worker threads for sweeps, from `RDSTAB_THREADS`.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var("RDSTAB_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| {
                Error::Config(format!(
                    "RDSTAB_THREADS must be a positive integer, got `{s}`"
                ))
            }),
        Err(_) => Ok(None),
    }
}

/// Output of one invocation: what to print and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(err: &Error) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: exit_code(err),
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |x| format!("{x:.6}"))
}

fn analyze_text(r: &AnalyzeReport) -> String {
    let mut s = format!(
        "preset         {}\ndelta          {:.6}\n",
        r.preset, r.delta
    );
    if let Some(eq) = &r.equilibrium {
        s += &format!(
            "equilibrium    ({:.6}, {:.6})  trace {:.6}  det {:.6}  ode stable {}\n",
            eq.u_star, eq.v_star, eq.trace, eq.det, eq.ode_stable
        );
    }
    if let Some(h) = &r.hypotheses {
        s += &format!(
            "hypotheses     con1 {} con2 {} con3 {} con4 {} con5 {} con6 {} f'<sigma {}\n",
            h.con1.holds,
            h.con2.holds,
            h.con3.holds,
            h.con4.holds,
            h.con5.holds,
            h.con6.holds,
            h.theorem5.holds
        );
    }
    if let Some(t) = &r.turing {
        s += &format!(
            "turing         {}  d2/sigma {:.6}  d_crit {}\n",
            t.verdict.as_str(),
            t.ratio,
            opt(t.d_crit)
        );
    }
    if let Some(e) = &r.turing_error {
        s += &format!("turing         not classified: {e}\n");
    }
    if let Some(b) = &r.bounds {
        s += &format!(
            "bounds         C1 {:.6}  C2 {:.6}  C2_box {:.6}\n",
            b.c1, b.c2, b.c2_box
        );
    }
    if let Some(g) = &r.global_verdict {
        s += &format!("global         {g}\n");
    }
    s
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| Error::Config("--config is required".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if cli.out.is_some() {
        cfg.scenario.out = cli.out.clone();
    }
    match cli.command {
        Command::Analyze { length, modes } => {
            cfg.scenario.length = length.unwrap_or(cfg.scenario.length);
            cfg.scenario.modes = modes.unwrap_or(cfg.scenario.modes);
            let report = cmd_analyze(&cfg)?;
            let stdout = if cli.json {
                to_json(&report)?
            } else {
                analyze_text(&report)
            };
            Ok(Outcome {
                stderr: if report.exit_code == EXIT_OK {
                    String::new()
                } else {
                    format!("error: {}\n", report.status)
                },
                stdout,
                code: report.exit_code,
            })
        }
        Command::Bounds { u0, v0 } => {
            let u0 = u0.as_deref().map(parse_range).transpose()?;
            let v0 = v0.as_deref().map(parse_range).transpose()?;
            let b = cmd_bounds(&cfg, u0, v0)?;
            Ok(Outcome::ok(if cli.json {
                to_json(&b)?
            } else {
                format!(
                    "u in [{:.6}, {:.6}]\nv in [{:.6}, {:.6}]\nC1 {:.6}  C2 {:.6}  C2_box {:.6}  valid {}\n",
                    b.u1, b.u2, b.v1, b.v2, b.c1, b.c2, b.c2_box, b.valid
                )
            }))
        }
        Command::Simulate(args) => {
            args.apply(&mut cfg)?;
            let res = cmd_simulate(&cfg, cli.svg)?;
            Ok(Outcome::ok(if cli.json {
                to_json(&res.manifest)?
            } else {
                format!(
                    "wrote {} snapshots to {}\nfinal distance {:.3e}  converged {}\n",
                    res.manifest.snapshots,
                    res.out_dir.display(),
                    res.manifest.final_distance,
                    res.manifest.converged
                )
            }))
        }
        Command::Sweep { axis, values, sim } => {
            sim.apply(&mut cfg)?;
            let values = parse_values(&values)?;
            let rows = cmd_sweep(&cfg, &axis, &values, thread_limit()?)?;
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &rows)?;
            if let Some(dir) = &cfg.scenario.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(SWEEP_FILE), &buf)?;
            }
            Ok(Outcome::ok(
                String::from_utf8(buf).expect("csv output is UTF-8"),
            ))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_LOAD } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    dispatch(cli).unwrap_or_else(|e| Outcome::error(&e))
}

/// Runs with the process arguments, printing the outcome.
pub fn run() -> i32 {
    let out = run_with(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
