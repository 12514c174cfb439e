//! Driving the analysis from a run configuration, as the `rdstab` binary
//! does, and printing the JSON report.

use rdstab::cli::{cmd_analyze, RunConfig};

const CONFIG: &str = "
# FitzHugh-Nagumo, stimulus I = 2
preset = fitzhugh_nagumo
beta = 0.139
eps = 0.008
gamma = 2.54
stim = 2

length = 100
modes = 400
";

fn main() -> rdstab::Result<()> {
    let cfg = RunConfig::parse(CONFIG)?;
    println!("canonical form (sha256 {}):\n{}", cfg.hash(), cfg.to_text());
    let report = cmd_analyze(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    println!("exit code would be {}", report.exit_code);
    Ok(())
}
