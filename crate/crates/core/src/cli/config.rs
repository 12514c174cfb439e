//! Run configuration: model keys plus scenario keys in one flat file.

use std::fmt::Write as _;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{parse_key_values, ModelConfig, ModelSpec};
use crate::sim::{Grid1D, InitialData, SimMode};

const SCENARIO_KEYS: &[&str] = &[
    "mode", "length", "nodes", "t_end", "dt_out", "init", "u0", "v0", "amp", "wavelen", "wave",
    "modes", "out", "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitKind {
    Constant,
    Sine,
    Mode,
}

impl std::str::FromStr for InitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(InitKind::Constant),
            "sine" => Ok(InitKind::Sine),
            "mode" => Ok(InitKind::Mode),
            _ => Err(Error::Config(format!(
                "unknown init `{s}` (expected constant, sine or mode)"
            ))),
        }
    }
}

impl InitKind {
    fn as_str(self) -> &'static str {
        match self {
            InitKind::Constant => "constant",
            InitKind::Sine => "sine",
            InitKind::Mode => "mode",
        }
    }
}

pub fn parse_mode(s: &str) -> Result<SimMode> {
    match s {
        "ode" => Ok(SimMode::Ode),
        "pde" => Ok(SimMode::Pde),
        _ => Err(Error::Config(format!(
            "unknown mode `{s}` (expected ode or pde)"
        ))),
    }
}

fn mode_str(mode: SimMode) -> &'static str {
    match mode {
        SimMode::Ode => "ode",
        SimMode::Pde => "pde",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub mode: SimMode,
    pub length: f64,
    pub nodes: usize,
    pub t_end: Option<f64>,
    pub dt_out: Option<f64>,
    pub init: InitKind,
    pub u0: Option<f64>,
    pub v0: Option<f64>,
    pub amp: f64,
    pub wavelen: f64,
    /// Mode index for `init = mode`.
    pub wave: usize,
    /// Spectrum truncation for the stability analysis.
    pub modes: usize,
    pub out: Option<PathBuf>,
    /// Accepted and recorded; nothing in a run is random.
    pub seed: Option<u64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            mode: SimMode::Ode,
            length: 100.0,
            nodes: 256,
            t_end: None,
            dt_out: None,
            init: InitKind::Sine,
            u0: None,
            v0: None,
            amp: 0.2,
            wavelen: 5.0,
            wave: 1,
            modes: 400,
            out: None,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub scenario: ScenarioConfig,
}

fn number(line: usize, key: &str, value: &str) -> Result<f64> {
    let x: f64 = value
        .parse()
        .map_err(|_| Error::Config(format!("line {line}: `{key}` is not a number: `{value}`")))?;
    if !x.is_finite() {
        return Err(Error::Config(format!(
            "line {line}: `{key}` must be finite"
        )));
    }
    Ok(x)
}

fn count(line: usize, key: &str, value: &str) -> Result<usize> {
    value.parse().map_err(|_| {
        Error::Config(format!(
            "line {line}: `{key}` must be a non-negative integer, got `{value}`"
        ))
    })
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let pairs = parse_key_values(text)?;
        let (scenario_pairs, model_pairs): (Vec<_>, Vec<_>) = pairs
            .into_iter()
            .partition(|(_, k, _)| SCENARIO_KEYS.contains(&k.as_str()));
        let model = ModelConfig::from_pairs(model_pairs)?;
        let mut sc = ScenarioConfig::default();
        for (line, key, value) in scenario_pairs {
            let v = value.as_str();
            match key.as_str() {
                "mode" => sc.mode = parse_mode(v)?,
                "length" => sc.length = number(line, &key, v)?,
                "nodes" => sc.nodes = count(line, &key, v)?,
                "t_end" => sc.t_end = Some(number(line, &key, v)?),
                "dt_out" => sc.dt_out = Some(number(line, &key, v)?),
                "init" => sc.init = v.parse()?,
                "u0" => sc.u0 = Some(number(line, &key, v)?),
                "v0" => sc.v0 = Some(number(line, &key, v)?),
                "amp" => sc.amp = number(line, &key, v)?,
                "wavelen" => sc.wavelen = number(line, &key, v)?,
                "wave" => sc.wave = count(line, &key, v)?,
                "modes" => sc.modes = count(line, &key, v)?,
                "out" => sc.out = Some(PathBuf::from(v)),
                "seed" => {
                    sc.seed = Some(v.parse().map_err(|_| {
                        Error::Config(format!("line {line}: `seed` must be an unsigned integer"))
                    })?)
                }
                _ => unreachable!(),
            }
        }
        Ok(Self {
            model,
            scenario: sc,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical text form; parsing it gives back an equal config.
    pub fn to_text(&self) -> String {
        let mut s = self.model.to_text();
        let sc = &self.scenario;
        let _ = writeln!(s, "mode = {}", mode_str(sc.mode));
        let _ = writeln!(s, "length = {:?}", sc.length);
        let _ = writeln!(s, "nodes = {}", sc.nodes);
        if let Some(t) = sc.t_end {
            let _ = writeln!(s, "t_end = {t:?}");
        }
        if let Some(t) = sc.dt_out {
            let _ = writeln!(s, "dt_out = {t:?}");
        }
        let _ = writeln!(s, "init = {}", sc.init.as_str());
        if let Some(x) = sc.u0 {
            let _ = writeln!(s, "u0 = {x:?}");
        }
        if let Some(x) = sc.v0 {
            let _ = writeln!(s, "v0 = {x:?}");
        }
        let _ = writeln!(s, "amp = {:?}", sc.amp);
        let _ = writeln!(s, "wavelen = {:?}", sc.wavelen);
        let _ = writeln!(s, "wave = {}", sc.wave);
        let _ = writeln!(s, "modes = {}", sc.modes);
        if let Some(out) = &sc.out {
            let _ = writeln!(s, "out = {}", out.display());
        }
        if let Some(seed) = sc.seed {
            let _ = writeln!(s, "seed = {seed}");
        }
        s
    }

    /// Hex SHA-256 of [`RunConfig::to_text`].
    pub fn hash(&self) -> String {
        config_hash(&self.to_text())
    }

    pub fn spec(&self) -> Result<ModelSpec> {
        self.model.build()
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.scenario.length, self.scenario.nodes)
    }

    /// The simulation horizon and output spacing, validated.
    pub fn times(&self) -> Result<(f64, f64)> {
        let t_end = self
            .scenario
            .t_end
            .ok_or_else(|| Error::Config("`t_end` is required for a simulation".into()))?;
        if !(t_end > 0.0) {
            return Err(Error::Config(format!(
                "`t_end` must be positive, got {t_end}"
            )));
        }
        let dt_out = self.scenario.dt_out.unwrap_or(t_end / 100.0);
        if !(dt_out > 0.0) {
            return Err(Error::Config(format!(
                "`dt_out` must be positive, got {dt_out}"
            )));
        }
        Ok((t_end, dt_out))
    }

    pub fn initial_data(&self) -> Result<InitialData> {
        let sc = &self.scenario;
        let (u0, v0) = match (sc.u0, sc.v0) {
            (Some(u), Some(v)) => (u, v),
            _ => {
                return Err(Error::Config(
                    "`u0` and `v0` are required for a simulation".into(),
                ))
            }
        };
        Ok(match sc.init {
            InitKind::Constant => InitialData::Constant { u0, v0 },
            InitKind::Sine => InitialData::SinePerturbed {
                u_base: u0,
                v_base: v0,
                amp: sc.amp,
                wavelen_param: sc.wavelen,
            },
            InitKind::Mode => InitialData::Mode {
                u_base: u0,
                v_base: v0,
                u_amp: sc.amp,
                v_amp: sc.amp,
                mode: sc.wave,
            },
        })
    }
}

pub fn config_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
