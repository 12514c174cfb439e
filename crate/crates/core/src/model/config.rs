//! Flat `key = value` model configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{preset_fitzhugh_nagumo, preset_lengyel_epstein, ModelSpec, Preset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    LengyelEpstein,
    FitzhughNagumo,
}

impl PresetKind {
    /// Parameter names accepted for this preset, in canonical order.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            PresetKind::LengyelEpstein => &["a", "mu", "lambda", "sigma", "d1", "d2"],
            PresetKind::FitzhughNagumo => &["beta", "eps", "gamma", "stim", "d1", "d2"],
        }
    }

    /// Reference values: `a² = 125/4, μ = 1, λ = 4, σ = 0.5,
    /// d1 = 1, d2 = σc = 0.5` and `β = 0.139, ε = 0.008, γ = 2.54, I = 2`
    /// with unit diffusivities.
    fn default_value(self, key: &str) -> f64 {
        match (self, key) {
            (PresetKind::LengyelEpstein, "a") => (125.0f64 / 4.0).sqrt(),
            (PresetKind::LengyelEpstein, "mu") => 1.0,
            (PresetKind::LengyelEpstein, "lambda") => 4.0,
            (PresetKind::LengyelEpstein, "sigma") => 0.5,
            (PresetKind::LengyelEpstein, "d1") => 1.0,
            (PresetKind::LengyelEpstein, "d2") => 0.5,
            (PresetKind::FitzhughNagumo, "beta") => 0.139,
            (PresetKind::FitzhughNagumo, "eps") => 0.008,
            (PresetKind::FitzhughNagumo, "gamma") => 2.54,
            (PresetKind::FitzhughNagumo, "stim") => 2.0,
            (PresetKind::FitzhughNagumo, "d1") => 1.0,
            (PresetKind::FitzhughNagumo, "d2") => 1.0,
            _ => unreachable!("unknown key {key} for {self}"),
        }
    }
}

impl fmt::Display for PresetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresetKind::LengyelEpstein => "lengyel_epstein",
            PresetKind::FitzhughNagumo => "fitzhugh_nagumo",
        })
    }
}

impl FromStr for PresetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lengyel_epstein" => Ok(PresetKind::LengyelEpstein),
            "fitzhugh_nagumo" => Ok(PresetKind::FitzhughNagumo),
            other => Err(Error::Config(format!(
                "unknown preset `{other}` (expected lengyel_epstein or fitzhugh_nagumo)"
            ))),
        }
    }
}

/// A preset name plus parameter values. Parameters not given fall back to
/// the preset's reference values.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub preset: PresetKind,
    params: BTreeMap<&'static str, f64>,
}

/// Splits `key = value` lines, dropping `#` comments and blank lines.
/// Returns `(line number, key, value)` triples.
pub fn parse_key_values(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "line {}: expected `key = value`, got `{line}`",
                idx + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Config(format!(
                "line {}: empty key or value in `{line}`",
                idx + 1
            )));
        }
        if out
            .iter()
            .any(|(_, k, _): &(usize, String, String)| k == key)
        {
            return Err(Error::Config(format!(
                "line {}: duplicate key `{key}`",
                idx + 1
            )));
        }
        out.push((idx + 1, key.to_string(), value.to_string()));
    }
    Ok(out)
}

impl ModelConfig {
    pub fn new(preset: PresetKind) -> Self {
        let params = preset
            .keys()
            .iter()
            .map(|&k| (k, preset.default_value(k)))
            .collect();
        Self { preset, params }
    }

    /// Parses a model-only config file. Unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_pairs(parse_key_values(text)?)
    }

    /// Builds a config from already split pairs; every key must be
    /// `preset` or a parameter of that preset.
    pub fn from_pairs(pairs: Vec<(usize, String, String)>) -> Result<Self> {
        let preset = pairs
            .iter()
            .find(|(_, k, _)| k == "preset")
            .ok_or_else(|| Error::Config("missing required key `preset`".into()))?
            .2
            .parse::<PresetKind>()?;
        let mut cfg = Self::new(preset);
        for (line, key, value) in pairs {
            if key == "preset" {
                continue;
            }
            let number: f64 = value.parse().map_err(|_| {
                Error::Config(format!("line {line}: `{key}` is not a number: `{value}`"))
            })?;
            cfg.set(&key, number)
                .map_err(|e| Error::Config(format!("line {line}: {e}")))?;
        }
        Ok(cfg)
    }

    pub fn from_spec(spec: &ModelSpec) -> Result<Self> {
        let preset = spec
            .preset
            .ok_or_else(|| Error::Config("spec was not built from a preset".into()))?;
        let mut cfg = match preset {
            Preset::LengyelEpstein { a, mu } => {
                let mut cfg = Self::new(PresetKind::LengyelEpstein);
                cfg.params.insert("a", a);
                cfg.params.insert("mu", mu);
                cfg.params.insert("lambda", spec.lambda);
                cfg.params.insert("sigma", spec.sigma);
                cfg
            }
            Preset::FitzhughNagumo {
                beta,
                eps,
                gamma,
                stim,
            } => {
                let mut cfg = Self::new(PresetKind::FitzhughNagumo);
                cfg.params.insert("beta", beta);
                cfg.params.insert("eps", eps);
                cfg.params.insert("gamma", gamma);
                cfg.params.insert("stim", stim);
                cfg
            }
        };
        cfg.params.insert("d1", spec.d1);
        cfg.params.insert("d2", spec.d2);
        Ok(cfg)
    }

    /// Parameter values in the preset's canonical key order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        self.preset
            .keys()
            .iter()
            .map(|&k| (k, self.params[k]))
            .collect()
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = self.params.get_mut(key).ok_or_else(|| {
            Error::Config(format!(
                "unknown key `{key}` for preset {} (expected one of {})",
                self.preset,
                self.preset.keys().join(", ")
            ))
        })?;
        if !value.is_finite() {
            return Err(Error::Config(format!("`{key}` must be finite")));
        }
        *slot = value;
        Ok(())
    }

    pub fn build(&self) -> Result<ModelSpec> {
        let p = |k: &str| self.params[k];
        match self.preset {
            PresetKind::LengyelEpstein => {
                preset_lengyel_epstein(p("a"), p("mu"), p("lambda"), p("sigma"), p("d1"), p("d2"))
            }
            PresetKind::FitzhughNagumo => {
                preset_fitzhugh_nagumo(p("beta"), p("eps"), p("gamma"), p("stim"), p("d1"), p("d2"))
            }
        }
    }

    /// Canonical text form, parseable by [`ModelConfig::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("preset = {}\n", self.preset);
        for key in self.preset.keys() {
            s.push_str(&format!("{key} = {:?}\n", self.params[key]));
        }
        s
    }
}
