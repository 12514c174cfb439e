use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Domains whose Neumann Laplacian eigenvalues are known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Interval { length: f64 },
    Rectangle { lx: f64, ly: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumConfig {
    pub geometry: Geometry,
    pub max_modes: usize,
}

impl SpectrumConfig {
    pub fn interval(length: f64, max_modes: usize) -> Self {
        Self {
            geometry: Geometry::Interval { length },
            max_modes,
        }
    }

    pub fn rectangle(lx: f64, ly: f64, max_modes: usize) -> Self {
        Self {
            geometry: Geometry::Rectangle { lx, ly },
            max_modes,
        }
    }
}

/// Eigenvalues `0 = λ_0 < λ_1 ≤ λ_2 ≤ …` of `-Δ` with no-flux boundaries,
/// repeated according to multiplicity; returns `max_modes + 1` values.
pub fn neumann_eigenvalues(cfg: &SpectrumConfig) -> Result<Vec<f64>> {
    if cfg.max_modes < 1 {
        return Err(Error::Domain("max_modes must be at least 1".into()));
    }
    let n = cfg.max_modes;
    match cfg.geometry {
        Geometry::Interval { length } => {
            check_length("length", length)?;
            Ok((0..=n).map(|i| (i as f64 * PI / length).powi(2)).collect())
        }
        Geometry::Rectangle { lx, ly } => {
            check_length("lx", lx)?;
            check_length("ly", ly)?;
            // indices up to n in each direction already contain the n+1
            // smallest values: (i, 0) for i ≤ n gives n+1 candidates, and any
            // index above n exceeds all of them along that axis
            let mut all = Vec::with_capacity((n + 1) * (n + 1));
            for i in 0..=n {
                let kx = (i as f64 * PI / lx).powi(2);
                for j in 0..=n {
                    all.push(kx + (j as f64 * PI / ly).powi(2));
                }
            }
            all.sort_by(f64::total_cmp);
            all.truncate(n + 1);
            Ok(all)
        }
    }
}

fn check_length(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive, got {value}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_of_length_pi() {
        let ev = neumann_eigenvalues(&SpectrumConfig::interval(PI, 3)).unwrap();
        let expect = [0.0, 1.0, 4.0, 9.0];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn square_by_enumeration() {
        let ev = neumann_eigenvalues(&SpectrumConfig::rectangle(PI, PI, 4)).unwrap();
        // brute force: i² + j² over 0 ≤ i, j ≤ 8, sorted
        let mut brute: Vec<f64> = (0..=8)
            .flat_map(|i| (0..=8).map(move |j| (i * i + j * j) as f64))
            .collect();
        brute.sort_by(f64::total_cmp);
        assert_eq!(brute[..5], [0.0, 1.0, 1.0, 2.0, 4.0]);
        for (a, b) in ev.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn long_interval_first_mode() {
        let ev = neumann_eigenvalues(&SpectrumConfig::interval(100.0, 1)).unwrap();
        assert!((ev[1] - 9.869604401089358e-4).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(neumann_eigenvalues(&SpectrumConfig::interval(0.0, 3)).is_err());
        assert!(neumann_eigenvalues(&SpectrumConfig::interval(1.0, 0)).is_err());
        assert!(neumann_eigenvalues(&SpectrumConfig::rectangle(1.0, -1.0, 3)).is_err());
    }

    #[test]
    fn rectangle_is_nondecreasing_with_anisotropy() {
        let ev = neumann_eigenvalues(&SpectrumConfig::rectangle(3.0, 0.7, 40)).unwrap();
        assert_eq!(ev.len(), 41);
        assert_eq!(ev[0], 0.0);
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        let mut brute: Vec<f64> = (0..200)
            .flat_map(|i| {
                (0..200).map(move |j| (i as f64 * PI / 3.0).powi(2) + (j as f64 * PI / 0.7).powi(2))
            })
            .collect();
        brute.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(&brute) {
            assert!((a - b).abs() <= 1e-12 * b.max(1.0));
        }
    }
}
