//! First relativistic (kinetic `p^4`) correction to hydrogen levels and the
//! side-by-side comparison with the quaternionic shift. Energies in eV.

use crate::error::{Error, Result};
use crate::series::{self, PerturbationSpec};

/// Rydberg energy used for the published comparison table.
pub const RYDBERG_EV: f64 = 13.6;
/// CODATA 2018 Rydberg energy.
pub const RYDBERG_CODATA_EV: f64 = 13.605_693_122_994;
/// Electron rest energy `m_e c^2` (CODATA 2018).
pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.95;

/// Energy scale for hydrogen computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenScale {
    pub rydberg_ev: f64,
    pub rest_energy_ev: f64,
}

impl Default for HydrogenScale {
    fn default() -> Self {
        HydrogenScale { rydberg_ev: RYDBERG_EV, rest_energy_ev: ELECTRON_REST_ENERGY_EV }
    }
}

impl HydrogenScale {
    pub fn codata() -> Self {
        HydrogenScale { rydberg_ev: RYDBERG_CODATA_EV, ..Self::default() }
    }

    /// `-R_y / n^2`.
    pub fn level(&self, n: u32) -> f64 {
        let nf = f64::from(n);
        -self.rydberg_ev / (nf * nf)
    }

    /// Largest `alpha |W|` for which the level-`n` series converges: `R_y / n^2`.
    pub fn max_coupling(&self, n: u32) -> f64 {
        -self.level(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticLevel {
    pub n: u32,
    pub l: u32,
    pub energy_ev: f64,
}

/// `-R_y/n^2 - R_y^2 / (2 m_e c^2 n^4) (8n/(2l+1) - 3)`.
pub fn relativistic_energy(n: u32, l: u32, scale: &HydrogenScale) -> Result<RelativisticLevel> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumber { model: crate::ModelKind::Hydrogen, n });
    }
    if l >= n {
        return Err(Error::InvalidOrbital { n, l });
    }
    let nf = f64::from(n);
    let ry = scale.rydberg_ev;
    let shift = ry * ry / (2.0 * scale.rest_energy_ev * nf.powi(4))
        * (8.0 * nf / (2.0 * f64::from(l) + 1.0) - 3.0);
    Ok(RelativisticLevel { n, l, energy_ev: scale.level(n) - shift })
}

/// Quaternionic hydrogen level `E(n, alpha |W|)` for `alpha |W|` in eV.
pub fn quaternionic_energy(n: u32, alpha_w_ev: f64, scale: &HydrogenScale) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumber { model: crate::ModelKind::Hydrogen, n });
    }
    let spec = PerturbationSpec::with_modulus(scale.level(n), alpha_w_ev, 1.0)?;
    series::closed_form_limit(&spec)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n: u32,
    pub e_complex: f64,
    pub e_relativistic: f64,
    pub e_quaternionic: f64,
    pub alpha_w_ev: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// Levels left out because `alpha |W| > R_y / n^2`.
    pub omitted: Vec<u32>,
}

/// Rows `n = 1..=n_max` of (complex, relativistic `l = 0`, quaternionic)
/// energies.
pub fn comparison_table(alpha_w_ev: f64, n_max: u32, scale: &HydrogenScale) -> Result<ComparisonTable> {
    if !alpha_w_ev.is_finite() {
        return Err(Error::NonFinite("alpha W"));
    }
    let mut table = ComparisonTable::default();
    for n in 1..=n_max {
        match quaternionic_energy(n, alpha_w_ev, scale) {
            Ok(e_quaternionic) => table.rows.push(ComparisonRow {
                n,
                e_complex: scale.level(n),
                e_relativistic: relativistic_energy(n, 0, scale)?.energy_ev,
                e_quaternionic,
                alpha_w_ev,
            }),
            Err(Error::OutsideRadius { .. }) => table.omitted.push(n),
            Err(e) => return Err(e),
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelCurvePoint {
    pub n: u32,
    pub alpha_w_ev: f64,
    pub energy_ev: f64,
}

/// For each `n`, `samples` evenly spaced points of `E(n, alpha |W|)` on
/// `[0, R_y / n^2]`, both ends included.
pub fn hydrogen_levels_vs_potential(
    n_list: &[u32],
    samples: usize,
    scale: &HydrogenScale,
) -> Result<Vec<LevelCurvePoint>> {
    if samples < 2 {
        return Err(Error::InvalidOrder { order: samples, min: 2 });
    }
    let mut points = Vec::with_capacity(n_list.len() * samples);
    for &n in n_list {
        if n == 0 {
            return Err(Error::InvalidQuantumNumber { model: crate::ModelKind::Hydrogen, n });
        }
        let top = scale.max_coupling(n);
        for k in 0..samples {
            let alpha_w_ev = if k + 1 == samples {
                top
            } else {
                top * k as f64 / (samples - 1) as f64
            };
            points.push(LevelCurvePoint {
                n,
                alpha_w_ev,
                energy_ev: quaternionic_energy(n, alpha_w_ev, scale)?,
            });
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relativistic_rows() {
        let scale = HydrogenScale::default();
        let expected = [(1, -13.60090), (2, -3.40015), (5, -0.54401)];
        for (n, e) in expected {
            let level = relativistic_energy(n, 0, &scale).unwrap();
            assert!((level.energy_ev - e).abs() < 5e-6, "n = {n}: {}", level.energy_ev);
        }
    }

    #[test]
    fn invalid_orbitals() {
        let scale = HydrogenScale::default();
        assert_eq!(
            relativistic_energy(2, 2, &scale),
            Err(Error::InvalidOrbital { n: 2, l: 2 })
        );
        assert!(relativistic_energy(0, 0, &scale).is_err());
    }

    #[test]
    fn relativistic_shift_is_downward() {
        let scale = HydrogenScale::default();
        for n in 1..=10 {
            for l in 0..n {
                if 8.0 * f64::from(n) / (2.0 * f64::from(l) + 1.0) > 3.0 {
                    let level = relativistic_energy(n, l, &scale).unwrap();
                    assert!(level.energy_ev < scale.level(n));
                }
            }
        }
    }

    #[test]
    fn table_rows() {
        let table = comparison_table(0.15, 5, &HydrogenScale::default()).unwrap();
        assert!(table.omitted.is_empty());
        let n3 = table.rows[2];
        assert!((n3.e_complex + 1.51111).abs() < 5e-6);
        assert!((n3.e_relativistic + 1.51116).abs() < 5e-6);
        assert!((n3.e_quaternionic + 1.51854).abs() < 5e-6);
        let n4 = table.rows[3];
        assert!((n4.e_complex + 0.85000).abs() < 5e-6);
        assert!((n4.e_relativistic + 0.85002).abs() < 5e-6);
        assert!((n4.e_quaternionic + 0.86313).abs() < 5e-6);
    }

    #[test]
    fn zero_coupling_and_radius() {
        let scale = HydrogenScale::default();
        let table = comparison_table(0.0, 4, &scale).unwrap();
        assert!(table.rows.iter().all(|r| r.e_quaternionic == r.e_complex));
        let table = comparison_table(0.15, 10, &scale).unwrap();
        assert_eq!(table.rows.len(), 9);
        assert_eq!(table.omitted, vec![10]);
    }

    #[test]
    fn level_curves() {
        let scale = HydrogenScale::default();
        let pts = hydrogen_levels_vs_potential(&[1, 2], 5, &scale).unwrap();
        assert_eq!(pts.len(), 10);
        assert_eq!(pts[4].alpha_w_ev, 13.6);
        assert!((pts[4].energy_ev + 13.6 * 2f64.sqrt()).abs() < 1e-12);
        assert!((pts[4].energy_ev + 19.2333).abs() < 5e-5);
        assert_eq!(pts[5].energy_ev, -3.4);
        assert!((pts[9].energy_ev + 4.80833).abs() < 5e-6);
    }
}
