//! Numerical thresholds shared by both engines.
//!
//! Every threshold the library compares against lives here so that reports can
//! record exactly which values were in force. The command-line tool exposes
//! each field as `--tol NAME=VALUE`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Maximum Jacobi residual accepted when constructing an algebra.
    pub jacobi: f64,
    /// Antisymmetry slack for structure constants.
    pub antisymmetry: f64,
    /// Symmetry slack for Gram matrices.
    pub gram_symmetry: f64,
    /// Smallest singular value for a subspace basis to count as independent.
    pub independence: f64,
    /// Allowed deviation of a unit vector's norm from one.
    pub unit_norm: f64,
    /// Totally geodesic certification threshold.
    pub tg: f64,
    /// Frenet curvatures below this are zero.
    pub frenet_zero: f64,
    /// Frenet curvatures in `[frenet_warn, frenet_zero)` raise a warning.
    pub frenet_warn: f64,
    /// Ideal and bracket-table residual bound for helix witnesses.
    pub helix: f64,
    /// Frame-matching bound for sl(2) recognition.
    pub sl2: f64,
    /// Rank threshold for the derived algebra.
    pub character: f64,
    /// Gram determinant below which a plane is degenerate.
    pub plane: f64,
    /// Residual threshold for search results.
    pub search: f64,
    /// Angular distance under which two search results merge.
    pub dedup_angle: f64,
    /// Relative finite-difference step for first derivatives.
    pub fd_step: f64,
    /// Relative finite-difference step for second derivatives.
    pub fd_step2: f64,
    /// Default RK4 step.
    pub rk4_step: f64,
    /// Per-step relative speed drift that rejects a geodesic step.
    pub speed_drift: f64,
    /// Zero threshold for numerically estimated Frenet curvatures.
    pub numeric_frenet_zero: f64,
    /// Allowed |h(x)| for a point on a level-set hypersurface.
    pub level_set: f64,
    /// Minimum level-set gradient norm.
    pub gradient_min: f64,
    /// Radius of the disc excluded around the twisting anchor in residual grids.
    pub anchor_exclusion: f64,
    /// Resolution of residual grids used by `verify`.
    pub grid: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            jacobi: 1e-9,
            antisymmetry: 1e-12,
            gram_symmetry: 1e-12,
            independence: 1e-10,
            unit_norm: 1e-10,
            tg: 1e-9,
            frenet_zero: 1e-8,
            frenet_warn: 1e-10,
            helix: 1e-9,
            sl2: 1e-8,
            character: 1e-10,
            plane: 1e-12,
            search: 1e-10,
            dedup_angle: 1e-4,
            fd_step: 1e-5,
            fd_step2: 1e-3,
            rk4_step: 1e-3,
            speed_drift: 1e-4,
            numeric_frenet_zero: 1e-4,
            level_set: 1e-10,
            gradient_min: 1e-8,
            anchor_exclusion: 1e-3,
            grid: 50,
        }
    }
}

impl Tolerances {
    /// Applies a `NAME=VALUE` override.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::BadParams(format!("expected NAME=VALUE, got {assignment:?}")))?;
        let name = name.trim();
        let value = value.trim();
        if name == "grid" {
            self.grid = value.parse().map_err(|_| {
                Error::BadParams(format!("grid must be a positive integer, got {value:?}"))
            })?;
            if self.grid < 2 {
                return Err(Error::BadParams("grid must be at least 2".into()));
            }
            return Ok(());
        }
        let v: f64 = value.parse().map_err(|_| {
            Error::BadParams(format!("tolerance {name} needs a number, got {value:?}"))
        })?;
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::BadParams(format!(
                "tolerance {name} must be positive and finite"
            )));
        }
        let slot = match name {
            "jacobi" => &mut self.jacobi,
            "antisymmetry" => &mut self.antisymmetry,
            "gram_symmetry" => &mut self.gram_symmetry,
            "independence" => &mut self.independence,
            "unit_norm" => &mut self.unit_norm,
            "tg" => &mut self.tg,
            "frenet_zero" => &mut self.frenet_zero,
            "frenet_warn" => &mut self.frenet_warn,
            "helix" => &mut self.helix,
            "sl2" => &mut self.sl2,
            "character" => &mut self.character,
            "plane" => &mut self.plane,
            "search" => &mut self.search,
            "dedup_angle" => &mut self.dedup_angle,
            "fd_step" => &mut self.fd_step,
            "fd_step2" => &mut self.fd_step2,
            "rk4_step" => &mut self.rk4_step,
            "speed_drift" => &mut self.speed_drift,
            "numeric_frenet_zero" => &mut self.numeric_frenet_zero,
            "level_set" => &mut self.level_set,
            "gradient_min" => &mut self.gradient_min,
            "anchor_exclusion" => &mut self.anchor_exclusion,
            other => return Err(Error::BadParams(format!("unknown tolerance {other:?}"))),
        };
        *slot = v;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut t = Tolerances::default();
        t.set("tg=1e-6").unwrap();
        t.set("grid=20").unwrap();
        assert_eq!(t.tg, 1e-6);
        assert_eq!(t.grid, 20);
        assert!(t.set("nonsense=1").is_err());
        assert!(t.set("tg=-1").is_err());
        assert!(t.set("tg").is_err());
    }
}
