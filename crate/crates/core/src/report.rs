//! Sandwich-bound reports shared by the refined Hölder and interpolation
//! operations.

use serde::Serialize;

use crate::measure::{leq_with_slack, INEQ_SLACK};

/// Lower bound, actual value and upper bound of a sandwich inequality,
/// together with the angle diagnostics that drive the bounds.
///
/// `theta_sq` is the squared chordal distance between the two normalized
/// comparison vectors in L^2 and `angle_rad = arccos(1 - theta_sq/2)` is
/// the corresponding angle. `lower_coeff`/`upper_coeff` multiply the
/// deviation term in the respective brackets; `lower_bracket` and
/// `upper_bracket` record the brackets before any positive part, and
/// `positive_part_applied` is set when the lower bracket was clamped at 0.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub actual: f64,
    pub upper: f64,
    pub theta_sq: f64,
    pub angle_rad: f64,
    pub lower_coeff: f64,
    pub upper_coeff: f64,
    pub lower_bracket: f64,
    pub upper_bracket: f64,
    pub positive_part_applied: bool,
}

impl BoundReport {
    /// `true` when lower <= actual <= upper with relative slack on `scale`.
    pub fn sandwich_holds(&self, scale: f64) -> bool {
        leq_with_slack(self.lower, self.actual, scale)
            && leq_with_slack(self.actual, self.upper, scale)
    }

    /// Sides of the sandwich that fail beyond slack, as human-readable tags.
    pub fn violations(&self, scale: f64) -> Vec<String> {
        let mut v = Vec::new();
        if !leq_with_slack(self.lower, self.actual, scale) {
            v.push(format!(
                "lower bound {:.17e} exceeds actual {:.17e}",
                self.lower, self.actual
            ));
        }
        if !leq_with_slack(self.actual, self.upper, scale) {
            v.push(format!(
                "upper bound {:.17e} is below actual {:.17e}",
                self.upper, self.actual
            ));
        }
        v
    }

    /// Relative width (upper - lower) / max(|actual|, 1); a diagnostic.
    pub fn relative_width(&self) -> f64 {
        (self.upper - self.lower) / self.actual.abs().max(1.0)
    }
}

/// arccos(1 - theta_sq/2), clamped against rounding at the ends.
pub fn angle_from_theta_sq(theta_sq: f64) -> f64 {
    (1.0 - theta_sq / 2.0).clamp(-1.0, 1.0).acos()
}

/// Outcome of a one-sided check: both sides of the inequality plus the
/// verdict at the standard slack.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl CheckRecord {
    /// lhs <= rhs with relative slack on `scale`.
    pub fn of_leq(lhs: f64, rhs: f64, scale: f64) -> Self {
        CheckRecord {
            lhs,
            rhs,
            holds: lhs <= rhs + INEQ_SLACK * scale.abs().max(1.0),
        }
    }
}
