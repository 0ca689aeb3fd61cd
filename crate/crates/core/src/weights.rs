//! Edge-weight functions: the cost of moving between two adjacent cells with
//! heights `h1`, `h2` whose centers are `d` apart horizontally.

use std::fmt;
use std::str::FromStr;

use crate::Scalar;

/// Which weight function a graph uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightSpec {
    /// Every edge costs 1, as in classical flat-terrain spanning-tree coverage.
    Unit,
    /// Straight-line 3D distance `sqrt(d² + Δh²)`.
    Pythagoras,
    /// 3D distance scaled by `1 + |Δh|/d`, penalising steep edges.
    SlopePenalty,
}

impl WeightSpec {
    pub const ALL: [WeightSpec; 3] = [
        WeightSpec::Unit,
        WeightSpec::Pythagoras,
        WeightSpec::SlopePenalty,
    ];

    /// Tag used on the command line and in CSV output.
    pub fn as_str(self) -> &'static str {
        match self {
            WeightSpec::Unit => "unit",
            WeightSpec::Pythagoras => "pythagoras",
            WeightSpec::SlopePenalty => "penalty",
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown weight function {0:?} (expected unit, pythagoras or penalty)")]
pub struct UnknownWeightSpec(pub String);

impl FromStr for WeightSpec {
    type Err = UnknownWeightSpec;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unit" => Ok(WeightSpec::Unit),
            "pythagoras" => Ok(WeightSpec::Pythagoras),
            "penalty" => Ok(WeightSpec::SlopePenalty),
            other => Err(UnknownWeightSpec(other.to_owned())),
        }
    }
}

pub fn weight_unit<T: Scalar>(_h1: T, _h2: T, _d: T) -> T {
    T::one()
}

/// `sqrt(d² + (h1 − h2)²)`.
///
/// The published form of this weight has the sign of `d²` flipped, which is
/// imaginary on flat ground; the Pythagorean distance is what is meant.
pub fn weight_pythagoras<T: Scalar>(h1: T, h2: T, d: T) -> T {
    d.hypot((h1 - h2).abs())
}

/// `sqrt(d² + (h1 − h2)²) · (1 + |h1 − h2| / d)`.
pub fn weight_penalty<T: Scalar>(h1: T, h2: T, d: T) -> T {
    let rise = (h1 - h2).abs();
    d.hypot(rise) * (T::one() + rise / d)
}

pub fn edge_weight<T: Scalar>(spec: WeightSpec, h1: T, h2: T, d: T) -> T {
    match spec {
        WeightSpec::Unit => weight_unit(h1, h2, d),
        WeightSpec::Pythagoras => weight_pythagoras(h1, h2, d),
        WeightSpec::SlopePenalty => weight_penalty(h1, h2, d),
    }
}
