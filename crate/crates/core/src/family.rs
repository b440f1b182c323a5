use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::valency::{TotalValency, Valency};

/// The three standard hyperelliptic rotations `f₁`, `f₂`, `f₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    F1,
    F2,
    F3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F1, Family::F2, Family::F3];

    /// Order of the rotation at genus `g`.
    pub fn rotation_order(self, g: u64) -> u64 {
        match self {
            Family::F1 => 4 * g + 2,
            Family::F2 => 4 * g,
            Family::F3 => 2 * g + 2,
        }
    }

    /// Side count of the polygon the surface is glued from.
    pub fn polygon_sides(self, g: u64) -> u64 {
        match self {
            Family::F1 => 8 * g + 4,
            Family::F2 => 8 * g,
            Family::F3 => 4 * g + 4,
        }
    }

    /// Closed-form total valency of the rotation itself:
    ///
    /// * `f₁`: `[g, 4g+2; 1/(4g+2) + g/(2g+1) + 1/2]`
    /// * `f₂`: `[g, 4g; 1/(4g) + (2g−1)/(4g) + 1/2]`
    /// * `f₃`: `[g, 2g+2; 1/(2g+2) + 1/(2g+2) + g/(g+1)]`
    pub fn closed_form(self, g: u64) -> TotalValency {
        let v = |t, l| Valency::new(t, l).expect("closed-form valency");
        let vals = match self {
            Family::F1 => vec![v(1, 4 * g + 2), v(g, 2 * g + 1), v(1, 2)],
            Family::F2 => vec![v(1, 4 * g), v(2 * g - 1, 4 * g), v(1, 2)],
            Family::F3 => vec![v(1, 2 * g + 2), v(1, 2 * g + 2), v(g, g + 1)],
        };
        TotalValency::new(g, self.rotation_order(g), 0, vals).expect("closed-form total valency")
    }

    pub fn index(self) -> u8 {
        match self {
            Family::F1 => 1,
            Family::F2 => 2,
            Family::F3 => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.index())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "1" | "F1" => Ok(Family::F1),
            "2" | "F2" => Ok(Family::F2),
            "3" | "F3" => Ok(Family::F3),
            other => Err(format!("unknown family {other:?} (expected 1, 2 or 3)")),
        }
    }
}
