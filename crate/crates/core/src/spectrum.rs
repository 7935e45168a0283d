// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The admissible set `I(v)` of `(r, s)` pairs and the counting conditions
//! behind it.
//!
//! A class of `P3`s uses `2v/3` edges and a class of triangles uses `v`
//! edges, so counting the edges of `K_v` (odd `v`) or `K_v - I` (even `v`)
//! gives `2r + 3s = 3(v-1)/2` or `2r + 3s = 3(v-2)/2`. Writing `r = 3x`,
//! every solution is `(3x, B/3 - 2x)` with `B` the edge budget, and the two
//! orders 6 and 12 lose their `r = 0` point because no NKTS(6) or NKTS(12)
//! exists.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A pair `(r, s)`: `r` classes of paths and `s` classes of triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectrumPoint {
    pub r: u32,
    pub s: u32,
}

impl SpectrumPoint {
    pub fn new(r: u32, s: u32) -> SpectrumPoint {
        SpectrumPoint { r, s }
    }
}

impl fmt::Display for SpectrumPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.s)
    }
}

/// The admissible points for one order, sorted by increasing `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub v: u32,
    pub points: BTreeSet<SpectrumPoint>,
}

impl Spectrum {
    pub fn contains(&self, r: u32, s: u32) -> bool {
        self.points.contains(&SpectrumPoint { r, s })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("v={0} is not divisible by 3")]
    NotDivisibleBy3(u32),
    #[error("v={0} is below 3")]
    VTooSmall(u32),
}

fn check_order(v: u32) -> Result<(), SpectrumError> {
    if v < 3 {
        Err(SpectrumError::VTooSmall(v))
    } else if v % 3 != 0 {
        Err(SpectrumError::NotDivisibleBy3(v))
    } else {
        Ok(())
    }
}

/// `2r + 3s` for any decomposition of order `v`.
pub fn edge_budget(v: u32) -> Result<u64, SpectrumError> {
    check_order(v)?;
    let v = u64::from(v);
    Ok(if v % 2 == 1 {
        3 * (v - 1) / 2
    } else {
        3 * (v - 2) / 2
    })
}

/// The set `I(v)`.
pub fn admissible_spectrum(v: u32) -> Result<Spectrum, SpectrumError> {
    check_order(v)?;
    let points = match v {
        6 => BTreeSet::from([SpectrumPoint::new(3, 0)]),
        12 => BTreeSet::from([SpectrumPoint::new(3, 3), SpectrumPoint::new(6, 1)]),
        _ => {
            // Triangle classes alone: (v-1)/2 for odd v, (v-2)/2 for even v.
            let s0 = if v % 2 == 1 { (v - 1) / 2 } else { (v - 2) / 2 };
            (0..=s0 / 2)
                .map(|x| SpectrumPoint::new(3 * x, s0 - 2 * x))
                .collect()
        }
    };
    Ok(Spectrum { v, points })
}

/// Why a point is outside `I(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    VTooSmall,
    NotDivisibleBy3,
    RNotMultipleOf3,
    ParityOfS,
    EdgeBudgetViolated,
    KnownNonexistent,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::VTooSmall => "VTooSmall",
            Reason::NotDivisibleBy3 => "NotDivisibleBy3",
            Reason::RNotMultipleOf3 => "RNotMultipleOf3",
            Reason::ParityOfS => "ParityOfS",
            Reason::EdgeBudgetViolated => "EdgeBudgetViolated",
            Reason::KnownNonexistent => "KnownNonexistent",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagnosis {
    Accept,
    Reject(Reason),
}

/// Classifies `(v, r, s)`. Rejections report the first failing check in
/// the order: order of `v`, `r mod 3`, parity of `s`, edge budget,
/// known nonexistence.
pub fn check_point(v: u32, r: u32, s: u32) -> Diagnosis {
    let budget = match edge_budget(v) {
        Ok(b) => b,
        Err(SpectrumError::VTooSmall(_)) => return Diagnosis::Reject(Reason::VTooSmall),
        Err(SpectrumError::NotDivisibleBy3(_)) => {
            return Diagnosis::Reject(Reason::NotDivisibleBy3)
        }
    };
    if r % 3 != 0 {
        return Diagnosis::Reject(Reason::RNotMultipleOf3);
    }
    // 3s = budget - 2r forces s to have the parity of budget/3.
    if u64::from(s) % 2 != (budget / 3) % 2 {
        return Diagnosis::Reject(Reason::ParityOfS);
    }
    if 2 * u64::from(r) + 3 * u64::from(s) != budget {
        return Diagnosis::Reject(Reason::EdgeBudgetViolated);
    }
    if r == 0 && (v == 6 || v == 12) {
        return Diagnosis::Reject(Reason::KnownNonexistent);
    }
    Diagnosis::Accept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: u32) -> Vec<(u32, u32)> {
        admissible_spectrum(v)
            .unwrap()
            .points
            .iter()
            .map(|p| (p.r, p.s))
            .collect()
    }

    #[test]
    fn budgets() {
        assert_eq!(edge_budget(9), Ok(12));
        assert_eq!(edge_budget(12), Ok(15));
        assert_eq!(edge_budget(3), Ok(3));
        assert_eq!(edge_budget(10), Err(SpectrumError::NotDivisibleBy3(10)));
    }

    #[test]
    fn table_rows() {
        assert_eq!(pts(3), vec![(0, 1)]);
        assert_eq!(pts(6), vec![(3, 0)]);
        assert_eq!(pts(12), vec![(3, 3), (6, 1)]);
        assert_eq!(pts(9), vec![(0, 4), (3, 2), (6, 0)]);
        assert_eq!(pts(18), vec![(0, 8), (3, 6), (6, 4), (9, 2), (12, 0)]);
        assert_eq!(
            pts(24),
            vec![(0, 11), (3, 9), (6, 7), (9, 5), (12, 3), (15, 1)]
        );
    }

    #[test]
    fn bad_orders() {
        assert_eq!(admissible_spectrum(0), Err(SpectrumError::VTooSmall(0)));
        assert_eq!(
            admissible_spectrum(7),
            Err(SpectrumError::NotDivisibleBy3(7))
        );
    }

    #[test]
    fn diagnoses() {
        assert_eq!(
            check_point(6, 0, 2),
            Diagnosis::Reject(Reason::KnownNonexistent)
        );
        assert_eq!(
            check_point(12, 0, 5),
            Diagnosis::Reject(Reason::KnownNonexistent)
        );
        assert_eq!(check_point(9, 3, 2), Diagnosis::Accept);
        assert_eq!(
            check_point(9, 1, 3),
            Diagnosis::Reject(Reason::RNotMultipleOf3)
        );
        assert_eq!(check_point(9, 3, 1), Diagnosis::Reject(Reason::ParityOfS));
        assert_eq!(
            check_point(9, 3, 4),
            Diagnosis::Reject(Reason::EdgeBudgetViolated)
        );
        assert_eq!(
            check_point(10, 0, 0),
            Diagnosis::Reject(Reason::NotDivisibleBy3)
        );
        assert_eq!(check_point(0, 0, 0), Diagnosis::Reject(Reason::VTooSmall));
    }
}
