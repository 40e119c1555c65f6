//! Computations of χ(O_X(D)) that never touch the Chow ring, plus the Serre
//! duality cross-check shared by every method.

pub mod cohomology;
pub mod lattice_points;
pub mod recursive;

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::divisor::{canonical_divisor, TorusDivisor};
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::todd::HrrEngine;

pub use cohomology::{chi_graded_cohomology, graded_cohomology_scan, CohomologyScan};
pub use lattice_points::{cartier_data, count_lattice_points, is_nef};
pub use recursive::{chi_recursive, chi_recursive_ordered, RayOrder, RecursiveChi};

/// The three independent routes to χ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChiMethod {
    Hrr,
    Recursive,
    Cohomology,
}

impl ChiMethod {
    pub const ALL: [ChiMethod; 3] = [ChiMethod::Hrr, ChiMethod::Recursive, ChiMethod::Cohomology];

    pub fn name(self) -> &'static str {
        match self {
            ChiMethod::Hrr => "hrr",
            ChiMethod::Recursive => "recursive",
            ChiMethod::Cohomology => "cohomology",
        }
    }

    pub fn chi(self, fan: &Fan, d: &TorusDivisor) -> Result<i64> {
        match self {
            ChiMethod::Hrr => rational_to_i64(&HrrEngine::new(fan)?.chi(d)?),
            ChiMethod::Recursive => chi_recursive(fan, d),
            ChiMethod::Cohomology => chi_graded_cohomology(fan, d),
        }
    }
}

impl fmt::Display for ChiMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChiMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hrr" => Ok(ChiMethod::Hrr),
            "recursive" => Ok(ChiMethod::Recursive),
            "cohomology" => Ok(ChiMethod::Cohomology),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

pub(crate) fn rational_to_i64(q: &crate::Rational) -> Result<i64> {
    if !q.is_integer() {
        return Err(ToricError::NonIntegralChi {
            value: q.to_string(),
        });
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| ToricError::NonIntegralChi {
            value: q.to_string(),
        })
}

/// Both sides of `χ(D) = (−1)^n χ(K − D)` by one method.
pub fn serre_duality_sides(fan: &Fan, d: &TorusDivisor, method: ChiMethod) -> Result<(i64, i64)> {
    let dual = &canonical_divisor(fan) - d;
    let sign = if fan.dim().is_multiple_of(2) { 1 } else { -1 };
    Ok((method.chi(fan, d)?, sign * method.chi(fan, &dual)?))
}

pub fn serre_duality_check(fan: &Fan, d: &TorusDivisor, method: ChiMethod) -> Result<bool> {
    let (lhs, rhs) = serre_duality_sides(fan, d, method)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    #[test]
    fn duality_on_p1_and_p2() {
        let p1 = parse_fan("dim 1\nrays\n1\n-1\ncones\n0\n1\n").unwrap();
        for method in ChiMethod::ALL {
            let (l, r) = serre_duality_sides(&p1, &TorusDivisor::new(vec![3, 0]), method).unwrap();
            assert_eq!((l, r), (4, 4));
        }
        let p2 = parse_fan("dim 2\nrays\n1 0\n0 1\n-1 -1\ncones\n0 1\n1 2\n2 0\n").unwrap();
        for method in ChiMethod::ALL {
            assert!(serre_duality_check(&p2, &TorusDivisor::zero(3), method).unwrap());
            let k = canonical_divisor(&p2);
            assert!(serre_duality_check(&p2, &k, method).unwrap());
            assert_eq!(method.chi(&p2, &k).unwrap(), 1);
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in ChiMethod::ALL {
            assert_eq!(m.name().parse::<ChiMethod>().unwrap(), m);
        }
        assert!("all".parse::<ChiMethod>().is_err());
    }
}
