//! Lattice-point count of `P_D = {m : ⟨m, u_ρ⟩ ≥ −a_ρ}` for nef divisors,
//! where higher cohomology vanishes and the count is χ(O_X(D)).

use crate::divisor::{Character, TorusDivisor};
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::lattice;

/// Cartier data `m_σ`, one per maximal cone: `⟨m_σ, u_ρ⟩ = −a_ρ` for the
/// rays of `σ`.
pub fn cartier_data(fan: &Fan, d: &TorusDivisor) -> Result<Vec<Character>> {
    d.check(fan)?;
    (0..fan.maximal_cones().len())
        .map(|ci| {
            let cone = &fan.maximal_cones()[ci];
            let basis = fan.dual_basis(ci).ok_or_else(|| ToricError::NotSmooth {
                cone: cone.clone(),
                determinant: 0,
            })?;
            let mut m = vec![0i64; fan.dim()];
            for (&r, dual) in cone.rays().iter().zip(&basis) {
                for (mi, x) in m.iter_mut().zip(dual) {
                    *mi -= d.coefficient(r) * x;
                }
            }
            Ok(Character(m))
        })
        .collect()
}

/// Nef test: every Cartier datum satisfies all the ray inequalities.
pub fn is_nef(fan: &Fan, d: &TorusDivisor) -> Result<bool> {
    let data = cartier_data(fan, d)?;
    Ok(data
        .iter()
        .all(|m| (0..fan.num_rays()).all(|g| m.pairing(fan.ray(g)) >= -d.coefficient(g))))
}

/// `|P_D ∩ M|` when `D` is nef, otherwise `None`.
pub fn count_lattice_points(fan: &Fan, d: &TorusDivisor) -> Result<Option<i64>> {
    fan.require_smooth_complete()?;
    if !is_nef(fan, d)? {
        return Ok(None);
    }
    // the vertices of P_D are among the Cartier data
    let data = cartier_data(fan, d)?;
    let n = fan.dim();
    if n == 0 {
        return Ok(Some(1));
    }
    let lo: Vec<i64> = (0..n)
        .map(|k| data.iter().map(|m| m.0[k]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|k| data.iter().map(|m| m.0[k]).max().unwrap())
        .collect();
    let mut m = lo.clone();
    let mut count = 0;
    'scan: loop {
        if (0..fan.num_rays()).all(|g| lattice::dot(&m, fan.ray(g)) >= -d.coefficient(g)) {
            count += 1;
        }
        let mut k = n;
        loop {
            if k == 0 {
                break 'scan;
            }
            k -= 1;
            if m[k] < hi[k] {
                m[k] += 1;
                break;
            }
            m[k] = lo[k];
        }
    }
    Ok(Some(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    fn p2() -> Fan {
        parse_fan("dim 2\nrays\n1 0\n0 1\n-1 -1\ncones\n0 1\n1 2\n2 0\n").unwrap()
    }

    #[test]
    fn counts_polytopes() {
        assert_eq!(
            count_lattice_points(&p2(), &TorusDivisor::new(vec![1, 0, 0])).unwrap(),
            Some(3)
        );
        let q =
            parse_fan("dim 2\nrays\n1 0\n-1 0\n0 1\n0 -1\ncones\n0 2\n0 3\n1 2\n1 3\n").unwrap();
        assert_eq!(
            count_lattice_points(&q, &TorusDivisor::new(vec![1, 0, 1, 0])).unwrap(),
            Some(4)
        );
        assert_eq!(
            count_lattice_points(&q, &TorusDivisor::new(vec![2, 1, 0, 0])).unwrap(),
            Some(4)
        );
    }

    #[test]
    fn non_nef_is_absent() {
        assert_eq!(
            count_lattice_points(&p2(), &TorusDivisor::new(vec![-1, 0, 0])).unwrap(),
            None
        );
        assert!(!is_nef(&p2(), &TorusDivisor::new(vec![-1, 0, 0])).unwrap());
        assert!(is_nef(&p2(), &TorusDivisor::zero(3)).unwrap());
    }

    #[test]
    fn cartier_data_of_p2() {
        let data = cartier_data(&p2(), &TorusDivisor::new(vec![2, 0, 0])).unwrap();
        // cones {0,1}, {0,2}, {1,2}
        assert_eq!(
            data,
            vec![
                Character(vec![-2, 0]),
                Character(vec![-2, 2]),
                Character(vec![0, 0])
            ]
        );
    }
}
