//! χ(O_X(D)) as a sum of graded pieces over the character lattice.
//!
//! For each `m ∈ M` let `S(m)` be the rays with `⟨m, u_ρ⟩ < −a_ρ`, and
//! `Δ(m)` the subcomplex of the fan's face complex on those rays. The
//! weight-`m` part of the cohomology of `O(D)` is the reduced cohomology of
//! `Δ(m)` shifted by one, so its Euler characteristic is `1 − χ(Δ(m))` with
//! `χ` the ordinary face-counting Euler characteristic (`χ(∅) = 0`).
//!
//! The contribution is constant on the faces of the hyperplane arrangement
//! `{⟨m, u_ρ⟩ = −a_ρ}`. Any lattice point outside the bounding box of the
//! arrangement's vertices lies on an unbounded rational face, which holds
//! infinitely many lattice points, so it must contribute zero. The scan uses
//! that box padded by two, then checks that enlarging it by successive
//! one-point shells adds nothing.

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;

use crate::divisor::TorusDivisor;
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::lattice;

const PADDING: i64 = 2;
/// Shell expansions tried before giving up.
pub const MAX_EXPANSIONS: usize = 32;
const ZERO_SHELLS_REQUIRED: usize = 2;

/// Result of a scan, with the region actually used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyScan {
    pub chi: i64,
    /// Inclusive bounds of the initial padded vertex box.
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    /// Number of one-point shells added before two consecutive shells
    /// contributed zero.
    pub shells: usize,
}

/// Nonempty faces as ray bitmasks with sign `(−1)^{dim − 1}`.
struct FaceComplex {
    faces: Vec<(u128, i64)>,
}

impl FaceComplex {
    fn new(fan: &Fan) -> Self {
        let faces = fan
            .faces()
            .filter(|c| c.dim() > 0)
            .map(|c| {
                let mask = c.rays().iter().fold(0u128, |m, &r| m | (1u128 << r));
                (mask, if c.dim() % 2 == 1 { 1 } else { -1 })
            })
            .collect();
        Self { faces }
    }

    fn euler_characteristic(&self, support: u128) -> i64 {
        self.faces
            .iter()
            .filter(|(mask, _)| mask & !support == 0)
            .map(|(_, s)| s)
            .sum()
    }
}

struct Scanner<'a> {
    rays: Vec<&'a [i64]>,
    thresholds: Vec<i64>,
    complex: FaceComplex,
}

impl Scanner<'_> {
    fn support(&self, m: &[i64]) -> u128 {
        self.rays
            .iter()
            .zip(&self.thresholds)
            .enumerate()
            .filter(|(_, (u, &t))| lattice::dot(m, u) < t)
            .fold(0u128, |s, (i, _)| s | (1u128 << i))
    }

    fn contribution(&self, m: &[i64], cache: &mut HashMap<u128, i64>) -> i64 {
        let s = self.support(m);
        *cache
            .entry(s)
            .or_insert_with(|| 1 - self.complex.euler_characteristic(s))
    }

    /// Sum over the box `[lo, hi]`, skipping points of the box `inner` if
    /// given.
    fn sum_box(&self, lo: &[i64], hi: &[i64], inner: Option<(&[i64], &[i64])>) -> i64 {
        let n = lo.len();
        (lo[0]..=hi[0])
            .into_par_iter()
            .map(|first| {
                let mut cache = HashMap::new();
                let mut total = 0i64;
                let mut m = lo.to_vec();
                m[0] = first;
                loop {
                    let skip = inner.is_some_and(|(ilo, ihi)| {
                        m.iter()
                            .zip(ilo.iter().zip(ihi))
                            .all(|(x, (a, b))| a <= x && x <= b)
                    });
                    if !skip {
                        total += self.contribution(&m, &mut cache);
                    }
                    // odometer over coordinates 1..n
                    let mut k = n;
                    loop {
                        if k == 1 {
                            return total;
                        }
                        k -= 1;
                        if m[k] < hi[k] {
                            m[k] += 1;
                            break;
                        }
                        m[k] = lo[k];
                    }
                }
            })
            .sum()
    }
}

/// Bounding box of the vertices of `{⟨m, u_ρ⟩ = −a_ρ}`.
fn vertex_box(fan: &Fan, d: &TorusDivisor) -> (Vec<i64>, Vec<i64>) {
    let n = fan.dim();
    let r = fan.num_rays();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| fan.ray(i).to_vec()).collect();
        let (adj, det) = lattice::adjugate(&rows);
        if det != 0 {
            // R m = −a  ⇒  m = adj · (−a) / det
            for k in 0..n {
                let num: i128 = (0..n)
                    .map(|j| adj[k][j] * -(d.coefficient(subset[j]) as i128))
                    .sum();
                let (num, den) = if det < 0 { (-num, -det) } else { (num, det) };
                lo[k] = lo[k].min(Integer::div_floor(&num, &den) as i64);
                hi[k] = hi[k].max(Integer::div_ceil(&num, &den) as i64);
            }
        }
        // next n-subset in lexicographic order
        let Some(i) = (0..n).rev().find(|&i| subset[i] < r - n + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..n {
            subset[j] = subset[j - 1] + 1;
        }
    }
    (lo, hi)
}

/// Scans the character lattice and returns χ with the region used.
pub fn graded_cohomology_scan(fan: &Fan, d: &TorusDivisor) -> Result<CohomologyScan> {
    fan.require_smooth_complete()?;
    d.check(fan)?;
    assert!(fan.num_rays() <= 128, "face masks hold at most 128 rays");
    let n = fan.dim();
    if n == 0 {
        return Ok(CohomologyScan {
            chi: 1,
            lower: vec![],
            upper: vec![],
            shells: 0,
        });
    }
    let scanner = Scanner {
        rays: fan.rays().iter().map(|u| u.coords()).collect(),
        thresholds: d.coefficients().iter().map(|a| -a).collect(),
        complex: FaceComplex::new(fan),
    };
    let (vlo, vhi) = vertex_box(fan, d);
    let lower: Vec<i64> = vlo.iter().map(|x| x - PADDING).collect();
    let upper: Vec<i64> = vhi.iter().map(|x| x + PADDING).collect();
    let mut chi = scanner.sum_box(&lower, &upper, None);

    let (mut lo, mut hi) = (lower.clone(), upper.clone());
    let mut zero_run = 0;
    let mut shells = 0;
    while zero_run < ZERO_SHELLS_REQUIRED {
        if shells == MAX_EXPANSIONS {
            return Err(ToricError::ScanRegionUnstable { expansions: shells });
        }
        let nlo: Vec<i64> = lo.iter().map(|x| x - 1).collect();
        let nhi: Vec<i64> = hi.iter().map(|x| x + 1).collect();
        let shell = scanner.sum_box(&nlo, &nhi, Some((&lo, &hi)));
        chi += shell;
        zero_run = if shell == 0 { zero_run + 1 } else { 0 };
        shells += 1;
        lo = nlo;
        hi = nhi;
    }
    Ok(CohomologyScan {
        chi,
        lower,
        upper,
        shells,
    })
}

/// χ(O_X(D)) = Σ_m (1 − χ(Δ(m))).
pub fn chi_graded_cohomology(fan: &Fan, d: &TorusDivisor) -> Result<i64> {
    graded_cohomology_scan(fan, d).map(|s| s.chi)
}

/// The weight-`m` contribution `1 − χ(Δ(m))` at a single character.
pub fn graded_contribution(fan: &Fan, d: &TorusDivisor, m: &[i64]) -> Result<i64> {
    d.check(fan)?;
    let scanner = Scanner {
        rays: fan.rays().iter().map(|u| u.coords()).collect(),
        thresholds: d.coefficients().iter().map(|a| -a).collect(),
        complex: FaceComplex::new(fan),
    };
    Ok(scanner.contribution(m, &mut HashMap::new()))
}
