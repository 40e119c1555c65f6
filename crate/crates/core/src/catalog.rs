//! Builders for the standard smooth complete fans used as a test corpus.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, ToricError};
use crate::fan::{Cone, Fan, LatticeVector};

fn invalid(name: &str, reason: impl Into<String>) -> ToricError {
    ToricError::InvalidCatalogParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}

/// `Pⁿ`: rays `e_1, …, e_n, −Σ e_i`, cones all `n`-subsets.
pub fn projective_space(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(invalid("projective_space", "dimension must be at least 1"));
    }
    let mut rays: Vec<LatticeVector> = (0..n)
        .map(|i| LatticeVector::new((0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
        .collect();
    rays.push(LatticeVector::new(vec![-1; n]));
    let cones = (0..=n)
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect();
    Fan::new(n, rays, cones)
}

/// The Hirzebruch surface `F_a`: rays `(1,0), (0,1), (−1,a), (0,−1)`.
pub fn hirzebruch(a: i64) -> Result<Fan> {
    if a < 0 {
        return Err(invalid("hirzebruch", "a must be non-negative"));
    }
    Fan::new(
        2,
        vec![
            LatticeVector::new(vec![1, 0]),
            LatticeVector::new(vec![0, 1]),
            LatticeVector::new(vec![-1, a]),
            LatticeVector::new(vec![0, -1]),
        ],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
}

/// Product fan in `N_1 ⊕ N_2`; rays of `f` come first.
pub fn product(f: &Fan, g: &Fan) -> Result<Fan> {
    let (n1, n2) = (f.dim(), g.dim());
    let mut rays = Vec::with_capacity(f.num_rays() + g.num_rays());
    for u in f.rays() {
        let mut v = u.coords().to_vec();
        v.resize(n1 + n2, 0);
        rays.push(LatticeVector::new(v));
    }
    for u in g.rays() {
        let mut v = vec![0; n1];
        v.extend_from_slice(u.coords());
        rays.push(LatticeVector::new(v));
    }
    let offset = f.num_rays();
    let mut cones = Vec::new();
    for s in f.maximal_cones() {
        for t in g.maximal_cones() {
            let mut c: Vec<usize> = s.rays().to_vec();
            c.extend(t.rays().iter().map(|r| r + offset));
            cones.push(c);
        }
    }
    Fan::new(n1 + n2, rays, cones)
}

/// `(P¹)^k`.
pub fn p1_power(k: usize) -> Result<Fan> {
    if k == 0 {
        return Err(invalid("p1_power", "need at least one factor"));
    }
    let p1 = projective_space(1)?;
    (1..k).try_fold(p1.clone(), |acc, _| product(&acc, &p1))
}

/// Star subdivision of `cone` by the sum of its generators (the blowup of
/// the orbit closure `V(cone)` on a smooth fan). The new ray is appended.
pub fn star_subdivision(fan: &Fan, cone: &Cone) -> Result<Fan> {
    if !fan.is_face(cone) || cone.dim() < 2 {
        return Err(ToricError::NotAFace { cone: cone.clone() });
    }
    let n = fan.dim();
    let mut new_ray = vec![0i64; n];
    for &r in cone.rays() {
        for (x, y) in new_ray.iter_mut().zip(fan.ray(r)) {
            *x += y;
        }
    }
    let mut rays = fan.rays().to_vec();
    let new_index = rays.len();
    rays.push(LatticeVector::new(new_ray));
    let mut cones = Vec::new();
    for sigma in fan.maximal_cones() {
        if cone.is_face_of(sigma) {
            for &r in cone.rays() {
                cones.push(sigma.without_ray(r).with_ray(new_index).rays().to_vec());
            }
        } else {
            cones.push(sigma.rays().to_vec());
        }
    }
    Fan::new(n, rays, cones)
}

/// `P²` blown up at `k` torus-fixed points, `1 ≤ k ≤ 3`: the cones
/// `{0,1}`, `{1,2}`, `{0,2}` are subdivided in that order.
pub fn blowup_p2(k: usize) -> Result<Fan> {
    if !(1..=3).contains(&k) {
        return Err(invalid("blowup_p2", "between 1 and 3 points"));
    }
    let mut fan = projective_space(2)?;
    for pair in [[0, 1], [1, 2], [0, 2]].into_iter().take(k) {
        fan = star_subdivision(&fan, &Cone::new(pair))?;
    }
    Ok(fan)
}

pub fn p1_x_p2() -> Result<Fan> {
    product(&projective_space(1)?, &projective_space(2)?)
}

/// A catalog builder name with its integer parameters, written
/// `name[:p1[:p2…]]`, e.g. `hirzebruch:2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<i64>,
}

/// Known builders, their parameter names, and a description.
pub const BUILDERS: &[(&str, &str, &str)] = &[
    ("projective_space", "N", "projective space of dimension N"),
    ("hirzebruch", "A", "Hirzebruch surface F_A"),
    ("p1_power", "K", "product of K projective lines"),
    (
        "blowup_p2",
        "K",
        "P2 blown up at K = 1..3 torus-fixed points",
    ),
    ("p1_x_p2", "", "P1 x P2"),
];

impl CatalogEntry {
    pub fn new(name: &str, params: &[i64]) -> Self {
        Self {
            name: name.to_string(),
            params: params.to_vec(),
        }
    }

    pub fn build(&self) -> Result<Fan> {
        build_catalog(&self.name, &self.params)
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for p in &self.params {
            write!(f, ":{p}")?;
        }
        Ok(())
    }
}

impl FromStr for CatalogEntry {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default().to_string();
        let params = parts
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| invalid(&name, format!("bad parameter `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { name, params })
    }
}

fn one_param(name: &str, params: &[i64]) -> Result<i64> {
    match params {
        [p] => Ok(*p),
        _ => Err(invalid(
            name,
            format!("expected one parameter, got {}", params.len()),
        )),
    }
}

fn small_positive(name: &str, params: &[i64]) -> Result<usize> {
    let p = one_param(name, params)?;
    usize::try_from(p).map_err(|_| invalid(name, "parameter must be non-negative"))
}

/// Builds a catalog fan by name.
pub fn build_catalog(name: &str, params: &[i64]) -> Result<Fan> {
    match name {
        "projective_space" => projective_space(small_positive(name, params)?),
        "hirzebruch" => hirzebruch(one_param(name, params)?),
        "p1_power" => p1_power(small_positive(name, params)?),
        "blowup_p2" => blowup_p2(small_positive(name, params)?),
        "p1_x_p2" if params.is_empty() => p1_x_p2(),
        "p1_x_p2" => Err(invalid(name, "takes no parameters")),
        _ => Err(ToricError::UnknownCatalog {
            name: name.to_string(),
        }),
    }
}

/// The standard corpus: `P¹..P⁴`, `F_0..F_3`, `(P¹)³`, `Bl_k P²` for
/// `k = 1..3`, and `P¹ × P²`.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(CatalogEntry::new("projective_space", &[n]));
    }
    for a in 0..=3 {
        out.push(CatalogEntry::new("hirzebruch", &[a]));
    }
    out.push(CatalogEntry::new("p1_power", &[3]));
    for k in 1..=3 {
        out.push(CatalogEntry::new("blowup_p2", &[k]));
    }
    out.push(CatalogEntry::new("p1_x_p2", &[]));
    out
}
