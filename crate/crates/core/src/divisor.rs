//! Torus-invariant divisors, characters and linear equivalence.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Result, ToricError};
use crate::fan::{Cone, Fan, StarFan};
use crate::lattice;

/// `D = Σ a_ρ D_ρ`, one integer coefficient per ray in the fan's ray order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusDivisor(Vec<i64>);

impl TorusDivisor {
    pub fn new(coefficients: impl Into<Vec<i64>>) -> Self {
        Self(coefficients.into())
    }

    pub fn zero(num_rays: usize) -> Self {
        Self(vec![0; num_rays])
    }

    /// The prime divisor `D_ρ`.
    pub fn prime(num_rays: usize, rho: usize) -> Self {
        let mut v = vec![0; num_rays];
        v[rho] = 1;
        Self(v)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn coefficient(&self, rho: usize) -> i64 {
        self.0[rho]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn degree_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `D + k·D_ρ`.
    pub fn shifted(&self, rho: usize, k: i64) -> Self {
        let mut v = self.0.clone();
        v[rho] += k;
        Self(v)
    }

    pub fn check(&self, fan: &Fan) -> Result<()> {
        if self.0.len() == fan.num_rays() {
            Ok(())
        } else {
            Err(ToricError::DivisorLength {
                expected: fan.num_rays(),
                found: self.0.len(),
            })
        }
    }
}

impl Add for &TorusDivisor {
    type Output = TorusDivisor;

    fn add(self, rhs: &TorusDivisor) -> TorusDivisor {
        debug_assert_eq!(self.len(), rhs.len());
        TorusDivisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TorusDivisor {
    type Output = TorusDivisor;

    fn sub(self, rhs: &TorusDivisor) -> TorusDivisor {
        debug_assert_eq!(self.len(), rhs.len());
        TorusDivisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &TorusDivisor {
    type Output = TorusDivisor;

    fn neg(self) -> TorusDivisor {
        TorusDivisor(self.0.iter().map(|a| -a).collect())
    }
}

/// Comma-separated coefficients, the CLI divisor literal.
impl fmt::Display for TorusDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for TorusDivisor {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        let err = || ToricError::DivisorLiteral {
            literal: s.to_string(),
        };
        if s.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// An element `m` of the dual lattice `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn pairing(&self, u: &[i64]) -> i64 {
        lattice::dot(&self.0, u)
    }
}

/// `div(χ^m) = Σ ⟨m, u_ρ⟩ D_ρ`.
pub fn principal_divisor(fan: &Fan, m: &Character) -> Result<TorusDivisor> {
    if m.0.len() != fan.dim() {
        return Err(ToricError::CharacterLength {
            expected: fan.dim(),
            found: m.0.len(),
        });
    }
    Ok(TorusDivisor(
        fan.rays().iter().map(|u| m.pairing(u.coords())).collect(),
    ))
}

/// The character `m` with `⟨m, u_ρ⟩ = 1` vanishing on the other rays of the
/// lexicographically first maximal cone containing `ρ`.
pub(crate) fn dual_to_ray(fan: &Fan, rho: usize) -> Result<Character> {
    let ci = fan.maximal_cones_containing(&Cone::ray(rho))[0];
    dual_in_cone(fan, ci, rho)
}

pub(crate) fn dual_in_cone(fan: &Fan, cone_index: usize, rho: usize) -> Result<Character> {
    let cone = &fan.maximal_cones()[cone_index];
    let basis = fan
        .dual_basis(cone_index)
        .ok_or_else(|| ToricError::NotSmooth {
            cone: cone.clone(),
            determinant: 0,
        })?;
    let pos = cone
        .rays()
        .iter()
        .position(|&r| r == rho)
        .expect("cone contains the ray");
    Ok(Character(basis[pos].clone()))
}

/// Replaces `D` by a linearly equivalent divisor with zero coefficient at `ρ`.
///
/// Returns `m` and `D' = D − div(χ^m)`.
pub fn clear_ray_coefficient(
    fan: &Fan,
    d: &TorusDivisor,
    rho: usize,
) -> Result<(Character, TorusDivisor)> {
    d.check(fan)?;
    fan.check_ray(rho)?;
    let a = d.coefficient(rho);
    if a == 0 {
        return Ok((Character::zero(fan.dim()), d.clone()));
    }
    let dual = dual_to_ray(fan, rho)?;
    let m = Character(dual.0.iter().map(|x| a * x).collect());
    let cleared = d - &principal_divisor(fan, &m)?;
    debug_assert_eq!(cleared.coefficient(rho), 0);
    Ok((m, cleared))
}

/// Restriction of `O_X(D)` to the orbit closure `V(ρ)` in full detail.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub star: StarFan,
    pub divisor: TorusDivisor,
    /// Character used to clear the coefficient at `ρ`.
    pub character: Character,
    /// Nonzero coefficients on rays not adjacent to `ρ`, which restrict to 0.
    pub discarded: Vec<(usize, i64)>,
}

pub fn restrict_divisor_detailed(fan: &Fan, d: &TorusDivisor, rho: usize) -> Result<Restriction> {
    let (character, cleared) = clear_ray_coefficient(fan, d, rho)?;
    let star = fan.star_fan(&Cone::ray(rho))?;
    let divisor = transport(&star, &cleared);
    let discarded = (0..fan.num_rays())
        .filter(|&g| g != rho && cleared.coefficient(g) != 0 && !star.rays.contains(&g))
        .map(|g| (g, cleared.coefficient(g)))
        .collect();
    Ok(Restriction {
        star,
        divisor,
        character,
        discarded,
    })
}

/// `O_X(D)|_{V(ρ)}` as a divisor on `Star(ρ)`.
pub fn restrict_divisor(
    fan: &Fan,
    d: &TorusDivisor,
    rho: usize,
) -> Result<(StarFan, TorusDivisor)> {
    let r = restrict_divisor_detailed(fan, d, rho)?;
    Ok((r.star, r.divisor))
}

/// Restriction against an already built star fan.
pub(crate) fn restrict_with_star(
    fan: &Fan,
    star: &StarFan,
    d: &TorusDivisor,
    rho: usize,
) -> Result<TorusDivisor> {
    let (_, cleared) = clear_ray_coefficient(fan, d, rho)?;
    Ok(transport(star, &cleared))
}

fn transport(star: &StarFan, cleared: &TorusDivisor) -> TorusDivisor {
    TorusDivisor(star.rays.iter().map(|&g| cleared.coefficient(g)).collect())
}

/// `m` with `D1 − D2 = div(χ^m)`, if the two divisors are linearly equivalent.
pub fn is_linearly_equivalent(
    fan: &Fan,
    d1: &TorusDivisor,
    d2: &TorusDivisor,
) -> Result<Option<Character>> {
    d1.check(fan)?;
    d2.check(fan)?;
    let diff = d1 - d2;
    Ok(lattice::solve_integer(&fan.ray_matrix(), fan.dim(), diff.coefficients()).map(Character))
}

/// `K_X = −Σ D_ρ`.
pub fn canonical_divisor(fan: &Fan) -> TorusDivisor {
    TorusDivisor(vec![-1; fan.num_rays()])
}

/// The unique divisor linearly equivalent to `D` whose coefficients vanish on
/// the rays of the first maximal cone (a lattice basis on a smooth fan).
pub fn normal_representative(fan: &Fan, d: &TorusDivisor) -> Result<TorusDivisor> {
    d.check(fan)?;
    let basis = fan.dual_basis(0).ok_or_else(|| ToricError::NotSmooth {
        cone: fan.maximal_cones()[0].clone(),
        determinant: 0,
    })?;
    let mut m = vec![0i64; fan.dim()];
    for (&r, dual) in fan.maximal_cones()[0].rays().iter().zip(&basis) {
        let a = d.coefficient(r);
        for (mi, x) in m.iter_mut().zip(dual) {
            *mi += a * x;
        }
    }
    Ok(d - &principal_divisor(fan, &Character(m))?)
}
