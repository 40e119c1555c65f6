//! Intersection products of torus-invariant divisors with orbit closures.
//!
//! Cycle classes are kept as rational combinations of the orbit closures
//! `[V(τ)]`, which span the Chow ring of a smooth complete toric variety but
//! are not a basis. Two classes are only compared through [`CycleClass::degree`]
//! of top-codimension products; no normal form is ever computed.
//!
//! Multiplying `[V(τ)]` by a ray divisor `D_ρ` has two cases. If `ρ ∉ τ` the
//! intersection is transverse: `[V(τ + ρ)]` when `τ + ρ` is a cone, otherwise
//! zero. If `ρ ∈ τ` the divisor is first moved off `τ`: inside a maximal cone
//! `σ ⊇ τ`, the dual basis vector `m` of `u_ρ` gives the linear equivalence
//! `D_ρ ~ −Σ_{γ ∉ σ} ⟨m, u_γ⟩ D_γ`, and every `γ` on the right is transverse
//! to `τ`. One rewrite therefore always suffices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::divisor::TorusDivisor;
use crate::error::{Result, ToricError};
use crate::fan::{Cone, Fan, Smoothness};
use crate::lattice;
use crate::Rational;

/// A graded rational combination of orbit-closure classes `[V(τ)]`.
///
/// Component `k` holds the classes of codimension `k`, keyed by cones with
/// `k` rays. Zero coefficients are never stored, and anything of
/// codimension above the ambient dimension is dropped on insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    components: Vec<BTreeMap<Cone, Rational>>,
}

impl CycleClass {
    pub fn zero(dim: usize) -> Self {
        Self {
            components: vec![BTreeMap::new(); dim + 1],
        }
    }

    /// `[X] = [V(0)]`.
    pub fn fundamental(dim: usize) -> Self {
        Self::orbit(dim, Cone::origin())
    }

    pub fn orbit(dim: usize, cone: Cone) -> Self {
        let mut c = Self::zero(dim);
        c.add_term(cone, Rational::one());
        c
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, codim: usize) -> &BTreeMap<Cone, Rational> {
        &self.components[codim]
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cone, &Rational)> {
        self.components.iter().flatten()
    }

    pub fn add_term(&mut self, cone: Cone, coefficient: Rational) {
        let k = cone.dim();
        if k >= self.components.len() || coefficient.is_zero() {
            return;
        }
        let slot = self.components[k].entry(cone);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CycleClass, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (cone, q) in other.terms() {
            self.add_term(cone.clone(), q * factor);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> CycleClass {
        let mut out = CycleClass::zero(self.dim());
        out.add_scaled(self, factor);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    /// Sum of the codimension-`n` coefficients: every maximal cone is a
    /// point class of degree one on a smooth fan.
    pub fn degree(&self) -> Rational {
        self.components[self.dim()]
            .values()
            .fold(Rational::zero(), |acc, q| acc + q)
    }

    /// Largest codimension with a nonzero component, if any.
    pub fn top_codimension(&self) -> Option<usize> {
        (0..self.components.len())
            .rev()
            .find(|&k| !self.components[k].is_empty())
    }

    /// True when every stored term has the same codimension `k`.
    pub fn is_pure(&self, k: usize) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(j, c)| j == k || c.is_empty())
    }
}

/// `degree(c)` as a free function.
pub fn degree(c: &CycleClass) -> Rational {
    c.degree()
}

/// A monomial `coefficient · Π D_ρ` in the ray divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorPolynomialTerm {
    pub coefficient: Rational,
    /// Ray indices with multiplicity, applied left to right.
    pub rays: Vec<usize>,
}

impl DivisorPolynomialTerm {
    pub fn new(coefficient: Rational, rays: Vec<usize>) -> Self {
        Self { coefficient, rays }
    }
}

/// `e^D = Σ_{k ≤ n} D^k / k!` expanded into monomials, coefficient
/// `Π a_ρ^{e_ρ} / e_ρ!` on `Π D_ρ^{e_ρ}`.
pub fn exp_divisor(d: &TorusDivisor, n: usize) -> Vec<DivisorPolynomialTerm> {
    let support: Vec<(usize, i64)> = d
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| (i, a))
        .collect();
    let mut out = Vec::new();
    let mut rays = Vec::new();
    expand_exp(&support, n, Rational::one(), &mut rays, &mut out);
    out
}

fn expand_exp(
    support: &[(usize, i64)],
    budget: usize,
    coefficient: Rational,
    rays: &mut Vec<usize>,
    out: &mut Vec<DivisorPolynomialTerm>,
) {
    let Some((&(ray, a), rest)) = support.split_first() else {
        out.push(DivisorPolynomialTerm::new(coefficient, rays.clone()));
        return;
    };
    let a = Rational::from_integer(a.into());
    let mut c = coefficient;
    for e in 0..=budget {
        if e > 0 {
            c = c * &a / Rational::from_integer(e.into());
            rays.push(ray);
        }
        expand_exp(rest, budget - e, c.clone(), rays, out);
    }
    // the loop pushed `budget` copies of `ray`
    rays.truncate(rays.len() - budget);
}

/// Precomputed move rules: for maximal cone `σ` and ray `ρ ∈ σ`, the
/// nonzero pairs `(γ, −⟨m, u_γ⟩)` over rays `γ ∉ σ`.
type MoveRule = Vec<(usize, i64)>;

/// Multiplication by ray divisors on a smooth fan.
///
/// Completeness is assumed, not checked: degrees are only meaningful on
/// complete fans.
pub struct ChowRing<'a> {
    fan: &'a Fan,
    rules: Vec<Vec<MoveRule>>,
}

impl<'a> ChowRing<'a> {
    pub fn new(fan: &'a Fan) -> Result<Self> {
        if let Smoothness::Singular { cone, determinant } = fan.is_smooth() {
            return Err(ToricError::NotSmooth { cone, determinant });
        }
        let mut rules = Vec::with_capacity(fan.maximal_cones().len());
        for (ci, sigma) in fan.maximal_cones().iter().enumerate() {
            let basis = fan.dual_basis(ci).expect("smooth cone");
            let per_ray = basis
                .iter()
                .map(|m| {
                    (0..fan.num_rays())
                        .filter(|g| !sigma.contains(*g))
                        .map(|g| (g, -lattice::dot(m, fan.ray(g))))
                        .filter(|&(_, c)| c != 0)
                        .collect()
                })
                .collect();
            rules.push(per_ray);
        }
        Ok(Self { fan, rules })
    }

    pub fn fan(&self) -> &Fan {
        self.fan
    }

    pub fn fundamental_class(&self) -> CycleClass {
        CycleClass::fundamental(self.fan.dim())
    }

    /// `D_ρ · c`, moving off `τ` inside the lexicographically first maximal
    /// cone containing `τ` when `ρ ∈ τ`.
    pub fn multiply_ray_divisor(&self, c: &CycleClass, rho: usize) -> CycleClass {
        self.multiply_ray_divisor_with(c, rho, &mut |_| 0)
    }

    /// As [`Self::multiply_ray_divisor`], with `choose` picking the maximal
    /// cone used by the move rule from the (lexicographically sorted)
    /// candidates, given as indices into [`Fan::maximal_cones`].
    pub fn multiply_ray_divisor_with(
        &self,
        c: &CycleClass,
        rho: usize,
        choose: &mut dyn FnMut(&[usize]) -> usize,
    ) -> CycleClass {
        let mut out = CycleClass::zero(self.fan.dim());
        for (tau, q) in c.terms() {
            if !tau.contains(rho) {
                let joined = tau.with_ray(rho);
                if self.fan.is_face(&joined) {
                    out.add_term(joined, q.clone());
                }
                continue;
            }
            let candidates = self.fan.maximal_cones_containing(tau);
            let ci = candidates[choose(candidates)];
            let pos = self.fan.maximal_cones()[ci]
                .rays()
                .iter()
                .position(|&r| r == rho)
                .expect("containing cone has the ray");
            for &(gamma, coeff) in &self.rules[ci][pos] {
                let joined = tau.with_ray(gamma);
                if self.fan.is_face(&joined) {
                    out.add_term(joined, q * Rational::from_integer(coeff.into()));
                }
            }
        }
        out
    }

    /// `D · c` for a whole divisor.
    pub fn multiply_divisor(&self, c: &CycleClass, d: &TorusDivisor) -> CycleClass {
        let mut out = CycleClass::zero(self.fan.dim());
        for (rho, &a) in d.coefficients().iter().enumerate() {
            if a != 0 {
                out.add_scaled(
                    &self.multiply_ray_divisor(c, rho),
                    &Rational::from_integer(a.into()),
                );
            }
        }
        out
    }

    /// `Σ_k coeffs[k] · D_ρ^k · c`.
    pub fn apply_ray_series(&self, c: &CycleClass, rho: usize, coeffs: &[Rational]) -> CycleClass {
        let mut out = CycleClass::zero(self.fan.dim());
        let mut power = c.clone();
        for (k, t) in coeffs.iter().enumerate() {
            if k > 0 {
                power = self.multiply_ray_divisor(&power, rho);
                if power.is_zero() {
                    break;
                }
            }
            out.add_scaled(&power, t);
        }
        out
    }

    /// Applies each monomial to `c` by iterated ray multiplication, in the
    /// term's ray order, and sums.
    pub fn apply_divisor_polynomial(
        &self,
        c: &CycleClass,
        terms: &[DivisorPolynomialTerm],
    ) -> CycleClass {
        let mut out = CycleClass::zero(self.fan.dim());
        for term in terms {
            if term.rays.len() > self.fan.dim() {
                continue;
            }
            let mut cur = c.clone();
            for &rho in &term.rays {
                cur = self.multiply_ray_divisor(&cur, rho);
                if cur.is_zero() {
                    break;
                }
            }
            out.add_scaled(&cur, &term.coefficient);
        }
        out
    }

    /// Degree of the monomial `Π D_ρ` against `c`.
    pub fn intersection_number(&self, c: &CycleClass, rays: &[usize]) -> Rational {
        let term = DivisorPolynomialTerm::new(Rational::one(), rays.to_vec());
        self.apply_divisor_polynomial(c, &[term]).degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{parse_fan, LatticeVector};
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p2() -> Fan {
        parse_fan("dim 2\nrays\n1 0\n0 1\n-1 -1\ncones\n0 1\n1 2\n2 0\n").unwrap()
    }

    fn hirzebruch(a: i64) -> Fan {
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
        .unwrap()
    }

    #[test]
    fn transverse_products() {
        let f = p2();
        let ring = ChowRing::new(&f).unwrap();
        let v0 = CycleClass::orbit(2, Cone::ray(0));
        let prod = ring.multiply_ray_divisor(&v0, 1);
        assert_eq!(prod, CycleClass::orbit(2, Cone::new([0, 1])));

        let q =
            parse_fan("dim 2\nrays\n1 0\n-1 0\n0 1\n0 -1\ncones\n0 2\n0 3\n1 2\n1 3\n").unwrap();
        let ring = ChowRing::new(&q).unwrap();
        assert!(ring
            .multiply_ray_divisor(&CycleClass::orbit(2, Cone::ray(0)), 1)
            .is_zero());
    }

    #[test]
    fn self_intersection_on_hirzebruch() {
        for a in 0..4 {
            let f = hirzebruch(a);
            let ring = ChowRing::new(&f).unwrap();
            let prod = ring.multiply_ray_divisor(&CycleClass::orbit(2, Cone::ray(1)), 1);
            assert_eq!(prod.degree(), q(-a, 1));
            assert_eq!(
                ring.intersection_number(&ring.fundamental_class(), &[1, 1]),
                q(-a, 1)
            );
        }
    }

    #[test]
    fn polynomial_application() {
        let f = p2();
        let ring = ChowRing::new(&f).unwrap();
        let x = ring.fundamental_class();
        assert!(ring.apply_divisor_polynomial(&x, &[]).is_zero());
        let d0d1 = DivisorPolynomialTerm::new(q(1, 1), vec![0, 1]);
        assert_eq!(
            ring.apply_divisor_polynomial(&x, &[d0d1]),
            CycleClass::orbit(2, Cone::new([0, 1]))
        );
        let d0d0 = DivisorPolynomialTerm::new(q(1, 1), vec![0, 0]);
        let pt = ring.apply_divisor_polynomial(&x, &[d0d0]);
        assert!(pt.is_pure(2));
        assert_eq!(pt.degree(), q(1, 1));
    }

    #[test]
    fn degrees() {
        let f = p2();
        let ring = ChowRing::new(&f).unwrap();
        for sigma in f.maximal_cones() {
            assert_eq!(CycleClass::orbit(2, sigma.clone()).degree(), q(1, 1));
        }
        assert_eq!(CycleClass::orbit(2, Cone::ray(2)).degree(), q(0, 1));
        assert_eq!(
            ring.intersection_number(&ring.fundamental_class(), &[0, 1]),
            q(1, 1)
        );
    }

    #[test]
    fn exponential_expansion() {
        let zero = exp_divisor(&TorusDivisor::zero(3), 2);
        assert_eq!(zero, vec![DivisorPolynomialTerm::new(q(1, 1), vec![])]);

        let mut p1 = exp_divisor(&TorusDivisor::new(vec![1, 0]), 1);
        p1.sort_by_key(|t| t.rays.clone());
        assert_eq!(
            p1,
            vec![
                DivisorPolynomialTerm::new(q(1, 1), vec![]),
                DivisorPolynomialTerm::new(q(1, 1), vec![0]),
            ]
        );

        let mut p2 = exp_divisor(&TorusDivisor::new(vec![1, 1, 0]), 2);
        p2.sort_by_key(|t| t.rays.clone());
        let expected = vec![
            DivisorPolynomialTerm::new(q(1, 1), vec![]),
            DivisorPolynomialTerm::new(q(1, 1), vec![0]),
            DivisorPolynomialTerm::new(q(1, 2), vec![0, 0]),
            DivisorPolynomialTerm::new(q(1, 1), vec![0, 1]),
            DivisorPolynomialTerm::new(q(1, 1), vec![1]),
            DivisorPolynomialTerm::new(q(1, 2), vec![1, 1]),
        ];
        assert_eq!(p2, expected);

        let cubic = exp_divisor(&TorusDivisor::new(vec![-2]), 3);
        let coeffs: Vec<Rational> = cubic.iter().map(|t| t.coefficient.clone()).collect();
        assert_eq!(coeffs, vec![q(1, 1), q(-2, 1), q(2, 1), q(-4, 3)]);
    }

    #[test]
    fn grading_and_truncation() {
        let f = p2();
        let ring = ChowRing::new(&f).unwrap();
        let d = ring.multiply_ray_divisor(&ring.fundamental_class(), 2);
        assert!(d.is_pure(1));
        let pt = ring.multiply_ray_divisor(&d, 2);
        assert!(pt.is_pure(2));
        assert!(ring.multiply_ray_divisor(&pt, 0).is_zero());
    }

    #[test]
    fn singular_fans_are_rejected() {
        let f = parse_fan("dim 2\nrays\n1 0\n1 2\n-1 -1\ncones\n0 1\n1 2\n2 0\n").unwrap();
        assert!(ChowRing::new(&f).is_err());
    }
}
