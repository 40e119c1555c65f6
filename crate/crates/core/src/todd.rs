//! Todd classes and the Riemann-Roch integral `χ(O(D)) = ∫ e^D Td(X)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chow::{exp_divisor, ChowRing, CycleClass, DivisorPolynomialTerm};
use crate::divisor::{restrict_divisor, TorusDivisor};
use crate::error::{Result, ToricError};
use crate::fan::{Cone, Fan};
use crate::Rational;

/// Coefficients `t_0..=t_n` of `x / (1 − e^{−x})` truncated at degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToddCoefficients(Vec<Rational>);

impl ToddCoefficients {
    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }
}

/// Coefficients of `(1 − e^{−x}) / x = Σ_j (−1)^j x^j / (j+1)!` through `x^n`.
pub fn todd_inverse_series(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut factorial = BigInt::one();
    for j in 0..=n {
        factorial *= BigInt::from(j + 1);
        let sign = if j % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        out.push(Rational::new(sign, factorial.clone()));
    }
    out
}

/// Todd coefficients by inverting `(1 − e^{−x}) / x` as a power series.
pub fn todd_univariate(n: usize) -> ToddCoefficients {
    let g = todd_inverse_series(n);
    let mut t: Vec<Rational> = Vec::with_capacity(n + 1);
    t.push(Rational::one() / &g[0]);
    for k in 1..=n {
        let acc = (1..=k).fold(Rational::zero(), |acc, j| acc + &g[j] * &t[k - j]);
        t.push(-acc / &g[0]);
    }
    ToddCoefficients(t)
}

/// `Td(X) = Π_ρ D_ρ / (1 − e^{−D_ρ})` applied to `[X]`, factors taken in
/// ray order.
pub fn todd_class(fan: &Fan) -> Result<CycleClass> {
    todd_class_with_order(fan, fan.dim())
}

/// As [`todd_class`], truncating each univariate factor at `order`.
pub fn todd_class_with_order(fan: &Fan, order: usize) -> Result<CycleClass> {
    fan.require_smooth_complete()?;
    let ring = ChowRing::new(fan)?;
    let t = todd_univariate(order);
    Ok(todd_product(
        &ring,
        ring.fundamental_class(),
        0..fan.num_rays(),
        &t,
    ))
}

fn todd_product(
    ring: &ChowRing<'_>,
    start: CycleClass,
    rays: impl IntoIterator<Item = usize>,
    t: &ToddCoefficients,
) -> CycleClass {
    rays.into_iter().fold(start, |c, rho| {
        ring.apply_ray_series(&c, rho, t.coefficients())
    })
}

/// A fan with its Chow ring and Todd class, ready to integrate many
/// divisors.
pub struct HrrEngine<'a> {
    ring: ChowRing<'a>,
    todd: CycleClass,
}

impl<'a> HrrEngine<'a> {
    pub fn new(fan: &'a Fan) -> Result<Self> {
        let todd = todd_class(fan)?;
        Ok(Self {
            ring: ChowRing::new(fan)?,
            todd,
        })
    }

    pub fn fan(&self) -> &Fan {
        self.ring.fan()
    }

    pub fn ring(&self) -> &ChowRing<'a> {
        &self.ring
    }

    pub fn todd_class(&self) -> &CycleClass {
        &self.todd
    }

    /// `∫ Td(X)`.
    pub fn todd_genus(&self) -> Rational {
        self.todd.degree()
    }

    /// `∫ e^D Td(X)`, rejecting non-integral values.
    pub fn chi(&self, d: &TorusDivisor) -> Result<Rational> {
        d.check(self.fan())?;
        let value = self.integrate(&exp_divisor(d, self.fan().dim()));
        if !value.is_integer() {
            return Err(ToricError::NonIntegralChi {
                value: value.to_string(),
            });
        }
        Ok(value)
    }

    /// Degree of `P · Td(X)` for a polynomial `P` in the ray divisors.
    pub fn integrate(&self, poly: &[DivisorPolynomialTerm]) -> Rational {
        self.ring
            .apply_divisor_polynomial(&self.todd, poly)
            .degree()
    }
}

/// `χ(O_X(D)) = ∫ e^D Td(X)`.
pub fn chi_hrr(fan: &Fan, d: &TorusDivisor) -> Result<Rational> {
    HrrEngine::new(fan)?.chi(d)
}

/// True iff the Todd class has degree exactly one.
pub fn verify_ishida(fan: &Fan) -> Result<bool> {
    Ok(todd_class(fan)?.degree() == Rational::one())
}

/// The four quantities of one induction step for the pair `(D, ρ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionStep {
    pub ray: usize,
    /// `∫_{V(ρ)} e^{D|V(ρ)} Td(V(ρ))`, computed on the star fan.
    pub star_chi: Rational,
    /// `∫_X (e^D − e^{D − D_ρ}) Td(X)`.
    pub difference: Rational,
    /// `∫_X e^D · D_ρ · Π_{γ ≠ ρ} Td_γ`, after cancelling the `ρ` factor.
    pub cancelled: Rational,
    /// `∫_X e^D · D_ρ · Π_{γ adjacent to ρ} Td_γ`.
    pub adjacent: Rational,
}

impl InductionStep {
    pub fn holds(&self) -> bool {
        self.star_chi == self.difference
            && self.difference == self.cancelled
            && self.cancelled == self.adjacent
    }
}

/// Evaluates both sides of the descending step
/// `χ(D) − χ(D − D_ρ) = χ(O_{V(ρ)}(D))` by intersection theory.
pub fn verify_induction_step(fan: &Fan, d: &TorusDivisor, rho: usize) -> Result<InductionStep> {
    let engine = HrrEngine::new(fan)?;
    induction_step_with(&engine, d, rho)
}

/// The ascending step `χ(D + D_ρ) − χ(D) = χ(O_{V(ρ)}(D + D_ρ))`, which is
/// the descending step at `D + D_ρ`.
pub fn verify_ascending_step(fan: &Fan, d: &TorusDivisor, rho: usize) -> Result<InductionStep> {
    d.check(fan)?;
    fan.check_ray(rho)?;
    verify_induction_step(fan, &d.shifted(rho, 1), rho)
}

pub(crate) fn induction_step_with(
    engine: &HrrEngine<'_>,
    d: &TorusDivisor,
    rho: usize,
) -> Result<InductionStep> {
    let fan = engine.fan();
    d.check(fan)?;
    fan.check_ray(rho)?;
    let n = fan.dim();
    let ring = engine.ring();

    let (star, restricted) = restrict_divisor(fan, d, rho)?;
    let star_chi = chi_hrr(&star.fan, &restricted)?;

    let mut poly = exp_divisor(d, n);
    poly.extend(
        exp_divisor(&d.shifted(rho, -1), n)
            .into_iter()
            .map(|mut t| {
                t.coefficient = -t.coefficient;
                t
            }),
    );
    let difference = engine.integrate(&poly);

    let t = todd_univariate(n);
    let e_d = exp_divisor(d, n);
    let v_rho = CycleClass::orbit(n, Cone::ray(rho));
    let others = (0..fan.num_rays()).filter(|&g| g != rho);
    let cancelled_class = todd_product(ring, v_rho.clone(), others, &t);
    let cancelled = ring
        .apply_divisor_polynomial(&cancelled_class, &e_d)
        .degree();
    let adjacent_class = todd_product(ring, v_rho, fan.adjacent_rays(&Cone::ray(rho)), &t);
    let adjacent = ring
        .apply_divisor_polynomial(&adjacent_class, &e_d)
        .degree();

    Ok(InductionStep {
        ray: rho,
        star_chi,
        difference,
        cancelled,
        adjacent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p1() -> Fan {
        parse_fan("dim 1\nrays\n1\n-1\ncones\n0\n1\n").unwrap()
    }

    fn p2() -> Fan {
        parse_fan("dim 2\nrays\n1 0\n0 1\n-1 -1\ncones\n0 1\n1 2\n2 0\n").unwrap()
    }

    fn p1xp1() -> Fan {
        parse_fan("dim 2\nrays\n1 0\n-1 0\n0 1\n0 -1\ncones\n0 2\n0 3\n1 2\n1 3\n").unwrap()
    }

    #[test]
    fn todd_coefficients() {
        assert_eq!(todd_univariate(0).coefficients(), &[int(1)]);
        assert_eq!(
            todd_univariate(2).coefficients(),
            &[int(1), q(1, 2), q(1, 12)]
        );
        assert_eq!(
            todd_univariate(4).coefficients(),
            &[int(1), q(1, 2), q(1, 12), int(0), q(-1, 720)]
        );
    }

    #[test]
    fn todd_class_of_p1() {
        let td = todd_class(&p1()).unwrap();
        assert_eq!(
            td.component(0).values().cloned().collect::<Vec<_>>(),
            vec![int(1)]
        );
        let total: Rational = td.component(1).values().fold(int(0), |a, b| a + b);
        assert_eq!(total, int(1));
    }

    #[test]
    fn todd_class_of_p2() {
        let td = todd_class(&p2()).unwrap();
        assert_eq!(td.component(0)[&Cone::origin()], int(1));
        assert_eq!(td.degree(), int(1));
        assert!(verify_ishida(&p2()).unwrap());
    }

    #[test]
    fn chi_on_projective_line_and_plane() {
        for d in 0..=5 {
            assert_eq!(
                chi_hrr(&p1(), &TorusDivisor::new(vec![d, 0])).unwrap(),
                int(d + 1)
            );
            assert_eq!(
                chi_hrr(&p2(), &TorusDivisor::new(vec![d, 0, 0])).unwrap(),
                int((d + 1) * (d + 2) / 2)
            );
        }
        assert_eq!(chi_hrr(&p2(), &TorusDivisor::zero(3)).unwrap(), int(1));
    }

    #[test]
    fn induction_steps() {
        let s = verify_induction_step(&p2(), &TorusDivisor::zero(3), 0).unwrap();
        assert!(s.holds());
        assert_eq!(s.star_chi, int(1));
        for d in 0..4 {
            let s = verify_induction_step(&p2(), &TorusDivisor::new(vec![d, 0, 0]), 1).unwrap();
            assert!(s.holds(), "{s:?}");
            assert_eq!(s.star_chi, int(d + 1));
        }
        for (a, b) in [(0, 0), (2, 1), (3, -1)] {
            let s =
                verify_induction_step(&p1xp1(), &TorusDivisor::new(vec![a, 0, b, 0]), 2).unwrap();
            assert!(s.holds());
            assert_eq!(s.star_chi, int(a + 1));
        }
    }

    #[test]
    fn ascending_step_on_p1() {
        // χ(O(d+1)) − χ(O(d)) = 1 = χ of a point
        let s = verify_ascending_step(&p1(), &TorusDivisor::new(vec![-3, 0]), 0).unwrap();
        assert!(s.holds());
        assert_eq!(s.star_chi, int(1));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            chi_hrr(&p2(), &TorusDivisor::new(vec![1, 0])),
            Err(ToricError::DivisorLength { .. })
        ));
    }
}
