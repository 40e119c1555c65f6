//! χ(O_X(D)) by running the induction on divisors and dimension.
//!
//! The short exact sequence `0 → O(D − D_ρ) → O(D) → O_{V(ρ)}(D) → 0`
//! gives `χ(D) = χ(D − D_ρ) + χ_{V(ρ)}(D|V(ρ))`. Each call reduces the
//! coefficient of one ray of a normal representative towards zero, and
//! recurses into the star fan of that ray for the correction term. The base
//! cases are the projective line, where `χ(O(d)) = d + 1`, and the trivial
//! class, where `χ(O_X) = 1` is taken as known.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::divisor::{normal_representative, restrict_with_star, TorusDivisor};
use crate::error::{Result, ToricError};
use crate::fan::{Cone, Fan, StarFan};

pub const DEFAULT_RECURSION_BUDGET: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_RECURSION_BUDGET`].
pub const RECURSION_BUDGET_ENV: &str = "TORIC_RECURSION_BUDGET";

/// The recursion budget, honouring `TORIC_RECURSION_BUDGET` when it parses.
pub fn recursion_budget() -> usize {
    std::env::var(RECURSION_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_RECURSION_BUDGET)
}

/// Which nonzero coefficient the recursion reduces first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RayOrder {
    /// Lowest ray index first.
    #[default]
    Natural,
    /// A seeded permutation of the rays, drawn independently for every fan
    /// met during the recursion.
    Shuffled(u64),
}

struct FanState {
    order: Vec<usize>,
    stars: Vec<Option<Arc<StarFan>>>,
    values: HashMap<TorusDivisor, i64>,
}

/// Memoised recursive evaluator. One instance can be reused across many
/// divisors and fans.
pub struct RecursiveChi {
    budget: usize,
    evaluations: usize,
    order: RayOrder,
    fans: HashMap<Fan, FanState>,
}

impl Default for RecursiveChi {
    fn default() -> Self {
        Self::new(recursion_budget(), RayOrder::Natural)
    }
}

fn fingerprint(fan: &Fan) -> u64 {
    // FNV-1a over the fan file text: stable across platforms and releases
    fan.to_fan_text()
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
        })
}

impl RecursiveChi {
    pub fn new(budget: usize, order: RayOrder) -> Self {
        Self {
            budget,
            evaluations: 0,
            order,
            fans: HashMap::new(),
        }
    }

    /// Number of non-memoised evaluations so far.
    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn chi(&mut self, fan: &Fan, d: &TorusDivisor) -> Result<i64> {
        fan.require_smooth_complete()?;
        d.check(fan)?;
        self.eval(fan, d)
    }

    fn state(&mut self, fan: &Fan) -> &mut FanState {
        if !self.fans.contains_key(fan) {
            let mut order: Vec<usize> = (0..fan.num_rays()).collect();
            if let RayOrder::Shuffled(seed) = self.order {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fingerprint(fan));
                order.shuffle(&mut rng);
            }
            let state = FanState {
                order,
                stars: vec![None; fan.num_rays()],
                values: HashMap::new(),
            };
            self.fans.insert(fan.clone(), state);
        }
        self.fans.get_mut(fan).expect("inserted above")
    }

    fn star(&mut self, fan: &Fan, rho: usize) -> Result<Arc<StarFan>> {
        if let Some(s) = &self.state(fan).stars[rho] {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(fan.star_fan(&Cone::ray(rho))?);
        self.state(fan).stars[rho] = Some(Arc::clone(&s));
        Ok(s)
    }

    fn eval(&mut self, fan: &Fan, d: &TorusDivisor) -> Result<i64> {
        match fan.dim() {
            0 => return Ok(1),
            1 => return Ok(d.degree_sum() + 1),
            _ => {}
        }
        let rep = normal_representative(fan, d)?;
        if let Some(&v) = self.state(fan).values.get(&rep) {
            return Ok(v);
        }
        self.evaluations += 1;
        if self.evaluations > self.budget {
            return Err(ToricError::RecursionBudgetExceeded {
                budget: self.budget,
            });
        }

        let value = if rep.is_zero() {
            1
        } else {
            let rho = *self
                .state(fan)
                .order
                .iter()
                .find(|&&r| rep.coefficient(r) != 0)
                .expect("nonzero divisor");
            let star = self.star(fan, rho)?;
            if rep.coefficient(rho) > 0 {
                let lower = rep.shifted(rho, -1);
                let restricted = restrict_with_star(fan, &star, &rep, rho)?;
                self.eval(fan, &lower)? + self.eval(&star.fan, &restricted)?
            } else {
                let upper = rep.shifted(rho, 1);
                let restricted = restrict_with_star(fan, &star, &upper, rho)?;
                self.eval(fan, &upper)? - self.eval(&star.fan, &restricted)?
            }
        };
        self.state(fan).values.insert(rep, value);
        Ok(value)
    }
}

/// χ(O_X(D)) by the recursion, with a fresh memo table and the natural ray
/// order.
pub fn chi_recursive(fan: &Fan, d: &TorusDivisor) -> Result<i64> {
    RecursiveChi::default().chi(fan, d)
}

/// As [`chi_recursive`] with an explicit ray order.
pub fn chi_recursive_ordered(fan: &Fan, d: &TorusDivisor, order: RayOrder) -> Result<i64> {
    RecursiveChi::new(recursion_budget(), order).chi(fan, d)
}
