//! Batch cross-checks over seeded random divisors.

use std::fmt::Write as _;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::divisor::{canonical_divisor, TorusDivisor};
use crate::error::Result;
use crate::euler::recursive::recursion_budget;
use crate::euler::{
    chi_graded_cohomology, count_lattice_points, rational_to_i64, ChiMethod, RayOrder, RecursiveChi,
};
use crate::fan::Fan;
use crate::todd::{induction_step_with, HrrEngine, InductionStep};
use crate::Rational;

/// Both sides of Serre duality for one method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreCheck {
    pub method: ChiMethod,
    /// `χ(D)`.
    pub lhs: i64,
    /// `(−1)^n χ(K − D)`.
    pub rhs: i64,
}

impl SerreCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Every check run on a single divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReport {
    pub divisor: TorusDivisor,
    pub hrr: Rational,
    pub recursive: i64,
    pub cohomology: i64,
    /// Lattice points of the polytope, present iff the divisor is nef.
    pub lattice_points: Option<i64>,
    /// Descending step at `(D, ρ)` for every ray.
    pub descending: Vec<InductionStep>,
    /// Ascending step at `(D, ρ)` for every ray.
    pub ascending: Vec<InductionStep>,
    pub serre: Vec<SerreCheck>,
}

impl ChiReport {
    pub fn methods_agree(&self) -> bool {
        self.hrr == Rational::from_integer(self.recursive.into())
            && self.recursive == self.cohomology
    }

    pub fn steps_hold(&self) -> bool {
        self.descending
            .iter()
            .chain(&self.ascending)
            .all(InductionStep::holds)
    }

    pub fn serre_holds(&self) -> bool {
        self.serre.iter().all(SerreCheck::holds)
    }

    pub fn lattice_points_agree(&self) -> bool {
        self.lattice_points.is_none_or(|c| c == self.recursive)
    }

    pub fn passed(&self) -> bool {
        self.methods_agree()
            && self.steps_hold()
            && self.serre_holds()
            && self.lattice_points_agree()
    }
}

/// Parameters of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationConfig {
    pub trials: usize,
    /// Inclusive coefficient range.
    pub coeff_range: (i64, i64),
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub fan_name: String,
    pub dim: usize,
    pub num_rays: usize,
    pub config: VerificationConfig,
    pub todd_genus: Rational,
    pub trials: Vec<ChiReport>,
}

impl VerificationReport {
    pub fn ishida(&self) -> bool {
        self.todd_genus.is_one()
    }

    pub fn passed(&self) -> bool {
        self.ishida() && self.trials.iter().all(ChiReport::passed)
    }

    /// Deterministic text rendering: a summary table followed by one
    /// `CHI <fan> <divisor> <method> <value>` line per computed value.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "fan {} (dim {}, {} rays)",
            self.fan_name, self.dim, self.num_rays
        );
        let _ = writeln!(
            out,
            "todd genus {}  ishida {}",
            self.todd_genus,
            pass_fail(self.ishida())
        );
        if !self.trials.is_empty() {
            let _ = writeln!(
                out,
                "trials {}  coeff-range {}..{}  seed {}",
                self.trials.len(),
                c.coeff_range.0,
                c.coeff_range.1,
                c.seed
            );
            let width = self
                .trials
                .iter()
                .map(|t| t.divisor.to_string().len())
                .max()
                .unwrap_or(0)
                .max("divisor".len());
            let _ = writeln!(
                out,
                "{:>4}  {:<width$}  {:>8} {:>8} {:>8} {:>8}  {:>7}  {:>5}  status",
                "#", "divisor", "hrr", "rec", "coh", "lattice", "steps", "serre"
            );
            for (i, t) in self.trials.iter().enumerate() {
                let steps = t
                    .descending
                    .iter()
                    .chain(&t.ascending)
                    .filter(|s| s.holds())
                    .count();
                let total_steps = t.descending.len() + t.ascending.len();
                let serre = t.serre.iter().filter(|s| s.holds()).count();
                let lattice = t
                    .lattice_points
                    .map_or_else(|| "-".to_string(), |v| v.to_string());
                let _ = writeln!(
                    out,
                    "{:>4}  {:<width$}  {:>8} {:>8} {:>8} {:>8}  {:>7}  {:>5}  {}",
                    i,
                    t.divisor.to_string(),
                    t.hrr.to_string(),
                    t.recursive,
                    t.cohomology,
                    lattice,
                    format!("{steps}/{total_steps}"),
                    format!("{serre}/{}", t.serre.len()),
                    pass_fail(t.passed())
                );
            }
        }
        for t in &self.trials {
            let name = &self.fan_name;
            let d = &t.divisor;
            let _ = writeln!(out, "CHI {name} {d} hrr {}", t.hrr);
            let _ = writeln!(out, "CHI {name} {d} recursive {}", t.recursive);
            let _ = writeln!(out, "CHI {name} {d} cohomology {}", t.cohomology);
            if let Some(v) = t.lattice_points {
                let _ = writeln!(out, "CHI {name} {d} lattice {v}");
            }
        }
        let passed = self.trials.iter().filter(|t| t.passed()).count();
        let _ = writeln!(
            out,
            "summary {}/{} trials passed, ishida {}: {}",
            passed,
            self.trials.len(),
            pass_fail(self.ishida()),
            pass_fail(self.passed())
        );
        out
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// `count` divisors with coefficients drawn uniformly from the inclusive
/// range, from a ChaCha8 stream seeded by `seed`.
pub fn random_divisors(
    num_rays: usize,
    count: usize,
    (lo, hi): (i64, i64),
    seed: u64,
) -> Vec<TorusDivisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            TorusDivisor::new(
                (0..num_rays)
                    .map(|_| rng.random_range(lo..=hi))
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

/// The divisors a run with this configuration checks: the zero divisor
/// first, then `trials − 1` random ones.
pub fn trial_divisors(num_rays: usize, config: &VerificationConfig) -> Vec<TorusDivisor> {
    if config.trials == 0 {
        return Vec::new();
    }
    let mut out = vec![TorusDivisor::zero(num_rays)];
    out.extend(random_divisors(
        num_rays,
        config.trials - 1,
        config.coeff_range,
        config.seed,
    ));
    out
}

/// Runs every check on a single divisor.
pub fn check_divisor(engine: &HrrEngine<'_>, d: &TorusDivisor) -> Result<ChiReport> {
    let fan = engine.fan();
    let mut recursion = RecursiveChi::new(recursion_budget(), RayOrder::Natural);
    let hrr = engine.chi(d)?;
    let recursive = recursion.chi(fan, d)?;
    let cohomology = chi_graded_cohomology(fan, d)?;
    let lattice_points = count_lattice_points(fan, d)?;

    let mut descending = Vec::with_capacity(fan.num_rays());
    let mut ascending = Vec::with_capacity(fan.num_rays());
    for rho in 0..fan.num_rays() {
        descending.push(induction_step_with(engine, d, rho)?);
        ascending.push(induction_step_with(engine, &d.shifted(rho, 1), rho)?);
    }

    let dual = &canonical_divisor(fan) - d;
    let sign = if fan.dim().is_multiple_of(2) { 1 } else { -1 };
    let serre = vec![
        SerreCheck {
            method: ChiMethod::Hrr,
            lhs: rational_to_i64(&hrr)?,
            rhs: sign * rational_to_i64(&engine.chi(&dual)?)?,
        },
        SerreCheck {
            method: ChiMethod::Recursive,
            lhs: recursive,
            rhs: sign * recursion.chi(fan, &dual)?,
        },
        SerreCheck {
            method: ChiMethod::Cohomology,
            lhs: cohomology,
            rhs: sign * chi_graded_cohomology(fan, &dual)?,
        },
    ];

    Ok(ChiReport {
        divisor: d.clone(),
        hrr,
        recursive,
        cohomology,
        lattice_points,
        descending,
        ascending,
        serre,
    })
}

/// Ishida's identity plus [`check_divisor`] on every trial divisor. Trials
/// run in parallel; the report keeps their order.
pub fn run_verification(
    fan: &Fan,
    fan_name: &str,
    config: VerificationConfig,
) -> Result<VerificationReport> {
    fan.require_smooth_complete()?;
    let engine = HrrEngine::new(fan)?;
    let trials = trial_divisors(fan.num_rays(), &config)
        .par_iter()
        .map(|d| check_divisor(&engine, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        fan_name: fan_name.to_string(),
        dim: fan.dim(),
        num_rays: fan.num_rays(),
        config,
        todd_genus: engine.todd_genus(),
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{hirzebruch, projective_space};

    #[test]
    fn projective_line_report() {
        let f = projective_space(1).unwrap();
        let config = VerificationConfig {
            trials: 7,
            coeff_range: (-3, 3),
            seed: 1,
        };
        let report = run_verification(&f, "projective_space:1", config).unwrap();
        assert!(report.passed());
        assert_eq!(report.trials.len(), 7);
        assert!(report.trials[0].divisor.is_zero());
        for t in &report.trials {
            assert_eq!(t.recursive, t.divisor.degree_sum() + 1);
        }
        let text = report.render();
        assert!(text.contains("CHI projective_space:1 0,0 hrr 1"));
        assert!(text.ends_with("pass\n"));
    }

    #[test]
    fn zero_trials_is_ishida_only() {
        let f = hirzebruch(1).unwrap();
        let config = VerificationConfig {
            trials: 0,
            coeff_range: (0, 0),
            seed: 0,
        };
        let report = run_verification(&f, "hirzebruch:1", config).unwrap();
        assert!(report.trials.is_empty());
        assert!(report.passed());
        assert!(!report.render().contains("CHI"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let f = hirzebruch(2).unwrap();
        let config = VerificationConfig {
            trials: 6,
            coeff_range: (-2, 2),
            seed: 9,
        };
        let a = run_verification(&f, "hirzebruch:2", config)
            .unwrap()
            .render();
        let b = run_verification(&f, "hirzebruch:2", config)
            .unwrap()
            .render();
        assert_eq!(a, b);
    }

    #[test]
    fn divisor_stream_is_seeded() {
        assert_eq!(
            random_divisors(4, 5, (-4, 4), 3),
            random_divisors(4, 5, (-4, 4), 3)
        );
        assert_ne!(
            random_divisors(4, 5, (-4, 4), 3),
            random_divisors(4, 5, (-4, 4), 4)
        );
        assert!(random_divisors(3, 50, (-1, 2), 0)
            .iter()
            .all(|d| d.coefficients().iter().all(|&a| (-1..=2).contains(&a))));
    }
}
