//! Exact Euler characteristics of line bundles on smooth complete toric
//! varieties.
//!
//! ```
//! use toric_core::{catalog::hirzebruch, chi_hrr, euler::chi_recursive, Rational, TorusDivisor};
//!
//! let f1 = hirzebruch(1).unwrap();
//! let d = TorusDivisor::new(vec![1, 0, 0, 1]);
//! assert_eq!(chi_hrr(&f1, &d).unwrap(), Rational::from_integer(5.into()));
//! assert_eq!(chi_recursive(&f1, &d).unwrap(), 5);
//! ```

pub mod catalog;
pub mod chow;
pub mod divisor;
pub mod error;
pub mod euler;
pub mod fan;
pub mod lattice;
pub mod todd;
pub mod verify;

pub use catalog::{build_catalog, standard_catalog, CatalogEntry};
pub use chow::{exp_divisor, ChowRing, CycleClass, DivisorPolynomialTerm};
pub use divisor::{
    canonical_divisor, clear_ray_coefficient, is_linearly_equivalent, principal_divisor,
    restrict_divisor, Character, TorusDivisor,
};
pub use error::{Result, ToricError};
pub use euler::ChiMethod;
pub use fan::{parse_fan, Completeness, Cone, Fan, LatticeVector, Smoothness, StarFan};

/// Exact rational numbers used for every cycle-class coefficient.
pub type Rational = num_rational::BigRational;
pub use todd::{
    chi_hrr, todd_class, todd_univariate, verify_ascending_step, verify_induction_step,
    verify_ishida, HrrEngine, InductionStep, ToddCoefficients,
};
pub use verify::{run_verification, ChiReport, VerificationConfig, VerificationReport};
