// mdbook cannot run listings against a workspace crate, so each chapter is
// pulled in as module docs and the listings run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/fans.md")]
pub mod fans {}
#[doc = include_str!("../../../book/src/divisors.md")]
pub mod divisors {}
#[doc = include_str!("../../../book/src/chow-ring.md")]
pub mod chow_ring {}
#[doc = include_str!("../../../book/src/riemann-roch.md")]
pub mod riemann_roch {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
