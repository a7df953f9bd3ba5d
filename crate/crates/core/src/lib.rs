//! Exact computation of Castelnuovo–Mumford regularity and arithmetic
//! Cohen–Macaulayness for arrangements of (n−2)-planes in projective space
//! whose incidence graph is a complete bipartite graph.
//!
//! The library has two independent computation routes:
//!
//! * an exact symbolic route over a prime field: defining ideals by
//!   intersection of linear primes, minimal free resolutions, graded Betti
//!   tables ([`resolution`]);
//! * a closed-form sheaf-cohomology route for line arrangements on a smooth
//!   quadric surface ([`cohomology`]).
//!
//! The [`report`] module cross-checks the two against each other and against
//! the formulas `reg = max(a+1, b)` and `ACM ⟺ b − a ≤ 1`.

pub mod arrangements;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod report;
pub mod resolution;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use matrix::DenseMatrix;
pub use monomial::{Monomial, TermOrder};
pub use poly::{Polynomial, Ring, RingRef};
