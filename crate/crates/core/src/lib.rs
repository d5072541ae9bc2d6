//! Orbits of `PSL(2, Z)` acting on the sets
//! `M(-n) = { (a + sqrt(-n)) / c : a, c, b = (a^2 + n) / c in Z }`
//! for square-free `n >= 1`.
//!
//! Elements are handled through their integer signature `(a, b, c)` with
//! `b * c = a^2 + n`. The generators `x: z -> -1/z` and `y: z -> (z - 1)/z`
//! act on signatures by integer substitutions, so everything here is exact
//! integer arithmetic.
//!
//! * [`arith`]: factorization, divisor counts, binomials.
//! * [`signature`]: the signature type, generator action, classification.
//! * [`enumerate`]: the finite sets `A+(-n)`, `A-(-n)`, `T+(-n)`, norm-zero
//!   elements and the `b = c` diagonal.
//! * [`orbits`]: orbit counting (direct and divisor-sum), the descent to a
//!   canonical representative, and per-modulus verification reports.
//! * [`oracle`]: brute-force cross-checks independent of the above.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod arith;
pub mod enumerate;
mod error;
pub mod oracle;
pub mod orbits;
pub mod signature;

pub use error::{Error, Result};
pub use signature::{ElementClass, Generator, GeneratorWord, Signature};
