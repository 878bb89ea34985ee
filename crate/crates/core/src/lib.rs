//! Exact computations around the harmonic Fischer decomposition of polynomials
//! in several vector variables of `R^m`.
//!
//! The crate covers sparse rational polynomials ([`ratpoly`]), the invariant
//! operators of the dual pair `(O(m), sp(2k))` as normal-ordered Weyl algebra
//! elements ([`weyl`]), the Fischer inner product and the recursive harmonic
//! decomposition ([`fischer`]), bases of spherical and simplicial harmonics
//! ([`harmonics`]), partition combinatorics ([`repcomb`]) and the irreducibility
//! conditions for generalized Verma modules of `sp(2k)` ([`verma`]).
//!
//! Everything is computed over the rationals; there is no floating point.

pub mod cli;
pub mod error;
pub mod fischer;
pub mod harmonics;
pub mod linalg;
pub mod ratpoly;
pub mod repcomb;
pub mod verma;
pub mod weyl;

pub use error::{Error, Result};
pub use num_rational::BigRational as Rational;

/// Upper bound on the dimension of any monomial space a computation may
/// build a matrix over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cap(pub usize);

impl Cap {
    pub const DEFAULT: Cap = Cap(20_000);

    pub fn check(self, dim: usize) -> Result<()> {
        if dim > self.0 {
            Err(Error::ResourceCap { dim, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Cap {
    fn default() -> Self {
        Cap::DEFAULT
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` (optional leading sign).
pub fn parse_rational(s: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}
