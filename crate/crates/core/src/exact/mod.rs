//! Exact arithmetic: rationals, sparse multivariate polynomials, integer
//! polynomials in `t`, rational functions in `x`, and linear algebra over ℚ.

mod matrix;
pub mod modp;
mod mpoly;
mod ratfunc;
pub mod sparse;
mod upoly;

pub use matrix::{kernel_basis, Matrix};
pub use mpoly::{grlex, poly_determinant, MPoly, Monomial};
pub use ratfunc::{limit_x_to_1, BiPoly, RatFuncX};
pub use sparse::{Echelon, Rref, SparseRow};
pub use upoly::UPolyT;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serializer;

/// Exact rational scalar; always stored in lowest terms with positive
/// denominator.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => Some(Scalar::from_integer(s.parse().ok()?)),
    }
}

/// Canonical printing: `p` for integers, `p/q` otherwise.
pub fn fmt_scalar(v: &Scalar) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Serializes integers as JSON numbers when they fit in `i64`, as strings
/// otherwise.
pub(crate) fn serialize_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_round_trip() {
        let v = parse_scalar("-6/4").unwrap();
        assert_eq!(fmt_scalar(&v), "-3/2");
        assert_eq!(fmt_scalar(&parse_scalar("7").unwrap()), "7");
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
    }
}
