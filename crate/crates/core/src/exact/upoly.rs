use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Univariate polynomial in `t` with integer coefficients, stored low-to-high.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPolyT {
    coeffs: Vec<BigInt>,
}

impl UPolyT {
    pub fn zero() -> Self {
        UPolyT { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPolyT::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        UPolyT::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        UPolyT::from_i64(&[0, 1])
    }

    pub fn t_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        UPolyT::new(c)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPolyT { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UPolyT::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `∏ (t − r)` over the given roots.
    pub fn from_roots<I: IntoIterator<Item = i64>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(UPolyT::one(), |acc, r| &acc * &UPolyT::from_i64(&[-r, 1]))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// `p(t + s)`.
    pub fn shift(&self, s: i64) -> Self {
        let lin = UPolyT::from_i64(&[s, 1]);
        self.coeffs.iter().rev().fold(UPolyT::zero(), |acc, c| {
            &(&acc * &lin) + &UPolyT::constant(c.clone())
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        UPolyT::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact division by a nonzero integer.
    pub fn div_scalar(&self, c: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("{self} by {c}")));
            }
            out.push(q);
        }
        Ok(UPolyT::new(out))
    }

    /// Division by `t − r`, returning quotient and remainder `p(r)`.
    pub fn div_linear(&self, r: &BigInt) -> (Self, BigInt) {
        if self.coeffs.is_empty() {
            return (UPolyT::zero(), BigInt::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut acc = BigInt::zero();
        for i in (0..n).rev() {
            acc = acc * r + &self.coeffs[i];
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        (UPolyT::new(q), acc)
    }

    /// Exact division by a polynomial whose leading coefficient divides
    /// every intermediate leading term.
    pub fn div_exact(&self, d: &UPolyT) -> Result<Self> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        let lead = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(UPolyT::zero())
            } else {
                Err(Error::NotDivisible(format!("{self} by {d}")))
            };
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("{self} by {d}")));
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(format!("{self} by {d}")));
        }
        Ok(UPolyT::new(q))
    }

    /// Integer roots with multiplicity, ascending.
    ///
    /// Candidates are divisors of the constant term of the deflated
    /// polynomial; each found root is divided out by synthetic division.
    pub fn integer_roots(&self) -> Result<Vec<i64>> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut roots = Vec::new();
        let mut q = self.clone();
        'outer: while q.degree().unwrap_or(0) > 0 {
            let c0 = q.coeff(0);
            if c0.is_zero() {
                roots.push(0);
                q = q.div_linear(&BigInt::zero()).0;
                continue;
            }
            for d in divisors(&c0.abs()) {
                for cand in [d.clone(), -d] {
                    let (quot, rem) = q.div_linear(&cand);
                    if rem.is_zero() {
                        roots.push(cand.to_i64().expect("root fits in i64"));
                        q = quot;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        roots.sort_unstable();
        Ok(roots)
    }

    /// Returns the factorization as integer roots when the polynomial splits
    /// completely over the integers.
    pub fn split_roots(&self) -> Option<Vec<i64>> {
        let roots = self.integer_roots().ok()?;
        (Some(roots.len()) == self.degree()).then_some(roots)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl std::ops::Add for &UPolyT {
    type Output = UPolyT;
    fn add(self, o: &UPolyT) -> UPolyT {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPolyT::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl std::ops::Sub for &UPolyT {
    type Output = UPolyT;
    fn sub(self, o: &UPolyT) -> UPolyT {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPolyT::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl std::ops::Neg for &UPolyT {
    type Output = UPolyT;
    fn neg(self) -> UPolyT {
        UPolyT::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &UPolyT {
    type Output = UPolyT;
    fn mul(self, o: &UPolyT) -> UPolyT {
        if self.is_zero() || o.is_zero() {
            return UPolyT::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPolyT::new(c)
    }
}

impl fmt::Display for UPolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as an array of integers, low-to-high.
impl Serialize for UPolyT {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        super::serialize_ints(&self.coeffs, s)
    }
}
