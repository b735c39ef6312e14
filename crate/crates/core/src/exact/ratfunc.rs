use num_traits::Zero;

use super::upoly::UPolyT;
use crate::error::{Error, Result};

/// Polynomial in `x` whose coefficients are polynomials in `t`,
/// stored low-to-high in `x`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<UPolyT>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UPolyT>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(UPolyT::one())
    }

    pub fn constant(c: UPolyT) -> Self {
        BiPoly::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: UPolyT, k: usize) -> Self {
        let mut v = vec![UPolyT::zero(); k + 1];
        v[k] = c;
        BiPoly::new(v)
    }

    /// `1 − x`.
    pub fn one_minus_x() -> Self {
        BiPoly::new(vec![UPolyT::one(), UPolyT::from_i64(&[-1])])
    }

    pub fn coeffs(&self) -> &[UPolyT] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(BiPoly::one(), |acc, _| &acc * self)
    }

    /// Value at `x = 1`, a polynomial in `t`.
    pub fn at_one(&self) -> UPolyT {
        self.coeffs.iter().fold(UPolyT::zero(), |acc, c| &acc + c)
    }

    /// Quotient by `x − 1`; the caller guarantees `at_one()` vanishes.
    fn div_x_minus_one(&self) -> BiPoly {
        let n = self.coeffs.len();
        if n == 0 {
            return BiPoly::zero();
        }
        let mut q = vec![UPolyT::zero(); n - 1];
        let mut acc = UPolyT::zero();
        for i in (1..n).rev() {
            acc = &acc + &self.coeffs[i];
            q[i - 1] = acc.clone();
        }
        debug_assert!((&acc + &self.coeffs[0]).is_zero());
        BiPoly::new(q)
    }
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = UPolyT::zero();
        BiPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = UPolyT::zero();
        BiPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut c = vec![UPolyT::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        BiPoly::new(c)
    }
}

/// Rational function in `x` with coefficients in `ℤ[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFuncX {
    num: BiPoly,
    den: BiPoly,
}

impl RatFuncX {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(RatFuncX { num, den }.reduced())
    }

    /// `c · x^shift / (1 − x)^k`, with `shift` possibly negative.
    pub fn laurent_over_one_minus_x(c: UPolyT, shift: i64, k: usize) -> Self {
        let om = BiPoly::one_minus_x().pow(k);
        let (num, den) = if shift >= 0 {
            (BiPoly::monomial(c, shift as usize), om)
        } else {
            (
                BiPoly::constant(c),
                &om * &BiPoly::monomial(UPolyT::one(), (-shift) as usize),
            )
        };
        RatFuncX { num, den }.reduced()
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    /// Cancels common factors of `1 − x`.
    fn reduced(mut self) -> Self {
        while !self.num.is_zero() && self.num.at_one().is_zero() && self.den.at_one().is_zero() {
            self.num = self.num.div_x_minus_one();
            self.den = self.den.div_x_minus_one();
        }
        if self.num.is_zero() {
            self.den = BiPoly::one();
        }
        self
    }

    pub fn add(&self, o: &RatFuncX) -> RatFuncX {
        if self.den == o.den {
            return RatFuncX {
                num: &self.num + &o.num,
                den: self.den.clone(),
            }
            .reduced();
        }
        RatFuncX {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .reduced()
    }

    pub fn mul(&self, o: &RatFuncX) -> RatFuncX {
        RatFuncX {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .reduced()
    }

    pub fn mul_poly(&self, p: &BiPoly) -> RatFuncX {
        RatFuncX {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .reduced()
    }

    /// Coefficients of the Laurent expansion around `x = 0`, for
    /// `t`-free functions whose denominator is `x^s · u(x)` with `u(0) = ±1`.
    /// Returns `(lowest exponent, coefficients)` up to exponent `max_exp`.
    pub fn laurent_coefficients(&self, max_exp: i64) -> Result<(i64, Vec<num_bigint::BigInt>)> {
        let as_int = |p: &BiPoly| -> Result<Vec<num_bigint::BigInt>> {
            p.coeffs
                .iter()
                .map(|c| match c.degree() {
                    None => Ok(num_bigint::BigInt::zero()),
                    Some(0) => Ok(c.coeff(0)),
                    _ => Err(Error::InvalidInput("coefficient depends on t".into())),
                })
                .collect()
        };
        let num = as_int(&self.num)?;
        let den = as_int(&self.den)?;
        let s = den.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let u = &den[s..];
        if !(u[0] == 1.into() || u[0] == (-1).into()) {
            return Err(Error::NotDivisible(
                "denominator constant term is not a unit".into(),
            ));
        }
        let low = -(s as i64);
        let len = (max_exp - low + 1).max(0) as usize;
        let mut out = vec![num_bigint::BigInt::zero(); len];
        for i in 0..len {
            let mut acc = num.get(i).cloned().unwrap_or_default();
            for j in 1..u.len().min(i + 1) {
                acc -= &u[j] * &out[i - j];
            }
            out[i] = &acc * &u[0];
        }
        Ok((low, out))
    }
}

/// Value of `f` at `x = 1` after cancelling every common `(1 − x)` factor.
pub fn limit_x_to_1(f: &RatFuncX) -> Result<UPolyT> {
    let f = f.clone().reduced();
    let n1 = f.num.at_one();
    let d1 = f.den.at_one();
    if d1.is_zero() {
        return if n1.is_zero() {
            Ok(UPolyT::zero())
        } else {
            Err(Error::PoleAtOne)
        };
    }
    if d1.degree() == Some(0) {
        n1.div_scalar(&d1.coeff(0))
    } else {
        n1.div_exact(&d1)
    }
}
