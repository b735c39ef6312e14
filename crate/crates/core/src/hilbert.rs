//! Hilbert series of logarithmic form modules of free (multi)arrangements,
//! the Solomon–Terao limit, and a graded check of the restriction identity
//! `(x + y) Σ_p P(M^p, x) y^p = x(1 − x) Φ(A; x, y)`.
//!
//! A basis derivation of degree `d` is dual to a log form of degree `−d`, so
//! `P(Ω^p, x) = e_p(x^{−d_1}, …, x^{−d_ℓ}) / (1 − x)^ℓ`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arr::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{limit_x_to_1, BiPoly, RatFuncX, UPolyT};
use crate::logmod::{omega_dim, restriction_image_dim, system::subsets};

/// Rank and exponents of a free (multi)arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeHilbertData {
    pub rank: usize,
    pub exponents: Vec<u64>,
}

impl FreeHilbertData {
    pub fn new(exponents: Vec<u64>) -> Self {
        FreeHilbertData {
            rank: exponents.len(),
            exponents,
        }
    }
}

/// `P(Ω^p, x)` for free data.
pub fn hilbert_series_free(h: &FreeHilbertData, p: usize) -> Result<RatFuncX> {
    if p > h.rank || h.exponents.len() != h.rank {
        return Err(Error::InvalidInput(format!(
            "form degree {p} for rank {}",
            h.rank
        )));
    }
    let mut acc: Option<RatFuncX> = None;
    for s in subsets(h.rank, p) {
        let shift: i64 = -s.iter().map(|&i| h.exponents[i] as i64).sum::<i64>();
        let term = RatFuncX::laurent_over_one_minus_x(UPolyT::one(), shift, h.rank);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.expect("at least one subset"))
}

/// `χ(t) = lim_{x→1} Φ(x, t(1 − x) − 1)`, checked against `∏ (t − d_i)`.
pub fn solomon_terao_chi(h: &FreeHilbertData) -> Result<UPolyT> {
    // y = t(1 − x) − 1 = (t − 1) − t·x
    let y = BiPoly::new(vec![UPolyT::from_i64(&[-1, 1]), UPolyT::from_i64(&[0, -1])]);
    let mut phi: Option<RatFuncX> = None;
    for p in 0..=h.rank {
        let term = hilbert_series_free(h, p)?.mul_poly(&y.pow(p));
        phi = Some(match phi {
            None => term,
            Some(f) => f.add(&term),
        });
    }
    let chi = limit_x_to_1(&phi.expect("rank ≥ 0"))?;
    let expected = UPolyT::from_roots(h.exponents.iter().map(|&d| d as i64));
    assert_eq!(
        chi, expected,
        "Solomon–Terao limit disagrees with the exponent product"
    );
    Ok(chi)
}

/// One coefficient of `x^j y^p` on both sides of the identity:
/// `dim M^{p−1}_j + dim M^p_{j−1}` against `dim Ω^p_{j−1} − dim Ω^p_{j−2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbCoefficient {
    pub p: usize,
    pub degree: i64,
    pub restriction_side: i64,
    pub form_side: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbFormulaReport {
    pub hyperplane: usize,
    pub bound: i64,
    pub agrees: bool,
    pub coefficients: Vec<HilbCoefficient>,
}

impl HilbFormulaReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &HilbCoefficient> {
        self.coefficients
            .iter()
            .filter(|c| c.restriction_side != c.form_side)
    }
}

/// Compares both sides of the restriction identity coefficient-wise for
/// `x`-degrees from below the lowest nonzero piece up to `bound`.
pub fn hilbformula_check(a: &Arrangement, h: usize, bound: i64) -> Result<HilbFormulaReport> {
    if h >= a.len() {
        return Err(Error::InvalidInput(format!("hyperplane {h} out of range")));
    }
    let ell = a.dim();
    let n = a.len() as i64;
    let m = a.simple();
    let mut omega: HashMap<(usize, i64), i64> = HashMap::new();
    let mut image: HashMap<(usize, i64), i64> = HashMap::new();
    let mut om = |p: usize, d: i64| {
        *omega
            .entry((p, d))
            .or_insert_with(|| omega_dim(&m, p, d) as i64)
    };
    let mut res = |p: Option<usize>, d: i64| match p {
        Some(p) if p < ell => *image
            .entry((p, d))
            .or_insert_with(|| restriction_image_dim(a, h, p, d) as i64),
        _ => 0,
    };
    let mut coefficients = Vec::new();
    for j in -(n + 1)..=bound {
        for p in 0..=ell {
            let restriction_side = res(p.checked_sub(1), j) + res(Some(p), j - 1);
            let form_side = om(p, j - 1) - om(p, j - 2);
            coefficients.push(HilbCoefficient {
                p,
                degree: j,
                restriction_side,
                form_side,
            });
        }
    }
    let agrees = coefficients
        .iter()
        .all(|c| c.restriction_side == c.form_side);
    Ok(HilbFormulaReport {
        hyperplane: h,
        bound,
        agrees,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(f: &RatFuncX, max: i64) -> (i64, Vec<i64>) {
        let (low, c) = f.laurent_coefficients(max).unwrap();
        let c: Vec<i64> = c.iter().map(|v| i64::try_from(v).unwrap()).collect();
        let skip = c.iter().take_while(|&&v| v == 0).count();
        (low + skip as i64, c[skip..].to_vec())
    }

    #[test]
    fn series_of_free_data() {
        let h = FreeHilbertData::new(vec![1, 5]);
        assert_eq!(
            hilbert_series_free(&h, 2).unwrap(),
            RatFuncX::laurent_over_one_minus_x(UPolyT::one(), -6, 2)
        );
        assert_eq!(
            hilbert_series_free(&h, 0).unwrap(),
            RatFuncX::laurent_over_one_minus_x(UPolyT::one(), 0, 2)
        );
        let (low, c) = coeffs(&hilbert_series_free(&h, 1).unwrap(), 0);
        // x^-5/(1−x)^2 + x^-1/(1−x)^2
        assert_eq!(low, -5);
        assert_eq!(c, vec![1, 2, 3, 4, 6, 8]);
        let b = FreeHilbertData::new(vec![1, 1, 1]);
        let (low, c) = coeffs(&hilbert_series_free(&b, 1).unwrap(), 1);
        assert_eq!(low, -1);
        assert_eq!(c, vec![3, 9, 18]);
        assert!(hilbert_series_free(&b, 4).is_err());
    }

    #[test]
    fn solomon_terao_limits() {
        assert_eq!(
            solomon_terao_chi(&FreeHilbertData::new(vec![1, 2])).unwrap(),
            UPolyT::from_i64(&[2, -3, 1])
        );
        assert_eq!(
            solomon_terao_chi(&FreeHilbertData::new(vec![1, 5])).unwrap(),
            UPolyT::from_roots([1, 5])
        );
        assert_eq!(
            solomon_terao_chi(&FreeHilbertData::new(vec![1, 3, 3])).unwrap(),
            UPolyT::from_i64(&[-9, 15, -7, 1])
        );
        assert_eq!(
            solomon_terao_chi(&FreeHilbertData::new(vec![0, 1])).unwrap(),
            UPolyT::from_i64(&[0, -1, 1])
        );
    }

    #[test]
    fn boolean_identity() {
        let r = hilbformula_check(&Arrangement::boolean(3), 0, 6).unwrap();
        assert!(r.agrees, "{:?}", r.disagreements().collect::<Vec<_>>());
    }

    #[test]
    fn a2_cone_identity() {
        let a =
            Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, -1]]).unwrap();
        for h in 0..4 {
            let r = hilbformula_check(&a, h, 8).unwrap();
            assert!(r.agrees, "{:?}", r.disagreements().collect::<Vec<_>>());
        }
    }
}
