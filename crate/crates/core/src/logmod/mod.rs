//! Graded pieces of logarithmic derivation and form modules, Saito
//! certificates and the Ziegler restriction map.
//!
//! A derivation `θ = Σ f_i ∂_i` is stored as its coefficient tuple. A
//! logarithmic `p`-form `ω = η / Q(A, k)` is stored through its numerator
//! `η = Σ_I f_I dz_I`, indexed by ascending `p`-subsets; its degree is
//! `deg η − |k|`.

mod cert;
mod restrict;
pub(crate) mod system;

pub use cert::{
    greedy_certificate, rank2_multi_exponents, saito_certificate, verify_certificate,
    FreenessCertificate, Rank2Exponents,
};
pub use restrict::{
    codim_restriction_image, restriction_image_dim, ziegler_restrict_form, CodimReport,
    DegreeDeficit,
};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arr::Multiarrangement;
use crate::exact::modp::{rank_mod_p, PrimeField, M61};
use crate::exact::sparse::integer_row;
use crate::exact::{Echelon, MPoly, Scalar, SparseRow};

/// Largest prime below `2^61 − 1`.
const SECOND_PRIME: u64 = 2_305_843_009_213_693_921;
use system::{derivation_combos, form_combos, subsets, PolySystem};

/// Homogeneous basis of one graded piece.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBasis {
    pub degree: i64,
    /// `None` for derivations, `Some(p)` for `p`-forms.
    pub form_degree: Option<usize>,
    pub nvars: usize,
    pub elements: Vec<Vec<MPoly>>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Labels of the components: `∂1, ∂2, …` or `dz1^dz2, …`.
    pub fn component_labels(&self) -> Vec<String> {
        match self.form_degree {
            None => (1..=self.nvars).map(|i| format!("d{i}")).collect(),
            Some(p) => subsets(self.nvars, p)
                .iter()
                .map(|s| {
                    if s.is_empty() {
                        "1".to_string()
                    } else {
                        s.iter()
                            .map(|i| format!("dz{}", i + 1))
                            .collect::<Vec<_>>()
                            .join("^")
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedBasisJson {
    pub degree: i64,
    pub components: Vec<String>,
    pub elements: Vec<Vec<String>>,
}

impl From<&GradedBasis> for GradedBasisJson {
    fn from(b: &GradedBasis) -> Self {
        GradedBasisJson {
            degree: b.degree,
            components: b.component_labels(),
            elements: b
                .elements
                .iter()
                .map(|e| e.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }
}

/// Forms as integer vectors (forms are stored primitive).
pub(crate) fn integer_forms(m: &Multiarrangement) -> Vec<Vec<BigInt>> {
    m.forms()
        .iter()
        .map(|f| {
            let mut v = vec![BigInt::zero(); f.len()];
            for (c, x) in integer_row(f) {
                v[c] = x;
            }
            v
        })
        .collect()
}

pub(crate) fn derivation_system(m: &Multiarrangement, d: u32) -> (PolySystem, Vec<SparseRow>) {
    let sys = PolySystem::new(m.dim(), d, m.dim());
    let rows = integer_forms(m)
        .iter()
        .zip(m.mult())
        .flat_map(|(a, &k)| sys.divisibility_rows(a, k, &derivation_combos(a)))
        .collect();
    (sys, rows)
}

/// The system for `Ω^p(A, k)` at numerator degree `deg`.
pub(crate) fn form_system(
    m: &Multiarrangement,
    p: usize,
    deg: u32,
) -> (PolySystem, Vec<SparseRow>) {
    let n = m.dim();
    let sys = PolySystem::new(n, deg, subsets(n, p).len());
    let rows = integer_forms(m)
        .iter()
        .zip(m.mult())
        .flat_map(|(a, &k)| sys.divisibility_rows(a, k, &form_combos(a, p)))
        .collect();
    (sys, rows)
}

/// Systems with more unknowns than this are ranked modulo primes.
pub const EXACT_RANK_LIMIT: usize = 120;

/// Rank of an integer system. Small systems use exact elimination; larger
/// ones take the largest rank modulo two 61-bit primes.
pub(crate) fn rank_of_rows(ncols: usize, rows: Vec<SparseRow>) -> usize {
    if ncols > EXACT_RANK_LIMIT {
        return modular_rank(ncols, &rows);
    }
    exact_rank(ncols, rows)
}

pub(crate) fn modular_rank(ncols: usize, rows: &[SparseRow]) -> usize {
    let first = rank_mod_p(rows, ncols, &PrimeField::new(M61));
    if first == ncols.min(rows.len()) {
        return first;
    }
    first.max(rank_mod_p(rows, ncols, &PrimeField::new(SECOND_PRIME)))
}

pub(crate) fn exact_rank(ncols: usize, rows: Vec<SparseRow>) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

fn kernel_elements(sys: &PolySystem, rows: Vec<SparseRow>) -> Vec<Vec<MPoly>> {
    let mut e = Echelon::new(sys.ncols());
    for r in rows {
        e.insert(r);
    }
    let nm = sys.monos.len();
    e.into_rref()
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut dense = vec![Scalar::zero(); v.len()];
            for (c, x) in integer_row(&v) {
                dense[c] = Scalar::from_integer(x);
            }
            (0..sys.ncomp)
                .map(|comp| {
                    MPoly::from_terms(
                        sys.nvars,
                        (0..nm).map(|mi| (sys.monos[mi].clone(), dense[comp * nm + mi].clone())),
                    )
                })
                .collect()
        })
        .collect()
}

/// `dim D(A, k)_d`.
pub fn derivation_dim(m: &Multiarrangement, d: i64) -> usize {
    if d < 0 || m.dim() == 0 {
        return 0;
    }
    let (sys, rows) = derivation_system(m, d as u32);
    sys.ncols() - rank_of_rows(sys.ncols(), rows)
}

/// Basis of `D(A, k)_d`: derivations `θ` of polynomial degree `d` with
/// `α_H^{k(H)} | θ(α_H)` for every `H`.
pub fn derivation_space(m: &Multiarrangement, d: i64) -> GradedBasis {
    let elements = if d < 0 || m.dim() == 0 {
        Vec::new()
    } else {
        let (sys, rows) = derivation_system(m, d as u32);
        kernel_elements(&sys, rows)
    };
    GradedBasis {
        degree: d,
        form_degree: None,
        nvars: m.dim(),
        elements,
    }
}

/// `dim Ω^p(A, k)_d`.
pub fn omega_dim(m: &Multiarrangement, p: usize, d: i64) -> usize {
    let deg = d + m.total() as i64;
    if deg < 0 || p > m.dim() {
        return 0;
    }
    let (sys, rows) = form_system(m, p, deg as u32);
    sys.ncols() - rank_of_rows(sys.ncols(), rows)
}

/// Basis of `Ω^p(A, k)_d` as numerators `η` of degree `d + |k|` with
/// `α_H^{k(H)} | dα_H ∧ η` for every `H`.
pub fn omega_space(m: &Multiarrangement, p: usize, d: i64) -> GradedBasis {
    let deg = d + m.total() as i64;
    let elements = if deg < 0 || p > m.dim() {
        Vec::new()
    } else {
        let (sys, rows) = form_system(m, p, deg as u32);
        kernel_elements(&sys, rows)
    };
    GradedBasis {
        degree: d,
        form_degree: Some(p),
        nvars: m.dim(),
        elements,
    }
}

/// Whether `θ ∈ D(A, k)`, checked against the exact divisibility system.
pub fn is_log_derivation(m: &Multiarrangement, theta: &[MPoly]) -> bool {
    let Some(d) = theta.iter().filter_map(|p| p.total_degree()).max() else {
        return true;
    };
    if !theta
        .iter()
        .all(|p| p.is_zero() || (p.is_homogeneous() && p.total_degree() == Some(d)))
    {
        return false;
    }
    let (sys, rows) = derivation_system(m, d);
    let index: std::collections::HashMap<&Vec<u32>, usize> =
        sys.monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut v = vec![Scalar::zero(); sys.ncols()];
    for (comp, p) in theta.iter().enumerate() {
        for (e, c) in p.terms() {
            v[sys.col(comp, index[e])] = c.clone();
        }
    }
    rows.iter().all(|r| {
        r.iter()
            .map(|(c, x)| Scalar::from_integer(x.clone()) * &v[*c])
            .sum::<Scalar>()
            .is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arr::Arrangement;

    fn binom(n: u64, k: u64) -> usize {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as usize
    }

    fn a2() -> Arrangement {
        Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    #[test]
    fn boolean_derivations() {
        let b = Arrangement::boolean(3).simple();
        assert_eq!(derivation_dim(&b, 0), 0);
        let d1 = derivation_space(&b, 1);
        assert_eq!(d1.dim(), 3);
        for t in &d1.elements {
            assert!(is_log_derivation(&b, t));
        }
    }

    #[test]
    fn single_hyperplane_constant_derivation() {
        let m = Arrangement::from_i64(2, &[&[1, 0]]).unwrap().simple();
        let d0 = derivation_space(&m, 0);
        assert_eq!(d0.dim(), 1);
        assert!(d0.elements[0][0].is_zero());
    }

    #[test]
    fn a2_double_multiplicity_degree_three() {
        let m = Multiarrangement::constant(a2(), 2);
        assert_eq!(derivation_dim(&m, 2), 0);
        assert_eq!(derivation_dim(&m, 3), 2);
    }

    #[test]
    fn omega_extremes() {
        let m = a2().simple();
        for d in -4..4i64 {
            let s = |deg: i64| if deg < 0 { 0 } else { binom(deg as u64 + 1, 1) };
            assert_eq!(omega_dim(&m, 0, d), s(d));
            assert_eq!(omega_dim(&m, 2, d), s(d + 3));
        }
        assert_eq!(omega_dim(&m, 1, -2), 1);
        assert_eq!(omega_dim(&m, 1, -1), 3);
        let b = Arrangement::boolean(3).simple();
        assert_eq!(omega_dim(&b, 0, 2), binom(4, 2));
        assert_eq!(omega_dim(&b, 3, 0), binom(5, 2));
    }

    #[test]
    fn modular_rank_matches_exact() {
        let a = Arrangement::from_i64(
            3,
            &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 1],
                &[1, 2, 3],
                &[2, -1, 1],
            ],
        )
        .unwrap()
        .simple();
        for deg in 0..6 {
            for p in 0..=3 {
                let (sys, rows) = form_system(&a, p, deg);
                assert_eq!(
                    modular_rank(sys.ncols(), &rows),
                    exact_rank(sys.ncols(), rows)
                );
            }
            let (sys, rows) = derivation_system(&a, deg);
            assert_eq!(
                modular_rank(sys.ncols(), &rows),
                exact_rank(sys.ncols(), rows)
            );
        }
    }

    #[test]
    fn a2_weyl_in_three_space() {
        // exponents (1,2) of the rank-2 part and 0 for the lineality direction
        let a = Arrangement::from_i64(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]])
            .unwrap()
            .simple();
        assert_eq!(derivation_dim(&a, 0), 1);
        assert_eq!(omega_dim(&a, 1, -2), 1);
    }
}
