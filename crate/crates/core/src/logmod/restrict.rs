use std::collections::HashSet;

use serde::Serialize;

use super::system::subsets;
use super::{form_system, omega_dim, rank2_multi_exponents, rank_of_rows};
use crate::arr::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{MPoly, Scalar};

/// `dim M^p_d`, the image of `res^p: Ω^p(A)_d → Ω^p(A^h, k)_d`.
///
/// In coordinates with `α_h = z_1` the image of `η` is read off the
/// coefficients of `z_1^1` in the `f_I` with `1 ∉ I`. These form a set `S`
/// of unknowns, so the image dimension is
/// `|S| + rank(C without S) − rank(C)` for the constraint matrix `C`.
pub fn restriction_image_dim(a: &Arrangement, h: usize, p: usize, d: i64) -> usize {
    let n = a.len() as i64;
    let ell = a.dim();
    if p >= ell || d + n < 1 {
        return 0;
    }
    let adapted = a.adapted_to(h).simple();
    let (sys, rows) = form_system(&adapted, p, (d + n) as u32);
    let comps = subsets(ell, p);
    let nm = sys.monos.len();
    let s: HashSet<usize> = comps
        .iter()
        .enumerate()
        .filter(|(_, i)| !i.contains(&0))
        .flat_map(|(c, _)| {
            sys.monos
                .iter()
                .enumerate()
                .filter(|(_, e)| e[0] == 1)
                .map(move |(mi, _)| c * nm + mi)
        })
        .collect();
    let reduced: Vec<_> = rows
        .iter()
        .map(|r| {
            r.iter()
                .filter(|(c, _)| !s.contains(c))
                .cloned()
                .collect::<Vec<_>>()
        })
        .filter(|r: &Vec<_>| !r.is_empty())
        .map(|mut r| {
            crate::exact::sparse::make_primitive(&mut r);
            r
        })
        .collect();
    let ncols = sys.ncols();
    let (full, cut) = rayon::join(
        || rank_of_rows(ncols, rows),
        || rank_of_rows(ncols, reduced),
    );
    s.len() + cut - full
}

/// Restriction of a logarithmic `p`-form numerator to `H_h`.
///
/// `a` must already have `α_h = z_1`. Writes `η = Σ f_I dz_I`, drops the
/// terms with `1 ∈ I`, divides the rest by `z_1` and sets `z_1 = 0`. The
/// result is a numerator over `Q(A^h, k)` for the restriction
/// `a.restrict(h)`, whose coordinates are `z_2, …, z_ℓ`.
pub fn ziegler_restrict_form(
    a: &Arrangement,
    h: usize,
    p: usize,
    eta: &[MPoly],
) -> Result<Vec<MPoly>> {
    let ell = a.dim();
    let mut e1 = vec![Scalar::from_integer(0.into()); ell];
    e1[0] = Scalar::from_integer(1.into());
    if a.form(h) != &e1 {
        return Err(Error::InvalidInput(
            "restricting hyperplane must be z1 = 0".into(),
        ));
    }
    let comps = subsets(ell, p);
    if eta.len() != comps.len() {
        return Err(Error::InvalidInput(
            "wrong number of form components".into(),
        ));
    }
    // Q' restricted to H, against the normalized Q(A^h, k)
    let restricted_q = {
        let mut q = MPoly::one(ell - 1);
        for (i, f) in a.forms().iter().enumerate() {
            if i != h {
                q = &q * &MPoly::linear(&f[1..]);
            }
        }
        q
    };
    let target = a.restrict(h).defining_polynomial();
    let c = restricted_q
        .scalar_ratio(&target)
        .expect("restricted defining polynomial is a multiple of Q(A^h, k)");
    let mut out = Vec::new();
    for (comp, set) in comps.iter().enumerate() {
        if set.contains(&0) {
            continue;
        }
        let mut g = MPoly::zero(ell - 1);
        for (e, v) in eta[comp].terms() {
            match e[0] {
                0 => return Err(Error::NotDivisible(format!("{} by z1", eta[comp]))),
                1 => g.add_term(e[1..].to_vec(), v / &c),
                _ => {}
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Per-degree comparison of `Ω^1(A^h, k)_d` with the image `M^1_d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeDeficit {
    pub degree: i64,
    pub restricted_dim: usize,
    pub image_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodimReport {
    pub hyperplane: usize,
    pub multi_exponents: (u64, u64),
    pub codim: u64,
    pub degrees: Vec<DegreeDeficit>,
}

/// Total dimension of `Ω^1(A^h, k) / M^1` for an essential 3-arrangement.
///
/// Degrees are swept upward from `−(#A − 1)` until `d_3' + 2` consecutive
/// degrees show no deficit and the sweep has passed `−d_2'`. `Ω^1(A^h, k)`
/// is free with generators in degrees `−d_2', −d_3'` and `M^1` is a
/// submodule, so a zero deficit at any degree `≥ −d_2'` persists upward.
pub fn codim_restriction_image(a: &Arrangement, h: usize) -> Result<CodimReport> {
    if a.dim() != 3 || a.rank() != 3 {
        return Err(Error::InvalidInput(
            "expected an essential 3-arrangement".into(),
        ));
    }
    let restricted = a.restrict(h);
    let (d2, d3) = rank2_multi_exponents(&restricted)?.exponents;
    let window = d3 as usize + 2;
    let generated_from = -(d2 as i64);
    let n = a.len() as i64;
    let mut degrees = Vec::new();
    let mut zero_run = 0usize;
    let mut settled = false;
    let mut d = -(n - 1);
    while zero_run < window || !settled {
        let dd = DegreeDeficit {
            degree: d,
            restricted_dim: omega_dim(&restricted, 1, d),
            image_dim: restriction_image_dim(a, h, 1, d),
        };
        assert!(
            dd.image_dim <= dd.restricted_dim,
            "image larger than target"
        );
        if dd.image_dim == dd.restricted_dim {
            zero_run += 1;
            settled |= d >= generated_from;
        } else {
            zero_run = 0;
        }
        degrees.push(dd);
        d += 1;
    }
    let codim = degrees
        .iter()
        .map(|d| (d.restricted_dim - d.image_dim) as u64)
        .sum();
    Ok(CodimReport {
        hyperplane: h,
        multi_exponents: (d2, d3),
        codim,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arr::Multiarrangement;
    use crate::logmod::omega_space;

    #[test]
    fn boolean_restriction_surjective() {
        let b = Arrangement::boolean(3);
        for h in 0..3 {
            assert_eq!(codim_restriction_image(&b, h).unwrap().codim, 0);
        }
        let target = b.restrict(0);
        for d in -3..4 {
            assert_eq!(restriction_image_dim(&b, 0, 1, d), omega_dim(&target, 1, d));
        }
    }

    #[test]
    fn restriction_lands_in_target() {
        let a =
            Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let target: Multiarrangement = a.restrict(0);
        for d in -3..=0 {
            let basis = omega_space(&a.simple(), 1, d);
            let tb = omega_space(&target, 1, d);
            for eta in &basis.elements {
                let r = ziegler_restrict_form(&a, 0, 1, eta).unwrap();
                // membership: adding r to the target basis does not raise its rank
                let mut rows: Vec<Vec<MPoly>> = tb.elements.clone();
                rows.push(r);
                let flat = |v: &Vec<Vec<MPoly>>| -> usize {
                    let mut keys: Vec<(usize, Vec<u32>)> = Vec::new();
                    for e in v {
                        for (c, p) in e.iter().enumerate() {
                            for (m, _) in p.terms() {
                                if !keys.contains(&(c, m.clone())) {
                                    keys.push((c, m.clone()));
                                }
                            }
                        }
                    }
                    let m = crate::exact::Matrix::from_rows(
                        v.iter()
                            .map(|e| keys.iter().map(|(c, m)| e[*c].coeff(m)).collect())
                            .collect(),
                        keys.len(),
                    );
                    m.rank()
                };
                assert_eq!(flat(&rows), flat(&tb.elements));
            }
        }
    }

    #[test]
    fn log_form_of_dz1_is_killed() {
        // (dz1/z1) ∧ f restricts to zero: numerator dz1 · Q/z1 · f has only dz1 terms
        let a = Arrangement::boolean(3);
        let eta = vec![
            MPoly::monomial(vec![0, 1, 1], Scalar::from_integer(1.into())),
            MPoly::zero(3),
            MPoly::zero(3),
        ];
        let r = ziegler_restrict_form(&a, 0, 1, &eta).unwrap();
        assert!(r.iter().all(|p| p.is_zero()));
    }
}
