//! Linear systems for homogeneous polynomial tuples subject to
//! divisibility by powers of linear forms.
//!
//! `α^k | P` is tested by substituting `z_p = (u − Σ_{j≠p} α_j z_j)/α_p`
//! for the leading index `p` of `α` and requiring every coefficient with
//! `u`-exponent below `k` to vanish. Everything is scaled by `α_p^D` so the
//! rows stay integral.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::sparse::make_primitive;
use crate::exact::{Monomial, SparseRow};

/// Homogeneous monomials of degree `d` in `n` variables, lexicographically
/// decreasing.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Unknowns: `ncomp` homogeneous polynomials of degree `degree`, flattened
/// component-major.
#[derive(Debug, Clone)]
pub struct PolySystem {
    pub nvars: usize,
    pub degree: u32,
    pub ncomp: usize,
    pub monos: Vec<Monomial>,
}

/// A linear combination `Σ s_c f_c` of the unknown components.
pub type Combo = Vec<(usize, BigInt)>;

impl PolySystem {
    pub fn new(nvars: usize, degree: u32, ncomp: usize) -> Self {
        PolySystem {
            nvars,
            degree,
            ncomp,
            monos: monomials(nvars, degree),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncomp * self.monos.len()
    }

    pub fn col(&self, comp: usize, mono: usize) -> usize {
        comp * self.monos.len() + mono
    }

    /// Rows expressing `α^k | Σ s_c f_c` for every combination.
    pub fn divisibility_rows(&self, alpha: &[BigInt], k: u32, combos: &[Combo]) -> Vec<SparseRow> {
        if k == 0 || combos.is_empty() {
            return Vec::new();
        }
        let images = self.substitution_images(alpha, k);
        let mut rows = Vec::new();
        for combo in combos {
            let mut acc: HashMap<&Monomial, SparseRow> = HashMap::new();
            for (comp, s) in combo {
                if s.is_zero() {
                    continue;
                }
                for (mi, image) in images.iter().enumerate() {
                    let col = self.col(*comp, mi);
                    for (m, v) in image {
                        acc.entry(m).or_default().push((col, s * v));
                    }
                }
            }
            let mut keyed: Vec<(&Monomial, SparseRow)> = acc.into_iter().collect();
            keyed.sort_by(|a, b| a.0.cmp(b.0));
            for (_, mut row) in keyed {
                row.sort_by_key(|e| e.0);
                row.retain(|e| !e.1.is_zero());
                if !row.is_empty() {
                    make_primitive(&mut row);
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// For each unknown monomial, the part of its scaled image whose
    /// `u`-exponent is below `k`.
    fn substitution_images(&self, alpha: &[BigInt], k: u32) -> Vec<Vec<(Monomial, BigInt)>> {
        let n = self.nvars;
        let d = self.degree;
        let p = alpha
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero form");
        let ap = &alpha[p];
        // powers of −Σ_{j≠p} α_j z_j
        let mut neg_m: Vec<(Monomial, BigInt)> = Vec::new();
        for (j, a) in alpha.iter().enumerate() {
            if j != p && !a.is_zero() {
                let mut e = vec![0; n];
                e[j] = 1;
                neg_m.push((e, -a));
            }
        }
        let mut powers: Vec<HashMap<Monomial, BigInt>> =
            vec![HashMap::from([(vec![0; n], BigInt::one())])];
        for i in 1..=d as usize {
            let mut next: HashMap<Monomial, BigInt> = HashMap::new();
            for (e, c) in &powers[i - 1] {
                for (f, a) in &neg_m {
                    let m: Monomial = e.iter().zip(f).map(|(x, y)| x + y).collect();
                    *next.entry(m).or_default() += c * a;
                }
            }
            next.retain(|_, v| !v.is_zero());
            powers.push(next);
        }
        let ap_pow: Vec<BigInt> = (0..=d)
            .map(|i| num_traits::pow(ap.clone(), i as usize))
            .collect();
        self.monos
            .iter()
            .map(|e| {
                let ep = e[p];
                let mut out = Vec::new();
                let mut binom = BigInt::one();
                for a in 0..k.min(ep + 1) {
                    if a > 0 {
                        binom = binom * BigInt::from(ep - a + 1) / BigInt::from(a);
                    }
                    let base = &ap_pow[(d - ep) as usize] * &binom;
                    for (t, c) in &powers[(ep - a) as usize] {
                        let mut m: Monomial = e.iter().zip(t).map(|(x, y)| x + y).collect();
                        m[p] = a;
                        out.push((m, &base * c));
                    }
                }
                out
            })
            .collect()
    }
}

/// Ascending `p`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

/// Combinations for `α^k | θ(α)` with `θ = Σ f_i ∂_i`.
pub fn derivation_combos(alpha: &[BigInt]) -> Vec<Combo> {
    vec![alpha
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i, a.clone()))
        .collect()]
}

/// Combinations for `α^k | dα ∧ η`: the coefficient of `dz_K` is
/// `Σ_{i∈K} ± α_i f_{K∖i}`. Only the `(p+1)`-subsets `K` through the leading
/// index of `α` are needed, since `dα ∧ (dα ∧ η) = 0` expresses the others
/// through these.
pub fn form_combos(alpha: &[BigInt], p: usize) -> Vec<Combo> {
    let n = alpha.len();
    let Some(lead) = alpha.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let index: HashMap<Vec<usize>, usize> = subsets(n, p)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    subsets(n, p + 1)
        .into_iter()
        .filter(|k| k.contains(&lead))
        .map(|k| {
            k.iter()
                .enumerate()
                .filter(|(_, &i)| !alpha[i].is_zero())
                .map(|(pos, &i)| {
                    let rest: Vec<usize> = k.iter().copied().filter(|&j| j != i).collect();
                    let sign = if pos % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    (index[&rest], sign * &alpha[i])
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sparse::rank_of;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(1, 4), vec![vec![4]]);
        assert_eq!(monomials(2, 0), vec![vec![0, 0]]);
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn divisibility_by_a_square() {
        // quadratics in two variables divisible by (z1 + 2 z2)^2: one-dimensional
        let sys = PolySystem::new(2, 2, 1);
        let alpha = [BigInt::from(1), BigInt::from(2)];
        let rows = sys.divisibility_rows(&alpha, 2, &[vec![(0, BigInt::one())]]);
        assert_eq!(sys.ncols() - rank_of(rows, sys.ncols()), 1);
    }

    #[test]
    fn divisibility_by_non_leading_form() {
        // cubics in three variables divisible by 3 z2 − z3: ten monomials, kernel of dim 6
        let sys = PolySystem::new(3, 3, 1);
        let alpha = [BigInt::from(0), BigInt::from(3), BigInt::from(-1)];
        let rows = sys.divisibility_rows(&alpha, 1, &[vec![(0, BigInt::one())]]);
        assert_eq!(sys.ncols() - rank_of(rows, sys.ncols()), 6);
    }
}
