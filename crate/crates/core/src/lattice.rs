//! Intersection lattice, Möbius function and characteristic polynomial,
//! plus a complement-counting oracle over prime fields.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use serde::Serialize;

use crate::arr::{Arrangement, Flat};
use crate::error::{Error, Result};
use crate::exact::modp::{is_prime, PrimeField};
use crate::exact::{fmt_scalar, UPolyT};

/// All flats of a central arrangement, sorted by rank, with Möbius values
/// `μ(V) = 1`, `μ(X) = −Σ_{Y<X} μ(Y)`.
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    dim: usize,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
    rank_start: Vec<usize>,
    index: HashMap<FixedBitSet, usize>,
}

impl IntersectionLattice {
    /// Breadth-first construction: each flat of rank `r + 1` arises as the
    /// meet of a rank-`r` flat with a hyperplane not containing it.
    pub fn build(a: &Arrangement) -> Self {
        let mut flats = vec![Flat::top(a)];
        let mut index = HashMap::new();
        index.insert(flats[0].hyperplane_set().clone(), 0);
        let mut rank_start = vec![0];
        let mut level = 0..1;
        while !level.is_empty() {
            let next_start = flats.len();
            for i in level.clone() {
                let mut covered = FixedBitSet::with_capacity(a.len());
                for h in 0..a.len() {
                    if flats[i].contains_hyperplane(h) || covered.contains(h) {
                        continue;
                    }
                    let y = flats[i].meet(a, h);
                    covered.union_with(y.hyperplane_set());
                    if !index.contains_key(y.hyperplane_set()) {
                        index.insert(y.hyperplane_set().clone(), flats.len());
                        flats.push(y);
                    }
                }
            }
            if flats.len() > next_start {
                rank_start.push(next_start);
            }
            level = next_start..flats.len();
        }
        rank_start.push(flats.len());
        let mut lattice = IntersectionLattice {
            dim: a.dim(),
            flats,
            mobius: Vec::new(),
            rank_start,
            index,
        };
        lattice.mobius = lattice.compute_mobius();
        lattice
    }

    fn compute_mobius(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.flats.len()];
        mu[0] = 1;
        for x in 1..self.flats.len() {
            let sx = self.flats[x].hyperplane_set();
            let below = self.rank_start[self.flats[x].rank()];
            mu[x] = -(0..below)
                .filter(|&y| self.flats[y].hyperplane_set().is_subset(sx))
                .map(|y| mu[y])
                .sum::<i64>();
        }
        mu
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    pub fn mobius(&self, i: usize) -> i64 {
        self.mobius[i]
    }

    pub fn mobius_values(&self) -> &[i64] {
        &self.mobius
    }

    /// Rank of the arrangement (rank of the minimal flat).
    pub fn rank(&self) -> usize {
        self.rank_start.len() - 2
    }

    /// Indices of the flats of rank `r`.
    pub fn flats_of_rank(&self, r: usize) -> std::ops::Range<usize> {
        if r > self.rank() {
            return 0..0;
        }
        self.rank_start[r]..self.rank_start[r + 1]
    }

    /// Index of the flat with the given hyperplane set.
    pub fn find(&self, hyperplanes: &FixedBitSet) -> Option<usize> {
        self.index.get(hyperplanes).copied()
    }

    /// Flats covering flat `i`, i.e. one rank lower in dimension and inside it.
    pub fn covers(&self, i: usize) -> Vec<usize> {
        let s = self.flats[i].hyperplane_set();
        self.flats_of_rank(self.flats[i].rank() + 1)
            .filter(|&j| s.is_subset(self.flats[j].hyperplane_set()))
            .collect()
    }

    /// `χ(A, t) = Σ_X μ(X) t^{dim X}`.
    pub fn char_poly(&self) -> UPolyT {
        let mut c = vec![BigInt::from(0); self.dim + 1];
        for (f, &m) in self.flats.iter().zip(&self.mobius) {
            c[f.dim()] += m;
        }
        UPolyT::new(c)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            chi: self.char_poly(),
            flats: self
                .flats
                .iter()
                .zip(&self.mobius)
                .map(|(f, &mobius)| FlatJson {
                    dim: f.dim(),
                    hyperplanes: f.hyperplane_indices(),
                    basis: f
                        .basis()
                        .iter()
                        .map(|r| r.iter().map(fmt_scalar).collect())
                        .collect(),
                    mobius,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlatJson {
    pub dim: usize,
    pub hyperplanes: Vec<usize>,
    pub basis: Vec<Vec<String>>,
    pub mobius: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeJson {
    pub chi: UPolyT,
    pub flats: Vec<FlatJson>,
}

pub fn build_lattice(a: &Arrangement) -> IntersectionLattice {
    IntersectionLattice::build(a)
}

pub fn char_poly(a: &Arrangement) -> UPolyT {
    IntersectionLattice::build(a).char_poly()
}

/// `χ(A, t) / (t − 1)`.
pub fn reduced_char_poly(a: &Arrangement) -> Result<UPolyT> {
    if a.is_empty() {
        return Err(Error::InvalidInput(
            "reduced characteristic polynomial of an empty arrangement".into(),
        ));
    }
    let (q, r) = char_poly(a).div_linear(&BigInt::from(1));
    assert!(r == BigInt::from(0), "χ(1) ≠ 0 for a central arrangement");
    Ok(q)
}

/// Number of points of `F_p^ℓ` off every hyperplane.
///
/// The count is taken on the essentialization and scaled by
/// `p^{ℓ − rank}`. The prime is rejected unless reduction mod `p` keeps
/// every flat's rank and leaves every flat closed.
pub fn count_points_mod_p(a: &Arrangement, p: u64) -> Result<u64> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::BadPrime(p));
    }
    let (ess, r) = a.essentialize();
    let field = PrimeField::new(p);
    let forms: Vec<Vec<u64>> = ess
        .forms()
        .iter()
        .map(|f| {
            f.iter()
                .map(|c| field.reduce_scalar(c))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()
        .ok_or(Error::BadPrime(p))?;
    check_good_prime(&ess, &forms, &field)?;
    let scale = p
        .checked_pow((a.dim() - r) as u32)
        .ok_or(Error::BadPrime(p))?;
    Ok(count_complement(&forms, r, &field) * scale)
}

fn check_good_prime(a: &Arrangement, forms: &[Vec<u64>], field: &PrimeField) -> Result<()> {
    let lattice = IntersectionLattice::build(a);
    for f in lattice.flats() {
        let idx = f.hyperplane_indices();
        let mut rows: Vec<Vec<u64>> = idx.iter().map(|&i| forms[i].clone()).collect();
        if field.rank(&rows) != f.rank() {
            return Err(Error::BadPrime(field.modulus()));
        }
        for h in (0..a.len()).filter(|h| !f.contains_hyperplane(*h)) {
            rows.push(forms[h].clone());
            let grew = field.rank(&rows) == f.rank() + 1;
            rows.pop();
            if !grew {
                return Err(Error::BadPrime(field.modulus()));
            }
        }
    }
    Ok(())
}

/// Counts projective points (first nonzero coordinate 1) with all form
/// values nonzero, times `p − 1`. Coordinates after the leading one run
/// through an odometer; stepping a digit adds that column to every value.
fn count_complement(forms: &[Vec<u64>], dim: usize, field: &PrimeField) -> u64 {
    let p = field.modulus();
    if dim == 0 {
        return 1;
    }
    let mut projective = 0u64;
    for lead in 0..dim {
        let free = dim - lead - 1;
        let mut vals: Vec<u64> = forms.iter().map(|f| f[lead]).collect();
        let mut digits = vec![0u64; free];
        loop {
            if vals.iter().all(|&v| v != 0) {
                projective += 1;
            }
            // advance the odometer
            let mut k = 0;
            loop {
                if k == free {
                    break;
                }
                let col = lead + 1 + k;
                for (v, f) in vals.iter_mut().zip(forms) {
                    *v = field.add(*v, f[col]);
                }
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
    projective * (p - 1)
}
