//! Fraction-free sparse elimination over the integers.
//!
//! Rows are kept primitive (content divided out) after every update, so
//! entry growth stays close to the size of the minors involved. Reduced
//! row-echelon output is produced only on request and converted to
//! canonical rationals at that point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Scalar;

/// Sparse integer row, sorted by column, without zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Incrementally built row-echelon basis of a row space.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    /// Reduces `row` against the basis until its leading column is not a
    /// pivot column. Returns an empty row when `row` lies in the span.
    pub fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        while let Some(&(lead, _)) = row.first() {
            match self.pivot_row[lead] {
                Some(pr) => row = eliminate(&row, &self.rows[pr]),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, v)| *c < self.ncols && !v.is_zero()));
        let row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].0;
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce_leading(row).is_empty()
    }

    /// Reduced row-echelon form with rational entries (pivot entries 1),
    /// rows sorted by pivot column.
    pub fn into_rref(self) -> Rref {
        let ncols = self.ncols;
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let mut index_of = vec![None; ncols];
        for (i, &p) in pivots.iter().enumerate() {
            index_of[p] = Some(i);
        }
        // back substitution, bottom up, so each row only meets fully reduced rows
        for i in (0..rows.len()).rev() {
            loop {
                let target = rows[i]
                    .iter()
                    .skip(1)
                    .find_map(|(c, _)| index_of[*c].filter(|&j| j != i));
                match target {
                    Some(j) => {
                        let col = pivots[j];
                        rows[i] = eliminate_at(&rows[i], &rows[j], col);
                    }
                    None => break,
                }
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                let lead = r[0].1.clone();
                let mut dense = vec![Scalar::zero(); ncols];
                for (c, v) in r {
                    dense[c] = Scalar::new(v, lead.clone());
                }
                dense
            })
            .collect();
        Rref {
            ncols,
            rows,
            pivots,
        }
    }
}

/// Reduced row-echelon form over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Right null space basis read off the free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[f] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// Eliminates the leading entry of `row` using `pivot` (same leading column).
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let col = pivot[0].0;
    debug_assert_eq!(row[0].0, col);
    eliminate_at(row, pivot, col)
}

/// Returns a primitive multiple of `(a/g)·row − (b/g)·pivot` where `a` is
/// the pivot entry at `col` and `b` the entry of `row` at `col`.
fn eliminate_at(row: &SparseRow, pivot: &SparseRow, col: usize) -> SparseRow {
    let a = &pivot
        .iter()
        .find(|(c, _)| *c == col)
        .expect("pivot entry")
        .1;
    let b = &row.iter().find(|(c, _)| *c == col).expect("row entry").1;
    let g = a.gcd(b);
    let (ma, mb) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, &ma * &row[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&mb * &pivot[j].1)));
            j += 1;
        } else {
            let v = &ma * &row[i].1 - &mb * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Divides out the content and makes the leading entry positive.
pub fn make_primitive(row: &mut SparseRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Converts a dense rational row into a primitive integer row spanning the
/// same line.
pub fn integer_row(row: &[Scalar]) -> SparseRow {
    let mut lcm = BigInt::one();
    for v in row {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let mut out: SparseRow = row
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

/// Rank of a set of sparse integer rows.
pub fn rank_of(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> usize {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> SparseRow {
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(c, x)| (c, BigInt::from(*x)))
            .collect()
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let mut e = Echelon::new(3);
        assert!(e.insert(row(&[2, 4, 6])));
        assert!(!e.insert(row(&[1, 2, 3])));
        assert!(e.insert(row(&[0, 1, 1])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new(3);
        e.insert(row(&[2, 4, 6]));
        e.insert(row(&[1, 3, 2]));
        let r = e.into_rref();
        assert_eq!(r.pivots, vec![0, 1]);
        let q = |n: i64| Scalar::from_integer(n.into());
        assert_eq!(r.rows[0], vec![q(1), q(0), q(5)]);
        assert_eq!(r.rows[1], vec![q(0), q(1), q(-1)]);
    }
}
