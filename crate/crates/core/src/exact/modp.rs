//! Arithmetic in prime fields: the point-counting oracle and modular ranks
//! of large integer systems.

use super::SparseRow;

/// The Mersenne prime `2^61 − 1`.
pub const M61: u64 = (1 << 61) - 1;

/// Element arithmetic modulo a prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 63)).contains(&p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = a as u128 * b as u128;
        if self.p == M61 {
            let folded = (prod as u64 & M61) + (prod >> 61) as u64;
            let r = (folded & M61) + (folded >> 61);
            if r >= M61 {
                r - M61
            } else {
                r
            }
        } else {
            (prod % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| self.pow(a, self.p - 2))
    }

    /// Reduces an integer modulo `p`.
    pub fn reduce(&self, v: &num_bigint::BigInt) -> u64 {
        let (sign, digits) = v.to_u64_digits();
        let base = ((1u128 << 64) % self.p as u128) as u64;
        let r = digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| self.add(self.mul(acc, base), d % self.p));
        if sign == num_bigint::Sign::Minus {
            self.sub(0, r)
        } else {
            r
        }
    }

    /// Reduces a rational with denominator prime to `p`.
    pub fn reduce_scalar(&self, v: &super::Scalar) -> Option<u64> {
        let d = self.reduce(v.denom());
        Some(self.mul(self.reduce(v.numer()), self.inv(d)?))
    }

    /// Rank of a dense matrix over `F_p`.
    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        let mut m: Vec<Vec<u64>> = rows.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = self.inv(m[rank][c]).unwrap();
            let pivot = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[c] != 0 {
                    let f = self.mul(row[c], inv);
                    for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Rank over `F_p` of integer rows, by forward elimination on dense rows.
/// This is a lower bound for the rank over `ℚ`.
pub fn rank_mod_p(rows: &[SparseRow], ncols: usize, field: &PrimeField) -> usize {
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut rank = 0;
    let mut dense = vec![0u64; ncols];
    for row in rows {
        dense.iter_mut().for_each(|x| *x = 0);
        let mut first = ncols;
        for (c, v) in row {
            dense[*c] = field.reduce(v);
            if dense[*c] != 0 {
                first = first.min(*c);
            }
        }
        let mut c = first;
        while c < ncols {
            if dense[c] == 0 {
                c += 1;
                continue;
            }
            match &pivots[c] {
                Some(prow) => {
                    let f = dense[c];
                    for k in c..ncols {
                        if prow[k] != 0 {
                            dense[k] = field.sub(dense[k], field.mul(f, prow[k]));
                        }
                    }
                    c += 1;
                }
                None => {
                    let inv = field.inv(dense[c]).expect("nonzero");
                    let mut prow = vec![0u64; ncols];
                    for k in c..ncols {
                        prow[k] = field.mul(dense[k], inv);
                    }
                    pivots[c] = Some(prow);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == ncols {
            break;
        }
    }
    rank
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
