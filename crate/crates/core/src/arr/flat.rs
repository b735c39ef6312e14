use fixedbitset::FixedBitSet;

use super::Arrangement;
use crate::exact::{sparse::integer_row, Echelon, Matrix, Scalar};

/// An element of the intersection lattice: the subspace cut out by a set of
/// hyperplanes, identified by the (closed) set of hyperplanes containing it.
#[derive(Debug, Clone)]
pub struct Flat {
    hyperplanes: FixedBitSet,
    ambient: usize,
    echelon: Echelon,
}

impl Flat {
    /// The whole space.
    pub fn top(a: &Arrangement) -> Flat {
        Flat {
            hyperplanes: FixedBitSet::with_capacity(a.len()),
            ambient: a.dim(),
            echelon: Echelon::new(a.dim()),
        }
    }

    /// Intersection of the hyperplanes with the given indices.
    pub fn closure(a: &Arrangement, indices: &[usize]) -> Flat {
        let mut echelon = Echelon::new(a.dim());
        for &i in indices {
            echelon.insert(integer_row(a.form(i)));
        }
        Flat::from_echelon(a, echelon)
    }

    fn from_echelon(a: &Arrangement, echelon: Echelon) -> Flat {
        let mut hyperplanes = FixedBitSet::with_capacity(a.len());
        for (i, f) in a.forms().iter().enumerate() {
            if echelon.contains(integer_row(f)) {
                hyperplanes.insert(i);
            }
        }
        Flat {
            hyperplanes,
            ambient: a.dim(),
            echelon,
        }
    }

    /// Intersection of this flat with hyperplane `h`.
    pub fn meet(&self, a: &Arrangement, h: usize) -> Flat {
        if self.hyperplanes.contains(h) {
            return self.clone();
        }
        let mut echelon = self.echelon.clone();
        echelon.insert(integer_row(a.form(h)));
        let mut hyperplanes = self.hyperplanes.clone();
        for (i, f) in a.forms().iter().enumerate() {
            if !hyperplanes.contains(i) && echelon.contains(integer_row(f)) {
                hyperplanes.insert(i);
            }
        }
        Flat {
            hyperplanes,
            ambient: self.ambient,
            echelon,
        }
    }

    pub fn hyperplane_set(&self) -> &FixedBitSet {
        &self.hyperplanes
    }

    pub fn hyperplane_indices(&self) -> Vec<usize> {
        self.hyperplanes.ones().collect()
    }

    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.hyperplanes.contains(h)
    }

    /// Number of hyperplanes in the arrangement this flat belongs to.
    pub fn arrangement_len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Codimension.
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.rank()
    }

    /// Reduced row-echelon equations cutting out the flat.
    pub fn equations(&self) -> Vec<Vec<Scalar>> {
        self.echelon.clone().into_rref().rows
    }

    /// Canonical basis of the subspace: reduced row-echelon form of the
    /// null space of the equations.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        let eq = self.equations();
        let kernel = if eq.is_empty() {
            Matrix::identity(self.ambient)
                .rows()
                .map(|r| r.to_vec())
                .collect()
        } else {
            crate::exact::kernel_basis(&Matrix::from_rows(eq, self.ambient))
        };
        if kernel.is_empty() {
            return kernel;
        }
        Matrix::from_rows(kernel, self.ambient).rref().rows
    }

    /// A point of the flat avoiding every hyperplane not containing it.
    pub fn generic_point(&self, a: &Arrangement) -> Vec<Scalar> {
        let basis = self.basis();
        for scale in 1i64.. {
            // v = Σ scale^k b_k avoids each nonvanishing form for all but finitely many scales
            let mut v = vec![Scalar::from_integer(0.into()); self.ambient];
            let mut c = Scalar::from_integer(1.into());
            for b in &basis {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &c * y;
                }
                c *= Scalar::from_integer(scale.into());
            }
            let ok = a.forms().iter().enumerate().all(|(i, f)| {
                let val: Scalar = f.iter().zip(&v).map(|(p, q)| p * q).sum();
                self.hyperplanes.contains(i) == num_traits::Zero::is_zero(&val)
            });
            if ok {
                return v;
            }
        }
        unreachable!()
    }
}

impl PartialEq for Flat {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.hyperplanes == other.hyperplanes
    }
}

impl Eq for Flat {}

impl std::hash::Hash for Flat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.hyperplanes.hash(state);
    }
}
