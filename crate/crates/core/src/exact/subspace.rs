use num_traits::Zero;

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored as the nonzero rows of its RREF.
///
/// Because the RREF of a row space is unique, two subspaces are equal
/// exactly when their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<V: AsRef<[Rational]>>(ambient: usize, vectors: &[V]) -> Result<Self> {
        let rows = vectors
            .iter()
            .map(|v| {
                let v = v.as_ref();
                if v.len() != ambient {
                    Err(Error::DimensionMismatch {
                        expected: ambient,
                        found: v.len(),
                    })
                } else {
                    Ok(v.to_vec())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_matrix(&Matrix::from_rows(ambient, rows)?))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (red, pivots) = m.rref_with_pivots();
        let rank = pivots.len();
        let rows = (0..rank).map(|i| red.row(i).to_vec()).collect();
        Subspace {
            ambient: m.cols(),
            basis: Matrix::from_rows(m.cols(), rows).expect("rows have the ambient length"),
            pivots,
        }
    }

    /// Span of a subset of the standard basis vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vecs: Vec<Vec<Rational>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = num_traits::One::one();
                v
            })
            .collect();
        Self::span(ambient, &vecs).expect("coordinate vectors have the ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other_ambient: usize) -> Result<()> {
        if self.ambient != other_ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other_ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.ambient, &rows)
    }

    pub fn add_vectors<V: AsRef<[Rational]>>(&self, vectors: &[V]) -> Result<Subspace> {
        let mut rows = self.basis_vectors();
        for v in vectors {
            let v = v.as_ref();
            self.check(v.len())?;
            rows.push(v.to_vec());
        }
        Subspace::span(self.ambient, &rows)
    }

    /// Intersection through the left kernel of the stacked bases: every
    /// `(alpha, beta)` with `alpha.A = beta.B` gives the common vector `alpha.A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut stacked = self.basis_vectors();
        stacked.extend(other.basis_vectors());
        let stacked = Matrix::from_rows(self.ambient, stacked)?;
        let relations = stacked.transpose().kernel();
        let common: Vec<Vec<Rational>> = relations
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (i, ci) in c[..a].iter().enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    for (vj, bij) in v.iter_mut().zip(self.basis.row(i)) {
                        *vj += ci * bij;
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &common)
    }

    /// Canonical representative of `v` modulo this subspace: zero on every
    /// pivot column, i.e. the projection onto the complement spanned by the
    /// non-pivot coordinate vectors.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check(v.len())?;
        let mut out = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if out[c].is_zero() {
                continue;
            }
            let f = out[c].clone();
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *o -= &f * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check(other.ambient)?;
        for i in 0..self.dim() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First basis vector of `self` lying outside `other`, if any.
    pub fn witness_outside(&self, other: &Subspace) -> Result<Option<Vec<Rational>>> {
        self.check(other.ambient)?;
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            if !other.contains(row)? {
                return Ok(Some(row.to_vec()));
            }
        }
        Ok(None)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: map.cols(),
            });
        }
        let imgs: Vec<Vec<Rational>> = (0..self.dim())
            .map(|i| map.apply(self.basis.row(i)))
            .collect();
        Subspace::span(map.rows(), &imgs)
    }
}
