//! Linear subspaces of the ambient column space, with the operations the
//! decomposition pipeline needs: complements, containment, intersection
//! dimension and restriction of an invariant operator.

use super::{dot, FieldEntry, Matrix};
use crate::error::{Error, Result};

/// A subspace given by a linearly independent spanning set. Construction
/// reduces the spanning set to echelon form, so the stored basis is the
/// canonical row-space basis (deterministic across runs); equality is still
/// decided by mutual containment rather than by comparing representations.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
}

impl<T: FieldEntry> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::<T>::identity(ambient);
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| id.row(i).to_vec()).collect(),
        }
    }

    /// Span of arbitrary vectors; dependent input is reduced.
    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(
                    "spanning vector has wrong length".into(),
                ));
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let mut m = Matrix::from_rows(vectors.to_vec())?;
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis as the columns of an ambient x dim matrix.
    pub fn basis_matrix(&self) -> Matrix<T> {
        let mut m = Matrix::zero(self.ambient, self.dim());
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn contains_vector(&self, v: &[T]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let m = Matrix::from_rows(rows).expect("consistent ambient dimension");
        m.rank() == self.dim()
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Equality of spans by mutual containment.
    pub fn equals(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains(other) && other.contains(self)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn orthogonal_complement(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        let m = Matrix::from_rows(self.basis.clone()).expect("well-formed basis");
        let kernel = m.kernel_basis();
        Subspace {
            ambient: self.ambient,
            basis: Self::span(self.ambient, &kernel)
                .expect("kernel vectors have ambient length")
                .basis,
        }
    }

    /// Span of the union.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace sum".into()));
        }
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &vecs)
    }

    /// dim(self âˆ© other) via the kernel of [B_self | -B_other].
    pub fn intersection_dim(&self, other: &Self) -> usize {
        if self.is_zero() || other.is_zero() {
            return 0;
        }
        let k1 = self.dim();
        let k2 = other.dim();
        let mut m = Matrix::zero(self.ambient, k1 + k2);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, k1 + j)] = -x.clone();
            }
        }
        m.kernel_basis().len()
    }

    /// All pairwise dot products vanish.
    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.basis
            .iter()
            .all(|u| other.basis.iter().all(|v| dot(u, v).is_zero()))
    }

    /// True when g maps the subspace into itself; on failure returns the
    /// offending basis vector image.
    pub fn invariant_under(&self, g: &Matrix<T>) -> std::result::Result<(), Vec<T>> {
        for v in &self.basis {
            let image = g.mul_vec(v).expect("ambient dimensions agree");
            if !self.contains_vector(&image) {
                return Err(image);
            }
        }
        Ok(())
    }

    /// Matrix of g on this subspace in the stored basis, computed as
    /// (B^T B)^{-1} B^T g B; requires invariance, reported with a witness.
    pub fn restrict(&self, g: &Matrix<T>) -> Result<Matrix<T>> {
        if g.rows() != self.ambient || g.cols() != self.ambient {
            return Err(Error::DimensionMismatch("restriction of wrong-size map".into()));
        }
        if let Err(witness) = self.invariant_under(g) {
            return Err(Error::NotInvariant(format!(
                "image vector {witness:?} leaves the subspace"
            )));
        }
        let b = self.basis_matrix();
        let bt = b.transpose();
        let gram_inv = bt.mul(&b)?.inverse()?;
        gram_inv.mul(&bt)?.mul(g)?.mul(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};

    type Q = BigRational;

    fn v(vals: &[i64]) -> Vec<Q> {
        vals.iter().map(|&x| Q::from(BigInt::from(x))).collect()
    }

    fn qm(rows: usize, cols: usize, vals: &[i64]) -> Matrix<Q> {
        Matrix::new(rows, cols, v(vals)).unwrap()
    }

    #[test]
    fn complement_of_axis() {
        let s = Subspace::span(3, &[v(&[1, 0, 0])]).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 2);
        assert!(c.contains_vector(&v(&[0, 1, 0])));
        assert!(c.contains_vector(&v(&[0, 0, 1])));
        assert!(!c.contains_vector(&v(&[1, 0, 0])));
    }

    #[test]
    fn complement_of_zero_is_everything() {
        let z = Subspace::<Q>::zero(4);
        assert_eq!(z.orthogonal_complement().dim(), 4);
    }

    #[test]
    fn complement_of_diagonal() {
        let s = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 1);
        assert!(c.contains_vector(&v(&[1, -1])));
    }

    #[test]
    fn complement_is_involution() {
        let s = Subspace::span(4, &[v(&[1, 2, 0, 1]), v(&[0, 1, 1, 0])]).unwrap();
        assert!(s.orthogonal_complement().orthogonal_complement().equals(&s));
    }

    #[test]
    fn restrict_identity_and_blocks() {
        let s = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let id = Matrix::<Q>::identity(3);
        assert!(s.restrict(&id).unwrap().is_identity());

        let refl = qm(3, 3, &[-1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let line = Subspace::span(3, &[v(&[1, 0, 0])]).unwrap();
        let r = line.restrict(&refl).unwrap();
        assert_eq!(r, qm(1, 1, &[-1]));
    }

    #[test]
    fn restrict_rejects_non_invariant() {
        let rot = qm(2, 2, &[0, -1, 1, 0]);
        let line = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        assert!(matches!(line.restrict(&rot), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn intersection_dims() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersection_dim(&b), 1);
        let c = Subspace::span(3, &[v(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersection_dim(&c), 0);
    }
}
