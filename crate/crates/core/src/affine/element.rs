use crate::exact::{Int, IntMatrix, QmodZVector};
use std::cmp::Ordering;
use std::fmt;

/// Automorphism of a torus of dimension n preserving the torsion structure:
/// a pair (s, A) with s a torsion translation (exponent vector in (Q/Z)^n)
/// and A in GL_n(Z), acting on torsion points from the right by
/// t |-> t*A + s. Composition follows the action order:
/// (s, A) * (s', A') = (s*A' + s', A*A').
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    torus_part: QmodZVector,
    matrix_part: IntMatrix,
}

impl GroupElement {
    pub fn new(torus_part: QmodZVector, matrix_part: IntMatrix) -> Self {
        assert!(matrix_part.is_square(), "matrix part must be square");
        assert_eq!(torus_part.len(), matrix_part.rows(), "dimension mismatch");
        assert!(matrix_part.is_unimodular(), "matrix part must have det ±1");
        GroupElement { torus_part, matrix_part }
    }

    pub fn from_matrix(matrix_part: IntMatrix) -> Self {
        let n = matrix_part.rows();
        GroupElement::new(QmodZVector::zero(n), matrix_part)
    }

    pub fn from_translation(torus_part: QmodZVector) -> Self {
        let n = torus_part.len();
        GroupElement::new(torus_part, IntMatrix::identity(n))
    }

    pub fn identity(n: usize) -> Self {
        GroupElement::new(QmodZVector::zero(n), IntMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.torus_part.len()
    }

    pub fn torus_part(&self) -> &QmodZVector {
        &self.torus_part
    }

    pub fn matrix_part(&self) -> &IntMatrix {
        &self.matrix_part
    }

    pub fn is_identity(&self) -> bool {
        self.torus_part.is_zero() && self.matrix_part == IntMatrix::identity(self.dim())
    }

    pub fn is_pure_matrix(&self) -> bool {
        self.torus_part.is_zero()
    }

    pub fn is_pure_translation(&self) -> bool {
        self.matrix_part == IntMatrix::identity(self.dim())
    }

    /// (s, A) * (s', A') = (s*A' + s', A*A').
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let s = self.torus_part.apply_int_matrix_row(&other.matrix_part).add(&other.torus_part);
        let a = self.matrix_part.mul(&other.matrix_part);
        GroupElement { torus_part: s, matrix_part: a }
    }

    /// (s, A)^{-1} = (-s*A^{-1}, A^{-1}).
    pub fn inverse(&self) -> GroupElement {
        let ainv = self.matrix_part.inverse_unimodular();
        let s = self.torus_part.apply_int_matrix_row(&ainv).neg();
        GroupElement { torus_part: s, matrix_part: ainv }
    }

    /// Image of a torsion point under this element: t*A + s.
    pub fn apply(&self, t: &QmodZVector) -> QmodZVector {
        assert_eq!(t.len(), self.dim(), "dimension mismatch");
        t.apply_int_matrix_row(&self.matrix_part).add(&self.torus_part)
    }

    /// x^{-1} * self * x.
    pub fn conjugate_by(&self, x: &GroupElement) -> GroupElement {
        x.inverse().mul(self).mul(x)
    }

    pub fn pow(&self, k: usize) -> GroupElement {
        let mut acc = GroupElement::identity(self.dim());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative order. Torsion translations and finite-order matrices
    /// keep this finite for every element of a closed finite group; the cap
    /// guards against accidental infinite-order input.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        for k in 1..=100_000usize {
            if acc.is_identity() {
                return k;
            }
            acc = acc.mul(self);
        }
        panic!("element order exceeds search cap; input is not torsion");
    }

    pub fn commutes_with(&self, other: &GroupElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Trace of the matrix part.
    pub fn trace(&self) -> Int {
        let mut t = Int::from(0);
        for i in 0..self.matrix_part.rows() {
            t += self.matrix_part.get(i, i);
        }
        t
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.matrix_part
            .data()
            .cmp(other.matrix_part.data())
            .then_with(|| self.torus_part.entries().cmp(other.torus_part.entries()))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={:?}, A={:?})", self.torus_part.entries(), self.matrix_part)
    }
}
