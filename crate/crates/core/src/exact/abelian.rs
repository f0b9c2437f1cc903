use super::matrix::{Int, IntMatrix};
use super::snf::smith_form;
use num::traits::{One, Zero};
use num::Integer;
use serde::Serialize;

/// Finitely generated abelian group presented as a quotient of an ambient
/// lattice Z^n by the row space of a relation matrix.
///
/// `factors[j]` is the invariant factor of coordinate j (0 denotes a free
/// summand); nonzero factors divide each other in order and unit factors are
/// stripped. `projection` maps an ambient row vector x to its coordinate
/// tuple x*P, to be read modulo the factors.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianPresentation {
    pub ambient: usize,
    pub factors: Vec<Int>,
    pub projection: IntMatrix,
}

impl AbelianPresentation {
    /// Quotient of Z^ambient by the row space of `relations`.
    pub fn from_row_relations(ambient: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.cols(), ambient, "relation width mismatch");
        if relations.rows() == 0 {
            return AbelianPresentation {
                ambient,
                factors: vec![Int::zero(); ambient],
                projection: IntMatrix::identity(ambient),
            };
        }
        let d = smith_form(relations);
        let rank = d.rank();
        let n = ambient;
        // x*V gives coordinates in which the relation lattice is diagonal.
        let mut factors = Vec::new();
        let mut kept_cols = Vec::new();
        for j in 0..n {
            let s = if j < rank { d.s.get(j, j).clone() } else { Int::zero() };
            if s.is_one() {
                continue; // trivial summand
            }
            factors.push(s);
            kept_cols.push(j);
        }
        let projection = IntMatrix::from_fn(n, kept_cols.len(), |i, j| d.v.get(i, kept_cols[j]).clone());
        AbelianPresentation { ambient, factors, projection }
    }

    /// Free presentation of Z^n (no relations).
    pub fn free(n: usize) -> Self {
        Self::from_row_relations(n, &IntMatrix::zeros(0, n))
    }

    /// Free quotient of Z^ambient read through a caller-chosen coordinate map.
    ///
    /// `projection` must be an ambient x k matrix whose columns extend to a
    /// basis of Z^ambient (equivalently, its Smith form is all units), so the
    /// coordinates are an honest basis of the free quotient.
    pub fn free_with_projection(ambient: usize, projection: IntMatrix) -> Self {
        assert_eq!(projection.rows(), ambient, "projection height mismatch");
        let k = projection.cols();
        if k > 0 {
            let d = smith_form(&projection);
            assert_eq!(d.rank(), k, "projection columns are not independent");
            assert!(
                (0..k).all(|j| d.s.get(j, j).is_one()),
                "projection columns do not extend to a basis"
            );
        }
        AbelianPresentation { ambient, factors: vec![Int::zero(); k], projection }
    }

    pub fn coordinates(&self) -> usize {
        self.factors.len()
    }

    /// Number of free summands.
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_zero()).count()
    }

    pub fn torsion_factors(&self) -> Vec<Int> {
        self.factors.iter().filter(|f| !f.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// Group order; None when infinite.
    pub fn order(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().fold(Int::one(), |a, f| a * f))
    }

    /// Canonical coordinates of an ambient vector: x*P with coordinate j
    /// reduced mod factors[j] (free coordinates unreduced).
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ambient, "ambient dimension mismatch");
        let c = self.projection.apply_row(x);
        c.into_iter()
            .zip(&self.factors)
            .map(|(v, f)| if f.is_zero() { v } else { v.mod_floor(f) })
            .collect()
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        self.reduce(x).iter().all(|v| v.is_zero())
    }

    pub fn same_class(&self, x: &[Int], y: &[Int]) -> bool {
        self.reduce(x) == self.reduce(y)
    }

    /// Human-readable structure string, e.g. "Z/2 x Z/2 x Z".
    pub fn structure(&self) -> String {
        if self.factors.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| if f.is_zero() { "Z".to_string() } else { format!("Z/{f}") })
            .collect();
        parts.join(" x ")
    }
}
