//! Group cohomology of lattices over finite affine torus automorphism groups.
//!
//! Everything is phrased for right Z[G]-modules. A free module Z[G]^a carries
//! column coordinate vectors, and a homomorphism Z[G]^b -> Z[G]^a is an a x b
//! matrix over the group ring acting by left multiplication. Applying a
//! G-lattice entrywise to such a matrix yields the integer matrix of the
//! induced map on cochains, which acts on concatenated row vectors from the
//! right; see [`compute`].
//!
//! Three resolution constructions are provided: the normalized bar resolution
//! (canonical but exponentially large), a kernel-lifting construction that
//! produces small resolutions for any group within the order cap, and the
//! classical hand-sized periodic complexes for the quaternion, dihedral and
//! semidihedral families. They are cross-checked against each other in tests;
//! every constructed complex is verified to compose to zero before use.

pub mod compute;
pub mod periodic;
pub mod resolution;

pub use compute::{cochain_complex, unramified_classes, CochainComplex, CohomologyGroup, UnramifiedReport};
pub use periodic::periodic_resolution;
pub use resolution::{BarComparison, FreeChain, Resolution, RestrictedResolution};

use crate::affine::AffineGroup;
use crate::exact::{Int, IntMatrix};
use crate::glattice::GLattice;
use crate::{Error, Result};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Largest group order accepted by the resolution builders. Beyond this the
/// regular-representation matrices stop being cheap and the callers upstream
/// have no use for the answer anyway.
pub const MAX_RESOLUTION_ORDER: usize = 48;

/// Largest entry count allowed when a group-ring matrix is expanded to a
/// dense integer matrix.
const MAX_DENSE_ENTRIES: usize = 16_000_000;

/// Whether two groups have literally the same element list in the same order,
/// so element indices can be used interchangeably between them.
pub(crate) fn same_element_order(a: &AffineGroup, b: &AffineGroup) -> bool {
    std::ptr::eq(a, b) || a.elements() == b.elements()
}

/// Element of the integral group ring Z[G], stored sparsely as a map from
/// element index to coefficient. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<usize, Int>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        GroupRingElem { terms: BTreeMap::new() }
    }

    /// The ring element 1*g for a single group element index.
    pub fn from_element(g: usize) -> Self {
        Self::from_terms(&[(g, 1)])
    }

    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let mut e = GroupRingElem::zero();
        for &(g, c) in terms {
            e.add_term(g, &Int::from(c));
        }
        e
    }

    /// g - 1 written with the group's identity index.
    pub fn element_minus_one(g: usize, identity: usize) -> Self {
        let mut e = GroupRingElem::from_element(g);
        e.add_term(identity, &Int::from(-1));
        e
    }

    /// 1 + x + x^2 + ... + x^(count-1) as element indices under `group`.
    pub fn geometric_sum(group: &AffineGroup, x: usize, count: usize) -> Self {
        let mut e = GroupRingElem::zero();
        let mut p = group.identity_index();
        for _ in 0..count {
            e.add_term(p, &Int::from(1));
            p = group.mul_index(p, x);
        }
        e
    }

    /// Sum of all group elements (the norm element).
    pub fn norm(group: &AffineGroup) -> Self {
        let mut e = GroupRingElem::zero();
        for g in 0..group.order() {
            e.add_term(g, &Int::from(1));
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Int)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn add_term(&mut self, g: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Int::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, other: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        out
    }

    pub fn neg(&self) -> GroupRingElem {
        GroupRingElem { terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect() }
    }

    pub fn sub(&self, other: &GroupRingElem) -> GroupRingElem {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Int) -> GroupRingElem {
        if k.is_zero() {
            return GroupRingElem::zero();
        }
        GroupRingElem { terms: self.terms.iter().map(|(g, c)| (*g, c * k)).collect() }
    }

    /// Ring product under the given group's multiplication table.
    pub fn mul(&self, other: &GroupRingElem, group: &AffineGroup) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (g, a) in self.terms() {
            for (h, b) in other.terms() {
                out.add_term(group.mul_index(g, h), &(a * b));
            }
        }
        out
    }

    /// Right translate self * g.
    pub fn translate(&self, g: usize, group: &AffineGroup) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (h, c) in self.terms() {
            out.add_term(group.mul_index(h, g), c);
        }
        out
    }

    /// Sum of coefficients, the image under the augmentation Z[G] -> Z.
    pub fn augmentation(&self) -> Int {
        self.terms.values().sum()
    }

    /// Matrix of left multiplication by self on Z[G] in column coordinates
    /// indexed by group elements: (self * q)_vec = L * q_vec.
    pub fn regular_block(&self, group: &AffineGroup) -> IntMatrix {
        let n = group.order();
        let mut m = IntMatrix::zeros(n, n);
        for (g, c) in self.terms() {
            for h in 0..n {
                let k = group.mul_index(g, h);
                let v = m.get(k, h) + c;
                m.set(k, h, v);
            }
        }
        m
    }

    /// Image under a lattice action, extended linearly from group elements.
    /// The result acts on module row vectors from the right.
    pub fn action_block(&self, module: &GLattice) -> IntMatrix {
        let m = module.rank();
        let mut out = IntMatrix::zeros(m, m);
        for (g, c) in self.terms() {
            out = out.add(&module.matrix(g).scale(c));
        }
        out
    }
}

/// Matrix over Z[G] with a sparse entry grid. Row and column counts are kept
/// even when every entry is zero, so zero maps between free modules of known
/// ranks stay well formed.
#[derive(Clone, Debug)]
pub struct GroupRingMatrix {
    group: Arc<AffineGroup>,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GroupRingElem>,
}

impl GroupRingMatrix {
    pub fn zeros(group: Arc<AffineGroup>, rows: usize, cols: usize) -> Self {
        GroupRingMatrix { group, rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_rows(group: Arc<AffineGroup>, grid: Vec<Vec<GroupRingElem>>) -> Self {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let mut m = GroupRingMatrix::zeros(group, rows, cols);
        for (i, row) in grid.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged group ring matrix");
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn group(&self) -> &Arc<AffineGroup> {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupRingElem) {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        if e.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), e);
        }
    }

    pub fn add_to_entry(&mut self, i: usize, j: usize, g: usize, c: &Int) {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        let e = self.entries.entry((i, j)).or_default();
        e.add_term(g, c);
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// Entry at (i, j); zero entries are materialized on demand.
    pub fn entry(&self, i: usize, j: usize) -> GroupRingElem {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &GroupRingElem)> {
        self.entries.iter().map(|(&(i, j), e)| (i, j, e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix product over the group ring.
    pub fn mul(&self, other: &GroupRingMatrix) -> Result<GroupRingMatrix> {
        if !same_element_order(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "group ring product {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &GroupRingElem)>> = BTreeMap::new();
        for (j, k, e) in other.nonzero_entries() {
            by_row.entry(j).or_default().push((k, e));
        }
        let mut out = GroupRingMatrix::zeros(self.group.clone(), self.rows, other.cols);
        for (i, j, a) in self.nonzero_entries() {
            if let Some(row) = by_row.get(&j) {
                for &(k, b) in row {
                    let prod = a.mul(b, &self.group);
                    let sum = out.entry(i, k).add(&prod);
                    out.set(i, k, sum);
                }
            }
        }
        Ok(out)
    }

    /// Dense integer matrix of the induced map on column coordinate vectors
    /// of the free modules, blocks indexed by (free generator, group element).
    pub fn to_regular_matrix(&self) -> Result<IntMatrix> {
        let n = self.group.order();
        self.expand(n, |e| Ok(e.regular_block(&self.group)))
    }

    /// Dense integer matrix of the induced map on module-valued cochains,
    /// acting on concatenated row vectors from the right. Blocks are indexed
    /// by (free generator, module coordinate) and keep this matrix's layout.
    pub fn evaluate(&self, module: &GLattice) -> Result<IntMatrix> {
        if !same_element_order(&self.group, module.group()) {
            return Err(Error::GroupMismatch);
        }
        self.expand(module.rank(), |e| Ok(e.action_block(module)))
    }

    fn expand(&self, block: usize, f: impl Fn(&GroupRingElem) -> Result<IntMatrix>) -> Result<IntMatrix> {
        let total = self.rows * self.cols * block * block;
        if total > MAX_DENSE_ENTRIES {
            return Err(Error::BadParameters(format!(
                "dense expansion of a {}x{} group ring matrix with block size {block} needs {total} entries",
                self.rows, self.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows * block, self.cols * block);
        for (i, j, e) in self.nonzero_entries() {
            let b = f(e)?;
            for a in 0..block {
                for c in 0..block {
                    let v = b.get(a, c);
                    if !v.is_zero() {
                        out.set(i * block + a, j * block + c, v.clone());
                    }
                }
            }
        }
        Ok(out)
    }
}
