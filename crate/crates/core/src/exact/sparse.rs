use super::hnf::hermite_form;
use super::matrix::{Int, IntMatrix};
use num::traits::{Signed, Zero};
use num::Integer;
use std::collections::BTreeMap;

/// Sparse integer row vector: sorted (index, nonzero value) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Int)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec { entries: vec![(index, Int::from(1))] }
    }

    pub fn from_dense(v: &[Int]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { entries }
    }

    /// Entries must be sorted by index with no duplicates; zeros are dropped.
    pub fn from_sorted_entries(entries: Vec<(usize, Int)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries: entries.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Int> {
        let mut out = vec![Int::zero(); n];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Int)> {
        self.entries.iter()
    }

    pub fn get(&self, index: usize) -> Int {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Int::zero(),
        }
    }

    /// Smallest index with nonzero value, with that value.
    pub fn leading(&self) -> Option<(usize, &Int)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    /// self + c*other, merged in one pass.
    pub fn add_scaled(&self, other: &SparseVec, c: &Int) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() || b < other.entries.len() {
            let pick_a = match (self.entries.get(a), other.entries.get(b)) {
                (Some(x), Some(y)) => {
                    if x.0 == y.0 {
                        let v = &x.1 + c * &y.1;
                        if !v.is_zero() {
                            out.push((x.0, v));
                        }
                        a += 1;
                        b += 1;
                        continue;
                    }
                    x.0 < y.0
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if pick_a {
                out.push(self.entries[a].clone());
                a += 1;
            } else {
                out.push((other.entries[b].0, c * &other.entries[b].1));
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }
}

/// Sparse integer matrix stored by rows.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseIntMatrix {
    pub fn new(cols: usize) -> Self {
        SparseIntMatrix { cols, rows: Vec::new() }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut out = SparseIntMatrix::new(m.cols());
        for i in 0..m.rows() {
            out.push_row(SparseVec::from_dense(m.row(i)));
        }
        out
    }

    pub fn to_dense(&self) -> IntMatrix {
        let rows: Vec<Vec<Int>> = self.rows.iter().map(|r| r.to_dense(self.cols)).collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, self.cols)
        } else {
            IntMatrix::from_rows(rows)
        }
    }

    pub fn push_row(&mut self, row: SparseVec) {
        if let Some((i, _)) = row.entries.last() {
            assert!(*i < self.cols, "entry index out of range");
        }
        self.rows.push(row);
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }
}

struct EchRow {
    data: SparseVec,
    combo: Option<SparseVec>,
}

/// Integer row echelon form built by successive insertion, with every
/// elementary operation unimodular on the whole row collection. Pivot rows
/// have pairwise distinct leading columns; rows reduced to zero contribute
/// their combination vectors to an exact, saturated basis of the left kernel.
pub struct SparseEchelon {
    pivots: BTreeMap<usize, EchRow>,
    kernel: Vec<SparseVec>,
    nrows: usize,
    track_combos: bool,
}

impl SparseEchelon {
    pub fn build(mat: &SparseIntMatrix, track_combos: bool) -> Self {
        let mut ech = SparseEchelon {
            pivots: BTreeMap::new(),
            kernel: Vec::new(),
            nrows: mat.rows(),
            track_combos,
        };
        for (idx, row) in mat.rows.iter().enumerate() {
            let combo = track_combos.then(|| SparseVec::unit(idx));
            ech.insert(row.clone(), combo);
        }
        ech
    }

    fn insert(&mut self, mut data: SparseVec, mut combo: Option<SparseVec>) {
        loop {
            let Some((lead, lead_val)) = data.leading().map(|(i, v)| (i, v.clone())) else {
                if let Some(c) = combo {
                    self.kernel.push(c);
                }
                return;
            };
            match self.pivots.get_mut(&lead) {
                None => {
                    self.pivots.insert(lead, EchRow { data, combo });
                    return;
                }
                Some(p) => {
                    let p_lead = p.data.leading().expect("pivot row is nonzero").1.clone();
                    if p_lead.abs() > lead_val.abs() {
                        std::mem::swap(&mut p.data, &mut data);
                        std::mem::swap(&mut p.combo, &mut combo);
                    }
                    let p_lead = p.data.leading().expect("pivot row is nonzero").1.clone();
                    let q = -data.leading().unwrap().1.div_floor(&p_lead);
                    data = data.add_scaled(&p.data, &q);
                    if let Some(c) = combo {
                        combo = Some(c.add_scaled(p.combo.as_ref().expect("combo tracking is uniform"), &q));
                    }
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// Left-kernel basis as combination vectors over the original rows.
    /// Requires combo tracking.
    pub fn kernel_combos(&self) -> &[SparseVec] {
        assert!(self.track_combos, "kernel requires combo tracking");
        &self.kernel
    }

    /// Canonical dense kernel basis (HNF rows). Requires combo tracking.
    pub fn kernel_matrix(&self) -> IntMatrix {
        let combos = self.kernel_combos();
        if combos.is_empty() {
            return IntMatrix::zeros(0, self.nrows);
        }
        let dense = IntMatrix::from_rows(combos.iter().map(|c| c.to_dense(self.nrows)).collect());
        let (h, _) = hermite_form(&dense);
        let mut rows = Vec::new();
        for i in 0..h.rows() {
            if h.row(i).iter().any(|x| !x.is_zero()) {
                rows.push(h.row_to_vec(i));
            }
        }
        if rows.is_empty() {
            IntMatrix::zeros(0, self.nrows)
        } else {
            IntMatrix::from_rows(rows)
        }
    }

    /// Remainder of z after reduction against the pivot rows.
    pub fn reduce(&self, z: &SparseVec) -> SparseVec {
        self.reduce_inner(z).0
    }

    /// Exact membership of z in the row space (as a lattice).
    pub fn contains(&self, z: &SparseVec) -> bool {
        self.reduce_inner(z).0.is_zero()
    }

    /// If z lies in the row space, a combination vector c with c*rows = z.
    /// Requires combo tracking.
    pub fn express(&self, z: &SparseVec) -> Option<SparseVec> {
        assert!(self.track_combos, "express requires combo tracking");
        let (rem, combo) = self.reduce_inner(z);
        rem.is_zero().then(|| combo.expect("tracking enabled").neg())
    }

    fn reduce_inner(&self, z: &SparseVec) -> (SparseVec, Option<SparseVec>) {
        let mut z = z.clone();
        let mut combo = self.track_combos.then(SparseVec::new);
        loop {
            let Some((lead, lead_val)) = z.leading().map(|(i, v)| (i, v.clone())) else {
                return (z, combo);
            };
            let Some(p) = self.pivots.get(&lead) else {
                return (z, combo);
            };
            let p_lead = p.data.leading().expect("pivot row is nonzero").1;
            // Any row-space vector leading at this column has a coefficient
            // divisible by the pivot's; a nonzero remainder proves exclusion.
            let (q, r) = lead_val.div_rem(p_lead);
            if !r.is_zero() {
                return (z, combo);
            }
            let q = -q;
            z = z.add_scaled(&p.data, &q);
            if let Some(c) = combo {
                combo = Some(c.add_scaled(p.combo.as_ref().expect("combo tracking is uniform"), &q));
            }
        }
    }
}

/// Rank of a sparse integer matrix.
pub fn sparse_rank(mat: &SparseIntMatrix) -> usize {
    SparseEchelon::build(mat, false).rank()
}

/// Canonical basis (HNF rows) of {x : x*mat = 0}.
pub fn sparse_left_kernel(mat: &SparseIntMatrix) -> IntMatrix {
    SparseEchelon::build(mat, true).kernel_matrix()
}
