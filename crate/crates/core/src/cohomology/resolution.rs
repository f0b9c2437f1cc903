//! Free resolutions of Z over the group ring, restriction to subgroups, and
//! the comparison map into the normalized bar resolution.

use super::{same_element_order, GroupRingElem, GroupRingMatrix, MAX_RESOLUTION_ORDER};
use crate::affine::AffineGroup;
use crate::exact::{in_row_space, right_kernel, row_space_basis, Int, IntMatrix, QmodZVector};
use crate::glattice::GLattice;
use crate::{Error, Result};
use num::traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Largest number of bar-resolution basis tuples tolerated per degree.
const MAX_BAR_TUPLES: usize = 200_000;

/// Chain complex of free right Z[G]-modules F_len -> ... -> F_1 -> F_0 with
/// F_0 = Z[G]^(a_0) augmenting onto Z by summing every group coordinate.
/// Fresh builds have a_0 = 1; restriction to a subgroup multiplies every
/// rank by the coset count. `diffs[k-1]` is the differential F_k -> F_(k-1),
/// an a_(k-1) x a_k matrix acting on column coordinates by left
/// multiplication. Construction checks that consecutive differentials
/// compose to zero and that the first differential lands in the kernel of
/// the augmentation; exactness is a separate, more expensive check.
#[derive(Clone, Debug)]
pub struct Resolution {
    group: Arc<AffineGroup>,
    diffs: Vec<GroupRingMatrix>,
}

impl Resolution {
    pub fn new(group: Arc<AffineGroup>, diffs: Vec<GroupRingMatrix>) -> Result<Self> {
        if diffs.is_empty() {
            return Err(Error::BadParameters("resolution needs at least one differential".into()));
        }
        if diffs[0].rows() == 0 {
            return Err(Error::BadParameters("resolution must start at a free module".into()));
        }
        for d in &diffs {
            if !same_element_order(&group, d.group()) {
                return Err(Error::GroupMismatch);
            }
        }
        for k in 1..diffs.len() {
            if diffs[k - 1].cols() != diffs[k].rows() {
                return Err(Error::DimensionMismatch(format!(
                    "differential {} ends in rank {} but differential {} starts at rank {}",
                    k,
                    diffs[k - 1].cols(),
                    k + 1,
                    diffs[k].rows()
                )));
            }
            if !diffs[k - 1].mul(&diffs[k])?.is_zero() {
                return Err(Error::BadParameters(format!(
                    "differentials {} and {} do not compose to zero",
                    k,
                    k + 1
                )));
            }
        }
        let mut column_totals = vec![Int::zero(); diffs[0].cols()];
        for (_, j, e) in diffs[0].nonzero_entries() {
            column_totals[j] += e.augmentation();
        }
        if column_totals.iter().any(|t| !t.is_zero()) {
            return Err(Error::BadParameters(
                "first differential does not land in the kernel of the augmentation".into(),
            ));
        }
        Ok(Resolution { group, diffs })
    }

    pub fn group(&self) -> &Arc<AffineGroup> {
        &self.group
    }

    /// Number of differentials, i.e. the resolution reaches F_len.
    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    /// Free rank a_k of F_k, for k up to len.
    pub fn rank(&self, k: usize) -> usize {
        assert!(k <= self.len(), "rank degree out of range");
        if k == 0 {
            self.diffs[0].rows()
        } else {
            self.diffs[k - 1].cols()
        }
    }

    /// Differential F_k -> F_(k-1), for k in 1..=len.
    pub fn differential(&self, k: usize) -> &GroupRingMatrix {
        assert!(k >= 1 && k <= self.len(), "differential degree out of range");
        &self.diffs[k - 1]
    }

    /// Check exactness of the augmented complex at F_0..F_through by
    /// comparing kernel and image lattices of the regular representation.
    /// Needs through < len, since exactness at F_k uses the next differential.
    pub fn verify_exact(&self, through: usize) -> Result<()> {
        if through >= self.len() {
            return Err(Error::DegreeOutOfRange(through));
        }
        let n = self.group.order();
        let ones = IntMatrix::from_fn(1, self.rank(0) * n, |_, _| Int::from(1));
        for k in 0..=through {
            let bk = if k == 0 { ones.clone() } else { self.diffs[k - 1].to_regular_matrix()? };
            let next = self.diffs[k].to_regular_matrix()?;
            let kernel = kernel_lattice(&bk);
            let image = row_space_basis(&next.transpose());
            if kernel != image {
                return Err(Error::BadParameters(format!("resolution is not exact at degree {k}")));
            }
        }
        Ok(())
    }

    /// Normalized bar resolution up to F_len: F_k is free on the tuples of
    /// non-identity elements of length k.
    pub fn bar(group: &Arc<AffineGroup>, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::BadParameters("resolution needs at least one differential".into()));
        }
        let bar = BarIndex::new(group);
        if bar.tuples(len).is_none() {
            return Err(Error::BadParameters(format!(
                "bar resolution of a group of order {} is too large in degree {len}",
                group.order()
            )));
        }
        let mut diffs = Vec::with_capacity(len);
        for k in 1..=len {
            let rows = bar.tuples(k - 1).unwrap();
            let cols = bar.tuples(k).unwrap();
            let mut d = GroupRingMatrix::zeros(group.clone(), rows, cols);
            for t in 0..cols {
                for (row, g, c) in bar.boundary(k, t) {
                    d.add_to_entry(row, t, g, &c);
                }
            }
            diffs.push(d);
        }
        Resolution::new(group.clone(), diffs)
    }

    /// Resolution built degree by degree: each kernel of the regular
    /// representation is spanned by greedily chosen Z[G]-module generators,
    /// which become the columns of the next differential. Exact by
    /// construction, and much smaller than the bar resolution.
    pub fn lifted(group: &Arc<AffineGroup>, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::BadParameters("resolution needs at least one differential".into()));
        }
        let n = group.order();
        if n > MAX_RESOLUTION_ORDER {
            return Err(Error::BadParameters(format!(
                "resolution builder is capped at group order {MAX_RESOLUTION_ORDER}, got {n}"
            )));
        }
        let e = group.identity_index();
        let mut gens: Vec<usize> = Vec::new();
        for g in group.generators() {
            let idx = group.index_of(g).expect("generator outside its own group");
            if idx != e && !gens.contains(&idx) {
                gens.push(idx);
            }
        }
        if gens.is_empty() && n > 1 {
            gens = (0..n).filter(|&g| g != e).collect();
        }
        let mut d1 = GroupRingMatrix::zeros(group.clone(), 1, gens.len());
        for (j, &g) in gens.iter().enumerate() {
            d1.set(0, j, GroupRingElem::element_minus_one(g, e));
        }
        let mut diffs = vec![d1];
        for _ in 2..=len {
            let prev = diffs.last().unwrap();
            let next = lift_kernel(group, prev)?;
            diffs.push(next);
        }
        Resolution::new(group.clone(), diffs)
    }

    /// Restrict along a subgroup: each Z[G]-free module splits as a free
    /// Z[H]-module with one generator per left coset, and the differentials
    /// are rewritten in that basis. The result is again exact, so it computes
    /// the subgroup's cohomology on the nose.
    pub fn restrict_to(&self, sub: &Arc<AffineGroup>) -> Result<RestrictedResolution> {
        let n = self.group.order();
        let h_ord = sub.order();
        let mut sub_to_parent = Vec::with_capacity(h_ord);
        for el in sub.elements() {
            sub_to_parent.push(self.group.index_of(el).ok_or(Error::NotASubgroup)?);
        }
        if n % h_ord != 0 {
            return Err(Error::NotASubgroup);
        }
        let r = n / h_ord;
        // Left coset decomposition g = t_j * h, identity coset first.
        let mut coset_of: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut reps = Vec::with_capacity(r);
        let order = std::iter::once(self.group.identity_index()).chain(0..n);
        for g in order {
            if coset_of[g].is_some() {
                continue;
            }
            let j = reps.len();
            reps.push(g);
            for (h_idx, &h) in sub_to_parent.iter().enumerate() {
                coset_of[self.group.mul_index(g, h)] = Some((j, h_idx));
            }
        }
        debug_assert_eq!(reps.len(), r);
        let mut diffs = Vec::with_capacity(self.len());
        for d in &self.diffs {
            let mut out = GroupRingMatrix::zeros(sub.clone(), d.rows() * r, d.cols() * r);
            for (i, l, e) in d.nonzero_entries() {
                for (g, c) in e.terms() {
                    for (j, &t) in reps.iter().enumerate() {
                        let (jp, h) = coset_of[self.group.mul_index(g, t)].unwrap();
                        out.add_to_entry(i * r + jp, l * r + j, h, c);
                    }
                }
            }
            diffs.push(out);
        }
        let resolution = Resolution::new(sub.clone(), diffs)?;
        Ok(RestrictedResolution { parent: self.group.clone(), resolution, reps })
    }
}

/// Canonical basis of the integer kernel lattice {x : B x = 0}, as rows.
fn kernel_lattice(b: &IntMatrix) -> IntMatrix {
    let basis = right_kernel(b);
    if basis.is_empty() {
        IntMatrix::zeros(0, b.cols())
    } else {
        row_space_basis(&IntMatrix::from_rows(basis))
    }
}

/// Prime used only to rank candidate generators during kernel lifting.
/// An unlucky reduction can at worst skew the pick order, never the result.
const SCORING_PRIME: u64 = 1_000_003;

/// Row-echelon accumulator over the scoring prime, for cheap rank estimates.
#[derive(Clone)]
struct FpEchelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl FpEchelon {
    fn new(cols: usize) -> Self {
        FpEchelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = SCORING_PRIME;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc] != 0 {
                let f = p - v[pc];
                for c in pc..self.cols {
                    v[c] = ((v[c] as u128 + f as u128 * row[c] as u128) % p as u128) as u64;
                }
            }
        }
        let Some(lead) = (0..self.cols).find(|&c| v[c] != 0) else { return false };
        let inv = mod_inverse(v[lead]);
        for c in lead..self.cols {
            v[c] = ((v[c] as u128 * inv as u128) % SCORING_PRIME as u128) as u64;
        }
        self.rows.push(v);
        self.pivots.push(lead);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn mod_inverse(a: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let p = SCORING_PRIME;
    let mut base = a as u128;
    let mut exp = p - 2;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        exp >>= 1;
    }
    acc as u64
}

fn to_fp(v: &[Int]) -> Vec<u64> {
    let p = Int::from(SCORING_PRIME);
    v.iter()
        .map(|x| {
            let mut r = x % &p;
            if r < Int::zero() {
                r += &p;
            }
            u64::try_from(&r).expect("residue fits")
        })
        .collect()
}

/// One stage of the kernel-lifting construction: find Z[G]-module generators
/// of ker(prev) and return them as the columns of the next differential.
///
/// The greedy pick is scored by orbit rank modulo a prime so that a few
/// generators cover the kernel instead of one per stubborn basis row; a final
/// prune drops generators whose orbits are spanned by the others. Everything
/// that decides correctness (membership, the termination test, the prune) is
/// exact lattice arithmetic.
fn lift_kernel(group: &Arc<AffineGroup>, prev: &GroupRingMatrix) -> Result<GroupRingMatrix> {
    let n = group.order();
    let b = prev.to_regular_matrix()?;
    let kernel = kernel_lattice(&b);
    let dim = b.cols();
    // Row g of an orbit block is v * g: coordinate (i, h) of v lands at
    // (i, h g) under right translation.
    let orbit_of = |v: &[Int]| {
        let mut orbit = IntMatrix::zeros(n, dim);
        for g in 0..n {
            for i in 0..dim / n {
                for h in 0..n {
                    let target = i * n + group.mul_index(h, g);
                    let val = orbit.get(g, target) + &v[i * n + h];
                    orbit.set(g, target, val);
                }
            }
        }
        orbit
    };
    let fp_orbit_rows = |v: &[u64]| {
        let mut rows = vec![vec![0u64; dim]; n];
        for (g, row) in rows.iter_mut().enumerate() {
            for i in 0..dim / n {
                for h in 0..n {
                    let target = i * n + group.mul_index(h, g);
                    row[target] = (row[target] + v[i * n + h]) % SCORING_PRIME;
                }
            }
        }
        rows
    };
    let fp_kernel: Vec<Vec<u64>> = (0..kernel.rows()).map(|i| to_fp(kernel.row(i))).collect();
    let mut span = IntMatrix::zeros(0, dim);
    let mut chosen: Vec<(Vec<Int>, IntMatrix)> = Vec::new();
    while span != kernel {
        let mut base = FpEchelon::new(dim);
        for i in 0..span.rows() {
            base.insert(to_fp(span.row(i)));
        }
        // Highest mod-p rank gain wins; at equal gain prefer small entries.
        let mut best: Option<(usize, Int, usize)> = None;
        for i in 0..kernel.rows() {
            if in_row_space(&span, kernel.row(i)) {
                continue;
            }
            let mut trial = base.clone();
            for row in fp_orbit_rows(&fp_kernel[i]) {
                trial.insert(row);
            }
            let gain = trial.rank() - base.rank();
            let size = kernel.row(i).iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero);
            let better = match &best {
                None => true,
                Some((g, s, _)) => gain > *g || (gain == *g && size < *s),
            };
            if better {
                best = Some((gain, size, i));
            }
        }
        let (_, _, pick) = best.expect("kernel basis must leave the current span");
        let v = kernel.row(pick).to_vec();
        let orbit = orbit_of(&v);
        span = row_space_basis(&span.vstack(&orbit));
        chosen.push((v, orbit));
    }
    // Prune: drop any generator whose orbit the others already span.
    let mut keep: Vec<bool> = vec![true; chosen.len()];
    for i in (0..chosen.len()).rev() {
        if chosen.iter().zip(&keep).filter(|&(_, &k)| k).count() == 1 {
            break;
        }
        keep[i] = false;
        let mut stacked = IntMatrix::zeros(0, dim);
        for (j, (_, orbit)) in chosen.iter().enumerate() {
            if keep[j] {
                stacked = stacked.vstack(orbit);
            }
        }
        if row_space_basis(&stacked) != kernel {
            keep[i] = true;
        }
    }
    let survivors: Vec<&Vec<Int>> =
        chosen.iter().zip(&keep).filter(|&(_, &k)| k).map(|((v, _), _)| v).collect();
    let mut next = GroupRingMatrix::zeros(group.clone(), prev.cols(), survivors.len());
    for (c, v) in survivors.iter().enumerate() {
        for i in 0..prev.cols() {
            for h in 0..n {
                next.add_to_entry(i, c, h, &v[i * n + h]);
            }
        }
    }
    Ok(next)
}

/// A resolution rewritten over a subgroup, together with the left coset
/// representatives needed to transport cochains from the parent group.
#[derive(Clone, Debug)]
pub struct RestrictedResolution {
    parent: Arc<AffineGroup>,
    resolution: Resolution,
    reps: Vec<usize>,
}

impl RestrictedResolution {
    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    pub fn subgroup(&self) -> &Arc<AffineGroup> {
        self.resolution.group()
    }

    /// Parent-group element indices of the left coset representatives, in
    /// restricted-basis order.
    pub fn coset_reps(&self) -> &[usize] {
        &self.reps
    }

    /// Rewrite an integral cochain over the parent resolution in the
    /// restricted basis: block (i, j) is phi_i acted on by the j-th coset
    /// representative. `module` is the parent-group lattice.
    pub fn transport_row(&self, phi: &[Int], module: &GLattice) -> Result<Vec<Int>> {
        if !same_element_order(&self.parent, module.group()) {
            return Err(Error::GroupMismatch);
        }
        let m = module.rank();
        if m == 0 || phi.len() % m != 0 {
            return Err(Error::DimensionMismatch(format!(
                "cochain of length {} over a module of rank {m}",
                phi.len()
            )));
        }
        let blocks = phi.len() / m;
        let r = self.reps.len();
        let mut out = vec![Int::zero(); blocks * r * m];
        for i in 0..blocks {
            for (j, &t) in self.reps.iter().enumerate() {
                let moved = module.matrix(t).apply_row(&phi[i * m..(i + 1) * m]);
                out[(i * r + j) * m..(i * r + j + 1) * m].clone_from_slice(&moved);
            }
        }
        Ok(out)
    }

    /// Q/Z-valued variant of [`Self::transport_row`].
    pub fn transport_qz(&self, phi: &QmodZVector, module: &GLattice) -> Result<QmodZVector> {
        if !same_element_order(&self.parent, module.group()) {
            return Err(Error::GroupMismatch);
        }
        let m = module.rank();
        if m == 0 || phi.len() % m != 0 {
            return Err(Error::DimensionMismatch(format!(
                "cochain of length {} over a module of rank {m}",
                phi.len()
            )));
        }
        let blocks = phi.len() / m;
        let r = self.reps.len();
        let mut out = QmodZVector::zero(blocks * r * m);
        for i in 0..blocks {
            let piece = QmodZVector::from_entries((0..m).map(|a| phi.get(i * m + a)).collect());
            for (j, &t) in self.reps.iter().enumerate() {
                let moved = piece.apply_int_matrix_row(module.matrix(t));
                for a in 0..m {
                    out.set((i * r + j) * m + a, moved.get(a));
                }
            }
        }
        Ok(out)
    }
}

/// Tuple bookkeeping for the normalized bar resolution: basis elements of
/// F_k are length-k tuples of non-identity elements, indexed in mixed radix
/// with the first slot most significant.
pub(crate) struct BarIndex {
    group: Arc<AffineGroup>,
    non_identity: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl BarIndex {
    pub fn new(group: &Arc<AffineGroup>) -> Self {
        let e = group.identity_index();
        let non_identity: Vec<usize> = (0..group.order()).filter(|&g| g != e).collect();
        let mut position = vec![None; group.order()];
        for (p, &g) in non_identity.iter().enumerate() {
            position[g] = Some(p);
        }
        BarIndex { group: group.clone(), non_identity, position }
    }

    pub fn radix(&self) -> usize {
        self.non_identity.len()
    }

    /// Number of basis tuples in degree k, or None when over the cap.
    pub fn tuples(&self, k: usize) -> Option<usize> {
        let mut t = 1usize;
        for _ in 0..k {
            t = t.checked_mul(self.radix())?;
            if t > MAX_BAR_TUPLES {
                return None;
            }
        }
        Some(t)
    }

    pub fn digits(&self, k: usize, mut index: usize) -> Vec<usize> {
        let r = self.radix();
        let mut d = vec![0; k];
        for slot in (0..k).rev() {
            d[slot] = index % r;
            index /= r;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.radix() + d)
    }

    pub fn append(&self, index: usize, g: usize) -> usize {
        index * self.radix() + self.position[g].expect("identity appended to a bar tuple")
    }

    /// Boundary of the degree-k basis tuple with the given index, as terms
    /// (tuple index in degree k-1, group element, coefficient).
    pub fn boundary(&self, k: usize, index: usize) -> Vec<(usize, usize, Int)> {
        let e = self.group.identity_index();
        let d = self.digits(k, index);
        let elems: Vec<usize> = d.iter().map(|&p| self.non_identity[p]).collect();
        let mut terms = Vec::new();
        terms.push((self.index(&d[..k - 1]), elems[k - 1], Int::from(1)));
        for p in 0..k.saturating_sub(1) {
            let merged = self.group.mul_index(elems[p], elems[p + 1]);
            if merged == e {
                continue;
            }
            let mut nd = Vec::with_capacity(k - 1);
            nd.extend_from_slice(&d[..p]);
            nd.push(self.position[merged].unwrap());
            nd.extend_from_slice(&d[p + 2..]);
            let sign = if (k - 1 - p) % 2 == 0 { 1 } else { -1 };
            terms.push((self.index(&nd), e, Int::from(sign)));
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.push((self.index(&d[1..]), e, Int::from(sign)));
        terms
    }
}

/// Element of a free module over the bar resolution, stored as coefficients
/// on pairs (basis tuple index, group element index). The degree is implicit
/// and tracked by the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeChain {
    terms: BTreeMap<(usize, usize), Int>,
}

impl FreeChain {
    pub fn zero() -> Self {
        FreeChain::default()
    }

    pub fn add_term(&mut self, tuple: usize, g: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((tuple, g)).or_insert_with(Int::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(tuple, g));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Int)> {
        self.terms.iter().map(|(&(t, g), c)| (t, g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Right multiplication by a group ring element.
    fn mul_ring(&self, a: &GroupRingElem, group: &AffineGroup) -> FreeChain {
        let mut out = FreeChain::zero();
        for (t, g, c) in self.terms() {
            for (h, b) in a.terms() {
                out.add_term(t, group.mul_index(g, h), &(c * b));
            }
        }
        out
    }
}

/// Chain map tau from a resolution into the normalized bar resolution,
/// built recursively with the standard contracting homotopy
/// h(e_T * g) = e_(T|g). Pulling a bar cochain back along tau rewrites it in
/// the resolution's (much smaller) coordinates without changing its class.
pub struct BarComparison {
    group: Arc<AffineGroup>,
    bar: BarIndex,
    maps: Vec<Vec<FreeChain>>,
}

impl BarComparison {
    pub fn new(res: &Resolution, len: usize) -> Result<Self> {
        if len > res.len() {
            return Err(Error::DegreeOutOfRange(len));
        }
        if res.rank(0) != 1 {
            return Err(Error::BadParameters(
                "comparison to the bar resolution needs a rank-one start".into(),
            ));
        }
        let group = res.group().clone();
        let bar = BarIndex::new(&group);
        if bar.tuples(len).is_none() {
            return Err(Error::BadParameters(format!(
                "bar tuples of a group of order {} overflow in degree {len}",
                group.order()
            )));
        }
        let e = group.identity_index();
        let mut tau0 = FreeChain::zero();
        tau0.add_term(0, e, &Int::from(1));
        let mut maps = vec![vec![tau0]];
        for k in 1..=len {
            let d = res.differential(k);
            let mut level = Vec::with_capacity(d.cols());
            for j in 0..d.cols() {
                let mut image = FreeChain::zero();
                for i in 0..d.rows() {
                    let entry = d.entry(i, j);
                    if entry.is_zero() {
                        continue;
                    }
                    let moved = maps[k - 1][i].mul_ring(&entry, &group);
                    for (t, g, c) in moved.terms() {
                        image.add_term(t, g, c);
                    }
                }
                let lifted = homotopy(&bar, &image, e);
                if bar_boundary(&bar, &group, k, &lifted) != image {
                    return Err(Error::ConversionFailed(format!(
                        "comparison map fails to commute in degree {k}"
                    )));
                }
                level.push(lifted);
            }
            maps.push(level);
        }
        Ok(BarComparison { group, bar, maps })
    }

    /// tau_k of the j-th free generator, as a bar chain.
    pub fn image(&self, k: usize, j: usize) -> &FreeChain {
        &self.maps[k][j]
    }

    /// Number of bar basis tuples in degree k, for sizing cochain tables.
    pub fn bar_rank(&self, k: usize) -> usize {
        self.bar.tuples(k).expect("degree was sized at construction")
    }

    /// Index of the degree-k bar tuple with the given non-identity entries.
    pub fn tuple_index(&self, elems: &[usize]) -> usize {
        let digits: Vec<usize> =
            elems.iter().map(|&g| self.bar.position[g].expect("identity in a bar tuple")).collect();
        self.bar.index(&digits)
    }

    /// Pull a Q/Z-valued bar cochain back to the resolution: component j of
    /// the result is the cochain evaluated on tau_k(e_j). `values[t]` is the
    /// cochain's value row on the degree-k tuple with index t.
    pub fn pullback_qz(&self, k: usize, values: &[QmodZVector], module: &GLattice) -> Result<QmodZVector> {
        if !same_element_order(&self.group, module.group()) {
            return Err(Error::GroupMismatch);
        }
        if values.len() != self.bar_rank(k) {
            return Err(Error::DimensionMismatch(format!(
                "bar cochain table has {} rows, degree {k} needs {}",
                values.len(),
                self.bar_rank(k)
            )));
        }
        let m = module.rank();
        let blocks = self.maps[k].len();
        let mut out = QmodZVector::zero(blocks * m);
        for (j, chain) in self.maps[k].iter().enumerate() {
            let mut acc = QmodZVector::zero(m);
            for (t, g, c) in chain.terms() {
                acc = acc.add(&values[t].apply_int_matrix_row(module.matrix(g)).scale(c));
            }
            for a in 0..m {
                out.set(j * m + a, acc.get(a));
            }
        }
        Ok(out)
    }

    /// Integral variant of [`Self::pullback_qz`].
    pub fn pullback_int(&self, k: usize, values: &[Vec<Int>], module: &GLattice) -> Result<Vec<Int>> {
        if !same_element_order(&self.group, module.group()) {
            return Err(Error::GroupMismatch);
        }
        if values.len() != self.bar_rank(k) {
            return Err(Error::DimensionMismatch(format!(
                "bar cochain table has {} rows, degree {k} needs {}",
                values.len(),
                self.bar_rank(k)
            )));
        }
        let m = module.rank();
        let blocks = self.maps[k].len();
        let mut out = vec![Int::zero(); blocks * m];
        for (j, chain) in self.maps[k].iter().enumerate() {
            for (t, g, c) in chain.terms() {
                let moved = module.matrix(g).apply_row(&values[t]);
                for a in 0..m {
                    out[j * m + a] += &moved[a] * c;
                }
            }
        }
        Ok(out)
    }
}

/// Contracting homotopy of the bar resolution applied to a chain: each term
/// e_T * g with g not the identity lifts to e_(T|g).
fn homotopy(bar: &BarIndex, chain: &FreeChain, identity: usize) -> FreeChain {
    let mut out = FreeChain::zero();
    for (t, g, c) in chain.terms() {
        if g == identity {
            continue;
        }
        out.add_term(bar.append(t, g), identity, c);
    }
    out
}

/// Bar differential applied to a degree-k chain.
fn bar_boundary(bar: &BarIndex, group: &AffineGroup, k: usize, chain: &FreeChain) -> FreeChain {
    let mut out = FreeChain::zero();
    for (t, g, c) in chain.terms() {
        for (t2, u, s) in bar.boundary(k, t) {
            out.add_term(t2, group.mul_index(u, g), &(&s * c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::catalogue::{k9_family_group, k9_matrices};
    use crate::affine::{GroupElement, K9Family};
    use crate::cohomology::compute::cochain_complex;
    use crate::glattice::GLattice;

    fn matrix_group(gens: &[Vec<Vec<i64>>]) -> Arc<AffineGroup> {
        let elems = gens
            .iter()
            .map(|rows| GroupElement::from_matrix(IntMatrix::from_i64_rows(rows)))
            .collect();
        Arc::new(AffineGroup::close_default(elems).unwrap())
    }

    fn c2() -> Arc<AffineGroup> {
        matrix_group(&[vec![vec![-1]]])
    }

    fn c4() -> Arc<AffineGroup> {
        matrix_group(&[vec![vec![0, 1], vec![-1, 0]]])
    }

    fn klein() -> Arc<AffineGroup> {
        let [a, b] = k9_matrices();
        Arc::new(AffineGroup::close_default(vec![a, b]).unwrap())
    }

    fn family(f: K9Family, n: u32) -> Arc<AffineGroup> {
        Arc::new(k9_family_group(f, n).unwrap())
    }

    #[test]
    fn bar_differentials_of_an_involution_match_hand_values() {
        let g = c2();
        let e = g.identity_index();
        let s = 1 - e;
        let res = Resolution::bar(&g, 3).unwrap();
        assert_eq!(res.rank(0), 1);
        assert!((0..=3).all(|k| res.rank(k) == 1));
        // d[s] = [](s - 1), d[s|s] = [s](s + 1), d[s|s|s] = [s|s](s - 1).
        assert_eq!(res.differential(1).entry(0, 0), GroupRingElem::element_minus_one(s, e));
        assert_eq!(res.differential(2).entry(0, 0), GroupRingElem::from_terms(&[(s, 1), (e, 1)]));
        assert_eq!(res.differential(3).entry(0, 0), GroupRingElem::element_minus_one(s, e));
    }

    #[test]
    fn bar_resolutions_are_exact_for_small_groups() {
        Resolution::bar(&c2(), 4).unwrap().verify_exact(3).unwrap();
        Resolution::bar(&c4(), 3).unwrap().verify_exact(2).unwrap();
        Resolution::bar(&klein(), 3).unwrap().verify_exact(2).unwrap();
    }

    #[test]
    fn lifted_resolutions_are_exact_across_the_families() {
        let groups = vec![
            c2(),
            c4(),
            klein(),
            family(K9Family::Quaternion, 3),
            family(K9Family::Dihedral, 3),
            family(K9Family::Semidihedral, 4),
        ];
        for g in groups {
            Resolution::lifted(&g, 4).unwrap().verify_exact(3).unwrap();
        }
    }

    #[test]
    fn lifted_resolution_of_the_trivial_group_collapses() {
        let g = Arc::new(AffineGroup::trivial(2));
        let res = Resolution::lifted(&g, 3).unwrap();
        assert_eq!(res.rank(1), 0);
        assert_eq!(res.rank(3), 0);
        res.verify_exact(2).unwrap();
    }

    #[test]
    fn restricted_resolution_is_exact_with_scaled_ranks() {
        let g = family(K9Family::Quaternion, 3);
        let res = Resolution::lifted(&g, 3).unwrap();
        let center: Vec<usize> = (0..g.order())
            .filter(|&i| (0..g.order()).all(|j| g.mul_index(i, j) == g.mul_index(j, i)))
            .collect();
        assert_eq!(center.len(), 2);
        let sub = Arc::new(g.subgroup_from_indices(&center));
        let restricted = res.restrict_to(&sub).unwrap();
        let r = g.order() / sub.order();
        for k in 0..=3 {
            assert_eq!(restricted.resolution().rank(k), res.rank(k) * r);
        }
        assert_eq!(restricted.coset_reps()[0], g.identity_index());
        restricted.resolution().verify_exact(2).unwrap();
    }

    #[test]
    fn restriction_rejects_a_foreign_group() {
        let res = Resolution::lifted(&c4(), 2).unwrap();
        let err = res.restrict_to(&c2()).unwrap_err();
        assert!(matches!(err, Error::NotASubgroup));
    }

    #[test]
    fn comparison_pullback_commutes_with_the_coboundary() {
        // Naturality check: pulling back the bar coboundary of a cochain
        // equals applying the small complex's coboundary to the pullback.
        for g in [c4(), klein(), family(K9Family::Dihedral, 3)] {
            let res = Resolution::lifted(&g, 2).unwrap();
            let cmp = BarComparison::new(&res, 2).unwrap();
            let module = GLattice::cocharacter(g.clone());
            let m = module.rank();
            let cx = cochain_complex(&res, &module).unwrap();
            let e = g.identity_index();
            let nid: Vec<usize> = (0..g.order()).filter(|&i| i != e).collect();

            // Degree 0 -> 1: a single value row v; its bar coboundary on [h]
            // is v*h - v.
            let v: Vec<Int> = (0..m).map(|i| Int::from(i as i64 + 1)).collect();
            let bar1: Vec<Vec<Int>> = nid
                .iter()
                .map(|&h| {
                    let moved = module.matrix(h).apply_row(&v);
                    moved.iter().zip(&v).map(|(a, b)| a - b).collect()
                })
                .collect();
            let pulled = cmp.pullback_int(1, &bar1, &module).unwrap();
            assert_eq!(pulled, cx.map(1).apply_row(&v));

            // Degree 1 -> 2: a bar 1-cochain phi, coboundary
            // phi(a)*b - phi(ab) + phi(b), pulled back, versus T_2 applied to
            // the degree-1 pullback of phi.
            let phi: Vec<Vec<Int>> = nid
                .iter()
                .enumerate()
                .map(|(r, _)| (0..m).map(|i| Int::from(((r + 2) * (i + 1)) as i64 % 5)).collect())
                .collect();
            let value = |h: usize| -> Vec<Int> {
                if h == e {
                    vec![Int::zero(); m]
                } else {
                    phi[nid.iter().position(|&x| x == h).unwrap()].clone()
                }
            };
            let mut bar2: Vec<Vec<Int>> = Vec::new();
            for &a in &nid {
                for &b in &nid {
                    let moved = module.matrix(b).apply_row(&value(a));
                    let ab = value(g.mul_index(a, b));
                    let vb = value(b);
                    bar2.push(
                        (0..m).map(|i| &moved[i] - &ab[i] + &vb[i]).collect(),
                    );
                }
            }
            let pulled2 = cmp.pullback_int(2, &bar2, &module).unwrap();
            let pulled1 = cmp.pullback_int(1, &phi, &module).unwrap();
            assert_eq!(pulled2, cx.map(2).apply_row(&pulled1));
        }
    }

    #[test]
    fn comparison_map_exists_for_the_periodic_quaternion_complex() {
        let g = family(K9Family::Quaternion, 3);
        let x = g.index_of(&g.generators()[0]).unwrap();
        let y = g.index_of(&g.generators()[1]).unwrap();
        let res = crate::cohomology::periodic_resolution(&g, x, y, K9Family::Quaternion, 3).unwrap();
        // Construction verifies the chain-map identity in every degree.
        BarComparison::new(&res, 3).unwrap();
    }
}
