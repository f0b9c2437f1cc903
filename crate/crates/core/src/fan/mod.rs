//! Complete regular fans and fixed-point tests for affine torus actions.
//!
//! A fan is stored as its primitive ray generators together with every cone
//! as a sorted list of ray indices, faces and the origin included. Maximal
//! cones must be simplicial. Smoothness and completeness are decided
//! exactly; completeness by two independent algorithms (combinatorial
//! facet-pairing and geometric wall-crossing with point-location probes)
//! that must agree.
//!
//! Fixed-point questions for an affine subgroup are answered orbit by
//! orbit: a cone stabilized by the subgroup induces an affine action on the
//! orbit torus of the quotient lattice, and the translation part either is
//! or is not a coboundary mod 1. Condition (A) quantifies this over all
//! abelian subgroups.

pub mod model;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::traits::{One, Zero};
use num::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{subgroups::abelian_subgroups, AffineGroup};
use crate::exact::{smith_form, solve_mod1, Int, IntMatrix, QmodZVector};
use crate::glattice::GLattice;
use crate::{Error, Result};

/// A rational polyhedral fan with simplicial maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    n: usize,
    rays: Vec<Vec<Int>>,
    /// Every cone of the fan as a sorted ray-index list, faces and the
    /// origin (empty list) included.
    cones: Vec<Vec<usize>>,
}

fn gcd_of(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |a, x| a.gcd(x))
}

fn is_primitive(v: &[Int]) -> bool {
    gcd_of(v) == Int::from(1)
}

fn iv(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// All k-element subsets of {0, .., n-1} in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        if k == 0 {
            return out;
        }
        let mut i = k;
        loop {
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// Exact membership of `x` in the simplicial cone spanned by `rays`.
///
/// Returns `None` when `x` is outside the cone; otherwise the positions of
/// the rays carrying a strictly positive coefficient in the (unique)
/// nonnegative combination.
fn cone_membership(rays: &[Vec<Int>], x: &[Int]) -> Option<Vec<usize>> {
    let k = rays.len();
    let n = x.len();
    if k == 0 {
        return if x.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let r = IntMatrix::from_rows(rays.to_vec());
    // Pick k independent columns; simplicial cones guarantee one exists.
    let mut chosen: Option<(Vec<usize>, Int)> = None;
    for cols in combinations(n, k) {
        let sub = IntMatrix::from_fn(k, k, |i, j| r.get(i, cols[j]).clone());
        let d = sub.det();
        if !d.is_zero() {
            chosen = Some((cols, d));
            break;
        }
    }
    let (cols, d) = chosen.expect("simplicial cone has full row rank");
    // Cramer numerators of the coefficient vector c with c * R = x.
    let mut nums = Vec::with_capacity(k);
    for i in 0..k {
        let sub = IntMatrix::from_fn(k, k, |p, j| {
            if p == i { x[cols[j]].clone() } else { rays[p][cols[j]].clone() }
        });
        nums.push(sub.det());
    }
    // Verify sum_i (num_i / d) * ray_i = x, i.e. sum num_i * ray_i = d * x;
    // failure means x is outside the span.
    for j in 0..n {
        let lhs: Int = (0..k).map(|i| &nums[i] * &rays[i][j]).sum();
        if lhs != &d * &x[j] {
            return None;
        }
    }
    let mut support = Vec::new();
    for (i, num) in nums.iter().enumerate() {
        let s = num * &d;
        if s < Int::zero() {
            return None;
        }
        if s > Int::zero() {
            support.push(i);
        }
    }
    Some(support)
}

impl Fan {
    /// Builds a fan from its maximal cones, closing under faces.
    pub fn from_max_cones(
        n: usize,
        rays: Vec<Vec<Int>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan> {
        for (i, ray) in rays.iter().enumerate() {
            if ray.len() != n {
                return Err(Error::MalformedFan(format!("ray {i} has wrong dimension")));
            }
            if ray.iter().all(|c| c.is_zero()) {
                return Err(Error::MalformedFan(format!("ray {i} is zero")));
            }
            if !is_primitive(ray) {
                return Err(Error::MalformedFan(format!("ray {i} is not primitive")));
            }
            for prev in rays.iter().take(i) {
                if prev == ray {
                    return Err(Error::MalformedFan(format!("ray {i} repeats an earlier ray")));
                }
            }
        }
        let mut used = vec![false; rays.len()];
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for cone in &max_cones {
            let mut c = cone.clone();
            c.sort_unstable();
            c.dedup();
            if c.len() != cone.len() {
                return Err(Error::MalformedFan("cone repeats a ray index".into()));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::MalformedFan(format!("cone references missing ray {bad}")));
            }
            if c.len() > n {
                return Err(Error::MalformedFan("cone has more rays than the dimension".into()));
            }
            let mat = IntMatrix::from_rows(c.iter().map(|&i| rays[i].clone()).collect());
            if c.len() > 0 && smith_form(&mat).rank() != c.len() {
                return Err(Error::MalformedFan("maximal cone is not simplicial".into()));
            }
            for &i in &c {
                used[i] = true;
            }
            // Simplicial: every subset of the rays is a face.
            let k = c.len();
            for mask in 0..(1usize << k) {
                let face: Vec<usize> =
                    (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| c[b]).collect();
                faces.insert(face);
            }
        }
        if max_cones.is_empty() {
            faces.insert(Vec::new());
        }
        if let Some(unused) = used.iter().position(|&u| !u) {
            return Err(Error::MalformedFan(format!("ray {unused} lies in no cone")));
        }
        let mut cones: Vec<Vec<usize>> = faces.into_iter().collect();
        cones.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
        Ok(Fan { n, rays, cones })
    }

    /// The fan of a point (rank 0).
    pub fn point() -> Fan {
        Fan { n: 0, rays: Vec::new(), cones: vec![Vec::new()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// Every cone, faces and origin included.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// Cones not contained in any other cone.
    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        let sets: Vec<BTreeSet<usize>> =
            self.cones.iter().map(|c| c.iter().copied().collect()).collect();
        self.cones
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                !sets.iter().enumerate().any(|(j, s)| j != *i && sets[*i].is_subset(s) && sets[*i] != *s)
            })
            .map(|(_, c)| c.clone())
            .collect()
    }

    /// Number of cones of each dimension, `counts[d]` = number of d-cones.
    pub fn cone_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n + 1];
        for c in &self.cones {
            counts[c.len()] += 1;
        }
        counts
    }

    fn ray_matrix(&self, cone: &[usize]) -> IntMatrix {
        if cone.is_empty() {
            return IntMatrix::zeros(0, self.n);
        }
        IntMatrix::from_rows(cone.iter().map(|&i| self.rays[i].clone()).collect())
    }

    fn cone_rays(&self, cone: &[usize]) -> Vec<Vec<Int>> {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// True iff every maximal cone's rays extend to a basis of the lattice.
    pub fn is_smooth(&self) -> bool {
        self.maximal_cones().iter().all(|c| {
            if c.is_empty() {
                return true;
            }
            let d = smith_form(&self.ray_matrix(c));
            d.rank() == c.len() && (0..c.len()).all(|i| d.s.get(i, i).is_one())
        })
    }

    /// Completeness by two independent algorithms; errors when the fan is
    /// malformed or the algorithms disagree.
    pub fn is_complete(&self) -> Result<bool> {
        let a = self.complete_combinatorial();
        let b = self.complete_geometric()?;
        if a != b {
            return Err(Error::MalformedFan(
                "completeness checks disagree; the cone system is inconsistent".into(),
            ));
        }
        Ok(a)
    }

    /// Pure dimension, every facet shared by exactly two maximal cones, and
    /// a connected dual graph.
    fn complete_combinatorial(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let max = self.maximal_cones();
        if max.is_empty() || max.iter().any(|c| c.len() != self.n) {
            return false;
        }
        let mut facet_count: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in max.iter().enumerate() {
            for drop in 0..c.len() {
                let facet: Vec<usize> =
                    c.iter().enumerate().filter(|(p, _)| *p != drop).map(|(_, &r)| r).collect();
                facet_count.entry(facet).or_default().push(ci);
            }
        }
        if facet_count.values().any(|v| v.len() != 2) {
            return false;
        }
        // Dual graph connectivity.
        let mut adj = vec![Vec::new(); max.len()];
        for pair in facet_count.values() {
            adj[pair[0]].push(pair[1]);
            adj[pair[1]].push(pair[0]);
        }
        let mut seen = vec![false; max.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Exact wall-crossing: every facet of a maximal cone has exactly one
    /// partner cone strictly on the other side of the facet's hyperplane,
    /// plus point-location probes for support covering and interior
    /// uniqueness.
    fn complete_geometric(&self) -> Result<bool> {
        if self.n == 0 {
            return Ok(true);
        }
        let max = self.maximal_cones();
        if max.is_empty() || max.iter().any(|c| c.len() != self.n) {
            return Ok(false);
        }
        if self.n == 1 {
            let one = iv(&[1]);
            let minus = iv(&[-1]);
            return Ok(self.rays.contains(&one) && self.rays.contains(&minus));
        }
        for (ci, c) in max.iter().enumerate() {
            for drop in 0..c.len() {
                let facet: Vec<usize> =
                    c.iter().enumerate().filter(|(p, _)| *p != drop).map(|(_, &r)| r).collect();
                let own_ray = c[drop];
                // Normal of the facet hyperplane, oriented toward own_ray.
                let fm = self.ray_matrix(&facet);
                let kernel = crate::exact::right_kernel(&fm);
                if kernel.len() != 1 {
                    return Err(Error::MalformedFan("facet normal is not unique".into()));
                }
                let mut ell = kernel.into_iter().next().unwrap();
                let side = |ray: &[Int], ell: &[Int]| -> Int {
                    ray.iter().zip(ell).map(|(a, b)| a * b).sum()
                };
                let d = side(&self.rays[own_ray], &ell);
                if d.is_zero() {
                    return Err(Error::MalformedFan("maximal cone degenerate at a facet".into()));
                }
                if d < Int::zero() {
                    for e in ell.iter_mut() {
                        *e = -e.clone();
                    }
                }
                let facet_set: BTreeSet<usize> = facet.iter().copied().collect();
                let mut partners = 0usize;
                for (cj, other) in max.iter().enumerate() {
                    if cj == ci {
                        continue;
                    }
                    let oset: BTreeSet<usize> = other.iter().copied().collect();
                    if !facet_set.is_subset(&oset) {
                        continue;
                    }
                    let extra: Vec<usize> =
                        other.iter().copied().filter(|r| !facet_set.contains(r)).collect();
                    if extra.len() != 1 {
                        return Err(Error::MalformedFan("facet shared with a larger cone".into()));
                    }
                    let s = side(&self.rays[extra[0]], &ell);
                    if s.is_zero() {
                        return Err(Error::MalformedFan("adjacent cone degenerate at a facet".into()));
                    }
                    if s > Int::zero() {
                        return Err(Error::MalformedFan(
                            "two maximal cones overlap across a facet".into(),
                        ));
                    }
                    partners += 1;
                }
                match partners {
                    0 => return Ok(false),
                    1 => {}
                    _ => {
                        return Err(Error::MalformedFan(
                            "facet shared by more than two maximal cones".into(),
                        ))
                    }
                }
            }
        }
        // Interior uniqueness: each maximal cone's barycenter lies in the
        // relative interior of exactly one maximal cone.
        for c in &max {
            let bary: Vec<Int> = (0..self.n)
                .map(|j| c.iter().map(|&i| self.rays[i][j].clone()).sum())
                .collect();
            let mut interior_hits = 0usize;
            for other in &max {
                if let Some(support) = cone_membership(&self.cone_rays(other), &bary) {
                    if support.len() == other.len() {
                        interior_hits += 1;
                    }
                }
            }
            if interior_hits != 1 {
                return Err(Error::MalformedFan("maximal cones overlap".into()));
            }
        }
        // Support covering probes on the unit grid.
        let mut probe = vec![-1i64; self.n];
        loop {
            if probe.iter().any(|&x| x != 0) {
                let x = iv(&probe);
                if !max.iter().any(|c| cone_membership(&self.cone_rays(c), &x).is_some()) {
                    return Ok(false);
                }
            }
            let mut i = 0;
            loop {
                if i == self.n {
                    return Ok(true);
                }
                if probe[i] < 1 {
                    probe[i] += 1;
                    break;
                }
                probe[i] = -1;
                i += 1;
            }
        }
    }

    /// Per-element ray permutations under the group's matrix parts;
    /// `perm[e][i]` is the index of `rays[i] * A_e`. Errors when the ray set
    /// or the cone set is not preserved.
    pub fn ray_permutations(&self, group: &AffineGroup) -> Result<Vec<Vec<usize>>> {
        if group.dim() != self.n {
            return Err(Error::BadParameters(format!(
                "group dimension {} does not match fan dimension {}",
                group.dim(),
                self.n
            )));
        }
        let lookup: BTreeMap<&[Int], usize> =
            self.rays.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
        let cone_set: BTreeSet<Vec<usize>> = self.cones.iter().cloned().collect();
        let mut perms = Vec::with_capacity(group.order());
        for e in group.elements() {
            let a = e.matrix_part();
            let mut perm = Vec::with_capacity(self.rays.len());
            for ray in &self.rays {
                let img = a.apply_row(ray);
                match lookup.get(img.as_slice()) {
                    Some(&j) => perm.push(j),
                    None => return Err(Error::FanNotInvariant),
                }
            }
            for cone in &self.cones {
                let mut img: Vec<usize> = cone.iter().map(|&i| perm[i]).collect();
                img.sort_unstable();
                if !cone_set.contains(&img) {
                    return Err(Error::FanNotInvariant);
                }
            }
            perms.push(perm);
        }
        Ok(perms)
    }

    pub fn is_invariant(&self, group: &AffineGroup) -> bool {
        self.ray_permutations(group).is_ok()
    }

    /// The free module on the rays with the induced permutation action.
    pub fn pl_module(&self, group: Arc<AffineGroup>) -> Result<GLattice> {
        let perms = self.ray_permutations(&group)?;
        let r = self.rays.len();
        let mats = perms
            .iter()
            .map(|p| {
                IntMatrix::from_fn(r, r, |i, j| if p[i] == j { Int::from(1) } else { Int::zero() })
            })
            .collect();
        GLattice::from_element_action(group, mats)
    }

    /// Stellar subdivision at a primitive ray inside the support.
    ///
    /// Cones whose support misses the ray are kept; each maximal cone
    /// containing it is replaced by the cones obtained by swapping the new
    /// ray for one ray of the positive support. Subdividing at an existing
    /// ray returns the fan unchanged.
    pub fn star_subdivide(&self, ray: &[Int]) -> Result<Fan> {
        if ray.len() != self.n {
            return Err(Error::BadParameters("subdivision ray has wrong dimension".into()));
        }
        if ray.iter().all(|c| c.is_zero()) || !is_primitive(ray) {
            return Err(Error::BadParameters("subdivision ray must be primitive".into()));
        }
        if self.rays.iter().any(|r| r.as_slice() == ray) {
            return Ok(self.clone());
        }
        let max = self.maximal_cones();
        let mut hit_any = false;
        let new_index = self.rays.len();
        let mut new_max: Vec<Vec<usize>> = Vec::new();
        for c in &max {
            match cone_membership(&self.cone_rays(c), ray) {
                Some(support) => {
                    hit_any = true;
                    for &s in &support {
                        let mut replaced: Vec<usize> = c
                            .iter()
                            .enumerate()
                            .filter(|(p, _)| *p != s)
                            .map(|(_, &r)| r)
                            .collect();
                        replaced.push(new_index);
                        replaced.sort_unstable();
                        new_max.push(replaced);
                    }
                }
                None => new_max.push(c.clone()),
            }
        }
        if !hit_any {
            return Err(Error::RayOutsideSupport);
        }
        new_max.sort();
        new_max.dedup();
        let mut rays = self.rays.clone();
        rays.push(ray.to_vec());
        Fan::from_max_cones(self.n, rays, new_max)
    }

    /// Index of a listed cone matching the given sorted ray-index list.
    pub fn find_cone(&self, cone: &[usize]) -> Option<usize> {
        let mut c = cone.to_vec();
        c.sort_unstable();
        self.cones.iter().position(|x| *x == c)
    }

    /// Quotient of the fan by a smooth cone stabilized by the group.
    ///
    /// Returns the induced fan in the quotient lattice, the projection and a
    /// section of it, and the induced matrix and translation action of every
    /// group element on the quotient torus.
    pub fn quotient_fan(&self, sigma: &[usize], group: &AffineGroup) -> Result<FanQuotient> {
        let sigma_idx =
            self.find_cone(sigma).ok_or_else(|| Error::BadParameters("cone not in fan".into()))?;
        let sigma = self.cones[sigma_idx].clone();
        if group.dim() != self.n {
            return Err(Error::BadParameters("group dimension mismatch".into()));
        }
        let sigma_rays: BTreeSet<Vec<Int>> = sigma.iter().map(|&i| self.rays[i].clone()).collect();
        for e in group.elements() {
            let image: BTreeSet<Vec<Int>> =
                sigma.iter().map(|&i| e.matrix_part().apply_row(&self.rays[i])).collect();
            if image != sigma_rays {
                return Err(Error::ConeNotStabilized);
            }
        }
        let k = sigma.len();
        let m = self.n - k;
        let (projection, section) = if k == 0 {
            (IntMatrix::identity(self.n), IntMatrix::identity(self.n))
        } else {
            let d = smith_form(&self.ray_matrix(&sigma));
            if d.rank() != k || (0..k).any(|i| !d.s.get(i, i).is_one()) {
                return Err(Error::MalformedFan("quotient cone is not smooth".into()));
            }
            let v_inv = d.v.inverse_unimodular();
            let projection = IntMatrix::from_fn(self.n, m, |i, j| d.v.get(i, k + j).clone());
            let section = IntMatrix::from_fn(m, self.n, |i, j| v_inv.get(k + i, j).clone());
            (projection, section)
        };
        let mut induced = Vec::with_capacity(group.order());
        let mut translations = Vec::with_capacity(group.order());
        for e in group.elements() {
            let b = section.mul(e.matrix_part()).mul(&projection);
            if e.matrix_part().mul(&projection) != projection.mul(&b) {
                return Err(Error::ConeNotStabilized);
            }
            induced.push(b);
            translations.push(e.torus_part().apply_int_matrix_row(&projection));
        }
        // Image cones of the cones containing sigma.
        let sigma_set: BTreeSet<usize> = sigma.iter().copied().collect();
        let mut new_rays: Vec<Vec<Int>> = Vec::new();
        let mut new_max: Vec<Vec<usize>> = Vec::new();
        for c in self.maximal_cones() {
            let cset: BTreeSet<usize> = c.iter().copied().collect();
            if !sigma_set.is_subset(&cset) {
                continue;
            }
            let mut img = Vec::new();
            for &i in c.iter().filter(|i| !sigma_set.contains(i)) {
                let w = projection.apply_row(&self.rays[i]);
                let g = gcd_of(&w);
                let w: Vec<Int> = w.iter().map(|x| x / &g).collect();
                let pos = match new_rays.iter().position(|r| *r == w) {
                    Some(p) => p,
                    None => {
                        new_rays.push(w);
                        new_rays.len() - 1
                    }
                };
                img.push(pos);
            }
            img.sort_unstable();
            new_max.push(img);
        }
        new_max.sort();
        new_max.dedup();
        let fan = if m == 0 {
            Fan::point()
        } else {
            Fan::from_max_cones(m, new_rays, new_max)?
        };
        Ok(FanQuotient { fan, projection, section, induced, translations })
    }

    /// Whether the affine subgroup has a fixed point on the orbit torus of
    /// the given cone. The cone must be stabilized by every element.
    pub fn orbit_fixed_point(&self, subgroup: &AffineGroup, sigma: &[usize]) -> Result<bool> {
        let q = self.quotient_fan(sigma, subgroup)?;
        let m = q.projection.cols();
        if m == 0 {
            return Ok(true);
        }
        // Stack u * (B_e - I) = -s_e over all elements and solve mod 1.
        let mut blocks: Vec<IntMatrix> = Vec::new();
        let mut rhs = Vec::new();
        for (b, s) in q.induced.iter().zip(&q.translations) {
            blocks.push(b.sub(&IntMatrix::identity(m)));
            for i in 0..m {
                rhs.push(s.get(i).neg());
            }
        }
        let mut stacked = blocks.remove(0);
        for b in blocks {
            stacked = stacked.hstack(&b);
        }
        let rhs = QmodZVector::from_entries(rhs);
        Ok(solve_mod1(&stacked.transpose(), &rhs).is_some())
    }

    /// Whether the affine subgroup fixes a point anywhere on the toric
    /// variety: some stabilized cone's orbit carries a fixed point.
    pub fn has_fixed_point(&self, subgroup: &AffineGroup) -> Result<bool> {
        let perms = self.ray_permutations(subgroup)?;
        for cone in &self.cones {
            let stabilized = perms.iter().all(|p| {
                let mut img: Vec<usize> = cone.iter().map(|&i| p[i]).collect();
                img.sort_unstable();
                img == *cone
            });
            if stabilized && self.orbit_fixed_point(subgroup, cone)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Condition (A): every abelian subgroup fixes a point. Returns the
    /// first failing abelian subgroup (by element indices) as witness.
    pub fn condition_a(&self, group: &AffineGroup) -> Result<ConditionA> {
        self.ray_permutations(group)?;
        if !self.is_smooth() {
            return Err(Error::MalformedFan("fixed-point tests require a smooth fan".into()));
        }
        let subs = abelian_subgroups(group);
        let witness = subs
            .par_iter()
            .find_first(|indices| {
                let sub = group.subgroup_from_indices(indices);
                !self
                    .has_fixed_point(&sub)
                    .expect("subgroup of an invariant group keeps the fan invariant")
            })
            .cloned();
        Ok(ConditionA { holds: witness.is_none(), witness })
    }

    /// Canonical text form: header "n <dim>", "ray ..." lines, "cone ..."
    /// lines for the maximal cones with 0-based ray indices.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for r in &self.rays {
            let coords: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("ray {}\n", coords.join(" ")));
        }
        for c in self.maximal_cones() {
            if c.is_empty() {
                out.push_str("cone\n");
            } else {
                let idx: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("cone {}\n", idx.join(" ")));
            }
        }
        out
    }

    /// Parses the text form produced by [`Fan::to_text`].
    pub fn from_text(text: &str) -> Result<Fan> {
        let mut n: Option<usize> = None;
        let mut rays: Vec<Vec<Int>> = Vec::new();
        let mut max_cones: Vec<Vec<usize>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            let rest: Vec<&str> = parts.collect();
            match head {
                "n" => {
                    if rest.len() != 1 {
                        return Err(Error::Parse(format!("line {}: bad header", lineno + 1)));
                    }
                    n = Some(
                        rest[0]
                            .parse()
                            .map_err(|_| Error::Parse(format!("line {}: bad dimension", lineno + 1)))?,
                    );
                }
                "ray" => {
                    let mut v = Vec::new();
                    for tok in &rest {
                        v.push(tok.parse::<Int>().map_err(|_| {
                            Error::Parse(format!("line {}: bad ray coordinate", lineno + 1))
                        })?);
                    }
                    rays.push(v);
                }
                "cone" => {
                    let mut c = Vec::new();
                    for tok in &rest {
                        c.push(tok.parse::<usize>().map_err(|_| {
                            Error::Parse(format!("line {}: bad cone index", lineno + 1))
                        })?);
                    }
                    max_cones.push(c);
                }
                other => {
                    return Err(Error::Parse(format!("line {}: unknown directive {other}", lineno + 1)))
                }
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing 'n' header".into()))?;
        Fan::from_max_cones(n, rays, max_cones)
    }
}

/// Result of quotienting a fan by a stabilized smooth cone.
#[derive(Clone, Debug)]
pub struct FanQuotient {
    pub fan: Fan,
    /// n x m matrix; a row vector x of the ambient lattice maps to x * projection.
    pub projection: IntMatrix,
    /// m x n matrix with section * projection = I.
    pub section: IntMatrix,
    /// Induced matrix action per group element, aligned with `elements()`.
    pub induced: Vec<IntMatrix>,
    /// Induced translation per group element on the quotient torus.
    pub translations: Vec<QmodZVector>,
}

/// Verdict of the all-abelian-subgroups fixed point test.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionA {
    pub holds: bool,
    /// Element indices of the first abelian subgroup without fixed points.
    pub witness: Option<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::model::{build_model, model_group, ModelName};
    use super::*;
    use crate::affine::{catalogue, GroupElement};
    use num::integer::lcm;
    use num::ToPrimitive;

    fn f(n: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
        let rays: Vec<Vec<Int>> = rays.iter().map(|r| iv(r)).collect();
        let cones: Vec<Vec<usize>> = cones.iter().map(|c| c.to_vec()).collect();
        Fan::from_max_cones(n, rays, cones).expect("test fan is well formed")
    }

    fn grp(gens: Vec<GroupElement>) -> AffineGroup {
        AffineGroup::close_default(gens).expect("test group closes")
    }

    fn me(rows: &[&[i64]]) -> GroupElement {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        GroupElement::from_matrix(IntMatrix::from_i64_rows(&rows))
    }

    fn ae(torus: &[(i64, i64)], rows: &[&[i64]]) -> GroupElement {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        GroupElement::new(
            QmodZVector::from_fractions(torus),
            IntMatrix::from_i64_rows(&rows),
        )
    }

    fn p3() -> Fan {
        f(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        )
    }

    /// Exhaustive search over torsion points of denominator dividing
    /// 2 * |A| * (translation denominator), the oracle bound for
    /// orbit_fixed_point.
    fn brute_orbit_fixed_point(fan: &Fan, sub: &AffineGroup, sigma: &[usize]) -> bool {
        let q = fan.quotient_fan(sigma, sub).expect("stabilized cone");
        let m = q.projection.cols();
        if m == 0 {
            return true;
        }
        let mut den: i64 = 1;
        for t in &q.translations {
            den = lcm(den, t.common_denominator().to_i64().expect("small denominator"));
        }
        let bound = 2 * sub.order() as i64 * den;
        let mut c = vec![0i64; m];
        loop {
            let frs: Vec<(i64, i64)> = c.iter().map(|&x| (x, bound)).collect();
            let u = QmodZVector::from_fractions(&frs);
            let fixed = q
                .induced
                .iter()
                .zip(&q.translations)
                .all(|(b, s)| u.apply_int_matrix_row(b).add(s) == u);
            if fixed {
                return true;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return false;
                }
                c[i] += 1;
                if c[i] < bound {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn projective_space_fan_is_smooth_and_complete() {
        let fan = p3();
        assert!(fan.is_smooth());
        assert!(fan.is_complete().unwrap());
        assert_eq!(fan.cone_counts(), vec![1, 4, 6, 4]);
    }

    #[test]
    fn single_octant_is_incomplete() {
        let fan = f(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2]]);
        assert!(fan.is_smooth());
        assert!(!fan.is_complete().unwrap());
    }

    #[test]
    fn overlapping_cone_pair_is_not_complete() {
        let fan = f(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]);
        assert!(!fan.is_complete().unwrap());
    }

    #[test]
    fn nonsimplicial_cone_is_rejected() {
        let rays: Vec<Vec<Int>> = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 0])];
        let err = Fan::from_max_cones(3, rays, vec![vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, Error::MalformedFan(_)));
    }

    #[test]
    fn imprimitive_and_duplicate_rays_are_rejected() {
        let err = Fan::from_max_cones(1, vec![iv(&[2])], vec![vec![0]]).unwrap_err();
        assert!(matches!(err, Error::MalformedFan(_)));
        let err =
            Fan::from_max_cones(2, vec![iv(&[1, 0]), iv(&[1, 0])], vec![vec![0], vec![1]])
                .unwrap_err();
        assert!(matches!(err, Error::MalformedFan(_)));
    }

    #[test]
    fn plane_blowup_adds_one_cone() {
        let p2 = f(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let blown = p2.star_subdivide(&iv(&[1, 1])).unwrap();
        assert_eq!(blown.maximal_cones().len(), 4);
        assert!(blown.is_smooth());
        assert!(blown.is_complete().unwrap());
    }

    #[test]
    fn four_point_blowup_of_projective_space_has_twelve_cones() {
        let mut fan = p3();
        for bary in [[1, 1, 1], [0, 0, -1], [0, -1, 0], [-1, 0, 0]] {
            fan = fan.star_subdivide(&iv(&bary)).unwrap();
        }
        assert_eq!(fan.maximal_cones().len(), 12);
        assert!(fan.is_smooth());
        assert!(fan.is_complete().unwrap());
    }

    #[test]
    fn subdividing_outside_the_support_fails() {
        let half = f(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]);
        let err = half.star_subdivide(&iv(&[-1, 0])).unwrap_err();
        assert!(matches!(err, Error::RayOutsideSupport));
    }

    #[test]
    fn subdividing_at_an_existing_ray_is_identity() {
        let fan = p3();
        assert_eq!(fan.star_subdivide(&iv(&[1, 0, 0])).unwrap(), fan);
    }

    #[test]
    fn text_roundtrip_preserves_the_fan() {
        let fan = build_model(ModelName::S).fan().clone();
        let parsed = Fan::from_text(&fan.to_text()).unwrap();
        assert_eq!(parsed, fan);
        assert!(Fan::from_text("ray 1 0\n").is_err());
        assert!(Fan::from_text("n x\n").is_err());
    }

    #[test]
    fn coordinate_swap_preserves_the_simplex_fan() {
        let fan = p3();
        let swap = grp(vec![me(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])]);
        let perms = fan.ray_permutations(&swap).unwrap();
        assert_eq!(perms.len(), 2);
        assert!(fan.is_invariant(&swap));
        let reflect = grp(vec![me(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]])]);
        assert!(matches!(fan.ray_permutations(&reflect).unwrap_err(), Error::FanNotInvariant));
    }

    #[test]
    fn dihedral_cone_quotient_is_a_quadric_fan() {
        let model = build_model(ModelName::D4cone);
        let group = model_group(ModelName::D4cone);
        assert_eq!(group.order(), 8);
        let q = model.fan().quotient_fan(&[0], &group).unwrap();
        assert_eq!(q.fan.n(), 2);
        assert_eq!(q.fan.ray_count(), 4);
        assert_eq!(q.fan.maximal_cones().len(), 4);
        assert!(q.fan.is_smooth());
        assert!(q.fan.is_complete().unwrap());
        // Opposite rays pair up: the quadric surface fan.
        for r in q.fan.rays() {
            let neg: Vec<Int> = r.iter().map(|x| -x.clone()).collect();
            assert!(q.fan.rays().contains(&neg));
        }
        // The induced action still permutes the quotient fan's rays.
        for b in &q.induced {
            for r in q.fan.rays() {
                let img = b.apply_row(r);
                assert!(q.fan.rays().contains(&img));
            }
        }
    }

    #[test]
    fn quotient_by_origin_and_by_a_maximal_cone() {
        let fan = p3();
        let trivial = AffineGroup::trivial(3);
        let q0 = fan.quotient_fan(&[], &trivial).unwrap();
        assert_eq!(q0.fan, fan);
        let qmax = fan.quotient_fan(&[0, 1, 2], &trivial).unwrap();
        assert_eq!(qmax.fan, Fan::point());
        assert!(fan.orbit_fixed_point(&trivial, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn unstabilized_cone_is_rejected() {
        let fan = p3();
        let swap = grp(vec![me(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])]);
        let err = fan.quotient_fan(&[0], &swap).unwrap_err();
        assert!(matches!(err, Error::ConeNotStabilized));
    }

    #[test]
    fn line_flip_with_translation_fixes_a_point() {
        let fan = f(1, &[&[1], &[-1]], &[&[0], &[1]]);
        let g = grp(vec![ae(&[(1, 2)], &[&[-1]])]);
        assert!(fan.orbit_fixed_point(&g, &[]).unwrap());
        assert!(fan.has_fixed_point(&g).unwrap());
        assert!(brute_orbit_fixed_point(&fan, &g, &[]));
    }

    #[test]
    fn pure_translation_fixes_only_boundary_points() {
        let fan = f(1, &[&[1], &[-1]], &[&[0], &[1]]);
        let g = grp(vec![ae(&[(1, 2)], &[&[1]])]);
        assert!(!fan.orbit_fixed_point(&g, &[]).unwrap());
        assert!(!brute_orbit_fixed_point(&fan, &g, &[]));
        assert!(fan.has_fixed_point(&g).unwrap());
    }

    #[test]
    fn quarter_turn_with_axis_translation_has_no_fixed_points() {
        // Any lift of the quarter turn together with the order-two torus
        // element on the first axis fixes nothing on the cube fan.
        let fan = build_model(ModelName::P1xQ).fan().clone();
        let iota = ae(&[(1, 2), (0, 1), (0, 1)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        for lift in [&[(0, 1), (0, 1), (0, 1)], &[(1, 2), (0, 1), (0, 1)]] {
            let g = grp(vec![
                iota.clone(),
                ae(lift, &[&[-1, 0, 0], &[0, 0, 1], &[0, -1, 0]]),
            ]);
            assert_eq!(g.order(), 8);
            assert!(g.is_abelian());
            assert!(!fan.has_fixed_point(&g).unwrap());
        }
    }

    #[test]
    fn klein_switch_with_middle_translation_has_no_fixed_points() {
        let fan = build_model(ModelName::P1cubed).fan().clone();
        let g = grp(vec![
            ae(&[(0, 1), (1, 2), (0, 1)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            me(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
        ]);
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(!fan.has_fixed_point(&g).unwrap());
    }

    #[test]
    fn orbit_fixed_points_match_brute_force_on_stabilized_cones() {
        let fan = build_model(ModelName::P1cubed).fan().clone();
        let groups = vec![
            grp(vec![ae(&[(0, 1), (1, 2), (0, 1)], &[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])]),
            grp(vec![ae(&[(1, 2), (0, 1), (0, 1)], &[&[-1, 0, 0], &[0, 0, 1], &[0, -1, 0]])]),
            grp(vec![
                me(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
                ae(&[(0, 1), (1, 2), (0, 1)], &[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
            ]),
            grp(vec![
                ae(&[(0, 1), (1, 2), (0, 1)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
                me(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
            ]),
            grp(vec![ae(&[(1, 4), (1, 2), (3, 4)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])]),
        ];
        for g in &groups {
            let perms = fan.ray_permutations(g).unwrap();
            for cone in fan.cones() {
                let stabilized = perms.iter().all(|p| {
                    let mut img: Vec<usize> = cone.iter().map(|&i| p[i]).collect();
                    img.sort_unstable();
                    img == *cone
                });
                if stabilized {
                    assert_eq!(
                        fan.orbit_fixed_point(g, cone).unwrap(),
                        brute_orbit_fixed_point(&fan, g, cone),
                        "oracle mismatch on cone {cone:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn axis_involution_condition_a_depends_on_the_translation_axis() {
        let fan = build_model(ModelName::P1cubed).fan().clone();
        let bad = grp(vec![
            me(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            ae(&[(0, 1), (1, 2), (0, 1)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ]);
        let verdict = fan.condition_a(&bad).unwrap();
        assert!(!verdict.holds);
        assert!(verdict.witness.is_some());
        let good = grp(vec![
            me(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            ae(&[(1, 2), (0, 1), (0, 1)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ]);
        assert!(fan.condition_a(&good).unwrap().holds);
    }

    #[test]
    fn swap_involution_satisfies_condition_a_with_any_translations() {
        let fan = build_model(ModelName::P1cubed).fan().clone();
        let g = grp(vec![
            me(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
            ae(&[(1, 2), (0, 1), (0, 1)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            ae(&[(0, 1), (0, 1), (1, 2)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ]);
        assert!(fan.condition_a(&g).unwrap().holds);
    }

    #[test]
    fn central_inversion_with_two_torsion_fails_condition_a() {
        let fan = build_model(ModelName::P1cubed).fan().clone();
        let g = grp(vec![
            me(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            ae(&[(1, 2), (0, 1), (0, 1)], &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ]);
        assert!(!fan.condition_a(&g).unwrap().holds);
    }

    #[test]
    fn klein_action_with_half_twist_satisfies_condition_a() {
        let model = build_model(ModelName::S);
        let g = catalogue::group("example62").unwrap();
        assert_eq!(g.order(), 8);
        let verdict = model.fan().condition_a(&g).unwrap();
        assert!(verdict.holds);
    }
}
