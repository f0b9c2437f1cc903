//! Finite-rank `Z`-lattices carrying a right action of a finite affine group.
//!
//! A [`GLattice`] stores one unimodular integer matrix per group element; a
//! row vector `v` transforms as `v * M_g`. Constructors verify that the
//! assignment respects the group multiplication, so every value of this type
//! is an honest right module. The standard constructions are provided:
//! duals (inverse-transpose action), tensor products, direct sums,
//! restriction to a subgroup, induction from a subgroup, and the sublattice
//! of invariant vectors.

use std::collections::HashMap;
use std::sync::Arc;

use crate::affine::AffineGroup;
use crate::exact::{left_kernel, Int, IntMatrix, QmodZVector};
use crate::{Error, Result};

/// A free `Z`-module of finite rank with a right action of a fixed group.
#[derive(Clone, Debug)]
pub struct GLattice {
    group: Arc<AffineGroup>,
    rank: usize,
    /// Indexed by the group's element indices; `v` maps to `v * action[g]`.
    action: Vec<IntMatrix>,
}

fn same_group(a: &AffineGroup, b: &AffineGroup) -> bool {
    a.dim() == b.dim() && a.elements() == b.elements()
}

impl GLattice {
    /// Builds a lattice from one matrix per group element.
    ///
    /// Verifies `M_id = I` and `M_{g s} = M_g M_s` for every element `g` and
    /// generator `s`; by induction on word length this forces
    /// `M_{g h} = M_g M_h` for all pairs.
    pub fn from_element_action(group: Arc<AffineGroup>, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::BadParameters(format!(
                "expected {} action matrices, got {}",
                group.order(),
                action.len()
            )));
        }
        let rank = if action.is_empty() { 0 } else { action[0].rows() };
        for m in &action {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch(
                    "action matrices must be square of equal size".into(),
                ));
            }
            if !m.is_unimodular() {
                return Err(Error::BadParameters(
                    "action matrix is not unimodular".into(),
                ));
            }
        }
        if action[group.identity_index()] != IntMatrix::identity(rank) {
            return Err(Error::BadParameters(
                "identity element must act as the identity matrix".into(),
            ));
        }
        let gen_indices: Vec<usize> = group
            .generators()
            .iter()
            .map(|g| group.index_of(g).expect("generator in closure"))
            .collect();
        for g in 0..group.order() {
            for &s in &gen_indices {
                let gs = group.mul_index(g, s);
                if action[g].mul(&action[s]) != action[gs] {
                    return Err(Error::BadParameters(
                        "action violates a group relation".into(),
                    ));
                }
            }
        }
        Ok(GLattice {
            group,
            rank,
            action,
        })
    }

    /// Builds a lattice from matrices for the group's generators, extending
    /// multiplicatively. Fails if the matrices violate a relation that holds
    /// among the generators.
    pub fn from_generator_action(group: Arc<AffineGroup>, gens: &[IntMatrix]) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::BadParameters(format!(
                "expected {} generator matrices, got {}",
                group.generators().len(),
                gens.len()
            )));
        }
        let rank = gens.first().map_or(0, |m| m.rows());
        for m in gens {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch(
                    "generator matrices must be square of equal size".into(),
                ));
            }
            if !m.is_unimodular() {
                return Err(Error::BadParameters(
                    "generator matrix is not unimodular".into(),
                ));
            }
        }
        let gen_indices: Vec<usize> = group
            .generators()
            .iter()
            .map(|g| group.index_of(g).expect("generator in closure"))
            .collect();
        let id = group.identity_index();
        let mut action: Vec<Option<IntMatrix>> = vec![None; group.order()];
        action[id] = Some(IntMatrix::identity(rank));
        let mut queue = vec![id];
        while let Some(g) = queue.pop() {
            let mg = action[g].clone().expect("queued elements are filled");
            for (k, &s) in gen_indices.iter().enumerate() {
                let gs = group.mul_index(g, s);
                let prod = mg.mul(&gens[k]);
                match &action[gs] {
                    None => {
                        action[gs] = Some(prod);
                        queue.push(gs);
                    }
                    Some(existing) => {
                        if *existing != prod {
                            return Err(Error::BadParameters(
                                "generator action violates a group relation".into(),
                            ));
                        }
                    }
                }
            }
        }
        let action: Vec<IntMatrix> = action
            .into_iter()
            .map(|m| m.expect("generators reach every element"))
            .collect();
        Ok(GLattice {
            group,
            rank,
            action,
        })
    }

    /// Builds a permutation module from generator permutations of the basis:
    /// `e_i * s = e_{perm[i]}`.
    pub fn from_generator_permutations(
        group: Arc<AffineGroup>,
        perms: &[Vec<usize>],
    ) -> Result<Self> {
        let mut gens = Vec::with_capacity(perms.len());
        for p in perms {
            let r = p.len();
            let mut m = IntMatrix::zeros(r, r);
            let mut seen = vec![false; r];
            for (i, &j) in p.iter().enumerate() {
                if j >= r || seen[j] {
                    return Err(Error::BadParameters("not a permutation".into()));
                }
                seen[j] = true;
                m.set(i, j, Int::from(1));
            }
            gens.push(m);
        }
        GLattice::from_generator_action(group, &gens)
    }

    /// The rank-`r` lattice with every element acting as the identity.
    pub fn trivial(group: Arc<AffineGroup>, rank: usize) -> Self {
        let action = vec![IntMatrix::identity(rank); group.order()];
        GLattice {
            group,
            rank,
            action,
        }
    }

    /// The cocharacter lattice: rank `n`, each element acting by its matrix
    /// part on row vectors. Torus parts are discarded.
    pub fn cocharacter(group: Arc<AffineGroup>) -> Self {
        let rank = group.dim();
        let action = group
            .elements()
            .iter()
            .map(|g| g.matrix_part().clone())
            .collect();
        GLattice {
            group,
            rank,
            action,
        }
    }

    /// The character lattice, dual to [`GLattice::cocharacter`].
    pub fn character(group: Arc<AffineGroup>) -> Self {
        GLattice::cocharacter(group).dual()
    }

    pub fn group(&self) -> &Arc<AffineGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The matrix of the element with the given index.
    pub fn matrix(&self, element: usize) -> &IntMatrix {
        &self.action[element]
    }

    /// Applies the element to an integer row vector.
    pub fn act_row(&self, v: &[Int], element: usize) -> Vec<Int> {
        self.action[element].apply_row(v)
    }

    /// Applies the element to a row vector with entries in `Q/Z`, i.e. acts
    /// on the quotient module `L ⊗ Q/Z`.
    pub fn act_qmodz(&self, v: &QmodZVector, element: usize) -> QmodZVector {
        v.apply_int_matrix_row(&self.action[element])
    }

    /// The dual lattice: elements act by the inverse transpose, so the
    /// evaluation pairing is invariant.
    pub fn dual(&self) -> GLattice {
        let action = self
            .action
            .iter()
            .map(|m| m.inverse_unimodular().transpose())
            .collect();
        GLattice {
            group: self.group.clone(),
            rank: self.rank,
            action,
        }
    }

    /// Tensor product over `Z` with the diagonal action (Kronecker product).
    pub fn tensor(&self, other: &GLattice) -> Result<GLattice> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let (r1, r2) = (self.rank, other.rank);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                IntMatrix::from_fn(r1 * r2, r1 * r2, |rc, cc| {
                    a.get(rc / r2, cc / r2) * b.get(rc % r2, cc % r2)
                })
            })
            .collect();
        Ok(GLattice {
            group: self.group.clone(),
            rank: r1 * r2,
            action,
        })
    }

    /// Direct sum with the block-diagonal action.
    pub fn direct_sum(&self, other: &GLattice) -> Result<GLattice> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let (r1, r2) = (self.rank, other.rank);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                IntMatrix::from_fn(r1 + r2, r1 + r2, |i, j| {
                    if i < r1 && j < r1 {
                        a.get(i, j).clone()
                    } else if i >= r1 && j >= r1 {
                        b.get(i - r1, j - r1).clone()
                    } else {
                        Int::from(0)
                    }
                })
            })
            .collect();
        Ok(GLattice {
            group: self.group.clone(),
            rank: r1 + r2,
            action,
        })
    }

    /// The same lattice viewed as a module over a subgroup.
    pub fn restrict(&self, subgroup: &Arc<AffineGroup>) -> Result<GLattice> {
        let mut action = Vec::with_capacity(subgroup.order());
        for h in subgroup.elements() {
            let idx = self.group.index_of(h).ok_or(Error::NotASubgroup)?;
            action.push(self.action[idx].clone());
        }
        Ok(GLattice {
            group: subgroup.clone(),
            rank: self.rank,
            action,
        })
    }

    /// Induction to a supergroup: `self` is a module over `H`, the result is
    /// `self ⊗_{Z[H]} Z[G]` of rank `[G:H] * rank`, with the block-monomial
    /// action determined by right coset representatives. The coset of the
    /// identity is always represented by the identity, so induction along
    /// `H = G` returns the module unchanged.
    pub fn induced(&self, supergroup: Arc<AffineGroup>) -> Result<GLattice> {
        let g = &supergroup;
        let h = &self.group;
        // Indices of H's elements inside G, and the reverse lookup.
        let mut h_in_g = Vec::with_capacity(h.order());
        let mut back: HashMap<usize, usize> = HashMap::new();
        for (hi, el) in h.elements().iter().enumerate() {
            let gi = g.index_of(el).ok_or(Error::NotASubgroup)?;
            h_in_g.push(gi);
            back.insert(gi, hi);
        }
        // Right cosets Hx, the identity's coset first.
        let mut coset = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        let mut order = vec![g.identity_index()];
        order.extend(0..g.order());
        for x in order {
            if coset[x] != usize::MAX {
                continue;
            }
            let j = reps.len();
            reps.push(x);
            for &hg in &h_in_g {
                coset[g.mul_index(hg, x)] = j;
            }
        }
        let m = reps.len();
        let r0 = self.rank;
        let rank = m * r0;
        let mut action = Vec::with_capacity(g.order());
        for gi in 0..g.order() {
            let mut mat = IntMatrix::zeros(rank, rank);
            for (j, &rep) in reps.iter().enumerate() {
                // r_j * g = h * r_{j'} with h in H.
                let t = g.mul_index(rep, gi);
                let jp = coset[t];
                let h_idx = back[&g.mul_index(t, g.inverse_index(reps[jp]))];
                let block = &self.action[h_idx];
                for b in 0..r0 {
                    for c in 0..r0 {
                        mat.set(j * r0 + b, jp * r0 + c, block.get(b, c).clone());
                    }
                }
            }
            action.push(mat);
        }
        Ok(GLattice {
            group: supergroup,
            rank,
            action,
        })
    }

    /// A basis (as matrix rows) of the sublattice of vectors fixed by every
    /// group element. The kernel of an integer matrix is saturated, so this
    /// basis spans a primitive sublattice.
    pub fn fixed_sublattice(&self) -> IntMatrix {
        let gen_indices: Vec<usize> = self
            .group
            .generators()
            .iter()
            .filter_map(|g| self.group.index_of(g))
            .collect();
        if gen_indices.is_empty() {
            return IntMatrix::identity(self.rank);
        }
        let eye = IntMatrix::identity(self.rank);
        let mut stacked: Option<IntMatrix> = None;
        for &s in &gen_indices {
            let block = self.action[s].sub(&eye);
            stacked = Some(match stacked {
                None => block,
                Some(m) => m.hstack(&block),
            });
        }
        let kernel = left_kernel(&stacked.expect("at least one generator"));
        if kernel.is_empty() {
            IntMatrix::zeros(0, self.rank)
        } else {
            IntMatrix::from_rows(kernel)
        }
    }

    /// Rank of the fixed sublattice.
    pub fn invariants_rank(&self) -> usize {
        self.fixed_sublattice().rows()
    }
}
