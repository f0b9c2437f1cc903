use super::element::GroupElement;
use crate::exact::IntMatrix;
use crate::{Error, Result};
use std::collections::HashMap;

pub const DEFAULT_CLOSURE_CAP: usize = 1024;

/// Closed finite subgroup of (Q/Z)^n ⋊ GL_n(Z). Elements are stored sorted,
/// index 0 is not necessarily the identity; `identity_index` locates it.
/// Immutable after closure; all queries are pure.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    n: usize,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    table: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    identity_index: usize,
}

impl AffineGroup {
    /// Close a generating set by breadth-first multiplication.
    pub fn close(generators: Vec<GroupElement>, cap: usize) -> Result<AffineGroup> {
        let Some(first) = generators.first() else {
            return Err(Error::BadParameters("empty generating set; dimension unknown".into()));
        };
        let n = first.dim();
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator dimensions {} and {}",
                    n,
                    g.dim()
                )));
            }
        }
        let mut elements = vec![GroupElement::identity(n)];
        let mut seen: HashMap<GroupElement, usize> = HashMap::new();
        seen.insert(elements[0].clone(), 0);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let next = current.mul(g);
                if !seen.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        elements.sort();
        Self::from_closed_elements(n, generators, elements)
    }

    pub fn close_default(generators: Vec<GroupElement>) -> Result<AffineGroup> {
        Self::close(generators, DEFAULT_CLOSURE_CAP)
    }

    pub fn trivial(n: usize) -> AffineGroup {
        AffineGroup::from_closed_elements(n, Vec::new(), vec![GroupElement::identity(n)])
            .expect("trivial group is closed")
    }

    /// Build from an element list already known to be closed (asserted here).
    pub fn from_closed_elements(
        n: usize,
        generators: Vec<GroupElement>,
        mut elements: Vec<GroupElement>,
    ) -> Result<AffineGroup> {
        elements.sort();
        elements.dedup();
        let index: HashMap<GroupElement, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let order = elements.len();
        let mut table = vec![vec![0u32; order]; order];
        for i in 0..order {
            for j in 0..order {
                let p = elements[i].mul(&elements[j]);
                let Some(&k) = index.get(&p) else {
                    return Err(Error::GroupMismatch);
                };
                table[i][j] = k as u32;
            }
        }
        let mut inverse = vec![0u32; order];
        let identity_index = *index.get(&GroupElement::identity(n)).ok_or(Error::GroupMismatch)?;
        for i in 0..order {
            let inv = (0..order)
                .find(|&j| table[i][j] as usize == identity_index)
                .ok_or(Error::GroupMismatch)?;
            inverse[i] = inv as u32;
        }
        Ok(AffineGroup { n, generators, elements, index, table, inverse, identity_index })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Index of elements[i] * elements[j].
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.table[i][j] as usize
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut acc = i;
        while acc != self.identity_index {
            acc = self.mul_index(acc, i);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|i| (i..m).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// G_T: the subgroup of pure torsion translations.
    pub fn torus_kernel(&self) -> AffineGroup {
        let kernel: Vec<GroupElement> =
            self.elements.iter().filter(|e| e.is_pure_translation()).cloned().collect();
        let gens = kernel.iter().filter(|e| !e.is_identity()).cloned().collect();
        AffineGroup::from_closed_elements(self.n, gens, kernel)
            .expect("translation kernel is closed")
    }

    /// π*(G): the image in GL_n(Z), as a pure-matrix group.
    pub fn image(&self) -> AffineGroup {
        let mut matrices: Vec<IntMatrix> =
            self.elements.iter().map(|e| e.matrix_part().clone()).collect();
        matrices.sort_by(|a, b| a.data().cmp(b.data()));
        matrices.dedup();
        let elements: Vec<GroupElement> =
            matrices.into_iter().map(GroupElement::from_matrix).collect();
        let gens = self
            .generators
            .iter()
            .map(|g| GroupElement::from_matrix(g.matrix_part().clone()))
            .filter(|g| !g.is_identity())
            .collect();
        AffineGroup::from_closed_elements(self.n, gens, elements)
            .expect("homomorphic image is closed")
    }

    pub fn is_pure_matrix_group(&self) -> bool {
        self.elements.iter().all(|e| e.is_pure_matrix())
    }

    /// Subgroup spanned by the given element indices (closed within G).
    pub fn subgroup_from_indices(&self, indices: &[usize]) -> AffineGroup {
        let elements: Vec<GroupElement> =
            indices.iter().map(|&i| self.elements[i].clone()).collect();
        let gens = elements.iter().filter(|e| !e.is_identity()).cloned().collect();
        AffineGroup::from_closed_elements(self.n, gens, elements)
            .expect("index set is closed under multiplication")
    }

    /// Closure of a set of element indices inside this group, as sorted indices.
    pub fn span_indices(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_span = vec![false; self.order()];
        in_span[self.identity_index] = true;
        let mut stack: Vec<usize> = vec![self.identity_index];
        for &i in seed {
            if !in_span[i] {
                in_span[i] = true;
                stack.push(i);
            }
        }
        let mut frontier = 0;
        while frontier < stack.len() {
            let a = stack[frontier];
            frontier += 1;
            for &b in seed {
                let p = self.mul_index(a, b);
                if !in_span[p] {
                    in_span[p] = true;
                    stack.push(p);
                }
            }
        }
        stack.sort_unstable();
        stack
    }

    /// True if the sorted index set is closed under the group operation.
    pub fn indices_closed(&self, indices: &[usize]) -> bool {
        indices.iter().all(|&i| {
            indices.iter().all(|&j| indices.binary_search(&self.mul_index(i, j)).is_ok())
        })
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &AffineGroup) -> bool {
        other.elements.iter().all(|e| self.contains(e))
    }
}
