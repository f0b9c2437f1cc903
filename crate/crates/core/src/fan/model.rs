//! The toric models the classifier works on: named fans, their Picard
//! presentations with a distinguished section, and the matrix groups each
//! fan is built to be invariant under.
//!
//! For the blowup models the maximal cones are derived in code (stellar
//! subdivision chains for the point/line blowups of projective space; an
//! explicit orthant split for the hyperplane-section model) and gated by
//! exact cone counts in the test suite.

use std::sync::Arc;

use num::traits::{One, Zero};
use serde::Serialize;

use crate::affine::{AffineGroup, GroupElement};
use crate::exact::{AbelianPresentation, Int, IntMatrix};
use crate::glattice::GLattice;
use crate::{Error, Result};

use super::Fan;

/// Names of the built-in models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModelName {
    /// The projective line (rank 1).
    P1,
    /// The projective plane (rank 2).
    P2,
    /// Product of two projective lines (rank 2).
    P1xP1,
    /// Del Pezzo surface of degree 6, the hexagon fan (rank 2).
    Dp6,
    /// Projective 3-space.
    P3,
    /// Product of three projective lines.
    P1cubed,
    /// Product of a line and a plane, the plane on the first two coordinates.
    P1xP2,
    /// Product of a line and a quadric surface; same fan as P1cubed with the
    /// quadric factors on the last two coordinates.
    P1xQ,
    /// The six-ray, eight-cone fan fixed by the dihedral pair tau1, tau2.
    D4cone,
    /// Blowup of P3 in its four fixed points and six invariant lines.
    S,
    /// Small resolution model: blowup of the multiplicative hyperplane
    /// section of (P1)^4 in its six singular points.
    P,
    /// Product of a line and the degree-6 del Pezzo surface.
    F,
}

pub const ALL_MODELS: [ModelName; 12] = [
    ModelName::P1,
    ModelName::P2,
    ModelName::P1xP1,
    ModelName::Dp6,
    ModelName::P3,
    ModelName::P1cubed,
    ModelName::P1xP2,
    ModelName::P1xQ,
    ModelName::D4cone,
    ModelName::S,
    ModelName::P,
    ModelName::F,
];

impl ModelName {
    pub fn parse(s: &str) -> Result<ModelName> {
        let lowered = s.to_ascii_lowercase();
        ALL_MODELS
            .iter()
            .copied()
            .find(|m| m.name().to_ascii_lowercase() == lowered)
            .ok_or_else(|| Error::BadParameters(format!("unknown model '{s}'")))
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelName::P1 => "P1",
            ModelName::P2 => "P2",
            ModelName::P1xP1 => "P1xP1",
            ModelName::Dp6 => "dP6",
            ModelName::P3 => "P3",
            ModelName::P1cubed => "P1cubed",
            ModelName::P1xP2 => "P1xP2",
            ModelName::P1xQ => "P1xQ",
            ModelName::D4cone => "D4cone",
            ModelName::S => "S",
            ModelName::P => "P",
            ModelName::F => "F",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            ModelName::P1 => 1,
            ModelName::P2 | ModelName::P1xP1 | ModelName::Dp6 => 2,
            _ => 3,
        }
    }
}

/// A smooth complete fan together with the character-to-divisor data: the
/// embedding of the character lattice into the ray module, a section of the
/// resulting Picard projection, and the Picard presentation read through it.
#[derive(Clone, Debug, Serialize)]
pub struct ToricModel {
    name: Option<String>,
    fan: Fan,
    /// n x R; row i lists the i-th coordinates of all rays.
    m_embedding: IntMatrix,
    /// k x R; row i is the chosen divisor representative of the i-th Picard
    /// basis class.
    section: IntMatrix,
    /// R x k; a divisor row vector maps to its Picard coordinates.
    projection: IntMatrix,
    pic: AbelianPresentation,
}

fn ray_evaluation(fan: &Fan) -> IntMatrix {
    IntMatrix::from_fn(fan.n(), fan.ray_count(), |i, j| fan.rays()[j][i].clone())
}

impl ToricModel {
    /// Builds the model with a canonical section derived from the Smith
    /// form of the ray-evaluation matrix.
    pub fn from_fan(fan: Fan) -> Result<ToricModel> {
        let e = ray_evaluation(&fan);
        let n = fan.n();
        let r = fan.ray_count();
        let k = r - n;
        let d = crate::exact::smith_form(&e);
        if d.rank() != n || (0..n).any(|i| !d.s.get(i, i).is_one()) {
            return Err(Error::MalformedFan(
                "rays do not span a saturated character image".into(),
            ));
        }
        let v_inv = d.v.inverse_unimodular();
        let section = IntMatrix::from_fn(k, r, |i, j| v_inv.get(n + i, j).clone());
        Self::assemble(fan, section)
    }

    /// Builds the model with a caller-chosen section of the Picard
    /// projection; rejects sections that do not complement the character
    /// image.
    pub fn with_section(fan: Fan, section: IntMatrix) -> Result<ToricModel> {
        Self::assemble(fan, section)
    }

    fn assemble(fan: Fan, section: IntMatrix) -> Result<ToricModel> {
        if !fan.is_smooth() {
            return Err(Error::MalformedFan("model fan must be smooth".into()));
        }
        if !fan.is_complete()? {
            return Err(Error::MalformedFan("model fan must be complete".into()));
        }
        let n = fan.n();
        let r = fan.ray_count();
        if r < n {
            return Err(Error::MalformedFan("fewer rays than the dimension".into()));
        }
        let k = r - n;
        if section.rows() != k || section.cols() != r {
            return Err(Error::SectionInvalid);
        }
        let e = ray_evaluation(&fan);
        let b = e.vstack(&section);
        if !b.is_unimodular() {
            return Err(Error::SectionInvalid);
        }
        let b_inv = b.inverse_unimodular();
        let projection = IntMatrix::from_fn(r, k, |i, j| b_inv.get(i, n + j).clone());
        let composed = section.mul(&projection);
        assert_eq!(composed, IntMatrix::identity(k), "section must split the projection");
        let pic = AbelianPresentation::free_with_projection(r, projection.clone());
        Ok(ToricModel { name: None, fan, m_embedding: e, section, projection, pic })
    }

    fn named(mut self, name: &str) -> ToricModel {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn n(&self) -> usize {
        self.fan.n()
    }

    pub fn pl_rank(&self) -> usize {
        self.fan.ray_count()
    }

    pub fn pic_rank(&self) -> usize {
        self.pic.rank()
    }

    pub fn m_embedding(&self) -> &IntMatrix {
        &self.m_embedding
    }

    pub fn section(&self) -> &IntMatrix {
        &self.section
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn pic(&self) -> &AbelianPresentation {
        &self.pic
    }

    /// Permutation module on the rays.
    pub fn pl_module(&self, group: Arc<AffineGroup>) -> Result<GLattice> {
        self.fan.pl_module(group)
    }

    /// Character module of the torus.
    pub fn m_module(&self, group: Arc<AffineGroup>) -> GLattice {
        GLattice::character(group)
    }

    /// Checks that the character embedding intertwines the character action
    /// with the ray permutation action.
    pub fn verify_equivariance(&self, group: &Arc<AffineGroup>) -> Result<()> {
        let perms = self.fan.ray_permutations(group)?;
        let chars = GLattice::character(group.clone());
        let r = self.pl_rank();
        for (e, perm) in perms.iter().enumerate() {
            let p = IntMatrix::from_fn(r, r, |i, j| {
                if perm[i] == j {
                    Int::one()
                } else {
                    Int::zero()
                }
            });
            if chars.matrix(e).mul(&self.m_embedding) != self.m_embedding.mul(&p) {
                return Err(Error::ConversionFailed(
                    "character embedding fails equivariance".into(),
                ));
            }
        }
        Ok(())
    }

    /// Picard module: the ray permutation action transported through the
    /// chosen section and projection.
    pub fn pic_module(&self, group: Arc<AffineGroup>) -> Result<GLattice> {
        self.verify_equivariance(&group)?;
        let perms = self.fan.ray_permutations(&group)?;
        let r = self.pl_rank();
        let mats: Vec<IntMatrix> = perms
            .iter()
            .map(|perm| {
                let p = IntMatrix::from_fn(r, r, |i, j| {
                    if perm[i] == j {
                        Int::one()
                    } else {
                        Int::zero()
                    }
                });
                self.section.mul(&p).mul(&self.projection)
            })
            .collect();
        GLattice::from_element_action(group, mats)
    }
}

fn fan_from_i64(n: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Fan {
    let rays: Vec<Vec<Int>> =
        rays.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
    let cones: Vec<Vec<usize>> = max_cones.iter().map(|c| c.to_vec()).collect();
    Fan::from_max_cones(n, rays, cones).expect("built-in fan data is well formed")
}

/// Reorders a fan's rays to a prescribed target list (a permutation of the
/// existing rays), remapping all cones.
fn reorder_rays(fan: &Fan, target: &[Vec<Int>]) -> Fan {
    assert_eq!(target.len(), fan.ray_count(), "target must list every ray");
    let map: Vec<usize> = fan
        .rays()
        .iter()
        .map(|r| target.iter().position(|t| t == r).expect("target must be a permutation"))
        .collect();
    let max: Vec<Vec<usize>> = fan
        .maximal_cones()
        .iter()
        .map(|c| c.iter().map(|&i| map[i]).collect())
        .collect();
    Fan::from_max_cones(fan.n(), target.to_vec(), max).expect("reordering preserves validity")
}

fn p1_fan() -> Fan {
    fan_from_i64(1, &[&[1], &[-1]], &[&[0], &[1]])
}

fn p2_fan() -> Fan {
    fan_from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
}

fn p1xp1_fan() -> Fan {
    fan_from_i64(
        2,
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
    )
}

fn dp6_fan() -> Fan {
    fan_from_i64(
        2,
        &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
    )
}

fn p3_fan() -> Fan {
    fan_from_i64(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    )
}

fn p1cubed_fan() -> Fan {
    let rays: Vec<&[i64]> = vec![
        &[1, 0, 0],
        &[-1, 0, 0],
        &[0, 1, 0],
        &[0, -1, 0],
        &[0, 0, 1],
        &[0, 0, -1],
    ];
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for a in [0usize, 1] {
        for b in [2usize, 3] {
            for c in [4usize, 5] {
                cones.push(vec![a, b, c]);
            }
        }
    }
    let cone_refs: Vec<&[usize]> = cones.iter().map(|c| c.as_slice()).collect();
    fan_from_i64(3, &rays, &cone_refs)
}

fn p1xp2_fan() -> Fan {
    fan_from_i64(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        &[&[0, 1, 3], &[1, 2, 3], &[0, 2, 3], &[0, 1, 4], &[1, 2, 4], &[0, 2, 4]],
    )
}

fn d4cone_fan() -> Fan {
    fan_from_i64(
        3,
        &[
            &[-1, 0, -1],
            &[0, -1, 0],
            &[0, 0, 1],
            &[1, 0, 0],
            &[1, 1, 1],
            &[1, 0, 1],
        ],
        &[
            &[0, 3, 4],
            &[0, 2, 4],
            &[0, 1, 2],
            &[0, 1, 3],
            &[3, 4, 5],
            &[2, 4, 5],
            &[1, 2, 5],
            &[1, 3, 5],
        ],
    )
}

/// The four base rays of the symmetric projective space underlying the S
/// model; they sum to zero and any three form a lattice basis.
fn s_base_rays() -> [Vec<Int>; 4] {
    [
        vec![Int::from(1), Int::from(0), Int::from(0)],
        vec![Int::from(0), Int::from(-1), Int::from(1)],
        vec![Int::from(0), Int::from(0), Int::from(-1)],
        vec![Int::from(-1), Int::from(1), Int::from(0)],
    ]
}

/// The printed ray order of the S model.
fn s_printed_rays() -> Vec<Vec<Int>> {
    let raw: [[i64; 3]; 14] = [
        [-1, 0, 0],
        [-1, 1, 0],
        [0, -1, 1],
        [0, 0, -1],
        [0, 0, 1],
        [0, 1, -1],
        [1, -1, 0],
        [1, 0, 0],
        [1, 0, -1],
        [1, -1, 1],
        [0, -1, 0],
        [0, 1, 0],
        [-1, 1, -1],
        [-1, 0, 1],
    ];
    raw.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

fn s_fan() -> Fan {
    let r = s_base_rays();
    let base = Fan::from_max_cones(
        3,
        r.to_vec(),
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .expect("base simplex fan is well formed");
    let mut fan = base;
    // Point blowups: the barycenter opposite r_l is -r_l.
    for l in 0..4 {
        let neg: Vec<Int> = r[l].iter().map(|x| -x.clone()).collect();
        fan = fan.star_subdivide(&neg).expect("barycenter lies in the opposite cone");
    }
    // Line blowups at the six edge barycenters r_i + r_j.
    for i in 0..4 {
        for j in i + 1..4 {
            let sum: Vec<Int> = r[i].iter().zip(&r[j]).map(|(a, b)| a + b).collect();
            fan = fan.star_subdivide(&sum).expect("edge barycenter lies in the fan");
        }
    }
    reorder_rays(&fan, &s_printed_rays())
}

/// Printed section of the S model: Picard basis classes p1..p9 map to the
/// rays v5..v13, p10 to v4 - v5, and p11 to -v4 + v5 - v9 + v14.
fn s_section() -> IntMatrix {
    let mut m = IntMatrix::zeros(11, 14);
    for i in 0..9 {
        m.set(i, 4 + i, Int::one());
    }
    m.set(9, 3, Int::one());
    m.set(9, 4, -Int::one());
    m.set(10, 3, -Int::one());
    m.set(10, 4, Int::one());
    m.set(10, 8, -Int::one());
    m.set(10, 13, Int::one());
    m
}

/// Rays and maximal cones of the P model: the sign-orthant fan of the
/// hyperplane {sum = 0} in Z^4 written in the basis f_i - f_4, with each of
/// the six square cones split at its barycenter.
fn p_fan() -> Fan {
    // Coordinates of f_i - f_j in the basis g_i = f_i - f_4 are the first
    // three entries of e_i - e_j.
    let diff = |i: usize, j: usize| -> Vec<Int> {
        let mut v = vec![0i64; 4];
        v[i] = 1;
        v[j] -= 1;
        v[..3].iter().map(|&x| Int::from(x)).collect()
    };
    fn index_of(rays: &mut Vec<Vec<Int>>, v: Vec<Int>) -> usize {
        match rays.iter().position(|r| *r == v) {
            Some(p) => p,
            None => {
                rays.push(v);
                rays.len() - 1
            }
        }
    }
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                index_of(&mut rays, diff(i, j));
            }
        }
    }
    let mut max_cones: Vec<Vec<usize>> = Vec::new();
    for mask in 1..15u32 {
        let plus: Vec<usize> = (0..4).filter(|&i| mask >> i & 1 == 1).collect();
        let minus: Vec<usize> = (0..4).filter(|&i| mask >> i & 1 == 0).collect();
        if plus.len() == 1 || plus.len() == 3 {
            let cone: Vec<usize> = plus
                .iter()
                .flat_map(|&i| minus.iter().map(move |&j| (i, j)))
                .map(|(i, j)| index_of(&mut rays, diff(i, j)))
                .collect();
            max_cones.push(cone);
        } else {
            // Square cone: rays in the cyclic order sharing one index at a
            // time, split at the primitive barycenter.
            let (p1, p2) = (plus[0], plus[1]);
            let (m1, m2) = (minus[0], minus[1]);
            let quad = [
                index_of(&mut rays, diff(p1, m1)),
                index_of(&mut rays, diff(p1, m2)),
                index_of(&mut rays, diff(p2, m2)),
                index_of(&mut rays, diff(p2, m1)),
            ];
            let mut center = vec![Int::zero(), Int::zero(), Int::zero()];
            for &i in &plus {
                if i < 3 {
                    center[i] += Int::one();
                }
            }
            for &j in &minus {
                if j < 3 {
                    center[j] -= Int::one();
                }
            }
            let c = index_of(&mut rays, center);
            for e in 0..4 {
                max_cones.push(vec![quad[e], quad[(e + 1) % 4], c]);
            }
        }
    }
    Fan::from_max_cones(3, rays, max_cones).expect("orthant split fan is well formed")
}

fn f_fan() -> Fan {
    fan_from_i64(
        3,
        &[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, 1, 1],
            &[0, 0, 1],
            &[0, -1, 0],
            &[0, -1, -1],
            &[0, 0, -1],
        ],
        &[
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 5, 6],
            &[0, 6, 7],
            &[0, 2, 7],
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 6, 7],
            &[1, 2, 7],
        ],
    )
}

/// Builds a named model.
pub fn build_model(name: ModelName) -> ToricModel {
    let model = match name {
        ModelName::P1 => ToricModel::from_fan(p1_fan()),
        ModelName::P2 => ToricModel::from_fan(p2_fan()),
        ModelName::P1xP1 => ToricModel::from_fan(p1xp1_fan()),
        ModelName::Dp6 => ToricModel::from_fan(dp6_fan()),
        ModelName::P3 => ToricModel::from_fan(p3_fan()),
        ModelName::P1cubed => ToricModel::from_fan(p1cubed_fan()),
        ModelName::P1xP2 => ToricModel::from_fan(p1xp2_fan()),
        ModelName::P1xQ => ToricModel::from_fan(p1cubed_fan()),
        ModelName::D4cone => ToricModel::from_fan(d4cone_fan()),
        ModelName::S => ToricModel::with_section(s_fan(), s_section()),
        ModelName::P => ToricModel::from_fan(p_fan()),
        ModelName::F => ToricModel::from_fan(f_fan()),
    };
    model.expect("built-in models are smooth and complete").named(name.name())
}

fn matrix_elem(rows: &[Vec<i64>]) -> GroupElement {
    GroupElement::from_matrix(IntMatrix::from_i64_rows(rows))
}

/// Matrix sending the basis r1, r2, r3 to the listed images (row action).
fn basis_map(basis: &[Vec<Int>; 4], images: [usize; 3]) -> GroupElement {
    let r = IntMatrix::from_rows(basis[..3].to_vec());
    let imgs = IntMatrix::from_rows((0..3).map(|i| basis[images[i]].clone()).collect());
    let a = r.inverse_unimodular().mul(&imgs);
    GroupElement::from_matrix(a)
}

/// The intended symmetry group of each model: the largest matrix group the
/// fan is certified invariant under.
pub fn model_group(name: ModelName) -> AffineGroup {
    let gens: Vec<GroupElement> = match name {
        ModelName::P1 => vec![matrix_elem(&[vec![-1]])],
        ModelName::P2 => vec![
            matrix_elem(&[vec![0, 1], vec![-1, -1]]),
            matrix_elem(&[vec![0, 1], vec![1, 0]]),
        ],
        ModelName::P1xP1 => vec![
            matrix_elem(&[vec![0, 1], vec![-1, 0]]),
            matrix_elem(&[vec![0, 1], vec![1, 0]]),
        ],
        ModelName::Dp6 => vec![
            matrix_elem(&[vec![1, 1], vec![-1, 0]]),
            matrix_elem(&[vec![0, 1], vec![1, 0]]),
        ],
        ModelName::P3 => vec![
            matrix_elem(&[vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]]),
            matrix_elem(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
        ],
        ModelName::P1cubed => vec![
            matrix_elem(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
            matrix_elem(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]),
            matrix_elem(&[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
        ],
        ModelName::P1xP2 => vec![
            matrix_elem(&[vec![0, 1, 0], vec![-1, -1, 0], vec![0, 0, 1]]),
            matrix_elem(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
            matrix_elem(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]),
        ],
        ModelName::P1xQ => vec![
            matrix_elem(&[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            matrix_elem(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, -1, 0]]),
            matrix_elem(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]),
        ],
        ModelName::D4cone => {
            let mut gens =
                crate::affine::catalogue::lookup("tau1").expect("tau1 entry exists").generators;
            gens.extend(
                crate::affine::catalogue::lookup("tau2").expect("tau2 entry exists").generators,
            );
            gens
        }
        ModelName::S => s_class_generators(),
        ModelName::P => p_class_generators(),
        ModelName::F => vec![
            matrix_elem(&[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            matrix_elem(&[vec![1, 0, 0], vec![0, 1, 1], vec![0, -1, 0]]),
            matrix_elem(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]),
        ],
    };
    AffineGroup::close_default(gens).expect("model symmetry groups are small")
}

/// Generators of the symmetry group of the P model: the hypersurface sits in
/// a product of four lines, so factor permutations act on the sum-zero
/// sublattice, plus central inversion. In the difference basis g_i = f_i -
/// f_3 a permutation sends row i to the truncation of e_{p(i)} - e_{p(3)}.
fn p_class_generators() -> Vec<GroupElement> {
    fn perm_matrix(p: [usize; 4]) -> GroupElement {
        let mut rows = vec![vec![0i64; 3]; 3];
        for i in 0..3 {
            if p[i] < 3 {
                rows[i][p[i]] += 1;
            }
            if p[3] < 3 {
                rows[i][p[3]] -= 1;
            }
        }
        matrix_elem(&rows)
    }
    vec![
        perm_matrix([1, 0, 2, 3]),
        perm_matrix([0, 2, 1, 3]),
        perm_matrix([0, 1, 3, 2]),
        GroupElement::from_matrix(IntMatrix::identity(3).neg()),
    ]
}

/// Generators of the symmetric-by-inversion group of the S model: the
/// transpositions permuting the four base rays, plus central inversion.
fn s_class_generators() -> Vec<GroupElement> {
    let basis = s_base_rays();
    vec![
        basis_map(&basis, [1, 0, 2]),
        basis_map(&basis, [0, 2, 1]),
        basis_map(&basis, [0, 1, 3]),
        GroupElement::from_matrix(IntMatrix::identity(3).neg()),
    ]
}
