use super::group::AffineGroup;
use crate::exact::{
    right_kernel, smith_form, solve_integer, AbelianPresentation, Int, IntMatrix,
};
use crate::{Error, Result};
use num::traits::{One, Zero};

/// Outcome of a GL_n(Z)-conjugacy test between finite matrix groups.
/// Conjugate only with an explicit unimodular witness; NotConjugate only
/// with a distinguishing conjugation invariant.
#[derive(Clone, Debug)]
pub enum ConjugacyVerdict {
    ConjugateWithWitness(IntMatrix),
    NotConjugate(Distinction),
    Inconclusive,
}

impl ConjugacyVerdict {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjugacyVerdict::ConjugateWithWitness(_))
    }
}

/// A conjugation invariant on which two groups differ.
#[derive(Clone, Debug)]
pub struct Distinction {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

/// Characteristic polynomial coefficients (monic, degree order), exact via
/// the Faddeev-LeVerrier recurrence; every division is integral.
pub fn char_poly(a: &IntMatrix) -> Vec<Int> {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![Int::zero(); n + 1];
    coeffs[0] = Int::one();
    let mut m = IntMatrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m);
        let mut tr = Int::zero();
        for i in 0..n {
            tr += am.get(i, i);
        }
        let c = -tr / Int::from(k as i64);
        coeffs[k] = c.clone();
        m = am;
        for i in 0..n {
            let v = m.get(i, i) + &c;
            m.set(i, i, v);
        }
    }
    coeffs
}

/// Conjugation invariants of a finite matrix group, comparable as values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub order: usize,
    pub char_polys: Vec<Vec<Int>>,
    pub sum_smith: Vec<Int>,
    pub fixed_rank: usize,
    pub h1_factors: Vec<Int>,
}

pub fn group_invariants(g: &AffineGroup) -> GroupInvariants {
    assert!(g.is_pure_matrix_group(), "conjugacy invariants expect matrix groups");
    let n = g.dim();
    let mut char_polys: Vec<Vec<Int>> =
        g.elements().iter().map(|e| char_poly(e.matrix_part())).collect();
    char_polys.sort();

    let mut sum = IntMatrix::zeros(n, n);
    for e in g.elements() {
        sum = sum.add(e.matrix_part());
    }
    let d = smith_form(&sum);
    let sum_smith: Vec<Int> = (0..n).map(|i| d.s.get(i, i).clone()).collect();

    // Fixed sublattice {v : v*A = v for all A}: left kernel of the
    // horizontal stack of (A - I).
    let mut stack = IntMatrix::zeros(n, 0);
    for e in g.elements() {
        let diff = e.matrix_part().sub(&IntMatrix::identity(n));
        stack = stack.hstack(&diff);
    }
    let fixed_rank = n - smith_form(&stack).rank();

    GroupInvariants {
        order: g.order(),
        char_polys,
        sum_smith,
        fixed_rank,
        h1_factors: h1_invariant_factors(g),
    }
}

/// Invariant factors of H^1(G, Z^n) for the right action v -> v*A.
/// Crossed homomorphisms are pinned by values on a generating set; the
/// cocycle relations v_{gh} = v_g*A_h + v_h for h ranging over generators
/// already imply the rest.
pub fn h1_invariant_factors(g: &AffineGroup) -> Vec<Int> {
    let n = g.dim();
    let order = g.order();
    if order == 1 || n == 0 {
        return Vec::new();
    }
    let e = g.identity_index();
    // Variable layout: v_g for g != e, n coordinates each.
    let var_of = |gi: usize| -> Option<usize> {
        if gi == e {
            None
        } else if gi < e {
            Some(gi * n)
        } else {
            Some((gi - 1) * n)
        }
    };
    let nvars = (order - 1) * n;

    let gen_indices: Vec<usize> = {
        let mut gens: Vec<usize> = g
            .generators()
            .iter()
            .filter_map(|x| g.index_of(x))
            .filter(|&i| i != e)
            .collect();
        if gens.is_empty() {
            gens = (0..order).filter(|&i| i != e).collect();
        }
        gens.sort_unstable();
        gens.dedup();
        gens
    };

    let mut rows: Vec<Vec<Int>> = Vec::new();
    for gi in 0..order {
        if gi == e {
            continue;
        }
        for &hi in &gen_indices {
            let ghi = g.mul_index(gi, hi);
            let ah = g.element(hi).matrix_part();
            for j in 0..n {
                let mut row = vec![Int::zero(); nvars];
                let base_g = var_of(gi).expect("g != e");
                for i in 0..n {
                    row[base_g + i] += ah.get(i, j);
                }
                if let Some(base_h) = var_of(hi) {
                    row[base_h + j] += 1;
                }
                if let Some(base_gh) = var_of(ghi) {
                    row[base_gh + j] -= 1;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let relations = if rows.is_empty() {
        IntMatrix::zeros(0, nvars)
    } else {
        IntMatrix::from_rows(rows)
    };

    let kernel = right_kernel(&relations);
    if kernel.is_empty() {
        return Vec::new();
    }
    let dim = kernel.len();
    let kmat = IntMatrix::from_fn(nvars, dim, |i, j| kernel[j][i].clone());

    // Coboundaries: m = e_i gives the cocycle g -> e_i*A_g - e_i.
    let mut rel_rows = Vec::new();
    for i in 0..n {
        let mut b = vec![Int::zero(); nvars];
        for gi in 0..order {
            let Some(base) = var_of(gi) else { continue };
            let a = g.element(gi).matrix_part();
            for j in 0..n {
                b[base + j] = a.get(i, j) - Int::from((i == j) as i64);
            }
        }
        let (sol, _) = solve_integer(&kmat, &b);
        let coords = sol.expect("coboundaries lie in the cocycle lattice");
        rel_rows.push(coords);
    }
    let pres =
        AbelianPresentation::from_row_relations(dim, &IntMatrix::from_rows(rel_rows));
    assert_eq!(pres.rank(), 0, "H^1 of a finite group on a lattice is finite");
    pres.torsion_factors()
}

fn distinction<T: std::fmt::Debug + PartialEq>(
    name: &str,
    left: &T,
    right: &T,
) -> Option<Distinction> {
    (left != right).then(|| Distinction {
        invariant: name.to_string(),
        left: format!("{left:?}"),
        right: format!("{right:?}"),
    })
}

pub fn invariant_distinction(a: &GroupInvariants, b: &GroupInvariants) -> Option<Distinction> {
    distinction("group order", &a.order, &b.order)
        .or_else(|| distinction("characteristic polynomial multiset", &a.char_polys, &b.char_polys))
        .or_else(|| distinction("Smith form of the element sum", &a.sum_smith, &b.sum_smith))
        .or_else(|| distinction("fixed-lattice rank", &a.fixed_rank, &b.fixed_rank))
        .or_else(|| distinction("H^1(G, Z^n) invariant factors", &a.h1_factors, &b.h1_factors))
}

/// Greedy small generating set (indices) of a closed group.
pub fn generating_indices(g: &AffineGroup) -> Vec<usize> {
    let order = g.order();
    if order == 1 {
        return Vec::new();
    }
    let mut by_order: Vec<usize> = (0..order).filter(|&i| i != g.identity_index()).collect();
    by_order.sort_by_key(|&i| (std::cmp::Reverse(g.element_order(i)), i));
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![g.identity_index()];
    for &cand in &by_order {
        if span.binary_search(&cand).is_ok() {
            continue;
        }
        gens.push(cand);
        let mut seed = gens.clone();
        seed.extend_from_slice(&span);
        span = g.span_indices(&seed);
        if span.len() == order {
            break;
        }
    }
    assert_eq!(span.len(), order, "generating search failed");
    gens
}

/// All isomorphisms H1 -> H2 that preserve characteristic polynomials
/// elementwise (the ones a conjugation could induce), as index maps.
fn char_compatible_isomorphisms(h1: &AffineGroup, h2: &AffineGroup) -> Vec<Vec<usize>> {
    let order = h1.order();
    assert_eq!(order, h2.order());
    if order == 1 {
        return vec![vec![h2.identity_index()]];
    }
    let gens = generating_indices(h1);

    // BFS words over the generators for every element of H1.
    let mut word: Vec<Option<(usize, usize)>> = vec![None; order]; // (parent, gen slot)
    let mut bfs = vec![h1.identity_index()];
    let mut seen = vec![false; order];
    seen[h1.identity_index()] = true;
    let mut head = 0;
    while head < bfs.len() {
        let cur = bfs[head];
        head += 1;
        for (slot, &gi) in gens.iter().enumerate() {
            let nxt = h1.mul_index(cur, gi);
            if !seen[nxt] {
                seen[nxt] = true;
                word[nxt] = Some((cur, slot));
                bfs.push(nxt);
            }
        }
    }

    let cp1: Vec<Vec<Int>> = (0..order).map(|i| char_poly(h1.element(i).matrix_part())).collect();
    let cp2: Vec<Vec<Int>> =
        (0..h2.order()).map(|i| char_poly(h2.element(i).matrix_part())).collect();
    let ord1: Vec<usize> = (0..order).map(|i| h1.element_order(i)).collect();
    let ord2: Vec<usize> = (0..order).map(|i| h2.element_order(i)).collect();

    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gi| {
            (0..order)
                .filter(|&hj| ord2[hj] == ord1[gi] && cp2[hj] == cp1[gi])
                .collect()
        })
        .collect();
    if candidates.iter().any(|c: &Vec<usize>| c.is_empty()) {
        return Vec::new();
    }

    let mut isos = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();

        // Extend along BFS words, then verify the full multiplication table.
        let mut phi = vec![usize::MAX; order];
        phi[h1.identity_index()] = h2.identity_index();
        for &el in &bfs {
            if let Some((parent, slot)) = word[el] {
                phi[el] = h2.mul_index(phi[parent], images[slot]);
            }
        }
        let mut used = vec![false; order];
        let bijective = phi.iter().all(|&v| {
            if v == usize::MAX || used[v] {
                false
            } else {
                used[v] = true;
                true
            }
        });
        if bijective {
            let hom = (0..order).all(|i| {
                (0..order).all(|j| phi[h1.mul_index(i, j)] == h2.mul_index(phi[i], phi[j]))
            });
            let char_ok = hom && (0..order).all(|i| cp1[i] == cp2[phi[i]]);
            if hom && char_ok {
                isos.push(phi);
            }
        }

        // Odometer over candidate tuples.
        let mut pos = 0;
        loop {
            if pos == gens.len() {
                break 'outer;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
    isos
}

/// Solution lattice of {X*A_g = B_g*X over the generators}, as matrices.
fn intertwiner_lattice(
    h1: &AffineGroup,
    h2: &AffineGroup,
    gens: &[usize],
    phi: &[usize],
) -> Vec<IntMatrix> {
    let n = h1.dim();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for &gi in gens {
        let a = h1.element(gi).matrix_part();
        let b = h2.element(phi[gi]).matrix_part();
        for i in 0..n {
            for j in 0..n {
                // A*X = X*B makes X^{-1}*A*X = B:
                // (X*B)_{ij} - (A*X)_{ij} = sum_k X_{ik} B_{kj} - A_{ik} X_{kj}
                let mut row = vec![Int::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += b.get(k, j);
                    row[k * n + j] -= a.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let mat = IntMatrix::from_rows(rows);
    right_kernel(&mat)
        .into_iter()
        .map(|v| IntMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .collect()
}

/// Search the intertwiner lattice for a unimodular element, coefficients in
/// boxes of growing radius. Returns (witness, exhausted-within-radius).
fn unimodular_in_lattice(basis: &[IntMatrix], radii: &[i64], budget: usize) -> (Option<IntMatrix>, bool) {
    let m = basis.len();
    if m == 0 {
        return (None, true);
    }
    let n = basis[0].rows();
    let mut spent = 0usize;
    let mut exhausted = true;
    for &r in radii {
        let width = (2 * r + 1) as usize;
        let count = width.checked_pow(m as u32);
        if count.is_none() || count.unwrap() > budget.saturating_sub(spent) {
            exhausted = false;
            break;
        }
        let total = count.unwrap();
        for idx in 0..total {
            let mut rem = idx;
            let mut x = IntMatrix::zeros(n, n);
            let mut all_zero = true;
            for b in basis {
                let c = (rem % width) as i64 - r;
                rem /= width;
                if c != 0 {
                    all_zero = false;
                    x = x.add(&b.scale(&Int::from(c)));
                }
            }
            spent += 1;
            if all_zero {
                continue;
            }
            let d = x.det();
            if d == Int::one() || d == -Int::one() {
                return (Some(x), true);
            }
        }
    }
    (None, exhausted)
}

const SEARCH_RADII: &[i64] = &[1, 2, 4];
const SEARCH_BUDGET: usize = 2_000_000;

/// Decide GL_n(Z)-conjugacy of two finite matrix groups.
pub fn glnz_conjugate(h1: &AffineGroup, h2: &AffineGroup) -> Result<ConjugacyVerdict> {
    if h1.dim() != h2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix groups of dimension {} and {}",
            h1.dim(),
            h2.dim()
        )));
    }
    assert!(h1.is_pure_matrix_group() && h2.is_pure_matrix_group());

    if h1.order() == h2.order()
        && h1.elements().iter().zip(h2.elements()).all(|(a, b)| a == b)
    {
        return Ok(ConjugacyVerdict::ConjugateWithWitness(IntMatrix::identity(h1.dim())));
    }

    let inv1 = group_invariants(h1);
    let inv2 = group_invariants(h2);
    if let Some(d) = invariant_distinction(&inv1, &inv2) {
        return Ok(ConjugacyVerdict::NotConjugate(d));
    }

    let isos = char_compatible_isomorphisms(h1, h2);
    if isos.is_empty() {
        return Ok(ConjugacyVerdict::NotConjugate(Distinction {
            invariant: "character-compatible isomorphism".to_string(),
            left: "none exists onto the right group".to_string(),
            right: "exhaustive generator-image search".to_string(),
        }));
    }

    let gens = generating_indices(h1);
    for phi in &isos {
        let basis = intertwiner_lattice(h1, h2, &gens, phi);
        let (witness, _exhausted) =
            unimodular_in_lattice(&basis, SEARCH_RADII, SEARCH_BUDGET / isos.len().max(1));
        if let Some(x) = witness {
            debug_assert!(verify_conjugation(h1, h2, &x));
            return Ok(ConjugacyVerdict::ConjugateWithWitness(x));
        }
    }
    // A bounded box search cannot certify absence; report honestly.
    Ok(ConjugacyVerdict::Inconclusive)
}

/// Check that x^{-1} g x lands in h2 for every generator g of h1.
pub fn verify_conjugation(h1: &AffineGroup, h2: &AffineGroup, x: &IntMatrix) -> bool {
    if !x.is_unimodular() {
        return false;
    }
    let xi = x.inverse_unimodular();
    let gens: Vec<&IntMatrix> = if h1.generators().is_empty() {
        h1.elements().iter().map(|e| e.matrix_part()).collect()
    } else {
        h1.generators().iter().map(|e| e.matrix_part()).collect()
    };
    gens.iter().all(|a| {
        let conj = xi.mul(a).mul(x);
        h2.elements().iter().any(|e| e.matrix_part() == &conj)
    })
}

/// True iff some subgroup of g is GL_n(Z)-conjugate to the target group.
/// Inconclusive subgroup comparisons become an explicit error rather than a
/// silent false.
pub fn contains_conjugate_subgroup(g: &AffineGroup, target: &AffineGroup) -> Result<bool> {
    assert!(g.is_pure_matrix_group() && target.is_pure_matrix_group());
    if g.dim() != target.dim() {
        return Err(Error::DimensionMismatch(format!(
            "groups of dimension {} and {}",
            g.dim(),
            target.dim()
        )));
    }
    if g.order() % target.order() != 0 {
        return Ok(false);
    }
    let subs = super::subgroups::all_subgroups(g);
    let candidates: Vec<&Vec<usize>> =
        subs.iter().filter(|s| s.len() == target.order()).collect();
    let mut saw_inconclusive = false;
    for s in candidates {
        let h = g.subgroup_from_indices(s);
        match glnz_conjugate(&h, target)? {
            ConjugacyVerdict::ConjugateWithWitness(_) => return Ok(true),
            ConjugacyVerdict::NotConjugate(_) => {}
            ConjugacyVerdict::Inconclusive => saw_inconclusive = true,
        }
    }
    if saw_inconclusive {
        return Err(Error::InconclusiveConjugacy { order: target.order() });
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::element::GroupElement;

    fn mat_group(gens: &[&[Vec<i64>]]) -> AffineGroup {
        let els: Vec<GroupElement> = gens
            .iter()
            .map(|rows| GroupElement::from_matrix(IntMatrix::from_i64_rows(rows)))
            .collect();
        AffineGroup::close_default(els).unwrap()
    }

    #[test]
    fn char_poly_matches_hand_values() {
        let a = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(char_poly(&a), vec![Int::from(1), Int::from(0), Int::from(-1)]);
        let b = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(char_poly(&b), vec![Int::from(1), Int::from(-5), Int::from(6)]);
        let c = IntMatrix::from_i64_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(
            char_poly(&c),
            vec![Int::from(1), Int::from(0), Int::from(0), Int::from(-1)]
        );
    }

    #[test]
    fn conjugates_of_a_group_are_detected_with_witness() {
        let h1 = mat_group(&[&[vec![0, 1], vec![1, 0]]]);
        // Conjugate by U = [[1,1],[0,1]].
        let u = IntMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]);
        let ui = u.inverse_unimodular();
        let conj = ui.mul(&IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])).mul(&u);
        let rows: Vec<Vec<i64>> = conj
            .to_i64_rows()
            .unwrap();
        let h2 = mat_group(&[&rows]);
        let verdict = glnz_conjugate(&h1, &h2).unwrap();
        match verdict {
            ConjugacyVerdict::ConjugateWithWitness(x) => {
                assert!(verify_conjugation(&h1, &h2, &x));
            }
            other => panic!("expected conjugacy, got {other:?}"),
        }
    }

    #[test]
    fn minus_identity_is_not_conjugate_to_a_reflection() {
        // Both order 2, but -I is central with fixed rank 0; a reflection
        // fixes a line.
        let h1 = mat_group(&[&[vec![-1, 0], vec![0, -1]]]);
        let h2 = mat_group(&[&[vec![1, 0], vec![0, -1]]]);
        match glnz_conjugate(&h1, &h2).unwrap() {
            ConjugacyVerdict::NotConjugate(d) => {
                assert_eq!(d.invariant, "characteristic polynomial multiset");
            }
            other => panic!("expected distinction, got {other:?}"),
        }
    }

    #[test]
    fn swap_and_diagonal_reflections_differ_in_two_dimensions() {
        // diag(1,-1) and the swap have equal characteristic polynomials; the
        // fixed lattice of the swap is spanned by (1,1) and the quotient
        // H^1 distinguishes the classes.
        let h1 = mat_group(&[&[vec![0, 1], vec![1, 0]]]);
        let h2 = mat_group(&[&[vec![1, 0], vec![0, -1]]]);
        match glnz_conjugate(&h1, &h2).unwrap() {
            ConjugacyVerdict::NotConjugate(d) => {
                assert!(
                    d.invariant.contains("H^1") || d.invariant.contains("Smith"),
                    "unexpected invariant {d:?}"
                );
            }
            other => panic!("expected distinction, got {other:?}"),
        }
    }

    #[test]
    fn h1_of_minus_identity_in_rank_two_is_two_torsion() {
        // H^1(C2, Z^2) for -I is (Z/2)^2.
        let g = mat_group(&[&[vec![-1, 0], vec![0, -1]]]);
        assert_eq!(h1_invariant_factors(&g), vec![Int::from(2), Int::from(2)]);
        // For the swap action H^1 vanishes.
        let s = mat_group(&[&[vec![0, 1], vec![1, 0]]]);
        assert!(h1_invariant_factors(&s).is_empty());
    }

    #[test]
    fn subgroup_containment_up_to_conjugacy() {
        // The full diagonal group contains a conjugate of the swap? No:
        // the swap class is distinct from every diagonal involution class.
        let diag = mat_group(&[
            &[vec![-1, 0], vec![0, 1]],
            &[vec![1, 0], vec![0, -1]],
        ]);
        let swap = mat_group(&[&[vec![0, 1], vec![1, 0]]]);
        assert!(!contains_conjugate_subgroup(&diag, &swap).unwrap());
        // It does contain -I on the nose.
        let eta = mat_group(&[&[vec![-1, 0], vec![0, -1]]]);
        assert!(contains_conjugate_subgroup(&diag, &eta).unwrap());
    }
}
