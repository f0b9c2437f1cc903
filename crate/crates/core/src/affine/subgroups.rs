use super::group::AffineGroup;
use std::collections::BTreeSet;

/// Subgroups are handled as sorted element-index sets into a fixed parent
/// group; the parent's Cayley table makes joins and conjugation cheap.

/// All cyclic subgroups, one index set per distinct subgroup.
pub fn cyclic_subgroups(g: &AffineGroup) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..g.order() {
        out.insert(g.span_indices(&[i]));
    }
    out.into_iter().collect()
}

/// Every subgroup, by closing the cyclic ones under pairwise joins.
/// Exponential in the worst case; intended for |G| <= 48 ambient groups.
pub fn all_subgroups(g: &AffineGroup) -> Vec<Vec<usize>> {
    let cyclics = cyclic_subgroups(g);
    let mut known: BTreeSet<Vec<usize>> = cyclics.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclics.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclics {
                if c.iter().all(|i| h.binary_search(i).is_ok()) {
                    continue;
                }
                let mut seed = h.clone();
                seed.extend_from_slice(c);
                let join = g.span_indices(&seed);
                if known.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    known.into_iter().collect()
}

fn indices_commute(g: &AffineGroup, h: &[usize]) -> bool {
    h.iter().all(|&a| h.iter().all(|&b| g.mul_index(a, b) == g.mul_index(b, a)))
}

/// Every abelian subgroup. Grown by adjoining centralizing elements, which
/// reaches any abelian subgroup one generator at a time.
pub fn abelian_subgroups(g: &AffineGroup) -> Vec<Vec<usize>> {
    let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for h in cyclic_subgroups(g) {
        if known.insert(h.clone()) {
            frontier.push(h);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for x in 0..g.order() {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                if !h.iter().all(|&a| g.mul_index(a, x) == g.mul_index(x, a)) {
                    continue;
                }
                let mut seed = h.clone();
                seed.push(x);
                let join = g.span_indices(&seed);
                if !indices_commute(g, &join) {
                    continue;
                }
                if known.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    known.into_iter().collect()
}

/// Conjugate of a subgroup index set by a group element: x^{-1} H x.
pub fn conjugate_indices(g: &AffineGroup, h: &[usize], x: usize) -> Vec<usize> {
    let xi = g.inverse_index(x);
    let mut out: Vec<usize> = h.iter().map(|&a| g.mul_index(g.mul_index(xi, a), x)).collect();
    out.sort_unstable();
    out
}

/// Deduplicate subgroups up to conjugation inside the ambient group.
pub fn dedup_up_to_conjugacy(g: &AffineGroup, subgroups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for h in subgroups {
        if seen.contains(h) {
            continue;
        }
        reps.push(h.clone());
        for x in 0..g.order() {
            seen.insert(conjugate_indices(g, h, x));
        }
    }
    reps
}

/// Normalizer N_G(H) as an index set.
pub fn normalizer_indices(g: &AffineGroup, h: &[usize]) -> Vec<usize> {
    (0..g.order()).filter(|&x| conjugate_indices(g, h, x) == h).collect()
}

fn p_part(mut m: usize, p: usize) -> usize {
    let mut q = 1;
    while m % p == 0 {
        m /= p;
        q *= p;
    }
    q
}

/// A p-Sylow subgroup, grown inside normalizers: a proper p-subgroup's
/// normalizer always contains a p-element extending it.
pub fn sylow_indices(g: &AffineGroup, p: usize) -> Vec<usize> {
    assert!(p >= 2, "p must be prime");
    let target = p_part(g.order(), p);
    let mut h = vec![g.identity_index()];
    while h.len() < target {
        let candidates = normalizer_indices(g, &h);
        let mut grown = false;
        for x in candidates {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            // A p-power-order extender always exists in the normalizer while
            // |H| is below the full p-part.
            let mut q = g.element_order(x);
            while q % p == 0 {
                q /= p;
            }
            if q != 1 {
                continue;
            }
            let mut seed = h.clone();
            seed.push(x);
            let join = g.span_indices(&seed);
            if join.len() > h.len() && p_part(join.len(), p) == join.len() {
                h = join;
                grown = true;
                break;
            }
        }
        assert!(grown, "Sylow growth stalled; group table inconsistent");
    }
    h
}

pub fn sylow(g: &AffineGroup, p: usize) -> AffineGroup {
    g.subgroup_from_indices(&sylow_indices(g, p))
}
