use super::matrix::{Int, IntMatrix};
use num::traits::{Signed, Zero};
use num::Integer;

/// Row Hermite normal form. Returns (H, U) with U unimodular, U*A = H,
/// H canonical: pivot columns strictly increase, pivots positive, entries
/// above a pivot reduced into [0, pivot), zero rows at the bottom.
///
/// Pivot selection is deterministic (smallest absolute value, then lowest
/// row index), so outputs are byte-stable across runs.
pub fn hermite_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclidean elimination below row r in column c.
        loop {
            let mut best: Option<(Int, usize)> = None;
            for i in r..rows {
                let v = h.get(i, c);
                if v.is_zero() {
                    continue;
                }
                let key = v.abs();
                match &best {
                    Some((b, _)) if *b <= key => {}
                    _ => best = Some((key, i)),
                }
            }
            let Some((_, pivot_row)) = best else { break };
            h.swap_rows(r, pivot_row);
            u.swap_rows(r, pivot_row);
            let mut done = true;
            let p = h.get(r, c).clone();
            for i in r + 1..rows {
                let v = h.get(i, c).clone();
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&p);
                h.add_row_multiple(i, r, &-q.clone());
                u.add_row_multiple(i, r, &-q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // Reduce entries above the pivot into [0, pivot).
        let p = h.get(r, c).clone();
        for i in 0..r {
            let v = h.get(i, c).clone();
            let q = v.div_floor(&p);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-q.clone());
                u.add_row_multiple(i, r, &-q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Column Hermite normal form: returns (H, V) with V unimodular and
/// A*V = H, the transpose-dual of `hermite_form`.
pub fn hermite_form_cols(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (ht, ut) = hermite_form(&a.transpose());
    (ht.transpose(), ut.transpose())
}

/// Canonical basis (HNF rows, zero rows dropped) of the row space lattice.
pub fn row_space_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_form(a);
    let mut nonzero = 0;
    for i in 0..h.rows() {
        if h.row(i).iter().any(|x| !x.is_zero()) {
            nonzero = i + 1;
        }
    }
    h.submatrix_rows(0, nonzero)
}

/// Canonical basis of the intersection of two row-space lattices in the same
/// ambient Z^n. A vector lies in both spans iff it is u*A = v*B for integer
/// u, v, so the stacked left kernel of [A; -B] projects onto the valid u.
pub fn intersect_row_lattices(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.cols(), b.cols(), "ambient dimension mismatch in lattice intersection");
    let stacked = a.vstack(&b.neg());
    let rows: Vec<Vec<Int>> = super::solve::left_kernel(&stacked)
        .into_iter()
        .map(|k| a.apply_row(&k[..a.rows()]))
        .collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, a.cols())
    } else {
        row_space_basis(&IntMatrix::from_rows(rows))
    }
}

/// Saturation of the row-space lattice: the largest sublattice of Z^n with
/// the same rank whose quotient by the row space is finite. Rows of the
/// result form a basis of {x : k*x in rowspace(A) for some k != 0}.
pub fn saturation(a: &IntMatrix) -> IntMatrix {
    let d = super::snf::smith_form(a);
    let rank = d.rank();
    let vinv = d.v.inverse_unimodular();
    let rows: Vec<Vec<Int>> = (0..rank).map(|i| vinv.row_to_vec(i)).collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, a.cols())
    } else {
        row_space_basis(&IntMatrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_hnf_contract(a: &IntMatrix) {
        let (h, u) = hermite_form(a);
        assert!(u.is_unimodular(), "U not unimodular");
        assert_eq!(u.mul(a), h, "U*A != H");
        // Canonical shape: pivots positive, strictly increasing columns,
        // entries above pivots in [0, pivot).
        let mut last_col: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..h.rows() {
            let lead = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            match lead {
                None => seen_zero_row = true,
                Some(j) => {
                    assert!(!seen_zero_row, "zero row above nonzero row");
                    assert!(h.get(i, j).is_positive());
                    if let Some(lc) = last_col {
                        assert!(j > lc, "pivot columns not increasing");
                    }
                    last_col = Some(j);
                    for above in 0..i {
                        let v = h.get(above, j);
                        assert!(!v.is_negative() && v < h.get(i, j), "entry above pivot not reduced");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let (h, u) = hermite_form(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn diagonal_already_canonical() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let (h, u) = hermite_form(&a);
        assert_eq!(h, a);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn single_row_gcd_stays_in_row_form() {
        // Row style keeps [4,6] as [2,3] scaled by a unit; the gcd collapse
        // to [2,0] belongs to the column-style form below.
        let a = m(&[vec![4, 6]]);
        check_hnf_contract(&a);
        let (h, _) = hermite_form(&a);
        assert_eq!(h, m(&[vec![4, 6]]) , "1xN row HNF only normalizes sign");
    }

    #[test]
    fn column_style_collapses_to_gcd() {
        let a = m(&[vec![4, 6]]);
        let (h, v) = hermite_form_cols(&a);
        assert!(v.is_unimodular());
        assert_eq!(a.mul(&v), h);
        assert_eq!(h, m(&[vec![2, 0]]));
    }

    #[test]
    fn random_like_cases_satisfy_contract() {
        let cases = vec![
            m(&[vec![4, 6], vec![6, 9]]),
            m(&[vec![0, 0, 5], vec![0, 3, 1], vec![2, 1, 1]]),
            m(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            m(&[vec![-3, 7], vec![5, -11], vec![2, 2]]),
            m(&[vec![0, 0], vec![0, 0]]),
        ];
        for a in &cases {
            check_hnf_contract(a);
        }
    }

    #[test]
    fn hnf_is_canonical_under_row_mixing() {
        // The same row lattice must produce the same H regardless of input basis.
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let mix = m(&[vec![1, 1, 0], vec![0, 1, 0], vec![1, 2, 1]]);
        assert!(mix.is_unimodular());
        let b = mix.mul(&a);
        assert_eq!(hermite_form(&a).0, hermite_form(&b).0);
    }

    #[test]
    fn saturation_divides_out_torsion() {
        // rowspace spanned by (2,0) and (0,6) saturates to Z^2.
        let a = m(&[vec![2, 0], vec![0, 6]]);
        assert_eq!(saturation(&a), IntMatrix::identity(2));
        // rank-1 saturation: (4,6) saturates to (2,3).
        let b = m(&[vec![4, 6]]);
        assert_eq!(saturation(&b), m(&[vec![2, 3]]));
    }

    #[test]
    fn lattice_intersection_is_symmetric_and_correct() {
        // 2Z^2 meet the diagonal lattice: multiples of (2,2).
        let a = m(&[vec![2, 0], vec![0, 2]]);
        let b = m(&[vec![1, 1]]);
        assert_eq!(intersect_row_lattices(&a, &b), m(&[vec![2, 2]]));
        assert_eq!(intersect_row_lattices(&b, &a), m(&[vec![2, 2]]));
        // Intersecting with the whole space gives the lattice back.
        let full = IntMatrix::identity(2);
        assert_eq!(intersect_row_lattices(&a, &full), row_space_basis(&a));
        // Transverse lines meet only in the finite-index overlap.
        let c = m(&[vec![1, 0]]);
        let d = m(&[vec![0, 1]]);
        assert_eq!(intersect_row_lattices(&c, &d), IntMatrix::zeros(0, 2));
        // Same line with different strides meets in the lcm stride.
        let e = m(&[vec![4, 6]]);
        let f = m(&[vec![6, 9]]);
        assert_eq!(intersect_row_lattices(&e, &f), m(&[vec![12, 18]]));
    }
}
