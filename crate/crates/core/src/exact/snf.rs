use super::matrix::{Int, IntMatrix};
use num::traits::{Signed, Zero};
use num::Integer;

/// Smith normal form data: U*A*V = S with U, V unimodular and S diagonal,
/// nonnegative, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).filter(|&i| !self.s.get(i, i).is_zero()).count()
    }

    /// Nonzero diagonal entries in divisibility order.
    pub fn elementary_divisors(&self) -> Vec<Int> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }
}

/// Deterministic Smith normal form. Pivoting always selects the smallest
/// absolute value (ties broken by row, then column index), so the output is
/// stable across runs for golden tests.
pub fn smith_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);

    let mut t = 0;
    while t < n {
        // Locate pivot: minimal nonzero absolute value in the trailing block.
        let mut best: Option<(Int, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let val = s.get(i, j);
                if val.is_zero() {
                    continue;
                }
                let key = val.abs();
                match &best {
                    Some((b, _, _)) if *b <= key => {}
                    _ => best = Some((key, i, j)),
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear row t and column t; repeat until both are clean, re-pivoting
        // on the smallest remainder whenever one appears.
        loop {
            let mut dirty = false;
            let p = s.get(t, t).clone();
            for i in t + 1..rows {
                let x = s.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                if !s.get(i, t).is_zero() {
                    // Remainder is smaller than |p|; promote it.
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            let p = s.get(t, t).clone();
            for j in t + 1..cols {
                let x = s.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                if !s.get(t, j).is_zero() {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // Column clearing may have refilled the column only via the
            // pivot row, which we handled; both clean here.
            break;
        }

        // Enforce the divisibility chain: the pivot must divide every entry
        // of the trailing block.
        let p = s.get(t, t).clone();
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(s.get(i, j) % &p).is_zero() {
                    // Fold row i into row t to expose a smaller pivot.
                    s.add_row_multiple(t, i, &Int::from(1));
                    u.add_row_multiple(t, i, &Int::from(1));
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue; // redo position t with the enlarged row
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { u, s, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_contract(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_form(a);
        assert!(d.u.is_unimodular(), "U not unimodular");
        assert!(d.v.is_unimodular(), "V not unimodular");
        assert_eq!(d.u.mul(a).mul(&d.v), d.s, "U*A*V != S");
        let n = a.rows().min(a.cols());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!(d.s.get(i, j).is_zero(), "S not diagonal");
                }
            }
            assert!(!d.s.get(i, i).is_negative(), "negative diagonal");
        }
        let divs: Vec<Int> = (0..n).map(|i| d.s.get(i, i).clone()).collect();
        for w in divs.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            } else {
                assert!(w[1].is_zero(), "nonzero after zero on diagonal");
            }
        }
        // Reconstruction A = U^-1 * S * V^-1.
        let ui = d.u.inverse_unimodular();
        let vi = d.v.inverse_unimodular();
        assert_eq!(ui.mul(&d.s).mul(&vi), *a);
        d
    }

    #[test]
    fn identity_case() {
        let d = check_contract(&IntMatrix::identity(3));
        assert_eq!(d.s, IntMatrix::identity(3));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let d = check_contract(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d.s, m(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn rectangular_and_torsion_cases() {
        let d = check_contract(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        let divs = d.elementary_divisors();
        // gcd of entries is 2; the chain multiplies up to |det| of a full-rank minor.
        assert_eq!(divs[0], Int::from(2));
        check_contract(&m(&[vec![4, 6]]));
        check_contract(&m(&[vec![0, 0], vec![0, 0]]));
        check_contract(&m(&[vec![6], vec![10], vec![15]]));
        check_contract(&m(&[vec![1, 2, 3], vec![4, 5, 6]]));
    }

    #[test]
    fn divisibility_forcing_case() {
        // Classic case where naive diagonal collection gives (2, 3): the
        // chain must repair it to (1, 6).
        let d = check_contract(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d.elementary_divisors(), vec![Int::from(1), Int::from(6)]);
        let d2 = check_contract(&m(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]));
        assert_eq!(
            d2.elementary_divisors(),
            vec![Int::from(2), Int::from(2), Int::from(60)]
        );
    }
}
