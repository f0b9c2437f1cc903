use super::matrix::{Int, IntMatrix};
use super::qmodz::QmodZVector;
use super::snf::smith_form;
use num::traits::Zero;

/// Integer solutions of A*x = b (x a column vector). Returns a particular
/// solution if one exists, plus a basis of the right kernel {x : A*x = 0};
/// together they span all solutions.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> (Option<Vec<Int>>, Vec<Vec<Int>>) {
    assert_eq!(b.len(), a.rows(), "rhs length mismatch");
    let d = smith_form(a);
    let rank = d.rank();
    let ub = d.u.apply_col(b);
    let mut y = vec![Int::zero(); a.cols()];
    let mut solvable = true;
    for i in 0..a.rows() {
        if i < rank {
            let s = d.s.get(i, i);
            if (&ub[i] % s).is_zero() {
                y[i] = &ub[i] / s;
            } else {
                solvable = false;
                break;
            }
        } else if !ub[i].is_zero() {
            solvable = false;
            break;
        }
    }
    let kernel: Vec<Vec<Int>> = (rank..a.cols()).map(|i| d.v.col_to_vec(i)).collect();
    let solution = if solvable { Some(d.v.apply_col(&y)) } else { None };
    (solution, kernel)
}

/// Row-convention solve: x*A = b for a row vector x.
pub fn solve_left(a: &IntMatrix, b: &[Int]) -> (Option<Vec<Int>>, Vec<Vec<Int>>) {
    solve_integer(&a.transpose(), b)
}

/// Basis of the left kernel {x : x*A = 0}, as rows.
pub fn left_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let (_, k) = solve_left(a, &vec![Int::zero(); a.cols()]);
    k
}

/// Basis of the right kernel {x : A*x = 0}, as columns returned as vectors.
pub fn right_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let (_, k) = solve_integer(a, &vec![Int::zero(); a.rows()]);
    k
}

/// Solve A*u = v over Q/Z for u in (Q/Z)^cols. Returns a witness iff the
/// system is solvable. Solvability criterion via Smith form: after
/// transforming v by U, the components beyond the rank must vanish mod 1;
/// components hitting a nonzero diagonal entry are always solvable because
/// Q/Z is divisible.
pub fn solve_mod1(a: &IntMatrix, v: &QmodZVector) -> Option<QmodZVector> {
    assert_eq!(v.len(), a.rows(), "rhs length mismatch");
    let d = smith_form(a);
    let rank = d.rank();
    let uv = v.apply_int_matrix_col(&d.u);
    let mut w = QmodZVector::zero(a.cols());
    for i in 0..a.rows() {
        if i < rank {
            w.set(i, uv.get(i).div_by_int(d.s.get(i, i)));
        } else if !uv.get(i).is_zero() {
            return None;
        }
    }
    Some(w.apply_int_matrix_col(&d.v))
}

/// Convenience: does v lie in the row lattice of A? (x*A = v solvable over Z)
pub fn in_row_space(a: &IntMatrix, v: &[Int]) -> bool {
    solve_left(a, v).0.is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QmodZ;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn identity_solves_trivially() {
        let (x, k) = solve_integer(&IntMatrix::identity(3), &iv(&[5, -2, 7]));
        assert_eq!(x, Some(iv(&[5, -2, 7])));
        assert!(k.is_empty());
    }

    #[test]
    fn parity_obstruction() {
        let (x, _) = solve_integer(&m(&[vec![2]]), &iv(&[3]));
        assert!(x.is_none());
        let (x, k) = solve_integer(&m(&[vec![2]]), &iv(&[4]));
        assert_eq!(x, Some(iv(&[2])));
        assert!(k.is_empty());
    }

    #[test]
    fn kernel_spans_solution_space() {
        // A = [1 1 1] as a 1x3 row: solutions of A*x = 3 form a 2-parameter family.
        let a = m(&[vec![1, 1, 1]]);
        let (x, k) = solve_integer(&a, &iv(&[3]));
        let x = x.unwrap();
        assert_eq!(a.apply_col(&x), iv(&[3]));
        assert_eq!(k.len(), 2);
        for kv in &k {
            assert_eq!(a.apply_col(kv), iv(&[0]));
        }
    }

    #[test]
    fn brute_force_completeness_small_boxes() {
        // Systems with all solutions in a small box; solver must agree with
        // exhaustive search about solvability.
        let cases = vec![
            (m(&[vec![2, 1], vec![0, 3]]), iv(&[1, 3])),
            (m(&[vec![2, 4], vec![1, 2]]), iv(&[2, 1])),
            (m(&[vec![2, 4], vec![1, 2]]), iv(&[2, 2])),
            (m(&[vec![3, 0], vec![0, 0]]), iv(&[6, 0])),
            (m(&[vec![3, 0], vec![0, 0]]), iv(&[6, 1])),
        ];
        for (a, b) in cases {
            let (x, _) = solve_integer(&a, &b);
            let mut found = false;
            for p in -12i64..=12 {
                for q in -12i64..=12 {
                    if a.apply_col(&iv(&[p, q])) == b {
                        found = true;
                    }
                }
            }
            assert_eq!(x.is_some(), found, "disagreement on {:?} {:?}", a, b);
            if let Some(x) = x {
                assert_eq!(a.apply_col(&x), b, "returned non-solution");
            }
        }
    }

    #[test]
    fn mod1_divisibility() {
        let a = m(&[vec![2]]);
        let v = QmodZVector::from_fractions(&[(1, 2)]);
        let u = solve_mod1(&a, &v).unwrap();
        assert_eq!(u.get(0), QmodZ::new(1, 4));
    }

    #[test]
    fn mod1_zero_map_unsolvable() {
        let a = m(&[vec![0]]);
        let v = QmodZVector::from_fractions(&[(1, 2)]);
        assert!(solve_mod1(&a, &v).is_none());
    }

    #[test]
    fn mod1_mixed_rank() {
        let a = m(&[vec![1, 0], vec![0, 0]]);
        let v = QmodZVector::from_fractions(&[(1, 3), (0, 1)]);
        let u = solve_mod1(&a, &v).unwrap();
        assert_eq!(a.apply_col_mod1(&u), v);
        let bad = QmodZVector::from_fractions(&[(1, 3), (1, 2)]);
        assert!(solve_mod1(&a, &bad).is_none());
    }

    #[test]
    fn mod1_witness_always_verifies() {
        let cases = vec![
            m(&[vec![2, 3], vec![4, 1]]),
            m(&[vec![2, 4], vec![1, 2]]),
            m(&[vec![0, 1], vec![0, 2]]),
            m(&[vec![6, 2], vec![3, 1]]),
        ];
        let rhss = vec![
            QmodZVector::from_fractions(&[(1, 2), (1, 3)]),
            QmodZVector::from_fractions(&[(1, 4), (3, 4)]),
            QmodZVector::from_fractions(&[(2, 5), (0, 1)]),
        ];
        for a in &cases {
            for v in &rhss {
                if let Some(u) = solve_mod1(a, v) {
                    assert_eq!(a.apply_col_mod1(&u), *v, "witness fails for {:?}", a);
                }
            }
        }
    }
}
