//! Small hand-sized free resolutions for the three 2-group families that
//! appear as cyclic-kernel extensions of the Klein action: quaternion,
//! dihedral and semidihedral. Compared to the generic builders these have
//! few free generators, so obstruction classes can be written down in the
//! same coordinates used by the published certificates.

use super::resolution::Resolution;
use super::{GroupRingElem, GroupRingMatrix};
use crate::affine::{AffineGroup, K9Family};
use crate::{Error, Result};
use std::sync::Arc;

/// Resolution of Z over Z[G] for a group presented as one of the three
/// families on generators x, y (element indices in `group`):
///
/// * quaternion Q_2^n:    x^(2^(n-2)) = y^2, x y x = y;
/// * dihedral D_2^(n-1):  y^2 = 1, x y x = y (group order 2^n);
/// * semidihedral SD_2^n: y^2 = 1, y x y = x^(2^(n-2)-1);
///
/// with x of order 2^(n-1) throughout. The quaternion complex is 4-periodic
/// and extends to any length; the other two are provided through degree 3,
/// which is as far as the downstream obstruction tests need. The presentation
/// is checked against the multiplication table, and the returned complex has
/// verified zero compositions; exactness is checked by `verify_exact` in the
/// test suite for every order in range.
pub fn periodic_resolution(
    group: &Arc<AffineGroup>,
    x: usize,
    y: usize,
    family: K9Family,
    len: usize,
) -> Result<Resolution> {
    let order = group.order();
    if !order.is_power_of_two() {
        return Err(Error::BadParameters(format!(
            "family resolutions need 2-power group order, got {order}"
        )));
    }
    let n = order.trailing_zeros();
    if n < family.min_n() {
        return Err(Error::BadParameters(format!(
            "family {} starts at order {}, got {order}",
            family.name(),
            1usize << family.min_n()
        )));
    }
    check_presentation(group, x, y, family, n)?;
    if len == 0 {
        return Err(Error::BadParameters("resolution needs at least one differential".into()));
    }
    if len > 3 && family != K9Family::Quaternion {
        return Err(Error::BadParameters(format!(
            "the {} family resolution is only available through degree 3",
            family.name()
        )));
    }

    let e = group.identity_index();
    let one = GroupRingElem::from_element(e);
    let zero = GroupRingElem::zero();
    let minus = |a: &GroupRingElem, b: &GroupRingElem| a.sub(b);
    let xg = GroupRingElem::from_element(x);
    let yg = GroupRingElem::from_element(y);
    let yx = GroupRingElem::from_element(group.mul_index(y, x));
    let d1 = GroupRingMatrix::from_rows(
        group.clone(),
        vec![vec![minus(&one, &xg), minus(&one, &yg)]],
    );

    let stack = match family {
        K9Family::Quaternion => {
            let nx = GroupRingElem::geometric_sum(group, x, 1 << (n - 2));
            let d2 = GroupRingMatrix::from_rows(
                group.clone(),
                vec![
                    vec![nx, yx.add(&one)],
                    vec![one.add(&yg).neg(), minus(&xg, &one)],
                ],
            );
            let d3 = GroupRingMatrix::from_rows(
                group.clone(),
                vec![vec![minus(&one, &xg)], vec![minus(&yx, &one)]],
            );
            let d4 = GroupRingMatrix::from_rows(group.clone(), vec![vec![GroupRingElem::norm(group)]]);
            vec![d1, d2, d3, d4]
        }
        K9Family::Dihedral => {
            let nx = GroupRingElem::geometric_sum(group, x, 1 << (n - 1));
            let d2 = GroupRingMatrix::from_rows(
                group.clone(),
                vec![
                    vec![nx.clone(), one.add(&yx), zero.clone()],
                    vec![zero.clone(), minus(&xg, &one), one.add(&yg)],
                ],
            );
            let d3 = GroupRingMatrix::from_rows(
                group.clone(),
                vec![
                    vec![minus(&one, &xg), one.add(&yg), zero.clone(), zero.clone()],
                    vec![zero.clone(), nx.neg(), minus(&one, &yx), zero.clone()],
                    vec![zero.clone(), zero.clone(), minus(&one, &xg), minus(&one, &yg)],
                ],
            );
            vec![d1, d2, d3]
        }
        K9Family::Semidihedral => {
            let q = 1usize << (n - 3);
            let xpow = |k: usize| {
                let mut p = e;
                for _ in 0..k {
                    p = group.mul_index(p, x);
                }
                GroupRingElem::from_element(p)
            };
            let l1 = minus(&xpow(q + 1), &one);
            let l2 = minus(
                &GroupRingElem::geometric_sum(group, x, q + 1),
                &GroupRingElem::geometric_sum(group, x, q - 1).mul(&yg, group),
            );
            let l3 = minus(&xpow(q - 1), &one).mul(&one.add(&yg), group);
            let l4 = minus(&xpow(q + 1), &one).mul(&minus(&xpow(q - 1), &one), group);
            let d2 = GroupRingMatrix::from_rows(
                group.clone(),
                vec![vec![l2, zero.clone()], vec![l1, one.add(&yg)]],
            );
            let d3 = GroupRingMatrix::from_rows(
                group.clone(),
                vec![vec![l3.neg(), zero.clone()], vec![l4, minus(&one, &yg)]],
            );
            vec![d1, d2, d3]
        }
    };

    // The quaternion complex repeats with period 4.
    let diffs = (0..len).map(|k| stack[k % stack.len()].clone()).collect();
    Resolution::new(group.clone(), diffs)
}

fn check_presentation(
    group: &AffineGroup,
    x: usize,
    y: usize,
    family: K9Family,
    n: u32,
) -> Result<()> {
    let e = group.identity_index();
    let fail = |what: &str| {
        Err(Error::BadParameters(format!(
            "generators do not satisfy the {} presentation: {what}",
            family.name()
        )))
    };
    if group.element_order(x) != 1usize << (n - 1) {
        return fail("x must have order 2^(n-1)");
    }
    let xyx = group.mul_index(group.mul_index(x, y), x);
    let y2 = group.mul_index(y, y);
    match family {
        K9Family::Quaternion => {
            let mut xq = e;
            for _ in 0..1usize << (n - 2) {
                xq = group.mul_index(xq, x);
            }
            if y2 != xq {
                return fail("y^2 must equal x^(2^(n-2))");
            }
            if xyx != y {
                return fail("x y x must equal y");
            }
        }
        K9Family::Dihedral => {
            if y2 != e || y == e {
                return fail("y must have order 2");
            }
            if xyx != y {
                return fail("x y x must equal y");
            }
        }
        K9Family::Semidihedral => {
            if y2 != e || y == e {
                return fail("y must have order 2");
            }
            let yxy = group.mul_index(group.mul_index(y, x), y);
            let mut xq = e;
            for _ in 0..(1usize << (n - 2)) - 1 {
                xq = group.mul_index(xq, x);
            }
            if yxy != xq {
                return fail("y x y must equal x^(2^(n-2)-1)");
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::catalogue::k9_family_group;

    fn family(f: K9Family, n: u32) -> (Arc<AffineGroup>, usize, usize) {
        let g = Arc::new(k9_family_group(f, n).unwrap());
        let x = g.index_of(&g.generators()[0]).unwrap();
        let y = g.index_of(&g.generators()[1]).unwrap();
        (g, x, y)
    }

    #[test]
    fn family_complexes_are_exact_at_every_order_in_range() {
        for n in 3..=5u32 {
            let (g, x, y) = family(K9Family::Quaternion, n);
            periodic_resolution(&g, x, y, K9Family::Quaternion, 5)
                .unwrap()
                .verify_exact(4)
                .unwrap();
            let (g, x, y) = family(K9Family::Dihedral, n);
            periodic_resolution(&g, x, y, K9Family::Dihedral, 3)
                .unwrap()
                .verify_exact(2)
                .unwrap();
        }
        for n in 4..=5u32 {
            let (g, x, y) = family(K9Family::Semidihedral, n);
            periodic_resolution(&g, x, y, K9Family::Semidihedral, 3)
                .unwrap()
                .verify_exact(2)
                .unwrap();
        }
    }

    #[test]
    fn free_ranks_match_the_family_shapes() {
        let (g, x, y) = family(K9Family::Quaternion, 4);
        let q = periodic_resolution(&g, x, y, K9Family::Quaternion, 8).unwrap();
        assert_eq!((0..=8).map(|k| q.rank(k)).collect::<Vec<_>>(), vec![1, 2, 2, 1, 1, 2, 2, 1, 1]);
        let (g, x, y) = family(K9Family::Dihedral, 4);
        let d = periodic_resolution(&g, x, y, K9Family::Dihedral, 3).unwrap();
        assert_eq!((0..=3).map(|k| d.rank(k)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        let (g, x, y) = family(K9Family::Semidihedral, 4);
        let sd = periodic_resolution(&g, x, y, K9Family::Semidihedral, 3).unwrap();
        assert_eq!((0..=3).map(|k| sd.rank(k)).collect::<Vec<_>>(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn presentation_violations_are_rejected() {
        // Swapped generators: in Q16 the second generator has order 4, not 8.
        let (g, x, y) = family(K9Family::Quaternion, 4);
        assert!(periodic_resolution(&g, y, x, K9Family::Quaternion, 3).is_err());
        // A dihedral pair does not satisfy the quaternion presentation.
        let (g, x, y) = family(K9Family::Dihedral, 3);
        assert!(periodic_resolution(&g, x, y, K9Family::Quaternion, 3).is_err());
        // Degree cap for the non-periodic families.
        let (g, x, y) = family(K9Family::Semidihedral, 4);
        assert!(periodic_resolution(&g, x, y, K9Family::Semidihedral, 4).is_err());
    }

    #[test]
    fn non_two_power_groups_are_rejected() {
        use crate::affine::GroupElement;
        use crate::exact::IntMatrix;
        let rot = GroupElement::from_matrix(IntMatrix::from_i64_rows(&[
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 0],
        ]));
        let g = Arc::new(AffineGroup::close_default(vec![rot]).unwrap());
        assert_eq!(g.order(), 3);
        assert!(periodic_resolution(&g, 0, 1, K9Family::Dihedral, 2).is_err());
    }
}
