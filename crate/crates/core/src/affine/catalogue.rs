use super::element::GroupElement;
use super::group::AffineGroup;
use crate::exact::{IntMatrix, QmodZ, QmodZVector};
use crate::{Error, Result};

/// Named generator set. Descriptions state what the generators are; the
/// matrices themselves are the contract and are exercised digit-for-digit by
/// the census and reproduction suites.
#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub generators: Vec<GroupElement>,
}

impl CatalogueEntry {
    pub fn group(&self) -> AffineGroup {
        AffineGroup::close_default(self.generators.clone())
            .expect("catalogue entries close to small finite groups")
    }
}

fn m(rows: &[[i64; 3]; 3]) -> GroupElement {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    GroupElement::from_matrix(IntMatrix::from_i64_rows(&rows))
}

fn m2(rows: &[[i64; 2]; 2]) -> GroupElement {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    GroupElement::from_matrix(IntMatrix::from_i64_rows(&rows))
}

pub fn eta() -> GroupElement {
    m(&[[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
}

/// The two rank-3 monomial involutions generating the distinguished Klein
/// four-group K9.
pub fn k9_matrices() -> [GroupElement; 2] {
    [
        m(&[[0, 1, -1], [1, 0, -1], [0, 0, -1]]),
        m(&[[-1, 0, 0], [-1, 0, 1], [-1, 1, 0]]),
    ]
}

pub fn entries() -> Vec<CatalogueEntry> {
    let k9 = k9_matrices();
    vec![
        CatalogueEntry {
            name: "eta",
            description: "central inversion -I",
            generators: vec![eta()],
        },
        CatalogueEntry {
            name: "iota1",
            description: "involution diag(1,-1,-1)",
            generators: vec![m(&[[1, 0, 0], [0, -1, 0], [0, 0, -1]])],
        },
        CatalogueEntry {
            name: "iota2",
            description: "involution diag(1,1,-1)",
            generators: vec![m(&[[1, 0, 0], [0, 1, 0], [0, 0, -1]])],
        },
        CatalogueEntry {
            name: "iota3",
            description: "involution swapping the first two coordinates",
            generators: vec![m(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]])],
        },
        CatalogueEntry {
            name: "iota4",
            description: "involution swapping the first two coordinates and negating the third",
            generators: vec![m(&[[0, 1, 0], [1, 0, 0], [0, 0, -1]])],
        },
        CatalogueEntry {
            name: "theta1",
            description: "order-4 rotation fixing the first axis",
            generators: vec![m(&[[1, 0, 0], [0, 0, 1], [0, -1, 0]])],
        },
        CatalogueEntry {
            name: "theta2",
            description: "order-4 rotation about the first axis composed with negation of that axis",
            generators: vec![m(&[[-1, 0, 0], [0, 0, 1], [0, -1, 0]])],
        },
        CatalogueEntry {
            name: "theta3",
            description: "order-4 monomial element cycling e1 through -(e1+e2+e3)",
            generators: vec![m(&[[-1, -1, -1], [1, 0, 0], [0, 1, 0]])],
        },
        CatalogueEntry {
            name: "theta4",
            description: "order-4 monomial element cycling e1 through e1+e2+e3",
            generators: vec![m(&[[1, 1, 1], [-1, 0, 0], [0, -1, 0]])],
        },
        CatalogueEntry {
            name: "K1",
            description: "Klein four-group of diagonal sign changes, class 1 of 9",
            generators: vec![
                m(&[[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
                m(&[[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
            ],
        },
        CatalogueEntry {
            name: "K2",
            description: "Klein four-group of diagonal sign changes, class 2 of 9",
            generators: vec![
                m(&[[1, 0, 0], [0, 1, 0], [0, 0, -1]]),
                m(&[[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
            ],
        },
        CatalogueEntry {
            name: "K3",
            description: "Klein four-group mixing a sign change with an outer swap, class 3 of 9",
            generators: vec![
                m(&[[1, 0, 0], [0, -1, 0], [0, 0, 1]]),
                m(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
            ],
        },
        CatalogueEntry {
            name: "K4",
            description: "Klein four-group mixing a sign change with an outer swap, class 4 of 9",
            generators: vec![
                m(&[[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
                m(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
            ],
        },
        CatalogueEntry {
            name: "K5",
            description: "Klein four-group mixing a sign change with a signed swap, class 5 of 9",
            generators: vec![
                m(&[[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
                m(&[[0, 0, 1], [0, -1, 0], [1, 0, 0]]),
            ],
        },
        CatalogueEntry {
            name: "K6",
            description: "Klein four-group of non-diagonalizable monomial type, class 6 of 9",
            generators: vec![
                m(&[[0, 0, 1], [-1, -1, -1], [1, 0, 0]]),
                m(&[[-1, -1, -1], [0, 0, 1], [0, 1, 0]]),
            ],
        },
        CatalogueEntry {
            name: "K7",
            description: "Klein four-group from a swap and a projective-plane style flip, class 7 of 9",
            generators: vec![
                m(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
                m(&[[1, 0, 0], [0, 1, 0], [-1, -1, -1]]),
            ],
        },
        CatalogueEntry {
            name: "K8",
            description: "Klein four-group of mixed monomial type, class 8 of 9",
            generators: vec![
                m(&[[1, 1, 1], [0, 0, -1], [0, -1, 0]]),
                m(&[[0, 0, 1], [-1, -1, -1], [1, 0, 0]]),
            ],
        },
        CatalogueEntry {
            name: "K9",
            description: "distinguished Klein four-group obstructing unirationality, class 9 of 9",
            generators: k9.to_vec(),
        },
        CatalogueEntry {
            name: "tau1",
            description: "involution of the quadric-cone fan exchanging two rays",
            generators: vec![m(&[[1, 0, 0], [-1, -1, -1], [0, 0, 1]])],
        },
        CatalogueEntry {
            name: "tau2",
            description: "order-4 symmetry of the quadric-cone fan",
            generators: vec![m(&[[1, 1, 1], [-1, 0, 0], [0, -1, 0]])],
        },
        CatalogueEntry {
            name: "c2d4a",
            description: "2-Sylow C2xD4 triple stabilizing the sign-permutation fan",
            generators: vec![
                m(&[[0, 0, 1], [0, 1, 0], [-1, 0, 0]]),
                eta(),
                m(&[[-1, 0, 0], [0, 1, 0], [0, 0, 1]]),
            ],
        },
        CatalogueEntry {
            name: "c2d4b",
            description: "2-Sylow C2xD4 triple realized on the subdivided models up to conjugation",
            generators: vec![
                m(&[[0, 0, 1], [-1, -1, -1], [1, 0, 0]]),
                eta(),
                m(&[[1, 0, 0], [0, 1, 0], [-1, -1, -1]]),
            ],
        },
        CatalogueEntry {
            name: "badC2C4",
            description: "C2xC4 with a monomial four-cycle and central inversion, obstructing stable linearizability",
            generators: vec![m(&[[0, 1, 0], [0, 0, 1], [-1, -1, -1]]), eta()],
        },
        CatalogueEntry {
            name: "badC2cubed",
            description: "C2^3 generated by the class-6 Klein group and central inversion, obstructing stable linearizability",
            generators: vec![
                m(&[[0, 0, 1], [-1, -1, -1], [1, 0, 0]]),
                m(&[[-1, -1, -1], [0, 0, 1], [0, 1, 0]]),
                eta(),
            ],
        },
        CatalogueEntry {
            name: "c3cyc",
            description: "order-3 cyclic permutation of the coordinates",
            generators: vec![m(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]])],
        },
        CatalogueEntry {
            name: "c3prod",
            description: "order-3 rotation fixing the first axis",
            generators: vec![m(&[[1, 0, 0], [0, -1, -1], [0, 1, 0]])],
        },
        CatalogueEntry {
            name: "example62",
            description: "dihedral order-8 action with torsion translation, the exceptional worked example",
            generators: example62_generators(),
        },
        // Rank-2 entries used by the surface classifier.
        CatalogueEntry {
            name: "minus2d",
            description: "central inversion -I in rank 2",
            generators: vec![m2(&[[-1, 0], [0, -1]])],
        },
        CatalogueEntry {
            name: "diag2d",
            description: "involution diag(-1,1) in rank 2",
            generators: vec![m2(&[[-1, 0], [0, 1]])],
        },
        CatalogueEntry {
            name: "swap2d",
            description: "coordinate swap in rank 2",
            generators: vec![m2(&[[0, 1], [1, 0]])],
        },
        CatalogueEntry {
            name: "rot3",
            description: "order-3 rotation preserving the hexagon fan",
            generators: vec![m2(&[[0, 1], [-1, -1]])],
        },
        CatalogueEntry {
            name: "rot4",
            description: "order-4 rotation preserving the square fan",
            generators: vec![m2(&[[0, 1], [-1, 0]])],
        },
        CatalogueEntry {
            name: "rot6",
            description: "order-6 rotation preserving the hexagon fan",
            generators: vec![m2(&[[1, 1], [-1, 0]])],
        },
        CatalogueEntry {
            name: "d4square",
            description: "full symmetry group of the square fan, order 8",
            generators: vec![m2(&[[0, 1], [-1, 0]]), m2(&[[0, 1], [1, 0]])],
        },
        CatalogueEntry {
            name: "d6hex",
            description: "full symmetry group of the hexagon fan, order 12",
            generators: vec![m2(&[[1, 1], [-1, 0]]), m2(&[[0, 1], [1, 0]])],
        },
    ]
}

pub fn lookup(name: &str) -> Option<CatalogueEntry> {
    entries().into_iter().find(|e| e.name == name)
}

pub fn group(name: &str) -> Result<AffineGroup> {
    let entry = lookup(name)
        .ok_or_else(|| Error::BadParameters(format!("unknown catalogue name: {name}")))?;
    AffineGroup::close_default(entry.generators)
}

/// The three families of 2-group actions with image K9 and cyclic torsion
/// kernel: quaternion, dihedral, semidihedral of order 2^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K9Family {
    Quaternion,
    Dihedral,
    Semidihedral,
}

impl K9Family {
    pub fn parse(s: &str) -> Result<K9Family> {
        match s {
            "Q" | "q" | "quaternion" => Ok(K9Family::Quaternion),
            "D" | "d" | "dihedral" => Ok(K9Family::Dihedral),
            "SD" | "sd" | "semidihedral" => Ok(K9Family::Semidihedral),
            other => Err(Error::BadParameters(format!("unknown family: {other}"))),
        }
    }

    pub fn min_n(self) -> u32 {
        match self {
            K9Family::Quaternion | K9Family::Dihedral => 3,
            K9Family::Semidihedral => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            K9Family::Quaternion => "Q",
            K9Family::Dihedral => "D",
            K9Family::Semidihedral => "SD",
        }
    }
}

/// Torus parts of the two standard generators for a family member of order
/// 2^n: the first generator translates by lambda = 1/2^{n-2} in the second
/// coordinate; the second generator's translation fixes the family.
pub fn k9_family_generators(family: K9Family, n: u32) -> Result<Vec<GroupElement>> {
    if n < family.min_n() || n > 20 {
        return Err(Error::BadParameters(format!(
            "family {} needs n in [{}, 20], got {n}",
            family.name(),
            family.min_n()
        )));
    }
    let [a1, a2] = k9_matrices();
    let lambda = QmodZ::new(1, 1i64 << (n - 2));
    let s1 = QmodZVector::from_entries(vec![QmodZ::zero(), lambda, QmodZ::zero()]);
    let s2 = match family {
        K9Family::Quaternion => QmodZVector::from_fractions(&[(0, 1), (0, 1), (1, 2)]),
        K9Family::Dihedral => QmodZVector::zero(3),
        K9Family::Semidihedral => QmodZVector::from_fractions(&[(0, 1), (1, 2), (1, 2)]),
    };
    Ok(vec![
        GroupElement::new(s1, a1.matrix_part().clone()),
        GroupElement::new(s2, a2.matrix_part().clone()),
    ])
}

pub fn k9_family_group(family: K9Family, n: u32) -> Result<AffineGroup> {
    let gens = k9_family_generators(family, n)?;
    AffineGroup::close(gens, 1 << (n as usize + 2))
}

pub fn example62_generators() -> Vec<GroupElement> {
    k9_family_generators(K9Family::Dihedral, 3).expect("n = 3 is valid for the dihedral family")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_closes_to_a_small_group() {
        for entry in entries() {
            let g = entry.group();
            assert!(g.order() >= 1 && g.order() <= 48, "entry {} has order {}", entry.name, g.order());
        }
    }

    #[test]
    fn expected_orders_of_named_groups() {
        let cases = [
            ("eta", 2),
            ("iota1", 2),
            ("theta1", 4),
            ("theta4", 4),
            ("K1", 4),
            ("K6", 4),
            ("K9", 4),
            ("tau1", 2),
            ("tau2", 4),
            ("c2d4a", 16),
            ("c2d4b", 16),
            ("badC2C4", 8),
            ("badC2cubed", 8),
            ("c3cyc", 3),
            ("c3prod", 3),
            ("example62", 8),
            ("d4square", 8),
            ("d6hex", 12),
            ("rot6", 6),
        ];
        for (name, order) in cases {
            assert_eq!(group(name).unwrap().order(), order, "order of {name}");
        }
    }

    #[test]
    fn k9_is_klein_four_and_all_k_groups_are_klein() {
        for k in 1..=9 {
            let g = group(&format!("K{k}")).unwrap();
            assert_eq!(g.order(), 4, "K{k}");
            assert!(g.is_abelian(), "K{k}");
            assert!(g.elements().iter().all(|e| e.pow(2).is_identity()), "K{k} exponent");
        }
    }

    #[test]
    fn bad_groups_have_the_right_structure() {
        let c2c4 = group("badC2C4").unwrap();
        assert_eq!(c2c4.order(), 8);
        assert!(c2c4.is_abelian());
        let mut orders: Vec<usize> =
            (0..c2c4.order()).map(|i| c2c4.element_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 4, 4, 4, 4]);

        let c2cubed = group("badC2cubed").unwrap();
        assert_eq!(c2cubed.order(), 8);
        assert!(c2cubed.is_abelian());
        assert!(c2cubed.elements().iter().all(|e| e.pow(2).is_identity()));
    }

    #[test]
    fn sylow_triples_are_c2_times_d4() {
        for name in ["c2d4a", "c2d4b"] {
            let g = group(name).unwrap();
            assert_eq!(g.order(), 16, "{name}");
            assert!(!g.is_abelian(), "{name}");
            // C2 x D4 signature: center of order 4, exponent 4.
            let center: Vec<usize> = (0..g.order())
                .filter(|&i| {
                    (0..g.order()).all(|j| g.mul_index(i, j) == g.mul_index(j, i))
                })
                .collect();
            assert_eq!(center.len(), 4, "{name} center");
            let max_order = (0..g.order()).map(|i| g.element_order(i)).max().unwrap();
            assert_eq!(max_order, 4, "{name} exponent");
        }
    }

    #[test]
    fn family_groups_have_order_two_to_the_n() {
        for (family, ns) in [
            (K9Family::Quaternion, vec![3u32, 4, 5]),
            (K9Family::Dihedral, vec![3, 4, 5]),
            (K9Family::Semidihedral, vec![4, 5]),
        ] {
            for n in ns {
                let g = k9_family_group(family, n).unwrap();
                assert_eq!(g.order(), 1usize << n, "{:?} n={n}", family);
                let image = g.image();
                assert_eq!(image.order(), 4, "image is the Klein group");
                assert_eq!(g.torus_kernel().order(), 1usize << (n - 2));
            }
        }
    }

    #[test]
    fn family_groups_have_expected_isomorphism_type() {
        // Quaternion: unique involution. Dihedral of order 8: five
        // involutions. Semidihedral of order 16: three central-extension
        // involution counts distinguish it from D8 and Q16.
        let q8 = k9_family_group(K9Family::Quaternion, 3).unwrap();
        let invs = (0..q8.order()).filter(|&i| q8.element_order(i) == 2).count();
        assert_eq!(invs, 1, "quaternion unique involution");

        let d4 = k9_family_group(K9Family::Dihedral, 3).unwrap();
        let invs = (0..d4.order()).filter(|&i| d4.element_order(i) == 2).count();
        assert_eq!(invs, 5, "dihedral of order 8 has 5 involutions");

        // Semidihedral of order 16: (x^k y)^2 = x^{4k}, so the involutions
        // are x^4 and the four even reflections; the four odd powers of x
        // have order 8. That signature separates it from D8, Q16, and the
        // modular group of order 16.
        let sd16 = k9_family_group(K9Family::Semidihedral, 4).unwrap();
        assert!(!sd16.is_abelian());
        let invs = (0..sd16.order()).filter(|&i| sd16.element_order(i) == 2).count();
        assert_eq!(invs, 5, "semidihedral of order 16 has 5 involutions");
        let order8 = (0..sd16.order()).filter(|&i| sd16.element_order(i) == 8).count();
        assert_eq!(order8, 4, "semidihedral of order 16 has 4 elements of order 8");
    }

    #[test]
    fn example62_matches_the_dihedral_member() {
        let g = group("example62").unwrap();
        assert_eq!(g.order(), 8);
        let gt = g.torus_kernel();
        assert_eq!(gt.order(), 2);
        let t = gt
            .elements()
            .iter()
            .find(|e| !e.is_identity())
            .unwrap()
            .torus_part()
            .clone();
        assert_eq!(t, QmodZVector::from_fractions(&[(1, 2), (1, 2), (1, 2)]));
        assert_eq!(g.image().order(), 4);
    }

    #[test]
    fn family_rejects_out_of_range_n() {
        assert!(k9_family_group(K9Family::Quaternion, 2).is_err());
        assert!(k9_family_group(K9Family::Semidihedral, 3).is_err());
    }
}
