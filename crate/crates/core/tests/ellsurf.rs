mod common;

use hmskit::ellsurf::{
    fiber_contribution, is_fundamental, j_invariant, jacobian_of_quartic, kodaira_classify, od_gram, section_height,
    shioda_tate_disc, verify_section, FiberType, LatticeGram, Place, RootLattice, SectionQt, WeierstrassQt,
};
use hmskit::exactmath::{q, qf, qpoly, RationalFunction, UniPoly, Q};
use hmskit::igusa::{weighted_equal, IgusaClebsch};
use hmskit::shioda_inose::{ic_from_k3, inose_j_pair, k3_from_ic, K3Model};
use hmskit::Error;
use proptest::prelude::*;

fn types(w: &WeierstrassQt) -> Vec<(bool, FiberType)> {
    let c = kodaira_classify(w).unwrap();
    c.fibers.iter().map(|f| (f.place == Place::Infinity, f.fiber_type)).collect()
}

#[test]
fn rational_surfaces() {
    // y^2 = x^3 + t: II at 0, II* at infinity
    let w = WeierstrassQt::short(qpoly(&[0]), qpoly(&[0, 1]));
    assert_eq!(types(&w), vec![(false, FiberType::II), (true, FiberType::IIStar)]);
    assert_eq!(kodaira_classify(&w).unwrap().chi(), Some(1));
    // Legendre y^2 = x(x - 1)(x - t): I2 at 0 and 1, I2* at infinity
    let w = WeierstrassQt::new(qpoly(&[0]), qpoly(&[-1, -1]), qpoly(&[0]), qpoly(&[0, 1]), qpoly(&[0]));
    let c = kodaira_classify(&w).unwrap();
    assert_eq!(c.chi(), Some(1));
    // t and t - 1 have equal valuations and share one place t^2 - t
    assert_eq!(c.at_root(&qpoly(&[0, -1, 1])).unwrap().fiber_type, FiberType::I(2));
    assert_eq!(c.fibers.len(), 2);
    assert_eq!(c.at_infinity().unwrap().fiber_type, FiberType::IStar(2));
    // y^2 = x^3 + t^5 is non-minimal at infinity only after a shift: III* needs v4 = 3
    let w = WeierstrassQt::short(qpoly(&[0, 0, 0, 1]), qpoly(&[0]));
    assert_eq!(types(&w), vec![(false, FiberType::IIIStar), (true, FiberType::III)]);
}

#[test]
fn fiber_type_strings() {
    for s in ["I0", "I7", "II", "III", "IV", "I0*", "I3*", "IV*", "III*", "II*"] {
        let t: FiberType = s.parse().unwrap();
        assert_eq!(t.to_string(), s);
    }
    assert!("V".parse::<FiberType>().is_err());
    assert_eq!(FiberType::IStar(2).root_lattice(), Some(RootLattice::D(6)));
    assert_eq!(FiberType::I(1).root_lattice(), None);
}

/// Diagonal entries of inverse Cartan matrices, by cofactors.
fn inverse_cartan_diag(edges: &[(usize, usize)], n: usize, k: usize) -> Q {
    let mut c = vec![vec![q(0); n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = q(2);
    }
    for &(i, j) in edges {
        c[i][j] = q(-1);
        c[j][i] = q(-1);
    }
    let minor: Vec<Vec<Q>> =
        (0..n).filter(|&i| i != k).map(|i| (0..n).filter(|&j| j != k).map(|j| c[i][j].clone()).collect()).collect();
    common::det(minor) / common::det(c)
}

#[test]
fn contributions_are_inverse_cartan_entries() {
    for n in 1..=9u32 {
        let chain: Vec<_> = (0..n as usize - 1).map(|i| (i, i + 1)).collect();
        for k in 1..=n as usize {
            assert_eq!(
                fiber_contribution(RootLattice::A(n), k).unwrap(),
                inverse_cartan_diag(&chain, n as usize, k - 1)
            );
        }
        assert!(fiber_contribution(RootLattice::A(n), n as usize + 1).is_err());
    }
    for n in 4..=10usize {
        // chain 0..=n-2, node n-1 on node n-3
        let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
        e.push((n - 3, n - 1));
        let d = RootLattice::D(n as u32);
        assert_eq!(fiber_contribution(d, 1).unwrap(), inverse_cartan_diag(&e, n, 0));
        assert_eq!(fiber_contribution(d, 2).unwrap(), inverse_cartan_diag(&e, n, n - 2));
        assert_eq!(fiber_contribution(d, 3).unwrap(), inverse_cartan_diag(&e, n, n - 1));
    }
    // E6: arms 0-1-2-3-4 with 5 on 2; E7: 0-1-2-3-4-5 with 6 on 2
    let e6 = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)];
    assert_eq!(fiber_contribution(RootLattice::E(6), 1).unwrap(), inverse_cartan_diag(&e6, 6, 0));
    let e7 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)];
    assert_eq!(fiber_contribution(RootLattice::E(7), 1).unwrap(), inverse_cartan_diag(&e7, 7, 5));
    assert!(fiber_contribution(RootLattice::E(8), 1).is_err());
    assert_eq!(fiber_contribution(RootLattice::E(8), 0).unwrap(), q(0));
}

#[test]
fn heights_and_discriminants() {
    assert_eq!(section_height(2, 0, &[qf(3, 2)]), qf(5, 2));
    assert_eq!(section_height(2, 1, &[]), q(6));
    let g = LatticeGram(vec![vec![q(2), q(1)], vec![q(1), q(2)]]);
    assert!(g.is_symmetric());
    assert_eq!(g.det(), q(3));
    assert_eq!(shioda_tate_disc(&[RootLattice::A(2), RootLattice::E(7)], &g, 1).unwrap(), q(18));
    assert_eq!(shioda_tate_disc(&[RootLattice::D(4)], &g, 2).unwrap(), q(3));
    assert_eq!(shioda_tate_disc(&[], &g, 0).unwrap_err(), Error::ZeroTorsion);
    for d in [5i64, 8, 12, 13, 17, 21, 24, 28, 33, 97] {
        assert!(is_fundamental(d));
        assert_eq!(od_gram(d).unwrap().det(), q(-d));
    }
    for d in [1i64, 4, 9, 16, 20, 25, 45] {
        assert!(!is_fundamental(d));
        assert_eq!(od_gram(d).unwrap_err(), Error::NotFundamental(d));
    }
}

#[test]
fn sections() {
    // y^2 = x^3 + x + t^2 has the section (0, t)
    let w = WeierstrassQt::short(qpoly(&[1]), qpoly(&[0, 0, 1]));
    let s = SectionQt { x: RationalFunction::constant(q(0)), y: RationalFunction::x() };
    assert!(verify_section(&w, &s));
    assert!(verify_section(&w, &s.negate(&w)));
    let bad = SectionQt { x: RationalFunction::constant(q(1)), y: RationalFunction::x() };
    assert!(!verify_section(&w, &bad));
}

/// j of y^2 = x^3 + A x + B from 1728 * 4A^3 / (4A^3 + 27B^2).
fn j_short(a: &UniPoly<Q>, b: &UniPoly<Q>) -> RationalFunction {
    let a3 = a.pow(3).scale(&q(4));
    let d = a3.add(&b.pow(2).scale(&q(27)));
    RationalFunction::new(a3.scale(&q(1728)), d).unwrap()
}

proptest! {
    #![proptest_config(common::seeded(24, 0x3e11))]

    #[test]
    fn jacobian_of_a_cubic_is_the_cubic(a in proptest::collection::vec(-5i64..=5, 1..3), b in proptest::collection::vec(-5i64..=5, 1..3)) {
        let (a, b) = (qpoly(&a), qpoly(&b));
        let z = UniPoly::zero(q(0));
        let one = UniPoly::constant(q(1));
        let disc = a.pow(3).scale(&q(4)).add(&b.pow(2).scale(&q(27)));
        prop_assume!(!disc.is_zero() && !a.is_zero());
        let jac = jacobian_of_quartic(&[b.clone(), a.clone(), z, one]).unwrap();
        prop_assert_eq!(j_invariant(&jac).unwrap(), j_short(&a, &b));
    }

    #[test]
    fn k3_round_trip(i in proptest::array::uniform4(-30i64..=30), l in 1i64..=5, m in 1i64..=4) {
        prop_assume!(i[3] != 0);
        let ic = IgusaClebsch::new(q(i[0]), q(i[1]), q(i[2]), q(i[3]));
        let k = k3_from_ic(&ic).unwrap();
        prop_assert!(weighted_equal(&ic_from_k3(&k).unwrap(), &ic));
        // rescaled models give the same point
        let kr = k.rescale(&q(l), &qf(1, m));
        prop_assert!(weighted_equal(&ic_from_k3(&kr).unwrap(), &ic));
    }
}

#[test]
fn k3_fibers() {
    let ic = IgusaClebsch::new(q(1), q(2), q(3), q(5));
    let c = kodaira_classify(&k3_from_ic(&ic).unwrap().weierstrass()).unwrap();
    assert_eq!(c.chi(), Some(2));
    assert_eq!(c.at_infinity().unwrap().fiber_type, FiberType::IIStar);
    assert_eq!(c.at_root(&qpoly(&[0, 1])).unwrap().fiber_type, FiberType::IIIStar);
    let z = IgusaClebsch::new(q(1), q(2), q(3), q(0));
    assert_eq!(k3_from_ic(&z).unwrap_err(), Error::DegenerateAbelianSurface);
}

#[test]
fn inose_pair() {
    let k = K3Model::new(q(3), q(0), q(2), q(5), q(7));
    let jp = inose_j_pair(&k).unwrap();
    // p = -a^3 / (27 b' b''), s = 1 + p - b^2 / (4 b' b'')
    let p = qf(-27, 27 * 14);
    let s = q(1) + &p - qf(25, 56);
    assert_eq!(jp.coeffs(), &[p, -s, q(1)]);
    assert_eq!(ic_from_k3(&k).unwrap_err(), Error::ProductCase);
    assert_eq!(inose_j_pair(&K3Model::new(q(1), q(1), q(1), q(1), q(1))).unwrap_err(), Error::NotInoseCase);
}
