//! Group substrate: loading, lattices, residual subgroups, double cosets,
//! and section composition on the worked examples.

use fbr_core::group::{
    coset_stabilizer, derived_subgroup, double_coset_reps, load_group, n_residual, GroupError,
    GroupSpec, SectionData, Subgroup, SubgroupLattice,
};
use std::sync::Arc;

fn catalog(name: &str) -> Arc<fbr_core::FiniteGroup> {
    load_group(&GroupSpec::catalog(name), 128).unwrap()
}

#[test]
fn load_group_examples() {
    assert_eq!(catalog("C1").order(), 1);
    let s3 = load_group(
        &GroupSpec::Permutations {
            name: "S3".into(),
            perms: vec!["(1 2)".into(), "(1 2 3)".into()],
        },
        128,
    )
    .unwrap();
    assert_eq!(s3.order(), 6);
    let q8 = catalog("Q8");
    assert_eq!(q8.order(), 8);
    assert_eq!(q8.elements().filter(|&x| q8.order_of(x) == 2).count(), 1);
}

#[test]
fn order_cap() {
    let err = load_group(&GroupSpec::catalog("S4"), 10);
    assert!(matches!(err, Err(GroupError::OrderCapExceeded { .. })));
}

#[test]
fn every_lattice_member_is_closed() {
    for name in ["S4", "Q8", "C9xC3"] {
        let g = catalog(name);
        let l = SubgroupLattice::new(std::sync::Arc::clone(&g));
        for s in 0..l.len() {
            assert!(l.subgroup(s).is_closed(&g), "{name} subgroup {s}");
        }
    }
}

#[test]
fn lattice_examples() {
    let c5 = SubgroupLattice::new(catalog("C5"));
    assert_eq!((c5.len(), c5.classes().len()), (2, 2));
    let s3 = SubgroupLattice::new(catalog("S3"));
    assert_eq!((s3.len(), s3.classes().len()), (6, 4));
    let q8 = SubgroupLattice::new(catalog("Q8"));
    assert_eq!((q8.len(), q8.classes().len()), (6, 6));
}

#[test]
fn moebius_examples() {
    let l = SubgroupLattice::new(catalog("V4"));
    assert_eq!(l.moebius(l.full_id(), l.full_id()), 1);
    let c2 = (0..l.len()).find(|&s| l.subgroup(s).order() == 2).unwrap();
    assert_eq!(l.moebius(l.trivial_id(), c2), -1);
    assert_eq!(l.moebius(l.trivial_id(), l.full_id()), 2);
}

#[test]
fn derived_subgroup_examples() {
    let c6 = catalog("C6");
    let full = Subgroup::full(&c6);
    assert_eq!(derived_subgroup(&c6, &full).order(), 1);

    let s3 = catalog("S3");
    assert_eq!(derived_subgroup(&s3, &Subgroup::full(&s3)).order(), 3);

    let q8 = catalog("Q8");
    let center = derived_subgroup(&q8, &Subgroup::full(&q8));
    assert_eq!(center.order(), 2);
    assert!(center.is_normal_in(&q8, &Subgroup::full(&q8)));
}

#[test]
fn residual_examples() {
    let c6 = catalog("C6");
    let full = Subgroup::full(&c6);
    assert_eq!(n_residual(&c6, &full, 1), full);
    assert_eq!(n_residual(&c6, &full, 2).order(), 3);
    let s3 = catalog("S3");
    let full = Subgroup::full(&s3);
    assert_eq!(n_residual(&s3, &full, 3), full);
}

#[test]
fn double_coset_examples() {
    let s3 = catalog("S3");
    let all: Vec<u16> = s3.elements().collect();
    let full = Subgroup::full(&s3);
    let triv = Subgroup::trivial();
    assert_eq!(double_coset_reps(&s3, &all, full.elems(), full.elems()), vec![0]);
    assert_eq!(double_coset_reps(&s3, &all, triv.elems(), triv.elems()).len(), 6);

    let t = s3.elements().find(|&x| s3.order_of(x) == 2).unwrap();
    let c2 = Subgroup::generated(&s3, &[t]);
    let reps = double_coset_reps(&s3, &all, c2.elems(), c2.elems());
    assert_eq!(reps.len(), 2);
    // deterministic: each representative is minimal in its coset, ascending
    assert!(reps.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(reps[0], 0);
}

#[test]
fn coset_stabilizer_normal_case() {
    // H normal with trivial tag: the stabilizer is all of G
    let s3 = catalog("S3");
    let all: Vec<u16> = s3.elements().collect();
    let a3 = derived_subgroup(&s3, &Subgroup::full(&s3));
    let res = n_residual(&s3, &a3, 1);
    let stab = coset_stabilizer(&s3, &all, &a3, 0, &res).unwrap();
    assert_eq!(stab.order(), 6);
    // h outside the subgroup is rejected
    let outside = s3.elements().find(|&x| !a3.contains(x)).unwrap();
    assert!(coset_stabilizer(&s3, &all, &a3, outside, &res).is_err());
}

#[test]
fn star_product_examples() {
    let c4 = catalog("C4");
    let c2 = catalog("C2");
    // graphs of composable homomorphisms C4 -> C2 -> C2 compose
    let full4 = Subgroup::full(&c4);
    let full2 = Subgroup::full(&c2);
    let alpha = SectionData::graph(&c2, &c4, &full4, |x| x % 2).unwrap();
    let trivial = SectionData::graph(&c2, &c2, &full2, |_| 0).unwrap();
    let composed = trivial.star(&alpha).unwrap();
    assert_eq!(
        composed,
        SectionData::graph(&c2, &c4, &full4, |_| 0).unwrap()
    );
    // mismatched middle groups are rejected (C4 middle vs C2 middle)
    assert!(alpha.star(&trivial).is_err());
    let beta = SectionData::graph(&c4, &c4, &full4, |x| x).unwrap();
    assert!(trivial.star(&beta).is_err());
    assert!(alpha.star(&beta).is_ok());
}

#[test]
fn determinism_across_runs() {
    for name in ["S4", "Q8", "A4", "C9xC3"] {
        let a = catalog(name);
        let b = catalog(name);
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
        let la = SubgroupLattice::new(a);
        let lb = SubgroupLattice::new(b);
        assert_eq!(la.subgroups(), lb.subgroups());
        assert_eq!(la.classes(), lb.classes());
    }
}

#[test]
fn exponents() {
    assert_eq!(catalog("S4").exponent(), 12);
    assert_eq!(catalog("Q8").exponent(), 4);
    assert_eq!(catalog("C9xC3").exponent(), 9);
    assert_eq!(catalog("A4").exponent(), 6);
}
