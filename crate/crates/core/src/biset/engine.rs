//! The general transitive-biset action: for E <= H x G, the biset
//! H x G / E acts on a basis pair \[K, phi\] as a sum over double cosets
//! p2(E)\G/K of pairs \[L_g, psi_g\], kept only when the conjugated kernel
//! condition k2(E)^g meet K <= ker(phi) holds.

use crate::fibered::{FBElement, FiberedRing};
use crate::group::{SectionData, SubgroupLattice};
use serde_json::json;

/// One biset operation in a verify plan: an elementary tag over lattice
/// ids of the current group, or a general section.
#[derive(Clone, Debug)]
pub enum BisetSpec {
    /// res^G_H for a subgroup id H
    Res { h: usize },
    /// ind^G_H
    Ind { h: usize },
    /// inf^G_{G/N} for a normal subgroup id N
    Inf { n: usize },
    /// def^G_{G/N}
    Def { n: usize },
    /// conjugation transport by a group element
    Conj { g: u16 },
    /// transport along an automorphism of the group, as an element map
    Iso { map: Vec<u16> },
}

impl BisetSpec {
    /// Serialized form used in verify reports, with subgroups spelled out
    /// as element lists.
    pub fn to_json(&self, lattice: &SubgroupLattice) -> serde_json::Value {
        let elems = |id: &usize| lattice.subgroup(*id).elems().to_vec();
        match self {
            BisetSpec::Res { h } => json!({"op": "res", "H": elems(h)}),
            BisetSpec::Ind { h } => json!({"op": "ind", "H": elems(h)}),
            BisetSpec::Inf { n } => json!({"op": "inf", "N": elems(n)}),
            BisetSpec::Def { n } => json!({"op": "def", "N": elems(n)}),
            BisetSpec::Conj { g } => json!({"op": "conj", "g": g}),
            BisetSpec::Iso { map } => json!({"op": "iso", "map": map}),
        }
    }
}

/// Applies the transitive biset H x G / E to an element of B^Cn(G),
/// landing in B^Cn(H). The left components of E live in `left`'s ambient
/// group and the right components in `right`'s.
pub fn transitive_biset_apply(
    left: &FiberedRing,
    right: &FiberedRing,
    e: &SectionData,
    x: &FBElement,
) -> FBElement {
    assert_eq!(left.fiber_order(), right.fiber_order(), "fiber orders differ");
    assert_eq!(e.left_order(), left.group().order(), "left parent mismatch");
    assert_eq!(e.right_order(), right.group().order(), "right parent mismatch");
    let rg = right.group();
    debug_assert!(e
        .p1()
        .elems()
        .iter()
        .all(|&h| left.lattice().subgroup(left.ambient_id()).contains(h)));
    debug_assert!(e
        .p2()
        .elems()
        .iter()
        .all(|&g| right.lattice().subgroup(right.ambient_id()).contains(g)));

    let mut out = left.zero();
    for (&j, coeff) in x.coeffs() {
        let (kp, kf) = right.basis_pos(j);
        let k_sub = right.sub_at(kp);
        let reps = crate::group::double_coset_reps(
            rg,
            right.ambient_elems(),
            e.p2().elems(),
            k_sub.elems(),
        );
        'coset: for g in reps {
            // k2(E)^g meet K <= ker(phi)
            for &v in e.k2().elems() {
                let vg = rg.conj_by_inv(g, v);
                if k_sub.contains(vg) && right.hom_value_at(kp, kf, vg) != 0 {
                    continue 'coset;
                }
            }
            // gKg^-1 as a fast membership set
            let gk: Vec<u16> = {
                let mut t: Vec<u16> = k_sub.elems().iter().map(|&x| rg.conj(g, x)).collect();
                t.sort_unstable();
                t
            };
            // L_g = p1(E * gamma) = {h | exists x in gKg^-1 with (h,x) in E}
            let mut l_elems: Vec<u16> = Vec::new();
            let mut psi: Vec<Option<u32>> = Vec::new();
            for &(h, xr) in e.pairs() {
                if gk.binary_search(&xr).is_err() {
                    continue;
                }
                let value = right.hom_value_at(kp, kf, rg.conj_by_inv(g, xr));
                match l_elems.binary_search(&h) {
                    Ok(i) => {
                        assert_eq!(
                            psi[i],
                            Some(value),
                            "psi_g must not depend on the witness x"
                        );
                    }
                    Err(i) => {
                        l_elems.insert(i, h);
                        psi.insert(i, Some(value));
                    }
                }
            }
            let values: Vec<u32> = psi.into_iter().map(Option::unwrap).collect();
            let l_id = left.lattice().id_of_elems(&l_elems);
            let lp = left.pos_of_sub(l_id);
            let lf = left.hom_id(lp, &values);
            out.add_term(left.basis_index(lp, lf), coeff.clone());
        }
    }
    out
}
