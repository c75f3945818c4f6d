//! Biset operations on fibered Burnside rings: restriction, induction,
//! inflation, deflation, transport along isomorphisms and conjugation,
//! the general transitive-biset action, and fiber change maps.

mod engine;
mod fiber;

pub use engine::{transitive_biset_apply, BisetSpec};
pub use fiber::{
    fiber_change, fiber_change_basis_map, fiber_change_injective, fiber_change_iso,
    idempotent_image, naturality_defect, FiberMap, GroupEnv,
};

use crate::fibered::{FBElement, FiberedRing};
use crate::group::{FiniteGroup, QuotientGroup};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BisetError {
    #[error("fiber map {0}/{1}/{2} is not a homomorphism")]
    BadFiberMap(u64, u64, u64),
    #[error("fiber map endpoints do not match the rings ({0})")]
    FiberMismatch(String),
    #[error("map is not an isomorphism: {0}")]
    NotIso(String),
    #[error("incompatible contexts: {0}")]
    Incompatible(String),
    #[error("idempotent image needs an inclusion i_t_n or projection pi_n_t ({0})")]
    UnsupportedFiberShape(String),
}

fn same_parent(a: &FiberedRing, b: &FiberedRing) {
    assert!(
        Arc::ptr_eq(a.lattice(), b.lattice()),
        "rings over different parent groups"
    );
    assert_eq!(a.fiber_order(), b.fiber_order(), "rings at different fibers");
}

/// res^G_H by the double coset formula; `dst` must be the ring over a
/// subgroup of `src`'s ambient group.
pub fn restrict(src: &FiberedRing, dst: &FiberedRing, x: &FBElement) -> FBElement {
    same_parent(src, dst);
    assert!(
        src.lattice().leq(dst.ambient_id(), src.ambient_id()),
        "restriction target is not a subgroup"
    );
    let group = src.group();
    let h = src.lattice().subgroup(dst.ambient_id());
    let n = src.fiber_order();
    let mut out = dst.zero();
    for (&j, coeff) in x.coeffs() {
        let (lp, lf) = src.basis_pos(j);
        let l_sub = src.sub_at(lp);
        let reps = crate::group::double_coset_reps(
            group,
            src.ambient_elems(),
            h.elems(),
            l_sub.elems(),
        );
        for g in reps {
            let gl_id = src.lattice().conjugate_id(g, src.sub_id_at(lp));
            let gl = src.lattice().subgroup(gl_id);
            let k_elems: Vec<u16> = h
                .elems()
                .iter()
                .copied()
                .filter(|&x| gl.contains(x))
                .collect();
            let k_id = src.lattice().id_of_elems(&k_elems);
            let values: Vec<u32> = k_elems
                .iter()
                .map(|&x| src.hom_value_at(lp, lf, group.conj_by_inv(g, x)) % n as u32)
                .collect();
            let kp = dst.pos_of_sub(k_id);
            let kf = dst.hom_id(kp, &values);
            out.add_term(dst.basis_index(kp, kf), coeff.clone());
        }
    }
    out
}

/// ind^G_H: pairs relabel into G-orbits; canonicalization may fuse
/// H-orbits.
pub fn induce(src: &FiberedRing, dst: &FiberedRing, x: &FBElement) -> FBElement {
    same_parent(src, dst);
    assert!(
        src.lattice().leq(src.ambient_id(), dst.ambient_id()),
        "induction source is not a subgroup"
    );
    let mut out = dst.zero();
    for (&j, coeff) in x.coeffs() {
        let (kp, kf) = src.basis_pos(j);
        let k_id = src.sub_id_at(kp);
        let dp = dst.pos_of_sub(k_id);
        let df = dst.hom_id(dp, src.hom_values(kp, kf));
        out.add_term(dst.basis_index(dp, df), coeff.clone());
    }
    out
}

/// inf^G_{G/N}: pulls a pair (K/N, phi) back along the projection.
pub fn inflate(
    q: &QuotientGroup,
    src: &FiberedRing,
    dst: &FiberedRing,
    x: &FBElement,
) -> FBElement {
    assert!(Arc::ptr_eq(src.group(), &q.group), "source is not the quotient ring");
    assert_eq!(src.fiber_order(), dst.fiber_order());
    let mut out = dst.zero();
    for (&j, coeff) in x.coeffs() {
        let (kp, kf) = src.basis_pos(j);
        let kbar = src.sub_at(kp);
        let k_elems = q.preimage(kbar.elems());
        let values: Vec<u32> = k_elems
            .iter()
            .map(|&x| src.hom_value_at(kp, kf, q.project(x)))
            .collect();
        let k_id = dst.lattice().id_of_elems(&k_elems);
        let dp = dst.pos_of_sub(k_id);
        let df = dst.hom_id(dp, &values);
        out.add_term(dst.basis_index(dp, df), coeff.clone());
    }
    out
}

/// def^G_{G/N}: \[K, psi\] maps to \[KN/N, psi^pi\] when K meets N inside
/// ker(psi), and to zero otherwise.
pub fn deflate(
    q: &QuotientGroup,
    src: &FiberedRing,
    dst: &FiberedRing,
    x: &FBElement,
) -> FBElement {
    assert!(Arc::ptr_eq(dst.group(), &q.group), "target is not the quotient ring");
    assert_eq!(src.fiber_order(), dst.fiber_order());
    let mut out = dst.zero();
    for (&j, coeff) in x.coeffs() {
        let (kp, kf) = src.basis_pos(j);
        let k = src.sub_at(kp);
        // K meet N <= ker(psi)?
        let kernel_ok = k
            .elems()
            .iter()
            .all(|&x| q.proj[x as usize] != Some(0) || src.hom_value_at(kp, kf, x) == 0);
        if !kernel_ok {
            continue;
        }
        let mut cosets: Vec<u16> = Vec::new();
        let mut values: Vec<u32> = Vec::new();
        for &x in k.elems() {
            let c = q.project(x);
            match cosets.binary_search(&c) {
                Ok(_) => {}
                Err(pos) => {
                    cosets.insert(pos, c);
                    values.insert(pos, src.hom_value_at(kp, kf, x));
                }
            }
        }
        let k_id = dst.lattice().id_of_elems(&cosets);
        let dp = dst.pos_of_sub(k_id);
        let df = dst.hom_id(dp, &values);
        out.add_term(dst.basis_index(dp, df), coeff.clone());
    }
    out
}

/// A verified isomorphism between two finite groups, as an element map.
#[derive(Clone, Debug)]
pub struct GroupIso {
    map: Vec<u16>,
}

impl GroupIso {
    pub fn new(src: &FiniteGroup, dst: &FiniteGroup, map: Vec<u16>) -> Result<GroupIso, BisetError> {
        if src.order() != dst.order() || map.len() != src.order() {
            return Err(BisetError::NotIso("order mismatch".into()));
        }
        let mut seen = vec![false; map.len()];
        for &y in &map {
            if y as usize >= map.len() || seen[y as usize] {
                return Err(BisetError::NotIso("not a bijection".into()));
            }
            seen[y as usize] = true;
        }
        for a in 0..src.order() as u16 {
            for b in 0..src.order() as u16 {
                if map[src.mul(a, b) as usize] != dst.mul(map[a as usize], map[b as usize]) {
                    return Err(BisetError::NotIso(format!("not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(GroupIso { map })
    }

    pub fn apply(&self, x: u16) -> u16 {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[u16] {
        &self.map
    }
}

/// iso(alpha): transports pairs along a verified isomorphism between the
/// parent groups of two full-ambient rings.
pub fn isomorph(iso: &GroupIso, src: &FiberedRing, dst: &FiberedRing, x: &FBElement) -> FBElement {
    assert_eq!(src.fiber_order(), dst.fiber_order());
    assert_eq!(src.group().order(), dst.group().order());
    let mut out = dst.zero();
    for (&j, coeff) in x.coeffs() {
        let (kp, kf) = src.basis_pos(j);
        let k = src.sub_at(kp);
        let mut pairs: Vec<(u16, u32)> = k
            .elems()
            .iter()
            .map(|&x| (iso.apply(x), src.hom_value_at(kp, kf, x)))
            .collect();
        pairs.sort_unstable();
        let elems: Vec<u16> = pairs.iter().map(|&(y, _)| y).collect();
        let values: Vec<u32> = pairs.iter().map(|&(_, v)| v).collect();
        let k_id = dst.lattice().id_of_elems(&elems);
        let dp = dst.pos_of_sub(k_id);
        let df = dst.hom_id(dp, &values);
        out.add_term(dst.basis_index(dp, df), coeff.clone());
    }
    out
}

/// Conjugation transport g(-): B(H) -> B(gHg^-1) inside a common parent.
pub fn conjugate(g: u16, src: &FiberedRing, dst: &FiberedRing, x: &FBElement) -> FBElement {
    same_parent(src, dst);
    assert_eq!(
        src.lattice().conjugate_id(g, src.ambient_id()),
        dst.ambient_id(),
        "target ambient must be the conjugate subgroup"
    );
    let group = src.group();
    let mut out = dst.zero();
    for (&j, coeff) in x.coeffs() {
        let (kp, kf) = src.basis_pos(j);
        let k = src.sub_at(kp);
        let mut pairs: Vec<(u16, u32)> = k
            .elems()
            .iter()
            .map(|&x| (group.conj(g, x), src.hom_value_at(kp, kf, x)))
            .collect();
        pairs.sort_unstable();
        let elems: Vec<u16> = pairs.iter().map(|&(y, _)| y).collect();
        let values: Vec<u32> = pairs.iter().map(|&(_, v)| v).collect();
        let k_id = dst.lattice().id_of_elems(&elems);
        let dp = dst.pos_of_sub(k_id);
        let df = dst.hom_id(dp, &values);
        out.add_term(dst.basis_index(dp, df), coeff.clone());
    }
    out
}
