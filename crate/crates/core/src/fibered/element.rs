//! Elements of B^Cn(G) as sparse Q(zeta)-combinations of canonical basis
//! pairs. Coefficients may live in a larger cyclotomic field than the
//! ring's own (fiber-change images do this); binary operations lift into a
//! common field.

use super::FiberedRing;
use crate::cyclotomic::{CycNum, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A sparse element of B^Cn(G); keys are basis indices of the owning ring.
#[derive(Clone)]
pub struct FBElement {
    ring: u64,
    coeffs: BTreeMap<u32, CycNum>,
}

impl FBElement {
    pub(crate) fn new(ring: u64) -> FBElement {
        FBElement { ring, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, CycNum> {
        &self.coeffs
    }

    pub fn coeff(&self, index: u32) -> Option<&CycNum> {
        self.coeffs.get(&index)
    }

    pub(crate) fn token(&self) -> u64 {
        self.ring
    }

    pub(crate) fn add_term(&mut self, index: u32, value: CycNum) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.remove(&index) {
            None => {
                self.coeffs.insert(index, value);
            }
            Some(old) => {
                let (a, b) = CycNum::lift_pair(&old, &value);
                let sum = a.add(&b);
                if !sum.is_zero() {
                    self.coeffs.insert(index, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &FBElement) -> FBElement {
        assert_eq!(self.ring, other.ring, "elements of different rings");
        let mut out = self.clone();
        for (&i, v) in &other.coeffs {
            out.add_term(i, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &FBElement) -> FBElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FBElement {
        FBElement {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|(&i, v)| (i, v.neg())).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> FBElement {
        if r.is_zero() {
            return FBElement::new(self.ring);
        }
        FBElement {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|(&i, v)| (i, v.scale(r))).collect(),
        }
    }

    pub fn scale_cyc(&self, c: &CycNum) -> FBElement {
        let mut out = FBElement::new(self.ring);
        if c.is_zero() {
            return out;
        }
        for (&i, v) in &self.coeffs {
            let (a, b) = CycNum::lift_pair(v, c);
            out.add_term(i, a.mul(&b));
        }
        out
    }

    /// True when every coefficient lies in Z\[zeta\].
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(CycNum::is_integral)
    }

    pub fn eq_elem(&self, other: &FBElement) -> bool {
        assert_eq!(self.ring, other.ring, "elements of different rings");
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs.iter().zip(&other.coeffs).all(|((i, a), (j, b))| i == j && a.equiv(b))
    }
}

impl PartialEq for FBElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.eq_elem(other)
    }
}

impl Eq for FBElement {}

impl fmt::Debug for FBElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FBElement{{")?;
        for (i, (k, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "b{k}: {v}")?;
        }
        write!(f, "}}")
    }
}

impl FiberedRing {
    pub fn zero(&self) -> FBElement {
        FBElement::new(self.token())
    }

    /// The basis element for a basis index.
    pub fn basis_element(&self, index: u32) -> FBElement {
        let mut e = self.zero();
        e.add_term(index, self.field().one());
        e
    }

    /// \[H, phi\] for any (not necessarily canonical) pair, canonicalized.
    pub fn pair_element(&self, sub_id: usize, hom_values: &[u32]) -> FBElement {
        let pos = self.pos_of_sub(sub_id);
        let hom = self.hom_id(pos, hom_values);
        self.basis_element(self.basis_index(pos, hom))
    }

    /// The multiplicative identity \[G, 1\].
    pub fn unit(&self) -> FBElement {
        let pos = self.pos_of_sub(self.ambient_id());
        self.basis_element(self.basis_index(pos, 0))
    }

    /// Product of two basis orbits as canonical pairs with multiplicities,
    /// by the double coset formula; memoized.
    pub(crate) fn mul_pairs(&self, i: u32, j: u32) -> Arc<Vec<(u32, u32)>> {
        if let Some(hit) = self.mult_memo.lock().unwrap().get(&(i, j)) {
            return Arc::clone(hit);
        }
        let (hp, hf) = self.basis_pos(i);
        let (kp, kf) = self.basis_pos(j);
        let group = self.group();
        let h_sub = self.sub_at(hp);
        let k_sub = self.sub_at(kp);
        let reps = crate::group::double_coset_reps(
            group,
            self.ambient_elems(),
            h_sub.elems(),
            k_sub.elems(),
        );
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for g in reps {
            // L = H meet gKg^-1, with hom phi|_L * (g psi)|_L
            let gk_id = self.lattice().conjugate_id(g, self.sub_id_at(kp));
            let gk = self.lattice().subgroup(gk_id);
            let l_elems: Vec<u16> = h_sub
                .elems()
                .iter()
                .copied()
                .filter(|&x| gk.contains(x))
                .collect();
            let l_id = self.lattice().id_of_elems(&l_elems);
            let l_pos = self.pos_of_sub(l_id);
            let n = self.fiber_order();
            let values: Vec<u32> = l_elems
                .iter()
                .map(|&x| {
                    let a = self.hom_value_at(hp, hf, x) as u64;
                    let b = self.hom_value_at(kp, kf, group.conj_by_inv(g, x)) as u64;
                    ((a + b) % n) as u32
                })
                .collect();
            let l_hom = self.hom_id(l_pos, &values);
            *counts.entry(self.basis_index(l_pos, l_hom)).or_insert(0) += 1;
        }
        let result = Arc::new(counts.into_iter().collect::<Vec<_>>());
        self.mult_memo
            .lock()
            .unwrap()
            .insert((i, j), Arc::clone(&result));
        result
    }

    /// Bilinear extension of the double coset product formula.
    pub fn mul(&self, x: &FBElement, y: &FBElement) -> FBElement {
        assert_eq!(x.token(), self.token(), "element of a different ring");
        assert_eq!(y.token(), self.token(), "element of a different ring");
        let mut out = self.zero();
        for (&i, a) in x.coeffs() {
            for (&j, b) in y.coeffs() {
                let (av, bv) = CycNum::lift_pair(a, b);
                let ab = av.mul(&bv);
                for &(k, mult) in self.mul_pairs(i, j).iter() {
                    out.add_term(k, ab.scale(&Rat::from_integer(mult.into())));
                }
            }
        }
        out
    }

    /// Renders an element against the basis, for reports and diagnostics.
    pub fn format_element(&self, x: &FBElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&i, v) in x.coeffs() {
            let pair = self.basis_pair(i);
            let sub = self.lattice().subgroup(pair.sub);
            let pos = self.pos_of_sub(pair.sub);
            let values = self.hom_values(pos, pair.hom);
            let phi = if values.iter().all(|&e| e == 0) {
                "1".to_string()
            } else {
                values
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            parts.push(format!("({}) * [{:?}, {}]", v, sub.elems(), phi));
        }
        parts.join(" + ")
    }
}
