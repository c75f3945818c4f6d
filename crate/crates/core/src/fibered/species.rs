//! Species of B^Cn(G) and their primitive idempotents. A species is the
//! composite ev_h . pi_H . res^G_H indexed by a point (H, h H^\[n\]): on a
//! basis pair \[K, phi\] it sums (g phi)(h) over the cosets gK whose
//! conjugate contains H. The idempotent of a point is the Moebius-weighted
//! double sum over subgroups of H and all homs of H with conjugated
//! root-of-unity coefficients; the two conventions are the ones that make
//! each idempotent the indicator of its own species.

use super::{FBElement, FiberedRing};
use crate::cyclotomic::{CycNum, Int, Rat};
use std::sync::Arc;

impl FiberedRing {
    /// Species value on a single basis pair.
    fn species_on_pair(&self, point: usize, index: u32) -> CycNum {
        let p = &self.points[point];
        let (kp, kf) = self.basis_pos(index);
        let group = self.group();
        let mut acc = self.field().zero();
        for g in self.left_cosets_in_ambient(self.sub_id_at(kp)) {
            let conj_id = self.lattice().conjugate_id(g, self.sub_id_at(kp));
            if !self.lattice().leq(p.sub, conj_id) {
                continue;
            }
            // (g phi)(h) = phi(h^g)
            let e = self.hom_value_at(kp, kf, group.conj_by_inv(g, p.h));
            acc = acc.add(&self.field().root(e as i64));
        }
        acc
    }

    /// The full species table: rows are points, columns basis pairs.
    pub fn species_table(&self) -> Arc<Vec<Vec<CycNum>>> {
        if let Some(t) = self.species_table.lock().unwrap().as_ref() {
            return Arc::clone(t);
        }
        let table: Vec<Vec<CycNum>> = (0..self.points.len())
            .map(|p| {
                (0..self.rank())
                    .map(|j| self.species_on_pair(p, j as u32))
                    .collect()
            })
            .collect();
        let table = Arc::new(table);
        *self.species_table.lock().unwrap() = Some(Arc::clone(&table));
        table
    }

    /// s^{G,n}_{H,h}(x), extended linearly.
    pub fn species_eval(&self, point: usize, x: &FBElement) -> CycNum {
        assert_eq!(x.token(), self.token(), "element of a different ring");
        let table = self.species_table();
        let mut acc = self.field().zero();
        for (&j, v) in x.coeffs() {
            let (a, b) = CycNum::lift_pair(v, &table[point][j as usize]);
            let term = a.mul(&b);
            let (s, t) = CycNum::lift_pair(&acc, &term);
            acc = s.add(&t);
        }
        acc
    }

    /// The primitive idempotent e^{G,n}_{H,h} in B^Cn_{Q(zeta)}(G):
    /// (|H^\[n\]| / (|N(H,hH^\[n\])| |H|)) * sum over K <= H and phi in
    /// Hom(H, C_n) of |K| mu(K,H) conj(phi(h)) \[K, phi|_K\].
    pub fn idempotent(&self, point: usize) -> FBElement {
        if let Some(e) = self.idem_memo.lock().unwrap().get(&point) {
            return e.clone();
        }
        let p = self.points[point].clone();
        let hp = self.pos_of_sub(p.sub);
        let h_order = self.sub_at(hp).order();
        let res_order = self.lattice().subgroup(self.residual_id(hp)).order();
        let stab_order = self.lattice().subgroup(p.stab).order();
        let scale = Rat::new(
            Int::from(res_order),
            Int::from(stab_order) * Int::from(h_order),
        );
        let mut e = self.zero();
        for k_id in self.lattice().below(p.sub) {
            let kp = self.pos_of_sub(k_id);
            let mu = self.lattice().moebius(k_id, p.sub);
            if mu == 0 {
                continue;
            }
            let weight = Rat::from_integer(Int::from(mu) * Int::from(self.sub_at(kp).order()));
            for f in 0..self.hom_count(hp) {
                let e_h = self.hom_value_at(hp, f, p.h);
                let coeff = self.field().root(-(e_h as i64)).scale(&weight);
                let rf = self.restrict_hom(hp, f, kp);
                e.add_term(self.basis_index(kp, rf), coeff);
            }
        }
        let e = e.scale(&scale);
        self.idem_memo.lock().unwrap().insert(point, e.clone());
        e
    }

    /// The restricted-sum form of the idempotent: the K-sum keeps only
    /// subgroups K <= H for which every hom killing K also kills h. Equal
    /// to `idempotent` term by term after cancellation; kept as an
    /// independent cross-check.
    pub fn idempotent_restricted(&self, point: usize) -> FBElement {
        let p = self.points[point].clone();
        let hp = self.pos_of_sub(p.sub);
        let h_order = self.sub_at(hp).order();
        let res_order = self.lattice().subgroup(self.residual_id(hp)).order();
        let stab_order = self.lattice().subgroup(p.stab).order();
        let scale = Rat::new(
            Int::from(res_order),
            Int::from(stab_order) * Int::from(h_order),
        );
        let mut e = self.zero();
        for k_id in self.lattice().below(p.sub) {
            let kp = self.pos_of_sub(k_id);
            if !self.kernel_condition(hp, kp, p.h) {
                continue;
            }
            let mu = self.lattice().moebius(k_id, p.sub);
            if mu == 0 {
                continue;
            }
            let weight = Rat::from_integer(Int::from(mu) * Int::from(self.sub_at(kp).order()));
            for f in 0..self.hom_count(hp) {
                let e_h = self.hom_value_at(hp, f, p.h);
                let coeff = self.field().root(-(e_h as i64)).scale(&weight);
                let rf = self.restrict_hom(hp, f, kp);
                e.add_term(self.basis_index(kp, rf), coeff);
            }
        }
        e.scale(&scale)
    }

    /// ker(res^H_K) <= ker(ev_h), checked extensionally over Hom(H, C_n).
    pub fn kernel_condition(&self, hp: usize, kp: usize, h: u16) -> bool {
        (0..self.hom_count(hp)).all(|f| {
            let kills_k = self.hom_values(hp, f).is_empty()
                || {
                    let rf = self.restrict_hom(hp, f, kp);
                    self.hom_values(kp, rf).iter().all(|&v| v == 0)
                };
            !kills_k || self.hom_value_at(hp, f, h) == 0
        })
    }
}
