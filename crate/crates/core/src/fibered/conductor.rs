//! Conductors of primitive idempotents over Z\[zeta\]: the least positive
//! integer clearing all idempotent denominators, together with the
//! group-theoretic bounds it is compared against.

use super::FiberedRing;
use crate::cyclotomic::{denominator_lcm, squarefree_part};
use crate::group::join;
use num::{Integer, One};

/// Conductor data for one species point.
#[derive(Clone, Debug)]
pub struct ConductorReport {
    pub point: usize,
    /// elements of H
    pub subgroup: Vec<u16>,
    /// coset representative h
    pub h: u16,
    /// |N(H, h H^\[n\])|
    pub stab_order: u64,
    /// computed conductor: lcm of idempotent coefficient denominators
    pub c: u64,
    /// [N(H,hH^\[n\]) : H^\[n\]] * [H^\[n\] : H']_0
    pub rhs: u64,
    /// c / [N(H,hH^\[n\]) : H^\[n\]]
    pub r: u64,
    /// lcm over normal K <= H with h in K H^\[n\] of
    /// [KH^\[n\] : KH']_0 / ([H : KH^\[n\]], [KH^\[n\] : KH'])_0
    pub u: u64,
    /// (n, exp(G)/n) = 1
    pub coprime_case: bool,
}

impl ConductorReport {
    /// The main-theorem equality c = rhs; guaranteed in the coprime case.
    pub fn matches(&self) -> bool {
        self.c == self.rhs
    }
}

impl FiberedRing {
    /// Conductor of the idempotent at a species point, with the divisor
    /// bounds rhs, r and u.
    pub fn conductor(&self, point: usize) -> ConductorReport {
        let p = self.point(point).clone();
        let lattice = self.lattice();
        let group = self.group();
        let hp = self.pos_of_sub(p.sub);
        let h_sub = self.sub_at(hp);
        let res_id = self.residual_id(hp);
        let res = lattice.subgroup(res_id);
        let derived = lattice.subgroup(lattice.derived_id(p.sub));
        let stab_order = lattice.subgroup(p.stab).order() as u64;

        let e = self.idempotent(point);
        let denoms = denominator_lcm(e.coeffs().values()).unwrap_or_else(crate::cyclotomic::Int::one);
        let c = u64::try_from(&denoms).expect("conductor fits in u64");

        let n_over_res = stab_order / res.order() as u64;
        let res_over_derived = (res.order() / derived.order()) as u64;
        let rhs = n_over_res * squarefree_part(res_over_derived);

        assert!(c % n_over_res == 0, "[N:H^[n]] must divide the conductor");
        let r = c / n_over_res;

        // u-bound: normal subgroups K of H with h in K H^[n]
        let mut u = 1u64;
        for k_id in lattice.below(p.sub) {
            if !lattice.leq(p.sub, lattice.normalizer_id(k_id)) {
                continue;
            }
            let k = lattice.subgroup(k_id);
            let k_res = join(group, k, res);
            if !k_res.contains(p.h) {
                continue;
            }
            let k_der = join(group, k, derived);
            let a = (k_res.order() / k_der.order()) as u64;
            let idx = (h_sub.order() / k_res.order()) as u64;
            let term = squarefree_part(a) / squarefree_part(idx.gcd(&a));
            u = u.lcm(&term);
        }

        let exp = exponent_of(group, h_sub.elems().to_vec().as_slice());
        let amb_exp = exponent_of(group, self.ambient_elems());
        let _ = exp;
        let n_eff = self.fiber_order().gcd(&amb_exp);
        let coprime_case = (amb_exp % n_eff == 0) && n_eff.gcd(&(amb_exp / n_eff)) == 1;

        ConductorReport {
            point,
            subgroup: h_sub.elems().to_vec(),
            h: p.h,
            stab_order,
            c,
            rhs,
            r,
            u,
            coprime_case,
        }
    }

    /// Conductor reports for every species point.
    pub fn conductors(&self) -> Vec<ConductorReport> {
        (0..self.points().len()).map(|p| self.conductor(p)).collect()
    }
}

fn exponent_of(group: &crate::group::FiniteGroup, elems: &[u16]) -> u64 {
    let mut e = 1u64;
    for &x in elems {
        e = e.lcm(&(group.order_of(x) as u64));
    }
    e
}
