//! Fiber change maps between cyclic fibers: the exponent-scaling ring
//! homomorphisms f_*: B^Ct(G) -> B^Cn(G), their injectivity and
//! isomorphism criteria by torsion arithmetic, idempotent images, and the
//! naturality defect against biset operations.

use super::engine::BisetSpec;
use super::{deflate, inflate, isomorph, restrict, BisetError, GroupIso};
use crate::fibered::{FBElement, FiberedRing};
use crate::group::{quotient_by, FiniteGroup, QuotientGroup, SubgroupLattice};
use num::Integer;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A homomorphism C_t -> C_n, zeta_t -> zeta_n^k; requires k*t = 0 mod n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberMap {
    t: u64,
    n: u64,
    k: u64,
}

impl FiberMap {
    pub fn new(t: u64, n: u64, k: u64) -> Result<FiberMap, BisetError> {
        if t == 0 || n == 0 {
            return Err(BisetError::BadFiberMap(t, n, k));
        }
        let k = k % n;
        if (k * t) % n != 0 {
            return Err(BisetError::BadFiberMap(t, n, k));
        }
        Ok(FiberMap { t, n, k })
    }

    /// The natural inclusion i_{t,n}: C_t -> C_n for t | n.
    pub fn inclusion(t: u64, n: u64) -> FiberMap {
        assert!(n % t == 0, "inclusion needs t | n");
        FiberMap { t, n, k: (n / t) % n }
    }

    /// pi_{n,t}: C_n -> C_t, zeta -> zeta^{n/t}, for t | n.
    pub fn projection(n: u64, t: u64) -> FiberMap {
        assert!(n % t == 0, "projection needs t | n");
        FiberMap { t: n, n: t, k: 1 % t }
    }

    pub fn identity(n: u64) -> FiberMap {
        FiberMap { t: n, n, k: 1 % n }
    }

    pub fn source(&self) -> u64 {
        self.t
    }

    pub fn target(&self) -> u64 {
        self.n
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    /// self after `inner`: (self . inner)(x) = self(inner(x)).
    pub fn compose(&self, inner: &FiberMap) -> Result<FiberMap, BisetError> {
        if inner.n != self.t {
            return Err(BisetError::FiberMismatch(format!(
                "compose needs matching middle fiber ({} vs {})",
                inner.n, self.t
            )));
        }
        FiberMap::new(inner.t, self.n, (self.k * inner.k) % self.n)
    }

    /// Exponent image of e in Z/t under multiplication by k, in Z/n.
    pub fn apply_exp(&self, e: u32) -> u32 {
        ((self.k * e as u64) % self.n) as u32
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"t": self.t, "n": self.n, "k": self.k})
    }

    /// Injectivity of the restriction to the exp-torsion subgroup
    /// (C_t)_exp, by kernel arithmetic.
    pub fn injective_on(&self, exp: u64) -> bool {
        let d = self.t.gcd(&exp);
        // (C_t)_exp is generated by t/d and has order d; the image of the
        // generator has order n / gcd(n, k*t/d)
        if d == 1 {
            return true;
        }
        let gen = self.t / d;
        self.n / self.n.gcd(&(self.k * gen)) == d
    }

    /// Isomorphism onto (C_n)_exp: injective and of full image.
    pub fn iso_on(&self, exp: u64) -> bool {
        self.injective_on(exp) && self.t.gcd(&exp) == self.n.gcd(&exp)
    }
}

/// f_* is injective iff f is injective on the exp(G)-torsion of the
/// source fiber.
pub fn fiber_change_injective(f: &FiberMap, group: &FiniteGroup) -> bool {
    f.injective_on(group.exponent())
}

/// f_* is an isomorphism iff f restricts to an isomorphism of
/// exp(G)-torsion subgroups.
pub fn fiber_change_iso(f: &FiberMap, group: &FiniteGroup) -> bool {
    f.iso_on(group.exponent())
}

/// f_*: sends \[H, phi\] to \[H, f . phi\]; a ring homomorphism.
pub fn fiber_change(
    src: &FiberedRing,
    dst: &FiberedRing,
    f: &FiberMap,
    x: &FBElement,
) -> FBElement {
    assert!(
        Arc::ptr_eq(src.lattice(), dst.lattice()) && src.ambient_id() == dst.ambient_id(),
        "fiber change endpoints must share the ambient group"
    );
    assert_eq!(f.source(), src.fiber_order(), "fiber map source mismatch");
    assert_eq!(f.target(), dst.fiber_order(), "fiber map target mismatch");
    let mut out = dst.zero();
    for (&j, coeff) in x.coeffs() {
        let (kp, kf) = src.basis_pos(j);
        let values: Vec<u32> = src
            .hom_values(kp, kf)
            .iter()
            .map(|&e| f.apply_exp(e))
            .collect();
        let df = dst.hom_id(kp, &values);
        out.add_term(dst.basis_index(kp, df), coeff.clone());
    }
    out
}

/// The basis-to-basis map induced by f_*, for brute-force injectivity and
/// image checks.
pub fn fiber_change_basis_map(src: &FiberedRing, dst: &FiberedRing, f: &FiberMap) -> Vec<u32> {
    (0..src.rank() as u32)
        .map(|j| {
            let (kp, kf) = src.basis_pos(j);
            let values: Vec<u32> = src
                .hom_values(kp, kf)
                .iter()
                .map(|&e| f.apply_exp(e))
                .collect();
            let df = dst.hom_id(kp, &values);
            dst.basis_index(kp, df)
        })
        .collect()
}

/// Image of an idempotent under an inclusion or projection fiber change,
/// returned with its exact expansion as a sum of target idempotents.
pub fn idempotent_image(
    src: &FiberedRing,
    dst: &FiberedRing,
    f: &FiberMap,
    point: usize,
) -> Result<(FBElement, FBElement), BisetError> {
    let image = fiber_change(src, dst, f, &src.idempotent(point));
    let t = f.source();
    let n = f.target();
    let mut expansion = dst.zero();
    if n % t == 0 && f.exponent() == (n / t) % n {
        // inclusion i_{t,n}: collect e^{G,n}_{K,k} with
        // [K, k K^[t]] = [H, h H^[t]]
        for q in 0..dst.points().len() {
            let qp = dst.point(q);
            if src.canonical_point(qp.sub, qp.h) == point {
                expansion = expansion.add(&dst.idempotent(q));
            }
        }
    } else if t % n == 0 && f.exponent() == 1 % n {
        // projection pi_{t,n}: collect e^{G,n}_{K,k} with
        // [K, k^{t/n} K^[t]] = [H, h H^[t]]
        let power = (t / n) as i64;
        let group = src.group();
        for q in 0..dst.points().len() {
            let qp = dst.point(q);
            if src.canonical_point(qp.sub, group.pow(qp.h, power)) == point {
                expansion = expansion.add(&dst.idempotent(q));
            }
        }
    } else {
        return Err(BisetError::UnsupportedFiberShape(format!(
            "t={t} n={n} k={}",
            f.exponent()
        )));
    }
    Ok((image, expansion))
}

/// Ring and quotient cache for one parent group, for naturality sweeps
/// across fibers and biset operations.
pub struct GroupEnv {
    lattice: Arc<SubgroupLattice>,
    rings: Mutex<HashMap<(usize, u64), Arc<FiberedRing>>>,
    quotients: Mutex<HashMap<usize, (Arc<QuotientGroup>, Arc<GroupEnv>)>>,
}

impl GroupEnv {
    pub fn new(group: Arc<FiniteGroup>) -> Arc<GroupEnv> {
        GroupEnv::from_lattice(SubgroupLattice::new(group))
    }

    pub fn from_lattice(lattice: Arc<SubgroupLattice>) -> Arc<GroupEnv> {
        Arc::new(GroupEnv {
            lattice,
            rings: Mutex::new(HashMap::new()),
            quotients: Mutex::new(HashMap::new()),
        })
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.lattice.group()
    }

    /// Ring over the full group at a fiber.
    pub fn ring(&self, n: u64) -> Arc<FiberedRing> {
        self.subring(self.lattice.full_id(), n)
    }

    /// Ring over an ambient subgroup at a fiber.
    pub fn subring(&self, ambient: usize, n: u64) -> Arc<FiberedRing> {
        let mut cache = self.rings.lock().unwrap();
        if let Some(r) = cache.get(&(ambient, n)) {
            return Arc::clone(r);
        }
        let r = FiberedRing::over_subgroup(Arc::clone(&self.lattice), ambient, n);
        cache.insert((ambient, n), Arc::clone(&r));
        r
    }

    /// Quotient by a normal subgroup id, with its own environment.
    pub fn quotient(&self, n_id: usize) -> (Arc<QuotientGroup>, Arc<GroupEnv>) {
        let mut cache = self.quotients.lock().unwrap();
        if let Some((q, env)) = cache.get(&n_id) {
            return (Arc::clone(q), Arc::clone(env));
        }
        let group = self.group();
        let full = self.lattice.subgroup(self.lattice.full_id());
        let nsub = self.lattice.subgroup(n_id);
        let name = format!("{}/N{}", group.name(), n_id);
        let q = Arc::new(quotient_by(group, full, nsub, &name).expect("normal subgroup"));
        let env = GroupEnv::from_lattice(SubgroupLattice::new(Arc::clone(&q.group)));
        cache.insert(n_id, (Arc::clone(&q), Arc::clone(&env)));
        (q, env)
    }

    /// Ring the operation consumes, over the full group's env.
    pub fn biset_source(&self, b: &BisetSpec, n: u64) -> Arc<FiberedRing> {
        match b {
            BisetSpec::Res { .. }
            | BisetSpec::Def { .. }
            | BisetSpec::Conj { .. }
            | BisetSpec::Iso { .. } => self.ring(n),
            BisetSpec::Ind { h } => self.subring(*h, n),
            BisetSpec::Inf { n: n_id } => self.quotient(*n_id).1.ring(n),
        }
    }

    /// Ring the operation produces.
    pub fn biset_target(&self, b: &BisetSpec, n: u64) -> Arc<FiberedRing> {
        match b {
            BisetSpec::Res { h } => self.subring(*h, n),
            BisetSpec::Ind { .. }
            | BisetSpec::Inf { .. }
            | BisetSpec::Conj { .. }
            | BisetSpec::Iso { .. } => self.ring(n),
            BisetSpec::Def { n: n_id } => self.quotient(*n_id).1.ring(n),
        }
    }

    /// Applies an elementary biset operation at a fiber.
    pub fn apply(&self, b: &BisetSpec, n: u64, x: &FBElement) -> FBElement {
        match b {
            BisetSpec::Res { h } => restrict(&self.ring(n), &self.subring(*h, n), x),
            BisetSpec::Ind { h } => super::induce(&self.subring(*h, n), &self.ring(n), x),
            BisetSpec::Inf { n: n_id } => {
                let (q, env) = self.quotient(*n_id);
                inflate(&q, &env.ring(n), &self.ring(n), x)
            }
            BisetSpec::Def { n: n_id } => {
                let (q, env) = self.quotient(*n_id);
                deflate(&q, &self.ring(n), &env.ring(n), x)
            }
            BisetSpec::Conj { g } => {
                let r = self.ring(n);
                super::conjugate(*g, &r, &r, x)
            }
            BisetSpec::Iso { map } => {
                let r = self.ring(n);
                let iso = GroupIso::new(self.group(), self.group(), map.clone())
                    .expect("verified automorphism");
                isomorph(&iso, &r, &r, x)
            }
        }
    }

    /// fiber_change(f, b(x)) - b(fiber_change(f, x)) for x over the source
    /// ring of b at fiber f.source(); zero whenever f is injective on the
    /// exp(G)-torsion or the biset is right-free.
    pub fn naturality_defect(&self, f: &FiberMap, b: &BisetSpec, x: &FBElement) -> FBElement {
        let t = f.source();
        let n = f.target();
        let applied_t = self.apply(b, t, x);
        let path1 = fiber_change(&self.biset_target(b, t), &self.biset_target(b, n), f, &applied_t);
        let moved = fiber_change(&self.biset_source(b, t), &self.biset_source(b, n), f, x);
        let path2 = self.apply(b, n, &moved);
        path1.sub(&path2)
    }
}

/// Convenience wrapper matching the operation signature in reports.
pub fn naturality_defect(
    env: &GroupEnv,
    f: &FiberMap,
    b: &BisetSpec,
    x: &FBElement,
) -> FBElement {
    env.naturality_defect(f, b, x)
}
