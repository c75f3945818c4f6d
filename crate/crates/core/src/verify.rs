//! Named verification suites sweeping the identity and divisibility
//! properties of fibered Burnside rings over the built-in group catalog:
//! conductor formulas, idempotent splitting, mark/ghost membership,
//! biset naturality of fiber change, and the supporting lemmas.
//!
//! Each suite produces one `Check` per property with a counterexample
//! dump on failure; the command line front end renders these and sets the
//! exit status.

use crate::biset::{
    fiber_change, fiber_change_basis_map, idempotent_image, transitive_biset_apply, BisetSpec,
    FiberMap, GroupEnv,
};
use crate::cyclotomic::{divisors, squarefree_part, Int, Rat};
use crate::fibered::{FBElement, FiberedRing};
use crate::group::{join, load_group, n_residual, quotient_by, FiniteGroup, GroupSpec, SectionData, Subgroup, SubgroupLattice};
use num::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// One verified property, with a counterexample dump when it failed.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Check {
    fn from_failures(name: &str, failures: Vec<String>) -> Check {
        if failures.is_empty() {
            Check { name: name.to_string(), pass: true, detail: None }
        } else {
            let clip = |s: &String| {
                if s.len() > 220 {
                    format!("{}...", &s[..220])
                } else {
                    s.clone()
                }
            };
            let shown = failures.iter().take(4).map(clip).collect::<Vec<_>>().join("; ");
            let more = failures.len().saturating_sub(4);
            let detail = if more > 0 {
                format!("{shown}; and {more} more")
            } else {
                shown
            };
            Check { name: name.to_string(), pass: false, detail: Some(detail) }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The groups a verify run sweeps.
pub struct VerifyScope {
    pub groups: Vec<Arc<FiniteGroup>>,
    /// When set, only this fiber order (reduced by gcd with each exponent).
    pub n: Option<u64>,
}

/// Canonical order of the built-in catalog for sweeps and reports.
pub fn catalog_order() -> Vec<&'static str> {
    vec![
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
        "V4", "S3", "S4", "D8", "Q8", "A4", "C4xC2", "C9xC3",
    ]
}

impl VerifyScope {
    pub fn catalog_all() -> VerifyScope {
        let groups = catalog_order()
            .into_iter()
            .map(|name| load_group(&GroupSpec::catalog(name), 128).unwrap())
            .collect();
        VerifyScope { groups, n: None }
    }

    pub fn single(group: Arc<FiniteGroup>, n: Option<u64>) -> VerifyScope {
        VerifyScope { groups: vec![group], n }
    }

    fn fibers_for(&self, g: &FiniteGroup) -> Vec<u64> {
        let e = g.exponent();
        match self.n {
            Some(n) => vec![n.gcd(&e).max(1)],
            None => divisors(e),
        }
    }
}

pub fn run_suite(suite: &str, scope: &VerifyScope) -> Option<SuiteReport> {
    match suite {
        "thm51" => Some(suite_thm51(scope)),
        "splitting" => Some(suite_splitting(scope)),
        "naturality" => Some(suite_naturality(scope)),
        "boltje" => Some(suite_boltje(scope)),
        "lemmas" => Some(suite_lemmas(scope)),
        _ => None,
    }
}

pub fn suite_names() -> Vec<&'static str> {
    vec!["thm51", "splitting", "naturality", "boltje", "lemmas"]
}

fn env_of(g: &Arc<FiniteGroup>) -> Arc<GroupEnv> {
    GroupEnv::new(Arc::clone(g))
}

fn point_label(r: &FiberedRing, p: usize) -> String {
    let point = r.point(p);
    format!(
        "{} n={} (H={:?}, h={})",
        r.group().name(),
        r.fiber_order(),
        r.lattice().subgroup(point.sub).elems(),
        point.h
    )
}

// ---------------------------------------------------------------------
// thm51: conductor formulas and divisibility (criteria 1-4 and 7)
// ---------------------------------------------------------------------

pub fn suite_thm51(scope: &VerifyScope) -> SuiteReport {
    let mut coprime = Vec::new();
    let mut burnside = Vec::new();
    let mut monomial = Vec::new();
    let mut two_sided = Vec::new();
    let mut minimality = Vec::new();
    let mut char_p = Vec::new();

    for g in &scope.groups {
        let env = env_of(g);
        let e = g.exponent();
        for n in scope.fibers_for(g) {
            let ring = env.ring(n);
            let lattice = ring.lattice();
            let coprime_case = e % n == 0 && n.gcd(&(e / n)) == 1;
            for p in 0..ring.points().len() {
                let rep = ring.conductor(p);
                let label = point_label(&ring, p);

                if coprime_case && !rep.matches() {
                    coprime.push(format!("{label}: c={} rhs={}", rep.c, rep.rhs));
                }
                if coprime_case != rep.coprime_case {
                    coprime.push(format!("{label}: coprime flag mismatch"));
                }

                if n == 1 {
                    let point = ring.point(p);
                    let nz = lattice.subgroup(lattice.normalizer_id(point.sub)).order() as u64;
                    let h_ord = lattice.subgroup(point.sub).order() as u64;
                    let der = lattice.subgroup(lattice.derived_id(point.sub)).order() as u64;
                    let expected = (nz / h_ord) * squarefree_part(h_ord / der);
                    if rep.c != expected {
                        burnside.push(format!("{label}: c={} expected={}", rep.c, expected));
                    }
                }

                if n == e {
                    let point = ring.point(p);
                    let der = lattice.subgroup(lattice.derived_id(point.sub)).order() as u64;
                    let expected = rep.stab_order / der;
                    if rep.c != expected {
                        monomial.push(format!("{label}: c={} expected={}", rep.c, expected));
                    }
                }

                // two-sided divisibility and the r | u | [H^[n]:H']_0 chain
                let point = ring.point(p);
                let pos = ring.pos_of_sub(point.sub);
                let res_ord = lattice.subgroup(ring.residual_id(pos)).order() as u64;
                let der = lattice.subgroup(lattice.derived_id(point.sub)).order() as u64;
                let lower = rep.stab_order / res_ord;
                let res_over_der0 = squarefree_part(res_ord / der);
                if rep.c % lower != 0
                    || rep.rhs % rep.c != 0
                    || rep.u % rep.r != 0
                    || res_over_der0 % rep.u != 0
                {
                    two_sided.push(format!(
                        "{label}: lower={lower} c={} rhs={} r={} u={} bound={res_over_der0}",
                        rep.c, rep.rhs, rep.r, rep.u
                    ));
                }

                // minimality: dividing out any prime of c breaks integrality
                let idem = ring.idempotent(p);
                let mut q = 2u64;
                let mut cc = rep.c;
                while cc > 1 {
                    if cc % q == 0 {
                        while cc % q == 0 {
                            cc /= q;
                        }
                        let scaled = idem.scale(&Rat::from_integer(Int::from(rep.c / q)));
                        if scaled.is_integral() {
                            minimality.push(format!("{label}: c/{q} still integral"));
                        }
                    }
                    q += 1;
                }
            }
        }
    }

    // positive-characteristic monomial ring case: with n the p'-part of
    // exp(G), the conductor is [N(H,hH'):H'] when p does not divide
    // [H:H'], and [N(H,hH^[n]):H] t p when [H:H'] = p^a t with a >= 1
    for g in &scope.groups {
        let env = env_of(g);
        let e = g.exponent();
        let mut primes = Vec::new();
        let mut rest = e;
        let mut p = 2u64;
        while rest > 1 {
            if rest % p == 0 {
                primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        for p in primes {
            let mut n = e;
            while n % p == 0 {
                n /= p;
            }
            if scope.n.is_some() && scope.n != Some(n) {
                continue;
            }
            let ring = env.ring(n);
            let lattice = ring.lattice();
            for q in 0..ring.points().len() {
                let rep = ring.conductor(q);
                let point = ring.point(q);
                let h_ord = lattice.subgroup(point.sub).order() as u64;
                let der = lattice.subgroup(lattice.derived_id(point.sub)).order() as u64;
                let mut index = h_ord / der;
                let mut a = 0;
                while index % p == 0 {
                    index /= p;
                    a += 1;
                }
                let expected = if a == 0 {
                    let pos = ring.pos_of_sub(point.sub);
                    if ring.residual_id(pos) != lattice.derived_id(point.sub) {
                        char_p.push(format!(
                            "{} p={p}: H^[{n}] differs from H' at point {q}",
                            g.name()
                        ));
                    }
                    rep.stab_order / der
                } else {
                    (rep.stab_order / h_ord) * index * p
                };
                if rep.c != expected {
                    char_p.push(format!(
                        "{} p={p} n={n} point {q}: c={} expected={expected}",
                        g.name(),
                        rep.c
                    ));
                }
            }
        }
    }

    SuiteReport {
        suite: "thm51".into(),
        checks: vec![
            Check::from_failures("thm51.coprime-equality", coprime),
            Check::from_failures("thm51.burnside-n1", burnside),
            Check::from_failures("thm51.monomial-nexp", monomial),
            Check::from_failures("thm51.two-sided-divisibility", two_sided),
            Check::from_failures("thm51.conductor-minimality", minimality),
            Check::from_failures("thm51.char-p-monomial-case", char_p),
        ],
    }
}

// ---------------------------------------------------------------------
// splitting: idempotent decomposition and species (criterion 5)
// ---------------------------------------------------------------------

pub fn suite_splitting(scope: &VerifyScope) -> SuiteReport {
    let mut completeness = Vec::new();
    let mut orthogonality = Vec::new();
    let mut indicator = Vec::new();
    let mut ring_hom = Vec::new();
    let mut distinct = Vec::new();
    let mut invertible = Vec::new();

    for g in &scope.groups {
        let env = env_of(g);
        for n in scope.fibers_for(g) {
            let ring = env.ring(n);
            let label = format!("{} n={}", g.name(), n);
            let idems: Vec<FBElement> =
                (0..ring.points().len()).map(|p| ring.idempotent(p)).collect();

            let mut total = ring.zero();
            for e in &idems {
                total = total.add(e);
            }
            if total != ring.unit() {
                completeness.push(format!(
                    "{label}: sum = {} but unit = {}",
                    ring.format_element(&total),
                    ring.format_element(&ring.unit())
                ));
            }

            for p in 0..idems.len() {
                for q in p..idems.len() {
                    let prod = ring.mul(&idems[p], &idems[q]);
                    let ok = if p == q { prod == idems[p] } else { prod.is_zero() };
                    if !ok {
                        orthogonality.push(format!(
                            "{label} points ({p},{q}): e_p e_q = {}",
                            ring.format_element(&prod)
                        ));
                    }
                }
            }

            for q in 0..ring.points().len() {
                for (p, e) in idems.iter().enumerate() {
                    let v = ring.species_eval(q, e);
                    let ok = if p == q { v.is_one() } else { v.is_zero() };
                    if !ok {
                        indicator.push(format!("{label} s_{q}(e_{p}) = {v}"));
                    }
                }
            }

            // species are ring homomorphisms on all basis pairs
            let table = ring.species_table();
            'hom: for i in 0..ring.rank() {
                for j in 0..ring.rank() {
                    let prod = ring.mul(
                        &ring.basis_element(i as u32),
                        &ring.basis_element(j as u32),
                    );
                    for s in 0..ring.points().len() {
                        let lhs = ring.species_eval(s, &prod);
                        let rhs = table[s][i].mul(&table[s][j]);
                        if !lhs.equiv(&rhs) {
                            ring_hom.push(format!("{label} s_{s}([b{i}][b{j}])"));
                            break 'hom;
                        }
                    }
                }
            }

            for p in 0..ring.points().len() {
                for q in p + 1..ring.points().len() {
                    if table[p] == table[q] {
                        distinct.push(format!("{label} points ({p},{q})"));
                    }
                }
            }

            if !crate::linalg::invertible_cyclotomic(&table) {
                invertible.push(label.clone());
            }
        }
    }

    SuiteReport {
        suite: "splitting".into(),
        checks: vec![
            Check::from_failures("splitting.completeness", completeness),
            Check::from_failures("splitting.orthogonality", orthogonality),
            Check::from_failures("splitting.species-indicator", indicator),
            Check::from_failures("splitting.species-ring-hom", ring_hom),
            Check::from_failures("splitting.species-distinct", distinct),
            Check::from_failures("splitting.species-matrix-invertible", invertible),
        ],
    }
}

// ---------------------------------------------------------------------
// boltje: mark morphism and ghost membership (criterion 6)
// ---------------------------------------------------------------------

fn random_integral_ghost(ring: &FiberedRing, rng: &mut ChaCha8Rng) -> crate::fibered::GhostElement {
    let degree = ring.field().degree();
    let mut coords = Vec::with_capacity(ring.rank());
    for _ in 0..ring.rank() {
        let cs: Vec<Rat> = (0..degree)
            .map(|_| Rat::from_integer(Int::from(rng.gen_range(-3i64..=3))))
            .collect();
        coords.push(ring.field().from_coords(cs));
    }
    ring.ghost_from_coords(coords)
}

pub fn suite_boltje(scope: &VerifyScope) -> SuiteReport {
    let mut ring_hom = Vec::new();
    let mut annihilate = Vec::new();
    let mut oracle = Vec::new();

    for g in &scope.groups {
        let env = env_of(g);
        for n in scope.fibers_for(g) {
            let ring = env.ring(n);
            let label = format!("{} n={}", g.name(), n);

            // rho is a ring homomorphism on all pairs of basis elements
            let marks: Vec<_> = (0..ring.rank())
                .map(|i| ring.mark(&ring.basis_element(i as u32)))
                .collect();
            if ring.mark(&ring.unit()) != ring.ghost_one() {
                ring_hom.push(format!("{label}: rho(unit)"));
            }
            'outer: for i in 0..ring.rank() {
                for j in i..ring.rank() {
                    let prod = ring.mul(
                        &ring.basis_element(i as u32),
                        &ring.basis_element(j as u32),
                    );
                    if ring.mark(&prod) != ring.ghost_mul(&marks[i], &marks[j]) {
                        ring_hom.push(format!("{label}: rho(b{i} b{j})"));
                        break 'outer;
                    }
                }
            }

            if !ring.mark_matrix_invertible() {
                ring_hom.push(format!("{label}: mark matrix singular"));
            }

            // |G| * ghost unit vectors lie in the image
            let order = ring.ambient_order() as i64;
            for i in 0..ring.rank() {
                let y = ring.ghost_unit(i as u32).scale(&Rat::from_integer(Int::from(order)));
                if !ring.boltje_membership(&y).unwrap_or(false) {
                    annihilate.push(format!("{label}: |G| * unit {i}"));
                }
            }

            // randomized agreement with the exact linear-solve oracle
            if g.order() <= 12 {
                let mut seed = 0u64;
                for b in g.name().bytes() {
                    seed = seed.wrapping_mul(131).wrapping_add(b as u64);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(n));
                for trial in 0..100 {
                    let y = random_integral_ghost(&ring, &mut rng);
                    let fast = ring.boltje_membership(&y).unwrap();
                    let slow = ring
                        .mark_preimage(&y)
                        .map(|x| x.is_integral())
                        .unwrap_or(false);
                    if fast != slow {
                        oracle.push(format!("{label} trial {trial}: fast={fast} slow={slow}"));
                    }
                }
            }
        }
    }

    SuiteReport {
        suite: "boltje".into(),
        checks: vec![
            Check::from_failures("boltje.mark-ring-hom", ring_hom),
            Check::from_failures("boltje.order-annihilates-cokernel", annihilate),
            Check::from_failures("boltje.criterion-vs-solve-oracle", oracle),
        ],
    }
}

// ---------------------------------------------------------------------
// naturality: fiber change maps and biset operations (criteria 8 and 9)
// ---------------------------------------------------------------------

fn all_fiber_maps(max: u64) -> Vec<FiberMap> {
    let mut out = Vec::new();
    for t in 1..=max {
        for n in 1..=max {
            for k in 0..n {
                if let Ok(f) = FiberMap::new(t, n, k) {
                    out.push(f);
                }
            }
        }
    }
    out
}

fn inversion_automorphism(g: &FiniteGroup) -> Option<Vec<u16>> {
    let map: Vec<u16> = g.elements().map(|x| g.inv(x)).collect();
    let abelian = (0..g.order() as u16)
        .all(|a| (0..g.order() as u16).all(|b| g.mul(a, b) == g.mul(b, a)));
    abelian.then_some(map)
}

fn elementary_ops(env: &GroupEnv) -> Vec<BisetSpec> {
    let lattice = env.lattice();
    let full = lattice.full_id();
    let mut ops = Vec::new();
    for class in lattice.classes() {
        let h = class[0];
        ops.push(BisetSpec::Res { h });
        ops.push(BisetSpec::Ind { h });
    }
    for s in 0..lattice.len() {
        if lattice.normalizer_id(s) == full {
            ops.push(BisetSpec::Inf { n: s });
        }
    }
    for g_elem in env.group().elements() {
        ops.push(BisetSpec::Conj { g: g_elem });
    }
    ops.push(BisetSpec::Iso { map: env.group().elements().collect() });
    if let Some(map) = inversion_automorphism(env.group()) {
        ops.push(BisetSpec::Iso { map });
    }
    ops
}

fn right_free(b: &BisetSpec) -> bool {
    !matches!(b, BisetSpec::Def { .. })
}

/// Checks one elementary operation against the general engine on every
/// basis element.
fn engine_matches(env: &GroupEnv, n: u64, b: &BisetSpec, failures: &mut Vec<String>) {
    let group = env.group();
    let lattice = env.lattice();
    let src = env.biset_source(b, n);
    let label = format!("{} n={} {:?}", group.name(), n, b);
    for i in 0..src.rank() {
        let x = src.basis_element(i as u32);
        let direct = env.apply(b, n, &x);
        let engine = match b {
            BisetSpec::Res { h } => {
                let diag = SectionData::graph(group, group, lattice.subgroup(*h), |v| v).unwrap();
                transitive_biset_apply(&env.subring(*h, n), &env.ring(n), &diag, &x)
            }
            BisetSpec::Ind { h } => {
                let diag = SectionData::graph(group, group, lattice.subgroup(*h), |v| v).unwrap();
                transitive_biset_apply(&env.ring(n), &env.subring(*h, n), &diag, &x)
            }
            BisetSpec::Inf { n: n_id } => {
                let (q, qenv) = env.quotient(*n_id);
                let pairs: Vec<(u16, u16)> =
                    group.elements().map(|v| (v, q.project(v))).collect();
                let e = SectionData::new(group, &q.group, pairs).unwrap();
                transitive_biset_apply(&env.ring(n), &qenv.ring(n), &e, &x)
            }
            BisetSpec::Def { n: n_id } => {
                let (q, qenv) = env.quotient(*n_id);
                let full = Subgroup::full(group);
                let e = SectionData::graph(&q.group, group, &full, |v| q.project(v)).unwrap();
                transitive_biset_apply(&qenv.ring(n), &env.ring(n), &e, &x)
            }
            BisetSpec::Conj { g } => {
                let full = Subgroup::full(group);
                let e = SectionData::graph(group, group, &full, |v| group.conj(*g, v)).unwrap();
                transitive_biset_apply(&env.ring(n), &env.ring(n), &e, &x)
            }
            BisetSpec::Iso { map } => {
                let full = Subgroup::full(group);
                let e = SectionData::graph(group, group, &full, |v| map[v as usize]).unwrap();
                transitive_biset_apply(&env.ring(n), &env.ring(n), &e, &x)
            }
        };
        if direct != engine {
            let target = env.biset_target(b, n);
            failures.push(format!(
                "{label} basis {i}: direct = {} but engine = {}",
                target.format_element(&direct),
                target.format_element(&engine)
            ));
            return;
        }
    }
}

pub fn suite_naturality(scope: &VerifyScope) -> SuiteReport {
    let mut engine_cross = Vec::new();
    let mut ring_hom = Vec::new();
    let mut criteria = Vec::new();
    let mut right_free_defects = Vec::new();
    let mut counterexample = Vec::new();
    let mut dichotomy = Vec::new();
    let mut images = Vec::new();
    let mut pullback = Vec::new();
    let mut witness = Vec::new();
    let mut frobenius = Vec::new();

    let small: Vec<&Arc<FiniteGroup>> =
        scope.groups.iter().filter(|g| g.order() <= 12).collect();

    for g in &small {
        let env = env_of(g);
        let n = g.exponent();
        for b in elementary_ops(&env) {
            engine_matches(&env, n, &b, &mut engine_cross);
        }
    }

    // fiber change is a ring homomorphism, randomized products
    for g in &small {
        let env = env_of(g);
        let mut seed = 1u64;
        for b in g.name().bytes() {
            seed = seed.wrapping_mul(131).wrapping_add(b as u64);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps = all_fiber_maps(6);
        for _ in 0..8 {
            let f = maps[rng.gen_range(0..maps.len())];
            let src = env.ring(f.source());
            let dst = env.ring(f.target());
            let x = src.basis_element(rng.gen_range(0..src.rank()) as u32);
            let y = src.basis_element(rng.gen_range(0..src.rank()) as u32);
            let lhs = fiber_change(&src, &dst, &f, &src.mul(&x, &y));
            let rhs = dst.mul(
                &fiber_change(&src, &dst, &f, &x),
                &fiber_change(&src, &dst, &f, &y),
            );
            let unit_ok = fiber_change(&src, &dst, &f, &src.unit()) == dst.unit();
            if lhs != rhs || !unit_ok {
                ring_hom.push(format!("{} f={:?}", g.name(), f));
            }
        }
    }

    // the injectivity and isomorphism criteria against the brute-force basis map
    for g in &small {
        let env = env_of(g);
        for f in all_fiber_maps(6) {
            let src = env.ring(f.source());
            let dst = env.ring(f.target());
            let map = fiber_change_basis_map(&src, &dst, &f);
            let mut image = map.clone();
            image.sort_unstable();
            image.dedup();
            let brute_inj = image.len() == map.len();
            let brute_bij = brute_inj && image.len() == dst.rank();
            if crate::biset::fiber_change_injective(&f, g) != brute_inj {
                criteria.push(format!("{} f={:?} injectivity", g.name(), f));
            }
            if crate::biset::fiber_change_iso(&f, g) != brute_bij {
                criteria.push(format!("{} f={:?} isomorphism", g.name(), f));
            }
        }
    }

    // right-free operations commute with every fiber change
    let rep_maps: Vec<FiberMap> = vec![
        FiberMap::projection(2, 1),
        FiberMap::projection(4, 2),
        FiberMap::projection(6, 2),
        FiberMap::projection(6, 3),
        FiberMap::inclusion(2, 4),
        FiberMap::inclusion(2, 6),
        FiberMap::inclusion(3, 6),
        FiberMap::new(4, 6, 3).unwrap(),
    ];
    for g in &small {
        let env = env_of(g);
        for f in &rep_maps {
            for b in elementary_ops(&env) {
                if !right_free(&b) {
                    continue;
                }
                let src = env.biset_source(&b, f.source());
                for i in 0..src.rank() {
                    let x = src.basis_element(i as u32);
                    if !env.naturality_defect(f, &b, &x).is_zero() {
                        right_free_defects.push(format!(
                            "{} f={} {} basis {i}",
                            g.name(),
                            f.to_json(),
                            b.to_json(env.lattice())
                        ));
                        break;
                    }
                }
            }
        }
    }

    // the deflation counterexample, exactly
    for n in [2u64, 3, 4] {
        let name = format!("C{n}");
        let g = load_group(&GroupSpec::catalog(&name), 128).unwrap();
        let env = env_of(&g);
        let full = env.lattice().full_id();
        let f = FiberMap::projection(n, 1);
        let b = BisetSpec::Def { n: full };
        let faithful: Vec<u32> = (0..n as u32).collect();
        let x = env.ring(n).pair_element(full, &faithful);
        let defect = env.naturality_defect(&f, &b, &x);
        let unit = env.quotient(full).1.ring(1).unit();
        if defect != unit.neg() {
            counterexample.push(format!("n={n}: defect {defect:?}"));
        }
    }

    // dichotomy over the bounded sweep: injective on the
    // exp(G)-torsion iff all deflation defects vanish
    for g in &small {
        let env = env_of(g);
        let lattice = env.lattice();
        let normals: Vec<usize> = (0..lattice.len())
            .filter(|&s| lattice.normalizer_id(s) == lattice.full_id())
            .collect();
        for f in all_fiber_maps(6) {
            let injective = f.injective_on(g.exponent());
            let src = env.ring(f.source());
            let mut found = false;
            'search: for &n_id in &normals {
                let b = BisetSpec::Def { n: n_id };
                for i in 0..src.rank() {
                    let x = src.basis_element(i as u32);
                    if !env.naturality_defect(&f, &b, &x).is_zero() {
                        found = true;
                        if injective {
                            dichotomy
                                .push(format!("{} f={:?} N={n_id} basis {i}", g.name(), f));
                        }
                        break 'search;
                    }
                }
            }
            if !injective && !found {
                dichotomy.push(format!("{} f={:?}: no deflation defect found", g.name(), f));
            }
        }
    }

    // idempotent images expand exactly as sums of target idempotents
    for g in &small {
        let env = env_of(g);
        let e = g.exponent();
        for n in divisors(e) {
            for t in divisors(n) {
                let rt = env.ring(t);
                let rn = env.ring(n);
                let inc = FiberMap::inclusion(t, n);
                for p in 0..rt.points().len() {
                    match idempotent_image(&rt, &rn, &inc, p) {
                        Ok((image, expansion)) if image == expansion => {}
                        _ => images.push(format!("{} i({t},{n}) point {p}", g.name())),
                    }
                }
                let pi = FiberMap::projection(n, t);
                for p in 0..rn.points().len() {
                    match idempotent_image(&rn, &rt, &pi, p) {
                        Ok((image, expansion)) if image == expansion => {}
                        _ => images.push(format!("{} pi({n},{t}) point {p}", g.name())),
                    }
                }
            }
        }
    }

    // species pull back along fiber changes
    for g in &small {
        let env = env_of(g);
        let group = env.group();
        let e = g.exponent();
        for n in divisors(e) {
            for t in divisors(n) {
                let rt = env.ring(t);
                let rn = env.ring(n);
                let inc = FiberMap::inclusion(t, n);
                let pi = FiberMap::projection(n, t);
                for p in 0..rn.points().len() {
                    let point = rn.point(p).clone();
                    let pt = rt.canonical_point(point.sub, point.h);
                    for i in 0..rt.rank() {
                        let x = rt.basis_element(i as u32);
                        let lhs = rn.species_eval(p, &fiber_change(&rt, &rn, &inc, &x));
                        let rhs = rt.species_eval(pt, &x);
                        if !lhs.equiv(&rhs) {
                            pullback.push(format!("{} i({t},{n}) point {p} basis {i}", g.name()));
                        }
                    }
                }
                for pt in 0..rt.points().len() {
                    let point = rt.point(pt).clone();
                    let pn = rn.canonical_point(point.sub, group.pow(point.h, (n / t) as i64));
                    for i in 0..rn.rank() {
                        let x = rn.basis_element(i as u32);
                        let lhs = rt.species_eval(pt, &fiber_change(&rn, &rt, &pi, &x));
                        let rhs = rn.species_eval(pn, &x);
                        if !lhs.equiv(&rhs) {
                            pullback.push(format!("{} pi({n},{t}) point {pt} basis {i}", g.name()));
                        }
                    }
                }
            }
        }
    }

    // non-surjectivity witness for C4 x C2
    if scope.groups.iter().any(|g| g.name() == "C4xC2") {
        let g = load_group(&GroupSpec::catalog("C4xC2"), 128).unwrap();
        let env = env_of(&g);
        let r4 = env.ring(4);
        let r2 = env.ring(2);
        let full = env.lattice().full_id();
        let eta: Vec<u32> = (0..8u16).map(|i| ((i / 2 + i % 2) % 2) as u32).collect();
        let w = r2.pair_element(full, &eta);
        let w_index = *w.coeffs().keys().next().unwrap();
        let image = fiber_change_basis_map(&r4, &r2, &FiberMap::projection(4, 2));
        if image.contains(&w_index) {
            witness.push("[G,eta] unexpectedly hit by (pi_4,2)_*".into());
        }
    }

    // Frobenius identity and Mackey consistency on random instances
    for g in &small {
        if g.order() < 2 {
            continue;
        }
        let env = env_of(g);
        let n = g.exponent();
        let ring = env.ring(n);
        let lattice = env.lattice();
        let mut seed = 7u64;
        for b in g.name().bytes() {
            seed = seed.wrapping_mul(131).wrapping_add(b as u64);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let class = rng.gen_range(0..lattice.classes().len());
            let h = lattice.class_rep(class);
            let rh = env.subring(h, n);
            let x = ring.basis_element(rng.gen_range(0..ring.rank()) as u32);
            let y = rh.basis_element(rng.gen_range(0..rh.rank()) as u32);
            let lhs = crate::biset::induce(
                &rh,
                &ring,
                &rh.mul(&crate::biset::restrict(&ring, &rh, &x), &y),
            );
            let rhs = ring.mul(&x, &crate::biset::induce(&rh, &ring, &y));
            if lhs != rhs {
                frobenius.push(format!("{} H-class {class}", g.name()));
            }
            // ind then res along the same subgroup is multiplication by [H,1]
            let back = crate::biset::induce(&rh, &ring, &crate::biset::restrict(&ring, &rh, &x));
            let hp = ring.pos_of_sub(h);
            let h_unit = ring.basis_element(ring.basis_index(hp, 0));
            if back != ring.mul(&h_unit, &x) {
                frobenius.push(format!("{} ind.res H-class {class}", g.name()));
            }
        }
    }

    SuiteReport {
        suite: "naturality".into(),
        checks: vec![
            Check::from_failures("naturality.engine-vs-elementary", engine_cross),
            Check::from_failures("naturality.fiber-change-ring-hom", ring_hom),
            Check::from_failures("naturality.injectivity-criteria", criteria),
            Check::from_failures("naturality.right-free-defect", right_free_defects),
            Check::from_failures("naturality.deflation-counterexample", counterexample),
            Check::from_failures("naturality.torsion-dichotomy", dichotomy),
            Check::from_failures("naturality.idempotent-images", images),
            Check::from_failures("naturality.species-pullback", pullback),
            Check::from_failures("naturality.non-surjectivity-witness", witness),
            Check::from_failures("naturality.frobenius-mackey", frobenius),
        ],
    }
}

// ---------------------------------------------------------------------
// lemmas: residual subgroups, restriction fibers, divisibility (crit 10)
// ---------------------------------------------------------------------

pub fn suite_lemmas(scope: &VerifyScope) -> SuiteReport {
    let mut residual_ids = Vec::new();
    let mut fibers = Vec::new();
    let mut divisibility = Vec::new();
    let mut transport = Vec::new();
    let mut moebius = Vec::new();
    let mut butterfly = Vec::new();
    let mut determinism = Vec::new();

    for g in &scope.groups {
        let lattice = SubgroupLattice::new(Arc::clone(g));
        let name = g.name().to_string();
        let exp = g.exponent();

        // residual subgroup identities, five assertions over every subgroup
        for s in 0..lattice.len() {
            let h = lattice.subgroup(s);
            let h_exp = h
                .elems()
                .iter()
                .fold(1u64, |acc, &x| acc.lcm(&(g.order_of(x) as u64)));
            let derived = lattice.subgroup(lattice.derived_id(s));
            if n_residual(g, h, h_exp) != *derived || n_residual(g, h, 1) != *h {
                residual_ids.push(format!("{name} sub {s}: extremes"));
            }
            let ds: Vec<u64> = divisors(exp);
            for &n in &ds {
                let hn = n_residual(g, h, n);
                for &m in &ds {
                    if m % n == 0 && !n_residual(g, h, m).is_subset_of(&hn) {
                        residual_ids.push(format!("{name} sub {s}: monotone ({n},{m})"));
                    }
                }
                // H^[n] = H^[(n, exp(H))], including n beyond the exponent
                let reduced = n_residual(g, h, n.gcd(&h_exp));
                if hn != reduced {
                    residual_ids.push(format!("{name} sub {s}: gcd reduction n={n}"));
                }
                let beyond = n_residual(g, h, n + exp);
                if beyond != n_residual(g, h, (n + exp).gcd(&h_exp)) {
                    residual_ids.push(format!("{name} sub {s}: gcd reduction n={}", n + exp));
                }
                // (H/H')^[n] = H^[n]/H'
                let q = quotient_by(g, h, derived, "H/H'").unwrap();
                let qfull = Subgroup::full(&q.group);
                let qres = n_residual(&q.group, &qfull, n);
                let pre = q.preimage(qres.elems());
                if pre != hn.elems() {
                    residual_ids.push(format!("{name} sub {s}: quotient residual n={n}"));
                }
            }
            // K <= H implies K^[n] <= H^[n]
            for k_id in lattice.below(s) {
                let k = lattice.subgroup(k_id);
                for &n in &ds {
                    if !n_residual(g, k, n).is_subset_of(&n_residual(g, h, n)) {
                        residual_ids.push(format!("{name} subs {k_id}<={s} n={n}"));
                    }
                }
            }
        }

        // restriction fiber counts against brute force over Hom(G, C_n)
        let env = env_of(g);
        for n in scope.fibers_for(g) {
            let ring = env.ring(n);
            let full_homs = ring.hom_group(lattice.full_id());
            for class in lattice.classes() {
                let h_id = class[0];
                let h = lattice.subgroup(h_id);
                let mut images: Vec<Vec<u32>> = full_homs
                    .iter()
                    .map(|hom| h.elems().iter().map(|&x| hom.values[x as usize]).collect())
                    .collect();
                images.sort_unstable();
                let total = images.len() as u64;
                images.dedup();
                let image_size = images.len() as u64;
                let fiber_size = total / image_size;
                let (img, fib) = ring.restriction_fibers(h_id);
                if (img, fib) != (image_size, fiber_size) || img * fib != total {
                    fibers.push(format!(
                        "{name} n={n} H={h_id}: got ({img},{fib}) expected ({image_size},{fiber_size})"
                    ));
                }
            }
        }

        // [N_G(H):H] divides mu(H,G) [G:HG']_0
        let full_id = lattice.full_id();
        let g_derived = lattice.subgroup(lattice.derived_id(full_id));
        for s in 0..lattice.len() {
            let h = lattice.subgroup(s);
            let nz = lattice.subgroup(lattice.normalizer_id(s)).order() as i64;
            let idx = nz / h.order() as i64;
            let hg = join(g, h, g_derived);
            let mu = lattice.moebius(s, full_id);
            let bound = mu * squarefree_part((g.order() / hg.order()) as u64) as i64;
            if bound % idx != 0 {
                divisibility.push(format!("{name} sub {s}: {idx} does not divide {bound}"));
            }
        }

        // idempotent restriction and induction transport
        for n in scope.fibers_for(g) {
            let ring = env.ring(n);
            for p in 0..ring.points().len() {
                let point = ring.point(p).clone();
                let h_id = point.sub;
                let sub_ring = env.subring(h_id, n);
                let e = ring.idempotent(p);
                // res^G_H e^{G,n}_{H,h} = sum of e^{H,n}_{H,u} over the
                // cosets u with [H, uH^[n]]_G = [H, hH^[n]]_G
                let restricted = crate::biset::restrict(&ring, &sub_ring, &e);
                let mut expected = sub_ring.zero();
                for q in 0..sub_ring.points().len() {
                    let qp = sub_ring.point(q);
                    if qp.sub == h_id && ring.canonical_point(h_id, qp.h) == p {
                        expected = expected.add(&sub_ring.idempotent(q));
                    }
                }
                if restricted != expected {
                    transport.push(format!(
                        "{name} n={n} point {p}: res e = {} but sum = {}",
                        sub_ring.format_element(&restricted),
                        sub_ring.format_element(&expected)
                    ));
                }
                // ind res e = [N_G(H) : H] e
                let back = crate::biset::induce(&sub_ring, &ring, &restricted);
                let nz = lattice.subgroup(lattice.normalizer_id(h_id)).order() as i64;
                let factor = Rat::from_integer(Int::from(nz / lattice.subgroup(h_id).order() as i64));
                if back != e.scale(&factor) {
                    transport.push(format!("{name} n={n} point {p}: ind res"));
                }
                // ind e^{H,n}_{H,h} = [N_G(H, hH^[n]) : H] e^{G,n}_{H,h}
                let h_point = sub_ring.canonical_point(h_id, point.h);
                let up = crate::biset::induce(&sub_ring, &ring, &sub_ring.idempotent(h_point));
                let stab = lattice.subgroup(point.stab).order() as i64;
                let factor = Rat::from_integer(Int::from(stab / lattice.subgroup(h_id).order() as i64));
                if up != e.scale(&factor) {
                    transport.push(format!("{name} n={n} point {p}: induction"));
                }
            }
        }

        // Moebius inversion over all intervals
        for k in 0..lattice.len() {
            for h in 0..lattice.len() {
                if !lattice.leq(k, h) || k == h {
                    continue;
                }
                let total: i64 = lattice.interval(k, h).iter().map(|&l| lattice.moebius(k, l)).sum();
                if total != 0 {
                    moebius.push(format!("{name} interval ({k},{h})"));
                }
            }
        }

        // determinism: rebuilding yields identical representatives
        let lattice2 = SubgroupLattice::new(Arc::clone(g));
        if lattice.subgroups() != lattice2.subgroups()
            || lattice.classes() != lattice2.classes()
        {
            determinism.push(format!("{name}: lattice"));
        }
        for n in scope.fibers_for(g) {
            let r1 = env.ring(n);
            let r2 = FiberedRing::new(Arc::clone(&lattice2), n);
            let b1: Vec<_> = r1.basis_pairs();
            let b2: Vec<_> = r2.basis_pairs();
            if b1 != b2 {
                determinism.push(format!("{name} n={n}: basis"));
            }
        }
    }

    // butterfly equality over every subgroup of small products
    for (a, b) in [("C2", "S3"), ("C4", "C4"), ("S3", "S3")] {
        let ga = load_group(&GroupSpec::catalog(a), 128).unwrap();
        let gb = load_group(&GroupSpec::catalog(b), 128).unwrap();
        let prod = Arc::new(crate::group::product_group(&ga, &gb, "AxB"));
        let lattice = SubgroupLattice::new(Arc::clone(&prod));
        let nb = gb.order() as u16;
        for s in 0..lattice.len() {
            let pairs: Vec<(u16, u16)> = lattice
                .subgroup(s)
                .elems()
                .iter()
                .map(|&x| (x / nb, x % nb))
                .collect();
            let section = SectionData::new(&ga, &gb, pairs).unwrap();
            if section.p1().order() * section.k2().order()
                != section.p2().order() * section.k1().order()
            {
                butterfly.push(format!("{a}x{b} subgroup {s}"));
            }
        }
    }

    SuiteReport {
        suite: "lemmas".into(),
        checks: vec![
            Check::from_failures("lemmas.residual-identities", residual_ids),
            Check::from_failures("lemmas.restriction-fibers", fibers),
            Check::from_failures("lemmas.normalizer-index-divisibility", divisibility),
            Check::from_failures("lemmas.idempotent-transport", transport),
            Check::from_failures("lemmas.moebius-inversion", moebius),
            Check::from_failures("lemmas.butterfly-equality", butterfly),
            Check::from_failures("lemmas.determinism", determinism),
        ],
    }
}
