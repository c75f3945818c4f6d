//! The fibered Burnside ring B^Cn(G) of a finite group with cyclic fiber
//! C_n: monomial basis, multiplication, mark morphism into the ghost ring,
//! species, primitive idempotents, and conductors.
//!
//! A `FiberedRing` is the computational context for one pair (ambient
//! group, fiber order n). It owns the orbit-canonicalization tables for
//! monomial pairs and species points; every ring element refers to basis
//! indices of its context. The ambient group may be a subgroup of the
//! parent, which keeps restriction and induction free of relabeling.

mod conductor;
mod element;
mod mark;
mod species;

pub use conductor::ConductorReport;
pub use element::FBElement;
pub use mark::GhostElement;

use crate::cyclotomic::CycField;
use crate::group::{
    coset_stabilizer, n_residual, quotient_by, FiniteGroup, Subgroup, SubgroupLattice,
};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FiberedError {
    #[error("ghost element has a non-integral coefficient at basis pair {0}")]
    NonIntegralGhost(usize),
    #[error("element {0} does not lie in the subgroup")]
    ElementOutsideSubgroup(u16),
}

/// A homomorphism from a subgroup into Z/n, stored as the full value
/// vector over the subgroup's sorted elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberHom {
    /// lattice id of the domain subgroup
    pub sub: usize,
    /// exponents in Z/n, aligned with the subgroup's element list
    pub values: Vec<u32>,
}

/// A monomial pair (H, phi) given by lattice id and hom id within its ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonomialPair {
    pub sub: usize,
    pub hom: usize,
}

/// One species / primitive idempotent index: a subgroup H together with a
/// coset h*H^\[n\], represented by the minimal element of the coset.
#[derive(Clone, Debug)]
pub struct SpeciesPoint {
    pub index: usize,
    /// lattice id of H
    pub sub: usize,
    /// minimal element of the coset h*H^\[n\]
    pub h: u16,
    /// lattice id of the stabilizer N_amb(H, h H^\[n\])
    pub stab: usize,
}

static RING_IDS: AtomicU64 = AtomicU64::new(1);

/// Computational context for B^Cn(ambient).
pub struct FiberedRing {
    id: u64,
    group: Arc<FiniteGroup>,
    lattice: Arc<SubgroupLattice>,
    ambient: usize,
    n: u64,
    field: Arc<CycField>,
    amb_elems: Vec<u16>,
    /// lattice ids of subgroups of the ambient, ascending
    subs: Vec<usize>,
    pos_of: HashMap<usize, usize>,
    /// lattice id of S^\[n\] per position
    residual: Vec<usize>,
    /// homomorphism value vectors per position, sorted lexicographically
    homs: Vec<Vec<Vec<u32>>>,
    hom_of: Vec<HashMap<Vec<u32>, usize>>,
    /// canonical (pos, hom) per (pos, hom)
    pair_canon: Vec<Vec<(u32, u32)>>,
    pair_basis: HashMap<(u32, u32), u32>,
    /// canonical pairs as (pos, hom), ascending
    basis: Vec<(usize, usize)>,
    /// lattice id of N_amb(H, phi) per basis index
    stab: Vec<usize>,
    points: Vec<SpeciesPoint>,
    /// minimal coset element per (pos, element position in subgroup)
    coset_min: Vec<Vec<u16>>,
    point_canon: Vec<HashMap<u16, u32>>,
    mult_memo: Mutex<HashMap<(u32, u32), Arc<Vec<(u32, u32)>>>>,
    mark_matrix: Mutex<Option<Arc<Vec<Vec<u64>>>>>,
    species_table: Mutex<Option<Arc<Vec<Vec<crate::cyclotomic::CycNum>>>>>,
    idem_memo: Mutex<HashMap<usize, FBElement>>,
}

impl FiberedRing {
    /// Context over the full group.
    pub fn new(lattice: Arc<SubgroupLattice>, n: u64) -> Arc<FiberedRing> {
        let full = lattice.full_id();
        FiberedRing::over_subgroup(lattice, full, n)
    }

    /// Context over an ambient subgroup, in parent element indices.
    pub fn over_subgroup(lattice: Arc<SubgroupLattice>, ambient: usize, n: u64) -> Arc<FiberedRing> {
        assert!(n >= 1, "fiber order must be positive");
        let group = Arc::clone(lattice.group());
        let amb_elems = lattice.subgroup(ambient).elems().to_vec();
        let subs = lattice.below(ambient);
        let pos_of: HashMap<usize, usize> =
            subs.iter().enumerate().map(|(p, &id)| (id, p)).collect();

        let mut residual = Vec::with_capacity(subs.len());
        let mut homs = Vec::with_capacity(subs.len());
        let mut hom_of = Vec::with_capacity(subs.len());
        for &id in &subs {
            let sub = lattice.subgroup(id);
            let res = n_residual(&group, sub, n);
            let res_id = lattice.id_of(&res);
            let value_vecs = enumerate_homs(&group, sub, &res, n);
            let map: HashMap<Vec<u32>, usize> = value_vecs
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), i))
                .collect();
            residual.push(res_id);
            homs.push(value_vecs);
            hom_of.push(map);
        }

        let mut ring = FiberedRing {
            id: RING_IDS.fetch_add(1, Ordering::Relaxed),
            group,
            lattice,
            ambient,
            n,
            field: CycField::get(n),
            amb_elems,
            subs,
            pos_of,
            residual,
            homs,
            hom_of,
            pair_canon: Vec::new(),
            pair_basis: HashMap::new(),
            basis: Vec::new(),
            stab: Vec::new(),
            points: Vec::new(),
            coset_min: Vec::new(),
            point_canon: Vec::new(),
            mult_memo: Mutex::new(HashMap::new()),
            mark_matrix: Mutex::new(None),
            species_table: Mutex::new(None),
            idem_memo: Mutex::new(HashMap::new()),
        };
        ring.build_pair_orbits();
        ring.build_points();
        assert_eq!(
            ring.basis.len(),
            ring.points.len(),
            "species points must biject with the monomial basis"
        );
        Arc::new(ring)
    }

    fn build_pair_orbits(&mut self) {
        let unset = (u32::MAX, u32::MAX);
        self.pair_canon = self
            .homs
            .iter()
            .map(|hs| vec![unset; hs.len()])
            .collect();
        for p in 0..self.subs.len() {
            for f in 0..self.homs[p].len() {
                if self.pair_canon[p][f] != unset {
                    continue;
                }
                // ascending scan: (p, f) is the orbit minimum
                let canon = (p as u32, f as u32);
                let basis_idx = self.basis.len() as u32;
                let mut orbit = vec![(p, f)];
                self.pair_canon[p][f] = canon;
                let mut head = 0;
                while head < orbit.len() {
                    let (cp, cf) = orbit[head];
                    head += 1;
                    for gi in 0..self.amb_elems.len() {
                        let g = self.amb_elems[gi];
                        let (tp, tf) = self.conj_pair(g, cp, cf);
                        if self.pair_canon[tp][tf] == unset {
                            self.pair_canon[tp][tf] = canon;
                            orbit.push((tp, tf));
                        }
                    }
                }
                self.pair_basis.insert(canon, basis_idx);
                self.basis.push((p, f));
                // stabilizer of the canonical pair
                let sub_id = self.subs[p];
                let nz = self.normalizer_in_ambient(sub_id);
                let stab_elems: Vec<u16> = self
                    .lattice
                    .subgroup(nz)
                    .elems()
                    .iter()
                    .copied()
                    .filter(|&g| self.conj_pair(g, p, f) == (p, f))
                    .collect();
                let stab_id = self.lattice.id_of_elems(&stab_elems);
                self.stab.push(stab_id);
            }
        }
    }

    fn build_points(&mut self) {
        // coset minima of S^[n] inside each subgroup
        self.coset_min = Vec::with_capacity(self.subs.len());
        for (p, &id) in self.subs.iter().enumerate() {
            let sub = self.lattice.subgroup(id);
            let res = self.lattice.subgroup(self.residual[p]);
            let mut mins: Vec<u16> = vec![u16::MAX; sub.order()];
            for (xi, &x) in sub.elems().iter().enumerate() {
                if mins[xi] != u16::MAX {
                    continue;
                }
                for &v in res.elems() {
                    let y = self.group.mul(x, v);
                    let yi = sub.elems().binary_search(&y).unwrap();
                    mins[yi] = x;
                }
            }
            self.coset_min.push(mins);
        }

        self.point_canon = vec![HashMap::new(); self.subs.len()];
        for p in 0..self.subs.len() {
            let sub_elems = self.lattice.subgroup(self.subs[p]).elems().to_vec();
            for (xi, &x) in sub_elems.iter().enumerate() {
                if self.coset_min[p][xi] != x {
                    continue;
                }
                if self.point_canon[p].contains_key(&x) {
                    continue;
                }
                let index = self.points.len();
                let mut orbit = vec![(p, x)];
                self.point_canon[p].insert(x, index as u32);
                let mut head = 0;
                while head < orbit.len() {
                    let (cp, ch) = orbit[head];
                    head += 1;
                    for gi in 0..self.amb_elems.len() {
                        let g = self.amb_elems[gi];
                        let (tp, th) = self.conj_point(g, cp, ch);
                        if !self.point_canon[tp].contains_key(&th) {
                            self.point_canon[tp].insert(th, index as u32);
                            orbit.push((tp, th));
                        }
                    }
                }
                let sub_id = self.subs[p];
                let stab = coset_stabilizer(
                    &self.group,
                    &self.amb_elems,
                    self.lattice.subgroup(sub_id),
                    x,
                    self.lattice.subgroup(self.residual[p]),
                )
                .expect("coset element lies in its subgroup");
                let stab_id = self.lattice.id_of(&stab);
                self.points.push(SpeciesPoint { index, sub: sub_id, h: x, stab: stab_id });
            }
        }
    }

    pub(crate) fn token(&self) -> u64 {
        self.id
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    /// Lattice id of the ambient subgroup.
    pub fn ambient_id(&self) -> usize {
        self.ambient
    }

    pub fn ambient_elems(&self) -> &[u16] {
        &self.amb_elems
    }

    pub fn ambient_order(&self) -> usize {
        self.amb_elems.len()
    }

    pub fn fiber_order(&self) -> u64 {
        self.n
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Subgroup positions (indices into `sub_ids`) in this ring.
    pub fn sub_count(&self) -> usize {
        self.subs.len()
    }

    pub fn sub_ids(&self) -> &[usize] {
        &self.subs
    }

    pub fn pos_of_sub(&self, lattice_id: usize) -> usize {
        *self
            .pos_of
            .get(&lattice_id)
            .expect("subgroup does not lie in the ambient group")
    }

    pub fn sub_id_at(&self, pos: usize) -> usize {
        self.subs[pos]
    }

    pub fn sub_at(&self, pos: usize) -> &Subgroup {
        self.lattice.subgroup(self.subs[pos])
    }

    pub fn residual_id(&self, pos: usize) -> usize {
        self.residual[pos]
    }

    pub fn hom_count(&self, pos: usize) -> usize {
        self.homs[pos].len()
    }

    pub fn hom_values(&self, pos: usize, hom: usize) -> &[u32] {
        &self.homs[pos][hom]
    }

    pub fn hom_id(&self, pos: usize, values: &[u32]) -> usize {
        self.hom_of[pos][values]
    }

    /// Evaluate hom number `hom` on position `pos` at an element of the
    /// subgroup.
    pub fn hom_value_at(&self, pos: usize, hom: usize, x: u16) -> u32 {
        let sub = self.sub_at(pos);
        let xi = sub
            .elems()
            .binary_search(&x)
            .expect("element outside hom domain");
        self.homs[pos][hom][xi]
    }

    /// All homomorphisms H -> Z/n for a subgroup, as public values.
    pub fn hom_group(&self, sub_id: usize) -> Vec<FiberHom> {
        let pos = self.pos_of_sub(sub_id);
        self.homs[pos]
            .iter()
            .map(|v| FiberHom { sub: sub_id, values: v.clone() })
            .collect()
    }

    pub(crate) fn normalizer_in_ambient(&self, sub_id: usize) -> usize {
        let nz = self.lattice.normalizer_id(sub_id);
        if self.lattice.leq(nz, self.ambient) {
            return nz;
        }
        let amb = self.lattice.subgroup(self.ambient);
        let inter: Vec<u16> = self
            .lattice
            .subgroup(nz)
            .elems()
            .iter()
            .copied()
            .filter(|&g| amb.contains(g))
            .collect();
        self.lattice.id_of_elems(&inter)
    }

    /// Conjugate of the pair (pos, hom) by g in the ambient group.
    pub(crate) fn conj_pair(&self, g: u16, pos: usize, hom: usize) -> (usize, usize) {
        let tid = self.lattice.conjugate_id(g, self.subs[pos]);
        let tpos = self.pos_of[&tid];
        let tsub = self.lattice.subgroup(tid);
        let src = self.sub_at(pos);
        let vals = &self.homs[pos][hom];
        let tvals: Vec<u32> = tsub
            .elems()
            .iter()
            .map(|&y| {
                let x = self.group.conj_by_inv(g, y);
                vals[src.elems().binary_search(&x).unwrap()]
            })
            .collect();
        (tpos, self.hom_of[tpos][&tvals])
    }

    pub(crate) fn conj_point(&self, g: u16, pos: usize, h: u16) -> (usize, u16) {
        let tid = self.lattice.conjugate_id(g, self.subs[pos]);
        let tpos = self.pos_of[&tid];
        let y = self.group.conj(g, h);
        (tpos, self.coset_min_of(tpos, y))
    }

    pub(crate) fn coset_min_of(&self, pos: usize, x: u16) -> u16 {
        let sub = self.sub_at(pos);
        let xi = sub
            .elems()
            .binary_search(&x)
            .expect("element outside subgroup");
        self.coset_min[pos][xi]
    }

    /// Restriction of a hom on `from` to the smaller subgroup `to`.
    pub(crate) fn restrict_hom(&self, from: usize, hom: usize, to: usize) -> usize {
        let fsub = self.sub_at(from);
        let tsub = self.sub_at(to);
        let vals = &self.homs[from][hom];
        let tvals: Vec<u32> = tsub
            .elems()
            .iter()
            .map(|&x| vals[fsub.elems().binary_search(&x).unwrap()])
            .collect();
        self.hom_of[to][&tvals]
    }

    /// Canonical orbit representative of a pair.
    pub fn canonical_pair(&self, pos: usize, hom: usize) -> (usize, usize) {
        let (p, f) = self.pair_canon[pos][hom];
        (p as usize, f as usize)
    }

    /// Basis index of the orbit of (pos, hom).
    pub fn basis_index(&self, pos: usize, hom: usize) -> u32 {
        self.pair_basis[&self.pair_canon[pos][hom]]
    }

    pub fn basis_pair(&self, index: u32) -> MonomialPair {
        let (pos, hom) = self.basis[index as usize];
        MonomialPair { sub: self.subs[pos], hom }
    }

    pub(crate) fn basis_pos(&self, index: u32) -> (usize, usize) {
        self.basis[index as usize]
    }

    /// The standard basis: one canonical pair per orbit with the order of
    /// its stabilizer N_amb(H, phi).
    pub fn basis_pairs(&self) -> Vec<(MonomialPair, usize)> {
        (0..self.basis.len())
            .map(|i| {
                let pair = self.basis_pair(i as u32);
                (pair, self.lattice.subgroup(self.stab[i]).order())
            })
            .collect()
    }

    /// Lattice id of the stabilizer of the canonical pair at a basis index.
    pub fn pair_stabilizer_id(&self, index: u32) -> usize {
        self.stab[index as usize]
    }

    /// Stabilizer N_amb(H, phi) of an arbitrary (not necessarily canonical)
    /// pair given by subgroup id and hom values.
    pub fn pair_stabilizer(&self, hom: &FiberHom) -> Subgroup {
        let pos = self.pos_of_sub(hom.sub);
        let f = self.hom_of[pos][&hom.values];
        let nz = self.normalizer_in_ambient(hom.sub);
        let elems: Vec<u16> = self
            .lattice
            .subgroup(nz)
            .elems()
            .iter()
            .copied()
            .filter(|&g| self.conj_pair(g, pos, f) == (pos, f))
            .collect();
        Subgroup::from_sorted(elems)
    }

    pub fn points(&self) -> &[SpeciesPoint] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &SpeciesPoint {
        &self.points[index]
    }

    /// Canonical species point index of (subgroup, element).
    pub fn canonical_point(&self, sub_id: usize, h: u16) -> usize {
        let pos = self.pos_of_sub(sub_id);
        let cm = self.coset_min_of(pos, h);
        self.point_canon[pos][&cm] as usize
    }

    /// Image and fiber size of restriction Hom(ambient, C_n) ->
    /// Hom(H, C_n): (|H G^\[n\] / G^\[n\]|, [G : H G^\[n\]]).
    pub fn restriction_fibers(&self, sub_id: usize) -> (u64, u64) {
        let amb_res = self.residual[self.pos_of[&self.ambient]];
        let joined = crate::group::join(
            &self.group,
            self.lattice.subgroup(sub_id),
            self.lattice.subgroup(amb_res),
        );
        let joined_order = joined.order() as u64;
        let res_order = self.lattice.subgroup(amb_res).order() as u64;
        let amb_order = self.amb_elems.len() as u64;
        (joined_order / res_order, amb_order / joined_order)
    }

    pub(crate) fn left_cosets_in_ambient(&self, sub_id: usize) -> Vec<u16> {
        crate::group::left_coset_reps(
            &self.group,
            &self.amb_elems,
            self.lattice.subgroup(sub_id).elems(),
        )
    }

    /// Quotient H / H^\[n\] used for hom enumeration; exposed for tests.
    pub fn residual_quotient(&self, sub_id: usize) -> crate::group::QuotientGroup {
        let pos = self.pos_of_sub(sub_id);
        quotient_by(
            &self.group,
            self.lattice.subgroup(sub_id),
            self.lattice.subgroup(self.residual[pos]),
            "H/H^[n]",
        )
        .expect("residual subgroup is normal")
    }
}

/// All homomorphisms H -> Z/n, by lifting characters of the abelian
/// quotient H/H^\[n\]. Candidate generator values are brute-forced and
/// validated against the full multiplication table, then lifted through
/// the projection. The count always equals [H : H^\[n\]].
fn enumerate_homs(group: &FiniteGroup, sub: &Subgroup, res: &Subgroup, n: u64) -> Vec<Vec<u32>> {
    let q = quotient_by(group, sub, res, "H/H^[n]").expect("H^[n] is normal in H");
    let qg = &q.group;
    let qn = qg.order();

    // greedy generating set of the quotient
    let mut gens: Vec<u16> = Vec::new();
    let mut gen_closure = vec![0u16];
    for x in 1..qn as u16 {
        if !gen_closure.contains(&x) {
            gens.push(x);
            gen_closure = crate::group::closure(qg, &gens);
            if gen_closure.len() == qn {
                break;
            }
        }
    }

    let mut chars: Vec<Vec<u32>> = Vec::new();
    let mut assignment = vec![0u32; gens.len()];
    enumerate_assignments(qg, n, &gens, 0, &mut assignment, &mut chars);
    assert_eq!(chars.len(), qn, "character count must equal the quotient order");

    let mut lifted: Vec<Vec<u32>> = chars
        .into_iter()
        .map(|c| {
            sub.elems()
                .iter()
                .map(|&x| c[q.project(x) as usize])
                .collect()
        })
        .collect();
    lifted.sort_unstable();
    lifted.dedup();
    assert_eq!(lifted.len(), qn, "lifted characters must stay distinct");
    lifted
}

fn enumerate_assignments(
    qg: &FiniteGroup,
    n: u64,
    gens: &[u16],
    k: usize,
    assignment: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if k == gens.len() {
        if let Some(values) = extend_char(qg, n, gens, assignment) {
            out.push(values);
        }
        return;
    }
    let o = qg.order_of(gens[k]) as u64;
    debug_assert!(n % o == 0, "quotient is n-torsion");
    let step = n / o;
    for j in 0..o {
        assignment[k] = (j * step) as u32;
        enumerate_assignments(qg, n, gens, k + 1, assignment, out);
    }
}

/// Extends generator values to the whole quotient, rejecting inconsistent
/// assignments.
fn extend_char(qg: &FiniteGroup, n: u64, gens: &[u16], assignment: &[u32]) -> Option<Vec<u32>> {
    let qn = qg.order();
    let mut values: Vec<Option<u32>> = vec![None; qn];
    values[0] = Some(0);
    let mut frontier = vec![0u16];
    let mut head = 0;
    while head < frontier.len() {
        let x = frontier[head];
        head += 1;
        let vx = values[x as usize].unwrap();
        for (gi, &g) in gens.iter().enumerate() {
            let y = qg.mul(x, g);
            let vy = ((vx as u64 + assignment[gi] as u64) % n) as u32;
            match values[y as usize] {
                None => {
                    values[y as usize] = Some(vy);
                    frontier.push(y);
                }
                Some(prev) => {
                    if prev != vy {
                        return None;
                    }
                }
            }
        }
    }
    // gens generate, so everything is reached; validate against all products
    let values: Vec<u32> = values.into_iter().map(Option::unwrap).collect();
    for a in 0..qn as u16 {
        for b in 0..qn as u16 {
            let ab = qg.mul(a, b);
            if (values[a as usize] as u64 + values[b as usize] as u64) % n
                != values[ab as usize] as u64
            {
                return None;
            }
        }
    }
    Some(values)
}
