//! Ghost ring and mark morphism. A ghost element is a G-invariant tuple
//! over subgroups of formal Q(zeta)-combinations of homomorphisms; since
//! invariance determines every coordinate from the canonical pair of its
//! orbit, ghosts are stored densely over the basis indices. Includes the
//! coordinatewise ghost product, the Boltje congruence criterion for
//! membership in the image of the mark morphism over Z\[zeta\], and the
//! exact linear-solve membership oracle.

use super::{FBElement, FiberedRing, FiberedError};
use crate::cyclotomic::{CycNum, Int, Rat};
use crate::linalg::solve_rational;
use std::fmt;
use std::sync::Arc;

/// A G-invariant ghost tuple, stored at canonical pair coordinates.
#[derive(Clone)]
pub struct GhostElement {
    ring: u64,
    coords: Vec<CycNum>,
}

impl GhostElement {
    pub(crate) fn new(ring: u64, coords: Vec<CycNum>) -> GhostElement {
        GhostElement { ring, coords }
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    pub(crate) fn token(&self) -> u64 {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycNum::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(CycNum::is_integral)
    }

    pub fn add(&self, other: &GhostElement) -> GhostElement {
        assert_eq!(self.ring, other.ring, "ghosts of different rings");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let (x, y) = CycNum::lift_pair(a, b);
                x.add(&y)
            })
            .collect();
        GhostElement { ring: self.ring, coords }
    }

    pub fn scale(&self, r: &Rat) -> GhostElement {
        GhostElement {
            ring: self.ring,
            coords: self.coords.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn eq_ghost(&self, other: &GhostElement) -> bool {
        assert_eq!(self.ring, other.ring, "ghosts of different rings");
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a.equiv(b))
    }
}

impl PartialEq for GhostElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.eq_ghost(other)
    }
}

impl fmt::Debug for GhostElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ghost{:?}", self.coords)
    }
}

impl FiberedRing {
    /// Assembles a ghost from explicit coordinates over the basis orbits.
    pub fn ghost_from_coords(&self, coords: Vec<CycNum>) -> GhostElement {
        assert_eq!(coords.len(), self.rank(), "ghost coordinate length");
        GhostElement::new(self.token(), coords)
    }

    /// The integer matrix of the mark morphism on the standard basis:
    /// entry\[(K,psi)\]\[(H,phi)\] counts cosets gH with K <= gHg^-1 and
    /// psi = (g phi)|_K.
    pub fn mark_matrix(&self) -> Arc<Vec<Vec<u64>>> {
        if let Some(m) = self.mark_matrix.lock().unwrap().as_ref() {
            return Arc::clone(m);
        }
        let rank = self.rank();
        let mut matrix = vec![vec![0u64; rank]; rank];
        // group rows by their subgroup position for the per-coset update
        let mut rows_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.sub_count()];
        for row in 0..rank {
            let (pos, hom) = self.basis_pos(row as u32);
            rows_at[pos].push((hom, row));
        }
        for col in 0..rank {
            let (hp, hf) = self.basis_pos(col as u32);
            for g in self.left_cosets_in_ambient(self.sub_id_at(hp)) {
                let (tp, tf) = self.conj_pair(g, hp, hf);
                for kp in 0..self.sub_count() {
                    if rows_at[kp].is_empty()
                        || !self.lattice().leq(self.sub_id_at(kp), self.sub_id_at(tp))
                    {
                        continue;
                    }
                    let restricted = self.restrict_hom(tp, tf, kp);
                    for &(hom, row) in &rows_at[kp] {
                        if hom == restricted {
                            matrix[row][col] += 1;
                        }
                    }
                }
            }
        }
        let matrix = Arc::new(matrix);
        *self.mark_matrix.lock().unwrap() = Some(Arc::clone(&matrix));
        matrix
    }

    /// The mark morphism rho, extended linearly to Q(zeta) coefficients.
    pub fn mark(&self, x: &FBElement) -> GhostElement {
        assert_eq!(x.token(), self.token(), "element of a different ring");
        let matrix = self.mark_matrix();
        let mut coords = vec![self.field().zero(); self.rank()];
        for (&j, v) in x.coeffs() {
            for (row, slot) in coords.iter_mut().enumerate() {
                let gamma = matrix[row][j as usize];
                if gamma != 0 {
                    let term = v.scale(&Rat::from_integer(Int::from(gamma)));
                    let (a, b) = CycNum::lift_pair(slot, &term);
                    *slot = a.add(&b);
                }
            }
        }
        GhostElement::new(self.token(), coords)
    }

    /// Ghost coordinate at an arbitrary pair (subgroup id, hom id),
    /// resolved through G-invariance.
    pub fn ghost_coord(&self, y: &GhostElement, sub_id: usize, hom: usize) -> CycNum {
        let pos = self.pos_of_sub(sub_id);
        y.coords[self.basis_index(pos, hom) as usize].clone()
    }

    /// Ghost unit vector: 1 on the orbit of basis pair `index`, 0 elsewhere.
    pub fn ghost_unit(&self, index: u32) -> GhostElement {
        let mut coords = vec![self.field().zero(); self.rank()];
        coords[index as usize] = self.field().one();
        GhostElement::new(self.token(), coords)
    }

    /// The ghost of the ring unit: 1 at every trivial-hom coordinate.
    pub fn ghost_one(&self) -> GhostElement {
        let mut coords = vec![self.field().zero(); self.rank()];
        for i in 0..self.rank() {
            if self.basis_pos(i as u32).1 == 0 {
                coords[i] = self.field().one();
            }
        }
        GhostElement::new(self.token(), coords)
    }

    /// Coordinatewise product: in each subgroup coordinate the group
    /// algebra of Hom(K, C_n) multiplies by pointwise hom products.
    pub fn ghost_mul(&self, a: &GhostElement, b: &GhostElement) -> GhostElement {
        assert_eq!(a.token(), self.token());
        assert_eq!(b.token(), self.token());
        let n = self.fiber_order();
        let mut coords = vec![self.field().zero(); self.rank()];
        let reps: Vec<usize> = (0..self.rank())
            .map(|i| self.basis_pos(i as u32).0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for kp in reps {
            let hom_count = self.hom_count(kp);
            let full = |y: &GhostElement| -> Vec<CycNum> {
                (0..hom_count)
                    .map(|f| y.coords[self.basis_index(kp, f) as usize].clone())
                    .collect()
            };
            let av = full(a);
            let bv = full(b);
            let mut prod = vec![self.field().zero(); hom_count];
            for (fa, ca) in av.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (fb, cb) in bv.iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let values: Vec<u32> = self
                        .hom_values(kp, fa)
                        .iter()
                        .zip(self.hom_values(kp, fb))
                        .map(|(&x, &y)| ((x as u64 + y as u64) % n) as u32)
                        .collect();
                    let fc = self.hom_id(kp, &values);
                    let (x, y) = CycNum::lift_pair(ca, cb);
                    let term = x.mul(&y);
                    let (s, t) = CycNum::lift_pair(&prod[fc], &term);
                    prod[fc] = s.add(&t);
                }
            }
            for f in 0..hom_count {
                let idx = self.basis_index(kp, f) as usize;
                if self.basis_pos(idx as u32) == (kp, f) {
                    coords[idx] = prod[f].clone();
                }
            }
        }
        GhostElement::new(self.token(), coords)
    }

    /// Boltje's congruence criterion: an integral ghost lies in the image
    /// of the mark morphism over Z\[zeta\] iff for every monomial pair
    /// (H, phi), the sum over pairs (K, psi) of the stabilizer N(H, phi)
    /// extending (H, phi) of mu(H, K) * a_(K,psi) vanishes modulo
    /// \[N(H, phi) : H\].
    pub fn boltje_membership(&self, y: &GhostElement) -> Result<bool, FiberedError> {
        assert_eq!(y.token(), self.token(), "ghost of a different ring");
        for (i, c) in y.coords.iter().enumerate() {
            if !c.is_integral() {
                return Err(FiberedError::NonIntegralGhost(i));
            }
        }
        for i in 0..self.rank() {
            let (hp, hf) = self.basis_pos(i as u32);
            let h_id = self.sub_id_at(hp);
            let stab_id = self.pair_stabilizer_id(i as u32);
            let h_order = self.sub_at(hp).order();
            let modulus = (self.lattice().subgroup(stab_id).order() / h_order) as u64;
            if modulus == 1 {
                continue;
            }
            let mut sum = self.field().zero();
            for k_id in self.lattice().interval(h_id, stab_id) {
                let kp = self.pos_of_sub(k_id);
                let mu = self.lattice().moebius(h_id, k_id);
                if mu == 0 {
                    continue;
                }
                let mu = Rat::from_integer(Int::from(mu));
                for f in 0..self.hom_count(kp) {
                    if self.restrict_hom(kp, f, hp) != hf {
                        continue;
                    }
                    let a = self.ghost_coord(y, k_id, f);
                    let (s, t) = CycNum::lift_pair(&sum, &a.scale(&mu));
                    sum = s.add(&t);
                }
            }
            if !sum.divisible_by(&Int::from(modulus)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact preimage of a ghost under the mark morphism, solving the
    /// integer mark matrix coordinatewise over Q. The independent oracle
    /// for `boltje_membership`: y is in the Z\[zeta\]-image iff the solution
    /// exists and is integral.
    pub fn mark_preimage(&self, y: &GhostElement) -> Option<FBElement> {
        assert_eq!(y.token(), self.token());
        let rank = self.rank();
        if rank == 0 {
            return Some(self.zero());
        }
        let matrix = self.mark_matrix();
        let a: Vec<Vec<Rat>> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| Rat::from_integer(Int::from(v)))
                    .collect()
            })
            .collect();
        let degree = self.field().degree();
        let lifted: Vec<CycNum> = y
            .coords
            .iter()
            .map(|c| c.lift_to(self.field()))
            .collect();
        let rhs: Vec<Vec<Rat>> = (0..degree)
            .map(|t| lifted.iter().map(|c| c.coords()[t].clone()).collect())
            .collect();
        let sols = solve_rational(&a, &rhs)?;
        let mut out = self.zero();
        for j in 0..rank {
            let coords: Vec<Rat> = (0..degree).map(|t| sols[t][j].clone()).collect();
            let c = self.field().from_coords(coords);
            out.add_term(j as u32, c);
        }
        Some(out)
    }

    /// True when the mark matrix is invertible over Q (equivalently over
    /// Q(zeta)).
    pub fn mark_matrix_invertible(&self) -> bool {
        let matrix = self.mark_matrix();
        let a: Vec<Vec<Rat>> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| Rat::from_integer(Int::from(v)))
                    .collect()
            })
            .collect();
        crate::linalg::invertible_rational(&a)
    }

    /// Classical mark of a subgroup on a Burnside element: the coefficient
    /// of the trivial hom at K in the ghost, which for n = 1 is the number
    /// of K-fixed points.
    pub fn classical_mark(&self, y: &GhostElement, sub_id: usize) -> CycNum {
        self.ghost_coord(y, sub_id, 0)
    }
}
