//! Finite group substrate: element arithmetic on Cayley tables, subgroups,
//! closures, derived and n-residual subgroups, cosets and double cosets.
//!
//! Elements are dense indices 0..order-1 with the identity at index 0.
//! Everything downstream (lattices, fibered rings, biset operations) reads
//! these tables; they are immutable once constructed.

mod catalog;
mod lattice;
mod perm;
mod quotient;
mod section;

pub use catalog::{catalog_names, load_group, GroupSpec, DEFAULT_ORDER_CAP};
pub use lattice::SubgroupLattice;
pub use perm::group_from_permutations;
pub use quotient::{quotient_by, QuotientGroup};
pub use section::{product_group, SectionData};

use num::Integer;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("multiplication table is not square ({0} rows)")]
    NotSquare(usize),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("index 0 is not a two-sided identity")]
    MissingIdentity,
    #[error("row or column {0} is not a permutation of the elements")]
    NotLatin(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(u16, u16, u16),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(u16),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("bad cycle notation: {0}")]
    BadCycle(String),
    #[error("unknown catalog group: {0}")]
    UnknownCatalog(String),
    #[error("bad group spec: {0}")]
    BadSpec(String),
    #[error("subgroup is not normal in the given overgroup")]
    NotNormal,
    #[error("not a subgroup of the product: {0}")]
    NotASection(String),
    #[error("star product middle groups do not match ({0} vs {1})")]
    MismatchedMiddle(usize, usize),
}

/// An immutable finite group given by its multiplication table.
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl FiniteGroup {
    /// Validates the table as a group with identity at index 0.
    pub fn from_table(name: &str, rows: &[Vec<u16>]) -> Result<FiniteGroup, GroupError> {
        let n = rows.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(GroupError::NotSquare(n));
        }
        for row in rows {
            if row.len() != n {
                return Err(GroupError::NotSquare(n));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(GroupError::BadIndex(x as usize));
                }
            }
        }
        for i in 0..n {
            if rows[0][i] != i as u16 || rows[i][0] != i as u16 {
                return Err(GroupError::MissingIdentity);
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                seen_row[rows[i][j] as usize] = true;
                seen_col[rows[j][i] as usize] = true;
            }
            if seen_row.iter().any(|&s| !s) || seen_col.iter().any(|&s| !s) {
                return Err(GroupError::NotLatin(i));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b] as usize;
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c] as usize] {
                        return Err(GroupError::NotAssociative(a as u16, b as u16, c as u16));
                    }
                }
            }
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if rows[a][b] == 0 && rows[b][a] == 0 {
                    found = Some(b as u16);
                    break;
                }
            }
            inv[a] = found.ok_or(GroupError::NoInverse(a as u16))?;
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            mul.extend_from_slice(row);
        }
        Ok(FiniteGroup { name: name.to_string(), order: n, mul, inv })
    }

    /// For internally constructed tables that are groups by construction
    /// (products, quotients); skips the O(n^3) associativity sweep.
    pub(crate) fn from_table_unchecked(name: &str, order: usize, mul: Vec<u16>, inv: Vec<u16>) -> FiniteGroup {
        debug_assert_eq!(mul.len(), order * order);
        FiniteGroup { name: name.to_string(), order, mul, inv }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// g x g^-1
    #[inline]
    pub fn conj(&self, g: u16, x: u16) -> u16 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// x^g = g^-1 x g
    #[inline]
    pub fn conj_by_inv(&self, g: u16, x: u16) -> u16 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// x^-1 y^-1 x y
    #[inline]
    pub fn commutator(&self, x: u16, y: u16) -> u16 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: u16, k: i64) -> u16 {
        let k = k.rem_euclid(self.order_of(x) as i64);
        let mut acc = 0u16;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn order_of(&self, x: u16) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        let mut e: u64 = 1;
        for x in 0..self.order as u16 {
            e = e.lcm(&(self.order_of(x) as u64));
        }
        e
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.order as u16
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

/// A subgroup as a sorted element-index set. Two subgroups of the same
/// parent are equal iff their element sets are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elems: Vec<u16>,
}

impl Subgroup {
    pub fn trivial() -> Subgroup {
        Subgroup { elems: vec![0] }
    }

    pub fn full(group: &FiniteGroup) -> Subgroup {
        Subgroup { elems: group.elements().collect() }
    }

    /// Wraps a sorted, closed element set; validity is the caller's burden.
    pub fn from_sorted(elems: Vec<u16>) -> Subgroup {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elems.first() == Some(&0));
        Subgroup { elems }
    }

    pub fn generated(group: &FiniteGroup, gens: &[u16]) -> Subgroup {
        Subgroup { elems: closure(group, gens) }
    }

    pub fn elems(&self) -> &[u16] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: u16) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        is_subset(&self.elems, &other.elems)
    }

    pub fn is_closed(&self, group: &FiniteGroup) -> bool {
        self.contains(0)
            && self.elems.iter().all(|&x| self.contains(group.inv(x)))
            && self
                .elems
                .iter()
                .all(|&x| self.elems.iter().all(|&y| self.contains(group.mul(x, y))))
    }

    /// gHg^-1
    pub fn conjugate(&self, group: &FiniteGroup, g: u16) -> Subgroup {
        let mut elems: Vec<u16> = self.elems.iter().map(|&x| group.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup { elems }
    }

    pub fn is_normal_in(&self, group: &FiniteGroup, overgroup: &Subgroup) -> bool {
        overgroup
            .elems
            .iter()
            .all(|&g| self.elems.iter().all(|&x| self.contains(group.conj(g, x))))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elems)
    }
}

pub(crate) fn is_subset(a: &[u16], b: &[u16]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Sorted closure of a generating set under multiplication and inverses.
/// A proper subgroup has index at least 2, so once more than half the
/// elements appear the closure must be the whole group.
pub fn closure(group: &FiniteGroup, gens: &[u16]) -> Vec<u16> {
    let n = group.order;
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems: Vec<u16> = vec![0];
    let mut queue: Vec<u16> = vec![0];
    for &g in gens {
        if !member[g as usize] {
            member[g as usize] = true;
            elems.push(g);
            queue.push(g);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        if elems.len() > n / 2 && elems.len() < n {
            return group.elements().collect();
        }
        let candidates: Vec<u16> = elems.clone();
        for y in candidates {
            for z in [group.mul(x, y), group.mul(y, x)] {
                if !member[z as usize] {
                    member[z as usize] = true;
                    elems.push(z);
                    queue.push(z);
                }
            }
        }
        let xi = group.inv(x);
        if !member[xi as usize] {
            member[xi as usize] = true;
            elems.push(xi);
            queue.push(xi);
        }
    }
    elems.sort_unstable();
    elems
}

/// Smallest normal subgroup of H with abelian quotient, generated by
/// commutators of H.
pub fn derived_subgroup(group: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut gens = HashSet::new();
    for &x in h.elems() {
        for &y in h.elems() {
            gens.insert(group.commutator(x, y));
        }
    }
    let gens: Vec<u16> = gens.into_iter().collect();
    Subgroup::generated(group, &gens)
}

/// H^\[n\]: the smallest normal subgroup of H with H/H^\[n\] abelian n-torsion,
/// generated by the commutators together with all n-th powers.
pub fn n_residual(group: &FiniteGroup, h: &Subgroup, n: u64) -> Subgroup {
    let mut gens = HashSet::new();
    for &x in h.elems() {
        for &y in h.elems() {
            gens.insert(group.commutator(x, y));
        }
    }
    for &x in h.elems() {
        gens.insert(group.pow(x, n as i64));
    }
    let gens: Vec<u16> = gens.into_iter().collect();
    Subgroup::generated(group, &gens)
}

/// Subgroup generated by the union of two subgroups.
pub fn join(group: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens: Vec<u16> = a.elems().to_vec();
    gens.extend_from_slice(b.elems());
    Subgroup::generated(group, &gens)
}

/// Normalizer of `sub` inside the subgroup `within`.
pub fn normalizer_in(group: &FiniteGroup, within: &[u16], sub: &Subgroup) -> Vec<u16> {
    within
        .iter()
        .copied()
        .filter(|&g| sub.elems().iter().all(|&x| sub.contains(group.conj(g, x))))
        .collect()
}

/// Representatives of the double cosets H\ambient/K, one per coset, each
/// the minimal element index in its coset.
pub fn double_coset_reps(group: &FiniteGroup, ambient: &[u16], h: &[u16], k: &[u16]) -> Vec<u16> {
    let mut covered = vec![false; group.order];
    let mut reps = Vec::new();
    for &g in ambient {
        if covered[g as usize] {
            continue;
        }
        reps.push(g);
        for &a in h {
            let ag = group.mul(a, g);
            for &b in k {
                covered[group.mul(ag, b) as usize] = true;
            }
        }
    }
    reps
}

/// Representatives of the left cosets g*H inside `ambient`, minimal element
/// per coset, ascending.
pub fn left_coset_reps(group: &FiniteGroup, ambient: &[u16], h: &[u16]) -> Vec<u16> {
    let mut covered = vec![false; group.order];
    let mut reps = Vec::new();
    for &g in ambient {
        if covered[g as usize] {
            continue;
        }
        reps.push(g);
        for &a in h {
            covered[group.mul(g, a) as usize] = true;
        }
    }
    reps
}

/// Stabilizer of the coset h*H^\[n\] under conjugation inside the normalizer
/// of H intersected with `within`: all g with g H g^-1 = H and
/// (g h g^-1) H^\[n\] = h H^\[n\]. It always contains H.
pub fn coset_stabilizer(
    group: &FiniteGroup,
    within: &[u16],
    h_sub: &Subgroup,
    h: u16,
    residual: &Subgroup,
) -> Result<Subgroup, GroupError> {
    if !h_sub.contains(h) {
        return Err(GroupError::BadSpec(format!("element {h} not in the subgroup")));
    }
    let hinv = group.inv(h);
    let elems: Vec<u16> = normalizer_in(group, within, h_sub)
        .into_iter()
        .filter(|&g| residual.contains(group.mul(hinv, group.conj(g, h))))
        .collect();
    Ok(Subgroup::from_sorted(elems))
}
