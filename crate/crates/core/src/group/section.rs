//! Subgroups of direct products H x G ("sections") with their projections
//! and kernels, and the star composition used by the Mackey formula for
//! transitive bisets.

use super::{FiniteGroup, GroupError, Subgroup};

/// The external direct product with index pairing a*|B| + b.
pub fn product_group(a: &FiniteGroup, b: &FiniteGroup, name: &str) -> FiniteGroup {
    let na = a.order();
    let nb = b.order();
    let n = na * nb;
    assert!(n <= u16::MAX as usize, "product group too large");
    let mut mul = vec![0u16; n * n];
    for x1 in 0..na {
        for y1 in 0..nb {
            let i = x1 * nb + y1;
            for x2 in 0..na {
                for y2 in 0..nb {
                    let j = x2 * nb + y2;
                    mul[i * n + j] = (a.mul(x1 as u16, x2 as u16) as usize * nb
                        + b.mul(y1 as u16, y2 as u16) as usize)
                        as u16;
                }
            }
        }
    }
    let inv = (0..n)
        .map(|i| {
            (a.inv((i / nb) as u16) as usize * nb + b.inv((i % nb) as u16) as usize) as u16
        })
        .collect();
    FiniteGroup::from_table_unchecked(name, n, mul, inv)
}

/// A subgroup E of a product L x R together with its projections p1, p2 and
/// kernels k1, k2. The butterfly quotients p1/k1 and p2/k2 always have equal
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionData {
    left_order: usize,
    right_order: usize,
    pairs: Vec<(u16, u16)>,
    p1: Subgroup,
    k1: Subgroup,
    p2: Subgroup,
    k2: Subgroup,
}

impl SectionData {
    /// Verifies the pair set is a subgroup of L x R and computes the
    /// projection and kernel data.
    pub fn new(
        left: &FiniteGroup,
        right: &FiniteGroup,
        mut pairs: Vec<(u16, u16)>,
    ) -> Result<SectionData, GroupError> {
        pairs.sort_unstable();
        pairs.dedup();
        if !pairs.contains(&(0, 0)) {
            return Err(GroupError::NotASection("missing identity pair".into()));
        }
        for &(a, b) in &pairs {
            if a as usize >= left.order() || b as usize >= right.order() {
                return Err(GroupError::NotASection("pair element out of range".into()));
            }
            if pairs.binary_search(&(left.inv(a), right.inv(b))).is_err() {
                return Err(GroupError::NotASection(format!("inverse of ({a},{b}) missing")));
            }
            for &(c, d) in &pairs {
                if pairs
                    .binary_search(&(left.mul(a, c), right.mul(b, d)))
                    .is_err()
                {
                    return Err(GroupError::NotASection(format!(
                        "product of ({a},{b}) and ({c},{d}) missing"
                    )));
                }
            }
        }
        Ok(Self::from_verified(left.order(), right.order(), pairs))
    }

    fn from_verified(left_order: usize, right_order: usize, pairs: Vec<(u16, u16)>) -> SectionData {
        let mut p1: Vec<u16> = pairs.iter().map(|&(a, _)| a).collect();
        p1.sort_unstable();
        p1.dedup();
        let mut p2: Vec<u16> = pairs.iter().map(|&(_, b)| b).collect();
        p2.sort_unstable();
        p2.dedup();
        let k1: Vec<u16> = pairs.iter().filter(|&&(_, b)| b == 0).map(|&(a, _)| a).collect();
        let mut k2: Vec<u16> = pairs.iter().filter(|&&(a, _)| a == 0).map(|&(_, b)| b).collect();
        k2.sort_unstable();
        let s = SectionData {
            left_order,
            right_order,
            pairs,
            p1: Subgroup::from_sorted(p1),
            k1: Subgroup::from_sorted(k1),
            p2: Subgroup::from_sorted(p2),
            k2: Subgroup::from_sorted(k2),
        };
        debug_assert_eq!(
            s.p1.order() * s.k2.order(),
            s.p2.order() * s.k1.order(),
            "butterfly order equality"
        );
        s
    }

    /// The graph {(f(x), x)} of a map f: R -> L, e.g. a homomorphism,
    /// yielding a right-free section.
    pub fn graph(
        left: &FiniteGroup,
        right: &FiniteGroup,
        domain: &Subgroup,
        f: impl Fn(u16) -> u16,
    ) -> Result<SectionData, GroupError> {
        let pairs = domain.elems().iter().map(|&x| (f(x), x)).collect();
        SectionData::new(left, right, pairs)
    }

    pub fn pairs(&self) -> &[(u16, u16)] {
        &self.pairs
    }

    pub fn contains(&self, a: u16, b: u16) -> bool {
        self.pairs.binary_search(&(a, b)).is_ok()
    }

    pub fn p1(&self) -> &Subgroup {
        &self.p1
    }

    pub fn k1(&self) -> &Subgroup {
        &self.k1
    }

    pub fn p2(&self) -> &Subgroup {
        &self.p2
    }

    pub fn k2(&self) -> &Subgroup {
        &self.k2
    }

    pub fn left_order(&self) -> usize {
        self.left_order
    }

    pub fn right_order(&self) -> usize {
        self.right_order
    }

    /// True when the transitive biset L x R / E is right-free.
    pub fn is_right_free(&self) -> bool {
        self.k2.order() == 1
    }

    /// Star composition: for T <= K x H and E <= H x G,
    /// T * E = {(k, g) | exists h with (k,h) in T and (h,g) in E} <= K x G.
    pub fn star(&self, other: &SectionData) -> Result<SectionData, GroupError> {
        if self.right_order != other.left_order {
            return Err(GroupError::MismatchedMiddle(self.right_order, other.left_order));
        }
        let mut pairs = Vec::new();
        for &(k, h) in &self.pairs {
            for &(h2, g) in &other.pairs {
                if h == h2 {
                    pairs.push((k, g));
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(SectionData::from_verified(self.left_order, other.right_order, pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::{load_group, GroupSpec};
    use super::*;

    fn cyclic(n: &str) -> std::sync::Arc<FiniteGroup> {
        load_group(&GroupSpec::catalog(n), 128).unwrap()
    }

    #[test]
    fn full_products_compose() {
        let c2 = cyclic("C2");
        let c4 = cyclic("C4");
        let all_kh: Vec<(u16, u16)> = (0..2).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
        let all_hg: Vec<(u16, u16)> = (0..4).flat_map(|a| (0..2).map(move |b| (a, b))).collect();
        let t = SectionData::new(&c2, &c4, all_kh).unwrap();
        let e = SectionData::new(&c4, &c2, all_hg).unwrap();
        let s = t.star(&e).unwrap();
        assert_eq!(s.pairs().len(), 4);
        assert_eq!(s.p1().order(), 2);
        assert_eq!(s.p2().order(), 2);
    }

    #[test]
    fn diagonals_compose_to_diagonal() {
        let g = cyclic("S3");
        let diag: Vec<(u16, u16)> = g.elements().map(|x| (x, x)).collect();
        let d = SectionData::new(&g, &g, diag.clone()).unwrap();
        let dd = d.star(&d).unwrap();
        assert_eq!(dd.pairs(), &diag[..]);
        assert!(dd.is_right_free());
    }

    #[test]
    fn graphs_compose_like_homomorphisms() {
        // C4 -> C2 reduction mod 2, then C2 -> C2 identity
        let c4 = cyclic("C4");
        let c2 = cyclic("C2");
        let full4 = Subgroup::full(&c4);
        let full2 = Subgroup::full(&c2);
        let alpha = SectionData::graph(&c2, &c4, &full4, |x| x % 2).unwrap();
        let beta = SectionData::graph(&c2, &c2, &full2, |x| x).unwrap();
        let composed = beta.star(&alpha).unwrap();
        let expect = SectionData::graph(&c2, &c4, &full4, |x| x % 2).unwrap();
        assert_eq!(composed, expect);
    }

    #[test]
    fn rejects_non_sections() {
        let c2 = cyclic("C2");
        assert!(SectionData::new(&c2, &c2, vec![(0, 0), (1, 0), (0, 1)]).is_err());
        assert!(SectionData::new(&c2, &c2, vec![(1, 1)]).is_err());
    }
}
