//! Complete subgroup lattice of a finite group: enumeration by closure of
//! generator extensions, conjugacy classes with deterministic
//! representatives, normalizers, containment, and the Möbius function of
//! the subgroup poset.

use super::{closure, derived_subgroup, normalizer_in, FiniteGroup, Subgroup};
use std::collections::HashMap;
use std::sync::Arc;

pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<u16>, usize>,
    leq: Vec<Vec<bool>>,
    normalizer: Vec<usize>,
    derived: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// conj_sub\[g\]\[s\] = id of gSg^-1
    conj_sub: Vec<Vec<u32>>,
    /// some g with gSg^-1 = representative of S's class
    to_rep: Vec<u16>,
    moebius: HashMap<(u32, u32), i64>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>) -> Arc<SubgroupLattice> {
        let n = group.order();

        // enumerate subgroups by extending known ones with one generator
        let mut seen: HashMap<Vec<u16>, usize> = HashMap::new();
        let mut list: Vec<Vec<u16>> = vec![vec![0u16]];
        seen.insert(vec![0u16], 0);
        let mut head = 0;
        while head < list.len() {
            let base = list[head].clone();
            head += 1;
            if base.len() == n {
                continue;
            }
            for g in 1..n as u16 {
                if base.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = base.clone();
                gens.push(g);
                let c = closure(&group, &gens);
                if !seen.contains_key(&c) {
                    seen.insert(c.clone(), list.len());
                    list.push(c);
                }
            }
        }
        list.sort_unstable_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let subgroups: Vec<Subgroup> = list.into_iter().map(Subgroup::from_sorted).collect();
        let count = subgroups.len();
        let mut index = HashMap::with_capacity(count);
        for (i, s) in subgroups.iter().enumerate() {
            index.insert(s.elems().to_vec(), i);
        }

        let mut leq = vec![vec![false; count]; count];
        for (i, a) in subgroups.iter().enumerate() {
            for (j, b) in subgroups.iter().enumerate() {
                leq[i][j] = a.is_subset_of(b);
            }
        }

        let mut conj_sub = vec![vec![0u32; count]; n];
        for g in 0..n as u16 {
            for (s, sub) in subgroups.iter().enumerate() {
                let c = sub.conjugate(&group, g);
                conj_sub[g as usize][s] = index[c.elems()] as u32;
            }
        }

        // conjugacy classes; representatives are the minimal ids, which by
        // the (order, elements) sort are the lexicographically smallest sets
        let mut class_of = vec![usize::MAX; count];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut to_rep = vec![0u16; count];
        for s in 0..count {
            if class_of[s] != usize::MAX {
                continue;
            }
            let cls = classes.len();
            let mut members = vec![s];
            class_of[s] = cls;
            to_rep[s] = 0;
            let mut head = 0;
            while head < members.len() {
                let cur = members[head];
                head += 1;
                for g in 0..n as u16 {
                    let img = conj_sub[g as usize][cur] as usize;
                    if class_of[img] == usize::MAX {
                        class_of[img] = cls;
                        // g_cur conjugates cur to rep; img = g cur g^-1, so
                        // (g_cur g^-1) img (...)^-1 = rep
                        to_rep[img] = group.mul(to_rep[cur], group.inv(g));
                        members.push(img);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }

        let full = group.elements().collect::<Vec<u16>>();
        let normalizer = subgroups
            .iter()
            .map(|s| index[&normalizer_in(&group, &full, s)])
            .collect();

        let derived = subgroups
            .iter()
            .map(|s| index[derived_subgroup(&group, s).elems()])
            .collect();

        // Moebius function over all comparable pairs, by interval recursion
        let mut moebius = HashMap::new();
        for k in 0..count {
            for h in k..count {
                if !leq[k][h] {
                    continue;
                }
                let value = if k == h {
                    1
                } else {
                    let mut acc: i64 = 0;
                    for l in k..h {
                        if leq[k][l] && leq[l][h] {
                            acc += moebius[&(k as u32, l as u32)];
                        }
                    }
                    -acc
                };
                moebius.insert((k as u32, h as u32), value);
            }
        }

        Arc::new(SubgroupLattice {
            group,
            subgroups,
            index,
            leq,
            normalizer,
            derived,
            class_of,
            classes,
            conj_sub,
            to_rep,
            moebius,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subgroup(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn id_of(&self, s: &Subgroup) -> usize {
        self.id_of_elems(s.elems())
    }

    pub fn id_of_elems(&self, elems: &[u16]) -> usize {
        *self
            .index
            .get(elems)
            .expect("element set is not a subgroup of this lattice")
    }

    pub fn trivial_id(&self) -> usize {
        0
    }

    pub fn full_id(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// id of gSg^-1
    pub fn conjugate_id(&self, g: u16, s: usize) -> usize {
        self.conj_sub[g as usize][s] as usize
    }

    pub fn normalizer_id(&self, s: usize) -> usize {
        self.normalizer[s]
    }

    pub fn derived_id(&self, s: usize) -> usize {
        self.derived[s]
    }

    pub fn class_of(&self, s: usize) -> usize {
        self.class_of[s]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_rep(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    /// Some g with gSg^-1 equal to the class representative of S.
    pub fn conjugator_to_rep(&self, s: usize) -> u16 {
        self.to_rep[s]
    }

    /// Moebius function of the subgroup poset; requires K <= H.
    pub fn moebius(&self, k: usize, h: usize) -> i64 {
        *self
            .moebius
            .get(&(k as u32, h as u32))
            .expect("moebius requires K <= H")
    }

    /// ids of all subgroups between bottom and top inclusive.
    pub fn interval(&self, bottom: usize, top: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&l| self.leq[bottom][l] && self.leq[l][top])
            .collect()
    }

    /// ids of all subgroups contained in `top`.
    pub fn below(&self, top: usize) -> Vec<usize> {
        (0..self.len()).filter(|&l| self.leq[l][top]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::{load_group, GroupSpec};
    use super::*;

    fn lattice(name: &str) -> Arc<SubgroupLattice> {
        SubgroupLattice::new(load_group(&GroupSpec::catalog(name), 128).unwrap())
    }

    #[test]
    fn counts() {
        for (name, subs, classes) in [
            ("C1", 1, 1),
            ("C5", 2, 2),
            ("S3", 6, 4),
            ("Q8", 6, 6),
            ("D8", 10, 8),
            ("S4", 30, 11),
            ("A4", 10, 5),
            ("C12", 6, 6),
        ] {
            let l = lattice(name);
            assert_eq!(l.len(), subs, "{name} subgroup count");
            assert_eq!(l.classes().len(), classes, "{name} class count");
        }
    }

    #[test]
    fn normalizer_index_matches_class_size() {
        for name in ["S3", "S4", "D8", "Q8", "A4"] {
            let l = lattice(name);
            let n = l.group().order();
            for s in 0..l.len() {
                let nz = l.subgroup(l.normalizer_id(s));
                assert!(l.subgroup(s).is_subset_of(nz));
                let class_size = l.classes()[l.class_of(s)].len();
                assert_eq!(n / nz.order(), class_size, "{name} subgroup {s}");
            }
        }
    }

    #[test]
    fn conjugator_reaches_rep() {
        let l = lattice("S4");
        for s in 0..l.len() {
            let g = l.conjugator_to_rep(s);
            let rep = l.class_rep(l.class_of(s));
            assert_eq!(l.conjugate_id(g, s), rep);
        }
    }

    #[test]
    fn moebius_basics() {
        let l = lattice("V4");
        let bottom = l.trivial_id();
        let top = l.full_id();
        assert_eq!(l.moebius(top, top), 1);
        assert_eq!(l.moebius(bottom, bottom), 1);
        // two-element chain inside: mu(1, C2) = -1
        let c2 = (0..l.len()).find(|&s| l.subgroup(s).order() == 2).unwrap();
        assert_eq!(l.moebius(bottom, c2), -1);
        // five-subgroup lattice of V4: mu(1, V4) = 2
        assert_eq!(l.moebius(bottom, top), 2);
    }

    #[test]
    fn moebius_inversion_sums_to_zero() {
        for name in ["S3", "D8", "Q8", "A4", "C12"] {
            let l = lattice(name);
            for k in 0..l.len() {
                for h in 0..l.len() {
                    if !l.leq(k, h) || k == h {
                        continue;
                    }
                    let total: i64 = l.interval(k, h).iter().map(|&m| l.moebius(k, m)).sum();
                    assert_eq!(total, 0, "{name} interval ({k},{h})");
                }
            }
        }
    }
}
