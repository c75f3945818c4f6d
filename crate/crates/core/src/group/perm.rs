//! Permutation input: cycle-notation parsing and orbit closure of a
//! generating set into a relabeled Cayley table.

use super::{FiniteGroup, GroupError};
use std::collections::HashMap;

/// Parses cycle notation like "(1 2)(3 4)" into cycles of 1-based points.
/// Commas and whitespace both separate points.
fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>, GroupError> {
    let bad = |msg: &str| GroupError::BadCycle(format!("{msg} in {s:?}"));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() || rest == "()" {
        return Ok(vec![]);
    }
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(bad("expected '('"));
        }
        let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok.parse().map_err(|_| bad("non-numeric point"))?;
            if p == 0 {
                return Err(bad("points are 1-based"));
            }
            if cycle.contains(&p) {
                return Err(bad("repeated point in a cycle"));
            }
            cycle.push(p);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn cycle_perm(cycle: &[usize], degree: usize) -> Vec<u16> {
    let mut map: Vec<u16> = (0..degree as u16).collect();
    let k = cycle.len();
    for i in 0..k {
        map[cycle[i] - 1] = (cycle[(i + 1) % k] - 1) as u16;
    }
    map
}

/// One generator string to a permutation of 0..degree-1; cycles compose
/// right to left.
fn perm_of(cycles: &[Vec<usize>], degree: usize) -> Vec<u16> {
    let mut acc: Vec<u16> = (0..degree as u16).collect();
    for cycle in cycles.iter().rev() {
        acc = compose(&cycle_perm(cycle, degree), &acc);
    }
    acc
}

fn compose(p: &[u16], q: &[u16]) -> Vec<u16> {
    // (p . q)(x) = p(q(x))
    q.iter().map(|&x| p[x as usize]).collect()
}

/// Closes a permutation generating set under products and relabels the
/// elements by discovery order, identity first.
pub fn group_from_permutations(name: &str, gens: &[String], cap: usize) -> Result<FiniteGroup, GroupError> {
    let parsed: Vec<Vec<Vec<usize>>> = gens
        .iter()
        .map(|s| parse_cycles(s))
        .collect::<Result<_, _>>()?;
    let degree = parsed
        .iter()
        .flat_map(|cs| cs.iter().flat_map(|c| c.iter().copied()))
        .max()
        .unwrap_or(1);
    let gen_perms: Vec<Vec<u16>> = parsed.iter().map(|cs| perm_of(cs, degree)).collect();

    let identity: Vec<u16> = (0..degree as u16).collect();
    let mut elems: Vec<Vec<u16>> = vec![identity.clone()];
    let mut index: HashMap<Vec<u16>, u16> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elems.len() {
        let current = elems[head].clone();
        head += 1;
        for g in &gen_perms {
            let next = compose(&current, g);
            if !index.contains_key(&next) {
                if elems.len() >= cap {
                    return Err(GroupError::OrderCapExceeded { order: elems.len() + 1, cap });
                }
                index.insert(next.clone(), elems.len() as u16);
                elems.push(next);
            }
        }
    }

    let n = elems.len();
    let mut rows = vec![vec![0u16; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = index[&compose(&elems[i], &elems[j])];
        }
    }
    FiniteGroup::from_table(name, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_close_s3() {
        let g = group_from_permutations(
            "S3",
            &["(1 2)".to_string(), "(1 2 3)".to_string()],
            128,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        // two elements of order 3, three of order 2
        let orders: Vec<usize> = g.elements().map(|x| g.order_of(x)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    }

    #[test]
    fn bad_cycles_rejected() {
        assert!(group_from_permutations("x", &["(1 1)".to_string()], 128).is_err());
        assert!(group_from_permutations("x", &["(0 2)".to_string()], 128).is_err());
        assert!(group_from_permutations("x", &["1 2".to_string()], 128).is_err());
    }

    #[test]
    fn cap_enforced() {
        let err = group_from_permutations("S4", &["(1 2)".to_string(), "(1 2 3 4)".to_string()], 10);
        assert!(matches!(err, Err(GroupError::OrderCapExceeded { .. })));
    }
}
