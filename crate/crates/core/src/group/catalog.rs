//! Group input: built-in catalog, permutation generators, or an explicit
//! Cayley table, given either programmatically or as a JSON document.

use super::perm::group_from_permutations;
use super::section::product_group;
use super::{FiniteGroup, GroupError};
use std::sync::Arc;

pub const DEFAULT_ORDER_CAP: usize = 128;

/// One of: a catalog name, permutation generators in cycle notation on
/// {1..d}, or an explicit 0-based Cayley table with identity at 0.
#[derive(Debug, Clone)]
pub enum GroupSpec {
    Catalog { name: String },
    Permutations { name: String, perms: Vec<String> },
    Cayley { name: String, table: Vec<Vec<u16>> },
}

impl GroupSpec {
    pub fn catalog(name: &str) -> GroupSpec {
        GroupSpec::Catalog { name: name.to_string() }
    }

    /// Parses the JSON group file format:
    /// {"name": .., "catalog": ..} | {"name": .., "permutations": \[..\]} |
    /// {"name": .., "cayley": [\[..\]..]}.
    pub fn from_json(text: &str) -> Result<GroupSpec, GroupError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| GroupError::BadSpec(format!("invalid JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| GroupError::BadSpec("expected a JSON object".into()))?;
        let name = obj.get("name").and_then(|n| n.as_str()).map(str::to_string);
        if let Some(c) = obj.get("catalog") {
            let c = c
                .as_str()
                .ok_or_else(|| GroupError::BadSpec("catalog must be a string".into()))?;
            return Ok(GroupSpec::Catalog { name: name.unwrap_or_else(|| c.to_string()) });
        }
        if let Some(p) = obj.get("permutations") {
            let arr = p
                .as_array()
                .ok_or_else(|| GroupError::BadSpec("permutations must be an array".into()))?;
            let perms = arr
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| GroupError::BadSpec("permutations must be strings".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let name = name.ok_or_else(|| GroupError::BadSpec("missing name".into()))?;
            return Ok(GroupSpec::Permutations { name, perms });
        }
        if let Some(t) = obj.get("cayley") {
            let rows = t
                .as_array()
                .ok_or_else(|| GroupError::BadSpec("cayley must be an array of rows".into()))?;
            let mut table = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| GroupError::BadSpec("cayley rows must be arrays".into()))?;
                let mut out = Vec::with_capacity(row.len());
                for x in row {
                    let x = x
                        .as_u64()
                        .ok_or_else(|| GroupError::BadSpec("cayley entries must be integers".into()))?;
                    if x > u16::MAX as u64 {
                        return Err(GroupError::BadSpec("cayley entry out of range".into()));
                    }
                    out.push(x as u16);
                }
                table.push(out);
            }
            let name = name.ok_or_else(|| GroupError::BadSpec("missing name".into()))?;
            return Ok(GroupSpec::Cayley { name, table });
        }
        Err(GroupError::BadSpec(
            "expected one of: catalog, permutations, cayley".into(),
        ))
    }
}

/// Validates and constructs the group described by a spec, enforcing the
/// order cap.
pub fn load_group(spec: &GroupSpec, cap: usize) -> Result<Arc<FiniteGroup>, GroupError> {
    let g = match spec {
        GroupSpec::Catalog { name } => {
            catalog_group(name).ok_or_else(|| GroupError::UnknownCatalog(name.clone()))?
        }
        GroupSpec::Permutations { name, perms } => group_from_permutations(name, perms, cap)?,
        GroupSpec::Cayley { name, table } => {
            if table.len() > cap {
                return Err(GroupError::OrderCapExceeded { order: table.len(), cap });
            }
            FiniteGroup::from_table(name, table)?
        }
    };
    if g.order() > cap {
        return Err(GroupError::OrderCapExceeded { order: g.order(), cap });
    }
    Ok(Arc::new(g))
}

/// Names accepted by the built-in catalog.
pub fn catalog_names() -> Vec<&'static str> {
    let mut names = vec![
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
        "V4", "S3", "S4", "D8", "Q8", "A4", "C4xC2", "C9xC3",
    ];
    names.sort_unstable();
    names
}

fn cyclic(n: usize, name: &str) -> FiniteGroup {
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mul.push(((i + j) % n) as u16);
        }
    }
    let inv = (0..n).map(|i| ((n - i) % n) as u16).collect();
    FiniteGroup::from_table_unchecked(name, n, mul, inv)
}

fn quaternion() -> FiniteGroup {
    // elements 0..8 <-> [1, -1, i, -i, j, -j, k, -k]: index = 2*axis + sign
    // axis products with sign, axes 0=1, 1=i, 2=j, 3=k
    const AXIS: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut rows = vec![vec![0u16; 8]; 8];
    for a in 0..4 {
        for sa in 0..2 {
            for b in 0..4 {
                for sb in 0..2 {
                    let (axis, neg) = AXIS[a][b];
                    let sign = (sa + sb + usize::from(neg)) % 2;
                    rows[2 * a + sa][2 * b + sb] = (2 * axis + sign) as u16;
                }
            }
        }
    }
    FiniteGroup::from_table("Q8", &rows).expect("quaternion table is a group")
}

fn from_perms(name: &str, gens: &[&str]) -> FiniteGroup {
    let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    group_from_permutations(name, &gens, DEFAULT_ORDER_CAP).expect("catalog generators are valid")
}

fn catalog_group(name: &str) -> Option<FiniteGroup> {
    let key = name.trim().replace('\u{d7}', "x").to_ascii_uppercase();
    let g = match key.as_str() {
        "C1" => cyclic(1, "C1"),
        "C2" => cyclic(2, "C2"),
        "C3" => cyclic(3, "C3"),
        "C4" => cyclic(4, "C4"),
        "C5" => cyclic(5, "C5"),
        "C6" => cyclic(6, "C6"),
        "C7" => cyclic(7, "C7"),
        "C8" => cyclic(8, "C8"),
        "C9" => cyclic(9, "C9"),
        "C10" => cyclic(10, "C10"),
        "C11" => cyclic(11, "C11"),
        "C12" => cyclic(12, "C12"),
        "V4" => product_group(&cyclic(2, "C2"), &cyclic(2, "C2"), "V4"),
        "S3" => from_perms("S3", &["(1 2)", "(1 2 3)"]),
        "S4" => from_perms("S4", &["(1 2)", "(1 2 3 4)"]),
        "D8" => from_perms("D8", &["(1 2 3 4)", "(1 3)"]),
        "Q8" => quaternion(),
        "A4" => from_perms("A4", &["(1 2 3)", "(1 2)(3 4)"]),
        "C4XC2" => product_group(&cyclic(4, "C4"), &cyclic(2, "C2"), "C4xC2"),
        "C9XC3" => product_group(&cyclic(9, "C9"), &cyclic(3, "C3"), "C9xC3"),
        _ => return None,
    };
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        for (name, order, exponent) in [
            ("C1", 1, 1),
            ("C12", 12, 12),
            ("V4", 4, 2),
            ("S3", 6, 6),
            ("S4", 24, 12),
            ("D8", 8, 4),
            ("Q8", 8, 4),
            ("A4", 12, 6),
            ("C4xC2", 8, 4),
            ("C9xC3", 27, 9),
        ] {
            let g = load_group(&GroupSpec::catalog(name), DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.exponent(), exponent, "{name}");
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let g = load_group(&GroupSpec::catalog("Q8"), 128).unwrap();
        let involutions = g.elements().filter(|&x| g.order_of(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn json_specs() {
        let spec = GroupSpec::from_json(r#"{"name":"k","catalog":"S3"}"#).unwrap();
        assert!(matches!(spec, GroupSpec::Catalog { .. }));
        let spec =
            GroupSpec::from_json(r#"{"name":"S3","permutations":["(1 2)","(1 2 3)"]}"#).unwrap();
        let g = load_group(&spec, 128).unwrap();
        assert_eq!(g.order(), 6);
        let spec = GroupSpec::from_json(r#"{"name":"C2","cayley":[[0,1],[1,0]]}"#).unwrap();
        let g = load_group(&spec, 128).unwrap();
        assert_eq!(g.order(), 2);
        assert!(GroupSpec::from_json(r#"{"name":"x"}"#).is_err());
    }

    #[test]
    fn bad_cayley_rejected() {
        // row 1 breaks associativity-free latin property
        let spec = GroupSpec::Cayley {
            name: "bad".into(),
            table: vec![vec![0, 1], vec![1, 1]],
        };
        assert!(load_group(&spec, 128).is_err());
    }
}
