//! Quotient groups H/N materialized as fresh Cayley tables with projection
//! and section maps, so inflation and deflation become table lookups.

use super::{FiniteGroup, GroupError, Subgroup};
use std::sync::Arc;

/// A quotient H/N with the canonical projection. Coset 0 is N itself and
/// cosets are ordered by their minimal parent element.
pub struct QuotientGroup {
    pub group: Arc<FiniteGroup>,
    /// parent element -> coset index; None outside H.
    pub proj: Vec<Option<u16>>,
    /// coset index -> minimal parent representative.
    pub reps: Vec<u16>,
}

impl QuotientGroup {
    pub fn project(&self, x: u16) -> u16 {
        self.proj[x as usize].expect("element outside the quotient domain")
    }

    /// Sorted parent preimage of a set of cosets.
    pub fn preimage(&self, cosets: &[u16]) -> Vec<u16> {
        let mut out: Vec<u16> = Vec::new();
        for (x, c) in self.proj.iter().enumerate() {
            if let Some(c) = c {
                if cosets.binary_search(c).is_ok() {
                    out.push(x as u16);
                }
            }
        }
        out
    }
}

/// H/N for N normal in H, over the parent group's element indices.
pub fn quotient_by(
    parent: &FiniteGroup,
    h: &Subgroup,
    n: &Subgroup,
    name: &str,
) -> Result<QuotientGroup, GroupError> {
    if !n.is_subset_of(h) || !n.is_normal_in(parent, h) {
        return Err(GroupError::NotNormal);
    }
    let mut proj: Vec<Option<u16>> = vec![None; parent.order()];
    let mut reps: Vec<u16> = Vec::new();
    for &x in h.elems() {
        if proj[x as usize].is_some() {
            continue;
        }
        let c = reps.len() as u16;
        reps.push(x);
        for &v in n.elems() {
            proj[parent.mul(x, v) as usize] = Some(c);
        }
    }
    let q = reps.len();
    let mut mul = vec![0u16; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * q + j] = proj[parent.mul(a, b) as usize].unwrap();
        }
    }
    let inv = reps
        .iter()
        .map(|&a| proj[parent.inv(a) as usize].unwrap())
        .collect();
    Ok(QuotientGroup {
        group: Arc::new(FiniteGroup::from_table_unchecked(name, q, mul, inv)),
        proj,
        reps,
    })
}
