//! Finite groups acting on the coordinates of a product complex.
//!
//! An action is stored as an explicit list of permutations of the index
//! set. Construction verifies the group axioms (identity, closure under
//! composition and inverse), so downstream code can rely on them. The
//! action on a vertex map is precomposition, (γ·η)(i) = η(γ(i)), and
//! the same for cells partwise.

use std::collections::BTreeSet;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::polytopal::{ProductCell, VertexMap};

/// Largest supported index set for coordinate actions.
pub const COORDINATE_LIMIT: usize = 64;

/// A group of permutations of the coordinate set `{0..m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    arity: usize,
    elements: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupAction {
    /// Validate and canonicalize a permutation list into a group action.
    /// The list must contain the identity and be closed under
    /// composition and inverse; duplicates are rejected.
    pub fn new(elements: Vec<Vec<usize>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidInput(
                "a group needs at least one element".into(),
            ));
        }
        let arity = elements[0].len();
        if arity > COORDINATE_LIMIT {
            return Err(Error::CapExceeded {
                what: "coordinates of a group action",
                requested: arity as u64,
                cap: COORDINATE_LIMIT as u64,
            });
        }
        let mut seen: BTreeSet<&[usize]> = BTreeSet::new();
        for perm in &elements {
            if perm.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: perm.len(),
                });
            }
            let mut hit = vec![false; arity];
            for &img in perm {
                if img >= arity || hit[img] {
                    return Err(Error::InvalidInput(format!(
                        "{perm:?} is not a permutation of 0..{arity}"
                    )));
                }
                hit[img] = true;
            }
            if !seen.insert(perm) {
                return Err(Error::InvalidInput(format!("duplicate element {perm:?}")));
            }
        }
        let identity = elements
            .iter()
            .position(|p| p.iter().enumerate().all(|(i, &v)| i == v))
            .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
        for a in &elements {
            // inverse of a
            let mut inv = vec![0usize; arity];
            for (i, &v) in a.iter().enumerate() {
                inv[v] = i;
            }
            if !seen.contains(inv.as_slice()) {
                return Err(Error::InvalidInput(format!(
                    "inverse of {a:?} missing from the element list"
                )));
            }
            for b in &elements {
                // composite a∘b: i ↦ a[b[i]]
                let prod: Vec<usize> = (0..arity).map(|i| a[b[i]]).collect();
                if !seen.contains(prod.as_slice()) {
                    return Err(Error::InvalidInput(format!(
                        "composite of {a:?} and {b:?} missing from the element list"
                    )));
                }
            }
        }
        Ok(Self {
            arity,
            elements,
            identity,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn identity(&self) -> &[usize] {
        &self.elements[self.identity]
    }

    /// γ·η, i.e. η∘γ.
    pub fn apply_to_map(&self, gamma: &[usize], eta: &VertexMap) -> Result<VertexMap> {
        if eta.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: eta.arity(),
            });
        }
        Ok(VertexMap::new(
            gamma.iter().map(|&i| eta.values[i]).collect(),
        ))
    }

    /// γ·ν, i.e. ν∘γ partwise.
    pub fn apply_to_cell(&self, gamma: &[usize], nu: &ProductCell) -> Result<ProductCell> {
        if nu.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: nu.arity(),
            });
        }
        Ok(ProductCell {
            parts: gamma.iter().map(|&i| nu.parts[i].clone()).collect(),
        })
    }

    /// Does every group element fix the cell?
    pub fn fixes_cell(&self, nu: &ProductCell) -> Result<bool> {
        for gamma in &self.elements {
            if self.apply_to_cell(gamma, nu)?.parts != nu.parts {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Is the action transitive on coordinates?
    pub fn is_transitive(&self) -> bool {
        let mut reach = VertexSet::singleton(0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for gamma in &self.elements {
                let j = gamma[i];
                if !reach.contains(j) {
                    reach.insert(j);
                    frontier.push(j);
                }
            }
        }
        reach.len() == self.arity
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The regular translation action of (Z_p)^k on itself: p^k permutations
/// of the coordinate set {0..p^k}, coordinates read as mixed-radix
/// digit vectors. Transitive and fixed-point-free away from the identity.
pub fn elementary_abelian_action(p: u64, k: u32) -> Result<GroupAction> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidInput("exponent k must be at least 1".into()));
    }
    let order = (p as u128)
        .checked_pow(k)
        .filter(|&o| o <= COORDINATE_LIMIT as u128);
    let order = order.ok_or(Error::CapExceeded {
        what: "coordinates p^k of the translation action",
        requested: u64::MAX,
        cap: COORDINATE_LIMIT as u64,
    })? as usize;

    let add = |x: usize, a: usize| -> usize {
        // digitwise sum mod p in mixed radix base p
        let (mut x, mut a) = (x as u64, a as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..k {
            out += ((x % p + a % p) % p) * place;
            x /= p;
            a /= p;
            place *= p;
        }
        out as usize
    };
    let elements: Vec<Vec<usize>> = (0..order)
        .map(|a| (0..order).map(|x| add(x, a)).collect())
        .collect();
    GroupAction::new(elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms_enforced() {
        // missing closure: {id, 3-cycle} without its square
        let id = vec![0, 1, 2];
        let cyc = vec![1, 2, 0];
        let cyc2 = vec![2, 0, 1];
        assert!(GroupAction::new(vec![id.clone(), cyc.clone()]).is_err());
        assert!(GroupAction::new(vec![cyc.clone(), cyc2.clone()]).is_err());
        let g = GroupAction::new(vec![id.clone(), cyc, cyc2]).unwrap();
        assert_eq!(g.identity(), &[0, 1, 2]);
        assert!(g.is_transitive());
        assert!(GroupAction::new(vec![vec![0, 0, 1]]).is_err());
        assert!(GroupAction::new(vec![id.clone(), id]).is_err());
    }

    #[test]
    fn translation_action_z2() {
        let g = elementary_abelian_action(2, 1).unwrap();
        assert_eq!(g.elements(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn translation_action_z3() {
        let g = elementary_abelian_action(3, 1).unwrap();
        assert_eq!(g.elements().len(), 3);
        assert!(g.elements().contains(&vec![1, 2, 0]));
        assert!(g.elements().contains(&vec![2, 0, 1]));
        assert!(g.is_transitive());
    }

    #[test]
    fn translation_action_z2_squared() {
        let g = elementary_abelian_action(2, 2).unwrap();
        assert_eq!(g.elements().len(), 4);
        for gamma in g.elements() {
            let moved = gamma.iter().enumerate().filter(|&(i, &v)| i != v).count();
            // each non-identity translation is a product of two 2-cycles
            assert!(moved == 0 || moved == 4, "unexpected cycle type {gamma:?}");
        }
        assert!(g.is_transitive());
        // fixed-point-free away from the identity
        for gamma in g.elements() {
            let fixes_some = gamma.iter().enumerate().any(|(i, &v)| i == v);
            let is_id = gamma.iter().enumerate().all(|(i, &v)| i == v);
            assert_eq!(fixes_some, is_id);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(elementary_abelian_action(4, 1).is_err());
        assert!(elementary_abelian_action(1, 1).is_err());
        assert!(elementary_abelian_action(2, 0).is_err());
        assert!(elementary_abelian_action(2, 20).is_err());
    }

    #[test]
    fn action_on_maps_and_cells() {
        let g = elementary_abelian_action(2, 1).unwrap();
        let swap = &g.elements()[1];
        let eta = VertexMap::new(vec![3, 7]);
        assert_eq!(
            g.apply_to_map(swap, &eta).unwrap(),
            VertexMap::new(vec![7, 3])
        );
        let nu = ProductCell::new(vec![
            crate::bitset::VertexSet::from_iter([0, 1]),
            crate::bitset::VertexSet::from_iter([2]),
        ])
        .unwrap();
        let moved = g.apply_to_cell(swap, &nu).unwrap();
        assert_eq!(moved.parts[0].to_vec(), vec![2]);
        assert!(!g.fixes_cell(&nu).unwrap());
        let diag = ProductCell::new(vec![
            crate::bitset::VertexSet::from_iter([0, 1]),
            crate::bitset::VertexSet::from_iter([0, 1]),
        ])
        .unwrap();
        assert!(g.fixes_cell(&diag).unwrap());
    }
}
