//! Cells of products of simplices and the membership tests that carve
//! out the test complexes inside them.
//!
//! Fix an index set `I = {0..m}` (the vertices of a source complex) and
//! a target vertex set `V`. A vertex of the ambient product is a map
//! `η: I → V`; a cell assigns each coordinate a nonempty subset of `V`.
//! A cell lies in the subcomplex induced by a vertex predicate exactly
//! when every selection of one vertex per coordinate is admitted.

pub mod action;
pub mod realize;
pub mod skeleton;

use crate::bitset::VertexSet;
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};

/// A vertex of the product: one target vertex per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap {
    pub values: Vec<usize>,
}

impl VertexMap {
    pub fn new(values: Vec<usize>) -> Self {
        Self { values }
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    /// The all-singleton cell identified with this map.
    pub fn to_cell(&self) -> ProductCell {
        ProductCell {
            parts: self
                .values
                .iter()
                .map(|&v| VertexSet::singleton(v))
                .collect(),
        }
    }
}

impl From<Vec<usize>> for VertexMap {
    fn from(values: Vec<usize>) -> Self {
        Self { values }
    }
}

/// A cell of the product of simplices: one nonempty vertex set per
/// coordinate. Dimension is Σ (|parts[i]| − 1). Parts are canonical
/// (bit sets), so structural equality is cell equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductCell {
    pub parts: Vec<VertexSet>,
}

impl ProductCell {
    /// Build from explicit parts, rejecting empty ones.
    pub fn new(parts: Vec<VertexSet>) -> Result<Self> {
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidInput(
                "product cell with an empty part".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.len() - 1).sum()
    }

    pub fn is_vertex(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1)
    }

    /// The vertex map of an all-singleton cell.
    pub fn as_vertex_map(&self) -> Option<VertexMap> {
        if !self.is_vertex() {
            return None;
        }
        Some(VertexMap::new(
            self.parts
                .iter()
                .map(|p| p.iter().next().expect("parts are nonempty"))
                .collect(),
        ))
    }

    /// All selections: every map picking one vertex from each part,
    /// in mixed-radix order over the sorted parts.
    pub fn selections(&self) -> Vec<VertexMap> {
        let parts: Vec<Vec<usize>> = self.parts.iter().map(|p| p.to_vec()).collect();
        let mut out = Vec::with_capacity(parts.iter().map(Vec::len).product());
        let mut idx = vec![0usize; parts.len()];
        loop {
            out.push(VertexMap::new(
                idx.iter().zip(&parts).map(|(&i, p)| p[i]).collect(),
            ));
            let mut pos = parts.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < parts[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

fn check_arity(found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::ArityMismatch { expected, found });
    }
    Ok(())
}

fn check_targets<'a>(
    values: impl IntoIterator<Item = &'a usize>,
    target: &SimplicialComplex,
) -> Result<()> {
    for &v in values {
        if v >= target.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "target vertex {v} out of range ({} vertices)",
                target.vertex_count()
            )));
        }
    }
    Ok(())
}

/// Is `η` a vertex of Ram(Σ1, Σ2)? True iff for every facet σ of Σ2 the
/// preimage {i : η(i) ∈ σ} is a face of Σ1. Facets of Σ2 suffice: the
/// preimage is monotone in σ and Σ1 is closed under subsets.
pub fn ram_vertex_test(
    eta: &VertexMap,
    sigma1: &SimplicialComplex,
    sigma2: &SimplicialComplex,
) -> Result<bool> {
    check_arity(eta.arity(), sigma1.vertex_count())?;
    check_targets(&eta.values, sigma2)?;
    for facet in sigma2.facets() {
        let preimage = VertexSet::from_iter(
            eta.values
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| facet.contains(v).then_some(i)),
        );
        if !sigma1.is_face(&preimage)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reference test for membership of a cell in the subcomplex induced by
/// a vertex predicate: every selection must be admitted. Full selection
/// enumeration; exponential in the cell dimension.
pub fn cell_in_induced_brute<F>(nu: &ProductCell, vertex_ok: F) -> Result<bool>
where
    F: Fn(&VertexMap) -> Result<bool>,
{
    for eta in nu.selections() {
        if !vertex_ok(&eta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the cell `ν` in Ram(Σ1, Σ2)? Fast form: for every facet σ of Σ2,
/// the set {i : ν(i) ∩ σ ≠ ∅} must be a face of Σ1.
///
/// This agrees with [`cell_in_induced_brute`] over [`ram_vertex_test`]:
/// the displayed set is the preimage of σ under the worst-case
/// selection (pick a vertex of σ wherever possible), every other
/// selection's preimage is a subset of it, and Σ1 is closed under
/// subsets.
pub fn ram_cell_test(
    nu: &ProductCell,
    sigma1: &SimplicialComplex,
    sigma2: &SimplicialComplex,
) -> Result<bool> {
    check_arity(nu.arity(), sigma1.vertex_count())?;
    for part in &nu.parts {
        if part.is_empty() {
            return Err(Error::InvalidInput(
                "product cell with an empty part".into(),
            ));
        }
        check_targets(part.to_vec().iter(), sigma2)?;
    }
    for facet in sigma2.facets() {
        let touched = VertexSet::from_iter(
            nu.parts
                .iter()
                .enumerate()
                .filter_map(|(i, part)| part.intersects(facet).then_some(i)),
        );
        if !sigma1.is_face(&touched)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pointwise composition of Ram vertices: η1 ∈ Ram(Σ1,Σ2) followed by
/// η2 ∈ Ram(Σ2,Σ3) gives η2∘η1 ∈ Ram(Σ1,Σ3). Both inputs are checked
/// against their complexes, and the output is checked before returning.
pub fn compose_vertex_maps(
    eta1: &VertexMap,
    eta2: &VertexMap,
    sigma1: &SimplicialComplex,
    sigma2: &SimplicialComplex,
    sigma3: &SimplicialComplex,
) -> Result<VertexMap> {
    if !ram_vertex_test(eta1, sigma1, sigma2)? {
        return Err(Error::InvalidInput(
            "first map is not a vertex of Ram(Σ1,Σ2)".into(),
        ));
    }
    if !ram_vertex_test(eta2, sigma2, sigma3)? {
        return Err(Error::InvalidInput(
            "second map is not a vertex of Ram(Σ2,Σ3)".into(),
        ));
    }
    let composed = VertexMap::new(eta1.values.iter().map(|&v| eta2.values[v]).collect());
    if !ram_vertex_test(&composed, sigma1, sigma3)? {
        return Err(Error::Structural(
            "composite of Ram vertices failed the Ram vertex test".into(),
        ));
    }
    Ok(composed)
}

/// Image of a cell under postcomposition with a vertex map of the
/// middle complex: part i maps to the set image η2(ν(i)). Parts may
/// collapse, so the image dimension can drop.
pub fn postcompose_cell(nu: &ProductCell, eta2: &VertexMap) -> Result<ProductCell> {
    let mut parts = Vec::with_capacity(nu.parts.len());
    for part in &nu.parts {
        let mut image = VertexSet::new();
        for v in part.iter() {
            let w = *eta2.values.get(v).ok_or_else(|| {
                Error::InvalidInput(format!("cell vertex {v} outside the map's domain"))
            })?;
            image.insert(w);
        }
        parts.push(image);
    }
    ProductCell::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{boundary_simplex, discrete_complex, simplex_complex};

    fn cell(parts: &[&[usize]]) -> ProductCell {
        ProductCell::new(
            parts
                .iter()
                .map(|p| VertexSet::from_iter(p.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ram_vertex_examples() {
        let b2 = boundary_simplex(2).unwrap();
        let d3 = discrete_complex(3).unwrap();
        // distinct pair admitted, repeated pair not
        assert!(ram_vertex_test(&VertexMap::new(vec![0, 1]), &b2, &d3).unwrap());
        assert!(!ram_vertex_test(&VertexMap::new(vec![0, 0]), &b2, &d3).unwrap());

        // full simplex source accepts everything
        let full = simplex_complex(2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert!(ram_vertex_test(&VertexMap::new(vec![a, b]), &full, &d3).unwrap());
            }
        }

        // a target facet containing all target vertices kills every map
        let full_target = simplex_complex(2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert!(!ram_vertex_test(&VertexMap::new(vec![a, b]), &b2, &full_target).unwrap());
            }
        }

        assert!(ram_vertex_test(&VertexMap::new(vec![0]), &b2, &d3).is_err());
        assert!(ram_vertex_test(&VertexMap::new(vec![0, 7]), &b2, &d3).is_err());
    }

    #[test]
    fn brute_induced_examples() {
        // all-singleton cell reduces to the predicate on its map
        let nu = cell(&[&[2], &[5]]);
        let hit = cell_in_induced_brute(&nu, |eta| Ok(eta.values == vec![2, 5])).unwrap();
        assert!(hit);

        // both selections accepted
        let nu = cell(&[&[0, 1], &[2]]);
        assert!(cell_in_induced_brute(&nu, |eta| Ok(eta.values[1] == 2)).unwrap());

        // the diagonal selection fails a distinctness predicate
        let nu = cell(&[&[0, 1], &[0, 1]]);
        let distinct = |eta: &VertexMap| Ok(eta.values[0] != eta.values[1]);
        assert!(!cell_in_induced_brute(&nu, distinct).unwrap());
    }

    #[test]
    fn ram_cell_examples() {
        let b2 = boundary_simplex(2).unwrap();
        let d3 = discrete_complex(3).unwrap();
        assert!(ram_cell_test(&cell(&[&[0], &[1, 2]]), &b2, &d3).unwrap());
        assert!(!ram_cell_test(&cell(&[&[0, 1], &[1, 2]]), &b2, &d3).unwrap());
        assert!(ram_cell_test(&cell(&[&[0, 1]]), &b2, &d3).is_err());
    }

    #[test]
    fn singleton_cells_agree_with_vertex_test() {
        let b2 = boundary_simplex(2).unwrap();
        let d3 = discrete_complex(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let eta = VertexMap::new(vec![a, b]);
                assert_eq!(
                    ram_cell_test(&eta.to_cell(), &b2, &d3).unwrap(),
                    ram_vertex_test(&eta, &b2, &d3).unwrap()
                );
            }
        }
    }

    #[test]
    fn fast_cell_test_matches_brute_on_small_products() {
        // every cell of the product of two triangles, two small targets
        let sources = [boundary_simplex(2).unwrap(), simplex_complex(2).unwrap()];
        let targets = [discrete_complex(3).unwrap(), boundary_simplex(3).unwrap()];
        for s1 in &sources {
            for s2 in &targets {
                let n2 = s2.vertex_count();
                for mask_a in 1u32..(1 << n2) {
                    for mask_b in 1u32..(1 << n2) {
                        let parts = vec![
                            VertexSet::from_iter((0..n2).filter(|&v| mask_a & (1 << v) != 0)),
                            VertexSet::from_iter((0..n2).filter(|&v| mask_b & (1 << v) != 0)),
                        ];
                        let nu = ProductCell::new(parts).unwrap();
                        let fast = ram_cell_test(&nu, s1, s2).unwrap();
                        let brute =
                            cell_in_induced_brute(&nu, |eta| ram_vertex_test(eta, s1, s2)).unwrap();
                        assert_eq!(fast, brute, "cell {nu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn selections_enumerate_full_grid() {
        let nu = cell(&[&[0, 1], &[3], &[4, 5, 6]]);
        let sel = nu.selections();
        assert_eq!(sel.len(), 6);
        assert!(sel.contains(&VertexMap::new(vec![1, 3, 5])));
        assert_eq!(nu.dim(), 3);
    }

    #[test]
    fn composition_examples() {
        let b2 = boundary_simplex(2).unwrap();
        let d3 = discrete_complex(3).unwrap();
        // identity on the middle complex keeps the map
        let eta1 = VertexMap::new(vec![0, 1]);
        let id3 = VertexMap::new(vec![0, 1, 2]);
        let composed = compose_vertex_maps(&eta1, &id3, &b2, &d3, &d3).unwrap();
        assert_eq!(composed, eta1);

        // a permutation of colors
        let swap = VertexMap::new(vec![1, 0, 2]);
        let composed = compose_vertex_maps(&eta1, &swap, &b2, &d3, &d3).unwrap();
        assert_eq!(composed, VertexMap::new(vec![1, 0]));

        // invalid first map rejected
        let diag = VertexMap::new(vec![0, 0]);
        assert!(compose_vertex_maps(&diag, &id3, &b2, &d3, &d3).is_err());
    }

    #[test]
    fn postcompose_cell_collapses_parts() {
        let nu = cell(&[&[0, 1], &[2]]);
        // injective on the cell: dimension preserved
        let inj = VertexMap::new(vec![2, 1, 0]);
        let image = postcompose_cell(&nu, &inj).unwrap();
        assert_eq!(image, cell(&[&[1, 2], &[0]]));
        assert_eq!(image.dim(), nu.dim());
        // constant on the first part: dimension drops
        let collapse = VertexMap::new(vec![1, 1, 0]);
        let image = postcompose_cell(&nu, &collapse).unwrap();
        assert_eq!(image, cell(&[&[1], &[0]]));
        assert_eq!(image.dim(), 0);
    }
}
