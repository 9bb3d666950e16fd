//! Skeleton enumeration for induced subcomplexes of simplex products.
//!
//! Vertices are found first (depth-first with monotone pruning), then
//! cells grow dimension by dimension: every (d+1)-cell arises from a
//! d-cell by adding one vertex to one part, so breadth-first extension
//! with a membership test per candidate is complete — induced
//! subcomplexes are closed under passing to subcells.
//!
//! Enumeration runs under an explicit cell budget and fails loudly when
//! it is exceeded; a truncated answer is never returned silently.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::complexes::graph::{self, Graph};
use crate::complexes::{
    boundary_simplex, discrete_complex, g_free_edge_complex, independence_complex,
    SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::polytopal::action::GroupAction;
use crate::polytopal::{postcompose_cell, ram_cell_test, ram_vertex_test, ProductCell, VertexMap};

/// Default cap on the total number of cells an enumeration may store.
pub const DEFAULT_CELL_BUDGET: usize = 2_000_000;

/// Cap on the number of candidate maps scanned when enumerating the
/// vertices of a rainbow complex (the scan is |E(K_N)|^m maps).
const RAINBOW_SCAN_CAP: u128 = 1 << 24;

/// Resource limits for skeleton enumeration.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_cells: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_cells: DEFAULT_CELL_BUDGET,
        }
    }
}

impl Budget {
    pub fn cells(max_cells: usize) -> Self {
        Self { max_cells }
    }
}

/// The cells of an induced subcomplex of a simplex product, grouped by
/// dimension, up to a truncation dimension. Cell lists are sorted in
/// canonical order and immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonComplex {
    arity: usize,
    target_vertex_count: usize,
    cells_by_dim: Vec<Vec<ProductCell>>,
    top_dim: usize,
}

impl SkeletonComplex {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn target_vertex_count(&self) -> usize {
        self.target_vertex_count
    }

    /// Truncation dimension the skeleton was built to.
    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    /// Cells of one dimension, canonically sorted.
    pub fn cells(&self, dim: usize) -> &[ProductCell] {
        self.cells_by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Cell counts per dimension, 0 through top_dim.
    pub fn dims(&self) -> Vec<usize> {
        self.cells_by_dim.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells_by_dim.iter().map(Vec::len).sum()
    }

    /// True when some dimension within the truncation has no cells; all
    /// deeper dimensions are then empty too (subcell closure), so the
    /// skeleton is effectively complete.
    pub fn exhausted_within_truncation(&self) -> bool {
        self.cells_by_dim.iter().any(Vec::is_empty)
    }

    pub fn to_json(&self) -> String {
        let mut cells: BTreeMap<String, Vec<Vec<Vec<usize>>>> = BTreeMap::new();
        for (d, list) in self.cells_by_dim.iter().enumerate() {
            if !list.is_empty() {
                cells.insert(
                    d.to_string(),
                    list.iter()
                        .map(|c| c.parts.iter().map(|p| p.to_vec()).collect())
                        .collect(),
                );
            }
        }
        serde_json::to_string(&SkeletonJson {
            dims: self.dims(),
            cells,
        })
        .expect("skeleton serialization cannot fail")
    }

    /// Parse a skeleton dump. Cells are re-canonicalized and validated:
    /// counts must match `dims`, every cell must have the arity of the
    /// first cell and the dimension of its group.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SkeletonJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: "<skeleton>".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if raw.dims.is_empty() {
            return Err(Error::InvalidInput(
                "skeleton needs at least dimension 0".into(),
            ));
        }
        let top_dim = raw.dims.len() - 1;
        let mut cells_by_dim: Vec<Vec<ProductCell>> = vec![Vec::new(); top_dim + 1];
        let mut arity = 0usize;
        let mut target = 0usize;
        for (key, list) in &raw.cells {
            let d: usize = key.parse().map_err(|_| {
                Error::InvalidInput(format!("cell group key {key:?} is not a dimension"))
            })?;
            if d > top_dim {
                return Err(Error::InvalidInput(format!(
                    "cell group {d} beyond declared top dimension {top_dim}"
                )));
            }
            let mut cells = Vec::with_capacity(list.len());
            for parts in list {
                let cell = ProductCell::new(
                    parts
                        .iter()
                        .map(|p| VertexSet::from_iter(p.iter().copied()))
                        .collect(),
                )?;
                if arity == 0 {
                    arity = cell.arity();
                } else if cell.arity() != arity {
                    return Err(Error::ArityMismatch {
                        expected: arity,
                        found: cell.arity(),
                    });
                }
                if cell.dim() != d {
                    return Err(Error::InvalidInput(format!(
                        "cell {cell:?} has dimension {} but is listed under {d}",
                        cell.dim()
                    )));
                }
                for part in &cell.parts {
                    if let Some(max) = part.max_element() {
                        target = target.max(max + 1);
                    }
                }
                cells.push(cell);
            }
            cells.sort();
            cells.dedup();
            cells_by_dim[d] = cells;
        }
        for (d, list) in cells_by_dim.iter().enumerate() {
            if list.len() != raw.dims[d] {
                return Err(Error::InvalidInput(format!(
                    "dimension {d} lists {} cells but dims declares {}",
                    list.len(),
                    raw.dims[d]
                )));
            }
        }
        Ok(Self {
            arity,
            target_vertex_count: target,
            cells_by_dim,
            top_dim,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct SkeletonJson {
    dims: Vec<usize>,
    cells: BTreeMap<String, Vec<Vec<Vec<usize>>>>,
}

/// Depth-first enumeration of the vertices of Ram(Σ1, Σ2): maps are
/// extended one coordinate at a time and a branch dies as soon as some
/// facet's partial preimage is not a face of Σ1 (preimages only grow,
/// and faces are closed under subsets, so the pruning is exact).
fn ram_vertices(
    sigma1: &SimplicialComplex,
    sigma2: &SimplicialComplex,
    budget: &Budget,
) -> Result<Vec<ProductCell>> {
    let m = sigma1.vertex_count();
    let n2 = sigma2.vertex_count();
    let facets = sigma2.facets();
    // facets containing each target vertex
    let facets_at: Vec<Vec<usize>> = (0..n2)
        .map(|v| {
            facets
                .iter()
                .enumerate()
                .filter_map(|(fi, f)| f.contains(v).then_some(fi))
                .collect()
        })
        .collect();

    let mut out: Vec<ProductCell> = Vec::new();
    let mut values = Vec::with_capacity(m);
    let mut preimages: Vec<VertexSet> = vec![VertexSet::new(); facets.len()];

    // backtracking state is clearest spelled out, not packed in a struct
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        coord: usize,
        m: usize,
        n2: usize,
        sigma1: &SimplicialComplex,
        facets_at: &[Vec<usize>],
        values: &mut Vec<usize>,
        preimages: &mut Vec<VertexSet>,
        out: &mut Vec<ProductCell>,
        max_cells: usize,
    ) -> Result<()> {
        if coord == m {
            if out.len() >= max_cells {
                return Err(Error::BudgetExhausted {
                    limit: max_cells as u64,
                    cells_found: out.len() as u64 + 1,
                    dim_reached: 0,
                    cells_per_dim: vec![out.len() + 1],
                });
            }
            out.push(VertexMap::new(values.clone()).to_cell());
            return Ok(());
        }
        'target: for v in 0..n2 {
            for &fi in &facets_at[v] {
                let mut grown = preimages[fi].clone();
                grown.insert(coord);
                if !sigma1.is_face(&grown)? {
                    continue 'target;
                }
            }
            for &fi in &facets_at[v] {
                preimages[fi].insert(coord);
            }
            values.push(v);
            let res = dfs(
                coord + 1,
                m,
                n2,
                sigma1,
                facets_at,
                values,
                preimages,
                out,
                max_cells,
            );
            values.pop();
            for &fi in &facets_at[v] {
                preimages[fi].remove(coord);
            }
            res?;
        }
        Ok(())
    }

    dfs(
        0,
        m,
        n2,
        sigma1,
        facets_at.as_slice(),
        &mut values,
        &mut preimages,
        &mut out,
        budget.max_cells,
    )?;
    Ok(out)
}

/// Grow the full skeleton from its vertices under a cell membership
/// test. Candidates for dimension d+1 are deduplicated, validated in
/// parallel (deterministically ordered), sorted canonically, and
/// counted against the budget.
fn grow_skeleton<F>(
    arity: usize,
    target_vertex_count: usize,
    mut vertices: Vec<ProductCell>,
    admit: F,
    max_dim: usize,
    budget: &Budget,
) -> Result<SkeletonComplex>
where
    F: Fn(&ProductCell) -> Result<bool> + Sync,
{
    vertices.sort();
    vertices.dedup();
    let mut cells_by_dim: Vec<Vec<ProductCell>> = Vec::with_capacity(max_dim + 1);
    let mut total = vertices.len();
    cells_by_dim.push(vertices);

    for d in 0..max_dim {
        let parents = &cells_by_dim[d];
        let mut seen: HashSet<ProductCell> = HashSet::new();
        let mut accepted: Vec<ProductCell> = Vec::new();
        for chunk in parents.chunks(2048) {
            let mut batch: Vec<ProductCell> = Vec::new();
            for parent in chunk {
                for i in 0..arity {
                    for v in 0..target_vertex_count {
                        if parent.parts[i].contains(v) {
                            continue;
                        }
                        let mut parts = parent.parts.clone();
                        parts[i].insert(v);
                        let candidate = ProductCell { parts };
                        if seen.insert(candidate.clone()) {
                            batch.push(candidate);
                        }
                    }
                }
            }
            if seen.len() > budget.max_cells.saturating_mul(4).max(1 << 20) {
                let mut cells_per_dim: Vec<usize> = cells_by_dim.iter().map(Vec::len).collect();
                cells_per_dim.push(accepted.len());
                return Err(Error::BudgetExhausted {
                    limit: budget.max_cells as u64,
                    cells_found: (total + accepted.len()) as u64,
                    dim_reached: d + 1,
                    cells_per_dim,
                });
            }
            let verdicts: Vec<Option<ProductCell>> = batch
                .into_par_iter()
                .map(|c| Ok(admit(&c)?.then_some(c)))
                .collect::<Result<_>>()?;
            accepted.extend(verdicts.into_iter().flatten());
            if total + accepted.len() > budget.max_cells {
                let mut cells_per_dim: Vec<usize> = cells_by_dim.iter().map(Vec::len).collect();
                cells_per_dim.push(accepted.len());
                return Err(Error::BudgetExhausted {
                    limit: budget.max_cells as u64,
                    cells_found: (total + accepted.len()) as u64,
                    dim_reached: d + 1,
                    cells_per_dim,
                });
            }
        }
        accepted.sort();
        total += accepted.len();
        cells_by_dim.push(accepted);
    }

    Ok(SkeletonComplex {
        arity,
        target_vertex_count,
        cells_by_dim,
        top_dim: max_dim,
    })
}

/// Enumerate all cells of Ram(Σ1, Σ2) of dimension at most `max_dim`.
pub fn enumerate_skeleton(
    sigma1: &SimplicialComplex,
    sigma2: &SimplicialComplex,
    max_dim: usize,
    budget: &Budget,
) -> Result<SkeletonComplex> {
    if sigma1.vertex_count() == 0 {
        return Err(Error::InvalidInput(
            "the source complex needs at least one vertex".into(),
        ));
    }
    let vertices = ram_vertices(sigma1, sigma2, budget)?;
    grow_skeleton(
        sigma1.vertex_count(),
        sigma2.vertex_count(),
        vertices,
        |nu| ram_cell_test(nu, sigma1, sigma2),
        max_dim,
        budget,
    )
}

/// Hom(g1, g2) = Ram(Ind(g1), Ind(g2)): the vertices are exactly the
/// graph homomorphisms g1 → g2.
pub fn hom_complex(
    g1: &Graph,
    g2: &Graph,
    max_dim: usize,
    budget: &Budget,
) -> Result<SkeletonComplex> {
    if g1.vertex_count() == 0 {
        return Err(Error::InvalidInput(
            "source graph needs at least one vertex".into(),
        ));
    }
    enumerate_skeleton(
        &independence_complex(g1)?,
        &independence_complex(g2)?,
        max_dim,
        budget,
    )
}

/// Part(Σ, n) = Ram(Σ, D_n): vertices are n-colorings of Σ's vertices
/// with every color class a face.
pub fn part_complex(
    sigma: &SimplicialComplex,
    n: usize,
    max_dim: usize,
    budget: &Budget,
) -> Result<SkeletonComplex> {
    enumerate_skeleton(sigma, &discrete_complex(n)?, max_dim, budget)
}

/// The rainbow complex of (g, N, m): the induced subcomplex of the
/// m-fold product of simplices on E(K_N) whose vertices are the maps
/// η: {0..m} → E(K_N) with a copy of g inside the edge image.
///
/// Built directly from that definition — vertex scan plus selection
/// enumeration per cell — so agreement with
/// `enumerate_skeleton(∂Δ_m, Σ(g;N))` is a genuine cross-check of both
/// paths.
pub fn rainbow_complex(
    g: &Graph,
    n_vertices: usize,
    m: usize,
    max_dim: usize,
    budget: &Budget,
) -> Result<SkeletonComplex> {
    if m == 0 {
        return Err(Error::InvalidInput("rainbow complex needs m >= 1".into()));
    }
    if n_vertices < 2 {
        return Err(Error::InvalidInput("rainbow complex needs N >= 2".into()));
    }
    if g.edge_count() == 0 {
        return Err(Error::InvalidInput(
            "pattern graph must have at least one edge".into(),
        ));
    }
    let num_edges = graph::complete_edge_count(n_vertices);
    let copies = graph::enumerate_copies(g, n_vertices)?;
    let scan = (num_edges as u128).pow(m as u32);
    if scan > RAINBOW_SCAN_CAP {
        return Err(Error::CapExceeded {
            what: "rainbow vertex scan |E(K_N)|^m",
            requested: scan.min(u64::MAX as u128) as u64,
            cap: RAINBOW_SCAN_CAP as u64,
        });
    }
    let contains_copy = |mask: u64| copies.iter().any(|c| c & !mask == 0);

    // vertex scan in mixed-radix order
    let mut vertices: Vec<ProductCell> = Vec::new();
    let mut digits = vec![0usize; m];
    'scan: loop {
        let mask = digits.iter().fold(0u64, |acc, &e| acc | (1 << e));
        if contains_copy(mask) {
            if vertices.len() >= budget.max_cells {
                return Err(Error::BudgetExhausted {
                    limit: budget.max_cells as u64,
                    cells_found: vertices.len() as u64 + 1,
                    dim_reached: 0,
                    cells_per_dim: vec![vertices.len() + 1],
                });
            }
            vertices.push(VertexMap::new(digits.clone()).to_cell());
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                break 'scan;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < num_edges {
                break;
            }
            digits[pos] = 0;
        }
    }

    grow_skeleton(
        m,
        num_edges,
        vertices,
        |nu| {
            for eta in nu.selections() {
                let mask = eta.values.iter().fold(0u64, |acc, &e| acc | (1 << e));
                if !contains_copy(mask) {
                    return Ok(false);
                }
            }
            Ok(true)
        },
        max_dim,
        budget,
    )
}

/// The g-free edge complex Σ(g;N), exposed here next to the rainbow
/// builder that it cross-checks: Rainbow(g;N;m) = Ram(∂Δ_m, Σ(g;N)).
pub fn rainbow_target(g: &Graph, n_vertices: usize) -> Result<SimplicialComplex> {
    g_free_edge_complex(g, n_vertices)
}

/// Source complex for the Ram form of the rainbow complex.
pub fn rainbow_source(m: usize) -> Result<SimplicialComplex> {
    boundary_simplex(m)
}

/// Postcomposition cell map Ram(Σ1,Σ2) → Ram(Σ1,Σ3) induced by a vertex
/// η2 of Ram(Σ2,Σ3): vertices map to composites, parts to set images.
/// Returns the image of every cell, grouped by the source dimension.
/// Every image is verified to lie in Ram(Σ1,Σ3).
pub fn postcompose_map(
    skeleton: &SkeletonComplex,
    eta2: &VertexMap,
    sigma1: &SimplicialComplex,
    sigma2: &SimplicialComplex,
    sigma3: &SimplicialComplex,
) -> Result<Vec<Vec<ProductCell>>> {
    if !ram_vertex_test(eta2, sigma2, sigma3)? {
        return Err(Error::InvalidInput(
            "the postcomposed map is not a vertex of Ram(Σ2,Σ3)".into(),
        ));
    }
    if skeleton.target_vertex_count() > sigma2.vertex_count() {
        return Err(Error::ArityMismatch {
            expected: sigma2.vertex_count(),
            found: skeleton.target_vertex_count(),
        });
    }
    let mut images = Vec::with_capacity(skeleton.top_dim() + 1);
    for d in 0..=skeleton.top_dim() {
        let mut level = Vec::with_capacity(skeleton.cells(d).len());
        for cell in skeleton.cells(d) {
            let image = postcompose_cell(cell, eta2)?;
            if !ram_cell_test(&image, sigma1, sigma3)? {
                return Err(Error::Structural(format!(
                    "postcomposed image {image:?} fails the Ram cell test"
                )));
            }
            level.push(image);
        }
        images.push(level);
    }
    Ok(images)
}

/// Does some cell of the skeleton lie fixed under the whole action?
/// For the cellwise coordinate actions used here, the realized space
/// has a fixed point iff such a cell exists (the barycenter of a fixed
/// cell is fixed; conversely a fixed point's carrier cell is fixed).
pub fn has_invariant_cell(skeleton: &SkeletonComplex, action: &GroupAction) -> Result<bool> {
    if skeleton.total_cells() == 0 {
        return Ok(false);
    }
    if action.arity() != skeleton.arity() {
        return Err(Error::ArityMismatch {
            expected: skeleton.arity(),
            found: action.arity(),
        });
    }
    for d in 0..=skeleton.top_dim() {
        for cell in skeleton.cells(d) {
            if action.fixes_cell(cell)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::simplex_complex;
    use crate::polytopal::action::elementary_abelian_action;

    fn b(m: usize) -> SimplicialComplex {
        boundary_simplex(m).unwrap()
    }

    fn d(n: usize) -> SimplicialComplex {
        discrete_complex(n).unwrap()
    }

    #[test]
    fn hexagon_skeleton() {
        let skel = enumerate_skeleton(&b(2), &d(3), 2, &Budget::default()).unwrap();
        assert_eq!(skel.dims(), vec![6, 6, 0]);
        assert!(skel.exhausted_within_truncation());
    }

    #[test]
    fn two_points_skeleton() {
        let skel = enumerate_skeleton(&b(2), &d(2), 1, &Budget::default()).unwrap();
        assert_eq!(skel.dims(), vec![2, 0]);
    }

    #[test]
    fn empty_vertex_set_gives_empty_skeleton() {
        // a target facet containing every target vertex rejects all maps
        let skel =
            enumerate_skeleton(&b(2), &simplex_complex(2).unwrap(), 2, &Budget::default()).unwrap();
        assert_eq!(skel.dims(), vec![0, 0, 0]);
        assert_eq!(skel.total_cells(), 0);
    }

    #[test]
    fn hom_complex_examples() {
        let k1 = Graph::complete(1);
        let k2 = Graph::complete(2);
        let k3 = Graph::complete(3);
        assert_eq!(
            hom_complex(&k2, &k3, 1, &Budget::default()).unwrap().dims()[0],
            6
        );
        assert_eq!(
            hom_complex(&k2, &k2, 1, &Budget::default()).unwrap().dims(),
            vec![2, 0]
        );
        // Hom(K_1, K_3) is the full simplex on three vertices
        assert_eq!(
            hom_complex(&k1, &k3, 2, &Budget::default()).unwrap().dims(),
            vec![3, 3, 1]
        );
    }

    #[test]
    fn part_complex_examples() {
        // only the two proper 2-colorings of two points survive
        let skel = part_complex(&d(2), 2, 1, &Budget::default()).unwrap();
        assert_eq!(skel.dims(), vec![2, 0]);

        // everything colored by the single color
        let full2 = simplex_complex(2).unwrap();
        let skel = part_complex(&full2, 1, 1, &Budget::default()).unwrap();
        assert_eq!(skel.dims(), vec![1, 0]);

        // regression identity with the Ram form
        for n in 1..=4usize {
            let a = part_complex(&b(2), n, 2, &Budget::default()).unwrap();
            let bb = enumerate_skeleton(&b(2), &d(n), 2, &Budget::default()).unwrap();
            assert_eq!(a, bb);
        }
    }

    #[test]
    fn rainbow_examples() {
        let p3 = Graph::path(3);
        let k3 = Graph::complete(3);
        // ordered pairs of distinct edges of K_3
        let skel = rainbow_complex(&p3, 3, 2, 1, &Budget::default()).unwrap();
        assert_eq!(skel.dims()[0], 6);

        // two coordinates cannot contain the three edges of a triangle
        let skel = rainbow_complex(&k3, 6, 2, 1, &Budget::default()).unwrap();
        assert_eq!(skel.total_cells(), 0);

        // 20 triangles in K_6 × 3! orderings, and no valid 1-cells
        let skel = rainbow_complex(&k3, 6, 3, 1, &Budget::default()).unwrap();
        assert_eq!(skel.dims(), vec![120, 0]);
    }

    #[test]
    fn rainbow_matches_ram_form() {
        for (g, n, m) in [
            (Graph::path(3), 3usize, 2usize),
            (Graph::path(3), 4, 2),
            (Graph::complete(3), 4, 3),
        ] {
            let direct = rainbow_complex(&g, n, m, 3, &Budget::default()).unwrap();
            let via_ram = enumerate_skeleton(
                &rainbow_source(m).unwrap(),
                &rainbow_target(&g, n).unwrap(),
                3,
                &Budget::default(),
            )
            .unwrap();
            assert_eq!(direct, via_ram, "g={g:?} N={n} m={m}");
        }
    }

    #[test]
    fn budget_exhaustion_reports_partial_stats() {
        let err = enumerate_skeleton(&b(3), &d(4), 3, &Budget::cells(10)).unwrap_err();
        match err {
            Error::BudgetExhausted {
                limit,
                cells_found,
                cells_per_dim,
                ..
            } => {
                assert_eq!(limit, 10);
                assert!(cells_found > 10);
                assert!(!cells_per_dim.is_empty());
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn postcompose_inclusion_example() {
        // include the 2-point complex into the hexagon target
        let skel = enumerate_skeleton(&b(2), &d(2), 1, &Budget::default()).unwrap();
        let eta2 = VertexMap::new(vec![0, 1]);
        let images = postcompose_map(&skel, &eta2, &b(2), &d(2), &d(3)).unwrap();
        assert_eq!(images[0].len(), 2);
        let hexagon = enumerate_skeleton(&b(2), &d(3), 1, &Budget::default()).unwrap();
        for image in &images[0] {
            assert!(hexagon.cells(0).contains(image));
        }

        // equivariance under the swap action
        let action = elementary_abelian_action(2, 1).unwrap();
        for gamma in action.elements() {
            for cell in skel.cells(0) {
                let moved_then_mapped =
                    postcompose_cell(&action.apply_to_cell(gamma, cell).unwrap(), &eta2).unwrap();
                let mapped_then_moved = action
                    .apply_to_cell(gamma, &postcompose_cell(cell, &eta2).unwrap())
                    .unwrap();
                assert_eq!(moved_then_mapped, mapped_then_moved);
            }
        }
    }

    #[test]
    fn invariant_cell_detection() {
        let action = elementary_abelian_action(2, 1).unwrap();
        // hexagon: ordered distinct pairs, never fixed by the swap
        let hexagon = enumerate_skeleton(&b(2), &d(3), 2, &Budget::default()).unwrap();
        assert!(!has_invariant_cell(&hexagon, &action).unwrap());

        // full product: the top cell is fixed
        let full =
            enumerate_skeleton(&simplex_complex(2).unwrap(), &d(2), 2, &Budget::default()).unwrap();
        assert!(has_invariant_cell(&full, &action).unwrap());

        // empty skeleton: nothing to fix
        let empty =
            enumerate_skeleton(&b(2), &simplex_complex(2).unwrap(), 1, &Budget::default()).unwrap();
        assert!(!has_invariant_cell(&empty, &action).unwrap());

        // arity mismatch rejected
        let tri = elementary_abelian_action(3, 1).unwrap();
        assert!(has_invariant_cell(&hexagon, &tri).is_err());
    }

    #[test]
    fn skeleton_json_roundtrip() {
        let skel = enumerate_skeleton(&b(2), &d(3), 2, &Budget::default()).unwrap();
        let text = skel.to_json();
        let back = SkeletonComplex::from_json(&text).unwrap();
        assert_eq!(skel, back);

        // bad dims rejected
        let err = SkeletonComplex::from_json("{\"dims\":[2],\"cells\":{}}").unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        let err = SkeletonComplex::from_json("{oops").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn growth_finds_square_cell() {
        // Ram(Δ_2, D_2) is the full square: 4 vertices, 4 edges, 1 square
        let skel =
            enumerate_skeleton(&simplex_complex(2).unwrap(), &d(2), 3, &Budget::default()).unwrap();
        assert_eq!(skel.dims(), vec![4, 4, 1, 0]);
    }
}
