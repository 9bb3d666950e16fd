//! Finite simplicial complexes and the named builders used throughout.
//!
//! A complex stores its ground set size and the family of maximal faces
//! (facets) as a canonical antichain. Faces are the downward closure of
//! the facets; the empty set is a face of every complex with a nonempty
//! ground set. The complex with no vertices has no faces at all.

pub mod graph;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use graph::{complete_edge_count, Graph};

/// Work cap for the maximal-face search in [`g_free_edge_complex`];
/// the builder refuses instances beyond desk scale instead of running away.
const EDGE_COMPLEX_VISIT_CAP: u64 = 1 << 22;

/// An abstract simplicial complex on the dense ground set `0..vertex_count`.
///
/// Immutable after construction. The facet family is normalized to a
/// sorted antichain, so structural equality is face-for-face equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Build from an arbitrary family of faces: duplicates and faces
    /// contained in another are dropped. With a nonempty ground set the
    /// empty face is always present, so an empty family normalizes to
    /// the single facet ∅.
    pub fn new<I, F>(vertex_count: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: Into<VertexSet>,
    {
        let mut family: Vec<VertexSet> = Vec::new();
        for f in faces {
            let f: VertexSet = f.into();
            if let Some(max) = f.max_element() {
                if max >= vertex_count {
                    return Err(Error::InvalidInput(format!(
                        "facet {:?} out of range for {} vertices",
                        f, vertex_count
                    )));
                }
            }
            family.push(f);
        }
        if vertex_count == 0 {
            return Ok(Self {
                vertex_count: 0,
                facets: Vec::new(),
            });
        }
        family.sort();
        family.dedup();
        let mut facets: Vec<VertexSet> = family
            .iter()
            .filter(|f| !family.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
            .cloned()
            .collect();
        if facets.is_empty() {
            facets.push(VertexSet::new());
        }
        Ok(Self {
            vertex_count,
            facets,
        })
    }

    /// The complex with no vertices and no faces.
    pub fn void() -> Self {
        Self {
            vertex_count: 0,
            facets: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Maximal faces, sorted, forming an antichain.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension of the complex: largest facet size minus one.
    /// `None` for the void complex, and for the complex whose only face is ∅.
    pub fn dim(&self) -> Option<isize> {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .filter(|&d| d >= 0)
    }

    /// Is `s` a face, i.e. contained in some facet? The empty set is a
    /// face exactly when the ground set is nonempty. Errors if `s` is
    /// not a subset of the ground set.
    pub fn is_face(&self, s: &VertexSet) -> Result<bool> {
        if let Some(max) = s.max_element() {
            if max >= self.vertex_count {
                return Err(Error::InvalidInput(format!(
                    "set {:?} is not a subset of the {}-vertex ground set",
                    s, self.vertex_count
                )));
            }
        }
        Ok(self.facets.iter().any(|f| s.is_subset(f)))
    }

    /// All faces (downward closure of the facets) including ∅.
    /// Exponential in facet size; intended for desk-scale checks.
    pub fn faces(&self) -> BTreeSet<VertexSet> {
        let mut out: BTreeSet<VertexSet> = BTreeSet::new();
        let mut stack: Vec<VertexSet> = self.facets.clone();
        while let Some(f) = stack.pop() {
            if out.contains(&f) {
                continue;
            }
            for v in f.iter() {
                let mut sub = f.clone();
                sub.remove(v);
                if !out.contains(&sub) {
                    stack.push(sub);
                }
            }
            out.insert(f);
        }
        out
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexJson {
            vertices: self.vertex_count,
            facets: self.facets.iter().map(|f| f.to_vec()).collect(),
        })
        .expect("complex serialization cannot fail")
    }

    /// Parse the complex JSON format: a vertex count and a facet
    /// family over `0..vertices`, normalized on load.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: "<complex>".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::new(
            raw.vertices,
            raw.facets.into_iter().map(VertexSet::from_iter),
        )
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::from_iter(v)
    }
}

/// The full simplex on `m` vertices: every subset of `0..m` is a face.
pub fn simplex_complex(m: usize) -> Result<SimplicialComplex> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "simplex needs at least one vertex".into(),
        ));
    }
    SimplicialComplex::new(m, [VertexSet::full(m)])
}

/// The boundary of the simplex on `m` vertices: all proper subsets of
/// `0..m`. For `m = 1` this is the void complex (the boundary of a point
/// has no vertices at all).
pub fn boundary_simplex(m: usize) -> Result<SimplicialComplex> {
    if m == 0 {
        return Err(Error::InvalidInput("boundary simplex needs m >= 1".into()));
    }
    if m == 1 {
        return Ok(SimplicialComplex::void());
    }
    let facets = (0..m).map(|skip| {
        let mut f = VertexSet::full(m);
        f.remove(skip);
        f
    });
    SimplicialComplex::new(m, facets)
}

/// `n` disjoint vertices: the facets are the singletons.
pub fn discrete_complex(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::InvalidInput("discrete complex needs n >= 1".into()));
    }
    SimplicialComplex::new(n, (0..n).map(VertexSet::singleton))
}

/// The independence complex of a graph: faces are the independent vertex
/// sets, so the facets are the maximal independent sets. Supported for
/// graphs on at most 64 vertices.
pub fn independence_complex(g: &Graph) -> Result<SimplicialComplex> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(SimplicialComplex::void());
    }
    let adj = g.adjacency_masks()?;
    // Maximal independent sets of g = maximal cliques of the complement.
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let co_adj: Vec<u64> = (0..n).map(|v| all & !adj[v] & !(1 << v)).collect();
    let mut maximal: Vec<u64> = Vec::new();
    bron_kerbosch(&co_adj, 0, all, 0, &mut maximal);
    let facets = maximal
        .into_iter()
        .map(|mask| VertexSet::from_iter(MaskBits(mask)));
    SimplicialComplex::new(n, facets)
}

struct MaskBits(u64);
impl Iterator for MaskBits {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let t = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(t)
        }
    }
}

/// Bron–Kerbosch with pivoting over adjacency masks.
fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot_pool = p | x;
    let pivot = MaskBits(pivot_pool)
        .max_by_key(|&v| (p & adj[v]).count_ones())
        .expect("pivot pool nonempty");
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        candidates &= candidates - 1;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// The complex on the edges of K_N whose faces are the edge sets spanning
/// no subgraph isomorphic to `g`. Vertices are edge indices under the
/// canonical lexicographic contract of [`graph::edge_index`].
pub fn g_free_edge_complex(g: &Graph, n: usize) -> Result<SimplicialComplex> {
    if g.edge_count() == 0 {
        return Err(Error::InvalidInput(
            "pattern graph must have at least one edge".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidInput("edge complex needs N >= 2".into()));
    }
    let num_edges = complete_edge_count(n);
    if num_edges > 64 {
        return Err(Error::CapExceeded {
            what: "edges of K_N in edge complex",
            requested: num_edges as u64,
            cap: 64,
        });
    }
    let copies = graph::enumerate_copies(g, n)?;
    // Per-edge index of which copies use that edge, for the maximality check.
    let copies_at: Vec<Vec<u64>> = (0..num_edges)
        .map(|e| {
            copies
                .iter()
                .copied()
                .filter(|c| c & (1 << e) != 0)
                .collect()
        })
        .collect();

    let mut facets: Vec<VertexSet> = Vec::new();
    let mut visits: u64 = 0;
    // Depth-first over edge slots; a branch includes the slot only while
    // the running set stays g-free, so the tree visits exactly the faces.
    let mut stack: Vec<(usize, u64)> = vec![(0, 0)];
    while let Some((slot, mask)) = stack.pop() {
        visits += 1;
        if visits > EDGE_COMPLEX_VISIT_CAP {
            return Err(Error::CapExceeded {
                what: "g-free edge complex search",
                requested: visits,
                cap: EDGE_COMPLEX_VISIT_CAP,
            });
        }
        if slot == num_edges {
            let maximal = (0..num_edges).all(|e| {
                mask & (1 << e) != 0 || copies_at[e].iter().any(|c| c & !(mask | (1 << e)) == 0)
            });
            if maximal {
                facets.push(VertexSet::from_iter(MaskBits(mask)));
            }
            continue;
        }
        let with = mask | (1 << slot);
        if !copies_at[slot].iter().any(|c| c & !with == 0) {
            stack.push((slot + 1, with));
        }
        stack.push((slot + 1, mask));
    }
    SimplicialComplex::new(num_edges, facets)
}
