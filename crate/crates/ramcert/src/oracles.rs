//! Brute-force ground truth at desk scale.
//!
//! Every certificate the library emits can be cross-examined against
//! these exhaustive searches on small instances. The oracles share no
//! code with the complex builders or the homology engine beyond basic
//! graph plumbing, and they refuse (rather than estimate) beyond their
//! caps — an oracle that guesses cannot anchor a test.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::complexes::graph::{
    complete_edge_count, edge_mask_adjacency, enumerate_copies, spanned_contains_subgraph, Graph,
};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};

/// Default vertex cap for the face-coloring search.
pub const FACE_COLORING_CAP: usize = 16;
/// Vertex cap for exact chromatic numbers.
pub const CHROMATIC_CAP: usize = 12;
/// Cap on the number of edge colorings the Ramsey oracle will scan
/// (after symmetry reduction).
pub const RAMSEY_COLORING_CAP: u64 = 1 << 26;

/// A face coloring found by [`exists_face_coloring`]: `assignment[v]`
/// is the color of vertex `v`, colors numbered 1..=n. Every color
/// fiber is a face of the target complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringWitness {
    pub assignment: Vec<usize>,
}

impl ColoringWitness {
    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        seen.extend(self.assignment.iter().copied());
        seen.len()
    }

    /// The fiber of each color 1..=n.
    pub fn fibers(&self, n: usize) -> Vec<VertexSet> {
        let mut fibers = vec![VertexSet::new(); n];
        for (v, &c) in self.assignment.iter().enumerate() {
            fibers[c - 1].insert(v);
        }
        fibers
    }
}

/// Search for an n-coloring of Σ's vertices in which every color fiber
/// (including empty ones) is a face of Σ. Exhaustive backtracking with
/// fiber-face pruning; color classes are interchangeable, so vertex v
/// only ever tries one color beyond those already in use. Deterministic:
/// the lexicographically least witness under that ordering is returned.
pub fn exists_face_coloring(
    sigma: &SimplicialComplex,
    n: usize,
) -> Result<Option<ColoringWitness>> {
    exists_face_coloring_capped(sigma, n, FACE_COLORING_CAP)
}

pub fn exists_face_coloring_capped(
    sigma: &SimplicialComplex,
    n: usize,
    cap: usize,
) -> Result<Option<ColoringWitness>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "coloring needs at least one color".into(),
        ));
    }
    let v = sigma.vertex_count();
    if v > cap {
        return Err(Error::CapExceeded {
            what: "face-coloring vertices",
            requested: v as u64,
            cap: cap as u64,
        });
    }
    // the empty fiber must be a face, which rules out the void complex
    if !sigma.is_face(&VertexSet::new())? {
        return Ok(None);
    }

    fn go(
        sigma: &SimplicialComplex,
        n: usize,
        v: usize,
        colors: &mut Vec<usize>,
        fibers: &mut Vec<VertexSet>,
        used: usize,
    ) -> Result<bool> {
        if v == sigma.vertex_count() {
            return Ok(true);
        }
        let limit = n.min(used + 1);
        for c in 0..limit {
            fibers[c].insert(v);
            if sigma.is_face(&fibers[c])? {
                colors.push(c + 1);
                if go(sigma, n, v + 1, colors, fibers, used.max(c + 1))? {
                    return Ok(true);
                }
                colors.pop();
            }
            fibers[c].remove(v);
        }
        Ok(false)
    }

    let mut colors = Vec::with_capacity(v);
    let mut fibers = vec![VertexSet::new(); n];
    if go(sigma, n, 0, &mut colors, &mut fibers, 0)? {
        Ok(Some(ColoringWitness { assignment: colors }))
    } else {
        Ok(None)
    }
}

/// Does the graph spanned by `h_edges` (an edge-index bitmask over
/// K_n's lexicographic edge order) contain a subgraph isomorphic to g?
pub fn contains_subgraph(h_edges: u64, n: usize, g: &Graph) -> Result<bool> {
    let e = complete_edge_count(n);
    if e > 64 {
        return Err(Error::CapExceeded {
            what: "edge-mask host vertices",
            requested: n as u64,
            cap: 11,
        });
    }
    if e < 64 && h_edges >> e != 0 {
        return Err(Error::InvalidInput(format!(
            "edge mask {h_edges:#x} has bits beyond the {e} edges of K_{n}"
        )));
    }
    Ok(spanned_contains_subgraph(
        &edge_mask_adjacency(h_edges, n),
        g,
    ))
}

/// Does every n-coloring of E(K_N) contain a monochromatic copy of g?
///
/// Exhaustive odometer over colorings. The only symmetry used is
/// fixing the first edge's color, sound for any g and n because colors
/// are interchangeable. Copies of g are precomputed as edge masks, so
/// the inner test is a subset check per copy per color.
pub fn brute_ramsey_holds(g: &Graph, n: usize, big_n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one color".into()));
    }
    if big_n == 0 {
        return Err(Error::InvalidInput("host K_N needs N >= 1".into()));
    }
    let e = complete_edge_count(big_n);
    if e > 64 {
        return Err(Error::CapExceeded {
            what: "ramsey host vertices",
            requested: big_n as u64,
            cap: 11,
        });
    }
    let mut scan_size = 1u128;
    for _ in 1..e.max(1) {
        scan_size = scan_size.saturating_mul(n as u128);
    }
    if scan_size > u128::from(RAMSEY_COLORING_CAP) {
        return Err(Error::CapExceeded {
            what: "ramsey colorings",
            requested: u64::MAX,
            cap: RAMSEY_COLORING_CAP,
        });
    }
    let copies = enumerate_copies(g, big_n)?;
    if copies.is_empty() {
        // K_N cannot host g at all, so no coloring contains a copy
        return Ok(false);
    }

    let mut coloring = vec![0usize; e];
    loop {
        let mut masks = vec![0u64; n];
        for (i, &c) in coloring.iter().enumerate() {
            masks[c] |= 1 << i;
        }
        let mono = masks
            .iter()
            .any(|&m| copies.iter().any(|&copy| copy & !m == 0));
        if !mono {
            return Ok(false);
        }
        // advance the odometer, keeping edge 0 fixed at color 0
        let mut i = e.saturating_sub(1);
        loop {
            if i == 0 {
                return Ok(true);
            }
            coloring[i] += 1;
            if coloring[i] < n {
                break;
            }
            coloring[i] = 0;
            i -= 1;
        }
    }
}

/// Exact chromatic number by incremental backtracking with color
/// symmetry reduction.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let v = g.vertex_count();
    if v > CHROMATIC_CAP {
        return Err(Error::CapExceeded {
            what: "chromatic-number vertices",
            requested: v as u64,
            cap: CHROMATIC_CAP as u64,
        });
    }
    if v == 0 {
        return Ok(0);
    }

    fn colorable(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>, used: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        let limit = k.min(used + 1);
        for c in 0..limit {
            if (0..v).all(|u| colors[u] != c || !g.has_edge(u, v)) {
                colors.push(c);
                if colorable(g, k, v + 1, colors, used.max(c + 1)) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }

    for k in 1..=v {
        let mut colors = Vec::with_capacity(v);
        if colorable(g, k, 0, &mut colors, 0) {
            return Ok(k);
        }
    }
    unreachable!("every graph on v vertices is v-colorable")
}
