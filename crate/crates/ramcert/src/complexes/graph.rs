//! Simple undirected graphs and the canonical edge indexing of K_N.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..vertex_count`.
///
/// Edges are stored as ordered pairs `(u, v)` with `u < v`; construction
/// rejects self-loops, duplicates, and out-of-range endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(rename = "vertices")]
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if v >= vertex_count {
                return Err(Error::InvalidInput(format!(
                    "edge ({a},{b}) out of range for {vertex_count} vertices"
                )));
            }
            if !set.insert((u, v)) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(Self {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            vertex_count: n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        Self {
            vertex_count: n,
            edges,
        }
    }

    /// Cycle 0-1-...-(n-1)-0. Requires n >= 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        Self::new(n, edges).unwrap()
    }

    /// Path 0-1-...-(n-1) with n-1 edges.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i));
        Self::new(n, edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as ordered pairs (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Adjacency rows as bit masks; only valid for graphs on <= 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.vertex_count > 64 {
            return Err(Error::CapExceeded {
                what: "adjacency mask vertex count",
                requested: self.vertex_count as u64,
                cap: 64,
            });
        }
        let mut adj = vec![0u64; self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(adj)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.vertex_count,
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: "<graph>".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::new(raw.n, raw.edges)
    }
}

/// Number of edges of K_N.
pub fn complete_edge_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Canonical index of the edge {u, v} of K_N: lexicographic over pairs
/// (u, v) with u < v, 0-based. This indexing is the shared contract for
/// every structure whose vertices are edges of K_N.
pub fn edge_index(u: usize, v: usize, n: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    debug_assert!(v < n && u != v);
    // edges (0,*),(1,*),...,(u-1,*) precede the block of (u,*)
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Inverse of [`edge_index`].
pub fn index_to_edge(mut idx: usize, n: usize) -> (usize, usize) {
    for u in 0..n {
        let block = n - u - 1;
        if idx < block {
            return (u, u + 1 + idx);
        }
        idx -= block;
    }
    panic!("edge index out of range for K_{n}");
}

/// Does the graph spanned by `host` contain a subgraph isomorphic to
/// `pattern`? Containment is as a plain (not induced, not labeled)
/// subgraph. Backtracking embedding with degree pruning.
///
/// `host` is given by adjacency bit masks as produced by
/// [`Graph::adjacency_masks`].
pub fn spanned_contains_subgraph(host: &[u64], pattern: &Graph) -> bool {
    let pn = pattern.vertex_count;
    if pn == 0 {
        return true;
    }
    if pn > host.len() {
        return false;
    }
    let pat_adj: Vec<Vec<usize>> = {
        let mut a = vec![Vec::new(); pn];
        for &(u, v) in pattern.edges() {
            a[u].push(v);
            a[v].push(u);
        }
        a
    };
    // Assign high-degree pattern vertices first; they fail fastest.
    let mut order: Vec<usize> = (0..pn).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pat_adj[v].len()));
    let host_deg: Vec<usize> = host.iter().map(|m| m.count_ones() as usize).collect();

    fn rec(
        step: usize,
        order: &[usize],
        pat_adj: &[Vec<usize>],
        host: &[u64],
        host_deg: &[usize],
        assign: &mut [Option<usize>],
        used: &mut u64,
    ) -> bool {
        if step == order.len() {
            return true;
        }
        let pv = order[step];
        for hv in 0..host.len() {
            if *used & (1 << hv) != 0 || host_deg[hv] < pat_adj[pv].len() {
                continue;
            }
            // every already-mapped pattern neighbour must be a host neighbour
            let ok = pat_adj[pv].iter().all(|&pu| match assign[pu] {
                Some(hu) => host[hv] & (1 << hu) != 0,
                None => true,
            });
            if !ok {
                continue;
            }
            assign[pv] = Some(hv);
            *used |= 1 << hv;
            if rec(step + 1, order, pat_adj, host, host_deg, assign, used) {
                return true;
            }
            assign[pv] = None;
            *used &= !(1 << hv);
        }
        false
    }

    let mut assign = vec![None; pn];
    let mut used = 0u64;
    rec(0, &order, &pat_adj, host, &host_deg, &mut assign, &mut used)
}

/// Adjacency masks of the graph on `0..n` spanned by the edges of K_n
/// whose canonical indices are the set bits of `edge_mask`.
pub fn edge_mask_adjacency(edge_mask: u64, n: usize) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    let mut bits = edge_mask;
    while bits != 0 {
        let idx = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (u, v) = index_to_edge(idx, n);
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// All copies of `pattern` inside K_n, each given as the edge mask (over
/// canonical edge indices) of the copy's edge set. Distinct injections
/// with the same edge image are reported once. A host edge set contains
/// a subgraph isomorphic to `pattern` exactly when it contains one of
/// these masks. Requires K_n to have at most 64 edges.
pub fn enumerate_copies(pattern: &Graph, n: usize) -> Result<Vec<u64>> {
    let num_edges = complete_edge_count(n);
    if num_edges > 64 {
        return Err(Error::CapExceeded {
            what: "edges of K_N in copy enumeration",
            requested: num_edges as u64,
            cap: 64,
        });
    }
    let pn = pattern.vertex_count;
    let mut out: std::collections::BTreeSet<u64> = std::collections::BTreeSet::new();
    if pn > n {
        return Ok(Vec::new());
    }
    let pat_adj: Vec<Vec<usize>> = {
        let mut a = vec![Vec::new(); pn];
        for &(u, v) in pattern.edges() {
            a[u].push(v);
            a[v].push(u);
        }
        a
    };

    // backtracking state is clearest spelled out, not packed in a struct
    #[allow(clippy::too_many_arguments)]
    fn rec(
        pv: usize,
        pn: usize,
        n: usize,
        pat_adj: &[Vec<usize>],
        assign: &mut Vec<usize>,
        used: &mut u64,
        mask: u64,
        out: &mut std::collections::BTreeSet<u64>,
    ) {
        if pv == pn {
            out.insert(mask);
            return;
        }
        for hv in 0..n {
            if *used & (1 << hv) != 0 {
                continue;
            }
            let mut next_mask = mask;
            for &pu in &pat_adj[pv] {
                if pu < pv {
                    let hu = assign[pu];
                    next_mask |= 1 << edge_index(hu.min(hv), hu.max(hv), n);
                }
            }
            assign.push(hv);
            *used |= 1 << hv;
            rec(pv + 1, pn, n, pat_adj, assign, used, next_mask, out);
            assign.pop();
            *used &= !(1 << hv);
        }
    }

    let mut assign = Vec::with_capacity(pn);
    let mut used = 0u64;
    rec(0, pn, n, &pat_adj, &mut assign, &mut used, 0, &mut out);
    Ok(out.into_iter().collect())
}
