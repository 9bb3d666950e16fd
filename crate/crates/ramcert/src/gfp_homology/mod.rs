//! Exact cochain algebra: signed incidence of product cells, sparse
//! rank over GF(p), and reduced Betti numbers of truncated skeletons.
//!
//! Coefficients live in a prime field, so cohomology dimensions reduce
//! to ranks: β̃^i = c_i − rank δ^i − rank δ^{i−1} on the augmented
//! complex (c_{−1} = 1, δ^{−1} the all-ones map into vertices). Over a
//! field rank ∂_{i+1} = rank δ^i, so the incidence matrices are used
//! directly. β̃^{−1} = 1 exactly when the complex is empty.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytopal::skeleton::SkeletonComplex;
use crate::polytopal::ProductCell;

/// Signed boundary matrix of one dimension: columns are d-cells, rows
/// are (d−1)-cells, entries ±1 from the Leibniz sign convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMatrix {
    pub rows: usize,
    pub cols: usize,
    /// per column: sorted (row, sign) pairs, sign ∈ {+1, −1}
    pub by_col: Vec<Vec<(u32, i8)>>,
}

impl SignedMatrix {
    /// Reduce the signs into GF(p) entries.
    pub fn to_gfp(&self, p: u64) -> SparseMatrixGFp {
        let mut entries = Vec::new();
        for (c, col) in self.by_col.iter().enumerate() {
            for &(r, s) in col {
                let v = if s > 0 { 1 } else { p - 1 };
                entries.push((r, c as u32, v));
            }
        }
        SparseMatrixGFp {
            rows: self.rows,
            cols: self.cols,
            p,
            entries,
        }
    }

    pub fn nnz(&self) -> usize {
        self.by_col.iter().map(Vec::len).sum()
    }
}

/// The signed boundary of one product cell: for each part with at least
/// two vertices, remove each vertex in turn. The sign of removing the
/// t-th smallest vertex of part i is (−1)^{dim ν(0)+…+dim ν(i−1)} ·
/// (−1)^t, the Leibniz rule for a tensor product of simplex chains.
pub fn cell_boundary(nu: &ProductCell) -> Vec<(ProductCell, i8)> {
    let mut out = Vec::new();
    let mut prefix = 0usize;
    for (i, part) in nu.parts.iter().enumerate() {
        let size = part.len();
        if size >= 2 {
            for t in 0..size {
                let (_, rest) = part.remove_nth(t);
                let mut parts = nu.parts.clone();
                parts[i] = rest;
                let sign = if (prefix + t).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                out.push((ProductCell { parts }, sign));
            }
        }
        prefix += size - 1;
    }
    out
}

/// Boundary matrices ∂_1 … ∂_top of a skeleton. Index d−1 holds ∂_d,
/// mapping d-cells to (d−1)-cells. Every face produced by a cell must
/// already be enumerated (missing faces are an enumeration bug), and
/// ∂_{d−1} ∘ ∂_d = 0 is verified over the integers before returning.
pub fn incidence_matrices(skeleton: &SkeletonComplex) -> Result<Vec<SignedMatrix>> {
    let mut boundaries = Vec::with_capacity(skeleton.top_dim());
    for d in 1..=skeleton.top_dim() {
        let lower = skeleton.cells(d - 1);
        let index: HashMap<&ProductCell, u32> = lower
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i as u32))
            .collect();
        let by_col: Vec<Vec<(u32, i8)>> = skeleton
            .cells(d)
            .par_iter()
            .map(|cell| {
                let mut col = Vec::new();
                for (face, sign) in cell_boundary(cell) {
                    let row = *index.get(&face).ok_or_else(|| {
                        Error::Structural(format!(
                            "face {face:?} of {cell:?} missing from dimension {}",
                            d - 1
                        ))
                    })?;
                    col.push((row, sign));
                }
                col.sort_unstable();
                Ok(col)
            })
            .collect::<Result<_>>()?;
        boundaries.push(SignedMatrix {
            rows: lower.len(),
            cols: skeleton.cells(d).len(),
            by_col,
        });
    }

    // ∂∂ = 0, termwise over the integers
    for d in 1..boundaries.len() {
        let (lower, upper) = (&boundaries[d - 1], &boundaries[d]);
        let bad = upper
            .by_col
            .par_iter()
            .enumerate()
            .find_map_any(|(c, col)| {
                let mut acc: HashMap<u32, i32> = HashMap::new();
                for &(mid, s1) in col {
                    for &(bottom, s0) in &lower.by_col[mid as usize] {
                        *acc.entry(bottom).or_insert(0) += i32::from(s1) * i32::from(s0);
                    }
                }
                acc.values().any(|&v| v != 0).then_some(c)
            });
        if let Some(c) = bad {
            return Err(Error::Structural(format!(
                "∂∂ ≠ 0 at dimension {}, column {c}",
                d + 1
            )));
        }
    }
    Ok(boundaries)
}

/// A sparse matrix over the field with p elements, in coordinate form.
#[derive(Clone, Debug)]
pub struct SparseMatrixGFp {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    /// (row, col, value) with 0 < value < p; no duplicate coordinates
    pub entries: Vec<(u32, u32, u64)>,
}

pub fn is_prime(p: u64) -> bool {
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

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mod_inv(v: u64, p: u64) -> u64 {
    mod_pow(v, p - 2, p)
}

/// Exact rank over GF(p) by sparse Gaussian elimination.
///
/// Pivoting is Markowitz-flavored: always eliminate the column with the
/// fewest live entries, using the sparsest row holding it. Fully
/// deterministic: ties break toward lower indices and nothing depends
/// on worker count.
pub fn rank_mod_p(matrix: &SparseMatrixGFp) -> Result<usize> {
    let p = matrix.p;
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); matrix.rows];
    for &(r, c, v) in &matrix.entries {
        if (r as usize) >= matrix.rows || (c as usize) >= matrix.cols {
            return Err(Error::InvalidInput(format!(
                "entry ({r},{c}) outside a {}x{} matrix",
                matrix.rows, matrix.cols
            )));
        }
        if v == 0 || v >= p {
            return Err(Error::InvalidInput(format!(
                "entry value {v} not in 1..{p}"
            )));
        }
        rows[r as usize].push((c, v));
    }
    for (r, row) in rows.iter_mut().enumerate() {
        row.sort_unstable_by_key(|&(c, _)| c);
        if row.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput(format!(
                "duplicate coordinate in row {r}"
            )));
        }
    }

    // column occupancy: exact live counts plus lazily-cleaned row lists
    let mut col_count: Vec<u32> = vec![0; matrix.cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); matrix.cols];
    for (ri, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(ri as u32);
        }
    }
    let mut queue: BTreeSet<(u32, u32)> = col_count
        .iter()
        .enumerate()
        .filter(|&(_, &n)| n > 0)
        .map(|(c, &n)| (n, c as u32))
        .collect();
    let mut alive: Vec<bool> = vec![true; matrix.rows];

    let row_has = |row: &[(u32, u64)], c: u32| row.binary_search_by_key(&c, |&(cc, _)| cc).is_ok();

    // adjust one column's live count, keeping the pivot queue in step
    fn bump(queue: &mut BTreeSet<(u32, u32)>, col_count: &mut [u32], c: u32, delta: i32) {
        let n = &mut col_count[c as usize];
        if *n > 0 {
            queue.remove(&(*n, c));
        }
        *n = n.checked_add_signed(delta).expect("column count underflow");
        if *n > 0 {
            queue.insert((*n, c));
        }
    }

    // row_target -= factor * row_pivot (mod p), returning the merged row
    let subtract = |target: &[(u32, u64)], pivot: &[(u32, u64)], factor: u64| -> Vec<(u32, u64)> {
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < target.len() || b < pivot.len() {
            let ca = target.get(a).map(|&(c, _)| c);
            let cb = pivot.get(b).map(|&(c, _)| c);
            match (ca, cb) {
                (Some(x), Some(y)) if x == y => {
                    let v = (target[a].1 + (p - factor) * pivot[b].1) % p;
                    if v != 0 {
                        out.push((x, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(target[a]);
                    a += 1;
                }
                (Some(_), Some(_)) | (None, Some(_)) => {
                    let v = (p - factor) * pivot[b].1 % p;
                    if v != 0 {
                        out.push((pivot[b].0, v));
                    }
                    b += 1;
                }
                (Some(_), None) => {
                    out.push(target[a]);
                    a += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    };

    let mut rank = 0usize;
    while let Some(&(_, pivot_col)) = queue.iter().next() {
        // live rows currently holding the pivot column
        let mut holders: Vec<u32> = Vec::new();
        let mut seen_holder: BTreeSet<u32> = BTreeSet::new();
        for &ri in &col_rows[pivot_col as usize] {
            if alive[ri as usize]
                && row_has(&rows[ri as usize], pivot_col)
                && seen_holder.insert(ri)
            {
                holders.push(ri);
            }
        }
        col_rows[pivot_col as usize].clear();
        debug_assert_eq!(holders.len() as u32, col_count[pivot_col as usize]);

        let &pivot_row_idx = holders
            .iter()
            .min_by_key(|&&ri| (rows[ri as usize].len(), ri))
            .expect("queued column has at least one live row");
        let pivot_row = std::mem::take(&mut rows[pivot_row_idx as usize]);
        alive[pivot_row_idx as usize] = false;
        let pivot_val = pivot_row[pivot_row
            .binary_search_by_key(&pivot_col, |&(c, _)| c)
            .expect("pivot row holds pivot column")]
        .1;
        let pivot_inv = mod_inv(pivot_val, p);

        // retire the pivot row from all column counts
        for &(c, _) in &pivot_row {
            bump(&mut queue, &mut col_count, c, -1);
        }

        for &ri in &holders {
            if ri == pivot_row_idx {
                continue;
            }
            let target = std::mem::take(&mut rows[ri as usize]);
            let tv = target[target
                .binary_search_by_key(&pivot_col, |&(c, _)| c)
                .expect("holder row holds pivot column")]
            .1;
            let factor = tv * pivot_inv % p;
            let merged = subtract(&target, &pivot_row, factor);
            // account for column membership changes
            let (mut a, mut b) = (0usize, 0usize);
            while a < target.len() || b < merged.len() {
                let ca = target.get(a).map(|&(c, _)| c);
                let cb = merged.get(b).map(|&(c, _)| c);
                let lost = match (ca, cb) {
                    (Some(x), Some(y)) if x == y => {
                        a += 1;
                        b += 1;
                        continue;
                    }
                    (Some(x), Some(y)) => x < y,
                    (Some(_), None) => true,
                    (None, _) => false,
                };
                if lost {
                    bump(&mut queue, &mut col_count, ca.unwrap(), -1);
                    a += 1;
                } else {
                    let y = cb.unwrap();
                    bump(&mut queue, &mut col_count, y, 1);
                    col_rows[y as usize].push(ri);
                    b += 1;
                }
            }
            rows[ri as usize] = merged;
        }
        rank += 1;
    }
    Ok(rank)
}

/// Reduced Betti numbers over GF(p), degrees −1 through the truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub p: u64,
    pub betti: BTreeMap<i64, u64>,
    pub truncation: i64,
}

impl BettiTable {
    pub fn get(&self, degree: i64) -> u64 {
        self.betti.get(&degree).copied().unwrap_or(0)
    }

    /// Do all computed degrees up to and including `degree` vanish?
    pub fn vanishes_through(&self, degree: i64) -> bool {
        self.betti.iter().all(|(&d, &b)| d > degree || b == 0)
    }

    /// First computed degree with a nonzero value, if any.
    pub fn first_nonzero(&self) -> Option<(i64, u64)> {
        self.betti
            .iter()
            .find(|&(_, &b)| b > 0)
            .map(|(&d, &b)| (d, b))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("betti serialization cannot fail")
    }
}

/// One cohomology computation: the Betti table plus the coboundary
/// ranks that produced it (reported as elimination statistics).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRun {
    pub table: BettiTable,
    /// rank of δ^i for each degree used, keyed by i
    pub ranks: BTreeMap<i64, u64>,
}

/// Reduced Betti numbers β̃^i over Z_p for −1 ≤ i ≤ up_to.
///
/// Needs the skeleton to reach dimension up_to+1, unless some earlier
/// dimension already has no cells (then all deeper ones are empty and
/// the truncation is immaterial). Degrees above `up_to` are not
/// reported, so a truncated skeleton never misrepresents deeper
/// cohomology.
pub fn reduced_betti(skeleton: &SkeletonComplex, p: u64, up_to: i64) -> Result<BettiTable> {
    Ok(reduced_betti_run(skeleton, p, up_to)?.table)
}

pub fn reduced_betti_run(skeleton: &SkeletonComplex, p: u64, up_to: i64) -> Result<CohomologyRun> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if up_to < -1 {
        return Err(Error::InvalidInput("degree bound below -1".into()));
    }
    let required = (up_to + 1).max(0) as usize;
    if skeleton.top_dim() < required && !skeleton.exhausted_within_truncation() {
        return Err(Error::InsufficientDepth {
            degree: up_to,
            required,
            available: skeleton.top_dim(),
        });
    }
    let dims = skeleton.dims();
    let cells = |i: i64| -> u64 {
        if i == -1 {
            1
        } else {
            dims.get(i as usize).copied().unwrap_or(0) as u64
        }
    };
    let boundaries = incidence_matrices(skeleton)?;

    // rank of δ^i = rank of ∂_{i+1}; beyond the stored dimensions the
    // complex is exhausted, so the maps are zero
    let degrees: Vec<i64> = (-1..=up_to).collect();
    let ranks: BTreeMap<i64, u64> = degrees
        .par_iter()
        .map(|&i| {
            let r = if i == -1 {
                Ok(u64::from(cells(0) > 0))
            } else {
                match boundaries.get(i as usize) {
                    Some(b) if b.cols > 0 && b.rows > 0 => {
                        rank_mod_p(&b.to_gfp(p)).map(|r| r as u64)
                    }
                    _ => Ok(0),
                }
            };
            r.map(|r| (i, r))
        })
        .collect::<Result<_>>()?;

    let mut betti = BTreeMap::new();
    for i in -1..=up_to {
        let r_here = ranks.get(&i).copied().unwrap_or(0);
        let r_below = if i == -1 {
            0
        } else {
            ranks.get(&(i - 1)).copied().unwrap_or(0)
        };
        let c = cells(i);
        let b = c
            .checked_sub(r_here)
            .and_then(|x| x.checked_sub(r_below))
            .ok_or_else(|| {
                Error::Structural(format!(
                    "negative Betti number at degree {i}: c={c}, ranks {r_here}/{r_below}"
                ))
            })?;
        betti.insert(i, b);
    }
    Ok(CohomologyRun {
        table: BettiTable {
            p,
            betti,
            truncation: up_to,
        },
        ranks,
    })
}
