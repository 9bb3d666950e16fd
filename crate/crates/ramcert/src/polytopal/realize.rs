//! Exact geometric realization of product vertices and the diagonal test.
//!
//! A vertex map into a target with `n` vertices realizes as an m×(n−1)
//! matrix of rationals: row i is the indicator of η(i) among the first
//! n−1 target vertices, and the last target vertex corresponds to the
//! all-zero row (its coordinate is implicit). Certificates never touch
//! these coordinates; they exist so the diagonal lemma can be checked
//! exactly in tests.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::polytopal::{ProductCell, VertexMap};

/// A point of the realized product, stored as the m×(n−1) matrix of
/// free coordinates. Entries are exact rationals in [0,1] with row sums
/// at most 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedPoint {
    pub coords: Vec<Vec<Ratio<i64>>>,
}

impl RealizedPoint {
    /// Row sums must stay within [0,1]; entries nonnegative.
    pub fn new(coords: Vec<Vec<Ratio<i64>>>) -> Result<Self> {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        for row in &coords {
            if row.iter().any(|x| *x < zero) {
                return Err(Error::InvalidInput(
                    "negative barycentric coordinate".into(),
                ));
            }
            let sum: Ratio<i64> = row.iter().sum();
            if sum > one {
                return Err(Error::InvalidInput("row sum exceeds 1".into()));
            }
        }
        Ok(Self { coords })
    }

    /// Are all rows equal, i.e. does the point lie on the diagonal?
    pub fn on_diagonal(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] == w[1])
    }
}

/// Indicator realization of a vertex map into a target with `n` vertices:
/// x_ij = 1 if η(i) = j for j among the first n−1 vertices, else 0.
/// Mapping to the last vertex gives an all-zero row.
pub fn realize_vertex(eta: &VertexMap, n: usize) -> Result<RealizedPoint> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "target needs at least one vertex".into(),
        ));
    }
    let mut coords = Vec::with_capacity(eta.arity());
    for &v in &eta.values {
        if v >= n {
            return Err(Error::InvalidInput(format!(
                "target vertex {v} out of range ({n} vertices)"
            )));
        }
        let mut row = vec![Ratio::from_integer(0); n - 1];
        if v < n - 1 {
            row[v] = Ratio::from_integer(1);
        }
        coords.push(row);
    }
    RealizedPoint::new(coords)
}

/// Barycenter of a cell: each row spreads mass 1/|part| over the part.
pub fn realize_barycenter(nu: &ProductCell, n: usize) -> Result<RealizedPoint> {
    let mut coords = Vec::with_capacity(nu.arity());
    for part in &nu.parts {
        let size = part.len() as i64;
        if size == 0 {
            return Err(Error::InvalidInput(
                "product cell with an empty part".into(),
            ));
        }
        let mut row = vec![Ratio::from_integer(0); n - 1];
        for v in part.iter() {
            if v >= n {
                return Err(Error::InvalidInput(format!(
                    "target vertex {v} out of range ({n} vertices)"
                )));
            }
            if v < n - 1 {
                row[v] = Ratio::new(1, size);
            }
        }
        coords.push(row);
    }
    RealizedPoint::new(coords)
}

/// Does the closed cell meet the diagonal (all coordinate rows equal)?
/// Combinatorial form: true iff the parts have a common element. A
/// common target vertex j gives the equal-rows point concentrated along
/// j; conversely an equal-rows point must put positive mass on some
/// target vertex in every part (the implicit last coordinate covers the
/// all-zero row), forcing a common element.
pub fn cell_meets_diagonal(nu: &ProductCell) -> bool {
    let mut iter = nu.parts.iter();
    let Some(first) = iter.next() else {
        return true;
    };
    let mut common = first.clone();
    for part in iter {
        common = common.intersection(part);
        if common.is_empty() {
            return false;
        }
    }
    true
}
