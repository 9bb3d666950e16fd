//! Runtime invariant suites and the fixed regression family.
//!
//! These checks re-verify, on demand, the structural facts every
//! certificate silently relies on: boundary-squared vanishing, builder
//! agreement, diagonal avoidance, freeness of the translation actions,
//! and the facet shortcut inside the cell test. The CLI `selfcheck`
//! command runs them all; a green run is the prerequisite for trusting
//! any certification output from the same build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::complexes::graph::Graph;
use crate::complexes::{
    boundary_simplex, discrete_complex, g_free_edge_complex, independence_complex, simplex_complex,
    SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::gfp_homology::incidence_matrices;
use crate::polytopal::action::elementary_abelian_action;
use crate::polytopal::realize::cell_meets_diagonal;
use crate::polytopal::skeleton::{
    enumerate_skeleton, has_invariant_cell, hom_complex, part_complex, rainbow_complex, Budget,
};
use crate::polytopal::{cell_in_induced_brute, ram_cell_test, ram_vertex_test, ProductCell};

pub const DEFAULT_SHORTCUT_TRIALS: usize = 500;

/// Outcome of one invariant suite.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckReport {
            name,
            passed: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckReport {
            name,
            passed: false,
            detail,
        }
    }
}

/// The fixed family of small named complexes used across the invariant
/// suites and the soundness sweeps. Every ground vertex of every member
/// is itself a face (the certification precondition), and all members
/// have at most 6 vertices.
pub fn regression_family() -> Vec<(&'static str, SimplicialComplex)> {
    let two_facets = SimplicialComplex::new(
        5,
        vec![
            VertexSet::from_iter([0, 1, 2]),
            VertexSet::from_iter([3, 4]),
        ],
    )
    .expect("valid complex");
    vec![
        ("two-points", discrete_complex(2).expect("valid")),
        ("three-points", discrete_complex(3).expect("valid")),
        ("boundary-of-triangle", boundary_simplex(3).expect("valid")),
        (
            "boundary-of-tetrahedron",
            boundary_simplex(4).expect("valid"),
        ),
        ("full-triangle", simplex_complex(3).expect("valid")),
        (
            "independents-of-square",
            independence_complex(&Graph::cycle(4)).expect("valid"),
        ),
        (
            "independents-of-pentagon",
            independence_complex(&Graph::cycle(5)).expect("valid"),
        ),
        (
            "independents-of-k4",
            independence_complex(&Graph::complete(4)).expect("valid"),
        ),
        (
            "independents-of-path4",
            independence_complex(&Graph::path(4)).expect("valid"),
        ),
        (
            "triangle-free-edge-sets-k4",
            g_free_edge_complex(&Graph::complete(3), 4).expect("valid"),
        ),
        ("triangle-plus-edge", two_facets),
    ]
}

/// ∂∂ = 0 on a spread of skeletons: every member of the regression
/// family in a small Ram construction, plus seeded random complexes.
pub fn check_dd_zero(seed: u64) -> CheckReport {
    const NAME: &str = "boundary-squared-zero";
    let budget = Budget::default();
    let mut checked = 0usize;
    for (name, sigma) in regression_family() {
        let skel =
            match enumerate_skeleton(&boundary_simplex(2).expect("valid"), &sigma, 3, &budget) {
                Ok(s) => s,
                Err(e) => return CheckReport::fail(NAME, format!("{name}: build failed: {e}")),
            };
        if let Err(e) = incidence_matrices(&skel) {
            return CheckReport::fail(NAME, format!("{name}: {e}"));
        }
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..10 {
        let s1 = random_complex(&mut rng, 4);
        let s2 = random_complex(&mut rng, 4);
        if s1.vertex_count() == 0 {
            continue;
        }
        let skel = match enumerate_skeleton(&s1, &s2, 3, &budget) {
            Ok(s) => s,
            Err(e) => {
                return CheckReport::fail(NAME, format!("random #{trial}: build failed: {e}"))
            }
        };
        if let Err(e) = incidence_matrices(&skel) {
            return CheckReport::fail(NAME, format!("random #{trial}: {e}"));
        }
        checked += 1;
    }
    CheckReport::pass(
        NAME,
        format!("{checked} skeletons, all boundaries square to zero"),
    )
}

/// The three high-level builders agree cell-for-cell with the direct
/// Ram construction they are defined to equal.
pub fn check_builder_equivalences() -> CheckReport {
    const NAME: &str = "builder-equivalences";
    let budget = Budget::default();
    let mut checked = 0usize;

    let hom_cases = [
        (Graph::complete(2), Graph::complete(3)),
        (Graph::complete(2), Graph::cycle(5)),
    ];
    for (g1, g2) in &hom_cases {
        let direct = hom_complex(g1, g2, 3, &budget);
        let via_ram = independence_complex(g1).and_then(|s1| {
            independence_complex(g2).and_then(|s2| enumerate_skeleton(&s1, &s2, 3, &budget))
        });
        match (direct, via_ram) {
            (Ok(a), Ok(b)) if a == b => checked += 1,
            (a, b) => {
                return CheckReport::fail(
                    NAME,
                    format!("hom({g1:?},{g2:?}) disagreement: {a:?} vs {b:?}"),
                )
            }
        }
    }

    for (name, sigma) in regression_family().into_iter().take(6) {
        for n in 2..=3usize {
            let direct = part_complex(&sigma, n, 2, &budget);
            let via_ram =
                discrete_complex(n).and_then(|dn| enumerate_skeleton(&sigma, &dn, 2, &budget));
            match (direct, via_ram) {
                (Ok(a), Ok(b)) if a == b => checked += 1,
                (a, b) => {
                    return CheckReport::fail(
                        NAME,
                        format!("part({name},{n}) disagreement: {a:?} vs {b:?}"),
                    )
                }
            }
        }
    }

    // the one genuinely independent pair: rainbow complexes are built
    // straight from the definition, not through enumerate_skeleton
    let rainbow_cases = [
        (Graph::path(3), 3usize, 2usize),
        (Graph::path(3), 4, 3),
        (Graph::complete(3), 4, 2),
        (Graph::complete(3), 5, 3),
    ];
    for (g, big_n, m) in &rainbow_cases {
        let direct = rainbow_complex(g, *big_n, *m, 3, &budget);
        let via_ram = boundary_simplex(*m).and_then(|src| {
            g_free_edge_complex(g, *big_n)
                .and_then(|tgt| enumerate_skeleton(&src, &tgt, 3, &budget))
        });
        match (direct, via_ram) {
            (Ok(a), Ok(b)) if a == b => checked += 1,
            (a, b) => {
                return CheckReport::fail(
                    NAME,
                    format!("rainbow({g:?},{big_n},{m}) disagreement: {a:?} vs {b:?}"),
                )
            }
        }
    }
    CheckReport::pass(NAME, format!("{checked} builder pairs agree cell-for-cell"))
}

/// No cell of Ram(∂Δ_m, D_n) meets the diagonal, for m, n ≤ 4.
pub fn check_diagonal_avoidance() -> CheckReport {
    const NAME: &str = "diagonal-avoidance";
    let budget = Budget::default();
    let mut cells_checked = 0usize;
    for m in 2..=4usize {
        for n in 2..=4usize {
            let source = match boundary_simplex(m) {
                Ok(s) => s,
                Err(e) => return CheckReport::fail(NAME, format!("m={m}: {e}")),
            };
            let target = match discrete_complex(n) {
                Ok(s) => s,
                Err(e) => return CheckReport::fail(NAME, format!("n={n}: {e}")),
            };
            let max_dim = m * (n - 1) + 1;
            let skel = match enumerate_skeleton(&source, &target, max_dim, &budget) {
                Ok(s) => s,
                Err(e) => return CheckReport::fail(NAME, format!("m={m},n={n}: {e}")),
            };
            if !skel.exhausted_within_truncation() {
                return CheckReport::fail(NAME, format!("m={m},n={n}: skeleton not complete"));
            }
            for d in 0..=skel.top_dim() {
                for cell in skel.cells(d) {
                    cells_checked += 1;
                    if cell_meets_diagonal(cell) {
                        return CheckReport::fail(
                            NAME,
                            format!("m={m},n={n}: cell {cell:?} meets the diagonal"),
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass(NAME, format!("{cells_checked} cells avoid the diagonal"))
}

/// The coordinate-translation actions act freely on the cells of
/// Ram(∂Δ_m, Σ) for every Σ in the regression family, m ∈ {2,3,4}.
pub fn check_fixed_point_freeness() -> CheckReport {
    const NAME: &str = "fixed-point-freeness";
    let budget = Budget::default();
    let mut scanned = 0usize;
    for (name, sigma) in regression_family() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let m = p.pow(k) as usize;
            let source = match boundary_simplex(m) {
                Ok(s) => s,
                Err(e) => return CheckReport::fail(NAME, format!("m={m}: {e}")),
            };
            let skel = match enumerate_skeleton(&source, &sigma, 3, &budget) {
                Ok(s) => s,
                Err(e) => return CheckReport::fail(NAME, format!("{name},m={m}: {e}")),
            };
            let action = match elementary_abelian_action(p, k) {
                Ok(a) => a,
                Err(e) => return CheckReport::fail(NAME, format!("action {p}^{k}: {e}")),
            };
            match has_invariant_cell(&skel, &action) {
                Ok(false) => scanned += skel.total_cells(),
                Ok(true) => {
                    return CheckReport::fail(NAME, format!("{name},m={m}: invariant cell found"))
                }
                Err(e) => return CheckReport::fail(NAME, format!("{name},m={m}: {e}")),
            }
        }
    }
    CheckReport::pass(NAME, format!("{scanned} cells scanned, no invariant cell"))
}

/// The facet shortcut in `ram_cell_test` agrees with brute-force
/// selection enumeration on seeded random (ν, Σ1, Σ2) triples.
pub fn check_facet_shortcut(seed: u64, trials: usize) -> CheckReport {
    const NAME: &str = "facet-shortcut";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0usize;
    for trial in 0..trials {
        let s1 = random_complex(&mut rng, 5);
        let s2 = random_complex(&mut rng, 5);
        if s1.vertex_count() == 0 || s2.vertex_count() == 0 {
            continue;
        }
        let cell = random_cell(&mut rng, s1.vertex_count(), s2.vertex_count(), 3);
        let fast = ram_cell_test(&cell, &s1, &s2);
        let brute = cell_in_induced_brute(&cell, |eta| ram_vertex_test(eta, &s1, &s2));
        match (fast, brute) {
            (Ok(a), Ok(b)) if a == b => agreements += 1,
            (a, b) => {
                return CheckReport::fail(
                    NAME,
                    format!(
                        "trial {trial}: shortcut {a:?} vs brute {b:?} on {cell:?}, \
                         s1={s1:?}, s2={s2:?}"
                    ),
                )
            }
        }
    }
    CheckReport::pass(NAME, format!("{agreements} random triples agree"))
}

/// Run every suite; the result is deterministic for a fixed seed.
pub fn run_all(seed: u64, shortcut_trials: usize) -> Vec<CheckReport> {
    vec![
        check_dd_zero(seed),
        check_builder_equivalences(),
        check_diagonal_avoidance(),
        check_fixed_point_freeness(),
        check_facet_shortcut(seed, shortcut_trials),
    ]
}

/// All suites green, or the first failure as an error.
pub fn require_all(seed: u64, shortcut_trials: usize) -> Result<Vec<CheckReport>> {
    let reports = run_all(seed, shortcut_trials);
    if let Some(bad) = reports.iter().find(|r| !r.passed) {
        return Err(Error::Structural(format!(
            "selfcheck suite '{}' failed: {}",
            bad.name, bad.detail
        )));
    }
    Ok(reports)
}

/// A random complex on up to `max_vertices` vertices: a handful of
/// random facet candidates, normalized by the constructor.
pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    let v = rng.gen_range(1..=max_vertices);
    let facet_count = rng.gen_range(1..=4usize);
    let mut facets = Vec::with_capacity(facet_count);
    for _ in 0..facet_count {
        let mut f = VertexSet::new();
        for vertex in 0..v {
            if rng.gen_bool(0.5) {
                f.insert(vertex);
            }
        }
        facets.push(f);
    }
    SimplicialComplex::new(v, facets).expect("random facets are in range")
}

/// A random product cell with `arity` nonempty parts over a
/// `target_vertices`-point ground set, of dimension at most `max_dim`.
pub fn random_cell<R: Rng>(
    rng: &mut R,
    arity: usize,
    target_vertices: usize,
    max_dim: usize,
) -> ProductCell {
    let mut parts = Vec::with_capacity(arity);
    let mut extra_budget = max_dim;
    for _ in 0..arity {
        let mut part = VertexSet::new();
        part.insert(rng.gen_range(0..target_vertices));
        let extra = rng.gen_range(0..=extra_budget.min(target_vertices - 1));
        for _ in 0..extra {
            part.insert(rng.gen_range(0..target_vertices));
        }
        extra_budget -= part.len() - 1;
        parts.push(part);
    }
    ProductCell::new(parts).expect("parts are nonempty")
}
