//! The pointwise order on fuzzy filters, exhaustive enumeration with
//! monotone pruning, maximal elements, the residuation characterization of
//! ultrafilters, chain joins, and image filters.

use crate::filter::{FilterViolation, FuzzyFilter, TheoremFailure, WitnessFn};
use crate::ground::{GroundError, GroundSet};
use crate::lattice::{LatticeError, Residuum};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UltraError {
    #[error("structures live on different grounds")]
    GroundMismatch,
    #[error("the filter family is empty")]
    EmptyFamily,
    #[error("filters at positions {i} and {j} are incomparable, not a chain")]
    NotAChain { i: usize, j: usize },
    #[error("search budget exceeded after {visited} nodes (raw space ≈ {space:.3e} tables)")]
    BudgetExceeded { visited: u64, space: f64 },
    #[error("lattice is not residuated: {0}")]
    NotResiduated(LatticeError),
    #[error("claimed property failed: {0}")]
    TheoremViolation(Box<TheoremFailure>),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// Pointwise comparison of two filters over the canonical enumeration.
pub fn filter_leq(f1: &FuzzyFilter, f2: &FuzzyFilter) -> Result<bool, UltraError> {
    if f1.ground() != f2.ground() {
        return Err(UltraError::GroundMismatch);
    }
    let l = f1.ground().lattice();
    Ok(f1
        .table()
        .iter()
        .zip(f2.table())
        .all(|(&a, &b)| l.leq(a, b)))
}

/// First function index where `f1 ≼ f2` fails, if any.
pub fn filter_leq_witness(f1: &FuzzyFilter, f2: &FuzzyFilter) -> Result<Option<usize>, UltraError> {
    if f1.ground() != f2.ground() {
        return Err(UltraError::GroundMismatch);
    }
    let l = f1.ground().lattice();
    Ok(f1
        .table()
        .iter()
        .zip(f2.table())
        .position(|(&a, &b)| !l.leq(a, b)))
}

/// The complete list of fuzzy filters on a ground, in lexicographic table
/// order, together with the pointwise order among them.
#[derive(Debug, Clone)]
pub struct FilterPoset {
    ground: GroundSet,
    filters: Vec<FuzzyFilter>,
    leq: Vec<bool>,
}

impl FilterPoset {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn filters(&self) -> &[FuzzyFilter] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.filters.len() + j]
    }
}

/// Enumerates every fuzzy filter on the ground by a depth-first search over
/// monotone tables with both constants pinned, then keeps the tables passing
/// the tensor axiom. `budget` caps the number of search nodes visited.
pub fn enumerate_filters(ground: &GroundSet, budget: u64) -> Result<FilterPoset, UltraError> {
    let space = ground.fn_space()?;
    let l = ground.lattice().clone();
    let s = space.len();
    let k = l.size();

    // Pointwise comparability between function indices, precomputed.
    let mut fn_leq = vec![false; s * s];
    for i in 0..s {
        for j in 0..s {
            fn_leq[i * s + j] = space.leq(&l, i, j);
        }
    }
    let top_idx = space.constant(l.top());
    let bottom_idx = space.constant(l.bottom());

    let mut visited: u64 = 0;
    let mut table = vec![0usize; s];
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)]; // (depth, next value to try)

    'search: while let Some((depth, mut value)) = stack.pop() {
        if depth == s {
            out.push(table.clone());
            continue;
        }
        while value < k {
            visited += 1;
            if visited > budget {
                return Err(UltraError::BudgetExceeded {
                    visited,
                    space: (k as f64).powi(s as i32),
                });
            }
            let forced_ok = (depth != top_idx || value == l.top())
                && (depth != bottom_idx || value == l.bottom());
            let monotone_ok = forced_ok
                && (0..depth).all(|j| {
                    (!fn_leq[j * s + depth] || l.leq(table[j], value))
                        && (!fn_leq[depth * s + j] || l.leq(value, table[j]))
                });
            if monotone_ok {
                table[depth] = value;
                stack.push((depth, value + 1));
                stack.push((depth + 1, 0));
                continue 'search;
            }
            value += 1;
        }
    }

    // Lexicographic output order, then the tensor axiom.
    out.sort();
    let mut filters = Vec::new();
    for table in out {
        if let Ok(f) = FuzzyFilter::check(ground.clone(), table) {
            filters.push(f);
        }
    }

    let n = filters.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = filter_leq(&filters[i], &filters[j])?;
        }
    }
    Ok(FilterPoset {
        ground: ground.clone(),
        filters,
        leq,
    })
}

/// Indices of the maximal elements of the poset. Empty only when the poset
/// itself is empty.
pub fn maximal_filters(poset: &FilterPoset) -> Vec<usize> {
    let n = poset.len();
    (0..n)
        .filter(|&i| (0..n).all(|j| j == i || !poset.leq(i, j) || poset.leq(j, i)))
        .collect()
}

/// Outcome of the residuation characterization.
///
/// `holds` reports the two-sided identity; `one_sided_holds` reports the
/// upper bound expected of every filter on a residuated lattice with a
/// commutative tensor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterizationCheck {
    pub holds: bool,
    pub witness: Option<WitnessFn>,
    pub one_sided_holds: bool,
    pub one_sided_witness: Option<WitnessFn>,
}

/// Tests `U(f) = [U(f → 0)] → ⊥` for every fuzzy set `f`, with the residuum
/// taken pointwise. The pointwise residuum is cross-checked against its
/// global join form on every instance.
pub fn ultrafilter_characterization(
    u: &FuzzyFilter,
) -> Result<CharacterizationCheck, UltraError> {
    let ground = u.ground();
    let l = ground.lattice().clone();
    let res = Residuum::new(&l).map_err(UltraError::NotResiduated)?;
    let space = ground.fn_space()?;
    let s = space.len();

    let to_zero = |f: usize| -> usize {
        let values: Vec<usize> = (0..space.points())
            .map(|p| res.at(space.value_at(f, p), l.bottom()))
            .collect();
        space.encode(&values)
    };

    // Pointwise residuum toward zero must agree with the global form
    // ⋁ { k | f ⊗ k ≤ 0 } computed over the whole function space.
    for f in 0..s {
        let global = (0..s)
            .filter(|&kf| {
                let t = space.tensor(&l, f, kf);
                space.leq(&l, t, space.constant(l.bottom()))
            })
            .fold(space.constant(l.bottom()), |acc, kf| space.join(&l, acc, kf));
        if global != to_zero(f) {
            return Err(UltraError::TheoremViolation(Box::new(TheoremFailure {
                context: format!(
                    "pointwise residuum toward zero disagrees with its global join form at index {f}"
                ),
                violation: None,
            })));
        }
    }

    let mut check = CharacterizationCheck {
        holds: true,
        witness: None,
        one_sided_holds: true,
        one_sided_witness: None,
    };
    for f in 0..s {
        let rhs = res.at(u.value(to_zero(f)), l.bottom());
        if check.holds && u.value(f) != rhs {
            check.holds = false;
            check.witness = Some(WitnessFn::new(ground, &space, f));
        }
        if check.one_sided_holds && !l.leq(u.value(f), rhs) {
            check.one_sided_holds = false;
            check.one_sided_witness = Some(WitnessFn::new(ground, &space, f));
        }
    }
    Ok(check)
}

/// Pointwise join of a totally ordered family of filters, revalidated. For a
/// finite chain this is its maximum, so validation can only fail if the
/// input was not a chain.
pub fn chain_join(chain: &[FuzzyFilter]) -> Result<FuzzyFilter, UltraError> {
    let first = chain.first().ok_or(UltraError::EmptyFamily)?;
    if chain.iter().any(|f| f.ground() != first.ground()) {
        return Err(UltraError::GroundMismatch);
    }
    for i in 0..chain.len() {
        for j in (i + 1)..chain.len() {
            if !filter_leq(&chain[i], &chain[j])? && !filter_leq(&chain[j], &chain[i])? {
                return Err(UltraError::NotAChain { i, j });
            }
        }
    }
    let l = first.ground().lattice();
    let table = (0..first.table().len())
        .map(|i| l.join_all(chain.iter().map(|f| f.value(i))))
        .collect();
    FuzzyFilter::check(first.ground().clone(), table).map_err(|violation| {
        UltraError::TheoremViolation(Box::new(TheoremFailure {
            context: "pointwise join of a chain of filters".into(),
            violation: Some(violation),
        }))
    })
}

/// Pushes a filter forward along a plain point map into a ground over the
/// same lattice: the image degree of `g` is the degree of `g` composed with
/// the map. Always a filter; validation failure would refute that.
pub fn image_filter(
    point_map: &[usize],
    target: &GroundSet,
    f: &FuzzyFilter,
) -> Result<FuzzyFilter, UltraError> {
    if target.lattice() != f.ground().lattice() {
        return Err(UltraError::GroundMismatch);
    }
    if point_map.len() != f.ground().n_points()
        || point_map.iter().any(|&y| y >= target.n_points())
    {
        return Err(UltraError::Ground(GroundError::BadShape {
            expected: f.ground().n_points(),
        }));
    }
    let src_space = f.ground().fn_space()?;
    let tgt_space = target.fn_space()?;
    let table = (0..tgt_space.len())
        .map(|g| {
            let composed: Vec<usize> = point_map
                .iter()
                .map(|&y| tgt_space.value_at(g, y))
                .collect();
            f.value(src_space.encode(&composed))
        })
        .collect();
    FuzzyFilter::check(target.clone(), table).map_err(|violation| {
        UltraError::TheoremViolation(Box::new(TheoremFailure {
            context: "image of a filter under a point map".into(),
            violation: Some(violation),
        }))
    })
}
