//! Fuzzy topologies on ground sets, continuity, final topologies, and the
//! degree-preserving functor from filtered sets to topological spaces.
//!
//! A fuzzy topology assigns an openness degree to every fuzzy set, subject
//! to a join axiom over arbitrary index sets, super-multiplicativity over the
//! tensor, and full openness of the constant-top set. Whether the empty
//! index set participates in the join axiom (forcing the constant-bottom set
//! fully open) is configurable and on by default.

use crate::filter::{backward_index, check_continuity, ContinuityCheck, FuzzyFilter, TheoremFailure, WitnessFn};
use crate::ground::{FnSpace, GroundError, GroundMorphism, GroundSet};
use crate::lattice::QmlLattice;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Join-axiom instances are checked over every subset of the function space
/// up to this size; larger spaces fall back to pairs plus seeded samples.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 9;

/// Validation options for the topology axioms.
#[derive(Debug, Clone, Copy)]
pub struct TopoOptions {
    /// Include the empty index set in the join axiom. The empty join is the
    /// constant-bottom set and the empty meet is top, so inclusion forces
    /// that set fully open.
    pub include_empty_join: bool,
    /// Seed for subset sampling on function spaces too large to scan
    /// exhaustively.
    pub sample_seed: u64,
    /// Number of sampled subsets on large function spaces.
    pub samples: usize,
}

impl Default for TopoOptions {
    fn default() -> Self {
        TopoOptions {
            include_empty_join: true,
            sample_seed: 0,
            samples: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum TopoViolation {
    #[error("table must have {expected} entries with values inside the lattice")]
    Shape { expected: usize },
    #[error("join axiom: the meet of the degrees of a {subset_size}-element family lies above the degree `{join_degree}` of its join {join:?}")]
    JoinAxiom {
        subset_size: usize,
        members: Vec<WitnessFn>,
        join: WitnessFn,
        join_degree: String,
    },
    #[error("tensor axiom: degrees of {f:?} and {g:?} tensor to `{lhs}`, above the degree `{rhs}` of their pointwise tensor")]
    TensorAxiom {
        f: WitnessFn,
        g: WitnessFn,
        lhs: String,
        rhs: String,
    },
    #[error("top axiom: the constant-top set has degree `{got}`")]
    TopAxiom { got: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopoError {
    #[error("structures live on different grounds")]
    GroundMismatch,
    #[error("search budget exceeded after {visited} nodes (raw space ≈ {space:.3e} tables)")]
    BudgetExceeded { visited: u64, space: f64 },
    #[error("claimed property failed: {0}")]
    TheoremViolation(Box<TheoremFailure>),
    #[error("topology axioms failed where the theory forbids it: {0}")]
    DerivedNotATopology(TopoViolation),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// A validated fuzzy topology.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyTopology {
    ground: GroundSet,
    table: Vec<usize>,
}

/// First witness, in canonical order, against the join axiom of `table`,
/// or `None` when the axiom holds for every checked index family.
///
/// Families are all subsets when the function space has at most
/// [`EXHAUSTIVE_SUBSET_LIMIT`] elements; otherwise all pairs, the full
/// space, seeded random subsets, and (when included) the empty family.
pub fn join_axiom_witness(
    ground: &GroundSet,
    table: &[usize],
    opts: &TopoOptions,
) -> Result<Option<TopoViolation>, GroundError> {
    let space = ground.fn_space()?;
    let l = ground.lattice().clone();
    let s = space.len();

    let eval = |members: &[usize]| -> Option<TopoViolation> {
        let degree_meet = l.meet_all(members.iter().map(|&i| table[i]));
        let join_idx = members
            .iter()
            .fold(space.constant(l.bottom()), |acc, &i| space.join(&l, acc, i));
        if l.leq(degree_meet, table[join_idx]) {
            return None;
        }
        Some(TopoViolation::JoinAxiom {
            subset_size: members.len(),
            members: members
                .iter()
                .map(|&i| WitnessFn::new(ground, &space, i))
                .collect(),
            join: WitnessFn::new(ground, &space, join_idx),
            join_degree: l.element_name(table[join_idx]).to_string(),
        })
    };

    if s <= EXHAUSTIVE_SUBSET_LIMIT {
        for mask in 0u32..(1 << s) {
            if mask == 0 && !opts.include_empty_join {
                continue;
            }
            let members: Vec<usize> = (0..s).filter(|&i| mask & (1 << i) != 0).collect();
            if let Some(v) = eval(&members) {
                return Ok(Some(v));
            }
        }
        return Ok(None);
    }

    if opts.include_empty_join {
        if let Some(v) = eval(&[]) {
            return Ok(Some(v));
        }
    }
    for i in 0..s {
        for j in 0..s {
            if let Some(v) = eval(&[i, j]) {
                return Ok(Some(v));
            }
        }
    }
    if let Some(v) = eval(&(0..s).collect::<Vec<_>>()) {
        return Ok(Some(v));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.sample_seed);
    for _ in 0..opts.samples {
        let members: Vec<usize> = (0..s).filter(|_| rng.gen_bool(0.5)).collect();
        if let Some(v) = eval(&members) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// First witness against super-multiplicativity of `table` over the tensor.
pub fn tensor_axiom_witness(
    ground: &GroundSet,
    table: &[usize],
) -> Result<Option<TopoViolation>, GroundError> {
    let space = ground.fn_space()?;
    let l = ground.lattice().clone();
    for i in 0..space.len() {
        for j in 0..space.len() {
            let lhs = l.tensor(table[i], table[j]);
            let rhs = table[space.tensor(&l, i, j)];
            if !l.leq(lhs, rhs) {
                return Ok(Some(TopoViolation::TensorAxiom {
                    f: WitnessFn::new(ground, &space, i),
                    g: WitnessFn::new(ground, &space, j),
                    lhs: l.element_name(lhs).to_string(),
                    rhs: l.element_name(rhs).to_string(),
                }));
            }
        }
    }
    Ok(None)
}

impl FuzzyTopology {
    pub fn check(
        ground: GroundSet,
        table: Vec<usize>,
        opts: &TopoOptions,
    ) -> Result<Self, TopoViolation> {
        let space = ground.fn_space().map_err(|_| TopoViolation::Shape {
            expected: usize::MAX,
        })?;
        let l = ground.lattice().clone();
        if table.len() != space.len() || table.iter().any(|&v| v >= l.size()) {
            return Err(TopoViolation::Shape {
                expected: space.len(),
            });
        }
        if let Some(v) = join_axiom_witness(&ground, &table, opts).map_err(|_| {
            TopoViolation::Shape {
                expected: space.len(),
            }
        })? {
            return Err(v);
        }
        if let Some(v) = tensor_axiom_witness(&ground, &table).map_err(|_| TopoViolation::Shape {
            expected: space.len(),
        })? {
            return Err(v);
        }
        let top_idx = space.constant(l.top());
        if table[top_idx] != l.top() {
            return Err(TopoViolation::TopAxiom {
                got: l.element_name(table[top_idx]).to_string(),
            });
        }
        Ok(FuzzyTopology { ground, table })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn value(&self, idx: usize) -> usize {
        self.table[idx]
    }

    pub fn table_names(&self) -> Vec<String> {
        self.table
            .iter()
            .map(|&v| self.ground.lattice().element_name(v).to_string())
            .collect()
    }
}

/// Tests whether `gm` is fuzzy continuous from `src` to `tgt`, in both the
/// direct and the Galois-adjoint form.
pub fn check_topo_continuity(
    gm: &GroundMorphism,
    src: &FuzzyTopology,
    tgt: &FuzzyTopology,
) -> Result<ContinuityCheck, TopoError> {
    if src.ground() != gm.source() || tgt.ground() != gm.target() {
        return Err(TopoError::GroundMismatch);
    }
    let src_space = gm.source().fn_space()?;
    let tgt_space = gm.target().fn_space()?;
    let src_l = gm.source().lattice();
    let tgt_l = gm.target().lattice();
    let radj = gm.lattice_map().right_adjoint();

    let mut check = ContinuityCheck {
        holds: true,
        witness: None,
        adjoint_holds: true,
        adjoint_witness: None,
    };
    for b in 0..tgt_space.len() {
        let back = backward_index(gm, &tgt_space, &src_space, b);
        let degree_back = src.value(back);
        if check.holds && !src_l.leq(gm.lattice_map().apply(tgt.value(b)), degree_back) {
            check.holds = false;
            check.witness = Some(WitnessFn::new(gm.target(), &tgt_space, b));
        }
        if check.adjoint_holds && !tgt_l.leq(tgt.value(b), radj[degree_back]) {
            check.adjoint_holds = false;
            check.adjoint_witness = Some(WitnessFn::new(gm.target(), &tgt_space, b));
        }
    }
    Ok(check)
}

/// Raw table of the final topology on the target of `gm`.
pub fn final_topology_table(
    gm: &GroundMorphism,
    src: &FuzzyTopology,
) -> Result<Vec<usize>, TopoError> {
    if src.ground() != gm.source() {
        return Err(TopoError::GroundMismatch);
    }
    let src_space = gm.source().fn_space()?;
    let tgt_space = gm.target().fn_space()?;
    let radj = gm.lattice_map().right_adjoint();
    Ok((0..tgt_space.len())
        .map(|b| radj[src.value(backward_index(gm, &tgt_space, &src_space, b))])
        .collect())
}

/// The final topology on the target of `gm`, validated, with continuity into
/// it asserted.
pub fn final_topology(
    gm: &GroundMorphism,
    src: &FuzzyTopology,
    opts: &TopoOptions,
) -> Result<FuzzyTopology, TopoError> {
    let table = final_topology_table(gm, src)?;
    let topo = FuzzyTopology::check(gm.target().clone(), table, opts)
        .map_err(TopoError::DerivedNotATopology)?;
    let continuity = check_topo_continuity(gm, src, &topo)?;
    if !continuity.holds {
        return Err(TopoError::TheoremViolation(Box::new(TheoremFailure {
            context: "continuity into the final topology".into(),
            violation: None,
        })));
    }
    Ok(topo)
}

/// The topology induced by a fuzzy filter: same degrees away from the
/// constant-bottom set, which becomes fully open.
pub fn filter_to_topology(f: &FuzzyFilter, opts: &TopoOptions) -> Result<FuzzyTopology, TopoError> {
    let space = f.ground().fn_space()?;
    let l = f.ground().lattice();
    let bottom_idx = space.constant(l.bottom());
    let table = (0..space.len())
        .map(|i| if i == bottom_idx { l.top() } else { f.value(i) })
        .collect();
    FuzzyTopology::check(f.ground().clone(), table, opts).map_err(TopoError::DerivedNotATopology)
}

/// Functoriality on morphisms: a filter-continuous ground morphism must stay
/// continuous between the induced topologies. The ground morphism itself is
/// left untouched by the construction.
pub fn functor_t_check(
    gm: &GroundMorphism,
    src: &FuzzyFilter,
    tgt: &FuzzyFilter,
    opts: &TopoOptions,
) -> Result<ContinuityCheck, TopoError> {
    let filter_side = check_continuity(gm, src, tgt).map_err(|_| TopoError::GroundMismatch)?;
    if !filter_side.holds {
        return Err(TopoError::Precondition(
            "the morphism is not filter continuous".into(),
        ));
    }
    let src_topo = filter_to_topology(src, opts)?;
    let tgt_topo = filter_to_topology(tgt, opts)?;
    check_topo_continuity(gm, &src_topo, &tgt_topo)
}

/// Enumerates every fuzzy topology on the ground by depth-first search over
/// raw tables with the forced constants pinned, pruning with the pair
/// instances of the join axiom and finishing with a full check.
pub fn enumerate_topologies(
    ground: &GroundSet,
    budget: u64,
    opts: &TopoOptions,
) -> Result<Vec<FuzzyTopology>, TopoError> {
    let space = ground.fn_space()?;
    let l = ground.lattice().clone();
    let s = space.len();
    let k = l.size();
    let top_idx = space.constant(l.top());
    let bottom_idx = space.constant(l.bottom());

    let mut join_of = vec![0usize; s * s];
    let mut tensor_of = vec![0usize; s * s];
    for i in 0..s {
        for j in 0..s {
            join_of[i * s + j] = space.join(&l, i, j);
            tensor_of[i * s + j] = space.tensor(&l, i, j);
        }
    }

    let mut visited: u64 = 0;
    let mut table = vec![0usize; s];
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];

    'search: while let Some((depth, mut value)) = stack.pop() {
        if depth == s {
            if let Ok(t) = FuzzyTopology::check(ground.clone(), table.clone(), opts) {
                out.push(t);
            }
            continue;
        }
        while value < k {
            visited += 1;
            if visited > budget {
                return Err(TopoError::BudgetExceeded {
                    visited,
                    space: (k as f64).powi(s as i32),
                });
            }
            let pinned_ok = (depth != top_idx || value == l.top())
                && (!opts.include_empty_join || depth != bottom_idx || value == l.top());
            let prefix_ok = pinned_ok && {
                table[depth] = value;
                (0..=depth).all(|i| {
                    let join_ok = {
                        let j = join_of[i * s + depth];
                        j > depth || l.leq(l.meet(table[i], value), table[j])
                    };
                    let tensor_ok = {
                        let t = tensor_of[i * s + depth];
                        t > depth
                            || (l.leq(l.tensor(table[i], value), table[t])
                                && l.leq(l.tensor(value, table[i]), table[t]))
                    };
                    join_ok && tensor_ok
                })
            };
            if prefix_ok {
                stack.push((depth, value + 1));
                stack.push((depth + 1, 0));
                continue 'search;
            }
            value += 1;
        }
    }
    out.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(out)
}

/// Pointwise join of a family of topology tables over one lattice.
pub fn join_tables(l: &QmlLattice, tables: &[&[usize]], len: usize) -> Vec<usize> {
    (0..len)
        .map(|i| l.join_all(tables.iter().map(|t| t[i])))
        .collect()
}

/// Convenience: the function space and canonical constant-bottom index used
/// by several suite checks.
pub fn space_and_bottom(ground: &GroundSet) -> Result<(FnSpace, usize), GroundError> {
    let space = ground.fn_space()?;
    let bottom = space.constant(ground.lattice().bottom());
    Ok((space, bottom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::lattice::QmlMorphism;
    use std::sync::Arc;

    fn ground(points: &[&str], lattice: Arc<crate::lattice::QmlLattice>) -> GroundSet {
        GroundSet::new(points.iter().map(|s| s.to_string()).collect(), lattice).unwrap()
    }

    fn opts() -> TopoOptions {
        TopoOptions::default()
    }

    #[test]
    fn constant_top_table_is_a_topology() {
        let g = ground(&["p", "q"], bundled::chain3());
        let space = g.fn_space().unwrap();
        let table = vec![g.lattice().top(); space.len()];
        assert!(FuzzyTopology::check(g, table, &opts()).is_ok());
    }

    #[test]
    fn top_axiom_violation_reported() {
        let g = ground(&["p"], bundled::chain3());
        let space = g.fn_space().unwrap();
        let mut table = vec![g.lattice().top(); space.len()];
        table[space.constant(2)] = 1;
        let err = FuzzyTopology::check(g, table, &opts()).unwrap_err();
        assert_eq!(err, TopoViolation::TopAxiom { got: "m".into() });
    }

    #[test]
    fn empty_join_instance_is_governed_by_the_flag() {
        let g = ground(&["p"], bundled::bool2());
        // Identity-degree table: openness of a constant is its value.
        let table = vec![0, 1];
        let strict = FuzzyTopology::check(g.clone(), table.clone(), &opts());
        match strict.unwrap_err() {
            TopoViolation::JoinAxiom { subset_size, .. } => assert_eq!(subset_size, 0),
            other => panic!("expected the empty-family instance, got {other:?}"),
        }
        let lax = TopoOptions {
            include_empty_join: false,
            ..opts()
        };
        assert!(FuzzyTopology::check(g, table, &lax).is_ok());
    }

    #[test]
    fn filter_tables_satisfy_the_nonempty_join_axiom() {
        let lax = TopoOptions {
            include_empty_join: false,
            ..opts()
        };
        for l in [bundled::bool2(), bundled::chain3(), bundled::diamond()] {
            let g = ground(&["p", "q"], l);
            let poset = crate::ultra::enumerate_filters(&g, 10_000_000).unwrap();
            for f in poset.filters() {
                assert_eq!(join_axiom_witness(&g, f.table(), &lax).unwrap(), None);
                assert_eq!(tensor_axiom_witness(&g, f.table()).unwrap(), None);
                // With the empty family included, the only failure is at the
                // constant-bottom set.
                match join_axiom_witness(&g, f.table(), &opts()).unwrap() {
                    Some(TopoViolation::JoinAxiom { subset_size: 0, .. }) => {}
                    other => panic!("expected the empty-family instance, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn filter_to_topology_preserves_degrees_away_from_bottom() {
        let g = ground(&["p", "q"], bundled::bool2());
        let f = FuzzyFilter::point(g.clone(), 0);
        let t = filter_to_topology(&f, &opts()).unwrap();
        let (space, bottom_idx) = space_and_bottom(&g).unwrap();
        for i in 0..space.len() {
            if i == bottom_idx {
                assert_eq!(t.value(i), g.lattice().top());
            } else {
                assert_eq!(t.value(i), f.value(i));
            }
        }
    }

    #[test]
    fn min_style_filter_topology_opens_exactly_the_two_constants() {
        let g = ground(&["p", "q"], bundled::bool2());
        let poset = crate::ultra::enumerate_filters(&g, 1_000_000).unwrap();
        let minimum = &poset.filters()[0];
        let t = filter_to_topology(minimum, &opts()).unwrap();
        assert_eq!(t.table(), &[1, 0, 0, 1]);
    }

    #[test]
    fn topo_continuity_identity_and_constant_top() {
        let g = ground(&["p", "q"], bundled::chain3());
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g.clone(), 0);
        let t = filter_to_topology(&f, &opts()).unwrap();
        let check = check_topo_continuity(&gm, &t, &t).unwrap();
        assert!(check.holds && check.adjoint_holds);

        let space = g.fn_space().unwrap();
        let all_open =
            FuzzyTopology::check(g, vec![2; space.len()], &opts()).unwrap();
        let check = check_topo_continuity(&gm, &all_open, &t).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn final_topology_of_identity_is_the_topology_itself() {
        let g = ground(&["p", "q"], bundled::bool2());
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g, 0);
        let t = filter_to_topology(&f, &opts()).unwrap();
        let final_t = final_topology(&gm, &t, &opts()).unwrap();
        assert_eq!(final_t.table(), t.table());
    }

    #[test]
    fn final_topology_of_collapse_matches_direct_evaluation() {
        let b = bundled::bool2();
        let x = ground(&["x1", "x2"], b.clone());
        let y = ground(&["y"], b.clone());
        let gm =
            GroundMorphism::check(x.clone(), y, vec![0, 0], QmlMorphism::identity(b)).unwrap();
        let f = FuzzyFilter::point(x, 0);
        let t = filter_to_topology(&f, &opts()).unwrap();
        let final_t = final_topology(&gm, &t, &opts()).unwrap();
        // Both target constants pull back to constants, which the source
        // topology fully opens.
        assert_eq!(final_t.table(), &[1, 1]);
    }

    #[test]
    fn continuity_iff_below_final_topology_and_join_claim() {
        let g = ground(&["p", "q"], bundled::bool2());
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g.clone(), 0);
        let t = filter_to_topology(&f, &opts()).unwrap();
        let final_table = final_topology_table(&gm, &t).unwrap();
        let l = g.lattice();

        let all = enumerate_topologies(&g, 1_000_000, &opts()).unwrap();
        assert!(!all.is_empty());
        let mut continuous_tables: Vec<&[usize]> = Vec::new();
        for candidate in &all {
            let continuous = check_topo_continuity(&gm, &t, candidate).unwrap().holds;
            let below = candidate
                .table()
                .iter()
                .zip(&final_table)
                .all(|(&a, &b)| l.leq(a, b));
            assert_eq!(continuous, below);
            if continuous {
                continuous_tables.push(candidate.table());
            }
        }
        let joined = join_tables(l, &continuous_tables, final_table.len());
        assert_eq!(joined, final_table);
    }

    #[test]
    fn functor_t_sends_continuity_to_continuity() {
        let b = bundled::bool2();
        let x = ground(&["x1", "x2"], b.clone());
        let y = ground(&["y"], b.clone());
        let gm = GroundMorphism::check(x.clone(), y, vec![0, 0], QmlMorphism::identity(b))
            .unwrap();
        let f = FuzzyFilter::point(x, 0);
        let final_f = crate::filter::final_filter(&gm, &f).unwrap();
        let check = functor_t_check(&gm, &f, &final_f, &opts()).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn functor_t_requires_filter_continuity() {
        let g = ground(&["p", "q"], bundled::bool2());
        let gm = GroundMorphism::identity(g.clone());
        let poset = crate::ultra::enumerate_filters(&g, 1_000_000).unwrap();
        let minimum = poset.filters()[0].clone();
        let fp = FuzzyFilter::point(g, 0);
        assert!(matches!(
            functor_t_check(&gm, &minimum, &fp, &opts()),
            Err(TopoError::Precondition(_))
        ));
    }

    #[test]
    fn enumerate_topologies_counts_on_tiny_grounds() {
        let g = ground(&["p"], bundled::bool2());
        assert_eq!(enumerate_topologies(&g, 100_000, &opts()).unwrap().len(), 1);
        let lax = TopoOptions {
            include_empty_join: false,
            ..opts()
        };
        assert_eq!(enumerate_topologies(&g, 100_000, &lax).unwrap().len(), 2);
    }
}
