//! Fuzzy filters on ground sets: validation, meets, continuity of ground
//! morphisms between filtered sets, and the final and initial constructions.
//!
//! A fuzzy filter assigns a lattice degree to every fuzzy set of its ground,
//! sending the constant-top set to top and the constant-bottom set to
//! bottom, monotonically, and super-multiplicatively over the tensor. Tables
//! are keyed by the canonical function-space index of [`crate::ground::FnSpace`].

use crate::ground::{FnSpace, FuzzySet, GroundError, GroundMorphism, GroundSet};
use crate::lattice::MorphismError;
use serde::Serialize;
use thiserror::Error;

/// A fuzzy set quoted inside a violation report: its canonical index and its
/// values spelled as element names, point by point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessFn {
    pub index: usize,
    pub values: Vec<String>,
}

impl WitnessFn {
    pub fn new(ground: &GroundSet, space: &FnSpace, index: usize) -> Self {
        let values = space
            .decode(index)
            .iter()
            .map(|&v| ground.lattice().element_name(v).to_string())
            .collect();
        WitnessFn { index, values }
    }
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum FilterViolation {
    #[error("table must have {expected} entries with values inside the lattice")]
    Shape { expected: usize },
    #[error("top axiom: the constant-top set maps to `{got}`")]
    TopAxiom { got: String },
    #[error("bottom axiom: the constant-bottom set maps to `{got}`")]
    BottomAxiom { got: String },
    #[error("monotonicity: {f:?} ≤ {g:?} but degrees `{value_f}` ≰ `{value_g}`")]
    Monotonicity {
        f: WitnessFn,
        g: WitnessFn,
        value_f: String,
        value_g: String,
    },
    #[error("tensor axiom: degrees of {f:?} and {g:?} tensor to `{lhs}`, above the degree `{rhs}` of their pointwise tensor")]
    TensorAxiom {
        f: WitnessFn,
        g: WitnessFn,
        lhs: String,
        rhs: String,
    },
}

/// Expected, reportable failure of the initial-filter construction: the
/// candidate table with the axiom it breaks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InitialFilterFailure {
    pub violation: FilterViolation,
    pub candidate: Vec<String>,
    pub point_map_injective: bool,
}

/// A validation failure in a construction the theory claims always succeeds.
/// Reaching this is a counterexample to the claimed property, not a usage
/// error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremFailure {
    pub context: String,
    pub violation: Option<FilterViolation>,
}

impl std::fmt::Display for TheoremFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.violation {
            Some(v) => write!(f, "{}: {v}", self.context),
            None => write!(f, "{}", self.context),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FilterError {
    #[error("structures live on different grounds")]
    GroundMismatch,
    #[error("the filter family is empty")]
    EmptyFamily,
    #[error("the point map is not onto")]
    NotOnto,
    #[error("no co-adjoint: {0}")]
    NoCoAdjoint(MorphismError),
    #[error("initial filter candidate breaks a filter axiom: {}", .0.violation)]
    AxiomViolation(Box<InitialFilterFailure>),
    #[error("claimed property failed: {0}")]
    TheoremViolation(Box<TheoremFailure>),
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

/// A validated fuzzy filter.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyFilter {
    ground: GroundSet,
    table: Vec<usize>,
}

impl FuzzyFilter {
    /// Validates a candidate table against the four filter axioms, reporting
    /// the first violation in canonical scan order.
    pub fn check(ground: GroundSet, table: Vec<usize>) -> Result<Self, FilterViolation> {
        let space = ground.fn_space().map_err(|_| FilterViolation::Shape {
            expected: usize::MAX,
        })?;
        let l = ground.lattice().clone();
        if table.len() != space.len() || table.iter().any(|&v| v >= l.size()) {
            return Err(FilterViolation::Shape {
                expected: space.len(),
            });
        }
        let name = |v: usize| l.element_name(v).to_string();

        let top_idx = space.constant(l.top());
        if table[top_idx] != l.top() {
            return Err(FilterViolation::TopAxiom {
                got: name(table[top_idx]),
            });
        }
        let bottom_idx = space.constant(l.bottom());
        if table[bottom_idx] != l.bottom() {
            return Err(FilterViolation::BottomAxiom {
                got: name(table[bottom_idx]),
            });
        }
        for i in 0..space.len() {
            for j in 0..space.len() {
                if space.leq(&l, i, j) && !l.leq(table[i], table[j]) {
                    return Err(FilterViolation::Monotonicity {
                        f: WitnessFn::new(&ground, &space, i),
                        g: WitnessFn::new(&ground, &space, j),
                        value_f: name(table[i]),
                        value_g: name(table[j]),
                    });
                }
            }
        }
        for i in 0..space.len() {
            for j in 0..space.len() {
                let lhs = l.tensor(table[i], table[j]);
                let rhs = table[space.tensor(&l, i, j)];
                if !l.leq(lhs, rhs) {
                    return Err(FilterViolation::TensorAxiom {
                        f: WitnessFn::new(&ground, &space, i),
                        g: WitnessFn::new(&ground, &space, j),
                        lhs: name(lhs),
                        rhs: name(rhs),
                    });
                }
            }
        }
        Ok(FuzzyFilter { ground, table })
    }

    /// The point filter at `point`: each fuzzy set maps to its own value
    /// there.
    pub fn point(ground: GroundSet, point: usize) -> Self {
        let space = ground.fn_space().expect("ground fits the function space");
        let table = (0..space.len()).map(|i| space.value_at(i, point)).collect();
        FuzzyFilter::check(ground, table).expect("point filters satisfy every axiom")
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

/// Pointwise meet of a nonempty family of filters on one ground. The result
/// always revalidates; a failure would refute the meet proposition itself.
pub fn meet_filters(family: &[FuzzyFilter]) -> Result<FuzzyFilter, FilterError> {
    let first = family.first().ok_or(FilterError::EmptyFamily)?;
    if family.iter().any(|f| f.ground() != first.ground()) {
        return Err(FilterError::GroundMismatch);
    }
    let l = first.ground().lattice();
    let table = (0..first.table.len())
        .map(|i| l.meet_all(family.iter().map(|f| f.value(i))))
        .collect();
    FuzzyFilter::check(first.ground().clone(), table).map_err(|violation| {
        FilterError::TheoremViolation(Box::new(TheoremFailure {
            context: "pointwise meet of a filter family".into(),
            violation: Some(violation),
        }))
    })
}

/// Outcome of a continuity test, evaluated both in the direct form (push the
/// target degree through the lattice map) and in the Galois-adjoint form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityCheck {
    pub holds: bool,
    pub witness: Option<WitnessFn>,
    pub adjoint_holds: bool,
    pub adjoint_witness: Option<WitnessFn>,
}

impl ContinuityCheck {
    pub fn forms_agree(&self) -> bool {
        self.holds == self.adjoint_holds
    }
}

/// Index of the backward image of the target-space function `b` under the
/// ground morphism, in the source function space.
pub(crate) fn backward_index(
    gm: &GroundMorphism,
    tgt_space: &FnSpace,
    src_space: &FnSpace,
    b: usize,
) -> usize {
    let values: Vec<usize> = gm
        .point_map()
        .iter()
        .map(|&y| gm.lattice_map().apply(tgt_space.value_at(b, y)))
        .collect();
    src_space.encode(&values)
}

/// Tests whether `gm` is filter continuous from `src` to `tgt`.
pub fn check_continuity(
    gm: &GroundMorphism,
    src: &FuzzyFilter,
    tgt: &FuzzyFilter,
) -> Result<ContinuityCheck, FilterError> {
    if src.ground() != gm.source() || tgt.ground() != gm.target() {
        return Err(FilterError::GroundMismatch);
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

/// Raw table of the final filter on the target of `gm`: pull each target
/// function back, take its degree under `src`, and push through the right
/// adjoint.
pub fn final_filter_table(
    gm: &GroundMorphism,
    src: &FuzzyFilter,
) -> Result<Vec<usize>, FilterError> {
    if src.ground() != gm.source() {
        return Err(FilterError::GroundMismatch);
    }
    let src_space = gm.source().fn_space()?;
    let tgt_space = gm.target().fn_space()?;
    let radj = gm.lattice_map().right_adjoint();
    Ok((0..tgt_space.len())
        .map(|b| radj[src.value(backward_index(gm, &tgt_space, &src_space, b))])
        .collect())
}

/// The final filter on the target of `gm`, fully validated, with continuity
/// into it asserted. Either failure is a counterexample to the final-filter
/// construction and is reported as such.
pub fn final_filter(gm: &GroundMorphism, src: &FuzzyFilter) -> Result<FuzzyFilter, FilterError> {
    let table = final_filter_table(gm, src)?;
    let filter = FuzzyFilter::check(gm.target().clone(), table).map_err(|violation| {
        FilterError::TheoremViolation(Box::new(TheoremFailure {
            context: "final filter axioms".into(),
            violation: Some(violation),
        }))
    })?;
    let continuity = check_continuity(gm, src, &filter)?;
    if !continuity.holds {
        return Err(FilterError::TheoremViolation(Box::new(TheoremFailure {
            context: "continuity into the final filter".into(),
            violation: None,
        })));
    }
    Ok(filter)
}

/// How a target filter relates to the canonical final filter of `(gm, src)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FinalCharacterization {
    pub continuous: bool,
    pub leq: bool,
    pub eq: bool,
}

pub fn final_characterization(
    gm: &GroundMorphism,
    src: &FuzzyFilter,
    tgt: &FuzzyFilter,
) -> Result<FinalCharacterization, FilterError> {
    if tgt.ground() != gm.target() {
        return Err(FilterError::GroundMismatch);
    }
    let table = final_filter_table(gm, src)?;
    let l = gm.target().lattice();
    let continuous = check_continuity(gm, src, tgt)?.holds;
    let leq = tgt
        .table()
        .iter()
        .zip(&table)
        .all(|(&a, &b)| l.leq(a, b));
    let eq = tgt.table() == table.as_slice();
    Ok(FinalCharacterization {
        continuous,
        leq,
        eq,
    })
}

/// Recomputes continuity of the composite of two continuous leg morphisms
/// from scratch. Both legs must be continuous; a non-continuous composite
/// would be a counterexample to composition closure.
pub fn compose_check(
    gm1: &GroundMorphism,
    f1: &FuzzyFilter,
    f2: &FuzzyFilter,
    gm2: &GroundMorphism,
    f3: &FuzzyFilter,
) -> Result<ContinuityCheck, FilterError> {
    if !check_continuity(gm1, f1, f2)?.holds {
        return Err(FilterError::Precondition(
            "first leg is not continuous".into(),
        ));
    }
    if !check_continuity(gm2, f2, f3)?.holds {
        return Err(FilterError::Precondition(
            "second leg is not continuous".into(),
        ));
    }
    let composite = gm1.compose_then(gm2)?;
    check_continuity(&composite, f1, f3)
}

/// Pulls a target filter back along an onto ground morphism whose lattice
/// map has a co-adjoint, then validates the candidate in full.
///
/// Validation failures are an expected outcome here and come back as
/// [`FilterError::AxiomViolation`] with the candidate table, the broken
/// axiom, and whether the point map was injective.
pub fn initial_filter(gm: &GroundMorphism, tgt: &FuzzyFilter) -> Result<FuzzyFilter, FilterError> {
    if tgt.ground() != gm.target() {
        return Err(FilterError::GroundMismatch);
    }
    if !gm.is_onto() {
        return Err(FilterError::NotOnto);
    }
    if let Err(e) = gm.lattice_map().co_adjoint() {
        return Err(FilterError::NoCoAdjoint(e));
    }
    let src_space = gm.source().fn_space()?;
    let tgt_space = gm.target().fn_space()?;
    let src_l = gm.source().lattice();
    let mut candidate = Vec::with_capacity(src_space.len());
    for h in 0..src_space.len() {
        let hset = FuzzySet::new(gm.source().clone(), src_space.decode(h))?;
        let fwd = gm.forward_powerset(&hset)?;
        let fwd_idx = tgt_space.encode(fwd.values());
        candidate.push(gm.lattice_map().apply(tgt.value(fwd_idx)));
    }
    match FuzzyFilter::check(gm.source().clone(), candidate.clone()) {
        Ok(f) => Ok(f),
        Err(violation) => Err(FilterError::AxiomViolation(Box::new(InitialFilterFailure {
            violation,
            candidate: candidate
                .iter()
                .map(|&v| src_l.element_name(v).to_string())
                .collect(),
            point_map_injective: gm.is_injective(),
        }))),
    }
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

    fn bool_pair() -> GroundSet {
        ground(&["p", "q"], bundled::bool2())
    }

    /// The filter holding only the constant-top set: degree top there,
    /// bottom everywhere else.
    fn min_style_filter(g: &GroundSet) -> FuzzyFilter {
        let space = g.fn_space().unwrap();
        let l = g.lattice();
        let top_idx = space.constant(l.top());
        let table = (0..space.len())
            .map(|i| if i == top_idx { l.top() } else { l.bottom() })
            .collect();
        FuzzyFilter::check(g.clone(), table).unwrap()
    }

    #[test]
    fn point_filters_validate_on_every_bundled_lattice() {
        for l in [
            bundled::bool2(),
            bundled::chain3(),
            bundled::luk3(),
            bundled::diamond(),
        ] {
            let g = ground(&["p", "q"], l);
            let f = FuzzyFilter::point(g.clone(), 0);
            let space = g.fn_space().unwrap();
            for i in 0..space.len() {
                assert_eq!(f.value(i), space.value_at(i, 0));
            }
        }
    }

    #[test]
    fn diamond_tensor_axiom_violation_names_the_incomparable_constants() {
        let g = ground(&["p"], bundled::diamond());
        let space = g.fn_space().unwrap();
        let l = g.lattice();
        // Top degree everywhere except constant-bottom.
        let table: Vec<usize> = (0..space.len())
            .map(|i| {
                if i == space.constant(l.bottom()) {
                    l.bottom()
                } else {
                    l.top()
                }
            })
            .collect();
        let err = FuzzyFilter::check(g, table).unwrap_err();
        match err {
            FilterViolation::TensorAxiom { f, g, .. } => {
                assert_eq!(f.values, vec!["a".to_string()]);
                assert_eq!(g.values, vec!["b".to_string()]);
            }
            other => panic!("expected a tensor violation, got {other:?}"),
        }
    }

    #[test]
    fn meet_of_point_filters_is_pointwise() {
        let g = bool_pair();
        let fp = FuzzyFilter::point(g.clone(), 0);
        let fq = FuzzyFilter::point(g.clone(), 1);
        let met = meet_filters(&[fp.clone(), fq]).unwrap();
        let space = g.fn_space().unwrap();
        for i in 0..space.len() {
            let expected = g
                .lattice()
                .meet(space.value_at(i, 0), space.value_at(i, 1));
            assert_eq!(met.value(i), expected);
        }
        let single = meet_filters(&[fp.clone()]).unwrap();
        assert_eq!(single, fp);
        assert!(matches!(meet_filters(&[]), Err(FilterError::EmptyFamily)));
    }

    #[test]
    fn continuity_identity_into_itself() {
        let g = bool_pair();
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g, 0);
        let check = check_continuity(&gm, &f, &f).unwrap();
        assert!(check.holds && check.adjoint_holds);
    }

    #[test]
    fn continuity_fails_when_target_exceeds_source_degrees() {
        let g = bool_pair();
        let gm = GroundMorphism::identity(g.clone());
        let f = min_style_filter(&g);
        let omega = FuzzyFilter::point(g, 0);
        let check = check_continuity(&gm, &f, &omega).unwrap();
        assert!(!check.holds);
        assert!(check.forms_agree());
        // First failing target function in canonical order: the indicator
        // of p alone.
        assert_eq!(check.witness.unwrap().values, vec!["1", "0"]);
    }

    #[test]
    fn compose_check_identity_legs() {
        let g = bool_pair();
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g, 1);
        let check = compose_check(&gm, &f, &f, &gm, &f).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn compose_check_rejects_discontinuous_legs() {
        let g = bool_pair();
        let gm = GroundMorphism::identity(g.clone());
        let f = min_style_filter(&g);
        let omega = FuzzyFilter::point(g, 0);
        let err = compose_check(&gm, &f, &omega, &gm, &omega).unwrap_err();
        assert!(matches!(err, FilterError::Precondition(_)));
    }

    #[test]
    fn final_filter_of_identity_is_the_filter_itself() {
        let g = bool_pair();
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g, 0);
        let final_f = final_filter(&gm, &f).unwrap();
        assert_eq!(final_f.table(), f.table());
    }

    #[test]
    fn final_filter_of_collapse_is_the_point_filter() {
        let b = bundled::bool2();
        let x = ground(&["x1", "x2"], b.clone());
        let y = ground(&["y"], b.clone());
        let gm =
            GroundMorphism::check(x.clone(), y, vec![0, 0], QmlMorphism::identity(b)).unwrap();
        let f = FuzzyFilter::point(x, 0);
        let final_f = final_filter(&gm, &f).unwrap();
        let expected = FuzzyFilter::point(final_f.ground().clone(), 0);
        assert_eq!(final_f.table(), expected.table());
    }

    #[test]
    fn continuity_iff_below_final_filter() {
        let g = bool_pair();
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g.clone(), 0);
        let final_table = final_filter_table(&gm, &f).unwrap();
        let l = g.lattice();
        let candidates = [
            FuzzyFilter::point(g.clone(), 0),
            FuzzyFilter::point(g.clone(), 1),
            min_style_filter(&g),
        ];
        for omega in &candidates {
            let continuous = check_continuity(&gm, &f, omega).unwrap().holds;
            let below = omega
                .table()
                .iter()
                .zip(&final_table)
                .all(|(&a, &b)| l.leq(a, b));
            assert_eq!(continuous, below);
        }
    }

    #[test]
    fn final_characterization_trichotomy() {
        let g = bool_pair();
        let gm = GroundMorphism::identity(g.clone());
        let f = FuzzyFilter::point(g.clone(), 0);

        let exact = final_filter(&gm, &f).unwrap();
        let report = final_characterization(&gm, &f, &exact).unwrap();
        assert_eq!(
            report,
            FinalCharacterization {
                continuous: true,
                leq: true,
                eq: true
            }
        );

        let below = min_style_filter(&g);
        let report = final_characterization(&gm, &f, &below).unwrap();
        assert_eq!(
            report,
            FinalCharacterization {
                continuous: true,
                leq: true,
                eq: false
            }
        );

        let above_src = min_style_filter(&g);
        let report = final_characterization(&gm, &above_src, &f).unwrap();
        assert_eq!(
            report,
            FinalCharacterization {
                continuous: false,
                leq: false,
                eq: false
            }
        );
    }

    #[test]
    fn initial_filter_relabels_under_a_bijection() {
        let b = bundled::bool2();
        let x = ground(&["x1", "x2"], b.clone());
        let y = ground(&["y1", "y2"], b.clone());
        // Swap the points.
        let gm = GroundMorphism::check(
            x.clone(),
            y.clone(),
            vec![1, 0],
            QmlMorphism::identity(b),
        )
        .unwrap();
        let tgt = FuzzyFilter::point(y, 0);
        let init = initial_filter(&gm, &tgt).unwrap();
        let expected = FuzzyFilter::point(x, 1);
        assert_eq!(init.table(), expected.table());
    }

    #[test]
    fn initial_filter_documented_counterexample_is_exact() {
        let b = bundled::bool2();
        let x = ground(&["x1", "x2"], b.clone());
        let y = ground(&["y"], b.clone());
        let gm =
            GroundMorphism::check(x, y.clone(), vec![0, 0], QmlMorphism::identity(b)).unwrap();
        let tgt = FuzzyFilter::point(y, 0);
        let err = initial_filter(&gm, &tgt).unwrap_err();
        let failure = match err {
            FilterError::AxiomViolation(f) => f,
            other => panic!("expected an axiom violation, got {other:?}"),
        };
        assert_eq!(failure.candidate, vec!["0", "1", "1", "1"]);
        assert!(!failure.point_map_injective);
        match &failure.violation {
            FilterViolation::TensorAxiom { f, g, .. } => {
                assert_eq!(f.values, vec!["1", "0"]);
                assert_eq!(g.values, vec!["0", "1"]);
            }
            other => panic!("expected a tensor violation, got {other:?}"),
        }
    }

    #[test]
    fn initial_filter_across_a_lattice_change_validates() {
        let b = bundled::bool2();
        let c3 = bundled::chain3();
        let x = ground(&["p"], c3.clone());
        let y = ground(&["p"], b.clone());
        let phi = QmlMorphism::check(b, c3, vec![0, 2]).unwrap();
        let gm = GroundMorphism::check(x, y.clone(), vec![0], phi).unwrap();
        let tgt = FuzzyFilter::point(y, 0);
        let init = initial_filter(&gm, &tgt).unwrap();
        assert_eq!(init.table(), &[0, 2, 2]);
    }

    #[test]
    fn initial_filter_preconditions() {
        let b = bundled::bool2();
        let x = ground(&["x"], b.clone());
        let y = ground(&["y1", "y2"], b.clone());
        let gm = GroundMorphism::check(
            x,
            y.clone(),
            vec![0],
            QmlMorphism::identity(b),
        )
        .unwrap();
        let tgt = FuzzyFilter::point(y, 0);
        assert!(matches!(
            initial_filter(&gm, &tgt),
            Err(FilterError::NotOnto)
        ));

        let src_l = bundled::lifted_diamond_trivial_tensor();
        let tgt_l = bundled::diamond_trivial_tensor();
        let x = ground(&["p"], src_l.clone());
        let y = ground(&["p"], tgt_l.clone());
        let phi = QmlMorphism::check(tgt_l, src_l, vec![0, 2, 3, 4]).unwrap();
        let gm = GroundMorphism::check(x, y.clone(), vec![0], phi).unwrap();
        // With the trivial tensor the min-style table is a filter.
        let tgt_space = y.fn_space().unwrap();
        let l = y.lattice();
        let table: Vec<usize> = (0..tgt_space.len())
            .map(|i| {
                if i == tgt_space.constant(l.top()) {
                    l.top()
                } else {
                    l.bottom()
                }
            })
            .collect();
        let tgt = FuzzyFilter::check(y, table).unwrap();
        assert!(matches!(
            initial_filter(&gm, &tgt),
            Err(FilterError::NoCoAdjoint(_))
        ));
    }
}
