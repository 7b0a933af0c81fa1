//! Theorem suites: every structural claim of the setting executed as a
//! check on concrete instances, over an instance document or over seeded
//! random instances drawn from the built-in lattices.

use crate::bundled;
use crate::cli::format::InstanceDocument;
use crate::cli::report::CheckResult;
use crate::filter::{
    backward_index, check_continuity, compose_check, final_characterization, final_filter,
    final_filter_table, initial_filter, meet_filters, FilterError, FuzzyFilter,
};
use crate::ground::{FuzzySet, GroundMorphism, GroundSet};
use crate::lattice::{enumerate_qml_morphisms, QmlLattice, QmlMorphism, Residuum};
use crate::topology::{
    check_topo_continuity, enumerate_topologies, filter_to_topology, final_topology,
    final_topology_table, functor_t_check, join_axiom_witness, join_tables,
    tensor_axiom_witness, FuzzyTopology, TopoOptions, TopoViolation,
};
use crate::ultra::{
    chain_join, enumerate_filters, filter_leq, image_filter, maximal_filters,
    ultrafilter_characterization, UltraError,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::collections::HashMap;
use std::sync::Arc;

/// Cap on DFS nodes for a reusable filter or topology pool; grounds whose
/// enumeration does not fit are handled by sampling instead.
const POOL_BUDGET_FLOOR: u64 = 200_000;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(index)))
}

#[derive(Debug, Clone, Serialize)]
pub struct GmDescriptor {
    pub source_lattice: String,
    pub target_lattice: String,
    pub source_points: usize,
    pub target_points: usize,
    pub point_map: Vec<usize>,
    pub lattice_map: Vec<String>,
    pub injective: bool,
    pub onto: bool,
}

fn describe(gm: &GroundMorphism, src_lattice: &str, tgt_lattice: &str) -> GmDescriptor {
    GmDescriptor {
        source_lattice: src_lattice.to_string(),
        target_lattice: tgt_lattice.to_string(),
        source_points: gm.source().n_points(),
        target_points: gm.target().n_points(),
        point_map: gm.point_map().to_vec(),
        lattice_map: gm
            .lattice_map()
            .map()
            .iter()
            .map(|&v| gm.lattice_map().target().element_name(v).to_string())
            .collect(),
        injective: gm.is_injective(),
        onto: gm.is_onto(),
    }
}

/// Shared pools for the random suites: the built-in lattices, every
/// validated morphism between each ordered pair, and filter and topology
/// enumerations per ground shape.
struct RandomCtx {
    lattices: Vec<(&'static str, Arc<QmlLattice>)>,
    morphisms: HashMap<(usize, usize), Vec<QmlMorphism>>,
    filter_pools: HashMap<(usize, usize), Option<Vec<FuzzyFilter>>>,
    topo_pools: HashMap<(usize, usize), Option<Vec<FuzzyTopology>>>,
    budget: u64,
    opts: TopoOptions,
}

impl RandomCtx {
    fn new(budget: u64, opts: TopoOptions) -> Self {
        let lattices = bundled::suite_pool();
        let mut morphisms = HashMap::new();
        for (i, (_, src)) in lattices.iter().enumerate() {
            for (j, (_, tgt)) in lattices.iter().enumerate() {
                morphisms.insert((i, j), enumerate_qml_morphisms(src, tgt));
            }
        }
        RandomCtx {
            lattices,
            morphisms,
            filter_pools: HashMap::new(),
            topo_pools: HashMap::new(),
            budget,
            opts,
        }
    }

    fn ground(&self, li: usize, n: usize) -> GroundSet {
        let points = (0..n).map(|i| format!("p{i}")).collect();
        GroundSet::new(points, self.lattices[li].1.clone()).expect("generated grounds are valid")
    }

    fn filter_pool(&mut self, li: usize, n: usize) -> Option<&Vec<FuzzyFilter>> {
        let budget = self.budget.max(POOL_BUDGET_FLOOR);
        if !self.filter_pools.contains_key(&(li, n)) {
            let ground = self.ground(li, n);
            let pool = match enumerate_filters(&ground, budget) {
                Ok(poset) => Some(poset.filters().to_vec()),
                Err(UltraError::BudgetExceeded { .. }) => None,
                Err(e) => panic!("filter enumeration failed unexpectedly: {e}"),
            };
            self.filter_pools.insert((li, n), pool);
        }
        self.filter_pools[&(li, n)].as_ref()
    }

    fn topo_pool(&mut self, li: usize, n: usize) -> Option<&Vec<FuzzyTopology>> {
        let budget = self.budget.max(POOL_BUDGET_FLOOR);
        if !self.topo_pools.contains_key(&(li, n)) {
            let ground = self.ground(li, n);
            let space_len = ground.fn_space().map(|s| s.len()).unwrap_or(usize::MAX);
            let pool = if space_len > crate::topology::EXHAUSTIVE_SUBSET_LIMIT {
                None
            } else {
                match enumerate_topologies(&ground, budget, &self.opts) {
                    Ok(ts) => Some(ts),
                    Err(crate::topology::TopoError::BudgetExceeded { .. }) => None,
                    Err(e) => panic!("topology enumeration failed unexpectedly: {e}"),
                }
            };
            self.topo_pools.insert((li, n), pool);
        }
        self.topo_pools[&(li, n)].as_ref()
    }

    fn draw_filter(&mut self, rng: &mut ChaCha8Rng, li: usize, n: usize) -> FuzzyFilter {
        if let Some(pool) = self.filter_pool(li, n) {
            return pool[rng.gen_range(0..pool.len())].clone();
        }
        let ground = self.ground(li, n);
        random_filter_dfs(rng, &ground)
            .unwrap_or_else(|| min_style_filter(&ground).expect("min-style filter exists"))
    }

    fn draw_morphism(&self, rng: &mut ChaCha8Rng, mi: usize, li: usize) -> QmlMorphism {
        let pool = &self.morphisms[&(mi, li)];
        pool[rng.gen_range(0..pool.len())].clone()
    }
}

/// The filter holding only the constant-top set. Valid on every built-in
/// lattice; `None` on exotic tensors that leak above bottom.
fn min_style_filter(ground: &GroundSet) -> Option<FuzzyFilter> {
    let space = ground.fn_space().ok()?;
    let l = ground.lattice();
    let top_idx = space.constant(l.top());
    let table = (0..space.len())
        .map(|i| if i == top_idx { l.top() } else { l.bottom() })
        .collect();
    FuzzyFilter::check(ground.clone(), table).ok()
}

/// Random depth-first search for a valid filter table: positions in
/// canonical order, values in a per-node random order, monotonicity pruned,
/// the tensor axiom checked at the leaves. Node-capped.
fn random_filter_dfs(rng: &mut ChaCha8Rng, ground: &GroundSet) -> Option<FuzzyFilter> {
    let space = ground.fn_space().ok()?;
    let l = ground.lattice().clone();
    let s = space.len();
    let k = l.size();
    let top_idx = space.constant(l.top());
    let bottom_idx = space.constant(l.bottom());

    let mut fn_leq = vec![false; s * s];
    for i in 0..s {
        for j in 0..s {
            fn_leq[i * s + j] = space.leq(&l, i, j);
        }
    }

    let mut nodes: u64 = 0;
    let mut table = vec![0usize; s];
    // Stack of per-depth shuffled value queues.
    let mut queues: Vec<Vec<usize>> = Vec::with_capacity(s + 1);
    let mut first_queue: Vec<usize> = (0..k).collect();
    first_queue.shuffle(rng);
    queues.push(first_queue);

    while let Some(queue) = queues.last_mut() {
        let depth = queues.len() - 1;
        if depth == s {
            if let Ok(f) = FuzzyFilter::check(ground.clone(), table.clone()) {
                return Some(f);
            }
            queues.pop();
            continue;
        }
        match queue.pop() {
            None => {
                queues.pop();
            }
            Some(value) => {
                nodes += 1;
                if nodes > 200_000 {
                    return None;
                }
                let forced_ok = (depth != top_idx || value == l.top())
                    && (depth != bottom_idx || value == l.bottom());
                let ok = forced_ok
                    && (0..depth).all(|j| {
                        (!fn_leq[j * s + depth] || l.leq(table[j], value))
                            && (!fn_leq[depth * s + j] || l.leq(value, table[j]))
                    });
                if ok {
                    table[depth] = value;
                    let mut next: Vec<usize> = (0..k).collect();
                    next.shuffle(rng);
                    queues.push(next);
                }
            }
        }
    }
    None
}

/// Continuity of `gm` from a source filter to a raw target table, in both
/// forms. Works on tables that may not be valid filters.
fn raw_continuity(
    gm: &GroundMorphism,
    src: &FuzzyFilter,
    tgt_table: &[usize],
) -> (bool, bool) {
    let src_space = gm.source().fn_space().expect("space fits");
    let tgt_space = gm.target().fn_space().expect("space fits");
    let src_l = gm.source().lattice();
    let tgt_l = gm.target().lattice();
    let radj = gm.lattice_map().right_adjoint();
    let mut primal = true;
    let mut adjoint = true;
    for b in 0..tgt_space.len() {
        let back = backward_index(gm, &tgt_space, &src_space, b);
        let degree_back = src.value(back);
        if !src_l.leq(gm.lattice_map().apply(tgt_table[b]), degree_back) {
            primal = false;
        }
        if !tgt_l.leq(tgt_table[b], radj[degree_back]) {
            adjoint = false;
        }
    }
    (primal, adjoint)
}

/// Right-adjoint and co-adjoint laws for one morphism, plus agreement of the
/// forward powerset operator with its co-adjoint form on every source
/// fuzzy set. Returns the first failure message.
fn adjunction_failure(gm: &GroundMorphism) -> Option<String> {
    let m = gm.lattice_map();
    let src_l = m.source();
    let tgt_l = m.target();
    let radj = m.right_adjoint();
    for b in 0..src_l.size() {
        for a in 0..tgt_l.size() {
            if tgt_l.leq(m.apply(b), a) != src_l.leq(b, radj[a]) {
                return Some(format!(
                    "right adjoint law fails at ({}, {})",
                    src_l.element_name(b),
                    tgt_l.element_name(a)
                ));
            }
        }
    }
    if let Ok(ladj) = m.co_adjoint() {
        for a in 0..tgt_l.size() {
            for b in 0..src_l.size() {
                if src_l.leq(ladj[a], b) != tgt_l.leq(a, m.apply(b)) {
                    return Some(format!(
                        "co-adjoint law fails at ({}, {})",
                        tgt_l.element_name(a),
                        src_l.element_name(b)
                    ));
                }
            }
        }
        let space = gm.source().fn_space().expect("space fits");
        for ai in 0..space.len() {
            let a = FuzzySet::new(gm.source().clone(), space.decode(ai)).expect("decodes");
            let via_def = gm.forward_powerset(&a).expect("grounds match");
            let pushed = gm.zadeh_forward(&a).expect("grounds match");
            let via_adj: Vec<usize> = pushed.values().iter().map(|&v| ladj[v]).collect();
            if via_def.values() != via_adj.as_slice() {
                return Some(format!(
                    "forward powerset disagrees with the co-adjoint composition at index {ai}"
                ));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Random suites
// ---------------------------------------------------------------------------

/// Final-filter theorem suite over seeded random instances: output axioms,
/// continuity into the output, the continuity-iff-below characterization
/// against enumerated target filters, functoriality into topologies, and the
/// adjunction laws of every drawn morphism.
pub fn random_final_filter_suite(
    seed: u64,
    count: usize,
    budget: u64,
    opts: &TopoOptions,
) -> Vec<CheckResult> {
    let mut ctx = RandomCtx::new(budget, *opts);
    let mut out = Vec::new();
    for i in 0..count {
        let mut rng = instance_rng(seed, i as u64);
        let li = rng.gen_range(0..ctx.lattices.len());
        let mi = rng.gen_range(0..ctx.lattices.len());
        let nx = rng.gen_range(1..=3);
        let ny = rng.gen_range(1..=3);
        let x = ctx.ground(li, nx);
        let y = ctx.ground(mi, ny);
        let phi = ctx.draw_morphism(&mut rng, mi, li);
        let point_map = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
        let gm = GroundMorphism::check(x, y, point_map, phi).expect("generated morphism is valid");
        let f = ctx.draw_filter(&mut rng, li, nx);
        let desc = describe(&gm, ctx.lattices[li].0, ctx.lattices[mi].0);
        let label = format!("#{i}");

        // Adjunction laws for the drawn morphism.
        match adjunction_failure(&gm) {
            None => out.push(CheckResult::pass("adjunction", format!("adjunction[{label}]"))),
            Some(msg) => out.push(CheckResult::violation(
                "adjunction",
                format!("adjunction[{label}]"),
                json!({ "failure": msg, "instance": desc }),
            )),
        }

        // Clause 1: the final filter table passes the filter axioms.
        let table = final_filter_table(&gm, &f).expect("grounds match");
        match final_filter(&gm, &f) {
            Ok(_) => out.push(CheckResult::pass(
                "final-filter-1",
                format!("final-filter-1[{label}]"),
            )),
            Err(FilterError::TheoremViolation(t)) => out.push(CheckResult::violation(
                "final-filter-1",
                format!("final-filter-1[{label}]"),
                json!({ "failure": t.to_string(), "instance": desc, "source_filter": f.table_names() }),
            )),
            Err(e) => out.push(CheckResult::violation(
                "final-filter-1",
                format!("final-filter-1[{label}]"),
                json!({ "failure": e.to_string(), "instance": desc }),
            )),
        }

        // Clause 2: continuity into the final table.
        let (primal, adjoint) = raw_continuity(&gm, &f, &table);
        if primal {
            out.push(CheckResult::pass(
                "final-filter-2",
                format!("final-filter-2[{label}]"),
            ));
        } else {
            out.push(CheckResult::violation(
                "final-filter-2",
                format!("final-filter-2[{label}]"),
                json!({ "instance": desc }),
            ));
        }
        let mut forms_disagree = primal != adjoint;

        // Clause 3: continuity iff pointwise below, over every enumerated
        // target filter.
        let tgt_l = ctx.lattices[mi].1.clone();
        let mut continuous_targets: Vec<FuzzyFilter> = Vec::new();
        match ctx.filter_pool(mi, ny) {
            Some(pool) => {
                let pool = pool.clone();
                let mut mismatch = None;
                for omega in &pool {
                    let check = check_continuity(&gm, &f, omega).expect("grounds match");
                    if !check.forms_agree() {
                        forms_disagree = true;
                    }
                    let below = omega
                        .table()
                        .iter()
                        .zip(&table)
                        .all(|(&a, &b)| tgt_l.leq(a, b));
                    if check.holds != below {
                        mismatch = Some(json!({
                            "instance": desc,
                            "target_filter": omega.table_names(),
                            "continuous": check.holds,
                            "below_final": below,
                        }));
                        break;
                    }
                    if check.holds {
                        continuous_targets.push(omega.clone());
                    }
                }
                match mismatch {
                    None => out.push(
                        CheckResult::pass("final-filter-3", format!("final-filter-3[{label}]"))
                            .with_detail(json!({ "targets": pool.len() })),
                    ),
                    Some(detail) => out.push(CheckResult::violation(
                        "final-filter-3",
                        format!("final-filter-3[{label}]"),
                        detail,
                    )),
                }
            }
            None => out.push(
                CheckResult::pass("final-filter-3", format!("final-filter-3[{label}]"))
                    .with_detail(json!({ "skipped": "target enumeration over budget" })),
            ),
        }

        // Functoriality into topologies on every continuous pair found.
        if continuous_targets.is_empty() {
            if let Ok(final_f) = final_filter(&gm, &f) {
                continuous_targets.push(final_f);
            }
        }
        let mut functor_failure = None;
        for omega in &continuous_targets {
            let check = functor_t_check(&gm, &f, omega, opts).expect("legs are continuous");
            if !check.forms_agree() {
                forms_disagree = true;
            }
            if !check.holds {
                functor_failure = Some(json!({
                    "instance": desc,
                    "target_filter": omega.table_names(),
                    "witness": check.witness,
                }));
                break;
            }
        }
        match functor_failure {
            None => out.push(
                CheckResult::pass("functor-T", format!("functor-T[{label}]"))
                    .with_detail(json!({ "pairs": continuous_targets.len() })),
            ),
            Some(detail) => out.push(CheckResult::violation(
                "functor-T",
                format!("functor-T[{label}]"),
                detail,
            )),
        }

        // Agreement of the direct and adjoint continuity forms everywhere.
        if forms_disagree {
            out.push(CheckResult::violation(
                "alt-continuity",
                format!("alt-continuity[{label}]"),
                json!({ "instance": desc }),
            ));
        } else {
            out.push(CheckResult::pass(
                "alt-continuity",
                format!("alt-continuity[{label}]"),
            ));
        }
    }
    out
}

/// Composition-closure suite: both legs continuous by construction, the
/// composite rechecked from scratch.
pub fn random_composition_suite(seed: u64, count: usize, budget: u64) -> Vec<CheckResult> {
    let opts = TopoOptions::default();
    let mut ctx = RandomCtx::new(budget, opts);
    let mut out = Vec::new();
    for i in 0..count {
        let mut rng = instance_rng(seed, 1_000_000 + i as u64);
        let li = rng.gen_range(0..ctx.lattices.len());
        let mi = rng.gen_range(0..ctx.lattices.len());
        let ni = rng.gen_range(0..ctx.lattices.len());
        let nx = rng.gen_range(1..=3);
        let ny = rng.gen_range(1..=3);
        let nz = rng.gen_range(1..=3);
        let x = ctx.ground(li, nx);
        let y = ctx.ground(mi, ny);
        let z = ctx.ground(ni, nz);
        let phi1 = ctx.draw_morphism(&mut rng, mi, li);
        let phi2 = ctx.draw_morphism(&mut rng, ni, mi);
        let f1_map = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
        let f2_map = (0..ny).map(|_| rng.gen_range(0..nz)).collect();
        let gm1 = GroundMorphism::check(x, y.clone(), f1_map, phi1).expect("valid");
        let gm2 = GroundMorphism::check(y.clone(), z.clone(), f2_map, phi2).expect("valid");
        let f1 = ctx.draw_filter(&mut rng, li, nx);
        let label = format!("#{i}");

        let pick_target = |ctx: &mut RandomCtx,
                           rng: &mut ChaCha8Rng,
                           gm: &GroundMorphism,
                           src: &FuzzyFilter,
                           lat: usize,
                           n: usize,
                           ground: &GroundSet|
         -> FuzzyFilter {
            if let Ok(f) = final_filter(gm, src) {
                return f;
            }
            if let Some(pool) = ctx.filter_pool(lat, n) {
                let mut order: Vec<usize> = (0..pool.len()).collect();
                order.shuffle(rng);
                for idx in order {
                    if check_continuity(gm, src, &pool[idx]).expect("grounds match").holds {
                        return pool[idx].clone();
                    }
                }
            }
            min_style_filter(ground).expect("min-style filter exists on built-in lattices")
        };

        let f2 = pick_target(&mut ctx, &mut rng, &gm1, &f1, mi, ny, &y);
        let f3 = pick_target(&mut ctx, &mut rng, &gm2, &f2, ni, nz, &z);

        match compose_check(&gm1, &f1, &f2, &gm2, &f3) {
            Ok(check) => {
                if check.holds && check.forms_agree() {
                    out.push(CheckResult::pass(
                        "composition",
                        format!("composition[{label}]"),
                    ));
                } else {
                    out.push(CheckResult::violation(
                        "composition",
                        format!("composition[{label}]"),
                        json!({
                            "first_leg": describe(&gm1, ctx.lattices[li].0, ctx.lattices[mi].0),
                            "second_leg": describe(&gm2, ctx.lattices[mi].0, ctx.lattices[ni].0),
                            "holds": check.holds,
                            "forms_agree": check.forms_agree(),
                            "witness": check.witness,
                        }),
                    ));
                }
            }
            Err(e) => out.push(CheckResult::violation(
                "composition",
                format!("composition[{label}]"),
                json!({ "error": e.to_string() }),
            )),
        }
    }
    out
}

/// Initial-filter suite: onto point maps, lattice maps with a co-adjoint,
/// every axiom violation reported with its witnesses and whether the point
/// map was injective.
pub fn random_initial_filter_suite(seed: u64, count: usize, budget: u64) -> Vec<CheckResult> {
    let opts = TopoOptions::default();
    let mut ctx = RandomCtx::new(budget, opts);
    let mut out = Vec::new();
    for i in 0..count {
        let mut rng = instance_rng(seed, 2_000_000 + i as u64);
        let li = rng.gen_range(0..ctx.lattices.len());
        let mi = rng.gen_range(0..ctx.lattices.len());
        let nx = rng.gen_range(1..=3);
        let ny = rng.gen_range(1..=nx);
        let x = ctx.ground(li, nx);
        let y = ctx.ground(mi, ny);
        let with_co_adjoint: Vec<QmlMorphism> = ctx.morphisms[&(mi, li)]
            .iter()
            .filter(|m| m.co_adjoint().is_ok())
            .cloned()
            .collect();
        if with_co_adjoint.is_empty() {
            continue;
        }
        let phi = with_co_adjoint[rng.gen_range(0..with_co_adjoint.len())].clone();
        let point_map = loop {
            let candidate: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
            let mut seen = vec![false; ny];
            for &v in &candidate {
                seen[v] = true;
            }
            if seen.iter().all(|&s| s) {
                break candidate;
            }
        };
        let gm = GroundMorphism::check(x, y, point_map, phi).expect("valid");
        let tgt = ctx.draw_filter(&mut rng, mi, ny);
        let desc = describe(&gm, ctx.lattices[li].0, ctx.lattices[mi].0);
        let label = format!("#{i}");

        match initial_filter(&gm, &tgt) {
            Ok(_) => out.push(
                CheckResult::pass("initial-filter", format!("initial-filter[{label}]"))
                    .with_detail(json!({ "point_map_injective": gm.is_injective() })),
            ),
            Err(FilterError::AxiomViolation(failure)) => out.push(CheckResult::expected_failure(
                "initial-filter",
                format!("initial-filter[{label}]"),
                json!({
                    "point_map_injective": failure.point_map_injective,
                    "violation": failure.violation,
                    "candidate": failure.candidate,
                    "instance": desc,
                    "target_filter": tgt.table_names(),
                }),
            )),
            Err(e) => out.push(CheckResult::violation(
                "initial-filter",
                format!("initial-filter[{label}]"),
                json!({ "error": e.to_string(), "instance": desc }),
            )),
        }
    }
    out
}

/// Final-topology theorem suite: output axioms, continuity, the iff
/// characterization over enumerated target topologies, and the join-of-all-
/// continuous-topologies claim on small targets.
pub fn random_final_topology_suite(
    seed: u64,
    count: usize,
    budget: u64,
    opts: &TopoOptions,
) -> Vec<CheckResult> {
    let mut ctx = RandomCtx::new(budget, *opts);
    let mut out = Vec::new();
    for i in 0..count {
        let mut rng = instance_rng(seed, 3_000_000 + i as u64);
        let li = rng.gen_range(0..ctx.lattices.len());
        let mi = rng.gen_range(0..ctx.lattices.len());
        let nx = rng.gen_range(1..=3);
        let ny = rng.gen_range(1..=3);
        let x = ctx.ground(li, nx);
        let y = ctx.ground(mi, ny);
        let phi = ctx.draw_morphism(&mut rng, mi, li);
        let point_map = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
        let gm = GroundMorphism::check(x, y.clone(), point_map, phi).expect("valid");
        let desc = describe(&gm, ctx.lattices[li].0, ctx.lattices[mi].0);
        let label = format!("#{i}");

        // Source topology: induced by a random filter, or drawn from the
        // enumerated pool when available.
        let from_pool = rng.gen_bool(0.5);
        let upsilon = match ctx.topo_pool(li, nx) {
            Some(pool) if from_pool && !pool.is_empty() => {
                pool[rng.gen_range(0..pool.len())].clone()
            }
            _ => {
                let f = ctx.draw_filter(&mut rng, li, nx);
                filter_to_topology(&f, opts).expect("induced topologies validate")
            }
        };

        let table = final_topology_table(&gm, &upsilon).expect("grounds match");
        match final_topology(&gm, &upsilon, opts) {
            Ok(_) => out.push(CheckResult::pass(
                "topo-final-1",
                format!("topo-final-1[{label}]"),
            )),
            Err(e) => out.push(CheckResult::violation(
                "topo-final-1",
                format!("topo-final-1[{label}]"),
                json!({ "failure": e.to_string(), "instance": desc, "source_topology": upsilon.table_names() }),
            )),
        }

        let src_space = gm.source().fn_space().expect("fits");
        let tgt_space = gm.target().fn_space().expect("fits");
        let src_l = gm.source().lattice().clone();
        let tgt_l = gm.target().lattice().clone();
        let radj = gm.lattice_map().right_adjoint();
        let mut primal = true;
        let mut adjoint = true;
        for b in 0..tgt_space.len() {
            let back = backward_index(&gm, &tgt_space, &src_space, b);
            let degree_back = upsilon.value(back);
            if !src_l.leq(gm.lattice_map().apply(table[b]), degree_back) {
                primal = false;
            }
            if !tgt_l.leq(table[b], radj[degree_back]) {
                adjoint = false;
            }
        }
        if primal {
            out.push(CheckResult::pass(
                "topo-final-2",
                format!("topo-final-2[{label}]"),
            ));
        } else {
            out.push(CheckResult::violation(
                "topo-final-2",
                format!("topo-final-2[{label}]"),
                json!({ "instance": desc }),
            ));
        }
        let mut forms_disagree = primal != adjoint;

        match ctx.topo_pool(mi, ny) {
            Some(pool) => {
                let pool = pool.clone();
                let mut mismatch = None;
                let mut continuous_tables: Vec<&[usize]> = Vec::new();
                for gamma in &pool {
                    let check = check_topo_continuity(&gm, &upsilon, gamma).expect("grounds match");
                    if !check.forms_agree() {
                        forms_disagree = true;
                    }
                    let below = gamma
                        .table()
                        .iter()
                        .zip(&table)
                        .all(|(&a, &b)| tgt_l.leq(a, b));
                    if check.holds != below {
                        mismatch = Some(json!({
                            "instance": desc,
                            "target_topology": gamma.table_names(),
                            "continuous": check.holds,
                            "below_final": below,
                        }));
                        break;
                    }
                    if check.holds {
                        continuous_tables.push(gamma.table());
                    }
                }
                match mismatch {
                    None => out.push(
                        CheckResult::pass("topo-final-3", format!("topo-final-3[{label}]"))
                            .with_detail(json!({ "targets": pool.len() })),
                    ),
                    Some(detail) => out.push(CheckResult::violation(
                        "topo-final-3",
                        format!("topo-final-3[{label}]"),
                        detail,
                    )),
                }
                // Join of all continuous topologies, on small targets.
                if tgt_space.len() <= 8 {
                    let joined = join_tables(&tgt_l, &continuous_tables, table.len());
                    if joined == table {
                        out.push(CheckResult::pass(
                            "topo-final-4",
                            format!("topo-final-4[{label}]"),
                        ));
                    } else {
                        out.push(CheckResult::violation(
                            "topo-final-4",
                            format!("topo-final-4[{label}]"),
                            json!({
                                "instance": desc,
                                "final_table": table,
                                "join_of_continuous": joined,
                            }),
                        ));
                    }
                }
            }
            None => out.push(
                CheckResult::pass("topo-final-3", format!("topo-final-3[{label}]"))
                    .with_detail(json!({ "skipped": "target enumeration over budget" })),
            ),
        }

        if forms_disagree {
            out.push(CheckResult::violation(
                "alt-continuity",
                format!("alt-continuity[topo-{label}]"),
                json!({ "instance": desc }),
            ));
        } else {
            out.push(CheckResult::pass(
                "alt-continuity",
                format!("alt-continuity[topo-{label}]"),
            ));
        }

        match adjunction_failure(&gm) {
            None => out.push(CheckResult::pass(
                "adjunction",
                format!("adjunction[topo-{label}]"),
            )),
            Some(msg) => out.push(CheckResult::violation(
                "adjunction",
                format!("adjunction[topo-{label}]"),
                json!({ "failure": msg, "instance": desc }),
            )),
        }
    }
    out
}

/// Runs all four random suites with a shared seed.
pub fn random_suite(seed: u64, count: usize, budget: u64, opts: &TopoOptions) -> Vec<CheckResult> {
    let mut out = random_final_filter_suite(seed, count, budget, opts);
    out.extend(random_composition_suite(seed, count, budget));
    out.extend(random_initial_filter_suite(seed, count, budget));
    out.extend(random_final_topology_suite(seed, count.div_ceil(2), budget, opts));
    out
}

// ---------------------------------------------------------------------------
// Document-driven theorem verification
// ---------------------------------------------------------------------------

/// Named filters available on a ground of the document: the enumeration when
/// it fits the budget, otherwise the document's own filters plus the point
/// filters.
fn doc_filter_pool(
    doc: &InstanceDocument,
    ground_name: &str,
    ground: &GroundSet,
    budget: u64,
) -> (Vec<(String, FuzzyFilter)>, bool) {
    match enumerate_filters(ground, budget) {
        Ok(poset) => (
            poset
                .filters()
                .iter()
                .enumerate()
                .map(|(i, f)| (format!("enum#{i}"), f.clone()))
                .collect(),
            true,
        ),
        Err(_) => {
            let mut pool: Vec<(String, FuzzyFilter)> = doc
                .filters
                .iter()
                .filter(|(_, f)| f.ground() == ground)
                .map(|(n, f)| (n.clone(), f.clone()))
                .collect();
            for p in 0..ground.n_points() {
                pool.push((
                    format!("point[{}]", ground.point_name(p)),
                    FuzzyFilter::point(ground.clone(), p),
                ));
            }
            if let Some(m) = min_style_filter(ground) {
                pool.push(("min-style".into(), m));
            }
            let _ = ground_name;
            (pool, false)
        }
    }
}

/// Runs every theorem tag against the structures of an instance document.
pub fn verify_theorems(doc: &InstanceDocument, opts: &TopoOptions, budget: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let lax = TopoOptions {
        include_empty_join: false,
        ..*opts
    };

    let mut filter_pools: HashMap<String, (Vec<(String, FuzzyFilter)>, bool)> = HashMap::new();
    for (gname, ground) in &doc.grounds {
        filter_pools.insert(gname.clone(), doc_filter_pool(doc, gname, ground, budget));
    }
    let mut topo_pools: HashMap<String, Option<Vec<FuzzyTopology>>> = HashMap::new();
    for (gname, ground) in &doc.grounds {
        let space_len = ground.fn_space().map(|s| s.len()).unwrap_or(usize::MAX);
        let pool = if space_len > crate::topology::EXHAUSTIVE_SUBSET_LIMIT {
            None
        } else {
            enumerate_topologies(ground, budget, opts).ok()
        };
        topo_pools.insert(gname.clone(), pool);
    }

    // Per-ground tags.
    for (gname, ground) in &doc.grounds {
        let (pool, enumerated) = &filter_pools[gname];

        // filter-meet: pairwise meets validate and are greatest lower bounds.
        let mut meet_failure = None;
        'meets: for (n1, f1) in pool {
            for (n2, f2) in pool {
                match meet_filters(&[f1.clone(), f2.clone()]) {
                    Ok(met) => {
                        let glb_ok = filter_leq(&met, f1).unwrap()
                            && filter_leq(&met, f2).unwrap()
                            && pool.iter().all(|(_, w)| {
                                !(filter_leq(w, f1).unwrap() && filter_leq(w, f2).unwrap())
                                    || filter_leq(w, &met).unwrap()
                            });
                        if !glb_ok {
                            meet_failure =
                                Some(json!({ "pair": [n1, n2], "issue": "not the greatest lower bound" }));
                            break 'meets;
                        }
                    }
                    Err(e) => {
                        meet_failure = Some(json!({ "pair": [n1, n2], "error": e.to_string() }));
                        break 'meets;
                    }
                }
            }
        }
        // The meet of the whole family as well.
        if meet_failure.is_none() && !pool.is_empty() {
            let all: Vec<FuzzyFilter> = pool.iter().map(|(_, f)| f.clone()).collect();
            if let Err(e) = meet_filters(&all) {
                meet_failure = Some(json!({ "family": "all", "error": e.to_string() }));
            }
        }
        match meet_failure {
            None => out.push(
                CheckResult::pass("filter-meet", format!("filter-meet[{gname}]"))
                    .with_detail(json!({ "filters": pool.len(), "enumerated": enumerated })),
            ),
            Some(detail) => out.push(CheckResult::violation(
                "filter-meet",
                format!("filter-meet[{gname}]"),
                detail,
            )),
        }

        // chain-join: joins of comparable pairs validate and stay inside the
        // pool as least upper bounds; incomparable pairs are rejected.
        let mut chain_failure = None;
        'chains: for (i, (n1, f1)) in pool.iter().enumerate() {
            for (n2, f2) in &pool[i..] {
                let comparable =
                    filter_leq(f1, f2).unwrap() || filter_leq(f2, f1).unwrap();
                let result = chain_join(&[f1.clone(), f2.clone()]);
                match (comparable, result) {
                    (true, Ok(joined)) => {
                        if !(filter_leq(f1, &joined).unwrap() && filter_leq(f2, &joined).unwrap())
                        {
                            chain_failure = Some(
                                json!({ "pair": [n1, n2], "issue": "join is not an upper bound" }),
                            );
                            break 'chains;
                        }
                        if *enumerated
                            && !pool.iter().any(|(_, w)| {
                                filter_leq(f1, w).unwrap()
                                    && filter_leq(f2, w).unwrap()
                                    && filter_leq(w, &joined).unwrap()
                                    && filter_leq(&joined, w).unwrap()
                            })
                        {
                            chain_failure = Some(
                                json!({ "pair": [n1, n2], "issue": "join left the filter poset" }),
                            );
                            break 'chains;
                        }
                    }
                    (true, Err(e)) => {
                        chain_failure = Some(json!({ "pair": [n1, n2], "error": e.to_string() }));
                        break 'chains;
                    }
                    (false, Err(UltraError::NotAChain { .. })) => {}
                    (false, other) => {
                        chain_failure = Some(json!({
                            "pair": [n1, n2],
                            "issue": "incomparable pair was not rejected",
                            "got": format!("{other:?}"),
                        }));
                        break 'chains;
                    }
                }
            }
        }
        match chain_failure {
            None => out.push(CheckResult::pass(
                "chain-join",
                format!("chain-join[{gname}]"),
            )),
            Some(detail) => out.push(CheckResult::violation(
                "chain-join",
                format!("chain-join[{gname}]"),
                detail,
            )),
        }

        // ultrafilter-char: maximal elements versus the residuation identity.
        if *enumerated {
            let maximal: Vec<bool> = {
                let n = pool.len();
                (0..n)
                    .map(|i| {
                        (0..n).all(|j| {
                            j == i
                                || !filter_leq(&pool[i].1, &pool[j].1).unwrap()
                                || filter_leq(&pool[j].1, &pool[i].1).unwrap()
                        })
                    })
                    .collect()
            };
            let residuated = Residuum::new(ground.lattice()).is_ok();
            if residuated {
                let mut mismatch = None;
                for (i, (n1, f)) in pool.iter().enumerate() {
                    let ch = ultrafilter_characterization(f).expect("residuated");
                    if !ch.one_sided_holds {
                        mismatch = Some(json!({ "filter": n1, "issue": "one-sided bound failed" }));
                        break;
                    }
                    if ch.holds != maximal[i] {
                        mismatch = Some(json!({
                            "filter": n1,
                            "maximal": maximal[i],
                            "characterized": ch.holds,
                        }));
                        break;
                    }
                }
                match mismatch {
                    None => out.push(
                        CheckResult::pass(
                            "ultrafilter-char",
                            format!("ultrafilter-char[{gname}]"),
                        )
                        .with_detail(json!({
                            "filters": pool.len(),
                            "ultrafilters": maximal.iter().filter(|&&m| m).count(),
                        })),
                    ),
                    Some(detail) => out.push(CheckResult::violation(
                        "ultrafilter-char",
                        format!("ultrafilter-char[{gname}]"),
                        detail,
                    )),
                }
            } else {
                // Not residuated: run the comparison with the raw join-form
                // residuum and report, without asserting either way.
                let l = ground.lattice().clone();
                let space = ground.fn_space().expect("fits");
                let pseudo_to_zero = |f: usize| {
                    let values: Vec<usize> = (0..space.points())
                        .map(|p| {
                            l.join_all((0..l.size()).filter(|&c| {
                                l.leq(l.tensor(space.value_at(f, p), c), l.bottom())
                            }))
                        })
                        .collect();
                    space.encode(&values)
                };
                let mut agree = true;
                for (i, (_, f)) in pool.iter().enumerate() {
                    let characterized = (0..space.len()).all(|idx| {
                        let inner = f.value(pseudo_to_zero(idx));
                        let rhs = l.join_all(
                            (0..l.size()).filter(|&c| l.leq(l.tensor(inner, c), l.bottom())),
                        );
                        f.value(idx) == rhs
                    });
                    if characterized != maximal[i] {
                        agree = false;
                        break;
                    }
                }
                out.push(
                    CheckResult::pass(
                        "ultrafilter-char",
                        format!("ultrafilter-char[{gname}]"),
                    )
                    .with_detail(json!({
                        "residuated": false,
                        "comparison_agrees": agree,
                        "note": "reported only; the identity is not asserted without residuation",
                    })),
                );
            }
        } else {
            out.push(
                CheckResult::pass("ultrafilter-char", format!("ultrafilter-char[{gname}]"))
                    .with_detail(json!({ "skipped": "filter enumeration over budget" })),
            );
        }

        // topo-axioms: every filter table satisfies the nonempty join axiom
        // and the tensor axiom, and fails the empty-family instance only at
        // the constant-bottom set; the induced topology repairs it.
        let mut axiom_failure = None;
        for (n1, f) in pool {
            if let Some(v) = join_axiom_witness(ground, f.table(), &lax).expect("fits") {
                axiom_failure = Some(json!({ "filter": n1, "violation": v }));
                break;
            }
            if let Some(v) = tensor_axiom_witness(ground, f.table()).expect("fits") {
                axiom_failure = Some(json!({ "filter": n1, "violation": v }));
                break;
            }
            match join_axiom_witness(ground, f.table(), opts).expect("fits") {
                None | Some(TopoViolation::JoinAxiom { subset_size: 0, .. }) => {}
                Some(v) => {
                    axiom_failure = Some(json!({
                        "filter": n1,
                        "issue": "failed a nonempty join instance",
                        "violation": v,
                    }));
                    break;
                }
            }
        }
        match axiom_failure {
            None => out.push(CheckResult::pass(
                "topo-axioms",
                format!("topo-axioms[{gname}]"),
            )),
            Some(detail) => out.push(CheckResult::violation(
                "topo-axioms",
                format!("topo-axioms[{gname}]"),
                detail,
            )),
        }

        // filter-to-topology: the induced table always validates.
        let residuated = Residuum::new(ground.lattice()).is_ok();
        let mut induced_failure = None;
        let mut ultra_count = 0usize;
        for (n1, f) in pool {
            match filter_to_topology(f, opts) {
                Ok(t) => {
                    let space = ground.fn_space().expect("fits");
                    if t.value(space.constant(ground.lattice().top()))
                        != ground.lattice().top()
                    {
                        induced_failure =
                            Some(json!({ "filter": n1, "issue": "constant-top set not fully open" }));
                        break;
                    }
                    if residuated
                        && ultrafilter_characterization(f).expect("residuated").holds
                    {
                        ultra_count += 1;
                    }
                }
                Err(e) => {
                    induced_failure = Some(json!({ "filter": n1, "error": e.to_string() }));
                    break;
                }
            }
        }
        match induced_failure {
            None => out.push(
                CheckResult::pass(
                    "filter-to-topology",
                    format!("filter-to-topology[{gname}]"),
                )
                .with_detail(json!({ "ultra_derived": ultra_count })),
            ),
            Some(detail) => out.push(CheckResult::violation(
                "filter-to-topology",
                format!("filter-to-topology[{gname}]"),
                detail,
            )),
        }
    }

    // Per-ground-morphism tags.
    for (gm_name, gm) in &doc.ground_morphisms {
        let src_name = doc
            .grounds
            .iter()
            .find(|(_, g)| *g == gm.source())
            .map(|(n, _)| n.clone())
            .unwrap_or_default();
        let tgt_name = doc
            .grounds
            .iter()
            .find(|(_, g)| *g == gm.target())
            .map(|(n, _)| n.clone())
            .unwrap_or_default();
        let src_pool = filter_pools[&src_name].0.clone();
        let tgt_pool = filter_pools[&tgt_name].0.clone();
        let tgt_l = gm.target().lattice().clone();

        match adjunction_failure(gm) {
            None => out.push(CheckResult::pass(
                "adjunction",
                format!("adjunction[{gm_name}]"),
            )),
            Some(msg) => out.push(CheckResult::violation(
                "adjunction",
                format!("adjunction[{gm_name}]"),
                json!({ "failure": msg }),
            )),
        }

        // alt-continuity across every filter pair.
        let mut disagreement = None;
        for (n1, f) in &src_pool {
            for (n2, omega) in &tgt_pool {
                let check = check_continuity(gm, f, omega).expect("grounds match");
                if !check.forms_agree() {
                    disagreement = Some(json!({ "source": n1, "target": n2 }));
                    break;
                }
            }
        }
        match disagreement {
            None => out.push(CheckResult::pass(
                "alt-continuity",
                format!("alt-continuity[{gm_name}]"),
            )),
            Some(detail) => out.push(CheckResult::violation(
                "alt-continuity",
                format!("alt-continuity[{gm_name}]"),
                detail,
            )),
        }

        for (fname, f) in &src_pool {
            let label = format!("{gm_name},F={fname}");
            let table = final_filter_table(gm, f).expect("grounds match");

            match final_filter(gm, f) {
                Ok(_) => out.push(CheckResult::pass(
                    "final-filter-1",
                    format!("final-filter-1[{label}]"),
                )),
                Err(e) => out.push(CheckResult::violation(
                    "final-filter-1",
                    format!("final-filter-1[{label}]"),
                    json!({ "failure": e.to_string(), "final_table": table }),
                )),
            }

            let (primal, _) = raw_continuity(gm, f, &table);
            if primal {
                out.push(CheckResult::pass(
                    "final-filter-2",
                    format!("final-filter-2[{label}]"),
                ));
            } else {
                out.push(CheckResult::violation(
                    "final-filter-2",
                    format!("final-filter-2[{label}]"),
                    json!({ "final_table": table }),
                ));
            }

            let mut iff_failure = None;
            let mut strictly_below_continuous = 0usize;
            for (n2, omega) in &tgt_pool {
                let report = final_characterization(gm, f, omega).expect("grounds match");
                if report.continuous != report.leq {
                    iff_failure = Some(json!({ "target": n2, "report": report }));
                    break;
                }
                if report.continuous && !report.eq {
                    strictly_below_continuous += 1;
                }
            }
            match iff_failure {
                None => {
                    out.push(CheckResult::pass(
                        "final-filter-3",
                        format!("final-filter-3[{label}]"),
                    ));
                    out.push(
                        CheckResult::pass(
                            "final-filter-5",
                            format!("final-filter-5[{label}]"),
                        )
                        .with_detail(json!({
                            "continuous_strictly_below": strictly_below_continuous,
                        })),
                    );
                }
                Some(detail) => {
                    out.push(CheckResult::violation(
                        "final-filter-3",
                        format!("final-filter-3[{label}]"),
                        detail.clone(),
                    ));
                    out.push(CheckResult::violation(
                        "final-filter-5",
                        format!("final-filter-5[{label}]"),
                        detail,
                    ));
                }
            }

            if let Ok(final_f) = final_filter(gm, f) {
                let report = final_characterization(gm, f, &final_f).expect("grounds match");
                if report.continuous && report.leq && report.eq {
                    out.push(CheckResult::pass(
                        "final-filter-4",
                        format!("final-filter-4[{label}]"),
                    ));
                } else {
                    out.push(CheckResult::violation(
                        "final-filter-4",
                        format!("final-filter-4[{label}]"),
                        json!({ "report": report }),
                    ));
                }

                let check = functor_t_check(gm, f, &final_f, opts).expect("continuous");
                if check.holds {
                    out.push(CheckResult::pass(
                        "functor-T",
                        format!("functor-T[{label}]"),
                    ));
                } else {
                    out.push(CheckResult::violation(
                        "functor-T",
                        format!("functor-T[{label}]"),
                        json!({ "witness": check.witness }),
                    ));
                }
            }
        }

        // initial-filter for onto morphisms.
        if gm.is_onto() {
            if gm.lattice_map().co_adjoint().is_ok() {
                for (fname, tgt) in &tgt_pool {
                    let label = format!("{gm_name},F'={fname}");
                    match initial_filter(gm, tgt) {
                        Ok(_) => out.push(
                            CheckResult::pass(
                                "initial-filter",
                                format!("initial-filter[{label}]"),
                            )
                            .with_detail(json!({ "point_map_injective": gm.is_injective() })),
                        ),
                        Err(FilterError::AxiomViolation(failure)) => {
                            out.push(CheckResult::expected_failure(
                                "initial-filter",
                                format!("initial-filter[{label}]"),
                                json!({
                                    "point_map_injective": failure.point_map_injective,
                                    "violation": failure.violation,
                                    "candidate": failure.candidate,
                                }),
                            ))
                        }
                        Err(e) => out.push(CheckResult::violation(
                            "initial-filter",
                            format!("initial-filter[{label}]"),
                            json!({ "error": e.to_string() }),
                        )),
                    }
                }
            } else {
                out.push(
                    CheckResult::pass("initial-filter", format!("initial-filter[{gm_name}]"))
                        .with_detail(json!({ "skipped": "lattice map has no co-adjoint" })),
                );
            }
        }

        // image-ultrafilter for same-lattice morphisms.
        if gm.source().lattice() == gm.target().lattice() {
            let residuated = Residuum::new(gm.source().lattice()).is_ok();
            let mut image_failure = None;
            let mut preserved = 0usize;
            for (fname, f) in &src_pool {
                match image_filter(gm.point_map(), gm.target(), f) {
                    Ok(img) => {
                        if residuated {
                            let src_ch = ultrafilter_characterization(f).expect("residuated");
                            if src_ch.holds {
                                let img_ch =
                                    ultrafilter_characterization(&img).expect("residuated");
                                if !img_ch.holds {
                                    image_failure = Some(json!({
                                        "filter": fname,
                                        "issue": "image of a characterized filter lost the identity",
                                        "witness": img_ch.witness,
                                    }));
                                    break;
                                }
                                preserved += 1;
                            }
                        }
                    }
                    Err(e) => {
                        image_failure = Some(json!({ "filter": fname, "error": e.to_string() }));
                        break;
                    }
                }
            }
            match image_failure {
                None => out.push(
                    CheckResult::pass(
                        "image-ultrafilter",
                        format!("image-ultrafilter[{gm_name}]"),
                    )
                    .with_detail(json!({ "ultrafilters_preserved": preserved })),
                ),
                Some(detail) => out.push(CheckResult::violation(
                    "image-ultrafilter",
                    format!("image-ultrafilter[{gm_name}]"),
                    detail,
                )),
            }
        }

        // topo-final-1..6 over source topologies.
        let src_topos: Vec<(String, FuzzyTopology)> = topo_pools[&src_name]
            .as_ref()
            .map(|pool| {
                pool.iter()
                    .enumerate()
                    .map(|(i, t)| (format!("enum#{i}"), t.clone()))
                    .collect()
            })
            .unwrap_or_else(|| {
                src_pool
                    .iter()
                    .map(|(n, f)| {
                        (
                            format!("induced[{n}]"),
                            filter_to_topology(f, opts).expect("induced topologies validate"),
                        )
                    })
                    .collect()
            });
        let tgt_topos = topo_pools[&tgt_name].clone();
        for (tname, upsilon) in &src_topos {
            let label = format!("{gm_name},T={tname}");
            let table = final_topology_table(gm, upsilon).expect("grounds match");
            match final_topology(gm, upsilon, opts) {
                Ok(final_t) => {
                    out.push(CheckResult::pass(
                        "topo-final-1",
                        format!("topo-final-1[{label}]"),
                    ));
                    let check =
                        check_topo_continuity(gm, upsilon, &final_t).expect("grounds match");
                    if check.holds {
                        out.push(CheckResult::pass(
                            "topo-final-2",
                            format!("topo-final-2[{label}]"),
                        ));
                    } else {
                        out.push(CheckResult::violation(
                            "topo-final-2",
                            format!("topo-final-2[{label}]"),
                            json!({ "witness": check.witness }),
                        ));
                    }
                    out.push(CheckResult::pass(
                        "topo-final-5",
                        format!("topo-final-5[{label}]"),
                    ));
                }
                Err(e) => {
                    out.push(CheckResult::violation(
                        "topo-final-1",
                        format!("topo-final-1[{label}]"),
                        json!({ "failure": e.to_string() }),
                    ));
                    continue;
                }
            }
            if let Some(pool) = &tgt_topos {
                let mut iff_failure = None;
                let mut continuous_tables: Vec<&[usize]> = Vec::new();
                let mut strictly_below = 0usize;
                for gamma in pool {
                    let check = check_topo_continuity(gm, upsilon, gamma).expect("grounds match");
                    let below = gamma
                        .table()
                        .iter()
                        .zip(&table)
                        .all(|(&a, &b)| tgt_l.leq(a, b));
                    if check.holds != below {
                        iff_failure = Some(json!({
                            "target_topology": gamma.table_names(),
                            "continuous": check.holds,
                            "below_final": below,
                        }));
                        break;
                    }
                    if check.holds {
                        continuous_tables.push(gamma.table());
                        if gamma.table() != table.as_slice() {
                            strictly_below += 1;
                        }
                    }
                }
                match iff_failure {
                    None => {
                        out.push(CheckResult::pass(
                            "topo-final-3",
                            format!("topo-final-3[{label}]"),
                        ));
                        out.push(
                            CheckResult::pass(
                                "topo-final-6",
                                format!("topo-final-6[{label}]"),
                            )
                            .with_detail(
                                json!({ "continuous_strictly_below": strictly_below }),
                            ),
                        );
                        let space_len = gm
                            .target()
                            .fn_space()
                            .map(|s| s.len())
                            .unwrap_or(usize::MAX);
                        if space_len <= 8 {
                            let joined = join_tables(&tgt_l, &continuous_tables, table.len());
                            if joined == table {
                                out.push(CheckResult::pass(
                                    "topo-final-4",
                                    format!("topo-final-4[{label}]"),
                                ));
                            } else {
                                out.push(CheckResult::violation(
                                    "topo-final-4",
                                    format!("topo-final-4[{label}]"),
                                    json!({
                                        "final_table": table,
                                        "join_of_continuous": joined,
                                    }),
                                ));
                            }
                        }
                    }
                    Some(detail) => {
                        out.push(CheckResult::violation(
                            "topo-final-3",
                            format!("topo-final-3[{label}]"),
                            detail.clone(),
                        ));
                        out.push(CheckResult::violation(
                            "topo-final-6",
                            format!("topo-final-6[{label}]"),
                            detail,
                        ));
                    }
                }
            }
        }
    }

    // composition over composable pairs.
    for (n1, gm1) in &doc.ground_morphisms {
        for (n2, gm2) in &doc.ground_morphisms {
            if gm1.target() != gm2.source() {
                continue;
            }
            let src_name = doc
                .grounds
                .iter()
                .find(|(_, g)| *g == gm1.source())
                .map(|(n, _)| n.clone())
                .unwrap_or_default();
            let src_pool = &filter_pools[&src_name].0;
            let mut failure = None;
            let mut checked = 0usize;
            for (fname, f1) in src_pool {
                let f2 = match final_filter(gm1, f1) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                let f3 = match final_filter(gm2, &f2) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                checked += 1;
                match compose_check(gm1, f1, &f2, gm2, &f3) {
                    Ok(check) if check.holds => {}
                    Ok(check) => {
                        failure = Some(json!({ "filter": fname, "witness": check.witness }));
                        break;
                    }
                    Err(e) => {
                        failure = Some(json!({ "filter": fname, "error": e.to_string() }));
                        break;
                    }
                }
            }
            match failure {
                None => out.push(
                    CheckResult::pass("composition", format!("composition[{n1};{n2}]"))
                        .with_detail(json!({ "checked": checked })),
                ),
                Some(detail) => out.push(CheckResult::violation(
                    "composition",
                    format!("composition[{n1};{n2}]"),
                    detail,
                )),
            }
        }
    }

    out
}
