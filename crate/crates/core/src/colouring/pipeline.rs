use serde::Serialize;

use super::{
    colour_quotient, lift_colouring, quotient_mod_subgroup, PeriodicColouring, QuotientGraph, Strategy,
    DEFAULT_NODE_BUDGET,
};
use crate::error::{Error, Result, StageExt};
use crate::euclid::{sublattice_for_length, LatticeInvariants};
use crate::hyp::{colour_budget, riemann_hurwitz_genus, subgroup_avoiding_short, SearchBudget, SubgroupCertificate};
use crate::reduction::{reattach_atoms, reduce_to_3connected, stage_orbit_counts, PaletteMode, ReductionTrace};
use crate::voltage::{
    estimate_ends, max_edge_length, shortest_noncontractible, GroupKind, PeriodicGraph, SubgroupDescriptor,
    VoltageGroup,
};

/// Relative margin by which the target translation length exceeds the
/// longest edge.
pub const LENGTH_MARGIN: f64 = 1e-9;
/// Doublings of the sublattice scale tried when a quotient has a loop.
pub const MAX_LOOP_DOUBLINGS: u32 = 6;
/// Doublings tried in search of an exact colouring before falling back.
pub const MAX_EXACT_DOUBLINGS: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineOptions {
    /// Palette the Euclidean pipeline tries to reach exactly.
    pub exact_target: u32,
    pub node_budget: u64,
    pub search: SearchBudget,
    pub palette_mode: PaletteMode,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            exact_target: 5,
            node_budget: DEFAULT_NODE_BUDGET,
            search: SearchBudget::default(),
            palette_mode: PaletteMode::Reuse,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub graph: Option<String>,
    pub group: GroupKind,
    pub ends_estimate: usize,
    pub reduction_steps: usize,
    pub stage_orbit_counts: Vec<usize>,
    pub final_connectivity: String,
    pub target_length: f64,
    pub index: usize,
    /// Scale `(A, B)` of the sublattice in the reduced basis.
    pub scale: Option<(i64, i64)>,
    pub lattice: Option<LatticeInvariants>,
    pub certificate: Option<SubgroupCertificate>,
    pub quotient_vertices: usize,
    pub quotient_edges: usize,
    pub strategy: String,
    pub palette: usize,
    pub genus: u64,
    pub ringel_youngs: u64,
    pub thomassen_threshold: String,
    pub shortest_noncontractible: usize,
    pub meets_threshold: bool,
    pub widened: Vec<(usize, usize, usize)>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub colouring: PeriodicColouring,
    pub report: PipelineReport,
    pub trace: ReductionTrace,
}

pub(crate) fn check_one_end(pg: &PeriodicGraph) -> Result<usize> {
    let (r, big_r) = match pg.kind() {
        GroupKind::EuclideanLattice => (2, 6),
        GroupKind::Fuchsian => (1, 3),
    };
    let ends = estimate_ends(pg, r, big_r)?;
    if ends != 1 {
        return Err(Error::Unsupported(format!(
            "end estimate at scale ({r}, {big_r}) is {ends}; only one-ended graphs are handled"
        )));
    }
    Ok(ends)
}

fn is_loop_error(e: &Error) -> bool {
    matches!(e.root(), Error::Unsupported(m) if m.starts_with("subgroup too small"))
}

/// Colour a graph over a rank-2 lattice: reduce, pick a loop-free
/// sublattice, colour its quotient, lift and reattach.
pub fn euclid_pipeline(pg: &PeriodicGraph, opts: &PipelineOptions) -> Result<PipelineOutput> {
    let report = pg.validate();
    if !report.is_pass() {
        return Err(Error::argument(format!("invalid periodic graph: {report}"))).stage("validate");
    }
    // ends first: a rank-1 lattice is two-ended and is reported as such
    let ends = check_one_end(pg).stage("ends")?;
    let lattice = match &pg.group {
        VoltageGroup::Lattice { lattice, rank: 2, .. } => lattice.clone(),
        VoltageGroup::Lattice { .. } => {
            return Err(Error::Unsupported("the colouring pipeline needs a rank-2 lattice".into()))
                .stage("validate")
        }
        VoltageGroup::Fuchsian { .. } => {
            return Err(Error::argument("Fuchsian input; use the hyperbolic pipeline")).stage("validate")
        }
    };
    let (reduced, trace) = reduce_to_3connected(pg).stage("reduce")?;
    let mut length: f64 = 0.0;
    for g in &trace.graphs {
        length = length.max(max_edge_length(g).stage("sublattice")?);
    }
    let target = length * (1.0 + LENGTH_MARGIN);
    let scaled = sublattice_for_length(&lattice, target).stage("sublattice")?;
    let u = scaled.reduced.transform;
    let descriptor = |a: i64, b: i64| {
        SubgroupDescriptor::sublattice([[a * u[0][0], a * u[0][1]], [b * u[1][0], b * u[1][1]]])
    };
    let mut notes = Vec::new();

    // smallest scale whose quotients are loop-free at every stage
    let (mut a, mut b) = scaled.scale;
    let mut found = None;
    for _ in 0..=MAX_LOOP_DOUBLINGS {
        let t = descriptor(a, b).stage("quotient")?;
        match stage_quotients(&trace, &t) {
            Ok(q) => {
                found = Some((t, q));
                break;
            }
            Err(e) if is_loop_error(&e) => {
                notes.push(format!("scale ({a}, {b}) leaves a loop in the quotient; doubling"));
                a *= 2;
                b *= 2;
            }
            Err(e) => return Err(e).stage("quotient"),
        }
    }
    let (mut t, mut q) = found.ok_or_else(|| {
        Error::resource(format!("no loop-free quotient after {MAX_LOOP_DOUBLINGS} doublings"))
    })
    .stage("quotient")?;

    let k = opts.exact_target;
    let exact = Strategy::Exact {
        k,
        node_budget: opts.node_budget,
    };
    let mut coloured = None;
    let mut candidate = (t.clone(), q.clone(), (a, b));
    for attempt in 0..=MAX_EXACT_DOUBLINGS {
        match colour_quotient(&candidate.1.graph, exact) {
            Ok(Some(qc)) => {
                coloured = Some((qc, format!("exact-{k}")));
                t = candidate.0.clone();
                q = candidate.1.clone();
                (a, b) = candidate.2;
                break;
            }
            Ok(None) => notes.push(format!("no {k}-colouring of the quotient at scale {:?}", candidate.2)),
            Err(e @ Error::Resource(_)) => notes.push(e.to_string()),
            Err(e) => return Err(e).stage("colour"),
        }
        if attempt < MAX_EXACT_DOUBLINGS {
            let (ca, cb) = (candidate.2 .0 * 2, candidate.2 .1 * 2);
            let ct = descriptor(ca, cb).stage("colour")?;
            let cq = stage_quotients(&trace, &ct).stage("colour")?;
            candidate = (ct, cq, (ca, cb));
        }
    }
    let (qc, strategy) = match coloured {
        Some(c) => c,
        None => {
            notes.push("falling back to dsatur".into());
            let qc = colour_quotient(&q.graph, Strategy::Dsatur).stage("colour")?.unwrap();
            (qc, "dsatur".to_string())
        }
    };
    let (quotient_vertices, quotient_edges) = (q.vertex_count(), q.graph.edge_count());
    let lifted = lift_colouring(qc, q, t.clone()).stage("lift")?;
    let (colouring, reattach) = reattach_atoms(&lifted, &trace, opts.palette_mode).stage("reattach")?;

    let budget = colour_budget(1).stage("report")?;
    let snc = shortest_noncontractible(&reduced, &t).stage("report")?;
    let sub_invariants = {
        let rows = match &t {
            SubgroupDescriptor::Sublattice(m) => *m,
            SubgroupDescriptor::Cosets(_) => unreachable!(),
        };
        crate::euclid::Lattice::with_metric(lattice.combine(rows[0]), lattice.combine(rows[1]), lattice.metric().clone())
            .map(|l| l.invariants())
            .ok()
    };
    let report = PipelineReport {
        graph: pg.name.clone(),
        group: GroupKind::EuclideanLattice,
        ends_estimate: ends,
        reduction_steps: trace.steps.len(),
        stage_orbit_counts: stage_orbit_counts(&trace),
        final_connectivity: trace.final_connectivity.clone(),
        target_length: target,
        index: t.index(),
        scale: Some((a, b)),
        lattice: sub_invariants,
        certificate: None,
        quotient_vertices,
        quotient_edges,
        strategy,
        palette: colouring.palette,
        genus: 1,
        ringel_youngs: budget.ringel_youngs,
        meets_threshold: num_bigint::BigUint::from(snc) >= budget.thomassen_threshold,
        thomassen_threshold: budget.thomassen_threshold.to_string(),
        shortest_noncontractible: snc,
        widened: reattach.widened,
        notes,
    };
    Ok(PipelineOutput {
        colouring,
        report,
        trace,
    })
}

/// Quotient of the last stage, after checking every stage is loop-free.
fn stage_quotients(trace: &ReductionTrace, t: &SubgroupDescriptor) -> Result<QuotientGraph> {
    for g in &trace.graphs[..trace.graphs.len() - 1] {
        quotient_mod_subgroup(g, t)?;
    }
    quotient_mod_subgroup(trace.reduced(), t)
}

/// Colour a graph over a Fuchsian group: find a torsion-free subgroup with
/// no short translations, colour its quotient by DSATUR and lift.
pub fn hyp_pipeline(pg: &PeriodicGraph, opts: &PipelineOptions) -> Result<PipelineOutput> {
    let report = pg.validate();
    if !report.is_pass() {
        return Err(Error::argument(format!("invalid periodic graph: {report}"))).stage("validate");
    }
    let pres = match pg.presentation() {
        Some(p) => p.clone(),
        None => return Err(Error::argument("lattice input; use the Euclidean pipeline")).stage("validate"),
    };
    let ends = check_one_end(pg).stage("ends")?;
    let (_, trace) = reduce_to_3connected(pg).stage("reduce")?;
    let target = max_edge_length(pg).stage("subgroup")? * (1.0 + LENGTH_MARGIN);
    let mut notes = Vec::new();
    let mut threshold = target;
    let mut found = None;
    for _ in 0..=MAX_LOOP_DOUBLINGS {
        let (table, cert) = subgroup_avoiding_short(&pres, threshold, &opts.search).stage("subgroup")?;
        let t = SubgroupDescriptor::Cosets(table);
        match quotient_mod_subgroup(pg, &t) {
            Ok(q) => {
                found = Some((t, q, cert));
                break;
            }
            Err(e) if is_loop_error(&e) => {
                notes.push(format!("threshold {threshold:.6} leaves a loop; doubling"));
                threshold *= 2.0;
            }
            Err(e) => return Err(e).stage("quotient"),
        }
    }
    let (t, q, cert) = found
        .ok_or_else(|| Error::resource(format!("no loop-free quotient after {MAX_LOOP_DOUBLINGS} doublings")))
        .stage("quotient")?;
    let mut qc = colour_quotient(&q.graph, Strategy::Dsatur).stage("colour")?.unwrap();
    let mut strategy = "dsatur".to_string();
    if !q.graph.conflicts(&qc.colours).is_empty() {
        notes.push("dsatur colouring failed the properness check; colouring uniquely".into());
        qc = colour_quotient(&q.graph, Strategy::Unique).stage("colour")?.unwrap();
        strategy = "unique".into();
    }
    let genus = riemann_hurwitz_genus(pres.signature(), t.index() as u64).stage("report")?;
    let budget = colour_budget(genus).stage("report")?;
    let snc = shortest_noncontractible(pg, &t).stage("report")?;
    let (quotient_vertices, quotient_edges) = (q.vertex_count(), q.graph.edge_count());
    let colouring = lift_colouring(qc, q, t.clone()).stage("lift")?;
    let report = PipelineReport {
        graph: pg.name.clone(),
        group: GroupKind::Fuchsian,
        ends_estimate: ends,
        reduction_steps: 0,
        stage_orbit_counts: vec![pg.orbit_count],
        final_connectivity: trace.final_connectivity.clone(),
        target_length: threshold,
        index: t.index(),
        scale: None,
        lattice: None,
        certificate: Some(cert),
        quotient_vertices,
        quotient_edges,
        strategy,
        palette: colouring.palette,
        genus,
        ringel_youngs: budget.ringel_youngs,
        meets_threshold: num_bigint::BigUint::from(snc) >= budget.thomassen_threshold,
        thomassen_threshold: budget.thomassen_threshold.to_string(),
        shortest_noncontractible: snc,
        widened: Vec::new(),
        notes,
    };
    Ok(PipelineOutput {
        colouring,
        report,
        trace,
    })
}

/// Dispatch on the group kind.
pub fn colour_pipeline(pg: &PeriodicGraph, opts: &PipelineOptions) -> Result<PipelineOutput> {
    match pg.kind() {
        GroupKind::EuclideanLattice => euclid_pipeline(pg, opts),
        GroupKind::Fuchsian => hyp_pipeline(pg, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::corpus;
    use crate::verify::{check_periodic, check_proper};

    #[test]
    fn square_is_checkerboard() {
        let out = euclid_pipeline(&corpus::square(), &PipelineOptions::default()).unwrap();
        assert_eq!(out.report.index, 4);
        assert_eq!(out.colouring.palette, 2);
        assert_eq!(out.report.ringel_youngs, 7);
        assert_eq!(out.report.thomassen_threshold, "1048576");
        assert!(!out.report.meets_threshold);
    }

    #[test]
    fn hexagonal_is_bipartite() {
        let out = euclid_pipeline(&corpus::hexagonal(), &PipelineOptions::default()).unwrap();
        assert_eq!(out.colouring.palette, 2);
    }

    #[test]
    fn lattice_examples_verify() {
        for pg in [
            corpus::triangular(),
            corpus::kings_square(),
            corpus::leafed_subdivided_square(),
            corpus::star_hexagonal(),
        ] {
            let out = euclid_pipeline(&pg, &PipelineOptions::default()).unwrap();
            assert!(check_proper(&out.colouring, &pg, 8).unwrap().pass, "{:?}", pg.name);
            assert!(check_periodic(&out.colouring, &pg, 40, 1).unwrap().pass);
        }
    }

    #[test]
    fn path_is_rejected() {
        let e = euclid_pipeline(&corpus::path(), &PipelineOptions::default()).unwrap_err();
        assert!(e.to_string().contains("stage `"));
    }

    #[test]
    fn heptagonal_pipeline() {
        let pg = corpus::heptagonal_triangulation();
        let out = hyp_pipeline(&pg, &PipelineOptions::default()).unwrap();
        assert_eq!(out.report.index, 168);
        assert_eq!(out.report.genus, 3);
        assert_eq!(out.report.quotient_vertices, 24);
        assert!(out.colouring.palette <= 9);
        assert!(check_proper(&out.colouring, &pg, 3).unwrap().pass);
    }
}
