//! Verification suites over concrete instances.
//!
//! Each suite returns one [`CaseResult`] per instance in a fixed order. A case
//! passes when the checked identity or inequality holds exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::covers::{
    bouquet_voltage, cayley_multigraph, covering_transformations, ct_fibre_action, derived_graph,
    left_regular_action, local_group, monodromy_fibre_action, quotient_graph,
    reconstruct_voltages, validate_covering, verify_pfold, VoltageAssignment,
};
use crate::dartgraph::families::{complete, cube, cycle, petersen, two_triple_bundles};
use crate::dartgraph::{
    edge_connectivity, spanning_tree_count, spanning_tree_enumerate, DartGraph,
    DEFAULT_ENUMERATION_EDGE_CAP,
};
use crate::error::{Error, Result};
use crate::jacobian::jacobian;
use crate::random::{add_loops_and_semiedges, case_seed, gnp_simple, random_multigraph, random_voltage, rng};
use crate::symmetry::{
    automorphisms, count_invertible_matrices, extend_vertex_map, theta_kernel, verify_faithful,
    FiniteGroup, PermGroup, Permutation, DEFAULT_AUT_VERTEX_CAP, DEFAULT_GROUP_ORDER_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    HypothesisUnmet,
    ScaleExceeded,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::HypothesisUnmet => "hypothesis-unmet",
            Outcome::ScaleExceeded => "scale-exceeded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub outcome: Outcome,
    pub details: Value,
}

impl CaseResult {
    fn check(id: impl Into<String>, ok: bool, details: Value) -> Self {
        CaseResult {
            id: id.into(),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            details,
        }
    }

    fn from_error(id: impl Into<String>, e: &Error) -> Self {
        let outcome = match e {
            Error::ScaleExceeded { .. } => Outcome::ScaleExceeded,
            Error::HypothesisUnmet(_) => Outcome::HypothesisUnmet,
            _ => Outcome::Fail,
        };
        CaseResult {
            id: id.into(),
            outcome,
            details: json!({ "error": e.to_string() }),
        }
    }
}

fn run_case(id: String, f: impl FnOnce() -> Result<(bool, Value)>) -> CaseResult {
    match f() {
        Ok((ok, details)) => CaseResult::check(id, ok, details),
        Err(e) => CaseResult::from_error(id, &e),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.cases.iter().filter(|c| c.outcome == outcome).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Outcome::Fail) == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    P1,
    Pfold,
    Main,
    CayleyRank,
    Example72,
    SemiedgeNull,
    LocalGroup,
    Covering,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::P1,
        Suite::Pfold,
        Suite::Main,
        Suite::CayleyRank,
        Suite::Example72,
        Suite::SemiedgeNull,
        Suite::LocalGroup,
        Suite::Covering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::P1 => "p1",
            Suite::Pfold => "pfold",
            Suite::Main => "main",
            Suite::CayleyRank => "cayley-rank",
            Suite::Example72 => "example72",
            Suite::SemiedgeNull => "semiedge-null",
            Suite::LocalGroup => "local-group",
            Suite::Covering => "covering",
        }
    }

    /// Instance count used when none is given; fixed suites ignore counts.
    pub fn default_count(self) -> usize {
        match self {
            Suite::P1 | Suite::Pfold => 100,
            Suite::SemiedgeNull => 25,
            Suite::LocalGroup | Suite::Covering => 20,
            Suite::Main | Suite::CayleyRank | Suite::Example72 => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidArgument(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

pub fn run_suite(suite: Suite, seed: u64, count: Option<usize>) -> SuiteReport {
    let count = count.unwrap_or_else(|| suite.default_count());
    let cases = match suite {
        Suite::P1 => p1(seed, count),
        Suite::Pfold => pfold(seed, count),
        Suite::Main => faithful_actions(),
        Suite::CayleyRank => cayley_rank(),
        Suite::Example72 => example72(),
        Suite::SemiedgeNull => semiedge_null(seed, count),
        Suite::LocalGroup => local_groups(seed, count),
        Suite::Covering => coverings(seed, count),
    };
    SuiteReport { suite, seed, cases }
}

fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// Jacobian order, matrix-tree count and (when small) the enumeration count.
pub fn p1_case(g: &DartGraph) -> Result<(bool, Value)> {
    let jac_order = jacobian(g)?.group.order();
    let tau = spanning_tree_count(g)?;
    let mut ok = jac_order == tau;
    let mut details = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "jacobian_order": big(&jac_order),
        "tau": big(&tau),
    });
    let ordinary = g.classify_edges().ordinary.len();
    if ordinary <= DEFAULT_ENUMERATION_EDGE_CAP {
        let enumerated = spanning_tree_enumerate(g, DEFAULT_ENUMERATION_EDGE_CAP)?.len();
        ok &= BigInt::from(enumerated) == tau;
        details["enumerated"] = json!(enumerated);
    }
    Ok((ok, details))
}

fn p1(seed: u64, count: usize) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for i in 0..count {
        let s = case_seed(seed, i as u64);
        let mut r = rng(s, u64::MAX);
        let n = r.gen_range(5..=9);
        let p = r.gen_range(0.3..0.8);
        out.push(run_case(format!("simple-{i}"), || p1_case(&gnp_simple(s, n, p)?)));
    }
    for i in 0..count.div_ceil(5) {
        let s = case_seed(seed, (count + i) as u64);
        let mut r = rng(s, u64::MAX);
        let n = r.gen_range(2..=6);
        let (extra, loops, semi) = (r.gen_range(1..=5), r.gen_range(0..=2), r.gen_range(0..=2));
        out.push(run_case(format!("multi-{i}"), || {
            p1_case(&random_multigraph(s, n, extra, loops, semi)?)
        }));
    }
    out
}

/// Draw a base and tree-reduced `Z_p` voltages until the cover is simple,
/// connected and 2-edge-connected.
pub fn sample_pfold_instance(seed: u64, p: usize) -> Result<(VoltageAssignment, u64)> {
    let group = FiniteGroup::cyclic(p);
    for attempt in 0..crate::random::MAX_ATTEMPTS {
        let s = case_seed(seed, attempt);
        let mut r = rng(s, u64::MAX);
        let n = r.gen_range(1..=5);
        let extra = r.gen_range(if n == 1 { 1 } else { 0 }..=3);
        let loops = r.gen_range(0..=1);
        let semi = if p == 2 { r.gen_range(0..=3) } else { 0 };
        if n == 1 && extra + loops + semi == 0 {
            continue;
        }
        let base = random_multigraph(s, n, extra, loops, semi)?;
        let Ok(v) = random_voltage(s, &base, &group) else {
            continue;
        };
        let (total, _) = derived_graph(&v)?;
        if total.is_simple() && matches!(edge_connectivity(&total), Ok(k) if k >= 2) {
            return Ok((v, attempt));
        }
    }
    Err(Error::HypothesisUnmet("no admissible cover sampled".into()))
}

fn pfold(seed: u64, count: usize) -> Vec<CaseResult> {
    (0..count)
        .map(|i| {
            let p = [2, 3, 5][i % 3];
            run_case(format!("z{p}-{i}"), || {
                let (v, attempts) = sample_pfold_instance(case_seed(seed, i as u64), p)?;
                let rep = verify_pfold(&v)?;
                let mut details = serde_json::to_value(&rep).expect("plain data");
                details["base_vertices"] = json!(v.base().vertex_count());
                details["rejected_draws"] = json!(attempts);
                Ok((!rep.violation, details))
            })
        })
        .collect()
}

fn vertex_map_group(g: &DartGraph, cycles: &[&str]) -> Result<PermGroup> {
    let gens = cycles
        .iter()
        .map(|c| {
            let s = Permutation::parse_cycles(g.vertex_count(), c)?;
            extend_vertex_map(g, &s)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::NotAnAutomorphism(c.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::generate(g.dart_count(), gens, DEFAULT_GROUP_ORDER_CAP)
}

fn cayley_case(group: &FiniteGroup, conn: &[usize]) -> Result<(DartGraph, PermGroup)> {
    let g = cayley_multigraph(group, conn)?;
    let act = left_regular_action(group, conn.len())?;
    Ok((g, act))
}

/// Graph and group pairs meeting the faithfulness hypotheses.
pub fn faithful_instances() -> Result<Vec<(&'static str, DartGraph, PermGroup)>> {
    let k4 = complete(4);
    let k4g = vertex_map_group(&k4, &["(0 1)(2 3)"])?;
    let pet = petersen();
    let petg = vertex_map_group(&pet, &["(0 1 2 3 4)(5 6 7 8 9)"])?;
    let s3 = FiniteGroup::symmetric(3);
    let (s3g, s3a) = cayley_case(&s3, &s3.involutions())?;
    let q8 = FiniteGroup::quaternion();
    let (q8g, q8a) = cayley_case(&q8, &[1, 5, 2, 6])?;
    let q3 = cube(3);
    let q3g = vertex_map_group(&q3, &["(0 7)(1 6)(2 5)(3 4)"])?;
    Ok(vec![
        ("k4-z2", k4, k4g),
        ("petersen-z5", pet, petg),
        ("cay-s3-transpositions", s3g, s3a),
        ("cay-q8-i-j", q8g, q8a),
        ("cube-antipodal-z2", q3, q3g),
    ])
}

/// Cycles with their full rotation groups.
pub fn rotation_controls() -> Result<Vec<(usize, DartGraph, PermGroup)>> {
    (3..=8)
        .map(|n| {
            let g = cycle(n);
            let rot = format!("({})", (0..n).map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
            let grp = vertex_map_group(&g, &[rot.as_str()])?;
            Ok((n, g, grp))
        })
        .collect()
}

fn faithful_actions() -> Vec<CaseResult> {
    let mut out = Vec::new();
    match faithful_instances() {
        Ok(list) => {
            for (id, g, grp) in list {
                out.push(run_case(id.to_string(), || {
                    let r = verify_faithful(&g, &grp)?;
                    let ok = r.simple
                        && r.three_edge_connected
                        && r.semiregular
                        && r.kernel_size == 1
                        && r.image_order == r.group_order;
                    Ok((ok, serde_json::to_value(&r).expect("plain data")))
                }));
            }
        }
        Err(e) => out.push(CaseResult::from_error("faithful-instances", &e)),
    }
    match rotation_controls() {
        Ok(list) => {
            for (n, g, grp) in list {
                out.push(run_case(format!("control-c{n}"), || {
                    let r = verify_faithful(&g, &grp)?;
                    let ok = r.semiregular && !r.three_edge_connected && r.kernel_size == grp.order();
                    Ok((ok, serde_json::to_value(&r).expect("plain data")))
                }));
            }
        }
        Err(e) => out.push(CaseResult::from_error("controls", &e)),
    }
    out
}

/// Cayley graphs of non-abelian groups with connection sets of size at least 3.
pub fn nonabelian_cayley_instances() -> Vec<(&'static str, FiniteGroup, Vec<usize>)> {
    let s3 = FiniteGroup::symmetric(3);
    let t = s3.involutions();
    // D4: r = 1, r^3 = 3, s = 4
    let d4 = FiniteGroup::dihedral(4);
    vec![
        ("s3-transpositions", s3, t),
        ("d4-r-s", d4, vec![1, 3, 4]),
        ("q8-i-j", FiniteGroup::quaternion(), vec![1, 2, 5, 6]),
    ]
}

pub fn cayley_rank_case(group: &FiniteGroup, conn: &[usize]) -> Result<(bool, Value)> {
    let (g, act) = cayley_case(group, conn)?;
    let lambda = edge_connectivity(&g)?;
    let valency = g.valency(0);
    let jac = jacobian(&g)?;
    let faithful = verify_faithful(&g, &act)?;
    let nonabelian = !group.is_abelian();
    let ok = g.is_simple()
        && lambda == valency
        && valency >= 3
        && nonabelian
        && faithful.injective
        && jac.group.rank() >= 2
        && !jac.group.is_cyclic();
    Ok((
        ok,
        json!({
            "valency": valency,
            "edge_connectivity": lambda,
            "factors": jac.group.factors().iter().map(big).collect::<Vec<_>>(),
            "rank": jac.group.rank(),
            "cyclic": jac.group.is_cyclic(),
            "faithful": faithful.injective,
        }),
    ))
}

fn cayley_rank() -> Vec<CaseResult> {
    nonabelian_cayley_instances()
        .into_iter()
        .map(|(id, grp, conn)| run_case(id.to_string(), || cayley_rank_case(&grp, &conn)))
        .collect()
}

fn example72() -> Vec<CaseResult> {
    let g = two_triple_bundles();
    let mut out = Vec::new();
    out.push(run_case("automorphism-order".into(), || {
        let n = automorphisms(&g, DEFAULT_AUT_VERTEX_CAP)?.order();
        Ok((n == 72, json!({ "order": n })))
    }));
    out.push(run_case("jacobian".into(), || {
        let j = jacobian(&g)?;
        let f: Vec<String> = j.group.factors().iter().map(|d| d.to_string()).collect();
        Ok((f == ["3", "3"], json!({ "factors": f })))
    }));
    out.push(run_case("spanning-trees".into(), || {
        let t = spanning_tree_count(&g)?;
        Ok((t == BigInt::from(9), json!({ "tau": big(&t) })))
    }));
    out.push(run_case("gl2-z3".into(), || {
        let n = count_invertible_matrices(2, 3);
        Ok((n == 48, json!({ "invertible": n })))
    }));
    out.push(run_case("kernel".into(), || {
        let aut = automorphisms(&g, DEFAULT_AUT_VERTEX_CAP)?;
        let j = jacobian(&g)?;
        let k = theta_kernel(&aut, &j.flow).len();
        Ok((k > 1, json!({ "kernel_size": k })))
    }));
    out
}

fn semiedge_null(seed: u64, count: usize) -> Vec<CaseResult> {
    let mut out: Vec<CaseResult> = (0..count)
        .map(|i| {
            run_case(format!("random-{i}"), || {
                let s = case_seed(seed, i as u64);
                let mut r = rng(s, u64::MAX);
                let n = r.gen_range(2..=7);
                let g = if i % 2 == 0 {
                    gnp_simple(s, n, 0.5)?
                } else {
                    random_multigraph(s, n, r.gen_range(0..=4), 0, 0)?
                };
                let k = r.gen_range(1..=4);
                let h = add_loops_and_semiedges(&g, &mut r, k)?;
                let before = jacobian(&g)?.group;
                let after = jacobian(&h)?.group;
                Ok((
                    before == after,
                    json!({ "added": k, "before": before.to_string(), "after": after.to_string() }),
                ))
            })
        })
        .collect();
    out.push(run_case("k4-quotient".into(), || {
        let k4 = complete(4);
        let grp = vertex_map_group(&k4, &["(0 1)(2 3)"])?;
        let (q, _) = quotient_graph(&k4, &grp)?;
        let order = jacobian(&q)?.group.order();
        let tau = spanning_tree_count(&q.without_loops_and_semiedges()?)?;
        Ok((
            q.has_semiedges() && order == tau,
            json!({ "semiedges": q.classify_edges().semiedges.len(), "order": big(&order), "tau": big(&tau) }),
        ))
    }));
    out
}

/// Local group report as a pass/fail case: the subgroup order divides `|group|`.
pub fn local_group_case(g: &DartGraph, group: &PermGroup) -> Result<(bool, Value)> {
    let jac = jacobian(g)?;
    let (_, cover) = quotient_graph(g, group)?;
    let rep = local_group(&cover, &jac.flow, group)?;
    Ok((
        rep.divides,
        json!({
            "group_order": rep.group_order,
            "local_order": big(&rep.subgroup_order),
            "ambient": rep.ambient.to_string(),
        }),
    ))
}

/// Rotations of `C_n` by multiples of `n / d`.
pub fn cycle_rotation_subgroup(n: usize, d: usize) -> Result<(DartGraph, PermGroup)> {
    let g = cycle(n);
    let step = n / d;
    let s = Permutation::new((0..n).map(|v| (v + step) % n).collect())?;
    let f = extend_vertex_map(&g, &s)?.remove(0);
    let grp = PermGroup::generate(g.dart_count(), vec![f], DEFAULT_GROUP_ORDER_CAP)?;
    Ok((g, grp))
}

/// Covering transformations of a random `Z_p` cover that fix the J-flow; `None`
/// when only the identity does.
pub fn invariant_deck_subgroup(seed: u64) -> Result<Option<(DartGraph, PermGroup)>> {
    let mut r = rng(seed, u64::MAX);
    let p = [2, 3, 5][r.gen_range(0..3)];
    let n = r.gen_range(2..=4);
    let base = random_multigraph(seed, n, r.gen_range(1..=2), 0, 0)?;
    let v = random_voltage(seed, &base, &FiniteGroup::cyclic(p))?;
    let (total, cover) = derived_graph(&v)?;
    let ct = covering_transformations(&cover)?;
    let ctg = PermGroup::from_elements(total.dart_count(), &ct, DEFAULT_GROUP_ORDER_CAP)?;
    let jac = jacobian(&total)?;
    let kernel = theta_kernel(&ctg, &jac.flow);
    if kernel.len() <= 1 {
        return Ok(None);
    }
    let h = PermGroup::from_elements(total.dart_count(), &kernel, DEFAULT_GROUP_ORDER_CAP)?;
    Ok(Some((total, h)))
}

fn local_groups(seed: u64, count: usize) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for d in [2, 3] {
        out.push(run_case(format!("c6-z{d}"), || {
            let (g, grp) = cycle_rotation_subgroup(6, d)?;
            local_group_case(&g, &grp)
        }));
    }
    for i in 0..count {
        let s = case_seed(seed, i as u64);
        if i % 2 == 0 {
            out.push(run_case(format!("rotation-{i}"), || {
                let mut r = rng(s, u64::MAX);
                let n = r.gen_range(3..=12);
                let divisors: Vec<usize> = (2..=n).filter(|d| n % d == 0).collect();
                let d = divisors[r.gen_range(0..divisors.len())];
                let (g, grp) = cycle_rotation_subgroup(n, d)?;
                let (ok, mut details) = local_group_case(&g, &grp)?;
                details["cycle"] = json!(n);
                Ok((ok, details))
            }));
        } else {
            out.push(run_case(format!("cover-{i}"), || {
                for attempt in 0..200u64 {
                    if let Some((g, h)) = invariant_deck_subgroup(case_seed(s, attempt))? {
                        let (ok, mut details) = local_group_case(&g, &h)?;
                        details["vertices"] = json!(g.vertex_count());
                        details["rejected_draws"] = json!(attempt);
                        return Ok((ok, details));
                    }
                }
                Err(Error::HypothesisUnmet("no flow-invariant deck transformations found".into()))
            }));
        }
    }
    out
}

/// Regularity, transformation count and monodromy order of a derived cover.
pub fn covering_case(v: &VoltageAssignment) -> Result<(bool, Value)> {
    let (_, cover) = derived_graph(v)?;
    let rep = validate_covering(&cover);
    let order = v.group().order();
    let mut ok = rep.is_covering && rep.is_regular && rep.ct_order == order;
    let mut mon_orders = Vec::new();
    let mut same_as_ct = Vec::new();
    for b in 0..v.base().vertex_count() {
        let mon = monodromy_fibre_action(&cover, b)?;
        mon_orders.push(mon.order());
        ok &= mon.order() == rep.fold;
        let ct = ct_fibre_action(&cover, b)?;
        let equal = mon.order() == ct.order() && mon.elements().iter().all(|p| ct.contains(p));
        same_as_ct.push(equal);
        // abelian transformation groups coincide with monodromy on fibres
        if v.group().is_abelian() {
            ok &= equal;
        }
    }
    let (rebuilt, iso) = reconstruct_voltages(&cover)?;
    let (again, _) = derived_graph(&rebuilt)?;
    let total = cover.total();
    let iso_ok = (0..again.dart_count()).all(|x| total.inv(iso[x]) == iso[again.inv(x)])
        && again.vertex_classes().iter().all(|c| {
            let w = total.vertex_of(iso[c[0]]);
            c.iter().all(|&x| total.vertex_of(iso[x]) == w)
        })
        && Permutation::new(iso.clone()).is_ok();
    ok &= iso_ok && rebuilt.is_t_reduced();
    Ok((
        ok,
        json!({
            "fold": rep.fold,
            "regular": rep.is_regular,
            "ct_order": rep.ct_order,
            "monodromy_orders": mon_orders,
            "monodromy_equals_ct": same_as_ct,
            "round_trip": iso_ok,
        }),
    ))
}

fn coverings(seed: u64, count: usize) -> Vec<CaseResult> {
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("z2", FiniteGroup::cyclic(2)),
        ("z3", FiniteGroup::cyclic(3)),
        ("z4", FiniteGroup::cyclic(4)),
        ("z6", FiniteGroup::cyclic(6)),
        ("s3", FiniteGroup::symmetric(3)),
        ("d4", FiniteGroup::dihedral(4)),
        ("q8", FiniteGroup::quaternion()),
    ];
    let mut out = Vec::new();
    for (id, grp, conn) in nonabelian_cayley_instances() {
        out.push(run_case(format!("bouquet-{id}"), || covering_case(&bouquet_voltage(&grp, &conn)?)));
    }
    for i in 0..count {
        let (name, grp) = &groups[i % groups.len()];
        out.push(run_case(format!("random-{name}-{i}"), || {
            let s = case_seed(seed, i as u64);
            let mut r = rng(s, u64::MAX);
            let n = r.gen_range(1..=4);
            let extra = r.gen_range(2..=3);
            let loops = r.gen_range(0..=1);
            let semi = r.gen_range(0..=2);
            let base = random_multigraph(s, n, extra, loops, semi)?;
            covering_case(&random_voltage(s, &base, grp)?)
        }));
    }
    out
}
