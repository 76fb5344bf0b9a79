//! Acceptance suite: one check per criterion, each printing a single
//! `criterion N (name): pass|fail` line. Every criterion is checked both
//! through the library and against an oracle written here from scratch.
//!
//! Runs without the libtest harness so the lines are never captured; the
//! process exits nonzero when any criterion fails.

use std::collections::{BTreeSet, VecDeque};
use std::panic::catch_unwind;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use dartjac::covers::{covering_transformations, derived_graph, quotient_graph};
use dartjac::dartgraph::families::{complete, two_triple_bundles};
use dartjac::dartgraph::{
    edge_connectivity, is_connected, spanning_tree_count, spanning_tree_enumerate, DartGraph,
    DEFAULT_ENUMERATION_EDGE_CAP,
};
use dartjac::jacobian::{jacobian, jacobian_via_divisors};
use dartjac::random::{
    add_loops_and_semiedges, case_seed, gnp_simple, random_multigraph, random_voltage, rng,
};
use dartjac::symmetry::{
    automorphisms, count_invertible_matrices, extend_vertex_map, theta_kernel, verify_faithful,
    FiniteGroup, PermGroup, Permutation, ThetaContext, DEFAULT_AUT_VERTEX_CAP,
    DEFAULT_GROUP_ORDER_CAP,
};
use dartjac::verify::{
    cycle_rotation_subgroup, local_group_case, nonabelian_cayley_instances, rotation_controls,
    run_suite, sample_pfold_instance, faithful_instances, Outcome, Suite, SuiteReport,
};
use num_bigint::BigInt;
use rand::Rng;

const SEED: u64 = 20_240_607;

/// Criteria that have printed their verdict line.
static REPORTED: Mutex<Vec<u32>> = Mutex::new(Vec::new());

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Duration,
    start: Instant,
    failures: Vec<String>,
    note: String,
}

impl Criterion {
    fn new(number: u32, name: &'static str, limit_secs: u64) -> Self {
        Criterion {
            number,
            name,
            limit: Duration::from_secs(limit_secs),
            start: Instant::now(),
            failures: Vec::new(),
            note: String::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn suite(&mut self, rep: &SuiteReport, expected_cases: usize) {
        self.expect(rep.cases.len() == expected_cases, || {
            format!("{}: {} cases, expected {expected_cases}", rep.suite, rep.cases.len())
        });
        for c in &rep.cases {
            self.expect(c.outcome == Outcome::Pass, || {
                format!("{}/{}: {} {}", rep.suite, c.id, c.outcome, c.details)
            });
        }
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        let limit = self.limit;
        self.expect(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"));
        let verdict = if self.failures.is_empty() { "pass" } else { "fail" };
        let note = if self.note.is_empty() { String::new() } else { format!(" ({})", self.note) };
        println!(
            "criterion {} ({}): {verdict} in {:.3}s{note}",
            self.number,
            self.name,
            elapsed.as_secs_f64()
        );
        REPORTED.lock().unwrap().push(self.number);
        assert!(self.failures.is_empty(), "{:#?}", self.failures);
    }
}

// ---- oracles ----

/// Spanning tree count as a Laplacian cofactor, by fraction-free elimination.
fn tau_oracle(g: &DartGraph) -> BigInt {
    let n = g.vertex_count();
    if n == 1 {
        return BigInt::from(1);
    }
    let mut l = vec![vec![0i128; n]; n];
    for x in 0..g.dart_count() {
        let (u, w) = (g.vertex_of(x), g.vertex_of(g.inv(x)));
        if x != g.inv(x) && u != w {
            // each ordinary edge is seen once from each dart
            l[u][u] += 1;
            l[u][w] -= 1;
        }
    }
    let m = n - 1;
    let mut a: Vec<Vec<i128>> = l[1..].iter().map(|r| r[1..].to_vec()).collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    BigInt::from(sign * a[m - 1][m - 1])
}

fn ordinary_edges(g: &DartGraph) -> Vec<usize> {
    (0..g.dart_count())
        .filter(|&x| x < g.inv(x) && g.vertex_of(x) != g.vertex_of(g.inv(x)))
        .collect()
}

fn connected_without(g: &DartGraph, removed: &[usize]) -> bool {
    let cut = |x: usize| removed.contains(&x.min(g.inv(x)));
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &x in g.darts_at(v) {
            let w = g.vertex_of(g.inv(x));
            if !cut(x) && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// True when no set of fewer than `k` edges disconnects `g`.
fn no_cut_below(g: &DartGraph, k: usize) -> bool {
    let edges = ordinary_edges(g);
    fn rec(g: &DartGraph, edges: &[usize], from: usize, chosen: &mut Vec<usize>, left: usize) -> bool {
        if !connected_without(g, chosen) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for i in from..edges.len() {
            chosen.push(edges[i]);
            let ok = rec(g, edges, i + 1, chosen, left - 1);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    k == 0 || rec(g, &edges, 0, &mut Vec::new(), k - 1)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn vertex_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in vertex_permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Automorphism count of a loopless, semiedge-free multigraph: vertex maps
/// preserving multiplicities, times independent permutations of each bundle.
fn aut_order_oracle(g: &DartGraph) -> usize {
    let m = g.multiplicity_matrix();
    let n = g.vertex_count();
    let vertex_maps = vertex_permutations(n)
        .into_iter()
        .filter(|s| (0..n).all(|u| (0..n).all(|w| m[s[u]][s[w]] == m[u][w])))
        .count();
    let mut bundles = 1;
    for u in 0..n {
        for w in u + 1..n {
            bundles *= factorial(m[u][w]);
        }
    }
    vertex_maps * bundles
}

/// Elements fixing every flow value, read directly from the J-flow.
fn kernel_oracle(g: &DartGraph, group: &PermGroup) -> usize {
    let jac = jacobian(g).expect("jacobian");
    group
        .elements()
        .iter()
        .filter(|f| (0..g.dart_count()).all(|x| jac.flow.value(f.apply(x)) == jac.flow.value(x)))
        .count()
}

fn semiregular_oracle(g: &DartGraph, group: &PermGroup) -> bool {
    group.elements().iter().filter(|f| !f.is_identity()).all(|f| {
        (0..g.dart_count()).all(|x| f.apply(x) != x)
            && g.vertex_classes().iter().all(|c| g.vertex_of(f.apply(c[0])) != g.vertex_of(c[0]))
    })
}

fn vertex_map_group(g: &DartGraph, cycles: &str) -> PermGroup {
    let s = Permutation::parse_cycles(g.vertex_count(), cycles).unwrap();
    let f = extend_vertex_map(g, &s).unwrap().remove(0);
    PermGroup::generate(g.dart_count(), vec![f], DEFAULT_GROUP_ORDER_CAP).unwrap()
}

// ---- criteria ----

fn criterion_1_worked_example() {
    let mut c = Criterion::new(1, "worked example", 1);
    let g = two_triple_bundles();
    let aut = automorphisms(&g, DEFAULT_AUT_VERTEX_CAP).unwrap();
    c.expect(aut.order() == 72, || format!("|Aut| = {}", aut.order()));
    let oracle = aut_order_oracle(&g);
    c.expect(oracle == 72, || format!("oracle |Aut| = {oracle}"));
    c.expect(aut.elements().iter().all(|f| dartjac::symmetry::is_automorphism(&g, f)), || {
        "non-automorphism in Aut".into()
    });

    let jac = jacobian(&g).unwrap();
    let three = BigInt::from(3);
    c.expect(jac.group.factors() == [three.clone(), three.clone()], || {
        format!("factors {:?}", jac.group.factors())
    });
    let via_divisors = jacobian_via_divisors(&g).unwrap();
    c.expect(via_divisors == jac.group, || format!("divisor path gives {via_divisors}"));

    let tau = spanning_tree_count(&g).unwrap();
    c.expect(tau == BigInt::from(9), || format!("tau = {tau}"));
    c.expect(tau_oracle(&g) == BigInt::from(9), || "oracle tau".into());
    let listed = spanning_tree_enumerate(&g, DEFAULT_ENUMERATION_EDGE_CAP).unwrap().len();
    c.expect(listed == 9, || format!("enumerated {listed} trees"));

    let gl = count_invertible_matrices(2, 3);
    c.expect(gl == 48, || format!("|GL2(Z3)| = {gl}"));
    // closed form (q^2 - 1)(q^2 - q)
    c.expect(gl == (9 - 1) * (9 - 3), || "closed form".into());

    let kernel = theta_kernel(&aut, &jac.flow).len();
    c.expect(kernel > 1, || format!("kernel size {kernel}"));
    c.expect(kernel_oracle(&g, &aut) == kernel, || "kernel oracle disagrees".into());
    // the image embeds in GL2(Z3)
    let image = ThetaContext::new(&g, &jac.flow).unwrap().image_order(&aut).unwrap();
    c.expect(image * kernel == 72 && 48 % image == 0, || format!("image {image}"));
    c.finish();
}

fn criterion_2_dual_path_equality() {
    let mut c = Criterion::new(2, "jacobian order equals tree count", 60);
    c.suite(&run_suite(Suite::P1, SEED, Some(100)), 120);

    let mut enumerated = 0;
    let mut check = |c: &mut Criterion, id: String, g: &DartGraph| {
        let order = jacobian(g).unwrap().group.order();
        let tau = spanning_tree_count(g).unwrap();
        let oracle = tau_oracle(g);
        c.expect(order == tau && tau == oracle, || format!("{id}: jac {order} tau {tau} oracle {oracle}"));
        if ordinary_edges(g).len() <= DEFAULT_ENUMERATION_EDGE_CAP {
            let listed = spanning_tree_enumerate(g, DEFAULT_ENUMERATION_EDGE_CAP).unwrap().len();
            c.expect(BigInt::from(listed) == tau, || format!("{id}: enumerated {listed}, tau {tau}"));
            enumerated += 1;
        }
    };
    for i in 0..100u64 {
        let s = case_seed(SEED ^ 0x5eed, i);
        let mut r = rng(s, u64::MAX);
        let n = r.gen_range(5..=9);
        let g = gnp_simple(s, n, r.gen_range(0.3..0.8)).unwrap();
        c.expect(g.is_simple() && is_connected(&g) && g.vertex_count() == n, || {
            format!("simple-{i}: bad draw")
        });
        check(&mut c, format!("simple-{i}"), &g);
    }
    for i in 0..20u64 {
        let s = case_seed(SEED ^ 0x3417, i);
        let mut r = rng(s, u64::MAX);
        let n = r.gen_range(2..=6);
        let (extra, loops, semi) = (r.gen_range(1..=5), r.gen_range(0..=2), r.gen_range(0..=2));
        let g = random_multigraph(s, n, extra, loops, semi).unwrap();
        check(&mut c, format!("multi-{i}"), &g);
    }
    c.expect(enumerated > 0, || "no instance small enough to enumerate".into());
    c.finish();
}

fn criterion_3_pfold_bound() {
    let mut c = Criterion::new(3, "p-fold spanning tree bound", 120);
    c.suite(&run_suite(Suite::Pfold, SEED, Some(100)), 100);

    let mut strict_cases = 0;
    for i in 0..100u64 {
        let p = [2, 3, 5][i as usize % 3];
        let (v, _) = sample_pfold_instance(case_seed(SEED, i), p).unwrap();
        c.expect(v.is_t_reduced() && v.generates() && v.group().order() == p, || {
            format!("case {i}: voltages not T-reduced and generating")
        });
        let (total, _) = derived_graph(&v).unwrap();
        c.expect(is_connected(&total) && total.is_simple() && no_cut_below(&total, 2), || {
            format!("case {i}: cover misses the hypotheses")
        });
        let tau_x = tau_oracle(&total);
        // the oracle ignores loops and semiedges
        let tau_y = tau_oracle(v.base());
        let bound = BigInt::from(p) * &tau_y;
        c.expect(tau_x >= bound, || format!("case {i}: tau(X) = {tau_x} < {p} * {tau_y}"));
        if no_cut_below(&total, 3) {
            strict_cases += 1;
            c.expect(tau_x > bound, || format!("case {i}: 3-edge-connected but tau(X) = {p} * tau(Y)"));
        }
    }
    c.note = format!("{strict_cases} of 100 covers 3-edge-connected");
    c.finish();
}

fn criterion_4_faithful_actions() {
    let mut c = Criterion::new(4, "faithful actions", 60);
    c.suite(&run_suite(Suite::Main, SEED, None), 11);

    let instances = faithful_instances().unwrap();
    c.expect(instances.len() == 5, || format!("{} instances", instances.len()));
    let expected_orders = [2, 5, 6, 8, 2];
    for ((id, g, grp), want) in instances.iter().zip(expected_orders) {
        c.expect(grp.order() == want, || format!("{id}: |G| = {}", grp.order()));
        c.expect(g.is_simple(), || format!("{id}: not simple"));
        c.expect(no_cut_below(g, 3), || format!("{id}: not 3-edge-connected"));
        c.expect(semiregular_oracle(g, grp), || format!("{id}: not semiregular"));
        let r = verify_faithful(g, grp).unwrap();
        c.expect(r.simple && r.three_edge_connected && r.semiregular, || {
            format!("{id}: library rejects hypotheses {r:?}")
        });
        c.expect(r.kernel_size == 1 && kernel_oracle(g, grp) == 1, || format!("{id}: kernel {}", r.kernel_size));
        c.expect(r.image_order == grp.order(), || format!("{id}: image {} of {}", r.image_order, grp.order()));
    }
    c.finish();
}

fn criterion_5_two_connected_controls() {
    let mut c = Criterion::new(5, "cycle controls", 5);
    let controls = rotation_controls().unwrap();
    c.expect(controls.iter().map(|(n, _, _)| *n).eq(3..=8), || "cycle lengths".into());
    for (n, g, grp) in &controls {
        c.expect(grp.order() == *n, || format!("C{n}: rotation group of order {}", grp.order()));
        c.expect(semiregular_oracle(g, grp), || format!("C{n}: not semiregular"));
        c.expect(no_cut_below(g, 2) && !no_cut_below(g, 3), || format!("C{n}: not exactly 2-edge-connected"));
        let k = theta_kernel(grp, &jacobian(g).unwrap().flow).len();
        c.expect(k == *n && kernel_oracle(g, grp) == *n, || format!("C{n}: kernel {k}"));
        let jac = jacobian(g).unwrap();
        let image = ThetaContext::new(g, &jac.flow).unwrap().image_order(grp).unwrap();
        c.expect(image == 1, || format!("C{n}: image {image}"));
    }
    c.finish();
}

fn criterion_6_nonabelian_cayley() {
    let mut c = Criterion::new(6, "non-abelian Cayley graphs", 30);
    c.suite(&run_suite(Suite::CayleyRank, SEED, None), 3);

    for (id, grp, conn) in nonabelian_cayley_instances() {
        c.expect(!grp.is_abelian() && grp.generates(&conn) && conn.len() >= 3, || {
            format!("{id}: bad connection set")
        });
        let g = dartjac::covers::cayley_multigraph(&grp, &conn).unwrap();
        let k = g.valency(0);
        c.expect((0..g.vertex_count()).all(|v| g.valency(v) == k) && k >= 3, || format!("{id}: valency"));
        let lambda = edge_connectivity(&g).unwrap();
        c.expect(lambda == k, || format!("{id}: edge connectivity {lambda}, valency {k}"));
        c.expect(no_cut_below(&g, k), || format!("{id}: oracle finds a cut below {k}"));
        let jac = jacobian(&g).unwrap();
        c.expect(jac.group.rank() >= 2 && !jac.group.is_cyclic(), || format!("{id}: Jacobian {}", jac.group));
        c.expect(jacobian_via_divisors(&g).unwrap() == jac.group, || format!("{id}: divisor path"));
        c.expect(jac.group.order() == tau_oracle(&g), || format!("{id}: order vs tau"));
    }
    c.finish();
}

fn criterion_7_semiedge_nullity() {
    let mut c = Criterion::new(7, "semiedges and loops", 30);
    c.suite(&run_suite(Suite::SemiedgeNull, SEED, Some(25)), 26);

    for i in 0..25u64 {
        let s = case_seed(SEED ^ 0x7, i);
        let mut r = rng(s, u64::MAX);
        let g = random_multigraph(s, r.gen_range(2..=7), r.gen_range(0..=4), 0, 0).unwrap();
        let k = r.gen_range(1..=4);
        let h = add_loops_and_semiedges(&g, &mut r, k).unwrap();
        c.expect(h.edge_count() == g.edge_count() + k, || format!("case {i}: nothing added"));
        let before = jacobian(&g).unwrap().group;
        let after = jacobian(&h).unwrap().group;
        c.expect(before == after, || format!("case {i}: {before} became {after}"));
        c.expect(jacobian_via_divisors(&g).unwrap() == after, || format!("case {i}: divisor path"));
    }

    let k4 = complete(4);
    let grp = vertex_map_group(&k4, "(0 1)(2 3)");
    let (q, _) = quotient_graph(&k4, &grp).unwrap();
    c.expect(q.has_semiedges(), || "K4/Z2 has no semiedges".into());
    let order = jacobian(&q).unwrap().group.order();
    let tau = tau_oracle(&q.without_loops_and_semiedges().unwrap());
    c.expect(order == tau, || format!("K4/Z2: order {order}, tau {tau}"));
    c.finish();
}

fn criterion_8_local_groups() {
    let mut c = Criterion::new(8, "local groups", 30);
    let rep = run_suite(Suite::LocalGroup, SEED, Some(20));
    c.suite(&rep, 22);

    for (d, want_orbits) in [(2, 3), (3, 2)] {
        let (g, grp) = cycle_rotation_subgroup(6, d).unwrap();
        c.expect(grp.order() == d, || format!("C6/Z{d}: group order {}", grp.order()));
        let (q, _) = quotient_graph(&g, &grp).unwrap();
        c.expect(q.vertex_count() == want_orbits, || format!("C6/Z{d}: {} vertices", q.vertex_count()));
        let (ok, details) = local_group_case(&g, &grp).unwrap();
        let local: usize = details["local_order"].as_str().unwrap().parse().unwrap();
        c.expect(ok && d % local == 0, || format!("C6/Z{d}: local order {local}"));
    }
    for case in &rep.cases {
        if let (Some(g), Some(l)) = (case.details["group_order"].as_u64(), case.details["local_order"].as_str()) {
            let l: u64 = l.parse().unwrap();
            c.expect(g % l == 0, || format!("{}: {l} does not divide {g}", case.id));
        }
    }
    c.finish();
}

fn criterion_9_covering_algebra() {
    let mut c = Criterion::new(9, "covering algebra", 30);
    c.suite(&run_suite(Suite::Covering, SEED, Some(20)), 23);

    let groups = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(5),
        FiniteGroup::symmetric(3),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    ];
    for i in 0..20u64 {
        let grp = &groups[i as usize % groups.len()];
        let s = case_seed(SEED ^ 0x9, i);
        let base = random_multigraph(s, 3, 2, 1, 1).unwrap();
        let v = random_voltage(s, &base, grp).unwrap();
        let (total, cover) = derived_graph(&v).unwrap();
        let rep = dartjac::covers::validate_covering(&cover);
        c.expect(rep.is_covering && rep.is_regular && rep.ct_order == grp.order(), || {
            format!("case {i}: {rep:?}")
        });
        // left multiplication on the group coordinate is a covering transformation
        let n = base.dart_count();
        let expected: BTreeSet<Vec<usize>> = (0..grp.order())
            .map(|h| (0..total.dart_count()).map(|d| grp.mul(h, d / n) * n + d % n).collect())
            .collect();
        let found: BTreeSet<Vec<usize>> = covering_transformations(&cover)
            .unwrap()
            .iter()
            .map(|p| p.image().to_vec())
            .collect();
        c.expect(found == expected, || format!("case {i}: transformations differ from left multiplication"));
        for b in 0..base.vertex_count() {
            let mon = dartjac::covers::monodromy_fibre_action(&cover, b).unwrap();
            c.expect(mon.order() == cover.fold(), || format!("case {i}: |Mon| = {} at {b}", mon.order()));
        }
    }
    c.finish();
}

fn main() -> ExitCode {
    let criteria: [(u32, fn()); 9] = [
        (1, criterion_1_worked_example),
        (2, criterion_2_dual_path_equality),
        (3, criterion_3_pfold_bound),
        (4, criterion_4_faithful_actions),
        (5, criterion_5_two_connected_controls),
        (6, criterion_6_nonabelian_cayley),
        (7, criterion_7_semiedge_nullity),
        (8, criterion_8_local_groups),
        (9, criterion_9_covering_algebra),
    ];
    let mut failed = Vec::new();
    for (n, check) in criteria {
        if catch_unwind(check).is_err() {
            if !REPORTED.lock().unwrap().contains(&n) {
                println!("criterion {n}: fail (panicked before completing)");
            }
            failed.push(n);
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed.len(), criteria.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
