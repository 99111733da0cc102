//! The twelve acceptance criteria, each checked exactly. Runs without the
//! libtest harness so that every criterion prints one PASS/FAIL line.

mod common;

use std::fmt::Debug;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Process;

use common::{imp, rats, CoreOracle};
use coregame::analysis::{
    antipodal_imputations, check_concurrency, core_imputation_from_dual, grand_worth, is_core_imputation,
    paid_sometimes, payment_report, profit_ranges, worth, DualFace, Imputation,
};
use coregame::bmatching::{
    con_imputation_from_dual, imputation_from_dual, in_dual_image, in_dual_image_con, in_dual_image_uncon,
    sample_core_vertices, uncon_imputation_from_dual, uniform_core_inverse, SplitScheme,
};
use coregame::dual::optimal_dual;
use coregame::game::Variant;
use coregame::io::bundled_game;
use coregame::lp::{build_dual_lp, build_primal_lp, solve_over_optimal_face, Sense};
use coregame::matching::{
    birkhoff_decompose, brute_force_optima, check_half_integral, classify, classify_vertex, fractional_optimum, Label,
    MatchingVector,
};
use coregame::{rat, Caps, Coalition, DualSolution, Error, GameInstance, Rational};
use proptest::test_runner::TestCaseError;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn same<T: PartialEq + Debug>(what: &str, found: T, expected: T) -> Outcome {
    ensure!(found == expected, "{what}: expected {expected:?}, found {found:?}");
    Ok(())
}

trait Context<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T> Context<T> for coregame::Result<T> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn caps() -> Caps {
    Caps::default()
}

fn game(name: &str) -> Result<GameInstance, String> {
    bundled_game(name).ctx(name)
}

fn coalition(g: &GameInstance, ids: &[&str]) -> Coalition {
    Coalition::from_ids(g, ids.iter().copied()).unwrap()
}

/// Every coordinate pinned by the optimal dual face: min == max == expected.
fn unique_core_imputation(g: &GameInstance, expected: &[&str]) -> Outcome {
    let ranges = profit_ranges(g, &caps()).ctx("profit ranges")?;
    for ((q, (lo, hi)), want) in ranges.iter().enumerate().zip(rats(expected)) {
        let id = &g.vertex(q).id;
        ensure!(lo == hi, "{id} ranges over [{lo}, {hi}]");
        ensure!(*lo == want, "{id} gets {lo}, expected {want}");
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let g = game("example2")?;
    same("worth", grand_worth(&g, &caps()).ctx("worth")?, rat("21/10"))?;
    same("optimal matchings", brute_force_optima(&g, caps().multiplicity).ctx("optima")?.count(), 2)?;
    unique_core_imputation(&g, &["1", "1", "0", "1/10", "0"])
}

fn criterion_2() -> Outcome {
    let g = game("example3")?;
    let a = antipodal_imputations(&g, &caps()).ctx("antipodal")?;
    same("U-optimal", a.u_optimal, imp(&["1/10", "1/10", "0", "9/10", "9/10"]))?;
    same("V-optimal", a.v_optimal, imp(&["0", "0", "0", "1", "1"]))
}

fn criterion_3() -> Outcome {
    let g = game("example4")?;
    same("worth", grand_worth(&g, &caps()).ctx("worth")?, rat("202"))?;
    let top = coalition(&g, &["u1", "u2", "v1", "v2"]);
    same("top coalition worth", worth(&g, &top, &caps()).ctx("worth")?, Some(rat("200")))?;
    let a = antipodal_imputations(&g, &caps()).ctx("antipodal")?;
    same("V-optimal", a.v_optimal, imp(&["50", "50", "0", "0", "50", "50", "1", "1"]))?;
    same("U-optimal", a.u_optimal, imp(&["51", "51", "0", "0", "50", "50", "0", "0"]))
}

fn criterion_4() -> Outcome {
    let g = game("example5")?;
    let c = check_concurrency(&g, &caps()).ctx("concurrency")?;
    same("Q_i", c.q_integral, rat("4"))?;
    same("Q_f", c.q_fractional, rat("4"))?;
    let optima = brute_force_optima(&g, caps().multiplicity).ctx("optima")?;
    same("optimal matchings", optima.count(), 3)?;
    let v2v7 = g.edge_index("v2", "v7").unwrap();
    ensure!(optima.matchings.iter().all(|m| m.multiplicities[v2v7] == Rational::one()), "an optimum avoids v2-v7");
    unique_core_imputation(&g, &["0", "1", "0", "1", "0", "1", "1"])?;
    let payments = payment_report(&g, &caps()).ctx("payments")?;
    let slack = |a: &str, b: &str| payments.edges[g.edge_index(a, b).unwrap()].max_slack.clone();
    same("max slack v4-v7", slack("v4", "v7"), rat("1"))?;
    for (a, b) in [("v1", "v2"), ("v2", "v3"), ("v1", "v7")] {
        same(&format!("max slack {a}-{b}"), slack(a, b), rat("0"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let g = game("example6")?;
    let c = check_concurrency(&g, &caps()).ctx("concurrency")?;
    same("Q_i, Q_f", (c.q_integral, c.q_fractional), (rat("2"), rat("2")))?;
    unique_core_imputation(&g, &["1", "1/2", "1/2", "0"])?;
    same("class of v4", classify_vertex(&g, "v4", caps().multiplicity).ctx("classify")?, Label::Essential)?;
    same("v4 paid sometimes", paid_sometimes(&g, "v4", &caps()).ctx("paid")?.paid_sometimes, false)
}

fn criterion_6() -> Outcome {
    let g = game("k3")?;
    let c = check_concurrency(&g, &caps()).ctx("concurrency")?;
    same("Q_i", c.q_integral, rat("1"))?;
    same("Q_f", c.q_fractional, rat("3/2"))?;
    ensure!(!c.concurrent, "declared concurrent");
    ensure!(matches!(DualFace::new(&g, &caps()), Err(Error::CoreEmpty(_))), "core not declared empty");
    let x = fractional_optimum(&g).ctx("fractional optimum")?;
    let report = check_half_integral(&g, &x);
    ensure!(report.is_half_integral, "fractional optimum not half-integral: {report:?}");
    same("half cycles", report.half_cycles.iter().map(Vec::len).collect::<Vec<_>>(), vec![3])
}

/// Whether every vertex price is fixed on the optimal dual face.
fn dual_is_unique(g: &GameInstance) -> Result<bool, String> {
    let (y, optimum) = optimal_dual(g).ctx("dual")?;
    let lp = build_dual_lp(g);
    let values = y.to_lp_values(g).ctx("dual layout")?;
    for k in 0..values.len() {
        let mut objective = vec![Rational::zero(); values.len()];
        objective[k] = Rational::one();
        for sense in [Sense::Minimize, Sense::Maximize] {
            let s = solve_over_optimal_face(&lp, &optimum, &objective, sense).ctx("face")?;
            if s.values[k] != values[k] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn criterion_7() -> Outcome {
    let g = game("fig7-unconstrained")?;
    let caps = caps();
    same("worth", grand_worth(&g, &caps).ctx("worth")?, rat("4"))?;
    let (y, _) = optimal_dual(&g).ctx("dual")?;
    same("optimal dual", y.vertex_upper.clone(), rats(&["1", "0", "0", "2"]))?;
    ensure!(dual_is_unique(&g)?, "optimal dual is not unique");
    same("dual imputation", uncon_imputation_from_dual(&g, &y, &caps).ctx("imputation")?, imp(&["2", "0", "0", "2"]))?;
    let p = imp(&["3", "0", "0", "1"]);
    ensure!(is_core_imputation(&g, &p, &caps).ctx("core")?.in_core, "(3,0,0,1) not in core");
    ensure!(!in_dual_image_uncon(&g, &p, &caps).ctx("image")?, "(3,0,0,1) in dual image");
    let check = is_core_imputation(&g, &imp(&["1", "0", "0", "3"]), &caps).ctx("core")?;
    ensure!(!check.in_core, "(1,0,0,3) in core");
    same("witness", check.witness.map(|w| w.coalition), Some(coalition(&g, &["u1", "v1"])))
}

fn criterion_8() -> Outcome {
    let g = game("fig7-constrained")?;
    let caps = caps();
    for b in ["0", "1/2", "1"] {
        let b = rat(b);
        let p = Imputation::new(vec![&rat("3") - &b, Rational::zero(), Rational::zero(), &rat("1") + &b]);
        ensure!(in_dual_image_con(&g, &p, &caps).ctx("image")?, "{p} not in dual image");
    }
    let a0 = DualSolution::constrained(rats(&["1", "0", "0", "2"]), rats(&["0", "0", "0"]));
    let a1 = DualSolution::constrained(rats(&["1", "0", "0", "1"]), rats(&["0", "1", "0"]));
    for (name, y) in [("a = 0", &a0), ("a = 1", &a1)] {
        let to_v2 = con_imputation_from_dual(&g, y, &SplitScheme::AllRight, &caps).ctx(name)?;
        same(&format!("{name} with everything to v2"), to_v2, imp(&["2", "0", "0", "2"]))?;
    }
    for point in [["1", "0", "0", "3"], ["0", "0", "1", "3"]] {
        let p = imp(&point);
        ensure!(is_core_imputation(&g, &p, &caps).ctx("core")?.in_core, "{p} not in core");
        ensure!(!in_dual_image_con(&g, &p, &caps).ctx("image")?, "{p} is in the dual image");
    }
    Ok(())
}

fn fail(message: String) -> TestCaseError {
    TestCaseError::fail(message)
}

fn check(cond: bool, message: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(fail(message()))
    }
}

fn run_suite(
    cases: u32,
    strategy: impl proptest::strategy::Strategy<Value = GameInstance>,
    test: impl Fn(&GameInstance) -> Result<(), TestCaseError>,
) -> Outcome {
    common::runner(cases).run(&strategy, |g| test(&g)).map_err(|e| e.to_string())
}

fn lib<T>(r: coregame::Result<T>, what: &str) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(format!("{what}: {e}")))
}

fn assignment_properties(g: &GameInstance) -> Result<(), TestCaseError> {
    let caps = caps();
    let oracle = CoreOracle::new(g);
    let worth = oracle.grand().clone();
    let as_dual = |p: &Imputation| -> Result<bool, TestCaseError> {
        let y = DualSolution::vertex(p.profits.clone());
        Ok(lib(y.is_feasible(g), "feasible")? && lib(y.objective(g), "objective")? == worth)
    };

    // core imputations are exactly the optimal duals
    let (y, _) = lib(optimal_dual(g), "dual")?;
    let from_dual = lib(core_imputation_from_dual(g, &y, &caps), "imputation")?;
    let antipodal = lib(antipodal_imputations(g, &caps), "antipodal")?;
    let mut candidates = vec![from_dual.clone(), antipodal.u_optimal, antipodal.v_optimal];
    candidates.extend(lib(sample_core_vertices(g, &caps, 5, 3), "sample")?);
    candidates.extend(common::perturbations(&from_dual, &rat("1/2")));
    for p in &candidates {
        let (in_core, is_dual) = (oracle.in_core(p), as_dual(p)?);
        check(in_core == is_dual, || format!("{p}: in core {in_core}, optimal dual {is_dual}"))?;
    }

    let classes = lib(classify(g, caps.multiplicity), "classify")?;
    let payments = lib(payment_report(g, &caps), "payments")?;
    for (q, label) in classes.vertices.iter().enumerate() {
        let paid = payments.vertices[q].paid_sometimes;
        check(paid == (*label == Label::Essential), || format!("vertex {}: {label}, paid {paid}", g.vertex(q).id))?;
        if matches!(label, Label::Viable | Label::Subpar) {
            check(!paid, || format!("{label} vertex {} is paid", g.vertex(q).id))?;
        }
    }
    for (e, label) in classes.edges.iter().enumerate() {
        let fair = payments.edges[e].always_fairly_paid;
        check(fair == (*label != Label::Subpar), || format!("edge {}: {label}, always fair {fair}", g.edge_label(e)))?;
    }
    if classes.optima.count() == 1 {
        check(!classes.vertices.contains(&Label::Viable) && !classes.edges.contains(&Label::Viable), || {
            "viable element in a non-degenerate game".into()
        })?;
    }

    // Birkhoff: the barycentre of the optimal matchings
    let k = Rational::from(classes.optima.count() as u32);
    let mut mean = vec![Rational::zero(); g.edge_count()];
    for m in &classes.optima.matchings {
        for (e, x) in m.multiplicities.iter().enumerate() {
            mean[e] += &(x / &k);
        }
    }
    let x = MatchingVector::new(g, mean);
    let parts = lib(birkhoff_decompose(g, &x), "birkhoff")?;
    let mut sum = vec![Rational::zero(); g.edge_count()];
    let mut total = Rational::zero();
    for (lambda, m) in &parts {
        check(m.is_integral() && m.is_feasible(g), || format!("part {} is not a matching", m.label(g)))?;
        total += lambda;
        for (e, v) in m.multiplicities.iter().enumerate() {
            sum[e] += &(lambda * v);
        }
    }
    check(sum == x.multiplicities && total == Rational::one(), || {
        format!("decomposition of {} does not re-sum", x.label(g))
    })
}

fn criterion_9() -> Outcome {
    run_suite(200, common::assignment_game(), assignment_properties)
}

fn general_properties(g: &GameInstance, concurrent_seen: &std::cell::Cell<u32>) -> Result<(), TestCaseError> {
    let caps = caps();
    let c = lib(check_concurrency(g, &caps), "concurrency")?;
    let oracle_qi = common::max_weight(g, common::full_mask(g)).unwrap();
    check(c.q_integral == oracle_qi, || format!("Q_i {} but oracle {oracle_qi}", c.q_integral))?;
    check(c.q_integral <= c.q_fractional, || format!("Q_i {} > Q_f {}", c.q_integral, c.q_fractional))?;

    let primal = build_primal_lp(g);
    let mut rng = 0u64;
    for round in 0..4 {
        let objective: Vec<Rational> = (0..primal.variables.len())
            .map(|_| {
                rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407 + round);
                Rational::from_integer((rng >> 33) as i64 % 7 - 3)
            })
            .collect();
        let s = lib(solve_over_optimal_face(&primal, &c.q_fractional, &objective, Sense::Maximize), "face")?;
        let x = MatchingVector::new(g, s.values);
        let report = check_half_integral(g, &x);
        check(report.is_half_integral, || format!("vertex {} is not half-integral", x.label(g)))?;
    }

    if c.concurrent {
        concurrent_seen.set(concurrent_seen.get() + 1);
        let classes = lib(classify(g, caps.multiplicity), "classify")?;
        let payments = lib(payment_report(g, &caps), "payments")?;
        for (q, label) in classes.vertices.iter().enumerate() {
            let paid = payments.vertices[q].paid_sometimes;
            check(!paid || *label == Label::Essential, || format!("{label} vertex {} is paid", g.vertex(q).id))?;
        }
        for (e, label) in classes.edges.iter().enumerate() {
            let fair = payments.edges[e].always_fairly_paid;
            check(*label == Label::Subpar || fair, || format!("{label} edge {} not always fair", g.edge_label(e)))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let concurrent = std::cell::Cell::new(0);
    run_suite(200, common::general_game(), |g| general_properties(g, &concurrent))?;
    ensure!(concurrent.get() >= 50, "only {} concurrent instances", concurrent.get());
    Ok(())
}

fn b_properties(g: &GameInstance) -> Result<(), TestCaseError> {
    let caps = caps();
    let oracle = CoreOracle::new(g);
    let (y, _) = lib(optimal_dual(g), "dual")?;
    let splits: &[SplitScheme] = match g.variant() {
        Variant::BConstrained | Variant::BGeneral => {
            &[SplitScheme::Balanced, SplitScheme::AllLeft, SplitScheme::AllRight]
        }
        _ => &[SplitScheme::Balanced],
    };
    let mut candidates = Vec::new();
    for split in splits {
        let p = lib(imputation_from_dual(g, &y, split, &caps), &format!("imputation from dual {y:?} ({split:?})"))?;
        let in_core = lib(is_core_imputation(g, &p, &caps), "core")?.in_core;
        check(in_core, || format!("dual-derived {p} fails the connected-coalition check"))?;
        candidates.push(p);
    }
    let samples = lib(sample_core_vertices(g, &caps, 9, 3), "sample")?;
    if g.variant() == Variant::BUniform {
        for p in &samples {
            let y = lib(uniform_core_inverse(g, p, &caps), "inverse")?;
            let optimal = lib(y.is_feasible(g), "feasible")? && lib(y.objective(g), "objective")? == *oracle.grand();
            check(optimal, || format!("inverse of {p} is not an optimal dual"))?;
            check(lib(in_dual_image(g, p, &caps), "image")?, || format!("core point {p} outside the dual image"))?;
        }
    }
    candidates.extend(samples);
    let base = candidates[0].clone();
    candidates.extend(common::perturbations(&base, &rat("1/2")));
    for p in &candidates {
        let connected = lib(is_core_imputation(g, p, &caps), "core")?.in_core;
        let all = oracle.in_core(p);
        check(connected == all, || format!("{p}: connected coalitions say {connected}, all coalitions say {all}"))?;
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    for variant in [Variant::BUniform, Variant::BUnconstrained, Variant::BConstrained, Variant::BGeneral] {
        run_suite(100, common::b_game(variant), b_properties).map_err(|e| format!("{variant}: {e}"))?;
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    let run = || {
        Process::new(env!("CARGO_BIN_EXE_coregame"))
            .arg("examples")
            .output()
            .map_err(|e| format!("cannot run the binary: {e}"))
    };
    let (first, second) = (run()?, run()?);
    ensure!(
        first.status.success(),
        "examples exited with {}: {}",
        first.status,
        String::from_utf8_lossy(&first.stdout)
    );
    ensure!(first.stdout == second.stdout, "reports differ between runs");
    ensure!(!first.stdout.is_empty(), "empty report");
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("example 2: worth, two optima, unique core imputation", criterion_1),
        ("example 3: antipodal imputations", criterion_2),
        ("example 4: worths and antipodal imputations", criterion_3),
        ("example 5: concurrency, optima, unique imputation, slacks", criterion_4),
        ("example 6: unique imputation, essential but never paid v4", criterion_5),
        ("triangle: empty core and half-integral optimum", criterion_6),
        ("fig7 unconstrained: dual, imputation, separation", criterion_7),
        ("fig7 constrained: family, separation, shared image", criterion_8),
        ("assignment property suite", criterion_9),
        ("general-graph property suite", criterion_10),
        ("b-matching property suite", criterion_11),
        ("determinism of the examples report", criterion_12),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
