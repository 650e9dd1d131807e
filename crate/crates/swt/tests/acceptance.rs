//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.
//! Criteria listed in `KNOWN_RED` are expected to print FAIL; the line
//! carries the analysis. The target exits nonzero if any other criterion is
//! red or if a known-red one turns green without this list being updated.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde_json::Value;
use swt::braid::{analyze, exclude_three_summands, Reduction};
use swt::enumerate::{run_property_sweep, Manifest, Property, SweepSpec};
use swt::graph::{load, Document};
use swt::web::{feasible_slopes, find_full_quota, verify_great_web};
use swt::BraidWord;

const KNOWN_RED: &[u32] = &[7];

/// Paired grid enumerated exhaustively, as (p, q); (6, 6) does not finish
/// within 9 CPU-minutes in release builds.
const PAIRED_GRID: &[(u32, u32)] = &[(4, 2), (4, 4), (4, 6), (6, 2), (6, 4)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn sweep(text: &str) -> Manifest {
    let spec: SweepSpec = serde_json::from_str(text).unwrap();
    run_property_sweep(&spec).unwrap()
}

fn tally(m: &Manifest, p: Property) -> (usize, usize) {
    m.tallies.get(&p).map_or((0, 0), |t| (t.checked, t.failed))
}

fn stat(m: &Manifest, key: &str) -> usize {
    m.grid
        .iter()
        .map(|g| g.stats.get(key).copied().unwrap_or(0))
        .sum()
}

/// "checked/failed" for each property, and whether all passed with at
/// least one check.
fn tally_line(m: &Manifest, props: &[Property]) -> (bool, String) {
    let mut ok = m.counterexamples.is_empty();
    let parts: Vec<String> = props
        .iter()
        .map(|&p| {
            let (c, f) = tally(m, p);
            ok &= f == 0;
            format!("{p} {c}/{f}")
        })
        .collect();
    (ok, format!("checked/failed: {}", parts.join(", ")))
}

const CASES: &str = r#"[{"type": "general", "l": 2}, {"type": "general", "l": 3},
    {"type": "three_summands", "l1": 2, "l2": 3, "x": 4, "p1": 2, "p2": 4},
    {"type": "three_summands", "l1": 2, "l2": 3, "x": 4, "p1": 4, "p2": 2}]"#;

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let empty = (1..=5).all(|b| feasible_slopes(b).is_empty());
    let six: Vec<(u32, u32, u32)> = feasible_slopes(6)
        .iter()
        .map(|s| (s.l1, s.l2, s.r))
        .collect();
    let t = start.elapsed();
    outcome(
        empty && six == [(2, 3, 6)] && within(t, Duration::from_secs(1)),
        format!("b = 1..5 empty: {empty}; b = 6 -> {six:?}; {t:.1?}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let a = analyze(&BraidWord::parse("1 1 1", Some(2)).unwrap());
    let trefoil = a.is_knot
        && a.strands == 2
        && a.e == 3
        && a.genus == Some(1)
        && a.candidate_slope == Some(1);
    let r = exclude_three_summands(&BraidWord::parse("1 2 1 2", Some(3)).unwrap(), 3).unwrap();
    let reduced = match &r.reduction {
        Reduction::Eliminated { word, .. } => {
            word.strands() == 2 && word.exponent_sum() - word.strands() as i64 == 1
        }
        _ => false,
    };
    let t = start.elapsed();
    outcome(
        trefoil && reduced && within(t, Duration::from_secs(1)),
        format!(
            "sigma1^3: knot {}, n {}, e {}, g {:?}, slope {:?}; sigma1 sigma2 sigma1 sigma2 at depth 3: {}; {t:.1?}",
            a.is_knot, a.strands, a.e, a.genus, a.candidate_slope, r.reduction
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let m = sweep(
        r#"{"target": "braids", "n": [1, 2, 3, 4, 5], "max_len": 10,
            "sample": {"seed": 20240229, "count": 10000, "max_strands": 8, "max_len": 20},
            "properties": ["components_match", "moves_preserve"]}"#,
    );
    let t = start.elapsed();
    let (ok, line) = tally_line(&m, &[Property::ComponentsMatch, Property::MovesPreserve]);
    outcome(
        ok && m.count > 0 && within(t, Duration::from_secs(300)),
        format!("{} words; {line}; {t:.1?}", m.count),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let m = sweep(
        r#"{"target": "braids", "knots": {"n": [6, 7], "s_max": 2, "e_max": 16, "depth": 8},
            "properties": ["dichotomy_reducible"]}"#,
    );
    let t = start.elapsed();
    let (ok, line) = tally_line(&m, &[Property::DichotomyReducible]);
    let unresolved: Vec<String> = m
        .counterexamples
        .iter()
        .map(|c| c.data.to_string())
        .collect();
    outcome(
        ok && m.count > 0 && within(t, Duration::from_secs(1800)),
        format!(
            "{} knot classes, {} reduced, {} unresolved {:?}; {line}; {t:.1?}",
            m.count,
            stat(&m, "reduced"),
            unresolved.len(),
            unresolved
        ),
    )
}

/// Paired sweep shared by criteria 5 and 8.
fn paired_manifest() -> (Manifest, Duration) {
    let start = Instant::now();
    let mut manifests = Vec::new();
    for &(p, q) in PAIRED_GRID {
        manifests.push(sweep(&format!(
            r#"{{"target": "paired", "p": [{p}], "q": [{q}], "cases": {CASES},
                "properties": ["l_divides_v", "gamma_valences", "subregion_balance", "cyclic_shift",
                               "euler", "parity", "no_monogon", "mirror_invariance", "scharlemann_oracle"]}}"#
        )));
    }
    let mut merged = manifests.remove(0);
    for m in manifests {
        merged.count += m.count;
        merged.grid.extend(m.grid);
        for (p, t) in m.tallies {
            let e = merged.tallies.entry(p).or_default();
            e.checked += t.checked;
            e.failed += t.failed;
        }
        merged.counterexamples.extend(m.counterexamples);
    }
    (merged, start.elapsed())
}

fn webs_manifest() -> (Manifest, Duration) {
    let start = Instant::now();
    let m = sweep(&format!(
        r#"{{"target": "webs", "v": [1, 2, 3, 4], "p": [4, 6], "cases": {CASES},
            "properties": ["l_divides_v", "gamma_valences", "subregion_balance", "cyclic_shift",
                           "lambda_dichotomy", "quota_when_l_equals_v"]}}"#
    ));
    (m, start.elapsed())
}

fn criterion_5(paired: &(Manifest, Duration), webs: &(Manifest, Duration)) -> Outcome {
    let props = [
        Property::LDividesV,
        Property::GammaValences,
        Property::SubregionBalance,
        Property::CyclicShift,
    ];
    let (ok_p, line_p) = tally_line(&paired.0, &props);
    let (ok_w, line_w) = tally_line(&webs.0, &props);
    let t = paired.1 + webs.1;
    let paired_webs = stat(&paired.0, "webs");
    outcome(
        ok_p && ok_w && paired_webs > 0 && within(t, Duration::from_secs(1800)),
        format!(
            "paired configurations at (p, q) in {PAIRED_GRID:?}: {} configurations, {paired_webs} certified webs, {line_p}; \
             web patches v <= 4 with a planar realization of Gamma: {} certified, {} realized, {line_w}; \
             paired webs with v >= 3 need q >= 2v >= 6, beyond the exhaustive paired ceiling, so v = 3, 4 are covered by the realized patches only; {t:.1?}",
            paired.0.count,
            stat(&webs.0, "certified"),
            stat(&webs.0, "realized"),
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let m = sweep(&format!(
        r#"{{"target": "webs", "v": [1, 2, 3, 4], "p": [4, 6], "cases": {CASES}, "ghost_rule": "relaxed",
            "properties": ["lambda_dichotomy"]}}"#
    ));
    let t = start.elapsed();
    let (ok, line) = tally_line(&m, &[Property::LambdaDichotomy]);
    let (checked, _) = tally(&m, Property::LambdaDichotomy);
    outcome(
        ok && checked > 0,
        format!(
            "{} patches under the relaxed ghost rule; {line}; {t:.1?}",
            m.count
        ),
    )
}

fn criterion_7(webs: &(Manifest, Duration)) -> Outcome {
    let start = Instant::now();
    let (sweep_ok, line) = tally_line(&webs.0, &[Property::QuotaWhenLEqualsV]);
    let (checked, _) = tally(&webs.0, Property::QuotaWhenLEqualsV);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/w1.json");
    let Document::Patch(w1) = load(&path).unwrap() else {
        panic!("w1 is a patch")
    };
    let web = verify_great_web((&w1).into(), &["v1", "v2"])
        .unwrap()
        .web
        .unwrap();
    let report = find_full_quota(&web.patch).unwrap();
    let w1_large = report.classification == "large";
    let quota: Value = serde_json::to_value(&report.quota).unwrap();
    let t = start.elapsed() + webs.1;
    outcome(
        sweep_ok && checked > 0 && w1_large && within(t, Duration::from_secs(300)),
        format!(
            "l = v sweep: {line} (all contain a full quota: {}); W1 classified {} with quota {quota}: \
             the forced rotations make a2, a3 cobound an interior bigon with corners (4,1), (2,3), which is not \
             a Scharlemann cycle, so {{a2, a3}} is a full quota and W1 is small, contradicting the stated \
             classification; {t:.1?}",
            sweep_ok && checked > 0,
            report.classification
        ),
    )
}

fn criterion_8(paired: &(Manifest, Duration)) -> Outcome {
    let props = [
        Property::Euler,
        Property::Parity,
        Property::NoMonogon,
        Property::MirrorInvariance,
    ];
    let (ok, line) = tally_line(&paired.0, &props);
    let (checked, _) = tally(&paired.0, Property::Euler);
    outcome(
        ok && checked > 0,
        format!(
            "{} paired configurations at (p, q) in {PAIRED_GRID:?}; {line}",
            paired.0.count
        ),
    )
}

fn main() {
    let mut results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
    ];
    let paired = paired_manifest();
    let webs = webs_manifest();
    results.push((5, criterion_5(&paired, &webs)));
    results.push((6, criterion_6()));
    results.push((7, criterion_7(&webs)));
    results.push((8, criterion_8(&paired)));
    let mut unexpected = Vec::new();
    for (k, o) in &results {
        println!(
            "criterion {k}: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if o.pass == KNOWN_RED.contains(k) {
            unexpected.push(*k);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected status: {unexpected:?}");
        std::process::exit(1);
    }
}
