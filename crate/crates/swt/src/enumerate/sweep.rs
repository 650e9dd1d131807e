use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::braids::{components_union_find, exponent_vectors, knot_classes, positive_words};
use super::paired::{enumerate_paired, great_webs, PairedConfig};
use super::webs::{enumerate_webs, GhostRule};
use super::EnumError;
use crate::braid::{
    analyze, applicable_moves, apply_move, reduce_search, BraidWord, Letter, Move, SearchOptions,
};
use crate::error::WebError;
use crate::graph::trace_lambda_path_in;
use crate::graph::{
    consecutive_pair, scan_view, validate, Case, GraphDocument, PairedIntersection, Side, SideView,
    Source, WebPatch,
};
use crate::web::{
    build_gamma, check_valences, find_full_quota, realize_gamma, verify_great_web,
    web_divisibility, GammaGraph, GreatWeb,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Webs,
    Paired,
    Braids,
}

/// The symmetry quotiented out before objects are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Canonicalization {
    /// Web vertices renumbered freely, `G_Q` labels shifted cyclically.
    #[default]
    VertexRenumbering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    LDividesV,
    GammaValences,
    SubregionBalance,
    CyclicShift,
    LambdaDichotomy,
    QuotaWhenLEqualsV,
    Euler,
    Parity,
    NoMonogon,
    MirrorInvariance,
    ScharlemannOracle,
    ComponentsMatch,
    MovesPreserve,
    DichotomyReducible,
}

impl Property {
    fn targets(self) -> &'static [Target] {
        use Property::*;
        match self {
            LDividesV | GammaValences | SubregionBalance | CyclicShift => {
                &[Target::Webs, Target::Paired]
            }
            LambdaDichotomy | QuotaWhenLEqualsV => &[Target::Webs],
            Euler | Parity | NoMonogon | MirrorInvariance | ScharlemannOracle => &[Target::Paired],
            ComponentsMatch | MovesPreserve | DichotomyReducible => &[Target::Braids],
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().unwrap_or_default())
    }
}

/// Positive knot words checked against the reduction moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotSweep {
    pub n: Vec<u32>,
    pub s_max: u32,
    pub e_max: usize,
    pub depth: usize,
}

/// Random signed words from a declared seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub seed: u64,
    pub count: usize,
    pub max_strands: u32,
    pub max_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub target: Target,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub v: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<Case>,
    #[serde(default)]
    pub ghost_rule: GhostRule,
    /// Strand counts for exhaustive positive words.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub n: Vec<u32>,
    #[serde(default)]
    pub max_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knots: Option<KnotSweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<Sample>,
    #[serde(default)]
    pub canonicalization: Canonicalization,
    pub properties: Vec<Property>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Wall time is left at zero unless set, keeping manifests
    /// byte-identical across runs.
    #[serde(default)]
    pub record_timing: bool,
}

impl SweepSpec {
    pub fn check(&self) -> Result<(), EnumError> {
        if self.properties.is_empty() {
            return Err(EnumError::Params("property list is empty".into()));
        }
        for p in &self.properties {
            if !p.targets().contains(&self.target) {
                return Err(EnumError::Params(format!(
                    "property {p} does not apply to this target"
                )));
            }
        }
        Ok(())
    }

    fn wants(&self, p: Property) -> bool {
        self.properties.contains(&p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub property: Property,
    pub params: Value,
    pub detail: String,
    /// Full reproduction data: a graph document or a braid word.
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub params: Value,
    /// Objects examined at this grid point.
    pub count: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub spec: SweepSpec,
    pub grid: Vec<GridEntry>,
    pub count: usize,
    pub tallies: BTreeMap<Property, Tally>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}

/// Output of one shard.
#[derive(Default)]
struct Shard {
    entry: Option<GridEntry>,
    tallies: BTreeMap<Property, Tally>,
    counterexamples: Vec<Counterexample>,
}

impl Shard {
    fn new(params: Value) -> Self {
        Shard {
            entry: Some(GridEntry {
                params,
                count: 0,
                stats: BTreeMap::new(),
                skipped: None,
            }),
            ..Shard::default()
        }
    }

    fn params(&self) -> Value {
        self.entry
            .as_ref()
            .map_or(Value::Null, |e| e.params.clone())
    }

    fn stat(&mut self, name: &str, by: usize) {
        if let Some(e) = self.entry.as_mut() {
            *e.stats.entry(name.to_string()).or_default() += by;
        }
    }

    /// Records one check; `failure` carries `(detail, data)`.
    fn record(&mut self, property: Property, failure: Option<(String, Value)>) {
        let t = self.tallies.entry(property).or_default();
        t.checked += 1;
        if let Some((detail, data)) = failure {
            t.failed += 1;
            let params = self.params();
            self.counterexamples.push(Counterexample {
                property,
                params,
                detail,
                data,
            });
        }
    }
}

/// Runs the sweep on one thread.
pub fn run_property_sweep(spec: &SweepSpec) -> Result<Manifest, EnumError> {
    run_property_sweep_with(spec, 1)
}

/// Runs the sweep with grid points sharded over `workers` threads; shard
/// results are merged in grid order, so the manifest does not depend on
/// the worker count.
pub fn run_property_sweep_with(spec: &SweepSpec, workers: usize) -> Result<Manifest, EnumError> {
    spec.check()?;
    let start = Instant::now();
    let jobs = plan(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| EnumError::Params(e.to_string()))?;
    let shards: Vec<Shard> = pool.install(|| jobs.par_iter().map(|j| run_job(spec, j)).collect());
    let mut manifest = Manifest {
        spec: spec.clone(),
        grid: Vec::new(),
        count: 0,
        tallies: BTreeMap::new(),
        counterexamples: Vec::new(),
        elapsed_ms: 0,
    };
    for s in shards {
        if let Some(e) = s.entry {
            manifest.count += e.count;
            manifest.grid.push(e);
        }
        for (p, t) in s.tallies {
            let m = manifest.tallies.entry(p).or_default();
            m.checked += t.checked;
            m.failed += t.failed;
        }
        manifest.counterexamples.extend(s.counterexamples);
    }
    if spec.record_timing {
        manifest.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(manifest)
}

enum Job {
    Webs {
        v: usize,
        p: u32,
        case: Case,
    },
    Paired {
        p: u32,
        q: u32,
        case: Case,
    },
    Words {
        n: u32,
    },
    Knots {
        n: u32,
        s: u32,
        exponents: Vec<usize>,
    },
    Sample,
}

fn plan(spec: &SweepSpec) -> Vec<Job> {
    let mut jobs = Vec::new();
    match spec.target {
        Target::Webs => {
            for &p in &spec.p {
                for &case in &spec.cases {
                    for &v in &spec.v {
                        jobs.push(Job::Webs { v, p, case });
                    }
                }
            }
        }
        Target::Paired => {
            for &p in &spec.p {
                for &q in &spec.q {
                    for &case in &spec.cases {
                        jobs.push(Job::Paired { p, q, case });
                    }
                }
            }
        }
        Target::Braids => {
            jobs.extend(spec.n.iter().map(|&n| Job::Words { n }));
            if let Some(k) = &spec.knots {
                for &n in &k.n {
                    for s in 0..=k.s_max {
                        let e = (2 * n as usize - 2) + s as usize;
                        if e > k.e_max {
                            continue;
                        }
                        for exponents in exponent_vectors(n, e) {
                            jobs.push(Job::Knots { n, s, exponents });
                        }
                    }
                }
            }
            if spec.sample.is_some() {
                jobs.push(Job::Sample);
            }
        }
    }
    jobs
}

fn run_job(spec: &SweepSpec, job: &Job) -> Shard {
    match job {
        Job::Webs { v, p, case } => webs_job(spec, *v, *p, *case),
        Job::Paired { p, q, case } => paired_job(spec, *p, *q, *case),
        Job::Words { n } => words_job(spec, *n),
        Job::Knots { n, s, exponents } => knots_job(spec, *n, *s, exponents),
        Job::Sample => sample_job(spec),
    }
}

fn patch_data(patch: &WebPatch) -> Value {
    serde_json::to_value(GraphDocument::from_patch(patch)).expect("document serializes")
}

fn paired_data(data: &PairedIntersection) -> Value {
    serde_json::to_value(GraphDocument::from_paired(data)).expect("document serializes")
}

fn word_data(word: &BraidWord) -> Value {
    json!({ "strands": word.strands(), "letters": word.to_signed() })
}

fn webs_job(spec: &SweepSpec, v: usize, p: u32, case: Case) -> Shard {
    let mut shard =
        Shard::new(json!({ "v": v, "p": p, "case": case, "ghost_rule": spec.ghost_rule }));
    let patches = match enumerate_webs(v, p, case, spec.ghost_rule) {
        Ok(x) => x,
        Err(e) => {
            shard.entry.as_mut().unwrap().skipped = Some(e.to_string());
            return shard;
        }
    };
    shard.entry.as_mut().unwrap().count = patches.len();
    shard.stat("admissible", patches.len());
    for patch in &patches {
        if spec.wants(Property::LambdaDichotomy) {
            lambda_dichotomy(&mut shard, patch);
        }
        let ids: Vec<&str> = patch.vertex_ids.iter().map(String::as_str).collect();
        let web = match verify_great_web(Source::Patch(patch), &ids) {
            Ok(c) => c.web,
            Err(_) => None,
        };
        let Some(web) = web else { continue };
        shard.stat("certified", 1);
        if spec.wants(Property::QuotaWhenLEqualsV) {
            quota_check(&mut shard, patch);
        }
        match realize_gamma(&web) {
            Ok(gamma) => {
                shard.stat("realized", 1);
                gamma_checks(spec, &mut shard, Ok(gamma), patch_data(patch));
            }
            Err(WebError::Unrealizable) => {}
            Err(e) => gamma_checks(spec, &mut shard, Err(e), patch_data(patch)),
        }
    }
    shard
}

/// Regular labels without a ghost force a great λ-cycle from every start.
fn lambda_dichotomy(shard: &mut Shard, patch: &WebPatch) {
    let Ok(view) = SideView::of_patch(patch) else {
        return;
    };
    let v = patch.vertex_count();
    for l in patch.case.regular_labels(patch.p) {
        if patch.ghosts().any(|(_, g)| g == l) {
            continue;
        }
        for start in 0..v {
            let failure = match trace_lambda_path_in(&view, l, start) {
                Ok(path) if path.is_cycle() && path.steps() <= v => None,
                Ok(path) => Some(format!(
                    "label {l} from {}: {path:?}",
                    patch.vertex_ids[start]
                )),
                Err(e) => Some(format!("label {l} from {}: {e}", patch.vertex_ids[start])),
            };
            shard.record(
                Property::LambdaDichotomy,
                failure.map(|d| (d, patch_data(patch))),
            );
        }
    }
}

fn quota_check(shard: &mut Shard, patch: &WebPatch) {
    let v = patch.vertex_count() as u32;
    if !patch.case.anchors().iter().any(|&(_, l)| l == v) {
        return;
    }
    let failure = match find_full_quota(patch) {
        Ok(r) if r.quota.is_some() => None,
        Ok(r) => Some(format!(
            "no full quota among {} parallel families",
            r.families.len()
        )),
        Err(e) => Some(e.to_string()),
    };
    shard.record(
        Property::QuotaWhenLEqualsV,
        failure.map(|d| (d, patch_data(patch))),
    );
}

/// Γ-side properties; an error building Γ counts against the valences.
fn gamma_checks(
    spec: &SweepSpec,
    shard: &mut Shard,
    gamma: Result<GammaGraph, WebError>,
    data: Value,
) {
    let gamma = match gamma {
        Ok(g) => g,
        Err(e) => {
            shard.record(Property::GammaValences, Some((e.to_string(), data)));
            return;
        }
    };
    if spec.wants(Property::GammaValences) {
        let failure = check_valences(&gamma)
            .err()
            .map(|e| (e.to_string(), data.clone()));
        shard.record(Property::GammaValences, failure);
    }
    let reports = match web_divisibility(&gamma) {
        Ok(r) => r,
        Err(e) => {
            for p in [
                Property::LDividesV,
                Property::SubregionBalance,
                Property::CyclicShift,
            ] {
                if spec.wants(p) {
                    shard.record(p, Some((e.to_string(), data.clone())));
                }
            }
            return;
        }
    };
    let groups: [(Property, &[&str]); 3] = [
        (Property::LDividesV, &["divisibility", "product"]),
        (
            Property::SubregionBalance,
            &["subregion", "scharlemann region", "region sum"],
        ),
        (Property::CyclicShift, &["cyclic shift"]),
    ];
    for (prop, names) in groups {
        if !spec.wants(prop) {
            continue;
        }
        let bad: Vec<String> = reports
            .iter()
            .flat_map(|r| r.failures())
            .filter(|c| names.contains(&c.name.as_str()))
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        let failure = (!bad.is_empty()).then(|| (bad.join("; "), data.clone()));
        shard.record(prop, failure);
    }
}

fn paired_job(spec: &SweepSpec, p: u32, q: u32, case: Case) -> Shard {
    let mut shard = Shard::new(json!({ "p": p, "q": q, "case": case }));
    let configs = match enumerate_paired(p, q, case) {
        Ok(x) => x,
        Err(e) => {
            shard.entry.as_mut().unwrap().skipped = Some(e.to_string());
            return shard;
        }
    };
    shard.entry.as_mut().unwrap().count = configs.len();
    for PairedConfig { data, webs } in &configs {
        structural_checks(spec, &mut shard, data, webs);
        shard.stat("webs", webs.len());
        for web in webs {
            let mut doc = paired_data(data);
            doc["web_vertices"] = json!(web.vertices);
            gamma_checks(spec, &mut shard, build_gamma(data, web), doc);
        }
    }
    shard
}

fn structural_checks(
    spec: &SweepSpec,
    shard: &mut Shard,
    data: &PairedIntersection,
    webs: &[GreatWeb],
) {
    let views = [
        SideView::of_paired(data, Side::Q),
        SideView::of_paired(data, Side::P),
    ];
    let [Ok(qv), Ok(pv)] = &views else {
        shard.record(
            Property::Euler,
            Some(("rotations do not derive".into(), paired_data(data))),
        );
        return;
    };
    if spec.wants(Property::Euler) {
        // V - E + F over the whole side against two per component
        let mut bad = Vec::new();
        for view in [qv, pv] {
            let comps = view.map.components().into_iter().max().map_or(0, |c| c + 1);
            let chi = view.vertex_count() as i64 - view.map.edge_count() as i64
                + view.map.faces().len() as i64;
            if chi != 2 * comps as i64 {
                bad.push(format!(
                    "G_{}: V - E + F = {chi} over {comps} component(s)",
                    view.side
                ));
            }
        }
        shard.record(
            Property::Euler,
            (!bad.is_empty()).then(|| (bad.join("; "), paired_data(data))),
        );
    }
    if spec.wants(Property::Parity) {
        for (a, id) in data.arcs.iter().zip(&data.arc_ids) {
            let q_pos = data.q_sign(a[0].q) == data.q_sign(a[1].q);
            let p_pos = data.p_sign(a[0].p) == data.p_sign(a[1].p);
            let failure = (q_pos == p_pos).then(|| {
                (
                    format!("arc {id} has the same sign on both sides"),
                    paired_data(data),
                )
            });
            shard.record(Property::Parity, failure);
        }
    }
    if spec.wants(Property::NoMonogon) {
        let n = qv
            .map
            .faces()
            .iter()
            .chain(pv.map.faces().iter())
            .filter(|f| f.len() == 1)
            .count();
        shard.record(
            Property::NoMonogon,
            (n > 0).then(|| (format!("{n} monogon face(s)"), paired_data(data))),
        );
    }
    if spec.wants(Property::ScharlemannOracle) {
        for view in [qv, pv] {
            let fast: Vec<usize> = scan_view(view).into_iter().map(|(f, _)| f).collect();
            let slow = brute_scharlemann(view);
            let failure = (fast != slow).then(|| {
                (
                    format!("G_{}: detector {fast:?} vs filter {slow:?}", view.side),
                    paired_data(data),
                )
            });
            shard.record(Property::ScharlemannOracle, failure);
        }
    }
    if spec.wants(Property::MirrorInvariance) {
        let m = data.mirror();
        let same_report = validate(&m).violations == validate(data).violations;
        let mut a: Vec<Vec<String>> = webs.iter().map(|w| w.vertices.clone()).collect();
        let mut b: Vec<Vec<String>> = great_webs(&m).iter().map(|w| w.vertices.clone()).collect();
        a.sort();
        b.sort();
        let failure = (!same_report || a != b).then(|| {
            (
                format!(
                    "mirror changes the verdict (report equal: {same_report}, webs {a:?} vs {b:?})"
                ),
                paired_data(data),
            )
        });
        shard.record(Property::MirrorInvariance, failure);
    }
}

/// Faces whose traced corners all carry one consecutive pair and whose
/// vertices all share a sign.
fn brute_scharlemann(view: &SideView) -> Vec<usize> {
    view.faces()
        .iter()
        .filter(|f| !f.corners.is_empty() && !f.holds_ghost)
        .filter(|f| {
            let pairs: Vec<Option<u32>> = f
                .corners
                .iter()
                .map(|c| consecutive_pair(c.labels.0, c.labels.1, view.modulus))
                .collect();
            let signs: Vec<_> = f
                .corners
                .iter()
                .map(|c| view.signs[view.vertex_ids.iter().position(|v| *v == c.vertex).unwrap()])
                .collect();
            pairs[0].is_some()
                && pairs.iter().all(|p| *p == pairs[0])
                && signs.iter().all(|s| *s == signs[0])
        })
        .map(|f| f.index)
        .collect()
}

fn word_checks(spec: &SweepSpec, shard: &mut Shard, word: &BraidWord) {
    if spec.wants(Property::ComponentsMatch) {
        let (a, b) = (word.components(), components_union_find(word));
        let failure = (a != b).then(|| {
            (
                format!("permutation cycles {a} vs union-find {b}"),
                word_data(word),
            )
        });
        shard.record(Property::ComponentsMatch, failure);
    }
    if spec.wants(Property::MovesPreserve) {
        let c = word.components();
        let en = word.exponent_sum() - word.strands() as i64;
        let mut bad = Vec::new();
        for mv in applicable_moves(word).into_iter().chain([Move::Stabilize]) {
            match apply_move(word, mv) {
                Ok(w) => {
                    let en2 = w.exponent_sum() - w.strands() as i64;
                    if w.components() != c || en2 != en {
                        bad.push(format!(
                            "{mv}: components {c} -> {}, e - n {en} -> {en2}",
                            w.components()
                        ));
                    }
                }
                Err(e) => bad.push(format!("{mv}: {e}")),
            }
        }
        let failure = (!bad.is_empty()).then(|| (bad.join("; "), word_data(word)));
        shard.record(Property::MovesPreserve, failure);
    }
}

fn words_job(spec: &SweepSpec, n: u32) -> Shard {
    let mut shard = Shard::new(json!({ "n": n, "max_len": spec.max_len, "positive": true }));
    let mut count = 0;
    for word in positive_words(n, spec.max_len) {
        count += 1;
        word_checks(spec, &mut shard, &word);
    }
    shard.entry.as_mut().unwrap().count = count;
    shard
}

fn sample_job(spec: &SweepSpec) -> Shard {
    let s = spec.sample.as_ref().expect("planned only with a sample");
    let mut shard = Shard::new(json!({ "sample": s }));
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for _ in 0..s.count {
        let n = rng.gen_range(2..=s.max_strands.max(2));
        let len = rng.gen_range(0..=s.max_len);
        let letters: Vec<Letter> = (0..len)
            .map(|_| Letter::new(rng.gen_range(1..n), rng.gen_bool(0.5)))
            .collect();
        let word = BraidWord::new(n, letters).expect("indices in range");
        word_checks(spec, &mut shard, &word);
    }
    shard.entry.as_mut().unwrap().count = s.count;
    shard
}

fn knots_job(spec: &SweepSpec, n: u32, s: u32, exponents: &[usize]) -> Shard {
    let depth = spec.knots.as_ref().map_or(8, |k| k.depth);
    let mut shard = Shard::new(json!({ "n": n, "s": s, "exponents": exponents, "depth": depth }));
    let classes = knot_classes(exponents);
    shard.entry.as_mut().unwrap().count = classes.len();
    if !spec.wants(Property::DichotomyReducible) {
        return shard;
    }
    for word in &classes {
        let opts = SearchOptions {
            depth,
            target: None,
            stop_on_connected_sum: false,
        };
        let failure = match reduce_search(word, opts) {
            Ok(r) if r.is_reduced() => None,
            Ok(r) => {
                let a = analyze(word);
                Some(format!("{r}; genus {:?}, e_i {:?}", a.genus, a.e_i))
            }
            Err(e) => Some(e.to_string()),
        };
        shard.stat(
            if failure.is_none() {
                "reduced"
            } else {
                "unresolved"
            },
            1,
        );
        shard.record(
            Property::DichotomyReducible,
            failure.map(|d| (d, word_data(word))),
        );
    }
    shard
}
