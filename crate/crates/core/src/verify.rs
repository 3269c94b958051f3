//! Batch verification suites and the JSON-lines report.
//!
//! Every suite returns a list of [`CheckResult`]s; failures are results, not
//! errors. Work fans out over strata through [`crate::par`], and per-task
//! generators are derived from `(seed, n, index)`, so reports are identical
//! across runs and execution modes apart from `elapsed_ms`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::{enumerate_fan, RayLabel};
use crate::linalg::{delta_vector, is_totally_nonnegative_bounded, negative_minor, q_vector, Matrix, DEFAULT_WHITNEY_BOUND};
use crate::par::{label_seed, map_indexed, map_slice, random_nonneg_rational, random_rational, task_rng, Exec};
use crate::peterson::{
    flag_rep, is_tnn_point, minor_map_forward, minor_map_inverse, peterson_membership, psi, psi_inverse_nonneg,
    sample_stratum, stratum_of as y_stratum, PetersonPoint, SolverOptions,
};
use crate::polytope::{face_vertex_labels, h_representation, FaceLabel, PolytopeModel};
use crate::scalar::{int, Rational};
use crate::toric::{canonicalize_nonneg, lattice_points, stratum_of as toric_stratum, MomentWeights, ToricPoint};
use crate::weyl::{chevalley_x, chevalley_y, label_pairs, simple_rep, SubsetJ};

/// Zero tolerance for float stratum detection and snapping.
pub const ZERO_TOL: f64 = 1e-9;
/// Pattern tolerance on the 0/1 cube coordinates.
pub const CUBE_PATTERN_TOL: f64 = 1e-7;
/// Required distance of free cube coordinates from `{0, 1}`.
pub const CUBE_MARGIN: f64 = 1e-6;
/// Agreement with the closed-form inverse at `k = 2, 3`.
pub const ORACLE_TOL: f64 = 1e-12;

pub const FAN_MAX_N: usize = DEFAULT_WHITNEY_BOUND;
pub const POLYTOPE_MAX_N: usize = 6;
pub const Q_PATTERN_MAX_N: usize = 6;
pub const WHITNEY_MAX_N: usize = 5;
pub const PETERSON_MAX_N: usize = 5;
pub const RIETSCH_MAX_K: usize = 5;
/// Exhaustive face-pair poset check up to this `n`; sampled beyond.
pub const POSET_EXHAUSTIVE_MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<FaceLabel>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<f64>,
    pub seed: u64,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Inputs reproducing a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// The failure came from the Newton solver.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub solver_failure: bool,
}

impl CheckResult {
    pub fn skipped(check_id: &str, n: usize, seed: u64, reason: &str) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            n,
            stratum: None,
            status: Status::Skipped,
            metric: None,
            seed,
            elapsed_ms: 0,
            detail: Some(reason.to_string()),
            witness: None,
            solver_failure: false,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// What a single check produced, before timing and labelling.
struct Outcome {
    pass: bool,
    metric: Option<f64>,
    detail: Option<String>,
    witness: Option<Value>,
    solver_failure: bool,
}

impl Outcome {
    fn pass(metric: Option<f64>) -> Self {
        Outcome { pass: true, metric, detail: None, witness: None, solver_failure: false }
    }

    fn fail(metric: Option<f64>, detail: impl Into<String>, witness: Value) -> Self {
        Outcome { pass: false, metric, detail: Some(detail.into()), witness: Some(witness), solver_failure: false }
    }

    fn error(e: &Error, witness: Value) -> Self {
        Outcome {
            pass: false,
            metric: None,
            detail: Some(e.to_string()),
            witness: Some(witness),
            solver_failure: e.is_solver_failure(),
        }
    }

    fn from_result(r: Result<()>, witness: impl FnOnce() -> Value) -> Self {
        match r {
            Ok(()) => Outcome::pass(None),
            Err(e) => Outcome::error(&e, witness()),
        }
    }
}

fn run_check(check_id: &str, n: usize, stratum: Option<FaceLabel>, seed: u64, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let out = f();
    CheckResult {
        check_id: check_id.to_string(),
        n,
        stratum,
        status: if out.pass { Status::Pass } else { Status::Fail },
        metric: out.metric,
        seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
        detail: out.detail,
        witness: out.witness.map(|w| {
            let mut w = w;
            if let Value::Object(m) = &mut w {
                m.entry("seed").or_insert(json!(seed));
                m.entry("n").or_insert(json!(n));
            }
            w
        }),
        solver_failure: out.solver_failure,
    }
}

fn usize_pow(b: usize, e: usize) -> usize {
    (0..e).fold(1, |a, _| a * b)
}

// ---------------------------------------------------------------- fan

/// Cone count, dimensions, simpliciality, sampled completeness and face
/// closure of `Σ`.
pub fn verify_fan(n: usize, seed: u64, completeness_samples: usize, exec: Exec) -> Vec<CheckResult> {
    if !(2..=FAN_MAX_N).contains(&n) {
        return vec![CheckResult::skipped("fan", n, seed, &format!("fan checks run for 2 <= n <= {FAN_MAX_N}"))];
    }
    let fan = match enumerate_fan(n) {
        Ok(f) => f,
        Err(e) => return vec![run_check("fan.enumerate", n, None, seed, || Outcome::error(&e, json!({})))],
    };
    let mut out = Vec::new();
    out.push(run_check("fan.cone_count", n, None, seed, || {
        let count = fan.cones().len();
        let expect = usize_pow(3, n - 1);
        if count == expect {
            Outcome::pass(Some(count as f64))
        } else {
            Outcome::fail(Some(count as f64), format!("expected {expect} cones"), json!({}))
        }
    }));
    out.push(run_check("fan.cone_dimension", n, None, seed, || {
        for c in fan.cones() {
            let expect = c.k.len() + (n - 1) - c.j.len();
            let rank = c.generator_matrix().map_or(0, |m| m.rank());
            if c.dim() != expect || rank != expect {
                return Outcome::fail(
                    None,
                    format!("cone {} has dim {} (rank {rank}), expected {expect}", FaceLabel { k: c.k, j: c.j }, c.dim()),
                    json!({"K": c.k, "J": c.j}),
                );
            }
        }
        Outcome::pass(Some(fan.cones().len() as f64))
    }));
    out.push(run_check("fan.simplicial", n, None, seed, || {
        for c in fan.cones() {
            if let Err(e) = c.check_simplicial() {
                return Outcome::error(&e, json!({"K": c.k, "J": c.j}));
            }
        }
        Outcome::pass(None)
    }));
    let fseed = seed ^ label_seed("fan.completeness");
    out.push(run_check("fan.completeness", n, None, seed, || {
        let located = map_indexed(exec, completeness_samples, |idx| {
            let mut rng = task_rng(fseed, n, idx as u64);
            let v: Vec<Rational> = (1..n).map(|_| random_rational(&mut rng, 50, 7)).collect();
            match fan.locate(&v) {
                Ok(_) => None,
                Err(_) => Some(v),
            }
        });
        match located.into_iter().flatten().next() {
            None => Outcome::pass(Some(completeness_samples as f64)),
            Some(v) => Outcome::fail(
                None,
                "sample vector lies in no maximal cone",
                json!({"vector": crate::json::rationals_to_json(&v)}),
            ),
        }
    }));
    out.push(run_check("fan.face_closure", n, None, seed, || {
        Outcome::from_result(fan.check_face_closure(), || json!({}))
    }));
    out.push(run_check("fan.primitive_collections", n, None, seed, || {
        for (a, b) in crate::fan::primitive_collections(n) {
            if fan.pair_spans_cone(a, b) {
                return Outcome::fail(None, format!("{a:?}, {b:?} span a cone"), json!({}));
            }
        }
        // rays NegCoroot(i), Standard(i) never share a cone
        for i in 1..n {
            if fan.pair_spans_cone(RayLabel::NegCoroot(i), RayLabel::Standard(i)) {
                return Outcome::fail(None, format!("-α^∨_{i} and e_{i} span a cone"), json!({"i": i}));
            }
        }
        Outcome::pass(None)
    }));
    out
}

// ---------------------------------------------------------------- polytope

/// Exact V/H agreement, the facet pattern, face dimensions, simplicity, the
/// face poset against the cube, and normal-fan argmin checks.
pub fn verify_polytope(n: usize, seed: u64, exec: Exec) -> Vec<CheckResult> {
    if !(2..=POLYTOPE_MAX_N).contains(&n) {
        return vec![CheckResult::skipped("polytope", n, seed, &format!("polytope checks run for 2 <= n <= {POLYTOPE_MAX_N}"))];
    }
    let model = match h_representation(n) {
        Ok(m) => m,
        Err(e) => return vec![run_check("polytope.build", n, None, seed, || Outcome::error(&e, json!({})))],
    };
    let mut out = Vec::new();
    out.push(run_check("polytope.vh_agreement", n, None, seed, || Outcome::from_result(model.validate_vh(), || json!({}))));
    if n == 3 || n == 4 {
        out.push(run_check("polytope.figure_vertices", n, None, seed, || figure_vertices(&model)));
    }
    out.push(run_check("polytope.counts", n, None, seed, || {
        let faces = model.faces().len();
        let verts = model.vertices().count();
        let facets = model.inequalities().len();
        let expect = (usize_pow(3, n - 1), usize_pow(2, n - 1), 2 * (n - 1));
        if (faces, verts, facets) == expect {
            Outcome::pass(Some(faces as f64))
        } else {
            Outcome::fail(None, format!("faces/vertices/facets = {faces}/{verts}/{facets}, expected {expect:?}"), json!({}))
        }
    }));
    out.push(run_check("polytope.facet_pattern", n, None, seed, || {
        Outcome::from_result(model.check_facet_pattern(), || json!({}))
    }));
    out.push(run_check("polytope.face_dimensions", n, None, seed, || {
        Outcome::from_result(model.check_face_dimensions(), || json!({}))
    }));
    out.push(run_check("polytope.simple", n, None, seed, || Outcome::from_result(model.check_simple(), || json!({}))));
    out.push(run_check("polytope.poset_isomorphism", n, None, seed, || {
        let r = if n <= POSET_EXHAUSTIVE_MAX_N {
            model.check_poset_iso_exhaustive()
        } else {
            let faces = model.faces();
            let mut rng = task_rng(seed ^ label_seed("polytope.poset"), n, 0);
            let pairs: Vec<(FaceLabel, FaceLabel)> = (0..20_000)
                .map(|_| (faces[rng.random_range(0..faces.len())], faces[rng.random_range(0..faces.len())]))
                .collect();
            model.check_poset_iso_pairs(pairs.into_iter())
        };
        match r {
            Ok(count) => Outcome::pass(Some(count as f64)),
            Err(e) => Outcome::error(&e, json!({})),
        }
    }));
    let aseed = seed ^ label_seed("polytope.normal_fan");
    out.push(run_check("polytope.normal_fan", n, None, seed, || {
        let faces = model.faces();
        let bad = map_slice(exec, &faces, |f| {
            let mut rng = task_rng(aseed, n, u64::from(f.k.mask()) << 32 | u64::from(f.j.mask()));
            let w = interior_normal(f, &mut rng);
            let mut got = model.argmin_vertices(&w);
            let mut want = face_vertex_labels(&f.k, &f.j);
            got.sort_by_key(SubsetJ::mask);
            want.sort_by_key(SubsetJ::mask);
            (got != want).then_some((*f, w))
        });
        match bad.into_iter().flatten().next() {
            None => Outcome::pass(Some(faces.len() as f64)),
            Some((f, w)) => Outcome::fail(
                None,
                format!("argmin over P for a weight inside τ_{f} is not F_{f}"),
                json!({"K": f.k, "J": f.j, "weight": crate::json::rationals_to_json(&w)}),
            ),
        }
    }));
    out
}

/// A random relative-interior point of `τ_{K,J}`.
fn interior_normal<R: Rng + ?Sized>(f: &FaceLabel, rng: &mut R) -> Vec<Rational> {
    let n = f.n();
    let mut w = vec![int(0); n - 1];
    for i in f.k.iter() {
        let c = Rational::new(rng.random_range(1..=9).into(), rng.random_range(1..=4).into());
        for (idx, wi) in w.iter_mut().enumerate() {
            let p = idx + 1;
            if p == i {
                *wi -= c.clone() * int(2);
            } else if p.abs_diff(i) == 1 {
                *wi += c.clone();
            }
        }
    }
    for i in f.j.complement().iter() {
        let c = Rational::new(rng.random_range(1..=9).into(), rng.random_range(1..=4).into());
        w[i - 1] += c;
    }
    w
}

fn figure_vertices(model: &PolytopeModel) -> Outcome {
    let verts: Vec<Vec<i64>> = model.vertices().map(|(_, v)| v.clone()).collect();
    let (want, exact): (Vec<Vec<i64>>, bool) = match model.n() {
        3 => (vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 2]], true),
        _ => (vec![vec![3, 4, 3], vec![0, 2, 2], vec![2, 2, 0]], false),
    };
    let contained = want.iter().all(|w| verts.contains(w));
    if contained && (!exact || verts.len() == want.len()) {
        Outcome::pass(None)
    } else {
        Outcome::fail(None, format!("vertices {verts:?} do not match {want:?}"), json!({"vertices": verts}))
    }
}

// ---------------------------------------------------------------- q-pattern

/// For every `J` and `draws` random rational parameter sets: the q-pattern is
/// the indicator of `J`, `Δ_i = 1` off `J`, and `x ẇ_J` lies in `Y`, all
/// exactly.
pub fn verify_q_pattern(n: usize, draws: usize, seed: u64, exec: Exec) -> Vec<CheckResult> {
    if !(2..=Q_PATTERN_MAX_N).contains(&n) {
        return vec![CheckResult::skipped("peterson.q_pattern", n, seed, &format!("runs for 2 <= n <= {Q_PATTERN_MAX_N}"))];
    }
    let js = SubsetJ::all(n);
    let qseed = seed ^ label_seed("peterson.q_pattern");
    let start = Instant::now();
    let failures = map_slice(exec, &js, |j| {
        let mut rng = task_rng(qseed, n, u64::from(j.mask()));
        let mut fails: [Option<Value>; 3] = [None, None, None];
        for _ in 0..draws {
            let p = random_point(j, &mut rng);
            let g = flag_rep(&p);
            let witness = || p.to_json();
            match q_vector(&g) {
                Ok(q) if q == j.indicator().into_iter().map(int).collect::<Vec<_>>() => {}
                _ => {
                    fails[0].get_or_insert_with(witness);
                }
            }
            match delta_vector(&g) {
                Ok(d) if j.complement().iter().all(|i| d[i - 1] == int(1)) => {}
                _ => {
                    fails[1].get_or_insert_with(witness);
                }
            }
            if peterson_membership(&g) != Ok(true) {
                fails[2].get_or_insert_with(witness);
            }
        }
        fails
    });
    let elapsed = start.elapsed().as_millis() as u64;
    ["peterson.q_pattern", "peterson.delta_off_j", "peterson.membership"]
        .iter()
        .enumerate()
        .map(|(c, id)| {
            let witness = failures.iter().find_map(|f| f[c].clone());
            let mut r = run_check(id, n, None, seed, || match witness {
                None => Outcome::pass(Some((js.len() * draws) as f64)),
                Some(w) => Outcome::fail(None, "exact identity violated", json!({"point": w})),
            });
            r.elapsed_ms = elapsed;
            r
        })
        .collect()
}

fn random_point<R: Rng + ?Sized>(j: &SubsetJ, rng: &mut R) -> PetersonPoint<Rational> {
    let blocks = crate::weyl::connected_components(j)
        .iter()
        .map(|c| (0..c.len()).map(|_| random_rational(rng, 9, 4)).collect())
        .collect();
    PetersonPoint::new(*j, blocks).expect("block sizes follow J")
}

// ---------------------------------------------------------------- Whitney

/// Products of random nonnegative Chevalley words stay totally nonnegative,
/// and known negatives are rejected.
pub fn verify_whitney(n: usize, pairs: usize, seed: u64, exec: Exec) -> Vec<CheckResult> {
    if !(2..=WHITNEY_MAX_N).contains(&n) {
        return vec![CheckResult::skipped("whitney", n, seed, &format!("runs for 2 <= n <= {WHITNEY_MAX_N}"))];
    }
    let wseed = seed ^ label_seed("whitney.products");
    let closure = run_check("whitney.product_closure", n, None, seed, || {
        let bad = map_indexed(exec, pairs, |idx| {
            let mut rng = task_rng(wseed, n, idx as u64);
            let (a, wa) = random_word_matrix(n, &mut rng);
            let (b, wb) = random_word_matrix(n, &mut rng);
            let ab = a.matmul(&b).expect("same size");
            let ok = [&a, &b, &ab].iter().all(|m| is_totally_nonnegative_bounded(m, DEFAULT_WHITNEY_BOUND) == Ok(true));
            (!ok).then(|| json!({"word_a": wa, "word_b": wb, "pair": idx}))
        });
        match bad.into_iter().flatten().next() {
            None => Outcome::pass(Some(pairs as f64)),
            Some(w) => Outcome::fail(None, "a product of nonnegative generators failed the Whitney test", w),
        }
    });
    let negatives = run_check("whitney.known_negatives", n, None, seed, || {
        let mut cases: Vec<(String, Matrix<Rational>)> = Vec::new();
        for i in 1..n {
            cases.push((format!("s_{i} representative"), simple_rep(i, n).expect("in range")));
            cases.push((format!("x_{i}(-1)"), chevalley_x(i, int(-1), n).expect("in range")));
            cases.push((format!("y_{i}(-1/2)"), chevalley_y(i, crate::scalar::rat(-1, 2), n).expect("in range")));
        }
        let mut m = Matrix::<Rational>::identity(n);
        m = m.with_entry(0, 1, int(2)).with_entry(1, 0, int(1));
        cases.push(("2x2 minor -1".into(), m));
        if n >= 3 {
            // Toeplitz block with a^2 < b
            let t = crate::peterson::toeplitz_matrix(&[int(1), int(2)]);
            cases.push(("Toeplitz (1,2)".into(), Matrix::from_fn(n, n, |r, c| if r < 3 && c < 3 { t.get(r, c).clone() } else if r == c { int(1) } else { int(0) })));
        }
        for (name, m) in &cases {
            if is_totally_nonnegative_bounded(m, DEFAULT_WHITNEY_BOUND) != Ok(false) || negative_minor(m).is_none() {
                return Outcome::fail(None, format!("{name} was not rejected"), json!({"case": name}));
            }
        }
        Outcome::pass(Some(cases.len() as f64))
    });
    vec![closure, negatives]
}

/// A product of `x_i(t)`, `y_i(t)` with random nonnegative rational `t`.
fn random_word_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Matrix<Rational>, Vec<String>) {
    let len = rng.random_range(1..=2 * n);
    let mut m = Matrix::identity(n);
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let i = rng.random_range(1..n);
        let t = random_nonneg_rational(rng, 5, 3);
        let upper = rng.random_bool(0.5);
        word.push(format!("{}_{i}({})", if upper { "x" } else { "y" }, crate::scalar::format_rational(&t)));
        let g = if upper { chevalley_x(i, t, n) } else { chevalley_y(i, t, n) }.expect("in range");
        m = m.matmul(&g).expect("same size");
    }
    (m, word)
}

// ---------------------------------------------------------------- Rietsch

/// Targets for sample `t` of block size `k`: zero pattern `t mod 2^{k-1}`,
/// other entries log-uniform on `[1/10, 10]`.
pub fn rietsch_targets(k: usize, t: usize, seed: u64) -> Vec<f64> {
    let m = k - 1;
    let mut rng = task_rng(seed ^ label_seed("rietsch.targets"), k, t as u64);
    let pattern = t % (1usize << m);
    (0..m)
        .map(|i| {
            let v = 10f64.powf(rng.random_range(-1.0..=1.0));
            if pattern & (1 << i) != 0 {
                0.0
            } else {
                v
            }
        })
        .collect()
}

/// Closed-form inverse for `k = 2, 3`.
pub fn rietsch_oracle(targets: &[f64]) -> Option<Vec<f64>> {
    match targets {
        [a] => Some(vec![*a]),
        [d1, d2] => Some(vec![(d1 + d2).sqrt(), *d2]),
        _ => None,
    }
}

/// Forward∘inverse identity of the Toeplitz minor map on seeded targets,
/// every zero pattern included, plus the closed form at `k = 2, 3`.
pub fn verify_rietsch_param(k_max: usize, samples: usize, seed: u64, tol: f64, exec: Exec) -> Vec<CheckResult> {
    let opts = SolverOptions::default();
    let mut out = Vec::new();
    out.push(run_check("rietsch.examples", 3, None, seed, || {
        let cases: [(&[f64], &[f64]); 3] = [(&[3.0, 1.0], &[2.0, 1.0]), (&[0.0, 0.0], &[0.0, 0.0]), (&[0.0, 1.0], &[1.0, 1.0])];
        for (t, want) in cases {
            match minor_map_inverse(t, &opts) {
                Ok(r) if r.params.iter().zip(want).all(|(a, b)| (a - b).abs() <= ORACLE_TOL) => {}
                Ok(r) => return Outcome::fail(None, format!("recovered {:?}", r.params), json!({"targets": t})),
                Err(e) => return Outcome::error(&e, json!({"targets": t})),
            }
        }
        Outcome::pass(None)
    }));
    for k in 2..=k_max {
        if k > RIETSCH_MAX_K {
            out.push(CheckResult::skipped("rietsch.round_trip", k, seed, &format!("block sizes capped at {RIETSCH_MAX_K}")));
            continue;
        }
        let start = Instant::now();
        let solved = map_indexed(exec, samples, |t| {
            let targets = rietsch_targets(k, t, seed);
            let r = minor_map_inverse(&targets, &opts);
            (targets, r)
        });
        let elapsed = start.elapsed().as_millis() as u64;
        let mut rt = run_check("rietsch.round_trip", k, None, seed, || {
            let mut worst = 0.0f64;
            for (targets, r) in &solved {
                match r {
                    Ok(rep) => {
                        let res = minor_map_forward(&rep.params)
                            .iter()
                            .zip(targets)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0, f64::max);
                        worst = worst.max(res);
                        if !(res < tol) {
                            return Outcome::fail(Some(res), format!("residual {res:e}"), json!({"targets": targets}));
                        }
                    }
                    Err(e) => return Outcome::error(e, json!({"targets": targets})),
                }
            }
            Outcome::pass(Some(worst))
        });
        rt.elapsed_ms = elapsed;
        out.push(rt);
        if k <= 3 {
            out.push(run_check("rietsch.analytic_oracle", k, None, seed, || {
                let mut worst = 0.0f64;
                for (targets, r) in &solved {
                    let Ok(rep) = r else { continue };
                    let oracle = rietsch_oracle(targets).expect("k <= 3");
                    let err = rep.params.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    worst = worst.max(err);
                    if !(err <= ORACLE_TOL) {
                        return Outcome::fail(
                            Some(err),
                            format!("params {:?} vs closed form {oracle:?}", rep.params),
                            json!({"targets": targets}),
                        );
                    }
                }
                Outcome::pass(Some(worst))
            }));
        }
    }
    out
}

// ---------------------------------------------------------------- Ψ and φ

/// Seeded TNN samples of `Y_{K,J;>0}` for stratum number `index` of
/// [`label_pairs`]`(n)`.
pub fn stratum_samples(n: usize, index: usize, label: &FaceLabel, samples: usize, seed: u64) -> Vec<Result<PetersonPoint<f64>>> {
    let mut rng = task_rng(seed ^ label_seed("strata"), n, index as u64);
    let opts = SolverOptions::default();
    (0..samples).map(|_| sample_stratum(&label.k, &label.j, &mut rng, &opts)).collect()
}

fn point_witness(p: &PetersonPoint<f64>, label: &FaceLabel, sample: usize) -> Value {
    json!({"K": label.k, "J": label.j, "sample": sample, "point": p.to_json()})
}

fn labels(n: usize) -> Vec<FaceLabel> {
    label_pairs(n).into_iter().map(|(k, j)| FaceLabel { k, j }).collect()
}

/// Pairs `(stratum, a, b)`, `a != b`, drawn from strata of positive dimension.
fn sample_pairs(n: usize, pools: &[(FaceLabel, Vec<usize>)], count: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let eligible: Vec<usize> = (0..pools.len()).filter(|&s| pools[s].0.dim() > 0 && pools[s].1.len() >= 2).collect();
    if eligible.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ label_seed("pairs") ^ n as u64);
    (0..count)
        .map(|_| {
            let s = eligible[rng.random_range(0..eligible.len())];
            let len = pools[s].1.len();
            let a = rng.random_range(0..len);
            let mut b = rng.random_range(0..len - 1);
            if b >= a {
                b += 1;
            }
            (s, pools[s].1[a], pools[s].1[b])
        })
        .collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

struct StratumRun {
    label: FaceLabel,
    images: Vec<Option<ToricPoint<f64>>>,
}

fn canonical_images(points: &[Result<PetersonPoint<f64>>]) -> Vec<Option<ToricPoint<f64>>> {
    points
        .iter()
        .map(|p| p.as_ref().ok().and_then(|p| psi(p).ok()).and_then(|q| canonicalize_nonneg(&q, ZERO_TOL).ok()))
        .collect()
}

/// For every `(K, J)`: samples are TNN points of `Y_{K,J}`, Ψ lands in the
/// toric stratum `(K, J)` with nonnegative coordinates, the inverse of `Ψ_{>=0}`
/// recovers the parameters, and distinct samples have distinct images.
pub fn verify_psi_cells(n: usize, samples: usize, pairs: usize, seed: u64, tol: f64, exec: Exec) -> Vec<CheckResult> {
    if !(2..=PETERSON_MAX_N).contains(&n) {
        return vec![CheckResult::skipped("psi", n, seed, &format!("Peterson suites run for 2 <= n <= {PETERSON_MAX_N}"))];
    }
    let opts = SolverOptions::default();
    let ls = labels(n);
    let runs: Vec<(StratumRun, Vec<CheckResult>)> = map_indexed(exec, ls.len(), |idx| {
        let label = ls[idx];
        let start = Instant::now();
        let points = stratum_samples(n, idx, &label, samples, seed);
        let images = canonical_images(&points);
        let sample_ms = start.elapsed().as_millis() as u64;
        let mut checks = Vec::new();
        let mut sample_check = run_check("psi.sample_validity", n, Some(label), seed, || {
            for (s, p) in points.iter().enumerate() {
                let p = match p {
                    Ok(p) => p,
                    Err(e) => return Outcome::error(e, json!({"K": label.k, "J": label.j, "sample": s})),
                };
                let ok = is_tnn_point(p, opts.tnn_slack) == Ok(true) && y_stratum(p, ZERO_TOL).ok() == Some(label);
                let member = peterson_membership(&flag_rep(p)).unwrap_or(false);
                if !ok || !member {
                    return Outcome::fail(None, "sample is not a TNN point of the stratum", point_witness(p, &label, s));
                }
            }
            Outcome::pass(Some(points.len() as f64))
        });
        sample_check.elapsed_ms += sample_ms;
        checks.push(sample_check);
        checks.push(run_check("psi.stratum", n, Some(label), seed, || {
            let mut worst = f64::INFINITY;
            for (s, p) in points.iter().enumerate() {
                let Ok(p) = p else { continue };
                let q = match psi(p) {
                    Ok(q) => q,
                    Err(e) => return Outcome::error(&e, point_witness(p, &label, s)),
                };
                let min = q.x.iter().chain(&q.y).copied().fold(f64::INFINITY, f64::min);
                worst = worst.min(min);
                let got = toric_stratum(&q, ZERO_TOL);
                if min < -ZERO_TOL || got.as_ref().ok() != Some(&label) {
                    let got = got.map(|l| l.to_string()).unwrap_or_else(|e| e.to_string());
                    return Outcome::fail(Some(min), format!("Ψ image in {got}, min coordinate {min:e}"), point_witness(p, &label, s));
                }
            }
            Outcome::pass(Some(worst))
        }));
        checks.push(run_check("psi.round_trip", n, Some(label), seed, || {
            let mut worst = 0.0f64;
            for (s, (p, img)) in points.iter().zip(&images).enumerate() {
                let Ok(p) = p else { continue };
                let Some(img) = img else {
                    return Outcome::fail(None, "Ψ image could not be canonicalized", point_witness(p, &label, s));
                };
                match psi_inverse_nonneg(img, ZERO_TOL, &opts) {
                    Ok(back) if back.j == p.j => {
                        let err = back.blocks.iter().flatten().zip(p.blocks.iter().flatten()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                        worst = worst.max(err);
                        if !(err <= tol) {
                            return Outcome::fail(Some(err), format!("parameters recovered to {err:e}"), point_witness(p, &label, s));
                        }
                    }
                    Ok(back) => return Outcome::fail(None, format!("recovered J = {}", back.j), point_witness(p, &label, s)),
                    Err(e) => return Outcome::error(&e, point_witness(p, &label, s)),
                }
            }
            Outcome::pass(Some(worst))
        }));
        (StratumRun { label, images }, checks)
    });
    let mut out: Vec<CheckResult> = Vec::new();
    let mut strata = Vec::with_capacity(runs.len());
    for (run, checks) in runs {
        out.extend(checks);
        strata.push(run);
    }
    out.push(run_check("psi.injectivity", n, None, seed, || {
        let pools: Vec<(FaceLabel, Vec<usize>)> =
            strata.iter().map(|r| (r.label, (0..r.images.len()).filter(|&i| r.images[i].is_some()).collect())).collect();
        let chosen = sample_pairs(n, &pools, pairs, seed);
        let mut worst = f64::INFINITY;
        for &(s, a, b) in &chosen {
            let r = &strata[s];
            let (qa, qb) = (r.images[a].as_ref().expect("pooled"), r.images[b].as_ref().expect("pooled"));
            let sep = max_abs_diff(&qa.x, &qb.x).max(max_abs_diff(&qa.y, &qb.y));
            worst = worst.min(sep);
            if !(sep > tol) {
                return Outcome::fail(
                    Some(sep),
                    format!("images of samples {a} and {b} are {sep:e} apart"),
                    json!({"K": r.label.k, "J": r.label.j, "samples": [a, b]}),
                );
            }
        }
        Outcome::pass(Some(if chosen.is_empty() { 0.0 } else { worst }))
    }));
    out
}

/// Context for evaluating `φ = f∘μ̄∘Ψ_{>=0}` at one `n`.
pub struct PhiMap {
    model: PolytopeModel,
    weights: MomentWeights,
}

impl PhiMap {
    pub fn new(n: usize) -> Result<Self> {
        Ok(PhiMap { model: h_representation(n)?, weights: lattice_points(n)? })
    }

    pub fn model(&self) -> &PolytopeModel {
        &self.model
    }

    /// `μ` of the canonical form of `q`.
    pub fn moment(&self, q: &ToricPoint<f64>) -> Result<Vec<f64>> {
        self.weights.moment_map(&canonicalize_nonneg(q, ZERO_TOL)?)
    }

    pub fn phi(&self, p: &PetersonPoint<f64>) -> Result<Vec<f64>> {
        self.phi_of_image(&psi(p)?)
    }

    pub fn phi_of_image(&self, q: &ToricPoint<f64>) -> Result<Vec<f64>> {
        let mu = self.moment(q)?;
        self.model.cube_homeo_f64(&mu, ZERO_TOL)
    }
}

/// Smallest distance of the free coordinates from `{0, 1}`.
fn cube_margin(x: &[f64], label: &FaceLabel) -> f64 {
    label.j.difference(&label.k).iter().map(|i| x[i - 1].min(1.0 - x[i - 1])).fold(f64::INFINITY, f64::min)
}

/// `φ` sends every sampled point of `Y_{K,J;>0}` into `Int E_{K,J}` and is
/// injective on sampled pairs.
pub fn verify_homeomorphism(n: usize, samples: usize, pairs: usize, seed: u64, tol: f64, exec: Exec) -> Vec<CheckResult> {
    if !(2..=PETERSON_MAX_N).contains(&n) {
        return vec![CheckResult::skipped("homeomorphism", n, seed, &format!("Peterson suites run for 2 <= n <= {PETERSON_MAX_N}"))];
    }
    let phi = match PhiMap::new(n) {
        Ok(p) => p,
        Err(e) => return vec![run_check("homeomorphism.build", n, None, seed, || Outcome::error(&e, json!({})))],
    };
    let ls = labels(n);
    let mut out = Vec::new();
    out.push(run_check("homeomorphism.identity_corner", n, None, seed, || {
        match phi.phi(&PetersonPoint::identity(n)) {
            Ok(x) if x.iter().all(|v| (v - 1.0).abs() <= ORACLE_TOL) => Outcome::pass(None),
            Ok(x) => Outcome::fail(None, format!("φ(identity) = {x:?}"), json!({})),
            Err(e) => Outcome::error(&e, json!({})),
        }
    }));
    let runs: Vec<(Vec<Option<Vec<f64>>>, CheckResult)> = map_indexed(exec, ls.len(), |idx| {
        let label = ls[idx];
        let start = Instant::now();
        let points = stratum_samples(n, idx, &label, samples, seed);
        let sample_ms = start.elapsed().as_millis() as u64;
        let mut images: Vec<Option<Vec<f64>>> = vec![None; points.len()];
        let mut check = run_check("homeomorphism.open_face", n, Some(label), seed, || {
            let mut worst = f64::INFINITY;
            for (s, p) in points.iter().enumerate() {
                let p = match p {
                    Ok(p) => p,
                    Err(e) => return Outcome::error(e, json!({"K": label.k, "J": label.j, "sample": s})),
                };
                let x = match phi.phi(p) {
                    Ok(x) => x,
                    Err(e) => return Outcome::error(&e, point_witness(p, &label, s)),
                };
                let margin = cube_margin(&x, &label);
                worst = worst.min(margin);
                if !crate::polytope::cube_interior_member_margin(&x, &label.k, &label.j, CUBE_PATTERN_TOL, CUBE_MARGIN) {
                    let mut w = point_witness(p, &label, s);
                    w["phi"] = json!(x);
                    return Outcome::fail(Some(margin), format!("φ = {x:?} is outside Int E_{label}"), w);
                }
                images[s] = Some(x);
            }
            Outcome::pass(Some(if worst.is_finite() { worst } else { 1.0 }))
        });
        check.elapsed_ms += sample_ms;
        (images, check)
    });
    let mut images = Vec::with_capacity(runs.len());
    for (img, check) in runs {
        out.push(check);
        images.push(img);
    }
    if n == 2 {
        out.push(run_check("homeomorphism.interval", n, None, seed, || {
            // strata in label_pairs(2) order: (∅,∅), (∅,{1}), ({1},{1})
            let at = |idx: usize| images[idx].iter().flatten().map(|x| x[0]).collect::<Vec<f64>>();
            let (top, mid, bottom) = (at(ls.iter().position(|l| l.j.is_empty()).expect("present")), at(ls.iter().position(|l| l.dim() == 1).expect("present")), at(ls.iter().position(|l| !l.k.is_empty()).expect("present")));
            let ok = !top.is_empty()
                && top.iter().all(|v| (v - 1.0).abs() <= CUBE_PATTERN_TOL)
                && !bottom.is_empty()
                && bottom.iter().all(|v| v.abs() <= CUBE_PATTERN_TOL)
                && mid.iter().all(|v| *v > 0.0 && *v < 1.0);
            if ok {
                Outcome::pass(Some(mid.len() as f64))
            } else {
                Outcome::fail(None, format!("endpoints {top:?} / {bottom:?}"), json!({}))
            }
        }));
    }
    out.push(run_check("homeomorphism.injectivity", n, None, seed, || {
        let pools: Vec<(FaceLabel, Vec<usize>)> =
            ls.iter().zip(&images).map(|(l, img)| (*l, (0..img.len()).filter(|&i| img[i].is_some()).collect())).collect();
        let chosen = sample_pairs(n, &pools, pairs, seed ^ label_seed("phi"));
        let mut worst = f64::INFINITY;
        for &(s, a, b) in &chosen {
            let (xa, xb) = (images[s][a].as_ref().expect("pooled"), images[s][b].as_ref().expect("pooled"));
            let sep = max_abs_diff(xa, xb);
            worst = worst.min(sep);
            if !(sep > tol) {
                return Outcome::fail(
                    Some(sep),
                    format!("φ images of samples {a} and {b} are {sep:e} apart"),
                    json!({"K": ls[s].k, "J": ls[s].j, "samples": [a, b]}),
                );
            }
        }
        Outcome::pass(Some(if chosen.is_empty() { 0.0 } else { worst }))
    }));
    out
}

/// Sampled `φ` images for plotting: `(stratum, sample index, φ(p))`.
pub fn phi_images(n: usize, samples: usize, seed: u64, exec: Exec) -> Result<Vec<(FaceLabel, usize, Vec<f64>)>> {
    let phi = PhiMap::new(n)?;
    let ls = labels(n);
    let per: Vec<Vec<(FaceLabel, usize, Vec<f64>)>> = map_indexed(exec, ls.len(), |idx| {
        stratum_samples(n, idx, &ls[idx], samples, seed)
            .into_iter()
            .enumerate()
            .filter_map(|(s, p)| p.ok().and_then(|p| phi.phi(&p).ok()).map(|x| (ls[idx], s, x)))
            .collect()
    });
    Ok(per.into_iter().flatten().collect())
}

// ---------------------------------------------------------------- driver

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Fan,
    Polytope,
    QPattern,
    Whitney,
    Rietsch,
    Psi,
    Homeomorphism,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Fan, Suite::Polytope, Suite::QPattern, Suite::Whitney, Suite::Rietsch, Suite::Psi, Suite::Homeomorphism];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Samples per stratum for the Ψ and φ suites.
    pub samples: usize,
    pub completeness_samples: usize,
    pub rietsch_samples: usize,
    pub q_draws: usize,
    /// Point pairs for the injectivity and product-closure checks.
    pub pairs: usize,
    /// Residual, round-trip and separation threshold.
    pub tol: f64,
    pub suites: Vec<Suite>,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_min: 2,
            n_max: 4,
            seed: 0,
            samples: 25,
            completeness_samples: 10_000,
            rietsch_samples: 1000,
            q_draws: 50,
            pairs: 1000,
            tol: 1e-8,
            suites: Suite::ALL.to_vec(),
            exec: Exec::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::Domain(format!("need 2 <= n_min <= n_max, got {}..{}", self.n_min, self.n_max)));
        }
        if self.n_max > FAN_MAX_N {
            return Err(Error::Domain(format!("n is capped at {FAN_MAX_N}")));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain(format!("tol must be positive, got {}", self.tol)));
        }
        if self.suites.is_empty() {
            return Err(Error::Domain("no suites selected".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub solver_failures: usize,
}

impl Summary {
    pub fn tally(results: &[CheckResult]) -> Self {
        let mut s = Summary { total: results.len(), ..Summary::default() };
        for r in results {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
            if r.solver_failure {
                s.solver_failures += 1;
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub config: VerifyConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;

impl VerificationReport {
    pub fn new(config: VerifyConfig, results: Vec<CheckResult>) -> Self {
        let summary = Summary::tally(&results);
        VerificationReport { tool: "ptoric".into(), version: env!("CARGO_PKG_VERSION").into(), config, results, summary }
    }

    /// A header line, one line per check, then the summary line.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        let header = json!({"tool": self.tool, "version": self.version, "config": self.config});
        s.push_str(&header.to_string());
        s.push('\n');
        for r in &self.results {
            s.push_str(&serde_json::to_string(r).expect("serializable"));
            s.push('\n');
        }
        s.push_str(&json!({"summary": self.summary}).to_string());
        s.push('\n');
        s
    }

    /// 0 when nothing failed; 3 when a failure came from the solver; else 1.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            EXIT_PASS
        } else if self.summary.solver_failures > 0 {
            EXIT_SOLVER
        } else {
            EXIT_FAIL
        }
    }
}

/// Runs the selected suites over `n_min..=n_max`, skipping sizes beyond each
/// suite's cap.
pub fn run_all(config: &VerifyConfig) -> Result<VerificationReport> {
    config.validate()?;
    let c = config;
    let mut results = Vec::new();
    for &suite in &c.suites {
        if suite == Suite::Rietsch {
            results.extend(verify_rietsch_param(c.n_max, c.rietsch_samples, c.seed, c.tol, c.exec));
            continue;
        }
        for n in c.n_min..=c.n_max {
            results.extend(match suite {
                Suite::Fan => verify_fan(n, c.seed, c.completeness_samples, c.exec),
                Suite::Polytope => verify_polytope(n, c.seed, c.exec),
                Suite::QPattern => verify_q_pattern(n, c.q_draws, c.seed, c.exec),
                Suite::Whitney => verify_whitney(n, c.pairs, c.seed, c.exec),
                Suite::Psi => verify_psi_cells(n, c.samples, c.pairs, c.seed, c.tol, c.exec),
                Suite::Homeomorphism => verify_homeomorphism(n, c.samples, c.pairs, c.seed, c.tol, c.exec),
                Suite::Rietsch => unreachable!(),
            });
        }
    }
    Ok(VerificationReport::new(config.clone(), results))
}

/// Vertices `(label, coordinates)` and edges of `P_{n-1}`.
pub fn polytope_plot_data(n: usize) -> Result<(Vec<(SubsetJ, Vec<i64>)>, Vec<(SubsetJ, SubsetJ)>)> {
    let model = h_representation(n)?;
    let verts = model.vertices().map(|(j, v)| (j, v.clone())).collect();
    Ok((verts, model.edges()))
}
