//! Points of the Peterson variety in J-Toeplitz form, the map Ψ, and the
//! numeric inverse of the Toeplitz lower-left minor map.
//!
//! A point `x·ẇ_J·B^-` is stored as `J` together with the Toeplitz
//! parameters of each diagonal block `J̄_k` of `x`.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{f64_from_json, rational_from_json, subset_from_json};
use crate::linalg::{ad_f, delta_vector, is_totally_nonnegative, is_totally_nonnegative_slack, lower_left_minors, negative_minor, q_vector, Matrix};
use crate::polytope::FaceLabel;
use crate::scalar::{format_rational, rationalize, Rational, Scalar};
use crate::toric::{canonicalize_nonneg, stratum_of as toric_stratum, ToricPoint};
use crate::weyl::{jbar_partition, wj_rep, SubsetJ};

/// `(K, J)` labelling a stratum `Y_{K,J}`.
pub type StratumYLabel = FaceLabel;

/// The `k x k` lower-unitriangular Toeplitz matrix with subdiagonals
/// `x_1, .., x_{k-1}`.
pub fn toeplitz_matrix<T: Scalar>(params: &[T]) -> Matrix<T> {
    let k = params.len() + 1;
    Matrix::from_fn(k, k, |r, c| toeplitz_entry(params, r as isize - c as isize))
}

fn toeplitz_entry<T: Scalar>(params: &[T], d: isize) -> T {
    match d {
        d if d < 0 => T::zero(),
        0 => T::one(),
        d => params[d as usize - 1].clone(),
    }
}

/// `x·ẇ_J·B^-` with `x` J-Toeplitz.
#[derive(Clone, Debug, PartialEq)]
pub struct PetersonPoint<T> {
    pub j: SubsetJ,
    /// One parameter list per connected component of `J`, of length `|J_k|`.
    pub blocks: Vec<Vec<T>>,
}

impl<T: Scalar> PetersonPoint<T> {
    pub fn new(j: SubsetJ, blocks: Vec<Vec<T>>) -> Result<Self> {
        let part = jbar_partition(&j);
        if blocks.len() != part.blocks.len() {
            return Err(Error::Size(format!("J = {j} has {} blocks, got {} parameter lists", part.blocks.len(), blocks.len())));
        }
        for (b, params) in part.blocks.iter().zip(&blocks) {
            if params.len() + 1 != b.len() {
                return Err(Error::Size(format!("block of size {} needs {} parameters, got {}", b.len(), b.len() - 1, params.len())));
            }
        }
        Ok(PetersonPoint { j, blocks })
    }

    /// The point `B^-` (`J = ∅`).
    pub fn identity(n: usize) -> Self {
        PetersonPoint { j: SubsetJ::empty(n), blocks: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    /// The assembled J-Toeplitz matrix `x`.
    pub fn toeplitz(&self) -> Matrix<T> {
        let n = self.n();
        let part = jbar_partition(&self.j);
        let mut block_of = vec![None; n];
        for (bi, b) in part.blocks.iter().enumerate() {
            for p in b.start..=b.end {
                block_of[p - 1] = Some((bi, b.start - 1));
            }
        }
        Matrix::from_fn(n, n, |r, c| match (block_of[r], block_of[c]) {
            (Some((br, s)), Some((bc, _))) if br == bc => toeplitz_entry(&self.blocks[br], (r - s) as isize - (c - s) as isize),
            _ if r == c => T::one(),
            _ => T::zero(),
        })
    }

    pub fn to_f64(&self) -> PetersonPoint<f64> {
        PetersonPoint { j: self.j, blocks: self.blocks.iter().map(|b| b.iter().map(Scalar::to_f64).collect()).collect() }
    }

    /// `{"n":n,"J":[..],"blocks":[[..],..]}`; exact parameters as strings.
    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                Value::Array(
                    b.iter()
                        .map(|c| {
                            let any: &dyn std::any::Any = c;
                            match any.downcast_ref::<Rational>() {
                                Some(r) => Value::String(format_rational(r)),
                                None => json!(c.to_f64()),
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        json!({"n": self.n(), "J": self.j, "blocks": blocks})
    }
}

impl PetersonPoint<Rational> {
    pub fn from_json(v: &Value) -> Result<Self> {
        let (n, j, blocks) = parse_point_fields(v)?;
        let blocks = blocks.iter().map(|b| b.iter().map(rational_from_json).collect()).collect::<Result<Vec<_>>>()?;
        let _ = n;
        PetersonPoint::new(j, blocks)
    }
}

impl PetersonPoint<f64> {
    pub fn from_json_f64(v: &Value) -> Result<Self> {
        let (_, j, blocks) = parse_point_fields(v)?;
        let blocks = blocks.iter().map(|b| b.iter().map(f64_from_json).collect()).collect::<Result<Vec<_>>>()?;
        PetersonPoint::new(j, blocks)
    }
}

fn parse_point_fields(v: &Value) -> Result<(usize, SubsetJ, Vec<Vec<Value>>)> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing integer 'n'".into()))? as usize;
    let j = subset_from_json(n, v.get("J").ok_or_else(|| Error::Parse("missing 'J'".into()))?)?;
    let blocks = v
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array 'blocks'".into()))?
        .iter()
        .map(|b| b.as_array().cloned().ok_or_else(|| Error::Parse("each block must be an array".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((n, j, blocks))
}

/// `x · ẇ_J`.
pub fn flag_rep<T: Scalar>(p: &PetersonPoint<T>) -> Matrix<T> {
    p.toeplitz().matmul(&wj_rep(&p.j)).expect("square matrices of equal size")
}

/// `(M^{-1} f M)_{i,j} = 0` for all `j > i+1`.
pub fn peterson_membership<T: Scalar>(m: &Matrix<T>) -> Result<bool> {
    let conj = ad_f(m)?;
    let n = m.rows();
    Ok((0..n).all(|r| (r + 2..n).all(|c| conj.get(r, c).is_zero_tol(1e-9))))
}

/// `K` = zeros of `Δ(x ẇ_J)`; exact for rationals, within `tol` for floats.
pub fn stratum_of<T: Scalar>(p: &PetersonPoint<T>, tol: f64) -> Result<StratumYLabel> {
    let n = p.n();
    let delta = delta_vector(&flag_rep(p))?;
    let k: Vec<usize> = (1..n).filter(|&i| delta[i - 1].is_zero_tol(tol)).collect();
    let k = SubsetJ::new(n, &k)?;
    if !k.is_subset(&p.j) {
        return Err(Error::Model(format!("Δ vanishes off J: K = {k}, J = {}", p.j)));
    }
    FaceLabel::new(k, p.j)
}

/// Every block is totally nonnegative and every `Δ_i(x ẇ_J) >= 0`. Floats
/// accept minors down to `-slack`; rationals ignore `slack`.
pub fn is_tnn_point<T: Scalar>(p: &PetersonPoint<T>, slack: f64) -> Result<bool> {
    let floor = if T::EXACT { T::zero() } else { T::from_f64_approx(-slack) };
    for b in &p.blocks {
        let m = toeplitz_matrix(b);
        let ok = if T::EXACT {
            is_totally_nonnegative(&m)?
        } else {
            crate::linalg::is_totally_nonnegative_slack(&m.to_f64(), slack)?
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(delta_vector(&flag_rep(p))?.iter().all(|d| *d >= floor))
}

/// `Ψ(p) = [Δ_1, .., Δ_{n-1}; q_1, .., q_{n-1}]` of `x ẇ_J`.
pub fn psi<T: Scalar>(p: &PetersonPoint<T>) -> Result<ToricPoint<T>> {
    let g = flag_rep(p);
    let x = delta_vector(&g)?;
    let y = q_vector(&g)?;
    ToricPoint::new(x, y).map_err(|e| Error::Model(format!("Ψ landed on the exceptional set: {e}")))
}

/// Lower-left minors of the Toeplitz matrix, `i = 1..k-1`.
pub fn minor_map_forward<T: Scalar>(params: &[T]) -> Vec<T> {
    if params.is_empty() {
        return Vec::new();
    }
    lower_left_minors(&toeplitz_matrix(params)).expect("square matrix with k >= 2")
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Residual tolerance, scaled by `max(1, |target|_∞)`.
    pub tol: f64,
    pub max_iter: usize,
    pub max_halvings: usize,
    pub continuation_steps: usize,
    pub restarts: usize,
    /// Slack for the floating Whitney check of the result.
    pub tnn_slack: f64,
    /// Extra Newton steps allowed after convergence while the residual keeps
    /// falling.
    pub polish_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-12,
            max_iter: 200,
            max_halvings: 40,
            continuation_steps: 16,
            restarts: 16,
            tnn_slack: 1e-9,
            polish_iter: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub params: Vec<f64>,
    /// `max_i |F(params)_i - target_i|`.
    pub residual: f64,
    pub iterations: usize,
    pub restarts_used: usize,
}

/// Toeplitz parameters whose lower-left minors equal `targets`, found by
/// damped Newton with continuation from `exp(f)`, validated totally
/// nonnegative.
pub fn minor_map_inverse(targets: &[f64], opts: &SolverOptions) -> Result<SolveReport> {
    if let Some(t) = targets.iter().find(|t| !t.is_finite() || **t < 0.0) {
        return Err(Error::Domain(format!("minor targets must be finite and nonnegative, got {t}")));
    }
    let m = targets.len();
    if m == 0 {
        return Ok(SolveReport { params: Vec::new(), residual: 0.0, iterations: 0, restarts_used: 0 });
    }
    if targets.iter().all(|t| *t == 0.0) {
        // the identity; Newton only creeps toward this maximally degenerate root
        return Ok(SolveReport { params: vec![0.0; m], residual: 0.0, iterations: 0, restarts_used: 0 });
    }
    let seed_hash = targets.iter().fold(0x51_7cc1_b727_220au64, |h, t| (h ^ t.to_bits()).wrapping_mul(0x0100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed_hash);
    let scale = targets.iter().fold(1.0f64, |a, t| a.max(t.abs()));
    let mut last_err = String::new();
    let mut total_iter = 0;
    for attempt in 0..=opts.restarts {
        // restarts alternate jittered exp(c f) seeds with geometric ones,
        // (1 - c f)^{-1}, which approach boundary targets along another path
        let c: f64 = if attempt == 0 { 1.0 } else { rng.random_range(0.5..2.0) };
        let geometric = attempt % 2 == 1;
        let mut fact = 1.0;
        let seed: Vec<f64> = (1..=m)
            .map(|j| {
                fact *= j as f64;
                if geometric {
                    c.powi(j as i32)
                } else {
                    c.powi(j as i32) / fact
                }
            })
            .collect();
        for stretch in [true, false] {
            match continuation(&seed, targets, opts, stretch) {
                Ok((params, residual, iters)) => {
                    total_iter += iters;
                    if residual > opts.tol * scale {
                        last_err = format!("residual {residual:e} after polishing");
                        continue;
                    }
                    let tm = toeplitz_matrix(&params);
                    if !is_totally_nonnegative_slack(&tm, opts.tnn_slack)? {
                        last_err = format!("converged to a non-TNN preimage (witness minor {:?})", negative_minor(&tm));
                        continue;
                    }
                    let (params, residual) =
                        if targets.contains(&0.0) { boundary_refine(params, residual, targets, opts)? } else { (params, residual) };
                    return Ok(SolveReport { params, residual, iterations: total_iter, restarts_used: attempt });
                }
                Err(e) => last_err = e,
            }
        }
    }
    Err(Error::Solve(format!("targets {targets:?}: {last_err}")))
}

/// Cutoffs, relative to the largest parameter, below which parameters are
/// tried at zero.
const SNAP_REL: [f64; 4] = [1e-8, 1e-6, 1e-4, 1e-3];
/// Relative exact residual below which a refined candidate counts as a root.
const SUPPORT_FIT: f64 = 1e-28;

/// At boundary targets the root is singular: f64 Newton pins parameters down
/// only to a root of the residual, and parameters vanishing at the root stay
/// small but nonzero. Candidates with such parameters snapped to zero are
/// refined against exact residuals and the best fit kept.
fn boundary_refine(params: Vec<f64>, residual: f64, targets: &[f64], opts: &SolverOptions) -> Result<(Vec<f64>, f64)> {
    let scale = targets.iter().fold(1.0f64, |a, t| a.max(t.abs()));
    let big = params.iter().fold(1.0f64, |a, p| a.max(p.abs()));
    let mut starts = vec![params.clone()];
    for rel in SNAP_REL {
        let snapped: Vec<f64> = params.iter().map(|&p| if p.abs() > rel * big { p } else { 0.0 }).collect();
        if !starts.contains(&snapped) {
            starts.push(snapped);
        }
    }
    // near a high-multiplicity root residuals barely separate candidates, so
    // among exact fits the one with the most zeros wins
    let exact_fit = (SUPPORT_FIT * scale).powi(2);
    let rank = |merit: f64, p: &[f64]| (merit > exact_fit, std::cmp::Reverse(p.iter().filter(|v| **v == 0.0).count()));
    let mut best: Option<(f64, Vec<f64>, f64)> = None;
    for start in starts {
        let (p, merit) = refine_exact(&start, targets);
        let r = max_abs_diff(&minor_map_forward(&p), targets);
        let better = best.as_ref().is_none_or(|b| {
            let (new, old) = (rank(merit, &p), rank(b.0, &b.1));
            new < old || (new == old && merit < b.0)
        });
        if r <= opts.tol * scale && better && is_totally_nonnegative_slack(&toeplitz_matrix(&p), opts.tnn_slack)? {
            best = Some((merit, p, r));
        }
    }
    Ok(best.map_or((params, residual), |(_, p, r)| (p, r)))
}

/// Parameters are kept on the grid `2^-REFINE_BITS` during refinement.
const REFINE_BITS: usize = 120;
const REFINE_ITER: usize = 100;

fn round_dyadic(x: &Rational) -> Rational {
    let unit = BigInt::one() << REFINE_BITS;
    let scaled = x * Rational::from_integer(unit.clone());
    Rational::new(scaled.round().to_integer(), unit)
}

/// Gauss-Newton over the nonzero entries of `start`, on exact rational
/// residuals with float least-squares directions from an SVD. Returns the parameters and the exact
/// squared residual.
fn refine_exact(start: &[f64], targets: &[f64]) -> (Vec<f64>, f64) {
    let exact = |v: f64| Rational::from_float(v).expect("finite");
    let goal: Vec<Rational> = targets.iter().map(|&t| exact(t)).collect();
    let eval = |x: &[Rational]| -> (Vec<f64>, f64) {
        let r: Vec<f64> = minor_map_forward(x).iter().zip(&goal).map(|(f, g)| (g - f).to_f64()).collect();
        let m = r.iter().map(|v| v * v).sum();
        (r, m)
    };
    let free: Vec<usize> = (0..start.len()).filter(|&j| start[j] != 0.0).collect();
    let mut x: Vec<Rational> = start.iter().map(|&p| exact(p)).collect();
    let (mut r, mut merit) = eval(&x);
    for _ in 0..REFINE_ITER {
        if merit == 0.0 || free.is_empty() {
            break;
        }
        let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
        let jac = minor_jacobian(&xf);
        let a = DMatrix::from_fn(jac.len(), free.len(), |i, c| jac[i][free[c]]);
        let eps = 1e-14 * a.amax();
        let Ok(dir) = a.svd(true, true).solve(&DVector::from_column_slice(&r), eps) else { break };
        if !dir.iter().all(|d| d.is_finite()) {
            break;
        }
        let step = |t: f64| -> (Vec<Rational>, Vec<f64>, f64) {
            let mut cand = x.clone();
            for (&j, d) in free.iter().zip(&dir) {
                cand[j] = round_dyadic(&(&x[j] + exact(t * d)));
            }
            let (rc, mc) = eval(&cand);
            (cand, rc, mc)
        };
        // over-long steps pay off at multiple roots
        let mut best = [4.0, 2.0, 1.0].map(step).into_iter().min_by(|a, b| a.2.total_cmp(&b.2)).expect("nonempty");
        let mut t = 0.5;
        while !(best.2 < merit) && t > 1e-6 {
            best = step(t);
            t *= 0.5;
        }
        if !(best.2 < merit) {
            break;
        }
        let stalled = best.2 > 0.5 * merit;
        (x, r, merit) = best;
        if stalled {
            break;
        }
    }
    (x.iter().map(Scalar::to_f64).collect(), merit)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn continuation(
    seed: &[f64],
    targets: &[f64],
    opts: &SolverOptions,
    stretch: bool,
) -> std::result::Result<(Vec<f64>, f64, usize), String> {
    let d0 = minor_map_forward(seed);
    let steps = opts.continuation_steps.max(1);
    let mut x = seed.to_vec();
    let mut iters = 0;
    for s in 1..=steps {
        let lambda = s as f64 / steps as f64;
        let goal: Vec<f64> =
            if s == steps { targets.to_vec() } else { d0.iter().zip(targets).map(|(a, b)| a + lambda * (b - a)).collect() };
        let scale = goal.iter().fold(1.0f64, |a, t| a.max(t.abs()));
        let tol = if s == steps { opts.tol * scale } else { 1e-8 * scale };
        let (nx, it) = newton(&x, &goal, tol, opts, stretch)?;
        iters += it;
        x = nx;
    }
    // polish: keep stepping while the residual falls
    let mut res = max_abs_diff(&minor_map_forward(&x), targets);
    for _ in 0..opts.polish_iter {
        if res == 0.0 {
            break;
        }
        let Some(cand) = descent_step(&x, targets, opts, stretch) else { break };
        let r = max_abs_diff(&minor_map_forward(&cand), targets);
        if !(r < res) {
            break;
        }
        x = cand;
        res = r;
        iters += 1;
    }
    Ok((x, res, iters))
}

fn newton(
    start: &[f64],
    goal: &[f64],
    tol: f64,
    opts: &SolverOptions,
    stretch: bool,
) -> std::result::Result<(Vec<f64>, usize), String> {
    let mut x = start.to_vec();
    for it in 0..opts.max_iter {
        let res = max_abs_diff(&minor_map_forward(&x), goal);
        if res <= tol {
            return Ok((x, it));
        }
        x = descent_step(&x, goal, opts, stretch).ok_or_else(|| format!("line search stalled at residual {res:e}"))?;
    }
    let res = max_abs_diff(&minor_map_forward(&x), goal);
    if res <= tol {
        Ok((x, opts.max_iter))
    } else {
        Err(format!("no convergence in {} iterations (residual {res:e})", opts.max_iter))
    }
}

fn sum_sq(f: &[f64], goal: &[f64]) -> f64 {
    f.iter().zip(goal).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// One step decreasing `|F(x) - goal|_2`: damped Newton first, then
/// Levenberg-Marquardt steps with growing damping when the Newton direction
/// fails (near-singular Jacobian at degenerate boundary targets).
fn descent_step(x: &[f64], goal: &[f64], opts: &SolverOptions, stretch: bool) -> Option<Vec<f64>> {
    let f = minor_map_forward(x);
    let merit = sum_sq(&f, goal);
    if merit == 0.0 {
        return None;
    }
    let jac = minor_jacobian(x);
    let r: Vec<f64> = f.iter().zip(goal).map(|(a, b)| b - a).collect();
    let at = |dir: &[f64], t: f64| -> (Vec<f64>, f64) {
        let cand: Vec<f64> = x.iter().zip(dir).map(|(a, b)| a + t * b).collect();
        let m = sum_sq(&minor_map_forward(&cand), goal);
        (cand, m)
    };
    let try_dir = |dir: &[f64], halvings: usize| -> Option<Vec<f64>> {
        let mut t = 1.0;
        for h in 0..=halvings {
            let (cand, m) = at(dir, t);
            if m < merit {
                if h > 0 || !stretch {
                    return Some(cand);
                }
                // at a multiple root full steps undershoot; stretch while it helps
                let (mut best, mut best_m) = (cand, m);
                for _ in 0..8 {
                    t *= 2.0;
                    let (c, m) = at(dir, t);
                    if !(m < best_m) {
                        break;
                    }
                    best = c;
                    best_m = m;
                }
                return Some(best);
            }
            t *= 0.5;
        }
        None
    };
    if let Some(dir) = solve_pivoted(jac.clone(), r.clone()) {
        if let Some(c) = try_dir(&dir, opts.max_halvings) {
            return Some(c);
        }
    }
    let m = x.len();
    let jtj: Vec<Vec<f64>> = (0..m).map(|a| (0..m).map(|b| (0..m).map(|i| jac[i][a] * jac[i][b]).sum()).collect()).collect();
    let jtr: Vec<f64> = (0..m).map(|a| (0..m).map(|i| jac[i][a] * r[i]).sum()).collect();
    let diag = (0..m).map(|a| jtj[a][a]).fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
    let mut lambda = 1e-12 * diag;
    while lambda <= 1e8 * diag {
        let mut damped = jtj.clone();
        for (a, row) in damped.iter_mut().enumerate() {
            row[a] += lambda;
        }
        if let Some(dir) = solve_pivoted(damped, jtr.clone()) {
            if let Some(c) = try_dir(&dir, 0) {
                return Some(c);
            }
        }
        lambda *= 10.0;
    }
    None
}

/// Jacobian of the lower-left minor map: `∂Δ_i/∂x_j` is the sum of the
/// cofactors of the `i`-th minor over the positions holding `x_j`.
pub fn minor_jacobian(x: &[f64]) -> Vec<Vec<f64>> {
    let m = x.len();
    let k = m + 1;
    let mut jac = vec![vec![0.0; m]; m];
    for i in 1..k {
        let s = k - i;
        // minor rows i..k-1, cols 0..s-1 (0-based); entry (a,b) holds x_{i+a-b}
        let sub = Matrix::from_fn(s, s, |a, b| toeplitz_entry(x, (i + a) as isize - b as isize));
        for a in 0..s {
            for b in 0..s {
                let d = i + a;
                if d <= b {
                    continue; // holds a constant 0 or 1
                }
                let cof = if s == 1 {
                    1.0
                } else {
                    let rows: Vec<usize> = (0..s).filter(|&r| r != a).collect();
                    let cols: Vec<usize> = (0..s).filter(|&c| c != b).collect();
                    let det = sub.submatrix(&rows, &cols).and_then(|q| q.determinant()).expect("in range");
                    if (a + b) % 2 == 0 {
                        det
                    } else {
                        -det
                    }
                };
                jac[i - 1][d - b - 1] += cof;
            }
        }
    }
    jac
}

/// Gaussian elimination with partial pivoting; `None` only on an exactly
/// zero pivot or a non-finite result.
fn solve_pivoted(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let m = b.len();
    for col in 0..m {
        let p = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[p][col] == 0.0 {
            return None;
        }
        a.swap(p, col);
        b.swap(p, col);
        for r in col + 1..m {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..m {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for r in (0..m).rev() {
        let s: f64 = (r + 1..m).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Exact parameters when rationalizing the float solution at `1e-12`
/// reproduces rational targets exactly and passes the exact Whitney test.
pub fn exact_certificate(targets: &[Rational], params: &[f64]) -> Option<Vec<Rational>> {
    let exact: Vec<Rational> = params.iter().map(|&p| rationalize(p, 1e-12)).collect();
    (minor_map_forward(&exact) == targets && is_totally_nonnegative(&toeplitz_matrix(&exact)).ok()?).then_some(exact)
}

/// Block targets for `(K, J)`: one vector per component `J_k`, indexed by
/// the local position `i + 1 - min J_k`.
fn block_targets(k: &SubsetJ, j: &SubsetJ, mut value: impl FnMut(usize) -> f64) -> Vec<Vec<f64>> {
    crate::weyl::connected_components(j)
        .iter()
        .map(|comp| (comp.start..=comp.end).map(|i| if k.contains(i) { 0.0 } else { value(i) }).collect())
        .collect()
}

/// A point of `Y_{K,J;>0}`: per block, positive targets log-uniform on
/// `[1/10, 10]` off `K` and zero on `K`, inverted through the minor map.
pub fn sample_stratum<R: Rng + ?Sized>(
    k: &SubsetJ,
    j: &SubsetJ,
    rng: &mut R,
    opts: &SolverOptions,
) -> Result<PetersonPoint<f64>> {
    FaceLabel::new(*k, *j)?;
    let targets = block_targets(k, j, |_| 10f64.powf(rng.random_range(-1.0..=1.0)));
    sample_with_targets(j, &targets, opts)
}

/// Inverts each block's targets.
pub fn sample_with_targets(j: &SubsetJ, targets: &[Vec<f64>], opts: &SolverOptions) -> Result<PetersonPoint<f64>> {
    let blocks = targets.iter().map(|t| minor_map_inverse(t, opts).map(|r| r.params)).collect::<Result<Vec<_>>>()?;
    PetersonPoint::new(*j, blocks)
}

/// The inverse of `Ψ_{>=0}` on a nonnegative toric point: `J` is read off the
/// support of `y`, and each block is solved against the canonical `x`.
pub fn psi_inverse_nonneg(q: &ToricPoint<f64>, tol: f64, opts: &SolverOptions) -> Result<PetersonPoint<f64>> {
    let c = canonicalize_nonneg(q, tol)?;
    let label = toric_stratum(&c, tol)?;
    let targets = block_targets(&label.k, &label.j, |i| c.x[i - 1]);
    sample_with_targets(&label.j, &targets, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ExactMatrix;
    use crate::scalar::{int, rat};
    use crate::weyl::w0_rep;

    fn s(n: usize, m: &[usize]) -> SubsetJ {
        SubsetJ::new(n, m).unwrap()
    }

    fn big_cell(a: Rational, b: Rational) -> PetersonPoint<Rational> {
        PetersonPoint::new(SubsetJ::full(3), vec![vec![a, b]]).unwrap()
    }

    #[test]
    fn toeplitz_examples() {
        let (a, b) = (rat(2, 3), int(5));
        let t = toeplitz_matrix(&[a.clone(), b.clone()]);
        let expect = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![a.clone(), int(1), int(0)],
            vec![b, a.clone(), int(1)],
        ])
        .unwrap();
        assert_eq!(t, expect);
        assert_eq!(toeplitz_matrix::<Rational>(&[]), ExactMatrix::identity(1));
        assert_eq!(toeplitz_matrix(&[a.clone()]), Matrix::from_rows(vec![vec![int(1), int(0)], vec![a, int(1)]]).unwrap());
    }

    #[test]
    fn flag_rep_examples() {
        assert_eq!(flag_rep(&PetersonPoint::<Rational>::identity(4)), ExactMatrix::identity(4));
        let (a, b) = (int(3), int(7));
        let g = flag_rep(&big_cell(a.clone(), b.clone()));
        let expect = Matrix::from_rows(vec![
            vec![int(0), int(0), int(1)],
            vec![int(0), int(-1), a.clone()],
            vec![int(1), -a, b],
        ])
        .unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn flag_rep_n10_example() {
        let j = s(10, &[1, 2, 4, 5, 6, 9]);
        let (a, b, x, y, z, w) = (int(2), int(3), int(5), int(7), int(11), int(13));
        let p = PetersonPoint::new(j, vec![vec![a.clone(), b.clone()], vec![x.clone(), y.clone(), z.clone()], vec![w.clone()]]).unwrap();
        let g = flag_rep(&p);
        let mut expect = ExactMatrix::zeros(10, 10);
        let entries: Vec<(usize, usize, Rational)> = vec![
            (1, 3, int(1)),
            (2, 2, int(-1)),
            (2, 3, a.clone()),
            (3, 1, int(1)),
            (3, 2, -a.clone()),
            (3, 3, b.clone()),
            (4, 7, int(1)),
            (5, 6, int(-1)),
            (5, 7, x.clone()),
            (6, 5, int(1)),
            (6, 6, -x.clone()),
            (6, 7, y.clone()),
            (7, 4, int(-1)),
            (7, 5, x.clone()),
            (7, 6, -y.clone()),
            (7, 7, z.clone()),
            (8, 8, int(1)),
            (9, 10, int(1)),
            (10, 9, int(-1)),
            (10, 10, w.clone()),
        ];
        for (r, c, v) in entries {
            expect = expect.with_entry(r - 1, c - 1, v);
        }
        assert_eq!(g, expect);
        assert!(crate::weyl::is_j_toeplitz(&p.toeplitz(), &j));
    }

    #[test]
    fn membership_examples() {
        assert!(peterson_membership(&ExactMatrix::identity(4)).unwrap());
        assert!(peterson_membership(&w0_rep::<Rational>(4)).unwrap());
        let p = PetersonPoint::new(s(5, &[1, 2, 4]), vec![vec![rat(1, 2), int(3)], vec![rat(-2, 7)]]).unwrap();
        assert!(peterson_membership(&flag_rep(&p)).unwrap());
        // B^- lies in Y, a generic upper unipotent does not
        let g = Matrix::from_rows(vec![
            vec![int(1), int(1), int(5)],
            vec![int(0), int(1), int(2)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        assert!(!peterson_membership(&g).unwrap());
        assert_eq!(peterson_membership(&ExactMatrix::zeros(2, 2)), Err(Error::Singular));
    }

    #[test]
    fn stratum_examples() {
        let label = stratum_of(&big_cell(int(1), int(1)), 0.0).unwrap();
        assert_eq!(label, FaceLabel::new(s(3, &[1]), SubsetJ::full(3)).unwrap());
        let label = stratum_of(&big_cell(int(2), int(1)), 0.0).unwrap();
        assert_eq!(label.k, SubsetJ::empty(3));
        let p = PetersonPoint::new(s(5, &[1, 2, 4]), vec![vec![int(1), int(1)], vec![int(4)]]).unwrap();
        assert_eq!(stratum_of(&p, 0.0).unwrap().k, s(5, &[1]));
        assert_eq!(delta_vector(&flag_rep(&p)).unwrap(), vec![int(0), int(1), int(1), int(4)]);
    }

    #[test]
    fn tnn_examples() {
        assert!(is_tnn_point(&big_cell(int(1), int(1)), 0.0).unwrap());
        assert!(!is_tnn_point(&big_cell(int(1), int(2)), 0.0).unwrap());
        assert!(is_tnn_point(&PetersonPoint::<Rational>::identity(3), 0.0).unwrap());
    }

    #[test]
    fn psi_examples() {
        let id = psi(&PetersonPoint::<Rational>::identity(4)).unwrap();
        assert_eq!(id, ToricPoint::new(vec![int(1); 3], vec![int(0); 3]).unwrap());
        let q = psi(&big_cell(int(2), int(1))).unwrap();
        assert_eq!(q, ToricPoint::new(vec![int(3), int(1)], vec![int(1), int(1)]).unwrap());
        let q = psi(&big_cell(int(0), int(0))).unwrap();
        assert_eq!(q, ToricPoint::new(vec![int(0), int(0)], vec![int(1), int(1)]).unwrap());
    }

    #[test]
    fn forward_examples() {
        let (a, b) = (rat(3, 2), int(2));
        assert_eq!(minor_map_forward(&[a.clone(), b.clone()]), vec![a.clone() * a.clone() - b.clone(), b]);
        assert_eq!(minor_map_forward(&[a.clone()]), vec![a]);
        assert_eq!(minor_map_forward(&vec![int(0); 4]), vec![int(0); 4]);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let x = [0.7, 0.3, 0.11, 0.02];
        let jac = minor_jacobian(&x);
        let h = 1e-6;
        for j in 0..4 {
            let mut xp = x;
            let mut xm = x;
            xp[j] += h;
            xm[j] -= h;
            let (fp, fm) = (minor_map_forward(&xp), minor_map_forward(&xm));
            for i in 0..4 {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                assert!((fd - jac[i][j]).abs() < 1e-6, "i={i} j={j}: {fd} vs {}", jac[i][j]);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let opts = SolverOptions::default();
        let r = minor_map_inverse(&[3.0, 1.0], &opts).unwrap();
        assert!((r.params[0] - 2.0).abs() < 1e-12 && (r.params[1] - 1.0).abs() < 1e-12);
        assert_eq!(exact_certificate(&[int(3), int(1)], &r.params).unwrap(), vec![int(2), int(1)]);
        let r = minor_map_inverse(&[5.0], &opts).unwrap();
        assert!((r.params[0] - 5.0).abs() < 1e-12);
        let r = minor_map_inverse(&[0.0, 1.0], &opts).unwrap();
        assert!((r.params[0] - 1.0).abs() < 1e-12 && (r.params[1] - 1.0).abs() < 1e-12);
        let r = minor_map_inverse(&[0.0, 0.0], &opts).unwrap();
        assert!(r.params.iter().all(|p| p.abs() < 1e-12), "{:?}", r.params);
        assert!(matches!(minor_map_inverse(&[-1.0, 1.0], &opts), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_all_zero_patterns_k5() {
        let opts = SolverOptions::default();
        let base = [0.4, 2.5, 7.0, 0.15];
        for mask in 0u32..16 {
            let t: Vec<f64> = base.iter().enumerate().map(|(i, &v)| if mask & (1 << i) != 0 { 0.0 } else { v }).collect();
            let r = minor_map_inverse(&t, &opts).unwrap();
            let f = minor_map_forward(&r.params);
            assert!(max_abs_diff(&f, &t) < 1e-8, "targets {t:?} residual {}", r.residual);
        }
    }

    #[test]
    fn sample_examples() {
        let opts = SolverOptions::default();
        let p = sample_with_targets(&SubsetJ::full(3), &[vec![0.0, 1.0]], &opts).unwrap();
        assert!((p.blocks[0][0] - 1.0).abs() < 1e-12 && (p.blocks[0][1] - 1.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let id = sample_stratum(&SubsetJ::empty(4), &SubsetJ::empty(4), &mut rng, &opts).unwrap();
        assert_eq!(id, PetersonPoint::identity(4));
        let full = SubsetJ::full(3);
        let p = sample_stratum(&full, &full, &mut rng, &opts).unwrap();
        assert!(p.blocks[0].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn psi_inverse_examples() {
        let opts = SolverOptions::default();
        let q = ToricPoint::new(vec![1.0; 3], vec![0.0; 3]).unwrap();
        assert_eq!(psi_inverse_nonneg(&q, 1e-9, &opts).unwrap(), PetersonPoint::identity(4));
        let q = ToricPoint::new(vec![3.0, 1.0], vec![1.0, 1.0]).unwrap();
        let p = psi_inverse_nonneg(&q, 1e-9, &opts).unwrap();
        assert!((p.blocks[0][0] - 2.0).abs() < 1e-12 && (p.blocks[0][1] - 1.0).abs() < 1e-12);
        let q = ToricPoint::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let p = psi_inverse_nonneg(&q, 1e-9, &opts).unwrap();
        assert!(p.blocks[0].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn json_round_trip() {
        let p = PetersonPoint::new(s(4, &[1, 3]), vec![vec![rat(-3, 2)], vec![int(2)]]).unwrap();
        let v = p.to_json();
        assert_eq!(v, json!({"n": 4, "J": [1, 3], "blocks": [["-3/2"], ["2"]]}));
        assert_eq!(PetersonPoint::from_json(&v).unwrap(), p);
        assert!(PetersonPoint::from_json(&json!({"n": 4, "J": [1, 2], "blocks": [["1"]]})).is_err());
    }
}
