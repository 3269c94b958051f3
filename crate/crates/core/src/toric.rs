//! Points of the toric quotient `X(Σ) = (C^{2(n-1)} - E)/T`, restricted to
//! what the nonnegative part needs: the torus action, strata, canonical
//! nonnegative representatives, and the moment map onto `P_{n-1}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{f64_from_json, rational_from_json};
use crate::linalg::Matrix;
use crate::polytope::{h_representation, FaceLabel, Facet};
use crate::scalar::{format_rational, Rational, Scalar};
use crate::weyl::SubsetJ;

/// `(K, J)` labelling a stratum `X(Σ)_{K,J}`.
pub type StratumLabel = FaceLabel;

pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// A diagonal torus element `diag(t_1, .., t_n)` with `Π t_i = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<T> {
    t: Vec<T>,
}

impl<T: Scalar> TorusElement<T> {
    /// Exact scalars require the product to be exactly 1; floats to `1e-12`.
    pub fn new(t: Vec<T>) -> Result<Self> {
        if t.len() < 2 {
            return Err(Error::Size("torus element needs n >= 2".into()));
        }
        if t.iter().any(|x| x.is_zero()) {
            return Err(Error::Domain("torus entries must be nonzero".into()));
        }
        let prod = t.iter().fold(T::one(), |acc, x| acc * x.clone());
        if !(prod.clone() - T::one()).is_zero_tol(1e-12) {
            return Err(Error::Domain(format!("torus entries must have product 1, got {prod:?}")));
        }
        Ok(TorusElement { t })
    }

    pub fn entries(&self) -> &[T] {
        &self.t
    }

    /// `ϖ_i(t) = t_1 ⋯ t_i`.
    pub fn fundamental_weight(&self, i: usize) -> T {
        self.t[..i].iter().fold(T::one(), |acc, x| acc * x.clone())
    }

    /// `α_i(t) = t_i / t_{i+1}`.
    pub fn simple_root(&self, i: usize) -> T {
        self.t[i - 1].clone() / self.t[i].clone()
    }
}

impl TorusElement<f64> {
    /// The positive torus element with `log ϖ_i(t) = u_i`.
    pub fn from_log_weights(u: &[f64]) -> Self {
        let n = u.len() + 1;
        let w = |i: usize| if i == 0 || i == n { 0.0 } else { u[i - 1] };
        let t = (1..=n).map(|i| (w(i) - w(i - 1)).exp()).collect();
        TorusElement { t }
    }
}

/// A representative `(x_1..x_{n-1}; y_1..y_{n-1})` off the exceptional set.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricPoint<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

impl<T: Scalar> ToricPoint<T> {
    /// Rejects pairs `(x_i, y_i)` that are exactly `(0, 0)`.
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        if x.len() != y.len() || x.is_empty() {
            return Err(Error::Size(format!("x and y must have equal positive length, got {} and {}", x.len(), y.len())));
        }
        if let Some(i) = (0..x.len()).find(|&i| x[i].is_zero() && y[i].is_zero()) {
            return Err(Error::ExceptionalPoint(i + 1));
        }
        Ok(ToricPoint { x, y })
    }

    pub fn n(&self) -> usize {
        self.x.len() + 1
    }

    pub fn mode(&self) -> &'static str {
        T::mode_name()
    }

    pub fn to_f64(&self) -> ToricPoint<f64> {
        ToricPoint { x: self.x.iter().map(Scalar::to_f64).collect(), y: self.y.iter().map(Scalar::to_f64).collect() }
    }

    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.x.iter().chain(&self.y).all(|v| v.to_f64() >= -tol)
    }

    /// `{"x":[..],"y":[..],"mode":..}`; exact coordinates as strings.
    pub fn to_json(&self) -> Value {
        let enc = |v: &[T]| -> Value {
            Value::Array(
                v.iter()
                    .map(|c| {
                        let any: &dyn std::any::Any = c;
                        match any.downcast_ref::<Rational>() {
                            Some(r) => Value::String(format_rational(r)),
                            None => json!(c.to_f64()),
                        }
                    })
                    .collect(),
            )
        };
        json!({"x": enc(&self.x), "y": enc(&self.y), "mode": self.mode()})
    }
}

/// Either mode of a parsed point.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyToricPoint {
    Exact(ToricPoint<Rational>),
    Float(ToricPoint<f64>),
}

impl AnyToricPoint {
    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |key: &str| v.get(key).and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("missing array '{key}'")));
        let (xs, ys) = (get("x")?, get("y")?);
        let mode = v.get("mode").and_then(Value::as_str).unwrap_or("float");
        match mode {
            "exact" => Ok(AnyToricPoint::Exact(ToricPoint::new(
                xs.iter().map(rational_from_json).collect::<Result<_>>()?,
                ys.iter().map(rational_from_json).collect::<Result<_>>()?,
            )?)),
            "float" => Ok(AnyToricPoint::Float(ToricPoint::new(
                xs.iter().map(f64_from_json).collect::<Result<_>>()?,
                ys.iter().map(f64_from_json).collect::<Result<_>>()?,
            )?)),
            other => Err(Error::Parse(format!("mode must be 'exact' or 'float', got '{other}'"))),
        }
    }

    pub fn to_f64(&self) -> ToricPoint<f64> {
        match self {
            AnyToricPoint::Exact(p) => p.to_f64(),
            AnyToricPoint::Float(p) => p.clone(),
        }
    }

    pub fn stratum(&self, tol: f64) -> Result<StratumLabel> {
        match self {
            AnyToricPoint::Exact(p) => stratum_of(p, tol),
            AnyToricPoint::Float(p) => stratum_of(p, tol),
        }
    }
}

/// `x_i ↦ ϖ_i(t) x_i`, `y_i ↦ α_i(t) y_i`.
pub fn t_action<T: Scalar>(t: &TorusElement<T>, p: &ToricPoint<T>) -> Result<ToricPoint<T>> {
    if t.t.len() != p.n() {
        return Err(Error::Size(format!("torus of rank {} acting on a point with n = {}", t.t.len(), p.n())));
    }
    let x = (1..p.n()).map(|i| t.fundamental_weight(i) * p.x[i - 1].clone()).collect();
    let y = (1..p.n()).map(|i| t.simple_root(i) * p.y[i - 1].clone()).collect();
    Ok(ToricPoint { x, y })
}

/// `K` = zeros of `x`, `J` = support of `y`. Floats compare against `tol`.
pub fn stratum_of<T: Scalar>(p: &ToricPoint<T>, tol: f64) -> Result<StratumLabel> {
    let n = p.n();
    let mut k = Vec::new();
    let mut j = Vec::new();
    for i in 1..n {
        let xz = p.x[i - 1].is_zero_tol(tol);
        let yz = p.y[i - 1].is_zero_tol(tol);
        if xz && yz {
            return Err(if T::EXACT { Error::ExceptionalPoint(i) } else { Error::AmbiguousSupport(i) });
        }
        if xz {
            k.push(i);
        }
        if !yz {
            j.push(i);
        }
    }
    FaceLabel::new(SubsetJ::new(n, &k)?, SubsetJ::new(n, &j)?)
}

/// The unique representative with `y_i = 1` (`i ∈ J`), `y_i = 0` (`i ∉ J`),
/// `x_i = 1` (`i ∉ J`), `x_i = 0` (`i ∈ K`), found by solving for the
/// positive torus element in logarithmic coordinates.
pub fn canonicalize_nonneg<T: Scalar>(p: &ToricPoint<T>, tol: f64) -> Result<ToricPoint<f64>> {
    if !p.is_nonnegative(if T::EXACT { 0.0 } else { tol }) {
        return Err(Error::NotNonnegative);
    }
    let label = stratum_of(p, tol)?;
    let u = canonical_log_weights(&p.to_f64(), &label)?;
    let n = p.n();
    let mut x = vec![0.0; n - 1];
    let mut y = vec![0.0; n - 1];
    for i in 1..n {
        if label.j.contains(i) {
            y[i - 1] = 1.0;
            x[i - 1] = if label.k.contains(i) { 0.0 } else { p.x[i - 1].to_f64() * u[i - 1].exp() };
        } else {
            x[i - 1] = 1.0;
        }
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("canonical form overflowed".into()));
    }
    Ok(ToricPoint { x, y })
}

/// Solves `(C u)_i = -log y_i` for `i ∈ J` and `u_i = -log x_i` for `i ∉ J`,
/// `C` the Cartan matrix; `u_i = log ϖ_i(t)` of the normalizing element.
pub fn canonical_log_weights(p: &ToricPoint<f64>, label: &StratumLabel) -> Result<Vec<f64>> {
    let n1 = p.n() - 1;
    let mut rows = Vec::with_capacity(n1);
    let mut rhs = Vec::with_capacity(n1);
    for i in 1..=n1 {
        if label.j.contains(i) {
            rows.push(
                (1..=n1)
                    .map(|c| {
                        if c == i {
                            2.0
                        } else if c.abs_diff(i) == 1 {
                            -1.0
                        } else {
                            0.0
                        }
                    })
                    .collect::<Vec<f64>>(),
            );
            rhs.push(-p.y[i - 1].abs().ln());
        } else {
            rows.push((1..=n1).map(|c| if c == i { 1.0 } else { 0.0 }).collect());
            rhs.push(-p.x[i - 1].abs().ln());
        }
    }
    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("logarithm of a zero coordinate".into()));
    }
    let m = Matrix::from_rows(rows)?;
    let u = m.solve(&rhs).ok_or_else(|| Error::Numerical("canonicalization system is singular".into()))?;
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("canonicalization produced a non-finite value".into()));
    }
    Ok(u)
}

/// Same stratum and canonical forms within `tol`.
pub fn points_equal<T: Scalar>(p: &ToricPoint<T>, q: &ToricPoint<T>, tol: f64) -> Result<bool> {
    let (cp, cq) = (canonicalize_nonneg(p, tol)?, canonicalize_nonneg(q, tol)?);
    if stratum_of(p, tol)? != stratum_of(q, tol)? {
        return Ok(false);
    }
    Ok(cp.x.iter().chain(&cp.y).zip(cq.x.iter().chain(&cq.y)).all(|(a, b)| (a - b).abs() <= tol))
}

/// Lattice points of `P_{n-1}` with their exponents
/// `a_i(m) = ⟨m, -α^∨_i⟩ + 2` and `b_i(m) = m_i`.
#[derive(Clone, Debug)]
pub struct MomentWeights {
    pub n: usize,
    pub points: Vec<Vec<i64>>,
    pub a: Vec<Vec<u32>>,
    pub b: Vec<Vec<u32>>,
}

pub fn lattice_points(n: usize) -> Result<MomentWeights> {
    let model = h_representation(n)?;
    let bound = model.vertices().flat_map(|(_, v)| v.iter().copied()).max().unwrap_or(0);
    let n1 = n - 1;
    let mut points = Vec::new();
    let mut cur = vec![0i64; n1];
    loop {
        if model.is_feasible(&cur.iter().map(|&c| Rational::from_int(c)).collect::<Vec<_>>()) {
            points.push(cur.clone());
        }
        // odometer over the box [0, bound]^{n-1}
        let Some(pos) = (0..n1).find(|&i| cur[i] < bound) else { break };
        cur[pos] += 1;
        for c in &mut cur[..pos] {
            *c = 0;
        }
    }
    let plus: Vec<_> = (1..n).map(|i| model.inequality(Facet::Plus(i)).clone()).collect();
    let a = points
        .iter()
        .map(|m| plus.iter().map(|h| h.slack(&m.iter().map(|&c| c as f64).collect::<Vec<_>>()) as u32).collect())
        .collect();
    let b = points.iter().map(|m| m.iter().map(|&c| c as u32).collect()).collect();
    Ok(MomentWeights { n, points, a, b })
}

impl MomentWeights {
    /// `μ(p) = Σ_m w_m m / Σ_m w_m` with `w_m = Π|x_i|^{2a_i} Π|y_i|^{2b_i}`,
    /// evaluated with log-sum-exp. `0^0 = 1`.
    pub fn moment_map(&self, p: &ToricPoint<f64>) -> Result<Vec<f64>> {
        if p.n() != self.n {
            return Err(Error::Size(format!("point has n = {}, weights have n = {}", p.n(), self.n)));
        }
        if let Some(i) = (0..p.x.len()).find(|&i| p.x[i] == 0.0 && p.y[i] == 0.0) {
            return Err(Error::ExceptionalPoint(i + 1));
        }
        let lx: Vec<f64> = p.x.iter().map(|v| v.abs().ln()).collect();
        let ly: Vec<f64> = p.y.iter().map(|v| v.abs().ln()).collect();
        let logs: Vec<Option<f64>> = (0..self.points.len())
            .map(|m| {
                let mut acc = 0.0;
                for i in 0..lx.len() {
                    for (e, l) in [(self.a[m][i], lx[i]), (self.b[m][i], ly[i])] {
                        if e == 0 {
                            continue;
                        }
                        if l == f64::NEG_INFINITY {
                            return None;
                        }
                        acc += 2.0 * f64::from(e) * l;
                    }
                }
                Some(acc)
            })
            .collect();
        let max = logs.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
        if !max.is_finite() {
            return Err(Error::Numerical("all moment weights vanish".into()));
        }
        let mut total = 0.0;
        let mut out = vec![0.0; self.n - 1];
        for (m, l) in logs.iter().enumerate() {
            let Some(l) = l else { continue };
            let w = (l - max).exp();
            total += w;
            for (o, &c) in out.iter_mut().zip(&self.points[m]) {
                *o += w * c as f64;
            }
        }
        Ok(out.into_iter().map(|o| o / total).collect())
    }
}

/// Facet slacks `(⟨e_i,p⟩, ⟨-α^∨_i,p⟩ + 2)` of a point of `R^{n-1}`.
pub fn facet_slacks(p: &[f64]) -> Vec<(f64, f64)> {
    (1..=p.len()).map(|i| (p[i - 1], crate::fan::neg_coroot_pairing(p, i) + 2.0)).collect()
}

/// `μ(p) ∈ Int F_{K,J}`: tight facets within `tol`, the others with slack
/// above `margin`.
pub fn in_open_face(mu: &[f64], label: &StratumLabel, tol: f64, margin: f64) -> bool {
    facet_slacks(mu).iter().enumerate().all(|(idx, &(minus, plus))| {
        let i = idx + 1;
        let plus_ok = if label.k.contains(i) { plus.abs() <= tol } else { plus > margin };
        let minus_ok = if label.j.contains(i) { minus > margin } else { minus.abs() <= tol };
        plus_ok && minus_ok
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::scalar::{int, rat};
    use crate::weyl::label_pairs;

    fn fp(x: &[f64], y: &[f64]) -> ToricPoint<f64> {
        ToricPoint::new(x.to_vec(), y.to_vec()).unwrap()
    }

    fn random_torus(rng: &mut ChaCha8Rng, n: usize) -> TorusElement<f64> {
        let u: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
        TorusElement::from_log_weights(&u)
    }

    #[test]
    fn torus_action_examples() {
        let t = TorusElement::new(vec![int(2), rat(1, 2)]).unwrap();
        let p = ToricPoint::new(vec![int(3)], vec![int(5)]).unwrap();
        let q = t_action(&t, &p).unwrap();
        assert_eq!(q, ToricPoint::new(vec![int(6)], vec![int(20)]).unwrap());
        let id = TorusElement::new(vec![int(1); 4]).unwrap();
        let p = ToricPoint::new(vec![int(1), int(0), int(2)], vec![int(0), int(3), int(4)]).unwrap();
        assert_eq!(t_action(&id, &p).unwrap(), p);
        assert!(TorusElement::new(vec![int(2), int(2)]).is_err());
    }

    #[test]
    fn exceptional_set_rejected() {
        assert_eq!(ToricPoint::new(vec![int(0)], vec![int(0)]), Err(Error::ExceptionalPoint(1)));
        let p = fp(&[1e-12, 1.0], &[1e-12, 0.0]);
        assert_eq!(stratum_of(&p, 1e-9), Err(Error::AmbiguousSupport(1)));
    }

    #[test]
    fn stratum_examples() {
        let s = |n, m: &[usize]| SubsetJ::new(n, m).unwrap();
        let p = fp(&[1.0, 1.0], &[0.0, 0.0]);
        assert_eq!(stratum_of(&p, 1e-9).unwrap(), FaceLabel::new(s(3, &[]), s(3, &[])).unwrap());
        let p = fp(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]);
        assert_eq!(stratum_of(&p, 1e-9).unwrap(), FaceLabel::new(SubsetJ::full(4), SubsetJ::full(4)).unwrap());
        let p = fp(&[0.0, 5.0], &[1.0, 1.0]);
        assert_eq!(stratum_of(&p, 1e-9).unwrap(), FaceLabel::new(s(3, &[1]), s(3, &[1, 2])).unwrap());
    }

    #[test]
    fn support_invariant_under_torus() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = fp(&[0.0, 2.0, 3.0], &[1.0, 0.0, 4.0]);
        let before = stratum_of(&p, 1e-9).unwrap();
        for _ in 0..20 {
            let t = random_torus(&mut rng, 4);
            assert_eq!(stratum_of(&t_action(&t, &p).unwrap(), 1e-9).unwrap(), before);
        }
    }

    #[test]
    fn canonical_examples() {
        let c = canonicalize_nonneg(&fp(&[3.0], &[4.0]), 1e-9).unwrap();
        assert!((c.x[0] - 1.5).abs() < 1e-12 && c.y[0] == 1.0);
        let q = fp(&[0.0, 2.5, 1.0], &[1.0, 1.0, 0.0]);
        let c = canonicalize_nonneg(&q, 1e-9).unwrap();
        for (a, b) in c.x.iter().chain(&c.y).zip(q.x.iter().chain(&q.y)) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(canonicalize_nonneg(&fp(&[-1.0], &[1.0]), 1e-9), Err(Error::NotNonnegative));
        // exact input goes through the same path
        let e = ToricPoint::new(vec![int(3)], vec![int(4)]).unwrap();
        assert!((canonicalize_nonneg(&e, 0.0).unwrap().x[0] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=5 {
            for (k, j) in label_pairs(n) {
                let x: Vec<f64> = (1..n).map(|i| if k.contains(i) { 0.0 } else { rng.random_range(0.1..10.0) }).collect();
                let y: Vec<f64> = (1..n).map(|i| if j.contains(i) { rng.random_range(0.1..10.0) } else { 0.0 }).collect();
                let p = fp(&x, &y);
                let t = random_torus(&mut rng, n);
                let q = t_action(&t, &p).unwrap();
                assert!(points_equal(&p, &q, 1e-9).unwrap());
                let (cp, cq) = (canonicalize_nonneg(&p, 1e-9).unwrap(), canonicalize_nonneg(&q, 1e-9).unwrap());
                for (a, b) in cp.x.iter().zip(&cq.x) {
                    assert!((a - b).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn equality_examples() {
        assert!(!points_equal(&fp(&[1.0, 1.0], &[0.0, 0.0]), &fp(&[0.0, 1.0], &[1.0, 1.0]), 1e-9).unwrap());
        assert!(points_equal(&fp(&[3.0], &[4.0]), &fp(&[1.5], &[1.0]), 1e-9).unwrap());
        assert_eq!(points_equal(&fp(&[-3.0], &[4.0]), &fp(&[1.5], &[1.0]), 1e-9), Err(Error::NotNonnegative));
    }

    #[test]
    fn lattice_point_examples() {
        let w = lattice_points(2).unwrap();
        assert_eq!(w.points, vec![vec![0], vec![1]]);
        let w = lattice_points(3).unwrap();
        for m in [[0, 0], [1, 0], [0, 1], [1, 1], [2, 2]] {
            assert!(w.points.contains(&m.to_vec()));
        }
        assert_eq!(w.points.len(), 5);
        for n in 2..=5 {
            let w = lattice_points(n).unwrap();
            for j in SubsetJ::all(n) {
                assert!(w.points.contains(&crate::polytope::vertex_vj(&j)));
            }
        }
    }

    #[test]
    fn moment_examples() {
        for n in 2..=5 {
            let w = lattice_points(n).unwrap();
            let mu = w.moment_map(&fp(&vec![1.0; n - 1], &vec![0.0; n - 1])).unwrap();
            assert!(mu.iter().all(|&v| v.abs() < 1e-12));
            let mu = w.moment_map(&fp(&vec![0.0; n - 1], &vec![1.0; n - 1])).unwrap();
            let top = crate::polytope::vertex_vj(&SubsetJ::full(n));
            for (a, &b) in mu.iter().zip(&top) {
                assert!((a - b as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn moment_is_torus_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let w = lattice_points(4).unwrap();
        for _ in 0..50 {
            let p = fp(
                &(0..3).map(|_| rng.random_range(0.1..10.0)).collect::<Vec<_>>(),
                &(0..3).map(|_| rng.random_range(0.1..10.0)).collect::<Vec<_>>(),
            );
            let t = random_torus(&mut rng, 4);
            let (a, b) = (w.moment_map(&p).unwrap(), w.moment_map(&t_action(&t, &p).unwrap()).unwrap());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn moment_lands_in_open_faces() {
        // canonical coordinates log-uniform on [1/2, 2]; wider ranges put
        // genuine points within 1e-6 of a facet once n >= 4
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=5 {
            let w = lattice_points(n).unwrap();
            for (k, j) in label_pairs(n) {
                let label = FaceLabel::new(k, j).unwrap();
                for _ in 0..100 {
                    let x: Vec<f64> = (1..n)
                        .map(|i| if k.contains(i) { 0.0 } else if j.contains(i) { 2f64.powf(rng.random_range(-1.0..1.0)) } else { 1.0 })
                        .collect();
                    let y: Vec<f64> = (1..n).map(|i| if j.contains(i) { 1.0 } else { 0.0 }).collect();
                    let mu = w.moment_map(&fp(&x, &y)).unwrap();
                    assert!(in_open_face(&mu, &label, 1e-9, 1e-6), "n={n} {label} mu={mu:?}");
                }
            }
        }
    }

    #[test]
    fn closure_perturbation_converges() {
        let w = lattice_points(4).unwrap();
        for (k, j) in label_pairs(4) {
            let x: Vec<f64> = (1..4).map(|i| if k.contains(i) { 0.0 } else { 1.0 + i as f64 / 3.0 }).collect();
            let y: Vec<f64> = (1..4).map(|i| if j.contains(i) { 1.0 } else { 0.0 }).collect();
            let base = w.moment_map(&fp(&x, &y)).unwrap();
            let mut prev = f64::INFINITY;
            for e in 2..=6 {
                let eps = 10f64.powi(-e);
                let xe: Vec<f64> = x.iter().map(|&v| if v == 0.0 { eps } else { v }).collect();
                let ye: Vec<f64> = y.iter().map(|&v| if v == 0.0 { eps } else { v }).collect();
                let p = fp(&xe, &ye);
                assert_eq!(stratum_of(&p, 1e-9).unwrap(), FaceLabel::new(SubsetJ::empty(4), SubsetJ::full(4)).unwrap());
                let mu = w.moment_map(&p).unwrap();
                let err = mu.iter().zip(&base).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(err <= prev, "K={k} J={j} eps={eps}");
                prev = err;
            }
            assert!(prev < 1e-4);
        }
    }

    #[test]
    fn toric_json_round_trip() {
        let p = ToricPoint::new(vec![rat(3, 2), int(0)], vec![int(1), int(1)]).unwrap();
        let v = p.to_json();
        assert_eq!(v, serde_json::json!({"x": ["3/2", "0"], "y": ["1", "1"], "mode": "exact"}));
        assert_eq!(AnyToricPoint::from_json(&v).unwrap(), AnyToricPoint::Exact(p));
        let f = fp(&[0.5], &[2.0]).to_json();
        assert_eq!(f["mode"], "float");
        assert!(matches!(AnyToricPoint::from_json(&f).unwrap(), AnyToricPoint::Float(_)));
    }
}
