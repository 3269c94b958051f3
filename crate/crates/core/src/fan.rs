//! The complete simplicial fan Σ in `R^{n-1}`.
//!
//! Cones are `τ_{K,J} = cone({-α^∨_i : i ∈ K} ∪ {e_i : i ∉ J})` for
//! `K ⊆ J ⊆ [n-1]`. Maximal cones are those with `K = J`.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Matrix};
use crate::scalar::{int, Rational};
use crate::weyl::{label_pairs, SubsetJ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RayLabel {
    /// `-α^∨_i = e_{i-1} - 2e_i + e_{i+1}`.
    NegCoroot(usize),
    /// `e_i`.
    Standard(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    pub label: RayLabel,
    pub coords: Vec<i64>,
}

impl Ray {
    pub fn new(label: RayLabel, n: usize) -> Self {
        let mut coords = vec![0i64; n - 1];
        match label {
            RayLabel::NegCoroot(i) => {
                coords[i - 1] = -2;
                if i >= 2 {
                    coords[i - 2] = 1;
                }
                if i < n - 1 {
                    coords[i] = 1;
                }
            }
            RayLabel::Standard(i) => coords[i - 1] = 1,
        }
        Ray { label, coords }
    }
}

/// `⟨-α^∨_i, x⟩` for a vector indexed `1..n-1`.
pub fn neg_coroot_pairing<T>(x: &[T], i: usize) -> T
where
    T: Clone + Zero + std::ops::Sub<Output = T>,
{
    let mut v = T::zero() - x[i - 1].clone() - x[i - 1].clone();
    if i >= 2 {
        v = v + x[i - 2].clone();
    }
    if i < x.len() {
        v = v + x[i].clone();
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeTau {
    pub k: SubsetJ,
    pub j: SubsetJ,
    pub generators: Vec<Ray>,
}

impl Serialize for ConeTau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<&Vec<i64>> = self.generators.iter().map(|g| &g.coords).collect();
        let mut st = s.serialize_struct("ConeTau", 3)?;
        st.serialize_field("K", &self.k)?;
        st.serialize_field("J", &self.j)?;
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}

pub fn build_cone(k: &SubsetJ, j: &SubsetJ) -> Result<ConeTau> {
    if k.n() != j.n() {
        return Err(Error::Label(format!("K and J have different n ({} vs {})", k.n(), j.n())));
    }
    if !k.is_subset(j) {
        return Err(Error::Label(format!("K = {k} is not contained in J = {j}")));
    }
    let n = j.n();
    let mut generators: Vec<Ray> = k.iter().map(|i| Ray::new(RayLabel::NegCoroot(i), n)).collect();
    generators.extend(j.complement().iter().map(|i| Ray::new(RayLabel::Standard(i), n)));
    Ok(ConeTau { k: *k, j: *j, generators })
}

impl ConeTau {
    pub fn n(&self) -> usize {
        self.j.n()
    }

    /// `|K| + (n-1) - |J|`.
    pub fn dim(&self) -> usize {
        self.k.len() + (self.n() - 1) - self.j.len()
    }

    pub fn is_maximal(&self) -> bool {
        self.k == self.j
    }

    /// Generators as the columns of an `(n-1) x d` matrix; `None` for the
    /// zero cone.
    pub fn generator_matrix(&self) -> Option<ExactMatrix> {
        if self.generators.is_empty() {
            return None;
        }
        let d = self.generators.len();
        Some(Matrix::from_fn(self.n() - 1, d, |r, c| int(self.generators[c].coords[r])))
    }

    /// Errors unless the generator rank equals the generator count.
    pub fn check_simplicial(&self) -> Result<()> {
        let rank = self.generator_matrix().map_or(0, |m| m.rank());
        if rank != self.generators.len() || rank != self.dim() {
            return Err(Error::Simpliciality(format!(
                "tau_{{K={},J={}}} has {} generators but rank {rank}",
                self.k,
                self.j,
                self.generators.len()
            )));
        }
        Ok(())
    }

    /// Nonnegative coefficients expressing `v` in the generators, if any.
    pub fn coefficients(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let Some(g) = self.generator_matrix() else {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        };
        let c = g.solve(v)?;
        c.iter().all(|x| !x.is_negative()).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.n() - 1 && self.coefficients(v).is_some()
    }

    /// The face spanned by the generators kept by `keep`, relabelled:
    /// dropping `-α^∨_i` removes `i` from `K`, dropping `e_i` adds `i` to `J`.
    pub fn face(&self, keep: &[bool]) -> Result<ConeTau> {
        let n = self.n();
        let mut k = Vec::new();
        let mut j: Vec<usize> = self.j.members();
        for (g, &kept) in self.generators.iter().zip(keep) {
            match (g.label, kept) {
                (RayLabel::NegCoroot(i), true) => k.push(i),
                (RayLabel::Standard(i), false) => j.push(i),
                _ => {}
            }
        }
        build_cone(&SubsetJ::new(n, &k)?, &SubsetJ::new(n, &j)?)
    }
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a Rational>) -> num_bigint::BigInt {
    xs.fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()))
}

/// `L·m` with integer entries and `L > 0`.
fn integer_multiple(m: &ExactMatrix) -> Option<Vec<Vec<i128>>> {
    let l = Rational::from_integer(lcm_of_denominators(m.entries().iter()));
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| (x * &l).to_integer().to_i128()).collect())
        .collect()
}

/// `L·v` with integer entries and `L > 0`.
fn integer_vector(v: &[Rational]) -> Option<Vec<i128>> {
    let l = Rational::from_integer(lcm_of_denominators(v.iter()));
    v.iter().map(|x| (x * &l).to_integer().to_i128()).collect()
}

/// Whether `m w >= 0` entrywise; `None` on overflow.
fn signs_nonneg(m: &[Vec<i128>], w: &[i128]) -> Option<bool> {
    for row in m {
        let mut acc: i128 = 0;
        for (a, b) in row.iter().zip(w) {
            acc = acc.checked_add(a.checked_mul(*b)?)?;
        }
        if acc < 0 {
            return Some(false);
        }
    }
    Some(true)
}

pub fn cone_contains(c: &ConeTau, v: &[Rational]) -> bool {
    c.contains(v)
}

#[derive(Clone, Debug)]
pub struct FanSigma {
    n: usize,
    cones: Vec<ConeTau>,
    /// `(K, G_K^{-1}, L·G_K^{-1})` for each maximal cone `τ_{K,K}`, where
    /// `L > 0` clears the denominators of the inverse.
    maximal_inverses: Vec<(SubsetJ, ExactMatrix, Vec<Vec<i128>>)>,
}

impl Serialize for FanSigma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FanSigma", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("cones", &self.cones)?;
        st.end()
    }
}

pub fn enumerate_fan(n: usize) -> Result<FanSigma> {
    if n < 2 {
        return Err(Error::Size(format!("fan needs n >= 2, got {n}")));
    }
    let cones = label_pairs(n)
        .iter()
        .map(|(k, j)| build_cone(k, j))
        .collect::<Result<Vec<_>>>()?;
    let mut maximal_inverses = Vec::new();
    for c in cones.iter().filter(|c| c.is_maximal()) {
        let g = c.generator_matrix().ok_or_else(|| Error::Simpliciality("empty maximal cone".into()))?;
        let inv = g.inverse().map_err(|_| Error::Simpliciality(format!("tau_{{{},{}}} is singular", c.k, c.j)))?;
        let scaled = integer_multiple(&inv).ok_or_else(|| Error::Size("inverse entries overflow i128".into()))?;
        maximal_inverses.push((c.k, inv, scaled));
    }
    Ok(FanSigma { n, cones, maximal_inverses })
}

impl FanSigma {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cones(&self) -> &[ConeTau] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &ConeTau> {
        self.cones.iter().filter(|c| c.is_maximal())
    }

    pub fn cone(&self, k: &SubsetJ, j: &SubsetJ) -> Option<&ConeTau> {
        self.cones.iter().find(|c| c.k == *k && c.j == *j)
    }

    /// All maximal cones `τ_{K,K}` containing `v`, by `K`.
    pub fn locate(&self, v: &[Rational]) -> Result<Vec<SubsetJ>> {
        if v.len() != self.n - 1 {
            return Err(Error::Size(format!("expected a vector of length {}, got {}", self.n - 1, v.len())));
        }
        // Positive rescaling keeps cone membership, so test signs in integers
        // when they fit.
        let scaled_v = integer_vector(v);
        let hits: Vec<SubsetJ> = self
            .maximal_inverses
            .iter()
            .filter(|(_, inv, scaled)| match scaled_v.as_ref().and_then(|w| signs_nonneg(scaled, w)) {
                Some(ok) => ok,
                None => inv.mul_vec(v).expect("sizes match").iter().all(|c| !c.is_negative()),
            })
            .map(|(k, _, _)| *k)
            .collect();
        if hits.is_empty() {
            let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
            return Err(Error::Completeness(format!("({})", shown.join(", "))));
        }
        Ok(hits)
    }

    /// Whether some cone of Σ has both rays among its generators.
    pub fn pair_spans_cone(&self, a: RayLabel, b: RayLabel) -> bool {
        self.cones.iter().any(|c| {
            let labels: Vec<RayLabel> = c.generators.iter().map(|g| g.label).collect();
            labels.contains(&a) && labels.contains(&b)
        })
    }

    /// Rays of the fan, `-α^∨_1.. , e_1..`.
    pub fn rays(&self) -> Vec<Ray> {
        let mut out: Vec<Ray> = (1..self.n).map(|i| Ray::new(RayLabel::NegCoroot(i), self.n)).collect();
        out.extend((1..self.n).map(|i| Ray::new(RayLabel::Standard(i), self.n)));
        out
    }

    /// Every face of every cone is a cone of Σ with `K' ⊆ K`, `J ⊆ J'`.
    pub fn check_face_closure(&self) -> Result<()> {
        for c in &self.cones {
            let d = c.generators.len();
            for mask in 0u32..(1 << d) {
                let keep: Vec<bool> = (0..d).map(|b| mask & (1 << b) != 0).collect();
                let face = c.face(&keep)?;
                let expected: Vec<&Ray> = c.generators.iter().zip(&keep).filter(|(_, &k)| k).map(|(g, _)| g).collect();
                let mut got: Vec<&Ray> = face.generators.iter().collect();
                let mut want = expected.clone();
                got.sort_by_key(|g| g.label);
                want.sort_by_key(|g| g.label);
                if got != want || !face.k.is_subset(&c.k) || !c.j.is_subset(&face.j) || self.cone(&face.k, &face.j).is_none() {
                    return Err(Error::Model(format!("face of tau_{{{},{}}} is not a cone of the fan", c.k, c.j)));
                }
            }
        }
        Ok(())
    }
}

/// The `n-1` primitive collections `{-α^∨_i, e_i}`.
pub fn primitive_collections(n: usize) -> Vec<(RayLabel, RayLabel)> {
    (1..n).map(|i| (RayLabel::NegCoroot(i), RayLabel::Standard(i))).collect()
}
