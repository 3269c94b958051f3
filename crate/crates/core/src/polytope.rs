//! The lattice polytope `P_{n-1}`, its faces `F_{K,J}`, the cube faces
//! `E_{K,J}`, and a face-preserving homeomorphism `f: P_{n-1} -> [0,1]^{n-1}`.
//!
//! `f` is built from barycentric flags: a point is written as a convex
//! combination of face barycenters along a strictly decreasing chain of
//! faces, and the same weights are applied to the barycenters of the
//! matching cube faces.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::neg_coroot_pairing;
use crate::linalg::{combinations, Matrix};
use crate::scalar::{format_rational, int, rat, rationalize, Rational, Scalar};
use crate::weyl::{connected_components, label_pairs, SubsetJ};

/// `v_J = Σ_{components {a..b}} Σ_{i=a}^{b} (i+1-a)(b+1-i) e_i`.
pub fn vertex_vj(j: &SubsetJ) -> Vec<i64> {
    let mut v = vec![0i64; j.n() - 1];
    for comp in connected_components(j) {
        let (a, b) = (comp.start as i64, comp.end as i64);
        for i in comp.start..=comp.end {
            let ii = i as i64;
            v[i - 1] = (ii + 1 - a) * (b + 1 - ii);
        }
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Facet {
    /// `F_i^- : ⟨e_i, x⟩ = 0`.
    Minus(usize),
    /// `F_i^+ : ⟨-α^∨_i, x⟩ = -2`.
    Plus(usize),
}

/// Half-space `⟨normal, x⟩ >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub facet: Facet,
    pub normal: Vec<i64>,
    pub rhs: i64,
}

impl Inequality {
    pub fn new(facet: Facet, n: usize) -> Self {
        let mut normal = vec![0i64; n - 1];
        let rhs = match facet {
            Facet::Minus(i) => {
                normal[i - 1] = 1;
                0
            }
            Facet::Plus(i) => {
                normal[i - 1] = -2;
                if i >= 2 {
                    normal[i - 2] = 1;
                }
                if i < n - 1 {
                    normal[i] = 1;
                }
                -2
            }
        };
        Inequality { facet, normal, rhs }
    }

    /// `⟨normal, x⟩ - rhs`; nonnegative on the polytope.
    pub fn slack<T: Scalar>(&self, x: &[T]) -> T {
        let dot = self
            .normal
            .iter()
            .zip(x)
            .filter(|(a, _)| **a != 0)
            .fold(T::zero(), |acc, (&a, xi)| acc + T::from_int(a) * xi.clone());
        dot - T::from_int(self.rhs)
    }
}

impl Serialize for Inequality {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Inequality", 2)?;
        st.serialize_field("normal", &self.normal)?;
        st.serialize_field("rhs", &format_rational(&int(self.rhs)))?;
        st.end()
    }
}

/// A face label `F_{K,J}` (or `E_{K,J}` on the cube side), `K ⊆ J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceLabel {
    pub k: SubsetJ,
    pub j: SubsetJ,
}

impl FaceLabel {
    pub fn new(k: SubsetJ, j: SubsetJ) -> Result<Self> {
        if k.n() != j.n() || !k.is_subset(&j) {
            return Err(Error::Label(format!("face label needs K ⊆ J, got K = {k}, J = {j}")));
        }
        Ok(FaceLabel { k, j })
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    /// `|J| - |K|`.
    pub fn dim(&self) -> usize {
        self.j.len() - self.k.len()
    }

    /// `F_{K,J} ⊆ F_{K',J'}` iff `K' ⊆ K ⊆ J ⊆ J'`.
    pub fn is_subface_of(&self, other: &FaceLabel) -> bool {
        other.k.is_subset(&self.k) && self.j.is_subset(&other.j)
    }

    /// Facets cutting out the face: `F_i^+` for `i ∈ K`, `F_i^-` for `i ∉ J`.
    pub fn facets(&self) -> Vec<Facet> {
        let mut out: Vec<Facet> = self.k.iter().map(Facet::Plus).collect();
        out.extend(self.j.complement().iter().map(Facet::Minus));
        out
    }
}

impl std::fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(K={}, J={})", self.k, self.j)
    }
}

impl Serialize for FaceLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FaceLabel", 2)?;
        st.serialize_field("K", &self.k)?;
        st.serialize_field("J", &self.j)?;
        st.end()
    }
}

/// Vertex labels `{J' : K ⊆ J' ⊆ J}` of `F_{K,J}`.
pub fn face_vertex_labels(k: &SubsetJ, j: &SubsetJ) -> Vec<SubsetJ> {
    k.between(j)
}

/// Vertices of `F_{K,J}`.
pub fn face_vertices(k: &SubsetJ, j: &SubsetJ) -> Result<Vec<Vec<i64>>> {
    FaceLabel::new(*k, *j)?;
    Ok(face_vertex_labels(k, j).iter().map(vertex_vj).collect())
}

/// Vertices of the cube face `E_{K,J}`: `x_i = 0` on `K`, `1` off `J`,
/// anything in `{0,1}` otherwise.
pub fn cube_face_vertices(face: &FaceLabel) -> Vec<Vec<i64>> {
    let n = face.n();
    let free: Vec<usize> = face.j.difference(&face.k).members();
    (0u32..(1 << free.len()))
        .map(|bits| {
            (1..n)
                .map(|i| {
                    if face.k.contains(i) {
                        0
                    } else if !face.j.contains(i) {
                        1
                    } else {
                        let pos = free.iter().position(|&f| f == i).expect("free index");
                        i64::from(bits & (1 << pos) != 0)
                    }
                })
                .collect()
        })
        .collect()
}

/// Barycenter of `E_{K,J}`: `0` on `K`, `1` off `J`, `1/2` otherwise.
pub fn cube_barycenter(face: &FaceLabel) -> Vec<Rational> {
    (1..face.n())
        .map(|i| {
            if face.k.contains(i) {
                Rational::zero()
            } else if !face.j.contains(i) {
                Rational::one()
            } else {
                rat(1, 2)
            }
        })
        .collect()
}

/// Pattern test for `Int E_{K,J}`: coordinates within `tol` of 0 on `K`,
/// of 1 off `J`, and at least `margin` inside `(0,1)` otherwise. Exact
/// scalars ignore `tol` and `margin`.
pub fn cube_interior_member_margin<T: Scalar>(x: &[T], k: &SubsetJ, j: &SubsetJ, tol: f64, margin: f64) -> bool {
    if x.len() + 1 != j.n() {
        return false;
    }
    x.iter().enumerate().all(|(idx, xi)| {
        let i = idx + 1;
        if T::EXACT {
            if k.contains(i) {
                xi.is_zero()
            } else if !j.contains(i) {
                xi.is_one()
            } else {
                *xi > T::zero() && *xi < T::one()
            }
        } else {
            let v = xi.to_f64();
            if k.contains(i) {
                v.abs() <= tol
            } else if !j.contains(i) {
                (v - 1.0).abs() <= tol
            } else {
                v > margin && v < 1.0 - margin
            }
        }
    })
}

pub fn cube_interior_member<T: Scalar>(x: &[T], k: &SubsetJ, j: &SubsetJ, tol: f64) -> bool {
    cube_interior_member_margin(x, k, j, tol, tol)
}

/// A strictly decreasing chain of faces with convex weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlagChain {
    pub faces: Vec<FaceLabel>,
    #[serde(serialize_with = "crate::json::ser_rationals")]
    pub weights: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct PolytopeModel {
    n: usize,
    /// Indexed by the mask of `J`.
    vertices: Vec<Vec<i64>>,
    inequalities: Vec<Inequality>,
    barycenters: HashMap<FaceLabel, Vec<Rational>>,
}

impl Serialize for PolytopeModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Vertices<'a>(&'a PolytopeModel);
        impl Serialize for Vertices<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.vertices.len()))?;
                for j in SubsetJ::all(self.0.n) {
                    let key = serde_json::to_string(&j).map_err(serde::ser::Error::custom)?;
                    m.serialize_entry(&key, self.0.vertex(&j))?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("PolytopeModel", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("vertices", &Vertices(self))?;
        st.serialize_field("inequalities", &self.inequalities)?;
        st.end()
    }
}

/// The model of `P_{n-1}`: vertices `v_J`, the `2(n-1)` facet inequalities,
/// and the barycenter of every face.
pub fn h_representation(n: usize) -> Result<PolytopeModel> {
    if n < 2 {
        return Err(Error::Size(format!("polytope needs n >= 2, got {n}")));
    }
    let vertices: Vec<Vec<i64>> = SubsetJ::all(n).iter().map(vertex_vj).collect();
    let mut inequalities = Vec::with_capacity(2 * (n - 1));
    for i in 1..n {
        inequalities.push(Inequality::new(Facet::Minus(i), n));
    }
    for i in 1..n {
        inequalities.push(Inequality::new(Facet::Plus(i), n));
    }
    let mut model = PolytopeModel { n, vertices, inequalities, barycenters: HashMap::new() };
    for (k, j) in label_pairs(n) {
        let face = FaceLabel { k, j };
        let b = model.mean_of_vertices(&face);
        model.barycenters.insert(face, b);
    }
    Ok(model)
}

impl PolytopeModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex(&self, j: &SubsetJ) -> &Vec<i64> {
        &self.vertices[j.mask() as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (SubsetJ, &Vec<i64>)> {
        SubsetJ::all(self.n).into_iter().map(move |j| (j, self.vertex(&j)))
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn inequality(&self, facet: Facet) -> &Inequality {
        let n1 = self.n - 1;
        match facet {
            Facet::Minus(i) => &self.inequalities[i - 1],
            Facet::Plus(i) => &self.inequalities[n1 + i - 1],
        }
    }

    pub fn faces(&self) -> Vec<FaceLabel> {
        label_pairs(self.n).into_iter().map(|(k, j)| FaceLabel { k, j }).collect()
    }

    fn mean_of_vertices(&self, face: &FaceLabel) -> Vec<Rational> {
        let labels = face_vertex_labels(&face.k, &face.j);
        let count = labels.len() as i64;
        let mut sum = vec![0i64; self.n - 1];
        for l in &labels {
            for (s, v) in sum.iter_mut().zip(self.vertex(l)) {
                *s += v;
            }
        }
        sum.into_iter().map(|s| rat(s, count)).collect()
    }

    /// Vertex barycenter of `F_{K,J}`.
    pub fn barycenter(&self, face: &FaceLabel) -> &Vec<Rational> {
        &self.barycenters[face]
    }

    pub fn is_feasible<T: Scalar>(&self, x: &[T]) -> bool {
        x.len() == self.n - 1 && self.inequalities.iter().all(|h| h.slack(x) >= T::zero())
    }

    /// Every vertex is feasible; the active constraints at each vertex have
    /// `v_J` as their unique solution; every basic feasible point is a vertex.
    pub fn validate_vh(&self) -> Result<()> {
        let n1 = self.n - 1;
        for (j, v) in self.vertices() {
            let vr: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
            if !self.is_feasible(&vr) {
                return Err(Error::Model(format!("v_{j} = {v:?} violates an inequality")));
            }
            let active: Vec<&Inequality> = self.inequalities.iter().filter(|h| h.slack(&vr).is_zero()).collect();
            if active.len() != n1 {
                return Err(Error::Model(format!("v_{j} lies on {} facets, expected {n1}", active.len())));
            }
            let sol = solve_equalities(&active).ok_or_else(|| Error::Model(format!("active system at v_{j} is singular")))?;
            if sol != vr {
                return Err(Error::Model(format!("active system at v_{j} solves to {sol:?}")));
            }
        }
        let known: Vec<Vec<Rational>> = self.vertices.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        for subset in combinations(2 * n1, n1) {
            let rows: Vec<&Inequality> = subset.iter().map(|&s| &self.inequalities[s]).collect();
            let Some(p) = solve_equalities(&rows) else { continue };
            if self.is_feasible(&p) && !known.contains(&p) {
                return Err(Error::Model(format!("basic feasible point {p:?} is not a listed vertex")));
            }
        }
        Ok(())
    }

    /// `⟨-α^∨_i, v_J⟩ = -2 ⇔ i ∈ J` and `⟨e_i, v_J⟩ = 0 ⇔ i ∉ J`.
    pub fn check_facet_pattern(&self) -> Result<()> {
        for (j, v) in self.vertices() {
            for i in 1..self.n {
                let plus_tight = neg_coroot_pairing(v, i) == -2;
                let minus_tight = v[i - 1] == 0;
                if plus_tight != j.contains(i) || minus_tight == j.contains(i) {
                    return Err(Error::Model(format!("facet pattern fails at v_{j}, i = {i}")));
                }
            }
        }
        Ok(())
    }

    /// Vertices of `F_{K,J}` as cut out by the facet equalities, computed
    /// from the H-side rather than the label formula.
    pub fn face_vertices_by_facets(&self, face: &FaceLabel) -> Vec<SubsetJ> {
        let facets = face.facets();
        self.vertices()
            .filter(|(_, v)| {
                let vr: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
                facets.iter().all(|f| self.inequality(*f).slack(&vr).is_zero())
            })
            .map(|(j, _)| j)
            .collect()
    }

    /// `F_{K,J} ⊆ F_{K',J'} ⇔ E_{K,J} ⊆ E_{K',J'}`, with containment decided
    /// on vertex sets on both sides.
    pub fn check_poset_iso_pairs(&self, pairs: impl Iterator<Item = (FaceLabel, FaceLabel)>) -> Result<usize> {
        let mut poly: HashMap<FaceLabel, Vec<SubsetJ>> = HashMap::new();
        let mut cube: HashMap<FaceLabel, Vec<Vec<i64>>> = HashMap::new();
        for f in self.faces() {
            poly.insert(f, self.face_vertices_by_facets(&f));
            cube.insert(f, cube_face_vertices(&f));
        }
        let mut checked = 0;
        for (a, b) in pairs {
            let in_poly = poly[&a].iter().all(|v| poly[&b].contains(v));
            let in_cube = cube[&a].iter().all(|v| cube[&b].contains(v));
            if in_poly != in_cube || in_poly != a.is_subface_of(&b) {
                return Err(Error::Poset(format!("{a} vs {b}: polytope {in_poly}, cube {in_cube}")));
            }
            checked += 1;
        }
        Ok(checked)
    }

    pub fn check_poset_iso_exhaustive(&self) -> Result<usize> {
        let faces = self.faces();
        let pairs: Vec<(FaceLabel, FaceLabel)> =
            faces.iter().flat_map(|a| faces.iter().map(move |b| (*a, *b))).collect();
        self.check_poset_iso_pairs(pairs.into_iter())
    }

    /// Affine rank of the vertex set of each face equals `|J| - |K|`.
    pub fn check_face_dimensions(&self) -> Result<()> {
        for f in self.faces() {
            let labels = self.face_vertices_by_facets(&f);
            let base = self.vertex(&labels[0]);
            let diffs: Vec<Vec<Rational>> = labels[1..]
                .iter()
                .map(|l| self.vertex(l).iter().zip(base).map(|(a, b)| int(a - b)).collect())
                .collect();
            let rank = if diffs.is_empty() { 0 } else { Matrix::from_rows(diffs)?.rank() };
            if rank != f.dim() || labels.len() != 1 << f.dim() {
                return Err(Error::Model(format!("face {f} has affine rank {rank}, expected {}", f.dim())));
            }
        }
        Ok(())
    }

    /// Each vertex lies on exactly `n-1` facets, and no vertex lies on both
    /// `F_i^+` and `F_i^-`.
    pub fn check_simple(&self) -> Result<()> {
        for (j, v) in self.vertices() {
            let vr: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
            let tight: Vec<Facet> = self.inequalities.iter().filter(|h| h.slack(&vr).is_zero()).map(|h| h.facet).collect();
            if tight.len() != self.n - 1 {
                return Err(Error::Model(format!("v_{j} lies on {} facets", tight.len())));
            }
            for i in 1..self.n {
                if tight.contains(&Facet::Plus(i)) && tight.contains(&Facet::Minus(i)) {
                    return Err(Error::Model(format!("F_{i}^+ and F_{i}^- meet at v_{j}")));
                }
            }
        }
        Ok(())
    }

    /// Vertices minimizing `⟨w, ·⟩`.
    pub fn argmin_vertices(&self, w: &[Rational]) -> Vec<SubsetJ> {
        let values: Vec<(SubsetJ, Rational)> = self
            .vertices()
            .map(|(j, v)| (j, v.iter().zip(w).fold(Rational::zero(), |acc, (&a, b)| acc + int(a) * b)))
            .collect();
        let min = values.iter().map(|(_, x)| x.clone()).min().expect("nonempty");
        values.into_iter().filter(|(_, x)| *x == min).map(|(j, _)| j).collect()
    }

    /// The face containing `p` in its relative interior.
    pub fn carrier_face(&self, p: &[Rational]) -> Result<FaceLabel> {
        if !self.is_feasible(p) {
            return Err(Error::Outside(format_point(p)));
        }
        let mut k = Vec::new();
        let mut j = Vec::new();
        for i in 1..self.n {
            if self.inequality(Facet::Plus(i)).slack(p).is_zero() {
                k.push(i);
            }
            if !self.inequality(Facet::Minus(i)).slack(p).is_zero() {
                j.push(i);
            }
        }
        FaceLabel::new(SubsetJ::new(self.n, &k)?, SubsetJ::new(self.n, &j)?)
    }

    /// Writes `p` as `Σ λ_k · barycenter(F_k)` over a strictly decreasing
    /// chain `F_0 ⊋ F_1 ⊋ ⋯` starting at the carrier of `p`.
    pub fn barycentric_flag(&self, p: &[Rational]) -> Result<FlagChain> {
        let mut faces = Vec::new();
        let mut weights = Vec::new();
        let mut remaining = Rational::one();
        let mut cur: Vec<Rational> = p.to_vec();
        loop {
            let face = self.carrier_face(&cur)?;
            let c0 = self.barycenter(&face);
            faces.push(face);
            if cur == *c0 {
                weights.push(remaining);
                break;
            }
            // exit scale along c0 -> cur through the non-active facets
            let mut s_min: Option<Rational> = None;
            for h in &self.inequalities {
                let active = match h.facet {
                    Facet::Plus(i) => face.k.contains(i),
                    Facet::Minus(i) => !face.j.contains(i),
                };
                if active {
                    continue;
                }
                let g0 = h.slack(c0);
                let g1 = h.slack(&cur);
                if g1 < g0 {
                    let s = g0.clone() / (g0 - g1);
                    if s_min.as_ref().is_none_or(|m| s < *m) {
                        s_min = Some(s);
                    }
                }
            }
            let s = s_min.ok_or_else(|| Error::Model(format!("ray from the barycenter of {face} never exits")))?;
            let inv = s.recip();
            let q: Vec<Rational> = c0.iter().zip(&cur).map(|(c, x)| c.clone() + s.clone() * (x.clone() - c.clone())).collect();
            weights.push(remaining.clone() * (Rational::one() - inv.clone()));
            remaining *= inv;
            cur = q;
        }
        Ok(FlagChain { faces, weights })
    }

    /// `f(p) = Σ λ_k · barycenter(E_{K_k,J_k})` over the flag of `p`.
    pub fn cube_homeo(&self, p: &[Rational]) -> Result<Vec<Rational>> {
        let flag = self.barycentric_flag(p)?;
        let mut out = vec![Rational::zero(); self.n - 1];
        for (face, w) in flag.faces.iter().zip(&flag.weights) {
            for (o, b) in out.iter_mut().zip(cube_barycenter(face)) {
                *o += w.clone() * b;
            }
        }
        Ok(out)
    }

    /// Snaps a floating point onto its carrier face within `tol` and returns
    /// the exact snapped point.
    pub fn snap(&self, p: &[f64], tol: f64) -> Result<Vec<Rational>> {
        let n1 = self.n - 1;
        if p.len() != n1 || p.iter().any(|x| !x.is_finite()) {
            return Err(Error::Outside(format!("{p:?}")));
        }
        if self.inequalities.iter().any(|h| h.slack(p) < -tol) {
            return Err(Error::Outside(format!("{p:?}")));
        }
        let k: Vec<usize> = (1..self.n).filter(|&i| self.inequality(Facet::Plus(i)).slack(p).abs() <= tol).collect();
        let off_j: Vec<usize> = (1..self.n).filter(|&i| p[i - 1].abs() <= tol).collect();
        if let Some(i) = k.iter().find(|i| off_j.contains(i)) {
            return Err(Error::Outside(format!("{p:?} is within {tol} of both F_{i}^+ and F_{i}^-")));
        }
        let mut x: Vec<Rational> = p.iter().map(|&v| rationalize(v, 1e-12)).collect();
        for &i in &off_j {
            x[i - 1] = Rational::zero();
        }
        if !k.is_empty() {
            // -2 x_i + x_{i-1} + x_{i+1} = -2 for i ∈ K, unknowns x_i (i ∈ K)
            let m = Matrix::from_fn(k.len(), k.len(), |r, c| {
                if r == c {
                    int(-2)
                } else if k[r].abs_diff(k[c]) == 1 {
                    int(1)
                } else {
                    int(0)
                }
            });
            let rhs: Vec<Rational> = k
                .iter()
                .map(|&i| {
                    let mut r = int(-2);
                    for nb in [i.wrapping_sub(1), i + 1] {
                        if (1..self.n).contains(&nb) && !k.contains(&nb) {
                            r -= x[nb - 1].clone();
                        }
                    }
                    r
                })
                .collect();
            let sol = m.solve(&rhs).ok_or(Error::Singular)?;
            for (&i, v) in k.iter().zip(sol) {
                x[i - 1] = v;
            }
        }
        if !self.is_feasible(&x) {
            return Err(Error::Outside(format!("{p:?} leaves the polytope after snapping")));
        }
        Ok(x)
    }

    /// `f` on a floating point, via [`PolytopeModel::snap`].
    pub fn cube_homeo_f64(&self, p: &[f64], tol: f64) -> Result<Vec<f64>> {
        let x = self.snap(p, tol)?;
        Ok(self.cube_homeo(&x)?.iter().map(Scalar::to_f64).collect())
    }

    /// Edges of the polytope as vertex-label pairs.
    pub fn edges(&self) -> Vec<(SubsetJ, SubsetJ)> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim() == 1)
            .map(|f| {
                let v = face_vertex_labels(&f.k, &f.j);
                (v[0], v[1])
            })
            .collect()
    }
}

/// Solves `⟨normal, x⟩ = rhs` over the given rows when the system is square
/// and nonsingular.
fn solve_equalities(rows: &[&Inequality]) -> Option<Vec<Rational>> {
    let m = Matrix::from_rows(rows.iter().map(|h| h.normal.iter().map(|&a| int(a)).collect()).collect()).ok()?;
    if !m.is_square() {
        return None;
    }
    let b: Vec<Rational> = rows.iter().map(|h| int(h.rhs)).collect();
    m.solve(&b)
}

fn format_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// A relative-interior point of `F_{K,J}`: a convex combination of its
/// vertices with the given positive weights.
pub fn face_point(model: &PolytopeModel, face: &FaceLabel, weights: &[Rational]) -> Result<Vec<Rational>> {
    let labels = face_vertex_labels(&face.k, &face.j);
    if weights.len() != labels.len() || weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::Domain("need one positive weight per face vertex".into()));
    }
    let total: Rational = weights.iter().cloned().sum();
    let mut out = vec![Rational::zero(); model.n() - 1];
    for (l, w) in labels.iter().zip(weights) {
        for (o, &v) in out.iter_mut().zip(model.vertex(l)) {
            *o += w.clone() * int(v) / total.clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, m: &[usize]) -> SubsetJ {
        SubsetJ::new(n, m).unwrap()
    }

    fn r(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn vertex_examples() {
        assert_eq!(vertex_vj(&s(8, &[2, 3, 4, 5])), vec![0, 4, 6, 6, 4, 0, 0]);
        assert_eq!(vertex_vj(&s(8, &[3, 4, 5, 6])), vec![0, 0, 4, 6, 6, 4, 0]);
        assert_eq!(vertex_vj(&s(12, &[2, 3, 4, 5, 8, 9, 10])), vec![0, 4, 6, 6, 4, 0, 0, 3, 4, 3, 0]);
        assert_eq!(vertex_vj(&SubsetJ::empty(6)), vec![0; 5]);
    }

    #[test]
    fn small_polytopes() {
        let p2 = h_representation(3).unwrap();
        let mut verts: Vec<Vec<i64>> = p2.vertices().map(|(_, v)| v.clone()).collect();
        verts.sort();
        assert_eq!(verts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![2, 2]]);
        let p3 = h_representation(4).unwrap();
        assert_eq!(p3.vertex(&s(4, &[1, 2, 3])), &vec![3, 4, 3]);
        assert_eq!(p3.vertex(&s(4, &[2, 3])), &vec![0, 2, 2]);
        assert_eq!(p3.vertex(&s(4, &[1, 2])), &vec![2, 2, 0]);
        let p1 = h_representation(2).unwrap();
        assert_eq!(p1.vertex(&s(2, &[1])), &vec![1]);
        assert!(p1.is_feasible(&[rat(1, 2)]));
        assert!(!p1.is_feasible(&[rat(3, 2)]));
    }

    #[test]
    fn vh_agreement_and_lemmas() {
        for n in 2..=6 {
            let m = h_representation(n).unwrap();
            m.validate_vh().unwrap();
            m.check_facet_pattern().unwrap();
            m.check_simple().unwrap();
            m.check_face_dimensions().unwrap();
        }
    }

    #[test]
    fn face_vertex_examples() {
        let got = face_vertices(&s(4, &[1]), &s(4, &[1, 2])).unwrap();
        assert_eq!(got, vec![vertex_vj(&s(4, &[1])), vertex_vj(&s(4, &[1, 2]))]);
        let j = s(4, &[1, 3]);
        assert_eq!(face_vertices(&j, &j).unwrap(), vec![vertex_vj(&j)]);
        assert_eq!(face_vertices(&SubsetJ::empty(4), &SubsetJ::full(4)).unwrap().len(), 8);
        assert!(face_vertices(&s(4, &[2]), &s(4, &[1])).is_err());
    }

    #[test]
    fn poset_iso_small() {
        assert_eq!(h_representation(3).unwrap().check_poset_iso_exhaustive().unwrap(), 81);
        h_representation(4).unwrap().check_poset_iso_exhaustive().unwrap();
    }

    #[test]
    fn cube_faces() {
        let whole = FaceLabel::new(SubsetJ::empty(4), SubsetJ::full(4)).unwrap();
        assert_eq!(cube_face_vertices(&whole).len(), 8);
        let j = s(4, &[2]);
        let vertex = FaceLabel::new(j, j).unwrap();
        assert_eq!(cube_face_vertices(&vertex), vec![vec![1, 0, 1]]);
    }

    #[test]
    fn carrier_examples() {
        let m = h_representation(3).unwrap();
        for (j, v) in m.vertices() {
            let vr: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
            assert_eq!(m.carrier_face(&vr).unwrap(), FaceLabel::new(j, j).unwrap());
        }
        let whole = FaceLabel::new(SubsetJ::empty(3), SubsetJ::full(3)).unwrap();
        assert_eq!(m.carrier_face(m.barycenter(&whole)).unwrap(), whole);
        let edge = m.carrier_face(&r(&[(3, 2), (1, 1)])).unwrap();
        assert_eq!(edge, FaceLabel::new(s(3, &[1]), s(3, &[1, 2])).unwrap());
        assert!(matches!(m.carrier_face(&r(&[(-1, 1), (0, 1)])), Err(Error::Outside(_))));
    }

    #[test]
    fn flag_examples() {
        let m = h_representation(2).unwrap();
        let flag = m.barycentric_flag(&r(&[(1, 4)])).unwrap();
        let whole = FaceLabel::new(SubsetJ::empty(2), SubsetJ::full(2)).unwrap();
        let origin = FaceLabel::new(SubsetJ::empty(2), SubsetJ::empty(2)).unwrap();
        assert_eq!(flag.faces, vec![whole, origin]);
        assert_eq!(flag.weights, vec![rat(1, 2), rat(1, 2)]);
        let m = h_representation(4).unwrap();
        let whole = FaceLabel::new(SubsetJ::empty(4), SubsetJ::full(4)).unwrap();
        let flag = m.barycentric_flag(m.barycenter(&whole)).unwrap();
        assert_eq!(flag.weights, vec![int(1)]);
        let j = s(4, &[1, 3]);
        let vr: Vec<Rational> = m.vertex(&j).iter().map(|&x| int(x)).collect();
        let flag = m.barycentric_flag(&vr).unwrap();
        assert_eq!(flag.faces, vec![FaceLabel::new(j, j).unwrap()]);
    }

    #[test]
    fn flag_reconstructs_point() {
        let m = h_representation(4).unwrap();
        let p = r(&[(1, 3), (7, 5), (1, 2)]);
        let flag = m.barycentric_flag(&p).unwrap();
        let mut back = vec![Rational::zero(); 3];
        for (f, w) in flag.faces.iter().zip(&flag.weights) {
            for (b, c) in back.iter_mut().zip(m.barycenter(f)) {
                *b += w.clone() * c.clone();
            }
        }
        assert_eq!(back, p);
        assert_eq!(flag.weights.iter().cloned().sum::<Rational>(), int(1));
        for pair in flag.faces.windows(2) {
            assert!(pair[1].is_subface_of(&pair[0]) && pair[1] != pair[0]);
        }
    }

    #[test]
    fn cube_homeo_examples() {
        for n in 2..=4 {
            let m = h_representation(n).unwrap();
            for (j, v) in m.vertices() {
                let vr: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
                let expected: Vec<Rational> = j.complement().indicator().into_iter().map(int).collect();
                assert_eq!(m.cube_homeo(&vr).unwrap(), expected);
            }
            let whole = FaceLabel::new(SubsetJ::empty(n), SubsetJ::full(n)).unwrap();
            assert_eq!(m.cube_homeo(m.barycenter(&whole)).unwrap(), vec![rat(1, 2); n - 1]);
        }
    }

    #[test]
    fn cube_interior_examples() {
        let (k, j) = (s(4, &[1]), s(4, &[1, 2]));
        assert!(cube_interior_member(&r(&[(0, 1), (1, 2), (1, 1)]), &k, &j, 0.0));
        assert!(!cube_interior_member(&r(&[(0, 1), (0, 1), (1, 1)]), &k, &j, 0.0));
        assert!(cube_interior_member(&[1.0, 1.0, 1.0], &SubsetJ::empty(4), &SubsetJ::empty(4), 1e-9));
        assert!(cube_interior_member(&[1e-9, 0.5, 1.0], &k, &j, 1e-7));
    }

    #[test]
    fn snapping_lands_on_the_face() {
        let m = h_representation(4).unwrap();
        // a point on F_1^+ with tiny noise
        let p = [1.5 + 1e-11, 1.0, 0.25];
        let x = m.snap(&p, 1e-9).unwrap();
        assert!(m.inequality(Facet::Plus(1)).slack(&x).is_zero());
        assert_eq!(m.carrier_face(&x).unwrap(), FaceLabel::new(s(4, &[1]), SubsetJ::full(4)).unwrap());
        assert!(m.snap(&[-0.1, 0.0, 0.0], 1e-9).is_err());
        let f = m.cube_homeo_f64(&[0.0, 0.0, 0.0], 1e-9).unwrap();
        assert_eq!(f, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn polytope_json() {
        let json = serde_json::to_value(h_representation(3).unwrap()).unwrap();
        assert_eq!(json["vertices"]["[1,2]"], serde_json::json!([2, 2]));
        assert_eq!(json["inequalities"].as_array().unwrap().len(), 4);
        assert_eq!(json["inequalities"][2]["rhs"], "-2");
    }
}
