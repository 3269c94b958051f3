//! Dense matrices, minors, the functions `Δ_i` and `q_i`, and the Whitney
//! total-nonnegativity test.
//!
//! Indices are 0-based throughout this module. Matrices are immutable values;
//! every operation returns a new matrix.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ExactMatrix = Matrix<Rational>;

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Size(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Size(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Size("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Copy with a single entry replaced.
    pub fn with_entry(&self, r: usize, c: usize, value: T) -> Self {
        let mut out = self.clone();
        out.data[r * self.cols + c] = value;
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Size(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * b.clone();
                }
                data.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::Index(format!("row {r} out of range for {} rows", self.rows)));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::Index(format!("column {c} out of range for {} columns", self.cols)));
        }
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Size("empty submatrix".into()));
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone()))
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Size(format!("determinant of non-square {}x{}", self.rows, self.cols)));
        }
        Ok(bareiss_det(self.data.clone(), self.rows))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Size(format!("inverse of non-square {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let w = 2 * n;
        let mut a: Vec<T> = Vec::with_capacity(n * w);
        for r in 0..n {
            a.extend(self.row(r).iter().cloned());
            a.extend((0..n).map(|c| if c == r { T::one() } else { T::zero() }));
        }
        for col in 0..n {
            let pivot = choose_pivot(&a, w, col, col, n).ok_or(Error::Singular)?;
            if pivot != col {
                for c in 0..w {
                    a.swap(pivot * w + c, col * w + c);
                }
            }
            let p = a[col * w + col].clone();
            for c in 0..w {
                a[col * w + c] = a[col * w + c].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col].clone();
                for c in 0..w {
                    let sub = factor.clone() * a[col * w + c].clone();
                    a[r * w + c] = a[r * w + c].clone() - sub;
                }
            }
        }
        Ok(Matrix::from_fn(n, n, |r, c| a[r * w + n + c].clone()))
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = row_echelon(self.data.clone(), self.rows, self.cols, self.cols);
        pivots.len()
    }

    /// Unique solution of `self · x = b` when `self` has full column rank and
    /// the system is consistent; `None` otherwise.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        if b.len() != self.rows {
            return None;
        }
        let w = self.cols + 1;
        let mut a = Vec::with_capacity(self.rows * w);
        for r in 0..self.rows {
            a.extend(self.row(r).iter().cloned());
            a.push(b[r].clone());
        }
        let (a, pivots) = row_echelon(a, self.rows, w, self.cols);
        if pivots.len() != self.cols {
            return None;
        }
        // rows past the pivots must be zero in the augmented column
        for r in pivots.len()..self.rows {
            if !a[r * w + self.cols].is_zero_tol(1e-12) {
                return None;
            }
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = a[r * w + self.cols].clone();
            for c in pc + 1..self.cols {
                acc = acc - a[r * w + c].clone() * x[c].clone();
            }
            x[pc] = acc / a[r * w + pc].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Size(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.matmul(rhs).expect("matrix dimension mismatch")
    }
}

fn choose_pivot<T: Scalar>(a: &[T], w: usize, col: usize, from: usize, to: usize) -> Option<usize> {
    if T::EXACT {
        (from..to).find(|&r| !a[r * w + col].is_zero())
    } else {
        let best = (from..to).max_by(|&x, &y| {
            a[x * w + col]
                .to_f64()
                .abs()
                .partial_cmp(&a[y * w + col].to_f64().abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[best * w + col].is_zero() {
            None
        } else {
            Some(best)
        }
    }
}

fn bareiss_det<T: Scalar>(mut a: Vec<T>, n: usize) -> T {
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n.saturating_sub(1) {
        let Some(p) = choose_pivot(&a, n, k, k, n) else {
            return T::zero();
        };
        if p != k {
            for c in 0..n {
                a.swap(p * n + c, k * n + c);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = pivot.clone() * a[i * n + j].clone() - lead.clone() * a[k * n + j].clone();
                a[i * n + j] = v / prev.clone();
            }
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Gaussian elimination on the first `pivot_cols` columns of a `rows x w`
/// buffer. Returns the reduced buffer and the pivot columns.
fn row_echelon<T: Scalar>(mut a: Vec<T>, rows: usize, w: usize, pivot_cols: usize) -> (Vec<T>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = choose_pivot(&a, w, col, r, rows) else {
            continue;
        };
        if !T::EXACT && a[p * w + col].to_f64().abs() < 1e-13 {
            continue;
        }
        if p != r {
            for c in 0..w {
                a.swap(p * w + c, r * w + c);
            }
        }
        let pivot = a[r * w + col].clone();
        for i in r + 1..rows {
            if a[i * w + col].is_zero() {
                continue;
            }
            let factor = a[i * w + col].clone() / pivot.clone();
            for c in col..w {
                let sub = factor.clone() * a[r * w + c].clone();
                a[i * w + c] = a[i * w + c].clone() - sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

/// Row and column selection of a minor. Both index sets are 0-based,
/// strictly increasing and of equal positive length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::Index(format!(
                "minor needs equal nonempty index sets, got {} rows and {} cols",
                rows.len(),
                cols.len()
            )));
        }
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&rows) || !increasing(&cols) {
            return Err(Error::Index("minor index sets must be strictly increasing".into()));
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

pub fn minor<T: Scalar>(m: &Matrix<T>, idx: &MinorIndex) -> Result<T> {
    m.submatrix(&idx.rows, &idx.cols)?.determinant()
}

fn require_square_at_least_2<T: Scalar>(m: &Matrix<T>) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Size(format!("expected a square matrix, got {}x{}", m.rows, m.cols)));
    }
    if m.rows < 2 {
        return Err(Error::Size(format!("expected n >= 2, got n = {}", m.rows)));
    }
    Ok(m.rows)
}

/// `Δ_i(M)`, the lower-right `(n-i) x (n-i)` minor, for `i = 1..n-1`.
pub fn delta_vector<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    let n = require_square_at_least_2(m)?;
    (1..n)
        .map(|i| {
            let idx: Vec<usize> = (i..n).collect();
            m.submatrix(&idx, &idx)?.determinant()
        })
        .collect()
}

/// Lower-left `(n-i) x (n-i)` minors (rows `i+1..n`, cols `1..n-i`, 1-based),
/// for `i = 1..n-1`. Equal to `delta_vector(M · ẇ_0)`.
pub fn lower_left_minors<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    let n = require_square_at_least_2(m)?;
    (1..n)
        .map(|i| {
            let rows: Vec<usize> = (i..n).collect();
            let cols: Vec<usize> = (0..n - i).collect();
            m.submatrix(&rows, &cols)?.determinant()
        })
        .collect()
}

/// Regular nilpotent `f`: ones on the first subdiagonal.
pub fn nilpotent_f<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |r, c| if r == c + 1 { T::one() } else { T::zero() })
}

/// `M^{-1} f M`.
pub fn ad_f<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::Size(format!("expected a square matrix, got {}x{}", m.rows, m.cols)));
    }
    let inv = m.inverse()?;
    inv.matmul(&nilpotent_f(m.rows))?.matmul(m)
}

/// `q_i(M) = -(M^{-1} f M)_{i,i+1}` for `i = 1..n-1`.
pub fn q_vector<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    let n = require_square_at_least_2(m)?;
    let conj = ad_f(m)?;
    Ok((0..n - 1).map(|i| -conj.get(i, i + 1).clone()).collect())
}

pub const DEFAULT_WHITNEY_BOUND: usize = 8;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            break;
        };
        cur[pos] += 1;
        for j in pos + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Smallest minor over all `Σ_k C(n,k)^2` minors, together with its index.
pub fn min_minor<T: Scalar>(m: &Matrix<T>) -> (T, MinorIndex) {
    let mut best: Option<(T, MinorIndex)> = None;
    for k in 1..=m.rows.min(m.cols) {
        let row_sets = combinations(m.rows, k);
        let col_sets = combinations(m.cols, k);
        for rs in &row_sets {
            for cs in &col_sets {
                let v = m.submatrix(rs, cs).and_then(|s| s.determinant()).expect("indices in range");
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, MinorIndex { rows: rs.clone(), cols: cs.clone() }));
                }
            }
        }
    }
    best.expect("matrix has at least one entry")
}

fn check_whitney_bound<T: Scalar>(m: &Matrix<T>, bound: usize) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Size(format!("expected a square matrix, got {}x{}", m.rows, m.cols)));
    }
    if m.rows > bound {
        return Err(Error::Size(format!(
            "n = {} exceeds the exhaustive-minor bound {bound}; pass a larger bound to force",
            m.rows
        )));
    }
    Ok(())
}

/// Whitney test: every minor of every size is `>= 0`.
pub fn is_totally_nonnegative<T: Scalar>(m: &Matrix<T>) -> Result<bool> {
    is_totally_nonnegative_bounded(m, DEFAULT_WHITNEY_BOUND)
}

pub fn is_totally_nonnegative_bounded<T: Scalar>(m: &Matrix<T>, bound: usize) -> Result<bool> {
    check_whitney_bound(m, bound)?;
    Ok(first_minor_below(m, &T::zero()).is_none())
}

/// Floating Whitney test accepting minors down to `-slack`.
pub fn is_totally_nonnegative_slack(m: &Matrix<f64>, slack: f64) -> Result<bool> {
    check_whitney_bound(m, DEFAULT_WHITNEY_BOUND)?;
    Ok(first_minor_below(m, &-slack).is_none())
}

fn first_minor_below<T: Scalar>(m: &Matrix<T>, floor: &T) -> Option<MinorIndex> {
    let n = m.rows;
    // entries first: cheap rejection of the common negative case
    for r in 0..n {
        for c in 0..n {
            if m.get(r, c) < floor {
                return Some(MinorIndex { rows: vec![r], cols: vec![c] });
            }
        }
    }
    for k in 2..=n {
        let sets = combinations(n, k);
        for rs in &sets {
            for cs in &sets {
                let v = m.submatrix(rs, cs).and_then(|s| s.determinant()).expect("indices in range");
                if v < *floor {
                    return Some(MinorIndex { rows: rs.clone(), cols: cs.clone() });
                }
            }
        }
    }
    None
}

/// A witness minor that is negative, if any.
pub fn negative_minor<T: Scalar>(m: &Matrix<T>) -> Option<MinorIndex> {
    first_minor_below(m, &T::zero())
}

pub fn is_unipotent_lower<T: Scalar>(m: &Matrix<T>) -> bool {
    m.is_square()
        && (0..m.rows).all(|r| {
            (0..m.cols).all(|c| match c.cmp(&r) {
                std::cmp::Ordering::Equal => m.get(r, c).is_one(),
                std::cmp::Ordering::Greater => m.get(r, c).is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
}

pub fn is_unipotent_upper<T: Scalar>(m: &Matrix<T>) -> bool {
    m.is_square() && is_unipotent_lower(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn ints(rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn w0_3() -> ExactMatrix {
        ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]])
    }

    #[test]
    fn minor_examples() {
        let id = ExactMatrix::identity(3);
        let idx = MinorIndex::new(vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(minor(&id, &idx).unwrap(), int(1));

        let m = ints(&[&[7, 2], &[3, 1]]);
        let idx = MinorIndex::new(vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(minor(&m, &idx).unwrap(), int(1));

        // Δ_3 of a 4x4 matrix is the (4,4) entry
        let g = ExactMatrix::from_fn(4, 4, |r, c| int((10 * (r + 1) + c + 1) as i64));
        let idx = MinorIndex::new(vec![3], vec![3]).unwrap();
        assert_eq!(minor(&g, &idx).unwrap(), int(44));
        assert_eq!(delta_vector(&g).unwrap()[2], int(44));
    }

    #[test]
    fn minor_index_errors() {
        assert!(MinorIndex::new(vec![], vec![]).is_err());
        assert!(MinorIndex::new(vec![1, 0], vec![0, 1]).is_err());
        assert!(MinorIndex::new(vec![0], vec![0, 1]).is_err());
        let idx = MinorIndex::new(vec![0, 3], vec![0, 1]).unwrap();
        assert!(matches!(minor(&ExactMatrix::identity(3), &idx), Err(Error::Index(_))));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = ints(&[&[2, -1, 0, 3], &[1, 0, 4, -2], &[0, 5, -1, 1], &[3, 1, 2, 0]]);
        // cofactor expansion written out independently
        fn cof(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|c| {
                    let sub: Vec<Vec<i64>> =
                        m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * m[0][c] * cof(&sub)
                })
                .sum()
        }
        let raw = vec![vec![2, -1, 0, 3], vec![1, 0, 4, -2], vec![0, 5, -1, 1], vec![3, 1, 2, 0]];
        assert_eq!(m.determinant().unwrap(), int(cof(&raw)));
        // a zero leading pivot needs a row swap
        let p = ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.determinant().unwrap(), int(-1));
        assert_eq!(ints(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
    }

    #[test]
    fn delta_vector_examples() {
        assert_eq!(delta_vector(&ExactMatrix::identity(4)).unwrap(), vec![int(1); 3]);
        let (a, b) = (int(3), int(5));
        let m = Matrix::from_rows(vec![
            vec![int(0), int(0), int(1)],
            vec![int(0), int(-1), a.clone()],
            vec![int(1), -a.clone(), b.clone()],
        ])
        .unwrap();
        assert_eq!(delta_vector(&m).unwrap(), vec![a.clone() * a - b.clone(), b]);
        assert_eq!(delta_vector(&w0_3()).unwrap(), vec![int(0), int(0)]);
        assert!(matches!(delta_vector(&ExactMatrix::identity(1)), Err(Error::Size(_))));
    }

    #[test]
    fn lower_left_examples() {
        assert_eq!(lower_left_minors(&ExactMatrix::identity(3)).unwrap(), vec![int(0), int(0)]);
        let (a, b) = (rat(3, 2), int(2));
        let x = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![a.clone(), int(1), int(0)],
            vec![b.clone(), a.clone(), int(1)],
        ])
        .unwrap();
        assert_eq!(lower_left_minors(&x).unwrap(), vec![a.clone() * a.clone() - b.clone(), b]);
        let x2 = Matrix::from_rows(vec![vec![int(1), int(0)], vec![a.clone(), int(1)]]).unwrap();
        assert_eq!(lower_left_minors(&x2).unwrap(), vec![a]);
    }

    #[test]
    fn ad_f_examples() {
        let f: ExactMatrix = nilpotent_f(3);
        assert_eq!(ad_f(&ExactMatrix::identity(3)).unwrap(), f);
        let conj = ad_f(&w0_3()).unwrap();
        assert_eq!(conj, ints(&[&[0, -1, 0], &[0, 0, -1], &[0, 0, 0]]));
        let t = rat(3, 7);
        let d = ExactMatrix::diagonal(&[t.clone(), t.recip()]);
        let conj = ad_f(&d).unwrap();
        assert_eq!(conj, ExactMatrix::from_fn(2, 2, |r, c| if (r, c) == (1, 0) { t.clone() * t.clone() } else { int(0) }));
        let singular = ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(ad_f(&singular), Err(Error::Singular));
    }

    #[test]
    fn q_vector_examples() {
        assert_eq!(q_vector(&ExactMatrix::identity(4)).unwrap(), vec![int(0); 3]);
        assert_eq!(q_vector(&w0_3()).unwrap(), vec![int(1), int(1)]);
        assert_eq!(q_vector(&ints(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
    }

    #[test]
    fn whitney_examples() {
        assert!(is_totally_nonnegative(&ExactMatrix::identity(4)).unwrap());
        assert!(!is_totally_nonnegative(&ints(&[&[1, 0], &[-1, 1]])).unwrap());
        // x_1(2) y_1(3)
        let m = ints(&[&[7, 2], &[3, 1]]);
        assert!(is_totally_nonnegative(&m).unwrap());
        assert!(matches!(is_totally_nonnegative(&ExactMatrix::identity(9)), Err(Error::Size(_))));
        assert!(is_totally_nonnegative_bounded(&ExactMatrix::identity(9), 9).unwrap());
        // all entries positive but det < 0
        let m = ints(&[&[1, 2], &[3, 1]]);
        assert!(!is_totally_nonnegative(&m).unwrap());
        assert_eq!(negative_minor(&m).unwrap().size(), 2);
    }

    #[test]
    fn minor_count_is_central_binomial() {
        // Σ_k C(n,k)^2 = C(2n,n) - 1
        for n in 1..=6usize {
            let total: usize = (1..=n).map(|k| combinations(n, k).len().pow(2)).sum();
            let central = combinations(2 * n, n).len();
            assert_eq!(total, central - 1);
        }
    }

    #[test]
    fn unipotent_checks() {
        let a = rat(5, 3);
        let lower = Matrix::from_rows(vec![vec![int(1), int(0)], vec![a, int(1)]]).unwrap();
        assert!(is_unipotent_lower(&lower));
        assert!(!is_unipotent_upper(&lower));
        assert!(is_unipotent_upper(&lower.transpose()));
        assert!(is_unipotent_lower(&ExactMatrix::identity(3)));
        let d = ExactMatrix::diagonal(&[int(2), rat(1, 2)]);
        assert!(!is_unipotent_lower(&d) && !is_unipotent_upper(&d));
    }

    #[test]
    fn inverse_and_solve() {
        let m = ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ExactMatrix::identity(3));
        let x = m.solve(&[int(1), int(2), int(3)]).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![int(1), int(2), int(3)]);
        // 3x2 consistent and inconsistent
        let tall = ints(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(tall.solve(&[int(1), int(2), int(3)]).unwrap(), vec![int(1), int(2)]);
        assert!(tall.solve(&[int(1), int(2), int(4)]).is_none());
        assert_eq!(tall.rank(), 2);
    }

    #[test]
    fn float_path_agrees_with_exact() {
        let m = ints(&[&[2, -1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let det = m.determinant().unwrap().to_f64();
        assert!((m.to_f64().determinant().unwrap() - det).abs() < 1e-12);
        assert!(is_totally_nonnegative_slack(&ints(&[&[7, 2], &[3, 1]]).to_f64(), 1e-9).unwrap());
    }
}
