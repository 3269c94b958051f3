//! Type-A Weyl group combinatorics: subsets `J ⊆ [n-1]`, their block
//! partitions of `[n]`, permutations, reduced words and the pinned matrix
//! representatives `ẇ`.
//!
//! Mathematical labels (`i`, members of `J`, block entries) are 1-based.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Largest supported `n`; members are stored in a 32-bit mask.
pub const MAX_N: usize = 32;

/// A subset of `{1, .., n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetJ {
    n: usize,
    mask: u32,
}

impl fmt::Debug for SubsetJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl SubsetJ {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut mask = 0u32;
        for &i in members {
            if i == 0 || i >= n {
                return Err(Error::Label(format!("{i} is not in [1, {}]", n - 1)));
            }
            mask |= 1 << (i - 1);
        }
        Ok(SubsetJ { n, mask })
    }

    /// Bit `i-1` of `mask` encodes membership of `i`.
    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        check_n(n)?;
        if mask >> (n - 1) != 0 {
            return Err(Error::Label(format!("mask {mask:#b} has members beyond {}", n - 1)));
        }
        Ok(SubsetJ { n, mask })
    }

    pub fn empty(n: usize) -> Self {
        SubsetJ { n, mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        SubsetJ { n, mask: full_mask(n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n && self.mask & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(|&i| self.contains(i))
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &SubsetJ) -> bool {
        self.n == other.n && self.mask & !other.mask == 0
    }

    /// `[n-1] - self`.
    pub fn complement(&self) -> SubsetJ {
        SubsetJ { n: self.n, mask: !self.mask & full_mask(self.n) }
    }

    pub fn union(&self, other: &SubsetJ) -> SubsetJ {
        SubsetJ { n: self.n, mask: self.mask | other.mask }
    }

    pub fn intersection(&self, other: &SubsetJ) -> SubsetJ {
        SubsetJ { n: self.n, mask: self.mask & other.mask }
    }

    pub fn difference(&self, other: &SubsetJ) -> SubsetJ {
        SubsetJ { n: self.n, mask: self.mask & !other.mask }
    }

    /// 0/1 indicator vector of length `n-1`.
    pub fn indicator(&self) -> Vec<i64> {
        (1..self.n).map(|i| i64::from(self.contains(i))).collect()
    }

    /// All `2^{n-1}` subsets, ordered by mask.
    pub fn all(n: usize) -> Vec<SubsetJ> {
        (0..=full_mask(n)).map(|mask| SubsetJ { n, mask }).collect()
    }

    /// All subsets `S` with `self ⊆ S ⊆ upper`.
    pub fn between(&self, upper: &SubsetJ) -> Vec<SubsetJ> {
        let free = upper.mask & !self.mask;
        let mut out = Vec::with_capacity(1 << free.count_ones());
        let mut sub = free;
        loop {
            out.push(SubsetJ { n: self.n, mask: self.mask | sub });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        out.sort();
        out
    }
}

/// All `3^{n-1}` pairs `K ⊆ J ⊆ [n-1]`.
pub fn label_pairs(n: usize) -> Vec<(SubsetJ, SubsetJ)> {
    let mut out = Vec::new();
    for j in SubsetJ::all(n) {
        for k in SubsetJ::empty(n).between(&j) {
            out.push((k, j));
        }
    }
    out
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Size(format!("n must be in [2, {MAX_N}], got {n}")));
    }
    Ok(())
}

fn full_mask(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        (((1u64) << (n - 1)) - 1) as u32
    }
}

impl Serialize for SubsetJ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A contiguous run `start..=end` of integers (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }

    pub fn members(&self) -> Vec<usize> {
        (self.start..=self.end).collect()
    }
}

/// Maximal runs of consecutive members, in increasing order.
pub fn connected_components(j: &SubsetJ) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    for i in j.iter() {
        match out.last_mut() {
            Some(last) if last.end + 1 == i => last.end = i,
            _ => out.push(Interval { start: i, end: i }),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub n: usize,
    /// `J̄_k = J_k ∪ {max J_k + 1}` for each component `J_k`.
    pub blocks: Vec<Interval>,
    pub singletons: Vec<usize>,
}

impl BlockPartition {
    /// Index of the block containing `p`, if any.
    pub fn block_of(&self, p: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(p))
    }

    /// Whether 1-based rows/cols `r` and `c` share a diagonal block.
    pub fn same_block(&self, r: usize, c: usize) -> bool {
        r == c || matches!((self.block_of(r), self.block_of(c)), (Some(a), Some(b)) if a == b)
    }
}

impl Serialize for BlockPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let blocks: Vec<Vec<usize>> = self.blocks.iter().map(Interval::members).collect();
        let mut st = s.serialize_struct("BlockPartition", 2)?;
        st.serialize_field("blocks", &blocks)?;
        st.serialize_field("singletons", &self.singletons)?;
        st.end()
    }
}

pub fn jbar_partition(j: &SubsetJ) -> BlockPartition {
    let blocks: Vec<Interval> = connected_components(j)
        .into_iter()
        .map(|c| Interval { start: c.start, end: c.end + 1 })
        .collect();
    let singletons = (1..=j.n()).filter(|&p| !blocks.iter().any(|b| b.contains(p))).collect();
    BlockPartition { n: j.n(), blocks, singletons }
}

fn check_letter(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::Index(format!("simple reflection index {i} not in [1, {}]", n.saturating_sub(1))));
    }
    Ok(())
}

/// `x_i(t)`: identity plus `t` at `(i, i+1)`.
pub fn chevalley_x<T: Scalar>(i: usize, t: T, n: usize) -> Result<Matrix<T>> {
    check_letter(i, n)?;
    Ok(Matrix::identity(n).with_entry(i - 1, i, t))
}

/// `y_i(t)`: identity plus `t` at `(i+1, i)`.
pub fn chevalley_y<T: Scalar>(i: usize, t: T, n: usize) -> Result<Matrix<T>> {
    check_letter(i, n)?;
    Ok(Matrix::identity(n).with_entry(i, i - 1, t))
}

/// `ṡ_i = y_i(-1) x_i(1) y_i(-1)`, the block `[[0,1],[-1,0]]` at `{i, i+1}`.
pub fn simple_rep<T: Scalar>(i: usize, n: usize) -> Result<Matrix<T>> {
    check_letter(i, n)?;
    Ok(SignedPerm::identity(n).times_simple(i).to_matrix())
}

/// Signed permutation matrix: column `j` has the single entry `sign[j]` in
/// row `perm[j]` (0-based). Products of `ṡ_i` stay in this group, which
/// makes word evaluation cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), sign: vec![1; n] }
    }

    /// Right multiplication by `ṡ_i` (1-based `i`).
    pub fn times_simple(mut self, i: usize) -> Self {
        let (a, b) = (i - 1, i);
        let (pa, sa) = (self.perm[a], self.sign[a]);
        self.perm[a] = self.perm[b];
        self.sign[a] = -self.sign[b];
        self.perm[b] = pa;
        self.sign[b] = sa;
        self
    }

    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let n = self.perm.len();
        Matrix::from_fn(n, n, |r, c| {
            if self.perm[c] == r {
                T::from_int(i64::from(self.sign[c]))
            } else {
                T::zero()
            }
        })
    }

    /// Underlying permutation in one-line notation.
    pub fn permutation(&self) -> Permutation {
        Permutation(self.perm.iter().map(|&p| p + 1).collect())
    }
}

/// A word in the simple reflections `s_1, .., s_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(letters: Vec<usize>) -> Self {
        ReducedWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn permutation(&self, n: usize) -> Result<Permutation> {
        let mut w = Permutation::identity(n);
        for &i in &self.letters {
            check_letter(i, n)?;
            w = w.times_simple(i);
        }
        Ok(w)
    }

    /// True when the word length equals the Coxeter length of its product.
    pub fn is_reduced(&self, n: usize) -> Result<bool> {
        Ok(self.permutation(n)?.length() == self.len())
    }
}

/// `ṡ_{i_1} ṡ_{i_2} ⋯ ṡ_{i_m}`.
pub fn rep_of_word<T: Scalar>(word: &ReducedWord, n: usize) -> Result<Matrix<T>> {
    Ok(signed_rep_of_word(word, n)?.to_matrix())
}

pub fn signed_rep_of_word(word: &ReducedWord, n: usize) -> Result<SignedPerm> {
    let mut acc = SignedPerm::identity(n);
    for &i in &word.letters {
        check_letter(i, n)?;
        acc = acc.times_simple(i);
    }
    Ok(acc)
}

/// A permutation of `[n]` in one-line notation (`w(1), .., w(n)`, 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w · s_i`: swaps positions `i` and `i+1`.
    pub fn times_simple(mut self, i: usize) -> Self {
        self.0.swap(i - 1, i);
        self
    }

    /// Coxeter length, counted as inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count()).sum()
    }

    /// Right descents `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.0[i - 1] > self.0[i]).collect()
    }

    /// Every permutation of `[n]`, lexicographic.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// All reduced words, built from right descents. Exponential; meant for
    /// `n <= 4`.
    pub fn reduced_words(&self) -> Vec<ReducedWord> {
        let descents = self.descents();
        if descents.is_empty() {
            return vec![ReducedWord::new(Vec::new())];
        }
        let mut out = Vec::new();
        for i in descents {
            for mut w in self.clone().times_simple(i).reduced_words() {
                w.letters.push(i);
                out.push(w);
            }
        }
        out
    }

    /// One reduced word chosen by peeling uniformly random right descents.
    pub fn random_reduced_word<R: Rng + ?Sized>(&self, rng: &mut R) -> ReducedWord {
        let mut w = self.clone();
        let mut letters = Vec::with_capacity(w.length());
        loop {
            let d = w.descents();
            if d.is_empty() {
                break;
            }
            let i = d[rng.random_range(0..d.len())];
            letters.push(i);
            w = w.times_simple(i);
        }
        letters.reverse();
        ReducedWord::new(letters)
    }
}

/// `ẇ_0`: entry `(i, n+1-i)` is `(-1)^{i-1}`.
pub fn w0_rep<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |r, c| {
        if r + c == n - 1 {
            T::from_int(if r % 2 == 0 { 1 } else { -1 })
        } else {
            T::zero()
        }
    })
}

/// `ẇ_J`: block diagonal with `ẇ_0` of size `|J̄_k|` on each block `J̄_k`
/// and 1 on the singletons.
pub fn wj_rep<T: Scalar>(j: &SubsetJ) -> Matrix<T> {
    let part = jbar_partition(j);
    let n = j.n();
    Matrix::from_fn(n, n, |r, c| {
        let (r1, c1) = (r + 1, c + 1);
        match part.block_of(r1) {
            Some(b) => {
                let blk = part.blocks[b];
                if !blk.contains(c1) {
                    return T::zero();
                }
                let (lr, lc) = (r1 - blk.start, c1 - blk.start);
                if lr + lc == blk.len() - 1 {
                    T::from_int(if lr % 2 == 0 { 1 } else { -1 })
                } else {
                    T::zero()
                }
            }
            None if r == c => T::one(),
            None => T::zero(),
        }
    })
}

/// A reduced word for `w_J`: concatenation of the `w_0` words
/// `(a, a+1, a, a+2, a+1, a, ..)` of each component.
pub fn wj_word(j: &SubsetJ) -> ReducedWord {
    let mut letters = Vec::new();
    for comp in connected_components(j) {
        for top in comp.start..=comp.end {
            letters.extend((comp.start..=top).rev());
        }
    }
    ReducedWord::new(letters)
}

/// Zero outside the diagonal blocks of `jbar_partition(J)`.
pub fn is_j_block_diagonal<T: Scalar>(m: &Matrix<T>, j: &SubsetJ) -> bool {
    if !m.is_square() || m.rows() != j.n() {
        return false;
    }
    let part = jbar_partition(j);
    let n = m.rows();
    (0..n).all(|r| (0..n).all(|c| part.same_block(r + 1, c + 1) || m.get(r, c).is_zero()))
}

/// J-block diagonal, each block a lower-unitriangular Toeplitz matrix, and
/// 1 on the singleton diagonal entries.
pub fn is_j_toeplitz<T: Scalar>(m: &Matrix<T>, j: &SubsetJ) -> bool {
    if !is_j_block_diagonal(m, j) {
        return false;
    }
    let part = jbar_partition(j);
    if !part.singletons.iter().all(|&p| m.get(p - 1, p - 1).is_one()) {
        return false;
    }
    part.blocks.iter().all(|b| {
        let s = b.start - 1;
        let k = b.len();
        (0..k).all(|r| {
            (0..k).all(|c| {
                let v = m.get(s + r, s + c);
                if r < c {
                    v.is_zero()
                } else {
                    v == m.get(s + r - c, s)
                }
            })
        }) && m.get(s, s).is_one()
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::linalg::ExactMatrix;
    use crate::scalar::{int, rat, Rational};

    fn ints(rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn j10() -> SubsetJ {
        SubsetJ::new(10, &[1, 2, 4, 5, 6, 9]).unwrap()
    }

    #[test]
    fn chevalley_generators() {
        let t = rat(5, 3);
        let x1 = chevalley_x(1, t.clone(), 3).unwrap();
        assert_eq!(
            x1,
            Matrix::from_rows(vec![
                vec![int(1), t.clone(), int(0)],
                vec![int(0), int(1), int(0)],
                vec![int(0), int(0), int(1)],
            ])
            .unwrap()
        );
        let y2 = chevalley_y(2, t.clone(), 3).unwrap();
        assert_eq!(*y2.get(2, 1), t);
        assert_eq!(chevalley_x(2, int(0), 4).unwrap(), ExactMatrix::identity(4));
        assert!(chevalley_x(3, int(1), 3).is_err());
        assert!(chevalley_y::<Rational>(0, int(1), 3).is_err());
    }

    #[test]
    fn simple_reps() {
        let s1: ExactMatrix = simple_rep(1, 3).unwrap();
        assert_eq!(s1, ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 1]]));
        let s2: ExactMatrix = simple_rep(2, 3).unwrap();
        assert_eq!(s2, ints(&[&[1, 0, 0], &[0, 0, 1], &[0, -1, 0]]));
        assert_eq!(&s1 * &s1, ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
        // agrees with the defining product y_i(-1) x_i(1) y_i(-1)
        for n in 2..=5 {
            for i in 1..n {
                let y = chevalley_y(i, int(-1), n).unwrap();
                let x = chevalley_x(i, int(1), n).unwrap();
                assert_eq!(&(&y * &x) * &y, simple_rep(i, n).unwrap());
            }
        }
    }

    #[test]
    fn braid_and_commuting_relations() {
        let a: ExactMatrix = rep_of_word(&ReducedWord::new(vec![1, 2, 1]), 3).unwrap();
        let b: ExactMatrix = rep_of_word(&ReducedWord::new(vec![2, 1, 2]), 3).unwrap();
        assert_eq!(a, b);
        let a: ExactMatrix = rep_of_word(&ReducedWord::new(vec![1, 3]), 4).unwrap();
        let b: ExactMatrix = rep_of_word(&ReducedWord::new(vec![3, 1]), 4).unwrap();
        assert_eq!(a, b);
        let e: ExactMatrix = rep_of_word(&ReducedWord::new(vec![]), 4).unwrap();
        assert_eq!(e, ExactMatrix::identity(4));
    }

    #[test]
    fn w0_examples() {
        assert_eq!(w0_rep::<Rational>(2), ints(&[&[0, 1], &[-1, 0]]));
        assert_eq!(w0_rep::<Rational>(2), simple_rep(1, 2).unwrap());
        assert_eq!(w0_rep::<Rational>(3), ints(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]));
    }

    #[test]
    fn every_reduced_word_of_w0_gives_w0_rep() {
        for n in 2..=4 {
            let words = Permutation::longest(n).reduced_words();
            for w in &words {
                assert_eq!(rep_of_word::<Rational>(w, n).unwrap(), w0_rep(n));
            }
        }
        // n=5 by sampling
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w0 = Permutation::longest(5);
        for _ in 0..100 {
            let w = w0.random_reduced_word(&mut rng);
            assert_eq!(w.len(), 10);
            assert_eq!(rep_of_word::<Rational>(&w, 5).unwrap(), w0_rep(5));
        }
    }

    #[test]
    fn reduced_word_counts() {
        // Stanley: w_0 in S_3 has 2, in S_4 has 16 reduced words
        assert_eq!(Permutation::longest(3).reduced_words().len(), 2);
        assert_eq!(Permutation::longest(4).reduced_words().len(), 16);
        assert_eq!(Permutation::all(4).len(), 24);
        for w in Permutation::all(4) {
            for word in w.reduced_words() {
                assert!(word.is_reduced(4).unwrap());
                assert_eq!(word.permutation(4).unwrap(), w);
            }
        }
        assert!(!ReducedWord::new(vec![1, 1]).is_reduced(3).unwrap());
    }

    #[test]
    fn signed_perm_tracks_permutation() {
        let word = ReducedWord::new(vec![2, 1, 3, 2]);
        let sp = signed_rep_of_word(&word, 4).unwrap();
        assert_eq!(sp.permutation(), word.permutation(4).unwrap());
    }

    #[test]
    fn components_examples() {
        let comps = connected_components(&j10());
        let spans: Vec<(usize, usize)> = comps.iter().map(|c| (c.start, c.end)).collect();
        assert_eq!(spans, vec![(1, 2), (4, 6), (9, 9)]);
        assert!(connected_components(&SubsetJ::empty(5)).is_empty());
        let j = SubsetJ::new(8, &[2, 3, 4, 5]).unwrap();
        assert_eq!(connected_components(&j), vec![Interval { start: 2, end: 5 }]);
    }

    #[test]
    fn jbar_examples() {
        let part = jbar_partition(&j10());
        let blocks: Vec<Vec<usize>> = part.blocks.iter().map(Interval::members).collect();
        assert_eq!(blocks, vec![vec![1, 2, 3], vec![4, 5, 6, 7], vec![9, 10]]);
        assert_eq!(part.singletons, vec![8]);
        let part = jbar_partition(&SubsetJ::empty(3));
        assert!(part.blocks.is_empty());
        assert_eq!(part.singletons, vec![1, 2, 3]);
        let part = jbar_partition(&SubsetJ::full(5));
        assert_eq!(part.blocks, vec![Interval { start: 1, end: 5 }]);
        assert!(part.singletons.is_empty());
        let json = serde_json::to_string(&jbar_partition(&j10())).unwrap();
        assert_eq!(json, r#"{"blocks":[[1,2,3],[4,5,6,7],[9,10]],"singletons":[8]}"#);
    }

    #[test]
    fn jbar_partitions_cover_n() {
        for n in 2..=10 {
            for j in SubsetJ::all(n) {
                let part = jbar_partition(&j);
                let mut seen = vec![0usize; n + 1];
                for b in &part.blocks {
                    for p in b.members() {
                        seen[p] += 1;
                    }
                }
                for &p in &part.singletons {
                    seen[p] += 1;
                }
                assert!(seen[1..].iter().all(|&c| c == 1), "n={n} J={j}");
            }
        }
    }

    #[test]
    fn wj_example_n10() {
        let mut expected = ExactMatrix::zeros(10, 10);
        for (r, c, v) in [
            (1, 3, 1),
            (2, 2, -1),
            (3, 1, 1),
            (4, 7, 1),
            (5, 6, -1),
            (6, 5, 1),
            (7, 4, -1),
            (8, 8, 1),
            (9, 10, 1),
            (10, 9, -1),
        ] {
            expected = expected.with_entry(r - 1, c - 1, int(v));
        }
        assert_eq!(wj_rep::<Rational>(&j10()), expected);
        assert_eq!(wj_rep::<Rational>(&SubsetJ::empty(4)), ExactMatrix::identity(4));
        assert_eq!(wj_rep::<Rational>(&SubsetJ::full(5)), w0_rep(5));
    }

    #[test]
    fn wj_rep_matches_word_product() {
        for n in 2..=6 {
            for j in SubsetJ::all(n) {
                let word = wj_word(&j);
                assert!(word.is_reduced(n).unwrap());
                assert_eq!(rep_of_word::<Rational>(&word, n).unwrap(), wj_rep(&j), "n={n} J={j}");
            }
        }
    }

    #[test]
    fn wj_squares_to_signed_identity_blocks() {
        for n in 2..=6 {
            for j in SubsetJ::all(n) {
                let w: ExactMatrix = wj_rep(&j);
                let sq = &w * &w;
                let part = jbar_partition(&j);
                for r in 0..n {
                    for c in 0..n {
                        let v = sq.get(r, c);
                        if r != c {
                            assert_eq!(*v, int(0));
                            continue;
                        }
                        // a block of size k squares to (-1)^{k-1} I
                        let expected = match part.block_of(r + 1) {
                            Some(b) if part.blocks[b].len() % 2 == 0 => int(-1),
                            _ => int(1),
                        };
                        assert_eq!(*v, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn simple_rep_normalizes_torus() {
        let d = ExactMatrix::diagonal(&[rat(2, 1), rat(3, 1), rat(1, 6)]);
        for i in 1..3 {
            let s: ExactMatrix = simple_rep(i, 3).unwrap();
            let conj = &(&s.inverse().unwrap() * &d) * &s;
            let mut swapped: Vec<Rational> = (0..3).map(|k| d.get(k, k).clone()).collect();
            swapped.swap(i - 1, i);
            assert_eq!(conj, ExactMatrix::diagonal(&swapped));
        }
    }

    #[test]
    fn toeplitz_pattern_tests() {
        let j = j10();
        let (a, b, x, y, z, s) = (int(2), int(3), int(5), int(7), int(11), int(13));
        let mut m = ExactMatrix::identity(10);
        for (r, c, v) in [
            (2, 1, &a),
            (3, 2, &a),
            (3, 1, &b),
            (5, 4, &x),
            (6, 5, &x),
            (7, 6, &x),
            (6, 4, &y),
            (7, 5, &y),
            (7, 4, &z),
            (10, 9, &s),
        ] {
            m = m.with_entry(r - 1, c - 1, v.clone());
        }
        assert!(is_j_block_diagonal(&m, &j));
        assert!(is_j_toeplitz(&m, &j));
        let bridged = m.with_entry(3, 2, int(1));
        assert!(!is_j_block_diagonal(&bridged, &j));
        assert!(!is_j_toeplitz(&bridged, &j));
        let broken = m.with_entry(6, 5, int(4));
        assert!(is_j_block_diagonal(&broken, &j));
        assert!(!is_j_toeplitz(&broken, &j));
        for j in SubsetJ::all(4) {
            assert!(is_j_block_diagonal(&ExactMatrix::identity(4), &j));
            assert!(is_j_toeplitz(&ExactMatrix::identity(4), &j));
        }
    }

    #[test]
    fn subset_basics() {
        let j = SubsetJ::new(5, &[3, 1]).unwrap();
        assert_eq!(j.members(), vec![1, 3]);
        assert_eq!(j.complement().members(), vec![2, 4]);
        assert_eq!(serde_json::to_string(&j).unwrap(), "[1,3]");
        assert!(SubsetJ::new(5, &[5]).is_err());
        assert!(SubsetJ::new(5, &[0]).is_err());
        assert_eq!(SubsetJ::all(4).len(), 8);
        assert_eq!(label_pairs(4).len(), 27);
        let k = SubsetJ::new(5, &[1]).unwrap();
        assert_eq!(k.between(&j).len(), 2);
    }
}
