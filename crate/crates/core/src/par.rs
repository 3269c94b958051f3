//! Data-parallel execution and deterministic per-task randomness.
//!
//! With the `parallel` feature (default) batch work runs on the rayon pool;
//! without it, or with [`Exec::Sequential`], the same closures run in order on
//! the calling thread. Results always come back in index order, so reports do
//! not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Parallel,
    Sequential,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// `(0..count).map(f)`, possibly in parallel; output order is by index.
pub fn map_indexed<T, F>(exec: Exec, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}

/// Like [`map_indexed`] over a slice.
pub fn map_slice<I, T, F>(exec: Exec, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for task `index` of a sweep at size `n` under the base `seed`.
pub fn task_rng(seed: u64, n: usize, index: u64) -> ChaCha8Rng {
    let h = splitmix(splitmix(splitmix(seed) ^ n as u64) ^ index);
    ChaCha8Rng::seed_from_u64(h)
}

/// Stable hash of a label, for deriving sub-seeds.
pub fn label_seed(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Rational `p/q` with `|p| <= num_max` and `1 <= q <= den_max`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, num_max: i64, den_max: i64) -> Rational {
    let p = rng.random_range(-num_max..=num_max);
    let q = rng.random_range(1..=den_max);
    crate::scalar::rat(p, q)
}

/// Nonnegative rational `p/q` with `0 <= p <= num_max`.
pub fn random_nonneg_rational<R: Rng + ?Sized>(rng: &mut R, num_max: i64, den_max: i64) -> Rational {
    let p = rng.random_range(0..=num_max);
    let q = rng.random_range(1..=den_max);
    crate::scalar::rat(p, q)
}
