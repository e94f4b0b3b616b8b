//! Counting and ranking helpers for subsets and permutations.
//!
//! Subsets are ranked in lexicographic order of their ascending element
//! lists; permutations of a `k`-set are ranked lexicographically, so rank 0
//! is the ascending arrangement.

/// Binomial coefficient, saturating at `u128::MAX` on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).try_fold(1u128, |acc, i| acc.checked_mul(i)).unwrap_or(u128::MAX)
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets { n, current: if k <= n { Some((1..=k as u32).collect()) } else { None } }
}

pub struct Subsets {
    n: usize,
    current: Option<Vec<u32>>,
}

impl Iterator for Subsets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let k = cur.len();
        let n = self.n as u32;
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) as u32 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Lexicographic rank of an ascending subset of `1..=n`.
pub fn subset_rank(n: usize, subset: &[u32]) -> u128 {
    let k = subset.len();
    let mut rank = 0u128;
    let mut prev = 0u32;
    for (i, &x) in subset.iter().enumerate() {
        for skipped in prev + 1..x {
            rank += binomial(n - skipped as usize, k - i - 1);
        }
        prev = x;
    }
    rank
}

/// Arrange `sorted` according to the lexicographic permutation `rank`.
pub fn unrank_permutation(sorted: &[u32], mut rank: u128) -> Vec<u32> {
    let mut pool = sorted.to_vec();
    let mut out = Vec::with_capacity(pool.len());
    for remaining in (1..=pool.len()).rev() {
        let block = factorial(remaining - 1);
        let idx = (rank / block) as usize;
        rank %= block;
        out.push(pool.remove(idx));
    }
    out
}

/// Inverse of [`unrank_permutation`] with respect to the ascending order of
/// the entries.
pub fn rank_permutation(arrangement: &[u32]) -> u128 {
    let mut rank = 0u128;
    for (i, &x) in arrangement.iter().enumerate() {
        let smaller_later = arrangement[i + 1..].iter().filter(|&&y| y < x).count();
        rank += smaller_later as u128 * factorial(arrangement.len() - i - 1);
    }
    rank
}
