//! Weak compositions of `r` into `n` parts, in lexicographic order.
//!
//! They index every basis of `W_{n,r}` on both the Verma and the homological
//! side.

/// All `(k_0, …, k_{n-1})` with `Σ k_i = r`, lexicographically ascending.
pub fn compositions(n: usize, r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 {
        if r == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = Vec::with_capacity(n);
    fill(n, r, &mut current, &mut out);
    out
}

fn fill(n: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if current.len() == n - 1 {
        current.push(remaining);
        out.push(current.clone());
        current.pop();
        return;
    }
    for k in 0..=remaining {
        current.push(k);
        fill(n, remaining - k, current, out);
        current.pop();
    }
}

/// `C(n + r - 1, r)`, the number of weak compositions.
pub fn count(n: usize, r: u32) -> u128 {
    if n == 0 {
        return u128::from(r == 0);
    }
    binomial((n as u128) + (r as u128) - 1, r as u128)
}

fn binomial(a: u128, b: u128) -> u128 {
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
}

/// Position of `index` in [`compositions`] order, found by binary search.
pub fn position(list: &[Vec<u32>], index: &[u32]) -> Option<usize> {
    list.binary_search_by(|probe| probe.as_slice().cmp(index)).ok()
}
