//! Closed-form tables for the standard fixtures, indexed by exponent.

/// `(i + j) mod n`.
pub fn mod_add(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// `(i · j) mod n`.
pub fn mod_mul(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect()
}

/// Position of `f^k(x₀)` in a tail of length `t` feeding a cycle of length `l`.
pub fn collapse(t: usize, l: usize, k: usize) -> usize {
    if k < t {
        k
    } else {
        (k - t) % l + t
    }
}

pub fn rho_add(t: usize, l: usize) -> Vec<Vec<usize>> {
    let n = t + l;
    (0..n).map(|i| (0..n).map(|j| collapse(t, l, i + j)).collect()).collect()
}

pub fn rho_mul(t: usize, l: usize) -> Vec<Vec<usize>> {
    let n = t + l;
    (0..n).map(|i| (0..n).map(|j| collapse(t, l, i * j)).collect()).collect()
}
