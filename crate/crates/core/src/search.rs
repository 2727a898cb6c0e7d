//! Sign-bracket search and bisection for nondecreasing scalar functions.

/// Maximum number of doublings when growing a bracket outward.
pub const MAX_DOUBLINGS: u32 = 64;
/// Iteration cap for bisection.
pub const MAX_BISECTIONS: u32 = 200;
/// Relative width at which bisection stops: `width <= REL_WIDTH * max(1, |beta|)`.
pub const REL_WIDTH: f64 = 1e-12;

/// Walks `start, 2*start, 4*start, ...` (at most [`MAX_DOUBLINGS`] doublings)
/// and returns the first point where `accept` holds.
pub fn expand(start: f64, mut accept: impl FnMut(f64) -> bool) -> Option<f64> {
    let mut t = start;
    for _ in 0..=MAX_DOUBLINGS {
        if accept(t) {
            return Some(t);
        }
        t *= 2.0;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    /// Largest point known to satisfy `f <= 0`.
    pub root: f64,
    pub iterations: u32,
}

/// Shrinks `[lo, hi]` with `f(lo) <= 0 < f(hi)` around the last point where
/// `f <= 0`. `f` must be nondecreasing on the bracket.
pub fn bisect_sup(mut lo: f64, mut hi: f64, mut f: impl FnMut(f64) -> f64) -> Bisection {
    let mut iterations = 0;
    while iterations < MAX_BISECTIONS && hi - lo > REL_WIDTH * lo.abs().max(hi.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Bisection { root: lo, iterations }
}
