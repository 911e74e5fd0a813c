const MAX_ITERS: usize = 200;

/// Root of `f` on `[lo, hi]` given `f(lo) > 0 >= f(hi)`. Halves until the
/// midpoint no longer moves (machine precision) or 200 iterations.
pub(crate) fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::bisect;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(0.0, 2.0, |x| 2.0 - x * x);
        assert!((r - std::f64::consts::SQRT_2).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn root_at_lower_end() {
        let r = bisect(0.0, 1.0, |x| -x);
        assert!(r < 1e-50);
    }
}
