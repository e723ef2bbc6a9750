//! Derivative-free maximization on an interval.

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`. Ties keep the left part
/// of the bracket, so plateaus resolve to their smallest point.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Maximum {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let mut best = Maximum { x, value: f(x) };
    for (x, value) in [(c, fc), (d, fd)] {
        if value > best.value || (value == best.value && x < best.x) {
            best = Maximum { x, value };
        }
    }
    best
}

/// Samples `f` at `coarse` equispaced points of `[lo, hi]` (endpoints
/// included), then refines around the best one by golden section.
pub fn scan_then_refine(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    coarse: usize,
    tol: f64,
) -> Maximum {
    assert!(coarse >= 3, "coarse scan needs at least three points");
    let step = (hi - lo) / (coarse - 1) as f64;
    let xs: Vec<f64> = (0..coarse).map(|i| lo + step * i as f64).collect();
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let a = xs[best_i.saturating_sub(1)];
    let b = xs[(best_i + 1).min(coarse - 1)];
    let refined = golden_section_max(&f, a, b, tol);
    if refined.value >= best_v {
        refined
    } else {
        Maximum {
            x: xs[best_i],
            value: best_v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_vertex() {
        let m = golden_section_max(|x| -(x - 0.3).powi(2), -1.0, 2.0, 1e-10);
        assert!((m.x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn kink_of_a_min_of_lines() {
        let m = scan_then_refine(|x| x.min(1.0 - x), 0.0, 1.0, 33, 1e-12);
        assert!((m.x - 0.5).abs() < 1e-9);
        assert!((m.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn plateau_resolves_left() {
        let m = golden_section_max(|x| x.min(1.0), 0.0, 3.0, 1e-10);
        assert!((m.value - 1.0).abs() < 1e-15);
        assert!((m.x - 1.0).abs() < 1e-8);
    }
}
