//! One-dimensional maximization: a dense grid scan followed by golden-section
//! refinement around the best grid point.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Maximum {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol {
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
    let arg = 0.5 * (a + b);
    let value = f(arg);
    // The midpoint may lose to an interior probe by rounding; keep the best.
    [(arg, value), (c, fc), (d, fd)]
        .into_iter()
        .fold(Maximum { arg, value }, |best, (x, v)| {
            if v > best.value {
                Maximum { arg: x, value: v }
            } else {
                best
            }
        })
}

/// Scans `points` equally spaced samples of `[lo, hi]` (endpoints included)
/// and refines the best one by golden section on its neighboring cell.
pub fn grid_then_golden<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    points: usize,
    tol: f64,
) -> Maximum {
    let points = points.max(3);
    let step = (hi - lo) / (points - 1) as f64;
    let (best_i, best_v) = (0..points).map(|i| (i, f(lo + step * i as f64))).fold(
        (0, f64::NEG_INFINITY),
        |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
    );
    let left = lo + step * best_i.saturating_sub(1) as f64;
    let right = lo + step * (best_i + 1).min(points - 1) as f64;
    let refined = golden_section_max(&f, left, right, tol);
    if refined.value >= best_v {
        refined
    } else {
        Maximum {
            arg: lo + step * best_i as f64,
            value: best_v,
        }
    }
}
