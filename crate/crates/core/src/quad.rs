//! Quadrature toolkit: Gauss-Kronrod panels, adaptive bisection, series
//! acceleration, Richardson extrapolation and principal-value integrals.
//!
//! Everything here is deliberately small and self-contained; the energy
//! integrands are the only consumers and they need tight control over panel
//! placement, so a general-purpose adaptive library would not help much.

use crate::error::CoreError;

// 15-point Kronrod abscissae on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

// 7-point Gauss weights (embedded rule).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

// 15-point Kronrod weights.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Value, error estimate and subdivision count of one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

impl QuadResult {
    pub fn zero() -> Self {
        QuadResult {
            value: 0.0,
            error: 0.0,
            subdivisions: 0,
        }
    }

    pub fn add(&mut self, other: &QuadResult) {
        self.value += other.value;
        self.error += other.error;
        self.subdivisions += other.subdivisions;
    }
}

/// One 15-point Gauss-Kronrod panel on [a, b].
///
/// Returns (value, error estimate, integral of |f|). The error estimate
/// follows the usual Kronrod-vs-Gauss sharpening with a roundoff floor.
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let hl = 0.5 * (b - a);
    let c = 0.5 * (a + b);

    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;

    for j in 0..7 {
        let x = hl * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = resk * hl;
    let resabs = resabs * hl.abs();
    let resasc = resasc * hl.abs();
    let mut err = ((resk - resg) * hl).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    err = err.max(50.0 * f64::EPSILON * resabs);
    (value, err, resabs)
}

/// Adaptive bisection on [a, b], bounded at `max_depth` halvings.
///
/// A panel is accepted once its error drops to the roundoff floor of the
/// absolute integral (further splitting only accumulates noise) or the
/// depth budget is spent; the returned error is then honest about what was
/// achieved.
pub fn adaptive<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, max_depth: u32) -> QuadResult {
    fn rec<F: FnMut(f64) -> f64>(
        f: &mut F,
        a: f64,
        b: f64,
        depth: u32,
        subdivisions: &mut usize,
    ) -> (f64, f64) {
        let (v, e, resabs) = gk15(f, a, b);
        // acceptance threshold must sit above the 50 eps resabs error floor
        // of gk15, or converged panels keep splitting to full depth
        if depth == 0 || e <= 100.0 * f64::EPSILON * resabs {
            return (v, e);
        }
        *subdivisions += 1;
        let m = 0.5 * (a + b);
        let (v1, e1) = rec(f, a, m, depth - 1, subdivisions);
        let (v2, e2) = rec(f, m, b, depth - 1, subdivisions);
        (v1 + v2, e1 + e2)
    }
    let mut subdivisions = 0;
    let (value, error) = rec(f, a, b, max_depth, &mut subdivisions);
    QuadResult {
        value,
        error,
        subdivisions,
    }
}

/// Splits [a, b] into panels of width at most `width` and integrates each
/// adaptively. Used to resolve oscillatory integrands: `width` is chosen at
/// a fraction of the local period so each panel sees less than one cycle.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    width: f64,
    max_depth: u32,
) -> QuadResult {
    let mut total = QuadResult::zero();
    if !(b > a) {
        return total;
    }
    let n = (((b - a) / width).ceil() as usize).max(1);
    let h = (b - a) / n as f64;
    for i in 0..n {
        let lo = a + h * i as f64;
        let hi = if i + 1 == n { b } else { a + h * (i + 1) as f64 };
        let r = adaptive(f, lo, hi, max_depth);
        total.add(&r);
    }
    total
}

/// Iterated Aitken delta-squared acceleration of a sequence of partial
/// sums. Returns (limit estimate, error estimate from the last sweep).
pub fn aitken_limit(seq: &[f64]) -> (f64, f64) {
    assert!(!seq.is_empty());
    let mut s: Vec<f64> = seq.to_vec();
    let mut prev_tail = *s.last().unwrap();
    for _ in 0..4 {
        if s.len() < 3 {
            break;
        }
        let mut t = Vec::with_capacity(s.len() - 2);
        for i in 0..s.len() - 2 {
            let d1 = s[i + 1] - s[i];
            let d2 = s[i + 2] - s[i + 1];
            let den = d2 - d1;
            if den.abs() <= 1e-300 + 1e-16 * (s[i + 2].abs() + s[i].abs()) {
                t.push(s[i + 2]);
            } else {
                t.push(s[i + 2] - d2 * d2 / den);
            }
        }
        prev_tail = *s.last().unwrap();
        s = t;
    }
    let last = *s.last().unwrap();
    let err = (last - prev_tail).abs().max(if s.len() >= 2 {
        (last - s[s.len() - 2]).abs()
    } else {
        0.0
    });
    (last, err)
}

/// Sums an alternating-tending oscillatory series by accumulating panel
/// contributions `term(k)` for k = 0, 1, ... and Aitken-accelerating the
/// partial sums. `term` is typically one half-period lobe of an oscillatory
/// integral. Stops early once consecutive accelerated estimates agree.
pub fn oscillatory_series<F: FnMut(usize) -> f64>(
    mut term: F,
    max_terms: usize,
    rel_tol: f64,
) -> (f64, f64) {
    let mut partial = Vec::with_capacity(max_terms.min(64));
    let mut sum = 0.0;
    let mut best = (0.0, f64::INFINITY);
    for k in 0..max_terms {
        sum += term(k);
        partial.push(sum);
        if partial.len() >= 8 && partial.len() % 4 == 0 {
            let (lim, err) = aitken_limit(&partial);
            if err < best.1 {
                best = (lim, err);
            }
            if err <= rel_tol * lim.abs().max(1e-300) {
                return best;
            }
        }
    }
    if partial.len() >= 3 {
        let (lim, err) = aitken_limit(&partial);
        if err < best.1 {
            best = (lim, err);
        }
    } else {
        best = (sum, f64::INFINITY);
    }
    best
}

/// Richardson extrapolation of `vals[k] = S(eps0 / ratio^k)` to eps -> 0,
/// assuming an error expansion in integer powers of eps. Returns the
/// diagonal limit and the magnitude of the last diagonal step.
pub fn richardson(vals: &[f64], ratio: f64) -> (f64, f64) {
    assert!(vals.len() >= 2 && ratio > 1.0);
    let n = vals.len();
    let mut col: Vec<f64> = vals.to_vec();
    let mut factor = 1.0;
    let mut prev_best = col[n - 1];
    for _ in 1..n {
        factor *= ratio;
        prev_best = *col.last().unwrap();
        let next: Vec<f64> = (0..col.len() - 1)
            .map(|i| (factor * col[i + 1] - col[i]) / (factor - 1.0))
            .collect();
        col = next;
    }
    let limit = *col.last().unwrap();
    (limit, (limit - prev_best).abs())
}

/// Cauchy principal value of `f(w) / (w - pole)` over [a, b].
///
/// The pole window [pole - delta, pole + delta] is handled by the symmetric
/// combination (f(pole+t) - f(pole-t)) / t, which is regular at t = 0; the
/// two outer segments are ordinary adaptive integrals. The computation is
/// repeated with delta / 2 and the drift between the two answers is folded
/// into the error estimate.
pub fn pv_integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    pole: f64,
    delta: f64,
) -> Result<QuadResult, CoreError> {
    if !(a < pole && pole < b) {
        return Err(CoreError::Domain(format!(
            "principal-value pole {pole} must lie strictly inside ({a}, {b})"
        )));
    }
    if !(delta > 0.0) || delta >= (pole - a).min(b - pole) {
        return Err(CoreError::Domain(format!(
            "pole window delta {delta} must be positive and smaller than the \
             distance from the pole to either endpoint"
        )));
    }
    let eval = |d: f64| -> QuadResult {
        let mut total = QuadResult::zero();
        let mut outer = |w: f64| f(w) / (w - pole);
        let r = adaptive(&mut outer, a, pole - d, 12);
        total.add(&r);
        let r = adaptive(&mut outer, pole + d, b, 12);
        total.add(&r);
        let mut window = |t: f64| {
            if t == 0.0 {
                // Regular limit: the symmetric combination tends to 2 f'(pole);
                // a one-sided difference is accurate enough at panel nodes.
                let h = 1e-6 * d;
                (f(pole + h) - f(pole - h)) / h
            } else {
                (f(pole + t) - f(pole - t)) / t
            }
        };
        let r = adaptive(&mut window, 0.0, d, 12);
        total.add(&r);
        total
    };
    let full = eval(delta);
    let half = eval(0.5 * delta);
    Ok(QuadResult {
        value: half.value,
        error: half.error + (full.value - half.value).abs(),
        subdivisions: full.subdivisions + half.subdivisions,
    })
}
