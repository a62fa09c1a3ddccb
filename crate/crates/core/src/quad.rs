//! Adaptive Gauss-Legendre quadrature in double-double precision.
//!
//! A 16-point rule is applied recursively: if the whole-interval value
//! and the sum of the two half-interval values disagree beyond the
//! requested tolerance, the interval is bisected. Nodes and weights are
//! refined at startup with Newton iterations on the Legendre recurrence
//! so they carry full double-double accuracy.

use crate::cx::Cx;
use crate::dd::Dd;
use crate::error::{HlError, Result};
use once_cell::sync::Lazy;

const N: usize = 16;
const MAX_DEPTH: usize = 24;

/// Legendre P_N and its derivative at x, via the three-term recurrence.
fn legendre(n: usize, x: Dd) -> (Dd, Dd) {
    let mut p0 = Dd::ONE;
    let mut p1 = x;
    for k in 1..n {
        let kf = Dd::from_int(k as i64);
        let p2 = ((Dd::from_int(2 * k as i64 + 1) * x * p1) - kf * p0)
            / Dd::from_int(k as i64 + 1);
        p0 = p1;
        p1 = p2;
    }
    // P_n' from P_n and P_{n-1}
    let nf = Dd::from_int(n as i64);
    let dp = nf * (x * p1 - p0) / (x * x - Dd::ONE);
    (p1, dp)
}

struct Rule {
    nodes: Vec<Dd>,
    weights: Vec<Dd>,
}

static GL16: Lazy<Rule> = Lazy::new(|| {
    let mut nodes = Vec::with_capacity(N);
    let mut weights = Vec::with_capacity(N);
    for i in 0..N {
        // Chebyshev-style initial guess, then Newton in double-double.
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
        let mut x = Dd::from_f64(guess);
        for _ in 0..6 {
            let (p, dp) = legendre(N, x);
            x = x - p / dp;
        }
        let (_, dp) = legendre(N, x);
        let w = Dd::TWO / ((Dd::ONE - x * x) * dp * dp);
        nodes.push(x);
        weights.push(w);
    }
    Rule { nodes, weights }
});

fn gl16_cx<F: Fn(Dd) -> Cx>(f: &F, a: Dd, b: Dd) -> (Cx, Dd) {
    let r = &*GL16;
    let half = (b - a) * Dd::from_f64(0.5);
    let mid = (a + b) * Dd::from_f64(0.5);
    let mut s = Cx::ZERO;
    let mut l1 = Dd::ZERO;
    for i in 0..N {
        let t = mid + half * r.nodes[i];
        let v = f(t);
        s = s + v.scale(r.weights[i]);
        l1 = l1 + v.abs() * r.weights[i];
    }
    (s.scale(half), l1 * half)
}

fn adapt<F: Fn(Dd) -> Cx>(
    f: &F,
    a: Dd,
    b: Dd,
    whole: Cx,
    tol: Dd,
    floor: Dd,
    depth: usize,
) -> Result<Cx> {
    let mid = (a + b) * Dd::from_f64(0.5);
    let (left, l1l) = gl16_cx(f, a, mid);
    let (right, l1r) = gl16_cx(f, mid, b);
    let sum = left + right;
    let err = (sum - whole).abs();
    // local noise floor: rounding in sums over an integrand of this size
    let local_floor = (l1l + l1r) * Dd::from_f64(1e-28);
    if err <= tol || err <= floor || err <= local_floor {
        return Ok(sum);
    }
    if depth >= MAX_DEPTH {
        return Err(HlError::Precision(format!(
            "quadrature bisection depth exhausted (residual {:.3e})",
            err.to_f64()
        )));
    }
    // split the budget, but never below the double-double noise floor
    let mut half_tol = tol * Dd::from_f64(0.5);
    if half_tol < floor {
        half_tol = floor;
    }
    let l = adapt(f, a, mid, left, half_tol, floor, depth + 1)?;
    let r = adapt(f, mid, b, right, half_tol, floor, depth + 1)?;
    Ok(l + r)
}

/// Integrate a complex-valued function over [a, b] to relative tolerance
/// `rel_tol` (anchored on the scale of the first whole-interval estimate,
/// with an absolute floor so zero integrals terminate).
pub fn integrate_cx<F: Fn(Dd) -> Cx>(f: &F, a: Dd, b: Dd, rel_tol: f64) -> Result<Cx> {
    if !(b > a) {
        if a == b {
            return Ok(Cx::ZERO);
        }
        return Err(HlError::Domain("integration bounds reversed".into()));
    }
    let (whole, l1) = gl16_cx(f, a, b);
    let scale = whole.abs().to_f64().max(1e-30);
    let tol = Dd::from_f64(rel_tol * scale);
    let floor = Dd::from_f64(1e-28 * l1.to_f64().max(scale));
    adapt(f, a, b, whole, if tol < floor { floor } else { tol }, floor, 0)
}

/// Real-valued convenience wrapper.
pub fn integrate<F: Fn(Dd) -> Dd>(f: &F, a: Dd, b: Dd, rel_tol: f64) -> Result<Dd> {
    let g = |t: Dd| Cx::real(f(t));
    Ok(integrate_cx(&g, a, b, rel_tol)?.re)
}
