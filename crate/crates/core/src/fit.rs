//! Numerical realization of asymptotic-coefficient brackets: fitting
//! sampled values against a prescribed ladder of powers in a small
//! parameter, against a polynomial in the spectral parameter, and
//! against an even polynomial in the lift speed.
//!
//! Ladder fits use sequential peeling: the lowest-exponent coefficient
//! is isolated by dividing the samples by t^{e0} and eliminating each
//! known higher gap with one Richardson level (the abscissae are a
//! geometric grid, so each level is a two-point linear combination with
//! exactly known ratio), then the recovered term is subtracted and the
//! procedure recurses. Two guard levels past the declared ladder absorb
//! the smooth remainder.

use crate::cx::Cx;
use crate::dd::Dd;
use crate::error::{HlError, Result};

#[derive(Clone, Debug)]
pub struct ExponentLadder {
    pub exponents: Vec<f64>,
}

impl ExponentLadder {
    pub fn new(exponents: Vec<f64>) -> Result<ExponentLadder> {
        if exponents.is_empty() {
            return Err(HlError::Domain("empty exponent ladder".into()));
        }
        for w in exponents.windows(2) {
            if w[1] - w[0] < 0.5 {
                return Err(HlError::Domain(format!(
                    "ladder gap {} below the supported minimum",
                    w[1] - w[0]
                )));
            }
        }
        Ok(ExponentLadder { exponents })
    }

    pub fn count(&self) -> usize {
        self.exponents.len()
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticFit {
    pub ladder: ExponentLadder,
    pub coefficients: Vec<Cx>,
    /// Post-subtraction floor relative to the original sample scale.
    pub residual_norm: f64,
    pub condition_estimate: f64,
}

/// Default geometric sample grid t_j = 0.4 * 0.75^j, 24 samples.
pub fn default_s_grid() -> Vec<Dd> {
    geometric_grid(0.4, 0.75, 24)
}

pub fn geometric_grid(t0: f64, r: f64, n: usize) -> Vec<Dd> {
    let mut g = Vec::with_capacity(n);
    let mut t = Dd::from_f64(t0);
    let rr = Dd::from_f64(r);
    for _ in 0..n {
        g.push(t);
        t = t * rr;
    }
    g
}

fn spread(u: &[Cx]) -> f64 {
    let n = u.len();
    if n < 2 {
        return 0.0;
    }
    (u[n - 1] - u[n - 2]).abs().to_f64()
}

/// Fit samples (t_j, y_j) on a decreasing geometric grid against the
/// ladder sum_i c_i t^{e_i}.
pub fn fit_ladder(samples: &[(Dd, Cx)], ladder: &ExponentLadder) -> Result<AsymptoticFit> {
    let n = samples.len();
    let count = ladder.count();
    if n < count + 4 {
        return Err(HlError::Resolution(format!(
            "need at least {} samples for a {}-term ladder, got {n}",
            count + 4,
            count
        )));
    }
    // verify the geometric structure and extract the ratio
    let r = (samples[1].0 / samples[0].0).to_f64();
    if !(r > 0.0 && r < 1.0) {
        return Err(HlError::Resolution(
            "sample abscissae must decrease geometrically".into(),
        ));
    }
    for w in samples.windows(2) {
        let rw = (w[1].0 / w[0].0).to_f64();
        if (rw - r).abs() > 1e-12 {
            return Err(HlError::DegenerateNodes(
                "sample abscissae are not a geometric ladder".into(),
            ));
        }
    }

    let scale0 = samples
        .iter()
        .map(|&(_, y)| y.abs().to_f64())
        .fold(0.0f64, f64::max);
    if scale0 == 0.0 {
        return Ok(AsymptoticFit {
            ladder: ladder.clone(),
            coefficients: vec![Cx::ZERO; count],
            residual_norm: 0.0,
            condition_estimate: 1.0,
        });
    }

    let mut remaining: Vec<Cx> = samples.iter().map(|&(_, y)| y).collect();
    let ts: Vec<Dd> = samples.iter().map(|&(t, _)| t).collect();
    let mut coefficients = Vec::with_capacity(count);
    let mut condition: f64 = 1.0;
    let e_last = *ladder.exponents.last().unwrap();
    // remainder terms past the declared ladder continue with its spacing
    let tail_gap = if count >= 2 {
        e_last - ladder.exponents[count - 2]
    } else {
        2.0
    };

    for m in 0..count {
        let em = ladder.exponents[m];
        let mut peel_cond: f64 = 1.0;
        // u_j = remaining_j / t_j^{em}
        let mut u: Vec<Cx> = ts
            .iter()
            .zip(&remaining)
            .map(|(&t, &y)| y.scale(t.powf(Dd::from_f64(-em))))
            .collect();
        // gaps to eliminate: remaining ladder exponents, then guards
        let mut gaps: Vec<f64> = ladder.exponents[m + 1..]
            .iter()
            .map(|&e| e - em)
            .collect();
        gaps.push(e_last - em + tail_gap);
        gaps.push(e_last - em + 2.0 * tail_gap);
        let noise_floor = 1e-20
            * u.iter().map(|c| c.abs().to_f64()).fold(0.0f64, f64::max).max(1e-300);
        for &gap in &gaps {
            if u.len() < 3 {
                break;
            }
            let rho = Dd::from_f64(r).powf(Dd::from_f64(gap));
            let denom = Cx::real(Dd::ONE - rho);
            let pre = spread(&u);
            let mut v = Vec::with_capacity(u.len() - 1);
            for j in 0..u.len() - 1 {
                v.push((u[j + 1] - u[j].scale(rho)) * denom.recip());
            }
            peel_cond *= (1.0 + rho.to_f64()) / (1.0 - rho.to_f64());
            let post = spread(&v);
            if post > pre && post > noise_floor {
                return Err(HlError::NoiseFloor(format!(
                    "Richardson level for gap {gap:.2} did not contract \
                     ({pre:.3e} -> {post:.3e})"
                )));
            }
            u = v;
        }
        condition = condition.max(peel_cond);
        if condition > 1e8 {
            return Err(HlError::IllConditioned(condition));
        }
        let cm = *u.last().unwrap();
        coefficients.push(cm);
        for (j, &t) in ts.iter().enumerate() {
            remaining[j] = remaining[j] - cm.scale(t.powf(Dd::from_f64(em)));
        }
    }

    let resid = remaining
        .iter()
        .map(|c| c.abs().to_f64())
        .fold(0.0f64, f64::max);
    Ok(AsymptoticFit {
        ladder: ladder.clone(),
        coefficients,
        residual_norm: resid / scale0,
        condition_estimate: condition,
    })
}

/// Interpolate / least-squares fit a degree-bounded polynomial through
/// complex nodes. For exactly degree+1 nodes this is interpolation; for
/// more it solves the normal equations.
pub fn fit_polynomial(samples: &[(Cx, Cx)], degree: usize) -> Result<Vec<Cx>> {
    let n = samples.len();
    if n < degree + 1 {
        return Err(HlError::Resolution(format!(
            "degree {degree} needs {} nodes, got {n}",
            degree + 1
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            if (samples[i].0 - samples[j].0).abs().to_f64() < 1e-14 {
                return Err(HlError::DegenerateNodes(format!(
                    "nodes {i} and {j} coincide"
                )));
            }
        }
    }
    let m = degree + 1;
    // Vandermonde rows
    let rows: Vec<Vec<Cx>> = samples
        .iter()
        .map(|&(z, _)| {
            let mut row = Vec::with_capacity(m);
            let mut p = Cx::ONE;
            for _ in 0..m {
                row.push(p);
                p = p * z;
            }
            row
        })
        .collect();
    let (mut a, mut b): (Vec<Vec<Cx>>, Vec<Cx>) = if n == m {
        (rows, samples.iter().map(|&(_, y)| y).collect())
    } else {
        // normal equations A^H A x = A^H y
        let mut ata = vec![vec![Cx::ZERO; m]; m];
        let mut aty = vec![Cx::ZERO; m];
        for (row, &(_, y)) in rows.iter().zip(samples) {
            for i in 0..m {
                let ci = row[i].conj();
                for j in 0..m {
                    ata[i][j] = ata[i][j] + ci * row[j];
                }
                aty[i] = aty[i] + ci * y;
            }
        }
        (ata, aty)
    };
    // Gaussian elimination with partial pivoting
    for col in 0..m {
        let mut piv = col;
        let mut best = a[col][col].abs().to_f64();
        for row in col + 1..m {
            let v = a[row][col].abs().to_f64();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best == 0.0 {
            return Err(HlError::DegenerateNodes("singular fit system".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for row in col + 1..m {
            let f = a[row][col] * inv;
            if f.abs2().is_zero() {
                continue;
            }
            for j in col..m {
                let v = a[col][j];
                a[row][j] = a[row][j] - f * v;
            }
            let bc = b[col];
            b[row] = b[row] - f * bc;
        }
    }
    let mut x = vec![Cx::ZERO; m];
    for col in (0..m).rev() {
        let mut s = b[col];
        for j in col + 1..m {
            s = s - a[col][j] * x[j];
        }
        x[col] = s * a[col][col].recip();
    }
    Ok(x)
}

/// Constant term of an even polynomial in xi fitted to samples at
/// xi > 1 (substituting x = xi^2 and fitting degree cap/2 in x).
pub fn xi_constant_term(samples: &[(Dd, Cx)], degree_cap: usize) -> Result<Cx> {
    let half = degree_cap / 2;
    let mapped: Vec<(Cx, Cx)> = samples
        .iter()
        .map(|&(xi, y)| (Cx::real(xi * xi), y))
        .collect();
    let coeffs = fit_polynomial(&mapped, half)?;
    Ok(coeffs[0])
}
