//! Brute-force reference oracle for Hadamard coefficients on flat
//! models with operator P = box + c(y) (box = d_0^2 - sum_i d_i^2 in
//! the fixed signature convention).
//!
//! The transport hierarchy along straight rays from the base point x,
//!
//!   (rho_x - 2k) V^k = 2k P V^{k-1},   rho_x V = -2 (y - x) . grad V,
//!
//! is solved by the regular-singular integral representation
//!
//!   V^k(y) = -k int_0^1 sigma^{k-1} (P V^{k-1})(x + sigma (y - x)) dsigma,
//!
//! which is exact through the singular point. Derivatives of V^k are
//! propagated analytically: each coordinate derivative in y inserts one
//! more power of sigma and differentiates the integrand, so the only
//! derivative oracle needed is the potential's (closed form for the
//! shipped potentials). No finite differencing enters the hierarchy.

use crate::dd::Dd;
use crate::error::{HlError, Result};
use once_cell::sync::Lazy;

/// Scalar potential with exact partial derivatives of any order.
pub trait Potential {
    fn dim(&self) -> usize;
    /// D^beta c at y, beta a per-coordinate derivative multi-index.
    fn deriv(&self, beta: &[usize], y: &[Dd]) -> Dd;
    fn eval(&self, y: &[Dd]) -> Dd {
        self.deriv(&vec![0; self.dim()], y)
    }
}

#[derive(Clone, Debug)]
pub struct ConstPotential {
    pub value: Dd,
    pub dim: usize,
}

impl Potential for ConstPotential {
    fn dim(&self) -> usize {
        self.dim
    }
    fn deriv(&self, beta: &[usize], _y: &[Dd]) -> Dd {
        if beta.iter().all(|&b| b == 0) {
            self.value
        } else {
            Dd::ZERO
        }
    }
}

/// c(y) = amp * exp(-|y - center|^2_euclid / width^2), with derivatives
/// from the Hermite three-term recurrence per coordinate.
#[derive(Clone, Debug)]
pub struct GaussianPotential {
    pub amp: Dd,
    pub width: Dd,
    pub center: Vec<Dd>,
}

fn hermite(n: usize, u: Dd) -> Dd {
    // physicists' H_n via H_{j+1} = 2u H_j - 2j H_{j-1}
    let mut h0 = Dd::ONE;
    if n == 0 {
        return h0;
    }
    let mut h1 = Dd::TWO * u;
    for j in 1..n {
        let h2 = Dd::TWO * (u * h1 - Dd::from_int(j as i64) * h0);
        h0 = h1;
        h1 = h2;
    }
    h1
}

impl Potential for GaussianPotential {
    fn dim(&self) -> usize {
        self.center.len()
    }
    fn deriv(&self, beta: &[usize], y: &[Dd]) -> Dd {
        let winv = self.width.recip();
        let mut expo = Dd::ZERO;
        let mut poly = self.amp;
        for (j, &b) in beta.iter().enumerate() {
            let u = (y[j] - self.center[j]) * winv;
            expo = expo - u * u;
            if b > 0 {
                let mut f = hermite(b, u) * winv.powi(b as i32);
                if b % 2 == 1 {
                    f = -f;
                }
                poly = poly * f;
            }
        }
        poly * expo.exp()
    }
}

pub struct SpacetimeModel<'a> {
    pub dim: usize,
    pub potential: &'a dyn Potential,
}

/// rho_x applied to a field given by its gradient oracle:
/// rho_x V (y) = -2 (y - x) . grad V(y) (the zeroth-order part of the
/// operator vanishes identically in flat space with this convention).
pub fn rho_apply(x: &[Dd], y: &[Dd], grad_v: &[Dd]) -> Dd {
    let mut s = Dd::ZERO;
    for i in 0..x.len() {
        s = s + (y[i] - x[i]) * grad_v[i];
    }
    -(Dd::TWO * s)
}

/// Fixed 16-point Gauss-Legendre rule on [0, 1] (the transport
/// integrands are entire, so a fixed rule is spectrally accurate).
static GL01: Lazy<(Vec<Dd>, Vec<Dd>)> = Lazy::new(|| {
    // reuse the [-1,1] rule by probing quad's nodes via integration of
    // monomials is wasteful; recompute directly here
    let n = 16usize;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut xn = Dd::from_f64(guess);
        for _ in 0..6 {
            let (p, dp) = legendre16(xn);
            xn = xn - p / dp;
        }
        let (_, dp) = legendre16(xn);
        let w = Dd::TWO / ((Dd::ONE - xn * xn) * dp * dp);
        // map to [0, 1]
        nodes.push((xn + Dd::ONE) * Dd::from_f64(0.5));
        weights.push(w * Dd::from_f64(0.5));
    }
    (nodes, weights)
});

fn legendre16(x: Dd) -> (Dd, Dd) {
    let mut p0 = Dd::ONE;
    let mut p1 = x;
    for k in 1..16 {
        let p2 = (Dd::from_int(2 * k + 1) * x * p1 - Dd::from_int(k) * p0)
            / Dd::from_int(k + 1);
        p0 = p1;
        p1 = p2;
    }
    let n = Dd::from_int(16);
    let dp = n * (x * p1 - p0) / (x * x - Dd::ONE);
    (p1, dp)
}

/// All sub-multi-indices gamma <= beta with their product binomials.
fn leibniz_terms(beta: &[usize]) -> Vec<(Vec<usize>, Dd)> {
    let mut out: Vec<(Vec<usize>, Dd)> = vec![(Vec::new(), Dd::ONE)];
    for &b in beta {
        let mut next = Vec::with_capacity(out.len() * (b + 1));
        for (prefix, coef) in &out {
            let mut binom = 1u64;
            for g in 0..=b {
                if g > 0 {
                    binom = binom * (b - g + 1) as u64 / g as u64;
                }
                let mut v = prefix.clone();
                v.push(g);
                next.push((v, *coef * Dd::from_int(binom as i64)));
            }
        }
        out = next;
    }
    out
}

impl<'a> SpacetimeModel<'a> {
    /// D^beta V^k_x at y (analytic propagation through the hierarchy).
    pub fn v_deriv(&self, x: &[Dd], k: usize, beta: &[usize], y: &[Dd]) -> Dd {
        if k == 0 {
            return if beta.iter().all(|&b| b == 0) {
                Dd::ONE
            } else {
                Dd::ZERO
            };
        }
        let order: usize = beta.iter().sum();
        let (nodes, weights) = &*GL01;
        let mut acc = Dd::ZERO;
        let mut p = vec![Dd::ZERO; self.dim];
        for (i, &s) in nodes.iter().enumerate() {
            for j in 0..self.dim {
                p[j] = x[j] + s * (y[j] - x[j]);
            }
            let f = self.pv_deriv(x, k - 1, beta, &p);
            acc = acc + weights[i] * s.powi((k - 1 + order) as i32) * f;
        }
        -(Dd::from_int(k as i64) * acc)
    }

    /// D^beta (P V^k) at p, P = box + c.
    fn pv_deriv(&self, x: &[Dd], k: usize, beta: &[usize], p: &[Dd]) -> Dd {
        let mut s = Dd::ZERO;
        // box = d_0^2 - sum_i d_i^2
        for mu in 0..self.dim {
            let mut b2 = beta.to_vec();
            b2[mu] += 2;
            let term = self.v_deriv(x, k, &b2, p);
            s = if mu == 0 { s + term } else { s - term };
        }
        // Leibniz for c . V^k
        for (gamma, coef) in leibniz_terms(beta) {
            let c_part = self.potential.deriv(&gamma, p);
            if c_part.is_zero() {
                continue;
            }
            let rem: Vec<usize> = beta.iter().zip(&gamma).map(|(&b, &g)| b - g).collect();
            s = s + coef * c_part * self.v_deriv(x, k, &rem, p);
        }
        s
    }

    pub fn v_value(&self, x: &[Dd], k: usize, y: &[Dd]) -> Dd {
        self.v_deriv(x, k, &vec![0; self.dim], y)
    }
}

/// Solved coefficients V^0..V^max_k at a fixed list of points.
#[derive(Clone, Debug)]
pub struct HadamardTable {
    pub x: Vec<Dd>,
    pub points: Vec<Vec<Dd>>,
    /// values[k][i] = V^k_x(points[i])
    pub values: Vec<Vec<Dd>>,
    pub max_k: usize,
}

pub fn solve_transport(
    model: &SpacetimeModel,
    x: &[Dd],
    max_k: usize,
    points: &[Vec<Dd>],
) -> Result<HadamardTable> {
    for p in points {
        if p.len() != model.dim {
            return Err(HlError::Domain("point dimension mismatch".into()));
        }
    }
    let mut values = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        let row: Vec<Dd> = points.iter().map(|p| model.v_value(x, k, p)).collect();
        values.push(row);
    }
    Ok(HadamardTable {
        x: x.to_vec(),
        points: points.to_vec(),
        values,
        max_k,
    })
}

/// V^k(z) = sum_{m<=k} binom(k,m) z^m V^{k-m}: the coefficient table of
/// the spectrally shifted operator P - z.
pub fn shift_coefficients(table: &HadamardTable, z: Dd) -> HadamardTable {
    let mut values = Vec::with_capacity(table.max_k + 1);
    for k in 0..=table.max_k {
        let mut row = vec![Dd::ZERO; table.points.len()];
        let mut binom = Dd::ONE;
        let mut zp = Dd::ONE;
        for m in 0..=k {
            if m > 0 {
                binom = binom * Dd::from_int((k - m + 1) as i64) / Dd::from_int(m as i64);
                zp = zp * z;
            }
            for (i, r) in row.iter_mut().enumerate() {
                *r = *r + binom * zp * table.values[k - m][i];
            }
        }
        values.push(row);
    }
    HadamardTable {
        x: table.x.clone(),
        points: table.points.clone(),
        values,
        max_k: table.max_k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xs: &[f64]) -> Vec<Dd> {
        xs.iter().map(|&v| Dd::from_f64(v)).collect()
    }

    #[test]
    fn rho_on_reference_fields() {
        let x = pt(&[0.0, 0.0]);
        let y = pt(&[0.7, 0.2]);
        // constant field: gradient zero -> rho = 0
        assert!(rho_apply(&x, &y, &pt(&[0.0, 0.0])).is_zero());
        // V = Gamma_x: grad = (2 t, -2 s) at y=(t,s); rho = -4 Gamma
        let grad = vec![Dd::TWO * y[0], -(Dd::TWO) * y[1]];
        let got = rho_apply(&x, &y, &grad);
        let gamma = y[0] * y[0] - y[1] * y[1];
        assert!((got + Dd::from_int(4) * gamma).abs().to_f64() < 1e-30);
        // linearity in the field
        let g1 = pt(&[0.3, -0.1]);
        let g2 = pt(&[-0.2, 0.5]);
        let sum: Vec<Dd> = g1.iter().zip(&g2).map(|(&a, &b)| a + b).collect();
        let lhs = rho_apply(&x, &y, &sum);
        let rhs = rho_apply(&x, &y, &g1) + rho_apply(&x, &y, &g2);
        assert!((lhs - rhs).abs().to_f64() < 1e-30);
    }

    #[test]
    fn zero_potential_kills_higher_coefficients() {
        let c = ConstPotential { value: Dd::ZERO, dim: 3 };
        let model = SpacetimeModel { dim: 3, potential: &c };
        let x = pt(&[0.0, 0.0, 0.0]);
        let y = pt(&[0.6, 0.1, -0.2]);
        assert!((model.v_value(&x, 0, &y) - Dd::ONE).is_zero());
        for k in 1..=3 {
            assert!(model.v_value(&x, k, &y).abs().to_f64() < 1e-28);
        }
    }

    #[test]
    fn constant_potential_gives_geometric_family() {
        // c = -mu: V^k = mu^k everywhere (the mass-mu family)
        let mu = Dd::from_f64(0.3);
        let c = ConstPotential { value: -mu, dim: 2 };
        let model = SpacetimeModel { dim: 2, potential: &c };
        let x = pt(&[0.0, 0.0]);
        for y in [pt(&[0.5, 0.0]), pt(&[0.8, 0.3]), pt(&[-0.4, 0.1])] {
            let mut want = Dd::ONE;
            for k in 0..=3 {
                let got = model.v_value(&x, k, &y);
                assert!(
                    (got - want).abs().to_f64() < 1e-20,
                    "k={k}: {} vs {}",
                    got.to_f64(),
                    want.to_f64()
                );
                want = want * mu;
            }
        }
    }

    #[test]
    fn first_coefficient_is_minus_potential_at_base() {
        let g = GaussianPotential {
            amp: Dd::from_f64(0.7),
            width: Dd::from_f64(2.0),
            center: pt(&[0.3, -0.1]),
        };
        let model = SpacetimeModel { dim: 2, potential: &g };
        let x = pt(&[0.1, 0.2]);
        // V^1(x) = -c(x): evaluate at y -> x (the integral rep is exact at y = x)
        let v1 = model.v_value(&x, 1, &x);
        let want = -g.eval(&x);
        assert!((v1 - want).abs().to_f64() < 1e-25);
    }

    #[test]
    fn gaussian_derivatives_match_finite_differences() {
        let g = GaussianPotential {
            amp: Dd::from_f64(1.3),
            width: Dd::from_f64(1.5),
            center: pt(&[0.0, 0.5]),
        };
        let y = pt(&[0.4, -0.3]);
        let h = 1e-5;
        for mu in 0..2usize {
            let mut beta = vec![0usize; 2];
            beta[mu] = 1;
            let exact = g.deriv(&beta, &y).to_f64();
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[mu] = yp[mu] + Dd::from_f64(h);
            ym[mu] = ym[mu] - Dd::from_f64(h);
            let fd = (g.eval(&yp) - g.eval(&ym)).to_f64() / (2.0 * h);
            assert!((exact - fd).abs() < 1e-9, "mu={mu}: {exact} vs {fd}");
        }
        // second derivative
        let exact2 = g.deriv(&[2, 0], &y).to_f64();
        let mut yp = y.clone();
        let mut ym = y.clone();
        yp[0] = yp[0] + Dd::from_f64(h);
        ym[0] = ym[0] - Dd::from_f64(h);
        let fd2 =
            (g.eval(&yp) + g.eval(&ym) - Dd::TWO * g.eval(&y)).to_f64() / (h * h);
        assert!((exact2 - fd2).abs() < 1e-5);
    }

    #[test]
    fn transport_residual_vanishes() {
        // (rho - 2k) V^k = 2k P V^{k-1} along a ray, k = 1, 2
        let g = GaussianPotential {
            amp: Dd::from_f64(0.5),
            width: Dd::from_f64(2.0),
            center: pt(&[0.0, 0.0]),
        };
        let model = SpacetimeModel { dim: 2, potential: &g };
        let x = pt(&[0.0, 0.0]);
        let u = pt(&[1.0, 0.25]);
        for k in 1..=2usize {
            for &t in &[0.2, 0.5, 0.9] {
                let t = Dd::from_f64(t);
                let y = vec![x[0] + t * u[0], x[1] + t * u[1]];
                let grad = vec![
                    model.v_deriv(&x, k, &[1, 0], &y),
                    model.v_deriv(&x, k, &[0, 1], &y),
                ];
                let rho = rho_apply(&x, &y, &grad);
                let vk = model.v_value(&x, k, &y);
                let pv = model.pv_deriv(&x, k - 1, &[0, 0], &y);
                let residual = rho - Dd::from_int(2 * k as i64) * vk
                    - Dd::from_int(2 * k as i64) * pv;
                assert!(
                    residual.abs().to_f64() < 1e-6,
                    "k={k} t={}: residual {:e}",
                    t.to_f64(),
                    residual.abs().to_f64()
                );
            }
        }
    }

    #[test]
    fn shift_consistency_on_small_model() {
        // solve with potential c - z directly vs binomial shift of the
        // c-solution: Prop-style consistency, k <= 2, one z
        let g = GaussianPotential {
            amp: Dd::from_f64(0.4),
            width: Dd::from_f64(2.5),
            center: pt(&[0.2, 0.0]),
        };
        let x = pt(&[0.0, 0.0]);
        let points = vec![pt(&[0.5, 0.1]), pt(&[0.8, -0.2])];
        let model = SpacetimeModel { dim: 2, potential: &g };
        let base = solve_transport(&model, &x, 2, &points).unwrap();
        let z = Dd::from_f64(0.15);
        let shifted = shift_coefficients(&base, z);

        // direct solve with the shifted potential: c_z(y) = c(y) - z
        struct Shifted<'b> {
            inner: &'b GaussianPotential,
            z: Dd,
        }
        impl<'b> Potential for Shifted<'b> {
            fn dim(&self) -> usize {
                self.inner.dim()
            }
            fn deriv(&self, beta: &[usize], y: &[Dd]) -> Dd {
                let v = self.inner.deriv(beta, y);
                if beta.iter().all(|&b| b == 0) {
                    v - self.z
                } else {
                    v
                }
            }
        }
        let sh = Shifted { inner: &g, z };
        let model_z = SpacetimeModel { dim: 2, potential: &sh };
        let direct = solve_transport(&model_z, &x, 2, &points).unwrap();
        for k in 0..=2 {
            for i in 0..points.len() {
                let a = shifted.values[k][i].to_f64();
                let b = direct.values[k][i].to_f64();
                let rel = (a - b).abs() / b.abs().max(1e-10);
                assert!(rel < 1e-7, "k={k} i={i}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn shift_edge_cases() {
        let c = ConstPotential { value: Dd::ZERO, dim: 2 };
        let model = SpacetimeModel { dim: 2, potential: &c };
        let x = pt(&[0.0, 0.0]);
        let points = vec![pt(&[0.7, 0.2])];
        let base = solve_transport(&model, &x, 3, &points).unwrap();
        // z = 0 is the identity
        let same = shift_coefficients(&base, Dd::ZERO);
        for k in 0..=3 {
            assert!((same.values[k][0] - base.values[k][0]).is_zero());
        }
        // c = 0: V^k(z) = z^k
        let z = Dd::from_f64(0.4);
        let shifted = shift_coefficients(&base, z);
        let mut want = Dd::ONE;
        for k in 0..=3 {
            assert!((shifted.values[k][0] - want).abs().to_f64() < 1e-25);
            want = want * z;
        }
    }
}
