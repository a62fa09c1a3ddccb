//! Flat Lorentzian geometry: the quadratic form, causal classification,
//! normalization constants and function-regime values of the causal
//! Riesz family, timelike curves with their speed profile nu, and the
//! curve pairing that continues the distribution family in the order
//! parameter.
//!
//! Conventions (fixed once, used consistently everywhere): signature is
//! mostly-plus, and gamma(v) = v_0^2 - sum_i v_i^2 is positive on
//! timelike vectors.

use crate::cx::Cx;
use crate::dd::Dd;
use crate::error::{HlError, Result};
use crate::gamma::recip_gamma;
use crate::jet::Jet;
use crate::mellin::mellin_prime;
use crate::profile::{OddPart, PowWeight, Product, Profile};

/// gamma(v) = v_0^2 - sum_{i>0} v_i^2 (positive on timelike vectors).
pub fn gamma_form(v: &[Dd]) -> Dd {
    let mut s = v[0] * v[0];
    for vi in &v[1..] {
        s = s - *vi * *vi;
    }
    s
}

/// Gamma_x(y) = gamma(y - x).
pub fn big_gamma(x: &[Dd], y: &[Dd]) -> Dd {
    assert_eq!(x.len(), y.len());
    let d: Vec<Dd> = x.iter().zip(y).map(|(&a, &b)| b - a).collect();
    gamma_form(&d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

pub fn classify(v: &[Dd]) -> CausalClass {
    let g = gamma_form(v);
    if g > Dd::ZERO {
        CausalClass::Timelike
    } else if g < Dd::ZERO {
        CausalClass::Spacelike
    } else {
        CausalClass::Lightlike
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Future,
    Past,
}

/// Normalization c_alpha = 2^{1-a} pi^{(2-d)/2} / (Gamma(a/2) Gamma((a-d)/2 + 1)),
/// entire in a through the reciprocal gammas.
pub fn c_alpha(a: Cx, d: usize) -> Cx {
    let two = Cx::real(Dd::TWO);
    let pref = two.powc(Cx::ONE - a)
        * Cx::real(Dd::PI).powc(Cx::real(Dd::from_int(2 - d as i64) * Dd::from_f64(0.5)));
    let half = Cx::real(Dd::from_f64(0.5));
    pref * recip_gamma(a * half)
        * recip_gamma((a - Cx::real(Dd::from_int(d as i64))) * half + Cx::ONE)
}

/// Function-regime value of the causal family: c_alpha Gamma_x(y)^{(a-d)/2}
/// inside the chosen cone, zero outside. Only meaningful for Re a > d.
pub fn riesz_eval(a: Cx, x: &[Dd], y: &[Dd], branch: Branch) -> Result<Cx> {
    let d = x.len();
    if a.re <= Dd::from_int(d as i64) {
        return Err(HlError::Domain(
            "function-regime evaluation requires Re a > d".into(),
        ));
    }
    let g = big_gamma(x, y);
    let dt = y[0] - x[0];
    let inside = g > Dd::ZERO
        && match branch {
            Branch::Future => dt > Dd::ZERO,
            Branch::Past => dt < Dd::ZERO,
        };
    if !inside {
        return Ok(Cx::ZERO);
    }
    let p = (a - Cx::real(Dd::from_int(d as i64))).scale(Dd::from_f64(0.5));
    Ok(c_alpha(a, d) * Cx::real(g).powc(p))
}

/// A timelike curve through the base point at t = 0, with its squared
/// speed profile nu(t) = Gamma_x(w(t)) / t^2 available as an analytic jet.
pub trait Curve {
    /// Ambient dimension d.
    fn dim(&self) -> usize;
    /// Parameter radius on which the curve (and nu > 0) is valid.
    fn domain_radius(&self) -> Dd;
    fn position(&self, t: Dd) -> Vec<Dd>;
    fn nu_jet(&self, t: Dd, order: usize) -> Jet;

    fn nu(&self, t: Dd) -> Dd {
        self.nu_jet(t, 0).value()
    }
}

/// Unit-speed straight line t -> x + t e_0: nu is identically 1.
#[derive(Clone, Debug)]
pub struct StraightCurve {
    pub dim: usize,
    pub base: Vec<Dd>,
}

impl StraightCurve {
    pub fn at_origin(dim: usize) -> StraightCurve {
        StraightCurve { dim, base: vec![Dd::ZERO; dim] }
    }
}

impl Curve for StraightCurve {
    fn dim(&self) -> usize {
        self.dim
    }
    fn domain_radius(&self) -> Dd {
        Dd::from_int(16)
    }
    fn position(&self, t: Dd) -> Vec<Dd> {
        let mut p = self.base.clone();
        p[0] = p[0] + t;
        p
    }
    fn nu_jet(&self, _t: Dd, order: usize) -> Jet {
        Jet::constant(Dd::ONE, order)
    }
}

/// Uniformly accelerated curve in d = 2: w(t) = (sinh t, cosh t - 1).
/// Gamma_0(w(t)) = 2 cosh t - 2, so nu(t) = 2 (cosh t - 1) / t^2, an
/// entire function with nu(0) = 1.
#[derive(Clone, Copy, Debug)]
pub struct BoostCurve;

impl Curve for BoostCurve {
    fn dim(&self) -> usize {
        2
    }
    fn domain_radius(&self) -> Dd {
        Dd::from_int(3)
    }
    fn position(&self, t: Dd) -> Vec<Dd> {
        let e = t.exp();
        let ei = e.recip();
        let half = Dd::from_f64(0.5);
        vec![(e - ei) * half, (e + ei) * half - Dd::ONE]
    }
    fn nu_jet(&self, t: Dd, order: usize) -> Jet {
        if t.abs() > Dd::from_f64(0.25) {
            // nu = 2 (cosh t - 1) / t^2 directly as a jet quotient
            let v = Jet::var(t, order);
            let ch = v.exp().add(&v.neg().exp()).scale(Dd::from_f64(0.5));
            let num = ch.add_const(-Dd::ONE).scale(Dd::TWO);
            num.div(&v.mul(&v))
        } else {
            // entire series nu(t) = sum_n 2 t^{2n} / (2n+2)!; 16 terms are
            // far below the noise floor for |t| <= 1/4
            let mut coeffs = Vec::with_capacity(32);
            let mut fact = Dd::TWO; // (2n+2)! starting at n=0
            for n in 0..16 {
                if n > 0 {
                    fact = fact * Dd::from_int(2 * n + 1) * Dd::from_int(2 * n + 2);
                }
                coeffs.push(Dd::TWO / fact);
                coeffs.push(Dd::ZERO);
            }
            Jet::var(t, order).poly(&coeffs)
        }
    }
}

/// Isometric embedding of a curve into a higher dimension by padding
/// spatial zero coordinates; nu is unchanged.
#[derive(Clone, Debug)]
pub struct PaddedCurve<C> {
    pub base: C,
    pub dim: usize,
}

impl<C: Curve> Curve for PaddedCurve<C> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn domain_radius(&self) -> Dd {
        self.base.domain_radius()
    }
    fn position(&self, t: Dd) -> Vec<Dd> {
        let mut p = self.base.position(t);
        p.resize(self.dim, Dd::ZERO);
        p
    }
    fn nu_jet(&self, t: Dd, order: usize) -> Jet {
        self.base.nu_jet(t, order)
    }
}

/// Lift of a curve in dimension d to the product with a line:
/// w_xi(t) = (w(xi t), sqrt(xi^2 - 1) t), with
/// nu_lift(t) = xi^2 (nu(xi t) - 1) + 1.
#[derive(Clone, Debug)]
pub struct ProductLift<C> {
    pub base: C,
    pub xi: Dd,
}

impl<C: Curve> Curve for ProductLift<C> {
    fn dim(&self) -> usize {
        self.base.dim() + 1
    }
    fn domain_radius(&self) -> Dd {
        self.base.domain_radius() / self.xi
    }
    fn position(&self, t: Dd) -> Vec<Dd> {
        let mut p = self.base.position(t * self.xi);
        p.push((self.xi * self.xi - Dd::ONE).sqrt() * t);
        p
    }
    fn nu_jet(&self, t: Dd, order: usize) -> Jet {
        let xi2 = self.xi * self.xi;
        self.base
            .nu_jet(t * self.xi, order)
            .compose_linear(self.xi)
            .add_const(-Dd::ONE)
            .scale(xi2)
            .add_const(Dd::ONE)
    }
}

/// Pairing of V . R(a, x) pulled back along the curve with a test
/// profile g, defined for every a by the continued-transform formula:
/// 2^{2-a} pi^{(2-d)/2} / Gamma(a/2) . M'(((nu^{(a-d)/2}) (V o w) g)_odd)(a-d+1).
pub fn paired_riesz_along_curve(
    a: Cx,
    curve: &dyn Curve,
    v_profile: &dyn Profile,
    g: &dyn Profile,
) -> Result<Cx> {
    let d = curve.dim();
    // the continued-transform formula assumes a future-directed curve;
    // a past-directed parameterization flips the two cone branches
    let probe = curve.domain_radius() * Dd::from_f64(1e-3);
    let fwd = curve.position(probe)[0] - curve.position(Dd::ZERO)[0];
    let orient = if fwd > Dd::ZERO { Dd::ONE } else { -Dd::ONE };
    let p = (a - Cx::real(Dd::from_int(d as i64))).scale(Dd::from_f64(0.5));
    let nu_pow = PowWeight {
        weight: |t: Dd, order: usize| curve.nu_jet(t, order),
        p,
        radius: curve.domain_radius(),
    };
    let h = OddPart(Product { a: Product { a: nu_pow, b: v_profile }, b: g });
    let m = mellin_prime(&h, a - Cx::real(Dd::from_int(d as i64)) + Cx::ONE)?;
    let two = Cx::real(Dd::TWO);
    let pref = two.powc(Cx::real(Dd::TWO) - a)
        * Cx::real(Dd::PI)
            .powc(Cx::real(Dd::from_int(2 - d as i64) * Dd::from_f64(0.5)))
        * recip_gamma(a.scale(Dd::from_f64(0.5)));
    Ok((pref * m).scale(orient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{BumpOdd, ConstProfile, EvenPart, Scaled};
    use crate::quad;

    fn v(xs: &[f64]) -> Vec<Dd> {
        xs.iter().map(|&x| Dd::from_f64(x)).collect()
    }

    #[test]
    fn quadratic_form_values() {
        assert_eq!(gamma_form(&v(&[1.0, 0.0, 0.0])).to_f64(), 1.0);
        assert_eq!(gamma_form(&v(&[0.0, 1.0, 0.0])).to_f64(), -1.0);
        assert_eq!(gamma_form(&v(&[1.0, 1.0])).to_f64(), 0.0);
        assert_eq!(big_gamma(&v(&[0.0, 0.0]), &v(&[2.0, 0.0])).to_f64(), 4.0);
        assert_eq!(big_gamma(&v(&[0.0, 0.0]), &v(&[1.0, 2.0])).to_f64(), -3.0);
        let x = v(&[0.3, -0.2, 4.0]);
        assert!(big_gamma(&x, &x).is_zero());
        assert_eq!(classify(&v(&[2.0, 1.0])), CausalClass::Timelike);
        assert_eq!(classify(&v(&[1.0, 2.0])), CausalClass::Spacelike);
        assert_eq!(classify(&v(&[1.0, -1.0])), CausalClass::Lightlike);
    }

    #[test]
    fn c_alpha_values() {
        let c22 = c_alpha(Cx::from_f64(2.0, 0.0), 2);
        assert!((c22 - Cx::from_f64(0.5, 0.0)).abs().to_f64() < 1e-18);
        // entire zero where the gamma denominator has a pole
        assert!(c_alpha(Cx::ZERO, 4).abs2().is_zero());
        // even-order values against the factorial form
        for d in 2..=6usize {
            for k in 0..4i64 {
                let a = Cx::from_f64((2 * k + 2) as f64, 0.0);
                let got = c_alpha(a, d);
                let mut kf = Dd::ONE;
                for i in 2..=k {
                    kf = kf * Dd::from_int(i);
                }
                let want = Cx::real(Dd::TWO.powi(-1 - 2 * k as i32) / kf)
                    * Cx::real(Dd::PI)
                        .powc(Cx::real(Dd::from_int(2 - d as i64) * Dd::from_f64(0.5)))
                    * recip_gamma(Cx::real(
                        Dd::from_int(k + 2) - Dd::from_int(d as i64) * Dd::from_f64(0.5),
                    ));
                assert!((got - want).abs().to_f64() < 1e-17, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn riesz_function_regime() {
        // support: spacelike separation gives zero
        let x = v(&[0.0, 0.0]);
        assert!(riesz_eval(Cx::from_f64(4.0, 0.0), &x, &v(&[1.0, 3.0]), Branch::Future)
            .unwrap()
            .abs2()
            .is_zero());
        // a = 4, d = 2, y = (2, 0): c_4 * Gamma = c_4 * 4
        let got = riesz_eval(Cx::from_f64(4.0, 0.0), &x, &v(&[2.0, 0.0]), Branch::Future)
            .unwrap();
        let want = c_alpha(Cx::from_f64(4.0, 0.0), 2).scale(Dd::from_int(4));
        assert!((got - want).abs().to_f64() < 1e-20);
        // branch antisymmetry under time reflection
        let yp = v(&[2.0, 0.5]);
        let ym = v(&[-2.0, 0.5]);
        let a = Cx::from_f64(5.0, 0.0);
        let fp = riesz_eval(a, &x, &yp, Branch::Future).unwrap();
        let pm = riesz_eval(a, &x, &ym, Branch::Past).unwrap();
        assert!((fp - pm).abs().to_f64() < 1e-20);
        assert!(riesz_eval(a, &x, &ym, Branch::Future).unwrap().abs2().is_zero());
    }

    #[test]
    fn curve_speed_profiles() {
        let line = StraightCurve::at_origin(4);
        assert!((line.nu(Dd::from_f64(0.7)) - Dd::ONE).is_zero());
        // boost: nu(0) = 1, nonconstant, and matches Gamma/t^2 directly
        let b = BoostCurve;
        assert!((b.nu(Dd::ZERO) - Dd::ONE).abs().to_f64() < 1e-30);
        let t = Dd::from_f64(0.8);
        let w = b.position(t);
        let direct = big_gamma(&v(&[0.0, 0.0]), &w) / (t * t);
        assert!((b.nu(t) - direct).abs().to_f64() < 1e-28);
        assert!((b.nu(t) - Dd::ONE).abs().to_f64() > 1e-3);
        // both jet branches match the direct value and an FD derivative
        for &tc in &[0.2499f64, 0.2501] {
            let tc = Dd::from_f64(tc);
            let j = b.nu_jet(tc, 2);
            let w = b.position(tc);
            let direct = big_gamma(&v(&[0.0, 0.0]), &w) / (tc * tc);
            assert!((j.value() - direct).abs().to_f64() < 1e-27);
            let h = Dd::from_f64(1e-5);
            let fd = (b.nu(tc + h) - b.nu(tc - h)) / (Dd::TWO * h);
            assert!((j.derivative(1) - fd).abs().to_f64() < 1e-9);
        }
    }

    #[test]
    fn product_lift_properties() {
        let xi = Dd::from_f64(1.3);
        let lift = ProductLift { base: BoostCurve, xi };
        assert_eq!(lift.dim(), 3);
        // nu_lift(0) = 1 regardless of xi
        assert!((lift.nu(Dd::ZERO) - Dd::ONE).abs().to_f64() < 1e-28);
        // consistency with the ambient quadratic form
        let t = Dd::from_f64(0.5);
        let w = lift.position(t);
        let g = big_gamma(&v(&[0.0, 0.0, 0.0]), &w);
        assert!((lift.nu(t) - g / (t * t)).abs().to_f64() < 1e-26);
        // unit-speed at the origin: gamma(w') = 1 via finite differences
        let h = Dd::from_f64(1e-6);
        let wp = lift.position(h);
        let wm = lift.position(-h);
        let vel: Vec<Dd> = wp
            .iter()
            .zip(&wm)
            .map(|(&a, &b)| (a - b) / (Dd::TWO * h))
            .collect();
        assert!((gamma_form(&vel) - Dd::ONE).abs().to_f64() < 1e-10);
    }

    #[test]
    fn pairing_even_profile_vanishes() {
        let line = StraightCurve::at_origin(3);
        let even_g = EvenPart(BumpOdd);
        let one = ConstProfile(Cx::ONE);
        let val = paired_riesz_along_curve(Cx::from_f64(4.0, 0.0), &line, &one, &even_g)
            .unwrap();
        assert!(val.abs().to_f64() < 1e-25);
    }

    #[test]
    fn pairing_matches_function_regime() {
        // Re a > d: pairing equals direct quadrature of the two branches
        let one = ConstProfile(Cx::ONE);
        for (dim, curve) in [(2usize, &BoostCurve as &dyn Curve), (2, &StraightCurve::at_origin(2))]
        {
            for &av in &[5.0, 6.5] {
                let a = Cx::from_f64(av, 0.0);
                let g = Scaled { inner: BumpOdd, s: Dd::from_f64(0.8) };
                let paired = paired_riesz_along_curve(a, curve, &one, &g).unwrap();
                // direct: 2 c_a int_0^R t^{a-d} nu^{(a-d)/2} g_odd dt
                let p = (av - dim as f64) / 2.0;
                let f = |t: Dd| {
                    if t.is_zero() {
                        return Cx::ZERO;
                    }
                    let nu = curve.nu(t);
                    let gv = (g.eval(t) - g.eval(-t)).scale(Dd::from_f64(0.5));
                    Cx::real(t.powf(Dd::from_f64(av - dim as f64)) * nu.powf(Dd::from_f64(p)))
                        * gv
                };
                let q = quad::integrate_cx(&f, Dd::ZERO, Dd::from_f64(0.8), 1e-24).unwrap();
                let direct = c_alpha(a, dim) * q.scale(Dd::TWO);
                let rel = (paired - direct).abs().to_f64() / direct.abs().to_f64().max(1e-30);
                assert!(rel < 1e-9, "a={av} dim={dim}: rel {rel:e}");
            }
        }
    }

    #[test]
    fn pairing_holomorphy_surrogate() {
        // value at a agrees with Richardson extrapolation from a +/- h
        let line = StraightCurve::at_origin(3);
        let one = ConstProfile(Cx::ONE);
        let g = Scaled { inner: BumpOdd, s: Dd::from_f64(0.6) };
        for &av in &[2.0, 3.0, 4.0, 1.0] {
            let f = |x: f64| {
                paired_riesz_along_curve(Cx::from_f64(x, 0.0), &line, &one, &g).unwrap()
            };
            let h = 1e-3;
            let mid = (f(av + h) + f(av - h)).scale(Dd::from_f64(0.5));
            let wide = (f(av + 2.0 * h) + f(av - 2.0 * h)).scale(Dd::from_f64(0.5));
            // eliminate the h^2 term
            let extrap = (mid.scale(Dd::from_int(4)) - wide).scale(Dd::from_f64(1.0 / 3.0));
            let exact = f(av);
            assert!((exact - extrap).abs().to_f64() < 1e-8, "a={av}");
        }
    }

    #[test]
    fn pairing_origin_limit_vanishes() {
        // a -> 0: the difference family contracts to a point measure whose
        // odd-part pairing tends to zero
        let line = StraightCurve::at_origin(2);
        let one = ConstProfile(Cx::ONE);
        let g = Scaled { inner: BumpOdd, s: Dd::from_f64(0.7) };
        let mut prev = f64::INFINITY;
        for j in 1..=4 {
            let a = Cx::from_f64(10f64.powi(-j), 0.0);
            let val = paired_riesz_along_curve(a, &line, &one, &g).unwrap();
            let mag = val.abs().to_f64();
            assert!(mag < prev);
            prev = mag;
        }
        assert!(prev < 1e-3);
    }
}
