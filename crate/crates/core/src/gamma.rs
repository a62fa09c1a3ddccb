//! Complex gamma function, its entire reciprocal, and the generalized
//! binomial coefficient, all in double-double precision.
//!
//! Gamma is computed with a Spouge approximation (a = 24), which in
//! double-double arithmetic delivers roughly 19 significant digits --
//! comfortably beyond every tolerance used downstream. The reciprocal
//! is computed so that it is entire: at non-positive real integers it
//! returns an exact zero rather than dividing by an overflowing pole.

use crate::cx::Cx;
use crate::dd::Dd;
use crate::error::{HlError, Result};
use once_cell::sync::Lazy;

const SPOUGE_A: usize = 24;

/// Spouge coefficients c_1..c_{a-1}; c_0 = sqrt(2*pi) is handled inline.
static SPOUGE_C: Lazy<Vec<Dd>> = Lazy::new(|| {
    let a = SPOUGE_A as i64;
    let mut cs = Vec::with_capacity(SPOUGE_A - 1);
    let mut fact = Dd::ONE; // (k-1)!
    for k in 1..a {
        if k > 1 {
            fact = fact * Dd::from_int(k - 1);
        }
        let amk = Dd::from_int(a - k);
        let half = Dd::from_f64(0.5);
        // (a-k)^{k - 1/2} * e^{a-k} / (k-1)!, alternating sign
        let mag = amk.powf(Dd::from_int(k) - half) * amk.exp() / fact;
        cs.push(if k % 2 == 1 { mag } else { -mag });
    }
    cs
});

/// Gamma(z+1) for Re(z) >= -0.5 via Spouge's formula.
fn spouge_gamma_zp1(z: Cx) -> Cx {
    let a = Dd::from_int(SPOUGE_A as i64);
    let mut s = Cx::real((Dd::TWO * Dd::PI).sqrt());
    for (i, &c) in SPOUGE_C.iter().enumerate() {
        let k = Dd::from_int(i as i64 + 1);
        s = s + Cx::real(c) * (z + Cx::real(k)).recip();
    }
    let za = z + Cx::real(a);
    let half = Cx::real(Dd::from_f64(0.5));
    za.powc(z + half) * (-za).exp() * s
}

fn is_nonpos_real_int(z: Cx) -> bool {
    if !z.im.is_zero() {
        return false;
    }
    let r = z.re.round();
    (z.re - r).is_zero() && !(r > Dd::ZERO)
}

/// The gamma function. Poles at non-positive integers are reported as errors.
pub fn gamma(z: Cx) -> Result<Cx> {
    if is_nonpos_real_int(z) {
        return Err(HlError::Pole(format!(
            "gamma pole at {}",
            z.re.to_f64()
        )));
    }
    if z.re >= Dd::from_f64(0.5) {
        Ok(spouge_gamma_zp1(z - Cx::ONE))
    } else {
        // reflection: Gamma(z) = pi / (sin(pi z) * Gamma(1 - z))
        let g1mz = spouge_gamma_zp1(-z);
        Ok(Cx::real(Dd::PI) * (z.sin_pi() * g1mz).recip())
    }
}

/// 1/Gamma(z), entire; exactly zero at non-positive real integers.
pub fn recip_gamma(z: Cx) -> Cx {
    if is_nonpos_real_int(z) {
        return Cx::ZERO;
    }
    if z.re >= Dd::from_f64(0.5) {
        spouge_gamma_zp1(z - Cx::ONE).recip()
    } else {
        // 1/Gamma(z) = sin(pi z) * Gamma(1 - z) / pi
        z.sin_pi() * spouge_gamma_zp1(-z).scale(Dd::PI.recip())
    }
}

/// Generalized binomial coefficient: product_{j=0}^{n-1} (a - j) / n!.
pub fn generalized_binomial(a: Cx, n: usize) -> Cx {
    let mut num = Cx::ONE;
    let mut den = Dd::ONE;
    for j in 0..n {
        num = num * (a - Cx::real(Dd::from_int(j as i64)));
        den = den * Dd::from_int(j as i64 + 1);
    }
    num.scale(den.recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cxclose(a: Cx, b: Cx, tol: f64) {
        let d = (a - b).abs().to_f64();
        let s = b.abs().to_f64().max(1.0);
        assert!(d <= tol * s, "got {:?}, want {:?} (err {:.3e})", a, b, d / s);
    }

    #[test]
    fn integer_values() {
        cxclose(gamma(Cx::from_f64(1.0, 0.0)).unwrap(), Cx::ONE, 1e-18);
        cxclose(
            gamma(Cx::from_f64(5.0, 0.0)).unwrap(),
            Cx::from_f64(24.0, 0.0),
            1e-18,
        );
        cxclose(
            recip_gamma(Cx::from_f64(3.0, 0.0)),
            Cx::from_f64(0.5, 0.0),
            1e-18,
        );
    }

    #[test]
    fn half_integer_values() {
        let g_half = Dd::new(1.772453850905516, -7.666586499825799e-17);
        let g_m3half = Dd::new(2.363271801207355, -1.0222115333101065e-16);
        cxclose(gamma(Cx::real(Dd::from_f64(0.5))).unwrap(), Cx::real(g_half), 1e-18);
        cxclose(
            gamma(Cx::real(Dd::from_f64(-1.5))).unwrap(),
            Cx::real(g_m3half),
            1e-18,
        );
    }

    #[test]
    fn rational_argument() {
        let g_7_3 = Dd::new(1.190639348758999, -6.826174262457534e-17);
        let z = Cx::real(Dd::from_int(7) / Dd::from_int(3));
        cxclose(gamma(z).unwrap(), Cx::real(g_7_3), 1e-18);
    }

    #[test]
    fn complex_arguments() {
        let g_c = Cx::new(
            Dd::new(0.3099362258407414, -2.173964212259689e-17),
            Dd::new(0.7340842736214813, 1.919244563579842e-17),
        );
        cxclose(gamma(Cx::from_f64(2.5, 1.5)).unwrap(), g_c, 1e-18);

        let g_cneg = Cx::new(
            Dd::new(-0.06227507201368824, -1.6465454552643677e-18),
            Dd::new(-0.2748698203813969, 1.3077655031076905e-17),
        );
        cxclose(gamma(Cx::from_f64(-2.3, 0.7)).unwrap(), g_cneg, 1e-18);

        let rg_c = Cx::new(
            Dd::new(0.27147857455184593, 3.499760169460223e-18),
            Dd::new(-1.1534620522664343, -1.0734971147929825e-16),
        );
        cxclose(recip_gamma(Cx::from_f64(0.25, -0.75)), rg_c, 1e-18);
    }

    #[test]
    fn reciprocal_zero_at_poles() {
        assert!(recip_gamma(Cx::ZERO).abs2().is_zero());
        assert!(recip_gamma(Cx::from_f64(-5.0, 0.0)).abs2().is_zero());
        assert!(gamma(Cx::from_f64(-2.0, 0.0)).is_err());
    }

    #[test]
    fn recurrence_invariant() {
        // Gamma(z+1) = z * Gamma(z) across the reflection boundary
        for &(re, im) in &[(0.3, 0.4), (-0.7, 1.1), (-3.2, -0.5), (4.0, 2.0)] {
            let z = Cx::from_f64(re, im);
            let lhs = gamma(z + Cx::ONE).unwrap();
            let rhs = z * gamma(z).unwrap();
            cxclose(lhs, rhs, 1e-17);
        }
    }

    #[test]
    fn binomial_values() {
        cxclose(generalized_binomial(Cx::from_f64(3.7, 0.2), 0), Cx::ONE, 0.0);
        cxclose(
            generalized_binomial(Cx::from_f64(-1.0, 0.0), 3),
            Cx::from_f64(-1.0, 0.0),
            1e-30,
        );
        cxclose(
            generalized_binomial(Cx::from_f64(0.5, 0.0), 2),
            Cx::from_f64(-0.125, 0.0),
            1e-30,
        );
        // consistency with gamma: binom(a, n) = Gamma(a+1)/(Gamma(n+1)Gamma(a-n+1))
        let a = Cx::from_f64(2.6, 0.9);
        let n = 4usize;
        let byg = gamma(a + Cx::ONE).unwrap()
            * recip_gamma(Cx::from_f64(n as f64 + 1.0, 0.0))
            * recip_gamma(a - Cx::from_f64(n as f64 - 1.0, 0.0));
        cxclose(generalized_binomial(a, n), byg, 1e-17);
    }
}
