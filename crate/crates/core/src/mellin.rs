//! The Mellin transform of a compactly supported smooth profile,
//! meromorphically continued to the whole plane, together with the
//! gamma-normalized variants used by the pairing formulas.
//!
//! Continuation scheme: split the defining integral at eps = R/8. The
//! outer piece int_eps^R t^{a-1} h(t) dt is entire in a and a plain
//! quadrature of profile *values*. The inner piece is expanded through
//! the Taylor series of h at 0, giving
//! int_0^eps t^{a-1} h(t) dt = sum_k c_k eps^{a+k} / (a+k),
//! valid for every a once truncated at an order where c_k eps^k is
//! below the working precision (the profiles are analytic at 0 with
//! convergence radius comparable to R, so the terms contract like
//! 8^{-k}). The simple poles of the transform at a = -k appear
//! explicitly in the k-th term with residue c_k = h^(k)(0)/k!; when the
//! coefficient vanishes the term is absent and the continued value is
//! finite.

use crate::cx::Cx;
use crate::dd::Dd;
use crate::error::{HlError, Result};
use crate::gamma::recip_gamma;
use crate::precision;
use crate::profile::{Profile, UNBOUNDED};
use crate::quad;

/// Taylor order for the inner-piece expansion (8^{-41} is far below the
/// double-double noise floor).
const TAYLOR_N: usize = 40;

#[derive(Clone, Copy, Debug)]
pub enum MellinValue {
    /// Finite value of the continued transform.
    Value(Cx),
    /// Simple pole at the requested argument, with its residue.
    Pole { residue: Cx },
}

impl MellinValue {
    pub fn value(self) -> Result<Cx> {
        match self {
            MellinValue::Value(v) => Ok(v),
            MellinValue::Pole { .. } => {
                Err(HlError::Pole("Mellin transform pole".into()))
            }
        }
    }
}

fn nonpos_int_of(a: Cx) -> Option<i64> {
    if !a.im.is_zero() {
        return None;
    }
    let r = a.re.round();
    if (a.re - r).is_zero() && !(r > Dd::ZERO) {
        Some(r.to_f64() as i64)
    } else {
        None
    }
}

/// Continued Mellin transform M(h)(a).
pub fn mellin(h: &dyn Profile, a: Cx) -> Result<MellinValue> {
    let r = h.support_radius();
    if r.to_f64() >= UNBOUNDED {
        return Err(HlError::Domain(
            "Mellin transform requires compact support".into(),
        ));
    }
    let eps = r * Dd::from_f64(0.125);
    let tol = precision::quad_tol();

    // outer piece: smooth, entire in a
    let am1 = a - Cx::ONE;
    let outer = quad::integrate_cx(
        &|t: Dd| Cx::real(t).powc(am1) * h.eval(t),
        eps,
        r,
        tol,
    )?;

    // inner piece via the Taylor expansion at 0
    let jet0 = h.jet(Dd::ZERO, TAYLOR_N);
    let pole_at = nonpos_int_of(a).map(|k| (-k) as usize);
    let floor = precision::residue_floor();
    // scale for deciding whether a coefficient is "really" nonzero
    let mut coeff_scale: f64 = 1e-300;
    let mut ep = Dd::ONE;
    for k in 0..=TAYLOR_N {
        let ck = Cx::new(jet0.re.c[k], jet0.im.c[k]);
        coeff_scale = coeff_scale.max((ck.abs() * ep).to_f64().abs());
        ep = ep * eps;
    }

    let mut inner = Cx::ZERO;
    let mut residue: Option<Cx> = None;
    for k in 0..=TAYLOR_N {
        let ck = Cx::new(jet0.re.c[k], jet0.im.c[k]);
        let ak = a + Cx::real(Dd::from_int(k as i64));
        if pole_at == Some(k) {
            let rel = (ck.abs().to_f64() * eps.to_f64().powi(k as i32)) / coeff_scale;
            if rel > floor {
                residue = Some(ck);
            }
            continue;
        }
        if ck.abs2().is_zero() {
            continue;
        }
        inner = inner + ck * Cx::real(eps).powc(ak) * ak.recip();
    }
    if let Some(residue) = residue {
        return Ok(MellinValue::Pole { residue });
    }
    if let Some(k) = pole_at {
        if k > TAYLOR_N {
            return Err(HlError::Precision(format!(
                "Mellin argument -{k} beyond continuation order {TAYLOR_N}"
            )));
        }
    }
    Ok(MellinValue::Value(outer + inner))
}

/// M'(h)(a) = M(h)(a) / Gamma((a+1)/2), finite wherever the gamma pole
/// cancels a transform pole (always the case for odd h at odd negative
/// integers).
pub fn mellin_prime(h: &dyn Profile, a: Cx) -> Result<Cx> {
    let half = Cx::real(Dd::from_f64(0.5));
    let s = (a + Cx::ONE) * half;
    match mellin(h, a)? {
        MellinValue::Value(v) => Ok(v * recip_gamma(s)),
        MellinValue::Pole { residue } => {
            // both factors have simple poles: s = -j, a = -(2j+1);
            // lim (a - a0) / Gamma(s) = 2 * (s + j) restricted -> residue * (-1)^j j! / 2
            match nonpos_int_of(s) {
                Some(mj) => {
                    let j = (-mj) as usize;
                    let mut jf = Dd::ONE;
                    for i in 2..=j {
                        jf = jf * Dd::from_int(i as i64);
                    }
                    let sign = if j % 2 == 0 { Dd::ONE } else { -Dd::ONE };
                    Ok(residue.scale(sign * jf * Dd::from_f64(0.5)))
                }
                None => Err(HlError::Pole(
                    "Mellin pole not cancelled by gamma normalization".into(),
                )),
            }
        }
    }
}

/// M(h)(s) / Gamma(s): like mellin_prime but with the gamma evaluated at
/// the argument itself. At s = -j the finite limit is (-1)^j h^(j)(0).
pub fn mellin_over_gamma(h: &dyn Profile, s: Cx) -> Result<Cx> {
    match mellin(h, s)? {
        MellinValue::Value(v) => Ok(v * recip_gamma(s)),
        MellinValue::Pole { residue } => match nonpos_int_of(s) {
            Some(mj) => {
                let j = (-mj) as usize;
                let mut jf = Dd::ONE;
                for i in 2..=j {
                    jf = jf * Dd::from_int(i as i64);
                }
                let sign = if j % 2 == 0 { Dd::ONE } else { -Dd::ONE };
                Ok(residue.scale(sign * jf))
            }
            None => Err(HlError::Pole(
                "Mellin pole not cancelled by gamma factor".into(),
            )),
        },
    }
}
