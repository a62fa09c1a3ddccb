//! Truncated Taylor series ("jets") over double-double coefficients.
//!
//! A jet of order n at a point t holds the Taylor coefficients
//! c_0..c_n of a function around t, so the k-th derivative is c_k * k!.
//! All smooth-profile derivative bookkeeping (odd parts, products of
//! bump factors, powers of the curve speed profile, Mellin
//! integration-by-parts depth) runs through these.

use crate::dd::Dd;

#[derive(Clone, Debug)]
pub struct Jet {
    pub c: Vec<Dd>,
}

impl Jet {
    pub fn zero(order: usize) -> Jet {
        Jet { c: vec![Dd::ZERO; order + 1] }
    }

    pub fn constant(v: Dd, order: usize) -> Jet {
        let mut c = vec![Dd::ZERO; order + 1];
        c[0] = v;
        Jet { c }
    }

    /// The identity function t -> t expanded at the point `t`.
    pub fn var(t: Dd, order: usize) -> Jet {
        let mut c = vec![Dd::ZERO; order + 1];
        c[0] = t;
        if order >= 1 {
            c[1] = Dd::ONE;
        }
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    /// Value of the k-th derivative encoded in this jet.
    pub fn derivative(&self, k: usize) -> Dd {
        let mut f = Dd::ONE;
        for i in 2..=k {
            f = f * Dd::from_int(i as i64);
        }
        self.c[k] * f
    }

    pub fn value(&self) -> Dd {
        self.c[0]
    }

    pub fn neg(&self) -> Jet {
        Jet { c: self.c.iter().map(|&x| -x).collect() }
    }

    pub fn scale(&self, k: Dd) -> Jet {
        Jet { c: self.c.iter().map(|&x| x * k).collect() }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        debug_assert_eq!(self.c.len(), o.c.len());
        Jet { c: self.c.iter().zip(&o.c).map(|(&a, &b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        debug_assert_eq!(self.c.len(), o.c.len());
        Jet { c: self.c.iter().zip(&o.c).map(|(&a, &b)| a - b).collect() }
    }

    pub fn add_const(&self, v: Dd) -> Jet {
        let mut r = self.clone();
        r.c[0] = r.c[0] + v;
        r
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![Dd::ZERO; n];
        for i in 0..n {
            let mut s = Dd::ZERO;
            for k in 0..=i {
                s = s + self.c[k] * o.c[i - k];
            }
            c[i] = s;
        }
        Jet { c }
    }

    /// self / o, requires o.c[0] != 0.
    pub fn div(&self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let mut q = vec![Dd::ZERO; n];
        for i in 0..n {
            let mut s = self.c[i];
            for k in 0..i {
                s = s - q[k] * o.c[i - k];
            }
            q[i] = s / o.c[0];
        }
        Jet { c: q }
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(Dd::ONE, self.order()).div(self)
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut e = vec![Dd::ZERO; n];
        e[0] = self.c[0].exp();
        for i in 1..n {
            // i * e_i = sum_{k=1..i} k * a_k * e_{i-k}
            let mut s = Dd::ZERO;
            for k in 1..=i {
                s = s + Dd::from_int(k as i64) * self.c[k] * e[i - k];
            }
            e[i] = s / Dd::from_int(i as i64);
        }
        Jet { c: e }
    }

    /// Requires a strictly positive constant term.
    pub fn ln(&self) -> Jet {
        let n = self.c.len();
        let mut l = vec![Dd::ZERO; n];
        l[0] = self.c[0].ln();
        for i in 1..n {
            // i * a_i = sum_{k=1..i} k * l_k * a_{i-k}
            let mut s = Dd::from_int(i as i64) * self.c[i];
            for k in 1..i {
                s = s - Dd::from_int(k as i64) * l[k] * self.c[i - k];
            }
            l[i] = s / (Dd::from_int(i as i64) * self.c[0]);
        }
        Jet { c: l }
    }

    /// self^p, requires a strictly positive constant term.
    pub fn powf(&self, p: Dd) -> Jet {
        self.ln().scale(p).exp()
    }

    pub fn sin_cos(&self) -> (Jet, Jet) {
        let n = self.c.len();
        let (s0, c0) = self.c[0].sin_cos();
        let mut s = vec![Dd::ZERO; n];
        let mut c = vec![Dd::ZERO; n];
        s[0] = s0;
        c[0] = c0;
        for i in 1..n {
            let mut ds = Dd::ZERO;
            let mut dc = Dd::ZERO;
            for k in 1..=i {
                let ka = Dd::from_int(k as i64) * self.c[k];
                ds = ds + ka * c[i - k];
                dc = dc - ka * s[i - k];
            }
            s[i] = ds / Dd::from_int(i as i64);
            c[i] = dc / Dd::from_int(i as i64);
        }
        (Jet { c: s }, Jet { c })
    }

    /// Taylor coefficients of the n-th derivative function.
    pub fn derivative_jet(&self, n: usize) -> Jet {
        let ord = self.order();
        debug_assert!(n <= ord);
        let m = ord - n;
        let mut c = vec![Dd::ZERO; m + 1];
        for i in 0..=m {
            // b_i = a_{i+n} * (i+n)! / i!
            let mut f = Dd::ONE;
            for j in (i + 1)..=(i + n) {
                f = f * Dd::from_int(j as i64);
            }
            c[i] = self.c[i + n] * f;
        }
        Jet { c }
    }

    /// Jet of t -> f(a*t + b evaluated appropriately): given this jet is f
    /// expanded at the *inner* point, rescale for the substitution u = a*t,
    /// i.e. coefficients pick up powers of a.
    pub fn compose_linear(&self, a: Dd) -> Jet {
        let mut c = self.c.clone();
        let mut p = Dd::ONE;
        for ci in c.iter_mut() {
            *ci = *ci * p;
            p = p * a;
        }
        Jet { c }
    }

    /// Evaluate a polynomial with Dd coefficients on this jet.
    pub fn poly(&self, coeffs: &[Dd]) -> Jet {
        let mut acc = Jet::constant(*coeffs.last().unwrap_or(&Dd::ZERO), self.order());
        for &a in coeffs.iter().rev().skip(1) {
            acc = acc.mul(self).add_const(a);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Dd, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn exp_jet_derivatives() {
        // g(t) = exp(t^2) at t = 0.3: g' = 2t g, g'' = (2 + 4t^2) g
        let t = Dd::from_f64(0.3);
        let j = Jet::var(t, 4);
        let g = j.mul(&j).exp();
        let g0 = (0.3f64 * 0.3).exp();
        assert!(close(g.derivative(0), g0, 1e-14));
        assert!(close(g.derivative(1), 0.6 * g0, 1e-14));
        assert!(close(g.derivative(2), (2.0 + 0.36) * g0, 1e-14));
    }

    #[test]
    fn ln_inverts_exp() {
        let j = Jet::var(Dd::from_f64(0.7), 6);
        let r = j.exp().ln();
        for k in 0..=6 {
            let want = if k == 0 { 0.7 } else if k == 1 { 1.0 } else { 0.0 };
            assert!((r.c[k].to_f64() - want).abs() < 1e-28);
        }
    }

    #[test]
    fn powf_matches_mul() {
        let j = Jet::var(Dd::from_f64(1.3), 5).add_const(Dd::ONE);
        let a = j.powf(Dd::from_f64(2.0));
        let b = j.mul(&j);
        for k in 0..=5 {
            assert!((a.c[k] - b.c[k]).abs().to_f64() < 1e-27);
        }
    }

    #[test]
    fn derivative_jet_shifts() {
        // h(t) = t^3: h'' = 6t
        let j = Jet::var(Dd::from_f64(0.5), 5);
        let h = j.mul(&j).mul(&j);
        let h2 = h.derivative_jet(2);
        assert!(close(h2.value(), 3.0, 1e-14));
        assert!(close(h2.derivative(1), 6.0, 1e-14));
    }

    #[test]
    fn sin_cos_jet() {
        let j = Jet::var(Dd::from_f64(0.4), 3);
        let (s, c) = j.sin_cos();
        assert!(close(s.derivative(1), 0.4f64.cos(), 1e-14));
        assert!(close(c.derivative(1), -(0.4f64.sin()), 1e-14));
    }
}
