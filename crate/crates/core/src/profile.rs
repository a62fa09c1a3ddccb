//! Smooth profiles: compactly supported test functions on the line with
//! derivative evaluators, plus the combinators the pairing formulas need
//! (products, rescaling, odd/even parts, complex powers of a positive
//! weight, formal derivatives).
//!
//! A profile reports a support radius R (it vanishes for |t| >= R) and
//! produces, at any real t, a truncated Taylor jet of its value. Complex
//! values are carried as a pair of real jets so combinators stay cheap.

use crate::cx::Cx;
use crate::dd::Dd;
use crate::jet::Jet;

/// Sentinel radius for profiles without compact support (they only ever
/// appear multiplied by a compactly supported factor).
pub const UNBOUNDED: f64 = 1e300;

/// Complex-valued jet: a pair of real coefficient jets.
#[derive(Clone, Debug)]
pub struct CxJet {
    pub re: Jet,
    pub im: Jet,
}

impl CxJet {
    pub fn zero(order: usize) -> CxJet {
        CxJet { re: Jet::zero(order), im: Jet::zero(order) }
    }

    pub fn from_real(j: Jet) -> CxJet {
        let im = Jet::zero(j.order());
        CxJet { re: j, im }
    }

    pub fn order(&self) -> usize {
        self.re.order()
    }

    pub fn value(&self) -> Cx {
        Cx::new(self.re.value(), self.im.value())
    }

    pub fn derivative(&self, k: usize) -> Cx {
        Cx::new(self.re.derivative(k), self.im.derivative(k))
    }

    pub fn add(&self, o: &CxJet) -> CxJet {
        CxJet { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CxJet) -> CxJet {
        CxJet { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &CxJet) -> CxJet {
        CxJet {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, c: Cx) -> CxJet {
        CxJet {
            re: self.re.scale(c.re).sub(&self.im.scale(c.im)),
            im: self.re.scale(c.im).add(&self.im.scale(c.re)),
        }
    }

    pub fn neg(&self) -> CxJet {
        CxJet { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn derivative_jet(&self, n: usize) -> CxJet {
        CxJet { re: self.re.derivative_jet(n), im: self.im.derivative_jet(n) }
    }

    /// Coefficients of t -> this(-t): flip the sign of odd coefficients.
    pub fn parity_flip(&self) -> CxJet {
        let flip = |j: &Jet| {
            let mut c = j.c.clone();
            for (i, ci) in c.iter_mut().enumerate() {
                if i % 2 == 1 {
                    *ci = -*ci;
                }
            }
            Jet { c }
        };
        CxJet { re: flip(&self.re), im: flip(&self.im) }
    }
}

pub trait Profile {
    /// Vanishes identically for |t| >= support_radius().
    fn support_radius(&self) -> Dd;

    /// Taylor jet of the profile at t, to the given order.
    fn jet(&self, t: Dd, order: usize) -> CxJet;

    fn eval(&self, t: Dd) -> Cx {
        self.jet(t, 0).value()
    }
}

impl<P: Profile + ?Sized> Profile for &P {
    fn support_radius(&self) -> Dd {
        (**self).support_radius()
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        (**self).jet(t, order)
    }
}

/// exp(1/(t^2 - 1)) inside (-1, 1), zero outside: the even bump.
#[derive(Clone, Copy, Debug)]
pub struct BumpEven;

/// t * exp(1/(t^2 - 1)) inside (-1, 1), zero outside: the odd bump.
#[derive(Clone, Copy, Debug)]
pub struct BumpOdd;

fn bump_core(t: Dd, order: usize) -> Option<Jet> {
    // exp(1/(t^2-1)); None past (or hard against) the support edge
    if t.abs() >= Dd::from_f64(1.0 - 1e-12) {
        return None;
    }
    let j = Jet::var(t, order);
    let denom = j.mul(&j).add_const(-Dd::ONE);
    Some(denom.recip().exp())
}

impl Profile for BumpEven {
    fn support_radius(&self) -> Dd {
        Dd::ONE
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        match bump_core(t, order) {
            Some(j) => CxJet::from_real(j),
            None => CxJet::zero(order),
        }
    }
}

impl Profile for BumpOdd {
    fn support_radius(&self) -> Dd {
        Dd::ONE
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        match bump_core(t, order) {
            Some(j) => CxJet::from_real(Jet::var(t, order).mul(&j)),
            None => CxJet::zero(order),
        }
    }
}

/// Constant profile (unbounded support).
#[derive(Clone, Copy, Debug)]
pub struct ConstProfile(pub Cx);

impl Profile for ConstProfile {
    fn support_radius(&self) -> Dd {
        Dd::from_f64(UNBOUNDED)
    }
    fn jet(&self, _t: Dd, order: usize) -> CxJet {
        let mut j = CxJet::zero(order);
        j.re.c[0] = self.0.re;
        j.im.c[0] = self.0.im;
        j
    }
}

/// t^k (unbounded support).
#[derive(Clone, Copy, Debug)]
pub struct Monomial(pub usize);

impl Profile for Monomial {
    fn support_radius(&self) -> Dd {
        Dd::from_f64(UNBOUNDED)
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        let v = Jet::var(t, order);
        let mut acc = Jet::constant(Dd::ONE, order);
        for _ in 0..self.0 {
            acc = acc.mul(&v);
        }
        CxJet::from_real(acc)
    }
}

/// cos(t) (unbounded support).
#[derive(Clone, Copy, Debug)]
pub struct CosProfile;

impl Profile for CosProfile {
    fn support_radius(&self) -> Dd {
        Dd::from_f64(UNBOUNDED)
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        CxJet::from_real(Jet::var(t, order).sin_cos().1)
    }
}

/// h(t / s): dilates the support by s.
#[derive(Clone, Debug)]
pub struct Scaled<P> {
    pub inner: P,
    pub s: Dd,
}

impl<P: Profile> Profile for Scaled<P> {
    fn support_radius(&self) -> Dd {
        let r = self.inner.support_radius();
        if r.to_f64() >= UNBOUNDED {
            r
        } else {
            r * self.s
        }
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        let inv = self.s.recip();
        let j = self.inner.jet(t * inv, order);
        CxJet {
            re: j.re.compose_linear(inv),
            im: j.im.compose_linear(inv),
        }
    }
}

/// Pointwise product of two profiles.
#[derive(Clone, Debug)]
pub struct Product<A, B> {
    pub a: A,
    pub b: B,
}

impl<A: Profile, B: Profile> Profile for Product<A, B> {
    fn support_radius(&self) -> Dd {
        let (ra, rb) = (self.a.support_radius(), self.b.support_radius());
        if ra < rb {
            ra
        } else {
            rb
        }
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        self.a.jet(t, order).mul(&self.b.jet(t, order))
    }
}

/// n-th derivative of a profile.
#[derive(Clone, Debug)]
pub struct Deriv<P> {
    pub inner: P,
    pub n: usize,
}

impl<P: Profile> Profile for Deriv<P> {
    fn support_radius(&self) -> Dd {
        self.inner.support_radius()
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        self.inner.jet(t, order + self.n).derivative_jet(self.n)
    }
}

/// (h(t) - h(-t)) / 2.
#[derive(Clone, Debug)]
pub struct OddPart<P>(pub P);

impl<P: Profile> Profile for OddPart<P> {
    fn support_radius(&self) -> Dd {
        self.0.support_radius()
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        let plus = self.0.jet(t, order);
        let minus = self.0.jet(-t, order).parity_flip();
        plus.sub(&minus).scale(Cx::from_f64(0.5, 0.0))
    }
}

/// (h(t) + h(-t)) / 2.
#[derive(Clone, Debug)]
pub struct EvenPart<P>(pub P);

impl<P: Profile> Profile for EvenPart<P> {
    fn support_radius(&self) -> Dd {
        self.0.support_radius()
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        let plus = self.0.jet(t, order);
        let minus = self.0.jet(-t, order).parity_flip();
        plus.add(&minus).scale(Cx::from_f64(0.5, 0.0))
    }
}

/// w(t)^p for a strictly positive real weight w supplied as a jet
/// evaluator, with a complex exponent p.
pub struct PowWeight<F: Fn(Dd, usize) -> Jet> {
    pub weight: F,
    pub p: Cx,
    pub radius: Dd,
}

impl<F: Fn(Dd, usize) -> Jet> Profile for PowWeight<F> {
    fn support_radius(&self) -> Dd {
        self.radius
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        let w = (self.weight)(t, order);
        let l = w.ln();
        // exp((p_re + i p_im) * ln w) = w^{p_re} * (cos(p_im ln w) + i sin ..)
        let mag = l.scale(self.p.re).exp();
        if self.p.im.is_zero() {
            let im = Jet::zero(order);
            return CxJet { re: mag, im };
        }
        let (s, c) = l.scale(self.p.im).sin_cos();
        CxJet { re: mag.mul(&c), im: mag.mul(&s) }
    }
}

/// Profile from an arbitrary real jet evaluator with a declared radius.
pub struct FnProfile<F: Fn(Dd, usize) -> Jet> {
    pub f: F,
    pub radius: Dd,
}

impl<F: Fn(Dd, usize) -> Jet> Profile for FnProfile<F> {
    fn support_radius(&self) -> Dd {
        self.radius
    }
    fn jet(&self, t: Dd, order: usize) -> CxJet {
        CxJet::from_real((self.f)(t, order))
    }
}
