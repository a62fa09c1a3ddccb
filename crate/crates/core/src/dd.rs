//! Double-double arithmetic: an unevaluated sum of two `f64`s giving an
//! effective ~106-bit mantissa.
//!
//! Sequential asymptotic peeling amplifies roundoff in the sample values it
//! consumes, so every floating computation in this crate runs on [`Dd`]
//! rather than bare `f64`. The algorithms are the classical error-free
//! transformations (two-sum, FMA two-product) plus Newton refinements from
//! `f64` seeds for the transcendental functions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const TWO: Dd = Dd { hi: 2.0, lo: 0.0 };
    pub const LN2: Dd = Dd { hi: 6.93147180559945286e-01, lo: 2.31904681384629956e-17 };
    pub const PI: Dd = Dd { hi: 3.14159265358979312e+00, lo: 1.22464679914735321e-16 };
    pub const TWO_PI: Dd = Dd { hi: 6.28318530717958623e+00, lo: 2.44929359829470641e-16 };
    pub const FRAC_PI_2: Dd = Dd { hi: 1.57079632679489656e+00, lo: 6.12323399573676604e-17 };
    // third component of pi/2 for argument reduction
    const FRAC_PI_2_T: f64 = -1.49738490485916983e-33;
    pub const SQRT_PI: Dd = Dd { hi: 1.77245385090551610e+00, lo: -7.66658649982579870e-17 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn from_int(n: i64) -> Dd {
        // |n| < 2^53 is exact; larger values do not occur here
        Dd { hi: n as f64, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn round(self) -> Dd {
        let r = self.hi.round();
        if (self.hi - r).abs() == 0.5 {
            // tie decided by the low word
            let r2 = (self.hi + self.lo).round();
            return Dd::from_f64(r2);
        }
        // away from ties the high word decides, except exactly-representable
        // integers where lo can push across
        let cand = Dd::from_f64(r);
        let diff = self - cand;
        if diff.hi > 0.5 || (diff.hi == 0.5 && diff.lo > 0.0) {
            cand + Dd::ONE
        } else if diff.hi < -0.5 || (diff.hi == -0.5 && diff.lo < 0.0) {
            cand - Dd::ONE
        } else {
            cand
        }
    }

    pub fn floor(self) -> Dd {
        let f = self.hi.floor();
        if f == self.hi {
            // hi integral: lo decides
            Dd::from_f64(f) + Dd::from_f64(self.lo.floor())
        } else {
            Dd::from_f64(f)
        }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.is_zero() {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "sqrt of negative double-double");
        let s = self.hi.sqrt();
        let sd = Dd::from_f64(s);
        // one Newton step from the f64 seed
        let e = (self - sd * sd) / (Dd::from_f64(2.0 * s));
        sd + e
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// exp(x) via range reduction against ln 2 and a short Taylor series.
    pub fn exp(self) -> Dd {
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = (self - Dd::LN2 * Dd::from_f64(k)) * Dd::from_f64(1.0 / 512.0);
        // |r| <= ln2/1024: 10 terms reach below the Dd noise floor
        let mut sum = Dd::ONE;
        let mut term = Dd::ONE;
        for n in 1..=10 {
            term = term * r / Dd::from_int(n);
            sum = sum + term;
        }
        // undo the /512 reduction by repeated squaring
        for _ in 0..9 {
            sum = sum * sum;
        }
        sum * Dd::from_f64(f64::powi(2.0, k as i32))
    }

    /// Natural log via Newton refinement of the f64 seed.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0, "ln of non-positive double-double");
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// self^e for self > 0.
    pub fn powf(self, e: Dd) -> Dd {
        if self.is_zero() {
            return if e.hi > 0.0 { Dd::ZERO } else { Dd::from_f64(f64::INFINITY) };
        }
        (e * self.ln()).exp()
    }

    fn sin_cos_reduced(r: Dd) -> (Dd, Dd) {
        // |r| <= pi/4
        let r2 = r * r;
        let mut s = Dd::ZERO;
        let mut term = r;
        for k in 0..16i64 {
            s = s + term;
            term = -term * r2 / Dd::from_int((2 * k + 2) * (2 * k + 3));
        }
        let mut c = Dd::ZERO;
        let mut termc = Dd::ONE;
        for k in 0..16i64 {
            c = c + termc;
            termc = -termc * r2 / Dd::from_int((2 * k + 1) * (2 * k + 2));
        }
        (s, c)
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        let q = (self.hi / Dd::FRAC_PI_2.hi).round();
        let qd = Dd::from_f64(q);
        // three-part reduction keeps ~32 digits for the moderate q we use
        let mut r = self - Dd::FRAC_PI_2 * qd;
        r = r - Dd::from_f64(Dd::FRAC_PI_2_T) * qd;
        let (s, c) = Dd::sin_cos_reduced(r);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    /// sin(pi * x), exact zeros at integer x.
    pub fn sin_pi(self) -> Dd {
        let n = self.round();
        let r = self - n;
        if r.is_zero() {
            return Dd::ZERO;
        }
        let s = (Dd::PI * r).sin();
        if (n.hi as i64) % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// cos(pi * x).
    pub fn cos_pi(self) -> Dd {
        let n = self.round();
        let r = self - n;
        let c = (Dd::PI * r).cos();
        if (n.hi as i64) % 2 == 0 {
            c
        } else {
            -c
        }
    }

    pub fn sinh(self) -> Dd {
        if self.abs().hi < 0.5 {
            // Taylor to avoid cancellation near zero
            let x2 = self * self;
            let mut sum = self;
            let mut term = self;
            for k in 1..=12i64 {
                term = term * x2 / Dd::from_int((2 * k) * (2 * k + 1));
                sum = sum + term;
            }
            sum
        } else {
            let e = self.exp();
            (e - e.recip()) * Dd::from_f64(0.5)
        }
    }

    pub fn cosh(self) -> Dd {
        let e = self.exp();
        (e + e.recip()) * Dd::from_f64(0.5)
    }

    pub fn atan(self) -> Dd {
        let mut th = Dd::from_f64(self.hi.atan());
        // one Newton step on tan(th) = x; a second guards the seed
        for _ in 0..2 {
            let (s, c) = th.sin_cos();
            th = th + c * (self * c - s);
        }
        th
    }

    pub fn atan2(y: Dd, x: Dd) -> Dd {
        if x.hi > 0.0 {
            (y / x).atan()
        } else if x.hi < 0.0 {
            if y.hi >= 0.0 {
                (y / x).atan() + Dd::PI
            } else {
                (y / x).atan() - Dd::PI
            }
        } else if y.hi > 0.0 {
            Dd::FRAC_PI_2
        } else if y.hi < 0.0 {
            -Dd::FRAC_PI_2
        } else {
            Dd::ZERO
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}
impl SubAssign for Dd {
    fn sub_assign(&mut self, rhs: Dd) {
        *self = *self - rhs;
    }
}
impl MulAssign for Dd {
    fn mul_assign(&mut self, rhs: Dd) {
        *self = *self * rhs;
    }
}
impl DivAssign for Dd {
    fn div_assign(&mut self, rhs: Dd) {
        *self = *self / rhs;
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}", self.to_f64())
    }
}
