//! Complex numbers over double-double reals.

use crate::dd::Dd;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Cx {
    pub re: Dd,
    pub im: Dd,
}

impl Cx {
    pub const ZERO: Cx = Cx { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cx = Cx { re: Dd::ONE, im: Dd::ZERO };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> Cx {
        Cx { re, im }
    }

    #[inline]
    pub fn real(re: Dd) -> Cx {
        Cx { re, im: Dd::ZERO }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Cx {
        Cx { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    #[inline]
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    #[inline]
    pub fn conj(self) -> Cx {
        Cx { re: self.re, im: -self.im }
    }

    #[inline]
    pub fn abs2(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> Dd {
        self.abs2().sqrt()
    }

    pub fn recip(self) -> Cx {
        let d = self.abs2();
        Cx { re: self.re / d, im: -self.im / d }
    }

    pub fn exp(self) -> Cx {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cx { re: m * c, im: m * s }
    }

    /// Principal branch logarithm.
    pub fn ln(self) -> Cx {
        let modulus = self.abs();
        Cx { re: modulus.ln(), im: Dd::atan2(self.im, self.re) }
    }

    /// Principal-branch complex power.
    pub fn powc(self, e: Cx) -> Cx {
        if self.re.is_zero() && self.im.is_zero() {
            return Cx::ZERO;
        }
        (e * self.ln()).exp()
    }

    /// sin(pi z); exact zeros on the real integers.
    pub fn sin_pi(self) -> Cx {
        if self.im.is_zero() {
            return Cx::real(self.re.sin_pi());
        }
        let pi_im = Dd::PI * self.im;
        Cx {
            re: self.re.sin_pi() * pi_im.cosh(),
            im: self.re.cos_pi() * pi_im.sinh(),
        }
    }

    pub fn scale(self, k: Dd) -> Cx {
        Cx { re: self.re * k, im: self.im * k }
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, rhs: Cx) -> Cx {
        Cx { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}
impl Sub for Cx {
    type Output = Cx;
    fn sub(self, rhs: Cx) -> Cx {
        Cx { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}
impl Mul for Cx {
    type Output = Cx;
    fn mul(self, rhs: Cx) -> Cx {
        Cx {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}
impl Div for Cx {
    type Output = Cx;
    fn div(self, rhs: Cx) -> Cx {
        self * rhs.recip()
    }
}
impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re, im: -self.im }
    }
}
impl AddAssign for Cx {
    fn add_assign(&mut self, rhs: Cx) {
        *self = *self + rhs;
    }
}
impl SubAssign for Cx {
    fn sub_assign(&mut self, rhs: Cx) {
        *self = *self - rhs;
    }
}
impl MulAssign for Cx {
    fn mul_assign(&mut self, rhs: Cx) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cx({:e}, {:e})", self.re.to_f64(), self.im.to_f64())
    }
}
