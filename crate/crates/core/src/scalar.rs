//! Exact coefficients: rationals, and rationals adjoined `v` with `v^2 = q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `q^e` for any integer `e`.
pub fn q_pow(q: u32, e: i64) -> Rational {
    let base = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// `p^k` as a rational (k >= 0).
pub fn card(p: u32, k: usize) -> Rational {
    q_pow(p, k as i64)
}

/// Parse `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Always `"num/den"`, reduced, with a positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `a + b v` with `v^2 = q`; houses square roots of Euler forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScalarExt {
    q: u32,
    a: Rational,
    b: Rational,
}

impl ScalarExt {
    pub fn new(q: u32, a: Rational, b: Rational) -> Self {
        ScalarExt { q, a, b }
    }

    pub fn rational(q: u32, a: Rational) -> Self {
        ScalarExt {
            q,
            a,
            b: Rational::zero(),
        }
    }

    pub fn zero(q: u32) -> Self {
        Self::rational(q, Rational::zero())
    }

    pub fn one(q: u32) -> Self {
        Self::rational(q, Rational::one())
    }

    /// `v^e`; even powers are rational, odd ones are rational multiples of `v`.
    pub fn v_pow(q: u32, e: i64) -> Self {
        let half = e.div_euclid(2);
        let r = q_pow(q, half);
        if e.rem_euclid(2) == 0 {
            Self::rational(q, r)
        } else {
            ScalarExt {
                q,
                a: Rational::zero(),
                b: r,
            }
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn v_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Inverse through the conjugate: `(a - b v) / (a^2 - q b^2)`. `q` is
    /// prime, hence not a square, so the norm vanishes only at zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let qr = int(self.q as i64);
        let norm = &self.a * &self.a - qr * &self.b * &self.b;
        Some(ScalarExt {
            q: self.q,
            a: &self.a / &norm,
            b: -(&self.b / &norm),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ScalarExt {
            q: self.q,
            a: &self.a * r,
            b: &self.b * r,
        }
    }
}

impl Add for &ScalarExt {
    type Output = ScalarExt;
    fn add(self, o: &ScalarExt) -> ScalarExt {
        debug_assert_eq!(self.q, o.q);
        ScalarExt {
            q: self.q,
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &ScalarExt {
    type Output = ScalarExt;
    fn sub(self, o: &ScalarExt) -> ScalarExt {
        debug_assert_eq!(self.q, o.q);
        ScalarExt {
            q: self.q,
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Mul for &ScalarExt {
    type Output = ScalarExt;
    fn mul(self, o: &ScalarExt) -> ScalarExt {
        debug_assert_eq!(self.q, o.q);
        let qr = int(self.q as i64);
        ScalarExt {
            q: self.q,
            a: &self.a * &o.a + qr * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &ScalarExt {
    type Output = ScalarExt;
    fn neg(self) -> ScalarExt {
        ScalarExt {
            q: self.q,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for ScalarExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*v", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*v", self.a, sign, self.b.abs())
            }
        }
    }
}
