//! Coefficient domains: exact rationals, Gaussian rationals, and the
//! quadratic extension by sqrt(2) used by the conjugation certificate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CrError, CrResult};

/// Arbitrary-precision rational. Always stored reduced with a positive
/// denominator (the invariant `BigRational` maintains).
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical string form: `p` for integers, `p/q` otherwise, `q > 0`, reduced.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_int_strict(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    s.parse().ok()
}

/// Parse a canonical rational string. Rejects unreduced fractions,
/// non-positive denominators, and padded digits.
pub fn rat_from_str(s: &str) -> CrResult<Rat> {
    let bad = || CrError::NonCanonicalRational(s.to_string());
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int_strict(s).ok_or_else(bad)?)),
        Some((num, den)) => {
            let n = parse_int_strict(num).ok_or_else(bad)?;
            let d = parse_int_strict(den).ok_or_else(bad)?;
            if d <= BigInt::zero() || d.is_one() {
                return Err(bad());
            }
            if num_integer::Integer::gcd(&n, &d) != BigInt::one() {
                return Err(bad());
            }
            Ok(Rat::new_raw(n, d))
        }
    }
}

/// Exact d-th root of a rational, if one exists. For even d the sign of the
/// returned root is positive.
pub fn rat_nth_root(r: &Rat, d: u32) -> Option<Rat> {
    if d == 0 {
        return None;
    }
    if d == 1 {
        return Some(r.clone());
    }
    if r.is_zero() {
        return Some(<Rat as Zero>::zero());
    }
    if r.is_negative() && d % 2 == 0 {
        return None;
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let rn = num.nth_root(d);
    let rd = den.nth_root(d);
    if rn.pow(d) == num && rd.pow(d) == den {
        let mut root = Rat::new_raw(rn, rd);
        if r.is_negative() {
            root = -root;
        }
        Some(root)
    } else {
        None
    }
}

pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::Pow::pow(r.clone(), e as u64)
    } else {
        num_traits::Pow::pow(r.clone(), e)
    }
}

/// Trait for the exact coefficient domains a polynomial can carry.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + 'static {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn c_is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// Complex conjugation; identity on real domains.
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
}

impl Coeff for Rat {
    fn c_zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn c_one() -> Self {
        <Rat as One>::one()
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Gaussian rational `re + im*i`, exact in both components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GaussRat {
            re,
            im: <Rat as Zero>::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: <Rat as Zero>::zero(),
            im: <Rat as One>::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    /// |z|^2 = re^2 + im^2.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", rat_to_string(&self.re))
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}*i", rat_to_string(&self.im))
        } else if self.im.is_negative() {
            write!(
                f,
                "({}{}*i)",
                rat_to_string(&self.re),
                rat_to_string(&self.im)
            )
        } else {
            write!(
                f,
                "({}+{}*i)",
                rat_to_string(&self.re),
                rat_to_string(&self.im)
            )
        }
    }
}

impl Coeff for GaussRat {
    fn c_zero() -> Self {
        GaussRat::real(<Rat as Zero>::zero())
    }
    fn c_one() -> Self {
        GaussRat::real(<Rat as One>::one())
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn plus(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn negate(&self) -> Self {
        GaussRat {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn times(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn from_rat(r: &Rat) -> Self {
        GaussRat::real(r.clone())
    }
    fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            None
        } else {
            Some(GaussRat {
                re: &self.re / &n,
                im: -&self.im / &n,
            })
        }
    }
}

/// Element `a + b*sqrt(2)` of the quadratic extension Q(sqrt 2). Only the
/// conjugation certificate needs it; the rest of the engine stays rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sqrt2Ext {
    pub a: Rat,
    pub b: Rat,
}

impl Sqrt2Ext {
    pub fn new(a: Rat, b: Rat) -> Self {
        Sqrt2Ext { a, b }
    }

    pub fn rational(a: Rat) -> Self {
        Sqrt2Ext {
            a,
            b: <Rat as Zero>::zero(),
        }
    }

    /// 1/sqrt(2) = sqrt(2)/2.
    pub fn inv_sqrt2() -> Self {
        Sqrt2Ext {
            a: Rat::zero(),
            b: rat(1, 2),
        }
    }

    pub fn sqrt2() -> Self {
        Sqrt2Ext {
            a: Rat::zero(),
            b: <Rat as One>::one(),
        }
    }
}

impl fmt::Display for Sqrt2Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", rat_to_string(&self.a))
        } else {
            write!(
                f,
                "({}+{}*sqrt2)",
                rat_to_string(&self.a),
                rat_to_string(&self.b)
            )
        }
    }
}

impl Coeff for Sqrt2Ext {
    fn c_zero() -> Self {
        Sqrt2Ext::rational(<Rat as Zero>::zero())
    }
    fn c_one() -> Self {
        Sqrt2Ext::rational(<Rat as One>::one())
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn plus(&self, o: &Self) -> Self {
        Sqrt2Ext {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
    fn negate(&self) -> Self {
        Sqrt2Ext {
            a: -&self.a,
            b: -&self.b,
        }
    }
    fn times(&self, o: &Self) -> Self {
        Sqrt2Ext {
            a: &self.a * &o.a + rat_int(2) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Sqrt2Ext::rational(r.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        // (a + b s)^-1 = (a - b s)/(a^2 - 2 b^2)
        let d = &self.a * &self.a - rat_int(2) * &self.b * &self.b;
        if Zero::is_zero(&d) {
            None
        } else {
            Some(Sqrt2Ext {
                a: &self.a / &d,
                b: -&self.b / &d,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rational_strings() {
        assert_eq!(rat_to_string(&rat(3, 2)), "3/2");
        assert_eq!(rat_to_string(&rat_int(-4)), "-4");
        assert!(rat_from_str("2/4").is_err());
        assert!(rat_from_str("3/-2").is_err());
        assert!(rat_from_str("03").is_err());
        assert!(rat_from_str("3/1").is_err());
        assert_eq!(rat_from_str("-7/3").unwrap(), rat(-7, 3));
        assert_eq!(rat_from_str("0").unwrap(), rat_int(0));
    }

    #[test]
    fn gauss_conjugation_involution() {
        let z = GaussRat::new(rat(1, 2), rat(-3, 5));
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.times(&z.conj()), GaussRat::real(z.norm()));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Sqrt2Ext::sqrt2();
        assert_eq!(s.times(&s), Sqrt2Ext::rational(rat_int(2)));
        let h = Sqrt2Ext::inv_sqrt2();
        assert_eq!(h.times(&s), Sqrt2Ext::c_one());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rat_nth_root(&rat(4, 9), 2), Some(rat(2, 3)));
        assert_eq!(rat_nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rat_nth_root(&rat(2, 1), 2), None);
        assert_eq!(rat_nth_root(&rat(-4, 9), 2), None);
    }
}
