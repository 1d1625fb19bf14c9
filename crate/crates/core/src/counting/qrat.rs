//! Rational functions of `q` with integer coefficients, kept in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rat, Result};

/// Integer polynomial, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: i64) -> Self {
        Poly::new(vec![c.into()])
    }

    /// `q^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        Poly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly(self.0.iter().map(|x| x / c).collect())
    }

    fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn eval(&self, q: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * q + Rat::from_integer(c.clone()))
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.lead().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.lead().clone();
            let shift = rd - dd;
            let mut next: Vec<BigInt> = r.0.iter().map(|x| x * &lc).collect();
            for (i, c) in d.0.iter().enumerate() {
                next[i + shift] -= c * &lr;
            }
            r = Poly::new(next);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient; `d` must divide `self` over `Z`.
    fn exact_div(&self, d: &Poly) -> Poly {
        if d.is_one() {
            return self.clone();
        }
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.lead();
        let mut r = self.0.clone();
        let n = r.len();
        if n < dd + 1 {
            return Poly::zero();
        }
        let mut quot = vec![BigInt::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = &r[i + dd] / lc;
            for (j, x) in d.0.iter().enumerate() {
                r[i + j] -= x * &c;
            }
            quot[i] = c;
        }
        debug_assert!(r.iter().all(|x| x.is_zero()), "inexact polynomial division");
        Poly::new(quot)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|x| -x).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

/// `num/den` in lowest terms, `den` with positive leading coefficient and
/// the common integer content removed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl QRat {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QRat::zero();
        }
        let (mut num, mut den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (num.exact_div(&g), den.exact_div(&g))
        };
        let mut c = num.content().gcd(&den.content());
        if den.lead().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        QRat { num, den }
    }

    pub fn zero() -> Self {
        QRat { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        QRat { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        QRat { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        QRat { num: p, den: Poly::one() }
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i64) -> Self {
        if n >= 0 {
            QRat { num: Poly::monomial(n as usize), den: Poly::one() }
        } else {
            QRat { num: Poly::one(), den: Poly::monomial((-n) as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// A polynomial with rational coefficients.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn regular_at(&self, q: &Rat) -> bool {
        !self.den.eval(q).is_zero()
    }

    pub fn eval(&self, q: &Rat) -> Result<Rat> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(Error::InvariantViolation(format!("{self} has a pole at q = {q}")));
        }
        Ok(self.num.eval(q) / d)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Multiply by `q^n`.
    pub fn shift_q(&self, n: i64) -> Self {
        if n == 0 || self.is_zero() {
            return self.clone();
        }
        self * &QRat::q_pow(n)
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return QRat::normalized(&self.num + &o.num, self.den.clone());
        }
        QRat::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return QRat::zero();
        }
        // cross-cancel first to keep the gcd work small
        let g1 = if self.den.is_one() || o.num.degree() == Some(0) { Poly::one() } else { o.num.gcd(&self.den) };
        let g2 = if o.den.is_one() || self.num.degree() == Some(0) { Poly::one() } else { self.num.gcd(&o.den) };
        let num = &self.num.exact_div(&g2) * &o.num.exact_div(&g1);
        let den = &self.den.exact_div(&g1) * &o.den.exact_div(&g2);
        let mut c = num.content().gcd(&den.content());
        if den.lead().is_negative() {
            c = -c;
        }
        if c.is_one() {
            QRat { num, den }
        } else {
            QRat { num: num.div_scalar(&c), den: den.div_scalar(&c) }
        }
    }
}

impl Div for &QRat {
    type Output = QRat;
    fn div(self, o: &QRat) -> QRat {
        self * &o.inverse().expect("division by zero")
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// `q^n − 1`.
pub fn q_power_minus_one(n: usize) -> Poly {
    let mut p = Poly::monomial(n);
    p.0[0] -= BigInt::one();
    p
}

/// `#GL_n(F_q) = q^{n(n−1)/2} Π_{i=1..n} (q^i − 1)`.
pub fn gl_order(n: usize) -> Poly {
    let mut p = Poly::monomial(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        p = &p * &q_power_minus_one(i);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| x.into()).collect())
    }

    #[test]
    fn gcd_and_cancellation() {
        // (q^2 − 1)/(q − 1) = q + 1
        let r = QRat::new(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.to_string(), "q + 1");
        let s = QRat::new(poly(&[2]), poly(&[-2, 2])).unwrap();
        assert_eq!(s.to_string(), "1/(q - 1)");
        assert_eq!(s.den().coeffs()[1], BigInt::one());
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1).eval(&rat(2)), rat(1));
        assert_eq!(gl_order(2).eval(&rat(2)), rat(6));
        assert_eq!(gl_order(2).eval(&rat(3)), rat(48));
        assert_eq!(gl_order(0), Poly::one());
    }

    #[test]
    fn q_powers_and_eval() {
        let x = &QRat::q_pow(-2) * &QRat::q_pow(3);
        assert_eq!(x, QRat::q_pow(1));
        assert_eq!(QRat::q_pow(-1).eval(&rat(4)).unwrap(), crate::ratio(1, 4));
        assert!(QRat::new(Poly::one(), q_power_minus_one(1)).unwrap().eval(&rat(1)).is_err());
    }

    fn small_qrat() -> impl Strategy<Value = QRat> {
        (prop::collection::vec(-4i64..5, 1..4), prop::collection::vec(-3i64..4, 1..3)).prop_filter_map(
            "nonzero denominator",
            |(n, d)| {
                let mut d = poly(&d);
                d = &d * &q_power_minus_one(1);
                QRat::new(poly(&n), d).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_qrat(), b in small_qrat(), c in small_qrat()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            let q = rat(7);
            if a.regular_at(&q) && b.regular_at(&q) {
                prop_assert_eq!((&a * &b).eval(&q).unwrap(), a.eval(&q).unwrap() * b.eval(&q).unwrap());
            }
        }
    }
}
