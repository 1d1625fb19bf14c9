use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::quiver::DimVector;
use crate::{rat, Error, Rat, Result};

/// An element of `Q[N^⊕]` truncated at total degree `order`.
///
/// Only nonzero coefficients with `δ(d) ≤ order` are stored; products discard
/// overflow monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    rank: usize,
    order: u32,
    terms: BTreeMap<DimVector, Rat>,
}

impl TruncSeries {
    pub fn zero(rank: usize, order: u32) -> Self {
        TruncSeries { rank, order, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, order: u32) -> Self {
        Self::constant(rank, order, Rat::one())
    }

    pub fn constant(rank: usize, order: u32, c: Rat) -> Self {
        Self::monomial(rank, order, DimVector::zero(rank), c)
    }

    /// `c·x^d` (zero if `δ(d)` exceeds the order).
    pub fn monomial(rank: usize, order: u32, d: DimVector, c: Rat) -> Self {
        let mut s = Self::zero(rank, order);
        s.add_term(d, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (DimVector, Rat)>>(rank: usize, order: u32, terms: I) -> Self {
        let mut s = Self::zero(rank, order);
        for (d, c) in terms {
            s.add_term(d, c);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<DimVector, Rat> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn coeff(&self, d: &DimVector) -> Rat {
        self.terms.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&DimVector::zero(self.rank))
    }

    pub fn is_unit(&self) -> bool {
        self.constant_term().is_one()
    }

    /// Add `c·x^d` in place, dropping it if out of range.
    pub fn add_term(&mut self, d: DimVector, c: Rat) {
        assert_eq!(d.rank(), self.rank, "monomial rank mismatch");
        if c.is_zero() || d.delta() > self.order as i64 {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().map(|d| d.delta())
    }

    /// The homogeneous component of total degree `m`.
    pub fn degree_part(&self, m: i64) -> TruncSeries {
        Self::from_terms(
            self.rank,
            self.order,
            self.terms.iter().filter(|(d, _)| d.delta() == m).map(|(d, c)| (d.clone(), c.clone())),
        )
    }

    pub fn filter<F: Fn(&DimVector) -> bool>(&self, keep: F) -> TruncSeries {
        Self::from_terms(
            self.rank,
            self.order,
            self.terms.iter().filter(|(d, _)| keep(d)).map(|(d, c)| (d.clone(), c.clone())),
        )
    }

    /// Re-truncate at a different order (lowering discards terms).
    pub fn with_order(&self, order: u32) -> TruncSeries {
        Self::from_terms(self.rank, order, self.terms.iter().map(|(d, c)| (d.clone(), c.clone())))
    }

    pub fn scale(&self, c: &Rat) -> TruncSeries {
        if c.is_zero() {
            return Self::zero(self.rank, self.order);
        }
        TruncSeries {
            rank: self.rank,
            order: self.order,
            terms: self.terms.iter().map(|(d, v)| (d.clone(), v * c)).collect(),
        }
    }

    /// Multiply by `c·x^d`.
    pub fn shift(&self, d: &DimVector, c: &Rat) -> TruncSeries {
        Self::from_terms(self.rank, self.order, self.terms.iter().map(|(e, v)| (e.add(d), v * c)))
    }

    fn mul_impl(&self, other: &TruncSeries) -> TruncSeries {
        let k = self.order as i64;
        let mut out = Self::zero(self.rank, self.order);
        for (a, ca) in &self.terms {
            let room = k - a.delta();
            for (b, cb) in &other.terms {
                if b.delta() > room {
                    break;
                }
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }

    pub fn pow_usize(&self, n: usize) -> TruncSeries {
        let mut acc = Self::one(self.rank, self.order);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidArgument("exp requires zero constant term".into()));
        }
        let mut result = Self::one(self.rank, self.order);
        let mut term = Self::one(self.rank, self.order);
        for j in 1..=self.order {
            term = (&term * self).scale(&Rat::new(1.into(), j.into()));
            if term.is_zero() {
                break;
            }
            result = &result + &term;
        }
        Ok(result)
    }

    /// Formal logarithm of a unit series (constant term 1).
    pub fn log(&self) -> Result<TruncSeries> {
        if !self.is_unit() {
            return Err(Error::NotUnit(self.constant_term().to_string()));
        }
        let w = self - &Self::one(self.rank, self.order);
        let mut result = Self::zero(self.rank, self.order);
        let mut power = Self::one(self.rank, self.order);
        for j in 1..=self.order as i64 {
            power = &power * &w;
            if power.is_zero() {
                break;
            }
            let c = if j % 2 == 1 { Rat::new(1.into(), j.into()) } else { Rat::new((-1).into(), j.into()) };
            result = &result + &power.scale(&c);
        }
        Ok(result)
    }

    /// `u^r = exp(r·log u)` for a unit `u` and any rational `r`.
    pub fn pow_rat(&self, r: &Rat) -> Result<TruncSeries> {
        if r.is_zero() {
            if !self.is_unit() {
                return Err(Error::NotUnit(self.constant_term().to_string()));
            }
            return Ok(Self::one(self.rank, self.order));
        }
        self.log()?.scale(r).exp()
    }

    pub fn pow(&self, r: i64) -> Result<TruncSeries> {
        if r >= 0 && r <= 3 {
            if !self.is_unit() {
                return Err(Error::NotUnit(self.constant_term().to_string()));
            }
            return Ok(self.pow_usize(r as usize));
        }
        self.pow_rat(&rat(r))
    }

    pub fn inverse(&self) -> Result<TruncSeries> {
        self.pow(-1)
    }

    /// Canonical text: monomials in graded-lexicographic order, exact
    /// fractions, variables `x1 … xr`.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (d, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_string(d);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    /// Inverse of [`TruncSeries::to_canonical_string`]; also accepts any
    /// order of terms and repeated monomials.
    pub fn parse(text: &str, rank: usize, order: u32) -> Result<TruncSeries> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        let mut s = Self::zero(rank, order);
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(cur.is_empty() && i == 0) {
                if cur.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in {text:?}")));
                }
                pieces.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if ch == '-' {
                negative = true;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {text:?}")));
        }
        pieces.push((negative, cur));
        for (neg, piece) in pieces {
            let (d, mut c) = parse_term(&piece, rank)?;
            if neg {
                c = -c;
            }
            s.add_term(d, c);
        }
        Ok(s)
    }
}

fn monomial_string(d: &DimVector) -> String {
    let mut parts = Vec::new();
    for (i, &e) in d.coords().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

fn parse_term(piece: &str, rank: usize) -> Result<(DimVector, Rat)> {
    let mut coeff = Rat::one();
    let mut exps = vec![0i64; rank];
    for factor in piece.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {piece:?}")));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (var, exp) = match rest.split_once('^') {
                Some((v, e)) => (v, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                None => (rest, 1),
            };
            let idx: usize = var.parse().map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
            if idx == 0 || idx > rank || exp < 0 {
                return Err(Error::Parse(format!("variable out of range: {factor:?}")));
            }
            exps[idx - 1] += exp;
        } else {
            let c: Rat = factor.parse().map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
            coeff *= c;
        }
    }
    Ok((DimVector::new(exps), coeff))
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<'a> Add<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        debug_assert_eq!(self.order, rhs.order);
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        debug_assert_eq!(self.order, rhs.order);
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        debug_assert_eq!(self.order, rhs.order);
        self.mul_impl(rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(&-Rat::one())
    }
}
