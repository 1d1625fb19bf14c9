use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::qrat::QRat;
use crate::quiver::{DimVector, Quiver};
use crate::{Error, Result};

/// Truncated series over `QRat` with `x^d ⋆ x^e = q^{−χ(e,d)} x^{d+e}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QTorusElem {
    euler: Vec<Vec<i64>>,
    order: u32,
    terms: BTreeMap<DimVector, QRat>,
}

impl QTorusElem {
    /// The Euler matrix `χ(e_i, e_j)` of `quiver` (potential ignored).
    pub fn zero(quiver: &Quiver, order: u32) -> Self {
        let r = quiver.rank();
        let euler = (0..r)
            .map(|i| (0..r).map(|j| quiver.euler_unchecked(&DimVector::basis(r, i), &DimVector::basis(r, j))).collect())
            .collect();
        QTorusElem { euler, order, terms: BTreeMap::new() }
    }

    pub fn one(quiver: &Quiver, order: u32) -> Self {
        let mut s = Self::zero(quiver, order);
        s.terms.insert(DimVector::zero(quiver.rank()), QRat::one());
        s
    }

    fn empty_like(&self) -> Self {
        QTorusElem { euler: self.euler.clone(), order: self.order, terms: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.euler.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<DimVector, QRat> {
        &self.terms
    }

    pub fn coeff(&self, d: &DimVector) -> QRat {
        self.terms.get(d).cloned().unwrap_or_else(QRat::zero)
    }

    /// Adds `c·x^d`; terms above the order are dropped.
    pub fn add_term(&mut self, d: DimVector, c: QRat) {
        if d.delta() > self.order as i64 || c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            Entry::Occupied(mut o) => {
                let v = o.get() + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn chi(&self, d: &DimVector, e: &DimVector) -> i64 {
        let (dc, ec) = (d.coords(), e.coords());
        let mut s = 0;
        for (i, &a) in dc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in ec.iter().enumerate() {
                s += a * b * self.euler[i][j];
            }
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut out = self.empty_like();
        for (d, v) in &self.terms {
            out.add_term(d.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<DimVector, QRat> = BTreeMap::new();
        for (d, a) in &self.terms {
            for (e, b) in &other.terms {
                let s = d.add(e);
                if s.delta() > self.order as i64 {
                    continue;
                }
                let v = (a * b).shift_q(-self.chi(e, d));
                let entry = acc.entry(s).or_insert_with(QRat::zero);
                *entry = &*entry + &v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        QTorusElem { euler: self.euler.clone(), order: self.order, terms: acc }
    }

    /// `log S = Σ_{j≥1} (−1)^{j−1} (S − 1)^{⋆j} / j` for `S ≡ 1` in degree 0.
    pub fn log(&self) -> Result<Self> {
        let zero = DimVector::zero(self.rank());
        if self.coeff(&zero) != QRat::one() {
            return Err(Error::NotUnit("twisted logarithm needs constant term 1".into()));
        }
        let mut x = self.clone();
        x.terms.remove(&zero);
        let mut power = x.clone();
        let mut total = self.empty_like();
        for j in 1..=self.order as i64 {
            if power.terms.is_empty() {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let c = QRat::new(super::qrat::Poly::constant(sign), super::qrat::Poly::constant(j)).expect("j > 0");
            total = total.add(&power.scale(&c));
            power = power.mul(&x);
        }
        Ok(total)
    }

    /// Multiply every coefficient by an integer.
    pub fn scale_int(&self, c: i64) -> Self {
        let b = BigInt::from(c);
        let mut out = self.empty_like();
        for (d, v) in &self.terms {
            out.add_term(d.clone(), v.scale_int(&b));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::qrat::Poly;

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    fn mono(q: &Quiver, d: &[i64], k: u32) -> QTorusElem {
        let mut s = QTorusElem::zero(q, k);
        s.add_term(dv(d), QRat::one());
        s
    }

    #[test]
    fn twist_rule() {
        let q = Quiver::a2();
        // χ(e2, e1) = 0 and χ(e1, e2) = −1
        let ab = mono(&q, &[1, 0], 4).mul(&mono(&q, &[0, 1], 4));
        let ba = mono(&q, &[0, 1], 4).mul(&mono(&q, &[1, 0], 4));
        assert_eq!(ab.coeff(&dv(&[1, 1])), QRat::one());
        assert_eq!(ba.coeff(&dv(&[1, 1])), QRat::q_pow(1));
    }

    #[test]
    fn associativity() {
        let q = Quiver::kronecker(2);
        let mut a = QTorusElem::one(&q, 5);
        a.add_term(dv(&[1, 0]), QRat::from_poly(Poly::constant(2)));
        a.add_term(dv(&[0, 1]), QRat::q_pow(-1));
        let mut b = mono(&q, &[1, 1], 5);
        b.add_term(dv(&[0, 1]), QRat::q_pow(2));
        let c = mono(&q, &[1, 0], 5).add(&mono(&q, &[0, 2], 5));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
