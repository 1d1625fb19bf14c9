use std::collections::HashMap;

use super::qrat::{gl_order, Poly, QRat};
use crate::quiver::{DimVector, Quiver, Weight};
use crate::{Error, Rat, Result};

/// Memoized Harder–Narasimhan inversion for one quiver and one weight.
///
/// `rep(d) = Σ q^{−Σ_{j<l} χ(dˡ,dʲ)} Π ss(dʲ)` over tuples of strictly
/// decreasing slope `μ = θ/δ`, solved for `ss(d)`.
pub struct StackCounter {
    quiver: Quiver,
    theta: Weight,
    euler: Vec<Vec<i64>>,
    ss: HashMap<DimVector, QRat>,
    tail: HashMap<(DimVector, Option<Rat>), QRat>,
}

impl StackCounter {
    pub fn new(quiver: &Quiver, theta: &Weight) -> Result<Self> {
        check_counting_quiver(quiver)?;
        if theta.rank() != quiver.rank() {
            return Err(Error::DimensionMismatch { expected: quiver.rank(), got: theta.rank() });
        }
        let r = quiver.rank();
        let euler = (0..r)
            .map(|i| (0..r).map(|j| quiver.euler_unchecked(&DimVector::basis(r, i), &DimVector::basis(r, j))).collect())
            .collect();
        Ok(StackCounter { quiver: quiver.clone(), theta: theta.clone(), euler, ss: HashMap::new(), tail: HashMap::new() })
    }

    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    fn chi(&self, d: &DimVector, e: &DimVector) -> i64 {
        let mut s = 0;
        for (i, &a) in d.coords().iter().enumerate() {
            for (j, &b) in e.coords().iter().enumerate() {
                s += a * b * self.euler[i][j];
            }
        }
        s
    }

    /// Stack count of all representations of dimension `d`.
    pub fn rep(&self, d: &DimVector) -> QRat {
        rep_count(&self.quiver, d)
    }

    /// Stack count of `μ_θ`-semistable representations of dimension `d`.
    pub fn ss(&mut self, d: &DimVector) -> QRat {
        if d.is_zero() {
            return QRat::one();
        }
        if let Some(v) = self.ss.get(d) {
            return v.clone();
        }
        let mut total = self.rep(d);
        for d1 in d.sub_vectors() {
            if d1.is_zero() || d1 == *d {
                continue;
            }
            let rest = d.sub(&d1);
            let mu = self.theta.slope(&d1);
            let t = self.tail(&rest, Some(mu));
            if t.is_zero() {
                continue;
            }
            let s1 = self.ss(&d1);
            if s1.is_zero() {
                continue;
            }
            total = &total - &(&s1 * &t).shift_q(-self.chi(&rest, &d1));
        }
        self.ss.insert(d.clone(), total.clone());
        total
    }

    /// Sum over all HN types of `d`; equals `rep(d)` by construction.
    pub fn hn_total(&mut self, d: &DimVector) -> QRat {
        self.tail(d, None)
    }

    /// Sum over HN types of `e` whose slopes are all below `bound`.
    fn tail(&mut self, e: &DimVector, bound: Option<Rat>) -> QRat {
        if e.is_zero() {
            return QRat::one();
        }
        let key = (e.clone(), bound.clone());
        if let Some(v) = self.tail.get(&key) {
            return v.clone();
        }
        let mut total = QRat::zero();
        for d1 in e.sub_vectors() {
            if d1.is_zero() {
                continue;
            }
            let mu = self.theta.slope(&d1);
            if bound.as_ref().is_some_and(|b| mu >= *b) {
                continue;
            }
            let s1 = self.ss(&d1);
            if s1.is_zero() {
                continue;
            }
            let rest = e.sub(&d1);
            let t = self.tail(&rest, Some(mu));
            if t.is_zero() {
                continue;
            }
            total = &total + &(&s1 * &t).shift_q(-self.chi(&rest, &d1));
        }
        self.tail.insert(key, total.clone());
        total
    }
}

pub(crate) fn check_counting_quiver(quiver: &Quiver) -> Result<()> {
    if quiver.has_potential() {
        return Err(Error::Unsupported("counting needs an empty potential".into()));
    }
    if !quiver.is_acyclic() {
        return Err(Error::Unsupported("counting needs an acyclic quiver".into()));
    }
    Ok(())
}

/// `q^{Σ_a d_{s(a)} d_{t(a)}} / Π_i #GL_{d_i}(F_q)`.
pub(crate) fn rep_count(quiver: &Quiver, d: &DimVector) -> QRat {
    let c = d.coords();
    let dim: i64 = quiver.arrows().iter().map(|a| c[a.source] * c[a.target]).sum();
    let mut den = Poly::one();
    for &di in c {
        den = &den * &gl_order(di as usize);
    }
    QRat::new(Poly::monomial(dim as usize), den).expect("group orders are nonzero")
}
