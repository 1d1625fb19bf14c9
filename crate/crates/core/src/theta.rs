//! Theta functions `ϑ^m(θ)` for `m ∈ M^⊕`, computed from path-ordered
//! products on a consistent diagram and, independently, from framed counts.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::counting::{framed_count, supports_wall, StackCounter};
use crate::quiver::{DimVector, Quiver, Weight};
use crate::scattering::{canonical_positive, is_consistent, path_ordered_product, ScatteringDiagram};
use crate::tseries::{PoissonAuto, TruncSeries};
use crate::{Error, Rat, Result};

/// `z^m · s` with `s` a truncated series in the `x` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtSeries {
    m: Vec<i64>,
    coeff: TruncSeries,
}

impl ExtSeries {
    pub fn new(m: Vec<i64>, coeff: TruncSeries) -> Result<Self> {
        if m.len() != coeff.rank() {
            return Err(Error::DimensionMismatch { expected: coeff.rank(), got: m.len() });
        }
        Ok(ExtSeries { m, coeff })
    }

    /// `z^m` itself.
    pub fn monomial(m: Vec<i64>, order: u32) -> Self {
        let r = m.len();
        ExtSeries { m, coeff: TruncSeries::one(r, order) }
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn coeff(&self) -> &TruncSeries {
        &self.coeff
    }

    pub fn mul(&self, other: &ExtSeries) -> ExtSeries {
        ExtSeries {
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
            coeff: &self.coeff * &other.coeff,
        }
    }

    /// `g(z^m·s) = z^m·Π u_i^{m_i}·g(s)`.
    pub fn act(&self, g: &PoissonAuto) -> Result<ExtSeries> {
        Ok(ExtSeries { m: self.m.clone(), coeff: g.act_on_ext(&self.m, &self.coeff)? })
    }
}

impl fmt::Display for ExtSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(|c| c.to_string()).collect();
        write!(f, "z^({}) * ({})", m.join(","), self.coeff.to_canonical_string())
    }
}

fn check_m(m: &[i64], rank: usize) -> Result<()> {
    if m.len() != rank {
        return Err(Error::DimensionMismatch { expected: rank, got: m.len() });
    }
    if m.iter().any(|&c| c < 0) {
        return Err(Error::Unsupported("theta functions are implemented for m in the positive cone only".into()));
    }
    Ok(())
}

/// `ϑ^m(θ) = Φ(θ₊ → θ)(z^m)` on a consistent diagram.
pub fn theta_via_path(d: &ScatteringDiagram, m: &[i64], theta: &Weight) -> Result<ExtSeries> {
    check_m(m, d.rank())?;
    if d.on_support(theta) {
        return Err(Error::NonGeneric(format!("θ = {theta} lies on a wall")));
    }
    if !is_consistent(d)?.is_consistent() {
        return Err(Error::Inconsistent("theta functions need a consistent diagram".into()));
    }
    theta_via_path_from(d, m, &canonical_positive(d), theta)
}

/// `Φ(start → θ)(z^m)` for any `start` in the positive chamber; on a
/// consistent diagram this does not depend on `start`.
pub fn theta_via_path_from(d: &ScatteringDiagram, m: &[i64], start: &Weight, theta: &Weight) -> Result<ExtSeries> {
    check_m(m, d.rank())?;
    if start.rank() != d.rank() || theta.rank() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: start.rank().min(theta.rank()) });
    }
    if !start.is_positive() {
        return Err(Error::InvalidArgument(format!("basepoint {start} is not in the positive chamber")));
    }
    if d.on_support(theta) {
        return Err(Error::NonGeneric(format!("θ = {theta} lies on a wall")));
    }
    let path = crate::scattering::generic_path(d, start, theta)?;
    let g = path_ordered_product(d, &path)?;
    ExtSeries::monomial(m.to_vec(), d.order()).act(&g)
}

/// `ϑ^m(θ) = z^m·Σ_{δ(d) ≤ k} K(d, m, θ)·x^d`.
pub fn theta_via_counts(quiver: &Quiver, m: &[i64], theta: &Weight, order: u32) -> Result<ExtSeries> {
    check_m(m, quiver.rank())?;
    if supports_wall(quiver, theta, order)? {
        return Err(Error::NonGeneric(format!("θ = {theta} lies on a wall")));
    }
    let mw = Weight::from_ints(m);
    let r = quiver.rank();
    let mut s = TruncSeries::zero(r, order);
    s.add_term(DimVector::zero(r), Rat::from_integer(1.into()));
    for d in DimVector::all_positive(r, order as i64) {
        let k = framed_count(quiver, &d, &mw, theta)?;
        if !k.is_zero() {
            s.add_term(d, Rat::from_integer(k));
        }
    }
    ExtSeries::new(m.to_vec(), s)
}

/// `x^n ↦ x^n·Π_i (Σ_{d ∈ θ^⊥} K(d, e_i^*, θ)·x^d)^{⟨e_i,n⟩}` for `θ` on at
/// most one wall direction.
pub fn wall_auto_via_framed(quiver: &Quiver, theta: &Weight, order: u32) -> Result<PoissonAuto> {
    let r = quiver.rank();
    let dims: Vec<DimVector> = DimVector::all_positive(r, order as i64)
        .into_iter()
        .filter(|d| theta.eval(d).is_zero())
        .collect();
    let mut counter = StackCounter::new(quiver, theta)?;
    let directions: BTreeSet<DimVector> =
        dims.iter().filter(|d| !counter.ss(d).is_zero()).map(|d| d.primitive().0).collect();
    if directions.len() > 1 {
        let list: Vec<String> = directions.iter().map(|d| d.to_string()).collect();
        return Err(Error::NonGeneric(format!("θ = {theta} lies on a joint of walls {}", list.join(", "))));
    }
    let images = (0..r)
        .map(|i| {
            let framing = Weight::from_ints(&DimVector::basis(r, i).coords().to_vec());
            let mut u = TruncSeries::one(r, order);
            for d in &dims {
                let k = framed_count(quiver, d, &framing, theta)?;
                if !k.is_zero() {
                    u.add_term(d.clone(), Rat::from_integer(k));
                }
            }
            Ok(u)
        })
        .collect::<Result<Vec<_>>>()?;
    PoissonAuto::from_images(&quiver.skew_form(), images)
}
