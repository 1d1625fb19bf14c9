//! Finite-field counting: stack counts as rational functions of `q`, the
//! Harder–Narasimhan recursion for semistable counts, Joyce invariants from
//! the `(q−1)`-regularized logarithm in the quantum torus, framed-moduli
//! Euler numbers, and the stability scattering diagram they assemble into.
//!
//! The recursion needs an acyclic quiver without potential. Wall support for
//! quivers with relations is decided by the oracle over `F_2` and `F_3`.

mod hn;
mod qrat;
mod torus;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use hn::StackCounter;
pub use qrat::{gl_order, q_power_minus_one, Poly, QRat};
pub use torus::QTorusElem;

use crate::oracle;
use crate::quiver::{lift_weight, DimVector, Quiver, Weight};
use crate::scattering::geometry::{arrangement_cells, minimize_signs};
use crate::scattering::{group_element, Cone, ScatteringDiagram, Wall};
use crate::tseries::{Hamiltonian, PoissonAuto, TruncSeries};
use crate::{rat, Error, Rat, Result};

pub fn rep_stack_count(quiver: &Quiver, d: &DimVector) -> Result<QRat> {
    if quiver.has_potential() {
        return Err(Error::Unsupported("stack counts need an empty potential".into()));
    }
    if d.rank() != quiver.rank() {
        return Err(Error::DimensionMismatch { expected: quiver.rank(), got: d.rank() });
    }
    Ok(hn::rep_count(quiver, d))
}

pub fn ss_stack_count(quiver: &Quiver, d: &DimVector, theta: &Weight) -> Result<QRat> {
    if d.rank() != quiver.rank() {
        return Err(Error::DimensionMismatch { expected: quiver.rank(), got: d.rank() });
    }
    Ok(StackCounter::new(quiver, theta)?.ss(d))
}

/// `(q−1)·(log S)_d` for `S = 1 + Σ_{d ∈ θ^⊥, δ(d) ≤ k} ss(d)·x^d`.
pub fn joyce_epsilons(quiver: &Quiver, theta: &Weight, order: u32) -> Result<BTreeMap<DimVector, QRat>> {
    let dims: Vec<DimVector> = DimVector::all_positive(quiver.rank(), order as i64)
        .into_iter()
        .filter(|d| theta.eval(d).is_zero())
        .collect();
    epsilons_on(quiver, theta, order, &dims)
}

fn epsilons_on(quiver: &Quiver, theta: &Weight, order: u32, dims: &[DimVector]) -> Result<BTreeMap<DimVector, QRat>> {
    let mut counter = StackCounter::new(quiver, theta)?;
    let mut s = QTorusElem::one(quiver, order);
    for d in dims {
        s.add_term(d.clone(), counter.ss(d));
    }
    let q_minus_1 = QRat::from_poly(q_power_minus_one(1));
    Ok(s.log()?.terms().iter().map(|(d, c)| (d.clone(), c * &q_minus_1)).collect())
}

fn specialize(eps: BTreeMap<DimVector, QRat>) -> Result<BTreeMap<DimVector, Rat>> {
    let one = Rat::one();
    let mut out = BTreeMap::new();
    for (d, e) in eps {
        if !e.regular_at(&one) {
            return Err(Error::InvariantViolation(format!("ε_{d} = {e} has a pole at q = 1")));
        }
        let v = e.eval(&one)?;
        if !v.is_zero() {
            out.insert(d, v);
        }
    }
    Ok(out)
}

/// `J(d, θ) = ε_d(1)` for `d ∈ θ^⊥ ∩ N⁺`, `δ(d) ≤ k`; zero values omitted.
pub fn joyce_invariants(quiver: &Quiver, theta: &Weight, order: u32) -> Result<BTreeMap<DimVector, Rat>> {
    specialize(joyce_epsilons(quiver, theta, order)?)
}

/// `½·min{|θ(n)|/δ(n) : n ∈ N⁺, δ(n) ≤ bound, θ(n) ≠ 0}`, or 1.
pub fn perturbation_epsilon(theta: &Weight, bound: i64) -> Rat {
    DimVector::all_positive(theta.rank(), bound)
        .iter()
        .filter_map(|n| {
            let v = theta.eval(n);
            (!v.is_zero()).then(|| v.abs() / rat(n.delta()))
        })
        .min()
        .map(|m| m / rat(2))
        .unwrap_or_else(Rat::one)
}

/// Euler number of the framed moduli space `F(d, m, θ)`, from the point
/// count `(q−1)·ss(Q⋆, (d,1), (θ−εδ)⋆)`, which must be a polynomial.
pub fn framed_count(quiver: &Quiver, d: &DimVector, m: &Weight, theta: &Weight) -> Result<BigInt> {
    hn::check_counting_quiver(quiver)?;
    if d.rank() != quiver.rank() || theta.rank() != quiver.rank() {
        return Err(Error::DimensionMismatch { expected: quiver.rank(), got: d.rank() });
    }
    if !d.is_nonnegative() {
        return Err(Error::InvalidArgument(format!("{d} is not in N^⊕")));
    }
    let ext = quiver.extend(m)?;
    let eps = perturbation_epsilon(theta, d.delta() + 1);
    let lifted = lift_weight(&theta.minus_delta(&eps), d);
    let dstar = d.extended(1);
    let points = &StackCounter::new(&ext, &lifted)?.ss(&dstar) * &QRat::from_poly(q_power_minus_one(1));
    if !points.is_polynomial() {
        return Err(Error::InvariantViolation(format!(
            "framed point count {points} for d = {d} is not a polynomial; strictly semistable objects leak in"
        )));
    }
    let v = points.eval(&Rat::one())?;
    if !v.is_integer() {
        return Err(Error::InvariantViolation(format!("framed Euler number {v} is not an integer")));
    }
    Ok(v.to_integer())
}

/// Whether some `d` with `δ(d) ≤ k` and `θ(d) = 0` admits a nonzero
/// semistable representation.
pub fn supports_wall(quiver: &Quiver, theta: &Weight, order: u32) -> Result<bool> {
    let dims: Vec<DimVector> = DimVector::all_positive(quiver.rank(), order as i64)
        .into_iter()
        .filter(|d| theta.eval(d).is_zero())
        .collect();
    if quiver.has_potential() || !quiver.is_acyclic() {
        for d in &dims {
            if exists_by_oracle(quiver, d, theta)? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let mut counter = StackCounter::new(quiver, theta)?;
    Ok(dims.iter().any(|d| !counter.ss(d).is_zero()))
}

fn exists_by_oracle(quiver: &Quiver, d: &DimVector, theta: &Weight) -> Result<bool> {
    for p in [2, 3] {
        if oracle::exists_semistable(quiver, d, theta, p, oracle::DEFAULT_BUDGET)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A primitive wall direction and the multiples carrying semistables for a
/// generic `θ` in some chamber of `n^⊥`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WallDirection {
    pub normal: DimVector,
    pub dims: Vec<DimVector>,
}

/// Chambers of `n^⊥` cut out by every other primitive `p` with `δ(p) ≤ k`;
/// inside one, `θ^⊥ ∩ N⁺_{≤k}` is the ray of `n`.
fn wall_chambers(n: &DimVector, order: u32) -> Vec<(Vec<(DimVector, i32)>, Weight, Vec<Vec<Rat>>)> {
    let r = n.rank();
    let basis = crate::scattering::hyperplane_basis(n);
    let forms: Vec<DimVector> = DimVector::all_positive(r, order as i64)
        .into_iter()
        .filter(|p| p.is_primitive() && p != n)
        .collect();
    arrangement_cells(&basis, r, &forms)
        .into_iter()
        .map(|c| (c.signs, c.point, basis.clone()))
        .collect()
}

fn primitive_directions(rank: usize, order: u32) -> Vec<DimVector> {
    DimVector::all_positive(rank, order as i64).into_iter().filter(|d| d.is_primitive()).collect()
}

fn multiples(n: &DimVector, order: u32) -> Vec<DimVector> {
    (1..=order as i64 / n.delta()).map(|j| n.scale(j)).collect()
}

pub fn wall_directions(quiver: &Quiver, order: u32) -> Result<Vec<WallDirection>> {
    let counting = !quiver.has_potential() && quiver.is_acyclic();
    let mut out = Vec::new();
    for n in primitive_directions(quiver.rank(), order) {
        let mut dims: Vec<DimVector> = Vec::new();
        for (_, theta, _) in wall_chambers(&n, order) {
            let mut counter = if counting { Some(StackCounter::new(quiver, &theta)?) } else { None };
            for d in multiples(&n, order) {
                if dims.contains(&d) {
                    continue;
                }
                let present = match counter.as_mut() {
                    Some(c) => !c.ss(&d).is_zero(),
                    None => exists_by_oracle(quiver, &d, &theta)?,
                };
                if present {
                    dims.push(d);
                }
            }
        }
        if !dims.is_empty() {
            dims.sort();
            out.push(WallDirection { normal: n, dims });
        }
    }
    Ok(out)
}

/// Walls `(n, chamber of n^⊥, exp(Σ J(d,θ)x^d))` over all primitive `n`
/// with `δ(n) ≤ k`; chambers with trivial invariants are dropped.
pub fn stability_diagram(quiver: &Quiver, order: u32) -> Result<ScatteringDiagram> {
    hn::check_counting_quiver(quiver)?;
    let r = quiver.rank();
    let form = quiver.skew_form();
    let mut walls = Vec::new();
    for n in primitive_directions(r, order) {
        let dims = multiples(&n, order);
        for (signs, theta, basis) in wall_chambers(&n, order) {
            let j = specialize(epsilons_on(quiver, &theta, order, &dims)?)?;
            if j.is_empty() {
                continue;
            }
            let h = Hamiltonian::new(TruncSeries::from_terms(r, order, j))?;
            let f = crate::scattering::wall_function_of(&h, &n)?;
            let signs = minimize_signs(&basis, &signs);
            let cone = if signs.is_empty() { Cone::Hyperplane } else { Cone::Signs(signs) };
            walls.push(Wall::new(n.clone(), cone, f)?);
        }
    }
    ScatteringDiagram::new(&form, order, walls)
}

pub fn stability_group_element(quiver: &Quiver, order: u32) -> Result<PoissonAuto> {
    group_element(&stability_diagram(quiver, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn rep_counts() {
        let a2 = Quiver::a2();
        assert_eq!(rep_stack_count(&a2, &dv(&[1, 1])).unwrap().to_string(), "q/(q^2 - 2*q + 1)");
        assert_eq!(rep_stack_count(&a2, &dv(&[0, 0])).unwrap(), QRat::one());
        assert_eq!(rep_stack_count(&Quiver::kronecker(2), &dv(&[1, 0])).unwrap().to_string(), "1/(q - 1)");
        assert!(rep_stack_count(&Quiver::triangle_with_potential(), &dv(&[1, 1, 1])).is_err());
    }

    #[test]
    fn semistable_counts() {
        let a2 = Quiver::a2();
        let d = dv(&[1, 1]);
        assert_eq!(ss_stack_count(&a2, &d, &w(&[1, -1])).unwrap().to_string(), "1/(q - 1)");
        assert!(ss_stack_count(&a2, &d, &w(&[-1, 1])).unwrap().is_zero());
        assert_eq!(ss_stack_count(&a2, &d, &w(&[0, 0])).unwrap(), rep_stack_count(&a2, &d).unwrap());
    }

    #[test]
    fn joyce_values() {
        let a2 = Quiver::a2();
        let j = joyce_invariants(&a2, &w(&[1, -1]), 6).unwrap();
        assert_eq!(j.get(&dv(&[1, 1])), Some(&ratio(1, 1)));
        assert_eq!(j.len(), 3);
        assert_eq!(j[&dv(&[2, 2])], ratio(-1, 4));
        let j = joyce_invariants(&a2, &w(&[0, 1]), 4).unwrap();
        let expect: Vec<Rat> = (1..=4).map(|k| ratio(if k % 2 == 1 { 1 } else { -1 }, k * k)).collect();
        let got: Vec<Rat> = (1..=4).map(|k| j[&dv(&[k, 0])].clone()).collect();
        assert_eq!(got, expect);
        let k2 = joyce_invariants(&Quiver::kronecker(2), &w(&[1, -1]), 4).unwrap();
        assert_eq!(k2[&dv(&[1, 1])], ratio(2, 1));
        assert_eq!(k2[&dv(&[2, 2])], ratio(1, 2));
    }

    #[test]
    fn grassmannian_framed_counts() {
        let a2 = Quiver::a2();
        let theta = w(&[0, 1]);
        for (k, expect) in [(0, 1), (1, 3), (2, 3), (3, 1), (4, 0)] {
            let c = framed_count(&a2, &dv(&[k, 0]), &w(&[3, 0]), &theta).unwrap();
            assert_eq!(c, BigInt::from(expect));
        }
    }

    #[test]
    fn framed_a2_below_both_walls() {
        let c = framed_count(&Quiver::a2(), &dv(&[1, 1]), &w(&[1, 0]), &w(&[-1, -1])).unwrap();
        assert_eq!(c, BigInt::from(1));
    }

    #[test]
    fn a2_directions_and_diagram() {
        let a2 = Quiver::a2();
        let dirs: Vec<DimVector> = wall_directions(&a2, 4).unwrap().into_iter().map(|d| d.normal).collect();
        assert_eq!(dirs, vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 1])]);
        let d = stability_diagram(&a2, 6).unwrap();
        let fs: Vec<String> = d.walls().iter().map(|w| w.function().to_canonical_string()).collect();
        assert!(fs.iter().all(|f| ["1 + x1", "1 + x2", "1 + x1*x2"].contains(&f.as_str())));
        assert!(!supports_wall(&a2, &w(&[1, 2]), 6).unwrap());
        assert!(supports_wall(&a2, &w(&[1, -1]), 6).unwrap());
    }

    #[test]
    fn hn_identity_closure() {
        let k2 = Quiver::kronecker(2);
        let theta = w(&[2, -1]);
        let mut counter = StackCounter::new(&k2, &theta).unwrap();
        for d in DimVector::all_positive(2, 4) {
            assert_eq!(counter.hn_total(&d), counter.rep(&d));
        }
    }
}
