use std::collections::BTreeSet;

use super::geometry::{arrangement_cells, minimize_signs};
use super::{hyperplane_basis, Cone, ScatteringDiagram, Wall};
use crate::quiver::DimVector;
use crate::tseries::{factorize, Hamiltonian, PoissonAuto, TruncSeries};
use crate::{rat, Error, Result};

/// Wall function of the wall element `flow(h)` for `h` supported on
/// multiples of `n`: `f = exp(Σ j·c_{jn} x^{jn})`.
pub(crate) fn wall_function_of(h: &Hamiltonian, n: &DimVector) -> Result<TruncSeries> {
    let s = h.series();
    let mut g = TruncSeries::zero(s.rank(), s.order());
    for (d, c) in s.iter() {
        let j = d.multiple_of(n).ok_or_else(|| {
            Error::InvariantViolation(format!("x^{d} is not on the ray of {n}"))
        })?;
        g.add_term(d.clone(), c * rat(j));
    }
    g.exp()
}

/// The consistent diagram supported on the cone complex of `P` whose wall at
/// each cell is the `θ^⊥` factor of `g` at an interior point. Fails when the
/// resulting product differs from `g`, i.e. `P` misses a wall direction.
pub fn reconstruct_from_group(g: &PoissonAuto, directions: &[DimVector]) -> Result<ScatteringDiagram> {
    let form = g.form();
    let r = g.rank();
    let k = g.order();
    let mut prim: BTreeSet<DimVector> = BTreeSet::new();
    for p in directions {
        if p.rank() != r {
            return Err(Error::DimensionMismatch { expected: r, got: p.rank() });
        }
        if !p.is_positive() {
            return Err(Error::InvalidArgument(format!("direction {p} is not in N⁺")));
        }
        prim.insert(p.primitive().0);
    }
    let prim: Vec<DimVector> = prim.into_iter().collect();
    let mut walls = Vec::new();
    for n in &prim {
        let basis = hyperplane_basis(n);
        let others: Vec<DimVector> = prim.iter().filter(|p| *p != n).cloned().collect();
        for cell in arrangement_cells(&basis, r, &others) {
            let (_, g0, _) = factorize(g, &cell.point)?;
            if g0.is_identity() {
                continue;
            }
            let h0 = g0.log()?;
            if let Some((d, _)) = h0.series().iter().find(|(d, _)| d.multiple_of(n).is_none()) {
                return Err(Error::DirectionsTooSmall(format!(
                    "the factor at {} has degree {d} off the ray of {n}",
                    super::path::fmt_weight(&cell.point)
                )));
            }
            let signs = minimize_signs(&basis, &cell.signs);
            let cone = if signs.is_empty() { Cone::Hyperplane } else { Cone::Signs(signs) };
            walls.push(Wall::new(n.clone(), cone, wall_function_of(&h0, n)?)?);
        }
    }
    let d = ScatteringDiagram::new(form, k, walls)?;
    // walls on hyperplanes missing from P would be lost; the product detects it
    if super::group_element(&d)? != *g {
        return Err(Error::DirectionsTooSmall("the cone complex misses walls of g".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::scattering::{group_element, is_consistent};
    use crate::tseries::wall_auto;

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    fn phi(q: &Quiver, d: &[i64], k: u32) -> PoissonAuto {
        let mut f = TruncSeries::one(q.rank(), k);
        f.add_term(dv(d), rat(1));
        wall_auto(&q.skew_form(), &dv(d), &f, 1).unwrap()
    }

    #[test]
    fn identity_gives_empty_diagram() {
        let q = Quiver::a2();
        let d = reconstruct_from_group(&PoissonAuto::identity(&q.skew_form(), 5), &[dv(&[1, 0])]).unwrap();
        assert!(d.walls().is_empty());
    }

    #[test]
    fn a2_pentagon_reconstruction() {
        let q = Quiver::a2();
        let k = 8;
        let g = phi(&q, &[0, 1], k).compose(&phi(&q, &[1, 0], k)).unwrap();
        let d = reconstruct_from_group(&g, &[dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1])]).unwrap();
        assert_eq!(d.normals().len(), 3);
        assert_eq!(d.walls().iter().filter(|w| w.normal() == &dv(&[1, 1])).count(), 1);
        let diag = d.walls().iter().find(|w| w.normal() == &dv(&[1, 1])).unwrap();
        assert_eq!(diag.function().to_canonical_string(), "1 + x1*x2");
        assert_eq!(*diag.cone(), Cone::Signs(vec![(dv(&[1, 0]), 1)]));
        assert!(is_consistent(&d).unwrap().is_consistent());
        assert_eq!(group_element(&d).unwrap(), g);
    }

    #[test]
    fn too_few_directions() {
        let q = Quiver::a2();
        let g = phi(&q, &[0, 1], 4).compose(&phi(&q, &[1, 0], 4)).unwrap();
        let err = reconstruct_from_group(&g, &[dv(&[1, 0]), dv(&[0, 1])]).unwrap_err();
        assert!(matches!(err, Error::DirectionsTooSmall(_)));
    }
}
