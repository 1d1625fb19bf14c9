use super::consistency::loop_product_at_origin;
use super::{Cone, ScatteringDiagram, Wall};
use crate::quiver::{DimVector, SkewForm};
use crate::tseries::TruncSeries;
use crate::{rat, Error, Result};

/// Order-by-order completion of a rank-2 diagram whose initial walls are
/// full lines. At degree `m` the loop product around the origin is `exp` of a
/// degree-`m` Hamiltonian modulo higher terms; each monomial `c·x^d` is
/// cancelled by an outgoing ray `ℝ≥0·(−⟨−,n⟩)` in `n^⊥`, `n = prim(d)`.
pub fn ks_complete(form: &SkewForm, initial: &[Wall], order: u32) -> Result<ScatteringDiagram> {
    if form.rank() != 2 {
        return Err(Error::Unsupported(format!("completion is implemented in rank 2, got rank {}", form.rank())));
    }
    let mut walls: Vec<Wall> = Vec::with_capacity(initial.len());
    for w in initial {
        if *w.cone() != Cone::Hyperplane {
            return Err(Error::InvalidArgument(format!("initial wall {} is not a full line", w.normal())));
        }
        walls.push(w.with_function(w.function().with_order(order)));
    }
    let mut diagram = ScatteringDiagram::new(form, order, walls.clone())?;
    let mut added: Vec<Wall> = Vec::new();

    for m in 1..=order as i64 {
        let loop_g = loop_product_at_origin(&diagram)?;
        if loop_g.is_identity() {
            break;
        }
        let h = loop_g.leading_log(m)?;
        for (d, c) in h.series().iter() {
            let (n, j) = d.primitive();
            let theta_n = form.pairing_with(&n);
            if theta_n.iter().all(|&x| x == 0) {
                return Err(Error::CentralNormal(n.to_string()));
            }
            let w: Vec<i64> = theta_n.iter().map(|x| -x).collect();
            let i = (0..2).find(|&i| w[i] != 0).expect("nonzero direction");
            let cone = Cone::Signs(vec![(DimVector::basis(2, i), w[i].signum() as i32)]);
            // counter-clockwise velocity at w is (−w₂, w₁)
            let eps = -(n.coords()[0] * -w[1] + n.coords()[1] * w[0]).signum();
            let a = c * rat(-eps * j);
            let mut g = TruncSeries::zero(2, order);
            g.add_term(d.clone(), a);
            let factor = g.exp()?;
            match added.iter_mut().find(|x| x.normal() == &n && x.cone() == &cone) {
                Some(existing) => *existing = existing.with_function(existing.function() * &factor),
                None => added.push(Wall::new(n, cone, factor)?),
            }
        }
        diagram = ScatteringDiagram::new(form, order, walls.iter().chain(&added).cloned().collect())?;
    }
    Ok(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::scattering::{cluster_initial, is_consistent, is_incoming};

    #[test]
    fn a2_completion_adds_one_ray() {
        let q = Quiver::a2();
        let d = ks_complete(&q.skew_form(), &cluster_initial(&q, 8), 8).unwrap();
        assert_eq!(d.walls().len(), 3);
        let new = &d.walls()[2];
        assert_eq!(new.normal(), &DimVector::new(vec![1, 1]));
        assert_eq!(new.function().to_canonical_string(), "1 + x1*x2");
        assert!(!is_incoming(new, &q.skew_form()).unwrap());
        assert!(is_consistent(&d).unwrap().is_consistent());
    }

    #[test]
    fn completion_is_idempotent() {
        let q = Quiver::a2();
        let once = ks_complete(&q.skew_form(), &cluster_initial(&q, 6), 6).unwrap();
        let init: Vec<Wall> = once.walls().iter().filter(|w| *w.cone() == Cone::Hyperplane).cloned().collect();
        let twice = ks_complete(&q.skew_form(), &init, 6).unwrap();
        assert_eq!(once, twice);
        let single = Quiver::single_vertex();
        let d = ks_complete(&single.skew_form(), &cluster_initial(&single, 4), 4);
        assert!(matches!(d, Err(Error::Unsupported(_))));
    }

    #[test]
    fn kronecker_low_order() {
        let q = Quiver::kronecker(2);
        let d = ks_complete(&q.skew_form(), &cluster_initial(&q, 6), 6).unwrap();
        assert!(is_consistent(&d).unwrap().is_consistent());
        let normals: Vec<String> = d.normals().iter().map(|n| n.to_string()).collect();
        assert_eq!(normals, vec!["(0,1)", "(1,0)", "(1,1)", "(1,2)", "(2,1)", "(2,3)", "(3,2)"]);
        for w in &d.walls()[2..] {
            assert!(!is_incoming(w, &q.skew_form()).unwrap());
        }
    }
}
