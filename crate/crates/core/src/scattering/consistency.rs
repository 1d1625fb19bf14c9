//! Joint-by-joint consistency. Joints are the codimension-2 strata cut out by
//! pairs of independent vectors among the wall normals and cone constraints;
//! around each one the loop is taken infinitesimally in a transverse plane.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::geometry::{angle_cmp, arrangement_cells, kernel, row_space_key};
use super::{Cone, ScatteringDiagram};
use crate::quiver::{sign_of, DimVector, Weight};
use crate::tseries::{Hamiltonian, PoissonAuto};
use crate::{rat, Rat, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    /// A point of the offending joint and the logarithm of the loop product there.
    Inconsistent { joint: Weight, discrepancy: Hamiltonian },
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

fn to_rat(v: &DimVector) -> Vec<Rat> {
    v.coords().iter().map(|&c| rat(c)).collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn eval(n: &DimVector, v: &[Rat]) -> Rat {
    dot(&to_rat(n), v)
}

/// Product of wall crossings along a small counter-clockwise loop around `x0`
/// in the plane `x0 + span(u, v)`. Only walls whose hyperplane contains both
/// `x0` and the directions killed by `a`, `b` can contribute.
fn loop_product(d: &ScatteringDiagram, x0: &Weight, u: &[Rat], v: &[Rat]) -> Result<PoissonAuto> {
    let mut rays: Vec<((Rat, Rat), usize, i32)> = Vec::new();
    for (i, wall) in d.walls().iter().enumerate() {
        let n = wall.normal();
        if !x0.eval(n).is_zero() {
            continue;
        }
        let (nu, nv) = (eval(n, u), eval(n, v));
        if nu.is_zero() && nv.is_zero() {
            continue;
        }
        for dir in [(nv.clone(), -nu.clone()), (-nv.clone(), nu.clone())] {
            let step: Vec<Rat> = u.iter().zip(v).map(|(a, b)| a * &dir.0 + b * &dir.1).collect();
            let inside = match wall.cone() {
                Cone::Hyperplane => true,
                Cone::Signs(signs) => signs.iter().all(|(p, s)| {
                    let at = x0.eval(p);
                    let sg = if at.is_zero() { sign_of(&eval(p, &step)) } else { sign_of(&at) };
                    sg == *s
                }),
            };
            if inside {
                // counter-clockwise velocity at direction (s,t) is (−t, s)
                let vel: Vec<Rat> = u.iter().zip(v).map(|(a, b)| -(a * &dir.1) + b * &dir.0).collect();
                rays.push((dir, i, -sign_of(&eval(n, &vel))));
            }
        }
    }
    rays.sort_by(|a, b| angle_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut acc = PoissonAuto::identity(d.form(), d.order());
    for (_, i, sign) in rays {
        let w = &d.walls()[i];
        acc = acc.then_wall(w.normal(), w.function(), sign as i64)?;
    }
    Ok(acc)
}

/// The loop product around the origin of a rank-2 diagram, starting just
/// below the positive `y₁`-axis.
pub fn loop_product_at_origin(d: &ScatteringDiagram) -> Result<PoissonAuto> {
    let r = d.rank();
    let e = |i: usize| -> Vec<Rat> { (0..r).map(|j| rat((i == j) as i64)).collect() };
    loop_product(d, &Weight::zero(r), &e(0), &e(1))
}

pub fn is_consistent(d: &ScatteringDiagram) -> Result<Consistency> {
    let r = d.rank();
    if r < 2 || d.walls().is_empty() {
        return Ok(Consistency::Consistent);
    }
    let mut vectors: BTreeSet<DimVector> = BTreeSet::new();
    for w in d.walls() {
        vectors.insert(w.normal().clone());
        if let Cone::Signs(signs) = w.cone() {
            for (p, _) in signs {
                let (prim, _) = p.primitive();
                let neg = prim.scale(-1);
                vectors.insert(if neg > prim { neg } else { prim });
            }
        }
    }
    let vectors: Vec<DimVector> = vectors.into_iter().collect();

    let mut seen = BTreeSet::new();
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let (a, b) = (&vectors[i], &vectors[j]);
            let key = row_space_key(&[a, b]);
            if key.len() < 2 || !seen.insert(key) {
                continue;
            }
            let Some((u, v)) = transverse_pair(a, b) else { continue };
            let basis = kernel(&[to_rat(a), to_rat(b)], r);
            let forms: Vec<DimVector> = vectors.iter().filter(|p| !vanishes_on(p, &basis)).cloned().collect();
            for cell in arrangement_cells(&basis, r, &forms) {
                let g = loop_product(d, &cell.point, &u, &v)?;
                if !g.is_identity() {
                    return Ok(Consistency::Inconsistent { joint: cell.point, discrepancy: g.log()? });
                }
            }
        }
    }
    Ok(Consistency::Consistent)
}

fn vanishes_on(p: &DimVector, basis: &[Vec<Rat>]) -> bool {
    basis.iter().all(|b| eval(p, b).is_zero())
}

/// Coordinate vectors `e_i, e_j` on which `(a, b)` is invertible.
fn transverse_pair(a: &DimVector, b: &DimVector) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let r = a.rank();
    let (ac, bc) = (a.coords(), b.coords());
    for i in 0..r {
        for j in i + 1..r {
            if ac[i] * bc[j] - ac[j] * bc[i] != 0 {
                let e = |k: usize| -> Vec<Rat> { (0..r).map(|l| rat((l == k) as i64)).collect() };
                return Some((e(i), e(j)));
            }
        }
    }
    None
}
