use num_traits::{One, Zero};

use super::{consistency, ScatteringDiagram, Wall};
use crate::quiver::{sign_of, Weight};
use crate::tseries::PoissonAuto;
use crate::{rat, Error, Rat, Result};

/// A piecewise-linear path through rational waypoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenericPath {
    waypoints: Vec<Weight>,
}

impl GenericPath {
    pub fn new(waypoints: Vec<Weight>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidArgument("a path needs at least two waypoints".into()));
        }
        let r = waypoints[0].rank();
        if let Some(w) = waypoints.iter().find(|w| w.rank() != r) {
            return Err(Error::DimensionMismatch { expected: r, got: w.rank() });
        }
        Ok(GenericPath { waypoints })
    }

    pub fn segment(a: Weight, b: Weight) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn waypoints(&self) -> &[Weight] {
        &self.waypoints
    }

    pub fn start(&self) -> &Weight {
        &self.waypoints[0]
    }

    pub fn end(&self) -> &Weight {
        self.waypoints.last().expect("at least two waypoints")
    }

    pub fn reversed(&self) -> GenericPath {
        GenericPath { waypoints: self.waypoints.iter().rev().cloned().collect() }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn then(&self, other: &GenericPath) -> Result<GenericPath> {
        if self.end() != other.start() {
            return Err(Error::InvalidArgument("paths do not meet".into()));
        }
        let mut w = self.waypoints.clone();
        w.extend(other.waypoints[1..].iter().cloned());
        Ok(GenericPath { waypoints: w })
    }
}

/// One wall crossing: the wall's index in the diagram, where it happens
/// (segment index and parameter in `(0,1)`), and `ε = −sign γ'(n₀)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub wall: usize,
    pub segment: usize,
    pub t: Rat,
    pub sign: i32,
}

fn lerp(a: &Weight, b: &Weight, t: &Rat) -> Weight {
    Weight::new(a.coords().iter().zip(b.coords()).map(|(x, y)| x + (y - x) * t).collect())
}

/// Whether the closed segment `a→b`, lying in the wall's hyperplane, meets
/// the wall's closed cone.
fn segment_meets_cone(wall: &Wall, a: &Weight, b: &Weight) -> bool {
    let (mut lo, mut hi) = (Rat::zero(), Rat::one());
    if let super::Cone::Signs(signs) = wall.cone() {
        for (p, s) in signs {
            // s·(pa + t(pb − pa)) ≥ 0
            let pa = a.eval(p) * rat(*s as i64);
            let slope = b.eval(p) * rat(*s as i64) - &pa;
            match sign_of(&slope) {
                0 if sign_of(&pa) < 0 => return false,
                0 => {}
                1 => lo = lo.max(-&pa / &slope),
                _ => hi = hi.min(-&pa / &slope),
            }
        }
    }
    lo <= hi
}

/// Walls met by `γ`, in traversal order.
pub fn crossings(d: &ScatteringDiagram, path: &GenericPath) -> Result<Vec<Crossing>> {
    for p in path.waypoints() {
        if let Some(i) = d.walls().iter().position(|w| w.contains_closed(p)) {
            return Err(Error::NonGeneric(format!("waypoint {} lies on wall {}", fmt_weight(p), describe(d, i))));
        }
    }
    let mut out = Vec::new();
    for (seg, pair) in path.waypoints().windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        let mut here: Vec<Crossing> = Vec::new();
        for (i, wall) in d.walls().iter().enumerate() {
            let va = a.eval(wall.normal());
            let vb = b.eval(wall.normal());
            if va.is_zero() && vb.is_zero() {
                if segment_meets_cone(wall, a, b) {
                    return Err(Error::NonGeneric(format!("segment {seg} runs inside wall {}", describe(d, i))));
                }
                continue;
            }
            if va.is_zero() || vb.is_zero() || sign_of(&va) == sign_of(&vb) {
                continue;
            }
            let t = &va / (&va - &vb);
            let point = lerp(a, b, &t);
            if wall.contains(&point) {
                here.push(Crossing { wall: i, segment: seg, t, sign: -sign_of(&(vb - va)) });
            } else if wall.contains_closed(&point) {
                return Err(Error::NonGeneric(format!(
                    "segment {seg} crosses the boundary of wall {} at {}",
                    describe(d, i),
                    fmt_weight(&point)
                )));
            }
        }
        here.sort_by(|x, y| x.t.cmp(&y.t).then(x.wall.cmp(&y.wall)));
        for pair in here.windows(2) {
            if pair[0].t == pair[1].t && d.walls()[pair[0].wall].normal() != d.walls()[pair[1].wall].normal() {
                return Err(Error::NonGeneric(format!(
                    "segment {seg} meets walls {} and {} at one point",
                    describe(d, pair[0].wall),
                    describe(d, pair[1].wall)
                )));
            }
        }
        out.extend(here);
    }
    Ok(out)
}

fn describe(d: &ScatteringDiagram, i: usize) -> String {
    format!("#{i} (normal {})", d.walls()[i].normal())
}

pub(crate) fn fmt_weight(w: &Weight) -> String {
    let parts: Vec<String> = w.coords().iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `Φ(γ) = Φ_last^{ε} ∘ … ∘ Φ_first^{ε}`.
pub fn path_ordered_product(d: &ScatteringDiagram, path: &GenericPath) -> Result<PoissonAuto> {
    let mut acc = PoissonAuto::identity(d.form(), d.order());
    for c in crossings(d, path)? {
        let w = &d.walls()[c.wall];
        acc = acc.then_wall(w.normal(), w.function(), c.sign as i64)?;
    }
    Ok(acc)
}

/// `B = 1 + max |normal coordinate| · k`.
pub(crate) fn perturbation_base(d: &ScatteringDiagram) -> i64 {
    let m = d.walls().iter().flat_map(|w| w.normal().coords().iter().map(|c| c.abs())).max().unwrap_or(1);
    1 + m * d.order().max(1) as i64
}

/// `(1/B, 1/B², …, 1/B^r)`.
pub(crate) fn perturbation(rank: usize, base: i64) -> Weight {
    let mut v = Vec::with_capacity(rank);
    let mut p = Rat::one();
    for _ in 0..rank {
        p /= rat(base);
        v.push(p.clone());
    }
    Weight::new(v)
}

/// The canonical basepoint `(1,…,1)` plus the perturbation.
pub fn canonical_positive(d: &ScatteringDiagram) -> Weight {
    let r = d.rank();
    Weight::from_ints(&vec![1; r]).add(&perturbation(r, perturbation_base(d)))
}

const MAX_ATTEMPTS: u32 = 24;

/// A generic path from `a` to `b`: the straight segment when it is generic,
/// otherwise a detour through `(a+b)/2 + (1/B', 1/B'², …)` for growing `B'`.
pub(crate) fn generic_path(d: &ScatteringDiagram, a: &Weight, b: &Weight) -> Result<GenericPath> {
    let straight = GenericPath::segment(a.clone(), b.clone())?;
    match crossings(d, &straight) {
        Ok(_) => return Ok(straight),
        Err(Error::NonGeneric(_)) if d.on_support(a) || d.on_support(b) => {
            return Err(Error::NonGeneric("path endpoint lies on a wall".into()));
        }
        Err(Error::NonGeneric(_)) => {}
        Err(e) => return Err(e),
    }
    let mid = a.add(b).scale(&Rat::new(1.into(), 2.into()));
    let mut base = perturbation_base(d);
    let mut last = String::new();
    for _ in 0..MAX_ATTEMPTS {
        let via = mid.add(&perturbation(d.rank(), base));
        let p = GenericPath::new(vec![a.clone(), via, b.clone()])?;
        match crossings(d, &p) {
            Ok(_) => return Ok(p),
            Err(Error::NonGeneric(msg)) => last = msg,
            Err(e) => return Err(e),
        }
        base = base * 2 + 1;
    }
    Err(Error::NonGeneric(format!("no generic perturbation found: {last}")))
}

/// The path-ordered product from the canonical point of `M⁺` to its negative.
pub fn group_element(d: &ScatteringDiagram) -> Result<PoissonAuto> {
    let p = canonical_positive(d);
    let path = generic_path(d, &p, &p.scale(&rat(-1)))?;
    path_ordered_product(d, &path)
}

/// Both consistent, with equal group elements at the smaller order.
pub fn equivalent(d1: &ScatteringDiagram, d2: &ScatteringDiagram) -> Result<bool> {
    for d in [d1, d2] {
        if let consistency::Consistency::Inconsistent { joint, .. } = consistency::is_consistent(d)? {
            return Err(Error::Inconsistent(format!("diagram fails at joint through {}", fmt_weight(&joint))));
        }
    }
    if d1.form() != d2.form() {
        return Ok(false);
    }
    let k = d1.order().min(d2.order());
    Ok(group_element(d1)?.with_order(k) == group_element(d2)?.with_order(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};
    use crate::scattering::{cluster_initial, Cone};
    use crate::tseries::TruncSeries;

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn one_plus(d: &[i64], k: u32) -> TruncSeries {
        let mut f = TruncSeries::one(d.len(), k);
        f.add_term(dv(d), rat(1));
        f
    }

    fn single_ray() -> ScatteringDiagram {
        let form = Quiver::a2().skew_form();
        let wall = Wall::new(dv(&[0, 1]), Cone::Signs(vec![(dv(&[1, 0]), 1)]), one_plus(&[0, 1], 4)).unwrap();
        ScatteringDiagram::new(&form, 4, vec![wall]).unwrap()
    }

    #[test]
    fn crossing_signs() {
        let d = single_ray();
        let c = crossings(&d, &GenericPath::segment(w(&[1, 1]), w(&[1, -1])).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].sign, 1);
        let c = crossings(&d, &GenericPath::segment(w(&[1, -1]), w(&[1, 1])).unwrap()).unwrap();
        assert_eq!(c[0].sign, -1);
        let c = crossings(&d, &GenericPath::segment(w(&[-1, 1]), w(&[-1, -1])).unwrap()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn degenerate_paths_are_rejected() {
        let d = single_ray();
        assert!(matches!(
            crossings(&d, &GenericPath::segment(w(&[1, 0]), w(&[1, 1])).unwrap()),
            Err(Error::NonGeneric(_))
        ));
        assert!(matches!(
            crossings(&d, &GenericPath::segment(w(&[-1, 1]), w(&[1, -1])).unwrap()),
            Err(Error::NonGeneric(_))
        ));
        let form = Quiver::a2().skew_form();
        let full = ScatteringDiagram::new(&form, 4, cluster_initial(&Quiver::a2(), 4)).unwrap();
        let err = crossings(&full, &GenericPath::segment(w(&[1, 1]), w(&[-1, -1])).unwrap()).unwrap_err();
        assert!(err.to_string().contains("(1,0)") && err.to_string().contains("(0,1)"));
    }

    #[test]
    fn forward_then_back_is_identity() {
        let d = single_ray();
        let there = GenericPath::segment(w(&[1, 1]), w(&[1, -1])).unwrap();
        let back = there.then(&there.reversed()).unwrap();
        assert!(path_ordered_product(&d, &back).unwrap().is_identity());
        assert!(!path_ordered_product(&d, &there).unwrap().is_identity());
    }

    #[test]
    fn chamber_path_is_identity() {
        let d = single_ray();
        let p = GenericPath::segment(w(&[2, 1]), w(&[1, 3])).unwrap();
        assert!(path_ordered_product(&d, &p).unwrap().is_identity());
        assert!(group_element(&ScatteringDiagram::empty(d.form(), 4)).unwrap().is_identity());
    }

    #[test]
    fn quarter_loop_order_in_a2() {
        let form = Quiver::a2().skew_form();
        let k = 4;
        let mut walls = cluster_initial(&Quiver::a2(), k);
        walls.push(Wall::new(dv(&[1, 1]), Cone::Signs(vec![(dv(&[0, 1]), -1)]), one_plus(&[1, 1], k)).unwrap());
        let d = ScatteringDiagram::new(&form, k, walls).unwrap();
        let half = Rat::new(1.into(), 10.into());
        let a = Weight::new(vec![rat(1), half.clone()]);
        let b = Weight::new(vec![half, rat(-1)]);
        let c = crossings(&d, &GenericPath::segment(a, b).unwrap()).unwrap();
        let normals: Vec<String> = c.iter().map(|c| d.walls()[c.wall].normal().to_string()).collect();
        assert_eq!(normals, vec!["(0,1)", "(1,1)"]);
        let b2 = Weight::new(vec![rat(-1), Rat::new((-1).into(), 2.into())]);
        let c = crossings(&d, &GenericPath::segment(Weight::new(vec![rat(1), Rat::new(1.into(), 10.into())]), b2).unwrap()).unwrap();
        let normals: Vec<String> = c.iter().map(|c| d.walls()[c.wall].normal().to_string()).collect();
        assert_eq!(normals, vec!["(0,1)", "(1,1)", "(1,0)"]);
    }
}
