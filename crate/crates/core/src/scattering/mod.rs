//! Walls, scattering diagrams, path-ordered products and consistency.
//!
//! A wall lives in the hyperplane `n₀^⊥ ⊂ M_R` of a primitive `n₀ ∈ N⁺`; its
//! group element is `z^m ↦ z^m·f^{m(n₀)}`. Cones are either the full
//! hyperplane or the locus in `n₀^⊥` where a finite list of vectors `p` have
//! prescribed signs `sign θ(p)`.

mod complete;
mod consistency;
pub mod geometry;
mod json;
mod path;
mod reconstruct;

use num_traits::Zero;

pub use complete::ks_complete;
pub use consistency::{is_consistent, loop_product_at_origin, Consistency};
pub use path::{crossings, equivalent, group_element, path_ordered_product, Crossing, GenericPath};
pub use json::{ConeJson, DiagramJson, SignJson, WallJson};
pub use path::canonical_positive;
pub(crate) use path::generic_path;
pub use reconstruct::reconstruct_from_group;
pub(crate) use reconstruct::wall_function_of;

use crate::quiver::{sign_of, DimVector, Quiver, SkewForm, Weight};
use crate::tseries::{wall_auto, PoissonAuto, TruncSeries};
use crate::{rat, Error, Rat, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Cone {
    /// All of `n₀^⊥`.
    Hyperplane,
    /// `{θ ∈ n₀^⊥ : sign θ(p) = s for every (p, s)}`, signs `±1`.
    Signs(Vec<(DimVector, i32)>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Wall {
    normal: DimVector,
    cone: Cone,
    f: TruncSeries,
}

impl Wall {
    pub fn new(normal: DimVector, cone: Cone, f: TruncSeries) -> Result<Self> {
        crate::tseries::wall_auto_check(&normal, &f)?;
        if let Cone::Signs(signs) = &cone {
            for (p, s) in signs {
                if p.rank() != normal.rank() {
                    return Err(Error::DimensionMismatch { expected: normal.rank(), got: p.rank() });
                }
                if *s != 1 && *s != -1 {
                    return Err(Error::InvalidArgument(format!("cone sign must be ±1, got {s}")));
                }
                if p.is_zero() || p.primitive().0 == normal || p.primitive().0 == normal.scale(-1) {
                    return Err(Error::InvalidArgument(format!("cone constraint {p} is degenerate in {normal}^⊥")));
                }
            }
            let basis = hyperplane_basis(&normal);
            let rows: Vec<Vec<Rat>> = signs.iter().map(|(p, s)| restrict_row(&basis, p, *s)).collect();
            if geometry::strict_point(&rows, basis.len()).is_none() {
                return Err(Error::InvalidArgument(format!("cone in {normal}^⊥ has empty interior")));
            }
        }
        Ok(Wall { normal, cone, f })
    }

    pub fn normal(&self) -> &DimVector {
        &self.normal
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn function(&self) -> &TruncSeries {
        &self.f
    }

    pub fn order(&self) -> u32 {
        self.f.order()
    }

    pub fn auto(&self, form: &SkewForm) -> Result<PoissonAuto> {
        wall_auto(form, &self.normal, &self.f, 1)
    }

    /// Closed-cone membership: `θ(n₀) = 0` and every constraint `≥ 0` after sign.
    pub fn contains_closed(&self, theta: &Weight) -> bool {
        theta.eval(&self.normal).is_zero() && self.constraint_signs(theta).iter().all(|&(v, s)| v == 0 || v == s)
    }

    /// Relative-interior membership.
    pub fn contains(&self, theta: &Weight) -> bool {
        theta.eval(&self.normal).is_zero() && self.constraint_signs(theta).iter().all(|&(v, s)| v == s)
    }

    fn constraint_signs(&self, theta: &Weight) -> Vec<(i32, i32)> {
        match &self.cone {
            Cone::Hyperplane => Vec::new(),
            Cone::Signs(signs) => signs.iter().map(|(p, s)| (sign_of(&theta.eval(p)), *s)).collect(),
        }
    }

    pub(crate) fn with_function(&self, f: TruncSeries) -> Wall {
        Wall { normal: self.normal.clone(), cone: self.cone.clone(), f }
    }
}

pub(crate) fn hyperplane_basis(normal: &DimVector) -> Vec<Vec<Rat>> {
    let row: Vec<Rat> = normal.coords().iter().map(|&c| rat(c)).collect();
    geometry::kernel(&[row], normal.rank())
}

pub(crate) fn restrict_row(basis: &[Vec<Rat>], p: &DimVector, s: i32) -> Vec<Rat> {
    basis
        .iter()
        .map(|b| b.iter().zip(p.coords()).fold(Rat::zero(), |acc, (x, &c)| acc + x * rat(c)) * rat(s as i64))
        .collect()
}

/// The order-`k` truncation of a scattering diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScatteringDiagram {
    form: SkewForm,
    order: u32,
    walls: Vec<Wall>,
}

impl ScatteringDiagram {
    /// Walls with trivial function are pruned.
    pub fn new(form: &SkewForm, order: u32, walls: Vec<Wall>) -> Result<Self> {
        for w in &walls {
            if w.order() != order {
                return Err(Error::OrderMismatch(order, w.order()));
            }
            if w.normal.rank() != form.rank() {
                return Err(Error::DimensionMismatch { expected: form.rank(), got: w.normal.rank() });
            }
        }
        let walls = walls.into_iter().filter(|w| !w.f.is_one()).collect();
        Ok(ScatteringDiagram { form: form.clone(), order, walls })
    }

    pub fn empty(form: &SkewForm, order: u32) -> Self {
        ScatteringDiagram { form: form.clone(), order, walls: Vec::new() }
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Whether `θ` lies on the closed support of some wall.
    pub fn on_support(&self, theta: &Weight) -> bool {
        self.walls.iter().any(|w| w.contains_closed(theta))
    }

    /// Distinct primitive wall normals, sorted.
    pub fn normals(&self) -> Vec<DimVector> {
        let mut v: Vec<DimVector> = self.walls.iter().map(|w| w.normal.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// The incoming walls `e_i^⊥` with `f = 1 + x^{e_i}`.
pub fn cluster_initial(quiver: &Quiver, order: u32) -> Vec<Wall> {
    let r = quiver.rank();
    (0..r)
        .map(|i| {
            let e = DimVector::basis(r, i);
            let mut f = TruncSeries::one(r, order);
            f.add_term(e.clone(), rat(1));
            Wall::new(e, Cone::Hyperplane, f).expect("basis walls are valid")
        })
        .collect()
}

/// A wall is incoming if it contains `θ_{n₀} = ⟨−, n₀⟩`.
pub fn is_incoming(wall: &Wall, form: &SkewForm) -> Result<bool> {
    let theta_n = form.pairing_with(&wall.normal);
    if theta_n.iter().all(|&c| c == 0) {
        return Err(Error::CentralNormal(wall.normal.to_string()));
    }
    Ok(wall.contains_closed(&Weight::from_ints(&theta_n)))
}
