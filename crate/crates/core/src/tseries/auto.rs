use std::collections::HashMap;

use num_traits::{One, Zero};

use super::TruncSeries;
use crate::quiver::{DimVector, SkewForm};
use crate::{rat, Error, Rat, Result};

/// `{a, b}` extended bilinearly from `{x^n₁, x^n₂} = ⟨n₁,n₂⟩ x^{n₁+n₂}`.
pub fn poisson_bracket(form: &SkewForm, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.check_compatible(b)?;
    let k = a.order() as i64;
    let mut out = TruncSeries::zero(a.rank(), a.order());
    for (da, ca) in a.iter() {
        let room = k - da.delta();
        for (db, cb) in b.iter() {
            if db.delta() > room {
                break;
            }
            let s = form.eval(da, db);
            if s != 0 {
                out.add_term(da.add(db), ca * cb * rat(s));
            }
        }
    }
    Ok(out)
}

/// An element of the Lie algebra `𝔤`: a truncated series without constant term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hamiltonian(TruncSeries);

impl Hamiltonian {
    pub fn new(series: TruncSeries) -> Result<Self> {
        if !series.constant_term().is_zero() {
            return Err(Error::InvalidArgument("a Hamiltonian must have zero constant term".into()));
        }
        Ok(Hamiltonian(series))
    }

    pub fn zero(rank: usize, order: u32) -> Self {
        Hamiltonian(TruncSeries::zero(rank, order))
    }

    pub fn series(&self) -> &TruncSeries {
        &self.0
    }

    pub fn into_series(self) -> TruncSeries {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn neg(&self) -> Hamiltonian {
        Hamiltonian(-&self.0)
    }

    pub fn add(&self, other: &Hamiltonian) -> Hamiltonian {
        Hamiltonian(&self.0 + &other.0)
    }
}

/// A tropical vertex group element, stored by the images `z_i ↦ z_i·u_i`.
///
/// The action on `x^n` is derived from invariance of `x^n·Π z_i^{⟨n,e_i⟩}`:
/// `x^n ↦ x^n·Π_i u_i^{⟨e_i,n⟩}`.
#[derive(Clone, Debug)]
pub struct PoissonAuto {
    form: SkewForm,
    images: Vec<TruncSeries>,
    order: u32,
}

impl PartialEq for PoissonAuto {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.images == other.images
    }
}

impl Eq for PoissonAuto {}

impl PoissonAuto {
    pub fn identity(form: &SkewForm, order: u32) -> Self {
        let r = form.rank();
        PoissonAuto {
            form: form.clone(),
            images: vec![TruncSeries::one(r, order); r],
            order,
        }
    }

    /// Build from untrusted z-images; checks units and Hamiltonian consistency.
    pub fn from_images(form: &SkewForm, images: Vec<TruncSeries>) -> Result<Self> {
        let g = Self::from_images_unchecked(form, images)?;
        g.log()?;
        Ok(g)
    }

    pub(crate) fn from_images_unchecked(form: &SkewForm, images: Vec<TruncSeries>) -> Result<Self> {
        if images.len() != form.rank() {
            return Err(Error::DimensionMismatch { expected: form.rank(), got: images.len() });
        }
        let order = images.first().map(|s| s.order()).unwrap_or(0);
        for u in &images {
            if u.order() != order {
                return Err(Error::OrderMismatch(order, u.order()));
            }
            if u.rank() != form.rank() {
                return Err(Error::DimensionMismatch { expected: form.rank(), got: u.rank() });
            }
            if !u.is_unit() {
                return Err(Error::NotUnit(u.constant_term().to_string()));
            }
        }
        Ok(PoissonAuto { form: form.clone(), images, order })
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `u_i` with `g(z_i) = z_i·u_i`.
    pub fn images(&self) -> &[TruncSeries] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|u| u.is_one())
    }

    pub fn with_order(&self, order: u32) -> PoissonAuto {
        PoissonAuto {
            form: self.form.clone(),
            images: self.images.iter().map(|u| u.with_order(order)).collect(),
            order,
        }
    }

    fn check_compatible(&self, other: &PoissonAuto) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.form != other.form {
            return Err(Error::InvalidArgument("automorphisms for different skew forms".into()));
        }
        Ok(())
    }

    /// Coefficient series of `g(z^m) = z^m · Π u_i^{m_i}`.
    pub fn act_on_z(&self, m: &[i64]) -> Result<TruncSeries> {
        if m.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: m.len() });
        }
        let mut acc = TruncSeries::one(self.rank(), self.order);
        for (u, &e) in self.images.iter().zip(m) {
            if e != 0 {
                acc = &acc * &u.pow(e)?;
            }
        }
        Ok(acc)
    }

    /// `g(z^m · s) = z^m · Π u_i^{m_i} · g(s)`; returns the coefficient series.
    pub fn act_on_ext(&self, m: &[i64], s: &TruncSeries) -> Result<TruncSeries> {
        let zpart = self.act_on_z(m)?;
        Ok(&zpart * &self.substitution().apply(s))
    }

    /// Images of the generators `x_j` under the derived action.
    pub fn x_images(&self) -> Vec<TruncSeries> {
        let r = self.rank();
        let logs: Vec<TruncSeries> = self.images.iter().map(|u| u.log().expect("images are units")).collect();
        (0..r)
            .map(|j| {
                let mut exponent = TruncSeries::zero(r, self.order);
                for (l, log_u) in logs.iter().enumerate() {
                    let c = self.form.entry(l, j);
                    if c != 0 {
                        exponent = &exponent + &log_u.scale(&rat(c));
                    }
                }
                let w = exponent.exp().expect("zero constant term");
                w.shift(&DimVector::basis(r, j), &Rat::one())
            })
            .collect()
    }

    pub(crate) fn substitution(&self) -> Substitution {
        Substitution::new(self.x_images(), self.rank(), self.order)
    }

    /// Apply the derived action to a series in the `x` variables.
    pub fn apply(&self, s: &TruncSeries) -> TruncSeries {
        self.substitution().apply(s)
    }

    /// `(self ∘ other)(z_i) = self(other(z_i))`.
    pub fn compose(&self, other: &PoissonAuto) -> Result<PoissonAuto> {
        self.check_compatible(other)?;
        let mut sub = self.substitution();
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(u1, u2)| u1 * &sub.apply(u2))
            .collect();
        Ok(PoissonAuto { form: self.form.clone(), images, order: self.order })
    }

    pub fn inverse(&self) -> PoissonAuto {
        let h = self.log().expect("stored automorphisms are Hamiltonian");
        flow(&h.neg(), &self.form)
    }

    /// The Hamiltonian `h` with `flow(h) = self`, computed from the operator
    /// logarithm `Σ (−1)^{j−1}(g − 1)^j / j` on each `z_i`.
    pub fn log(&self) -> Result<Hamiltonian> {
        let r = self.rank();
        let k = self.order;
        let mut sub = self.substitution();
        let mut derivs = Vec::with_capacity(r);
        for u in &self.images {
            // (g − 1)(z_i s) = z_i (u_i g(s) − s)
            let mut s = TruncSeries::one(r, k);
            let mut total = TruncSeries::zero(r, k);
            for j in 1..=k as i64 {
                s = &(u * &sub.apply(&s)) - &s;
                if s.is_zero() {
                    break;
                }
                let c = if j % 2 == 1 { Rat::new(1.into(), j.into()) } else { Rat::new((-1).into(), j.into()) };
                total = &total + &s.scale(&c);
            }
            derivs.push(total);
        }
        hamiltonian_from_derivatives(&derivs, r, k)
    }

    /// Degree-`m` part of the logarithm, valid when `g ≡ 1` below degree `m`.
    pub(crate) fn leading_log(&self, m: i64) -> Result<Hamiltonian> {
        for u in &self.images {
            if let Some(low) = (u - &TruncSeries::one(self.rank(), self.order)).min_degree() {
                if low < m {
                    return Err(Error::InvalidArgument(format!(
                        "automorphism is not trivial below degree {m} (found degree {low})"
                    )));
                }
            }
        }
        let parts: Vec<TruncSeries> = self.images.iter().map(|u| u.degree_part(m)).collect();
        hamiltonian_from_derivatives(&parts, self.rank(), self.order)
    }

    /// `wall ∘ self` for the wall element `z^m ↦ z^m f^{sign·m(n₀)}`.
    pub fn then_wall(&self, normal: &DimVector, f: &TruncSeries, sign: i64) -> Result<PoissonAuto> {
        let action = WallAction::new(&self.form, normal, f, sign)?;
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let s = action.apply(u);
                &action.power(normal.coords()[i] * sign) * &s
            })
            .collect();
        Ok(PoissonAuto { form: self.form.clone(), images, order: self.order })
    }
}

/// Recover `h = Σ c_n x^n` from `D(z_i)/z_i = Σ_n n_i c_n x^n`, checking the
/// overdetermined system for consistency.
fn hamiltonian_from_derivatives(derivs: &[TruncSeries], rank: usize, order: u32) -> Result<Hamiltonian> {
    let mut h = TruncSeries::zero(rank, order);
    for (i, d) in derivs.iter().enumerate() {
        for (n, c) in d.iter() {
            if n.is_zero() {
                return Err(Error::NotInGroup("derivation has a constant component".into()));
            }
            let ni = n.coords()[i];
            if ni == 0 {
                return Err(Error::NotInGroup(format!(
                    "z_{} picks up x^{n} although {n} has zero coordinate there",
                    i + 1
                )));
            }
            let val = c / rat(ni);
            match h.terms().get(n) {
                Some(prev) if *prev != val => {
                    return Err(Error::NotInGroup(format!("inconsistent coefficient for x^{n} across vertices")));
                }
                Some(_) => {}
                None => h.add_term(n.clone(), val),
            }
        }
    }
    // every monomial must be seen by every vertex it involves
    for (n, c) in h.iter() {
        for (i, d) in derivs.iter().enumerate() {
            let ni = n.coords()[i];
            if ni != 0 && d.coeff(n) != c * rat(ni) {
                return Err(Error::NotInGroup(format!("vertex {} misses the x^{n} component", i + 1)));
            }
        }
    }
    Hamiltonian::new(h)
}

/// Monomial substitution `x^n ↦ Π y_j^{n_j}` with memoized monomial images.
pub(crate) struct Substitution {
    x_images: Vec<TruncSeries>,
    cache: HashMap<DimVector, TruncSeries>,
    rank: usize,
    order: u32,
}

impl Substitution {
    fn new(x_images: Vec<TruncSeries>, rank: usize, order: u32) -> Self {
        let mut cache = HashMap::new();
        cache.insert(DimVector::zero(rank), TruncSeries::one(rank, order));
        Substitution { x_images, cache, rank, order }
    }

    fn image(&mut self, n: &DimVector) -> TruncSeries {
        if let Some(s) = self.cache.get(n) {
            return s.clone();
        }
        let j = n.coords().iter().position(|&c| c > 0).expect("nonzero monomial");
        let prev = n.sub(&DimVector::basis(self.rank, j));
        let img = &self.image(&prev) * &self.x_images[j];
        self.cache.insert(n.clone(), img.clone());
        img
    }

    pub(crate) fn apply(&mut self, s: &TruncSeries) -> TruncSeries {
        let mut out = TruncSeries::zero(self.rank, self.order);
        for (n, c) in s.iter() {
            let img = self.image(n);
            for (d, v) in img.iter() {
                out.add_term(d.clone(), v * c);
            }
        }
        out
    }
}

/// The action of a single wall element, `x^n ↦ x^n f^{sign·⟨n₀,n⟩}`.
struct WallAction {
    normal: DimVector,
    sign: i64,
    log_f: TruncSeries,
    form: SkewForm,
    powers: std::cell::RefCell<HashMap<i64, TruncSeries>>,
}

impl WallAction {
    fn new(form: &SkewForm, normal: &DimVector, f: &TruncSeries, sign: i64) -> Result<Self> {
        Ok(WallAction {
            normal: normal.clone(),
            sign,
            log_f: f.log()?,
            form: form.clone(),
            powers: Default::default(),
        })
    }

    fn power(&self, e: i64) -> TruncSeries {
        if let Some(p) = self.powers.borrow().get(&e) {
            return p.clone();
        }
        let p = self.log_f.scale(&rat(e)).exp().expect("log has zero constant term");
        self.powers.borrow_mut().insert(e, p.clone());
        p
    }

    fn apply(&self, s: &TruncSeries) -> TruncSeries {
        let mut groups: HashMap<i64, TruncSeries> = HashMap::new();
        for (n, c) in s.iter() {
            let v = self.form.eval(&self.normal, n) * self.sign;
            groups
                .entry(v)
                .or_insert_with(|| TruncSeries::zero(s.rank(), s.order()))
                .add_term(n.clone(), c.clone());
        }
        let mut out = TruncSeries::zero(s.rank(), s.order());
        for (v, part) in groups {
            let piece = if v == 0 { part } else { &part * &self.power(v) };
            out = &out + &piece;
        }
        out
    }
}

/// `exp{h, −}`, evaluated on each `z_i` by iterating the derivation.
pub fn flow(h: &Hamiltonian, form: &SkewForm) -> PoissonAuto {
    let s = h.series();
    let (r, k) = (s.rank(), s.order());
    let images = (0..r)
        .map(|i| {
            // {h, z_i s} = z_i ({h, s} + h_i s), h_i = Σ n_i c_n x^n
            let hi = TruncSeries::from_terms(
                r,
                k,
                s.iter().map(|(n, c)| (n.clone(), c * rat(n.coords()[i]))),
            );
            let mut term = TruncSeries::one(r, k);
            let mut total = TruncSeries::one(r, k);
            for j in 1..=k {
                let next = &poisson_bracket(form, s, &term).expect("same order") + &(&hi * &term);
                term = next.scale(&Rat::new(1.into(), j.into()));
                if term.is_zero() {
                    break;
                }
                total = &total + &term;
            }
            total
        })
        .collect();
    PoissonAuto { form: form.clone(), images, order: k }
}

/// The wall element `z^m ↦ z^m·f^{sign·m(n₀)}` for a primitive `n₀ ∈ N⁺` and
/// a unit `f` supported on multiples of `n₀`.
pub fn wall_auto(form: &SkewForm, normal: &DimVector, f: &TruncSeries, sign: i64) -> Result<PoissonAuto> {
    check_wall_function(normal, f)?;
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("wall sign must be ±1, got {sign}")));
    }
    let r = form.rank();
    if normal.rank() != r || f.rank() != r {
        return Err(Error::DimensionMismatch { expected: r, got: normal.rank() });
    }
    let images = (0..r)
        .map(|i| f.pow(sign * normal.coords()[i]))
        .collect::<Result<Vec<_>>>()?;
    Ok(PoissonAuto { form: form.clone(), images, order: f.order() })
}

pub(crate) fn check_wall_function(normal: &DimVector, f: &TruncSeries) -> Result<()> {
    if !normal.is_positive() || !normal.is_primitive() {
        return Err(Error::InvalidArgument(format!("wall normal {normal} must be primitive in N⁺")));
    }
    if !f.is_unit() {
        return Err(Error::NotUnit(f.constant_term().to_string()));
    }
    for (d, _) in f.iter() {
        if !d.is_zero() && d.multiple_of(normal).is_none() {
            return Err(Error::InvalidArgument(format!(
                "wall function has monomial x^{d} off the ray of {normal}"
            )));
        }
    }
    Ok(())
}

#[allow(dead_code)]
pub(crate) fn one_plus_monomial(rank: usize, order: u32, d: &DimVector, c: Rat) -> TruncSeries {
    let mut f = TruncSeries::one(rank, order);
    f.add_term(d.clone(), c);
    f
}
