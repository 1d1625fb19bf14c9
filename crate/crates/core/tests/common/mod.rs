//! Generators and checks shared by the property suite and the acceptance gate.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use wallcross::quiver::{DimVector, Quiver, SkewForm, Weight};
use wallcross::scattering::{path_ordered_product, GenericPath, ScatteringDiagram};
use wallcross::tseries::{factorize, flow, Hamiltonian, PoissonAuto, TruncSeries};
use wallcross::{Error, Rat};

pub fn dv(c: &[i64]) -> DimVector {
    DimVector::new(c.to_vec())
}

pub fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Skew forms the suites range over: A₂, K₂, K₃ and the oriented triangle.
pub fn forms() -> Vec<SkewForm> {
    vec![
        Quiver::a2().skew_form(),
        Quiver::kronecker(2).skew_form(),
        Quiver::kronecker(3).skew_form(),
        Quiver::triangle_with_potential().skew_form(),
    ]
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Sparse Hamiltonian of the given rank with up to five terms of degree ≤ `order`.
pub fn hamiltonian(rank: usize, order: u32) -> impl Strategy<Value = Hamiltonian> {
    let term = (prop::collection::vec(0i64..=order as i64, rank), small_rat());
    prop::collection::vec(term, 1..=5).prop_map(move |terms| {
        let terms = terms.into_iter().filter_map(|(c, x)| {
            let d = DimVector::new(c);
            (!d.is_zero() && d.delta() <= order as i64).then_some((d, x))
        });
        Hamiltonian::new(TruncSeries::from_terms(rank, order, terms)).expect("no constant term")
    })
}

/// A form index together with a Hamiltonian of matching rank.
pub fn form_and_hamiltonian(order: u32) -> impl Strategy<Value = (usize, Hamiltonian)> {
    (0usize..4).prop_flat_map(move |i| {
        let rank = forms()[i].rank();
        (Just(i), hamiltonian(rank, order))
    })
}

pub fn weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-3i64..=3, rank).prop_map(|c| Weight::from_ints(&c))
}

pub fn point(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec((-20i64..=20, 1i64..=7), rank)
        .prop_map(|c| Weight::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

pub fn check_roundtrip(form: &SkewForm, h: &Hamiltonian) -> Result<(), String> {
    let g = flow(h, form);
    let back = g.log().map_err(|e| e.to_string())?;
    if &back != h {
        return Err(format!("log(flow(h)) = {} but h = {}", back.series(), h.series()));
    }
    Ok(())
}

pub fn check_factorization(g: &PoissonAuto, theta: &Weight) -> Result<(), String> {
    let (plus, zero, minus) = factorize(g, theta).map_err(|e| e.to_string())?;
    let again = plus.compose(&zero).and_then(|x| x.compose(&minus)).map_err(|e| e.to_string())?;
    if &again != g {
        return Err(format!("g₊∘g₀∘g₋ ≠ g for θ = {theta}"));
    }
    let sides: [(&PoissonAuto, fn(&Rat) -> bool); 3] =
        [(&plus, |v| *v > Rat::zero()), (&zero, |v| v.is_zero()), (&minus, |v| *v < Rat::zero())];
    for (piece, ok) in sides {
        let h = piece.log().map_err(|e| e.to_string())?;
        let bad = h.series().iter().find(|(d, _)| !ok(&theta.eval(d))).map(|(d, _)| d.clone());
        if let Some(d) = bad {
            return Err(format!("factor supported at {d} on the wrong side of θ = {theta}"));
        }
    }
    Ok(())
}

/// `g(x^n·Π z_i^{⟨n,e_i⟩}) = x^n·Π z_i^{⟨n,e_i⟩}` for every `n` with `δ(n) ≤ k`.
pub fn check_invariant_monomials(form: &SkewForm, g: &PoissonAuto) -> Result<(), String> {
    let r = form.rank();
    let k = g.order();
    for n in DimVector::all_positive(r, k as i64) {
        let m: Vec<i64> = (0..r).map(|i| form.eval(&n, &DimVector::basis(r, i))).collect();
        let x = TruncSeries::monomial(r, k, n.clone(), Rat::one());
        let image = g.act_on_ext(&m, &x).map_err(|e| e.to_string())?;
        if image != x {
            return Err(format!("x^{n}·z^{m:?} is not fixed"));
        }
    }
    Ok(())
}

pub enum PathOutcome {
    Agree,
    Degenerate,
}

/// Two paths with common endpoints give the same product; degenerate paths
/// that touch a wall badly are reported as such.
pub fn check_path_pair(d: &ScatteringDiagram, p1: Vec<Weight>, p2: Vec<Weight>) -> Result<PathOutcome, String> {
    let run = |pts: Vec<Weight>| -> Result<Option<PoissonAuto>, String> {
        let path = GenericPath::new(pts).map_err(|e| e.to_string())?;
        match path_ordered_product(d, &path) {
            Ok(g) => Ok(Some(g)),
            Err(Error::NonGeneric(_)) => Ok(None),
            Err(e) => Err(e.to_string()),
        }
    };
    let (Some(a), Some(b)) = (run(p1)?, run(p2)?) else {
        return Ok(PathOutcome::Degenerate);
    };
    if a != b {
        return Err("path-ordered products differ".into());
    }
    Ok(PathOutcome::Agree)
}
