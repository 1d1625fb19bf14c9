use super::{flow, Hamiltonian, PoissonAuto};
use crate::quiver::Weight;
use crate::Result;

/// Split `g = g₊ ∘ g₀ ∘ g₋` with `log g₊`, `log g₀`, `log g₋` supported where
/// `θ` is positive, zero and negative respectively.
///
/// Solved degree by degree: at degree `m` the residual `(g₊g₀g₋)⁻¹g` is trivial
/// below `m`, its degree-`m` logarithm is split by the sign of `θ`, and each
/// factor absorbs its share. Commutator corrections only appear above `m`.
pub fn factorize(g: &PoissonAuto, theta: &Weight) -> Result<(PoissonAuto, PoissonAuto, PoissonAuto)> {
    let form = g.form();
    let k = g.order();
    let mut plus = PoissonAuto::identity(form, k);
    let mut zero = PoissonAuto::identity(form, k);
    let mut minus = PoissonAuto::identity(form, k);
    let mut inverses = [
        PoissonAuto::identity(form, k),
        PoissonAuto::identity(form, k),
        PoissonAuto::identity(form, k),
    ];
    let mut prod_inv = PoissonAuto::identity(form, k);

    for m in 1..=k as i64 {
        let residual = prod_inv.compose(g)?;
        let h = residual.leading_log(m)?;
        if h.is_zero() {
            continue;
        }
        let split = |keep: fn(i32) -> bool| -> Hamiltonian {
            Hamiltonian::new(h.series().filter(|d| keep(crate::quiver::sign_of(&theta.eval(d)))))
                .expect("no constant term")
        };
        let hp = split(|s| s > 0);
        let h0 = split(|s| s == 0);
        let hm = split(|s| s < 0);
        plus = plus.compose(&flow(&hp, form))?;
        zero = zero.compose(&flow(&h0, form))?;
        minus = minus.compose(&flow(&hm, form))?;
        for (inv, piece) in inverses.iter_mut().zip([&hp, &h0, &hm]) {
            if !piece.is_zero() {
                *inv = flow(&piece.neg(), form).compose(inv)?;
            }
        }
        // (plus ∘ zero ∘ minus)⁻¹
        prod_inv = inverses[2].compose(&inverses[1])?.compose(&inverses[0])?;
    }
    Ok((plus, zero, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};
    use crate::tseries::{wall_auto, TruncSeries};
    use num_traits::One;

    fn phi(g: &crate::quiver::SkewForm, d: &[i64], k: u32) -> PoissonAuto {
        let mut f = TruncSeries::one(2, k);
        f.add_term(DimVector::new(d.to_vec()), crate::Rat::one());
        wall_auto(g, &DimVector::new(d.to_vec()), &f, 1).unwrap()
    }

    #[test]
    fn positive_and_negative_weights() {
        let form = Quiver::kronecker(2).skew_form();
        let g = phi(&form, &[0, 1], 6).compose(&phi(&form, &[1, 0], 6)).unwrap();
        let (p, z, m) = factorize(&g, &Weight::from_ints(&[1, 2])).unwrap();
        assert_eq!(p, g);
        assert!(z.is_identity() && m.is_identity());
        let (p, z, m) = factorize(&g, &Weight::from_ints(&[-1, -3])).unwrap();
        assert_eq!(m, g);
        assert!(z.is_identity() && p.is_identity());
    }

    #[test]
    fn pentagon_factors() {
        let form = Quiver::a2().skew_form();
        let k = 8;
        let g = phi(&form, &[0, 1], k).compose(&phi(&form, &[1, 0], k)).unwrap();
        let (p, z, m) = factorize(&g, &Weight::from_ints(&[1, -1])).unwrap();
        assert_eq!(p, phi(&form, &[1, 0], k));
        assert_eq!(z, phi(&form, &[1, 1], k));
        assert_eq!(m, phi(&form, &[0, 1], k));
        assert_eq!(p.compose(&z).unwrap().compose(&m).unwrap(), g);
    }
}
