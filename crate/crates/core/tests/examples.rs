//! Worked examples for the Kronecker quivers and A₂, checked across the
//! cluster, reconstruction and counting routes.

mod common;

use std::collections::BTreeSet;

use common::*;
use num_traits::One;
use wallcross::counting::{joyce_invariants, wall_directions};
use wallcross::quiver::{DimVector, Quiver};
use wallcross::scattering::{
    cluster_initial, equivalent, group_element, is_incoming, ks_complete, reconstruct_from_group, Cone, ScatteringDiagram,
};
use wallcross::theta::{theta_via_counts, theta_via_path, wall_auto_via_framed};
use wallcross::tseries::{wall_auto, PoissonAuto, TruncSeries};
use wallcross::Rat;

fn complete(q: &Quiver, k: u32) -> ScatteringDiagram {
    ks_complete(&q.skew_form(), &cluster_initial(q, k), k).unwrap()
}

fn phi(q: &Quiver, d: &[i64], k: u32) -> PoissonAuto {
    let f = TruncSeries::from_terms(d.len(), k, [(DimVector::zero(d.len()), Rat::one()), (dv(d), Rat::one())]);
    wall_auto(&q.skew_form(), &dv(d), &f, 1).unwrap()
}

fn normals(d: &ScatteringDiagram) -> BTreeSet<Vec<i64>> {
    d.walls().iter().map(|w| w.normal().coords().to_vec()).collect()
}

#[test]
fn k2_completion_normals_at_order_twelve() {
    let d = complete(&Quiver::kronecker(2), 12);
    let mut want: BTreeSet<Vec<i64>> = (1..=6).flat_map(|n| [vec![n, n - 1], vec![n - 1, n]]).collect();
    want.insert(vec![1, 1]);
    assert_eq!(normals(&d), want);
}

#[test]
fn k3_completion_leaves_the_real_roots() {
    let d = complete(&Quiver::kronecker(3), 6);
    let near_diagonal: BTreeSet<Vec<i64>> = (1..=6).flat_map(|n| [vec![n, n - 1], vec![n - 1, n]]).collect();
    let found = normals(&d);
    assert!(found.iter().any(|n| !near_diagonal.contains(n)), "{found:?}");
    // walls off the real roots carry more than a single binomial
    let imaginary = d.walls().iter().filter(|w| w.function().len() > 2).count();
    assert!(imaginary > 0);
}

#[test]
fn k3_initial_walls() {
    let q = Quiver::kronecker(3);
    let walls = cluster_initial(&q, 6);
    assert_eq!(walls.len(), 2);
    for (i, w) in walls.iter().enumerate() {
        let e = DimVector::basis(2, i);
        assert_eq!(w.normal(), &e);
        assert_eq!(w.cone(), &Cone::Hyperplane);
        assert_eq!(w.function().to_canonical_string(), format!("1 + x{}", i + 1));
    }
}

#[test]
fn incoming_and_outgoing() {
    let q = Quiver::a2();
    let d = complete(&q, 6);
    let form = q.skew_form();
    for w in d.walls() {
        let incoming = is_incoming(w, &form).unwrap();
        assert_eq!(incoming, w.cone() == &Cone::Hyperplane, "wall {}", w.normal());
    }
}

#[test]
fn a2_group_element_is_the_pentagon_side() {
    let q = Quiver::a2();
    let g = group_element(&complete(&q, 8)).unwrap();
    assert_eq!(g, phi(&q, &[0, 1], 8).compose(&phi(&q, &[1, 0], 8)).unwrap());
}

#[test]
fn k2_reconstruction_matches_completion() {
    let q = Quiver::kronecker(2);
    let k = 8;
    let g = phi(&q, &[0, 1], k).compose(&phi(&q, &[1, 0], k)).unwrap();
    let dirs = DimVector::all_positive(2, k as i64);
    let rebuilt = reconstruct_from_group(&g, &dirs).unwrap();
    let completed = complete(&q, k);
    assert!(equivalent(&rebuilt, &completed).unwrap());
    // ray by ray the functions agree; reconstruction may split an axis into two rays
    let key = |d: &ScatteringDiagram| -> BTreeSet<(Vec<i64>, String)> {
        d.walls()
            .iter()
            .map(|w| (w.normal().coords().to_vec(), w.function().to_canonical_string()))
            .collect()
    };
    assert_eq!(key(&rebuilt), key(&completed));
}

#[test]
fn wall_directions_small_degree() {
    let dirs = |q: &Quiver| -> BTreeSet<Vec<i64>> {
        wall_directions(q, 4).unwrap().iter().flat_map(|w| w.dims.iter().map(|d| d.coords().to_vec())).collect()
    };
    let a2: BTreeSet<Vec<i64>> = [[1, 0], [0, 1], [1, 1]].iter().map(|v| v.to_vec()).collect();
    let a2_found: BTreeSet<Vec<i64>> = wall_directions(&Quiver::a2(), 4).unwrap().iter().map(|w| w.normal.coords().to_vec()).collect();
    assert_eq!(a2_found, a2);
    let k2 = dirs(&Quiver::kronecker(2));
    for d in [[1, 0], [0, 1], [1, 1], [2, 1], [1, 2], [2, 2]] {
        assert!(k2.contains(&d.to_vec()), "{d:?} missing from {k2:?}");
    }
}

#[test]
fn kronecker_diagonal_invariants() {
    // the ℙ¹ family in dimension (1,1) has Euler number 2
    let j = joyce_invariants(&Quiver::kronecker(2), &w(&[1, -1]), 6).unwrap();
    assert_eq!(j.get(&dv(&[1, 1])), Some(&rat(2, 1)));
    assert_eq!(j.get(&dv(&[2, 2])), Some(&rat(1, 2)));
    let j = joyce_invariants(&Quiver::a2(), &w(&[1, -1]), 6).unwrap();
    assert_eq!(j.get(&dv(&[1, 1])), Some(&rat(1, 1)));
    assert_eq!(j.get(&dv(&[2, 2])), Some(&rat(-1, 4)));
}

#[test]
fn theta_in_the_negative_chamber() {
    let q = Quiver::a2();
    let k = 6;
    let d = complete(&q, k);
    let theta = w(&[-1, -1]);
    let path = theta_via_path(&d, &[1, 1], &theta).unwrap();
    assert_eq!(path, theta_via_counts(&q, &[1, 1], &theta, k).unwrap());
    assert!(!path.coeff().is_one());
}

#[test]
fn framed_wall_element_on_a_simple_wall() {
    for q in [Quiver::a2(), Quiver::kronecker(2), Quiver::kronecker(3)] {
        for (i, t) in [(0, [0, 1]), (0, [0, -1]), (1, [1, 0]), (1, [-1, 0])] {
            let g = wall_auto_via_framed(&q, &w(&t), 6).unwrap();
            let e = DimVector::basis(2, i);
            let coords: Vec<i64> = e.coords().to_vec();
            assert_eq!(g, phi(&q, &coords, 6), "θ = {t:?}");
        }
    }
}
