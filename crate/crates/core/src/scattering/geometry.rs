//! Exact rational geometry in `M_Q`: kernels, strict homogeneous systems
//! (Fourier–Motzkin), and the cells of central hyperplane arrangements.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::quiver::{sign_of, DimVector, Weight};
use crate::{rat, Rat};

/// Basis of `{y ∈ Q^dim : row·y = 0 for every row}`.
pub fn kernel(rows: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..dim {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); dim];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Reduced row echelon form of the integer rows, as a canonical key for the
/// subspace they span.
pub fn row_space_key(rows: &[&DimVector]) -> Vec<Vec<Rat>> {
    let dim = rows.first().map(|r| r.rank()).unwrap_or(0);
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.coords().iter().map(|&c| rat(c)).collect()).collect();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..dim {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn normalize_row(row: &[Rat]) -> Vec<Rat> {
    match row.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs();
            row.iter().map(|x| x / &s).collect()
        }
        None => row.to_vec(),
    }
}

/// A point `y` with `row·y > 0` for every row, or `None` when infeasible.
pub fn strict_point(rows: &[Vec<Rat>], dim: usize) -> Option<Vec<Rat>> {
    let mut uniq: Vec<Vec<Rat>> = Vec::new();
    for r in rows {
        let n = normalize_row(r);
        if n.iter().all(|x| x.is_zero()) {
            return None;
        }
        if !uniq.contains(&n) {
            uniq.push(n);
        }
    }
    if dim == 0 {
        return if uniq.is_empty() { Some(Vec::new()) } else { None };
    }
    let v = dim - 1;
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for r in uniq {
        match sign_of(&r[v]) {
            1 => pos.push(r),
            -1 => neg.push(r),
            _ => rest.push(r[..v].to_vec()),
        }
    }
    // lower bound from p: y_v > −(p'·y')/p_v ; upper from q: y_v < (q'·y')/(−q_v)
    for p in &pos {
        for q in &neg {
            let combined: Vec<Rat> = (0..v).map(|i| &q[i] / (-&q[v]) + &p[i] / &p[v]).collect();
            rest.push(combined);
        }
    }
    let mut y = strict_point(&rest, v)?;
    let lower = pos.iter().map(|p| -dot(&p[..v], &y) / &p[v]).max();
    let upper = neg.iter().map(|q| dot(&q[..v], &y) / (-&q[v])).min();
    let yv = match (lower, upper) {
        (None, None) => Rat::zero(),
        (Some(l), None) => l + Rat::one(),
        (None, Some(u)) => u - Rat::one(),
        (Some(l), Some(u)) => (l + u) / rat(2),
    };
    y.push(yv);
    Some(y)
}

/// A cell of a central arrangement restricted to a subspace: its sign vector
/// against the non-vanishing forms and a rational interior point of `M`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub signs: Vec<(DimVector, i32)>,
    pub point: Weight,
}

/// Enumerate the open cells cut out in `span(basis)` by the hyperplanes
/// `p^⊥`, `p ∈ forms`. Forms vanishing on the subspace are ignored.
pub fn arrangement_cells(basis: &[Vec<Rat>], rank: usize, forms: &[DimVector]) -> Vec<Cell> {
    let dim = basis.len();
    let restrict = |p: &DimVector| -> Vec<Rat> {
        basis
            .iter()
            .map(|b| b.iter().zip(p.coords()).fold(Rat::zero(), |acc, (x, &c)| acc + x * rat(c)))
            .collect()
    };
    let active: Vec<(DimVector, Vec<Rat>)> = forms
        .iter()
        .map(|p| (p.clone(), restrict(p)))
        .filter(|(_, r)| r.iter().any(|x| !x.is_zero()))
        .collect();

    // each partial cell: (signs, rows, local point)
    let mut cells: Vec<(Vec<(DimVector, i32)>, Vec<Vec<Rat>>, Vec<Rat>)> = vec![(Vec::new(), Vec::new(), vec![Rat::zero(); dim])];
    for (p, row) in &active {
        let mut next = Vec::new();
        for (signs, rows, pt) in cells {
            let here = sign_of(&dot(row, &pt));
            for s in [1, -1] {
                let signed: Vec<Rat> = row.iter().map(|x| x * rat(s as i64)).collect();
                let mut rows2 = rows.clone();
                rows2.push(signed);
                let point = if here == s { Some(pt.clone()) } else { strict_point(&rows2, dim) };
                if let Some(point) = point {
                    let mut signs2 = signs.clone();
                    signs2.push((p.clone(), s));
                    next.push((signs2, rows2, point));
                }
            }
        }
        cells = next;
    }
    cells
        .into_iter()
        .map(|(signs, _, local)| {
            let mut coords = vec![Rat::zero(); rank];
            for (b, c) in basis.iter().zip(&local) {
                for (x, y) in coords.iter_mut().zip(b) {
                    *x += y * c;
                }
            }
            Cell { signs, point: Weight::new(coords) }
        })
        .collect()
}

/// Drop sign constraints implied by the others inside `span(basis)`.
pub fn minimize_signs(basis: &[Vec<Rat>], signs: &[(DimVector, i32)]) -> Vec<(DimVector, i32)> {
    let row = |p: &DimVector, s: i32| -> Vec<Rat> {
        basis
            .iter()
            .map(|b| b.iter().zip(p.coords()).fold(Rat::zero(), |acc, (x, &c)| acc + x * rat(c)) * rat(s as i64))
            .collect()
    };
    let mut kept: Vec<(DimVector, i32)> = signs.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut rows: Vec<Vec<Rat>> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (p, s))| row(p, *s))
            .collect();
        rows.push(row(&kept[i].0, -kept[i].1));
        if strict_point(&rows, basis.len()).is_none() {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Counter-clockwise angular comparison of plane vectors.
pub fn angle_cmp(a: &(Rat, Rat), b: &(Rat, Rat)) -> Ordering {
    let half = |v: &(Rat, Rat)| -> u8 {
        if v.1.is_positive() || (v.1.is_zero() && v.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a.0 * &b.1 - &a.1 * &b.0;
        match sign_of(&cross) {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn kernel_of_line() {
        let k = kernel(&[r(&[1, 1])], 2);
        assert_eq!(k, vec![r(&[-1, 1])]);
        let k = kernel(&[r(&[1, 0, 0]), r(&[0, 1, 1])], 3);
        assert_eq!(k.len(), 1);
        assert!(k[0][0].is_zero());
        assert_eq!(kernel(&[], 2).len(), 2);
    }

    #[test]
    fn strict_systems() {
        let p = strict_point(&[r(&[1, 0]), r(&[0, 1]), r(&[-1, -1])], 2);
        assert!(p.is_none());
        let p = strict_point(&[r(&[1, -1]), r(&[0, 1])], 2).unwrap();
        assert!(dot(&r(&[1, -1]), &p).is_positive() && p[1].is_positive());
        assert!(strict_point(&[r(&[0, 0])], 2).is_none());
    }

    #[test]
    fn plane_arrangement_has_2n_cells() {
        let basis = vec![r(&[1, 0]), r(&[0, 1])];
        let forms: Vec<DimVector> = [[1, 0], [0, 1], [1, 1], [1, 2]].iter().map(|v| DimVector::new(v.to_vec())).collect();
        let cells = arrangement_cells(&basis, 2, &forms);
        assert_eq!(cells.len(), 8);
        for c in &cells {
            for (p, s) in &c.signs {
                assert_eq!(sign_of(&c.point.eval(p)), *s);
            }
        }
    }

    #[test]
    fn minimize_keeps_irredundant() {
        let basis = vec![r(&[1, 0]), r(&[0, 1])];
        let signs = vec![
            (DimVector::new(vec![1, 0]), 1),
            (DimVector::new(vec![0, 1]), 1),
            (DimVector::new(vec![1, 1]), 1),
        ];
        let m = minimize_signs(&basis, &signs);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn angles() {
        let mut v = vec![(rat(0), rat(-1)), (rat(-1), rat(0)), (rat(1), rat(1)), (rat(1), rat(0))];
        v.sort_by(angle_cmp);
        assert_eq!(v, vec![(rat(1), rat(0)), (rat(1), rat(1)), (rat(-1), rat(0)), (rat(0), rat(-1))]);
    }
}
