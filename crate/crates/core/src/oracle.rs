//! Brute-force ground truth over tiny prime fields: every representation of
//! a given dimension vector satisfying the relations, semistability decided
//! by enumerating all subrepresentations, and stack counts by
//! orbit–stabilizer.

use num_traits::{Signed, Zero};

use crate::quiver::{DimVector, Quiver, Relation, Weight};
use crate::{Error, Rat, Result};

/// Default cap on the number of matrix tuples examined.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

type Matrix = Vec<Vec<u64>>;

/// A representation over `F_p`: one `d_t × d_s` matrix per arrow.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepPoint {
    pub p: u64,
    pub dims: Vec<usize>,
    pub matrices: Vec<Matrix>,
}

impl RepPoint {
    pub fn dim_vector(&self) -> DimVector {
        DimVector::new(self.dims.iter().map(|&x| x as i64).collect())
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

fn mod_p(r: &Rat, p: u64) -> Result<u64> {
    let pi = num_bigint::BigInt::from(p);
    let den = r.denom().mod_floor_positive(&pi);
    if den.is_zero() {
        return Err(Error::InvalidArgument(format!("coefficient {r} is not defined mod {p}")));
    }
    let num = r.numer().mod_floor_positive(&pi);
    let n: u64 = num.try_into().expect("reduced below p");
    let d: u64 = den.try_into().expect("reduced below p");
    Ok(n * inv_mod(d, p) % p)
}

trait ModFloor {
    fn mod_floor_positive(&self, m: &num_bigint::BigInt) -> num_bigint::BigInt;
}

impl ModFloor for num_bigint::BigInt {
    fn mod_floor_positive(&self, m: &num_bigint::BigInt) -> num_bigint::BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and tiny
    let mut result = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// `a·b` for `b` of shape `inner × cols`; shapes are explicit so that zero
/// dimensions keep their partners.
fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize, p: u64) -> Matrix {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum::<u64>() % p).collect())
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect()
}

/// A relation reduced mod `p`: `Σ c · (path)` from `source` to `target`.
struct ModRelation {
    source: usize,
    target: usize,
    terms: Vec<(u64, Vec<usize>)>,
}

fn reduce_relations(rels: &[Relation], p: u64) -> Result<Vec<ModRelation>> {
    rels.iter()
        .map(|r| {
            Ok(ModRelation {
                source: r.source,
                target: r.target,
                terms: r.terms.iter().map(|(c, path)| Ok((mod_p(c, p)?, path.clone()))).collect::<Result<_>>()?,
            })
        })
        .collect()
}

fn satisfies(q: &Quiver, rels: &[ModRelation], dims: &[usize], mats: &[Matrix], p: u64) -> bool {
    for rel in rels {
        let (rows, cols) = (dims[rel.target], dims[rel.source]);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut acc = vec![vec![0u64; cols]; rows];
        for (c, path) in &rel.terms {
            // traversal a₁…a_r acts as M_{a_r}⋯M_{a₁}
            let mut m = identity(cols);
            let mut cur = rel.source;
            for &a in path {
                let arrow = q.arrows()[a];
                m = mat_mul(&mats[a], &m, dims[cur], cols, p);
                cur = arrow.target;
            }
            for i in 0..rows {
                for j in 0..cols {
                    acc[i][j] = (acc[i][j] + c * m[i][j]) % p;
                }
            }
        }
        if acc.iter().flatten().any(|&x| x != 0) {
            return false;
        }
    }
    true
}

/// Every representation of dimension `d` over `F_p` satisfying the
/// potential's relations, each exactly once, in a fixed order.
pub struct RepIter<'a> {
    quiver: &'a Quiver,
    rels: Vec<ModRelation>,
    dims: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    p: u64,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for RepIter<'_> {
    type Item = RepPoint;

    fn next(&mut self) -> Option<RepPoint> {
        while !self.done {
            let mats = self.current();
            self.advance();
            if satisfies(self.quiver, &self.rels, &self.dims, &mats, self.p) {
                return Some(RepPoint { p: self.p, dims: self.dims.clone(), matrices: mats });
            }
        }
        None
    }
}

impl RepIter<'_> {
    fn current(&self) -> Vec<Matrix> {
        let mut k = 0;
        self.shapes
            .iter()
            .map(|&(rows, cols)| {
                (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| {
                                k += 1;
                                self.digits[k - 1]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.p {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

pub fn enumerate_reps<'a>(quiver: &'a Quiver, d: &DimVector, p: u64, budget: u64) -> Result<RepIter<'a>> {
    check_prime(p)?;
    if d.rank() != quiver.rank() || !d.is_nonnegative() {
        return Err(Error::InvalidArgument(format!("{d} is not a dimension vector for this quiver")));
    }
    let dims: Vec<usize> = d.coords().iter().map(|&x| x as usize).collect();
    let shapes: Vec<(usize, usize)> = quiver.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = (p as u128).checked_pow(entries as u32);
    if total.is_none_or(|t| t > budget as u128) {
        return Err(Error::Budget(format!("{p}^{entries} tuples exceed the budget of {budget}")));
    }
    Ok(RepIter {
        quiver,
        rels: reduce_relations(&quiver.derived_relations(), p)?,
        dims,
        shapes,
        p,
        digits: vec![0; entries],
        done: false,
    })
}

/// All `k`-dimensional subspaces of `F_p^n`, as reduced row echelon bases.
fn subspaces(n: usize, k: usize, p: u64) -> Vec<Matrix> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose_pivots(n, k, 0, &mut pivots, &mut |piv: &[usize]| {
        // free entries: row i, column j > piv[i], j not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((piv[i] + 1)..n).filter(move |j| !piv.contains(j)).map(move |j| (i, j)))
            .collect();
        let count = p.pow(free.len() as u32);
        for mut code in 0..count {
            let mut m = vec![vec![0u64; n]; k];
            for (i, &c) in piv.iter().enumerate() {
                m[i][c] = 1;
            }
            for &(i, j) in &free {
                m[i][j] = code % p;
                code /= p;
            }
            out.push(m);
        }
    });
    out
}

fn choose_pivots(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in start..n {
        cur.push(c);
        choose_pivots(n, k, c + 1, cur, f);
        cur.pop();
    }
}

/// Whether `v` lies in the span of the RREF basis `basis`.
fn in_span(basis: &Matrix, v: &[u64], p: u64) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let piv = row.iter().position(|&x| x == 1).expect("RREF rows have a leading one");
        let c = w[piv];
        if c != 0 {
            for (x, y) in w.iter_mut().zip(row) {
                *x = (*x + (p - c) * y) % p;
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

fn apply(m: &Matrix, v: &[u64], p: u64) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % p).collect()
}

/// Whether some subrepresentation with dimension vector in `targets` exists.
fn has_subrep(q: &Quiver, e: &RepPoint, targets: &[DimVector]) -> bool {
    let p = e.p;
    for t in targets {
        let lists: Vec<Vec<Matrix>> =
            t.coords().iter().zip(&e.dims).map(|(&k, &n)| subspaces(n, k as usize, p)).collect();
        let mut idx = vec![0usize; lists.len()];
        'tuples: loop {
            let chosen: Vec<&Matrix> = idx.iter().zip(&lists).map(|(&i, l)| &l[i]).collect();
            let closed = q.arrows().iter().enumerate().all(|(a, arrow)| {
                chosen[arrow.source].iter().all(|v| in_span(chosen[arrow.target], &apply(&e.matrices[a], v, p), p))
            });
            if closed {
                return true;
            }
            for (i, l) in idx.iter_mut().zip(&lists) {
                *i += 1;
                if *i < l.len() {
                    continue 'tuples;
                }
                *i = 0;
            }
            break;
        }
    }
    false
}

/// `θ − μ_θ(d)·δ`, vanishing on `d`.
fn king_weight(theta: &Weight, d: &DimVector) -> Weight {
    if d.is_zero() {
        return theta.clone();
    }
    theta.minus_delta(&theta.slope(d))
}

fn proper_subvectors(d: &DimVector) -> impl Iterator<Item = DimVector> + '_ {
    d.sub_vectors().into_iter().filter(move |e| !e.is_zero() && e != d)
}

/// Slope semistability: no subrepresentation `A` with `μ(A) > μ(E)`.
pub fn is_semistable(q: &Quiver, e: &RepPoint, theta: &Weight) -> bool {
    let d = e.dim_vector();
    let king = king_weight(theta, &d);
    let bad: Vec<DimVector> = proper_subvectors(&d).filter(|s| king.eval(s).is_positive()).collect();
    !has_subrep(q, e, &bad)
}

/// Stability: no proper nonzero subrepresentation with `μ(A) ≥ μ(E)`.
pub fn is_stable(q: &Quiver, e: &RepPoint, theta: &Weight) -> bool {
    let d = e.dim_vector();
    if d.is_zero() {
        return false;
    }
    let king = king_weight(theta, &d);
    let bad: Vec<DimVector> = proper_subvectors(&d).filter(|s| !king.eval(s).is_negative()).collect();
    !has_subrep(q, e, &bad)
}

fn gl_order_at(n: usize, p: u64) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    let pn = num_bigint::BigInt::from(p).pow(n as u32);
    for i in 0..n {
        let pi = num_bigint::BigInt::from(p).pow(i as u32);
        acc *= Rat::from_integer(&pn - pi);
    }
    acc
}

/// `#{semistable points} / #GL_d(F_p)`.
pub fn brute_stack_count(q: &Quiver, d: &DimVector, theta: &Weight, p: u64, budget: u64) -> Result<Rat> {
    let mut count = 0u64;
    for e in enumerate_reps(q, d, p, budget)? {
        if is_semistable(q, &e, theta) {
            count += 1;
        }
    }
    let mut g = Rat::from_integer(1.into());
    for &di in d.coords() {
        g *= gl_order_at(di as usize, p);
    }
    Ok(Rat::from_integer(count.into()) / g)
}

/// Whether a semistable representation of dimension `d` exists over `F_p`.
pub fn exists_semistable(q: &Quiver, d: &DimVector, theta: &Weight, p: u64, budget: u64) -> Result<bool> {
    for e in enumerate_reps(q, d, p, budget)? {
        if is_semistable(q, &e, theta) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Dimension vectors `d` with `δ(d) ≤ bound` carrying a representation that
/// is stable for `⟨−,d⟩`.
pub fn self_stable_dims(q: &Quiver, bound: i64, p: u64, budget: u64) -> Result<Vec<DimVector>> {
    let form = q.skew_form();
    let mut out = Vec::new();
    for d in DimVector::all_positive(q.rank(), bound) {
        let theta = Weight::from_ints(&form.pairing_with(&d));
        if enumerate_reps(q, &d, p, budget)?.any(|e| is_stable(q, &e, &theta)) {
            out.push(d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec())
    }

    #[test]
    fn point_counts() {
        let a2 = Quiver::a2();
        assert_eq!(enumerate_reps(&a2, &dv(&[1, 1]), 2, DEFAULT_BUDGET).unwrap().count(), 2);
        assert_eq!(enumerate_reps(&a2, &dv(&[0, 0]), 3, DEFAULT_BUDGET).unwrap().count(), 1);
        let tri = Quiver::triangle_with_potential();
        assert_eq!(enumerate_reps(&tri, &dv(&[1, 1, 1]), 2, DEFAULT_BUDGET).unwrap().count(), 4);
        // the relation at vertex 2 passes through vertex 3, which has dimension zero
        assert_eq!(enumerate_reps(&tri, &dv(&[1, 1, 0]), 2, DEFAULT_BUDGET).unwrap().count(), 2);
        assert!(matches!(enumerate_reps(&a2, &dv(&[5, 5]), 2, 1000), Err(Error::Budget(_))));
        assert!(enumerate_reps(&a2, &dv(&[1, 1]), 4, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials [4 choose 2]_3 = 130, [3 choose 1]_2 = 7
        assert_eq!(subspaces(4, 2, 3).len(), 130);
        assert_eq!(subspaces(3, 1, 2).len(), 7);
        assert_eq!(subspaces(3, 0, 2).len(), 1);
    }

    #[test]
    fn a2_stability() {
        let a2 = Quiver::a2();
        let theta = Weight::from_ints(&[1, -1]);
        let reps: Vec<RepPoint> = enumerate_reps(&a2, &dv(&[1, 1]), 2, DEFAULT_BUDGET).unwrap().collect();
        let (zero, nonzero) = (&reps[0], &reps[1]);
        assert!(is_semistable(&a2, nonzero, &theta) && is_stable(&a2, nonzero, &theta));
        assert!(!is_semistable(&a2, zero, &theta));
        assert!(is_semistable(&a2, zero, &Weight::zero(2)));
    }

    #[test]
    fn stack_counts() {
        let a2 = Quiver::a2();
        let theta = Weight::from_ints(&[1, -1]);
        assert_eq!(brute_stack_count(&a2, &dv(&[1, 1]), &theta, 2, DEFAULT_BUDGET).unwrap(), ratio(1, 1));
        assert_eq!(brute_stack_count(&a2, &dv(&[1, 1]), &Weight::zero(2), 3, DEFAULT_BUDGET).unwrap(), ratio(3, 4));
        assert_eq!(brute_stack_count(&a2, &dv(&[0, 0]), &theta, 3, DEFAULT_BUDGET).unwrap(), ratio(1, 1));
    }

    #[test]
    fn genteel_small() {
        let dims = self_stable_dims(&Quiver::a2(), 3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(dims, vec![dv(&[0, 1]), dv(&[1, 0])]);
    }
}
