//! Quivers with optional potential, the lattices `N` and `M`, and the forms on them.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{rat, Error, Rat, Result};

/// An element of `N = Z^V(Q)`: a dimension vector, or a general lattice vector
/// when used in form evaluations.
///
/// Ordering is graded-lexicographic: first by total degree, then by coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(coords: Vec<i64>) -> Self {
        DimVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        DimVector(vec![0; rank])
    }

    /// The basis vector `e_i`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DimVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Total dimension `δ(d) = Σ d_i`.
    pub fn delta(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Membership in `N⁺`: nonzero with all coordinates non-negative.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    /// The primitive vector on the same ray together with the multiplier.
    pub fn primitive(&self) -> (DimVector, i64) {
        let g = self.gcd();
        if g == 0 {
            return (self.clone(), 0);
        }
        (DimVector(self.0.iter().map(|c| c / g).collect()), g)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Extend by one coordinate (used for the framing vertex).
    pub fn extended(&self, last: i64) -> DimVector {
        let mut v = self.0.clone();
        v.push(last);
        DimVector(v)
    }

    /// `Some(k)` when `self = k·dir` for a positive integer `k`.
    pub fn multiple_of(&self, dir: &DimVector) -> Option<i64> {
        let i = dir.0.iter().position(|&c| c != 0)?;
        let (a, b) = (self.0[i], dir.0[i]);
        if a % b != 0 || a / b <= 0 {
            return None;
        }
        let k = a / b;
        (self.0.iter().zip(&dir.0).all(|(x, y)| *x == k * y)).then_some(k)
    }

    /// Enumerate all vectors in `N⁺` with `δ ≤ bound`, in graded-lexicographic order.
    pub fn all_positive(rank: usize, bound: i64) -> Vec<DimVector> {
        let mut out = Vec::new();
        for total in 1..=bound {
            let mut cur = vec![0; rank];
            compositions(rank, total, 0, &mut cur, &mut out);
        }
        out.sort();
        out
    }

    /// All `e` with `0 ≤ e ≤ self` componentwise, including `0` and `self`.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &c in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (c.max(0) as usize + 1));
            for prefix in &out {
                for v in 0..=c.max(0) {
                    let mut p: Vec<i64> = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        let mut res: Vec<DimVector> = out.into_iter().map(DimVector).collect();
        res.sort();
        res
    }
}

fn compositions(rank: usize, remaining: i64, idx: usize, cur: &mut Vec<i64>, out: &mut Vec<DimVector>) {
    if idx + 1 == rank {
        cur[idx] = remaining;
        out.push(DimVector(cur.clone()));
        return;
    }
    if rank == 0 {
        return;
    }
    for v in 0..=remaining {
        cur[idx] = v;
        compositions(rank, remaining - v, idx + 1, cur, out);
    }
}

impl Ord for DimVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.delta()
            .cmp(&other.delta())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DimVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

/// An element of `M_Q = Hom(N, Q)`, written in the dual basis `e_i^*`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight(Vec<Rat>);

impl Weight {
    pub fn new(coords: Vec<Rat>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rat::zero(); rank])
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `θ(d) = Σ θ_i d_i`.
    pub fn eval(&self, d: &DimVector) -> Rat {
        self.0
            .iter()
            .zip(d.coords())
            .fold(Rat::zero(), |acc, (t, &c)| acc + t * rat(c))
    }

    /// Membership in `M⁺`: positive on every basis vector.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|t| t.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|t| t.is_negative())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// `θ − c·δ`, where `δ = Σ e_i^*`.
    pub fn minus_delta(&self, c: &Rat) -> Weight {
        Weight(self.0.iter().map(|a| a - c).collect())
    }

    /// Slope `μ_θ(d) = θ(d)/δ(d)` for `d ∈ N⁺`.
    pub fn slope(&self, d: &DimVector) -> Rat {
        self.eval(d) / rat(d.delta())
    }

    /// Whether all coordinates are non-negative integers (membership in `M^⊕`).
    pub fn is_nonneg_integral(&self) -> bool {
        self.0.iter().all(|t| t.is_integer() && !t.is_negative())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|t| {
                if t.is_integer() {
                    i64::try_from(t.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// One term `coeff · (a_1 a_2 … a_r)` of a potential; the cycle lists arrow
/// indices in path order (the head of each arrow is the tail of the next).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PotentialTerm {
    pub coeff: Rat,
    pub cycle: Vec<usize>,
}

/// A linear combination of paths with common endpoints, stored expanded.
/// Paths list arrow indices in traversal order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub arrow: usize,
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(Rat, Vec<usize>)>,
}

/// A 2-acyclic quiver without loops, with an optional potential.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    potential: Vec<PotentialTerm>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, potential: Vec<PotentialTerm>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidQuiver("quiver has no vertices".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {v:?}")));
            }
        }
        for (idx, a) in arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidQuiver(format!("arrow {idx} refers to an unknown vertex")));
            }
            if a.source == a.target {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {idx} is a vertex loop at {:?}; quivers must be without vertex loops or oriented 2-cycles",
                    vertices[a.source]
                )));
            }
        }
        for a in &arrows {
            if arrows.iter().any(|b| b.source == a.target && b.target == a.source) {
                return Err(Error::InvalidQuiver(format!(
                    "vertices {:?} and {:?} form an oriented 2-cycle; quivers must be without vertex loops or oriented 2-cycles",
                    vertices[a.source], vertices[a.target]
                )));
            }
        }
        for (t, term) in potential.iter().enumerate() {
            let c = &term.cycle;
            if c.len() < 3 {
                return Err(Error::InvalidQuiver(format!("potential term {t} is not a cycle of length >= 3")));
            }
            if c.iter().any(|&a| a >= arrows.len()) {
                return Err(Error::InvalidQuiver(format!("potential term {t} refers to an unknown arrow")));
            }
            for j in 0..c.len() {
                let a = arrows[c[j]];
                let b = arrows[c[(j + 1) % c.len()]];
                if a.target != b.source {
                    return Err(Error::InvalidQuiver(format!(
                        "potential term {t} is not a cycle: arrow {} does not end where arrow {} starts",
                        c[j],
                        c[(j + 1) % c.len()]
                    )));
                }
            }
        }
        Ok(Quiver { vertices, arrows, potential })
    }

    /// Quiver with vertices named `1..=n` and the given `(source, target)`
    /// arrows, 0-indexed.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        Quiver::new(
            (1..=n).map(|i| i.to_string()).collect(),
            arrows.iter().map(|&(s, t)| Arrow { source: s, target: t }).collect(),
            Vec::new(),
        )
    }

    /// Generalized Kronecker quiver with `p` arrows `1 → 2`. `p = 1` is `A₂`.
    pub fn kronecker(p: usize) -> Self {
        Quiver::from_arrows(2, &vec![(0, 1); p]).expect("Kronecker quiver is valid")
    }

    pub fn a2() -> Self {
        Quiver::kronecker(1)
    }

    pub fn single_vertex() -> Self {
        Quiver::from_arrows(1, &[]).expect("single vertex is valid")
    }

    /// The oriented 3-cycle `a: 1→2, b: 2→3, c: 3→1` with potential `W = abc`.
    pub fn triangle_with_potential() -> Self {
        let arrows = vec![
            Arrow { source: 0, target: 1 },
            Arrow { source: 1, target: 2 },
            Arrow { source: 2, target: 0 },
        ];
        Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            arrows,
            vec![PotentialTerm { coeff: rat(1), cycle: vec![0, 1, 2] }],
        )
        .expect("triangle with potential is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn potential(&self) -> &[PotentialTerm] {
        &self.potential
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_potential(&self) -> bool {
        !self.potential.is_empty()
    }

    /// Number of arrows `i → j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> i64 {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count() as i64
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.rank();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            Err(Error::DimensionMismatch { expected: self.rank(), got: len })
        } else {
            Ok(())
        }
    }

    pub fn skew_form(&self) -> SkewForm {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.arrow_count(j, i) - self.arrow_count(i, j);
            }
        }
        SkewForm { matrix: m }
    }

    /// `⟨d, e⟩` with `⟨e_i, e_j⟩ = a_ji − a_ij`.
    pub fn skew(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_len(d.rank())?;
        self.check_len(e.rank())?;
        Ok(self.skew_form().eval(d, e))
    }

    /// Euler form `χ(d,e) = Σ_i d_i e_i − Σ_a d_s(a) e_t(a)` (no relations).
    pub fn euler(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        if self.has_potential() {
            return Err(Error::Unsupported("Euler form is only defined here for quivers without potential".into()));
        }
        self.check_len(d.rank())?;
        self.check_len(e.rank())?;
        Ok(self.euler_unchecked(d, e))
    }

    pub(crate) fn euler_unchecked(&self, d: &DimVector, e: &DimVector) -> i64 {
        let diag: i64 = d.coords().iter().zip(e.coords()).map(|(a, b)| a * b).sum();
        let arr: i64 = self
            .arrows
            .iter()
            .map(|a| d.coords()[a.source] * e.coords()[a.target])
            .sum();
        diag - arr
    }

    /// Adjoin a framing vertex `⋆` (placed last) with `m(e_i)` arrows `⋆ → i`.
    pub fn extend(&self, m: &Weight) -> Result<Quiver> {
        self.check_len(m.rank())?;
        let counts = match m.to_ints() {
            Some(c) if c.iter().all(|&x| x >= 0) => c,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "framing vector {m} must have non-negative integer coordinates"
                )))
            }
        };
        let star = self.rank();
        let mut vertices = self.vertices.clone();
        let mut name = "*".to_string();
        while vertices.contains(&name) {
            name.push('*');
        }
        vertices.push(name);
        let mut arrows = self.arrows.clone();
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                arrows.push(Arrow { source: star, target: i });
            }
        }
        Quiver::new(vertices, arrows, self.potential.clone())
    }

    /// Cyclic derivatives `∂_a W` for every arrow `a` occurring in `W`,
    /// with `∂_a(a_1…a_r) = Σ_{a_i = a} a_{i+1}…a_r a_1…a_{i−1}`.
    pub fn derived_relations(&self) -> Vec<Relation> {
        let mut rels: Vec<Relation> = Vec::new();
        for term in &self.potential {
            let c = &term.cycle;
            for (i, &a) in c.iter().enumerate() {
                let path: Vec<usize> = c[i + 1..].iter().chain(&c[..i]).copied().collect();
                let arrow = self.arrows[a];
                let rel = match rels.iter_mut().find(|r| r.arrow == a) {
                    Some(r) => r,
                    None => {
                        rels.push(Relation {
                            arrow: a,
                            source: arrow.target,
                            target: arrow.source,
                            terms: Vec::new(),
                        });
                        rels.last_mut().unwrap()
                    }
                };
                match rel.terms.iter_mut().find(|(_, p)| *p == path) {
                    Some((coef, _)) => *coef += &term.coeff,
                    None => rel.terms.push((term.coeff.clone(), path)),
                }
            }
        }
        for r in &mut rels {
            r.terms.retain(|(c, _)| !c.is_zero());
        }
        rels.retain(|r| !r.terms.is_empty());
        rels.sort_by_key(|r| r.arrow);
        rels
    }
}

/// `θ⋆ = (θ, −θ(d))` on the extended quiver.
pub fn lift_weight(theta: &Weight, d: &DimVector) -> Weight {
    let mut c = theta.coords().to_vec();
    c.push(-theta.eval(d));
    Weight::new(c)
}

/// The skew-symmetric form `⟨−,−⟩` on `N`, stored as the matrix `⟨e_i, e_j⟩`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewForm {
    matrix: Vec<Vec<i64>>,
}

impl SkewForm {
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Self {
        SkewForm { matrix }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn eval(&self, d: &DimVector, e: &DimVector) -> i64 {
        let (d, e) = (d.coords(), e.coords());
        let mut s = 0;
        for (i, &di) in d.iter().enumerate() {
            if di == 0 {
                continue;
            }
            for (j, &ej) in e.iter().enumerate() {
                s += di * ej * self.matrix[i][j];
            }
        }
        s
    }

    /// `θ_n = ⟨−, n⟩ ∈ M`, with coordinates `⟨e_i, n⟩`.
    pub fn pairing_with(&self, n: &DimVector) -> Vec<i64> {
        (0..self.rank())
            .map(|i| self.eval(&DimVector::basis(self.rank(), i), n))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|&x| x == 0))
    }
}

pub(crate) fn sign_of(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
