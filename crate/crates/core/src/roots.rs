//! Crystallographic root systems over ℚ: construction, reflections, simple
//! systems, Coxeter orders and Weyl group enumeration.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::scalar::{LinearForm, Param};

pub type Rat = Rational64;

/// Largest group the enumerator builds unless told otherwise.
pub const DEFAULT_WEYL_CAP: usize = 200_000;

/// Reflection products of higher order than this are reported as an error.
pub const COXETER_ORDER_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootsError {
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("ordering vector is orthogonal to root {0}")]
    DegenerateOrdering(Root),
    #[error("reflection product order exceeds {0}")]
    OrderCap(u32),
    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("axiom violated: {0}")]
    Axiom(String),
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_big(r: &Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn render_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A nonzero vector with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Root(Vec<Rat>);

impl Root {
    pub fn new(coords: Vec<Rat>) -> Option<Root> {
        coords.iter().any(|c| !c.is_zero()).then_some(Root(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Option<Root> {
        Self::new(coords.iter().map(|&c| Rat::from_integer(c)).collect())
    }

    /// `e_i` in `ℝ^d`, scaled by `c`.
    pub fn basis(d: usize, i: usize, c: i64) -> Root {
        let mut v = vec![Rat::zero(); d];
        v[i] = Rat::from_integer(c);
        Root(v)
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm2(&self) -> Rat {
        dot(&self.0, &self.0)
    }

    /// `⟨self, α∨⟩ = 2⟨self, α⟩ / ⟨α, α⟩`.
    pub fn coroot_pairing(&self, alpha: &Root) -> Rat {
        Rat::from_integer(2) * dot(&self.0, &alpha.0) / alpha.norm2()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Option<Root> {
        Root::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_proportional(&self, other: &Root) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.0[i] * other.0[j] == self.0[j] * other.0[i]))
    }

    pub fn to_big(&self) -> Vec<BigRational> {
        self.0.iter().map(to_big).collect()
    }

    /// `⟨α, x⟩` as a canonical linear form with the factor `s`, `⟨α, x⟩ = s · form`.
    pub fn form(&self) -> (LinearForm, BigRational) {
        LinearForm::from_rationals(&self.to_big()).expect("roots are nonzero")
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(render_rat).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// An orthogonal `d × d` rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElem {
    d: usize,
    m: Vec<Rat>,
}

impl GroupElem {
    pub fn identity(d: usize) -> Self {
        let mut m = vec![Rat::zero(); d * d];
        for i in 0..d {
            m[i * d + i] = Rat::one();
        }
        GroupElem { d, m }
    }

    /// `σ_α λ = λ − 2⟨λ, α⟩/⟨α, α⟩ α`.
    pub fn reflection(alpha: &Root) -> Self {
        let d = alpha.dim();
        let s = Rat::from_integer(2) / alpha.norm2();
        let mut g = Self::identity(d);
        for i in 0..d {
            for j in 0..d {
                g.m[i * d + j] -= s * alpha.0[i] * alpha.0[j];
            }
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> Rat {
        self.m[i * self.d + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.m.chunks(self.d).map(<[Rat]>::to_vec).collect()
    }

    pub fn rows_big(&self) -> Vec<Vec<BigRational>> {
        self.m.chunks(self.d).map(|r| r.iter().map(to_big).collect()).collect()
    }

    pub fn mul(&self, other: &GroupElem) -> GroupElem {
        let d = self.d;
        let mut m = vec![Rat::zero(); d * d];
        for i in 0..d {
            for t in 0..d {
                let a = self.m[i * d + t];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    m[i * d + j] += a * other.m[t * d + j];
                }
            }
        }
        GroupElem { d, m }
    }

    /// `σ_α ∘ self`, in `O(d²)`.
    pub fn reflect_left(&self, alpha: &Root) -> GroupElem {
        let d = self.d;
        let s = Rat::from_integer(2) / alpha.norm2();
        let mut m = self.m.clone();
        for j in 0..d {
            let col = (0..d).fold(Rat::zero(), |acc, t| acc + alpha.0[t] * self.m[t * d + j]);
            if col.is_zero() {
                continue;
            }
            for i in 0..d {
                m[i * d + j] -= s * alpha.0[i] * col;
            }
        }
        GroupElem { d, m }
    }

    pub fn transpose(&self) -> GroupElem {
        let d = self.d;
        let mut m = vec![Rat::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                m[j * d + i] = self.m[i * d + j];
            }
        }
        GroupElem { d, m }
    }

    /// The inverse of an orthogonal matrix is its transpose.
    pub fn inverse(&self) -> GroupElem {
        self.transpose()
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.m.chunks(self.d).map(|row| dot(row, v)).collect()
    }

    pub fn apply_root(&self, r: &Root) -> Root {
        Root(self.apply(&r.0))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.d)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.mul(&self.transpose()).is_identity()
    }

    /// Smallest `m ≥ 1` with `self^m = 1`, or `None` beyond `cap`.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let mut acc = self.clone();
        for m in 1..=cap {
            if acc.is_identity() {
                return Some(m);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .chunks(self.d)
            .map(|r| r.iter().map(render_rat).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}

/// Cartan type with rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum RootType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::B(n) | RootType::C(n) | RootType::D(n) | RootType::E(n) => n,
            RootType::F4 => 4,
            RootType::G2 => 2,
        }
    }

    /// Dimension of the space the roots are written in.
    pub fn ambient_dim(self) -> usize {
        match self {
            RootType::A(n) => n + 1,
            RootType::E(_) => 8,
            RootType::G2 => 3,
            other => other.rank(),
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, RootType::A(_) | RootType::D(_) | RootType::E(_))
    }

    pub fn validate(self) -> Result<Self, RootsError> {
        let ok = match self {
            RootType::A(n) => n >= 1,
            RootType::B(n) | RootType::C(n) => n >= 2,
            RootType::D(n) => n >= 4,
            RootType::E(n) => (6..=8).contains(&n),
            RootType::F4 | RootType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(RootsError::Unsupported(self.to_string()))
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            RootType::A(n) => fact(n + 1),
            RootType::B(n) | RootType::C(n) => (1u128 << n) * fact(n),
            RootType::D(n) => (1u128 << (n - 1)) * fact(n),
            RootType::E(6) => 51_840,
            RootType::E(7) => 2_903_040,
            RootType::E(_) => 696_729_600,
            RootType::F4 => 1152,
            RootType::G2 => 12,
        }
    }

    /// Number of roots.
    pub fn root_count(self) -> usize {
        match self {
            RootType::A(n) => n * (n + 1),
            RootType::B(n) | RootType::C(n) => 2 * n * n,
            RootType::D(n) => 2 * n * (n - 1),
            RootType::E(6) => 72,
            RootType::E(7) => 126,
            RootType::E(_) => 240,
            RootType::F4 => 48,
            RootType::G2 => 12,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B(n) => write!(f, "B{n}"),
            RootType::C(n) => write!(f, "C{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E(n) => write!(f, "E{n}"),
            RootType::F4 => f.write_str("F4"),
            RootType::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for RootType {
    type Err = RootsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootsError::Unsupported(s.to_string());
        let mut chars = s.trim().chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, rank) {
            ('A', n) => RootType::A(n),
            ('B', n) => RootType::B(n),
            ('C', n) => RootType::C(n),
            ('D', n) => RootType::D(n),
            ('E', n) => RootType::E(n),
            ('F', 4) => RootType::F4,
            ('G', 2) => RootType::G2,
            _ => return Err(bad()),
        };
        t.validate()
    }
}

fn signed_pairs(d: usize, upto: usize, out: &mut Vec<Root>) {
    for i in 0..upto {
        for j in i + 1..upto {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0i64; d];
                v[i] = si;
                v[j] = sj;
                out.push(Root::from_ints(&v).expect("nonzero"));
            }
        }
    }
}

fn half_vectors(d: usize, keep: impl Fn(&[i64]) -> bool, out: &mut Vec<Root>) {
    for mask in 0..1u32 << d {
        let signs: Vec<i64> = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        if keep(&signs) {
            out.push(Root::new(signs.iter().map(|&s| Rat::new(s, 2)).collect()).expect("nonzero"));
        }
    }
}

/// Simple roots of `E8`: `α1 = ½(e1 − e2 − … − e7 + e8)`,
/// `α2 = e1 + e2`, `α_i = e_{i−1} − e_{i−2}` for `3 ≤ i ≤ 8`.
pub fn e8_simple_roots() -> Vec<Root> {
    let mut out = Vec::with_capacity(8);
    let mut a1 = vec![Rat::new(-1, 2); 8];
    a1[0] = Rat::new(1, 2);
    a1[7] = Rat::new(1, 2);
    out.push(Root::new(a1).expect("nonzero"));
    let mut a2 = vec![0i64; 8];
    a2[0] = 1;
    a2[1] = 1;
    out.push(Root::from_ints(&a2).expect("nonzero"));
    for i in 3..=8 {
        let mut v = vec![0i64; 8];
        v[i - 2] = 1;
        v[i - 3] = -1;
        out.push(Root::from_ints(&v).expect("nonzero"));
    }
    out
}

fn e8_roots() -> Vec<Root> {
    let mut out = Vec::with_capacity(240);
    signed_pairs(8, 8, &mut out);
    half_vectors(8, |s| s.iter().filter(|&&x| x > 0).count() % 2 == 0, &mut out);
    out
}

/// Rank of a list of rational vectors, by exact elimination.
pub fn rank_of(vectors: &[Vec<Rat>]) -> usize {
    let mut rows: Vec<Vec<Rat>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c] / pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact coordinates of `v` over a linearly independent `basis`, if `v` lies in its span.
pub fn solve_in_basis(basis: &[Root], v: &Root) -> Option<Vec<Rat>> {
    let r = basis.len();
    let d = v.dim();
    // augmented d × (r + 1) system
    let mut rows: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b.0[i]).collect();
            row.push(v.0[i]);
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(r);
    let mut rank = 0;
    for c in 0..r {
        let p = (rank..d).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c] / pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(rank);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| !row[r].is_zero()) {
        return None;
    }
    Some((0..r).map(|c| rows[pivots[c]][r] / rows[pivots[c]][c]).collect())
}

fn restrict_to_span(roots: Vec<Root>, span: &[Root]) -> Vec<Root> {
    roots.into_iter().filter(|r| solve_in_basis(span, r).is_some()).collect()
}

/// The root set of a type, as displayed in the standard constructions.
pub fn root_set(t: RootType) -> Result<Vec<Root>, RootsError> {
    let t = t.validate()?;
    let d = t.ambient_dim();
    let mut out = Vec::new();
    match t {
        RootType::A(_) => {
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        let mut v = vec![0i64; d];
                        v[i] = 1;
                        v[j] = -1;
                        out.push(Root::from_ints(&v).expect("nonzero"));
                    }
                }
            }
        }
        RootType::B(_) | RootType::C(_) | RootType::D(_) => {
            signed_pairs(d, d, &mut out);
            let scale = match t {
                RootType::B(_) => 1,
                RootType::C(_) => 2,
                _ => 0,
            };
            if scale != 0 {
                for i in 0..d {
                    out.push(Root::basis(d, i, scale));
                    out.push(Root::basis(d, i, -scale));
                }
            }
        }
        RootType::F4 => {
            signed_pairs(4, 4, &mut out);
            for i in 0..4 {
                out.push(Root::basis(4, i, 1));
                out.push(Root::basis(4, i, -1));
            }
            half_vectors(4, |_| true, &mut out);
        }
        RootType::G2 => {
            // short roots e_i − e_j, long roots ±(2e_i − e_j − e_k), all in the plane Σx = 0
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut v = [0i64; 3];
                        v[i] = 1;
                        v[j] = -1;
                        out.push(Root::from_ints(&v).expect("nonzero"));
                    }
                }
                let mut long = [-1i64; 3];
                long[i] = 2;
                out.push(Root::from_ints(&long).expect("nonzero"));
                out.push(Root::from_ints(&long.map(|x| -x)).expect("nonzero"));
            }
        }
        RootType::E(n) => {
            let span = &e8_simple_roots()[..n];
            out = restrict_to_span(e8_roots(), span);
        }
    }
    Ok(out)
}

/// The default ordering vector: `(N^d, …, N)` for the classical and exceptional
/// non-E types, `(N, …, N^8)` for the E types, with `N = 10`.
pub fn default_ordering(t: RootType) -> Vec<Rat> {
    let d = t.ambient_dim();
    let powers = (1..=d as u32).map(|e| Rat::from_integer(10i64.pow(e)));
    match t {
        RootType::E(_) => powers.collect(),
        _ => powers.rev().collect(),
    }
}

/// Positive roots (positive pairing with `ordering`) and the simple ones
/// among them (not a sum of two positive roots).
pub fn simple_system(roots: &[Root], ordering: &[Rat]) -> Result<(Vec<Root>, Vec<Root>), RootsError> {
    let mut positive = Vec::with_capacity(roots.len() / 2);
    for r in roots {
        let s = dot(&r.0, ordering);
        if s.is_zero() {
            return Err(RootsError::DegenerateOrdering(r.clone()));
        }
        if s.is_positive() {
            positive.push(r.clone());
        }
    }
    // decreasing pairing with the ordering vector
    positive.sort_by(|a, b| dot(&b.0, ordering).cmp(&dot(&a.0, ordering)).then_with(|| b.cmp(a)));
    let set: BTreeSet<&Root> = positive.iter().collect();
    let sums: BTreeSet<Root> = positive
        .iter()
        .enumerate()
        .flat_map(|(i, a)| positive[i + 1..].iter().filter_map(move |b| a.add(b)))
        .filter(|s| set.contains(s))
        .collect();
    let simple: Vec<Root> = positive.iter().filter(|r| !sums.contains(*r)).cloned().collect();
    Ok((positive, simple))
}

/// Order of `σ_α σ_β`.
pub fn coxeter_order(alpha: &Root, beta: &Root) -> Result<u32, RootsError> {
    GroupElem::reflection(alpha)
        .mul(&GroupElem::reflection(beta))
        .order(COXETER_ORDER_CAP)
        .ok_or(RootsError::OrderCap(COXETER_ORDER_CAP))
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub root_type: RootType,
    pub ambient_dim: usize,
    pub roots: Vec<Root>,
    pub positive: Vec<Root>,
    pub simple: Vec<Root>,
    /// Squared length of each root class and its multiplicity parameter,
    /// `c1` for the longest class and `c2` for the short one.
    pub multiplicity: BTreeMap<Rat, Param>,
}

/// Outcome of the exhaustive axiom sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub reflection_closure: usize,
    pub proportional: usize,
    pub crystallographic_pairs: usize,
    pub decompositions: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl RootSystem {
    /// Build a system with the default ordering vector and run the axiom sweep.
    pub fn build(t: RootType) -> Result<RootSystem, RootsError> {
        let system = Self::build_unchecked(t)?;
        let report = system.check_axioms();
        match report.violations.first() {
            Some(v) => Err(RootsError::Axiom(v.clone())),
            None => Ok(system),
        }
    }

    pub fn build_unchecked(t: RootType) -> Result<RootSystem, RootsError> {
        let mut roots = root_set(t)?;
        roots.sort();
        let (positive, simple) = simple_system(&roots, &default_ordering(t))?;
        let lengths: BTreeSet<Rat> = roots.iter().map(Root::norm2).collect();
        let multiplicity = lengths
            .into_iter()
            .rev()
            .enumerate()
            .map(|(i, l)| (l, Param::C(i as u8 + 1)))
            .collect();
        Ok(RootSystem {
            root_type: t,
            ambient_dim: t.ambient_dim(),
            roots,
            positive,
            simple,
            multiplicity,
        })
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    /// The multiplicity parameter attached to the orbit of `r`.
    pub fn param_of(&self, r: &Root) -> Param {
        self.multiplicity[&r.norm2()]
    }

    pub fn params(&self) -> Vec<Param> {
        self.multiplicity.values().copied().collect()
    }

    /// All roots of squared length 2.
    pub fn is_normalized(&self) -> bool {
        self.roots.iter().all(|r| r.norm2() == Rat::from_integer(2))
    }

    pub fn reflection(&self, r: &Root) -> GroupElem {
        GroupElem::reflection(r)
    }

    pub fn simple_reflections(&self) -> Vec<GroupElem> {
        self.simple.iter().map(GroupElem::reflection).collect()
    }

    /// `⟨β, α∨⟩ ∈ ℤ` for every ordered pair; returns the first failing pair.
    pub fn crystallographic_violation(&self) -> Option<(Root, Root, Rat)> {
        for a in &self.roots {
            for b in &self.roots {
                let c = b.coroot_pairing(a);
                if !c.is_integer() {
                    return Some((b.clone(), a.clone(), c));
                }
            }
        }
        None
    }

    /// Coordinates of `r` over the simple roots.
    pub fn decompose(&self, r: &Root) -> Option<Vec<Rat>> {
        solve_in_basis(&self.simple, r)
    }

    /// Exhaustive checks: `σ_α(R) = R`, `R ∩ ℝα = {±α}`, crystallographic
    /// pairings, `|R⁺| = |R|/2`, simple roots independent, and every positive
    /// root a non-negative integer combination of simple roots.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut rep = AxiomReport::default();
        for a in &self.roots {
            let s = GroupElem::reflection(a);
            for b in &self.roots {
                let image = s.apply_root(b);
                if !self.contains(&image) {
                    rep.violations.push(format!("σ{a} sends {b} to {image}, not a root"));
                }
                let c = b.coroot_pairing(a);
                if !c.is_integer() {
                    rep.violations.push(format!("⟨{b}, {a}∨⟩ = {c} is not an integer"));
                }
                rep.crystallographic_pairs += 1;
                if b.is_proportional(a) && *b != *a && *b != a.neg() {
                    rep.violations.push(format!("{b} is a multiple of {a}"));
                }
            }
            rep.reflection_closure += 1;
            rep.proportional += 1;
        }
        if 2 * self.positive.len() != self.roots.len() {
            rep.violations.push(format!("{} positive roots out of {}", self.positive.len(), self.roots.len()));
        }
        let simple: Vec<Vec<Rat>> = self.simple.iter().map(|r| r.0.clone()).collect();
        let span: Vec<Vec<Rat>> = self.roots.iter().map(|r| r.0.clone()).collect();
        if rank_of(&simple) != self.simple.len() || self.simple.len() != rank_of(&span) {
            rep.violations.push("simple roots are not a basis of the span".to_string());
        }
        for r in &self.positive {
            match self.decompose(r) {
                Some(c) if c.iter().all(|x| x.is_integer() && !x.is_negative()) => rep.decompositions += 1,
                other => rep.violations.push(format!("{r} decomposes as {other:?}")),
            }
        }
        rep
    }

    /// Histogram of `m(α, β)` over all pairs of non-proportional roots.
    pub fn coxeter_orders(&self) -> Result<BTreeMap<u32, usize>, RootsError> {
        let mut hist = BTreeMap::new();
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                if a.is_proportional(b) {
                    continue;
                }
                *hist.entry(coxeter_order(a, b)?).or_insert(0) += 1;
            }
        }
        Ok(hist)
    }

    /// Coxeter matrix over the simple roots.
    pub fn coxeter_matrix(&self) -> Result<Vec<Vec<u32>>, RootsError> {
        self.simple
            .iter()
            .map(|a| self.simple.iter().map(|b| coxeter_order(a, b)).collect())
            .collect()
    }

    /// Close the simple reflections under multiplication. Refuses groups
    /// whose known order exceeds `cap`.
    pub fn weyl_group(&self, cap: usize) -> Result<Vec<GroupElem>, RootsError> {
        let order = self.root_type.weyl_order();
        if order > cap as u128 {
            return Err(RootsError::CapExceeded { order, cap });
        }
        let id = GroupElem::identity(self.ambient_dim);
        let mut seen: HashSet<GroupElem> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for a in &self.simple {
                let next = w.reflect_left(a);
                if seen.insert(next.clone()) {
                    if out.len() >= cap {
                        return Err(RootsError::CapExceeded { order, cap });
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }
}

/// `w σ_α w⁻¹ = σ_{wα}` for `samples` random group elements and every root.
/// Returns the first violation.
pub fn conjugation_violation(system: &RootSystem, group: &[GroupElem], samples: usize, seed: u64) -> Option<String> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let picked: Vec<&GroupElem> = group.choose_multiple(&mut rng, samples.min(group.len())).collect();
    for w in picked {
        let winv = w.inverse();
        for a in &system.roots {
            let lhs = w.mul(&GroupElem::reflection(a)).mul(&winv);
            let rhs = GroupElem::reflection(&w.apply_root(a));
            if lhs != rhs {
                return Some(format!("w = {w}, α = {a}"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_solve() {
        let b = vec![Root::from_ints(&[1, -1, 0]).unwrap(), Root::from_ints(&[0, 1, -1]).unwrap()];
        let v = Root::from_ints(&[1, 0, -1]).unwrap();
        assert_eq!(solve_in_basis(&b, &v), Some(vec![Rat::one(), Rat::one()]));
        assert_eq!(solve_in_basis(&b, &Root::from_ints(&[1, 1, 1]).unwrap()), None);
        let rows: Vec<Vec<Rat>> = b.iter().map(|r| r.coords().to_vec()).collect();
        assert_eq!(rank_of(&rows), 2);
    }

    #[test]
    fn reflect_left_matches_product() {
        let a = Root::from_ints(&[1, -2, 1]).unwrap();
        let w = GroupElem::reflection(&Root::from_ints(&[0, 1, -1]).unwrap());
        assert_eq!(w.reflect_left(&a), GroupElem::reflection(&a).mul(&w));
    }
}
