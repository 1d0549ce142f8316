//! Sparse monomials over an ordered symbol set, compared in graded-lex order.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use smallvec::SmallVec;

/// A symbol that can carry an exponent inside a [`Mono`].
pub trait Symbol: Copy + Ord + Hash + Debug {}

/// Symbolic parameter of the coefficient ring: the coupling `k` and the
/// orbit multiplicities `c1` (long or only orbit), `c2` (short orbit).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    K,
    C(u8),
}

impl Param {
    pub fn name(&self) -> String {
        match self {
            Param::K => "k".to_string(),
            Param::C(j) => format!("c{j}"),
        }
    }

    pub fn parse(s: &str) -> Option<Param> {
        if s == "k" {
            return Some(Param::K);
        }
        s.strip_prefix('c')?.parse().ok().map(Param::C)
    }
}

impl Symbol for Param {}

/// Polynomial variable: position `Q(j)` or momentum `P(j)`, zero-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Q(u16),
    P(u16),
}

impl Var {
    pub fn index(&self) -> usize {
        match *self {
            Var::Q(j) | Var::P(j) => j as usize,
        }
    }

    pub fn is_position(&self) -> bool {
        matches!(self, Var::Q(_))
    }

    pub fn render(&self, naming: &Naming) -> String {
        match *self {
            Var::Q(j) => format!("{}{}", naming.position, j + 1),
            Var::P(j) => format!("{}{}", naming.momentum, j + 1),
        }
    }

    pub fn parse(s: &str, naming: &Naming) -> Option<Var> {
        let (ctor, rest): (fn(u16) -> Var, &str) = if let Some(r) = s.strip_prefix(naming.position) {
            (Var::Q, r)
        } else {
            (Var::P as fn(u16) -> Var, s.strip_prefix(naming.momentum)?)
        };
        let j: u16 = rest.parse().ok()?;
        (j >= 1).then(|| ctor(j - 1))
    }
}

impl Symbol for Var {}

/// Variable names used when rendering. Phase space uses `q`/`p`; the Dunkl
/// modules render positions as `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Naming {
    pub position: &'static str,
    pub momentum: &'static str,
}

impl Naming {
    pub const PHASE: Naming = Naming {
        position: "q",
        momentum: "p",
    };
    pub const AMBIENT: Naming = Naming {
        position: "x",
        momentum: "p",
    };
}

impl Default for Naming {
    fn default() -> Self {
        Naming::PHASE
    }
}

/// Product of symbol powers, stored sorted by symbol with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono<S: Symbol>(SmallVec<[(S, u16); 4]>);

impl<S: Symbol> Default for Mono<S> {
    fn default() -> Self {
        Mono(SmallVec::new())
    }
}

impl<S: Symbol> Mono<S> {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(s: S) -> Self {
        Self::pow(s, 1)
    }

    pub fn pow(s: S, e: u16) -> Self {
        let mut m = Self::default();
        if e > 0 {
            m.0.push((s, e));
        }
        m
    }

    /// Build from unsorted `(symbol, exponent)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (S, u16)>) -> Self {
        let mut m = Self::one();
        for (s, e) in pairs {
            m = m.mul(&Self::pow(s, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, s: S) -> u16 {
        self.0
            .binary_search_by(|(t, _)| t.cmp(&s))
            .map(|idx| self.0[idx].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (S, u16)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// `self / other` if every exponent of `other` fits, else `None`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for &(s, e) in other.0.iter() {
            let idx = out.binary_search_by(|(t, _)| t.cmp(&s)).ok()?;
            if out[idx].1 < e {
                return None;
            }
            out[idx].1 -= e;
            if out[idx].1 == 0 {
                out.remove(idx);
            }
        }
        Some(Mono(out))
    }

    /// Remove the symbol entirely, returning the stripped monomial and its exponent.
    pub fn split_off(&self, s: S) -> (Self, u16) {
        let mut out = self.0.clone();
        match out.binary_search_by(|(t, _)| t.cmp(&s)) {
            Ok(idx) => {
                let e = out.remove(idx).1;
                (Mono(out), e)
            }
            Err(_) => (Mono(out), 0),
        }
    }

    /// Keep only the symbols accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(S) -> bool) -> Self {
        Mono(self.0.iter().copied().filter(|&(s, _)| keep(s)).collect())
    }

    pub fn render(&self, name: impl Fn(S) -> String) -> String {
        self.0
            .iter()
            .map(|&(s, e)| {
                if e == 1 {
                    name(s)
                } else {
                    format!("{}^{}", name(s), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl<S: Symbol> Ord for Mono<S> {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// smallest symbol where the two differ (higher exponent sorts greater).
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl<S: Symbol> PartialOrd for Mono<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial in the polynomial variables.
pub type Monomial = Mono<Var>;
/// Monomial in the symbolic parameters.
pub type ParamMono = Mono<Param>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let q1 = Monomial::var(Var::Q(0));
        let q2 = Monomial::var(Var::Q(1));
        let q1q2 = q1.mul(&q2);
        let q2sq = Monomial::pow(Var::Q(1), 2);
        assert!(q1 > q2);
        assert!(q2sq > q1);
        assert!(q1q2 > q2sq);
        assert!(Monomial::one() < q2);
    }

    #[test]
    fn mul_div_round_trip() {
        let a = Monomial::from_pairs([(Var::Q(1), 2), (Var::P(0), 1), (Var::Q(1), 1)]);
        assert_eq!(a.exponent(Var::Q(1)), 3);
        let b = Monomial::var(Var::P(0));
        assert_eq!(a.div(&b).unwrap().mul(&b), a);
        assert!(b.div(&a).is_none());
    }

    #[test]
    fn var_names_parse_back() {
        for v in [Var::Q(0), Var::P(3), Var::Q(11)] {
            assert_eq!(Var::parse(&v.render(&Naming::PHASE), &Naming::PHASE), Some(v));
        }
        assert_eq!(Param::parse("c2"), Some(Param::C(2)));
    }
}
