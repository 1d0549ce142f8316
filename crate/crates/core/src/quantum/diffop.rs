//! Differential operators with rational-function coefficients in normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::matrix::MatrixEntry;
use crate::scalar::{GaussianRational, Monomial, Naming, ParamScalar, RatFunc, Var};

/// Multi-index of a derivative: `Var::Q(j)` with exponent `e` stands for `∂_{q_j}^e`.
pub type DerivIndex = Monomial;

/// `Σ_α f_α ∂^α` with every coefficient standing to the left of its derivative.
///
/// Zero coefficients are never stored, so the zero operator is the empty map
/// and equality of normal forms decides operator equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DiffOp {
    terms: BTreeMap<DerivIndex, RatFunc>,
}

fn binomial(n: u16, k: u16) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

/// All `γ ≤ α` componentwise, with `Π_j C(α_j, γ_j)`.
fn sub_indices(alpha: &DerivIndex) -> Vec<(DerivIndex, i64)> {
    let mut out = vec![(DerivIndex::one(), 1i64)];
    for (v, e) in alpha.iter() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for (g, c) in &out {
            for k in 0..=e {
                next.push((g.mul(&DerivIndex::pow(v, k)), c * binomial(e, k)));
            }
        }
        out = next;
    }
    out
}

fn derive(f: &RatFunc, gamma: &DerivIndex) -> RatFunc {
    let mut out = f.clone();
    for (v, e) in gamma.iter() {
        for _ in 0..e {
            out = out.partial(v);
            if out.is_zero() {
                return out;
            }
        }
    }
    out
}

impl DiffOp {
    /// Multiplication by `f`.
    pub fn mul_by(f: RatFunc) -> Self {
        Self::term(DerivIndex::one(), f)
    }

    pub fn scalar(c: ParamScalar) -> Self {
        Self::mul_by(RatFunc::constant(c))
    }

    pub fn term(alpha: DerivIndex, f: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(alpha, f);
        }
        DiffOp { terms }
    }

    /// `∂_{q_j}`.
    pub fn partial(j: usize) -> Self {
        Self::term(DerivIndex::var(Var::Q(j as u16)), RatFunc::one())
    }

    /// Position operator `q̂_j`.
    pub fn position(j: usize) -> Self {
        Self::mul_by(RatFunc::q(j))
    }

    /// Momentum operator `p̂_j = −i ∂_{q_j}`.
    pub fn momentum(j: usize) -> Self {
        Self::term(
            DerivIndex::var(Var::Q(j as u16)),
            RatFunc::constant(ParamScalar::constant(-GaussianRational::i())),
        )
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DerivIndex, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &DerivIndex) -> RatFunc {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Terms of the highest order.
    pub fn principal_part(&self) -> DiffOp {
        let Some(top) = self.order() else {
            return DiffOp::zero();
        };
        DiffOp {
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() == top)
                .map(|(a, f)| (a.clone(), f.clone()))
                .collect(),
        }
    }

    /// The multiplication part if the operator has order zero.
    pub fn as_function(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&DerivIndex::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> DiffOp {
        Self::from_map(self.terms.iter().map(|(a, f)| (a.clone(), f.scale(c))))
    }

    /// Left multiplication by a function: `f ∘ self`.
    pub fn left_mul(&self, f: &RatFunc) -> DiffOp {
        Self::from_map(self.terms.iter().map(|(a, g)| (a.clone(), f * g)))
    }

    fn from_map(items: impl IntoIterator<Item = (DerivIndex, RatFunc)>) -> DiffOp {
        DiffOp {
            terms: items.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        }
    }

    fn collect(groups: BTreeMap<DerivIndex, Vec<RatFunc>>) -> DiffOp {
        Self::from_map(groups.into_iter().map(|(a, parts)| (a, RatFunc::sum(&parts))))
    }

    /// Sum of many operators, combining each coefficient once.
    pub fn sum<'a>(ops: impl IntoIterator<Item = &'a DiffOp>) -> DiffOp {
        let mut groups: BTreeMap<DerivIndex, Vec<RatFunc>> = BTreeMap::new();
        for op in ops {
            for (a, f) in &op.terms {
                groups.entry(a.clone()).or_default().push(f.clone());
            }
        }
        Self::collect(groups)
    }

    /// Normal-ordered product by the generalized Leibniz rule:
    /// `(f ∂^α)(g ∂^β) = f Σ_{γ≤α} C(α,γ) (∂^γ g) ∂^{α−γ+β}`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut groups: BTreeMap<DerivIndex, Vec<RatFunc>> = BTreeMap::new();
        let mut derived: BTreeMap<(usize, DerivIndex), RatFunc> = BTreeMap::new();
        for (alpha, f) in &self.terms {
            let gammas = sub_indices(alpha);
            for (bi, (beta, g)) in other.terms.iter().enumerate() {
                for (gamma, binom) in &gammas {
                    let dg = derived
                        .entry((bi, gamma.clone()))
                        .or_insert_with(|| derive(g, gamma));
                    if dg.is_zero() {
                        continue;
                    }
                    let rest = alpha.div(gamma).expect("γ ≤ α").mul(beta);
                    let mut coeff = f * &*dg;
                    if *binom != 1 {
                        coeff = coeff.scale_int(*binom);
                    }
                    groups.entry(rest).or_default().push(coeff);
                }
            }
        }
        Self::collect(groups)
    }

    /// `[self, other] = self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) - &other.compose(self)
    }

    pub fn pow(&self, e: u32) -> DiffOp {
        let mut acc = DiffOp::one();
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// Apply the operator to a function.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let parts: Vec<RatFunc> = self.terms.iter().map(|(a, c)| c * &derive(f, a)).collect();
        RatFunc::sum(&parts)
    }

    /// Replace every `∂_j` by `∂_j + shift[j]` (a conjugation by a function
    /// whose logarithmic gradient is `shift`), re-normal-ordering the result.
    pub fn shift_derivatives(&self, shift: &[RatFunc]) -> DiffOp {
        let mut cache: BTreeMap<(u16, u16), DiffOp> = BTreeMap::new();
        let mut parts = Vec::with_capacity(self.terms.len());
        for (alpha, f) in &self.terms {
            let mut acc = DiffOp::mul_by(f.clone());
            for (v, e) in alpha.iter() {
                let Var::Q(j) = v else { unreachable!("derivatives are in positions") };
                let power = cache.entry((j, e)).or_insert_with(|| {
                    let base = &DiffOp::partial(j as usize) + &DiffOp::mul_by(shift[j as usize].clone());
                    base.pow(e as u32)
                });
                acc = acc.compose(power);
            }
            parts.push(acc);
        }
        DiffOp::sum(&parts)
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> DiffOp {
        Self::from_map(self.terms.iter().map(|(a, c)| (a.clone(), f(c))))
    }

    /// Render with `∂` symbols; the highest-order terms come first.
    pub fn render(&self, naming: &Naming) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (alpha, f)) in self.terms.iter().rev().enumerate() {
            let body = f.render(naming);
            let term = if alpha.is_one() {
                body
            } else {
                let d = alpha.render(|v| format!("∂{}", v.render(naming)));
                let needs_parens = body.contains(" + ") || body.contains(" - ") || body.contains('/');
                if body == "1" {
                    d
                } else if body == "-1" {
                    format!("-{d}")
                } else if needs_parens {
                    format!("({body})*{d}")
                } else {
                    format!("{body}*{d}")
                }
            };
            if idx == 0 {
                out.push_str(&term);
            } else if let Some(stripped) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

impl Zero for DiffOp {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for DiffOp {
    fn one() -> Self {
        Self::mul_by(RatFunc::one())
    }
}

impl MatrixEntry for DiffOp {
    fn product(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn difference(&self, other: &Self) -> Self {
        self - other
    }

    fn sum_of(items: &[Self]) -> Self {
        DiffOp::sum(items)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Naming::PHASE))
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        DiffOp::sum([self, rhs])
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        DiffOp::sum([self, &-rhs])
    }
}

impl<'a> Mul<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        &self + &rhs
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        &self - &rhs
    }
}

impl Mul for DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: DiffOp) -> DiffOp {
        self.compose(&rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            terms: self.terms.iter().map(|(a, f)| (a.clone(), -f)).collect(),
        }
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_relation() {
        let c = DiffOp::position(0).commutator(&DiffOp::momentum(0));
        assert_eq!(c, DiffOp::scalar(ParamScalar::i()));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(sub_indices(&DerivIndex::pow(Var::Q(0), 2)).len(), 3);
    }
}
