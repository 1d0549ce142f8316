//! Quantum Calogero-Moser: the operator Lax pair, the integrals `J_m` and
//! their commutators, all decided by normal forms.
//!
//! Planck's constant is 1 and `p̂_j = −i ∂_{q_j}`.

mod diffop;

pub use diffop::{DerivIndex, DiffOp};

use rayon::prelude::*;

use crate::matrix::Matrix;
use crate::poisson::LaxError;
use crate::scalar::{ParamScalar, RatFunc, Var};

/// Coupling in front of the inverse-square potential of `Ĥ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coupling {
    /// `g = k(k − 1)`, the value the operator Lax pair actually reproduces.
    KMinusOne,
    /// `g = k(k + 1)`.
    KPlusOne,
}

impl Coupling {
    pub fn value(self, k: &ParamScalar) -> ParamScalar {
        let one = ParamScalar::integer(1);
        match self {
            Coupling::KMinusOne => k * &(k - &one),
            Coupling::KPlusOne => k * &(k + &one),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Coupling::KMinusOne => "k(k-1)",
            Coupling::KPlusOne => "k(k+1)",
        }
    }
}

/// `Ĥ = ½ Σ p̂_j² + g Σ_{i<j} (q̂_i − q̂_j)^{-2}`.
pub fn hamiltonian(n: usize, g: &ParamScalar) -> DiffOp {
    let mut parts: Vec<DiffOp> = (0..n)
        .map(|j| DiffOp::momentum(j).pow(2).scale(&ParamScalar::ratio(1, 2)))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            parts.push(DiffOp::mul_by(RatFunc::inv_difference(i, j, 2).scale(g)));
        }
    }
    DiffOp::sum(&parts)
}

/// Residual `[p̂_i, f] + i ∂f/∂q_i`; zero for every position-only `f`.
pub fn momentum_commutator_residual(f: &RatFunc, i: usize) -> DiffOp {
    let lhs = DiffOp::momentum(i).commutator(&DiffOp::mul_by(f.clone()));
    &lhs + &DiffOp::mul_by(f.partial(Var::Q(i as u16)).scale(&ParamScalar::i()))
}

/// Operator Lax pair `L̂_rs = p̂_r δ_rs + (1 − δ_rs) ik q̂_rs^{-1}`,
/// `M̂_rs = −(1 − δ_rs) k q̂_rs^{-2} + δ_rs k Σ_{t≠r} q̂_rt^{-2}`.
#[derive(Clone, Debug)]
pub struct QuantumLax {
    pub n: usize,
    pub k: ParamScalar,
    pub l: Matrix<DiffOp>,
    pub m: Matrix<DiffOp>,
}

impl QuantumLax {
    /// Build the pair and validate the sum-to-zero condition on `M̂`.
    pub fn new(n: usize, k: &ParamScalar) -> Result<Self, LaxError> {
        if n < 2 {
            return Err(LaxError::TooFewParticles(n));
        }
        let ik = &ParamScalar::i() * k;
        let l = Matrix::from_fn(n, |r, s| {
            if r == s {
                DiffOp::momentum(r)
            } else {
                DiffOp::mul_by(RatFunc::inv_difference(r, s, 1).scale(&ik))
            }
        });
        let m = Matrix::from_fn(n, |r, s| {
            if r == s {
                let parts: Vec<RatFunc> = (0..n).filter(|&t| t != r).map(|t| RatFunc::inv_difference(r, t, 2)).collect();
                DiffOp::mul_by(RatFunc::sum(&parts).scale(k))
            } else {
                DiffOp::mul_by(RatFunc::inv_difference(r, s, 2).scale(&-k))
            }
        });
        let lax = QuantumLax { n, k: k.clone(), l, m };
        lax.check_sum_to_zero()?;
        Ok(lax)
    }

    /// Flip the sign of one entry of `M̂`, bypassing validation.
    pub fn with_flipped_m(mut self, r: usize, s: usize) -> Self {
        let flipped = -self.m.get(r, s).clone();
        self.m.set(r, s, flipped);
        self
    }

    pub fn check_sum_to_zero(&self) -> Result<(), LaxError> {
        for r in 0..self.n {
            if !num_traits::Zero::is_zero(&self.m.row_sum(r)) {
                return Err(LaxError::SumToZero(format!("row {}", r + 1)));
            }
            if !num_traits::Zero::is_zero(&self.m.column_sum(r)) {
                return Err(LaxError::SumToZero(format!("column {}", r + 1)));
            }
        }
        Ok(())
    }

    /// Row and column sums of `M̂`, for reporting a sum-to-zero violation.
    pub fn sum_to_zero_witness(&self) -> Option<String> {
        (0..self.n).find_map(|r| {
            let row = self.m.row_sum(r);
            if !num_traits::Zero::is_zero(&row) {
                return Some(format!("row {}: {}", r + 1, row));
            }
            let col = self.m.column_sum(r);
            (!num_traits::Zero::is_zero(&col)).then(|| format!("column {}: {}", r + 1, col))
        })
    }

    /// `i[H̃, L̂] − i[L̂, M̂]` entrywise with `Ĥ` of coupling `g`.
    pub fn residual(&self, g: &ParamScalar) -> Matrix<DiffOp> {
        let h = hamiltonian(self.n, g);
        let lm = self.l.commutator(&self.m);
        let i = ParamScalar::i();
        Matrix::par_from_fn(self.n, |r, s| {
            let lhs = h.commutator(self.l.get(r, s));
            (&lhs - lm.get(r, s)).scale(&i)
        })
    }

    /// `J_m = (1/m) Σ_{jk} (L̂^m)_{jk}`.
    pub fn integral(&self, m: usize) -> Result<DiffOp, LaxError> {
        if m < 1 || m > self.n {
            return Err(LaxError::IntegralOutOfRange { m, n: self.n });
        }
        Ok(self.l.pow(m as u32).sum_entries().scale(&ParamScalar::ratio(1, m as i64)))
    }

    /// `J_1, …, J_n`, sharing the matrix powers.
    pub fn integrals(&self) -> Vec<DiffOp> {
        let mut out = Vec::with_capacity(self.n);
        let mut power = self.l.clone();
        for m in 1..=self.n {
            if m > 1 {
                power = power.mul(&self.l);
            }
            out.push(power.sum_entries().scale(&ParamScalar::ratio(1, m as i64)));
        }
        out
    }
}

/// Displayed symmetric form of the third integral:
/// `(1/3) Σ_r p̂_r³ + (g/3) Σ_{r≠s} (p̂_r q̂_rs^{-2} + q̂_rs^{-1} p̂_r q̂_rs^{-1} + q̂_rs^{-2} p̂_r)`,
/// normal-ordered.
pub fn third_integral_symmetric_form(n: usize, g: &ParamScalar) -> DiffOp {
    let mut parts: Vec<DiffOp> = (0..n)
        .map(|r| DiffOp::momentum(r).pow(3).scale(&ParamScalar::ratio(1, 3)))
        .collect();
    let g3 = g * &ParamScalar::ratio(1, 3);
    for r in 0..n {
        for s in 0..n {
            if r == s {
                continue;
            }
            let p = DiffOp::momentum(r);
            let q1 = DiffOp::mul_by(RatFunc::inv_difference(r, s, 1));
            let q2 = DiffOp::mul_by(RatFunc::inv_difference(r, s, 2));
            let sym = DiffOp::sum(&[p.compose(&q2), q1.compose(&p).compose(&q1), q2.compose(&p)]);
            parts.push(sym.scale(&g3));
        }
    }
    DiffOp::sum(&parts)
}

/// `[J_i, J_j]` for one pair.
#[derive(Clone, Debug)]
pub struct PairCommutator {
    pub i: usize,
    pub j: usize,
    pub value: DiffOp,
}

/// All commutators `[J_i, J_j]`, `1 ≤ i < j ≤ n`, in `(i, j)` order.
pub fn integral_commutators(integrals: &[DiffOp]) -> Vec<PairCommutator> {
    let n = integrals.len();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    pairs
        .into_par_iter()
        .map(|(i, j)| PairCommutator {
            i,
            j,
            value: integrals[i - 1].commutator(&integrals[j - 1]),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RecursionError {
    #[error(transparent)]
    Lax(#[from] LaxError),
    #[error("m = {0} outside 2..=n")]
    OutOfRange(usize),
    #[error("[Σq̂, J_{m}] is not a scalar multiple of J_{prev}: {witness}", prev = m - 1)]
    NotProportional { m: usize, witness: String },
}

/// The scalar `λ` with `[Σ_l q̂_l, J_m] = λ J_{m−1}`.
pub fn recursion_constant(n: usize, m: usize, k: &ParamScalar) -> Result<ParamScalar, RecursionError> {
    if m < 2 || m > n {
        return Err(RecursionError::OutOfRange(m));
    }
    let lax = QuantumLax::new(n, k)?;
    let jm = lax.integral(m)?;
    let prev = lax.integral(m - 1)?;
    let center: Vec<DiffOp> = (0..n).map(DiffOp::position).collect();
    let c = DiffOp::sum(&center).commutator(&jm);
    // the pure top derivative ∂_1^{m−1} of J_{m−1} has a constant coefficient
    let key = DerivIndex::pow(Var::Q(0), (m - 1) as u16);
    let denom = prev.coeff(&key).as_constant().and_then(|c| c.as_constant());
    let numer = c.coeff(&key).as_constant();
    let lambda = match (numer, denom) {
        (Some(a), Some(b)) => b.inv().map(|binv| a.scale(&binv)),
        _ => None,
    };
    match lambda {
        Some(l) if c == prev.scale(&l) => Ok(l),
        _ => Err(RecursionError::NotProportional {
            m,
            witness: c.to_string(),
        }),
    }
}
