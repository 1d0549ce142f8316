//! Classical mechanics on phase space: Poisson brackets, the Calogero-Moser
//! Lax pair and its power-trace integrals.
//!
//! The bracket convention is `{f, g} = Σ_j (∂f/∂p_j ∂g/∂q_j − ∂f/∂q_j ∂g/∂p_j)`,
//! so an observable evolves as `ḟ = {H, f}`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::matrix::Matrix;
use crate::scalar::{Naming, ParamScalar, Poly, RatFunc, Var};

/// Observable on phase space; momenta never occur in denominators.
pub type PhaseFunction = RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaxError {
    #[error("need at least two particles, got {0}")]
    TooFewParticles(usize),
    #[error("integral index {m} outside 1..={n}")]
    IntegralOutOfRange { m: usize, n: usize },
    #[error("M fails the sum-to-zero condition in {0}")]
    SumToZero(String),
}

/// Number of particles needed to hold every variable of `f`.
pub fn phase_dim(f: &RatFunc) -> usize {
    let from_num = f.numerator().variables().iter().map(|v| v.index() + 1).max().unwrap_or(0);
    let from_den = f.denominator().keys().map(|l| l.coeffs().len()).max().unwrap_or(0);
    from_num.max(from_den)
}

pub fn poisson_bracket(f: &PhaseFunction, g: &PhaseFunction) -> PhaseFunction {
    let n = phase_dim(f).max(phase_dim(g));
    let mut parts = Vec::with_capacity(2 * n);
    for j in 0..n {
        let (q, p) = (Var::Q(j as u16), Var::P(j as u16));
        let fp = f.partial(p);
        if !num_traits::Zero::is_zero(&fp) {
            parts.push(&fp * &g.partial(q));
        }
        let gp = g.partial(p);
        if !num_traits::Zero::is_zero(&gp) {
            parts.push(-(&f.partial(q) * &gp));
        }
    }
    RatFunc::sum(&parts)
}

/// `H = ½ Σ p_j² + Σ_{i<j} k² (q_i − q_j)^{-2}`.
pub fn hamiltonian(n: usize, k: &ParamScalar) -> PhaseFunction {
    let k2 = k * k;
    let mut parts: Vec<RatFunc> = (0..n)
        .map(|j| RatFunc::from_poly(Poly::p(j).pow(2)).scale(&ParamScalar::ratio(1, 2)))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            parts.push(RatFunc::inv_difference(i, j, 2).scale(&k2));
        }
    }
    RatFunc::sum(&parts)
}

/// The classical Lax pair `L_rs = p_r δ_rs + (1 − δ_rs) ik/q_rs`,
/// `M_rs = −(1 − δ_rs) ik/q_rs² + δ_rs Σ_{t≠r} ik/q_rt²`.
#[derive(Clone, Debug)]
pub struct ClassicalLax {
    pub n: usize,
    pub k: ParamScalar,
    pub l: Matrix<RatFunc>,
    pub m: Matrix<RatFunc>,
}

impl ClassicalLax {
    pub fn new(n: usize, k: &ParamScalar) -> Result<Self, LaxError> {
        if n < 2 {
            return Err(LaxError::TooFewParticles(n));
        }
        let ik = &ParamScalar::i() * k;
        let l = Matrix::from_fn(n, |r, s| {
            if r == s {
                RatFunc::p(r)
            } else {
                RatFunc::inv_difference(r, s, 1).scale(&ik)
            }
        });
        let m = Matrix::from_fn(n, |r, s| {
            if r == s {
                let parts: Vec<RatFunc> = (0..n).filter(|&t| t != r).map(|t| RatFunc::inv_difference(r, t, 2)).collect();
                RatFunc::sum(&parts).scale(&ik)
            } else {
                RatFunc::inv_difference(r, s, 2).scale(&-&ik)
            }
        });
        let lax = ClassicalLax { n, k: k.clone(), l, m };
        lax.check_sum_to_zero()?;
        Ok(lax)
    }

    /// Flip the sign of one entry of `M`, bypassing validation.
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

    pub fn hamiltonian(&self) -> PhaseFunction {
        hamiltonian(self.n, &self.k)
    }

    /// `{H, L_rs} − [L, M]_rs` entrywise.
    pub fn residual(&self) -> Matrix<RatFunc> {
        let h = self.hamiltonian();
        let lm = self.l.commutator(&self.m);
        Matrix::par_from_fn(self.n, |r, s| &poisson_bracket(&h, self.l.get(r, s)) - lm.get(r, s))
    }

    /// `I_m = (1/m) tr L^m`.
    pub fn integral(&self, m: usize) -> Result<PhaseFunction, LaxError> {
        if m < 1 || m > self.n {
            return Err(LaxError::IntegralOutOfRange { m, n: self.n });
        }
        Ok(self.l.pow(m as u32).trace().scale(&ParamScalar::ratio(1, m as i64)))
    }

    pub fn integrals(&self) -> Vec<PhaseFunction> {
        let mut out = Vec::with_capacity(self.n);
        let mut power = self.l.clone();
        for m in 1..=self.n {
            if m > 1 {
                power = power.mul(&self.l);
            }
            out.push(power.trace().scale(&ParamScalar::ratio(1, m as i64)));
        }
        out
    }
}

/// `(1/3) Σ p_r³ + k² Σ_r p_r Σ_{s≠r} (q_r − q_s)^{-2}`, written out directly.
pub fn third_integral_closed_form(n: usize, k: &ParamScalar) -> PhaseFunction {
    let k2 = k * k;
    let mut parts = Vec::new();
    for r in 0..n {
        parts.push(RatFunc::from_poly(Poly::p(r).pow(3)).scale(&ParamScalar::ratio(1, 3)));
        for s in 0..n {
            if s != r {
                parts.push(&RatFunc::p(r) * &RatFunc::inv_difference(r, s, 2).scale(&k2));
            }
        }
    }
    RatFunc::sum(&parts)
}

/// `{I_i, I_j}` for one pair of integrals.
#[derive(Clone, Debug)]
pub struct PairBracket {
    pub i: usize,
    pub j: usize,
    pub value: PhaseFunction,
}

/// All brackets `{I_i, I_j}` with `1 ≤ i < j ≤ n`, computed in parallel and
/// returned in `(i, j)` order.
pub fn involution_brackets(n: usize, k: &ParamScalar) -> Result<Vec<PairBracket>, LaxError> {
    let lax = ClassicalLax::new(n, k)?;
    let integrals = lax.integrals();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    Ok(pairs
        .into_par_iter()
        .map(|(i, j)| PairBracket {
            i,
            j,
            value: poisson_bracket(&integrals[i - 1], &integrals[j - 1]),
        })
        .collect())
}

/// Right-hand side of Hamilton's equations obtained from the bracket:
/// `({H, q_i})_i` and `({H, p_i})_i`.
pub fn hamilton_flow(n: usize, k: &ParamScalar) -> (Vec<PhaseFunction>, Vec<PhaseFunction>) {
    let h = hamiltonian(n, k);
    let qdot = (0..n).map(|i| poisson_bracket(&h, &RatFunc::q(i))).collect();
    let pdot = (0..n).map(|i| poisson_bracket(&h, &RatFunc::p(i))).collect();
    (qdot, pdot)
}

/// Outcome of the randomized bracket-axiom sweep.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub linearity: usize,
    pub anticommutativity: usize,
    pub leibniz: usize,
    pub jacobi: usize,
    /// Human-readable descriptions of every failing sample.
    pub counterexamples: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Sample sizes for [`bracket_axiom_suite`].
#[derive(Clone, Copy, Debug)]
pub struct AxiomSamples {
    pub n: usize,
    pub pairs: usize,
    pub triples: usize,
    pub seed: u64,
}

impl Default for AxiomSamples {
    fn default() -> Self {
        AxiomSamples {
            n: 3,
            pairs: 100,
            triples: 50,
            seed: 0x5eed,
        }
    }
}

/// Random phase function: a polynomial of degree ≤ 2 in `q, p`, possibly
/// divided by one pairwise difference.
pub fn random_phase_function(rng: &mut StdRng, n: usize) -> PhaseFunction {
    let vars: Vec<Var> = (0..n as u16).flat_map(|j| [Var::Q(j), Var::P(j)]).collect();
    let mut num = Poly::integer(rng.gen_range(-2..=2));
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = Poly::constant(ParamScalar::integer(rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 }));
        if rng.gen_bool(0.3) {
            term = term.scale(&ParamScalar::k());
        }
        for _ in 0..rng.gen_range(1..=2) {
            term = &term * &Poly::var(vars[rng.gen_range(0..vars.len())]);
        }
        num.add_assign_ref(&term);
    }
    let f = RatFunc::from_poly(num);
    if rng.gen_bool(0.4) {
        let r = rng.gen_range(0..n);
        let s = (r + rng.gen_range(1..n)) % n;
        &f * &RatFunc::inv_difference(r, s, 1)
    } else {
        f
    }
}

/// Check linearity, anticommutativity, the Leibniz rule and the Jacobi
/// identity exactly on seeded random samples.
pub fn bracket_axiom_suite(samples: AxiomSamples) -> AxiomReport {
    let mut rng = StdRng::seed_from_u64(samples.seed);
    let n = samples.n;
    let pairs: Vec<[PhaseFunction; 3]> = (0..samples.pairs)
        .map(|_| std::array::from_fn(|_| random_phase_function(&mut rng, n)))
        .collect();
    let triples: Vec<[PhaseFunction; 3]> = (0..samples.triples)
        .map(|_| std::array::from_fn(|_| random_phase_function(&mut rng, n)))
        .collect();
    let show = |f: &PhaseFunction| f.render(&Naming::PHASE);

    let pair_failures: Vec<Vec<String>> = pairs
        .par_iter()
        .enumerate()
        .map(|(idx, [f, g, h])| {
            let mut bad = Vec::new();
            let two = ParamScalar::integer(2);
            let lin = &poisson_bracket(&(&f.scale(&two) + g), h)
                - &(&poisson_bracket(f, h).scale(&two) + &poisson_bracket(g, h));
            if !num_traits::Zero::is_zero(&lin) {
                bad.push(format!("linearity #{idx}: f = {}, g = {}, h = {}", show(f), show(g), show(h)));
            }
            let anti = &poisson_bracket(f, g) + &poisson_bracket(g, f);
            if !num_traits::Zero::is_zero(&anti) {
                bad.push(format!("anticommutativity #{idx}: f = {}, g = {}", show(f), show(g)));
            }
            let leib = &(&poisson_bracket(f, &(g * h)) - &(&poisson_bracket(f, g) * h)) - &(g * &poisson_bracket(f, h));
            if !num_traits::Zero::is_zero(&leib) {
                bad.push(format!("leibniz #{idx}: f = {}, g = {}, h = {}", show(f), show(g), show(h)));
            }
            bad
        })
        .collect();
    let triple_failures: Vec<Option<String>> = triples
        .par_iter()
        .enumerate()
        .map(|(idx, [f, g, h])| {
            let jac = RatFunc::sum(&[
                poisson_bracket(f, &poisson_bracket(g, h)),
                poisson_bracket(g, &poisson_bracket(h, f)),
                poisson_bracket(h, &poisson_bracket(f, g)),
            ]);
            (!num_traits::Zero::is_zero(&jac))
                .then(|| format!("jacobi #{idx}: f = {}, g = {}, h = {}", show(f), show(g), show(h)))
        })
        .collect();

    AxiomReport {
        linearity: samples.pairs,
        anticommutativity: samples.pairs,
        leibniz: samples.pairs,
        jacobi: samples.triples,
        counterexamples: pair_failures.into_iter().flatten().chain(triple_failures.into_iter().flatten()).collect(),
    }
}
