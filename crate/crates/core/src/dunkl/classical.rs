//! Classical Dunkl operators `D^cl_a = p_a − Σ c_α⟨α,a⟩/⟨α,x⟩ (1 − σ_α)` in
//! `ℂW ⋉ O(T*V_reg)`.
//!
//! The Poisson bracket of group-valued functions is taken componentwise with
//! the group labels treated as constants: `{f w, g v} = {f, g} wv`. Products
//! use the semidirect rule `(f w)(g v) = f (w·g) wv`, where `w` moves positions
//! and momenta alike.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{act_ratfunc, Dunkl, SweepReport};
use crate::poisson::poisson_bracket;
use crate::roots::{GroupElem, Rat};
use crate::scalar::{Naming, ParamScalar, RatFunc};

fn rat_scalar(r: Rat) -> ParamScalar {
    ParamScalar::ratio(*r.numer(), *r.denom())
}

/// `p_a = Σ a_j p_j`.
pub fn momentum_along(a: &[Rat]) -> RatFunc {
    let parts: Vec<RatFunc> = a
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| RatFunc::p(j).scale(&rat_scalar(*x)))
        .collect();
    RatFunc::sum(&parts)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassicalDunklElem {
    components: BTreeMap<GroupElem, RatFunc>,
}

impl ClassicalDunklElem {
    pub fn term(f: RatFunc, w: GroupElem) -> Self {
        let mut components = BTreeMap::new();
        if !f.is_zero() {
            components.insert(w, f);
        }
        ClassicalDunklElem { components }
    }

    pub fn group(w: GroupElem) -> Self {
        Self::term(RatFunc::one(), w)
    }

    pub fn components(&self) -> impl Iterator<Item = (&GroupElem, &RatFunc)> {
        self.components.iter()
    }

    pub fn component(&self, w: &GroupElem) -> RatFunc {
        self.components.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn collect(groups: BTreeMap<GroupElem, Vec<RatFunc>>) -> Self {
        ClassicalDunklElem {
            components: groups
                .into_iter()
                .map(|(w, parts)| (w, RatFunc::sum(&parts)))
                .filter(|(_, f)| !f.is_zero())
                .collect(),
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a ClassicalDunklElem>) -> Self {
        let mut groups: BTreeMap<GroupElem, Vec<RatFunc>> = BTreeMap::new();
        for x in items {
            for (w, f) in &x.components {
                groups.entry(w.clone()).or_default().push(f.clone());
            }
        }
        Self::collect(groups)
    }

    /// `(f w)(g v) = f (w·g) wv`.
    pub fn mul(&self, other: &ClassicalDunklElem) -> ClassicalDunklElem {
        let mut groups: BTreeMap<GroupElem, Vec<RatFunc>> = BTreeMap::new();
        for (w, f) in &self.components {
            for (v, g) in &other.components {
                let moved = if w.is_identity() { g.clone() } else { act_ratfunc(w, g, true) };
                groups.entry(w.mul(v)).or_default().push(f * &moved);
            }
        }
        Self::collect(groups)
    }

    /// `{Σ f_w w, Σ g_v v} = Σ {f_w, g_v} wv`.
    pub fn bracket(&self, other: &ClassicalDunklElem) -> ClassicalDunklElem {
        let mut groups: BTreeMap<GroupElem, Vec<RatFunc>> = BTreeMap::new();
        for (w, f) in &self.components {
            for (v, g) in &other.components {
                let b = poisson_bracket(f, g);
                if !b.is_zero() {
                    groups.entry(w.mul(v)).or_default().push(b);
                }
            }
        }
        Self::collect(groups)
    }

    pub fn res(&self) -> RatFunc {
        RatFunc::sum(self.components.values())
    }
}

impl fmt::Display for ClassicalDunklElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(w, g)| {
                let body = g.render(&Naming::AMBIENT);
                if w.is_identity() {
                    format!("[{body}]")
                } else {
                    format!("[{body}]∘{w}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Dunkl {
    /// `D^cl_a`.
    pub fn classical_operator(&self, a: &[Rat]) -> ClassicalDunklElem {
        let id = GroupElem::identity(self.dim());
        let mut parts = vec![ClassicalDunklElem::term(momentum_along(a), id.clone())];
        for r in self.positive_roots() {
            let pair = r.pairing(a);
            if pair.is_zero() {
                continue;
            }
            let f = r.inv_form().scale(&(&r.c * &rat_scalar(pair)));
            parts.push(ClassicalDunklElem::term(-&f, id.clone()));
            parts.push(ClassicalDunklElem::term(f, r.reflection.clone()));
        }
        ClassicalDunklElem::sum(&parts)
    }

    pub fn kinetic(&self) -> RatFunc {
        let parts: Vec<RatFunc> = (0..self.dim()).map(|j| RatFunc::p(j).pow(2)).collect();
        RatFunc::sum(&parts)
    }

    /// `L̄^cl = Σ p_j² − Σ_α c_α⟨α,α⟩/⟨α,x⟩ p_{α∨}`.
    pub fn classical_restricted(&self) -> RatFunc {
        let mut parts = vec![self.kinetic()];
        for r in self.positive_roots() {
            let norm = r.root.norm2();
            let coroot: Vec<Rat> = r.root.coords().iter().map(|x| Rat::from_integer(2) * x / norm).collect();
            let f = r.inv_form().scale(&(&r.c * &rat_scalar(norm)));
            parts.push(-&(&f * &momentum_along(&coroot)));
        }
        RatFunc::sum(&parts)
    }

    /// `L^cl = Σ p_j² − Σ_α c_α²⟨α,α⟩/⟨α,x⟩²`.
    pub fn classical_op(&self) -> RatFunc {
        let mut parts = vec![self.kinetic()];
        for r in self.positive_roots() {
            let f = r.inv_form().pow(2).scale(&(&r.c.pow(2) * &rat_scalar(r.root.norm2())));
            parts.push(-f);
        }
        RatFunc::sum(&parts)
    }

    /// `θ_c`: `p_j ↦ p_j + ∂_j log δ_c`, positions and group labels fixed.
    pub fn theta(&self, f: &RatFunc) -> RatFunc {
        let images: Vec<RatFunc> = self
            .log_gradient()
            .into_iter()
            .enumerate()
            .map(|(j, g)| &RatFunc::p(j) + &g)
            .collect();
        f.substitute_momenta(&images)
    }

    /// `Σ_j (D^cl_{e_j})²` in the semidirect product.
    pub fn classical_square_sum(&self) -> ClassicalDunklElem {
        let squares: Vec<ClassicalDunklElem> = (0..self.dim())
            .into_par_iter()
            .map(|j| {
                let d = self.classical_operator(&self.basis(j));
                d.mul(&d)
            })
            .collect();
        ClassicalDunklElem::sum(&squares)
    }
}

/// `{D^cl_a, D^cl_b} = 0` componentwise for all basis pairs.
pub fn classical_involution_check(dunkl: &Dunkl) -> SweepReport {
    let d = dunkl.dim();
    let ops: Vec<ClassicalDunklElem> = (0..d).map(|j| dunkl.classical_operator(&dunkl.basis(j))).collect();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let results: Vec<(usize, usize, ClassicalDunklElem)> =
        pairs.into_par_iter().map(|(i, j)| (i, j, ops[i].bracket(&ops[j]))).collect();
    let mut rep = SweepReport::default();
    for (i, j, b) in results {
        rep.checked += 1;
        if !b.is_empty() && rep.witness.is_none() {
            rep.witness = Some(format!("{{D{}, D{}}} = {b}", i + 1, j + 1));
        }
    }
    rep
}

/// `w D^cl_a = D^cl_{wa} w` for every given `w` and basis direction.
pub fn classical_equivariance_check(dunkl: &Dunkl, group: &[GroupElem]) -> SweepReport {
    let mut rep = SweepReport::default();
    for w in group {
        for j in 0..dunkl.dim() {
            let a = dunkl.basis(j);
            let lhs = ClassicalDunklElem::group(w.clone()).mul(&dunkl.classical_operator(&a));
            let rhs = dunkl.classical_operator(&w.apply(&a)).mul(&ClassicalDunklElem::group(w.clone()));
            rep.checked += 1;
            if lhs != rhs && rep.witness.is_none() {
                rep.witness = Some(format!("w = {w}, a = e{}", j + 1));
            }
        }
    }
    rep
}

/// `res(Σ (D^cl_j)²) = L̄^cl` and `θ_c(L̄^cl) = L^cl`.
pub fn theta_check(dunkl: &Dunkl) -> SweepReport {
    let res = dunkl.classical_square_sum().res();
    let bar = dunkl.classical_restricted();
    let op = dunkl.classical_op();
    let shifted = dunkl.theta(&bar);
    let witness = if res != bar {
        Some(format!("res − L̄ = {}", (&res - &bar).render(&Naming::AMBIENT)))
    } else if shifted != op {
        Some(format!("θ(L̄) − L = {}", (&shifted - &op).render(&Naming::AMBIENT)))
    } else if shifted.momentum_degree() != Some(2) {
        Some("θ(L̄) does not have momentum degree 2".to_string())
    } else {
        None
    };
    SweepReport { checked: 2, witness }
}
