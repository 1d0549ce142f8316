//! Rational Dunkl operators `D_a = ∂_a − Σ_{α∈R⁺} c_α⟨α,a⟩/⟨α,x⟩ (1 − σ_α)`
//! on polynomials in the ambient coordinates, and their classical analogues.
//!
//! A group element acts on functions by `(w·f)(x) = f(w⁻¹x)`.

pub mod classical;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::quantum::DiffOp;
use crate::roots::{dot, to_big, GroupElem, Rat, Root, RootSystem, RootType};
use crate::scalar::{LinearForm, Monomial, Naming, Param, ParamScalar, Poly, RatFunc, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DunklError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("input is not W-invariant: {0}")]
    InputNotInvariant(String),
    #[error("no hardcoded invariants for type {0}")]
    NoInvariants(RootType),
    #[error("degree cap must be at least 1")]
    DegreeCap,
}

/// Multiplicity function `c`, constant on each root-length class.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplicity {
    values: BTreeMap<Param, ParamScalar>,
}

impl Multiplicity {
    /// Every class gets its own symbolic parameter.
    pub fn symbolic(system: &RootSystem) -> Self {
        Multiplicity {
            values: system.params().into_iter().map(|p| (p, ParamScalar::param(p))).collect(),
        }
    }

    pub fn zero(system: &RootSystem) -> Self {
        Self::uniform(system, ParamScalar::zero())
    }

    pub fn uniform(system: &RootSystem, value: ParamScalar) -> Self {
        Multiplicity {
            values: system.params().into_iter().map(|p| (p, value.clone())).collect(),
        }
    }

    pub fn with(mut self, class: Param, value: ParamScalar) -> Self {
        self.values.insert(class, value);
        self
    }

    pub fn value(&self, class: Param) -> ParamScalar {
        self.values.get(&class).cloned().unwrap_or_default()
    }

    pub fn of(&self, system: &RootSystem, r: &Root) -> ParamScalar {
        self.value(system.param_of(r))
    }
}

/// Data attached to one positive root.
#[derive(Clone, Debug)]
pub struct PositiveRoot {
    pub root: Root,
    pub c: ParamScalar,
    /// `⟨α, x⟩ = scale · form`.
    pub form: LinearForm,
    pub scale: BigRational,
    pub reflection: GroupElem,
}

impl PositiveRoot {
    /// `1 / ⟨α, x⟩`.
    pub fn inv_form(&self) -> RatFunc {
        RatFunc::inv_form(&self.form, 1).scale_rational(&(BigRational::one() / &self.scale))
    }

    pub fn pairing(&self, a: &[Rat]) -> Rat {
        dot(self.root.coords(), a)
    }
}

fn big(r: Rat) -> BigRational {
    to_big(&r)
}

fn rat_scalar(r: Rat) -> ParamScalar {
    ParamScalar::ratio(*r.numer(), *r.denom())
}

/// `(w·p)(x) = p(w⁻¹x)`, acting on positions and, when `momenta` is set, on
/// momenta in the same way.
pub fn act_ratfunc(w: &GroupElem, f: &RatFunc, momenta: bool) -> RatFunc {
    f.linear_substitute(&w.inverse().rows_big(), momenta)
}

pub fn act_poly(w: &GroupElem, p: &Poly) -> Poly {
    let images: Vec<Poly> = w
        .inverse()
        .rows()
        .into_iter()
        .map(|row| {
            Poly::from_terms(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(j, a)| (Monomial::var(Var::Q(j as u16)), rat_scalar(a))),
            )
        })
        .collect();
    p.substitute(|v| match v {
        Var::Q(i) => Some(images[i as usize].clone()),
        Var::P(_) => None,
    })
}

/// `∂_a p`.
pub fn directional_derivative(p: &Poly, a: &[Rat]) -> Poly {
    let mut out = Poly::zero();
    for (j, aj) in a.iter().enumerate() {
        if !aj.is_zero() {
            out.add_assign_ref(&p.derivative(Var::Q(j as u16)).scale_rational(&big(*aj)));
        }
    }
    out
}

/// `∂_a` as an operator.
pub fn directional_partial(a: &[Rat]) -> DiffOp {
    let parts: Vec<DiffOp> = a
        .iter()
        .enumerate()
        .filter(|(_, aj)| !aj.is_zero())
        .map(|(j, aj)| DiffOp::partial(j).scale(&rat_scalar(*aj)))
        .collect();
    DiffOp::sum(&parts)
}

/// `w ∘ A ∘ w⁻¹`: coefficients are moved by `w` and `∂_j` becomes `∂_{w e_j}`.
pub fn conjugate(w: &GroupElem, op: &DiffOp) -> DiffOp {
    let d = w.dim();
    let images: Vec<DiffOp> = (0..d)
        .map(|j| directional_partial(&(0..d).map(|i| w.entry(i, j)).collect::<Vec<_>>()))
        .collect();
    let parts: Vec<DiffOp> = op
        .terms()
        .map(|(alpha, f)| {
            let mut acc = DiffOp::mul_by(act_ratfunc(w, f, false));
            for (v, e) in alpha.iter() {
                let Var::Q(j) = v else { unreachable!("derivatives are in positions") };
                acc = acc.compose(&images[j as usize].pow(e as u32));
            }
            acc
        })
        .collect();
    DiffOp::sum(&parts)
}

/// Element `Σ_w A_w ∘ w` of `ℂW ⋉ D(V_reg)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DunklElem {
    components: BTreeMap<GroupElem, DiffOp>,
}

impl DunklElem {
    pub fn term(op: DiffOp, w: GroupElem) -> Self {
        let mut components = BTreeMap::new();
        if !op.is_zero() {
            components.insert(w, op);
        }
        DunklElem { components }
    }

    pub fn group(w: GroupElem) -> Self {
        Self::term(DiffOp::one(), w)
    }

    pub fn components(&self) -> impl Iterator<Item = (&GroupElem, &DiffOp)> {
        self.components.iter()
    }

    pub fn component(&self, w: &GroupElem) -> DiffOp {
        self.components.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn collect(groups: BTreeMap<GroupElem, Vec<DiffOp>>) -> Self {
        DunklElem {
            components: groups
                .into_iter()
                .map(|(w, parts)| (w, DiffOp::sum(&parts)))
                .filter(|(_, op)| !op.is_zero())
                .collect(),
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a DunklElem>) -> Self {
        let mut groups: BTreeMap<GroupElem, Vec<DiffOp>> = BTreeMap::new();
        for x in items {
            for (w, op) in &x.components {
                groups.entry(w.clone()).or_default().push(op.clone());
            }
        }
        Self::collect(groups)
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        DunklElem {
            components: self
                .components
                .iter()
                .map(|(w, op)| (w.clone(), op.scale(c)))
                .filter(|(_, op)| !op.is_zero())
                .collect(),
        }
    }

    /// `(A ∘ w)(B ∘ v) = A ∘ (w B w⁻¹) ∘ wv`.
    pub fn mul(&self, other: &DunklElem) -> DunklElem {
        let mut groups: BTreeMap<GroupElem, Vec<DiffOp>> = BTreeMap::new();
        for (w, a) in &self.components {
            for (v, b) in &other.components {
                let moved = if w.is_identity() { b.clone() } else { conjugate(w, b) };
                groups.entry(w.mul(v)).or_default().push(a.compose(&moved));
            }
        }
        Self::collect(groups)
    }

    /// Drop the group labels and add the components.
    pub fn res(&self) -> DiffOp {
        DiffOp::sum(self.components.values())
    }

    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let parts: Vec<RatFunc> = self
            .components
            .iter()
            .map(|(w, op)| op.apply(&act_ratfunc(w, f, false)))
            .collect();
        RatFunc::sum(&parts)
    }
}

impl fmt::Display for DunklElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(w, op)| {
                let body = op.render(&Naming::AMBIENT);
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

/// Outcome of an exhaustive or sampled identity sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub witness: Option<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }
}

/// All monomials in `Q(0..d)` of total degree `≤ max_degree`.
pub fn monomials_up_to(d: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for j in *start..d {
                let grown = m.mul(&Monomial::var(Var::Q(j as u16)));
                out.push(grown.clone());
                next.push((grown, j));
            }
        }
        frontier = next;
    }
    out
}

/// Dunkl operators of a root system with a fixed multiplicity function.
#[derive(Clone, Debug)]
pub struct Dunkl {
    dim: usize,
    roots: Vec<PositiveRoot>,
}

impl Dunkl {
    pub fn new(system: &RootSystem, c: &Multiplicity) -> Self {
        let roots = system
            .positive
            .iter()
            .map(|r| {
                let (form, scale) = r.form();
                PositiveRoot {
                    root: r.clone(),
                    c: c.of(system, r),
                    form,
                    scale,
                    reflection: GroupElem::reflection(r),
                }
            })
            .collect();
        Dunkl {
            dim: system.ambient_dim,
            roots,
        }
    }

    /// Operators from explicit positive-root data, multiplicities included.
    pub fn from_roots(dim: usize, roots: Vec<PositiveRoot>) -> Self {
        Dunkl { dim, roots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn basis(&self, j: usize) -> Vec<Rat> {
        let mut e = vec![Rat::zero(); self.dim];
        e[j] = Rat::one();
        e
    }

    /// `(1 − σ_α) p / ⟨α, x⟩`, always a polynomial.
    pub fn divided_difference(&self, idx: usize, p: &Poly) -> Result<Poly, ScalarError> {
        let r = &self.roots[idx];
        let mut diff = p.clone();
        diff.sub_assign_ref(&act_poly(&r.reflection, p));
        Ok(diff.exact_divide(&r.form)?.scale_rational(&(BigRational::one() / &r.scale)))
    }

    /// `D_a p`.
    pub fn apply(&self, a: &[Rat], p: &Poly) -> Result<Poly, ScalarError> {
        let mut out = directional_derivative(p, a);
        for (idx, r) in self.roots.iter().enumerate() {
            let pair = r.pairing(a);
            if pair.is_zero() || r.c.is_zero() {
                continue;
            }
            let coeff = &r.c * &rat_scalar(pair);
            out.sub_assign_ref(&self.divided_difference(idx, p)?.scale(&coeff));
        }
        Ok(out)
    }

    /// `D_{e_j} p`.
    pub fn apply_basis(&self, j: usize, p: &Poly) -> Result<Poly, ScalarError> {
        self.apply(&self.basis(j), p)
    }

    /// `D_a` as an element of the semidirect product.
    pub fn operator(&self, a: &[Rat]) -> DunklElem {
        let mut parts = vec![DunklElem::term(directional_partial(a), GroupElem::identity(self.dim))];
        for r in &self.roots {
            let pair = r.pairing(a);
            if pair.is_zero() {
                continue;
            }
            let f = r.inv_form().scale(&(&r.c * &rat_scalar(pair)));
            parts.push(DunklElem::term(DiffOp::mul_by(-&f), GroupElem::identity(self.dim)));
            parts.push(DunklElem::term(DiffOp::mul_by(f), r.reflection.clone()));
        }
        DunklElem::sum(&parts)
    }

    /// `∂_j log δ_c = Σ_α c_α α_j / ⟨α, x⟩` for each coordinate.
    pub fn log_gradient(&self) -> Vec<RatFunc> {
        (0..self.dim)
            .map(|j| {
                let parts: Vec<RatFunc> = self
                    .roots
                    .iter()
                    .filter(|r| !r.root.coords()[j].is_zero())
                    .map(|r| r.inv_form().scale(&(&r.c * &rat_scalar(r.root.coords()[j]))))
                    .collect();
                RatFunc::sum(&parts)
            })
            .collect()
    }

    pub fn laplacian(&self) -> DiffOp {
        let parts: Vec<DiffOp> = (0..self.dim).map(|j| DiffOp::partial(j).pow(2)).collect();
        DiffOp::sum(&parts)
    }

    /// `L̄ = Δ − Σ_α c_α⟨α,α⟩/⟨α,x⟩ ∂_{α∨}`, with `∂_{α∨} = 2/⟨α,α⟩ ∂_α`.
    pub fn restricted_laplacian(&self) -> DiffOp {
        let mut parts = vec![self.laplacian()];
        for r in &self.roots {
            let norm = r.root.norm2();
            let coroot: Vec<Rat> = r.root.coords().iter().map(|x| Rat::from_integer(2) * x / norm).collect();
            let f = r.inv_form().scale(&(&r.c * &rat_scalar(norm)));
            parts.push(DiffOp::mul_by(-f).compose(&directional_partial(&coroot)));
        }
        DiffOp::sum(&parts)
    }

    /// The Olshanetsky-Perelomov operator `L = Δ − Σ_α c_α(c_α+1)⟨α,α⟩/⟨α,x⟩²`.
    pub fn op_operator(&self) -> DiffOp {
        let mut parts = vec![self.laplacian()];
        for r in &self.roots {
            let cc = &r.c * &(&r.c + &ParamScalar::one());
            let f = r.inv_form().pow(2).scale(&(&cc * &rat_scalar(r.root.norm2())));
            parts.push(DiffOp::mul_by(-f));
        }
        DiffOp::sum(&parts)
    }

    /// `Σ_j D_{e_j}²` in the semidirect product.
    pub fn square_sum(&self) -> DunklElem {
        let squares: Vec<DunklElem> = (0..self.dim)
            .into_par_iter()
            .map(|j| {
                let d = self.operator(&self.basis(j));
                d.mul(&d)
            })
            .collect();
        DunklElem::sum(&squares)
    }

    /// `L̄` conjugated by `δ_c`, realized as `∂_j ↦ ∂_j + ∂_j log δ_c`.
    pub fn gauge_conjugate(&self, op: &DiffOp) -> DiffOp {
        op.shift_derivatives(&self.log_gradient())
    }
}

/// `[D_i, D_j] m = 0` for all basis pairs and monomials `m` up to `max_degree`.
pub fn commute_check(dunkl: &Dunkl, max_degree: u32) -> Result<SweepReport, DunklError> {
    if max_degree < 1 {
        return Err(DunklError::DegreeCap);
    }
    let d = dunkl.dim();
    let monos = monomials_up_to(d, max_degree);
    let reports: Result<Vec<SweepReport>, ScalarError> = monos
        .par_iter()
        .map(|m| {
            let p = Poly::term(m.clone(), ParamScalar::one());
            let first: Vec<Poly> = (0..d).map(|j| dunkl.apply_basis(j, &p)).collect::<Result<_, _>>()?;
            let mut rep = SweepReport::default();
            for i in 0..d {
                for j in i + 1..d {
                    let mut c = dunkl.apply_basis(i, &first[j])?;
                    c.sub_assign_ref(&dunkl.apply_basis(j, &first[i])?);
                    rep.checked += 1;
                    if !c.is_zero() && rep.witness.is_none() {
                        rep.witness = Some(format!(
                            "[D{}, D{}]({}) = {}",
                            i + 1,
                            j + 1,
                            p.render(&Naming::AMBIENT),
                            c.render(&Naming::AMBIENT)
                        ));
                    }
                }
            }
            Ok(rep)
        })
        .collect();
    Ok(reports?.into_iter().fold(SweepReport::default(), SweepReport::merge))
}

/// `w (D_a p) = D_{wa} (w p)` for every given `w`, basis direction `a` and
/// monomial up to `max_degree`; also `w ∘ D_a = D_{wa} ∘ w` in the algebra.
pub fn equivariance_check(dunkl: &Dunkl, group: &[GroupElem], max_degree: u32) -> Result<SweepReport, DunklError> {
    let d = dunkl.dim();
    let monos = monomials_up_to(d, max_degree);
    let mut rep = SweepReport::default();
    for w in group {
        for j in 0..d {
            let a = dunkl.basis(j);
            let wa = w.apply(&a);
            for m in &monos {
                let p = Poly::term(m.clone(), ParamScalar::one());
                let lhs = act_poly(w, &dunkl.apply(&a, &p)?);
                let rhs = dunkl.apply(&wa, &act_poly(w, &p))?;
                rep.checked += 1;
                if lhs != rhs && rep.witness.is_none() {
                    rep.witness = Some(format!("w = {w}, a = e{}, p = {}", j + 1, p.render(&Naming::AMBIENT)));
                }
            }
            let lhs = DunklElem::group(w.clone()).mul(&dunkl.operator(&a));
            let rhs = dunkl.operator(&wa).mul(&DunklElem::group(w.clone()));
            rep.checked += 1;
            if lhs != rhs && rep.witness.is_none() {
                rep.witness = Some(format!("w ∘ D_e{} ≠ D_wa ∘ w for w = {w}", j + 1));
            }
        }
    }
    Ok(rep)
}

/// Rotations `w = σ_α σ_β` (`α ≠ β` positive) with their fibers `{(α, β)}`.
pub fn rotation_fibers(dunkl: &Dunkl) -> BTreeMap<GroupElem, Vec<(usize, usize)>> {
    let roots = dunkl.positive_roots();
    let mut fibers: BTreeMap<GroupElem, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            if i != j {
                fibers.entry(a.reflection.mul(&b.reflection)).or_default().push((i, j));
            }
        }
    }
    fibers
}

/// `Σ_{σ_ασ_β = w} c_α c_β ⟨α,β⟩ (1−σ_α)/⟨α,·⟩ (1−σ_β)/⟨β,·⟩ p` for one fiber.
pub fn dihedral_sum(dunkl: &Dunkl, fiber: &[(usize, usize)], p: &Poly) -> Result<Poly, ScalarError> {
    let roots = dunkl.positive_roots();
    let mut out = Poly::zero();
    for &(i, j) in fiber {
        let (a, b) = (&roots[i], &roots[j]);
        let coeff = &(&a.c * &b.c) * &rat_scalar(dot(a.root.coords(), b.root.coords()));
        if coeff.is_zero() {
            continue;
        }
        let inner = dunkl.divided_difference(j, p)?;
        out.add_assign_ref(&dunkl.divided_difference(i, &inner)?.scale(&coeff));
    }
    Ok(out)
}

/// The dihedral sum vanishes on every monomial up to `max_degree`, for every rotation.
pub fn dihedral_cancellation_check(dunkl: &Dunkl, max_degree: u32) -> Result<SweepReport, DunklError> {
    let monos = monomials_up_to(dunkl.dim(), max_degree);
    let mut rep = SweepReport::default();
    for (w, fiber) in rotation_fibers(dunkl) {
        for m in &monos {
            let p = Poly::term(m.clone(), ParamScalar::one());
            let s = dihedral_sum(dunkl, &fiber, &p)?;
            rep.checked += 1;
            if !s.is_zero() && rep.witness.is_none() {
                rep.witness = Some(format!("w = {w}, p = {}: {}", p.render(&Naming::AMBIENT), s.render(&Naming::AMBIENT)));
            }
        }
    }
    Ok(rep)
}

/// Hardcoded invariant generators: power sums `Σ x_i^m`, `2 ≤ m ≤ n`, for `A_{n−1}`,
/// even power sums `Σ x_i^{2m}`, `1 ≤ m ≤ n`, for `B_n` and `C_n`.
pub fn invariant_generators(t: RootType) -> Result<Vec<Poly>, DunklError> {
    let power_sum = |d: usize, m: u16| {
        Poly::from_terms((0..d).map(|i| (Monomial::pow(Var::Q(i as u16), m), ParamScalar::one())))
    };
    match t {
        RootType::A(r) => Ok((2..=(r + 1) as u16).map(|m| power_sum(r + 1, m)).collect()),
        RootType::B(n) | RootType::C(n) => Ok((1..=n as u16).map(|m| power_sum(n, 2 * m)).collect()),
        other => Err(DunklError::NoInvariants(other)),
    }
}

/// Validate invariance under the simple reflections.
pub fn check_invariant(system: &RootSystem, p: &Poly) -> Result<(), DunklError> {
    for s in system.simple_reflections() {
        if act_poly(&s, p) != *p {
            return Err(DunklError::InputNotInvariant(p.render(&Naming::AMBIENT)));
        }
    }
    Ok(())
}

/// Two-path restriction identity on an invariant: `Σ_j D_j(D_j p)` against
/// `L̄ p`.
pub fn res_identity_check(dunkl: &Dunkl, system: &RootSystem, p: &Poly) -> Result<SweepReport, DunklError> {
    check_invariant(system, p)?;
    let mut lhs = Poly::zero();
    for j in 0..dunkl.dim() {
        let once = dunkl.apply_basis(j, p)?;
        lhs.add_assign_ref(&dunkl.apply_basis(j, &once)?);
    }
    let rhs = dunkl.restricted_laplacian().apply(&RatFunc::from_poly(p.clone()));
    let lhs = RatFunc::from_poly(lhs);
    let witness = (lhs != rhs).then(|| {
        format!(
            "p = {}: Σ D_j² p = {}, L̄ p = {}",
            p.render(&Naming::AMBIENT),
            lhs.render(&Naming::AMBIENT),
            rhs.render(&Naming::AMBIENT)
        )
    });
    Ok(SweepReport { checked: 1, witness })
}

/// `res(Σ_j D_{e_j}²) = L̄` as operators.
pub fn restricted_square_check(dunkl: &Dunkl) -> SweepReport {
    let res = dunkl.square_sum().res();
    let expected = dunkl.restricted_laplacian();
    SweepReport {
        checked: 1,
        witness: (res != expected).then(|| format!("res − L̄ = {}", (&res - &expected).render(&Naming::AMBIENT))),
    }
}

/// The gauge-shifted `L̄` equals `L`, has no first-order part, and both
/// operators agree on the test polynomial.
pub fn gauge_check(dunkl: &Dunkl, test: &Poly) -> SweepReport {
    let shifted = dunkl.gauge_conjugate(&dunkl.restricted_laplacian());
    let expected = dunkl.op_operator();
    let mut rep = SweepReport { checked: 3, witness: None };
    if shifted != expected {
        rep.witness = Some(format!("shifted − L = {}", (&shifted - &expected).render(&Naming::AMBIENT)));
    } else if shifted.terms().any(|(a, _)| a.degree() == 1) {
        rep.witness = Some("first-order terms survive".to_string());
    } else {
        let f = RatFunc::from_poly(test.clone());
        if shifted.apply(&f) != expected.apply(&f) {
            rep.witness = Some(format!("operators differ on {}", test.render(&Naming::AMBIENT)));
        }
    }
    rep
}

/// For `A_{n−1}`: the potential of `L` is `Σ_{i≠j} c(c+1)(x_i − x_j)^{-2}`
/// over ordered pairs, and `L = −2Ĥ` with coupling `g = c(c+1)`.
pub fn type_a_potential_check(dunkl: &Dunkl, c: &ParamScalar) -> SweepReport {
    let n = dunkl.dim();
    let cc = c * &(c + &ParamScalar::one());
    let mut pot = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pot.push(RatFunc::inv_difference(i, j, 2).scale(&cc));
            }
        }
    }
    let expected = &dunkl.laplacian() - &DiffOp::mul_by(RatFunc::sum(&pot));
    let l = dunkl.op_operator();
    let h = crate::quantum::hamiltonian(n, &cc).scale(&ParamScalar::integer(-2));
    let witness = if l != expected {
        Some(format!("L − (Δ − V) = {}", (&l - &expected).render(&Naming::AMBIENT)))
    } else if l != h {
        Some(format!("L + 2Ĥ = {}", (&l - &h).render(&Naming::AMBIENT)))
    } else {
        None
    };
    SweepReport { checked: 2, witness }
}
