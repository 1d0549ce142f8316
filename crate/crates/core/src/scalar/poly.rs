//! Sparse multivariate polynomials over [`ParamScalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::linear_form::LinearForm;
use super::monomial::{Monomial, Naming, Param, Var};
use super::param::ParamScalar;
use super::ScalarError;

/// Polynomial in the phase-space variables with parameter-polynomial coefficients.
///
/// Terms are keyed by [`Monomial`] in graded-lex order; zero coefficients are
/// never stored, so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, ParamScalar>,
}

impl Poly {
    pub fn constant(c: ParamScalar) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(ParamScalar::integer(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), ParamScalar::one())
    }

    pub fn q(j: usize) -> Self {
        Self::var(Var::Q(j as u16))
    }

    pub fn p(j: usize) -> Self {
        Self::var(Var::P(j as u16))
    }

    pub fn term(m: Monomial, c: ParamScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ParamScalar)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(&m, &c);
        }
        out
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamScalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> ParamScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn as_constant(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Highest exponent of `v` over all terms.
    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn has_momenta(&self) -> bool {
        self.terms.keys().any(|m| m.iter().any(|(v, _)| !v.is_position()))
    }

    pub fn add_term(&mut self, m: &Monomial, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.get_mut(m) {
            slot.add_assign_ref(c);
            if slot.is_zero() {
                self.terms.remove(m);
            }
        } else {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m, c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m, &-c);
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m, v) in &self.terms {
            out.add_term(m, &(v * c));
        }
        out
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale_rational(r))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.div(&Monomial::var(v)).expect("exponent checked");
            out.add_term(&reduced, &c.scale_gaussian_int(e as i64));
        }
        out
    }

    /// Replace each variable for which `image` returns `Some` by that polynomial.
    pub fn substitute(&self, image: impl Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u16), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.iter() {
                match image(v) {
                    None => kept = kept.mul(&Monomial::pow(v, e)),
                    Some(img) => {
                        let power = cache
                            .entry((v, e))
                            .or_insert_with(|| img.pow(e as u32))
                            .clone();
                        acc = &acc * &power;
                    }
                }
            }
            out.add_assign_ref(&acc.mul_monomial(&kept));
        }
        out
    }

    pub fn substitute_param(&self, p: Param, value: &ParamScalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m, &c.substitute(p, value));
        }
        out
    }

    /// Apply a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m, &f(c));
        }
        out
    }

    /// Split by powers of `v`: entry `e` holds the coefficient of `v^e`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            out[e as usize].add_term(&rest, c);
        }
        out
    }

    /// Quotient `self / f`, failing when `f` does not divide exactly.
    ///
    /// Synthetic division in the pivot variable of `f` (its first nonzero
    /// coordinate), with the remaining part of `f` acting as the shift.
    pub fn exact_divide(&self, f: &LinearForm) -> Result<Poly, ScalarError> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if super::modular::nonzero_on_hyperplane(self, f) {
            return Err(ScalarError::NotDivisible);
        }
        let (pivot, lead) = f.pivot();
        let v = Var::Q(pivot as u16);
        let rest = f.to_poly_without(pivot);
        let inv_lead = BigRational::new(BigInt::one(), BigInt::from(lead));
        let c = self.coefficients_in(v);
        let top = c.len() - 1;
        if top == 0 {
            return Err(ScalarError::NotDivisible);
        }
        let mut b = vec![Poly::zero(); top];
        b[top - 1] = c[top].scale_rational(&inv_lead);
        for e in (1..top).rev() {
            let mut t = c[e].clone();
            t.sub_assign_ref(&(&rest * &b[e]));
            b[e - 1] = t.scale_rational(&inv_lead);
        }
        let mut remainder = c[0].clone();
        remainder.sub_assign_ref(&(&rest * &b[0]));
        if !remainder.is_zero() {
            return Err(ScalarError::NotDivisible);
        }
        let mut out = Poly::zero();
        for (e, be) in b.into_iter().enumerate() {
            out.add_assign_ref(&be.mul_monomial(&Monomial::pow(v, e as u16)));
        }
        Ok(out)
    }

    /// Evaluate at a numeric point with all parameters fixed.
    pub fn eval_f64(&self, q: &[f64], p: &[f64], params: impl Fn(Param) -> f64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut x = 1.0;
            for (v, e) in m.iter() {
                let base = match v {
                    Var::Q(j) => q[j as usize],
                    Var::P(j) => p[j as usize],
                };
                x *= base.powi(e as i32);
            }
            acc += c.eval_f64(&params) * x;
        }
        acc
    }

    pub fn render(&self, naming: &Naming) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut term = if m.is_one() {
                c.render(false)
            } else {
                let mono = m.render(|v| v.render(naming));
                let coeff = c.render(true);
                if coeff == "1" {
                    mono
                } else if coeff == "-1" {
                    format!("-{mono}")
                } else {
                    format!("{coeff}*{mono}")
                }
            };
            if m.is_one() && c.len() > 1 && idx > 0 {
                term = format!("({term})");
            }
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

    /// True when the rendering has a top-level `+` or `-` between terms.
    pub(crate) fn is_sum(&self) -> bool {
        match self.terms.len() {
            0 => false,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one() && c.len() > 1
            }
            _ => true,
        }
    }
}

impl ParamScalar {
    pub(crate) fn scale_gaussian_int(&self, n: i64) -> ParamScalar {
        self.scale_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn eval_f64(&self, params: impl Fn(Param) -> f64) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (m, c) in self.terms() {
            let mut x = 1.0;
            for (p, e) in m.iter() {
                x *= params(p).powi(e as i32);
            }
            let re = c.re().to_f64().unwrap_or(f64::NAN);
            let im = c.im().to_f64().unwrap_or(f64::NAN);
            acc += num_complex::Complex64::new(re, im) * x;
        }
        acc
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl From<ParamScalar> for Poly {
    fn from(c: ParamScalar) -> Self {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Naming::PHASE))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(&ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let (q1, q2) = (Poly::q(0), Poly::q(1));
        let prod = &(&q1 - &q2) * &(&q1 + &q2);
        assert_eq!(prod.to_string(), "q1^2 - q2^2");
    }

    #[test]
    fn divide_by_linear_form() {
        let (x1, x2) = (Poly::q(0), Poly::q(1));
        let f = LinearForm::new(&[1, -1]).unwrap();
        let p = &(&x1 * &x1) - &(&x2 * &x2);
        assert_eq!(p.exact_divide(&f).unwrap(), &x1 + &x2);
        assert_eq!(x1.exact_divide(&f), Err(ScalarError::NotDivisible));
    }

    #[test]
    fn substitution_composes() {
        let (q1, q2) = (Poly::q(0), Poly::q(1));
        let p = &q1 * &q2;
        let swapped = p.substitute(|v| match v {
            Var::Q(0) => Some(q2.clone()),
            Var::Q(1) => Some(q1.clone()),
            _ => None,
        });
        assert_eq!(swapped, p);
    }
}
