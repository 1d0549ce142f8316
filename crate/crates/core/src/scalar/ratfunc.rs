//! Rational functions whose denominators are products of linear forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::linear_form::LinearForm;
use super::monomial::{Naming, Param, Var};
use super::param::ParamScalar;
use super::poly::Poly;

/// Denominator as a multiset of canonical linear forms.
pub type Denominator = BTreeMap<LinearForm, u32>;

/// `numerator / Π form^power`, kept reduced: no denominator form divides the
/// numerator. Because the forms are canonical and irreducible, the reduced
/// representation is unique and structural equality is exact equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatFunc {
    num: Poly,
    den: Denominator,
}

impl RatFunc {
    /// Build and reduce.
    pub fn new(num: Poly, den: Denominator) -> RatFunc {
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Denominator::new(),
        }
    }

    pub fn constant(c: ParamScalar) -> RatFunc {
        Self::from_poly(Poly::constant(c))
    }

    pub fn integer(n: i64) -> RatFunc {
        Self::from_poly(Poly::integer(n))
    }

    pub fn q(j: usize) -> RatFunc {
        Self::from_poly(Poly::q(j))
    }

    pub fn p(j: usize) -> RatFunc {
        Self::from_poly(Poly::p(j))
    }

    /// `1 / form^power`.
    pub fn inv_form(form: &LinearForm, power: u32) -> RatFunc {
        let mut den = Denominator::new();
        if power > 0 {
            den.insert(form.clone(), power);
        }
        RatFunc { num: Poly::one(), den }
    }

    /// `(q_r − q_s)^{-power}` with the orientation sign folded into the numerator.
    pub fn inv_difference(r: usize, s: usize, power: u32) -> RatFunc {
        let (form, sign) = LinearForm::difference(r, s);
        let mut out = Self::inv_form(&form, power);
        if sign < 0 && power % 2 == 1 {
            out.num = -out.num;
        }
        out
    }

    /// `1 / Σ a_j x_j` for arbitrary nonzero rational coefficients.
    pub fn inv_linear(coeffs: &[BigRational]) -> RatFunc {
        let (form, scale) = LinearForm::from_rationals(coeffs).expect("nonzero linear form");
        Self::inv_form(&form, 1).scale_rational(&(BigRational::one() / scale))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Denominator {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Denominator) {
        (self.num, self.den)
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<ParamScalar> {
        self.as_poly().and_then(Poly::as_constant)
    }

    /// Cancel every denominator form that divides the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let forms: Vec<LinearForm> = self.den.keys().cloned().collect();
        for form in forms {
            let power = self.den.get_mut(&form).unwrap();
            while *power > 0 {
                match self.num.exact_divide(&form) {
                    Ok(q) => {
                        self.num = q;
                        *power -= 1;
                    }
                    Err(_) => break,
                }
            }
            if *power == 0 {
                self.den.remove(&form);
            }
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale_gaussian(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> RatFunc {
        if r.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale_rational(r),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, n: i64) -> RatFunc {
        self.scale_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.iter().map(|(f, p)| (f.clone(), p * e)).filter(|(_, p)| *p > 0).collect(),
        }
    }

    /// Sum of many terms over a single common denominator, reduced once.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a RatFunc>) -> RatFunc {
        let terms: Vec<&RatFunc> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => return RatFunc::zero(),
            1 => return terms[0].clone(),
            _ => {}
        }
        let mut common = Denominator::new();
        for t in &terms {
            for (f, &p) in &t.den {
                let slot = common.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(p);
            }
        }
        let mut powers: BTreeMap<(LinearForm, u32), Poly> = BTreeMap::new();
        let mut num = Poly::zero();
        for t in &terms {
            let mut scaled = t.num.clone();
            for (f, &p) in &common {
                let missing = p - t.den.get(f).copied().unwrap_or(0);
                if missing > 0 {
                    let factor = powers
                        .entry((f.clone(), missing))
                        .or_insert_with(|| f.to_poly().pow(missing));
                    scaled = &scaled * factor;
                }
            }
            num.add_assign_ref(&scaled);
        }
        RatFunc::new(num, common)
    }

    /// Partial derivative by the quotient rule over the common denominator.
    pub fn partial(&self, v: Var) -> RatFunc {
        let dnum = self.num.derivative(v);
        let involved: Vec<(&LinearForm, u32, i64)> = match v {
            Var::Q(j) => self
                .den
                .iter()
                .filter_map(|(f, &p)| {
                    let a = f.coeff(j as usize);
                    (a != 0).then_some((f, p, a))
                })
                .collect(),
            Var::P(_) => Vec::new(),
        };
        if involved.is_empty() {
            return RatFunc::new(dnum, self.den.clone());
        }
        let forms: Vec<Poly> = involved.iter().map(|(f, _, _)| f.to_poly()).collect();
        let mut num = dnum;
        for f in &forms {
            num = &num * f;
        }
        for (idx, &(_, p, a)) in involved.iter().enumerate() {
            let mut t = self.num.scale(&ParamScalar::integer(p as i64 * a));
            for (jdx, f) in forms.iter().enumerate() {
                if jdx != idx {
                    t = &t * f;
                }
            }
            num.sub_assign_ref(&t);
        }
        let mut den = self.den.clone();
        for (f, _, _) in &involved {
            *den.get_mut(*f).unwrap() += 1;
        }
        RatFunc::new(num, den)
    }

    /// Change of variables by a square rational matrix `m`: every `Q(i)`
    /// becomes `Σ_j m[i][j] Q(j)`, and likewise `P(i)` when `momenta` is set.
    pub fn linear_substitute(&self, m: &[Vec<BigRational>], momenta: bool) -> RatFunc {
        let image = |v: Var| -> Option<Poly> {
            let (i, ctor): (usize, fn(usize) -> Poly) = match v {
                Var::Q(i) => (i as usize, Poly::q),
                Var::P(i) if momenta => (i as usize, Poly::p),
                Var::P(_) => return None,
            };
            let row = m.get(i)?;
            let mut out = Poly::zero();
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    out.add_assign_ref(&ctor(j).scale_rational(a));
                }
            }
            Some(out)
        };
        let num = self.num.substitute(image);
        let mut den = Denominator::new();
        let mut scale = BigRational::one();
        for (f, &p) in &self.den {
            let (g, s) = f.pullback(m);
            for _ in 0..p {
                scale = &scale * &s;
            }
            *den.entry(g).or_insert(0) += p;
        }
        RatFunc::new(num.scale_rational(&(BigRational::one() / scale)), den)
    }

    /// Replace each momentum `P(j)` by `images[j]`; momenta beyond the slice stay.
    pub fn substitute_momenta(&self, images: &[RatFunc]) -> RatFunc {
        let mut cache: BTreeMap<(u16, u16), RatFunc> = BTreeMap::new();
        let mut parts = Vec::with_capacity(self.num.len());
        for (m, c) in self.num.terms() {
            let positions = m.filter(|v| v.is_position() || v.index() >= images.len());
            let mut acc = RatFunc::from_poly(Poly::term(positions, c.clone()));
            for (v, e) in m.iter() {
                if let Var::P(j) = v {
                    if (j as usize) < images.len() {
                        let power = cache
                            .entry((j, e))
                            .or_insert_with(|| images[j as usize].pow(e as u32));
                        acc = &acc * &*power;
                    }
                }
            }
            parts.push(acc);
        }
        let num = RatFunc::sum(&parts);
        &num * &RatFunc::new(Poly::one(), self.den.clone())
    }

    pub fn substitute_param(&self, p: Param, value: &ParamScalar) -> RatFunc {
        RatFunc::new(self.num.substitute_param(p, value), self.den.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> RatFunc {
        RatFunc::new(self.num.map_coeffs(f), self.den.clone())
    }

    pub fn has_momenta(&self) -> bool {
        self.num.has_momenta()
    }

    /// Highest total momentum degree of the numerator.
    pub fn momentum_degree(&self) -> Option<u32> {
        self.num
            .terms()
            .map(|(m, _)| m.iter().filter(|(v, _)| !v.is_position()).map(|(_, e)| e as u32).sum())
            .max()
    }

    pub fn eval_f64(&self, q: &[f64], p: &[f64], params: impl Fn(Param) -> f64 + Copy) -> num_complex::Complex64 {
        let mut d = 1.0;
        for (f, &e) in &self.den {
            d *= f.eval_f64(q).powi(e as i32);
        }
        self.num.eval_f64(q, p, params) / d
    }

    pub fn render(&self, naming: &Naming) -> String {
        let num = self.num.render(naming);
        if self.den.is_empty() {
            return num;
        }
        let num = if self.num.is_sum() { format!("({num})") } else { num };
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(f, &p)| {
                let base = if f.is_compound() {
                    format!("({})", f.render(naming))
                } else {
                    f.render(naming)
                };
                if p == 1 {
                    base
                } else {
                    format!("{base}^{p}")
                }
            })
            .collect();
        let den = if factors.len() == 1 {
            factors[0].clone()
        } else {
            format!("({})", factors.join("*"))
        };
        format!("{num}/{den}")
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Naming::PHASE))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::sum([self, rhs])
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &-rhs
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cancel each numerator against the other side's denominator first;
        // the product of the two reduced pieces is then already reduced.
        let (a_num, b_den) = cancel(&self.num, &rhs.den);
        let (b_num, a_den) = cancel(&rhs.num, &self.den);
        let mut den = a_den;
        for (f, p) in b_den {
            *den.entry(f).or_insert(0) += p;
        }
        RatFunc {
            num: &a_num * &b_num,
            den,
        }
    }
}

fn cancel(num: &Poly, den: &Denominator) -> (Poly, Denominator) {
    let mut num = num.clone();
    let mut out = Denominator::new();
    for (f, &p) in den {
        let mut left = p;
        while left > 0 {
            match num.exact_divide(f) {
                Ok(q) => {
                    num = q;
                    left -= 1;
                }
                Err(_) => break,
            }
        }
        if left > 0 {
            out.insert(f.clone(), left);
        }
    }
    (num, out)
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetric_pair_cancels() {
        let a = RatFunc::inv_difference(0, 1, 1);
        let b = RatFunc::inv_difference(1, 0, 1);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn common_denominator() {
        let s = &RatFunc::inv_difference(0, 1, 1) + &RatFunc::inv_difference(0, 2, 1);
        assert_eq!(s.to_string(), "(2*q1 - q2 - q3)/((q1 - q2)*(q1 - q3))");
    }

    #[test]
    fn quotient_rule() {
        let d = RatFunc::inv_difference(0, 1, 1).partial(Var::Q(0));
        assert_eq!(d, -RatFunc::inv_difference(0, 1, 2));
        assert_eq!(d.to_string(), "-1/(q1 - q2)^2");
    }
}
