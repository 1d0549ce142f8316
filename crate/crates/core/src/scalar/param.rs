//! Polynomials in the symbolic parameters with ℚ(i) coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::monomial::{Param, ParamMono};

/// Element of ℚ(i)[k, c1, c2]; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamScalar(BTreeMap<ParamMono, GaussianRational>);

impl ParamScalar {
    pub fn constant(c: GaussianRational) -> Self {
        Self::term(ParamMono::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn param(p: Param) -> Self {
        Self::term(ParamMono::var(p), GaussianRational::one())
    }

    pub fn k() -> Self {
        Self::param(Param::K)
    }

    pub fn c(j: u8) -> Self {
        Self::param(Param::C(j))
    }

    pub fn term(m: ParamMono, c: GaussianRational) -> Self {
        let mut out = BTreeMap::new();
        if !c.is_zero() {
            out.insert(m, c);
        }
        ParamScalar(out)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ParamMono, &GaussianRational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The value when free of parameters.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.0.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.0.get(&ParamMono::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: &ParamMono, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        if let Some(slot) = self.0.get_mut(m) {
            *slot += c;
            if slot.is_zero() {
                self.0.remove(m);
            }
        } else {
            self.0.insert(m.clone(), c.clone());
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.0 {
            self.add_term(m, c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.0 {
            self.add_term(m, &-c);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamScalar(self.0.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ParamScalar(self.0.iter().map(|(m, v)| (m.clone(), v.scale(r))).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace parameter `p` by the scalar `value`.
    pub fn substitute(&self, p: Param, value: &ParamScalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            let (rest, e) = m.split_off(p);
            let mut t = Self::term(rest, c.clone());
            if e > 0 {
                t = &t * &value.pow(e as u32);
            }
            out.add_assign_ref(&t);
        }
        out
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.0.keys().flat_map(|m| m.iter().map(|(p, _)| p))
    }

    /// Render as a sum; `wrap` parenthesizes sums of several terms.
    pub(crate) fn render(&self, wrap: bool) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in self.0.iter().rev() {
            let term = if m.is_one() {
                c.render(true)
            } else {
                let mono = m.render(|p| p.name());
                if c.is_one() {
                    mono
                } else if (-c).is_one() {
                    format!("-{mono}")
                } else {
                    format!("{}*{}", c.render(true), mono)
                }
            };
            parts.push(term);
        }
        let mut body = parts[0].clone();
        for p in &parts[1..] {
            if let Some(stripped) = p.strip_prefix('-') {
                body.push_str(" - ");
                body.push_str(stripped);
            } else {
                body.push_str(" + ");
                body.push_str(p);
            }
        }
        if wrap && parts.len() > 1 {
            format!("({body})")
        } else {
            body
        }
    }
}

impl Zero for ParamScalar {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for ParamScalar {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl From<GaussianRational> for ParamScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &rhs.0 {
                out.add_term(&ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> Self {
        ParamScalar(self.0.into_iter().map(|(m, c)| (m, -c)).collect())
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_times_k_minus_one() {
        let k = ParamScalar::k();
        let g = &k * &(&k - &ParamScalar::one());
        assert_eq!(g.to_string(), "k^2 - k");
        let at_two = g.substitute(Param::K, &ParamScalar::integer(2));
        assert_eq!(at_two, ParamScalar::integer(2));
    }

    #[test]
    fn render_wraps_sums_only() {
        let s = &ParamScalar::i() * &ParamScalar::k();
        assert_eq!(s.render(true), "i*k");
        let t = &ParamScalar::c(1) + &ParamScalar::integer(1);
        assert_eq!(t.render(true), "(c1 + 1)");
    }
}
