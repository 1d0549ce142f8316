//! JSON encoding of polynomials and rational functions.
//!
//! Rationals travel as strings (`"-3/4"`) so arbitrary precision survives.
//! Terms are listed in descending graded-lex order, matching the text rendering.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::gaussian::GaussianRational;
use super::linear_form::LinearForm;
use super::monomial::{Monomial, Naming, Param, ParamMono, Var};
use super::param::ParamScalar;
use super::poly::Poly;
use super::ratfunc::{Denominator, RatFunc};

#[derive(Serialize, Deserialize)]
struct ScalarTerm {
    params: BTreeMap<String, u16>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct PolyTerm {
    exponents: Vec<u16>,
    coeff: Vec<ScalarTerm>,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    variables: Vec<String>,
    terms: Vec<PolyTerm>,
}

#[derive(Serialize, Deserialize)]
struct Factor {
    form: Vec<i64>,
    power: u32,
}

#[derive(Serialize, Deserialize)]
struct RatFuncWire {
    numerator: PolyWire,
    denominator: Vec<Factor>,
}

fn scalar_to_wire(s: &ParamScalar) -> Vec<ScalarTerm> {
    s.terms()
        .rev()
        .map(|(m, c)| ScalarTerm {
            params: m.iter().map(|(p, e)| (p.name(), e)).collect(),
            re: c.re().to_string(),
            im: c.im().to_string(),
        })
        .collect()
}

fn scalar_from_wire(w: Vec<ScalarTerm>) -> Result<ParamScalar, String> {
    let mut out = ParamScalar::default();
    for t in w {
        let mut pairs = Vec::new();
        for (name, e) in t.params {
            pairs.push((Param::parse(&name).ok_or(format!("unknown parameter {name:?}"))?, e));
        }
        let re: BigRational = t.re.parse().map_err(|_| format!("bad rational {:?}", t.re))?;
        let im: BigRational = t.im.parse().map_err(|_| format!("bad rational {:?}", t.im))?;
        out.add_term(&ParamMono::from_pairs(pairs), &GaussianRational::new(re, im));
    }
    Ok(out)
}

fn poly_to_wire(p: &Poly) -> PolyWire {
    let vars = p.variables();
    PolyWire {
        variables: vars.iter().map(|v| v.render(&Naming::PHASE)).collect(),
        terms: p
            .terms()
            .rev()
            .map(|(m, c)| PolyTerm {
                exponents: vars.iter().map(|v| m.exponent(*v)).collect(),
                coeff: scalar_to_wire(c),
            })
            .collect(),
    }
}

fn poly_from_wire(w: PolyWire) -> Result<Poly, String> {
    let vars: Vec<Var> = w
        .variables
        .iter()
        .map(|name| Var::parse(name, &Naming::PHASE).ok_or(format!("unknown variable {name:?}")))
        .collect::<Result<_, _>>()?;
    let mut out = Poly::default();
    for t in w.terms {
        if t.exponents.len() != vars.len() {
            return Err("exponent vector length does not match variables".into());
        }
        let m = Monomial::from_pairs(vars.iter().copied().zip(t.exponents));
        out.add_term(&m, &scalar_from_wire(t.coeff)?);
    }
    Ok(out)
}

impl Serialize for ParamScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        scalar_to_wire(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        scalar_from_wire(Vec::deserialize(d)?).map_err(de::Error::custom)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        poly_to_wire(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        poly_from_wire(PolyWire::deserialize(d)?).map_err(de::Error::custom)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncWire {
            numerator: poly_to_wire(self.numerator()),
            denominator: self
                .denominator()
                .iter()
                .map(|(f, &power)| Factor {
                    form: f.coeffs().to_vec(),
                    power,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RatFuncWire::deserialize(d)?;
        let num = poly_from_wire(w.numerator).map_err(de::Error::custom)?;
        let mut den = Denominator::new();
        for f in w.denominator {
            let (form, scale) = LinearForm::canonical(&f.form).ok_or_else(|| de::Error::custom("zero linear form"))?;
            if scale != 1 {
                return Err(de::Error::custom("denominator form is not canonical"));
            }
            *den.entry(form).or_insert(0) += f.power;
        }
        Ok(RatFunc::new(num, den))
    }
}
