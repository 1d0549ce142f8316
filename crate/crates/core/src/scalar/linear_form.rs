//! Canonical linear forms in the position variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::monomial::{Monomial, Naming, Var};
use super::param::ParamScalar;
use super::poly::Poly;

/// `Σ a_j x_j` with integer coefficients of content 1 and a positive first
/// nonzero coefficient. Trailing zero coefficients are not stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearForm(SmallVec<[i64; 4]>);

impl LinearForm {
    /// Canonical form of the given coefficients; `None` if all vanish.
    pub fn new(coeffs: &[i64]) -> Option<LinearForm> {
        Self::canonical(coeffs).map(|(f, _)| f)
    }

    /// Canonical form together with the factor `s` such that `coeffs = s · form`.
    pub fn canonical(coeffs: &[i64]) -> Option<(LinearForm, i64)> {
        let first = coeffs.iter().copied().find(|c| *c != 0)?;
        let g = coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
        let s = if first < 0 { -g } else { g };
        let mut v: SmallVec<[i64; 4]> = coeffs.iter().map(|c| c / s).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Some((LinearForm(v), s))
    }

    /// Canonical form of rational coefficients with the factor `s` such that
    /// `coeffs = s · form`.
    pub fn from_rationals(coeffs: &[BigRational]) -> Option<(LinearForm, BigRational)> {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let first = ints.iter().find(|c| !c.is_zero())?.clone();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if first.is_negative() {
            g = -g;
        }
        let small: Option<Vec<i64>> = ints.iter().map(|c| (c / &g).to_i64()).collect();
        let mut v: SmallVec<[i64; 4]> = small.expect("linear form coefficient overflow").into_iter().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Some((LinearForm(v), BigRational::new(g, lcm)))
    }

    /// `q_r − q_s` in canonical orientation, with the sign `±1` it was flipped by.
    pub fn difference(r: usize, s: usize) -> (LinearForm, i64) {
        assert_ne!(r, s, "difference of a variable with itself");
        let mut c = vec![0i64; r.max(s) + 1];
        c[r] = 1;
        c[s] = -1;
        Self::canonical(&c).expect("nonzero")
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, j: usize) -> i64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// Index and value of the first nonzero coefficient.
    pub fn pivot(&self) -> (usize, i64) {
        self.0
            .iter()
            .enumerate()
            .find(|(_, c)| **c != 0)
            .map(|(j, c)| (j, *c))
            .expect("linear forms are nonzero")
    }

    pub fn to_poly(&self) -> Poly {
        self.to_poly_filtered(usize::MAX)
    }

    /// The form with the coordinate `skip` dropped.
    pub(crate) fn to_poly_without(&self, skip: usize) -> Poly {
        self.to_poly_filtered(skip)
    }

    fn to_poly_filtered(&self, skip: usize) -> Poly {
        Poly::from_terms(
            self.0
                .iter()
                .enumerate()
                .filter(|(j, c)| *j != skip && **c != 0)
                .map(|(j, &c)| (Monomial::var(Var::Q(j as u16)), ParamScalar::integer(c))),
        )
    }

    /// The form `x ↦ self(M x)` for a square matrix given row-major, plus
    /// the scale relating it to its canonical representative.
    pub fn pullback(&self, m: &[Vec<BigRational>]) -> (LinearForm, BigRational) {
        let d = m.len();
        let coeffs: Vec<BigRational> = (0..d)
            .map(|j| {
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .fold(BigRational::zero(), |acc, (i, &c)| {
                        acc + &m[i][j] * BigRational::from_integer(BigInt::from(c))
                    })
            })
            .collect();
        Self::from_rationals(&coeffs).expect("invertible map sends nonzero forms to nonzero forms")
    }

    pub fn eval_f64(&self, q: &[f64]) -> f64 {
        self.0.iter().zip(q).map(|(&c, &x)| c as f64 * x).sum()
    }

    pub fn render(&self, naming: &Naming) -> String {
        let mut out = String::new();
        for (j, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = Var::Q(j as u16).render(naming);
            let mag = c.abs();
            let body = if mag == 1 { name } else { format!("{mag}*{name}") };
            if out.is_empty() {
                out = if c < 0 { format!("-{body}") } else { body };
            } else if c < 0 {
                out.push_str(&format!(" - {body}"));
            } else {
                out.push_str(&format!(" + {body}"));
            }
        }
        out
    }

    /// True if the form involves more than one variable.
    pub(crate) fn is_compound(&self) -> bool {
        self.0.iter().filter(|c| **c != 0).count() > 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_and_content() {
        let (f, s) = LinearForm::canonical(&[-2, 4, 0]).unwrap();
        assert_eq!(f.coeffs(), &[1, -2]);
        assert_eq!(s, -2);
        assert!(LinearForm::new(&[0, 0]).is_none());
        assert_eq!(LinearForm::difference(2, 0), (LinearForm::new(&[1, 0, -1]).unwrap(), -1));
    }

    #[test]
    fn rationals_clear_denominators() {
        let half = BigRational::new(1.into(), 2.into());
        let (f, s) = LinearForm::from_rationals(&[half.clone(), -half.clone()]).unwrap();
        assert_eq!(f.coeffs(), &[1, -1]);
        assert_eq!(s, half);
    }
}
