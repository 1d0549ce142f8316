//! Evaluation modulo a prime, used as a fast exact refutation of divisibility.
//!
//! Reduction mod `P` is a ring homomorphism on the coefficients whose
//! denominators are invertible, so a nonzero value at a point of the
//! hyperplane `f = 0` proves that `f` does not divide the polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::gaussian::GaussianRational;
use super::linear_form::LinearForm;
use super::monomial::{Param, Var};
use super::poly::Poly;

const P: u64 = 998_244_353;
/// A square root of −1 modulo `P` (`3^((P−1)/4)`, 3 being a primitive root).
const I_MOD: u64 = 911_660_635;

fn mul(a: u64, b: u64) -> u64 {
    a * b % P
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    let m = BigInt::from(P);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue fits")
}

fn reduce_int64(n: i64) -> u64 {
    n.rem_euclid(P as i64) as u64
}

fn reduce_rational(r: &BigRational) -> Option<u64> {
    let d = reduce_int(r.denom());
    (d != 0).then(|| mul(reduce_int(r.numer()), inv(d)))
}

fn reduce_gaussian(c: &GaussianRational) -> Option<u64> {
    let re = reduce_rational(c.re())?;
    let im = reduce_rational(c.im())?;
    Some((re + mul(im, I_MOD)) % P)
}

fn sample(tag: u64) -> u64 {
    // splitmix-style scramble for fixed, well-spread sample values
    let mut z = tag.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    (z ^ (z >> 31)) % P
}

fn param_value(p: Param) -> u64 {
    match p {
        Param::K => sample(1_000),
        Param::C(j) => sample(2_000 + j as u64),
    }
}

/// True when `p` certainly does not vanish on the hyperplane `f = 0`.
pub(crate) fn nonzero_on_hyperplane(p: &Poly, f: &LinearForm) -> bool {
    let (pivot, lead) = f.pivot();
    let dims = f.coeffs().len().max(p.variables().iter().map(|v| v.index() + 1).max().unwrap_or(0));
    let mut q: Vec<u64> = (0..dims).map(|j| sample(10 + j as u64)).collect();
    let rest = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != pivot)
        .fold(0u64, |acc, (j, &c)| (acc + mul(reduce_int64(c), q[j])) % P);
    q[pivot] = mul(P - rest % P, inv(reduce_int64(lead)));
    let mut total = 0u64;
    for (m, c) in p.terms() {
        let mut coeff = 0u64;
        for (pm, gc) in c.terms() {
            let Some(v) = reduce_gaussian(gc) else {
                return false;
            };
            let mut t = v;
            for (param, e) in pm.iter() {
                t = mul(t, pow(param_value(param), e as u64));
            }
            coeff = (coeff + t) % P;
        }
        for (var, e) in m.iter() {
            let x = match var {
                Var::Q(j) => q[j as usize],
                Var::P(j) => sample(500 + j as u64),
            };
            coeff = mul(coeff, pow(x, e as u64));
        }
        total = (total + coeff) % P;
    }
    total != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_minus_one() {
        assert_eq!(mul(I_MOD, I_MOD), P - 1);
    }

    #[test]
    fn refutes_only_non_multiples() {
        let f = LinearForm::new(&[1, -1]).unwrap();
        let x = Poly::q(0);
        assert!(nonzero_on_hyperplane(&x, &f));
        let multiple = &(&x + &Poly::p(1)) * &f.to_poly();
        assert!(!nonzero_on_hyperplane(&multiple, &f));
    }
}
