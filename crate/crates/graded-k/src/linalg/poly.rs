//! Rational polynomial kernel backing the Perron sign certificate: exact
//! evaluation, division, gcd, squarefree parts, and Sturm root counting.
//!
//! Coefficients are stored ascending; the empty vector is the zero polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub(crate) type RPoly = Vec<BigRational>;

pub(crate) fn normalize(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn from_int_coeffs(c: &[BigInt]) -> RPoly {
    normalize(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
}

pub(crate) fn degree(p: &RPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn eval(p: &RPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn deriv(p: &RPoly) -> RPoly {
    if p.len() <= 1 {
        return vec![];
    }
    normalize(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Euclidean division; the divisor must be nonzero.
pub(crate) fn divmod(num: &RPoly, den: &RPoly) -> (RPoly, RPoly) {
    assert!(!den.is_empty(), "division by the zero polynomial");
    let dn = den.len() - 1;
    let lead = den.last().unwrap().clone();
    let mut rem = normalize(num.clone());
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - dn];
    while rem.len() >= den.len() {
        let k = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        quo[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] = &rem[k + i] - &c * d;
        }
        rem = normalize(rem);
    }
    (normalize(quo), rem)
}

/// Monic gcd of two polynomials.
pub(crate) fn gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let mut x = normalize(a.clone());
    let mut y = normalize(b.clone());
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &l;
        }
    }
    x
}

/// p divided by gcd(p, p'): same roots, all simple.
pub(crate) fn squarefree_part(p: &RPoly) -> RPoly {
    let d = deriv(p);
    if d.is_empty() {
        return normalize(p.clone());
    }
    let g = gcd(p, &d);
    if degree(&g) == Some(0) {
        return normalize(p.clone());
    }
    let (q, r) = divmod(p, &g);
    debug_assert!(r.is_empty());
    q
}

/// Sturm sequence of p. Remainders are rescaled by positive scalars only,
/// which leaves every sign evaluation unchanged.
pub(crate) fn sturm_chain(p: &RPoly) -> Vec<RPoly> {
    let p0 = normalize(p.clone());
    let mut chain = vec![p0.clone()];
    let d = deriv(&p0);
    if d.is_empty() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = divmod(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        let scale = r.last().unwrap().abs();
        chain.push(r.iter().map(|c| -(c / &scale)).collect());
    }
    chain
}

pub(crate) fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(chain: &[RPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let s = sign_of(&eval(p, x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Distinct real roots of the chain's polynomial in (lo, hi].
/// Neither endpoint may be a root of that polynomial.
pub(crate) fn roots_between(chain: &[RPoly], lo: &BigRational, hi: &BigRational) -> usize {
    variations(chain, lo).saturating_sub(variations(chain, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(coeffs: &[i64]) -> RPoly {
        normalize(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn divmod_recombines() {
        let num = poly(&[-6, 1, 7, 2]);
        let den = poly(&[3, 1]);
        let (q, r) = divmod(&num, &den);
        let mut back = r.clone();
        back.resize(num.len(), BigRational::zero());
        for (i, qc) in q.iter().enumerate() {
            for (j, dc) in den.iter().enumerate() {
                back[i + j] = &back[i + j] + qc * dc;
            }
        }
        assert_eq!(normalize(back), num);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+3) share x-1
        let a = poly(&[2, -3, 1]);
        let b = poly(&[-3, 2, 1]);
        let g = gcd(&a, &b);
        assert_eq!(g, poly(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (x-2)^2 -> x-2 up to a constant
        let p = poly(&[4, -4, 1]);
        let s = squarefree_part(&p);
        assert_eq!(degree(&s), Some(1));
        assert!(eval(&s, &rat(2, 1)).is_zero());
    }

    #[test]
    fn sturm_counts_roots_of_quadratic() {
        // x^2 - x - 2 has roots -1 and 2
        let p = poly(&[-2, -1, 1]);
        let chain = sturm_chain(&p);
        assert_eq!(roots_between(&chain, &rat(-3, 1), &rat(3, 1)), 2);
        assert_eq!(roots_between(&chain, &rat(0, 1), &rat(3, 1)), 1);
        assert_eq!(roots_between(&chain, &rat(0, 1), &rat(1, 1)), 0);
        // half-open: the root at 2 is counted by (0, 2]
        assert_eq!(roots_between(&chain, &rat(0, 1), &rat(2, 1)), 1);
    }

    #[test]
    fn sturm_on_irrational_roots() {
        // x^2 - 2
        let p = poly(&[-2, 0, 1]);
        let chain = sturm_chain(&p);
        assert_eq!(roots_between(&chain, &rat(1, 1), &rat(2, 1)), 1);
        assert_eq!(roots_between(&chain, &rat(3, 2), &rat(2, 1)), 0);
        assert_eq!(sign_of(&eval(&p, &rat(1, 1))), -1);
        assert_eq!(sign_of(&eval(&p, &rat(3, 2))), 1);
    }
}
