//! Dense univariate polynomials over the rationals (ascending coefficients).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactpoly::{Poly, Rational};

pub type UPoly = Vec<Rational>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Coefficients of `p` in variable `var`, if no other variable occurs.
pub fn from_poly(p: &Poly, var: usize) -> Option<UPoly> {
    let mut out: UPoly = Vec::new();
    for (m, c) in p.terms() {
        if m.support_len() > 1 || (m.support_len() == 1 && m.exponent(var) == 0) {
            return None;
        }
        let e = m.exponent(var) as usize;
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] += c;
    }
    Some(trim(out))
}

pub fn degree(p: &UPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn eval(p: &UPoly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &UPoly) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// `(quotient, remainder)`.
pub fn div_rem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lb;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let v = &c * bc;
            r[shift + i] -= v;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(p: &UPoly) -> UPoly {
    match p.last() {
        Some(l) => p.iter().map(|c| c / l).collect(),
        None => Vec::new(),
    }
}

pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// `p / gcd(p, p')`: same roots, each simple.
pub fn squarefree(p: &UPoly) -> UPoly {
    let g = gcd(p, &derivative(p));
    monic(&div_rem(p, &g).0)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots, ascending; `None` if the coefficients are too
/// large for the rational root search.
pub fn rational_roots(p: &UPoly) -> Option<Vec<Rational>> {
    let p = trim(p.clone());
    if p.is_empty() {
        return None;
    }
    let mut roots = Vec::new();
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(Rational::zero());
    }
    let p: UPoly = p[zeros..].to_vec();
    if p.len() > 1 {
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let a0 = divisors(&ints[0])?;
        let an = divisors(ints.last().unwrap())?;
        for num in &a0 {
            for den in &an {
                for s in [1, -1] {
                    let r = Rational::new(num * s, den.clone());
                    if !roots.contains(&r) && eval(&p, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, ratio};

    fn up(c: &[i64]) -> UPoly {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let p = up(&[2, -3, 0, 1]);
        assert_eq!(squarefree(&p), up(&[-2, 1, 1]));
        assert_eq!(gcd(&p, &up(&[-1, 1])), up(&[-1, 1]));
    }

    #[test]
    fn roots() {
        // 2x^2 - 3x + 1 = (2x - 1)(x - 1)
        assert_eq!(
            rational_roots(&up(&[1, -3, 2])).unwrap(),
            vec![ratio(1, 2).unwrap(), int(1)]
        );
        assert_eq!(
            rational_roots(&up(&[1, 0, 1])).unwrap(),
            Vec::<Rational>::new()
        );
        assert_eq!(rational_roots(&up(&[0, 0, 1])).unwrap(), vec![int(0)]);
    }
}
