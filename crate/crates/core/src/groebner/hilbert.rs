use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Rational};
use crate::linalg::Matrix;

/// Affine Hilbert invariants of `S/I`, read off the leading-term ideal with
/// every variable of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^n`, ascending.
    pub numerator: Vec<BigInt>,
    /// `N(t) / (1-t)^(n - dimension)`.
    pub h_vector: Vec<BigInt>,
    pub dimension: usize,
    pub degree: u64,
    /// Affine Hilbert polynomial in `s`, ascending coefficients.
    pub polynomial: Vec<Rational>,
    /// Affine Hilbert function: standard monomials of degree at most `s`,
    /// for `s = 0, 1, ..`.
    pub values: Vec<BigInt>,
}

/// Hilbert numerator of `k[x_0..x_{n-1}] / (gens)` for a monomial ideal.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<BigInt> {
    let mut gens = minimalize(gens.to_vec());
    trim(numer(&mut gens))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|d| d.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn numer(gens: &mut [Monomial]) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![BigInt::zero()];
    }
    // Pure powers in variables that occur nowhere else split off as factors.
    let mut factor = vec![BigInt::one()];
    let mut rest = Vec::with_capacity(gens.len());
    for (k, m) in gens.iter().enumerate() {
        let split = m.support_len() == 1 && {
            let (v, _) = m.iter().next().unwrap();
            gens.iter()
                .enumerate()
                .all(|(j, o)| j == k || o.exponent(v) == 0)
        };
        if split {
            factor = mul(&factor, &one_minus_t_pow(m.total_degree() as usize));
        } else {
            rest.push(m.clone());
        }
    }
    if rest.is_empty() {
        return factor;
    }
    // Pivot on the variable occurring in the most generators.
    let mut counts = std::collections::HashMap::new();
    for m in &rest {
        for (v, _) in m.iter() {
            *counts.entry(v).or_insert(0usize) += 1;
        }
    }
    let v = counts
        .into_iter()
        .max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)))
        .unwrap()
        .0;
    let xv = Monomial::var(v, 1);
    let mut plus: Vec<Monomial> = rest
        .iter()
        .filter(|m| m.exponent(v) == 0)
        .cloned()
        .collect();
    plus.push(xv.clone());
    let mut plus = minimalize(plus);
    let mut quot = minimalize(
        rest.iter()
            .map(|m| m.div(&xv).unwrap_or_else(|| m.clone()))
            .collect(),
    );
    let a = numer(&mut plus);
    let b = numer(&mut quot);
    let mut sum = a;
    let shifted: Vec<BigInt> = std::iter::once(BigInt::zero()).chain(b).collect();
    add_into(&mut sum, &shifted);
    mul(&factor, &sum)
}

fn one_minus_t_pow(d: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); d + 1];
    p[0] = BigInt::one();
    p[d] -= BigInt::one();
    p
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(a: &mut Vec<BigInt>, b: &[BigInt]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Divides by `1 - t`, if exact.
fn div_one_minus_t(p: &[BigInt]) -> Option<Vec<BigInt>> {
    if p.iter().fold(BigInt::zero(), |a, b| a + b) != BigInt::zero() {
        return None;
    }
    // p = (1 - t) q  =>  q_k = sum_{i<=k} p_i
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = BigInt::zero();
    for c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc.clone());
    }
    Some(trim(q))
}

fn binomial(n: &Rational, k: usize) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r *= n - Rational::from_integer(BigInt::from(i));
        r /= Rational::from_integer(BigInt::from(i + 1));
    }
    r
}

/// Hilbert invariants of the ideal with reduced basis `g` (degree-compatible
/// order required for the affine interpretation).
pub fn hilbert_analysis(g: &GroebnerBasis) -> Result<HilbertData> {
    if g.is_unit() {
        return Err(Error::Inconsistent);
    }
    let n = g.ring().nvars();
    let numerator = hilbert_numerator(&g.leading_monomials());
    let mut h = numerator.clone();
    let mut e = 0;
    while let Some(q) = div_one_minus_t(&h) {
        h = q;
        e += 1;
    }
    let dimension = n - e;
    let degree_big = h.iter().fold(BigInt::zero(), |a, b| a + b);
    assert!(degree_big.is_positive(), "Hilbert degree must be positive");
    let degree = degree_big.to_u64().expect("degree fits in u64");

    // Affine Hilbert function: coefficients of h(t) / (1-t)^(dimension+1).
    let nvalues = h.len() + dimension + 8;
    let mut values: Vec<BigInt> = (0..nvalues)
        .map(|i| h.get(i).cloned().unwrap_or_default())
        .collect();
    for _ in 0..=dimension {
        for i in 1..values.len() {
            let prev = values[i - 1].clone();
            values[i] += prev;
        }
    }

    // HP(s) = sum_i h_i C(s - i + d, d), interpolated at d+1 points.
    let d = dimension;
    let eval = |s: i64| -> Rational {
        h.iter().enumerate().fold(Rational::zero(), |acc, (i, hi)| {
            let top = Rational::from_integer(BigInt::from(s - i as i64 + d as i64));
            acc + Rational::from_integer(hi.clone()) * binomial(&top, d)
        })
    };
    let start = h.len() as i64;
    let rows: Vec<Vec<Rational>> = (0..=d)
        .map(|j| {
            let s = Rational::from_integer(BigInt::from(start + j as i64));
            (0..=d).map(|k| num_traits::pow(s.clone(), k)).collect()
        })
        .collect();
    let rhs: Vec<Rational> = (0..=d).map(|j| eval(start + j as i64)).collect();
    let polynomial = Matrix::from_rows(rows)
        .solve(&rhs)
        .expect("Vandermonde system is regular");

    Ok(HilbertData {
        numerator,
        h_vector: h,
        dimension,
        degree,
        polynomial,
        values,
    })
}

/// Monomials outside the leading-term ideal of a zero-dimensional basis, in
/// increasing degree and then increasing ring order.
pub fn standard_monomials(g: &GroebnerBasis) -> Vec<Monomial> {
    let lms = g.leading_monomials();
    let n = g.ring().nvars();
    let mut out = vec![Monomial::one()];
    if lms.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let mut frontier = vec![Monomial::one()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..n {
                let c = m.mul(&Monomial::var(v, 1));
                if lms.iter().any(|l| l.divides(&c)) || next.contains(&c) {
                    continue;
                }
                next.push(c);
            }
        }
        next.sort_by(|a, b| g.ring().cmp(a, b));
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
