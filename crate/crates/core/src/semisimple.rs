//! Finite-dimensional quotients at a q-point and the trace-form test.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactpoly::{render_rational, Bindings, Monomial, Poly, PolyRing, Rational};
use crate::exec::Execution;
use crate::groebner::univariate::{self, UPoly};
use crate::groebner::{buchberger, hilbert_analysis, standard_monomials, Budget, GroebnerBasis};
use crate::linalg::Matrix;
use crate::pipeline::QuantumPresentation;

/// Resampling cap for degenerate q-points within one trial.
pub const RETRY_CAP: usize = 10;

/// Quotient by a zero-dimensional ideal, with the standard monomials as basis.
#[derive(Clone, Debug)]
pub struct ArtinianAlgebra {
    basis: GroebnerBasis,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult: Vec<Matrix>,
}

impl ArtinianAlgebra {
    pub fn new(relations: &[Poly], ring: &Arc<PolyRing>, budget: Budget) -> Result<Self> {
        let basis = buchberger(relations, ring, budget)?;
        let h = hilbert_analysis(&basis)?;
        if h.dimension > 0 {
            return Err(Error::NotZeroDimensional { dim: h.dimension });
        }
        let standard = standard_monomials(&basis);
        debug_assert_eq!(standard.len() as u64, h.degree);
        let index = standard
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut a = Self {
            basis,
            standard,
            index,
            mult: Vec::new(),
        };
        a.mult = (0..ring.nvars())
            .map(|v| a.matrix_of(&ring.gen(v)))
            .collect();
        Ok(a)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.basis.ring()
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// Multiplication by the `v`-th generator.
    pub fn multiplication(&self, v: usize) -> &Matrix {
        &self.mult[v]
    }

    /// Coordinates of the class of `p`.
    pub fn coordinates(&self, p: &Poly) -> Vec<Rational> {
        let nf = self.basis.normal_form(p);
        let mut out = vec![Rational::zero(); self.dim()];
        for (m, c) in nf.terms() {
            out[self.index[m]] = c.clone();
        }
        out
    }

    /// Matrix of multiplication by `p`; column `j` holds `p * b_j`.
    pub fn matrix_of(&self, p: &Poly) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (j, b) in self.standard.iter().enumerate() {
            let col = self.coordinates(&p.mul_term(b, &Rational::one()));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    pub fn matrices_commute(&self) -> bool {
        self.mult
            .iter()
            .enumerate()
            .all(|(i, a)| self.mult[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }
}

/// Sets every `q` to the given nonzero value and takes the quotient in the
/// divisor generators.
pub fn specialize_algebra(
    p: &QuantumPresentation,
    qvals: &[Rational],
    budget: Budget,
) -> Result<ArtinianAlgebra> {
    assert_eq!(qvals.len(), p.nq(), "one value per q");
    let mut bindings = Bindings::new();
    for (name, v) in p.q_names().iter().zip(qvals) {
        if v.is_zero() {
            return Err(Error::ZeroSpecialization(name.clone()));
        }
        bindings.insert(name.clone(), v.clone());
    }
    let ring = PolyRing::unit(p.divisor_names().to_vec());
    let map: Vec<Option<usize>> = (0..p.ring.nvars())
        .map(|v| (v < p.ndivisors).then_some(v))
        .collect();
    let rels = p
        .relations
        .iter()
        .map(|r| r.specialize(&bindings).remap(&ring, &map))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ArtinianAlgebra::new(&rels, &ring, budget)
}

/// Gram matrix of `(u, v) -> trace(u v)` on the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm {
    pub gram: Matrix,
    pub det: Rational,
}

impl TraceForm {
    pub fn is_nondegenerate(&self) -> bool {
        !self.det.is_zero()
    }
}

/// In characteristic zero the algebra is reduced, hence semisimple, exactly
/// when the trace form is nondegenerate.
pub fn is_semisimple(a: &ArtinianAlgebra) -> TraceForm {
    let ring = a.ring();
    let mats: Vec<Matrix> = a
        .standard
        .iter()
        .map(|m| a.matrix_of(&Poly::monomial(ring, m.clone(), Rational::one())))
        .collect();
    let n = a.dim();
    let mut gram = Matrix::zeros(n, n);
    for u in 0..n {
        for v in u..n {
            let t = mats[u].mul(&mats[v]).trace();
            gram[(v, u)] = t.clone();
            gram[(u, v)] = t;
        }
    }
    let det = gram.det();
    TraceForm { gram, det }
}

/// Minimal polynomial of a matrix, from the Krylov sequence of `e_0`
/// (the unit when the basis starts with 1).
pub fn minimal_polynomial(m: &Matrix) -> UPoly {
    let n = m.rows();
    let mut krylov: Vec<Vec<Rational>> = Vec::new();
    let mut v = vec![Rational::zero(); n];
    v[0] = Rational::one();
    loop {
        if !krylov.is_empty() {
            let cols = Matrix::from_rows(krylov.clone()).transpose();
            if let Some(c) = cols.solve(&v) {
                let mut p: UPoly = c.into_iter().map(|x| -x).collect();
                p.push(Rational::one());
                return p;
            }
        }
        krylov.push(v.clone());
        v = m.mul_vec(&v);
    }
}

/// Independent radical test: a random linear form whose minimal polynomial
/// has degree `dim A` generates the algebra, which is then reduced exactly
/// when that polynomial is squarefree. If no form of full degree turns up,
/// the algebra is reported not reduced.
pub fn radical_test(a: &ArtinianAlgebra, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = a.ring();
    for _ in 0..8 {
        let form = Poly::from_terms(
            ring,
            (0..ring.nvars()).map(|v| {
                (
                    Monomial::var(v, 1),
                    Rational::from_integer(rng.random_range(1..=100).into()),
                )
            }),
        );
        let mp = minimal_polynomial(&a.matrix_of(&form));
        if mp.len() == a.dim() + 1 {
            return univariate::gcd(&mp, &univariate::derivative(&mp)).len() == 1;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Semisimple,
    InconclusiveLikelyNot,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Semisimple => "SEMISIMPLE",
            Verdict::InconclusiveLikelyNot => "INCONCLUSIVE-LIKELY-NOT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub index: u64,
    pub q: Vec<Rational>,
    /// Degenerate samples discarded before `q`.
    pub resampled: usize,
    /// `None` when every sample was degenerate.
    pub dim: Option<usize>,
    pub det: Option<Rational>,
}

impl Trial {
    pub fn semisimple(&self) -> bool {
        self.det.as_ref().is_some_and(|d| !d.is_zero())
    }

    pub fn render(&self, q_names: &[String]) -> String {
        let q: Vec<String> = q_names
            .iter()
            .zip(&self.q)
            .map(|(n, v)| format!("{n}={}", render_rational(v)))
            .collect();
        match (&self.dim, &self.det) {
            (Some(dim), Some(det)) => format!(
                "trial {}: {} dim={} det={} {}",
                self.index,
                q.join(" "),
                dim,
                render_rational(det),
                if self.semisimple() {
                    "semisimple"
                } else {
                    "not semisimple"
                }
            ),
            _ => format!(
                "trial {}: degenerate after {} samples",
                self.index, self.resampled
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimplicityReport {
    pub verdict: Verdict,
    /// Trials up to and including the first semisimple one.
    pub trials: Vec<Trial>,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Random positive rational with numerator and denominator in `1..=1000`.
fn sample_q(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.random_range(1..=1000);
            let den: i64 = rng.random_range(1..=1000);
            Rational::new(num.into(), den.into())
        })
        .collect()
}

pub fn run_trial(p: &QuantumPresentation, seed: u64, index: u64, budget: Budget) -> Result<Trial> {
    let mut rng = trial_rng(seed, index);
    let mut resampled = 0;
    loop {
        let q = sample_q(&mut rng, p.nq());
        match specialize_algebra(p, &q, budget) {
            Ok(a) => {
                let tf = is_semisimple(&a);
                return Ok(Trial {
                    index,
                    q,
                    resampled,
                    dim: Some(a.dim()),
                    det: Some(tf.det),
                });
            }
            Err(Error::NotZeroDimensional { .. } | Error::Inconsistent)
                if resampled < RETRY_CAP =>
            {
                resampled += 1;
            }
            Err(Error::NotZeroDimensional { .. } | Error::Inconsistent) => {
                return Ok(Trial {
                    index,
                    q,
                    resampled,
                    dim: None,
                    det: None,
                });
            }
            Err(e) => return Err(e),
        }
    }
}

/// One semisimple point settles the question; failures only suggest the
/// answer is negative.
pub fn generic_semisimplicity(
    p: &QuantumPresentation,
    trials: u64,
    seed: u64,
    exec: Execution,
    budget: Budget,
) -> Result<SemisimplicityReport> {
    assert!(trials >= 1, "at least one trial");
    let indices: Vec<u64> = (0..trials).collect();
    let results = exec.map(&indices, |&i| run_trial(p, seed, i, budget));
    let mut out = Vec::new();
    for r in results {
        let t = r?;
        let done = t.semisimple();
        out.push(t);
        if done {
            return Ok(SemisimplicityReport {
                verdict: Verdict::Semisimple,
                trials: out,
            });
        }
    }
    Ok(SemisimplicityReport {
        verdict: Verdict::InconclusiveLikelyNot,
        trials: out,
    })
}
