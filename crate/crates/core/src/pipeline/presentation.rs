use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cohomology::monomials_of_degree;
use crate::error::{Error, Result};
use crate::exactpoly::{Bindings, Monomial, MonomialOrder, Poly, PolyRing, Rational};
use crate::groebner::{buchberger, Budget};
use crate::linalg::Matrix;
use crate::quantum::{q_names, QuantumContext, SolvedProduct};

use super::Solution;

/// Generators (divisors, then `q`s with their weights) and relations
/// `f^C - f^Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumPresentation {
    pub name: String,
    pub ring: Arc<PolyRing>,
    pub ndivisors: usize,
    pub relations: Vec<Poly>,
}

impl QuantumPresentation {
    pub fn new(
        name: impl Into<String>,
        divisors: &[String],
        q_weights: &[u32],
        relations: &[Poly],
    ) -> Result<Self> {
        let ring = presentation_ring(divisors, q_weights)?;
        let relations = relations
            .iter()
            .map(|r| r.embed(&ring))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self {
            name: name.into(),
            ring,
            ndivisors: divisors.len(),
            relations,
        })
    }

    pub fn nq(&self) -> usize {
        self.ring.nvars() - self.ndivisors
    }

    pub fn divisor_names(&self) -> &[String] {
        &self.ring.names()[..self.ndivisors]
    }

    pub fn q_names(&self) -> &[String] {
        &self.ring.names()[self.ndivisors..]
    }

    /// Relations with every `q` set to zero.
    pub fn classical_part(&self) -> Vec<Poly> {
        let zero: Bindings = self
            .q_names()
            .iter()
            .map(|n| (n.clone(), Rational::zero()))
            .collect();
        self.relations.iter().map(|r| r.specialize(&zero)).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "name: {}", self.name).unwrap();
        writeln!(out, "generators: {}", self.divisor_names().join(" ")).unwrap();
        let params: Vec<String> = self
            .q_names()
            .iter()
            .enumerate()
            .map(|(i, n)| format!("{n}={}", self.ring.weight(self.ndivisors + i)))
            .collect();
        writeln!(out, "parameters: {}", params.join(" ")).unwrap();
        for r in &self.relations {
            writeln!(out, "relation: {r}").unwrap();
        }
        out
    }

    /// Reads the format written by [`QuantumPresentation::render`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = String::new();
        let mut divisors: Option<Vec<String>> = None;
        let mut params: Option<Vec<(String, u32)>> = None;
        let mut rels: Vec<(usize, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| Error::Syntax { line: line_no, msg };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| syntax(format!("expected `key: value`, found `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "name" => name = value.to_string(),
                "generators" => {
                    divisors = Some(value.split_whitespace().map(String::from).collect())
                }
                "parameters" => {
                    let mut ps = Vec::new();
                    for item in value.split_whitespace() {
                        let (n, w) = item.split_once('=').ok_or_else(|| {
                            syntax(format!("expected `q=weight`, found `{item}`"))
                        })?;
                        let w: u32 = w.parse().map_err(|_| syntax(format!("bad weight `{w}`")))?;
                        ps.push((n.to_string(), w));
                    }
                    params = Some(ps);
                }
                "relation" => rels.push((line_no, value.to_string())),
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        let divisors = divisors.ok_or(Error::Syntax {
            line: 0,
            msg: "missing `generators` line".into(),
        })?;
        let params = params.unwrap_or_default();
        let ring = PolyRing::new(
            divisors
                .iter()
                .map(|d| (d.clone(), 1))
                .chain(params.iter().cloned()),
            MonomialOrder::DegRevLex,
        )?;
        let relations = rels
            .into_iter()
            .map(|(line, s)| {
                Poly::parse(&s, &ring).map_err(|e| Error::Syntax {
                    line,
                    msg: e.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            name,
            ring,
            ndivisors: divisors.len(),
            relations,
        })
    }
}

fn presentation_ring(divisors: &[String], q_weights: &[u32]) -> Result<Arc<PolyRing>> {
    let vars = divisors.iter().map(|d| (d.clone(), 1)).chain(
        q_names(q_weights.len())
            .into_iter()
            .zip(q_weights.iter().copied()),
    );
    Ok(PolyRing::new(vars, MonomialOrder::DegRevLex)?)
}

/// Quantizes the classical relations. A table `P_T` with quantum value `T`
/// is built for every basis class by increasing degree; each `f^C` is then
/// evaluated with the quantum product and rewritten through the table.
pub fn quantize_presentation(
    ctx: &QuantumContext,
    sol: &Solution,
    budget: Budget,
) -> Result<QuantumPresentation> {
    let ring = ctx.ring();
    let solved = SolvedProduct::new(ctx, &sol.as_map());
    let gens = ring.generator_ring();
    let weights: Vec<u32> = ctx
        .lattice()
        .q_weights()
        .iter()
        .map(|&w| w as u32)
        .collect();
    let pres = presentation_ring(gens.names(), &weights)?;
    let classical = ring.classical_relations()?;
    let cg = buchberger(&classical, gens, budget)?;
    let leading = cg.leading_monomials();

    let mut table: Vec<Option<Poly>> = vec![None; ring.dim()];
    table[0] = Some(Poly::one(&pres));
    for (i, &d) in ring.divisors().iter().enumerate() {
        table[d] = Some(pres.gen(i));
    }
    for d in 2..=3 {
        let targets: Vec<usize> = (0..ring.dim()).filter(|&i| ring.codim(i) == d).collect();
        let standard: Vec<Monomial> = monomials_of_degree(gens, d as u32)
            .into_iter()
            .filter(|m| !leading.iter().any(|l| l.divides(m)))
            .collect();
        if standard.len() != targets.len() {
            return Err(Error::NotGenerated);
        }
        let mut rows = vec![Vec::with_capacity(standard.len()); targets.len()];
        for m in &standard {
            let v = ring.evaluate(&Poly::monomial(gens, m.clone(), Rational::one()))?;
            for (row, &t) in rows.iter_mut().zip(&targets) {
                row.push(v[t].clone());
            }
        }
        let inv = Matrix::from_rows(rows)
            .inverse()
            .ok_or(Error::NotGenerated)?;
        for (ti, &t) in targets.iter().enumerate() {
            let rep = Poly::from_terms(
                &pres,
                // the divisor variables lead the presentation ring
                standard
                    .iter()
                    .enumerate()
                    .map(|(s, m)| (m.clone(), inv[(s, ti)].clone())),
            );
            let value = solved.evaluate(&rep)?;
            if value[t] != Poly::one(solved.q_ring()) {
                return Err(Error::RewriteDiverged);
            }
            let mut p = rep;
            for (m, c) in value.iter().enumerate() {
                if m == t || c.is_zero() {
                    continue;
                }
                let lower = table[m].as_ref().ok_or(Error::RewriteDiverged)?;
                p = &p - &(&c.embed(&pres)? * lower);
            }
            table[t] = Some(p);
        }
    }

    let mut relations = Vec::with_capacity(classical.len());
    for f in &classical {
        let fc = f.embed(&pres)?;
        let value = solved.evaluate(&fc)?;
        let mut fq = Poly::zero(&pres);
        for (m, c) in value.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let entry = table[m].as_ref().ok_or(Error::RewriteDiverged)?;
            fq = &fq + &(&c.embed(&pres)? * entry);
        }
        relations.push(&fc - &fq);
    }
    Ok(QuantumPresentation {
        name: String::new(),
        ring: pres,
        ndivisors: gens.nvars(),
        relations,
    })
}

/// Per relation: quantum value zero, and classical part equal to `f^C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub vanishes: Vec<bool>,
    pub recovers_classical: Vec<bool>,
}

impl PresentationCheck {
    pub fn passed(&self) -> bool {
        self.vanishes
            .iter()
            .chain(&self.recovers_classical)
            .all(|&b| b)
    }
}

pub fn check_presentation(
    p: &QuantumPresentation,
    solved: &SolvedProduct,
    classical: &[Poly],
) -> Result<PresentationCheck> {
    let mut vanishes = Vec::new();
    for r in &p.relations {
        vanishes.push(solved.evaluate(r)?.iter().all(Poly::is_zero));
    }
    let at_zero = p.classical_part();
    let recovers_classical = if at_zero.len() == classical.len() {
        at_zero
            .iter()
            .zip(classical)
            .map(|(a, f)| f.embed(&p.ring).is_ok_and(|f| *a == f))
            .collect()
    } else {
        vec![false; at_zero.len().max(classical.len())]
    };
    Ok(PresentationCheck {
        vanishes,
        recovers_classical,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Each computed relation reduces to zero modulo the expected ideal.
    pub computed_in_expected: Vec<bool>,
    /// Each expected relation reduces to zero modulo the computed ideal.
    pub expected_in_computed: Vec<bool>,
    /// Same relations up to scaling and order.
    pub syntactic: bool,
}

impl VerifyReport {
    pub fn ideal_equal(&self) -> bool {
        self.computed_in_expected
            .iter()
            .chain(&self.expected_in_computed)
            .all(|&b| b)
    }
}

/// Ideal equality in both directions by normal forms, plus a term-by-term
/// comparison of the monic relations.
pub fn verify_against_expected(
    p: &QuantumPresentation,
    expected: &[Poly],
    budget: Budget,
) -> Result<VerifyReport> {
    let expected: Vec<Poly> = expected
        .iter()
        .map(|e| e.embed(&p.ring))
        .collect::<std::result::Result<_, _>>()?;
    let gc = buchberger(&p.relations, &p.ring, budget)?;
    let ge = buchberger(&expected, &p.ring, budget)?;
    let computed_in_expected = p.relations.iter().map(|r| ge.contains(r)).collect();
    let expected_in_computed = expected.iter().map(|e| gc.contains(e)).collect();
    let canon = |rs: &[Poly]| {
        let mut v: Vec<String> = rs.iter().map(|r| r.monic().to_string()).collect();
        v.sort();
        v
    };
    Ok(VerifyReport {
        computed_in_expected,
        expected_in_computed,
        syntactic: canon(&p.relations) == canon(&expected),
    })
}
