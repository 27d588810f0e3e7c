//! Buchberger completion, normal forms, Hilbert invariants and
//! zero-dimensional solving.

mod hilbert;
mod solve;
pub mod univariate;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, MonomialOrder, Poly, PolyRing};

pub use hilbert::{hilbert_analysis, hilbert_numerator, standard_monomials, HilbertData};
pub use solve::{solve_zero_dim, Point};

/// Default cap on reduction steps for one completion.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Step budget for a completion. One step is one term cancellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            limit: DEFAULT_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { limit }
    }

    /// `QH_BUDGET` if set and numeric, else the default.
    pub fn from_env() -> Self {
        std::env::var("QH_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Self::new)
            .unwrap_or_default()
    }
}

struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Reduced Groebner basis, monic, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    polys: Vec<Poly>,
    steps: u64,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Reduction steps spent building the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let p = p
            .embed(&self.ring)
            .expect("polynomial outside the basis ring");
        let refs: Vec<&Poly> = self.polys.iter().collect();
        let mut c = Counter {
            used: 0,
            limit: u64::MAX,
        };
        reduce(&p, &refs, &mut c).expect("unbounded reduction")
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Checks Buchberger's criterion directly: every S-polynomial reduces
    /// to zero.
    pub fn satisfies_s_criterion(&self) -> bool {
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                if !self
                    .normal_form(&s_polynomial(&self.polys[i], &self.polys[j]))
                    .is_zero()
                {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the basis is reduced: monic, and no term of any element is
    /// divisible by another element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.polys.iter().enumerate().all(|(i, p)| {
            p.leading_coeff().is_some_and(num_traits::One::is_one)
                && p.terms().iter().all(|(m, _)| {
                    lms.iter()
                        .enumerate()
                        .all(|(j, lm)| j == i || !lm.divides(m))
                })
        })
    }
}

pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &cf.recip());
    let b = g.mul_term(&l.div(mg).unwrap(), &cg.recip());
    &a - &b
}

/// Full reduction of `p` by monic divisors.
fn reduce(p: &Poly, divisors: &[&Poly], counter: &mut Counter) -> Result<Poly> {
    let mut p = p.clone();
    let mut i = 0;
    while i < p.len() {
        let (m, c) = &p.terms()[i];
        let hit = divisors.iter().find_map(|g| {
            let lm = g.leading_monomial().unwrap();
            m.div(lm).map(|q| (q, *g))
        });
        match hit {
            Some((q, g)) => {
                counter.tick()?;
                let c = c / g.leading_coeff().unwrap();
                p = p.sub_mul_term(&c, &q, g);
            }
            None => i += 1,
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u64,
    j: usize,
    i: usize,
}

fn lcm_degree(ring: &PolyRing, m: &Monomial) -> u64 {
    m.weighted_degree(ring.weights())
}

/// Reduced Groebner basis of the ideal generated by `gens`, computed in
/// `ring` (whose order is used). Pairs are processed by increasing lcm
/// degree, ties by pair index; useless pairs are dropped with the
/// Gebauer-Moeller criteria.
pub fn buchberger(gens: &[Poly], ring: &Arc<PolyRing>, budget: Budget) -> Result<GroebnerBasis> {
    let mut counter = Counter {
        used: 0,
        limit: budget.limit,
    };
    let mut basis: Vec<Poly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();

    let mut inputs: Vec<Poly> = gens
        .iter()
        .map(|g| g.embed(ring))
        .collect::<std::result::Result<_, _>>()?;
    inputs.retain(|g| !g.is_zero());
    inputs.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut queue: std::collections::VecDeque<Poly> = inputs.into();
    loop {
        let h = if let Some(f) = queue.pop_front() {
            f
        } else if let Some(pair) = pairs.pop_first() {
            s_polynomial(&basis[pair.i], &basis[pair.j])
        } else {
            break;
        };
        let divisors: Vec<&Poly> = basis
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        let h = reduce(&h, &divisors, &mut counter)?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                polys: vec![Poly::one(ring)],
                steps: counter.used,
            });
        }
        update(ring, &mut basis, &mut active, &mut pairs, h);
    }

    let polys = interreduce(ring, &basis, &active, &mut counter)?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        polys,
        steps: counter.used,
    })
}

fn update(
    ring: &Arc<PolyRing>,
    basis: &mut Vec<Poly>,
    active: &mut Vec<bool>,
    pairs: &mut BTreeSet<Pair>,
    h: Poly,
) {
    let t = basis.len();
    let lh = h.leading_monomial().unwrap().clone();
    let lm = |k: usize| basis[k].leading_monomial().unwrap();

    // New pairs (i, t) for active i, pruned by the chain criterion among
    // themselves.
    let cands: Vec<(usize, Monomial)> = (0..t)
        .filter(|&i| active[i])
        .map(|i| (i, lm(i).lcm(&lh)))
        .collect();
    let mut keep: Vec<bool> = vec![true; cands.len()];
    for a in 0..cands.len() {
        let coprime = lm(cands[a].0).is_coprime(&lh);
        if coprime {
            continue;
        }
        let dominated = cands.iter().enumerate().any(|(b, (_, lb))| {
            b != a && keep[b] && lb.divides(&cands[a].1) && (*lb != cands[a].1 || b < a)
        });
        if dominated {
            keep[a] = false;
        }
    }
    // Drop pairs with coprime leading monomials (first criterion), but only
    // after they were used to prune others.
    let new_pairs: Vec<Pair> = cands
        .iter()
        .zip(&keep)
        .filter(|((i, _), k)| **k && !lm(*i).is_coprime(&lh))
        .map(|((i, l), _)| Pair {
            degree: lcm_degree(ring, l),
            j: t,
            i: *i,
        })
        .collect();

    // Old pairs (i, j) made redundant by h.
    pairs.retain(|p| {
        let lij = lm(p.i).lcm(lm(p.j));
        !(lh.divides(&lij) && lm(p.i).lcm(&lh) != lij && lm(p.j).lcm(&lh) != lij)
    });
    pairs.extend(new_pairs);

    for (i, a) in active.iter_mut().enumerate().take(t) {
        if *a && lh.divides(lm(i)) {
            *a = false;
        }
    }
    basis.push(h);
    active.push(true);
}

fn interreduce(
    ring: &Arc<PolyRing>,
    basis: &[Poly],
    active: &[bool],
    counter: &mut Counter,
) -> Result<Vec<Poly>> {
    let mut gs: Vec<Poly> = basis
        .iter()
        .zip(active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p.clone())
        .collect();
    gs.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    // Minimal basis: no leading monomial divides another.
    let lms: Vec<Monomial> = gs
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    let minimal: Vec<Poly> = gs
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !lms.iter()
                .enumerate()
                .any(|(j, l)| j != *i && l.divides(&lms[*i]) && (l != &lms[*i] || j < *i))
        })
        .map(|(_, g)| g.clone())
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<&Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let lt = Poly::monomial(
            ring,
            g.leading_monomial().unwrap().clone(),
            g.leading_coeff().unwrap().clone(),
        );
        let tail = g - &lt;
        let tail = reduce(&tail, &others, counter)?;
        out.push((&lt + &tail).monic());
    }
    Ok(out)
}

/// Convenience: basis in a copy of the generators' ring with `order`.
pub fn groebner(gens: &[Poly], order: MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    let base = gens
        .first()
        .map(|g| g.ring().clone())
        .unwrap_or_else(|| PolyRing::unit(Vec::<String>::new()));
    let mut ring = base;
    for g in gens.iter().skip(1) {
        ring = PolyRing::union(&ring, g.ring())?;
    }
    buchberger(gens, &ring.with_order(order), budget)
}

/// `normal_form(p, G)` as a free function.
pub fn normal_form(p: &Poly, g: &GroebnerBasis) -> Poly {
    g.normal_form(p)
}

/// Whether every element of `a` lies in the ideal of `b`'s basis.
pub fn ideal_contains_all(g: &GroebnerBasis, polys: &[Poly]) -> bool {
    polys.iter().all(|p| g.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn polys(ring: &Arc<PolyRing>, src: &[&str]) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(s, ring).unwrap()).collect()
    }

    #[test]
    fn single_variable_and_unit() {
        let r = PolyRing::unit(["x", "y"]);
        let g = buchberger(&polys(&r, &["x"]), &r, Budget::default()).unwrap();
        assert_eq!(g.polys(), polys(&r, &["x"]));
        let g = buchberger(&polys(&r, &["1", "x^2 + y"]), &r, Budget::default()).unwrap();
        assert!(g.is_unit());
    }

    #[test]
    fn lex_example_by_hand() {
        // x^2 + y^2 - 1, xy under lex x > y:
        // S(f, g) = y f - x g = y^3 - y, so the basis is {x^2 + y^2 - 1, xy, y^3 - y}.
        let r = PolyRing::unit(["x", "y"]).with_order(MonomialOrder::Lex);
        let g = buchberger(&polys(&r, &["x^2 + y^2 - 1", "x*y"]), &r, Budget::default()).unwrap();
        let rendered: Vec<String> = g.polys().iter().map(ToString::to_string).collect();
        assert_eq!(rendered, ["y^3 - y", "x*y", "x^2 + y^2 - 1"]);
        assert!(g.satisfies_s_criterion());
        assert!(g.is_reduced());
    }

    #[test]
    fn normal_forms() {
        let r = PolyRing::unit(["x", "y"]);
        let g = buchberger(&polys(&r, &["x"]), &r, Budget::default()).unwrap();
        assert!(g.normal_form(&parse_poly("x^2", &r).unwrap()).is_zero());
        let p = parse_poly("y + 1", &r).unwrap();
        assert_eq!(g.normal_form(&p), p);
    }

    #[test]
    fn budget_is_enforced() {
        let r = PolyRing::unit(["x", "y", "z"]);
        let gens = polys(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
        let err = buchberger(&gens, &r, Budget::new(3)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 3 });
    }
}
