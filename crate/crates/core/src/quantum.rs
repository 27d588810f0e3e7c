//! Small quantum product with unknown invariants and the associativity ideal.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::cohomology::{build_blowup_ring, BasisClass, CohomologyRing, CurveClassLattice};
use crate::descriptor::ThreefoldDescriptor;
use crate::error::{Error, Result};
use crate::exactpoly::{Bindings, Monomial, MonomialOrder, Poly, PolyRing, Rational};
use crate::exec::Execution;
use crate::gwsymbols::{candidate_symbols, normalize, EssentialSet, InvariantSymbol, Normalized};

/// Anticanonical degree bound for the classes entering the product.
pub const CLASS_BOUND: i64 = 6;

/// Element of `H^*(X)[q, x]`: one coefficient polynomial per basis class.
pub type QuantumElement = Vec<Poly>;

/// Expansion context: cohomology, curve classes and the basis product table
/// with every grading-consistent invariant as a formal unknown.
#[derive(Debug, Clone)]
pub struct QuantumContext {
    ring: CohomologyRing,
    lattice: CurveClassLattice,
    classes: Vec<Vec<u32>>,
    candidates: Vec<InvariantSymbol>,
    poly_ring: Arc<PolyRing>,
    table: Vec<Vec<QuantumElement>>,
}

/// Origin of an associativity generator: the triple `(i, j, k)` of divisor
/// positions (1-based), the basis class and the q-exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub triple: (usize, usize, usize),
    pub class: BasisClass,
    pub q: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct AssociativityIdeal {
    pub essential: EssentialSet,
    /// Ring `x1..xN`, all weights 1, degrevlex.
    pub x_ring: Arc<PolyRing>,
    pub generators: Vec<Poly>,
    pub provenance: Vec<Provenance>,
}

pub fn q_names(p: usize) -> Vec<String> {
    (0..p).map(|i| format!("q{i}")).collect()
}

impl QuantumContext {
    pub fn new(desc: &ThreefoldDescriptor) -> Result<Self> {
        let (ring, lattice) = build_blowup_ring(desc)?;
        Self::from_parts(ring, lattice)
    }

    pub fn from_parts(ring: CohomologyRing, lattice: CurveClassLattice) -> Result<Self> {
        let classes = lattice.enumerate_classes(CLASS_BOUND);
        let candidates = candidate_symbols(&ring, &lattice, &classes);
        let weights = lattice.q_weights();
        let vars = q_names(lattice.rank())
            .into_iter()
            .zip(weights.iter().map(|&w| w as u32))
            .chain((0..candidates.len()).map(|i| (format!("y{i}"), 1)));
        let poly_ring = PolyRing::new(vars, MonomialOrder::DegRevLex)?;
        let index: HashMap<&InvariantSymbol, usize> =
            candidates.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let p = lattice.rank();
        let n = ring.dim();

        let mut table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in a..n {
                let mut acc: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
                for (l, c) in ring.cup_basis(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        acc[l].push((Monomial::one(), c.clone()));
                    }
                }
                let basis = ring.basis();
                for class in &classes {
                    let qm = Monomial::from_pairs(class.iter().enumerate().map(|(i, &e)| (i, e)));
                    for l in 0..n {
                        let ins = [basis[a], basis[b], basis[l]];
                        let Normalized::Symbol(coef, sym) =
                            normalize(&ring, &lattice, class, &ins)?
                        else {
                            continue;
                        };
                        let y = index[&sym];
                        let m = qm.mul(&Monomial::var(p + y, 1));
                        for (t, d) in ring.dual(l).iter().enumerate() {
                            if !d.is_zero() {
                                acc[t].push((m.clone(), &coef * d));
                            }
                        }
                    }
                }
                let elem: QuantumElement = acc
                    .into_iter()
                    .map(|terms| Poly::from_terms(&poly_ring, terms))
                    .collect();
                table[b][a] = elem.clone();
                table[a][b] = elem;
            }
        }
        Ok(Self {
            ring,
            lattice,
            classes,
            candidates,
            poly_ring,
            table,
        })
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.ring
    }

    pub fn lattice(&self) -> &CurveClassLattice {
        &self.lattice
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn candidates(&self) -> &[InvariantSymbol] {
        &self.candidates
    }

    /// Ring of `q0..` followed by one unknown `y<i>` per candidate symbol.
    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.poly_ring
    }

    pub fn nq(&self) -> usize {
        self.lattice.rank()
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &QuantumElement {
        &self.table[a][b]
    }

    pub fn basis_element(&self, i: usize) -> QuantumElement {
        element_from_vector(&self.poly_ring, &self.ring.unit_vector(i))
    }

    pub fn qmul(&self, a: &QuantumElement, b: &QuantumElement) -> QuantumElement {
        qmul_with(&self.table, &self.poly_ring, a, b)
    }

    /// Product table with unknowns replaced by values. Unknowns without a
    /// value are left in place; [`SolvedProduct`] rejects them on use.
    pub fn specialize_table(
        &self,
        values: &HashMap<InvariantSymbol, Rational>,
    ) -> Vec<Vec<QuantumElement>> {
        let p = self.nq();
        let mut bindings = Bindings::new();
        for (i, s) in self.candidates.iter().enumerate() {
            if let Some(v) = values.get(s) {
                bindings.insert(self.poly_ring.name(p + i).to_string(), v.clone());
            }
        }
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.iter().map(|c| c.specialize(&bindings)).collect())
                    .collect()
            })
            .collect()
    }

    /// Expands every non-diagonal divisor triple and collects the
    /// coefficient of each (basis class, q-monomial).
    pub fn associativity_system(&self, exec: Execution) -> Result<AssociativityIdeal> {
        let divisors = self.ring.divisors();
        let mut triples = Vec::new();
        for i in 0..divisors.len() {
            for j in i..divisors.len() {
                for k in j..divisors.len() {
                    if !(i == j && j == k) {
                        triples.push((i, j, k));
                    }
                }
            }
        }
        let p = self.nq();
        let is_q = |v: usize| v < p;
        let expansions = exec.map(&triples, |&(i, j, k)| {
            let (ti, tj, tk) = (divisors[i], divisors[j], divisors[k]);
            let left = self.qmul(&self.table[ti][tj], &self.basis_element(tk));
            let right = self.qmul(&self.basis_element(ti), &self.table[tj][tk]);
            let mut occurring = BTreeSet::new();
            let mut gens = Vec::new();
            for l in 0..self.ring.dim() {
                occurring.extend(left[l].variables().into_iter().filter(|&v| !is_q(v)));
                occurring.extend(right[l].variables().into_iter().filter(|&v| !is_q(v)));
                let diff = &left[l] - &right[l];
                for (qm, coef) in diff.coefficients_by(is_q) {
                    if coef.is_zero() {
                        continue;
                    }
                    let q: Vec<u32> = (0..p).map(|v| qm.exponent(v)).collect();
                    gens.push((coef, l, q));
                }
            }
            (occurring, gens)
        });

        let mut occurring = BTreeSet::new();
        for (occ, _) in &expansions {
            occurring.extend(occ.iter().copied());
        }
        let essential = EssentialSet::from_symbols(
            &self.lattice,
            occurring.iter().map(|&v| self.candidates[v - p].clone()),
        );
        let x_ring = PolyRing::unit(essential.var_names());
        let map: Vec<Option<usize>> = (0..self.poly_ring.nvars())
            .map(|v| {
                if is_q(v) {
                    None
                } else {
                    essential.position(&self.candidates[v - p])
                }
            })
            .collect();

        let mut generators = Vec::new();
        let mut provenance = Vec::new();
        let mut seen = HashSet::new();
        for (&(i, j, k), (_, gens)) in triples.iter().zip(expansions) {
            for (coef, l, q) in gens {
                let g = coef.remap(&x_ring, &map)?.monic();
                if seen.insert(g.to_string()) {
                    generators.push(g);
                    provenance.push(Provenance {
                        triple: (i + 1, j + 1, k + 1),
                        class: self.ring.basis()[l],
                        q,
                    });
                }
            }
        }
        Ok(AssociativityIdeal {
            essential,
            x_ring,
            generators,
            provenance,
        })
    }
}

pub fn element_from_vector(ring: &Arc<PolyRing>, v: &[Rational]) -> QuantumElement {
    v.iter().map(|c| Poly::constant(ring, c.clone())).collect()
}

pub fn qmul_with(
    table: &[Vec<QuantumElement>],
    ring: &Arc<PolyRing>,
    a: &QuantumElement,
    b: &QuantumElement,
) -> QuantumElement {
    let n = a.len();
    let mut out = vec![Poly::zero(ring); n];
    for (i, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let cab = ca * cb;
            for (l, t) in table[i][j].iter().enumerate() {
                if !t.is_zero() {
                    out[l] = &out[l] + &(&cab * t);
                }
            }
        }
    }
    out
}

/// Quantum product with numeric invariants, coefficients in `q` only.
#[derive(Debug, Clone)]
pub struct SolvedProduct {
    ring: CohomologyRing,
    q_ring: Arc<PolyRing>,
    table: Vec<Vec<Result<QuantumElement>>>,
}

impl SolvedProduct {
    pub fn new(ctx: &QuantumContext, values: &HashMap<InvariantSymbol, Rational>) -> Self {
        let weights = ctx.lattice.q_weights();
        let q_ring = PolyRing::new(
            q_names(ctx.nq())
                .into_iter()
                .zip(weights.iter().map(|&w| w as u32)),
            MonomialOrder::DegRevLex,
        )
        .expect("distinct q names");
        let p = ctx.nq();
        let map: Vec<Option<usize>> = (0..ctx.poly_ring.nvars())
            .map(|v| (v < p).then_some(v))
            .collect();
        let table = ctx
            .specialize_table(values)
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        e.iter()
                            .map(|c| {
                                c.remap(&q_ring, &map).map_err(|err| match err {
                                    crate::exactpoly::PolyError::UnknownVariable(v) => {
                                        let i: usize = v[1..].parse().unwrap();
                                        Error::UnknownSymbol(ctx.candidates[i].render(&ctx.lattice))
                                    }
                                    other => other.into(),
                                })
                            })
                            .collect::<Result<QuantumElement>>()
                    })
                    .collect()
            })
            .collect();
        Self {
            ring: ctx.ring.clone(),
            q_ring,
            table,
        }
    }

    pub fn q_ring(&self) -> &Arc<PolyRing> {
        &self.q_ring
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.ring
    }

    pub fn basis_element(&self, i: usize) -> QuantumElement {
        element_from_vector(&self.q_ring, &self.ring.unit_vector(i))
    }

    pub fn qmul(&self, a: &QuantumElement, b: &QuantumElement) -> Result<QuantumElement> {
        let n = a.len();
        let mut out = vec![Poly::zero(&self.q_ring); n];
        for (i, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let entry = self.table[i][j].as_ref().map_err(Clone::clone)?;
                let cab = ca * cb;
                for (l, t) in entry.iter().enumerate() {
                    if !t.is_zero() {
                        out[l] = &out[l] + &(&cab * t);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Quantum evaluation of a polynomial in divisor generators and `q`s.
    /// Variables are matched by name: divisor names of the cohomology ring,
    /// `q0..` for the parameters.
    pub fn evaluate(&self, f: &Poly) -> Result<QuantumElement> {
        let gens = self.ring.generator_ring();
        let divisors = self.ring.divisors();
        let src = f.ring();
        enum Var {
            Divisor(usize),
            Q(usize),
        }
        let mut kinds = Vec::with_capacity(src.nvars());
        for name in src.names() {
            if let Some(i) = gens.var_index(name) {
                kinds.push(Var::Divisor(divisors[i]));
            } else if let Some(i) = self.q_ring.var_index(name) {
                kinds.push(Var::Q(i));
            } else {
                return Err(crate::exactpoly::PolyError::UnknownVariable(name.clone()).into());
            }
        }
        let n = self.ring.dim();
        let mut out = vec![Poly::zero(&self.q_ring); n];
        let mut cache: HashMap<Monomial, QuantumElement> = HashMap::new();
        for (m, c) in f.terms() {
            let mut dpart = Vec::new();
            let mut qpart = Vec::new();
            for (v, e) in m.iter() {
                match kinds[v] {
                    Var::Divisor(b) => dpart.push((b, e)),
                    Var::Q(i) => qpart.push((i, e)),
                }
            }
            let key = Monomial::from_pairs(dpart.iter().copied());
            let val = match cache.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let mut v = self.basis_element(0);
                    for &(b, e) in &dpart {
                        for _ in 0..e {
                            v = self.qmul(&v, &self.basis_element(b))?;
                        }
                    }
                    cache.insert(key, v.clone());
                    v
                }
            };
            let qm = Monomial::from_pairs(qpart);
            for (o, x) in out.iter_mut().zip(&val) {
                if !x.is_zero() {
                    *o = &*o + &x.mul_term(&qm, c);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::{Ambient, ClassExpr};

    fn ctx(amb: Ambient, degs: &[u32], basis: Vec<ClassExpr>) -> QuantumContext {
        let ring = CohomologyRing::new(amb, degs);
        let lat = CurveClassLattice::new(amb, basis).unwrap();
        QuantumContext::from_parts(ring, lat).unwrap()
    }

    fn m2_30() -> QuantumContext {
        ctx(
            Ambient::P3,
            &[2],
            vec![
                ClassExpr { l0: 1, f: vec![-2] },
                ClassExpr { l0: 0, f: vec![1] },
            ],
        )
    }

    #[test]
    fn m2_30_has_fourteen_unknowns() {
        let c = m2_30();
        let sys = c.associativity_system(Execution::Sequential).unwrap();
        assert_eq!(sys.essential.len(), 14);
        assert!(sys
            .generators
            .iter()
            .all(|g| g.total_degree().unwrap() <= 2));
    }

    #[test]
    fn one_is_identity() {
        let c = m2_30();
        for i in 0..c.ring().dim() {
            let e = c.basis_element(i);
            assert_eq!(c.qmul(&c.basis_element(0), &e), e);
        }
    }
}
