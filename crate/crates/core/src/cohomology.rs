//! Classical cohomology of a blow-up of P3 or Q3 along one or two disjoint
//! rational curves.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::descriptor::{basis_matrix, Ambient, ClassExpr, ThreefoldDescriptor};
use crate::error::{Error, Result};
use crate::exactpoly::{int, Monomial, Poly, PolyRing, Rational};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisClass {
    One,
    /// Exceptional divisor over curve `j` (1-based).
    E(usize),
    H,
    Rho,
    /// Fiber class of the exceptional divisor `E(j)`.
    Phi(usize),
    Pt,
}

impl BasisClass {
    /// Complex codimension.
    pub fn codim(self) -> usize {
        match self {
            BasisClass::One => 0,
            BasisClass::E(_) | BasisClass::H => 1,
            BasisClass::Rho | BasisClass::Phi(_) => 2,
            BasisClass::Pt => 3,
        }
    }
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisClass::One => f.write_str("1"),
            BasisClass::E(j) => write!(f, "E{j}"),
            BasisClass::H => f.write_str("H"),
            BasisClass::Rho => f.write_str("rho"),
            BasisClass::Phi(j) => write!(f, "phi{j}"),
            BasisClass::Pt => f.write_str("pt"),
        }
    }
}

/// Cup-product table on the basis `1, E1.., H, rho, phi1.., pt`.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    ambient: Ambient,
    degrees: Vec<u32>,
    basis: Vec<BasisClass>,
    table: Vec<Vec<Vec<Rational>>>,
    dual: Vec<Vec<Rational>>,
    anticanonical: Vec<Rational>,
    generators: Arc<PolyRing>,
}

impl CohomologyRing {
    pub fn new(ambient: Ambient, degrees: &[u32]) -> Self {
        let k = degrees.len();
        let mut basis = vec![BasisClass::One];
        basis.extend((1..=k).map(BasisClass::E));
        basis.push(BasisClass::H);
        basis.push(BasisClass::Rho);
        basis.extend((1..=k).map(BasisClass::Phi));
        basis.push(BasisClass::Pt);
        let n = basis.len();
        let idx = |b: BasisClass| basis.iter().position(|&c| c == b).unwrap();

        let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
        for (a, &ca) in basis.iter().enumerate() {
            for (b, &cb) in basis.iter().enumerate() {
                for (c, v) in cup_rule(ambient, degrees, ca, cb) {
                    table[a][b][idx(c)] += int(v);
                }
            }
        }

        let pt = idx(BasisClass::Pt);
        let pairing = Matrix::from_rows(
            (0..n)
                .map(|a| (0..n).map(|b| table[a][b][pt].clone()).collect())
                .collect(),
        );
        let inv = pairing
            .inverse()
            .expect("Poincare pairing of the blow-up is nondegenerate");
        let dual = (0..n).map(|i| inv.row(i).to_vec()).collect();

        let mut anticanonical = vec![Rational::zero(); n];
        anticanonical[idx(BasisClass::H)] = int(ambient.index());
        for j in 1..=k {
            anticanonical[idx(BasisClass::E(j))] = int(-1);
        }

        let names: Vec<String> = if k == 1 {
            vec!["E".into(), "H".into()]
        } else {
            (1..=k)
                .map(|j| format!("E{j}"))
                .chain(std::iter::once("H".to_string()))
                .collect()
        };
        Self {
            ambient,
            degrees: degrees.to_vec(),
            basis,
            table,
            dual,
            anticanonical,
            generators: PolyRing::unit(names),
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn ncurves(&self) -> usize {
        self.degrees.len()
    }

    pub fn curve_degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `c_1` of the normal bundle of curve `j` (1-based).
    pub fn normal_degree(&self, j: usize) -> i64 {
        -2 + self.ambient.index() * i64::from(self.degrees[j - 1])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.basis
    }

    pub fn index_of(&self, c: BasisClass) -> Option<usize> {
        self.basis.iter().position(|&b| b == c)
    }

    pub fn codim(&self, i: usize) -> usize {
        self.basis[i].codim()
    }

    /// Basis indices of the divisor classes, in generator order.
    pub fn divisors(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.codim(i) == 1).collect()
    }

    /// Polynomial ring on the divisor generators (`E, H` or `E1, E2, H`).
    pub fn generator_ring(&self) -> &Arc<PolyRing> {
        &self.generators
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn cup_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn cup(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (l, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[l] += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Top-degree coefficient of `a ∪ b`.
    pub fn pairing(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let pt = self.dim() - 1;
        self.cup(a, b)[pt].clone()
    }

    /// Expansion of the Poincare-dual class of basis element `i`.
    pub fn dual(&self, i: usize) -> &[Rational] {
        &self.dual[i]
    }

    /// `-K` as a vector over the basis.
    pub fn anticanonical(&self) -> &[Rational] {
        &self.anticanonical
    }

    /// `-K` as a divisor expression, `4H - E` style.
    pub fn anticanonical_string(&self) -> String {
        let mut s = format!("{}H", self.ambient.index());
        let names = self.generators.names();
        for name in &names[..self.ncurves()] {
            s += &format!(" - {name}");
        }
        s
    }

    pub fn betti(&self) -> [usize; 4] {
        let mut b = [0; 4];
        for c in &self.basis {
            b[c.codim()] += 1;
        }
        b
    }

    /// Sum of the even Betti numbers (all cohomology here is of type (q,q)).
    pub fn hodge_length(&self) -> usize {
        self.dim()
    }

    /// Evaluates a polynomial in the divisor generators (missing variables
    /// are rejected) to a cohomology class.
    pub fn evaluate(&self, p: &Poly) -> Result<Vec<Rational>> {
        let p = p.embed(&self.generators)?;
        let divisors = self.divisors();
        let mut out = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            let v = self.evaluate_monomial(m, &divisors);
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    fn evaluate_monomial(&self, m: &Monomial, divisors: &[usize]) -> Vec<Rational> {
        let mut v = self.unit_vector(0);
        for (var, e) in m.iter() {
            for _ in 0..e {
                v = self.cup(&v, &self.unit_vector(divisors[var]));
            }
        }
        v
    }

    /// Minimal generators of the kernel of the evaluation map from divisor
    /// polynomials to cohomology, found degree by degree up to 3; sorted by
    /// decreasing degree.
    pub fn classical_relations(&self) -> Result<Vec<Poly>> {
        let ring = &self.generators;
        let divisors = self.divisors();
        let betti = self.betti();
        let mut rels: Vec<Poly> = Vec::new();
        for d in 1..=4u32 {
            let monos = monomials_of_degree(ring, d);
            let cols: Vec<Vec<Rational>> = monos
                .iter()
                .map(|m| self.evaluate_monomial(m, &divisors))
                .collect();
            let eval = Matrix::from_rows(cols).transpose();
            let target_rank = betti.get(d as usize).copied().unwrap_or(0);
            if eval.rank() != target_rank {
                return Err(Error::NotGenerated);
            }
            let kernel = eval.nullspace();
            let pos = |m: &Monomial| monos.iter().position(|x| x == m).unwrap();
            let mut span_rows = Vec::new();
            for r in &rels {
                let rd = r.total_degree()?;
                for m in monomials_of_degree(ring, d - rd) {
                    let mut row = vec![Rational::zero(); monos.len()];
                    for (t, c) in r.mul_term(&m, &Rational::one()).terms() {
                        row[pos(t)] = c.clone();
                    }
                    span_rows.push(row);
                }
            }
            let mut span = Matrix::from_rows(span_rows);
            let pivots = if span.rows() > 0 {
                span.rref()
            } else {
                Vec::new()
            };
            let remainders: Vec<Vec<Rational>> = kernel
                .into_iter()
                .map(|mut v| {
                    for (r, &p) in pivots.iter().enumerate() {
                        if v[p].is_zero() {
                            continue;
                        }
                        let f = v[p].clone();
                        for (x, y) in v.iter_mut().zip(span.row(r)) {
                            *x -= &f * y;
                        }
                    }
                    v
                })
                .collect();
            if remainders.is_empty() {
                continue;
            }
            let mut rem = Matrix::from_rows(remainders);
            let rank = rem.rref().len();
            if d == 4 && rank > 0 {
                return Err(Error::NotGenerated);
            }
            for r in 0..rank {
                let terms = monos.iter().cloned().zip(rem.row(r).iter().cloned());
                rels.push(Poly::from_terms(ring, terms));
            }
        }
        rels.sort_by(|a, b| {
            b.total_degree()
                .unwrap()
                .cmp(&a.total_degree().unwrap())
                .then_with(|| {
                    ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
                })
        });
        Ok(rels)
    }
}

/// All monomials of total degree `d`, in decreasing ring order.
pub fn monomials_of_degree(ring: &Arc<PolyRing>, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if ring.nvars() > 0 {
        rec(ring.nvars(), d, &mut Vec::new(), &mut out);
    } else if d == 0 {
        out.push(Monomial::one());
    }
    out.sort_by(|a, b| ring.cmp(b, a));
    out
}

fn cup_rule(
    ambient: Ambient,
    degrees: &[u32],
    a: BasisClass,
    b: BasisClass,
) -> Vec<(BasisClass, i64)> {
    use BasisClass::*;
    if a.codim() + b.codim() > 3 {
        return Vec::new();
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let d = |j: usize| i64::from(degrees[j - 1]);
    match (a, b) {
        (One, x) => vec![(x, 1)],
        (H, H) => vec![(Rho, ambient.h_squared())],
        (H, Rho) => vec![(Pt, 1)],
        (E(j), H) => vec![(Phi(j), d(j))],
        (E(j), E(l)) if j == l => {
            let c1 = -2 + ambient.index() * d(j);
            vec![(Rho, -d(j)), (Phi(j), c1)]
        }
        (E(j), Phi(l)) if j == l => vec![(Pt, -1)],
        _ => Vec::new(),
    }
}

/// Curve classes: geometric basis `L0, F1, ..` and the effective basis.
#[derive(Clone, Debug)]
pub struct CurveClassLattice {
    ambient: Ambient,
    basis: Vec<ClassExpr>,
    /// Maps geometric coordinates (row vector) to effective coordinates.
    to_effective: Matrix,
}

impl CurveClassLattice {
    pub fn new(ambient: Ambient, basis: Vec<ClassExpr>) -> Result<Self> {
        let to_effective = basis_matrix(&basis)
            .inverse()
            .ok_or_else(|| Error::Descriptor("curve basis is singular".into()))?;
        Ok(Self {
            ambient,
            basis,
            to_effective,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ncurves(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[ClassExpr] {
        &self.basis
    }

    pub fn geometric(&self, eff: &[u32]) -> ClassExpr {
        let mut c = vec![0i64; self.rank()];
        for (b, &n) in self.basis.iter().zip(eff) {
            for (x, y) in c.iter_mut().zip(b.coords()) {
                *x += i64::from(n) * y;
            }
        }
        ClassExpr::from_coords(&c)
    }

    /// Integer coordinates over the effective basis.
    pub fn effective_coords(&self, c: &ClassExpr) -> Vec<i64> {
        let row = Matrix::from_rows(vec![c.coords().into_iter().map(int).collect()]);
        let r = row.mul(&self.to_effective);
        r.row(0)
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "unimodular basis gives integer coordinates");
                i64::try_from(x.to_integer()).expect("coordinate fits in i64")
            })
            .collect()
    }

    pub fn minus_k(&self, c: &ClassExpr) -> i64 {
        self.ambient.index() * c.l0 + c.f.iter().sum::<i64>()
    }

    /// Weights `-K . beta_i` of the effective basis.
    pub fn q_weights(&self) -> Vec<i64> {
        self.basis.iter().map(|b| self.minus_k(b)).collect()
    }

    /// Intersection number of a curve class with a divisor basis class.
    pub fn dot(&self, c: &ClassExpr, d: BasisClass) -> i64 {
        match d {
            BasisClass::H => c.l0,
            BasisClass::E(j) => -c.f[j - 1],
            other => panic!("{other} is not a divisor class"),
        }
    }

    /// Nonzero nonnegative combinations of the effective basis with
    /// `1 <= -K.beta <= bound`, ordered by degree then coordinates.
    pub fn enumerate_classes(&self, bound: i64) -> Vec<Vec<u32>> {
        let w = self.q_weights();
        assert!(
            w.iter().all(|&x| x > 0),
            "effective basis must have positive -K degree"
        );
        let mut out = Vec::new();
        fn rec(w: &[i64], left: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if prefix.len() == w.len() {
                out.push(prefix.clone());
                return;
            }
            let wi = w[prefix.len()];
            let mut n = 0;
            while n * wi <= left {
                prefix.push(n as u32);
                rec(w, left - n * wi, prefix, out);
                prefix.pop();
                n += 1;
            }
        }
        rec(&w, bound, &mut Vec::new(), &mut out);
        out.retain(|c| c.iter().any(|&x| x > 0));
        let deg = |c: &Vec<u32>| {
            c.iter()
                .zip(&w)
                .map(|(&x, &y)| i64::from(x) * y)
                .sum::<i64>()
        };
        out.sort_by(|a, b| deg(a).cmp(&deg(b)).then_with(|| b.cmp(a)));
        out
    }
}

pub fn build_blowup_ring(d: &ThreefoldDescriptor) -> Result<(CohomologyRing, CurveClassLattice)> {
    let degrees: Vec<u32> = d.curves.iter().map(|c| c.degree).collect();
    let ring = CohomologyRing::new(d.ambient, &degrees);
    let lattice = CurveClassLattice::new(d.ambient, d.basis.clone())?;
    Ok((ring, lattice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn m2_30_classical_relations() {
        let r = CohomologyRing::new(Ambient::P3, &[2]);
        let rels: Vec<String> = r
            .classical_relations()
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(rels, ["E*H^2", "E^2 - 3*E*H + 2*H^2"]);
    }

    #[test]
    fn fiber_meets_exceptional_divisor_negatively() {
        for (amb, degs) in [(Ambient::P3, vec![1]), (Ambient::Q3, vec![2, 2])] {
            let r = CohomologyRing::new(amb, &degs);
            for j in 1..=degs.len() {
                let e = r.unit_vector(r.index_of(BasisClass::E(j)).unwrap());
                let phi = r.unit_vector(r.index_of(BasisClass::Phi(j)).unwrap());
                assert_eq!(r.pairing(&e, &phi), int(-1));
            }
        }
    }

    #[test]
    fn q3_normalization() {
        let r = CohomologyRing::new(Ambient::Q3, &[2]);
        let p = parse_poly("E^2 - 2*E*H + H^2", r.generator_ring()).unwrap();
        assert!(r.evaluate(&p).unwrap().iter().all(Zero::is_zero));
        assert_eq!(r.anticanonical_string(), "3H - E");
    }

    #[test]
    fn enumerate_m2_30_low_degree() {
        let lat = CurveClassLattice::new(
            Ambient::P3,
            vec![
                ClassExpr { l0: 1, f: vec![-2] },
                ClassExpr { l0: 0, f: vec![1] },
            ],
        )
        .unwrap();
        let classes: Vec<String> = lat
            .enumerate_classes(3)
            .iter()
            .map(|c| lat.geometric(c).to_string())
            .collect();
        assert_eq!(classes, ["F1", "L0-2*F1", "2*F1", "L0-F1", "3*F1"]);
        assert!(lat.enumerate_classes(0).is_empty());
        assert_eq!(
            lat.effective_coords(&ClassExpr { l0: 1, f: vec![-1] }),
            vec![1, 1]
        );
    }
}
