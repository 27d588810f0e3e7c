use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{abs_is_one, render_rational};
use super::{Monomial, PolyError, PolyRing, Rational};

/// Variable name → value.
pub type Bindings = BTreeMap<String, Rational>;

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in strictly decreasing order under the ring's
/// monomial order and never carry a zero coefficient, so two polynomials over
/// the same ring are equal iff their term vectors are equal.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(index, 1), Rational::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Collects arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        ring: &Arc<PolyRing>,
        terms: I,
    ) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees the terms are already canonical.
    pub(crate) fn from_sorted_terms(
        ring: &Arc<PolyRing>,
        terms: Vec<(Monomial, Rational)>,
    ) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum weighted degree over the terms.
    pub fn weighted_degree(&self) -> Result<u64, PolyError> {
        self.terms
            .iter()
            .map(|(m, _)| m.weighted_degree(self.ring.weights()))
            .max()
            .ok_or(PolyError::ZeroPolynomialDegree)
    }

    pub fn total_degree(&self) -> Result<u32, PolyError> {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .ok_or(PolyError::ZeroPolynomialDegree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Indices of the variables that occur.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.iter().map(|(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the term `c * m`; order is preserved because monomial
    /// orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// `self - c * m * g`, by a single merge pass.
    pub fn sub_mul_term(&self, c: &Rational, m: &Monomial, g: &Poly) -> Poly {
        let ring = &self.ring;
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(t, b)| (t.mul(m), b * c)).peekable();
        while i < a.len() || gi.peek().is_some() {
            let ord = match gi.peek() {
                None => Ordering::Greater,
                Some((t, _)) if i < a.len() => ring.cmp(&a[i].0, t),
                Some(_) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (t, b) = gi.next().unwrap();
                    out.push((t, -b));
                }
                Ordering::Equal => {
                    let (t, b) = gi.next().unwrap();
                    let s = &a[i].1 - b;
                    if !s.is_zero() {
                        out.push((t, s));
                    }
                    i += 1;
                }
            }
        }
        Poly::from_sorted_terms(ring, out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes values for the bound variables; unknown names are ignored.
    pub fn specialize(&self, bindings: &Bindings) -> Poly {
        let values: Vec<Option<&Rational>> =
            self.ring.names().iter().map(|n| bindings.get(n)).collect();
        self.specialize_indexed(&values)
    }

    pub fn specialize_indexed(&self, values: &[Option<&Rational>]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.iter() {
                match values.get(v).copied().flatten() {
                    Some(val) => coeff *= num_traits::pow(val.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            (Monomial::from_pairs(rest), coeff)
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Replaces variable `index` by the polynomial `value` (same ring).
    pub fn substitute(&self, index: usize, value: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one(&self.ring)];
        let mut out = Poly::zero(&self.ring);
        let mut untouched = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index) as usize;
            if e == 0 {
                untouched.push((m.clone(), c.clone()));
                continue;
            }
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Monomial::from_pairs(m.iter().filter(|&(v, _)| v != index));
            out = &out + &powers[e].mul_term(&rest, c);
        }
        &out + &Poly::from_terms(&self.ring, untouched)
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Poly, PolyError> {
        if Arc::ptr_eq(&self.ring, target) || *self.ring == **target {
            return Ok(Poly {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self
            .ring
            .names()
            .iter()
            .map(|n| target.var_index(n))
            .collect();
        self.remap(target, &map)
    }

    /// Moves the polynomial into `target` through an explicit index map
    /// (source variable → target variable).
    pub fn remap(&self, target: &Arc<PolyRing>, map: &[Option<usize>]) -> Result<Poly, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mm = m.remap(map).ok_or_else(|| {
                let missing = m
                    .iter()
                    .find(|&(v, _)| map.get(v).copied().flatten().is_none())
                    .map(|(v, _)| self.ring.name(v).to_string())
                    .unwrap_or_default();
                PolyError::UnknownVariable(missing)
            })?;
            terms.push((mm, c.clone()));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Groups terms by their monomial in the variables selected by `pred`;
    /// returns `(selected monomial, coefficient over the other variables)`
    /// in ascending order of the selected monomial.
    pub fn coefficients_by(&self, pred: impl Fn(usize) -> bool) -> Vec<(Monomial, Poly)> {
        type Terms = Vec<(Monomial, Rational)>;
        let mut groups: BTreeMap<Vec<(u32, u32)>, Terms> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (sel, rest) = m.split_by(&pred);
            groups
                .entry(sel.pairs().to_vec())
                .or_default()
                .push((rest, c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, terms)| {
                let sel = Monomial::from_pairs(k.into_iter().map(|(v, e)| (v as usize, e)));
                (sel, Poly::from_terms(&self.ring, terms))
            })
            .collect()
    }

    /// Lines the two operands up in a common ring.
    fn aligned(a: &Poly, b: &Poly) -> (Poly, Poly) {
        let ring =
            PolyRing::union(&a.ring, &b.ring).expect("operands disagree on variable weights");
        (
            a.embed(&ring).expect("embedding into union ring"),
            b.embed(&ring).expect("embedding into union ring"),
        )
    }

    fn same_ring(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        if !self.same_ring(other) {
            let (a, b) = Poly::aligned(self, other);
            return a.add_impl(&b, negate);
        }
        let ring = &self.ring;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if j == b.len() {
                Ordering::Greater
            } else if i == a.len() {
                Ordering::Less
            } else {
                ring.cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !s.is_zero() {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted_terms(ring, out)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if !self.same_ring(other) {
            let (a, b) = Poly::aligned(self, other);
            return a.mul_impl(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::from_terms(&self.ring, acc)
    }

    /// Canonical text form; see [`fmt::Display`].
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<Poly, PolyError> {
        super::parse::parse_poly(text, ring)
    }
}

impl fmt::Display for Poly {
    /// Terms in descending order, `a/b*x^2*y` style; zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", render_rational(&abs))?;
            } else if abs_is_one(c) {
                write!(f, "{}", self.ring.render_monomial(m))?;
            } else {
                write!(
                    f,
                    "{}*{}",
                    render_rational(&abs),
                    self.ring.render_monomial(m)
                )?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                let f: fn(&Poly, &Poly) -> Poly = $body;
                f(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                let f: fn(&Poly, &Poly) -> Poly = $body;
                f(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
