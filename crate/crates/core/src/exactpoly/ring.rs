use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use super::{Monomial, Poly, PolyError};

/// Term order. Variable priority is the ring's variable list (index 0 highest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse-lexicographically.
    DegRevLex,
    Lex,
    /// Elimination order: degrevlex on the first `first` variables, then
    /// degrevlex on the rest.
    Block {
        first: usize,
    },
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(a, b, weights),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Block { first } => {
                let (a1, a2) = a.split_by(|v| v < first);
                let (b1, b2) = b.split_by(|v| v < first);
                degrevlex(&a1, &b1, weights).then_with(|| degrevlex(&a2, &b2, weights))
            }
        }
    }

    /// Whether the order refines total weighted degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

fn degrevlex(a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
    a.weighted_degree(weights)
        .cmp(&b.weighted_degree(weights))
        .then_with(|| revlex(a, b))
}

// Largest variable index where the exponents differ decides; the smaller
// exponent there is the bigger monomial.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (a, b) = (a.pairs(), b.pairs());
    let (mut i, mut j) = (a.len(), b.len());
    loop {
        match (i > 0, j > 0) {
            (false, false) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (true, true) => {
                let (va, ea) = a[i - 1];
                let (vb, eb) = b[j - 1];
                match va.cmp(&vb) {
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i -= 1;
                        j -= 1;
                    }
                }
            }
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    let (a, b) = (a.pairs(), b.pairs());
    let mut k = 0;
    loop {
        match (k < a.len(), k < b.len()) {
            (false, false) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            (true, true) => {
                let ((va, ea), (vb, eb)) = (a[k], b[k]);
                if va != vb {
                    return vb.cmp(&va);
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
                k += 1;
            }
        }
    }
}

/// Polynomial ring context: ordered variable names, positive integer weights
/// and a monomial order. Shared behind an `Arc` by every polynomial in it.
#[derive(Debug, Clone)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    index: HashMap<String, usize>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.weights == other.weights && self.order == other.order
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, u32)>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>, PolyError> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut index = HashMap::new();
        for (name, w) in vars {
            let name = name.into();
            if w == 0 {
                return Err(PolyError::ZeroWeight(name));
            }
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(PolyError::DuplicateVariable(name));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(Arc::new(Self {
            names,
            weights,
            order,
            index,
        }))
    }

    /// All weights 1, degrevlex.
    pub fn unit<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        Self::new(names.into_iter().map(|n| (n, 1)), MonomialOrder::DegRevLex)
            .expect("unit ring with duplicate variable names")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.weights[index]
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(Self {
            order,
            ..self.clone()
        })
    }

    /// Variables of `a`, followed by the variables of `b` that `a` lacks.
    /// Shared variables must carry the same weight.
    pub fn union(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>, PolyError> {
        if a == b {
            return Ok(a.clone());
        }
        let mut vars: Vec<(String, u32)> = a
            .names
            .iter()
            .cloned()
            .zip(a.weights.iter().copied())
            .collect();
        for (name, &w) in b.names.iter().zip(&b.weights) {
            match a.var_index(name) {
                Some(i) if a.weights[i] != w => {
                    return Err(PolyError::WeightMismatch(name.clone()))
                }
                Some(_) => {}
                None => vars.push((name.clone(), w)),
            }
        }
        Self::new(vars, a.order)
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Poly, PolyError> {
        let i = self
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(self, i))
    }

    pub fn gen(self: &Arc<Self>, index: usize) -> Poly {
        Poly::var(self, index)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::with_capacity(m.support_len());
        for (v, e) in m.iter() {
            if e == 1 {
                parts.push(self.names[v].clone());
            } else {
                parts.push(format!("{}^{}", self.names[v], e));
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let w = [1, 1, 1];
        let o = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 > xz > yz > z^2
        let chain = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for pair in chain.windows(2) {
            assert_eq!(o.compare(&pair[0], &pair[1], &w), Ordering::Greater);
        }
        assert_eq!(
            o.compare(&m(&[0, 0, 1]), &m(&[3]), &[1, 1, 5]),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.compare(&m(&[1]), &m(&[0, 5]), &[1, 1]), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[1]), &[1, 1]), Ordering::Greater);
        assert_eq!(o.compare(&m(&[]), &m(&[]), &[1, 1]), Ordering::Equal);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonomialOrder::Block { first: 1 };
        assert_eq!(o.compare(&m(&[1]), &m(&[0, 9]), &[1, 1]), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[1, 1]), &[1, 1]), Ordering::Less);
    }

    #[test]
    fn union_checks_weights() {
        let a = PolyRing::new([("x", 1), ("q", 2)], MonomialOrder::DegRevLex).unwrap();
        let b = PolyRing::new([("q", 2), ("y", 1)], MonomialOrder::DegRevLex).unwrap();
        let u = PolyRing::union(&a, &b).unwrap();
        assert_eq!(u.names(), ["x", "q", "y"]);
        let c = PolyRing::new([("q", 3)], MonomialOrder::DegRevLex).unwrap();
        assert!(PolyRing::union(&a, &c).is_err());
    }
}
