//! Gromov-Witten invariant symbols and their reduction to essential unknowns.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::cohomology::{BasisClass, CohomologyRing, CurveClassLattice};
use crate::descriptor::Insertion;
use crate::error::{Error, Result};
use crate::exactpoly::{int, Rational};

/// `I_beta(insertions)` with `beta` in effective coordinates and insertions of
/// codimension at least 2, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantSymbol {
    pub class: Vec<u32>,
    pub insertions: Vec<BasisClass>,
}

impl InvariantSymbol {
    pub fn new(class: Vec<u32>, mut insertions: Vec<BasisClass>) -> Self {
        insertions.sort();
        Self { class, insertions }
    }

    pub fn render(&self, lat: &CurveClassLattice) -> String {
        let ins: Vec<String> = self.insertions.iter().map(ToString::to_string).collect();
        format!("I({} | {})", lat.geometric(&self.class), ins.join(", "))
    }

    /// Whether the codimensions satisfy the grading rule.
    pub fn is_graded(&self, lat: &CurveClassLattice) -> bool {
        let codim: usize = self.insertions.iter().map(|c| c.codim()).sum();
        codim as i64 == lat.minus_k(&lat.geometric(&self.class)) + self.insertions.len() as i64
    }
}

pub fn insertion_class(i: Insertion) -> BasisClass {
    match i {
        Insertion::Rho => BasisClass::Rho,
        Insertion::Phi(j) => BasisClass::Phi(j),
        Insertion::Pt => BasisClass::Pt,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    /// `coefficient * symbol`.
    Symbol(Rational, InvariantSymbol),
}

/// Applies the fundamental-class, divisor and grading rules to
/// `I_beta(insertions)` for a nonzero class `beta`.
pub fn normalize(
    ring: &CohomologyRing,
    lat: &CurveClassLattice,
    class: &[u32],
    insertions: &[BasisClass],
) -> Result<Normalized> {
    let beta = lat.geometric(class);
    let mut coef = Rational::one();
    let mut rest = Vec::with_capacity(insertions.len());
    for &c in insertions {
        if ring.index_of(c).is_none() {
            return Err(Error::Descriptor(format!("{c} is not a basis class")));
        }
        match c.codim() {
            0 => return Ok(Normalized::Zero),
            1 => {
                let d = lat.dot(&beta, c);
                if d == 0 {
                    return Ok(Normalized::Zero);
                }
                coef *= int(d);
            }
            _ => rest.push(c),
        }
    }
    if rest.is_empty() {
        return Ok(Normalized::Zero);
    }
    let sym = InvariantSymbol::new(class.to_vec(), rest);
    if !sym.is_graded(lat) {
        return Ok(Normalized::Zero);
    }
    debug_assert!(!coef.is_zero());
    Ok(Normalized::Symbol(coef, sym))
}

/// Ordered unknowns `x1..xN`.
#[derive(Clone, Debug, Default)]
pub struct EssentialSet {
    symbols: Vec<InvariantSymbol>,
    index: HashMap<InvariantSymbol, usize>,
}

impl EssentialSet {
    /// Sorts by `(-K.beta, coordinates, insertions)` and freezes the indexing.
    pub fn from_symbols(
        lat: &CurveClassLattice,
        symbols: impl IntoIterator<Item = InvariantSymbol>,
    ) -> Self {
        let mut symbols: Vec<InvariantSymbol> = symbols.into_iter().collect();
        symbols.sort_by_key(|s| (lat.minus_k(&lat.geometric(&s.class)), s.clone()));
        symbols.dedup();
        let index = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Self { symbols, index }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[InvariantSymbol] {
        &self.symbols
    }

    pub fn position(&self, s: &InvariantSymbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `x1`, `x2`, ...
    pub fn var_name(i: usize) -> String {
        format!("x{}", i + 1)
    }

    pub fn var_names(&self) -> Vec<String> {
        (0..self.len()).map(Self::var_name).collect()
    }
}

/// Every grading-consistent symbol with one to three insertions over the
/// given classes.
pub fn candidate_symbols(
    ring: &CohomologyRing,
    lat: &CurveClassLattice,
    classes: &[Vec<u32>],
) -> Vec<InvariantSymbol> {
    let high: Vec<BasisClass> = ring
        .basis()
        .iter()
        .copied()
        .filter(|c| c.codim() >= 2)
        .collect();
    let mut multisets: Vec<Vec<BasisClass>> = Vec::new();
    for a in 0..high.len() {
        multisets.push(vec![high[a]]);
        for b in a..high.len() {
            multisets.push(vec![high[a], high[b]]);
            for c in b..high.len() {
                multisets.push(vec![high[a], high[b], high[c]]);
            }
        }
    }
    let mut out = Vec::new();
    for class in classes {
        for ins in &multisets {
            let s = InvariantSymbol::new(class.clone(), ins.clone());
            if s.is_graded(lat) {
                out.push(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::CohomologyRing;
    use crate::descriptor::{Ambient, ClassExpr};

    fn m2_30() -> (CohomologyRing, CurveClassLattice) {
        let ring = CohomologyRing::new(Ambient::P3, &[2]);
        let lat = CurveClassLattice::new(
            Ambient::P3,
            vec![
                ClassExpr { l0: 1, f: vec![-2] },
                ClassExpr { l0: 0, f: vec![1] },
            ],
        )
        .unwrap();
        (ring, lat)
    }

    #[test]
    fn divisor_axiom_and_grading() {
        use BasisClass::*;
        let (ring, lat) = m2_30();
        // beta = L0-F1: beta.H = 1, beta.E = 1, -K.beta = 3
        let r = normalize(&ring, &lat, &[1, 1], &[H, Rho, Pt]).unwrap();
        assert_eq!(
            r,
            Normalized::Symbol(int(1), InvariantSymbol::new(vec![1, 1], vec![Rho, Pt]))
        );
        let r = normalize(&ring, &lat, &[1, 1], &[Pt, E(1), Rho]).unwrap();
        assert_eq!(
            r,
            Normalized::Symbol(int(1), InvariantSymbol::new(vec![1, 1], vec![Rho, Pt]))
        );
        // F1.E = -1, so two E insertions contribute +1
        let r = normalize(&ring, &lat, &[0, 1], &[E(1), E(1), Phi(1)]).unwrap();
        assert_eq!(
            r,
            Normalized::Symbol(int(1), InvariantSymbol::new(vec![0, 1], vec![Phi(1)]))
        );
        assert_eq!(
            normalize(&ring, &lat, &[0, 1], &[H, Phi(1), One]).unwrap(),
            Normalized::Zero
        );
        assert_eq!(
            normalize(&ring, &lat, &[1, 0], &[H, H, H]).unwrap(),
            Normalized::Zero
        );
        assert_eq!(
            normalize(&ring, &lat, &[0, 1], &[Pt]).unwrap(),
            Normalized::Zero
        );
        assert!(normalize(&ring, &lat, &[0, 1], &[Phi(2)]).is_err());
    }

    #[test]
    fn rendering() {
        let (_, lat) = m2_30();
        let s = InvariantSymbol::new(vec![1, 0], vec![BasisClass::Rho, BasisClass::Rho]);
        assert_eq!(s.render(&lat), "I(L0-2*F1 | rho, rho)");
    }
}
