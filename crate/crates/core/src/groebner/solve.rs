use num_traits::Zero;

use super::univariate::{self, UPoly};
use super::{buchberger, hilbert_analysis, Budget, GroebnerBasis};
use crate::error::{Error, Result};
use crate::exactpoly::{MonomialOrder, Poly, Rational};

/// Coordinates in the ring's variable order.
pub type Point = Vec<Rational>;

/// All points of a zero-dimensional ideal, when they are rational.
pub fn solve_zero_dim(g: &GroebnerBasis, budget: Budget) -> Result<Vec<Point>> {
    let h = hilbert_analysis(g)?;
    if h.dimension > 0 {
        return Err(Error::NotZeroDimensional { dim: h.dimension });
    }
    let ring = g.ring();
    if h.degree == 1 {
        return Ok(vec![read_linear(g)]);
    }
    let lex = if ring.order() == MonomialOrder::Lex {
        g.clone()
    } else {
        buchberger(g.polys(), &ring.with_order(MonomialOrder::Lex), budget)?
    };
    let mut out = Vec::new();
    let mut partial = vec![None; ring.nvars()];
    back_substitute(lex.polys(), ring.nvars(), &mut partial, &mut out, h.degree)?;
    Ok(out)
}

// A reduced basis of a rational point is {x_i - c_i}.
fn read_linear(g: &GroebnerBasis) -> Point {
    let n = g.ring().nvars();
    let mut point = vec![Rational::zero(); n];
    for p in g.polys() {
        let (m, _) = p.leading_term().unwrap();
        let (v, e) = m.iter().next().expect("nonconstant generator");
        assert!(
            e == 1 && m.support_len() == 1 && p.len() <= 2,
            "degree-1 basis is linear"
        );
        point[v] = -p.constant_term();
    }
    point
}

fn back_substitute(
    polys: &[Poly],
    next: usize,
    partial: &mut Vec<Option<Rational>>,
    out: &mut Vec<Point>,
    degree: u64,
) -> Result<()> {
    if next == 0 {
        out.push(partial.iter().map(|v| v.clone().unwrap()).collect());
        return Ok(());
    }
    let v = next - 1;
    let values: Vec<Option<&Rational>> = partial.iter().map(Option::as_ref).collect();
    let mut fiber: UPoly = Vec::new();
    for p in polys {
        if p.variables().iter().any(|&w| w < v) {
            continue;
        }
        let s = p.specialize_indexed(&values);
        if let Some(u) = univariate::from_poly(&s, v) {
            fiber = univariate::gcd(&fiber, &u);
        }
    }
    if fiber.is_empty() {
        return Err(Error::NotZeroDimensional { dim: 1 });
    }
    let sf = univariate::squarefree(&fiber);
    let roots = univariate::rational_roots(&sf).ok_or(Error::NonRational { deg: degree })?;
    if roots.len() + 1 != sf.len() {
        return Err(Error::NonRational { deg: degree });
    }
    for r in roots {
        partial[v] = Some(r);
        back_substitute(polys, v, partial, out, degree)?;
    }
    partial[v] = None;
    Ok(())
}
