//! From a descriptor to a solved product and a quantized presentation.

mod expected;
mod presentation;

pub use expected::ExpectedResults;
pub use presentation::{
    check_presentation, quantize_presentation, verify_against_expected, PresentationCheck,
    QuantumPresentation, VerifyReport,
};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cohomology::BasisClass;
use crate::descriptor::{ClassExpr, ThreefoldDescriptor};
use crate::error::{Error, Result};
use crate::exactpoly::{render_rational, MonomialOrder, Poly, PolyRing, Rational};
use crate::exec::Execution;
use crate::groebner::{buchberger, hilbert_analysis, solve_zero_dim, Budget, HilbertData};
use crate::gwsymbols::{insertion_class, normalize, EssentialSet, InvariantSymbol, Normalized};
use crate::quantum::{AssociativityIdeal, QuantumContext, SolvedProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    StandardFiber,
    Descriptor,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::StandardFiber => "standard-fiber",
            Origin::Descriptor => "descriptor",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricEntry {
    pub symbol: InvariantSymbol,
    /// Position of `symbol` in the essential set.
    pub index: usize,
    /// Value of the essential unknown (the descriptor value divided by the
    /// divisor factors).
    pub value: Rational,
    pub origin: Origin,
}

#[derive(Clone, Debug, Default)]
pub struct GeometricRelationSet {
    pub entries: Vec<GeometricEntry>,
}

impl GeometricRelationSet {
    /// `x_i - value` for every entry.
    pub fn relations(&self, ring: &Arc<PolyRing>) -> Vec<Poly> {
        self.entries
            .iter()
            .map(|e| &ring.gen(e.index) - &Poly::constant(ring, e.value.clone()))
            .collect()
    }
}

/// Fiber relations `I(F_j | phi_j) = -1` plus the descriptor's geometric
/// lines, as linear relations on the essential unknowns.
pub fn build_geometric(
    desc: &ThreefoldDescriptor,
    ctx: &QuantumContext,
    es: &EssentialSet,
) -> Result<GeometricRelationSet> {
    let ncurves = desc.ncurves();
    let mut wanted = Vec::new();
    for j in 1..=ncurves {
        let mut class = ClassExpr::zero(ncurves);
        class.f[j - 1] = 1;
        wanted.push((
            class,
            vec![BasisClass::Phi(j)],
            -Rational::one(),
            Origin::StandardFiber,
        ));
    }
    for g in &desc.geom {
        let ins = g.insertions.iter().map(|&i| insertion_class(i)).collect();
        wanted.push((g.class.clone(), ins, g.value.clone(), Origin::Descriptor));
    }

    let lat = ctx.lattice();
    let mut out = GeometricRelationSet::default();
    for (class, ins, value, origin) in wanted {
        let shown = format!(
            "I({class} | {})",
            ins.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        );
        let coords = lat.effective_coords(&class);
        if coords.iter().any(|&c| c < 0) || coords.iter().all(|&c| c == 0) {
            return Err(Error::UnknownSymbol(shown));
        }
        let coords: Vec<u32> = coords.iter().map(|&c| c as u32).collect();
        let (coef, symbol) = match normalize(ctx.ring(), lat, &coords, &ins)? {
            Normalized::Symbol(c, s) => (c, s),
            Normalized::Zero if value.is_zero() => continue,
            Normalized::Zero => return Err(Error::GradingMismatch(shown)),
        };
        let index = es.position(&symbol).ok_or(Error::UnknownSymbol(shown))?;
        let value = value / coef;
        if let Some(prev) = out.entries.iter().find(|e| e.index == index) {
            if prev.value == value {
                continue;
            }
        }
        out.entries.push(GeometricEntry {
            symbol,
            index,
            value,
            origin,
        });
    }
    Ok(out)
}

/// Values of the essential unknowns at the unique point of `A ∩ G`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub essential: EssentialSet,
    pub values: Vec<Rational>,
}

impl Solution {
    pub fn value(&self, s: &InvariantSymbol) -> Option<&Rational> {
        self.essential.position(s).map(|i| &self.values[i])
    }

    pub fn as_map(&self) -> HashMap<InvariantSymbol, Rational> {
        self.essential
            .symbols()
            .iter()
            .cloned()
            .zip(self.values.iter().cloned())
            .collect()
    }

    /// `x3 = I(L0-F1 | rho, pt) = 2` lines.
    pub fn render(&self, ctx: &QuantumContext) -> Vec<String> {
        self.essential
            .symbols()
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(|(i, (s, v))| {
                format!(
                    "{} = {} = {}",
                    EssentialSet::var_name(i),
                    s.render(ctx.lattice()),
                    render_rational(v)
                )
            })
            .collect()
    }
}

/// Adjoins the geometric relations, propagates every resulting linear
/// substitution, and requires a single rational point for the rest.
pub fn solve(
    ja: &AssociativityIdeal,
    jg: &GeometricRelationSet,
    budget: Budget,
) -> Result<Solution> {
    let ring = &ja.x_ring;
    let n = ring.nvars();
    let mut fixed: Vec<Option<Rational>> = vec![None; n];
    let assign = |fixed: &mut Vec<Option<Rational>>, v: usize, val: Rational| match &fixed[v] {
        Some(old) if *old != val => Err(Error::Inconsistent),
        _ => {
            fixed[v] = Some(val);
            Ok(())
        }
    };
    for e in &jg.entries {
        assign(&mut fixed, e.index, e.value.clone())?;
    }

    let mut pending = ja.generators.clone();
    loop {
        let values: Vec<Option<&Rational>> = fixed.iter().map(Option::as_ref).collect();
        let mut found = Vec::new();
        let mut next = Vec::with_capacity(pending.len());
        for g in &pending {
            let s = g.specialize_indexed(&values);
            if s.is_zero() {
                continue;
            }
            if s.is_constant() {
                return Err(Error::Inconsistent);
            }
            let vars = s.variables();
            if vars.len() == 1 && s.total_degree()? == 1 {
                let v = *vars.first().unwrap();
                let (_, a) = s.leading_term().unwrap();
                found.push((v, -s.constant_term() / a));
                continue;
            }
            next.push(s);
        }
        if found.is_empty() {
            pending = next;
            break;
        }
        for (v, val) in found {
            assign(&mut fixed, v, val)?;
        }
        pending = next;
    }

    let mut system = pending;
    for (v, val) in fixed.iter().enumerate() {
        if let Some(val) = val {
            system.push(&ring.gen(v) - &Poly::constant(ring, val.clone()));
        }
    }
    let g = buchberger(&system, ring, budget)?;
    let h = hilbert_analysis(&g)?;
    if h.dimension > 0 {
        return Err(Error::Underdetermined {
            dim: h.dimension,
            deg: h.degree,
        });
    }
    if h.degree > 1 {
        return Err(Error::Ambiguous { deg: h.degree });
    }
    let point = solve_zero_dim(&g, budget)?.pop().expect("degree one point");
    let values: Vec<Option<&Rational>> = point.iter().map(Some).collect();
    for gen in &ja.generators {
        assert!(
            gen.specialize_indexed(&values).is_zero(),
            "solution violates {gen}"
        );
    }
    Ok(Solution {
        essential: ja.essential.clone(),
        values: point,
    })
}

/// Hilbert invariants of `J_A` alone. The basis is computed in `order`;
/// dimension and degree always come from a degree-compatible basis.
pub fn analyze(ja: &AssociativityIdeal, order: MonomialOrder, budget: Budget) -> Result<Analysis> {
    let ring = ja.x_ring.with_order(order);
    let g = buchberger(&ja.generators, &ring, budget)?;
    let (size, mut steps) = (g.len(), g.steps());
    let hilbert = if order.is_graded() {
        hilbert_analysis(&g)?
    } else {
        let gd = buchberger(&ja.generators, &ja.x_ring, budget)?;
        steps += gd.steps();
        hilbert_analysis(&gd)?
    };
    Ok(Analysis {
        order,
        basis_size: size,
        steps,
        hilbert,
    })
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub order: MonomialOrder,
    pub basis_size: usize,
    pub steps: u64,
    pub hilbert: HilbertData,
}

/// Every stage for one threefold.
#[derive(Clone, Debug)]
pub struct ThreefoldRun {
    pub context: QuantumContext,
    pub system: AssociativityIdeal,
    pub geometric: GeometricRelationSet,
    pub solution: Solution,
    pub presentation: QuantumPresentation,
}

impl ThreefoldRun {
    pub fn solved_product(&self) -> SolvedProduct {
        SolvedProduct::new(&self.context, &self.solution.as_map())
    }
}

/// Essential set, solve and quantization; the expansion of the associativity
/// system runs under `exec`.
pub fn run(desc: &ThreefoldDescriptor, budget: Budget, exec: Execution) -> Result<ThreefoldRun> {
    let context = QuantumContext::new(desc)?;
    let system = context.associativity_system(exec)?;
    let geometric = build_geometric(desc, &context, &system.essential)?;
    let solution = solve(&system, &geometric, budget)?;
    let mut presentation = quantize_presentation(&context, &solution, budget)?;
    presentation.name = desc.name.clone();
    Ok(ThreefoldRun {
        context,
        system,
        geometric,
        solution,
        presentation,
    })
}

/// Solved values that should vanish but do not. A class of `H`-degree zero
/// is carried only by fibers of the exceptional divisors, so every such class
/// other than a single fiber class `F_j` has no connected rational
/// representative and its invariants must be zero.
pub fn nonvanishing_fiber_multiples(ctx: &QuantumContext, sol: &Solution) -> Vec<String> {
    let lat = ctx.lattice();
    sol.essential
        .symbols()
        .iter()
        .zip(&sol.values)
        .filter(|(s, v)| {
            let g = lat.geometric(&s.class);
            let single_fiber =
                g.f.iter().filter(|&&c| c != 0).count() == 1 && g.f.iter().sum::<i64>() == 1;
            g.l0 == 0 && !single_fiber && !v.is_zero()
        })
        .map(|(s, v)| format!("{} = {}", s.render(lat), render_rational(v)))
        .collect()
}
