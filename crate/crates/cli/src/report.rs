use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use qh_core::exactpoly::{render_rational, MonomialOrder};
use qh_core::exec::Execution;
use qh_core::groebner::Budget;
use qh_core::pipeline::{
    analyze, build_geometric, check_presentation, quantize_presentation, solve,
    verify_against_expected, ExpectedResults,
};
use qh_core::quantum::{QuantumContext, SolvedProduct};
use qh_core::semisimple::generic_semisimplicity;

use crate::commands::{load_descriptor, CliError, EXIT_INCONCLUSIVE, EXIT_MISMATCH, EXIT_OK};

#[derive(Debug, Serialize)]
pub struct Status {
    pub code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VarietyReport {
    pub dimension: usize,
    pub degree: u64,
    pub basis_size: usize,
    pub steps: u64,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub expected_file: String,
    pub n_matches: Option<bool>,
    pub dim_matches: Option<bool>,
    pub deg_matches: Option<bool>,
    pub ideal_equal: Option<bool>,
    pub syntactic: Option<bool>,
}

impl VerificationReport {
    fn passed(&self) -> bool {
        [
            self.n_matches,
            self.dim_matches,
            self.deg_matches,
            self.ideal_equal,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
    }
}

#[derive(Debug, Serialize)]
pub struct SemisimpleReport {
    pub verdict: String,
    pub trials: Vec<String>,
}

/// Everything `qh all` reports for one descriptor. Apart from the optional
/// timings the content depends only on the input and the seed.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub descriptor: String,
    pub name: Option<String>,
    pub status: Status,
    pub essential_unknowns: Option<usize>,
    pub associativity_generators: Option<usize>,
    pub variety: Option<VarietyReport>,
    pub solution: Vec<String>,
    pub presentation: Vec<String>,
    pub presentation_check: Option<bool>,
    pub verification: Option<VerificationReport>,
    pub semisimplicity: Option<SemisimpleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u128>>,
}

pub fn order_name(o: MonomialOrder) -> &'static str {
    match o {
        MonomialOrder::DegRevLex => "degrevlex",
        MonomialOrder::Lex => "lex",
        MonomialOrder::Block { .. } => "block",
    }
}

struct Clock {
    enabled: bool,
    times: BTreeMap<&'static str, u128>,
    start: Instant,
}

impl Clock {
    fn lap(&mut self, stage: &'static str) {
        if self.enabled {
            self.times.insert(stage, self.start.elapsed().as_millis());
        }
        self.start = Instant::now();
    }
}

pub fn run_report(path: &Path, seed: u64, trials: u64, timings: bool) -> RunReport {
    let mut report = RunReport {
        descriptor: path.display().to_string(),
        name: None,
        status: Status {
            code: EXIT_OK,
            message: None,
        },
        essential_unknowns: None,
        associativity_generators: None,
        variety: None,
        solution: Vec::new(),
        presentation: Vec::new(),
        presentation_check: None,
        verification: None,
        semisimplicity: None,
        timings_ms: None,
    };
    let mut clock = Clock {
        enabled: timings,
        times: BTreeMap::new(),
        start: Instant::now(),
    };
    if let Err(e) = fill(&mut report, path, seed, trials, &mut clock) {
        report.status = Status {
            code: e.exit_code(),
            message: Some(e.to_string()),
        };
    }
    if timings {
        report.timings_ms = Some(clock.times);
    }
    report
}

fn fill(
    r: &mut RunReport,
    path: &Path,
    seed: u64,
    trials: u64,
    clock: &mut Clock,
) -> Result<(), CliError> {
    let wrap = |e| CliError::Core(path.to_path_buf(), e);
    let budget = Budget::from_env();
    let d = load_descriptor(path)?;
    r.name = Some(d.name.clone());

    let ctx = QuantumContext::new(&d).map_err(wrap)?;
    let sys = ctx
        .associativity_system(Execution::Sequential)
        .map_err(wrap)?;
    r.essential_unknowns = Some(sys.essential.len());
    r.associativity_generators = Some(sys.generators.len());
    clock.lap("associativity");

    let a = analyze(&sys, MonomialOrder::DegRevLex, budget).map_err(wrap)?;
    r.variety = Some(VarietyReport {
        dimension: a.hilbert.dimension,
        degree: a.hilbert.degree,
        basis_size: a.basis_size,
        steps: a.steps,
    });
    clock.lap("analysis");

    let geom = build_geometric(&d, &ctx, &sys.essential).map_err(wrap)?;
    let sol = solve(&sys, &geom, budget).map_err(wrap)?;
    r.solution = sol
        .essential
        .symbols()
        .iter()
        .zip(&sol.values)
        .map(|(s, v)| format!("{} = {}", s.render(ctx.lattice()), render_rational(v)))
        .collect();
    clock.lap("solve");

    let mut p = quantize_presentation(&ctx, &sol, budget).map_err(wrap)?;
    p.name = d.name.clone();
    r.presentation = p.relations.iter().map(ToString::to_string).collect();
    let solved = SolvedProduct::new(&ctx, &sol.as_map());
    let classical = ctx.ring().classical_relations().map_err(wrap)?;
    r.presentation_check = Some(
        check_presentation(&p, &solved, &classical)
            .map_err(wrap)?
            .passed(),
    );
    clock.lap("presentation");

    let expected_path = path.with_file_name(format!("{}.expected", d.name));
    if expected_path.exists() {
        let text = std::fs::read_to_string(&expected_path)
            .map_err(|e| CliError::Io(expected_path.clone(), e))?;
        let exp =
            ExpectedResults::parse(&text).map_err(|e| CliError::Core(expected_path.clone(), e))?;
        let (ideal_equal, syntactic) = if exp.relations.is_empty() {
            (None, None)
        } else {
            let rels = exp
                .relations_in(&p.ring)
                .map_err(|e| CliError::Core(expected_path.clone(), e))?;
            let v = verify_against_expected(&p, &rels, budget).map_err(wrap)?;
            (Some(v.ideal_equal()), Some(v.syntactic))
        };
        let v = VerificationReport {
            expected_file: expected_path.display().to_string(),
            n_matches: exp.n.map(|n| n == sys.essential.len()),
            dim_matches: exp.dim.map(|x| x == a.hilbert.dimension),
            deg_matches: exp.deg.map(|x| x == a.hilbert.degree),
            ideal_equal,
            syntactic,
        };
        if !v.passed() {
            r.status = Status {
                code: EXIT_MISMATCH,
                message: Some(format!("does not match {}", expected_path.display())),
            };
        }
        r.verification = Some(v);
        clock.lap("verification");
    }

    let ss =
        generic_semisimplicity(&p, trials, seed, Execution::Sequential, budget).map_err(wrap)?;
    r.semisimplicity = Some(SemisimpleReport {
        verdict: ss.verdict.to_string(),
        trials: ss.trials.iter().map(|t| t.render(p.q_names())).collect(),
    });
    clock.lap("semisimplicity");
    if r.status.code == EXIT_OK && ss.verdict != qh_core::semisimple::Verdict::Semisimple {
        r.status = Status {
            code: EXIT_INCONCLUSIVE,
            message: Some("semisimplicity inconclusive".into()),
        };
    }
    Ok(())
}
