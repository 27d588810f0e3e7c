use std::fmt;
use std::path::{Path, PathBuf};

use qh_core::cohomology::build_blowup_ring;
use qh_core::descriptor::ThreefoldDescriptor;
use qh_core::exactpoly::MonomialOrder;
use qh_core::exec::Execution;
use qh_core::groebner::Budget;
use qh_core::gwsymbols::EssentialSet;
use qh_core::pipeline::{
    analyze, build_geometric, quantize_presentation, solve as solve_system,
    verify_against_expected, ExpectedResults, QuantumPresentation,
};
use qh_core::quantum::QuantumContext;
use qh_core::semisimple::{generic_semisimplicity, Verdict};
use qh_core::Error;

use crate::report::{self, RunReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_UNDERDETERMINED: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;
pub const EXIT_AMBIGUOUS: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;
pub const EXIT_MISMATCH: u8 = 6;
pub const EXIT_INCONCLUSIVE: u8 = 7;

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Core(PathBuf, Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Core(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => EXIT_INPUT,
            CliError::Core(_, e) => exit_code(e),
        }
    }

    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(_, Error::Underdetermined { .. }) => {
                Some("add geometric relations (`geom:` lines) to the descriptor")
            }
            CliError::Core(_, Error::BudgetExceeded { .. }) => Some("raise QH_BUDGET"),
            _ => None,
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Underdetermined { .. } | Error::NotZeroDimensional { .. } => EXIT_UNDERDETERMINED,
        Error::Inconsistent => EXIT_INCONSISTENT,
        Error::Ambiguous { .. } | Error::NonRational { .. } => EXIT_AMBIGUOUS,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

type CliResult = Result<u8, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn load_descriptor(path: &Path) -> Result<ThreefoldDescriptor, CliError> {
    ThreefoldDescriptor::parse(&read(path)?).map_err(|e| CliError::Core(path.to_path_buf(), e))
}

fn core<T>(path: &Path, r: qh_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Core(path.to_path_buf(), e))
}

pub fn describe(path: &Path) -> CliResult {
    let d = load_descriptor(path)?;
    let (ring, lat) = core(path, build_blowup_ring(&d))?;
    println!("name: {}", d.name);
    println!("ambient: {}", d.ambient);
    for c in &d.curves {
        println!("curve {}: degree {}", c.index, c.degree);
    }
    let basis: Vec<String> = ring.basis().iter().map(ToString::to_string).collect();
    println!("cohomology basis: {}", basis.join(", "));
    let b = ring.betti();
    println!("betti: {} {} {} {}", b[0], b[1], b[2], b[3]);
    println!("-K = {}", ring.anticanonical_string());
    println!("classical relations:");
    for r in core(path, ring.classical_relations())? {
        println!("  {r}");
    }
    println!("curve basis:");
    for (i, c) in lat.basis().iter().enumerate() {
        println!("  q{i} = {c}  (-K.q{i} = {})", lat.minus_k(c));
    }
    println!("geometric input:");
    for g in &d.geom {
        println!("  {g}");
    }
    Ok(EXIT_OK)
}

pub fn essential(path: &Path) -> CliResult {
    let d = load_descriptor(path)?;
    let ctx = core(path, QuantumContext::new(&d))?;
    let sys = core(path, ctx.associativity_system(Execution::default()))?;
    println!("N = {}", sys.essential.len());
    for (i, s) in sys.essential.symbols().iter().enumerate() {
        println!(
            "{} = {}",
            EssentialSet::var_name(i),
            s.render(ctx.lattice())
        );
    }
    Ok(EXIT_OK)
}

pub fn assoc(path: &Path, do_analyze: bool, order: MonomialOrder) -> CliResult {
    let d = load_descriptor(path)?;
    let ctx = core(path, QuantumContext::new(&d))?;
    let sys = core(path, ctx.associativity_system(Execution::default()))?;
    println!("N = {}", sys.essential.len());
    println!("generators = {}", sys.generators.len());
    if do_analyze {
        let a = core(path, analyze(&sys, order, Budget::from_env()))?;
        println!("order = {}", report::order_name(order));
        println!("basis size = {}", a.basis_size);
        println!("steps = {}", a.steps);
        println!("dim A = {}", a.hilbert.dimension);
        println!("deg A = {}", a.hilbert.degree);
    } else {
        for g in &sys.generators {
            println!("  {g}");
        }
    }
    Ok(EXIT_OK)
}

struct Solved {
    ctx: QuantumContext,
    solution: qh_core::pipeline::Solution,
}

fn solve_descriptor(path: &Path, d: &ThreefoldDescriptor) -> Result<Solved, CliError> {
    let ctx = core(path, QuantumContext::new(d))?;
    let sys = core(path, ctx.associativity_system(Execution::default()))?;
    let geom = core(path, build_geometric(d, &ctx, &sys.essential))?;
    let solution = core(path, solve_system(&sys, &geom, Budget::from_env()))?;
    Ok(Solved { ctx, solution })
}

fn present_descriptor(
    path: &Path,
    d: &ThreefoldDescriptor,
) -> Result<QuantumPresentation, CliError> {
    let s = solve_descriptor(path, d)?;
    let mut p = core(
        path,
        quantize_presentation(&s.ctx, &s.solution, Budget::from_env()),
    )?;
    p.name = d.name.clone();
    Ok(p)
}

pub fn solve(path: &Path) -> CliResult {
    let d = load_descriptor(path)?;
    let s = solve_descriptor(path, &d)?;
    for line in s.solution.render(&s.ctx) {
        println!("{line}");
    }
    Ok(EXIT_OK)
}

pub fn present(path: &Path) -> CliResult {
    let d = load_descriptor(path)?;
    print!("{}", present_descriptor(path, &d)?.render());
    Ok(EXIT_OK)
}

pub fn verify(path: &Path, expect: &Path) -> CliResult {
    let d = load_descriptor(path)?;
    let expected = core(expect, ExpectedResults::parse(&read(expect)?))?;
    let ctx = core(path, QuantumContext::new(&d))?;
    let sys = core(path, ctx.associativity_system(Execution::default()))?;
    let mut ok = true;
    let mut check = |label: &str, got: String, want: Option<String>| {
        if let Some(w) = want {
            let pass = got == w;
            ok &= pass;
            println!(
                "{label}: {got} (expected {w}) {}",
                if pass { "ok" } else { "MISMATCH" }
            );
        }
    };
    check(
        "N",
        sys.essential.len().to_string(),
        expected.n.map(|n| n.to_string()),
    );
    if expected.dim.is_some() || expected.deg.is_some() {
        let a = core(
            path,
            analyze(&sys, MonomialOrder::DegRevLex, Budget::from_env()),
        )?;
        check(
            "dimA",
            a.hilbert.dimension.to_string(),
            expected.dim.map(|v| v.to_string()),
        );
        check(
            "degA",
            a.hilbert.degree.to_string(),
            expected.deg.map(|v| v.to_string()),
        );
    }
    if !expected.relations.is_empty() {
        let p = present_descriptor(path, &d)?;
        let rels = core(expect, expected.relations_in(&p.ring))?;
        let v = core(path, verify_against_expected(&p, &rels, Budget::from_env()))?;
        ok &= v.ideal_equal();
        println!(
            "relations: ideal-equal {}, syntactic {}",
            yes_no(v.ideal_equal()),
            yes_no(v.syntactic)
        );
        for (r, inside) in p.relations.iter().zip(&v.computed_in_expected) {
            if !inside {
                println!("  computed relation not in expected ideal: {r}");
            }
        }
        for (r, inside) in rels.iter().zip(&v.expected_in_computed) {
            if !inside {
                println!("  expected relation not in computed ideal: {r}");
            }
        }
    }
    println!("{}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn semisimple(input: &Path, seed: u64, trials: u64) -> CliResult {
    let p = if input.extension().is_some_and(|e| e == "qhp") {
        core(input, QuantumPresentation::parse(&read(input)?))?
    } else {
        let d = load_descriptor(input)?;
        present_descriptor(input, &d)?
    };
    let r = core(
        input,
        generic_semisimplicity(
            &p,
            trials.max(1),
            seed,
            Execution::default(),
            Budget::from_env(),
        ),
    )?;
    for t in &r.trials {
        println!("{}", t.render(p.q_names()));
    }
    println!("verdict: {}", r.verdict);
    Ok(match r.verdict {
        Verdict::Semisimple => EXIT_OK,
        Verdict::InconclusiveLikelyNot => EXIT_INCONCLUSIVE,
    })
}

pub fn all(paths: &[PathBuf], seed: u64, trials: u64, timings: bool) -> CliResult {
    let reports: Vec<RunReport> = Execution::default().map(paths, |p| {
        report::run_report(p, seed, trials.max(1), timings)
    });
    let json = serde_json::to_string_pretty(&reports).expect("report serializes");
    println!("{json}");
    Ok(reports
        .iter()
        .map(|r| r.status.code)
        .find(|&c| c != EXIT_OK)
        .unwrap_or(EXIT_OK))
}
