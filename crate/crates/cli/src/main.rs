use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use ncmaster_core::beta_extension::{verify_beta_noncommutative, verify_fz_commutative};
use ncmaster_core::determinants::verify_det_lemmas;
use ncmaster_core::ks_operators::verify_ks;
use ncmaster_core::lattice_paths::{
    classify, enumerate, phi, phi_inverse, psi_chain, EnumKind, DEFAULT_GUARD,
};
use ncmaster_core::master_engine::{
    explore_minor_commutation, verify_master, verify_quasidet, verify_transport_generators,
    MasterInstance,
};
use ncmaster_core::relations::{
    default_test_points, parse_gamma, MatrixClass, MembershipMode, MembershipOptions,
    DEFAULT_COMPONENT_GUARD,
};
use ncmaster_core::report::{VerificationReport, SCHEMA_VERSION};
use ncmaster_core::word_algebra::{ParamAssignment, ParamUniverse, Word};
use ncmaster_core::{selftest, Error, Rational};

const GUARD_VAR: &str = "NCM_GUARD";

#[derive(Parser)]
#[command(
    name = "ncmaster",
    version,
    about = "Verify MacMahon-type identities in non-commutative matrix algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity and emit a JSON report.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Straighten an o-sequence with phi, or sort a p-sequence back.
    Biject(BijectArgs),
    /// List the sequences of one kind and type.
    Enumerate(EnumerateArgs),
    /// Run the bundled worked examples.
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum Verify {
    /// Sum of G(k) against 1/det(I - A).
    Master(ClassArgs),
    /// The first diagonal entry of (I - A~)^{-1} as a ratio of determinants.
    Quasidet(ClassArgs),
    /// Column swaps, equal columns and Laplace expansion.
    Detlemmas(ClassArgs),
    /// The beta-power identity, modulo the ideal of a unit-weight class.
    Beta(BetaArgs),
    /// The commutative beta-power identity.
    Fz(BetaArgs),
    /// The operator identity for a_ij = z_i delta_ij - z_i b_ij E_i.
    Ks(KsArgs),
    /// Images of the right-quantum generators under the weight transport.
    Transport(TransportArgs),
    /// Exploratory: do determinants of principal minors commute modulo the ideal?
    Minors(ClassArgs),
}

#[derive(Args, Clone)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Points {
    /// Number of instantiation rounds for the parameters.
    #[arg(long, default_value_t = 3)]
    q_points: usize,
    /// Draw test points from this seed instead of the fixed pool.
    #[arg(long)]
    seed: Option<u64>,
    /// Eliminate over Laurent coefficients rather than at test points.
    #[arg(long)]
    symbolic: bool,
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long)]
    class: String,
    /// Parities for the super class, e.g. 1,0.
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Skip the corrupted-identity control.
    #[arg(long)]
    no_control: bool,
    #[command(flatten)]
    points: Points,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BetaArgs {
    #[arg(long, default_value = "right-quantum")]
    class: String,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long)]
    beta: u32,
    #[arg(long)]
    no_control: bool,
    #[command(flatten)]
    points: Points,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct KsArgs {
    #[arg(long)]
    m: usize,
    /// Comma-separated exponents, one per index.
    #[arg(long)]
    k: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TransportArgs {
    #[arg(long, default_value = "qij-right-quantum")]
    target: String,
    #[arg(long)]
    m: usize,
    /// Length of the words padded around each generator.
    #[arg(long, default_value_t = 1)]
    pad: usize,
    #[command(flatten)]
    points: Points,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BijectArgs {
    /// Comma-separated letters, e.g. a12,a21.
    #[arg(long)]
    word: String,
    /// Include every intermediate q-sequence.
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Balanced,
    O,
    P,
    Q,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Comma-separated type vector.
    #[arg(long = "type")]
    type_vector: String,
    /// Rank for the q kind.
    #[arg(long, default_value_t = 0)]
    rank: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long)]
    paper_examples: bool,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Guard(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::UnknownParameter(_)
            | Error::IndexOutOfRange { .. }
            | Error::WrongSequenceKind { .. }
            | Error::Unsupported(_)
            | Error::ZeroParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn guard() -> Result<Option<u128>, Failure> {
    match std::env::var(GUARD_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Failure::Usage(format!(
                "{GUARD_VAR} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(None),
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim().parse().map_err(|_| {
                Failure::Usage(format!("`{s}` is not a comma-separated list of integers"))
            })
        })
        .collect()
}

fn random_points(
    universe: &ParamUniverse,
    rounds: usize,
    seed: u64,
) -> Vec<ParamAssignment<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rounds.max(1))
        .map(|_| {
            let mut point = ParamAssignment::new();
            for p in universe.iter() {
                let value = loop {
                    let num: i64 = rng.gen_range(-40..=40);
                    let den: i64 = rng.gen_range(1..=16);
                    if num != 0 && num.abs() != den {
                        break Rational::new(num.into(), den.into());
                    }
                };
                point.set(p, value).expect("nonzero by construction");
            }
            point
        })
        .collect()
}

fn membership_mode(points: &Points, class: &MatrixClass, m: usize) -> MembershipMode<Rational> {
    let universe = class.universe(m);
    if points.symbolic {
        MembershipMode::Symbolic
    } else if let Some(seed) = points.seed {
        MembershipMode::Points(random_points(&universe, points.q_points, seed))
    } else {
        MembershipMode::Points(default_test_points(&universe, points.q_points.max(1)))
    }
}

fn options() -> Result<MembershipOptions, Failure> {
    let component_guard = match guard()? {
        Some(g) => usize::try_from(g).unwrap_or(usize::MAX),
        None => DEFAULT_COMPONENT_GUARD,
    };
    Ok(MembershipOptions { component_guard })
}

fn class_of(name: &str, gamma: Option<&str>) -> Result<MatrixClass, Failure> {
    let gamma = gamma.map(parse_gamma).transpose()?;
    Ok(MatrixClass::from_name(name, gamma)?)
}

fn instance(
    class: MatrixClass,
    m: usize,
    max_degree: usize,
    points: &Points,
    no_control: bool,
) -> Result<MasterInstance<Rational>, Failure> {
    let mut inst = MasterInstance::new(class.clone(), m, max_degree, points.q_points.max(1));
    inst.mode = membership_mode(points, &class, m);
    inst.enum_guard = guard()?.unwrap_or(DEFAULT_GUARD);
    inst.membership = options()?;
    inst.negative_control = !no_control;
    Ok(inst)
}

fn emit(value: &serde_json::Value, output: &Output) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable report");
    match &output.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure::Other(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_report(mut report: VerificationReport, output: &Output, argv: &[String]) -> Outcome {
    report.command = argv.to_vec();
    let value = serde_json::to_value(&report).expect("serializable report");
    emit(&value, output)?;
    if output.out.is_some() {
        println!(
            "{} {}",
            if report.passed { "PASS" } else { "FAIL" },
            report.verification
        );
    }
    Ok(report.passed)
}

fn run_verify(what: Verify, argv: &[String]) -> Outcome {
    match what {
        Verify::Master(a) => {
            let class = class_of(&a.class, a.gamma.as_deref())?;
            let inst = instance(class, a.m, a.max_degree, &a.points, a.no_control)?;
            emit_report(verify_master(&inst)?, &a.output, argv)
        }
        Verify::Quasidet(a) => {
            let class = class_of(&a.class, a.gamma.as_deref())?;
            let inst = instance(class, a.m, a.max_degree, &a.points, a.no_control)?;
            emit_report(verify_quasidet(&inst)?, &a.output, argv)
        }
        Verify::Minors(a) => {
            let class = class_of(&a.class, a.gamma.as_deref())?;
            let inst = instance(class, a.m, a.max_degree, &a.points, true)?;
            emit_report(explore_minor_commutation(&inst)?, &a.output, argv)
        }
        Verify::Detlemmas(a) => {
            let class = class_of(&a.class, a.gamma.as_deref())?;
            let points = match membership_mode(&a.points, &class, a.m) {
                MembershipMode::Points(p) => p,
                MembershipMode::Symbolic => {
                    return Err(Failure::Usage("detlemmas runs at test points only".into()))
                }
            };
            emit_report(
                verify_det_lemmas(&class, a.m, &points, &options()?)?,
                &a.output,
                argv,
            )
        }
        Verify::Beta(a) => {
            let class = class_of(&a.class, None)?;
            let inst = instance(class, a.m, a.max_degree, &a.points, a.no_control)?;
            emit_report(verify_beta_noncommutative(&inst, a.beta)?, &a.output, argv)
        }
        Verify::Fz(a) => emit_report(
            verify_fz_commutative::<Rational>(a.m, a.max_degree, a.beta)?,
            &a.output,
            argv,
        ),
        Verify::Ks(a) => {
            let k = parse_list(&a.k)?;
            if k.len() != a.m {
                return Err(Failure::Usage(format!(
                    "--k has {} entries but --m is {}",
                    k.len(),
                    a.m
                )));
            }
            emit_report(verify_ks::<Rational>(&k)?, &a.output, argv)
        }
        Verify::Transport(a) => {
            let target = class_of(&a.target, None)?;
            let mode = membership_mode(&a.points, &target, a.m);
            let report = verify_transport_generators(
                &MatrixClass::RightQuantum,
                &target,
                a.m,
                a.pad,
                &mode,
                &options()?,
            )?;
            emit_report(report, &a.output, argv)
        }
    }
}

fn run_biject(a: BijectArgs, argv: &[String]) -> Outcome {
    let w: Word = a.word.parse()?;
    let c = classify(&w);
    let mut value = json!({
        "schema_version": SCHEMA_VERSION,
        "command": argv,
        "input": w.to_string(),
        "kinds": c.kinds().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "rank": c.rank,
    });
    if c.o_sequence {
        let (p, switches) = phi(&w)?;
        value["direction"] = json!("phi");
        value["output"] = json!(p.to_string());
        value["switches"] = json!(switches);
        if a.trace {
            value["trace"] = json!(psi_chain(&w)?
                .iter()
                .map(Word::to_string)
                .collect::<Vec<_>>());
        }
    } else if c.p_sequence {
        let o = phi_inverse(&w)?;
        value["direction"] = json!("phi-inverse");
        value["output"] = json!(o.to_string());
        value["switches"] = json!(c.rank);
    } else {
        return Err(Failure::Usage(format!(
            "{w} is neither an o-sequence nor a p-sequence"
        )));
    }
    emit(&value, &a.output)?;
    Ok(true)
}

fn run_enumerate(a: EnumerateArgs, argv: &[String]) -> Outcome {
    let k = parse_list(&a.type_vector)?;
    let (kind, name) = match a.kind {
        Kind::Balanced => (EnumKind::Balanced, "balanced"),
        Kind::O => (EnumKind::O, "o"),
        Kind::P => (EnumKind::P, "p"),
        Kind::Q => (EnumKind::Q(a.rank), "q"),
    };
    let words = enumerate(kind, &k, guard()?.unwrap_or(DEFAULT_GUARD))?;
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "command": argv,
        "kind": name,
        "rank": matches!(a.kind, Kind::Q).then_some(a.rank),
        "type": k,
        "count": words.len(),
        "words": words.iter().map(Word::to_string).collect::<Vec<_>>(),
    });
    emit(&value, &a.output)?;
    Ok(true)
}

fn run(cli: Cli, argv: &[String]) -> Outcome {
    match cli.command {
        Command::Verify { what } => run_verify(what, argv),
        Command::Biject(a) => run_biject(a, argv),
        Command::Enumerate(a) => run_enumerate(a, argv),
        Command::Selftest(a) => {
            if !a.paper_examples {
                return Err(Failure::Usage("selftest needs --paper-examples".into()));
            }
            emit_report(selftest::worked_examples()?, &a.output, argv)
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, &argv[1..]) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("guard breach: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
