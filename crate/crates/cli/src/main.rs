use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use nql_core::criterion::{assemble_matrix, det_prime_factors, determinant, nondegenerate_eigen, nondegenerate_perm};
use nql_core::group::{abelian_groups_of_order, is_prime};
use nql_core::monomial::{compositions_prime, weight};
use nql_core::witness::{build_prime_certificate, lemma2_counts, select_witness, witness_coefficient};
use nql_core::{AbelianGroup, Composition, EigenAction, Error, PermAction};

use nql_cli::render;
use nql_cli::report::*;

const EXIT_DEGENERATE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FAILURE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "nql", version, about = "Exact nondegeneracy checks for norm maps of finite abelian groups")]
struct Cli {
    /// Output format; csv is only available for `matrix`
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    Perm,
    Eigen,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficient matrix of the regular permutation action, with its determinant
    Matrix {
        /// Group spec such as 5, 2x4 or 2x2x2
        #[arg(long)]
        group: AbelianGroup,
    },
    /// Decide nondegeneracy; exit 0 if nondegenerate, 1 if degenerate
    Check {
        #[arg(long)]
        group: AbelianGroup,
        #[arg(long, value_enum, default_value_t = Basis::Eigen)]
        basis: Basis,
        /// Copies of each character, in element order (eigen basis only)
        #[arg(long, value_delimiter = ',')]
        multiplicities: Option<Vec<usize>>,
    },
    /// Build the case-dispatched witness monomial and compute its coefficient
    Witness {
        #[arg(long)]
        group: AbelianGroup,
        /// Also run the exhaustive diagonal check on the regular eigen-action
        #[arg(long)]
        search: bool,
    },
    /// Counting certificates for a prime order, for one or all compositions
    CertifyPrime {
        #[arg(long)]
        p: u64,
        /// Composition a_0,...,a_{p-1}
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u32>>,
    },
    /// Even zero-sum versus odd v1-sum subsets of F_2^dim
    Lemma2 {
        #[arg(long)]
        dim: u32,
        /// Coordinates of v1 as a 0/1 string, first coordinate first
        #[arg(long)]
        v1: String,
    },
    /// Check every abelian group up to the given order against the prime-or-4 rule
    Sweep {
        #[arg(long)]
        max_order: u64,
        #[arg(long, value_enum, default_value_t = Basis::Eigen)]
        basis: Basis,
    },
}

struct Outcome {
    group: Option<String>,
    representation: Option<Representation>,
    payload: Payload,
    code: u8,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::BoundExceeded { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("NQL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("NQL_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    if cli.format == Format::Csv && !matches!(cli.command, Command::Matrix { .. }) {
        eprintln!("error: csv output is only available for the matrix command");
        return ExitCode::from(EXIT_USAGE);
    }

    let start = Instant::now();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let report = RunReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        group: outcome.group,
        representation: outcome.representation,
        command: std::env::args().skip(1).collect(),
        payload: outcome.payload,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        Format::Csv => render::csv(&report),
        Format::Pretty => render::pretty(&report),
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(outcome.code)
}

fn run(command: &Command) -> nql_core::Result<Outcome> {
    match command {
        Command::Matrix { group } => matrix(group),
        Command::Check { group, basis, multiplicities } => check(group, *basis, multiplicities.as_deref()),
        Command::Witness { group, search } => witness(group, *search),
        Command::CertifyPrime { p, a } => certify_prime(*p, a.as_deref()),
        Command::Lemma2 { dim, v1 } => lemma2(*dim, v1),
        Command::Sweep { max_order, basis } => sweep(*max_order, *basis),
    }
}

fn matrix(group: &AbelianGroup) -> nql_core::Result<Outcome> {
    let action = PermAction::regular(group);
    let m = assemble_matrix(&action)?;
    let det = determinant(&m.to_bigint())?;
    let factors = det_prime_factors(&det)?;
    Ok(Outcome {
        group: Some(group.spec_string()),
        representation: Some(Representation::RegularPerm),
        payload: Payload::Matrix(MatrixPayload::new(&m, det, &factors, |v| action.label(v).to_string())),
        code: 0,
    })
}

fn verdict_code(nondegenerate: bool) -> u8 {
    if nondegenerate {
        0
    } else {
        EXIT_DEGENERATE
    }
}

fn check_verdict(group: &AbelianGroup, basis: Basis) -> nql_core::Result<(VerdictPayload, Representation)> {
    Ok(match basis {
        Basis::Perm => {
            let action = PermAction::regular(group);
            let (m, v) = nondegenerate_perm(&action)?;
            (VerdictPayload::new(&v, m.size(), |i| action.label(i).to_string()), Representation::RegularPerm)
        }
        Basis::Eigen => {
            let action = EigenAction::regular(group);
            let v = nondegenerate_eigen(&action)?;
            (VerdictPayload::new(&v, 0, |i| action.var_label(i)), Representation::RegularEigen)
        }
    })
}

fn check(group: &AbelianGroup, basis: Basis, multiplicities: Option<&[usize]>) -> nql_core::Result<Outcome> {
    let (verdict, representation) = match multiplicities {
        None => check_verdict(group, basis)?,
        Some(_) if basis == Basis::Perm => {
            return Err(Error::InvalidArgument("--multiplicities requires --basis eigen".into()));
        }
        Some(mult) => {
            let action = EigenAction::with_multiplicities(group, mult)?;
            let v = nondegenerate_eigen(&action)?;
            (
                VerdictPayload::new(&v, 0, |i| action.var_label(i)),
                Representation::CustomEigen { multiplicities: mult.to_vec() },
            )
        }
    };
    Ok(Outcome {
        group: Some(group.spec_string()),
        representation: Some(representation),
        code: verdict_code(verdict.nondegenerate),
        payload: Payload::Verdict(verdict),
    })
}

fn witness(group: &AbelianGroup, search: bool) -> nql_core::Result<Outcome> {
    let w = select_witness(group)?;
    let action = w.action();
    let invariant = weight(&w.monomial, &action)?.is_zero();
    let coefficient = witness_coefficient(&w.group, &w.monomial)?;
    let mut payload = WitnessPayload::new(&w, coefficient, invariant);
    if search {
        let v = nondegenerate_eigen(&action)?;
        payload.diagonal_search = Some(VerdictPayload::new(&v, 0, |i| action.var_label(i)));
    }
    let code = if payload.verified_zero {
        0
    } else {
        eprintln!(
            "error: constructed {:?} monomial {} has nonzero coefficient {}",
            w.case,
            w.display(),
            payload.coefficient
        );
        EXIT_FAILURE
    };
    Ok(Outcome {
        group: Some(w.group.spec_string()),
        representation: Some(Representation::RegularEigen),
        payload: Payload::Witness(Box::new(payload)),
        code,
    })
}

/// Exhaustive certification over all compositions stops at this prime.
const MAX_ALL_COMPOSITIONS_PRIME: u64 = 7;

fn certify_prime(p: u64, a: Option<&[u32]>) -> nql_core::Result<Outcome> {
    let compositions = match a {
        Some(parts) => vec![Composition::new(p, parts.to_vec())?],
        None if p > MAX_ALL_COMPOSITIONS_PRIME && is_prime(p) => {
            return Err(Error::InvalidArgument(format!(
                "certifying every composition is limited to p <= {MAX_ALL_COMPOSITIONS_PRIME}; pass --a"
            )));
        }
        None => compositions_prime(p)?,
    };
    let certificates = compositions
        .par_iter()
        .map(build_prime_certificate)
        .collect::<nql_core::Result<Vec<_>>>()?;
    let all_pass = certificates.iter().all(|c| c.checks.all_pass());
    for c in certificates.iter().filter(|c| !c.checks.all_pass()) {
        eprintln!("error: certificate failed for a={:?}: {:?}", c.a, c.checks);
    }
    Ok(Outcome {
        group: Some(p.to_string()),
        representation: Some(Representation::RegularEigen),
        payload: Payload::Certificates(CertificatesPayload { p, all_pass, certificates }),
        code: if all_pass { 0 } else { EXIT_FAILURE },
    })
}

fn parse_bits(bits: &str, dim: u32) -> nql_core::Result<u32> {
    if bits.len() != dim as usize {
        return Err(Error::InvalidArgument(format!("--v1 must have {dim} coordinates, got {bits:?}")));
    }
    bits.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(Error::InvalidArgument(format!("--v1 must be a 0/1 string, got {bits:?}"))),
    })
}

fn lemma2(dim: u32, bits: &str) -> nql_core::Result<Outcome> {
    let v1 = parse_bits(bits, dim)?;
    let counts = lemma2_counts(dim, v1)?;
    let code = if counts.bijection_verified && counts.even_zero == counts.odd_v1 {
        0
    } else {
        EXIT_FAILURE
    };
    Ok(Outcome {
        group: Some(vec!["2"; dim as usize].join("x")),
        representation: None,
        payload: Payload::Lemma2(Lemma2Payload::from(&counts)),
        code,
    })
}

fn sweep(max_order: u64, basis: Basis) -> nql_core::Result<Outcome> {
    if max_order == 0 {
        return Err(Error::InvalidArgument("--max-order must be positive".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=max_order {
        for g in abelian_groups_of_order(n) {
            let (verdict, _) = check_verdict(&g, basis)?;
            let rule = n == 1 || n == 4 || is_prime(n);
            rows.push(SweepRow {
                group: g.spec_string(),
                order: n,
                nondegenerate: verdict.nondegenerate,
                rule_predicts_nondegenerate: rule,
                conforms: rule == verdict.nondegenerate,
                vanishing_monomial: verdict.vanishing_monomial().map(<[Term]>::to_vec),
            });
        }
    }
    let nonconforming = rows.iter().filter(|r| !r.conforms).map(|r| r.group.clone()).collect();
    let representation = match basis {
        Basis::Perm => Representation::RegularPerm,
        Basis::Eigen => Representation::RegularEigen,
    };
    Ok(Outcome {
        group: None,
        representation: Some(representation),
        payload: Payload::Sweep(SweepPayload { max_order, rows, nonconforming }),
        code: 0,
    })
}
