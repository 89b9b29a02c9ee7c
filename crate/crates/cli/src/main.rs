//! Batch command-line front end: scenario ingestion, built-in example
//! scenarios, deterministic reports.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fsets::error::Error;
use fsets::intersect::Verdict;
use fsets::report::*;
use fsets::scenario::Scenario;
use fsets::zfmod::DEFAULT_ENUM_BUDGET;

#[derive(Parser)]
#[command(
    name = "fsets",
    version,
    about = "Exact intersections of subvarieties with finitely generated subgroups over function-field towers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient bound B for enumeration (overrides the scenario value).
    #[arg(long, global = true)]
    bound: Option<i64>,

    /// Exponent cap N for F-set enumeration (overrides the scenario value).
    #[arg(long, global = true)]
    cap: Option<u32>,

    /// Seed for the randomized property suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for the intersection scan.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomials of Frobenius for the scenario curves.
    Charpoly { scenario: String },
    /// Brute-force bounded intersection of the variety with the subgroup.
    Intersect { scenario: String },
    /// Check the scenario certificate against the brute-force intersection.
    Certify { scenario: String },
    /// Companion-recurrence vectors, optionally verified on a scenario curve.
    Recurrence {
        /// Scenario file whose first curve and base point verify the vectors.
        scenario: Option<String>,
        /// Relation polynomial as a lowest-first coefficient list, e.g. "[5, -2, 1]".
        #[arg(long)]
        relation: Option<String>,
    },
    /// Built-in supersingular scenario with certificate and twist identities.
    Example1,
    /// Built-in ordinary scenario with certificate.
    Example2,
    /// Built-in recurrence demonstration.
    Example3,
    /// Seeded invariant suites.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 64,
        Error::Validation(_)
        | Error::InvalidArgument(_)
        | Error::InvalidPrime(_)
        | Error::NotPrimePower { .. }
        | Error::MixedCurve
        | Error::GroupMismatch
        | Error::ModulusMismatch
        | Error::DimensionMismatch { .. }
        | Error::UnsupportedCoordinate(_)
        | Error::UnsupportedShape(_)
        | Error::InvalidRelation(_) => 65,
        Error::BudgetExceeded { .. } | Error::ResourceLimit(_) => 69,
        Error::DivisionByZero => 70,
    }
}

fn load_scenario(path: &str) -> Result<Scenario, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    Scenario::from_json(&text)
}

fn emit<T: serde::Serialize>(cli: &Cli, report: &T, text: String) {
    match cli.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("serializable report")
            );
        }
        Format::Text => print!("{text}"),
    }
}

fn charpoly_report(sc: &Scenario) -> Result<CharPolyReport, Error> {
    let q = sc.descriptor.q();
    let mut curves = Vec::new();
    for c in sc.descriptor.curves() {
        let count = fsets::frob::count_points(c, q)?;
        let h = fsets::frob::char_poly_frobenius(c, q)?;
        curves.push(CharPolyEntry {
            a4: c.a4().value() as i64,
            a6: c.a6().value() as i64,
            point_count: count,
            trace: q as i64 + 1 - count as i64,
            char_poly: (0..=h.degree())
                .map(|i| h.coeff_i64(i).expect("small coefficients"))
                .collect(),
        });
    }
    let relation = fsets::frob::minimal_poly_on_group(&sc.descriptor)?;
    Ok(CharPolyReport {
        command: "charpoly",
        scenario: sc.name.clone(),
        q,
        curves,
        group_relation: relation.coeffs().iter().map(|c| c.to_string()).collect(),
    })
}

fn intersect_report(cli: &Cli, sc: &Scenario) -> Result<IntersectReport, Error> {
    let bound = cli.bound.unwrap_or(sc.bound);
    let result = fsets::intersect::brute_intersect(
        &sc.variety,
        &sc.gamma,
        bound,
        DEFAULT_ENUM_BUDGET,
        cli.threads.max(1),
    )?;
    Ok(IntersectReport::new(&sc.name, &result))
}

fn certify_report(cli: &Cli, sc: &Scenario) -> Result<(CertifyReport, Verdict), Error> {
    let cert = sc
        .certificate
        .as_ref()
        .ok_or_else(|| Error::Validation("scenario carries no certificate".into()))?;
    let cert = fsets::intersect::Certificate {
        claimed: fsets::fset::FSetUnion {
            groupless: cert.claimed.groupless.clone(),
            generalized: cert.claimed.generalized.clone(),
            pseudo: cert.claimed.pseudo.clone(),
        },
        cap: cli.cap.unwrap_or(cert.cap),
        bound: cli.bound.unwrap_or(cert.bound),
    };
    let report = fsets::intersect::check_certificate(
        &sc.variety,
        &sc.gamma,
        &cert,
        DEFAULT_ENUM_BUDGET,
        cli.threads.max(1),
    )?;
    let verdict = report.verdict;
    Ok((CertifyReport::new(&sc.name, &report), verdict))
}

fn verdict_exit(verdict: Verdict) -> ExitCode {
    match verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => ExitCode::from(2),
        Verdict::PassBounded => ExitCode::from(3),
    }
}

fn identity_out(report: &fsets::intersect::TwistIdentityReport) -> Vec<IdentityCheckOut> {
    report
        .checks
        .iter()
        .map(|c| IdentityCheckOut {
            n: c.n,
            scalar: c.scalar,
            torus_direct: c.torus_direct,
            elliptic_direct: c.elliptic_direct,
            elliptic_via_relation: c.elliptic_via_relation,
        })
        .collect()
}

fn recurrence_out(
    relation: &fsets::intpoly::IntPoly,
    cap: u64,
    verify: Option<&fsets::intersect::RecurrenceReport>,
) -> RecurrenceOut {
    RecurrenceOut {
        command: "recurrence",
        relation: relation.coeffs().iter().map(|c| c.to_string()).collect(),
        cap,
        vectors: fsets::intersect::example3_intersection(relation, cap)
            .into_iter()
            .map(|v| v.into_iter().map(|c| c.to_string()).collect())
            .collect(),
        verified: verify.map(|r| RecurrenceVerifyOut {
            ok: r.ok,
            generic_proof: r.generic_proof,
            direct_up_to: r.direct_up_to,
            reduction_places: r.reduction_places,
            failures: r.failures.clone(),
        }),
    }
}

fn run_example(cli: &Cli, which: u8) -> Result<ExitCode, Error> {
    let sc = match which {
        1 => fsets::examples::example1()?,
        _ => fsets::examples::example2()?,
    };
    let charpoly = charpoly_report(&sc)?;
    let intersect = intersect_report(cli, &sc)?;
    let (certify, verdict) = certify_report(cli, &sc)?;
    let mut ok = verdict == Verdict::Pass;

    let (even, odd) = if which == 1 {
        let cap = cli.cap.unwrap_or(fsets::examples::DEFAULT_CAP);
        let (even, odd) = fsets::examples::example1_twist_identities(cap)?;
        ok &= even.ok && odd.ok;
        (Some(identity_out(&even)), Some(identity_out(&odd)))
    } else {
        (None, None)
    };

    let recurrence = if which == 2 {
        let curve = sc.descriptor.curves()[0];
        let tower = sc.descriptor.tower().clone();
        let base = fsets::group::curve::ECPoint::generic(curve, &tower)?;
        let h = fsets::examples::example3_relation();
        let report = fsets::intersect::verify_recurrence(&curve, &base, &h, 25, 5)?;
        ok &= report.ok;
        Some(recurrence_out(&h, 8, Some(&report)))
    } else {
        None
    };

    let report = ExampleReport {
        command: if which == 1 { "example1" } else { "example2" },
        scenario: sc.name.clone(),
        intersect,
        certify: Some(certify),
        charpoly,
        even_identity: even,
        odd_identity: odd,
        recurrence,
        ok,
    };
    let text = report.render_text();
    emit(cli, &report, text);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Charpoly { scenario } => {
            let sc = load_scenario(scenario)?;
            let report = charpoly_report(&sc)?;
            let text = report.render_text();
            emit(cli, &report, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Intersect { scenario } => {
            let sc = load_scenario(scenario)?;
            let report = intersect_report(cli, &sc)?;
            let text = report.render_text();
            emit(cli, &report, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { scenario } => {
            let sc = load_scenario(scenario)?;
            let (report, verdict) = certify_report(cli, &sc)?;
            let text = report.render_text();
            emit(cli, &report, text);
            Ok(verdict_exit(verdict))
        }
        Command::Recurrence { scenario, relation } => {
            let h = match relation {
                Some(text) => {
                    let coeffs: Vec<i64> = serde_json::from_str(text)
                        .map_err(|e| Error::Parse(format!("relation list: {e}")))?;
                    fsets::intpoly::IntPoly::from_i64(&coeffs)?
                }
                None => fsets::examples::example3_relation(),
            };
            let cap = cli.cap.map(u64::from).unwrap_or(8);
            let verify = match scenario {
                None => None,
                Some(path) => {
                    let sc = load_scenario(path)?;
                    let curve = *sc.descriptor.curves().first().ok_or_else(|| {
                        Error::Validation("scenario has no elliptic factor".into())
                    })?;
                    let base = sc
                        .gamma
                        .generators()
                        .iter()
                        .flat_map(|g| g.elliptic().iter())
                        .find(|p| !p.is_infinity())
                        .cloned()
                        .ok_or_else(|| {
                            Error::Validation("no affine elliptic generator part".into())
                        })?;
                    Some(fsets::intersect::verify_recurrence(
                        &curve,
                        &base,
                        &h,
                        cap,
                        sc.descriptor.q(),
                    )?)
                }
            };
            let all_ok = verify.as_ref().map(|r| r.ok).unwrap_or(true);
            let report = recurrence_out(&h, cap, verify.as_ref());
            let text = report.render_text();
            emit(cli, &report, text);
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Example1 => run_example(cli, 1),
        Command::Example2 => run_example(cli, 2),
        Command::Example3 => {
            let h = fsets::examples::example3_relation();
            let sc = fsets::examples::example2()?;
            let curve = sc.descriptor.curves()[0];
            let tower = sc.descriptor.tower().clone();
            let base = fsets::group::curve::ECPoint::generic(curve, &tower)?;
            let verify = fsets::intersect::verify_recurrence(&curve, &base, &h, 25, 5)?;
            let ok = verify.ok;
            let report = recurrence_out(&h, cli.cap.map(u64::from).unwrap_or(8), Some(&verify));
            let text = report.render_text();
            emit(cli, &report, text);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Selftest => {
            let seed = cli.seed.unwrap_or(fsets::selftest::DEFAULT_SEED);
            let suites = fsets::selftest::run_all(seed)?;
            let report = SelftestReport::new(seed, &suites);
            let ok = report.ok;
            let text = report.render_text();
            emit(cli, &report, text);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}
