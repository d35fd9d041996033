//! `ncimc`: runs L-function, class, Iwasawa and connecting-map computations
//! on instance files and prints canonical records.
//!
//! Exit status: 0 when every check passes, 1 on a failed check, 2 on input
//! errors.

mod input;
mod record;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ncimc_core::iwasawa::{coker_tower, kernel_chain_report, limit_module, mc_report};
use ncimc_core::ratfunc::compare_series;
use ncimc_core::relative_k::{block_reduction, d_connecting, verify_d_multiplicative};
use ncimc_core::suite::instance_checks;
use ncimc_core::{
    derived_cohomology, euler_product, fitting_ideal, fixtures, ncl_evaluate, ncl_from_points,
    trace_formula_l, Check, Error, PolyRing,
};
use rayon::prelude::*;

use input::{load_instance, parse_matrix, parse_poly_matrix, ring_from_flags, InputError};
use record::{render, Format, Recorder, ResultRecord, Verdict};

#[derive(Parser)]
#[command(name = "ncimc", version, about = "Exact L-functions, K1 classes and Fitting ideals over finite fields")]
struct Cli {
    /// residue characteristic of the coefficients
    #[arg(long, global = true)]
    ell: Option<u64>,
    /// coefficients modulo ell^m
    #[arg(long, global = true)]
    m: Option<u32>,
    /// number of T-adic coefficients
    #[arg(long, global = true, default_value_t = 32)]
    precision: usize,
    /// instance file, or the name of a shipped fixture
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// worker threads for independent checks
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// classical L-functions
    Lfun {
        #[command(subcommand)]
        cmd: LfunCmd,
    },
    /// the K1 L-class
    Ncl {
        #[command(subcommand)]
        cmd: NclCmd,
    },
    /// Iwasawa limits and the commutative main conjecture
    Imc {
        #[command(subcommand)]
        cmd: ImcCmd,
    },
    /// the connecting homomorphism d
    Kconnect {
        #[command(subcommand)]
        cmd: KconnectCmd,
    },
    /// batch runs
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand)]
enum LfunCmd {
    /// Euler product over closed points, optionally twisted by a stored representation
    Euler {
        #[arg(long)]
        rep: Option<String>,
    },
    /// alternating product of Frobenius determinants on cohomology
    Trace,
    /// trace formula against the Euler product
    Check,
}

#[derive(Subcommand)]
enum NclCmd {
    /// the class as a product of local factors
    Compute,
    /// evaluation at stored representations
    Evaluate {
        #[arg(long)]
        rep: Option<String>,
    },
    /// interpolation, quotient, twist and Artin checks
    Verify,
}

#[derive(Subcommand)]
enum ImcCmd {
    /// the tower of cokernels and its limit
    Limit {
        #[arg(long)]
        phi: String,
    },
    /// Fitting ideal of the limit and det(Id - T Phi)
    Fitting {
        #[arg(long)]
        phi: String,
    },
    /// Fitting ideal against det(Id - T Phi) in both completions
    Verify {
        #[arg(long)]
        phi: String,
    },
}

#[derive(Subcommand)]
enum KconnectCmd {
    /// class of the cokernel of a matrix over Omega[T]
    D {
        #[arg(long)]
        alpha: String,
    },
    /// multiplicativity and the block-cyclic reduction
    Verify {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// every check on every shipped fixture, with a summary
    Run,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(records) => {
            print!("{}", render(&records, cli.format));
            if records.iter().any(|r| r.verdict == Verdict::Fail) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("ncimc: {e}");
            ExitCode::from(e.status())
        }
    }
}

fn run(cli: &Cli) -> Result<Vec<ResultRecord>, InputError> {
    let n = cli.precision;
    match &cli.group {
        Group::Lfun { cmd } => {
            let (text, inst) = load_instance(cli.fixture.as_deref(), cli.ell, cli.m)?;
            let cov = &inst.covering;
            let ring = &cov.ring;
            let t = Instant::now();
            match cmd {
                LfunCmd::Euler { rep } => {
                    let mut rec = Recorder::new("lfun euler", &text);
                    let twist = match rep {
                        Some(name) => Some(
                            inst.rep(name)
                                .ok_or_else(|| InputError::Usage(format!("no representation named {name}")))?,
                        ),
                        None => None,
                    };
                    rec.value("euler", euler_product(cov, &inst.sheaf, twist, n).render(ring), t);
                    Ok(rec.records)
                }
                LfunCmd::Trace => {
                    let mut rec = Recorder::new("lfun trace", &text);
                    let coh = inst
                        .cohomology
                        .clone()
                        .unwrap_or_else(|| derived_cohomology(cov, &inst.sheaf, None));
                    rec.value("trace", trace_formula_l(ring, &coh).render(ring), t);
                    Ok(rec.records)
                }
                LfunCmd::Check => {
                    if cov.points.is_empty() {
                        return Err(InputError::Usage("the instance lists no points".into()));
                    }
                    let mut rec = Recorder::new("lfun check", &text);
                    let euler = euler_product(cov, &inst.sheaf, None, n);
                    let mut sources = vec![("derived", derived_cohomology(cov, &inst.sheaf, None))];
                    if let Some(c) = &inst.cohomology {
                        sources.push(("stored", c.clone()));
                    }
                    for (name, coh) in sources {
                        let t = Instant::now();
                        let rf = trace_formula_l(ring, &coh);
                        let pass = compare_series(ring, &rf, &euler, n);
                        let check = Check::new(
                            format!("trace formula {name}"),
                            rf.expand(ring, n).render(ring),
                            euler.render(ring),
                            pass,
                        );
                        rec.check(check, t);
                    }
                    Ok(rec.records)
                }
            }
        }
        Group::Ncl { cmd } => {
            let (text, inst) = load_instance(cli.fixture.as_deref(), cli.ell, cli.m)?;
            let cov = &inst.covering;
            let t = Instant::now();
            match cmd {
                NclCmd::Compute => {
                    let mut rec = Recorder::new("ncl compute", &text);
                    rec.value("class", ncl_from_points(cov, &inst.sheaf)?.render(), t);
                    Ok(rec.records)
                }
                NclCmd::Evaluate { rep } => {
                    let mut rec = Recorder::new("ncl evaluate", &text);
                    let class = ncl_from_points(cov, &inst.sheaf)?;
                    let chosen: Vec<_> = inst
                        .reps
                        .iter()
                        .filter(|r| rep.as_ref().is_none_or(|name| &r.name == name))
                        .collect();
                    if chosen.is_empty() {
                        return Err(InputError::Usage("no matching representation".into()));
                    }
                    for r in chosen {
                        let t = Instant::now();
                        let value = ncl_evaluate(&class, &r.rep)?.render(&cov.ring);
                        rec.value(&format!("evaluate {}", r.name), value, t);
                    }
                    Ok(rec.records)
                }
                NclCmd::Verify => {
                    let mut rec = Recorder::new("ncl verify", &text);
                    for c in instance_checks(&inst, n)? {
                        rec.check(c, t);
                    }
                    Ok(rec.records)
                }
            }
        }
        Group::Imc { cmd } => {
            let ring = ring_from_flags(cli.fixture.as_deref(), cli.ell, cli.m)?;
            let (label, phi_text) = match cmd {
                ImcCmd::Limit { phi } => ("imc limit", phi),
                ImcCmd::Fitting { phi } => ("imc fitting", phi),
                ImcCmd::Verify { phi } => ("imc verify", phi),
            };
            let phi = parse_matrix(&ring, phi_text)?;
            let key = format!("ell={} m={} minpoly={:?} phi={phi_text}", ring.ell(), ring.m(), ring.minpoly());
            let mut rec = Recorder::new(label, &key);
            let t = Instant::now();
            match cmd {
                ImcCmd::Limit { .. } => {
                    let tower = coker_tower(&ring, &phi, 4)?;
                    for layer in &tower.layers {
                        rec.value(&format!("layer {}", layer.n), format!("{:?}", layer.invariants), t);
                    }
                    rec.value("stabilization", tower.stabilization.to_string(), t);
                    rec.value("limit", limit_module(&ring, &phi)?.describe(&ring), t);
                    let kernels = kernel_chain_report(&ring, &phi, 4)?;
                    rec.value("kernels", format!("{:?}", kernels.kernel_log_sizes), t);
                }
                ImcCmd::Fitting { .. } => {
                    let module = limit_module(&ring, &phi)?;
                    rec.value("fitting", fitting_ideal(&ring, &module).render(&ring), t);
                    rec.value("char", ncimc_core::char_element(&ring, &phi).render(&ring), t);
                }
                ImcCmd::Verify { .. } => {
                    let report = mc_report(&ring, &phi, n)?;
                    let principal = format!("({})", report.char_element.render(&ring));
                    rec.check(Check::new("main conjecture", report.fitting.render(&ring), principal, report.holds()), t);
                    if let Some(u) = &report.certificate {
                        rec.value("unit", u.render(&ring), t);
                    }
                    let t = Instant::now();
                    let kernels = kernel_chain_report(&ring, &phi, 4)?;
                    rec.check(
                        Check::new("kernel chain", format!("{:?}", kernels.kernel_log_sizes), "lim = 0", kernels.confirmed()),
                        t,
                    );
                    let tower = coker_tower(&ring, &phi, 4)?;
                    let sizes: Vec<u32> = tower.layers.iter().map(|l| l.log_size).collect();
                    let surjective = tower.transitions_surjective.iter().all(|&b| b);
                    rec.check(Check::new("tower surjective", format!("{sizes:?}"), "surjective", surjective), t);
                }
            }
            Ok(rec.records)
        }
        Group::Kconnect { cmd } => {
            let ring = ring_from_flags(cli.fixture.as_deref(), cli.ell, cli.m)?;
            let key = |s: &str| format!("ell={} m={} minpoly={:?} {s}", ring.ell(), ring.m(), ring.minpoly());
            let t = Instant::now();
            match cmd {
                KconnectCmd::D { alpha } => {
                    let mut rec = Recorder::new("kconnect d", &key(alpha));
                    let a = parse_poly_matrix(&ring, alpha)?;
                    rec.value("d", d_connecting(&ring, &a)?.render(&ring), t);
                    Ok(rec.records)
                }
                KconnectCmd::Verify { alpha, beta, blocks } => {
                    let mut rec = Recorder::new("kconnect verify", &key(&format!("{alpha} {beta:?} {blocks}")));
                    let a = parse_poly_matrix(&ring, alpha)?;
                    let da = d_connecting(&ring, &a)?;
                    rec.value("d", da.render(&ring), t);
                    if let Some(beta) = beta {
                        let b = parse_poly_matrix(&ring, beta)?;
                        let t = Instant::now();
                        let pass = verify_d_multiplicative(&ring, &a, &b, n)?;
                        let db = d_connecting(&ring, &b)?;
                        let pr = PolyRing::new(ring.clone());
                        let dba = d_connecting(&ring, &ncimc_core::matrix::mul(&pr, &b, &a))?;
                        rec.check(
                            Check::new("multiplicative", dba.render(&ring), db.mul(&ring, &da).render(&ring), pass),
                            t,
                        );
                    }
                    if *blocks == 0 {
                        return Err(InputError::Usage("--blocks must be positive".into()));
                    }
                    let t = Instant::now();
                    let pr = PolyRing::new(ring.clone());
                    let red = block_reduction(&pr, &a, *blocks);
                    let render_m = |m: &ncimc_core::Matrix<ncimc_core::Poly>| {
                        let rows: Vec<String> = (0..m.rows())
                            .map(|i| {
                                let cells: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).render(&ring)).collect();
                                format!("[{}]", cells.join(", "))
                            })
                            .collect();
                        format!("[{}]", rows.join(", "))
                    };
                    rec.check(
                        Check::new(
                            format!("block reduction b={blocks}"),
                            render_m(&red.reduced),
                            if red.diagonal_form { "diagonal" } else { "not diagonal" },
                            red.holds(),
                        ),
                        t,
                    );
                    Ok(rec.records)
                }
            }
        }
        Group::Suite { cmd: SuiteCmd::Run } => suite_run(cli),
    }
}

fn suite_run(cli: &Cli) -> Result<Vec<ResultRecord>, InputError> {
    let n = cli.precision;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.parallel.max(1))
        .build()
        .map_err(|e| InputError::Usage(e.to_string()))?;
    let results: Vec<Result<(String, Vec<ResultRecord>), InputError>> = pool.install(|| {
        fixtures::COVERINGS
            .par_iter()
            .map(|(name, text)| {
                let inst = ncimc_core::Instance::parse(text)?;
                let mut rec = Recorder::new("suite run", text);
                let t = Instant::now();
                for c in instance_checks(&inst, n)? {
                    let named = Check::new(format!("{name} {}", c.name), c.left, c.right, c.pass);
                    rec.check(named, t);
                }
                Ok((name.to_string(), rec.records))
            })
            .collect()
    });
    let mut records = Vec::new();
    let mut summary = Vec::new();
    for r in results {
        let (name, recs) = r?;
        let passed = recs.iter().filter(|r| r.verdict == Verdict::Pass).count();
        summary.push((name, passed, recs.len()));
        records.extend(recs);
    }
    let worked = ncimc_core::CoeffRing::integers(3, 2)?;
    let phi = parse_matrix(&worked, "[[4]]")?;
    let t = Instant::now();
    let report = mc_report(&worked, &phi, n)?;
    let mut rec = Recorder::new("suite run", "ell=3 m=2 phi=[[4]]");
    rec.check(
        Check::new(
            "imc worked",
            report.fitting.render(&worked),
            format!("({})", report.char_element.render(&worked)),
            report.holds(),
        ),
        t,
    );
    summary.push(("imc".into(), rec.records.iter().filter(|r| r.verdict == Verdict::Pass).count(), 1));
    records.extend(rec.records);
    let mut table = Recorder::new("suite run", "summary");
    let width = summary.iter().map(|(n, _, _)| n.len()).max().unwrap_or(0);
    for (name, passed, total) in &summary {
        table.value("summary", format!("{name:<width$}  {passed:>4} / {total}"), Instant::now());
    }
    records.extend(table.records);
    Ok(records)
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Core(e)
    }
}
