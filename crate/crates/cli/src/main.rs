//! Command-line front end for the KD distribution toolkit.
//!
//! Exit codes: 0 success (for `classify`: KD-positive), 1 failed verification,
//! 2 invalid input or usage, 3 real-but-not-positive, 4 complex.

use clap::{Parser, Subcommand};
use kdft::decompose;
use kdft::dft::{
    classify, is_density, kd_distribution, kd_distribution_direct, DftContext, KdClass,
    KdDistribution, ToleranceConfig, DEFAULT_DIM_CAP,
};
use kdft::io::{fmt_sig, kd_csv, read_matrix_json, write_matrix_json, MatrixJson};
use kdft::kdreal::{self, BasisKind};
use kdft::matrix::HermitianOperator;
use kdft::numtheory;
use kdft::pure_states;
use kdft::Error;
use num_complex::Complex64;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kdft", version, about = "KD quasiprobability distributions under discrete Fourier transition matrices")]
struct Cli {
    /// Classification tolerance (entrywise)
    #[arg(long, global = true, default_value_t = 1e-10)]
    eps: f64,

    /// Seed for the randomized checks in `verify`
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Emit JSON instead of text/CSV where both exist
    #[arg(long, global = true)]
    json: bool,

    /// Write the primary output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,

    /// Dimension cap (overrides the KD_DFT_DIM_CAP environment variable)
    #[arg(long, global = true, value_name = "N")]
    dim_cap: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number-theory profile of d: divisors, tau, phi, Moebius, gcd-sum
    Nt { d: u64 },
    /// Transition matrix for dimension d, as matrix JSON
    Dft { d: usize },
    /// KD distribution of an operator (matrix JSON file, or - for stdin)
    Kd {
        #[arg(long, value_name = "FILE")]
        input: String,
        /// Use the entrywise definitional route instead of the matrix form
        #[arg(long)]
        direct: bool,
    },
    /// Classify the KD distribution of an operator; exit code encodes the class
    Classify {
        #[arg(long, value_name = "FILE")]
        input: String,
    },
    /// Pure KD-positive state descriptors (with vectors under --full)
    PureStates {
        d: usize,
        #[arg(long)]
        full: bool,
    },
    /// Constraint classes of the KD-real subspace
    Partition { d: usize },
    /// Dimension of the KD-real subspace (gcd-sum; --oracle cross-checks)
    KdrealDim {
        d: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Hermitian basis of the KD-real subspace, as JSON
    KdrealBasis { d: usize },
    /// Decompose a KD-real Hermitian operator into projector weights
    Decompose {
        #[arg(long, value_name = "FILE")]
        input: String,
        /// Use the least-squares route over the full catalog
        #[arg(long)]
        least_squares: bool,
    },
    /// Run built-in self checks up to dimension --max-d
    Verify {
        #[arg(long, default_value_t = 12)]
        max_d: usize,
    },
}

fn dim_cap(cli: &Cli) -> usize {
    cli.dim_cap
        .or_else(|| {
            std::env::var("KD_DFT_DIM_CAP")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_DIM_CAP)
}

fn context(cli: &Cli, d: usize) -> Result<DftContext<f64>, Error> {
    DftContext::with_cap(d, dim_cap(cli))
}

fn tolerances(cli: &Cli) -> Result<ToleranceConfig<f64>, Error> {
    let def = ToleranceConfig::<f64>::default();
    ToleranceConfig::new(cli.eps, def.eps_residual, def.eps_unitary)
}

fn read_input(path: &str) -> Result<kdft::CMatrix64, Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Json(serde_json::Error::io(e)))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Json(serde_json::Error::io(e)))?
    };
    read_matrix_json(&text)
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pair(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

fn distribution_json(q: &KdDistribution<f64>) -> serde_json::Value {
    serde_json::json!({
        "d": q.dim(),
        "q": MatrixJson::from_matrix(q.matrix()),
        "row_marginals": q.row_marginals().iter().map(|&z| pair(z)).collect::<Vec<_>>(),
        "col_marginals": q.col_marginals().iter().map(|&z| pair(z)).collect::<Vec<_>>(),
        "total": pair(q.total()),
    })
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.cmd {
        Cmd::Nt { d } => {
            let d = *d;
            let tau = numtheory::tau(d)?;
            let phi = numtheory::phi(d)?;
            let mobius = numtheory::mobius(d)?;
            let gcd_sum = numtheory::gcd_sum(d)?;
            let divisors = numtheory::divisors(d)?;
            let text = if cli.json {
                serde_json::to_string_pretty(&serde_json::json!({
                    "d": d, "tau": tau, "phi": phi, "mobius": mobius,
                    "gcd_sum": gcd_sum, "divisors": divisors,
                }))
                .expect("serializes")
                    + "\n"
            } else {
                format!(
                    "d = {d}\ntau = {tau}\nphi = {phi}\nmobius = {mobius}\n\
                     gcd_sum = {gcd_sum}\ndivisors = {}\n",
                    divisors
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            };
            emit(cli, &text).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Dft { d } => {
            let ctx = context(cli, *d)?;
            emit(cli, &(write_matrix_json(ctx.matrix()) + "\n")).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Kd { input, direct } => {
            let f = read_input(input)?;
            let ctx = context(cli, f.dim())?;
            let q = if *direct {
                kd_distribution_direct(&f, &ctx)?
            } else {
                kd_distribution(&f, &ctx)?
            };
            let text = if cli.json {
                serde_json::to_string_pretty(&distribution_json(&q)).expect("serializes") + "\n"
            } else {
                kd_csv(&q)
            };
            emit(cli, &text).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Classify { input } => {
            let f = read_input(input)?;
            let ctx = context(cli, f.dim())?;
            let tol = tolerances(cli)?;
            let q = kd_distribution(&f, &ctx)?;
            let c = classify(&q, &tol);
            let density = is_density(&f, &tol);
            let (label, code) = match c.class {
                KdClass::Positive => ("positive", 0u8),
                KdClass::RealNotPositive => ("real-not-positive", 3),
                KdClass::Complex => ("complex", 4),
            };
            let text = if cli.json {
                let witness = c.witness.map(|w| {
                    serde_json::json!({"j": w.row, "k": w.col, "value": pair(w.value)})
                });
                serde_json::to_string_pretty(&serde_json::json!({
                    "class": label,
                    "witness": witness,
                    "is_density": density,
                }))
                .expect("serializes")
                    + "\n"
            } else {
                match c.witness {
                    Some(w) => format!(
                        "{label} (witness j={}, k={}, value={}{}{}i); density: {density}\n",
                        w.row,
                        w.col,
                        fmt_sig(w.value.re),
                        if w.value.im < 0.0 { "" } else { "+" },
                        fmt_sig(w.value.im),
                    ),
                    None => format!("{label}; density: {density}\n"),
                }
            };
            emit(cli, &text).map_err(io_err)?;
            Ok(code)
        }
        Cmd::PureStates { d, full } => {
            let ctx = context(cli, *d)?;
            let text = if *full || cli.json {
                let states: Vec<serde_json::Value> = pure_states::catalog(&ctx)?
                    .iter()
                    .map(|s| {
                        let desc = s.descriptor;
                        let mut obj = serde_json::json!({
                            "d1": desc.d1(), "d2": desc.d2(), "j": desc.j(), "k": desc.k(),
                        });
                        if *full {
                            obj["vector"] = serde_json::json!(s
                                .vector
                                .iter()
                                .map(|&z| pair(z))
                                .collect::<Vec<_>>());
                        }
                        obj
                    })
                    .collect();
                serde_json::to_string_pretty(&states).expect("serializes") + "\n"
            } else {
                let mut out = String::from("d1,d2,j,k\n");
                for desc in pure_states::enumerate_descriptors(*d)? {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        desc.d1(),
                        desc.d2(),
                        desc.j(),
                        desc.k()
                    ));
                }
                out
            };
            emit(cli, &text).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Partition { d } => {
            let classes = kdreal::partition(*d)?;
            let text = if cli.json {
                let list: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "n": c.n, "anchor": c.anchor, "size": c.size(),
                            "members": c.members,
                        })
                    })
                    .collect();
                serde_json::to_string_pretty(&list).expect("serializes") + "\n"
            } else {
                let mut out = String::from("n,anchor,size,members\n");
                for c in &classes {
                    let members = c
                        .members
                        .iter()
                        .map(|(r, k)| format!("{r}:{k}"))
                        .collect::<Vec<_>>()
                        .join(";");
                    out.push_str(&format!("{},{},{},{}\n", c.n, c.anchor, c.size(), members));
                }
                out
            };
            emit(cli, &text).map_err(io_err)?;
            Ok(0)
        }
        Cmd::KdrealDim { d, oracle } => {
            let gcd_sum = numtheory::gcd_sum(*d as u64)?;
            let oracle_dim = if *oracle {
                let ctx = context(cli, *d)?;
                Some(kdreal::dim_oracle(&ctx)?)
            } else {
                None
            };
            let agree = oracle_dim.map(|o| o as u64 == gcd_sum);
            let text = if cli.json {
                serde_json::to_string_pretty(&serde_json::json!({
                    "d": d, "gcd_sum": gcd_sum, "oracle": oracle_dim, "agree": agree,
                }))
                .expect("serializes")
                    + "\n"
            } else {
                let mut out = format!("d = {d}\ngcd_sum = {gcd_sum}\n");
                if let Some(o) = oracle_dim {
                    out.push_str(&format!("oracle = {o}\n"));
                }
                out
            };
            emit(cli, &text).map_err(io_err)?;
            Ok(if agree == Some(false) { 1 } else { 0 })
        }
        Cmd::KdrealBasis { d } => {
            let basis = kdreal::hermitian_basis::<f64>(*d)?;
            let list: Vec<serde_json::Value> = basis
                .iter()
                .map(|el| {
                    let kind = match el.kind {
                        BasisKind::Diagonal { k } => serde_json::json!({"kind": "diagonal", "k": k}),
                        BasisKind::SelfConjugate { anchor } => {
                            serde_json::json!({"kind": "self-conjugate", "anchor": anchor})
                        }
                        BasisKind::Symmetric { n, anchor } => {
                            serde_json::json!({"kind": "symmetric", "n": n, "anchor": anchor})
                        }
                        BasisKind::Antisymmetric { n, anchor } => {
                            serde_json::json!({"kind": "antisymmetric", "n": n, "anchor": anchor})
                        }
                    };
                    serde_json::json!({"label": kind, "matrix": MatrixJson::from_matrix(&el.matrix)})
                })
                .collect();
            emit(
                cli,
                &(serde_json::to_string_pretty(&list).expect("serializes") + "\n"),
            )
            .map_err(io_err)?;
            Ok(0)
        }
        Cmd::Decompose {
            input,
            least_squares,
        } => {
            let f = HermitianOperator::new(read_input(input)?)?;
            let ctx = context(cli, f.dim())?;
            let tol = tolerances(cli)?;
            let dec = if *least_squares {
                decompose::least_squares(&f, &ctx)?
            } else {
                decompose::constructive(&f, &ctx, &tol)?
            };
            let text = if cli.json {
                let terms: Vec<serde_json::Value> = dec
                    .terms
                    .iter()
                    .map(|(desc, w)| {
                        serde_json::json!({
                            "d1": desc.d1(), "d2": desc.d2(), "j": desc.j(), "k": desc.k(),
                            "weight": w,
                        })
                    })
                    .collect();
                serde_json::to_string_pretty(&serde_json::json!({
                    "terms": terms,
                    "residual": dec.residual,
                    "coefficient_sum": dec.coefficient_sum,
                }))
                .expect("serializes")
                    + "\n"
            } else {
                let mut out = String::from("d1,d2,j,k,weight\n");
                for (desc, w) in &dec.terms {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        desc.d1(),
                        desc.d2(),
                        desc.j(),
                        desc.k(),
                        fmt_sig(*w)
                    ));
                }
                eprintln!("residual = {}", fmt_sig(dec.residual));
                eprintln!("coefficient_sum = {}", fmt_sig(dec.coefficient_sum));
                out
            };
            emit(cli, &text).map_err(io_err)?;
            Ok(0)
        }
        Cmd::Verify { max_d } => {
            let failures = verify(cli, *max_d)?;
            if failures == 0 {
                println!("all checks passed");
                Ok(0)
            } else {
                eprintln!("{failures} check(s) failed");
                Ok(1)
            }
        }
    }
}

fn verify(cli: &Cli, max_d: usize) -> Result<usize, Error> {
    let mut failures = 0usize;
    let mut report = |ok: bool, what: &str| {
        if ok {
            println!("ok: {what}");
        } else {
            eprintln!("FAIL: {what}");
            failures += 1;
        }
    };

    let mut identities = true;
    for d in 1..=2000u64 {
        let g = numtheory::gcd_sum(d)?;
        identities &= g == numtheory::gcd_sum_direct(d)?
            && g == numtheory::gamma_mobius(d)?
            && numtheory::summatory_gamma(d)? == d * numtheory::tau(d)?;
    }
    report(identities, "gcd-sum identities for d <= 2000");

    let tol = tolerances(cli)?;
    let top = max_d.max(2);
    let mut dims = true;
    for d in 1..=top.min(16) {
        let ctx = context(cli, d)?;
        let g = numtheory::gcd_sum(d as u64)?;
        dims &= kdreal::dim_oracle(&ctx)? as u64 == g
            && decompose::span_rank(&ctx)? as u64 == g;
    }
    report(dims, "subspace dimension: oracle and span rank match the gcd sum");

    let mut forms = true;
    let mut counts = true;
    for d in 1..=top.min(20) {
        let ctx = context(cli, d)?;
        let states = pure_states::catalog(&ctx)?;
        counts &= states.len() as u64 == d as u64 * numtheory::tau(d as u64)?;
        for desc in pure_states::enumerate_descriptors(d)? {
            let a = pure_states::build_state_a_form(&desc, &ctx)?;
            let b = pure_states::build_state_b_form(&desc, &ctx)?;
            let diff: f64 = a
                .vector
                .iter()
                .zip(b.vector.iter())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            forms &= diff < 1e-10;
        }
    }
    report(counts, "catalog sizes are d tau(d)");
    report(forms, "a-basis and b-basis state forms agree");

    let mut round_trips = true;
    for d in 2..=top {
        let ctx = context(cli, d)?;
        for trial in 0..5u64 {
            let f = kdreal::random_kdreal::<f64>(d, cli.seed ^ ((d as u64) << 8 | trial))?;
            let dec = decompose::constructive(&f, &ctx, &tol)?;
            round_trips &=
                dec.residual < 1e-9 && (dec.coefficient_sum - f.trace().re).abs() < 1e-9;
        }
    }
    report(round_trips, "constructive decompositions reconstruct their input");

    let mut marginals = true;
    let mut rng = kdft::random::seeded_rng(cli.seed);
    for d in 2..=top {
        let ctx = context(cli, d)?;
        let u = ctx.matrix();
        for _ in 0..5 {
            let rho = kdft::random::random_density::<f64>(d, &mut rng);
            let q = kd_distribution(rho.matrix(), &ctx)?;
            for j in 1..=d {
                marginals &=
                    (q.row_marginals()[j - 1] - rho.matrix()[(j - 1, j - 1)]).norm() < 1e-10;
            }
            let rho_b = u.adjoint().mul(rho.matrix()).mul(u);
            for k in 1..=d {
                marginals &= (q.col_marginals()[k - 1] - rho_b[(k - 1, k - 1)]).norm() < 1e-10;
            }
            marginals &= (q.total() - Complex64::new(1.0, 0.0)).norm() < 1e-10;
        }
    }
    report(marginals, "marginals of random densities");

    Ok(failures)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Json(serde_json::Error::io(e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
