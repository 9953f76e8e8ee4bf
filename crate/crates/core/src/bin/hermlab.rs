//! Command-line front end: compute densities and constants, run the
//! verification suites, and evaluate intersection numbers, with exact
//! rational output and deterministic JSON reports.

use clap::{Args, Parser, Subcommand};
use hermlab::closedform::{self, ConstCtx};
use hermlab::density::DensityCtx;
use hermlab::error::Error;
use hermlab::exact::QMode;
use hermlab::herm::{EFieldCtx, HermMatrix, Partition};
use hermlab::lattice;
use hermlab::report::Report;
use hermlab::suites::{self, SuiteCtx};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "hermlab",
    about = "Exact local densities of hermitian lattices over unramified p-adic rings",
    version
)]
struct Cli {
    /// Bound on worker threads for parallel counting.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap on realized DP states before a count aborts as too large.
    #[arg(long, global = true)]
    state_cap: Option<usize>,
    /// Result cache directory (also enabled by HERMLAB_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Representation densities: alpha(A, B), series, derivatives, and the
    /// weighted variants.
    Density(DensityArgs),
    /// Closed-form constants, symbolic in q by default.
    Constants(ConstantsArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Evaluate both displayed forms of the intersection-number formula.
    Intersection(IntersectionArgs),
}

#[derive(Args)]
struct DensityArgs {
    /// Left form, e.g. identity:2, diag:p^1,p^0, At:1, json:path.
    #[arg(long = "A")]
    a: Option<String>,
    /// Right form (same grammar).
    #[arg(long = "B")]
    b: String,
    /// Weighted density parameters, e.g. --W h=1 t=1 [r=0].
    #[arg(long = "W", num_args = 1..=3)]
    w: Option<Vec<String>>,
    /// Prime power q = p^f.
    #[arg(long)]
    q: u64,
    /// Compute the full polynomial in X instead of the value.
    #[arg(long)]
    series: bool,
    /// Compute the negated derivative at X = 1.
    #[arg(long)]
    prime: bool,
    /// Fixed congruence precision: report the single normalized count at
    /// this d instead of the stabilized limit.
    #[arg(long)]
    d: Option<u32>,
    /// Output format: value | json.
    #[arg(long, default_value = "value")]
    format: String,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Which table: C | D | K | beta | d | A | frakb | m.
    #[arg(long)]
    table: Option<String>,
    /// Shorthand table selectors.
    #[arg(long = "C")]
    sel_c: bool,
    #[arg(long = "D")]
    sel_d: bool,
    #[arg(long = "K")]
    sel_k: bool,
    #[arg(long = "beta")]
    sel_beta: bool,
    #[arg(long = "frakb")]
    sel_frakb: bool,
    #[arg(long = "A-table")]
    sel_a: bool,
    #[arg(long = "d-coeffs")]
    sel_dc: bool,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Concrete q; omit for symbolic output.
    #[arg(long)]
    q: Option<u64>,
    /// Output format: pretty | json | csv.
    #[arg(long, default_value = "pretty")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: consts, f0, density-oracle, lattice-oracle, cy, funceq,
    /// thm47, conj49, remark-n1, all.
    suite: String,
    #[arg(long, default_value_t = 3)]
    q: u64,
    /// Output format: pretty | json.
    #[arg(long, default_value = "pretty")]
    format: String,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extra corpus instances (JSON lines) to run identity checks on.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

#[derive(Args)]
struct IntersectionArgs {
    #[arg(long = "B")]
    b: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    q: u64,
    /// Skip the density-form cross-evaluation.
    #[arg(long)]
    lattice_only: bool,
}

fn split_prime_power(q: u64) -> Result<(u64, u32), Error> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::InvalidArgument("q must be an odd prime power".into()));
    }
    let mut p = 3;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 2;
    }
    if q % p != 0 {
        p = q;
    }
    let mut f = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
    }
    Ok((p, f))
}

fn parse_matrix(spec: &str, ef: &EFieldCtx) -> Result<HermMatrix, Error> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("bad matrix spec `{spec}`")))?;
    match kind {
        "identity" => {
            let k: usize = rest
                .parse()
                .map_err(|_| Error::InvalidArgument("identity:k needs an integer".into()))?;
            Ok(HermMatrix::identity(k, ef.clone()))
        }
        "diag" => {
            let mut exps = Vec::new();
            for tok in rest.split(',') {
                let tok = tok.trim();
                let e: i64 = if let Some(stripped) = tok.strip_prefix("p^") {
                    stripped.parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad diagonal entry `{tok}`"))
                    })?
                } else if tok == "1" {
                    0
                } else {
                    return Err(Error::InvalidArgument(format!(
                        "diagonal entries are p^K tokens, got `{tok}`"
                    )));
                };
                exps.push(e);
            }
            Ok(HermMatrix::diagonal_pi(&exps, ef.clone()))
        }
        "At" => {
            let (t, n) = match rest.split_once(',') {
                Some((t, n)) => (
                    t.parse().map_err(|_| Error::InvalidArgument("bad t".into()))?,
                    n.parse().map_err(|_| Error::InvalidArgument("bad n".into()))?,
                ),
                None => {
                    let t: usize = rest
                        .parse()
                        .map_err(|_| Error::InvalidArgument("bad t".into()))?;
                    (t, t)
                }
            };
            HermMatrix::a_t_matrix(t, n, ef.clone())
        }
        "json" => {
            let text = std::fs::read_to_string(rest)?;
            HermMatrix::from_json(&text, ef.clone())
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown matrix kind `{other}`"
        ))),
    }
}

fn run_density(cli: &Cli, args: &DensityArgs) -> Result<bool, Error> {
    let (p, f) = split_prime_power(args.q)?;
    let dc = build_density(cli, p, f)?;
    let ef = dc.efield.clone();
    let b = parse_matrix(&args.b, &ef)?;
    if let Some(w) = &args.w {
        let mut h = None;
        let mut t = None;
        let mut r = 0u32;
        for piece in w {
            let (key, val) = piece.split_once('=').ok_or_else(|| {
                Error::InvalidArgument("weighted parameters look like h=1 t=1 [r=0]".into())
            })?;
            let val: u32 = val
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad value in `{piece}`")))?;
            match key {
                "h" => h = Some(val as usize),
                "t" => t = Some(val as usize),
                "r" => r = val,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown weighted parameter `{key}`"
                    )))
                }
            }
        }
        let (h, t) = (
            h.ok_or_else(|| Error::InvalidArgument("missing h=".into()))?,
            t.ok_or_else(|| Error::InvalidArgument("missing t=".into()))?,
        );
        if args.series {
            let s = dc.weighted_w_series(h, t, &b, None)?;
            print_series(&s);
        } else if args.prime {
            println!("{}", dc.weighted_w_prime(h, t, &b)?);
        } else {
            println!("{}", dc.weighted_w(h, t, &b, r)?);
        }
        return Ok(true);
    }
    let a = parse_matrix(
        args.a
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("plain densities need --A".into()))?,
        &ef,
    )?;
    if let Some(d) = args.d {
        let res = dc.count_congruence(&a, &b, d, &hermlab::density::DomainSpec::all_integral(b.n))?;
        if args.format == "json" {
            println!(
                "{}",
                serde_json::json!({
                    "raw": res.raw.to_string(),
                    "d": res.d,
                    "norm_exponent": res.norm_exponent,
                    "normalized": res.normalized.to_string(),
                    "stabilized": res.stabilized,
                })
            );
        } else {
            println!("{}", res.normalized);
        }
    } else if args.series {
        print_series(&dc.alpha_series(&a, &b, None)?);
    } else if args.prime {
        println!("{}", dc.alpha_prime(&a, &b)?);
    } else if args.format == "json" {
        let v = dc.alpha(&a, &b)?;
        let (hits, misses) = dc.cache_stats();
        println!(
            "{}",
            serde_json::json!({
                "value": v.to_string(),
                "cache": {"hits": hits, "misses": misses},
            })
        );
    } else {
        println!("{}", dc.alpha(&a, &b)?);
    }
    Ok(true)
}

fn print_series(s: &hermlab::exact::XPolynomial) {
    let terms: Vec<String> = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("({c}) X^{i}"))
        .collect();
    if terms.is_empty() {
        println!("0");
    } else {
        println!("{}", terms.join(" + "));
    }
}

struct ConstRow {
    name: String,
    indices: String,
    value: String,
}

fn table_name(args: &ConstantsArgs) -> Result<String, Error> {
    if let Some(t) = &args.table {
        return Ok(t.clone());
    }
    let flags: Vec<(&str, bool)> = vec![
        ("C", args.sel_c),
        ("D", args.sel_d),
        ("K", args.sel_k),
        ("beta", args.sel_beta),
        ("frakb", args.sel_frakb),
        ("A", args.sel_a),
        ("d", args.sel_dc),
    ];
    let picked: Vec<&str> = flags.iter().filter(|(_, b)| *b).map(|(n, _)| *n).collect();
    match picked.as_slice() {
        [one] => Ok(one.to_string()),
        [] => Err(Error::InvalidArgument(
            "pick a constants table (--C, --D, --K, --beta, --frakb, --A-table, --d-coeffs or --table NAME)".into(),
        )),
        _ => Err(Error::InvalidArgument("pick a single constants table".into())),
    }
}

fn constants_rows(args: &ConstantsArgs, mode: &QMode) -> Result<Vec<ConstRow>, Error> {
    let n = args.n;
    let mut rows = Vec::new();
    let make_cc = || -> Result<ConstCtx, Error> {
        Ok(match mode {
            QMode::Symbolic => ConstCtx::symbolic(),
            QMode::Concrete(q) => {
                let (p, f) = split_prime_power(*q)?;
                ConstCtx::concrete(Arc::new(DensityCtx::new(p, f)?))
            }
        })
    };
    match table_name(args)?.as_str() {
        "C" => {
            let cc = make_cc()?;
            for lam in Partition::enumerate_r_n0k(n, 3) {
                let v = match closedform::c_const(&lam, &cc) {
                    Ok(v) => v.to_string(),
                    Err(Error::RequiresConcreteQ) => "(requires concrete q)".into(),
                    Err(e) => return Err(e),
                };
                rows.push(ConstRow {
                    name: "C".into(),
                    indices: format!("{:?}", lam.parts()),
                    value: v,
                });
            }
        }
        "D" => {
            let cc = make_cc()?;
            for lam in Partition::enumerate_r_n0k(2 * n, 2) {
                let v = match closedform::d_const(&lam, n, &cc) {
                    Ok(v) => v.to_string(),
                    Err(Error::RequiresConcreteQ) => "(requires concrete q)".into(),
                    Err(e) => return Err(e),
                };
                rows.push(ConstRow {
                    name: "D".into(),
                    indices: format!("{:?}", lam.parts()),
                    value: v,
                });
            }
        }
        "K" => {
            for (i, k) in closedform::k_consts(n, mode)?.iter().enumerate() {
                rows.push(ConstRow {
                    name: "K".into(),
                    indices: format!("[{i}]"),
                    value: k.to_string(),
                });
            }
        }
        "beta" => {
            let h = args.h.unwrap_or(0);
            let b = closedform::beta_consts(n, h, mode)?;
            for (i, (solved, closed)) in b.solution.iter().zip(b.closed.iter()).enumerate() {
                rows.push(ConstRow {
                    name: "beta-system".into(),
                    indices: format!("entry {i} (solver | closed)"),
                    value: format!("{solved} | {closed}"),
                });
            }
            rows.push(ConstRow {
                name: "delta".into(),
                indices: format!("h={h}"),
                value: b.delta_h.to_string(),
            });
        }
        "d" => {
            let l = args.l.unwrap_or(2 * n);
            for (i, d) in closedform::d_coeffs(l, n, mode)?.iter().enumerate() {
                rows.push(ConstRow {
                    name: "d".into(),
                    indices: format!("[{i},{l}]"),
                    value: d.to_string(),
                });
            }
        }
        "A" => {
            let a = closedform::a_table(n, mode)?;
            for (j, row) in a.iter().enumerate() {
                for (l, v) in row.iter().enumerate() {
                    rows.push(ConstRow {
                        name: "A".into(),
                        indices: format!("[{j},{l}]"),
                        value: v.to_string(),
                    });
                }
            }
        }
        "frakb" => {
            for i in 0..n {
                let fb = closedform::frakb0(i, n, mode)?;
                rows.push(ConstRow {
                    name: "frakb".into(),
                    indices: format!("[{i}] defining"),
                    value: fb.defining.to_string(),
                });
                rows.push(ConstRow {
                    name: "frakb".into(),
                    indices: format!("[{i}] expanded (agree={})", fb.agree),
                    value: fb.expanded.to_string(),
                });
            }
        }
        "m" => {
            for a in 0..=(n as u32) {
                rows.push(ConstRow {
                    name: "m-deriv".into(),
                    indices: format!("[{a}]"),
                    value: closedform::m_deriv(a, mode).to_string(),
                });
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown constants table `{other}`"
            )))
        }
    }
    Ok(rows)
}

fn run_constants(args: &ConstantsArgs) -> Result<bool, Error> {
    let mode = match args.q {
        Some(q) => QMode::Concrete(q),
        None => QMode::Symbolic,
    };
    let mode_label = match &mode {
        QMode::Symbolic => "symbolic".to_string(),
        QMode::Concrete(q) => format!("q={q}"),
    };
    let rows = constants_rows(args, &mode)?;
    match args.format.as_str() {
        "json" => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "name": r.name,
                        "indices": r.indices,
                        "q_mode": mode_label,
                        "value": r.value,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&items).unwrap());
        }
        "csv" => {
            println!("name,indices,q-mode,value");
            for r in rows {
                println!("{},\"{}\",{},\"{}\"", r.name, r.indices, mode_label, r.value);
            }
        }
        _ => {
            for r in rows {
                println!("{:10} {:32} {}", r.name, r.indices, r.value);
            }
        }
    }
    Ok(true)
}

fn build_density(cli: &Cli, p: u64, f: u32) -> Result<Arc<DensityCtx>, Error> {
    let mut dc = DensityCtx::new(p, f)?;
    if let Some(cap) = cli.state_cap {
        dc.state_cap = cap;
    }
    let cache_dir = cli
        .cache
        .clone()
        .or_else(|| std::env::var("HERMLAB_CACHE").ok().map(PathBuf::from));
    if let Some(dir) = cache_dir {
        std::fs::create_dir_all(&dir)?;
        dc = dc.with_disk_cache(&dir.join(format!("counts-p{p}-f{f}.jsonl")))?;
    }
    Ok(Arc::new(dc))
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<bool, Error> {
    let (p, f) = split_prime_power(args.q)?;
    let dc = build_density(cli, p, f)?;
    let ctx = SuiteCtx::with_density(dc);
    let mut report: Report = suites::run_suite(&args.suite, &ctx)?;
    if let Some(path) = &args.corpus {
        let text = std::fs::read_to_string(path)?;
        report.merge(suites::run_corpus(&text, &ctx)?);
    }
    if args.format == "json" {
        println!("{}", report.full_json());
    } else {
        report.print_pretty();
    }
    if let Some(path) = &args.out {
        std::fs::write(path, report.full_json())?;
    }
    Ok(report.all_pass())
}

fn run_intersection(cli: &Cli, args: &IntersectionArgs) -> Result<bool, Error> {
    let (p, f) = split_prime_power(args.q)?;
    let dc = build_density(cli, p, f)?;
    let ef = dc.efield.clone();
    let b = parse_matrix(&args.b, &ef)?;
    let cc = ConstCtx::concrete(Arc::clone(&dc));
    let density = if args.lattice_only { None } else { Some(&*dc) };
    let r = lattice::intersection_number(&b, args.n, &cc, density)?;
    println!("lattice form:  {}", r.value);
    match (&r.density_value, &r.density_agrees) {
        (Some(dv), Some(agree)) => {
            println!("density form:  {dv}");
            println!("agreement:     {agree}");
        }
        _ => println!("density form:  (skipped)"),
    }
    for (lam, count, d) in &r.terms {
        println!("  type {:?}: count {count}, coefficient {d}", lam.parts());
    }
    Ok(r.density_agrees != Some(false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let outcome = match &cli.command {
        Command::Density(args) => run_density(&cli, args),
        Command::Constants(args) => run_constants(args),
        Command::Verify(args) => run_verify(&cli, args),
        Command::Intersection(args) => run_intersection(&cli, args),
    };
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
