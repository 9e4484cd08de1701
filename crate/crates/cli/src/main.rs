use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isocyclic::codes::{mds_construct, CodeDescriptor, CyclicCode, IsoSelfDualCertificate, DEFAULT_ENUMERATION_BOUND};
use isocyclic::gf::{Field, RootOfUnity, ThetaPin};
use isocyclic::oracle::{self, OracleReport, DEFAULT_ORACLE_ENUM_BOUND, DEFAULT_SEARCH_MAX_N};
use isocyclic::poly::{self, Poly};
use isocyclic::splitting::{self, Splitting};
use isocyclic::zn::{self, CosetPartition, QPermutation};
use isocyclic::Error;
use serde_json::json;

const GRID_ORDERS: [u64; 6] = [3, 5, 7, 9, 11, 13];

/// Iso-self-dual cyclic codes from Type-I duadic splittings.
#[derive(Parser, Debug)]
#[command(name = "isocyclic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Field order, a prime power.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Code length, coprime to q.
    #[arg(long, global = true)]
    n: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Choose theta by a relation such as "theta^2=2".
    #[arg(long = "pin-theta", global = true, value_name = "EXPR")]
    pin_theta: Option<ThetaPin>,
    /// Use tau_t with t = 2^u n' instead of the smallest admissible u.
    #[arg(long, global = true)]
    u: Option<u32>,
    /// Largest length for grid verification.
    #[arg(long = "max-n", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: Option<u64>,
    /// Largest number of codewords to enumerate.
    #[arg(long = "enum-bound", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    enum_bound: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether iso-self-dual cyclic codes of length n exist over GF(q).
    Exists,
    /// Build one iso-self-dual code and print its descriptor.
    Construct {
        /// Build the [q+1, (q+1)/2, (q+3)/2] MDS code.
        #[arg(long)]
        mds: bool,
    },
    /// Print a descriptor for every splitting given by the chosen translation.
    Enumerate,
    /// Factor X^n - 1 over GF(q).
    Factor,
    /// List the q-cyclotomic cosets of Z_n.
    Cosets,
    /// Run the brute-force oracles on a descriptor, on (q, n), or on a grid.
    Verify {
        /// Descriptor file, or "-" for standard input.
        descriptor: Option<PathBuf>,
        /// Check the existence criterion on every coprime (q, n) up to --max-n.
        #[arg(long)]
        grid: bool,
    },
    /// Build the MDS code of length q + 1 and compute its minimum distance.
    Mds,
}

/// A failure with its exit status: 1 for mathematical negatives, 2 for usage.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::NoSplitting { .. }
            | Error::NotInvariant { .. }
            | Error::BadResidue(_)
            | Error::DimensionMismatch { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let o = &cli.opts;
    match &cli.command {
        Command::Exists => cmd_exists(o),
        Command::Construct { mds } => cmd_construct(o, *mds),
        Command::Enumerate => cmd_enumerate(o),
        Command::Factor => cmd_factor(o),
        Command::Cosets => cmd_cosets(o),
        Command::Verify { descriptor, grid } => cmd_verify(o, descriptor.as_ref(), *grid),
        Command::Mds => cmd_mds(o),
    }
}

fn q_of(o: &Opts) -> Result<u64, Failure> {
    o.q.ok_or_else(|| Failure::usage("--q is required"))
}

fn qn(o: &Opts) -> Result<(u64, u64), Failure> {
    let q = q_of(o)?;
    let n = o.n.ok_or_else(|| Failure::usage("--n is required"))?;
    if zn::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q).into());
    }
    if n == 0 || zn::gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n }.into());
    }
    Ok((q, n))
}

fn root_of(o: &Opts, q: u64, n: u64) -> Result<RootOfUnity, Failure> {
    Ok(RootOfUnity::new(&Field::of_order(q)?, n, o.pin_theta)?)
}

fn set_text(set: &[u64]) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn line(out: &mut String, text: impl std::fmt::Display) {
    writeln!(out, "{text}").expect("writing to a String");
}

fn cmd_exists(o: &Opts) -> Outcome {
    let (q, n) = qn(o)?;
    let e = splitting::exists_splitting(q, n)?;
    let w2 = e.nu2_q_minus_1.map(|v| 2 * v);
    let mut out = String::new();
    if o.json {
        let v = json!({
            "q": q,
            "n": n,
            "nu2_n": e.nu2_n,
            "nu2_q_minus_1": e.nu2_q_minus_1,
            "exists": e.exists(),
            "u": e.witness.map(|w| w.u),
            "t": e.witness.map(|w| w.t),
        });
        line(&mut out, v);
    } else {
        let w2 = w2.map_or("inf".to_string(), |v| v.to_string());
        line(&mut out, format_args!("q={q} n={n} nu2(n)={} 2nu2(q-1)={w2}", e.nu2_n));
        match e.witness {
            Some(w) => line(&mut out, format_args!("yes, u={}, t={}", w.u, w.t)),
            None if e.nu2_n == 0 => line(&mut out, "no (n is odd)"),
            None => line(&mut out, format_args!("no (nu2(n)={} >= {w2} = 2nu2(q-1))", e.nu2_n)),
        }
    }
    Ok((out, if e.exists() { 0 } else { 1 }))
}

/// tau_{2^u n'} for the requested or the smallest admissible u.
fn translation(o: &Opts, q: u64, n: u64) -> Result<QPermutation, Failure> {
    let u = match o.u {
        Some(u) => {
            if !splitting::exists_splitting(q, n)?.exists() {
                return Err(Error::NoSplitting { q, n }.into());
            }
            if !splitting::u_admissible(q, n, u)? {
                return Err(Failure::usage(format!("u={u} is not admissible for q={q} n={n}")));
            }
            u
        }
        None => splitting::choose_u(q, n)?,
    };
    Ok(QPermutation::translation(splitting::translation_for(n, u) as i64, n, q)?)
}

fn certified(s: &Splitting, root: &RootOfUnity) -> Result<(CyclicCode, IsoSelfDualCertificate), Failure> {
    let code = CyclicCode::from_support(&s.support, root)?;
    let cert = code.certificate_for(s.rho.s() as i64, s.rho.t() as i64)?.expect("a splitting certifies its code");
    Ok((code, cert))
}

fn construct_descriptor(o: &Opts, mds: bool) -> Result<CodeDescriptor, Failure> {
    if mds {
        let q = q_of(o)?;
        if let Some(n) = o.n.filter(|&n| n != q + 1) {
            return Err(Failure::usage(format!("the MDS code has length q + 1 = {}, not {n}", q + 1)));
        }
        let (code, cert) = mds_construct(q, o.pin_theta)?;
        return Ok(CodeDescriptor::new(&code, Some(&cert)));
    }
    let (q, n) = qn(o)?;
    let rho = translation(o, q, n)?;
    let s = splitting::build_splitting(q, n, Some(rho))?;
    let (code, cert) = certified(&s, &root_of(o, q, n)?)?;
    Ok(CodeDescriptor::new(&code, Some(&cert)))
}

fn cmd_construct(o: &Opts, mds: bool) -> Outcome {
    let desc = construct_descriptor(o, mds)?;
    Ok((format!("{}\n", desc.to_json()), 0))
}

fn cmd_enumerate(o: &Opts) -> Outcome {
    let (q, n) = qn(o)?;
    let rho = translation(o, q, n)?;
    let root = root_of(o, q, n)?;
    let mut out = String::new();
    for s in splitting::enumerate_splittings(q, n, rho)? {
        let (code, cert) = certified(&s, &root)?;
        line(&mut out, CodeDescriptor::new(&code, Some(&cert)).to_json());
    }
    Ok((out, 0))
}

fn cmd_factor(o: &Opts) -> Outcome {
    let (q, n) = qn(o)?;
    let root = root_of(o, q, n)?;
    let factors = poly::coset_factors(&root)?;
    let polys: Vec<Poly> = factors.iter().map(|(_, f)| f.clone()).collect();
    let pairs = if n % 4 == 2 { poly::alternating_pairs(&polys)? } else { None };
    let mut out = String::new();
    if o.json {
        let fs: Vec<_> = factors.iter().map(|(c, f)| json!({"coset": c, "poly": f.to_ints()})).collect();
        line(&mut out, json!({"q": q, "n": n, "factors": fs, "pairs": pairs}));
        return Ok((out, 0));
    }
    for (coset, f) in &factors {
        line(&mut out, format_args!("{}    {}", f.balanced(), set_text(coset)));
    }
    if let Some(pairs) = pairs {
        line(&mut out, "alternating pairs:");
        for (i, j) in pairs {
            line(&mut out, format_args!("{{{}, {}}}", polys[i].balanced(), polys[j].balanced()));
        }
    }
    Ok((out, 0))
}

fn cmd_cosets(o: &Opts) -> Outcome {
    let (q, n) = qn(o)?;
    let cp = CosetPartition::new(q, n)?;
    let mut out = String::new();
    if o.json {
        line(&mut out, json!({"q": q, "n": n, "cosets": cp.cosets()}));
    } else {
        for c in cp.cosets() {
            line(&mut out, set_text(c));
        }
    }
    Ok((out, 0))
}

fn report_lines(o: &Opts, reports: &[OracleReport], out: &mut String) -> u8 {
    let failed = reports.iter().filter(|r| !r.passed()).count();
    for r in reports {
        if o.json {
            line(out, r.to_json_line());
        } else {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            line(out, format_args!("{verdict} {} [{}] {} checked", r.claim, r.instance, r.instances_checked));
            for f in &r.failures {
                line(out, format_args!("    {f}"));
            }
        }
    }
    if !o.json {
        line(out, format_args!("{} reports, {failed} failed", reports.len()));
    }
    u8::from(failed > 0)
}

fn read_descriptor(path: &PathBuf) -> Result<CodeDescriptor, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
    };
    Ok(CodeDescriptor::from_json(&text)?)
}

fn cmd_verify(o: &Opts, descriptor: Option<&PathBuf>, grid: bool) -> Outcome {
    let bound = o.enum_bound.map_or(DEFAULT_ORACLE_ENUM_BOUND, u128::from);
    let mut out = String::new();
    let reports = if grid {
        if descriptor.is_some() {
            return Err(Failure::usage("--grid takes no descriptor"));
        }
        let max_n = o.max_n.unwrap_or(DEFAULT_SEARCH_MAX_N);
        let qs = match o.q {
            Some(q) => vec![q],
            None => GRID_ORDERS.to_vec(),
        };
        oracle::oracle_splitting_grid(&qs, max_n)?
    } else {
        let desc = match descriptor {
            Some(path) => read_descriptor(path)?,
            None => construct_descriptor(o, false)?,
        };
        oracle::verify_descriptor(&desc, bound)?
    };
    let code = report_lines(o, &reports, &mut out);
    Ok((out, code))
}

fn cmd_mds(o: &Opts) -> Outcome {
    let desc = construct_descriptor(o, true)?;
    let code = desc.rebuild()?;
    let (n, k) = (code.n(), code.dimension() as u64);
    let bound = o.enum_bound.map_or(DEFAULT_ENUMERATION_BOUND, u128::from);
    let d = match code.min_distance(bound) {
        Ok(d) => d,
        Err(Error::TooLarge { size, .. }) => {
            log::warn!("{size} codewords exceed --enum-bound; minimum distance not computed");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    if o.json {
        let mut v = serde_json::to_value(&desc).expect("descriptor serializes");
        v["k"] = json!(k);
        v["d"] = json!(d);
        line(&mut out, v);
        return Ok((out, 0));
    }
    let cert = desc.certificate.expect("MDS descriptors carry a certificate");
    line(&mut out, format_args!("q={} n={n} k={k} P={}", code.q(), set_text(code.support())));
    line(&mut out, format_args!("check      {}", code.check_poly().balanced()));
    line(&mut out, format_args!("generator  {}", code.gen_poly().balanced()));
    line(&mut out, format_args!("dual check {}", code.dual().check_poly().balanced()));
    line(&mut out, format_args!("certificate s={} t={}", cert.s, cert.t));
    match d {
        Some(d) => {
            let mds = if d as u64 == n - k + 1 { "MDS" } else { "not MDS" };
            line(&mut out, format_args!("[{n},{k},{d}] {mds}"));
        }
        None => line(&mut out, format_args!("[{n},{k}] minimum distance not enumerated")),
    }
    Ok((out, 0))
}
