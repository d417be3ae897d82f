//! `kmult`: K-type multiplicities of U(p,q) discrete series from the command line.
//!
//! Results go to stdout, timing and diagnostics to stderr. Exit status is 0 on
//! success, 2 on invalid input and 1 on an internal failure.

mod parse;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use kmult::algebra::{rat_to_string, Rational};
use kmult::blattner::{
    discretemult, discretemult_bruteforce, is_asymptotic_direction, lowest_k_type, multiplicity_direction,
    validate, vogan_lowest_k_type, HcParamK, Setting, SignedPermutation,
};
use kmult::partition::{
    expand, partition_count, partition_count_bruteforce, tope_polynomial, NoncompactSystem, BruteForce,
};
use kmult::roots::{ABPattern, DeformedVector};
use kmult::selftest;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "kmult", version, about = "K-type multiplicities of U(p,q) discrete series")]
struct Cli {
    /// Print JSON (with a top-level "schema": 1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Group {
    #[arg(short = 'p')]
    p: usize,
    #[arg(short = 'q')]
    q: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity of the K-type --mu in the discrete series --lambda.
    Mult {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        group: Group,
        /// Also print the signed term of every contributing permutation.
        #[arg(long)]
        verbose: bool,
        /// Cross-check against the direct signed sum.
        #[arg(long)]
        oracle: bool,
    },
    /// Multiplicity along lowest K-type + t·v as a piecewise polynomial in t.
    Direction {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        group: Group,
        /// Merge pieces with equal polynomials and drop single points.
        #[arg(long)]
        streamline: bool,
    },
    /// Lowest K-type λ + ρ_n.
    Lowest {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        group: Group,
    },
    /// Lowest K-type as a highest weight (λ + ρ_n − ρ_c).
    VoganLowest {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        group: Group,
    },
    /// Kostant partition function of Δ⁺(A,B) at a point or along a ray.
    Partition {
        #[command(flatten)]
        system: SystemArgs,
        /// Integral point, reduced or ambient coordinates.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic_ray", required_unless_present = "symbolic_ray")]
        h: Option<String>,
        /// Ray `[[h0],[v]]`: prints the polynomial P with N(h0 + t v) = P(t) on one tope.
        #[arg(long, allow_hyphen_values = true)]
        symbolic_ray: Option<String>,
        /// Sample time fixing the tope of a ray.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        sample_t: String,
        /// Cross-check against the direct count.
        #[arg(long)]
        oracle: bool,
    },
    /// Ordered bases selected for a point (debugging aid).
    Mpns {
        #[command(flatten)]
        system: SystemArgs,
        /// Integral point; bases are those of the tope of h + ρ_n.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Oracle and invariant suites.
    Selftest {
        /// Largest p+q.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Coordinate bound for partition points.
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random samples per randomized suite.
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// `aabb`-style string, or the 1-based A slots such as `[1,4]` (needs -p and -q).
    #[arg(long)]
    pattern: String,
    #[arg(short = 'p')]
    p: Option<usize>,
    #[arg(short = 'q')]
    q: Option<usize>,
}

enum Failure {
    Invalid(String),
    Internal(String),
}

type Outcome = Result<(String, Value), Failure>;

fn invalid<E: ToString>(e: E) -> Failure {
    Failure::Invalid(e.to_string())
}

fn pattern(args: &SystemArgs) -> Result<ABPattern, Failure> {
    let s = args.pattern.trim();
    if s.starts_with('[') {
        let (Some(p), Some(q)) = (args.p, args.q) else {
            return Err(invalid("an explicit A list needs -p and -q"));
        };
        let n = p + q;
        let mut slots = Vec::new();
        for x in parse::vector(s).map_err(invalid)? {
            match kmult::algebra::to_i64(&x) {
                Some(k) if (1..=n as i64).contains(&k) => slots.push(k as usize),
                _ => return Err(invalid(format!("A slot {} is not in 1..={n}", rat_to_string(&x)))),
            }
        }
        slots.sort();
        slots.dedup();
        if slots.len() != p {
            return Err(invalid(format!("expected {p} distinct A slots, got {}", slots.len())));
        }
        Ok(ABPattern::from_a(n, &slots))
    } else {
        let pat = ABPattern::parse(s).map_err(invalid)?;
        if args.p.is_some_and(|p| p != pat.p()) || args.q.is_some_and(|q| q != pat.q()) {
            return Err(invalid(format!("pattern {pat} does not match -p/-q")));
        }
        Ok(pat)
    }
}

fn integral(v: &[Rational]) -> Result<Vec<i64>, Failure> {
    v.iter()
        .map(|x| kmult::algebra::to_i64(x).ok_or_else(|| invalid(format!("{} is not an integer", rat_to_string(x)))))
        .collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn perm_json(w: &SignedPermutation) -> Value {
    let one = |v: &[usize]| v.iter().map(|k| k + 1).collect::<Vec<_>>();
    json!([one(&w.pa), one(&w.pb)])
}

fn mult(mu: &str, lambda: &str, g: &Group, verbose: bool, oracle: bool) -> Outcome {
    let mu = parse::k_param(mu).map_err(invalid)?;
    let lambda = parse::g_param(lambda).map_err(invalid)?;
    let res = discretemult(&mu, &lambda, g.p, g.q).map_err(invalid)?;
    let mut text = res.value.to_string();
    let mut out = json!({ "multiplicity": res.value.to_string(), "signed": res.signed.to_string() });
    if verbose {
        let mut ledger = Vec::new();
        for (w, term) in &res.contributions {
            text.push_str(&format!("\n  w = {} sign {:+}: {term}", perm_json(w), w.sign));
            ledger.push(json!({ "w": perm_json(w), "sign": w.sign, "term": term.to_string() }));
        }
        out["ledger"] = Value::Array(ledger);
    }
    if oracle {
        let set = Setting::new(&lambda, g.p, g.q).map_err(invalid)?;
        let direct = discretemult_bruteforce(&set, &mu, &mut BruteForce::new(&set.sys.roots));
        if direct != res.signed {
            return Err(Failure::Internal(format!("formula gives {}, direct sum gives {direct}", res.signed)));
        }
        text.push_str(&format!("\noracle: {direct} (agrees)"));
        out["oracle"] = json!(direct.to_string());
    }
    Ok((text, out))
}

fn direction(lambda: &str, v: &str, g: &Group, streamline: bool) -> Outcome {
    let lambda = parse::g_param(lambda).map_err(invalid)?;
    let v = parse::k_param(v).map_err(invalid)?;
    kmult::blattner::validate_lambda(&lambda, g.p, g.q).map_err(invalid)?;
    let mut pw = multiplicity_direction(&lambda, &v, g.p, g.q).map_err(invalid)?;
    if streamline {
        pw = pw.streamline();
    }
    let (asymptotic, _) = is_asymptotic_direction(&lambda, &v, g.p, g.q).map_err(invalid)?;
    let lowest = lowest_k_type(&lambda, g.p, g.q).map_err(invalid)?;
    let text = format!("{pw}\nlowest K-type {lowest}, asymptotic direction: {asymptotic}");
    let out = json!({ "pieces": pw, "lowest": lowest, "asymptotic": asymptotic, "streamlined": streamline });
    Ok((text, out))
}

fn lowest(lambda: &str, g: &Group, vogan: bool) -> Outcome {
    let lambda = parse::g_param(lambda).map_err(invalid)?;
    let k: HcParamK =
        if vogan { vogan_lowest_k_type(&lambda, g.p, g.q) } else { lowest_k_type(&lambda, g.p, g.q) }.map_err(invalid)?;
    if !vogan {
        validate(&lambda, &k, g.p, g.q).map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok((k.to_string(), json!({ "k_type": k })))
}

fn bases_json(sys: &NoncompactSystem, point: &DeformedVector) -> Value {
    Value::Array(sys.bases(point).iter().map(|b| json!(b.pairs())).collect())
}

fn shifted(sys: &NoncompactSystem, h: &[i64]) -> Vec<Rational> {
    h.iter().zip(&sys.rho).map(|(&x, r)| Rational::from_integer(x.into()) + r).collect()
}

fn ambient(sys: &NoncompactSystem, v: &[Rational]) -> Result<Vec<i64>, Failure> {
    integral(&expand(v, sys.n()).map_err(invalid)?)
}

fn partition(system: &SystemArgs, h: Option<&str>, ray: Option<&str>, sample_t: &str, oracle: bool) -> Outcome {
    let sys = NoncompactSystem::new(pattern(system)?);
    if let Some(h) = h {
        let h = parse::vector(h).map_err(invalid)?;
        let count = partition_count(&sys, &h).map_err(invalid)?;
        let mut text = count.to_string();
        let mut out = json!({ "count": count.to_string() });
        if oracle {
            let direct = partition_count_bruteforce(&sys.roots, &ambient(&sys, &h)?);
            if direct != count {
                return Err(Failure::Internal(format!("residues give {count}, direct count gives {direct}")));
            }
            text.push_str(&format!("\noracle: {direct} (agrees)"));
            out["oracle"] = json!(direct.to_string());
        }
        return Ok((text, out));
    }
    let (h0, v) = parse::blocks(ray.expect("clap requires --h or --symbolic-ray")).map_err(invalid)?;
    let (h0, v) = (ambient(&sys, &h0)?, ambient(&sys, &v)?);
    let t = kmult::algebra::parse_rational(sample_t).map_err(invalid)?;
    let poly = tope_polynomial(&sys, &h0, &v, &t).map_err(invalid)?;
    let point: Vec<Rational> = (0..sys.n()).map(|k| Rational::from_integer(h0[k].into()) + &t * kmult::algebra::rat(v[k]) + &sys.rho[k]).collect();
    let mut text = format!("{poly}");
    let mut out = json!({
        "poly": poly,
        "tope": { "sample_t": rat_to_string(&t), "point": strings(&point), "bases": bases_json(&sys, &DeformedVector::deform(&point)) },
    });
    if oracle {
        // the polynomial is only claimed on the tope, so check the sample time itself when integral
        if let Some(ti) = kmult::algebra::to_i64(&t) {
            let at: Vec<i64> = (0..sys.n()).map(|k| h0[k] + ti * v[k]).collect();
            let direct = partition_count_bruteforce(&sys.roots, &at);
            if poly.eval(&t) != Rational::from_integer(direct.clone()) {
                return Err(Failure::Internal(format!("P({ti}) = {}, direct count {direct}", rat_to_string(&poly.eval(&t)))));
            }
            text.push_str(&format!("\noracle at t = {ti}: {direct} (agrees)"));
            out["oracle"] = json!(direct.to_string());
        }
    }
    Ok((text, out))
}

fn mpns(system: &SystemArgs, h: &str) -> Outcome {
    let sys = NoncompactSystem::new(pattern(system)?);
    let h = ambient(&sys, &parse::vector(h).map_err(invalid)?)?;
    let point = shifted(&sys, &h);
    let bases = sys.bases(&DeformedVector::deform(&point));
    let text = bases.iter().map(|b| format!("{:?}", b.pairs())).collect::<Vec<_>>().join("\n");
    Ok((text, json!({ "point": strings(&point), "bases": bases_json(&sys, &DeformedVector::deform(&point)) })))
}

fn run_selftest(max_size: usize, bound: i64, seed: u64, samples: usize) -> Outcome {
    if !(2..=7).contains(&max_size) {
        return Err(invalid("--max-size must be between 2 and 7"));
    }
    let reports = selftest::run_all(&selftest::Config { max_n: max_size, bound, seed, samples });
    let mut lines = Vec::new();
    for r in &reports {
        match &r.failure {
            None if r.cases == 0 => lines.push(format!("{}: PASS (no applicable cases at this size)", r.name)),
            None => lines.push(format!("{}: PASS ({} cases)", r.name, r.cases)),
            Some(f) => lines.push(format!("{}: FAIL after {} cases: {f}", r.name, r.cases)),
        }
    }
    let out = json!({ "suites": reports, "passed": reports.iter().all(|r| r.passed()) });
    if reports.iter().all(|r| r.passed()) {
        Ok((lines.join("\n"), out))
    } else {
        println!("{}", lines.join("\n"));
        Err(Failure::Internal("self-test failed".into()))
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Mult { mu, lambda, group, verbose, oracle } => mult(mu, lambda, group, *verbose, *oracle),
        Command::Direction { lambda, v, group, streamline } => direction(lambda, v, group, *streamline),
        Command::Lowest { lambda, group } => lowest(lambda, group, false),
        Command::VoganLowest { lambda, group } => lowest(lambda, group, true),
        Command::Partition { system, h, symbolic_ray, sample_t, oracle } => {
            partition(system, h.as_deref(), symbolic_ray.as_deref(), sample_t, *oracle)
        }
        Command::Mpns { system, h } => mpns(system, h),
        Command::Selftest { max_size, bound, seed, samples } => run_selftest(*max_size, *bound, *seed, *samples),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: cannot set up {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| run(&cli))
        .unwrap_or_else(|_| Err(Failure::Internal("internal assertion failed".into())));
    eprintln!("time: {:.3} s", start.elapsed().as_secs_f64());
    match outcome {
        Ok((text, mut value)) => {
            if cli.json {
                let mut full = json!({ "schema": 1 });
                full.as_object_mut().expect("object").append(value.as_object_mut().expect("object"));
                println!("{}", serde_json::to_string(&full).expect("serializable"));
            } else {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            report_error("invalid_input", &msg, cli.json);
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            report_error("internal", &msg, cli.json);
            ExitCode::from(1)
        }
    }
}

fn report_error(kind: &str, msg: &str, json_out: bool) {
    if json_out {
        println!("{}", json!({ "schema": 1, "error": { "kind": kind, "message": msg } }));
    }
    eprintln!("error ({kind}): {msg}");
}
