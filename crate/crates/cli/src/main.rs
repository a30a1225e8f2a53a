use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use torsion_core::curves::modified_division_poly;
use torsion_core::intersect::{
    compress, coordinate_counts, pigeonhole_bound, reduce_fp_mod_f3, resultant_profile, resultant_profile_compressed,
    ResultantProfile,
};
use torsion_core::numcert::{build_certificate, verify_certificate, Certificate};
use torsion_core::torfield;

const PRIMES: [u32; 6] = [3, 5, 7, 11, 13, 17];

#[derive(Parser, Debug)]
#[command(name = "torsion", version, about = "Shared projective torsion images of quartic elliptic curve pairs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads; defaults to the available parallelism. Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Permit the multi-hour p = 17 runs.
    #[arg(long, global = true)]
    allow_long: bool,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 7)]
    p: u32,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Modified division polynomial F_p(x, delta).
    Divpoly(Common),
    /// The pair C_{p,0}, C_{p,1} left by dividing F_p(v, delta) by F_3(u, delta).
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Rewrite in s = u^4, w = v/u.
        #[arg(long)]
        compressed: bool,
    },
    /// Resultant profile of the reduction pair.
    Profile {
        #[command(flatten)]
        common: Common,
        /// u or v; s or w with --compressed.
        #[arg(long)]
        eliminate: Option<String>,
        #[arg(long)]
        compressed: bool,
        /// Factor the squarefree parts over Q.
        #[arg(long)]
        factor: bool,
    },
    /// Coordinate counts from both uncompressed profiles and the pigeonhole bound.
    Counts(Common),
    /// Build and self-check a certificate of shared torsion images.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 512)]
        bits: u32,
    },
    /// Check a certificate file.
    Verify { path: PathBuf },
    /// Factored compressed profiles on both sides.
    #[command(name = "remark4-table")]
    CompressedTable(Common),
    /// Symbolic checks for the cube-root curve and the lambda form of j.
    #[command(name = "torfield-checks")]
    TorfieldChecks {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Computation(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Computation(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

fn comp<E: std::fmt::Display>(module: &'static str) -> impl Fn(E) -> Failure {
    move |e| Failure::Computation(format!("{module}: {e}"))
}

fn check_p(p: u32, allow: &[u32], allow_long: bool) -> Result<(), Failure> {
    if !PRIMES.contains(&p) || !allow.contains(&p) {
        return Err(Failure::Usage(format!("p = {p} is not accepted here (allowed: {allow:?})")));
    }
    if p == 17 && !allow_long {
        return Err(Failure::Usage("p = 17 runs for hours; pass --allow-long".into()));
    }
    Ok(())
}

fn header(cmd: &str, config: &[(&str, String)]) -> String {
    let mut h = format!("# torsion {} {cmd}", env!("CARGO_PKG_VERSION"));
    for (k, v) in config {
        let _ = write!(h, " {k}={v}");
    }
    h.push('\n');
    h
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Computation(format!("io: {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let r = f();
    eprintln!("[time] {label}: {:.3}s", t.elapsed().as_secs_f64());
    r
}

fn default_eliminate(compressed: bool) -> &'static str {
    if compressed {
        "w"
    } else {
        "v"
    }
}

fn profile(p: u32, eliminate: &str, compressed: bool) -> Result<ResultantProfile, Failure> {
    let pair = timed("reduce", || reduce_fp_mod_f3(p)).map_err(comp("intersect"))?;
    let prof = if compressed {
        let cp = compress(&pair).map_err(comp("intersect"))?;
        timed(&format!("resultant eliminating {eliminate}"), || resultant_profile_compressed(&cp, eliminate))
    } else {
        timed(&format!("resultant eliminating {eliminate}"), || resultant_profile(&pair, eliminate))
    };
    prof.map_err(comp("intersect"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Computation(format!("cli: {e}")))?;
    }
    let long = cli.allow_long;
    match cli.cmd {
        Cmd::Divpoly(c) => {
            check_p(c.p, &PRIMES, long)?;
            let f = timed("divpoly", || modified_division_poly(c.p)).map_err(comp("curves"))?;
            let mut text = header("divpoly", &[("p", c.p.to_string())]);
            text.push_str(&format!("# {f}\n"));
            text.push_str(&f.to_text());
            emit(&c.out, &text)
        }
        Cmd::Reduce { common: c, compressed } => {
            check_p(c.p, &PRIMES[1..], long)?;
            let pair = timed("reduce", || reduce_fp_mod_f3(c.p)).map_err(comp("intersect"))?;
            let mut text = header("reduce", &[("p", c.p.to_string()), ("compressed", compressed.to_string())]);
            if compressed {
                let cp = compress(&pair).map_err(comp("intersect"))?;
                for (i, (k, d)) in [(cp.k0, &cp.c0), (cp.k1, &cp.c1)].into_iter().enumerate() {
                    let _ = writeln!(
                        text,
                        "# D_{{{},{i}}}: shift {k} s-degree {} w-degree {} terms {}",
                        c.p,
                        d.degree_in("s"),
                        d.degree_in("w"),
                        d.nterms()
                    );
                    text.push_str(&d.to_text());
                }
            } else {
                for (i, (poly, norm)) in [(&pair.c0, &pair.norm0), (&pair.c1, &pair.norm1)].into_iter().enumerate() {
                    let mono: Vec<String> = norm.monomial.iter().map(|(v, e)| format!("{v}^{e}")).collect();
                    let _ = writeln!(
                        text,
                        "# C_{{{},{i}}}: degree {} terms {} removed sign {} content {} monomial {}",
                        c.p,
                        poly.degree(),
                        poly.nterms(),
                        norm.sign,
                        norm.content,
                        if mono.is_empty() { "1".to_string() } else { mono.join(" ") }
                    );
                    text.push_str(&poly.to_text());
                }
            }
            emit(&c.out, &text)
        }
        Cmd::Profile { common: c, eliminate, compressed, factor } => {
            check_p(c.p, &PRIMES[1..], long)?;
            let var = eliminate.unwrap_or_else(|| default_eliminate(compressed).to_string());
            let ok = if compressed { ["s", "w"] } else { ["u", "v"] };
            if !ok.contains(&var.as_str()) {
                return Err(Failure::Usage(format!("--eliminate must be one of {ok:?}")));
            }
            let mut prof = profile(c.p, &var, compressed)?;
            if factor {
                timed("factor", || prof.factor_parts()).map_err(comp("bigpoly"))?;
            }
            let mut text = header(
                "profile",
                &[
                    ("p", c.p.to_string()),
                    ("eliminate", var),
                    ("compressed", compressed.to_string()),
                    ("factor", factor.to_string()),
                ],
            );
            text.push_str(&prof.to_string());
            emit(&c.out, &text)
        }
        Cmd::Counts(c) => {
            check_p(c.p, &PRIMES[1..], long)?;
            let u_side = profile(c.p, "v", false)?;
            let v_side = profile(c.p, "u", false)?;
            let (nu, nv) = coordinate_counts(&u_side, &v_side);
            let b = pigeonhole_bound(nu, nv).map_err(comp("intersect"))?;
            let mut text = header("counts", &[("p", c.p.to_string())]);
            let _ = writeln!(text, "u-coordinates {nu}");
            let _ = writeln!(text, "v-coordinates {nv}");
            let _ = writeln!(text, "shared v per u at least {}", b.multiplicity);
            let _ = writeln!(text, "intersection size at least {}", b.cardinality);
            emit(&c.out, &text)
        }
        Cmd::Certify { common: c, bits } => {
            check_p(c.p, &PRIMES[1..], long)?;
            if bits < 128 {
                return Err(Failure::Usage("--bits must be at least 128".into()));
            }
            let cert = timed("certify", || build_certificate(c.p, bits)).map_err(comp("numcert"))?;
            let report = verify_certificate(&cert);
            print!("{}", header("certify", &[("p", c.p.to_string()), ("bits", bits.to_string())]));
            let counts: Vec<String> = cert.order_counts().iter().map(|(o, n)| format!("{o}:{n}")).collect();
            println!("points {} orders {{{}}}", cert.points.len(), counts.join(", "));
            println!("{report}");
            let json = cert.to_json();
            match &c.out {
                Some(path) => emit(&Some(path.clone()), &json)?,
                None => println!("{json}"),
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification("numcert: freshly built certificate fails verification".into()))
            }
        }
        Cmd::Verify { path } => {
            let s = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Computation(format!("io: {}: {e}", path.display())))?;
            let cert = Certificate::from_json(&s).map_err(|e| Failure::Verification(format!("numcert: unreadable certificate: {e}")))?;
            let report = verify_certificate(&cert);
            print!("{}", header("verify", &[("p", cert.p.to_string()), ("bits", cert.precision.to_string())]));
            println!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("numcert: {} check(s) failed", report.failures().len())))
            }
        }
        Cmd::CompressedTable(c) => {
            check_p(c.p, &PRIMES[1..], long)?;
            let mut text = header("remark4-table", &[("p", c.p.to_string())]);
            let _ = writeln!(text, "side\tmultiplicity\tdegree\tirreducible degrees");
            let mut profiles = Vec::new();
            for (eliminate, side) in [("w", "u^4"), ("s", "v/u")] {
                let mut prof = profile(c.p, eliminate, true)?;
                timed("factor", || prof.factor_parts()).map_err(comp("bigpoly"))?;
                for part in &prof.parts {
                    let d: Vec<String> =
                        part.factor_degrees.iter().flatten().map(|x| x.to_string()).collect();
                    let _ = writeln!(text, "{side}\t{}\t{}\t{}", part.multiplicity, part.degree(), d.join(" "));
                }
                profiles.push(prof);
            }
            for prof in &profiles {
                text.push('\n');
                text.push_str(&prof.to_string());
            }
            emit(&c.out, &text)
        }
        Cmd::TorfieldChecks { out } => {
            let rows = timed("torfield", torfield::run_checks);
            let mut text = header("torfield-checks", &[]);
            for r in &rows {
                let _ = writeln!(text, "{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            emit(&out, &text)?;
            if rows.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Failure::Verification("torfield: check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Computation(m) | Failure::Verification(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
