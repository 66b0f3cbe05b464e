//! Command-line front end and verification suites.
//!
//! [`run`] parses arguments, writes the report to `out` and returns the exit
//! code: [`EXIT_OK`], [`EXIT_USAGE`], [`EXIT_INCONCLUSIVE`] or
//! [`EXIT_PRECONDITION`].

mod cli;
pub mod config;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;

use crate::dynamics::{sweep_sets, invariant_set, AnosovMap, SweepReport, Verdict};
use crate::error::Error;
use crate::farey::{farey_distance, farey_geodesic, farey_tl, Slope, ToralMatrix};
use crate::finecurves::{fine_distance, minimal_position_rel, PolyCurve};
use crate::mapclass::MappingClassRelP;
use crate::rational::fmt_q;
use crate::tricurves::{BracketBudget, PunctureSet};

pub use cli::{Cli, Command};
pub use config::SweepConfig;
use cli::{FareyCmd, FineArgs, FineCmd, PairArgs, SweepArgs, TlArgs, VerifyArgs};
use verify::SuiteResult;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

struct Failure(i32, String);

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_USAGE, format!("io: {e}"))
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn precondition(e: Error) -> Failure {
    match e {
        Error::Parse(_) | Error::Config(_) | Error::Io(_) | Error::NotUnimodular(_) | Error::NotACurveClass(..) => usage(e),
        _ => Failure(EXIT_PRECONDITION, e.to_string()),
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let r = match cli.command {
        Command::Farey(FareyCmd::Dist(a)) => farey_dist(&a, out),
        Command::Farey(FareyCmd::Geodesic(a)) => farey_geo(&a, out),
        Command::Farey(FareyCmd::Tl(a)) => farey_tl_cmd(&a, out),
        Command::Sweep(a) => sweep(&a, out),
        Command::Fine(FineCmd::Dist(a)) => fine(&a, out),
        Command::Verify(a) => verify_cmd(&a, out),
    };
    match r {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn slope(s: &str) -> Result<Slope, Failure> {
    s.parse().map_err(usage)
}

fn matrix(s: &str) -> Result<ToralMatrix, Failure> {
    s.parse().map_err(usage)
}

fn read(p: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))
}

fn farey_dist(a: &PairArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    writeln!(out, "{}", farey_distance(&slope(&a.from)?, &slope(&a.to)?))?;
    Ok(EXIT_OK)
}

fn farey_geo(a: &PairArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = farey_geodesic(&slope(&a.from)?, &slope(&a.to)?);
    let parts: Vec<String> = g.iter().map(|s| s.to_string()).collect();
    writeln!(out, "{}", parts.join(" "))?;
    Ok(EXIT_OK)
}

fn farey_tl_cmd(a: &TlArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let m = matrix(&a.matrix)?;
    let r = farey_tl(&m, a.mmax, a.kmax);
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializes"))?;
    } else if let Some(c) = &r.certificate {
        writeln!(out, "exact {} (m = {}, D = {}, base {})", fmt_q(&c.tl), c.period, c.displacement, c.base)?;
        let g: Vec<String> = c.geodesic.iter().map(|s| s.to_string()).collect();
        writeln!(out, "geodesic {}", g.join(" "))?;
        writeln!(out, "verified k <= {}", c.verified_multiples)?;
    } else if let Some(x) = &r.bracket.exact {
        writeln!(out, "exact {} ({})", fmt_q(x), r.class)?;
    } else {
        writeln!(out, "inconclusive: {}, no axis with m <= {}", r.bracket.describe(), a.mmax)?;
    }
    Ok(if r.inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK })
}

fn fine(a: &FineArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let alpha = PolyCurve::parse(&read(&a.alpha)?).map_err(precondition)?;
    let beta = PolyCurve::parse(&read(&a.beta)?).map_err(precondition)?;
    let p = PunctureSet::parse(&read(&a.punctures)?).map_err(precondition)?;
    minimal_position_rel(&alpha, &beta, &p).map_err(precondition)?;
    let br = fine_distance(&alpha, &beta, &p, &BracketBudget::default()).map_err(precondition)?;
    if a.json {
        #[derive(Serialize)]
        struct Report<'a> {
            punctures: String,
            preconditions_held: bool,
            bracket: &'a crate::tricurves::DistanceBracket,
        }
        let rep = Report { punctures: p.to_string(), preconditions_held: true, bracket: &br };
        writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializes"))?;
    } else {
        if br.is_exact() {
            writeln!(out, "d† = {}", br.lo)?;
        } else {
            writeln!(out, "d† in {}", br.describe())?;
        }
        writeln!(out, "preconditions held: simple, essential, transverse, minimal position rel P = {p}")?;
    }
    Ok(if br.is_exact() { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = SweepConfig::parse(&read(&a.config)?).map_err(usage)?;
    let opts = cfg.options().map_err(usage)?;
    let m = matrix(&cfg.matrix)?;
    let f = AnosovMap::new(m.clone()).map_err(precondition)?;
    let mut labels = Vec::new();
    let mut sets = Vec::new();
    for l in &cfg.periods {
        labels.push(l.clone());
        sets.push(invariant_set(&f, l).map_err(precondition)?);
    }
    for p in cfg.explicit_sets().map_err(usage)? {
        MappingClassRelP::from_matrix(&m, &p).map_err(|e| usage(format!("puncture set {p}: {e}")))?;
        labels.push(Vec::new());
        sets.push(p);
    }
    let report = sweep_sets(&f, &labels, &sets, &opts).map_err(precondition)?;
    let dir = a.out.clone().or_else(|| cfg.output.clone()).unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    let stem = a.config.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    std::fs::write(dir.join(format!("{stem}.json")), report.to_json())?;
    std::fs::write(dir.join(format!("{stem}.csv")), report.to_csv())?;
    write!(out, "{}", report.to_csv())?;
    Ok(sweep_code(&report))
}

fn sweep_code(r: &SweepReport) -> i32 {
    if r.any_fail() {
        EXIT_PRECONDITION
    } else if r.entries.iter().any(|e| e.verdict == Verdict::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

/// Runs one named suite; `None` for an unknown name.
pub fn run_suite(name: &str, a: &ToralMatrix, seed: u64) -> Option<Vec<SuiteResult>> {
    let one = |r: SuiteResult| Some(vec![r]);
    match name {
        "farey-oracle" => one(verify::farey_oracle(50)),
        "axis" => one(verify::axis_suite(10, seed, 10, 12, 5)),
        "power-conjugacy" => one(verify::power_conjugacy(5, seed)),
        "faithfulness" => one(verify::faithfulness(40, 4)),
        "sandwich" => one(verify::sandwich(a, 8)),
        "fine-independence" | "lemma34-independence" => one(verify::fine_independence(seed, 5)),
        "periodic" => one(verify::periodic_law(&[verify::fibonacci(), verify::cat_map()], 6)),
        "soundness" => {
            let mut rs = vec![
                verify::axis_suite(10, seed, 10, 12, 5),
                verify::power_conjugacy(5, seed),
                verify::sandwich(a, 8),
                verify::fine_independence(seed, 5),
            ];
            rs.push(verify::soundness(&rs));
            Some(rs)
        }
        "all" => {
            let mut rs = Vec::new();
            for s in ["farey-oracle", "axis", "power-conjugacy", "faithfulness", "sandwich", "fine-independence", "periodic"] {
                rs.extend(run_suite(s, a, seed)?);
            }
            rs.push(verify::soundness(&rs));
            Some(rs)
        }
        _ => None,
    }
}

fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let m = matrix(&a.matrix)?;
    let rs = run_suite(&a.suite, &m, a.seed).ok_or_else(|| usage(format!("unknown suite '{}'", a.suite)))?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rs).expect("serializes"))?;
    } else {
        for r in &rs {
            writeln!(out, "{}", r.line())?;
        }
    }
    Ok(if rs.iter().any(|r| !r.passed) {
        EXIT_PRECONDITION
    } else if rs.iter().any(|r| r.inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}
