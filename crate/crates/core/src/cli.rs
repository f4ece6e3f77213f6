//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 input error.

use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::calculus::refine_with_engine;
use crate::report::{
    bounds_report, engine_s2, eval_report, invariant_report, invariant_table, movie_report,
    movie_table, parse_n_range, read_expr, read_movie, DiagramSource, ReportError,
};
use crate::verify::{self, Fault, VerifyOptions, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "snlink",
    version,
    about = "Concordance invariants s_n of links, with genus and splitting bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// s_n of a diagram over a range of n, with s_2 from the exact engine.
    Invariant(DiagramArgs),
    /// Slice-genus, Seifert-genus and splitting-number bounds.
    Bounds(DiagramArgs),
    /// Evaluate a link expression (JSON file).
    Eval {
        #[arg(long = "expr", value_name = "FILE")]
        expr: String,
        #[arg(long = "n", default_value = "2")]
        n: String,
        /// At n = 2, replace an interval by the engine value on a realized diagram.
        #[arg(long)]
        refine: bool,
        #[arg(long)]
        json: bool,
    },
    /// Validate a cobordism movie (JSON lines file).
    Movie {
        #[arg(long = "movie", value_name = "FILE")]
        movie: String,
        #[arg(long = "n", default_value = "2")]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run the property suites over the corpus.
    Verify {
        #[arg(long)]
        property: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "max-crossings", default_value_t = 8)]
        max_crossings: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Corrupt the computation to check that failures are reported.
        #[arg(long = "inject-fault", value_enum)]
        inject_fault: Option<FaultArg>,
        #[arg(long)]
        json: bool,
        /// List property names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FaultArg {
    Differential,
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).multiple(false).args(["pd", "braid", "torus"])))]
pub struct DiagramArgs {
    #[arg(long, help = "PD code, e.g. \"X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]\"")]
    pub pd: Option<String>,
    /// Braid word, e.g. "1 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    #[arg(long, requires = "braid")]
    pub strands: Option<usize>,
    /// Torus link T(p, q).
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub torus: Option<Vec<usize>>,
    /// n or an inclusive range A..B.
    #[arg(long = "n", default_value = "2")]
    pub n: String,
    #[arg(long)]
    pub json: bool,
}

impl DiagramArgs {
    fn source(&self) -> DiagramSource {
        if let Some(pd) = &self.pd {
            DiagramSource::Pd(pd.clone())
        } else if let Some(word) = &self.braid {
            DiagramSource::Braid {
                word: word.clone(),
                strands: self.strands,
            }
        } else {
            let t = self.torus.as_deref().unwrap_or(&[]);
            DiagramSource::Torus(t[0], t[1])
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn json_line<T: serde::Serialize>(out: &mut dyn Write, value: &T) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string(value).expect("reports serialize")
    );
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, ReportError> {
    match command {
        Command::Invariant(a) => {
            let source = a.source();
            let ns = parse_n_range(&a.n)?;
            let reports = ns
                .iter()
                .map(|&n| invariant_report(&source, n))
                .collect::<Result<Vec<_>, _>>()?;
            if a.json {
                reports.iter().for_each(|r| json_line(out, r));
            } else {
                let d = source.build()?;
                let engine = engine_s2(&d).ok();
                let _ = write!(out, "{}", invariant_table(&reports, engine));
                for r in &reports {
                    for t in &r.trace {
                        let _ = writeln!(out, "  n={}: {t}", r.n);
                    }
                }
            }
        }
        Command::Bounds(a) => {
            let source = a.source();
            for n in parse_n_range(&a.n)? {
                let r = bounds_report(&source, n)?;
                if a.json {
                    json_line(out, &r);
                } else {
                    let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
                    let _ = writeln!(
                        out,
                        "n={n}: s_n={} g4>={} g3={} sp>={}",
                        r.s_n,
                        r.bounds.g4_lb,
                        opt(r.bounds.g3),
                        opt(r.bounds.sp_lb)
                    );
                    if let Some(t) = &r.torus {
                        let _ =
                            writeln!(out, "  torus closed forms: g4={} sp={}", t.g4, t.splitting);
                        if let Some(s) = &t.schedule {
                            let _ = writeln!(out, "  splitting crossings: {s:?}");
                        }
                    }
                }
            }
        }
        Command::Eval {
            expr,
            n,
            refine,
            json,
        } => {
            let e = read_expr(&expr)?;
            for n in parse_n_range(&n)? {
                let mut r = eval_report(&expr, &e, n)?;
                if refine && n == 2 {
                    let v = refine_with_engine(&e, crate::calculus::sn_eval(&e, 2)?)?;
                    r.s_n = (&v).into();
                    r.trace = v.trace;
                }
                if json {
                    json_line(out, &r);
                } else {
                    let _ = writeln!(
                        out,
                        "n={n}: s_n = {}  (l={}, g4>={})",
                        r.s_n, r.components, r.bounds.g4_lb
                    );
                    for t in &r.trace {
                        let _ = writeln!(out, "  {t}");
                    }
                }
            }
        }
        Command::Movie { movie, n, json } => {
            if n < 2 {
                return Err(ReportError::BadRange(n.to_string()));
            }
            let m = read_movie(&movie)?;
            let r = movie_report(&movie, &m, n)?;
            if json {
                json_line(out, &r);
            } else {
                let _ = write!(out, "{}", movie_table(&r));
            }
            if r.numeric.as_ref().is_some_and(|c| !c.holds) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Verify {
            property,
            seed,
            max_crossings,
            samples,
            inject_fault,
            json,
            list,
        } => {
            if list {
                for p in verify::PROPERTIES {
                    let _ = writeln!(out, "{p}");
                }
                return Ok(EXIT_OK);
            }
            let opts = VerifyOptions {
                seed,
                max_crossings,
                property,
                samples,
                fault: inject_fault.map(|FaultArg::Differential| Fault::Differential),
            };
            let report = match verify::run(opts) {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                    return Ok(EXIT_INPUT);
                }
            };
            if json {
                json_line(out, &report);
            } else {
                let _ = write!(out, "{}", report.summary());
            }
            return Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            });
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("snlink").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn braid_range() {
        let (code, out, _) = call(&[
            "invariant",
            "--braid",
            "1 1 1",
            "--strands",
            "2",
            "--n",
            "2..4",
            "--json",
        ]);
        assert_eq!(code, 0);
        let vals: Vec<i64> = out
            .lines()
            .map(|l| {
                serde_json::from_str::<serde_json::Value>(l).unwrap()["s_n"]["exact"]
                    .as_i64()
                    .unwrap()
            })
            .collect();
        assert_eq!(vals, vec![-2, -4, -6]);
    }

    #[test]
    fn torus_table() {
        let (code, out, _) = call(&["invariant", "--torus", "2", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("s_2 (engine) = -3"), "{out}");
        let (_, json, _) = call(&["bounds", "--torus", "2", "4", "--json"]);
        let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
        assert_eq!(v["bounds"]["g4_lb"], 1);
        assert_eq!(v["bounds"]["sp_lb"], 2);
        assert_eq!(v["torus"]["splitting"], 2);
    }

    #[test]
    fn input_errors() {
        let (code, _, err) = call(&["invariant", "--pd", ""]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("l = 0"), "{err}");
        assert_eq!(call(&["invariant", "--pd", "X[1,2"]).0, EXIT_INPUT);
        assert_eq!(
            call(&["invariant", "--braid", "1", "--torus", "2", "3"]).0,
            EXIT_INPUT
        );
        assert_eq!(
            call(&["invariant", "--braid", "1 1 1", "--n", "1..3"]).0,
            EXIT_INPUT
        );
        assert_eq!(call(&["eval", "--expr", "/nonexistent.json"]).0, EXIT_INPUT);
        assert_eq!(call(&["verify", "--property", "nope"]).0, EXIT_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn negative_braid_words() {
        let (code, out, err) = call(&["invariant", "--braid", "-1 -1 -1", "--json"]);
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["s_n"]["exact"], 2);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = call(&["verify", "--property", "congruence", "--max-crossings", "4"]);
        assert_eq!(code, EXIT_OK, "{out}");
        let (code, out, _) = call(&[
            "verify",
            "--property",
            "d-squared",
            "--max-crossings",
            "3",
            "--inject-fault",
            "differential",
        ]);
        assert_eq!(code, EXIT_VERIFY_FAILED);
        assert!(out.contains("FAIL"));
    }
}
