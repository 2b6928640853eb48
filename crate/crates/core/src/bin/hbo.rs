use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use higher_bruhat::error::Error;
use higher_bruhat::perm::AffinePermutation;
use higher_bruhat::render::{self, parse_class_list, Format, Listing, Request, Target};
use higher_bruhat::reproduce::{reproduce, Artifact};
use higher_bruhat::verify::{run_sweep, Budget, Suite, SweepSpec};
use higher_bruhat::words::Word;

/// Higher Bruhat orders of intervals in finite and affine symmetric groups.
#[derive(Parser)]
#[command(name = "hbo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render one object for an element given by window or word.
    Show {
        /// inversions, permanent-poset, braid-graph, word-graph, bruhat,
        /// consistent, gr or reflection-order
        object: Target,
        #[command(flatten)]
        element: Element,
        #[arg(long)]
        k: Option<usize>,
        /// R for gr, e.g. "1256,1356"
        #[arg(long)]
        r: Option<String>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Sweep a suite of checks over a family of elements.
    Verify {
        /// A suite name or its short alias
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        /// Affine elements up to this length; omit for all of S_n
        #[arg(long)]
        max_len: Option<usize>,
        /// A single k or an inclusive range "lo..hi"
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = Budget::default().max_inversions)]
        budget_inversions: usize,
        #[arg(long, default_value_t = Budget::default().max_extensions)]
        budget_extensions: u128,
        /// Exit with status 3 when any instance was skipped
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value = "text")]
        format: Format,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a worked example and diff it against the embedded data.
    Reproduce {
        /// braid-words, permanent-poset, consistent-sets, gr-arcs,
        /// reversal-sets, admissible-count (or their short aliases)
        artifact: Artifact,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// List elements, reduced words, admissible orders or consistent sets.
    Enumerate {
        what: Listing,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        window: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct Element {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    window: Option<String>,
    /// A reduced word; needs --n
    #[arg(long)]
    word: Option<String>,
}

impl Element {
    fn resolve(&self) -> Result<(AffinePermutation, Option<Word>), Error> {
        match (&self.window, &self.word) {
            (Some(win), _) => {
                let w: AffinePermutation = win.parse()?;
                if let Some(n) = self.n.filter(|&n| n != w.n()) {
                    return Err(Error::WindowLength { n, got: w.n() });
                }
                let word = match &self.word {
                    Some(s) => Some(Word::parse(w.n(), s)?),
                    None => None,
                };
                Ok((w, word))
            }
            (None, Some(s)) => {
                let n = self
                    .n
                    .ok_or_else(|| Error::Unsupported("--word needs --n".into()))?;
                let word = Word::parse(n, s)?;
                Ok((word.apply(), Some(word)))
            }
            (None, None) => Err(Error::Unsupported("give --window or --word".into())),
        }
    }
}

fn parse_k(s: &str) -> Result<(usize, usize), Error> {
    let bad = |reason: &str| Error::Parse {
        what: "k",
        input: s.into(),
        reason: reason.into(),
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| bad(&e.to_string()));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => num(s).map(|k| (k, k)),
    }
}

enum Failure {
    Usage(Error),
    Check,
    Skipped,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Show {
            object,
            element,
            k,
            r,
            format,
        } => {
            let (w, word) = element.resolve()?;
            let mut req = Request::new(w);
            req.k = k;
            req.word = word;
            req.format = format;
            if let Some(r) = r {
                req.r = parse_class_list(&r, req.w.n())?;
            }
            print!("{}", render::show(object, &req)?);
        }
        Command::Verify {
            suite,
            n,
            max_len,
            k,
            workers,
            budget_inversions,
            budget_extensions,
            strict,
            format,
            out,
        } => {
            let mut spec = SweepSpec::new(suite, n, max_len).with_workers(workers);
            if let Some(k) = k {
                let (lo, hi) = parse_k(&k)?;
                spec = spec.with_k(lo, hi);
            }
            spec.budget = Budget {
                max_inversions: budget_inversions,
                max_extensions: budget_extensions,
            };
            spec.output = out.as_ref().map(|p| p.display().to_string());
            let report = run_sweep(&spec)?;
            let json = serde_json::to_string_pretty(&report).map_err(Error::from)?;
            if let Some(path) = &out {
                std::fs::write(path, &json).map_err(Error::from)?;
            }
            match format {
                Format::Json => println!("{json}"),
                _ => {
                    for r in report.records.iter().filter(|r| !r.pass || r.skip_reason.is_some()) {
                        let k = r.k.map(|k| format!(" k={k}")).unwrap_or_default();
                        match &r.witness {
                            Some(wit) => println!("FAIL {}{k}: {}", r.w, wit.detail),
                            None => println!("SKIP {}{k}: {}", r.w, r.skip_reason.as_deref().unwrap_or("")),
                        }
                    }
                    let s = report.summary;
                    println!(
                        "{}: {} pass, {} fail, {} skipped in {} ms",
                        suite, s.pass, s.fail, s.skip, report.elapsed_ms
                    );
                }
            }
            if report.summary.fail > 0 {
                return Err(Failure::Check);
            }
            if strict && report.summary.skip > 0 {
                return Err(Failure::Skipped);
            }
        }
        Command::Reproduce { artifact, format } => {
            let rep = reproduce(artifact)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep).map_err(Error::from)?),
                _ => print!("{rep}"),
            }
            if !rep.passed() {
                return Err(Failure::Check);
            }
        }
        Command::Enumerate {
            what,
            n,
            window,
            k,
            max_len,
            format,
        } => {
            let w: Option<AffinePermutation> = window.as_deref().map(str::parse).transpose()?;
            let n = n
                .or(w.as_ref().map(|w| w.n()))
                .ok_or_else(|| Error::Unsupported("give --n or --window".into()))?;
            print!("{}", render::enumerate(what, n, w.as_ref(), k, max_len, format)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            eprintln!("run `hbo help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Skipped) => ExitCode::from(3),
    }
}
