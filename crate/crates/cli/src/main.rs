mod presets;

use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lucanomial::format::{parse_sequence_file, triangle_to_csv, triangle_to_json};
use lucanomial::verify::Suite;
use lucanomial::{
    build_triangle, factorial_binomial, recurrence_binomial, CoeffRule, FonteneVariant, GridSpec,
    LucasParams, Rational, Route, SequenceContext, SuiteSelector, Summary,
};
use serde_json::json;

use presets::{parse_initial, Family, Presets};

#[derive(Parser)]
#[command(
    name = "lucanomial",
    version,
    about = "Exact Lucas sequences and their generalized binomial coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the terms 0..=n of a sequence.
    Seq {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long, value_enum, default_value_t = SeqFormat::Text)]
        format: SeqFormat,
    },
    /// Print one generalized binomial coefficient C(n, k).
    Binom {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(short = 'k', long = "k")]
        k: usize,
        /// `factorial`, `recurrence` (the family's own rule), or a rule name.
        #[arg(long, default_value = "factorial")]
        rule: String,
        /// Compute by both routes and compare.
        #[arg(long)]
        check: bool,
    },
    /// Print rows 0..rows-1 of the coefficient triangle.
    Triangle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        rows: u64,
        #[arg(long, default_value = "recurrence")]
        rule: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep identity checks over a parameter grid, one JSON report per line.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: SuiteSelector,
        #[arg(long = "P-range", value_parser = parse_range, allow_hyphen_values = true, default_value = "-3..3")]
        p_range: RangeInclusive<i64>,
        #[arg(long = "Q-range", value_parser = parse_range, allow_hyphen_values = true, default_value = "-3..3")]
        q_range: RangeInclusive<i64>,
        /// Largest n for coefficient sweeps.
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Largest r and s for addition and coefficient sweeps.
        #[arg(long, default_value_t = 20)]
        r_max: usize,
        /// Only print the summary.
        #[arg(short, long)]
        quiet: bool,
    },
    /// Binomials over a sequence read from a file.
    Fontene {
        file: PathBuf,
        #[arg(short = 'n', long = "n", requires = "k", conflicts_with = "rows")]
        n: Option<usize>,
        #[arg(short = 'k', long = "k", requires = "n")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "n", value_parser = clap::value_parser!(u64).range(1..))]
        rows: Option<u64>,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// fibonacci, lucas, pell, mersenne, gaussian:<q>, or a user preset.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    preset: Option<String>,
    #[arg(
        long = "P",
        id = "p",
        value_name = "P",
        allow_hyphen_values = true,
        requires = "q"
    )]
    p: Option<Rational>,
    #[arg(
        long = "Q",
        id = "q",
        value_name = "Q",
        allow_hyphen_values = true,
        requires = "p"
    )]
    q: Option<Rational>,
    /// Overrides the preset's family.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Starting terms `a,b` for the w and h families.
    #[arg(long, value_parser = parse_initial, allow_hyphen_values = true)]
    initial: Option<[Rational; 2]>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

/// Failure classes, each with its own exit status.
enum Failure {
    Usage(String),
    Singular(String),
    Internal(String),
    Io(io::Error),
}

impl Failure {
    fn status(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Singular(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<lucanomial::Error> for Failure {
    fn from(e: lucanomial::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else if e.is_singular() {
            Failure::Singular(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Singular(msg) => eprintln!("error: {msg}"),
                Failure::Internal(msg) => eprintln!("internal inconsistency: {msg}"),
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.status())
        }
    }
}

fn run(command: Command) -> CmdResult {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match command {
        Command::Seq { family, n, format } => cmd_seq(&mut out, family, n, format),
        Command::Binom {
            family,
            n,
            k,
            rule,
            check,
        } => cmd_binom(&mut out, family, n, k, &rule, check),
        Command::Triangle {
            family,
            rows,
            rule,
            format,
            output,
        } => {
            let mut ctx = family.context()?;
            let route = parse_route(&rule, &ctx)?;
            let triangle = build_triangle(&mut ctx, route, rows as usize - 1)?;
            let text = match format {
                TableFormat::Json => triangle_to_json(&triangle),
                TableFormat::Csv => triangle_to_csv(&triangle),
            };
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            p_range,
            q_range,
            n_max,
            r_max,
            quiet,
        } => {
            let grid = GridSpec {
                p_range,
                q_range,
                n_max,
                r_max,
                s_max: r_max,
                ..GridSpec::default()
            };
            cmd_verify(&mut out, &grid, suite, quiet)
        }
        Command::Fontene {
            file,
            n,
            k,
            rows,
            format,
        } => cmd_fontene(&mut out, &file, n.zip(k), rows, format),
    };
    out.flush()?;
    code
}

impl FamilyArgs {
    fn context(&self) -> Result<SequenceContext, Failure> {
        let (p, q, mut family, mut initial) = match (&self.preset, &self.p, &self.q) {
            (Some(name), _, _) => {
                let presets = Presets::load().map_err(Failure::Usage)?;
                let preset = presets.get(name).map_err(Failure::Usage)?;
                (preset.p, preset.q, preset.family, preset.initial)
            }
            (None, Some(p), Some(q)) => (p.clone(), q.clone(), Family::U, None),
            _ => {
                return Err(Failure::Usage(
                    "give either --preset or both --P and --Q".into(),
                ))
            }
        };
        if let Some(f) = self.family {
            family = f;
        }
        if self.initial.is_some() {
            initial = self.initial.clone();
        }
        let kind = family.kind(initial.as_ref()).map_err(Failure::Usage)?;
        let params = LucasParams::new(p, q)?;
        Ok(SequenceContext::new(params, kind)?)
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, found `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start `{a}`"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// `factorial`, `recurrence` for the family's own rule, or an explicit rule
/// name.
fn parse_route(rule: &str, ctx: &SequenceContext) -> Result<Route, Failure> {
    let route = match rule {
        "recurrence" => Route::Recurrence(CoeffRule::default_for(ctx.kind())),
        other => other.parse().map_err(Failure::Usage)?,
    };
    if let Route::Recurrence(rule) = route {
        if !rule.applies_to(ctx.kind()) {
            return Err(Failure::Usage(format!(
                "rule `{rule}` does not apply to family {}",
                ctx.kind().tag()
            )));
        }
    }
    Ok(route)
}

fn cmd_seq(out: &mut impl Write, family: FamilyArgs, n: usize, format: SeqFormat) -> CmdResult {
    let mut ctx = family.context()?;
    let terms = ctx.terms(n)?;
    match format {
        SeqFormat::Text => {
            let words: Vec<String> = terms.iter().map(Rational::to_string).collect();
            writeln!(out, "{}", words.join(" "))?;
        }
        SeqFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&terms).expect("terms serialize")
        )?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_binom(
    out: &mut impl Write,
    family: FamilyArgs,
    n: usize,
    k: usize,
    rule: &str,
    check: bool,
) -> CmdResult {
    if k > n {
        return Err(Failure::Usage(format!("need 0 <= k <= n, got n={n} k={k}")));
    }
    let mut ctx = family.context()?;
    let route = parse_route(rule, &ctx)?;
    if !check {
        let value = evaluate(&mut ctx, route, n, k)?;
        writeln!(out, "{value}")?;
        return Ok(ExitCode::SUCCESS);
    }
    let recurrence = match route {
        Route::Recurrence(rule) => rule,
        Route::Factorial => CoeffRule::default_for(ctx.kind()),
    };
    let a = factorial_binomial(&mut ctx, n, k)?;
    let b = recurrence_binomial(&mut ctx, recurrence, n, k)?;
    writeln!(out, "factorial: {a}")?;
    writeln!(out, "{recurrence}: {b}")?;
    if a != b {
        writeln!(out, "mismatch")?;
        return Err(Failure::Internal(format!(
            "routes disagree at C({n},{k}): {a} vs {b}"
        )));
    }
    writeln!(out, "agree")?;
    Ok(ExitCode::SUCCESS)
}

fn evaluate(
    ctx: &mut SequenceContext,
    route: Route,
    n: usize,
    k: usize,
) -> Result<Rational, Failure> {
    Ok(match route {
        Route::Factorial => factorial_binomial(ctx, n, k)?,
        Route::Recurrence(rule) => recurrence_binomial(ctx, rule, n, k)?,
    })
}

fn cmd_verify(
    out: &mut impl Write,
    grid: &GridSpec,
    selector: SuiteSelector,
    quiet: bool,
) -> CmdResult {
    let reports = lucanomial::run_suite(grid, selector);
    if !quiet {
        for report in &reports {
            writeln!(out, "{}", report.to_json_line())?;
        }
    }
    let summary = Summary::from_reports(&reports);
    let by_suite: serde_json::Map<String, serde_json::Value> = selector
        .suites()
        .into_iter()
        .map(|suite: Suite| {
            let own: Vec<_> = reports
                .iter()
                .filter(|r| r.suite == suite.name())
                .cloned()
                .collect();
            (suite.name().to_string(), json!(Summary::from_reports(&own)))
        })
        .collect();
    eprintln!("{}", json!({ "summary": summary, "suites": by_suite }));
    Ok(if summary.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_fontene(
    out: &mut impl Write,
    file: &PathBuf,
    site: Option<(usize, usize)>,
    rows: Option<u64>,
    format: TableFormat,
) -> CmdResult {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let values = parse_sequence_file(&text)?;
    let mut ctx = SequenceContext::custom(values)?;
    let variants = [
        Route::Recurrence(CoeffRule::Fontene(FonteneVariant::Left)),
        Route::Recurrence(CoeffRule::Fontene(FonteneVariant::Right)),
    ];
    if let Some((n, k)) = site {
        if k > n {
            return Err(Failure::Usage(format!("need 0 <= k <= n, got n={n} k={k}")));
        }
        let value = factorial_binomial(&mut ctx, n, k)?;
        for route in variants {
            let other = evaluate(&mut ctx, route, n, k)?;
            if other != value {
                return Err(Failure::Internal(format!(
                    "{} gives {other}, factorial gives {value} at C({n},{k})",
                    route.name()
                )));
            }
        }
        writeln!(out, "{value}")?;
        return Ok(ExitCode::SUCCESS);
    }
    let n_max = rows.expect("clap requires --rows without -n") as usize - 1;
    let triangle = build_triangle(&mut ctx, Route::Factorial, n_max)?;
    for route in variants {
        if build_triangle(&mut ctx, route, n_max)?.rows != triangle.rows {
            return Err(Failure::Internal(format!(
                "{} triangle disagrees with factorial",
                route.name()
            )));
        }
    }
    let text = match format {
        TableFormat::Json => triangle_to_json(&triangle),
        TableFormat::Csv => triangle_to_csv(&triangle),
    };
    out.write_all(text.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..1").unwrap(), 1..=1);
        assert_eq!(parse_range("-3..-1").unwrap(), -3..=-1);
        assert_eq!(parse_range("-2..=2").unwrap(), -2..=2);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("3").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
