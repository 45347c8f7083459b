//! `lfunction`: evaluate the L function, inspect its invariance group, export the
//! relation catalog and run the verification suites.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on usage
//! or domain errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use lfunction::catalog::{export_catalog, Catalog, CatalogFormat};
use lfunction::group::{permutation_subgroup, shared_cosets, shared_group, verify_coxeter_presentation};
use lfunction::lfunc::{eval_l, parse_complex, EvalMethod, ParameterPoint};
use lfunction::verify::{
    run_classical, select_elements, verify_invariance, ClassicalConfig, ClassicalSuite, ElementSelection,
    SampleConstraints, VerificationReport,
};
use lfunction::Error;

#[derive(Parser)]
#[command(name = "lfunction", version, about = "Saalschützian 4F3(1) L function and its W(D5) invariances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate L at a point of the hyperplane e+f+g-a-b-c-d = 1.
    Eval {
        /// Seven comma-separated values a,b,c,d,e,f,g; each "re" or "re+imi".
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Invariance group facts.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Export all 1920 relations.
    Catalog {
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, size of the permutation subgroup and the D5 presentation check.
    Info,
    /// The six double cosets of the permutation subgroup.
    Cosets {
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// L(p) = L(M·p) for sampled points p and group elements M.
    Relations(RelationsArgs),
    /// Thomae, Bailey, Barnes' lemmas and the two-term 3F2 relation.
    Classical(ClassicalArgs),
}

#[derive(Args)]
struct RelationsArgs {
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// all, reps or random:K
    #[arg(long, default_value = "reps")]
    elements: String,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample complex parameters.
    #[arg(long)]
    complex: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct ClassicalArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    which: SuiteArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Series,
    #[value(name = "7f6")]
    SevenF6,
    Barnes,
}

impl From<MethodArg> for EvalMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => EvalMethod::Auto,
            MethodArg::Series => EvalMethod::Series,
            MethodArg::SevenF6 => EvalMethod::SevenF6,
            MethodArg::Barnes => EvalMethod::Barnes,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Thomae,
    Bailey,
    Barnes1,
    Barnes2,
    #[value(name = "eq530", alias = "two-term")]
    TwoTerm,
    All,
}

impl From<SuiteArg> for ClassicalSuite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Thomae => ClassicalSuite::Thomae,
            SuiteArg::Bailey => ClassicalSuite::Bailey,
            SuiteArg::Barnes1 => ClassicalSuite::Barnes1,
            SuiteArg::Barnes2 => ClassicalSuite::Barnes2,
            SuiteArg::TwoTerm => ClassicalSuite::TwoTerm,
            SuiteArg::All => ClassicalSuite::All,
        }
    }
}

/// Pretty JSON with every float printed to 17 significant digits.
struct Sig17(PrettyFormatter<'static>);

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Error> {
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, Sig17(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    writeln!(out)?;
    Ok(())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), |v| format!("{v:.16e}"))
}

fn write_report(out: &mut dyn Write, report: &VerificationReport, format: FormatArg) -> Result<(), Error> {
    if format == FormatArg::Json {
        return write_json(out, report);
    }
    for c in &report.checks {
        write!(
            out,
            "{} {} abs_diff={} tol={:.16e} point=[{}]",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            fmt_opt(c.abs_diff),
            c.tol,
            c.point.join(",")
        )?;
        if let Some(r) = &c.reason {
            write!(out, " reason={r}")?;
        }
        writeln!(out)?;
    }
    let s = report.summary;
    writeln!(out, "total={} passed={} failed={}", s.total, s.passed, s.failed)?;
    Ok(())
}

fn parse_params(s: &str) -> Result<ParameterPoint, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 7 {
        return Err(Error::Parse(format!("expected 7 comma-separated values, got {}", parts.len())));
    }
    let v = parts.iter().map(|p| parse_complex(p)).collect::<Result<Vec<_>, _>>()?;
    ParameterPoint::new(std::array::from_fn(|i| v[i]))
}

/// Exit status of a completed run: whether every check passed.
fn run(cli: Cli, out: &mut dyn Write) -> Result<bool, Error> {
    match cli.command {
        Command::Eval { params, method } => {
            let p = parse_params(&params)?;
            let r = eval_l(&p, method.into())?;
            write_json(out, &r)?;
            Ok(true)
        }
        Command::Group { command: GroupCommand::Info } => {
            let g = shared_group();
            let sigma = permutation_subgroup(g).len();
            let (coxeter, ok) = match verify_coxeter_presentation() {
                Ok(r) if r.ok() => ("ok".to_string(), true),
                Ok(_) => ("fail".to_string(), false),
                Err(Error::PresentationFailure(i, j)) => (format!("fail({i},{j})"), false),
                Err(e) => return Err(e),
            };
            writeln!(out, "order={} sigma={sigma} coxeter={coxeter}", g.order())?;
            Ok(ok && g.order() == 1920 && sigma == 48)
        }
        Command::Group {
            command: GroupCommand::Cosets { format },
        } => {
            let cosets = shared_cosets();
            if format == FormatArg::Json {
                #[derive(Serialize)]
                struct Row<'a> {
                    template: &'a str,
                    size: usize,
                    representative: &'a str,
                    word: String,
                }
                let rows: Vec<Row> = cosets
                    .iter()
                    .map(|c| Row {
                        template: c.template.as_str(),
                        size: c.size,
                        representative: c.template.representative_label(),
                        word: c.representative.word_string(),
                    })
                    .collect();
                write_json(out, &rows)?;
            } else {
                for c in cosets {
                    writeln!(
                        out,
                        "{} size={} representative={} word={}",
                        c.template.as_str(),
                        c.size,
                        c.template.representative_label(),
                        c.representative.word_string()
                    )?;
                }
            }
            Ok(true)
        }
        Command::Catalog { format, out: path } => {
            let catalog = Catalog::build()?;
            let fmt = match format {
                FormatArg::Json => CatalogFormat::Json,
                FormatArg::Text => CatalogFormat::Text,
            };
            match path {
                Some(p) => {
                    let mut w = BufWriter::new(File::create(&p)?);
                    export_catalog(&catalog, fmt, &mut w)?;
                    w.flush()?;
                }
                None => export_catalog(&catalog, fmt, out)?,
            }
            Ok(true)
        }
        Command::Verify {
            command: VerifyCommand::Relations(a),
        } => {
            let sel: ElementSelection = a.elements.parse()?;
            let elements = select_elements(sel, a.seed)?;
            let constraints = SampleConstraints {
                seed: a.seed,
                complex: a.complex,
                ..Default::default()
            };
            let report = verify_invariance(&elements, a.samples, a.tol, &constraints)?;
            write_report(out, &report, a.format)?;
            Ok(report.all_pass())
        }
        Command::Verify {
            command: VerifyCommand::Classical(a),
        } => {
            let report = run_classical(a.which.into(), a.seed, &ClassicalConfig::default())?;
            write_report(out, &report, a.format)?;
            Ok(report.all_pass())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
