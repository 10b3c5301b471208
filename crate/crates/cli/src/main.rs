use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use surdsym_core::census::{self, TableKind};
use surdsym_core::cf::{self, format_modular_period, format_period};
use surdsym_core::oracle::{self, default_bound};
use surdsym_core::period;
use surdsym_core::reduction;
use surdsym_core::report::{self, Format};
use surdsym_core::{Error, Form, Generator, Int};

#[derive(Parser, Debug)]
#[command(name = "surdsym", version, about = "Symmetry types of classes of indefinite binary quadratic forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Worker threads for table and stats sweeps.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Md,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Md => Format::Markdown,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
#[command(allow_negative_numbers = true)]
struct FormArgs {
    m: Int,
    n: Int,
    k: Int,
}

impl FormArgs {
    fn form(self) -> Form {
        Form::new(self.m, self.n, self.k)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Nonzero,
    Zero,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full class report: period, counts and symmetry type.
    Classify(FormArgs),
    /// Period of the continued fraction of the first root.
    Period(FormArgs),
    /// Number of class members in H0 and in the A and B domains.
    Counts(FormArgs),
    /// Move the form into H0, or with --classical reduce it by R·A^b words.
    Reduce {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        classical: bool,
    },
    /// Modular continued fraction of the first root.
    Modular {
        #[command(flatten)]
        form: FormArgs,
        /// Also list the reduced forms of the class.
        #[arg(long)]
        cycle: bool,
    },
    /// Principal points of the H0 cycle and the orbit search summary.
    Orbit {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        bound: Option<Int>,
    },
    /// One representative per class for every discriminant up to --delta-max.
    Table {
        #[arg(long, default_value_t = 100)]
        delta_max: Int,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Number and fraction of classes of each symmetry type per discriminant.
    Stats {
        #[arg(long, default_value_t = 10_000)]
        delta_max: Int,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
}

impl From<Which> for TableKind {
    fn from(w: Which) -> Self {
        match w {
            Which::Nonzero => TableKind::NonZero,
            Which::Zero => TableKind::Zero,
            Which::All => TableKind::All,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) | Error::AmbiguousSymmetry(_) => 2,
        _ => 1,
    }
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String, Error> {
    let format = cli.format.map(Format::from);
    let json = format == Some(Format::Json);
    match &cli.command {
        Command::Classify(a) => {
            let r = period::classify_class(&a.form())?;
            report::render_classes(&[r], format.unwrap_or(Format::Markdown))
        }
        Command::Period(a) => {
            let f = a.form();
            let g = if f.m == 0 { f.apply(Generator::R)? } else { f };
            let gamma = cf::period_of_class(&g)?;
            Ok(if json {
                pretty(json!({ "form": f, "gamma": gamma }))
            } else {
                format!("{}\n", format_period(&gamma))
            })
        }
        Command::Counts(a) => {
            let r = period::classify_class(&a.form())?;
            Ok(if json {
                pretty(json!({ "delta": r.delta, "t": r.t, "t_up": r.t_up, "t_down": r.t_down }))
            } else {
                format!("t={} t_up={} t_down={}\n", r.t, r.t_up, r.t_down)
            })
        }
        Command::Reduce { form, classical } => {
            let f = form.form();
            let (g, word, inv) = if *classical {
                let (g, w) = reduction::reduce_classical(&f)?;
                (g, w, None)
            } else {
                let r = reduction::reduce_to_h0(&f)?;
                (r.form, r.word, r.involution)
            };
            let inv = inv.map_or("identity".to_string(), |i| i.to_string());
            Ok(if json {
                pretty(json!({ "input": f, "form": g, "word": word.to_string(), "involution": inv }))
            } else {
                format!("{g} word {word} involution {inv}\n")
            })
        }
        Command::Modular { form, cycle } => {
            let f = form.form();
            let mcf = cf::modular_cf_surd(&f)?;
            let reduced = if *cycle { Some(reduction::reduced_cycle(&f)?) } else { None };
            if json {
                return Ok(pretty(json!({
                    "preperiod": mcf.preperiod,
                    "period": mcf.period,
                    "reduced_forms": reduced.as_ref().map(|c| &c.forms),
                    "cycle_period": reduced.as_ref().map(|c| &c.modular_period),
                })));
            }
            let mut out = format!("{mcf}\n");
            if let Some(c) = reduced {
                out.push_str(&format!(
                    "{} reduced forms, cycle {}\n",
                    c.len(),
                    format_modular_period(&c.modular_period)
                ));
                for g in &c.forms {
                    out.push_str(&format!("{g}\n"));
                }
            }
            Ok(out)
        }
        Command::Orbit { form, bound } => {
            let f = form.form();
            let delta = f.discriminant()?;
            let bound = bound.unwrap_or_else(|| default_bound(delta.max(1)));
            let (h, _) = period::h0_member(&f)?;
            let points = oracle::principal_points(&h)?;
            let tally = oracle::verify_counts(&f, bound)?;
            match format.unwrap_or(Format::Markdown) {
                Format::Json => Ok(pretty(json!({
                    "principal_points": points,
                    "coeff_bound": tally.coeff_bound,
                    "domains": tally.counts.iter().map(|(d, c)| (d.to_string(), *c)).collect::<std::collections::BTreeMap<_, _>>(),
                }))),
                Format::Csv => {
                    let mut out = String::from("m,n,k,gamma\n");
                    for p in &points {
                        out.push_str(&format!("{},{},{},\"{}\"\n", p.form.m, p.form.n, p.form.k, format_period(&p.gamma)));
                    }
                    Ok(out)
                }
                Format::Markdown => {
                    let mut out = String::from("| m | n | k | Γ |\n|---|---|---|---|\n");
                    for p in &points {
                        out.push_str(&format!("| {} | {} | {} | {} |\n", p.form.m, p.form.n, p.form.k, format_period(&p.gamma)));
                    }
                    let summary: Vec<String> = tally.counts.iter().map(|(d, c)| format!("{d}={c}")).collect();
                    out.push_str(&format!("\nbound {}: {}\n", tally.coeff_bound, summary.join(" ")));
                    Ok(out)
                }
            }
        }
        Command::Table { delta_max, which } => {
            check_delta_max(*delta_max)?;
            let reports = census::table(*delta_max, (*which).into())?;
            report::render_classes(&reports, format.unwrap_or(Format::Markdown))
        }
        Command::Stats { delta_max, which } => {
            check_delta_max(*delta_max)?;
            let rows = census::stats(*delta_max, (*which).into())?;
            report::render_stats(&rows, format.unwrap_or(Format::Csv))
        }
    }
}

fn check_delta_max(d: Int) -> Result<(), Error> {
    if d < 1 {
        return Err(Error::Domain(format!("--delta-max must be at least 1, got {d}")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let text = match run(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
