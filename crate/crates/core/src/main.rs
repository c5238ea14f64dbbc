use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bosonorder::fock::{normalized_moment, vacuum_expansion};
use bosonorder::render::render_vacuum;
use bosonorder::tables::expansion_tables;
use bosonorder::verify::{self, VerifyConfig};
use bosonorder::{
    apply_antinormal_word, apply_normal_word, conjugate_power, expand_power, moment, normal_order,
    reduce_hyperbolic, render, FockVector, Format, Ladder, Symbol, TransformSpec,
};

#[derive(Parser)]
#[command(name = "bosonorder", version, about = "Exact normal ordering of boson operator expressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Displacement,
    Squeeze,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Ann,
    Dag,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-order an expression; `-` reads it from stdin.
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Normal form of (a x + ad y)^n.
    Power {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "y")]
        y: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// (a x + ad y)^n applied to the vacuum.
    Vacuum {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Action of ad^p a^q, or a^j ad^k with --antinormal, on |m>.
    FockApply {
        #[arg(long, conflicts_with = "antinormal")]
        p: Option<u32>,
        #[arg(long, conflicts_with = "antinormal")]
        q: Option<u32>,
        #[arg(long)]
        antinormal: bool,
        #[arg(long, requires = "antinormal")]
        j: Option<u32>,
        #[arg(long, requires = "antinormal")]
        k: Option<u32>,
        #[arg(long)]
        m: u32,
    },
    /// <ad^p a^q> in a state given as JSON, e.g. {"0":"1","2":"sqrt(2)"}.
    Moment {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        state: String,
        #[arg(long)]
        normalized: bool,
    },
    /// Power of a displaced or squeezed ladder operator.
    Transform {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        reduce: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Cross-check the closed forms against the oracles.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// LaTeX tables of the low-order expansions.
    Tables {
        #[arg(long)]
        paper: bool,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

fn degree_cap() -> Result<u64, Failure> {
    match std::env::var("BOSONORDER_MAX_N") {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("BOSONORDER_MAX_N must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(64),
    }
}

fn check_degree(degree: u64) -> Result<(), Failure> {
    let cap = degree_cap()?;
    if degree > cap {
        return Err(Failure::Usage(bosonorder::Error::DegreeCap { degree, cap }.to_string()));
    }
    Ok(())
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Normalize { expr, format } => {
            let src = if expr == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(usage)?;
                s
            } else {
                expr
            };
            let parsed = bosonorder::syntax::parse(&src).map_err(usage)?;
            check_degree(parsed.degree())?;
            println!("{}", render(&normal_order(&parsed), format.into()));
        }
        Command::Power { n, x, y, format } => {
            check_degree(n.into())?;
            let x: Symbol = x.parse().map_err(usage)?;
            let y: Symbol = y.parse().map_err(usage)?;
            println!("{}", render(&expand_power(n, &x, &y), format.into()));
        }
        Command::Vacuum { n, format } => {
            check_degree(n.into())?;
            let v = vacuum_expansion(n, &"x".into(), &"y".into());
            println!("{}", render_vacuum(n, &v, format.into()));
        }
        Command::FockApply { p, q, antinormal, j, k, m } => {
            let state = if antinormal {
                let (Some(j), Some(k)) = (j, k) else {
                    return Err(usage("--antinormal needs --j and --k"));
                };
                apply_antinormal_word(j, k, m)
            } else {
                let (Some(p), Some(q)) = (p, q) else {
                    return Err(usage("fock-apply needs --p and --q, or --antinormal --j --k"));
                };
                apply_normal_word(p, q, m)
            };
            println!("{state}");
        }
        Command::Moment { p, q, state, normalized } => {
            let psi = FockVector::from_json(&state).map_err(usage)?;
            let value = if normalized {
                normalized_moment(p, q, &psi).map_err(usage)?
            } else {
                moment(p, q, &psi)
            };
            println!("{value}");
        }
        Command::Transform { kind, which, n, reduce, format } => {
            check_degree(n.into())?;
            let spec = match kind {
                KindArg::Displacement => TransformSpec::displacement(),
                KindArg::Squeeze => TransformSpec::squeeze(),
            };
            let which = match which {
                WhichArg::Ann => Ladder::Ann,
                WhichArg::Dag => Ladder::Dag,
            };
            let mut f = conjugate_power(&spec, which, n);
            if reduce {
                f = reduce_hyperbolic(&f, &spec);
            }
            println!("{}", render(&f, format.into()));
        }
        Command::Verify { suite, max_n, seed, corrupt } => {
            check_degree(max_n.into())?;
            let suites = verify::parse_suites(&suite).map_err(usage)?;
            let report = verify::run(&VerifyConfig { suites, max_n, seed, corrupt });
            print!("{}", report.table());
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Tables { paper } => {
            if !paper {
                return Err(usage("tables needs --paper"));
            }
            print!("{}", expansion_tables());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}
