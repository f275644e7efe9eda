use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use blob_core::basis::{squared_basis, verify_basis_exact, weights};
use blob_core::walk::{binomial_count, factor};
use blob_core::{
    enumerate_walks, phi, regular_basis, run_suite, ScaledDiagram, Suite, Walk, Word,
    DEFAULT_PRIME, DEFAULT_SEED,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "blob",
    version,
    about = "Blob algebra words, diagrams, bases and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// List the Pascal-triangle walks of length N (ending at M if given).
    Walks {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The word w(p) of a walk given as comma-separated weights.
    Word {
        #[arg(long)]
        path: String,
        #[arg(long)]
        variant: bool,
    },
    /// Image of a word as a scaled diagram (JSON).
    Phi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Product of two words or diagram JSON objects.
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Walk words S_(n,m), squared bases, or the regular basis.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long)]
        squared: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension table for n = 1..=N.
    Dims {
        #[arg(long)]
        n_max: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long, env = "BLOB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, env = "BLOB_PRIME", default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Outcome {
    Ok,
    Failed,
}

fn operand(n: usize, s: &str) -> Result<ScaledDiagram> {
    let s = s.trim();
    if s.starts_with('{') {
        let d = ScaledDiagram::from_json(s)?;
        if d.diagram.n() != n {
            bail!("diagram has {} strands, expected {n}", d.diagram.n());
        }
        Ok(d)
    } else {
        Ok(phi(&Word::parse(n, s)?)?)
    }
}

fn print_words(words: &[Word], format: Format) {
    match format {
        Format::Json => {
            let v: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            println!("{}", serde_json::json!(v));
        }
        Format::Latex => {
            let v: Vec<String> = words.iter().map(|w| w.to_latex()).collect();
            println!("\\{{ {} \\}}", v.join(", "));
        }
        Format::Text => words.iter().for_each(|w| println!("{w}")),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Walks { n, m, format } => {
            if let Some(m) = m {
                if m.unsigned_abs() as usize > n || (n as i64 - m) % 2 != 0 {
                    eprintln!("warning: no walks of length {n} end at weight {m}");
                }
            }
            let walks = enumerate_walks(n, m);
            match format {
                Format::Json => {
                    let v: Vec<_> = walks.iter().map(Walk::to_json).collect();
                    println!("{}", serde_json::Value::Array(v));
                }
                _ => walks.iter().for_each(|w| println!("{w}")),
            }
        }
        Command::Word { path, variant } => {
            let p: Walk = path.parse()?;
            println!("{}", blob_core::word_of_path(&p, variant)?);
        }
        Command::Phi { n, word } => {
            println!("{}", phi(&Word::parse(n, &word)?)?.to_json());
        }
        Command::Mul { n, left, right } => {
            let prod = operand(n, &left)?.compose(&operand(n, &right)?)?;
            println!("{}", prod.to_json());
        }
        Command::Basis {
            n,
            m,
            squared,
            format,
        } => match (m, squared) {
            (Some(m), true) => {
                let sb = squared_basis(n, m)?;
                match format {
                    Format::Latex => println!("{}", sb.to_latex()),
                    Format::Json => println!("{}", serde_json::to_string(&sb)?),
                    Format::Text => {
                        for row in &sb.grid {
                            let cells: Vec<String> = row.iter().map(|w| w.to_string()).collect();
                            println!("{}", cells.join(" | "));
                        }
                    }
                }
            }
            (Some(m), false) => {
                let f = factor(n, m)?;
                match format {
                    Format::Text => {
                        for x in &f {
                            println!(
                                "{}\t{}\t({}) ({})",
                                x.walk,
                                blob_core::word_of_path(&x.walk, false)?,
                                x.prefix,
                                x.tail
                            );
                        }
                    }
                    _ => print_words(
                        &f.iter()
                            .map(|x| blob_core::word_of_path(&x.walk, false))
                            .collect::<Result<Vec<_>, _>>()?,
                        format,
                    ),
                }
            }
            (None, _) => {
                if squared {
                    for m in weights(n) {
                        let sb = squared_basis(n, m)?;
                        match format {
                            Format::Latex => println!("% m = {m}\n{}", sb.to_latex()),
                            Format::Json => println!("{}", serde_json::to_string(&sb)?),
                            Format::Text => {
                                println!("# m = {m}");
                                sb.words().for_each(|w| println!("{w}"));
                            }
                        }
                    }
                } else {
                    print_words(&regular_basis(n)?, format);
                }
            }
        },
        Command::Dims { n_max } => {
            println!("n\tC(2n,n)\t|S2_n|\tcheck\t|S_n,m| for m = -n, -n+2, ..., n");
            let mut ok = true;
            for n in 1..=n_max {
                let r = verify_basis_exact(n)?;
                let counts: Vec<String> = weights(n)
                    .map(|m| binomial_count(n, m).to_string())
                    .collect();
                println!(
                    "{n}\t{}\t{}\t{}\t{}",
                    binomial_count(2 * n, 0),
                    regular_basis(n)?.len(),
                    if r.passed() { "ok" } else { "FAIL" },
                    counts.join(" ")
                );
                ok &= r.passed();
            }
            return Ok(if ok { Outcome::Ok } else { Outcome::Failed });
        }
        Command::Verify {
            suite,
            n,
            seed,
            prime,
            format,
        } => {
            let suite: Suite = suite.parse()?;
            if prime <= 1 << 30 {
                bail!("prime must exceed 2^30, got {prime}");
            }
            blob_core::PrimeField::new(prime).with_context(|| format!("--prime {prime}"))?;
            let reports = run_suite(suite, n, prime, seed)?;
            let ok = reports.iter().all(|r| r.passed());
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
                _ => reports.iter().for_each(|r| print!("{}", r.summary())),
            }
            return Ok(if ok { Outcome::Ok } else { Outcome::Failed });
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
