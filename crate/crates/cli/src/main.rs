use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use darboux::darboux::{type1_transform, verify};
use darboux::fixtures::run_suite;
use darboux::invariants::{chain_term, compute_invariants, lift_with, InvariantTuple, SignConvention};
use darboux::lpdo::{parse_directions, peel_factorization, Direction, LinearOperator};
use darboux::orbit::{classify, explore};
use darboux::Error;

#[derive(Parser)]
#[command(name = "darboux", version, about = "Type-I Darboux transformations of third-order operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants I1..I5 of a normalized operator.
    Invariants {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// `auto` prints the tuple given by the coefficient formulas.
        #[arg(long, env = "DARBOUX_SIGN", default_value = "auto")]
        sign: SignConvention,
    },
    /// Apply a type-I transformation and verify it.
    Transform {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(short = 'd', long = "dir")]
        dir: Direction,
    },
    /// Lift an invariant tuple along a direction.
    Lift {
        #[arg(short = 'i', long = "invariants", allow_hyphen_values = true)]
        invariants: InvariantTuple,
        #[arg(short = 'd', long = "dir")]
        dir: Direction,
        #[arg(long, env = "DARBOUX_SIGN", default_value = "auto")]
        sign: SignConvention,
    },
    /// Explore the orbit of an invariant tuple.
    Orbit {
        #[arg(short = 'i', long = "invariants", allow_hyphen_values = true)]
        invariants: InvariantTuple,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long = "max-nodes", default_value_t = 64)]
        max_nodes: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, env = "DARBOUX_SIGN", default_value = "auto")]
        sign: SignConvention,
        /// Longest cycle reported by `--format summary`.
        #[arg(long = "max-cycle", default_value_t = 4)]
        max_cycle: usize,
    },
    /// Print a term of the p_x chain and check the chain up to it.
    Chain {
        #[arg(long)]
        n: u32,
    },
    /// Factor an operator into first-order factors with the given symbols.
    Factor {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(short = 's', long = "symbols")]
        symbols: String,
    },
    /// Check every identity of a type-I transformation.
    Verify {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(short = 'd', long = "dir")]
        dir: Direction,
        #[arg(long)]
        json: bool,
    },
    /// Run the reference suite and write the errata file.
    Fixtures {
        #[arg(long, default_value = "ERRATA.md")]
        errata: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Summary,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_nonexistence() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn operator(src: &str) -> Result<LinearOperator, Error> {
    src.parse()
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Invariants { expr, sign } => {
            let t = compute_invariants(&operator(&expr)?)?;
            let t = match sign {
                SignConvention::Paper => t.reoriented(),
                _ => t,
            };
            println!("{t}");
        }
        Command::Transform { expr, dir } => {
            let r = type1_transform(&operator(&expr)?, dir)?;
            println!("L1 = {}", r.target);
            println!("f = {}", r.f);
            println!("m = {}", r.m);
            print!("{}", verify(&r));
        }
        Command::Lift { invariants, dir, sign } => {
            let l = lift_with(&invariants, dir, sign)?;
            println!("{}", l.tuple);
            println!("f = {}", l.pivot);
        }
        Command::Orbit { invariants, depth, max_nodes, format, sign, max_cycle } => {
            let g = explore(&invariants, depth, max_nodes, sign)?;
            match format {
                Format::Dot => print!("{}", g.to_dot()),
                Format::Json => println!("{}", g.to_json()),
                Format::Summary => {
                    let c = classify(&g, max_cycle);
                    println!("nodes: {}, edges: {}, truncated: {}", g.nodes.len(), g.edges.len(), g.truncated);
                    println!("kind: {:?}", c.kind);
                    for n in &g.nodes {
                        println!("  {}: ({})", n.id, n.tuple);
                    }
                    for cy in &c.cycles {
                        println!("cycle {:?} {}", cy.nodes, cy.word_string());
                    }
                }
            }
        }
        Command::Chain { n } => {
            println!("{}", chain_term(n));
            for k in 0..n {
                let next = lift_with(&chain_term(k), Direction::Px, SignConvention::Paper)?;
                if !next.tuple.eq_checked(&chain_term(k + 1)) {
                    println!("chain step {k} -> {} failed", k + 1);
                    return Err(Error::Unsupported(format!("chain step {k} does not hold")));
                }
            }
            println!("verified lift(term k, p_x) = term k+1 for k < {n}");
        }
        Command::Factor { expr, symbols } => {
            let seq = parse_directions(&symbols)?;
            let fs = peel_factorization(&operator(&expr)?, &seq)?;
            for (f, d) in fs.iter().zip(&seq) {
                println!("{}: {f}", d.label());
            }
        }
        Command::Verify { expr, dir, json } => {
            let r = type1_transform(&operator(&expr)?, dir)?;
            let report = verify(&r);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if !report.all_pass() {
                return Err(Error::Unsupported("identity check failed".into()));
            }
        }
        Command::Fixtures { errata } => {
            let report = run_suite()?;
            print!("{}", report.summary());
            std::fs::write(&errata, report.errata_markdown())
                .map_err(|e| Error::Unsupported(format!("cannot write {}: {e}", errata.display())))?;
            println!("wrote {}", errata.display());
        }
    }
    Ok(())
}
