mod commands;
mod parse;
mod report;
mod workspace;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use finalg_core::Caps;

use report::{envelope, error_envelope, CliError, Outcome};
use workspace::Workspace;

/// Finite universal algebra workbench.
///
/// Algebras are given by fixture name (Z2…Z8, V4, SL2, Sinf<n>) or as a path
/// to an algebra JSON file.
#[derive(Parser)]
#[command(name = "finalg", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit a versioned JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel searches (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest translation semigroup to build
    #[arg(long, global = true, default_value_t = Caps::default().max_semigroup)]
    max_semigroup: usize,

    /// Largest number of partitions to enumerate
    #[arg(long, global = true, default_value_t = 4140)]
    max_partitions: u64,

    /// Largest ternary clone to build
    #[arg(long, global = true, default_value_t = Caps::default().max_clone)]
    max_clone: usize,

    /// Largest carrier a product may have
    #[arg(long, global = true, default_value_t = Caps::default().max_carrier)]
    max_carrier: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether p = q holds under every assignment
    CheckIdentity {
        algebra: String,
        lhs: String,
        rhs: String,
    },
    /// Check a list of identities
    VarietyCheck {
        algebra: String,
        /// An identity `p = q` (repeatable)
        #[arg(short, long = "identity")]
        identities: Vec<String>,
        /// File with one identity per line
        #[arg(long)]
        file: Option<PathBuf>,
        /// Include the group axioms for m/2, i/1, e/0
        #[arg(long)]
        group_axioms: bool,
    },
    /// Evaluate a term
    Eval {
        algebra: String,
        term: String,
        /// Bindings such as `v1=0,v2=1`
        #[arg(short, long)]
        assign: Option<String>,
    },
    /// Check that a map `[y0,y1,…]` is a homomorphism
    HomCheck {
        source: String,
        target: String,
        map: String,
    },
    /// Subalgebra generated by a set of elements, e.g. `0,2`
    Subalgebra { algebra: String, seed: String },
    /// Direct product of algebras over one signature
    Product {
        #[arg(required = true)]
        factors: Vec<String>,
    },
    /// Quotient by a partition such as `0,2|1,3`
    Quotient { algebra: String, partition: String },
    /// List every congruence
    Congruences { algebra: String },
    /// Least congruence containing the pairs, e.g. `0:1,2:3`
    GenCongruence { algebra: String, pairs: String },
    /// Principal translations and the translation semigroup
    Translations {
        algebra: String,
        /// Only the principal translations
        #[arg(long)]
        principal: bool,
    },
    /// Mal'cev operations on a carrier size, or a Mal'cev term of an algebra
    Malcev {
        target: String,
        /// Stop listing operations after this many
        #[arg(long, default_value_t = 1000)]
        max_operations: usize,
    },
    /// Ternary term operations
    Clone {
        algebra: String,
        /// Print every table
        #[arg(long)]
        list: bool,
    },
    /// Least factorization of a map `[z0,z1,…]` through a homomorphism
    Factorize {
        algebra: String,
        map: String,
        /// Cross-check against all factorizations
        #[arg(long)]
        oracle: bool,
    },
    /// Summarize the built-in fixtures, or dump one as JSON
    Fixtures {
        #[arg(long)]
        dump: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckIdentity { .. } => "check-identity",
            Command::VarietyCheck { .. } => "variety-check",
            Command::Eval { .. } => "eval",
            Command::HomCheck { .. } => "hom-check",
            Command::Subalgebra { .. } => "subalgebra",
            Command::Product { .. } => "product",
            Command::Quotient { .. } => "quotient",
            Command::Congruences { .. } => "congruences",
            Command::GenCongruence { .. } => "gen-congruence",
            Command::Translations { .. } => "translations",
            Command::Malcev { .. } => "malcev",
            Command::Clone { .. } => "clone",
            Command::Factorize { .. } => "factorize",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}

/// Largest `n` whose Bell number is at most `limit`.
fn partition_carrier(limit: u64) -> usize {
    // Bell triangle
    let mut row = vec![1u64];
    let mut n = 0;
    loop {
        let bell_next = *row.last().unwrap();
        if bell_next > limit {
            return n;
        }
        n += 1;
        let mut next = vec![bell_next];
        for &r in &row {
            let v = next.last().unwrap().saturating_add(r);
            next.push(v);
        }
        row = next;
    }
}

impl Global {
    fn caps(&self) -> Caps {
        Caps {
            max_semigroup: self.max_semigroup,
            max_clone: self.max_clone,
            max_carrier: self.max_carrier,
            max_partition_carrier: partition_carrier(self.max_partitions),
            ..Caps::default()
        }
    }
}

fn run(ws: &mut Workspace, command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::CheckIdentity { algebra, lhs, rhs } => {
            commands::check_identity(ws, algebra, lhs, rhs)
        }
        Command::VarietyCheck {
            algebra,
            identities,
            file,
            group_axioms,
        } => commands::variety_check(ws, algebra, identities, file.as_ref(), *group_axioms),
        Command::Eval {
            algebra,
            term,
            assign,
        } => commands::eval(ws, algebra, term, assign.as_deref()),
        Command::HomCheck {
            source,
            target,
            map,
        } => commands::hom_check(ws, source, target, map),
        Command::Subalgebra { algebra, seed } => commands::subalgebra(ws, algebra, seed),
        Command::Product { factors } => commands::product_cmd(ws, factors),
        Command::Quotient { algebra, partition } => commands::quotient_cmd(ws, algebra, partition),
        Command::Congruences { algebra } => commands::congruences(ws, algebra),
        Command::GenCongruence { algebra, pairs } => commands::gen_congruence(ws, algebra, pairs),
        Command::Translations { algebra, principal } => {
            commands::translations(ws, algebra, *principal)
        }
        Command::Malcev {
            target,
            max_operations,
        } => commands::malcev(ws, target, *max_operations),
        Command::Clone { algebra, list } => commands::clone_cmd(ws, algebra, *list),
        Command::Factorize {
            algebra,
            map,
            oracle,
        } => commands::factorize(ws, algebra, map, *oracle),
        Command::Fixtures { dump } => commands::fixtures_cmd(ws, dump.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let mut ws = Workspace::new(cli.global.caps());
    let name = cli.command.name();
    let mut stdout = std::io::stdout().lock();
    let code = match run(&mut ws, &cli.command) {
        Ok(out) => {
            let text = if cli.global.json {
                envelope(name, out.body)
            } else {
                format!("{}\n", out.human)
            };
            let _ = stdout.write_all(text.as_bytes());
            out.status.exit_code()
        }
        Err(err) => {
            if cli.global.json {
                let _ = stdout.write_all(error_envelope(name, &err).as_bytes());
            }
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    let _ = stdout.flush();
    ExitCode::from(code)
}
