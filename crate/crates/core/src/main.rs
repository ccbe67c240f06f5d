use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use intparam::forms::uv;
use intparam::report::{
    self, exit_code_for, parse_triple, Report, RunOptions, DEFAULT_HEIGHT_BOUND,
};
use intparam::{Error, Result};

#[derive(Parser)]
#[command(
    name = "intparam",
    version,
    about = "Integer parametrizations of homogeneous Diophantine equations of genus zero"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ternary form in X, Y, Z, e.g. "X*Y - Z^2"
    form: String,
    /// Parametrization h1 h2 h3 as binary forms in U, V
    #[arg(long, num_args = 3, value_names = ["H1", "H2", "H3"])]
    param: Option<Vec<String>>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
    height_bound: u64,
    #[arg(long)]
    assume_irreducible: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest modulus accepted for the residue decomposition
    #[arg(long)]
    max_d: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, irreducibility and rational singular points
    Analyze(Common),
    /// Certificates, bound d and the integer family
    Parametrize(Common),
    /// Checks the family against all solutions in a box
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", default_value_t = 20)]
        box_bound: u64,
    },
    /// Certifies an external triple of integer-valued polynomials
    CertifyIntval {
        #[command(flatten)]
        common: Common,
        /// The triple g1 g2 g3
        #[arg(long, num_args = 3, required = true, value_names = ["G1", "G2", "G3"])]
        triple: Vec<String>,
        /// Comma-separated variables of the triple
        #[arg(long, default_value = "U,V,W")]
        vars: String,
        #[arg(long = "box", default_value_t = 10)]
        box_bound: u64,
    },
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions {
            height_bound: self.height_bound,
            assume_irreducible: self.assume_irreducible,
            max_d: self.max_d,
            seed: self.seed,
        }
    }

    fn supplied(&self) -> Result<Option<[intparam::poly::MultiPoly; 3]>> {
        self.param
            .as_ref()
            .map(|p| parse_triple(p, &uv()))
            .transpose()
    }
}

fn dispatch(cmd: &Command) -> (bool, Result<Report>) {
    let run = |c: &Common,
               f: &dyn Fn(Option<_>, &RunOptions) -> Result<Report>|
     -> Result<Report> { f(c.supplied()?, &c.options()) };
    match cmd {
        Command::Analyze(c) => (c.json, run(c, &|s, o| report::analyze(&c.form, s, o))),
        Command::Parametrize(c) => (c.json, run(c, &|s, o| report::parametrize(&c.form, s, o))),
        Command::Verify {
            common: c,
            box_bound,
        } => (
            c.json,
            run(c, &|s, o| report::verify(&c.form, s, *box_bound, o)),
        ),
        Command::CertifyIntval {
            common: c,
            triple,
            vars,
            box_bound,
        } => (
            c.json,
            run(c, &|s, o| {
                let vars: Vec<String> = vars
                    .split(',')
                    .map(|v| v.trim().to_string())
                    .filter(|v| !v.is_empty())
                    .collect();
                if vars.is_empty() {
                    return Err(Error::Precondition(
                        "--vars must name at least one variable".into(),
                    ));
                }
                let g = parse_triple(triple, &vars)?;
                report::certify_intval(&c.form, s, g, *box_bound, o)
            }),
        ),
    }
}

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
    let (json, result) = dispatch(&cli.command);
    match result {
        Ok(r) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&r).expect("serializable")
                );
            } else {
                println!("{}", r.to_text());
            }
            if r.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            if json {
                println!("{}", report::error_json(&e));
            } else {
                eprintln!("error [{}]: {e}", e.code());
            }
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
