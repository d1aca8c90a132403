use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use wmf::dissection::{dissect, halve, reduce_mod_pow2, Exponents, KolbergExpr, Parity};
use wmf::harness::{
    probe_sharpness, run_lemma51_pipeline, verify_lemma, verify_main_theorem, GridParams, LemmaBounds,
    VerificationReport,
};
use wmf::level1::{a_coefficient, canonical_basis, WeightDecomposition};
use wmf::two_adic_valuation;

// Printing that tolerates a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! say_raw {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "wmf", version, about = "Canonical bases of weakly holomorphic modular forms and their 2-adic congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the q-expansion of f_{k,m}.
    Expand {
        #[arg(long)]
        weight: i64,
        #[arg(long, allow_negative_numbers = true)]
        index: i64,
        #[arg(long, default_value_t = 20)]
        prec: i64,
    },
    /// Print a_k(m, n) and its 2-adic valuation.
    Coeff {
        #[arg(long)]
        weight: i64,
        #[arg(short, allow_negative_numbers = true)]
        m: i64,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
    },
    /// Check the congruences on a grid of instances.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Two-dissect a Kolberg expression.
    Dissect {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        parity: ParityArg,
        /// Reduce coefficients modulo 2^N.
        #[arg(long)]
        mod_exp: Option<u32>,
        /// Substitute q^2 -> q afterwards (dividing the odd part by q first).
        #[arg(long)]
        halve: bool,
    },
    /// Check a_k(m, n) = -a_{2-k}(n, m) for -ell <= m <= M, 1 <= n <= M.
    Duality {
        #[arg(long, allow_negative_numbers = true)]
        weight: i64,
        #[arg(long, default_value_t = 20)]
        max: i64,
    },
    /// Report how close one case of the grid comes to its claimed exponent.
    Sharpness {
        #[arg(long)]
        weight: i64,
        #[arg(long = "case")]
        case: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Print the symbolic dissection transcript for a_k(2m, 4).
    Pipeline {
        #[arg(long)]
        weight: i64,
    },
}

#[derive(Subcommand)]
enum Target {
    /// The main divisibility statement.
    Theorem {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// A supporting statement by name (L2.2, L3.1, ..., P7.9, or `all`).
    Lemma {
        name: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Largest odd index for statements with one free index.
        #[arg(long)]
        odd_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args, Clone)]
struct GridArgs {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weights: Option<Vec<i64>>,
    #[arg(long)]
    a_max: Option<u32>,
    #[arg(long)]
    b_max: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    m_list: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<i64>>,
}

impl GridArgs {
    fn grid(&self) -> GridParams {
        let d = GridParams::default();
        GridParams {
            weights: self.weights.clone().unwrap_or(d.weights),
            a_max: self.a_max.unwrap_or(d.a_max),
            b_max: self.b_max.unwrap_or(d.b_max),
            m_list: self.m_list.clone().unwrap_or(d.m_list),
            n_list: self.n_list.clone().unwrap_or(d.n_list),
            tau_b_max: d.tau_b_max,
        }
    }

    fn bounds(&self, odd_max: Option<i64>) -> LemmaBounds {
        let d = LemmaBounds::default();
        LemmaBounds {
            weights: self.weights.clone().unwrap_or(d.weights),
            a_max: self.a_max.unwrap_or(d.a_max),
            b_max: self.b_max.unwrap_or(d.b_max),
            m_list: self.m_list.clone().unwrap_or(d.m_list),
            n_list: self.n_list.clone().unwrap_or(d.n_list),
            odd_max: odd_max.unwrap_or(d.odd_max),
            ..d
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

fn report(rep: &VerificationReport, format: Format) -> ExitCode {
    match format {
        Format::Json => say!("{}", rep.to_json_string()),
        Format::Table => say_raw!("{}", rep.to_table()),
    }
    match rep.first_failure() {
        Some(r) => {
            eprintln!("first failure: {r}");
            ExitCode::FAILURE
        }
        None => ExitCode::SUCCESS,
    }
}

fn dissect_cmd(expr: &str, parity: ParityArg, mod_exp: Option<u32>, halved: bool) -> wmf::Result<KolbergExpr> {
    let parity = match parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let reduce = |e: KolbergExpr| match mod_exp {
        Some(n) => reduce_mod_pow2(&e, n),
        None => e,
    };
    let mut out = reduce(dissect(&expr.parse()?, parity)?);
    if halved {
        if parity == Parity::Odd {
            let q_inv = Exponents {
                q: -1,
                ..Exponents::default()
            };
            out = out.mul_monomial(&BigInt::from(1), q_inv);
        }
        out = halve(&out)?;
    }
    Ok(out)
}

fn duality_cmd(k: i64, max: i64) -> wmf::Result<ExitCode> {
    let ell = WeightDecomposition::new(k)?.ell;
    let mut checked = 0usize;
    for m in -ell..=max {
        for n in 1..=max {
            let x = a_coefficient(k, m, n)?;
            let y = a_coefficient(2 - k, n, m)?;
            if x != -&y {
                say!("mismatch at m={m} n={n}: a_{k}({m},{n}) = {x}, a_{}({n},{m}) = {y}", 2 - k);
                return Ok(ExitCode::FAILURE);
            }
            checked += 1;
        }
    }
    say!("duality holds for weight {k} on {checked} pairs");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> wmf::Result<ExitCode> {
    match cli.command {
        Command::Expand { weight, index, prec } => {
            say!("{}", canonical_basis(weight, index, prec)?);
        }
        Command::Coeff { weight, m, n } => {
            let c = a_coefficient(weight, m, n)?;
            say!("{c}");
            say!("valuation {}", two_adic_valuation(&c));
        }
        Command::Verify { target } => {
            let (rep, format) = match target {
                Target::Theorem { grid, format } => (verify_main_theorem(&grid.grid())?, format),
                Target::Lemma {
                    name,
                    grid,
                    odd_max,
                    format,
                } => (verify_lemma(&name, &grid.bounds(odd_max))?, format),
            };
            return Ok(report(&rep, format));
        }
        Command::Dissect {
            expr,
            parity,
            mod_exp,
            halve,
        } => say!("{}", dissect_cmd(&expr, parity, mod_exp, halve)?),
        Command::Duality { weight, max } => return duality_cmd(weight, max),
        Command::Sharpness { weight, case, grid } => {
            let r = probe_sharpness(weight, &case, &grid.grid())?;
            say!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
        }
        Command::Pipeline { weight } => {
            let t = run_lemma51_pipeline(weight)?;
            say!("{t}");
            if !t.pass || !t.numeric_agrees {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
