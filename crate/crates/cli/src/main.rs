use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use ramanujan_core::exact::{pell_fundamental, pell_negative};
use ramanujan_core::invariants::{context58, exact58};
use ramanujan_core::lattice::{s1_csch, s1_rows, s1_truncated, LatticeSumSpec};
use ramanujan_core::lseries::{
    character_table, l_class_number, l_negative, l_negative_primitive, l_partial_sum, l_trig_product,
};
use ramanujan_core::pi_engine::{pi_ramanujan, MAX_DIGITS};
use ramanujan_core::verify::{run_checks, summary, Status, DEFAULT_PRECISION, PRECISION_RANGE};
use ramanujan_core::{pi_oracle, Error, Precision};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "ramanujan", version, about = "Ramanujan's 1/π series at level 58: π digits and a verification suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print π to the requested number of significant digits.
    Pi {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..=MAX_DIGITS as i64))]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Method::Ramanujan)]
        method: Method,
    },
    /// Run the verification suite.
    Verify {
        /// Only run checks whose id starts with this prefix, e.g. eq09.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, env = "RAMANUJAN_PRECISION", default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        /// One JSON object per line instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Show an intermediate object exactly and in decimal.
    Inspect {
        #[arg(value_enum)]
        object: Object,
        #[arg(long, env = "RAMANUJAN_PRECISION", default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Fundamental solutions of x² − d·y² = ±1.
    Pell { d: u64 },
    /// L_d(1) by every route that applies to d.
    Lseries {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(long, env = "RAMANUJAN_PRECISION", default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// S₁(1, 0, r) = Σ' (−1)^m/(m² + rn²) by the closed form and by truncation.
    Lattice {
        r: i64,
        #[arg(long, default_value_t = 200)]
        radius: u32,
        #[arg(long, env = "RAMANUJAN_PRECISION", default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Ramanujan,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    #[value(name = "g58")]
    G58,
    #[value(name = "k58")]
    K58,
    #[value(name = "x58")]
    X58,
    #[value(name = "alpha58")]
    Alpha58,
    #[value(name = "pell29")]
    Pell29,
    #[value(name = "L-8")]
    LMinus8,
    #[value(name = "L29")]
    L29,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. } => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn precision(digits: u32) -> Result<Precision, Failure> {
    let (lo, hi) = PRECISION_RANGE;
    if digits < lo || digits > hi {
        return Err(usage(format!("precision must lie in [{lo}, {hi}]")));
    }
    Ok(Precision::new(digits))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Pi { digits, method } => {
            let value = match method {
                Method::Ramanujan => pi_ramanujan(digits)?,
                Method::Oracle => pi_oracle(Precision::new(digits)),
            };
            println!("{}", value.to_significant(digits));
            Ok(0)
        }
        Command::Verify { filter, precision: digits, json } => verify(filter.as_deref(), precision(digits)?, json),
        Command::Inspect { object, precision: digits } => {
            inspect(object, precision(digits)?)?;
            Ok(0)
        }
        Command::Pell { d } => {
            let solution = pell_fundamental(d)?;
            println!("x={} y={}", solution.x, solution.y);
            match pell_negative(d)? {
                Some(neg) => println!("x²−{d}y²=−1: x={} y={}", neg.x, neg.y),
                None => println!("x²−{d}y²=−1: no solution"),
            }
            Ok(0)
        }
        Command::Lseries { d, precision: digits } => {
            lseries(d, precision(digits)?)?;
            Ok(0)
        }
        Command::Lattice { r, radius, precision: digits } => {
            lattice(r, radius, precision(digits)?)?;
            Ok(0)
        }
    }
}

fn verify(filter: Option<&str>, p: Precision, json: bool) -> Result<u8, Failure> {
    let records = run_checks(filter, p)?;
    for r in &records {
        if json {
            println!("{}", r.to_json());
        } else {
            println!("{}", r.to_text());
        }
    }
    let (pass, fail, flagged) = summary(&records);
    if !json {
        println!("{} checks: {pass} pass, {fail} fail, {flagged} flagged", records.len());
    }
    Ok(if records.iter().any(|r| r.status == Status::Fail) { EXIT_FAILURE } else { 0 })
}

fn inspect(object: Object, p: Precision) -> Result<(), Failure> {
    let digits = p.digits();
    match object {
        Object::G58 => {
            let ctx = context58(p);
            println!("exact   sqrt((5 + sqrt(29))/2)");
            println!("g^2     {}", exact58().g_squared);
            println!("decimal {}", ctx.g.to_significant(digits));
        }
        Object::K58 => {
            let ex = exact58();
            println!("exact   (sqrt(2) - 1)^6 (13 sqrt(58) - 99)");
            println!("        {}", ex.k);
            println!("decimal {}", ex.k.to_real(p).to_sci(digits as usize));
        }
        Object::X58 => {
            let ex = exact58();
            let x = ex.x_from_k.as_rational().cloned().ok_or_else(|| usage("x58 is not rational"))?;
            println!("exact   {x}");
            println!("decimal {}", ex.x_from_k.to_real(p).to_sci(digits as usize));
        }
        Object::Alpha58 => {
            let ex = exact58();
            println!("exact   3 g^6 k (33 sqrt(29) - 148)");
            println!("        {}", ex.alpha);
            println!("decimal {}", ex.alpha.to_real(p).to_significant(digits));
        }
        Object::Pell29 => {
            let s = pell_fundamental(29u32)?;
            println!("x={} y={}", s.x, s.y);
        }
        Object::LMinus8 => {
            let l = l_negative(-8, p)?;
            println!("exact   pi/(4 sqrt(2))  (modulus {})", l.modulus);
            println!("decimal {}", l.value.to_significant(digits));
        }
        Object::L29 => {
            let l = l_class_number(29, 1, p)?;
            println!("exact   log(9801 + 1820 sqrt(29))/(3 sqrt(29))");
            println!("decimal {}", l.value.to_significant(digits));
        }
    }
    Ok(())
}

fn lseries(d: i64, p: Precision) -> Result<(), Failure> {
    if d == 0 {
        return Err(usage("d must be nonzero"));
    }
    let digits = p.digits();
    let table = character_table(d)?;
    println!("d={d} modulus={}", table.m);
    if d < 0 {
        let l = l_negative(d, p)?;
        println!("closed form, modulus {:<4} {}", l.modulus, l.value.to_significant(digits));
        let prim = l_negative_primitive(d, p)?;
        println!("closed form, modulus {:<4} {}", prim.modulus, prim.value.to_significant(digits));
    } else {
        let t = l_trig_product(d, p)?;
        println!("trig product (sign {:+})  {}", t.sign, t.lvalue.value.to_significant(digits));
        if let Ok(c) = l_class_number(d, 1, p) {
            println!("class number, h = 1     {}", c.value.to_significant(digits));
        }
    }
    let partial = l_partial_sum(d, 1_000_000)?;
    println!("partial sum, 10^6 terms {:.12}", partial.value.to_f64());
    Ok(())
}

fn lattice(r: i64, radius: u32, p: Precision) -> Result<(), Failure> {
    if r < 1 {
        return Err(usage("r must be at least 1"));
    }
    let rq = BigRational::from_integer(r.into());
    let digits = p.digits();
    println!("closed form   {}", s1_csch(&rq, p)?.to_significant(digits));
    println!("csch rows     {}", s1_rows(&rq, p)?.to_significant(digits));
    let t = s1_truncated(&LatticeSumSpec::diagonal(r)?, radius)?;
    println!("truncated R={radius} {:.12}  (edge term {:.3e})", t.value.to_f64(), t.tail_estimate);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn precision_bounds() {
        assert!(precision(30).is_ok());
        assert_eq!(precision(3).err().map(|f| f.code), Some(EXIT_USAGE));
    }

    #[test]
    fn term_count_for_default_digits() {
        use ramanujan_core::pi_engine::terms_for_digits;
        assert!(terms_for_digits(1000) <= 128);
    }
}
