use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use ambiclass_core::bernoulli::{analytic_class_number, mwk_order_check};
use ambiclass_core::quadfield::is_fundamental_discriminant;
use ambiclass_core::{compute_filtration, FormClassGroup, QuadraticField, Sense};
use clap::Args;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::Format;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Check {
    /// 2-part of the filtration structure equals the oracle 2-Sylow.
    Filtration,
    /// The narrow 2-rank equals t - 1.
    Chevalley,
    /// For D < 0, the form class number equals the analytic one.
    ClassNumber,
    /// The valuation check of B1 at --p.
    Mwk,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    #[arg(long, allow_negative_numbers = true)]
    pub from: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: i64,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Worker threads; falls back to AMBICLASS_THREADS, then the rayon default.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write rows and the summary as JSON lines to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub d: i64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub check: String,
    pub from: i64,
    pub to: i64,
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<i64>,
}

fn evaluate(check: Check, d: i64, p: u64) -> Row {
    let outcome = match check {
        Check::Filtration => QuadraticField::from_discriminant(d).and_then(|k| {
            let ours = compute_filtration(&k)?.structure.sylow(2);
            let oracle = FormClassGroup::new(d)?.structure(Sense::Narrow)?.sylow(2);
            Ok((ours == oracle, format!("{:?} vs {:?}", ours.descending(), oracle.descending())))
        }),
        Check::Chevalley => QuadraticField::from_discriminant(d).and_then(|k| {
            let t = k.ramified_primes.len() as u32;
            let rank = FormClassGroup::new(d)?.structure(Sense::Narrow)?.p_rank(2);
            Ok((rank + 1 == t, format!("rank {rank}, t {t}")))
        }),
        Check::ClassNumber => {
            if d > 0 {
                Ok((true, "real field skipped".to_string()))
            } else {
                analytic_class_number(d).and_then(|h| {
                    let o = FormClassGroup::new(d)?.structure(Sense::Ordinary)?.order();
                    Ok((h == BigRational::from_integer(o.into()), format!("h {o}, analytic {h}")))
                })
            }
        }
        Check::Mwk => mwk_order_check(d, p).map(|r| (r.pass, format!("v {} vs {}", r.v_analytic, r.v_oracle))),
    };
    match outcome {
        Ok((pass, detail)) => Row { d, pass, detail },
        Err(e) => Row {
            d,
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

fn thread_count(args: &SweepArgs) -> Result<usize, CliError> {
    if let Some(n) = args.threads {
        return Ok(n);
    }
    match std::env::var("AMBICLASS_THREADS") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("AMBICLASS_THREADS is not a number: {s}"))),
        Err(_) => Ok(0),
    }
}

pub fn rows(args: &SweepArgs) -> Result<Vec<Row>, CliError> {
    if args.from > args.to {
        return Err(CliError::Usage(format!("empty range {}..={}", args.from, args.to)));
    }
    let ds: Vec<i64> = (args.from..=args.to).filter(|&d| is_fundamental_discriminant(d)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(args)?)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let (check, p) = (args.check, args.p);
    Ok(pool.install(|| ds.par_iter().map(|&d| evaluate(check, d, p)).collect()))
}

pub fn run(args: &SweepArgs, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let rows = rows(args)?;
    let summary = Summary {
        check: format!("{:?}", args.check).to_lowercase(),
        from: args.from,
        to: args.to,
        total: rows.len(),
        passed: rows.iter().filter(|r| r.pass).count(),
        failed: rows.iter().filter(|r| !r.pass).map(|r| r.d).collect(),
    };
    if let Some(path) = &args.out {
        let mut f = BufWriter::new(File::create(path)?);
        for r in &rows {
            serde_json::to_writer(&mut f, r)?;
            writeln!(f)?;
        }
        serde_json::to_writer(&mut f, &summary)?;
        writeln!(f)?;
        f.flush()?;
    }
    match format {
        Format::Json => {
            for r in &rows {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
            serde_json::to_writer(&mut *out, &summary)?;
            writeln!(out)?;
        }
        Format::Text => {
            for r in &rows {
                writeln!(out, "{} {} {}", r.d, if r.pass { "pass" } else { "FAIL" }, r.detail)?;
            }
            writeln!(out, "{}/{} passed", summary.passed, summary.total)?;
        }
    }
    Ok(())
}
