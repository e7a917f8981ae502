use std::io::Write;
use std::str::FromStr;

use ambiclass_core::bernoulli::{
    admissible_search, analytic_class_number, b1_quadratic, mwk_order_check, stickelberger,
    verify_generation, DirichletCharacter,
};
use ambiclass_core::filtration::redei_matrix;
use ambiclass_core::forms::class_of_ideal;
use ambiclass_core::genus::{ambiguous_number, genclass_check, genclass_oracle, symbol_rows};
use ambiclass_core::module_structure::{
    filtration_orders_from_divisors, simulate_module, structure_from_divisors,
    structure_nontrivial_norm,
};
use ambiclass_core::quadfield::integral_norm_solution;
use ambiclass_core::normic::{associate_number, hasse_symbol, is_global_norm, symbol_vector};
use ambiclass_core::{
    compute_filtration, DivisorProfile, FormClassGroup, Place, QuadraticField, Sense,
};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::report::{Format, Report};
use crate::sweep::{self, SweepArgs};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ambiclass", version, about = "Class groups of quadratic fields in exact arithmetic")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A quadratic field given by squarefree `m` or fundamental discriminant `D`.
#[derive(Debug, Args)]
pub struct FieldArg {
    /// Squarefree m or fundamental discriminant D.
    #[arg(short = 'd', long = "field", allow_negative_numbers = true)]
    pub value: i64,
    /// Read the value as a fundamental discriminant only.
    #[arg(long, conflicts_with = "as_m")]
    pub as_disc: bool,
    /// Read the value as a squarefree m only.
    #[arg(long)]
    pub as_m: bool,
}

impl FieldArg {
    pub fn field(&self) -> Result<QuadraticField, CliError> {
        Ok(if self.as_disc {
            QuadraticField::from_discriminant(self.value)?
        } else if self.as_m {
            QuadraticField::new(self.value)?
        } else {
            QuadraticField::from_m_or_discriminant(self.value)?
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SenseArg {
    Narrow,
    Ordinary,
}

impl From<SenseArg> for Sense {
    fn from(s: SenseArg) -> Self {
        match s {
            SenseArg::Narrow => Sense::Narrow,
            SenseArg::Ordinary => Sense::Ordinary,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class group structure from reduced binary quadratic forms.
    ClassGroup {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value = "narrow")]
        sense: SenseArg,
    },
    /// Number of ambiguous classes.
    Ambiguous {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value = "narrow")]
        sense: SenseArg,
    },
    /// Whether the primes above a set of split primes generate the 2-class group.
    Genclass {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// The norm residue symbol of x at one place.
    HasseSymbol {
        #[command(flatten)]
        field: FieldArg,
        /// A nonzero rational, `a` or `a/b`.
        #[arg(long, allow_negative_numbers = true)]
        x: String,
        /// A prime, or `inf`.
        #[arg(long)]
        place: String,
    },
    /// Whether x is a norm from the field.
    IsNorm {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, allow_negative_numbers = true)]
        x: String,
    },
    /// An element of norm x, if one exists.
    SolveNorm {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, allow_negative_numbers = true)]
        x: String,
    },
    /// The genus filtration of the narrow 2-class group.
    Filtration {
        #[command(flatten)]
        field: FieldArg,
    },
    /// The symbol matrix of the ramified primes.
    Redei {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Group structures from divisor exponents, or all groups with a nontrivial norm.
    Structure {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required_unless_present = "nontrivial_norm")]
        divisors: Vec<u32>,
        /// List the groups of filtration length n with nontrivial norm instead.
        #[arg(long, conflicts_with = "divisors")]
        nontrivial_norm: Option<u32>,
    },
    /// Build the module for a divisor profile and compute its filtration directly.
    Simulate {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        divisors: Vec<u32>,
    },
    /// B1 of the quadratic character and the analytic class number.
    Bernoulli {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Coefficients of the Stickelberger element of conductor m.
    Stickelberger {
        #[arg(long)]
        m: u64,
        /// Restrict to the quadratic field of this discriminant.
        #[arg(long, allow_negative_numbers = true)]
        disc: Option<i64>,
    },
    /// Compare the p-adic valuation of B1 with the p-part of the class number.
    MwkCheck {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: u64,
    },
    /// Search for admissible prime sets and verify that they generate.
    Admissible {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Size of the sets; defaults to the p-rank of the class group.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// Run a check over every fundamental discriminant in a range.
    Sweep(SweepArgs),
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let x = BigRational::from_str(s.trim()).map_err(|_| CliError::Usage(format!("not a rational number: {s}")))?;
    Ok(x)
}

fn parse_place(s: &str) -> Result<Place, CliError> {
    match s {
        "inf" | "infinity" | "oo" => Ok(Place::Infinite),
        _ => s
            .parse()
            .map(Place::Finite)
            .map_err(|_| CliError::Usage(format!("not a place: {s}"))),
    }
}

fn field_input(f: &QuadraticField) -> Value {
    json!({ "m": f.m, "discriminant": f.discriminant })
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let format = if cli.json { Format::Json } else { cli.format };
    if let Command::Sweep(args) = cli.command {
        return sweep::run(&args, format, out);
    }
    build(cli.command)?.emit(format, out)?;
    Ok(())
}

fn build(command: Command) -> Result<Report, CliError> {
    Ok(match command {
        Command::ClassGroup { field, sense } => {
            let k = field.field()?;
            let g = FormClassGroup::new(k.discriminant)?;
            let s = g.structure(sense.into())?;
            let forms: Vec<String> = (0..g.order()).map(|i| g.representative(i).to_string()).collect();
            Report::new(
                json!({ "field": field_input(&k), "sense": Sense::from(sense) }),
                json!({ "order": s.order(), "structure": s.descending() }),
                json!({ "narrow_forms": forms }),
            )
        }
        Command::Ambiguous { field, sense } => {
            let k = field.field()?;
            let r = ambiguous_number(&k, sense.into())?;
            Report::new(
                json!({ "field": field_input(&k), "sense": Sense::from(sense) }),
                json!({ "ambiguous_order": r.ambiguous_order }),
                json!({
                    "ramified_primes": k.ramified_primes,
                    "unit_norm_index_log": r.unit_norm_index_log,
                    "fundamental_unit": k.fundamental_unit.as_ref().map(|u| u.to_string()),
                }),
            )
        }
        Command::Genclass { field, primes } => {
            let k = field.field()?;
            let generates = genclass_check(&k, &primes)?;
            let oracle = genclass_oracle(&k, &primes)?;
            let xs: Vec<BigRational> = primes.iter().map(|&l| BigRational::from_integer(l.into())).collect();
            let mut classes = Vec::new();
            for &l in &primes {
                let (c, order) = class_of_ideal(&k, &k.prime_ideal_above(l)?)?;
                classes.push(json!({ "prime": l, "class": c, "order": order }));
            }
            Report::new(
                json!({ "field": field_input(&k), "primes": primes }),
                json!({ "generates": generates }),
                json!({
                    "ramified_primes": k.ramified_primes,
                    "symbol_rows": symbol_rows(&k, &xs)?,
                    "classes": classes,
                    "oracle_generates": oracle,
                }),
            )
        }
        Command::HasseSymbol { field, x, place } => {
            let k = field.field()?;
            let xq = parse_rational(&x)?;
            let v = parse_place(&place)?;
            let s = hasse_symbol(&xq, &k, v)?;
            let associate = match v {
                Place::Finite(p) if k.ramified_primes.contains(&p) => Some(associate_number(&xq, p, &k, 1)?),
                _ => None,
            };
            Report::new(
                json!({ "field": field_input(&k), "x": xq.to_string(), "place": v.to_string() }),
                json!({ "symbol": s }),
                json!({
                    "associate": associate.map(|a| json!({
                        "valuation": a.valuation,
                        "unit": a.unit,
                        "value": a.value.to_string(),
                    })),
                }),
            )
        }
        Command::IsNorm { field, x } => {
            let k = field.field()?;
            let xq = parse_rational(&x)?;
            let v = symbol_vector(&xq, &k)?;
            Report::new(
                json!({ "field": field_input(&k), "x": xq.to_string() }),
                json!({ "is_norm": is_global_norm(&xq, &k)? }),
                json!({ "symbols": symbols_value(&v.entries) }),
            )
        }
        Command::SolveNorm { field, x } => {
            let k = field.field()?;
            let xq = parse_rational(&x)?;
            let y = k.solve_norm_equation(&xq)?;
            let v = symbol_vector(&xq, &k)?;
            let integral = if xq.is_integer() {
                integral_norm_solution(&k, xq.numer())?.map(|z| z.to_string())
            } else {
                None
            };
            Report::new(
                json!({ "field": field_input(&k), "x": xq.to_string() }),
                json!({ "solution": y.as_ref().map(|y| y.to_string()) }),
                json!({
                    "solution_norm": y.as_ref().map(|y| y.norm().to_string()),
                    "integral_solution": integral,
                    "symbols": symbols_value(&v.entries),
                }),
            )
        }
        Command::Filtration { field } => {
            let k = field.field()?;
            let r = compute_filtration(&k)?;
            let oracle = FormClassGroup::new(k.discriminant)?.structure(Sense::Narrow)?.sylow(2);
            let pool: Vec<Value> = r
                .pool
                .iter()
                .map(|p| json!({ "stage": p.stage, "norm": p.norm.to_string(), "ideal": p.ideal }))
                .collect();
            Report::new(
                json!({ "field": field_input(&k) }),
                json!({
                    "orders": r.order_sequence,
                    "length": r.length,
                    "divisors": r.divisors,
                    "structure": r.structure.descending(),
                }),
                json!({
                    "deltas": r.delta_sequence,
                    "pool": pool,
                    "oracle_structure": oracle.descending(),
                }),
            )
        }
        Command::Redei { field } => {
            let k = field.field()?;
            let m = redei_matrix(&k)?;
            Report::new(
                json!({ "field": field_input(&k) }),
                json!({ "rank": m.rank, "four_rank": m.four_rank }),
                json!({ "primes": m.primes, "rows": m.rows }),
            )
        }
        Command::Structure { p, divisors, nontrivial_norm } => match nontrivial_norm {
            Some(n) => {
                let groups: Vec<Vec<u64>> = structure_nontrivial_norm(p, n)?.iter().map(|s| s.descending()).collect();
                Report::new(json!({ "p": p, "nontrivial_norm": n }), json!({ "groups": groups }), Value::Null)
            }
            None => {
                let profile = DivisorProfile::new(p, divisors.clone())?;
                let s = structure_from_divisors(&profile)?;
                Report::new(
                    json!({ "p": p, "divisors": divisors }),
                    json!({ "groups": [s.descending()] }),
                    json!({ "filtration_orders": filtration_orders_from_divisors(&profile)? }),
                )
            }
        },
        Command::Simulate { p, divisors } => {
            let profile = DivisorProfile::new(p, divisors.clone())?;
            let m = simulate_module(&profile)?;
            let brute = m.brute_filtration()?;
            let predicted = filtration_orders_from_divisors(&profile)?;
            Report::new(
                json!({ "p": p, "divisors": divisors }),
                json!({
                    "order": m.order().to_string(),
                    "structure": m.structure()?.descending(),
                    "filtration_orders": brute,
                    "matches_prediction": brute == predicted,
                }),
                json!({
                    "predicted_orders": predicted,
                    "predicted_structure": structure_from_divisors(&profile)?.descending(),
                    "sigma_order_divides_p": m.sigma_has_order_dividing_p()?,
                }),
            )
        }
        Command::Bernoulli { field } => {
            let k = field.field()?;
            let b = b1_quadratic(k.discriminant)?;
            let h = if k.is_real() { None } else { Some(analytic_class_number(k.discriminant)?.to_string()) };
            Report::new(
                json!({ "field": field_input(&k) }),
                json!({ "b1": b.to_string(), "analytic_class_number": h }),
                json!({ "torsion_order": k.torsion_order }),
            )
        }
        Command::Stickelberger { m, disc } => {
            let chi = disc.map(DirichletCharacter::quadratic).transpose()?;
            let st = stickelberger(m, chi.as_ref())?;
            let coeffs: serde_json::Map<String, Value> = st
                .coefficients
                .iter()
                .map(|(a, c)| (a.to_string(), Value::String(c.to_string())))
                .collect();
            Report::new(json!({ "m": m, "disc": disc }), json!({ "coefficients": coeffs }), Value::Null)
        }
        Command::MwkCheck { field, p } => {
            let k = field.field()?;
            let r = mwk_order_check(k.discriminant, p)?;
            Report::new(
                json!({ "field": field_input(&k), "p": p }),
                json!({ "pass": r.pass, "v_analytic": r.v_analytic, "v_oracle": r.v_oracle }),
                json!({ "b1": r.bernoulli.to_string(), "class_number": r.class_number }),
            )
        }
        Command::Admissible { field, p, t, bound } => {
            let k = field.field()?;
            let t = match t {
                Some(t) => t,
                None => FormClassGroup::new(k.discriminant)?.structure(Sense::Ordinary)?.p_rank(p) as usize,
            };
            let s = admissible_search(k.discriminant, p, t, bound)?;
            let mut sets = Vec::new();
            for set in &s.sets {
                sets.push(json!({
                    "primes": set.primes,
                    "exponents": set.exponents,
                    "valuation": set.valuation,
                    "b1": set.bernoulli.to_string(),
                    "generates": verify_generation(k.discriminant, &set.primes, p)?,
                }));
            }
            let rejected: Vec<Value> = s
                .rejected
                .iter()
                .map(|r| json!({ "primes": r.primes, "min_valuation": r.min_valuation }))
                .collect();
            Report::new(
                json!({ "field": field_input(&k), "p": p, "t": t, "bound": bound }),
                json!({ "admissible": s.sets.iter().map(|x| &x.primes).collect::<Vec<_>>(), "count": s.sets.len() }),
                json!({ "candidates": s.candidates, "sets": sets, "rejected": rejected, "skipped": s.skipped }),
            )
        }
        Command::Sweep(_) => unreachable!("handled by run"),
    })
}

fn symbols_value(entries: &[(Place, i8)]) -> Value {
    entries
        .iter()
        .map(|(p, s)| (p.to_string(), Value::from(*s)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}
