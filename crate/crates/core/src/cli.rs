//! Command-line front end: argument parsing, literal parsing, dispatch and
//! report rendering.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::{is_prime, make_field, prime_power, FieldElement, FiniteField};
use crate::field::{Field, Rationals};
use crate::permgrp::{
    affine, alternating, cyclic, load_group, projective_linear, render_group, symmetric, PermGroup,
};
use crate::permod::{
    affine_construction, block_vector, generated_submodule, min_support, orbit_sum_vector,
    small_support_vector, submodule_generated_by, verify_inequalities, ModVector,
};
use crate::poly::Poly;
use crate::uncertainty::{
    chebotarev_refute_mod_q, chebotarev_verify, fourier_support, gcd_criterion_checked,
    minimal_table, prime_char_exhaustive, search_counterexample, SearchMode,
};

#[derive(Parser, Debug)]
#[command(
    name = "permod",
    version,
    about = "Support and dimension inequalities for permutation modules"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Factors,
    Divisors,
    Multiples,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Factors => SearchMode::Factors,
            ModeArg::Divisors => SearchMode::Divisors,
            ModeArg::Multiples => SearchMode::Multiples,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cyclic,
    Symmetric,
    Alternating,
    Psl,
    Pgl,
    Affine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check both inequalities for a vector and classify equality.
    Verify {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long)]
        vector: String,
    },
    /// Evaluate the gcd criterion for f(z) in GF(q)[Z_p].
    Criterion {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// Look for f over GF(q) with t(f) + d(f) <= p.
    Search {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Divisors)]
        mode: ModeArg,
    },
    /// Minimal fields with a counterexample, per prime.
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        q_max: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Factors)]
        mode: ModeArg,
    },
    /// Check that no minor of [zeta^(ij)] vanishes over Q(zeta_p).
    Chebotarev {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        max_minor: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// A vanishing minor over GF(q^m) from a counterexample f.
    Refute {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// Build vectors that reach equality.
    #[command(subcommand)]
    Construct(Construct),
    /// Compare the Fourier support of a rational vector on Z_n with d(v).
    Fourier {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        vector: String,
    },
    /// Check t + d > p for every nonzero vector of GF(p)[Z_p].
    Exhaustive {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Least support in the submodule generated by the given vectors.
    MinSupport {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long, required = true)]
        vector: Vec<String>,
    },
    /// Print a group file for a standard family.
    Group(GroupArgs),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(
        long,
        value_enum,
        required_unless_present = "from",
        conflicts_with = "from"
    )]
    pub family: Option<Family>,
    /// Start from a group file instead of a family.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Degree for cyclic, symmetric and alternating groups.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Field for projective and affine groups.
    #[arg(long)]
    pub field: Option<String>,
    /// Multiplier generating the affine point stabilizer.
    #[arg(long)]
    pub unit: Option<String>,
    /// Induced action on unordered pairs.
    #[arg(long)]
    pub pairs: bool,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Sum over a block (trivial lambda): td = n.
    Block {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long)]
        delta: String,
    },
    /// Sum over the K-orbit of a point.
    Orbit {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long)]
        point: usize,
        /// Group file whose generators generate K.
        #[arg(long)]
        subgroup: PathBuf,
    },
    /// x -> ax + b on GF(q) with v = sum x s_x.
    Affine {
        #[arg(long)]
        field: String,
        /// Defaults to a primitive element.
        #[arg(long)]
        unit: Option<String>,
    },
    /// A vector with t + d <= n + 1 inside the submodule generated by the
    /// given vectors.
    SmallSupport {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long, required = true)]
        vector: Vec<String>,
    },
}

/// Rendered command output. `violation` is set when a proven bound failed.
#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub violation: Option<String>,
}

impl Outcome {
    fn new(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            csv: None,
            violation: None,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                Ok(serde_json::to_string_pretty(&self.json).expect("serializable") + "\n")
            }
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self.csv.clone().ok_or_else(|| {
                Error::InvalidArgument("csv output is only available for `table`".into())
            }),
        }
    }
}

/// A field given on the command line: `p`, `q` (a prime power), `p^k`, or `Q`.
#[derive(Clone, Debug)]
pub enum FieldSpec {
    Finite(FiniteField),
    Rational,
}

pub fn parse_field(spec: &str) -> Result<FieldSpec> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rational);
    }
    let bad = || Error::Parse(format!("bad field `{spec}`: expected p, p^k or Q"));
    let (p, k) = match s.split_once('^') {
        Some((p, k)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            k.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let q = s.parse::<u64>().map_err(|_| bad())?;
            if is_prime(q) {
                (q, 1)
            } else {
                prime_power(q).ok_or_else(bad)?
            }
        }
    };
    Ok(FieldSpec::Finite(make_field(p, k, None)?))
}

fn parse_finite_field(spec: &str) -> Result<FiniteField> {
    match parse_field(spec)? {
        FieldSpec::Finite(f) => Ok(f),
        FieldSpec::Rational => Err(Error::InvalidArgument("a finite field is required".into())),
    }
}

/// Parsing of single field elements from literals.
pub trait ParseElem: Field {
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
}

/// Integers `0..p` for prime fields; extension elements as
/// `;`-separated digits, constant term first. A plain integer is taken in
/// the prime subfield.
impl ParseElem for FiniteField {
    fn parse_elem(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let digit = |d: &str| -> Result<u64> {
            let v: u64 = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
            if v >= self.p() {
                return Err(Error::Parse(format!(
                    "coefficient {v} out of range for {self}"
                )));
            }
            Ok(v)
        };
        if s.contains(';') {
            let digits = s.split(';').map(digit).collect::<Result<Vec<_>>>()?;
            if digits.len() > self.degree() as usize {
                return Err(Error::Parse(format!("too many digits in `{s}` for {self}")));
            }
            self.from_rep(&digits)
        } else {
            Ok(self.from_int(digit(s)? as i64))
        }
    }
}

/// Integers or fractions `a/b`.
impl ParseElem for Rationals {
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
        };
        match s.split_once('/') {
            Some((a, b)) => {
                let b = int(b)?;
                if b == BigInt::from(0) {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(int(a)?, b))
            }
            None => Ok(BigRational::from_integer(int(s)?)),
        }
    }
}

pub fn parse_elems<F: ParseElem>(field: &F, text: &str) -> Result<Vec<F::Elem>> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty literal".into()));
    }
    text.split(',').map(|t| field.parse_elem(t)).collect()
}

/// Comma-separated coefficients in ascending degree.
pub fn parse_poly(text: &str, field: &FiniteField) -> Result<Poly<FiniteField>> {
    Ok(Poly::new(field.clone(), parse_elems(field, text)?))
}

/// Inverse of [`parse_poly`]: ascending coefficients, `0` for zero.
pub fn render_poly(f: &Poly<FiniteField>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.coeffs()
        .iter()
        .map(|c| f.field().render(c))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_points(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad point `{t}`")))
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify {
            group,
            field,
            vector,
        } => {
            let g = Arc::new(load_group(group)?);
            match parse_field(field)? {
                FieldSpec::Finite(f) => verify_cmd(g, f, vector),
                FieldSpec::Rational => verify_cmd(g, Rationals, vector),
            }
        }
        Command::Criterion { prime, field, poly } => {
            let f = parse_finite_field(field)?;
            let r = gcd_criterion_checked(&parse_poly(poly, &f)?, *prime)?;
            let mut json = serde_json::to_value(&r).expect("serializable");
            json["d"] = json!(r.d());
            let text = format!(
                "p = {}\nf = {}\nh = {}\nt(f) = {}, deg h = {}, t + d = {}\nfails: {}\n",
                r.p, r.f, r.h, r.t_f, r.deg_h, r.t_plus_d, r.fails
            );
            Ok(Outcome::new(json, text))
        }
        Command::Search { prime, field, mode } => {
            let f = parse_finite_field(field)?;
            let entry = search_counterexample(*prime, &f, (*mode).into())?;
            let json = json!({
                "p": prime,
                "q": f.order() as u64,
                "mode": SearchMode::from(*mode),
                "found": entry.is_some(),
                "entry": entry,
            });
            let text = match &entry {
                Some(e) => format!(
                    "p = {prime}, {f}: h = {}, f = {} ({} terms)\n",
                    e.divisor,
                    e.witness,
                    e.witness.term_count()
                ),
                None => format!("p = {prime}, {f}: none\n"),
            };
            Ok(Outcome::new(json, text))
        }
        Command::Table {
            primes,
            q_max,
            mode,
        } => {
            let rows = minimal_table(primes, *q_max, (*mode).into())?;
            let name = |q: &u64| format!("GF({q})");
            let json = json!({
                "mode": SearchMode::from(*mode),
                "q_max": q_max,
                "rows": rows.iter().map(|r| json!({
                    "p": r.p,
                    "fields": r.fields.iter().map(name).collect::<Vec<_>>(),
                    "witnesses": r.entries,
                })).collect::<Vec<_>>(),
            });
            let mut text = String::new();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "fields"]).expect("in-memory csv");
            for r in &rows {
                let fields = r.fields.iter().map(name).collect::<Vec<_>>().join(", ");
                let _ = writeln!(text, "p = {}: {}", r.p, fields);
                w.write_record([r.p.to_string(), fields])
                    .expect("in-memory csv");
            }
            let csv = String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8");
            Ok(Outcome {
                csv: Some(csv),
                ..Outcome::new(json, text)
            })
        }
        Command::Chebotarev {
            prime,
            max_minor,
            jobs,
        } => {
            let r = chebotarev_verify(*prime, *max_minor, *jobs)?;
            let text = format!(
                "p = {}: {} minors up to size {}, {} vanishing\n",
                r.p,
                r.minors_checked,
                r.max_size,
                r.failures.len()
            );
            let violation = (!r.failures.is_empty()).then(|| "a minor vanishes".to_string());
            Ok(Outcome {
                violation,
                ..Outcome::new(serde_json::to_value(&r).expect("serializable"), text)
            })
        }
        Command::Refute { prime, field, poly } => {
            let f = parse_finite_field(field)?;
            let r = chebotarev_refute_mod_q(*prime, &parse_poly(poly, &f)?)?;
            let text = format!(
                "rows {:?}, columns {:?} over GF({}): determinant 0\n",
                r.rows, r.cols, r.extension_order
            );
            Ok(Outcome::new(
                serde_json::to_value(&r).expect("serializable"),
                text,
            ))
        }
        Command::Construct(c) => construct_cmd(c),
        Command::Fourier { group, vector } => {
            let g = Arc::new(load_group(group)?);
            let v = ModVector::new(g, Rationals, parse_elems(&Rationals, vector)?)?;
            let s = fourier_support(&v)?;
            let d = generated_submodule(&v)?.dim();
            let json = json!({"n": v.n(), "fourier_support": s, "d": d, "equal": s == d});
            let text = format!("fourier support {s}, d = {d}\n");
            Ok(Outcome {
                violation: (s != d).then(|| "Fourier support differs from d".to_string()),
                ..Outcome::new(json, text)
            })
        }
        Command::Exhaustive { prime, jobs } => {
            let r = prime_char_exhaustive(*prime, *jobs)?;
            let text = format!(
                "p = {}: {} vectors, least t + d - p = {}, {} failures\n",
                r.p,
                r.vectors_checked,
                r.min_margin,
                r.failures.len()
            );
            Ok(Outcome {
                violation: (!r.failures.is_empty())
                    .then(|| "t + d <= p in characteristic p".to_string()),
                ..Outcome::new(serde_json::to_value(&r).expect("serializable"), text)
            })
        }
        Command::MinSupport {
            group,
            field,
            vector,
        } => {
            let g = Arc::new(load_group(group)?);
            let f = parse_finite_field(field)?;
            let seeds = vector
                .iter()
                .map(|v| parse_elems(&f, v))
                .collect::<Result<Vec<_>>>()?;
            let m = submodule_generated_by(g, &f, &seeds)?;
            let (t, w) = min_support(&f, m.rows())?;
            let rendered: Vec<String> = w.iter().map(|x| f.render(x)).collect();
            let json = json!({"dim": m.dim(), "t_min": t, "witness": rendered});
            let text = format!(
                "dim {}, t(M) = {t}, witness {}\n",
                m.dim(),
                rendered.join(",")
            );
            Ok(Outcome::new(json, text))
        }
        Command::Group(a) => group_cmd(a),
    }
}

fn verify_cmd<F: ParseElem>(g: Arc<PermGroup>, field: F, vector: &str) -> Result<Outcome> {
    let coeffs = parse_elems(&field, vector)?;
    let v = ModVector::new(g, field, coeffs)?;
    let r = verify_inequalities(&v)?;
    let mut text = format!(
        "n = {}, t = {}, d = {}\ntd >= n: {}\n",
        r.n, r.t, r.d, r.holds_b
    );
    match r.holds_c {
        Some(c) => {
            let _ = writeln!(text, "(t+1)d >= 2n: {c}");
        }
        None => text.push_str("(t+1)d >= 2n: not applicable\n"),
    }
    let _ = writeln!(text, "primitive: {}\ncase: {}", r.primitive, r.case.label());
    if let Some(c) = &r.conclusions {
        let _ = writeln!(
            text,
            "|Omega| = {}, structure holds: {}",
            r.omega_size,
            c.all()
        );
    }
    let violation = r.check().err().map(|e| e.to_string());
    Ok(Outcome {
        violation,
        ..Outcome::new(serde_json::to_value(&r).expect("serializable"), text)
    })
}

fn vector_outcome<F: Field>(v: &ModVector<F>, extra: Value) -> Result<Outcome> {
    let d = generated_submodule(v)?.dim();
    let mut json = json!({"n": v.n(), "t": v.t(), "d": d, "vector": v.render()});
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    let text = format!(
        "v = {}\nn = {}, t = {}, d = {}\n",
        v.render(),
        v.n(),
        v.t(),
        d
    );
    Ok(Outcome::new(json, text))
}

fn construct_cmd(c: &Construct) -> Result<Outcome> {
    match c {
        Construct::Block {
            group,
            field,
            delta,
        } => {
            let g = Arc::new(load_group(group)?);
            let delta = parse_points(delta)?;
            match parse_field(field)? {
                FieldSpec::Finite(f) => {
                    let one = f.one();
                    vector_outcome(&block_vector(g, &delta, f, |_| one)?, json!({}))
                }
                FieldSpec::Rational => {
                    let v = block_vector(g, &delta, Rationals, |_| Rationals.one())?;
                    vector_outcome(&v, json!({}))
                }
            }
        }
        Construct::Orbit {
            group,
            field,
            point,
            subgroup,
        } => {
            let g = Arc::new(load_group(group)?);
            let k = load_group(subgroup)?;
            if k.degree() != g.degree() {
                return Err(Error::DimensionMismatch(
                    "subgroup and group have different degrees".into(),
                ));
            }
            let elems = k.elements()?.to_vec();
            match parse_field(field)? {
                FieldSpec::Finite(f) => {
                    let (v, r) = orbit_sum_vector(g, *point, &elems, f)?;
                    orbit_outcome(&v, r)
                }
                FieldSpec::Rational => {
                    let (v, r) = orbit_sum_vector(g, *point, &elems, Rationals)?;
                    orbit_outcome(&v, r)
                }
            }
        }
        Construct::Affine { field, unit } => {
            let f = parse_finite_field(field)?;
            let a = match unit {
                Some(u) => f.parse_elem(u)?,
                None => f.find_element_of_order(f.order() - 1)?,
            };
            let r = affine_construction(&f, a)?;
            let mut out = vector_outcome(
                &r.vector,
                json!({"group_order": r.group.order()?, "primitive": r.primitive}),
            )?;
            let _ = writeln!(out.text, "primitive: {}", r.primitive);
            Ok(out)
        }
        Construct::SmallSupport {
            group,
            field,
            vector,
        } => {
            let g = Arc::new(load_group(group)?);
            match parse_field(field)? {
                FieldSpec::Finite(f) => small_support_cmd(g, f, vector),
                FieldSpec::Rational => small_support_cmd(g, Rationals, vector),
            }
        }
    }
}

fn orbit_outcome<F: Field>(v: &ModVector<F>, r: crate::permod::OrbitSumReport) -> Result<Outcome> {
    let ok = r.a && r.b && r.c && r.d_char2;
    let mut out = vector_outcome(v, json!({"index": r.index, "report": r}))?;
    if !ok {
        out.violation = Some("orbit-sum conclusions fail".into());
    }
    Ok(out)
}

fn small_support_cmd<F: ParseElem>(
    g: Arc<PermGroup>,
    field: F,
    seeds: &[String],
) -> Result<Outcome> {
    let seeds = seeds
        .iter()
        .map(|s| parse_elems(&field, s))
        .collect::<Result<Vec<_>>>()?;
    let m = submodule_generated_by(g, &field, &seeds)?;
    let v = small_support_vector(&m)?;
    vector_outcome(&v, json!({"dim_m": m.dim()}))
}

fn group_cmd(a: &GroupArgs) -> Result<Outcome> {
    let degree = || {
        a.degree
            .ok_or_else(|| Error::InvalidArgument("--degree is required for this family".into()))
    };
    let field = || {
        a.field
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--field is required for this family".into()))
            .and_then(parse_finite_field)
    };
    let g = match (a.family, &a.from) {
        (_, Some(path)) => load_group(path)?,
        (None, None) => {
            return Err(Error::InvalidArgument(
                "--family or --from is required".into(),
            ))
        }
        (Some(family), None) => match family {
            Family::Cyclic => cyclic(degree()?)?,
            Family::Symmetric => symmetric(degree()?)?,
            Family::Alternating => alternating(degree()?)?,
            Family::Psl => projective_linear(&field()?, true)?,
            Family::Pgl => projective_linear(&field()?, false)?,
            Family::Affine => {
                let f = field()?;
                let u = match &a.unit {
                    Some(u) => f.parse_elem(u)?,
                    None => f.find_element_of_order(f.order() - 1)?,
                };
                affine(&f, &u)?
            }
        },
    };
    let g = if a.pairs { g.pairs_action()? } else { g };
    let text = render_group(&g);
    let json = json!({
        "degree": g.degree(),
        "order": g.order()?,
        "generators": g.generators().iter().map(|p| p.images()).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(json, text))
}

/// 0 on success, 1 when a proven bound or invariant fails, 2 on bad input or
/// unmet preconditions.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantViolation(_) => 1,
        _ => 2,
    }
}

/// Parses `args`, runs the command and writes to the given sinks. Returns
/// the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let outcome = run(&cli).and_then(|o| o.render(cli.format).map(|s| (s, o.violation)));
    match outcome {
        Ok((s, violation)) => {
            let _ = out.write_all(s.as_bytes());
            match violation {
                Some(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
