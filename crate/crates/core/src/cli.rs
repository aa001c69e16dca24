//! Command-line frontend.
//!
//! Results go to `out`, diagnostics to `err`. Exit codes: 0 success,
//! 1 domain error (invalid discriminant, non-projective input, ...),
//! 2 usage error (bad arguments or unparsable input).

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bijection::{form_to_pair, pair_to_form};
use crate::classgroup::{
    enumerate_classes, equivalent, identity_form, EquivalenceVerdict, SearchLimits, DEFAULT_MAX_DEPTH,
};
use crate::composition::{compose, parse_bilinear_coefficients, tilde_product, verify_composition, BilinearMap};
use crate::cubicform::{parse_ints, CubicForm, Unimodular};
use crate::error::Error;
use crate::idealmod::{BalancedPair, OrientedIdeal};
use crate::json;
use crate::quadring::{Discriminant, QuadElem};

/// Overrides the default equivalence search depth.
pub const DEPTH_ENV: &str = "CUBIC_EQUIV_MAX_DEPTH";

#[derive(Parser, Debug)]
#[command(
    name = "cubicomp",
    version,
    about = "Composition of projective binary cubic forms a0x^3+3a1x^2y+3a2xy^2+a3y^3",
    after_help = "Forms are written a0,a1,a2,a3 in the triplicate convention: \
                  1,-2,0,1 means x^3 - 6x^2y + y^3. Use --expanded to give the \
                  plain polynomial coefficients instead, or pass {\"a\":[...]} JSON."
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Read forms as plain coefficients b0,b1,b2,b3 of b0x^3+b1x^2y+b2xy^2+b3y^3.
    #[arg(long, global = true)]
    expanded: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DiscArg {
    /// Discriminant D: nonzero, not a square, 0 or 1 mod 4.
    #[arg(long = "disc", allow_hyphen_values = true)]
    disc: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminant of a form.
    Disc {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Hessian (a1^2-a0a2, a1a2-a0a3, a2^2-a1a3).
    Hessian {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// The covariant p' as exact half-integers (triplicate convention).
    Covariant {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Whether the Hessian is primitive.
    Projective {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Right action f(px+qy, rx+sy) of a matrix p,q,r,s in SL2(Z).
    Act {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// The balanced pair (J, delta) of a projective form.
    Topair {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// The form of a balanced pair; elements are written s+t*sqrt(D).
    Toform {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Compose two projective forms of discriminant D.
    Compose {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// Check P(X,Y) = p1'p2 + p1p2' for given bilinear maps X, Y.
    Verify {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
        /// m1,m2,m3,m4 for X = m1x1x2 + m2x1y2 + m3y1x2 + m4y1y2.
        #[arg(long = "X", allow_hyphen_values = true)]
        x: String,
        /// n1,n2,n3,n4 for Y.
        #[arg(long = "Y", allow_hyphen_values = true)]
        y: String,
    },
    /// Expand p~1(x1,y1) p~2(x2,y2) and print its tau part and rational part.
    Expand {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// The identity form of discriminant D.
    Identity {
        #[command(flatten)]
        disc: DiscArg,
    },
    /// Search for g in SL2(Z) with f1.g = f2.
    Equivalent {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
        /// Search depth (default 24, or $CUBIC_EQUIV_MAX_DEPTH).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Enumerate classes of forms with |a_i| <= bound and their composition table.
    Classes {
        #[command(flatten)]
        disc: DiscArg,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        depth: Option<usize>,
    },
}

/// Validated global settings.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub discriminant: Option<Discriminant>,
    pub json: bool,
    pub expanded: bool,
    pub depth: usize,
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(String, Value), Failure>;

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, value)) => {
            let shown = if cli.json { json::render(&value) } else { text };
            let _ = writeln!(out, "{shown}");
            0
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
    }
}

fn default_depth() -> std::result::Result<usize, Failure> {
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{DEPTH_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DEPTH),
    }
}

fn parse_disc(arg: &DiscArg) -> std::result::Result<Discriminant, Failure> {
    let value = arg
        .disc
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("--disc expects an integer, got {:?}", arg.disc)))?;
    Ok(Discriminant::new(value)?)
}

fn parse_form(text: &str, expanded: bool) -> std::result::Result<CubicForm, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(json::parse_form(text)?);
    }
    if expanded {
        let raw = parse_ints::<4>(text)?;
        Ok(CubicForm::from_expanded(raw)?)
    } else {
        Ok(text.parse()?)
    }
}

/// A form of discriminant `disc` that must be projective.
fn parse_projective(text: &str, cfg: &CliConfig, disc: &Discriminant) -> std::result::Result<CubicForm, Failure> {
    let f = parse_form(text, cfg.expanded)?;
    f.require(disc)?;
    Ok(f)
}

impl Command {
    fn disc_arg(&self) -> Option<&DiscArg> {
        match self {
            Command::Topair { disc, .. }
            | Command::Toform { disc, .. }
            | Command::Compose { disc, .. }
            | Command::Verify { disc, .. }
            | Command::Expand { disc, .. }
            | Command::Identity { disc }
            | Command::Equivalent { disc, .. }
            | Command::Classes { disc, .. } => Some(disc),
            _ => None,
        }
    }

    fn depth(&self) -> Option<usize> {
        match self {
            Command::Equivalent { depth, .. } | Command::Classes { depth, .. } => *depth,
            _ => None,
        }
    }
}

impl CliConfig {
    fn from_cli(cli: &Cli) -> std::result::Result<Self, Failure> {
        let discriminant = cli.command.disc_arg().map(parse_disc).transpose()?;
        let depth = cli.command.depth().map_or_else(default_depth, Ok)?;
        Ok(CliConfig {
            discriminant,
            json: cli.json,
            expanded: cli.expanded,
            depth,
        })
    }

    fn disc(&self) -> &Discriminant {
        self.discriminant.as_ref().expect("subcommand takes --disc")
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let cfg = CliConfig::from_cli(cli)?;
    match &cli.command {
        Command::Disc { form } => {
            let f = parse_form(form, cfg.expanded)?;
            let d = f.discriminant();
            Ok((d.to_string(), json!({ "D": json::int(&d) })))
        }
        Command::Hessian { form } => {
            let h = parse_form(form, cfg.expanded)?.hessian();
            Ok((h.to_string(), json::hessian(&h)))
        }
        Command::Covariant { form } => {
            let c = parse_form(form, cfg.expanded)?.covariant();
            Ok((c.to_string(), json::covariant(&c)))
        }
        Command::Projective { form } => {
            let p = parse_form(form, cfg.expanded)?.is_projective();
            Ok((p.to_string(), json!({ "projective": p })))
        }
        Command::Act { form, matrix } => {
            let f = parse_form(form, cfg.expanded)?;
            let g: Unimodular = match parse_ints::<4>(matrix) {
                Ok([p, q, r, s]) => Unimodular::new(p, q, r, s)?,
                Err(e) => return Err(e.into()),
            };
            let h = f.act(&g);
            Ok((h.to_string(), json::form(&h)))
        }
        Command::Topair { form, .. } => {
            let disc = cfg.disc();
            let f = parse_projective(form, &cfg, disc)?;
            let pair = form_to_pair(&f, disc)?;
            let text = format!(
                "ideal: {}\ndelta: {}\nsigned_norm: {}",
                pair.ideal,
                pair.delta,
                pair.ideal.signed_norm()
            );
            Ok((text, json::pair(&pair)))
        }
        Command::Toform { alpha, beta, delta, .. } => {
            let disc = cfg.disc();
            let alpha = QuadElem::parse(alpha, disc)?;
            let beta = QuadElem::parse(beta, disc)?;
            let delta = QuadElem::parse(delta, disc)?;
            let pair = BalancedPair::new(OrientedIdeal::new(alpha, beta)?, delta);
            let f = pair_to_form(&pair)?;
            Ok((f.to_string(), json::form(&f)))
        }
        Command::Compose { f1, f2, .. } => {
            let disc = cfg.disc();
            let f1 = parse_projective(f1, &cfg, disc)?;
            let f2 = parse_projective(f2, &cfg, disc)?;
            let r = compose(&f1, &f2, disc)?;
            let [m1, m2, m3, m4] = &r.xy.m;
            let [n1, n2, n3, n4] = &r.xy.n;
            let text = format!(
                "P: {}\nX: {m1},{m2},{m3},{m4}\nY: {n1},{n2},{n3},{n4}\nverified: {}",
                r.form,
                r.verification.passed()
            );
            Ok((text, json::composition(&r)))
        }
        Command::Verify { f1, f2, p, x, y, .. } => {
            let disc = cfg.disc();
            let f1 = parse_projective(f1, &cfg, disc)?;
            let f2 = parse_projective(f2, &cfg, disc)?;
            let big = parse_projective(p, &cfg, disc)?;
            let xy = BilinearMap::new(parse_bilinear_coefficients(x)?, parse_bilinear_coefficients(y)?);
            let ok = verify_composition(&f1, &f2, &big, &xy);
            Ok((ok.to_string(), json!({ "verified": ok })))
        }
        Command::Expand { f1, f2, .. } => {
            let disc = cfg.disc();
            let f1 = parse_form(f1, cfg.expanded)?;
            let f2 = parse_form(f2, cfg.expanded)?;
            let prod = tilde_product(&f1, &f2, disc)?;
            let (tau, rational) = (prod.tau_part(), prod.rational_part());
            let text = format!("tau: {tau}\nrational: {rational}");
            Ok((
                text,
                json!({ "tau": tau.to_string(), "rational": rational.to_string() }),
            ))
        }
        Command::Identity { .. } => {
            let disc = cfg.disc();
            let f = identity_form(disc);
            Ok((f.to_string(), json::form(&f)))
        }
        Command::Equivalent { f1, f2, .. } => {
            let disc = cfg.disc();
            let f1 = parse_form(f1, cfg.expanded)?;
            let f2 = parse_form(f2, cfg.expanded)?;
            for f in [&f1, &f2] {
                if &f.discriminant() != disc.value() {
                    return Err(Error::DiscriminantMismatch {
                        left: f.discriminant().to_string(),
                        right: disc.to_string(),
                    }
                    .into());
                }
            }
            let limits = SearchLimits::with_depth(cfg.depth);
            let v = equivalent(&f1, &f2, &limits)?;
            let text = match &v {
                EquivalenceVerdict::Equivalent(g) => format!("equivalent: {g}"),
                EquivalenceVerdict::NotFoundWithinBound { depth, ceiling } => {
                    format!("not found within bound (depth {depth}, ceiling {ceiling})")
                }
            };
            Ok((text, json::verdict(&v)))
        }
        Command::Classes { bound, .. } => {
            let disc = cfg.disc();
            let limits = SearchLimits::with_depth(cfg.depth);
            let t = enumerate_classes(disc, *bound, &limits)?;
            let mut text = format!("D: {}\nclasses: {}\nidentity: {}\nreps:", t.disc, t.len(), t.identity);
            for (i, r) in t.reps.iter().enumerate() {
                text.push_str(&format!("\n  {i}: {r}"));
            }
            text.push_str("\ntable:");
            for row in &t.table {
                let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!("\n  {}", row.join(" ")));
            }
            Ok((text, json::class_table(&t)))
        }
    }
}
