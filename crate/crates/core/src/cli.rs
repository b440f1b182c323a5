//! Command-line front end. [`run`] takes the argument list and output
//! handles so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::action::{Element, StandardModel};
use crate::family::Family;
use crate::polygon::{self, EdgePair, MultipleOrbit};
use crate::twist::{verify_family, VerificationReport};
use crate::valency::{
    classify_hyperelliptic, closed_form_tv, family_tags, tv_power, FamilyTag, TagKind, TotalValency,
};
use crate::word::parse_rule_tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hyperperiodic", version, about = "Hyperelliptic periodic maps of closed surfaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total valency of a family member, or of a polygon rotation.
    Tv(TvArgs),
    /// Total valency of the k-th power.
    Power(PowerArgs),
    /// Names the hyperelliptic family of a total valency (null if none).
    Classify(TvInput),
    /// Every non-identity element of a standard model with its total valency.
    Enumerate(ModelArgs),
    /// Multiple orbits of a polygon rotation.
    Polygon(PolygonArgs),
    /// Checks a Dehn twist product against the rotation on loops.
    Verify(VerifyArgs),
    /// All family members at a genus with their total valencies.
    Table(GenusArg),
}

#[derive(Debug, Args)]
pub struct TvInput {
    /// Total valency, as a literal `[g,n;t/l+...]@h` or as JSON.
    #[arg(long, alias = "json")]
    pub tv: String,
}

#[derive(Debug, Args)]
pub struct GenusArg {
    #[arg(long, short)]
    pub genus: u64,
}

#[derive(Debug, Args)]
pub struct TvArgs {
    /// 1, 2, 3 or IF3.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, short)]
    pub genus: Option<u64>,
    #[arg(long, short, alias = "exponent", default_value_t = 1)]
    pub k: u64,
    /// Read the total valency off the standard polygon model instead.
    #[arg(long)]
    pub polygon: bool,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[command(flatten)]
    pub input: TvInput,
    #[arg(long, short, alias = "exponent")]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, short)]
    pub genus: u64,
}

#[derive(Debug, Args)]
pub struct PolygonArgs {
    /// Standard model of this family (with --genus).
    #[arg(long, conflicts_with = "pairing")]
    pub family: Option<Family>,
    #[arg(long, short)]
    pub genus: Option<u64>,
    /// JSON array of edge pairs `[a,b]` or `[a,b,reversed]`.
    #[arg(long)]
    pub pairing: Option<PathBuf>,
    /// Edge count; defaults to twice the number of pairs.
    #[arg(long)]
    pub m: Option<usize>,
    /// Rotation in edge units; defaults to 2 for the standard models.
    #[arg(long)]
    pub step: Option<usize>,
    /// Power of the rotation.
    #[arg(long, short, alias = "exponent", default_value_t = 1)]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, short)]
    pub genus: u64,
    /// JSON rule tables: name -> {generator -> word}.
    #[arg(long)]
    pub extensions: Option<PathBuf>,
}

/// Input errors, reported with exit status 2.
#[derive(Debug)]
struct Malformed(String);

impl<E: std::fmt::Display> From<E> for Malformed {
    fn from(e: E) -> Self {
        Malformed(e.to_string())
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Malformed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn parse_tv(s: &str) -> Result<TotalValency, Malformed> {
    let tv: TotalValency = if s.trim_start().starts_with('{') { serde_json::from_str(s)? } else { s.parse()? };
    let validity = tv.validate();
    if !validity.is_valid() {
        return Err(Malformed(format!("{tv} is not a valid total valency ({validity})")));
    }
    Ok(tv)
}

fn parse_tag_kind(s: &str) -> Result<TagKind, Malformed> {
    match s.trim().to_ascii_uppercase().as_str() {
        "IF3" | "I3" | "4" => Ok(TagKind::IF3),
        other => match other.parse::<Family>()? {
            Family::F1 => Ok(TagKind::F1),
            Family::F2 => Ok(TagKind::F2),
            Family::F3 => Ok(TagKind::F3),
        },
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Malformed> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Malformed> {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Tv(a) => {
            let family = a.family.as_deref().ok_or_else(|| Malformed("--family is required".into()))?;
            let g = a.genus.ok_or_else(|| Malformed("--genus is required".into()))?;
            let kind = parse_tag_kind(family)?;
            let tv = if a.polygon {
                let fam = match kind {
                    TagKind::F1 => Family::F1,
                    TagKind::F2 => Family::F2,
                    TagKind::F3 => Family::F3,
                    TagKind::IF3 => return Err(Malformed("I·f3 has no polygon rotation model".into())),
                };
                let (surface, rot) = polygon::standard_family(fam, g)?;
                let rot = polygon::RotationAction::new(&surface, power_step(rot.step(), a.k, surface.edge_count()))?;
                polygon::tv_from_polygon(&surface, &rot)?
            } else {
                closed_form_tv(FamilyTag::new(kind, a.k), g)?
            };
            write_tv(out, &tv, text)?;
        }
        Command::Power(a) => {
            let tv = tv_power(&parse_tv(&a.input.tv)?, a.k)?;
            write_tv(out, &tv, text)?;
        }
        Command::Classify(a) => {
            let tag = classify_hyperelliptic(&parse_tv(&a.tv)?)?;
            if text {
                match tag {
                    Some(t) => writeln!(out, "{t}")?,
                    None => writeln!(out, "not hyperelliptic")?,
                }
            } else {
                emit_json(out, &tag)?;
            }
        }
        Command::Enumerate(a) => {
            let model = StandardModel::of_family(a.family);
            let action = model.action(a.genus)?;
            for (e, tv) in action.enumerate()? {
                if text {
                    writeln!(out, "{e}\t{tv}")?;
                } else {
                    #[derive(Serialize)]
                    struct Line<'a> {
                        element: Element,
                        tv: &'a TotalValency,
                    }
                    emit_json(out, &Line { element: e, tv: &tv })?;
                }
            }
        }
        Command::Polygon(a) => polygon_command(a, out, text)?,
        Command::Verify(a) => {
            let extensions = match &a.extensions {
                Some(path) => parse_rule_tables(&std::fs::read_to_string(path)?)?,
                None => Vec::new(),
            };
            let report = verify_family(a.family, a.genus, &extensions)?;
            if text {
                write_report(out, &report)?;
            } else {
                emit_json(out, &report)?;
            }
            return Ok(if report.ok { 0 } else { 1 });
        }
        Command::Table(a) => {
            let g = a.genus;
            for tag in family_tags(g) {
                let tv = closed_form_tv(tag, g)?;
                let canonical = classify_hyperelliptic(&tv)?.expect("every family member is hyperelliptic");
                if text {
                    writeln!(out, "{tag}\t{tv}\t{canonical}")?;
                } else {
                    emit_json(out, &json!({ "tag": tag, "tv": tv, "canonical": canonical }))?;
                }
            }
        }
    }
    Ok(0)
}

fn power_step(step: usize, k: u64, m: usize) -> usize {
    ((step as u128 * k as u128) % m as u128) as usize
}

fn write_tv(out: &mut dyn Write, tv: &TotalValency, text: bool) -> Result<(), Malformed> {
    if text {
        writeln!(out, "{tv}")?;
        Ok(())
    } else {
        emit_json(out, tv)
    }
}

fn polygon_command(a: &PolygonArgs, out: &mut dyn Write, text: bool) -> Result<(), Malformed> {
    let (surface, base_step) = match (&a.family, &a.pairing) {
        (Some(fam), None) => {
            let g = a.genus.ok_or_else(|| Malformed("--genus is required with --family".into()))?;
            let (s, rot) = polygon::standard_family(*fam, g)?;
            (s, a.step.unwrap_or(rot.step()))
        }
        (None, Some(path)) => {
            let pairs: Vec<EdgePair> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let m = a.m.unwrap_or(2 * pairs.len());
            let step = a.step.ok_or_else(|| Malformed("--step is required with --pairing".into()))?;
            (polygon::build(m, &pairs)?, step)
        }
        _ => return Err(Malformed("give either --family with --genus, or --pairing with --step".into())),
    };
    let step = power_step(base_step, a.k, surface.edge_count());
    let rot = polygon::RotationAction::new(&surface, step)?;
    let orbits = polygon::multiple_orbits(&surface, &rot)?;
    let tv = polygon::tv_from_polygon(&surface, &rot)?;
    if text {
        writeln!(out, "m={} genus={} step={} order={}", surface.edge_count(), surface.genus(), step, rot.order())?;
        for o in &orbits {
            writeln!(
                out,
                "orbit size={} isotropy={} rotation={} valency={}",
                o.orbit_size, o.isotropy, o.rotation, o.valency
            )?;
        }
        writeln!(out, "{tv}")?;
    } else {
        #[derive(Serialize)]
        struct Report<'a> {
            m: usize,
            genus: u64,
            step: usize,
            order: u64,
            orbits: &'a [MultipleOrbit],
            tv: &'a TotalValency,
        }
        emit_json(
            out,
            &Report {
                m: surface.edge_count(),
                genus: surface.genus(),
                step,
                order: rot.order(),
                orbits: &orbits,
                tv: &tv,
            },
        )?;
    }
    Ok(())
}

fn write_report(out: &mut dyn Write, r: &VerificationReport) -> Result<(), Malformed> {
    writeln!(out, "{} g={} product {}", r.family, r.genus, r.product.join(" "))?;
    for e in &r.entries {
        let computed = match (&e.computed, &e.missing_rule) {
            (Some(w), _) => w.to_string(),
            (None, Some(m)) => format!("missing {}({}) at factor {}", m.twist, m.symbol, m.position),
            (None, None) => "-".to_string(),
        };
        writeln!(out, "{}\t{}\t{}\t{}", e.generator, e.expected, computed, e.verdict)?;
    }
    if r.needs_extended_rules {
        writeln!(out, "warning: some images need rules beyond the built-in tables")?;
    }
    writeln!(out, "{}", if r.ok { "ok" } else { "FAILED" })?;
    Ok(())
}
