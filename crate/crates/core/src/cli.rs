//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::FinAbGroup;
use crate::ahss::{self, AhssConfig, Declaration, PageDump, Verdict};
use crate::coefficients::{spectrum, Overrides, SpacePart, SpectrumName};
use crate::condense::{self, Acting, Level, SkeletalCategory, Statistic};
use crate::em_cohomology::{EmAlgebra, EmSpace};
use crate::steenrod::{adem_normalize, excess, SteenrodWord};
use crate::{selftest, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "sfcond", version, about = "Cohomology and condensation computations for strongly fusion 2-categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mod 2 cohomology of K(E, n): generators and Poincaré series.
    Emcoh(EmcohArgs),
    /// Reduce a Steenrod word to admissible form.
    Steenrod(SteenrodArgs),
    /// Run the Atiyah–Hirzebruch spectral sequence.
    Ahss(AhssArgs),
    /// Re-render page dumps written by `ahss --dump-pages`.
    Render(RenderArgs),
    /// Obstruction verdict for strongly fusion 2-categories with π₀ = E.
    Obstruction(ObstructionArgs),
    /// π₀-level condensation.
    Condense(CondenseArgs),
    /// Run the acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct EmcohArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub space_degree: u32,
    #[arg(long)]
    pub max_degree: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SteenrodArgs {
    /// e.g. "Sq2 Sq2 + Sq3 Sq1"
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumArg {
    #[value(name = "SH", alias = "sh")]
    Sh,
    #[value(name = "SW", alias = "sw")]
    Sw,
    #[value(name = "Spin", alias = "spin")]
    Spin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TwistArg {
    FermionParity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZeroArg {
    Zero,
}

#[derive(Args, Debug)]
pub struct AhssArgs {
    #[arg(long, value_enum)]
    pub spectrum: SpectrumArg,
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub space_degree: u32,
    #[arg(long)]
    pub total_degree: u32,
    /// Twist the d2 by the fundamental class of the first Z/2 factor.
    #[arg(long, value_enum)]
    pub twist: Option<TwistArg>,
    /// Declare the d5 out of (0,4) to vanish.
    #[arg(long, value_enum)]
    pub d5: Option<ZeroArg>,
    /// Declare d_r from (i,j) to vanish: `r:i,j`. Repeatable.
    #[arg(long = "declare-zero", value_name = "r:i,j")]
    pub declare_zero: Vec<String>,
    /// Declare d_r from (i,j) to have a rank: `r:i,j=rank`. Repeatable.
    #[arg(long, value_name = "r:i,j=rank")]
    pub declare: Vec<String>,
    /// Split a two-factor group into point, reduced and smash summands.
    #[arg(long)]
    pub split: bool,
    #[arg(long, value_name = "PATH")]
    pub dump_pages: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub coeff_overrides: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long, value_name = "PATH")]
    pub pages: PathBuf,
}

#[derive(Args, Debug)]
pub struct ObstructionArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub statistic: String,
    #[arg(long)]
    pub level: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CondenseArgs {
    /// Components of 2Vec[π₀] (fusion level).
    #[arg(long, conflicts_with = "descriptor", required_unless_present = "descriptor")]
    pub pi0: Option<String>,
    /// Full descriptor, e.g. "braided; pi0=Z/4; id=2Rep(S3); fermionic=no".
    #[arg(long)]
    pub descriptor: Option<String>,
    /// Subgroup whose group algebra is condensed: `1`, `Z/2`, `Z/2 diag`, `<(1,1)>`.
    #[arg(long, conflicts_with = "phi", required_unless_present = "phi")]
    pub algebra: Option<String>,
    #[arg(long)]
    pub phi: bool,
    /// The group algebra lies in the symmetric center.
    #[arg(long)]
    pub central: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long)]
    pub json: bool,
}

/// Everything a command produces; the binary prints one of the two forms.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub want_json: bool,
    pub exit_code: i32,
}

impl Outcome {
    fn new(command: &str, inputs: Value, provenance: Vec<String>, result: Value, text: String, want_json: bool) -> Self {
        Outcome {
            text,
            json: json!({ "command": command, "inputs": inputs, "provenance": provenance, "result": result }),
            want_json,
            exit_code: 0,
        }
    }

    pub fn render(&self) -> String {
        if self.want_json {
            serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n"
        } else {
            self.text.clone()
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Emcoh(a) => emcoh(a),
        Command::Steenrod(a) => steenrod(a),
        Command::Ahss(a) => run_ahss(a),
        Command::Render(a) => render(a),
        Command::Obstruction(a) => obstruction(a),
        Command::Condense(a) => run_condense(a),
        Command::Selftest(a) => run_selftest(a),
    }
}

fn emcoh(a: EmcohArgs) -> Result<Outcome> {
    let e: FinAbGroup = a.group.parse()?;
    let space = EmSpace::from_group(&e, a.space_degree)?;
    let alg = EmAlgebra::new(space.clone(), a.max_degree)?;
    let gens: Vec<(String, u32)> = (0..alg.generators().len())
        .map(|g| (alg.generator_name(g), alg.generators()[g].degree))
        .collect();
    let series = alg.poincare_series();
    let mut text = format!("H*({space}; Z/2) through degree {}\n", a.max_degree);
    text.push_str("generators:\n");
    for (name, d) in &gens {
        text.push_str(&format!("  {name} ({d})\n"));
    }
    let s: Vec<String> = series.iter().map(ToString::to_string).collect();
    text.push_str(&format!("Poincaré series: {}\n", s.join(",")));
    let result = json!({
        "space": space.to_string(),
        "generators": gens.iter().map(|(n, d)| json!({"name": n, "degree": d})).collect::<Vec<_>>(),
        "poincare_series": series,
    });
    let inputs = json!({"group": e.to_string(), "space_degree": a.space_degree, "max_degree": a.max_degree});
    Ok(Outcome::new("emcoh", inputs, vec!["serre generators".into()], result, text, a.json))
}

fn steenrod(a: SteenrodArgs) -> Result<Outcome> {
    let word: SteenrodWord = a.word.parse()?;
    let normal = adem_normalize(&word);
    let degree = normal.degree()?;
    let mut rows = Vec::new();
    for m in normal.monomials() {
        rows.push(json!({"monomial": m.to_string(), "excess": excess(m)?}));
    }
    let text = format!(
        "{} = {}\ndegree: {}\n",
        word,
        normal,
        degree.map_or("-".to_string(), |d| d.to_string())
    );
    let result = json!({"admissible": normal.to_string(), "degree": degree, "monomials": rows});
    Ok(Outcome::new("steenrod", json!({"word": a.word}), vec!["adem relations".into()], result, text, a.json))
}

fn declarations(a: &AhssArgs) -> Result<Vec<Declaration>> {
    let mut out = Vec::new();
    if a.d5.is_some() {
        out.push(Declaration { r: 5, source: (0, 4), rank: 0 });
    }
    for s in &a.declare_zero {
        let d: Declaration = s.parse()?;
        if d.rank != 0 {
            return Err(Error::Parse(format!("--declare-zero takes r:i,j, got {s:?}")));
        }
        out.push(d);
    }
    for s in &a.declare {
        out.push(s.parse()?);
    }
    Ok(out)
}

fn run_ahss(a: AhssArgs) -> Result<Outcome> {
    let e: FinAbGroup = a.group.parse()?;
    let name = match (a.spectrum, a.twist) {
        (SpectrumArg::Sw, Some(_)) => SpectrumName::SWTwisted,
        (SpectrumArg::Sw, None) => SpectrumName::SW,
        (SpectrumArg::Sh, None) => SpectrumName::SH,
        (SpectrumArg::Spin, None) => SpectrumName::Spin,
        (s, Some(_)) => return Err(Error::Unsupported(format!("the fermion-parity twist applies to SW, not {s:?}"))),
    };
    let decl = declarations(&a)?;
    let mut table = spectrum(name);
    let mut provenance = Vec::new();
    let overrides = match &a.coeff_overrides {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|err| Error::Io(format!("{}: {err}", p.display())))?;
            let o = Overrides::from_json(&text)?;
            provenance.extend(o.apply_to_spectrum(&mut table)?);
            o
        }
        None => Overrides::default(),
    };
    let inputs = json!({
        "spectrum": name.to_string(),
        "group": e.to_string(),
        "space_degree": a.space_degree,
        "total_degree": a.total_degree,
        "twist": a.twist.map(|_| "fermion-parity"),
        "declarations": decl,
        "split": a.split,
    });
    if a.split {
        let f = e.invariant_factors();
        if f.len() != 2 {
            return Err(Error::Unsupported(format!("--split needs two invariant factors, got {e}")));
        }
        let split = ahss::product_split(
            &FinAbGroup::cyclic(f[0]),
            &FinAbGroup::cyclic(f[1]),
            a.space_degree,
            &table,
            &decl,
            a.total_degree,
        )?;
        let mut text = format!("{}^{}({e}[{}]) by product splitting\n", name, a.total_degree, a.space_degree);
        for s in &split.summands {
            text.push_str(&format!("  {}: {}\n", s.summand, s.verdict));
            for ev in &s.evidence {
                text.push_str(&format!("    {ev}\n"));
            }
        }
        text.push_str(&format!("result: {}\n", split.combined));
        let mut out = Outcome::new("ahss", inputs, provenance, to_value(&split), text, a.json);
        if matches!(split.combined, Verdict::Inconclusive { .. }) {
            out.exit_code = Error::Inconclusive(String::new()).exit_code();
        }
        return Ok(out);
    }
    let space = EmSpace::from_group(&e, a.space_degree)?;
    let mut config = AhssConfig::new(space, SpacePart::Full, table, a.total_degree);
    config.overrides = overrides;
    config.override_key = Some((e.clone(), a.space_degree));
    let (pages, report) = ahss::run(config, &decl, a.total_degree)?;
    let dumps: Vec<PageDump> = pages.iter().map(|p| p.dump()).collect();
    if let Some(path) = &a.dump_pages {
        let body = serde_json::to_string_pretty(&dumps).expect("page dumps serialize");
        std::fs::write(path, body).map_err(|err| Error::Io(format!("{}: {err}", path.display())))?;
    }
    let last = pages.last().expect("at least one page");
    provenance.extend(last.provenance().iter().cloned());
    let mut text = render_dumps(&dumps);
    for p in &provenance {
        text.push_str(&format!("# {p}\n"));
    }
    text.push_str(&format!("{}^{}({}) = {}\n", name, a.total_degree, last.config().space, report.verdict));
    let result = json!({"report": report, "pages": dumps});
    let mut out = Outcome::new("ahss", inputs, provenance, result, text, a.json);
    if let Verdict::Inconclusive { .. } = report.verdict {
        out.exit_code = Error::Inconclusive(String::new()).exit_code();
    }
    Ok(out)
}

/// Text form of a sequence of page dumps; `render` reproduces it from JSON.
pub fn render_dumps(dumps: &[PageDump]) -> String {
    dumps.iter().map(PageDump::render_text).collect::<Vec<_>>().join("\n") + "\n"
}

fn render(a: RenderArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&a.pages).map_err(|err| Error::Io(format!("{}: {err}", a.pages.display())))?;
    let dumps: Vec<PageDump> =
        serde_json::from_str(&text).map_err(|err| Error::Parse(format!("{}: {err}", a.pages.display())))?;
    let out = render_dumps(&dumps);
    Ok(Outcome::new("render", json!({"pages": a.pages}), Vec::new(), json!({"text": out}), out, false))
}

fn obstruction(a: ObstructionArgs) -> Result<Outcome> {
    let e: FinAbGroup = a.group.parse()?;
    let statistic: Statistic = a.statistic.parse()?;
    let level: Level = a.level.parse()?;
    let v = condense::obstruction_verdict(&e, statistic, level)?;
    let inputs = json!({"group": e.to_string(), "statistic": statistic, "level": level});
    Ok(Outcome::new("obstruction", inputs, vec![v.anchor.clone()], to_value(&v), v.to_string(), a.json))
}

fn run_condense(a: CondenseArgs) -> Result<Outcome> {
    let cat: SkeletalCategory = match (&a.pi0, &a.descriptor) {
        (Some(p), None) => SkeletalCategory::strongly_fusion(p.parse()?, Statistic::Bosonic, Level::Fusion),
        (None, Some(d)) => d.parse()?,
        _ => return Err(Error::Parse("give exactly one of --pi0 and --descriptor".into())),
    };
    let out = if a.phi {
        condense::condense_phi(&cat)?
    } else {
        let subgroup = a.algebra.as_deref().unwrap_or("1");
        let h = match &cat.pi0 {
            condense::Pi0::Group { group } => Acting::parse_subgroup(subgroup, group)?,
            condense::Pi0::Set { .. } => {
                return Err(Error::Precondition("condensing a group algebra needs grouplike components".into()));
            }
        };
        condense::condense_group_algebra(&cat, &h, a.central)?
    };
    let text = format!("{cat}\n  -> {out}\ncomponents: {}\nstrongly fusion: {}\n", out.components(), out.is_strongly_fusion());
    let inputs = json!({"category": cat.to_string(), "algebra": if a.phi { "phi".to_string() } else { a.algebra.clone().unwrap_or_default() }});
    let result = json!({"category": out, "descriptor": out.to_string(), "components": out.components()});
    Ok(Outcome::new("condense", inputs, Vec::new(), result, text, a.json))
}

fn run_selftest(a: SelftestArgs) -> Result<Outcome> {
    let results = selftest::run_all();
    let text = results.iter().map(|r| r.line() + "\n").collect::<String>();
    let all = results.iter().all(|r| r.passed);
    let mut out = Outcome::new("selftest", json!({}), Vec::new(), to_value(&results), text, a.json);
    if !all {
        out.exit_code = 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Result<Outcome> {
        let mut v = vec!["sfcond"];
        v.extend_from_slice(args);
        run(Cli::try_parse_from(v).expect("arguments parse"))
    }

    #[test]
    fn emcoh_series() {
        let out = go(&["emcoh", "--group", "Z/2", "--space-degree", "2", "--max-degree", "7"]).unwrap();
        assert!(out.text.contains("Poincaré series: 1,0,1,1,1,2,2,2"), "{}", out.text);
        let out = go(&["emcoh", "--group", "Z/4", "--space-degree", "4", "--max-degree", "6", "--json"]).unwrap();
        let names: Vec<&str> =
            out.json["result"]["generators"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
        assert_eq!(names.len(), 3);
    }

    #[test]
    fn ahss_exit_codes() {
        let base = ["ahss", "--spectrum", "SW", "--group", "Z/2", "--space-degree", "2", "--total-degree", "5"];
        let out = go(&[&base[..], &["--d5", "zero"]].concat()).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.text.ends_with("= 0\n"), "{}", out.text);
        let out = go(&[&base[..], &["--twist", "fermion-parity", "--d5", "zero"]].concat()).unwrap();
        assert_eq!(out.exit_code, 4);
        let out =
            go(&[&base[..], &["--twist", "fermion-parity", "--d5", "zero", "--declare-zero", "3:2,2"]].concat()).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.text.ends_with("= Z/2\n"), "{}", out.text);
    }

    #[test]
    fn condense_commands() {
        let out = go(&["condense", "--pi0", "Z/4", "--algebra", "Z/2", "--json"]).unwrap();
        assert_eq!(out.json["result"]["components"], 2);
        let out = go(&["condense", "--pi0", "Z/2 x Z/2", "--algebra", "Z/2 diag"]).unwrap();
        assert!(out.text.contains("pi0=Z/2;"), "{}", out.text);
        assert!(go(&["condense", "--pi0", "Z/4", "--algebra", "Z/3"]).is_err());
    }
}
