//! π₀-level bookkeeping for condensation in fusion 2-categories, and the
//! obstruction verdicts built on top of the spectral sequence runs.
//!
//! Only components, grouplikeness, the identity-component tag and the
//! monoidality level are tracked.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{dual, quotient_by_subgroup_image, two_torsion, FinAbGroup, GroupExpr};
use crate::ahss::{product_split, run, smash_margolis_evidence, AhssConfig, Declaration, Verdict as AhssVerdict};
use crate::coefficients::{circle_row, spectrum, SpacePart, SpectrumName};
use crate::em_cohomology::{EmFactor, EmSpace};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// No monoidal structure left, only a module 2-category.
    Module,
    Fusion,
    Braided,
    Sylleptic,
    Symmetric,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Module => "module",
            Level::Fusion => "fusion",
            Level::Braided => "braided",
            Level::Sylleptic => "sylleptic",
            Level::Symmetric => "symmetric",
        })
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "module" => Ok(Level::Module),
            "fusion" => Ok(Level::Fusion),
            "braided" => Ok(Level::Braided),
            "sylleptic" => Ok(Level::Sylleptic),
            "symmetric" => Ok(Level::Symmetric),
            other => Err(Error::Parse(format!("unknown level {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Bosonic,
    Fermionic,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Bosonic => "bosonic",
            Statistic::Fermionic => "fermionic",
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bosonic" | "no" | "false" => Ok(Statistic::Bosonic),
            "fermionic" | "yes" | "true" => Ok(Statistic::Fermionic),
            other => Err(Error::Parse(format!("unknown statistic {other:?}"))),
        }
    }
}

/// The 2-category of endomorphisms of the unit, up to the data we keep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdentityComponent {
    TwoVec,
    TwoSVec,
    /// `2Rep(G)`.
    TwoRep { group: String, order: Option<u64> },
    /// `2Rep(G, z)` with `z` a central element of order two.
    TwoRepZ { group: String, order: Option<u64> },
}

impl IdentityComponent {
    pub fn is_strongly_fusion(&self) -> bool {
        matches!(self, IdentityComponent::TwoVec | IdentityComponent::TwoSVec)
    }
}

/// Order of a finite group from a short name: `S3`, `A4`, `D4`, `Z6`, `Z/6`, `Q8`.
fn group_order(name: &str) -> Option<u64> {
    let name = name.trim();
    if let Ok(g) = name.parse::<FinAbGroup>() {
        return Some(g.order());
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let n: u64 = tail.parse().ok()?;
    let fact = |n: u64| (1..=n).product::<u64>();
    match head {
        "S" if n <= 20 => Some(fact(n)),
        "A" if (2..=20).contains(&n) => Some(fact(n) / 2),
        "D" => Some(2 * n),
        "Z" | "C" => Some(n),
        "Q" if n.is_multiple_of(4) => Some(n),
        _ => None,
    }
}

impl fmt::Display for IdentityComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityComponent::TwoVec => f.write_str("2Vec"),
            IdentityComponent::TwoSVec => f.write_str("2SVec"),
            IdentityComponent::TwoRep { group, .. } => write!(f, "2Rep({group})"),
            IdentityComponent::TwoRepZ { group, .. } => write!(f, "2Rep({group},z)"),
        }
    }
}

impl FromStr for IdentityComponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "2Vec" => return Ok(IdentityComponent::TwoVec),
            "2SVec" => return Ok(IdentityComponent::TwoSVec),
            _ => {}
        }
        let inner = t
            .strip_prefix("2Rep(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown identity component {t:?}")))?;
        match inner.rsplit_once(',') {
            Some((g, z)) if z.trim() == "z" => {
                let group = g.trim().to_string();
                Ok(IdentityComponent::TwoRepZ { order: group_order(&group), group })
            }
            _ => Ok(IdentityComponent::TwoRep { order: group_order(inner), group: inner.trim().to_string() }),
        }
    }
}

/// Connected components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pi0 {
    /// Grouplike fusion rules.
    Group { group: FinAbGroup },
    /// A bare finite set, optionally with a permutation action.
    Set { size: usize },
}

impl Pi0 {
    pub fn count(&self) -> u64 {
        match self {
            Pi0::Group { group } => group.order(),
            Pi0::Set { size } => *size as u64,
        }
    }
}

impl fmt::Display for Pi0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi0::Group { group } => write!(f, "{group}"),
            Pi0::Set { size } => write!(f, "set({size})"),
        }
    }
}

/// Skeletal model of a (multi)fusion 2-category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletalCategory {
    pub pi0: Pi0,
    pub identity: IdentityComponent,
    pub statistic: Statistic,
    pub level: Level,
}

impl SkeletalCategory {
    pub fn new(pi0: Pi0, identity: IdentityComponent, statistic: Statistic, level: Level) -> Result<Self> {
        if identity.is_strongly_fusion() && !matches!(pi0, Pi0::Group { .. }) && level != Level::Module {
            return Err(Error::Precondition("strongly fusion 2-categories have grouplike components".into()));
        }
        Ok(SkeletalCategory { pi0, identity, statistic, level })
    }

    /// `2Vec[E]` or `2SVec[E]` at the given level.
    pub fn strongly_fusion(e: FinAbGroup, statistic: Statistic, level: Level) -> Self {
        let identity = match statistic {
            Statistic::Bosonic => IdentityComponent::TwoVec,
            Statistic::Fermionic => IdentityComponent::TwoSVec,
        };
        SkeletalCategory { pi0: Pi0::Group { group: e }, identity, statistic, level }
    }

    pub fn is_strongly_fusion(&self) -> bool {
        self.identity.is_strongly_fusion()
    }

    pub fn components(&self) -> u64 {
        self.pi0.count()
    }
}

impl fmt::Display for SkeletalCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}; pi0={}; id={}; fermionic={}",
            self.level,
            self.pi0,
            self.identity,
            if self.statistic == Statistic::Fermionic { "yes" } else { "no" }
        )
    }
}

impl FromStr for SkeletalCategory {
    type Err = Error;

    /// `"braided; pi0=Z/4; id=2Rep(S3); fermionic=no"`. `pi0=set(5)` gives a
    /// bare set. Missing `id` means strongly fusion, missing `fermionic` means no.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';').map(str::trim).filter(|p| !p.is_empty());
        let level: Level = parts.next().ok_or_else(|| Error::Parse("empty descriptor".into()))?.parse()?;
        let mut fields = BTreeMap::new();
        for p in parts {
            let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {p:?}")))?;
            fields.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
        }
        let statistic: Statistic = fields.get("fermionic").map_or(Ok(Statistic::Bosonic), |v| v.parse())?;
        let pi0 = match fields.get("pi0") {
            None => return Err(Error::Parse("descriptor needs pi0".into())),
            Some(v) => match v.strip_prefix("set(").and_then(|r| r.strip_suffix(')')) {
                Some(n) => Pi0::Set { size: n.trim().parse().map_err(|_| Error::Parse(format!("bad set size {n:?}")))? },
                None => Pi0::Group { group: v.parse()? },
            },
        };
        let identity = match fields.get("id") {
            Some(v) => v.parse()?,
            None if statistic == Statistic::Fermionic => IdentityComponent::TwoSVec,
            None => IdentityComponent::TwoVec,
        };
        SkeletalCategory::new(pi0, identity, statistic, level)
    }
}

/// How a group acts on the components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Acting {
    /// Subgroup of a grouplike `π₀` acting by translation, given by
    /// generators in invariant-factor coordinates.
    Translations { generators: Vec<Vec<i64>> },
    /// Generators of a group of permutations of the component set.
    Permutations { generators: Vec<Vec<usize>> },
}

impl Acting {
    pub fn trivial() -> Self {
        Acting::Translations { generators: Vec::new() }
    }

    /// Parses a subgroup of `e`: `1`, `all`, `Z/m` (the unique order-`m`
    /// subgroup of a cyclic group), `Z/2 diag`, or `<(1,1),(0,2)>`.
    pub fn parse_subgroup(s: &str, e: &FinAbGroup) -> Result<Self> {
        let t = s.trim();
        let factors = e.invariant_factors();
        let gens = match t {
            "1" | "0" | "trivial" => Vec::new(),
            "all" => (0..factors.len()).map(|i| unit(factors.len(), i)).collect(),
            _ if t.starts_with('<') => {
                let body = t
                    .strip_prefix('<')
                    .and_then(|r| r.strip_suffix('>'))
                    .ok_or_else(|| Error::Parse(format!("unbalanced generator list {t:?}")))?;
                let mut gens = Vec::new();
                for tuple in body.split(')').map(|x| x.trim().trim_start_matches(',').trim()).filter(|x| !x.is_empty()) {
                    let coords = tuple.trim_start_matches('(');
                    let v: Vec<i64> = coords
                        .split(',')
                        .map(|c| c.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate in {t:?}"))))
                        .collect::<Result<_>>()?;
                    e.check_element(&v)?;
                    gens.push(v);
                }
                gens
            }
            _ => {
                let (group, diag) = match t.strip_suffix("diag") {
                    Some(g) => (g.trim(), true),
                    None => (t, false),
                };
                let h: FinAbGroup = group.parse()?;
                if !h.is_cyclic() {
                    return Err(Error::Parse(format!("name a non-cyclic subgroup {t:?} by generators")));
                }
                let m = h.order() as i64;
                if diag {
                    if factors.iter().any(|&d| d as i64 % m != 0) {
                        return Err(Error::NotInGroup(format!("{t} is not a diagonal subgroup of {e}")));
                    }
                    vec![factors.iter().map(|&d| d as i64 / m).collect()]
                } else if e.is_cyclic() && (factors.is_empty() || factors[0] as i64 % m == 0) {
                    if m == 1 { Vec::new() } else { vec![vec![factors[0] as i64 / m]] }
                } else if e.is_cyclic() {
                    return Err(Error::NotInGroup(format!("{h} is not a subgroup of {e}")));
                } else if *e == h {
                    (0..factors.len()).map(|i| unit(factors.len(), i)).collect()
                } else {
                    return Err(Error::Parse(format!("subgroup {t:?} of {e} is ambiguous; give generators")));
                }
            }
        };
        Ok(Acting::Translations { generators: gens })
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| i64::from(k == i)).collect()
}

fn degrade(level: Level, in_symmetric_center: bool) -> Level {
    match level {
        Level::Module | Level::Fusion => Level::Module,
        Level::Braided => Level::Fusion,
        Level::Sylleptic if in_symmetric_center => Level::Sylleptic,
        Level::Sylleptic => Level::Braided,
        Level::Symmetric => Level::Symmetric,
    }
}

/// Condenses the group algebra `Vec[H]`; components become `H`-orbits.
/// `in_symmetric_center` records whether the algebra lies in the symmetric
/// center (keeps a syllepsis).
pub fn condense_group_algebra(cat: &SkeletalCategory, h: &Acting, in_symmetric_center: bool) -> Result<SkeletalCategory> {
    let pi0 = match (h, &cat.pi0) {
        (Acting::Translations { generators }, _) if generators.iter().all(|g| g.iter().all(|&x| x == 0)) => {
            return Ok(cat.clone());
        }
        (Acting::Translations { generators }, Pi0::Group { group }) => {
            for g in generators {
                group.check_element(g)?;
            }
            let q = quotient_by_subgroup_image(&GroupExpr::finite(group.clone()), generators)?;
            Pi0::Group { group: q.require_finite("orbit quotient")?.clone() }
        }
        (Acting::Translations { .. }, Pi0::Set { .. }) => {
            return Err(Error::Precondition("translations need grouplike components".into()));
        }
        (Acting::Permutations { generators }, _) => {
            let n = cat.pi0.count() as usize;
            for g in generators {
                check_permutation(g, n)?;
            }
            Pi0::Set { size: orbit_count(n, generators) }
        }
    };
    Ok(SkeletalCategory { pi0, level: degrade(cat.level, in_symmetric_center), ..cat.clone() })
}

fn check_permutation(g: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if g.len() != n {
        return Err(Error::Precondition(format!("permutation of length {} on {n} components", g.len())));
    }
    for &x in g {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::Precondition(format!("{g:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Number of orbits of the group generated by `generators` (union-find).
pub fn orbit_count(n: usize, generators: &[Vec<usize>]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            y = std::mem::replace(&mut p[y], r);
        }
        r
    }
    for g in generators {
        for (x, &y) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            parent[a] = b;
        }
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Condenses `φ` (functions on `G`, or its super version) in the identity
/// component, leaving a strongly fusion 2-category.
pub fn condense_phi(cat: &SkeletalCategory) -> Result<SkeletalCategory> {
    let identity = match (&cat.identity, cat.statistic) {
        (IdentityComponent::TwoRep { .. }, Statistic::Bosonic) => IdentityComponent::TwoVec,
        (IdentityComponent::TwoRep { .. } | IdentityComponent::TwoRepZ { .. }, Statistic::Fermionic) => {
            IdentityComponent::TwoSVec
        }
        (IdentityComponent::TwoRepZ { .. }, Statistic::Bosonic) => {
            return Err(Error::Precondition("2Rep(G,z) identity requires a fermionic category".into()));
        }
        (other, _) => return Err(Error::Precondition(format!("φ condenses a 2Rep identity component, not {other}"))),
    };
    let pi0 = match &cat.pi0 {
        Pi0::Set { size } => {
            return Err(Error::Precondition(format!("set({size}) has no group structure; give pi0 as a group")));
        }
        g => g.clone(),
    };
    // φ is symmetric and sits in the symmetric center
    Ok(SkeletalCategory { pi0, identity, statistic: cat.statistic, level: degrade(cat.level, true) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    /// The category condenses to the vacuum / has a fibre functor.
    Unobstructed,
    Obstructed,
    /// An obstruction group is reported; which classes occur is not decided.
    ObstructionGroup,
    Unknown,
}

/// Answer to "which strongly fusion 2-categories with these invariants exist
/// and can they be condensed".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    pub group: FinAbGroup,
    pub statistic: Statistic,
    pub level: Level,
    pub status: VerdictStatus,
    pub summary: String,
    /// Computed obstruction group, where one applies.
    pub obstruction_group: Option<String>,
    /// Short tag naming the result this branch reproduces.
    pub anchor: String,
    pub evidence: Vec<String>,
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} E = {}: {}", self.statistic, self.level, self.group, self.summary)?;
        if let Some(g) = &self.obstruction_group {
            writeln!(f, "  obstruction group: {g}")?;
        }
        writeln!(f, "  anchor: {}", self.anchor)?;
        for e in &self.evidence {
            writeln!(f, "  - {e}")?;
        }
        Ok(())
    }
}

fn ahss_verdict(e: &FinAbGroup, n: u32, name: SpectrumName, total: u32, decl: &[Declaration]) -> Result<AhssVerdict> {
    let space = EmSpace::from_group(e, n)?;
    let config = AhssConfig::new(space, SpacePart::Full, spectrum(name), total);
    Ok(run(config, decl, total)?.1.verdict)
}

/// Decides the obstruction question for strongly fusion 2-categories with
/// `π₀ = E`.
pub fn obstruction_verdict(e: &FinAbGroup, statistic: Statistic, level: Level) -> Result<ObstructionVerdict> {
    let mut v = ObstructionVerdict {
        group: e.clone(),
        statistic,
        level,
        status: VerdictStatus::Unknown,
        summary: String::new(),
        obstruction_group: None,
        anchor: String::new(),
        evidence: Vec::new(),
    };
    let d5: Declaration = "5:0,4".parse()?;
    match (level, statistic) {
        (Level::Symmetric, Statistic::Fermionic) => {
            v.status = VerdictStatus::Unobstructed;
            v.summary = format!("equivalent to 2SVec[{e}]; a fibre 2-functor to 2SVec exists");
            v.anchor = "symmetric-fermionic:2SVec[E]".into();
            if e.invariant_factors().len() <= 1 {
                let sh7 = ahss_verdict(e, 4, SpectrumName::SH, 7, &[])?;
                v.evidence.push(format!("SH^7({e}[4]) = {sh7}"));
            }
            let cat = SkeletalCategory::new(
                Pi0::Group { group: e.clone() },
                IdentityComponent::TwoRepZ { group: "G".into(), order: None },
                Statistic::Fermionic,
                Level::Symmetric,
            )?;
            let sf = condense_phi(&cat)?;
            let all = Acting::parse_subgroup("all", e)?;
            let end = condense_group_algebra(&sf, &all, true)?;
            v.evidence.push(format!("condense φ: {sf}"));
            v.evidence.push(format!("condense Vec[E]: {end} ({} component)", end.components()));
        }
        (Level::Symmetric, Statistic::Bosonic) => {
            let expected = dual(&two_torsion(e));
            let row = circle_row(e, 4, 7)?;
            let computed = row.entry(7)?.value.as_group_expr();
            v.status = VerdictStatus::ObstructionGroup;
            v.summary = "obstruction to a fibre 2-functor to 2Vec; the fibre 2-functor to 2SVec is unobstructed".into();
            v.anchor = "symmetric-bosonic:H7(E[4];C*)=dual(E_2)".into();
            v.obstruction_group = Some(expected.to_string());
            match computed {
                Some(g) => {
                    let agrees = g == GroupExpr::finite(expected.clone());
                    v.evidence.push(format!(
                        "H^7({e}[4]; C*) computed as {g}{}",
                        if agrees { ", equal to dual of the 2-torsion" } else { ", differs from dual of the 2-torsion" }
                    ));
                }
                None => v.evidence.push(format!("H^7({e}[4]; C*) not determined by the homology tables")),
            }
        }
        (Level::Braided, Statistic::Fermionic) => {
            let two = e.primary_part(2);
            let odd_factors = e.invariant_factors().iter().filter(|&&d| d % 2 == 1).count();
            v.anchor = "braided-fermionic:SW5(E[2])".into();
            if e.is_trivial() {
                v.status = VerdictStatus::Unobstructed;
                v.summary = "trivial group; nothing to condense".into();
            } else if two.order() == e.order() && e.is_cyclic() {
                let sw5 = ahss_verdict(e, 2, SpectrumName::SW, 5, &[d5])?;
                v.evidence.push(format!("SW^5({e}[2]) = {sw5} (d5 from (0,4) declared zero)"));
                if sw5.is_exact_zero() {
                    v.status = VerdictStatus::Unobstructed;
                    v.summary = "every such 2-category condenses to the vacuum".into();
                    v.obstruction_group = Some("0".into());
                } else {
                    v.summary = format!("SW^5 not determined: {sw5}");
                }
            } else if two.invariant_factors().len() >= 2 {
                v.status = VerdictStatus::Obstructed;
                v.summary = "obstructed classes exist".into();
                let z2 = FinAbGroup::cyclic(2);
                let space = EmSpace::from_group(&z2, 2)?.product(&EmSpace::from_group(&z2, 2)?);
                v.evidence.push("smash summand of Z/2[2] x Z/2[2] in degree 5:".into());
                v.evidence.extend(smash_margolis_evidence(&space, 1, 5)?);
            } else if odd_factors > 0 && two.is_trivial() {
                let row = circle_row(e, 2, 5)?;
                let h5 = row.entry(5)?.value.clone();
                if h5.two_rank() == 0 && h5.as_group_expr().is_some_and(|g| g.is_zero()) {
                    v.status = VerdictStatus::Unobstructed;
                    v.summary = "SW^5(E[2]) = H^5(E[2]; C*) = 0".into();
                } else {
                    v.status = VerdictStatus::ObstructionGroup;
                    v.summary = "SW^5(E[2]) reduces to H^5(E[2]; C*); which classes are nontrivial is left open".into();
                }
                v.obstruction_group = Some(h5.to_string());
                v.evidence.push(format!("H^5({e}[2]; C*) = {h5}"));
                v.anchor = "braided-fermionic:odd-E".into();
            } else {
                v.summary = "not decided by the available computations".into();
            }
        }
        (Level::Braided, Statistic::Bosonic) => {
            let z2f = EmSpace::new(vec![EmFactor { order: 2, degree: 2 }])?;
            let decl = ["3:2,2".parse()?, d5];
            let config = AhssConfig::new(z2f, SpacePart::Full, spectrum(SpectrumName::SWTwisted), 5);
            let w5 = run(config, &decl, 5)?.1.verdict;
            v.summary = format!(
                "W^5({e}[2]) splits as W^5(pt) + reduced SW^5({e}[2]) + reduced SW^5(Z/2^F[2] ^ {e}[2])"
            );
            v.anchor = "braided-bosonic:W5-splitting".into();
            v.evidence.push(format!("W^5(pt) = {w5} (d3 from (2,2) and d5 from (0,4) declared zero)"));
            if e.is_cyclic() && e.primary_part(2).order() == e.order() && !e.is_trivial() {
                let sw5 = ahss_verdict(e, 2, SpectrumName::SW, 5, &[d5])?;
                v.evidence.push(format!("SW^5({e}[2]) = {sw5}"));
            }
            v.obstruction_group = Some(match &w5 {
                AhssVerdict::Exact { group } => format!("{group} + ?"),
                other => other.to_string(),
            });
        }
        (other, _) => {
            return Err(Error::Unsupported(format!("obstruction verdicts cover braided and symmetric levels, not {other}")));
        }
    }
    Ok(v)
}

/// Product splitting of `SH^N(E[n])` for a two-factor `E`.
pub fn split_verdict(e: &FinAbGroup, n: u32, total: u32) -> Result<crate::ahss::ProductSplit> {
    let f = e.invariant_factors();
    if f.len() != 2 {
        return Err(Error::Unsupported(format!("product split needs two invariant factors, got {e}")));
    }
    product_split(&FinAbGroup::cyclic(f[0]), &FinAbGroup::cyclic(f[1]), n, &spectrum(SpectrumName::SH), &[], total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn z4_mod_z2_has_two_components() {
        let cat = SkeletalCategory::strongly_fusion(g("Z/4"), Statistic::Bosonic, Level::Fusion);
        let h = Acting::parse_subgroup("Z/2", &g("Z/4")).unwrap();
        let out = condense_group_algebra(&cat, &h, false).unwrap();
        assert_eq!(out.components(), 2);
        assert_eq!(out.level, Level::Module);
    }

    #[test]
    fn trivial_and_diagonal() {
        let e = g("Z/2 x Z/2");
        let cat = SkeletalCategory::strongly_fusion(e.clone(), Statistic::Bosonic, Level::Braided);
        let same = condense_group_algebra(&cat, &Acting::parse_subgroup("1", &e).unwrap(), false).unwrap();
        assert_eq!(same, cat);
        let diag = condense_group_algebra(&cat, &Acting::parse_subgroup("Z/2 diag", &e).unwrap(), false).unwrap();
        assert_eq!(diag.pi0, Pi0::Group { group: g("Z/2") });
        assert_eq!(diag.level, Level::Fusion);
        let explicit = Acting::parse_subgroup("<(1,1)>", &e).unwrap();
        assert_eq!(explicit, Acting::parse_subgroup("Z/2 diag", &e).unwrap());
    }

    #[test]
    fn full_gauging() {
        let e = g("Z/2 x Z/6");
        let cat = SkeletalCategory::strongly_fusion(e.clone(), Statistic::Bosonic, Level::Symmetric);
        let out = condense_group_algebra(&cat, &Acting::parse_subgroup("all", &e).unwrap(), true).unwrap();
        assert_eq!(out.components(), 1);
    }

    #[test]
    fn descriptor_round_trip() {
        let cat: SkeletalCategory = "braided; pi0=Z/4; id=2Rep(S3); fermionic=no".parse().unwrap();
        assert_eq!(cat.identity, IdentityComponent::TwoRep { group: "S3".into(), order: Some(6) });
        assert_eq!(cat.to_string().parse::<SkeletalCategory>().unwrap(), cat);
        assert!("braided; pi0=set(3); id=2Vec".parse::<SkeletalCategory>().is_err());
        assert!("twisted; pi0=Z/2".parse::<SkeletalCategory>().is_err());
    }

    #[test]
    fn phi_levels() {
        let braided: SkeletalCategory = "braided; pi0=Z/4; id=2Rep(S3)".parse().unwrap();
        let out = condense_phi(&braided).unwrap();
        assert!(out.is_strongly_fusion());
        assert_eq!(out.level, Level::Fusion);
        let syl: SkeletalCategory = "sylleptic; pi0=Z/2; id=2Rep(Z/3)".parse().unwrap();
        assert_eq!(condense_phi(&syl).unwrap().level, Level::Sylleptic);
        let ferm: SkeletalCategory = "braided; pi0=Z/2; id=2Rep(Z/4,z); fermionic=yes".parse().unwrap();
        assert_eq!(condense_phi(&ferm).unwrap().identity, IdentityComponent::TwoSVec);
        assert!(condense_phi(&out).is_err());
    }

    #[test]
    fn verdicts() {
        let v = obstruction_verdict(&g("Z/8"), Statistic::Fermionic, Level::Braided).unwrap();
        assert_eq!(v.status, VerdictStatus::Unobstructed);
        let v = obstruction_verdict(&g("Z/6"), Statistic::Fermionic, Level::Symmetric).unwrap();
        assert!(v.summary.contains("2SVec[Z/6]"));
        let v = obstruction_verdict(&g("Z/2 x Z/2"), Statistic::Bosonic, Level::Symmetric).unwrap();
        assert_eq!(v.obstruction_group.as_deref(), Some("Z/2 x Z/2"));
        let v = obstruction_verdict(&g("Z/2 x Z/2"), Statistic::Fermionic, Level::Braided).unwrap();
        assert_eq!(v.status, VerdictStatus::Obstructed);
        let v = obstruction_verdict(&g("Z/2"), Statistic::Bosonic, Level::Braided).unwrap();
        assert!(v.evidence[0].starts_with("W^5(pt) = Z/2"), "{v}");
        assert!(obstruction_verdict(&g("Z/2"), Statistic::Bosonic, Level::Fusion).is_err());
    }
}
