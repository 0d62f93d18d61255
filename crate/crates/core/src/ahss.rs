//! Atiyah–Hirzebruch spectral sequence `H^i(X; h^j(pt)) ⇒ h^{i+j}(X)` for
//! products of Eilenberg–MacLane spaces, with the `Sq2`-type `d2`
//! differentials computed and higher differentials taken as declarations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::{quotient_by_two_torsion_rank, FinAbGroup, GroupExpr};
use crate::coefficients::{
    circle_row_for, comparison_bounds, comparison_kernel, part_basis, part_vector, reduced_integral_homology, CircleValue, Overrides,
    SpacePart, SpectrumName, SpectrumTable,
};
use crate::em_cohomology::{EmAlgebra, EmSpace, PolyClass, DEFAULT_CAP};
use crate::gf2::{kernel, BitVec, Subspace};
use crate::steenrod::{margolis_homology, A1Module, Margolis};
use crate::{Error, Result};

pub type Bidegree = (u32, u32);

fn show(b: Bidegree) -> String {
    format!("({},{})", b.0, b.1)
}

/// What an AHSS run is computed for.
#[derive(Clone, Debug)]
pub struct AhssConfig {
    pub space: EmSpace,
    pub part: SpacePart,
    pub spectrum: SpectrumTable,
    /// Factor whose fundamental class twists the `d2` (fermion parity).
    pub twist_factor: Option<usize>,
    pub max_total_degree: u32,
    pub overrides: Overrides,
    /// `(E, n)` used to look up overrides for `K(E, n)`.
    pub override_key: Option<(FinAbGroup, u32)>,
}

impl AhssConfig {
    pub fn new(space: EmSpace, part: SpacePart, spectrum: SpectrumTable, max_total_degree: u32) -> Self {
        AhssConfig {
            space,
            part,
            twist_factor: spectrum.twisted.then_some(0),
            spectrum,
            max_total_degree,
            overrides: Overrides::default(),
            override_key: None,
        }
    }
}

#[derive(Clone, Debug)]
enum Entry {
    Zero,
    Mod2 { basis: Vec<PolyClass>, cycles: Subspace, boundaries: Subspace },
    Circle(CircleValue),
    /// Symbolic entries (`SW`, `SW_2`); only declared differentials touch them.
    Opaque(GroupExpr),
    /// A known group no longer carrying class representatives.
    Finite(GroupExpr),
    Unknown(String),
}

impl Entry {
    fn group(&self) -> Option<GroupExpr> {
        match self {
            Entry::Zero => Some(GroupExpr::zero()),
            Entry::Mod2 { cycles, boundaries, .. } => {
                Some(GroupExpr::finite(FinAbGroup::elementary(2, cycles.dim() - boundaries.dim())))
            }
            Entry::Circle(v) => v.as_group_expr(),
            Entry::Opaque(g) | Entry::Finite(g) => Some(g.clone()),
            Entry::Unknown(_) => None,
        }
    }

    fn maybe_nonzero(&self) -> bool {
        self.group().is_none_or(|g| !g.is_zero())
    }

    fn label(&self) -> String {
        match self {
            Entry::Circle(CircleValue::TorsionOnly { two_rank }) => format!("?[2-rank {two_rank}]"),
            Entry::Unknown(_) => "?".into(),
            other => other.group().map(|g| g.to_string()).unwrap_or_else(|| "?".into()),
        }
    }

    /// Elementary abelian 2-rank when the entry is exactly `(Z/2)^m`.
    fn elementary_rank(&self) -> Option<usize> {
        let g = self.group()?;
        let f = g.require_finite("rank").ok()?;
        f.invariant_factors().iter().all(|&d| d == 2).then(|| f.invariant_factors().len())
    }
}

/// One computed or declared differential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffRecord {
    pub page: u32,
    pub source: Bidegree,
    pub target: Bidegree,
    pub rule: String,
    /// `None` when the differential could not be determined.
    pub rank: Option<usize>,
}

/// A spectral sequence page.
#[derive(Clone)]
pub struct Page {
    pub number: u32,
    config: AhssConfig,
    alg: Arc<EmAlgebra>,
    entries: BTreeMap<Bidegree, Entry>,
    /// Entries whose outgoing `d2` lies outside the assembled range.
    partial: BTreeSet<Bidegree>,
    kernels: BTreeMap<u32, Subspace>,
    log: Vec<DiffRecord>,
    declared: BTreeSet<(u32, Bidegree)>,
    provenance: Vec<String>,
}

impl fmt::Debug for Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump().render_text())
    }
}

/// Builds the `E2` page for every bidegree of total degree at most
/// `max_total_degree + 1`.
pub fn assemble_e2(config: AhssConfig) -> Result<Page> {
    let top = config.max_total_degree + 1;
    let cap = DEFAULT_CAP.max(top + 2);
    let alg = Arc::new(EmAlgebra::new(config.space.clone(), cap)?);
    if let Some(t) = config.twist_factor {
        let f = config.space.factors().get(t).ok_or_else(|| Error::Precondition("twist factor missing".into()))?;
        if f.order != 2 || f.degree != 2 {
            return Err(Error::Precondition(format!(
                "the fermion-parity twist needs a Z/2[2] factor, got Z/{}[{}]",
                f.order, f.degree
            )));
        }
    }
    let circle = circle_row_for(&config.space, config.part, top, &alg)?;
    let homology = reduced_integral_homology(&config.space, config.part, top)?;
    let mut provenance: Vec<String> = Vec::new();
    provenance.push(format!("spectrum {}: built-in point values", config.spectrum.name));
    let mut entries = BTreeMap::new();
    for j in 0..=top {
        let coeff = match config.spectrum.entry(j) {
            Ok(g) => Some(g.clone()),
            // supercohomology has exactly three layers
            Err(_) if config.spectrum.name == SpectrumName::SH => Some(GroupExpr::zero()),
            Err(_) => None,
        };
        for i in 0..=(top - j) {
            let entry = match &coeff {
                None => Entry::Unknown(format!("{}^{j}(pt) not tabulated", config.spectrum.name)),
                Some(g) if g.is_zero() => Entry::Zero,
                Some(g) if g.is_z2() => {
                    let basis = part_basis(&alg, config.part, i)?;
                    if basis.is_empty() {
                        Entry::Zero
                    } else {
                        let n = basis.len();
                        Entry::Mod2 { basis, cycles: Subspace::full(n), boundaries: Subspace::zero(n) }
                    }
                }
                Some(g) if g.is_circle() => {
                    let mut value = circle.entry(i)?.value.clone();
                    if let (Some((e, n)), SpacePart::Full) = (&config.override_key, config.part) {
                        if let Some(v) = config.overrides.circle_entry(e, *n, i) {
                            provenance.push(format!("override: H^{i}(K({e},{n}); C*) = {v}"));
                            value = if v.is_circle() {
                                CircleValue::Circle
                            } else {
                                CircleValue::Known { group: v.require_finite("circle override")?.clone() }
                            };
                        }
                    }
                    match value {
                        CircleValue::Known { group } if group.is_trivial() => Entry::Zero,
                        v => Entry::Circle(v),
                    }
                }
                Some(g) if g.has_opaque() && g.finite.is_trivial() && g.circle_rank == 0 => {
                    opaque_entry(g, i, &config, &homology)?
                }
                Some(g) => Entry::Unknown(format!("no cohomology rule for coefficients {g}")),
            };
            entries.insert((i, j), entry);
        }
    }
    let partial = entries.keys().filter(|(i, j)| i + j == top).copied().collect();
    Ok(Page {
        number: 2,
        config,
        alg,
        entries,
        partial,
        kernels: BTreeMap::new(),
        log: Vec::new(),
        declared: BTreeSet::new(),
        provenance,
    })
}

/// `H^i(X; SW)`: computable only where the universal coefficient sequence
/// reduces to `SW` itself, its 2-torsion, or zero.
fn opaque_entry(g: &GroupExpr, i: u32, config: &AhssConfig, homology: &[Option<FinAbGroup>]) -> Result<Entry> {
    if i == 0 {
        return Ok(if config.part == SpacePart::Full { Entry::Opaque(g.clone()) } else { Entry::Zero });
    }
    let h = |d: u32| homology.get(d as usize).cloned().flatten();
    let here = h(i);
    let below = if i == 1 { Some(FinAbGroup::trivial()) } else { h(i - 1) };
    match (here, below) {
        (Some(a), Some(b)) if a.is_trivial() && b.is_trivial() => Ok(Entry::Zero),
        (Some(a), Some(b)) if b.is_trivial() && a.invariant_factors().iter().all(|&d| d == 2) => {
            // hom((Z/2)^r, G) = G_2^r
            let g2 = g.hom_to_z2()?;
            let sum = (0..a.invariant_factors().len()).fold(GroupExpr::zero(), |acc, _| acc.direct_sum(&g2));
            Ok(Entry::Opaque(sum))
        }
        _ => Ok(Entry::Unknown(format!("H^{i}(X; {g}) needs Ext into an opaque group"))),
    }
}

impl Page {
    pub fn algebra(&self) -> &EmAlgebra {
        &self.alg
    }

    pub fn config(&self) -> &AhssConfig {
        &self.config
    }

    pub fn log(&self) -> &[DiffRecord] {
        &self.log
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn max_total_degree(&self) -> u32 {
        self.config.max_total_degree
    }

    /// Group at a bidegree; `None` if undetermined or outside the range.
    pub fn group(&self, at: Bidegree) -> Option<GroupExpr> {
        self.entries.get(&at).and_then(Entry::group)
    }

    pub fn label(&self, at: Bidegree) -> String {
        self.entries.get(&at).map(Entry::label).unwrap_or_else(|| "-".into())
    }

    /// Elementary 2-rank of a mod-2 entry, for monotonicity checks.
    pub fn dimension(&self, at: Bidegree) -> Option<usize> {
        match self.entries.get(&at)? {
            Entry::Zero => Some(0),
            e => e.elementary_rank(),
        }
    }

    /// Representatives of a mod-2 entry: cycles modulo boundaries.
    pub fn representatives(&self, at: Bidegree) -> Vec<String> {
        match self.entries.get(&at) {
            Some(Entry::Mod2 { basis, cycles, boundaries }) => boundaries
                .complement_in(cycles)
                .iter()
                .map(|v| {
                    let mut x = PolyClass::zero(at.0);
                    for i in v.ones() {
                        x.add(&basis[i]).expect("basis is homogeneous");
                    }
                    self.alg.format_class(&x)
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    fn kernel_at(&mut self, d: u32) -> Result<Subspace> {
        if let Some(k) = self.kernels.get(&d) {
            return Ok(k.clone());
        }
        let part = self.config.part;
        let declared = match (&self.config.override_key, part) {
            (Some((e, n)), SpacePart::Full) => self.config.overrides.kernel(e, *n, d).map(<[String]>::to_vec),
            _ => None,
        };
        let k = match declared {
            Some(classes) => {
                let n = part_basis(&self.alg, part, d)?.len();
                let mut k = Subspace::zero(n);
                for c in &classes {
                    k.insert(part_vector(&self.alg, part, d, &self.alg.parse_class(c)?)?);
                }
                let bounds = comparison_bounds(&self.alg, part, d)?;
                if !bounds.admits(&k) {
                    return Err(Error::InvalidDeclaration(format!(
                        "declared kernel in degree {d} must have dimension {}, contain im Sq1 and lie in ker Sq1",
                        bounds.dim
                    )));
                }
                self.provenance.push(format!("override: comparison kernel in degree {d} spanned by {classes:?}"));
                k
            }
            None => comparison_kernel(&self.alg, part, d)?,
        };
        self.kernels.insert(d, k.clone());
        Ok(k)
    }

    /// `Sq2 x`, plus `t x` when twisted.
    fn d2_formula(&self, x: &PolyClass) -> Result<PolyClass> {
        let mut y = self.alg.sq(2, x)?;
        if let Some(t) = self.config.twist_factor {
            let iota = self.alg.fundamental_class(t).expect("twist factor is Z/2[2]");
            y.add(&iota.mul(x))?;
        }
        Ok(y)
    }

    fn twisted(&self) -> bool {
        self.config.twist_factor.is_some()
    }
}

/// Turns `E2` into `E3`.
pub fn apply_d2(page: &Page) -> Result<Page> {
    if page.number != 2 {
        return Err(Error::Precondition(format!("d2 applies to the E2 page, not E{}", page.number)));
    }
    let mut next = page.clone();
    next.number = 3;
    let keys: Vec<Bidegree> = page.entries.keys().copied().collect();
    let mut cycles: BTreeMap<Bidegree, Subspace> = BTreeMap::new();
    let mut boundaries: BTreeMap<Bidegree, Subspace> = BTreeMap::new();
    let mut circle_ranks: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut undetermined: BTreeSet<Bidegree> = BTreeSet::new();
    // images of each source basis element, kept for the d2∘d2 check
    let mut maps: BTreeMap<Bidegree, Vec<PolyClass>> = BTreeMap::new();

    for &(i, j) in &keys {
        if j == 0 || page.partial.contains(&(i, j)) {
            continue;
        }
        let target = (i + 2, j - 1);
        let (Some(src), Some(tgt)) = (page.entries.get(&(i, j)), page.entries.get(&target)) else {
            continue;
        };
        if !src.maybe_nonzero() || !tgt.maybe_nonzero() {
            continue;
        }
        let rule_name = |kind: &str| if page.twisted() { format!("{kind}_twisted") } else { kind.to_string() };
        match (src, tgt) {
            (Entry::Mod2 { basis, .. }, Entry::Mod2 { .. }) => {
                let images: Vec<PolyClass> = basis.iter().map(|x| page.d2_formula(x)).collect::<Result<_>>()?;
                let vecs: Vec<BitVec> = images
                    .iter()
                    .map(|y| part_vector(&page.alg, page.config.part, i + 2, y))
                    .collect::<Result<_>>()?;
                let n_t = part_basis(&page.alg, page.config.part, i + 2)?.len();
                let im = Subspace::span(n_t, vecs.iter().cloned());
                next.log.push(DiffRecord { page: 2, source: (i, j), target, rule: rule_name("sq2"), rank: Some(im.dim()) });
                cycles.insert((i, j), kernel(&vecs));
                boundaries.insert(target, im);
                maps.insert((i, j), images);
            }
            (Entry::Mod2 { basis, .. }, Entry::Circle(value)) if j == 1 => {
                let k = next.kernel_at(i + 2)?;
                let images: Vec<PolyClass> = basis.iter().map(|x| page.d2_formula(x)).collect::<Result<_>>()?;
                let reduced: Vec<BitVec> = images
                    .iter()
                    .map(|y| Ok(k.reduce(&part_vector(&page.alg, page.config.part, i + 2, y)?)))
                    .collect::<Result<_>>()?;
                let rank = crate::gf2::rank(&reduced);
                if rank > value.two_rank() {
                    return Err(Error::DataConsistency(format!(
                        "d2 into {} has rank {rank} above the 2-rank {}",
                        show(target),
                        value.two_rank()
                    )));
                }
                next.log.push(DiffRecord { page: 2, source: (i, j), target, rule: rule_name("exp_sq2"), rank: Some(rank) });
                cycles.insert((i, j), kernel(&reduced));
                circle_ranks.insert(target, rank);
                maps.insert((i, j), images);
            }
            _ => {
                next.log.push(DiffRecord { page: 2, source: (i, j), target, rule: "undetermined".into(), rank: None });
                undetermined.insert((i, j));
                undetermined.insert(target);
            }
        }
    }

    // d2∘d2 = 0: a row-2 class goes through row 1 into the kernel of (−1)^X
    for (&(i, j), images) in &maps {
        if j != 2 {
            continue;
        }
        let Some(second) = next.log.iter().find(|r| r.source == (i + 2, 1) && r.rule.starts_with("exp")).cloned() else {
            continue;
        };
        let k = next.kernel_at(second.target.0)?;
        for y in images {
            let z = page.d2_formula(y)?;
            let v = part_vector(&page.alg, page.config.part, i + 4, &z)?;
            if !k.contains(&v) {
                return Err(Error::DataConsistency(format!("d2∘d2 ≠ 0 starting at {}", show((i, j)))));
            }
        }
    }

    for (at, e) in next.entries.iter_mut() {
        match e {
            Entry::Mod2 { cycles: c, boundaries: b, .. } => {
                if let Some(z) = cycles.get(at) {
                    *c = z.clone();
                }
                if let Some(im) = boundaries.get(at) {
                    *b = im.clone();
                }
                if !b.is_subspace_of(c) {
                    return Err(Error::DataConsistency(format!("d2∘d2 ≠ 0 at {}", show(*at))));
                }
            }
            Entry::Circle(value) => {
                let r = circle_ranks.get(at).copied().unwrap_or(0);
                if r > 0 {
                    *e = circle_quotient(value, r, *at);
                }
            }
            _ => {}
        }
    }
    for at in undetermined {
        if let Some(e) = next.entries.get_mut(&at) {
            if !matches!(e, Entry::Unknown(_)) {
                let was = e.label();
                *e = Entry::Unknown(format!("{was} touched by an undetermined d2"));
            }
        }
    }
    Ok(next)
}

fn circle_quotient(value: &CircleValue, rank: usize, at: Bidegree) -> Entry {
    match value {
        CircleValue::Known { group } => match quotient_by_two_torsion_rank(group, rank) {
            Some(q) if q.is_trivial() => Entry::Zero,
            Some(q) => Entry::Finite(GroupExpr::finite(q)),
            None => Entry::Unknown(format!("{group} modulo a rank-{rank} subgroup of its 2-torsion at {}", show(at))),
        },
        other => Entry::Unknown(format!("{other} modulo a rank-{rank} subgroup at {}", show(at))),
    }
}

/// Applies a declared `d_r` (`r >= 3`) of the given rank.
pub fn declare_higher_differential(page: &Page, r: u32, source: Bidegree, rank: usize) -> Result<Page> {
    if r < 3 {
        return Err(Error::InvalidDeclaration(format!("d{r}: only r >= 3 can be declared")));
    }
    if page.number < 3 {
        return Err(Error::Precondition("apply d2 before declaring higher differentials".into()));
    }
    let (i, j) = source;
    if i + j > page.max_total_degree() {
        return Err(Error::InvalidDeclaration(format!("source {} lies outside the assembled range", show(source))));
    }
    let mut next = page.clone();
    let Some(target_row) = (j + 1).checked_sub(r) else {
        return Err(Error::InvalidDeclaration(format!("d{r} from {} leaves the first quadrant", show(source))));
    };
    let target = (i + r, target_row);
    let src = page.entries.get(&source).cloned().unwrap_or(Entry::Zero);
    let tgt = page.entries.get(&target).cloned().unwrap_or(Entry::Zero);
    next.declared.insert((r, source));
    next.log.push(DiffRecord { page: r, source, target, rule: "declared".into(), rank: Some(rank) });
    next.provenance.push(format!("declared: d{r} from {} has rank {rank}", show(source)));
    if rank == 0 || !src.maybe_nonzero() && rank == 0 {
        return Ok(next);
    }
    let src_rank = src
        .elementary_rank()
        .ok_or_else(|| Error::InvalidDeclaration(format!("entry {} admits only a zero differential", src.label())))?;
    if rank > src_rank {
        return Err(Error::InvalidDeclaration(format!("rank {rank} exceeds the source {}", src.label())));
    }
    let new_tgt = match &tgt {
        Entry::Circle(v) if rank <= v.two_rank() => circle_quotient(v, rank, target),
        Entry::Finite(g) if g.is_finite() && rank <= g.finite.two_rank() => {
            match quotient_by_two_torsion_rank(&g.finite, rank) {
                Some(q) => Entry::Finite(GroupExpr::finite(q)),
                None => Entry::Unknown(format!("{g} modulo a rank-{rank} subgroup")),
            }
        }
        t => match t.elementary_rank() {
            Some(m) if m >= rank => Entry::Finite(GroupExpr::finite(FinAbGroup::elementary(2, m - rank))),
            _ => {
                return Err(Error::InvalidDeclaration(format!("rank {rank} exceeds the target {}", t.label())));
            }
        },
    };
    next.entries.insert(source, Entry::Finite(GroupExpr::finite(FinAbGroup::elementary(2, src_rank - rank))));
    next.entries.insert(target, new_tgt);
    Ok(next)
}

/// Outcome in one total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Exact { group: String },
    /// Several nonzero layers; the extension problem is left open.
    AssociatedGraded { layers: Vec<String> },
    Inconclusive { blockers: Vec<String> },
}

impl Verdict {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Verdict::Exact { group } if group == "0")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Exact { group } => write!(f, "{group}"),
            Verdict::AssociatedGraded { layers } => write!(f, "associated graded [{}]", layers.join(", ")),
            Verdict::Inconclusive { blockers } => write!(f, "inconclusive: {}", blockers.join("; ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerReport {
    pub bidegree: Bidegree,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub total_degree: u32,
    pub page: u32,
    pub layers: Vec<LayerReport>,
    pub verdict: Verdict,
}

impl DegreeReport {
    pub fn into_result(self) -> Result<Self> {
        match &self.verdict {
            Verdict::Inconclusive { blockers } => Err(Error::Inconclusive(blockers.join("; "))),
            _ => Ok(self),
        }
    }
}

/// Collects the surviving layers in total degree `n` and decides whether
/// they determine `h^n` exactly.
pub fn total_degree_report(page: &Page, n: u32) -> Result<DegreeReport> {
    if n > page.max_total_degree() {
        return Err(Error::Unsupported(format!("total degree {n} above the assembled range")));
    }
    if page.number < 3 {
        return Err(Error::Precondition("apply d2 before reporting".into()));
    }
    let mut layers = Vec::new();
    let mut blockers = Vec::new();
    let mut nonzero = Vec::new();
    for j in 0..=n {
        let at = (n - j, j);
        let e = page.entries.get(&at).cloned().unwrap_or(Entry::Zero);
        layers.push(LayerReport { bidegree: at, group: e.label() });
        match (&e, e.group()) {
            (Entry::Unknown(why), _) => blockers.push(format!("{} undetermined: {why}", show(at))),
            (_, None) => blockers.push(format!("{} is {} (group not tabulated)", show(at), e.label())),
            (_, Some(g)) if !g.is_zero() => nonzero.push((at, g)),
            _ => {}
        }
    }
    // higher differentials out of degree n and into it
    for (at, e) in &page.entries {
        let total = at.0 + at.1;
        if !(total + 1 == n || total == n) || !e.maybe_nonzero() {
            continue;
        }
        for r in 3..=at.1 + 1 {
            let target = (at.0 + r, at.1 + 1 - r);
            if page.declared.contains(&(r, *at)) {
                continue;
            }
            let hit = page.entries.get(&target).is_some_and(Entry::maybe_nonzero);
            if hit {
                blockers.push(format!("d{r}: {} → {} not determined", show(*at), show(target)));
            }
        }
    }
    let verdict = if !blockers.is_empty() {
        Verdict::Inconclusive { blockers }
    } else {
        match nonzero.len() {
            0 => Verdict::Exact { group: "0".into() },
            1 => Verdict::Exact { group: nonzero[0].1.to_string() },
            _ => Verdict::AssociatedGraded {
                layers: nonzero.iter().map(|(at, g)| format!("{}: {g}", show(*at))).collect(),
            },
        }
    };
    Ok(DegreeReport { total_degree: n, page: page.number, layers, verdict })
}

/// A higher differential declaration `d_r` from `source` with `rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Declaration {
    pub r: u32,
    pub source: Bidegree,
    pub rank: usize,
}

impl std::str::FromStr for Declaration {
    type Err = Error;

    /// Parses `"r:i,j"` (rank zero) or `"r:i,j=rank"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected r:i,j[=rank], got {s:?}"));
        let (r, rest) = s.split_once(':').ok_or_else(bad)?;
        let (pos, rank) = match rest.split_once('=') {
            Some((p, k)) => (p, k.trim().parse().map_err(|_| bad())?),
            None => (rest, 0),
        };
        let (i, j) = pos.split_once(',').ok_or_else(bad)?;
        Ok(Declaration {
            r: r.trim().trim_start_matches('d').parse().map_err(|_| bad())?,
            source: (i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?),
            rank,
        })
    }
}

/// Full pipeline: assemble, `d2`, declarations, report.
pub fn run(config: AhssConfig, declarations: &[Declaration], n: u32) -> Result<(Vec<Page>, DegreeReport)> {
    let e2 = assemble_e2(config)?;
    let mut page = apply_d2(&e2)?;
    for d in declarations {
        if d.source.0 + d.source.1 <= page.max_total_degree() {
            page = declare_higher_differential(&page, d.r, d.source, d.rank)?;
        }
    }
    let report = total_degree_report(&page, n)?;
    Ok((vec![e2, page], report))
}

/// Machine-readable page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageDump {
    pub page: u32,
    pub space: String,
    pub part: String,
    pub spectrum: String,
    pub twisted: bool,
    /// `"i,j"` → entry.
    pub entries: BTreeMap<String, EntryDump>,
    pub differentials: Vec<DiffRecord>,
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDump {
    pub group: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Page {
    pub fn dump(&self) -> PageDump {
        let entries = self
            .entries
            .iter()
            .map(|(&(i, j), e)| {
                let note = match e {
                    Entry::Unknown(why) => Some(why.clone()),
                    _ if self.partial.contains(&(i, j)) && self.number > 2 => {
                        Some("outgoing d2 not computed".into())
                    }
                    _ => None,
                };
                (format!("{i},{j}"), EntryDump { group: e.label(), basis: self.representatives((i, j)), note })
            })
            .collect();
        PageDump {
            page: self.number,
            space: self.config.space.to_string(),
            part: self.config.part.to_string(),
            spectrum: self.config.spectrum.name.to_string(),
            twisted: self.twisted(),
            entries,
            differentials: self.log.clone(),
            provenance: self.provenance.clone(),
        }
    }
}

impl PageDump {
    /// Aligned grid with rows `j` descending and columns `i` ascending.
    pub fn render_text(&self) -> String {
        let mut cells: BTreeMap<(u32, u32), &str> = BTreeMap::new();
        for (k, e) in &self.entries {
            if let Some((i, j)) = k.split_once(',').and_then(|(i, j)| Some((i.parse().ok()?, j.parse().ok()?))) {
                cells.insert((i, j), e.group.as_str());
            }
        }
        let max_i = cells.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = cells.keys().map(|k| k.1).max().unwrap_or(0);
        let width = cells.values().map(|s| s.chars().count()).max().unwrap_or(1).max(3);
        let mut out = format!(
            "E{} page: {} [{}], spectrum {}{}\n",
            self.page,
            self.space,
            self.part,
            self.spectrum,
            if self.twisted { " (twisted)" } else { "" }
        );
        for j in (0..=max_j).rev() {
            out.push_str(&format!("{j:>3} |"));
            for i in 0..=max_i {
                let c = cells.get(&(i, j)).copied().unwrap_or("");
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("    +{}\n", "-".repeat((width + 1) * (max_i as usize + 1))));
        out.push_str("     ");
        for i in 0..=max_i {
            out.push_str(&format!(" {i:>width$}"));
        }
        out.push('\n');
        for d in &self.differentials {
            let rank = d.rank.map_or("?".to_string(), |r| r.to_string());
            out.push_str(&format!(
                "d{} ({},{}) -> ({},{}) {} rank {rank}\n",
                d.page, d.source.0, d.source.1, d.target.0, d.target.1, d.rule
            ));
        }
        out
    }
}

/// Status of one summand of `h(X × Y) = h(pt) ⊕ h~(X) ⊕ h~(Y) ⊕ h~(X ∧ Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandReport {
    pub summand: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSplit {
    pub total_degree: u32,
    pub summands: Vec<SummandReport>,
    pub combined: Verdict,
}

/// Splits `K(A ⊕ B, n)` as `K(A, n) × K(B, n)` and runs each summand.
pub fn product_split(
    left: &FinAbGroup,
    right: &FinAbGroup,
    n: u32,
    spectrum: &SpectrumTable,
    declarations: &[Declaration],
    total: u32,
) -> Result<ProductSplit> {
    if spectrum.twisted {
        return Err(Error::Unsupported("product splitting of a twisted run".into()));
    }
    let x = EmSpace::from_group(left, n)?;
    let y = EmSpace::from_group(right, n)?;
    let xy = x.product(&y);
    let runs: [(String, EmSpace, SpacePart); 4] = [
        ("pt".into(), EmSpace::point(), SpacePart::Full),
        (format!("reduced {x}"), x.clone(), SpacePart::Reduced),
        (format!("reduced {y}"), y.clone(), SpacePart::Reduced),
        (format!("smash {x} ^ {y}"), xy.clone(), SpacePart::Smash { left: x.factors().len() }),
    ];
    let mut summands = Vec::new();
    for (name, space, part) in runs {
        let config = AhssConfig::new(space, part, spectrum.clone(), total);
        let (_, report) = run(config, declarations, total)?;
        let evidence = match part {
            SpacePart::Smash { left } => smash_margolis_evidence(&xy, left, total)?,
            _ => Vec::new(),
        };
        summands.push(SummandReport { summand: name, verdict: report.verdict, evidence });
    }
    let combined = combine(&summands);
    Ok(ProductSplit { total_degree: total, summands, combined })
}

fn combine(summands: &[SummandReport]) -> Verdict {
    let mut acc = GroupExpr::zero();
    let mut graded = Vec::new();
    let mut blockers = Vec::new();
    for s in summands {
        match &s.verdict {
            Verdict::Exact { group } => match group.parse::<GroupExpr>() {
                Ok(g) => acc = acc.direct_sum(&g),
                Err(_) => blockers.push(format!("{}: unparsable {group}", s.summand)),
            },
            Verdict::AssociatedGraded { layers } => graded.push(format!("{}: {}", s.summand, layers.join(", "))),
            Verdict::Inconclusive { blockers: b } => blockers.extend(b.iter().map(|x| format!("{}: {x}", s.summand))),
        }
    }
    if !blockers.is_empty() {
        Verdict::Inconclusive { blockers }
    } else if !graded.is_empty() {
        if !acc.is_zero() {
            graded.push(acc.to_string());
        }
        Verdict::AssociatedGraded { layers: graded }
    } else {
        Verdict::Exact { group: acc.to_string() }
    }
}

/// For each smash basis class in `degree`, the A(1)-submodule it generates
/// and whether its `Q0`, `Q1` Margolis homology vanishes where computed.
pub fn smash_margolis_evidence(space: &EmSpace, left: usize, degree: u32) -> Result<Vec<String>> {
    let alg = EmAlgebra::new(space.clone(), DEFAULT_CAP)?;
    let mut out = Vec::new();
    for m in alg.smash_basis(left, degree)? {
        let module = smash_submodule(&alg, &m)?;
        let q0 = margolis_homology(&module, Margolis::Q0)?;
        let q1 = margolis_homology(&module, Margolis::Q1)?;
        out.push(format!(
            "{}: A(1)-submodule of dim {}, Q0 homology {}, Q1 homology {} through degree {}",
            alg.monomial_name(&m),
            module.dim(),
            if q0.vanishes() { "zero" } else { "nonzero" },
            if q1.vanishes() { "zero" } else { "nonzero" },
            q1.dims.last().map_or(0, |d| d.0),
        ));
    }
    Ok(out)
}

/// The A(1)-submodule generated by one monomial.
pub fn smash_submodule(alg: &EmAlgebra, seed: &crate::em_cohomology::Monomial) -> Result<A1Module> {
    let act = |a: u32| {
        move |m: &crate::em_cohomology::Monomial| -> Result<BTreeSet<crate::em_cohomology::Monomial>> {
            let x = PolyClass { degree: alg.monomial_degree(m), terms: BTreeSet::from([m.clone()]) };
            Ok(alg.sq(a, &x)?.terms)
        }
    };
    A1Module::generated_by(
        &[BTreeSet::from([seed.clone()])],
        |m| alg.monomial_degree(m) as i32,
        |m| alg.monomial_name(m),
        act(1),
        act(2),
        alg.cap() as i32,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::spectrum;
    use crate::em_cohomology::EmFactor;

    fn em(factors: &[(u64, u32)]) -> EmSpace {
        EmSpace::new(factors.iter().map(|&(order, degree)| EmFactor { order, degree }).collect()).unwrap()
    }

    fn e3(space: EmSpace, name: SpectrumName, t: u32) -> Page {
        let page = assemble_e2(AhssConfig::new(space, SpacePart::Full, spectrum(name), t)).unwrap();
        apply_d2(&page).unwrap()
    }

    #[test]
    fn e2_entries() {
        let page = assemble_e2(AhssConfig::new(em(&[(2, 2)]), SpacePart::Full, spectrum(SpectrumName::SW), 5)).unwrap();
        assert_eq!(page.label((4, 1)), "Z/2");
        assert_eq!(page.representatives((4, 1)), ["i2^2"]);
        assert_eq!(page.label((0, 4)), "SW");
        assert_eq!(page.label((4, 0)), "Z/4");
        let odd = assemble_e2(AhssConfig::new(em(&[(3, 2)]), SpacePart::Full, spectrum(SpectrumName::SH), 5)).unwrap();
        for i in 1..=4 {
            assert_eq!(odd.label((i, 1)), "0");
            assert_eq!(odd.label((i, 2)), "0");
        }
    }

    #[test]
    fn untwisted_d2_on_iota() {
        let page = e3(em(&[(2, 2)]), SpectrumName::SW, 5);
        let rec = page.log().iter().find(|r| r.source == (2, 1)).unwrap();
        assert_eq!(rec.rank, Some(1));
    }

    #[test]
    fn twisted_d2_cancels() {
        let page = e3(em(&[(2, 2)]), SpectrumName::SWTwisted, 5);
        let rec = page.log().iter().find(|r| r.source == (2, 1)).unwrap();
        assert_eq!(rec.rank, Some(0));
        let rec = page.log().iter().find(|r| r.source == (0, 2)).unwrap();
        assert_eq!(rec.rank, Some(1));
    }

    #[test]
    fn degree_zero_is_circle() {
        let page = e3(em(&[(2, 2)]), SpectrumName::SW, 5);
        assert_eq!(total_degree_report(&page, 0).unwrap().verdict, Verdict::Exact { group: "C*".into() });
    }

    #[test]
    fn declarations() {
        let page = e3(em(&[(2, 2)]), SpectrumName::SW, 5);
        let same = declare_higher_differential(&page, 5, (0, 4), 0).unwrap();
        assert_eq!(same.label((0, 4)), "SW");
        assert!(matches!(declare_higher_differential(&page, 5, (0, 4), 1), Err(Error::InvalidDeclaration(_))));
        assert!(matches!(declare_higher_differential(&page, 2, (0, 4), 0), Err(Error::InvalidDeclaration(_))));
        let noop = declare_higher_differential(&page, 3, (1, 2), 0).unwrap();
        assert_eq!(noop.label((1, 2)), "0");
        assert!(declare_higher_differential(&page, 3, (1, 1), 0).is_err());
        assert_eq!("5:0,4".parse::<Declaration>().unwrap(), Declaration { r: 5, source: (0, 4), rank: 0 });
        assert!("5:0".parse::<Declaration>().is_err());
    }

    #[test]
    fn declared_iso_kills_both() {
        let space = em(&[(2, 2)]);
        let page = e3(space, SpectrumName::SWTwisted, 5);
        // (2,2) and (5,0) are both Z/2 on the twisted E3 page
        assert_eq!(page.label((2, 2)), "Z/2");
        assert_eq!(page.label((5, 0)), "Z/2");
        let after = declare_higher_differential(&page, 3, (2, 2), 1).unwrap();
        assert_eq!(after.label((2, 2)), "0");
        assert_eq!(after.label((5, 0)), "0");
    }

    #[test]
    fn json_round_trip_renders_identically() {
        let page = e3(em(&[(2, 2)]), SpectrumName::SW, 5);
        let dump = page.dump();
        let text = serde_json::to_string(&dump).unwrap();
        let back: PageDump = serde_json::from_str(&text).unwrap();
        assert_eq!(back.render_text(), dump.render_text());
    }

    fn report(space: EmSpace, name: SpectrumName, n: u32, decl: &[&str]) -> Verdict {
        let decl: Vec<Declaration> = decl.iter().map(|d| d.parse().unwrap()).collect();
        let config = AhssConfig::new(space, SpacePart::Full, spectrum(name), n);
        run(config, &decl, n).unwrap().1.verdict
    }

    #[test]
    fn untwisted_degree_five_vanishes() {
        for k in 1..=3u32 {
            let v = report(em(&[(1 << k, 2)]), SpectrumName::SW, 5, &[]);
            assert!(v.is_exact_zero(), "Z/{} gave {v}", 1 << k);
        }
    }

    #[test]
    fn twisted_degree_five() {
        let space = em(&[(2, 2)]);
        let v = report(space.clone(), SpectrumName::SWTwisted, 5, &["5:0,4"]);
        assert!(matches!(v, Verdict::Inconclusive { .. }), "{v}");
        let v = report(space.clone(), SpectrumName::SWTwisted, 5, &["3:2,2", "5:0,4"]);
        assert_eq!(v, Verdict::Exact { group: "Z/2".into() });
        let page = e3(space, SpectrumName::SWTwisted, 5);
        assert_eq!(page.label((4, 0)), "Z/4");
    }

    #[test]
    fn sh_degree_seven_on_level_four() {
        for k in 1..=3u32 {
            let v = report(em(&[(1 << k, 4)]), SpectrumName::SH, 7, &[]);
            assert!(v.is_exact_zero(), "Z/{} gave {v}", 1 << k);
        }
    }

    #[test]
    fn product_split_smash_terms() {
        let z2 = FinAbGroup::cyclic(2);
        let split = product_split(&z2, &z2, 2, &spectrum(SpectrumName::SH), &[], 5).unwrap();
        let smash = &split.summands[3];
        assert_eq!(smash.verdict, Verdict::Exact { group: "Z/2".into() }, "{split:?}");
        assert!(!smash.evidence.is_empty());
        let z3 = FinAbGroup::cyclic(3);
        let split = product_split(&z3, &z3, 2, &spectrum(SpectrumName::SH), &[], 5).unwrap();
        assert_eq!(split.summands[3].verdict, Verdict::Exact { group: "Z/3".into() }, "{split:?}");
    }
}
