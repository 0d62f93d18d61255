//! Coefficient spectra at a point, circle-coefficient cohomology rows of
//! Eilenberg–MacLane spaces, and the comparison map `X ↦ (−1)^X` from mod-2
//! classes into those rows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{
    dual, ext_group, quad_group, tensor_group, tor_group, two_torsion, whitehead_gamma, FinAbGroup, GroupExpr,
    OpaqueSymbol, QuadTarget,
};
use crate::em_cohomology::{EmAlgebra, EmSpace, PolyClass};
use crate::gf2::{BitVec, Subspace};
use crate::{Error, Result};

/// Highest cohomological degree with circle-row data.
pub const MAX_CIRCLE_DEGREE: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectrumName {
    SH,
    SW,
    Spin,
    /// `SW` with the fermion-parity twist applied to the differentials.
    SWTwisted,
}

impl fmt::Display for SpectrumName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpectrumName::SH => "SH",
            SpectrumName::SW => "SW",
            SpectrumName::Spin => "Spin",
            SpectrumName::SWTwisted => "SW_twisted",
        };
        write!(f, "{s}")
    }
}

impl FromStr for SpectrumName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sh" => Ok(SpectrumName::SH),
            "sw" => Ok(SpectrumName::SW),
            "spin" => Ok(SpectrumName::Spin),
            "sw_twisted" | "sw-twisted" | "w" => Ok(SpectrumName::SWTwisted),
            _ => Err(Error::UnknownName(format!("spectrum {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub degree: u32,
    pub group: GroupExpr,
    pub provenance: String,
}

/// `h^j(pt)` for small `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub name: SpectrumName,
    pub twisted: bool,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn entry(&self, j: u32) -> Result<&GroupExpr> {
        self.entries
            .get(j as usize)
            .map(|e| &e.group)
            .ok_or_else(|| Error::Unsupported(format!("{}^{j}(pt) is not tabulated", self.name)))
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.len() as u32 - 1
    }

    pub fn set(&mut self, j: u32, group: GroupExpr, provenance: String) -> Result<()> {
        let e = self
            .entries
            .get_mut(j as usize)
            .ok_or_else(|| Error::Unsupported(format!("{}^{j}(pt) is not tabulated", self.name)))?;
        e.group = group;
        e.provenance = provenance;
        Ok(())
    }
}

/// Built-in coefficient table.
pub fn spectrum(name: SpectrumName) -> SpectrumTable {
    let c = GroupExpr::circle;
    let z2 = || GroupExpr::finite(FinAbGroup::cyclic(2));
    let z = GroupExpr::zero;
    let (groups, note): (Vec<GroupExpr>, &str) = match name {
        SpectrumName::SH => (vec![c(), z2(), z2(), z(), z(), z(), z()], "supercohomology point layers"),
        SpectrumName::SW | SpectrumName::SWTwisted => (
            vec![c(), z2(), z2(), z(), GroupExpr::opaque(OpaqueSymbol::SW, 1), z(), z()],
            "super-Witt point values; degree 4 is the Witt group of slightly degenerate categories",
        ),
        SpectrumName::Spin => (vec![c(), z2(), z2(), z(), c(), z(), z(), z()], "dual of spin bordism"),
    };
    SpectrumTable {
        name,
        twisted: name == SpectrumName::SWTwisted,
        entries: groups
            .into_iter()
            .enumerate()
            .map(|(j, group)| SpectrumEntry { degree: j as u32, group, provenance: format!("built-in: {note}") })
            .collect(),
    }
}

/// Which piece of the cohomology of a space a row describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpacePart {
    Full,
    Reduced,
    /// `X ∧ Y` with `X` the first `left` factors.
    Smash { left: usize },
}

impl fmt::Display for SpacePart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacePart::Full => write!(f, "full"),
            SpacePart::Reduced => write!(f, "reduced"),
            SpacePart::Smash { left } => write!(f, "smash(left={left})"),
        }
    }
}

/// Reduced integral homology of one factor `K(Z/m, n)` in degree `d`;
/// `None` where no value is tabulated.
fn factor_homology(m: u64, n: u32, d: u32) -> Option<FinAbGroup> {
    let g2 = FinAbGroup::cyclic(if m.is_multiple_of(2) { 2 } else { 1 });
    if d < n {
        return Some(FinAbGroup::trivial());
    }
    if d == n {
        return Some(FinAbGroup::cyclic(m));
    }
    match n {
        1 => Some(if d % 2 == 1 { FinAbGroup::cyclic(m) } else { FinAbGroup::trivial() }),
        2 => match d {
            3 => Some(FinAbGroup::trivial()),
            4 => Some(whitehead_gamma(&FinAbGroup::cyclic(m))),
            5 => Some(g2),
            6 | 7 if m == 2 => Some(g2),
            _ => None,
        },
        _ if d == n + 1 => Some(FinAbGroup::trivial()),
        // stable range: H_{n+2} = A/2, H_{n+3} = A[2]
        _ if d < 2 * n && d <= n + 3 => Some(g2),
        _ => None,
    }
}

type Homology = Vec<Option<FinAbGroup>>;

fn factor_series(m: u64, n: u32, max: u32) -> Homology {
    let mut h = vec![Some(FinAbGroup::trivial())];
    h.extend((1..=max).map(|d| factor_homology(m, n, d)));
    h
}

fn smash_homology(a: &Homology, b: &Homology, max: u32) -> Homology {
    (0..=max as usize)
        .map(|k| {
            let mut acc = FinAbGroup::trivial();
            for p in 1..k {
                let q = k - p;
                acc = acc.direct_sum(&tensor_group(a[p].as_ref()?, b[q].as_ref()?));
            }
            for p in 1..k.saturating_sub(1) {
                let q = k - 1 - p;
                acc = acc.direct_sum(&tor_group(a[p].as_ref()?, b[q].as_ref()?));
            }
            Some(acc)
        })
        .collect()
}

fn product_homology(a: &Homology, b: &Homology, max: u32) -> Homology {
    let s = smash_homology(a, b, max);
    (0..=max as usize)
        .map(|k| Some(a[k].as_ref()?.direct_sum(b[k].as_ref()?).direct_sum(s[k].as_ref()?)))
        .collect()
}

fn space_homology(space: &EmSpace, max: u32) -> Homology {
    let mut acc: Homology = vec![Some(FinAbGroup::trivial()); max as usize + 1];
    for f in space.factors() {
        acc = product_homology(&acc, &factor_series(f.order, f.degree, max), max);
    }
    acc
}

/// Reduced integral homology of a space part, degrees `0..=max`.
pub fn reduced_integral_homology(space: &EmSpace, part: SpacePart, max: u32) -> Result<Vec<Option<FinAbGroup>>> {
    if max > MAX_CIRCLE_DEGREE {
        return Err(Error::Unsupported(format!("integral homology above degree {MAX_CIRCLE_DEGREE}")));
    }
    Ok(match part {
        SpacePart::Full | SpacePart::Reduced => space_homology(space, max),
        SpacePart::Smash { left } => {
            let (l, r) = space.factors().split_at(left);
            let l = EmSpace::new(l.to_vec())?;
            let r = EmSpace::new(r.to_vec())?;
            smash_homology(&space_homology(&l, max), &space_homology(&r, max), max)
        }
    })
}

/// Reduced mod-2 Betti numbers of a part, degrees `0..=max`.
pub fn reduced_betti(alg: &EmAlgebra, part: SpacePart, max: u32) -> Result<Vec<usize>> {
    (0..=max)
        .map(|d| {
            if d == 0 {
                return Ok(0);
            }
            Ok(match part {
                SpacePart::Full | SpacePart::Reduced => alg.betti(d)?,
                SpacePart::Smash { left } => alg.smash_basis(left, d)?.len(),
            })
        })
        .collect()
}

/// 2-ranks of the reduced circle cohomology: `s_d = b~_d - s_{d-1}`, valid
/// because all reduced integral homology is torsion.
pub fn circle_two_ranks(alg: &EmAlgebra, part: SpacePart, max: u32) -> Result<Vec<usize>> {
    let b = reduced_betti(alg, part, max)?;
    let mut s = vec![0usize; b.len()];
    for d in 1..b.len() {
        s[d] = b[d].checked_sub(s[d - 1]).ok_or_else(|| {
            Error::DataConsistency(format!("negative circle 2-rank in degree {d}"))
        })?;
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CircleValue {
    /// The circle group itself (degree 0 of the full space).
    Circle,
    Known { group: FinAbGroup },
    /// A finite group whose 2-rank is known but whose isomorphism type is not tabulated.
    TorsionOnly { two_rank: usize },
}

impl CircleValue {
    pub fn as_group_expr(&self) -> Option<GroupExpr> {
        match self {
            CircleValue::Circle => Some(GroupExpr::circle()),
            CircleValue::Known { group } => Some(GroupExpr::finite(group.clone())),
            CircleValue::TorsionOnly { .. } => None,
        }
    }

    pub fn two_rank(&self) -> usize {
        match self {
            CircleValue::Circle => 1,
            CircleValue::Known { group } => group.two_rank(),
            CircleValue::TorsionOnly { two_rank } => *two_rank,
        }
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleValue::Circle => write!(f, "C*"),
            CircleValue::Known { group } => write!(f, "{group}"),
            CircleValue::TorsionOnly { two_rank } => write!(f, "?[2-rank {two_rank}]"),
        }
    }
}

/// A closed-form functor expression evaluated next to the tabulated value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub expression: String,
    pub value: FinAbGroup,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleEntry {
    pub degree: u32,
    pub value: CircleValue,
    pub provenance: String,
    pub closed_form: Option<ClosedFormCheck>,
}

/// `H^i(X; C*)` for `i <= max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRow {
    pub space: String,
    pub part: SpacePart,
    pub entries: Vec<CircleEntry>,
}

impl CircleRow {
    pub fn entry(&self, degree: u32) -> Result<&CircleEntry> {
        self.entries
            .get(degree as usize)
            .ok_or_else(|| Error::Unsupported(format!("circle row of {} beyond degree {}", self.space, self.entries.len() - 1)))
    }
}

/// Circle row of a space part: `H~^d(X; C*) = dual(H~_d(X; Z))` since the
/// reduced homology is torsion, with `C*` added in degree 0 for the full space.
pub fn circle_row_for(space: &EmSpace, part: SpacePart, max: u32, alg: &EmAlgebra) -> Result<CircleRow> {
    let hom = reduced_integral_homology(space, part, max)?;
    let ranks = circle_two_ranks(alg, part, max)?;
    let mut entries = Vec::new();
    for d in 0..=max {
        let (value, provenance) = if d == 0 && part == SpacePart::Full {
            (CircleValue::Circle, "unit".to_string())
        } else {
            match &hom[d as usize] {
                Some(h) => (
                    CircleValue::Known { group: dual(h) },
                    "dual of tabulated integral homology (Künneth over factors)".to_string(),
                ),
                None => (
                    CircleValue::TorsionOnly { two_rank: ranks[d as usize] },
                    "2-rank from mod-2 Betti numbers; group not tabulated".to_string(),
                ),
            }
        };
        if let CircleValue::Known { group } = &value {
            if d > 0 && group.two_rank() != ranks[d as usize] {
                return Err(Error::DataConsistency(format!(
                    "circle entry {group} in degree {d} of {space} has 2-rank {} but mod-2 data gives {}",
                    group.two_rank(),
                    ranks[d as usize]
                )));
            }
        }
        entries.push(CircleEntry { degree: d, value, provenance, closed_form: None });
    }
    Ok(CircleRow { space: space.to_string(), part, entries })
}

/// Circle row of `K(E, n)` with closed-form functor cross-checks.
pub fn circle_row(e: &FinAbGroup, n: u32, max: u32) -> Result<CircleRow> {
    if !(n == 2 || n == 4) {
        return Err(Error::Unsupported(format!("circle rows are tabulated for n = 2, 4 (got {n})")));
    }
    let space = EmSpace::from_group(e, n)?;
    let alg = EmAlgebra::new(space.clone(), max + 1)?;
    let mut row = circle_row_for(&space, SpacePart::Full, max, &alg)?;
    let mut checks: Vec<(u32, String, FinAbGroup)> = match n {
        2 => vec![(2, "dual(E)".into(), dual(e)), (5, "Ext(E, dual(E))".into(), ext_group(e, &dual(e)))],
        _ => vec![(4, "dual(E)".into(), dual(e)), (7, "dual(two_torsion(E))".into(), dual(&two_torsion(e)))],
    };
    if n == 2 {
        // skipped when the quadratic-form count is over budget
        if let Ok(q) = quad_group(e, QuadTarget::Circle) {
            checks.push((4, "Quad(E, C*)".into(), q));
        }
    }
    for (d, expression, value) in checks {
        if let Some(entry) = row.entries.get_mut(d as usize) {
            let agrees = matches!(&entry.value, CircleValue::Known { group } if *group == value);
            entry.closed_form = Some(ClosedFormCheck { expression, value, agrees });
        }
    }
    Ok(row)
}

/// Kernel of `H^d(part; Z/2) → H^d(part; C*)`, `X ↦ (−1)^X`, in the
/// algebra's degree-`d` basis (restricted to the part's basis for smashes).
///
/// The kernel `K` is the image of the connecting map for `Z/2 → C* → C*`,
/// so `im Sq1 ⊆ K ⊆ ker Sq1` and `dim K = b_d - s_d`. When either bound has
/// the right dimension, `K` is determined.
pub fn comparison_kernel(alg: &EmAlgebra, part: SpacePart, d: u32) -> Result<Subspace> {
    let b = comparison_bounds(alg, part, d)?;
    if b.image.dim() == b.dim {
        Ok(b.image)
    } else if b.kernel.dim() == b.dim {
        Ok(b.kernel)
    } else {
        Err(Error::UnspecifiedMap(format!(
            "(-1)^X in degree {d} of {}: kernel of dimension {} lies strictly between im Sq1 and ker Sq1",
            alg.space(),
            b.dim
        )))
    }
}

/// Constraints on the kernel of `(−1)^X`: it contains `image`, lies in
/// `kernel`, and has dimension `dim`.
#[derive(Clone, Debug)]
pub struct KernelBounds {
    pub image: Subspace,
    pub kernel: Subspace,
    pub dim: usize,
}

impl KernelBounds {
    pub fn admits(&self, k: &Subspace) -> bool {
        k.dim() == self.dim && self.image.is_subspace_of(k) && k.is_subspace_of(&self.kernel)
    }
}

pub fn comparison_bounds(alg: &EmAlgebra, part: SpacePart, d: u32) -> Result<KernelBounds> {
    let basis = part_basis(alg, part, d)?;
    let n = basis.len();
    let s = circle_two_ranks(alg, part, d)?[d as usize];
    let target = n - s.min(n);
    if d == 0 {
        return Ok(KernelBounds { image: Subspace::zero(n), kernel: Subspace::zero(n), dim: 0 });
    }
    let prev = part_basis(alg, part, d - 1)?;
    let mut im = Subspace::zero(n);
    for x in &prev {
        im.insert(part_vector(alg, part, d, &alg.sq(1, x)?)?);
    }
    let next_images: Vec<BitVec> = basis
        .iter()
        .map(|x| part_vector(alg, part, d + 1, &alg.sq(1, x)?))
        .collect::<Result<_>>()?;
    let ker = crate::gf2::kernel(&next_images);
    if im.dim() > target || ker.dim() < target {
        return Err(Error::DataConsistency(format!(
            "comparison kernel in degree {d}: dim im Sq1 = {}, dim ker Sq1 = {}, expected {target}",
            im.dim(),
            ker.dim()
        )));
    }
    Ok(KernelBounds { image: im, kernel: ker, dim: target })
}

/// Basis classes of a part in degree `d`.
pub fn part_basis(alg: &EmAlgebra, part: SpacePart, d: u32) -> Result<Vec<PolyClass>> {
    Ok(match part {
        SpacePart::Full => (0..alg.betti(d)?).map(|i| alg.basis_class(d, i)).collect(),
        SpacePart::Reduced if d == 0 => Vec::new(),
        SpacePart::Reduced => (0..alg.betti(d)?).map(|i| alg.basis_class(d, i)).collect(),
        SpacePart::Smash { left } => alg
            .smash_basis(left, d)?
            .into_iter()
            .map(|m| PolyClass { degree: d, terms: [m].into_iter().collect() })
            .collect(),
    })
}

/// Coordinates of a class in a part's basis; errors if it leaves the part.
pub fn part_vector(alg: &EmAlgebra, part: SpacePart, d: u32, x: &PolyClass) -> Result<BitVec> {
    if x.is_zero() {
        return Ok(BitVec::zeros(part_basis(alg, part, d)?.len()));
    }
    if x.degree != d {
        return Err(Error::Inhomogeneous(format!("class of degree {} where {d} was expected", x.degree)));
    }
    let basis = part_basis(alg, part, d)?;
    let mut v = BitVec::zeros(basis.len());
    for m in &x.terms {
        let i = basis
            .iter()
            .position(|b| b.terms.contains(m))
            .ok_or_else(|| Error::DataConsistency(format!("{} is not in the {part} part", alg.monomial_name(m))))?;
        v.flip(i);
    }
    Ok(v)
}

/// Image of `(−1)^X` in the 2-torsion of the circle entry, as coordinates in
/// `H^d / K`; the empty list of ones means the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonImage {
    pub degree: u32,
    pub is_identity: bool,
    pub quotient_coordinates: Vec<u8>,
}

pub fn comparison_map(alg: &EmAlgebra, part: SpacePart, x: &PolyClass, kernel: Option<&Subspace>) -> Result<ComparisonImage> {
    let d = x.degree;
    let owned;
    let k = match kernel {
        Some(k) => k,
        None => {
            owned = comparison_kernel(alg, part, d)?;
            &owned
        }
    };
    let v = part_vector(alg, part, d, x)?;
    // H^d / K is identified with the coordinates off the pivots of K
    let reduced = k.reduce(&v);
    let pivots = k.pivots();
    let coords: Vec<u8> = (0..v.len()).filter(|i| !pivots.contains(i)).map(|i| u8::from(reduced.get(i))).collect();
    Ok(ComparisonImage { degree: d, is_identity: k.contains(&v), quotient_coordinates: coords })
}

/// User overrides for tables and comparison kernels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overrides {
    /// Spectrum name → degree → group.
    #[serde(default)]
    pub spectra: BTreeMap<String, BTreeMap<u32, GroupExpr>>,
    #[serde(default)]
    pub circle_entries: Vec<CircleOverride>,
    #[serde(default)]
    pub comparison_kernels: Vec<KernelOverride>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleOverride {
    pub group: FinAbGroup,
    pub space_degree: u32,
    pub degree: u32,
    pub value: GroupExpr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelOverride {
    pub group: FinAbGroup,
    pub space_degree: u32,
    pub degree: u32,
    /// Classes spanning the kernel, in the class syntax of the algebra.
    pub kernel: Vec<String>,
}

impl Overrides {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("override file: {e}")))
    }

    pub fn is_empty(&self) -> bool {
        self.spectra.is_empty() && self.circle_entries.is_empty() && self.comparison_kernels.is_empty()
    }

    /// Applies spectrum overrides; returns one provenance line per change.
    pub fn apply_to_spectrum(&self, table: &mut SpectrumTable) -> Result<Vec<String>> {
        let mut notes = Vec::new();
        for (name, entries) in &self.spectra {
            if name.parse::<SpectrumName>()? != table.name {
                continue;
            }
            for (&j, g) in entries {
                table.set(j, g.clone(), "override file".into())?;
                notes.push(format!("override: {}^{j}(pt) = {g}", table.name));
            }
        }
        Ok(notes)
    }

    pub fn circle_entry(&self, group: &FinAbGroup, n: u32, degree: u32) -> Option<&GroupExpr> {
        self.circle_entries
            .iter()
            .find(|o| &o.group == group && o.space_degree == n && o.degree == degree)
            .map(|o| &o.value)
    }

    pub fn kernel(&self, group: &FinAbGroup, n: u32, degree: u32) -> Option<&[String]> {
        self.comparison_kernels
            .iter()
            .find(|o| &o.group == group && o.space_degree == n && o.degree == degree)
            .map(|o| o.kernel.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em_cohomology::EmFactor;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    fn values(row: &CircleRow, upto: usize) -> Vec<String> {
        row.entries[..=upto].iter().map(|e| e.value.to_string()).collect()
    }

    #[test]
    fn spectra() {
        let show = |n| spectrum(n).entries.iter().map(|e| e.group.to_string()).collect::<Vec<_>>();
        assert_eq!(show(SpectrumName::SH), ["C*", "Z/2", "Z/2", "0", "0", "0", "0"]);
        assert_eq!(show(SpectrumName::SW), ["C*", "Z/2", "Z/2", "0", "SW", "0", "0"]);
        assert_eq!(show(SpectrumName::Spin), ["C*", "Z/2", "Z/2", "0", "C*", "0", "0", "0"]);
        assert!(spectrum(SpectrumName::SH).entry(9).is_err());
        assert!("XYZ".parse::<SpectrumName>().is_err());
    }

    #[test]
    fn z2_degree_two_row() {
        let row = circle_row(&g("Z/2"), 2, 7).unwrap();
        assert_eq!(values(&row, 5), ["C*", "0", "Z/2", "0", "Z/4", "Z/2"]);
        assert!(row.entries[4].closed_form.as_ref().unwrap().agrees);
    }

    #[test]
    fn literal_degree_five_flags_z4() {
        let row = circle_row(&g("Z/4"), 2, 7).unwrap();
        assert_eq!(row.entries[5].value.to_string(), "Z/2");
        let check = row.entries[5].closed_form.as_ref().unwrap();
        assert_eq!(check.value, g("Z/4"));
        assert!(!check.agrees);
    }

    #[test]
    fn degree_four_rows() {
        let row = circle_row(&g("Z/2 x Z/4"), 4, 7).unwrap();
        assert_eq!(row.entries[7].value.to_string(), "Z/2 x Z/2");
        assert!(row.entries[7].closed_form.as_ref().unwrap().agrees);
        let row = circle_row(&g("Z/3"), 4, 7).unwrap();
        assert_eq!(row.entries[7].value.to_string(), "0");
        assert!(circle_row(&g("Z/2"), 3, 7).is_err());
        assert!(circle_row(&g("Z/2"), 2, 9).is_err());
    }

    #[test]
    fn comparison_examples() {
        let space = EmSpace::new(vec![EmFactor { order: 2, degree: 2 }]).unwrap();
        let alg = EmAlgebra::new(space, 12).unwrap();
        let sq = alg.parse_class("i2^2").unwrap();
        let img = comparison_map(&alg, SpacePart::Full, &sq, None).unwrap();
        assert!(!img.is_identity);
        let zero = PolyClass::zero(4);
        assert!(comparison_map(&alg, SpacePart::Full, &zero, None).unwrap().is_identity);
        let k5 = comparison_kernel(&alg, SpacePart::Full, 5).unwrap();
        assert_eq!(k5.dim(), 1);
        let x = alg.parse_class("i2*Sq1(i2) + Sq2 Sq1(i2)").unwrap();
        assert!(k5.contains(&alg.to_vector(&x).unwrap()));

        let space4 = EmSpace::new(vec![EmFactor { order: 2, degree: 4 }]).unwrap();
        let alg4 = EmAlgebra::new(space4, 12).unwrap();
        let y = alg4.parse_class("Sq2(i4)").unwrap();
        assert!(!comparison_map(&alg4, SpacePart::Full, &y, None).unwrap().is_identity);
    }

    #[test]
    fn overrides_parse() {
        let text = r#"{"spectra": {"SW": {"4": "Z/2"}},
            "circle_entries": [{"group": "Z/2", "space_degree": 2, "degree": 8, "value": "Z/2 x Z/2"}],
            "comparison_kernels": []}"#;
        let o = Overrides::from_json(text).unwrap();
        let mut t = spectrum(SpectrumName::SW);
        assert_eq!(o.apply_to_spectrum(&mut t).unwrap().len(), 1);
        assert_eq!(t.entry(4).unwrap().to_string(), "Z/2");
        assert_eq!(o.circle_entry(&g("Z/2"), 2, 8).unwrap().to_string(), "Z/2 x Z/2");
        assert!(Overrides::from_json("{").is_err());
    }
}
