//! The mod-2 Steenrod algebra: admissible monomials, Adem relations, excess,
//! power Bockstein markers, and Margolis homology of A(1)-modules.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::gf2::{BitVec, Subspace};
use crate::{Error, Result};

/// `Sq^{i1} ... Sq^{im}` optionally followed by a power Bockstein `β_k`
/// acting first. `β_1` is stored as a trailing `Sq^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SteenrodMonomial {
    indices: Vec<u32>,
    bockstein: Option<u32>,
}

impl SteenrodMonomial {
    pub fn identity() -> Self {
        SteenrodMonomial { indices: Vec::new(), bockstein: None }
    }

    pub fn sq(i: u32) -> Self {
        Self::new(vec![i], None)
    }

    pub fn new(indices: Vec<u32>, bockstein: Option<u32>) -> Self {
        assert!(bockstein != Some(0), "Bockstein order must be at least 1");
        let mut indices: Vec<u32> = indices.into_iter().filter(|&i| i != 0).collect();
        let bockstein = match bockstein {
            Some(1) => {
                indices.push(1);
                None
            }
            other => other,
        };
        SteenrodMonomial { indices, bockstein }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn bockstein(&self) -> Option<u32> {
        self.bockstein
    }

    pub fn is_identity(&self) -> bool {
        self.indices.is_empty() && self.bockstein.is_none()
    }

    pub fn degree(&self) -> u32 {
        self.indices.iter().sum::<u32>() + u32::from(self.bockstein.is_some())
    }

    /// Index sequence with a Bockstein counted as a trailing 1.
    fn effective_sequence(&self) -> Vec<u32> {
        let mut s = self.indices.clone();
        if self.bockstein.is_some() {
            s.push(1);
        }
        s
    }

    pub fn is_admissible(&self) -> bool {
        let s = self.effective_sequence();
        s.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// `Sq^a` composed on the left.
    pub fn prepend(&self, a: u32) -> Self {
        let mut indices = vec![a];
        indices.extend_from_slice(&self.indices);
        Self::new(indices, self.bockstein)
    }

    /// `self ∘ other`. A Bockstein on `self` must act first, so `other`
    /// must then be the identity.
    pub fn compose(&self, other: &SteenrodMonomial) -> Result<SteenrodMonomial> {
        if self.bockstein.is_some() && !other.is_identity() {
            return Err(Error::Unsupported(format!(
                "power Bockstein is innermost; cannot compose {self} with {other}"
            )));
        }
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        Ok(Self::new(indices, other.bockstein))
    }
}

impl Ord for SteenrodMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices.cmp(&other.indices))
            .then_with(|| self.bockstein.cmp(&other.bockstein))
    }
}

impl PartialOrd for SteenrodMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SteenrodMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self.indices.iter().map(|i| format!("Sq{i}")).collect();
        if let Some(k) = self.bockstein {
            parts.push(format!("b{k}"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for SteenrodMonomial {
    type Err = Error;

    /// Parses `"Sq2 Sq1"`, `"Sq^2 b2"`, `"b_3"`, `"1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::identity());
        }
        let mut indices = Vec::new();
        let mut bockstein = None;
        let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == '*' || c == '·').filter(|t| !t.is_empty()).collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty Steenrod monomial".into()));
        }
        for (pos, tok) in tokens.iter().enumerate() {
            let lower = tok.to_lowercase();
            let number = |rest: &str| -> Result<u32> {
                rest.trim_start_matches(['^', '_'])
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad Steenrod token {tok:?}")))
            };
            if let Some(rest) = lower.strip_prefix("sq") {
                if bockstein.is_some() {
                    return Err(Error::Parse(format!("Bockstein must be innermost in {s:?}")));
                }
                indices.push(number(rest)?);
            } else if let Some(rest) = lower
                .strip_prefix("beta")
                .or_else(|| lower.strip_prefix('β'))
                .or_else(|| lower.strip_prefix('b'))
            {
                let k = number(rest)?;
                if k == 0 || pos + 1 != tokens.len() {
                    return Err(Error::Parse(format!("bad Bockstein in {s:?}")));
                }
                bockstein = Some(k);
            } else {
                return Err(Error::Parse(format!("unknown Steenrod token {tok:?}")));
            }
        }
        Ok(Self::new(indices, bockstein))
    }
}

/// An F2-linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SteenrodWord {
    monomials: BTreeSet<SteenrodMonomial>,
}

impl SteenrodWord {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: SteenrodMonomial) -> Self {
        SteenrodWord { monomials: BTreeSet::from([m]) }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &SteenrodMonomial> {
        self.monomials.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Adds a monomial with F2 coefficients (toggles presence).
    pub fn toggle(&mut self, m: SteenrodMonomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add(&mut self, other: &SteenrodWord) {
        for m in &other.monomials {
            self.toggle(m.clone());
        }
    }

    /// Common degree; `None` for the zero word.
    pub fn degree(&self) -> Result<Option<u32>> {
        let degs: BTreeSet<u32> = self.monomials.iter().map(SteenrodMonomial::degree).collect();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(degs.into_iter().next()),
            _ => Err(Error::Inhomogeneous(format!("Steenrod word {self} mixes degrees {degs:?}"))),
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.monomials.iter().all(SteenrodMonomial::is_admissible)
    }

    /// `self ∘ other`, normalized.
    pub fn compose(&self, other: &SteenrodWord) -> Result<SteenrodWord> {
        let mut out = SteenrodWord::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.toggle(a.compose(b)?);
            }
        }
        Ok(adem_normalize(&out))
    }
}

impl fmt::Display for SteenrodWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.monomials.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for SteenrodWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split('+') {
            out.toggle(term.parse()?);
        }
        Ok(out)
    }
}

impl From<SteenrodMonomial> for SteenrodWord {
    fn from(m: SteenrodMonomial) -> Self {
        Self::monomial(m)
    }
}

/// `binom(n, k) mod 2` from a Pascal row reduced mod 2.
fn binom_mod2(n: u32, k: u32) -> bool {
    if k > n {
        return false;
    }
    let mut row = vec![false; k as usize + 1];
    row[0] = true;
    for _ in 0..n {
        for j in (1..=k as usize).rev() {
            row[j] ^= row[j - 1];
        }
    }
    row[k as usize]
}

/// Adem expansion of `Sq^a Sq^b` for `0 < a < 2b` as admissible pairs.
fn adem_pair(a: u32, b: u32) -> Vec<(u32, u32)> {
    (0..=a / 2)
        .filter(|&j| binom_mod2(b - 1 - j, a - 2 * j))
        .map(|j| (a + b - j, j))
        .collect()
}

static ADEM_CACHE: Mutex<Option<HashMap<SteenrodMonomial, SteenrodWord>>> = Mutex::new(None);

fn normalize_monomial(m: &SteenrodMonomial) -> SteenrodWord {
    if let Some(hit) = ADEM_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).get(m) {
        return hit.clone();
    }
    let out = normalize_uncached(m);
    ADEM_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).insert(m.clone(), out.clone());
    out
}

fn normalize_uncached(m: &SteenrodMonomial) -> SteenrodWord {
    let idx = m.indices();
    let bad = idx.windows(2).position(|w| w[0] < 2 * w[1]);
    let Some(pos) = bad else {
        // Sq part admissible; a Bockstein kills anything ending in Sq1
        if m.bockstein().is_some() && idx.last() == Some(&1) {
            return SteenrodWord::zero();
        }
        return SteenrodWord::monomial(m.clone());
    };
    let mut out = SteenrodWord::zero();
    for (x, y) in adem_pair(idx[pos], idx[pos + 1]) {
        let mut next = idx[..pos].to_vec();
        next.push(x);
        next.push(y);
        next.extend_from_slice(&idx[pos + 2..]);
        out.add(&normalize_monomial(&SteenrodMonomial::new(next, m.bockstein())));
    }
    out
}

/// Rewrites a word as a sum of admissible monomials.
pub fn adem_normalize(word: &SteenrodWord) -> SteenrodWord {
    let mut out = SteenrodWord::zero();
    for m in word.monomials() {
        out.add(&normalize_monomial(m));
    }
    out
}

/// `i1 - (i2 + ... + im)`, with a Bockstein counted as a trailing 1.
pub fn excess(m: &SteenrodMonomial) -> Result<i64> {
    if !m.is_admissible() {
        return Err(Error::Inadmissible(m.to_string()));
    }
    let s = m.effective_sequence();
    Ok(match s.split_first() {
        None => 0,
        Some((first, rest)) => *first as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
    })
}

/// Margolis operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Margolis {
    /// `Q0 = Sq1`.
    Q0,
    /// `Q1 = Sq3 + Sq2 Sq1`.
    Q1,
}

impl Margolis {
    pub fn degree(self) -> i32 {
        match self {
            Margolis::Q0 => 1,
            Margolis::Q1 => 3,
        }
    }
}

/// A finite graded F2-vector space with `Sq1` and `Sq2` action, possibly
/// truncated above `top`.
#[derive(Clone, Debug)]
pub struct A1Module {
    labels: Vec<String>,
    degrees: Vec<i32>,
    sq1: Vec<BitVec>,
    sq2: Vec<BitVec>,
    /// Highest degree whose outgoing operations are fully known; `None` when
    /// the module is closed under the action.
    top: Option<i32>,
}

impl A1Module {
    /// Builds a module from explicit action matrices (`sq1[i]` is the image of
    /// basis element `i`).
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<i32>,
        sq1: Vec<BitVec>,
        sq2: Vec<BitVec>,
        top: Option<i32>,
    ) -> Result<Self> {
        let n = degrees.len();
        if labels.len() != n || sq1.len() != n || sq2.len() != n {
            return Err(Error::DataConsistency("A(1)-module data has mismatched lengths".into()));
        }
        for (shift, ops) in [(1, &sq1), (2, &sq2)] {
            for (i, img) in ops.iter().enumerate() {
                if img.len() != n {
                    return Err(Error::DataConsistency("action vector has wrong length".into()));
                }
                if let Some(j) = img.ones().find(|&j| degrees[j] != degrees[i] + shift) {
                    return Err(Error::DataConsistency(format!(
                        "Sq{shift} on {} lands in degree {}, expected {}",
                        labels[i],
                        degrees[j],
                        degrees[i] + shift
                    )));
                }
            }
        }
        Ok(A1Module { labels, degrees, sq1, sq2, top })
    }

    /// The submodule generated by `seeds` inside an ambient module whose basis
    /// is indexed by keys `K`. Classes above `max_degree` are truncated.
    pub fn generated_by<K, D, L, S1, S2>(
        seeds: &[BTreeSet<K>],
        degree_of: D,
        label: L,
        sq1: S1,
        sq2: S2,
        max_degree: i32,
    ) -> Result<Self>
    where
        K: Ord + Clone,
        D: Fn(&K) -> i32,
        L: Fn(&K) -> String,
        S1: Fn(&K) -> Result<BTreeSet<K>>,
        S2: Fn(&K) -> Result<BTreeSet<K>>,
    {
        // ambient: every key reachable from the seeds
        let mut keys: BTreeMap<K, usize> = BTreeMap::new();
        let mut queue: Vec<K> = seeds.iter().flatten().cloned().collect();
        let mut actions: Vec<(BTreeSet<K>, BTreeSet<K>)> = Vec::new();
        let mut overflow = false;
        let mut order: Vec<K> = Vec::new();
        while let Some(k) = queue.pop() {
            if keys.contains_key(&k) {
                continue;
            }
            keys.insert(k.clone(), order.len());
            order.push(k.clone());
            let mut acts = (BTreeSet::new(), BTreeSet::new());
            for (which, target) in [(1, &mut acts.0), (2, &mut acts.1)] {
                if degree_of(&k).saturating_add(which) > max_degree {
                    overflow = true;
                    continue;
                }
                let img = if which == 1 { sq1(&k)? } else { sq2(&k)? };
                for t in img {
                    queue.push(t.clone());
                    target.insert(t);
                }
            }
            actions.push(acts);
        }
        let n = order.len();
        let vec_of = |set: &BTreeSet<K>| BitVec::from_indices(n, set.iter().map(|k| keys[k]));
        let amb_sq1: Vec<BitVec> = actions.iter().map(|a| vec_of(&a.0)).collect();
        let amb_sq2: Vec<BitVec> = actions.iter().map(|a| vec_of(&a.1)).collect();

        // span closure of the seeds
        let mut span = Subspace::zero(n);
        let mut pending: Vec<BitVec> = seeds.iter().map(vec_of).collect();
        while let Some(v) = pending.pop() {
            if span.insert(v.clone()) {
                pending.push(crate::gf2::apply(&amb_sq1, n, &v));
                pending.push(crate::gf2::apply(&amb_sq2, n, &v));
            }
        }

        // re-express in the span's basis; basis vectors are homogeneous
        // because every generator and action preserves homogeneity
        let basis = span.basis().to_vec();
        let m = basis.len();
        let mut degrees = Vec::with_capacity(m);
        let mut labels = Vec::with_capacity(m);
        for b in &basis {
            let ds: BTreeSet<i32> = b.ones().map(|i| degree_of(&order[i])).collect();
            if ds.len() != 1 {
                return Err(Error::Inhomogeneous("submodule basis vector mixes degrees".into()));
            }
            degrees.push(*ds.iter().next().unwrap());
            let terms: Vec<String> = b.ones().map(|i| label(&order[i])).collect();
            labels.push(terms.join(" + "));
        }
        let coords = |v: &BitVec| -> Result<BitVec> {
            span_coordinates(&span, v)
                .ok_or_else(|| Error::DataConsistency("action leaves the generated submodule".into()))
        };
        let mut s1 = Vec::with_capacity(m);
        let mut s2 = Vec::with_capacity(m);
        for b in &basis {
            s1.push(coords(&crate::gf2::apply(&amb_sq1, n, b))?);
            s2.push(coords(&crate::gf2::apply(&amb_sq2, n, b))?);
        }
        Self::new(labels, degrees, s1, s2, overflow.then_some(max_degree))
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn is_closed(&self) -> bool {
        self.top.is_none()
    }

    fn compose(&self, a: &[BitVec], b: &[BitVec]) -> Vec<BitVec> {
        // a after b
        b.iter().map(|v| crate::gf2::apply(a, self.dim(), v)).collect()
    }

    fn operator(&self, which: Margolis) -> Vec<BitVec> {
        match which {
            Margolis::Q0 => self.sq1.clone(),
            Margolis::Q1 => {
                let mut q = self.compose(&self.sq1, &self.sq2);
                for (x, y) in q.iter_mut().zip(self.compose(&self.sq2, &self.sq1)) {
                    x.xor_assign(&y);
                }
                q
            }
        }
    }
}

/// Solves `v = sum c_i b_i` over a fully reduced echelon basis.
fn span_coordinates(span: &Subspace, v: &BitVec) -> Option<BitVec> {
    let basis = span.basis();
    let mut c = BitVec::zeros(basis.len());
    let mut rest = v.clone();
    for (i, b) in basis.iter().enumerate() {
        let p = b.first_one().expect("basis vectors are nonzero");
        if rest.get(p) {
            rest.xor_assign(b);
            c.flip(i);
        }
    }
    rest.is_zero().then_some(c)
}

/// Homology of `Q0` or `Q1` by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MargolisHomology {
    pub which: Margolis,
    /// `(degree, dimension)` for each reported degree.
    pub dims: Vec<(i32, usize)>,
}

impl MargolisHomology {
    pub fn vanishes(&self) -> bool {
        self.dims.iter().all(|&(_, d)| d == 0)
    }

    pub fn vanishes_in(&self, lo: i32, hi: i32) -> bool {
        self.dims.iter().filter(|(deg, _)| (lo..=hi).contains(deg)).all(|&(_, d)| d == 0)
    }
}

/// `ker Q / im Q` per degree. A truncated module only reports degrees whose
/// outgoing `Q` stays at or below the truncation.
pub fn margolis_homology(module: &A1Module, which: Margolis) -> Result<MargolisHomology> {
    let q = module.operator(which);
    let qq = module.compose(&q, &q);
    if qq.iter().any(|v| !v.is_zero()) {
        return Err(Error::DataConsistency(format!("{which:?} does not square to zero on the supplied module")));
    }
    let shift = which.degree();
    let Some((&lo, &hi)) = module.degrees.iter().min().zip(module.degrees.iter().max()) else {
        return Ok(MargolisHomology { which, dims: Vec::new() });
    };
    let hi = match module.top {
        Some(top) => top - shift,
        None => hi,
    };
    let in_degree = |d: i32| -> Vec<usize> { (0..module.dim()).filter(|&i| module.degrees[i] == d).collect() };
    let mut dims = Vec::new();
    for d in lo..=hi {
        let here = in_degree(d);
        let out_images: Vec<BitVec> = here.iter().map(|&i| q[i].clone()).collect();
        let ker = here.len() - crate::gf2::rank(&out_images);
        let in_images: Vec<BitVec> = in_degree(d - shift).iter().map(|&i| q[i].clone()).collect();
        let im = crate::gf2::rank(&in_images);
        dims.push((d, ker - im));
    }
    Ok(MargolisHomology { which, dims })
}

/// The left A(1)-submodule of the Steenrod algebra generated by `1`.
pub fn free_a1_module() -> Result<A1Module> {
    let act = |a: u32| {
        move |m: &SteenrodMonomial| -> Result<BTreeSet<SteenrodMonomial>> {
            let w = adem_normalize(&SteenrodWord::monomial(m.prepend(a)));
            Ok(w.monomials().cloned().collect())
        }
    };
    A1Module::generated_by(
        &[BTreeSet::from([SteenrodMonomial::identity()])],
        |m| m.degree() as i32,
        ToString::to_string,
        act(1),
        act(2),
        i32::MAX,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SteenrodWord {
        s.parse().unwrap()
    }

    #[test]
    fn adem_examples() {
        assert!(adem_normalize(&w("Sq1 Sq1")).is_zero());
        assert_eq!(adem_normalize(&w("Sq1 Sq2")), w("Sq3"));
        assert_eq!(adem_normalize(&w("Sq2 Sq2")), w("Sq3 Sq1"));
        assert_eq!(adem_normalize(&w("Sq2 Sq3")), w("Sq5 + Sq4 Sq1"));
        assert_eq!(adem_normalize(&w("Sq3 Sq2")), SteenrodWord::zero());
    }

    #[test]
    fn bockstein_markers() {
        assert_eq!(w("Sq2 b1"), w("Sq2 Sq1"));
        assert!(adem_normalize(&w("Sq1 b2")).is_zero());
        assert!(adem_normalize(&w("Sq2 Sq2 b3")).is_zero());
        assert_eq!(adem_normalize(&w("Sq2 b2")), w("Sq2 b2"));
        assert!("b2 Sq1".parse::<SteenrodMonomial>().is_err());
        assert_eq!(w("Sq2 b2").to_string(), "Sq2 b2");
    }

    #[test]
    fn excess_examples() {
        assert_eq!(excess(&"Sq2 Sq1".parse().unwrap()).unwrap(), 1);
        assert_eq!(excess(&"Sq4 Sq2 Sq1".parse().unwrap()).unwrap(), 1);
        assert_eq!(excess(&SteenrodMonomial::identity()).unwrap(), 0);
        assert_eq!(excess(&"Sq2 b2".parse().unwrap()).unwrap(), 1);
        assert!(matches!(excess(&"Sq1 Sq2".parse().unwrap()), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn monomial_order() {
        let mut v: Vec<SteenrodMonomial> =
            ["Sq3", "Sq2 Sq1", "Sq2 b2", "Sq1"].iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["Sq1", "Sq2 b2", "Sq2 Sq1", "Sq3"]);
    }

    #[test]
    fn inhomogeneous_words() {
        assert!(matches!(w("Sq1 + Sq2").degree(), Err(Error::Inhomogeneous(_))));
        assert_eq!(w("Sq3 + Sq2 Sq1").degree().unwrap(), Some(3));
    }

    #[test]
    fn free_a1() {
        let m = free_a1_module().unwrap();
        assert_eq!(m.dim(), 8);
        assert!(m.is_closed());
        let mut degs = m.degrees().to_vec();
        degs.sort();
        assert_eq!(degs, [0, 1, 2, 3, 3, 4, 5, 6]);
        for q in [Margolis::Q0, Margolis::Q1] {
            assert!(margolis_homology(&m, q).unwrap().vanishes());
        }
    }

    #[test]
    fn trivial_module() {
        let m = A1Module::new(vec!["x".into()], vec![0], vec![BitVec::zeros(1)], vec![BitVec::zeros(1)], None).unwrap();
        for q in [Margolis::Q0, Margolis::Q1] {
            assert_eq!(margolis_homology(&m, q).unwrap().dims, vec![(0, 1)]);
        }
    }

    #[test]
    fn rejects_nonzero_square() {
        // a -> b under Sq1 and b -> c under Sq1
        let sq1 = vec![BitVec::unit(3, 1), BitVec::unit(3, 2), BitVec::zeros(3)];
        let m = A1Module::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![0, 1, 2],
            sq1,
            vec![BitVec::zeros(3); 3],
            None,
        )
        .unwrap();
        assert!(matches!(margolis_homology(&m, Margolis::Q0), Err(Error::DataConsistency(_))));
    }
}
