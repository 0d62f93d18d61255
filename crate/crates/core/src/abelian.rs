//! Finite abelian groups and the group-valued functors used in spectral
//! sequence tables.
//!
//! Groups are always kept in invariant-factor form `Z/d1 x ... x Z/dr` with
//! `d1 | d2 | ... | dr` and every `di >= 2`, so isomorphism testing is list
//! equality. The circle group `C*` never appears as a [`FinAbGroup`]; it is
//! tracked by [`GroupExpr::circle_rank`] and only enters through the rules
//! `hom(Z/n, C*) = Z/n` and `Ext(-, C*) = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest group the quadratic-form enumeration will touch.
pub const QUAD_BRUTE_FORCE_BUDGET: u64 = 64;

/// Largest group whose elements may be enumerated.
pub const ENUMERATION_BUDGET: u64 = 1 << 16;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A finite abelian group in invariant-factor form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders([n])
    }

    /// `(Z/p)^r`.
    pub fn elementary(p: u64, r: usize) -> Self {
        Self::from_cyclic_orders(std::iter::repeat_n(p, r))
    }

    /// Normalizes an arbitrary direct sum of cyclic groups. Orders `0` are
    /// rejected by the caller; orders `1` are dropped.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for n in orders {
            assert!(n > 0, "cyclic order must be positive");
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut exps) in primary {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // largest powers go to the largest invariant factors
            for (slot, e) in exps.into_iter().enumerate() {
                factors[len - 1 - slot] *= p.pow(e);
            }
        }
        FinAbGroup { factors }
    }

    /// Recovers a group from the multiset of its element orders.
    ///
    /// For each prime `p` the number of elements killed by `p^k` is
    /// `p^(sum_i min(k, e_i))`, which pins down the exponents `e_i`.
    pub fn from_element_orders(orders: &[u64]) -> Self {
        let total = orders.len() as u64;
        let mut cyclic = Vec::new();
        for (p, _) in factorize(total) {
            let mut prev_log = 0u32;
            let mut counts = Vec::new();
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let killed = orders.iter().filter(|&&o| {
                    let p_part = p_part_of(o, p);
                    pk % p_part == 0
                });
                let c = killed.count() as u64;
                let log = ilog(c, p);
                counts.push(log - prev_log);
                if log == prev_log {
                    break;
                }
                prev_log = log;
                k += 1;
            }
            // counts[k-1] = #{i : e_i >= k}
            for (idx, &c) in counts.iter().enumerate() {
                let next = counts.get(idx + 1).copied().unwrap_or(0);
                for _ in 0..(c - next) {
                    cyclic.push(p.pow(idx as u32 + 1));
                }
            }
        }
        Self::from_cyclic_orders(cyclic)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// True for `(Z/p)^r`, `r >= 1`.
    pub fn is_elementary(&self) -> bool {
        match self.factors.first() {
            Some(&d) => factorize(d).len() == 1 && factorize(d)[0].1 == 1 && self.factors.iter().all(|&x| x == d),
            None => false,
        }
    }

    /// Number of cyclic summands of the `p`-primary part.
    pub fn p_rank(&self, p: u64) -> usize {
        self.factors.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn two_rank(&self) -> usize {
        self.p_rank(2)
    }

    /// The `p`-primary part.
    pub fn primary_part(&self, p: u64) -> FinAbGroup {
        Self::from_cyclic_orders(self.factors.iter().map(|&d| p_part_of(d, p)))
    }

    /// Exponents of the cyclic summands of the `p`-primary part.
    pub fn primary_exponents(&self, p: u64) -> Vec<u32> {
        self.factors
            .iter()
            .map(|&d| ilog(p_part_of(d, p), p))
            .filter(|&e| e > 0)
            .collect()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        Self::from_cyclic_orders(self.factors.iter().chain(other.factors.iter()).copied())
    }

    /// All elements as coordinate vectors against the invariant factors.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        if self.order() > ENUMERATION_BUDGET {
            return Err(Error::Budget(format!("cannot enumerate group {self}")));
        }
        let mut out = vec![Vec::new()];
        for &d in &self.factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        Ok(out)
    }

    pub fn element_order(&self, element: &[u64]) -> u64 {
        self.factors
            .iter()
            .zip(element)
            .map(|(&d, &x)| d / gcd(d, x % d))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Checks that a coordinate vector has the right length.
    pub fn check_element(&self, element: &[i64]) -> Result<()> {
        if element.len() != self.factors.len() {
            return Err(Error::NotInGroup(format!(
                "element {element:?} has {} coordinates, group {self} has {}",
                element.len(),
                self.factors.len()
            )));
        }
        Ok(())
    }
}

fn p_part_of(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn parse_cyclic_token(tok: &str) -> Result<u64> {
    let t = tok.trim().to_ascii_lowercase();
    let digits = t
        .strip_prefix("z/")
        .or_else(|| t.strip_prefix("z_"))
        .or_else(|| t.strip_prefix('z'))
        .ok_or_else(|| Error::Parse(format!("expected Z/n, got {tok:?}")))?;
    let n: u64 = digits
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad cyclic order in {tok:?}")))?;
    if n == 0 {
        return Err(Error::Parse("Z/0 is infinite; only finite groups are supported".into()));
    }
    Ok(n)
}

fn split_summands(s: &str) -> Vec<String> {
    s.replace('⊕', " x ")
        .split(['x', 'X'])
        .map(|t| t.trim().to_string())
        .collect()
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Parses `"Z/2 x Z/4"`, `"Z/2 ⊕ Z/4"`, `"0"` or `"1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty group literal".into()));
        }
        let mut orders = Vec::new();
        for tok in split_summands(s) {
            match tok.as_str() {
                "0" | "1" => {}
                "" => return Err(Error::Parse(format!("empty summand in {s:?}"))),
                other => orders.push(parse_cyclic_token(other)?),
            }
        }
        Ok(Self::from_cyclic_orders(orders))
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Symbols for groups the computations treat as unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpaqueSymbol {
    /// Witt group of slightly degenerate braided fusion categories.
    SW,
    /// Its 2-torsion, `hom(Z/2, SW)`.
    SW2,
}

impl fmt::Display for OpaqueSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpaqueSymbol::SW => write!(f, "SW"),
            OpaqueSymbol::SW2 => write!(f, "SW_2"),
        }
    }
}

/// A table entry: finite part, copies of `C*`, and opaque symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupExpr {
    pub finite: FinAbGroup,
    pub circle_rank: u32,
    pub opaque: BTreeMap<OpaqueSymbol, u32>,
}

impl GroupExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn finite(g: FinAbGroup) -> Self {
        GroupExpr { finite: g, ..Default::default() }
    }

    pub fn circle() -> Self {
        GroupExpr { circle_rank: 1, ..Default::default() }
    }

    pub fn opaque(sym: OpaqueSymbol, count: u32) -> Self {
        let mut opaque = BTreeMap::new();
        if count > 0 {
            opaque.insert(sym, count);
        }
        GroupExpr { opaque, ..Default::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_trivial() && self.circle_rank == 0 && self.opaque.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.circle_rank == 0 && self.opaque.is_empty()
    }

    pub fn has_opaque(&self) -> bool {
        !self.opaque.is_empty()
    }

    /// `Z/2` exactly.
    pub fn is_z2(&self) -> bool {
        self.is_finite() && self.finite.invariant_factors() == [2]
    }

    /// `C*` exactly.
    pub fn is_circle(&self) -> bool {
        self.finite.is_trivial() && self.circle_rank == 1 && self.opaque.is_empty()
    }

    /// Multiset union.
    pub fn direct_sum(&self, other: &GroupExpr) -> GroupExpr {
        let mut opaque = self.opaque.clone();
        for (&k, &v) in &other.opaque {
            *opaque.entry(k).or_default() += v;
        }
        GroupExpr {
            finite: self.finite.direct_sum(&other.finite),
            circle_rank: self.circle_rank + other.circle_rank,
            opaque,
        }
    }

    /// `hom(-, Z/2)`; the only functor opaque symbols admit (`SW -> SW_2`).
    pub fn hom_to_z2(&self) -> Result<GroupExpr> {
        if self.opaque.contains_key(&OpaqueSymbol::SW2) {
            return Err(Error::OpaqueArithmetic("hom(SW_2, Z/2) is not declared".into()));
        }
        let mut out = GroupExpr::finite(hom_group(&self.finite, &FinAbGroup::cyclic(2)));
        // C* is divisible, so it has no maps to a finite group
        if let Some(&n) = self.opaque.get(&OpaqueSymbol::SW) {
            out.opaque.insert(OpaqueSymbol::SW2, n);
        }
        Ok(out)
    }

    /// The underlying finite group; errors on circle or opaque parts.
    pub fn require_finite(&self, what: &str) -> Result<&FinAbGroup> {
        if self.has_opaque() {
            return Err(Error::OpaqueArithmetic(format!("{what} on {self}")));
        }
        if self.circle_rank > 0 {
            return Err(Error::Unsupported(format!("{what} on the circle group in {self}")));
        }
        Ok(&self.finite)
    }
}

impl From<FinAbGroup> for GroupExpr {
    fn from(g: FinAbGroup) -> Self {
        GroupExpr::finite(g)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for _ in 0..self.circle_rank {
            parts.push("C*".to_string());
        }
        if !self.finite.is_trivial() {
            parts.push(self.finite.to_string());
        }
        for (sym, &n) in &self.opaque {
            for _ in 0..n {
                parts.push(sym.to_string());
            }
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = GroupExpr::zero();
        for tok in split_summands(s.trim()) {
            let lower = tok.to_ascii_lowercase();
            let term = match lower.as_str() {
                "0" | "1" => GroupExpr::zero(),
                "c*" | "c^x" | "c^×" | "u(1)" => GroupExpr::circle(),
                "sw" => GroupExpr::opaque(OpaqueSymbol::SW, 1),
                "sw_2" | "sw2" => GroupExpr::opaque(OpaqueSymbol::SW2, 1),
                "" => return Err(Error::Parse(format!("empty summand in {s:?}"))),
                _ => GroupExpr::finite(FinAbGroup::cyclic(parse_cyclic_token(&tok)?)),
            };
            out = out.direct_sum(&term);
        }
        Ok(out)
    }
}

impl Serialize for GroupExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn pairwise_gcd(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    FinAbGroup::from_cyclic_orders(
        a.factors
            .iter()
            .flat_map(|&x| b.factors.iter().map(move |&y| gcd(x, y))),
    )
}

/// `hom(A, B)`, using `hom(Z/m, Z/n) = Z/gcd(m, n)` biadditively.
pub fn hom_group(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    pairwise_gcd(a, b)
}

/// `Ext(A, B)`; same closed form as `hom` for finite groups.
pub fn ext_group(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    pairwise_gcd(a, b)
}

/// `Ext(A, C*)` vanishes because `C*` is divisible.
pub fn ext_into_circle(_a: &FinAbGroup) -> FinAbGroup {
    FinAbGroup::trivial()
}

pub fn tensor_group(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    pairwise_gcd(a, b)
}

pub fn tor_group(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    pairwise_gcd(a, b)
}

/// Pontryagin dual `hom(A, C*)`, isomorphic to `A`.
pub fn dual(a: &FinAbGroup) -> FinAbGroup {
    a.clone()
}

/// Elements of order at most two.
pub fn two_torsion(a: &FinAbGroup) -> FinAbGroup {
    FinAbGroup::elementary(2, a.two_rank())
}

/// Whitehead's universal quadratic group `Γ(A)`:
/// `Γ(Z/n) = Z/n` for odd `n`, `Z/2n` for even `n`, and
/// `Γ(A ⊕ B) = Γ(A) ⊕ Γ(B) ⊕ A ⊗ B`.
pub fn whitehead_gamma(a: &FinAbGroup) -> FinAbGroup {
    let f = a.invariant_factors();
    let mut orders: Vec<u64> = f.iter().map(|&d| if d % 2 == 0 { 2 * d } else { d }).collect();
    for i in 0..f.len() {
        for j in (i + 1)..f.len() {
            orders.push(gcd(f[i], f[j]));
        }
    }
    FinAbGroup::from_cyclic_orders(orders)
}

/// Codomain for quadratic functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadTarget {
    Z2,
    Circle,
}

/// Group of quadratic functions `q: E -> target` under pointwise product.
///
/// Cyclic and elementary groups use closed forms; anything else is
/// enumerated, subject to [`QUAD_BRUTE_FORCE_BUDGET`].
pub fn quad_group(e: &FinAbGroup, target: QuadTarget) -> Result<FinAbGroup> {
    if e.is_trivial() {
        return Ok(FinAbGroup::trivial());
    }
    if e.is_cyclic() {
        let n = e.exponent();
        return Ok(match target {
            QuadTarget::Circle if n.is_multiple_of(2) => FinAbGroup::cyclic(2 * n),
            QuadTarget::Circle => FinAbGroup::cyclic(n),
            QuadTarget::Z2 if n.is_multiple_of(2) => FinAbGroup::cyclic(2),
            QuadTarget::Z2 => FinAbGroup::trivial(),
        });
    }
    if e.is_elementary() {
        let p = e.exponent();
        let r = e.invariant_factors().len();
        let pairs = r * (r - 1) / 2;
        return Ok(match (target, p) {
            (QuadTarget::Circle, 2) => FinAbGroup::elementary(4, r).direct_sum(&FinAbGroup::elementary(2, pairs)),
            (QuadTarget::Circle, _) => FinAbGroup::elementary(p, r + pairs),
            (QuadTarget::Z2, 2) => FinAbGroup::elementary(2, r + pairs),
            (QuadTarget::Z2, _) => FinAbGroup::trivial(),
        });
    }
    if e.order() > QUAD_BRUTE_FORCE_BUDGET {
        return Err(Error::Budget(format!(
            "quadratic functions on {e} (order {} > {QUAD_BRUTE_FORCE_BUDGET})",
            e.order()
        )));
    }
    quad_group_enumerated(e, target)
}

/// Enumerates quadratic functions written additively in `Z/M`, with
/// `M = 2 * exponent(E)` for the circle (every value of a quadratic function
/// on `E` is such a root of unity) and `M = 2` for `Z/2`.
///
/// A candidate is `q(x) = sum_i x_i^2 q_i + sum_{i<j} x_i x_j b_ij`; it is kept
/// when it is well defined on `E`, which is checked on every element.
pub fn quad_group_enumerated(e: &FinAbGroup, target: QuadTarget) -> Result<FinAbGroup> {
    if e.order() > QUAD_BRUTE_FORCE_BUDGET {
        return Err(Error::Budget(format!("quadratic functions on {e}")));
    }
    let m = match target {
        QuadTarget::Circle => 2 * e.exponent(),
        QuadTarget::Z2 => 2,
    };
    let f = e.invariant_factors().to_vec();
    let r = f.len();
    let n_params = r + r * (r.saturating_sub(1)) / 2;
    let elements = e.elements()?;
    let eval = |params: &[u64], x: &[u64]| -> u64 {
        let mut v = 0u64;
        for i in 0..r {
            v += x[i] * x[i] % m * params[i];
        }
        let mut k = r;
        for i in 0..r {
            for j in (i + 1)..r {
                v += x[i] * x[j] % m * params[k];
                k += 1;
            }
        }
        v % m
    };
    let mut functions: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut params = vec![0u64; n_params];
    loop {
        let well_defined = elements.iter().all(|x| {
            let base = eval(&params, x);
            (0..r).all(|i| {
                let mut y = x.clone();
                y[i] += f[i];
                eval(&params, &y) == base
            })
        });
        if well_defined {
            functions.insert(elements.iter().map(|x| eval(&params, x)).collect());
        }
        // odometer over Z/m ^ n_params
        let mut idx = 0;
        loop {
            if idx == n_params {
                let orders: Vec<u64> = functions.iter().map(|t| additive_order(t, m)).collect();
                return Ok(FinAbGroup::from_element_orders(&orders));
            }
            params[idx] += 1;
            if params[idx] < m {
                break;
            }
            params[idx] = 0;
            idx += 1;
        }
    }
}

fn additive_order(values: &[u64], m: u64) -> u64 {
    values.iter().fold(1, |acc, &v| {
        let o = m / gcd(m, v);
        acc / gcd(acc, o) * o
    })
}

/// Cokernel `Z^cols / rowspace(matrix)` in invariant-factor form.
///
/// Rejects presentations whose cokernel is infinite.
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> Result<FinAbGroup> {
    let cols = matrix.first().map(Vec::len).unwrap_or(0);
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("relation matrix rows have different lengths".into()));
    }
    let diag = smith_diagonal(matrix);
    let nonzero: Vec<u64> = diag.iter().filter(|&&d| d != 0).map(|&d| d.unsigned_abs() as u64).collect();
    if nonzero.len() < cols {
        return Err(Error::InfiniteCokernel(cols - nonzero.len()));
    }
    Ok(FinAbGroup::from_cyclic_orders(nonzero))
}

/// Diagonal of a Smith form of `matrix` (not necessarily a divisibility chain).
fn smith_diagonal(matrix: &[Vec<i64>]) -> Vec<i128> {
    let rows = matrix.len();
    let cols = matrix.first().map(Vec::len).unwrap_or(0);
    let mut a: Vec<Vec<i128>> = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in (t + 1)..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in (t + 1)..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                break;
            }
        }
        diag.push(a[t][t]);
    }
    diag
}

/// Quotient of `expr` by the subgroup of its finite part generated by the
/// given coordinate vectors (against the invariant factors).
pub fn quotient_by_subgroup_image(expr: &GroupExpr, generators: &[Vec<i64>]) -> Result<GroupExpr> {
    if generators.is_empty() {
        return Ok(expr.clone());
    }
    let g = &expr.finite;
    let f = g.invariant_factors();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, &d) in f.iter().enumerate() {
        let mut r = vec![0; f.len()];
        r[i] = d as i64;
        rows.push(r);
    }
    for gen in generators {
        g.check_element(gen)?;
        rows.push(gen.clone());
    }
    let finite = if f.is_empty() { FinAbGroup::trivial() } else { smith_normal_form(&rows)? };
    Ok(GroupExpr { finite, circle_rank: expr.circle_rank, opaque: expr.opaque.clone() })
}

/// `G / V` for a subspace `V` of the 2-torsion `G[2]` of dimension `rank`,
/// when the isomorphism type does not depend on which subspace it is.
pub fn quotient_by_two_torsion_rank(g: &FinAbGroup, rank: usize) -> Option<FinAbGroup> {
    let exps = g.primary_exponents(2);
    let s = exps.len();
    assert!(rank <= s, "rank exceeds the 2-rank");
    let odd: Vec<u64> = g.invariant_factors().iter().map(|&d| d / p_part_of(d, 2)).collect();
    let odd = FinAbGroup::from_cyclic_orders(odd);
    let two_part: Vec<u64> = if rank == 0 {
        exps.iter().map(|&e| 1 << e).collect()
    } else if rank == s {
        exps.iter().map(|&e| 1 << (e - 1)).collect()
    } else if exps.iter().all(|&e| e == 1) {
        vec![2; s - rank]
    } else {
        return None;
    };
    Some(odd.direct_sum(&FinAbGroup::from_cyclic_orders(two_part)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(g("Z/2 x Z/4").invariant_factors(), &[2, 4]);
        assert_eq!(g("z/4 ⊕ Z/2").to_string(), "Z/2 x Z/4");
        assert_eq!(g("Z/2 x Z/3").invariant_factors(), &[6]);
        assert!(g("0").is_trivial());
        assert!(g("1").is_trivial());
        assert!("Z/0".parse::<FinAbGroup>().is_err());
        assert!("Q".parse::<FinAbGroup>().is_err());
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 4]]).unwrap(), g("Z/2 x Z/4"));
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 3]]).unwrap().invariant_factors(), &[6]);
        assert!(smith_normal_form(&[vec![1]]).unwrap().is_trivial());
        assert_eq!(smith_normal_form(&[vec![2, 4]]), Err(Error::InfiniteCokernel(1)));
        assert_eq!(smith_normal_form(&[vec![4, 6], vec![6, 4]]).unwrap(), g("Z/2 x Z/10"));
    }

    #[test]
    fn functor_examples() {
        assert_eq!(hom_group(&g("Z/4"), &g("Z/2")), g("Z/2"));
        assert!(hom_group(&g("Z/3"), &g("Z/2")).is_trivial());
        assert_eq!(hom_group(&g("Z/2 x Z/2"), &g("Z/2")), g("Z/2 x Z/2"));
        assert_eq!(ext_group(&g("Z/2"), &g("Z/2")), g("Z/2"));
        assert!(ext_group(&g("Z/5"), &g("Z/2")).is_trivial());
        assert_eq!(ext_group(&g("Z/4"), &g("Z/2 x Z/2")), g("Z/2 x Z/2"));
        assert_eq!(dual(&g("Z/6")), g("Z/6"));
        assert_eq!(two_torsion(&g("Z/4 x Z/3")), g("Z/2"));
        assert!(two_torsion(&g("Z/3")).is_trivial());
        assert_eq!(two_torsion(&g("Z/2 x Z/4")), g("Z/2 x Z/2"));
    }

    #[test]
    fn quad_examples() {
        assert_eq!(quad_group(&g("Z/2"), QuadTarget::Circle).unwrap(), g("Z/4"));
        assert!(quad_group(&g("0"), QuadTarget::Circle).unwrap().is_trivial());
        assert_eq!(quad_group(&g("Z/2"), QuadTarget::Z2).unwrap(), g("Z/2"));
        assert_eq!(quad_group(&g("Z/2 x Z/4"), QuadTarget::Circle).unwrap(), whitehead_gamma(&g("Z/2 x Z/4")));
        assert!(matches!(quad_group(&g("Z/4 x Z/32"), QuadTarget::Circle), Err(Error::Budget(_))));
    }

    #[test]
    fn quotients() {
        let z4 = GroupExpr::finite(g("Z/4"));
        assert_eq!(quotient_by_subgroup_image(&z4, &[vec![2]]).unwrap(), GroupExpr::finite(g("Z/2")));
        assert_eq!(quotient_by_subgroup_image(&z4, &[]).unwrap(), z4);
        let v = GroupExpr::finite(g("Z/2 x Z/2"));
        assert_eq!(quotient_by_subgroup_image(&v, &[vec![1, 1]]).unwrap(), GroupExpr::finite(g("Z/2")));
        assert!(matches!(quotient_by_subgroup_image(&v, &[vec![1]]), Err(Error::NotInGroup(_))));
        assert_eq!(quotient_by_two_torsion_rank(&g("Z/4"), 1), Some(g("Z/2")));
        assert_eq!(quotient_by_two_torsion_rank(&g("Z/2 x Z/2 x Z/3"), 1), Some(g("Z/6")));
        assert_eq!(quotient_by_two_torsion_rank(&g("Z/2 x Z/4"), 1), None);
    }

    #[test]
    fn opaque_terms() {
        let sw: GroupExpr = "SW".parse().unwrap();
        assert_eq!(sw.hom_to_z2().unwrap().to_string(), "SW_2");
        let e: GroupExpr = "C* x Z/4".parse().unwrap();
        assert_eq!(e.hom_to_z2().unwrap().to_string(), "Z/2");
        assert!(sw.require_finite("quotient").is_err());
        assert_eq!(sw.direct_sum(&e).to_string(), "C* x Z/4 x SW");
    }

    #[test]
    fn element_orders_round_trip() {
        for s in ["Z/2 x Z/4", "Z/12", "Z/2 x Z/2 x Z/6", "0"] {
            let grp = g(s);
            let orders: Vec<u64> = grp.elements().unwrap().iter().map(|x| grp.element_order(x)).collect();
            assert_eq!(FinAbGroup::from_element_orders(&orders), grp);
        }
    }
}
