//! Mod-2 cohomology of products of Eilenberg–MacLane spaces `K(Z/m, n)` as
//! truncated polynomial algebras on Serre generators, with the Steenrod
//! action computed from Adem relations, instability and the Cartan formula.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::abelian::FinAbGroup;
use crate::gf2::BitVec;
use crate::steenrod::{adem_normalize, excess, SteenrodMonomial, SteenrodWord};
use crate::{Error, Result};

pub const DEFAULT_CAP: u32 = 12;

/// One factor `K(Z/order, degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmFactor {
    pub order: u64,
    pub degree: u32,
}

impl EmFactor {
    /// `k` with `2^k` the 2-primary part of the order.
    pub fn two_exponent(&self) -> u32 {
        self.order.trailing_zeros()
    }
}

/// A finite product of Eilenberg–MacLane spaces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmSpace {
    factors: Vec<EmFactor>,
}

impl EmSpace {
    pub fn point() -> Self {
        Self::default()
    }

    pub fn new(factors: Vec<EmFactor>) -> Result<Self> {
        for f in &factors {
            if f.degree == 0 || f.order < 2 {
                return Err(Error::Unsupported(format!("factor K(Z/{}, {})", f.order, f.degree)));
            }
            if f.degree == 1 && f.two_exponent() >= 2 {
                return Err(Error::Unsupported(format!(
                    "K(Z/{}, 1) has non-polynomial mod-2 cohomology",
                    f.order
                )));
            }
        }
        Ok(EmSpace { factors })
    }

    /// `K(E, n)` split along the invariant factors of `E`.
    pub fn from_group(group: &FinAbGroup, degree: u32) -> Result<Self> {
        Self::new(group.invariant_factors().iter().map(|&order| EmFactor { order, degree }).collect())
    }

    pub fn factors(&self) -> &[EmFactor] {
        &self.factors
    }

    pub fn product(&self, other: &EmSpace) -> EmSpace {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        EmSpace { factors }
    }

    pub fn connectivity(&self) -> Option<u32> {
        self.factors.iter().filter(|f| f.two_exponent() > 0).map(|f| f.degree).min()
    }
}

impl fmt::Display for EmSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "pt");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("Z/{}[{}]", x.order, x.degree)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn admissible_sequences(max_degree: u32) -> Vec<Vec<u32>> {
    // built right to left: each new leading index is at least twice the old one
    fn extend(seq: &[u32], budget: u32, out: &mut Vec<Vec<u32>>) {
        let lo = seq.first().map_or(1, |&x| 2 * x);
        for first in lo..=budget {
            let mut next = vec![first];
            next.extend_from_slice(seq);
            out.push(next.clone());
            extend(&next, budget - first, out);
        }
    }
    let mut out = vec![Vec::new()];
    extend(&[], max_degree, &mut out);
    out
}

/// Serre generators of `H*(K(Z/order, n); Z/2)` up to degree `cap`, as the
/// operation applied to the fundamental class, with degrees.
pub fn serre_generators(order: u64, n: u32, cap: u32) -> Result<Vec<(SteenrodMonomial, u32)>> {
    let factor = EmFactor { order, degree: n };
    EmSpace::new(vec![factor])?;
    let k = factor.two_exponent();
    if k == 0 || cap < n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for seq in admissible_sequences(cap - n) {
        let plain = SteenrodMonomial::new(seq.clone(), None);
        if (k == 1 || seq.last() != Some(&1))
            && excess(&plain)? < n as i64 {
                out.push(plain.clone());
            }
        if k >= 2 && plain.degree() + 1 + n <= cap {
            let with_b = SteenrodMonomial::new(seq, Some(k));
            if with_b.is_admissible() && excess(&with_b)? < n as i64 {
                out.push(with_b);
            }
        }
    }
    out.sort();
    Ok(out.into_iter().map(|m| {
        let d = m.degree() + n;
        (m, d)
    }).collect())
}

/// A polynomial generator `Sq^I ι` of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub degree: u32,
    pub factor: usize,
    pub op: SteenrodMonomial,
}

fn iota_name(n: u32, factor: usize) -> String {
    format!("i{n}{}", "'".repeat(factor))
}

/// Monomial in the generators: sorted `(generator index, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<(u16, u16)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(idx: usize) -> Self {
        Monomial(vec![(idx as u16, 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(g, e)| (g as usize, e as u32))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, x)), Some(&(b, y))) if a == b => {
                    out.push((a, x + y));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, x)), Some(&(b, _))) if a < b => {
                    out.push((a, x));
                    i += 1;
                }
                (Some(_), Some(&(b, y))) => {
                    out.push((b, y));
                    j += 1;
                }
                (Some(&p), None) => {
                    out.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    out.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Splits off one copy of the first generator.
    fn split_first(&self) -> Option<(usize, Monomial)> {
        let (&(g, e), rest) = self.0.split_first()?;
        let mut tail = Vec::with_capacity(self.0.len());
        if e > 1 {
            tail.push((g, e - 1));
        }
        tail.extend_from_slice(rest);
        Some((g as usize, Monomial(tail)))
    }
}

/// A homogeneous F2-combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyClass {
    pub degree: u32,
    pub terms: BTreeSet<Monomial>,
}

impl PolyClass {
    pub fn zero(degree: u32) -> Self {
        PolyClass { degree, terms: BTreeSet::new() }
    }

    pub fn one() -> Self {
        PolyClass { degree: 0, terms: BTreeSet::from([Monomial::unit()]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&mut self, other: &PolyClass) -> Result<()> {
        if other.is_zero() {
            return Ok(());
        }
        if self.is_zero() {
            self.degree = other.degree;
        } else if self.degree != other.degree {
            return Err(Error::Inhomogeneous(format!(
                "adding classes of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        for m in &other.terms {
            self.toggle(m.clone());
        }
        Ok(())
    }

    pub fn mul(&self, other: &PolyClass) -> PolyClass {
        let mut out = PolyClass::zero(self.degree + other.degree);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }
}

/// `H*(X; Z/2)` truncated at `cap`.
pub struct EmAlgebra {
    space: EmSpace,
    cap: u32,
    generators: Vec<Generator>,
    basis: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    sq_memo: Mutex<HashMap<(u32, Monomial), PolyClass>>,
}

impl fmt::Debug for EmAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EmAlgebra").field("space", &self.space).field("cap", &self.cap).finish()
    }
}

impl EmAlgebra {
    pub fn new(space: EmSpace, cap: u32) -> Result<Self> {
        let mut generators = Vec::new();
        for (fi, f) in space.factors().iter().enumerate() {
            for (op, degree) in serre_generators(f.order, f.degree, cap)? {
                generators.push(Generator { degree, factor: fi, op });
            }
        }
        generators.sort();
        let mut basis: Vec<Vec<Monomial>> = vec![Vec::new(); cap as usize + 1];
        fn enumerate(gens: &[Generator], i: usize, deg: u32, cap: u32, cur: &mut Vec<(u16, u16)>, out: &mut [Vec<Monomial>]) {
            if i == gens.len() {
                out[deg as usize].push(Monomial(cur.clone()));
                return;
            }
            enumerate(gens, i + 1, deg, cap, cur, out);
            let mut e = 1;
            while deg + e * gens[i].degree <= cap {
                cur.push((i as u16, e as u16));
                enumerate(gens, i + 1, deg + e * gens[i].degree, cap, cur, out);
                cur.pop();
                e += 1;
            }
        }
        enumerate(&generators, 0, 0, cap, &mut Vec::new(), &mut basis);
        for b in basis.iter_mut() {
            b.sort();
        }
        let index = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        Ok(EmAlgebra { space, cap, generators, basis, index, sq_memo: Mutex::new(HashMap::new()) })
    }

    pub fn space(&self) -> &EmSpace {
        &self.space
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn basis(&self, degree: u32) -> &[Monomial] {
        self.basis.get(degree as usize).map_or(&[], Vec::as_slice)
    }

    /// Dimension of `H^d` for `d <= cap`.
    pub fn betti(&self, degree: u32) -> Result<usize> {
        self.check_cap(degree)?;
        Ok(self.basis[degree as usize].len())
    }

    pub fn poincare_series(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    fn check_cap(&self, degree: u32) -> Result<()> {
        if degree > self.cap {
            return Err(Error::CapExceeded { degree, cap: self.cap });
        }
        Ok(())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.powers().map(|(g, e)| self.generators[g].degree * e).sum()
    }

    /// Degree carried by the first `left_factors` factors.
    pub fn left_degree(&self, m: &Monomial, left_factors: usize) -> u32 {
        m.powers()
            .filter(|&(g, _)| self.generators[g].factor < left_factors)
            .map(|(g, e)| self.generators[g].degree * e)
            .sum()
    }

    /// The fundamental class of a factor, if it is visible mod 2.
    pub fn fundamental_class(&self, factor: usize) -> Option<PolyClass> {
        let g = self.generators.iter().position(|g| g.factor == factor && g.op.is_identity())?;
        Some(self.generator_class(g))
    }

    pub fn generator_class(&self, g: usize) -> PolyClass {
        PolyClass { degree: self.generators[g].degree, terms: BTreeSet::from([Monomial::generator(g)]) }
    }

    pub fn to_vector(&self, class: &PolyClass) -> Result<BitVec> {
        self.check_cap(class.degree)?;
        let idx = &self.index[class.degree as usize];
        let n = self.basis[class.degree as usize].len();
        let mut v = BitVec::zeros(n);
        for m in &class.terms {
            let i = idx.get(m).ok_or_else(|| Error::Inhomogeneous(format!("monomial not in degree {}", class.degree)))?;
            v.flip(*i);
        }
        Ok(v)
    }

    pub fn from_vector(&self, degree: u32, v: &BitVec) -> PolyClass {
        PolyClass { degree, terms: v.ones().map(|i| self.basis[degree as usize][i].clone()).collect() }
    }

    pub fn basis_class(&self, degree: u32, i: usize) -> PolyClass {
        PolyClass { degree, terms: BTreeSet::from([self.basis[degree as usize][i].clone()]) }
    }

    /// Evaluates an admissible operation on the fundamental class of a factor.
    fn eval_on_iota(&self, factor: usize, m: &SteenrodMonomial) -> Result<PolyClass> {
        let f = self.space.factors()[factor];
        let n = f.degree;
        let k = f.two_exponent();
        let deg = n + m.degree();
        self.check_cap(deg)?;
        if k == 0 {
            return Ok(PolyClass::zero(deg));
        }
        if let Some(b) = m.bockstein() {
            if b != k {
                return Err(Error::Unsupported(format!("b{b} applied to a Z/{} class", f.order)));
            }
        } else if k >= 2 && m.indices().last() == Some(&1) {
            // the mod-2 reduction of the integral Bockstein of a Z/2^k class vanishes
            return Ok(PolyClass::zero(deg));
        }
        let e = excess(m)?;
        if e > n as i64 {
            return Ok(PolyClass::zero(deg));
        }
        if e == n as i64 && !m.is_identity() {
            let tail = SteenrodMonomial::new(m.indices()[1..].to_vec(), m.bockstein());
            let y = self.eval_on_iota(factor, &tail)?;
            return Ok(y.mul(&y));
        }
        let g = self
            .generators
            .iter()
            .position(|g| g.factor == factor && &g.op == m)
            .ok_or_else(|| Error::DataConsistency(format!("{m} on factor {factor} is not a generator")))?;
        Ok(self.generator_class(g))
    }

    fn sq_generator(&self, a: u32, g: usize) -> Result<PolyClass> {
        let gen = &self.generators[g];
        let deg = gen.degree + a;
        if a == 0 {
            return Ok(self.generator_class(g));
        }
        if a > gen.degree {
            return Ok(PolyClass::zero(deg));
        }
        self.check_cap(deg)?;
        if a == gen.degree {
            let x = self.generator_class(g);
            return Ok(x.mul(&x));
        }
        let word = adem_normalize(&SteenrodWord::monomial(gen.op.prepend(a)));
        let mut out = PolyClass::zero(deg);
        for m in word.monomials() {
            out.add(&self.eval_on_iota(gen.factor, m)?)?;
        }
        Ok(out)
    }

    fn sq_monomial(&self, a: u32, m: &Monomial) -> Result<PolyClass> {
        let deg = self.monomial_degree(m) + a;
        if a == 0 {
            return Ok(PolyClass { degree: deg, terms: BTreeSet::from([m.clone()]) });
        }
        let Some((g, rest)) = m.split_first() else {
            return Ok(PolyClass::zero(deg));
        };
        self.check_cap(deg)?;
        let key = (a, m.clone());
        if let Some(hit) = self.sq_memo.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let mut out = PolyClass::zero(deg);
        for i in 0..=a {
            let left = self.sq_generator(i, g)?;
            if left.is_zero() {
                continue;
            }
            let right = self.sq_monomial(a - i, &rest)?;
            out.add(&left.mul(&right))?;
        }
        self.sq_memo.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// `Sq^a x`.
    pub fn sq(&self, a: u32, x: &PolyClass) -> Result<PolyClass> {
        let mut out = PolyClass::zero(x.degree + a);
        for m in &x.terms {
            out.add(&self.sq_monomial(a, m)?)?;
        }
        Ok(out)
    }

    /// Action of a homogeneous Steenrod word on a class.
    pub fn act(&self, op: &SteenrodWord, x: &PolyClass) -> Result<PolyClass> {
        let d = op.degree()?.unwrap_or(0);
        let mut out = PolyClass::zero(x.degree + d);
        for m in op.monomials() {
            if m.bockstein().is_some() {
                return Err(Error::Unsupported(format!("{m} acts only on fundamental classes")));
            }
            let mut y = x.clone();
            for &i in m.indices().iter().rev() {
                y = self.sq(i, &y)?;
            }
            out.add(&y)?;
        }
        Ok(out)
    }

    pub fn generator_name(&self, g: usize) -> String {
        let gen = &self.generators[g];
        let iota = iota_name(self.space.factors()[gen.factor].degree, gen.factor);
        if gen.op.is_identity() {
            iota
        } else {
            format!("{}({iota})", gen.op)
        }
    }

    pub fn monomial_name(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .powers()
            .map(|(g, e)| if e == 1 { self.generator_name(g) } else { format!("{}^{e}", self.generator_name(g)) })
            .collect();
        parts.join("*")
    }

    pub fn format_class(&self, x: &PolyClass) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<&Monomial> = x.terms.iter().collect();
        terms.sort();
        let parts: Vec<String> = terms.into_iter().map(|m| self.monomial_name(m)).collect();
        parts.join(" + ")
    }

    fn parse_factor(&self, tok: &str) -> Result<PolyClass> {
        let tok = tok.trim();
        if tok == "1" {
            return Ok(PolyClass::one());
        }
        if let Some((base, exp)) = tok.rsplit_once('^') {
            if !exp.is_empty() && exp.chars().all(|c| c.is_ascii_digit()) {
                let e: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                let x = self.parse_factor(base)?;
                let mut out = PolyClass::one();
                for _ in 0..e {
                    out = out.mul(&x);
                }
                self.check_cap(out.degree)?;
                return Ok(out);
            }
        }
        let (op, iota) = match tok.split_once('(') {
            Some((op, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {tok:?}")))?;
                (op.trim().parse::<SteenrodMonomial>()?, inner.trim())
            }
            None => (SteenrodMonomial::identity(), tok),
        };
        let (factor, degree) = self.parse_iota(iota)?;
        let f = self.space.factors()[factor];
        if degree != f.degree {
            return Err(Error::Parse(format!("{iota} does not match factor of degree {}", f.degree)));
        }
        let op = match op.bockstein() {
            Some(b) if b != f.two_exponent() => {
                return Err(Error::Parse(format!("b{b} does not match Z/{}", f.order)));
            }
            _ => op,
        };
        let word = adem_normalize(&SteenrodWord::monomial(op.clone()));
        let mut out = PolyClass::zero(f.degree + op.degree());
        for m in word.monomials() {
            out.add(&self.eval_on_iota(factor, m)?)?;
        }
        Ok(out)
    }

    fn parse_iota(&self, s: &str) -> Result<(usize, u32)> {
        let body = s
            .strip_prefix('i')
            .or_else(|| s.strip_prefix('ι'))
            .ok_or_else(|| Error::Parse(format!("expected a fundamental class like i2, got {s:?}")))?;
        let digits: String = body.chars().take_while(char::is_ascii_digit).collect();
        let primes = &body[digits.len()..];
        if !primes.chars().all(|c| c == '\'' || c == '′') {
            return Err(Error::Parse(format!("bad fundamental class {s:?}")));
        }
        let degree: u32 = digits.parse().map_err(|_| Error::Parse(format!("bad fundamental class {s:?}")))?;
        let factor = primes.chars().count();
        if factor >= self.space.factors().len() {
            return Err(Error::UnknownName(format!("{s}: space has {} factors", self.space.factors().len())));
        }
        Ok((factor, degree))
    }

    /// Parses `"i2^2 + Sq1(i2)*b2(i2')"`.
    pub fn parse_class(&self, s: &str) -> Result<PolyClass> {
        let s = s.trim();
        if s == "0" {
            return Ok(PolyClass::zero(0));
        }
        let mut out = PolyClass::zero(0);
        for term in s.split('+') {
            let mut prod = PolyClass::one();
            for f in term.split(['*', '·']) {
                prod = prod.mul(&self.parse_factor(f)?);
            }
            self.check_cap(prod.degree)?;
            out.add(&prod)?;
        }
        Ok(out)
    }

    /// Basis of `H~^d(X ∧ Y)` inside this algebra, where `X` is the first
    /// `left_factors` factors.
    pub fn smash_basis(&self, left_factors: usize, degree: u32) -> Result<Vec<Monomial>> {
        self.check_cap(degree)?;
        Ok(self.basis[degree as usize]
            .iter()
            .filter(|m| {
                let l = self.left_degree(m, left_factors);
                l > 0 && l < degree
            })
            .cloned()
            .collect())
    }

    /// `Sq^i` on every basis monomial up to `up_to`, for `1 <= i` with the
    /// result inside the cap.
    pub fn sq_action_table(&self, up_to: u32) -> Result<Vec<SqEntry>> {
        let mut out = Vec::new();
        for d in 0..=up_to.min(self.cap) {
            for m in &self.basis[d as usize] {
                let x = PolyClass { degree: d, terms: BTreeSet::from([m.clone()]) };
                for i in 1..=d.min(self.cap - d) {
                    let y = self.sq(i, &x)?;
                    out.push(SqEntry { source: self.format_class(&x), op: i, image: self.format_class(&y) });
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqEntry {
    pub source: String,
    pub op: u32,
    pub image: String,
}

/// Poincaré series of `H*(space; Z/2)` through `cap`.
pub fn poincare_series(space: &EmSpace, cap: u32) -> Result<Vec<usize>> {
    Ok(EmAlgebra::new(space.clone(), cap)?.poincare_series())
}

/// Basis of `H~^d(X ∧ Y; Z/2)` printed as tensors `x⊗y`.
pub fn reduced_smash_basis(x: &EmSpace, y: &EmSpace, degree: u32, cap: u32) -> Result<Vec<String>> {
    let alg = EmAlgebra::new(x.product(y), cap.max(degree))?;
    let left = x.factors().len();
    let mut out = Vec::new();
    for m in alg.smash_basis(left, degree)? {
        let (l, r): (Vec<(usize, u32)>, Vec<(usize, u32)>) =
            m.powers().partition(|&(g, _)| alg.generators()[g].factor < left);
        let name = |v: Vec<(usize, u32)>| {
            alg.monomial_name(&Monomial(v.into_iter().map(|(g, e)| (g as u16, e as u16)).collect()))
        };
        out.push(format!("{}⊗{}", name(l), name(r)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(factors: &[(u64, u32)]) -> EmSpace {
        EmSpace::new(factors.iter().map(|&(order, degree)| EmFactor { order, degree }).collect()).unwrap()
    }

    fn names(order: u64, n: u32, cap: u32) -> Vec<(String, u32)> {
        serre_generators(order, n, cap).unwrap().into_iter().map(|(m, d)| (m.to_string(), d)).collect()
    }

    #[test]
    fn generator_lists() {
        let g = names(2, 2, 9);
        let degs: Vec<u32> = g.iter().map(|x| x.1).collect();
        assert_eq!(degs, [2, 3, 5, 9]);
        assert_eq!(g[3].0, "Sq4 Sq2 Sq1");
        assert_eq!(names(4, 2, 5), [("1".into(), 2), ("b2".into(), 3), ("Sq2 b2".into(), 5)]);
        assert_eq!(
            names(2, 4, 7),
            [("1".into(), 4), ("Sq1".into(), 5), ("Sq2".into(), 6), ("Sq2 Sq1".into(), 7), ("Sq3".into(), 7)]
        );
        assert!(names(3, 2, 9).is_empty());
        assert!(serre_generators(4, 1, 5).is_err());
    }

    #[test]
    fn series() {
        assert_eq!(poincare_series(&space(&[(2, 2)]), 7).unwrap(), [1, 0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(poincare_series(&space(&[(3, 2)]), 7).unwrap(), [1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(poincare_series(&space(&[(2, 2), (2, 2)]), 5).unwrap()[5], 6);
    }

    #[test]
    fn actions() {
        let alg = EmAlgebra::new(space(&[(2, 2)]), 12).unwrap();
        let i = alg.parse_class("i2").unwrap();
        assert_eq!(alg.format_class(&alg.sq(2, &i).unwrap()), "i2^2");
        assert!(alg.sq(3, &i).unwrap().is_zero());
        let s1 = alg.parse_class("Sq1(i2)").unwrap();
        assert_eq!(alg.format_class(&alg.sq(2, &s1).unwrap()), "Sq2 Sq1(i2)");
        let x = alg.parse_class("i2*Sq1(i2) + Sq2 Sq1(i2)").unwrap();
        assert!(alg.sq(1, &x).unwrap().is_zero());

        let z4 = EmAlgebra::new(space(&[(4, 2)]), 12).unwrap();
        let j = z4.parse_class("i2").unwrap();
        assert!(z4.sq(1, &j).unwrap().is_zero());
        let b = z4.parse_class("b2(i2)").unwrap();
        assert_eq!(z4.format_class(&z4.sq(2, &b).unwrap()), "Sq2 b2(i2)");
    }

    #[test]
    fn cartan_on_product() {
        let alg = EmAlgebra::new(space(&[(2, 2), (2, 2)]), 12).unwrap();
        let x = alg.parse_class("i2*i2'").unwrap();
        let lhs = alg.sq(2, &x).unwrap();
        let rhs = alg.parse_class("i2^2*i2' + Sq1(i2)*Sq1(i2') + i2*i2'^2").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_round_trip() {
        let alg = EmAlgebra::new(space(&[(4, 2), (2, 4)]), 12).unwrap();
        for s in ["i2*b2(i2) + Sq2 b2(i2)", "Sq2 b2(i2)*i4'", "Sq2 Sq1(i4')"] {
            let x = alg.parse_class(s).unwrap();
            assert_eq!(alg.parse_class(&alg.format_class(&x)).unwrap(), x);
        }
        assert!(alg.parse_class("i2 + i2^2").is_err());
        assert!(alg.parse_class("i3").is_err());
        assert!(matches!(alg.parse_class("i2^7"), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn smash_bases() {
        let z2 = space(&[(2, 2)]);
        assert_eq!(reduced_smash_basis(&z2, &z2, 5, 12).unwrap(), ["i2⊗Sq1(i2')", "Sq1(i2)⊗i2'"]);
        assert!(reduced_smash_basis(&z2, &z2, 3, 12).unwrap().is_empty());
        let z4 = space(&[(4, 2)]);
        assert_eq!(reduced_smash_basis(&z4, &z4, 5, 12).unwrap(), ["i2⊗b2(i2')", "b2(i2)⊗i2'"]);
    }
}
