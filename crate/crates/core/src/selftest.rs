//! Acceptance checks, shared by `sfcond selftest` and the `acceptance` test
//! target. Each check returns a verdict line plus detail.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::abelian::{
    dual, ext_group, hom_group, quad_group, quad_group_enumerated, two_torsion, whitehead_gamma, FinAbGroup,
    QuadTarget,
};
use crate::ahss::{apply_d2, assemble_e2, run, smash_submodule, AhssConfig, Declaration, Verdict};
use crate::coefficients::{circle_row, spectrum, SpacePart, SpectrumName};
use crate::condense::{self, Acting, IdentityComponent, Level, Pi0, SkeletalCategory, Statistic};
use crate::em_cohomology::{EmAlgebra, EmFactor, EmSpace, PolyClass};
use crate::steenrod::{adem_normalize, margolis_homology, Margolis, SteenrodMonomial, SteenrodWord};
use crate::Result;

/// Wall-clock limits per criterion.
pub const LIMIT_PER_K: Duration = Duration::from_secs(1);
pub const LIMIT_TWISTED: Duration = Duration::from_secs(1);
pub const LIMIT_SH7: Duration = Duration::from_secs(2);
pub const LIMIT_PROPERTIES: Duration = Duration::from_secs(30);

/// Margolis window checked for the smash classes.
pub const MARGOLIS_WINDOW: (i32, i32) = (4, 9);

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub detail: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let first = self.detail.iter().find(|d| d.starts_with("FAIL")).or(self.detail.first());
        format!(
            "criterion {} {} [{} ms] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed_ms,
            self.name,
            first.map_or("", String::as_str)
        )
    }
}

struct Checker {
    ok: bool,
    detail: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { ok: true, detail: Vec::new() }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if cond {
            self.detail.push(what);
        } else {
            self.ok = false;
            self.detail.push(format!("FAIL {what}"));
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.check(false, format!("{what}: {e}"));
                None
            }
        }
    }

    fn timed(&mut self, start: Instant, limit: Duration, what: &str) {
        let t = start.elapsed();
        self.check(t < limit, format!("{what} took {} ms (limit {} ms)", t.as_millis(), limit.as_millis()));
    }
}

fn finish(id: u8, name: &str, start: Instant, c: Checker) -> CriterionResult {
    CriterionResult { id, name: name.into(), passed: c.ok, elapsed_ms: start.elapsed().as_millis(), detail: c.detail }
}

fn em(order: u64, degree: u32) -> EmSpace {
    EmSpace::new(vec![EmFactor { order, degree }]).expect("valid factor")
}

fn verdict(space: EmSpace, name: SpectrumName, n: u32, decl: &[Declaration]) -> Result<Verdict> {
    let config = AhssConfig::new(space, SpacePart::Full, spectrum(name), n);
    Ok(run(config, decl, n)?.1.verdict)
}

pub fn criterion_1() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let d5 = Declaration { r: 5, source: (0, 4), rank: 0 };
    for k in 1..=3u32 {
        let t = Instant::now();
        if let Some(v) = c.result(verdict(em(1 << k, 2), SpectrumName::SW, 5, &[d5]), "ahss") {
            c.check(v.is_exact_zero(), format!("SW^5(Z/{}[2]) = {v}", 1u64 << k));
        }
        c.timed(t, LIMIT_PER_K, &format!("k = {k}"));
    }
    finish(1, "SW^5(Z/2^k[2]) = 0", start, c)
}

pub fn criterion_2() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let decl = [Declaration { r: 3, source: (2, 2), rank: 0 }, Declaration { r: 5, source: (0, 4), rank: 0 }];
    if let Some(v) = c.result(verdict(em(2, 2), SpectrumName::SWTwisted, 5, &decl), "twisted ahss") {
        c.check(v == Verdict::Exact { group: "Z/2".into() }, format!("W^5(pt) = {v}"));
    }
    let z2 = FinAbGroup::cyclic(2);
    let quad = c.result(quad_group(&z2, QuadTarget::Circle), "quad");
    c.check(quad.as_ref() == Some(&FinAbGroup::cyclic(4)), format!("quad(Z/2, C*) = {quad:?}"));
    let config = AhssConfig::new(em(2, 2), SpacePart::Full, spectrum(SpectrumName::SWTwisted), 5);
    if let Some(e2) = c.result(assemble_e2(config), "assemble") {
        let entry = e2.label((4, 0));
        c.check(quad.is_some_and(|q| entry == q.to_string()), format!("E2 (4,0) = {entry}"));
        if let Some(e3) = c.result(apply_d2(&e2), "d2") {
            c.check(e3.label((4, 0)) == "Z/4", format!("E3 (4,0) = {}", e3.label((4, 0))));
        }
    }
    c.timed(start, LIMIT_TWISTED, "twisted run");
    finish(2, "W^5(pt) = Z/2", start, c)
}

pub fn criterion_3() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    for k in 1..=2u32 {
        if let Some(v) = c.result(verdict(em(1 << k, 4), SpectrumName::SH, 7, &[]), "ahss") {
            c.check(v.is_exact_zero(), format!("SH^7(Z/{}[4]) = {v}", 1u64 << k));
        }
    }
    let z2 = FinAbGroup::cyclic(2);
    if let Some(split) = c.result(
        crate::ahss::product_split(&z2, &z2, 4, &spectrum(SpectrumName::SH), &[], 7),
        "product split",
    ) {
        for s in &split.summands {
            c.check(s.verdict.is_exact_zero() || s.summand == "pt", format!("{}: {}", s.summand, s.verdict));
        }
        c.check(split.combined.is_exact_zero(), format!("SH^7(Z/2 x Z/2[4]) = {}", split.combined));
    }
    let xy = em(2, 4).product(&em(2, 4));
    if let Some(alg) = c.result(EmAlgebra::new(xy, 8), "algebra") {
        let first = (0..=8).find(|&d| alg.smash_basis(1, d).is_ok_and(|b| !b.is_empty()));
        c.check(first == Some(8), format!("smash summand first nonzero in degree {first:?}"));
    }
    c.timed(start, LIMIT_SH7, "SH^7 runs");
    finish(3, "SH^7(E[4]) = 0", start, c)
}

pub fn criterion_4() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    for name in ["Z/2", "Z/4", "Z/2 x Z/4", "Z/6", "Z/3"] {
        let e: FinAbGroup = name.parse().expect("literal group");
        let expected = dual(&two_torsion(&e));
        if let Some(v) = c.result(condense::obstruction_verdict(&e, Statistic::Bosonic, Level::Symmetric), "verdict") {
            let reported = v.obstruction_group.unwrap_or_default();
            c.check(reported == expected.to_string(), format!("E = {e}: obstruction group {reported}"));
        }
        if let Some(row) = c.result(circle_row(&e, 4, 7), "circle row") {
            let h7 = row.entry(7).ok().and_then(|x| x.value.as_group_expr());
            c.check(
                h7.as_ref().is_some_and(|g| g.is_finite() && g.finite == expected),
                format!("E = {e}: H^7(E[4]; C*) = {}", h7.map_or("?".into(), |g| g.to_string())),
            );
        }
    }
    finish(4, "bosonic symmetric obstruction = dual(E_2)", start, c)
}

pub fn criterion_5() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let xy = em(2, 2).product(&em(2, 2));
    if let Some(alg) = c.result(EmAlgebra::new(xy, 12), "algebra") {
        if let Some(basis) = c.result(alg.smash_basis(1, 5), "smash basis") {
            c.check(basis.len() == 2, format!("dim H~^5(smash; Z/2) = {}", basis.len()));
            let (lo, hi) = MARGOLIS_WINDOW;
            for m in &basis {
                let name = alg.monomial_name(m);
                let Some(module) = c.result(smash_submodule(&alg, m), "submodule") else { continue };
                // one free A(1) generator spans 8 classes
                c.check(module.dim() == 8, format!("{name}: A(1)-submodule of dimension {}", module.dim()));
                for q in [Margolis::Q0, Margolis::Q1] {
                    if let Some(h) = c.result(margolis_homology(&module, q), "margolis") {
                        c.check(h.vanishes_in(lo, hi), format!("{name}: {q:?} homology vanishes in [{lo}, {hi}]"));
                    }
                }
            }
        }
    }
    finish(5, "smash classes in degree 5", start, c)
}

pub fn criterion_6() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let z4 = FinAbGroup::cyclic(4);
    let cat = SkeletalCategory::strongly_fusion(z4.clone(), Statistic::Bosonic, Level::Fusion);
    if let Some(out) = c.result(
        Acting::parse_subgroup("Z/2", &z4).and_then(|h| condense::condense_group_algebra(&cat, &h, false)),
        "condense Vec[Z/2]",
    ) {
        c.check(out.components() == 2, format!("2Vec[Z/4] / Vec[Z/2]: {} components", out.components()));
    }
    if let Some(braided) = c.result("braided; pi0=Z/2; id=2Rep(S3)".parse::<SkeletalCategory>(), "descriptor") {
        if let Some(out) = c.result(condense::condense_phi(&braided), "condense phi") {
            c.check(out.is_strongly_fusion(), format!("phi on braided 2Rep(S3): {out}"));
        }
    }
    let e: FinAbGroup = "Z/2 x Z/4".parse().expect("literal group");
    let sym = SkeletalCategory::new(
        Pi0::Group { group: e.clone() },
        IdentityComponent::TwoRepZ { group: "Z/2".into(), order: Some(2) },
        Statistic::Fermionic,
        Level::Symmetric,
    );
    let end = sym
        .and_then(|s| condense::condense_phi(&s))
        .and_then(|s| Ok((s.clone(), Acting::parse_subgroup("all", &e)?)))
        .and_then(|(s, h)| condense::condense_group_algebra(&s, &h, true));
    if let Some(end) = c.result(end, "symmetric fermionic pipeline") {
        c.check(
            end.identity == IdentityComponent::TwoSVec && end.components() == 1,
            format!("symmetric fermionic pipeline ends at {end}"),
        );
    }
    finish(6, "condensation bookkeeping", start, c)
}

/// `C(n, k) mod 2` by Lucas.
fn binom_odd(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (k & n) == k
}

fn adem_oracle(a: u32, b: u32) -> SteenrodWord {
    let mut w = SteenrodWord::zero();
    for j in 0..=a / 2 {
        if binom_odd(b as i64 - 1 - j as i64, a as i64 - 2 * j as i64) {
            w.toggle(SteenrodMonomial::new(vec![a + b - j, j], None));
        }
    }
    w
}

fn adem_suite(c: &mut Checker) {
    let mut count = 0;
    for b in 1..=10u32 {
        for a in 1..2 * b {
            let word = SteenrodWord::monomial(SteenrodMonomial::new(vec![a, b], None));
            let n = adem_normalize(&word);
            let ok = n == adem_oracle(a, b) && adem_normalize(&n) == n && n.is_admissible();
            if !ok {
                c.check(false, format!("Sq{a} Sq{b} -> {n}"));
            }
            count += 1;
        }
    }
    c.check(true, format!("Adem: {count} products agree with the Lucas oracle"));
}

fn cartan_suite(c: &mut Checker) {
    let space = em(2, 2).product(&em(4, 3));
    let Some(alg) = c.result(EmAlgebra::new(space, 12), "algebra") else { return };
    let mut count = 0;
    for d1 in 1..=11 {
        for d2 in 1..=(12 - d1) {
            for x in (0..alg.basis(d1).len()).map(|i| alg.basis_class(d1, i)) {
                for y in (0..alg.basis(d2).len()).map(|i| alg.basis_class(d2, i)) {
                    for k in 0..=(12 - d1 - d2).min(d1 + d2) {
                        let lhs = alg.sq(k, &x.mul(&y));
                        let mut rhs = PolyClass::zero(d1 + d2 + k);
                        let mut ok = true;
                        for i in 0..=k {
                            match (alg.sq(i, &x), alg.sq(k - i, &y)) {
                                (Ok(a), Ok(b)) => ok &= rhs.add(&a.mul(&b)).is_ok(),
                                _ => ok = false,
                            }
                        }
                        if !ok || lhs.as_ref().ok() != Some(&rhs) {
                            c.check(false, format!("Cartan fails for Sq{k} on a degree ({d1},{d2}) product"));
                            return;
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    c.check(true, format!("Cartan: {count} products to degree 12"));
}

fn d2_suite(c: &mut Checker) {
    let runs: [(EmSpace, SpectrumName, u32); 7] = [
        (em(2, 2), SpectrumName::SW, 7),
        (em(4, 2), SpectrumName::SW, 7),
        (em(8, 2), SpectrumName::SW, 7),
        (em(2, 2), SpectrumName::SWTwisted, 7),
        (em(2, 4), SpectrumName::SH, 7),
        (em(4, 4), SpectrumName::SH, 7),
        (em(2, 2).product(&em(2, 2)), SpectrumName::SH, 7),
    ];
    let mut count = 0;
    for (space, name, t) in runs {
        let label = format!("{space} {name}");
        let config = AhssConfig::new(space, SpacePart::Full, spectrum(name), t);
        let Some(e2) = c.result(assemble_e2(config), &label) else { continue };
        let Some(e3) = c.result(apply_d2(&e2), &label) else { continue };
        for i in 0..=t {
            for j in 0..=(t - i) {
                if let (Some(a), Some(b)) = (e2.dimension((i, j)), e3.dimension((i, j))) {
                    if b > a {
                        c.check(false, format!("{label}: ({i},{j}) grew from {a} to {b}"));
                    }
                }
            }
        }
        count += 1;
    }
    c.check(true, format!("d2∘d2 = 0 and monotone on {count} assembled pages"));
}

/// All groups of order at most `n` in invariant-factor form.
pub fn groups_up_to(n: u64) -> Vec<FinAbGroup> {
    fn chains(prev: u64, budget: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(acc.clone());
        // invariant factors d1 | d2 | ...; extend by a multiple of the last one
        let mut d = prev;
        while d <= budget {
            if d >= 2 && (acc.is_empty() || d.is_multiple_of(acc[acc.len() - 1])) {
                acc.push(d);
                chains(d, budget / d, acc, out);
                acc.pop();
            }
            d += 1;
        }
    }
    let mut raw = Vec::new();
    chains(2, n, &mut Vec::new(), &mut raw);
    let set: BTreeSet<Vec<u64>> = raw.into_iter().collect();
    set.into_iter().map(FinAbGroup::from_cyclic_orders).collect()
}

fn element_order(factors: &[u64], x: &[u64]) -> u64 {
    factors.iter().zip(x).fold(1, |acc, (&d, &xi)| {
        let o = d / gcd(d, xi);
        acc / gcd(acc, o) * o
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `hom(Z/d, B)` as the `d`-torsion of `B`, by enumeration.
fn torsion_enumerated(b: &FinAbGroup, d: u64) -> Result<FinAbGroup> {
    let f = b.invariant_factors();
    let orders: Vec<u64> = b.elements()?.iter().map(|x| element_order(f, x)).filter(|o| d.is_multiple_of(*o)).collect();
    Ok(FinAbGroup::from_element_orders(&orders))
}

/// `Ext(Z/d, B) = B / dB`, by enumerating cosets.
fn cotorsion_enumerated(b: &FinAbGroup, d: u64) -> Result<FinAbGroup> {
    let f = b.invariant_factors().to_vec();
    let elems = b.elements()?;
    let scale = |x: &[u64], k: u64| -> Vec<u64> { x.iter().zip(&f).map(|(&xi, &m)| xi * k % m).collect() };
    let db: BTreeSet<Vec<u64>> = elems.iter().map(|x| scale(x, d)).collect();
    let add = |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().zip(y).zip(&f).map(|((a, b), m)| (a + b) % m).collect() };
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut orders = Vec::new();
    for x in &elems {
        let rep = db.iter().map(|s| add(x, s)).min().expect("dB contains 0");
        if !seen.insert(rep) {
            continue;
        }
        let mut k = 1;
        while !db.contains(&scale(x, k)) {
            k += 1;
        }
        orders.push(k);
    }
    Ok(FinAbGroup::from_element_orders(&orders))
}

fn sum_over_factors(a: &FinAbGroup, f: impl Fn(u64) -> Result<FinAbGroup>) -> Result<FinAbGroup> {
    a.invariant_factors().iter().try_fold(FinAbGroup::trivial(), |acc, &d| Ok(acc.direct_sum(&f(d)?)))
}

fn group_suite(c: &mut Checker) {
    let groups = groups_up_to(16);
    let mut pairs = 0;
    for a in &groups {
        for b in &groups {
            let hom = c.result(sum_over_factors(a, |d| torsion_enumerated(b, d)), "hom enumeration");
            let ext = c.result(sum_over_factors(a, |d| cotorsion_enumerated(b, d)), "ext enumeration");
            if hom.as_ref() != Some(&hom_group(a, b)) || ext.as_ref() != Some(&ext_group(a, b)) {
                c.check(false, format!("hom/Ext({a}, {b}) disagree with enumeration"));
            }
            pairs += 1;
        }
    }
    c.check(true, format!("hom/Ext: {pairs} pairs of groups of order <= 16"));
    let mut quads = 0;
    for e in &groups {
        for target in [QuadTarget::Circle, QuadTarget::Z2] {
            let closed = match target {
                QuadTarget::Circle => whitehead_gamma(e),
                QuadTarget::Z2 => hom_group(&whitehead_gamma(e), &FinAbGroup::cyclic(2)),
            };
            let brute = c.result(quad_group_enumerated(e, target), "quad enumeration");
            let fast = c.result(quad_group(e, target), "quad");
            if brute.as_ref() != Some(&closed) || fast.as_ref() != Some(&closed) {
                c.check(false, format!("Quad({e}, {target:?}): {brute:?} vs {closed}"));
            }
            quads += 1;
        }
    }
    c.check(true, format!("Quad: {quads} cases agree with enumeration"));
}

fn poincare_suite(c: &mut Checker) {
    let spaces = [em(2, 2), em(4, 2), em(2, 3), em(3, 2), em(8, 4)];
    let cap = 12;
    let mut count = 0;
    for x in &spaces {
        for y in &spaces {
            let (Some(px), Some(py), Some(pxy)) = (
                c.result(crate::em_cohomology::poincare_series(x, cap), "series"),
                c.result(crate::em_cohomology::poincare_series(y, cap), "series"),
                c.result(crate::em_cohomology::poincare_series(&x.product(y), cap), "series"),
            ) else {
                continue;
            };
            let conv: Vec<usize> = (0..=cap as usize).map(|d| (0..=d).map(|i| px[i] * py[d - i]).sum()).collect();
            if conv != pxy {
                c.check(false, format!("Poincaré series of {x} x {y}"));
            }
            count += 1;
        }
    }
    c.check(true, format!("Poincaré convolution: {count} products"));
}

pub fn criterion_7() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    adem_suite(&mut c);
    cartan_suite(&mut c);
    d2_suite(&mut c);
    group_suite(&mut c);
    poincare_suite(&mut c);
    c.timed(start, LIMIT_PROPERTIES, "property suites");
    finish(7, "property suites", start, c)
}

pub fn run_all() -> Vec<CriterionResult> {
    vec![criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_census() {
        // number of abelian groups of order n, summed over 1..=16
        let counts = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5];
        assert_eq!(groups_up_to(16).len(), counts.iter().sum::<usize>());
    }

    #[test]
    fn lucas() {
        assert!(binom_odd(4, 0));
        assert!(!binom_odd(4, 2));
        assert!(binom_odd(5, 1));
        assert!(!binom_odd(-1, 0));
    }
}
