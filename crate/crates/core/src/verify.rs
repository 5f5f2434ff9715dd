//! Verification suites over exhaustive and randomized case sets.
//!
//! Each suite runs a list of named checks and reports, per check, how many
//! cases were examined, how many failed, and a description of the first
//! failure.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::Result;
use crate::factorization::{
    align, l_factorize, r_factorize, substitution_chain, verify_lemma5, WordHomomorphism,
};
use crate::monoid::{enumerate_monoids, Element, FiniteMonoid};
use crate::omega::{check_lemma3, check_lemma4, in_l, in_r, in_w};
use crate::words::{
    build_quotient, content, definition, equiv, l_equiv, r_equiv, split_first, split_last,
    Alphabet, Letter, Mode, PairGenerator, Word, DEFAULT_CLASS_CAP,
};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<CheckResult>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: checks.iter().all(CheckResult::passed),
            checks,
            notes: Vec::new(),
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Monoids of every order up to `max_order`, with their counts per order.
pub fn small_monoids(max_order: usize) -> Result<(Vec<FiniteMonoid>, Vec<usize>)> {
    let mut all = Vec::new();
    let mut counts = Vec::new();
    for k in 1..=max_order {
        let ms = enumerate_monoids(k, max_order.max(4))?;
        counts.push(ms.len());
        all.extend(ms);
    }
    Ok((all, counts))
}

/// Variety characterizations and the R/L lemmas over all small monoids.
pub fn lemmas_suite(max_order: usize) -> Result<SuiteReport> {
    let (monoids, counts) = small_monoids(max_order)?;
    let mut r_eq = CheckResult::new("r-trivial iff in R");
    let mut l_eq = CheckResult::new("l-trivial iff in L");
    let mut incl = CheckResult::new("R or L implies W");
    let mut lemma3 = CheckResult::new("substitution rule in W");
    let mut lemma4 = CheckResult::new("R/L propagation in W");
    let mut aperiodic = CheckResult::new("W monoids are aperiodic");
    let mut enumeration = CheckResult::new("enumeration counts");
    enumeration.record(true, String::new);
    enumeration.cases = counts.iter().sum::<usize>() as u64;
    if counts.len() >= 4 && counts[..4] != [1, 2, 7, 35] {
        enumeration.failures = 1;
        enumeration.first_failure = Some(format!("counts {counts:?}"));
    }

    for (idx, m) in monoids.iter().enumerate() {
        let (ir, il, iw) = (in_r(m)?, in_l(m)?, in_w(m)?);
        let name = || format!("monoid #{idx} (order {}): {:?}", m.size(), m.rows());
        r_eq.record(m.is_r_trivial() == ir, name);
        l_eq.record(m.is_l_trivial() == il, name);
        incl.record(!(ir || il) || iw, name);
        if iw {
            let v3 = check_lemma3(m);
            lemma3.record(v3.is_empty(), || format!("{} with {:?}", name(), v3[0]));
            let v4 = check_lemma4(m);
            lemma4.record(v4.is_empty(), || format!("{} with {:?}", name(), v4[0]));
            aperiodic.record(m.is_aperiodic(), name);
        }
    }
    let mut checks = vec![enumeration, r_eq, l_eq, incl, lemma3, lemma4, aperiodic];
    checks[0].name = format!("enumeration counts {counts:?}");
    Ok(SuiteReport::new("lemmas", checks))
}

/// Every word over `0..alphabet_size` of length at most `max_len`.
pub fn all_words(alphabet_size: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..alphabet_size as Letter {
                let mut x = w.clone();
                x.push(a);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn random_word(rng: &mut StdRng, alphabet_size: usize, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    Word(
        (0..len)
            .map(|_| rng.gen_range(0..alphabet_size) as Letter)
            .collect(),
    )
}

/// Parameters of [`congruence_suite`].
#[derive(Clone, Copy, Debug)]
pub struct CongruenceParams {
    /// Words up to this length are compared against the definition.
    pub oracle_length: usize,
    pub lemma1_instances: usize,
    pub pairs: usize,
    pub seed: u64,
}

impl Default for CongruenceParams {
    fn default() -> Self {
        CongruenceParams {
            oracle_length: 6,
            lemma1_instances: 1000,
            pairs: 1000,
            seed: 2012,
        }
    }
}

/// Signature engine against the definition, the power and `(xy)^(n+1)x`
/// collapses, the quotient monoids, and the congruence laws.
pub fn congruence_suite(params: CongruenceParams) -> Result<SuiteReport> {
    let mut rng = StdRng::seed_from_u64(params.seed);
    let mut oracle = CheckResult::new("signatures agree with the definition");
    for size in 1..=2 {
        let words = all_words(size, params.oracle_length);
        for n in 0..=2 {
            for u in &words {
                for v in &words {
                    let ok = r_equiv(u, v, n) == definition::r_equiv(u, v, n);
                    oracle.record(ok, || format!("u={u} v={v} n={n}"));
                }
            }
        }
    }

    let mut lemma1 = CheckResult::new("(xy)^(n+1)x ~R (xy)^(n+1)");
    for i in 0..params.lemma1_instances {
        let size = rng.gen_range(1..=3);
        let n = rng.gen_range(0..=3u32);
        let x = random_word(&mut rng, size, 0, 4);
        // every tenth instance is the y = 1 case
        let y = if i % 10 == 0 {
            Word::empty()
        } else {
            random_word(&mut rng, size, 0, 4)
        };
        let base = x.concat(&y).pow(n as usize + 1);
        let ok = r_equiv(&base.concat(&x), &base, n);
        lemma1.record(ok, || format!("x={x} y={y} n={n}"));
    }

    let mut quotients = CheckResult::new("quotients lie in R, L, W");
    for size in 1..=2 {
        let alphabet = Alphabet::standard(size)?;
        for n in 0..=2 {
            for mode in [Mode::R, Mode::L, Mode::RL] {
                let q = build_quotient(&alphabet, n, mode, DEFAULT_CLASS_CAP)?;
                let ok = match mode {
                    Mode::R => q.monoid.is_r_trivial() && in_r(&q.monoid)?,
                    Mode::L => q.monoid.is_l_trivial() && in_l(&q.monoid)?,
                    Mode::RL => in_w(&q.monoid)?,
                };
                quotients.record(ok, || format!("|A|={size} n={n} mode={mode:?}"));
            }
        }
    }

    let mut saturation = CheckResult::new("w^(n+1) is idempotent in A*/~n");
    for n in 0..=2u32 {
        let alphabet = Alphabet::standard(2)?;
        let q = build_quotient(&alphabet, n, Mode::RL, DEFAULT_CLASS_CAP)?;
        for _ in 0..50 {
            let w = random_word(&mut rng, 2, 1, 5);
            let c = q.class_of(&w.pow(n as usize + 1));
            quotients_idempotent(&q.monoid, c, &mut saturation, &w, n);
        }
    }

    let mut refinement = CheckResult::new("level n+1 refines level n");
    let mut compat = CheckResult::new("letter compatibility");
    let mut first_split = CheckResult::new("first-occurrence split property");
    let mut last_split = CheckResult::new("last-occurrence split property");
    for _ in 0..params.pairs {
        let size = rng.gen_range(1..=3);
        let n = rng.gen_range(0..=3u32);
        let gen = PairGenerator {
            max_factor: 2,
            ..PairGenerator::new(size, n + 1)
        };
        let (u, v) = gen.generate(&mut rng)?;
        let describe = || format!("u={u} v={v} n={n}");
        refinement.record(equiv(&u, &v, n), describe);
        let a = rng.gen_range(0..size) as Letter;
        let ok = equiv(&Word(vec![a]).concat(&u), &Word(vec![a]).concat(&v), n + 1)
            && equiv(&u.concat(&[a]), &v.concat(&[a]), n + 1);
        compat.record(ok, describe);
        let alpha = content(&u);
        for a in alpha.iter() {
            let (u1, u2) = split_first(&u, a)?;
            let (v1, v2) = split_first(&v, a)?;
            let ok = r_equiv(&u1, &v1, n) && equiv(&u2, &v2, n);
            first_split.record(ok, || format!("{} letter {a}", describe()));
            let (u1, u2) = split_last(&u, a)?;
            let (v1, v2) = split_last(&v, a)?;
            let ok = equiv(&u1, &v1, n) && l_equiv(&u2, &v2, n);
            last_split.record(ok, || format!("{} letter {a}", describe()));
        }
    }

    Ok(SuiteReport::new(
        "congruence",
        vec![
            oracle,
            lemma1,
            quotients,
            saturation,
            refinement,
            compat,
            first_split,
            last_split,
        ],
    ))
}

fn quotients_idempotent(m: &FiniteMonoid, c: Element, check: &mut CheckResult, w: &Word, n: u32) {
    check.record(m.is_idempotent(c), || format!("w={w} n={n}"));
}

/// Parameters of [`theorem_suite`].
#[derive(Clone, Copy, Debug)]
pub struct TheoremParams {
    pub max_order: usize,
    /// Generated pairs per monoid.
    pub pairs: usize,
    pub seed: u64,
}

impl Default for TheoremParams {
    fn default() -> Self {
        TheoremParams {
            max_order: 4,
            pairs: 100,
            seed: 6,
        }
    }
}

/// End-to-end run of the factorization, alignment and substitution chain on
/// generated equivalent pairs, for every monoid in **W** of small order.
pub fn theorem_suite(params: TheoremParams) -> Result<SuiteReport> {
    let mut rng = StdRng::seed_from_u64(params.seed);
    let (monoids, _) = small_monoids(params.max_order)?;
    let mut factorizations = CheckResult::new("R/L factorizations are well formed");
    let mut monotone = CheckResult::new("right multiplication never climbs the R-order");
    let mut aligned = CheckResult::new("alignment succeeds with l <= 2|M|");
    let mut skeleton = CheckResult::new("aligned skeleton satisfies the R/L chains");
    let mut chain = CheckResult::new("substitution chain keeps the image");
    let (mut distinct, mut substituted) = (0u64, 0u64);

    for m in monoids.iter().filter(|m| in_w(m).unwrap_or(false)) {
        let n = 2 * m.size() as u32;
        for x in m.elements() {
            for y in m.elements() {
                let ok = matches!(
                    m.r_compare(m.mul(x, y), x),
                    crate::monoid::Order::Same | crate::monoid::Order::LeftBelow
                );
                monotone.record(ok, || format!("x={x} y={y} in {:?}", m.rows()));
            }
        }
        for _ in 0..params.pairs {
            let size = rng.gen_range(1..=3);
            let images: Vec<Element> = (0..size)
                .map(|_| Element(rng.gen_range(0..m.size())))
                .collect();
            let phi = WordHomomorphism::new(m.clone(), Alphabet::standard(size)?, images)?;
            let gen = PairGenerator {
                max_factor: 2,
                max_context: 5,
                ..PairGenerator::new(size, n)
            };
            let (u, v) = gen.generate(&mut rng)?;
            let describe = || format!("M={:?} phi={:?} u={u} v={v}", m.rows(), phi.letter_images());

            for w in [&u, &v] {
                let rf = r_factorize(&phi, w);
                let lf = l_factorize(&phi, w);
                let fresh =
                    (1..rf.len()).all(|i| !content(&rf.blocks[i - 1]).contains(w[rf.markers[i]]));
                let fresh_l = (0..lf.len().saturating_sub(1))
                    .all(|j| !content(&lf.blocks[j + 1]).contains(w[lf.markers[j]]));
                let ok = &rf.reconstruct() == w
                    && &lf.reconstruct() == w
                    && rf.len() <= m.size()
                    && lf.len() <= m.size()
                    && fresh
                    && fresh_l;
                factorizations.record(ok, describe);
            }

            match align(&phi, &u, &v, n) {
                Ok(af) => {
                    distinct += u64::from(u != v);
                    substituted += u64::from(af.s_blocks != af.t_blocks);
                    aligned.record(
                        af.len() <= 2 * m.size() && af.u() == u && af.v() == v,
                        describe,
                    );
                    skeleton.record(verify_lemma5(&phi, &af).holds, describe);
                    match substitution_chain(&phi, &af) {
                        Ok(trace) => {
                            let ok = trace.words.first() == Some(&v)
                                && trace.words.last() == Some(&u)
                                && trace.images.iter().all(|&x| x == phi.image(&u))
                                && phi.image(&u) == phi.image(&v);
                            chain.record(ok, describe);
                        }
                        Err(e) => chain.record(false, || format!("{}: {e}", describe())),
                    }
                }
                Err(e) => aligned.record(false, || format!("{}: {e}", describe())),
            }
        }
    }

    let total = aligned.cases;
    let mut report = SuiteReport::new(
        "theorem",
        vec![factorizations, monotone, aligned, skeleton, chain],
    );
    report
        .notes
        .push(format!("{distinct} of {total} pairs have u != v"));
    report.notes.push(format!(
        "{substituted} of {total} skeletons have some s_i != t_i"
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lemmas_suite() {
        let r = lemmas_suite(3).unwrap();
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.check("r-trivial iff in R").unwrap().cases, 10);
    }

    #[test]
    fn small_congruence_suite() {
        let r = congruence_suite(CongruenceParams {
            oracle_length: 3,
            lemma1_instances: 50,
            pairs: 30,
            seed: 1,
        })
        .unwrap();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn small_theorem_suite() {
        let r = theorem_suite(TheoremParams {
            max_order: 3,
            pairs: 5,
            seed: 1,
        })
        .unwrap();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn word_listing() {
        assert_eq!(all_words(2, 3).len(), 15);
        assert_eq!(all_words(1, 0), vec![Word::empty()]);
    }
}
