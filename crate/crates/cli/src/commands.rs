use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mvw_core::factorization::{
    align, l_factorize, quotient_homomorphism, r_factorize, substitution_chain, verify_lemma5,
    AlignedFactorization, WordHomomorphism,
};
use mvw_core::languages::{language_in_join, parse_dfa};
use mvw_core::monoid::{divides, enumerate_monoids, named, DEFAULT_ENUMERATION_CAP};
use mvw_core::omega::{in_l, in_r, in_w, satisfies_identity, Identity};
use mvw_core::verify::{
    congruence_suite, lemmas_suite, theorem_suite, CongruenceParams, SuiteReport, TheoremParams,
};
use mvw_core::words::{
    build_quotient, equiv, l_equiv, r_equiv, Alphabet, Mode, SignatureInterner, Word,
};
use mvw_core::{Element, Error, FiniteMonoid, Result};
use serde_json::{json, Value};

use crate::args::{
    Cli, Command, DfaCommand, FactorizeArgs, KindArg, ModeArg, MonoidCommand, PairArgs,
    QuotientCommand, Suite, TheoremCommand, VerifyArgs, WordsCommand,
};
use crate::Outcome;

pub(crate) fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Monoid(cmd) => match cmd {
            MonoidCommand::Check {
                file,
                identity,
                identity_file,
            } => monoid_check(
                file,
                identity.as_deref(),
                identity_file.as_deref(),
                g.max_assignments,
            ),
            MonoidCommand::Green { file } => monoid_green(file),
            MonoidCommand::Variety { file } => monoid_variety(file),
            MonoidCommand::Enumerate { order } => monoid_enumerate(*order),
            MonoidCommand::Divides { divisor, file } => {
                monoid_divides(divisor, file, g.max_division)
            }
        },
        Command::Words(cmd) => match cmd {
            WordsCommand::Equiv {
                alphabet,
                level,
                mode,
                u,
                v,
            } => words_equiv(alphabet, *level, *mode, u, v),
            WordsCommand::Signature {
                alphabet,
                level,
                mode,
                word,
            } => words_signature(alphabet, *level, *mode, word),
        },
        Command::Quotient(QuotientCommand::Build {
            alphabet,
            level,
            mode,
        }) => quotient_build(alphabet, *level, *mode, g.max_classes),
        Command::Factorize(a) => factorize(a),
        Command::Align(a) => align_cmd(a),
        Command::Chain(a) => chain_cmd(a),
        Command::Theorem(TheoremCommand::QuotientHom {
            monoid,
            generators,
            level,
        }) => quotient_hom(monoid, generators, *level, g.max_classes),
        Command::Dfa(DfaCommand::Classify { file }) => dfa_classify(file),
        Command::Verify(a) => verify(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::FormatError(format!("cannot read {}: {e}", path.display())))
}

/// A monoid file, or `builtin:NAME` for one of the named monoids.
fn load_monoid(spec: &str) -> Result<FiniteMonoid> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return named::by_name(name)
            .ok_or_else(|| Error::FormatError(format!("no built-in monoid named '{name}'")));
    }
    FiniteMonoid::from_json(&read(Path::new(spec))?)
}

fn mode_of(m: ModeArg) -> Mode {
    match m {
        ModeArg::R => Mode::R,
        ModeArg::L => Mode::L,
        ModeArg::Rl => Mode::RL,
    }
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::R => "R",
        ModeArg::L => "L",
        ModeArg::Rl => "RL",
    }
}

/// "1" stands for the empty word unless it is a letter.
fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    if text == "1" && alphabet.letter_of('1').is_none() {
        return Ok(Word::empty());
    }
    alphabet.parse_word(text)
}

fn show(alphabet: &Alphabet, w: &[u8]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        alphabet.render(w)
    }
}

fn labels(m: &FiniteMonoid, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|&x| m.label(x)).collect()
}

fn monoid_check(
    file: &str,
    identity: Option<&str>,
    identity_file: Option<&Path>,
    cap: u64,
) -> Result<Outcome> {
    let m = load_monoid(file)?;
    let text = match (identity, identity_file) {
        (Some(s), _) => s.to_string(),
        (None, Some(p)) => read(p)?.trim().to_string(),
        (None, None) => {
            return Err(Error::FormatError(
                "one of --identity or --identity-file is required".into(),
            ))
        }
    };
    let id = Identity::parse(&text)?;
    let check = satisfies_identity(&m, &id, cap)?;
    let mut report = json!({
        "command": "monoid check",
        "identity": id.to_string(),
        "size": m.size(),
        "holds": check.holds,
        "verdict": if check.holds { "satisfies" } else { "violates" },
        "assignmentsChecked": check.assignments_checked,
    });
    let mut text = format!(
        "{}: {} ({} assignments)\n",
        id,
        if check.holds { "satisfies" } else { "violates" },
        check.assignments_checked
    );
    if let Some(cx) = &check.counterexample {
        let mut assignment = serde_json::Map::new();
        for &(v, x) in &cx.assignment.0 {
            assignment.insert(v.to_string(), Value::String(m.label(x)));
            let _ = writeln!(text, "  {v} = {}", m.label(x));
        }
        let _ = writeln!(
            text,
            "  lhs = {}, rhs = {}",
            m.label(cx.lhs),
            m.label(cx.rhs)
        );
        report["witness"] = json!({
            "assignment": assignment,
            "lhs": m.label(cx.lhs),
            "rhs": m.label(cx.rhs),
        });
    }
    Ok(Outcome {
        holds: check.holds,
        report,
        text,
    })
}

fn monoid_green(file: &str) -> Result<Outcome> {
    let m = load_monoid(file)?;
    let g = m.green();
    let classes = |cs: &[Vec<Element>]| cs.iter().map(|c| labels(&m, c)).collect::<Vec<_>>();
    let r = classes(&g.r_classes);
    let l = classes(&g.l_classes);
    let report = json!({
        "command": "monoid green",
        "size": m.size(),
        "rClasses": r,
        "lClasses": l,
        "rTrivial": m.is_r_trivial(),
        "lTrivial": m.is_l_trivial(),
    });
    let fmt = |cs: &[Vec<String>]| {
        cs.iter()
            .map(|c| format!("{{{}}}", c.join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let text = format!("R-classes: {}\nL-classes: {}\n", fmt(&r), fmt(&l));
    Ok(Outcome {
        holds: true,
        report,
        text,
    })
}

fn monoid_variety(file: &str) -> Result<Outcome> {
    let m = load_monoid(file)?;
    let (r, l, w) = (in_r(&m)?, in_l(&m)?, in_w(&m)?);
    let report = json!({
        "command": "monoid variety",
        "size": m.size(),
        "inR": r,
        "inL": l,
        "inW": w,
        "rTrivial": m.is_r_trivial(),
        "lTrivial": m.is_l_trivial(),
        "aperiodic": m.is_aperiodic(),
    });
    let text = format!("R: {r}\nL: {l}\nW: {w}\n");
    Ok(Outcome {
        holds: true,
        report,
        text,
    })
}

fn monoid_enumerate(order: usize) -> Result<Outcome> {
    let all = enumerate_monoids(order, DEFAULT_ENUMERATION_CAP)?;
    let mut monoids = Vec::with_capacity(all.len());
    let mut text = format!("{} monoids of order {order}\n", all.len());
    for m in &all {
        let (r, l, w) = (in_r(m)?, in_l(m)?, in_w(m)?);
        let _ = writeln!(text, "{:?}  R={r} L={l} W={w}", m.rows());
        monoids.push(json!({
            "identity": m.identity().0,
            "table": m.rows(),
            "inR": r,
            "inL": l,
            "inW": w,
        }));
    }
    let report = json!({
        "command": "monoid enumerate",
        "order": order,
        "count": all.len(),
        "monoids": monoids,
    });
    Ok(Outcome {
        holds: true,
        report,
        text,
    })
}

fn monoid_divides(divisor: &str, file: &str, cap: usize) -> Result<Outcome> {
    let m = load_monoid(divisor)?;
    let n = load_monoid(file)?;
    let found = divides(&m, &n, cap)?;
    let mut report = json!({
        "command": "monoid divides",
        "divides": found.is_some(),
    });
    let text = match &found {
        Some(w) => {
            let map: Vec<Value> = w
                .homomorphism
                .iter()
                .map(|&(x, y)| json!([n.label(x), m.label(y)]))
                .collect();
            report["witness"] = json!({
                "submonoid": labels(&n, &w.submonoid),
                "homomorphism": map,
            });
            format!(
                "divides, via the submonoid {{{}}}\n",
                labels(&n, &w.submonoid).join(",")
            )
        }
        None => "does not divide\n".to_string(),
    };
    Ok(Outcome {
        holds: found.is_some(),
        report,
        text,
    })
}

fn words_equiv(alphabet: &str, level: u32, mode: ModeArg, u: &str, v: &str) -> Result<Outcome> {
    let a = Alphabet::new(alphabet)?;
    let (wu, wv) = (parse_word(&a, u)?, parse_word(&a, v)?);
    let eq = match mode {
        ModeArg::R => r_equiv(&wu, &wv, level),
        ModeArg::L => l_equiv(&wu, &wv, level),
        ModeArg::Rl => equiv(&wu, &wv, level),
    };
    let verdict = if eq { "equivalent" } else { "not equivalent" };
    let report = json!({
        "command": "words equiv",
        "alphabet": alphabet,
        "level": level,
        "mode": mode_name(mode),
        "u": show(&a, &wu),
        "v": show(&a, &wv),
        "equivalent": eq,
        "verdict": verdict,
    });
    Ok(Outcome {
        holds: eq,
        report,
        text: format!("{verdict}\n"),
    })
}

fn words_signature(alphabet: &str, level: u32, mode: ModeArg, word: &str) -> Result<Outcome> {
    let a = Alphabet::new(alphabet)?;
    let w = parse_word(&a, word)?;
    let mut interner = SignatureInterner::new();
    let key = interner.class_key(&w, level, mode_of(mode));
    let mut signature = serde_json::Map::new();
    if let Some(id) = key.r {
        signature.insert("r".into(), interner.describe(id, &a));
    }
    if let Some(id) = key.l {
        signature.insert("l".into(), interner.describe(id, &a));
    }
    let signature = Value::Object(signature);
    let text = format!(
        "{}\n",
        serde_json::to_string(&signature).unwrap_or_default()
    );
    let report = json!({
        "command": "words signature",
        "alphabet": alphabet,
        "level": level,
        "mode": mode_name(mode),
        "word": show(&a, &w),
        "signature": signature,
    });
    Ok(Outcome {
        holds: true,
        report,
        text,
    })
}

fn quotient_build(alphabet: &str, level: u32, mode: ModeArg, cap: usize) -> Result<Outcome> {
    let a = Alphabet::new(alphabet)?;
    let q = build_quotient(&a, level, mode_of(mode), cap)?;
    let r = q.report();
    let reps: Vec<String> = q.representatives.iter().map(|w| show(&a, w)).collect();
    let text = format!("{} classes\n{}\n", r.classes, reps.join(" "));
    let mut report = json!({ "command": "quotient build" });
    if let (Value::Object(dst), Ok(Value::Object(src))) = (&mut report, serde_json::to_value(&r)) {
        dst.extend(src);
    }
    Ok(Outcome {
        holds: true,
        report,
        text,
    })
}

fn homomorphism(monoid: &str, map: &str) -> Result<WordHomomorphism> {
    WordHomomorphism::parse(load_monoid(monoid)?, map)
}

fn factorize(args: &FactorizeArgs) -> Result<Outcome> {
    let phi = homomorphism(&args.monoid, &args.map)?;
    let a = phi.alphabet().clone();
    let w = parse_word(&a, &args.word)?;
    let f = match args.kind {
        KindArg::R => r_factorize(&phi, &w),
        KindArg::L => l_factorize(&phi, &w),
    };
    let m = phi.monoid();
    let markers: Vec<Value> = f
        .markers
        .iter()
        .map(|&p| json!({ "position": p, "letter": a.char_of(w[p]).to_string() }))
        .collect();
    let blocks: Vec<String> = f.blocks.iter().map(|b| show(&a, b)).collect();
    let report = json!({
        "command": "factorize",
        "kind": match args.kind { KindArg::R => "R", KindArg::L => "L" },
        "word": show(&a, &w),
        "image": m.label(phi.image(&w)),
        "markers": markers,
        "blocks": blocks,
    });
    let mut text = String::new();
    for (i, &p) in f.markers.iter().enumerate() {
        match args.kind {
            KindArg::R => {
                let _ = write!(text, "[{}]{}", a.char_of(w[p]), show(&a, &f.blocks[i]));
            }
            KindArg::L => {
                let _ = write!(text, "{}[{}]", show(&a, &f.blocks[i]), a.char_of(w[p]));
            }
        }
    }
    text.push('\n');
    Ok(Outcome {
        holds: true,
        report,
        text,
    })
}

struct Aligned {
    phi: WordHomomorphism,
    level: u32,
    af: AlignedFactorization,
}

fn aligned(args: &PairArgs) -> Result<Aligned> {
    let phi = homomorphism(&args.monoid, &args.map)?;
    let a = phi.alphabet();
    let (u, v) = (parse_word(a, &args.u)?, parse_word(a, &args.v)?);
    let level = args.level.unwrap_or(2 * phi.monoid().size() as u32);
    let af = align(&phi, &u, &v, level)?;
    Ok(Aligned { phi, level, af })
}

fn skeleton_json(x: &Aligned) -> Value {
    let a = x.phi.alphabet();
    let m = x.phi.monoid();
    let check = verify_lemma5(&x.phi, &x.af);
    json!({
        "level": x.level,
        "u": show(a, &x.af.u()),
        "v": show(a, &x.af.v()),
        "markers": x.af.markers.iter().map(|&c| a.char_of(c).to_string()).collect::<Vec<_>>(),
        "uPositions": x.af.u_positions,
        "vPositions": x.af.v_positions,
        "sBlocks": x.af.s_blocks.iter().map(|b| show(a, b)).collect::<Vec<_>>(),
        "tBlocks": x.af.t_blocks.iter().map(|b| show(a, b)).collect::<Vec<_>>(),
        "sImages": x.af.s_blocks.iter().map(|b| m.label(x.phi.image(b))).collect::<Vec<_>>(),
        "tImages": x.af.t_blocks.iter().map(|b| m.label(x.phi.image(b))).collect::<Vec<_>>(),
        "skeletonHolds": check.holds,
    })
}

fn skeleton_text(x: &Aligned) -> String {
    let a = x.phi.alphabet();
    let mut u = String::new();
    let mut v = String::new();
    for (i, &c) in x.af.markers.iter().enumerate() {
        let _ = write!(u, "[{}]", a.char_of(c));
        let _ = write!(v, "[{}]", a.char_of(c));
        if i < x.af.s_blocks.len() {
            u.push_str(&show(a, &x.af.s_blocks[i]));
            v.push_str(&show(a, &x.af.t_blocks[i]));
        }
    }
    format!("u = {u}\nv = {v}\n")
}

fn align_cmd(args: &PairArgs) -> Result<Outcome> {
    let x = aligned(args)?;
    let mut report = json!({ "command": "align" });
    report["alignment"] = skeleton_json(&x);
    Ok(Outcome {
        holds: true,
        report,
        text: skeleton_text(&x),
    })
}

fn chain_cmd(args: &PairArgs) -> Result<Outcome> {
    let x = aligned(args)?;
    let trace = substitution_chain(&x.phi, &x.af)?;
    let a = x.phi.alphabet();
    let m = x.phi.monoid();
    let steps: Vec<Value> = trace
        .words
        .iter()
        .zip(&trace.images)
        .map(|(w, &e)| json!({ "word": show(a, w), "image": m.label(e) }))
        .collect();
    let image = m.label(*trace.images.last().unwrap_or(&m.identity()));
    let mut text = skeleton_text(&x);
    for (w, &e) in trace.words.iter().zip(&trace.images) {
        let _ = writeln!(text, "{} -> {}", show(a, w), m.label(e));
    }
    let report = json!({
        "command": "chain",
        "alignment": skeleton_json(&x),
        "steps": steps,
        "image": image,
        "verdict": "equal images",
    });
    Ok(Outcome {
        holds: true,
        report,
        text,
    })
}

fn quotient_hom(monoid: &str, generators: &str, level: Option<u32>, cap: usize) -> Result<Outcome> {
    let m = load_monoid(monoid)?;
    let gens = generators
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            m.find(s)
                .ok_or_else(|| Error::FormatError(format!("no element '{s}' in the monoid")))
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = quotient_homomorphism(&m, &gens, level, cap)?;
    let q = &verdict.quotient;
    let class_map: Vec<Value> = q
        .representatives
        .iter()
        .zip(&verdict.class_map)
        .map(|(w, &e)| json!({ "representative": show(&q.alphabet, w), "image": m.label(e) }))
        .collect();
    let inconsistency = verdict.inconsistency.map(|(c, l)| {
        json!({
            "class": show(&q.alphabet, &q.representatives[c]),
            "letter": q.alphabet.char_of(l).to_string(),
        })
    });
    let letters: Vec<Value> = gens
        .iter()
        .enumerate()
        .map(|(i, &g)| json!([q.alphabet.char_of(i as u8).to_string(), m.label(g)]))
        .collect();
    let report = json!({
        "command": "theorem quotient-hom",
        "level": verdict.level,
        "heuristic": verdict.heuristic,
        "generators": letters,
        "classes": q.class_count(),
        "surjective": verdict.surjective,
        "inconsistency": inconsistency,
        "isQuotient": verdict.is_quotient,
        "classMap": class_map,
    });
    let text = format!(
        "{} classes at n = {}: {}\n",
        q.class_count(),
        verdict.level,
        if verdict.is_quotient {
            "quotient"
        } else {
            "not a quotient"
        }
    );
    Ok(Outcome {
        holds: verdict.is_quotient,
        report,
        text,
    })
}

fn dfa_classify(file: &Path) -> Result<Outcome> {
    let d = parse_dfa(&read(file)?)?;
    let r = language_in_join(&d)?;
    let mut text = format!(
        "minimal states {}, monoid size {}\nR: {}\nL: {}\nW: {}\n",
        r.minimal_states, r.monoid_size, r.in_r, r.in_l, r.in_w
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(
            text,
            "witness x={} y={} z={}: {} != {}",
            w.x, w.y, w.z, w.lhs, w.rhs
        );
    }
    let mut report = json!({ "command": "dfa classify" });
    if let (Value::Object(dst), Ok(Value::Object(src))) = (&mut report, serde_json::to_value(&r)) {
        dst.extend(src);
    }
    Ok(Outcome {
        holds: r.in_w,
        report,
        text,
    })
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let suite: SuiteReport = match args.suite {
        Suite::Lemmas => lemmas_suite(args.max_order)?,
        Suite::Congruence => {
            let mut p = CongruenceParams::default();
            if let Some(s) = args.seed {
                p.seed = s;
            }
            if let Some(n) = args.pairs {
                p.pairs = n;
            }
            congruence_suite(p)?
        }
        Suite::Theorem => {
            let mut p = TheoremParams {
                max_order: args.max_order,
                ..TheoremParams::default()
            };
            if let Some(s) = args.seed {
                p.seed = s;
            }
            if let Some(n) = args.pairs {
                p.pairs = n;
            }
            theorem_suite(p)?
        }
    };
    let mut text = String::new();
    for c in &suite.checks {
        let _ = writeln!(
            text,
            "{} {} ({} cases, {} failures)",
            if c.passed() { "ok  " } else { "FAIL" },
            c.name,
            c.cases,
            c.failures
        );
        if let Some(f) = &c.first_failure {
            let _ = writeln!(text, "     first failure: {f}");
        }
    }
    for n in &suite.notes {
        let _ = writeln!(text, "note: {n}");
    }
    let report = serde_json::to_value(&suite)?;
    Ok(Outcome {
        holds: suite.passed,
        report,
        text,
    })
}
