//! Regular languages given as DFAs: completion, minimization, the
//! transition (syntactic) monoid, and membership of that monoid in
//! **R**, **L** and **W**.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::WordHomomorphism;
use crate::monoid::{FiniteMonoid, DEFAULT_TRANSFORMATION_CAP};
use crate::omega::{satisfies_identity, Variety, DEFAULT_ASSIGNMENT_CAP};
use crate::words::{Alphabet, Letter};

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    /// `delta[state][letter]`
    delta: Vec<Vec<usize>>,
}

/// JSON form. Missing transitions go to a rejecting sink.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DfaFile {
    pub alphabet: String,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    #[serde(default)]
    pub delta: BTreeMap<String, BTreeMap<String, usize>>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let states = delta.len();
        if states == 0 || initial >= states || accepting.len() != states {
            return Err(Error::FormatError(
                "initial state and accepting flags must fit the state count".into(),
            ));
        }
        for row in &delta {
            if row.len() != alphabet.len() || row.iter().any(|&t| t >= states) {
                return Err(Error::FormatError("transition table is not total".into()));
            }
        }
        Ok(Dfa {
            alphabet,
            initial,
            accepting,
            delta,
        })
    }

    pub fn from_file(file: &DfaFile) -> Result<Self> {
        let alphabet =
            Alphabet::new(&file.alphabet).map_err(|e| Error::FormatError(e.to_string()))?;
        let n = file.states;
        if n == 0 {
            return Err(Error::FormatError("a DFA needs at least one state".into()));
        }
        if file.initial >= n {
            return Err(Error::FormatError(format!(
                "initial state {} is not below {n}",
                file.initial
            )));
        }
        let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; n];
        for (state, row) in &file.delta {
            let q: usize = state
                .parse()
                .ok()
                .filter(|&q| q < n)
                .ok_or_else(|| Error::FormatError(format!("'{state}' is not a state")))?;
            for (letter, &target) in row {
                let mut chars = letter.chars();
                let a = match (chars.next(), chars.next()) {
                    (Some(c), None) => alphabet.letter_of(c),
                    _ => None,
                }
                .ok_or_else(|| Error::FormatError(format!("'{letter}' is not a letter")))?;
                if target >= n {
                    return Err(Error::FormatError(format!(
                        "transition {q} --{letter}--> {target} leaves the {n} states"
                    )));
                }
                delta[q][a as usize] = Some(target);
            }
        }
        let mut accepting = vec![false; n];
        for &q in &file.accepting {
            if q >= n {
                return Err(Error::FormatError(format!(
                    "accepting state {q} is not below {n}"
                )));
            }
            accepting[q] = true;
        }
        let partial = delta.iter().flatten().any(Option::is_none);
        let sink = n;
        let mut full: Vec<Vec<usize>> = delta
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .collect();
        if partial {
            full.push(vec![sink; alphabet.len()]);
            accepting.push(false);
        }
        Dfa::new(alphabet, file.initial, accepting, full)
    }

    pub fn to_file(&self) -> DfaFile {
        DfaFile {
            alphabet: self.alphabet.chars().iter().collect(),
            states: self.states(),
            initial: self.initial,
            accepting: (0..self.states()).filter(|&q| self.accepting[q]).collect(),
            delta: self
                .delta
                .iter()
                .enumerate()
                .map(|(q, row)| {
                    (
                        q.to_string(),
                        row.iter()
                            .enumerate()
                            .map(|(a, &t)| (self.alphabet.char_of(a as Letter).to_string(), t))
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, a: Letter) -> usize {
        self.delta[q][a as usize]
    }

    pub fn run(&self, w: &[Letter]) -> usize {
        w.iter().fold(self.initial, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.accepting[self.run(w)]
    }

    /// Exact language equivalence by exploring the product automaton.
    /// Both automata must use the same alphabet.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let mut seen = vec![vec![false; other.states()]; self.states()];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        seen[self.initial][other.initial] = true;
        while let Some((p, q)) = queue.pop_front() {
            if self.accepting[p] != other.accepting[q] {
                return false;
            }
            for a in self.alphabet.letters() {
                let (p2, q2) = (self.step(p, a), other.step(q, a));
                if !seen[p2][q2] {
                    seen[p2][q2] = true;
                    queue.push_back((p2, q2));
                }
            }
        }
        true
    }
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let file: DfaFile = serde_json::from_str(text)?;
    Dfa::from_file(&file)
}

/// Restricts to reachable states, merges equivalent states by Moore
/// partition refinement, and numbers the result in breadth-first order from
/// the initial state.
pub fn minimize(d: &Dfa) -> Dfa {
    let k = d.alphabet.len();
    // class of each state: accepting or not, refined until stable
    let mut class: Vec<usize> = d.accepting.iter().map(|&b| b as usize).collect();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..d.states())
            .map(|q| {
                let sig = (class[q], d.delta[q].iter().map(|&t| class[t]).collect());
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let stable = ids.len() == count_distinct(&class);
        class = next;
        if stable {
            break;
        }
    }

    let mut number: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([d.initial]);
    number.insert(class[d.initial], 0);
    reps.push(d.initial);
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let t = d.delta[q][a];
            if let Entry::Vacant(e) = number.entry(class[t]) {
                e.insert(reps.len());
                reps.push(t);
                queue.push_back(t);
            }
        }
    }
    let delta = reps
        .iter()
        .map(|&q| d.delta[q].iter().map(|&t| number[&class[t]]).collect())
        .collect();
    let accepting = reps.iter().map(|&q| d.accepting[q]).collect();
    Dfa {
        alphabet: d.alphabet.clone(),
        initial: 0,
        accepting,
        delta,
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// The monoid of state maps induced by words, with the letter homomorphism.
/// Elements are labelled by their shortlex-least word (`1` for the
/// identity). For a minimal DFA this is the syntactic monoid.
pub fn transition_monoid(d: &Dfa, cap: usize) -> Result<(FiniteMonoid, WordHomomorphism)> {
    let generators: Vec<Vec<usize>> = d
        .alphabet
        .letters()
        .map(|a| (0..d.states()).map(|q| d.step(q, a)).collect())
        .collect();
    let (m, images) = FiniteMonoid::from_transformations(d.states(), &generators, cap)?;

    let mut labels: Vec<Option<String>> = vec![None; m.size()];
    labels[0] = Some(String::new());
    let mut queue = VecDeque::from([m.identity()]);
    while let Some(x) = queue.pop_front() {
        for a in d.alphabet.letters() {
            let y = m.mul(x, images[a as usize]);
            if labels[y.0].is_none() {
                let mut s = labels[x.0].clone().unwrap();
                s.push(d.alphabet.char_of(a));
                labels[y.0] = Some(s);
                queue.push_back(y);
            }
        }
    }
    let labels = labels
        .into_iter()
        .map(|l| match l.unwrap() {
            s if s.is_empty() => "1".to_string(),
            s => s,
        })
        .collect();
    let m = m.with_labels(labels)?;
    let phi = WordHomomorphism::new(m.clone(), d.alphabet.clone(), images)?;
    Ok((m, phi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessWords {
    pub x: String,
    pub y: String,
    pub z: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LanguageReport {
    pub in_w: bool,
    pub in_r: bool,
    pub in_l: bool,
    pub minimal_states: usize,
    pub monoid_size: usize,
    /// Violating assignment of the W identity, elements named by words.
    pub witness: Option<WitnessWords>,
}

/// Decides whether the syntactic monoid of the language lies in **W**
/// (and in **R**, **L**).
pub fn language_in_join(d: &Dfa) -> Result<LanguageReport> {
    let min = minimize(d);
    let (m, _) = transition_monoid(&min, DEFAULT_TRANSFORMATION_CAP)?;
    let check = |v: Variety| satisfies_identity(&m, &v.identity(), DEFAULT_ASSIGNMENT_CAP);
    let w = check(Variety::W)?;
    let witness = w.counterexample.as_ref().map(|cx| {
        let get = |c: char| m.label(cx.assignment.get(c).unwrap());
        WitnessWords {
            x: get('x'),
            y: get('y'),
            z: get('z'),
            lhs: m.label(cx.lhs),
            rhs: m.label(cx.rhs),
        }
    });
    Ok(LanguageReport {
        in_w: w.holds,
        in_r: check(Variety::R)?.holds,
        in_l: check(Variety::L)?.holds,
        minimal_states: min.states(),
        monoid_size: m.size(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::are_isomorphic;
    use crate::monoid::named::{b2, u1};

    const AB_STAR: &str = r#"{"alphabet": "ab", "states": 2, "initial": 0, "accepting": [0],
        "delta": {"0": {"a": 1}, "1": {"b": 0}}}"#;
    const ALL: &str = r#"{"alphabet": "ab", "states": 1, "initial": 0, "accepting": [0],
        "delta": {"0": {"a": 0, "b": 0}}}"#;
    const CONTAINS_A: &str = r#"{"alphabet": "ab", "states": 2, "initial": 0, "accepting": [1],
        "delta": {"0": {"a": 1, "b": 0}, "1": {"a": 1, "b": 1}}}"#;
    // A*aA* with the accepting state split in two
    const CONTAINS_A_DUP: &str = r#"{"alphabet": "ab", "states": 3, "initial": 0, "accepting": [1, 2],
        "delta": {"0": {"a": 1, "b": 0}, "1": {"a": 2, "b": 2}, "2": {"a": 1, "b": 1}}}"#;

    #[test]
    fn parsing_and_completion() {
        let all = parse_dfa(ALL).unwrap();
        assert_eq!(all.states(), 1);
        let ab = parse_dfa(AB_STAR).unwrap();
        assert_eq!(ab.states(), 3);
        let w = |s: &str| ab.alphabet().parse_word(s).unwrap();
        assert!(ab.accepts(&w("")) && ab.accepts(&w("abab")));
        assert!(!ab.accepts(&w("aba")) && !ab.accepts(&w("ba")));
    }

    #[test]
    fn format_errors() {
        let bad_target = r#"{"alphabet": "a", "states": 1, "initial": 0, "accepting": [], "delta": {"0": {"a": 3}}}"#;
        assert!(matches!(parse_dfa(bad_target), Err(Error::FormatError(_))));
        let bad_letter = r#"{"alphabet": "a", "states": 1, "initial": 0, "accepting": [], "delta": {"0": {"b": 0}}}"#;
        assert!(matches!(parse_dfa(bad_letter), Err(Error::FormatError(_))));
        let bad_initial = r#"{"alphabet": "a", "states": 1, "initial": 1, "accepting": []}"#;
        assert!(matches!(parse_dfa(bad_initial), Err(Error::FormatError(_))));
        assert!(matches!(parse_dfa("{"), Err(Error::FormatError(_))));
    }

    #[test]
    fn minimization() {
        let dup = parse_dfa(CONTAINS_A_DUP).unwrap();
        let min = minimize(&dup);
        assert_eq!(min.states(), 2);
        assert!(min.equivalent(&dup));
        let already = parse_dfa(CONTAINS_A).unwrap();
        assert_eq!(minimize(&already), already);

        let empty =
            parse_dfa(r#"{"alphabet": "ab", "states": 3, "initial": 0, "accepting": []}"#).unwrap();
        let m = minimize(&empty);
        assert_eq!(m.states(), 1);
        assert!(!m.is_accepting(0));
    }

    #[test]
    fn minimize_is_idempotent() {
        for text in [AB_STAR, ALL, CONTAINS_A, CONTAINS_A_DUP] {
            let once = minimize(&parse_dfa(text).unwrap());
            assert_eq!(minimize(&once), once);
        }
    }

    #[test]
    fn transition_monoids() {
        let (m, _) = transition_monoid(&parse_dfa(ALL).unwrap(), 100).unwrap();
        assert_eq!(m.size(), 1);
        let (m, _) = transition_monoid(&minimize(&parse_dfa(CONTAINS_A).unwrap()), 100).unwrap();
        assert!(are_isomorphic(&m, &u1()));
        let (m, phi) = transition_monoid(&minimize(&parse_dfa(AB_STAR).unwrap()), 100).unwrap();
        assert_eq!(m.size(), 6);
        assert!(are_isomorphic(&m, &b2()));
        assert_eq!(m.labels().unwrap(), ["1", "a", "b", "aa", "ab", "ba"]);
        assert_eq!(phi.image(&[0, 1, 0]), phi.letter_image(0));
    }

    #[test]
    fn identity_letters_give_trivial_monoid() {
        let d = parse_dfa(
            r#"{"alphabet": "ab", "states": 3, "initial": 0, "accepting": [1],
            "delta": {"0": {"a": 0, "b": 0}, "1": {"a": 1, "b": 1}, "2": {"a": 2, "b": 2}}}"#,
        )
        .unwrap();
        assert_eq!(transition_monoid(&d, 100).unwrap().0.size(), 1);
    }

    #[test]
    fn classification() {
        let r = language_in_join(&parse_dfa(ALL).unwrap()).unwrap();
        assert!(r.in_w && r.in_r && r.in_l);
        assert_eq!(r.monoid_size, 1);

        let r = language_in_join(&parse_dfa(CONTAINS_A).unwrap()).unwrap();
        assert!(r.in_w && r.in_r && r.in_l);
        assert_eq!(r.monoid_size, 2);

        let r = language_in_join(&parse_dfa(AB_STAR).unwrap()).unwrap();
        assert!(!r.in_w);
        assert_eq!(r.monoid_size, 6);
        let w = r.witness.unwrap();
        assert_eq!((w.x.as_str(), w.y.as_str(), w.z.as_str()), ("a", "b", "b"));
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("a", "aa"));
    }
}
