use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{Element, FiniteMonoid};

use super::{Alphabet, ClassKey, Letter, Mode, SignatureInterner, Word};

pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

/// Largest class count for which the dense multiplication table is built.
pub const MAX_TABLE_CLASSES: usize = 4096;

/// `A*/≡ₙᴿ`, `A*/≡ₙᴸ` or `A*/≡ₙ` as a table monoid.
///
/// Class `i` is element `i` of [`QuotientMonoid::monoid`]; class 0 is the
/// class of the empty word.
#[derive(Clone, Debug)]
pub struct QuotientMonoid {
    pub monoid: FiniteMonoid,
    pub alphabet: Alphabet,
    pub mode: Mode,
    pub level: u32,
    /// Shortlex-least word of each class.
    pub representatives: Vec<Word>,
    /// `letter_action[class][letter]` is the class of `rep · letter`.
    pub letter_action: Vec<Vec<usize>>,
}

impl QuotientMonoid {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// The class of a single letter.
    pub fn letter_class(&self, a: Letter) -> Element {
        Element(self.letter_action[0][a as usize])
    }

    /// The class of an arbitrary word, by running the letter action.
    pub fn class_of(&self, w: &[Letter]) -> Element {
        Element(
            w.iter()
                .fold(0usize, |c, &a| self.letter_action[c][a as usize]),
        )
    }

    pub fn report(&self) -> QuotientReport {
        QuotientReport {
            alphabet: self.alphabet.chars().iter().collect(),
            mode: self.mode,
            level: self.level,
            classes: self.class_count(),
            representatives: self
                .representatives
                .iter()
                .map(|w| self.alphabet.render(w))
                .collect(),
            table: self.monoid.rows(),
        }
    }
}

/// JSON form of a quotient.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub alphabet: String,
    pub mode: Mode,
    pub level: u32,
    pub classes: usize,
    pub representatives: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// Breadth-first closure from the empty word: each representative is
/// extended by every letter, and the extension's class is looked up by its
/// signature. Multiplication follows from the letter action applied along
/// the right factor's representative.
pub fn build_quotient(
    alphabet: &Alphabet,
    level: u32,
    mode: Mode,
    class_cap: usize,
) -> Result<QuotientMonoid> {
    let mut interner = SignatureInterner::new();
    let mut ids: HashMap<ClassKey, usize> = HashMap::new();
    let mut reps: Vec<Word> = vec![Word::empty()];
    let mut action: Vec<Vec<usize>> = vec![Vec::new()];
    ids.insert(interner.class_key(&[], level, mode), 0);

    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in alphabet.letters() {
            let mut w = reps[c].clone();
            w.push(a);
            let key = interner.class_key(&w, level, mode);
            let target = match ids.get(&key) {
                Some(&t) => t,
                None => {
                    if reps.len() >= class_cap {
                        return Err(Error::ClassBudgetExceeded {
                            cap: class_cap,
                            found: reps.len(),
                        });
                    }
                    let t = reps.len();
                    ids.insert(key, t);
                    reps.push(w);
                    action.push(Vec::new());
                    queue.push_back(t);
                    t
                }
            };
            row.push(target);
        }
        action[c] = row;
    }

    let size = reps.len();
    if size > MAX_TABLE_CLASSES {
        return Err(Error::SizeBudgetExceeded {
            what: "quotient multiplication table",
            cap: MAX_TABLE_CLASSES,
        });
    }
    let mut table = Vec::with_capacity(size * size);
    for i in 0..size {
        for rep in &reps {
            table.push(rep.iter().fold(i, |c, &a| action[c][a as usize]));
        }
    }
    let labels = reps
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                alphabet.render(w)
            }
        })
        .collect();
    let monoid = FiniteMonoid::from_raw(size, 0, table).with_labels(labels)?;
    Ok(QuotientMonoid {
        monoid,
        alphabet: alphabet.clone(),
        mode,
        level,
        representatives: reps,
        letter_action: action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::are_isomorphic;
    use crate::monoid::named::u1;
    use crate::omega::{in_l, in_r, in_w};
    use crate::words::{equiv, l_equiv, r_equiv};

    fn unary() -> Alphabet {
        Alphabet::new("a").unwrap()
    }

    #[test]
    fn level_zero_unary_is_u1() {
        let q = build_quotient(&unary(), 0, Mode::R, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(q.class_count(), 2);
        assert!(are_isomorphic(&q.monoid, &u1()));
    }

    #[test]
    fn level_one_unary() {
        let q = build_quotient(&unary(), 1, Mode::R, DEFAULT_CLASS_CAP).unwrap();
        let reps: Vec<usize> = q.representatives.iter().map(|w| w.len()).collect();
        assert_eq!(reps, vec![0, 1, 2]);
        let a = q.letter_class(0);
        let aa = q.monoid.mul(a, a);
        assert_eq!(aa, Element(2));
        assert_eq!(q.monoid.mul(aa, a), aa);
    }

    #[test]
    fn level_four_unary_rl() {
        let q = build_quotient(&unary(), 4, Mode::RL, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(q.class_count(), 6);
        let lens: Vec<usize> = q.representatives.iter().map(|w| w.len()).collect();
        assert_eq!(lens, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn quotients_are_valid_and_in_their_variety() {
        let ab = Alphabet::new("ab").unwrap();
        for n in 0..=2 {
            let r = build_quotient(&ab, n, Mode::R, DEFAULT_CLASS_CAP).unwrap();
            r.monoid.validate().unwrap();
            assert!(r.monoid.is_r_trivial());
            assert!(in_r(&r.monoid).unwrap());
            let l = build_quotient(&ab, n, Mode::L, DEFAULT_CLASS_CAP).unwrap();
            l.monoid.validate().unwrap();
            assert!(l.monoid.is_l_trivial());
            assert!(in_l(&l.monoid).unwrap());
        }
        let rl = build_quotient(&ab, 1, Mode::RL, DEFAULT_CLASS_CAP).unwrap();
        assert!(in_w(&rl.monoid).unwrap());
    }

    #[test]
    fn classes_are_distinct_and_actions_agree() {
        let ab = Alphabet::new("ab").unwrap();
        for mode in [Mode::R, Mode::L, Mode::RL] {
            let q = build_quotient(&ab, 1, mode, DEFAULT_CLASS_CAP).unwrap();
            let eq = |u: &[Letter], v: &[Letter]| match mode {
                Mode::R => r_equiv(u, v, 1),
                Mode::L => l_equiv(u, v, 1),
                Mode::RL => equiv(u, v, 1),
            };
            for (i, u) in q.representatives.iter().enumerate() {
                for v in &q.representatives[i + 1..] {
                    assert!(!eq(u, v));
                }
                for a in ab.letters() {
                    let target = &q.representatives[q.letter_action[i][a as usize]];
                    assert!(eq(&u.concat(&[a]), target));
                    assert_eq!(
                        q.monoid.mul(Element(i), q.letter_class(a)),
                        Element(q.letter_action[i][a as usize])
                    );
                }
            }
            assert!(q.representatives[0].is_empty());
        }
    }

    #[test]
    fn class_budget() {
        let ab = Alphabet::new("ab").unwrap();
        match build_quotient(&ab, 2, Mode::RL, 5) {
            Err(Error::ClassBudgetExceeded { cap: 5, found }) => assert_eq!(found, 5),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn empty_alphabet() {
        let q = build_quotient(&Alphabet::new("").unwrap(), 3, Mode::RL, 10).unwrap();
        assert_eq!(q.class_count(), 1);
    }
}
