//! ω-terms, identities between them, and the varieties **R**, **L** and **W**.
//!
//! Concrete syntax:
//!
//! ```text
//! term   := factor*
//! factor := atom ("^w")*
//! atom   := letter | "1" | "(" term ")"
//! ```
//!
//! `^w` is the ω-power and whitespace is ignored. The empty string (or `1`)
//! is the empty word.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{Element, FiniteMonoid, GreenSummary};

/// Default cap on `|M|^|X|` for exhaustive identity checks.
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaTerm {
    /// The empty word.
    One,
    Var(char),
    Concat(Box<OmegaTerm>, Box<OmegaTerm>),
    Omega(Box<OmegaTerm>),
}

impl OmegaTerm {
    pub fn var(c: char) -> Self {
        OmegaTerm::Var(c)
    }

    pub fn concat(self, other: OmegaTerm) -> Self {
        OmegaTerm::Concat(Box::new(self), Box::new(other))
    }

    pub fn omega(self) -> Self {
        OmegaTerm::Omega(Box::new(self))
    }

    /// A word in `X*` as a right-nested concatenation of variables.
    pub fn word(letters: &str) -> Self {
        let mut chars: Vec<char> = letters.chars().collect();
        let Some(last) = chars.pop() else {
            return OmegaTerm::One;
        };
        chars
            .into_iter()
            .rev()
            .fold(OmegaTerm::Var(last), |acc, c| OmegaTerm::Var(c).concat(acc))
    }

    pub fn variables(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<char>) {
        match self {
            OmegaTerm::One => {}
            OmegaTerm::Var(c) => {
                out.insert(*c);
            }
            OmegaTerm::Concat(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
            OmegaTerm::Omega(t) => t.collect_variables(out),
        }
    }

    /// Evaluates the term under `assignment`. ω-powers go through
    /// [`FiniteMonoid::idempotent_power`].
    pub fn eval(&self, m: &FiniteMonoid, assignment: &Assignment) -> Result<Element> {
        match self {
            OmegaTerm::One => Ok(m.identity()),
            OmegaTerm::Var(c) => assignment.get(*c).ok_or(Error::UnboundVariable(*c)),
            OmegaTerm::Concat(l, r) => Ok(m.mul(l.eval(m, assignment)?, r.eval(m, assignment)?)),
            OmegaTerm::Omega(t) => Ok(m.idempotent_power(t.eval(m, assignment)?)),
        }
    }

    /// Evaluation with variables already resolved to slots and ω-powers
    /// looked up in a precomputed table.
    fn eval_fast(&self, m: &FiniteMonoid, omega: &[Element], slots: &[(char, Element)]) -> Element {
        match self {
            OmegaTerm::One => m.identity(),
            OmegaTerm::Var(c) => slots.iter().find(|(v, _)| v == c).unwrap().1,
            OmegaTerm::Concat(l, r) => {
                m.mul(l.eval_fast(m, omega, slots), r.eval_fast(m, omega, slots))
            }
            OmegaTerm::Omega(t) => omega[t.eval_fast(m, omega, slots).0],
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(
            self,
            OmegaTerm::One | OmegaTerm::Var(_) | OmegaTerm::Omega(_)
        )
    }
}

/// Free-standing form of [`OmegaTerm::eval`].
pub fn eval_term(term: &OmegaTerm, m: &FiniteMonoid, assignment: &Assignment) -> Result<Element> {
    term.eval(m, assignment)
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::One => write!(f, "1"),
            OmegaTerm::Var(c) => write!(f, "{c}"),
            OmegaTerm::Concat(l, r) => {
                if matches!(**l, OmegaTerm::One) {
                    return write!(f, "{r}");
                }
                if matches!(**r, OmegaTerm::One) {
                    return write!(f, "{l}");
                }
                write!(f, "{l}{r}")
            }
            OmegaTerm::Omega(t) if t.is_atomic() && !matches!(**t, OmegaTerm::Omega(_)) => {
                write!(f, "{t}^w")
            }
            OmegaTerm::Omega(t) => write!(f, "({t})^w"),
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            chars,
            pos: 0,
            text,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or(self.text.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::ParseError {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn term(&mut self) -> Result<OmegaTerm> {
        let mut acc: Option<OmegaTerm> = None;
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            let factor = self.factor()?;
            acc = Some(match acc {
                None => factor,
                Some(t) => t.concat(factor),
            });
        }
        Ok(acc.unwrap_or(OmegaTerm::One))
    }

    fn factor(&mut self) -> Result<OmegaTerm> {
        let mut t = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            match self.peek() {
                Some('w') => self.pos += 1,
                _ => return Err(self.error("expected 'w' after '^'")),
            }
            t = t.omega();
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<OmegaTerm> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some('1') => {
                self.pos += 1;
                Ok(OmegaTerm::One)
            }
            Some(c) if c.is_alphabetic() => {
                self.pos += 1;
                Ok(OmegaTerm::Var(c))
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn parse_term(text: &str) -> Result<OmegaTerm> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.error("unbalanced ')'"));
    }
    Ok(t)
}

impl FromStr for OmegaTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

/// An identity `lhs = rhs` between ω-terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
    variables: Vec<char>,
}

impl Identity {
    pub fn new(lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        let mut vars = lhs.variables();
        vars.extend(rhs.variables());
        Identity {
            lhs,
            rhs,
            variables: vars.into_iter().collect(),
        }
    }

    /// Parses `"u = v"`, or one of the names `R`, `L`, `W`.
    pub fn parse(text: &str) -> Result<Self> {
        if let Some(v) = Variety::from_name(text.trim()) {
            return Ok(v.identity());
        }
        let Some((lhs, rhs)) = text.split_once('=') else {
            return Err(Error::ParseError {
                position: text.len(),
                message: "an identity needs exactly one '='".into(),
            });
        };
        if rhs.contains('=') {
            return Err(Error::ParseError {
                position: lhs.len() + 1 + rhs.find('=').unwrap(),
                message: "an identity needs exactly one '='".into(),
            });
        }
        let lhs = parse_term(lhs)?;
        let rhs = parse_term(rhs).map_err(|e| match e {
            Error::ParseError { position, message } => Error::ParseError {
                position: position + text.find('=').unwrap() + 1,
                message,
            },
            other => other,
        })?;
        Ok(Identity::new(lhs, rhs))
    }

    /// Variables of both sides, sorted.
    pub fn variables(&self) -> &[char] {
        &self.variables
    }

    pub fn flipped(&self) -> Self {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A map from variables to elements of a fixed monoid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Assignment(pub Vec<(char, Element)>);

impl Assignment {
    pub fn get(&self, var: char) -> Option<Element> {
        self.0.iter().find(|(v, _)| *v == var).map(|(_, e)| *e)
    }

    pub fn set(&mut self, var: char, value: Element) {
        match self.0.iter_mut().find(|(v, _)| *v == var) {
            Some(slot) => slot.1 = value,
            None => self.0.push((var, value)),
        }
    }
}

impl FromIterator<(char, Element)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (char, Element)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// Result of an exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub assignments_checked: u64,
    /// The first violating assignment in odometer order.
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Assignment,
    pub lhs: Element,
    pub rhs: Element,
}

/// Checks `id` under every assignment of its variables.
///
/// Assignments are visited in odometer order: variables sorted, the last
/// one varying fastest, element indices ascending.
pub fn satisfies_identity(m: &FiniteMonoid, id: &Identity, cap: u64) -> Result<IdentityCheck> {
    let vars = id.variables();
    let needed = (m.size() as u128).pow(vars.len() as u32);
    if needed > cap as u128 {
        return Err(Error::AssignmentBudgetExceeded { needed, cap });
    }
    let omega: Vec<Element> = m.elements().map(|x| m.idempotent_power(x)).collect();
    let mut slots: Vec<(char, Element)> = vars.iter().map(|&v| (v, Element(0))).collect();
    let mut checked = 0u64;
    loop {
        checked += 1;
        let l = id.lhs.eval_fast(m, &omega, &slots);
        let r = id.rhs.eval_fast(m, &omega, &slots);
        if l != r {
            return Ok(IdentityCheck {
                holds: false,
                assignments_checked: checked,
                counterexample: Some(Counterexample {
                    assignment: Assignment(slots),
                    lhs: l,
                    rhs: r,
                }),
            });
        }
        // advance the odometer
        let mut i = slots.len();
        loop {
            if i == 0 {
                return Ok(IdentityCheck {
                    holds: true,
                    assignments_checked: checked,
                    counterexample: None,
                });
            }
            i -= 1;
            slots[i].1 .0 += 1;
            if slots[i].1 .0 < m.size() {
                break;
            }
            slots[i].1 .0 = 0;
        }
    }
}

/// The three varieties defined by a single ω-identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variety {
    /// `(xy)^ω x = (xy)^ω`
    R,
    /// `x(zx)^ω = (zx)^ω`
    L,
    /// `(xy)^ω x (zx)^ω = (xy)^ω (zx)^ω`
    W,
}

impl Variety {
    pub const ALL: [Variety; 3] = [Variety::R, Variety::L, Variety::W];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "R" => Some(Variety::R),
            "L" => Some(Variety::L),
            "W" => Some(Variety::W),
            _ => None,
        }
    }

    pub fn identity(self) -> Identity {
        let text = match self {
            Variety::R => "(xy)^w x = (xy)^w",
            Variety::L => "x (zx)^w = (zx)^w",
            Variety::W => "(xy)^w x (zx)^w = (xy)^w (zx)^w",
        };
        Identity::parse(text).expect("built-in identity parses")
    }
}

pub fn in_variety(m: &FiniteMonoid, v: Variety) -> Result<bool> {
    Ok(satisfies_identity(m, &v.identity(), DEFAULT_ASSIGNMENT_CAP)?.holds)
}

pub fn in_r(m: &FiniteMonoid) -> Result<bool> {
    in_variety(m, Variety::R)
}

pub fn in_l(m: &FiniteMonoid) -> Result<bool> {
    in_variety(m, Variety::L)
}

pub fn in_w(m: &FiniteMonoid) -> Result<bool> {
    in_variety(m, Variety::W)
}

/// Triples `(u, x, v)` with `u R ux` and `v L xv` but `uxv ≠ uv`.
///
/// Empty for every monoid in **W**.
pub fn check_lemma3(m: &FiniteMonoid) -> Vec<(Element, Element, Element)> {
    let g = m.green();
    let mut out = Vec::new();
    for u in m.elements() {
        for x in m.elements() {
            let ux = m.mul(u, x);
            if !g.r_related(u, ux) {
                continue;
            }
            for v in m.elements() {
                if g.l_related(v, m.mul(x, v)) && m.mul(ux, v) != m.mul(u, v) {
                    out.push((u, x, v));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    R,
    L,
}

/// A counterexample to the R/L propagation property: for side R,
/// `u R v R va` without `u R ua`; for side L, `u L v L av` without `u L au`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationViolation {
    pub side: Side,
    pub u: Element,
    pub v: Element,
    pub a: Element,
}

/// All violations of the R-form and L-form of the propagation property.
/// Empty for every monoid in **W**.
pub fn check_lemma4(m: &FiniteMonoid) -> Vec<PropagationViolation> {
    let g: GreenSummary = m.green();
    let mut out = Vec::new();
    for u in m.elements() {
        for v in m.elements() {
            let r_uv = g.r_related(u, v);
            let l_uv = g.l_related(u, v);
            if !r_uv && !l_uv {
                continue;
            }
            for a in m.elements() {
                if r_uv && g.r_related(v, m.mul(v, a)) && !g.r_related(u, m.mul(u, a)) {
                    out.push(PropagationViolation {
                        side: Side::R,
                        u,
                        v,
                        a,
                    });
                }
                if l_uv && g.l_related(v, m.mul(a, v)) && !g.l_related(u, m.mul(a, u)) {
                    out.push(PropagationViolation {
                        side: Side::L,
                        u,
                        v,
                        a,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::named::*;
    use crate::monoid::{direct_product, DEFAULT_PRODUCT_CAP};

    fn assign(m: &FiniteMonoid, pairs: &[(char, &str)]) -> Assignment {
        pairs
            .iter()
            .map(|&(v, l)| (v, m.find(l).unwrap()))
            .collect()
    }

    #[test]
    fn parses() {
        assert_eq!(parse_term("x").unwrap(), OmegaTerm::Var('x'));
        let w = parse_term("(xy)^w x (zx)^w").unwrap();
        let expected = OmegaTerm::word("xy")
            .omega()
            .concat(OmegaTerm::Var('x'))
            .concat(OmegaTerm::word("zx").omega());
        // "xy" parses left-nested, `word` builds right-nested; compare by value
        assert_eq!(w.to_string(), expected.to_string());
        match &w {
            OmegaTerm::Concat(l, r) => {
                assert!(matches!(**r, OmegaTerm::Omega(_)));
                match &**l {
                    OmegaTerm::Concat(ll, lr) => {
                        assert!(matches!(**ll, OmegaTerm::Omega(_)));
                        assert_eq!(**lr, OmegaTerm::Var('x'));
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_term("((x)^w)^w").unwrap(),
            OmegaTerm::Var('x').omega().omega()
        );
        assert_eq!(parse_term("").unwrap(), OmegaTerm::One);
        assert_eq!(parse_term("  ").unwrap(), OmegaTerm::One);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            parse_term("(xy"),
            Err(Error::ParseError { position: 3, .. })
        ));
        assert!(matches!(
            parse_term("x^q"),
            Err(Error::ParseError { position: 2, .. })
        ));
        assert!(matches!(
            parse_term("xy)"),
            Err(Error::ParseError { position: 2, .. })
        ));
        assert!(matches!(
            parse_term("x+y"),
            Err(Error::ParseError { position: 1, .. })
        ));
        assert!(Identity::parse("x = y = z").is_err());
        assert!(Identity::parse("xy").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["x", "(xy)^w x (zx)^w", "((x)^w)^w", "x^w y", "(x^w y)^w"] {
            let t = parse_term(text).unwrap();
            assert_eq!(
                parse_term(&t.to_string()).unwrap().to_string(),
                t.to_string()
            );
        }
    }

    #[test]
    fn evaluation() {
        let z2 = z2();
        let t = parse_term("x^w").unwrap();
        assert_eq!(
            t.eval(&z2, &assign(&z2, &[('x', "g")])).unwrap(),
            z2.identity()
        );

        let b2 = b2();
        let a = assign(&b2, &[('x', "a"), ('y', "b"), ('z', "b")]);
        let lhs = parse_term("(xy)^w x (zx)^w").unwrap();
        let rhs = parse_term("(xy)^w (zx)^w").unwrap();
        assert_eq!(lhs.eval(&b2, &a).unwrap(), b2.find("a").unwrap());
        assert_eq!(rhs.eval(&b2, &a).unwrap(), b2.find("0").unwrap());

        let t1 = FiniteMonoid::trivial();
        let a = Assignment(vec![
            ('x', Element(0)),
            ('y', Element(0)),
            ('z', Element(0)),
        ]);
        assert_eq!(lhs.eval(&t1, &a).unwrap(), t1.identity());
        assert_eq!(
            parse_term("").unwrap().eval(&b2, &a).unwrap(),
            b2.identity()
        );
    }

    #[test]
    fn unbound_variable() {
        let t = parse_term("xq").unwrap();
        let m = u1();
        let a = assign(&m, &[('x', "1")]);
        assert_eq!(t.eval(&m, &a), Err(Error::UnboundVariable('q')));
    }

    #[test]
    fn identity_decisions() {
        for m in [u1(), b2(), z2()] {
            assert!(
                satisfies_identity(&m, &Identity::parse("x = x").unwrap(), 1000)
                    .unwrap()
                    .holds
            );
        }
        let b2 = b2();
        let check =
            satisfies_identity(&b2, &Variety::W.identity(), DEFAULT_ASSIGNMENT_CAP).unwrap();
        assert!(!check.holds);
        let cx = check.counterexample.unwrap();
        assert_eq!(
            cx.assignment,
            assign(&b2, &[('x', "a"), ('y', "b"), ('z', "b")])
        );
        assert_eq!(
            (cx.lhs, cx.rhs),
            (b2.find("a").unwrap(), b2.find("0").unwrap())
        );

        let u1 = u1();
        let check =
            satisfies_identity(&u1, &Variety::W.identity(), DEFAULT_ASSIGNMENT_CAP).unwrap();
        assert!(check.holds);
        assert_eq!(check.assignments_checked, 8);
    }

    #[test]
    fn assignment_cap() {
        let err = satisfies_identity(&b2(), &Variety::W.identity(), 100).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn variety_membership() {
        let rz = rz2_one();
        assert!(!in_r(&rz).unwrap());
        assert!(in_l(&rz).unwrap());
        assert!(in_w(&rz).unwrap());
        assert!(!in_w(&b2()).unwrap());
        let t = FiniteMonoid::trivial();
        assert!(in_r(&t).unwrap() && in_l(&t).unwrap() && in_w(&t).unwrap());
        let p = direct_product(&lz2_one(), &rz2_one(), DEFAULT_PRODUCT_CAP).unwrap();
        assert!(in_w(&p.monoid).unwrap());
    }

    #[test]
    fn decision_is_symmetric() {
        for m in [b2(), u1(), z2(), rz2_one()] {
            for v in Variety::ALL {
                let id = v.identity();
                let a = satisfies_identity(&m, &id, DEFAULT_ASSIGNMENT_CAP)
                    .unwrap()
                    .holds;
                let b = satisfies_identity(&m, &id.flipped(), DEFAULT_ASSIGNMENT_CAP)
                    .unwrap()
                    .holds;
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn substitution_property() {
        assert!(check_lemma3(&u1()).is_empty());
        let b2 = b2();
        let f = |s: &str| b2.find(s).unwrap();
        let violations = check_lemma3(&b2);
        assert!(violations.contains(&(f("ab"), f("a"), f("ba"))));
        assert!(!check_lemma3(&z2()).is_empty());
        assert!(check_lemma3(&FiniteMonoid::trivial()).is_empty());
    }

    #[test]
    fn propagation_property() {
        assert!(check_lemma4(&u1()).is_empty());
        assert!(check_lemma4(&FiniteMonoid::trivial()).is_empty());
        let p = direct_product(&lz2_one(), &rz2_one(), DEFAULT_PRODUCT_CAP).unwrap();
        assert!(check_lemma4(&p.monoid).is_empty());
    }

    #[test]
    fn compositional_eval() {
        let m = b2();
        let s = parse_term("xy").unwrap();
        let t = parse_term("(zx)^w").unwrap();
        for x in m.elements() {
            for y in m.elements() {
                for z in m.elements() {
                    let a = Assignment(vec![('x', x), ('y', y), ('z', z)]);
                    let sv = s.eval(&m, &a).unwrap();
                    let tv = t.eval(&m, &a).unwrap();
                    assert_eq!(
                        s.clone().concat(t.clone()).eval(&m, &a).unwrap(),
                        m.mul(sv, tv)
                    );
                    assert!(m.is_idempotent(tv));
                }
            }
        }
    }
}
