//! Canonical forms for `≡ₙᴿ`.
//!
//! `u ≡₀ᴿ v` compares contents. At level `n + 1` the conditions quantify over
//! factorizations `u = u₁au₂` with `a` absent from `u₁` (resp. `u₂`), and
//! such a factorization is unique for each letter of the content. A level
//! `n + 1` signature therefore records the content and, per letter, the
//! level-`n` signatures of the prefix and suffix around the first occurrence
//! and of the prefix before the last occurrence. Signatures are
//! hash-consed, so two words are equivalent exactly when they get the same
//! [`SigId`].

use std::collections::HashMap;

use serde_json::{json, Value};

use super::{content, reverse, Alphabet, Letter, LetterSet, Mode};

/// Handle of an interned signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigId(u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigNode {
    pub level: u32,
    pub content: LetterSet,
    /// Per content letter (ascending): prefix and suffix around its first
    /// occurrence. Empty at level 0.
    pub first_splits: Box<[(SigId, SigId)]>,
    /// Per content letter (ascending): prefix before its last occurrence.
    /// Empty at level 0.
    pub last_prefixes: Box<[SigId]>,
}

/// Hash-consing table for signatures.
#[derive(Debug, Default)]
pub struct SignatureInterner {
    nodes: Vec<SigNode>,
    index: HashMap<SigNode, SigId>,
}

/// Class of a word under one of the three congruences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassKey {
    pub r: Option<SigId>,
    pub l: Option<SigId>,
}

impl SignatureInterner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: SigId) -> &SigNode {
        &self.nodes[id.0 as usize]
    }

    fn intern(&mut self, node: SigNode) -> SigId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = SigId(self.nodes.len() as u32);
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    /// Level-`n` signature of `u` for `≡ₙᴿ`.
    pub fn r_signature(&mut self, u: &[Letter], n: u32) -> SigId {
        let mut memo = HashMap::new();
        self.sig(u, 0, u.len(), n, &mut memo)
    }

    /// Level-`n` signature of `u` for `≡ₙᴸ` (the R-signature of the reversal).
    pub fn l_signature(&mut self, u: &[Letter], n: u32) -> SigId {
        self.r_signature(&reverse(u), n)
    }

    pub fn class_key(&mut self, u: &[Letter], n: u32, mode: Mode) -> ClassKey {
        let r = matches!(mode, Mode::R | Mode::RL).then(|| self.r_signature(u, n));
        let l = matches!(mode, Mode::L | Mode::RL).then(|| self.l_signature(u, n));
        ClassKey { r, l }
    }

    fn sig(
        &mut self,
        word: &[Letter],
        start: usize,
        end: usize,
        level: u32,
        memo: &mut HashMap<(usize, usize, u32), SigId>,
    ) -> SigId {
        if let Some(&id) = memo.get(&(start, end, level)) {
            return id;
        }
        let slice = &word[start..end];
        let alpha = content(slice);
        let node = if level == 0 {
            SigNode {
                level,
                content: alpha,
                first_splits: Box::new([]),
                last_prefixes: Box::new([]),
            }
        } else {
            let mut first = Vec::with_capacity(alpha.len());
            let mut last = Vec::with_capacity(alpha.len());
            for a in alpha.iter() {
                let p = start + slice.iter().position(|&b| b == a).unwrap();
                let q = start + slice.iter().rposition(|&b| b == a).unwrap();
                let pre = self.sig(word, start, p, level - 1, memo);
                let suf = self.sig(word, p + 1, end, level - 1, memo);
                first.push((pre, suf));
                last.push(self.sig(word, start, q, level - 1, memo));
            }
            SigNode {
                level,
                content: alpha,
                first_splits: first.into_boxed_slice(),
                last_prefixes: last.into_boxed_slice(),
            }
        };
        let id = self.intern(node);
        memo.insert((start, end, level), id);
        id
    }

    /// Nested JSON rendering of a signature.
    pub fn describe(&self, id: SigId, alphabet: &Alphabet) -> Value {
        let node = self.node(id);
        let letters: Vec<Letter> = node.content.iter().collect();
        let content: String = letters.iter().map(|&a| alphabet.char_of(a)).collect();
        if node.level == 0 {
            return json!({ "level": 0, "content": content });
        }
        let first: serde_json::Map<String, Value> = letters
            .iter()
            .zip(node.first_splits.iter())
            .map(|(&a, &(p, s))| {
                (
                    alphabet.char_of(a).to_string(),
                    json!({ "prefix": self.describe(p, alphabet), "suffix": self.describe(s, alphabet) }),
                )
            })
            .collect();
        let last: serde_json::Map<String, Value> = letters
            .iter()
            .zip(node.last_prefixes.iter())
            .map(|(&a, &p)| (alphabet.char_of(a).to_string(), self.describe(p, alphabet)))
            .collect();
        json!({
            "level": node.level,
            "content": content,
            "first_splits": first,
            "last_prefixes": last,
        })
    }
}

/// `u ≡ₙᴿ v`.
pub fn r_equiv(u: &[Letter], v: &[Letter], n: u32) -> bool {
    let mut interner = SignatureInterner::new();
    interner.r_signature(u, n) == interner.r_signature(v, n)
}

/// `u ≡ₙᴸ v`, i.e. the reversals are `≡ₙᴿ`-equivalent.
pub fn l_equiv(u: &[Letter], v: &[Letter], n: u32) -> bool {
    r_equiv(&reverse(u), &reverse(v), n)
}

/// `u ≡ₙ v`: both `≡ₙᴿ` and `≡ₙᴸ`.
pub fn equiv(u: &[Letter], v: &[Letter], n: u32) -> bool {
    r_equiv(u, v, n) && l_equiv(u, v, n)
}
