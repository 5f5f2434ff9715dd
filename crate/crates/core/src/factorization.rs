//! R-/L-factorizations of words under a homomorphism into a monoid, the
//! alignment of two `≡ₙ`-equivalent words on a common marker skeleton, the
//! left-to-right substitution chain between them, and the quotient map
//! `A*/≡ₙ → M`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{Element, FiniteMonoid, GreenSummary};
use crate::omega::in_w;
use crate::words::{build_quotient, equiv, Alphabet, Letter, Mode, QuotientMonoid, Word};

/// A homomorphism `A* → M` given by the images of the letters.
#[derive(Clone, Debug)]
pub struct WordHomomorphism {
    monoid: FiniteMonoid,
    alphabet: Alphabet,
    images: Vec<Element>,
    green: GreenSummary,
}

impl WordHomomorphism {
    pub fn new(monoid: FiniteMonoid, alphabet: Alphabet, images: Vec<Element>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::RangeError(format!(
                "{} letter images for an alphabet of {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        for &x in &images {
            monoid.element(x.0)?;
        }
        let green = monoid.green();
        Ok(WordHomomorphism {
            monoid,
            alphabet,
            images,
            green,
        })
    }

    /// Parses `"a=1,b=ab"`: letters map to element labels or indices. The
    /// alphabet is the left-hand sides in order.
    pub fn parse(monoid: FiniteMonoid, spec: &str) -> Result<Self> {
        let mut letters = String::new();
        let mut images = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (letter, target) = part.split_once('=').ok_or_else(|| {
                Error::FormatError(format!("expected letter=element, got '{part}'"))
            })?;
            let mut chars = letter.trim().chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::FormatError(format!(
                    "'{letter}' is not a single letter"
                )));
            };
            let x = monoid.find(target.trim()).ok_or_else(|| {
                Error::FormatError(format!(
                    "'{}' is not an element of the monoid",
                    target.trim()
                ))
            })?;
            letters.push(c);
            images.push(x);
        }
        let alphabet = Alphabet::new(&letters)?;
        Self::new(monoid, alphabet, images)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn green(&self) -> &GreenSummary {
        &self.green
    }

    pub fn letter_image(&self, a: Letter) -> Element {
        self.images[a as usize]
    }

    pub fn letter_images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, w: &[Letter]) -> Element {
        self.monoid
            .product(w.iter().map(|&a| self.images[a as usize]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorizationKind {
    R,
    L,
}

/// `u = b₁u₁⋯b_ku_k` (kind R) or `v = v₁c₁⋯v_kc_k` (kind L).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedFactorization {
    pub kind: FactorizationKind,
    pub word: Word,
    /// Strictly increasing positions of the marker letters.
    pub markers: Vec<usize>,
    /// For kind R, `blocks[i]` follows marker `i`; for kind L it precedes it.
    pub blocks: Vec<Word>,
}

impl MarkedFactorization {
    pub fn len(&self) -> usize {
        self.markers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    pub fn marker_letters(&self) -> Vec<Letter> {
        self.markers.iter().map(|&p| self.word[p]).collect()
    }

    pub fn reconstruct(&self) -> Word {
        let mut out = Word::empty();
        for (i, &p) in self.markers.iter().enumerate() {
            match self.kind {
                FactorizationKind::R => {
                    out.push(self.word[p]);
                    out = out.concat(&self.blocks[i]);
                }
                FactorizationKind::L => {
                    out = out.concat(&self.blocks[i]);
                    out.push(self.word[p]);
                }
            }
        }
        out
    }
}

fn blocks_between(word: &[Letter], markers: &[usize], kind: FactorizationKind) -> Vec<Word> {
    match kind {
        FactorizationKind::R => markers
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let end = markers.get(i + 1).copied().unwrap_or(word.len());
                Word::from_letters(&word[p + 1..end])
            })
            .collect(),
        FactorizationKind::L => markers
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let start = if i == 0 { 0 } else { markers[i - 1] + 1 };
                Word::from_letters(&word[start..p])
            })
            .collect(),
    }
}

/// Greedy left-to-right R-factorization: a letter becomes a marker exactly
/// when appending it makes the image of the prefix drop strictly in the
/// R-order. Right multiplication never climbs the R-order, so "not R-related"
/// means "strictly below".
pub fn r_factorize(phi: &WordHomomorphism, u: &[Letter]) -> MarkedFactorization {
    let m = phi.monoid();
    let g = phi.green();
    let mut markers = Vec::new();
    let mut prefix = m.identity();
    for (i, &a) in u.iter().enumerate() {
        let next = m.mul(prefix, phi.letter_image(a));
        if i == 0 || !g.r_related(prefix, next) {
            markers.push(i);
        }
        prefix = next;
    }
    let blocks = blocks_between(u, &markers, FactorizationKind::R);
    MarkedFactorization {
        kind: FactorizationKind::R,
        word: Word::from_letters(u),
        markers,
        blocks,
    }
}

/// Mirror of [`r_factorize`]: scans right to left with the L-order.
pub fn l_factorize(phi: &WordHomomorphism, v: &[Letter]) -> MarkedFactorization {
    let m = phi.monoid();
    let g = phi.green();
    let mut markers = Vec::new();
    let mut suffix = m.identity();
    for (i, &a) in v.iter().enumerate().rev() {
        let next = m.mul(phi.letter_image(a), suffix);
        if i + 1 == v.len() || !g.l_related(suffix, next) {
            markers.push(i);
        }
        suffix = next;
    }
    markers.reverse();
    let blocks = blocks_between(v, &markers, FactorizationKind::L);
    MarkedFactorization {
        kind: FactorizationKind::L,
        word: Word::from_letters(v),
        markers,
        blocks,
    }
}

/// The common skeleton `u = a₁s₁⋯a_{ℓ−1}s_{ℓ−1}a_ℓ`,
/// `v = a₁t₁⋯a_{ℓ−1}t_{ℓ−1}a_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlignedFactorization {
    /// `a₁ … a_ℓ`.
    pub markers: Vec<Letter>,
    /// `s₁ … s_{ℓ−1}`, cut from `u`.
    pub s_blocks: Vec<Word>,
    /// `t₁ … t_{ℓ−1}`, cut from `v`.
    pub t_blocks: Vec<Word>,
    /// Marker positions in `u`.
    pub u_positions: Vec<usize>,
    /// Marker positions in `v`.
    pub v_positions: Vec<usize>,
}

impl AlignedFactorization {
    /// `ℓ`, the number of markers.
    pub fn len(&self) -> usize {
        self.markers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    /// `a₁x₁a₂x₂⋯a_ℓ` where `xᵢ` is `sᵢ` for `i ≤ switch` and `tᵢ` after.
    pub fn mixed_word(&self, switch: usize) -> Word {
        let mut out = Word::empty();
        for (i, &a) in self.markers.iter().enumerate() {
            out.push(a);
            if i + 1 < self.markers.len() {
                let block = if i < switch {
                    &self.s_blocks[i]
                } else {
                    &self.t_blocks[i]
                };
                out = out.concat(block);
            }
        }
        out
    }

    pub fn u(&self) -> Word {
        self.mixed_word(self.markers.len())
    }

    pub fn v(&self) -> Word {
        self.mixed_word(0)
    }
}

/// Cuts both words at the merged marker positions.
fn skeleton(u: &[Letter], v: &[Letter], pu: Vec<usize>, pv: Vec<usize>) -> AlignedFactorization {
    let markers: Vec<Letter> = pu.iter().map(|&p| u[p]).collect();
    let cut = |w: &[Letter], ps: &[usize]| -> Vec<Word> {
        ps.windows(2)
            .map(|pair| Word::from_letters(&w[pair[0] + 1..pair[1]]))
            .collect()
    };
    AlignedFactorization {
        markers,
        s_blocks: cut(u, &pu),
        t_blocks: cut(v, &pv),
        u_positions: pu,
        v_positions: pv,
    }
}

/// Aligns `u ≡ₙ v` for `φ: A* → M` with `M ∈ W` and `n ≥ 2|M|`.
///
/// The markers of the R-factorization of `u` are transferred into `v` by
/// successive first-occurrence splits, and the markers of the L-factorization
/// of `v` into `u` by successive last-occurrence splits. The relative order
/// of the two marker families, coincidences included, must agree in both
/// words; the union of the markers then cuts both words into the skeleton.
/// The result is checked with [`verify_lemma5`] before it is returned.
pub fn align(
    phi: &WordHomomorphism,
    u: &[Letter],
    v: &[Letter],
    n: u32,
) -> Result<AlignedFactorization> {
    let m = phi.monoid();
    if !in_w(m)? {
        return Err(Error::PreconditionFailed(
            "the monoid does not satisfy the W identity".into(),
        ));
    }
    if (n as usize) < 2 * m.size() {
        return Err(Error::PreconditionFailed(format!(
            "level {n} is below 2|M| = {}",
            2 * m.size()
        )));
    }
    if !equiv(u, v, n) {
        return Err(Error::PreconditionFailed(format!(
            "the words are not equivalent at level {n}"
        )));
    }
    let af = align_markers(phi, u, v)?;
    if af.len() > 2 * m.size() {
        return Err(Error::AlignmentCheckFailed { index: af.len() });
    }
    let check = verify_lemma5(phi, &af);
    if let Some(index) = check.failing_index {
        return Err(Error::AlignmentCheckFailed { index });
    }
    Ok(af)
}

/// The marker transfer and merge of [`align`], without its preconditions.
pub fn align_markers(
    phi: &WordHomomorphism,
    u: &[Letter],
    v: &[Letter],
) -> Result<AlignedFactorization> {
    let rf = r_factorize(phi, u);
    let lf = l_factorize(phi, v);

    // b-markers: positions in u, then transferred into v left to right
    let bu = rf.markers.clone();
    let mut bv = Vec::with_capacity(bu.len());
    let mut from = 0;
    for (i, &p) in bu.iter().enumerate() {
        let b = u[p];
        let q = v[from..]
            .iter()
            .position(|&c| c == b)
            .map(|k| from + k)
            .ok_or(Error::MarkerTransferFailed {
                kind: "R",
                index: i + 1,
            })?;
        bv.push(q);
        from = q + 1;
    }

    // c-markers: positions in v, then transferred into u right to left
    let cv = lf.markers.clone();
    let mut cu = vec![0; cv.len()];
    let mut to = u.len();
    for (j, &p) in cv.iter().enumerate().rev() {
        let c = v[p];
        let q = u[..to]
            .iter()
            .rposition(|&d| d == c)
            .ok_or(Error::MarkerTransferFailed {
                kind: "L",
                index: j + 1,
            })?;
        cu[j] = q;
        to = q;
    }

    for (i, (&pb_u, &pb_v)) in bu.iter().zip(&bv).enumerate() {
        for (j, (&pc_u, &pc_v)) in cu.iter().zip(&cv).enumerate() {
            if pb_u.cmp(&pc_u) != pb_v.cmp(&pc_v) {
                return Err(Error::AlignmentOrderMismatch {
                    b_index: i + 1,
                    c_index: j + 1,
                });
            }
        }
    }

    // merge both families, collapsing coincident markers
    let mut merged: Vec<(usize, usize)> = bu
        .iter()
        .zip(&bv)
        .chain(cu.iter().zip(&cv))
        .map(|(&x, &y)| (x, y))
        .collect();
    merged.sort_unstable();
    merged.dedup();
    let pu: Vec<usize> = merged.iter().map(|p| p.0).collect();
    let pv: Vec<usize> = merged.iter().map(|p| p.1).collect();
    let strictly = |ps: &[usize]| ps.windows(2).all(|w| w[0] < w[1]);
    if !strictly(&pu) || !strictly(&pv) {
        return Err(Error::AlignmentOrderMismatch {
            b_index: 0,
            c_index: 0,
        });
    }
    if pu.first().copied().unwrap_or(0) != 0
        || pv.first().copied().unwrap_or(0) != 0
        || pu.last().map_or(!u.is_empty(), |&p| p + 1 != u.len())
        || pv.last().map_or(!v.is_empty(), |&p| p + 1 != v.len())
        || pu.iter().zip(&pv).any(|(&x, &y)| u[x] != v[y])
    {
        return Err(Error::AlignmentOrderMismatch {
            b_index: 0,
            c_index: 0,
        });
    }
    Ok(skeleton(u, v, pu, pv))
}

/// Outcome of [`verify_lemma5`]; `failing_index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonCheck {
    pub holds: bool,
    pub failing_index: Option<usize>,
}

/// Checks, for every `i ∈ {1, …, ℓ−1}`,
///
/// ```text
/// φ(a₁s₁⋯a_i) R φ(a₁s₁⋯a_is_i) R φ(a₁s₁⋯a_it_i)
/// φ(a_{i+1}t_{i+1}⋯a_ℓ) L φ(t_ia_{i+1}⋯a_ℓ) L φ(s_ia_{i+1}t_{i+1}⋯a_ℓ)
/// ```
pub fn verify_lemma5(phi: &WordHomomorphism, af: &AlignedFactorization) -> SkeletonCheck {
    let m = phi.monoid();
    let g = phi.green();
    let l = af.len();
    let img = |w: &[Letter]| phi.image(w);

    // prefix[i] = φ(a₁s₁⋯a_{i}) (0-based: markers 0..=i with s-blocks between)
    let mut prefixes = Vec::with_capacity(l);
    let mut acc = m.identity();
    for i in 0..l {
        acc = m.mul(acc, phi.letter_image(af.markers[i]));
        prefixes.push(acc);
        if i + 1 < l {
            acc = m.mul(acc, img(&af.s_blocks[i]));
        }
    }
    // suffixes[i] = φ(a_{i}t_{i}⋯a_ℓ) (0-based: markers i..l with t-blocks)
    let mut suffixes = vec![m.identity(); l];
    let mut acc = m.identity();
    for i in (0..l).rev() {
        if i + 1 < l {
            acc = m.mul(img(&af.t_blocks[i]), acc);
        }
        acc = m.mul(phi.letter_image(af.markers[i]), acc);
        suffixes[i] = acc;
    }

    for i in 0..l.saturating_sub(1) {
        let s = img(&af.s_blocks[i]);
        let t = img(&af.t_blocks[i]);
        let a = prefixes[i];
        let (b, c) = (m.mul(a, s), m.mul(a, t));
        let d = suffixes[i + 1];
        let (e, f) = (m.mul(t, d), m.mul(s, d));
        let r_ok = g.r_related(a, b) && g.r_related(b, c);
        let l_ok = g.l_related(d, e) && g.l_related(e, f);
        if !(r_ok && l_ok) {
            return SkeletonCheck {
                holds: false,
                failing_index: Some(i + 1),
            };
        }
    }
    SkeletonCheck {
        holds: true,
        failing_index: None,
    }
}

/// The words `v = w₀, w₁, …, w_{ℓ−1} = u` where `w_i` has `s₁…s_i` in place
/// of `t₁…t_i`, with their (constant) images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainTrace {
    pub words: Vec<Word>,
    pub images: Vec<Element>,
}

/// Replaces `t_i` by `s_i` strictly left to right, checking after every step
/// that the image is unchanged.
pub fn substitution_chain(phi: &WordHomomorphism, af: &AlignedFactorization) -> Result<ChainTrace> {
    if let Some(i) = verify_lemma5(phi, af).failing_index {
        return Err(Error::PreconditionFailed(format!(
            "the skeleton fails its R/L conditions at block {i}"
        )));
    }
    let steps = af.len().saturating_sub(1);
    let mut words = Vec::with_capacity(steps + 1);
    let mut images = Vec::with_capacity(steps + 1);
    let first = af.mixed_word(0);
    images.push(phi.image(&first));
    words.push(first);
    for i in 1..=steps {
        let w = af.mixed_word(i);
        let image = phi.image(&w);
        let before = *images.last().unwrap();
        if image != before {
            return Err(Error::ChainStepMismatch {
                step: i,
                before: before.0,
                after: image.0,
            });
        }
        images.push(image);
        words.push(w);
    }
    Ok(ChainTrace { words, images })
}

/// Outcome of [`quotient_homomorphism`].
#[derive(Clone, Debug)]
pub struct QuotientVerdict {
    pub is_quotient: bool,
    pub level: u32,
    /// The level is below `2|M|`, where the construction is not guaranteed.
    pub heuristic: bool,
    pub quotient: QuotientMonoid,
    /// Image of each class, `h(class) = φ(representative)`.
    pub class_map: Vec<Element>,
    pub surjective: bool,
    /// First `(class, letter)` with `h(class·a) ≠ h(class)·φ(a)`.
    pub inconsistency: Option<(usize, Letter)>,
}

/// Builds `A*/≡ₙ` over `A = generators` and checks that
/// `class ↦ φ(representative)` is a well-defined surjective homomorphism
/// onto `m`. `n` defaults to `2|M|`. Letters are named `a, b, c, …` in the
/// order of `generators`.
pub fn quotient_homomorphism(
    m: &FiniteMonoid,
    generators: &[Element],
    level: Option<u32>,
    class_cap: usize,
) -> Result<QuotientVerdict> {
    for &g in generators {
        m.element(g.0)?;
    }
    if m.generated_by(generators).len() != m.size() {
        return Err(Error::PreconditionFailed(
            "the given elements do not generate the monoid".into(),
        ));
    }
    if !in_w(m)? {
        return Err(Error::PreconditionFailed(
            "the monoid does not satisfy the W identity".into(),
        ));
    }
    let full = 2 * m.size() as u32;
    let n = level.unwrap_or(full);
    let alphabet = Alphabet::standard(generators.len())?;
    let phi = WordHomomorphism::new(m.clone(), alphabet.clone(), generators.to_vec())?;
    let quotient = build_quotient(&alphabet, n, Mode::RL, class_cap)?;

    let class_map: Vec<Element> = quotient
        .representatives
        .iter()
        .map(|w| phi.image(w))
        .collect();
    let mut inconsistency = None;
    'outer: for (c, row) in quotient.letter_action.iter().enumerate() {
        for a in alphabet.letters() {
            let target = row[a as usize];
            if class_map[target] != m.mul(class_map[c], phi.letter_image(a)) {
                inconsistency = Some((c, a));
                break 'outer;
            }
        }
    }
    let mut hit = vec![false; m.size()];
    for x in &class_map {
        hit[x.0] = true;
    }
    let surjective = hit.into_iter().all(|b| b);
    Ok(QuotientVerdict {
        is_quotient: surjective && inconsistency.is_none(),
        level: n,
        heuristic: n < full,
        quotient,
        class_map,
        surjective,
        inconsistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::named::*;

    fn hom(m: FiniteMonoid, spec: &str) -> WordHomomorphism {
        WordHomomorphism::parse(m, spec).unwrap()
    }

    fn word(phi: &WordHomomorphism, s: &str) -> Word {
        phi.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn empty_word_has_no_markers() {
        let phi = hom(u1(), "c=0");
        assert!(r_factorize(&phi, &[]).is_empty());
        assert!(l_factorize(&phi, &[]).is_empty());
    }

    #[test]
    fn chain_example() {
        let phi = hom(chain3(), "x=e,z=0");
        let f = r_factorize(&phi, &word(&phi, "xz"));
        assert_eq!(f.markers, vec![0, 1]);
        assert_eq!(f.blocks, vec![Word::empty(), Word::empty()]);
    }

    #[test]
    fn left_zero_example() {
        let phi = hom(lz2_one(), "a=a,b=b");
        let f = r_factorize(&phi, &word(&phi, "ab"));
        assert_eq!(f.markers, vec![0]);
        assert_eq!(f.blocks, vec![word(&phi, "b")]);
    }

    #[test]
    fn factorizations_reconstruct() {
        let phi = hom(b2(), "a=a,b=b,c=1");
        for s in ["abcab", "aab", "cabba", "babab", "c"] {
            let w = word(&phi, s);
            assert_eq!(r_factorize(&phi, &w).reconstruct(), w);
            assert_eq!(l_factorize(&phi, &w).reconstruct(), w);
        }
    }

    #[test]
    fn u1_alignment() {
        let phi = hom(u1(), "c=0");
        let u = word(&phi, "ccccc");
        let v = word(&phi, "cccccc");
        let af = align(&phi, &u, &v, 4).unwrap();
        assert_eq!(af.len(), 2);
        assert_eq!(af.markers, vec![0, 0]);
        assert_eq!(af.s_blocks, vec![word(&phi, "ccc")]);
        assert_eq!(af.t_blocks, vec![word(&phi, "cccc")]);
        assert_eq!((af.u(), af.v()), (u.clone(), v.clone()));
        let trace = substitution_chain(&phi, &af).unwrap();
        assert_eq!(trace.words, vec![v, u]);
        assert_eq!(trace.images, vec![Element(1), Element(1)]);
    }

    #[test]
    fn identical_words_align_trivially() {
        let phi = hom(rz2_one(), "a=a,b=b");
        let u = word(&phi, "abba");
        let af = align(&phi, &u, &u, 6).unwrap();
        assert_eq!(af.s_blocks, af.t_blocks);
        let trace = substitution_chain(&phi, &af).unwrap();
        assert!(trace.words.iter().all(|w| *w == u));
    }

    #[test]
    fn preconditions() {
        let phi = hom(b2(), "a=a,b=b");
        let u = word(&phi, "ab");
        assert!(matches!(
            align(&phi, &u, &u, 12),
            Err(Error::PreconditionFailed(_))
        ));
        let phi = hom(u1(), "c=0");
        let u = word(&phi, "cc");
        assert!(matches!(
            align(&phi, &u, &u, 3),
            Err(Error::PreconditionFailed(_))
        ));
        let v = word(&phi, "ccc");
        assert!(matches!(
            align(&phi, &u, &v, 4),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn skeleton_violation_is_located() {
        // chain 1 > e > 0 with x ↦ e, z ↦ 0, y ↦ 1: moving z into t₁ drops
        // the prefix out of its R-class.
        let phi = hom(chain3(), "x=e,y=1,z=0");
        let af = AlignedFactorization {
            markers: vec![0, 0],
            s_blocks: vec![word(&phi, "y")],
            t_blocks: vec![word(&phi, "z")],
            u_positions: vec![0, 2],
            v_positions: vec![0, 2],
        };
        let check = verify_lemma5(&phi, &af);
        assert!(!check.holds);
        assert_eq!(check.failing_index, Some(1));
        assert!(substitution_chain(&phi, &af).is_err());
    }

    #[test]
    fn single_marker_is_vacuous() {
        let phi = hom(u1(), "c=0");
        let af = align_markers(&phi, &word(&phi, "c"), &word(&phi, "c")).unwrap();
        assert_eq!(af.len(), 1);
        assert!(verify_lemma5(&phi, &af).holds);
        assert_eq!(substitution_chain(&phi, &af).unwrap().words.len(), 1);
    }

    #[test]
    fn quotient_of_u1() {
        let m = u1();
        let zero = m.find("0").unwrap();
        let v = quotient_homomorphism(&m, &[zero], None, 1000).unwrap();
        assert!(v.is_quotient && !v.heuristic);
        assert_eq!(v.level, 4);
        assert_eq!(v.quotient.class_count(), 6);
        assert_eq!(v.class_map[0], m.identity());
        assert!(v.class_map[1..].iter().all(|&x| x == zero));

        let v0 = quotient_homomorphism(&m, &[zero], Some(0), 1000).unwrap();
        assert!(v0.is_quotient && v0.heuristic);
        assert_eq!(v0.quotient.class_count(), 2);
    }

    #[test]
    fn quotient_of_trivial() {
        let t = FiniteMonoid::trivial();
        let v = quotient_homomorphism(&t, &[], None, 1000).unwrap();
        assert!(v.is_quotient);
        assert_eq!(v.level, 2);
        assert_eq!(v.quotient.class_count(), 1);
        let v = quotient_homomorphism(&t, &[t.identity()], None, 1000).unwrap();
        assert!(v.is_quotient);
    }

    #[test]
    fn quotient_preconditions() {
        let m = b2();
        let gens = [m.find("a").unwrap(), m.find("b").unwrap()];
        assert!(matches!(
            quotient_homomorphism(&m, &gens, None, 1000),
            Err(Error::PreconditionFailed(_))
        ));
        let m = u1();
        assert!(matches!(
            quotient_homomorphism(&m, &[], None, 1000),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn quotient_budget() {
        let m = rz2_one();
        let gens = [m.find("a").unwrap(), m.find("b").unwrap()];
        let err = quotient_homomorphism(&m, &gens, None, 500).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn hom_parsing() {
        assert!(WordHomomorphism::parse(u1(), "a=7").is_err());
        assert!(WordHomomorphism::parse(u1(), "ab=1").is_err());
        assert!(WordHomomorphism::parse(u1(), "a=1,a=0").is_err());
        let phi = hom(b2(), "x=ab, y=ba");
        assert_eq!(phi.image(&word(&phi, "xy")), b2().find("0").unwrap());
    }
}
