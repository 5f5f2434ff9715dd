use rand::Rng;

use crate::error::{Error, Result};

use super::{equiv, Letter, Word};

/// Shape parameters for [`generate_equiv_pair`].
#[derive(Clone, Copy, Debug)]
pub struct PairGenerator {
    pub alphabet_size: usize,
    pub level: u32,
    /// Upper bound on the number of rewrites spliced into the pair.
    pub max_rewrites: usize,
    /// Upper bound on the length of shared context pieces.
    pub max_context: usize,
    /// Upper bound on the length of the words `w, x, y, z` inside rewrites.
    pub max_factor: usize,
    pub attempts: usize,
}

impl PairGenerator {
    pub fn new(alphabet_size: usize, level: u32) -> Self {
        PairGenerator {
            alphabet_size,
            level,
            max_rewrites: 3,
            max_context: 4,
            max_factor: 3,
            attempts: 100,
        }
    }

    fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, min: usize, max: usize) -> Word {
        let len = rng.gen_range(min..=max);
        Word(
            (0..len)
                .map(|_| rng.gen_range(0..self.alphabet_size) as Letter)
                .collect(),
        )
    }

    /// One side-by-side rewrite: `w^(n+2)` against `w^(n+1)`, or
    /// `(xy)^(n+1) x (zx)^(n+1)` against `(xy)^(n+1) (zx)^(n+1)`.
    fn rewrite<R: Rng + ?Sized>(&self, rng: &mut R) -> (Word, Word) {
        let k = self.level as usize + 1;
        if rng.gen_bool(0.5) {
            let w = self.random_word(rng, 1, self.max_factor);
            (w.pow(k + 1), w.pow(k))
        } else {
            let x = self.random_word(rng, 1, self.max_factor);
            let y = self.random_word(rng, 1, self.max_factor);
            let z = self.random_word(rng, 1, self.max_factor);
            let left = x.concat(&y).pow(k);
            let right = z.concat(&x).pow(k);
            (left.concat(&x).concat(&right), left.concat(&right))
        }
    }

    /// Builds `c₀ X₁ c₁ X₂ ⋯` and `c₀ Y₁ c₁ Y₂ ⋯` from rewrite pairs `(Xᵢ, Yᵢ)`
    /// in random orientation; the congruence property makes the results
    /// equivalent.
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Word, Word)> {
        if self.alphabet_size == 0 {
            return Ok((Word::empty(), Word::empty()));
        }
        for _ in 0..self.attempts {
            let mut u = self.random_word(rng, 0, self.max_context);
            let mut v = u.clone();
            for _ in 0..rng.gen_range(0..=self.max_rewrites) {
                let (mut x, mut y) = self.rewrite(rng);
                if rng.gen_bool(0.5) {
                    std::mem::swap(&mut x, &mut y);
                }
                let c = self.random_word(rng, 0, self.max_context);
                u = u.concat(&x).concat(&c);
                v = v.concat(&y).concat(&c);
            }
            if equiv(&u, &v, self.level) {
                return Ok((u, v));
            }
        }
        Err(Error::GenerationBudgetExceeded {
            attempts: self.attempts,
        })
    }
}

/// A random pair `u ≡ₙ v` over the first `alphabet_size` letters.
pub fn generate_equiv_pair<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet_size: usize,
    level: u32,
) -> Result<(Word, Word)> {
    PairGenerator::new(alphabet_size, level).generate(rng)
}
