//! Free-group words over an indexed alphabet.
//!
//! A [`Word`] is a flat sequence of signed generator letters. Generators are
//! referred to by their index in the owning alphabet; names only matter when
//! a word is displayed or parsed.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A generator or its formal inverse.
///
/// Stored as a nonzero `i32`: `g + 1` for generator `g`, `-(g + 1)` for its
/// inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        let code = i32::try_from(generator + 1).expect("generator index out of range");
        Letter(if inverse { -code } else { code })
    }

    pub fn pos(generator: usize) -> Letter {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Letter {
        Letter::new(generator, true)
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// `+1` or `-1`.
    #[inline]
    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    #[inline]
    pub fn cancels(self, other: Letter) -> bool {
        self.0 == -other.0
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word is not freely reduced")]
    NotReduced,
    #[error("word is empty")]
    Empty,
}

/// A finite sequence of letters. Not necessarily reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    /// The one-letter word `g^k` expanded to `|k|` letters.
    pub fn power_of(generator: usize, exponent: i64) -> Word {
        let letter = Letter::new(generator, exponent < 0);
        Word { letters: vec![letter; exponent.unsigned_abs() as usize] }
    }

    /// Build a word from `(generator, exponent)` pairs.
    pub fn from_syllables(syllables: &[(usize, i64)]) -> Word {
        let mut letters = Vec::new();
        for &(g, k) in syllables {
            let letter = Letter::new(g, k < 0);
            letters.extend(std::iter::repeat_n(letter, k.unsigned_abs() as usize));
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&first), Some(&last)) => self.len() == 1 || !first.cancels(last),
                _ => true,
            }
    }

    /// Free reduction in a single stack pass.
    pub fn free_reduce(&self) -> Word {
        Word { letters: reduce_letters(self.letters.iter().copied()) }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Product in the free group: concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        Word { letters: reduce_letters(self.letters.iter().chain(other.letters.iter()).copied()) }
    }

    /// Concatenation without reduction.
    pub fn concat_raw(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self` repeated `n` times, without reduction.
    pub fn repeat(&self, n: usize) -> Word {
        Word { letters: self.letters.repeat(n) }
    }

    /// Split the freely reduced form of `self` as `conjugator · core · conjugator⁻¹`
    /// with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let reduced = self.free_reduce().letters;
        let mut lo = 0;
        let mut hi = reduced.len();
        while hi - lo >= 2 && reduced[lo].cancels(reduced[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (Word::new(reduced[lo..hi].to_vec()), Word::new(reduced[..lo].to_vec()))
    }

    /// The cyclically reduced core, discarding the conjugator.
    pub fn cyclic_core(&self) -> Word {
        self.cyclic_reduce().0
    }

    /// The rotation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// All distinct cyclic rotations, in order of rotation offset.
    ///
    /// A word `rⁿ` with `r` primitive has exactly `|r|` distinct rotations;
    /// only offsets below the primitive period are emitted.
    pub fn rotations(&self) -> Result<Vec<Word>, WordError> {
        if !self.is_cyclically_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        if self.is_empty() {
            return Ok(vec![Word::empty()]);
        }
        let period = primitive_period(&self.letters);
        Ok((0..period).map(|k| self.rotate(k)).collect())
    }

    /// The lexicographically least rotation; identifies a cyclic word.
    pub fn min_rotation(&self) -> Word {
        (0..self.len().max(1)).map(|k| self.rotate(k)).min().unwrap_or_default()
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters.iter().filter(|l| l.generator() == generator).map(|l| l.sign()).sum()
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.letters.iter().filter(|l| l.generator() == generator).count()
    }

    /// Generators that occur in the word.
    pub fn support(&self) -> BTreeSet<usize> {
        self.letters.iter().map(|l| l.generator()).collect()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    /// All start indices at which `needle` occurs contiguously.
    pub fn find_subword(&self, needle: &Word) -> Vec<usize> {
        if needle.is_empty() {
            return (0..=self.len()).collect();
        }
        if needle.len() > self.len() {
            return Vec::new();
        }
        self.letters
            .windows(needle.len())
            .enumerate()
            .filter(|(_, w)| *w == needle.letters())
            .map(|(i, _)| i)
            .collect()
    }

    /// Rewrite every letter through `f`. The result is not reduced.
    pub fn substitute<F>(&self, mut f: F) -> Word
    where
        F: FnMut(usize) -> Word,
    {
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.letters {
            let image = f(l.generator());
            if l.is_inverse() {
                out.extend(image.inverse().letters);
            } else {
                out.extend(image.letters);
            }
        }
        Word::new(out)
    }

    /// Maximal runs of equal letters as `(generator, signed length)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        let mut prev: Option<Letter> = None;
        for &l in &self.letters {
            match (prev, out.last_mut()) {
                (Some(p), Some(last)) if p == l => last.1 += l.sign(),
                _ => out.push((l.generator(), l.sign())),
            }
            prev = Some(l);
        }
        out
    }

    /// Render with generator names, e.g. `a b^3 a^-1`.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.letters.iter()).finish()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, k)) in self.word.syllables().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write_syllable(f, self.names[g].as_ref(), k)?;
        }
        Ok(())
    }
}

pub(crate) fn write_syllable(f: &mut impl fmt::Write, name: &str, exponent: i64) -> fmt::Result {
    if exponent == 1 {
        f.write_str(name)
    } else {
        write!(f, "{name}^{exponent}")
    }
}

fn reduce_letters(letters: impl Iterator<Item = Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    stack
}

/// Smallest `p` dividing `|w|` such that `w` is `w[..p]` repeated.
pub(crate) fn primitive_period(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| letters[i] == letters[i - p]))
        .unwrap_or(n)
}
