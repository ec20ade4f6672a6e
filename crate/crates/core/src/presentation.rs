//! Finite group presentations and torsion classification.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::word::{primitive_period, write_syllable, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("empty generator name")]
    EmptyGeneratorName,
    #[error("relator {relator} uses generator index {generator}, but only {rank} generators exist")]
    UnknownGenerator { relator: usize, generator: usize, rank: usize },
    #[error("surface genus must be at least 1")]
    ZeroGenus,
}

/// `⟨generators | relators⟩`.
///
/// Relators are stored cyclically reduced. The spelling each relator was
/// given in (as `(generator, exponent)` syllables) is kept for display and
/// serialization.
#[derive(Debug, Clone)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    spellings: Vec<Vec<(usize, i64)>>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relators == other.relators
    }
}

impl Eq for Presentation {}

impl Presentation {
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        relators: Vec<Word>,
    ) -> Result<Presentation, PresentationError> {
        let spellings = relators.iter().map(|r| r.syllables()).collect();
        Presentation::with_spellings(generators, spellings)
    }

    /// Build from relators given as syllable lists, keeping them as spelled.
    pub fn with_spellings<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        spellings: Vec<Vec<(usize, i64)>>,
    ) -> Result<Presentation, PresentationError> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in &generators {
            if name.is_empty() {
                return Err(PresentationError::EmptyGeneratorName);
            }
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let rank = generators.len();
        let mut relators = Vec::with_capacity(spellings.len());
        for (i, s) in spellings.iter().enumerate() {
            if let Some(&(g, _)) = s.iter().find(|(g, _)| *g >= rank) {
                return Err(PresentationError::UnknownGenerator { relator: i, generator: g, rank });
            }
            relators.push(Word::from_syllables(s).cyclic_core());
        }
        Ok(Presentation { generators, relators, spellings })
    }

    /// The free group on `generators`.
    pub fn free<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Presentation, PresentationError> {
        Presentation::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn spellings(&self) -> &[Vec<(usize, i64)>] {
        &self.spellings
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn is_one_relator(&self) -> bool {
        self.relators.len() == 1
    }

    /// Same relators over a renamed alphabet.
    pub fn renamed(&self, names: Vec<String>) -> Result<Presentation, PresentationError> {
        assert_eq!(names.len(), self.rank(), "rename must preserve rank");
        let mut p = Presentation::with_spellings(names, self.spellings.clone())?;
        p.relators = self.relators.clone();
        Ok(p)
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> crate::word::WordDisplay<'a, String> {
        w.display(&self.generators)
    }

    pub(crate) fn from_parts(generators: Vec<String>, relators: Vec<Word>) -> Presentation {
        let relators: Vec<Word> = relators.into_iter().map(|r| r.cyclic_core()).collect();
        let spellings = relators.iter().map(|r| r.syllables()).collect();
        Presentation { generators, relators, spellings }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        for (i, s) in self.spellings.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            if s.is_empty() {
                f.write_str("1")?;
            }
            for (j, &(g, k)) in s.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write_syllable(f, &self.generators[g], k)?;
            }
        }
        f.write_str(">")
    }
}

/// Decompose a cyclically reduced nonempty word as `rootⁿ` with `n` maximal.
pub fn proper_power_root(w: &Word) -> Result<(Word, usize), WordError> {
    if w.is_empty() {
        return Err(WordError::Empty);
    }
    if !w.is_cyclically_reduced() {
        return Err(WordError::NotCyclicallyReduced);
    }
    let period = primitive_period(w.letters());
    Ok((Word::new(w.letters()[..period].to_vec()), w.len() / period))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionClassification {
    /// The cyclically reduced relator is `rootᵉˣᵖᵒⁿᵉⁿᵗ` with exponent at least 2.
    Torsion { root: Word, exponent: usize },
    /// One relator that is not a proper power. `free` is set when the
    /// relator reduces to the empty word, so the group is free.
    TorsionFree { free: bool },
    NotOneRelator { relators: usize },
}

impl TorsionClassification {
    pub fn is_torsion(&self) -> bool {
        matches!(self, TorsionClassification::Torsion { .. })
    }
}

pub fn classify_torsion(p: &Presentation) -> TorsionClassification {
    if !p.is_one_relator() {
        return TorsionClassification::NotOneRelator { relators: p.relators().len() };
    }
    let r = &p.relators()[0];
    if r.is_empty() {
        return TorsionClassification::TorsionFree { free: true };
    }
    let (root, exponent) = proper_power_root(r).expect("stored relators are cyclically reduced");
    if exponent >= 2 {
        TorsionClassification::Torsion { root, exponent }
    } else {
        TorsionClassification::TorsionFree { free: false }
    }
}

/// `⟨a1, b1, …, ag, bg | [a1, b1] ⋯ [ag, bg]⟩`.
pub fn surface_presentation(genus: usize) -> Result<Presentation, PresentationError> {
    if genus == 0 {
        return Err(PresentationError::ZeroGenus);
    }
    let mut names = Vec::with_capacity(2 * genus);
    let mut spelling = Vec::with_capacity(4 * genus);
    for i in 0..genus {
        names.push(format!("a{}", i + 1));
        names.push(format!("b{}", i + 1));
        let (a, b) = (2 * i, 2 * i + 1);
        spelling.extend_from_slice(&[(a, 1), (b, 1), (a, -1), (b, -1)]);
    }
    Presentation::with_spellings(names, vec![spelling])
}

/// If `p` is a product-of-commutators presentation `[x1, y1] ⋯ [xg, yg]` over
/// exactly its `2g` generators (up to renaming), return `g`.
pub fn surface_genus(p: &Presentation) -> Option<usize> {
    if !p.is_one_relator() {
        return None;
    }
    let r = p.relators()[0].letters();
    if r.is_empty() || !r.len().is_multiple_of(4) || p.rank() * 2 != r.len() {
        return None;
    }
    let mut used = vec![false; p.rank()];
    for block in r.chunks(4) {
        let (x, y) = (block[0], block[1]);
        if x.is_inverse() || y.is_inverse() || x.generator() == y.generator() {
            return None;
        }
        if block[2] != x.inverse() || block[3] != y.inverse() {
            return None;
        }
        for g in [x.generator(), y.generator()] {
            if std::mem::replace(&mut used[g], true) {
                return None;
            }
        }
    }
    Some(r.len() / 4)
}
