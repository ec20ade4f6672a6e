//! Dehn presentations and Dehn's algorithm.
//!
//! Two families are compiled: one-relator groups `⟨A | Rⁿ⟩` with torsion
//! (`R` cyclically reduced and not a proper power, `n ≥ 2`) and closed
//! orientable surface groups of genus at least 2. In both, every nonempty
//! reduced word representing the identity contains a long subword of a
//! cyclic conjugate of the relator or its inverse:
//!
//! * torsion case: longer than `(n−1)/n · |Rⁿ|`,
//! * surface case: longer than `|relator| / 2`.
//!
//! Replacing such a subword `u` of a table entry `u·t` by `t⁻¹` strictly
//! shortens the word without changing the element it represents, so
//! iterating decides the word problem.

use thiserror::Error;

use crate::oracle::{TrivialMove, TrivialWitness};
use crate::presentation::{classify_torsion, surface_genus, Presentation, TorsionClassification};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DehnError {
    #[error("not a Dehn presentation: {0}")]
    NotADehnPresentation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DehnKind {
    Torsion { root: Word, exponent: usize },
    Surface { genus: usize },
}

#[derive(Debug, Clone)]
pub struct DehnPresentation {
    source: Presentation,
    kind: DehnKind,
    full_relator: Word,
    table: Vec<Word>,
    threshold_num: usize,
    threshold_den: usize,
    min_match: usize,
}

impl DehnPresentation {
    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn kind(&self) -> &DehnKind {
        &self.kind
    }

    pub fn full_relator(&self) -> &Word {
        &self.full_relator
    }

    /// Distinct rotations of the relator, then of its inverse.
    pub fn conjugate_table(&self) -> &[Word] {
        &self.table
    }

    /// Matches must satisfy `len · den > num`.
    pub fn threshold(&self) -> (usize, usize) {
        (self.threshold_num, self.threshold_den)
    }

    pub fn qualifies(&self, len: usize) -> bool {
        len * self.threshold_den > self.threshold_num
    }

    /// Shortest qualifying subword length.
    pub fn min_match_len(&self) -> usize {
        self.min_match
    }

    /// Longest qualifying suffix of `letters` that is a prefix of a table
    /// entry, as `(length, entry)`.
    fn longest_suffix_match(&self, letters: &[Letter]) -> Option<(usize, usize)> {
        let max = self.full_relator.len().min(letters.len());
        for len in (self.min_match..=max).rev() {
            let suffix = &letters[letters.len() - len..];
            if let Some(entry) = self.table.iter().position(|e| &e.letters()[..len] == suffix) {
                return Some((len, entry));
            }
        }
        None
    }

    fn make_match(&self, position: usize, length: usize, entry: usize) -> SpellingMatch {
        let table_entry = self.table[entry].clone();
        let replacement = Word::new(table_entry.letters()[length..].to_vec()).inverse();
        SpellingMatch { position, length, entry, table_entry, replacement }
    }
}

pub fn compile_dehn(p: &Presentation) -> Result<DehnPresentation, DehnError> {
    let (kind, full_relator, num, den) = match classify_torsion(p) {
        TorsionClassification::Torsion { root, exponent } => {
            let full = p.relators()[0].clone();
            let num = (exponent - 1) * full.len();
            (DehnKind::Torsion { root, exponent }, full, num, exponent)
        }
        TorsionClassification::NotOneRelator { relators } => {
            return Err(DehnError::NotADehnPresentation(format!("{relators} relators")));
        }
        TorsionClassification::TorsionFree { .. } => match surface_genus(p) {
            Some(genus) if genus >= 2 => {
                let full = p.relators()[0].clone();
                let num = full.len();
                (DehnKind::Surface { genus }, full, num, 2)
            }
            Some(genus) => {
                return Err(DehnError::NotADehnPresentation(format!("surface group of genus {genus}")));
            }
            None => {
                return Err(DehnError::NotADehnPresentation("torsion-free one-relator group".into()));
            }
        },
    };
    let mut table: Vec<Word> = Vec::new();
    let rotations = full_relator.rotations().expect("cyclically reduced");
    let inverse_rotations = full_relator.inverse().rotations().expect("cyclically reduced");
    for r in rotations.into_iter().chain(inverse_rotations) {
        if !table.contains(&r) {
            table.push(r);
        }
    }
    Ok(DehnPresentation {
        source: p.clone(),
        kind,
        full_relator,
        table,
        threshold_num: num,
        threshold_den: den,
        min_match: num / den + 1,
    })
}

/// A long subword of a table entry found in a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpellingMatch {
    pub position: usize,
    pub length: usize,
    /// Index into the conjugate table.
    pub entry: usize,
    pub table_entry: Word,
    /// Inverse of the unmatched tail of the table entry.
    pub replacement: Word,
}

impl SpellingMatch {
    /// Splice the replacement over the matched subword and reduce.
    pub fn apply(&self, w: &Word) -> Word {
        let l = w.letters();
        let mut out = l[..self.position].to_vec();
        out.extend_from_slice(self.replacement.letters());
        out.extend_from_slice(&l[self.position + self.length..]);
        Word::new(out).free_reduce()
    }
}

/// The longest qualifying subword of `w` (ties: leftmost, then earliest
/// table entry).
pub fn find_spelling_subword(w: &Word, d: &DehnPresentation) -> Option<SpellingMatch> {
    let letters = w.letters();
    let mut best: Option<(usize, usize, usize)> = None;
    for pos in 0..letters.len() {
        for (i, e) in d.table.iter().enumerate() {
            let len = e.letters().iter().zip(&letters[pos..]).take_while(|(x, y)| x == y).count();
            if d.qualifies(len) && best.is_none_or(|(l, _, _)| len > l) {
                best = Some((len, pos, i));
            }
        }
    }
    best.map(|(len, pos, i)| d.make_match(pos, len, i))
}

/// One Dehn rewrite using [`find_spelling_subword`].
pub fn dehn_step(w: &Word, d: &DehnPresentation) -> Option<Word> {
    find_spelling_subword(w, d).map(|m| m.apply(w))
}

/// The rewrites performed by [`dehn_reduce`]. Each match is positioned in
/// the word produced by the previous step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: Word,
    pub steps: Vec<SpellingMatch>,
    pub final_word: Word,
}

impl ReductionTrace {
    pub fn is_trivial(&self) -> bool {
        self.final_word.is_empty()
    }

    /// Reconstruct `(before, match, after)` for every step.
    pub fn replay(&self) -> Vec<(Word, &SpellingMatch, Word)> {
        let mut cur = self.initial.clone();
        let mut out = Vec::with_capacity(self.steps.len());
        for m in &self.steps {
            let next = m.apply(&cur);
            out.push((cur, m, next.clone()));
            cur = next;
        }
        out
    }

    /// A product-of-conjugates certificate equivalent to the trace. Only
    /// meaningful when the trace ends at the empty word.
    ///
    /// A rewrite of `u` to `t⁻¹` (entry `u·t`) is the insertion of the
    /// entry's inverse `t⁻¹·u⁻¹` in front of `u`; a full-entry match is a
    /// deletion.
    pub fn to_witness(&self) -> TrivialWitness {
        let moves = self
            .steps
            .iter()
            .map(|m| {
                if m.replacement.is_empty() {
                    TrivialMove::Delete { position: m.position, relator: m.table_entry.clone() }
                } else {
                    TrivialMove::Insert { position: m.position, relator: m.table_entry.inverse() }
                }
            })
            .collect();
        TrivialWitness { moves, max_len: self.initial.len() }
    }
}

/// Dehn's algorithm in a single left-to-right pass.
///
/// The current word is kept as a reduced stack of examined letters followed
/// by pending input. After each push, the longest qualifying suffix of the
/// stack is rewritten and its replacement is fed back into the pending
/// input. Every subword lying inside the stack has already been checked, so
/// when the input runs out no qualifying subword remains. Work per letter
/// is bounded by a constant depending only on the presentation.
pub fn dehn_reduce(w: &Word, d: &DehnPresentation) -> ReductionTrace {
    let initial = w.free_reduce();
    let mut stack: Vec<Letter> = Vec::with_capacity(initial.len());
    let mut pending: Vec<Letter> = initial.letters().iter().rev().copied().collect();
    let mut steps = Vec::new();
    while let Some(l) = pending.pop() {
        stack.push(l);
        let Some((len, entry)) = d.longest_suffix_match(&stack) else {
            continue;
        };
        let position = stack.len() - len;
        let m = d.make_match(position, len, entry);
        stack.truncate(position);
        for &r in m.replacement.letters().iter().rev() {
            match pending.last() {
                Some(&top) if top.cancels(r) => {
                    pending.pop();
                }
                _ => pending.push(r),
            }
        }
        while let (Some(&s), Some(&p)) = (stack.last(), pending.last()) {
            if !s.cancels(p) {
                break;
            }
            stack.pop();
            pending.pop();
        }
        steps.push(m);
    }
    ReductionTrace { initial, steps, final_word: Word::new(stack) }
}

pub fn is_trivial(w: &Word, d: &DehnPresentation) -> bool {
    dehn_reduce(w, d).is_trivial()
}
