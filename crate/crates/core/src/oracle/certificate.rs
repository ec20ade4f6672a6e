//! Witnesses for word-problem answers and their replay checkers.
//!
//! The checkers here share no code with the searches that produce
//! witnesses; they only use free reduction and permutation evaluation.

use thiserror::Error;

use super::perm::{kills, Perm};
use crate::presentation::Presentation;
use crate::word::Word;

/// Insert or delete a cyclic conjugate of a relator (or of its inverse).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrivialMove {
    Delete { position: usize, relator: Word },
    Insert { position: usize, relator: Word },
}

impl TrivialMove {
    pub fn position(&self) -> usize {
        match self {
            TrivialMove::Delete { position, .. } | TrivialMove::Insert { position, .. } => *position,
        }
    }

    pub fn relator(&self) -> &Word {
        match self {
            TrivialMove::Delete { relator, .. } | TrivialMove::Insert { relator, .. } => relator,
        }
    }
}

/// A sequence of moves rewriting a word to the empty word. Each move is
/// applied to the freely reduced result of the previous one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialWitness {
    pub moves: Vec<TrivialMove>,
    /// No intermediate word is longer than this.
    pub max_len: usize,
}

/// A finite permutation representation killing every relator but not the
/// query word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NontrivialWitness {
    pub degree: usize,
    /// Image of each generator, in presentation order.
    pub images: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("move {0}: not a cyclic conjugate of a relator or its inverse")]
    NotARelatorConjugate(usize),
    #[error("move {0}: position out of range")]
    PositionOutOfRange(usize),
    #[error("move {0}: word does not contain the relator at that position")]
    DeletionMismatch(usize),
    #[error("move {0}: intermediate word exceeds length cap {1}")]
    LengthCapExceeded(usize, usize),
    #[error("the starting word exceeds length cap {0}")]
    StartTooLong(usize),
    #[error("replay ends at a nonempty word")]
    DoesNotReachIdentity,
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image {0} has the wrong degree")]
    WrongDegree(usize),
    #[error("relator {0} is not killed by the assignment")]
    RelatorNotKilled(usize),
    #[error("query word evaluates to the identity")]
    WordKilled,
}

fn is_cyclic_conjugate(candidate: &Word, of: &Word) -> bool {
    if candidate.len() != of.len() {
        return false;
    }
    if of.is_empty() {
        return true;
    }
    let doubled = of.concat_raw(of);
    doubled.letters().windows(of.len()).any(|w| w == candidate.letters())
}

fn is_relator_conjugate(candidate: &Word, p: &Presentation) -> bool {
    !candidate.is_empty()
        && p
            .relators()
            .iter()
            .any(|r| is_cyclic_conjugate(candidate, r) || is_cyclic_conjugate(candidate, &r.inverse()))
}

/// Replay a triviality witness for `w` in `p`.
pub fn check_trivial(w: &Word, p: &Presentation, witness: &TrivialWitness) -> Result<(), CertificateError> {
    let mut cur = w.free_reduce();
    if cur.len() > witness.max_len {
        return Err(CertificateError::StartTooLong(witness.max_len));
    }
    for (i, mv) in witness.moves.iter().enumerate() {
        let r = mv.relator();
        if !is_relator_conjugate(r, p) {
            return Err(CertificateError::NotARelatorConjugate(i));
        }
        let pos = mv.position();
        let l = cur.letters();
        let spliced: Vec<_> = match mv {
            TrivialMove::Delete { .. } => {
                if pos + r.len() > l.len() {
                    return Err(CertificateError::PositionOutOfRange(i));
                }
                if &l[pos..pos + r.len()] != r.letters() {
                    return Err(CertificateError::DeletionMismatch(i));
                }
                l[..pos].iter().chain(&l[pos + r.len()..]).copied().collect()
            }
            TrivialMove::Insert { .. } => {
                if pos > l.len() {
                    return Err(CertificateError::PositionOutOfRange(i));
                }
                l[..pos].iter().chain(r.letters()).chain(&l[pos..]).copied().collect()
            }
        };
        cur = Word::new(spliced).free_reduce();
        if cur.len() > witness.max_len {
            return Err(CertificateError::LengthCapExceeded(i, witness.max_len));
        }
    }
    if cur.is_empty() {
        Ok(())
    } else {
        Err(CertificateError::DoesNotReachIdentity)
    }
}

/// Check that a permutation assignment kills all relators and not `w`.
pub fn check_nontrivial(w: &Word, p: &Presentation, witness: &NontrivialWitness) -> Result<(), CertificateError> {
    if witness.images.len() != p.rank() {
        return Err(CertificateError::ImageCount { expected: p.rank(), found: witness.images.len() });
    }
    if let Some(i) = witness.images.iter().position(|g| g.degree() != witness.degree) {
        return Err(CertificateError::WrongDegree(i));
    }
    let inverses: Vec<Perm> = witness.images.iter().map(Perm::inverse).collect();
    for (i, r) in p.relators().iter().enumerate() {
        if !kills(r, &witness.images, &inverses, witness.degree) {
            return Err(CertificateError::RelatorNotKilled(i));
        }
    }
    if kills(&w.free_reduce(), &witness.images, &inverses, witness.degree) {
        return Err(CertificateError::WordKilled);
    }
    Ok(())
}
