//! Presentation-agnostic ground truth for the word problem at small scale.
//!
//! Triviality is certified by an explicit sequence of relator insertions
//! and deletions; non-triviality by a permutation representation that kills
//! every relator but not the word. Both kinds of certificate are replayed
//! by [`check_trivial`] and [`check_nontrivial`] before [`decide`] returns
//! them. There is no general decision procedure, so every search is
//! bounded and `Unknown` is a legitimate answer.

mod abelian;
mod certificate;
mod closure;
pub mod perm;
mod quotient;

use std::time::{Duration, Instant};

pub use abelian::{abelianization_test, exponent_vector, AbelianVerdict, AbelianWitness};
pub use certificate::{check_nontrivial, check_trivial, CertificateError, NontrivialWitness, TrivialMove, TrivialWitness};
pub use closure::normal_closure_search;
pub use perm::Perm;
pub use quotient::{hom_count, quotient_separation, HomCountError, HOM_COUNT_MAX_DEGREE};

use crate::presentation::Presentation;
use crate::word::Word;

/// Largest cyclic degree used when turning an abelian witness into permutations.
const MAX_CYCLIC_DEGREE: usize = 255;

/// Search limits for [`decide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Intermediate words may exceed the query length by this much.
    pub max_len_slack: usize,
    pub max_moves: usize,
    pub max_degree: usize,
    /// Checked between and inside searches; a search in progress may
    /// overrun slightly.
    pub time_limit: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len_slack: 8, max_moves: 6, max_degree: 5, time_limit: Duration::from_secs(10) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Trivial(TrivialWitness),
    Nontrivial(NontrivialWitness),
    Unknown,
}

impl Verdict {
    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::Unknown)
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Trivial(_) => Some(true),
            Verdict::Nontrivial(_) => Some(false),
            Verdict::Unknown => None,
        }
    }
}

/// One round of the iterative-deepening schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Quotient { degree: usize },
    Closure { max_len: usize, max_moves: usize },
}

/// Quotient degrees `2, 3, …` interleaved with closure searches of growing
/// length slack `2, 4, …` and move count `2, 4, …`, each capped by the budget.
pub fn schedule(word_len: usize, budget: &Budget) -> Vec<Stage> {
    let mut stages = Vec::new();
    let mut last_closure = None;
    for round in 1.. {
        let degree = round + 1;
        let slack = (2 * round).min(budget.max_len_slack);
        let moves = (2 * round).min(budget.max_moves);
        let closure = (word_len + slack, moves);
        let more_degrees = degree <= budget.max_degree;
        let more_closure = last_closure != Some(closure);
        if !more_degrees && !more_closure {
            break;
        }
        if more_degrees {
            stages.push(Stage::Quotient { degree });
        }
        if more_closure {
            stages.push(Stage::Closure { max_len: closure.0, max_moves: closure.1 });
            last_closure = Some(closure);
        }
    }
    stages
}

/// Any non-triviality certificate the oracle can find for `w`, without
/// attempting a triviality proof.
pub fn find_nontrivial(w: &Word, p: &Presentation, budget: &Budget) -> Option<NontrivialWitness> {
    let w = w.free_reduce();
    if w.is_empty() {
        return None;
    }
    let deadline = Instant::now() + budget.time_limit;
    abelian_certificate(&w, p)
        .or_else(|| {
            (2..=budget.max_degree).find_map(|k| quotient::separate_at(&w, p, k, Some(deadline)).ok().flatten())
        })
        .filter(|c| check_nontrivial(&w, p, c).is_ok())
}

fn abelian_certificate(w: &Word, p: &Presentation) -> Option<NontrivialWitness> {
    match abelianization_test(w, p) {
        AbelianVerdict::Nontrivial(wit) => wit.to_permutations(w, MAX_CYCLIC_DEGREE),
        AbelianVerdict::Inconclusive => None,
    }
}

/// Decide whether `w` is trivial in `p` within `budget`.
pub fn decide(w: &Word, p: &Presentation, budget: &Budget) -> Verdict {
    let w = w.free_reduce();
    let deadline = Instant::now() + budget.time_limit;
    if w.is_empty() {
        return Verdict::Trivial(TrivialWitness { moves: Vec::new(), max_len: 0 });
    }
    if let Some(c) = abelian_certificate(&w, p).filter(|c| check_nontrivial(&w, p, c).is_ok()) {
        return Verdict::Nontrivial(c);
    }
    for stage in schedule(w.len(), budget) {
        if Instant::now() >= deadline {
            break;
        }
        match stage {
            Stage::Quotient { degree } => match quotient::separate_at(&w, p, degree, Some(deadline)) {
                Ok(Some(c)) if check_nontrivial(&w, p, &c).is_ok() => return Verdict::Nontrivial(c),
                Ok(_) => {}
                Err(()) => break,
            },
            Stage::Closure { max_len, max_moves } => {
                match closure::search(&w, p, max_len, max_moves, Some(deadline)) {
                    closure::SearchOutcome::Found(c) if check_trivial(&w, p, &c).is_ok() => {
                        return Verdict::Trivial(c)
                    }
                    closure::SearchOutcome::TimedOut => break,
                    _ => {}
                }
            }
        }
    }
    Verdict::Unknown
}
