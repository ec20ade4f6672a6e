//! Exhaustive search over permutation representations.

use std::time::Instant;

use thiserror::Error;

use super::certificate::NontrivialWitness;
use super::perm::{all_perms, class_representatives, kills, Perm};
use crate::presentation::Presentation;
use crate::word::Word;

/// Largest degree [`hom_count`] accepts.
pub const HOM_COUNT_MAX_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomCountError {
    #[error("degree {0} is outside the supported range 1..={HOM_COUNT_MAX_DEGREE}")]
    DegreeOutOfRange(usize),
}

/// Backtracking state shared by the separation search and the counter.
struct Assignment<'a> {
    degree: usize,
    /// Relators whose largest generator index is `i`, for each `i`.
    checks: Vec<Vec<&'a Word>>,
    /// Generators absent from every relator (and from the query word).
    idle: Vec<bool>,
    images: Vec<Perm>,
    inverses: Vec<Perm>,
}

impl<'a> Assignment<'a> {
    fn new(p: &'a Presentation, degree: usize, query: Option<&Word>) -> Assignment<'a> {
        let rank = p.rank();
        let mut checks = vec![Vec::new(); rank];
        let mut idle = vec![true; rank];
        for r in p.relators() {
            if let Some(g) = r.max_generator() {
                checks[g].push(r);
            }
            for g in r.support() {
                idle[g] = false;
            }
        }
        if let Some(w) = query {
            for g in w.support() {
                idle[g] = false;
            }
        }
        let id = Perm::identity(degree);
        Assignment {
            degree,
            checks,
            idle,
            images: vec![id.clone(); rank],
            inverses: vec![id; rank],
        }
    }

    fn set(&mut self, g: usize, perm: &Perm) {
        self.images[g] = perm.clone();
        self.inverses[g] = perm.inverse();
    }

    fn relators_hold(&self, g: usize) -> bool {
        self.checks[g].iter().all(|r| kills(r, &self.images, &self.inverses, self.degree))
    }

    /// The first generator that needs a choice; its image only matters up
    /// to conjugacy.
    fn first_active(&self) -> Option<usize> {
        self.idle.iter().position(|&i| !i)
    }
}

/// Find a homomorphism to the symmetric group of some degree in
/// `2..=max_degree` killing every relator of `p` but not `w`.
pub fn quotient_separation(w: &Word, p: &Presentation, max_degree: usize) -> Option<NontrivialWitness> {
    (2..=max_degree).find_map(|k| separate_at(w, p, k, None).ok().flatten())
}

/// `Err(())` means the deadline passed.
pub(crate) fn separate_at(
    w: &Word,
    p: &Presentation,
    degree: usize,
    deadline: Option<Instant>,
) -> Result<Option<NontrivialWitness>, ()> {
    let w = w.free_reduce();
    let Some(last) = w.max_generator() else {
        return Ok(None);
    };
    let mut a = Assignment::new(p, degree, Some(&w));
    let search = Search {
        first: a.first_active(),
        last,
        word: &w,
        reps: class_representatives(degree).into_iter().map(|(p, _)| p).collect(),
        perms: all_perms(degree),
        deadline,
    };
    let mut ticks = 0u64;
    let found = separate_rec(&mut a, &search, 0, &mut ticks)?;
    Ok(found.then(|| NontrivialWitness { degree, images: a.images.clone() }))
}

struct Search<'w> {
    first: Option<usize>,
    /// Largest generator of the query word; it is checked once this is assigned.
    last: usize,
    word: &'w Word,
    reps: Vec<Perm>,
    perms: Vec<Perm>,
    deadline: Option<Instant>,
}

fn separate_rec(a: &mut Assignment<'_>, s: &Search<'_>, g: usize, ticks: &mut u64) -> Result<bool, ()> {
    if g == a.images.len() {
        return Ok(true);
    }
    let identity = [Perm::identity(a.degree)];
    let candidates: &[Perm] = if a.idle[g] {
        &identity
    } else if Some(g) == s.first {
        &s.reps
    } else {
        &s.perms
    };
    for perm in candidates {
        *ticks += 1;
        if (*ticks).is_multiple_of(4096) && s.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(());
        }
        a.set(g, perm);
        if !a.relators_hold(g) {
            continue;
        }
        if g == s.last && kills(s.word, &a.images, &a.inverses, a.degree) {
            continue;
        }
        if separate_rec(a, s, g + 1, ticks)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Number of homomorphisms from the presented group to the symmetric group
/// on `degree` points.
pub fn hom_count(p: &Presentation, degree: usize) -> Result<u64, HomCountError> {
    if degree == 0 || degree > HOM_COUNT_MAX_DEGREE {
        return Err(HomCountError::DegreeOutOfRange(degree));
    }
    let mut a = Assignment::new(p, degree, None);
    let factorial: u64 = (1..=degree as u64).product();
    let idle = a.idle.iter().filter(|&&i| i).count() as u32;
    let active: Vec<usize> = (0..p.rank()).filter(|&g| !a.idle[g]).collect();
    let total = match active.first() {
        // only empty relators remain
        None => 1,
        Some(&first) => {
            // the count with the first image fixed is constant on conjugacy classes
            let perms = all_perms(degree);
            let mut sum = 0;
            for (rep, class_size) in class_representatives(degree) {
                a.set(first, &rep);
                if a.relators_hold(first) {
                    sum += class_size as u64 * count_rec(&mut a, &perms, &active[1..]);
                }
            }
            sum
        }
    };
    Ok(total * factorial.pow(idle))
}

fn count_rec(a: &mut Assignment<'_>, perms: &[Perm], rest: &[usize]) -> u64 {
    let Some((&g, tail)) = rest.split_first() else {
        return 1;
    };
    let mut n = 0;
    for perm in perms {
        a.set(g, perm);
        if a.relators_hold(g) {
            n += count_rec(a, perms, tail);
        }
    }
    n
}
