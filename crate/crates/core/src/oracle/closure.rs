//! Bounded breadth-first search for products of relator conjugates.

use std::collections::HashMap;
use std::time::Instant;

use super::certificate::{TrivialMove, TrivialWitness};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Cyclic conjugates of every relator and of its inverse, deduplicated, in
/// relator order.
pub(crate) fn conjugate_table(p: &Presentation) -> Vec<Word> {
    let mut table: Vec<Word> = Vec::new();
    for r in p.relators().iter().filter(|r| !r.is_empty()) {
        let rots = r.rotations().expect("stored relators are cyclically reduced");
        let inv = r.inverse().rotations().expect("stored relators are cyclically reduced");
        for x in rots.into_iter().chain(inv) {
            if !table.contains(&x) {
                table.push(x);
            }
        }
    }
    table
}

struct Node {
    word: Word,
    parent: usize,
    mv: Option<TrivialMove>,
}

/// Search from `w` toward the empty word. A move inserts or deletes a table
/// entry at some position and then freely reduces. Intermediate words are
/// capped at `max_len` letters and paths at `max_moves` moves.
pub fn normal_closure_search(w: &Word, p: &Presentation, max_len: usize, max_moves: usize) -> Option<TrivialWitness> {
    search(w, p, max_len, max_moves, None).found()
}

pub(crate) enum SearchOutcome {
    Found(TrivialWitness),
    Exhausted,
    TimedOut,
}

impl SearchOutcome {
    pub(crate) fn found(self) -> Option<TrivialWitness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

pub(crate) fn search(
    w: &Word,
    p: &Presentation,
    max_len: usize,
    max_moves: usize,
    deadline: Option<Instant>,
) -> SearchOutcome {
    let start = w.free_reduce();
    if start.is_empty() {
        return SearchOutcome::Found(TrivialWitness { moves: Vec::new(), max_len: 0 });
    }
    if start.len() > max_len {
        return SearchOutcome::Exhausted;
    }
    let table = conjugate_table(p);
    let Some(longest) = table.iter().map(Word::len).max() else {
        return SearchOutcome::Exhausted;
    };
    // one move changes the length by at most the longest entry
    if start.len() > max_moves * longest {
        return SearchOutcome::Exhausted;
    }

    let mut nodes = vec![Node { word: start.clone(), parent: usize::MAX, mv: None }];
    let mut seen: HashMap<Word, usize> = HashMap::from([(start, 0)]);
    let mut frontier = vec![0usize];
    let mut expanded = 0usize;
    for depth in 0..max_moves {
        let remaining = max_moves - depth - 1;
        let cap = max_len.min(remaining * longest);
        let mut next = Vec::new();
        for &id in &frontier {
            expanded += 1;
            if expanded.is_multiple_of(256) && deadline.is_some_and(|d| Instant::now() >= d) {
                return SearchOutcome::TimedOut;
            }
            let word = nodes[id].word.clone();
            for (mv, child) in moves(&word, &table) {
                if child.is_empty() {
                    nodes.push(Node { word: child, parent: id, mv: Some(mv) });
                    return SearchOutcome::Found(witness(&nodes, nodes.len() - 1, max_len));
                }
                if child.len() > cap || seen.contains_key(&child) {
                    continue;
                }
                seen.insert(child.clone(), nodes.len());
                next.push(nodes.len());
                nodes.push(Node { word: child, parent: id, mv: Some(mv) });
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    SearchOutcome::Exhausted
}

/// Deletions first (by position, then entry), then insertions.
fn moves<'a>(word: &'a Word, table: &'a [Word]) -> impl Iterator<Item = (TrivialMove, Word)> + 'a {
    let l = word.letters();
    let deletions = (0..l.len()).flat_map(move |pos| {
        table.iter().filter_map(move |e| {
            let end = pos + e.len();
            (end <= l.len() && &l[pos..end] == e.letters()).then(|| {
                let child = reduce_splice(&l[..pos], &[], &l[end..]);
                (TrivialMove::Delete { position: pos, relator: e.clone() }, child)
            })
        })
    });
    let insertions = (0..=l.len()).flat_map(move |pos| {
        table.iter().map(move |e| {
            let child = reduce_splice(&l[..pos], e.letters(), &l[pos..]);
            (TrivialMove::Insert { position: pos, relator: e.clone() }, child)
        })
    });
    deletions.chain(insertions)
}

/// Free reduction of `left · mid · right` where each part is reduced.
fn reduce_splice(left: &[Letter], mid: &[Letter], right: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(left.len() + mid.len() + right.len());
    out.extend_from_slice(left);
    for &x in mid.iter().chain(right) {
        match out.last() {
            Some(&top) if top.cancels(x) => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    Word::new(out)
}

fn witness(nodes: &[Node], mut id: usize, max_len: usize) -> TrivialWitness {
    let mut moves = Vec::new();
    while let Some(mv) = &nodes[id].mv {
        moves.push(mv.clone());
        id = nodes[id].parent;
    }
    moves.reverse();
    TrivialWitness { moves, max_len }
}
