//! Tietze transformations and greedy presentation simplification.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::oracle::{check_trivial, CertificateError, TrivialWitness};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TietzeError {
    #[error("no relator isolates generator `{0}` (it must occur exactly once in some relator)")]
    NoDefiningRelator(String),
    #[error("generator `{0}` already exists")]
    NameCollision(String),
    #[error("generator index {0} out of range")]
    UnknownGenerator(usize),
    #[error("empty generator name")]
    EmptyName,
    #[error("relator {relator} does not isolate generator `{generator}`")]
    NotIsolating { generator: String, relator: usize },
    #[error("consequence witness rejected: {0}")]
    InvalidWitness(#[from] CertificateError),
}

/// Record of a generator elimination, sufficient to translate words over the
/// old alphabet into words over the new one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub generator: usize,
    pub name: String,
    /// Expression for the removed generator over the old alphabet.
    pub definition: Word,
    /// Index of the defining relator in the old presentation.
    pub relator: usize,
}

impl Removal {
    /// Rewrite a word over the old alphabet into the new one.
    pub fn translate(&self, w: &Word) -> Word {
        let g = self.generator;
        w.substitute(|x| if x == g { self.definition.clone() } else { Word::new(vec![Letter::pos(x)]) })
            .letters()
            .iter()
            .map(|&l| Letter::new(shift_down(l.generator(), g), l.is_inverse()))
            .collect::<Word>()
            .free_reduce()
    }
}

fn shift_down(x: usize, removed: usize) -> usize {
    if x > removed {
        x - 1
    } else {
        x
    }
}

/// Eliminate `generator` using the last relator in which it occurs exactly once.
pub fn remove_generator(p: &Presentation, generator: usize) -> Result<(Presentation, Removal), TietzeError> {
    if generator >= p.rank() {
        return Err(TietzeError::UnknownGenerator(generator));
    }
    let relator = (0..p.relators().len())
        .rev()
        .find(|&i| p.relators()[i].occurrences(generator) == 1)
        .ok_or_else(|| TietzeError::NoDefiningRelator(p.generators()[generator].clone()))?;
    remove_generator_using(p, generator, relator)
}

/// Eliminate `generator` using relator `relator`, which must contain it exactly once.
pub fn remove_generator_using(
    p: &Presentation,
    generator: usize,
    relator: usize,
) -> Result<(Presentation, Removal), TietzeError> {
    if generator >= p.rank() {
        return Err(TietzeError::UnknownGenerator(generator));
    }
    let name = p.generators()[generator].clone();
    let r = p
        .relators()
        .get(relator)
        .filter(|r| r.occurrences(generator) == 1)
        .ok_or_else(|| TietzeError::NotIsolating { generator: name.clone(), relator })?;
    let at = r.letters().iter().position(|l| l.generator() == generator).expect("occurs once");
    let rotated = r.rotate(at);
    let rest = Word::new(rotated.letters()[1..].to_vec());
    // g·s = 1 gives g = s⁻¹; g⁻¹·s = 1 gives g = s
    let definition = if rotated.letters()[0].is_inverse() { rest } else { rest.inverse() };
    let removal = Removal { generator, name, definition, relator };

    let generators = p
        .generators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != generator)
        .map(|(_, n)| n.clone())
        .collect();
    let relators = p
        .relators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != relator)
        .map(|(_, r)| removal.translate(r))
        .collect();
    Ok((Presentation::from_parts(generators, relators), removal))
}

/// Introduce `name` together with the defining relator `name · definition⁻¹`.
pub fn add_generator(p: &Presentation, name: &str, definition: &Word) -> Result<Presentation, TietzeError> {
    if name.is_empty() {
        return Err(TietzeError::EmptyName);
    }
    if p.generator_index(name).is_some() {
        return Err(TietzeError::NameCollision(name.to_string()));
    }
    if let Some(g) = definition.max_generator().filter(|&g| g >= p.rank()) {
        return Err(TietzeError::UnknownGenerator(g));
    }
    let new = p.rank();
    let mut generators = p.generators().to_vec();
    generators.push(name.to_string());
    let mut spellings = p.spellings().to_vec();
    let mut defining = vec![(new, 1)];
    defining.extend(definition.free_reduce().inverse().syllables());
    spellings.push(defining);
    Ok(Presentation::with_spellings(generators, spellings).expect("validated above"))
}

/// Append a relator that is already a consequence of the existing ones.
///
/// The caller must supply a triviality certificate for `relator` in `p`.
pub fn add_consequence_relator(
    p: &Presentation,
    relator: &Word,
    witness: &TrivialWitness,
) -> Result<Presentation, TietzeError> {
    check_trivial(&relator.free_reduce(), p, witness)?;
    let mut spellings = p.spellings().to_vec();
    spellings.push(relator.syllables());
    Presentation::with_spellings(p.generators().to_vec(), spellings).map_err(|_| {
        TietzeError::UnknownGenerator(relator.max_generator().unwrap_or_default())
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeMove {
    /// Relator spellings replaced by their cyclically reduced forms.
    ReduceRelators,
    DropEmpty { relator: usize },
    DropDuplicate { relator: usize, duplicate_of: usize },
    RemoveGenerator { name: String, definition: String, relator: usize },
}

impl fmt::Display for TietzeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TietzeMove::ReduceRelators => write!(f, "reduce relators"),
            TietzeMove::DropEmpty { relator } => write!(f, "drop empty relator {relator}"),
            TietzeMove::DropDuplicate { relator, duplicate_of } => {
                write!(f, "drop relator {relator} (duplicate of {duplicate_of})")
            }
            TietzeMove::RemoveGenerator { name, definition, relator } => {
                let def = if definition.is_empty() { "1" } else { definition };
                write!(f, "remove {name} = {def} (relator {relator})")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplifyStep {
    pub action: TietzeMove,
    /// Set for generator eliminations.
    pub removal: Option<Removal>,
    pub after: Presentation,
}

/// Greedy simplification: reduce, drop empty relators, drop duplicates up to
/// rotation and inversion, eliminate one generator; repeat until stable.
///
/// Eliminations scan relators from last to first and generators in
/// declaration order within each relator.
pub fn simplify(p: &Presentation) -> (Presentation, Vec<SimplifyStep>) {
    let mut log = Vec::new();
    let mut cur = p.clone();
    let needs_reduce = cur.relators().iter().zip(cur.spellings()).any(|(r, s)| r.syllables() != *s);
    if needs_reduce {
        cur = Presentation::from_parts(cur.generators().to_vec(), cur.relators().to_vec());
        log.push(SimplifyStep { action: TietzeMove::ReduceRelators, removal: None, after: cur.clone() });
    }
    loop {
        if let Some(i) = cur.relators().iter().position(|r| r.is_empty()) {
            cur = drop_relator(&cur, i);
            log.push(SimplifyStep { action: TietzeMove::DropEmpty { relator: i }, removal: None, after: cur.clone() });
            continue;
        }
        if let Some((i, j)) = find_duplicate(&cur) {
            cur = drop_relator(&cur, i);
            log.push(SimplifyStep {
                action: TietzeMove::DropDuplicate { relator: i, duplicate_of: j },
                removal: None,
                after: cur.clone(),
            });
            continue;
        }
        if let Some((g, rel)) = find_elimination(&cur) {
            let (next, removal) = remove_generator_using(&cur, g, rel).expect("isolating relator found");
            let definition = cur.display_word(&removal.definition).to_string();
            log.push(SimplifyStep {
                action: TietzeMove::RemoveGenerator { name: removal.name.clone(), definition, relator: rel },
                removal: Some(removal),
                after: next.clone(),
            });
            cur = next;
            continue;
        }
        return (cur, log);
    }
}

fn drop_relator(p: &Presentation, index: usize) -> Presentation {
    let mut spellings = p.spellings().to_vec();
    spellings.remove(index);
    let mut relators = p.relators().to_vec();
    relators.remove(index);
    let q = Presentation::with_spellings(p.generators().to_vec(), spellings).expect("subset of valid relators");
    debug_assert_eq!(q.relators(), &relators[..]);
    q
}

/// Canonical representative of a relator up to rotation and inversion.
pub(crate) fn cyclic_key(r: &Word) -> Word {
    r.min_rotation().min(r.inverse().min_rotation())
}

/// First `(later, earlier)` pair of relators equal up to rotation/inversion.
fn find_duplicate(p: &Presentation) -> Option<(usize, usize)> {
    let mut first: HashMap<Word, usize> = HashMap::new();
    for (i, r) in p.relators().iter().enumerate() {
        let key = cyclic_key(r);
        if let Some(&j) = first.get(&key) {
            return Some((i, j));
        }
        first.insert(key, i);
    }
    None
}

fn find_elimination(p: &Presentation) -> Option<(usize, usize)> {
    for rel in (0..p.relators().len()).rev() {
        let r = &p.relators()[rel];
        if let Some(g) = (0..p.rank()).find(|&g| r.occurrences(g) == 1) {
            return Some((g, rel));
        }
    }
    None
}
