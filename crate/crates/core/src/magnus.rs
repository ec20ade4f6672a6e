//! The Magnus–Moldavanskii descent for one-relator presentations.
//!
//! Given a relator in which some generator `t` has exponent sum zero, every
//! other letter is tagged with the exponent sum of `t` over the prefix
//! before it; deleting `t` then leaves a strictly shorter relator over the
//! subscripted alphabet. When no exponent sum vanishes, a substitution
//! through two fresh generators produces one that does.
//!
//! Each presentation in a trace is the associated group of the previous
//! one. Nothing here claims they are isomorphic.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::tietze::{simplify, Removal};
use crate::word::{Letter, Word};

/// Steps taken by [`descend`] unless told otherwise.
pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, Error)]
pub enum DescentError {
    #[error("expected exactly one relator, found {0}")]
    NotOneRelator(usize),
    #[error("the relator mentions at most one generator")]
    Terminal,
    #[error("generator `{0}` has nonzero exponent sum in the relator")]
    NonZeroExponentSum(String),
    #[error("no generator named `{0}`")]
    UnknownStable(String),
    #[error("generator `{0}` already has exponent sum zero")]
    FixUpNotNeeded(String),
    #[error("substitution left the new stable letter with exponent sum {0}")]
    FixUpFailed(i64),
    #[error("no terminal presentation within {} steps", .0.steps.len())]
    DepthExceeded(Box<PartialDescent>),
}

/// Trace up to the point where the depth limit stopped the descent.
#[derive(Debug, Clone)]
pub struct PartialDescent {
    pub steps: Vec<DescentStep>,
    pub last: Presentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotatedLetter {
    Stable(Letter),
    /// A non-stable letter and the stable letter's exponent sum over the
    /// strict prefix before it.
    Indexed { letter: Letter, subscript: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedWord {
    pub stable: usize,
    pub letters: Vec<AnnotatedLetter>,
}

impl AnnotatedWord {
    /// Drop the subscripts, keeping stable letters in place.
    pub fn erase(&self) -> Word {
        self.letters
            .iter()
            .map(|l| match *l {
                AnnotatedLetter::Stable(x) => x,
                AnnotatedLetter::Indexed { letter, .. } => letter,
            })
            .collect()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> AnnotatedDisplay<'a> {
        AnnotatedDisplay { word: self, names }
    }
}

pub struct AnnotatedDisplay<'a> {
    word: &'a AnnotatedWord,
    names: &'a [String],
}

impl fmt::Display for AnnotatedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let (letter, name) = match *l {
                AnnotatedLetter::Stable(x) => (x, self.names[x.generator()].clone()),
                AnnotatedLetter::Indexed { letter, subscript } => {
                    (letter, subscripted_name(&self.names[letter.generator()], subscript))
                }
            };
            f.write_str(&name)?;
            if letter.is_inverse() {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// `a` with subscript 2 is `a2`; a base ending in a digit gets an
/// underscore, and negative subscripts are written with `m`.
pub fn subscripted_name(base: &str, subscript: i64) -> String {
    let sub = if subscript < 0 { format!("m{}", -subscript) } else { subscript.to_string() };
    if base.ends_with(|c: char| c.is_ascii_digit()) {
        format!("{base}_{sub}")
    } else {
        format!("{base}{sub}")
    }
}

fn only_relator(p: &Presentation) -> Result<&Word, DescentError> {
    match p.relators() {
        [r] => Ok(r),
        rs => Err(DescentError::NotOneRelator(rs.len())),
    }
}

fn require_two_generators(r: &Word) -> Result<(), DescentError> {
    if r.support().len() < 2 {
        Err(DescentError::Terminal)
    } else {
        Ok(())
    }
}

/// First generator, in declaration order, that occurs in the relator with
/// exponent sum zero.
pub fn pick_zero_letter(p: &Presentation) -> Result<Option<usize>, DescentError> {
    let r = only_relator(p)?;
    require_two_generators(r)?;
    Ok(r.support().into_iter().find(|&g| r.exponent_sum(g) == 0))
}

pub fn reindex(w: &Word, stable: usize, names: &[String]) -> Result<AnnotatedWord, DescentError> {
    if w.exponent_sum(stable) != 0 {
        return Err(DescentError::NonZeroExponentSum(names[stable].clone()));
    }
    let mut prefix = 0;
    let letters = w
        .letters()
        .iter()
        .map(|&l| {
            if l.generator() == stable {
                prefix += l.sign();
                AnnotatedLetter::Stable(l)
            } else {
                AnnotatedLetter::Indexed { letter: l, subscript: prefix }
            }
        })
        .collect();
    Ok(AnnotatedWord { stable, letters })
}

/// Result of deleting the stable letter from an annotated word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deleted {
    /// Freely reduced, over the indices of `alphabet`.
    pub word: Word,
    /// `(base generator, subscript)` for each new generator, sorted. Exactly
    /// the pairs occurring in `word`.
    pub alphabet: Vec<(usize, i64)>,
}

pub fn delete_stable(aw: &AnnotatedWord) -> Deleted {
    let mut stack: Vec<(usize, i64, bool)> = Vec::new();
    for l in &aw.letters {
        if let AnnotatedLetter::Indexed { letter, subscript } = *l {
            let x = (letter.generator(), subscript, letter.is_inverse());
            match stack.last() {
                Some(&(g, s, inv)) if g == x.0 && s == x.1 && inv != x.2 => {
                    stack.pop();
                }
                _ => stack.push(x),
            }
        }
    }
    let alphabet: Vec<(usize, i64)> =
        stack.iter().map(|&(g, s, _)| (g, s)).collect::<BTreeSet<_>>().into_iter().collect();
    let word = stack
        .iter()
        .map(|&(g, s, inv)| Letter::new(alphabet.binary_search(&(g, s)).expect("collected above"), inv))
        .collect();
    Deleted { word, alphabet }
}

/// The substitution `a ↦ x·y^(−β)`, `b ↦ y^α` applied to a relator in which
/// `a` and `b` have exponent sums `α` and `β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixUp {
    pub presentation: Presentation,
    /// Image of each old generator, over the new alphabet.
    pub images: Vec<Word>,
    /// The relator's image before any reduction.
    pub unreduced_image: Word,
    pub x: usize,
    pub y: usize,
    pub alpha: i64,
    pub beta: i64,
}

impl FixUp {
    pub fn translate(&self, w: &Word) -> Word {
        w.substitute(|g| self.images[g].clone()).free_reduce()
    }
}

fn fresh_name(preferred: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(preferred) {
        return preferred.to_string();
    }
    (1..).map(|i| format!("{preferred}{i}")).find(|n| !taken.contains(n)).expect("unbounded")
}

pub fn exponent_fix(p: &Presentation) -> Result<FixUp, DescentError> {
    let r = only_relator(p)?;
    require_two_generators(r)?;
    let support: Vec<usize> = r.support().into_iter().collect();
    if let Some(&g) = support.iter().find(|&&g| r.exponent_sum(g) == 0) {
        return Err(DescentError::FixUpNotNeeded(p.generators()[g].clone()));
    }
    let (a, b) = (support[0], support[1]);
    let (alpha, beta) = (r.exponent_sum(a), r.exponent_sum(b));

    let mut taken: BTreeSet<String> = p.generators().iter().cloned().collect();
    let x_name = fresh_name("x", &taken);
    taken.insert(x_name.clone());
    let y_name = fresh_name("y", &taken);
    let mut names = p.generators().to_vec();
    names[a] = x_name;
    names[b] = y_name;
    let (x, y) = (a, b);

    let images: Vec<Word> = (0..p.rank())
        .map(|g| {
            if g == a {
                Word::from_syllables(&[(x, 1), (y, -beta)])
            } else if g == b {
                Word::power_of(y, alpha)
            } else {
                Word::power_of(g, 1)
            }
        })
        .collect();
    let unreduced_image = r.substitute(|g| images[g].clone());
    let sigma = unreduced_image.exponent_sum(y);
    if sigma != 0 {
        return Err(DescentError::FixUpFailed(sigma));
    }
    let presentation =
        Presentation::with_spellings(names, vec![unreduced_image.syllables()]).expect("fresh names are distinct");
    Ok(FixUp { presentation, images, unreduced_image, x, y, alpha, beta })
}

#[derive(Debug, Clone)]
pub struct DescentStep {
    pub before: Presentation,
    pub fixup: Option<FixUp>,
    /// Name of the deleted generator, in the fixed-up alphabet if a fix-up ran.
    pub stable: String,
    pub annotated: AnnotatedWord,
    pub after: Presentation,
    /// `(base, subscript)` of the first `alphabet.len()` generators of `after`.
    pub alphabet: Vec<(usize, i64)>,
    /// Generators carried over unchanged, as indices into the working alphabet.
    pub passive: Vec<usize>,
}

impl DescentStep {
    /// The presentation that was reindexed: `before`, or its fixed-up form.
    pub fn working(&self) -> &Presentation {
        self.fixup.as_ref().map_or(&self.before, |f| &f.presentation)
    }

    /// Carry a word over `before` into `after`. `None` when the stable
    /// letter's exponent sum in the word is nonzero or it uses a
    /// subscripted letter that does not occur in the new relator.
    pub fn translate(&self, w: &Word) -> Option<Word> {
        let w = match &self.fixup {
            Some(f) => f.translate(w),
            None => w.free_reduce(),
        };
        let aw = reindex(&w, self.annotated.stable, self.working().generators()).ok()?;
        let mut out = Vec::new();
        for l in &aw.letters {
            match *l {
                AnnotatedLetter::Stable(_) => {}
                AnnotatedLetter::Indexed { letter, subscript } => {
                    let g = letter.generator();
                    let idx = match self.passive.iter().position(|&p| p == g) {
                        Some(i) => self.alphabet.len() + i,
                        None => self.alphabet.binary_search(&(g, subscript)).ok()?,
                    };
                    out.push(Letter::new(idx, letter.is_inverse()));
                }
            }
        }
        Some(Word::new(out).free_reduce())
    }

    /// The new relator is shorter than the relator of `before`. A fix-up
    /// lengthens the working relator, but every `b` becomes stable letters.
    pub fn shrinks(&self) -> bool {
        self.after.relators()[0].len() < self.before.relators()[0].len()
    }
}

/// One Magnus step. `stable` picks the deleted generator by name; otherwise
/// the first zero-sum generator is used, after a fix-up if there is none.
pub fn descend_step(p: &Presentation, stable: Option<&str>) -> Result<DescentStep, DescentError> {
    let r = only_relator(p)?;
    require_two_generators(r)?;
    let (fixup, s) = match stable {
        Some(name) => {
            let s = p.generator_index(name).ok_or_else(|| DescentError::UnknownStable(name.to_string()))?;
            if r.exponent_sum(s) != 0 {
                return Err(DescentError::NonZeroExponentSum(name.to_string()));
            }
            (None, s)
        }
        None => match pick_zero_letter(p)? {
            Some(s) => (None, s),
            None => {
                let f = exponent_fix(p)?;
                let y = f.y;
                (Some(f), y)
            }
        },
    };
    let working = fixup.as_ref().map_or(p, |f| &f.presentation);
    let relator = &working.relators()[0];
    let annotated = reindex(relator, s, working.generators())?;
    let deleted = delete_stable(&annotated);

    let support = relator.support();
    let passive: Vec<usize> = (0..working.rank()).filter(|&g| g != s && !support.contains(&g)).collect();
    // a stable letter that cancelled out of the relator is a free factor
    let passive: Vec<usize> = if support.contains(&s) { passive } else { [passive, vec![s]].concat() };

    let mut names: Vec<String> = Vec::new();
    let mut taken = BTreeSet::new();
    let wanted = deleted
        .alphabet
        .iter()
        .map(|&(g, i)| subscripted_name(&working.generators()[g], i))
        .chain(passive.iter().map(|&g| working.generators()[g].clone()));
    for mut name in wanted {
        while taken.contains(&name) {
            name.push('_');
        }
        taken.insert(name.clone());
        names.push(name);
    }
    let after = Presentation::from_parts(names, vec![deleted.word]);
    let stable = working.generators()[s].clone();
    Ok(DescentStep {
        before: p.clone(),
        fixup,
        stable,
        annotated,
        after,
        alphabet: deleted.alphabet,
        passive,
    })
}

/// Free rank and cyclic factor read off a terminal presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TerminalShape {
    pub free_rank: usize,
    /// `k` when the relator is a `k`-th power of one generator, `k ≥ 2`.
    pub cyclic_order: Option<u64>,
}

impl TerminalShape {
    pub fn of(p: &Presentation) -> Option<TerminalShape> {
        match p.relators() {
            [] => Some(TerminalShape { free_rank: p.rank(), cyclic_order: None }),
            [r] if r.support().len() <= 1 => {
                if r.is_empty() {
                    return Some(TerminalShape { free_rank: p.rank(), cyclic_order: None });
                }
                let k = r.len() as u64;
                Some(TerminalShape { free_rank: p.rank() - 1, cyclic_order: (k >= 2).then_some(k) })
            }
            _ => None,
        }
    }
}

impl fmt::Display for TerminalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("F{n}")),
        }
        if let Some(k) = self.cyclic_order {
            parts.push(format!("C{k}"));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

/// Moves applied to a presentation before it is reindexed or accepted as
/// terminal.
#[derive(Debug, Clone, Default)]
pub struct Preparation {
    pub removals: Vec<Removal>,
    /// New generator `i` is old generator `renaming[i]`.
    pub renaming: Option<Vec<usize>>,
}

impl Preparation {
    pub fn translate(&self, w: &Word) -> Word {
        let mut w = w.free_reduce();
        for r in &self.removals {
            w = r.translate(&w);
        }
        if let Some(order) = &self.renaming {
            let mut position = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                position[old] = new;
            }
            w = w.letters().iter().map(|l| Letter::new(position[l.generator()], l.is_inverse())).collect();
        }
        w
    }
}

#[derive(Debug, Clone)]
pub struct DescentTrace {
    /// `preparations[i]` leads into `steps[i]`; the last one leads into
    /// `terminal`.
    pub preparations: Vec<Preparation>,
    pub steps: Vec<DescentStep>,
    pub terminal: Presentation,
    pub shape: TerminalShape,
}

impl DescentTrace {
    /// Follow a word through every stage. Entry `i` is the word over
    /// `steps[i].before`, the last entry is over `terminal`.
    pub fn follow(&self, w: &Word) -> Vec<Option<Word>> {
        let mut out = Vec::new();
        let mut cur = Some(w.free_reduce());
        for (prep, step) in self.preparations.iter().zip(&self.steps) {
            cur = cur.map(|x| prep.translate(&x));
            out.push(cur.clone());
            cur = cur.and_then(|x| step.translate(&x));
        }
        let last = self.preparations.last().expect("one more preparation than steps");
        out.push(cur.map(|x| last.translate(&x)));
        out
    }

    pub fn used_fixup(&self) -> bool {
        self.steps.iter().any(|s| s.fixup.is_some())
    }
}

#[derive(Debug, Clone)]
pub struct DescendOptions {
    pub max_depth: usize,
    /// Stable generator to use at each step, by name; steps beyond the end
    /// use the default choice.
    pub stable: Vec<String>,
}

impl Default for DescendOptions {
    fn default() -> Self {
        DescendOptions { max_depth: DEFAULT_MAX_DEPTH, stable: Vec::new() }
    }
}

/// Renaming pool: single letters, then `g1, g2, …`.
fn flat_names(avoid: &BTreeSet<String>) -> impl Iterator<Item = String> + '_ {
    ('a'..='z')
        .chain('A'..='Z')
        .map(String::from)
        .chain((1..).map(|i| format!("g{i}")))
        .filter(move |n| !avoid.contains(n))
}

/// Rename to fresh flat names, generators ordered by first occurrence in
/// the relators, then the rest in declaration order.
fn canonical_rename(p: &Presentation, avoid: &BTreeSet<String>) -> (Presentation, Vec<usize>) {
    let mut order: Vec<usize> = Vec::new();
    for r in p.relators() {
        for l in r.letters() {
            if !order.contains(&l.generator()) {
                order.push(l.generator());
            }
        }
    }
    let rest: Vec<usize> = (0..p.rank()).filter(|g| !order.contains(g)).collect();
    order.extend(rest);
    let mut position = vec![0; p.rank()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let names: Vec<String> = flat_names(avoid).take(p.rank()).collect();
    let spellings = p.spellings().iter().map(|s| s.iter().map(|&(g, k)| (position[g], k)).collect()).collect();
    let q = Presentation::with_spellings(names, spellings).expect("fresh names are distinct");
    (q, order)
}

fn prepare(p: &Presentation) -> (Presentation, Vec<Removal>) {
    let (q, log) = simplify(p);
    (q, log.into_iter().filter_map(|s| s.removal).collect())
}

/// Run descent steps, simplifying in between, until the relator mentions
/// at most one generator.
pub fn descend(p: &Presentation, options: &DescendOptions) -> Result<DescentTrace, DescentError> {
    if p.relators().len() > 1 {
        return Err(DescentError::NotOneRelator(p.relators().len()));
    }
    let mut used: BTreeSet<String> = p.generators().iter().cloned().collect();
    let mut preparations = Vec::new();
    let mut steps: Vec<DescentStep> = Vec::new();
    let mut cur = p.clone();
    loop {
        let (simplified, removals) = prepare(&cur);
        if let Some(shape) = TerminalShape::of(&simplified) {
            preparations.push(Preparation { removals, renaming: None });
            return Ok(DescentTrace { preparations, steps, terminal: simplified, shape });
        }
        if steps.len() >= options.max_depth {
            return Err(DescentError::DepthExceeded(Box::new(PartialDescent { steps, last: simplified })));
        }
        let (input, renaming) = if steps.is_empty() {
            (simplified, None)
        } else {
            let (q, order) = canonical_rename(&simplified, &used);
            (q, Some(order))
        };
        used.extend(input.generators().iter().cloned());
        preparations.push(Preparation { removals, renaming });
        let step = descend_step(&input, options.stable.get(steps.len()).map(String::as_str))?;
        used.extend(step.working().generators().iter().cloned());
        used.extend(step.after.generators().iter().cloned());
        cur = step.after.clone();
        steps.push(step);
    }
}
