//! Permutations of a small point set, acting on the right.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::word::Word;

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    /// Panics if `images` is not a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<u8>) -> Perm {
        assert!(is_permutation(&images), "not a permutation: {images:?}");
        Perm { images }
    }

    pub fn try_from_images(images: Vec<u8>) -> Option<Perm> {
        is_permutation(&images).then_some(Perm { images })
    }

    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree as u8).collect() }
    }

    /// The cycle `0 → 1 → … → n−1 → 0` raised to `power`.
    pub fn cycle_power(degree: usize, power: i64) -> Perm {
        let n = degree as i64;
        Perm { images: (0..n).map(|x| (x + power).rem_euclid(n) as u8).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Perm { images }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&x| other.apply(x)).collect() }
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.images[x] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

fn is_permutation(images: &[u8]) -> bool {
    images.len() <= 256 && {
        let mut seen = vec![false; images.len()];
        images.iter().all(|&x| (x as usize) < images.len() && !std::mem::replace(&mut seen[x as usize], true))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Every permutation of `0..degree` in lexicographic order.
pub fn all_perms(degree: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..degree as u8).collect();
    let mut out = vec![Perm { images: cur.clone() }];
    while next_permutation(&mut cur) {
        out.push(Perm { images: cur.clone() });
    }
    out
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The lexicographically first permutation of each cycle type, with the
/// size of its conjugacy class.
pub fn class_representatives(degree: usize) -> Vec<(Perm, usize)> {
    let mut reps: Vec<(Perm, usize)> = Vec::new();
    let mut types: Vec<Vec<usize>> = Vec::new();
    for p in all_perms(degree) {
        let t = p.cycle_type();
        match types.iter().position(|x| *x == t) {
            Some(i) => reps[i].1 += 1,
            None => {
                types.push(t);
                reps.push((p, 1));
            }
        }
    }
    reps
}

/// Evaluate a word under a generator assignment.
pub fn evaluate(w: &Word, images: &[Perm], inverses: &[Perm], degree: usize) -> Perm {
    let mut out = Vec::with_capacity(degree);
    for x in 0..degree as u8 {
        out.push(trace_point(w, images, inverses, x));
    }
    Perm { images: out }
}

#[inline]
pub(crate) fn trace_point(w: &Word, images: &[Perm], inverses: &[Perm], mut x: u8) -> u8 {
    for l in w.letters() {
        let p = if l.is_inverse() { &inverses[l.generator()] } else { &images[l.generator()] };
        x = p.apply(x);
    }
    x
}

/// Whether `w` evaluates to the identity, without building the product.
pub(crate) fn kills(w: &Word, images: &[Perm], inverses: &[Perm], degree: usize) -> bool {
    (0..degree as u8).all(|x| trace_point(w, images, inverses, x) == x)
}

/// Order of the group generated by `gens`, by breadth-first closure.
pub fn group_order(gens: &[Perm]) -> usize {
    let Some(degree) = gens.first().map(Perm::degree) else {
        return 1;
    };
    let id = Perm::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// Whether every point can reach every other under `gens`.
pub fn is_transitive(gens: &[Perm]) -> bool {
    let Some(degree) = gens.first().map(Perm::degree) else {
        return true;
    };
    let mut seen = vec![false; degree];
    let mut stack = vec![0u8];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !std::mem::replace(&mut seen[y as usize], true) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
