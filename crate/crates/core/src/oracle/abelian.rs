//! Non-triviality through the abelianization.
//!
//! A word is trivial in the abelianization iff its exponent-sum vector lies
//! in the integer lattice spanned by the relators' vectors. Membership is
//! decided with a Smith normal form computed by integer elimination; the
//! column transform yields a homomorphism to `ℤ` or `ℤ/m` that separates
//! the word whenever membership fails.

use super::certificate::NontrivialWitness;
use super::perm::Perm;
use crate::presentation::Presentation;
use crate::word::Word;

/// Homomorphism `g ↦ functional[g]` to `ℤ/modulus` (`modulus == 0` meaning
/// `ℤ`) that kills every relator and not the query word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianWitness {
    pub functional: Vec<i64>,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbelianVerdict {
    Nontrivial(AbelianWitness),
    Inconclusive,
}

pub fn exponent_vector(w: &Word, rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for l in w.letters() {
        v[l.generator()] += l.sign();
    }
    v
}

impl AbelianWitness {
    pub fn evaluate(&self, w: &Word) -> i64 {
        let v = exponent_vector(w, self.functional.len());
        let s: i64 = v.iter().zip(&self.functional).map(|(a, b)| a * b).sum();
        if self.modulus == 0 {
            s
        } else {
            s.rem_euclid(self.modulus as i64)
        }
    }

    /// Realize the homomorphism as a regular action of a cyclic group of the
    /// smallest degree that still separates `w`. `None` if that degree
    /// would exceed `max_degree`.
    pub fn to_permutations(&self, w: &Word, max_degree: usize) -> Option<NontrivialWitness> {
        let value = {
            let v = exponent_vector(w, self.functional.len());
            v.iter().zip(&self.functional).map(|(a, b)| a * b).sum::<i64>()
        };
        let m = self.modulus as i64;
        let degree = (2..=max_degree as i64).find(|&k| (m == 0 || m % k == 0) && value.rem_euclid(k) != 0)?;
        let images = self.functional.iter().map(|&f| Perm::cycle_power(degree as usize, f)).collect();
        Some(NontrivialWitness { degree: degree as usize, images })
    }
}

pub fn abelianization_test(w: &Word, p: &Presentation) -> AbelianVerdict {
    let rank = p.rank();
    let mut m: Vec<Vec<i64>> = p.relators().iter().map(|r| exponent_vector(r, rank)).collect();
    let (diagonal, q) = smith_columns(&mut m, rank);
    let v = exponent_vector(&w.free_reduce(), rank);
    for i in 0..rank {
        let y: i64 = (0..rank).map(|j| v[j] * q[j][i]).sum();
        let d = diagonal.get(i).copied().unwrap_or(0);
        let separated = if d == 0 { y != 0 } else { y.rem_euclid(d) != 0 };
        if separated {
            let functional = (0..rank).map(|j| q[j][i]).collect();
            return AbelianVerdict::Nontrivial(AbelianWitness { functional, modulus: d.unsigned_abs() });
        }
    }
    AbelianVerdict::Inconclusive
}

/// Diagonalize `m` (rows × `cols`) by unimodular row and column operations.
/// Returns the diagonal (positive entries, one per pivot) and the column
/// transform `q` with `m_original · q` having the same row lattice as the
/// diagonal form.
fn smith_columns(m: &mut [Vec<i64>], cols: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = m.len();
    let mut q: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return (diagonal, q);
            };
            m.swap(t, pi);
            swap_columns(m, &mut q, t, pj);
            let d = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = m[i][t] / d;
                if f != 0 {
                    for j in t..cols {
                        m[i][j] -= f * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = m[t][j] / d;
                if f != 0 {
                    for row in m.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if clean {
                diagonal.push(d.abs());
                break;
            }
        }
    }
    (diagonal, q)
}

fn swap_columns(m: &mut [Vec<i64>], q: &mut [Vec<i64>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in q.iter_mut() {
            row.swap(a, b);
        }
    }
}
