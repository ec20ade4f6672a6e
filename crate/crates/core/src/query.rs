//! Word-problem dispatch and machine-readable results.

use std::time::Instant;

use serde_json::{json, Value};

use crate::oracle::{
    abelianization_test, check_nontrivial, check_trivial, decide, find_nontrivial, AbelianVerdict, Budget,
    NontrivialWitness, TrivialMove, TrivialWitness, Verdict,
};
use crate::magnus::{DescentStep, DescentTrace};
use crate::presentation::Presentation;
use crate::spelling::{compile_dehn, dehn_reduce, ReductionTrace};
use crate::word::Word;

/// Largest cyclic quotient used when an abelianization witness is turned
/// into permutations.
const MAX_CYCLIC_DEGREE: usize = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Trivial,
    Nontrivial,
    Unknown,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Trivial => "trivial",
            Answer::Nontrivial => "nontrivial",
            Answer::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dehn,
    Oracle,
    Abelianization,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Dehn => "dehn",
            Method::Oracle => "oracle",
            Method::Abelianization => "abelianization",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Trivial(TrivialWitness),
    Nontrivial(NontrivialWitness),
}

#[derive(Debug, Clone)]
pub struct QueryResult {
    pub word: Word,
    pub answer: Answer,
    pub method: Method,
    /// Present when the Dehn algorithm ran.
    pub trace: Option<ReductionTrace>,
    /// Replay-checked. For Dehn answers this is derived from the trace
    /// (trivial) or found separately (nontrivial) and may be absent.
    pub certificate: Option<Certificate>,
    pub millis: f64,
}

impl QueryResult {
    pub fn nontrivial_witness(&self) -> Option<&NontrivialWitness> {
        match &self.certificate {
            Some(Certificate::Nontrivial(c)) => Some(c),
            _ => None,
        }
    }

    pub fn trivial_witness(&self) -> Option<&TrivialWitness> {
        match &self.certificate {
            Some(Certificate::Trivial(c)) => Some(c),
            _ => None,
        }
    }
}

/// Decide whether `w` is trivial in `p`: Dehn's algorithm when `p` is a
/// Dehn presentation, the bounded oracle otherwise.
pub fn wp(p: &Presentation, w: &Word, budget: &Budget) -> QueryResult {
    let start = Instant::now();
    let word = w.free_reduce();
    let mut result = match compile_dehn(p) {
        Ok(d) => {
            let trace = dehn_reduce(&word, &d);
            let (answer, certificate) = if trace.is_trivial() {
                let c = trace.to_witness();
                debug_assert_eq!(check_trivial(&word, p, &c), Ok(()));
                (Answer::Trivial, check_trivial(&word, p, &c).ok().map(|_| Certificate::Trivial(c)))
            } else {
                (Answer::Nontrivial, find_nontrivial(&word, p, budget).map(Certificate::Nontrivial))
            };
            QueryResult { word: word.clone(), answer, method: Method::Dehn, trace: Some(trace), certificate, millis: 0.0 }
        }
        Err(_) => oracle_query(p, &word, budget),
    };
    result.millis = start.elapsed().as_secs_f64() * 1000.0;
    result
}

fn oracle_query(p: &Presentation, word: &Word, budget: &Budget) -> QueryResult {
    if let AbelianVerdict::Nontrivial(a) = abelianization_test(word, p) {
        if let Some(c) = a.to_permutations(word, MAX_CYCLIC_DEGREE).filter(|c| check_nontrivial(word, p, c).is_ok()) {
            return QueryResult {
                word: word.clone(),
                answer: Answer::Nontrivial,
                method: Method::Abelianization,
                trace: None,
                certificate: Some(Certificate::Nontrivial(c)),
                millis: 0.0,
            };
        }
    }
    oracle_only(p, word, budget)
}

/// Run only the oracle, without Dehn's algorithm.
pub fn oracle_only(p: &Presentation, word: &Word, budget: &Budget) -> QueryResult {
    let start = Instant::now();
    let word = word.free_reduce();
    let (answer, certificate) = match decide(&word, p, budget) {
        Verdict::Trivial(c) => (Answer::Trivial, Some(Certificate::Trivial(c))),
        Verdict::Nontrivial(c) => (Answer::Nontrivial, Some(Certificate::Nontrivial(c))),
        Verdict::Unknown => (Answer::Unknown, None),
    };
    QueryResult {
        word,
        answer,
        method: Method::Oracle,
        trace: None,
        certificate,
        millis: start.elapsed().as_secs_f64() * 1000.0,
    }
}

fn word_json(w: &Word, p: &Presentation) -> Value {
    Value::String(p.display_word(w).to_string())
}

pub fn trace_json(trace: &ReductionTrace, p: &Presentation) -> Value {
    Value::Array(
        trace
            .replay()
            .into_iter()
            .map(|(before, m, after)| {
                json!({
                    "before": word_json(&before, p),
                    "match": {
                        "pos": m.position,
                        "len": m.length,
                        "entry": word_json(&m.table_entry, p),
                    },
                    "after": word_json(&after, p),
                })
            })
            .collect(),
    )
}

pub fn certificate_json(c: &Certificate, p: &Presentation) -> Value {
    match c {
        Certificate::Trivial(t) => json!({
            "kind": "trivial",
            "max_len": t.max_len,
            "moves": t.moves.iter().map(|m| {
                let (op, pos, r) = match m {
                    TrivialMove::Delete { position, relator } => ("delete", position, relator),
                    TrivialMove::Insert { position, relator } => ("insert", position, relator),
                };
                json!({ "op": op, "pos": pos, "relator": word_json(r, p) })
            }).collect::<Vec<_>>(),
        }),
        Certificate::Nontrivial(n) => {
            let images: serde_json::Map<String, Value> = p
                .generators()
                .iter()
                .zip(&n.images)
                .map(|(g, perm)| (g.clone(), json!(perm.images())))
                .collect();
            json!({ "kind": "nontrivial", "degree": n.degree, "images": images })
        }
    }
}

/// `{"verdict", "method", "trace" | "certificate", "millis"}`; Dehn answers
/// carry a trace and, when one was found, a certificate as well.
pub fn result_json(r: &QueryResult, p: &Presentation) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("verdict".into(), json!(r.answer.as_str()));
    out.insert("method".into(), json!(r.method.as_str()));
    out.insert("word".into(), word_json(&r.word, p));
    if let Some(t) = &r.trace {
        out.insert("trace".into(), trace_json(t, p));
        out.insert("final".into(), word_json(&t.final_word, p));
    }
    if let Some(c) = &r.certificate {
        out.insert("certificate".into(), certificate_json(c, p));
    }
    out.insert("millis".into(), json!((r.millis * 1000.0).round() / 1000.0));
    Value::Object(out)
}

pub fn step_json(s: &DescentStep, word: Option<&Option<Word>>) -> Value {
    let working = s.working();
    let mut v = json!({
        "before": s.before.to_string(),
        "stable": s.stable,
        "reindexed": s.annotated.display(working.generators()).to_string(),
        "after": s.after.to_string(),
        "relator": s.after.display_word(&s.after.relators()[0]).to_string(),
    });
    if let Some(f) = &s.fixup {
        v["fixup"] = json!({
            "presentation": f.presentation.to_string(),
            "unreduced": f.presentation.display_word(&f.unreduced_image).to_string(),
            "substitution": s.before.generators().iter().zip(&f.images)
                .map(|(g, img)| (g.clone(), json!(f.presentation.display_word(img).to_string())))
                .collect::<serde_json::Map<_, _>>(),
        });
    }
    if let Some(w) = word {
        v["word"] = w.as_ref().map_or(Value::Null, |w| json!(s.before.display_word(w).to_string()));
    }
    v
}

/// Steps, terminal presentation and shape; with `word`, also where the
/// word lands at every stage.
pub fn descent_json(t: &DescentTrace, word: Option<&Word>) -> Value {
    let path = word.map(|w| t.follow(w));
    let steps: Vec<Value> =
        t.steps.iter().enumerate().map(|(i, s)| step_json(s, path.as_ref().map(|p| &p[i]))).collect();
    let mut v = json!({
        "steps": steps,
        "terminal": t.terminal.to_string(),
        "shape": t.shape.to_string(),
        "note": "structure read off the terminal presentation; the descent does not verify isomorphism with the input",
    });
    if let Some(p) = &path {
        let last = p.last().expect("nonempty").as_ref();
        v["word"] = json!({
            "terminal": last.map(|w| t.terminal.display_word(w).to_string()),
            "informational": t.used_fixup(),
        });
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::surface_presentation;

    fn w(s: &[(usize, i64)]) -> Word {
        Word::from_syllables(s)
    }

    #[test]
    fn cube_relator_goes_through_dehn() {
        let c3 = Presentation::new(["a"], vec![w(&[(0, 3)])]).unwrap();
        let r = wp(&c3, &w(&[(0, 6)]), &Budget::default());
        assert_eq!(r.answer, Answer::Trivial);
        assert_eq!(r.method, Method::Dehn);
        assert_eq!(r.trace.as_ref().unwrap().steps.len(), 2);
        let j = result_json(&r, &c3);
        assert_eq!(j["trace"].as_array().unwrap().len(), 2);
        assert_eq!(j["trace"][0]["match"]["len"], 3);
        assert_eq!(j["trace"][1]["after"], "");
    }

    #[test]
    fn surface_relator_is_trivial() {
        let s = surface_presentation(2).unwrap();
        let r = wp(&s, &s.relators()[0], &Budget::default());
        assert_eq!((r.answer, r.method), (Answer::Trivial, Method::Dehn));
    }

    #[test]
    fn commutator_group_uses_abelianization() {
        let z2 = Presentation::new(["a", "b"], vec![w(&[(0, 1), (1, 1), (0, -1), (1, -1)])]).unwrap();
        let r = wp(&z2, &w(&[(0, 1)]), &Budget::default());
        assert_eq!(r.answer, Answer::Nontrivial);
        assert_eq!(r.method, Method::Abelianization);
        let c = r.nontrivial_witness().unwrap();
        assert_eq!(c.degree, 2);
        assert_eq!(check_nontrivial(&w(&[(0, 1)]), &z2, c), Ok(()));
        let j = result_json(&r, &z2);
        assert_eq!(j["certificate"]["degree"], 2);
        assert!(j.get("trace").is_none());
    }
}
