//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::collections::{BTreeSet, VecDeque};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dehnkit::magnus::{descend, exponent_fix, DescendOptions, TerminalShape};
use dehnkit::oracle::{
    check_nontrivial, decide, hom_count, perm::is_transitive, quotient_separation, Budget, Perm,
};
use dehnkit::presentation::{surface_presentation, Presentation};
use dehnkit::query::{wp, Answer};
use dehnkit::spelling::{compile_dehn, dehn_reduce, find_spelling_subword, is_trivial, DehnPresentation};
use dehnkit::tietze::{add_generator, remove_generator, simplify};
use dehnkit::word::{Letter, Word};

fn w(s: &[(usize, i64)]) -> Word {
    Word::from_syllables(s)
}

fn commutator(x: usize, y: usize) -> Word {
    w(&[(x, 1), (y, 1), (x, -1), (y, -1)])
}

fn g0() -> Presentation {
    Presentation::new(["a", "b"], vec![w(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, 1), (0, -1), (1, -1)])])
        .unwrap()
}

fn tietze_chain() -> Presentation {
    Presentation::new(["a", "b", "c"], vec![w(&[(0, 1), (1, 1), (2, 1)]), w(&[(2, 1), (1, -2)])]).unwrap()
}

fn spelling_suite() -> Vec<(&'static str, Presentation)> {
    vec![
        ("<a | a^3>", Presentation::new(["a"], vec![w(&[(0, 3)])]).unwrap()),
        ("<a, b | (a b)^2>", Presentation::new(["a", "b"], vec![w(&[(0, 1), (1, 1)]).repeat(2)]).unwrap()),
        (
            "<a, b | (a b a b^-1)^3>",
            Presentation::new(["a", "b"], vec![w(&[(0, 1), (1, 1), (0, 1), (1, -1)]).repeat(3)]).unwrap(),
        ),
        ("genus-2 surface", surface_presentation(2).unwrap()),
    ]
}

fn random_reduced(rng: &mut StdRng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if letters.last().is_some_and(|&p| p.cancels(l)) {
            continue;
        }
        letters.push(l);
    }
    Word::new(letters)
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn worked_descent() -> Outcome {
    let start = Instant::now();
    let opts = DescendOptions { stable: vec!["b".into(), "d".into()], ..Default::default() };
    let t = match descend(&g0(), &opts) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("descent failed: {e}")),
    };
    let elapsed = start.elapsed();
    if t.steps.len() != 2 {
        return outcome(false, format!("expected 2 steps, got {}", t.steps.len()));
    }
    let s1 = &t.steps[0];
    let s2 = &t.steps[1];
    let reindexed = s1.annotated.display(s1.working().generators()).to_string();
    let g1 = s1.after.display_word(&s1.after.relators()[0]).to_string();
    let g2 = s2.after.display_word(&s2.after.relators()[0]).to_string();
    let z = TerminalShape { free_rank: 1, cyclic_order: None };

    let cli = Command::new(env!("CARGO_BIN_EXE_dehnkit"))
        .args(["descend", "--stable", "b", "--stable", "d"])
        .arg(write_temp("g0.txt", "generators: a b\nrelator: a b a b^-1 a^-1 b a^-1 b^-1\n"))
        .output()
        .expect("run cli");
    let cli_text = String::from_utf8_lossy(&cli.stdout);
    let cli_ok = cli.status.success()
        && cli_text.contains("reindexed: a0 b a1 b^-1 a0^-1 b a1^-1 b^-1")
        && cli_text.contains("after: <c0, c1 | c0 c1^-1>")
        && cli_text.lines().any(|l| l.starts_with("terminal:") && l.ends_with("(Z)"));

    let pass = reindexed == "a0 b a1 b^-1 a0^-1 b a1^-1 b^-1"
        && g1 == "a0 a1 a0^-1 a1^-1"
        && g2 == "c0 c1^-1"
        && t.shape == z
        && cli_ok
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!("w0' = {reindexed}; G1: {g1}; G2: {g2}; terminal {} ({}); cli ok: {cli_ok}; {elapsed:?}", t.terminal, t.shape),
    )
}

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dehnkit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn tietze_chain_criterion() -> Outcome {
    let start = Instant::now();
    let (q, log) = simplify(&tietze_chain());
    let elapsed = start.elapsed();
    let middle = Presentation::new(["a", "b"], vec![w(&[(0, 1), (1, 3)])]).unwrap();
    let has_middle = log.iter().any(|s| s.after == middle);
    let chain: Vec<String> = log.iter().map(|s| s.after.to_string()).collect();
    let pass = q == Presentation::free(["b"]).unwrap() && has_middle && elapsed < Duration::from_secs(1);
    outcome(pass, format!("{} -> {}; {elapsed:?}", tietze_chain(), chain.join(" -> ")))
}

fn random_conjugate_product(rng: &mut StdRng, d: &DehnPresentation, rank: usize) -> Word {
    let count = rng.gen_range(1..=6);
    let mut out = Word::empty();
    for _ in 0..count {
        let len = rng.gen_range(0..=6);
        let u = random_reduced(rng, rank, len);
        let c = &d.conjugate_table()[rng.gen_range(0..d.conjugate_table().len())];
        let c = if rng.gen_bool(0.5) { c.clone() } else { c.inverse() };
        out = out.concat(&u.concat(&c).concat(&u.inverse()));
    }
    out
}

fn spelling_property() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = 0;
    let mut nonempty = 0;
    let mut total = 0;
    for (_, p) in spelling_suite() {
        let d = compile_dehn(&p).expect("suite presentations are Dehn");
        for _ in 0..500 {
            total += 1;
            let x = random_conjugate_product(&mut rng, &d, p.rank());
            if !x.is_empty() {
                nonempty += 1;
                if find_spelling_subword(&x, &d).is_none() {
                    failures += 1;
                    continue;
                }
            }
            if !dehn_reduce(&x, &d).is_trivial() {
                failures += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && elapsed < Duration::from_secs(30),
        format!("{total} samples ({nonempty} nonempty), {failures} failures, {elapsed:?}"),
    )
}

fn base_case() -> Outcome {
    let mut wrong = Vec::new();
    for n in 2..=6 {
        let p = Presentation::new(["a"], vec![Word::power_of(0, n)]).unwrap();
        for i in -30i64..=30 {
            let r = wp(&p, &Word::power_of(0, i), &Budget::default());
            let expected = if i % n == 0 { Answer::Trivial } else { Answer::Nontrivial };
            if r.answer != expected {
                wrong.push(format!("n={n} i={i}"));
            }
        }
    }
    outcome(wrong.is_empty(), format!("305 queries, {} mismatches {wrong:?}", wrong.len()))
}

/// Every freely reduced word of length at most `max_len` over the first
/// two generators (one if the rank is 1).
fn all_reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..rank.min(2)).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for &l in &alphabet {
                if prefix.last().is_some_and(|&p| p.cancels(l)) {
                    continue;
                }
                let mut x = prefix.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned().map(Word::new));
        layer = next;
    }
    out
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let mut details = Vec::new();
    let mut disagreements = 0;
    for (name, p) in spelling_suite() {
        let d = compile_dehn(&p).unwrap();
        let (mut definite, mut unknown) = (0, 0);
        for x in all_reduced_words(p.rank(), 8) {
            let verdict = decide(&x, &p, &budget);
            let Some(trivial) = verdict.as_bool() else {
                unknown += 1;
                continue;
            };
            definite += 1;
            if is_trivial(&x, &d) != trivial {
                disagreements += 1;
            }
        }
        details.push(format!("{name}: {definite} definite, {unknown} unknown"));
    }
    outcome(
        disagreements == 0,
        format!("{}; {disagreements} disagreements; {:?}", details.join("; "), start.elapsed()),
    )
}

fn nontriviality_certificates() -> Outcome {
    let z2 = Presentation::new(["a", "b"], vec![commutator(0, 1)]).unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, p) in [("genus-2 surface", surface_presentation(2).unwrap()), ("<a, b | [a, b]>", z2)] {
        let a = w(&[(0, 1)]);
        let r = wp(&p, &a, &Budget::default());
        match r.nontrivial_witness() {
            Some(c) if r.answer == Answer::Nontrivial => {
                let ok = check_nontrivial(&a, &p, c).is_ok() && c.degree <= 3;
                pass &= ok;
                parts.push(format!("{name}: degree {} via {}, replay {}", c.degree, r.method.as_str(), ok));
            }
            _ => {
                pass = false;
                parts.push(format!("{name}: {} without witness", r.answer.as_str()));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

/// Size of the permutation group generated by `gens`, by closing under
/// right multiplication.
fn closure_size(gens: &[Perm]) -> usize {
    let degree = gens[0].degree();
    let id: Vec<u8> = (0..degree as u8).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u8> = x.iter().map(|&i| g.images()[i as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn a5_criterion() -> Outcome {
    let p = Presentation::new(["a", "b"], vec![w(&[(0, 5)]), w(&[(1, 2)]), w(&[(0, 1), (1, 1)]).repeat(3)]).unwrap();
    let a = w(&[(0, 1)]);
    let Some(c) = quotient_separation(&a, &p, 5) else {
        return outcome(false, "no separating quotient");
    };
    let order = closure_size(&c.images);
    let replay = check_nontrivial(&a, &p, &c).is_ok();
    let wa = wp(&p, &a, &Budget::default());
    let wa5 = wp(&p, &w(&[(0, 5)]), &Budget::default());
    let pass = c.degree == 5
        && order == 60
        && replay
        && is_transitive(&c.images)
        && wa.answer == Answer::Nontrivial
        && wa5.answer == Answer::Trivial;
    let images: Vec<String> = c.images.iter().map(|x| x.to_string()).collect();
    outcome(
        pass,
        format!(
            "degree {}, images {images:?}, order {order}, replay {replay}; wp(a) {}; wp(a^5) {}",
            c.degree,
            wa.answer.as_str(),
            wa5.answer.as_str()
        ),
    )
}

fn hom_counts(p: &Presentation) -> [u64; 3] {
    [2, 3, 4].map(|k| hom_count(p, k).unwrap())
}

fn tietze_invariance() -> Outcome {
    let seeds = vec![
        tietze_chain(),
        Presentation::new(["a", "b"], vec![commutator(0, 1)]).unwrap(),
        Presentation::new(["a", "b"], vec![w(&[(0, 5)]), w(&[(1, 2)]), w(&[(0, 1), (1, 1)]).repeat(3)]).unwrap(),
        Presentation::new(["a", "b"], vec![w(&[(0, 1), (1, 1), (0, 1), (1, -1)]).repeat(2)]).unwrap(),
        Presentation::new(["x", "y"], vec![w(&[(0, 2), (1, -3)])]).unwrap(),
    ];
    let chain_degree3 = hom_count(&tietze_chain(), 3).unwrap();
    let mut rng = StdRng::seed_from_u64(8);
    let mut mismatches = 0;
    let mut trips = 0;
    for seed in &seeds {
        let reference = hom_counts(seed);
        let mut cur = seed.clone();
        for round in 0..20 {
            let len = rng.gen_range(0..=3);
            let def = random_reduced(&mut rng, cur.rank(), len);
            let name = format!("t{round}");
            let added = add_generator(&cur, &name, &def).unwrap();
            if hom_counts(&added) != reference {
                mismatches += 1;
            }
            let removable: Vec<usize> = (0..added.rank()).filter(|&g| remove_generator(&added, g).is_ok()).collect();
            let g = removable[rng.gen_range(0..removable.len())];
            let (back, _) = remove_generator(&added, g).unwrap();
            if hom_counts(&back) != reference {
                mismatches += 1;
            }
            cur = back;
            trips += 1;
        }
    }
    outcome(
        mismatches == 0 && chain_degree3 == 6,
        format!("{trips} round trips over {} seeds, {mismatches} mismatches; chain degree-3 count {chain_degree3}", seeds.len()),
    )
}

/// Best per-call time of `dehn_reduce` on `x`, amortized over enough calls
/// that each measurement processes at least `letters` letters.
fn time_reduce(x: &Word, d: &DehnPresentation, letters: usize) -> f64 {
    let calls = (letters / x.len()).max(1);
    (0..7)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..calls {
                std::hint::black_box(dehn_reduce(std::hint::black_box(x), d));
            }
            start.elapsed().as_secs_f64() / calls as f64
        })
        .fold(f64::INFINITY, f64::min)
}

fn linear_time() -> Outcome {
    let p = Presentation::new(["a", "b"], vec![w(&[(0, 1), (1, 1)]).repeat(2)]).unwrap();
    let d = compile_dehn(&p).unwrap();
    let full = d.full_relator().clone();
    let times: Vec<(usize, f64)> = (10..=14)
        .map(|e| {
            let k = 1usize << e;
            let x = full.repeat(k);
            assert!(dehn_reduce(&x, &d).is_trivial());
            (k, time_reduce(&x, &d, 1 << 18))
        })
        .collect();
    let ratios: Vec<f64> = times.windows(2).map(|t| t[1].1 / t[0].1).collect();
    let pass = ratios.iter().all(|&r| r <= 2.5);
    let shown: Vec<String> = times.iter().map(|(k, t)| format!("k={k}: {:.1}us", t * 1e6)).collect();
    let shown_ratios: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    outcome(pass, format!("{}; ratios {}", shown.join(", "), shown_ratios.join(", ")))
}

/// A cyclically reduced relator over `rank ≥ 2` generators mentioning
/// every generator with nonzero exponent sum.
fn random_fixup_input(rng: &mut StdRng) -> Presentation {
    loop {
        let rank = rng.gen_range(2..=4);
        let len = rng.gen_range(2..=12);
        let r = random_reduced(rng, rank, len);
        if !r.is_cyclically_reduced() || r.support().len() < rank {
            continue;
        }
        if r.support().iter().all(|&g| r.exponent_sum(g) != 0) {
            let names: Vec<String> = (0..rank).map(|i| format!("g{i}")).collect();
            return Presentation::new(names, vec![r]).unwrap();
        }
    }
}

fn fixup_postcondition() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut verified = 0;
    let mut failures = Vec::new();
    for i in 0..100 {
        let p = random_fixup_input(&mut rng);
        let r = &p.relators()[0];
        let f = match exponent_fix(&p) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("#{i}: {e}"));
                continue;
            }
        };
        // recount: each a contributes −β to σ_y, each b contributes α
        let support: Vec<usize> = r.support().into_iter().collect();
        let (a, b) = (support[0], support[1]);
        let (alpha, beta) = (r.exponent_sum(a), r.exponent_sum(b));
        let mut sigma_y = 0;
        for l in r.letters() {
            if l.generator() == a {
                sigma_y += -beta * l.sign();
            } else if l.generator() == b {
                sigma_y += alpha * l.sign();
            }
        }
        let direct = f.unreduced_image.letters().iter().filter(|l| l.generator() == f.y).map(|l| l.sign()).sum::<i64>();
        let expected_len: usize = r
            .letters()
            .iter()
            .map(|l| {
                if l.generator() == a {
                    1 + beta.unsigned_abs() as usize
                } else if l.generator() == b {
                    alpha.unsigned_abs() as usize
                } else {
                    1
                }
            })
            .sum();
        if sigma_y == 0 && direct == 0 && f.unreduced_image.len() == expected_len {
            verified += 1;
        } else {
            failures.push(format!("#{i}: {p}"));
        }
    }
    outcome(verified == 100, format!("{verified}/100 verified {failures:?}"))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("worked descent example", worked_descent),
        ("Tietze chain", tietze_chain_criterion),
        ("spelling-theorem property", spelling_property),
        ("cyclic base case", base_case),
        ("oracle cross-validation", oracle_agreement),
        ("non-triviality certificates", nontriviality_certificates),
        ("A5 presentation", a5_criterion),
        ("Tietze hom-count invariance", tietze_invariance),
        ("linear-time reduction", linear_time),
        ("fix-up postcondition", fixup_postcondition),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
