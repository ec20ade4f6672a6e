use proptest::prelude::*;

use dehnkit::magnus::{
    delete_stable, descend, descend_step, exponent_fix, reindex, subscripted_name, AnnotatedLetter, DescendOptions,
};
use dehnkit::{Letter, Presentation, Word};

fn names(rank: usize) -> Vec<String> {
    ["a", "b", "c"][..rank].iter().map(|s| s.to_string()).collect()
}

fn relator(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 2..=max_len)
        .prop_map(|ls| Word::new(ls.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect()).cyclic_core())
        .prop_filter("two generators", |r| r.support().len() >= 2)
}

proptest! {
    #[test]
    fn reindex_erases_back(r in relator(3, 16)) {
        for s in 0..3 {
            let aw = reindex(&r, s, &names(3));
            if r.exponent_sum(s) != 0 {
                prop_assert!(aw.is_err());
                continue;
            }
            let aw = aw.unwrap();
            prop_assert_eq!(aw.erase(), r.clone());
            // subscripts equal the stable letter's running exponent sum
            let mut sum = 0;
            for l in &aw.letters {
                match *l {
                    AnnotatedLetter::Stable(x) => sum += x.sign(),
                    AnnotatedLetter::Indexed { subscript, .. } => prop_assert_eq!(subscript, sum),
                }
            }
            prop_assert_eq!(sum, 0);
        }
    }

    #[test]
    fn deletion_shrinks(r in relator(3, 16)) {
        for s in 0..3 {
            if r.exponent_sum(s) != 0 || r.occurrences(s) == 0 {
                continue;
            }
            let d = delete_stable(&reindex(&r, s, &names(3)).unwrap());
            prop_assert!(d.word.len() <= r.len() - r.occurrences(s));
            prop_assert!(d.word.is_reduced());
            prop_assert_eq!(d.word.support().len(), d.alphabet.len());
        }
    }

    #[test]
    fn fixup_kills_new_exponent_sum(r in relator(2, 12)) {
        prop_assume!(r.exponent_sum(0) != 0 && r.exponent_sum(1) != 0);
        let p = Presentation::new(names(2), vec![r]).unwrap();
        let f = exponent_fix(&p).unwrap();
        prop_assert_eq!(f.unreduced_image.exponent_sum(f.y), 0);
        let step = descend_step(&p, None).unwrap();
        prop_assert!(step.fixup.is_some());
        prop_assert!(step.shrinks());
    }

    #[test]
    fn descent_terminates(r in relator(3, 14)) {
        let p = Presentation::new(names(3), vec![r]).unwrap();
        let t = descend(&p, &DescendOptions::default()).unwrap();
        prop_assert!(t.terminal.relators().iter().all(|x| x.support().len() <= 1));
        for s in &t.steps {
            prop_assert!(s.shrinks());
        }
        prop_assert_eq!(t.follow(&Word::empty()).len(), t.steps.len() + 1);
    }
}

#[test]
fn subscript_names() {
    assert_eq!(subscripted_name("a", 0), "a0");
    assert_eq!(subscripted_name("a", -2), "am2");
    assert_eq!(subscripted_name("a1", 3), "a1_3");
}

#[test]
fn words_follow_the_descent() {
    let p = Presentation::new(names(2), vec![Word::from_syllables(&[(0, 1), (1, 1), (0, -1), (1, -1)])]).unwrap();
    let t = descend(&p, &DescendOptions::default()).unwrap();
    // the relator itself is trivial, so it follows to the empty word
    let path = t.follow(&p.relators()[0]);
    assert_eq!(path.last().unwrap().as_ref().map(Word::len), Some(0));
    // b has zero exponent sum in a word with stable letter b, so it survives one step
    let b = Word::from_syllables(&[(1, 1)]);
    assert!(t.follow(&b)[0].is_some());
}
