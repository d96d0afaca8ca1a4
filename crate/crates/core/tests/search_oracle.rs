mod common;

use fo2_core::formula::{Formula, ScottNormalForm, Vocabulary};
use fo2_core::satengine::{
    brute_force_sat, decide_sat, random_sentence, Outcome, Problem, SearchLimits, SentenceShape,
};
use fo2_core::typespace::check_snf;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_structures, naive_eval, random_qf, vocab_of};

fn random_snf(vocab: &Vocabulary, rng: &mut ChaCha8Rng) -> ScottNormalForm {
    // bias α towards being satisfiable so both answers occur
    let alpha = Formula::or(random_qf(vocab, 4, rng), random_qf(vocab, 2, rng));
    let betas = (0..rng.gen_range(0..=2))
        .map(|_| random_qf(vocab, 3, rng))
        .collect();
    ScottNormalForm {
        vocabulary: vocab.clone(),
        alpha,
        betas,
        definitions: Vec::new(),
    }
}

/// Pruned search and plain enumeration with a recursive evaluator agree on
/// whether a model with at most three elements exists.
#[test]
fn pruned_search_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut found = [0usize; 2];
    for case in 0..100 {
        let vocab = vocab_of(case % 3, 1);
        let snf = random_snf(&vocab, &mut rng);
        let sentence = snf.to_sentence();
        let expected = (1..=3).find_map(|n| {
            all_structures(&vocab, n)
                .into_iter()
                .find(|s| naive_eval(&sentence, s, [None, None]))
                .map(|s| s.size())
        });
        let got = brute_force_sat(Problem::Snf(&snf), 3, SearchLimits::default()).unwrap();
        assert_eq!(got.as_ref().map(|s| s.size()), expected, "{sentence}");
        if let Some(s) = got {
            assert!(check_snf(&s, &snf).unwrap().holds());
            assert!(naive_eval(&sentence, &s, [None, None]));
        }
        found[usize::from(expected.is_some())] += 1;
    }
    assert!(found[0] > 0 && found[1] > 0, "{found:?}");
}

/// Both engines return the same least model when given the same sentence.
#[test]
fn engines_pick_the_same_least_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..60 {
        let vocab = vocab_of(case % 2, 1);
        let snf = random_snf(&vocab, &mut rng);
        let sentence = snf.to_sentence();
        let plain = brute_force_sat(
            Problem::Formula {
                vocabulary: &vocab,
                formula: &sentence,
            },
            3,
            SearchLimits::default(),
        )
        .unwrap();
        let pruned = brute_force_sat(Problem::Snf(&snf), 3, SearchLimits::default()).unwrap();
        assert_eq!(plain, pruned, "{sentence}");
    }
}

#[test]
fn decide_agrees_with_brute_force_at_cap_three() {
    let shape = SentenceShape::default();
    for seed in 0..100 {
        let vocab = vocab_of((seed % 3) as usize, (seed / 3 % 2) as usize);
        let phi = random_sentence(&vocab, shape, seed);
        let direct = brute_force_sat(
            Problem::Formula {
                vocabulary: &vocab,
                formula: &phi,
            },
            3,
            SearchLimits::default(),
        )
        .unwrap();
        let d = decide_sat(&phi, &vocab, Some(3), SearchLimits::default()).unwrap();
        match (&d.outcome, &direct) {
            (Outcome::Sat { witness, .. }, Some(s)) => {
                assert_eq!(witness.size(), s.size(), "{phi}");
                assert!(naive_eval(&phi, witness, [None, None]));
            }
            (Outcome::Unsat | Outcome::ResourceExceeded, None) => {}
            (outcome, direct) => panic!("{phi}: {outcome:?} vs {direct:?}"),
        }
    }
}

#[test]
fn unsat_needs_the_whole_bound() {
    let vocab = Vocabulary::new(Vec::<String>::new(), ["r"]).unwrap();
    let phi = fo2_core::parse_formula("(A x. A y. !r(x,y)) & A x. E y. r(x,y)", &vocab).unwrap();
    let d = decide_sat(&phi, &vocab, None, SearchLimits::default()).unwrap();
    assert_eq!(d.outcome, Outcome::Unsat);
    assert_eq!(d.searched as u128, d.tight_bound.total_bound);
    let capped = decide_sat(&phi, &vocab, Some(4), SearchLimits::default()).unwrap();
    assert_eq!(capped.outcome, Outcome::ResourceExceeded);
}
