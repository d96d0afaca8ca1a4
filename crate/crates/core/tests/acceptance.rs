//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p fo2-core --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use fo2_core::compressor::{
    compress, verify_properties, CompressionConfig, Mode, Property, PropertyReport,
};
use fo2_core::formula::{to_scott_normal_form, Formula, Vocabulary};
use fo2_core::satengine::{
    brute_force_sat, decide_sat, padded_paper_bound, random_sentence, random_structure,
    random_tournament, size_bound, snf_of_structure, BoundError, Problem, SearchLimits,
    SentenceShape,
};
use fo2_core::tournament::{
    from_structure, to_structure, Color, ColoredTournament, DirectionRule, EdgeColor,
};
use fo2_core::typespace::{
    check_snf, evaluate, realized_one_types, realized_two_types, Assignment, OneType, Structure,
    TwoType, TypeEvaluator, TypeShape,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_structures, graph_params, naive_eval, random_qf, scan_d_sets, vocab_of};

type Outcome = Result<String, String>;

fn random_graph(seed: u64) -> ColoredTournament {
    let (k, l, sizes) = graph_params(seed);
    random_tournament(k, l, &sizes, seed).expect("valid parameters")
}

fn failing(report: &PropertyReport) -> Vec<char> {
    Property::ALL
        .iter()
        .filter(|p| !report.passes(**p))
        .map(|p| p.letter())
        .collect()
}

fn criterion_1_construction() -> Outcome {
    let mut checked = 0;
    for seed in 0..200u64 {
        let g = random_graph(seed);
        for mode in [Mode::Tight, Mode::PaperExact] {
            let h = compress(&g, CompressionConfig::new(mode))
                .map_err(|e| format!("seed {seed} {mode}: {e}"))?;
            let report =
                verify_properties(&g, &h, mode).map_err(|e| format!("seed {seed}: {e}"))?;
            if !report.all_pass() {
                return Err(format!(
                    "seed {seed} {mode}: failing {:?}\n{report}",
                    failing(&report)
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} compressions, all of (a)-(e) hold"))
}

fn criterion_2_size_formula() -> Outcome {
    let mut classes = 0;
    for seed in 0..200u64 {
        let g = random_graph(seed);
        let sizes = g.class_sizes();
        let realized = sizes.len();
        let widest = scan_d_sets(&g)
            .values()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0);
        for mode in [Mode::PaperExact, Mode::Tight] {
            let expected = match mode {
                Mode::PaperExact => (g.num_colors() * g.num_edge_colors()) as usize,
                Mode::Tight => realized.max(6) * widest,
            };
            let h = compress(&g, CompressionConfig::new(mode)).map_err(|e| e.to_string())?;
            let after = h.class_sizes();
            for (c, &n) in &sizes {
                let got = after.get(c).copied().unwrap_or(0);
                let want = if n == 1 { 1 } else { expected };
                if got != want {
                    return Err(format!("seed {seed} {mode} color {c}: {got} != {want}"));
                }
                classes += usize::from(n > 1);
            }
            if after.len() != sizes.len() {
                return Err(format!("seed {seed} {mode}: color set changed"));
            }
        }
    }
    Ok(format!("{classes} non-king classes with exact size"))
}

fn criterion_3_small_model() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut largest = 0;
    for case in 0..100u64 {
        let n = rng.gen_range(0..=2);
        let size = rng.gen_range(1..=8);
        let vocab = vocab_of(n, 1);
        let a = random_structure(&vocab, size, case);
        let snf = snf_of_structure(&a).map_err(|e| e.to_string())?;
        let g = from_structure(&a, DirectionRule::default()).map_err(|e| e.to_string())?;
        let h = compress(&g, CompressionConfig::new(Mode::Tight)).map_err(|e| e.to_string())?;
        let b = to_structure(&h, &vocab).map_err(|e| e.to_string())?;
        let check = check_snf(&b, &snf).map_err(|e| e.to_string())?;
        if !check.holds() {
            return Err(format!("case {case}: compressed model fails: {check}"));
        }
        let bound = size_bound(n, 1, Mode::Tight).map_err(|e| e.to_string())?;
        if b.size() as u128 > bound.total_bound {
            return Err(format!(
                "case {case}: size {} above bound {}",
                b.size(),
                bound.total_bound
            ));
        }
        largest = largest.max(b.size());
    }
    Ok(format!(
        "100 structures preserved, largest output {largest}"
    ))
}

fn criterion_4_bound_arithmetic() -> Outcome {
    let (mut combos, mut guarded) = (0, 0);
    for total in 0..=4usize {
        for n in 0..=total {
            let m = total - n;
            let vocab = vocab_of(n, m);
            let mut ones = BTreeSet::new();
            for s in all_structures(&vocab, 1) {
                ones.extend(realized_one_types(&s).map_err(|e| e.to_string())?);
            }
            let mut twos = BTreeSet::new();
            for s in all_structures(&vocab, 2) {
                twos.insert(fo2_core::typespace::two_type_of(&s, 0, 1).map_err(|e| e.to_string())?);
            }
            let (k, l) = (ones.len() as u128, twos.len() as u128);
            let paper = size_bound(n, m, Mode::PaperExact);
            if total < 3 {
                if paper != Err(BoundError::TooFewPredicates { n, m }) {
                    return Err(format!("n={n} m={m}: expected the n+m>=3 guard"));
                }
                if k != 1 << (n + m) || k * l != 1 << (3 * n + 5 * m) {
                    return Err(format!("n={n} m={m}: enumerated k={k} l={l}"));
                }
                let padded = padded_paper_bound(n, m).map_err(|e| e.to_string())?;
                if padded.n + padded.m != 3 || padded.m != m {
                    return Err(format!("n={n} m={m}: padded to n={}", padded.n));
                }
                guarded += 1;
                continue;
            }
            let b = paper.map_err(|e| e.to_string())?;
            let formula = 1u128 << (3 * n + 5 * m);
            if b.one_types != 1u128 << (n + m) || b.one_types != k {
                return Err(format!(
                    "n={n} m={m}: one-types {} vs enumerated {k}",
                    b.one_types
                ));
            }
            if b.per_type_multiplicity != formula || b.per_type_multiplicity != k * l {
                return Err(format!(
                    "n={n} m={m}: multiplicity {} vs 2^(3n+5m)={formula}, k*l={}",
                    b.per_type_multiplicity,
                    k * l
                ));
            }
            if b.total_bound != k * formula {
                return Err(format!("n={n} m={m}: total {}", b.total_bound));
            }
            combos += 1;
        }
    }
    Ok(format!(
        "{combos} vocabularies with n+m in 3..=4 match, {guarded} smaller ones match the type counts and are refused unpadded"
    ))
}

fn criterion_5_snf() -> Outcome {
    let limits = SearchLimits::default();
    let shape = SentenceShape {
        max_depth: 5,
        max_quantifiers: 3,
    };
    let mut sat = 0;
    for seed in 0..100u64 {
        let vocab = vocab_of((seed % 3) as usize, (seed / 3 % 2) as usize);
        let phi = random_sentence(&vocab, shape, seed);
        let snf = to_scott_normal_form(&phi, &vocab).map_err(|e| e.to_string())?;
        let plain = brute_force_sat(
            Problem::Formula {
                vocabulary: &vocab,
                formula: &phi,
            },
            3,
            limits,
        )
        .map_err(|e| format!("seed {seed} plain: {e}"))?;
        let normal = brute_force_sat(Problem::Snf(&snf), 3, limits)
            .map_err(|e| format!("seed {seed} snf: {e}"))?;
        if plain.is_some() != normal.is_some() {
            return Err(format!("seed {seed}: presence differs for {phi}"));
        }
        if let Some(model) = normal {
            let reduct = model.reduct(&vocab).map_err(|e| e.to_string())?;
            if !naive_eval(&phi, &reduct, [None, None]) {
                return Err(format!("seed {seed}: reduct fails {phi}"));
            }
            sat += 1;
        }
    }
    Ok(format!("100 sentences agree ({sat} satisfiable within 3)"))
}

/// A two-element structure whose pair `(0, 1)` realizes `t`.
fn pair_structure(vocab: &Vocabulary, t: TwoType) -> Structure {
    let mut s = Structure::new(vocab.clone(), 2);
    s.set_one_type(0, t.project_x()).unwrap();
    s.set_one_type(1, t.project_y()).unwrap();
    s.set_pair_relations(0, 1, t).unwrap();
    s
}

fn type_laws(vocab: &Vocabulary, t: TwoType, psi: &Formula) -> Result<(), String> {
    if t.invert().invert() != t {
        return Err(format!("invert not an involution at {t}"));
    }
    if t.invert().project_x() != t.project_y() || t.invert().project_y() != t.project_x() {
        return Err(format!("projection/invert mismatch at {t}"));
    }
    let s = pair_structure(vocab, t);
    let eval = TypeEvaluator::new(psi, vocab).map_err(|e| e.to_string())?;
    let by_type = eval.eval(t);
    let direct = naive_eval(psi, &s, [Some(0), Some(1)]);
    let compiled = evaluate(psi, &s, Assignment::xy(0, 1)).map_err(|e| e.to_string())?;
    if by_type != direct || compiled != direct {
        return Err(format!("{psi} at {t}: type {by_type}, direct {direct}"));
    }
    let diag = eval.eval_diagonal(t.project_x());
    if diag != naive_eval(psi, &s, [Some(0), Some(0)]) {
        return Err(format!("{psi} on the diagonal of {}", t.project_x()));
    }
    Ok(())
}

fn criterion_6_types() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let vocab = vocab_of(1, 1);
    let shape = TypeShape::of(&vocab).unwrap();
    let all: Vec<TwoType> = TwoType::all(shape).collect();
    if all.len() != 64 {
        return Err(format!("{} two-types for n=1, m=1", all.len()));
    }
    let formulas: Vec<Formula> = (0..40).map(|_| random_qf(&vocab, 4, &mut rng)).collect();
    for &t in &all {
        for psi in &formulas {
            type_laws(&vocab, t, psi)?;
        }
    }
    let realized: BTreeSet<TwoType> = all_structures(&vocab, 2)
        .iter()
        .flat_map(|s| realized_two_types(s).unwrap())
        .collect();
    if realized.len() != 64 {
        return Err("not every two-type is realized".into());
    }
    for _ in 0..1000 {
        let (n, m) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
        let vocab = vocab_of(n, m);
        let shape = TypeShape::of(&vocab).unwrap();
        let t = TwoType::from_bits(shape, rng.gen_range(0..shape.two_type_count())).unwrap();
        let psi = random_qf(&vocab, 5, &mut rng);
        type_laws(&vocab, t, &psi)?;
        let one = OneType::from_bits(shape, rng.gen_range(0..shape.one_type_count())).unwrap();
        if one.doubled().project_x() != one || one.doubled().invert() != one.doubled() {
            return Err(format!("doubled type of {one}"));
        }
    }
    Ok("64 two-types exhaustively, 1000 random instances".into())
}

/// First graph among a few seeds for which `pick` finds a mutation.
fn mutate<F>(pick: F) -> Result<(ColoredTournament, ColoredTournament), String>
where
    F: Fn(&ColoredTournament, &ColoredTournament) -> Option<ColoredTournament>,
{
    for seed in 0..50u64 {
        let g = random_graph(seed);
        let h = compress(&g, CompressionConfig::default()).map_err(|e| e.to_string())?;
        if let Some(bad) = pick(&g, &h) {
            return Ok((g, bad));
        }
    }
    Err("no graph admits the mutation".into())
}

fn expect_failure(
    p: Property,
    g: &ColoredTournament,
    bad: &ColoredTournament,
) -> Result<String, String> {
    let report = verify_properties(g, bad, Mode::Tight).map_err(|e| e.to_string())?;
    match report.outcome(p) {
        Some(w) => Ok(format!("{}: {w}", p.letter())),
        None => Err(format!("property {} survived its mutation", p.letter())),
    }
}

/// Two kings and one class whose members differ in their profile.
fn two_profile_graph() -> ColoredTournament {
    let mut g = ColoredTournament::new(6, 2);
    let k1 = g.add_vertex(Color(0));
    let k2 = g.add_vertex(Color(1));
    let u1 = g.add_vertex(Color(2));
    let u2 = g.add_vertex(Color(2));
    g.set_orientation(Color(0), Color(1));
    g.set_orientation(Color(0), Color(2));
    g.set_orientation(Color(1), Color(2));
    g.set_edge(k1, k2, EdgeColor(0)).unwrap();
    g.set_edge(k1, u1, EdgeColor(0)).unwrap();
    g.set_edge(k2, u1, EdgeColor(0)).unwrap();
    g.set_edge(k1, u2, EdgeColor(1)).unwrap();
    g.set_edge(k2, u2, EdgeColor(1)).unwrap();
    g.set_edge(u1, u2, EdgeColor(0)).unwrap();
    g
}

fn criterion_7_mutations() -> Outcome {
    let mut witnesses = Vec::new();

    let (g, bad) = mutate(|_, h| h.kings().first().map(|&k| h.without_vertex(k)))?;
    witnesses.push(expect_failure(Property::A, &g, &bad)?);

    let (g, bad) = mutate(|_, h| {
        let kings = h.kings();
        h.vertices()
            .find(|v| !kings.contains(v))
            .map(|v| h.without_vertex(v))
    })?;
    witnesses.push(expect_failure(Property::B, &g, &bad)?);

    let (g, bad) = mutate(|g, h| {
        let d = scan_d_sets(g);
        for e in h.edges() {
            let (a, b) = (h.color(e.from), h.color(e.to));
            let used = &d[&(a.min(b), a.max(b))];
            if let Some(c) = (0..g.num_edge_colors())
                .map(EdgeColor)
                .find(|c| !used.contains(c))
            {
                let mut bad = h.clone();
                bad.set_edge(e.from, e.to, c).unwrap();
                return Some(bad);
            }
        }
        None
    })?;
    witnesses.push(expect_failure(Property::C, &g, &bad)?);

    let g = two_profile_graph();
    let h = compress(&g, CompressionConfig::default()).map_err(|e| e.to_string())?;
    let kings = h.kings();
    let (k1, k2) = (kings[0], kings[1]);
    let u = h
        .vertices()
        .find(|&u| !kings.contains(&u) && h.edge(u, k2).unwrap().color == EdgeColor(0))
        .ok_or("no vertex with the first profile")?;
    let mut bad = h.clone();
    bad.set_edge(k2, u, EdgeColor(1)).unwrap();
    let only_d = verify_properties(&g, &bad, Mode::Tight).map_err(|e| e.to_string())?;
    if failing(&only_d) != vec!['d'] {
        return Err(format!("profile edit broke {:?} ({k1})", failing(&only_d)));
    }
    witnesses.push(expect_failure(Property::D, &g, &bad)?);

    let (g, bad) = mutate(|_, h| {
        let kings = h.kings();
        for u in h.vertices().filter(|u| !kings.contains(u)) {
            let c = h.color(u);
            let mut out: std::collections::BTreeMap<EdgeColor, Vec<usize>> = Default::default();
            for w in h.vertices().filter(|&w| w != u && h.color(w) == c) {
                let e = h.edge(u, w).unwrap();
                if e.from == u {
                    out.entry(e.color).or_default().push(w);
                }
            }
            if let Some((&d, ws)) = out.iter().find(|(_, ws)| ws.len() == 1) {
                let mut bad = h.clone();
                bad.set_edge(ws[0], u, d).unwrap();
                return Some(bad);
            }
        }
        None
    })?;
    witnesses.push(expect_failure(Property::E, &g, &bad)?);

    let g = random_graph(1);
    let mut flipped = compress(&g, CompressionConfig::default()).map_err(|e| e.to_string())?;
    let e = flipped
        .edges()
        .find(|e| flipped.color(e.from) != flipped.color(e.to))
        .ok_or("no cross edge")?;
    flipped.set_edge(e.to, e.from, e.color).unwrap();
    if verify_properties(&g, &flipped, Mode::Tight).is_ok() {
        return Err("orientation flip was not rejected".into());
    }

    Ok(witnesses.join("; ") + "; orientation flip rejected")
}

fn criterion_8_determinism() -> Outcome {
    for seed in 0..20u64 {
        let g = random_graph(seed);
        for cfg in [
            CompressionConfig::new(Mode::Tight),
            CompressionConfig::new(Mode::PaperExact),
            CompressionConfig {
                mode: Mode::Tight,
                seed: Some(seed),
            },
        ] {
            let a = compress(&g, cfg).map_err(|e| e.to_string())?.to_string();
            let b = compress(&g, cfg).map_err(|e| e.to_string())?.to_string();
            if a != b {
                return Err(format!("compress differs for seed {seed} {cfg:?}"));
            }
        }
    }
    let shape = SentenceShape::default();
    for seed in 0..20u64 {
        let vocab = vocab_of(1, 1);
        let phi = random_sentence(&vocab, shape, seed);
        let run = || {
            decide_sat(&phi, &vocab, Some(3), SearchLimits::default()).map(|d| {
                let witness = match &d.outcome {
                    fo2_core::satengine::Outcome::Sat { witness, .. } => witness.to_string(),
                    _ => String::new(),
                };
                format!("{d}{witness}")
            })
        };
        let (a, b) = (run(), run());
        if a != b {
            return Err(format!("decide_sat differs for seed {seed}"));
        }
    }
    Ok("compress and decide_sat repeat byte for byte".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 construction properties (a)-(e)",
            criterion_1_construction,
        ),
        ("2 class size formula", criterion_2_size_formula),
        ("3 small model, logic level", criterion_3_small_model),
        ("4 bound arithmetic", criterion_4_bound_arithmetic),
        ("5 normal form equisatisfiability", criterion_5_snf),
        ("6 type machinery", criterion_6_types),
        ("7 mutation sensitivity", criterion_7_mutations),
        ("8 determinism", criterion_8_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
