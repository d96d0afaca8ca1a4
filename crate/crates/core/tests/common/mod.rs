#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fo2_core::formula::{Formula, Var, Vocabulary};
use fo2_core::tournament::{Color, ColoredTournament, EdgeColor};
use fo2_core::typespace::Structure;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(k, ℓ, class sizes)` for a random graph: k in 6..=9, ℓ in 1..=4, sizes
/// in 1..=12, with class 0 a king and class 1 not.
pub fn graph_params(seed: u64) -> (u64, u64, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let k = rng.gen_range(6..=9u64);
    let l = rng.gen_range(1..=4u64);
    let sizes = (0..k)
        .map(|c| match c {
            0 => 1,
            1 => rng.gen_range(2..=12),
            _ if rng.gen_bool(0.4) => 1,
            _ => rng.gen_range(2..=12),
        })
        .collect();
    (k, l, sizes)
}

/// Edge colors between two color classes, collected pair by pair.
pub fn scan_d_sets(g: &ColoredTournament) -> BTreeMap<(Color, Color), BTreeSet<EdgeColor>> {
    let mut out: BTreeMap<(Color, Color), BTreeSet<EdgeColor>> = BTreeMap::new();
    let n = g.vertex_count();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if let Some(e) = g.edge(u, v) {
                if e.from == u {
                    let (a, b) = (g.color(u), g.color(v));
                    out.entry((a.min(b), a.max(b))).or_default().insert(e.color);
                }
            }
        }
    }
    out
}

/// Random quantifier-free formula over `x` and `y`.
pub fn random_qf(vocab: &Vocabulary, depth: usize, rng: &mut ChaCha8Rng) -> Formula {
    let (n, m) = (vocab.n(), vocab.m());
    if depth <= 1 || rng.gen_bool(0.25) {
        if n + m == 0 {
            return if rng.gen() {
                Formula::True
            } else {
                Formula::False
            };
        }
        let var = |rng: &mut ChaCha8Rng| if rng.gen() { Var::X } else { Var::Y };
        let i = rng.gen_range(0..n + m);
        return if i < n {
            Formula::unary(vocab.unary()[i].clone(), var(rng))
        } else {
            let (a, b) = (var(rng), var(rng));
            Formula::binary(vocab.binary()[i - n].clone(), a, b)
        };
    }
    let a = random_qf(vocab, depth - 1, rng);
    match rng.gen_range(0..5) {
        0 => Formula::not(a),
        1 => Formula::and(a, random_qf(vocab, depth - 1, rng)),
        2 => Formula::or(a, random_qf(vocab, depth - 1, rng)),
        3 => Formula::implies(a, random_qf(vocab, depth - 1, rng)),
        _ => Formula::iff(a, random_qf(vocab, depth - 1, rng)),
    }
}

/// Textbook recursive evaluation; `env[0]` is `x`, `env[1]` is `y`.
pub fn naive_eval(phi: &Formula, s: &Structure, env: [Option<usize>; 2]) -> bool {
    let slot = |v: Var| match v {
        Var::X => 0,
        Var::Y => 1,
    };
    let val = |v: Var| env[slot(v)].expect("variable bound");
    let vocab = s.vocabulary();
    match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Unary(p, v) => s.holds_unary(vocab.unary_index(p).unwrap(), val(*v)),
        Formula::Binary(r, a, b) => {
            s.holds_binary(vocab.binary_index(r).unwrap(), val(*a), val(*b))
        }
        Formula::Not(f) => !naive_eval(f, s, env),
        Formula::And(a, b) => naive_eval(a, s, env) && naive_eval(b, s, env),
        Formula::Or(a, b) => naive_eval(a, s, env) || naive_eval(b, s, env),
        Formula::Implies(a, b) => !naive_eval(a, s, env) || naive_eval(b, s, env),
        Formula::Iff(a, b) => naive_eval(a, s, env) == naive_eval(b, s, env),
        Formula::Forall(v, body) => (0..s.size()).all(|d| {
            let mut e = env;
            e[slot(*v)] = Some(d);
            naive_eval(body, s, e)
        }),
        Formula::Exists(v, body) => (0..s.size()).any(|d| {
            let mut e = env;
            e[slot(*v)] = Some(d);
            naive_eval(body, s, e)
        }),
    }
}

/// Every structure with `size` elements over `vocab`, in no particular
/// order. Only for tiny inputs.
pub fn all_structures(vocab: &Vocabulary, size: usize) -> Vec<Structure> {
    let facts = vocab.n() * size + vocab.m() * size * size;
    assert!(facts <= 20, "too many structures to list");
    (0..1u64 << facts)
        .map(|code| {
            let mut s = Structure::new(vocab.clone(), size);
            let mut bit = 0;
            let mut next = || {
                let v = code >> bit & 1 == 1;
                bit += 1;
                v
            };
            for p in 0..vocab.n() {
                for a in 0..size {
                    s.set_unary(p, a, next()).unwrap();
                }
            }
            for r in 0..vocab.m() {
                for a in 0..size {
                    for b in 0..size {
                        s.set_binary(r, a, b, next()).unwrap();
                    }
                }
            }
            s
        })
        .collect()
}

pub fn vocab_of(n: usize, m: usize) -> Vocabulary {
    let unary: Vec<String> = (0..n).map(|i| format!("P{i}")).collect();
    let binary: Vec<String> = (0..m).map(|j| format!("r{j}")).collect();
    Vocabulary::new(unary, binary).unwrap()
}
