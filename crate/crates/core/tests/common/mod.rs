//! Seeded generators and reference implementations shared by the test targets.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use cuntz_core::endo::{all_indices, permutation_unitary};
use cuntz_core::intertwiner::{ad_shift, span_basis};
use cuntz_core::{Context, Element, Laurent, MultiIndex, Word};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ctx(n: u32) -> Context {
    Context::new(n).unwrap()
}

pub fn random_index(rng: &mut TestRng, n: u8, max_len: usize) -> MultiIndex {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
    MultiIndex::new(&letters, n).unwrap()
}

pub fn random_laurent(rng: &mut TestRng) -> Laurent {
    let mut c = Laurent::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let num = rng.gen_range(-3i64..=3);
        let den = rng.gen_range(1i64..=3);
        c.add_monomial(
            rng.gen_range(-2..=2),
            &BigRational::new(num.into(), den.into()),
        );
    }
    if c.is_zero() {
        Laurent::one()
    } else {
        c
    }
}

/// A random combination of up to `terms` words of length at most `max_len`.
pub fn random_element(rng: &mut TestRng, ctx: Context, terms: usize, max_len: usize) -> Element {
    let k = rng.gen_range(0..=terms);
    let list: Vec<(Word, Laurent)> = (0..k)
        .map(|_| {
            let a = random_index(rng, ctx.n(), max_len);
            let b = random_index(rng, ctx.n(), max_len);
            (Word::new(a, b), random_laurent(rng))
        })
        .collect();
    Element::from_terms(ctx, list)
}

/// A random finite partition of unity into `size` cylinders (`size = 1 + j (n - 1)`).
pub fn random_partition(rng: &mut TestRng, n: u8, splits: usize) -> Vec<MultiIndex> {
    let mut leaves = vec![MultiIndex::empty()];
    for _ in 0..splits {
        let i = rng.gen_range(0..leaves.len());
        let leaf = leaves.swap_remove(i);
        for j in 1..=n {
            leaves.push(leaf.concat(&[j]));
        }
    }
    leaves.sort();
    leaves
}

/// A random sum-of-words unitary pairing two random partitions of equal size.
pub fn random_words_unitary(rng: &mut TestRng, ctx: Context, splits: usize) -> Element {
    let a = random_partition(rng, ctx.n(), splits);
    let mut b = random_partition(rng, ctx.n(), splits);
    b.shuffle(rng);
    let words: Vec<Word> = a.into_iter().zip(b).map(|(x, y)| Word::new(x, y)).collect();
    Element::sum_of_words(ctx, words.iter())
}

pub fn random_permutation_unitary(rng: &mut TestRng, ctx: Context, k: usize) -> Element {
    let m = (ctx.n() as usize).pow(k as u32);
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    permutation_unitary(ctx, k, &perm).unwrap()
}

/// Sum-of-words unitary whose pairs all have degree in `{-1, 0, 1}`.
///
/// Half of the samples are a random generator times a random permutation
/// unitary; the other half are `p v q` with `v` one of the built-in
/// constants and `p`, `q` permutation unitaries, which reach deeper levels.
/// Samples violating the degree restriction are redrawn.
pub fn random_degree_restricted(rng: &mut TestRng, ctx: Context) -> Element {
    loop {
        let w = if ctx.n() == 2 && rng.gen_bool(0.5) {
            let base = match rng.gen_range(0..3) {
                0 => cuntz_core::constants::w_cp(),
                1 => cuntz_core::constants::v_cp(),
                _ => cuntz_core::constants::u_cp(),
            };
            let (kp, kq) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            let p = random_permutation_unitary(rng, ctx, kp);
            let q = random_permutation_unitary(rng, ctx, kq);
            &(&p * &base) * &q
        } else {
            let splits = rng.gen_range(1..=4);
            let g = random_words_unitary(rng, ctx, splits);
            let k = rng.gen_range(1..=2);
            match rng.gen_range(0..3) {
                0 => g,
                1 => &g * &random_permutation_unitary(rng, ctx, k),
                _ => &random_permutation_unitary(rng, ctx, k) * &g,
            }
        };
        if w.terms().all(|(t, _)| t.degree().abs() <= 1) {
            return w;
        }
    }
}

/// A random unitary of `S_n`: product of a few generators and permutations.
pub fn random_s_unitary(rng: &mut TestRng, ctx: Context) -> Element {
    let splits = rng.gen_range(0..=3);
    let mut w = random_words_unitary(rng, ctx, splits);
    for _ in 0..rng.gen_range(0..=2) {
        let f = if rng.gen_bool(0.5) {
            let splits = rng.gen_range(1..=3);
            random_words_unitary(rng, ctx, splits)
        } else {
            let k = rng.gen_range(1..=2);
            random_permutation_unitary(rng, ctx, k)
        };
        w = &w * &f;
    }
    w
}

/// A random labelled digraph on at most `max_vertices` vertices.
pub fn random_digraph(rng: &mut TestRng, max_vertices: usize) -> (Vec<i32>, Vec<(usize, usize)>) {
    let v = rng.gen_range(1..=max_vertices);
    let labels: Vec<i32> = (0..v).map(|_| rng.gen_range(-1..=1)).collect();
    let p = rng.gen_range(0.1..0.5);
    let mut edges = Vec::new();
    for a in 0..v {
        for b in 0..v {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    (labels, edges)
}

/// Path condition by brute force: the sets of endpoints of walks of each
/// length `1..=max_len` from each vertex must be label-constant. Returns the
/// shortest failing length.
pub fn naive_path_condition(
    labels: &[i32],
    edges: &[(usize, usize)],
    max_len: usize,
) -> Option<usize> {
    let v = labels.len();
    let mut first_failure: Option<usize> = None;
    for start in 0..v {
        let mut frontier: BTreeSet<usize> = BTreeSet::from([start]);
        for len in 1..=max_len {
            frontier = edges
                .iter()
                .filter(|(a, _)| frontier.contains(a))
                .map(|&(_, b)| b)
                .collect();
            let ls: BTreeSet<i32> = frontier.iter().map(|&x| labels[x]).collect();
            if ls.len() > 1 {
                first_failure = Some(first_failure.map_or(len, |f| f.min(len)));
                break;
            }
        }
    }
    first_failure
}

/// All matrix units `S_a S_b^*` with `|a| = |b| = k`.
pub fn matrix_units(ctx: Context, k: usize) -> Vec<Element> {
    let idx = all_indices(ctx, k);
    let mut out = Vec::new();
    for a in &idx {
        for b in &idx {
            out.push(Element::from_word(ctx, Word::new(a.clone(), b.clone())));
        }
    }
    out
}

/// Dense Gauss-Jordan elimination over the rationals, returning the rank.
pub fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let prow = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of `x -> u phi(x) u^* - x` on `Span_L`, from a dense matrix whose rows
/// are indexed by words expanded to one common length.
pub fn dense_kernel_dimension(u: &Element, level: usize) -> usize {
    let ctx = u.context();
    let cols = span_basis(ctx, level);
    let images: Vec<Element> = cols
        .iter()
        .map(|w| {
            let b = Element::from_word(ctx, w.clone());
            &ad_shift(u, &b) - &b
        })
        .collect();
    let depth = images.iter().map(Element::max_length).max().unwrap_or(0) + 1;
    let mut rows: HashMap<(i32, Word), Vec<BigRational>> = HashMap::new();
    for (j, img) in images.iter().enumerate() {
        for (w, c) in img.expanded(|_| depth).unwrap() {
            for (p, q) in c.iter() {
                let row = rows
                    .entry((p, w.clone()))
                    .or_insert_with(|| vec![BigRational::zero(); cols.len()]);
                row[j] += q;
            }
        }
    }
    let rank = dense_rank(rows.into_values().collect());
    cols.len() - rank
}
