//! Intertwiner spaces across permutation unitaries of a fixed level.

use std::collections::BTreeMap;
use std::io::Write;

use cuntz_core::endo::permutation_unitary;
use cuntz_core::intertwiner::intertwiner_space;
use cuntz_core::{Context, Element, Target};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::commands::{CliError, CliResult};
use crate::{Cli, Exit};

/// Exhaustive enumeration up to `8!` candidates.
const MAX_EXHAUSTIVE_INDICES: usize = 8;
const DEFAULT_SAMPLES: usize = 1000;
const MAX_LISTED: usize = 10;

#[derive(Serialize)]
struct Finding {
    permutation: Vec<usize>,
    dimension: usize,
    /// A basis element outside `F_n`, if any.
    non_f: Option<String>,
}

fn examine(ctx: Context, k: usize, level: usize, perm: Vec<usize>) -> Result<Finding, CliError> {
    let u: Element = permutation_unitary(ctx, k, &perm)?;
    let r = intertwiner_space(&u, level)?;
    let non_f = r
        .basis
        .iter()
        .find(|b| !b.is_in(Target::F))
        .map(ToString::to_string);
    Ok(Finding {
        permutation: perm,
        dimension: r.dimension,
        non_f,
    })
}

pub fn run(
    cli: &Cli,
    out: &mut impl Write,
    k: usize,
    samples: Option<usize>,
    seed: u64,
    level: usize,
) -> CliResult {
    let ctx = Context::new(cli.n)?;
    let m = (ctx.n() as usize)
        .checked_pow(k as u32)
        .filter(|&m| m <= 1 << 12)
        .ok_or_else(|| CliError::Usage(format!("k = {k} is too large")))?;
    let exhaustive = samples.is_none() && m <= MAX_EXHAUSTIVE_INDICES;
    let candidates: Vec<Vec<usize>> = if exhaustive {
        (0..m).permutations(m).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples.unwrap_or(DEFAULT_SAMPLES))
            .map(|_| {
                let mut p: Vec<usize> = (0..m).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect()
    };
    let total = candidates.len();
    let findings: Vec<Finding> = candidates
        .into_par_iter()
        .map(|p| examine(ctx, k, level, p))
        .collect::<Result<_, _>>()?;

    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for f in &findings {
        *histogram.entry(f.dimension).or_default() += 1;
    }
    let flagged: Vec<&Finding> = findings.iter().filter(|f| f.non_f.is_some()).collect();
    let mode = if exhaustive { "exhaustive" } else { "sampled" };
    if cli.json {
        let v = json!({
            "k": k,
            "level": level,
            "mode": mode,
            "seed": (!exhaustive).then_some(seed),
            "candidates": total,
            "histogram": histogram,
            "flagged": flagged.len(),
            "examples": flagged.iter().take(MAX_LISTED).collect::<Vec<_>>(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        writeln!(
            out,
            "candidates: {total} ({mode}, k = {k}, level = {level})"
        )?;
        writeln!(out, "dimension histogram:")?;
        for (d, c) in &histogram {
            writeln!(out, "  {d}: {c}")?;
        }
        writeln!(out, "with basis elements outside F: {}", flagged.len())?;
        for f in flagged.iter().take(MAX_LISTED) {
            writeln!(
                out,
                "  {:?} dimension {}: {}",
                f.permutation,
                f.dimension,
                f.non_f.as_deref().unwrap_or_default()
            )?;
        }
    }
    Ok(Exit::Yes)
}
