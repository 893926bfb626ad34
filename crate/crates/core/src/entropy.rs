//! Finite-stage sofic entropy values and small-entropy generating partitions.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hom::{count_homs, CountMethod, CountValue};
use crate::model::MeasureModel;
use crate::partition::IndexedPartition;
use crate::rational::{format_rational, Rational};
use crate::stats::shannon_entropy;
use crate::tower::{final_third, Tower};
use crate::words::{FiniteAction, GroupWord};

/// `ln(count) / n`, `-inf` for an empty hom set.
pub fn entropy_value(count: &CountValue, n: usize) -> f64 {
    if count.is_zero() {
        f64::NEG_INFINITY
    } else {
        count.ln() / n as f64
    }
}

/// Writes `-inf` as a string so JSON output stays valid.
pub fn serialize_entropy<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&format_entropy(*v))
    }
}

pub fn format_entropy(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.12}")
    }
}

pub fn entropy_point(
    a: &MeasureModel,
    xi: &IndexedPartition,
    alpha: &IndexedPartition,
    words: &[GroupWord],
    delta: &Rational,
    b: &FiniteAction,
    method: &CountMethod,
) -> Result<f64> {
    let rep = count_homs(a, xi, alpha, words, delta, b, method)?;
    Ok(entropy_value(&rep.restricted_count, b.size()))
}

#[derive(Clone, Debug, Serialize)]
pub struct GridCell {
    pub alpha: usize,
    pub words: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub delta: Rational,
    /// Position in the approximation sequence.
    pub level: usize,
    pub n: usize,
    pub count: CountValue,
    pub algorithm: &'static str,
    #[serde(serialize_with = "serialize_entropy")]
    pub value: f64,
}

/// Minimum over the δ, word and α ladders for one approximation level.
#[derive(Clone, Debug, Serialize)]
pub struct LevelAggregate {
    pub level: usize,
    pub n: usize,
    #[serde(serialize_with = "serialize_entropy")]
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyReport {
    pub xi: String,
    pub alphas: Vec<String>,
    pub word_sets: Vec<Vec<String>>,
    pub deltas: Vec<String>,
    pub sizes: Vec<usize>,
    pub cells: Vec<GridCell>,
    pub aggregates: Vec<LevelAggregate>,
    /// Max and min of the aggregates over the final third of the levels.
    #[serde(serialize_with = "serialize_entropy")]
    pub window_limsup: f64,
    #[serde(serialize_with = "serialize_entropy")]
    pub window_liminf: f64,
    pub label: &'static str,
}

impl EntropyReport {
    pub fn cell(&self, alpha: usize, words: usize, delta: usize, level: usize) -> &GridCell {
        let (nw, nd, nl) = (self.word_sets.len(), self.deltas.len(), self.sizes.len());
        &self.cells[((alpha * nw + words) * nd + delta) * nl + level]
    }
}

pub const TRUNCATION_LABEL: &str = "truncated: minima over finite ladders are upper bounds on the infima";

fn describe_partition(p: &IndexedPartition) -> String {
    match p.blocks() {
        Some(blocks) => format!("{blocks:?}"),
        None => {
            let c = p.as_cylinder().expect("cylinder");
            let coords: Vec<String> = c.coords().iter().map(ToString::to_string).collect();
            format!("cylinder[{}] over {} symbols, {} blocks", coords.join(","), c.alphabet(), p.block_count())
        }
    }
}

/// Entropy values over the full product of ladders. Cells are ordered
/// α-major, then words, then δ, then approximation level.
pub fn entropy_grid(
    a: &MeasureModel,
    xi: &IndexedPartition,
    alphas: &[IndexedPartition],
    word_sets: &[Vec<GroupWord>],
    deltas: &[Rational],
    sigma: &[FiniteAction],
    method: &CountMethod,
) -> Result<EntropyReport> {
    if alphas.is_empty() || word_sets.is_empty() || deltas.is_empty() || sigma.is_empty() {
        return Err(Error::input("entropy ladders must be nonempty"));
    }
    for alpha in alphas {
        if !alpha.refines(xi)? {
            return Err(Error::input("every α in the ladder must refine ξ"));
        }
    }
    let mut jobs = Vec::new();
    for ai in 0..alphas.len() {
        for wi in 0..word_sets.len() {
            for di in 0..deltas.len() {
                for li in 0..sigma.len() {
                    jobs.push((ai, wi, di, li));
                }
            }
        }
    }
    let cells = jobs
        .into_par_iter()
        .map(|(ai, wi, di, li)| {
            let b = &sigma[li];
            let rep = count_homs(a, xi, &alphas[ai], &word_sets[wi], &deltas[di], b, method)?;
            Ok(GridCell {
                alpha: ai,
                words: wi,
                delta: deltas[di],
                level: li,
                n: b.size(),
                value: entropy_value(&rep.restricted_count, b.size()),
                count: rep.restricted_count,
                algorithm: rep.algorithm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let aggregates: Vec<LevelAggregate> = sigma
        .iter()
        .enumerate()
        .map(|(li, b)| LevelAggregate {
            level: li,
            n: b.size(),
            value: cells
                .iter()
                .filter(|c| c.level == li)
                .map(|c| c.value)
                .fold(f64::INFINITY, f64::min),
        })
        .collect();
    let tail = final_third(&aggregates);
    Ok(EntropyReport {
        xi: describe_partition(xi),
        alphas: alphas.iter().map(describe_partition).collect(),
        word_sets: word_sets
            .iter()
            .map(|ws| ws.iter().map(ToString::to_string).collect())
            .collect(),
        deltas: deltas.iter().map(format_rational).collect(),
        sizes: sigma.iter().map(FiniteAction::size).collect(),
        window_limsup: tail.iter().map(|g| g.value).fold(f64::NEG_INFINITY, f64::max),
        window_liminf: tail.iter().map(|g| g.value).fold(f64::INFINITY, f64::min),
        cells,
        aggregates,
        label: TRUNCATION_LABEL,
    })
}

/// `2^{-(N-1)} + Σ_{n≥N} n·2^{-(n-1)}`, summed in closed form.
pub fn genprof_bound(n: u32) -> f64 {
    let n = n as f64;
    2f64.powf(-(n - 1.0)) + (n + 1.0) * 2f64.powf(-(n - 2.0))
}

/// Smallest `N ≥ 1` with `genprof_bound(N) < ε`.
pub fn genprof_level(eps: f64) -> Result<u32> {
    if !(eps > 0.0) {
        return Err(Error::input("ε must be positive"));
    }
    (1..1100)
        .find(|&n| genprof_bound(n) < eps)
        .ok_or_else(|| Error::input("ε is too small for the level bound"))
}

#[derive(Clone, Debug, Serialize)]
pub struct GenprofResult {
    /// First construction level.
    pub start_level: u32,
    pub bound: f64,
    pub depth: usize,
    /// Block 0 is the complement; block `j ≥ 1` is the fiber chosen at level `N + j − 1`.
    pub partition: IndexedPartition,
    /// Chosen level-`n` point for each construction level.
    pub chosen: Vec<(usize, usize)>,
    pub entropy: f64,
}

/// Partition of the `depth`-level carrier built from one fiber of each level
/// `N..depth` (1-based levels), chosen greedily with the smallest index that
/// keeps the fibers disjoint.
pub fn genprof_partition(t: &Tower, eps: f64, depth: usize) -> Result<GenprofResult> {
    let start = genprof_level(eps)?;
    if depth > t.depth() || depth == 0 {
        return Err(Error::input(format!("tower has {} levels, asked for depth {depth}", t.depth())));
    }
    let sizes: Vec<usize> = t.levels().iter().map(FiniteAction::size).collect();
    if sizes[0] < 2 || sizes.windows(2).any(|w| w[1] < 2 * w[0]) {
        return Err(Error::input("tower index gaps must be at least 2"));
    }
    if start as usize >= depth {
        return Err(Error::Infeasible(format!(
            "ε = {eps} needs construction levels from N = {start}, depth must exceed {start}"
        )));
    }
    let top = t.level(depth)?;
    let mut taken = vec![false; top.size()];
    let mut assign = vec![0usize; top.size()];
    let mut chosen = Vec::new();
    for (j, level) in (start as usize..depth).enumerate() {
        let proj = t.projection(depth, level)?;
        let mut hit = vec![false; sizes[level - 1]];
        for (x, &y) in proj.iter().enumerate() {
            if taken[x] {
                hit[y] = true;
            }
        }
        let y = hit
            .iter()
            .position(|h| !h)
            .ok_or_else(|| Error::Infeasible(format!("no free fiber left at level {level}")))?;
        for (x, &py) in proj.iter().enumerate() {
            if py == y {
                taken[x] = true;
                assign[x] = j + 1;
            }
        }
        chosen.push((level, y));
    }
    let partition = IndexedPartition::from_assignment(chosen.len() + 1, assign)?;
    let entropy = shannon_entropy(&top.clone().into(), &partition)?;
    Ok(GenprofResult {
        start_level: start,
        bound: genprof_bound(start),
        depth,
        partition,
        chosen,
        entropy,
    })
}
