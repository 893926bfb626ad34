//! Towers of finite quotient actions, sofic approximations and convergence
//! reports.
//!
//! Tower levels are numbered from 1. Level `l + 1` maps onto level `l` by an
//! equivariant surjection with uniform fibers, so partitions of a level pull
//! back to every deeper level with the same statistics.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{d_sup_hinted, d_inf_seeded, DistanceReport, SearchStrategy};
use crate::error::{Error, Result};
use crate::model::MeasureModel;
use crate::partition::IndexedPartition;
use crate::rational::{serde_rational, to_f64, Rational};
use crate::words::{FiniteAction, GroupWord, Permutation};

/// Largest carrier a catalog builder will create.
pub const MAX_CARRIER: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    levels: Vec<FiniteAction>,
    /// `maps[l]` sends level `l + 2` points to level `l + 1` points.
    maps: Vec<Vec<usize>>,
}

impl Tower {
    /// Validates sizes, equivariance and uniform fibers.
    pub fn new(levels: Vec<FiniteAction>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::input("a tower needs at least one level"));
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::input(format!(
                "{} levels need {} factor maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        let gens = levels[0].generator_count();
        for (l, pair) in levels.windows(2).enumerate() {
            let (lo, hi) = (&pair[0], &pair[1]);
            let map = &maps[l];
            if hi.generator_count() != gens || lo.generator_count() != gens {
                return Err(Error::input("tower levels disagree on the generator count"));
            }
            if hi.size() <= lo.size() {
                return Err(Error::input(format!("level sizes must increase (level {})", l + 2)));
            }
            if map.len() != hi.size() || map.iter().any(|&y| y >= lo.size()) {
                return Err(Error::input(format!("factor map onto level {} is malformed", l + 1)));
            }
            if hi.size() % lo.size() != 0 {
                return Err(Error::input(format!("level {} fibers cannot be uniform", l + 1)));
            }
            let fiber = hi.size() / lo.size();
            let mut counts = vec![0usize; lo.size()];
            for &y in map {
                counts[y] += 1;
            }
            if counts.iter().any(|&c| c != fiber) {
                return Err(Error::input(format!(
                    "factor map onto level {} does not have uniform fibers",
                    l + 1
                )));
            }
            for g in 0..gens {
                let (gh, gl) = (hi.generator(g), lo.generator(g));
                if (0..hi.size()).any(|x| map[gh.apply(x)] != gl.apply(map[x])) {
                    return Err(Error::input(format!(
                        "factor map onto level {} is not equivariant for generator {g}",
                        l + 1
                    )));
                }
            }
        }
        Ok(Tower { levels, maps })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn generator_count(&self) -> usize {
        self.levels[0].generator_count()
    }

    pub fn level(&self, l: usize) -> Result<&FiniteAction> {
        if l == 0 || l > self.levels.len() {
            return Err(Error::input(format!("tower has levels 1..={}, asked for {l}", self.levels.len())));
        }
        Ok(&self.levels[l - 1])
    }

    pub fn levels(&self) -> &[FiniteAction] {
        &self.levels
    }

    /// Map from level `l + 1` onto level `l`.
    pub fn map_onto(&self, l: usize) -> Result<&[usize]> {
        if l == 0 || l >= self.levels.len() {
            return Err(Error::input(format!("no factor map onto level {l}")));
        }
        Ok(&self.maps[l - 1])
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// Image of a `from`-level point in level `to <= from`.
    pub fn project(&self, from: usize, to: usize, x: usize) -> Result<usize> {
        self.level(from)?;
        self.level(to)?;
        if to > from {
            return Err(Error::input("projection goes from deeper to shallower levels"));
        }
        Ok((to..from).rev().fold(x, |y, l| self.maps[l - 1][y]))
    }

    /// The whole projection array from level `from` to level `to`.
    pub fn projection(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        let n = self.level(from)?.size();
        (0..n).map(|x| self.project(from, to, x)).collect()
    }
}

/// Base-`base` odometer: level `l` is `x ↦ x+1` on `base^l` points and the
/// factor maps reduce modulo `base^l`.
pub fn odometer_tower(base: usize, depth: usize) -> Result<Tower> {
    if base < 2 || depth < 1 {
        return Err(Error::input("odometer needs base >= 2 and depth >= 1"));
    }
    base.checked_pow(depth as u32)
        .filter(|&n| n <= MAX_CARRIER)
        .ok_or_else(|| Error::input(format!("odometer {base}^{depth} exceeds {MAX_CARRIER} points")))?;
    let levels = (1..=depth).map(|l| FiniteAction::cyclic(base.pow(l as u32))).collect();
    let maps = (2..=depth)
        .map(|l| {
            let m = base.pow(l as u32 - 1);
            (0..base.pow(l as u32)).map(|x| x % m).collect()
        })
        .collect();
    Tower::new(levels, maps)
}

/// Pulls a `from_level` partition back along the factor maps to `to_level`.
pub fn pullback_partition(
    t: &Tower,
    from_level: usize,
    to_level: usize,
    p: &IndexedPartition,
) -> Result<IndexedPartition> {
    let src = t.level(from_level)?;
    if to_level < from_level {
        return Err(Error::input("pullback goes to a deeper level"));
    }
    let assign = p
        .assignment()
        .filter(|a| a.len() == src.size())
        .ok_or_else(|| Error::input("partition does not live on the source level"))?;
    let proj = t.projection(to_level, from_level)?;
    IndexedPartition::from_assignment(p.block_count(), proj.into_iter().map(|y| assign[y]).collect())
}

/// Action on the product carrier; point `(x, y)` has index `x·n_b + y`.
pub fn diagonal_product(a: &FiniteAction, b: &FiniteAction) -> Result<FiniteAction> {
    if a.generator_count() != b.generator_count() {
        return Err(Error::input("diagonal product needs equal generator counts"));
    }
    let nb = b.size();
    let gens = a
        .generators()
        .iter()
        .zip(b.generators())
        .map(|(ga, gb)| {
            Permutation::new(
                (0..a.size() * nb)
                    .map(|z| ga.apply(z / nb) * nb + gb.apply(z % nb))
                    .collect(),
            )
        })
        .collect::<Result<_>>()?;
    FiniteAction::new(a.size() * nb, gens)
}

#[derive(Clone, Debug)]
pub struct SoficApproximation {
    pub actions: Vec<FiniteAction>,
    /// Words that should act trivially in the limit.
    pub kernel_words: Vec<GroupWord>,
    /// Words that should act freely in the limit.
    pub probe_words: Vec<GroupWord>,
}

impl SoficApproximation {
    pub fn new(
        actions: Vec<FiniteAction>,
        kernel_words: Vec<GroupWord>,
        probe_words: Vec<GroupWord>,
    ) -> Result<Self> {
        if let Some(first) = actions.first() {
            let r = first.generator_count();
            if actions.iter().any(|a| a.generator_count() != r) {
                return Err(Error::input("sofic approximation actions disagree on generator count"));
            }
        }
        Ok(SoficApproximation { actions, kernel_words, probe_words })
    }

    /// The levels of a tower, in order.
    pub fn from_tower(t: &Tower, kernel_words: Vec<GroupWord>, probe_words: Vec<GroupWord>) -> Result<Self> {
        SoficApproximation::new(t.levels().to_vec(), kernel_words, probe_words)
    }
}

/// Independent uniform permutations per generator and level. Probes default
/// to every nonempty reduced word of length at most 3.
pub fn random_sofic(generators: usize, sizes: &[usize], seed: u64) -> Result<SoficApproximation> {
    if sizes.is_empty() {
        return Err(Error::input("random sofic approximation needs at least one size"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let actions = sizes
        .iter()
        .map(|&n| {
            let gens = (0..generators)
                .map(|_| {
                    let mut img: Vec<usize> = (0..n).collect();
                    img.shuffle(&mut rng);
                    Permutation::new(img)
                })
                .collect::<Result<_>>()?;
            FiniteAction::new(n, gens)
        })
        .collect::<Result<_>>()?;
    SoficApproximation::new(actions, Vec::new(), GroupWord::all_reduced(generators, 3))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordTrajectory {
    pub word: String,
    #[serde(serialize_with = "ser_ratios")]
    pub fix_ratios: Vec<Rational>,
    /// Minimum (kernel) or maximum (probe) over the final third.
    pub tail_statistic: f64,
    pub pass: bool,
}

fn ser_ratios<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&crate::rational::format_rational(r))?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SoficValidation {
    pub lo: f64,
    pub hi: f64,
    pub sizes: Vec<usize>,
    pub kernel: Vec<WordTrajectory>,
    pub probes: Vec<WordTrajectory>,
    pub pass: bool,
}

/// Final-third window of a sequence (at least one element).
pub fn final_third<T>(v: &[T]) -> &[T] {
    let len = v.len().div_ceil(3).max(1).min(v.len());
    &v[v.len() - len..]
}

/// Kernel words pass when the final-third minimum fix ratio is at least
/// `hi`; probe words pass when the final-third maximum is at most `lo`.
pub fn validate_sofic(sigma: &SoficApproximation, lo: f64, hi: f64) -> Result<SoficValidation> {
    let trajectory = |w: &GroupWord| -> Result<Vec<Rational>> {
        sigma.actions.iter().map(|a| a.fix_ratio(w)).collect()
    };
    let mut kernel = Vec::new();
    for w in &sigma.kernel_words {
        let fix = trajectory(w)?;
        let tail = final_third(&fix).iter().map(to_f64).fold(f64::INFINITY, f64::min);
        let pass = fix.is_empty() || tail >= hi;
        kernel.push(WordTrajectory { word: w.to_string(), fix_ratios: fix, tail_statistic: tail, pass });
    }
    let mut probes = Vec::new();
    for w in &sigma.probe_words {
        let fix = trajectory(w)?;
        let tail = final_third(&fix).iter().map(to_f64).fold(f64::NEG_INFINITY, f64::max);
        let pass = fix.is_empty() || tail <= lo;
        probes.push(WordTrajectory { word: w.to_string(), fix_ratios: fix, tail_statistic: tail, pass });
    }
    let pass = kernel.iter().chain(&probes).all(|t| t.pass);
    Ok(SoficValidation {
        lo,
        hi,
        sizes: sigma.actions.iter().map(FiniteAction::size).collect(),
        kernel,
        probes,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceCell {
    pub m: usize,
    pub n: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub exact: bool,
    /// `d_{F,k}(level m, level n)`.
    pub forward: DistanceReport,
    /// `d_{F,k}(level n, level m)`.
    pub backward: DistanceReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorCheck {
    pub m: usize,
    pub n: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub depth: usize,
    pub k: usize,
    pub words: Vec<String>,
    /// Cells for `m <= n`, row-major.
    pub cells: Vec<ConvergenceCell>,
    /// `d_inf(level m, level n, F, α)` for the interval partition `α` of
    /// level `m`, warm-started at its pullback.
    pub factor_checks: Vec<FactorCheck>,
    /// Row `m` is nonincreasing in `n`, per row.
    pub rows_monotone: Vec<bool>,
    /// Max over the final row minus max over the first row.
    pub trend: Option<f64>,
}

impl ConvergenceReport {
    pub fn value(&self, m: usize, n: usize) -> Option<Rational> {
        self.cells.iter().find(|c| c.m == m && c.n == n).map(|c| c.value)
    }
}

/// Symmetrized distances between all pairs of tower levels.
///
/// Inner searches for `level m → level n` (with `m <= n`) are warm-started at
/// the pullback of the outer partition, which attains 0 through the factor map.
pub fn tower_convergence(
    t: &Arc<Tower>,
    words: &[GroupWord],
    k: usize,
    outer: &SearchStrategy,
    inner: &SearchStrategy,
) -> Result<ConvergenceReport> {
    let depth = t.depth();
    let pairs: Vec<(usize, usize)> = (1..=depth)
        .flat_map(|m| (m..=depth).map(move |n| (m, n)))
        .collect();
    let cells = pairs
        .par_iter()
        .map(|&(m, n)| {
            let lm = t.level(m)?;
            let ln = t.level(n)?;
            let up = |p: &IndexedPartition| pullback_partition(t, m, n, p).ok().and_then(|q| q.assignment().map(<[usize]>::to_vec));
            let model_m = MeasureModel::tower_level(t.clone(), m)?;
            let model_n = MeasureModel::tower_level(t.clone(), n)?;
            let forward = d_sup_hinted(&model_m, ln, words, k, outer, inner, Some(&up))?;
            let backward = if m == n {
                forward.clone()
            } else {
                d_sup_hinted(&model_n, lm, words, k, outer, inner, None)?
            };
            let value = if m == n { forward.value } else { forward.value + backward.value };
            Ok(ConvergenceCell {
                m,
                n,
                value,
                exact: forward.exact && backward.exact,
                forward,
                backward,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let factor_checks = pairs
        .par_iter()
        .map(|&(m, n)| {
            let alpha = IndexedPartition::intervals(t.level(m)?.size(), k)?;
            let hint = pullback_partition(t, m, n, &alpha)?;
            let seeded = SearchStrategy::local(0, 0, 0);
            let rep = d_inf_seeded(
                &MeasureModel::tower_level(t.clone(), m)?,
                t.level(n)?,
                words,
                &alpha,
                &seeded,
                &[hint.assignment().expect("points").to_vec()],
            )?;
            Ok(FactorCheck { m, n, value: rep.value })
        })
        .collect::<Result<Vec<_>>>()?;

    let row = |m: usize| -> Vec<f64> {
        cells.iter().filter(|c| c.m == m && c.n > m).map(|c| to_f64(&c.value)).collect()
    };
    let rows_monotone = (1..=depth)
        .map(|m| row(m).windows(2).all(|w| w[1] <= w[0]))
        .collect();
    let trend = if depth >= 2 {
        let max = |v: Vec<f64>| v.into_iter().fold(f64::NEG_INFINITY, f64::max);
        Some(max(row(depth - 1)) - max(row(1)))
    } else {
        None
    };
    Ok(ConvergenceReport {
        depth,
        k,
        words: crate::distance::normalize_words(words).iter().map(ToString::to_string).collect(),
        cells,
        factor_checks,
        rows_monotone,
        trend,
    })
}
