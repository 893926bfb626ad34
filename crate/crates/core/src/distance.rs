//! Weak-containment pseudo-metrics between finite actions.
//!
//! `d_inf(a, b, F, α)` is the least L1 gap between the statistics of `α` in
//! `a` and of an ordered `k`-block partition `β` of `b`; `d_sup` maximizes it
//! over `α` and `d_sym` adds both directions.
//!
//! Statistics are rescaled to a common integer denominator so every search
//! step is exact. Moving one point changes at most four entries per word, so
//! move deltas cost `O(|F|)`.
//!
//! Ties between equal-value witnesses are broken towards the
//! lexicographically smallest assignment array, which makes results
//! independent of how enumeration chunks and restarts are scheduled.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::MeasureModel;
use crate::partition::IndexedPartition;
use crate::rational::{lcm, serde_rational, Rational};
use crate::stats::{stats, StatsVector};
use crate::words::{FiniteAction, GroupWord};

/// Default cap on candidates scored by exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SearchMode {
    Exhaustive,
    LocalSearch {
        restarts: usize,
        max_moves: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStrategy {
    pub mode: SearchMode,
    pub budget: u64,
}

impl SearchStrategy {
    pub fn exhaustive() -> Self {
        SearchStrategy { mode: SearchMode::Exhaustive, budget: DEFAULT_BUDGET }
    }

    pub fn local(restarts: usize, max_moves: usize, seed: u64) -> Self {
        SearchStrategy {
            mode: SearchMode::LocalSearch { restarts, max_moves, seed },
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == SearchMode::Exhaustive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub exact: bool,
    /// Minimizing `β` for `d_inf`, maximizing `α` for `d_sup`.
    pub witness: IndexedPartition,
    /// For `d_sup`: the inner witness `β` at the reported `α`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<IndexedPartition>,
    pub evaluations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricReport {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub exact: bool,
    pub forward: DistanceReport,
    pub backward: DistanceReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentVerdict {
    pub reports: Vec<DistanceReport>,
    #[serde(with = "serde_rational")]
    pub threshold: Rational,
    pub all_below: bool,
}

/// Removes duplicates (keeping first occurrences) and prepends the empty
/// word when it is missing.
pub fn normalize_words(words: &[GroupWord]) -> Vec<GroupWord> {
    let mut out: Vec<GroupWord> = Vec::with_capacity(words.len() + 1);
    if !words.iter().any(GroupWord::is_identity) {
        out.push(GroupWord::identity());
    }
    for w in words {
        if !out.contains(w) {
            out.push(w.clone());
        }
    }
    out
}

fn power_checked(k: usize, n: usize) -> Option<u64> {
    (k as u64).checked_pow(n as u32)
}

fn budget_error(what: &str, k: usize, n: usize, budget: u64) -> Error {
    let needed = power_checked(k, n).map_or_else(|| format!("{k}^{n}"), |v| v.to_string());
    Error::Budget { what: what.into(), needed, budget }
}

pub(crate) fn mix_seed(seed: u64, index: u64) -> u64 {
    seed ^ (index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// The minimization problem over ordered `k`-block partitions of `b`.
struct Inner {
    n: usize,
    k: usize,
    fwd: Vec<Vec<usize>>,
    back: Vec<Vec<usize>>,
    /// Target statistics times `scale`.
    target: Vec<i128>,
    /// Weight of one counted point, `scale / n`.
    unit: i128,
    scale: i128,
    /// Target block measures times `scale`, from the identity layer.
    block_targets: Vec<i128>,
}

struct State {
    assign: Vec<usize>,
    counts: Vec<i64>,
    score: i128,
}

impl Inner {
    fn new(target: &StatsVector, b: &FiniteAction) -> Result<Inner> {
        let n = b.size();
        let k = target.block_count();
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        for w in target.words() {
            fwd.push(b.evaluate(w)?.images().to_vec());
            back.push(b.evaluate(&w.inverse())?.images().to_vec());
        }
        let scale = target
            .entries()
            .iter()
            .fold(n as i128, |acc, r| lcm(acc, *r.denom()));
        let scaled = target
            .entries()
            .iter()
            .map(|r| r.numer().checked_mul(scale / r.denom()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::input("statistics denominators overflow"))?;
        let e = target.words().iter().position(GroupWord::is_identity);
        let block_targets = (0..k)
            .map(|i| e.map_or(0, |e| scaled[(e * k + i) * k + i]))
            .collect();
        Ok(Inner {
            n,
            k,
            fwd,
            back,
            target: scaled,
            unit: scale / n as i128,
            scale,
            block_targets,
        })
    }

    #[inline]
    fn cost(&self, idx: usize, count: i64) -> i128 {
        (self.target[idx] - self.unit * count as i128).abs()
    }

    fn state(&self, assign: Vec<usize>) -> State {
        let k = self.k;
        let mut counts = vec![0i64; self.target.len()];
        for (w, back) in self.back.iter().enumerate() {
            for x in 0..self.n {
                counts[(w * k + assign[x]) * k + assign[back[x]]] += 1;
            }
        }
        let score = counts.iter().enumerate().map(|(i, &c)| self.cost(i, c)).sum();
        State { assign, counts, score }
    }

    /// Entry changes caused by moving `x` to block `q`.
    fn changes(&self, st: &State, x: usize, q: usize, buf: &mut Vec<(usize, i64)>) {
        buf.clear();
        let k = self.k;
        let p = st.assign[x];
        for w in 0..self.fwd.len() {
            let base = w * k * k;
            let bx = self.back[w][x];
            let (old_j, new_j) = if bx == x { (p, q) } else { (st.assign[bx], st.assign[bx]) };
            buf.push((base + p * k + old_j, -1));
            buf.push((base + q * k + new_j, 1));
            let fx = self.fwd[w][x];
            if fx != x {
                let i = st.assign[fx];
                buf.push((base + i * k + p, -1));
                buf.push((base + i * k + q, 1));
            }
        }
        // merge repeated entries
        buf.sort_unstable_by_key(|c| c.0);
        let mut merged = 0;
        for t in 0..buf.len() {
            if merged > 0 && buf[merged - 1].0 == buf[t].0 {
                buf[merged - 1].1 += buf[t].1;
            } else {
                buf[merged] = buf[t];
                merged += 1;
            }
        }
        buf.truncate(merged);
    }

    fn delta(&self, st: &State, buf: &[(usize, i64)]) -> i128 {
        buf.iter()
            .filter(|c| c.1 != 0)
            .map(|&(idx, d)| self.cost(idx, st.counts[idx] + d) - self.cost(idx, st.counts[idx]))
            .sum()
    }

    fn move_delta(&self, st: &State, x: usize, q: usize, buf: &mut Vec<(usize, i64)>) -> i128 {
        self.changes(st, x, q, buf);
        self.delta(st, buf)
    }

    fn apply(&self, st: &mut State, x: usize, q: usize, buf: &mut Vec<(usize, i64)>) {
        if st.assign[x] == q {
            return;
        }
        self.changes(st, x, q, buf);
        st.score += self.delta(st, buf);
        for &(idx, d) in buf.iter() {
            st.counts[idx] += d;
        }
        st.assign[x] = q;
    }

    fn value(&self, score: i128) -> Rational {
        Rational::new(score, self.scale)
    }

    fn exhaustive(&self, budget: u64) -> Result<(i128, Vec<usize>, u64)> {
        let (n, k) = (self.n, self.k);
        let total = power_checked(k, n)
            .filter(|&t| t <= budget)
            .ok_or_else(|| budget_error("exhaustive d_inf", k, n, budget))?;
        // split on a prefix so chunks run in parallel
        let mut prefix = 0;
        while prefix < n && power_checked(k, prefix + 1).is_some_and(|c| c <= 256) {
            prefix += 1;
        }
        let chunks = k.pow(prefix as u32);
        let best = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut assign = vec![0; n];
                let mut rest = c;
                for pos in (0..prefix).rev() {
                    assign[pos] = rest % k;
                    rest /= k;
                }
                let mut st = self.state(assign);
                let mut buf = Vec::new();
                let mut best = (st.score, st.assign.clone());
                loop {
                    // odometer over the suffix, last position least significant
                    let mut pos = n;
                    loop {
                        if pos == prefix {
                            return best;
                        }
                        pos -= 1;
                        if st.assign[pos] + 1 < k {
                            let next = st.assign[pos] + 1;
                            self.apply(&mut st, pos, next, &mut buf);
                            break;
                        }
                        self.apply(&mut st, pos, 0, &mut buf);
                    }
                    if st.score < best.0 {
                        best = (st.score, st.assign.clone());
                    }
                }
            })
            .reduce_with(|x, y| if (y.0, &y.1) < (x.0, &x.1) { y } else { x })
            .expect("at least one chunk");
        Ok((best.0, best.1, total))
    }

    /// Steepest descent over single-point moves, then point-pair swaps.
    fn descend(&self, st: &mut State, max_moves: usize) -> u64 {
        let mut evals = 0u64;
        let mut buf = Vec::new();
        let mut moves = 0;
        while moves < max_moves && st.score > 0 {
            let mut best: Option<(i128, usize, usize)> = None;
            for x in 0..self.n {
                for q in 0..self.k {
                    if q == st.assign[x] {
                        continue;
                    }
                    evals += 1;
                    let d = self.move_delta(st, x, q, &mut buf);
                    if d < 0 && best.is_none_or(|b| d < b.0) {
                        best = Some((d, x, q));
                    }
                }
            }
            if let Some((_, x, q)) = best {
                self.apply(st, x, q, &mut buf);
                moves += 1;
                continue;
            }
            let mut best_swap: Option<(i128, usize, usize)> = None;
            for x in 0..self.n {
                for y in x + 1..self.n {
                    let (px, py) = (st.assign[x], st.assign[y]);
                    if px == py {
                        continue;
                    }
                    evals += 1;
                    let before = st.score;
                    self.apply(st, x, py, &mut buf);
                    self.apply(st, y, px, &mut buf);
                    let d = st.score - before;
                    self.apply(st, y, py, &mut buf);
                    self.apply(st, x, px, &mut buf);
                    if d < 0 && best_swap.is_none_or(|b| d < b.0) {
                        best_swap = Some((d, x, y));
                    }
                }
            }
            match best_swap {
                Some((_, x, y)) => {
                    let (px, py) = (st.assign[x], st.assign[y]);
                    self.apply(st, x, py, &mut buf);
                    self.apply(st, y, px, &mut buf);
                    moves += 1;
                }
                None => break,
            }
        }
        evals
    }

    /// Fills points in order into the block with the largest remaining
    /// measure deficit.
    fn greedy_start(&self) -> Vec<usize> {
        let mut filled = vec![0i128; self.k];
        (0..self.n)
            .map(|_| {
                let b = (0..self.k)
                    .max_by_key(|&i| (self.block_targets[i] - filled[i], std::cmp::Reverse(i)))
                    .expect("k >= 1");
                filled[b] += self.unit;
                b
            })
            .collect()
    }

    fn local(
        &self,
        restarts: usize,
        max_moves: usize,
        seed: u64,
        hints: &[Vec<usize>],
    ) -> (i128, Vec<usize>, u64) {
        let mut starts: Vec<Option<Vec<usize>>> = hints.iter().cloned().map(Some).collect();
        let restarts = if hints.is_empty() { restarts.max(1) } else { restarts };
        starts.extend((0..restarts).map(|_| None));
        starts
            .into_par_iter()
            .enumerate()
            .map(|(s, start)| {
                let assign = start.unwrap_or_else(|| {
                    if s == hints.len() {
                        self.greedy_start()
                    } else {
                        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, s as u64));
                        (0..self.n).map(|_| rng.gen_range(0..self.k)).collect()
                    }
                });
                let mut st = self.state(assign);
                let evals = 1 + self.descend(&mut st, max_moves);
                (st.score, st.assign, evals)
            })
            .fold(
                || None::<(i128, Vec<usize>, u64)>,
                |acc, r| merge_min(acc, r),
            )
            .reduce(|| None, |a, b| match b {
                Some(b) => merge_min(a, b),
                None => a,
            })
            .expect("at least one start")
    }

    fn solve(&self, s: &SearchStrategy, hints: &[Vec<usize>]) -> Result<(i128, Vec<usize>, u64)> {
        match &s.mode {
            SearchMode::Exhaustive => self.exhaustive(s.budget),
            SearchMode::LocalSearch { restarts, max_moves, seed } => {
                Ok(self.local(*restarts, *max_moves, *seed, hints))
            }
        }
    }
}

fn merge_min(
    acc: Option<(i128, Vec<usize>, u64)>,
    r: (i128, Vec<usize>, u64),
) -> Option<(i128, Vec<usize>, u64)> {
    Some(match acc {
        None => r,
        Some(a) => {
            let evals = a.2 + r.2;
            if (r.0, &r.1) < (a.0, &a.1) {
                (r.0, r.1, evals)
            } else {
                (a.0, a.1, evals)
            }
        }
    })
}

fn check_hint(h: &[usize], n: usize, k: usize) -> Result<()> {
    if h.len() != n || h.iter().any(|&b| b >= k) {
        return Err(Error::input("warm-start assignment does not fit the target"));
    }
    Ok(())
}

/// Inner infimum with warm-start assignments for the local search.
pub fn d_inf_seeded(
    a: &MeasureModel,
    b: &FiniteAction,
    words: &[GroupWord],
    alpha: &IndexedPartition,
    s: &SearchStrategy,
    hints: &[Vec<usize>],
) -> Result<DistanceReport> {
    let words = normalize_words(words);
    let target = stats(a, &words, alpha)?;
    let inner = Inner::new(&target, b)?;
    for h in hints {
        check_hint(h, inner.n, inner.k)?;
    }
    let (score, assign, evaluations) = inner.solve(s, hints)?;
    Ok(DistanceReport {
        value: inner.value(score),
        exact: s.is_exhaustive(),
        witness: IndexedPartition::from_assignment(inner.k, assign)?,
        partner: None,
        evaluations,
    })
}

/// `d_{F,α}(a, b)`: exact minimum (exhaustive) or best upper bound found.
pub fn d_inf(
    a: &MeasureModel,
    b: &FiniteAction,
    words: &[GroupWord],
    alpha: &IndexedPartition,
    s: &SearchStrategy,
) -> Result<DistanceReport> {
    d_inf_seeded(a, b, words, alpha, s, &[])
}

/// Supplies warm starts for the inner problem given the outer partition.
pub type HintFn<'a> = dyn Fn(&IndexedPartition) -> Option<Vec<usize>> + Sync + 'a;

/// `d_{F,k}(a, b)` with an optional warm-start provider for inner searches.
pub fn d_sup_hinted(
    a: &MeasureModel,
    b: &FiniteAction,
    words: &[GroupWord],
    k: usize,
    outer: &SearchStrategy,
    inner: &SearchStrategy,
    hint: Option<&HintFn<'_>>,
) -> Result<DistanceReport> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let act = a
        .finite_action()
        .ok_or_else(|| Error::input("d_sup needs a finite source action"))?;
    let words = normalize_words(words);
    let n_a = act.size();

    // scores of one α: returns (value, β assignment, evaluations)
    let solve_alpha = |alpha: &[usize], extra: &[Vec<usize>], strat: &SearchStrategy| {
        let p = IndexedPartition::from_assignment(k, alpha.to_vec())?;
        let target = stats(a, &words, &p)?;
        let problem = Inner::new(&target, b)?;
        let mut hints: Vec<Vec<usize>> = extra.to_vec();
        if let Some(h) = hint.and_then(|f| f(&p)) {
            check_hint(&h, problem.n, k)?;
            hints.push(h);
        }
        let (score, beta, evals) = problem.solve(strat, &hints)?;
        Ok::<_, Error>((problem.value(score), beta, evals))
    };

    let (value, alpha, beta, evaluations) = match &outer.mode {
        SearchMode::Exhaustive => {
            let count = power_checked(k, n_a)
                .filter(|&c| c <= outer.budget)
                .ok_or_else(|| budget_error("exhaustive d_sup (outer)", k, n_a, outer.budget))?;
            if inner.is_exhaustive() {
                let inner_count = power_checked(k, b.size())
                    .and_then(|c| c.checked_mul(count))
                    .filter(|&c| c <= outer.budget);
                if inner_count.is_none() {
                    return Err(budget_error("exhaustive d_sup (outer × inner)", k, n_a + b.size(), outer.budget));
                }
            }
            let best = (0..count)
                .into_par_iter()
                .map(|idx| {
                    let mut alpha = vec![0; n_a];
                    let mut rest = idx as usize;
                    for pos in (0..n_a).rev() {
                        alpha[pos] = rest % k;
                        rest /= k;
                    }
                    let (v, beta, evals) = solve_alpha(&alpha, &[], inner)?;
                    Ok((v, alpha, beta, evals))
                })
                .try_reduce_with(|x, y| {
                    let evals = x.3 + y.3;
                    let keep_y = y.0 > x.0 || (y.0 == x.0 && y.1 < x.1);
                    let w = if keep_y { y } else { x };
                    Ok((w.0, w.1, w.2, evals))
                })
                .expect("nonempty")?;
            best
        }
        SearchMode::LocalSearch { restarts, max_moves, seed } => {
            let quick = SearchStrategy::local(0, usize::MAX, 0);
            let runs = (0..(*restarts).max(1))
                .into_par_iter()
                .map(|r| {
                    let mut alpha: Vec<usize> = if r == 0 {
                        (0..n_a).map(|x| x * k / n_a).collect()
                    } else {
                        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(*seed, r as u64));
                        (0..n_a).map(|_| rng.gen_range(0..k)).collect()
                    };
                    let (mut val, mut beta, mut evals) = solve_alpha(&alpha, &[], inner)?;
                    let mut moves = 0;
                    'outer: while moves < *max_moves {
                        for x in 0..n_a {
                            for q in 0..k {
                                if q == alpha[x] {
                                    continue;
                                }
                                let prev = alpha[x];
                                alpha[x] = q;
                                let (qv, qbeta, e) = solve_alpha(&alpha, &[beta.clone()], &quick)?;
                                evals += e;
                                if qv > val {
                                    let (fv, fbeta, e) = solve_alpha(&alpha, &[qbeta], inner)?;
                                    evals += e;
                                    if fv > val {
                                        val = fv;
                                        beta = fbeta;
                                        moves += 1;
                                        continue 'outer;
                                    }
                                }
                                alpha[x] = prev;
                            }
                        }
                        break;
                    }
                    Ok((val, alpha, beta, evals))
                })
                .collect::<Result<Vec<_>>>()?;
            let evals: u64 = runs.iter().map(|r| r.3).sum();
            let best = runs
                .into_iter()
                .reduce(|x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x })
                .expect("at least one restart");
            (best.0, best.1, best.2, evals)
        }
    };
    Ok(DistanceReport {
        value,
        exact: outer.is_exhaustive() && inner.is_exhaustive(),
        witness: IndexedPartition::from_assignment(k, alpha)?,
        partner: Some(IndexedPartition::from_assignment(k, beta)?),
        evaluations,
    })
}

/// `d_{F,k}(a, b)`: supremum over `k`-block partitions `α` of `a` of `d_inf`.
pub fn d_sup(
    a: &MeasureModel,
    b: &FiniteAction,
    words: &[GroupWord],
    k: usize,
    outer: &SearchStrategy,
    inner: &SearchStrategy,
) -> Result<DistanceReport> {
    d_sup_hinted(a, b, words, k, outer, inner, None)
}

/// `d_{F,k}(a, b) + d_{F,k}(b, a)`.
pub fn d_sym(
    a: &FiniteAction,
    b: &FiniteAction,
    words: &[GroupWord],
    k: usize,
    outer: &SearchStrategy,
    inner: &SearchStrategy,
) -> Result<SymmetricReport> {
    let forward = d_sup(&a.clone().into(), b, words, k, outer, inner)?;
    let backward = d_sup(&b.clone().into(), a, words, k, outer, inner)?;
    Ok(SymmetricReport {
        value: forward.value + backward.value,
        exact: forward.exact && backward.exact,
        forward,
        backward,
    })
}

/// Per-partition `d_inf` reports and whether all of them are at most `threshold`.
///
/// A finite-resolution surrogate for weak containment, never a proof of it.
pub fn containment_verdict(
    a: &MeasureModel,
    b: &FiniteAction,
    words: &[GroupWord],
    partitions: &[IndexedPartition],
    s: &SearchStrategy,
    threshold: Rational,
) -> Result<ContainmentVerdict> {
    let reports = partitions
        .iter()
        .map(|p| d_inf(a, b, words, p, s))
        .collect::<Result<Vec<_>>>()?;
    let all_below = reports.iter().all(|r| r.value <= threshold);
    Ok(ContainmentVerdict { reports, threshold, all_below })
}

/// L1 gap of a given `β`, bypassing the search.
pub fn score_partition(
    a: &MeasureModel,
    b: &FiniteAction,
    words: &[GroupWord],
    alpha: &IndexedPartition,
    beta: &IndexedPartition,
) -> Result<Rational> {
    let words = normalize_words(words);
    if alpha.block_count() != beta.block_count() {
        return Err(Error::input("α and β must have the same block count"));
    }
    let lhs = stats(a, &words, alpha)?;
    let rhs = stats(&b.clone().into(), &words, beta)?;
    crate::stats::stats_l1(&lhs, &rhs)
}

impl DistanceReport {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::stats_l1;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn halves() -> IndexedPartition {
        IndexedPartition::from_blocks(4, &[&[0, 1], &[2, 3]]).unwrap()
    }

    fn ea() -> Vec<GroupWord> {
        vec![GroupWord::identity(), GroupWord::generator(0)]
    }

    fn c4() -> FiniteAction {
        FiniteAction::cyclic(4)
    }

    #[test]
    fn normalize_prepends_identity_and_dedups() {
        let a = GroupWord::generator(0);
        let n = normalize_words(&[a.clone(), a.clone()]);
        assert_eq!(n, vec![GroupWord::identity(), a.clone()]);
        let n = normalize_words(&[a.clone(), GroupWord::identity()]);
        assert_eq!(n, vec![a, GroupWord::identity()]);
    }

    #[test]
    fn d_inf_self_is_zero_with_alpha_witness() {
        let rep = d_inf(&c4().into(), &c4(), &ea(), &halves(), &SearchStrategy::exhaustive()).unwrap();
        assert_eq!(rep.value, r(0, 1));
        assert!(rep.exact);
        // lexicographically smallest zero witness is α itself
        assert_eq!(rep.witness, halves());
    }

    #[test]
    fn d_inf_against_trivial_two_points() {
        let triv = FiniteAction::trivial(2, 1);
        let rep = d_inf(&c4().into(), &triv, &ea(), &halves(), &SearchStrategy::exhaustive()).unwrap();
        assert_eq!(rep.value, r(1, 1));
        assert_eq!(rep.evaluations, 4);
        let check = score_partition(&c4().into(), &triv, &ea(), &halves(), &rep.witness).unwrap();
        assert_eq!(check, rep.value);
    }

    #[test]
    fn d_inf_against_one_point() {
        // only (X, ∅) and (∅, X): e-layer gap 1, a-layer gap 3/2
        let one = FiniteAction::trivial(1, 1);
        let rep = d_inf(&c4().into(), &one, &ea(), &halves(), &SearchStrategy::exhaustive()).unwrap();
        assert_eq!(rep.value, r(5, 2));
        assert_eq!(rep.witness.assignment().unwrap(), &[0]);
    }

    #[test]
    fn d_inf_budget_error() {
        let s = SearchStrategy::exhaustive().with_budget(3);
        let err = d_inf(&c4().into(), &FiniteAction::trivial(2, 1), &ea(), &halves(), &s).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn d_sup_examples() {
        let ex = SearchStrategy::exhaustive();
        let triv = FiniteAction::trivial(2, 1);
        let rep = d_sup(&c4().into(), &triv, &ea(), 1, &ex, &ex).unwrap();
        assert_eq!(rep.value, r(0, 1));

        let e = [GroupWord::identity()];
        let rep = d_sup(&c4().into(), &triv, &e, 2, &ex, &ex).unwrap();
        assert_eq!(rep.value, r(1, 2));
        assert!(rep.exact);
        let mut measures: Vec<usize> = rep.witness.blocks().unwrap().iter().map(Vec::len).collect();
        measures.sort();
        assert_eq!(measures, vec![1, 3]);
        // lexicographic tie-break
        assert_eq!(rep.witness.assignment().unwrap(), &[0, 0, 0, 1]);
        let inner = d_inf(&c4().into(), &triv, &e, &rep.witness, &ex).unwrap();
        assert_eq!(inner.value, rep.value);
    }

    #[test]
    fn d_sym_examples() {
        let ex = SearchStrategy::exhaustive();
        let triv = FiniteAction::trivial(2, 1);
        let e = [GroupWord::identity()];
        let rep = d_sym(&c4(), &triv, &e, 2, &ex, &ex).unwrap();
        assert_eq!(rep.forward.value, r(1, 2));
        assert_eq!(rep.backward.value, r(0, 1));
        assert_eq!(rep.value, r(1, 2));
        let rev = d_sym(&triv, &c4(), &e, 2, &ex, &ex).unwrap();
        assert_eq!(rev.value, rep.value);
        assert_eq!(d_sym(&c4(), &c4(), &ea(), 2, &ex, &ex).unwrap().value, r(0, 1));
    }

    #[test]
    fn verdict_examples() {
        let ex = SearchStrategy::exhaustive();
        let triv = FiniteAction::trivial(2, 1);
        let v = containment_verdict(&c4().into(), &triv, &ea(), &[halves()], &ex, r(1, 2)).unwrap();
        assert!(!v.all_below);
        assert_eq!(v.reports[0].value, r(1, 1));
        let v = containment_verdict(&c4().into(), &c4(), &ea(), &[halves()], &ex, r(0, 1)).unwrap();
        assert!(v.all_below);
    }

    #[test]
    fn local_search_matches_witness_value() {
        let s = SearchStrategy::local(4, 100, 7);
        let b = FiniteAction::cyclic(6);
        let rep = d_inf(&c4().into(), &b, &ea(), &halves(), &s).unwrap();
        assert!(!rep.exact);
        let lhs = stats(&c4().into(), &normalize_words(&ea()), &halves()).unwrap();
        let rhs = stats(&b.clone().into(), &normalize_words(&ea()), &rep.witness).unwrap();
        assert_eq!(stats_l1(&lhs, &rhs).unwrap(), rep.value);
        let ex = d_inf(&c4().into(), &b, &ea(), &halves(), &SearchStrategy::exhaustive()).unwrap();
        assert!(rep.value >= ex.value);
    }

    #[test]
    fn bernoulli_source_rejected_for_d_sup() {
        let bern: MeasureModel = crate::model::BernoulliShift::uniform(2, 1).unwrap().into();
        let ex = SearchStrategy::exhaustive();
        assert!(d_sup(&bern, &c4(), &ea(), 2, &ex, &ex).is_err());
    }
}
