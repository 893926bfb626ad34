//! Acceptance checks, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL` line with its measured runtime.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sofic_core::distance::d_inf_seeded;
use sofic_core::rational::{format_rational, to_f64};
use sofic_core::*;

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn w(s: &str) -> GroupWord {
    s.parse().unwrap()
}

fn report(id: &str, ok: bool, detail: &str, start: Instant, limit: Duration) {
    let took = start.elapsed();
    let pass = ok && took <= limit;
    println!(
        "criterion {id}: {} ({detail}; {:.2}s of {}s)",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(took <= limit, "criterion {id} exceeded its time limit");
}

fn random_action(rng: &mut ChaCha8Rng, n: usize, gens: usize) -> FiniteAction {
    let images = (0..gens)
        .map(|_| {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(rng);
            v
        })
        .collect();
    FiniteAction::from_images(images).unwrap()
}

fn random_assignment(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}

fn random_words(rng: &mut ChaCha8Rng, gens: usize, count: usize) -> Vec<GroupWord> {
    let pool = GroupWord::all_reduced(gens, 2);
    (0..count).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
}

/// Plain enumeration of every point-to-atom map, checking both conditions
/// with explicit set operations. Returns (valid maps, distinct ξ restrictions).
fn naive_hom_count(
    a: &FiniteAction,
    alpha: &[usize],
    words: &[GroupWord],
    delta: Rational,
    b: &FiniteAction,
    xi_of_alpha: &[usize],
) -> (u64, u64) {
    let mut words: Vec<GroupWord> = words.to_vec();
    if !words.iter().any(GroupWord::is_identity) {
        words.insert(0, GroupWord::identity());
    }
    let mut seen_words = HashSet::new();
    words.retain(|w| seen_words.insert(w.clone()));
    let e = words.iter().position(GroupWord::is_identity).unwrap();

    // atom of x: the α-labels of f⁻¹x for every f
    let mut atoms: Vec<Vec<usize>> = Vec::new();
    let mut mass: Vec<i128> = Vec::new();
    for x in 0..a.size() {
        let tuple: Vec<usize> = words.iter().map(|f| alpha[a.act(&f.inverse(), x)]).collect();
        match atoms.iter().position(|t| *t == tuple) {
            Some(i) => mass[i] += 1,
            None => {
                atoms.push(tuple);
                mass.push(1);
            }
        }
    }
    let k = alpha.iter().max().unwrap() + 1;
    let (na, nb) = (a.size() as i128, b.size());
    let mut tau = vec![0usize; nb];
    let mut total = 0u64;
    let mut restricted = HashSet::new();
    loop {
        let mut counts = vec![0i128; atoms.len()];
        for &t in &tau {
            counts[t] += 1;
        }
        let deficit: Rational = counts
            .iter()
            .zip(&mass)
            .map(|(&c, &m)| (r(c, nb as i128) - r(m, na)).abs())
            .sum();
        let mut ok = deficit < delta;
        'words: for (fi, f) in words.iter().enumerate() {
            for i in 0..k {
                let moved: HashSet<usize> = (0..nb).filter(|&y| atoms[tau[y]][e] == i).map(|y| b.act(f, y)).collect();
                let pulled: HashSet<usize> = (0..nb).filter(|&y| atoms[tau[y]][fi] == i).collect();
                let sym = moved.symmetric_difference(&pulled).count();
                if r(sym as i128, nb as i128) >= delta {
                    ok = false;
                    break 'words;
                }
            }
        }
        if ok {
            total += 1;
            restricted.insert(tau.iter().map(|&t| xi_of_alpha[atoms[t][e]]).collect::<Vec<_>>());
        }
        // next map in lexicographic order
        let mut pos = nb;
        loop {
            if pos == 0 {
                return (total, restricted.len() as u64);
            }
            pos -= 1;
            tau[pos] += 1;
            if tau[pos] < atoms.len() {
                break;
            }
            tau[pos] = 0;
        }
    }
}

fn exact_u64(v: &CountValue) -> u64 {
    v.exact().expect("exact count").to_u64().expect("small count")
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let deltas = [r(1, 8), r(1, 4), r(1, 2), r(1, 1), r(2, 1), r(7, 1)];
    let (mut instances, mut mismatches, mut nonzero) = (0, 0, 0);
    while instances < 50 {
        let gens = rng.gen_range(1..=2);
        let na = rng.gen_range(1..=5);
        let a = random_action(&mut rng, na, gens);
        let k = rng.gen_range(1..=3);
        let alpha = random_assignment(&mut rng, na, k);
        let words = { let c = rng.gen_range(1..=2); random_words(&mut rng, gens, c) };
        let b = match rng.gen_range(0..3) {
            0 => a.clone(),
            1 => diagonal_product(&a, &FiniteAction::trivial(2, gens)).unwrap(),
            _ => { let n = rng.gen_range(1..=6); random_action(&mut rng, n, gens) }
        };
        let xi_map: Vec<usize> = (0..k).map(|_| rng.gen_range(0..2)).collect();
        let delta = deltas[rng.gen_range(0..deltas.len())];
        let model: MeasureModel = a.clone().into();
        let alpha_p = IndexedPartition::from_assignment(k, alpha.clone()).unwrap();
        let xi = alpha_p.coarsen(&xi_map, 2).unwrap();
        let problem = HomProblem::new(&model, &alpha_p, &words, &b).unwrap();
        if (problem.atom_count() as f64).powi(b.size() as i32) > 1e5 {
            continue;
        }
        instances += 1;
        let rep = count_homs(&model, &xi, &alpha_p, &words, &delta, &b, &CountMethod::exact()).unwrap();
        let got = (exact_u64(&rep.total_valid), exact_u64(&rep.restricted_count));
        let want = naive_hom_count(&a, &alpha, &words, delta, &b, &xi_map);
        if got != want {
            mismatches += 1;
            eprintln!("mismatch: got {got:?}, oracle {want:?}");
        }
        if want.0 > 0 {
            nonzero += 1;
        }
    }
    report(
        "1",
        mismatches == 0,
        &format!("{instances} instances, {mismatches} mismatches, {nonzero} with nonempty hom sets"),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_2_triangle_inequality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let ex = SearchStrategy::exhaustive();
    let mut violations = 0;
    for _ in 0..200 {
        let gens = rng.gen_range(1..=2);
        let (na, nb, nc) = (rng.gen_range(1..=6), rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_action(&mut rng, na, gens);
        let b = random_action(&mut rng, nb, gens);
        let c = random_action(&mut rng, nc, gens);
        let alpha = IndexedPartition::from_assignment(2, random_assignment(&mut rng, na, 2)).unwrap();
        let words = { let n = rng.gen_range(1..=2); random_words(&mut rng, gens, n) };
        let ma: MeasureModel = a.into();
        let ac = d_inf(&ma, &c, &words, &alpha, &ex).unwrap().value;
        let ab = d_inf(&ma, &b, &words, &alpha, &ex).unwrap().value;
        let bc = d_sup(&b.into(), &c, &words, 2, &ex, &ex).unwrap().value;
        if ac > ab + bc {
            violations += 1;
        }
    }
    report("2", violations == 0, &format!("200 triples, {violations} violations"), start, Duration::from_secs(120));
}

#[test]
fn criterion_3_monotonicity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let ex = SearchStrategy::exhaustive();
    let (mut refinement, mut wordset) = (0, 0);
    for _ in 0..200 {
        let gens = rng.gen_range(1..=2);
        let (na, nb) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a: MeasureModel = random_action(&mut rng, na, gens).into();
        let b = random_action(&mut rng, nb, gens);
        let fine = IndexedPartition::from_assignment(3, random_assignment(&mut rng, na, 3)).unwrap();
        let map: Vec<usize> = (0..3).map(|_| rng.gen_range(0..2)).collect();
        let coarse = fine.coarsen(&map, 2).unwrap();
        let words = { let n = rng.gen_range(1..=2); random_words(&mut rng, gens, n) };
        if d_inf(&a, &b, &words, &fine, &ex).unwrap().value < d_inf(&a, &b, &words, &coarse, &ex).unwrap().value {
            refinement += 1;
        }
    }
    for _ in 0..200 {
        let gens = rng.gen_range(1..=2);
        let (na, nb) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a: MeasureModel = random_action(&mut rng, na, gens).into();
        let b = random_action(&mut rng, nb, gens);
        let k = rng.gen_range(1..=3);
        let alpha = IndexedPartition::from_assignment(k, random_assignment(&mut rng, na, k)).unwrap();
        let small = { let n = rng.gen_range(1..=2); random_words(&mut rng, gens, n) };
        let mut large = small.clone();
        large.extend({ let n = rng.gen_range(1..=2); random_words(&mut rng, gens, n) });
        if d_inf(&a, &b, &small, &alpha, &ex).unwrap().value > d_inf(&a, &b, &large, &alpha, &ex).unwrap().value {
            wordset += 1;
        }
    }
    report(
        "3",
        refinement == 0 && wordset == 0,
        &format!("200+200 instances, {refinement} refinement and {wordset} word-set violations"),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_4_factor_direction_zero() {
    let start = Instant::now();
    let t = odometer_tower(2, 8).unwrap();
    let words = vec![w("a"), w("A"), w("aa")];
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let (mut pairs, mut nonzero, mut exhaustive_checked) = (0, 0, 0);
    for m in 1..=8 {
        let size_m = t.level(m).unwrap().size();
        let partitions = [
            IndexedPartition::intervals(size_m, 2).unwrap(),
            IndexedPartition::intervals(size_m, 3.min(size_m)).unwrap(),
            IndexedPartition::from_assignment(2, random_assignment(&mut rng, size_m, 2)).unwrap(),
        ];
        for n in m..=8 {
            let model: MeasureModel = t.level(m).unwrap().clone().into();
            let target = t.level(n).unwrap();
            for alpha in &partitions {
                let up = pullback_partition(&t, m, n, alpha).unwrap();
                let rep = d_inf_seeded(
                    &model,
                    target,
                    &words,
                    alpha,
                    &SearchStrategy::local(2, 1_000, 7),
                    &[up.assignment().unwrap().to_vec()],
                )
                .unwrap();
                if format_rational(&rep.value) != "0/1" {
                    nonzero += 1;
                }
                // small targets are also settled by full enumeration
                if (alpha.block_count() as f64).powi(target.size() as i32) <= 1e6 {
                    let ex = d_inf(&model, target, &words, alpha, &SearchStrategy::exhaustive()).unwrap();
                    exhaustive_checked += 1;
                    if !ex.is_zero() || !ex.exact {
                        nonzero += 1;
                    }
                }
                pairs += 1;
            }
        }
    }
    report(
        "4",
        nonzero == 0,
        &format!("{pairs} (level pair, partition) cases, {exhaustive_checked} also exhaustive, {nonzero} nonzero"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_5_hom_distance_constants() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let ex = SearchStrategy::exhaustive();
    let (mut instances, mut forward_checks, mut backward_checks) = (0, 0, 0);
    let (mut forward_bad, mut entry_bad, mut atom_bad) = (0, 0, 0);
    let mut worst_atom_ratio = 0.0f64;
    while instances < 60 {
        let na = rng.gen_range(2..=4);
        let a = random_action(&mut rng, na, 1);
        let alpha = IndexedPartition::from_assignment(2, random_assignment(&mut rng, na, 2)).unwrap();
        let words = vec![GroupWord::identity(), random_words(&mut rng, 1, 1).remove(0)];
        let b = match rng.gen_range(0..3) {
            0 => a.clone(),
            1 => diagonal_product(&a, &FiniteAction::trivial(2, 1)).unwrap(),
            _ => { let n = rng.gen_range(2..=4); random_action(&mut rng, n, 1) }
        };
        let model: MeasureModel = a.clone().into();
        let problem = HomProblem::new(&model, &alpha, &words, &b).unwrap();
        let atoms = problem.atom_count();
        if (atoms as f64).powi(b.size() as i32) > 1e5 {
            continue;
        }
        instances += 1;
        let (alpha_f, _) = generated_partition(&model, problem.words(), &alpha).unwrap().compact();
        let d = d_inf(&model, &b, problem.words(), &alpha_f, &ex).unwrap().value;
        let one = IndexedPartition::one_block(na);

        // small distance gives a homomorphism at four times the distance
        for eps in [d + r(1, 1000), r(1, 8), r(1, 4), r(1, 2), r(1, 1)] {
            if d < eps {
                forward_checks += 1;
                let rep = count_homs(&model, &one, &alpha, &words, &(eps * 4), &b, &CountMethod::exact()).unwrap();
                if rep.total_valid.is_zero() {
                    forward_bad += 1;
                }
            }
        }

        // a homomorphism gives small statistics deviations
        let fcount = problem.words().len() as i128;
        let target_stats = stats(&model, problem.words(), &alpha).unwrap();
        for delta in [r(1, 8), r(1, 4), r(1, 2), r(1, 1)] {
            let mut homs = Vec::new();
            problem.for_each_valid(&delta, 1 << 20, &mut |tau| homs.push(tau.to_vec())).unwrap();
            if homs.is_empty() {
                continue;
            }
            let bound = delta * 2 * fcount * (atoms * atoms) as i128;
            backward_checks += 1;
            if d > bound {
                atom_bad += 1;
            }
            worst_atom_ratio = worst_atom_ratio.max(to_f64(&(d / (delta * 2))));
            for tau in homs {
                let phi = HomAssignment::from_atoms(&problem, &tau).unwrap();
                let beta = phi.induced_alpha_partition(&problem).unwrap();
                let got = stats(&b.clone().into(), problem.words(), &beta).unwrap();
                let worst = target_stats
                    .entries()
                    .iter()
                    .zip(got.entries())
                    .map(|(x, y)| (x - y).abs())
                    .max()
                    .unwrap();
                if worst > delta * 2 {
                    entry_bad += 1;
                }
            }
        }
    }
    report(
        "5",
        forward_bad == 0 && entry_bad == 0 && atom_bad == 0,
        &format!(
            "{instances} instances; d_inf < eps => hom at 4eps: {forward_checks} checks, {forward_bad} violations; \
             hom at delta => entries <= 2delta: {entry_bad} violations, \
             d_inf(F, alpha_F) <= 2delta|F||alpha_F|^2: {backward_checks} checks, {atom_bad} violations \
             (largest d_inf/2delta seen {worst_atom_ratio:.3})"
        ),
        start,
        Duration::from_secs(180),
    );
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `Σ C(n, m)` over `|m/n − 1/2| < δ/2`, with the Stirling estimate of its log.
fn binomial_oracle(n: u64, delta: Rational) -> (BigUint, f64) {
    let mut sum = BigUint::zero();
    let mut stirling = 0.0;
    for m in 0..=n {
        let dev = (r(m as i128, n as i128) - r(1, 2)).abs();
        if dev < delta / 2 {
            sum += binomial(n, m);
            let p = m as f64 / n as f64;
            let h = -(p * p.ln() + (1.0 - p) * (1.0 - p).ln());
            stirling += (n as f64 * h - 0.5 * (2.0 * std::f64::consts::PI * n as f64 * p * (1.0 - p)).ln()).exp();
        }
    }
    (sum, stirling.ln())
}

#[test]
fn criterion_6_bernoulli_entropy() {
    let start = Instant::now();
    let model: MeasureModel = BernoulliShift::uniform(2, 1).unwrap().into();
    let coord = IndexedPartition::coordinate(GroupWord::identity(), 2).unwrap();
    let delta = r(1, 20);
    let mut ok = true;
    let mut values = Vec::new();
    for n in [64u64, 128, 256] {
        let b = FiniteAction::cyclic(n as usize);
        let rep = count_homs(&model, &coord, &coord, &[GroupWord::identity()], &delta, &b, &CountMethod::exact()).unwrap();
        let h = entropy_value(&rep.restricted_count, n as usize);
        let (oracle, stirling_ln) = binomial_oracle(n, delta);
        let oracle_h = ln_big(&oracle) / n as f64;
        ok &= rep.restricted_count.exact() == Some(&oracle);
        ok &= (h - 2f64.ln()).abs() <= 0.08;
        ok &= (h - oracle_h).abs() < 1e-9;
        ok &= (stirling_ln - ln_big(&oracle)).abs() / ln_big(&oracle) < 0.01;
        values.push(format!("n={n}: {h:.4}"));
    }
    report("6", ok, &format!("{} (log 2 = 0.6931, exact binomial oracle matched)", values.join(", ")), start, Duration::from_secs(60));
}

#[test]
fn criterion_7_genprof_bound() {
    let start = Instant::now();
    let t = odometer_tower(2, 12).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for eps in [0.5, 0.25] {
        let g = genprof_partition(&t, eps, 12).unwrap();
        let n = g.start_level;
        let minimal = n == 1 || genprof_bound(n - 1) >= eps;
        ok &= g.entropy <= eps && genprof_bound(n) < eps && minimal;
        notes.push(format!("eps={eps}: N={n}, bound {:.4}, H={:.4}", genprof_bound(n), g.entropy));
    }
    report("7", ok, &notes.join("; "), start, Duration::from_secs(30));
}

/// The stated levels N = 8 and N = 10 are not the smallest levels meeting the bound.
#[test]
fn criterion_7_stated_levels() {
    let start = Instant::now();
    let t = odometer_tower(2, 12).unwrap();
    let got: Vec<u32> = [0.5, 0.25].iter().map(|&e| genprof_partition(&t, e, 12).unwrap().start_level).collect();
    report(
        "7 (stated N values)",
        got == [8, 10],
        &format!("expected N = [8, 10], smallest levels meeting the bound are {got:?}"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_8_sofic_validation() {
    let start = Instant::now();
    let t = odometer_tower(2, 8).unwrap();
    let z = SoficApproximation::from_tower(&t, vec![], vec![w("a"), w("aa"), w("aaa")]).unwrap();
    let odometer = validate_sofic(&z, 0.30, 0.70).unwrap().pass;

    let ident: Vec<FiniteAction> = (1..=8).map(|l| FiniteAction::trivial(1 << l, 1)).collect();
    let ident = SoficApproximation::new(ident, vec![], vec![w("a")]).unwrap();
    let identity_fails = !validate_sofic(&ident, 0.30, 0.70).unwrap().pass;

    // a generates the odometer, b acts trivially
    let levels: Vec<FiniteAction> = (1..=8)
        .map(|l| {
            let n = 1usize << l;
            FiniteAction::from_images(vec![(0..n).map(|x| (x + 1) % n).collect(), (0..n).collect()]).unwrap()
        })
        .collect();
    let kernel = SoficApproximation::new(levels, vec![w("b")], vec![w("a"), w("aa"), w("aaa")]).unwrap();
    let kernel_rep = validate_sofic(&kernel, 0.30, 0.70).unwrap();
    let kernel_pass = kernel_rep.kernel.iter().all(|k| k.pass) && kernel_rep.pass;

    report(
        "8",
        odometer && identity_fails && kernel_pass,
        &format!("odometer pass {odometer}, identity sequence fails {identity_fails}, trivial kernel word pass {kernel_pass}"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_9_monte_carlo_calibration() {
    let start = Instant::now();
    let a = FiniteAction::cyclic(4);
    let model: MeasureModel = a.clone().into();
    let alpha = IndexedPartition::from_assignment(2, vec![0, 0, 1, 1]).unwrap();
    let xi = IndexedPartition::one_block(4);
    let words = vec![w("a")];
    let b = FiniteAction::cyclic(6);
    let delta = r(2, 3);
    let exact = count_homs(&model, &xi, &alpha, &words, &delta, &b, &CountMethod::exact()).unwrap();
    let truth = exact.total_valid.as_f64();
    let space = 4f64.powi(6);
    let mut inside = 0;
    for seed in 0..100 {
        let mc = count_homs(&model, &xi, &alpha, &words, &delta, &b, &CountMethod::MonteCarlo { samples: 2_000, seed }).unwrap();
        let est = mc.total_valid.as_f64();
        if (est - truth).abs() <= mc.ci95.unwrap() {
            inside += 1;
        }
    }
    report(
        "9",
        inside >= 90 && truth > 0.0,
        &format!("exact count {truth} of {space}, inside the 95% interval in {inside}/100 seeds"),
        start,
        Duration::from_secs(180),
    );
}

fn run_cli(config: &Path, out: &Path, threads: usize, command: &str) {
    let status = Command::new(env!("CARGO_BIN_EXE_sofic"))
        .args([command, "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(["--seed", "17", "--threads", &threads.to_string()])
        .output()
        .expect("run sofic");
    assert!(status.status.success(), "{command} failed: {}", String::from_utf8_lossy(&status.stderr));
}

const DETERMINISM_CONFIG: &str = r#"
version = 1

[dist]
kind = "sym"
a = "random:2:7:3"
b = "random:2:9:4"
words = ["a", "b", "ab"]
k = 3
outer = { mode = "local", restarts = 3, max_moves = 20 }
inner = { mode = "local", restarts = 3, max_moves = 500 }

[tower]
tower = "odometer:2:5"
words = ["1", "a", "A"]
k = 2

[entropy]
source = "cyclic:4"
xi = "one"
alphas = ["interval:2", "singletons"]
words = [["a"], ["a", "aa"]]
deltas = ["1/2", "1"]
sigma = ["cyclic:4", "cyclic:5", "cyclic:6"]
method = "monte-carlo"
samples = 3000

[validate]
random = { generators = 2, sizes = [20, 40, 80] }

[genprof]
tower = "odometer:2:10"
eps = 0.5

[catalog]
entries = ["cyclic:5", "random:2:6:1", "odometer:3:3:2*cyclic:3"]
words = ["a", "aa", "A"]
"#;

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("experiment.toml");
    std::fs::write(&config, DETERMINISM_CONFIG).unwrap();
    let commands = ["dist", "tower-converge", "entropy", "validate-sofic", "genprof", "catalog"];
    let mut compared = 0;
    let mut differing = Vec::new();
    for threads in [1, 4] {
        for c in commands {
            run_cli(&config, &dir.path().join(format!("t{threads}")), threads, c);
        }
    }
    for c in commands {
        for ext in ["csv", "json"] {
            let one = std::fs::read(dir.path().join("t1").join(format!("{c}.{ext}"))).unwrap();
            let four = std::fs::read(dir.path().join("t4").join(format!("{c}.{ext}"))).unwrap();
            compared += 1;
            if one != four {
                differing.push(format!("{c}.{ext}"));
            }
        }
    }
    report(
        "10",
        differing.is_empty(),
        &format!("{compared} files compared at 1 and 4 threads, differing: {differing:?}"),
        start,
        Duration::from_secs(300),
    );
}
