use std::sync::Arc;

use serde::Serialize;
use sofic_core::entropy::format_entropy;
use sofic_core::rational::{format_rational, parse_rational, to_f64};
use sofic_core::{
    d_inf, d_sup, d_sym, entropy_grid, genprof_partition, tower_convergence,
    validate_sofic, CountMethod, FiniteAction, GroupWord, Rational, SearchStrategy,
    SoficApproximation, DEFAULT_BUDGET,
};

use crate::config::{Config, StrategyConfig};
use crate::error::{input, CliError};
use crate::output::Table;
use crate::refs::{parse_words, Resolver};

pub struct Ctx<'a> {
    pub cfg: &'a Config,
    pub refs: &'a Resolver,
    pub seed: u64,
    pub budget: u64,
}

/// What a subcommand produces before it is written out.
pub struct Outcome {
    pub exact: bool,
    pub table: Table,
    pub report: serde_json::Value,
    /// Lines echoed to stdout.
    pub summary: Vec<String>,
}

fn to_json<T: Serialize>(v: &T) -> Result<serde_json::Value, CliError> {
    serde_json::to_value(v).map_err(|e| input(format!("serializing report: {e}")))
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    s.as_ref().ok_or_else(|| input(format!("config has no [{name}] table")))
}

fn strategy(c: Option<&StrategyConfig>, fallback: SearchStrategy, ctx: &Ctx) -> Result<SearchStrategy, CliError> {
    let s = match c {
        None => fallback,
        Some(c) => match c.mode.as_str() {
            "exhaustive" => SearchStrategy::exhaustive(),
            "local" => SearchStrategy::local(c.restarts, c.max_moves, ctx.seed),
            other => return Err(input(format!("unknown search mode `{other}`"))),
        },
    };
    Ok(s.with_budget(ctx.budget))
}

fn ratio_fields(r: &Rational) -> [String; 2] {
    [format_rational(r), format!("{:.12}", to_f64(r))]
}

pub fn catalog(ctx: &Ctx) -> Result<Outcome, CliError> {
    let cfg = section(&ctx.cfg.catalog, "catalog")?;
    #[derive(Serialize)]
    struct Entry {
        name: String,
        size: usize,
        generators: usize,
    }
    let mut table = Table::new(&["name", "size", "generators", "word", "fix_ratio", "fix_ratio_f64"]);
    let mut entries = Vec::new();
    for name in &cfg.entries {
        let a = ctx.refs.action(name)?;
        let words = if cfg.words.is_empty() {
            (0..a.generator_count()).map(GroupWord::generator).collect()
        } else {
            parse_words(&cfg.words)?
        };
        for w in &words {
            let [exact, float] = ratio_fields(&a.fix_ratio(w)?);
            table.row(vec![name.clone(), a.size().to_string(), a.generator_count().to_string(), w.to_string(), exact, float]);
        }
        entries.push(Entry { name: name.clone(), size: a.size(), generators: a.generator_count() });
    }
    let summary = entries.iter().map(|e| format!("{} size {} generators {}", e.name, e.size, e.generators)).collect();
    Ok(Outcome { exact: true, table, report: to_json(&entries)?, summary })
}

pub fn dist(ctx: &Ctx) -> Result<Outcome, CliError> {
    let cfg = section(&ctx.cfg.dist, "dist")?;
    let words = parse_words(&cfg.words)?;
    let outer = strategy(cfg.outer.as_ref(), SearchStrategy::exhaustive(), ctx)?;
    let inner = strategy(cfg.inner.as_ref().or(cfg.outer.as_ref()), SearchStrategy::exhaustive(), ctx)?;
    let k = || cfg.k.ok_or_else(|| input("`k` is required for sup and sym distances"));
    let mut table = Table::new(&["quantity", "value", "value_f64", "exact", "evaluations"]);
    let mut push = |q: &str, v: &Rational, exact: bool, evals: u64| {
        let [e, f] = ratio_fields(v);
        table.row(vec![q.into(), e, f, exact.to_string(), evals.to_string()]);
    };
    let (exact, report, value) = match cfg.kind.as_str() {
        "inf" => {
            let a = ctx.refs.model(&cfg.a)?;
            let b = ctx.refs.action(&cfg.b)?;
            let p = cfg.partition.as_ref().ok_or_else(|| input("`partition` is required for inf"))?;
            let alpha = ctx.refs.partition(p, &a)?;
            let rep = d_inf(&a, &b, &words, &alpha, &outer)?;
            push("d_inf", &rep.value, rep.exact, rep.evaluations);
            (rep.exact, to_json(&rep)?, rep.value)
        }
        "sup" => {
            let a = ctx.refs.model(&cfg.a)?;
            let b = ctx.refs.action(&cfg.b)?;
            let rep = d_sup(&a, &b, &words, k()?, &outer, &inner)?;
            push("d_sup", &rep.value, rep.exact, rep.evaluations);
            (rep.exact, to_json(&rep)?, rep.value)
        }
        "sym" => {
            let a = ctx.refs.action(&cfg.a)?;
            let b = ctx.refs.action(&cfg.b)?;
            let rep = d_sym(&a, &b, &words, k()?, &outer, &inner)?;
            push("d_sup_forward", &rep.forward.value, rep.forward.exact, rep.forward.evaluations);
            push("d_sup_backward", &rep.backward.value, rep.backward.exact, rep.backward.evaluations);
            push("d_sym", &rep.value, rep.exact, rep.forward.evaluations + rep.backward.evaluations);
            (rep.exact, to_json(&rep)?, rep.value)
        }
        other => return Err(input(format!("unknown distance kind `{other}` (expected inf, sup or sym)"))),
    };
    Ok(Outcome {
        exact,
        table,
        report,
        summary: vec![format!("{} {} exact={exact}", cfg.kind, format_rational(&value))],
    })
}

pub fn tower(ctx: &Ctx) -> Result<Outcome, CliError> {
    let cfg = section(&ctx.cfg.tower, "tower")?;
    let t = Arc::new(ctx.refs.tower(&cfg.tower)?);
    let words = parse_words(&cfg.words)?;
    let outer = strategy(cfg.outer.as_ref(), SearchStrategy::local(2, 50, ctx.seed), ctx)?;
    let inner = strategy(cfg.inner.as_ref(), SearchStrategy::local(2, 2_000, ctx.seed), ctx)?;
    let rep = tower_convergence(&t, &words, cfg.k, &outer, &inner)?;
    let mut table = Table::new(&["kind", "m", "n", "value", "value_f64", "exact"]);
    for c in &rep.cells {
        let [e, f] = ratio_fields(&c.value);
        table.row(vec!["d_sym".into(), c.m.to_string(), c.n.to_string(), e, f, c.exact.to_string()]);
    }
    for c in &rep.factor_checks {
        let [e, f] = ratio_fields(&c.value);
        // zero is a certified minimum even when found by local search
        let exact = c.value == Rational::from_integer(0);
        table.row(vec!["factor_d_inf".into(), c.m.to_string(), c.n.to_string(), e, f, exact.to_string()]);
    }
    let exact = rep.cells.iter().all(|c| c.exact);
    let trend = rep.trend.map_or("none".into(), |t| format!("{t:.12}"));
    let summary = vec![
        format!("cells {} exact={exact}", rep.cells.len()),
        format!("factor direction all zero: {}", rep.factor_checks.iter().all(|c| c.value == Rational::from_integer(0))),
        format!("trend {trend}"),
    ];
    Ok(Outcome { exact, table, report: to_json(&rep)?, summary })
}

pub fn entropy(ctx: &Ctx) -> Result<Outcome, CliError> {
    let cfg = section(&ctx.cfg.entropy, "entropy")?;
    let a = ctx.refs.model(&cfg.source)?;
    let xi = ctx.refs.partition(&cfg.xi, &a)?;
    let alphas = cfg.alphas.iter().map(|p| ctx.refs.partition(p, &a)).collect::<Result<Vec<_>, _>>()?;
    let word_sets = cfg.words.iter().map(|ws| parse_words(ws)).collect::<Result<Vec<_>, _>>()?;
    let deltas = cfg.deltas.iter().map(|d| parse_rational(d)).collect::<Result<Vec<_>, _>>()?;
    let sigma = cfg.sigma.iter().map(|s| ctx.refs.action(s)).collect::<Result<Vec<_>, _>>()?;
    let method = match cfg.method.as_str() {
        "exact" => CountMethod::Exact { budget: ctx.budget },
        "monte-carlo" => CountMethod::MonteCarlo { samples: cfg.samples, seed: ctx.seed },
        other => return Err(input(format!("unknown counting method `{other}`"))),
    };
    let rep = entropy_grid(&a, &xi, &alphas, &word_sets, &deltas, &sigma, &method)?;
    let mut table = Table::new(&["alpha", "words", "delta", "level", "n", "count", "value", "algorithm"]);
    for c in &rep.cells {
        table.row(vec![
            c.alpha.to_string(),
            c.words.to_string(),
            format_rational(&c.delta),
            c.level.to_string(),
            c.n.to_string(),
            c.count.to_string(),
            format_entropy(c.value),
            c.algorithm.into(),
        ]);
    }
    let exact = matches!(method, CountMethod::Exact { .. });
    let summary = rep
        .aggregates
        .iter()
        .map(|g| format!("n {} entropy {}", g.n, format_entropy(g.value)))
        .chain([format!(
            "window limsup {} liminf {}",
            format_entropy(rep.window_limsup),
            format_entropy(rep.window_liminf)
        )])
        .collect();
    Ok(Outcome { exact, table, report: to_json(&rep)?, summary })
}

/// Every nonempty reduced word of length at most 3.
fn default_probes(generators: usize) -> Vec<GroupWord> {
    GroupWord::all_reduced(generators, 3)
}

pub fn validate(ctx: &Ctx) -> Result<Outcome, CliError> {
    let cfg = section(&ctx.cfg.validate, "validate")?;
    let kernel = parse_words(&cfg.kernel)?;
    let probes = cfg.probes.as_ref().map(|p| parse_words(p)).transpose()?;
    let actions: Vec<FiniteAction> = match (&cfg.tower, &cfg.actions, &cfg.random) {
        (Some(t), None, None) => ctx.refs.tower(t)?.levels().to_vec(),
        (None, Some(list), None) => list.iter().map(|a| ctx.refs.action(a)).collect::<Result<_, _>>()?,
        (None, None, Some(r)) => sofic_core::random_sofic(r.generators, &r.sizes, ctx.seed)?.actions,
        _ => return Err(input("[validate] needs exactly one of `tower`, `actions` or `random`")),
    };
    let generators = actions.first().map_or(1, FiniteAction::generator_count);
    let sigma = SoficApproximation::new(actions, kernel, probes.unwrap_or_else(|| default_probes(generators)))?;
    let rep = validate_sofic(&sigma, cfg.lo, cfg.hi)?;
    let mut table = Table::new(&["role", "word", "level", "n", "fix_ratio", "fix_ratio_f64"]);
    for (role, list) in [("kernel", &rep.kernel), ("probe", &rep.probes)] {
        for t in list {
            for (l, (r, n)) in t.fix_ratios.iter().zip(&rep.sizes).enumerate() {
                let [e, f] = ratio_fields(r);
                table.row(vec![role.into(), t.word.clone(), (l + 1).to_string(), n.to_string(), e, f]);
            }
        }
    }
    let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
    let mut summary: Vec<String> = rep
        .kernel
        .iter()
        .map(|t| format!("kernel {} {}", t.word, verdict(t.pass)))
        .chain(rep.probes.iter().map(|t| format!("probe {} {}", t.word, verdict(t.pass))))
        .collect();
    summary.push(format!("overall {}", verdict(rep.pass)));
    Ok(Outcome { exact: true, table, report: to_json(&rep)?, summary })
}

pub fn genprof(ctx: &Ctx) -> Result<Outcome, CliError> {
    let cfg = section(&ctx.cfg.genprof, "genprof")?;
    let t = ctx.refs.tower(&cfg.tower)?;
    let depth = cfg.depth.unwrap_or(t.depth());
    let g = genprof_partition(&t, cfg.eps, depth)?;
    let top = t.level(depth)?;
    let measures = sofic_core::block_measures(&top.clone().into(), &g.partition)?;
    let mut table = Table::new(&["block", "level", "point", "measure", "measure_f64"]);
    for (b, m) in measures.iter().enumerate() {
        let (level, point) = match b {
            0 => (String::new(), String::new()),
            _ => (g.chosen[b - 1].0.to_string(), g.chosen[b - 1].1.to_string()),
        };
        let [e, f] = ratio_fields(m);
        table.row(vec![b.to_string(), level, point, e, f]);
    }
    let summary = vec![
        format!("N {} bound {:.12}", g.start_level, g.bound),
        format!("entropy {:.12} <= eps {}: {}", g.entropy, cfg.eps, g.entropy <= cfg.eps),
    ];
    Ok(Outcome { exact: true, table, report: to_json(&g)?, summary })
}

pub fn default_budget(cfg: &Config, flag: Option<u64>) -> u64 {
    flag.or(cfg.budget).unwrap_or(DEFAULT_BUDGET)
}
