//! Catalog names for actions, models, towers, partitions and words.
//!
//! Actions: `cyclic:N`, `trivial:N[:R]`, `odometer:B:D:L` (level `L` of the
//! base-`B` odometer of depth `D`), `random:R:N:SEED`, `file:PATH`,
//! `tower:PATH:L`, and diagonal products `X*Y`.
//! Models: any action, or `bernoulli:P1,P2,...:R`.
//! Towers: `odometer:B:D` or `file:PATH`.
//! Partitions: `blocks:0,0,1,...`, `singletons`, `one`, `interval:K`,
//! `coord:WORD` (Bernoulli only) or `file:PATH`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sofic_core::format::{action_from_text, partition_from_text, tower_from_text};
use sofic_core::rational::parse_rational;
use sofic_core::{
    diagonal_product, odometer_tower, BernoulliShift, FiniteAction, GroupWord, IndexedPartition,
    MeasureModel, Permutation, Tower,
};

use crate::error::{input, CliError};

pub struct Resolver {
    base: PathBuf,
}

fn parts(name: &str) -> (&str, Vec<&str>) {
    let mut it = name.split(':');
    let head = it.next().unwrap_or("");
    (head, it.collect())
}

fn num<T: std::str::FromStr>(name: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| input(format!("`{name}`: `{v}` is not a valid number")))
}

pub fn parse_words(items: &[String]) -> Result<Vec<GroupWord>, CliError> {
    Ok(sofic_core::words::parse_words(items)?)
}

impl Resolver {
    pub fn new(config_path: &Path) -> Self {
        Resolver {
            base: config_path.parent().map(Path::to_path_buf).unwrap_or_default(),
        }
    }

    fn read(&self, path: &str) -> Result<String, CliError> {
        let p = self.base.join(path);
        std::fs::read_to_string(&p).map_err(|e| input(format!("cannot read {}: {e}", p.display())))
    }

    pub fn tower(&self, name: &str) -> Result<Tower, CliError> {
        let (head, args) = parts(name);
        match (head, args.as_slice()) {
            ("odometer", [b, d]) => Ok(odometer_tower(num(name, b)?, num(name, d)?)?),
            ("file", [path]) => Ok(tower_from_text(&self.read(path)?)?),
            _ => Err(input(format!("unknown tower `{name}`"))),
        }
    }

    /// A tower level named by `name`, if it is one.
    fn tower_level(&self, name: &str) -> Result<Option<(Arc<Tower>, usize)>, CliError> {
        let (head, args) = parts(name);
        match (head, args.as_slice()) {
            ("odometer", [b, d, l]) => Ok(Some((Arc::new(odometer_tower(num(name, b)?, num(name, d)?)?), num(name, l)?))),
            ("tower", [path, l]) => Ok(Some((Arc::new(tower_from_text(&self.read(path)?)?), num(name, l)?))),
            _ => Ok(None),
        }
    }

    pub fn action(&self, name: &str) -> Result<FiniteAction, CliError> {
        if name.contains('*') {
            let mut factors = name.split('*').map(|f| self.action(f.trim()));
            let first = factors.next().expect("split yields one item")?;
            return factors.try_fold(first, |acc, f| Ok(diagonal_product(&acc, &f?)?));
        }
        if let Some((t, l)) = self.tower_level(name)? {
            return Ok(t.level(l)?.clone());
        }
        let (head, args) = parts(name);
        match (head, args.as_slice()) {
            ("cyclic", [n]) => Ok(FiniteAction::cyclic(positive(name, n)?)),
            ("trivial", [n]) => Ok(FiniteAction::trivial(positive(name, n)?, 1)),
            ("trivial", [n, r]) => Ok(FiniteAction::trivial(positive(name, n)?, num(name, r)?)),
            ("random", [r, n, seed]) => {
                let (r, n): (usize, usize) = (num(name, r)?, positive(name, n)?);
                let mut rng = ChaCha8Rng::seed_from_u64(num(name, seed)?);
                let gens = (0..r)
                    .map(|_| {
                        let mut img: Vec<usize> = (0..n).collect();
                        img.shuffle(&mut rng);
                        Permutation::new(img)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FiniteAction::new(n, gens)?)
            }
            ("file", [path]) => Ok(action_from_text(&self.read(path)?)?),
            _ => Err(input(format!("unknown action `{name}`"))),
        }
    }

    pub fn model(&self, name: &str) -> Result<MeasureModel, CliError> {
        let (head, args) = parts(name);
        if head == "bernoulli" {
            let [probs, r] = args.as_slice() else {
                return Err(input(format!("`{name}`: expected bernoulli:P1,P2,...:R")));
            };
            let probs = probs.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            return Ok(BernoulliShift::new(probs, num(name, r)?)?.into());
        }
        if !name.contains('*') {
            if let Some((t, l)) = self.tower_level(name)? {
                return Ok(MeasureModel::tower_level(t, l)?);
            }
        }
        Ok(self.action(name)?.into())
    }

    pub fn partition(&self, name: &str, model: &MeasureModel) -> Result<IndexedPartition, CliError> {
        let (head, args) = parts(name);
        if let MeasureModel::Bernoulli(b) = model {
            return match (head, args.as_slice()) {
                ("coord", [w]) => Ok(IndexedPartition::coordinate(w.parse()?, b.alphabet())?),
                ("one", []) => Ok(IndexedPartition::cylinder(vec![], b.alphabet(), 1, vec![0])?),
                ("file", [path]) => Ok(partition_from_text(&self.read(path)?)?),
                _ => Err(input(format!("`{name}` is not a partition of a Bernoulli shift"))),
            };
        }
        let n = model.finite_action().expect("finite model").size();
        match (head, args.as_slice()) {
            ("blocks", [list]) => {
                let assign = list.split(',').map(|v| num(name, v.trim())).collect::<Result<Vec<usize>, _>>()?;
                if assign.len() != n {
                    return Err(input(format!("`{name}` has {} entries, the carrier has {n} points", assign.len())));
                }
                let k = assign.iter().max().map_or(1, |m| m + 1);
                Ok(IndexedPartition::from_assignment(k, assign)?)
            }
            ("singletons", []) => Ok(IndexedPartition::singletons(n)),
            ("one", []) => Ok(IndexedPartition::one_block(n)),
            ("interval", [k]) => Ok(IndexedPartition::intervals(n, positive(name, k)?)?),
            ("file", [path]) => Ok(partition_from_text(&self.read(path)?)?),
            _ => Err(input(format!("unknown partition `{name}`"))),
        }
    }
}

fn positive(name: &str, v: &str) -> Result<usize, CliError> {
    let n: usize = num(name, v)?;
    if n == 0 {
        return Err(input(format!("`{name}`: sizes must be positive")));
    }
    Ok(n)
}
