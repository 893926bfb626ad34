//! Statistics vectors `μ(A_i ∩ w A_j)` and their L1 distance.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::MeasureModel;
use crate::partition::{block_measures, translate, IndexedPartition, PartitionCarrier};
use crate::rational::{self, to_f64, Rational};
use crate::words::GroupWord;

/// Entries are stored word-major: `entries[(w * k + i) * k + j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatsVector {
    k: usize,
    words: Vec<GroupWord>,
    #[serde(skip)]
    entries: Vec<Rational>,
}

impl StatsVector {
    pub fn block_count(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> &[GroupWord] {
        &self.words
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Entry for block pair `(i, j)` and the `w`-th word.
    pub fn entry(&self, i: usize, j: usize, w: usize) -> Rational {
        self.entries[(w * self.k + i) * self.k + j]
    }

    pub fn get(&self, i: usize, j: usize, word: &GroupWord) -> Option<Rational> {
        let w = self.words.iter().position(|u| u == word)?;
        Some(self.entry(i, j, w))
    }

    /// The `k × k` layer of the `w`-th word.
    pub fn layer(&self, w: usize) -> &[Rational] {
        &self.entries[w * self.k * self.k..(w + 1) * self.k * self.k]
    }
}

/// Exact statistics vector of `p` under the words `words`.
pub fn stats(m: &MeasureModel, words: &[GroupWord], p: &IndexedPartition) -> Result<StatsVector> {
    p.check_model(m)?;
    let k = p.block_count();
    let mut entries = Vec::with_capacity(words.len() * k * k);
    for w in words {
        match p.carrier() {
            PartitionCarrier::Points(assign) => {
                let act = m.finite_action().expect("checked");
                let back = act.evaluate(&w.inverse())?;
                let mut counts = vec![0i128; k * k];
                for (x, &i) in assign.iter().enumerate() {
                    counts[i * k + assign[back.apply(x)]] += 1;
                }
                let n = assign.len() as i128;
                entries.extend(counts.into_iter().map(|c| Rational::new(c, n)));
            }
            PartitionCarrier::Cylinder(_) => {
                let joint = p.join(&translate(m, w, p)?)?;
                entries.extend(block_measures(m, &joint)?);
            }
        }
    }
    Ok(StatsVector { k, words: words.to_vec(), entries })
}

/// `Σ |s − t|` over all entries; both vectors must share block count and words.
pub fn stats_l1(s: &StatsVector, t: &StatsVector) -> Result<Rational> {
    if s.k != t.k || s.words != t.words {
        return Err(Error::input(
            "statistics vectors differ in block count or word list",
        ));
    }
    Ok(rational::l1(&s.entries, &t.entries))
}

/// Shannon entropy with natural logarithm; empty blocks contribute 0.
pub fn shannon_entropy(m: &MeasureModel, p: &IndexedPartition) -> Result<f64> {
    Ok(entropy_of_measures(&block_measures(m, p)?))
}

pub(crate) fn entropy_of_measures(measures: &[Rational]) -> f64 {
    measures
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| {
            let v = to_f64(x);
            -v * v.ln()
        })
        .sum()
}
