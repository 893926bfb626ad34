//! Measure models: the actions statistics are computed on.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::tower::Tower;
use crate::words::FiniteAction;

/// The Bernoulli shift of the free group on `generators` generators with
/// base distribution `probs` on the alphabet `{0..probs.len()-1}`.
///
/// A point is a labelling `x: F → alphabet` and `(g·x)(h) = x(g⁻¹h)`, so the
/// cylinder over coordinate `s` is carried by `g` onto the cylinder over `gs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliShift {
    probs: Vec<Rational>,
    generators: usize,
}

impl BernoulliShift {
    pub fn new(probs: Vec<Rational>, generators: usize) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::input("Bernoulli shift needs a nonempty alphabet"));
        }
        if probs.iter().any(|p| *p <= Rational::zero()) {
            return Err(Error::input("Bernoulli base probabilities must be positive"));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::input(format!(
                "Bernoulli base probabilities sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(BernoulliShift { probs, generators })
    }

    pub fn uniform(alphabet: usize, generators: usize) -> Result<Self> {
        let p = Rational::new(1, alphabet.max(1) as i128);
        BernoulliShift::new(vec![p; alphabet], generators)
    }

    pub fn alphabet(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn generators(&self) -> usize {
        self.generators
    }
}

#[derive(Clone, Debug)]
pub enum MeasureModel {
    Finite(FiniteAction),
    /// Level `level` (1-based) of a validated tower.
    TowerLevel { tower: Arc<Tower>, level: usize },
    Bernoulli(BernoulliShift),
}

impl MeasureModel {
    pub fn tower_level(tower: Arc<Tower>, level: usize) -> Result<Self> {
        tower.level(level)?;
        Ok(MeasureModel::TowerLevel { tower, level })
    }

    /// The underlying finite action, for finite carriers.
    pub fn finite_action(&self) -> Option<&FiniteAction> {
        match self {
            MeasureModel::Finite(a) => Some(a),
            MeasureModel::TowerLevel { tower, level } => tower.level(*level).ok(),
            MeasureModel::Bernoulli(_) => None,
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            MeasureModel::Bernoulli(b) => b.generators,
            _ => self.finite_action().map_or(0, FiniteAction::generator_count),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MeasureModel::Finite(a) => format!(
                "finite action on {} points, {} generators",
                a.size(),
                a.generator_count()
            ),
            MeasureModel::TowerLevel { tower, level } => format!(
                "tower level {level} of {} ({} points)",
                tower.depth(),
                tower.level(*level).map_or(0, FiniteAction::size)
            ),
            MeasureModel::Bernoulli(b) => format!(
                "Bernoulli shift over {} generators, base ({})",
                b.generators,
                b.probs.iter().map(format_rational).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

impl From<FiniteAction> for MeasureModel {
    fn from(a: FiniteAction) -> Self {
        MeasureModel::Finite(a)
    }
}

impl From<BernoulliShift> for MeasureModel {
    fn from(b: BernoulliShift) -> Self {
        MeasureModel::Bernoulli(b)
    }
}
