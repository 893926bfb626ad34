//! Ordered partitions with empty blocks allowed.
//!
//! A partition lives either on the points of a finite carrier (an assignment
//! array) or on a Bernoulli shift as a cylinder partition: a finite set of
//! coordinates plus a table sending each labelling of those coordinates to a
//! block. Labellings are indexed with the first coordinate as the most
//! significant base-`alphabet` digit.
//!
//! Joins index blocks by pairs `(i, j)` in row-major order, so iterated joins
//! order blocks lexicographically in the tuple of input block indices.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::MeasureModel;
use crate::rational::Rational;
use crate::words::{FiniteAction, GroupWord};

/// Largest number of labellings a cylinder partition may enumerate.
pub const MAX_CYLINDER_LABELINGS: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderPartition {
    coords: Vec<GroupWord>,
    alphabet: usize,
    table: Vec<usize>,
}

impl CylinderPartition {
    pub fn coords(&self) -> &[GroupWord] {
        &self.coords
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Symbol at coordinate position `t` of labelling `index`.
    #[inline]
    fn digit(&self, index: usize, t: usize) -> usize {
        let shift = self.coords.len() - 1 - t;
        (index / self.alphabet.pow(shift as u32)) % self.alphabet
    }
}

fn labelings(alphabet: usize, coords: usize) -> Result<usize> {
    alphabet
        .checked_pow(coords as u32)
        .filter(|&n| n <= MAX_CYLINDER_LABELINGS)
        .ok_or_else(|| {
            Error::input(format!(
                "cylinder over {coords} coordinates and alphabet {alphabet} is too large"
            ))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PartitionCarrier {
    Points(Vec<usize>),
    Cylinder(CylinderPartition),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexedPartition {
    block_count: usize,
    carrier: PartitionCarrier,
}

impl IndexedPartition {
    pub fn from_assignment(block_count: usize, assignment: Vec<usize>) -> Result<Self> {
        if block_count == 0 {
            return Err(Error::input("a partition needs at least one block"));
        }
        if assignment.is_empty() {
            return Err(Error::input("a partition needs a nonempty carrier"));
        }
        if let Some(b) = assignment.iter().find(|&&b| b >= block_count) {
            return Err(Error::input(format!("block index {b} out of range 0..{block_count}")));
        }
        Ok(IndexedPartition {
            block_count,
            carrier: PartitionCarrier::Points(assignment),
        })
    }

    /// Builds a point partition from explicit blocks, which must cover `0..n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in *block {
                if x >= n || assignment[x] != usize::MAX {
                    return Err(Error::input(format!("point {x} missing or repeated in blocks")));
                }
                assignment[x] = b;
            }
        }
        if assignment.contains(&usize::MAX) {
            return Err(Error::input("blocks do not cover the carrier"));
        }
        IndexedPartition::from_assignment(blocks.len(), assignment)
    }

    /// The 1-block partition of `n` points.
    pub fn one_block(n: usize) -> Self {
        IndexedPartition::from_assignment(1, vec![0; n]).expect("valid")
    }

    pub fn singletons(n: usize) -> Self {
        IndexedPartition::from_assignment(n, (0..n).collect()).expect("valid")
    }

    /// `x ↦ ⌊x·k/n⌋`: `k` contiguous blocks of nearly equal size.
    pub fn intervals(n: usize, k: usize) -> Result<Self> {
        IndexedPartition::from_assignment(k, (0..n).map(|x| x * k / n).collect())
    }

    pub fn cylinder(
        coords: Vec<GroupWord>,
        alphabet: usize,
        block_count: usize,
        table: Vec<usize>,
    ) -> Result<Self> {
        if alphabet == 0 || block_count == 0 {
            return Err(Error::input("cylinder partition needs a nonempty alphabet and blocks"));
        }
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(Error::input(format!("repeated cylinder coordinate {c}")));
            }
        }
        let expected = labelings(alphabet, coords.len())?;
        if table.len() != expected {
            return Err(Error::input(format!(
                "cylinder table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(b) = table.iter().find(|&&b| b >= block_count) {
            return Err(Error::input(format!("block index {b} out of range 0..{block_count}")));
        }
        Ok(IndexedPartition {
            block_count,
            carrier: PartitionCarrier::Cylinder(CylinderPartition { coords, alphabet, table }),
        })
    }

    /// The partition by the symbol at coordinate `word`.
    pub fn coordinate(word: GroupWord, alphabet: usize) -> Result<Self> {
        IndexedPartition::cylinder(vec![word], alphabet, alphabet, (0..alphabet).collect())
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn carrier(&self) -> &PartitionCarrier {
        &self.carrier
    }

    pub fn assignment(&self) -> Option<&[usize]> {
        match &self.carrier {
            PartitionCarrier::Points(a) => Some(a),
            PartitionCarrier::Cylinder(_) => None,
        }
    }

    pub fn as_cylinder(&self) -> Option<&CylinderPartition> {
        match &self.carrier {
            PartitionCarrier::Cylinder(c) => Some(c),
            PartitionCarrier::Points(_) => None,
        }
    }

    /// Point blocks in block order; `None` for cylinder partitions.
    pub fn blocks(&self) -> Option<Vec<Vec<usize>>> {
        let a = self.assignment()?;
        let mut blocks = vec![Vec::new(); self.block_count];
        for (x, &b) in a.iter().enumerate() {
            blocks[b].push(x);
        }
        Some(blocks)
    }

    fn same_carrier(&self, other: &IndexedPartition) -> Result<()> {
        match (&self.carrier, &other.carrier) {
            (PartitionCarrier::Points(a), PartitionCarrier::Points(b)) if a.len() == b.len() => Ok(()),
            (PartitionCarrier::Cylinder(a), PartitionCarrier::Cylinder(b)) if a.alphabet == b.alphabet => {
                Ok(())
            }
            _ => Err(Error::input("partitions live on different carriers")),
        }
    }

    /// Checks that this partition lives on the carrier of `model`.
    pub fn check_model(&self, model: &MeasureModel) -> Result<()> {
        match (&self.carrier, model) {
            (PartitionCarrier::Points(a), m) => match m.finite_action() {
                Some(act) if act.size() == a.len() => Ok(()),
                Some(act) => Err(Error::input(format!(
                    "partition of {} points on an action of {} points",
                    a.len(),
                    act.size()
                ))),
                None => Err(Error::UnsupportedPartition(
                    "Bernoulli models need cylinder partitions".into(),
                )),
            },
            (PartitionCarrier::Cylinder(c), MeasureModel::Bernoulli(b)) => {
                if c.alphabet != b.alphabet() {
                    return Err(Error::input("cylinder alphabet differs from the Bernoulli alphabet"));
                }
                match c.coords.iter().filter_map(GroupWord::max_generator).max() {
                    Some(g) if g >= b.generators() => {
                        Err(Error::input(format!("cylinder coordinate uses generator {g}")))
                    }
                    _ => Ok(()),
                }
            }
            (PartitionCarrier::Cylinder(_), _) => Err(Error::input(
                "cylinder partitions only live on Bernoulli models",
            )),
        }
    }

    /// Common refinement; block `(i, j)` has index `i * q.block_count() + j`.
    pub fn join(&self, q: &IndexedPartition) -> Result<IndexedPartition> {
        self.same_carrier(q)?;
        let kq = q.block_count;
        let block_count = self
            .block_count
            .checked_mul(kq)
            .ok_or_else(|| Error::input("joined partition has too many blocks"))?;
        match (&self.carrier, &q.carrier) {
            (PartitionCarrier::Points(a), PartitionCarrier::Points(b)) => {
                let assignment = a.iter().zip(b).map(|(&i, &j)| i * kq + j).collect();
                IndexedPartition::from_assignment(block_count, assignment)
            }
            (PartitionCarrier::Cylinder(p), PartitionCarrier::Cylinder(c)) => {
                let mut coords = p.coords.clone();
                for w in &c.coords {
                    if !coords.contains(w) {
                        coords.push(w.clone());
                    }
                }
                let total = labelings(p.alphabet, coords.len())?;
                let q_pos: Vec<usize> = c
                    .coords
                    .iter()
                    .map(|w| coords.iter().position(|u| u == w).expect("present"))
                    .collect();
                let union = CylinderPartition {
                    coords: coords.clone(),
                    alphabet: p.alphabet,
                    table: Vec::new(),
                };
                let p_shift = p.alphabet.pow((coords.len() - p.coords.len()) as u32);
                let table = (0..total)
                    .map(|l| {
                        let i = p.table[l / p_shift];
                        let qi = q_pos
                            .iter()
                            .fold(0, |acc, &t| acc * c.alphabet + union.digit(l, t));
                        i * kq + c.table[qi]
                    })
                    .collect();
                IndexedPartition::cylinder(coords, p.alphabet, block_count, table)
            }
            _ => unreachable!("checked by same_carrier"),
        }
    }

    /// True iff every block of `q` is a union of blocks of `self`, ignoring
    /// empty blocks.
    pub fn refines(&self, q: &IndexedPartition) -> Result<bool> {
        Ok(self.block_map(q)?.is_some())
    }

    /// For a refinement, the block of `q` containing each block of `self`.
    /// Empty blocks of `self` map to block 0.
    pub fn block_map(&self, q: &IndexedPartition) -> Result<Option<Vec<usize>>> {
        let joined = self.join(q)?;
        let kq = q.block_count;
        let mut map: Vec<Option<usize>> = vec![None; self.block_count];
        for (b, present) in joined.occupied().into_iter().enumerate() {
            if !present {
                continue;
            }
            let (i, j) = (b / kq, b % kq);
            match map[i] {
                Some(prev) if prev != j => return Ok(None),
                _ => map[i] = Some(j),
            }
        }
        Ok(Some(map.into_iter().map(|m| m.unwrap_or(0)).collect()))
    }

    /// Which blocks are nonempty. Cylinder labellings all have positive
    /// measure, so a cylinder block is nonempty iff some labelling maps to it.
    pub fn occupied(&self) -> Vec<bool> {
        let mut occ = vec![false; self.block_count];
        let items: &[usize] = match &self.carrier {
            PartitionCarrier::Points(a) => a,
            PartitionCarrier::Cylinder(c) => &c.table,
        };
        for &b in items {
            occ[b] = true;
        }
        occ
    }

    /// Drops empty blocks, keeping the order of the remaining ones. Returns
    /// the compacted partition and the original index of each kept block.
    pub fn compact(&self) -> (IndexedPartition, Vec<usize>) {
        let occ = self.occupied();
        let kept: Vec<usize> = (0..self.block_count).filter(|&b| occ[b]).collect();
        let mut new_index = vec![usize::MAX; self.block_count];
        for (n, &b) in kept.iter().enumerate() {
            new_index[b] = n;
        }
        (self.relabel(&new_index, kept.len()), kept)
    }

    /// Renames block `b` to `map[b]`; merges blocks sharing a name.
    pub fn coarsen(&self, map: &[usize], block_count: usize) -> Result<IndexedPartition> {
        if map.len() != self.block_count || map.iter().any(|&b| b >= block_count) {
            return Err(Error::input("invalid block map"));
        }
        Ok(self.relabel(map, block_count))
    }

    fn relabel(&self, map: &[usize], block_count: usize) -> IndexedPartition {
        let carrier = match &self.carrier {
            PartitionCarrier::Points(a) => PartitionCarrier::Points(a.iter().map(|&b| map[b]).collect()),
            PartitionCarrier::Cylinder(c) => PartitionCarrier::Cylinder(CylinderPartition {
                table: c.table.iter().map(|&b| map[b]).collect(),
                ..c.clone()
            }),
        };
        IndexedPartition { block_count: block_count.max(1), carrier }
    }

    /// Same nonempty blocks in the same relative order.
    pub fn equivalent(&self, other: &IndexedPartition) -> bool {
        self.compact().0 == other.compact().0
    }
}

fn finite_translate(a: &FiniteAction, w: &GroupWord, p: &[usize]) -> Result<Vec<usize>> {
    let perm = a.evaluate(w)?;
    let mut out = vec![0; p.len()];
    for (y, &b) in p.iter().enumerate() {
        out[perm.apply(y)] = b;
    }
    Ok(out)
}

/// Block `i` of the result is `w · (block i of p)`.
pub fn translate(m: &MeasureModel, w: &GroupWord, p: &IndexedPartition) -> Result<IndexedPartition> {
    p.check_model(m)?;
    if w.max_generator().is_some_and(|g| g >= m.generator_count()) {
        return Err(Error::input(format!("word {w} uses an unknown generator")));
    }
    match &p.carrier {
        PartitionCarrier::Points(a) => {
            let act = m.finite_action().expect("checked");
            IndexedPartition::from_assignment(p.block_count, finite_translate(act, w, a)?)
        }
        PartitionCarrier::Cylinder(c) => {
            let coords = c.coords.iter().map(|s| w.mul(s)).collect();
            IndexedPartition::cylinder(coords, c.alphabet, p.block_count, c.table.clone())
        }
    }
}

/// The partition generated by the translates `{f·p : f ∈ words}`, blocks
/// ordered lexicographically in the tuple of translate block indices.
pub fn generated_partition(
    m: &MeasureModel,
    words: &[GroupWord],
    p: &IndexedPartition,
) -> Result<IndexedPartition> {
    let mut iter = words.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::input("generated partition needs at least one word"))?;
    let mut acc = translate(m, first, p)?;
    for w in iter {
        acc = acc.join(&translate(m, w, p)?)?;
    }
    Ok(acc)
}

/// Exact measure of every block.
pub fn block_measures(m: &MeasureModel, p: &IndexedPartition) -> Result<Vec<Rational>> {
    p.check_model(m)?;
    let mut out = vec![Rational::zero(); p.block_count];
    match (&p.carrier, m) {
        (PartitionCarrier::Points(a), _) => {
            let unit = Rational::new(1, a.len() as i128);
            for &b in a {
                out[b] += unit;
            }
        }
        (PartitionCarrier::Cylinder(c), MeasureModel::Bernoulli(bern)) => {
            for (l, &b) in c.table.iter().enumerate() {
                let mass = (0..c.coords.len())
                    .map(|t| bern.probs()[c.digit(l, t)])
                    .fold(Rational::from_integer(1), |acc, x| acc * x);
                out[b] += mass;
            }
        }
        _ => unreachable!("checked by check_model"),
    }
    Ok(out)
}
