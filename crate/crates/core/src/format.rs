//! Line-based text formats for partitions, actions and towers, plus JSON
//! serialization of words and partitions.
//!
//! Every format is a sequence of `key value...` lines. Blank lines and lines
//! starting with `#` are ignored.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::partition::{IndexedPartition, PartitionCarrier};
use crate::tower::Tower;
use crate::words::{FiniteAction, GroupWord, Permutation};

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for IndexedPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self.carrier() {
            PartitionCarrier::Points(assign) => {
                map.serialize_entry("kind", "finite")?;
                map.serialize_entry("block_count", &self.block_count())?;
                map.serialize_entry("assignment", assign)?;
            }
            PartitionCarrier::Cylinder(c) => {
                map.serialize_entry("kind", "cylinder")?;
                map.serialize_entry("block_count", &self.block_count())?;
                map.serialize_entry("coords", c.coords())?;
                map.serialize_entry("alphabet", &c.alphabet())?;
                map.serialize_entry("table", c.table())?;
            }
        }
        map.end()
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

struct Lines<'a> {
    items: Vec<(usize, &'a str, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, line)| {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    return None;
                }
                let mut parts = line.split_whitespace();
                let key = parts.next()?;
                Some((i + 1, key, parts.collect()))
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (line, k, rest) = self
            .items
            .get(self.pos)
            .ok_or_else(|| Error::input(format!("unexpected end of input, expected `{key}`")))?;
        if *k != key {
            return Err(Error::input(format!("line {line}: expected `{key}`, found `{k}`")));
        }
        self.pos += 1;
        Ok((*line, rest.clone()))
    }

    fn usize(&mut self, key: &str) -> Result<usize> {
        let (line, rest) = self.next(key)?;
        match rest.as_slice() {
            [v] => parse_usize(line, v),
            _ => Err(Error::input(format!("line {line}: `{key}` takes one integer"))),
        }
    }

    fn usizes(&mut self, key: &str, len: usize) -> Result<Vec<usize>> {
        let (line, rest) = self.next(key)?;
        if rest.len() != len {
            return Err(Error::input(format!("line {line}: `{key}` needs {len} entries, found {}", rest.len())));
        }
        rest.iter().map(|v| parse_usize(line, v)).collect()
    }

    fn finish(&self) -> Result<()> {
        match self.items.get(self.pos) {
            Some((line, k, _)) => Err(Error::input(format!("line {line}: unexpected `{k}`"))),
            None => Ok(()),
        }
    }
}

fn parse_usize(line: usize, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| Error::input(format!("line {line}: `{v}` is not a nonnegative integer")))
}

pub fn partition_to_text(p: &IndexedPartition) -> String {
    match p.carrier() {
        PartitionCarrier::Points(assign) => format!(
            "partition finite\nsize {}\nblocks {}\nassignment {}\n",
            assign.len(),
            p.block_count(),
            join(assign)
        ),
        PartitionCarrier::Cylinder(c) => format!(
            "partition cylinder\ncoords {}\nalphabet {}\nblocks {}\ntable {}\n",
            join(c.coords()),
            c.alphabet(),
            p.block_count(),
            join(c.table())
        ),
    }
}

pub fn partition_from_text(text: &str) -> Result<IndexedPartition> {
    let mut lines = Lines::new(text);
    let (line, kind) = lines.next("partition")?;
    let p = match kind.as_slice() {
        ["finite"] => {
            let n = lines.usize("size")?;
            let k = lines.usize("blocks")?;
            IndexedPartition::from_assignment(k, lines.usizes("assignment", n)?)?
        }
        ["cylinder"] => {
            let (_, coords) = lines.next("coords")?;
            let coords = coords
                .iter()
                .map(|w| w.parse::<GroupWord>())
                .collect::<Result<Vec<_>>>()?;
            let alphabet = lines.usize("alphabet")?;
            let k = lines.usize("blocks")?;
            let labelings = alphabet
                .checked_pow(coords.len() as u32)
                .ok_or_else(|| Error::input("cylinder table is too large"))?;
            IndexedPartition::cylinder(coords, alphabet, k, lines.usizes("table", labelings)?)?
        }
        _ => return Err(Error::input(format!("line {line}: partition kind must be `finite` or `cylinder`"))),
    };
    lines.finish()?;
    Ok(p)
}

fn write_action(out: &mut String, a: &FiniteAction) {
    out.push_str(&format!("size {}\n", a.size()));
    for g in a.generators() {
        out.push_str(&format!("gen {}\n", join(g.images())));
    }
}

fn read_action(lines: &mut Lines, generators: usize) -> Result<FiniteAction> {
    let n = lines.usize("size")?;
    let gens = (0..generators)
        .map(|_| Permutation::new(lines.usizes("gen", n)?))
        .collect::<Result<Vec<_>>>()?;
    FiniteAction::new(n, gens)
}

pub fn action_to_text(a: &FiniteAction) -> String {
    let mut out = format!("action\ngenerators {}\n", a.generator_count());
    write_action(&mut out, a);
    out
}

pub fn action_from_text(text: &str) -> Result<FiniteAction> {
    let mut lines = Lines::new(text);
    lines.next("action")?;
    let r = lines.usize("generators")?;
    let a = read_action(&mut lines, r)?;
    lines.finish()?;
    Ok(a)
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Tower text; the final `checksum` line is the SHA-256 of everything before it.
pub fn tower_to_text(t: &Tower) -> String {
    let mut body = format!("tower\nlevels {}\ngenerators {}\n", t.depth(), t.generator_count());
    for (l, a) in t.levels().iter().enumerate() {
        write_action(&mut body, a);
        if l > 0 {
            body.push_str(&format!("map {}\n", join(&t.maps()[l - 1])));
        }
    }
    let sum = checksum(&body);
    body.push_str(&format!("checksum {sum}\n"));
    body
}

pub fn tower_from_text(text: &str) -> Result<Tower> {
    let (body, sum_line) = text
        .trim_end()
        .rsplit_once('\n')
        .ok_or_else(|| Error::input("tower file is missing its checksum line"))?;
    let expected = sum_line
        .trim()
        .strip_prefix("checksum ")
        .ok_or_else(|| Error::input("tower file must end with a checksum line"))?;
    let body = format!("{body}\n");
    if checksum(&body) != expected.trim() {
        return Err(Error::input("tower checksum mismatch"));
    }
    let mut lines = Lines::new(&body);
    lines.next("tower")?;
    let depth = lines.usize("levels")?;
    let r = lines.usize("generators")?;
    let mut levels = Vec::with_capacity(depth);
    let mut maps = Vec::new();
    for l in 0..depth {
        let a = read_action(&mut lines, r)?;
        if l > 0 {
            maps.push(lines.usizes("map", a.size())?);
        }
        levels.push(a);
    }
    lines.finish()?;
    Tower::new(levels, maps)
}
