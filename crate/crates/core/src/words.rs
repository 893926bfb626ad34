//! Free-group words, permutations and finite actions.
//!
//! Words act on the left: a word `l1 l2 ... lm` sends `x` to
//! `l1(l2(...lm(x)))`, so the last letter is applied first and
//! `evaluate(w * v) = evaluate(w) ∘ evaluate(v)`.
//!
//! Text syntax: `a`..`z` are generators 0..25, `A`..`Z` their inverses and
//! `1` is the empty word. `abA` is g0 g1 g0⁻¹.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    /// From a generator index and a sign of +1 or -1.
    pub fn signed(generator: usize, sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Letter::pos(generator)),
            -1 => Ok(Letter::neg(generator)),
            _ => Err(Error::input(format!("letter sign must be ±1, got {sign}"))),
        }
    }

    pub fn inv(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(g: usize) -> Self {
        GroupWord { letters: vec![Letter::pos(g)] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if letters.last() == Some(&l.inv()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        GroupWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> GroupWord {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// All reduced words over `generators` generators with length in `1..=max_len`,
    /// shortlex ordered.
    pub fn all_reduced(generators: usize, max_len: usize) -> Vec<GroupWord> {
        let alphabet: Vec<Letter> = (0..generators)
            .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
            .collect();
        let mut out = Vec::new();
        let mut layer = vec![GroupWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &alphabet {
                    if w.letters.last() == Some(&l.inv()) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(GroupWord { letters });
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            let base = if l.inverse { b'A' } else { b'a' };
            write!(f, "{}", (base + l.generator as u8) as char)?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(GroupWord::identity());
        }
        if s.is_empty() {
            return Err(Error::input("empty word text; use `1` for the identity"));
        }
        let mut raw = Vec::with_capacity(s.len());
        for c in s.chars() {
            let l = match c {
                'a'..='z' => Letter::pos(c as usize - 'a' as usize),
                'A'..='Z' => Letter::neg(c as usize - 'A' as usize),
                _ => return Err(Error::input(format!("invalid character `{c}` in word `{s}`"))),
            };
            raw.push(l);
        }
        Ok(GroupWord::reduce(raw))
    }
}

/// Parses a list of words in text syntax.
pub fn parse_words<S: AsRef<str>>(items: &[S]) -> Result<Vec<GroupWord>> {
    items.iter().map(|s| s.as_ref().parse()).collect()
}

/// A bijection of `{0..n-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::input(format!("not a permutation of 0..{n}: {images:?}")));
            }
            seen[y] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&y| self.0[y]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(x, &y)| *x == y).count()
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_points() == self.0.len()
    }
}

/// An action of a free group on `{0..n-1}` with the uniform measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    size: usize,
}

impl FiniteAction {
    pub fn new(size: usize, gens: Vec<Permutation>) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("finite action needs at least one point"));
        }
        if let Some(p) = gens.iter().find(|p| p.len() != size) {
            return Err(Error::input(format!(
                "generator permutes {} points, action has {size}",
                p.len()
            )));
        }
        let inv_gens = gens.iter().map(Permutation::inverse).collect();
        Ok(FiniteAction { gens, inv_gens, size })
    }

    pub fn from_images(images: Vec<Vec<usize>>) -> Result<Self> {
        let size = images.first().map_or(0, Vec::len);
        let gens = images.into_iter().map(Permutation::new).collect::<Result<_>>()?;
        FiniteAction::new(size, gens)
    }

    /// `x ↦ x+1 mod n` under a single generator.
    pub fn cyclic(n: usize) -> Self {
        let gen = Permutation((0..n).map(|x| (x + 1) % n).collect());
        FiniteAction::new(n, vec![gen]).expect("cyclic shift is a permutation")
    }

    /// All generators act as the identity.
    pub fn trivial(n: usize, generators: usize) -> Self {
        FiniteAction::new(n, vec![Permutation::identity(n); generators])
            .expect("identity is a permutation")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn generator(&self, g: usize) -> &Permutation {
        &self.gens[g]
    }

    fn check(&self, w: &GroupWord) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.gens.len() => Err(Error::input(format!(
                "word {w} uses generator {g}, action has {}",
                self.gens.len()
            ))),
            _ => Ok(()),
        }
    }

    /// Image of a single point; the word must be valid for this action.
    #[inline]
    pub fn act(&self, w: &GroupWord, x: usize) -> usize {
        w.letters.iter().rev().fold(x, |y, l| {
            if l.inverse {
                self.inv_gens[l.generator].0[y]
            } else {
                self.gens[l.generator].0[y]
            }
        })
    }

    pub fn evaluate(&self, w: &GroupWord) -> Result<Permutation> {
        self.check(w)?;
        Ok(Permutation((0..self.size).map(|x| self.act(w, x)).collect()))
    }

    /// Measure of the fixed point set of `w`.
    pub fn fix_ratio(&self, w: &GroupWord) -> Result<Rational> {
        let p = self.evaluate(w)?;
        Ok(Rational::new(p.fixed_points() as i128, self.size as i128))
    }
}
