//! Half-twist generators of the mapping class group of a punctured sphere,
//! acting on curves through the fundamental group.
//!
//! `s_k` is the counterclockwise half-twist exchanging punctures `k-1` and `k`
//! (0-based) along the real line; `S_k` is its inverse. Words act right to
//! left: `apply("s1s2", c) = s1(s2(c))`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::dual::{cycle_to_x_word, reduce_word, x_word_to_path};
use super::triangulation::Letter;
use super::{NormalCurve, Triangulation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    /// 1-based index `k` of `s_k`.
    pub index: u8,
    pub inverse: bool,
}

impl Generator {
    pub fn new(index: u8, inverse: bool) -> Self {
        Generator { index, inverse }
    }

    pub fn inv(self) -> Self {
        Generator { index: self.index, inverse: !self.inverse }
    }

    /// Image of one puncture loop letter under the induced automorphism.
    fn image(self, l: Letter, out: &mut Vec<Letter>) {
        let k = self.index as Letter;
        let (x, sgn) = (l.abs(), l.signum());
        let img: &[Letter] = match (self.inverse, x) {
            (false, x) if x == k => &[k + 1],
            (false, x) if x == k + 1 => &[k + 1, k, -(k + 1)],
            (true, x) if x == k + 1 => &[k],
            (true, x) if x == k => &[-k, k + 1, k],
            _ => {
                out.push(l);
                return;
            }
        };
        if sgn > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(img.iter().rev().map(|y| -y));
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.inverse { 'S' } else { 's' }, self.index)
    }
}

/// A word in the half-twist generators, e.g. `s1S2s3`. The empty word is the
/// identity and may also be written `id`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MappingClassWord(pub Vec<Generator>);

impl MappingClassWord {
    pub fn identity() -> Self {
        MappingClassWord(Vec::new())
    }

    pub fn gen(index: u8, inverse: bool) -> Self {
        MappingClassWord(vec![Generator::new(index, inverse)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        MappingClassWord(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    /// `self * other`: acts by `other` first.
    pub fn then_after(&self, other: &MappingClassWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MappingClassWord(v).reduced()
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        MappingClassWord(v).reduced()
    }

    /// Cancels adjacent inverse pairs.
    pub fn reduced(self) -> Self {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for g in self.0 {
            if out.last() == Some(&g.inv()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        MappingClassWord(out)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "id" || t == "1" {
            return Ok(Self::identity());
        }
        let mut gens = Vec::new();
        let mut chars = t.char_indices().peekable();
        while let Some((pos, c)) = chars.next() {
            let inverse = match c {
                's' => false,
                'S' => true,
                ' ' | ',' | '.' | '*' => continue,
                _ => return Err(Error::Parse(format!("unexpected {c:?} at byte {pos} in word {s:?}"))),
            };
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let index: u8 = digits.parse().map_err(|_| Error::Parse(format!("missing or bad generator index at byte {pos} in {s:?}")))?;
            if index == 0 {
                return Err(Error::Parse("generator indices start at 1".into()));
            }
            gens.push(Generator { index, inverse });
        }
        Ok(MappingClassWord(gens))
    }

    fn check_for(&self, n_punctures: usize) -> Result<()> {
        match self.0.iter().find(|g| g.index as usize >= n_punctures) {
            Some(g) => Err(Error::Domain(format!("generator {g} does not exist on a {n_punctures}-punctured sphere"))),
            None => Ok(()),
        }
    }
}

impl FromStr for MappingClassWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl TryFrom<String> for MappingClassWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Self::parse(&s)
    }
}

impl From<MappingClassWord> for String {
    fn from(w: MappingClassWord) -> String {
        w.to_string()
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Cyclic reduction of a free-group word (conjugacy class representative).
fn cyclic_reduce(w: Vec<Letter>) -> Vec<Letter> {
    let w = reduce_word(w);
    let (mut lo, mut hi) = (0, w.len());
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

/// Applies a word to a conjugacy class in the fundamental group.
pub(crate) fn apply_to_x_word(word: &MappingClassWord, mut x: Vec<Letter>) -> Vec<Letter> {
    for g in word.0.iter().rev() {
        let mut next = Vec::with_capacity(x.len() + 4);
        for &l in &x {
            g.image(l, &mut next);
        }
        x = cyclic_reduce(next);
    }
    x
}

/// The image of a curve under a mapping class.
pub fn apply_mapping_class(word: &MappingClassWord, curve: &NormalCurve) -> Result<NormalCurve> {
    let tri: &Triangulation = curve.triangulation();
    word.check_for(tri.punctures())?;
    if word.is_empty() {
        return Ok(curve.clone());
    }
    let cyc = curve.cycle();
    let x = apply_to_x_word(word, cycle_to_x_word(tri, &cyc.tris, &cyc.edges));
    NormalCurve::from_dual_path(curve.surface(), x_word_to_path(tri, &x))
}
