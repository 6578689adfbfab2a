//! Words, conjugacy classes and homology in the closed surface group
//! `<a_1, b_1, ..., a_g, b_g | [a_1, b_1] ... [a_g, b_g]>`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {index} outside 1..={genus}")]
    IndexOutOfRange { index: u32, genus: u32 },
    #[error("genus {0} is not supported here (need at least 2)")]
    GenusTooSmall(u32),
    #[error("cannot parse letter `{0}`")]
    BadLetter(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    A,
    B,
}

/// A standard generator or its inverse, packed as a signed code:
/// `a_i` is `2i - 1`, `b_i` is `2i`, inverses are negated.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i16);

impl Letter {
    pub fn new(kind: Kind, index: u32, exponent: i8) -> Letter {
        let base = match kind {
            Kind::A => 2 * index as i16 - 1,
            Kind::B => 2 * index as i16,
        };
        Letter(if exponent < 0 { -base } else { base })
    }

    pub fn a(index: u32) -> Letter {
        Letter::new(Kind::A, index, 1)
    }

    pub fn b(index: u32) -> Letter {
        Letter::new(Kind::B, index, 1)
    }

    pub fn from_code(code: i16) -> Letter {
        assert!(code != 0, "letter code must be nonzero");
        Letter(code)
    }

    pub fn code(self) -> i16 {
        self.0
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs().div_ceil(2) as u32
    }

    pub fn kind(self) -> Kind {
        if self.0.unsigned_abs() % 2 == 1 {
            Kind::A
        } else {
            Kind::B
        }
    }

    pub fn exponent(self) -> i8 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn inv(self) -> Letter {
        Letter(-self.0)
    }

    /// Position of the underlying generator in the homology basis `a_1, b_1, a_2, ...`.
    pub fn slot(self) -> usize {
        self.0.unsigned_abs() as usize - 1
    }

    /// Total order `a_1 < a_1^-1 < b_1 < b_1^-1 < a_2 < ...`.
    pub fn rank(self) -> u16 {
        2 * (self.0.unsigned_abs() - 1) + u16::from(self.0 < 0)
    }

    pub fn parse(s: &str) -> Result<Letter, WordError> {
        let bad = || WordError::BadLetter(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let (kind, mut exponent) = match head {
            'a' => (Kind::A, 1),
            'b' => (Kind::B, 1),
            'A' => (Kind::A, -1),
            'B' => (Kind::B, -1),
            _ => return Err(bad()),
        };
        let mut rest: &str = chars.as_str();
        if let Some(stripped) = rest.strip_suffix("^-1") {
            rest = stripped;
            exponent = -exponent;
        }
        let index: u32 = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Letter::new(kind, index, exponent))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.kind(), self.exponent() > 0) {
            (Kind::A, true) => 'a',
            (Kind::A, false) => 'A',
            (Kind::B, true) => 'b',
            (Kind::B, false) => 'B',
        };
        write!(f, "{c}{}", self.index())
    }
}

#[derive(Serialize, Deserialize)]
struct LetterRecord {
    kind: Kind,
    index: u32,
    exponent: i8,
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LetterRecord { kind: self.kind(), index: self.index(), exponent: self.exponent() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LetterRecord::deserialize(d)?;
        if r.index == 0 || r.exponent.abs() != 1 {
            return Err(serde::de::Error::custom("invalid letter record"));
        }
        Ok(Letter::new(r.kind, r.index, r.exponent))
    }
}

pub fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|x| x.inv()).collect()
}

/// Free reduction of a letter sequence.
pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&x.inv()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free reduction followed by removal of cancelling pairs across the wrap-around.
pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo > 1 && w[lo] == w[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let key = |i: usize| w[i % n].rank();
    // Booth's algorithm on the doubled sequence.
    let mut f = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = key(j);
        let mut i = f[j - k - 1];
        while i != usize::MAX && sj != key(k + i + 1) {
            if sj < key(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == usize::MAX && sj != key(k) {
            if sj < key(k) {
                k = j;
            }
            f[j - k] = usize::MAX;
        } else {
            f[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    (0..n).map(|i| w[(k + i) % n]).collect()
}

fn rank_cmp(x: &[Letter], y: &[Letter]) -> std::cmp::Ordering {
    x.iter().map(|l| l.rank()).cmp(y.iter().map(|l| l.rank()))
}

fn min_by_rank(candidates: impl IntoIterator<Item = Vec<Letter>>) -> Vec<Letter> {
    candidates.into_iter().min_by(|x, y| x.len().cmp(&y.len()).then_with(|| rank_cmp(x, y))).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupWord {
    pub genus: u32,
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(genus: u32, letters: Vec<Letter>) -> Result<GroupWord, WordError> {
        for l in &letters {
            if l.index() > genus {
                return Err(WordError::IndexOutOfRange { index: l.index(), genus });
            }
        }
        Ok(GroupWord { genus, letters })
    }

    pub fn identity(genus: u32) -> GroupWord {
        GroupWord { genus, letters: Vec::new() }
    }

    /// Parses whitespace-free or space-separated words such as `a1 b1 A1 B1` or `a1b1A1B1`.
    pub fn parse(genus: u32, s: &str) -> Result<GroupWord, WordError> {
        let mut letters = Vec::new();
        let mut token = String::new();
        let flush = |token: &mut String, letters: &mut Vec<Letter>| -> Result<(), WordError> {
            if !token.is_empty() {
                letters.push(Letter::parse(token)?);
                token.clear();
            }
            Ok(())
        };
        for c in s.chars() {
            if c.is_whitespace() || c == '*' || c == '.' {
                flush(&mut token, &mut letters)?;
            } else if matches!(c, 'a' | 'b' | 'A' | 'B') {
                flush(&mut token, &mut letters)?;
                token.push(c);
            } else {
                token.push(c);
            }
        }
        flush(&mut token, &mut letters)?;
        GroupWord::new(genus, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { genus: self.genus, letters: invert(&self.letters) }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { genus: self.genus, letters: free_reduce(&letters) }
    }

    pub fn relator(genus: u32) -> GroupWord {
        GroupWord { genus, letters: relator_letters(genus) }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn relator_letters(genus: u32) -> Vec<Letter> {
    (1..=genus).flat_map(|i| [Letter::a(i), Letter::b(i), Letter::a(i).inv(), Letter::b(i).inv()]).collect()
}

/// Successor tables of the relator and of its inverse, read cyclically. Every
/// letter occurs exactly once in each, which makes piece matching linear.
#[derive(Debug, Clone)]
pub struct Relator {
    genus: u32,
    len: usize,
    succ: [Vec<Letter>; 2],
}

impl Relator {
    pub fn new(genus: u32) -> Result<Relator, WordError> {
        if genus < 2 {
            return Err(WordError::GenusTooSmall(genus));
        }
        let r = relator_letters(genus);
        let n = r.len();
        let ri = invert(&r);
        let slots = 4 * genus as usize;
        let idx = |l: Letter| 2 * l.slot() + usize::from(l.code() < 0);
        let mut succ = [vec![Letter(1); slots], vec![Letter(1); slots]];
        for (c, cyc) in [&r, &ri].into_iter().enumerate() {
            for i in 0..n {
                succ[c][idx(cyc[i])] = cyc[(i + 1) % n];
            }
        }
        Ok(Relator { genus, len: n, succ })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    fn next(&self, c: usize, l: Letter) -> Letter {
        self.succ[c][2 * l.slot() + usize::from(l.code() < 0)]
    }

    /// The full cyclic relator (c = 0) or inverse relator (c = 1) rotated to start at `x`.
    fn rotation(&self, c: usize, x: Letter) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len);
        out.push(x);
        while out.len() < self.len {
            let last = *out.last().expect("nonempty");
            out.push(self.next(c, last));
        }
        out
    }

    /// Length of the longest relator piece of cycle `c` read along `w` from position `i`.
    fn match_len(&self, c: usize, w: &[Letter], i: usize, cyclic: bool) -> usize {
        let n = w.len();
        let cap = if cyclic { self.len.min(n) } else { self.len.min(n - i) };
        let mut k = 1;
        while k < cap {
            let prev = w[(i + k - 1) % n];
            if w[(i + k) % n] != self.next(c, prev) {
                break;
            }
            k += 1;
        }
        k
    }

    /// Dehn's algorithm: repeatedly replace a subword forming more than half of a
    /// relator rotation by the inverse of the shorter complement.
    pub fn shorten(&self, w: &[Letter]) -> Vec<Letter> {
        let half = 2 * self.genus as usize;
        let mut w = free_reduce(w);
        let mut start = 0;
        'outer: loop {
            let mut i = start;
            while i < w.len() {
                for c in 0..2 {
                    let k = self.match_len(c, &w, i, false);
                    if k > half {
                        let full = self.rotation(c, w[i]);
                        let mut next = w[..i].to_vec();
                        next.extend(invert(&full[k..]));
                        next.extend_from_slice(&w[i + k..]);
                        w = free_reduce(&next);
                        start = i.saturating_sub(self.len + 1);
                        continue 'outer;
                    }
                }
                i += 1;
            }
            return w;
        }
    }

    /// Cyclic Dehn reduction: the result is cyclically reduced and no cyclic
    /// subword is more than half of a relator rotation.
    pub fn cyclic_shorten(&self, w: &[Letter]) -> Vec<Letter> {
        let half = 2 * self.genus as usize;
        let mut w = cyclic_reduce(&self.shorten(w));
        'outer: loop {
            let n = w.len();
            for i in 0..n {
                for c in 0..2 {
                    let k = self.match_len(c, &w, i, true);
                    if k > half {
                        let rotated: Vec<Letter> = w[i..].iter().chain(w[..i].iter()).copied().collect();
                        let full = self.rotation(c, rotated[0]);
                        let mut next = invert(&full[k..]);
                        next.extend_from_slice(&rotated[k.min(n)..]);
                        w = cyclic_reduce(&self.shorten(&next));
                        continue 'outer;
                    }
                }
            }
            return w;
        }
    }

    /// Cyclic words obtained by replacing one cyclic relator piece of `w` by
    /// its complement, kept when the reduced result has at most `cap` letters.
    fn piece_moves(&self, w: &[Letter], cap: usize) -> Vec<Vec<Letter>> {
        let n = w.len();
        let lo = (2 * self.genus as usize).saturating_sub(2).max(1);
        let mut out = Vec::new();
        for i in 0..n {
            let rotated: Vec<Letter> = w[i..].iter().chain(w[..i].iter()).copied().collect();
            for c in 0..2 {
                let k = self.match_len(c, w, i, true).min(n);
                if k < lo {
                    continue;
                }
                let full = self.rotation(c, rotated[0]);
                for p in lo..=k {
                    let mut next = invert(&full[p..]);
                    next.extend_from_slice(&rotated[p..]);
                    let next = cyclic_reduce(&free_reduce(&next));
                    if next.len() <= cap {
                        out.push(next);
                    }
                }
            }
        }
        out
    }

    /// Least canonical rotation among the shortest cyclic words conjugate to `w`.
    ///
    /// Shortest conjugates differ by a single layer of relator cells, and such a
    /// layer can be laid down one cell at a time without the word ever growing
    /// by more than two letters, so a search bounded by that excess is complete.
    pub fn conjugacy_key(&self, w: &[Letter]) -> Vec<Letter> {
        let mut w = self.cyclic_shorten(w);
        'restart: loop {
            if w.is_empty() {
                return w;
            }
            let len = w.len();
            let mut seen: HashSet<Vec<Letter>> = HashSet::new();
            seen.insert(least_rotation(&w));
            let mut todo = vec![w.clone()];
            while let Some(x) = todo.pop() {
                for y in self.piece_moves(&x, len + 2) {
                    if y.len() < len {
                        w = self.cyclic_shorten(&y);
                        continue 'restart;
                    }
                    let key = least_rotation(&y);
                    if !seen.contains(&key) {
                        seen.insert(key);
                        todo.push(y);
                    }
                }
            }
            return min_by_rank(seen.into_iter().filter(|k| k.len() == len));
        }
    }

    pub fn is_identity(&self, w: &[Letter]) -> bool {
        self.shorten(w).is_empty()
    }

    pub fn equal(&self, u: &[Letter], v: &[Letter]) -> bool {
        let mut x = u.to_vec();
        x.extend(invert(v));
        self.is_identity(&x)
    }
}

/// A conjugacy class of the surface group up to inversion, stored as its
/// canonical cyclic representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord {
    pub genus: u32,
    pub letters: Vec<Letter>,
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl CyclicWord {
    /// Canonical rotation over the cyclic reduction of `w` and its inverse, without group relations.
    pub fn from_letters(genus: u32, w: &[Letter]) -> CyclicWord {
        let c = cyclic_reduce(w);
        let letters = min_by_rank([least_rotation(&c), least_rotation(&invert(&c))]);
        CyclicWord { genus, letters }
    }

    /// Class of `w` up to conjugacy and inversion in the surface group.
    pub fn class_of(rel: &Relator, w: &[Letter]) -> CyclicWord {
        let k1 = rel.conjugacy_key(w);
        let k2 = rel.conjugacy_key(&invert(w));
        CyclicWord { genus: rel.genus(), letters: min_by_rank([k1, k2]) }
    }

    pub fn canonicalize(&self) -> CyclicWord {
        CyclicWord::from_letters(self.genus, &self.letters)
    }

    pub fn as_word(&self) -> GroupWord {
        GroupWord { genus: self.genus, letters: self.letters.clone() }
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.as_word())
    }
}

pub fn reduce_word(w: &GroupWord) -> GroupWord {
    GroupWord { genus: w.genus, letters: free_reduce(&w.letters) }
}

pub fn dehn_shorten(w: &GroupWord) -> Result<GroupWord, WordError> {
    let rel = Relator::new(w.genus)?;
    Ok(GroupWord { genus: w.genus, letters: rel.shorten(&w.letters) })
}

pub fn is_conjugate(u: &GroupWord, v: &GroupWord) -> Result<bool, WordError> {
    if u.genus != v.genus {
        return Err(WordError::GenusMismatch(u.genus, v.genus));
    }
    let rel = Relator::new(u.genus)?;
    Ok(rel.conjugacy_key(&u.letters) == rel.conjugacy_key(&v.letters))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    pub genus: u32,
    pub coords: Vec<i64>,
}

impl HomologyClass {
    pub fn zero(genus: u32) -> HomologyClass {
        HomologyClass { genus, coords: vec![0; 2 * genus as usize] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> HomologyClass {
        HomologyClass { genus: self.genus, coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        let coords = self.coords.iter().zip(&other.coords).map(|(x, y)| x + y).collect();
        HomologyClass { genus: self.genus, coords }
    }

    pub fn basis(genus: u32, slot: usize) -> HomologyClass {
        let mut h = HomologyClass::zero(genus);
        h.coords[slot] = 1;
        h
    }
}

pub fn homology_class(w: &GroupWord) -> HomologyClass {
    let mut h = HomologyClass::zero(w.genus);
    for l in &w.letters {
        h.coords[l.slot()] += i64::from(l.exponent());
    }
    h
}

pub fn symplectic_pairing(x: &HomologyClass, y: &HomologyClass) -> Result<i64, WordError> {
    if x.genus != y.genus {
        return Err(WordError::GenusMismatch(x.genus, y.genus));
    }
    Ok((0..x.genus as usize).map(|i| x.coords[2 * i] * y.coords[2 * i + 1] - x.coords[2 * i + 1] * y.coords[2 * i]).sum())
}
