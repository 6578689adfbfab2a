//! Mapping classes as words in Dehn twists, realized as automorphisms of the
//! surface group, together with presentations and relation verification.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface_group::{
    free_reduce, homology_class, invert, is_conjugate, relator_letters, GroupWord, Letter, Relator, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MappingClassError {
    #[error("unknown twist letter `{0}`")]
    UnknownLetter(String),
    #[error("twist letter {letter} is not valid in genus {genus}")]
    LetterOutOfRange { letter: String, genus: u32 },
    #[error("presentation needs genus at least 4, got {0}")]
    PresentationGenus(u32),
    #[error("presentation schema: {0}")]
    Schema(String),
    #[error("structural check failed: relation {index} ({family}) involves both B1 and B{last}")]
    Structural { index: usize, family: String, last: u32 },
    #[error("structural check failed: {0}")]
    StructuralMissing(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistName {
    A(u32),
    D(u32),
    B(u32),
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistLetter {
    pub name: TwistName,
    pub exponent: i8,
}

impl TwistLetter {
    pub fn new(name: TwistName, exponent: i8) -> TwistLetter {
        TwistLetter { name, exponent: if exponent < 0 { -1 } else { 1 } }
    }

    pub fn inv(self) -> TwistLetter {
        TwistLetter { name: self.name, exponent: -self.exponent }
    }

    pub fn valid_for(self, genus: u32) -> bool {
        match self.name {
            TwistName::A(i) | TwistName::D(i) => (1..=genus).contains(&i),
            TwistName::B(i) => i >= 1 && i < genus,
            TwistName::H => true,
        }
    }

    /// All Lickorish letters and their inverses for the genus.
    pub fn alphabet(genus: u32) -> Vec<TwistLetter> {
        let mut names = Vec::new();
        for i in 1..=genus {
            names.push(TwistName::A(i));
            names.push(TwistName::D(i));
            if i < genus {
                names.push(TwistName::B(i));
            }
        }
        names.into_iter().flat_map(|n| [TwistLetter::new(n, 1), TwistLetter::new(n, -1)]).collect()
    }
}

impl fmt::Display for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            TwistName::A(i) => write!(f, "A{i}")?,
            TwistName::D(i) => write!(f, "D{i}")?,
            TwistName::B(i) => write!(f, "B{i}")?,
            TwistName::H => write!(f, "H")?,
        }
        if self.exponent < 0 {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for TwistLetter {
    type Err = MappingClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MappingClassError::UnknownLetter(s.to_string());
        let (body, exponent) = match s.strip_suffix("^-1") {
            Some(b) => (b, -1),
            None => (s, 1),
        };
        let mut chars = body.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let index = || rest.parse::<u32>().ok().filter(|&i| i > 0).ok_or_else(bad);
        let name = match head {
            'A' => TwistName::A(index()?),
            'D' => TwistName::D(index()?),
            'B' => TwistName::B(index()?),
            'H' if rest.is_empty() => TwistName::H,
            _ => return Err(bad()),
        };
        Ok(TwistLetter::new(name, exponent))
    }
}

impl Serialize for TwistLetter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TwistLetter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MappingClassWord {
    pub genus: u32,
    pub letters: Vec<TwistLetter>,
}

impl MappingClassWord {
    pub fn new(genus: u32, letters: Vec<TwistLetter>) -> Result<MappingClassWord, MappingClassError> {
        if let Some(bad) = letters.iter().find(|l| !l.valid_for(genus)) {
            return Err(MappingClassError::LetterOutOfRange { letter: bad.to_string(), genus });
        }
        Ok(MappingClassWord { genus, letters })
    }

    pub fn identity(genus: u32) -> MappingClassWord {
        MappingClassWord { genus, letters: Vec::new() }
    }

    pub fn single(genus: u32, l: TwistLetter) -> MappingClassWord {
        MappingClassWord { genus, letters: vec![l] }
    }

    /// Parses space-separated letters such as `A1 B2^-1 D3`; `1` or an empty string is the identity.
    pub fn parse(genus: u32, s: &str) -> Result<MappingClassWord, MappingClassError> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',' || c == '*')
            .filter(|t| !t.is_empty() && *t != "1")
            .map(str::parse)
            .collect::<Result<Vec<TwistLetter>, _>>()?;
        MappingClassWord::new(genus, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> MappingClassWord {
        MappingClassWord { genus: self.genus, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Concatenation with free cancellation of adjacent inverse letters.
    pub fn then(&self, other: &MappingClassWord) -> MappingClassWord {
        let mut out: Vec<TwistLetter> = self.letters.clone();
        for &l in &other.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        MappingClassWord { genus: self.genus, letters: out }
    }

    pub fn power(&self, k: usize) -> MappingClassWord {
        (0..k).fold(MappingClassWord::identity(self.genus), |acc, _| acc.then(self))
    }

    pub fn contains(&self, name: TwistName) -> bool {
        self.letters.iter().any(|l| l.name == name)
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Returns `f s f^-1`.
pub fn conjugated_twist(f: &MappingClassWord, s: TwistLetter) -> MappingClassWord {
    f.then(&MappingClassWord::single(f.genus, s)).then(&f.inverse())
}

/// Images of the standard generators `a_1, b_1, ..., a_g, b_g` under an automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismTable {
    pub genus: u32,
    pub images: Vec<Vec<Letter>>,
}

impl AutomorphismTable {
    pub fn identity(genus: u32) -> AutomorphismTable {
        let images = relator_letters(genus).into_iter().filter(|l| l.exponent() > 0).map(|l| vec![l]).collect();
        AutomorphismTable { genus, images }
    }

    fn from_map(genus: u32, changes: &[(Letter, Vec<Letter>)]) -> AutomorphismTable {
        let mut t = AutomorphismTable::identity(genus);
        for (x, img) in changes {
            t.images[x.slot()] = img.clone();
        }
        t
    }

    pub fn apply(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &l in w {
            let img = &self.images[l.slot()];
            if l.exponent() > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(invert(img));
            }
        }
        free_reduce(&out)
    }

    /// The automorphism `self` after `other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &AutomorphismTable) -> AutomorphismTable {
        AutomorphismTable { genus: self.genus, images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    pub fn shortened(&self, rel: &Relator) -> AutomorphismTable {
        AutomorphismTable { genus: self.genus, images: self.images.iter().map(|w| rel.shorten(w)).collect() }
    }

    pub fn h1_matrix(&self) -> H1Matrix {
        let n = 2 * self.genus as usize;
        let mut m = vec![vec![0i64; n]; n];
        for (j, img) in self.images.iter().enumerate() {
            let h = homology_class(&GroupWord { genus: self.genus, letters: img.clone() });
            for i in 0..n {
                m[i][j] = h.coords[i];
            }
        }
        H1Matrix(m)
    }

    /// Checks that the relator maps to a conjugate of itself.
    pub fn preserves_relator(&self) -> Result<bool, WordError> {
        let r = GroupWord::relator(self.genus);
        let image = GroupWord { genus: self.genus, letters: self.apply(&r.letters) };
        is_conjugate(&image, &r)
    }
}

/// Integer matrix acting on `H_1` in the basis `[a_1], [b_1], ..., [a_g], [b_g]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Matrix(pub Vec<Vec<i64>>);

impl H1Matrix {
    pub fn identity(n: usize) -> H1Matrix {
        H1Matrix((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, o: &H1Matrix) -> H1Matrix {
        let n = self.dim();
        H1Matrix((0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.0[i][k] * o.0[k][j]).sum()).collect()).collect())
    }

    pub fn is_identity(&self) -> bool {
        *self == H1Matrix::identity(self.dim())
    }

    pub fn is_minus_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == if i == j { -1 } else { 0 }))
    }

    pub fn is_symplectic(&self) -> bool {
        let n = self.dim();
        let j = |r: usize, c: usize| -> i64 {
            if r / 2 != c / 2 {
                0
            } else if r.is_multiple_of(2) && c % 2 == 1 {
                1
            } else if r % 2 == 1 && c.is_multiple_of(2) {
                -1
            } else {
                0
            }
        };
        (0..n).all(|r| {
            (0..n).all(|c| {
                let v: i64 = (0..n).map(|k| (0..n).map(|l| self.0[k][r] * j(k, l) * self.0[l][c]).sum::<i64>()).sum();
                v == j(r, c)
            })
        })
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.0.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

fn a(i: u32) -> Letter {
    Letter::a(i)
}
fn b(i: u32) -> Letter {
    Letter::b(i)
}

/// The automorphism of handles `i, i + 1` carrying `b_{i+1}` to `b_{i+1} b_i`,
/// used to transport the twist about `b_{i+1}` to the twist about that curve.
fn handle_shift(genus: u32, i: u32) -> (AutomorphismTable, AutomorphismTable) {
    let j = i + 1;
    let fwd = AutomorphismTable::from_map(
        genus,
        &[
            (a(i), vec![a(i), b(i), a(i).inv()]),
            (b(i), vec![b(i).inv(), a(j), a(i).inv()]),
            (a(j), vec![b(i).inv(), a(j), b(i)]),
            (b(j), vec![b(j), b(i)]),
        ],
    );
    let back = AutomorphismTable::from_map(
        genus,
        &[
            (a(i), vec![a(i).inv(), b(i).inv(), a(j)]),
            (b(i), vec![a(j).inv(), b(i), a(i), b(i).inv(), a(j)]),
            (a(j), vec![a(j).inv(), b(i), a(i), b(i).inv(), a(j), b(i), a(i).inv(), b(i).inv(), a(j)]),
            (b(j), vec![b(j), a(j).inv(), b(i), a(i).inv(), b(i).inv(), a(j)]),
        ],
    );
    (fwd, back)
}

/// An automorphism carrying `b_{i+1}` onto the core curve of `T_{beta_i}`, with its inverse.
fn beta_transport(genus: u32, i: u32) -> (AutomorphismTable, AutomorphismTable) {
    let (fwd, back) = handle_shift(genus, i);
    if i == 1 {
        return (fwd, back);
    }
    let ai = positive_table(genus, TwistName::A(i));
    let di = positive_table(genus, TwistName::D(i));
    let ai_inv = negative_table(genus, TwistName::A(i));
    let di_inv = negative_table(genus, TwistName::D(i));
    let psi = ai_inv.compose(&di_inv).compose(&di_inv).compose(&ai_inv);
    let psi_inv = ai.compose(&di).compose(&di).compose(&ai);
    (psi.compose(&fwd), back.compose(&psi_inv))
}

/// The surface-group word of the core curve of a Lickorish twist.
pub fn core_curve(genus: u32, name: TwistName) -> Vec<Letter> {
    match name {
        TwistName::A(i) => vec![a(i)],
        TwistName::D(i) => vec![b(i)],
        TwistName::B(i) => {
            let rel = Relator::new(genus).expect("genus at least 2");
            rel.cyclic_shorten(&beta_transport(genus, i).0.apply(&[b(i + 1)]))
        }
        TwistName::H => Vec::new(),
    }
}

fn positive_table(genus: u32, name: TwistName) -> AutomorphismTable {
    match name {
        TwistName::A(i) => AutomorphismTable::from_map(genus, &[(b(i), vec![b(i), a(i).inv()])]),
        TwistName::D(i) => AutomorphismTable::from_map(genus, &[(a(i), vec![a(i), b(i)])]),
        TwistName::B(i) => {
            let (fwd, back) = beta_transport(genus, i);
            let tb = positive_table(genus, TwistName::D(i + 1));
            fwd.compose(&tb).compose(&back)
        }
        TwistName::H => unreachable!("H is defined by its word"),
    }
}

fn negative_table(genus: u32, name: TwistName) -> AutomorphismTable {
    match name {
        TwistName::A(i) => AutomorphismTable::from_map(genus, &[(b(i), vec![b(i), a(i)])]),
        TwistName::D(i) => AutomorphismTable::from_map(genus, &[(a(i), vec![a(i), b(i).inv()])]),
        TwistName::B(i) => {
            let (fwd, back) = beta_transport(genus, i);
            let tb = negative_table(genus, TwistName::D(i + 1));
            fwd.compose(&tb).compose(&back)
        }
        TwistName::H => unreachable!("H is defined by its word"),
    }
}

/// The word `A_g B_{g-1} A_{g-1} ... B_1 A_1 D_1 D_1 A_1 B_1 ... B_{g-1} A_g` defining `H`.
pub fn h_word(genus: u32) -> MappingClassWord {
    let mut chain = Vec::new();
    for i in (1..=genus).rev() {
        chain.push(TwistLetter::new(TwistName::A(i), 1));
        if i > 1 {
            chain.push(TwistLetter::new(TwistName::B(i - 1), 1));
        }
    }
    let d1 = TwistLetter::new(TwistName::D(1), 1);
    let mut letters = chain.clone();
    letters.extend([d1, d1]);
    letters.extend(chain.iter().rev().copied());
    MappingClassWord { genus, letters }
}

/// Twist automorphisms for one genus, with the relator used to keep images short.
#[derive(Debug, Clone)]
pub struct TwistGroup {
    genus: u32,
    rel: Relator,
    tables: HashMap<TwistLetter, AutomorphismTable>,
}

impl TwistGroup {
    pub fn new(genus: u32) -> Result<TwistGroup, MappingClassError> {
        let rel = Relator::new(genus)?;
        let mut tables = HashMap::new();
        for l in TwistLetter::alphabet(genus) {
            let t = if l.exponent > 0 { positive_table(genus, l.name) } else { negative_table(genus, l.name) };
            tables.insert(l, t.shortened(&rel));
        }
        let mut group = TwistGroup { genus, rel, tables };
        let h = h_word(genus);
        let th = group.automorphism(&h);
        let th_inv = group.automorphism(&h.inverse());
        group.tables.insert(TwistLetter::new(TwistName::H, 1), th);
        group.tables.insert(TwistLetter::new(TwistName::H, -1), th_inv);
        Ok(group)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn relator(&self) -> &Relator {
        &self.rel
    }

    pub fn table(&self, l: TwistLetter) -> Result<&AutomorphismTable, MappingClassError> {
        self.tables
            .get(&l)
            .ok_or_else(|| MappingClassError::LetterOutOfRange { letter: l.to_string(), genus: self.genus })
    }

    /// Image of `w` under the mapping class `m = s_1 ... s_k`, i.e. `s_1(s_2(... s_k(w)))`.
    pub fn act_letters(&self, m: &MappingClassWord, w: &[Letter]) -> Vec<Letter> {
        let mut out = free_reduce(w);
        for l in m.letters.iter().rev() {
            out = self.rel.shorten(&self.tables[l].apply(&out));
        }
        out
    }

    pub fn act_on_word(&self, m: &MappingClassWord, w: &GroupWord) -> GroupWord {
        GroupWord { genus: self.genus, letters: self.act_letters(m, &w.letters) }
    }

    pub fn automorphism(&self, m: &MappingClassWord) -> AutomorphismTable {
        let id = AutomorphismTable::identity(self.genus);
        AutomorphismTable { genus: self.genus, images: id.images.iter().map(|x| self.act_letters(m, x)).collect() }
    }

    pub fn h1_matrix(&self, m: &MappingClassWord) -> H1Matrix {
        let n = 2 * self.genus as usize;
        m.letters.iter().fold(H1Matrix::identity(n), |acc, l| acc.mul(&self.tables[l].h1_matrix()))
    }

    pub fn is_torelli(&self, m: &MappingClassWord) -> bool {
        self.h1_matrix(m).is_identity()
    }
}

pub fn builtin_automorphism(s: TwistLetter, genus: u32) -> Result<AutomorphismTable, MappingClassError> {
    if !s.valid_for(genus) {
        return Err(MappingClassError::LetterOutOfRange { letter: s.to_string(), genus });
    }
    Ok(TwistGroup::new(genus)?.table(s)?.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "A-braid")]
    ABraid,
    #[serde(rename = "B-torus")]
    BTorus,
    #[serde(rename = "C-lantern")]
    CLantern,
    #[serde(rename = "D-hyperelliptic")]
    DHyperelliptic,
    #[serde(rename = "Humphries-elim")]
    HumphriesElim,
    #[serde(rename = "commute-β")]
    CommuteBeta,
    #[serde(rename = "h-expansion")]
    HExpansion,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub word: Vec<TwistLetter>,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub genus: u32,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn word(&self, r: &Relation) -> MappingClassWord {
        MappingClassWord { genus: self.genus, letters: r.word.clone() }
    }

    /// Indices of relations mentioning both `B_1` and `B_{g-1}`.
    pub fn both_beta(&self) -> Vec<usize> {
        let last = self.genus - 1;
        self.relations
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                let w = self.word(r);
                w.contains(TwistName::B(1)) && w.contains(TwistName::B(last))
            })
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn load_presentation(genus: u32, json: &str) -> Result<Presentation, MappingClassError> {
    if genus < 4 {
        return Err(MappingClassError::PresentationGenus(genus));
    }
    let p: Presentation = serde_json::from_str(json).map_err(|e| MappingClassError::Schema(e.to_string()))?;
    if p.genus != genus {
        return Err(MappingClassError::Schema(format!("file is for genus {}, expected {genus}", p.genus)));
    }
    let declared: Vec<TwistLetter> =
        p.generators.iter().map(|s| s.parse()).collect::<Result<_, MappingClassError>>()?;
    for (i, r) in p.relations.iter().enumerate() {
        for l in &r.word {
            if !l.valid_for(genus) || !declared.iter().any(|d| d.name == l.name) {
                return Err(MappingClassError::Schema(format!("relation {i} uses undeclared letter {l}")));
            }
        }
    }
    let last = genus - 1;
    for i in p.both_beta() {
        let fam = p.relations[i].family;
        if fam != Family::CommuteBeta && fam != Family::HExpansion {
            return Err(MappingClassError::Structural { index: i, family: fam.to_string(), last });
        }
    }
    for fam in [Family::CommuteBeta, Family::HExpansion] {
        let hits = p.both_beta().into_iter().filter(|&i| p.relations[i].family == fam).count();
        if hits != 1 {
            return Err(MappingClassError::StructuralMissing(format!("expected one {fam} relation, found {hits}")));
        }
    }
    Ok(p)
}

/// The shipped genus-4 presentation.
pub fn builtin_presentation() -> Presentation {
    load_presentation(4, include_str!("../data/presentation_g4.json")).expect("shipped presentation loads")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    #[serde(rename = "ACCEPT")]
    Accept { conjugator: GroupWord },
    #[serde(rename = "REJECT")]
    Reject { generator: Letter, reason: String },
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive { bound: usize },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }
}

/// Decides whether the automorphism of `m` is inner, searching for the conjugator
/// among prefixes of the image of `a_1` perturbed by words of length at most `radius`.
pub fn verify_inner(group: &TwistGroup, m: &MappingClassWord, bound: usize) -> Verdict {
    let g = group.genus();
    let rel = group.relator();
    let gens: Vec<Letter> = (1..=g).flat_map(|i| [a(i), b(i)]).collect();
    let images: Vec<Vec<Letter>> = gens.iter().map(|&x| group.act_letters(m, &[x])).collect();
    let h1 = group.h1_matrix(m);
    if !h1.is_identity() {
        let j = (0..gens.len()).find(|&j| (0..gens.len()).any(|i| h1.0[i][j] != i64::from(i == j))).unwrap_or(0);
        return Verdict::Reject { generator: gens[j], reason: "nontrivial action on homology".into() };
    }
    for (x, y) in gens.iter().zip(&images) {
        if rel.conjugacy_key(&[*x]) != rel.conjugacy_key(y) {
            return Verdict::Reject { generator: *x, reason: "image not conjugate to generator".into() };
        }
    }
    let fits = |w: &[Letter]| -> bool {
        gens.iter().zip(&images).all(|(x, y)| {
            let mut c = w.to_vec();
            c.push(*x);
            c.extend(invert(w));
            rel.equal(&c, y)
        })
    };
    let alphabet: Vec<Letter> = gens.iter().flat_map(|&x| [x, x.inv()]).collect();
    let mut ball: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..2 {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last() != Some(&l.inv()) {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
        }
        ball.extend(next.iter().cloned());
        layer = next;
    }
    let y0 = rel.shorten(&images[0]);
    let first = gens[0];
    for cut in 0..=y0.len() {
        for c in &ball {
            let mut w = y0[..cut].to_vec();
            w.extend_from_slice(c);
            let w = free_reduce(&w);
            if w.len() > bound {
                continue;
            }
            let mut test = w.clone();
            test.push(first);
            test.extend(invert(&w));
            if !rel.equal(&test, &y0) {
                continue;
            }
            let span = (bound + images[1].len()) as i64;
            for k in 0..=2 * span {
                let k = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
                let mut cand = w.clone();
                let l = if k >= 0 { first } else { first.inv() };
                cand.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
                let cand = rel.shorten(&cand);
                if cand.len() <= bound + 1 && fits(&cand) {
                    return Verdict::Accept { conjugator: GroupWord { genus: g, letters: cand } };
                }
            }
        }
    }
    Verdict::Inconclusive { bound }
}

pub fn default_bound(group: &TwistGroup, m: &MappingClassWord) -> usize {
    let g = group.genus();
    let longest = (1..=g).flat_map(|i| [a(i), b(i)]).map(|x| group.act_letters(m, &[x]).len()).max().unwrap_or(0);
    4 * g as usize + longest
}

pub fn verify_relation(group: &TwistGroup, p: &Presentation, r: &Relation) -> Verdict {
    let m = p.word(r);
    let bound = default_bound(group, &m);
    verify_inner(group, &m, bound)
}
