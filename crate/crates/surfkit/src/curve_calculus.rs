//! Curves as mapping-class images of catalogued base curves.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperbolic::PolygonModel;
use crate::mapping_class::{conjugated_twist, core_curve, MappingClassError, MappingClassWord, TwistGroup, TwistLetter, TwistName};
use crate::surface_group::{
    homology_class, invert, symplectic_pairing, CyclicWord, GroupWord, HomologyClass, Letter, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("no base curve `{name}` at genus {genus}")]
    UnknownBase { name: String, genus: u32 },
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("base-curve table: {0}")]
    Table(String),
    #[error("torus curve ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("twist {0} does not act on the torus model")]
    TorusLetter(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    MappingClass(#[from] MappingClassError),
}

/// One complementary component: its genus and number of boundary circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Component {
    pub genus: u32,
    pub boundaries: u32,
}

impl Component {
    pub fn new(genus: u32, boundaries: u32) -> Component {
        Component { genus, boundaries }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.genus, self.boundaries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCurve {
    pub word: GroupWord,
    pub complement: Vec<Component>,
    /// Intersection numbers against the core curves of the twist generators.
    #[serde(default)]
    pub ig_row: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCurveTable {
    pub genus: u32,
    pub curves: BTreeMap<String, BaseCurve>,
}

fn commutator(i: u32) -> Vec<Letter> {
    vec![Letter::a(i), Letter::b(i), Letter::a(i).inv(), Letter::b(i).inv()]
}

/// `[a_lo, b_lo] ... [a_hi, b_hi]`.
pub fn commutator_product(lo: u32, hi: u32) -> Vec<Letter> {
    (lo..=hi).flat_map(commutator).collect()
}

fn separating(genus: u32, inner: u32) -> Vec<Component> {
    let mut c = vec![Component::new(inner, 1), Component::new(genus - inner, 1)];
    c.sort();
    c
}

fn nonseparating(genus: u32) -> Vec<Component> {
    vec![Component::new(genus - 1, 2)]
}

/// Name of the generator core curve twisted by `name`.
pub fn core_name(name: TwistName) -> Option<String> {
    match name {
        TwistName::A(i) => Some(format!("alpha{i}")),
        TwistName::D(i) => Some(format!("delta{i}")),
        TwistName::B(i) => Some(format!("beta{i}")),
        TwistName::H => None,
    }
}

impl BaseCurveTable {
    /// The catalogue used by the complex specifications.
    pub fn builtin(genus: u32) -> Result<BaseCurveTable, CurveError> {
        if genus < 2 {
            return Err(WordError::GenusTooSmall(genus).into());
        }
        let g = genus;
        let mut raw: Vec<(String, Vec<Letter>, Vec<Component>)> = Vec::new();
        for l in TwistLetter::alphabet(g).into_iter().filter(|l| l.exponent == 1 && l.name != TwistName::H) {
            let name = core_name(l.name).expect("twist curve");
            raw.push((name, core_curve(g, l.name), nonseparating(g)));
        }
        for k in 1..g {
            raw.push((format!("sigma{k}"), commutator_product(1, k), separating(g, k)));
        }
        for k in 2..g {
            raw.push((format!("mu{k}"), commutator(k), separating(g, 1)));
            let mut nu = invert(&commutator_product(1, k - 1));
            nu.push(Letter::b(k));
            raw.push((format!("nu{k}"), nu, nonseparating(g)));
        }
        raw.push(("x13".into(), vec![Letter::a(1), Letter::b(1), Letter::a(1).inv(), Letter::b(2).inv()], nonseparating(g)));
        raw.push(("v".into(), commutator(g), separating(g, 1)));
        raw.push(("vprime".into(), commutator(1), separating(g, 1)));
        if g >= 4 {
            raw.push(("vdoubleprime".into(), commutator_product(1, 2), separating(g, 2)));
        }
        if g.is_multiple_of(2) {
            let h = g / 2;
            raw.push(("half_v".into(), commutator_product(1, h), separating(g, h)));
            if h >= 2 {
                raw.push(("half_vprime".into(), commutator_product(2, h + 1), separating(g, h)));
            }
        }
        if g >= 3 {
            raw.push(("gamma1".into(), vec![Letter::b(2)], nonseparating(g)));
            let mut nu = invert(&commutator(1));
            nu.push(Letter::b(2));
            raw.push(("gamma2".into(), nu, nonseparating(g)));
        }
        let model = PolygonModel::new(g)?;
        let cores: Vec<(String, Vec<Letter>)> = TwistLetter::alphabet(g)
            .into_iter()
            .filter(|l| l.exponent == 1 && l.name != TwistName::H)
            .map(|l| (l.to_string(), core_curve(g, l.name)))
            .collect();
        let rel = model.relator().clone();
        let mut curves = BTreeMap::new();
        for (name, word, complement) in raw {
            let key = CyclicWord::class_of(&rel, &word);
            let ig_row = cores
                .iter()
                .map(|(n, c)| {
                    let i = if CyclicWord::class_of(&rel, c) == key { 0 } else { model.intersection(&word, c) };
                    (n.clone(), i)
                })
                .collect();
            curves.insert(name, BaseCurve { word: GroupWord { genus: g, letters: word }, complement, ig_row });
        }
        Ok(BaseCurveTable { genus: g, curves })
    }

    pub fn from_json(json: &str) -> Result<BaseCurveTable, CurveError> {
        let t: BaseCurveTable = serde_json::from_str(json).map_err(|e| CurveError::Table(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Checks the separation metadata against homology and the symmetry of catalogued rows.
    pub fn validate(&self) -> Result<(), CurveError> {
        for (name, c) in &self.curves {
            if c.word.genus != self.genus {
                return Err(CurveError::GenusMismatch(c.word.genus, self.genus));
            }
            let sep = homology_class(&c.word).is_zero();
            if sep != (c.complement.len() >= 2) {
                return Err(CurveError::Table(format!("`{name}`: separation disagrees with its complement")));
            }
        }
        for l in TwistLetter::alphabet(self.genus).into_iter().filter(|l| l.exponent == 1) {
            let Some(core) = core_name(l.name) else { continue };
            let Some(row) = self.curves.get(&core).map(|c| &c.ig_row) else { continue };
            for m in TwistLetter::alphabet(self.genus).into_iter().filter(|m| m.exponent == 1) {
                let Some(other) = core_name(m.name) else { continue };
                let Some(orow) = self.curves.get(&other).map(|c| &c.ig_row) else { continue };
                if let (Some(x), Some(y)) = (row.get(&m.to_string()), orow.get(&l.to_string())) {
                    if x != y {
                        return Err(CurveError::Table(format!("asymmetric entries for {core} and {other}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&BaseCurve, CurveError> {
        self.curves.get(name).ok_or_else(|| CurveError::UnknownBase { name: name.to_string(), genus: self.genus })
    }
}

/// Serialized form of a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRef {
    pub base: String,
    pub prefix: MappingClassWord,
}

/// The image `prefix · base` of a catalogued curve, with its class computed at construction.
#[derive(Debug, Clone)]
pub struct Curve {
    base: String,
    prefix: MappingClassWord,
    word: Vec<Letter>,
    class: CyclicWord,
    homology: HomologyClass,
    complement: Vec<Component>,
}

impl Curve {
    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn prefix(&self) -> &MappingClassWord {
        &self.prefix
    }

    pub fn genus(&self) -> u32 {
        self.class.genus
    }

    /// A cyclically shortened word representing the curve.
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn class(&self) -> &CyclicWord {
        &self.class
    }

    pub fn homology(&self) -> &HomologyClass {
        &self.homology
    }

    pub fn complement(&self) -> &[Component] {
        &self.complement
    }

    pub fn to_ref(&self) -> CurveRef {
        CurveRef { base: self.base.clone(), prefix: self.prefix.clone() }
    }
}

impl PartialEq for Curve {
    fn eq(&self, other: &Curve) -> bool {
        curves_equal(self, other)
    }
}

impl Eq for Curve {}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({})·{}", self.prefix, self.base)
        }
    }
}

/// Isotopy of unoriented curves: conjugacy up to inversion.
pub fn curves_equal(c1: &Curve, c2: &Curve) -> bool {
    c1.class == c2.class
}

pub fn is_separating(c: &Curve) -> bool {
    c.homology.is_zero()
}

pub fn homologous(c1: &Curve, c2: &Curve) -> bool {
    c1.homology == c2.homology || c1.homology == c2.homology.neg()
}

/// Twist group, hyperbolic model and catalogue for one genus, with a memo of intersection numbers.
pub struct CurveCalculus {
    group: TwistGroup,
    model: PolygonModel,
    table: BaseCurveTable,
    memo: Mutex<HashMap<(CyclicWord, CyclicWord), usize>>,
}

impl CurveCalculus {
    pub fn new(genus: u32) -> Result<CurveCalculus, CurveError> {
        CurveCalculus::with_table(BaseCurveTable::builtin(genus)?)
    }

    pub fn with_table(table: BaseCurveTable) -> Result<CurveCalculus, CurveError> {
        table.validate()?;
        let group = TwistGroup::new(table.genus)?;
        let model = PolygonModel::new(table.genus)?;
        Ok(CurveCalculus { group, model, table, memo: Mutex::new(HashMap::new()) })
    }

    pub fn genus(&self) -> u32 {
        self.table.genus
    }

    pub fn group(&self) -> &TwistGroup {
        &self.group
    }

    pub fn table(&self) -> &BaseCurveTable {
        &self.table
    }

    pub fn base_curve(&self, name: &str) -> Result<Curve, CurveError> {
        self.curve(name, &MappingClassWord::identity(self.genus()))
    }

    pub fn curve(&self, name: &str, prefix: &MappingClassWord) -> Result<Curve, CurveError> {
        if prefix.genus != self.genus() {
            return Err(CurveError::GenusMismatch(prefix.genus, self.genus()));
        }
        let b = self.table.get(name)?;
        Ok(self.build(name.to_string(), prefix.clone(), &b.word.letters, b.complement.clone()))
    }

    pub fn from_ref(&self, r: &CurveRef) -> Result<Curve, CurveError> {
        self.curve(&r.base, &r.prefix)
    }

    fn build(&self, base: String, prefix: MappingClassWord, base_word: &[Letter], complement: Vec<Component>) -> Curve {
        let rel = self.group.relator();
        let word = rel.cyclic_shorten(&self.group.act_letters(&prefix, base_word));
        let class = CyclicWord::class_of(rel, &word);
        let homology = homology_class(&GroupWord { genus: self.genus(), letters: word.clone() });
        Curve { base, prefix, word, class, homology, complement }
    }

    /// `m · c`: the prefix becomes `m` followed by the old prefix.
    pub fn act(&self, m: &MappingClassWord, c: &Curve) -> Curve {
        let prefix = m.then(&c.prefix);
        let base_word = &self.table.curves[&c.base].word.letters;
        self.build(c.base.clone(), prefix, base_word, c.complement.clone())
    }

    /// Geometric intersection number; zero for equal classes.
    pub fn intersection(&self, c1: &Curve, c2: &Curve) -> usize {
        if curves_equal(c1, c2) {
            return 0;
        }
        let key = if c1.class <= c2.class { (c1.class.clone(), c2.class.clone()) } else { (c2.class.clone(), c1.class.clone()) };
        if let Some(&i) = self.memo.lock().expect("memo lock").get(&key) {
            return i;
        }
        let relative = c1.prefix.inverse().then(&c2.prefix);
        let i = if relative.len() < c1.prefix.len() + c2.prefix.len() {
            let rel = self.group.relator();
            let w1 = &self.table.curves[&c1.base].word.letters;
            let w2 = rel.cyclic_shorten(&self.group.act_letters(&relative, &self.table.curves[&c2.base].word.letters));
            self.model.intersection(w1, &w2)
        } else {
            self.model.intersection(&c1.word, &c2.word)
        };
        self.memo.lock().expect("memo lock").insert(key, i);
        i
    }

    /// Disjoint, both nonseparating, homologous and not isotopic.
    pub fn is_bounding_pair(&self, c1: &Curve, c2: &Curve) -> bool {
        !is_separating(c1)
            && !is_separating(c2)
            && homologous(c1, c2)
            && !curves_equal(c1, c2)
            && self.intersection(c1, c2) == 0
    }

    /// `prefix · T · prefix^-1` when the base curve is the core of a twist generator.
    pub fn twist_word(&self, c: &Curve) -> Option<MappingClassWord> {
        let name = TwistLetter::alphabet(self.genus())
            .into_iter()
            .find(|l| l.exponent == 1 && core_name(l.name).as_deref() == Some(c.base.as_str()))?;
        Some(conjugated_twist(&c.prefix, name))
    }

    /// Algebraic intersection of the homology classes.
    pub fn algebraic_intersection(&self, c1: &Curve, c2: &Curve) -> i64 {
        symplectic_pairing(&c1.homology, &c2.homology).expect("same genus")
    }
}

/// A simple closed curve on the torus, as a primitive slope up to sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusCurve {
    pub p: i64,
    pub q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

impl TorusCurve {
    pub fn new(p: i64, q: i64) -> Result<TorusCurve, CurveError> {
        if gcd(p, q) != 1 {
            return Err(CurveError::NotPrimitive(p, q));
        }
        let s = if p < 0 || (p == 0 && q < 0) { -1 } else { 1 };
        Ok(TorusCurve { p: s * p, q: s * q })
    }

    /// `alpha1` is the slope (1,0) and `delta1` is (0,1).
    pub fn of_twist(name: TwistName) -> Result<TorusCurve, CurveError> {
        match name {
            TwistName::A(1) => TorusCurve::new(1, 0),
            TwistName::D(1) => TorusCurve::new(0, 1),
            other => Err(CurveError::TorusLetter(format!("{other:?}"))),
        }
    }

    /// Applies a twist letter as the transvection `x ↦ x + e⟨x,c⟩c`.
    pub fn twist(self, l: TwistLetter) -> Result<TorusCurve, CurveError> {
        let c = TorusCurve::of_twist(l.name)?;
        let k = i64::from(l.exponent) * (self.p * c.q - self.q * c.p);
        TorusCurve::new(self.p + k * c.p, self.q + k * c.q)
    }

    pub fn act(self, m: &MappingClassWord) -> Result<TorusCurve, CurveError> {
        m.letters.iter().rev().try_fold(self, |t, &l| t.twist(l))
    }
}

impl fmt::Display for TorusCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

pub fn torus_intersection(t1: TorusCurve, t2: TorusCurve) -> i64 {
    (t1.p * t2.q - t2.p * t1.q).abs()
}
