//! Complexes of curves, cut systems and pants decompositions, and the path
//! builder joining a basepoint to its image under a word in the generators.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve_calculus::{
    curves_equal, homologous, is_separating, Component, Curve, CurveCalculus, CurveError, CurveRef, TorusCurve,
};
use crate::mapping_class::{MappingClassError, MappingClassWord, TwistLetter, TwistName};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("{name} needs {need}, got genus {genus}")]
    Genus { name: ComplexName, genus: u32, need: &'static str },
    #[error("path table for {generator}: edge {index} fails: {reason}")]
    PathTable { generator: String, index: usize, reason: String },
    #[error("certificate edge {index} fails: {reason}")]
    EdgeFailure { index: usize, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown complex `{0}`")]
    UnknownComplex(String),
    #[error("vertex arity {got} differs from {want}")]
    Arity { got: usize, want: usize },
    #[error("curves do not form a bounding pair")]
    NotBoundingPair,
    #[error("certificate does not match: {0}")]
    Replay(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    MappingClass(#[from] MappingClassError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexName {
    #[serde(rename = "C")]
    C,
    #[serde(rename = "C_nosep")]
    CNosep,
    #[serde(rename = "C_sep")]
    CSep,
    #[serde(rename = "C_half")]
    CHalf,
    #[serde(rename = "CutSystems")]
    CutSystems,
    #[serde(rename = "Pants")]
    Pants,
    #[serde(rename = "C_gamma")]
    CGamma,
}

impl ComplexName {
    pub const ALL: [ComplexName; 7] = [
        ComplexName::C,
        ComplexName::CNosep,
        ComplexName::CSep,
        ComplexName::CHalf,
        ComplexName::CutSystems,
        ComplexName::Pants,
        ComplexName::CGamma,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ComplexName::C => "C",
            ComplexName::CNosep => "C_nosep",
            ComplexName::CSep => "C_sep",
            ComplexName::CHalf => "C_half",
            ComplexName::CutSystems => "CutSystems",
            ComplexName::Pants => "Pants",
            ComplexName::CGamma => "C_gamma",
        }
    }
}

impl fmt::Display for ComplexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ComplexName {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<ComplexName, ComplexError> {
        let key: String = s.chars().filter(|c| *c != '_' && *c != '-').collect::<String>().to_lowercase();
        match key.as_str() {
            "c" => Ok(ComplexName::C),
            "cnosep" => Ok(ComplexName::CNosep),
            "csep" => Ok(ComplexName::CSep),
            "chalf" => Ok(ComplexName::CHalf),
            "cutsys" | "cutsystems" => Ok(ComplexName::CutSystems),
            "pants" => Ok(ComplexName::Pants),
            "cgamma" => Ok(ComplexName::CGamma),
            _ => Err(ComplexError::UnknownComplex(s.to_string())),
        }
    }
}

/// A vertex: one curve, a cut system, a pants decomposition, or a slope in the torus model.
#[derive(Debug, Clone)]
pub enum Vertex {
    Curves(Vec<Curve>),
    Torus(TorusCurve),
}

impl Vertex {
    pub fn arity(&self) -> usize {
        match self {
            Vertex::Curves(c) => c.len(),
            Vertex::Torus(_) => 1,
        }
    }

    pub fn to_ref(&self) -> VertexRef {
        match self {
            Vertex::Curves(cs) => VertexRef::Curves(cs.iter().map(Curve::to_ref).collect()),
            Vertex::Torus(t) => VertexRef::Torus(*t),
        }
    }
}

impl PartialEq for Vertex {
    fn eq(&self, other: &Vertex) -> bool {
        match (self, other) {
            (Vertex::Torus(a), Vertex::Torus(b)) => a == b,
            (Vertex::Curves(a), Vertex::Curves(b)) => {
                let mut ka: Vec<_> = a.iter().map(Curve::class).collect();
                let mut kb: Vec<_> = b.iter().map(Curve::class).collect();
                ka.sort();
                kb.sort();
                ka == kb
            }
            _ => false,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Torus(t) => write!(f, "{t}"),
            Vertex::Curves(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

/// Serialized vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Curves(Vec<CurveRef>),
    Torus(TorusCurve),
}

/// A generator of the acting group with its mapping-class word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub word: MappingClassWord,
}

pub struct ComplexSpec {
    pub name: ComplexName,
    pub genus: u32,
    pub arity: usize,
    pub basepoint: Vertex,
    pub generators: Vec<Generator>,
    /// `paths[k]` runs from the basepoint to `generators[k] · basepoint`.
    pub paths: Vec<Vec<Vertex>>,
    calc: Option<Arc<CurveCalculus>>,
}

/// Twist word carrying `delta2` onto `gamma2`, so that `T_gamma2 = f D2 f^-1`.
pub const GAMMA_TRANSPORT: &str = "A2^-1 B1^-1 A1^-1 D1^-1 D1^-1 A1^-1 B1^-1 A2^-1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeReport {
    pub accepted: bool,
    /// Intersection of the changed curves first, then of the new curve with the unchanged ones.
    pub intersections: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl EdgeReport {
    fn accept(intersections: Vec<usize>) -> EdgeReport {
        EdgeReport { accepted: true, intersections, reason: None }
    }

    fn reject(intersections: Vec<usize>, reason: impl Into<String>) -> EdgeReport {
        EdgeReport { accepted: false, intersections, reason: Some(reason.into()) }
    }
}

fn lickorish(genus: u32, with_h: bool) -> Vec<Generator> {
    let mut letters = TwistLetter::alphabet(genus);
    if with_h {
        letters.extend([TwistLetter::new(TwistName::H, 1), TwistLetter::new(TwistName::H, -1)]);
    }
    letters.into_iter().map(|l| Generator { name: l.to_string(), word: MappingClassWord::single(genus, l) }).collect()
}

/// Rank over the rationals of a set of integer vectors.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = *x * a - *y * b;
                }
            }
        }
        r += 1;
    }
    r
}

impl ComplexSpec {
    pub fn calculus(&self) -> Option<&CurveCalculus> {
        self.calc.as_deref()
    }

    pub(crate) fn calc(&self) -> &CurveCalculus {
        self.calc.as_deref().expect("surface complexes carry a curve calculus")
    }

    pub fn act(&self, m: &MappingClassWord, v: &Vertex) -> Result<Vertex, ComplexError> {
        Ok(match v {
            Vertex::Torus(t) => Vertex::Torus(t.act(m)?),
            Vertex::Curves(cs) => Vertex::Curves(cs.iter().map(|c| self.calc().act(m, c)).collect()),
        })
    }

    pub fn generator_index(&self, token: &str) -> Result<usize, ComplexError> {
        if let Some(k) = self.generators.iter().position(|g| g.name == token) {
            return Ok(k);
        }
        let canonical = token.parse::<TwistLetter>().map(|l| l.to_string()).unwrap_or_default();
        self.generators
            .iter()
            .position(|g| g.name == canonical)
            .ok_or_else(|| ComplexError::UnknownGenerator(token.to_string()))
    }

    /// Splits a whitespace-separated word into generator indices.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>, ComplexError> {
        s.split(|c: char| c.is_whitespace() || c == ',' || c == '*')
            .filter(|t| !t.is_empty() && *t != "1")
            .map(|t| self.generator_index(t))
            .collect()
    }

    pub fn word_of(&self, steps: &[usize]) -> MappingClassWord {
        steps.iter().fold(MappingClassWord::identity(self.genus), |acc, &k| acc.then(&self.generators[k].word))
    }

    /// Checks the vertex predicate of the complex.
    pub fn check_vertex(&self, v: &Vertex) -> Result<(), String> {
        if v.arity() != self.arity {
            return Err(format!("arity {} instead of {}", v.arity(), self.arity));
        }
        let Vertex::Curves(cs) = v else { return Ok(()) };
        let calc = self.calc();
        for c in cs {
            match self.name {
                ComplexName::CSep if !is_separating(c) => return Err(format!("{c} is not separating")),
                ComplexName::CNosep | ComplexName::CutSystems | ComplexName::CGamma if is_separating(c) => {
                    return Err(format!("{c} is separating"))
                }
                ComplexName::CHalf if c.complement() != self.half_type().as_slice() => {
                    return Err(format!("{c} does not split the surface into equal halves"))
                }
                _ => {}
            }
        }
        if self.name == ComplexName::CGamma {
            let Vertex::Curves(b) = &self.basepoint else { unreachable!() };
            if !homologous(&cs[0], &b[0]) {
                return Err(format!("{} is not homologous to the basepoint", cs[0]));
            }
        }
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if curves_equal(&cs[i], &cs[j]) {
                    return Err(format!("{} repeated", cs[i]));
                }
                let x = calc.intersection(&cs[i], &cs[j]);
                if x != 0 {
                    return Err(format!("{} and {} meet {x} times", cs[i], cs[j]));
                }
            }
        }
        if self.name == ComplexName::CutSystems {
            let rows = cs.iter().map(|c| c.homology().coords.iter().map(|&x| i128::from(x)).collect()).collect();
            if rank(rows) != cs.len() {
                return Err("complement is disconnected".into());
            }
        }
        Ok(())
    }

    fn half_type(&self) -> Vec<Component> {
        vec![Component::new(self.genus / 2, 1); 2]
    }
}

pub fn verify_edge(spec: &ComplexSpec, u: &Vertex, w: &Vertex) -> Result<EdgeReport, ComplexError> {
    for x in [u, w] {
        if x.arity() != spec.arity {
            return Err(ComplexError::Arity { got: x.arity(), want: spec.arity });
        }
    }
    if u == w {
        return Ok(EdgeReport::reject(vec![0], "self-loop"));
    }
    let (cu, cw) = match (u, w) {
        (Vertex::Torus(a), Vertex::Torus(b)) => {
            let i = crate::curve_calculus::torus_intersection(*a, *b) as usize;
            return Ok(if i == 1 { EdgeReport::accept(vec![i]) } else { EdgeReport::reject(vec![i], format!("i_g = {i}, need 1")) });
        }
        (Vertex::Curves(a), Vertex::Curves(b)) => (a, b),
        _ => return Ok(EdgeReport::reject(vec![], "mixed vertex kinds")),
    };
    for x in [u, w] {
        if let Err(e) = spec.check_vertex(x) {
            return Ok(EdgeReport::reject(vec![], format!("vertex predicate: {e}")));
        }
    }
    let calc = spec.calc();
    if spec.arity == 1 {
        let i = calc.intersection(&cu[0], &cw[0]);
        let need = match spec.name {
            ComplexName::CHalf if spec.genus == 2 => 4,
            ComplexName::CHalf => 2,
            _ => 0,
        };
        return Ok(if i == need {
            EdgeReport::accept(vec![i])
        } else {
            EdgeReport::reject(vec![i], format!("i_g = {i}, need {need}"))
        });
    }
    let gone: Vec<&Curve> = cu.iter().filter(|c| !cw.iter().any(|d| curves_equal(c, d))).collect();
    let new: Vec<&Curve> = cw.iter().filter(|c| !cu.iter().any(|d| curves_equal(c, d))).collect();
    if gone.len() != 1 || new.len() != 1 {
        return Ok(EdgeReport::reject(vec![], format!("{} curves changed, need exactly 1", gone.len().max(new.len()))));
    }
    let (c, d) = (gone[0], new[0]);
    let i = calc.intersection(c, d);
    let alg = calc.algebraic_intersection(c, d).abs();
    let mut report = vec![i];
    report.extend(cu.iter().filter(|x| !curves_equal(x, c)).map(|x| calc.intersection(x, d)));
    let ok = match spec.name {
        ComplexName::CutSystems => i == 1,
        _ => (i == 1 && alg == 1) || (i == 2 && alg == 0),
    };
    Ok(if ok {
        EdgeReport::accept(report)
    } else {
        EdgeReport::reject(report, format!("changed pair has i_g = {i} and algebraic intersection {alg}"))
    })
}

/// Reverses a half path whose last vertex is fixed by `s` and appends its `s`-image.
fn reflect(spec: &ComplexSpec, s: &MappingClassWord, half: Vec<Vertex>) -> Result<Vec<Vertex>, ComplexError> {
    let mut out = half.clone();
    for v in half.iter().rev().skip(1) {
        out.push(spec.act(s, v)?);
    }
    Ok(out)
}

fn curves(calc: &CurveCalculus, names: &[String]) -> Result<Vertex, ComplexError> {
    Ok(Vertex::Curves(names.iter().map(|n| calc.base_curve(n)).collect::<Result<_, _>>()?))
}

fn pants_names(g: u32) -> Vec<String> {
    let mut n: Vec<String> = (1..=g).map(|i| format!("delta{i}")).collect();
    n.extend((1..g).map(|k| format!("sigma{k}")));
    n.extend((2..g).map(|k| format!("mu{k}")));
    n
}

fn replace(names: &[String], old: &str, new: &str) -> Vec<String> {
    names.iter().map(|n| if n == old { new.to_string() } else { n.clone() }).collect()
}

fn genus_error(name: ComplexName, genus: u32, need: &'static str) -> ComplexError {
    ComplexError::Genus { name, genus, need }
}

/// Builds a complex specification with its basepoint and path table, validating every table entry.
pub fn builtin_spec(name: ComplexName, genus: u32) -> Result<ComplexSpec, ComplexError> {
    let g = genus;
    let ok = match name {
        ComplexName::C | ComplexName::CNosep | ComplexName::Pants => g >= 2,
        ComplexName::CSep | ComplexName::CGamma => g >= 3,
        ComplexName::CHalf => g >= 2 && g.is_multiple_of(2),
        ComplexName::CutSystems => g >= 1,
    };
    if !ok {
        let need = match name {
            ComplexName::C | ComplexName::CNosep | ComplexName::Pants => "genus at least 2",
            ComplexName::CSep | ComplexName::CGamma => "genus at least 3",
            ComplexName::CHalf => "an even ambient genus",
            ComplexName::CutSystems => "genus at least 1",
        };
        return Err(genus_error(name, g, need));
    }
    if name == ComplexName::CutSystems && g == 1 {
        let mut spec = ComplexSpec {
            name,
            genus: 1,
            arity: 1,
            basepoint: Vertex::Torus(TorusCurve::of_twist(TwistName::D(1))?),
            generators: lickorish(1, false),
            paths: Vec::new(),
            calc: None,
        };
        spec.paths = spec
            .generators
            .iter()
            .map(|s| {
                let img = spec.act(&s.word, &spec.basepoint)?;
                Ok(if img == spec.basepoint { vec![img] } else { vec![spec.basepoint.clone(), img] })
            })
            .collect::<Result<_, ComplexError>>()?;
        spec.validate()?;
        return Ok(spec);
    }
    let calc = Arc::new(CurveCalculus::new(g)?);
    let (arity, base_names, generators): (usize, Vec<String>, Vec<Generator>) = match name {
        ComplexName::CSep => (1, vec!["v".into()], lickorish(g, true)),
        ComplexName::C | ComplexName::CNosep => (1, vec![format!("alpha{g}")], lickorish(g, false)),
        ComplexName::CHalf => (1, vec!["half_v".into()], lickorish(g, false)),
        ComplexName::CutSystems => (g as usize, (1..=g).map(|i| format!("delta{i}")).collect(), lickorish(g, false)),
        ComplexName::Pants => (3 * g as usize - 3, pants_names(g), lickorish(g, false)),
        ComplexName::CGamma => {
            let f = MappingClassWord::parse(g, GAMMA_TRANSPORT)?;
            let d2 = MappingClassWord::parse(g, "D2")?;
            let bp = d2.then(&f.then(&d2.inverse()).then(&f.inverse()));
            let gens = vec![Generator { name: "BP".into(), word: bp.clone() }, Generator { name: "BP^-1".into(), word: bp.inverse() }];
            (1, vec!["alpha2".into()], gens)
        }
    };
    let basepoint = curves(&calc, &base_names)?;
    let mut spec = ComplexSpec { name, genus: g, arity, basepoint, generators, paths: Vec::new(), calc: Some(calc.clone()) };
    let mut paths = Vec::new();
    for s in &spec.generators {
        let img = spec.act(&s.word, &spec.basepoint)?;
        let v = spec.basepoint.clone();
        let path = if img == v {
            vec![v]
        } else {
            let letter = s.word.letters.first().copied();
            match (name, letter.map(|l| l.name)) {
                (ComplexName::CSep, _) => reflect(&spec, &s.word, vec![v, curves(&calc, &["vprime".into()])?])?,
                (ComplexName::C | ComplexName::CNosep, _) => reflect(&spec, &s.word, vec![v, curves(&calc, &["delta1".into()])?])?,
                (ComplexName::CHalf, _) if g >= 4 => reflect(&spec, &s.word, vec![v, curves(&calc, &["half_vprime".into()])?])?,
                (ComplexName::Pants, Some(TwistName::B(k))) => {
                    let mut names = pants_names(g);
                    let mut half = vec![v];
                    if k + 1 < g {
                        names = replace(&names, &format!("mu{}", k + 1), &format!("nu{}", k + 1));
                        half.push(curves(&calc, &names)?);
                    }
                    if k >= 2 {
                        names = replace(&names, &format!("mu{k}"), &format!("nu{k}"));
                        half.push(curves(&calc, &names)?);
                    }
                    names = replace(&names, &format!("sigma{k}"), &format!("beta{k}"));
                    half.push(curves(&calc, &names)?);
                    reflect(&spec, &s.word, half)?
                }
                _ => vec![v, img],
            }
        };
        paths.push(path);
    }
    spec.paths = paths;
    spec.validate()?;
    Ok(spec)
}

impl ComplexSpec {
    /// Checks every path-table entry: endpoints, edges, and the stabilizer pattern.
    pub fn validate(&self) -> Result<(), ComplexError> {
        self.check_vertex(&self.basepoint).map_err(|reason| ComplexError::PathTable {
            generator: "basepoint".into(),
            index: 0,
            reason,
        })?;
        for (s, path) in self.generators.iter().zip(&self.paths) {
            let fail = |index: usize, reason: String| ComplexError::PathTable { generator: s.name.clone(), index, reason };
            let img = self.act(&s.word, &self.basepoint)?;
            if path.first() != Some(&self.basepoint) || path.last() != Some(&img) {
                return Err(fail(0, "path does not join the basepoint to its image".into()));
            }
            if (path.len() == 1) != (img == self.basepoint) {
                return Err(fail(0, "degenerate entry disagrees with the stabilizer".into()));
            }
            for (k, e) in path.windows(2).enumerate() {
                let r = verify_edge(self, &e[0], &e[1])?;
                if !r.accepted {
                    return Err(fail(k, r.reason.unwrap_or_default()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StepRecord {
    pub generator: String,
    /// Index of the first certificate vertex contributed by this step.
    pub first_vertex: usize,
    pub vertices_added: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PathCertificate {
    pub spec: ComplexName,
    pub genus: u32,
    pub word: Vec<String>,
    pub vertices: Vec<VertexRef>,
    pub edges: Vec<EdgeReport>,
    pub provenance: Vec<StepRecord>,
}

impl PathCertificate {
    pub fn all_accepted(&self) -> bool {
        self.edges.iter().all(|e| e.accepted)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph \"{}\" {{\n", self.spec);
        for (k, v) in self.vertices.iter().enumerate() {
            let label = serde_json::to_string(v).expect("vertex serializes").replace('"', "'");
            out.push_str(&format!("  v{k} [label=\"{label}\"];\n"));
        }
        for (k, e) in self.edges.iter().enumerate() {
            out.push_str(&format!("  v{k} -- v{} [label=\"{:?}\"];\n", k + 1, e.intersections));
        }
        out.push_str("}\n");
        out
    }
}

/// Joins the basepoint to `word · basepoint` by translated path-table entries, merging repeated vertices.
pub fn connect_to_image(spec: &ComplexSpec, steps: &[usize]) -> Result<PathCertificate, ComplexError> {
    let mut verts: Vec<Vertex> = vec![spec.basepoint.clone()];
    let mut prefix = MappingClassWord::identity(spec.genus);
    let mut provenance = Vec::new();
    for &k in steps {
        let first = verts.len();
        for v in spec.paths[k].iter().skip(1) {
            let t = spec.act(&prefix, v)?;
            if verts.last() == Some(&t) {
                *verts.last_mut().expect("nonempty") = t;
            } else {
                verts.push(t);
            }
        }
        provenance.push(StepRecord { generator: spec.generators[k].name.clone(), first_vertex: first, vertices_added: verts.len() - first });
        prefix = prefix.then(&spec.generators[k].word);
    }
    let mut edges = Vec::new();
    for (index, e) in verts.windows(2).enumerate() {
        let r = verify_edge(spec, &e[0], &e[1])?;
        if !r.accepted {
            return Err(ComplexError::EdgeFailure { index, reason: r.reason.unwrap_or_default() });
        }
        edges.push(r);
    }
    Ok(PathCertificate {
        spec: spec.name,
        genus: spec.genus,
        word: steps.iter().map(|&k| spec.generators[k].name.clone()).collect(),
        vertices: verts.iter().map(Vertex::to_ref).collect(),
        edges,
        provenance,
    })
}

pub fn vertex_from_ref(spec: &ComplexSpec, r: &VertexRef) -> Result<Vertex, ComplexError> {
    Ok(match r {
        VertexRef::Torus(t) => Vertex::Torus(*t),
        VertexRef::Curves(cs) => {
            let calc = spec.calculus().ok_or_else(|| ComplexError::Replay("surface vertex in the torus model".into()))?;
            Vertex::Curves(cs.iter().map(|c| calc.from_ref(c)).collect::<Result<_, _>>()?)
        }
    })
}

/// Re-verifies a certificate from its stored vertices without rebuilding the path.
pub fn replay(spec: &ComplexSpec, cert: &PathCertificate) -> Result<(), ComplexError> {
    if cert.spec != spec.name || cert.genus != spec.genus {
        return Err(ComplexError::Replay(format!("certificate is for {} genus {}", cert.spec, cert.genus)));
    }
    let verts: Vec<Vertex> = cert.vertices.iter().map(|r| vertex_from_ref(spec, r)).collect::<Result<_, _>>()?;
    let steps: Vec<usize> = cert.word.iter().map(|t| spec.generator_index(t)).collect::<Result<_, _>>()?;
    let target = spec.act(&spec.word_of(&steps), &spec.basepoint)?;
    if verts.first() != Some(&spec.basepoint) || verts.last() != Some(&target) {
        return Err(ComplexError::Replay("endpoints differ from the basepoint and its image".into()));
    }
    if cert.edges.len() + 1 != verts.len() {
        return Err(ComplexError::Replay("edge count does not match vertex count".into()));
    }
    for (index, (e, stored)) in verts.windows(2).zip(&cert.edges).enumerate() {
        let r = verify_edge(spec, &e[0], &e[1])?;
        if !r.accepted {
            return Err(ComplexError::EdgeFailure { index, reason: r.reason.unwrap_or_default() });
        }
        if &r != stored {
            return Err(ComplexError::Replay(format!("edge {index} report differs from the stored one")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum StepKind {
    Fixed,
    Disjoint,
    Neither,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepCheck {
    pub kind: StepKind,
    pub word: MappingClassWord,
    pub torelli: bool,
    pub intersection: usize,
    pub homologous: bool,
}

/// Classifies the step `v ↦ T_{c1} T_{c2}^-1 · v` for a bounding pair `(c1, c2)`.
pub fn cgamma_step_check(calc: &CurveCalculus, c1: &Curve, c2: &Curve, v: &Curve) -> Result<StepCheck, ComplexError> {
    if !calc.is_bounding_pair(c1, c2) {
        return Err(ComplexError::NotBoundingPair);
    }
    let (t1, t2) = calc.twist_word(c1).zip(calc.twist_word(c2)).ok_or(ComplexError::NotBoundingPair)?;
    let word = t1.then(&t2.inverse());
    let sv = calc.act(&word, v);
    let intersection = calc.intersection(v, &sv);
    let hom = homologous(v, &sv);
    let kind = if curves_equal(v, &sv) {
        StepKind::Fixed
    } else if intersection == 0 && hom {
        StepKind::Disjoint
    } else {
        StepKind::Neither
    };
    Ok(StepCheck { kind, torelli: calc.group().is_torelli(&word), word, intersection, homologous: hom })
}
