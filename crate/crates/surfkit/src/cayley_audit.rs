//! Images of relation loops in the separating curve complex, contractibility
//! certificates, and path building from stabilizer data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex_engine::{builtin_spec, verify_edge, ComplexError, ComplexName, ComplexSpec, Vertex};
use crate::curve_calculus::{curves_equal, Curve, CurveError, CurveRef};
use crate::mapping_class::{Family, MappingClassError, MappingClassWord, Presentation, TwistLetter, TwistName};

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("audits need genus at least 4, got {0}")]
    Genus(u32),
    #[error("relation loop ends at {0} instead of the basepoint")]
    NotClosed(String),
    #[error("step {step}: {equation} fails")]
    PathStep { step: usize, equation: String },
    #[error("whisker data: {0}")]
    Whisker(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    MappingClass(#[from] MappingClassError),
}

/// The image of a relation word as a closed edge path of separating curves.
#[derive(Debug, Clone)]
pub struct RelationLoop {
    pub relation: MappingClassWord,
    pub vertices: Vec<Curve>,
}

impl RelationLoop {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn refs(&self) -> Vec<CurveRef> {
        self.vertices.iter().map(Curve::to_ref).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldKind {
    /// Drop the second of two equal neighbours.
    Repeat,
    /// Replace `x - y - x` by `x`.
    Spur,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldStep {
    pub position: usize,
    pub kind: FoldKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ContractionCertificate {
    #[serde(rename = "CONSTANT")]
    Constant,
    #[serde(rename = "ALTERNATING_V′")]
    AlternatingVPrime,
    #[serde(rename = "CONE")]
    Cone { witness: CurveRef },
    #[serde(rename = "BACKTRACK")]
    Backtrack { script: Vec<FoldStep> },
    #[serde(rename = "FAIL")]
    Fail,
}

impl ContractionCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            ContractionCertificate::Constant => "CONSTANT",
            ContractionCertificate::AlternatingVPrime => "ALTERNATING_V′",
            ContractionCertificate::Cone { .. } => "CONE",
            ContractionCertificate::Backtrack { .. } => "BACKTRACK",
            ContractionCertificate::Fail => "FAIL",
        }
    }
}

fn fold_once(vs: &[Curve]) -> Option<(FoldStep, Vec<Curve>)> {
    if let Some(i) = (0..vs.len().saturating_sub(1)).find(|&i| curves_equal(&vs[i], &vs[i + 1])) {
        let mut out = vs.to_vec();
        out.remove(i + 1);
        return Some((FoldStep { position: i, kind: FoldKind::Repeat }, out));
    }
    let i = (0..vs.len().saturating_sub(2)).find(|&i| curves_equal(&vs[i], &vs[i + 2]))?;
    let mut out = vs.to_vec();
    out.drain(i + 1..i + 3);
    Some((FoldStep { position: i, kind: FoldKind::Spur }, out))
}

/// Applies a folding script; `None` if some step does not apply.
pub fn apply_folds(vertices: &[Curve], script: &[FoldStep]) -> Option<Vec<Curve>> {
    let mut vs = vertices.to_vec();
    for s in script {
        match s.kind {
            FoldKind::Repeat if s.position + 1 < vs.len() && curves_equal(&vs[s.position], &vs[s.position + 1]) => {
                vs.remove(s.position + 1);
            }
            FoldKind::Spur if s.position + 2 < vs.len() && curves_equal(&vs[s.position], &vs[s.position + 2]) => {
                vs.drain(s.position + 1..s.position + 3);
            }
            _ => return None,
        }
    }
    Some(vs)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditEntry {
    pub index: usize,
    pub family: Family,
    pub loop_vertices: Vec<CurveRef>,
    pub certificate: ContractionCertificate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub genus: u32,
    pub entries: Vec<AuditEntry>,
    pub verdict: String,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

/// Curves describing one step of the path-building argument.
#[derive(Debug, Clone)]
pub struct PathStep {
    pub v_odd: Curve,
    pub v_even: Curve,
    pub epsilon: Curve,
    pub e: i8,
    pub f_word: MappingClassWord,
}

/// Checks relation loops and builds paths in the separating curve complex of genus at least 4.
pub struct Auditor {
    spec: ComplexSpec,
    v: Curve,
    vprime: Curve,
    beta: Curve,
}

fn single(v: &Vertex) -> Curve {
    match v {
        Vertex::Curves(cs) => cs[0].clone(),
        Vertex::Torus(_) => unreachable!("separating complex vertices are surface curves"),
    }
}

impl Auditor {
    pub fn new(genus: u32) -> Result<Auditor, AuditError> {
        if genus < 4 {
            return Err(AuditError::Genus(genus));
        }
        let spec = builtin_spec(ComplexName::CSep, genus)?;
        let calc = spec.calc();
        let v = calc.base_curve("v")?;
        let vprime = calc.base_curve("vprime")?;
        let beta = calc.base_curve(&format!("beta{}", genus - 1))?;
        Ok(Auditor { spec, v, vprime, beta })
    }

    pub fn genus(&self) -> u32 {
        self.spec.genus
    }

    pub fn spec(&self) -> &ComplexSpec {
        &self.spec
    }

    pub fn basepoint(&self) -> &Curve {
        &self.v
    }

    pub fn vprime(&self) -> &Curve {
        &self.vprime
    }

    fn last_beta(&self) -> TwistLetter {
        TwistLetter::new(TwistName::B(self.genus() - 1), 1)
    }

    /// Follows the word through the path table, translating each entry by the
    /// prefix read so far and merging repeated vertices.
    pub fn relation_loop(&self, word: &MappingClassWord) -> Result<RelationLoop, AuditError> {
        let calc = self.spec.calc();
        let mut vertices = vec![self.v.clone()];
        let mut prefix = MappingClassWord::identity(self.genus());
        for l in &word.letters {
            let k = self.spec.generator_index(&l.to_string())?;
            for p in self.spec.paths[k].iter().skip(1) {
                let c = calc.act(&prefix, &single(p));
                if !curves_equal(vertices.last().expect("nonempty"), &c) {
                    vertices.push(c);
                }
            }
            prefix = prefix.then(&MappingClassWord::single(self.genus(), *l));
        }
        let last = vertices.last().expect("nonempty");
        if !curves_equal(last, &self.v) {
            return Err(AuditError::NotClosed(last.to_string()));
        }
        Ok(RelationLoop { relation: word.clone(), vertices })
    }

    /// Every prefix of the relation fixes `v′`.
    fn stabilizes_vprime(&self, word: &MappingClassWord) -> bool {
        let calc = self.spec.calc();
        let mut prefix = MappingClassWord::identity(self.genus());
        for l in &word.letters {
            prefix = prefix.then(&MappingClassWord::single(self.genus(), *l));
            if !curves_equal(&calc.act(&prefix, &self.vprime), &self.vprime) {
                return false;
            }
        }
        true
    }

    fn witness_pool(&self) -> Vec<Curve> {
        let calc = self.spec.calc();
        std::iter::once("vdoubleprime".to_string())
            .chain((1..self.genus()).map(|k| format!("sigma{k}")))
            .filter_map(|n| calc.base_curve(&n).ok())
            .collect()
    }

    /// Tries constant, alternating at `v′`, backtrack and cone certificates in that order.
    ///
    /// The alternating certificate is only offered when every prefix of the relation
    /// fixes `v′`, so that the even vertices are `v′` by construction.
    pub fn classify(&self, lp: &RelationLoop) -> ContractionCertificate {
        let calc = self.spec.calc();
        let vs = &lp.vertices;
        if vs.iter().all(|u| curves_equal(u, &vs[0])) {
            return ContractionCertificate::Constant;
        }
        if self.stabilizes_vprime(&lp.relation)
            && vs.iter().skip(1).step_by(2).all(|u| curves_equal(u, &self.vprime))
            && vs.iter().step_by(2).all(|u| calc.intersection(u, &self.vprime) == 0 && !curves_equal(u, &self.vprime))
        {
            return ContractionCertificate::AlternatingVPrime;
        }
        let mut cur = vs.clone();
        let mut script = Vec::new();
        while cur.len() > 1 {
            match fold_once(&cur) {
                Some((step, next)) => {
                    script.push(step);
                    cur = next;
                }
                None => break,
            }
        }
        if cur.len() == 1 {
            return ContractionCertificate::Backtrack { script };
        }
        for w in self.witness_pool() {
            if vs.iter().all(|u| !curves_equal(u, &w) && calc.intersection(u, &w) == 0) {
                return ContractionCertificate::Cone { witness: w.to_ref() };
            }
        }
        ContractionCertificate::Fail
    }

    /// Re-checks a certificate against the loop from its stored data.
    pub fn replay_certificate(&self, lp: &RelationLoop, cert: &ContractionCertificate) -> Result<bool, AuditError> {
        let calc = self.spec.calc();
        let vs = &lp.vertices;
        Ok(match cert {
            ContractionCertificate::Constant => vs.iter().all(|u| curves_equal(u, &vs[0])),
            ContractionCertificate::AlternatingVPrime => {
                vs.len() % 2 == 1
                    && vs.iter().skip(1).step_by(2).all(|u| curves_equal(u, &self.vprime))
                    && vs.iter().step_by(2).all(|u| calc.intersection(u, &self.vprime) == 0)
            }
            ContractionCertificate::Cone { witness } => {
                let w = calc.from_ref(witness)?;
                vs.iter().all(|u| !curves_equal(u, &w) && calc.intersection(u, &w) == 0)
            }
            ContractionCertificate::Backtrack { script } => apply_folds(vs, script).is_some_and(|r| r.len() == 1),
            ContractionCertificate::Fail => false,
        })
    }

    pub fn audit_presentation(&self, p: &Presentation) -> Result<AuditReport, AuditError> {
        let mut entries = Vec::new();
        for (index, r) in p.relations.iter().enumerate() {
            let lp = self.relation_loop(&p.word(r))?;
            let certificate = self.classify(&lp);
            entries.push(AuditEntry { index, family: r.family, loop_vertices: lp.refs(), certificate });
        }
        let pass = entries.iter().all(|e| e.certificate != ContractionCertificate::Fail);
        Ok(AuditReport { genus: p.genus, entries, verdict: if pass { "PASS" } else { "FAIL" }.into() })
    }
}

impl Auditor {
    fn step_fail(step: usize, equation: &str) -> AuditError {
        AuditError::PathStep { step, equation: equation.to_string() }
    }

    /// Builds the step data from a stabilizer word: the images of `v`, `v′` and the
    /// last `β` curve under `prev · f`.
    pub fn path_step(&self, prev: &MappingClassWord, f_word: &MappingClassWord, e: i8) -> PathStep {
        let calc = self.spec.calc();
        let pf = prev.then(f_word);
        PathStep {
            v_odd: calc.act(prev, &self.v),
            v_even: calc.act(&pf, &self.vprime),
            epsilon: calc.act(&pf, &self.beta),
            e,
            f_word: f_word.clone(),
        }
    }

    /// Returns `prev · f · B^e` for the last `β` twist `B`, after checking every equation
    /// that makes it carry `v` to `T_ε^e(v_odd)` through `v_even`.
    pub fn build_step_word(&self, step_index: usize, prev: &MappingClassWord, step: &PathStep) -> Result<MappingClassWord, AuditError> {
        let calc = self.spec.calc();
        let fail = |eq: &str| Auditor::step_fail(step_index, eq);
        let b = self.last_beta();
        if step.e != 1 && step.e != -1 {
            return Err(fail("e = ±1"));
        }
        if step.f_word.contains(b.name) {
            return Err(fail("f avoids the last beta twist"));
        }
        if calc.intersection(&step.epsilon, &step.v_odd) != 2 {
            return Err(fail("i(epsilon, v_odd) = 2"));
        }
        if calc.intersection(&step.epsilon, &step.v_even) != 0 {
            return Err(fail("i(epsilon, v_even) = 0"));
        }
        if !curves_equal(&calc.act(prev, &self.v), &step.v_odd) {
            return Err(fail("prev(v) = v_odd"));
        }
        let pf = prev.then(&step.f_word);
        if !curves_equal(&calc.act(&pf, &self.v), &step.v_odd) {
            return Err(fail("prev f(v) = v_odd"));
        }
        if !curves_equal(&calc.act(&pf, &self.vprime), &step.v_even) {
            return Err(fail("prev f(v′) = v_even"));
        }
        if !curves_equal(&calc.act(&pf, &self.beta), &step.epsilon) {
            return Err(fail("prev f(beta) = epsilon"));
        }
        let w = pf.then(&MappingClassWord::single(self.genus(), TwistLetter::new(b.name, step.e)));
        let twist = calc.twist_word(&step.epsilon).ok_or_else(|| fail("epsilon is a twist curve"))?;
        let twist = if step.e == 1 { twist } else { twist.inverse() };
        if !curves_equal(&calc.act(&w, &self.v), &calc.act(&twist, &step.v_odd)) {
            return Err(fail("w(v) = T_epsilon^e(v_odd)"));
        }
        Ok(w)
    }

    /// Chains the steps from the identity and returns the final word with the path
    /// `v - v_2 - w_1(v) - v_4 - w_2(v) - ...`, every edge verified.
    pub fn build_path(&self, steps: &[PathStep]) -> Result<(MappingClassWord, Vec<Curve>), AuditError> {
        let calc = self.spec.calc();
        let mut w = MappingClassWord::identity(self.genus());
        let mut path = vec![self.v.clone()];
        for (i, s) in steps.iter().enumerate() {
            w = self.build_step_word(i, &w, s)?;
            path.push(s.v_even.clone());
            path.push(calc.act(&w, &self.v));
        }
        self.check_edges(&path)?;
        Ok((w, path))
    }

    fn check_edges(&self, path: &[Curve]) -> Result<(), AuditError> {
        for (index, e) in path.windows(2).enumerate() {
            let r = verify_edge(&self.spec, &Vertex::Curves(vec![e[0].clone()]), &Vertex::Curves(vec![e[1].clone()]))?;
            if !r.accepted {
                return Err(ComplexError::EdgeFailure { index, reason: r.reason.unwrap_or_default() }.into());
            }
        }
        Ok(())
    }

    /// Replaces `v_odd - v_even - v_next` by the path that returns to `v_even` after each
    /// twist: `v_odd - v_even - T_1(v_odd) - v_even - T_1 T_2(v_odd) - ... - v_next`.
    pub fn whisker_normalize(&self, v_odd: &Curve, v_even: &Curve, v_next: &Curve, etas: &[(Curve, i8)]) -> Result<Vec<Curve>, AuditError> {
        let calc = self.spec.calc();
        let mut product = MappingClassWord::identity(self.genus());
        let mut path = vec![v_odd.clone()];
        for (i, (eta, f)) in etas.iter().enumerate() {
            if calc.intersection(eta, v_odd) != 2 {
                return Err(AuditError::Whisker(format!("i(eta_{}, v_odd) = 2 fails", i + 1)));
            }
            if calc.intersection(eta, v_even) != 0 {
                return Err(AuditError::Whisker(format!("i(eta_{}, v_even) = 0 fails", i + 1)));
            }
            let t = calc.twist_word(eta).ok_or_else(|| AuditError::Whisker(format!("eta_{} is not a twist curve", i + 1)))?;
            let t = match f {
                1 => t,
                -1 => t.inverse(),
                _ => return Err(AuditError::Whisker(format!("f_{} is not ±1", i + 1))),
            };
            product = product.then(&t);
            path.push(v_even.clone());
            path.push(calc.act(&product, v_odd));
        }
        if !curves_equal(path.last().expect("nonempty"), v_next) {
            return Err(AuditError::Whisker("the twists do not carry v_odd to v_next".into()));
        }
        self.check_edges(&path)?;
        Ok(path)
    }
}
