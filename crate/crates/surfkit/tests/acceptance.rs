//! Acceptance criteria 1 to 10. Each test prints one `criterion N: PASS|FAIL` line.

mod common;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surfkit::cayley_audit::{Auditor, ContractionCertificate};
use surfkit::complex_engine::{builtin_spec, cgamma_step_check, connect_to_image, replay, ComplexName, StepKind, GAMMA_TRANSPORT};
use surfkit::curve_calculus::{curves_equal, homologous, CurveCalculus};
use surfkit::mapping_class::{builtin_presentation, h_word, verify_relation, Family, MappingClassWord, TwistGroup, TwistLetter, TwistName};
use surfkit::pants_trivalent::{connect_graphs, enumerate_trivalent, is_isomorphic, verify_quotient_connectivity};
use surfkit::surface_group::Relator;

const SEED: u64 = 0x5eed_2024;
const CONJ_WORD_LEN: usize = 6;
const C5_WORDS: usize = 200;
const C5_MAX_LEN: usize = 20;
const C8_RANDOM_INPUTS: usize = 20;
const C10_RANDOM_PAIRS: usize = 100;
const C10_PREFIX_LEN: usize = 4;

fn report(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn word(g: u32, s: &str) -> MappingClassWord {
    MappingClassWord::parse(g, s).unwrap()
}

fn with_h(g: u32) -> Vec<TwistLetter> {
    let mut s = TwistLetter::alphabet(g);
    s.extend([TwistLetter::new(TwistName::H, 1), TwistLetter::new(TwistName::H, -1)]);
    s
}

#[test]
fn criterion_01_conjugacy_matches_brute_force() {
    let rel = Relator::new(2).unwrap();
    let space = common::conjugacy::WordSpace::new();
    let components = common::conjugacy::conjugacy_components(&space);
    let mut by_key: HashMap<Vec<_>, u32> = HashMap::new();
    let mut by_component: HashMap<u32, Vec<_>> = HashMap::new();
    let mut disagreements = 0;
    let n = space.count_up_to(CONJ_WORD_LEN);
    for id in 0..n {
        let w = space.unrank(id);
        let key = rel.conjugacy_key(&w);
        let c = components[id];
        if *by_key.entry(key.clone()).or_insert(c) != c || *by_component.entry(c).or_insert(key.clone()) != key {
            disagreements += 1;
        }
    }
    report(1, disagreements == 0, &format!("{n} words, {} classes, {disagreements} disagreements", by_key.len()));
}

#[test]
fn criterion_02_presentation_verifies() {
    let p = builtin_presentation();
    let group = TwistGroup::new(4).unwrap();
    let rejected: Vec<usize> = p.relations.iter().enumerate().filter(|(_, r)| !verify_relation(&group, &p, r).is_accept()).map(|(i, _)| i).collect();
    let both: Vec<Family> = p.both_beta().iter().map(|&i| p.relations[i].family).collect();
    let ok = rejected.is_empty() && both == vec![Family::CommuteBeta, Family::HExpansion];
    report(2, ok, &format!("{} relations, rejected {rejected:?}, both-beta families {both:?}", p.relations.len()));
}

#[test]
fn criterion_03_hyperelliptic_word_acts_as_minus_identity() {
    let group = TwistGroup::new(4).unwrap();
    let m = group.h1_matrix(&h_word(4));
    report(3, m.is_minus_identity(), &format!("h1 matrix rows {:?}", m.0));
}

#[test]
fn criterion_04_basepoint_action_pattern() {
    let mut failures = Vec::new();
    for g in [3, 4] {
        let calc = CurveCalculus::new(g).unwrap();
        let v = calc.base_curve("v").unwrap();
        let vp = calc.base_curve("vprime").unwrap();
        let beta = calc.base_curve(&format!("beta{}", g - 1)).unwrap();
        for s in with_h(g) {
            let m = MappingClassWord::single(g, s);
            let moves_v = s.name == TwistName::B(g - 1);
            let moves_vp = s.name == TwistName::B(1);
            if curves_equal(&calc.act(&m, &v), &v) == moves_v {
                failures.push(format!("g={g} {s} on v"));
            }
            if curves_equal(&calc.act(&m, &vp), &vp) == moves_vp {
                failures.push(format!("g={g} {s} on v'"));
            }
        }
        let numbers = (calc.intersection(&v, &vp), calc.intersection(&beta, &v), calc.intersection(&beta, &vp));
        if numbers != (0, 2, 0) {
            failures.push(format!("g={g} intersections {numbers:?}"));
        }
    }
    report(4, failures.is_empty(), &format!("failures {failures:?}"));
}

#[test]
fn criterion_05_csep_certificates() {
    let spec = builtin_spec(ComplexName::CSep, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    let mut largest = 0;
    for _ in 0..C5_WORDS {
        let len = rng.gen_range(0..=C5_MAX_LEN);
        let steps: Vec<usize> = (0..len).map(|_| rng.gen_range(0..spec.generators.len())).collect();
        match connect_to_image(&spec, &steps) {
            Ok(cert) if cert.all_accepted() && cert.vertices.len() <= 2 * C5_MAX_LEN + 1 && replay(&spec, &cert).is_ok() => {
                largest = largest.max(cert.vertices.len());
            }
            _ => failures += 1,
        }
    }
    report(5, failures == 0, &format!("{C5_WORDS} words, {failures} failures, largest certificate {largest} vertices"));
}

#[test]
fn criterion_06_pants_quotient_connectivity() {
    let mut notes = Vec::new();
    let mut ok = true;
    for k in [2, 4, 6, 8] {
        let r = verify_quotient_connectivity(k).unwrap();
        let brute = common::graphs::burnside_class_count(k);
        ok &= r.connected && r.classes as u64 == brute;
        notes.push(format!("k={k}: {} classes (brute force {brute}), diameter {}", r.classes, r.diameter));
    }
    let mut pairs = 0;
    for k in [2, 4, 6] {
        let classes = enumerate_trivalent(k).unwrap();
        for a in &classes {
            for b in &classes {
                let s = connect_graphs(a, b).unwrap();
                ok &= s.replay().is_ok() && is_isomorphic(&s.end, b);
                pairs += 1;
            }
        }
    }
    report(6, ok, &format!("{}; {pairs} connect_graphs pairs replayed", notes.join(", ")));
}

#[test]
fn criterion_07_relation_audit() {
    let a = Auditor::new(4).unwrap();
    let p = builtin_presentation();
    let r = a.audit_presentation(&p).unwrap();
    let special: Vec<usize> = r.entries.iter().filter(|e| !matches!(e.certificate, ContractionCertificate::Constant | ContractionCertificate::AlternatingVPrime)).map(|e| e.index).collect();
    let find = |f: Family| r.entries.iter().find(|e| e.family == f).unwrap();
    let one = find(Family::CommuteBeta);
    let two = find(Family::HExpansion);
    let cone_ok = matches!(&one.certificate, ContractionCertificate::Cone { witness } if witness.base == "vdoubleprime");
    let calc = a.spec().calculus().unwrap();
    let u = calc.act(&word(4, "A4 B3"), a.basepoint());
    let expected = [a.basepoint(), a.vprime(), &u, a.vprime(), a.basepoint()];
    let loop_two: Vec<_> = two.loop_vertices.iter().map(|c| calc.from_ref(c).unwrap()).collect();
    let backtrack_ok = two.certificate.kind() == "BACKTRACK" && loop_two.len() == 5 && loop_two.iter().zip(expected).all(|(x, y)| curves_equal(x, y));
    let ok = r.passed() && cone_ok && backtrack_ok && special == p.both_beta();
    report(7, ok, &format!("verdict {}, relation (1) {}, relation (2) {} with {} vertices, special {special:?}", r.verdict, one.certificate.kind(), two.certificate.kind(), loop_two.len()));
}

#[test]
fn criterion_08_path_steps_and_whiskers() {
    let g = 4;
    let a = Auditor::new(g).unwrap();
    let calc = a.spec().calculus().unwrap();
    let id = MappingClassWord::identity(g);
    let mut failures = Vec::new();
    let canonical = a.path_step(&id, &id, 1);
    match a.build_step_word(0, &id, &canonical) {
        Ok(w) if w == word(g, "B3") => {}
        other => failures.push(format!("canonical step gave {other:?}")),
    }
    let pool: Vec<TwistLetter> = with_h(g).into_iter().filter(|l| l.name != TwistName::B(g - 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let a4 = word(g, "A4");
    for trial in 0..C8_RANDOM_INPUTS {
        let n = rng.gen_range(1..=3);
        let mut prev = id.clone();
        let mut steps = Vec::new();
        for _ in 0..n {
            let f = MappingClassWord::new(g, (0..rng.gen_range(0..=6)).map(|_| pool[rng.gen_range(0..pool.len())]).collect()).unwrap();
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            let step = a.path_step(&prev, &f, e);
            prev = prev.then(&f).then(&MappingClassWord::single(g, TwistLetter::new(TwistName::B(g - 1), e)));
            steps.push(step);
        }
        let (w, path) = match a.build_path(&steps) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("trial {trial}: {e}"));
                continue;
            }
        };
        let spec = a.spec();
        let indices: Vec<usize> = w.letters.iter().map(|l| spec.generator_index(&l.to_string()).unwrap()).collect();
        let replayed = connect_to_image(spec, &indices).and_then(|c| replay(spec, &c));
        if path.len() != 2 * n + 1 || replayed.is_err() {
            failures.push(format!("trial {trial}: path length {} or replay {replayed:?}", path.len()));
        }
        let last = steps.last().unwrap();
        let t = calc.twist_word(&last.epsilon).unwrap();
        let t = if last.e == 1 { t } else { t.inverse() };
        let eta2 = calc.act(&last.f_word, &calc.act(&a4, &calc.base_curve("beta3").unwrap()));
        let pre = steps.len() - 1;
        let prev_w = (0..pre).fold(id.clone(), |acc, i| acc.then(&steps[i].f_word).then(&MappingClassWord::single(g, TwistLetter::new(TwistName::B(g - 1), steps[i].e))));
        let eta2 = calc.act(&prev_w, &eta2);
        let t2 = calc.twist_word(&eta2).unwrap();
        let one = a.whisker_normalize(&last.v_odd, &last.v_even, &calc.act(&t, &last.v_odd), &[(last.epsilon.clone(), last.e)]);
        let two = a.whisker_normalize(&last.v_odd, &last.v_even, &calc.act(&t.then(&t2), &last.v_odd), &[(last.epsilon.clone(), last.e), (eta2, 1)]);
        match (one, two) {
            (Ok(p1), Ok(p2)) if p1.len() == 3 && p2.len() == 5 => {}
            (x, y) => failures.push(format!("trial {trial}: whiskers {:?} {:?}", x.map(|p| p.len()), y.map(|p| p.len()))),
        }
    }
    report(8, failures.is_empty(), &format!("canonical step and {C8_RANDOM_INPUTS} random inputs, failures {failures:?}"));
}

#[test]
fn criterion_09_bounding_pair_step() {
    let mut notes = Vec::new();
    let mut ok = true;
    for g in [3, 4] {
        let calc = CurveCalculus::new(g).unwrap();
        let c1 = calc.base_curve("delta2").unwrap();
        let c2 = calc.curve("delta2", &word(g, GAMMA_TRANSPORT)).unwrap();
        ok &= curves_equal(&c2, &calc.base_curve("gamma2").unwrap());
        let v = calc.base_curve("alpha2").unwrap();
        let check = cgamma_step_check(&calc, &c1, &c2, &v).unwrap();
        let image = calc.act(&check.word, &v);
        ok &= check.torelli && check.kind == StepKind::Disjoint && homologous(&image, &v);
        notes.push(format!("g={g}: torelli {}, {:?}, i = {}", check.torelli, check.kind, check.intersection));
    }
    report(9, ok, &notes.join("; "));
}

#[test]
fn criterion_10_intersection_oracle() {
    let calc = CurveCalculus::new(2).unwrap();
    let oracle = common::tracer::Octagon::new();
    let names: Vec<String> = calc.table().curves.keys().cloned().collect();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (i, x) in names.iter().enumerate() {
        for y in &names[i..] {
            let (cx, cy) = (calc.base_curve(x).unwrap(), calc.base_curve(y).unwrap());
            let (got, want) = (calc.intersection(&cx, &cy), oracle.intersection(cx.word(), cy.word()));
            checked += 1;
            if got != want {
                mismatches.push(format!("{x},{y}: {got} vs {want}"));
            }
        }
    }
    let alphabet = TwistLetter::alphabet(2);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let random_word = |rng: &mut ChaCha8Rng| {
        MappingClassWord::new(2, (0..rng.gen_range(1..=C10_PREFIX_LEN)).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()).unwrap()
    };
    for _ in 0..C10_RANDOM_PAIRS {
        let (x, y) = (&names[rng.gen_range(0..names.len())], &names[rng.gen_range(0..names.len())]);
        let cx = calc.curve(x, &random_word(&mut rng)).unwrap();
        let cy = calc.curve(y, &random_word(&mut rng)).unwrap();
        let (got, want) = (calc.intersection(&cx, &cy), oracle.intersection(cx.word(), cy.word()));
        checked += 1;
        if got != want {
            mismatches.push(format!("{cx},{cy}: {got} vs {want}"));
        }
    }
    report(10, mismatches.is_empty(), &format!("{checked} pairs, mismatches {mismatches:?}"));
}
