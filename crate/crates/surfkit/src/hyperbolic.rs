//! The regular 4g-gon model of the closed surface in the Poincare disk, axis
//! walks of closed geodesics, and the geometric intersection count.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::surface_group::{free_reduce, invert, relator_letters, Kind, Letter, Relator, WordError};

const BOUNDARY_TOL: f64 = 1e-9;
const INSIDE_TOL: f64 = 1e-7;
const ENDPOINT_TOL: f64 = 1e-8;

/// A Moebius transformation of the disk, kept projectively normalized.
#[derive(Debug, Clone, Copy)]
pub struct Mobius([C; 4]);

impl Mobius {
    pub fn identity() -> Mobius {
        Mobius([C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)])
    }

    fn rot(t: f64) -> Mobius {
        Mobius([C::from_polar(1.0, t / 2.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::from_polar(1.0, -t / 2.0)])
    }

    fn translate(t: f64) -> Mobius {
        let (c, s) = ((t / 2.0).cosh(), (t / 2.0).sinh());
        Mobius([C::new(c, 0.0), C::new(s, 0.0), C::new(s, 0.0), C::new(c, 0.0)])
    }

    pub fn mul(&self, o: &Mobius) -> Mobius {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mobius([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h]).normalized()
    }

    fn normalized(self) -> Mobius {
        let m = self.0.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            Mobius(self.0.map(|z| z / m))
        } else {
            self
        }
    }

    pub fn inv(&self) -> Mobius {
        let [a, b, c, d] = self.0;
        Mobius([d, -b, -c, a])
    }

    pub fn apply(&self, z: C) -> C {
        let [a, b, c, d] = self.0;
        (a * z + b) / (c * z + d)
    }

    /// Boundary fixed points as (repelling, attracting).
    pub fn fixed_points(&self) -> (C, C) {
        let m = self.0.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let [a, b, c, d] = self.0.map(|z| z / m);
        let p = d - a;
        let disc = (p * p + 4.0 * b * c).sqrt();
        let q1 = p + disc;
        let q2 = p - disc;
        let q = if q1.norm() >= q2.norm() { q1 } else { q2 };
        let q = -0.5 * q;
        let z1 = q / c;
        let z2 = -b / q;
        let det = a * d - b * c;
        let deriv = |z: C| det.norm() / (c * z + d).norm_sqr();
        let (rep, att) = if deriv(z1) < 1.0 { (z2, z1) } else { (z1, z2) };
        (rep / rep.norm(), att / att.norm())
    }
}

fn klein_to_poincare(k: C) -> C {
    k / (1.0 + (1.0 - k.norm_sqr()).max(0.0).sqrt())
}

fn poincare_to_klein(z: C) -> C {
    2.0 * z / (1.0 + z.norm_sqr())
}

fn cross(u: C, v: C) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Parameters `(t, u)` of the intersection of lines `p + t (q - p)` and `a + u (b - a)`.
fn line_params(p: C, q: C, a: C, b: C) -> Option<(f64, f64)> {
    let d1 = q - p;
    let d2 = b - a;
    let den = cross(d1, d2);
    if den.abs() < 1e-15 {
        return None;
    }
    let w = a - p;
    Some((cross(w, d2) / den, cross(w, d1) / den))
}

fn boundary_angle(z: C) -> f64 {
    z.arg().rem_euclid(2.0 * PI)
}

fn linked(p: (C, C), q: (C, C)) -> bool {
    let (x, y) = (boundary_angle(p.0), boundary_angle(p.1));
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let inside = |t: f64| lo < t && t < hi;
    inside(boundary_angle(q.0)) != inside(boundary_angle(q.1))
}

fn shares_endpoint(p: (C, C), q: (C, C)) -> bool {
    [(p.0, q.0), (p.0, q.1), (p.1, q.0), (p.1, q.1)].iter().any(|(x, y)| (x - y).norm() < ENDPOINT_TOL)
}

/// A chord through the fundamental polygon: its boundary endpoints and the
/// parameter interval (along repelling -> attracting) it spends inside the polygon.
#[derive(Debug, Clone, Copy)]
pub struct Chord {
    pub ends: (C, C),
    pub entry: (f64, usize),
    pub exit: (f64, usize),
}

impl Chord {
    fn point(&self, t: f64) -> C {
        self.ends.0 + t * (self.ends.1 - self.ends.0)
    }

    fn is_degenerate(&self) -> bool {
        self.exit.0 - self.entry.0 < BOUNDARY_TOL
    }
}

/// One tile visited by an axis walk: the frame `h` (the tile is `h D`) and the
/// conjugate `h^-1 A h` whose axis crosses `D`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub h: Vec<Letter>,
    pub local: Vec<Letter>,
    pub chord: Chord,
}

#[derive(Debug, Clone)]
pub struct PolygonModel {
    genus: u32,
    rel: Relator,
    gens: Vec<Mobius>,
    verts: Vec<C>,
    side_elem: Vec<Letter>,
    star: Vec<(Vec<Letter>, Mobius)>,
}

impl PolygonModel {
    pub fn new(genus: u32) -> Result<PolygonModel, WordError> {
        let rel = Relator::new(genus)?;
        let n = 4 * genus as usize;
        let nf = n as f64;
        let beta = 2.0 * PI / nf;
        let dm = ((beta / 2.0).cos() / (PI / nf).sin()).acosh();
        let rv = (1.0 / (PI / nf).tan() / (beta / 2.0).tan()).acosh();
        let r = relator_letters(genus);
        let phi: Vec<f64> = (0..n).map(|k| 2.0 * PI * (k as f64 + 0.5) / nf).collect();
        let mut gens = vec![Mobius::identity(); 4 * genus as usize];
        for x in r.iter().copied().filter(|l| l.exponent() > 0) {
            let j = r.iter().position(|&y| y == x).expect("letter in relator");
            let k = r.iter().position(|&y| y == x.inv()).expect("inverse in relator");
            let t = Mobius::rot(phi[k]).mul(&Mobius::translate(2.0 * dm)).mul(&Mobius::rot(PI - phi[j]));
            let m = if x.kind() == Kind::A { t.inv() } else { t };
            gens[2 * x.slot()] = m;
            gens[2 * x.slot() + 1] = m.inv();
        }
        let kr = rv.tanh();
        let verts = (0..n).map(|k| C::from_polar(kr, 2.0 * PI * k as f64 / nf)).collect();
        let side_elem = r.iter().map(|&l| if l.kind() == Kind::A { l } else { l.inv() }).collect();
        let mut model = PolygonModel { genus, rel, gens, verts, side_elem, star: Vec::new() };
        model.star = model.vertex_star();
        Ok(model)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn relator(&self) -> &Relator {
        &self.rel
    }

    pub fn letter(&self, l: Letter) -> Mobius {
        self.gens[2 * l.slot() + usize::from(l.code() < 0)]
    }

    pub fn matrix(&self, w: &[Letter]) -> Mobius {
        w.iter().fold(Mobius::identity(), |m, &l| m.mul(&self.letter(l)))
    }

    pub fn star_size(&self) -> usize {
        self.star.len()
    }

    fn inside(&self, p: C, tol: f64) -> bool {
        let n = self.verts.len();
        (0..n).all(|k| cross(self.verts[(k + 1) % n] - self.verts[k], p - self.verts[k]) >= -tol)
    }

    fn worst_side(&self, p: C) -> Option<usize> {
        let n = self.verts.len();
        (0..n)
            .map(|k| (k, cross(self.verts[(k + 1) % n] - self.verts[k], p - self.verts[k])))
            .filter(|&(_, c)| c < -INSIDE_TOL)
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .map(|(k, _)| k)
    }

    fn clip(&self, ends: (C, C)) -> Option<Chord> {
        let n = self.verts.len();
        let mut hits: Vec<(f64, usize)> = Vec::new();
        for k in 0..n {
            if let Some((t, u)) = line_params(ends.0, ends.1, self.verts[k], self.verts[(k + 1) % n]) {
                if (-BOUNDARY_TOL..=1.0 + BOUNDARY_TOL).contains(&u) {
                    hits.push((t, k));
                }
            }
        }
        let entry = hits.iter().copied().min_by(|a, b| a.0.total_cmp(&b.0))?;
        let exit = hits.iter().copied().max_by(|a, b| a.0.total_cmp(&b.0))?;
        Some(Chord { ends, entry, exit })
    }

    fn vertex_star(&self) -> Vec<(Vec<Letter>, Mobius)> {
        let pverts: Vec<C> = self.verts.iter().map(|&v| klein_to_poincare(v)).collect();
        let shares = |m: &Mobius| pverts.iter().any(|&v| pverts.iter().any(|&u| (m.apply(v) - u).norm() < 1e-7));
        let mut out: Vec<(Vec<Letter>, Mobius)> = vec![(Vec::new(), Mobius::identity())];
        let mut centers = vec![C::new(0.0, 0.0)];
        let mut todo = vec![0usize];
        let letters: Vec<Letter> = relator_letters(self.genus);
        while let Some(i) = todo.pop() {
            let h = out[i].0.clone();
            for &x in &letters {
                let mut w = h.clone();
                w.push(x);
                let w = self.rel.shorten(&w);
                let m = self.matrix(&w);
                let c = m.apply(C::new(0.0, 0.0));
                if centers.iter().any(|z| (z - c).norm() < 1e-7) || !shares(&m) {
                    continue;
                }
                centers.push(c);
                out.push((w, m));
                todo.push(out.len() - 1);
            }
        }
        out
    }

    fn local_chord(&self, local: &[Letter]) -> Option<Chord> {
        self.clip(self.matrix(local).fixed_points())
    }

    fn conj(&self, n: &[Letter], u: &[Letter]) -> Vec<Letter> {
        let mut w = invert(n);
        w.extend_from_slice(u);
        w.extend_from_slice(n);
        self.rel.shorten(&w)
    }

    /// Walks the axis of the cyclically reduced nontrivial word `a` through one
    /// period, returning the frames in order.
    pub fn walk(&self, a: &[Letter]) -> Vec<Frame> {
        let a = self.rel.cyclic_shorten(a);
        assert!(!a.is_empty(), "axis walk needs a nontrivial element");
        let mut h: Vec<Letter> = Vec::new();
        let mut local = a.clone();
        let limit = 10_000;
        let mut chord = None;
        for _ in 0..limit {
            let ends = self.matrix(&local).fixed_points();
            let (p, q) = (ends.0, ends.1);
            let d = q - p;
            let t = -(p.re * d.re + p.im * d.im) / d.norm_sqr();
            let foot = p + t * d;
            match self.worst_side(foot) {
                None => {
                    let c = self.clip(ends).expect("chord meets polygon");
                    if !c.is_degenerate() {
                        chord = Some(c);
                        break;
                    }
                    let s = self.side_elem[c.exit.1];
                    h.push(s);
                    local = self.conj(&[s], &local);
                }
                Some(k) => {
                    let s = self.side_elem[k];
                    h.push(s);
                    local = self.conj(&[s], &local);
                }
            }
        }
        let mut chord = chord.expect("axis located");
        h = self.rel.shorten(&h);
        let start = local.clone();
        let mut frames = Vec::new();
        let max_frames = 64 * (a.len() + 1) * self.genus as usize;
        loop {
            frames.push(Frame { h: h.clone(), local: local.clone(), chord });
            assert!(frames.len() <= max_frames, "axis walk failed to close");
            let (step, next_local, next_chord) = self.advance(&local, &chord);
            h.extend_from_slice(&step);
            h = self.rel.shorten(&h);
            local = next_local;
            chord = next_chord;
            if self.rel.equal(&local, &start) {
                return frames;
            }
        }
    }

    fn advance(&self, local: &[Letter], chord: &Chord) -> (Vec<Letter>, Vec<Letter>, Chord) {
        let exit = chord.point(chord.exit.0);
        let side = self.side_elem[chord.exit.1];
        let candidates = std::iter::once((vec![side], self.letter(side))).chain(self.star.iter().skip(1).cloned());
        let pexit = klein_to_poincare(exit);
        for (n, m) in candidates {
            let minv = m.inv();
            let ends = (minv.apply(chord.ends.0), minv.apply(chord.ends.1));
            let ends = (ends.0 / ends.0.norm(), ends.1 / ends.1.norm());
            let Some(c) = self.clip(ends) else { continue };
            if c.is_degenerate() {
                continue;
            }
            let target = poincare_to_klein(minv.apply(pexit));
            if (c.point(c.entry.0) - target).norm() < INSIDE_TOL * 10.0 {
                let next_local = self.conj(&n, local);
                let fresh = self.local_chord(&next_local).unwrap_or(c);
                return (n, next_local, fresh);
            }
        }
        panic!("axis walk lost the geodesic");
    }

    /// Number of transverse intersections between the closed geodesics of two
    /// non-conjugate nontrivial elements, counted as orbits of linked lifts.
    pub fn intersection(&self, a: &[Letter], b: &[Letter]) -> usize {
        let a = self.rel.cyclic_shorten(a);
        let b = self.rel.cyclic_shorten(b);
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let fa = self.walk(&a);
        let fb = self.walk(&b);
        let a_frame0 = {
            let mut w = fa[0].h.clone();
            w.extend_from_slice(&fa[0].local);
            w.extend(invert(&fa[0].h));
            self.rel.shorten(&w)
        };
        let a_inv = invert(&a_frame0);
        let bends: Vec<(C, C)> = fb.iter().map(|f| f.chord.ends).collect();
        let mut found: Vec<Vec<Letter>> = Vec::new();
        for fr in &fa {
            let ca = fr.chord.ends;
            for (n, m) in &self.star {
                for (j, be) in bends.iter().enumerate() {
                    let cb = (m.apply(be.0), m.apply(be.1));
                    let cb = (cb.0 / cb.0.norm(), cb.1 / cb.1.norm());
                    if shares_endpoint(ca, cb) || !linked(ca, cb) {
                        continue;
                    }
                    let Some((t, _)) = line_params(ca.0, ca.1, cb.0, cb.1) else { continue };
                    if !self.inside(ca.0 + t * (ca.1 - ca.0), INSIDE_TOL) {
                        continue;
                    }
                    let mut w = fr.h.clone();
                    w.extend_from_slice(n);
                    w.extend_from_slice(&fb[j].local);
                    w.extend(invert(n));
                    w.extend(invert(&fr.h));
                    let lift = self.rel.shorten(&free_reduce(&w));
                    let dup = found.iter().any(|f| {
                        [Vec::new(), a_frame0.clone(), a_inv.clone()].iter().any(|p| {
                            let mut x = p.clone();
                            x.extend_from_slice(f);
                            x.extend(invert(p));
                            self.rel.equal(&x, &lift)
                        })
                    });
                    if !dup {
                        found.push(lift);
                    }
                }
            }
        }
        found.len()
    }
}
