//! Genus-2 intersection numbers by tracing closed geodesics through a regular octagon.
//! Isometries are Lorentz matrices on the hyperboloid; geodesics are straight chords
//! in the Klein disk, so crossings inside the octagon are segment intersections.

use std::f64::consts::PI;

use surfkit::surface_group::{invert, relator_letters, Letter, Relator};

type M3 = [[f64; 3]; 3];
type P2 = [f64; 2];

const N: usize = 8;
const TOL: f64 = 1e-9;
const SAME: f64 = 1e-7;

fn mul(a: &M3, b: &M3) -> M3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Inverse of a Lorentz matrix: `J A^T J` with `J = diag(1, 1, -1)`.
fn linv(a: &M3) -> M3 {
    let s = [1.0, 1.0, -1.0];
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = s[i] * a[j][i] * s[j];
        }
    }
    c
}

fn rot(t: f64) -> M3 {
    [[t.cos(), -t.sin(), 0.0], [t.sin(), t.cos(), 0.0], [0.0, 0.0, 1.0]]
}

fn boost(d: f64) -> M3 {
    [[d.cosh(), 0.0, d.sinh()], [0.0, 1.0, 0.0], [d.sinh(), 0.0, d.cosh()]]
}

fn act(m: &M3, p: P2) -> P2 {
    let v = [p[0], p[1], 1.0];
    let w: Vec<f64> = (0..3).map(|i| (0..3).map(|k| m[i][k] * v[k]).sum()).collect();
    [w[0] / w[2], w[1] / w[2]]
}

fn act_boundary(m: &M3, p: P2) -> P2 {
    let q = act(m, p);
    let n = (q[0] * q[0] + q[1] * q[1]).sqrt();
    [q[0] / n, q[1] / n]
}

fn dist(p: P2, q: P2) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

fn cross(o: P2, a: P2, b: P2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn close(a: &M3, b: &M3) -> bool {
    (0..3).all(|i| (0..3).all(|j| (a[i][j] - b[i][j]).abs() < 1e-8))
}

#[derive(Clone, Copy)]
struct Chord {
    p: P2,
    q: P2,
}

impl Chord {
    fn at(&self, t: f64) -> P2 {
        [self.p[0] + t * (self.q[0] - self.p[0]), self.p[1] + t * (self.q[1] - self.p[1])]
    }

    fn moved(&self, m: &M3) -> Chord {
        Chord { p: act_boundary(m, self.p), q: act_boundary(m, self.q) }
    }

    fn same(&self, o: &Chord) -> bool {
        dist(self.p, o.p) < SAME && dist(self.q, o.q) < SAME
    }
}

pub struct Octagon {
    verts: Vec<P2>,
    rho: Vec<(Letter, M3)>,
    /// `neighbour[j]` carries the octagon to the tile across side `j`.
    neighbour: Vec<M3>,
    /// The generator whose image is `neighbour[j]`.
    side_letter: Vec<Letter>,
    /// Products of at most four neighbours, with their words.
    near: Vec<(M3, Vec<Letter>)>,
    rel: Relator,
}

impl Octagon {
    pub fn new() -> Octagon {
        let beta = 2.0 * PI / N as f64;
        let rv = (1.0 / (PI / N as f64).tan() / (beta / 2.0).tan()).acosh();
        let dm = ((beta / 2.0).cos() / (PI / N as f64).sin()).acosh();
        let verts: Vec<P2> = (0..N).map(|k| {
            let a = 2.0 * PI * k as f64 / N as f64;
            [rv.tanh() * a.cos(), rv.tanh() * a.sin()]
        }).collect();
        let phi = |k: usize| 2.0 * PI * (k as f64 + 0.5) / N as f64;
        let r = relator_letters(2);
        let pairing = |j: usize, k: usize| mul(&rot(phi(j) - PI), &mul(&boost(-2.0 * dm), &rot(-phi(k))));
        let neighbour: Vec<M3> = (0..N).map(|j| {
            let k = r.iter().position(|&y| y == r[j].inv()).unwrap();
            pairing(j, k)
        }).collect();
        let positive: Vec<Letter> = r.iter().copied().filter(|l| l.code() > 0).collect();
        let mut rho = None;
        for signs in 0..(1u32 << positive.len()) {
            let gens: Vec<(Letter, M3)> = positive.iter().enumerate().map(|(i, &x)| {
                let j = r.iter().position(|&y| y == x).unwrap();
                let m = neighbour[j];
                (x, if signs >> i & 1 == 1 { linv(&m) } else { m })
            }).collect();
            let get = |l: Letter| {
                let (_, m) = gens.iter().find(|(x, _)| *x == l || *x == l.inv()).unwrap();
                if l.code() > 0 { *m } else { linv(m) }
            };
            let prod = r.iter().fold(rot(0.0), |acc, &l| mul(&acc, &get(l)));
            if close(&prod, &rot(0.0)) {
                rho = Some(gens);
                break;
            }
        }
        let rho = rho.expect("some choice of pairing directions satisfies the relator");
        let image = |l: Letter| {
            let (_, m) = rho.iter().find(|(x, _)| *x == l || *x == l.inv()).unwrap();
            if l.code() > 0 { *m } else { linv(m) }
        };
        let side_letter: Vec<Letter> = neighbour
            .iter()
            .map(|n| *r.iter().find(|&&l| close(&image(l), n)).expect("every side pairing is a generator"))
            .collect();
        let mut near: Vec<(M3, Vec<Letter>)> = vec![(rot(0.0), Vec::new())];
        let mut frontier = near.clone();
        for _ in 0..4 {
            let mut next = Vec::new();
            for (g, gw) in &frontier {
                for (n, &l) in neighbour.iter().zip(&side_letter) {
                    let h = mul(g, n);
                    let c = act(&h, [0.0, 0.0]);
                    if near.iter().all(|(m, _)| dist(act(m, [0.0, 0.0]), c) > 1e-6) {
                        let mut hw = gw.clone();
                        hw.push(l);
                        near.push((h, hw.clone()));
                        next.push((h, hw));
                    }
                }
            }
            frontier = next;
        }
        Octagon { verts, rho, neighbour, side_letter, near, rel: Relator::new(2).unwrap() }
    }

    fn letter(&self, l: Letter) -> M3 {
        let (_, m) = self.rho.iter().find(|(x, _)| *x == l || *x == l.inv()).unwrap();
        if l.code() > 0 { *m } else { linv(m) }
    }

    fn matrix(&self, w: &[Letter]) -> M3 {
        w.iter().fold(rot(0.0), |acc, &l| mul(&acc, &self.letter(l)))
    }

    /// Axis of a hyperbolic element, oriented from its repelling to its attracting fixed point.
    fn axis(m: &M3) -> Chord {
        let attract = |a: &M3| {
            let mut v = [0.3, 0.1, 1.0];
            for _ in 0..200 {
                let w: Vec<f64> = (0..3).map(|i| (0..3).map(|k| a[i][k] * v[k]).sum()).collect();
                let n = w[2].abs().max(w[0].hypot(w[1]));
                v = [w[0] / n, w[1] / n, w[2] / n];
            }
            let r = v[0].hypot(v[1]);
            [v[0] / r, v[1] / r]
        };
        Chord { p: attract(&linv(m)), q: attract(m) }
    }

    fn side_value(&self, s: usize, x: P2) -> f64 {
        cross(self.verts[s], self.verts[(s + 1) % N], x)
    }

    /// Parameter interval of the chord inside the octagon with the sides that bound it.
    fn clip(&self, c: &Chord) -> Option<(f64, f64, usize)> {
        let (mut t0, mut t1, mut out) = (0.0_f64, 1.0_f64, usize::MAX);
        for s in 0..N {
            let a = self.side_value(s, c.p);
            let b = self.side_value(s, c.q) - a;
            if b.abs() < 1e-15 {
                if a < 0.0 {
                    return None;
                }
                continue;
            }
            let t = -a / b;
            if b > 0.0 {
                t0 = t0.max(t);
            } else if t < t1 {
                t1 = t;
                out = s;
            }
        }
        (t1 - t0 > TOL).then_some((t0, t1, out))
    }

    /// `x^-1 u x`, Dehn-reduced so that it stays short.
    fn conj_word(&self, u: &[Letter], x: &[Letter]) -> Vec<Letter> {
        let mut w = invert(x);
        w.extend_from_slice(u);
        w.extend_from_slice(x);
        self.rel.shorten(&w)
    }

    /// Brings the axis of `u` into the octagon by conjugating across sides.
    fn place(&self, mut u: Vec<Letter>) -> Vec<Letter> {
        for _ in 0..10_000 {
            let c = Self::axis(&self.matrix(&u));
            if self.clip(&c).is_some() {
                return u;
            }
            let d = [c.q[0] - c.p[0], c.q[1] - c.p[1]];
            let t = -(c.p[0] * d[0] + c.p[1] * d[1]) / (d[0] * d[0] + d[1] * d[1]);
            let foot = c.at(t);
            let s = (0..N).min_by(|&x, &y| self.side_value(x, foot).total_cmp(&self.side_value(y, foot))).unwrap();
            u = self.conj_word(&u, &[self.side_letter[s]]);
        }
        panic!("axis never reaches the octagon");
    }

    /// Segments of the closed geodesic of `w` inside the octagon over one period,
    /// and how many times it passes through the vertex.
    pub fn trace(&self, w: &[Letter]) -> (Vec<(P2, P2)>, usize) {
        let first = self.place(self.rel.shorten(w));
        let start = Self::axis(&self.matrix(&first));
        let mut u = first;
        let mut segments = Vec::new();
        let mut passes = 0;
        for _ in 0..100_000 {
            let c = Self::axis(&self.matrix(&u));
            let (t0, t1, out) = self.clip(&c).expect("chord crosses the octagon");
            let exit = c.at(t1);
            segments.push((c.at(t0), exit));
            let at_vertex = self.is_vertex(exit);
            passes += usize::from(at_vertex);
            let step: &[Letter] = if at_vertex {
                &self
                    .near
                    .iter()
                    .skip(1)
                    .find(|(g, _)| {
                        let gi = linv(g);
                        let d = c.moved(&gi);
                        self.clip(&d).is_some_and(|(s0, _, _)| dist(d.at(s0), act(&gi, exit)) < 1e-7)
                    })
                    .expect("continuation past a vertex")
                    .1
            } else {
                std::slice::from_ref(&self.side_letter[out])
            };
            u = self.conj_word(&u, step);
            if Self::axis(&self.matrix(&u)).same(&start) {
                return (segments, passes);
            }
        }
        panic!("geodesic did not close");
    }

    fn is_vertex(&self, x: P2) -> bool {
        self.verts.iter().any(|&v| dist(v, x) < 1e-9)
    }

    fn on_boundary(&self, x: P2) -> bool {
        (0..N).any(|s| self.side_value(s, x).abs() < 1e-8)
    }

    fn same_point(&self, x: P2, y: P2) -> bool {
        dist(x, y) < SAME || (self.on_boundary(x) && self.on_boundary(y) && self.near.iter().any(|(g, _)| dist(act(g, x), y) < SAME))
    }

    /// Number of crossings of the two closed geodesics on the surface, counting each
    /// pair of branches through a common point; 0 if they coincide.
    pub fn intersection(&self, w1: &[Letter], w2: &[Letter]) -> usize {
        let (s1, p1) = self.trace(w1);
        let (s2, p2) = self.trace(w2);
        let mut points: Vec<P2> = Vec::new();
        for &(a, b) in &s1 {
            for &(c, d) in &s2 {
                let den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0]);
                if den.abs() < 1e-13 {
                    if cross(a, b, c).abs() < 1e-10 && cross(a, b, d).abs() < 1e-10 {
                        return 0;
                    }
                    continue;
                }
                let t = ((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / den;
                let u = ((c[0] - a[0]) * (b[1] - a[1]) - (c[1] - a[1]) * (b[0] - a[0])) / den;
                if (-TOL..=1.0 + TOL).contains(&t) && (-TOL..=1.0 + TOL).contains(&u) {
                    let x = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
                    if !self.is_vertex(x) && !points.iter().any(|&y| self.same_point(x, y)) {
                        points.push(x);
                    }
                }
            }
        }
        points.len() + p1 * p2
    }
}
