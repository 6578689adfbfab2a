//! Conjugacy classes of short genus-2 words by brute force: connected components of
//! the graph on freely reduced words of length at most `MAX_LEN`, with an edge for
//! conjugation by a letter and for replacing a relator piece by its complement.

use surfkit::surface_group::{free_reduce, invert, relator_letters, Letter};

pub const MAX_LEN: usize = 8;
const LETTERS: usize = 8;

fn letter_index(l: Letter) -> usize {
    (l.code().unsigned_abs() as usize - 1) * 2 + usize::from(l.code() < 0)
}

fn index_letter(i: usize) -> Letter {
    let code = (i / 2 + 1) as i16;
    Letter::from_code(if i % 2 == 1 { -code } else { code })
}

fn inverse_index(i: usize) -> usize {
    i ^ 1
}

pub struct WordSpace {
    offsets: Vec<usize>,
}

impl WordSpace {
    pub fn new() -> WordSpace {
        let mut offsets = vec![0, 1];
        let mut count = LETTERS;
        for _ in 1..=MAX_LEN {
            offsets.push(offsets.last().unwrap() + count);
            count *= LETTERS - 1;
        }
        WordSpace { offsets }
    }

    pub fn count_up_to(&self, len: usize) -> usize {
        self.offsets[len + 1]
    }

    pub fn rank(&self, w: &[Letter]) -> usize {
        let mut r = 0;
        let mut prev: Option<usize> = None;
        for &l in w {
            let i = letter_index(l);
            match prev {
                None => r = i,
                Some(p) => {
                    let skip = inverse_index(p);
                    r = r * (LETTERS - 1) + if i > skip { i - 1 } else { i };
                }
            }
            prev = Some(i);
        }
        self.offsets[w.len()] + r
    }

    pub fn unrank(&self, mut r: usize) -> Vec<Letter> {
        let len = (0..=MAX_LEN).rfind(|&l| self.offsets[l] <= r).unwrap();
        r -= self.offsets[len];
        if len == 0 {
            return Vec::new();
        }
        let mut digits = vec![0; len];
        for d in (1..len).rev() {
            digits[d] = r % (LETTERS - 1);
            r /= LETTERS - 1;
        }
        digits[0] = r;
        let mut out = Vec::with_capacity(len);
        let mut prev = digits[0];
        out.push(index_letter(prev));
        for &d in &digits[1..] {
            let skip = inverse_index(prev);
            let i = if d >= skip { d + 1 } else { d };
            out.push(index_letter(i));
            prev = i;
        }
        out
    }
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] as usize != x {
            let p = self.0[x] as usize;
            self.0[x] = self.0[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb) as u32;
        }
    }
}

/// Component label of every freely reduced genus-2 word of length at most `MAX_LEN`.
pub fn conjugacy_components(space: &WordSpace) -> Vec<u32> {
    let r = relator_letters(2);
    let mut cyclic: Vec<Vec<Letter>> = Vec::new();
    for base in [r.clone(), invert(&r)] {
        for k in 0..base.len() {
            cyclic.push(base[k..].iter().chain(&base[..k]).copied().collect());
        }
    }
    let n = space.count_up_to(MAX_LEN);
    let mut dsu = Dsu((0..n as u32).collect());
    for id in 0..n {
        let w = space.unrank(id);
        for x in 0..LETTERS {
            let l = index_letter(x);
            let mut c = vec![l];
            c.extend_from_slice(&w);
            c.push(l.inv());
            let c = free_reduce(&c);
            if c.len() <= MAX_LEN {
                dsu.union(id, space.rank(&c));
            }
        }
        for i in 0..w.len() {
            for rel in &cyclic {
                let matched = w[i..].iter().zip(rel).take_while(|(a, b)| a == b).count();
                for p in 4..=matched {
                    let mut out = w[..i].to_vec();
                    out.extend(invert(&rel[p..]));
                    out.extend_from_slice(&w[i + p..]);
                    let out = free_reduce(&out);
                    if out.len() <= MAX_LEN {
                        dsu.union(id, space.rank(&out));
                    }
                }
            }
        }
    }
    (0..n).map(|i| dsu.find(i) as u32).collect()
}
