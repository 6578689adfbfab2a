//! Isomorphism classes of connected trivalent multigraphs counted by Burnside's lemma:
//! the class count is the average, over all vertex permutations, of the number of
//! labeled adjacency matrices the permutation fixes.

fn permutations_by_cycle_type(k: usize) -> Vec<(Vec<usize>, u64)> {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            partitions(n - p, p, cur, out);
            cur.pop();
        }
    }
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    let mut parts = Vec::new();
    partitions(k, k, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|cycles| {
            let mut perm = vec![0; k];
            let mut start = 0;
            for &c in &cycles {
                for j in 0..c {
                    perm[start + j] = start + (j + 1) % c;
                }
                start += c;
            }
            let mut denom = 1u64;
            for len in 1..=k {
                let m = cycles.iter().filter(|&&c| c == len).count();
                denom *= (len as u64).pow(m as u32) * fact(m);
            }
            (perm, fact(k) / denom)
        })
        .collect()
}

fn connected(k: usize, m: &[Vec<u8>]) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..k {
            if m[v][w] > 0 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Number of connected labeled trivalent multigraphs fixed by `perm`; the diagonal
/// entry counts loops, each adding two to the degree.
fn fixed_count(perm: &[usize]) -> u64 {
    let k = perm.len();
    let mut orbit_of = vec![vec![usize::MAX; k]; k];
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    for i in 0..k {
        for j in i..k {
            if orbit_of[i][j] != usize::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            let (mut a, mut b) = (i, j);
            loop {
                let (x, y) = (a.min(b), a.max(b));
                if orbit_of[x][y] != usize::MAX {
                    break;
                }
                orbit_of[x][y] = orbits.len();
                orbit.push((x, y));
                a = perm[a];
                b = perm[b];
            }
            orbits.push(orbit);
        }
    }
    let mut m = vec![vec![0u8; k]; k];
    let mut degree = vec![0u8; k];
    fn go(idx: usize, orbits: &[Vec<(usize, usize)>], m: &mut Vec<Vec<u8>>, degree: &mut Vec<u8>, k: usize) -> u64 {
        if idx == orbits.len() {
            return u64::from(degree.iter().all(|&d| d == 3) && connected(k, m));
        }
        let mut total = 0;
        for val in 0..=3u8 {
            let mut ok = true;
            let mut added: Vec<(usize, u8)> = Vec::new();
            for &(x, y) in &orbits[idx] {
                let inc = if x == y { [(x, 2 * val)].to_vec() } else { vec![(x, val), (y, val)] };
                for (v, d) in inc {
                    degree[v] += d;
                    added.push((v, d));
                    if degree[v] > 3 {
                        ok = false;
                    }
                }
            }
            if ok {
                for &(x, y) in &orbits[idx] {
                    m[x][y] = val;
                    m[y][x] = val;
                }
                let last_touch = |v: usize| orbits[idx + 1..].iter().all(|o| o.iter().all(|&(x, y)| x != v && y != v));
                if (0..k).all(|v| degree[v] == 3 || !last_touch(v)) {
                    total += go(idx + 1, orbits, m, degree, k);
                }
                for &(x, y) in &orbits[idx] {
                    m[x][y] = 0;
                    m[y][x] = 0;
                }
            }
            for (v, d) in added {
                degree[v] -= d;
            }
            if !ok {
                break;
            }
        }
        total
    }
    go(0, &orbits, &mut m, &mut degree, k)
}

pub fn burnside_class_count(k: usize) -> u64 {
    let fact: u64 = (1..=k as u64).product();
    let total: u64 = permutations_by_cycle_type(k).iter().map(|(perm, count)| count * fixed_count(perm)).sum();
    assert_eq!(total % fact, 0, "Burnside sum must be divisible by k!");
    total / fact
}
