//! Trivalent multigraphs, elementary shifts, and connectivity of the shift graph
//! on isomorphism classes.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} has valence {valence}")]
    Valence { vertex: usize, valence: usize },
    #[error("vertex count {0} must be even and at least 2")]
    VertexCount(usize),
    #[error("vertex count {0} is outside the supported range 2..=10")]
    OutOfRange(usize),
    #[error("edge endpoint {0} is not a vertex")]
    Endpoint(usize),
    #[error("edge {0} does not exist")]
    NoEdge(usize),
    #[error("edge {0} is a loop and cannot be collapsed")]
    LoopCollapse(usize),
    #[error("expansion {0} is not one of the three pairings")]
    Expansion(u8),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graphs have different vertex counts {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("shift sequence does not replay: {0}")]
    Replay(String),
}

/// A multigraph in which every vertex has valence three, loops counting twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrivalentGraph {
    k: usize,
    edges: Vec<(usize, usize)>,
}

fn normalize(mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    edges
}

impl TrivalentGraph {
    pub fn new(k: usize, edges: Vec<(usize, usize)>) -> Result<TrivalentGraph, GraphError> {
        if k < 2 || k % 2 == 1 {
            return Err(GraphError::VertexCount(k));
        }
        let mut valence = vec![0usize; k];
        for &(a, b) in &edges {
            for v in [a, b] {
                *valence.get_mut(v).ok_or(GraphError::Endpoint(v))? += 1;
            }
        }
        if let Some((vertex, &valence)) = valence.iter().enumerate().find(|(_, &d)| d != 3) {
            return Err(GraphError::Valence { vertex, valence });
        }
        Ok(TrivalentGraph { k, edges: normalize(edges) })
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> TrivalentGraph {
        TrivalentGraph { k: 2, edges: vec![(0, 1); 3] }
    }

    /// Two loops joined by a bridge.
    pub fn dumbbell() -> TrivalentGraph {
        TrivalentGraph { k: 2, edges: vec![(0, 0), (0, 1), (1, 1)] }
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.0 == e.1).count()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect();
        n.sort_unstable();
        n.dedup();
        n
    }

    /// Every valid shift of the graph.
    pub fn moves(&self) -> Vec<ShiftMove> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 != self.edges[e].1)
            .flat_map(|edge| (0..3).map(move |expansion| ShiftMove { edge, expansion }))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph trivalent {\n");
        for v in 0..self.k {
            out.push_str(&format!("  {v};\n"));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for TrivalentGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Collapse the non-loop edge `edge` and re-expand the four residual ends.
/// With the ends listed as the two at the smaller endpoint followed by the two at
/// the larger, expansion 0 pairs {0,1}|{2,3}, 1 pairs {0,2}|{1,3}, 2 pairs {0,3}|{1,2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftMove {
    pub edge: usize,
    pub expansion: u8,
}

pub fn apply_shift(g: &TrivalentGraph, m: ShiftMove) -> Result<TrivalentGraph, GraphError> {
    let &(x, y) = g.edges.get(m.edge).ok_or(GraphError::NoEdge(m.edge))?;
    if x == y {
        return Err(GraphError::LoopCollapse(m.edge));
    }
    let ends = |v: usize| -> Vec<(usize, usize)> {
        (0..g.edges.len())
            .filter(|&j| j != m.edge)
            .flat_map(|j| [(j, 0), (j, 1)])
            .filter(|&(j, s)| (if s == 0 { g.edges[j].0 } else { g.edges[j].1 }) == v)
            .collect()
    };
    let mut four = ends(x);
    four.extend(ends(y));
    let (first, second): ([usize; 2], [usize; 2]) = match m.expansion {
        0 => ([0, 1], [2, 3]),
        1 => ([0, 2], [1, 3]),
        2 => ([0, 3], [1, 2]),
        other => return Err(GraphError::Expansion(other)),
    };
    let mut edges = g.edges.clone();
    for (targets, v) in [(first, x), (second, y)] {
        for t in targets {
            let (j, s) = four[t];
            if s == 0 {
                edges[j].0 = v;
            } else {
                edges[j].1 = v;
            }
        }
    }
    Ok(TrivalentGraph { k: g.k, edges: normalize(edges) })
}

/// The canonical edge list together with the relabeling that produces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub edges: Vec<(usize, usize)>,
    /// `labeling[v]` is the canonical label of vertex `v`.
    pub labeling: Vec<usize>,
}

fn encode(g: &TrivalentGraph, order: &[usize]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut label = vec![0; g.k];
    for (i, &v) in order.iter().enumerate() {
        label[v] = i;
    }
    (normalize(g.edges.iter().map(|&(a, b)| (label[a], label[b])).collect()), label)
}

fn search(g: &TrivalentGraph, order: &mut Vec<usize>, pos: usize, placed: &mut [bool], best: &mut Option<(Vec<(usize, usize)>, Vec<usize>)>) {
    if order.len() == g.k {
        let cand = encode(g, order);
        if best.as_ref().is_none_or(|b| cand.0 < b.0) {
            *best = Some(cand);
        }
        return;
    }
    if pos == order.len() {
        for r in 0..g.k {
            if !placed[r] {
                placed[r] = true;
                order.push(r);
                search(g, order, pos, placed, best);
                order.pop();
                placed[r] = false;
            }
        }
        return;
    }
    let fresh: Vec<usize> = g.neighbours(order[pos]).into_iter().filter(|&n| !placed[n]).collect();
    let orders: Vec<Vec<usize>> = match fresh.len() {
        0 => vec![vec![]],
        1 => vec![fresh.clone()],
        2 => vec![fresh.clone(), vec![fresh[1], fresh[0]]],
        _ => vec![fresh.clone(), vec![fresh[0], fresh[2], fresh[1]], vec![fresh[1], fresh[0], fresh[2]], vec![fresh[1], fresh[2], fresh[0]], vec![fresh[2], fresh[0], fresh[1]], vec![fresh[2], fresh[1], fresh[0]]],
    };
    for o in orders {
        for &n in &o {
            placed[n] = true;
            order.push(n);
        }
        search(g, order, pos + 1, placed, best);
        for &n in &o {
            placed[n] = false;
            order.pop();
        }
    }
}

/// Minimum encoding over all breadth-first labelings from every root.
pub fn canonical_form(g: &TrivalentGraph) -> CanonicalForm {
    let mut best = None;
    let mut placed = vec![false; g.k];
    search(g, &mut Vec::with_capacity(g.k), 0, &mut placed, &mut best);
    let (edges, labeling) = best.expect("nonempty graph");
    CanonicalForm { edges, labeling }
}

pub fn is_isomorphic(g1: &TrivalentGraph, g2: &TrivalentGraph) -> bool {
    g1.k == g2.k && g1.loop_count() == g2.loop_count() && canonical_form(g1).edges == canonical_form(g2).edges
}

fn canonical_graph(g: &TrivalentGraph) -> TrivalentGraph {
    TrivalentGraph { k: g.k, edges: canonical_form(g).edges }
}

fn subdivide(edges: &mut Vec<(usize, usize)>, e: usize, x: usize) -> usize {
    let (p, q) = edges[e];
    edges[e] = (p, x);
    edges.push((x, q));
    edges.len() - 1
}

/// Connected trivalent multigraphs on `k` vertices up to isomorphism, in canonical form,
/// grown from smaller ones by inserting an edge between two subdivision points or a pendant loop.
pub fn enumerate_trivalent(k: usize) -> Result<Vec<TrivalentGraph>, GraphError> {
    if k < 2 || k % 2 == 1 {
        return Err(GraphError::VertexCount(k));
    }
    if k > 10 {
        return Err(GraphError::OutOfRange(k));
    }
    let mut level: Vec<TrivalentGraph> = vec![canonical_graph(&TrivalentGraph::theta()), canonical_graph(&TrivalentGraph::dumbbell())];
    level.sort();
    for n in (4..=k).step_by(2) {
        let (x, y) = (n - 2, n - 1);
        let mut found: BTreeMap<Vec<(usize, usize)>, ()> = BTreeMap::new();
        for h in &level {
            let m = h.edges.len();
            for e in 0..m {
                for f in e..m {
                    let mut edges = h.edges.clone();
                    let tail = subdivide(&mut edges, e, x);
                    let target = if f == e { tail } else { f };
                    subdivide(&mut edges, target, y);
                    edges.push((x, y));
                    found.insert(canonical_form(&TrivalentGraph { k: n, edges: normalize(edges) }).edges, ());
                }
                let mut edges = h.edges.clone();
                subdivide(&mut edges, e, x);
                edges.push((x, y));
                edges.push((y, y));
                found.insert(canonical_form(&TrivalentGraph { k: n, edges: normalize(edges) }).edges, ());
            }
        }
        level = found.into_keys().map(|edges| TrivalentGraph { k: n, edges }).collect();
    }
    Ok(level)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftSequence {
    pub start: TrivalentGraph,
    pub moves: Vec<ShiftMove>,
    pub end: TrivalentGraph,
}

impl ShiftSequence {
    /// Replays the moves from the start and checks the stored end graph.
    pub fn replay(&self) -> Result<Vec<TrivalentGraph>, GraphError> {
        let mut graphs = vec![self.start.clone()];
        for &m in &self.moves {
            let next = apply_shift(graphs.last().expect("nonempty"), m)?;
            graphs.push(next);
        }
        if graphs.last() != Some(&self.end) {
            return Err(GraphError::Replay("end graph differs".into()));
        }
        Ok(graphs)
    }
}

/// A shortest cycle as a list of edge indices; a loop if there is one.
fn shortest_cycle(g: &TrivalentGraph) -> Vec<usize> {
    if let Some(e) = g.edges.iter().position(|e| e.0 == e.1) {
        return vec![e];
    }
    let mut best: Option<Vec<usize>> = None;
    for e in 0..g.edges.len() {
        let (s, t) = g.edges[e];
        let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::from([s]);
        prev.insert(s, (usize::MAX, usize::MAX));
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for (j, &(a, b)) in g.edges.iter().enumerate() {
                if j == e || (a != v && b != v) {
                    continue;
                }
                let w = if a == v { b } else { a };
                if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(w) {
                    slot.insert((v, j));
                    queue.push_back(w);
                }
            }
        }
        if !prev.contains_key(&t) {
            continue;
        }
        let mut cycle = vec![e];
        let mut v = t;
        while v != s {
            let (p, j) = prev[&v];
            cycle.push(j);
            v = p;
        }
        if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
            best = Some(cycle);
        }
    }
    best.unwrap_or_default()
}

/// Shifts along a shortest cycle until the graph has a loop.
fn make_loop(g: &TrivalentGraph) -> (Vec<ShiftMove>, TrivalentGraph) {
    let mut moves = Vec::new();
    let mut cur = g.clone();
    loop {
        let len = shortest_cycle(&cur).len();
        if len == 1 {
            return (moves, cur);
        }
        let cycle = shortest_cycle(&cur);
        let edge = cycle[0];
        let (m, next) = (0..3)
            .map(|expansion| ShiftMove { edge, expansion })
            .map(|m| (m, apply_shift(&cur, m).expect("non-loop edge")))
            .find(|(_, h)| shortest_cycle(h).len() < len)
            .expect("some expansion shortens a shortest cycle");
        moves.push(m);
        cur = next;
    }
}


/// Removes the loop at `bulb` together with its stem vertex and smooths the stem.
/// Returns `None` when the stem also carries a loop.
fn strip_loop(g: &TrivalentGraph, bulb: usize) -> Option<TrivalentGraph> {
    let stem_edge = g.edges.iter().position(|&(a, b)| (a == bulb) != (b == bulb))?;
    let (a, b) = g.edges[stem_edge];
    let stem = if a == bulb { b } else { a };
    let others: Vec<usize> = (0..g.k).filter(|&v| v != stem && v != bulb).collect();
    let index: HashMap<usize, usize> = others.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut ends = Vec::new();
    let mut edges = Vec::new();
    for &(p, q) in &g.edges {
        if p == bulb || q == bulb {
            continue;
        }
        match (p == stem, q == stem) {
            (false, false) => edges.push((index[&p], index[&q])),
            (true, false) => ends.push(index[&q]),
            (false, true) => ends.push(index[&p]),
            (true, true) => return None,
        }
    }
    edges.push((ends[0], ends[1]));
    Some(TrivalentGraph { k: g.k - 2, edges: normalize(edges) })
}

/// Canonical edge lists of every graph obtained by stripping one pendant loop.
fn stripped_classes(g: &TrivalentGraph) -> Vec<Vec<(usize, usize)>> {
    g.edges
        .iter()
        .filter(|e| e.0 == e.1)
        .filter_map(|e| strip_loop(g, e.0))
        .map(|h| canonical_form(&h).edges)
        .collect()
}

/// Breadth-first search over shifts from `start` until `accept` holds, only passing
/// through graphs satisfying `keep`.
fn shift_search(
    start: &TrivalentGraph,
    max_depth: usize,
    keep: impl Fn(&TrivalentGraph) -> bool,
    accept: impl Fn(&TrivalentGraph) -> bool,
) -> Option<(Vec<ShiftMove>, TrivalentGraph)> {
    if accept(start) {
        return Some((Vec::new(), start.clone()));
    }
    let mut seen: HashMap<Vec<(usize, usize)>, ()> = HashMap::from([(canonical_form(start).edges, ())]);
    let mut frontier = vec![(Vec::new(), start.clone())];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for (path, g) in &frontier {
            for m in g.moves() {
                let h = apply_shift(g, m).expect("listed move");
                let mut p = path.clone();
                p.push(m);
                if accept(&h) {
                    return Some((p, h));
                }
                if keep(&h) && seen.insert(canonical_form(&h).edges, ()).is_none() {
                    next.push((p, h));
                }
            }
        }
        frontier = next;
    }
    None
}

fn moves_between(g1: &TrivalentGraph, g2: &TrivalentGraph) -> Vec<ShiftMove> {
    if g1.k == 2 {
        let target = canonical_form(g2).edges;
        return shift_search(g1, 4, |_| true, |h| canonical_form(h).edges == target).expect("k = 2 classes are adjacent").0;
    }
    let (mut moves, l1) = make_loop(g1);
    let (back, l2) = make_loop(g2);
    let b1 = l1.edges.iter().find(|e| e.0 == e.1).and_then(|e| strip_loop(&l1, e.0)).expect("pendant loop");
    let b2 = l2.edges.iter().find(|e| e.0 == e.1).and_then(|e| strip_loop(&l2, e.0)).expect("pendant loop");
    let inner = moves_between(&b1, &b2);
    let mut stage = b1.clone();
    let mut cur = l1;
    for m in inner {
        stage = apply_shift(&stage, m).expect("inner move");
        let target = canonical_form(&stage).edges;
        let (lift, next) = shift_search(&cur, 2, |_| true, |h| stripped_classes(h).contains(&target)).expect("lift exists");
        moves.extend(lift);
        cur = next;
    }
    let base = canonical_form(&b2).edges;
    let goal = canonical_form(&l2).edges;
    let (slides, next) = shift_search(&cur, 3 * cur.k, |h| stripped_classes(h).contains(&base), |h| canonical_form(h).edges == goal)
        .expect("loop slides to the matching edge");
    moves.extend(slides);
    cur = next;
    let mut chain = vec![g2.clone()];
    for &m in &back {
        let h = apply_shift(chain.last().expect("nonempty"), m).expect("recorded move");
        chain.push(h);
    }
    chain.pop();
    for prev in chain.iter().rev() {
        let target = canonical_form(prev).edges;
        let (undo, next) = shift_search(&cur, 1, |_| true, |h| canonical_form(h).edges == target).expect("shifts are reversible");
        moves.extend(undo);
        cur = next;
    }
    moves
}

/// A shift sequence from `g1` to a graph isomorphic to `g2`, built inductively:
/// shorten a shortest cycle to a loop, strip the loop and its stem, connect the
/// smaller graphs, lift each move, slide the loop into place, then undo the
/// shortening done on `g2`.
pub fn connect_graphs(g1: &TrivalentGraph, g2: &TrivalentGraph) -> Result<ShiftSequence, GraphError> {
    if g1.k != g2.k {
        return Err(GraphError::SizeMismatch(g1.k, g2.k));
    }
    if !g1.is_connected() || !g2.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let moves = moves_between(g1, g2);
    let mut end = g1.clone();
    for &m in &moves {
        end = apply_shift(&end, m)?;
    }
    if !is_isomorphic(&end, g2) {
        return Err(GraphError::Replay("end graph is not isomorphic to the target".into()));
    }
    Ok(ShiftSequence { start: g1.clone(), moves, end })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub k: usize,
    pub classes: usize,
    pub connected: bool,
    pub diameter: usize,
}

/// Builds the shift graph on isomorphism classes and checks it is connected.
pub fn verify_quotient_connectivity(k: usize) -> Result<QuotientReport, GraphError> {
    if k > 8 {
        return Err(GraphError::OutOfRange(k));
    }
    let classes = enumerate_trivalent(k)?;
    let index: HashMap<&Vec<(usize, usize)>, usize> = classes.iter().enumerate().map(|(i, g)| (&g.edges, i)).collect();
    let mut adjacency = vec![Vec::new(); classes.len()];
    for (i, g) in classes.iter().enumerate() {
        for m in g.moves() {
            let h = canonical_form(&apply_shift(g, m)?).edges;
            let j = *index.get(&h).ok_or(GraphError::Replay("shift left the class list".into()))?;
            if i != j && !adjacency[i].contains(&j) {
                adjacency[i].push(j);
            }
        }
    }
    let mut connected = true;
    let mut diameter = 0;
    for s in 0..classes.len() {
        let mut dist = vec![usize::MAX; classes.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            connected = false;
        } else {
            diameter = diameter.max(*dist.iter().max().expect("nonempty"));
        }
    }
    Ok(QuotientReport { k, classes: classes.len(), connected, diameter })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &TrivalentGraph, perm: &[usize]) -> TrivalentGraph {
        TrivalentGraph::new(g.k, g.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect()).unwrap()
    }

    #[test]
    fn dumbbell_shifts_to_theta() {
        let d = TrivalentGraph::dumbbell();
        let moves = d.moves();
        assert_eq!(moves.len(), 3);
        let images: Vec<_> = moves.iter().map(|&m| apply_shift(&d, m).unwrap()).collect();
        assert!(images.iter().any(|h| is_isomorphic(h, &TrivalentGraph::theta())));
        assert!(images.iter().any(|h| is_isomorphic(h, &d)));
    }

    #[test]
    fn theta_shifts_to_theta_and_dumbbell() {
        let t = TrivalentGraph::theta();
        let images: Vec<_> = t.moves().iter().map(|&m| apply_shift(&t, m).unwrap()).collect();
        assert!(images.iter().any(|h| is_isomorphic(h, &t)));
        assert!(images.iter().any(|h| is_isomorphic(h, &TrivalentGraph::dumbbell())));
    }

    #[test]
    fn identity_expansion_fixes_graph() {
        for g in enumerate_trivalent(6).unwrap() {
            for m in g.moves().into_iter().filter(|m| m.expansion == 0) {
                assert_eq!(apply_shift(&g, m).unwrap(), g);
            }
        }
    }

    #[test]
    fn loops_are_not_collapsible() {
        let d = TrivalentGraph::dumbbell();
        assert_eq!(apply_shift(&d, ShiftMove { edge: 0, expansion: 1 }), Err(GraphError::LoopCollapse(0)));
        assert_eq!(apply_shift(&d, ShiftMove { edge: 1, expansion: 3 }), Err(GraphError::Expansion(3)));
    }

    #[test]
    fn shifts_are_reversible() {
        for g in enumerate_trivalent(6).unwrap() {
            let c = canonical_form(&g).edges;
            for m in g.moves() {
                let h = apply_shift(&g, m).unwrap();
                assert!(h.moves().iter().any(|&n| canonical_form(&apply_shift(&h, n).unwrap()).edges == c));
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let perms = [[3, 1, 5, 0, 2, 4], [5, 4, 3, 2, 1, 0], [1, 0, 3, 2, 5, 4]];
        for g in enumerate_trivalent(6).unwrap() {
            for p in &perms {
                let h = relabel(&g, p);
                assert!(is_isomorphic(&g, &h));
                let cf = canonical_form(&h);
                let back: Vec<_> = h.edges.iter().map(|&(a, b)| (cf.labeling[a], cf.labeling[b])).collect();
                assert_eq!(normalize(back), cf.edges);
            }
        }
    }

    #[test]
    fn rejects_bad_graphs() {
        assert_eq!(TrivalentGraph::new(3, vec![]), Err(GraphError::VertexCount(3)));
        assert!(matches!(TrivalentGraph::new(2, vec![(0, 1), (0, 1)]), Err(GraphError::Valence { .. })));
        assert_eq!(TrivalentGraph::new(2, vec![(0, 2)]), Err(GraphError::Endpoint(2)));
        assert_eq!(enumerate_trivalent(12), Err(GraphError::OutOfRange(12)));
    }

    #[test]
    fn connect_replays_at_k4() {
        let classes = enumerate_trivalent(4).unwrap();
        for a in &classes {
            for b in &classes {
                let s = connect_graphs(a, b).unwrap();
                s.replay().unwrap();
                assert!(is_isomorphic(&s.end, b));
            }
        }
    }

    #[test]
    fn small_class_counts() {
        let counts: Vec<_> = [2, 4, 6].iter().map(|&k| enumerate_trivalent(k).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 5, 17]);
    }
}
