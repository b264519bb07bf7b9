//! Brute-force rewrite closures, used to cross-check the pasting engine and
//! the braid word problem.
//!
//! Neither closure uses the procedure it checks. The pasting oracle works on
//! raw terms: it enumerates every well-typed composite up to a node cap and
//! closes the set under the strict n-category laws (associativity, units,
//! interchange, functoriality of identities and, reflexively, `refl(c) =
//! i(c)`). The braid oracle searches the graph of words under the braid
//! relations and free cancellation.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use serde::Serialize;

use crate::braid::{self, BraidWord};
use crate::glob::{CellRef, Mode, Presentation};
use crate::pasting::{Diagram, FreeCategory, PastingError};
use crate::penon::PenonTerm;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Gen(CellRef),
    Ident(usize),
    Comp(usize, usize, usize),
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Every well-typed composite over a presentation with at most `cap` nodes,
/// partitioned by the laws of strict n-categories.
pub struct PastingOracle {
    pres: Presentation,
    cap: usize,
    nodes: Vec<Node>,
    dim: Vec<usize>,
    size: Vec<usize>,
    src: Vec<Option<usize>>,
    tgt: Vec<Option<usize>>,
    index: HashMap<Node, usize>,
    uf: UnionFind,
    /// composites whose boundary fell outside the cap
    pub skipped: usize,
}

impl PastingOracle {
    pub fn new(pres: &Presentation, cap: usize) -> Self {
        let mut o = PastingOracle {
            pres: pres.clone(),
            cap,
            nodes: Vec::new(),
            dim: Vec::new(),
            size: Vec::new(),
            src: Vec::new(),
            tgt: Vec::new(),
            index: HashMap::new(),
            uf: UnionFind { parent: Vec::new() },
            skipped: 0,
        };
        for d in 0..=pres.max_dim() {
            o.enumerate(d);
            o.close(d);
        }
        o
    }

    fn insert(&mut self, node: Node, dim: usize, size: usize, src: Option<usize>, tgt: Option<usize>) -> usize {
        let id = self.uf.push();
        self.nodes.push(node.clone());
        self.dim.push(dim);
        self.size.push(size);
        self.src.push(src);
        self.tgt.push(tgt);
        self.index.insert(node, id);
        id
    }

    fn boundary_to(&self, mut x: usize, k: usize, target: bool) -> usize {
        while self.dim[x] > k {
            x = if target { self.tgt[x] } else { self.src[x] }.expect("positive dimension");
        }
        x
    }

    fn enumerate(&mut self, d: usize) {
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); self.cap + 1];
        let gens: Vec<String> = self.pres.cells(d).to_vec();
        for id in gens {
            let (s, t) = if d == 0 {
                (None, None)
            } else {
                let s = self.pres.src_of(d, &id).expect("validated").to_string();
                let t = self.pres.tgt_of(d, &id).expect("validated").to_string();
                (
                    self.index.get(&Node::Gen(CellRef::new(d - 1, s))).copied(),
                    self.index.get(&Node::Gen(CellRef::new(d - 1, t))).copied(),
                )
            };
            let n = self.insert(Node::Gen(CellRef::new(d, id)), d, 1, s, t);
            by_size[1].push(n);
        }
        if d == 0 {
            return;
        }
        let lower: Vec<usize> = (0..self.nodes.len()).filter(|&x| self.dim[x] == d - 1).collect();
        for size in 2..=self.cap {
            for &x in &lower {
                if self.size[x] == size - 1 {
                    let n = self.insert(Node::Ident(x), d, size, Some(x), Some(x));
                    by_size[size].push(n);
                }
            }
            for k in 0..d {
                // group the candidates for the first factor by the class of
                // their k-target
                let mut by_target: HashMap<usize, Vec<usize>> = HashMap::new();
                for bucket in &by_size[1..size - 1] {
                    for &b in bucket {
                        let t = self.boundary_to(b, k, true);
                        let c = self.uf.find(t);
                        by_target.entry(c).or_default().push(b);
                    }
                }
                for sa in 1..size - 1 {
                    let sb = size - 1 - sa;
                    let seconds = by_size[sa].clone();
                    for a in seconds {
                        let s = self.boundary_to(a, k, false);
                        let c = self.uf.find(s);
                        let Some(firsts) = by_target.get(&c) else { continue };
                        let firsts: Vec<usize> = firsts.iter().copied().filter(|&b| self.size[b] == sb).collect();
                        for b in firsts {
                            let (s, t) = if k == d - 1 {
                                (self.src[b], self.tgt[a])
                            } else {
                                let s = Node::Comp(k, self.src[a].expect("d > 0"), self.src[b].expect("d > 0"));
                                let t = Node::Comp(k, self.tgt[a].expect("d > 0"), self.tgt[b].expect("d > 0"));
                                match (self.index.get(&s), self.index.get(&t)) {
                                    (Some(&s), Some(&t)) => (Some(s), Some(t)),
                                    _ => {
                                        self.skipped += 1;
                                        continue;
                                    }
                                }
                            };
                            let n = self.insert(Node::Comp(k, a, b), d, size, s, t);
                            by_size[size].push(n);
                        }
                    }
                }
            }
        }
    }

    /// `x` as a tower of `layers` identities, with reflexive generators
    /// counting as identities on their origin.
    fn peel(&self, mut x: usize, layers: usize) -> Option<usize> {
        for _ in 0..layers {
            x = match &self.nodes[x] {
                Node::Ident(y) => *y,
                Node::Gen(c) if self.pres.mode() == Mode::Reflexive => {
                    let o = self.pres.refl_origin(c.dim, &c.id)?;
                    *self.index.get(&Node::Gen(CellRef::new(c.dim - 1, o)))?
                }
                _ => return None,
            };
        }
        Some(x)
    }

    fn close(&mut self, d: usize) {
        let members: Vec<usize> = (0..self.nodes.len()).filter(|&x| self.dim[x] == d).collect();
        let mut equations: Vec<(usize, usize)> = Vec::new();
        for &x in &members {
            match self.nodes[x].clone() {
                Node::Gen(_) => {
                    if let Some(y) = self.peel(x, 1) {
                        if let Some(&i) = self.index.get(&Node::Ident(y)) {
                            equations.push((x, i));
                        }
                    }
                }
                Node::Ident(y) => {
                    if let Node::Comp(k, a, b) = self.nodes[y].clone() {
                        let ia = self.index.get(&Node::Ident(a)).copied();
                        let ib = self.index.get(&Node::Ident(b)).copied();
                        if let (Some(ia), Some(ib)) = (ia, ib) {
                            if let Some(&c) = self.index.get(&Node::Comp(k, ia, ib)) {
                                equations.push((x, c));
                            }
                        }
                    }
                }
                Node::Comp(k, a, b) => {
                    if let Node::Comp(k2, a1, a2) = self.nodes[a].clone() {
                        if k2 == k {
                            if let Some(&inner) = self.index.get(&Node::Comp(k, a2, b)) {
                                if let Some(&r) = self.index.get(&Node::Comp(k, a1, inner)) {
                                    equations.push((x, r));
                                }
                            }
                        }
                    }
                    if let (Node::Comp(j, a1, a2), Node::Comp(j2, b1, b2)) =
                        (self.nodes[a].clone(), self.nodes[b].clone())
                    {
                        if j == j2 && j > k {
                            let left = self.index.get(&Node::Comp(k, a1, b1)).copied();
                            let right = self.index.get(&Node::Comp(k, a2, b2)).copied();
                            if let (Some(l), Some(r)) = (left, right) {
                                if let Some(&y) = self.index.get(&Node::Comp(j, l, r)) {
                                    equations.push((x, y));
                                }
                            }
                        }
                    }
                }
            }
        }
        for (a, b) in equations {
            self.uf.union(a, b);
        }
        // units depend on lower classes only, congruence on this dimension's
        loop {
            let mut changed = false;
            for &x in &members {
                if let Node::Comp(k, a, b) = self.nodes[x].clone() {
                    let layers = d - k;
                    if let Some(y) = self.peel(a, layers) {
                        let t = self.boundary_to(b, k, true);
                        if self.uf.find(y) == self.uf.find(t) {
                            changed |= self.uf.union(x, b);
                        }
                    }
                    if let Some(y) = self.peel(b, layers) {
                        let s = self.boundary_to(a, k, false);
                        if self.uf.find(y) == self.uf.find(s) {
                            changed |= self.uf.union(x, a);
                        }
                    }
                }
            }
            let mut signatures: HashMap<Node, usize> = HashMap::new();
            for &x in &members {
                let sig = match self.nodes[x].clone() {
                    Node::Gen(_) => continue,
                    Node::Ident(y) => Node::Ident(self.uf.find(y)),
                    Node::Comp(k, a, b) => Node::Comp(k, self.uf.find(a), self.uf.find(b)),
                };
                match signatures.get(&sig) {
                    Some(&y) => changed |= self.uf.union(x, y),
                    None => {
                        signatures.insert(sig, x);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn term_of(&self, x: usize) -> PenonTerm {
        match &self.nodes[x] {
            Node::Gen(c) => PenonTerm::Gen(c.clone()),
            Node::Ident(y) => PenonTerm::ident(self.term_of(*y)),
            Node::Comp(k, a, b) => PenonTerm::comp(*k, self.term_of(*a), self.term_of(*b)),
        }
    }

    fn id_of(&self, t: &PenonTerm) -> Option<usize> {
        let node = match t {
            PenonTerm::Gen(c) => Node::Gen(c.clone()),
            PenonTerm::Ident(x) => Node::Ident(self.id_of(x)?),
            PenonTerm::Comp(k, a, b) => Node::Comp(*k, self.id_of(a)?, self.id_of(b)?),
            PenonTerm::Contr(..) => return None,
        };
        self.index.get(&node).copied()
    }

    /// Enumerated terms with at most `max_nodes` nodes, with their dimension.
    pub fn terms(&self, max_nodes: usize) -> Vec<(PenonTerm, usize)> {
        (0..self.nodes.len()).filter(|&x| self.size[x] <= max_nodes).map(|x| (self.term_of(x), self.dim[x])).collect()
    }

    /// Whether the term was enumerated, i.e. is well-typed within the cap.
    pub fn accepts(&self, t: &PenonTerm) -> bool {
        self.id_of(t).is_some()
    }

    /// `None` if either term is outside the enumerated set.
    pub fn equal(&mut self, a: &PenonTerm, b: &PenonTerm) -> Option<bool> {
        let (x, y) = (self.id_of(a)?, self.id_of(b)?);
        Some(self.uf.find(x) == self.uf.find(y))
    }

    /// Class representative of every enumerated term.
    pub fn class_of(&mut self, t: &PenonTerm) -> Option<usize> {
        let x = self.id_of(t)?;
        Some(self.uf.find(x))
    }
}

/// Interprets a contraction-free term in the free strict n-category.
pub fn engine_image(cat: &FreeCategory, t: &PenonTerm) -> Result<Diagram, String> {
    let r = match t {
        PenonTerm::Gen(c) => cat.embed_generator(c),
        PenonTerm::Ident(x) => cat.identity(&engine_image(cat, x)?),
        PenonTerm::Comp(k, a, b) => cat.compose(&engine_image(cat, a)?, &engine_image(cat, b)?, *k),
        PenonTerm::Contr(..) => return Err(format!("{t} is a contraction cell")),
    };
    r.map_err(|e| e.to_string())
}

/// A place where the engine and the oracle disagree.
#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub left: PenonTerm,
    pub right: Option<PenonTerm>,
    pub oracle: String,
    pub engine: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PastingCrosscheck {
    pub mode: Mode,
    pub max_nodes: usize,
    pub cap: usize,
    pub terms: usize,
    pub rejected_composites: usize,
    pub oracle_classes: usize,
    pub engine_classes: usize,
    pub skipped_boundaries: usize,
    pub disagreements: Vec<Disagreement>,
}

impl PastingCrosscheck {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares engine equality and typing with the oracle on every term of at
/// most `max_nodes` nodes; the oracle may use intermediates up to `cap`.
pub fn crosscheck_pasting(
    pres: &Presentation,
    max_nodes: usize,
    cap: usize,
) -> Result<PastingCrosscheck, PastingError> {
    let cat = FreeCategory::new(pres)?;
    let mut oracle = PastingOracle::new(pres, cap.max(max_nodes));
    let terms = oracle.terms(max_nodes);
    let mut disagreements = Vec::new();
    let mut oracle_to_engine: HashMap<usize, (Diagram, PenonTerm)> = HashMap::new();
    let mut engine_to_oracle: HashMap<Diagram, (usize, PenonTerm)> = HashMap::new();
    for (t, _) in &terms {
        let image = match engine_image(&cat, t) {
            Ok(d) => d,
            Err(e) => {
                disagreements.push(Disagreement {
                    left: t.clone(),
                    right: None,
                    oracle: "well-typed".into(),
                    engine: e,
                });
                continue;
            }
        };
        let class = oracle.class_of(t).expect("enumerated");
        if let Some((d, u)) = oracle_to_engine.get(&class) {
            if *d != image {
                disagreements.push(Disagreement {
                    left: t.clone(),
                    right: Some(u.clone()),
                    oracle: "equal".into(),
                    engine: format!("{image} vs {d}"),
                });
            }
        } else {
            oracle_to_engine.insert(class, (image.clone(), t.clone()));
        }
        if let Some((c, u)) = engine_to_oracle.get(&image) {
            if *c != class {
                disagreements.push(Disagreement {
                    left: t.clone(),
                    right: Some(u.clone()),
                    oracle: "different".into(),
                    engine: format!("both {image}"),
                });
            }
        } else {
            engine_to_oracle.insert(image, (class, t.clone()));
        }
    }
    // composites the oracle rejects must be rejected by the engine too
    let mut buckets: HashMap<(usize, usize), Vec<&PenonTerm>> = HashMap::new();
    for (t, d) in &terms {
        buckets.entry((*d, t.size())).or_default().push(t);
    }
    let mut rejected = 0;
    for (&(d, sa), seconds) in &buckets {
        for sb in 1..max_nodes.saturating_sub(sa) {
            let Some(firsts) = buckets.get(&(d, sb)) else { continue };
            for a in seconds {
                for b in firsts {
                    for k in 0..d {
                        let c = PenonTerm::comp(k, (*a).clone(), (*b).clone());
                        if oracle.accepts(&c) {
                            continue;
                        }
                        rejected += 1;
                        if let Ok(image) = engine_image(&cat, &c) {
                            disagreements.push(Disagreement {
                                left: c,
                                right: None,
                                oracle: "ill-typed".into(),
                                engine: format!("composes to {image}"),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(PastingCrosscheck {
        mode: pres.mode(),
        max_nodes,
        cap: cap.max(max_nodes),
        terms: terms.len(),
        rejected_composites: rejected,
        oracle_classes: oracle_to_engine.len(),
        engine_classes: engine_to_oracle.len(),
        skipped_boundaries: oracle.skipped,
        disagreements,
    })
}

/// Braid oracle verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum BraidVerdict {
    /// exponent sum or permutation differ
    Refuted { by: String },
    /// connected by this many moves
    Connected { steps: usize },
    /// nothing found within the bounds
    Unknown,
}

fn exponent_sum(w: &[i32]) -> i64 {
    w.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum()
}

fn permutation(n: usize, w: &[i32]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..n).collect();
    for &l in w {
        let i = l.unsigned_abs() as usize - 1;
        at.swap(i, i + 1);
    }
    at
}

/// One application of a braid relation or free cancellation, in either
/// direction, keeping words at most `max_len` long.
pub fn braid_moves(n: usize, w: &[i32], max_len: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let len = w.len();
    // free cancellation and insertion
    for p in 0..len.saturating_sub(1) {
        if w[p] == -w[p + 1] {
            let mut v = w[..p].to_vec();
            v.extend_from_slice(&w[p + 2..]);
            out.push(v);
        }
    }
    if len + 2 <= max_len {
        for p in 0..=len {
            for i in 1..n as i32 {
                for s in [i, -i] {
                    let mut v = w[..p].to_vec();
                    v.push(s);
                    v.push(-s);
                    v.extend_from_slice(&w[p..]);
                    out.push(v);
                }
            }
        }
    }
    // far commutation, any signs
    for p in 0..len.saturating_sub(1) {
        if (w[p].abs() - w[p + 1].abs()).abs() >= 2 {
            let mut v = w.to_vec();
            v.swap(p, p + 1);
            out.push(v);
        }
    }
    // the braid relation aba = bab in its sign variants; with x = εp and
    // y = δq adjacent, (εp, δq, -εp) = (-εq, δp, εq), and this rule is its
    // own inverse
    for p in 0..len.saturating_sub(2) {
        let (x, y, z) = (w[p], w[p + 1], w[p + 2]);
        if (x.abs() - y.abs()).abs() != 1 {
            continue;
        }
        let r = if x == z && x.signum() == y.signum() {
            [y, x, y]
        } else if z == -x {
            let (e, d) = (x.signum(), y.signum());
            [-e * y.abs(), d * x.abs(), e * y.abs()]
        } else {
            continue;
        };
        out.push([&w[..p], &r[..], &w[p + 3..]].concat());
    }
    out
}

/// Bidirectional breadth-first search in the move graph.
pub fn braid_connect(
    n: usize,
    w1: &[i32],
    w2: &[i32],
    max_steps: usize,
    max_len: usize,
    budget: usize,
) -> Option<usize> {
    if w1 == w2 {
        return Some(0);
    }
    let mut dist = [HashMap::new(), HashMap::new()];
    let mut frontier = [VecDeque::new(), VecDeque::new()];
    dist[0].insert(w1.to_vec(), 0usize);
    dist[1].insert(w2.to_vec(), 0usize);
    frontier[0].push_back(w1.to_vec());
    frontier[1].push_back(w2.to_vec());
    let mut depth = [0usize, 0usize];
    while depth[0] + depth[1] < max_steps {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return None;
        }
        let mut next = VecDeque::new();
        for w in frontier[side].drain(..) {
            for v in braid_moves(n, &w, max_len) {
                if dist[side].contains_key(&v) {
                    continue;
                }
                if let Some(&d) = dist[1 - side].get(&v) {
                    return Some(depth[side] + 1 + d);
                }
                dist[side].insert(v.clone(), depth[side] + 1);
                next.push_back(v);
            }
            if dist[0].len() + dist[1].len() > budget {
                return None;
            }
        }
        frontier[side] = next;
        depth[side] += 1;
    }
    None
}

/// Words at most `extra` letters longer than the longer input may appear in
/// the search.
pub fn braid_oracle(n: usize, w1: &[i32], w2: &[i32], max_steps: usize, extra: usize, budget: usize) -> BraidVerdict {
    if exponent_sum(w1) != exponent_sum(w2) {
        return BraidVerdict::Refuted { by: "exponent-sum".into() };
    }
    if permutation(n, w1) != permutation(n, w2) {
        return BraidVerdict::Refuted { by: "permutation".into() };
    }
    let max_len = w1.len().max(w2.len()) + extra;
    match braid_connect(n, w1, w2, max_steps, max_len, budget) {
        Some(steps) => BraidVerdict::Connected { steps },
        None => BraidVerdict::Unknown,
    }
}

/// Connected components of the move graph restricted to words of length at
/// most `max_len` on `n` strands.
pub fn braid_components(n: usize, max_len: usize) -> HashMap<Vec<i32>, usize> {
    let letters: Vec<i32> = (1..n as i32).flat_map(|i| [i, -i]).collect();
    let mut all: Vec<Vec<i32>> = vec![Vec::new()];
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    let mut component: HashMap<Vec<i32>, usize> = HashMap::new();
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut count = 0;
    for w in all {
        if seen.contains(&w) {
            continue;
        }
        let mut queue = VecDeque::from([w.clone()]);
        seen.insert(w);
        while let Some(x) = queue.pop_front() {
            for v in braid_moves(n, &x, max_len) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
            component.insert(x, count);
        }
        count += 1;
    }
    component
}

/// Search bounds for the braid oracle.
pub const BRAID_MAX_STEPS: usize = 10;
pub const BRAID_EXTRA_LETTERS: usize = 2;
pub const BRAID_STATE_BUDGET: usize = 60_000;

#[derive(Debug, Clone, Serialize)]
pub struct BraidPairCheck {
    pub n: usize,
    pub left: Vec<i32>,
    pub right: Vec<i32>,
    pub oracle: BraidVerdict,
    pub artin_equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidCrosscheck {
    pub pairs: usize,
    pub connected: usize,
    pub refuted: usize,
    pub unknown: usize,
    /// words on 3 strands compared exhaustively against the move graph
    pub short_words: usize,
    pub short_word_max_len: usize,
    pub disagreements: Vec<BraidPairCheck>,
}

impl BraidCrosscheck {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn random_walk<R: Rng>(rng: &mut R, n: usize, w: &[i32], steps: usize, max_len: usize) -> Vec<i32> {
    let mut cur = w.to_vec();
    for _ in 0..steps {
        let moves = braid_moves(n, &cur, max_len);
        if moves.is_empty() {
            break;
        }
        cur = moves[rng.gen_range(0..moves.len())].clone();
    }
    cur
}

/// Random pairs on at most 4 strands with words of length at most 12, half
/// of them equal by construction, plus every word of length at most
/// `short_len` on 3 strands.
pub fn crosscheck_braids<R: Rng>(rng: &mut R, pairs: usize, short_len: usize) -> BraidCrosscheck {
    let mut out = BraidCrosscheck {
        pairs,
        connected: 0,
        refuted: 0,
        unknown: 0,
        short_words: 0,
        short_word_max_len: short_len,
        disagreements: Vec::new(),
    };
    for i in 0..pairs {
        let n = rng.gen_range(2..=4);
        let left = braid::random_word(rng, n, 12).letters().to_vec();
        let right = if i % 2 == 0 {
            let steps = rng.gen_range(1..=4);
            let walked = random_walk(rng, n, &left, steps, left.len() + BRAID_EXTRA_LETTERS);
            if walked.len() > 12 {
                left.clone()
            } else {
                walked
            }
        } else {
            braid::random_word(rng, n, 12).letters().to_vec()
        };
        let oracle = braid_oracle(n, &left, &right, BRAID_MAX_STEPS, BRAID_EXTRA_LETTERS, BRAID_STATE_BUDGET);
        let (a, b) =
            (BraidWord::new(n, left.clone()).expect("in range"), BraidWord::new(n, right.clone()).expect("in range"));
        let artin_equal = braid::equal(&a, &b).expect("same strands");
        let invariants_agree = a.exponent_sum() == b.exponent_sum() && a.permutation() == b.permutation();
        let consistent = match &oracle {
            BraidVerdict::Connected { .. } => {
                out.connected += 1;
                artin_equal
            }
            BraidVerdict::Refuted { .. } => {
                out.refuted += 1;
                !artin_equal
            }
            BraidVerdict::Unknown => {
                out.unknown += 1;
                true
            }
        } && (!artin_equal || invariants_agree);
        if !consistent {
            out.disagreements.push(BraidPairCheck { n, left, right, oracle, artin_equal });
        }
    }

    // on short words the move graph decides equality outright
    let components = braid_components(3, short_len + BRAID_EXTRA_LETTERS);
    let mut by_action: HashMap<Vec<Vec<i32>>, usize> = HashMap::new();
    let mut by_component: HashMap<usize, (Vec<Vec<i32>>, Vec<i32>)> = HashMap::new();
    let mut words: Vec<&Vec<i32>> = components.keys().filter(|w| w.len() <= short_len).collect();
    words.sort();
    for w in words {
        out.short_words += 1;
        let c = components[w];
        let action = BraidWord::new(3, w.clone()).expect("in range").artin_action();
        let mut flag = |other: &Vec<i32>, artin_equal: bool| {
            out.disagreements.push(BraidPairCheck {
                n: 3,
                left: w.clone(),
                right: other.clone(),
                oracle: if artin_equal { BraidVerdict::Unknown } else { BraidVerdict::Connected { steps: 0 } },
                artin_equal,
            });
        };
        match by_component.get(&c) {
            Some((a, first)) if *a != action => flag(first, false),
            Some(_) => {}
            None => {
                by_component.insert(c, (action.clone(), w.clone()));
            }
        }
        match by_action.get(&action) {
            Some(&other) if other != c => {
                let first = by_component[&other].1.clone();
                flag(&first, true);
            }
            Some(_) => {}
            None => {
                by_action.insert(action, c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glob::{doubly_degenerate, names::*};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t2(id: &str) -> PenonTerm {
        PenonTerm::gen(2, id)
    }

    #[test]
    fn moves_preserve_the_braid() {
        let words: [&[i32]; 6] = [&[1, 2, 1], &[1, 2, -1], &[-1, 2, 1], &[-1, -2, -1], &[-2, 1, 2], &[2, 1, -2]];
        for w in words {
            for v in braid_moves(3, w, 5) {
                let a = BraidWord::new(3, w.to_vec()).unwrap();
                let b = BraidWord::new(3, v.clone()).unwrap();
                assert!(braid::equal(&a, &b).unwrap(), "{w:?} -> {v:?}");
            }
        }
    }

    #[test]
    fn short_braids() {
        assert_eq!(braid_oracle(3, &[1, 2, 1], &[2, 1, 2], 10, 2, 100_000), BraidVerdict::Connected { steps: 1 });
        assert!(matches!(braid_oracle(2, &[1, 1], &[], 10, 2, 100_000), BraidVerdict::Refuted { .. }));
        assert!(matches!(braid_oracle(3, &[1, 2, -1], &[-2, 1, 2], 10, 2, 100_000), BraidVerdict::Connected { .. }));
        assert!(matches!(braid_oracle(4, &[1, 3], &[3, 1], 10, 2, 100_000), BraidVerdict::Connected { steps: 1 }));
    }

    #[test]
    fn random_pairs_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = crosscheck_braids(&mut rng, 500, 6);
        assert!(r.agrees(), "{:?}", r.disagreements.first());
        assert!(r.connected >= 200);
        assert_eq!(r.short_words, 5461);
    }

    #[test]
    fn components_match_artin_action_on_three_strands() {
        let comps = braid_components(3, 6);
        let mut by_action: HashMap<Vec<Vec<i32>>, usize> = HashMap::new();
        let mut by_component: HashMap<usize, Vec<Vec<i32>>> = HashMap::new();
        for (w, &c) in comps.iter().filter(|(w, _)| w.len() <= 4) {
            let action = BraidWord::new(3, w.clone()).unwrap().artin_action();
            let slot = by_action.entry(action.clone()).or_insert(c);
            assert_eq!(*slot, c, "{w:?}");
            let entry = by_component.entry(c).or_insert_with(|| action.clone());
            assert_eq!(*entry, action, "{w:?}");
        }
    }

    #[test]
    fn engine_agrees_with_closure_up_to_seven_nodes() {
        for (mode, classes) in [(Mode::NonReflexive, 284), (Mode::Reflexive, 32)] {
            let r = crosscheck_pasting(&doubly_degenerate(mode), 7, 7).unwrap();
            assert!(r.agrees(), "{:?}", r.disagreements.first());
            assert_eq!(r.oracle_classes, classes);
            assert_eq!(r.skipped_boundaries, 0);
            assert!(r.rejected_composites > 0);
        }
    }

    #[test]
    fn pasting_oracle_small_facts() {
        let d = doubly_degenerate(Mode::NonReflexive);
        let mut o = PastingOracle::new(&d, 5);
        let ab = PenonTerm::comp(1, t2(ALPHA), t2(BETA));
        let ba = PenonTerm::comp(1, t2(BETA), t2(ALPHA));
        assert_eq!(o.equal(&ab, &ba), Some(false));
        let one = PenonTerm::ident(PenonTerm::gen(1, EDGE));
        assert_eq!(o.equal(&PenonTerm::comp(1, t2(ALPHA), one.clone()), &t2(ALPHA)), Some(true));
        let bad = PenonTerm::comp(1, PenonTerm::comp(0, t2(ALPHA), t2(BETA)), t2(ALPHA));
        assert!(!o.accepts(&bad));

        let r = doubly_degenerate(Mode::Reflexive);
        let mut o = PastingOracle::new(&r, 7);
        assert_eq!(o.equal(&ab, &ba), Some(true));
        assert_eq!(o.equal(&PenonTerm::comp(0, t2(ALPHA), t2(BETA)), &ab), Some(true));
    }
}
