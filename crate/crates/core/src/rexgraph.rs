//! Reduced expression graphs, their conflated quotients and paths in them.
//!
//! Vertices of both graphs are addressed by index. Expanded vertices are the
//! reduced words in lexicographic order; conflated vertices are clouds ordered
//! by representative.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::symgroup::{braid_moves, longest_element, reduced_words, word_to_perm, BraidMove, Permutation, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Distant,
    Adjacent,
}

/// An edge of the expanded graph. Adjacent edges run from the word holding
/// `i(i+1)i` to the one holding `(i+1)i(i+1)`; distant edges are stored with
/// `from < to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RexEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
    /// Move turning `from` into `to`.
    pub mv: BraidMove,
}

/// Graphs whose vertex sequences can be walked and enumerated.
pub trait PathGraph {
    fn vertex_count(&self) -> usize;
    /// Neighbours in increasing index order, ignoring orientation.
    fn neighbors(&self, v: usize) -> &[usize];
    fn label(&self, v: usize) -> &Word;

    fn is_path(&self, path: &[usize]) -> bool {
        !path.is_empty()
            && path.iter().all(|&v| v < self.vertex_count())
            && path.windows(2).all(|p| self.neighbors(p[0]).binary_search(&p[1]).is_ok())
    }

    fn is_complete(&self, path: &[usize]) -> bool {
        let seen: BTreeSet<usize> = path.iter().copied().collect();
        seen.len() == self.vertex_count()
    }

    fn format_path(&self, path: &[usize]) -> String {
        let labels: Vec<String> = path.iter().map(|&v| self.label(v).to_string()).collect();
        format!("[{}]", labels.join(", "))
    }
}

/// The reduced expression graph of a permutation.
#[derive(Clone, Debug)]
pub struct RexGraph {
    perm: Permutation,
    vertices: Vec<Word>,
    index: BTreeMap<Word, usize>,
    edges: Vec<RexEdge>,
    adj: Vec<Vec<usize>>,
    /// `(neighbour, edge index)` per vertex.
    incident: Vec<Vec<(usize, usize)>>,
}

impl RexGraph {
    pub fn new(perm: &Permutation) -> Self {
        let vertices: Vec<Word> = reduced_words(perm).into_iter().collect();
        let index: BTreeMap<Word, usize> = vertices.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges = BTreeSet::new();
        for (i, w) in vertices.iter().enumerate() {
            for (mv, next) in braid_moves(w) {
                let j = index[&next];
                let edge = match mv.kind {
                    crate::symgroup::MoveKind::Distant(..) if i < j => {
                        RexEdge { from: i, to: j, kind: EdgeKind::Distant, mv }
                    }
                    crate::symgroup::MoveKind::AdjacentUp(_) => {
                        RexEdge { from: i, to: j, kind: EdgeKind::Adjacent, mv }
                    }
                    _ => continue,
                };
                edges.insert(edge);
            }
        }
        let edges: Vec<RexEdge> = edges.into_iter().collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            incident[e.from].push((e.to, k));
            incident[e.to].push((e.from, k));
        }
        for inc in &mut incident {
            inc.sort_unstable();
        }
        let adj = incident.iter().map(|inc| inc.iter().map(|&(v, _)| v).collect()).collect();
        RexGraph { perm: perm.clone(), vertices, index, edges, adj, incident }
    }

    /// Graph of the element represented by `w` in `S_rank`.
    pub fn of_word(w: &Word, rank: u8) -> Result<Self> {
        if !w.is_reduced(rank)? {
            return Err(Error::NotReduced(w.clone()));
        }
        Ok(Self::new(&word_to_perm(w, rank)?))
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn rank(&self) -> u8 {
        self.perm.rank()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn edges(&self) -> &[RexEdge] {
        &self.edges
    }

    /// The edge between `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<&RexEdge> {
        let inc = &self.incident[a];
        let pos = inc.binary_search_by_key(&b, |&(v, _)| v).ok()?;
        Some(&self.edges[inc[pos].1])
    }

    /// Braid move carrying vertex `a` to vertex `b`.
    pub fn move_between(&self, a: usize, b: usize) -> Option<BraidMove> {
        let e = self.edge_between(a, b)?;
        Some(if e.from == a { e.mv } else { e.mv.reverse() })
    }

    fn distant_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().filter(|&&(_, k)| self.edges[k].kind == EdgeKind::Distant).map(|&(u, _)| u)
    }

    /// Connected components of the distant-edge subgraph, ordered by their
    /// lexicographically smallest member.
    pub fn clouds(&self) -> Vec<Cloud> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.distant_neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(Cloud { members: members.iter().map(|&i| self.vertices[i].clone()).collect(), indices: members });
        }
        out
    }

    /// Shortest distant-only walk from `from` to the first vertex accepted by
    /// `goal`, exploring neighbours in index order.
    fn distant_bfs(&self, from: usize, goal: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.vertices.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if goal(v) {
                let mut path = vec![v];
                let mut cur = v;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for u in self.distant_neighbors(v) {
                if prev[u] == usize::MAX {
                    prev[u] = v;
                    queue.push_back(u);
                }
            }
        }
        None
    }

    /// Expanded path as words.
    pub fn words(&self, path: &[usize]) -> Vec<Word> {
        path.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph rex {\n");
        for w in &self.vertices {
            let _ = writeln!(s, "  \"{w}\";");
        }
        for e in &self.edges {
            let (a, b) = (&self.vertices[e.from], &self.vertices[e.to]);
            match e.kind {
                EdgeKind::Distant => {
                    let _ = writeln!(s, "  \"{a}\" -> \"{b}\" [style=dashed, dir=none];");
                }
                EdgeKind::Adjacent => {
                    let _ = writeln!(s, "  \"{a}\" -> \"{b}\";");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

impl PathGraph for RexGraph {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
    fn label(&self, v: usize) -> &Word {
        &self.vertices[v]
    }
}

/// A maximal set of reduced words joined by distant moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cloud {
    members: Vec<Word>,
    indices: Vec<usize>,
}

impl Cloud {
    /// Members in lexicographic order.
    pub fn members(&self) -> &[Word] {
        &self.members
    }

    /// Lexicographically smallest member.
    pub fn representative(&self) -> &Word {
        &self.members[0]
    }

    /// Expanded-graph indices of the members.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }
}

/// Oriented edge of the conflated graph together with the expanded edge it
/// was projected from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConflatedEdge {
    pub tail: usize,
    pub head: usize,
    pub rex_tail: usize,
    pub rex_head: usize,
}

/// The quotient of the expanded graph by its distant edges, oriented by
/// `i(i+1)i -> (i+1)i(i+1)`.
#[derive(Clone, Debug)]
pub struct ConflatedGraph {
    rex: RexGraph,
    clouds: Vec<Cloud>,
    cloud_of: Vec<usize>,
    edges: Vec<ConflatedEdge>,
    adj: Vec<Vec<usize>>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    labels: Vec<Word>,
}

impl ConflatedGraph {
    pub fn new(rex: RexGraph) -> Self {
        let clouds = rex.clouds();
        let mut cloud_of = vec![0; rex.vertex_count()];
        for (c, cloud) in clouds.iter().enumerate() {
            for &v in cloud.indices() {
                cloud_of[v] = c;
            }
        }
        // one retained edge per cloud pair: the least (tail word, head word)
        let mut retained: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for e in rex.edges().iter().filter(|e| e.kind == EdgeKind::Adjacent) {
            let key = (cloud_of[e.from], cloud_of[e.to]);
            let cand = (e.from, e.to);
            retained.entry(key).and_modify(|cur| *cur = (*cur).min(cand)).or_insert(cand);
        }
        let n = clouds.len();
        let mut adj = vec![Vec::new(); n];
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for (&(tail, head), &(rt, rh)) in &retained {
            edges.push(ConflatedEdge { tail, head, rex_tail: rt, rex_head: rh });
            adj[tail].push(head);
            adj[head].push(tail);
            out_adj[tail].push(head);
            in_adj[head].push(tail);
        }
        for list in adj.iter_mut().chain(out_adj.iter_mut()).chain(in_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let labels = clouds.iter().map(|c| c.representative().clone()).collect();
        ConflatedGraph { rex, clouds, cloud_of, edges, adj, out_adj, in_adj, labels }
    }

    pub fn of_word(w: &Word, rank: u8) -> Result<Self> {
        Ok(Self::new(RexGraph::of_word(w, rank)?))
    }

    pub fn rex(&self) -> &RexGraph {
        &self.rex
    }

    pub fn clouds(&self) -> &[Cloud] {
        &self.clouds
    }

    pub fn edges(&self) -> &[ConflatedEdge] {
        &self.edges
    }

    pub fn cloud_of(&self, rex_vertex: usize) -> usize {
        self.cloud_of[rex_vertex]
    }

    /// Cloud containing the word `w`.
    pub fn cloud_of_word(&self, w: &Word) -> Option<usize> {
        self.rex.index_of(w).map(|v| self.cloud_of[v])
    }

    pub fn representative(&self, c: usize) -> &Word {
        self.clouds[c].representative()
    }

    /// Expanded index of the representative of cloud `c`.
    pub fn representative_index(&self, c: usize) -> usize {
        self.clouds[c].indices()[0]
    }

    pub fn successors(&self, c: usize) -> &[usize] {
        &self.out_adj[c]
    }

    pub fn predecessors(&self, c: usize) -> &[usize] {
        &self.in_adj[c]
    }

    pub fn is_oriented_edge(&self, a: usize, b: usize) -> bool {
        self.out_adj[a].binary_search(&b).is_ok()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.clouds.len()).filter(|&c| self.in_adj[c].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.clouds.len()).filter(|&c| self.out_adj[c].is_empty()).collect()
    }

    /// The unique source and sink of the orientation.
    pub fn source_sink(&self) -> Result<(usize, usize)> {
        let (so, si) = (self.sources(), self.sinks());
        if so.len() == 1 && si.len() == 1 {
            Ok((so[0], si[0]))
        } else {
            Err(Error::NonUniqueSourceSink {
                sources: so.iter().map(|&c| self.labels[c].clone()).collect(),
                sinks: si.iter().map(|&c| self.labels[c].clone()).collect(),
            })
        }
    }

    /// Whether the orientation has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.clouds.len();
        let mut indeg: Vec<usize> = self.in_adj.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&c| indeg[c] == 0).collect();
        let mut seen = 0;
        while let Some(c) = queue.pop_front() {
            seen += 1;
            for &d in &self.out_adj[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    queue.push_back(d);
                }
            }
        }
        seen == n
    }

    /// Resolves a vertex token: a member word of a cloud, or one of the
    /// aliases `s` (source), `t` (sink) and `c` (the middle of a 3-vertex
    /// line).
    pub fn resolve(&self, token: &str) -> Result<usize> {
        let bad = |why: &str| Error::InvalidPath(token.to_string(), why.to_string());
        match token {
            "s" | "t" => {
                let (s, t) = self.source_sink()?;
                Ok(if token == "s" { s } else { t })
            }
            "c" => {
                let (s, t) = self.source_sink()?;
                let mids: Vec<usize> = (0..self.clouds.len()).filter(|&c| c != s && c != t).collect();
                match mids[..] {
                    [m] => Ok(m),
                    _ => Err(bad("alias c needs exactly one vertex besides s and t")),
                }
            }
            _ => {
                let w: Word = token.parse().map_err(|_| bad("not a word"))?;
                self.cloud_of_word(&w).ok_or_else(|| bad("not a vertex of this graph"))
            }
        }
    }

    /// Each step follows an oriented edge forwards.
    pub fn is_oriented(&self, path: &[usize]) -> bool {
        path.windows(2).all(|p| self.is_oriented_edge(p[0], p[1]))
    }

    /// Each step follows an oriented edge backwards.
    pub fn is_reverse_oriented(&self, path: &[usize]) -> bool {
        path.windows(2).all(|p| self.is_oriented_edge(p[1], p[0]))
    }

    pub fn is_straight(&self, path: &[usize]) -> bool {
        self.is_oriented(path) || self.is_reverse_oriented(path)
    }

    /// A straight path from source to sink or from sink to source.
    pub fn is_direct(&self, path: &[usize]) -> bool {
        let Ok((s, t)) = self.source_sink() else {
            return false;
        };
        let ends = (path.first().copied(), path.last().copied());
        (ends == (Some(s), Some(t)) && self.is_oriented(path))
            || (ends == (Some(t), Some(s)) && self.is_reverse_oriented(path))
    }

    pub fn has_direct_subpath(&self, path: &[usize]) -> bool {
        (0..path.len()).any(|i| (i + 1..path.len()).any(|j| self.is_direct(&path[i..=j])))
    }

    /// A path in the expanded graph projecting to `path`. It starts at
    /// `start` (default: the first cloud's representative), hops inside each
    /// cloud along shortest distant walks to the nearest word with an
    /// adjacent move into the next cloud, and ends at `end` (default: the
    /// last cloud's representative).
    pub fn lift_path(&self, path: &[usize], start: Option<usize>, end: Option<usize>) -> Result<Vec<usize>> {
        let invalid = |why: &str| Error::InvalidPath(self.format_path(path), why.to_string());
        if !self.is_path(path) {
            return Err(invalid("consecutive vertices must be adjacent"));
        }
        let first = path[0];
        let last = *path.last().expect("nonempty");
        let mut cur = start.unwrap_or_else(|| self.representative_index(first));
        if self.cloud_of.get(cur) != Some(&first) {
            return Err(invalid("start word is not in the first cloud"));
        }
        let mut out = vec![cur];
        for step in path.windows(2) {
            let next = step[1];
            let exits = |v: usize| self.rex.neighbors(v).iter().any(|&u| self.cloud_of[u] == next);
            let walk = self.rex.distant_bfs(cur, exits).ok_or_else(|| invalid("no exit towards next cloud"))?;
            out.extend_from_slice(&walk[1..]);
            let v = *out.last().expect("nonempty");
            let u = *self.rex.neighbors(v).iter().find(|&&u| self.cloud_of[u] == next).expect("exit found");
            out.push(u);
            cur = u;
        }
        let end = end.unwrap_or_else(|| self.representative_index(last));
        if self.cloud_of.get(end) != Some(&last) {
            return Err(invalid("end word is not in the last cloud"));
        }
        let walk = self.rex.distant_bfs(cur, |v| v == end).expect("clouds are distant-connected");
        out.extend_from_slice(&walk[1..]);
        Ok(out)
    }

    /// The projection of an expanded path: clouds visited, with repeats
    /// from distant steps removed.
    pub fn project(&self, rex_path: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &v in rex_path {
            let c = self.cloud_of[v];
            if out.last() != Some(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Canonical representative of the equivalence class of a complete path,
    /// determined by its endpoints. Available for longest elements and for
    /// `23121` and `12312`, where all complete paths with the same endpoints
    /// are equivalent.
    pub fn simplify_path(&self, path: &[usize]) -> Result<Vec<usize>> {
        let element = self.rex.vertices()[0].clone();
        let perm = self.rex.permutation();
        let rank = perm.rank();
        let is_w0 = longest_element(rank).and_then(|w| word_to_perm(&w, rank)).map(|p| &p == perm).unwrap_or(false);
        let is_line = ["23121", "12312"].iter().any(|s| {
            let w: Word = s.parse().expect("literal");
            rank >= 4 && word_to_perm(&w, rank).map(|p| &p == perm).unwrap_or(false)
        });
        if !is_w0 && !is_line {
            return Err(Error::UnsupportedElement(element));
        }
        if !self.is_path(path) {
            return Err(Error::InvalidPath(self.format_path(path), "not a path".to_string()));
        }
        if !self.is_complete(path) {
            return Err(Error::NotComplete);
        }
        if !self.has_direct_subpath(path) {
            return Err(Error::NoDirectSubpath);
        }
        let (s, t) = self.source_sink()?;
        let (a, z) = (path[0], *path.last().expect("nonempty"));
        let mut legs: Vec<(usize, usize)> = Vec::new();
        if is_line {
            // s - c - t: every complete path is a zigzag over the middle
            let c = self.resolve("c")?;
            let seq: &[usize] = match (a, z) {
                _ if a == c && z == c => &[c, s, c, t, c],
                _ if a == z => &[a, c, if a == s { t } else { s }, c, a],
                _ if a == c => &[c, if z == s { t } else { s }, c, z],
                _ if z == c => &[a, c, if a == s { t } else { s }, c],
                _ => &[a, c, z],
            };
            return Ok(seq.to_vec());
        }
        // through s and t: straight in, one or two direct legs, straight out
        let first_hub = if a == s || a == t {
            a
        } else if z == t {
            s
        } else {
            t
        };
        let second_hub = if first_hub == s { t } else { s };
        if a != first_hub {
            legs.push((a, first_hub));
        }
        legs.push((first_hub, second_hub));
        let last_hub = if z == s || z == t {
            if z != second_hub {
                legs.push((second_hub, z));
            }
            z
        } else {
            second_hub
        };
        if z != last_hub {
            legs.push((last_hub, z));
        }
        let mut out = vec![a];
        for (from, to) in legs {
            let leg = self.straight_path(from, to).expect("every vertex lies on an oriented path");
            out.extend_from_slice(&leg[1..]);
        }
        Ok(out)
    }

    /// Shortest oriented or reverse-oriented path from `a` to `b`, smallest
    /// vertex sequence first among equals.
    pub fn straight_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        self.directed_shortest(a, b, &self.out_adj).or_else(|| self.directed_shortest(a, b, &self.in_adj))
    }

    fn directed_shortest(&self, a: usize, b: usize, next: &[Vec<usize>]) -> Option<Vec<usize>> {
        let n = self.clouds.len();
        // distance to b along `next`
        let mut dist = vec![usize::MAX; n];
        dist[b] = 0;
        let mut queue = VecDeque::from([b]);
        while let Some(v) = queue.pop_front() {
            for u in 0..n {
                if dist[u] == usize::MAX && next[u].binary_search(&v).is_ok() {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        if dist[a] == usize::MAX {
            return None;
        }
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *next[cur]
                .iter()
                .find(|&&u| dist[u] != usize::MAX && dist[u] + 1 == dist[cur])
                .expect("distance decreases");
            path.push(cur);
        }
        Some(path)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph conflated {\n");
        for (c, cloud) in self.clouds.iter().enumerate() {
            let members: Vec<String> = cloud.members().iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  \"{}\" [label=\"{}\"];", self.labels[c], members.join(","));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  \"{}\" -> \"{}\";", self.labels[e.tail], self.labels[e.head]);
        }
        s.push_str("}\n");
        s
    }
}

impl PathGraph for ConflatedGraph {
    fn vertex_count(&self) -> usize {
        self.clouds.len()
    }
    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
    fn label(&self, v: usize) -> &Word {
        &self.labels[v]
    }
}

/// Depth-first stream of complete paths from `a` to `z` with at most
/// `max_len` vertices, in lexicographic order of vertex indices.
pub struct CompletePaths<'g, G: PathGraph> {
    graph: &'g G,
    z: usize,
    max_len: usize,
    dist_to_z: Vec<usize>,
    path: Vec<usize>,
    cursor: Vec<usize>,
    visits: Vec<u32>,
    distinct: usize,
    started: bool,
}

pub fn enumerate_complete_paths<G: PathGraph>(graph: &G, a: usize, z: usize, max_len: usize) -> CompletePaths<'_, G> {
    let n = graph.vertex_count();
    let mut dist_to_z = vec![usize::MAX; n];
    if z < n {
        dist_to_z[z] = 0;
        let mut queue = VecDeque::from([z]);
        while let Some(v) = queue.pop_front() {
            for &u in graph.neighbors(v) {
                if dist_to_z[u] == usize::MAX {
                    dist_to_z[u] = dist_to_z[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    CompletePaths {
        graph,
        z,
        max_len,
        dist_to_z,
        path: vec![a],
        cursor: vec![0],
        visits: vec![0; n],
        distinct: 0,
        started: a >= n,
    }
}

impl<G: PathGraph> CompletePaths<'_, G> {
    fn enter(&mut self, v: usize) {
        if self.visits[v] == 0 {
            self.distinct += 1;
        }
        self.visits[v] += 1;
    }

    fn leave(&mut self, v: usize) {
        self.visits[v] -= 1;
        if self.visits[v] == 0 {
            self.distinct -= 1;
        }
    }

    fn accepts(&self) -> bool {
        self.path.last() == Some(&self.z) && self.distinct == self.graph.vertex_count()
    }

    /// Whether `v` can still start a completion within the length budget.
    fn viable(&self, v: usize, len_after: usize) -> bool {
        let missing = self.graph.vertex_count() - self.distinct - usize::from(self.visits[v] == 0);
        let d = self.dist_to_z[v];
        d != usize::MAX && len_after + d.max(missing) <= self.max_len
    }
}

impl<G: PathGraph> Iterator for CompletePaths<'_, G> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            let a = self.path[0];
            if !self.viable(a, 1) {
                self.path.clear();
                return None;
            }
            self.enter(a);
            if self.accepts() {
                return Some(self.path.clone());
            }
        }
        while let Some(&v) = self.path.last() {
            let depth = self.path.len() - 1;
            let nbrs = self.graph.neighbors(v);
            let mut advanced = false;
            while self.cursor[depth] < nbrs.len() {
                let u = nbrs[self.cursor[depth]];
                self.cursor[depth] += 1;
                if self.viable(u, self.path.len() + 1) {
                    self.enter(u);
                    self.path.push(u);
                    self.cursor.push(0);
                    advanced = true;
                    break;
                }
            }
            if advanced {
                if self.accepts() {
                    return Some(self.path.clone());
                }
            } else {
                self.path.pop();
                self.cursor.pop();
                self.leave(v);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn conflated(s: &str) -> ConflatedGraph {
        let word = w(s);
        ConflatedGraph::of_word(&word, word.min_rank()).unwrap()
    }

    fn w0(n: u8) -> ConflatedGraph {
        ConflatedGraph::of_word(&longest_element(n).unwrap(), n).unwrap()
    }

    #[test]
    fn rex_12321() {
        let g = RexGraph::of_word(&w("12321"), 4).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edges().len(), 6);
        let adjacent: Vec<_> = g.edges().iter().filter(|e| e.kind == EdgeKind::Adjacent).collect();
        assert_eq!(adjacent.len(), 2);
        let c = ConflatedGraph::new(g);
        let members: Vec<Vec<String>> =
            c.clouds().iter().map(|cl| cl.members().iter().map(|m| m.to_string()).collect()).collect();
        assert_eq!(members, [vec!["12321"], vec!["13213", "13231", "31213", "31231"], vec!["32123"]]);
        let (s, t) = c.source_sink().unwrap();
        assert_eq!((c.label(s), c.label(t)), (&w("12321"), &w("32123")));
        assert!(c.is_oriented(&[0, 1, 2]));
    }

    #[test]
    fn line_and_distant_cycles() {
        let g = RexGraph::of_word(&w("21321"), 4).unwrap();
        let line = ["21321", "23121", "23212", "32312", "32132"];
        for pair in line.windows(2) {
            assert!(g.edge_between(g.index_of(&w(pair[0])).unwrap(), g.index_of(&w(pair[1])).unwrap()).is_some());
        }
        assert_eq!(g.edges().len(), 4);

        // octagon: six distant edges and two parallel adjacent ones
        let g = RexGraph::of_word(&w("1214"), 5).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edges().len(), 8);
        assert_eq!(g.edges().iter().filter(|e| e.kind == EdgeKind::Distant).count(), 6);
        assert!((0..8).all(|v| g.neighbors(v).len() == 2));
        let c = ConflatedGraph::new(g);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edges().len(), 1);
        let e = c.edges()[0];
        assert_eq!((c.rex().label(e.rex_tail), c.rex().label(e.rex_head)), (&w("1214"), &w("2124")));

        let g = RexGraph::of_word(&w("246"), 7).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edges().len(), 6);
        assert!(g.edges().iter().all(|e| e.kind == EdgeKind::Distant));
        assert!((0..6).all(|v| g.neighbors(v).len() == 2));
        let c = ConflatedGraph::new(g);
        assert_eq!(c.vertex_count(), 1);
        assert!(c.edges().is_empty());
        assert_eq!(conflated("121").clouds().len(), 2);
    }

    #[test]
    fn zamolodchikov_cycle() {
        let c = w0(4);
        assert_eq!(c.rex().vertex_count(), 16);
        assert_eq!(c.vertex_count(), 8);
        assert_eq!(c.edges().len(), 8);
        assert!(c.is_acyclic());
        let (s, t) = c.source_sink().unwrap();
        assert_eq!(c.label(s), &w("121321"));
        assert!(c.clouds()[t].contains(&w("323123")));
        assert_eq!(c.representative(t), &w("321323"));
        assert!((0..8).all(|v| c.neighbors(v).len() == 2));
        // two clouds are squares of commuting distant moves
        let dist = c.rex().edges().iter().filter(|e| e.kind == EdgeKind::Distant).count();
        assert_eq!(dist, 10);
    }

    #[test]
    fn non_unique_source() {
        assert!(conflated("1214").source_sink().is_ok());
        let c = conflated("13");
        assert_eq!(c.vertex_count(), 1);
    }

    #[test]
    fn lifting_examples() {
        let c = conflated("12321");
        let start = c.rex().index_of(&w("13213"));
        let words = |p: Vec<usize>| c.rex().words(&p);
        let (s, t) = c.source_sink().unwrap();
        let mid = c.resolve("c").unwrap();
        let lift = c.lift_path(&[mid, t], start, None).unwrap();
        assert_eq!(words(lift), [w("13213"), w("31213"), w("32123")]);
        let lift = c.lift_path(&[mid, s], start, None).unwrap();
        assert_eq!(words(lift), [w("13213"), w("13231"), w("12321")]);
        let lift = c.lift_path(&[s, mid], None, None).unwrap();
        assert_eq!(words(lift), [w("12321"), w("13231"), w("13213")]);
        assert!(c.lift_path(&[s, t], None, None).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let c = conflated("12321");
        let (s, t) = c.source_sink().unwrap();
        let m = c.resolve("c").unwrap();
        let all: Vec<_> = enumerate_complete_paths(&c, m, m, 5).collect();
        assert!(all.contains(&vec![m, s, m, t, m]));
        assert!(all.contains(&vec![m, t, m, s, m]));
        assert_eq!(enumerate_complete_paths(&c, s, t, 4).collect::<Vec<_>>(), [vec![s, m, t]]);
        let c = conflated("121");
        assert_eq!(enumerate_complete_paths(&c, 0, 1, 2).collect::<Vec<_>>(), [vec![0, 1]]);
        assert_eq!(enumerate_complete_paths(&c, 0, 0, 2).count(), 0);
    }

    /// All walks of at most `max_len` vertices, filtered afterwards.
    fn brute_force<G: PathGraph>(g: &G, a: usize, z: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut frontier = vec![vec![a]];
        while let Some(p) = frontier.pop() {
            if *p.last().unwrap() == z && g.is_complete(&p) {
                out.push(p.clone());
            }
            if p.len() < max_len {
                for &u in g.neighbors(*p.last().unwrap()) {
                    let mut q = p.clone();
                    q.push(u);
                    frontier.push(q);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (g, max_len) in [(conflated("12321"), 8), (conflated("23121"), 8), (w0(4), 11), (w0(3), 7)] {
            let n = g.vertex_count();
            for a in 0..n {
                for z in 0..n {
                    let got: Vec<_> = enumerate_complete_paths(&g, a, z, max_len).collect();
                    let mut sorted = got.clone();
                    sorted.sort();
                    assert_eq!(got, sorted, "order");
                    assert_eq!(got, brute_force(&g, a, z, max_len));
                }
            }
        }
    }

    #[test]
    fn simplify_examples() {
        let c = conflated("23121");
        let (s, t) = c.source_sink().unwrap();
        let m = c.resolve("c").unwrap();
        assert_eq!(c.simplify_path(&[s, m, t]).unwrap(), [s, m, t]);
        assert_eq!(c.simplify_path(&[m, s, m, t, m, s, m]).unwrap(), [m, s, m, t, m]);
        assert_eq!(c.simplify_path(&[m, s, m]), Err(Error::NotComplete));
        assert_eq!(conflated("12321").simplify_path(&[0, 1, 2]), Err(Error::UnsupportedElement(w("12321"))));

        let c = w0(4);
        let (s, t) = c.source_sink().unwrap();
        let side = c.straight_path(s, t).unwrap();
        let mut other = vec![s];
        while *other.last().unwrap() != t {
            let v = *other.last().unwrap();
            let next = *c.successors(v).iter().find(|u| !side[1..side.len() - 1].contains(u)).unwrap();
            other.push(next);
        }
        // down one side, back up the other, down again
        let mut p = side.clone();
        p.extend(other.iter().rev().skip(1));
        assert!(c.is_complete(&p));
        let up = c.straight_path(t, s).unwrap();
        assert_eq!(c.simplify_path(&p).unwrap(), [side.clone(), up[1..].to_vec()].concat());
        p.extend_from_slice(&side[1..]);
        assert_eq!(c.simplify_path(&p).unwrap(), side);
        assert_eq!(c.simplify_path(&[s]), Err(Error::NotComplete));
    }

    #[test]
    fn to_dot_counts() {
        let g = RexGraph::of_word(&w("12321"), 4).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("dashed").count(), 4);
        assert_eq!(dot.matches("->").count(), 6);
        let g = RexGraph::of_word(&longest_element(4).unwrap(), 4).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("dashed").count(), 10);
        assert_eq!(dot.matches("->").count(), 18);
        let g = RexGraph::of_word(&w("1"), 2).unwrap();
        assert_eq!(g.to_dot().matches("->").count(), 0);
    }

    #[test]
    fn w0_vertices_lie_on_oriented_paths() {
        for n in 2..=5 {
            let c = w0(n);
            assert!(c.is_acyclic());
            let (s, t) = c.source_sink().unwrap();
            for v in 0..c.vertex_count() {
                assert!(c.straight_path(s, v).is_some() && c.straight_path(v, t).is_some(), "n={n}");
            }
        }
    }

    fn arb_element() -> impl Strategy<Value = Word> {
        (3u8..=5).prop_flat_map(|n| {
            Just(Permutation::all(n)).prop_flat_map(|perms| (0..perms.len()).prop_map(move |i| perms[i].reduced_word()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn graph_invariants(word in arb_element()) {
            let g = RexGraph::of_word(&word, word.min_rank().max(3)).unwrap();
            for e in g.edges() {
                let (a, b) = (&g.vertices()[e.from], &g.vertices()[e.to]);
                match e.kind {
                    EdgeKind::Distant => prop_assert_eq!(a.n_statistic(), b.n_statistic()),
                    EdgeKind::Adjacent => prop_assert_eq!(a.n_statistic() + 1, b.n_statistic()),
                }
            }
            let c = ConflatedGraph::new(g);
            prop_assert!(c.is_acyclic());
            let n = c.vertex_count();
            for a in 0..n {
                for b in c.neighbors(a).iter().copied() {
                    let lift = c.lift_path(&[a, b], None, None).unwrap();
                    prop_assert!(c.rex().is_path(&lift));
                    prop_assert_eq!(c.project(&lift), vec![a, b]);
                }
            }
        }
    }
}
