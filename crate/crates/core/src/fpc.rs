//! Checks of path-morphism equalities on conflated expression graphs:
//! bounded forking-path searches, the source/sink identities, the known
//! equivalences and counterexamples.
//!
//! A conflated path acts through its lift between cloud representatives, so
//! every conflated edge contributes one cached matrix.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::braidmor::{BraidEngine, MorphismMatrix};
use crate::bsbimod::{BsElement, Mask};
use crate::poly::Polynomial;
use crate::rexgraph::{ConflatedGraph, PathGraph};
use crate::symgroup::{longest_element, move_between, Word};
use crate::{Error, Result};

/// Default cap on the number of search states visited by one check.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Conflated graph together with its braid engine and cached edge matrices.
pub struct PathMorphisms {
    graph: ConflatedGraph,
    engine: BraidEngine,
    edges: RefCell<BTreeMap<(usize, usize), Rc<MorphismMatrix>>>,
}

impl PathMorphisms {
    pub fn new(graph: ConflatedGraph) -> Result<Self> {
        let engine = BraidEngine::new(graph.rex().rank())?;
        Ok(PathMorphisms { graph, engine, edges: RefCell::new(BTreeMap::new()) })
    }

    pub fn of_word(w: &Word, rank: u8) -> Result<Self> {
        Self::new(ConflatedGraph::of_word(w, rank)?)
    }

    pub fn graph(&self) -> &ConflatedGraph {
        &self.graph
    }

    pub fn engine(&self) -> &BraidEngine {
        &self.engine
    }

    /// Resolves each token with [`ConflatedGraph::resolve`].
    pub fn resolve_path(&self, tokens: &[&str]) -> Result<Vec<usize>> {
        tokens.iter().map(|t| self.graph.resolve(t)).collect()
    }

    pub fn labels(&self, path: &[usize]) -> Vec<Word> {
        path.iter().map(|&v| self.graph.label(v).clone()).collect()
    }

    /// Morphism of the conflated edge `a - b`, from representative to
    /// representative.
    pub fn edge(&self, a: usize, b: usize) -> Result<Rc<MorphismMatrix>> {
        if let Some(m) = self.edges.borrow().get(&(a, b)) {
            return Ok(m.clone());
        }
        let lift = self.graph.lift_path(&[a, b], None, None)?;
        let m = Rc::new(self.engine.path_morphism(&self.graph.rex().words(&lift))?);
        self.edges.borrow_mut().insert((a, b), m.clone());
        Ok(m)
    }

    pub fn path_matrix(&self, path: &[usize]) -> Result<MorphismMatrix> {
        if !self.graph.is_path(path) {
            return Err(Error::InvalidPath(format!("{path:?}"), "not a path of the conflated graph".to_string()));
        }
        let mut acc = MorphismMatrix::identity(self.graph.label(path[0]).clone(), self.engine.rank());
        for step in path.windows(2) {
            acc = acc.then(&*self.edge(step[0], step[1])?)?;
        }
        Ok(acc)
    }

    /// Pushes `e` along the lift of `path` starting at the word of `e` and
    /// ending at the representative of the last cloud.
    pub fn apply_path(&self, path: &[usize], e: &BsElement) -> Result<BsElement> {
        let start =
            self.graph.rex().index_of(e.word()).ok_or_else(|| {
                Error::InvalidPath(e.word().to_string(), "word is not a vertex of the graph".to_string())
            })?;
        let lift = self.graph.lift_path(path, Some(start), None)?;
        apply_rex_path(&self.engine, &self.graph.rex().words(&lift), e)
    }
}

/// Pushes `e` along consecutive words one edge at a time.
pub fn apply_rex_path(engine: &BraidEngine, words: &[Word], e: &BsElement) -> Result<BsElement> {
    if words.first() != Some(e.word()) {
        return Err(Error::ShapeMismatch(e.word().clone(), words.first().cloned().unwrap_or_else(Word::empty)));
    }
    let mut cur = e.clone();
    for pair in words.windows(2) {
        let mv = move_between(&pair[0], &pair[1]).ok_or_else(|| {
            Error::InvalidPath(format!("{}->{}", pair[0], pair[1]), "not related by one braid move".to_string())
        })?;
        cur = engine.apply_edge(&cur, mv)?;
    }
    Ok(cur)
}

/// An input on which two morphisms differ, with a differing matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub input: BsElement,
    pub first_image: BsElement,
    pub second_image: BsElement,
    pub row: Mask,
    pub col: Mask,
}

impl Witness {
    /// First differing column (in mask order) of two matrices of the same
    /// shape, as an evaluation at that basis element.
    pub fn from_matrices(f: &MorphismMatrix, g: &MorphismMatrix) -> Result<Option<Witness>> {
        if f.domain() != g.domain() || f.codomain() != g.codomain() {
            return Err(Error::ShapeMismatch(f.domain().clone(), g.domain().clone()));
        }
        for col in Mask::all(f.domain().len()) {
            if f.column(col) == g.column(col) {
                continue;
            }
            let input = BsElement::basis(f.domain().clone(), f.rank(), col)?;
            return Ok(Some(Self::from_images(input, f.apply_basis_col(col), g.apply_basis_col(col), col)));
        }
        Ok(None)
    }

    fn from_images(input: BsElement, first_image: BsElement, second_image: BsElement, col: Mask) -> Witness {
        let diff = first_image.checked_sub(&second_image).expect("same codomain");
        let row = *diff.coeffs().keys().next().expect("images differ");
        Witness { input, first_image, second_image, row, col }
    }
}

trait ColumnImage {
    fn apply_basis_col(&self, col: Mask) -> BsElement;
}

impl ColumnImage for MorphismMatrix {
    fn apply_basis_col(&self, col: Mask) -> BsElement {
        let coeffs = self.column(col).iter().map(|(m, p)| (*m, p.clone()));
        BsElement::from_coeffs(self.codomain().clone(), self.rank(), coeffs).expect("column of a valid matrix")
    }
}

/// Two paths with the same endpoints whose morphisms differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub first: Vec<Word>,
    pub second: Vec<Word>,
    pub witness: Witness,
}

impl Counterexample {
    /// Recomputes both paths from their labels and checks that they send
    /// the witness input to the recorded images.
    pub fn replay(&self, pm: &PathMorphisms) -> Result<bool> {
        let resolve = |labels: &[Word]| -> Result<Vec<usize>> {
            labels
                .iter()
                .map(|w| {
                    pm.graph().cloud_of_word(w).ok_or_else(|| Error::InvalidPath(w.to_string(), "unknown".to_string()))
                })
                .collect()
        };
        let f = pm.path_matrix(&resolve(&self.first)?)?;
        let g = pm.path_matrix(&resolve(&self.second)?)?;
        Ok(f.apply(&self.witness.input)? == self.witness.first_image
            && g.apply(&self.witness.input)? == self.witness.second_image
            && self.witness.first_image != self.witness.second_image)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FpcResult {
    Holds,
    CounterexampleFound(Box<Counterexample>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search states `(start, vertex, visited, morphism)` expanded.
    pub states: usize,
    /// Distinct path morphisms met during the search.
    pub morphisms: usize,
    /// Paths counted with multiplicity that met the completeness condition.
    pub paths: u64,
    /// Endpoint pairs `(start, end)` with at least one such path.
    pub groups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpcVerdict {
    pub element: Word,
    pub bound: usize,
    pub result: FpcResult,
    pub stats: SearchStats,
}

impl FpcVerdict {
    pub fn holds(&self) -> bool {
        self.result == FpcResult::Holds
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.result {
            FpcResult::Holds => None,
            FpcResult::CounterexampleFound(c) => Some(c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpcOptions {
    /// Maximum number of vertices in a path.
    pub max_len: usize,
    /// Restrict to paths from the first to the second vertex.
    pub endpoints: Option<(usize, usize)>,
    pub budget: usize,
}

impl FpcOptions {
    pub fn new(max_len: usize) -> Self {
        FpcOptions { max_len, endpoints: None, budget: DEFAULT_BUDGET }
    }
}

/// Bounded forking-path check: every pair of complete paths with at most
/// `max_len` vertices and equal endpoints must induce the same morphism.
pub fn check_fpc(w: &Word, rank: u8, opts: &FpcOptions) -> Result<FpcVerdict> {
    check_fpc_on(&PathMorphisms::of_word(w, rank)?, opts)
}

pub fn check_fpc_on(pm: &PathMorphisms, opts: &FpcOptions) -> Result<FpcVerdict> {
    let n = pm.graph().vertex_count();
    if n > 64 {
        return Err(Error::BudgetExceeded(opts.budget));
    }
    let bits: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    let goal = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search(pm, &bits, goal, opts)
}

/// Bounded check of the strengthened conjecture for the longest element:
/// paths through both source and sink with equal endpoints agree.
pub fn check_refined_conjecture(rank: u8, max_len: usize, budget: usize) -> Result<FpcVerdict> {
    let pm = PathMorphisms::of_word(&longest_element(rank)?, rank)?;
    let (s, t) = pm.graph().source_sink()?;
    let mut bits = vec![0u64; pm.graph().vertex_count()];
    bits[s] |= 1;
    bits[t] |= 2;
    search(&pm, &bits, 3, &FpcOptions { max_len, endpoints: None, budget })
}

type StateKey = (usize, usize, u64, usize);

struct Interner {
    matrices: Vec<MorphismMatrix>,
    ids: BTreeMap<MorphismMatrix, usize>,
    steps: BTreeMap<(usize, usize), usize>,
}

impl Interner {
    fn intern(&mut self, m: MorphismMatrix) -> usize {
        if let Some(&id) = self.ids.get(&m) {
            return id;
        }
        let id = self.matrices.len();
        self.ids.insert(m.clone(), id);
        self.matrices.push(m);
        id
    }

    fn step(&mut self, pm: &PathMorphisms, id: usize, from: usize, to: usize) -> Result<usize> {
        if let Some(&next) = self.steps.get(&(id, to)) {
            return Ok(next);
        }
        let m = self.matrices[id].then(&*pm.edge(from, to)?)?;
        let next = self.intern(m);
        self.steps.insert((id, to), next);
        Ok(next)
    }
}

/// Breadth-first search over `(start, vertex, tracked visits, morphism)`.
/// Paths are merged once they agree on all four, so the state space stays
/// small as long as few distinct morphisms occur.
fn search(pm: &PathMorphisms, bits: &[u64], goal: u64, opts: &FpcOptions) -> Result<FpcVerdict> {
    let g = pm.graph();
    let n = g.vertex_count();
    let element = g.label(0).clone();
    let dist_to_end = opts.endpoints.map(|(_, z)| distances(g, z));
    let mut interner = Interner { matrices: Vec::new(), ids: BTreeMap::new(), steps: BTreeMap::new() };
    // arena of (vertex, parent) for path reconstruction
    let mut arena: Vec<(usize, usize)> = Vec::new();
    let mut layer: BTreeMap<StateKey, (u64, usize)> = BTreeMap::new();
    let starts: Vec<usize> = match opts.endpoints {
        Some((a, _)) => vec![a],
        None => (0..n).collect(),
    };
    for a in starts {
        let id = interner.intern(pm.path_matrix(&[a])?);
        arena.push((a, usize::MAX));
        layer.insert((a, a, bits[a], id), (1, arena.len() - 1));
    }
    let mut stats = SearchStats::default();
    let mut groups: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut len = 1;
    while !layer.is_empty() {
        stats.states += layer.len();
        if stats.states > opts.budget {
            return Err(Error::BudgetExceeded(opts.budget));
        }
        for (&(a, v, visited, id), &(count, node)) in &layer {
            let ends_ok = opts.endpoints.is_none_or(|(_, z)| z == v);
            if visited != goal || !ends_ok {
                continue;
            }
            stats.paths = stats.paths.saturating_add(count);
            match groups.get(&(a, v)) {
                None => {
                    groups.insert((a, v), (id, node));
                }
                Some(&(first_id, first_node)) if first_id != id => {
                    let f = &interner.matrices[first_id];
                    let h = &interner.matrices[id];
                    let witness = Witness::from_matrices(f, h)?.expect("distinct matrices differ");
                    let cx = Counterexample {
                        first: pm.labels(&unwind(&arena, first_node)),
                        second: pm.labels(&unwind(&arena, node)),
                        witness,
                    };
                    stats.morphisms = interner.matrices.len();
                    stats.groups = groups.len();
                    return Ok(FpcVerdict {
                        element,
                        bound: opts.max_len,
                        result: FpcResult::CounterexampleFound(Box::new(cx)),
                        stats,
                    });
                }
                Some(_) => {}
            }
        }
        if len == opts.max_len {
            break;
        }
        let remaining = opts.max_len - len - 1;
        let mut next: BTreeMap<StateKey, (u64, usize)> = BTreeMap::new();
        for (&(a, v, visited, id), &(count, node)) in &layer {
            for &u in g.neighbors(v) {
                let seen = visited | bits[u];
                if ((goal & !seen).count_ones() as usize) > remaining {
                    continue;
                }
                if dist_to_end.as_ref().is_some_and(|d| d[u] > remaining) {
                    continue;
                }
                let nid = interner.step(pm, id, v, u)?;
                next.entry((a, u, seen, nid)).and_modify(|e| e.0 = e.0.saturating_add(count)).or_insert_with(|| {
                    arena.push((u, node));
                    (count, arena.len() - 1)
                });
            }
        }
        layer = next;
        len += 1;
    }
    stats.morphisms = interner.matrices.len();
    stats.groups = groups.len();
    Ok(FpcVerdict { element, bound: opts.max_len, result: FpcResult::Holds, stats })
}

fn unwind(arena: &[(usize, usize)], mut node: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while node != usize::MAX {
        out.push(arena[node].0);
        node = arena[node].1;
    }
    out.reverse();
    out
}

fn distances(g: &ConflatedGraph, z: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[z] = 0;
    let mut queue = alloc::collections::VecDeque::from([z]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

fn concat(legs: &[Vec<usize>]) -> Vec<usize> {
    let mut out = legs[0].clone();
    for leg in &legs[1..] {
        out.extend_from_slice(&leg[1..]);
    }
    out
}

fn straight(g: &ConflatedGraph, a: usize, b: usize) -> Result<Vec<usize>> {
    g.straight_path(a, b)
        .ok_or_else(|| Error::InvalidPath(format!("{} -> {}", g.label(a), g.label(b)), "no straight path".to_string()))
}

/// `Z`, along an oriented path from source to sink, and `Z̄`, along a
/// reverse-oriented path from sink to source.
pub fn zam_morphisms(pm: &PathMorphisms) -> Result<(MorphismMatrix, MorphismMatrix)> {
    let g = pm.graph();
    let (s, t) = g.source_sink()?;
    Ok((pm.path_matrix(&straight(g, s, t)?)?, pm.path_matrix(&straight(g, t, s)?)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZamReport {
    pub rank: u8,
    pub source: Word,
    pub sink: Word,
    /// Number of oriented source-to-sink paths compared.
    pub oriented_paths: usize,
    /// All oriented source-to-sink paths give the same morphism.
    pub oriented_paths_agree: bool,
    pub z_zbar_z: bool,
    pub zbar_z_zbar: bool,
    pub idempotent: bool,
    pub zbar_z_is_identity: bool,
}

impl ZamReport {
    pub fn all_hold(&self) -> bool {
        self.oriented_paths_agree && self.z_zbar_z && self.zbar_z_zbar && self.idempotent
    }
}

fn oriented_paths(g: &ConflatedGraph, from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![from]];
    while let Some(p) = stack.pop() {
        let v = *p.last().expect("nonempty");
        if v == to {
            out.push(p);
            continue;
        }
        for &u in g.successors(v).iter().rev() {
            let mut q = p.clone();
            q.push(u);
            stack.push(q);
        }
    }
    out
}

/// The source/sink identities on the graph of the longest element of
/// `S_rank`.
pub fn check_zam_identities(rank: u8) -> Result<ZamReport> {
    let pm = PathMorphisms::of_word(&longest_element(rank)?, rank)?;
    let g = pm.graph();
    let (s, t) = g.source_sink()?;
    let (z, zbar) = zam_morphisms(&pm)?;
    let paths = oriented_paths(g, s, t);
    let mut agree = true;
    for p in &paths {
        agree &= pm.path_matrix(p)? == z;
    }
    let zbar_z = z.then(&zbar)?;
    Ok(ZamReport {
        rank,
        source: g.label(s).clone(),
        sink: g.label(t).clone(),
        oriented_paths: paths.len(),
        oriented_paths_agree: agree,
        z_zbar_z: zbar_z.then(&z)? == z,
        zbar_z_zbar: zbar.then(&z)?.then(&zbar)? == zbar,
        idempotent: zbar_z.then(&zbar_z)? == zbar_z,
        zbar_z_is_identity: zbar_z.is_identity(),
    })
}

/// From `x` down to the sink, up to the source, down to `y`.
pub fn dud_path(g: &ConflatedGraph, x: usize, y: usize) -> Result<Vec<usize>> {
    let (s, t) = g.source_sink()?;
    Ok(concat(&[straight(g, x, t)?, straight(g, t, s)?, straight(g, s, y)?]))
}

/// From `x` up to the source, down to the sink, up to `y`.
pub fn udu_path(g: &ConflatedGraph, x: usize, y: usize) -> Result<Vec<usize>> {
    let (s, t) = g.source_sink()?;
    Ok(concat(&[straight(g, x, s)?, straight(g, s, t)?, straight(g, t, y)?]))
}

pub fn check_dud_udu(pm: &PathMorphisms, x: usize, y: usize) -> Result<bool> {
    let g = pm.graph();
    Ok(pm.path_matrix(&dud_path(g, x, y)?)? == pm.path_matrix(&udu_path(g, x, y)?)?)
}

/// `DUD = UDU` for every ordered pair of vertices, as `(x, y, equal)`.
/// The legs are computed once per vertex.
pub fn check_all_dud_udu(pm: &PathMorphisms) -> Result<Vec<(Word, Word, bool)>> {
    let g = pm.graph();
    let (s, t) = g.source_sink()?;
    let (z, zbar) = zam_morphisms(pm)?;
    let n = g.vertex_count();
    let leg = |a: usize, b: usize| -> Result<MorphismMatrix> { pm.path_matrix(&straight(g, a, b)?) };
    let mut to_t = Vec::new();
    let mut from_s = Vec::new();
    let mut to_s = Vec::new();
    let mut from_t = Vec::new();
    for v in 0..n {
        to_t.push(leg(v, t)?.then(&zbar)?);
        from_s.push(leg(s, v)?);
        to_s.push(leg(v, s)?.then(&z)?);
        from_t.push(leg(t, v)?);
    }
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let dud = to_t[x].then(&from_s[y])?;
            let udu = to_s[x].then(&from_t[y])?;
            out.push((g.label(x).clone(), g.label(y).clone(), dud == udu));
        }
    }
    Ok(out)
}

/// One claimed equivalence of paths and whether the morphisms agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub element: Word,
    pub left: Vec<Word>,
    pub right: Vec<Word>,
    pub equal: bool,
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &[Word]| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let rel = if self.equal { "==" } else { "!=" };
        write!(f, "{}: [{}] {} [{}]", self.element, show(&self.left), rel, show(&self.right))
    }
}

pub fn compare_paths(pm: &PathMorphisms, left: &[&str], right: &[&str]) -> Result<Equivalence> {
    let (p, q) = (pm.resolve_path(left)?, pm.resolve_path(right)?);
    Ok(Equivalence {
        element: pm.graph().label(0).clone(),
        left: pm.labels(&p),
        right: pm.labels(&q),
        equal: pm.path_matrix(&p)? == pm.path_matrix(&q)?,
    })
}

/// Pairs of paths on the longest element of `S_4`, named by the vertices
/// of the two halves of its cycle.
const W04_PAIRS: &[(&[&str], &[&str])] = &[
    (&["A", "B", "A", "B"], &["A", "B"]),
    (&["B", "A", "B", "A"], &["B", "A"]),
    (&["B", "C"], &["B", "C", "B", "C"]),
    (&["A", "B", "C", "B", "A", "B", "C"], &["A", "B", "C"]),
];

/// Pairs on the three-vertex lines `s - c - t`.
const LINE_PAIRS: &[(&[&str], &[&str])] = &[
    (&["s", "c", "t", "c"], &["s", "c", "t", "c", "s", "c"]),
    (&["t", "c", "s", "c"], &["t", "c", "s", "c", "t", "c"]),
    (&["c", "s", "c", "t", "c"], &["c", "t", "c", "s", "c"]),
    (&["c", "s", "c", "t", "c", "s", "c"], &["c", "s", "c", "t", "c"]),
    (&["c", "t", "c", "s", "c", "t", "c"], &["c", "t", "c", "s", "c"]),
];

/// Every equivalence used in the proofs for `S_4`: the cycle lemmas on both
/// halves of the longest element, and the line identities for `23121` and
/// its mirror `12312`.
pub fn check_equivalence_lemmas() -> Result<Vec<Equivalence>> {
    let mut out = Vec::new();
    let w0 = PathMorphisms::of_word(&longest_element(4)?, 4)?;
    for half in [["212321", "213213", "232123"], ["123212", "132132", "321232"]] {
        let sub = |p: &[&'static str]| -> Vec<&'static str> {
            p.iter()
                .map(|&t| match t {
                    "A" => half[0],
                    "B" => half[1],
                    "C" => half[2],
                    other => other,
                })
                .collect()
        };
        for (l, r) in W04_PAIRS {
            out.push(compare_paths(&w0, &sub(l), &sub(r))?);
        }
    }
    for element in ["23121", "12312"] {
        let pm = PathMorphisms::of_word(&element.parse().expect("literal"), 4)?;
        for (l, r) in LINE_PAIRS {
            out.push(compare_paths(&pm, l, r)?);
        }
    }
    Ok(out)
}

/// Shape of a conflated graph as drawn in the table of `S_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphShape {
    Point,
    Edge,
    Line,
    Zamolodchikov,
    Other { vertices: usize, edges: usize },
}

impl fmt::Display for GraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphShape::Point => f.write_str("•"),
            GraphShape::Edge => f.write_str("•→•"),
            GraphShape::Line => f.write_str("•→•→•"),
            GraphShape::Zamolodchikov => f.write_str("Zam"),
            GraphShape::Other { vertices, edges } => write!(f, "graph({vertices},{edges})"),
        }
    }
}

pub fn classify(g: &ConflatedGraph) -> GraphShape {
    let n = g.vertex_count();
    let e = g.edges().len();
    let oriented_line =
        || g.source_sink().map(|(s, t)| oriented_paths(g, s, t).iter().any(|p| p.len() == n)).unwrap_or(false);
    let is_cycle = (0..n).all(|v| g.neighbors(v).len() == 2);
    match (n, e) {
        (1, 0) => GraphShape::Point,
        (2, 1) => GraphShape::Edge,
        (3, 2) if oriented_line() => GraphShape::Line,
        (8, 8) if is_cycle && g.source_sink().is_ok() => GraphShape::Zamolodchikov,
        _ => GraphShape::Other { vertices: n, edges: e },
    }
}

/// One reduced word per element of `S_rank`: a suffix `k(k+1)…(n-1)` of the
/// top letter times a word of `S_{rank-1}`, listed row by row.
pub fn table_words(rank: u8) -> Vec<Word> {
    if rank <= 1 {
        return vec![Word::empty()];
    }
    let inner = table_words(rank - 1);
    let top = rank - 1;
    let mut out = Vec::new();
    for k in (1..=top + 1).rev() {
        let prefix: Vec<u8> = (k..=top).collect();
        for w in &inner {
            let mut letters = prefix.clone();
            letters.extend_from_slice(w.letters());
            out.push(Word::new(letters));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub element: Word,
    pub shape: GraphShape,
    pub vertices: usize,
    pub verdict: FpcVerdict,
}

/// Path-length bound for an element whose conflated graph has `n` vertices.
pub fn sweep_bound(n: usize) -> usize {
    9.max(2 * n + 4)
}

/// Classifies and checks every element of `S_4`. Without `max_len` each
/// element uses [`sweep_bound`].
pub fn check_s4_sweep(max_len: Option<usize>, budget: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for w in table_words(4) {
        let pm = PathMorphisms::of_word(&w, 4)?;
        let n = pm.graph().vertex_count();
        let opts = FpcOptions { max_len: max_len.unwrap_or_else(|| sweep_bound(n)), endpoints: None, budget };
        let mut verdict = check_fpc_on(&pm, &opts)?;
        verdict.element = w.clone();
        rows.push(SweepRow { element: w, shape: classify(pm.graph()), vertices: n, verdict });
    }
    Ok(rows)
}

/// `12…(n-1)…21` in `S_rank`.
pub fn family_element(rank: u8) -> Word {
    let mut letters: Vec<u8> = (1..rank).collect();
    letters.extend((1..rank - 1).rev());
    Word::new(letters)
}

/// Vertices of a line graph from one end to the other, starting at the end
/// that is the source when it is one.
pub fn line_order(g: &ConflatedGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if g.edges().len() + 1 != n || (0..n).any(|v| g.neighbors(v).len() > 2) {
        return None;
    }
    let ends: Vec<usize> = (0..n).filter(|&v| g.neighbors(v).len() <= 1).collect();
    let first = match g.source_sink() {
        Ok((s, _)) if ends.contains(&s) => s,
        _ => *ends.first()?,
    };
    let mut out = vec![first];
    while out.len() < n {
        let v = *out.last().expect("nonempty");
        let next = *g.neighbors(v).iter().find(|u| out.len() < 2 || **u != out[out.len() - 2])?;
        out.push(next);
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub rank: u8,
    pub element: Word,
    /// `E_1, …, E_m` in order along the line.
    pub line: Vec<Word>,
    pub p: Vec<Word>,
    pub q: Vec<Word>,
    /// First basis element on which `f(p)` and `f(q)` differ.
    pub witness: Option<Witness>,
}

impl FamilyReport {
    pub fn differ(&self) -> bool {
        self.witness.is_some()
    }
}

/// The two paths on a line `E_1 … E_m`: out to `E_1` and back before
/// sweeping to `E_m`, or the sweep first.
pub fn family_paths(line: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = line.len();
    let mut p = vec![line[1], line[0]];
    p.extend_from_slice(&line[1..]);
    p.extend(line[1..m - 1].iter().rev());
    let mut q: Vec<usize> = line[1..].to_vec();
    q.extend(line[..m - 1].iter().rev());
    q.push(line[1]);
    (p, q)
}

/// First basis element, in mask order, on which two paths with the same
/// endpoints differ. Evaluates element by element, so it stays cheap when
/// a difference shows up early.
pub fn first_difference(pm: &PathMorphisms, p: &[usize], q: &[usize]) -> Result<Option<Witness>> {
    let g = pm.graph();
    if p.first() != q.first() || p.last() != q.last() {
        return Err(Error::InvalidPath(g.format_path(q), "endpoints differ".to_string()));
    }
    let start = g.label(p[0]).clone();
    let rank = pm.engine().rank();
    for col in Mask::all(start.len()) {
        let input = BsElement::basis(start.clone(), rank, col)?;
        let a = pm.apply_path(p, &input)?;
        let b = pm.apply_path(q, &input)?;
        if a != b {
            return Ok(Some(Witness::from_images(input, a, b, col)));
        }
    }
    Ok(None)
}

/// Compares the two family paths on the line graph of `12…(n-1)…21`.
pub fn check_family(rank: u8) -> Result<FamilyReport> {
    let element = family_element(rank);
    let pm = PathMorphisms::of_word(&element, rank)?;
    let g = pm.graph();
    let line = line_order(g).ok_or_else(|| Error::UnsupportedElement(element.clone()))?;
    if line.len() < 3 {
        return Err(Error::UnsupportedElement(element));
    }
    let (p, q) = family_paths(&line);
    let witness = first_difference(&pm, &p, &q)?;
    Ok(FamilyReport { rank, element, line: pm.labels(&line), p: pm.labels(&p), q: pm.labels(&q), witness })
}

/// Images of `input` under two conflated paths given as vertex tokens.
pub fn evaluate_pair(
    pm: &PathMorphisms,
    left: &[&str],
    right: &[&str],
    input: &BsElement,
) -> Result<(BsElement, BsElement)> {
    let (p, q) = (pm.resolve_path(left)?, pm.resolve_path(right)?);
    Ok((pm.apply_path(&p, input)?, pm.apply_path(&q, input)?))
}

/// Evaluation of the two printed loops on `12321` and the dot argument that
/// tells the images apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub v1: Vec<Word>,
    pub v2: Vec<Word>,
    pub input: BsElement,
    /// Images with edges applied in traversal order.
    pub image_v1: BsElement,
    pub image_v2: BsElement,
    /// Images with each path read backwards.
    pub reversed_image_v1: BsElement,
    pub reversed_image_v2: BsElement,
    /// The values printed alongside the paths, in the order printed.
    pub printed_v1: BsElement,
    pub printed_v2: BsElement,
    pub matrices_equal: bool,
    /// Images after capping the two outer `B_1` factors.
    pub capped_v1: BsElement,
    pub capped_v2: BsElement,
}

impl CounterexampleReport {
    pub fn matches_printed(&self) -> bool {
        self.image_v1 == self.printed_v1 && self.image_v2 == self.printed_v2
    }

    pub fn matches_printed_swapped(&self) -> bool {
        self.image_v1 == self.printed_v2 && self.image_v2 == self.printed_v1
    }

    pub fn caps_differ(&self) -> bool {
        self.capped_v1 != self.capped_v2
    }
}

pub const V1: [&str; 9] = ["13231", "31231", "31213", "32123", "31213", "13213", "13231", "12321", "13231"];
pub const V2: [&str; 9] = ["13231", "12321", "13231", "31231", "31213", "32123", "31213", "13213", "13231"];

pub fn reproduce_counterexample() -> Result<CounterexampleReport> {
    const RANK: u8 = 4;
    let engine = BraidEngine::new(RANK)?;
    let words = |p: &[&str]| -> Vec<Word> { p.iter().map(|s| s.parse().expect("literal")).collect() };
    let (v1, v2) = (words(&V1), words(&V2));
    let x = |i: u8| Polynomial::var(RANK, i);
    let one = || Polynomial::one(RANK);
    let base = v1[0].clone();
    let input = BsElement::from_tensor(base.clone(), RANK, &[one(), one(), one(), x(3), one(), one()])?;
    let printed_v2 = BsElement::from_tensor(base.clone(), RANK, &[one(), x(2), one(), one(), one(), one()])?;
    let f1 = engine.path_morphism(&v1)?;
    let f2 = engine.path_morphism(&v2)?;
    let image_v1 = f1.apply(&input)?;
    let image_v2 = f2.apply(&input)?;
    let reversed = |v: &[Word]| -> Result<BsElement> {
        let r: Vec<Word> = v.iter().rev().cloned().collect();
        engine.path_morphism(&r)?.apply(&input)
    };
    let cap = |e: &BsElement| -> Result<BsElement> { e.dot_cap(e.factor_count() - 1)?.dot_cap(0) };
    Ok(CounterexampleReport {
        reversed_image_v1: reversed(&v1)?,
        reversed_image_v2: reversed(&v2)?,
        matrices_equal: f1 == f2,
        capped_v1: cap(&image_v1)?,
        capped_v2: cap(&image_v2)?,
        printed_v1: input.clone(),
        printed_v2,
        image_v1,
        image_v2,
        input,
        v1,
        v2,
    })
}

/// Renders a path as comma-separated labels.
pub fn format_labels(path: &[Word]) -> String {
    let parts: Vec<String> = path.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}
