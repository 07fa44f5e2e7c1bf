//! Finite simple graphs, cotrees and the derived graphs `ind₊`, `cl` and `κ`.
//!
//! Vertices are 0-based indices internally and printed 1-based. Vertex sets are
//! `u64` bitmasks, which caps any graph whose subsets are enumerated at 63
//! vertices. Adjacency rows are arbitrary-width bitsets so derived graphs such
//! as `κ(G)` can be larger than that.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use thiserror::Error;

/// Largest vertex count for which vertex sets fit in a mask.
pub const MAX_SET_VERTICES: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is not a cograph: induced path {0:?}")]
    NotACograph([usize; 4]),
    #[error("graph has {0} vertices; vertex sets are limited to {MAX_SET_VERTICES}")]
    TooLarge(usize),
}

/// A set of vertices stored as a bitmask (bit `i` is vertex `i + 1`).
///
/// Ordered canonically: by size, then lexicographically on sorted members.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                v
            })
        })
    }

    /// Image under a vertex relabelling.
    pub fn map(self, f: impl Fn(usize) -> usize) -> VertexSet {
        VertexSet::from_indices(self.iter().map(f))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: SmallVec<[u64; 8]>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: smallvec::smallvec![0; n * words],
        }
    }

    /// Builds a graph from 0-based edge endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        assert_ne!(u, v, "self-loops are not allowed");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Neighbourhood of `v` as a mask. Only valid for graphs with at most 63 vertices.
    pub fn nbrs(&self, v: usize) -> VertexSet {
        debug_assert!(self.n <= MAX_SET_VERTICES);
        VertexSet(self.rows[v * self.words])
    }

    pub fn all(&self) -> VertexSet {
        debug_assert!(self.n <= MAX_SET_VERTICES);
        VertexSet((1u64 << self.n) - 1)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| !self.nbrs(v).intersects(s))
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| {
            let others = VertexSet(s.0 & !(1 << v));
            others.0 & !self.nbrs(v).0 == 0
        })
    }

    /// Whether some vertex of `a` is adjacent to some vertex of `b`.
    pub fn adjacent_sets(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().any(|v| self.nbrs(v).intersects(b))
    }

    pub fn induced(&self, s: VertexSet) -> Graph {
        let idx: Vec<usize> = s.iter().collect();
        let mut g = Graph::empty(idx.len());
        for (i, &u) in idx.iter().enumerate() {
            for (j, &v) in idx.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Connected components of the subgraph induced on `s`, each as a mask.
    fn components_within(&self, s: VertexSet, complement: bool) -> Vec<VertexSet> {
        let mut left = s.0;
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let mut nb = self.nbrs(v).0;
                if complement {
                    nb = !nb & !(1 << v);
                }
                let new = nb & s.0 & !comp;
                comp |= new;
                frontier |= new;
            }
            left &= !comp;
            out.push(VertexSet(comp));
        }
        out
    }

    /// Graphviz text. `labels`, if given, names each vertex.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut s = String::from("graph {\n");
        for v in 0..self.n {
            match labels {
                Some(ls) => s.push_str(&format!("  {} [label=\"{}\"];\n", v + 1, ls[v])),
                None => s.push_str(&format!("  {};\n", v + 1)),
            }
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {} -- {};\n", u + 1, v + 1));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `n: 1-2 2-3`, 1-based.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (u, v) in self.edges() {
            write!(f, " {}-{}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

fn range_mask(lo: usize, hi: usize) -> u64 {
    if hi == lo {
        0
    } else {
        u64::MAX >> (64 - (hi - lo)) << lo
    }
}

/// `g ⊗ h`: `h`'s vertices follow `g`'s, no cross edges.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n + h.n);
    if out.words == 1 {
        out.rows[..g.n].copy_from_slice(&g.rows);
        for (k, &r) in h.rows.iter().enumerate() {
            out.rows[g.n + k] = r << g.n;
        }
        return out;
    }
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(u + g.n, v + g.n);
    }
    out
}

/// `g × h`: disjoint union plus every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n {
        for v in 0..h.n {
            out.add_edge(u, v + g.n);
        }
    }
    out
}

pub fn complement(g: &Graph) -> Graph {
    let mut out = Graph::empty(g.n);
    for u in 0..g.n {
        for v in u + 1..g.n {
            if !g.has_edge(u, v) {
                out.add_edge(u, v);
            }
        }
    }
    out
}

fn check_size(g: &Graph) -> Result<(), GraphError> {
    if g.n > MAX_SET_VERTICES {
        Err(GraphError::TooLarge(g.n))
    } else {
        Ok(())
    }
}

/// Grows sets in increasing vertex order; `ok(set, v)` decides whether `v` may join.
fn grow_sets(n: usize, ok: &impl Fn(VertexSet, usize) -> bool) -> Vec<VertexSet> {
    fn go(n: usize, from: usize, cur: VertexSet, ok: &impl Fn(VertexSet, usize) -> bool, out: &mut Vec<VertexSet>) {
        out.push(cur);
        for v in from..n {
            if ok(cur, v) {
                go(n, v + 1, cur.union(VertexSet::singleton(v)), ok, out);
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, VertexSet::EMPTY, ok, &mut out);
    out.sort();
    out
}

/// Independent sets in canonical order.
pub fn independent_sets(g: &Graph, include_empty: bool) -> Result<Vec<VertexSet>, GraphError> {
    check_size(g)?;
    let mut sets = grow_sets(g.n, &|s, v| !g.nbrs(v).intersects(s));
    if !include_empty {
        sets.retain(|s| !s.is_empty());
    }
    Ok(sets)
}

/// All cliques, including the empty one, in canonical order.
pub fn cliques(g: &Graph) -> Result<Vec<VertexSet>, GraphError> {
    check_size(g)?;
    Ok(grow_sets(g.n, &|s, v| s.0 & !g.nbrs(v).0 == 0))
}

/// A graph whose vertices are labelled by elements of some set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived<L> {
    pub graph: Graph,
    pub labels: Vec<L>,
}

impl<L: fmt::Display> Derived<L> {
    pub fn to_dot(&self) -> String {
        let names: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        self.graph.to_dot(Some(&names))
    }
}

/// Non-empty independent sets; two are adjacent when they overlap or touch.
pub fn ind_plus(g: &Graph) -> Result<Derived<VertexSet>, GraphError> {
    let sets = independent_sets(g, false)?;
    let mut out = Graph::empty(sets.len());
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].intersects(sets[j]) || g.adjacent_sets(sets[i], sets[j]) {
                out.add_edge(i, j);
            }
        }
    }
    Ok(Derived {
        graph: out,
        labels: sets,
    })
}

/// All cliques; two are adjacent when their union is a clique.
pub fn cl_graph(g: &Graph) -> Result<Derived<VertexSet>, GraphError> {
    let cls = cliques(g)?;
    let mut out = Graph::empty(cls.len());
    for i in 0..cls.len() {
        for j in i + 1..cls.len() {
            if g.is_clique(cls[i].union(cls[j])) {
                out.add_edge(i, j);
            }
        }
    }
    Ok(Derived {
        graph: out,
        labels: cls,
    })
}

/// A clique of `ind₊(G)`, i.e. a set of independent sets of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily(pub Vec<VertexSet>);

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// `κ(G) = cl(ind₊(G))`, each vertex labelled by its family of independent sets.
pub fn kappa(g: &Graph) -> Result<Derived<SetFamily>, GraphError> {
    let ip = ind_plus(g)?;
    let c = cl_graph(&ip.graph)?;
    let labels = c
        .labels
        .iter()
        .map(|cl| SetFamily(cl.iter().map(|i| ip.labels[i]).collect()))
        .collect();
    Ok(Derived { graph: c.graph, labels })
}

/// Expression tree over `{k, W, ×, ⊗}`. Leaves are numbered left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cotree {
    K,
    W,
    Join(Arc<Cotree>, Arc<Cotree>),
    Union(Arc<Cotree>, Arc<Cotree>),
}

impl Cotree {
    pub fn join(a: Cotree, b: Cotree) -> Cotree {
        Cotree::Join(Arc::new(a), Arc::new(b))
    }

    pub fn union(a: Cotree, b: Cotree) -> Cotree {
        Cotree::Union(Arc::new(a), Arc::new(b))
    }

    /// `W^n`, right-nested; `W^0 = k`.
    pub fn w_pow(n: usize) -> Cotree {
        Self::chain(n, Cotree::join)
    }

    /// `nW`, right-nested; `0W = k`.
    pub fn n_w(n: usize) -> Cotree {
        Self::chain(n, Cotree::union)
    }

    fn chain(n: usize, op: fn(Cotree, Cotree) -> Cotree) -> Cotree {
        match n {
            0 => Cotree::K,
            1 => Cotree::W,
            _ => op(Cotree::W, Self::chain(n - 1, op)),
        }
    }

    /// Right-nested `⊗` of the parts, dropping nothing.
    pub fn union_all(parts: Vec<Cotree>) -> Cotree {
        let mut it = parts.into_iter().rev();
        let Some(mut acc) = it.next() else {
            return Cotree::K;
        };
        for p in it {
            acc = Cotree::union(p, acc);
        }
        acc
    }

    pub fn n_vertices(&self) -> usize {
        match self {
            Cotree::K => 0,
            Cotree::W => 1,
            Cotree::Join(a, b) | Cotree::Union(a, b) => a.n_vertices() + b.n_vertices(),
        }
    }

    pub fn realize(&self) -> Graph {
        let n = self.n_vertices();
        if n <= 64 {
            let mut g = Graph::empty(n);
            self.realize_into(&mut g.rows, 0);
            return g;
        }
        match self {
            Cotree::K => Graph::empty(0),
            Cotree::W => Graph::empty(1),
            Cotree::Join(a, b) => join(&a.realize(), &b.realize()),
            Cotree::Union(a, b) => disjoint_union(&a.realize(), &b.realize()),
        }
    }

    /// Writes adjacency rows for vertices `offset..`; returns the end.
    fn realize_into(&self, rows: &mut [u64], offset: usize) -> usize {
        match self {
            Cotree::K => offset,
            Cotree::W => offset + 1,
            Cotree::Union(a, b) => {
                let mid = a.realize_into(rows, offset);
                b.realize_into(rows, mid)
            }
            Cotree::Join(a, b) => {
                let mid = a.realize_into(rows, offset);
                let end = b.realize_into(rows, mid);
                let (ma, mb) = (range_mask(offset, mid), range_mask(mid, end));
                rows[offset..mid].iter_mut().for_each(|r| *r |= mb);
                rows[mid..end].iter_mut().for_each(|r| *r |= ma);
                end
            }
        }
    }

    fn has_inner_k(&self) -> bool {
        match self {
            Cotree::K | Cotree::W => false,
            Cotree::Join(a, b) | Cotree::Union(a, b) => {
                **a == Cotree::K || **b == Cotree::K || a.has_inner_k() || b.has_inner_k()
            }
        }
    }

    /// Same graph with every interior `k` removed.
    pub fn normalized(&self) -> Cotree {
        if !self.has_inner_k() {
            return self.clone();
        }
        match self {
            Cotree::K | Cotree::W => self.clone(),
            Cotree::Join(a, b) | Cotree::Union(a, b) => {
                let (a, b) = (a.normalized(), b.normalized());
                match (a, b) {
                    (Cotree::K, x) | (x, Cotree::K) => x,
                    (a, b) if matches!(self, Cotree::Join(..)) => Cotree::join(a, b),
                    (a, b) => Cotree::union(a, b),
                }
            }
        }
    }
}

/// Recognizes a cograph. Returns its canonical cotree and `perm`, where
/// `perm[j]` is the vertex of `g` realized as leaf `j`.
pub fn cotree_decompose(g: &Graph) -> Result<(Cotree, Vec<usize>), GraphError> {
    check_size(g)?;
    let mut perm = Vec::with_capacity(g.n);
    let t = decompose_set(g, g.all(), &mut perm)?;
    Ok((t, perm))
}

fn decompose_set(g: &Graph, s: VertexSet, perm: &mut Vec<usize>) -> Result<Cotree, GraphError> {
    match s.len() {
        0 => return Ok(Cotree::K),
        1 => {
            perm.push(s.first().unwrap());
            return Ok(Cotree::W);
        }
        _ => {}
    }
    let (parts, is_join) = {
        let comps = g.components_within(s, false);
        if comps.len() > 1 {
            (comps, false)
        } else {
            let co = g.components_within(s, true);
            if co.len() == 1 {
                return Err(GraphError::NotACograph(find_p4(&g.induced(s), s)));
            }
            (co, true)
        }
    };
    let mut parts = parts;
    parts.sort_by_key(|p| (p.len(), p.first()));
    let mut kids = Vec::with_capacity(parts.len());
    for p in parts {
        kids.push(decompose_set(g, p, perm)?);
    }
    let mut it = kids.into_iter().rev();
    let mut acc = it.next().unwrap();
    for k in it {
        acc = if is_join {
            Cotree::join(k, acc)
        } else {
            Cotree::union(k, acc)
        };
    }
    Ok(acc)
}

/// Induced path `a-b-c-d` in `h` (vertices of `h` correspond to members of `s`).
fn find_p4(h: &Graph, s: VertexSet) -> [usize; 4] {
    let idx: Vec<usize> = s.iter().collect();
    induced_p4(h)
        .map(|p| p.map(|v| idx[v]))
        .expect("connected graph with connected complement contains an induced P4")
}

/// Brute-force search for an induced path on four vertices.
pub fn induced_p4(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n;
    for b in 0..n {
        for c in 0..n {
            if b == c || !g.has_edge(b, c) {
                continue;
            }
            for a in 0..n {
                if a == b || a == c || !g.has_edge(a, b) || g.has_edge(a, c) {
                    continue;
                }
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if g.has_edge(c, d) && !g.has_edge(b, d) && !g.has_edge(a, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Every labelled graph on `n` vertices, in edge-mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    (0u64..1 << m).map(move |mask| {
        let mut g = Graph::empty(n);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    })
}
