//! Finite directed graphs: text format, adjacency, classification,
//! path enumeration into a vertex, and the in-/out-splitting moves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;


use crate::error::KError;
use crate::linalg::IntMatrix;

/// Directed edge; src and dst index the owning graph's vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// Finite directed multigraph with named vertices and edges. Vertex order
/// is declaration order and fixes the adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn build(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self, KError> {
        if vertices.is_empty() {
            return Err(KError::invalid("graph must have at least one vertex"));
        }
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(KError::invalid(format!("duplicate vertex name {:?}", v)));
            }
        }
        let mut seen_edges = BTreeSet::new();
        let mut built = Vec::with_capacity(edges.len());
        for (name, src, dst) in edges {
            if !seen_edges.insert(name.clone()) {
                return Err(KError::invalid(format!("duplicate edge name {:?}", name)));
            }
            let src = *index
                .get(&src)
                .ok_or_else(|| KError::invalid(format!("unknown vertex {:?}", src)))?;
            let dst = *index
                .get(&dst)
                .ok_or_else(|| KError::invalid(format!("unknown vertex {:?}", dst)))?;
            built.push(Edge { name, src, dst });
        }
        Ok(Graph { vertices, edges: built })
    }

    /// Parses the text format: `v <name>` and `e <name> <src> <dst>` lines,
    /// with `#` comments and blank lines skipped. Vertices must be declared
    /// before edges that use them.
    pub fn parse(text: &str) -> Result<Self, KError> {
        let mut vertices: Vec<String> = Vec::new();
        let mut edges: Vec<(String, String, String)> = Vec::new();
        let mut vseen = BTreeSet::new();
        let mut eseen = BTreeSet::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            match toks[0] {
                "v" => {
                    if toks.len() != 2 {
                        return Err(KError::parse(lineno, "expected `v <name>`"));
                    }
                    if !vseen.insert(toks[1].to_string()) {
                        return Err(KError::parse(
                            lineno,
                            format!("duplicate vertex name {:?}", toks[1]),
                        ));
                    }
                    vertices.push(toks[1].to_string());
                }
                "e" => {
                    if toks.len() != 4 {
                        return Err(KError::parse(lineno, "expected `e <name> <src> <dst>`"));
                    }
                    if !eseen.insert(toks[1].to_string()) {
                        return Err(KError::parse(
                            lineno,
                            format!("duplicate edge name {:?}", toks[1]),
                        ));
                    }
                    for endpoint in [toks[2], toks[3]] {
                        if !vseen.contains(endpoint) {
                            return Err(KError::parse(
                                lineno,
                                format!("unknown vertex {:?}", endpoint),
                            ));
                        }
                    }
                    edges.push((toks[1].to_string(), toks[2].to_string(), toks[3].to_string()));
                }
                other => {
                    return Err(KError::parse(
                        lineno,
                        format!("unknown directive {:?} (expected `v` or `e`)", other),
                    ));
                }
            }
        }
        if vertices.is_empty() {
            return Err(KError::parse(1, "graph must have at least one vertex"));
        }
        Graph::build(vertices, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].src == v).collect()
    }

    pub fn in_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].dst == v).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.edges.iter().all(|e| e.src != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.edges.iter().all(|e| e.dst != v)
    }

    pub fn has_sinks(&self) -> bool {
        (0..self.vertices.len()).any(|v| self.is_sink(v))
    }

    pub fn has_sources(&self) -> bool {
        (0..self.vertices.len()).any(|v| self.is_source(v))
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.is_sink(v)).collect()
    }

    /// Entry (i, j) counts edges from vertex i to vertex j, in declaration
    /// order.
    pub fn adjacency(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut m = IntMatrix::zero(n, n);
        for e in &self.edges {
            let val = m.get(e.src, e.dst) + 1;
            m.set(e.src, e.dst, val);
        }
        m
    }

    /// Reachability by paths of length >= 1.
    fn reach_nontrivial(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut r = vec![vec![false; n]; n];
        for e in &self.edges {
            r[e.src][e.dst] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !r[i][k] {
                    continue;
                }
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        r
    }

    /// Vertices lying on some cycle.
    pub fn cycle_vertices(&self) -> Vec<usize> {
        let r = self.reach_nontrivial();
        (0..self.vertices.len()).filter(|&v| r[v][v]).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycle_vertices().is_empty()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "v {}", v)?;
        }
        for e in &self.edges {
            writeln!(f, "e {} {} {}", e.name, self.vertices[e.src], self.vertices[e.dst])?;
        }
        Ok(())
    }
}

/// Shape classification used to select a structure theorem route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphTag {
    Acyclic,
    /// One cycle of the given length, with no exit edges, reachable from
    /// every vertex. The vertex list walks the cycle once, starting at its
    /// first vertex in declaration order.
    Comet { cycle_len: usize, cycle: Vec<usize> },
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClass {
    pub tag: GraphTag,
    pub has_sinks: bool,
    pub has_sources: bool,
    pub is_essential: bool,
    pub is_irreducible: bool,
}

/// Classifies the graph shape and computes the structural flags.
pub fn classify(g: &Graph) -> GraphClass {
    let n = g.n_vertices();
    let reach = g.reach_nontrivial();
    let cyc: Vec<usize> = (0..n).filter(|&v| reach[v][v]).collect();
    let has_sinks = g.has_sinks();
    let has_sources = g.has_sources();
    let is_essential = !has_sinks && !has_sources;
    let is_irreducible = (0..n).all(|i| (0..n).all(|j| reach[i][j]));

    let tag = if cyc.is_empty() {
        GraphTag::Acyclic
    } else {
        comet_cycle(g, &reach, &cyc)
            .map(|cycle| GraphTag::Comet { cycle_len: cycle.len(), cycle })
            .unwrap_or(GraphTag::Other)
    };
    GraphClass { tag, has_sinks, has_sources, is_essential, is_irreducible }
}

/// The cycle walk of a comet, or None when the comet conditions fail:
/// every cycle vertex has exactly one outgoing edge, those edges form a
/// single cycle through all cycle vertices, and every vertex reaches the
/// cycle.
fn comet_cycle(g: &Graph, reach: &[Vec<bool>], cyc: &[usize]) -> Option<Vec<usize>> {
    let cset: BTreeSet<usize> = cyc.iter().copied().collect();
    for &c in cyc {
        if g.out_edges(c).len() != 1 {
            return None;
        }
    }
    let start = cyc[0];
    let mut walk = vec![start];
    let mut cur = start;
    loop {
        let e = g.out_edges(cur)[0];
        let next = g.edges()[e].dst;
        if !cset.contains(&next) {
            return None;
        }
        if next == start {
            break;
        }
        if walk.contains(&next) {
            return None;
        }
        walk.push(next);
        cur = next;
    }
    if walk.len() != cyc.len() {
        return None;
    }
    for v in 0..g.n_vertices() {
        if !cset.contains(&v) && !cyc.iter().any(|&c| reach[v][c]) {
            return None;
        }
    }
    Some(walk)
}

/// Directed path, stored as the source vertex plus the edge sequence in
/// travel order; empty edge list is the trivial path at the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    source: usize,
    edges: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn range(&self, g: &Graph) -> usize {
        match self.edges.last() {
            Some(&e) => g.edges()[e].dst,
            None => self.source,
        }
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edges
    }

    pub fn edge_names<'a>(&self, g: &'a Graph) -> Vec<&'a str> {
        self.edges.iter().map(|&e| g.edges()[e].name.as_str()).collect()
    }
}

/// All paths ending at v after removing excluded_edge, the trivial path
/// included, sorted by length and then by edge-name sequence. The pruned
/// graph must be acyclic, otherwise the path set is infinite.
pub fn paths_into(g: &Graph, v: &str, excluded_edge: Option<&str>) -> Result<Vec<Path>, KError> {
    let target = g
        .vertex_index(v)
        .ok_or_else(|| KError::invalid(format!("unknown vertex {:?}", v)))?;
    let excluded = match excluded_edge {
        Some(name) => Some(
            g.edge_index(name)
                .ok_or_else(|| KError::invalid(format!("unknown edge {:?}", name)))?,
        ),
        None => None,
    };
    let keep: Vec<usize> =
        (0..g.n_edges()).filter(|&i| Some(i) != excluded).collect();
    // cycle check on the pruned edge set
    let n = g.n_vertices();
    let mut reach = vec![vec![false; n]; n];
    for &i in &keep {
        reach[g.edges()[i].src][g.edges()[i].dst] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if !reach[i][k] {
                continue;
            }
            for j in 0..n {
                if reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    if (0..n).any(|i| reach[i][i]) {
        return Err(KError::Hypothesis(
            "path enumeration needs an acyclic graph after edge removal".to_string(),
        ));
    }
    let mut all: Vec<Path> = Vec::new();
    let mut frontier = vec![Path { source: target, edges: Vec::new() }];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for &ei in &keep {
                if g.edges()[ei].dst == p.source {
                    let mut edges = Vec::with_capacity(p.edges.len() + 1);
                    edges.push(ei);
                    edges.extend_from_slice(&p.edges);
                    next.push(Path { source: g.edges()[ei].src, edges });
                }
            }
        }
        all.append(&mut frontier);
        frontier = next;
    }
    all.sort_by(|a, b| {
        (a.len(), a.edge_names(g)).cmp(&(b.len(), b.edge_names(g)))
    });
    Ok(all)
}

/// Per-vertex partition of an edge family (outgoing for out-splits,
/// incoming for in-splits) into ordered nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitPartition {
    blocks: BTreeMap<String, Vec<Vec<String>>>,
}

impl SplitPartition {
    pub fn new(blocks: BTreeMap<String, Vec<Vec<String>>>) -> Self {
        SplitPartition { blocks }
    }

    pub fn blocks(&self) -> &BTreeMap<String, Vec<Vec<String>>> {
        &self.blocks
    }

    /// Parses lines of the form `<vertex>: e1 e2 | e3`, with `#` comments.
    pub fn parse(text: &str) -> Result<Self, KError> {
        let mut blocks: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (vertex, rest) = trimmed
                .split_once(':')
                .ok_or_else(|| KError::parse(lineno, "expected `<vertex>: <blocks>`"))?;
            let vertex = vertex.trim().to_string();
            if vertex.is_empty() {
                return Err(KError::parse(lineno, "empty vertex name"));
            }
            if blocks.contains_key(&vertex) {
                return Err(KError::parse(
                    lineno,
                    format!("vertex {:?} listed twice", vertex),
                ));
            }
            let mut vblocks = Vec::new();
            for chunk in rest.split('|') {
                let names: Vec<String> =
                    chunk.split_whitespace().map(|s| s.to_string()).collect();
                if names.is_empty() {
                    return Err(KError::parse(lineno, "empty partition block"));
                }
                vblocks.push(names);
            }
            blocks.insert(vertex, vblocks);
        }
        Ok(SplitPartition { blocks })
    }

    fn from_families(g: &Graph, families: &[Vec<usize>], singletons: bool) -> Self {
        let mut blocks = BTreeMap::new();
        for (v, fam) in families.iter().enumerate() {
            if fam.is_empty() {
                continue;
            }
            let names: Vec<String> =
                fam.iter().map(|&e| g.edges()[e].name.clone()).collect();
            let vblocks = if singletons {
                names.into_iter().map(|n| vec![n]).collect()
            } else {
                vec![names]
            };
            blocks.insert(g.vertices()[v].clone(), vblocks);
        }
        SplitPartition { blocks }
    }

    /// One block per outgoing edge.
    pub fn singleton_out(g: &Graph) -> Self {
        let fams: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.out_edges(v)).collect();
        Self::from_families(g, &fams, true)
    }

    /// A single block holding all outgoing edges.
    pub fn trivial_out(g: &Graph) -> Self {
        let fams: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.out_edges(v)).collect();
        Self::from_families(g, &fams, false)
    }

    /// One block per incoming edge.
    pub fn singleton_in(g: &Graph) -> Self {
        let fams: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.in_edges(v)).collect();
        Self::from_families(g, &fams, true)
    }

    /// A single block holding all incoming edges.
    pub fn trivial_in(g: &Graph) -> Self {
        let fams: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.in_edges(v)).collect();
        Self::from_families(g, &fams, false)
    }
}

/// Checks that p partitions exactly the given per-vertex edge families;
/// returns the blocks as edge-index lists aligned with vertex order (empty
/// where the family is empty).
fn validate_partition(
    g: &Graph,
    p: &SplitPartition,
    families: &[Vec<usize>],
) -> Result<Vec<Vec<Vec<usize>>>, KError> {
    for v in p.blocks.keys() {
        if g.vertex_index(v).is_none() {
            return Err(KError::invalid(format!("partition names unknown vertex {:?}", v)));
        }
    }
    let mut out = Vec::with_capacity(g.n_vertices());
    for (vi, fam) in families.iter().enumerate() {
        let vname = &g.vertices()[vi];
        let listed = p.blocks.get(vname);
        if fam.is_empty() {
            if listed.is_some_and(|b| !b.is_empty()) {
                return Err(KError::invalid(format!(
                    "vertex {:?} has no edges to partition",
                    vname
                )));
            }
            out.push(Vec::new());
            continue;
        }
        let Some(vblocks) = listed else {
            return Err(KError::invalid(format!(
                "partition is missing vertex {:?}",
                vname
            )));
        };
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut resolved = Vec::with_capacity(vblocks.len());
        for block in vblocks {
            if block.is_empty() {
                return Err(KError::invalid(format!("empty block at vertex {:?}", vname)));
            }
            let mut ids = Vec::with_capacity(block.len());
            for name in block {
                let ei = g
                    .edge_index(name)
                    .ok_or_else(|| KError::invalid(format!("unknown edge {:?}", name)))?;
                if !fam.contains(&ei) {
                    return Err(KError::invalid(format!(
                        "edge {:?} does not belong to the family at {:?}",
                        name, vname
                    )));
                }
                if !seen.insert(ei) {
                    return Err(KError::invalid(format!(
                        "edge {:?} appears in two blocks",
                        name
                    )));
                }
                ids.push(ei);
            }
            resolved.push(ids);
        }
        if seen.len() != fam.len() {
            return Err(KError::invalid(format!(
                "blocks at {:?} do not cover all its edges",
                vname
            )));
        }
        out.push(resolved);
    }
    Ok(out)
}

/// Out-split along a partition of each non-sink's outgoing edges. Vertex v
/// with m blocks becomes v^1..v^m; sinks are kept. Edge e in block i at its
/// source becomes e^1..e^m' with m' the block count at its range
/// (source s(e)^i, range r(e)^j), or is kept when the range is a sink.
pub fn out_split(g: &Graph, p: &SplitPartition) -> Result<Graph, KError> {
    let families: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.out_edges(v)).collect();
    let blocks = validate_partition(g, p, &families)?;
    let mut block_at_src = vec![0usize; g.n_edges()];
    for vblocks in &blocks {
        for (i, block) in vblocks.iter().enumerate() {
            for &ei in block {
                block_at_src[ei] = i + 1;
            }
        }
    }
    let copy_name = |v: usize, i: usize| format!("{}^{}", g.vertices()[v], i);
    let mut vertices = Vec::new();
    for v in 0..g.n_vertices() {
        let m = blocks[v].len();
        if m == 0 {
            vertices.push(g.vertices()[v].clone());
        } else {
            vertices.extend((1..=m).map(|i| copy_name(v, i)));
        }
    }
    let mut edges = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        let i = block_at_src[ei];
        let src = copy_name(e.src, i);
        let m_r = blocks[e.dst].len();
        if m_r == 0 {
            edges.push((e.name.clone(), src, g.vertices()[e.dst].clone()));
        } else {
            for j in 1..=m_r {
                edges.push((format!("{}^{}", e.name, j), src.clone(), copy_name(e.dst, j)));
            }
        }
    }
    Graph::build(vertices, edges)
}

/// In-split along a partition of each non-source's incoming edges. Vertex v
/// with m blocks becomes v_1..v_m; sources are kept. Edge e in block i at
/// its range becomes e_1..e_m' with m' the block count at its source
/// (source s(e)_j, range r(e)_i), or is kept when the source is a source
/// vertex.
pub fn in_split(g: &Graph, p: &SplitPartition) -> Result<Graph, KError> {
    let families: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.in_edges(v)).collect();
    let blocks = validate_partition(g, p, &families)?;
    let mut block_at_dst = vec![0usize; g.n_edges()];
    for vblocks in &blocks {
        for (i, block) in vblocks.iter().enumerate() {
            for &ei in block {
                block_at_dst[ei] = i + 1;
            }
        }
    }
    let copy_name = |v: usize, i: usize| format!("{}_{}", g.vertices()[v], i);
    let mut vertices = Vec::new();
    for v in 0..g.n_vertices() {
        let m = blocks[v].len();
        if m == 0 {
            vertices.push(g.vertices()[v].clone());
        } else {
            vertices.extend((1..=m).map(|i| copy_name(v, i)));
        }
    }
    let mut edges = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        let i = block_at_dst[ei];
        let dst = copy_name(e.dst, i);
        let m_s = blocks[e.src].len();
        if m_s == 0 {
            edges.push((e.name.clone(), g.vertices()[e.src].clone(), dst));
        } else {
            for j in 1..=m_s {
                edges.push((format!("{}_{}", e.name, j), copy_name(e.src, j), dst.clone()));
            }
        }
    }
    Graph::build(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_bigint::BigInt;

    fn rose(n: usize) -> Graph {
        let edges = (0..n).map(|i| (format!("l{}", i), "u".into(), "u".into())).collect();
        Graph::build(vec!["u".into()], edges).unwrap()
    }

    /// Loop at u, two edges u -> v, one edge v -> u.
    fn two_vertex_mixing() -> Graph {
        Graph::parse(
            "v u\nv v\ne e u u\ne f1 u v\ne f2 u v\ne g v u\n",
        )
        .unwrap()
    }

    /// Two sources a, b feeding c, with a 2-cycle c <-> d.
    fn fed_two_cycle() -> Graph {
        Graph::parse(
            "v a\nv b\nv c\nv d\ne f a c\ne k b c\ne g c d\ne h d c\n",
        )
        .unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let g = two_vertex_mixing();
        assert_eq!(Graph::parse(&g.to_string()).unwrap(), g);
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.n_edges(), 4);
    }

    #[test]
    fn parse_rejects_bad_input() {
        for (text, want_line) in [
            ("v a\ne x a b\n", 2),
            ("v a\nv a\n", 2),
            ("v a\ne x a a\ne x a a\n", 3),
            ("w a\n", 1),
            ("v a\ne x a\n", 2),
            ("", 1),
        ] {
            match Graph::parse(text) {
                Err(KError::Parse { line, .. }) => assert_eq!(line, want_line, "{:?}", text),
                other => panic!("expected parse error for {:?}, got {:?}", text, other),
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(rose(3).adjacency(), IntMatrix::from_i64(&[&[3]]));
        assert_eq!(
            two_vertex_mixing().adjacency(),
            IntMatrix::from_i64(&[&[1, 2], &[1, 0]])
        );
        let edgeless = Graph::build(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(edgeless.adjacency(), IntMatrix::zero(2, 2));
    }

    #[test]
    fn classify_acyclic_with_sink() {
        // two paths of lengths 2 and 1 meeting in a sink
        let g = Graph::parse(
            "v a\nv b\nv c\nv s\ne p a b\ne q b s\ne r c s\n",
        )
        .unwrap();
        let c = classify(&g);
        assert_eq!(c.tag, GraphTag::Acyclic);
        assert!(c.has_sinks);
        assert!(c.has_sources);
        assert!(!c.is_essential);
        assert!(!c.is_irreducible);
    }

    #[test]
    fn classify_comet() {
        let c = classify(&fed_two_cycle());
        match &c.tag {
            GraphTag::Comet { cycle_len, cycle } => {
                assert_eq!(*cycle_len, 2);
                assert_eq!(cycle, &vec![2, 3]);
            }
            other => panic!("expected a comet, got {:?}", other),
        }
        assert!(!c.has_sinks);
        assert!(c.has_sources);
    }

    #[test]
    fn classify_other_for_rose() {
        let c = classify(&rose(2));
        assert_eq!(c.tag, GraphTag::Other);
        assert!(c.is_essential);
        assert!(c.is_irreducible);
        // a cycle with an exit is not a comet
        let g = Graph::parse("v a\nv b\ne l a a\ne x a b\n").unwrap();
        assert_eq!(classify(&g).tag, GraphTag::Other);
    }

    #[test]
    fn classify_single_cycle() {
        let g = Graph::parse("v a\nv b\ne f a b\ne g b a\n").unwrap();
        let c = classify(&g);
        assert!(matches!(c.tag, GraphTag::Comet { cycle_len: 2, .. }));
        assert!(c.is_essential);
        assert!(c.is_irreducible);
    }

    #[test]
    fn paths_into_sink() {
        // sorted lengths into the sink are 0,1,1,2,2
        let g = Graph::parse(
            "v a\nv b\nv s\ne p a b\ne r b s\ne t b s\n",
        )
        .unwrap();
        let paths = paths_into(&g, "s", None).unwrap();
        let lens: Vec<usize> = paths.iter().map(|p| p.len()).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2]);
        assert!(paths.iter().all(|p| p.range(&g) == 2));
        // deterministic tie order by edge-name sequence
        assert_eq!(paths[1].edge_names(&g), vec!["r"]);
        assert_eq!(paths[2].edge_names(&g), vec!["t"]);
        assert_eq!(paths[3].edge_names(&g), vec!["p", "r"]);
    }

    #[test]
    fn paths_into_isolated_vertex() {
        let g = Graph::build(vec!["w".into()], vec![]).unwrap();
        let paths = paths_into(&g, "w", None).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 0);
    }

    #[test]
    fn paths_into_comet_vertex_with_cycle_edge_removed() {
        let g = fed_two_cycle();
        let paths = paths_into(&g, "c", Some("g")).unwrap();
        let lens: Vec<usize> = paths.iter().map(|p| p.len()).collect();
        assert_eq!(lens, vec![0, 1, 1, 1]);
    }

    #[test]
    fn paths_into_rejects_cyclic_graph() {
        let g = fed_two_cycle();
        assert!(matches!(paths_into(&g, "c", None), Err(KError::Hypothesis(_))));
        assert!(paths_into(&g, "zz", None).is_err());
        assert!(paths_into(&g, "c", Some("zz")).is_err());
    }

    #[test]
    fn out_split_two_loops_and_a_tail() {
        // loops f, g at u and an edge h: v -> u, split with singletons
        let g = Graph::parse("v u\nv v\ne f u u\ne g u u\ne h v u\n").unwrap();
        let s = out_split(&g, &SplitPartition::singleton_out(&g)).unwrap();
        assert_eq!(s.vertices(), &["u^1", "u^2", "v^1"]);
        assert_eq!(s.n_edges(), 6);
        let desc: Vec<(String, String, String)> = s
            .edges()
            .iter()
            .map(|e| {
                (e.name.clone(), s.vertices()[e.src].clone(), s.vertices()[e.dst].clone())
            })
            .collect();
        let want = [
            ("f^1", "u^1", "u^1"),
            ("f^2", "u^1", "u^2"),
            ("g^1", "u^2", "u^1"),
            ("g^2", "u^2", "u^2"),
            ("h^1", "v^1", "u^1"),
            ("h^2", "v^1", "u^2"),
        ];
        for (got, want) in desc.iter().zip(want.iter()) {
            assert_eq!((got.0.as_str(), got.1.as_str(), got.2.as_str()), *want);
        }
    }

    #[test]
    fn trivial_partitions_preserve_shape() {
        for g in [two_vertex_mixing(), fed_two_cycle(), rose(2)] {
            let o = out_split(&g, &SplitPartition::trivial_out(&g)).unwrap();
            assert_eq!(o.adjacency(), g.adjacency());
            let i = in_split(&g, &SplitPartition::trivial_in(&g)).unwrap();
            assert_eq!(i.adjacency(), g.adjacency());
        }
    }

    #[test]
    fn singleton_splits_of_rose() {
        let g = rose(2);
        let o = out_split(&g, &SplitPartition::singleton_out(&g)).unwrap();
        assert_eq!((o.n_vertices(), o.n_edges()), (2, 4));
        let i = in_split(&g, &SplitPartition::singleton_in(&g)).unwrap();
        assert_eq!((i.n_vertices(), i.n_edges()), (2, 4));
    }

    #[test]
    fn in_split_with_mixed_blocks() {
        // split u's incoming edges apart but keep v's together
        let g = two_vertex_mixing();
        let p = SplitPartition::parse("u: e | g\nv: f1 f2\n").unwrap();
        let s = in_split(&g, &p).unwrap();
        assert_eq!(s.vertices(), &["u_1", "u_2", "v_1"]);
        assert_eq!(s.n_edges(), 7);
        assert_eq!(
            s.adjacency(),
            IntMatrix::from_i64(&[&[1, 0, 2], &[1, 0, 2], &[0, 1, 0]])
        );
        // fully singleton version doubles both vertices
        let fine = in_split(&g, &SplitPartition::singleton_in(&g)).unwrap();
        assert_eq!((fine.n_vertices(), fine.n_edges()), (4, 8));
    }

    #[test]
    fn split_rejects_bad_partitions() {
        let g = two_vertex_mixing();
        // missing vertex v
        let p = SplitPartition::parse("u: e f1 f2\n").unwrap();
        assert!(out_split(&g, &p).is_err());
        // edge in the wrong family
        let p = SplitPartition::parse("u: e f1 f2 | g\nv: g\n").unwrap();
        assert!(out_split(&g, &p).is_err());
        // duplicated edge
        let p = SplitPartition::parse("u: e e f1 f2\nv: g\n").unwrap();
        assert!(out_split(&g, &p).is_err());
        // unknown edge name
        let p = SplitPartition::parse("u: e f1 f2 zz\nv: g\n").unwrap();
        assert!(out_split(&g, &p).is_err());
        // sink listed
        let sink = Graph::parse("v a\nv s\ne x a s\n").unwrap();
        let p = SplitPartition::parse("a: x\ns: x\n").unwrap();
        assert!(out_split(&sink, &p).is_err());
        let ok = SplitPartition::parse("a: x\n").unwrap();
        assert!(out_split(&sink, &ok).is_ok());
    }

    #[test]
    fn partition_parse_errors() {
        assert!(SplitPartition::parse("u e f\n").is_err());
        assert!(SplitPartition::parse("u: e |\n").is_err());
        assert!(SplitPartition::parse("u: e\nu: f\n").is_err());
        assert!(SplitPartition::parse(": e\n").is_err());
    }

    #[test]
    fn path_counts_match_adjacency_powers() {
        // in an acyclic graph, #paths of length k into v equals the column
        // sum of the k-th adjacency power
        let g = Graph::parse(
            "v a\nv b\nv c\nv s\ne p a b\ne q a b\ne r b s\ne t b s\ne w c s\n",
        )
        .unwrap();
        let paths = paths_into(&g, "s", None).unwrap();
        let a = g.adjacency();
        let target = g.vertex_index("s").unwrap();
        for k in 0..4usize {
            let count = paths.iter().filter(|p| p.len() == k).count();
            let pow = crate::linalg::mat_pow(&a, k as u64).unwrap();
            let col_sum: BigInt = (0..g.n_vertices()).map(|i| pow.get(i, target).clone()).sum();
            assert_eq!(BigInt::from(count), col_sum);
        }
    }
}
