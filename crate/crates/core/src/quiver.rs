//! Finite quivers, unoriented paths and cycles, covers and truncated
//! universal covers.

use std::collections::{HashMap, VecDeque};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` references undeclared vertex `{vertex}`")]
    DanglingArrow { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("invalid morphism: {0}")]
    BadMorphism(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are addressed by their position in
/// input order; ids are opaque tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        }
    }

    /// Builds a quiver from vertex ids and `(arrow, source, target)` triples.
    pub fn build(
        name: impl Into<String>,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
    ) -> Result<Self, QuiverError> {
        let mut q = Self::new(name);
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (a, s, t) in arrows {
            q.add_arrow(a, s, t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize, QuiverError> {
        if self.vertex_index.contains_key(id) {
            return Err(QuiverError::DuplicateVertex(id.to_string()));
        }
        let idx = self.vertices.len();
        self.vertices.push(id.to_string());
        self.vertex_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn add_arrow(
        &mut self,
        id: &str,
        source: &str,
        target: &str,
    ) -> Result<usize, QuiverError> {
        let dangling = |v: &str| QuiverError::DanglingArrow {
            arrow: id.to_string(),
            vertex: v.to_string(),
        };
        let s = self.vertex(source).ok_or_else(|| dangling(source))?;
        let t = self.vertex(target).ok_or_else(|| dangling(target))?;
        self.add_arrow_idx(id, s, t)
    }

    pub fn add_arrow_idx(
        &mut self,
        id: &str,
        source: usize,
        target: usize,
    ) -> Result<usize, QuiverError> {
        if self.arrow_index.contains_key(id) {
            return Err(QuiverError::DuplicateArrow(id.to_string()));
        }
        assert!(source < self.vertices.len() && target < self.vertices.len());
        let idx = self.arrows.len();
        self.arrows.push(Arrow {
            id: id.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }
    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }
    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }
    pub fn arrow_by_id(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize, QuiverError> {
        self.vertex(id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Number of arrow ends at `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.arrows
            .iter()
            .map(|a| (a.source == v) as usize + (a.target == v) as usize)
            .sum()
    }

    /// Signed arrows leaving `v` in the double quiver.
    pub fn signed_out(&self, v: usize) -> Vec<SignedArrow> {
        let mut out = Vec::new();
        for (a, arr) in self.arrows.iter().enumerate() {
            if arr.source == v {
                out.push(SignedArrow::new(a, Sign::Plus));
            }
            if arr.target == v {
                out.push(SignedArrow::new(a, Sign::Minus));
            }
        }
        out
    }

    pub fn signed_source(&self, s: SignedArrow) -> usize {
        let a = &self.arrows[s.arrow];
        match s.sign {
            Sign::Plus => a.source,
            Sign::Minus => a.target,
        }
    }

    pub fn signed_target(&self, s: SignedArrow) -> usize {
        let a = &self.arrows[s.arrow];
        match s.sign {
            Sign::Plus => a.target,
            Sign::Minus => a.source,
        }
    }

    /// The double quiver: every arrow `a` becomes `a^+` with the same
    /// orientation and `a^-` reversed.
    pub fn double_quiver(&self) -> Quiver {
        let mut d = Quiver::new(format!("{}-double", self.name));
        for v in &self.vertices {
            d.add_vertex(v).expect("distinct vertices");
        }
        for a in &self.arrows {
            d.add_arrow_idx(&format!("{}^+", a.id), a.source, a.target)
                .expect("fresh id");
            d.add_arrow_idx(&format!("{}^-", a.id), a.target, a.source)
                .expect("fresh id");
        }
        d
    }

    /// Same quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let mut d = Quiver::new(format!("{}-op", self.name));
        for v in &self.vertices {
            d.add_vertex(v).expect("distinct vertices");
        }
        for a in &self.arrows {
            d.add_arrow_idx(&a.id, a.target, a.source)
                .expect("fresh id");
        }
        d
    }

    /// Full subquiver on the vertices marked in `keep`, with the index maps
    /// from new to old vertices and arrows.
    pub fn full_subquiver(&self, keep: &[bool]) -> (Quiver, Vec<usize>, Vec<usize>) {
        let mut sub = Quiver::new(self.name.clone());
        let mut new_of_old = vec![usize::MAX; self.vertices.len()];
        let mut vmap = Vec::new();
        for (v, id) in self.vertices.iter().enumerate() {
            if keep[v] {
                new_of_old[v] = sub.add_vertex(id).expect("distinct vertices");
                vmap.push(v);
            }
        }
        let mut amap = Vec::new();
        for (a, arr) in self.arrows.iter().enumerate() {
            if keep[arr.source] && keep[arr.target] {
                sub.add_arrow_idx(&arr.id, new_of_old[arr.source], new_of_old[arr.target])
                    .expect("fresh id");
                amap.push(a);
            }
        }
        (sub, vmap, amap)
    }

    /// Connected components of the underlying graph, as a component index per vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let adj = self.adjacency();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1 && !self.vertices.is_empty()
    }

    /// Neighbours of each vertex in the underlying graph as `(vertex, arrow)`;
    /// a loop appears twice at its vertex.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, arr) in self.arrows.iter().enumerate() {
            adj[arr.source].push((arr.target, a));
            adj[arr.target].push((arr.source, a));
        }
        adj
    }

    /// Minimal length of a reduced unoriented cycle, `None` on forests.
    ///
    /// Breadth-first search from every vertex over the underlying multigraph;
    /// a non-tree edge `(u, w)` closes a reduced cycle through the root of
    /// length at most `dist(u) + dist(w) + 1`, and the minimum over all roots
    /// is attained by a shortest cycle. Loops give 1, parallel arrows 2.
    pub fn reduced_cycle_girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let n = self.vertices.len();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent_arrow = vec![usize::MAX; n];
            let mut queue = VecDeque::new();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] >= b) {
                    break;
                }
                let mut seen_parent = false;
                for &(w, a) in &adj[u] {
                    // Skip the tree arrow to the parent exactly once: a loop
                    // lists itself twice and is not a tree arrow.
                    if a == parent_arrow[u] && !seen_parent {
                        seen_parent = true;
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent_arrow[w] = a;
                        queue.push_back(w);
                    } else {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn structure_report(&self) -> StructureReport {
        let connected = self.is_connected();
        let tree = connected && self.reduced_cycle_girth().is_none();
        let n = self.vertices.len();
        let leaves = (0..n).filter(|&v| self.degree(v) == 1).collect();
        let sinks = (0..n)
            .filter(|&v| self.out_arrows(v).next().is_none())
            .collect();
        let sources = (0..n)
            .filter(|&v| self.in_arrows(v).next().is_none())
            .collect();
        StructureReport {
            connected,
            tree,
            leaves,
            sinks,
            sources,
        }
    }

    pub fn identity_morphism(&self) -> QuiverMorphism {
        QuiverMorphism {
            domain: self.clone(),
            codomain: self.clone(),
            vertex_map: (0..self.vertices.len()).collect(),
            arrow_map: (0..self.arrows.len()).collect(),
        }
    }

    /// Truncated universal cover: reduced unoriented paths from `base` of
    /// length at most `radius`, joined by their one-step reduced extensions.
    pub fn universal_cover_window(
        &self,
        base: &str,
        radius: usize,
    ) -> Result<(Quiver, QuiverMorphism), QuiverError> {
        let b = self.require_vertex(base)?;
        if !self.is_connected() {
            return Err(QuiverError::Disconnected);
        }
        let mut cover = Quiver::new(format!("{}-universal-{}-{}", self.name, base, radius));
        let mut vertex_map = Vec::new();
        let mut arrow_map = Vec::new();
        // (vertex id in cover, endpoint in base, last signed arrow)
        let mut frontier: Vec<(usize, usize, Option<SignedArrow>, String)> = Vec::new();
        let root = cover.add_vertex(base).expect("first vertex");
        vertex_map.push(b);
        frontier.push((root, b, None, base.to_string()));
        for _ in 0..radius {
            let mut next = Vec::new();
            for (node, end, last, label) in &frontier {
                for s in self.signed_out(*end) {
                    if last.is_some_and(|l| l.inverse() == s) {
                        continue;
                    }
                    let new_label = format!("{}/{}", label, s.label(self));
                    let target = self.signed_target(s);
                    let child = cover.add_vertex(&new_label).expect("paths are distinct");
                    vertex_map.push(target);
                    let arrow_id = format!("{}>{}", self.arrows[s.arrow].id, new_label);
                    match s.sign {
                        Sign::Plus => cover.add_arrow_idx(&arrow_id, *node, child),
                        Sign::Minus => cover.add_arrow_idx(&arrow_id, child, *node),
                    }
                    .expect("fresh arrow id");
                    arrow_map.push(s.arrow);
                    next.push((child, target, Some(s), new_label));
                }
            }
            frontier = next;
        }
        let morphism = QuiverMorphism::new(cover.clone(), self.clone(), vertex_map, arrow_map)?;
        Ok((cover, morphism))
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "quiver {}", self.name)?;
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for a in &self.arrows {
            writeln!(
                f,
                "arrow {} {} {}",
                a.id, self.vertices[a.source], self.vertices[a.target]
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// An arrow of the double quiver: `arrow^{+1}` or `arrow^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedArrow {
    pub arrow: usize,
    pub sign: Sign,
}

impl SignedArrow {
    pub fn new(arrow: usize, sign: Sign) -> Self {
        Self { arrow, sign }
    }

    pub fn inverse(self) -> Self {
        let sign = match self.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        Self { sign, ..self }
    }

    pub fn label(self, q: &Quiver) -> String {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        format!("{}{}", q.arrows[self.arrow].id, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub connected: bool,
    pub tree: bool,
    pub leaves: Vec<usize>,
    pub sinks: Vec<usize>,
    pub sources: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMorphism {
    pub domain: Quiver,
    pub codomain: Quiver,
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

/// Which vertices of the domain must satisfy the local bijection property.
#[derive(Debug, Clone, Copy)]
pub enum CoverMode<'a> {
    Strict,
    /// Only marked vertices need local surjectivity and nothing needs to be
    /// hit globally; every vertex still needs local injectivity. Used for
    /// truncated windows.
    InteriorOnly(&'a [bool]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    VertexNotCovered(String),
    ArrowNotCovered(String),
    OutArrows { vertex: String, detail: String },
    InArrows { vertex: String, detail: String },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::VertexNotCovered(v) => write!(f, "base vertex {v} has no preimage"),
            CoverViolation::ArrowNotCovered(a) => write!(f, "base arrow {a} has no preimage"),
            CoverViolation::OutArrows { vertex, detail } => {
                write!(f, "out-arrow map at {vertex} is not bijective: {detail}")
            }
            CoverViolation::InArrows { vertex, detail } => {
                write!(f, "in-arrow map at {vertex} is not bijective: {detail}")
            }
        }
    }
}

impl QuiverMorphism {
    pub fn new(
        domain: Quiver,
        codomain: Quiver,
        vertex_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self, QuiverError> {
        if vertex_map.len() != domain.vertex_count() || arrow_map.len() != domain.arrow_count() {
            return Err(QuiverError::BadMorphism(
                "map sizes do not match domain".into(),
            ));
        }
        for (a, arr) in domain.arrows().iter().enumerate() {
            let image = arrow_map[a];
            if image >= codomain.arrow_count() {
                return Err(QuiverError::BadMorphism(format!(
                    "arrow {} maps out of range",
                    arr.id
                )));
            }
            let img = codomain.arrow(image);
            if vertex_map[arr.source] != img.source || vertex_map[arr.target] != img.target {
                return Err(QuiverError::BadMorphism(format!(
                    "arrow {} is not compatible with the vertex map",
                    arr.id
                )));
            }
        }
        if vertex_map.iter().any(|&v| v >= codomain.vertex_count()) {
            return Err(QuiverError::BadMorphism("vertex maps out of range".into()));
        }
        Ok(Self {
            domain,
            codomain,
            vertex_map,
            arrow_map,
        })
    }

    pub fn check_cover(&self, mode: CoverMode<'_>) -> Result<(), CoverViolation> {
        let base = &self.codomain;
        if matches!(mode, CoverMode::Strict) {
            self.check_surjective()?;
        }
        for k in 0..self.domain.vertex_count() {
            let i = self.vertex_map[k];
            let interior = match mode {
                CoverMode::Strict => true,
                CoverMode::InteriorOnly(mask) => mask[k],
            };
            let name = self.domain.vertex_id(k).to_string();
            let outs: Vec<usize> = self
                .domain
                .out_arrows(k)
                .map(|b| self.arrow_map[b])
                .collect();
            let base_outs: Vec<usize> = base.out_arrows(i).collect();
            if let Some(detail) = local_bijection(&outs, &base_outs, interior, base) {
                return Err(CoverViolation::OutArrows {
                    vertex: name,
                    detail,
                });
            }
            let ins: Vec<usize> = self
                .domain
                .in_arrows(k)
                .map(|b| self.arrow_map[b])
                .collect();
            let base_ins: Vec<usize> = base.in_arrows(i).collect();
            if let Some(detail) = local_bijection(&ins, &base_ins, interior, base) {
                return Err(CoverViolation::InArrows {
                    vertex: name,
                    detail,
                });
            }
        }
        Ok(())
    }

    fn check_surjective(&self) -> Result<(), CoverViolation> {
        let base = &self.codomain;
        let mut hit_v = vec![false; base.vertex_count()];
        for &v in &self.vertex_map {
            hit_v[v] = true;
        }
        if let Some(v) = hit_v.iter().position(|h| !h) {
            return Err(CoverViolation::VertexNotCovered(
                base.vertex_id(v).to_string(),
            ));
        }
        let mut hit_a = vec![false; base.arrow_count()];
        for &a in &self.arrow_map {
            hit_a[a] = true;
        }
        if let Some(a) = hit_a.iter().position(|h| !h) {
            return Err(CoverViolation::ArrowNotCovered(base.arrow(a).id.clone()));
        }
        Ok(())
    }

    pub fn is_cover(&self, mode: CoverMode<'_>) -> bool {
        self.check_cover(mode).is_ok()
    }
}

fn local_bijection(
    images: &[usize],
    base: &[usize],
    check_onto: bool,
    q: &Quiver,
) -> Option<String> {
    let mut sorted = images.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Some(format!("arrow {} hit twice", q.arrow(w[0]).id));
    }
    if check_onto {
        if let Some(&missing) = base.iter().find(|a| !sorted.contains(a)) {
            return Some(format!("arrow {} not hit", q.arrow(missing).id));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> Quiver {
        Quiver::build("A2", &["1", "2"], &[("a", "1", "2")]).unwrap()
    }
    fn loop_quiver() -> Quiver {
        Quiver::build("L", &["1"], &[("x", "1", "1")]).unwrap()
    }
    fn k2() -> Quiver {
        Quiver::build("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap()
    }

    /// Independent oracle: enumerate all cyclically reduced closed words in the
    /// double quiver up to `max_len`.
    fn brute_force_girth(q: &Quiver, max_len: usize) -> Option<usize> {
        fn extend(
            q: &Quiver,
            word: &mut Vec<SignedArrow>,
            start: usize,
            max_len: usize,
        ) -> Option<usize> {
            let end = word.last().map_or(start, |&s| q.signed_target(s));
            if !word.is_empty() && end == start && word[0].inverse() != *word.last().unwrap() {
                return Some(word.len());
            }
            if word.len() == max_len {
                return None;
            }
            let mut best = None::<usize>;
            for s in q.signed_out(end) {
                if word.last().is_some_and(|l| l.inverse() == s) {
                    continue;
                }
                word.push(s);
                if let Some(l) = extend(q, word, start, max_len) {
                    best = Some(best.map_or(l, |b| b.min(l)));
                }
                word.pop();
            }
            best
        }
        (0..q.vertex_count())
            .filter_map(|v| extend(q, &mut Vec::new(), v, max_len))
            .min()
    }

    #[test]
    fn double_quiver_examples() {
        let d = a2().double_quiver();
        assert_eq!(d.arrow_count(), 2);
        assert_eq!((d.arrow(1).source, d.arrow(1).target), (1, 0));
        let dl = loop_quiver().double_quiver();
        assert!(dl.arrows().iter().all(|a| a.source == 0 && a.target == 0));
        assert_eq!(dl.arrow_count(), 2);
        assert_eq!(k2().double_quiver().arrow_count(), 4);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(loop_quiver().reduced_cycle_girth(), Some(1));
        assert_eq!(k2().reduced_cycle_girth(), Some(2));
        assert_eq!(a2().reduced_cycle_girth(), None);
        for q in [loop_quiver(), k2(), a2()] {
            assert_eq!(q.reduced_cycle_girth(), brute_force_girth(&q, 4));
        }
    }

    #[test]
    fn structure_examples() {
        let r = a2().structure_report();
        assert!(r.connected && r.tree);
        assert_eq!(r.leaves, vec![0, 1]);
        assert_eq!(r.sources, vec![0]);
        assert_eq!(r.sinks, vec![1]);
        let r = k2().structure_report();
        assert!(r.connected && !r.tree);
        let two = Quiver::build("two", &["1", "2"], &[]).unwrap();
        let r = two.structure_report();
        assert!(!r.connected && !r.tree);
        // A loop makes its vertex a non-leaf.
        assert!(loop_quiver().structure_report().leaves.is_empty());
    }

    #[test]
    fn cover_examples() {
        for q in [a2(), k2(), loop_quiver()] {
            assert!(q.identity_morphism().is_cover(CoverMode::Strict));
        }
        let m = QuiverMorphism::new(a2(), loop_quiver(), vec![0, 0], vec![0]).unwrap();
        match m.check_cover(CoverMode::Strict) {
            Err(CoverViolation::InArrows { vertex, .. }) => assert_eq!(vertex, "1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn universal_cover_examples() {
        let (c, m) = loop_quiver().universal_cover_window("1", 2).unwrap();
        assert_eq!(c.vertex_count(), 5);
        assert!(c.structure_report().tree);
        let mut interior = vec![false; c.vertex_count()];
        interior[0] = true; // the lazy path
        interior[1] = true;
        interior[2] = true;
        assert!(m.is_cover(CoverMode::InteriorOnly(&interior)));
        assert!(!m.is_cover(CoverMode::Strict));

        let (c, _) = k2().universal_cover_window("1", 1).unwrap();
        assert_eq!((c.vertex_count(), c.arrow_count()), (3, 2));

        let tree =
            Quiver::build("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]).unwrap();
        let (c, m) = tree.universal_cover_window("2", 5).unwrap();
        assert_eq!((c.vertex_count(), c.arrow_count()), (3, 2));
        assert!(m.is_cover(CoverMode::Strict));

        assert!(Quiver::build("two", &["1", "2"], &[])
            .unwrap()
            .universal_cover_window("1", 1)
            .is_err());
        assert!(a2().universal_cover_window("9", 1).is_err());
    }

    #[test]
    fn parse_validation() {
        assert!(matches!(
            Quiver::build("x", &["1", "1"], &[]),
            Err(QuiverError::DuplicateVertex(_))
        ));
        assert!(matches!(
            Quiver::build("x", &["1"], &[("a", "1", "2")]),
            Err(QuiverError::DanglingArrow { .. })
        ));
    }

    fn random_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..5)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..5)))
            .prop_map(|(n, arrows)| {
                let mut q = Quiver::new("r");
                for v in 0..n {
                    q.add_vertex(&v.to_string()).unwrap();
                }
                for (i, (s, t)) in arrows.into_iter().enumerate() {
                    q.add_arrow_idx(&format!("a{i}"), s, t).unwrap();
                }
                q
            })
    }

    proptest! {
        #[test]
        fn girth_matches_word_enumeration(q in random_quiver()) {
            // A shortest reduced cycle is a simple cycle, so it has at most
            // min(|Q0|, |Q1|) arrows.
            let cap = q.vertex_count().min(q.arrow_count()).max(1);
            prop_assert_eq!(q.reduced_cycle_girth(), brute_force_girth(&q, cap));
        }

        #[test]
        fn girth_ignores_orientation(q in random_quiver()) {
            prop_assert_eq!(q.reduced_cycle_girth(), q.opposite().reduced_cycle_girth());
            prop_assert_eq!(q.double_quiver().arrow_count(), 2 * q.arrow_count());
            prop_assert!(q.identity_morphism().is_cover(CoverMode::Strict));
        }

        #[test]
        fn cover_windows_are_trees(q in random_quiver(), radius in 0usize..4) {
            if q.is_connected() {
                let (c, _) = q.universal_cover_window("0", radius).unwrap();
                prop_assert!(c.structure_report().tree);
            }
        }
    }
}
