//! Finite windows of the universal abelian covering quiver, graded
//! representations, pushdown, shifts, lifts and the graded Hom/Ext identity.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::linalg::{Field, Matrix};
use crate::quiver::{CoverMode, Quiver, QuiverMorphism, Sign};
use crate::rep::{hom_ext_dims, DimVector, RepError, Representation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("inconsistent grading: cycle {cycle} has nonzero character sum {sum}")]
    Inconsistent { cycle: String, sum: String },
    #[error("graded representations cover different base quivers")]
    BaseMismatch,
    #[error("no tree support after {max_n} iterations (girth trace {trace})")]
    MaxIterations { max_n: usize, trace: String },
    #[error("graded Hom/Ext sums {graded:?} differ from base values {base:?}")]
    HomExtMismatch {
        base: (usize, usize),
        graded: (usize, usize),
    },
    #[error("bad character `{0}`")]
    BadCharacter(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A finitely supported element of `Z^{Q_1}`, keyed by arrow index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Character(BTreeMap<usize, i64>);

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(arrow: usize) -> Self {
        Self::zero().plus_arrow(arrow, 1)
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        pairs
            .iter()
            .fold(Self::zero(), |c, &(a, k)| c.plus_arrow(a, k))
    }

    pub fn plus_arrow(mut self, arrow: usize, k: i64) -> Self {
        let v = self.0.entry(arrow).or_insert(0);
        *v += k;
        if *v == 0 {
            self.0.remove(&arrow);
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        other
            .0
            .iter()
            .fold(self.clone(), |c, (&a, &k)| c.plus_arrow(a, k))
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|(&a, &k)| (a, -k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, arrow: usize) -> i64 {
        self.0.get(&arrow).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&a, &k)| (a, k))
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> i64 {
        self.0.values().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// `a:1,b:-1`; the empty string for zero.
    pub fn format(&self, q: &Quiver) -> String {
        self.0
            .iter()
            .map(|(&a, &k)| format!("{}:{}", q.arrow(a).id, k))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(q: &Quiver, s: &str) -> Result<Self, CoverError> {
        let mut c = Self::zero();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || CoverError::BadCharacter(part.to_string());
            let (a, k) = part.rsplit_once(':').ok_or_else(bad)?;
            let arrow = q.arrow_by_id(a).ok_or_else(bad)?;
            let k: i64 = k.parse().map_err(|_| bad())?;
            c = c.plus_arrow(arrow, k);
        }
        Ok(c)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(a, k)| format!("#{a}:{k}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A finite full subquiver of the universal abelian cover of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWindow {
    base: Quiver,
    points: Vec<(usize, Character)>,
    index: HashMap<(usize, Character), usize>,
    quiver: Quiver,
    /// Base arrow and source character of every window arrow.
    arrow_lifts: Vec<(usize, Character)>,
    arrow_index: HashMap<(usize, Character), usize>,
    morphism: QuiverMorphism,
}

impl CoverWindow {
    /// Window on the given points (duplicates dropped, order kept) with every
    /// lifted arrow whose endpoints both lie in the window.
    pub fn from_points(
        base: &Quiver,
        points: impl IntoIterator<Item = (usize, Character)>,
    ) -> Self {
        let mut kept = Vec::new();
        let mut index = HashMap::new();
        for p in points {
            if !index.contains_key(&p) {
                index.insert(p.clone(), kept.len());
                kept.push(p);
            }
        }
        let mut quiver = Quiver::new(format!("{}-cover", base.name()));
        for (i, chi) in &kept {
            quiver
                .add_vertex(&format!("{}@{}", base.vertex_id(*i), chi.format(base)))
                .expect("points are distinct");
        }
        let mut arrow_lifts = Vec::new();
        let mut arrow_index = HashMap::new();
        let mut vertex_map = Vec::with_capacity(kept.len());
        let mut arrow_map = Vec::new();
        for (k, (i, chi)) in kept.iter().enumerate() {
            vertex_map.push(*i);
            for a in base.out_arrows(*i) {
                let target = (base.arrow(a).target, chi.clone().plus_arrow(a, 1));
                if let Some(&t) = index.get(&target) {
                    let id = format!("{}@{}", base.arrow(a).id, chi.format(base));
                    quiver
                        .add_arrow_idx(&id, k, t)
                        .expect("lifted arrows are distinct");
                    arrow_index.insert((a, chi.clone()), arrow_lifts.len());
                    arrow_lifts.push((a, chi.clone()));
                    arrow_map.push(a);
                }
            }
        }
        let morphism = QuiverMorphism::new(quiver.clone(), base.clone(), vertex_map, arrow_map)
            .expect("window arrows lie over base arrows");
        Self {
            base: base.clone(),
            points: kept,
            index,
            quiver,
            arrow_lifts,
            arrow_index,
            morphism,
        }
    }

    /// Closed ball of the given radius around `(v, 0)` in the underlying graph.
    pub fn ball(base: &Quiver, v: usize, radius: usize) -> Self {
        let start = (v, Character::zero());
        let mut seen: HashMap<(usize, Character), usize> = HashMap::new();
        let mut order = vec![start.clone()];
        seen.insert(start.clone(), 0);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            let d = seen[&p];
            if d == radius {
                continue;
            }
            for n in neighbours(base, &p) {
                if !seen.contains_key(&n) {
                    seen.insert(n.clone(), d + 1);
                    order.push(n.clone());
                    queue.push_back(n);
                }
            }
        }
        Self::from_points(base, order)
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn points(&self) -> &[(usize, Character)] {
        &self.points
    }
    pub fn point(&self, k: usize) -> &(usize, Character) {
        &self.points[k]
    }
    pub fn morphism(&self) -> &QuiverMorphism {
        &self.morphism
    }
    pub fn arrow_lift(&self, b: usize) -> &(usize, Character) {
        &self.arrow_lifts[b]
    }

    pub fn locate(&self, vertex: usize, chi: &Character) -> Option<usize> {
        self.index.get(&(vertex, chi.clone())).copied()
    }

    pub fn locate_arrow(&self, arrow: usize, source_chi: &Character) -> Option<usize> {
        self.arrow_index.get(&(arrow, source_chi.clone())).copied()
    }

    /// Window vertices all of whose cover neighbours are inside the window.
    pub fn interior_mask(&self) -> Vec<bool> {
        self.points
            .iter()
            .map(|p| {
                neighbours(&self.base, p)
                    .iter()
                    .all(|n| self.index.contains_key(n))
            })
            .collect()
    }

    pub fn is_interior_cover(&self) -> bool {
        let mask = self.interior_mask();
        self.morphism.is_cover(CoverMode::InteriorOnly(&mask))
    }
}

/// Neighbours of `(i, chi)` in the universal abelian cover, one per signed arrow.
fn neighbours(base: &Quiver, p: &(usize, Character)) -> Vec<(usize, Character)> {
    base.signed_out(p.0)
        .into_iter()
        .map(|s| {
            let k = match s.sign {
                Sign::Plus => 1,
                Sign::Minus => -1,
            };
            (base.signed_target(s), p.1.clone().plus_arrow(s.arrow, k))
        })
        .collect()
}

/// The window `Q_0 x chars`.
pub fn build_cover_window(q: &Quiver, chars: &[Character]) -> CoverWindow {
    let points = chars
        .iter()
        .flat_map(|c| (0..q.vertex_count()).map(move |i| (i, c.clone())));
    CoverWindow::from_points(q, points)
}

/// A representation of a cover window.
#[derive(Debug, Clone)]
pub struct GradedRepresentation<F: Field> {
    pub window: CoverWindow,
    pub rep: Representation<F>,
}

impl<F: Field> GradedRepresentation<F> {
    pub fn new(window: CoverWindow, rep: Representation<F>) -> Result<Self, CoverError> {
        if rep.quiver() != window.quiver() {
            return Err(CoverError::Rep(RepError::QuiverMismatch));
        }
        Ok(Self { window, rep })
    }

    /// The same grading with the representation reduced to `F_p`.
    pub fn reduce_mod(
        &self,
        p: &crate::linalg::PrimeField,
    ) -> Result<GradedRepresentation<crate::linalg::PrimeField>, CoverError> {
        Ok(GradedRepresentation {
            window: self.window.clone(),
            rep: self.rep.reduce_mod(p)?,
        })
    }

    pub fn base(&self) -> &Quiver {
        self.window.base()
    }

    pub fn field(&self) -> &F {
        self.rep.field()
    }

    /// Window vertices carrying a nonzero space.
    pub fn support(&self) -> Vec<usize> {
        (0..self.window.points.len())
            .filter(|&k| self.rep.dim(k) > 0)
            .collect()
    }

    pub fn piece_dim(&self, vertex: usize, chi: &Character) -> usize {
        self.window
            .locate(vertex, chi)
            .map_or(0, |k| self.rep.dim(k))
    }

    /// The representation restricted to its support, on the full subquiver
    /// spanned by the support, with the map to window vertices.
    pub fn support_rep(&self) -> (Representation<F>, Vec<usize>) {
        let mut keep = vec![false; self.window.points.len()];
        for k in self.support() {
            keep[k] = true;
        }
        let (sub, vmap, amap) = self.window.quiver.full_subquiver(&keep);
        let dims = DimVector(vmap.iter().map(|&k| self.rep.dim(k)).collect());
        let maps = amap.iter().map(|&b| self.rep.map(b).clone()).collect();
        let rep = Representation::new(self.rep.name(), sub, self.field().clone(), dims, maps)
            .expect("restriction to the support keeps shapes");
        (rep, vmap)
    }

    /// The same graded pieces placed in another window containing the support.
    pub fn embed(&self, window: &CoverWindow) -> Result<Representation<F>, CoverError> {
        let field = self.field();
        for k in self.support() {
            let (i, chi) = &self.window.points[k];
            if window.locate(*i, chi).is_none() {
                return Err(CoverError::Rep(RepError::BadDimVector(format!(
                    "window lacks support vertex {}",
                    self.window.quiver.vertex_id(k)
                ))));
            }
        }
        let dims = DimVector(
            window
                .points
                .iter()
                .map(|(i, chi)| self.piece_dim(*i, chi))
                .collect(),
        );
        let maps = window
            .arrow_lifts
            .iter()
            .enumerate()
            .map(|(b, (a, chi))| {
                let arr = window.quiver.arrow(b);
                let (r, c) = (dims[arr.target], dims[arr.source]);
                match self.window.locate_arrow(*a, chi) {
                    Some(own) if r > 0 && c > 0 => self.rep.map(own).clone(),
                    _ => Matrix::zeros(field, r, c),
                }
            })
            .collect();
        Ok(Representation::new(
            self.rep.name(),
            window.quiver.clone(),
            field.clone(),
            dims,
            maps,
        )?)
    }
}

/// Pushdown along the covering map, with the grading of every coordinate.
#[derive(Debug, Clone)]
pub struct Pushdown<F: Field> {
    pub rep: Representation<F>,
    /// `pieces[i]` lists `(window vertex, offset, length)` in coordinate order.
    pub pieces: Vec<Vec<(usize, usize, usize)>>,
    /// Character of every coordinate at every base vertex.
    pub characters: Vec<Vec<Character>>,
}

pub fn pushdown<F: Field>(g: &GradedRepresentation<F>) -> Pushdown<F> {
    let base = g.base();
    let field = g.field();
    let n = base.vertex_count();
    let mut pieces = vec![Vec::new(); n];
    let mut characters = vec![Vec::new(); n];
    let mut local_offset = vec![0usize; g.window.points.len()];
    let mut dims = vec![0usize; n];
    for (k, (i, chi)) in g.window.points.iter().enumerate() {
        let d = g.rep.dim(k);
        local_offset[k] = dims[*i];
        if d > 0 {
            pieces[*i].push((k, dims[*i], d));
            characters[*i].extend(std::iter::repeat_n(chi.clone(), d));
        }
        dims[*i] += d;
    }
    let mut maps: Vec<Matrix<F>> = base
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
        .collect();
    for (b, (a, _)) in g.window.arrow_lifts.iter().enumerate() {
        let arr = g.window.quiver.arrow(b);
        let block = g.rep.map(b);
        if block.rows() > 0 && block.cols() > 0 {
            maps[*a].set_block(local_offset[arr.target], local_offset[arr.source], block);
        }
    }
    let rep = Representation::new(
        g.rep.name(),
        base.clone(),
        field.clone(),
        DimVector(dims),
        maps,
    )
    .expect("pushdown shapes are consistent");
    Pushdown {
        rep,
        pieces,
        characters,
    }
}

/// `S_xi`: the piece at `chi` becomes the old piece at `chi + xi`, so the
/// support moves by `-xi`.
pub fn shift<F: Field>(g: &GradedRepresentation<F>, xi: &Character) -> GradedRepresentation<F> {
    let points: Vec<(usize, Character)> = g
        .window
        .points
        .iter()
        .map(|(i, chi)| (*i, chi.sub(xi)))
        .collect();
    let window = CoverWindow::from_points(g.base(), points);
    debug_assert_eq!(window.arrow_lifts.len(), g.window.arrow_lifts.len());
    let rep = Representation::new(
        g.rep.name(),
        window.quiver.clone(),
        g.field().clone(),
        g.rep.dims().clone(),
        g.rep.maps().to_vec(),
    )
    .expect("translation preserves the window structure");
    GradedRepresentation { window, rep }
}

/// A lift together with the coordinate permutation relating its pushdown to
/// the input.
#[derive(Debug, Clone)]
pub struct Lift<F: Field> {
    pub graded: GradedRepresentation<F>,
    /// `permutation[i][r]` is the input basis index at pushdown coordinate `r`.
    pub permutation: Vec<Vec<usize>>,
    /// Character of each input basis vector, per vertex.
    pub characters: Vec<Vec<Character>>,
}

/// Grades the standard basis along a spanning forest of the coefficient
/// quiver, then places the graded pieces in a window with a halo of one.
pub fn lift_from_coefficient_quiver<F: Field>(
    m: &Representation<F>,
) -> Result<Lift<F>, CoverError> {
    lift_with_halo(m, 1)
}

pub fn lift_with_halo<F: Field>(m: &Representation<F>, halo: usize) -> Result<Lift<F>, CoverError> {
    let q = m.quiver();
    let cq = m.coefficient_quiver();
    let n = cq.points.len();
    // Adjacency: (neighbour, arrow, +1 when walking along the arrow).
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for &(a, s, t) in &cq.edges {
        adj[s].push((t, a, 1));
        adj[t].push((s, a, -1));
    }
    let mut chi: Vec<Option<Character>> = vec![None; n];
    let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; n];
    for root in 0..n {
        if chi[root].is_some() {
            continue;
        }
        chi[root] = Some(Character::zero());
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let cx = chi[x].clone().expect("visited");
            for &(y, a, k) in &adj[x] {
                let expected = cx.clone().plus_arrow(a, k);
                match &chi[y] {
                    None => {
                        chi[y] = Some(expected);
                        parent[y] = Some((x, a, k));
                        queue.push_back(y);
                    }
                    Some(cy) if *cy != expected => {
                        return Err(inconsistent_cycle(m, &cq.points, &parent, &chi, x, y, a, k));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let chi: Vec<Character> = chi.into_iter().map(|c| c.expect("all visited")).collect();

    // Support points ordered by base vertex, then by first basis vector.
    let mut support: Vec<(usize, Character)> = Vec::new();
    for (x, &(i, _)) in cq.points.iter().enumerate() {
        let p = (i, chi[x].clone());
        if !support.contains(&p) {
            support.push(p);
        }
    }
    let mut points = support.clone();
    let mut frontier = support.clone();
    for _ in 0..halo {
        let mut next = Vec::new();
        for p in &frontier {
            for nb in neighbours(q, p) {
                if !points.contains(&nb) {
                    points.push(nb.clone());
                    next.push(nb);
                }
            }
        }
        frontier = next;
    }
    let window = CoverWindow::from_points(q, points);

    // Basis vectors of each piece, in input order.
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); window.points.len()];
    for (x, &(i, k)) in cq.points.iter().enumerate() {
        let w = window.locate(i, &chi[x]).expect("support is in the window");
        members[w].push(k);
    }
    let dims = DimVector(members.iter().map(Vec::len).collect());
    let maps = window
        .arrow_lifts
        .iter()
        .enumerate()
        .map(|(b, (a, _))| {
            let arr = window.quiver.arrow(b);
            m.map(*a)
                .select_rows(&members[arr.target])
                .select_cols(&members[arr.source])
        })
        .collect::<Vec<_>>();
    let rep = Representation::new(
        m.name(),
        window.quiver.clone(),
        m.field().clone(),
        dims,
        maps,
    )?;
    let mut permutation = vec![Vec::new(); q.vertex_count()];
    for (w, (i, _)) in window.points.iter().enumerate() {
        permutation[*i].extend(members[w].iter().copied());
    }
    let mut characters: Vec<Vec<Character>> = (0..q.vertex_count())
        .map(|i| vec![Character::zero(); m.dim(i)])
        .collect();
    for (x, &(i, k)) in cq.points.iter().enumerate() {
        characters[i][k] = chi[x].clone();
    }
    Ok(Lift {
        graded: GradedRepresentation { window, rep },
        permutation,
        characters,
    })
}

#[allow(clippy::too_many_arguments)]
fn inconsistent_cycle<F: Field>(
    m: &Representation<F>,
    points: &[(usize, usize)],
    parent: &[Option<(usize, usize, i64)>],
    chi: &[Option<Character>],
    x: usize,
    y: usize,
    a: usize,
    k: i64,
) -> CoverError {
    let q = m.quiver();
    let label = |p: usize| format!("{}[{}]", q.vertex_id(points[p].0), points[p].1);
    let path_to_root = |mut p: usize| {
        let mut path = vec![p];
        while let Some((up, _, _)) = parent[p] {
            p = up;
            path.push(p);
        }
        path
    };
    let px = path_to_root(x);
    let py = path_to_root(y);
    let meet = px.iter().copied().find(|v| py.contains(v)).unwrap_or(x);
    let mut cycle: Vec<String> = px
        .iter()
        .take_while(|&&v| v != meet)
        .map(|&v| label(v))
        .collect();
    cycle.push(label(meet));
    let back: Vec<String> = py
        .iter()
        .take_while(|&&v| v != meet)
        .map(|&v| label(v))
        .collect();
    cycle.extend(back.into_iter().rev());
    cycle.push(label(x));
    let sum = chi[x]
        .clone()
        .expect("visited")
        .plus_arrow(a, k)
        .sub(chi[y].as_ref().expect("visited"));
    CoverError::Inconsistent {
        cycle: cycle.join(" - "),
        sum: if sum.is_zero() {
            "0".into()
        } else {
            sum.format(q)
        },
    }
}

/// Result of lifting repeatedly until the support is a forest.
#[derive(Debug, Clone)]
pub struct IteratedLift<F: Field> {
    pub graded: GradedRepresentation<F>,
    pub n: usize,
    /// Girth of the support at each level, `None` once acyclic.
    pub girth_trace: Vec<Option<usize>>,
    /// Final window vertex to vertex of the original base.
    pub vertex_to_base: Vec<usize>,
    /// Final window arrow to arrow of the original base.
    pub arrow_to_base: Vec<usize>,
    pub support_connected: bool,
}

fn format_trace(trace: &[Option<usize>]) -> String {
    trace
        .iter()
        .map(|g| g.map_or("none".to_string(), |g| g.to_string()))
        .collect::<Vec<_>>()
        .join(" -> ")
}

/// Re-lifts the support representation, with fresh vertex and arrow ids,
/// until the support quiver has no reduced cycle.
pub fn iterate_cover_to_tree<F: Field>(
    g: &GradedRepresentation<F>,
    max_n: usize,
) -> Result<IteratedLift<F>, CoverError> {
    let mut current = g.clone();
    let mut vertex_to_base = g.window.morphism.vertex_map.clone();
    let mut arrow_to_base = g.window.morphism.arrow_map.clone();
    let mut trace = Vec::new();
    for n in 0..=max_n {
        let (support, vmap) = current.support_rep();
        let girth = support.quiver().reduced_cycle_girth();
        trace.push(girth);
        if girth.is_none() {
            return Ok(IteratedLift {
                support_connected: support.quiver().is_connected(),
                graded: current,
                n,
                girth_trace: trace,
                vertex_to_base,
                arrow_to_base,
            });
        }
        if n == max_n {
            break;
        }
        let (fresh, amap) = relabel(support.quiver(), n + 1, &current, &vmap);
        let rep = Representation::new(
            support.name(),
            fresh,
            support.field().clone(),
            support.dims().clone(),
            support.maps().to_vec(),
        )?;
        let lift = lift_from_coefficient_quiver(&rep)?;
        let next = lift.graded;
        vertex_to_base = next
            .window
            .morphism
            .vertex_map
            .iter()
            .map(|&v| vertex_to_base[vmap[v]])
            .collect();
        arrow_to_base = next
            .window
            .morphism
            .arrow_map
            .iter()
            .map(|&a| arrow_to_base[amap[a]])
            .collect();
        current = next;
    }
    Err(CoverError::MaxIterations {
        max_n,
        trace: format_trace(&trace),
    })
}

/// Copy of the support quiver with ids `v<level>_<k>` and `a<level>_<k>`,
/// plus the map from its arrows to the current window's arrows.
fn relabel<F: Field>(
    support: &Quiver,
    level: usize,
    current: &GradedRepresentation<F>,
    vmap: &[usize],
) -> (Quiver, Vec<usize>) {
    let mut q = Quiver::new(format!("{}-L{}", current.base().name(), level));
    for k in 0..support.vertex_count() {
        q.add_vertex(&format!("v{level}_{k}")).expect("fresh ids");
    }
    let mut amap = Vec::with_capacity(support.arrow_count());
    for (b, arr) in support.arrows().iter().enumerate() {
        q.add_arrow_idx(&format!("a{level}_{b}"), arr.source, arr.target)
            .expect("fresh ids");
        let wq = current.window.quiver();
        let (ws, wt) = (vmap[arr.source], vmap[arr.target]);
        let original = (0..wq.arrow_count())
            .find(|&c| {
                wq.arrow(c).id == arr.id && wq.arrow(c).source == ws && wq.arrow(c).target == wt
            })
            .expect("support arrows come from the window");
        amap.push(original);
    }
    (q, amap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomExtReport {
    pub base_hom: usize,
    pub base_ext: usize,
    pub graded_hom_sum: usize,
    pub graded_ext_sum: usize,
    /// `(xi, hom, ext)` for every examined shift with a nonzero contribution.
    pub shifts_used: Vec<(Character, usize, usize)>,
    pub shifts_examined: usize,
}

/// Candidate shifts: `+-(chi_N - chi_M)` and those moved by one arrow.
fn candidate_shifts<F: Field>(
    gm: &GradedRepresentation<F>,
    gn: &GradedRepresentation<F>,
) -> BTreeSet<Character> {
    let chars = |g: &GradedRepresentation<F>| -> Vec<Character> {
        g.support()
            .iter()
            .map(|&k| g.window.points[k].1.clone())
            .collect()
    };
    let (cm, cn) = (chars(gm), chars(gn));
    let mut out = BTreeSet::new();
    let arrows = gm.base().arrow_count();
    for x in &cm {
        for y in &cn {
            let d = y.sub(x);
            for base in [d.clone(), d.neg()] {
                out.insert(base.clone());
                for a in 0..arrows {
                    out.insert(base.clone().plus_arrow(a, 1));
                    out.insert(base.clone().plus_arrow(a, -1));
                }
            }
        }
    }
    out
}

/// Compares `Hom/Ext` of the pushdowns with the sums over shifts of the
/// graded `Hom/Ext`; a mismatch is an error.
pub fn graded_homext_check<F: Field>(
    gm: &GradedRepresentation<F>,
    gn: &GradedRepresentation<F>,
) -> Result<HomExtReport, CoverError> {
    if gm.base().vertices() != gn.base().vertices() || gm.base().arrows() != gn.base().arrows() {
        return Err(CoverError::BaseMismatch);
    }
    let (base_hom, base_ext) = hom_ext_dims(&pushdown(gm).rep, &pushdown(gn).rep)?;
    let candidates = candidate_shifts(gm, gn);
    let mut report = HomExtReport {
        base_hom,
        base_ext,
        graded_hom_sum: 0,
        graded_ext_sum: 0,
        shifts_used: Vec::new(),
        shifts_examined: candidates.len(),
    };
    for xi in candidates {
        let shifted = shift(gm, &xi);
        let points = shifted
            .support()
            .into_iter()
            .map(|k| shifted.window.points[k].clone())
            .chain(
                gn.support()
                    .into_iter()
                    .map(|k| gn.window.points[k].clone()),
            );
        let window = CoverWindow::from_points(gm.base(), points);
        let a = shifted.embed(&window)?;
        let b = gn.embed(&window)?;
        let (h, e) = hom_ext_dims(&a, &b)?;
        report.graded_hom_sum += h;
        report.graded_ext_sum += e;
        if h > 0 || e > 0 {
            report.shifts_used.push((xi, h, e));
        }
    }
    if (report.base_hom, report.base_ext) != (report.graded_hom_sum, report.graded_ext_sum) {
        return Err(CoverError::HomExtMismatch {
            base: (report.base_hom, report.base_ext),
            graded: (report.graded_hom_sum, report.graded_ext_sum),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::rep::rigidity_report;

    fn loop_q() -> Quiver {
        Quiver::build("L", &["1"], &[("x", "1", "1")]).unwrap()
    }
    fn k2() -> Quiver {
        Quiver::build("K2", &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap()
    }
    fn j2() -> Representation<Rationals> {
        Representation::from_ints("J2", &loop_q(), &Rationals, &[2], &[&[0, 0, 1, 0]]).unwrap()
    }
    fn kron() -> Representation<Rationals> {
        Representation::from_ints("P1", &k2(), &Rationals, &[1, 2], &[&[1, 0], &[0, 1]]).unwrap()
    }
    fn two_loops() -> Quiver {
        Quiver::build("L2", &["1"], &[("al", "1", "1"), ("be", "1", "1")]).unwrap()
    }
    /// Basis v,w,x,y1,y2 with al v = w, be v = x, be w = y1, al x = y2.
    fn square_fixture() -> Representation<Rationals> {
        let mut al = vec![0i64; 25];
        let mut be = vec![0i64; 25];
        let at = |r: usize, c: usize| r * 5 + c;
        al[at(1, 0)] = 1;
        al[at(4, 2)] = 1;
        be[at(2, 0)] = 1;
        be[at(3, 1)] = 1;
        Representation::from_ints("sq", &two_loops(), &Rationals, &[5], &[&al, &be]).unwrap()
    }

    #[test]
    fn window_examples() {
        let chars: Vec<Character> = (0..3).map(|k| Character::from_pairs(&[(0, k)])).collect();
        let w = build_cover_window(&loop_q(), &chars);
        assert_eq!(
            (w.quiver().vertex_count(), w.quiver().arrow_count()),
            (3, 2)
        );
        assert!(w.quiver().structure_report().tree);

        let chars = vec![Character::zero(), Character::unit(0), Character::unit(1)];
        let w = build_cover_window(&k2(), &chars);
        assert_eq!(w.quiver().vertex_count(), 6);
        assert_eq!(w.quiver().arrow_count(), 2);
        let a = w.quiver().arrow(0);
        assert_eq!(w.quiver().vertex_id(a.source), "1@");
        assert_eq!(w.quiver().vertex_id(a.target), "2@a:1");

        let empty = build_cover_window(&k2(), &[]);
        assert_eq!(empty.quiver().vertex_count(), 0);
    }

    #[test]
    fn windows_are_interior_covers() {
        for q in [loop_q(), k2(), two_loops()] {
            for r in 0..4 {
                assert!(CoverWindow::ball(&q, 0, r).is_interior_cover());
            }
        }
    }

    #[test]
    fn pushdown_of_line_is_jordan_block() {
        let chars: Vec<Character> = (0..2).map(|k| Character::from_pairs(&[(0, k)])).collect();
        let w = build_cover_window(&loop_q(), &chars);
        let rep =
            Representation::from_ints("line", w.quiver(), &Rationals, &[1, 1], &[&[1]]).unwrap();
        let g = GradedRepresentation::new(w, rep).unwrap();
        let p = pushdown(&g);
        assert_eq!(p.rep.dims(), &DimVector(vec![2]));
        assert_eq!(p.rep.map(0).rank(), 1);
        assert!(p.rep.map(0).mul(p.rep.map(0)).is_zero());
        assert_eq!(p.characters[0], chars);
    }

    #[test]
    fn shift_moves_support() {
        let lift = lift_from_coefficient_quiver(&j2()).unwrap();
        let g = lift.graded;
        let support = |g: &GradedRepresentation<Rationals>| -> Vec<i64> {
            let mut s: Vec<i64> = g
                .support()
                .iter()
                .map(|&k| g.window.point(k).1.get(0))
                .collect();
            s.sort();
            s
        };
        assert_eq!(support(&g), vec![0, 1]);
        let one = Character::unit(0);
        assert_eq!(support(&shift(&g, &one)), vec![-1, 0]);
        assert_eq!(support(&shift(&g, &Character::zero())), vec![0, 1]);
        let back = shift(&shift(&g, &one), &one.neg());
        assert_eq!(back.window.points(), g.window.points());
        assert_eq!(back.rep.maps(), g.rep.maps());
        let two = shift(&shift(&g, &one), &one);
        assert_eq!(support(&two), support(&shift(&g, &one.add(&one))));
        assert_eq!(pushdown(&shift(&g, &one)).rep, pushdown(&g).rep);
    }

    #[test]
    fn lift_examples() {
        let lift = lift_from_coefficient_quiver(&j2()).unwrap();
        assert_eq!(
            lift.characters[0],
            vec![Character::zero(), Character::unit(0)]
        );
        let it = iterate_cover_to_tree(&lift.graded, 3).unwrap();
        assert_eq!(it.n, 0);

        let ident = Representation::from_ints("id", &loop_q(), &Rationals, &[1], &[&[1]]).unwrap();
        match lift_from_coefficient_quiver(&ident) {
            Err(CoverError::Inconsistent { sum, .. }) => assert_eq!(sum, "x:1"),
            other => panic!("unexpected {other:?}"),
        }

        let lift = lift_from_coefficient_quiver(&kron()).unwrap();
        assert_eq!(
            lift.characters,
            vec![
                vec![Character::zero()],
                vec![Character::unit(0), Character::unit(1)]
            ]
        );
        let (support, _) = lift.graded.support_rep();
        assert!(support.quiver().structure_report().tree);
        assert_eq!(support.quiver().vertex_count(), 3);
    }

    #[test]
    fn pushdown_recovers_input() {
        for m in [j2(), kron(), square_fixture()] {
            let lift = lift_from_coefficient_quiver(&m).unwrap();
            let p = pushdown(&lift.graded);
            for (a, arr) in m.quiver().arrows().iter().enumerate() {
                let expected = m
                    .map(a)
                    .select_rows(&lift.permutation[arr.target])
                    .select_cols(&lift.permutation[arr.source]);
                assert_eq!(p.rep.map(a), &expected);
            }
            assert!(lift.graded.window.is_interior_cover());
        }
    }

    #[test]
    fn iteration_separates_square() {
        let m = square_fixture();
        let lift = lift_from_coefficient_quiver(&m).unwrap();
        let it = iterate_cover_to_tree(&lift.graded, 4).unwrap();
        assert_eq!(it.n, 1);
        assert_eq!(it.girth_trace, vec![Some(4), None]);
        assert!(it.support_connected);
        let (support, vmap) = it.graded.support_rep();
        assert_eq!(support.quiver().vertex_count(), 5);
        assert!(vmap.iter().all(|&v| it.vertex_to_base[v] == 0));
        assert!(matches!(
            iterate_cover_to_tree(&lift.graded, 0),
            Err(CoverError::MaxIterations { .. })
        ));
    }

    #[test]
    fn graded_homext_jordan_block() {
        let g = lift_from_coefficient_quiver(&j2()).unwrap().graded;
        let r = graded_homext_check(&g, &g).unwrap();
        assert_eq!((r.base_hom, r.base_ext), (2, 2));
        let mut used: Vec<(i64, usize, usize)> = r
            .shifts_used
            .iter()
            .map(|(xi, h, e)| (xi.get(0), *h, *e))
            .collect();
        used.sort();
        assert_eq!(used, vec![(-1, 1, 0), (0, 1, 0), (1, 0, 1), (2, 0, 1)]);
    }

    #[test]
    fn graded_homext_kronecker_and_zero() {
        let g = lift_from_coefficient_quiver(&kron()).unwrap().graded;
        let r = graded_homext_check(&g, &g).unwrap();
        assert_eq!((r.graded_hom_sum, r.graded_ext_sum), (1, 0));
        assert!(r.shifts_used.iter().all(|s| s.2 == 0));
        let (support, _) = g.support_rep();
        assert!(rigidity_report(&support).exceptional);

        let zero = Representation::zero(&k2(), &Rationals);
        let z = lift_from_coefficient_quiver(&zero).unwrap().graded;
        let r = graded_homext_check(&z, &g).unwrap();
        assert_eq!(
            (r.base_hom, r.base_ext, r.graded_hom_sum, r.graded_ext_sum),
            (0, 0, 0, 0)
        );
    }

    #[test]
    fn graded_homext_on_square_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let m = square_fixture().reduce_mod(&f).unwrap();
        let g = lift_from_coefficient_quiver(&m).unwrap().graded;
        graded_homext_check(&g, &g).unwrap();
    }

    #[test]
    fn girth_grows_on_lifts() {
        let three = Quiver::build(
            "C3",
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        )
        .unwrap();
        for (q, l) in [(loop_q(), 1), (k2(), 2), (three, 3)] {
            assert_eq!(q.reduced_cycle_girth(), Some(l));
            let w = CoverWindow::ball(&q, 0, 2 * l);
            assert!(w.quiver().reduced_cycle_girth().is_none_or(|g| g > l));
        }
        let w = CoverWindow::ball(&two_loops(), 0, 4);
        assert_eq!(w.quiver().reduced_cycle_girth(), Some(4));
    }

    #[test]
    fn character_text_roundtrip() {
        let q = k2();
        let c = Character::parse(&q, "a:2,b:-1").unwrap();
        assert_eq!(c.format(&q), "a:2,b:-1");
        assert_eq!(Character::parse(&q, "").unwrap(), Character::zero());
        assert!(Character::parse(&q, "z:1").is_err());
        assert_eq!(c.add(&c.neg()), Character::zero());
    }
}
