//! Explicit rational charts of quiver Grassmannians of rigid tree
//! representations, built by peeling leaves.
//!
//! A chart is an ordered list of peel steps. At a sink leaf `l` with incoming
//! arrow `b: k -> l`, a point `U'` of the smaller Grassmannian determines
//! `W = M_b(U'_k)` and the fibre is the set of `U_l` containing `W`; on the
//! open set where `W` has the generic rank and stays complementary to a frozen
//! set of coordinate columns, the fibre is an affine big cell. At a source
//! leaf the fibre is a Grassmannian of the preimage `M_b^{-1}(U'_k)`, trivialised
//! by freezing the pivot columns of that preimage. The last remaining vertex
//! contributes the big Schubert cell of an ordinary Grassmannian.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grassmann::{count_subreps, GrassError, SubrepPoint};
use crate::linalg::{next_prime, Field, LinalgError, Matrix, PrimeField, Subspace};
use crate::rep::{euler_form, rigidity_report, DimVector, RepError, Representation};

const SAMPLES: usize = 64;
const SEED: u64 = 0x0c4a_7715;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartError {
    #[error("quiver `{0}` is not a tree")]
    NotTree(String),
    #[error("representation is not rigid (ext={0})")]
    NotRigid(usize),
    #[error("quiver has no vertices")]
    Empty,
    #[error("dimension vector {e} exceeds {d}")]
    ExceedsDims { e: String, d: String },
    #[error("generic stratum is empty at leaf `{leaf}`: need {needed} but e={available}")]
    GenericStratumEmpty {
        leaf: String,
        needed: usize,
        available: usize,
    },
    #[error("chart dimension {chart} differs from <e,d-e> = {expected}")]
    DimensionMismatch { chart: usize, expected: i64 },
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("out of domain at leaf `{leaf}`: rank {found}, chart expects {expected}")]
    RankDrop {
        leaf: String,
        expected: usize,
        found: usize,
    },
    #[error("out of domain at leaf `{leaf}`: frozen pivot columns degenerate")]
    PivotDegenerate { leaf: String },
    #[error("chart of dimension {dim} over F_{q} is beyond the verification budget")]
    TooLarge { dim: usize, q: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Grass(#[from] GrassError),
}

impl ChartError {
    pub fn is_out_of_domain(&self) -> bool {
        matches!(
            self,
            ChartError::RankDrop { .. } | ChartError::PivotDegenerate { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelMode {
    Sink,
    Source,
}

impl PeelMode {
    fn token(self) -> &'static str {
        match self {
            PeelMode::Sink => "sink",
            PeelMode::Source => "source",
        }
    }
}

/// One leaf removal.
///
/// For a sink, `r` is the generic rank of `M_b` on `U'_k` and `pivots` are the
/// columns whose unit vectors complete `W` to a basis of `M_l`. For a source,
/// `r` is the generic codimension of the preimage of `U'_k` in `M_l` and
/// `pivots` are the frozen pivot columns of that preimage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    pub leaf: usize,
    pub neighbour: usize,
    pub arrow: usize,
    pub mode: PeelMode,
    pub r: usize,
    pub cell: (usize, usize),
    pub pivots: Vec<usize>,
}

impl PeelStep {
    pub fn cell_dim(&self) -> usize {
        self.cell.0 * self.cell.1
    }
}

#[derive(Debug, Clone)]
pub struct RationalChart<F: Field> {
    rep: Representation<F>,
    e: DimVector,
    base: usize,
    steps: Vec<PeelStep>,
}

fn big_cell<F: Field>(
    f: &F,
    rows: usize,
    width: usize,
    cols: &[usize],
    x: &[F::Elem],
) -> Vec<Vec<F::Elem>> {
    let free = cols.len() - rows;
    (0..rows)
        .map(|i| {
            let mut v = vec![f.zero(); width];
            v[cols[i]] = f.one();
            for j in 0..free {
                v[cols[rows + j]] = x[i * free + j].clone();
            }
            v
        })
        .collect()
}

/// Leaves of the subtree spanned by `alive`, sinks first, each group by
/// vertex id.
fn leaf_order<F: Field>(m: &Representation<F>, alive: &[bool]) -> Vec<(usize, usize)> {
    let q = m.quiver();
    let mut sinks = Vec::new();
    let mut sources = Vec::new();
    for v in (0..q.vertex_count()).filter(|&v| alive[v]) {
        let touching: Vec<usize> = q
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| (a.source == v || a.target == v) && alive[a.source] && alive[a.target])
            .map(|(i, _)| i)
            .collect();
        if touching.len() != 1 {
            continue;
        }
        let arrow = touching[0];
        if q.arrow(arrow).target == v {
            sinks.push((v, arrow));
        } else {
            sources.push((v, arrow));
        }
    }
    let by_id = |x: &(usize, usize), y: &(usize, usize)| q.vertex_id(x.0).cmp(q.vertex_id(y.0));
    sinks.sort_by(by_id);
    sources.sort_by(by_id);
    sinks.into_iter().chain(sources).collect()
}

/// Evaluates a partial chart (`base` plus `steps`, outermost first) on a
/// representation with the same quiver and dimension vector.
fn evaluate<G: Field>(
    rep: &Representation<G>,
    e: &DimVector,
    base: usize,
    steps: &[PeelStep],
    coords: &[G::Elem],
) -> Result<Vec<Option<Subspace<G>>>, ChartError> {
    let f = rep.field();
    let q = rep.quiver();
    let mut spaces: Vec<Option<Subspace<G>>> = vec![None; q.vertex_count()];
    let (db, eb) = (rep.dim(base), e[base]);
    let order: Vec<usize> = (0..db).collect();
    let mut at = eb * (db - eb);
    spaces[base] = Some(Subspace::span(
        f,
        db,
        &big_cell(f, eb, db, &order, &coords[..at]),
    ));
    for step in steps.iter().rev() {
        let l = step.leaf;
        let n = step.cell_dim();
        let x = &coords[at..at + n];
        at += n;
        let inner = spaces[step.neighbour]
            .as_ref()
            .expect("neighbour evaluated first");
        let beta = rep.map(step.arrow);
        let leaf = || q.vertex_id(l).to_string();
        let dl = rep.dim(l);
        let u = match step.mode {
            PeelMode::Sink => {
                let w = inner.image(beta);
                if w.dim() != step.r {
                    return Err(ChartError::RankDrop {
                        leaf: leaf(),
                        expected: step.r,
                        found: w.dim(),
                    });
                }
                let complement: Vec<usize> = (0..dl).filter(|c| !step.pivots.contains(c)).collect();
                if !w.basis().select_cols(&complement).is_invertible() {
                    return Err(ChartError::PivotDegenerate { leaf: leaf() });
                }
                let mut rows: Vec<Vec<G::Elem>> = (0..w.dim()).map(|i| w.row(i).to_vec()).collect();
                rows.extend(big_cell(f, step.cell.0, dl, &step.pivots, x));
                Subspace::span(f, dl, &rows)
            }
            PeelMode::Source => {
                let pre = inner.preimage(beta);
                let codim = dl - pre.dim();
                if codim != step.r {
                    return Err(ChartError::RankDrop {
                        leaf: leaf(),
                        expected: step.r,
                        found: codim,
                    });
                }
                let square = pre.basis().select_cols(&step.pivots);
                let Ok(inv) = square.inverse() else {
                    return Err(ChartError::PivotDegenerate { leaf: leaf() });
                };
                let normalised = inv.mul(&pre.basis());
                let s = pre.dim();
                let order: Vec<usize> = (0..s).collect();
                let coeffs = big_cell(f, step.cell.0, s, &order, x);
                let cm = Matrix::from_rows(f, s, coeffs);
                Subspace::from_rows(cm.mul(&normalised))
            }
        };
        spaces[l] = Some(u);
    }
    Ok(spaces)
}

fn sample_coords<F: Field>(f: &F, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<F::Elem>> {
    if dim == 0 {
        return vec![Vec::new()];
    }
    let p = next_prime(2 * dim as u64);
    let mut out: Vec<Vec<F::Elem>> = (0..SAMPLES)
        .map(|_| {
            (0..dim)
                .map(|_| f.from_int(rng.gen_range(0..p) as i64))
                .collect()
        })
        .collect();
    out.push(vec![f.zero(); dim]);
    out.push(vec![f.one(); dim]);
    out
}

/// Generic rank of `M_b` restricted to `U'_k` over points of the inner chart
/// (`base`, `steps`). Sampled points outside the inner chart's domain are
/// skipped.
fn generic_data<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
    base: usize,
    steps: &[PeelStep],
    leaf: usize,
    arrow: usize,
    mode: PeelMode,
) -> Result<(usize, Vec<usize>), ChartError> {
    let inner_dim =
        e[base] * (m.dim(base) - e[base]) + steps.iter().map(PeelStep::cell_dim).sum::<usize>();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (leaf as u64).wrapping_mul(0x9e37_79b9));
    let a = m.quiver().arrow(arrow);
    let neighbour = if mode == PeelMode::Sink {
        a.source
    } else {
        a.target
    };
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut last_err = None;
    for coords in sample_coords(m.field(), inner_dim, &mut rng) {
        let spaces = match evaluate(m, e, base, steps, &coords) {
            Ok(s) => s,
            Err(err) if err.is_out_of_domain() => {
                last_err = Some(err);
                continue;
            }
            Err(err) => return Err(err),
        };
        let inner = spaces[neighbour]
            .as_ref()
            .expect("inner point covers the neighbour");
        let (r, pivots) = match mode {
            PeelMode::Sink => {
                let w = inner.image(m.map(arrow));
                (w.dim(), w.pivots().to_vec())
            }
            PeelMode::Source => {
                let pre = inner.preimage(m.map(arrow));
                (m.dim(leaf) - pre.dim(), pre.pivots().to_vec())
            }
        };
        let better = match &best {
            None => true,
            Some((br, bp)) => r > *br || (r == *br && pivots < *bp),
        };
        if better {
            best = Some((r, pivots));
        }
    }
    let (r, pivots) = best.ok_or_else(|| last_err.expect("at least one sample"))?;
    match mode {
        PeelMode::Sink => Ok((
            r,
            (0..m.dim(leaf)).filter(|c| !pivots.contains(c)).collect(),
        )),
        PeelMode::Source => Ok((r, pivots)),
    }
}

impl<F: Field> RationalChart<F> {
    pub fn representation(&self) -> &Representation<F> {
        &self.rep
    }
    pub fn e(&self) -> &DimVector {
        &self.e
    }
    pub fn base(&self) -> usize {
        self.base
    }
    /// Peel steps, outermost leaf first.
    pub fn steps(&self) -> &[PeelStep] {
        &self.steps
    }
    pub fn base_cell(&self) -> (usize, usize) {
        let (d, e) = (self.rep.dim(self.base), self.e[self.base]);
        (e, d - e)
    }
    pub fn dim(&self) -> usize {
        let (a, b) = self.base_cell();
        a * b + self.steps.iter().map(PeelStep::cell_dim).sum::<usize>()
    }

    /// Evaluates the chart. Coordinates are ordered base cell first, then the
    /// steps from the innermost leaf outwards, each cell row by row.
    pub fn eval(&self, coords: &[F::Elem]) -> Result<SubrepPoint<F>, ChartError> {
        self.eval_on(&self.rep, coords)
    }

    /// Evaluates the same chart data against another copy of the target, for
    /// instance its reduction modulo a prime.
    pub fn eval_on<G: Field>(
        &self,
        rep: &Representation<G>,
        coords: &[G::Elem],
    ) -> Result<SubrepPoint<G>, ChartError> {
        if coords.len() != self.dim() {
            return Err(ChartError::CoordinateCount {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let spaces = evaluate(rep, &self.e, self.base, &self.steps, coords)?;
        Ok(SubrepPoint {
            spaces: spaces
                .into_iter()
                .map(|s| s.expect("every vertex is charted"))
                .collect(),
        })
    }

    /// Parses a comma-separated coordinate list and evaluates.
    pub fn eval_str(&self, coords: &str) -> Result<SubrepPoint<F>, ChartError> {
        let f = self.rep.field();
        let parsed = coords
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| f.parse_elem(s))
            .collect::<Result<Vec<_>, _>>()?;
        self.eval(&parsed)
    }

    pub fn to_text(&self) -> String {
        let q = self.rep.quiver();
        let mut out = format!("chart {}\n", self.rep.name());
        out += &format!("e {}\n", self.e.format(q));
        out += &format!("dim {}\n", self.dim());
        let (a, b) = self.base_cell();
        out += &format!("base {} cell={}x{}\n", q.vertex_id(self.base), a, b);
        for s in &self.steps {
            let pivots = if s.pivots.is_empty() {
                "-".to_string()
            } else {
                s.pivots
                    .iter()
                    .map(|c| (c + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out += &format!(
                "peel {} {} r={} cell={}x{} pivots={}\n",
                q.vertex_id(s.leaf),
                s.mode.token(),
                s.r,
                s.cell.0,
                s.cell.1,
                pivots
            );
        }
        out
    }

    /// Rebuilds a chart from its text form against `rep`, checking that every
    /// recorded step is consistent with the quiver and dimensions.
    pub fn from_text(rep: &Representation<F>, text: &str) -> Result<Self, ChartError> {
        let q = rep.quiver();
        let mut e = None;
        let mut dim = None;
        let mut base = None;
        let mut steps = Vec::new();
        let err = |line: usize, msg: String| ChartError::Parse { line, msg };
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let field_of = |w: &str, key: &str| -> Result<String, ChartError> {
                w.strip_prefix(key)
                    .map(str::to_string)
                    .ok_or_else(|| err(ln, format!("expected `{key}...`, found `{w}`")))
            };
            let vertex = |id: &str| {
                q.vertex(id)
                    .ok_or_else(|| err(ln, format!("unknown vertex `{id}`")))
            };
            let cell = |w: &str| -> Result<(usize, usize), ChartError> {
                let body = field_of(w, "cell=")?;
                let (a, b) = body
                    .split_once('x')
                    .ok_or_else(|| err(ln, format!("bad cell `{body}`")))?;
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(ln, format!("bad cell `{body}`")))
                };
                Ok((num(a)?, num(b)?))
            };
            match words[0] {
                "chart" => {}
                "e" if words.len() == 2 => {
                    e = Some(DimVector::parse(q, words[1]).map_err(|x| err(ln, x.to_string()))?);
                }
                "dim" if words.len() == 2 => {
                    dim = Some(
                        words[1]
                            .parse::<usize>()
                            .map_err(|_| err(ln, "bad dimension".into()))?,
                    );
                }
                "base" if words.len() == 3 => {
                    base = Some((vertex(words[1])?, cell(words[2])?));
                }
                "peel" if words.len() == 6 => {
                    let leaf = vertex(words[1])?;
                    let mode = match words[2] {
                        "sink" => PeelMode::Sink,
                        "source" => PeelMode::Source,
                        other => return Err(err(ln, format!("unknown mode `{other}`"))),
                    };
                    let r = field_of(words[3], "r=")?
                        .parse::<usize>()
                        .map_err(|_| err(ln, "bad rank".into()))?;
                    let c = cell(words[4])?;
                    let pv = field_of(words[5], "pivots=")?;
                    let pivots = if pv == "-" {
                        Vec::new()
                    } else {
                        pv.split(',')
                            .map(|s| match s.parse::<usize>() {
                                Ok(k) if k >= 1 => Ok(k - 1),
                                _ => Err(err(ln, format!("bad pivot `{s}`"))),
                            })
                            .collect::<Result<Vec<_>, _>>()?
                    };
                    let arrows: Vec<usize> = q.in_arrows(leaf).chain(q.out_arrows(leaf)).collect();
                    if arrows.len() != 1 {
                        return Err(err(ln, format!("`{}` is not a leaf", words[1])));
                    }
                    let arrow = arrows[0];
                    let a = q.arrow(arrow);
                    let (neighbour, expect_mode) = if a.target == leaf {
                        (a.source, PeelMode::Sink)
                    } else {
                        (a.target, PeelMode::Source)
                    };
                    if mode != expect_mode {
                        return Err(err(ln, format!("`{}` is not a {}", words[1], mode.token())));
                    }
                    steps.push(PeelStep {
                        leaf,
                        neighbour,
                        arrow,
                        mode,
                        r,
                        cell: c,
                        pivots,
                    });
                }
                other => return Err(err(ln, format!("unexpected line starting with `{other}`"))),
            }
        }
        let e = e.ok_or_else(|| err(0, "missing `e` line".into()))?;
        let (base, base_cell) = base.ok_or_else(|| err(0, "missing `base` line".into()))?;
        let chart = RationalChart {
            rep: rep.clone(),
            e,
            base,
            steps,
        };
        if chart.base_cell() != base_cell {
            return Err(err(0, "base cell does not match the dimensions".into()));
        }
        for s in &chart.steps {
            let (dl, el) = (rep.dim(s.leaf), chart.e[s.leaf]);
            let expected = match s.mode {
                PeelMode::Sink => (el.checked_sub(s.r), dl.checked_sub(el), dl.checked_sub(s.r)),
                PeelMode::Source => (Some(el), dl.checked_sub(s.r + el), dl.checked_sub(s.r)),
            };
            let ok = matches!(expected, (Some(a), Some(b), Some(p)) if (a, b) == s.cell && p == s.pivots.len())
                && s.pivots.iter().all(|&c| c < dl);
            if !ok {
                return Err(err(
                    0,
                    format!("inconsistent step at `{}`", rep.quiver().vertex_id(s.leaf)),
                ));
            }
        }
        if dim.is_some_and(|d| d != chart.dim()) {
            return Err(err(0, "recorded dimension does not match the steps".into()));
        }
        Ok(chart)
    }
}

/// Builds a chart by repeatedly removing a leaf: sinks before sources, each
/// group in vertex-id order, falling back to later leaves when needed.
pub fn build_chart<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
) -> Result<RationalChart<F>, ChartError> {
    let q = m.quiver();
    if q.vertex_count() == 0 {
        return Err(ChartError::Empty);
    }
    if !q.structure_report().tree {
        return Err(ChartError::NotTree(q.name().to_string()));
    }
    let report = rigidity_report(m);
    if !report.rigid {
        return Err(ChartError::NotRigid(report.ext_dim));
    }
    let chart = build_unchecked(m, e)?;
    let expected = euler_form(q, e, &m.dims().checked_sub(e).expect("checked above"));
    if chart.dim() as i64 != expected {
        return Err(ChartError::DimensionMismatch {
            chart: chart.dim(),
            expected,
        });
    }
    Ok(chart)
}

/// The same peeling without the rigidity and dimension assertions. Only the
/// tree shape is required.
pub fn build_unchecked<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
) -> Result<RationalChart<F>, ChartError> {
    let q = m.quiver();
    if q.vertex_count() == 0 {
        return Err(ChartError::Empty);
    }
    if !q.structure_report().tree {
        return Err(ChartError::NotTree(q.name().to_string()));
    }
    if e.len() != q.vertex_count() || !e.le(m.dims()) {
        return Err(ChartError::ExceedsDims {
            e: e.to_string(),
            d: m.dims().to_string(),
        });
    }
    let alive = vec![true; q.vertex_count()];
    let (base, steps) = peel(m, e, &alive)?;
    Ok(RationalChart {
        rep: m.clone(),
        e: e.clone(),
        base,
        steps,
    })
}

/// Charts the subtree spanned by `alive`. Leaves are tried in preference
/// order; a leaf whose projection misses the generic stratum of the inner
/// Grassmannian is skipped in favour of the next one.
fn peel<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
    alive: &[bool],
) -> Result<(usize, Vec<PeelStep>), ChartError> {
    let q = m.quiver();
    if alive.iter().filter(|&&a| a).count() == 1 {
        return Ok((
            alive.iter().position(|&a| a).expect("one vertex"),
            Vec::new(),
        ));
    }
    let mut first_err = None;
    for (leaf, arrow) in leaf_order(m, alive) {
        let mut rest = alive.to_vec();
        rest[leaf] = false;
        let attempt = peel(m, e, &rest).and_then(|(base, mut steps)| {
            let a = q.arrow(arrow);
            let mode = if a.target == leaf {
                PeelMode::Sink
            } else {
                PeelMode::Source
            };
            let neighbour = if mode == PeelMode::Sink {
                a.source
            } else {
                a.target
            };
            let (r, pivots) = generic_data(m, e, base, &steps, leaf, arrow, mode)?;
            let (dl, el) = (m.dim(leaf), e[leaf]);
            let empty = |needed, available| ChartError::GenericStratumEmpty {
                leaf: q.vertex_id(leaf).to_string(),
                needed,
                available,
            };
            let cell = match mode {
                PeelMode::Sink => (el.checked_sub(r).ok_or_else(|| empty(r, el))?, dl - el),
                PeelMode::Source => (
                    el,
                    (dl - r).checked_sub(el).ok_or_else(|| empty(el, dl - r))?,
                ),
            };
            steps.insert(
                0,
                PeelStep {
                    leaf,
                    neighbour,
                    arrow,
                    mode,
                    r,
                    cell,
                    pivots,
                },
            );
            Ok((base, steps))
        });
        match attempt {
            Ok(done) => return Ok(done),
            Err(err @ ChartError::GenericStratumEmpty { .. }) => {
                first_err.get_or_insert(err);
            }
            Err(err) => return Err(err),
        }
    }
    Err(first_err.expect("a tree with two or more vertices has a leaf"))
}

/// Tallies of a full evaluation of a chart over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartVerification {
    pub q: u64,
    pub dim: usize,
    pub domain_size: u64,
    pub image_size: u64,
    pub collisions: u64,
    pub rank_drops: u64,
    pub pivot_failures: u64,
    pub unclosed: u64,
    pub total_points: u64,
}

impl ChartVerification {
    pub fn out_of_domain(&self) -> u64 {
        self.rank_drops + self.pivot_failures
    }

    pub fn dominance_ratio(&self) -> f64 {
        if self.total_points == 0 {
            return 1.0;
        }
        self.image_size as f64 / self.total_points as f64
    }

    /// Collisions, misses and out-of-domain failures each bounded by
    /// `budget / q` of the relevant population.
    pub fn within_thin_set(&self, budget: u64) -> bool {
        let q = self.q;
        self.unclosed == 0
            && self.collisions * q <= budget * self.domain_size
            && self.out_of_domain() * q <= budget * self.domain_size
            && (self.total_points - self.image_size.min(self.total_points)) * q
                <= budget * self.total_points
    }
}

impl fmt::Display for ChartVerification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} dim={} domain={} image={} collisions={} out_of_domain={} rank_drops={} pivot_failures={} unclosed={} total={} ratio={}/{}",
            self.q,
            self.dim,
            self.domain_size,
            self.image_size,
            self.collisions,
            self.out_of_domain(),
            self.rank_drops,
            self.pivot_failures,
            self.unclosed,
            self.total_points,
            self.image_size,
            self.total_points
        )
    }
}

pub const DEFAULT_MAX_DIM: usize = 4;
pub const MAX_DOMAIN: u64 = 1_000_000;

pub fn verify_chart<F: Field>(
    chart: &RationalChart<F>,
    q: u64,
) -> Result<ChartVerification, ChartError> {
    verify_chart_bounded(chart, q, DEFAULT_MAX_DIM)
}

/// Evaluates the chart at every point of `F_q^dim` (split across threads)
/// and compares the image with the enumerated Grassmannian.
pub fn verify_chart_bounded<F: Field>(
    chart: &RationalChart<F>,
    q: u64,
    max_dim: usize,
) -> Result<ChartVerification, ChartError> {
    let field = PrimeField::new(q)?;
    let dim = chart.dim();
    let domain = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if dim > max_dim || domain > MAX_DOMAIN as u128 {
        return Err(ChartError::TooLarge { dim, q });
    }
    let domain = domain as u64;
    let rep = chart.rep.reduce_mod(&field)?;
    let total_points = count_subreps(&rep, &chart.e)?;
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(8) as u64;
    let chunk = domain.div_ceil(workers).max(1);
    type Tally = (HashSet<SubrepPoint<PrimeField>>, u64, u64, u64, u64);
    let tallies: Vec<Result<Tally, ChartError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let rep = &rep;
                scope.spawn(move || {
                    let mut seen = HashSet::new();
                    let (mut ok, mut drops, mut pivots, mut unclosed) = (0u64, 0u64, 0u64, 0u64);
                    let start = w * chunk;
                    let end = ((w + 1) * chunk).min(domain);
                    for idx in start..end {
                        let mut rest = idx;
                        let coords: Vec<u64> = (0..dim)
                            .map(|_| {
                                let d = rest % q;
                                rest /= q;
                                d
                            })
                            .collect();
                        match chart.eval_on(rep, &coords) {
                            Ok(p) => {
                                ok += 1;
                                if !p.is_closed(rep) || p.dims() != chart.e {
                                    unclosed += 1;
                                }
                                seen.insert(p);
                            }
                            Err(ChartError::RankDrop { .. }) => drops += 1,
                            Err(ChartError::PivotDegenerate { .. }) => pivots += 1,
                            Err(other) => return Err(other),
                        }
                    }
                    Ok((seen, ok, drops, pivots, unclosed))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut image = HashSet::new();
    let (mut ok, mut rank_drops, mut pivot_failures, mut unclosed) = (0, 0, 0, 0);
    for t in tallies {
        let (seen, a, b, c, d) = t?;
        image.extend(seen);
        ok += a;
        rank_drops += b;
        pivot_failures += c;
        unclosed += d;
    }
    let image_size = image.len() as u64;
    Ok(ChartVerification {
        q,
        dim,
        domain_size: domain,
        image_size,
        collisions: ok - image_size,
        rank_drops,
        pivot_failures,
        unclosed,
        total_points,
    })
}
