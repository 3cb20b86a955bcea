//! End-to-end verification: rigidity, splitting into summands, lifting to a
//! cover, iterating to a tree, and charting the tree-supported pieces.

use std::fmt;

use crate::chart::{build_chart, verify_chart_bounded, ChartError, DEFAULT_MAX_DIM, MAX_DOMAIN};
use crate::covering::{graded_homext_check, iterate_cover_to_tree, lift_from_coefficient_quiver};
use crate::grassmann::{
    count_subreps, default_primes, grading_fixed_components, summand_fixed_components,
};
use crate::linalg::{Field, PrimeField};
use crate::rep::{decompose, direct_sum, expand, rigidity_report, DimVector, Representation};

pub const MAX_ITERATIONS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub name: &'static str,
    pub lines: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub stages: Vec<StageRecord>,
    /// First failing stage, if any.
    pub failed_at: Option<usize>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.failed_at.is_none()
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stages {
            writeln!(
                f,
                "stage {} {}: {}",
                s.stage,
                s.name,
                if s.passed { "ok" } else { "FAIL" }
            )?;
            for l in &s.lines {
                writeln!(f, "  {l}")?;
            }
        }
        match self.failed_at {
            None => writeln!(f, "verdict=pass"),
            Some(k) => writeln!(f, "verdict=fail stage={k}"),
        }
    }
}

struct Stage {
    record: StageRecord,
}

impl Stage {
    fn new(stage: usize, name: &'static str) -> Self {
        Self {
            record: StageRecord {
                stage,
                name,
                lines: Vec::new(),
                passed: true,
            },
        }
    }
    fn note(&mut self, line: impl Into<String>) {
        self.record.lines.push(line.into());
    }
    fn fail(&mut self, line: impl Into<String>) {
        self.record.passed = false;
        self.note(line);
    }
}

/// Every `x` with `x <= cap` componentwise, in lexicographic order.
fn boxes(cap: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in cap {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=c).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Graded refinements of `e` over a support whose vertex `s` lies over
/// `over[s]` and has dimension `dims[s]`.
fn refinements(e: &DimVector, over: &[usize], dims: &[usize]) -> Vec<DimVector> {
    boxes(dims)
        .into_iter()
        .filter(|x| {
            let mut sums = vec![0usize; e.len()];
            for (s, &k) in x.iter().enumerate() {
                sums[over[s]] += k;
            }
            sums == e.0
        })
        .map(DimVector)
        .collect()
}

/// Runs stages 0 to 4, stopping at the first failure. `seed` drives the
/// summand search and `qs` are the primes used for chart verification.
pub fn verify_pipeline<F: Field>(
    m: &Representation<F>,
    e: &DimVector,
    qs: &[u64],
    seed: u64,
) -> PipelineReport {
    let mut report = PipelineReport {
        stages: Vec::new(),
        failed_at: None,
    };
    let push = |report: &mut PipelineReport, st: Stage| -> bool {
        let ok = st.record.passed;
        if !ok {
            report.failed_at = Some(st.record.stage);
        }
        report.stages.push(st.record);
        ok
    };
    let q = m.quiver();

    let mut st = Stage::new(0, "rigidity");
    let rr = rigidity_report(m);
    if e.len() != q.vertex_count() || !e.le(m.dims()) {
        st.fail(format!("e={} does not fit d={}", e, m.dims()));
    } else if rr.rigid {
        st.note(rr.to_string());
    } else {
        st.fail(format!("{rr}: not rigid"));
    }
    if !push(&mut report, st) {
        return report;
    }

    let mut st = Stage::new(1, "decomposition");
    let summands = match decompose(m, seed) {
        Ok(s) => s,
        Err(err) => {
            st.fail(format!("decompose: {err}"));
            push(&mut report, st);
            return report;
        }
    };
    let expanded = expand(&summands);
    st.note(format!(
        "summands={} classes={}",
        expanded.len(),
        summands.len()
    ));
    for (i, s) in summands.iter().enumerate() {
        let r = rigidity_report(&s.rep);
        st.note(format!(
            "summand {i} dim={} mult={} {}",
            s.rep.dims(),
            s.multiplicity,
            r
        ));
        if !r.rigid {
            st.fail(format!("summand {i} is not rigid"));
        }
    }
    let primes = default_primes(m, e);
    if let Some(p) = m.field().order() {
        st.fail(format!(
            "fixed-locus identities need a representation over Q, not F{p}"
        ));
    } else {
        match direct_sum(q, m.field(), &expanded)
            .map_err(|x| x.to_string())
            .and_then(|ds| summand_fixed_components(&ds, e, &primes).map_err(|x| x.to_string()))
        {
            Ok(fr) => {
                st.note(format!("euler identity {} = {}", fr.lhs, fr.rhs));
                if !fr.holds() {
                    st.fail("summand fixed-locus identity fails");
                }
            }
            Err(err) => st.fail(format!("summand fixed components: {err}")),
        }
    }
    if !push(&mut report, st) {
        return report;
    }

    let mut st = Stage::new(2, "lift");
    let mut lifts = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let lift = match lift_from_coefficient_quiver(&s.rep) {
            Ok(l) => l,
            Err(err) => {
                st.fail(format!("summand {i}: {err}"));
                continue;
            }
        };
        match graded_homext_check(&lift.graded, &lift.graded) {
            Ok(h) => {
                st.note(format!(
                    "summand {i} hom={} ext={} graded_hom={} graded_ext={} shifts={}",
                    h.base_hom,
                    h.base_ext,
                    h.graded_hom_sum,
                    h.graded_ext_sum,
                    h.shifts_used.len()
                ));
                if h.graded_ext_sum != 0 || h.graded_hom_sum != h.base_hom {
                    st.fail(format!("summand {i}: lift is not rigid"));
                }
            }
            Err(err) => st.fail(format!("summand {i}: {err}")),
        }
        lifts.push(lift);
    }
    if !push(&mut report, st) {
        return report;
    }

    let mut st = Stage::new(3, "tree");
    let mut trees = Vec::new();
    for (i, lift) in lifts.iter().enumerate() {
        match iterate_cover_to_tree(&lift.graded, MAX_ITERATIONS) {
            Ok(it) => {
                let trace: Vec<String> = it
                    .girth_trace
                    .iter()
                    .map(|g| g.map_or("none".to_string(), |g| g.to_string()))
                    .collect();
                st.note(format!(
                    "summand {i} n={} girth={} connected={}",
                    it.n,
                    trace.join(","),
                    it.support_connected
                ));
                let finite: Vec<usize> = it.girth_trace.iter().flatten().copied().collect();
                if finite.windows(2).any(|w| w[1] <= w[0]) {
                    st.fail(format!("summand {i}: girth does not grow"));
                }
                if !it.support_connected {
                    st.fail(format!("summand {i}: support is not connected"));
                }
                trees.push(it);
            }
            Err(err) => st.fail(format!("summand {i}: {err}")),
        }
    }
    if !push(&mut report, st) {
        return report;
    }

    let mut st = Stage::new(4, "charts");
    let total = m.dims();
    for (i, (s, (lift, it))) in summands.iter().zip(lifts.iter().zip(&trees)).enumerate() {
        let d = s.rep.dims();
        let others = total.checked_sub(d).expect("summand fits");
        let pieces: Vec<DimVector> = boxes(&d.0)
            .into_iter()
            .map(DimVector)
            .filter(|x| x.le(e) && e.checked_sub(x).is_some_and(|rest| rest.le(&others)))
            .collect();
        let (tree, vmap) = it.graded.support_rep();
        let over: Vec<usize> = vmap.iter().map(|&w| it.vertex_to_base[w]).collect();
        for er in &pieces {
            let sub_primes = default_primes(&s.rep, er);
            match grading_fixed_components(&lift.graded, er, &sub_primes) {
                Ok(fr) => {
                    st.note(format!(
                        "summand {i} e={} grading identity {} = {}",
                        er, fr.lhs, fr.rhs
                    ));
                    if !fr.holds() {
                        st.fail(format!("summand {i} e={er}: grading identity fails"));
                    }
                }
                Err(err) => st.fail(format!("summand {i} e={er}: {err}")),
            }
            for ehat in refinements(er, &over, &tree.dims().0) {
                let label = format!("summand {i} e={} piece={}", er, ehat);
                let chart = match build_chart(&tree, &ehat) {
                    Ok(c) => c,
                    Err(ChartError::GenericStratumEmpty { .. }) => {
                        let empty = qs.iter().all(|&p| {
                            PrimeField::new(p)
                                .ok()
                                .and_then(|f| tree.reduce_mod(&f).ok())
                                .and_then(|r| count_subreps(&r, &ehat).ok())
                                == Some(0)
                        });
                        if empty {
                            st.note(format!("{label} empty"));
                        } else {
                            st.fail(format!(
                                "{label}: generic stratum misses a nonempty Grassmannian"
                            ));
                        }
                        continue;
                    }
                    Err(err) => {
                        st.fail(format!("{label}: {err}"));
                        continue;
                    }
                };
                for &p in qs {
                    let dim = chart.dim();
                    let domain = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
                    if dim > DEFAULT_MAX_DIM || domain > MAX_DOMAIN as u128 {
                        st.note(format!("{label} chart dim={dim} q={p} skipped"));
                        continue;
                    }
                    match verify_chart_bounded(&chart, p, DEFAULT_MAX_DIM) {
                        Ok(v) => {
                            st.note(format!("{label} chart {v}"));
                            if !v.within_thin_set(4) {
                                st.fail(format!(
                                    "{label}: chart outside the thin-set budget at q={p}"
                                ));
                            }
                        }
                        Err(err) => st.fail(format!("{label} q={p}: {err}")),
                    }
                }
            }
        }
    }
    push(&mut report, st);
    report
}
