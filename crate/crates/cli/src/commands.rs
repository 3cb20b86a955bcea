use std::fmt::Write as _;

use qgl_core::chart::{build_chart, verify_chart, ChartError};
use qgl_core::covering::{
    graded_homext_check, iterate_cover_to_tree, lift_from_coefficient_quiver, CoverError,
    GradedRepresentation,
};
use qgl_core::grassmann::{
    bb_partition_grading, bb_partition_summand, count_subreps, counting_polynomial, default_primes,
    grading_fixed_components, summand_fixed_components, GrassError,
};
use qgl_core::io::{format_graded, parse_files, AnyGraded, AnyRep, Bundle, IoError};
use qgl_core::linalg::{Field, LinalgError, PrimeField};
use qgl_core::pipeline::verify_pipeline;
use qgl_core::rep::{
    decompose, direct_sum, euler_form, expand, hom_ext_dims, reflect, rigidity_report, DimVector,
    RepError, Representation,
};

use super::{ChartCmd, Command, CoverCmd, GrassCmd, Inputs, VerifyCmd};

pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Self { text, ok: true }
    }
    fn fail(text: String) -> Self {
        Self { text, ok: false }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Grass(#[from] GrassError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Usage(String),
}

type Res = Result<Outcome, CliError>;

macro_rules! with_rep {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            AnyRep::Rational($m) => $body,
            AnyRep::Prime($m) => $body,
        }
    };
}

macro_rules! with_graded {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            AnyGraded::Rational($g) => $body,
            AnyGraded::Prime($g) => $body,
        }
    };
}

const DEFAULT_SEED: u64 = 0;

fn seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("QGL_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("QGL_SEED must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn primes_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            let p: u64 = x
                .parse()
                .map_err(|_| CliError::Usage(format!("bad prime `{x}`")))?;
            PrimeField::new(p)?;
            Ok(p)
        })
        .collect()
}

fn load(inputs: &Inputs) -> Result<Bundle, CliError> {
    Ok(parse_files(&inputs.files)?)
}

fn dimvec<F: Field>(m: &Representation<F>, e: &str) -> Result<DimVector, CliError> {
    let e = DimVector::parse(m.quiver(), e)?;
    if !e.le(m.dims()) {
        return Err(CliError::Usage(format!("e={} exceeds d={}", e, m.dims())));
    }
    Ok(e)
}

/// The representation over `F_q`: reduced from `Q`, or unchanged when it
/// already lives over `F_q`.
fn at_prime<F: Field>(
    m: &Representation<F>,
    q: Option<u64>,
) -> Result<Representation<PrimeField>, CliError> {
    let q = match (m.field().order(), q) {
        (Some(p), None) => p,
        (Some(p), Some(q)) if p != q => {
            return Err(CliError::Usage(format!(
                "representation is over F_{p}, cannot use q={q}"
            )))
        }
        (_, Some(q)) => q,
        (None, None) => return Err(CliError::Usage("--q is required over Q".into())),
    };
    Ok(m.reduce_mod(&PrimeField::new(q)?)?)
}

fn graded_at_prime<F: Field>(
    g: &GradedRepresentation<F>,
    q: u64,
) -> Result<GradedRepresentation<PrimeField>, CliError> {
    let rep = at_prime(&g.rep, Some(q))?;
    Ok(GradedRepresentation::new(g.window.clone(), rep)?)
}

/// Errors that mean an assertion about the mathematics failed rather than
/// that the input was malformed.
fn is_verification(err: &CliError) -> bool {
    match err {
        CliError::Grass(g) => matches!(
            g,
            GrassError::NotPolynomial { .. }
                | GrassError::NonInteger(_)
                | GrassError::DegreeMismatch { .. }
                | GrassError::LeadingCoefficient(_)
                | GrassError::NegativeDegree(_)
                | GrassError::IdentityFailure { .. }
        ),
        CliError::Cover(c) => matches!(
            c,
            CoverError::HomExtMismatch { .. }
                | CoverError::MaxIterations { .. }
                | CoverError::Inconsistent { .. }
        ),
        CliError::Chart(c) => {
            c.is_out_of_domain()
                || matches!(
                    c,
                    ChartError::DimensionMismatch { .. } | ChartError::GenericStratumEmpty { .. }
                )
        }
        _ => false,
    }
}

pub fn run(cmd: Command) -> Res {
    match dispatch(cmd) {
        Err(err) if is_verification(&err) => {
            Ok(Outcome::fail(format!("verification failed: {err}\n")))
        }
        other => other,
    }
}

fn dispatch(cmd: Command) -> Res {
    match cmd {
        Command::Euler { inputs, a, b } => {
            let bundle = load(&inputs)?;
            let rep = bundle.first_rep()?;
            with_rep!(rep, m => {
                let a = match a {
                    Some(s) => DimVector::parse(m.quiver(), &s)?,
                    None => m.dims().clone(),
                };
                let b = match b {
                    Some(s) => DimVector::parse(m.quiver(), &s)?,
                    None => a.clone(),
                };
                Ok(Outcome::pass(format!("euler={}\n", euler_form(m.quiver(), &a, &b))))
            })
        }
        Command::Homext { inputs } => {
            let bundle = load(&inputs)?;
            let first = bundle.first_rep()?;
            let second = bundle.reps.get(1).unwrap_or(first);
            let text = match (first, second) {
                (AnyRep::Rational(m), AnyRep::Rational(n)) => homext_text(m, n)?,
                (AnyRep::Prime(m), AnyRep::Prime(n)) => homext_text(m, n)?,
                _ => return Err(RepError::FieldMismatch.into()),
            };
            Ok(Outcome::pass(text))
        }
        Command::Rigid { inputs } => {
            let bundle = load(&inputs)?;
            with_rep!(bundle.first_rep()?, m => {
                let r = rigidity_report(m);
                Ok(Outcome::pass(format!(
                    "rigid={} ext={} end={} exceptional={}\n",
                    r.rigid, r.ext_dim, r.end_dim, r.exceptional
                )))
            })
        }
        Command::Decompose { inputs, seed: s } => {
            let bundle = load(&inputs)?;
            let s = seed(s)?;
            with_rep!(bundle.first_rep()?, m => {
                let parts = decompose(m, s)?;
                let mut out = format!("summands={}\n", parts.iter().map(|p| p.multiplicity).sum::<usize>());
                for (i, p) in parts.iter().enumerate() {
                    let r = rigidity_report(&p.rep);
                    let _ = writeln!(out, "summand {i} dim={} mult={} {}", p.rep.dims(), p.multiplicity, r);
                    out += &p.rep.clone().with_name(format!("{}_{i}", m.name())).to_string();
                }
                Ok(Outcome::pass(out))
            })
        }
        Command::Reflect { inputs, at, e } => {
            let bundle = load(&inputs)?;
            with_rep!(bundle.first_rep()?, m => {
                let l = m
                    .quiver()
                    .vertex(&at)
                    .ok_or_else(|| CliError::Usage(format!("unknown vertex `{at}`")))?;
                let e = match e {
                    Some(s) => dimvec(m, &s)?,
                    None => m.dims().clone(),
                };
                let (r, se) = reflect(m, l, &e)?;
                Ok(Outcome::pass(format!(
                    "{}{}sigma_e={}\n",
                    r.quiver(),
                    r,
                    se.format(r.quiver())
                )))
            })
        }
        Command::Grass { action } => grass(action),
        Command::Cover { action } => cover(action),
        Command::Chart { action } => chart(action),
        Command::Verify {
            action:
                VerifyCmd::All {
                    inputs,
                    e,
                    qs,
                    seed: s,
                },
        } => {
            let bundle = load(&inputs)?;
            let qs = primes_list(&qs)?;
            let s = seed(s)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = DimVector::parse(m.quiver(), &e)?;
                let report = verify_pipeline(m, &e, &qs, s);
                let text = report.to_string();
                Ok(if report.passed() { Outcome::pass(text) } else { Outcome::fail(text) })
            })
        }
    }
}

fn homext_text<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<String, CliError> {
    let (h, x) = hom_ext_dims(m, n)?;
    let chi = euler_form(m.quiver(), m.dims(), n.dims());
    Ok(format!("hom={h} ext={x} euler={chi}\n"))
}

fn grass(action: GrassCmd) -> Res {
    match action {
        GrassCmd::Count { inputs, e, q } => {
            let bundle = load(&inputs)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = dimvec(m, &e)?;
                let fq = at_prime(m, q)?;
                Ok(Outcome::pass(format!("total={}\n", count_subreps(&fq, &e)?)))
            })
        }
        GrassCmd::Poly { inputs, e, primes } => {
            let bundle = load(&inputs)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = dimvec(m, &e)?;
                let primes = match primes {
                    Some(p) => primes_list(&p)?,
                    None => default_primes(m, &e),
                };
                let poly = counting_polynomial(m, &e, &primes)?;
                let degree = poly.degree().map_or("-".to_string(), |d| d.to_string());
                Ok(Outcome::pass(format!(
                    "poly={} coeffs={} degree={}\n",
                    poly,
                    poly.coefficient_list(),
                    degree
                )))
            })
        }
        GrassCmd::Fixed {
            inputs,
            e,
            primes,
            seed: s,
        } => {
            let bundle = load(&inputs)?;
            if let Some(g) = bundle.graded.first() {
                return with_graded!(g, g => {
                    let base = qgl_core::covering::pushdown(g).rep;
                    let e = dimvec(&base, &e)?;
                    let primes = match primes {
                        Some(p) => primes_list(&p)?,
                        None => default_primes(&base, &e),
                    };
                    let fr = grading_fixed_components(g, &e, &primes)?;
                    let text = format!("{fr}\n");
                    Ok(if fr.holds() { Outcome::pass(text) } else { Outcome::fail(text) })
                });
            }
            let s = seed(s)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = dimvec(m, &e)?;
                let primes = match primes {
                    Some(p) => primes_list(&p)?,
                    None => default_primes(m, &e),
                };
                let parts = expand(&decompose(m, s)?);
                let ds = direct_sum(m.quiver(), m.field(), &parts)?;
                let fr = summand_fixed_components(&ds, &e, &primes)?;
                let text = format!("{fr}\n");
                Ok(if fr.holds() { Outcome::pass(text) } else { Outcome::fail(text) })
            })
        }
        GrassCmd::Limit {
            inputs,
            e,
            q,
            seed: s,
        } => {
            let bundle = load(&inputs)?;
            if let Some(g) = bundle.graded.first() {
                return with_graded!(g, g => {
                    let gq = graded_at_prime(g, q)?;
                    let base = qgl_core::covering::pushdown(&gq).rep;
                    let e = dimvec(&base, &e)?;
                    let pr = bb_partition_grading(&gq, &e)?;
                    let text = format!("{pr}\n");
                    Ok(if pr.passed() { Outcome::pass(text) } else { Outcome::fail(text) })
                });
            }
            let s = seed(s)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = dimvec(m, &e)?;
                let field = PrimeField::new(q)?;
                let parts = expand(&decompose(m, s)?)
                    .iter()
                    .map(|r| at_prime(r, Some(q)))
                    .collect::<Result<Vec<_>, _>>()?;
                let ds = direct_sum(m.quiver(), &field, &parts)?;
                let w: Vec<i64> = (0..parts.len() as i64).collect();
                let pr = bb_partition_summand(&ds, &e, &w)?;
                let text = format!("{pr}\n");
                Ok(if pr.passed() { Outcome::pass(text) } else { Outcome::fail(text) })
            })
        }
    }
}

fn graded_input<F: Field>(m: &Representation<F>) -> Result<GradedRepresentation<F>, CliError> {
    Ok(lift_from_coefficient_quiver(m)?.graded)
}

fn cover(action: CoverCmd) -> Res {
    match action {
        CoverCmd::Lift { inputs } => {
            let bundle = load(&inputs)?;
            with_rep!(bundle.first_rep()?, m => {
                let g = graded_input(m)?;
                Ok(Outcome::pass(format_graded(&g)))
            })
        }
        CoverCmd::Iterate { inputs, max_n } => {
            let bundle = load(&inputs)?;
            fn report<F: Field>(g: &GradedRepresentation<F>, max_n: usize) -> Res {
                let it = iterate_cover_to_tree(g, max_n)?;
                let trace: Vec<String> = it
                    .girth_trace
                    .iter()
                    .map(|x| x.map_or("none".to_string(), |x| x.to_string()))
                    .collect();
                Ok(Outcome::pass(format!(
                    "n={} girth={} connected={}\n",
                    it.n,
                    trace.join(","),
                    it.support_connected
                )))
            }
            if let Some(g) = bundle.graded.first() {
                return with_graded!(g, g => report(g, max_n));
            }
            with_rep!(bundle.first_rep()?, m => report(&graded_input(m)?, max_n))
        }
        CoverCmd::Check { inputs } => {
            let bundle = load(&inputs)?;
            fn report<F: Field>(a: &GradedRepresentation<F>, b: &GradedRepresentation<F>) -> Res {
                let h = graded_homext_check(a, b)?;
                let mut out = format!(
                    "hom={} ext={} graded_hom={} graded_ext={} shifts_examined={}\n",
                    h.base_hom, h.base_ext, h.graded_hom_sum, h.graded_ext_sum, h.shifts_examined
                );
                for (xi, hh, xx) in &h.shifts_used {
                    let _ = writeln!(out, "shift=[{}] hom={hh} ext={xx}", xi.format(a.base()));
                }
                Ok(Outcome::pass(out))
            }
            if !bundle.graded.is_empty() {
                let first = &bundle.graded[0];
                let second = bundle.graded.get(1).unwrap_or(first);
                return match (first, second) {
                    (AnyGraded::Rational(a), AnyGraded::Rational(b)) => report(a, b),
                    (AnyGraded::Prime(a), AnyGraded::Prime(b)) => report(a, b),
                    _ => Err(RepError::FieldMismatch.into()),
                };
            }
            with_rep!(bundle.first_rep()?, m => {
                let g = graded_input(m)?;
                report(&g, &g)
            })
        }
    }
}

fn chart(action: ChartCmd) -> Res {
    match action {
        ChartCmd::Build { inputs, e } => {
            let bundle = load(&inputs)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = dimvec(m, &e)?;
                Ok(Outcome::pass(build_chart(m, &e)?.to_text()))
            })
        }
        ChartCmd::Eval { inputs, e, coords } => {
            let bundle = load(&inputs)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = dimvec(m, &e)?;
                let c = build_chart(m, &e)?;
                let p = c.eval_str(&coords)?;
                Ok(Outcome::pass(format!("{}\n", p.format(m))))
            })
        }
        ChartCmd::Verify { inputs, e, qs } => {
            let bundle = load(&inputs)?;
            let qs = primes_list(&qs)?;
            with_rep!(bundle.first_rep()?, m => {
                let e = dimvec(m, &e)?;
                let c = build_chart(m, &e)?;
                let mut out = format!("dim={}\n", c.dim());
                let mut ok = true;
                for q in qs {
                    let v = verify_chart(&c, q)?;
                    ok &= v.within_thin_set(4);
                    let _ = writeln!(out, "{v}");
                }
                Ok(if ok { Outcome::pass(out) } else { Outcome::fail(out) })
            })
        }
    }
}
