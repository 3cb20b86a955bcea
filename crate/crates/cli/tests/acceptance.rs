//! Acceptance suite: one PASS/FAIL line per criterion, with the time taken
//! and the time budget. Runs without the libtest harness so the report is
//! always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qgl_core::chart::{build_chart, verify_chart, ChartError};
use qgl_core::corpus::{self, Kind};
use qgl_core::covering::{graded_homext_check, lift_from_coefficient_quiver, CoverWindow};
use qgl_core::grassmann::{
    bb_partition_grading, bb_partition_summand, count_subreps, counting_polynomial, default_primes,
    grading_fixed_components, summand_fixed_components,
};
use qgl_core::io::{parse_bundle, AnyRep};
use qgl_core::linalg::{Field, Matrix, PrimeField, Rationals};
use qgl_core::quiver::Quiver;
use qgl_core::rep::{
    decompose, direct_sum, euler_form, expand, hom_ext_dims, DimVector, Representation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_acce;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn j2() -> Representation<Rationals> {
    let bundle = parse_bundle(include_str!("fixtures/j2.txt")).expect("fixture parses");
    match bundle.reps.into_iter().next() {
        Some(AnyRep::Rational(m)) => m,
        _ => panic!("fixture J2 is a rational representation"),
    }
}

fn corpus_rep(name: &str) -> Representation<Rationals> {
    corpus::entry(name)
        .unwrap_or_else(|| panic!("corpus entry {name}"))
        .rational()
        .clone()
}

fn dv(m: &Representation<Rationals>, s: &str) -> DimVector {
    DimVector::parse(m.quiver(), s).expect("dimension vector")
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(1..=4usize);
    let arrows = rng.gen_range(0..=4usize);
    let mut q = Quiver::new("R");
    for v in 0..n {
        q.add_vertex(&format!("{}", v + 1)).expect("fresh vertex");
    }
    for a in 0..arrows {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        q.add_arrow_idx(&format!("a{a}"), s, t)
            .expect("fresh arrow");
    }
    q
}

fn random_rep<F: Field>(q: &Quiver, field: &F, rng: &mut ChaCha8Rng) -> Representation<F> {
    let dims: Vec<usize> = (0..q.vertex_count())
        .map(|_| rng.gen_range(0..=3))
        .collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            let data = (0..r * c).map(|_| field.random(rng, 2)).collect();
            Matrix::new(field.clone(), r, c, data)
        })
        .collect();
    Representation::new("R", q.clone(), field.clone(), DimVector(dims), maps).expect("shapes match")
}

fn euler_pairs<F: Field>(field: &F, count: usize, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for k in 0..count {
        let q = random_quiver(rng);
        let m = random_rep(&q, field, rng);
        let n = random_rep(&q, field, rng);
        let (hom, ext) = hom_ext_dims(&m, &n).map_err(|e| e.to_string())?;
        let chi = euler_form(&q, m.dims(), n.dims());
        ensure(
            hom as i64 - ext as i64 == chi,
            format!(
                "pair {k} over {}: hom={hom} ext={ext} euler={chi}",
                field.token()
            ),
        )?;
    }
    Ok(count)
}

fn c1_euler() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    pairs += euler_pairs(&PrimeField::new(2).unwrap(), 80, &mut rng)?;
    pairs += euler_pairs(&PrimeField::new(5).unwrap(), 80, &mut rng)?;
    pairs += euler_pairs(&Rationals, 80, &mut rng)?;
    Ok(format!(
        "{pairs} random pairs over F2, F5, Q satisfy hom - ext = <d,d'>"
    ))
}

fn c2_kronecker_poly() -> Outcome {
    let m = corpus_rep("k2_12");
    let e = dv(&m, "2=1");
    let poly = counting_polynomial(&m, &e, &[2, 3, 5, 7]).map_err(|x| x.to_string())?;
    let d_minus_e = m.dims().checked_sub(&e).unwrap();
    let expected_degree = euler_form(m.quiver(), &e, &d_minus_e);
    ensure(
        poly.coefficient_list() == "1,1",
        format!("coefficients {}", poly.coefficient_list()),
    )?;
    ensure(
        poly.degree() == Some(1),
        format!("degree {:?}", poly.degree()),
    )?;
    ensure(expected_degree == 1, format!("<e,d-e> = {expected_degree}"))?;
    ensure(poly.leading() == 1, format!("leading {}", poly.leading()))?;
    Ok(format!(
        "P(q) = {poly}, degree 1 = <e,d-e>, leading 1, held-out q=7 gives {}",
        poly.eval(7)
    ))
}

fn c3_summand_identity() -> Outcome {
    let mut instances = 0;
    let mut checks = 0;
    let mut named = Vec::new();
    for entry in corpus::entries()
        .into_iter()
        .filter(|x| x.kind == Kind::Decomposable)
    {
        let m = entry.rational();
        let summands = decompose(m, SEED).map_err(|x| x.to_string())?;
        let parts = expand(&summands);
        ensure(
            parts.len() >= 2,
            format!("{} splits into {} summands", entry.name, parts.len()),
        )?;
        let ds = direct_sum(m.quiver(), m.field(), &parts).map_err(|x| x.to_string())?;
        for e in &entry.es {
            let fr = summand_fixed_components(&ds, e, &default_primes(m, e))
                .map_err(|x| x.to_string())?;
            ensure(
                fr.holds(),
                format!("{} e={e}: {} != {}", entry.name, fr.lhs, fr.rhs),
            )?;
            checks += 1;
            let key = (entry.name, e.to_string());
            if key == ("a2_p1_s2", "(1,1)".to_string()) || key == ("k2_12x2", "(0,1)".to_string()) {
                named.push(format!("{} e={e}: {} = {}", entry.name, fr.lhs, fr.rhs));
            }
        }
        instances += 1;
    }
    ensure(
        instances >= 10,
        format!("only {instances} decomposable instances"),
    )?;
    ensure(named.len() == 2, format!("named cases missing: {named:?}"))?;
    let want = ["a2_p1_s2 e=(1,1): 1 = 1", "k2_12x2 e=(0,1): 4 = 4"];
    ensure(named == want, format!("named cases {named:?}"))?;
    Ok(format!(
        "{instances} instances, {checks} dimension vectors; {}",
        named.join("; ")
    ))
}

fn c4_grading_identity() -> Outcome {
    let mut checks = 0;
    let mut named = Vec::new();
    for entry in corpus::entries()
        .into_iter()
        .filter(|x| x.kind == Kind::Exceptional)
    {
        let m = entry.rational();
        let lift = lift_from_coefficient_quiver(m).map_err(|x| x.to_string())?;
        for e in &entry.es {
            let fr = grading_fixed_components(&lift.graded, e, &default_primes(m, e))
                .map_err(|x| x.to_string())?;
            ensure(
                fr.holds(),
                format!("{} e={e}: {} != {}", entry.name, fr.lhs, fr.rhs),
            )?;
            checks += 1;
            if entry.name == "k2_12" && (e.to_string() == "(0,1)" || e.to_string() == "(1,1)") {
                named.push(format!("e={e}: {} = {}", fr.lhs, fr.rhs));
            }
        }
    }
    ensure(
        named == ["e=(0,1): 2 = 2", "e=(1,1): 0 = 0"],
        format!("K2 (1,2) cases {named:?}"),
    )?;
    Ok(format!(
        "{checks} (lift, e) pairs; K2 (1,2) {}",
        named.join(", ")
    ))
}

fn c5_graded_homext() -> Outcome {
    let j = j2();
    let lift = lift_from_coefficient_quiver(&j).map_err(|x| x.to_string())?;
    let h = graded_homext_check(&lift.graded, &lift.graded).map_err(|x| x.to_string())?;
    ensure(
        (h.base_hom, h.base_ext, h.graded_hom_sum, h.graded_ext_sum) == (2, 2, 2, 2),
        format!(
            "J2: hom={} ext={} graded {} {}",
            h.base_hom, h.base_ext, h.graded_hom_sum, h.graded_ext_sum
        ),
    )?;
    let mut lifts = 0;
    for entry in corpus::entries()
        .into_iter()
        .filter(|x| x.kind == Kind::Exceptional)
    {
        let lift = lift_from_coefficient_quiver(entry.rational()).map_err(|x| x.to_string())?;
        let h = graded_homext_check(&lift.graded, &lift.graded).map_err(|x| x.to_string())?;
        ensure(
            h.graded_hom_sum == h.base_hom
                && h.graded_ext_sum == h.base_ext
                && h.graded_ext_sum == 0,
            format!("{}: {h:?}", entry.name),
        )?;
        lifts += 1;
    }
    Ok(format!(
        "J2 (2,2): hom 2 = 2, ext 2 = 2; {lifts} exceptional lifts with ext sum 0"
    ))
}

fn c6_girth() -> Outcome {
    let k2 = corpus_rep("k2_12");
    let c3 = corpus_rep("c3_110");
    let mut lines = Vec::new();
    for (label, m, base_girth) in [("loop", j2(), 1), ("K2", k2, 2), ("C3", c3, 3)] {
        let q = m.quiver();
        let g = q.reduced_cycle_girth();
        ensure(g == Some(base_girth), format!("{label}: base girth {g:?}"))?;
        let lift = lift_from_coefficient_quiver(&m).map_err(|x| x.to_string())?;
        let (support, _) = lift.graded.support_rep();
        let lg = support.quiver().reduced_cycle_girth();
        ensure(
            lg.is_none_or(|x| x > base_girth),
            format!("{label}: lift support girth {lg:?}"),
        )?;
        let radius = 2 * base_girth.max(3);
        let mut worst = None;
        for v in 0..q.vertex_count() {
            let w = CoverWindow::ball(q, v, radius);
            let wg = w.quiver().reduced_cycle_girth();
            ensure(
                wg.is_none_or(|x| x > base_girth),
                format!("{label}: window girth {wg:?}"),
            )?;
            worst = worst.or(wg);
        }
        let show = |g: Option<usize>| g.map_or("absent".to_string(), |g| g.to_string());
        lines.push(format!(
            "{label} {base_girth} -> lift {} / radius-{radius} windows {}",
            show(lg),
            show(worst)
        ));
    }
    Ok(lines.join("; "))
}

fn c7_bb_partition() -> Outcome {
    let mut reports = 0;
    let mut points = 0;
    for entry in corpus::entries() {
        let m = entry.rational();
        for q in [2u64, 3] {
            let field = PrimeField::new(q).unwrap();
            for e in &entry.es {
                let report = match entry.kind {
                    Kind::Decomposable => {
                        let summands = decompose(m, SEED).map_err(|x| x.to_string())?;
                        let parts: Vec<_> = expand(&summands)
                            .iter()
                            .map(|p| p.reduce_mod(&field))
                            .collect::<Result<_, _>>()
                            .map_err(|x| x.to_string())?;
                        let ds =
                            direct_sum(m.quiver(), &field, &parts).map_err(|x| x.to_string())?;
                        let w: Vec<i64> = (0..parts.len() as i64).collect();
                        bb_partition_summand(&ds, e, &w)
                    }
                    Kind::Exceptional => {
                        let lift = lift_from_coefficient_quiver(m).map_err(|x| x.to_string())?;
                        let g = lift.graded.reduce_mod(&field).map_err(|x| x.to_string())?;
                        bb_partition_grading(&g, e)
                    }
                }
                .map_err(|x| format!("{} e={e} q={q}: {x}", entry.name))?;
                ensure(
                    report.passed(),
                    format!("{} e={e} q={q}: {report}", entry.name),
                )?;
                reports += 1;
                points += report.total;
            }
        }
    }
    Ok(format!(
        "{reports} partitions over q in {{2,3}}, {points} points, no stray limits"
    ))
}

fn c8_charts() -> Outcome {
    let mut charts = 0;
    let mut skipped = 0;
    let mut empty = 0;
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    let mut a2_line = String::new();
    for entry in corpus::entries() {
        let m = entry.rational();
        if !m.quiver().structure_report().tree {
            continue;
        }
        for e in boxes(m.dims()) {
            let chart = match build_chart(m, &e) {
                Ok(c) => c,
                Err(ChartError::GenericStratumEmpty { .. }) => {
                    for q in [5u64, 7, 11] {
                        let red = m
                            .reduce_mod(&PrimeField::new(q).unwrap())
                            .map_err(|x| x.to_string())?;
                        let n = count_subreps(&red, &e).map_err(|x| x.to_string())?;
                        ensure(
                            n == 0,
                            format!(
                                "{} e={e}: empty stratum but {n} points at q={q}",
                                entry.name
                            ),
                        )?;
                    }
                    empty += 1;
                    continue;
                }
                Err(err) => return Err(format!("{} e={e}: {err}", entry.name)),
            };
            if chart.dim() > 3 {
                skipped += 1;
                continue;
            }
            for q in [5u64, 7, 11] {
                let v = verify_chart(&chart, q)
                    .map_err(|x| format!("{} e={e} q={q}: {x}", entry.name))?;
                let qf = q as f64;
                let miss = 1.0 - v.dominance_ratio();
                let coll = v.collisions as f64 / v.domain_size as f64;
                let ood = v.out_of_domain() as f64 / v.domain_size as f64;
                ensure(
                    v.within_thin_set(4) && miss <= 4.0 / qf && coll <= 4.0 / qf && ood <= 4.0 / qf,
                    format!("{} e={e}: {v}", entry.name),
                )?;
                worst = (
                    worst.0.max(miss * qf),
                    worst.1.max(coll * qf),
                    worst.2.max(ood * qf),
                );
                if entry.name == "a2_p1_s2" && e.to_string() == "(0,1)" {
                    ensure(
                        v.image_size == q && v.total_points == q + 1,
                        format!("A2 (1,2) e=(0,1): {v}"),
                    )?;
                    a2_line.push_str(&format!(" q={q}:{}/{}", v.image_size, v.total_points));
                }
            }
            charts += 1;
        }
    }
    ensure(
        !a2_line.is_empty(),
        "A2 (1,2) e=(0,1) chart was not checked",
    )?;
    Ok(format!(
        "{charts} charts x 3 primes ({empty} empty, {skipped} above dim 3); max q*miss={:.2} q*collisions={:.2} q*out_of_domain={:.2} (bound 4); A2 image/total{a2_line}",
        worst.0, worst.1, worst.2
    ))
}

fn boxes(d: &DimVector) -> Vec<DimVector> {
    let mut out = vec![Vec::new()];
    for &k in &d.0 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..=k).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(DimVector).collect()
}

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/corpus/{name}.txt"))
}

fn run_verify(file: PathBuf, e: &str) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qgl"))
        .args(["verify", "all", "--e", e])
        .arg(file)
        .output()
        .map_err(|x| x.to_string())?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn c9_end_to_end() -> Outcome {
    let mut lines = Vec::new();
    for (file, e) in [
        (corpus_file("k2_12"), "2=1"),
        (corpus_file("a2_p1_s2"), "1=1,2=1"),
    ] {
        let (code, out) = run_verify(file.clone(), e)?;
        ensure(
            code == 0 && out.contains("verdict=pass"),
            format!("{}: exit {code}\n{out}", file.display()),
        )?;
        lines.push(format!(
            "{} pass",
            file.file_stem().unwrap().to_string_lossy()
        ));
    }
    let fixture = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/j2.txt");
    let (code, out) = run_verify(fixture, "1=1")?;
    ensure(
        code == 1 && out.contains("verdict=fail stage=0"),
        format!("J2: exit {code}\n{out}"),
    )?;
    lines.push("J2 fails at stage 0 with exit 1".into());
    Ok(lines.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 9] = [
        (1, "euler form identity", 10, c1_euler),
        (2, "kronecker counting polynomial", 1, c2_kronecker_poly),
        (3, "summand fixed-locus identity", 60, c3_summand_identity),
        (4, "grading fixed-locus identity", 30, c4_grading_identity),
        (5, "graded hom/ext direct sum", 10, c5_graded_homext),
        (6, "girth growth", 10, c6_girth),
        (7, "bialynicki-birula partition", 120, c7_bb_partition),
        (8, "chart dominance and injectivity", 120, c8_charts),
        (9, "end-to-end verify", 60, c9_end_to_end),
    ];
    let mut failed = 0;
    for (k, name, budget, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let (ok, detail) = match result {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the time budget")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] criterion {k} {name}: {detail} ({:.2}s / {budget}s)",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
