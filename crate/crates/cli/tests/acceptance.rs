//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs under `cargo test` as a harness-free test target.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ehrhart_cli::fixtures::{self, DIM6, STRIP_VIOLATOR};
use ehrhart_core::catalog::{smooth_catalog, Entry};
use ehrhart_core::counting::{count_boundary, count_points, ehrhart, verify_layers, verify_reciprocity};
use ehrhart_core::formulas::{
    bhw_conditions, check_bounds, ehrhart_closed, ehrhart_from_fvector, root_betas, tables, QuadSurd, RootBetas,
    SmoothInvariants,
};
use ehrhart_core::poly::{int, rat};
use ehrhart_core::rootcert::{
    canonical_line_certificate, classify, find_roots_at, shift_half, symmetric_decompose, ComplexApprox,
};
use ehrhart_core::{Polytope, RationalPolynomial};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Agreement between numeric roots and closed-form roots, and the line test.
const ROOT_TOL: f64 = 1e-9;
/// Largest `|L(z)|` allowed for the fixtures at 50 digits.
const FIXTURE_RESIDUAL: f64 = 1e-20;
const FIXTURE_DIGITS: u32 = 50;
const BRAUN_RADIUS_D6: i64 = 33;
const RANDOM_CASES: usize = 200;
const RANDOM_SEED: u64 = 0x5eed_2010;

const BUDGET_TRIPLE: Duration = Duration::from_secs(60);
const BUDGET_FIXTURES: Duration = Duration::from_secs(5);
const BUDGET_TABLES: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn b2_arg(d: usize, inv: &SmoothInvariants) -> Option<i64> {
    (d >= 4).then_some(inv.b2 as i64)
}

fn triple_agreement(catalog: &[Entry]) -> Outcome {
    let start = Instant::now();
    for e in catalog {
        let p = &e.polytope;
        let d = p.dim();
        let inv = SmoothInvariants::from_polytope(p);
        let interpolated = ehrhart(p);
        let from_f = ehrhart_from_fvector(&inv.fvec);
        let closed = ehrhart_closed(d, inv.f0 as i64, b2_arg(d, &inv)).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(interpolated == from_f, || format!("{}: interpolated {interpolated} vs f-vector {from_f}", e.name))?;
        ensure(interpolated == closed, || format!("{}: interpolated {interpolated} vs closed {closed}", e.name))?;
    }
    let took = start.elapsed();
    ensure(took < BUDGET_TRIPLE, || format!("took {took:.2?}, budget {BUDGET_TRIPLE:?}"))?;
    Ok(format!("{} polytopes, three forms equal, {took:.2?}", catalog.len()))
}

/// Expected roots `-1/2 ± i√β²` (and `-1/2` for odd `d`) from the closed form.
fn expected_roots(betas: &RootBetas) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if betas.has_real_root {
        out.push((-0.5, 0.0));
    }
    for b in &betas.beta_squared {
        let values = if b.is_rational() {
            vec![b.p.to_f64().unwrap()]
        } else {
            let (lo, hi) = b.approx();
            vec![lo, hi]
        };
        for v in values {
            out.push((-0.5, v.sqrt()));
            out.push((-0.5, -v.sqrt()));
        }
    }
    out
}

fn matches_within(found: &[ComplexApprox], expected: &[(f64, f64)], tol: f64) -> bool {
    let mut left: Vec<(f64, f64)> = expected.to_vec();
    found.len() == expected.len()
        && found.iter().all(|z| {
            let (re, im) = z.to_f64();
            match left.iter().position(|&(a, b)| (a - re).abs() < tol && (b - im).abs() < tol) {
                Some(i) => {
                    left.swap_remove(i);
                    true
                }
                None => false,
            }
        })
}

fn surd(p: BigRational, q: i64, r: BigRational) -> QuadSurd {
    QuadSurd { p, q: int(q), r }
}

fn same_surd(a: &QuadSurd, b: &QuadSurd) -> bool {
    if a.is_rational() || b.is_rational() {
        return a.is_rational() && b.is_rational() && a.p == b.p;
    }
    a.p == b.p && a.q.abs() == b.q.abs() && a.r == b.r
}

fn line_certificate_suite(catalog: &[Entry]) -> Outcome {
    let exact: [(&str, bool, Vec<QuadSurd>); 5] = [
        ("S2", false, vec![QuadSurd::rational(rat(5, 12))]),
        ("C2", false, vec![QuadSurd::rational(rat(1, 4))]),
        ("S3", true, vec![QuadSurd::rational(rat(11, 4))]),
        ("C4", false, vec![surd(rat(7, 4), 1, rat(5, 2))]),
        ("C5", true, vec![surd(rat(15, 4), 1, rat(17, 2))]),
    ];
    for e in catalog {
        let p = &e.polytope;
        let d = p.dim();
        let l = ehrhart(p);
        ensure(canonical_line_certificate(&l, d), || format!("{}: certificate false", e.name))?;
        let inv = SmoothInvariants::from_polytope(p);
        let betas = root_betas(d, inv.f0 as i64, b2_arg(d, &inv)).map_err(|err| format!("{}: {err}", e.name))?;
        // the Sturm route and the closed form describe the same s-polynomial
        let q = symmetric_decompose(&shift_half(&l), d).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(q.monic() == betas.reduced_polynomial(), || format!("{}: q(s) differs from the β² product", e.name))?;
        let report = classify(&l, d, ROOT_TOL).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(report.on_line_numeric, || format!("{}: numeric roots off the line", e.name))?;
        ensure(matches_within(&report.roots, &expected_roots(&betas), ROOT_TOL), || {
            format!("{}: numeric roots differ from β² = {:?}", e.name, betas.beta_squared)
        })?;
        if let Some((_, real, want)) = exact.iter().find(|(n, _, _)| *n == e.name) {
            ensure(betas.has_real_root == *real, || format!("{}: β = 0 presence", e.name))?;
            ensure(
                betas.beta_squared.len() == want.len()
                    && betas.beta_squared.iter().zip(want).all(|(a, b)| same_surd(a, b)),
                || format!("{}: β² = {:?}, want {:?}", e.name, betas.beta_squared, want),
            )?;
        }
    }
    Ok(format!("{} polytopes certified; exact β² for S2, C2, S3, C4, C5", catalog.len()))
}

fn dim6_counterexamples() -> Outcome {
    let start = Instant::now();
    let radius = int(BRAUN_RADIUS_D6);
    for fx in &DIM6 {
        let l = fx.polynomial();
        let label = fx.label();
        ensure(verify_reciprocity(&l, 6), || format!("{label}: reciprocity fails"))?;
        ensure(!canonical_line_certificate(&l, 6), || format!("{label}: certificate true"))?;
        let found = find_roots_at(&l, ROOT_TOL, FIXTURE_DIGITS).map_err(|e| format!("{label}: {e}"))?;
        ensure(found.max_residual <= FIXTURE_RESIDUAL, || {
            format!("{label}: residual {:e} > {FIXTURE_RESIDUAL:e}", found.max_residual)
        })?;
        let half = rat(-1, 2);
        ensure(found.roots.iter().all(|z| z.dist_sq_to_real(&half) <= &radius * &radius), || {
            format!("{label}: root outside the disc of radius {BRAUN_RADIUS_D6}")
        })?;
        if fx.ids.contains(&STRIP_VIOLATOR) {
            ensure(found.roots.iter().any(|z| z.re.is_positive()), || format!("{label}: no root with Re z > 0"))?;
            ensure(found.roots.iter().any(|z| z.re < int(-1)), || format!("{label}: no root with Re z < -1"))?;
        }
    }
    ensure(fixtures::by_id(5817) == fixtures::by_id(1895), || "1895 and 5817 should share a polynomial".into())?;
    let took = start.elapsed();
    ensure(took < BUDGET_FIXTURES, || format!("took {took:.2?}, budget {BUDGET_FIXTURES:?}"))?;
    Ok(format!("3 polynomials refuted, 1930 leaves -1 <= Re z <= 0 on both sides, {took:.2?}"))
}

fn tables_verification() -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    for d in [4, 5] {
        for &(f0, b2) in tables::for_dim(d).unwrap() {
            let b = check_bounds(d, f0, b2).map_err(|e| e.to_string())?;
            ensure(b.all_pass(), || format!("d={d} ({f0}, {b2}): {:?}", b.flags()))?;
            let betas = root_betas(d, f0, Some(b2)).map_err(|e| format!("d={d} ({f0}, {b2}): {e}"))?;
            ensure(betas.beta_squared.iter().all(QuadSurd::both_positive), || {
                format!("d={d} ({f0}, {b2}): β² not real positive")
            })?;
            rows += 1;
        }
    }
    ensure(rows == 49, || format!("{rows} rows, want 20 + 29"))?;
    let took = start.elapsed();
    ensure(took < BUDGET_TABLES, || format!("took {took:.2?}, budget {BUDGET_TABLES:?}"))?;
    Ok(format!("{rows} pairs pass bounds with real positive β², {took:.2?}"))
}

/// `(points, boundary)` of `mP` by scanning the full box; independent of the
/// projection-based enumerator.
fn brute_force(p: &Polytope, m: i64) -> (u64, u64) {
    let bbox: Vec<(i64, i64)> =
        p.bounding_box().iter().map(|(lo, hi)| (lo.to_i64().unwrap() * m, hi.to_i64().unwrap() * m)).collect();
    let d = p.dim();
    let mut x: Vec<i64> = bbox.iter().map(|b| b.0).collect();
    let (mut points, mut boundary) = (0, 0);
    loop {
        let mut inside = true;
        let mut tight = false;
        for h in p.facets() {
            let lhs: i64 = h.normal.iter().zip(&x).map(|(a, b)| a.to_i64().unwrap() * b).sum();
            let rhs = h.offset.to_i64().unwrap() * m;
            inside &= lhs <= rhs;
            tight |= lhs == rhs;
        }
        if inside {
            points += 1;
            boundary += u64::from(tight);
        }
        let mut k = 0;
        loop {
            if k == d {
                return (points, boundary);
            }
            x[k] += 1;
            if x[k] <= bbox[k].1 {
                break;
            }
            x[k] = bbox[k].0;
            k += 1;
        }
    }
}

fn counting_identities(catalog: &[Entry]) -> Outcome {
    for e in catalog {
        let p = &e.polytope;
        let d = p.dim();
        let l = ehrhart(p);
        ensure(verify_layers(p, 2 * d as u64) == Ok(true), || format!("{}: layer identity", e.name))?;
        ensure(verify_reciprocity(&l, d), || format!("{}: reciprocity", e.name))?;
        for m in d as u64 + 1..=2 * d as u64 {
            let c = count_points(p, m);
            ensure(BigRational::from_integer(c.into()) == l.eval(&int(m as i64)), || {
                format!("{}: L({m}) = {c} off the polynomial", e.name)
            })?;
        }
    }
    let get = |name: &str| catalog.iter().find(|e| e.name == name).unwrap().polytope.clone();
    let spots: [(&str, u64, u64, bool); 6] = [
        ("C2", 2, 13, false),
        ("C4", 2, 41, false),
        ("C5", 2, 61, false),
        ("C4", 2, 32, true),
        ("S4", 2, 15, true),
        ("S5", 2, 21, true),
    ];
    for (name, m, want, boundary) in spots {
        let p = get(name);
        let (pts, bdy) = brute_force(&p, m as i64);
        let (oracle, fast) =
            if boundary { (bdy, count_boundary(&p, m)) } else { (pts, count_points(&p, m)) };
        ensure(oracle == want && fast == want, || format!("{name} m={m}: oracle {oracle}, counted {fast}, want {want}"))?;
        if boundary {
            let table = tables::for_dim(p.dim()).unwrap();
            let f0 = p.vertices().len() as i64;
            ensure(table.contains(&(f0, want as i64)), || format!("{name}: ({f0}, {want}) not in the table"))?;
        }
    }
    Ok(format!("{} polytopes, m = 1..2d, spot values and table b2 agree", catalog.len()))
}

fn four_dimensional_relations(catalog: &[Entry]) -> Outcome {
    let mut n = 0;
    for e in catalog.iter().filter(|e| e.polytope.dim() == 4) {
        let inv = SmoothInvariants::from_polytope(&e.polytope);
        let f3 = inv.fvec.f(3);
        ensure(f3 == inv.b2 - 2 * inv.f0, || format!("{}: f3 = {f3}, b2 - 2f0 = {}", e.name, inv.b2 - 2 * inv.f0))?;
        ensure(&inv.vol * int(24) == int(f3 as i64), || format!("{}: 24 vol = {}", e.name, &inv.vol * int(24)))?;
        ensure(bhw_conditions(inv.f0, &inv.vol) == (true, true), || format!("{}: BHW conditions", e.name))?;
        n += 1;
    }
    ensure(n == 3, || format!("{n} four-dimensional entries, want 3"))?;
    Ok(format!("{n} polytopes: f3 = b2 - 2f0, 24 vol = f3, BHW (true, true)"))
}

fn random_line_pair(rng: &mut ChaCha8Rng) -> RationalPolynomial {
    // (m + 1/2)^2 + (n/k)^2, scaled by 4k^2
    let (n, k): (i64, i64) = (rng.gen_range(0..=6), rng.gen_range(1..=3));
    RationalPolynomial::from_integers(&[k * k + 4 * n * n, 4 * k * k, 4 * k * k])
}

fn random_rational_root(rng: &mut ChaCha8Rng) -> (RationalPolynomial, bool) {
    let (p, q): (i64, i64) = (rng.gen_range(-6..=6), rng.gen_range(1..=4));
    (RationalPolynomial::from_integers(&[-p, q]), 2 * p == -q)
}

/// A random product of known factors of total degree 1..=6, with whether
/// every root lies on the line.
fn random_case(rng: &mut ChaCha8Rng) -> (RationalPolynomial, bool) {
    let target = rng.gen_range(1..=6);
    let on_line_only = rng.gen_bool(0.5);
    let (mut poly, mut truth, mut deg) = (RationalPolynomial::one(), true, 0);
    while deg < target {
        if deg + 2 <= target && rng.gen_bool(0.6) {
            poly = &poly * &random_line_pair(rng);
            deg += 2;
        } else {
            let (f, on) = if on_line_only { (RationalPolynomial::from_integers(&[1, 2]), true) } else { random_rational_root(rng) };
            poly = &poly * &f;
            truth &= on;
            deg += 1;
        }
    }
    (poly, truth)
}

fn certifier_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut positives = 0;
    for i in 0..RANDOM_CASES {
        let (l, truth) = random_case(&mut rng);
        ensure(l.coeffs().iter().all(|c| c.is_integer()), || format!("case {i}: non-integer coefficients"))?;
        let d = l.degree().unwrap();
        let got = canonical_line_certificate(&l, d);
        ensure(got == truth, || format!("case {i}: {l} certified {got}, truth {truth}"))?;
        positives += usize::from(truth);
    }
    ensure(positives > 0 && positives < RANDOM_CASES, || "degenerate sample".into())?;
    Ok(format!("{RANDOM_CASES} cases agree ({positives} on the line), seed {RANDOM_SEED:#x}"))
}

fn main() -> ExitCode {
    let catalog = smooth_catalog();
    let criteria: [(&str, &dyn Fn() -> Outcome); 7] = [
        ("1 triple agreement", &|| triple_agreement(&catalog)),
        ("2 canonical line certificate", &|| line_certificate_suite(&catalog)),
        ("3 dimension-six counterexamples", &dim6_counterexamples),
        ("4 tables verification", &tables_verification),
        ("5 counting identities", &|| counting_identities(&catalog)),
        ("6 four-dimensional relations", &|| four_dimensional_relations(&catalog)),
        ("7 certifier oracle equivalence", &certifier_oracle),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
