//! The pipelines behind each subcommand.

use ehrhart_core::counting::{verify_reciprocity, LatticeCounter, LayerCounts};
use ehrhart_core::formulas::{self, bhw_conditions, check_bounds, ehrhart_closed, root_betas};
use ehrhart_core::poly::{int, interpolate};
use ehrhart_core::rootcert::{classify, shift_half, symmetric_decompose, RootError};
use ehrhart_core::{Polytope, RationalPolynomial};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::fixtures::{Fixture, STRIP_VIOLATOR};
use crate::report::{AnalysisReport, FixtureReport, LayerCheck, RootSummary, TableRow};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyzeOptions {
    /// Largest dilation counted for the layer identity; `2d` when `None`.
    pub dilations: Option<u64>,
    pub tol: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { dilations: None, tol: ehrhart_core::rootcert::DEFAULT_TOLERANCE }
    }
}

pub fn analyze(input: &str, p: &Polytope, opts: AnalyzeOptions) -> Result<AnalysisReport, RootError> {
    let d = p.dim();
    let reflexive = p.is_reflexive();
    let smooth = p.is_smooth();
    let fvec = p.f_vector();
    let f0 = fvec.f(0);
    let f1 = if d >= 2 { fvec.f(1) } else { 0 };

    let max_m = opts.dilations.unwrap_or(2 * d as u64).max(d as u64).max(2);
    let counter = LatticeCounter::new(p);
    let counts: Vec<LayerCounts> = (0..=max_m).into_par_iter().map(|m| counter.count(m)).collect();

    let nodes: Vec<(BigRational, BigRational)> =
        (0..=d).map(|m| (int(m as i64), BigRational::from_integer(counts[m].points.into()))).collect();
    let l = interpolate(&nodes);
    let b2 = counts[2].boundary;
    let volume = l.leading().cloned().unwrap_or_default();
    let reciprocity = verify_reciprocity(&l, d);
    let roots = classify(&l, d, opts.tol)?;
    let summary = RootSummary::from(&roots);

    let mut violations = Vec::new();
    if !fvec.satisfies_euler() {
        violations.push("f-vector fails the Euler relation".to_string());
    }
    for (m, c) in counts.iter().enumerate().skip(d + 1) {
        if BigRational::from_integer(c.points.into()) != l.eval(&int(m as i64)) {
            violations.push(format!("count at m = {m} disagrees with the interpolated polynomial"));
        }
    }
    if !summary.in_braun_disc {
        violations.push("a root lies outside Braun's disc".to_string());
    }

    let layers = reflexive.then(|| {
        let holds = counts.windows(2).all(|w| w[1].points == w[1].boundary + w[0].points);
        if !holds {
            violations.push("layer identity fails".to_string());
        }
        LayerCheck { up_to: max_m, holds }
    });
    if reflexive && !reciprocity {
        violations.push("reflexive polytope fails reciprocity".to_string());
    }

    let (mut closed_form_match, mut beta_squared, mut beta_match) = (None, None, None);
    let (mut bounds, mut bhw) = (None, None);
    if smooth {
        if b2 != f0 + f1 {
            violations.push(format!("b2 = {b2} but f0 + f1 = {}", f0 + f1));
        }
        if d <= 5 && !summary.exact_canonical_line {
            violations.push("smooth polytope of dimension at most 5 has a root off Re z = -1/2".to_string());
        }
        if d <= 5 && !summary.on_line_numeric {
            violations.push("numeric roots disagree with the canonical line".to_string());
        }
        if (2..=5).contains(&d) {
            let b2_arg = (d >= 4).then_some(b2 as i64);
            let closed = ehrhart_closed(d, f0 as i64, b2_arg).ok();
            let matched = closed.as_ref() == Some(&l);
            if !matched {
                violations.push("closed form disagrees with the counted polynomial".to_string());
            }
            closed_form_match = Some(matched);
            match root_betas(d, f0 as i64, b2_arg) {
                Ok(betas) => {
                    let q = symmetric_decompose(&shift_half(&l), d).map(|q| q.monic());
                    let agree = q.as_ref() == Ok(&betas.reduced_polynomial());
                    if !agree {
                        violations.push("beta^2 values disagree with the symmetric reduction".to_string());
                    }
                    beta_squared = Some(betas.beta_squared.iter().map(|b| b.to_string()).collect());
                    beta_match = Some(agree);
                }
                Err(e) => violations.push(format!("closed-form roots: {e}")),
            }
        }
        if d == 4 || d == 5 {
            let flags = check_bounds(d, f0 as i64, b2 as i64).expect("dimension is 4 or 5");
            if !flags.all_pass() {
                violations.push("(f0, b2) fails the necessary bounds".to_string());
            }
            bounds = Some(flags.into());
        }
        if d == 4 {
            let boundary = counts[1].boundary;
            let flags = bhw_conditions(boundary, &volume);
            if flags != (true, true) {
                violations.push("BHW conditions fail".to_string());
            }
            bhw = Some(flags);
        }
    }

    Ok(AnalysisReport {
        input: input.to_string(),
        dim: d,
        vertices: p.vertices().len(),
        f_vector: fvec.entries().to_vec(),
        f0,
        b2,
        volume: volume.to_string(),
        reflexive,
        smooth,
        ehrhart: l.coeff_strings(),
        closed_form_match,
        beta_squared,
        beta_match,
        reciprocity,
        layers,
        roots: summary,
        bounds,
        bhw,
        violations,
    })
}

/// Classifies a bare polynomial; its degree plays the role of `d`.
pub fn poly_roots(l: &RationalPolynomial, tol: f64) -> Result<RootSummary, RootError> {
    let d = l.degree().ok_or(RootError::DegreeMismatch { expected: 1, found: None })?;
    Ok(RootSummary::from(&classify(l, d, tol)?))
}

/// The embedded `(f0, b2)` pairs with their bound checks and `β²` values.
pub fn table_rows(d: usize) -> Option<Vec<TableRow>> {
    let table = formulas::tables::for_dim(d)?;
    let rows = table
        .iter()
        .map(|&(f0, b2)| {
            let bounds = check_bounds(d, f0, b2).expect("tables exist only for dimensions 4 and 5");
            let (beta_squared, real_positive) = match root_betas(d, f0, Some(b2)) {
                Ok(betas) => (
                    betas.beta_squared.iter().map(|b| b.to_string()).collect(),
                    betas.beta_squared.iter().all(|b| b.both_positive()),
                ),
                Err(_) => (Vec::new(), false),
            };
            TableRow { dim: d, f0, b2, bounds: bounds.into(), beta_squared, real_positive }
        })
        .collect();
    Some(rows)
}

pub fn fixture_report(fx: &Fixture, tol: f64) -> Result<FixtureReport, RootError> {
    let l = fx.polynomial();
    let d = l.degree().expect("fixtures have degree 6");
    let roots = RootSummary::from(&classify(&l, d, tol)?);
    let reciprocity = verify_reciprocity(&l, d);
    let positive = roots.max_real_part().is_some_and(|r| r > int(0));
    let below = roots.min_real_part().is_some_and(|r| r < int(-1));

    let mut violations = Vec::new();
    if !reciprocity {
        violations.push("reciprocity fails".to_string());
    }
    if roots.exact_canonical_line || roots.on_line_numeric {
        violations.push("all roots lie on Re z = -1/2".to_string());
    }
    if !roots.in_braun_disc {
        violations.push("a root lies outside Braun's disc".to_string());
    }
    if fx.ids.contains(&STRIP_VIOLATOR) && !(positive && below) {
        violations.push("expected roots with Re z > 0 and Re z < -1".to_string());
    }
    Ok(FixtureReport {
        ids: fx.ids.to_vec(),
        coeffs: l.coeff_strings(),
        reciprocity,
        roots,
        root_with_positive_real_part: positive,
        root_with_real_part_below_minus_one: below,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{by_id, DIM6};
    use crate::report::CertificateStatus;
    use ehrhart_core::catalog;

    #[test]
    fn cross_polytope_4() {
        let r = analyze("C4", &catalog::cross_polytope(4), AnalyzeOptions::default()).unwrap();
        assert_eq!((r.f0, r.b2), (8, 32));
        assert_eq!(r.ehrhart, ["1", "8/3", "10/3", "4/3", "2/3"]);
        assert!(r.roots.exact_canonical_line && r.roots.on_line_numeric);
        assert_eq!(r.closed_form_match, Some(true));
        assert_eq!(r.bhw, Some((true, true)));
        assert!(r.bounds.unwrap().all_pass());
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        // the pair is in the embedded table
        assert!(formulas::tables::DIM4.contains(&(8, 32)));
    }

    #[test]
    fn triangle() {
        let r = analyze("S2", &catalog::reflexive_simplex(2), AnalyzeOptions::default()).unwrap();
        assert!(r.smooth);
        assert_eq!(r.beta_squared, Some(vec!["5/12".to_string()]));
        assert_eq!(r.beta_match, Some(true));
        assert_eq!(r.roots.certificate, CertificateStatus::Certified);
        let expect = (5.0f64 / 12.0).sqrt();
        for z in &r.roots.roots {
            assert!((z.approx.0 + 0.5).abs() < 1e-12);
            assert!((z.approx.1.abs() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_square_is_not_applicable() {
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let r = analyze("square", &sq, AnalyzeOptions::default()).unwrap();
        assert!(!r.reflexive && !r.smooth);
        assert_eq!(r.roots.certificate, CertificateStatus::NotApplicable);
        assert!(!r.reciprocity);
        assert_eq!(r.layers, None);
        assert!(r.violations.is_empty());
        assert_eq!(r.ehrhart, ["1", "2", "1"]);
    }

    #[test]
    fn polynomial_entry_point() {
        let line = poly_roots(&RationalPolynomial::from_integers(&[1, 2, 2]), 1e-9).unwrap();
        assert!(line.exact_canonical_line);
        let off = poly_roots(&RationalPolynomial::from_integers(&[1, 3, 2]), 1e-9).unwrap();
        assert!(!off.exact_canonical_line && off.in_canonical_strip);
        let pc = poly_roots(&by_id(4853).unwrap().polynomial(), 1e-9).unwrap();
        assert!(!pc.exact_canonical_line);
    }

    #[test]
    fn tables() {
        assert_eq!(table_rows(4).unwrap().len(), 20);
        assert_eq!(table_rows(5).unwrap().len(), 29);
        assert!(table_rows(3).is_none());
        assert!(table_rows(4).unwrap().iter().chain(&table_rows(5).unwrap()).all(TableRow::passes));
    }

    #[test]
    fn fixtures() {
        for fx in &DIM6 {
            let r = fixture_report(fx, 1e-9).unwrap();
            assert!(r.violations.is_empty(), "{:?}", r.violations);
            assert!(r.reciprocity && r.roots.symmetric);
            assert_eq!(r.roots.certificate, CertificateStatus::Refuted);
        }
        let strip = fixture_report(by_id(1930).unwrap(), 1e-9).unwrap();
        assert!(!strip.roots.in_canonical_strip);
        assert!(strip.root_with_positive_real_part && strip.root_with_real_part_below_minus_one);
    }
}
