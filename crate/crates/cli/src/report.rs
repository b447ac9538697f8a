//! Structured results. Every rational is stored as an exact `p/q` string.

use std::fmt;

use ehrhart_core::rootcert::{Certificate, ComplexApprox, RootReport};
use ehrhart_core::RationalPolynomial;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::input::parse_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    Certified,
    Refuted,
    /// The polynomial fails reciprocity, so the exact test does not apply.
    NotApplicable,
}

impl From<Certificate> for CertificateStatus {
    fn from(c: Certificate) -> Self {
        match c {
            Certificate::Certified => Self::Certified,
            Certificate::Refuted => Self::Refuted,
            Certificate::NotSymmetric => Self::NotApplicable,
        }
    }
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Certified => "certified: every root has real part -1/2",
            Self::Refuted => "refuted: some root is off the line",
            Self::NotApplicable => "not applicable: reciprocity fails",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootValue {
    pub re: String,
    pub im: String,
    pub approx: (f64, f64),
}

impl From<&ComplexApprox> for RootValue {
    fn from(z: &ComplexApprox) -> Self {
        Self { re: z.re.to_string(), im: z.im.to_string(), approx: z.to_f64() }
    }
}

impl RootValue {
    pub fn re_exact(&self) -> BigRational {
        parse_rational(&self.re).expect("stored as an exact rational")
    }

    pub fn im_exact(&self) -> BigRational {
        parse_rational(&self.im).expect("stored as an exact rational")
    }
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx;
        if im == 0.0 {
            write!(f, "{re:.12}")
        } else {
            let sign = if im < 0.0 { '-' } else { '+' };
            write!(f, "{re:.12} {sign} {:.12}i", im.abs())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSummary {
    pub degree: usize,
    pub certificate: CertificateStatus,
    pub exact_canonical_line: bool,
    pub symmetric: bool,
    pub on_line_numeric: bool,
    /// `-1 <= Re z <= 0`.
    pub in_canonical_strip: bool,
    /// `-d <= Re z <= d - 1`.
    pub in_bldps_strip: bool,
    pub in_braun_disc: bool,
    pub braun_radius: String,
    pub digits: u32,
    pub tolerance: f64,
    pub max_residual: f64,
    /// With multiplicity, sorted by real part.
    pub roots: Vec<RootValue>,
}

impl From<&RootReport> for RootSummary {
    fn from(r: &RootReport) -> Self {
        Self {
            degree: r.degree,
            certificate: r.certificate.into(),
            exact_canonical_line: r.certificate.holds(),
            symmetric: r.symmetric,
            on_line_numeric: r.on_line_numeric,
            in_canonical_strip: r.in_canonical_strip,
            in_bldps_strip: r.in_bldps_strip,
            in_braun_disc: r.in_braun_disc,
            braun_radius: r.braun_radius().to_string(),
            digits: r.digits,
            tolerance: r.tolerance,
            max_residual: r.max_residual,
            roots: r.roots.iter().map(RootValue::from).collect(),
        }
    }
}

impl RootSummary {
    pub fn max_real_part(&self) -> Option<BigRational> {
        self.roots.iter().map(RootValue::re_exact).max()
    }

    pub fn min_real_part(&self) -> Option<BigRational> {
        self.roots.iter().map(RootValue::re_exact).min()
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for RootSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "roots ({} digits, max residual {:.3e}):", self.digits, self.max_residual)?;
        for z in &self.roots {
            writeln!(f, "  {z}")?;
        }
        writeln!(f, "certificate: {}", self.certificate)?;
        write!(
            f,
            "numeric (tol {:e}): on line {}, strip [-1, 0] {}, strip [-d, d-1] {}, Braun disc of radius {} {}",
            self.tolerance,
            yes(self.on_line_numeric),
            yes(self.in_canonical_strip),
            yes(self.in_bldps_strip),
            self.braun_radius,
            yes(self.in_braun_disc)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsFlags {
    pub min_vertices: bool,
    pub max_vertices: bool,
    pub b2_window: bool,
    pub discriminant: bool,
}

impl BoundsFlags {
    pub fn all_pass(&self) -> bool {
        self.min_vertices && self.max_vertices && self.b2_window && self.discriminant
    }
}

impl From<ehrhart_core::formulas::BoundsReport> for BoundsFlags {
    fn from(b: ehrhart_core::formulas::BoundsReport) -> Self {
        Self {
            min_vertices: b.min_vertices,
            max_vertices: b.max_vertices,
            b2_window: b.b2_window,
            discriminant: b.discriminant,
        }
    }
}

impl fmt::Display for BoundsFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "min vertices {}, max vertices {}, b2 window {}, discriminant {}",
            yes(self.min_vertices),
            yes(self.max_vertices),
            yes(self.b2_window),
            yes(self.discriminant)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCheck {
    pub up_to: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub dim: usize,
    pub vertices: usize,
    /// `f_{-1}, f_0, ..., f_d`.
    pub f_vector: Vec<u64>,
    pub f0: u64,
    pub b2: u64,
    pub volume: String,
    pub reflexive: bool,
    pub smooth: bool,
    /// Exact coefficients, lowest degree first.
    pub ehrhart: Vec<String>,
    /// Set for smooth polytopes of dimension 2 to 5.
    pub closed_form_match: Option<bool>,
    /// `β²` values from the closed forms, for the same polytopes.
    pub beta_squared: Option<Vec<String>>,
    pub beta_match: Option<bool>,
    pub reciprocity: bool,
    /// Set for reflexive polytopes.
    pub layers: Option<LayerCheck>,
    pub roots: RootSummary,
    /// Set for smooth polytopes of dimension 4 or 5.
    pub bounds: Option<BoundsFlags>,
    /// Set for smooth polytopes of dimension 4.
    pub bhw: Option<(bool, bool)>,
    pub violations: Vec<String>,
}

impl AnalysisReport {
    pub fn ehrhart_polynomial(&self) -> RationalPolynomial {
        RationalPolynomial::new(
            self.ehrhart.iter().map(|c| parse_rational(c).expect("stored as an exact rational")).collect(),
        )
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.input)?;
        let fv: Vec<String> = self.f_vector.iter().map(u64::to_string).collect();
        writeln!(f, "dimension {}, f-vector ({})", self.dim, fv.join(", "))?;
        writeln!(f, "f0 = {}, b2 = {}, volume = {}", self.f0, self.b2, self.volume)?;
        writeln!(f, "reflexive {}, smooth {}", yes(self.reflexive), yes(self.smooth))?;
        writeln!(f, "Ehrhart polynomial: {}", self.ehrhart_polynomial())?;
        if let Some(m) = self.closed_form_match {
            writeln!(f, "closed form agrees: {}", yes(m))?;
        }
        if let Some(betas) = &self.beta_squared {
            let agree = self.beta_match.map_or("", |m| if m { " (agree)" } else { " (DISAGREE)" });
            writeln!(f, "beta^2 from the closed form: {}{agree}", betas.join(", "))?;
        }
        writeln!(f, "reciprocity: {}", yes(self.reciprocity))?;
        if let Some(l) = self.layers {
            writeln!(f, "layer identity for m <= {}: {}", l.up_to, yes(l.holds))?;
        }
        if let Some(b) = self.bounds {
            writeln!(f, "bounds: {b}")?;
        }
        if let Some((a, b)) = self.bhw {
            writeln!(f, "BHW conditions: {}, {}", yes(a), yes(b))?;
        }
        writeln!(f, "{}", self.roots)?;
        if self.violations.is_empty() {
            write!(f, "no invariant violations")
        } else {
            writeln!(f, "INVARIANT VIOLATIONS:")?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub dim: usize,
    pub f0: i64,
    pub b2: i64,
    pub bounds: BoundsFlags,
    pub beta_squared: Vec<String>,
    /// Every `β²` is real and positive.
    pub real_positive: bool,
}

impl TableRow {
    pub fn passes(&self) -> bool {
        self.bounds.all_pass() && self.real_positive
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>3} {:>4}  {}  beta^2: {}",
            self.f0,
            self.b2,
            if self.passes() { "pass" } else { "FAIL" },
            self.beta_squared.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub ids: Vec<u32>,
    pub coeffs: Vec<String>,
    pub reciprocity: bool,
    pub roots: RootSummary,
    pub root_with_positive_real_part: bool,
    pub root_with_real_part_below_minus_one: bool,
    pub violations: Vec<String>,
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.ids.iter().map(u32::to_string).collect();
        writeln!(f, "== fixture {} ==", ids.join("/"))?;
        writeln!(f, "coefficients: {}", self.coeffs.join(","))?;
        writeln!(f, "reciprocity: {}", yes(self.reciprocity))?;
        writeln!(
            f,
            "root with Re z > 0: {}, root with Re z < -1: {}",
            yes(self.root_with_positive_real_part),
            yes(self.root_with_real_part_below_minus_one)
        )?;
        write!(f, "{}", self.roots)?;
        for v in &self.violations {
            write!(f, "\nINVARIANT VIOLATION: {v}")?;
        }
        Ok(())
    }
}
