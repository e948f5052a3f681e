//! Report types shared by the subcommands. All of them round-trip through
//! JSON unchanged.

use curvkind_core::bochner::ric_l_matrix;
use curvkind_core::operators::{first_kind_matrix, ricci_scalar, second_kind_matrix, spectrum};
use curvkind_core::weights::{self, certify_input, certify_spectrum, Certificate, PositivityProfile, Variant};
use curvkind_core::{CurvatureTensor, Result, Spectrum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub operator: String,
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<Cluster>,
}

impl SpectrumReport {
    pub fn new(operator: impl Into<String>, spec: &Spectrum<f64>) -> Self {
        SpectrumReport {
            operator: operator.into(),
            dim: spec.len(),
            eigenvalues: spec.values().to_vec(),
            multiplicities: spec
                .multiplicities()
                .into_iter()
                .map(|m| Cluster { value: m.value, multiplicity: m.multiplicity })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub ricci_eigenvalues: Vec<f64>,
    pub scalar: f64,
    pub einstein_defect: f64,
    pub einstein: bool,
    pub flat: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Positivity {
    pub least_positive: Option<usize>,
    pub least_nonnegative: Option<usize>,
    pub summary: String,
}

impl Positivity {
    fn of(values: &[f64]) -> Self {
        let p = PositivityProfile::of(values);
        Positivity { least_positive: p.least_positive, least_nonnegative: p.least_nonnegative, summary: p.describe() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub weak: Option<f64>,
    pub improved: Option<f64>,
    pub one_form: Option<f64>,
    pub einstein: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormRow {
    pub p: usize,
    pub c_p: Option<f64>,
    pub min_ric_l: f64,
    pub bounds: Bounds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub n: usize,
    pub curvature: CurvatureReport,
    pub second_kind: SpectrumReport,
    pub first_kind: SpectrumReport,
    pub positivity: Positivity,
    pub forms: Vec<FormRow>,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub input: String,
    pub n: usize,
    pub positivity: Positivity,
    pub certificates: Vec<Certificate>,
}

pub fn form_row(r: &CurvatureTensor<f64>, p: usize) -> Result<FormRow> {
    let n = r.n();
    let min_ric_l = ric_l_matrix(r, p)?.eigen().values.min().unwrap_or(0.0);
    let summary = ricci_scalar(r);
    let spec = spectrum(&second_kind_matrix(r));
    let bound = |v: Variant| weights::ric_l_lower_bound(spec.values(), &summary, n, p, v).ok();
    Ok(FormRow {
        p,
        c_p: weights::constants::<f64>(n, p).ok().map(|c| c.c_p),
        min_ric_l,
        bounds: Bounds {
            weak: bound(Variant::Weak),
            improved: bound(Variant::Improved),
            one_form: bound(Variant::OneForm),
            einstein: bound(Variant::Einstein),
        },
    })
}

pub fn analyze(input: String, r: &CurvatureTensor<f64>, ps: &[usize], kappa: Option<f64>) -> Result<AnalysisReport> {
    let summary = ricci_scalar(r);
    let second = spectrum(&second_kind_matrix(r));
    let first = spectrum(&first_kind_matrix(r));
    let cert_in = certify_input(r, kappa);
    Ok(AnalysisReport {
        input,
        n: r.n(),
        curvature: CurvatureReport {
            ricci_eigenvalues: summary.ricci_eigenvalues(),
            scalar: summary.scalar,
            einstein_defect: summary.einstein_defect,
            einstein: cert_in.einstein,
            flat: cert_in.flat,
        },
        second_kind: SpectrumReport::new("second_kind", &second),
        first_kind: SpectrumReport::new("first_kind", &first),
        positivity: Positivity::of(second.values()),
        forms: ps.iter().map(|&p| form_row(r, p)).collect::<Result<_>>()?,
        certificates: certify_spectrum(&cert_in),
    })
}

pub fn certify(input: String, r: &CurvatureTensor<f64>, kappa: Option<f64>) -> CertifyReport {
    let cert_in = certify_input(r, kappa);
    CertifyReport {
        input,
        n: r.n(),
        positivity: Positivity::of(&cert_in.spectrum),
        certificates: certify_spectrum(&cert_in),
    }
}

/// Six significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let s = format!("{:.*}", (5 - mag).max(0) as usize, x);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_else(|| "-".to_string())
}

/// Rounding noise below `1e-12·(1 + ρ)` prints as 0.
fn snap(x: f64, rho: f64) -> f64 {
    if x.abs() <= 1e-12 * (1.0 + rho) {
        0.0
    } else {
        x
    }
}

fn spectrum_lines(out: &mut String, s: &SpectrumReport) {
    let rho = s.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let parts: Vec<String> = s
        .multiplicities
        .iter()
        .map(|c| {
            let v = sig(snap(c.value, rho));
            if c.multiplicity == 1 {
                v
            } else {
                format!("{v} ×{}", c.multiplicity)
            }
        })
        .collect();
    out.push_str(&format!("{} (dim {}): {}\n", s.operator, s.dim, parts.join(", ")));
}

fn certificate_lines(out: &mut String, certs: &[Certificate]) {
    for c in certs {
        let theorem = match c.theorem {
            weights::Theorem::A => "A",
            weights::Theorem::B => "B",
            weights::Theorem::C => "C",
            weights::Theorem::DHypothesis => "D",
        };
        let p = if c.p_range.len() == 1 { format!(" p={}", c.p_range[0]) } else { String::new() };
        let verdict = if c.holds() { "holds" } else { "fails" };
        let sums: Vec<String> = c.sums.iter().map(|s| format!("S({})={}", sig(s.k), sig(s.value))).collect();
        out.push_str(&format!(
            "  {theorem} {}{p}: {} [{}] {verdict}: {}\n",
            c.part,
            c.hypothesis,
            sums.join(", "),
            c.conclusion
        ));
    }
}

pub fn analysis_table(r: &AnalysisReport) -> String {
    let mut out = format!("input: {}\nn = {}\n", r.input, r.n);
    let c = &r.curvature;
    let ric: Vec<String> = c.ricci_eigenvalues.iter().copied().map(sig).collect();
    out.push_str(&format!(
        "Ric eigenvalues: {}\nscal = {}, Einstein defect = {}{}\n",
        ric.join(", "),
        sig(c.scalar),
        sig(c.einstein_defect),
        if c.flat { " (flat)" } else if c.einstein { " (Einstein)" } else { "" }
    ));
    spectrum_lines(&mut out, &r.second_kind);
    spectrum_lines(&mut out, &r.first_kind);
    out.push_str(&format!("second kind: {}\n", r.positivity.summary));
    if !r.forms.is_empty() {
        out.push_str(&format!(
            "{:>3} {:>10} {:>12} {:>12} {:>12} {:>12} {:>12}\n",
            "p", "C_p", "min Ric_L", "weak", "improved", "one_form", "einstein"
        ));
        for f in &r.forms {
            out.push_str(&format!(
                "{:>3} {:>10} {:>12} {:>12} {:>12} {:>12} {:>12}\n",
                f.p,
                opt(f.c_p),
                sig(f.min_ric_l),
                opt(f.bounds.weak),
                opt(f.bounds.improved),
                opt(f.bounds.one_form),
                opt(f.bounds.einstein)
            ));
        }
    }
    out.push_str("certificates:\n");
    certificate_lines(&mut out, &r.certificates);
    out
}

pub fn certify_table(r: &CertifyReport) -> String {
    let mut out = format!("input: {}\nn = {}\nsecond kind: {}\ncertificates:\n", r.input, r.n, r.positivity.summary);
    certificate_lines(&mut out, &r.certificates);
    out
}

pub fn spectrum_table(reports: &[SpectrumReport]) -> String {
    let mut out = String::new();
    for s in reports {
        spectrum_lines(&mut out, s);
        let rho = s.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let vals: Vec<String> = s.eigenvalues.iter().map(|&v| sig(snap(v, rho))).collect();
        out.push_str(&format!("  {}\n", vals.join(" ")));
    }
    out
}
