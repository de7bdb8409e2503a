//! Output documents: `{ "meta": {version, seed}, "records": [...] }`.
//!
//! Symbolic content is exact: closed forms use the structured term list of
//! `minsurf::exprcore::serial`, with every number a fraction string.

use minsurf::exprcore::serial::ClosedFormDto;
use minsurf::exprcore::{fmt_rat, ClosedForm, ExprError, QPoly};
use minsurf::hierarchy::{
    check_fixture, determining_residual, fixtures, generate_symmetry, quadrature_constant_symmetries, ChainSpec,
    ContactPolynomial, HierarchyError,
};
use minsurf::numcheck::{sample_verify, Claim};
use serde::{Deserialize, Serialize};

use crate::display::{coefficient_text, symmetry_latex, symmetry_text};
use crate::parse::parse_symmetry;

pub const NUMERIC_TRIALS: usize = 200;
pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub seed: u64,
}

impl Meta {
    pub fn new(seed: u64) -> Self {
        Self { version: env!("CARGO_PKG_VERSION").to_string(), seed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document<R> {
    pub meta: Meta,
    pub records: Vec<R>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub q_power: u32,
    pub terms: ClosedFormDto,
    pub display: String,
}

/// How a tabulated symmetry relates to the generator's output:
/// `generated = scale·printed + c₀·h₀ + c₁·h₁`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub generated_by: String,
    pub scale: String,
    pub homogeneous_constants: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryRecord {
    pub name: Option<String>,
    pub parity: Option<String>,
    pub k: Option<u32>,
    pub branch: Option<String>,
    pub display: String,
    pub coefficients: Vec<CoefficientRecord>,
    pub normalization: Option<Normalization>,
    pub verified: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("record is malformed: {0}")]
    Malformed(String),
}

impl SymmetryRecord {
    fn build(phi: &ContactPolynomial, verified: bool) -> Result<Self, RecordError> {
        let coefficients = phi
            .coefficients()
            .map(|(j, c)| Ok(CoefficientRecord { q_power: j, terms: ClosedFormDto::from(c), display: coefficient_text(c)? }))
            .collect::<Result<_, ExprError>>()?;
        Ok(Self {
            name: None,
            parity: phi.parity().map(|p| p.to_string()),
            k: None,
            branch: None,
            display: symmetry_text(phi)?,
            coefficients,
            normalization: None,
            verified,
        })
    }

    /// Generates the symmetry of `spec` and checks it symbolically and at
    /// sample points.
    pub fn generated(spec: ChainSpec, seed: u64) -> Result<(Self, ContactPolynomial), RecordError> {
        let phi = generate_symmetry(spec)?;
        let mut r = Self::build(&phi, self_verify(&phi, seed))?;
        r.parity = Some(spec.parity.to_string());
        r.k = Some(spec.k);
        r.branch = Some(spec.branch.to_string());
        Ok((r, phi))
    }

    /// The exact symmetry from the structured coefficients.
    pub fn symmetry(&self) -> Result<ContactPolynomial, RecordError> {
        let mut poly = QPoly::zero();
        for c in &self.coefficients {
            let cf = ClosedForm::try_from(&c.terms).map_err(|e| RecordError::Malformed(e.to_string()))?;
            poly = poly.add(&QPoly::monomial(cf, c.q_power));
        }
        Ok(ContactPolynomial::new(poly))
    }

    /// The structured terms and the display string describe the same
    /// symmetry, and it solves the determining equation.
    pub fn recheck(&self) -> Result<bool, RecordError> {
        let phi = self.symmetry()?;
        let parsed = parse_symmetry(&self.display).map_err(|e| RecordError::Malformed(e.to_string()))?;
        Ok(&parsed == phi.poly() && determining_residual(&phi).is_zero())
    }

    pub fn latex(&self) -> Result<String, RecordError> {
        Ok(symmetry_latex(&self.symmetry()?)?)
    }
}

pub fn self_verify(phi: &ContactPolynomial, seed: u64) -> bool {
    determining_residual(phi).is_zero()
        && sample_verify("determining equation", &Claim::DeterminingEquation(phi), NUMERIC_TRIALS, NUMERIC_TOL, seed)
            .passed()
}

/// The tabulated symmetries with their normalizations, then the generated
/// ones for `2 ≤ k ≤ kmax`.
pub fn table(kmax: u32, seed: u64) -> Result<Vec<SymmetryRecord>, RecordError> {
    let mut out = Vec::new();
    for (name, printed, from_constants) in quadrature_constant_symmetries() {
        let mut r = SymmetryRecord::build(&printed, printed == from_constants && self_verify(&printed, seed))?;
        r.name = Some(name.to_string());
        r.normalization = Some(Normalization {
            generated_by: "terminal homogeneous solution".to_string(),
            scale: "1".to_string(),
            homogeneous_constants: Vec::new(),
        });
        out.push(r);
    }
    for f in fixtures() {
        let check = check_fixture(&f)?;
        let mut r = SymmetryRecord::build(&f.printed, check.passed() && self_verify(&f.printed, seed))?;
        r.name = Some(f.name.to_string());
        r.k = Some(f.spec.k);
        r.branch = Some(f.spec.branch.to_string());
        r.normalization = Some(Normalization {
            generated_by: f.spec.to_string(),
            scale: fmt_rat(&f.scale),
            homogeneous_constants: f.constants.iter().map(fmt_rat).collect(),
        });
        out.push(r);
    }
    for k in 2..=kmax {
        for parity in [minsurf::hierarchy::Parity::Even, minsurf::hierarchy::Parity::Odd] {
            for branch in [minsurf::hierarchy::Branch::Re, minsurf::hierarchy::Branch::Im] {
                out.push(SymmetryRecord::generated(ChainSpec::new(parity, k, branch), seed)?.0);
            }
        }
    }
    Ok(out)
}

fn latex_label(r: &SymmetryRecord) -> String {
    match (&r.name, &r.parity, r.k, &r.branch) {
        (Some(name), ..) => {
            let (base, sub) = name.split_once('_').unwrap_or((name.as_str(), ""));
            let idx = base.trim_start_matches("phi");
            if sub.is_empty() {
                format!("\\varphi_{{{idx}}}")
            } else {
                format!("\\varphi_{{{idx}}}^{{{sub}}}")
            }
        }
        (None, Some(parity), Some(k), Some(branch)) => format!("\\varphi^{{\\mathrm{{{parity}}}}}_{{{k},\\mathrm{{{branch}}}}}"),
        _ => "\\varphi".to_string(),
    }
}

/// An `align*` block, one symmetry per line.
pub fn latex_document(records: &[SymmetryRecord]) -> Result<String, RecordError> {
    let mut lines = Vec::new();
    for r in records {
        let mut line = format!("{} &= {}", latex_label(r), r.latex()?);
        if let Some(n) = &r.normalization {
            if n.scale != "1" || n.homogeneous_constants.iter().any(|c| c != "0") {
                line.push_str(&format!(
                    " && \\text{{scale {}, constants ({})}}",
                    n.scale,
                    n.homogeneous_constants.join(", ")
                ));
            }
        }
        lines.push(line);
    }
    Ok(format!("\\begin{{align*}}\n{}\n\\end{{align*}}\n", lines.join(" \\\\\n")))
}
