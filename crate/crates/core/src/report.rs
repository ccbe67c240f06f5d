//! End-to-end runs and their serializable reports. Every polynomial is
//! rendered in the input grammar.

use num_bigint::BigInt;
use serde::Serialize;

use crate::curve::{
    find_rational_point, format_point, ingest_parametrization, is_birational, parametrize_conic,
    parametrize_line, singular_points, BinaryFormTriple, BirationalityCheck, IntTriple, PointClass,
    Provenance, SingularAnalysis,
};
use crate::error::{Error, Result};
use crate::forms::{check_irreducible, IrreducibilityStatus, TernaryForm};
use crate::intval::{certify_external_triple, ExternalTripleReport};
use crate::parse::{parse_poly, parse_poly_in};
use crate::pipeline::{
    compute_gcd_bound, residue_decompose, GcdBoundResult, ParamFamily, WARN_MODULUS,
};
use crate::poly::MultiPoly;
use crate::resultant::BezoutCertificate;
use crate::verify::{verify_box, VerificationReport, VerifyOptions};

pub const DEFAULT_HEIGHT_BOUND: u64 = 100;
pub const BIRATIONALITY_SAMPLES: usize = 64;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub height_bound: u64,
    pub assume_irreducible: bool,
    pub max_d: Option<u64>,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            height_bound: DEFAULT_HEIGHT_BOUND,
            assume_irreducible: false,
            max_d: None,
            seed: 0,
        }
    }
}

pub fn parse_form(text: &str) -> Result<TernaryForm> {
    TernaryForm::new(parse_poly(text, &["X", "Y", "Z"])?)
}

pub fn parse_triple(texts: &[String], vars: &[String]) -> Result<[MultiPoly; 3]> {
    if texts.len() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: texts.len(),
        });
    }
    Ok([
        parse_poly_in(&texts[0], vars)?,
        parse_poly_in(&texts[1], vars)?,
        parse_poly_in(&texts[2], vars)?,
    ])
}

/// A parametrization and how it was obtained.
#[derive(Clone, Debug)]
pub struct Parametrized {
    pub triple: BinaryFormTriple,
    pub base_point: Option<IntTriple>,
    pub birationality: BirationalityCheck,
}

/// Ingests `supplied` (checked for birationality on samples) or constructs
/// a parametrization for lines and conics.
pub fn obtain_parametrization(
    f: &TernaryForm,
    supplied: Option<[MultiPoly; 3]>,
    opts: &RunOptions,
) -> Result<Parametrized> {
    let (triple, base_point) = match supplied {
        Some(polys) => (
            ingest_parametrization(f, polys, Provenance::UserSupplied)?.triple,
            None,
        ),
        None => match f.degree() {
            1 => (parametrize_line(f)?, None),
            2 => {
                let p = find_rational_point(f, opts.height_bound)?;
                (parametrize_conic(f, &p)?, Some(p))
            }
            n => return Err(Error::ParametrizationRequired(n)),
        },
    };
    let birationality = is_birational(f, &triple, BIRATIONALITY_SAMPLES);
    if !birationality.birational {
        let detail = match &birationality.witness {
            Some(((u1, v1), (u2, v2))) => {
                format!("({u1}:{v1}) and ({u2}:{v2}) have the same image")
            }
            None => "a sampled point has no matching preimage".into(),
        };
        return Err(Error::InvalidParametrization {
            code: "not_birational",
            detail,
        });
    }
    Ok(Parametrized {
        triple,
        base_point,
        birationality,
    })
}

/// Everything the pipeline derives from `f` and a parametrization.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub input: String,
    pub form: TernaryForm,
    pub irreducibility: IrreducibilityStatus,
    pub param: Parametrized,
    pub bound: GcdBoundResult,
    pub family: ParamFamily,
    pub singular: SingularAnalysis,
    pub warnings: Vec<String>,
}

impl PipelineRun {
    pub fn bad_points(&self) -> Vec<IntTriple> {
        self.singular.bad_points()
    }
}

pub fn run_pipeline(
    input: &str,
    supplied: Option<[MultiPoly; 3]>,
    opts: &RunOptions,
) -> Result<PipelineRun> {
    let form = parse_form(input)?;
    let irreducibility = check_irreducible(&form, opts.assume_irreducible)?;
    let param = obtain_parametrization(&form, supplied, opts)?;
    let bound = compute_gcd_bound(&param.triple)?;
    let mut warnings = Vec::new();
    if !bound.tightened {
        warnings.push(format!(
            "d = {} is too large to tighten; using it as is",
            bound.d
        ));
    }
    if bound.d_tightened > WARN_MODULUS {
        warnings.push(format!(
            "modulus {} yields up to {} residue classes",
            bound.d_tightened,
            bound.d_tightened.pow(3)
        ));
    }
    let family = residue_decompose(&form, &param.triple, bound.d_tightened, opts.max_d)?;
    let singular = singular_points(&form, Some(&param.triple));
    if !singular.unresolved.is_empty() {
        warnings.push(Error::UnresolvedCandidates(singular.unresolved.join("; ")).to_string());
    }
    Ok(PipelineRun {
        input: input.to_string(),
        form,
        irreducibility,
        param,
        bound,
        family,
        singular,
        warnings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ParametrizationJson {
    pub h1: String,
    pub h2: String,
    pub h3: String,
    pub provenance: Provenance,
    pub base_point: Option<String>,
    pub birational_samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub cofactors: [String; 3],
    pub constant: String,
    pub variable: String,
    pub exponent: u32,
    pub verified: bool,
}

impl From<&BezoutCertificate> for CertificateJson {
    fn from(c: &BezoutCertificate) -> Self {
        CertificateJson {
            cofactors: std::array::from_fn(|i| c.lhs_cofactors[i].to_string()),
            constant: c.rhs_constant.to_string(),
            variable: c.rhs_variable.to_string(),
            exponent: c.rhs_exponent,
            verified: c.verify(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificatesJson {
    pub eq2: CertificateJson,
    pub eq3: CertificateJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMemberJson {
    pub offsets: [u64; 3],
    pub forms: [String; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularPointJson {
    pub point: String,
    pub classification: PointClass,
    pub classification_basis: &'static str,
    pub rational_preimages: Vec<String>,
    pub leftover_form: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularJson {
    pub points: Vec<SingularPointJson>,
    pub unresolved: Vec<String>,
}

impl From<&SingularAnalysis> for SingularJson {
    fn from(s: &SingularAnalysis) -> Self {
        SingularJson {
            points: s
                .points
                .iter()
                .map(|p| SingularPointJson {
                    point: format_point(&p.point),
                    classification: p.classification,
                    classification_basis: "operational",
                    rational_preimages: p
                        .preimage
                        .iter()
                        .flat_map(|pre| pre.rational.iter().map(|(u, v)| format!("({u}:{v})")))
                        .collect(),
                    leftover_form: p
                        .preimage
                        .as_ref()
                        .and_then(|pre| pre.leftover.as_ref())
                        .map(|f| f.to_string()),
                })
                .collect(),
            unresolved: s.unresolved.clone(),
        }
    }
}

/// Stable top-level report shared by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input: String,
    pub normalized: String,
    pub degree: u32,
    pub homogeneous: bool,
    pub irreducibility: Option<IrreducibilityStatus>,
    pub parametrization: Option<ParametrizationJson>,
    pub certificates: Option<CertificatesJson>,
    pub d: Option<u64>,
    pub d_tightened: Option<u64>,
    pub family: Option<Vec<FamilyMemberJson>>,
    pub singular_points: Option<SingularJson>,
    pub verification: Option<VerificationReport>,
    pub external_triple: Option<ExternalTripleReport>,
    pub warnings: Vec<String>,
    pub success: bool,
}

impl Report {
    pub fn for_form(command: &'static str, input: &str, form: &TernaryForm) -> Self {
        Report {
            command,
            input: input.to_string(),
            normalized: form.to_string(),
            degree: form.degree(),
            homogeneous: true,
            irreducibility: None,
            parametrization: None,
            certificates: None,
            d: None,
            d_tightened: None,
            family: None,
            singular_points: None,
            verification: None,
            external_triple: None,
            warnings: Vec::new(),
            success: true,
        }
    }

    pub fn from_run(command: &'static str, run: &PipelineRun) -> Self {
        let h = run.param.triple.forms();
        let mut r = Report::for_form(command, &run.input, &run.form);
        r.irreducibility = Some(run.irreducibility);
        r.parametrization = Some(ParametrizationJson {
            h1: h[0].to_string(),
            h2: h[1].to_string(),
            h3: h[2].to_string(),
            provenance: run.param.triple.provenance,
            base_point: run.param.base_point.as_ref().map(format_point),
            birational_samples: run.param.birationality.samples_checked,
        });
        r.certificates = Some(CertificatesJson {
            eq2: CertificateJson::from(&run.bound.cert_u),
            eq3: CertificateJson::from(&run.bound.cert_v),
        });
        r.d = Some(run.bound.d);
        r.d_tightened = Some(run.bound.d_tightened);
        r.family = Some(
            run.family
                .triples
                .iter()
                .map(|m| FamilyMemberJson {
                    offsets: m.offsets,
                    forms: std::array::from_fn(|i| m.forms[i].to_string()),
                })
                .collect(),
        );
        r.singular_points = Some(SingularJson::from(&run.singular));
        r.warnings = run.warnings.clone();
        r
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        out.push(format!("f = {}  (degree {})", self.normalized, self.degree));
        if let Some(i) = self.irreducibility {
            out.push(format!(
                "irreducibility: {}",
                serde_json::to_value(i).unwrap().as_str().unwrap_or("")
            ));
        }
        if let Some(p) = &self.parametrization {
            out.push(format!(
                "parametrization ({:?}): ({}, {}, {})",
                p.provenance, p.h1, p.h2, p.h3
            ));
            if let Some(bp) = &p.base_point {
                out.push(format!("  base point {bp}"));
            }
        }
        if let Some(c) = &self.certificates {
            for (name, cert) in [("U", &c.eq2), ("V", &c.eq3)] {
                out.push(format!(
                    "certificate ({name}): ({})*h1 + ({})*h2 + ({})*h3 = {}*{}^{}  [{}]",
                    cert.cofactors[0],
                    cert.cofactors[1],
                    cert.cofactors[2],
                    cert.constant,
                    cert.variable,
                    cert.exponent,
                    if cert.verified { "verified" } else { "FAILED" }
                ));
            }
        }
        if let (Some(d), Some(dt)) = (self.d, self.d_tightened) {
            out.push(format!("d = {d}, d_tightened = {dt}"));
        }
        if let Some(fam) = &self.family {
            out.push(format!("family: {} triple(s) in S, T, R", fam.len()));
            for m in fam {
                out.push(format!(
                    "  {:?}: ({}, {}, {})",
                    m.offsets, m.forms[0], m.forms[1], m.forms[2]
                ));
            }
        }
        if let Some(s) = &self.singular_points {
            if s.points.is_empty() {
                out.push("singular points: none".into());
            }
            for p in &s.points {
                let mut line = format!(
                    "singular point {}: {:?} (operational)",
                    p.point, p.classification
                );
                if !p.rational_preimages.is_empty() {
                    line.push_str(&format!(", preimages {}", p.rational_preimages.join(" ")));
                }
                if let Some(l) = &p.leftover_form {
                    line.push_str(&format!(", leftover form {l}"));
                }
                out.push(line);
            }
            for u in &s.unresolved {
                out.push(format!("unresolved: {u}"));
            }
        }
        if let Some(v) = &self.verification {
            out.push(format!(
                "verification box {}: {} solutions, {} covered, {} bad excluded, {} uncovered, {} spurious ({} samples, {} ms): {}",
                v.box_bound,
                v.solutions_found,
                v.covered,
                v.bad_excluded,
                v.uncovered_non_bad.len(),
                v.spurious.len(),
                v.soundness_samples,
                v.wall_time_ms,
                if v.success { "SUCCESS" } else { "FAILURE" }
            ));
            for u in v.uncovered_non_bad.iter().take(20) {
                out.push(format!("  uncovered {:?}: {}", u.point, u.reason));
            }
            for s in v.spurious.iter().take(20) {
                out.push(format!("  spurious ({}, {}, {})", s[0], s[1], s[2]));
            }
        }
        if let Some(e) = &self.external_triple {
            for (i, c) in e.integer_valued.iter().enumerate() {
                out.push(format!(
                    "(i) g{} integer-valued: {} ({})",
                    i + 1,
                    c.passed,
                    c.detail
                ));
            }
            out.push(format!(
                "(ii) identity: {} ({})",
                e.identity.passed, e.identity.detail
            ));
            out.push(format!(
                "(iii) image in family [{}]: {} ({})",
                e.evidence, e.image_in_family.passed, e.image_in_family.detail
            ));
            out.push(format!(
                "(iii) family in image [{}]: {} ({})",
                e.evidence, e.family_in_image.passed, e.family_in_image.detail
            ));
        }
        for w in &self.warnings {
            out.push(format!("warning: {w}"));
        }
        out.join("\n")
    }
}

pub fn analyze(input: &str, supplied: Option<[MultiPoly; 3]>, opts: &RunOptions) -> Result<Report> {
    let form = parse_form(input)?;
    let mut r = Report::for_form("analyze", input, &form);
    r.irreducibility = Some(check_irreducible(&form, opts.assume_irreducible)?);
    let param = match supplied {
        Some(p) => Some(obtain_parametrization(&form, Some(p), opts)?),
        None if form.degree() <= 2 => obtain_parametrization(&form, None, opts).ok(),
        None => None,
    };
    r.singular_points = Some(SingularJson::from(&singular_points(
        &form,
        param.as_ref().map(|p| &p.triple),
    )));
    Ok(r)
}

pub fn parametrize(
    input: &str,
    supplied: Option<[MultiPoly; 3]>,
    opts: &RunOptions,
) -> Result<Report> {
    let run = run_pipeline(input, supplied, opts)?;
    Ok(Report::from_run("parametrize", &run))
}

pub fn verify(
    input: &str,
    supplied: Option<[MultiPoly; 3]>,
    box_bound: u64,
    opts: &RunOptions,
) -> Result<Report> {
    let run = run_pipeline(input, supplied, opts)?;
    let v = verify_box(
        &run.form,
        &run.param.triple,
        &run.family,
        &run.bad_points(),
        box_bound,
        VerifyOptions {
            seed: opts.seed,
            ..Default::default()
        },
    )?;
    let mut r = Report::from_run("verify", &run);
    r.success = v.success;
    r.verification = Some(v);
    Ok(r)
}

pub fn certify_intval(
    input: &str,
    supplied: Option<[MultiPoly; 3]>,
    g: [MultiPoly; 3],
    box_bound: u64,
    opts: &RunOptions,
) -> Result<Report> {
    let run = run_pipeline(input, supplied, opts)?;
    let e = certify_external_triple(&run.form, &g, &run.family, &run.bad_points(), box_bound)?;
    let mut r = Report::from_run("certify-intval", &run);
    r.success = e.passed;
    r.external_triple = Some(e);
    Ok(r)
}

/// Exit status for a failed run: 2 for rejected parametrizations and
/// failed identities, 1 otherwise.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidParametrization { .. }
        | Error::IdentityFailed(_)
        | Error::NotCoprimeTriple => 2,
        _ => 1,
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    code: &'a str,
    message: String,
}

pub fn error_json(err: &Error) -> String {
    serde_json::json!({ "error": ErrorJson { code: err.code(), message: err.to_string() } })
        .to_string()
}

pub fn big_triple(p: [i64; 3]) -> IntTriple {
    p.map(BigInt::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example2_parametrize_report() {
        let r = parametrize("X*Y - Z^2", None, &RunOptions::default()).unwrap();
        assert_eq!((r.d, r.d_tightened), (Some(1), Some(1)));
        let fam = r.family.as_ref().unwrap();
        assert_eq!(fam.len(), 1);
        let json: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in [
            "input",
            "degree",
            "parametrization",
            "certificates",
            "d",
            "d_tightened",
            "family",
            "singular_points",
            "verification",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        // Every serialized polynomial re-parses.
        let p = r.parametrization.unwrap();
        for h in [&p.h1, &p.h2, &p.h3] {
            parse_poly(h, &["U", "V"]).unwrap();
        }
        for form in &fam[0].forms {
            parse_poly(form, &["S", "T", "R"]).unwrap();
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let strip = |r: Report| {
            let mut v = serde_json::to_value(r).unwrap();
            v["verification"]["wall_time_ms"] = serde_json::Value::Null;
            v
        };
        let a = verify("X^2 + Y^2 - Z^2", None, 10, &RunOptions::default()).unwrap();
        let b = verify("X^2 + Y^2 - Z^2", None, 10, &RunOptions::default()).unwrap();
        assert_eq!(strip(a), strip(b));
    }

    #[test]
    fn example1_flags_bad_point() {
        let vars = crate::forms::uv();
        let h = parse_triple(
            &[
                "V*(2*U^2-V^2)".into(),
                "U*(2*U^2-V^2)".into(),
                "V^3+U^3".into(),
            ],
            &vars,
        )
        .unwrap();
        let r = parametrize("X^3+Y^3+X^2*Z-2*Y^2*Z", Some(h), &RunOptions::default()).unwrap();
        let s = r.singular_points.unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].point, "(0:0:1)");
        assert_eq!(s.points[0].classification, PointClass::Bad);
        assert_eq!(s.points[0].leftover_form.as_deref(), Some("2*U^2 - V^2"));
    }

    #[test]
    fn cubic_without_parametrization_is_refused() {
        let err = parametrize("X^3+Y^3+X^2*Z-2*Y^2*Z", None, &RunOptions::default()).unwrap_err();
        assert_eq!(err, Error::ParametrizationRequired(3));
        assert_eq!(exit_code_for(&err), 1);
    }
}
