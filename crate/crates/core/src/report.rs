//! Structured reports produced by the CLI: serializable, deterministic
//! (sorted containers and stable field order), with a plain-text rendering.

use serde::Serialize;

use crate::intersect::{CertReport, IntersectionResult};
use crate::selftest::SuiteResult;

#[derive(Serialize)]
pub struct IntersectReport {
    pub command: &'static str,
    pub scenario: String,
    pub bound: i64,
    pub witness_count: usize,
    /// Coefficient vectors in lexicographic order.
    pub witnesses: Vec<Vec<i64>>,
    /// Degree proxy of each witness point, same order.
    pub witness_degrees: Vec<String>,
}

impl IntersectReport {
    pub fn new(scenario: &str, result: &IntersectionResult) -> Self {
        IntersectReport {
            command: "intersect",
            scenario: scenario.to_string(),
            bound: result.bound,
            witness_count: result.witnesses.len(),
            witnesses: result
                .witnesses
                .iter()
                .map(|(c, _)| c.entries().to_vec())
                .collect(),
            witness_degrees: result
                .witnesses
                .iter()
                .map(|(_, p)| p.degree_proxy().to_string())
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "intersect {}\nbound: {}\nwitnesses ({}):\n",
            self.scenario, self.bound, self.witness_count
        );
        for (c, d) in self.witnesses.iter().zip(&self.witness_degrees) {
            out.push_str(&format!("  {c:?} (degree {d})\n"));
        }
        out
    }
}

#[derive(Serialize)]
pub struct FailureEntry {
    pub location: String,
    pub witness: String,
    pub reason: String,
}

#[derive(Serialize)]
pub struct CertifyReport {
    pub command: &'static str,
    pub scenario: String,
    pub verdict: String,
    pub bound: i64,
    pub cap: u32,
    pub witnesses: Vec<Vec<i64>>,
    pub soundness_failures: Vec<FailureEntry>,
    pub completeness_failures: Vec<FailureEntry>,
    pub bounded_gaps: Vec<String>,
}

impl CertifyReport {
    pub fn new(scenario: &str, report: &CertReport) -> Self {
        let convert = |f: &crate::intersect::CertFailure| FailureEntry {
            location: f.location.clone(),
            witness: f.witness.clone(),
            reason: f.reason.clone(),
        };
        CertifyReport {
            command: "certify",
            scenario: scenario.to_string(),
            verdict: report.verdict.to_string(),
            bound: report.bound,
            cap: report.cap,
            witnesses: report
                .witnesses
                .iter()
                .map(|c| c.entries().to_vec())
                .collect(),
            soundness_failures: report.soundness_failures.iter().map(convert).collect(),
            completeness_failures: report.completeness_failures.iter().map(convert).collect(),
            bounded_gaps: report.bounded_gaps.clone(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "certify {}\nverdict: {}\nbound: {}, cap: {}\nwitnesses: {:?}\n",
            self.scenario, self.verdict, self.bound, self.cap, self.witnesses
        );
        for f in &self.soundness_failures {
            out.push_str(&format!(
                "soundness failure at {}: {} ({})\n",
                f.location, f.witness, f.reason
            ));
        }
        for f in &self.completeness_failures {
            out.push_str(&format!(
                "completeness failure: {} ({})\n",
                f.witness, f.reason
            ));
        }
        for g in &self.bounded_gaps {
            out.push_str(&format!("bounded gap: {g}\n"));
        }
        out
    }
}

#[derive(Serialize)]
pub struct CharPolyEntry {
    pub a4: i64,
    pub a6: i64,
    pub point_count: u64,
    pub trace: i64,
    /// Coefficients lowest-first, e.g. `[5, -2, 1]`.
    pub char_poly: Vec<i64>,
}

#[derive(Serialize)]
pub struct CharPolyReport {
    pub command: &'static str,
    pub scenario: String,
    pub q: u64,
    pub curves: Vec<CharPolyEntry>,
    /// h(F) = 0 for the product group, lowest-first.
    pub group_relation: Vec<String>,
}

impl CharPolyReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("charpoly {} (q = {})\n", self.scenario, self.q);
        for c in &self.curves {
            out.push_str(&format!(
                "  y^2 = x^3 + {}x + {}: #E = {}, trace {}, char poly {:?}\n",
                c.a4, c.a6, c.point_count, c.trace, c.char_poly
            ));
        }
        out.push_str(&format!("group relation: {:?}\n", self.group_relation));
        out
    }
}

#[derive(Serialize)]
pub struct RecurrenceOut {
    pub command: &'static str,
    pub relation: Vec<String>,
    pub cap: u64,
    /// Vectors a_n, n = 0..=cap, entries as decimal strings.
    pub vectors: Vec<Vec<String>>,
    pub verified: Option<RecurrenceVerifyOut>,
}

#[derive(Serialize)]
pub struct RecurrenceVerifyOut {
    pub ok: bool,
    pub generic_proof: bool,
    pub direct_up_to: Option<u64>,
    pub reduction_places: usize,
    pub failures: Vec<String>,
}

impl RecurrenceOut {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "recurrence relation {:?}, cap {}\n",
            self.relation, self.cap
        );
        for (n, v) in self.vectors.iter().enumerate() {
            out.push_str(&format!("  a_{n} = {v:?}\n"));
        }
        if let Some(v) = &self.verified {
            out.push_str(&format!(
                "verified: {} (generic proof: {}, direct up to n = {:?}, {} reduction places)\n",
                v.ok, v.generic_proof, v.direct_up_to, v.reduction_places
            ));
            for f in &v.failures {
                out.push_str(&format!("  failure: {f}\n"));
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct SelftestSuiteOut {
    pub name: String,
    pub samples: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Serialize)]
pub struct SelftestReport {
    pub command: &'static str,
    pub seed: u64,
    pub ok: bool,
    pub suites: Vec<SelftestSuiteOut>,
}

impl SelftestReport {
    pub fn new(seed: u64, suites: &[SuiteResult]) -> Self {
        SelftestReport {
            command: "selftest",
            seed,
            ok: suites.iter().all(SuiteResult::ok),
            suites: suites
                .iter()
                .map(|s| SelftestSuiteOut {
                    name: s.name.clone(),
                    samples: s.samples,
                    passed: s.ok(),
                    failures: s.failures.clone(),
                })
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("selftest (seed {})\n", self.seed);
        for s in &self.suites {
            out.push_str(&format!(
                "  {:<32} {:>4} samples  {}\n",
                s.name,
                s.samples,
                if s.passed { "ok" } else { "FAILED" }
            ));
            for f in &s.failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out.push_str(if self.ok {
            "all suites passed\n"
        } else {
            "FAILURES\n"
        });
        out
    }
}

#[derive(Serialize)]
pub struct IdentityCheckOut {
    pub n: u32,
    pub scalar: i64,
    pub torus_direct: bool,
    pub elliptic_direct: bool,
    pub elliptic_via_relation: bool,
}

#[derive(Serialize)]
pub struct ExampleReport {
    pub command: &'static str,
    pub scenario: String,
    pub intersect: IntersectReport,
    pub certify: Option<CertifyReport>,
    pub charpoly: CharPolyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_identity: Option<Vec<IdentityCheckOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_identity: Option<Vec<IdentityCheckOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceOut>,
    pub ok: bool,
}

impl ExampleReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.charpoly.render_text());
        out.push_str(&self.intersect.render_text());
        if let Some(c) = &self.certify {
            out.push_str(&c.render_text());
        }
        if let Some(checks) = &self.even_identity {
            out.push_str("even twist identity:\n");
            for c in checks {
                out.push_str(&format!(
                    "  n = {}: scalar {}, torus {}, elliptic direct {}, via relation {}\n",
                    c.n, c.scalar, c.torus_direct, c.elliptic_direct, c.elliptic_via_relation
                ));
            }
        }
        if let Some(checks) = &self.odd_identity {
            out.push_str("odd twist identity:\n");
            for c in checks {
                out.push_str(&format!(
                    "  n = {}: scalar {}, torus {}, elliptic direct {}, via relation {}\n",
                    c.n, c.scalar, c.torus_direct, c.elliptic_direct, c.elliptic_via_relation
                ));
            }
        }
        if let Some(r) = &self.recurrence {
            out.push_str(&r.render_text());
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.ok { "ok" } else { "FAILED" }
        ));
        out
    }
}
