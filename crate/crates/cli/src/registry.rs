//! Named verification checks and the JSON report they produce.

use std::time::Instant;

use serde::Serialize;

use qeuclid_core::geometry::Geometry;
use qeuclid_core::par;
use qeuclid_core::properties;
use qeuclid_core::report::Report;
use qeuclid_core::soq3::FlipChoice;
use qeuclid_core::Result;

pub const SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 20;

type Runner = fn(&Geometry, u64) -> Result<Report>;

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    run: Runner,
}

fn connection(g: &Geometry, c: FlipChoice) -> Result<Report> {
    g.verify_connection(c)
}

/// All checks, sorted by id.
pub fn registry() -> Vec<Check> {
    let mut v = vec![
        Check { id: "rhat", anchor: "braid matrix: braid equation, projector decomposition, ranks, trace projector, coordinate relations", run: |g, _| Ok(g.alg().soq3().verify_rhat_consistency()) },
        Check { id: "exterior", anchor: "exterior algebra cut out by the symmetric and trace projectors", run: |g, _| properties::exterior(g.alg()) },
        Check { id: "rules", anchor: "one-form commutation rules with x0^-1 and r, derived and multiplied back", run: |g, _| properties::derived_rules(g.alg()) },
        Check { id: "confluence", anchor: "normal ordering is independent of the reduction order", run: |g, s| properties::confluence(g.alg(), s, properties::CONFLUENCE_WORDS) },
        Check { id: "grading", anchor: "normal ordering preserves degree, dilatation degree, charge and weight", run: |g, s| properties::grading(g.alg(), s, properties::CONFLUENCE_WORDS) },
        Check { id: "d-squared", anchor: "d^2 = 0", run: |g, s| properties::d_squared(g.alg(), s, properties::RANDOM_ELEMENTS) },
        Check { id: "d-dirac", anchor: "df = -[theta, f] with the Dirac element", run: |g, s| properties::d_agreement(g.alg(), s, 20) },
        Check { id: "theta-squared", anchor: "theta^2 commutes with the algebra", run: |g, _| properties::theta_squared(g.alg()) },
        Check { id: "star-a", anchor: "real structure on the coordinates", run: |g, s| properties::star_a(g.alg(), s, 20) },
        Check { id: "frame-centrality", anchor: "frame elements commute with every generator", run: |g, _| g.verify_frame_centrality() },
        Check { id: "frame-duality", anchor: "Dirac element and inner derivations of the frame, df = (e_a f) theta^a", run: |g, _| g.verify_duality_and_dirac() },
        Check { id: "frame-rtt", anchor: "RTT and gTT relations of the frame matrix", run: |g, _| g.verify_rtt_gtt() },
        Check { id: "frame-relations", anchor: "quadratic relations of the frame and the lambda commutation pattern", run: |g, _| g.verify_theta_relations() },
        Check { id: "flip-qR", anchor: "torsion-free connection with S = qR: flip axioms and Leibniz rules", run: |g, _| connection(g, FlipChoice::QR) },
        Check { id: "flip-qRinv", anchor: "torsion-free connection with S = (qR)^-1: flip axioms and Leibniz rules", run: |g, _| connection(g, FlipChoice::QRInverse) },
        Check { id: "compat-factor-qR", anchor: "metric compatibility up to the conformal factor q^2", run: |g, _| g.metric_compatibility(FlipChoice::QR) },
        Check { id: "compat-factor-qRinv", anchor: "metric compatibility up to the conformal factor q^-2", run: |g, _| g.metric_compatibility(FlipChoice::QRInverse) },
        Check { id: "curvature-qR", anchor: "vanishing curvature, S = qR", run: |g, _| g.curvature(FlipChoice::QR) },
        Check { id: "curvature-qRinv", anchor: "vanishing curvature, S = (qR)^-1", run: |g, _| g.curvature(FlipChoice::QRInverse) },
        Check { id: "star-omega", anchor: "involution on forms with non-constant coefficients", run: |g, _| g.verify_star() },
        Check { id: "volume", anchor: "volume form is central and real", run: |g, _| g.volume_form() },
        Check { id: "classical-limits", anchor: "commutative limit of metric, braid matrix, exterior relations and Dirac element", run: |g, _| properties::classical_limits(g.alg()) },
    ];
    v.sort_by_key(|c| c.id);
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub paper_anchor: String,
    pub status: &'static str,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub findings: usize,
    #[serde(skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub info: std::collections::BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }
}

pub fn run_check(geo: &Geometry, c: &Check, seed: u64) -> CheckResult {
    let t = Instant::now();
    let out = (c.run)(geo, seed);
    let elapsed_ms = t.elapsed().as_millis();
    let (status, witness, findings, info) = match out {
        Ok(rep) => {
            let status = if rep.passed() { "pass" } else { "fail" };
            (status, rep.first_failure(), rep.findings.len(), rep.info)
        }
        Err(e) => ("error", Some(e.to_string()), 0, Default::default()),
    };
    CheckResult { check: c.id.into(), paper_anchor: c.anchor.into(), status, elapsed_ms, witness, findings, info }
}

/// Runs the selected checks concurrently; output stays in id order.
pub fn run(geo: &Geometry, selected: &[Check], seed: u64) -> VerifyReport {
    let checks = par::map(selected, |c| run_check(geo, c, seed));
    VerifyReport { schema: SCHEMA, seed, checks }
}

/// `all` or one id; `None` for an unknown id.
pub fn select(which: &str) -> Option<Vec<Check>> {
    let all = registry();
    if which == "all" {
        return Some(all);
    }
    let hit: Vec<Check> = all.into_iter().filter(|c| c.id == which).collect();
    (!hit.is_empty()).then_some(hit)
}
