use serde::Serialize;

use super::{build_operators, prod, scaled, Irrep, IrrepParams, Op};
use crate::error::Result;
use crate::par;
use crate::report::Report;

pub const RELATION_TOL: f64 = 1e-10;
pub const ADJOINT_TOL: f64 = 1e-12;
pub const KILL_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ResidualReport {
    pub interior_states: usize,
    pub residuals: Vec<Residual>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }

    pub fn to_report(&self) -> Report {
        let mut rep = Report::new();
        for r in &self.residuals {
            rep.check(format!("{} <= {:e}", r.name, r.tolerance), r.passed, || format!("residual {:e}", r.value));
            rep.info(format!("residual {}", r.name), format!("{:e}", r.value));
        }
        rep.info("interior states", self.interior_states);
        rep
    }
}

/// `Σ c_k M_k = 0` as a list of terms.
struct Relation {
    name: &'static str,
    terms: Vec<(f64, Op)>,
    tol: f64,
}

fn column_max(m: &Op, j: usize) -> f64 {
    m.outer_view(j).map_or(0.0, |v| v.iter().fold(0.0, |a, (_, x)| a.max(x.abs())))
}

/// Largest relative column residual over `cols`: `|Σ c M ψ|∞ / Σ |c| |M ψ|∞`.
fn relative_residual(terms: &[(f64, Op)], cols: &[usize]) -> f64 {
    let sum = terms.iter().skip(1).fold(scaled(&terms[0].1, terms[0].0), |acc, (c, m)| (&acc + &scaled(m, *c)).to_csc());
    cols.iter()
        .map(|&j| {
            let scale: f64 = terms.iter().map(|(c, m)| c.abs() * column_max(m, j)).sum();
            let v = column_max(&sum, j);
            if scale > 0.0 {
                v / scale
            } else {
                v
            }
        })
        .fold(0.0, f64::max)
}

fn transpose(m: &Op) -> Op {
    m.transpose_view().to_owned().to_csc()
}

fn relations(irr: &Irrep) -> Vec<Relation> {
    let p = &irr.params;
    let (q, s, h) = (p.q, p.s(), p.h());
    let op = |n: &str| irr.op(n).clone();
    let pr = |names: &[&str]| prod(&names.iter().map(|n| irr.op(n)).collect::<Vec<_>>());
    let id = sprs::CsMat::<f64>::eye(irr.basis.len());
    let rel = |name, terms| Relation { name, terms, tol: RELATION_TOL };
    let adj = |name, terms| Relation { name, terms, tol: ADJOINT_TOL };
    vec![
        rel("x- x0 = q x0 x-", vec![(1.0, pr(&["x-", "x0"])), (-q, pr(&["x0", "x-"]))]),
        rel("x+ x0 = q^-1 x0 x+", vec![(1.0, pr(&["x+", "x0"])), (-1.0 / q, pr(&["x0", "x+"]))]),
        rel("[x+, x-] = h x0^2", vec![(1.0, pr(&["x+", "x-"])), (-1.0, pr(&["x-", "x+"])), (-h, pr(&["x0", "x0"]))]),
        rel(
            "r^2 = s x+x- + x0^2 + s^-1 x-x+",
            vec![(1.0, pr(&["r", "r"])), (-s, pr(&["x+", "x-"])), (-1.0, pr(&["x0", "x0"])), (-1.0 / s, pr(&["x-", "x+"]))],
        ),
        rel("[r, x-] = 0", vec![(1.0, pr(&["r", "x-"])), (-1.0, pr(&["x-", "r"]))]),
        rel("[r, x0] = 0", vec![(1.0, pr(&["r", "x0"])), (-1.0, pr(&["x0", "r"]))]),
        rel("[r, x+] = 0", vec![(1.0, pr(&["r", "x+"])), (-1.0, pr(&["x+", "r"]))]),
        rel("x- L = q L x-", vec![(1.0, pr(&["x-", "L"])), (-q, pr(&["L", "x-"]))]),
        rel("x0 L = q L x0", vec![(1.0, pr(&["x0", "L"])), (-q, pr(&["L", "x0"]))]),
        rel("x+ L = q L x+", vec![(1.0, pr(&["x+", "L"])), (-q, pr(&["L", "x+"]))]),
        rel("r L = q L r", vec![(1.0, pr(&["r", "L"])), (-q, pr(&["L", "r"]))]),
        rel("L L^-1 = 1", vec![(1.0, pr(&["L", "L^-1"])), (-1.0, id.clone())]),
        rel("x0 x0^-1 = 1", vec![(1.0, pr(&["x0", "x0^-1"])), (-1.0, id.clone())]),
        rel("l- l0 = q l0 l-", vec![(1.0, pr(&["l-", "l0"])), (-q, pr(&["l0", "l-"]))]),
        rel("l+ l0 = q^-1 l0 l+", vec![(1.0, pr(&["l+", "l0"])), (-1.0 / q, pr(&["l0", "l+"]))]),
        rel("[l+, l-] = h l0^2", vec![(1.0, pr(&["l+", "l-"])), (-1.0, pr(&["l-", "l+"])), (-h, pr(&["l0", "l0"]))]),
        adj("adjoint(x-) = s x+", vec![(1.0, transpose(&op("x-"))), (-s, op("x+"))]),
        adj("adjoint(L) L = 1", vec![(1.0, prod(&[&transpose(&op("L")), irr.op("L")])), (-1.0, id.clone())]),
        adj("adjoint(x0) = x0", vec![(1.0, transpose(&op("x0"))), (-1.0, op("x0"))]),
        adj("adjoint(r) = r", vec![(1.0, transpose(&op("r"))), (-1.0, op("r"))]),
    ]
}

/// Relative residuals of every defining relation on interior states, plus
/// `x⁺|0, n, m⟩ = 0`.
pub fn check_relations(p: &IrrepParams) -> Result<ResidualReport> {
    let irr = build_operators(p)?;
    Ok(check_relations_on(&irr, |b| irr.is_interior(b)))
}

/// As [`check_relations`] but restricted to the states selected by `keep`.
pub fn check_relations_on(irr: &Irrep, keep: impl Fn(super::BasisIndex) -> bool) -> ResidualReport {
    let cols: Vec<usize> = irr.basis.states().iter().enumerate().filter(|(_, b)| keep(**b)).map(|(i, _)| i).collect();
    let rels = relations(irr);
    let values = par::map(&rels, |r| relative_residual(&r.terms, &cols));
    let mut residuals: Vec<Residual> = rels
        .iter()
        .zip(values)
        .map(|(r, v)| Residual { name: r.name.to_string(), value: v, tolerance: r.tol, passed: v <= r.tol })
        .collect();

    let ground: Vec<usize> = irr.basis.states().iter().enumerate().filter(|(_, b)| b.n0 == 0).map(|(i, _)| i).collect();
    let xp = irr.op("x+");
    let kill = ground.iter().map(|&j| column_max(xp, j)).fold(0.0, f64::max);
    residuals.push(Residual { name: "x+ on n0 = 0".into(), value: kill, tolerance: KILL_TOL, passed: kill <= KILL_TOL });
    let p = &irr.params;
    let floor = (-p.n_max..=p.n_max)
        .map(|n| p.ladder_diagonals(0, n).1.abs() / p.r_value(n).powi(2))
        .fold(0.0, f64::max);
    residuals.push(Residual {
        name: "x-x+ on n0 = 0 (relative)".into(),
        value: floor,
        tolerance: KILL_TOL,
        passed: floor <= KILL_TOL,
    });
    ResidualReport { interior_states: cols.len(), residuals }
}

/// Sign, accumulation and growth claims about the spectra of `x⁰` and `r`.
pub fn spectra_report(p: &IrrepParams) -> Result<Report> {
    let irr = build_operators(p)?;
    let mut rep = Report::new();
    let x0 = irr.diagonal("x0");
    let r = irr.diagonal("r");
    let states = irr.basis.states();

    let eta = f64::from(p.eta);
    let same_sign = x0.iter().all(|v| v * eta > 0.0);
    rep.check(format!("spec(x0) has sign {}", if p.eta > 0 { "+" } else { "-" }), same_sign, || {
        "mixed signs".into()
    });

    let mut worst: f64 = 0.0;
    for (i, b) in states.iter().enumerate() {
        worst = worst.max((x0[i] - p.x0_value(b.n0, b.n)).abs() / p.x0_value(b.n0, b.n).abs());
        worst = worst.max((r[i] - p.r_value(b.n)).abs() / p.r_value(b.n));
    }
    rep.check("diagonals match closed forms", worst <= 1e-15, || format!("relative deviation {worst:e}"));

    // min |x⁰| over n₀ ≤ N at n = 0 is c q^{−N−1/2}
    let mut mins = Vec::new();
    let mut ok = true;
    for big_n in 0..=p.n0_max {
        let m = states
            .iter()
            .zip(&x0)
            .filter(|(b, _)| b.n == 0 && b.n0 <= big_n)
            .map(|(_, v)| v.abs())
            .fold(f64::INFINITY, f64::min);
        let want = p.c * p.q.powf(-f64::from(big_n) - 0.5);
        ok &= (m - want).abs() <= 1e-14 * want;
        mins.push(m);
    }
    let shrinking = mins.windows(2).all(|w| (w[0] / w[1] - p.q).abs() <= 1e-12 * p.q);
    rep.check("min |x0| over n0 <= N is c q^(-N-1/2)", ok && shrinking, || format!("{mins:?}"));
    rep.info("min |x0| in truncation", format!("{:e}", mins.last().copied().unwrap_or(f64::NAN)));

    let ladder: Vec<f64> = (-p.n_max..=p.n_max).map(|n| p.x0_value(0, n).abs()).collect();
    let gaps: Vec<f64> = ladder.windows(2).map(|w| w[1] - w[0]).collect();
    let growing = gaps.windows(2).all(|g| g[1] > g[0]);
    rep.check("|x0| gaps grow with n at fixed n0", growing, || format!("{gaps:?}"));

    let rs: Vec<f64> = (-p.n_max..=p.n_max).map(|n| r[irr.basis.position(super::BasisIndex { n0: 0, n, m: 0 }).unwrap()]).collect();
    let ratio_ok = rs.windows(2).all(|w| (w[1] / w[0] - p.q).abs() <= 1e-12 * p.q);
    rep.check("consecutive r eigenvalues have ratio q", ratio_ok, || format!("{rs:?}"));
    rep.info("spec(r)", format!("{rs:?}"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irrep_satisfies_relations() {
        let p = IrrepParams::new(1, 1.2, 1.5, 5, 4, 3).unwrap();
        let rep = check_relations(&p).unwrap();
        assert!(rep.passed(), "{:#?}", rep.residuals.iter().filter(|r| !r.passed).collect::<Vec<_>>());
        assert!(rep.interior_states > 0);
    }

    #[test]
    fn detects_a_wrong_relation() {
        let p = IrrepParams::new(1, 1.2, 1.5, 4, 3, 3).unwrap();
        let irr = build_operators(&p).unwrap();
        let bad = [(1.0, prod(&[irr.op("x+"), irr.op("x0")])), (-p.q, prod(&[irr.op("x0"), irr.op("x+")]))];
        let cols: Vec<usize> = (0..irr.basis.len()).filter(|&i| irr.is_interior(irr.basis.states()[i])).collect();
        assert!(relative_residual(&bad, &cols) > 1e-3);
    }

    #[test]
    fn spectra_claims_hold() {
        let p = IrrepParams::new(-1, 1.0, 2.0, 6, 4, 2).unwrap();
        let rep = spectra_report(&p).unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure());
    }
}
