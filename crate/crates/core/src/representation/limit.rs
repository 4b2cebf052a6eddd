use std::io::Write;

use serde::Serialize;

use super::{build_operators, IrrepParams};
use crate::error::{Error, Result};
use crate::report::Report;

pub const SPACING_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub n0: u32,
    pub n: i32,
    pub m: i32,
    pub r: f64,
    pub x0: f64,
    pub y0: f64,
    pub y_perp: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitMap {
    pub alpha: f64,
    pub eta: i8,
    pub rows: Vec<LimitRow>,
}

impl LimitMap {
    /// One row per basis state, columns `n0,n,m,r,x0,y0,y_perp`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::InvalidParam(format!("csv: {e}")))?;
        }
        w.flush().map_err(|e| Error::InvalidParam(format!("csv: {e}")))
    }

    /// Distinct `y0` values in increasing order.
    pub fn y0_levels(&self) -> Vec<f64> {
        let mut ys: Vec<f64> = self.rows.iter().map(|r| r.y0).collect();
        ys.sort_by(f64::total_cmp);
        ys.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
        ys
    }
}

/// Inverts `x⁰ = e^{αy⁰ − α³/2}` and `r = e^{−α³ + (α²/2) y_⊥² + α y⁰}` state by state,
/// using `|x⁰|` when `η = −1`.
pub fn limit_map(p: &IrrepParams) -> Result<LimitMap> {
    let irr = build_operators(p)?;
    let alpha = p.alpha();
    let x0 = irr.diagonal("x0");
    let r = irr.diagonal("r");
    let rows = irr
        .basis
        .states()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let y0 = x0[i].abs().ln() / alpha + alpha * alpha / 2.0;
            let y2 = 2.0 * ((r[i] / x0[i].abs()).ln() + alpha.powi(3) / 2.0) / (alpha * alpha);
            LimitRow { n0: b.n0, n: b.n, m: b.m, r: r[i], x0: x0[i], y0, y_perp: y2.sqrt() }
        })
        .collect();
    Ok(LimitMap { alpha, eta: p.eta, rows })
}

/// Lattice claims for the limit map.
pub fn limit_report(p: &IrrepParams) -> Result<Report> {
    let map = limit_map(p)?;
    let alpha = map.alpha;
    let mut rep = Report::new();
    let levels = map.y0_levels();
    let steps: Vec<f64> = levels.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = steps.iter().sum::<f64>() / steps.len() as f64;
    let uniform = steps.iter().map(|d| (d - mean).abs()).fold(0.0, f64::max);
    rep.check("y0 levels form an arithmetic progression", uniform <= SPACING_TOL, || format!("spread {uniform:e}"));
    let dev_alpha = steps.iter().map(|d| (d - alpha).abs()).fold(0.0, f64::max);
    rep.check("y0 spacing = alpha", dev_alpha <= SPACING_TOL, || format!("spacing {mean}, alpha {alpha}"));
    let dev_alpha2 = steps.iter().map(|d| (d - alpha * alpha).abs()).fold(0.0, f64::max);
    rep.check("y0 spacing = alpha^2", dev_alpha2 <= SPACING_TOL, || format!("spacing {mean}, alpha^2 {}", alpha * alpha));
    let pos = levels.iter().any(|y| *y > 0.0);
    let neg = levels.iter().any(|y| *y < 0.0);
    rep.check("both signs of y0 occur", pos && neg, || format!("range [{}, {}]", levels[0], levels[levels.len() - 1]));
    let perp = map
        .rows
        .iter()
        .map(|r| (r.y_perp.powi(2) - 2.0 * alpha * f64::from(r.n0 + 1)).abs())
        .fold(0.0, f64::max);
    rep.check("y_perp^2 = 2 alpha (n0 + 1)", perp <= SPACING_TOL, || format!("deviation {perp:e}"));
    rep.info("alpha", alpha);
    rep.info("y0 spacing", mean);
    if p.eta < 0 {
        rep.info("y0 sign sector", "eta = -1: y0 computed from |x0|");
    }
    Ok(rep)
}

/// Annuli `V_{n,n₀}` populated within the truncation.
pub fn annuli_report(p: &IrrepParams) -> Result<Report> {
    p.validate()?;
    let mut rep = Report::new();
    let count = |n0_max: u32| (0..=n0_max).count();
    for n in -p.n_max..=p.n_max {
        let c = count(p.n0_max);
        rep.check(format!("annuli in shell n = {n}"), c == p.n0_max as usize + 1, || c.to_string());
    }
    let growth: Vec<usize> = (0..=p.n0_max).map(count).collect();
    let unbounded = growth.windows(2).all(|w| w[1] == w[0] + 1);
    rep.check("annuli per shell grow by one per unit of n0_max", unbounded, || format!("{growth:?}"));
    rep.info("annuli per shell", p.n0_max + 1);
    rep.info("annulus volume", "C dv with C = 1");
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_spacing_at_e() {
        let p = IrrepParams::new(1, 1.0, std::f64::consts::E, 6, 4, 2).unwrap();
        let map = limit_map(&p).unwrap();
        assert!((map.alpha - 1.0).abs() < 1e-15);
        for w in map.y0_levels().windows(2) {
            assert!((w[1] - w[0] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_has_expected_header() {
        let p = IrrepParams::new(1, 1.0, 2.0, 2, 2, 2).unwrap();
        let mut buf = Vec::new();
        limit_map(&p).unwrap().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n0,n,m,r,x0,y0,y_perp\n"));
        assert_eq!(text.lines().count(), 1 + 3 * 5 * 5);
    }
}
