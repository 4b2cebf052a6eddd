//! Truncated irreducible *-representations on `|n₀, n, m⟩` in which `x⁰` and
//! `r` are diagonal and `Λ` shifts `n`.

mod checks;
mod limit;

pub use checks::{check_relations, check_relations_on, spectra_report, Residual, ResidualReport, ADJOINT_TOL, KILL_TOL, RELATION_TOL};
pub use limit::{annuli_report, limit_map, limit_report, LimitMap, LimitRow};

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use sprs::{CsMat, TriMat};

use crate::error::{Error, Result};

pub type Op = CsMat<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IrrepParams {
    /// `+1` or `-1`: the sign of every `x⁰` eigenvalue.
    pub eta: i8,
    pub c: f64,
    pub q: f64,
    pub n0_max: u32,
    pub n_max: i32,
    pub m_max: i32,
}

impl IrrepParams {
    pub fn new(eta: i8, c: f64, q: f64, n0_max: u32, n_max: i32, m_max: i32) -> Result<Self> {
        let p = IrrepParams { eta, c, q, n0_max, n_max, m_max };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eta != 1 && self.eta != -1 {
            return Err(Error::InvalidParam(format!("eta must be +1 or -1, got {}", self.eta)));
        }
        if !self.q.is_finite() || self.q <= 1.0 {
            return Err(Error::InvalidParam(format!("q must be a finite real > 1, got {}", self.q)));
        }
        if !(self.c >= 1.0 && self.c < self.q) {
            return Err(Error::InvalidParam(format!("c must satisfy c∈[1,q), got c = {} with q = {}", self.c, self.q)));
        }
        if self.n0_max < 2 || self.n_max < 2 || self.m_max < 2 {
            return Err(Error::InvalidParam("truncation bounds must be at least 2".into()));
        }
        Ok(())
    }

    pub fn s(&self) -> f64 {
        self.q.sqrt()
    }

    pub fn h(&self) -> f64 {
        self.s() - 1.0 / self.s()
    }

    /// `α = (ln q)^{1/3}`.
    pub fn alpha(&self) -> f64 {
        self.q.ln().cbrt()
    }

    pub fn r_value(&self, n: i32) -> f64 {
        self.c * self.q.powi(n)
    }

    pub fn x0_value(&self, n0: u32, n: i32) -> f64 {
        f64::from(self.eta) * self.c * self.q.powf(f64::from(n) - f64::from(n0) - 0.5)
    }

    /// Diagonal values of `(x⁺x⁻, x⁻x⁺)` on `|n₀, n⟩` from
    /// `s·A + s⁻¹·B = r² − (x⁰)²` and `A − B = h (x⁰)²`.
    pub fn ladder_diagonals(&self, n0: u32, n: i32) -> (f64, f64) {
        let s = self.s();
        let r2 = self.r_value(n).powi(2);
        let z2 = self.x0_value(n0, n).powi(2);
        let (u, v) = (r2 - z2, self.h() * z2);
        // [[s, 1/s], [1, -1]] (A, B) = (u, v)
        let det = -s - 1.0 / s;
        let a = (-u - v / s) / det;
        let b = (s * v - u) / det;
        (a, b)
    }

    /// `(x⁻x⁺)` on `n₀ = 0` in closed form: `c² q^{2n} (1 − q^{−2n₀}) / (s + s⁻¹)`.
    pub fn xm_xp_closed(&self, n0: u32, n: i32) -> f64 {
        let s = self.s();
        self.c.powi(2) * self.q.powi(2 * n) * (1.0 - self.q.powi(-2 * n0 as i32)) / (s + 1.0 / s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisIndex {
    pub n0: u32,
    pub n: i32,
    pub m: i32,
}

#[derive(Clone, Debug)]
pub struct Basis {
    states: Vec<BasisIndex>,
    index: HashMap<BasisIndex, usize>,
}

impl Basis {
    pub fn new(p: &IrrepParams) -> Self {
        let mut states = Vec::new();
        for n0 in 0..=p.n0_max {
            for n in -p.n_max..=p.n_max {
                for m in -p.m_max..=p.m_max {
                    states.push(BasisIndex { n0, n, m });
                }
            }
        }
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Basis { states, index }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[BasisIndex] {
        &self.states
    }

    pub fn position(&self, b: BasisIndex) -> Option<usize> {
        self.index.get(&b).copied()
    }
}

/// The operators of one truncated irrep, keyed by name.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub params: IrrepParams,
    pub basis: Basis,
    ops: BTreeMap<&'static str, Op>,
}

fn weighted_shift(basis: &Basis, f: impl Fn(BasisIndex) -> Option<(BasisIndex, f64)>) -> Op {
    let n = basis.len();
    let mut tri = TriMat::new((n, n));
    for (col, &st) in basis.states().iter().enumerate() {
        if let Some((target, v)) = f(st) {
            if let Some(row) = basis.position(target) {
                if v != 0.0 {
                    tri.add_triplet(row, col, v);
                }
            }
        }
    }
    tri.to_csc()
}

pub(crate) fn scaled(a: &Op, c: f64) -> Op {
    a.map(|x| x * c)
}

pub(crate) fn prod(ops: &[&Op]) -> Op {
    let mut it = ops.iter();
    let first = (*it.next().expect("nonempty product")).clone();
    it.fold(first, |acc, m| (&acc * *m).to_csc())
}

/// Builds `r, x⁰, (x⁰)⁻¹, x^±, Λ^{±1}` and `λ_a = e_a`.
pub fn build_operators(p: &IrrepParams) -> Result<Irrep> {
    p.validate()?;
    let basis = Basis::new(p);
    let s = p.s();
    for n in -p.n_max..=p.n_max {
        for n0 in 0..=p.n0_max {
            let (a, b) = p.ladder_diagonals(n0, n);
            let scale = p.r_value(n).powi(2);
            if a < -1e-12 * scale || b < -1e-12 * scale {
                return Err(Error::InvalidParam(format!(
                    "negative ladder modulus at n0={n0}, n={n}: x+x- = {a}, x-x+ = {b}"
                )));
            }
        }
    }
    // x⁻|n₀⟩ = a|n₀+1, m−1⟩ and x⁺|n₀+1⟩ = (a/s)|n₀, m+1⟩ with a² = s·(x⁺x⁻)(n₀)
    let amp = |n0: u32, n: i32| (s * p.ladder_diagonals(n0, n).0.max(0.0)).sqrt();
    let mut ops = BTreeMap::new();
    ops.insert("r", weighted_shift(&basis, |b| Some((b, p.r_value(b.n)))));
    ops.insert("x0", weighted_shift(&basis, |b| Some((b, p.x0_value(b.n0, b.n)))));
    ops.insert("x0^-1", weighted_shift(&basis, |b| Some((b, 1.0 / p.x0_value(b.n0, b.n)))));
    ops.insert(
        "x-",
        weighted_shift(&basis, |b| Some((BasisIndex { n0: b.n0 + 1, n: b.n, m: b.m - 1 }, amp(b.n0, b.n)))),
    );
    ops.insert(
        "x+",
        weighted_shift(&basis, |b| {
            (b.n0 > 0).then(|| (BasisIndex { n0: b.n0 - 1, n: b.n, m: b.m + 1 }, amp(b.n0 - 1, b.n) / s))
        }),
    );
    ops.insert("L", weighted_shift(&basis, |b| Some((BasisIndex { n: b.n + 1, ..b }, 1.0))));
    ops.insert("L^-1", weighted_shift(&basis, |b| Some((BasisIndex { n: b.n - 1, ..b }, 1.0))));

    let hinv = 1.0 / p.h();
    let (l, zi) = (&ops["L"], &ops["x0^-1"]);
    let lm = scaled(&prod(&[l, zi, &ops["x+"]]), hinv * p.q);
    let l0 = scaled(&prod(&[l, zi, &ops["r"]]), -hinv * s);
    let lp = scaled(&prod(&[l, zi, &ops["x-"]]), -hinv);
    ops.insert("l-", lm);
    ops.insert("l0", l0);
    ops.insert("l+", lp);
    Ok(Irrep { params: *p, basis, ops })
}

impl Irrep {
    pub fn op(&self, name: &str) -> &Op {
        self.ops.get(name).unwrap_or_else(|| panic!("unknown operator {name}"))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.ops.keys().copied()
    }

    /// States whose images under any product of two generators stay inside the truncation.
    pub fn is_interior(&self, b: BasisIndex) -> bool {
        let p = &self.params;
        b.n0 + 2 <= p.n0_max && b.n.abs() + 2 <= p.n_max && b.m.abs() + 2 <= p.m_max
    }

    pub fn diagonal(&self, name: &str) -> Vec<f64> {
        let m = self.op(name);
        (0..self.basis.len()).map(|i| m.get(i, i).copied().unwrap_or(0.0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> IrrepParams {
        IrrepParams::new(1, 1.0, 2.0, 4, 4, 3).unwrap()
    }

    #[test]
    fn r_eigenvalue() {
        let p = params();
        let irr = build_operators(&p).unwrap();
        let i = irr.basis.position(BasisIndex { n0: 1, n: 3, m: 0 }).unwrap();
        assert!((irr.diagonal("r")[i] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn ladder_diagonals_match_closed_form() {
        let p = IrrepParams::new(-1, 1.3, 1.7, 6, 4, 2).unwrap();
        for n0 in 0..=6 {
            for n in -4..=4 {
                let (_, b) = p.ladder_diagonals(n0, n);
                let want = p.xm_xp_closed(n0, n);
                assert!((b - want).abs() <= 1e-12 * p.r_value(n).powi(2), "n0={n0} n={n}: {b} vs {want}");
            }
        }
        assert!(p.ladder_diagonals(0, 2).1.abs() < 1e-14 * p.r_value(2).powi(2));
    }

    #[test]
    fn lambda_shifts_n() {
        let irr = build_operators(&params()).unwrap();
        let from = irr.basis.position(BasisIndex { n0: 2, n: 0, m: 1 }).unwrap();
        let to = irr.basis.position(BasisIndex { n0: 2, n: 1, m: 1 }).unwrap();
        assert_eq!(irr.op("L").get(to, from), Some(&1.0));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(IrrepParams::new(1, 0.5, 2.0, 4, 4, 4).is_err());
        assert!(IrrepParams::new(1, 2.0, 2.0, 4, 4, 4).is_err());
        assert!(IrrepParams::new(1, 1.0, 0.9, 4, 4, 4).is_err());
        assert!(IrrepParams::new(0, 1.0, 2.0, 4, 4, 4).is_err());
    }
}
