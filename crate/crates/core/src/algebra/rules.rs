//! Swap rules that move one-forms to the right.
//!
//! `ξ` past `x` comes straight from the inverted braid rule. `ξ` past `(x⁰)^{-1}`
//! and past `r` are derived here and checked before the algebra is handed out.

use std::fmt::Write as _;

use super::matrix::{is_identity, left_inverse, mat_mul, Matrix3};
use super::{Algebra, Element, Letter, Monomial, XiWord};
use crate::error::{Error, Result};
use crate::scalarq::ScalarQ;
use crate::soq3::{SoQ3, LABELS, ZERO};

#[derive(Clone, Debug)]
pub struct Rules {
    /// `ξ^k x^l = Σ c x^i ξ^j`, stored as `(i, j, c)` at `[k][l]`.
    pub(crate) xi_x: [[Vec<(usize, usize, ScalarQ)>; 3]; 3],
    /// `ξ^j x⁰ = Σ_b M_{jb} ξ^b`.
    xi_x0: Matrix3,
    /// `ξ^j (x⁰)^{-1} = Σ_b A_{jb} ξ^b`.
    xi_x0_inv: Option<Matrix3>,
    /// `ξ^i r = xi_r · r ξ^i`.
    xi_r: Option<ScalarQ>,
    /// `r² ξ^i = μ ξ^i r²`.
    pub mu: Option<ScalarQ>,
}

impl Rules {
    pub(crate) fn seed(soq3: &SoQ3) -> Self {
        let qi = ScalarQ::q_pow(-1);
        let mut xi_x: [[Vec<(usize, usize, ScalarQ)>; 3]; 3] = Default::default();
        for (k, row) in xi_x.iter_mut().enumerate() {
            for (l, cell) in row.iter_mut().enumerate() {
                for i in 0..3 {
                    for j in 0..3 {
                        let c = soq3.r_inv(k, l, i, j);
                        if !c.is_zero() {
                            cell.push((i, j, c * &qi));
                        }
                    }
                }
            }
        }
        let mut xi_x0: Matrix3 = Default::default();
        for (j, row) in xi_x0.iter_mut().enumerate() {
            for &(i, b, ref c) in &xi_x[j][ZERO] {
                row[b].add_term(Letter::x(i).monomial(), c.clone());
            }
        }
        Rules { xi_x, xi_x0, xi_x0_inv: None, xi_r: None, mu: None }
    }

    pub fn xi_r(&self) -> Result<&ScalarQ> {
        self.xi_r.as_ref().ok_or_else(|| Error::RuleDerivation("ξ-r rule requested before μ was derived".into()))
    }

    pub fn mu(&self) -> Result<&ScalarQ> {
        self.mu.as_ref().ok_or_else(|| Error::RuleDerivation("μ not derived".into()))
    }

    pub fn xi_x0(&self) -> &Matrix3 {
        &self.xi_x0
    }

    pub fn xi_x0_inv(&self) -> Result<&Matrix3> {
        self.xi_x0_inv.as_ref().ok_or_else(|| Error::RuleDerivation("ξ-(x⁰)⁻¹ rule not derived".into()))
    }

    /// Human-readable listing of the derived one-form rules.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for k in 0..3 {
            for l in 0..3 {
                let mut e = Element::zero();
                for (i, j, c) in &self.xi_x[k][l] {
                    e.add_term(Letter::x(*i).monomial().with_xi(XiWord::One(*j as u8)), c.clone());
                }
                let _ = writeln!(out, "xi{} {} -> {e}", LABELS[k], Letter::x(l));
            }
        }
        if let Some(a) = &self.xi_x0_inv {
            for (k, row) in a.iter().enumerate() {
                let mut e = Element::zero();
                for (j, c) in row.iter().enumerate() {
                    for (m, v) in c.terms() {
                        e.add_term(m.with_xi(XiWord::One(j as u8)), v.clone());
                    }
                }
                let _ = writeln!(out, "xi{} x0^-1 -> {e}", LABELS[k]);
            }
        }
        if let (Some(x), Some(mu)) = (&self.xi_r, &self.mu) {
            let _ = writeln!(out, "xi r -> {} r xi", x);
            let _ = writeln!(out, "r^2 xi = {} xi r^2", mu);
        }
        out
    }
}

/// Derives the `(x⁰)^{-1}` and `r` rules in place, then verifies everything.
pub(crate) fn derive(alg: &mut Algebra) -> Result<()> {
    let a = left_inverse(alg, &alg.rules.xi_x0)?;
    alg.rules.xi_x0_inv = Some(a);

    // ξ^i r² by brute force through r² = g_{kl} x^k x^l
    let mut factor: Option<ScalarQ> = None;
    for i in 0..3 {
        let mut lhs = Element::zero();
        for k in 0..3 {
            for l in 0..3 {
                let g = alg.soq3.g(k, l).clone();
                if g.is_zero() {
                    continue;
                }
                let t = alg.mul(&alg.mul(&alg.xi(i), &alg.x(k))?, &alg.x(l))?;
                lhs.add_scaled(&t, &g);
            }
        }
        let target = Monomial { r: 2, ..Monomial::xi(XiWord::One(i as u8)) };
        let c = lhs.coefficient(&target);
        if lhs.len() != 1 || c.is_zero() {
            return Err(Error::RuleDerivation(format!("xi{} r^2 does not reduce to a multiple of r^2 xi: {lhs}", LABELS[i])));
        }
        match &factor {
            Some(f) if *f != c => {
                return Err(Error::RuleDerivation(format!("ξ-r² factor differs between components: {f} vs {c}")))
            }
            _ => factor = Some(c),
        }
    }
    let factor = factor.unwrap();
    let root = factor
        .sqrt_even_power()
        .ok_or_else(|| Error::RuleDerivation(format!("ξ r² = ({factor}) r² ξ has no square-root factor")))?;
    alg.rules.mu = Some(factor.inv()?);
    alg.rules.xi_r = Some(root);
    alg.clear_caches();
    verify(alg)
}

fn verify(alg: &Algebra) -> Result<()> {
    let a = alg.rules.xi_x0_inv()?;
    let m = &alg.rules.xi_x0;
    if !is_identity(&mat_mul(alg, a, m)?) || !is_identity(&mat_mul(alg, m, a)?) {
        return Err(Error::RuleDerivation("ξ-(x⁰)⁻¹ rule does not invert the ξ-x⁰ rule".into()));
    }
    // x^i ξ^j = q R̂^{ij}_{kl} ξ^k x^l, pushed back through the inverse rule
    let q = ScalarQ::q();
    for i in 0..3 {
        for j in 0..3 {
            let mut back = Element::zero();
            for k in 0..3 {
                for l in 0..3 {
                    let c = alg.soq3.r(i, j, k, l);
                    if !c.is_zero() {
                        back.add_scaled(&alg.mul(&alg.xi(k), &alg.x(l))?, &(c * &q));
                    }
                }
            }
            let direct = alg.mul(&alg.x(i), &alg.xi(j))?;
            if back != direct {
                return Err(Error::RuleDerivation(format!(
                    "ξ swap round trip fails at (x{}, xi{}): {back} vs {direct}",
                    LABELS[i], LABELS[j]
                )));
            }
        }
    }
    for k in 0..3 {
        let xi = alg.xi(k);
        for e in [1, -1] {
            let round = alg.product(&[&xi, &alg.x0(e), &alg.x0(-e)])?;
            let round_r = alg.product(&[&xi, &alg.r(e), &alg.r(-e)])?;
            if round != xi || round_r != xi {
                return Err(Error::RuleDerivation(format!("xi{} does not pass an inverse pair cleanly", LABELS[k])));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soq3::{MINUS, PLUS};

    #[test]
    fn derived_constants() {
        let alg = Algebra::new().unwrap();
        let mu = alg.rules().mu().unwrap().clone();
        assert!(mu == ScalarQ::q_pow(2) || mu == ScalarQ::q_pow(-2), "mu = {mu}");
        let x = alg.rules().xi_r().unwrap();
        assert_eq!(&(x * x), &mu.inv().unwrap());
    }

    #[test]
    fn xi_past_x0_inverse_matches_product() {
        let alg = Algebra::new().unwrap();
        for k in [MINUS, ZERO, PLUS] {
            let lhs = alg.mul(&alg.xi(k), &alg.x0(-1)).unwrap();
            let back = alg.mul(&lhs, &alg.x0(1)).unwrap();
            assert_eq!(back, alg.xi(k));
        }
        assert!(alg.rules().render().contains("xi+ x0^-1"));
    }
}
