//! Dirac element, exterior derivative and the involution on the even algebra.

use std::collections::HashMap;

use super::{cached, letters_of, strip_first, Algebra, Element, Letter, Monomial, XiWord};
use crate::error::{Error, Result};
use crate::scalarq::ScalarQ;

impl Algebra {
    /// `θ = (q−1)⁻¹ q² r⁻² g_{ij} x^i ξ^j`.
    pub fn dirac_theta(&self) -> Result<Element> {
        if let Some(t) = self.theta.get() {
            return Ok(t.clone());
        }
        let c = ScalarQ::q_pow(2).checked_div(&(ScalarQ::q() - ScalarQ::one()))?;
        let mut sum = Element::zero();
        for i in 0..3 {
            for j in 0..3 {
                let g = self.soq3.g(i, j);
                if !g.is_zero() {
                    sum.add_scaled(&self.mul(&self.x(i), &self.xi(j))?, g);
                }
            }
        }
        let theta = self.mul(&self.r(-2), &sum)?.scale(&c);
        let _ = self.theta.set(theta.clone());
        Ok(theta)
    }

    /// `−[θ, f]` with the graded sign, on each homogeneous component.
    pub fn d_comm(&self, f: &Element) -> Result<Element> {
        let theta = self.dirac_theta()?;
        let mut out = Element::zero();
        for (deg, part) in split_by_degree(f) {
            let tf = self.mul(&theta, &part)?;
            let ft = self.mul(&part, &theta)?;
            out = out - if deg % 2 == 0 { tf - ft } else { tf + ft };
        }
        Ok(out)
    }

    /// Exterior derivative: `dx^i = ξ^i`, `dΛ^{±1} = 0`, `dξ^i = 0` and the graded Leibniz
    /// rule. `dr^{±1}` and `d(x⁰)^{-1}` come from the commutator form.
    pub fn d(&self, f: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in f.terms() {
            let even = self.d_even(&m.even_part())?;
            if even.is_zero() {
                continue;
            }
            let df = if m.xi == XiWord::Empty { even } else { self.mul(&even, &Element::monomial(Monomial::xi(m.xi)))? };
            out.add_scaled(&df, c);
        }
        Ok(out)
    }

    fn d_even(&self, m: &Monomial) -> Result<Element> {
        if m.is_one() {
            return Ok(Element::zero());
        }
        cached(&self.caches.d, *m, || {
            let first = letters_of(m)[0];
            let rest = Element::monomial(strip_first(*m, first));
            let d_first = self.d_letter(first)?;
            let d_rest = self.d_even(&strip_first(*m, first))?;
            let a = if d_first.is_zero() { Element::zero() } else { self.mul(&d_first, &rest)? };
            let b = if d_rest.is_zero() { Element::zero() } else { self.mul(&self.letter(first), &d_rest)? };
            Ok(a + b)
        })
    }

    fn d_letter(&self, l: Letter) -> Result<Element> {
        match l {
            Letter::Lam(_) => Ok(Element::zero()),
            Letter::Xi(_) => Ok(Element::zero()),
            Letter::Xp | Letter::Xm | Letter::X0(1) => Ok(self.xi(l.x_index().unwrap())),
            _ => {
                if self.d_special.get().is_none() {
                    let mut table = HashMap::new();
                    for s in [Letter::R(1), Letter::R(-1), Letter::X0(-1)] {
                        table.insert(s, self.d_comm(&self.letter(s))?);
                    }
                    let _ = self.d_special.set(table);
                }
                self.d_special
                    .get()
                    .unwrap()
                    .get(&l)
                    .cloned()
                    .ok_or_else(|| Error::RuleDerivation(format!("no derivative for {l}")))
            }
        }
    }

    /// The involution on the even algebra: `(x⁻)* = s x⁺`, `(x⁺)* = s⁻¹ x⁻`,
    /// `(x⁰)* = x⁰`, `r* = r`, `Λ* = Λ⁻¹`, antimultiplicative.
    pub fn star_a(&self, f: &Element) -> Result<Element> {
        let xp_star = self.x(crate::soq3::MINUS).scale(&ScalarQ::s_pow(-1));
        let xm_star = self.x(crate::soq3::PLUS).scale(&ScalarQ::s());
        let mut out = Element::zero();
        for (m, c) in f.terms() {
            if m.xi != XiWord::Empty {
                return Err(Error::Degree { expected: 0, found: f.to_string() });
            }
            let img = self.product(&[
                &self.pow(&xm_star, m.xm)?,
                &self.pow(&xp_star, m.xp)?,
                &self.x0(m.x0),
                &self.r(m.r),
                &self.lam(-m.lam),
            ])?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }
}

/// Homogeneous components keyed by exterior degree.
pub fn split_by_degree(f: &Element) -> Vec<(usize, Element)> {
    let mut parts: Vec<(usize, Element)> = Vec::new();
    for (m, c) in f.terms() {
        let deg = m.xi.degree();
        match parts.iter_mut().find(|(d, _)| *d == deg) {
            Some((_, e)) => e.add_term(*m, c.clone()),
            None => parts.push((deg, Element::term(c.clone(), *m))),
        }
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soq3::{MINUS, PLUS, ZERO};

    fn alg() -> Algebra {
        Algebra::new().unwrap()
    }

    #[test]
    fn commutator_form_reproduces_xi() {
        let a = alg();
        for i in [MINUS, ZERO, PLUS] {
            assert_eq!(a.d_comm(&a.x(i)).unwrap(), a.xi(i), "index {i}");
        }
    }

    #[test]
    fn theta_commutes_with_lambda() {
        let a = alg();
        let t = a.dirac_theta().unwrap();
        assert!(a.commutator(&t, &a.lam(1)).unwrap().is_zero());
        assert!(t.terms().all(|(_, c)| c.limit_q_to_1().is_err()));
    }

    #[test]
    fn derivative_basics() {
        let a = alg();
        assert_eq!(a.d(&a.x0(1)).unwrap(), a.xi(ZERO));
        assert!(a.d(&Element::one()).unwrap().is_zero());
        let xx = a.mul(&a.x(PLUS), &a.x(MINUS)).unwrap();
        assert!(a.d(&a.d(&xx).unwrap()).unwrap().is_zero());
        let r2 = a.r(2);
        assert_eq!(a.d(&r2).unwrap(), a.d_comm(&r2).unwrap());
    }

    #[test]
    fn star_examples() {
        let a = alg();
        assert_eq!(a.star_a(&a.x(MINUS)).unwrap(), a.x(PLUS).scale(&ScalarQ::s()));
        assert_eq!(a.star_a(&a.star_a(&a.x(PLUS)).unwrap()).unwrap(), a.x(PLUS));
        assert_eq!(a.star_a(&a.r(2)).unwrap(), a.r(2));
        assert_eq!(a.star_a(&a.lam(1)).unwrap(), a.lam(-1));
    }
}
