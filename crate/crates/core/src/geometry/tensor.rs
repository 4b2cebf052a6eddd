//! Tensor products of forms over the algebra, in left-coefficient canonical form.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Algebra, Element, Monomial, XiWord};
use crate::error::{Error, Result};
use crate::scalarq::ScalarQ;

/// `Σ c · w₁ ⊗ … ⊗ w_n` with every coefficient `c` of exterior degree 0 and
/// standing to the left of all slots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Vec<XiWord>, Element>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    /// A single basis tensor `w₁ ⊗ … ⊗ w_n`.
    pub fn basis(words: Vec<XiWord>) -> Self {
        let mut t = Tensor::zero();
        t.add_term(words, Element::one());
        t
    }

    /// `ξ^i ⊗ ξ^j`.
    pub fn xi_pair(i: usize, j: usize) -> Self {
        Tensor::basis(vec![XiWord::One(i as u8), XiWord::One(j as u8)])
    }

    pub fn add_term(&mut self, words: Vec<XiWord>, c: Element) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(words.clone()).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&words);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<XiWord>, &Element)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, words: &[XiWord]) -> Element {
        self.terms.get(words).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &ScalarQ) -> Tensor {
        let mut out = Tensor::zero();
        for (w, e) in &self.terms {
            out.add_term(w.clone(), e.scale(c));
        }
        out
    }

    /// `f · T`.
    pub fn left_mul(&self, alg: &Algebra, f: &Element) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), alg.mul(f, c)?);
        }
        Ok(out)
    }

    /// `T · f`, pushing `f` leftwards through every slot.
    pub fn right_mul(&self, alg: &Algebra, f: &Element) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (words, c) in &self.terms {
            let mut state: Vec<(Element, Vec<XiWord>)> = vec![(f.clone(), Vec::new())];
            for w in words.iter().rev() {
                let mut next = Vec::new();
                for (g, tail) in state {
                    let moved = alg.mul(&Element::monomial(Monomial::xi(*w)), &g)?;
                    for (w2, coeff) in moved.by_word() {
                        let mut t = vec![w2];
                        t.extend_from_slice(&tail);
                        next.push((coeff, t));
                    }
                }
                state = next;
            }
            for (g, t) in state {
                out.add_term(t, alg.mul(c, &g)?);
            }
        }
        Ok(out)
    }

    /// A form viewed as a one-slot tensor.
    pub fn from_form(omega: &Element) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in omega.by_word() {
            out.add_term(vec![w], c);
        }
        out
    }

    /// `ω ⊗ T` for a form `ω`.
    pub fn form_tensor(alg: &Algebra, omega: &Element, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (words, c) in &t.terms {
            let moved = alg.mul(omega, c)?;
            for (w, coeff) in moved.by_word() {
                let mut nw = vec![w];
                nw.extend_from_slice(words);
                out.add_term(nw, coeff);
            }
        }
        Ok(out)
    }

    /// `ω₁ ⊗ … ⊗ ω_n`.
    pub fn from_forms(alg: &Algebra, forms: &[&Element]) -> Result<Tensor> {
        let mut t = Tensor::basis(Vec::new());
        for omega in forms.iter().rev() {
            t = Tensor::form_tensor(alg, omega, &t)?;
        }
        Ok(t)
    }

    /// Appends the basis word `w` as a new last slot.
    pub fn append(&self, w: XiWord) -> Tensor {
        let mut out = Tensor::zero();
        for (words, c) in &self.terms {
            let mut nw = words.clone();
            nw.push(w);
            out.add_term(nw, c.clone());
        }
        out
    }

    /// Wedges slots `k` and `k+1` together.
    pub fn wedge_slots(&self, alg: &Algebra, k: usize) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (words, c) in &self.terms {
            if k + 1 >= words.len() {
                return Err(Error::Degree { expected: k + 2, found: format!("{} slots", words.len()) });
            }
            for (cw, w) in alg.exterior().mul_words(words[k], words[k + 1]) {
                let mut nw = words[..k].to_vec();
                nw.push(w);
                nw.extend_from_slice(&words[k + 2..]);
                out.add_term(nw, c.scale(&cw));
            }
        }
        Ok(out)
    }

    /// Collapses a one-slot tensor back into a form.
    pub fn into_form(&self) -> Result<Element> {
        let mut out = Element::zero();
        for (words, c) in &self.terms {
            let [w] = words.as_slice() else {
                return Err(Error::Degree { expected: 1, found: format!("{} slots", words.len()) });
            };
            for (m, v) in c.terms() {
                out.add_term(m.with_xi(*w), v.clone());
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Element) -> Element) -> Tensor {
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Largest number of summands in a coefficient.
    pub fn max_terms(&self) -> usize {
        self.terms.values().map(Element::len).max().unwrap_or(0)
    }
}

impl std::ops::Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (words, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let slots: Vec<String> = words.iter().map(|w| if *w == XiWord::Empty { "1".into() } else { w.to_string() }).collect();
            write!(f, "({c}) {}", slots.join(" (x) "))?;
        }
        Ok(())
    }
}
