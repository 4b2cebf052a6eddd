use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::monomial::{Grading, Monomial, XiWord};
use crate::scalarq::ScalarQ;

/// Finite linear combination of normal monomials. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, ScalarQ>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(ScalarQ::one())
    }

    pub fn scalar(c: ScalarQ) -> Self {
        Element::term(c, Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::term(ScalarQ::one(), m)
    }

    pub fn term(c: ScalarQ, m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn xi(i: usize) -> Self {
        Element::monomial(Monomial::xi(XiWord::One(i as u8)))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ScalarQ)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &ScalarQ) {
        for (m, v) in &other.terms {
            self.add_term(*m, v * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarQ)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ScalarQ {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &ScalarQ) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// The scalar value, if the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<ScalarQ> {
        match self.terms.len() {
            0 => Some(ScalarQ::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Exterior degree when all summands agree; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.xi.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Groups the summands by exterior word, returning the degree-0 coefficients.
    pub fn by_word(&self) -> BTreeMap<XiWord, Element> {
        let mut out: BTreeMap<XiWord, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.xi).or_default().add_term(m.even_part(), c.clone());
        }
        out
    }

    /// Distinct gradings present among the summands.
    pub fn gradings(&self) -> Vec<Grading> {
        let mut g: Vec<Grading> = self.terms.keys().map(Monomial::grading).collect();
        g.dedup();
        g
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn map_coefficients(&self, f: impl Fn(&ScalarQ) -> ScalarQ) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Self {
        Element::monomial(m)
    }
}

impl From<ScalarQ> for Element {
    fn from(c: ScalarQ) -> Self {
        Element::scalar(c)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

fn coefficient_text(c: &ScalarQ) -> String {
    let t = c.to_string();
    if t.contains(' ') || t.contains('/') {
        format!("({t})")
    } else {
        t
    }
}

impl fmt::Display for Element {
    /// Deterministic rendering, summands in monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = if c.is_negative_term() { (true, -c) } else { (false, c.clone()) };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (abs.is_one(), m.is_one()) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => f.write_str(&coefficient_text(&abs))?,
                (false, false) => write!(f, "{} {m}", coefficient_text(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
