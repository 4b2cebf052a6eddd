//! The extended algebra generated by `x^i`, `Λ^{±1}`, `r^{±1}`, `(x⁰)^{-1}` and the
//! one-forms `ξ^i = dx^i`, with exact normal ordering.
//!
//! Products are computed block-wise on normal monomials: `Λ` and `r` powers are
//! moved left with scalar factors, the exterior word is pushed through the
//! coordinate part with the derived `ξ`-rules, and the coordinate and exterior
//! parts are multiplied in their own normal forms. The letter-by-letter rewrite
//! system in [`rewrite`] is an independent implementation used to test this.

pub mod calculus;
pub mod element;
pub mod exterior;
pub mod matrix;
pub mod monomial;
pub mod rewrite;
pub mod rules;

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

pub use element::Element;
pub use exterior::Exterior;
pub use monomial::{letters_of, Grading, Letter, Monomial, XiWord};
pub use rules::Rules;

use crate::error::{Error, Result};
use crate::par;
use crate::scalarq::ScalarQ;
use crate::soq3::SoQ3;

pub const DEFAULT_DEGREE_GUARD: u32 = 24;

type Terms = Vec<(Monomial, ScalarQ)>;

type LadderCache = HashMap<(bool, u32, u32), Vec<(i32, i32, ScalarQ)>>;
type LetterCache = HashMap<(u8, Monomial), Vec<(Monomial, u8, ScalarQ)>>;

#[derive(Default)]
struct Caches {
    ladder: RwLock<LadderCache>,
    letter: RwLock<LetterCache>,
    word: RwLock<HashMap<(XiWord, Monomial), Terms>>,
    d: RwLock<HashMap<Monomial, Element>>,
}

fn cached<K, V, F>(lock: &RwLock<HashMap<K, V>>, key: K, compute: F) -> Result<V>
where
    K: std::hash::Hash + Eq,
    V: Clone,
    F: FnOnce() -> Result<V>,
{
    if let Some(v) = lock.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = compute()?;
    lock.write().unwrap().insert(key, v.clone());
    Ok(v)
}

pub struct Algebra {
    soq3: SoQ3,
    ext: Exterior,
    rules: Rules,
    guard: u32,
    caches: Caches,
    theta: OnceLock<Element>,
    d_special: OnceLock<HashMap<Letter, Element>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("guard", &self.guard).field("mu", &self.rules.mu).finish()
    }
}

impl Algebra {
    pub fn new() -> Result<Self> {
        Algebra::with_guard(DEFAULT_DEGREE_GUARD)
    }

    /// Builds constants, exterior relations and all swap rules, verifying each
    /// derived rule before returning.
    pub fn with_guard(guard: u32) -> Result<Self> {
        let soq3 = SoQ3::new()?;
        let ext = Exterior::derive(&soq3)?;
        let rules = Rules::seed(&soq3);
        let mut alg = Algebra {
            soq3,
            ext,
            rules,
            guard,
            caches: Caches::default(),
            theta: OnceLock::new(),
            d_special: OnceLock::new(),
        };
        rules::derive(&mut alg)?;
        Ok(alg)
    }

    pub fn soq3(&self) -> &SoQ3 {
        &self.soq3
    }

    pub fn exterior(&self) -> &Exterior {
        &self.ext
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    fn clear_caches(&mut self) {
        self.caches = Caches::default();
    }

    // --- generators ---

    pub fn letter(&self, l: Letter) -> Element {
        Element::monomial(l.monomial())
    }

    /// The coordinate `x^i`.
    pub fn x(&self, i: usize) -> Element {
        self.letter(Letter::x(i))
    }

    pub fn xi(&self, i: usize) -> Element {
        Element::xi(i)
    }

    pub fn lam(&self, e: i32) -> Element {
        Element::monomial(Monomial { lam: e, ..Monomial::ONE })
    }

    pub fn r(&self, e: i32) -> Element {
        Element::monomial(Monomial { r: e, ..Monomial::ONE })
    }

    pub fn x0(&self, e: i32) -> Element {
        Element::monomial(Monomial { x0: e, ..Monomial::ONE })
    }

    // --- products ---

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let left: Vec<(&Monomial, &ScalarQ)> = a.terms().collect();
        let right: Vec<(&Monomial, &ScalarQ)> = b.terms().collect();
        let row = |(m1, c1): &(&Monomial, &ScalarQ)| -> Result<Element> {
            let mut acc = Element::zero();
            for (m2, c2) in &right {
                let prod = self.mul_mono(m1, m2)?;
                acc.add_scaled(&prod, &(*c1 * *c2));
            }
            Ok(acc)
        };
        if left.len() * right.len() < 16 {
            let mut acc = Element::zero();
            for t in &left {
                acc = acc + row(t)?;
            }
            return Ok(acc);
        }
        par::map_reduce(&left, || Ok(Element::zero()), row, |x, y| Ok(x? + y?))
    }

    /// Left-to-right product of several factors.
    pub fn product(&self, factors: &[&Element]) -> Result<Element> {
        let mut acc = Element::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Element, k: u32) -> Result<Element> {
        let mut acc = Element::one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `ab − ba`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(self.mul(a, b)? - self.mul(b, a)?)
    }

    /// Graded commutator `ab − (−1)^{|a||b|} ba` on homogeneous elements.
    pub fn graded_commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        let sign = match (a.degree(), b.degree()) {
            (Some(p), Some(r)) if p * r % 2 == 1 => -1,
            _ => 1,
        };
        let ba = self.mul(b, a)?;
        Ok(if sign < 0 { self.mul(a, b)? + ba } else { self.mul(a, b)? - ba })
    }

    /// Normal form of a raw word of letters.
    pub fn word(&self, letters: &[Letter]) -> Result<Element> {
        let mut acc = Element::one();
        for l in letters {
            acc = self.mul(&acc, &self.letter(*l))?;
        }
        Ok(acc)
    }

    /// Product of two normal monomials.
    pub fn mul_mono(&self, m1: &Monomial, m2: &Monomial) -> Result<Element> {
        let mut factor = ScalarQ::q_pow(m2.lam * m1.weight());
        let w1 = m1.xi;
        if m2.r != 0 && w1.degree() > 0 {
            factor = &factor * &self.rules.xi_r()?.pow(m2.r * w1.degree() as i32)?;
        }
        let x1 = Monomial { lam: 0, r: 0, xi: XiWord::Empty, ..*m1 };
        let x2 = Monomial { lam: 0, r: 0, xi: XiWord::Empty, ..*m2 };
        let (lam, r) = (m1.lam + m2.lam, m1.r + m2.r);

        let passed = if w1 == XiWord::Empty { vec![(x2, ScalarQ::one())] } else { self.xi_past(w1, &x2)? };
        let mut out = Element::zero();
        for (y, c) in passed {
            let c = &c * &factor;
            let words = self.ext.mul_words(y.xi, m2.xi);
            if words.is_empty() {
                continue;
            }
            for (p, c2) in self.x_mul(&x1, &y.even_part())? {
                for (cw, w) in &words {
                    let m = Monomial { lam, r: r + p.r, xi: *w, ..p };
                    if m.total_degree() > self.guard {
                        return Err(Error::DegreeGuard { degree: m.total_degree(), limit: self.guard });
                    }
                    out.add_term(m, &(&c * &c2) * cw);
                }
            }
        }
        Ok(out)
    }

    /// Product of two even monomials without `Λ` or exterior part.
    pub(crate) fn x_mul(&self, a: &Monomial, b: &Monomial) -> Result<Terms> {
        debug_assert!(a.lam == 0 && b.lam == 0 && a.xi == XiWord::Empty && b.xi == XiWord::Empty);
        // x⁺ (x⁰)^c = q^{-c} (x⁰)^c x⁺ and x⁻ (x⁰)^c = q^{c} (x⁰)^c x⁻
        let shift = b.x0 * (a.xm as i32 - a.xp as i32);
        let base = Monomial { r: a.r + b.r, x0: a.x0 + b.x0, xp: 0, xm: 0, ..Monomial::ONE };
        let c0 = ScalarQ::q_pow(shift);
        let single = |xp: u32, xm: u32| vec![(Monomial { xp, xm, ..base }, c0.clone())];
        let ladder = |plus_first: bool, p: u32, m: u32| -> Result<Terms> {
            let (k, rest_p, rest_m) = (p.min(m), p - p.min(m), m - p.min(m));
            let poly = self.ladder(plus_first, if plus_first { p } else { m }, k)?;
            Ok(poly
                .into_iter()
                .map(|(dr, dx0, c)| {
                    (Monomial { r: base.r + dr, x0: base.x0 + dx0, xp: rest_p, xm: rest_m, ..base }, &c * &c0)
                })
                .collect())
        };
        if a.xm == 0 {
            if b.xp > 0 {
                Ok(single(a.xp + b.xp, 0))
            } else if a.xp == 0 || b.xm == 0 {
                Ok(single(a.xp, b.xm))
            } else {
                ladder(true, a.xp, b.xm)
            }
        } else if b.xp == 0 {
            Ok(single(0, a.xm + b.xm))
        } else {
            ladder(false, b.xp, a.xm)
        }
    }

    /// Expansion of `(x⁺)^p (x⁻)^m` (or `(x⁻)^m (x⁺)^p`) with `k = min(p, m)` ladder
    /// pairs contracted, as `(Δr, Δx⁰, coefficient)` triples. `lead` is `p` for the
    /// first ordering and `m` for the second.
    fn ladder(&self, plus_first: bool, lead: u32, k: u32) -> Result<Vec<(i32, i32, ScalarQ)>> {
        cached(&self.caches.ladder, (plus_first, lead, k), || {
            let two = ScalarQ::s_plus_inv().inv()?;
            let mut poly: BTreeMap<(i32, i32), ScalarQ> = BTreeMap::new();
            poly.insert((0, 0), ScalarQ::one());
            for j in 0..k {
                let t = (lead - j) as i32;
                // x⁺x⁻ = (r² − q⁻¹(x⁰)²)/[2], x⁻x⁺ = (r² − q(x⁰)²)/[2]
                let x0_coeff = if plus_first { ScalarQ::q_pow(1 - 2 * t) } else { ScalarQ::q_pow(2 * t - 1) };
                let x0_coeff = -&(&x0_coeff * &two);
                let mut next: BTreeMap<(i32, i32), ScalarQ> = BTreeMap::new();
                for ((dr, dx), c) in &poly {
                    let e = next.entry((dr + 2, *dx)).or_default();
                    *e = &*e + &(c * &two);
                    let e = next.entry((*dr, dx + 2)).or_default();
                    *e = &*e + &(c * &x0_coeff);
                }
                poly = next;
            }
            Ok(poly.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect())
        })
    }

    /// `ξ^k Y = Σ c Z ξ^j` for an even monomial `Y` without `Λ`.
    fn xi_letter_past(&self, k: u8, y: &Monomial) -> Result<Vec<(Monomial, u8, ScalarQ)>> {
        if y.is_one() {
            return Ok(vec![(Monomial::ONE, k, ScalarQ::one())]);
        }
        cached(&self.caches.letter, (k, *y), || {
            let letters = letters_of(y);
            let first = letters[0];
            let rest = strip_first(*y, first);
            let mut acc: BTreeMap<(Monomial, u8), ScalarQ> = BTreeMap::new();
            for (z, j, c) in self.letter_rule(k, first)? {
                for (z2, j2, c2) in self.xi_letter_past(j, &rest)? {
                    for (p, c3) in self.x_mul(&z, &z2)? {
                        let e = acc.entry((p, j2)).or_default();
                        *e = &*e + &(&(&c * &c2) * &c3);
                    }
                }
            }
            Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((m, j), c)| (m, j, c)).collect())
        })
    }

    /// `ξ^k L = Σ c Z ξ^j` for a single even letter `L`.
    fn letter_rule(&self, k: u8, l: Letter) -> Result<Vec<(Monomial, u8, ScalarQ)>> {
        let k_us = k as usize;
        let from_row = |row: &[Element; 3]| -> Vec<(Monomial, u8, ScalarQ)> {
            row.iter()
                .enumerate()
                .flat_map(|(j, e)| e.terms().map(move |(m, c)| (*m, j as u8, c.clone())))
                .collect()
        };
        Ok(match l {
            Letter::R(e) => vec![(l.monomial(), k, self.rules.xi_r()?.pow(e as i32)?)],
            Letter::X0(-1) => from_row(&self.rules.xi_x0_inv()?[k_us]),
            Letter::X0(1) | Letter::Xp | Letter::Xm => {
                let idx = l.x_index().unwrap();
                self.rules.xi_x[k_us][idx]
                    .iter()
                    .map(|(i, j, c)| (Letter::x(*i).monomial(), *j as u8, c.clone()))
                    .collect()
            }
            other => return Err(Error::RuleDerivation(format!("no ξ rule for letter {other}"))),
        })
    }

    /// `W Y` with `W` a canonical exterior word and `Y` an even monomial without `Λ`,
    /// as a list of `Z·W'` monomials.
    fn xi_past(&self, w: XiWord, y: &Monomial) -> Result<Terms> {
        cached(&self.caches.word, (w, *y), || {
            let mut state: BTreeMap<(Monomial, Vec<u8>), ScalarQ> = BTreeMap::new();
            state.insert((*y, Vec::new()), ScalarQ::one());
            for &a in w.letters().iter().rev() {
                let mut next: BTreeMap<(Monomial, Vec<u8>), ScalarQ> = BTreeMap::new();
                for ((z, tail), c) in &state {
                    for (z2, j, c2) in self.xi_letter_past(a, z)? {
                        let mut t = Vec::with_capacity(tail.len() + 1);
                        t.push(j);
                        t.extend_from_slice(tail);
                        let e = next.entry((z2, t)).or_default();
                        *e = &*e + &(c * &c2);
                    }
                }
                state = next;
            }
            let mut out: BTreeMap<Monomial, ScalarQ> = BTreeMap::new();
            for ((z, tail), c) in state {
                let letters: Vec<usize> = tail.iter().map(|&i| i as usize).collect();
                for (cw, word) in self.ext.reduce_letters(&letters) {
                    let e = out.entry(z.with_xi(word)).or_default();
                    *e = &*e + &(&c * &cw);
                }
            }
            Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
        })
    }
}

fn strip_first(m: Monomial, l: Letter) -> Monomial {
    match l {
        Letter::Lam(e) => Monomial { lam: m.lam - e as i32, ..m },
        Letter::R(e) => Monomial { r: m.r - e as i32, ..m },
        Letter::X0(e) => Monomial { x0: m.x0 - e as i32, ..m },
        Letter::Xp => Monomial { xp: m.xp - 1, ..m },
        Letter::Xm => Monomial { xm: m.xm - 1, ..m },
        Letter::Xi(_) => Monomial { xi: XiWord::Empty, ..m },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soq3::{MINUS, PLUS, ZERO};

    fn alg() -> Algebra {
        Algebra::new().unwrap()
    }

    #[test]
    fn x0_lambda_swap() {
        let a = alg();
        let e = a.mul(&a.x0(1), &a.lam(1)).unwrap();
        assert_eq!(e.to_string(), "q L x0");
    }

    #[test]
    fn inverse_pairs() {
        let a = alg();
        assert_eq!(a.mul(&a.lam(1), &a.lam(-1)).unwrap(), Element::one());
        assert_eq!(a.mul(&a.x0(1), &a.x0(-1)).unwrap(), Element::one());
        assert_eq!(a.mul(&a.r(-1), &a.r(1)).unwrap(), Element::one());
    }

    #[test]
    fn coordinate_relations() {
        let a = alg();
        let xp = a.x(PLUS);
        let xm = a.x(MINUS);
        let x0 = a.x(ZERO);
        let q = ScalarQ::q();
        let lhs = a.mul(&xp, &x0).unwrap();
        assert_eq!(lhs, a.mul(&x0, &xp).unwrap().scale(&ScalarQ::q_pow(-1)));
        let lhs = a.mul(&xm, &x0).unwrap();
        assert_eq!(lhs, a.mul(&x0, &xm).unwrap().scale(&q));
        let comm = a.commutator(&xp, &xm).unwrap();
        assert_eq!(comm, a.mul(&x0, &x0).unwrap().scale(&ScalarQ::h()));
    }

    #[test]
    fn radius_relation() {
        let a = alg();
        let g = |i, j| a.soq3().g(i, j).clone();
        let mut r2 = Element::zero();
        for i in 0..3 {
            for j in 0..3 {
                r2.add_scaled(&a.mul(&a.x(i), &a.x(j)).unwrap(), &g(i, j));
            }
        }
        assert_eq!(r2, a.r(2));
    }

    #[test]
    fn xi_squares_and_associativity() {
        let a = alg();
        let xp = a.xi(PLUS);
        assert!(a.mul(&xp, &xp).unwrap().is_zero());
        let l = a.mul(&xp, &a.mul(&a.xi(ZERO), &a.xi(MINUS)).unwrap()).unwrap();
        let r = a.mul(&a.mul(&xp, &a.xi(ZERO)).unwrap(), &a.xi(MINUS)).unwrap();
        assert_eq!(l, r);
        assert!(!l.is_zero());
    }

    #[test]
    fn degree_guard_trips() {
        let a = Algebra::with_guard(8).unwrap();
        let x = a.x(PLUS);
        assert!(a.pow(&x, 8).is_ok());
        assert!(matches!(a.pow(&x, 9), Err(Error::DegreeGuard { .. })));
    }
}
