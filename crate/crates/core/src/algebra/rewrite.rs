//! Letter-level rewriting of raw words, one adjacent pair at a time.
//!
//! This shares the rule data with [`Algebra`] but none of its block-wise
//! product code, so agreement between the two is a real confluence check.

use std::collections::BTreeMap;

use rand::Rng;

use super::{Algebra, Element, Letter, Monomial, XiWord};
use crate::error::{Error, Result};
use crate::scalarq::ScalarQ;

pub type Word = Vec<Letter>;

/// Upper bound on rewrite steps per word before giving up.
pub const STEP_LIMIT: usize = 200_000;

fn weight(l: Letter) -> i32 {
    match l {
        Letter::Lam(_) => 0,
        Letter::R(e) | Letter::X0(e) => e as i32,
        _ => 1,
    }
}

fn spell(e: &Element) -> Vec<(Word, ScalarQ)> {
    e.terms().map(|(m, c)| (super::letters_of(m), c.clone())).collect()
}

/// The replacement for the pair `(a, b)` at adjacent positions, or `None`
/// when the pair is already in normal order.
pub fn pair_rule(alg: &Algebra, a: Letter, b: Letter) -> Result<Option<Vec<(Word, ScalarQ)>>> {
    use Letter::*;
    let q = ScalarQ::q;
    let swap = |c: ScalarQ| Ok(Some(vec![(vec![b, a], c)]));
    match (a, b) {
        (Lam(x), Lam(y)) | (R(x), R(y)) | (X0(x), X0(y)) if x == -y => Ok(Some(vec![(vec![], ScalarQ::one())])),
        (Lam(_), _) => Ok(None),
        (y, Lam(e)) => swap(ScalarQ::q_pow(e as i32 * weight(y))),
        (R(_), _) => Ok(None),
        (Xi(_), R(e)) => swap(alg.rules().xi_r()?.pow(e as i32)?),
        (_, R(_)) => swap(ScalarQ::one()),
        (X0(_), _) => Ok(None),
        (Xp, X0(e)) => swap(ScalarQ::q_pow(-(e as i32))),
        (Xm, X0(e)) => swap(ScalarQ::q_pow(e as i32)),
        (Xp, Xm) | (Xm, Xp) => {
            // x⁺x⁻ = (r² − q⁻¹(x⁰)²)/[2], x⁻x⁺ = (r² − q(x⁰)²)/[2]
            let two = ScalarQ::s_plus_inv().inv()?;
            let c0 = if a == Xp { ScalarQ::q_pow(-1) } else { q() };
            Ok(Some(vec![(vec![R(1), R(1)], two.clone()), (vec![X0(1), X0(1)], -&(&c0 * &two))]))
        }
        (Xp, _) | (Xm, Xm) => Ok(None),
        (Xm, Xi(_)) => Ok(None),
        (Xi(k), X0(-1)) => {
            let row = &alg.rules().xi_x0_inv()?[k as usize];
            let mut out = Vec::new();
            for (j, e) in row.iter().enumerate() {
                for (w, c) in spell(e) {
                    let mut w = w;
                    w.push(Xi(j as u8));
                    out.push((w, c));
                }
            }
            Ok(Some(out))
        }
        (Xi(k), x) if x.x_index().is_some() => {
            let l = x.x_index().unwrap();
            Ok(Some(
                alg.rules().xi_x[k as usize][l]
                    .iter()
                    .map(|(i, j, c)| (vec![Letter::x(*i), Xi(*j as u8)], c.clone()))
                    .collect(),
            ))
        }
        (Xi(i), Xi(j)) => {
            if i < j {
                return Ok(None);
            }
            Ok(Some(
                alg.exterior()
                    .pair(i as usize, j as usize)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| {
                        let w = super::monomial::BASIS2[k];
                        (vec![Xi(w[0]), Xi(w[1])], c.clone())
                    })
                    .collect(),
            ))
        }
        _ => Err(Error::RuleDerivation(format!("no rule for pair {a} {b}"))),
    }
}

/// Reads a fully reduced word as a normal monomial.
fn to_monomial(w: &[Letter]) -> Result<Monomial> {
    let mut m = Monomial::ONE;
    let mut xis = Vec::new();
    for &l in w {
        match l {
            Letter::Lam(e) => m.lam += e as i32,
            Letter::R(e) => m.r += e as i32,
            Letter::X0(e) => m.x0 += e as i32,
            Letter::Xp => m.xp += 1,
            Letter::Xm => m.xm += 1,
            Letter::Xi(i) => xis.push(i),
        }
    }
    m.xi = match xis.as_slice() {
        [] => XiWord::Empty,
        [i] => XiWord::One(*i),
        [a, b] => XiWord::Two(
            super::monomial::BASIS2
                .iter()
                .position(|p| p == &[*a, *b])
                .ok_or_else(|| Error::RuleDerivation(format!("irreducible non-basis pair {a} {b}")))? as u8,
        ),
        [0, 1, 2] => XiWord::Three,
        _ => return Err(Error::RuleDerivation(format!("irreducible exterior word {xis:?}"))),
    };
    Ok(m)
}

/// How the next redex is chosen.
pub enum Strategy<'r, R: Rng> {
    Leftmost,
    Random(&'r mut R),
}

/// Reduces a raw word to normal form by repeated pair rewriting.
pub fn reduce<R: Rng>(alg: &Algebra, word: &[Letter], mut strategy: Strategy<'_, R>) -> Result<Element> {
    let mut pending: Vec<(Word, ScalarQ)> = vec![(word.to_vec(), ScalarQ::one())];
    let mut done: BTreeMap<Monomial, ScalarQ> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some((w, c)) = pending.pop() {
        if w.iter().filter(|l| matches!(l, Letter::Xi(_))).count() > 3 {
            continue;
        }
        let mut redexes = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            if let Some(rep) = pair_rule(alg, w[p], w[p + 1])? {
                redexes.push((p, rep));
                if matches!(strategy, Strategy::Leftmost) {
                    break;
                }
            }
        }
        if redexes.is_empty() {
            let e = done.entry(to_monomial(&w)?).or_default();
            *e = &*e + &c;
            continue;
        }
        steps += 1;
        if steps > STEP_LIMIT {
            return Err(Error::RuleDerivation(format!("rewriting did not terminate within {STEP_LIMIT} steps")));
        }
        let pick = match &mut strategy {
            Strategy::Leftmost => 0,
            Strategy::Random(rng) => rng.gen_range(0..redexes.len()),
        };
        let (p, rep) = redexes.swap_remove(pick);
        for (mid, c2) in rep {
            let mut nw = Vec::with_capacity(w.len() + mid.len());
            nw.extend_from_slice(&w[..p]);
            nw.extend(mid);
            nw.extend_from_slice(&w[p + 2..]);
            pending.push((nw, &c * &c2));
        }
    }
    Ok(Element::from_terms(done))
}

/// A random word of `len` letters from the full alphabet with inverses.
pub fn random_word<R: Rng>(rng: &mut R, len: usize, max_xi: usize) -> Word {
    let mut out = Vec::with_capacity(len);
    let mut xis = 0;
    while out.len() < len {
        let l = match rng.gen_range(0..11) {
            0 => Letter::Lam(1),
            1 => Letter::Lam(-1),
            2 => Letter::R(1),
            3 => Letter::R(-1),
            4 => Letter::X0(1),
            5 => Letter::X0(-1),
            6 => Letter::Xp,
            7 => Letter::Xm,
            _ => Letter::Xi(rng.gen_range(0..3)),
        };
        if let Letter::Xi(_) = l {
            if xis >= max_xi {
                continue;
            }
            xis += 1;
        }
        out.push(l);
    }
    out
}

/// Total grading of a raw word: exterior degree, Λ-degree, charge, weight.
pub fn word_grading(w: &[Letter]) -> super::Grading {
    let mut g = super::Grading { exterior: 0, lam: 0, charge: 0, weight: 0 };
    for &l in w {
        match l {
            Letter::Lam(e) => g.lam += e as i32,
            Letter::Xi(i) => {
                g.exterior += 1;
                g.charge += crate::soq3::charge(i as usize);
            }
            Letter::Xp => g.charge += 1,
            Letter::Xm => g.charge -= 1,
            _ => {}
        }
        g.weight += weight(l);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rewriting_agrees_with_block_product() {
        let alg = Algebra::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let w = random_word(&mut rng, 5, 2);
            let a = reduce::<ChaCha8Rng>(&alg, &w, Strategy::Leftmost).unwrap();
            let b = alg.word(&w).unwrap();
            assert_eq!(a, b, "word {w:?}");
        }
    }
}
