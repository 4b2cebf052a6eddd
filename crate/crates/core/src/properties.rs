//! Seeded randomized and structural checks of the engine itself.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rewrite::{random_word, reduce, word_grading, Strategy, Word};
use crate::algebra::{Algebra, Element, Letter};
use crate::error::Result;
use crate::par;
use crate::report::Report;
use crate::scalarq::ScalarQ;
use crate::soq3::{conj, FlipChoice, LABELS, MINUS, PLUS, ZERO};

pub const CONFLUENCE_WORDS: usize = 200;
pub const RANDOM_ELEMENTS: usize = 50;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn words(seed: u64, stream: u64, count: usize, len: usize, max_xi: usize) -> Vec<(Word, u64)> {
    let mut r = rng(seed, stream);
    (0..count).map(|_| (random_word(&mut r, len, max_xi), r.gen())).collect()
}

/// A small integer combination of random words.
pub fn random_element<R: Rng>(alg: &Algebra, r: &mut R, max_xi: usize) -> Result<Element> {
    let mut out = Element::zero();
    for _ in 0..r.gen_range(1..=3) {
        let len = r.gen_range(1..=4);
        let w = random_word(r, len, max_xi);
        let c = ScalarQ::int(r.gen_range(-3..=3));
        out.add_scaled(&alg.word(&w)?, &c);
    }
    Ok(out)
}

/// Two random reduction orders and the block product agree on every word.
pub fn confluence(alg: &Algebra, seed: u64, count: usize) -> Result<Report> {
    let ws = words(seed, 1, count, 6, 3);
    let results = par::try_map(&ws, |(w, sub)| -> Result<bool> {
        let mut r1 = rng(*sub, 0);
        let mut r2 = rng(*sub, 1);
        let a = reduce(alg, w, Strategy::Random(&mut r1))?;
        let b = reduce(alg, w, Strategy::Random(&mut r2))?;
        let c = alg.word(w)?;
        Ok(a == b && b == c)
    })?;
    let mut rep = Report::new();
    let bad: Vec<String> = ws.iter().zip(&results).filter(|(_, ok)| !**ok).map(|((w, _), _)| format!("{w:?}")).collect();
    rep.check(format!("{count} random words reduce to one normal form"), bad.is_empty(), || bad.join("; "));
    Ok(rep)
}

/// Exterior degree, Λ-degree, charge and weight of a word survive normal ordering.
pub fn grading(alg: &Algebra, seed: u64, count: usize) -> Result<Report> {
    let ws = words(seed, 2, count, 6, 3);
    let results = par::try_map(&ws, |(w, _)| -> Result<bool> {
        let g = word_grading(w);
        Ok(alg.word(w)?.gradings().iter().all(|h| *h == g))
    })?;
    let mut rep = Report::new();
    let bad = results.iter().filter(|ok| !**ok).count();
    rep.check(format!("grading conserved on {count} words"), bad == 0, || format!("{bad} words change grading"));
    Ok(rep)
}

/// `d² = 0` on the generators and on random elements of every degree.
pub fn d_squared(alg: &Algebra, seed: u64, count: usize) -> Result<Report> {
    let mut rep = Report::new();
    for l in Letter::even_generators() {
        let dd = alg.d(&alg.d(&alg.letter(l))?)?;
        rep.check(format!("d^2 {l} = 0"), dd.is_zero(), || dd.to_string());
    }
    let mut r = rng(seed, 3);
    let elems: Vec<Element> = (0..count).map(|i| random_element(alg, &mut r, i % 3)).collect::<Result<_>>()?;
    let dd = par::try_map(&elems, |e| alg.d(&alg.d(e)?))?;
    let bad: Vec<String> = elems.iter().zip(&dd).filter(|(_, x)| !x.is_zero()).map(|(e, _)| e.to_string()).collect();
    rep.check(format!("d^2 = 0 on {count} random elements"), bad.is_empty(), || bad.join("; "));
    Ok(rep)
}

/// Leibniz `d` against `−[θ, ·]` on random even words, and `d x^i = ξ^i`.
pub fn d_agreement(alg: &Algebra, seed: u64, count: usize) -> Result<Report> {
    let mut rep = Report::new();
    for i in [MINUS, ZERO, PLUS] {
        let d = alg.d_comm(&alg.x(i))?;
        rep.check(format!("-[theta, x{}] = xi{}", LABELS[i], LABELS[i]), d == alg.xi(i), || d.to_string());
    }
    let ws = words(seed, 4, count, 4, 0);
    let diffs = par::try_map(&ws, |(w, _)| -> Result<Element> {
        let f = alg.word(w)?;
        Ok(alg.d(&f)? - alg.d_comm(&f)?)
    })?;
    let bad: Vec<String> = ws.iter().zip(&diffs).filter(|(_, d)| !d.is_zero()).map(|((w, _), _)| format!("{w:?}")).collect();
    rep.check(format!("d = -[theta, .] on {count} even words"), bad.is_empty(), || bad.join("; "));
    Ok(rep)
}

/// `θ²` commutes with every even generator.
pub fn theta_squared(alg: &Algebra) -> Result<Report> {
    let t = alg.dirac_theta()?;
    let t2 = alg.mul(&t, &t)?;
    let mut rep = Report::new();
    for l in Letter::even_generators() {
        let c = alg.commutator(&t2, &alg.letter(l))?;
        rep.check(format!("[theta^2, {l}] = 0"), c.is_zero(), || c.to_string());
    }
    rep.info("theta^2", &t2);
    Ok(rep)
}

/// `star_A` is an involution and reverses products.
pub fn star_a(alg: &Algebra, seed: u64, count: usize) -> Result<Report> {
    let mut r = rng(seed, 5);
    let pairs: Vec<(Element, Element)> =
        (0..count).map(|_| Ok((random_element(alg, &mut r, 0)?, random_element(alg, &mut r, 0)?))).collect::<Result<_>>()?;
    let results = par::try_map(&pairs, |(f, g)| -> Result<(bool, bool)> {
        let inv = alg.star_a(&alg.star_a(f)?)? == *f;
        let lhs = alg.star_a(&alg.mul(f, g)?)?;
        let rhs = alg.mul(&alg.star_a(g)?, &alg.star_a(f)?)?;
        Ok((inv, lhs == rhs))
    })?;
    let mut rep = Report::new();
    let inv_bad = results.iter().filter(|x| !x.0).count();
    let anti_bad = results.iter().filter(|x| !x.1).count();
    rep.check(format!("star_A involutive on {count} elements"), inv_bad == 0, || format!("{inv_bad} failures"));
    rep.check(format!("star_A antimultiplicative on {count} pairs"), anti_bad == 0, || format!("{anti_bad} failures"));
    Ok(rep)
}

/// Three canonical 2-forms, one 3-form, vanishing squares of `ξ^±`.
pub fn exterior(alg: &Algebra) -> Result<Report> {
    let ext = alg.exterior();
    let mut rep = Report::new();
    rep.check("relation space has rank 6", ext.relation_rank() == 6, || ext.relation_rank().to_string());
    for i in [MINUS, PLUS] {
        let sq = alg.mul(&alg.xi(i), &alg.xi(i))?;
        rep.check(format!("(xi{})^2 = 0", LABELS[i]), sq.is_zero(), || sq.to_string());
    }
    let sq0 = alg.mul(&alg.xi(ZERO), &alg.xi(ZERO))?;
    rep.info("(xi0)^2", &sq0);
    let top = alg.product(&[&alg.xi(MINUS), &alg.xi(ZERO), &alg.xi(PLUS)])?;
    rep.check("xi- xi0 xi+ spans degree 3", !top.is_zero(), || "top word vanishes".into());
    let four = alg.product(&[&alg.xi(MINUS), &alg.xi(ZERO), &alg.xi(PLUS), &alg.xi(ZERO)])?;
    rep.check("degree 4 vanishes", four.is_zero(), || four.to_string());
    Ok(rep)
}

/// Derived one-form rules, reported for inspection.
pub fn derived_rules(alg: &Algebra) -> Result<Report> {
    let mut rep = Report::new();
    let rules = alg.rules();
    rep.info("mu", rules.mu()?);
    rep.info("xi r factor", rules.xi_r()?);
    for k in [MINUS, ZERO, PLUS] {
        let xi = alg.xi(k);
        let back = alg.product(&[&xi, &alg.x0(-1), &alg.x0(1)])?;
        rep.check(format!("xi{} x0^-1 x0 = xi{}", LABELS[k], LABELS[k]), back == xi, || back.to_string());
        let r2 = alg.product(&[&alg.r(2), &xi])?;
        let want = alg.product(&[&xi, &alg.r(2)])?.scale(rules.mu()?);
        rep.check(format!("r^2 xi{} = mu xi{} r^2", LABELS[k], LABELS[k]), r2 == want, || r2.to_string());
    }
    rep.info("rules", rules.render());
    Ok(rep)
}

/// `q → 1` limits of the metric, braid matrix, exterior relations, compatibility
/// factors and the Dirac element.
pub fn classical_limits(alg: &Algebra) -> Result<Report> {
    let so = alg.soq3();
    let mut rep = Report::new();
    let one = BigRational::one();
    let zero = BigRational::zero();
    let mut g_ok = true;
    let mut r_ok = true;
    for i in 0..3 {
        for j in 0..3 {
            let want = if j == conj(i) { &one } else { &zero };
            g_ok &= so.g(i, j).limit_q_to_1().as_ref() == Ok(want);
            for k in 0..3 {
                for l in 0..3 {
                    let want = if i == l && j == k { &one } else { &zero };
                    r_ok &= so.r(i, j, k, l).limit_q_to_1().as_ref() == Ok(want);
                }
            }
        }
    }
    rep.check("g -> delta_{i,-j}", g_ok, || "metric limit differs".into());
    rep.check("R -> flip", r_ok, || "braid matrix limit differs".into());
    let ext = alg.exterior();
    let mut anti = true;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let s = &ext.pair(i, j)[k] + &ext.pair(j, i)[k];
                anti &= s.limit_q_to_1().map(|v| v.is_zero()).unwrap_or(false);
            }
        }
    }
    rep.check("xi xi -> antisymmetric", anti, || "exterior limit is not antisymmetric".into());
    for c in FlipChoice::ALL {
        let f = c.conformal_factor().limit_q_to_1()?;
        rep.check(format!("compat factor [{}] -> 1", c.tag()), f.is_one(), || f.to_string());
    }
    let theta = alg.dirac_theta()?;
    let poles = theta.terms().all(|(_, c)| c.limit_q_to_1().is_err());
    rep.check("theta coefficients have a pole at q = 1", poles, || theta.to_string());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_engine_properties() {
        let alg = Algebra::new().unwrap();
        for rep in [
            confluence(&alg, 1, 10).unwrap(),
            grading(&alg, 1, 10).unwrap(),
            d_squared(&alg, 1, 5).unwrap(),
            d_agreement(&alg, 1, 5).unwrap(),
            star_a(&alg, 1, 5).unwrap(),
            exterior(&alg).unwrap(),
            derived_rules(&alg).unwrap(),
            classical_limits(&alg).unwrap(),
        ] {
            assert!(rep.passed(), "{:?}", rep.first_failure());
        }
    }
}
