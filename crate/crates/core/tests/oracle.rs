//! Symbolic normal forms against operator products in a truncated irrep.

use proptest::prelude::*;
use qeuclid_core::algebra::{Letter, Monomial};
use qeuclid_core::representation::{build_operators, BasisIndex, Irrep, IrrepParams};
use qeuclid_core::{Algebra, Element};
use std::sync::OnceLock;

fn alg() -> &'static Algebra {
    static ALG: OnceLock<Algebra> = OnceLock::new();
    ALG.get_or_init(|| Algebra::new().unwrap())
}

/// Applies one generator to a dense state vector.
fn apply(irr: &Irrep, l: Letter, v: &[f64]) -> Vec<f64> {
    let name = match l {
        Letter::Lam(1) => "L",
        Letter::Lam(_) => "L^-1",
        Letter::R(1) => "r",
        Letter::R(_) => {
            return irr.diagonal("r").iter().zip(v).map(|(d, x)| x / d).collect();
        }
        Letter::X0(1) => "x0",
        Letter::X0(_) => "x0^-1",
        Letter::Xp => "x+",
        Letter::Xm => "x-",
        Letter::Xi(_) => unreachable!("even words only"),
    };
    let m = irr.op(name);
    let mut out = vec![0.0; v.len()];
    for (x, (i, j)) in m.iter() {
        out[i] += x * v[j];
    }
    out
}

/// Rightmost letter acts first.
fn apply_word(irr: &Irrep, w: &[Letter], v: &[f64]) -> Vec<f64> {
    w.iter().rev().fold(v.to_vec(), |acc, &l| apply(irr, l, &acc))
}

fn monomial_word(m: &Monomial) -> Vec<Letter> {
    let rep = |l: Letter, k: i32| std::iter::repeat_n(l, k.unsigned_abs() as usize);
    let sign = |k: i32| if k < 0 { -1 } else { 1 };
    rep(Letter::Lam(sign(m.lam)), m.lam)
        .chain(rep(Letter::R(sign(m.r)), m.r))
        .chain(rep(Letter::X0(sign(m.x0)), m.x0))
        .chain(rep(Letter::Xp, m.xp as i32))
        .chain(rep(Letter::Xm, m.xm as i32))
        .collect()
}

fn apply_element(irr: &Irrep, e: &Element, v: &[f64]) -> Vec<f64> {
    let s = irr.params.s();
    let mut out = vec![0.0; v.len()];
    for (m, c) in e.terms() {
        let c = c.eval(s).unwrap();
        for (o, x) in out.iter_mut().zip(apply_word(irr, &monomial_word(m), v)) {
            *o += c * x;
        }
    }
    out
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::Lam(1)),
        Just(Letter::Lam(-1)),
        Just(Letter::R(1)),
        Just(Letter::R(-1)),
        Just(Letter::X0(1)),
        Just(Letter::X0(-1)),
        Just(Letter::Xp),
        Just(Letter::Xm),
    ]
}

fn norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_matches_operator_product(
        word in prop::collection::vec(letter(), 1..5),
        q in 1.3f64..2.5,
        eta in prop_oneof![Just(1i8), Just(-1i8)],
        n0 in 0u32..3,
        n in -1i32..=1,
        m in -1i32..=1,
    ) {
        let p = IrrepParams::new(eta, 1.0, q, 8, 6, 6).unwrap();
        let irr = build_operators(&p).unwrap();
        let j = irr.basis.position(BasisIndex { n0, n, m }).unwrap();
        let mut v = vec![0.0; irr.basis.len()];
        v[j] = 1.0;
        let direct = apply_word(&irr, &word, &v);
        let nf = alg().word(&word).unwrap();
        let via_nf = apply_element(&irr, &nf, &v);
        let scale = nf.terms().map(|(m, c)| c.eval(p.s()).unwrap().abs() * norm(&apply_word(&irr, &monomial_word(m), &v))).sum::<f64>();
        let err = direct.iter().zip(&via_nf).fold(0.0, |a, (x, y)| f64::max(a, (x - y).abs()));
        prop_assert!(err <= 1e-10 * scale.max(norm(&direct)).max(f64::MIN_POSITIVE), "word {:?}: nf {} err {:e}", word, nf, err);
    }
}
