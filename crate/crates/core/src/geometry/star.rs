//! The involution on forms and the volume form.

use super::Geometry;
use crate::algebra::matrix::{is_identity, left_inverse, mat_mul, transpose, Matrix3};
use crate::algebra::{Algebra, Element, Letter, Monomial, XiWord};
use crate::error::{Error, Result};
use crate::par;
use crate::report::Report;
use crate::scalarq::ScalarQ;
use crate::soq3::LABELS;

/// Solves `(ξ^i)^⋆ = Λ⁻² ξ^j c_{ji}` from `(θ^a)^⋆ = θ^b g_{ba}` and `ξ^i = e^i_a Λ θ^a`.
///
/// Returns `c_{ji}` at `[j][i]` and the three images in normal form.
pub(crate) fn solve_xi_star(alg: &Algebra, theta: &[Element; 3], e: &Matrix3) -> Result<(Matrix3, [Element; 3])> {
    let so = alg.soq3();
    let lam_inv = alg.lam(-1);
    let f = transpose(e);
    let m = left_inverse(alg, &f)?;
    if !is_identity(&mat_mul(alg, &f, &m)?) {
        return Err(Error::NotInvertible("transposed inverse frame matrix is one-sided".into()));
    }
    let mut c: Matrix3 = Default::default();
    let mut images: [Element; 3] = Default::default();
    for i in 0..3 {
        // Λ²(ξ^i)^⋆ = Σ g_{ba} Λ θ^b star(e^i_a), read off in the frame
        let mut omega = [Element::zero(), Element::zero(), Element::zero()];
        for a in 0..3 {
            let ea = alg.star_a(&e[i][a])?;
            for (b, slot) in omega.iter_mut().enumerate() {
                let g = so.g(b, a);
                if !g.is_zero() {
                    *slot = slot.clone() + alg.mul(&alg.lam(1), &ea)?.scale(g);
                }
            }
        }
        let mut img = Element::zero();
        for (j, row) in m.iter().enumerate() {
            let mut y = Element::zero();
            for (a, w) in omega.iter().enumerate() {
                if !row[a].is_zero() && !w.is_zero() {
                    y = y + alg.mul(&row[a], w)?;
                }
            }
            c[j][i] = alg.mul(&lam_inv, &y)?;
            img = img + alg.mul(&alg.xi(j), &c[j][i])?;
        }
        images[i] = alg.mul(&alg.lam(-2), &img)?;

        let mut direct = Element::zero();
        for a in 0..3 {
            let ea = alg.star_a(&e[i][a])?;
            for (b, th) in theta.iter().enumerate() {
                let g = so.g(b, a);
                if !g.is_zero() {
                    direct = direct + alg.product(&[th, &lam_inv, &ea])?.scale(g);
                }
            }
        }
        if direct != images[i] {
            return Err(Error::RuleDerivation(format!("xi{} star: frame solution disagrees with direct image", LABELS[i])));
        }
    }
    Ok((c, images))
}

/// Coefficients at `q = 1` with `Λ` dropped.
fn classical(f: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (m, c) in f.terms() {
        out.add_term(Monomial { lam: 0, ..*m }, ScalarQ::rational(c.limit_q_to_1()?));
    }
    Ok(out)
}

impl Geometry {
    /// Antimultiplicative involution on forms, extending `star_A` by the frame rule.
    pub fn star_omega(&self, f: &Element) -> Result<Element> {
        let alg = &self.alg;
        let mut out = Element::zero();
        for (m, c) in f.terms() {
            let even = alg.star_a(&Element::monomial(Monomial { xi: XiWord::Empty, ..*m }))?;
            let mut factors: Vec<&Element> = m.xi.letters().iter().rev().map(|&i| &self.frame.xi_star[i as usize]).collect();
            factors.push(&even);
            out.add_scaled(&alg.product(&factors)?, c);
        }
        Ok(out)
    }

    /// `⋆² = id` on the `ξ`'s, non-constant `c_{ji}`, compatibility with the
    /// exterior relations and `(θ^a)^⋆ = θ^b g_{ba}`.
    pub fn verify_star(&self) -> Result<Report> {
        let alg = &self.alg;
        let so = alg.soq3();
        let fr = &self.frame;
        let mut rep = Report::new();
        for i in 0..3 {
            let back = self.star_omega(&fr.xi_star[i])?;
            rep.check(format!("star^2 xi{} = xi{}", LABELS[i], LABELS[i]), back == alg.xi(i), || back.to_string());
        }
        let nonconst = fr.c_matrix.iter().flatten().filter(|c| !c.is_zero() && c.as_scalar().is_none()).count();
        rep.check("c matrix has a non-constant entry", nonconst > 0, || "all entries constant".into());
        rep.info("non-constant c entries", nonconst);
        for a in 0..3 {
            let lhs = self.star_omega(&fr.theta[a])?;
            let mut rhs = Element::zero();
            for b in 0..3 {
                rhs.add_scaled(&fr.theta[b], so.g(b, a));
            }
            let diff = &lhs - &rhs;
            rep.check(format!("(th{})* = th^b g_b{}", LABELS[a], LABELS[a]), diff.is_zero(), || diff.to_string());
        }
        // ⋆ applied to ξ^iξ^j before and after reduction
        for i in 0..3 {
            for j in 0..3 {
                let raw = alg.mul(&fr.xi_star[j], &fr.xi_star[i])?;
                let reduced = self.star_omega(&alg.mul(&alg.xi(i), &alg.xi(j))?)?;
                let diff = &raw - &reduced;
                rep.check(format!("star respects xi{} xi{}", LABELS[i], LABELS[j]), diff.is_zero(), || diff.to_string());
            }
        }
        // q → 1, Λ → 1: the c's stay finite; whether the result is the naive `dx^j g_{ji}` is reported
        for i in 0..3 {
            let lim = classical(&fr.xi_star[i]);
            rep.check(format!("(xi{})* finite as q -> 1", LABELS[i]), lim.is_ok(), || fr.xi_star[i].to_string());
            if let Ok(lim) = lim {
                let mut naive = Element::zero();
                for j in 0..3 {
                    naive.add_scaled(&alg.xi(j), &ScalarQ::rational(so.g(j, i).limit_q_to_1()?));
                }
                rep.info(format!("classical (xi{})* = xi^j g_j{}", LABELS[i], LABELS[i]), lim == naive);
            }
        }
        Ok(rep)
    }

    /// `dV = θ⁺θ⁰θ⁻` spans degree 3, is central and real, and `θ^aθ^bθ^c = ε^{abc} dV`.
    pub fn volume_form(&self) -> Result<Report> {
        let alg = &self.alg;
        let fr = &self.frame;
        let dv = &fr.dv;
        let mut rep = Report::new();
        rep.check("dV is a nonzero 3-form", !dv.is_zero() && dv.degree() == Some(3), || dv.to_string());
        let gens = Letter::even_generators();
        let comms = par::try_map(&gens, |&l| alg.commutator(dv, &alg.letter(l)))?;
        for (l, c) in gens.iter().zip(comms) {
            rep.check(format!("[dV, {}] = 0", super::frame::generator_name(*l)), c.is_zero(), || c.to_string());
        }
        let star = self.star_omega(dv)?;
        rep.check("(dV)* = dV", &star == dv, || star.to_string());
        let eps = alg.exterior().epsilon();
        let triples: Vec<(usize, usize, usize)> =
            (0..3).flat_map(|a| (0..3).flat_map(move |b| (0..3).map(move |c| (a, b, c)))).collect();
        let prods = par::try_map(&triples, |&(a, b, c)| alg.product(&[&fr.theta[a], &fr.theta[b], &fr.theta[c]]))?;
        for (&(a, b, c), p) in triples.iter().zip(prods) {
            let diff = &p - &dv.scale(&eps[a][b][c]);
            rep.check(
                format!("th{} th{} th{} = eps dV", LABELS[a], LABELS[b], LABELS[c]),
                diff.is_zero(),
                || diff.to_string(),
            );
        }
        rep.info("dV", dv);
        Ok(rep)
    }
}
