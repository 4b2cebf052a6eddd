//! Flips, the two connections, torsion, curvature and metric compatibility.

use super::frame::metric_g0;
use super::tensor::Tensor;
use super::Geometry;
use crate::algebra::{Element, Letter, XiWord};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::par;
use crate::report::Report;
use crate::scalarq::ScalarQ;
use crate::soq3::{FlipChoice, LABELS, MINUS, PLUS, ZERO};

fn xi_index(w: XiWord) -> Result<usize> {
    match w {
        XiWord::One(i) => Ok(i as usize),
        other => Err(Error::Degree { expected: 1, found: other.to_string() }),
    }
}

impl Geometry {
    /// `σ` acting on slots `k, k+1` through the constant matrix `S`.
    pub fn sigma_at(&self, choice: FlipChoice, t: &Tensor, k: usize) -> Result<Tensor> {
        let s = self.alg.soq3().flip(choice);
        let mut out = Tensor::zero();
        for (words, c) in t.terms() {
            let (i, j) = (xi_index(words[k])?, xi_index(words[k + 1])?);
            for h in 0..3 {
                for l in 0..3 {
                    let v = &s[(3 * i + j, 3 * h + l)];
                    if v.is_zero() {
                        continue;
                    }
                    let mut nw = words.clone();
                    nw[k] = XiWord::One(h as u8);
                    nw[k + 1] = XiWord::One(l as u8);
                    out.add_term(nw, c.scale(v));
                }
            }
        }
        Ok(out)
    }

    pub fn sigma(&self, choice: FlipChoice, t: &Tensor) -> Result<Tensor> {
        self.sigma_at(choice, t, 0)
    }

    /// `π`: wedge of the first two slots.
    pub fn pi(&self, t: &Tensor) -> Result<Tensor> {
        t.wedge_slots(&self.alg, 0)
    }

    /// `Dξ^i = −θ ⊗ ξ^i + σ(ξ^i ⊗ θ)`.
    pub fn d_xi(&self, choice: FlipChoice, i: usize) -> Result<Tensor> {
        let alg = &self.alg;
        let theta = &self.frame.dirac;
        let xi = alg.xi(i);
        let left = Tensor::from_form(theta).append(XiWord::One(i as u8));
        let right = self.sigma(choice, &Tensor::from_forms(alg, &[&xi, theta])?)?;
        Ok(&right - &left)
    }

    fn d_basis(&self, choice: FlipChoice) -> Result<Vec<Tensor>> {
        (0..3).map(|i| self.d_xi(choice, i)).collect()
    }

    /// `D(f ξ^i) = df ⊗ ξ^i + f Dξ^i` on an arbitrary one-form.
    pub fn connection_d(&self, choice: FlipChoice, omega: &Element) -> Result<Tensor> {
        let basis = self.d_basis(choice)?;
        self.connection_d_with(&basis, omega)
    }

    fn connection_d_with(&self, basis: &[Tensor], omega: &Element) -> Result<Tensor> {
        let alg = &self.alg;
        let mut out = Tensor::zero();
        for (w, f) in omega.by_word() {
            let i = xi_index(w)?;
            let df = alg.d(&f)?;
            out = &out + &Tensor::from_form(&df).append(w);
            out = &out + &basis[i].left_mul(alg, &f)?;
        }
        Ok(out)
    }

    /// `D₂(c ξ⊗η) = dc ⊗ ξ ⊗ η + c (Dξ ⊗ η + σ₁₂(ξ ⊗ Dη))`.
    pub fn d2(&self, choice: FlipChoice, t: &Tensor) -> Result<Tensor> {
        let basis = self.d_basis(choice)?;
        self.d2_with(choice, &basis, t)
    }

    fn d2_with(&self, choice: FlipChoice, basis: &[Tensor], t: &Tensor) -> Result<Tensor> {
        let alg = &self.alg;
        let terms: Vec<(Vec<XiWord>, Element)> = t.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let parts = par::try_map(&terms, |(words, c)| -> Result<Tensor> {
            let (a, b) = match words.as_slice() {
                [a, b] => (*a, *b),
                _ => return Err(Error::Degree { expected: 2, found: format!("{} slots", words.len()) }),
            };
            let dc = alg.d(c)?;
            let mut acc = Tensor::from_form(&dc).append(a).append(b);
            let inner = &basis[xi_index(a)?].append(b)
                + &self.sigma_at(choice, &Tensor::form_tensor(alg, &Element::monomial(crate::algebra::Monomial::xi(a)), &basis[xi_index(b)?])?, 0)?;
            acc = &acc + &inner.left_mul(alg, c)?;
            Ok(acc)
        })?;
        Ok(parts.iter().fold(Tensor::zero(), |acc, p| &acc + p))
    }

    /// `Curv(ω) = π₁₂ D₂ D ω`.
    pub fn curvature_of(&self, choice: FlipChoice, omega: &Element) -> Result<Tensor> {
        let basis = self.d_basis(choice)?;
        let d = self.connection_d_with(&basis, omega)?;
        self.d2_with(choice, &basis, &d)?.wedge_slots(&self.alg, 0)
    }

    /// Flip axioms, torsion, σ right-linearity, right Leibniz rule and the classical limit.
    pub fn verify_connection(&self, choice: FlipChoice) -> Result<Report> {
        let alg = &self.alg;
        let tag = choice.tag();
        let mut rep = Report::new();
        let s = alg.soq3().flip(choice);

        // π∘(σ+1) = 0 in the exterior algebra
        for i in 0..3 {
            for j in 0..3 {
                let t = Tensor::xi_pair(i, j);
                let sum = self.pi(&(&self.sigma(choice, &t)? + &t))?;
                rep.check(format!("pi(sigma+1)(xi{} xi{}) = 0 [{tag}]", LABELS[i], LABELS[j]), sum.is_zero(), || sum.to_string());
            }
        }
        let id3 = Mat::identity(3);
        let s12 = s.kron(&id3);
        let s23 = id3.kron(&s);
        let braid = &(&(&s12 * &s23) * &s12) - &(&(&s23 * &s12) * &s23);
        rep.check(format!("braid equation [{tag}]"), braid.is_zero(), || "nonzero residual".into());

        let basis = self.d_basis(choice)?;
        for (i, dxi) in basis.iter().enumerate() {
            let tor = self.pi(dxi)?;
            rep.check(format!("torsion(xi{}) = 0 [{tag}]", LABELS[i]), tor.is_zero(), || tor.to_string());
        }
        let samples = [
            alg.mul(&alg.x0(1), &alg.xi(ZERO))?,
            alg.mul(&alg.product(&[&alg.lam(1), &alg.r(-1), &alg.x(PLUS)])?, &alg.xi(MINUS))?,
            alg.mul(&alg.x(MINUS), &alg.xi(PLUS))?,
        ];
        for w in &samples {
            let tor = &Tensor::from_form(&alg.d(w)?) - &self.pi(&self.connection_d_with(&basis, w)?)?;
            rep.check(format!("torsion({w}) = 0 [{tag}]"), tor.is_zero(), || tor.to_string());
        }

        let gens = Letter::even_generators();
        let cases: Vec<(usize, Letter)> = (0..3).flat_map(|i| gens.into_iter().map(move |l| (i, l))).collect();
        let checks = par::try_map(&cases, |&(i, l)| -> Result<(Tensor, Tensor)> {
            let f = alg.letter(l);
            let xi = alg.xi(i);
            // σ(ξ^i ⊗ ξ^j f) = σ(ξ^i ⊗ ξ^j) f, summed against a generic j by taking all j at once
            let mut lin = Tensor::zero();
            for j in 0..3 {
                let lhs = self.sigma(choice, &Tensor::from_forms(alg, &[&xi, &alg.mul(&alg.xi(j), &f)?])?)?;
                let rhs = self.sigma(choice, &Tensor::xi_pair(i, j))?.right_mul(alg, &f)?;
                lin = &lin + &(&lhs - &rhs).map_coefficients(|c| c.clone());
            }
            // D(ξ^i f) = σ(ξ^i ⊗ df) + (Dξ^i) f
            let left = self.connection_d_with(&basis, &alg.mul(&xi, &f)?)?;
            let df = Tensor::from_form(&alg.d(&f)?);
            let right = &self.sigma(choice, &Tensor::form_tensor(alg, &xi, &df)?)? + &basis[i].right_mul(alg, &f)?;
            Ok((lin, &left - &right))
        })?;
        for ((i, l), (lin, leib)) in cases.iter().zip(checks) {
            rep.check(format!("sigma right-linear (xi{}, {l}) [{tag}]", LABELS[*i]), lin.is_zero(), || lin.to_string());
            rep.check(format!("right Leibniz (xi{}, {l}) [{tag}]", LABELS[*i]), leib.is_zero(), || leib.to_string());
        }

        let x0xi0 = alg.mul(&alg.x0(1), &alg.xi(ZERO))?;
        let leib = &self.connection_d_with(&basis, &x0xi0)?
            - &(&Tensor::xi_pair(ZERO, ZERO) + &basis[ZERO].left_mul(alg, &alg.x0(1))?);
        rep.check(format!("D(x0 xi0) = xi0 (x) xi0 + x0 D xi0 [{tag}]"), leib.is_zero(), || leib.to_string());

        // the θ pole must cancel; whether the finite limit vanishes is reported, not required
        for (i, dxi) in basis.iter().enumerate() {
            let mut finite = true;
            let mut vanishes = true;
            for (_, c) in dxi.terms() {
                for (_, v) in c.terms() {
                    match v.limit_q_to_1() {
                        Ok(x) => vanishes &= num_traits::Zero::is_zero(&x),
                        Err(_) => finite = false,
                    }
                }
            }
            rep.check(format!("D xi{} finite as q -> 1 [{tag}]", LABELS[i]), finite, || dxi.to_string());
            rep.info(format!("D xi{} vanishes as q -> 1 [{tag}]", LABELS[i]), finite && vanishes);
        }
        Ok(rep)
    }

    /// `Curv(ξ^i) = 0` for every basis form, plus a left-linearity spot check.
    pub fn curvature(&self, choice: FlipChoice) -> Result<Report> {
        let alg = &self.alg;
        let tag = choice.tag();
        let mut rep = Report::new();
        let idx = [MINUS, ZERO, PLUS];
        let curvs = par::try_map(&idx, |&i| self.curvature_of(choice, &alg.xi(i)))?;
        for (i, c) in idx.iter().zip(curvs) {
            rep.check(format!("Curv(xi{}) = 0 [{tag}]", LABELS[*i]), c.is_zero(), || c.to_string());
        }
        let w = alg.mul(&alg.x0(1), &alg.xi(ZERO))?;
        let c = self.curvature_of(choice, &w)?;
        rep.check(format!("Curv(x0 xi0) = x0 Curv(xi0) [{tag}]"), c.is_zero(), || c.to_string());
        Ok(rep)
    }

    /// `S^{ij}_{hk} g^{kl} S^{mn}_{jl} = factor · g^{im} δ^n_h` exactly, and the
    /// informational discrepancy `g₂₃ D₂ − d g₀` on basis pairs.
    pub fn metric_compatibility(&self, choice: FlipChoice) -> Result<Report> {
        let alg = &self.alg;
        let so = alg.soq3();
        let s = so.flip(choice);
        let tag = choice.tag();
        let mut rep = Report::new();
        let lhs = |i: usize, m: usize, h: usize, n: usize| -> ScalarQ {
            let mut acc = ScalarQ::zero();
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let a = &s[(3 * i + j, 3 * h + k)];
                        let g = so.g(k, l);
                        let b = &s[(3 * m + n, 3 * j + l)];
                        if !a.is_zero() && !g.is_zero() && !b.is_zero() {
                            acc = &acc + &(&(a * g) * b);
                        }
                    }
                }
            }
            acc
        };
        let factor = lhs(ZERO, ZERO, ZERO, ZERO);
        let mut ok = true;
        let mut witness = String::new();
        for i in 0..3 {
            for m in 0..3 {
                for h in 0..3 {
                    for n in 0..3 {
                        let expect = if h == n { &factor * so.g(i, m) } else { ScalarQ::zero() };
                        let got = lhs(i, m, h, n);
                        if got != expect && ok {
                            ok = false;
                            witness = format!("[{}{}{}{}] = {got}", LABELS[i], LABELS[m], LABELS[h], LABELS[n]);
                        }
                    }
                }
            }
        }
        rep.check(format!("S g S = c g delta [{tag}]"), ok, || witness);
        let expected = choice.conformal_factor();
        rep.check(format!("conformal factor = {expected} [{tag}]"), factor == expected, || factor.to_string());
        rep.info(format!("compat factor {tag}"), &factor);

        let basis = self.d_basis(choice)?;
        let r2l2 = alg.mul(&alg.r(2), &alg.lam(2))?;
        let mut nonzero = 0;
        for i in 0..3 {
            for j in 0..3 {
                let t = Tensor::xi_pair(i, j);
                let d2 = self.d2_with(choice, &basis, &t)?;
                let mut g23 = Element::zero();
                for (words, c) in d2.terms() {
                    let (b, cc) = (xi_index(words[1])?, xi_index(words[2])?);
                    let g = so.g(b, cc);
                    if g.is_zero() {
                        continue;
                    }
                    let first = alg.mul(c, &Element::monomial(crate::algebra::Monomial::xi(words[0])))?;
                    g23 = g23 + alg.mul(&first, &r2l2)?.scale(g);
                }
                let dg = alg.d(&metric_g0(alg, &t)?)?;
                let diff = &g23 - &dg;
                if !diff.is_zero() {
                    nonzero += 1;
                }
                if i == MINUS && j == PLUS {
                    rep.info(format!("g23 D2 - d g0 on xi- (x) xi+ [{tag}]"), &diff);
                }
            }
        }
        rep.info(format!("nonzero g23 D2 - d g0 components [{tag}]"), nonzero);
        Ok(rep)
    }
}
