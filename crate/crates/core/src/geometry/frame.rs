//! The frame `θ^a`, its inverse matrix, the inner derivations `λ_a` and the
//! identities they satisfy.

use super::tensor::Tensor;
use super::Geometry;
use crate::algebra::matrix::{is_identity, left_inverse, mat_mul, right_inverse, Matrix3};
use crate::algebra::{Algebra, Element, Letter};
use crate::error::{Error, Result};
use crate::par;
use crate::report::Report;
use crate::scalarq::ScalarQ;
use crate::soq3::{LABELS, MINUS, PLUS, ZERO};

#[derive(Clone, Debug)]
pub struct Frame {
    pub theta: [Element; 3],
    /// `θ^a_i` at `[a][i]`.
    pub theta_matrix: Matrix3,
    /// `e^i_a` at `[i][a]`.
    pub e_matrix: Matrix3,
    /// `λ_a` with lower index.
    pub lambda: [Element; 3],
    pub dirac: Element,
    /// `θ⁺θ⁰θ⁻`.
    pub dv: Element,
    /// `c_{ji}` at `[j][i]` in `(ξ^i)^⋆ = Λ⁻² ξ^j c_{ji}`.
    pub c_matrix: Matrix3,
    /// `(ξ^i)^⋆` in normal form.
    pub xi_star: [Element; 3],
}

fn term(alg: &Algebra, c: ScalarQ, factors: &[Element]) -> Result<Element> {
    let refs: Vec<&Element> = factors.iter().collect();
    Ok(alg.product(&refs)?.scale(&c))
}

impl Frame {
    pub fn build(alg: &Algebra) -> Result<Self> {
        let s = ScalarQ::s();
        let q = ScalarQ::q();
        let q1 = &q + &ScalarQ::one();
        let xp = alg.x(PLUS);
        let xm = alg.x(MINUS);
        let x0 = alg.x(ZERO);
        let x0i = alg.x0(-1);

        let mut t: Matrix3 = Default::default();
        t[MINUS][MINUS] = x0i.clone();
        t[ZERO][MINUS] = term(alg, &s * &q1, &[x0i.clone(), alg.r(-1), xp.clone()])?;
        t[ZERO][ZERO] = alg.r(-1);
        t[PLUS][MINUS] = term(alg, -&(&(&s * &q) * &q1), &[alg.r(-2), x0i.clone(), xp.clone(), xp.clone()])?;
        t[PLUS][ZERO] = term(alg, -&q1, &[alg.r(-2), xp.clone()])?;
        t[PLUS][PLUS] = term(alg, ScalarQ::one(), &[alg.r(-2), x0.clone()])?;

        let mut theta: [Element; 3] = Default::default();
        for (a, th) in theta.iter_mut().enumerate() {
            let mut sum = Element::zero();
            for i in 0..3 {
                if !t[a][i].is_zero() {
                    sum = sum + alg.mul(&t[a][i], &alg.xi(i))?;
                }
            }
            *th = alg.mul(&alg.lam(-1), &sum)?;
        }

        let e = right_inverse(alg, &t)?;
        if !is_identity(&mat_mul(alg, &e, &t)?) {
            return Err(Error::NotInvertible("frame matrix has no two-sided inverse".into()));
        }

        let hinv = ScalarQ::h().inv()?;
        let lam = alg.lam(1);
        let lambda = [
            term(alg, &hinv * &q, &[lam.clone(), x0i.clone(), xp.clone()])?,
            term(alg, -&(&hinv * &s), &[lam.clone(), x0i.clone(), alg.r(1)])?,
            term(alg, -&hinv, &[lam, x0i, xm])?,
        ];
        let dirac = alg.dirac_theta()?;
        let dv = alg.product(&[&theta[PLUS], &theta[ZERO], &theta[MINUS]])?;
        let (c_matrix, xi_star) = super::star::solve_xi_star(alg, &theta, &e)?;
        Ok(Frame { theta, theta_matrix: t, e_matrix: e, lambda, dirac, dv, c_matrix, xi_star })
    }

    /// `λ^a = g^{ab} λ_b`.
    pub fn lambda_upper(&self, alg: &Algebra) -> [Element; 3] {
        let mut out: [Element; 3] = Default::default();
        for (a, slot) in out.iter_mut().enumerate() {
            for b in 0..3 {
                slot.add_scaled(&self.lambda[b], alg.soq3().g(a, b));
            }
        }
        out
    }
}

/// Names of the even generators used throughout the checks.
pub fn generator_name(l: Letter) -> String {
    l.to_string()
}

/// `g₀(c ξ^i ⊗ ξ^j) = c g^{ij} r² Λ²`.
pub fn metric_g0(alg: &Algebra, t: &Tensor) -> Result<Element> {
    let r2l2 = alg.mul(&alg.r(2), &alg.lam(2))?;
    let mut out = Element::zero();
    for (words, c) in t.terms() {
        let (i, j) = match words.as_slice() {
            [crate::algebra::XiWord::One(i), crate::algebra::XiWord::One(j)] => (*i as usize, *j as usize),
            _ => return Err(Error::Degree { expected: 2, found: format!("{words:?}") }),
        };
        let g = alg.soq3().g(i, j);
        if !g.is_zero() {
            out = out + alg.mul(c, &r2l2)?.scale(g);
        }
    }
    Ok(out)
}

/// The three coordinate relations written for arbitrary elements `y^-, y^0, y^+`.
pub fn coordinate_pattern(alg: &Algebra, y: &[Element; 3]) -> Result<[Element; 3]> {
    let q = ScalarQ::q();
    let (m, z, p) = (&y[MINUS], &y[ZERO], &y[PLUS]);
    Ok([
        alg.mul(m, z)? - alg.mul(z, m)?.scale(&q),
        alg.mul(p, z)? - alg.mul(z, p)?.scale(&q.inv()?),
        alg.commutator(p, m)? - alg.mul(z, z)?.scale(&ScalarQ::h()),
    ])
}

impl Geometry {
    /// `[θ^a, f] = 0` for the three frame elements and the eight even generators.
    pub fn verify_frame_centrality(&self) -> Result<Report> {
        let alg = &self.alg;
        let pairs: Vec<(usize, Letter)> =
            (0..3).flat_map(|a| Letter::even_generators().into_iter().map(move |l| (a, l))).collect();
        let results = par::try_map(&pairs, |&(a, l)| alg.commutator(&self.frame.theta[a], &alg.letter(l)))?;
        let mut rep = Report::new();
        for ((a, l), c) in pairs.iter().zip(results) {
            rep.check(format!("[th{}, {}]", LABELS[*a], generator_name(*l)), c.is_zero(), || c.to_string());
        }
        Ok(rep)
    }

    /// Dirac element, duality `df = [λ_a, f] θ^a`, inverse matrix and `e_a x^i = qΛ e^i_a`.
    pub fn verify_duality_and_dirac(&self) -> Result<Report> {
        let alg = &self.alg;
        let f = &self.frame;
        let mut rep = Report::new();

        let mut sum = f.dirac.clone();
        for a in 0..3 {
            sum = sum + alg.mul(&f.lambda[a], &f.theta[a])?;
        }
        rep.check("theta + lambda_a theta^a = 0", sum.is_zero(), || sum.to_string());

        let gens = Letter::even_generators();
        let duals = par::try_map(&gens, |&l| -> Result<(Element, Element)> {
            let g = alg.letter(l);
            let mut rhs = Element::zero();
            for a in 0..3 {
                rhs = rhs + alg.mul(&alg.commutator(&f.lambda[a], &g)?, &f.theta[a])?;
            }
            Ok((alg.d(&g)?, rhs))
        })?;
        for (l, (lhs, rhs)) in gens.iter().zip(duals) {
            let diff = &lhs - &rhs;
            rep.check(format!("d{} = [lambda_a, {}] theta^a", l, l), diff.is_zero(), || diff.to_string());
        }

        rep.check("theta e = 1", is_identity(&mat_mul(alg, &f.theta_matrix, &f.e_matrix)?), || "left product".into());
        rep.check("e theta = 1", is_identity(&mat_mul(alg, &f.e_matrix, &f.theta_matrix)?), || "right product".into());
        let e_left = left_inverse(alg, &f.theta_matrix)?;
        rep.check("left and right inverse agree", e_left == f.e_matrix, || "inverses differ".into());

        let ql = alg.lam(1).scale(&ScalarQ::q());
        for a in 0..3 {
            for i in 0..3 {
                let lhs = alg.commutator(&f.lambda[a], &alg.x(i))?;
                let rhs = alg.mul(&ql, &f.e_matrix[i][a])?;
                let diff = &lhs - &rhs;
                rep.check(
                    format!("e_{} x{} = q L e^{}_{}", LABELS[a], LABELS[i], LABELS[i], LABELS[a]),
                    diff.is_zero(),
                    || diff.to_string(),
                );
            }
        }
        Ok(rep)
    }

    /// RTT relations (81 components) and both gTT relations (9 components each).
    pub fn verify_rtt_gtt(&self) -> Result<Report> {
        let alg = &self.alg;
        let so = alg.soq3();
        let e = &self.frame.e_matrix;
        let idx: Vec<(usize, usize, usize, usize)> = (0..81).map(|n| (n / 27, (n / 9) % 3, (n / 3) % 3, n % 3)).collect();
        // ee[(k, a, l, b)] = e^k_a e^l_b
        let ee = par::try_map(&idx, |&(k, a, l, b)| alg.mul(&e[k][a], &e[l][b]))?;
        let at = |k: usize, a: usize, l: usize, b: usize| &ee[k * 27 + a * 9 + l * 3 + b];

        let mut rep = Report::new();
        let rtt = par::map(&idx, |&(i, j, a, b)| {
            let mut lhs = Element::zero();
            let mut rhs = Element::zero();
            for k in 0..3 {
                for l in 0..3 {
                    let c = so.r(i, j, k, l);
                    if !c.is_zero() {
                        lhs.add_scaled(at(k, a, l, b), c);
                    }
                    let c = so.r(k, l, a, b);
                    if !c.is_zero() {
                        rhs.add_scaled(at(i, k, j, l), c);
                    }
                }
            }
            &lhs - &rhs
        });
        for (&(i, j, a, b), diff) in idx.iter().zip(rtt) {
            let name = format!("RTT[{}{},{}{}]", LABELS[i], LABELS[j], LABELS[a], LABELS[b]);
            rep.check(name, diff.is_zero(), || diff.to_string());
        }

        let r2 = alg.r(2);
        for i in 0..3 {
            for j in 0..3 {
                let mut lhs = Element::zero();
                let mut lhs2 = Element::zero();
                for a in 0..3 {
                    for b in 0..3 {
                        lhs.add_scaled(at(i, a, j, b), so.g(a, b));
                        lhs2.add_scaled(at(a, i, b, j), so.g(a, b));
                    }
                }
                let diff = &lhs - &r2.scale(so.g(i, j));
                rep.check(format!("gTT upper[{}{}]", LABELS[i], LABELS[j]), diff.is_zero(), || diff.to_string());
                let diff = &lhs2 - &r2.scale(so.g(i, j));
                rep.check(format!("gTT lower[{}{}]", LABELS[i], LABELS[j]), diff.is_zero(), || diff.to_string());
            }
        }
        Ok(rep)
    }

    /// Quadratic relations of the frame, the coordinate pattern for the `λ`'s
    /// and proportionality of the frame metric.
    pub fn verify_theta_relations(&self) -> Result<Report> {
        let alg = &self.alg;
        let so = alg.soq3();
        let th = &self.frame.theta;
        let mut rep = Report::new();
        let mut tt: Vec<Element> = Vec::with_capacity(9);
        for c in 0..3 {
            for d in 0..3 {
                tt.push(alg.mul(&th[c], &th[d])?);
            }
        }
        for (name, p) in [("P_s", &so.p_s), ("P_t", &so.p_t)] {
            for row in 0..9 {
                let mut sum = Element::zero();
                for (col, v) in tt.iter().enumerate() {
                    sum.add_scaled(v, &p[(row, col)]);
                }
                let label = format!("{name} theta theta [{}{}] = 0", LABELS[row / 3], LABELS[row % 3]);
                rep.check(label, sum.is_zero(), || sum.to_string());
            }
        }

        let names = ["l- l0 = q l0 l-", "l+ l0 = q^-1 l0 l+", "[l+, l-] = h l0^2"];
        let lower = coordinate_pattern(alg, &self.frame.lambda)?;
        for (n, diff) in names.iter().zip(lower.iter()) {
            rep.check(format!("lambda lower: {n}"), diff.is_zero(), || diff.to_string());
        }
        let upper = coordinate_pattern(alg, &self.frame.lambda_upper(alg))?;
        let upper_ok = upper.iter().all(Element::is_zero);
        rep.info("lambda upper-index relations hold", upper_ok);

        let ghat = self.frame_metric()?;
        let mut ratio: Option<Element> = None;
        let mut consistent = true;
        for a in 0..3 {
            for b in 0..3 {
                let g = so.g(a, b);
                if g.is_zero() {
                    consistent &= ghat[a][b].is_zero();
                    continue;
                }
                let r = ghat[a][b].scale(&g.inv()?);
                match &ratio {
                    None => ratio = Some(r),
                    Some(x) => consistent &= *x == r,
                }
            }
        }
        let ratio = ratio.unwrap_or_default();
        let constant = ratio.as_scalar();
        rep.check("frame metric = const g^ab", consistent && constant.is_some(), || format!("ratio {ratio}"));
        if let Some(c) = constant {
            rep.info("frame metric constant", c);
        }
        Ok(rep)
    }

    /// `ĝ^{ab} = g₀(θ^a ⊗ θ^b)`.
    pub fn frame_metric(&self) -> Result<[[Element; 3]; 3]> {
        let alg = &self.alg;
        let th = &self.frame.theta;
        let mut out: [[Element; 3]; 3] = Default::default();
        for a in 0..3 {
            for b in 0..3 {
                let t = Tensor::from_forms(alg, &[&th[a], &th[b]])?;
                out[a][b] = metric_g0(alg, &t)?;
            }
        }
        Ok(out)
    }
}
