//! Constant tensors of SO_q(3): braid matrix, metric, projectors.
//!
//! Indices run over `(−, 0, +)` in that order, encoded as `0, 1, 2`. A pair
//! index `(i, j)` is flattened to `3 i + j`, so arity-4 tensors are 9×9
//! matrices with `R̂^{ij}_{kl}` stored at row `(i, j)`, column `(k, l)`.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::report::Report;
use crate::scalarq::ScalarQ;

pub const MINUS: usize = 0;
pub const ZERO: usize = 1;
pub const PLUS: usize = 2;
pub const LABELS: [&str; 3] = ["-", "0", "+"];

/// Flattened pair index.
#[inline]
pub fn pair(i: usize, j: usize) -> usize {
    3 * i + j
}

/// The index `i'` with `g_{i i'} ≠ 0`.
#[inline]
pub fn conj(i: usize) -> usize {
    2 - i
}

/// U(1) charge of an index: −1, 0, +1.
#[inline]
pub fn charge(i: usize) -> i32 {
    i as i32 - 1
}

/// 2·ρ_i for SO(3): (1, 0, −1).
fn two_rho(i: usize) -> i32 {
    1 - i as i32
}

/// Covariant metric `g_{ij} = g^{ij}`, read off `r² = s x⁺x⁻ + (x⁰)² + s⁻¹ x⁻x⁺`.
pub fn build_metric() -> Mat {
    let mut g = Mat::zeros(3, 3);
    g[(PLUS, MINUS)] = ScalarQ::s();
    g[(ZERO, ZERO)] = ScalarQ::one();
    g[(MINUS, PLUS)] = ScalarQ::s_pow(-1);
    g
}

/// The FRT R-matrix of SO_q(3) composed with the flip, unvalidated.
fn frt_rhat() -> Mat {
    let q = ScalarQ::q();
    let qi = ScalarQ::q_pow(-1);
    let lam = &q - &qi;
    let mut r = Mat::zeros(9, 9);
    // e_ab ⊗ e_cd sits at row (a, c), column (b, d)
    let mut put = |a: usize, b: usize, c: usize, d: usize, v: &ScalarQ| {
        let cell = &mut r[(pair(a, c), pair(b, d))];
        *cell = &*cell + v;
    };
    for i in 0..3 {
        for j in 0..3 {
            let diag = if i == j && i != conj(i) {
                q.clone()
            } else if i == j {
                ScalarQ::one()
            } else if j == conj(i) {
                qi.clone()
            } else {
                ScalarQ::one()
            };
            put(i, i, j, j, &diag);
        }
    }
    for i in 0..3 {
        for j in 0..i {
            put(i, j, j, i, &lam);
            let w = &lam * &ScalarQ::s_pow(two_rho(i) - two_rho(j));
            put(i, j, conj(i), conj(j), &-&w);
        }
    }
    Mat::from_fn(9, 9, |row, col| {
        let (i, j) = (row / 3, row % 3);
        r[(pair(j, i), col)].clone()
    })
}

/// The braid matrix together with its inverse, the metric and the three projectors.
#[derive(Clone, Debug)]
pub struct SoQ3 {
    pub metric: Mat,
    pub rhat: Mat,
    pub rhat_inv: Mat,
    pub p_s: Mat,
    pub p_a: Mat,
    pub p_t: Mat,
}

/// Eigenvalues of R̂ on the symmetric-traceless, antisymmetric and trace parts.
pub fn eigenvalues() -> [ScalarQ; 3] {
    [ScalarQ::q(), -ScalarQ::q_pow(-1), ScalarQ::q_pow(-2)]
}

impl SoQ3 {
    /// Builds all constants and refuses to return unless every consistency check passes.
    pub fn new() -> Result<Self> {
        let soq3 = SoQ3::build_unchecked()?;
        let report = soq3.verify_rhat_consistency();
        match report.first_failure() {
            None => Ok(soq3),
            Some(f) => Err(Error::Consistency(f)),
        }
    }

    pub fn build_unchecked() -> Result<Self> {
        let metric = build_metric();
        let rhat = frt_rhat();
        let rhat_inv = rhat.inverse()?;
        let (p_s, p_a, p_t) = projectors(&rhat)?;
        Ok(SoQ3 { metric, rhat, rhat_inv, p_s, p_a, p_t })
    }

    pub fn g(&self, i: usize, j: usize) -> &ScalarQ {
        &self.metric[(i, j)]
    }

    /// `R̂^{ij}_{kl}`.
    pub fn r(&self, i: usize, j: usize, k: usize, l: usize) -> &ScalarQ {
        &self.rhat[(pair(i, j), pair(k, l))]
    }

    /// `(R̂⁻¹)^{ij}_{kl}`.
    pub fn r_inv(&self, i: usize, j: usize, k: usize, l: usize) -> &ScalarQ {
        &self.rhat_inv[(pair(i, j), pair(k, l))]
    }

    /// `g^{mn} g_{mn}`, which comes out as `q + 1 + q⁻¹`.
    pub fn metric_trace(&self) -> ScalarQ {
        let mut acc = ScalarQ::zero();
        for (i, j, v) in self.metric.entries() {
            acc = &acc + &(v * &self.metric[(i, j)]);
        }
        acc
    }

    pub fn verify_rhat_consistency(&self) -> Report {
        let mut rep = Report::new();
        let id3 = Mat::identity(3);
        let r12 = self.rhat.kron(&id3);
        let r23 = id3.kron(&self.rhat);
        let lhs = &(&r12 * &r23) * &r12;
        let rhs = &(&r23 * &r12) * &r23;
        let braid = &lhs - &rhs;
        rep.check("braid equation", braid.is_zero(), || first_nonzero(&braid, 27));

        let id9 = Mat::identity(9);
        let inv = &self.rhat * &self.rhat_inv;
        rep.check("R R^-1 = 1", inv == id9, || first_nonzero(&(&inv - &id9), 9));

        let ps = [&self.p_s, &self.p_a, &self.p_t];
        let names = ["s", "a", "t"];
        for (x, px) in ps.iter().enumerate() {
            for (y, py) in ps.iter().enumerate() {
                let prod = *px * *py;
                let expected = if x == y { (*px).clone() } else { Mat::zeros(9, 9) };
                rep.check(format!("P_{} P_{} = delta P", names[x], names[y]), prod == expected, || {
                    first_nonzero(&(&prod - &expected), 9)
                });
            }
        }
        let sum = &(&self.p_s + &self.p_a) + &self.p_t;
        rep.check("P_s + P_a + P_t = 1", sum == id9, || first_nonzero(&(&sum - &id9), 9));
        let ev = eigenvalues();
        let recon = &(&self.p_s.scale(&ev[0]) + &self.p_a.scale(&ev[1])) + &self.p_t.scale(&ev[2]);
        let diff = &recon - &self.rhat;
        rep.check("R = q P_s - q^-1 P_a + q^-2 P_t", diff.is_zero(), || first_nonzero(&diff, 9));
        for (name, p, rank) in [("P_s", &self.p_s, 5), ("P_a", &self.p_a, 3), ("P_t", &self.p_t, 1)] {
            let tr = p.trace();
            rep.check(format!("rank {name} = {rank}"), tr == ScalarQ::int(rank), || format!("trace = {tr}"));
        }

        let norm = self.metric_trace();
        rep.check("g^mn g_mn = q + 1 + q^-1", norm == &(&ScalarQ::q() + &ScalarQ::one()) + &ScalarQ::q_pow(-1), || {
            norm.to_string()
        });
        let gg = Mat::from_fn(9, 9, |row, col| {
            let v = &self.metric[(row / 3, row % 3)] * &self.metric[(col / 3, col % 3)];
            v.checked_div(&norm).unwrap_or_default()
        });
        let diff = &self.p_t - &gg;
        rep.check("P_t = g g / (q + 1 + q^-1)", diff.is_zero(), || first_nonzero(&diff, 9));
        let mut eig_ok = true;
        for kl in 0..9 {
            let mut acc = ScalarQ::zero();
            for ij in 0..9 {
                acc = &acc + &(&self.metric[(ij / 3, ij % 3)] * &self.rhat[(ij, kl)]);
            }
            eig_ok &= acc == &ScalarQ::q_pow(-2) * &self.metric[(kl / 3, kl % 3)];
        }
        rep.check("g_ij R^ij_kl = q^-2 g_kl", eig_ok, || "eigenvector identity fails".into());

        rep.check("P_a x x = 0 spans the x-relations", self.antisymmetric_relations_match(), || {
            "row space of P_a differs from span of the three x relations".into()
        });
        rep
    }

    /// The three commutation relations of the coordinates as vectors in the
    /// basis `x^k x^l ↦ 3k + l`.
    pub fn coordinate_relations() -> Vec<Vec<ScalarQ>> {
        let mut r1 = vec![ScalarQ::zero(); 9];
        r1[pair(MINUS, ZERO)] = ScalarQ::one();
        r1[pair(ZERO, MINUS)] = -ScalarQ::q();
        let mut r2 = vec![ScalarQ::zero(); 9];
        r2[pair(PLUS, ZERO)] = ScalarQ::one();
        r2[pair(ZERO, PLUS)] = -ScalarQ::q_pow(-1);
        let mut r3 = vec![ScalarQ::zero(); 9];
        r3[pair(PLUS, MINUS)] = ScalarQ::one();
        r3[pair(MINUS, PLUS)] = -ScalarQ::one();
        r3[pair(ZERO, ZERO)] = -ScalarQ::h();
        vec![r1, r2, r3]
    }

    fn antisymmetric_relations_match(&self) -> bool {
        let rel = SoQ3::coordinate_relations();
        let listed = Mat::from_fn(3, 9, |i, j| rel[i][j].clone());
        let mut stacked = Mat::zeros(12, 9);
        for i in 0..9 {
            for j in 0..9 {
                stacked[(i, j)] = self.p_a[(i, j)].clone();
            }
        }
        for i in 0..3 {
            for j in 0..9 {
                stacked[(9 + i, j)] = listed[(i, j)].clone();
            }
        }
        self.p_a.rank() == 3 && listed.rank() == 3 && stacked.rank() == 3
    }

    /// The flip choice `S`, as a 9×9 matrix.
    pub fn flip(&self, choice: FlipChoice) -> Mat {
        match choice {
            FlipChoice::QR => self.rhat.scale(&ScalarQ::q()),
            FlipChoice::QRInverse => self.rhat_inv.scale(&ScalarQ::q_pow(-1)),
        }
    }
}

/// The two generalized flips `S = qR̂` and `S = (qR̂)⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlipChoice {
    QR,
    QRInverse,
}

impl FlipChoice {
    pub const ALL: [FlipChoice; 2] = [FlipChoice::QR, FlipChoice::QRInverse];

    pub fn tag(self) -> &'static str {
        match self {
            FlipChoice::QR => "qR",
            FlipChoice::QRInverse => "qRinv",
        }
    }

    /// The expected conformal factor `q^{±2}` in `S g S = factor · g δ`.
    pub fn conformal_factor(self) -> ScalarQ {
        match self {
            FlipChoice::QR => ScalarQ::q_pow(2),
            FlipChoice::QRInverse => ScalarQ::q_pow(-2),
        }
    }
}

/// Projectors by Lagrange interpolation of R̂ at its three eigenvalues.
pub fn projectors(rhat: &Mat) -> Result<(Mat, Mat, Mat)> {
    let ev = eigenvalues();
    let id = Mat::identity(9);
    let mut out = Vec::with_capacity(3);
    for k in 0..3 {
        let mut p = id.clone();
        let mut denom = ScalarQ::one();
        for (j, mu) in ev.iter().enumerate() {
            if j == k {
                continue;
            }
            p = &p * &(rhat - &id.scale(mu));
            denom = &denom * &(&ev[k] - mu);
        }
        if denom.is_zero() {
            return Err(Error::Consistency("eigenvalues collide".into()));
        }
        out.push(p.scale(&denom.inv()?));
    }
    let p_t = out.pop().unwrap();
    let p_a = out.pop().unwrap();
    let p_s = out.pop().unwrap();
    Ok((p_s, p_a, p_t))
}

fn index_label(idx: usize, arity: usize) -> String {
    let mut digits = Vec::with_capacity(arity);
    let mut k = idx;
    for _ in 0..arity {
        digits.push(LABELS[k % 3]);
        k /= 3;
    }
    digits.reverse();
    digits.concat()
}

fn first_nonzero(m: &Mat, dim: usize) -> String {
    let arity = if dim == 27 { 3 } else { 2 };
    m.entries()
        .next()
        .map(|(i, j, v)| format!("[{},{}] = {}", index_label(i, arity), index_label(j, arity), v))
        .unwrap_or_else(|| "zero".into())
}

/// Sparse `index → value` listing of a 3×3 or 9×9 constant tensor.
pub fn render_sparse(name: &str, m: &Mat) -> String {
    let arity = if m.rows() == 9 { 2 } else { 1 };
    let mut out = String::new();
    for (i, j, v) in m.entries() {
        out.push_str(&format!("{name}[{},{}] = {v}\n", index_label(i, arity), index_label(j, arity)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn limit(m: &Mat) -> Vec<Vec<BigRational>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.limit_q_to_1().unwrap()).collect()).collect()
    }

    #[test]
    fn metric_entries() {
        let g = build_metric();
        assert_eq!(g[(PLUS, MINUS)], ScalarQ::s());
        assert_eq!(g[(ZERO, ZERO)], ScalarQ::one());
        assert_eq!(g[(MINUS, PLUS)], ScalarQ::s_pow(-1));
        let lim = limit(&g);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if j == conj(i) { BigRational::one() } else { BigRational::zero() };
                assert_eq!(lim[i][j], expect);
            }
        }
    }

    #[test]
    fn gate_passes() {
        let soq3 = SoQ3::build_unchecked().unwrap();
        let rep = soq3.verify_rhat_consistency();
        assert!(rep.passed(), "{:?}", rep.first_failure());
    }

    #[test]
    fn a_corrupted_entry_fails_the_gate() {
        let mut soq3 = SoQ3::build_unchecked().unwrap();
        soq3.rhat[(pair(ZERO, ZERO), pair(ZERO, ZERO))] = ScalarQ::q();
        assert!(!soq3.verify_rhat_consistency().passed());
    }

    #[test]
    fn rhat_is_the_flip_at_q_one() {
        let soq3 = SoQ3::new().unwrap();
        let lim = limit(&soq3.rhat);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let expect = (i == l && j == k) as i64;
                        assert_eq!(lim[pair(i, j)][pair(k, l)], BigRational::from_integer(expect.into()));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_projector_matches_metric_outer_product() {
        let soq3 = SoQ3::new().unwrap();
        let norm = soq3.metric_trace();
        let v = soq3.g(PLUS, MINUS) * soq3.g(MINUS, PLUS);
        assert_eq!(soq3.p_t[(pair(PLUS, MINUS), pair(MINUS, PLUS))], v.checked_div(&norm).unwrap());
        assert_eq!(soq3.p_a.trace(), ScalarQ::int(3));
    }
}
