//! The exterior algebra on ξ⁻, ξ⁰, ξ⁺ cut out by `P_s ξξ = 0` and `P_t ξξ = 0`.

use super::monomial::{XiWord, BASIS2, TOP};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalarq::ScalarQ;
use crate::soq3::{pair, SoQ3, MINUS, PLUS, ZERO};

#[derive(Clone, Debug)]
pub struct Exterior {
    /// `ξ^i ξ^j = Σ_k pair[i][j][k] · BASIS2[k]`.
    pair: [[[ScalarQ; 3]; 3]; 3],
    /// `ξ^i ξ^j ξ^k = triple[i][j][k] · TOP`.
    triple: [[[ScalarQ; 3]; 3]; 3],
    /// Rank of the quadratic relation space.
    relation_rank: usize,
}

fn basis_slot(i: usize, j: usize) -> Option<usize> {
    BASIS2.iter().position(|b| b[0] as usize == i && b[1] as usize == j)
}

impl Exterior {
    /// Row-reduces the projector relations with the canonical words placed last,
    /// so that they come out as the free columns.
    pub fn derive(soq3: &SoQ3) -> Result<Self> {
        let mut order: Vec<usize> = (0..9).filter(|&c| basis_slot(c / 3, c % 3).is_none()).collect();
        order.extend(BASIS2.iter().map(|b| pair(b[0] as usize, b[1] as usize)));

        let rel = Mat::from_fn(18, 9, |row, col| {
            let src = if row < 9 { &soq3.p_s } else { &soq3.p_t };
            src[(row % 9, order[col])].clone()
        });
        let (red, pivots) = rel.rref();
        if pivots.len() != 6 || pivots.iter().any(|&p| p >= 6) {
            return Err(Error::RuleDerivation(format!(
                "exterior relation space has rank {} with pivots {:?}, expected 6 non-canonical pivots",
                pivots.len(),
                pivots
            )));
        }
        let zero3 = || [ScalarQ::zero(), ScalarQ::zero(), ScalarQ::zero()];
        let mut table: [[[ScalarQ; 3]; 3]; 3] = Default::default();
        for (k, b) in BASIS2.iter().enumerate() {
            table[b[0] as usize][b[1] as usize][k] = ScalarQ::one();
        }
        for (row, &p) in pivots.iter().enumerate() {
            let word = order[p];
            let mut coeffs = zero3();
            for (k, slot) in coeffs.iter_mut().enumerate() {
                *slot = -&red[(row, 6 + k)];
            }
            table[word / 3][word % 3] = coeffs;
        }

        // degree 3: the functional killing R⊗V + V⊗R
        let relations: Vec<Vec<ScalarQ>> = (0..6).map(|row| (0..9).map(|c| {
            let pos = order.iter().position(|&o| o == c).unwrap();
            red[(row, pos)].clone()
        }).collect()).collect();
        let mut rows = Vec::new();
        for rho in &relations {
            for m in 0..3 {
                let mut left = vec![ScalarQ::zero(); 27];
                let mut right = vec![ScalarQ::zero(); 27];
                for kl in 0..9 {
                    left[kl * 3 + m] = rho[kl].clone();
                    right[m * 9 + kl] = rho[kl].clone();
                }
                rows.push(left);
                rows.push(right);
            }
        }
        let big = Mat::from_fn(rows.len(), 27, |i, j| rows[i][j].clone());
        let null = big.nullspace();
        if null.len() != 1 {
            return Err(Error::RuleDerivation(format!(
                "degree-3 exterior component has dimension {}, expected 1",
                null.len()
            )));
        }
        let phi = &null[0];
        let top_idx = (TOP[0] as usize) * 9 + (TOP[1] as usize) * 3 + TOP[2] as usize;
        let norm = phi[top_idx].inv().map_err(|_| Error::RuleDerivation("canonical top word vanishes".into()))?;
        let mut triple: [[[ScalarQ; 3]; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    triple[i][j][k] = &phi[i * 9 + j * 3 + k] * &norm;
                }
            }
        }
        Ok(Exterior { pair: table, triple, relation_rank: pivots.len() })
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    /// Coefficients of `ξ^i ξ^j` on the canonical degree-2 words.
    pub fn pair(&self, i: usize, j: usize) -> &[ScalarQ; 3] {
        &self.pair[i][j]
    }

    /// Coefficient of `ξ^i ξ^j ξ^k` on the top word.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> &ScalarQ {
        &self.triple[i][j][k]
    }

    /// Product of two canonical words.
    pub fn mul_words(&self, a: XiWord, b: XiWord) -> Vec<(ScalarQ, XiWord)> {
        let letters: Vec<usize> = a.letters().iter().chain(b.letters()).map(|&i| i as usize).collect();
        self.reduce_letters(&letters)
    }

    /// Reduces an arbitrary product of ξ's to canonical words.
    pub fn reduce_letters(&self, letters: &[usize]) -> Vec<(ScalarQ, XiWord)> {
        match letters {
            [] => vec![(ScalarQ::one(), XiWord::Empty)],
            [i] => vec![(ScalarQ::one(), XiWord::One(*i as u8))],
            [i, j] => self.pair[*i][*j]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.clone(), XiWord::Two(k as u8)))
                .collect(),
            [i, j, k] => {
                let c = &self.triple[*i][*j][*k];
                if c.is_zero() {
                    vec![]
                } else {
                    vec![(c.clone(), XiWord::Three)]
                }
            }
            _ => vec![],
        }
    }

    /// `ε^{abc}` with `θ^aθ^bθ^c = ε^{abc} θ⁺θ⁰θ⁻`, normalized by `ε^{+0−} = 1`.
    pub fn epsilon(&self) -> [[[ScalarQ; 3]; 3]; 3] {
        let norm = self.triple[PLUS][ZERO][MINUS].inv().expect("top product is nonzero");
        let mut eps: [[[ScalarQ; 3]; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    eps[i][j][k] = &self.triple[i][j][k] * &norm;
                }
            }
        }
        eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn ext() -> Exterior {
        Exterior::derive(&SoQ3::new().unwrap()).unwrap()
    }

    #[test]
    fn degree_two_has_three_words() {
        let e = ext();
        assert_eq!(e.relation_rank(), 6);
        assert_eq!(9 - e.relation_rank(), 3);
    }

    #[test]
    fn squares_vanish() {
        let e = ext();
        for i in [MINUS, PLUS] {
            assert!(e.pair(i, i).iter().all(ScalarQ::is_zero), "(xi{i})^2 != 0");
        }
        // (ξ⁰)² is a multiple of ξ⁻ξ⁺ that vanishes classically
        let sq = e.pair(ZERO, ZERO);
        assert!(sq[0].is_zero() && sq[2].is_zero() && !sq[1].is_zero());
        assert!(sq[1].limit_q_to_1().unwrap().is_zero());
    }

    #[test]
    fn classical_limit_is_antisymmetric() {
        let e = ext();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let a = e.pair(i, j)[k].limit_q_to_1().unwrap();
                    let b = e.pair(j, i)[k].limit_q_to_1().unwrap();
                    assert_eq!(a, -b);
                }
            }
        }
        let eps = e.epsilon();
        assert!(eps[PLUS][PLUS][ZERO].is_zero());
        assert_eq!(eps[PLUS][ZERO][MINUS], ScalarQ::one());
        let lim = |a: usize, b: usize, c: usize| eps[a][b][c].limit_q_to_1().unwrap();
        assert_eq!(lim(ZERO, PLUS, MINUS), -lim(PLUS, ZERO, MINUS));
        assert_eq!(lim(MINUS, ZERO, PLUS), -lim(PLUS, ZERO, MINUS));
        assert_eq!(lim(MINUS, MINUS, PLUS), BigRational::zero());
    }
}
