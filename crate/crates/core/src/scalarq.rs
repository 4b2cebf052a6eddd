//! Exact rational functions in the indeterminate `s`, where `s² = q`.
//!
//! Every value is kept in lowest terms with a monic denominator, so two
//! values are equal exactly when their representations are equal. All
//! identity checks in the engine reduce to `ScalarQ::is_zero`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `s` with exact rational coefficients.
///
/// `coeffs[k]` is the coefficient of `s^k`; trailing zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * s^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest power of `s` carrying a nonzero coefficient.
    fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs[k..].to_vec())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let shift = a.valuation().min(b.valuation());
        let (mut x, mut y) = (a.shift_down(a.valuation()), b.shift_down(b.valuation()));
        if x.degree() == Some(0) || y.degree() == Some(0) {
            return Poly::monomial(BigRational::one(), shift);
        }
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        let g = x.monic();
        if shift == 0 {
            g
        } else {
            &g * &Poly::monomial(BigRational::one(), shift)
        }
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * s + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sum of `|c_k| s^k`, the scale against which cancellation is judged.
    fn eval_abs_f64(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * s + c.to_f64().unwrap_or(f64::NAN).abs())
    }

    pub fn eval_rational(&self, s: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * s + c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

/// An element of the field `Q(s)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: Poly,
    den: Poly,
}

impl ScalarQ {
    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return ScalarQ::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let l = den.lead().unwrap().clone();
        if l.is_one() {
            ScalarQ { num, den }
        } else {
            let inv = l.recip();
            ScalarQ { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        ScalarQ { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        ScalarQ::int(1)
    }

    pub fn int(n: i64) -> Self {
        ScalarQ::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(c: BigRational) -> Self {
        ScalarQ { num: Poly::constant(c), den: Poly::one() }
    }

    /// The indeterminate `s = q^{1/2}`.
    pub fn s() -> Self {
        ScalarQ::s_pow(1)
    }

    pub fn q() -> Self {
        ScalarQ::s_pow(2)
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i32) -> Self {
        let mono = Poly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            ScalarQ { num: mono, den: Poly::one() }
        } else {
            ScalarQ { num: Poly::one(), den: mono }
        }
    }

    pub fn q_pow(k: i32) -> Self {
        ScalarQ::s_pow(2 * k)
    }

    /// `h = s - 1/s`.
    pub fn h() -> Self {
        &ScalarQ::s() - &ScalarQ::s_pow(-1)
    }

    /// `s + 1/s`, the q-number `[2]` in the variable `s`.
    pub fn s_plus_inv() -> Self {
        &ScalarQ::s() + &ScalarQ::s_pow(-1)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `s`.
    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &ScalarQ) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = ScalarQ::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// If the value is `c·s^k` with `c` rational, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        let single = |p: &Poly| -> Option<(BigRational, usize)> {
            let v = p.valuation();
            (p.degree()? == v).then(|| (p.coeffs[v].clone(), v))
        };
        let (cn, kn) = single(&self.num)?;
        let (cd, kd) = single(&self.den)?;
        Some((cn / cd, kn as i32 - kd as i32))
    }

    /// Square root of `s^{2k}`, taken as `s^k` (the root that tends to 1 as `s → 1`).
    pub fn sqrt_even_power(&self) -> Option<Self> {
        match self.as_monomial() {
            Some((c, k)) if c.is_one() && k % 2 == 0 => Some(ScalarQ::s_pow(k / 2)),
            _ => None,
        }
    }

    /// Floating-point value at a positive real `s`.
    pub fn eval(&self, s: f64) -> Result<f64> {
        let d = self.den.eval_f64(s);
        let magnitude = self.den.eval_abs_f64(s.abs());
        if d.abs() <= 8.0 * f64::EPSILON * magnitude {
            return Err(Error::Pole(s));
        }
        Ok(self.num.eval_f64(s) / d)
    }

    /// Value at `q = 1`, exact.
    pub fn limit_q_to_1(&self) -> Result<BigRational> {
        let one = BigRational::one();
        let d = self.den.eval_rational(&one);
        if d.is_zero() {
            return Err(Error::Pole(1.0));
        }
        Ok(self.num.eval_rational(&one) / d)
    }

    fn is_single_term(&self) -> bool {
        self.den.is_one() && self.num.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    /// True when the rendering starts with a minus sign that can be pulled out.
    pub fn is_negative_term(&self) -> bool {
        self.is_single_term() && self.num.lead().is_some_and(|c| c.is_negative())
    }
}

impl Default for ScalarQ {
    fn default() -> Self {
        ScalarQ::zero()
    }
}

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::int(n)
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return ScalarQ::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ScalarQ::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        self + &(-rhs)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() || rhs.is_zero() {
            return ScalarQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarQ { num: &self.num * &rhs.num, den: Poly::one() };
        }
        ScalarQ::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`ScalarQ::checked_div`] for fallible division.
impl Div for &ScalarQ {
    type Output = ScalarQ;
    fn div(self, rhs: &ScalarQ) -> ScalarQ {
        self.checked_div(rhs).expect("ScalarQ division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, rhs: ScalarQ) -> ScalarQ { (&self).$m(&rhs) }
        }
        impl $tr<&ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, rhs: &ScalarQ) -> ScalarQ { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

fn render_power(k: usize) -> String {
    let (qp, sp) = (k / 2, k % 2);
    let mut parts = Vec::new();
    match qp {
        0 => {}
        1 => parts.push("q".to_string()),
        n => parts.push(format!("q^{n}")),
    }
    if sp == 1 {
        parts.push("s".to_string());
    }
    parts.join(" ")
}

fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_power(k);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a} {mono}"));
        }
    }
    out
}

impl fmt::Display for ScalarQ {
    /// Reduced fraction in `s`, with even powers of `s` written as powers of `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = render_poly(&self.num);
        if self.den.is_one() {
            return f.write_str(&n);
        }
        let multi = |p: &Poly| p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1;
        let n = if multi(&self.num) { format!("({n})") } else { n };
        let d = render_poly(&self.den);
        let d = if multi(&self.den) || d.contains(' ') { format!("({d})") } else { d };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> ScalarQ {
        ScalarQ::s()
    }

    #[test]
    fn h_times_s_is_q_minus_one() {
        assert_eq!(&ScalarQ::h() * &s(), &ScalarQ::q() - &ScalarQ::one());
    }

    #[test]
    fn additive_identity() {
        assert_eq!(&ScalarQ::h() + &ScalarQ::zero(), ScalarQ::h());
    }

    #[test]
    fn factorization_cancels() {
        let q = ScalarQ::q();
        let num = &(&q * &q) - &ScalarQ::one();
        let den = &q - &ScalarQ::one();
        assert_eq!(num.checked_div(&den).unwrap(), &q + &ScalarQ::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(ScalarQ::one().checked_div(&ScalarQ::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn numeric_evaluation() {
        assert_eq!(ScalarQ::h().eval(1.0).unwrap(), 0.0);
        assert!((ScalarQ::q().eval(2f64.sqrt()).unwrap() - 2.0).abs() < 1e-12);
        let pole = (&ScalarQ::q() - &ScalarQ::one()).inv().unwrap();
        assert!(matches!(pole.eval(1.0), Err(Error::Pole(_))));
    }

    #[test]
    fn commutative_limit() {
        assert!(ScalarQ::h().limit_q_to_1().unwrap().is_zero());
        assert_eq!(ScalarQ::s_plus_inv().limit_q_to_1().unwrap(), BigRational::from_integer(2.into()));
        let pole = (&ScalarQ::q() - &ScalarQ::one()).inv().unwrap();
        assert_eq!(pole.limit_q_to_1(), Err(Error::Pole(1.0)));
    }

    #[test]
    fn canonical_form_is_unique() {
        // (s^2 - 1)/(s - 1) and (s + 1)
        let a = ScalarQ::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        let b = ScalarQ::new(Poly::from_ints(&[2, 2]), Poly::from_ints(&[2])).unwrap();
        assert_eq!(a, b);
        // denominators are monic
        let c = ScalarQ::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 3])).unwrap();
        assert_eq!(c.denominator(), &Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn rendering_uses_q_for_even_powers() {
        assert_eq!(ScalarQ::q().to_string(), "q");
        assert_eq!(ScalarQ::s_pow(3).to_string(), "q s");
        assert_eq!(ScalarQ::h().to_string(), "(q - 1)/s");
        assert_eq!((-ScalarQ::q_pow(-1)).to_string(), "-1/q");
    }

    #[test]
    fn even_power_square_roots() {
        assert_eq!(ScalarQ::q_pow(-2).sqrt_even_power(), Some(ScalarQ::q_pow(-1)));
        assert_eq!(ScalarQ::s().sqrt_even_power(), None);
        assert_eq!(ScalarQ::h().sqrt_even_power(), None);
    }
}
