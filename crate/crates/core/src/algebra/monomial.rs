use std::fmt;

use crate::soq3;

/// Canonical degree-2 exterior words, `ξ⁻ξ⁰`, `ξ⁻ξ⁺`, `ξ⁰ξ⁺`.
pub const BASIS2: [[u8; 2]; 3] = [[0, 1], [0, 2], [1, 2]];
/// The single canonical degree-3 word `ξ⁻ξ⁰ξ⁺`.
pub const TOP: [u8; 3] = [0, 1, 2];

/// A canonical exterior basis word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XiWord {
    Empty,
    One(u8),
    Two(u8),
    Three,
}

impl XiWord {
    pub fn degree(self) -> usize {
        match self {
            XiWord::Empty => 0,
            XiWord::One(_) => 1,
            XiWord::Two(_) => 2,
            XiWord::Three => 3,
        }
    }

    /// The ξ indices making up the word, left to right.
    pub fn letters(self) -> &'static [u8] {
        const ONES: [[u8; 1]; 3] = [[0], [1], [2]];
        match self {
            XiWord::Empty => &[],
            XiWord::One(i) => &ONES[i as usize],
            XiWord::Two(k) => &BASIS2[k as usize],
            XiWord::Three => &TOP,
        }
    }

    pub fn charge(self) -> i32 {
        self.letters().iter().map(|&i| soq3::charge(i as usize)).sum()
    }

    /// All basis words of a given degree.
    pub fn basis(degree: usize) -> Vec<XiWord> {
        match degree {
            0 => vec![XiWord::Empty],
            1 => (0..3).map(XiWord::One).collect(),
            2 => (0..3).map(XiWord::Two).collect(),
            3 => vec![XiWord::Three],
            _ => vec![],
        }
    }
}

impl fmt::Display for XiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.letters().iter().map(|&i| format!("xi{}", soq3::LABELS[i as usize])).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `Λ^lam r^r (x⁰)^x0 (x⁺)^xp (x⁻)^xm · xi`, with `xp · xm = 0`.
///
/// Products `x⁺x⁻` are always rewritten through `r²` and `(x⁰)²`, so at most
/// one of the two ladder exponents is nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub xi: XiWord,
    pub lam: i32,
    pub r: i32,
    pub x0: i32,
    pub xp: u32,
    pub xm: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { xi: XiWord::Empty, lam: 0, r: 0, x0: 0, xp: 0, xm: 0 };

    pub fn new(lam: i32, r: i32, x0: i32, xp: u32, xm: u32, xi: XiWord) -> Self {
        debug_assert!(xp == 0 || xm == 0);
        Monomial { xi, lam, r, x0, xp, xm }
    }

    pub fn xi(word: XiWord) -> Self {
        Monomial { xi: word, ..Monomial::ONE }
    }

    /// The even part with the exterior word stripped.
    pub fn even_part(self) -> Monomial {
        Monomial { xi: XiWord::Empty, ..self }
    }

    pub fn with_xi(self, xi: XiWord) -> Monomial {
        Monomial { xi, ..self }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    pub fn total_degree(&self) -> u32 {
        self.lam.unsigned_abs() + self.r.unsigned_abs() + self.x0.unsigned_abs() + self.xp + self.xm
    }

    /// Scaling weight: `x^i`, `ξ^i`, `r` count +1, inverses −1, `Λ` 0.
    pub fn weight(&self) -> i32 {
        self.r + self.x0 + self.xp as i32 + self.xm as i32 + self.xi.degree() as i32
    }

    /// U(1) charge `#x⁺ − #x⁻ + #ξ⁺ − #ξ⁻`.
    pub fn charge(&self) -> i32 {
        self.xp as i32 - self.xm as i32 + self.xi.charge()
    }

    pub fn grading(&self) -> Grading {
        Grading { exterior: self.xi.degree(), lam: self.lam, charge: self.charge(), weight: self.weight() }
    }
}

/// The quantities every rewrite rule preserves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub exterior: usize,
    pub lam: i32,
    pub charge: i32,
    pub weight: i32,
}

fn power(out: &mut Vec<String>, name: &str, k: i64) {
    match k {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{k}")),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        power(&mut parts, "L", self.lam as i64);
        power(&mut parts, "r", self.r as i64);
        power(&mut parts, "x0", self.x0 as i64);
        power(&mut parts, "x+", self.xp as i64);
        power(&mut parts, "x-", self.xm as i64);
        if self.xi != XiWord::Empty {
            parts.push(self.xi.to_string());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// A single generator or inverse generator, as it appears in raw words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Lam(i8),
    R(i8),
    X0(i8),
    Xp,
    Xm,
    Xi(u8),
}

impl Letter {
    /// Position in the normal order `Λ ≺ r ≺ x⁰ ≺ x⁺ ≺ x⁻ ≺ ξ`.
    pub fn rank(self) -> u8 {
        match self {
            Letter::Lam(_) => 0,
            Letter::R(_) => 1,
            Letter::X0(_) => 2,
            Letter::Xp => 3,
            Letter::Xm => 4,
            Letter::Xi(_) => 5,
        }
    }

    /// Coordinate `x^i` for index `i ∈ {−, 0, +}`.
    pub fn x(i: usize) -> Letter {
        match i {
            soq3::MINUS => Letter::Xm,
            soq3::ZERO => Letter::X0(1),
            _ => Letter::Xp,
        }
    }

    /// Index of a coordinate letter.
    pub fn x_index(self) -> Option<usize> {
        match self {
            Letter::Xm => Some(soq3::MINUS),
            Letter::X0(1) => Some(soq3::ZERO),
            Letter::Xp => Some(soq3::PLUS),
            _ => None,
        }
    }

    pub fn monomial(self) -> Monomial {
        let m = Monomial::ONE;
        match self {
            Letter::Lam(e) => Monomial { lam: e as i32, ..m },
            Letter::R(e) => Monomial { r: e as i32, ..m },
            Letter::X0(e) => Monomial { x0: e as i32, ..m },
            Letter::Xp => Monomial { xp: 1, ..m },
            Letter::Xm => Monomial { xm: 1, ..m },
            Letter::Xi(i) => Monomial::xi(XiWord::One(i)),
        }
    }

    /// The degree-0 generators (and inverses) the frame must commute with.
    pub fn even_generators() -> [Letter; 8] {
        [Letter::Xm, Letter::X0(1), Letter::Xp, Letter::Lam(1), Letter::Lam(-1), Letter::R(1), Letter::R(-1), Letter::X0(-1)]
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Lam(1) => f.write_str("L"),
            Letter::Lam(e) => write!(f, "L^{e}"),
            Letter::R(1) => f.write_str("r"),
            Letter::R(e) => write!(f, "r^{e}"),
            Letter::X0(1) => f.write_str("x0"),
            Letter::X0(e) => write!(f, "x0^{e}"),
            Letter::Xp => f.write_str("x+"),
            Letter::Xm => f.write_str("x-"),
            Letter::Xi(i) => write!(f, "xi{}", soq3::LABELS[*i as usize]),
        }
    }
}

/// Spells a normal monomial as a sequence of unit letters.
pub fn letters_of(m: &Monomial) -> Vec<Letter> {
    let mut out = Vec::new();
    let sign = |e: i32| if e > 0 { 1 } else { -1 };
    out.extend(std::iter::repeat_n(Letter::Lam(sign(m.lam)), m.lam.unsigned_abs() as usize));
    out.extend(std::iter::repeat_n(Letter::R(sign(m.r)), m.r.unsigned_abs() as usize));
    out.extend(std::iter::repeat_n(Letter::X0(sign(m.x0)), m.x0.unsigned_abs() as usize));
    out.extend(std::iter::repeat_n(Letter::Xp, m.xp as usize));
    out.extend(std::iter::repeat_n(Letter::Xm, m.xm as usize));
    out.extend(m.xi.letters().iter().map(|&i| Letter::Xi(i)));
    out
}
