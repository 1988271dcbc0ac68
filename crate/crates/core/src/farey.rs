//! Rationals on the circle at infinity, organised by generation.
//!
//! `A: x -> x + 1` and `B: x -> x / (x + 1)` act on nonnegative fractions;
//! every positive rational is `w(1/1)` for exactly one positive word `w`,
//! and its generation is `|w| + 1`. The endpoints `0/1` and `1/0` form
//! generation zero.

use std::fmt;
use std::str::FromStr;

use num_integer::{gcd, Integer};

use crate::action::{Generator, GeneratorWord};
use crate::error::{Error, Result};
use crate::form::{add, exact_sqrt, mul, sub};

/// A nonnegative fraction `p/q` in lowest terms, `1/0` included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: i64,
    q: i64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { p: 0, q: 1 };
    pub const ONE: Fraction = Fraction { p: 1, q: 1 };
    pub const INFINITY: Fraction = Fraction { p: 1, q: 0 };

    /// Reduces to lowest terms.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 0 || q < 0 || (p == 0 && q == 0) {
            return Err(Error::InvalidFraction(format!("{p}/{q}")));
        }
        let g = gcd(p, q);
        Ok(Fraction { p: p / g, q: q / g })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_endpoint(&self) -> bool {
        self.p == 0 || self.q == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// `0` for `0/1` and `1/0`, otherwise one more than the word length.
    pub fn generation(&self) -> usize {
        match word_of_rational(*self) {
            Ok(w) => w.len() + 1,
            Err(_) => 0,
        }
    }

    fn mediant(&self, o: &Fraction) -> Result<Fraction> {
        Ok(Fraction {
            p: add(self.p, o.p)?,
            q: add(self.q, o.q)?,
        })
    }

    /// `p1 q2 - p2 q1`.
    fn cross(&self, o: &Fraction) -> Result<i64> {
        sub(mul(self.p, o.q)?, mul(o.p, self.q)?)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = parse_pq(s)?;
        Fraction::new(p, q)
    }
}

fn parse_pq(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidFraction(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => Ok((
            p.trim().parse().map_err(|_| bad())?,
            q.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok((t.parse().map_err(|_| bad())?, 1)),
    }
}

/// A point of the left semicircle is carried to the right one by `x -> -1/x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedFraction {
    pub fraction: Fraction,
    /// Set when the original value was negative and `fraction = -1/x`.
    pub mirrored: bool,
}

impl FromStr for SignedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = parse_pq(s)?;
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        if p < 0 {
            Ok(SignedFraction {
                fraction: Fraction::new(q, -p)?,
                mirrored: true,
            })
        } else {
            Ok(SignedFraction {
                fraction: Fraction::new(p, q)?,
                mirrored: false,
            })
        }
    }
}

impl fmt::Display for SignedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirrored {
            write!(f, "-{}/{}", self.fraction.q, self.fraction.p)
        } else {
            write!(f, "{}", self.fraction)
        }
    }
}

/// Homographic action of a positive word on a projective fraction.
pub fn apply_word_to_fraction(w: &GeneratorWord, x: Fraction) -> Result<Fraction> {
    if !w.is_positive() {
        return Err(Error::NotPositiveWord(w.to_string()));
    }
    let (mut p, mut q) = (x.p, x.q);
    for g in w.letters().iter().rev() {
        match g {
            Generator::A => p = add(p, q)?,
            _ => q = add(p, q)?,
        }
    }
    // unimodular maps keep the pair coprime
    Ok(Fraction { p, q })
}

pub fn rational_of_word(w: &GeneratorWord) -> Result<Fraction> {
    apply_word_to_fraction(w, Fraction::ONE)
}

pub fn word_of_rational(x: Fraction) -> Result<GeneratorWord> {
    if x.is_endpoint() {
        return Err(Error::ZeroGeneration(x.to_string()));
    }
    let (mut p, mut q) = (x.p, x.q);
    let mut letters = Vec::new();
    // peel the outermost (leftmost) letter first
    while p != q {
        if p > q {
            letters.push(Generator::A);
            p -= q;
        } else {
            letters.push(Generator::B);
            q -= p;
        }
    }
    Ok(GeneratorWord::from_letters(letters))
}

/// The generation-zero neighbours `(w(0/1), w(1/0))` bracketing `w(1/1)`.
pub fn farey_interval(w: &GeneratorWord) -> Result<(Fraction, Fraction)> {
    Ok((
        apply_word_to_fraction(w, Fraction::ZERO)?,
        apply_word_to_fraction(w, Fraction::INFINITY)?,
    ))
}

/// Mediant of two Farey neighbours.
pub fn farey_son(father: Fraction, nearest_ancestor: Fraction) -> Result<Fraction> {
    if father.cross(&nearest_ancestor)?.abs() != 1 {
        return Err(Error::NotAdjacent(
            father.to_string(),
            nearest_ancestor.to_string(),
        ));
    }
    father.mediant(&nearest_ancestor)
}

/// The sons `(wA(1), wB(1))` of `w(1)` computed by the mediant rule.
pub fn farey_sons(w: &GeneratorWord) -> Result<(Fraction, Fraction)> {
    let father = rational_of_word(w)?;
    let (left, right) = farey_interval(w)?;
    Ok((farey_son(father, right)?, farey_son(father, left)?))
}

/// An integer point `(K, D, S)` on the cone `K^2 + D^2 = S^2` with `S > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PythagoreanTriple {
    pub k: i64,
    pub d: i64,
    pub s: i64,
}

impl PythagoreanTriple {
    pub fn new(k: i64, d: i64, s: i64) -> Result<Self> {
        let lhs = add(mul(k, k)?, mul(d, d)?)?;
        if s <= 0 || lhs != mul(s, s)? {
            return Err(Error::MalformedTriple(k, d, s));
        }
        Ok(PythagoreanTriple { k, d, s })
    }

    pub fn content(&self) -> i64 {
        self.k.gcd(&self.d).gcd(&self.s)
    }

    pub fn is_simple(&self) -> bool {
        self.content() == 1
    }

    pub fn is_good(&self) -> bool {
        (self.d - self.s) % 2 == 0
    }

    /// Divides out the common content; the result need not be a good point.
    pub fn simple(&self) -> PythagoreanTriple {
        let g = self.content();
        PythagoreanTriple {
            k: self.k / g,
            d: self.d / g,
            s: self.s / g,
        }
    }

    /// Point on the unit circle `(K/S, D/S)`.
    pub fn circle_point(&self) -> (f64, f64) {
        (self.k as f64 / self.s as f64, self.d as f64 / self.s as f64)
    }
}

impl fmt::Display for PythagoreanTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.k, self.d, self.s)
    }
}

/// `(2pq, p^2 - q^2, p^2 + q^2)`, not reduced.
pub fn pythagorean_of_rational(x: Fraction) -> Result<PythagoreanTriple> {
    let (p, q) = (x.p, x.q);
    let pp = mul(p, p)?;
    let qq = mul(q, q)?;
    Ok(PythagoreanTriple {
        k: mul(2, mul(p, q)?)?,
        d: sub(pp, qq)?,
        s: add(pp, qq)?,
    })
}

/// Inverse of [`pythagorean_of_rational`] on simple triples with `K >= 0`.
///
/// When `p` and `q` are both odd the simple triple is half the image, so
/// `S + D = p^2` is odd; otherwise `S + D = 2 p^2`.
pub fn rational_of_pythagorean(t: PythagoreanTriple) -> Result<Fraction> {
    let malformed = || Error::MalformedTriple(t.k, t.d, t.s);
    let t = PythagoreanTriple::new(t.k, t.d, t.s)?;
    if t.k < 0 || !t.is_simple() {
        return Err(malformed());
    }
    let plus = add(t.s, t.d)?;
    let minus = sub(t.s, t.d)?;
    let (pp, qq) = if plus % 2 == 0 {
        (plus / 2, minus / 2)
    } else {
        (plus, minus)
    };
    let p = exact_sqrt(pp).ok_or_else(malformed)?;
    let q = exact_sqrt(qq).ok_or_else(malformed)?;
    Fraction::new(p, q).map_err(|_| malformed())
}
