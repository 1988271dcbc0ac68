//! Integer binary quadratic forms `m x^2 + n y^2 + k xy` in both coefficient
//! systems: `(m, n, k)` and the rotated coordinates `K = k`, `D = m - n`,
//! `S = m + n`, in which the discriminant reads `K^2 + D^2 - S^2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn neg(a: i64) -> Result<i64> {
    a.checked_neg().ok_or(Error::Overflow)
}

/// Exact integer square root of a non-negative value.
pub fn isqrt(value: i64) -> Option<i64> {
    // u64::isqrt is exact, no floating point involved
    (value >= 0).then(|| (value as u64).isqrt() as i64)
}

/// Returns `Some(root)` when `value` is a perfect square.
pub fn exact_sqrt(value: i64) -> Option<i64> {
    isqrt(value).filter(|r| r * r == value)
}

/// A form `m x^2 + n y^2 + k xy`. Serialized as the array `[m, n, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Form {
    pub m: i64,
    pub n: i64,
    pub k: i64,
}

impl From<[i64; 3]> for Form {
    fn from([m, n, k]: [i64; 3]) -> Self {
        Form { m, n, k }
    }
}

impl From<Form> for [i64; 3] {
    fn from(f: Form) -> Self {
        [f.m, f.n, f.k]
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.n, self.k)
    }
}

impl Form {
    pub const ZERO: Form = Form { m: 0, n: 0, k: 0 };

    pub const fn new(m: i64, n: i64, k: i64) -> Self {
        Form { m, n, k }
    }

    /// `k^2 - 4mn`, failing on overflow of either intermediate.
    pub fn discriminant(&self) -> Result<i64> {
        let kk = mul(self.k, self.k)?;
        let mn4 = mul(mul(self.m, self.n)?, 4)?;
        sub(kk, mn4)
    }

    pub fn to_kds(&self) -> Result<KdsPoint> {
        Ok(KdsPoint {
            k: self.k,
            d: sub(self.m, self.n)?,
            s: add(self.m, self.n)?,
        })
    }

    pub fn apply_involution(&self, kind: Involution) -> Result<Form> {
        let Form { m, n, k } = *self;
        Ok(match kind {
            Involution::Conjugate => Form::new(m, n, neg(k)?),
            Involution::Adjoint => Form::new(neg(n)?, neg(m)?, k),
            Involution::Antipodal => Form::new(neg(n)?, neg(m)?, neg(k)?),
            Involution::Complementary => Form::new(n, m, neg(k)?),
            Involution::Opposite => Form::new(neg(m)?, neg(n)?, neg(k)?),
        })
    }

    /// Sort key for choosing class representatives: lexicographic on `(k, m, n)`.
    pub fn kmn_key(&self) -> (i64, i64, i64) {
        (self.k, self.m, self.n)
    }

    pub fn is_zero(&self) -> bool {
        *self == Form::ZERO
    }
}

/// A point `(K, D, S)` of coefficient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct KdsPoint {
    pub k: i64,
    pub d: i64,
    pub s: i64,
}

impl From<[i64; 3]> for KdsPoint {
    fn from([k, d, s]: [i64; 3]) -> Self {
        KdsPoint { k, d, s }
    }
}

impl From<KdsPoint> for [i64; 3] {
    fn from(p: KdsPoint) -> Self {
        [p.k, p.d, p.s]
    }
}

impl fmt::Display for KdsPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={}, D={}, S={})", self.k, self.d, self.s)
    }
}

impl KdsPoint {
    pub const fn new(k: i64, d: i64, s: i64) -> Self {
        KdsPoint { k, d, s }
    }

    /// A good point is the image of an integer form: `D = S (mod 2)`.
    pub fn is_good(&self) -> bool {
        (self.d - self.s) % 2 == 0
    }

    pub fn to_form(&self) -> Result<Form> {
        if !self.is_good() {
            return Err(Error::NotGoodPoint(*self));
        }
        // widen so that S + D cannot overflow before halving
        let m = (self.s as i128 + self.d as i128) / 2;
        let n = (self.s as i128 - self.d as i128) / 2;
        Ok(Form::new(
            i64::try_from(m).map_err(|_| Error::Overflow)?,
            i64::try_from(n).map_err(|_| Error::Overflow)?,
            self.k,
        ))
    }

    /// `K^2 + D^2 - S^2`.
    pub fn discriminant(&self) -> Result<i64> {
        sub(
            add(mul(self.k, self.k)?, mul(self.d, self.d)?)?,
            mul(self.s, self.s)?,
        )
    }
}

/// The involutions of coefficient space that commute with the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Involution {
    /// `(m, n, -k)`, reflection in the plane `K = 0`.
    Conjugate,
    /// `(-n, -m, k)`, reflection in the plane `S = 0`.
    Adjoint,
    /// `(-n, -m, -k)`, conjugate of the adjoint.
    Antipodal,
    /// `(n, m, -k)`, the image under `R`; always in the same class.
    Complementary,
    /// `(-m, -n, -k)`, complementary of the adjoint.
    Opposite,
}

impl Involution {
    pub const ALL: [Involution; 5] = [
        Involution::Conjugate,
        Involution::Adjoint,
        Involution::Antipodal,
        Involution::Complementary,
        Involution::Opposite,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscriminantKind {
    Elliptic,
    Parabolic,
    HyperbolicSquare { root: i64 },
    HyperbolicNonSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Discriminant {
    pub value: i64,
    pub kind: DiscriminantKind,
}

impl Discriminant {
    pub fn new(value: i64) -> Self {
        classify_discriminant(value)
    }

    /// `Some(rho)` when the discriminant is `rho^2 > 0`.
    pub fn square_root(&self) -> Option<i64> {
        match self.kind {
            DiscriminantKind::HyperbolicSquare { root } => Some(root),
            _ => None,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.value > 0
    }

    /// Every discriminant of an integer form is `0` or `1` mod 4.
    pub fn admits_forms(&self) -> bool {
        matches!(self.value.rem_euclid(4), 0 | 1)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            DiscriminantKind::Elliptic => "elliptic",
            DiscriminantKind::Parabolic => "parabolic",
            DiscriminantKind::HyperbolicSquare { .. } => "hyperbolic-square",
            DiscriminantKind::HyperbolicNonSquare => "hyperbolic-nonsquare",
        }
    }
}

pub fn classify_discriminant(value: i64) -> Discriminant {
    let kind = match value {
        v if v < 0 => DiscriminantKind::Elliptic,
        0 => DiscriminantKind::Parabolic,
        v => match exact_sqrt(v) {
            Some(root) => DiscriminantKind::HyperbolicSquare { root },
            None => DiscriminantKind::HyperbolicNonSquare,
        },
    };
    Discriminant { value, kind }
}
