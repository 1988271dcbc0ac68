//! The action of `SL(2, Z)` on coefficient triples through `f'(v) = f(L v)`.
//!
//! The map `L -> T_L` reverses products: `T_{L1 L2} = T_{L2} T_{L1}`. Words
//! are therefore read as operator products, rightmost letter applied first:
//! the word `XY` sends `f` to `X(Y(f))`, its 3x3 matrix is `T_X T_Y`, and its
//! 2x2 matrix is `L_Y L_X`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::form::{add, mul, neg, sub, Form};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    Abar,
    Bbar,
    R,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::A,
        Generator::B,
        Generator::Abar,
        Generator::Bbar,
        Generator::R,
    ];

    pub fn inverse(self) -> Generator {
        match self {
            Generator::A => Generator::Abar,
            Generator::Abar => Generator::A,
            Generator::B => Generator::Bbar,
            Generator::Bbar => Generator::B,
            Generator::R => Generator::R,
        }
    }

    /// Image under conjugation by `R`: `A R = R Bbar`, `B R = R Abar`.
    pub fn r_conjugate(self) -> Generator {
        match self {
            Generator::A => Generator::Bbar,
            Generator::Bbar => Generator::A,
            Generator::B => Generator::Abar,
            Generator::Abar => Generator::B,
            Generator::R => Generator::R,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Generator::A => 'A',
            Generator::B => 'B',
            Generator::Abar => 'a',
            Generator::Bbar => 'b',
            Generator::R => 'R',
        }
    }

    pub fn from_letter(c: char) -> Option<Generator> {
        Some(match c {
            'A' => Generator::A,
            'B' => Generator::B,
            'a' => Generator::Abar,
            'b' => Generator::Bbar,
            'R' => Generator::R,
            _ => return None,
        })
    }

    pub fn sl2(self) -> Sl2Matrix {
        let (a, b, c, d) = match self {
            Generator::A => (1, 1, 0, 1),
            Generator::B => (1, 0, 1, 1),
            Generator::Abar => (1, -1, 0, 1),
            Generator::Bbar => (1, 0, -1, 1),
            Generator::R => (0, 1, -1, 0),
        };
        Sl2Matrix { a, b, c, d }
    }

    pub fn apply(self, f: Form) -> Result<Form> {
        apply_generator(f, self)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

pub fn apply_generator(f: Form, g: Generator) -> Result<Form> {
    let Form { m, n, k } = f;
    Ok(match g {
        Generator::A => Form::new(m, add(add(m, n)?, k)?, add(k, mul(2, m)?)?),
        Generator::B => Form::new(add(add(m, n)?, k)?, n, add(k, mul(2, n)?)?),
        Generator::Abar => Form::new(m, sub(add(m, n)?, k)?, sub(k, mul(2, m)?)?),
        Generator::Bbar => Form::new(sub(add(m, n)?, k)?, n, sub(k, mul(2, n)?)?),
        Generator::R => Form::new(n, m, neg(k)?),
    })
}

/// A finite word over the generators. Letter `0` is the last one applied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord(Vec<Generator>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<Generator>) -> Self {
        GeneratorWord(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn count(&self, g: Generator) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    /// Only `A` and `B` letters (the empty word included).
    pub fn is_positive(&self) -> bool {
        self.0
            .iter()
            .all(|g| matches!(g, Generator::A | Generator::B))
    }

    /// Only `Abar` and `Bbar` letters (the empty word included).
    pub fn is_negative(&self) -> bool {
        self.0
            .iter()
            .all(|g| matches!(g, Generator::Abar | Generator::Bbar))
    }

    /// Operator product `self * other`: `other` acts first.
    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        GeneratorWord(letters)
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    pub fn reversed(&self) -> GeneratorWord {
        GeneratorWord(self.0.iter().rev().copied().collect())
    }

    /// Cancels adjacent inverse pairs and `RR`.
    pub fn free_reduce(&self) -> GeneratorWord {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        GeneratorWord(out)
    }

    pub fn apply(&self, f: Form) -> Result<Form> {
        apply_word(f, self)
    }

    pub fn tmatrix(&self) -> Result<TMatrix> {
        self.0
            .iter()
            .try_fold(TMatrix::IDENTITY, |acc, g| acc.mul(&lift_sl2(g.sl2())?))
    }

    /// The 2x2 matrix `L_{s_k} ... L_{s_1}` whose lift is [`Self::tmatrix`].
    pub fn sl2(&self) -> Result<Sl2Matrix> {
        self.0
            .iter()
            .try_fold(Sl2Matrix::IDENTITY, |acc, g| g.sl2().mul(&acc))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.letter())?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(Generator::from_letter)
            .collect::<Option<Vec<_>>>()
            .map(GeneratorWord)
            .ok_or_else(|| Error::InvalidWord(s.to_string()))
    }
}

impl From<Vec<Generator>> for GeneratorWord {
    fn from(letters: Vec<Generator>) -> Self {
        GeneratorWord(letters)
    }
}

pub fn apply_word(f: Form, w: &GeneratorWord) -> Result<Form> {
    w.0.iter()
        .rev()
        .try_fold(f, |acc, &g| apply_generator(acc, g))
}

/// `(a b / c d)` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sl2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = sub(mul(a, d)?, mul(b, c)?)?;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub fn mul(&self, o: &Sl2Matrix) -> Result<Sl2Matrix> {
        Ok(Sl2Matrix {
            a: add(mul(self.a, o.a)?, mul(self.b, o.c)?)?,
            b: add(mul(self.a, o.b)?, mul(self.b, o.d)?)?,
            c: add(mul(self.c, o.a)?, mul(self.d, o.c)?)?,
            d: add(mul(self.c, o.b)?, mul(self.d, o.d)?)?,
        })
    }

    pub fn inverse(&self) -> Sl2Matrix {
        Sl2Matrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn negated(&self) -> Sl2Matrix {
        Sl2Matrix {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// Equality in `PSL(2, Z)`.
    pub fn eq_up_to_sign(&self, o: &Sl2Matrix) -> bool {
        self == o || *self == o.negated()
    }

    fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} / {} {})", self.a, self.b, self.c, self.d)
    }
}

/// 3x3 integer matrix acting on `(m, n, k)` columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TMatrix(pub [[i64; 3]; 3]);

impl TMatrix {
    pub const IDENTITY: TMatrix = TMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn rows(&self) -> [[i64; 3]; 3] {
        self.0
    }

    pub fn mul(&self, o: &TMatrix) -> Result<TMatrix> {
        let mut out = [[0i64; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0i64;
                for l in 0..3 {
                    acc = add(acc, mul(self.0[i][l], o.0[l][j])?)?;
                }
                *cell = acc;
            }
        }
        Ok(TMatrix(out))
    }

    pub fn apply(&self, f: Form) -> Result<Form> {
        let v = [f.m, f.n, f.k];
        let row = |r: [i64; 3]| -> Result<i64> {
            add(add(mul(r[0], v[0])?, mul(r[1], v[1])?)?, mul(r[2], v[2])?)
        };
        Ok(Form::new(row(self.0[0])?, row(self.0[1])?, row(self.0[2])?))
    }

    pub fn determinant(&self) -> Result<i64> {
        let m = &self.0;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| -> Result<i64> {
            sub(mul(m[r1][c1], m[r2][c2])?, mul(m[r1][c2], m[r2][c1])?)
        };
        let t0 = mul(m[0][0], minor(1, 2, 1, 2)?)?;
        let t1 = mul(m[0][1], minor(1, 2, 0, 2)?)?;
        let t2 = mul(m[0][2], minor(1, 2, 0, 1)?)?;
        add(sub(t0, t1)?, t2)
    }
}

/// Coefficients of `v -> f(L v)` as a matrix on `(m, n, k)`.
pub fn lift_sl2(l: Sl2Matrix) -> Result<TMatrix> {
    let Sl2Matrix { a, b, c, d } = Sl2Matrix::new(l.a, l.b, l.c, l.d)?;
    Ok(TMatrix([
        [mul(a, a)?, mul(c, c)?, mul(a, c)?],
        [mul(b, b)?, mul(d, d)?, mul(b, d)?],
        [
            mul(2, mul(a, b)?)?,
            mul(2, mul(c, d)?)?,
            add(mul(a, d)?, mul(b, c)?)?,
        ],
    ]))
}

/// A word split as `V S U` with `V, U` in `{1, R}` and `S` positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VsuForm {
    pub v: bool,
    pub s: GeneratorWord,
    pub u: bool,
}

impl VsuForm {
    pub fn to_word(&self) -> GeneratorWord {
        let mut letters = Vec::with_capacity(self.s.len() + 2);
        if self.v {
            letters.push(Generator::R);
        }
        letters.extend_from_slice(self.s.letters());
        if self.u {
            letters.push(Generator::R);
        }
        GeneratorWord(letters)
    }
}

impl fmt::Display for VsuForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]{}",
            if self.v { "R" } else { "" },
            self.s,
            if self.u { "R" } else { "" }
        )
    }
}

/// Every nonnegative matrix of `SL(2, Z)` is a unique product of the `A` and
/// `B` matrices; peel them off from the left.
fn positive_word_of_matrix(mut l: Sl2Matrix) -> GeneratorWord {
    debug_assert!(l.entries().iter().all(|&x| x >= 0));
    let mut peeled = Vec::new();
    while l != Sl2Matrix::IDENTITY {
        if l.a >= l.c && l.b >= l.d {
            l = Sl2Matrix {
                a: l.a - l.c,
                b: l.b - l.d,
                c: l.c,
                d: l.d,
            };
            peeled.push(Generator::A);
        } else {
            l = Sl2Matrix {
                a: l.a,
                b: l.b,
                c: l.c - l.a,
                d: l.d - l.b,
            };
            peeled.push(Generator::B);
        }
    }
    // peeled[0] is the leftmost 2x2 factor, which is the first letter applied
    peeled.reverse();
    GeneratorWord(peeled)
}

/// The `V S U` normal form, computed on the 2x2 matrix of the word: for the
/// first `(V, U)` that makes `L_U^-1 L_W L_V^-1` sign-definite, `S` is that
/// matrix read as a positive word.
pub fn vsu_normal_form(w: &GeneratorWord) -> Result<VsuForm> {
    let lw = w.sl2()?;
    let r_inv = Generator::R.sl2().inverse();
    for (v, u) in [(false, false), (true, false), (false, true), (true, true)] {
        let mut ls = lw;
        if u {
            ls = r_inv.mul(&ls)?;
        }
        if v {
            ls = ls.mul(&r_inv)?;
        }
        let e = ls.entries();
        let ls = if e.iter().all(|&x| x >= 0) {
            ls
        } else if e.iter().all(|&x| x <= 0) {
            ls.negated()
        } else {
            continue;
        };
        return Ok(VsuForm {
            v,
            s: positive_word_of_matrix(ls),
            u,
        });
    }
    unreachable!("every element of PSL(2, Z) has a V S U decomposition")
}

/// `g^j f` for `j = 0..len`; for `g = A` these share `S + D = 2m`, for `g = B`
/// they share `S - D = 2n`.
pub fn necklace(f: Form, g: Generator, len: usize) -> Result<Vec<Form>> {
    let mut out = Vec::with_capacity(len);
    let mut cur = f;
    for _ in 0..len {
        out.push(cur);
        cur = apply_generator(cur, g)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> GeneratorWord {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            apply_generator(Form::new(1, -8, 0), Generator::A),
            Ok(Form::new(1, -7, 2))
        );
        assert_eq!(
            apply_generator(Form::new(2, 4, 1), Generator::R),
            Ok(Form::new(4, 2, -1))
        );
        let f = Form::new(3, -5, 7);
        assert_eq!(apply_word(f, &w("Aa")), Ok(f));
        assert_eq!(apply_word(f, &w("aA")), Ok(f));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(
            lift_sl2(Generator::A.sl2()).unwrap().rows(),
            [[1, 0, 0], [1, 1, 1], [2, 0, 1]]
        );
        assert_eq!(
            lift_sl2(Generator::B.sl2()).unwrap().rows(),
            [[1, 1, 1], [0, 1, 0], [0, 2, 1]]
        );
        assert_eq!(lift_sl2(Sl2Matrix::IDENTITY), Ok(TMatrix::IDENTITY));
        assert_eq!(
            lift_sl2(Sl2Matrix {
                a: 2,
                b: 1,
                c: 3,
                d: 1
            }),
            Err(Error::NotUnimodular(-1))
        );
        assert_eq!(
            lift_sl2(Sl2Matrix {
                a: 1,
                b: 1,
                c: 1,
                d: 1
            }),
            Err(Error::NotUnimodular(0))
        );
    }

    #[test]
    fn word_examples() {
        let f = Form::new(1, -8, 0);
        assert_eq!(apply_word(f, &w("AABAA")), Ok(f));
        assert_eq!(apply_word(f, &GeneratorWord::empty()), Ok(f));
        let g = Form::new(4, -9, 11);
        assert_eq!(apply_word(g, &w("bAb")), apply_word(g, &w("R")));
    }

    #[test]
    fn word_syntax() {
        assert_eq!(w("AABaa").to_string(), "AABaa");
        assert_eq!(w("AABaa").letters()[3], Generator::Abar);
        assert!(matches!(
            "AxB".parse::<GeneratorWord>(),
            Err(Error::InvalidWord(_))
        ));
        assert_eq!(w("ABba").free_reduce(), GeneratorWord::empty());
        assert_eq!(w("ARRb").free_reduce(), w("Ab"));
        assert_eq!(w("AB").inverse(), w("ba"));
    }

    #[test]
    fn relations_as_tmatrices() {
        let r = w("R").tmatrix().unwrap();
        assert_eq!(w("RR").tmatrix().unwrap(), TMatrix::IDENTITY);
        for rel in ["bAb", "AbA", "aBa", "BaB"] {
            assert_eq!(w(rel).tmatrix().unwrap(), r, "{rel}");
        }
        assert_eq!(w("AR").tmatrix(), w("Rb").tmatrix());
        assert_eq!(w("BR").tmatrix(), w("Ra").tmatrix());
        for g in Generator::ALL {
            assert_eq!(lift_sl2(g.sl2()).unwrap().determinant(), Ok(1));
            let rconj = GeneratorWord(vec![Generator::R, g, Generator::R]);
            assert_eq!(
                rconj.tmatrix().unwrap(),
                GeneratorWord(vec![g.r_conjugate()]).tmatrix().unwrap()
            );
        }
    }

    #[test]
    fn vsu_examples() {
        let r = VsuForm {
            v: true,
            s: GeneratorWord::empty(),
            u: false,
        };
        assert_eq!(vsu_normal_form(&w("R")).unwrap(), r);
        assert_eq!(vsu_normal_form(&w("aBa")).unwrap(), r);
        assert_eq!(
            vsu_normal_form(&w("aAB")).unwrap(),
            VsuForm {
                v: false,
                s: w("B"),
                u: false
            }
        );
        assert_eq!(
            vsu_normal_form(&w("AAB")).unwrap(),
            VsuForm {
                v: false,
                s: w("AAB"),
                u: false
            }
        );
        assert_eq!(
            vsu_normal_form(&GeneratorWord::empty()).unwrap().to_word(),
            GeneratorWord::empty()
        );
    }

    #[test]
    fn necklace_planes() {
        let f = Form::new(3, -7, 2);
        for p in necklace(f, Generator::A, 6).unwrap() {
            let q = p.to_kds().unwrap();
            assert_eq!(q.s + q.d, 6);
        }
        for p in necklace(f, Generator::B, 6).unwrap() {
            let q = p.to_kds().unwrap();
            assert_eq!(q.s - q.d, -14);
        }
    }

    fn coeff() -> impl Strategy<Value = i64> {
        -(1i64 << 20)..(1i64 << 20)
    }

    fn form() -> impl Strategy<Value = Form> {
        (coeff(), coeff(), coeff()).prop_map(|(m, n, k)| Form::new(m, n, k))
    }

    fn generator() -> impl Strategy<Value = Generator> {
        prop::sample::select(Generator::ALL.to_vec())
    }

    fn word(max: usize) -> impl Strategy<Value = GeneratorWord> {
        prop::collection::vec(generator(), 0..=max).prop_map(GeneratorWord)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn closed_forms_match_lifted_matrices(f in form(), g in generator()) {
            let by_matrix = lift_sl2(g.sl2()).unwrap().apply(f).unwrap();
            prop_assert_eq!(apply_generator(f, g).unwrap(), by_matrix);
            prop_assert_eq!(by_matrix.discriminant().unwrap(), f.discriminant().unwrap());
        }

        #[test]
        fn necklace_invariants(f in form()) {
            let p = f.to_kds().unwrap();
            let pa = apply_generator(f, Generator::A).unwrap().to_kds().unwrap();
            let pb = apply_generator(f, Generator::B).unwrap().to_kds().unwrap();
            prop_assert_eq!(pa.s + pa.d, p.s + p.d);
            prop_assert_eq!(pb.s - pb.d, p.s - p.d);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn lift_reverses_products(w1 in word(8), w2 in word(8)) {
            let l1 = w1.sl2().unwrap();
            let l2 = w2.sl2().unwrap();
            let lhs = lift_sl2(l1.mul(&l2).unwrap()).unwrap();
            let rhs = lift_sl2(l2).unwrap().mul(&lift_sl2(l1).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(lift_sl2(w1.sl2().unwrap()).unwrap(), w1.tmatrix().unwrap());
            prop_assert_eq!(lift_sl2(l1.negated()).unwrap(), lift_sl2(l1).unwrap());
        }

        #[test]
        fn word_action_matches_tmatrix(f in form(), wd in word(8)) {
            let by_letters = apply_word(f, &wd).unwrap();
            prop_assert_eq!(by_letters, wd.tmatrix().unwrap().apply(f).unwrap());
            prop_assert_eq!(by_letters.discriminant().unwrap(), f.discriminant().unwrap());
            prop_assert_eq!(apply_word(by_letters, &wd.inverse()).unwrap(), f);
        }

        #[test]
        fn vsu_reproduces_the_word(wd in word(12)) {
            let nf = vsu_normal_form(&wd).unwrap();
            prop_assert!(nf.s.is_positive());
            prop_assert_eq!(nf.to_word().tmatrix().unwrap(), wd.tmatrix().unwrap());
            prop_assert!(nf.to_word().sl2().unwrap().eq_up_to_sign(&wd.sl2().unwrap()));
        }

        #[test]
        fn vsu_is_identity_on_positive_words(
            letters in prop::collection::vec(prop::sample::select(vec![Generator::A, Generator::B]), 0..12)
        ) {
            let wd = GeneratorWord(letters);
            prop_assert_eq!(vsu_normal_form(&wd).unwrap(), VsuForm { v: false, s: wd.clone(), u: false });
        }
    }
}
