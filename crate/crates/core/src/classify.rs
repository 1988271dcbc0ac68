//! Classes of forms under the action, one discriminant at a time.
//!
//! For non-square `Delta > 0` the points of `H0` split into cycles: from
//! `f = (m, n, k)` in `H0` exactly one of `A f`, `B f` is again in `H0`,
//! decided by the sign of `s = m + n + k` (`A` when `s < 0`, `B` when
//! `s > 0`; `s = 0` forces `Delta` to be a square). For `Delta = rho^2`
//! the same rule produces chains running from the segment `FAbar` to the
//! segments `FA`/`FB`, plus the class of the apex `(0, 0, rho)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::action::{apply_generator, apply_word, lift_sl2, Generator, GeneratorWord, Sl2Matrix};
use crate::error::{Error, Result};
use crate::form::{add, exact_sqrt, isqrt, sub, Discriminant, DiscriminantKind, Form, Involution};
use crate::partition::{domain_word_of_form, region_of, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryType {
    Asymmetric,
    KSymmetric,
    MPlusNSymmetric,
    Antisymmetric,
    Supersymmetric,
}

impl SymmetryType {
    pub fn as_str(self) -> &'static str {
        match self {
            SymmetryType::Asymmetric => "asymmetric",
            SymmetryType::KSymmetric => "k-symmetric",
            SymmetryType::MPlusNSymmetric => "m-plus-n-symmetric",
            SymmetryType::Antisymmetric => "antisymmetric",
            SymmetryType::Supersymmetric => "supersymmetric",
        }
    }

    /// The type from the involutions (conjugate, adjoint, antipodal) that
    /// preserve a class.
    pub fn from_invariance(conjugate: bool, adjoint: bool, antipodal: bool) -> Self {
        match (conjugate, adjoint, antipodal) {
            (false, false, false) => SymmetryType::Asymmetric,
            (true, false, false) => SymmetryType::KSymmetric,
            (false, true, false) => SymmetryType::MPlusNSymmetric,
            (false, false, true) => SymmetryType::Antisymmetric,
            _ => SymmetryType::Supersymmetric,
        }
    }
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for SymmetryType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A periodic itinerary in `H0`; `steps[i]` carries `points[i]` to
/// `points[i + 1 mod t]`, and `points[0]` is the representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub points: Vec<Form>,
    pub steps: GeneratorWord,
    pub t_a: usize,
    pub t_b: usize,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The operator `T` with `T points[0] = points[0]` (steps read right to left).
    pub fn operator_word(&self) -> GeneratorWord {
        self.steps.reversed()
    }
}

/// An itinerary in `H0` for `Delta = rho^2`: `points[0] = A start` with
/// `start = (r, 0, -rho)` on `FAbar`, `steps[i]` carries `points[i]` to
/// `points[i + 1]`, and both `A` and `B` send the last point out of `H0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    pub rho: i64,
    pub points: Vec<Form>,
    pub steps: GeneratorWord,
    pub t_a: usize,
    pub t_b: usize,
    /// `[FAbar, FBbar]` neighbours of the first point: `start` and `Bbar points[0]`.
    pub entry: [Form; 2],
    /// `[FA, FB]` neighbours of the last point: `A last` and `B last`.
    pub exit: [Form; 2],
}

impl Chain {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn operator_word(&self) -> GeneratorWord {
        self.steps.reversed()
    }

    pub fn boundary(&self) -> [Form; 4] {
        [self.entry[0], self.entry[1], self.exit[0], self.exit[1]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassPayload {
    Cycle(Cycle),
    Chain(Chain),
    /// The class of `(0, 0, rho)`.
    Apex {
        rho: i64,
    },
    /// A reduced positive definite form.
    Elliptic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitClass {
    pub discriminant: i64,
    pub representative: Form,
    pub payload: ClassPayload,
    pub symmetry: SymmetryType,
}

impl OrbitClass {
    pub fn kind_name(&self) -> &'static str {
        match self.payload {
            ClassPayload::Cycle(_) => "cycle",
            ClassPayload::Chain(_) => "chain",
            ClassPayload::Apex { .. } => "apex",
            ClassPayload::Elliptic => "elliptic",
        }
    }

    /// `(t_A, t_B)`; zero for apex and elliptic classes.
    pub fn t_ab(&self) -> (usize, usize) {
        match &self.payload {
            ClassPayload::Cycle(c) => (c.t_a, c.t_b),
            ClassPayload::Chain(c) => (c.t_a, c.t_b),
            _ => (0, 0),
        }
    }

    /// Points per domain of `GA` and `GAbar`.
    pub fn n_upper(&self) -> usize {
        self.t_ab().1
    }

    /// Points per domain of `GB` and `GBbar`.
    pub fn n_lower(&self) -> usize {
        self.t_ab().0
    }

    /// Interior points of `H0` (the cycle or chain); empty otherwise.
    pub fn h0_points(&self) -> &[Form] {
        match &self.payload {
            ClassPayload::Cycle(c) => &c.points,
            ClassPayload::Chain(c) => &c.points,
            _ => &[],
        }
    }

    /// Itinerary letters in application order.
    pub fn steps(&self) -> GeneratorWord {
        match &self.payload {
            ClassPayload::Cycle(c) => c.steps.clone(),
            ClassPayload::Chain(c) => c.steps.clone(),
            _ => GeneratorWord::empty(),
        }
    }

    /// Points of `closure(H0)` used for symmetry typing.
    pub fn closure_points(&self) -> Vec<Form> {
        match &self.payload {
            ClassPayload::Cycle(c) => c.points.clone(),
            ClassPayload::Chain(c) => {
                let mut v = c.points.clone();
                v.extend_from_slice(&c.boundary());
                v
            }
            ClassPayload::Apex { rho } => vec![Form::new(0, 0, *rho), Form::new(0, 0, -rho)],
            ClassPayload::Elliptic => vec![self.representative],
        }
    }
}

/// The classes of one discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassList {
    /// `Delta = 2, 3 (mod 4)`.
    NoForms,
    /// Infinitely many classes, one for each `a x^2`, `a` in `Z`.
    ParabolicRule,
    Finite(Vec<OrbitClass>),
}

impl ClassList {
    pub fn classes(&self) -> &[OrbitClass] {
        match self {
            ClassList::Finite(v) => v,
            _ => &[],
        }
    }
}

fn in_h0(f: Form) -> bool {
    f.m > 0 && f.n < 0
}

/// The successor letter in `H0`, or `None` when both images leave it.
fn step_letter(f: Form) -> Result<Option<Generator>> {
    let s = add(add(f.m, f.n)?, f.k)?;
    Ok(match s.signum() {
        -1 => Some(Generator::A),
        1 => Some(Generator::B),
        _ => None,
    })
}

fn require_positive(d: &Discriminant) -> Result<()> {
    if d.value <= 0 {
        Err(Error::NonPositiveDiscriminant(d.value))
    } else {
        Ok(())
    }
}

/// All divisors of `x > 0` in increasing order.
fn divisors(x: i64) -> Vec<i64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= x {
        if x % i == 0 {
            small.push(i);
            if i * i != x {
                large.push(x / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Points of `H0` with discriminant `d`, sorted by `(k, m, n)`. With
/// `include_boundary` and square `d`, adds the segment points `(r, 0, +-rho)`,
/// `(0, -r, +-rho)` for `0 < r < rho` and the apexes `(0, 0, +-rho)`.
pub fn enumerate_h0(d: Discriminant, include_boundary: bool) -> Result<Vec<Form>> {
    require_positive(&d)?;
    let delta = d.value;
    let mut out = Vec::new();
    let kmax = isqrt(delta - 1).unwrap_or(0);
    for k in -kmax..=kmax {
        let rem = delta - k * k;
        if rem % 4 != 0 {
            continue;
        }
        // -mn = (Delta - k^2) / 4 > 0
        let p = rem / 4;
        for m in divisors(p) {
            out.push(Form::new(m, -(p / m), k));
        }
    }
    if include_boundary {
        if let Some(rho) = d.square_root() {
            for sign in [-1, 1] {
                out.push(Form::new(0, 0, sign * rho));
                for r in 1..rho {
                    out.push(Form::new(r, 0, sign * rho));
                    out.push(Form::new(0, -r, sign * rho));
                }
            }
        }
    }
    out.sort_by_key(Form::kmn_key);
    Ok(out)
}

/// A point of `H0` for any admissible non-square `Delta > 0`.
pub fn seed_point(d: Discriminant) -> Result<Form> {
    require_positive(&d)?;
    if !d.admits_forms() {
        return Err(Error::NoForms(d.value));
    }
    if d.square_root().is_some() {
        return Err(Error::SquareDiscriminant(d.value));
    }
    Ok(if d.value % 4 == 0 {
        Form::new(d.value / 4, -1, 0)
    } else {
        Form::new((d.value - 1) / 4, -1, 1)
    })
}

/// The cycle through `f`, rotated to start at its least `(k, m, n)` point.
pub fn cycle_of(f: Form) -> Result<Cycle> {
    if !in_h0(f) {
        return Err(Error::NotInH0(f));
    }
    let delta = f.discriminant()?;
    if exact_sqrt(delta).is_some() {
        return Err(Error::SquareDiscriminant(delta));
    }
    let mut points = vec![f];
    let mut letters = Vec::new();
    let mut cur = f;
    loop {
        let g = step_letter(cur)?.ok_or(Error::AmbiguousStep(cur))?;
        let next = apply_generator(cur, g)?;
        debug_assert!(in_h0(next));
        letters.push(g);
        if next == f {
            break;
        }
        points.push(next);
        cur = next;
    }
    let start = (0..points.len())
        .min_by_key(|&i| points[i].kmn_key())
        .unwrap_or(0);
    points.rotate_left(start);
    letters.rotate_left(start);
    let t_a = letters.iter().filter(|&&g| g == Generator::A).count();
    Ok(Cycle {
        t_b: letters.len() - t_a,
        t_a,
        points,
        steps: GeneratorWord::from_letters(letters),
    })
}

/// The chain entering `H0` from the `FAbar` point `start = (r, 0, -rho)`.
pub fn chain_of(start: Form) -> Result<Chain> {
    let delta = start.discriminant()?;
    let rho = exact_sqrt(delta)
        .filter(|&r| r > 0)
        .ok_or(Error::NonSquareDiscriminant(delta))?;
    if !(start.n == 0 && start.k == -rho && start.m > 0 && start.m < rho) {
        return Err(Error::NotOnFAbar(start));
    }
    let first = apply_generator(start, Generator::A)?;
    let mut points = vec![first];
    let mut letters = Vec::new();
    let mut cur = first;
    while let Some(g) = step_letter(cur)? {
        cur = apply_generator(cur, g)?;
        debug_assert!(in_h0(cur));
        letters.push(g);
        points.push(cur);
    }
    let t_a = letters.iter().filter(|&&g| g == Generator::A).count();
    Ok(Chain {
        rho,
        entry: [start, apply_generator(first, Generator::Bbar)?],
        exit: [
            apply_generator(cur, Generator::A)?,
            apply_generator(cur, Generator::B)?,
        ],
        t_b: letters.len() - t_a,
        t_a,
        points,
        steps: GeneratorWord::from_letters(letters),
    })
}

/// Involution test on a point set that is closed under the class relation
/// inside `closure(H0)`.
fn set_symmetry(points: &[Form]) -> Result<SymmetryType> {
    let set: BTreeSet<Form> = points.iter().copied().collect();
    let preserved = |inv: Involution| -> Result<bool> {
        for p in &set {
            if !set.contains(&p.apply_involution(inv)?) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(SymmetryType::from_invariance(
        preserved(Involution::Conjugate)?,
        preserved(Involution::Adjoint)?,
        preserved(Involution::Antipodal)?,
    ))
}

/// Gauss reduction of a positive definite form to `|k| <= m <= n`, with
/// `k >= 0` when `|k| = m` or `m = n`.
pub fn reduce_definite(f: Form) -> Result<Form> {
    let delta = f.discriminant()?;
    if delta >= 0 || f.m <= 0 {
        return Err(Error::NonPositiveDiscriminant(delta));
    }
    let mut g = f;
    loop {
        // bring k into (-m, m] with powers of A or Abar
        let two_m = 2 * g.m;
        let shift = Integer::div_floor(&(g.m - g.k), &two_m);
        if shift != 0 {
            let letter = if shift > 0 {
                Generator::A
            } else {
                Generator::Abar
            };
            for _ in 0..shift.abs() {
                g = apply_generator(g, letter)?;
            }
        }
        if g.m > g.n {
            g = apply_generator(g, Generator::R)?;
            continue;
        }
        if g.m == g.n && g.k < 0 {
            g = apply_generator(g, Generator::R)?;
        }
        return Ok(g);
    }
}

fn symmetry_elliptic(rep: Form) -> Result<SymmetryType> {
    let conj = rep.apply_involution(Involution::Conjugate)?;
    Ok(if reduce_definite(conj)? == rep {
        SymmetryType::KSymmetric
    } else {
        SymmetryType::Asymmetric
    })
}

/// The symmetry type of a class with its payload filled in.
pub fn symmetry_type(c: &OrbitClass) -> Result<SymmetryType> {
    match c.payload {
        ClassPayload::Elliptic => symmetry_elliptic(c.representative),
        _ => set_symmetry(&c.closure_points()),
    }
}

fn hyperbolic_class(discriminant: i64, payload: ClassPayload) -> Result<OrbitClass> {
    let representative = match &payload {
        ClassPayload::Cycle(c) => c.points[0],
        ClassPayload::Chain(c) => *c
            .points
            .iter()
            .min_by_key(|p| p.kmn_key())
            .ok_or(Error::ZeroForm)?,
        ClassPayload::Apex { rho } => Form::new(0, 0, *rho),
        ClassPayload::Elliptic => unreachable!("hyperbolic payloads only"),
    };
    let mut class = OrbitClass {
        discriminant,
        representative,
        payload,
        symmetry: SymmetryType::Asymmetric,
    };
    class.symmetry = symmetry_type(&class)?;
    Ok(class)
}

/// Reduced positive definite representatives, sorted by `(m, n, k)`.
pub fn enumerate_classes_elliptic(d: Discriminant) -> Result<Vec<OrbitClass>> {
    if d.value >= 0 {
        return Err(Error::NonPositiveDiscriminant(d.value));
    }
    if !d.admits_forms() {
        return Ok(Vec::new());
    }
    let neg = -d.value;
    let mut reps = Vec::new();
    let mut m = 1i64;
    // reduced forms satisfy 3 m^2 <= |Delta|
    while 3 * m * m <= neg {
        for k in -m..=m {
            let num = k * k + neg;
            if num % (4 * m) != 0 {
                continue;
            }
            let n = num / (4 * m);
            if n < m || ((k.abs() == m || m == n) && k < 0) {
                continue;
            }
            reps.push(Form::new(m, n, k));
        }
        m += 1;
    }
    reps.sort();
    reps.into_iter()
        .map(|rep| {
            Ok(OrbitClass {
                discriminant: d.value,
                representative: rep,
                payload: ClassPayload::Elliptic,
                symmetry: symmetry_elliptic(rep)?,
            })
        })
        .collect()
}

/// All classes of discriminant `d`.
pub fn enumerate_classes(d: Discriminant) -> Result<ClassList> {
    if !d.admits_forms() {
        return Ok(ClassList::NoForms);
    }
    let classes = match d.kind {
        DiscriminantKind::Parabolic => return Ok(ClassList::ParabolicRule),
        DiscriminantKind::Elliptic => enumerate_classes_elliptic(d)?,
        DiscriminantKind::HyperbolicNonSquare => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for f in enumerate_h0(d, false)? {
                if seen.contains(&f) {
                    continue;
                }
                let cycle = cycle_of(f)?;
                seen.extend(cycle.points.iter().copied());
                out.push(hyperbolic_class(d.value, ClassPayload::Cycle(cycle))?);
            }
            out
        }
        DiscriminantKind::HyperbolicSquare { root } => {
            let mut out = Vec::with_capacity(root as usize);
            for r in 1..root {
                let chain = chain_of(Form::new(r, 0, -root))?;
                out.push(hyperbolic_class(d.value, ClassPayload::Chain(chain))?);
            }
            out.push(hyperbolic_class(d.value, ClassPayload::Apex { rho: root })?);
            out
        }
    };
    let mut classes = classes;
    classes.sort_by_key(|c| c.representative.kmn_key());
    Ok(ClassList::Finite(classes))
}

/// Shifts a point with `mn = 0` along its line into the normal position
/// `(r, 0, +-rho)` or `(0, -r, +-rho)` with `0 < r < rho`, or onto an apex.
fn normalise_segment(f: Form) -> Result<(Form, GeneratorWord)> {
    let rho = f.k.abs();
    let (letter, current, target) = if f.n == 0 {
        // B moves m by k along n = 0
        (Generator::B, f.m, f.m.rem_euclid(rho))
    } else {
        // A moves n by k along m = 0
        let t = f.n.rem_euclid(rho);
        (Generator::A, f.n, if t == 0 { 0 } else { t - rho })
    };
    let shift = sub(target, current)? / f.k;
    let g = if shift >= 0 { letter } else { letter.inverse() };
    let word = GeneratorWord::from_letters(vec![g; shift.unsigned_abs() as usize]);
    let image = apply_word(f, &word)?;
    Ok((image, word))
}

/// A form of `closure(H0 u H0R)` equivalent to `f`, with a certificate word
/// `w` such that `apply_word(f, w)` is that form.
pub fn reduce(f: Form) -> Result<(Form, GeneratorWord)> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::NonPositiveDiscriminant(delta));
    }
    let mut word = GeneratorWord::empty();
    if let Some(region) = region_of(f) {
        let dw = domain_word_of_form(f)?;
        // Abar (or Bbar after negation) takes the GA seed strip into H0
        let (last, tail) = match region {
            Region::GA => (Generator::Abar, None),
            Region::GB => (Generator::Bbar, None),
            Region::GAbar => (Generator::Abar, Some(Generator::R)),
            Region::GBbar => (Generator::Bbar, Some(Generator::R)),
        };
        let mut letters = vec![last];
        letters.extend_from_slice(dw.word.inverse().letters());
        letters.extend(tail);
        word = GeneratorWord::from_letters(letters);
    }
    let g = apply_word(f, &word)?;
    if g.m != 0 && g.n != 0 {
        debug_assert!(g.m.signum() != g.n.signum());
        return Ok((g, word));
    }
    if g.m == 0 && g.n == 0 {
        return Ok((g, word));
    }
    let (h, shift) = normalise_segment(g)?;
    Ok((h, shift.concat(&word)))
}

/// `(a, L)` with `lift(L) f = (a, 0, 0)`; `a` is the signed content of `f`.
pub fn classify_parabolic(f: Form) -> Result<(i64, Sl2Matrix)> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.discriminant()? != 0 {
        return Err(Error::NotParabolic(f));
    }
    let content = f.m.gcd(&f.n).gcd(&f.k);
    let a = if f.m != 0 {
        f.m.signum() * content
    } else {
        f.n.signum() * content
    };
    let (m, n, k) = (f.m / a, f.n / a, f.k / a);
    let alpha = exact_sqrt(m).ok_or(Error::NotParabolic(f))?;
    let sign = if k < 0 { -1 } else { 1 };
    let beta = sign * exact_sqrt(n).ok_or(Error::NotParabolic(f))?;
    let egcd = alpha.extended_gcd(&beta);
    let (x, y) = if egcd.gcd < 0 {
        (-egcd.x, -egcd.y)
    } else {
        (egcd.x, egcd.y)
    };
    // alpha x + beta y = 1, so M = (alpha beta / -y x) is unimodular
    let l = Sl2Matrix::new(x, -beta, y, alpha)?;
    debug_assert_eq!(lift_sl2(l).and_then(|t| t.apply(f)), Ok(Form::new(a, 0, 0)));
    Ok((a, l))
}
