//! Region membership on the hyperboloid `K^2 + D^2 - S^2 = Delta > 0`.
//!
//! In form coordinates the partition reads:
//!
//! * `H0`: `m > 0, n < 0`; `H0R = R H0`: `m < 0, n > 0`.
//! * `GA`: `m, n > 0, k > 0`; `GAbar = R GA`; `GB = -GA`; `GBbar = R GB`.
//! * The first-generation strips are `HA = {m, n > 0, k > m + n}` and its
//!   images under `R` and negation.
//! * `mn = 0` only when `Delta` is a square; those points are the F-segments
//!   and the apexes `(0, 0, +-rho)`.
//!
//! Every point of `GA` is `T h` for a unique positive word `T` and a point
//! `h` of the closed strip `k >= m + n`. The descent removes the leading
//! letter with `Abar` when `k > 2m` and with `Bbar` otherwise; both choices
//! cannot be valid at once because `k < m + n`, and at least one is because
//! `k^2 > 4mn`. Each step replaces `m + n + k` by a strictly smaller
//! positive integer. A point with `k = m + n` lies on the frontier of its
//! domain, is owned by that closed domain, and exists only for square
//! `Delta`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::action::{apply_generator, Generator, GeneratorWord};
use crate::error::{Error, Result};
use crate::form::{add, Discriminant, Form, Involution, KdsPoint};

/// The four regions outside the fundamental domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    GA,
    GAbar,
    GB,
    GBbar,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::GA, Region::GAbar, Region::GB, Region::GBbar];

    /// `GA` and `GAbar` lie on the side `S > 0`.
    pub fn is_upper(self) -> bool {
        matches!(self, Region::GA | Region::GAbar)
    }

    pub fn r_mirror(self) -> Region {
        match self {
            Region::GA => Region::GAbar,
            Region::GAbar => Region::GA,
            Region::GB => Region::GBbar,
            Region::GBbar => Region::GB,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Region::GA => "A",
            Region::GAbar => "Abar",
            Region::GB => "B",
            Region::GBbar => "Bbar",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.suffix())
    }
}

/// Boundary segments on the lines `m = 0` and `n = 0`, named from the `H0`
/// side: `FA = {(r, 0, rho)}`, `FAbar = {(r, 0, -rho)}`,
/// `FB = {(0, -r, -rho)}`, `FBbar = {(0, -r, rho)}` for `0 < r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    FA,
    FAbar,
    FB,
    FBbar,
}

impl Segment {
    pub fn r_mirror(self) -> Segment {
        match self {
            Segment::FA => Segment::FAbar,
            Segment::FAbar => Segment::FA,
            Segment::FB => Segment::FBbar,
            Segment::FBbar => Segment::FB,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Segment::FA => "FA",
            Segment::FAbar => "FAbar",
            Segment::FB => "FB",
            Segment::FBbar => "FBbar",
        })
    }
}

/// Location of a good point in the partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    H0,
    H0R,
    /// First-generation component of a region.
    Strip(Region),
    /// Domain `T X` of generation `|word| + 1 >= 2`.
    Domain {
        region: Region,
        word: GeneratorWord,
    },
    /// `mirrored` marks the `H0R` side, the image under `R` of the segment
    /// `segment.r_mirror()`.
    Segment {
        segment: Segment,
        mirrored: bool,
    },
    /// `(0, 0, rho)` when `positive`, else `(0, 0, -rho)`.
    Apex {
        positive: bool,
    },
}

impl RegionLabel {
    pub fn is_fundamental(&self) -> bool {
        matches!(self, RegionLabel::H0 | RegionLabel::H0R)
    }

    pub fn region(&self) -> Option<Region> {
        match self {
            RegionLabel::Strip(r) => Some(*r),
            RegionLabel::Domain { region, .. } => Some(*region),
            _ => None,
        }
    }

    pub fn generation(&self) -> usize {
        match self {
            RegionLabel::Strip(_) => 1,
            RegionLabel::Domain { word, .. } => 1 + word.len(),
            _ => 0,
        }
    }

    /// The label of `R p` given the label of `p`.
    pub fn r_mirror(&self) -> RegionLabel {
        match self {
            RegionLabel::H0 => RegionLabel::H0R,
            RegionLabel::H0R => RegionLabel::H0,
            RegionLabel::Strip(r) => RegionLabel::Strip(r.r_mirror()),
            RegionLabel::Domain { region, word } => RegionLabel::Domain {
                region: region.r_mirror(),
                word: word.clone(),
            },
            RegionLabel::Segment { segment, mirrored } => RegionLabel::Segment {
                segment: segment.r_mirror(),
                mirrored: !mirrored,
            },
            RegionLabel::Apex { positive } => RegionLabel::Apex {
                positive: !positive,
            },
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::H0 => f.write_str("H0"),
            RegionLabel::H0R => f.write_str("H0R"),
            RegionLabel::Strip(r) => write!(f, "H{}", r.suffix()),
            RegionLabel::Domain { region, word } => write!(f, "{region}:{word}"),
            RegionLabel::Segment { segment, mirrored } => {
                write!(f, "{segment}{}", if *mirrored { "/R" } else { "" })
            }
            RegionLabel::Apex { positive } => {
                f.write_str(if *positive { "apex+" } else { "apex-" })
            }
        }
    }
}

impl Serialize for RegionLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Result of the descent from a point outside the fundamental domains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomainWord {
    pub region: Region,
    /// Positive word `T` with `p` in `T H_A` after normalising into `GA`.
    pub word: GeneratorWord,
    /// The point of the closed seed strip reached by the descent, in the
    /// original region (so `apply_word(seed, operator_word) = p`).
    pub seed: Form,
    /// Set when the seed lies on `k = m + n` (after normalisation).
    pub frontier: bool,
}

impl DomainWord {
    /// The operator carrying `seed` to the point: `word` itself for `GA`
    /// and `GB`, and its `R`-conjugate (a negative word) for the barred
    /// regions.
    pub fn operator_word(&self) -> GeneratorWord {
        match self.region {
            Region::GA | Region::GB => self.word.clone(),
            Region::GAbar | Region::GBbar => GeneratorWord::from_letters(
                self.word
                    .letters()
                    .iter()
                    .map(|g| g.r_conjugate())
                    .collect(),
            ),
        }
    }

    pub fn label(&self) -> RegionLabel {
        if self.word.is_empty() {
            RegionLabel::Strip(self.region)
        } else {
            RegionLabel::Domain {
                region: self.region,
                word: self.word.clone(),
            }
        }
    }
}

fn check_surface(p: KdsPoint, d: Discriminant) -> Result<Form> {
    if d.value <= 0 {
        return Err(Error::NonPositiveDiscriminant(d.value));
    }
    if p.discriminant()? != d.value {
        return Err(Error::OffSurface {
            point: p,
            discriminant: d.value,
        });
    }
    p.to_form()
}

/// The region holding a form with `mn > 0`; `None` otherwise.
pub fn region_of(f: Form) -> Option<Region> {
    match (f.m.signum(), f.n.signum(), f.k.signum()) {
        (1, 1, 1) => Some(Region::GA),
        (1, 1, -1) => Some(Region::GAbar),
        (-1, -1, -1) => Some(Region::GB),
        (-1, -1, 1) => Some(Region::GBbar),
        _ => None,
    }
}

/// Carries a point of `region` into `GA` with an involution that commutes
/// (or `R`-commutes) with the positive semigroup.
fn to_ga(f: Form, region: Region) -> Result<Form> {
    match region {
        Region::GA => Ok(f),
        Region::GB => f.apply_involution(Involution::Opposite),
        Region::GAbar => apply_generator(f, Generator::R),
        Region::GBbar => apply_generator(f, Generator::R)?.apply_involution(Involution::Opposite),
    }
}

fn from_ga(f: Form, region: Region) -> Result<Form> {
    match region {
        Region::GA => Ok(f),
        Region::GB => f.apply_involution(Involution::Opposite),
        Region::GAbar => apply_generator(f, Generator::R),
        Region::GBbar => apply_generator(f.apply_involution(Involution::Opposite)?, Generator::R),
    }
}

/// Descent inside `GA`; returns `(T, h, k_h == m_h + n_h)`.
fn descend_ga(mut f: Form) -> Result<(GeneratorWord, Form, bool)> {
    debug_assert_eq!(region_of(f), Some(Region::GA));
    let mut word = GeneratorWord::empty();
    loop {
        let sum = add(f.m, f.n)?;
        if f.k >= sum {
            return Ok((word, f, f.k == sum));
        }
        if f.k > 2 * f.m {
            f = apply_generator(f, Generator::Abar)?;
            word.push(Generator::A);
        } else {
            f = apply_generator(f, Generator::Bbar)?;
            word.push(Generator::B);
        }
    }
}

/// Descent for a form outside `closure(H0 u H0R)`.
pub fn domain_word_of_form(f: Form) -> Result<DomainWord> {
    let region = region_of(f).ok_or(Error::FundamentalDomain(f))?;
    if f.discriminant()? <= 0 {
        return Err(Error::NonPositiveDiscriminant(f.discriminant()?));
    }
    let (word, h, frontier) = descend_ga(to_ga(f, region)?)?;
    Ok(DomainWord {
        region,
        word,
        seed: from_ga(h, region)?,
        frontier,
    })
}

pub fn domain_word(p: KdsPoint, d: Discriminant) -> Result<DomainWord> {
    domain_word_of_form(check_surface(p, d)?)
}

fn segment_label(f: Form) -> RegionLabel {
    // caller guarantees m n = 0 and not both zero, so k = +-rho
    if f.m > f.n {
        let segment = match (f.n == 0, f.k > 0) {
            (true, true) => Segment::FA,
            (true, false) => Segment::FAbar,
            (false, true) => Segment::FBbar,
            (false, false) => Segment::FB,
        };
        RegionLabel::Segment {
            segment,
            mirrored: false,
        }
    } else {
        let mirror = Form::new(f.n, f.m, -f.k);
        segment_label(mirror).r_mirror()
    }
}

/// Label of a form with positive discriminant.
pub fn classify_form(f: Form) -> Result<RegionLabel> {
    let delta = f.discriminant()?;
    if delta <= 0 {
        return Err(Error::NonPositiveDiscriminant(delta));
    }
    Ok(match (f.m.signum(), f.n.signum()) {
        (1, -1) => RegionLabel::H0,
        (-1, 1) => RegionLabel::H0R,
        (0, 0) => RegionLabel::Apex { positive: f.k > 0 },
        (0, _) | (_, 0) => segment_label(f),
        _ => domain_word_of_form(f)?.label(),
    })
}

pub fn classify_region(p: KdsPoint, d: Discriminant) -> Result<RegionLabel> {
    classify_form(check_surface(p, d)?)
}

pub fn generation_of(p: KdsPoint, d: Discriminant) -> Result<usize> {
    Ok(classify_region(p, d)?.generation())
}

/// Whether the point sits on a frontier `k = m + n` between a closed domain
/// and its neighbour. Only possible for square discriminants.
pub fn is_domain_frontier(f: Form) -> Result<bool> {
    match region_of(f) {
        Some(_) => Ok(domain_word_of_form(f)?.frontier),
        None => Ok(false),
    }
}
