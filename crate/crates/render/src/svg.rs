//! Deterministic SVG scenes for the three models.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::str::FromStr;

use desitter_core::{
    apply_generator, necklace, Form, Generator, GeneratorWord, OrbitClass, Sl2Matrix,
};
use num_complex::Complex64;

use crate::error::{RenderError, Result};
use crate::projection::{
    apply_homography_projective, eclipse_project, halfplane_to_disc_projective, project_one_sheet,
    project_two_sheet, DiscPoint, MOON_RADIUS,
};

pub const MAX_GENERATION: u32 = 10;
pub const SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Disc,
    Cylinder,
    Eclipse,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Disc => "disc",
            Model::Cylinder => "cylinder",
            Model::Eclipse => "eclipse",
        }
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "disc" => Ok(Model::Disc),
            "cylinder" => Ok(Model::Cylinder),
            "eclipse" => Ok(Model::Eclipse),
            other => Err(format!("unknown model {other:?}")),
        }
    }
}

/// Where the unrolled cylinder is cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Seam {
    /// `phi` in `[0, 2 pi)`.
    #[default]
    Zero,
    /// `phi` in `[-pi/2, 3 pi/2)`.
    MinusHalfPi,
}

impl Seam {
    fn start(self) -> f64 {
        match self {
            Seam::Zero => 0.0,
            Seam::MinusHalfPi => -PI / 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneSpec {
    pub discriminant: i64,
    pub model: Model,
    /// Boundary generation for the cylinder and eclipse, word depth for the disc.
    pub max_generation: u32,
    /// Width in pixels; the cylinder is half as tall.
    pub size: u32,
    pub seam: Seam,
    /// Orbit markers keep `max(|m|, |n|, |k|) <= orbit_bound`.
    pub orbit_bound: i64,
    /// Length of the A- and B-necklaces drawn through each class point, 0 for none.
    pub necklace_len: usize,
}

impl SceneSpec {
    pub fn new(discriminant: i64, model: Model) -> Self {
        SceneSpec {
            discriminant,
            model,
            max_generation: 2,
            size: 800,
            seam: Seam::Zero,
            orbit_bound: 64,
            necklace_len: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_generation > MAX_GENERATION {
            return Err(RenderError::GenerationTooLarge(self.max_generation));
        }
        let ok = match self.model {
            Model::Disc => self.discriminant < 0,
            Model::Cylinder | Model::Eclipse => self.discriminant > 0,
        };
        if !ok {
            return Err(RenderError::Unsupported {
                model: self.model.as_str(),
                delta: self.discriminant,
            });
        }
        Ok(())
    }
}

/// Six decimals, never `-0`.
pub fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn form_to_kds(f: [f64; 3]) -> [f64; 3] {
    let [m, n, k] = f;
    [k, m - n, m + n]
}

fn apply_real(rows: &[[i64; 3]; 3], f: [f64; 3]) -> [f64; 3] {
    let row = |r: [i64; 3]| r[0] as f64 * f[0] + r[1] as f64 * f[1] + r[2] as f64 * f[2];
    [row(rows[0]), row(rows[1]), row(rows[2])]
}

/// Positive words of exactly `len` letters, in lexicographic `A < B` order.
pub fn positive_words(len: usize) -> Vec<GeneratorWord> {
    let mut out = vec![GeneratorWord::empty()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                [Generator::A, Generator::B].map(|g| {
                    let mut v = w.letters().to_vec();
                    v.push(g);
                    GeneratorWord::from_letters(v)
                })
            })
            .collect();
    }
    out
}

/// A half-generatrix `base + u * dir`, `u >= 0`, in `(m, n, k)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLine {
    pub generation: u32,
    pub base: [f64; 3],
    pub dir: [f64; 3],
}

impl HalfLine {
    /// `SAMPLES` points in `(K, D, S)`, spread so that `|s|` approaches 1.
    pub fn samples(&self, rho: f64) -> Vec<[f64; 3]> {
        (0..SAMPLES)
            .map(|j| {
                let tau = 0.995 * j as f64 / (SAMPLES - 1) as f64;
                let u = rho * tau / (1.0 - tau);
                let f = [0, 1, 2].map(|i| self.base[i] + u * self.dir[i]);
                form_to_kds(f)
            })
            .collect()
    }
}

fn mirror_r(f: [f64; 3]) -> [f64; 3] {
    [f[1], f[0], -f[2]]
}

fn negate(f: [f64; 3]) -> [f64; 3] {
    [-f[0], -f[1], -f[2]]
}

/// Domain boundaries up to `max_generation`. Generation 0 is the frontier of
/// `H0` and `H0R`; generation `g >= 1` is the image under `T_w`, `|w| = g - 1`,
/// of the two half-lines `k = m + n` that close the strip `HA`, carried to the
/// four regions by `R` and `f -> -f`.
pub fn boundary_half_lines(rho: f64, max_generation: u32) -> Result<Vec<HalfLine>> {
    let mut out = Vec::new();
    for (base, dir) in [
        ([0.0, 0.0, rho], [1.0, 0.0, 0.0]),
        ([0.0, 0.0, -rho], [1.0, 0.0, 0.0]),
        ([0.0, 0.0, rho], [0.0, -1.0, 0.0]),
        ([0.0, 0.0, -rho], [0.0, -1.0, 0.0]),
    ] {
        out.push(HalfLine {
            generation: 0,
            base,
            dir,
        });
        out.push(HalfLine {
            generation: 0,
            base: mirror_r(base),
            dir: mirror_r(dir),
        });
    }
    let seeds = [
        ([rho, 0.0, rho], [1.0, 1.0, 2.0]),
        ([0.0, rho, rho], [1.0, 1.0, 2.0]),
    ];
    for g in 1..=max_generation {
        for w in positive_words(g as usize - 1) {
            let rows = w.tmatrix()?.rows();
            for (base, dir) in seeds {
                let (b, d) = (apply_real(&rows, base), apply_real(&rows, dir));
                for (bb, dd) in [
                    (b, d),
                    (mirror_r(b), mirror_r(d)),
                    (negate(b), negate(d)),
                    (mirror_r(negate(b)), mirror_r(negate(d))),
                ] {
                    out.push(HalfLine {
                        generation: g,
                        base: bb,
                        dir: dd,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Orbit points reachable from `seeds` inside the coefficient box.
pub fn orbit_points(seeds: &[Form], bound: i64) -> Vec<Form> {
    let inside = |f: &Form| f.m.abs().max(f.n.abs()).max(f.k.abs()) <= bound;
    let mut seen: BTreeSet<Form> = seeds.iter().copied().filter(inside).collect();
    let mut frontier: Vec<Form> = seen.iter().copied().collect();
    while let Some(f) = frontier.pop() {
        for g in [Generator::A, Generator::B, Generator::Abar, Generator::Bbar] {
            if let Ok(h) = apply_generator(f, g) {
                if inside(&h) && seen.insert(h) {
                    frontier.push(h);
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn kds_of(f: Form) -> [f64; 3] {
    form_to_kds([f.m as f64, f.n as f64, f.k as f64])
}

/// Forms of a necklace and their cylinder images.
pub fn necklace_polyline(
    f: Form,
    g: Generator,
    len: usize,
    delta: i64,
) -> Result<(Vec<Form>, Vec<crate::projection::CylinderPoint>)> {
    let forms = necklace(f, g, len)?;
    let points = forms
        .iter()
        .map(|&h| project_one_sheet(kds_of(h), delta as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok((forms, points))
}

struct Doc {
    out: String,
}

impl Doc {
    fn new(width: u32, height: u32, model: Model, delta: i64, note: &str) -> Self {
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(
            out,
            r#"<metadata>model={} discriminant={delta}; {note}</metadata>"#,
            model.as_str()
        );
        let _ = writeln!(
            out,
            "<style>path{{fill:none;stroke:#333;stroke-width:0.6}} .moon{{fill:#000}} circle.pt{{stroke:none}}</style>"
        );
        Doc { out }
    }

    fn path(&mut self, class: &str, attrs: &str, subpaths: &[Vec<(f64, f64)>], closed: bool) {
        let mut d = String::new();
        for sub in subpaths.iter().filter(|s| s.len() > 1) {
            for (i, (x, y)) in sub.iter().enumerate() {
                let _ = write!(
                    d,
                    "{}{} {} ",
                    if i == 0 { "M" } else { "L" },
                    num(*x),
                    num(*y)
                );
            }
            if closed {
                d.push_str("Z ");
            }
        }
        let _ = writeln!(
            self.out,
            r#"<path class="{class}"{attrs} d="{}"/>"#,
            d.trim_end()
        );
    }

    fn circle(&mut self, class: &str, x: f64, y: f64, r: f64, attrs: &str) {
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}"{attrs}/>"#,
            num(x),
            num(y),
            num(r)
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn class_group_open(doc: &mut Doc, i: usize, c: &OrbitClass) {
    let _ = writeln!(
        doc.out,
        r#"<g class="orbit-{i}" data-symmetry="{}" data-representative="{}" fill="{}">"#,
        c.symmetry.as_str(),
        c.representative,
        PALETTE[i % PALETTE.len()]
    );
}

pub fn render_scene(spec: &SceneSpec, classes: &[OrbitClass]) -> Result<String> {
    spec.validate()?;
    match spec.model {
        Model::Cylinder => render_cylinder(spec, classes),
        Model::Eclipse => render_eclipse(spec, classes),
        Model::Disc => render_disc(spec, classes),
    }
}

fn render_cylinder(spec: &SceneSpec, classes: &[OrbitClass]) -> Result<String> {
    let delta = spec.discriminant as f64;
    let rho = delta.sqrt();
    let (w, h) = (spec.size as f64, spec.size as f64 / 2.0);
    let start = spec.seam.start();
    let xy = |c: crate::projection::CylinderPoint| {
        (
            (c.phi - start).rem_euclid(TAU) / TAU * w,
            (1.0 - c.s) / 2.0 * h,
        )
    };
    // split where consecutive samples cross the seam
    let polyline = |pts: &[crate::projection::CylinderPoint]| {
        let mut subs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        let mut prev: Option<(f64, f64)> = None;
        for &p in pts {
            let q = xy(p);
            if let Some(pq) = prev {
                if (q.0 - pq.0).abs() > w / 2.0 {
                    subs.push(Vec::new());
                }
            }
            subs.last_mut().expect("non-empty").push(q);
            prev = Some(q);
        }
        subs
    };
    let note = match spec.seam {
        Seam::Zero => "unrolled cylinder, x = phi in [0, 2pi), y = s in (-1, 1) upward",
        Seam::MinusHalfPi => {
            "unrolled cylinder, x = phi in [-pi/2, 3pi/2), y = s in (-1, 1) upward"
        }
    };
    let mut doc = Doc::new(
        spec.size,
        spec.size / 2,
        spec.model,
        spec.discriminant,
        note,
    );
    for line in boundary_half_lines(rho, spec.max_generation)? {
        let pts = line
            .samples(rho)
            .into_iter()
            .map(|p| project_one_sheet(p, delta))
            .collect::<Result<Vec<_>>>()?;
        doc.path(
            &format!("gen-{}", line.generation),
            "",
            &polyline(&pts),
            false,
        );
    }
    for (i, c) in classes.iter().enumerate() {
        class_group_open(&mut doc, i, c);
        for f in orbit_points(&c.closure_points(), spec.orbit_bound) {
            let (x, y) = xy(project_one_sheet(kds_of(f), delta)?);
            doc.circle("pt", x, y, 2.0, "");
        }
        if spec.necklace_len > 0 {
            for &f in c.h0_points() {
                for (g, class) in [(Generator::A, "necklace-a"), (Generator::B, "necklace-b")] {
                    let (_, pts) = necklace_polyline(f, g, spec.necklace_len, spec.discriminant)?;
                    doc.path(class, "", &polyline(&pts), false);
                }
            }
        }
        doc.out.push_str("</g>\n");
    }
    Ok(doc.finish())
}

fn render_eclipse(spec: &SceneSpec, classes: &[OrbitClass]) -> Result<String> {
    let delta = spec.discriminant as f64;
    let rho = delta.sqrt();
    let half = spec.size as f64 / 2.0;
    let radius = half * 0.95;
    let xy = |p: DiscPoint| (half + radius * p.k, half - radius * p.d);
    let mut doc = Doc::new(
        spec.size,
        spec.size,
        spec.model,
        spec.discriminant,
        "upper half S >= 0; x = K~ rightward, y = D~ upward; inner moon radius sqrt(2) - 1",
    );
    doc.circle(
        "horizon",
        half,
        half,
        radius,
        r##" fill="none" stroke="#333""##,
    );
    doc.circle("moon", half, half, radius * MOON_RADIUS, "");
    for line in boundary_half_lines(rho, spec.max_generation)? {
        let mut subs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for p in line.samples(rho) {
            if p[2] < 0.0 {
                if !subs.last().expect("non-empty").is_empty() {
                    subs.push(Vec::new());
                }
                continue;
            }
            subs.last_mut()
                .expect("non-empty")
                .push(xy(eclipse_project(p, delta)?));
        }
        if subs.iter().any(|s| s.len() > 1) {
            doc.path(&format!("gen-{}", line.generation), "", &subs, false);
        }
    }
    for (i, c) in classes.iter().enumerate() {
        class_group_open(&mut doc, i, c);
        for f in orbit_points(&c.closure_points(), spec.orbit_bound) {
            let p = kds_of(f);
            if p[2] >= 0.0 {
                let (x, y) = xy(eclipse_project(p, delta)?);
                doc.circle("pt", x, y, 2.0, "");
            }
        }
        doc.out.push_str("</g>\n");
    }
    Ok(doc.finish())
}

/// Words `S U` with `S` in `T+` or `T-`, `|S| <= depth`, and `U` in `{I, R}`.
pub fn tile_words(depth: u32) -> Vec<GeneratorWord> {
    let mut stems = Vec::new();
    for len in 0..=depth as usize {
        for w in positive_words(len) {
            stems.push(w);
        }
    }
    let negatives: Vec<GeneratorWord> = stems
        .iter()
        .filter(|w| !w.is_empty())
        .map(|w| GeneratorWord::from_letters(w.letters().iter().map(|g| g.inverse()).collect()))
        .collect();
    stems.extend(negatives);
    let mut out = Vec::new();
    for s in stems {
        out.push(s.clone());
        let mut v = s.into_letters();
        v.push(Generator::R);
        out.push(GeneratorWord::from_letters(v));
    }
    out
}

/// Boundary of the standard triangle `{|z| >= 1, |Re z| <= 1/2}` as projective
/// points, counter-clockwise from the cusp.
fn standard_triangle() -> Vec<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let mut pts = vec![(one, Complex64::new(0.0, 0.0))];
    let h = 3f64.sqrt() / 2.0;
    let n = SAMPLES;
    for j in 1..n {
        let y = h / (j as f64 / n as f64);
        pts.push((Complex64::new(-0.5, y), one));
    }
    for j in 0..=n {
        let a = 2.0 * PI / 3.0 - (PI / 3.0) * j as f64 / n as f64;
        pts.push((Complex64::from_polar(1.0, a), one));
    }
    for j in (1..n).rev() {
        let y = h / (j as f64 / n as f64);
        pts.push((Complex64::new(0.5, y), one));
    }
    pts
}

fn render_disc(spec: &SceneSpec, classes: &[OrbitClass]) -> Result<String> {
    let delta = spec.discriminant as f64;
    let half = spec.size as f64 / 2.0;
    let radius = half * 0.95;
    // (K~, D~) axes: the complex disc reflected in its diagonal
    let xy = |w: Complex64| (half + radius * w.im, half - radius * w.re);
    let mut doc = Doc::new(
        spec.size,
        spec.size,
        spec.model,
        spec.discriminant,
        "coordinates (K~, D~) = (Im w, Re w): the unit disc w = u + iv reflected in the diagonal v = u",
    );
    doc.circle(
        "horizon",
        half,
        half,
        radius,
        r##" fill="none" stroke="#333""##,
    );
    let triangle = standard_triangle();
    let words = tile_words(spec.max_generation);
    for w in &words {
        let pts: Vec<(f64, f64)> = triangle
            .iter()
            .map(|&z| {
                let mut z = z;
                for &g in w.letters().iter().rev() {
                    z = apply_homography_projective(&g.sl2(), z);
                }
                xy(halfplane_to_disc_projective(z.0, z.1))
            })
            .collect();
        let label = if w.is_empty() {
            "I".to_string()
        } else {
            w.to_string()
        };
        doc.path("tile", &format!(r#" data-word="{label}""#), &[pts], true);
    }
    for (i, c) in classes.iter().enumerate() {
        class_group_open(&mut doc, i, c);
        let mut seen = BTreeSet::new();
        for w in &words {
            let f = w.apply(c.representative)?;
            if seen.insert(f) {
                let p = project_two_sheet(kds_of(f), delta)?;
                let (x, y) = xy(p.to_complex());
                doc.circle("pt", x, y, 2.0, "");
            }
        }
        doc.out.push_str("</g>\n");
    }
    Ok(doc.finish())
}

/// `L_{s_1} ... L_{s_k}`, the homography of a word acting rightmost first.
pub fn homography_of(w: &GeneratorWord) -> Result<Sl2Matrix> {
    w.letters()
        .iter()
        .try_fold(Sl2Matrix::IDENTITY, |acc, g| Ok(acc.mul(&g.sl2())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(-0.0000001), "0.000000");
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(1.25), "1.250000");
        assert_eq!(num(-3.5), "-3.500000");
    }

    #[test]
    fn positive_word_counts() {
        assert_eq!(positive_words(0).len(), 1);
        assert_eq!(positive_words(3).len(), 8);
        assert_eq!(positive_words(2)[1].to_string(), "AB");
    }

    #[test]
    fn boundary_counts() {
        let lines = boundary_half_lines(32f64.sqrt(), 2).unwrap();
        assert_eq!(lines.len(), 32);
        assert_eq!(lines.iter().filter(|l| l.generation == 2).count(), 16);
    }

    #[test]
    fn tile_count() {
        assert_eq!(tile_words(3).len(), 58);
        assert_eq!(tile_words(0).len(), 2);
    }

    #[test]
    fn spec_validation() {
        assert!(SceneSpec::new(-31, Model::Disc).validate().is_ok());
        assert!(SceneSpec::new(31, Model::Disc).validate().is_err());
        assert!(SceneSpec::new(-31, Model::Cylinder).validate().is_err());
        assert!(SceneSpec::new(-31, Model::Eclipse).validate().is_err());
        let mut s = SceneSpec::new(32, Model::Cylinder);
        s.max_generation = 11;
        assert_eq!(s.validate(), Err(RenderError::GenerationTooLarge(11)));
        assert_eq!("eclipse".parse::<Model>(), Ok(Model::Eclipse));
    }

    #[test]
    fn orbit_points_stay_in_box() {
        let pts = orbit_points(&[Form::new(1, -8, 0)], 20);
        assert!(pts.contains(&Form::new(1, -7, 2)));
        assert!(pts.iter().all(|f| f.discriminant().unwrap() == 32));
        assert!(pts
            .iter()
            .all(|f| f.m.abs().max(f.n.abs()).max(f.k.abs()) <= 20));
    }
}
