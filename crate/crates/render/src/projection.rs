//! Projections of the hyperboloids `K^2 + D^2 - S^2 = Delta` to the plane.
//!
//! * Two-sheet case (`Delta < 0`): `P(K, D, S) = (K, D) / (rho + S)` on the
//!   upper sheet, read as the complex number `w = D~ + i K~` in the unit
//!   disc. Under this reading the lifted action of a generator `g` becomes
//!   `w -> pi(H_g(pi^-1(w)))` with `pi(z) = (1 + iz) / (1 - iz)`.
//! * One-sheet case (`Delta > 0`): the cylinder `s = S / (r + rho)`,
//!   `phi = atan2(D, K)`, with `r = sqrt(K^2 + D^2)`.
//! * Sun eclipse: vertical drop to `S = rho`, central projection to the
//!   sphere of radius `rho`, stereographic projection from `(0, 0, -rho)`,
//!   rescaled by `1 / rho`. The composite radius is
//!   `r / (rho + sqrt(r^2 + rho^2))`; on the one-sheet surface `r >= rho`,
//!   so the image fills the ring `sqrt(2) - 1 <= radius < 1`.

use std::f64::consts::TAU;

use desitter_core::{Generator, GeneratorWord, Sl2Matrix};
use num_complex::Complex64;

use crate::error::{RenderError, Result};

const SURFACE_TOL: f64 = 1e-9;

/// `(K~, D~)` inside the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub k: f64,
    pub d: f64,
}

impl DiscPoint {
    /// `w = D~ + i K~`.
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.d, self.k)
    }

    pub fn from_complex(w: Complex64) -> Self {
        DiscPoint { k: w.im, d: w.re }
    }

    pub fn radius(self) -> f64 {
        self.k.hypot(self.d)
    }

    pub fn angle(self) -> f64 {
        self.d.atan2(self.k).rem_euclid(TAU)
    }
}

/// `phi` in `[0, 2 pi)`, `|s| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderPoint {
    pub phi: f64,
    pub s: f64,
}

fn check_surface(p: [f64; 3], delta: f64) -> Result<()> {
    let [k, d, s] = p;
    let value = k * k + d * d - s * s;
    let scale = 1.0 + k * k + d * d + s * s;
    if (value - delta).abs() > SURFACE_TOL * scale {
        return Err(RenderError::OffSurface(k, d, s, delta));
    }
    Ok(())
}

pub fn project_two_sheet(p: [f64; 3], delta: f64) -> Result<DiscPoint> {
    if delta >= 0.0 {
        return Err(RenderError::WrongSign(delta));
    }
    check_surface(p, delta)?;
    let [k, d, s] = p;
    if s <= 0.0 {
        return Err(RenderError::WrongSheet(k, d, s));
    }
    let rho = (-delta).sqrt();
    Ok(DiscPoint {
        k: k / (rho + s),
        d: d / (rho + s),
    })
}

pub fn project_one_sheet(p: [f64; 3], delta: f64) -> Result<CylinderPoint> {
    if delta <= 0.0 {
        return Err(RenderError::WrongSign(delta));
    }
    check_surface(p, delta)?;
    let [k, d, s] = p;
    let r = k.hypot(d);
    Ok(CylinderPoint {
        phi: d.atan2(k).rem_euclid(TAU),
        s: s / (r + delta.sqrt()),
    })
}

/// Inverse of [`project_one_sheet`]: `r = rho (1 + s^2) / (1 - s^2)`.
pub fn cylinder_to_hyperboloid(c: CylinderPoint, delta: f64) -> [f64; 3] {
    let rho = delta.sqrt();
    let r = rho * (1.0 + c.s * c.s) / (1.0 - c.s * c.s);
    [r * c.phi.cos(), r * c.phi.sin(), c.s * (r + rho)]
}

pub fn halfplane_to_disc(z: Complex64) -> Result<Complex64> {
    if z.im < 0.0 {
        return Err(RenderError::Pole);
    }
    let i = Complex64::i();
    Ok((1.0 + i * z) / (1.0 - i * z))
}

pub fn disc_to_halfplane(w: Complex64) -> Result<Complex64> {
    if (w + 1.0).norm() == 0.0 {
        return Err(RenderError::Pole);
    }
    Ok(-Complex64::i() * (w - 1.0) / (w + 1.0))
}

/// Projective version of `pi` on `z1 / z2`; `pi(infinity) = -1`.
pub fn halfplane_to_disc_projective(z1: Complex64, z2: Complex64) -> Complex64 {
    let i = Complex64::i();
    (z2 + i * z1) / (z2 - i * z1)
}

pub fn apply_homography(l: &Sl2Matrix, z: Complex64) -> Result<Complex64> {
    let den = l.c as f64 * z + l.d as f64;
    if den.norm() == 0.0 {
        return Err(RenderError::Pole);
    }
    Ok((l.a as f64 * z + l.b as f64) / den)
}

/// Homographic action on projective pairs `(z1 : z2)`.
pub fn apply_homography_projective(
    l: &Sl2Matrix,
    z: (Complex64, Complex64),
) -> (Complex64, Complex64) {
    (
        l.a as f64 * z.0 + l.b as f64 * z.1,
        l.c as f64 * z.0 + l.d as f64 * z.1,
    )
}

/// The disc map of one generator.
pub fn disc_generator(g: Generator, w: Complex64) -> Result<Complex64> {
    let z = disc_to_halfplane(w)?;
    halfplane_to_disc(apply_homography(&g.sl2(), z)?)
}

/// Letters act rightmost first, as on forms.
pub fn disc_apply_word(word: &GeneratorWord, p: DiscPoint) -> Result<DiscPoint> {
    let mut w = p.to_complex();
    for &g in word.letters().iter().rev() {
        w = disc_generator(g, w)?;
    }
    Ok(DiscPoint::from_complex(w))
}

/// The three stages of the eclipse projection: the point in the plane
/// `S = rho`, on the sphere, and in the plane `S = 0` (unscaled).
pub fn eclipse_stages(p: [f64; 3], rho: f64) -> ([f64; 3], [f64; 3], [f64; 2]) {
    let [k, d, _] = p;
    let lifted = [k, d, rho];
    let norm = (k * k + d * d + rho * rho).sqrt();
    let sphere = [k * rho / norm, d * rho / norm, rho * rho / norm];
    let scale = rho / (sphere[2] + rho);
    (lifted, sphere, [sphere[0] * scale, sphere[1] * scale])
}

fn eclipse(p: [f64; 3], rho: f64) -> DiscPoint {
    let (_, _, plane) = eclipse_stages(p, rho);
    DiscPoint {
        k: plane[0] / rho,
        d: plane[1] / rho,
    }
}

/// Eclipse image of a point of the one-sheet surface with `S >= 0`.
pub fn eclipse_project(p: [f64; 3], delta: f64) -> Result<DiscPoint> {
    if delta <= 0.0 {
        return Err(RenderError::WrongSign(delta));
    }
    check_surface(p, delta)?;
    if p[2] < 0.0 {
        return Err(RenderError::WrongSheet(p[0], p[1], p[2]));
    }
    Ok(eclipse(p, delta.sqrt()))
}

/// The same composite on the upper sheet of a two-sheet surface, where it
/// agrees with [`project_two_sheet`].
pub fn eclipse_two_sheet(p: [f64; 3], delta: f64) -> Result<DiscPoint> {
    if delta >= 0.0 {
        return Err(RenderError::WrongSign(delta));
    }
    check_surface(p, delta)?;
    if p[2] <= 0.0 {
        return Err(RenderError::WrongSheet(p[0], p[1], p[2]));
    }
    Ok(eclipse(p, (-delta).sqrt()))
}

/// Inner radius of the eclipse ring: the image of the circle `r = rho`.
pub const MOON_RADIUS: f64 = std::f64::consts::SQRT_2 - 1.0;
