//! Hyperbolic tubes and the moduli of their boundary tori.
//!
//! In cylindrical coordinates `(ρ, φ, t)` about a geodesic the metric of `ℍ³`
//! is `dρ² + sinh²ρ dφ² + cosh²ρ dt²`, so the torus at radius `r` is flat with
//! coordinates `(φ sinh r, t cosh r)`. The meridian is `m = 2π sinh r` and the
//! generator of complex length `λ = ℓ + iθ` moves by `l = θ sinh r + iℓ cosh r`.
//! Marking the longitude as `1` gives `ω = m / l̄`.
//!
//! `ω` only sees the similarity class of the torus. A tube is glued to the
//! boundary of a model tube by an isometry, and there all circles have length
//! 1, so tubes are solved for on the slice `|l| = 1`, where `ω = 2π sinh r · l`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `c` with `ℓ ≥ c/|ω|²` over the 10×10×10 parameter grid
/// `ℓ ∈ [1e−4, 1]`, `θ ∈ [−π, π]`, `r ∈ [0.1, 10]` (solved back onto the
/// unit-longitude slice).
pub const CORE_LENGTH_CONSTANT: f64 = 1.213_257_887_427_450_5e-4;

/// Default additive constant of the collar bound.
pub const COLLAR_CONSTANT: f64 = 1.0;

/// Residual above which a solved tube is rejected.
const SOLVE_TOLERANCE: f64 = 1e-9;

/// Complex translation length `ℓ + iθ` and radius `r` of a tube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeParams {
    pub l: f64,
    pub theta: f64,
    pub r: f64,
}

impl TubeParams {
    pub fn new(l: f64, theta: f64, r: f64) -> Result<Self> {
        if !(l.is_finite() && theta.is_finite() && r.is_finite()) {
            return Err(Error::Domain(format!("tube parameters must be finite (ℓ={l}, θ={theta}, r={r})")));
        }
        if l <= 0.0 || r <= 0.0 {
            return Err(Error::Domain(format!("tube needs ℓ > 0 and r > 0, got ℓ={l}, r={r}")));
        }
        Ok(TubeParams { l, theta, r })
    }

    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.l, self.theta)
    }

    /// Flat meridian vector of the boundary torus.
    pub fn meridian(&self) -> Complex64 {
        Complex64::new(2.0 * PI * self.r.sinh(), 0.0)
    }

    /// Flat vector of the longitude (the translation along the core).
    pub fn longitude(&self) -> Complex64 {
        Complex64::new(self.theta * self.r.sinh(), self.l * self.r.cosh())
    }
}

/// A point of the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct TorusModulus(Complex64);

impl TorusModulus {
    pub fn new(w: Complex64) -> Result<Self> {
        if !(w.re.is_finite() && w.im.is_finite()) || w.im <= 0.0 {
            return Err(Error::Domain(format!("torus modulus must have positive imaginary part, got {w}")));
        }
        Ok(TorusModulus(w))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for TorusModulus {
    type Error = Error;
    fn try_from(w: Complex64) -> Result<Self> {
        TorusModulus::new(w)
    }
}

impl From<TorusModulus> for Complex64 {
    fn from(w: TorusModulus) -> Complex64 {
        w.0
    }
}

impl fmt::Display for TorusModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for TorusModulus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let w: Complex64 = s.trim().parse().map_err(|_| Error::Parse(format!("not a complex number: {s:?}")))?;
        TorusModulus::new(w)
    }
}

/// `ω(λ, r)`: meridian over longitude, with the longitude marked as `1`.
pub fn tube_modulus(t: &TubeParams) -> TorusModulus {
    let l = t.longitude();
    TorusModulus(t.meridian() * l / l.norm_sqr())
}

/// The tube with unit longitude and modulus `ω`: `|ω| = 2π sinh r`, and
/// `ω/|ω|` is the longitude.
pub fn solve_tube(w: TorusModulus) -> Result<TubeParams> {
    let w = w.0;
    let n = w.norm();
    let s = n / (2.0 * PI);
    let r = s.asinh();
    let c = s.hypot(1.0);
    let t = TubeParams::new(w.im / (n * c), w.re / (n * s), r)?;
    let residual = (tube_modulus(&t).0 - w).norm() / n;
    if !(residual <= SOLVE_TOLERANCE) {
        return Err(Error::Numeric(format!("tube for ω = {w} misses by relative residual {residual:e}")));
    }
    Ok(t)
}

/// Depth of the collar guaranteed by a short curve: `max(0, ½ log(ε₁/ε) − C)`.
pub fn collar_lower_bound(eps: f64, eps1: f64, c: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < eps1) || !eps1.is_finite() || !c.is_finite() {
        return Err(Error::Domain(format!("collar bound needs 0 < ε < ε₁, got ε={eps}, ε₁={eps1}")));
    }
    Ok((0.5 * (eps1 / eps).ln() - c).max(0.0))
}

/// Lower bound `c/|ω|²` for the core length of the tube with modulus `ω`.
pub fn core_length_lower_bound(w: TorusModulus, c: f64) -> f64 {
    c / w.0.norm_sqr()
}
