//! Slope coordinates on the curves of a four-holed sphere.
//!
//! In the standard picture the three punctures 0, 1, 2 lie in `W` (together
//! with the reference boundary on the five-holed sphere, or puncture 3 on the
//! four-holed sphere). The curve around {0, 1} has slope `0`, the curve
//! around {1, 2} has slope `∞`, and the half-twist `s2` about the latter acts
//! as `s ↦ s + 1`; this fixes the orientation convention. The braid relation
//! then forces `s1` to act as `s ↦ s / (1 − s)`.

use serde::{Deserialize, Serialize};

use super::Slope;
use crate::error::{Error, Result};
use crate::subsurface::FourHoled;
use crate::surface::{apply_mapping_class, intersection_number, round_curve, MappingClassWord, NormalCurve};

/// A four-holed sphere with its slope coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FourHoled", into = "FourHoled")]
pub struct SlopeFrame {
    w: FourHoled,
    /// Standard-picture curves at slopes `∞`, `0` and `1`.
    std: [NormalCurve; 3],
}

impl TryFrom<FourHoled> for SlopeFrame {
    type Error = Error;
    fn try_from(w: FourHoled) -> Result<Self> {
        SlopeFrame::new(w)
    }
}

impl From<SlopeFrame> for FourHoled {
    fn from(f: SlopeFrame) -> Self {
        f.w
    }
}

impl SlopeFrame {
    pub fn new(w: FourHoled) -> Result<Self> {
        let k = w.surface();
        let a1 = round_curve(k, 0);
        let a0 = round_curve(k, 1);
        let a_plus = apply_mapping_class(&MappingClassWord::gen(2, false), &a1)?;
        Ok(SlopeFrame { w, std: [a0, a1, a_plus] })
    }

    pub fn subsurface(&self) -> &FourHoled {
        &self.w
    }

    /// Reference curve at slope `∞`.
    pub fn a0(&self) -> NormalCurve {
        self.w.from_standard(&self.std[0]).expect("frame curve")
    }

    /// Reference curve at slope `0`.
    pub fn a1(&self) -> NormalCurve {
        self.w.from_standard(&self.std[1]).expect("frame curve")
    }

    pub(crate) fn slope_std(&self, c: &NormalCurve) -> Result<Slope> {
        let [a0, a1, ap] = &self.std;
        let q = intersection_number(c, a0)? / 2;
        let p = intersection_number(c, a1)? / 2;
        if q == 0 || p == 0 {
            return Slope::new(p as i64, q as i64);
        }
        let plus = intersection_number(c, ap)? / 2;
        let (p, q) = (p as i64, q as i64);
        let sign = if plus == (p - q).unsigned_abs() {
            1
        } else if plus == (p + q) as u64 {
            -1
        } else {
            return Err(Error::Internal(format!("inconsistent slope intersections ({p}, {q}, {plus}) for {c}")));
        };
        let s = Slope::new(sign * p, q)?;
        if s.q() != q {
            return Err(Error::Internal(format!("slope coordinates {p}/{q} are not coprime for {c}")));
        }
        Ok(s)
    }
}

/// Slope of a curve lying in the frame's subsurface.
pub fn slope_of_curve(f: &SlopeFrame, c: &NormalCurve) -> Result<Slope> {
    if !f.w.contains(c)? {
        return Err(Error::Domain(format!("curve {c} does not lie in {}", f.w)));
    }
    f.slope_std(&f.w.to_standard(c)?)
}

/// A word `G` in `s1, s2` with `G(s) ∈ {∞, 0}`; returns `(G, lands_at_infinity)`.
pub(crate) fn euclid_word(s: Slope) -> (MappingClassWord, bool) {
    let (mut p, mut q) = (s.p() as i128, s.q() as i128);
    let mut gens = MappingClassWord::identity();
    loop {
        if q == 0 {
            return (gens, true);
        }
        let n = p.div_euclid(q);
        // s2^(-n): s ↦ s − n
        gens = MappingClassWord::gen(2, n > 0).pow(n.unsigned_abs() as i64).then_after(&gens);
        p -= n * q;
        if p == 0 {
            return (gens, false);
        }
        // now 0 < p/q < 1; s1^m: 1/s ↦ 1/s − m
        let m = q.div_euclid(p);
        gens = MappingClassWord::gen(1, false).pow(m as i64).then_after(&gens);
        q -= m * p;
    }
}

/// The curve in the frame's subsurface with the given slope.
pub fn curve_of_slope(f: &SlopeFrame, s: Slope) -> Result<NormalCurve> {
    let (g, at_inf) = euclid_word(s);
    let seed = if at_inf { &f.std[0] } else { &f.std[1] };
    let c = apply_mapping_class(&g.inverse(), seed)?;
    f.w.from_standard(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsurface::complementary_four_holed;
    use crate::surface::SurfaceKind;

    fn frames() -> Vec<SlopeFrame> {
        let k = SurfaceKind::S05;
        let v = apply_mapping_class(&"s3s1S2".parse().unwrap(), &round_curve(k, 0)).unwrap();
        vec![
            SlopeFrame::new(FourHoled::whole(SurfaceKind::S04).unwrap()).unwrap(),
            SlopeFrame::new(complementary_four_holed(k, &round_curve(k, 3)).unwrap()).unwrap(),
            SlopeFrame::new(complementary_four_holed(k, &v).unwrap()).unwrap(),
        ]
    }

    #[test]
    fn reference_curves() {
        for f in frames() {
            assert_eq!(slope_of_curve(&f, &f.a0()).unwrap(), Slope::INFINITY);
            assert_eq!(slope_of_curve(&f, &f.a1()).unwrap(), Slope::ZERO);
        }
    }

    #[test]
    fn s1_acts_as_the_braid_relation_predicts() {
        let f = &frames()[1];
        for x in ["1/3", "-2/5", "7/2", "0", "1/0", "-1"] {
            let s: Slope = x.parse().unwrap();
            let c = curve_of_slope(f, s).unwrap();
            let d = apply_mapping_class(&MappingClassWord::gen(1, false), &c).unwrap();
            assert_eq!(slope_of_curve(f, &d).unwrap(), s.mobius([[1, 0], [-1, 1]]), "{x}");
            let d = apply_mapping_class(&MappingClassWord::gen(2, false), &c).unwrap();
            assert_eq!(slope_of_curve(f, &d).unwrap(), s.shift(1), "{x}");
        }
    }

    #[test]
    fn roundtrip_small_slopes() {
        for f in frames() {
            for q in 0..=8i64 {
                for p in -8..=8i64 {
                    let Ok(s) = Slope::new(p, q) else { continue };
                    if s.p() != p || s.q() != q {
                        continue;
                    }
                    let c = curve_of_slope(&f, s).unwrap();
                    assert_eq!(slope_of_curve(&f, &c).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn outside_curve_is_rejected() {
        let f = &frames()[1];
        let c = round_curve(SurfaceKind::S05, 2);
        assert!(matches!(slope_of_curve(f, &c), Err(Error::Domain(_))));
    }
}
