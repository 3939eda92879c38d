//! The Farey graph: slopes in `ℚ ∪ {∞}`, adjacency `|ps − qr| = 1`,
//! geodesics, and the dictionary between slopes and curves in a four-holed
//! sphere.

mod frame;
mod geodesic;

pub use frame::{curve_of_slope, slope_of_curve, SlopeFrame};
pub use geodesic::{farey_distance, farey_geodesic, farey_geodesic_with, ladder, SelectionRule};

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with `q ≥ 0`; `1/0` is `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Slope {
    p: i64,
    q: i64,
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub(crate) fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };

    /// Reduces `p/q`; fails only for `0/0`.
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(Error::Validation("0/0 is not a slope".into()));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn is_infinite(self) -> bool {
        self.q == 0
    }

    /// `|ps − qr|`.
    pub fn det(self, o: Slope) -> i64 {
        (self.p * o.q - self.q * o.p).abs()
    }

    /// Image under the Möbius map `(a b; c d)`.
    pub(crate) fn mobius(self, m: [[i64; 2]; 2]) -> Slope {
        Slope::new(m[0][0] * self.p + m[0][1] * self.q, m[1][0] * self.p + m[1][1] * self.q).expect("invertible map")
    }

    pub fn shift(self, n: i64) -> Slope {
        self.mobius([[1, n], [0, 1]])
    }

    /// `s ↦ −1/s`.
    pub fn negate_inverse(self) -> Slope {
        self.mobius([[0, -1], [1, 0]])
    }
}

/// Orders slopes by value, with `∞` above every rational.
impl Ord for Slope {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.q == 0, o.q == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => ((self.p as i128) * (o.q as i128)).cmp(&((o.p as i128) * (self.q as i128))),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl TryFrom<[i64; 2]> for Slope {
    type Error = Error;
    fn try_from(v: [i64; 2]) -> Result<Slope> {
        if v[1] < 0 {
            return Err(Error::Validation(format!("slope [{}, {}] has negative denominator", v[0], v[1])));
        }
        let s = Slope::new(v[0], v[1])?;
        if (s.p, s.q) != (v[0], v[1]) {
            return Err(Error::Validation(format!("slope [{}, {}] is not reduced", v[0], v[1])));
        }
        Ok(s)
    }
}

impl From<Slope> for [i64; 2] {
    fn from(s: Slope) -> Self {
        [s.p, s.q]
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "1/0")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Slope> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Slope::INFINITY);
        }
        let bad = || Error::Parse(format!("bad slope {s:?}"));
        match t.split_once('/') {
            Some((a, b)) => Slope::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => Ok(Slope::integer(t.parse().map_err(|_| bad())?)),
        }
    }
}

/// Adjacency in the Farey graph.
pub fn farey_adjacent(u: Slope, v: Slope) -> Result<bool> {
    if u == v {
        return Err(Error::Validation(format!("adjacency asked for equal slopes {u}")));
    }
    Ok(u.det(v) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Slope::new(2, -4).unwrap(), s("-1/2"));
        assert_eq!(Slope::new(-3, 0).unwrap(), Slope::INFINITY);
        assert!(Slope::new(0, 0).is_err());
        assert!(serde_json::from_str::<Slope>("[2,4]").is_err());
        assert_eq!(serde_json::to_string(&s("-3/5")).unwrap(), "[-3,5]");
    }

    #[test]
    fn adjacency_examples() {
        assert!(farey_adjacent(Slope::ZERO, Slope::INFINITY).unwrap());
        assert!(farey_adjacent(Slope::ZERO, s("1/2")).unwrap());
        assert!(!farey_adjacent(Slope::ZERO, s("2/5")).unwrap());
        assert!(farey_adjacent(Slope::ZERO, Slope::ZERO).is_err());
    }

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v = vec![Slope::INFINITY, s("1/2"), s("-7"), s("0")];
        v.sort();
        assert_eq!(v, vec![s("-7"), s("0"), s("1/2"), Slope::INFINITY]);
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(3, 5), (-4, 7), (0, 1), (1, 0), (12, -5)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, gcd(a, b));
        }
    }
}
