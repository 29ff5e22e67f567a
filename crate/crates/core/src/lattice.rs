//! The Picard lattice of the plane blown up at nine points.
//!
//! A class is stored as `h·H + Σ e_i·E_i`, so a curve written `aH − Σ b_i E_i`
//! has `e_i = −b_i`. The form is `diag(1, −1, …, −1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

pub const RANK: usize = 10;
pub const NUM_POINTS: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    coords: [Rational; RANK],
}

impl DivisorClass {
    pub fn zero() -> Self {
        Self {
            coords: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn from_coords(coords: [Rational; RANK]) -> Self {
        Self { coords }
    }

    pub fn from_ints(h: i64, e: [i64; NUM_POINTS]) -> Self {
        let mut d = Self::zero();
        d.coords[0] = int(h);
        for (i, v) in e.into_iter().enumerate() {
            d.coords[i + 1] = int(v);
        }
        d
    }

    pub fn hyperplane() -> Self {
        let mut d = Self::zero();
        d.coords[0] = int(1);
        d
    }

    /// `E_i` for `i` in `1..=9`.
    pub fn exceptional(i: usize) -> Self {
        assert!(
            (1..=NUM_POINTS).contains(&i),
            "exceptional index {i} out of range"
        );
        let mut d = Self::zero();
        d.coords[i] = int(1);
        d
    }

    /// `K = −3H + E_1 + ⋯ + E_9`.
    pub fn canonical() -> Self {
        Self::from_ints(-3, [1; NUM_POINTS])
    }

    /// The elliptic fiber `F = −K`.
    pub fn fiber() -> Self {
        -Self::canonical()
    }

    pub fn coords(&self) -> &[Rational; RANK] {
        &self.coords
    }

    pub fn h(&self) -> &Rational {
        &self.coords[0]
    }

    /// Coefficient of `E_i`, `i` in `1..=9`.
    pub fn e(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(rational::is_integral)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coords: std::array::from_fn(|i| &self.coords[i] * c),
        }
    }

    pub fn intersect(&self, other: &Self) -> Rational {
        let mut acc = &self.coords[0] * &other.coords[0];
        for i in 1..RANK {
            acc -= &self.coords[i] * &other.coords[i];
        }
        acc
    }

    pub fn square(&self) -> Rational {
        self.intersect(self)
    }

    /// Degree against the fiber, `D·F`.
    pub fn fiber_degree(&self) -> Rational {
        self.intersect(&Self::fiber())
    }

    /// `1 + (C² + C·K)/2`.
    pub fn arithmetic_genus(&self) -> Rational {
        int(1) + (self.square() + self.intersect(&Self::canonical())) / int(2)
    }

    /// `C² = −1` and `C·K = −1`.
    pub fn is_minus_one_class(&self) -> bool {
        self.is_integral()
            && self.square() == int(-1)
            && self.intersect(&Self::canonical()) == int(-1)
    }

    /// True when `self = c·other` for some rational `c` (other nonzero).
    pub fn is_multiple_of(&self, other: &Self) -> bool {
        let Some(pivot) = other.coords.iter().position(|c| !c.is_zero()) else {
            return self.is_zero();
        };
        let c = &self.coords[pivot] / &other.coords[pivot];
        *self == other.scale(&c)
    }

    /// Ordering used for every enumeration in the crate: by H-degree, then by
    /// absolute multiplicities (largest first, so `E_1` precedes `E_2` and
    /// `H−E_1−E_2` precedes `H−E_1−E_3`), then by raw coordinates.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coords[0]
            .cmp(&other.coords[0])
            .then_with(|| {
                let a = self.coords[1..].iter().map(|c| c.abs());
                let b = other.coords[1..].iter().map(|c| c.abs());
                b.cmp(a)
            })
            .then_with(|| self.coords.cmp(&other.coords))
    }

    /// Gram matrix of the standard basis `{H, E_1, …, E_9}`.
    pub fn gram() -> [[Rational; RANK]; RANK] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| match (i, j) {
                (0, 0) => int(1),
                (a, b) if a == b => int(-1),
                _ => Rational::zero(),
            })
        })
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        DivisorClass {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        DivisorClass {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.map(|c| -c),
        }
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

impl fmt::Display for DivisorClass {
    /// Renders as `2H - E1 - 3/2E4`; the zero class renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = if i == 0 {
                "H".to_string()
            } else {
                format!("E{i}")
            };
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == int(1) {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorClassJson {
    #[serde(with = "rational")]
    h: Rational,
    #[serde(with = "rational::vec")]
    e: Vec<Rational>,
}

impl Serialize for DivisorClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DivisorClassJson {
            h: self.coords[0].clone(),
            e: self.coords[1..].to_vec(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = DivisorClassJson::deserialize(de)?;
        if j.e.len() != NUM_POINTS {
            return Err(serde::de::Error::custom(format!(
                "expected {NUM_POINTS} exceptional coefficients, got {}",
                j.e.len()
            )));
        }
        let mut d = DivisorClass::zero();
        d.coords[0] = j.h;
        for (i, v) in j.e.into_iter().enumerate() {
            d.coords[i + 1] = v;
        }
        Ok(d)
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    /// Accepts the JSON encoding or one of the names `H`, `F`, `K`, `E1`..`E9`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "H" => return Ok(Self::hyperplane()),
            "F" => return Ok(Self::fiber()),
            "K" => return Ok(Self::canonical()),
            _ => {}
        }
        if let Some(i) = s.strip_prefix('E').and_then(|r| r.parse::<usize>().ok()) {
            if (1..=NUM_POINTS).contains(&i) {
                return Ok(Self::exceptional(i));
            }
        }
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("divisor class {s:?}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn e(i: usize) -> DivisorClass {
        DivisorClass::exceptional(i)
    }

    #[test]
    fn standard_intersections() {
        let h = DivisorClass::hyperplane();
        let f = DivisorClass::fiber();
        assert_eq!(h.intersect(&h), int(1));
        assert_eq!(f.intersect(&f), int(0));
        assert_eq!(f.intersect(&e(5)), int(1));
        assert_eq!(h.intersect(&e(3)), int(0));
        assert_eq!(e(2).intersect(&e(2)), int(-1));
        assert_eq!(e(2).intersect(&e(7)), int(0));
        let k = DivisorClass::canonical();
        assert_eq!(k.square(), int(0));
    }

    #[test]
    fn gram_is_diagonal_signature_one_nine() {
        let g = DivisorClass::gram();
        let basis: Vec<DivisorClass> = std::iter::once(DivisorClass::hyperplane())
            .chain((1..=9).map(e))
            .collect();
        for i in 0..RANK {
            for j in 0..RANK {
                assert_eq!(basis[i].intersect(&basis[j]), g[i][j]);
            }
        }
        assert_eq!(g[0][0], int(1));
        assert!((1..RANK).all(|i| g[i][i] == int(-1)));
    }

    #[test]
    fn genus_by_adjunction() {
        assert_eq!(DivisorClass::fiber().arithmetic_genus(), int(1));
        assert_eq!(e(1).arithmetic_genus(), int(0));
        assert_eq!(DivisorClass::hyperplane().arithmetic_genus(), int(0));
        // plane cubic
        assert_eq!(
            DivisorClass::from_ints(3, [0; 9]).arithmetic_genus(),
            int(1)
        );
    }

    #[test]
    fn minus_one_classes() {
        assert!(e(9).is_minus_one_class());
        assert!(DivisorClass::from_ints(1, [-1, -1, 0, 0, 0, 0, 0, 0, 0]).is_minus_one_class());
        assert!(!DivisorClass::fiber().is_minus_one_class());
        assert!(!DivisorClass::hyperplane().is_minus_one_class());
        assert!(!e(1).scale(&frac(1, 2)).is_minus_one_class());
    }

    #[test]
    fn display_and_parse() {
        let d = DivisorClass::from_ints(2, [-1, 0, 0, -3, 0, 0, 0, 0, 0]);
        assert_eq!(d.to_string(), "2H - E1 - 3E4");
        assert_eq!(DivisorClass::zero().to_string(), "0");
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"h":"2","e":["-1","0","0","-3","0","0","0","0","0"]}"#
        );
        assert_eq!(json.parse::<DivisorClass>().unwrap(), d);
        assert_eq!("E9".parse::<DivisorClass>().unwrap(), e(9));
        assert_eq!("F".parse::<DivisorClass>().unwrap(), DivisorClass::fiber());
        assert!("E10".parse::<DivisorClass>().is_err());
        assert!(r#"{"h":"1","e":["0"]}"#.parse::<DivisorClass>().is_err());
    }

    #[test]
    fn canonical_order_puts_low_indices_first() {
        let a = e(1);
        let b = e(2);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        let c = DivisorClass::from_ints(1, [-1, -1, 0, 0, 0, 0, 0, 0, 0]);
        let d = DivisorClass::from_ints(1, [-1, 0, -1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(c.canonical_cmp(&d), Ordering::Less);
        assert_eq!(b.canonical_cmp(&c), Ordering::Less);
    }

    fn arb_class() -> impl Strategy<Value = DivisorClass> {
        proptest::array::uniform10((-20i64..20, 1i64..6))
            .prop_map(|c| DivisorClass::from_coords(c.map(|(p, q)| frac(p, q))))
    }

    proptest! {
        #[test]
        fn intersect_is_symmetric_bilinear(
            a in arb_class(), b in arb_class(), c in arb_class(),
            (p, q) in (-9i64..9, 1i64..9),
        ) {
            let s = frac(p, q);
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
            prop_assert_eq!((&a.scale(&s) + &b).intersect(&c), &s * &a.intersect(&c) + b.intersect(&c));
        }

        #[test]
        fn json_round_trip(a in arb_class()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(s.parse::<DivisorClass>().unwrap(), a);
        }
    }
}
