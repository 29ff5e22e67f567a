//! Root basis of `F^⊥`, reflections, and degree-bounded orbit enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, NUM_POINTS, RANK};
use crate::rational::{int, Rational};

/// Largest H-degree change a single generator reflection can cause
/// (attained by the root `H − E_1 − E_2 − E_3`).
pub const MAX_DEGREE_SHIFT: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    cls: DivisorClass,
}

impl Root {
    pub fn new(cls: DivisorClass) -> Result<Self> {
        if cls.square() != int(-2) || !cls.fiber_degree().is_zero() {
            return Err(Error::InvalidInput(format!(
                "{cls} is not a root (need square -2 and fiber degree 0)"
            )));
        }
        Ok(Self { cls })
    }

    pub fn class(&self) -> &DivisorClass {
        &self.cls
    }
}

/// `E_1−E_2, …, E_8−E_9, H−E_1−E_2−E_3`.
pub fn root_basis() -> Vec<Root> {
    let mut roots = Vec::with_capacity(NUM_POINTS);
    for i in 1..NUM_POINTS {
        let cls = &DivisorClass::exceptional(i) - &DivisorClass::exceptional(i + 1);
        roots.push(Root { cls });
    }
    roots.push(Root {
        cls: DivisorClass::from_ints(1, [-1, -1, -1, 0, 0, 0, 0, 0, 0]),
    });
    roots
}

/// `s_β(D) = D + (D·β)β`.
pub fn reflect(beta: &Root, d: &DivisorClass) -> DivisorClass {
    let c = d.intersect(&beta.cls);
    d + &beta.cls.scale(&c)
}

/// Applies the generator reflections `word[0]`, then `word[1]`, ….
pub fn apply_word(word: &[usize], d: &DivisorClass) -> DivisorClass {
    let basis = root_basis();
    word.iter()
        .fold(d.clone(), |acc, &g| reflect(&basis[g], &acc))
}

/// A linear map of the Picard lattice; column `j` is the image of basis vector `j`
/// of `{H, E_1, …, E_9}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMap {
    #[serde(with = "matrix_serde")]
    matrix: [[Rational; RANK]; RANK],
}

impl LatticeMap {
    pub fn identity() -> Self {
        Self {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            }),
        }
    }

    pub fn from_matrix(matrix: [[Rational; RANK]; RANK]) -> Self {
        Self { matrix }
    }

    /// Builds the matrix of any linear map from its action on the standard basis.
    pub fn from_fn(f: impl Fn(&DivisorClass) -> DivisorClass) -> Self {
        let images: Vec<DivisorClass> = (0..RANK).map(|j| f(&basis_vector(j))).collect();
        Self {
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| images[j].coords()[i].clone())),
        }
    }

    pub fn reflection(beta: &Root) -> Self {
        Self::from_fn(|d| reflect(beta, d))
    }

    pub fn matrix(&self) -> &[[Rational; RANK]; RANK] {
        &self.matrix
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.matrix[i][j]
    }

    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        let c = d.coords();
        DivisorClass::from_coords(std::array::from_fn(|i| {
            (0..RANK).fold(Rational::zero(), |acc, j| acc + &self.matrix[i][j] * &c[j])
        }))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..RANK).fold(Rational::zero(), |acc, k| {
                        acc + &self.matrix[i][k] * &other.matrix[k][j]
                    })
                })
            }),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.matrix
            .iter()
            .flatten()
            .all(crate::rational::is_integral)
    }

    /// `Mᵀ G M = G` exactly.
    pub fn is_isometry(&self) -> bool {
        let basis: Vec<DivisorClass> = (0..RANK).map(basis_vector).collect();
        let images: Vec<DivisorClass> = basis.iter().map(|b| self.apply(b)).collect();
        (0..RANK).all(|i| {
            (i..RANK).all(|j| images[i].intersect(&images[j]) == basis[i].intersect(&basis[j]))
        })
    }

    pub fn determinant(&self) -> Rational {
        let mut m: Vec<Vec<Rational>> = self.matrix.iter().map(|r| r.to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..RANK {
            let Some(p) = (col..RANK).find(|&r| !m[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            for r in col + 1..RANK {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &m[col][col];
                let (top, bottom) = m.split_at_mut(r);
                for (dst, src) in bottom[0].iter_mut().zip(top[col].iter()).skip(col) {
                    *dst -= &factor * src;
                }
            }
        }
        det
    }
}

fn basis_vector(j: usize) -> DivisorClass {
    if j == 0 {
        DivisorClass::hyperplane()
    } else {
        DivisorClass::exceptional(j)
    }
}

mod matrix_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &[[Rational; RANK]; RANK],
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(crate::rational::to_string).collect())
            .collect();
        rows.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<[[Rational; RANK]; RANK], D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(de)?;
        if rows.len() != RANK || rows.iter().any(|r| r.len() != RANK) {
            return Err(serde::de::Error::custom("expected a 10x10 matrix"));
        }
        let mut out: [[Rational; RANK]; RANK] =
            std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        for (i, r) in rows.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                out[i][j] = crate::rational::parse(s).map_err(serde::de::Error::custom)?;
            }
        }
        Ok(out)
    }
}

/// All integral classes with `C² = −1`, `C·K = −1` and H-degree in `0..=max_h_degree`,
/// found by direct search over multiplicity vectors.
///
/// For fixed degree `h` the multiplicities `b_i = −e_i` satisfy `Σb_i = 3h − 1` and
/// `Σb_i² = h² + 1`, which bounds every `|b_i|`.
pub fn enumerate_minus_one_classes(max_h_degree: i64) -> Result<Vec<DivisorClass>> {
    if max_h_degree < 0 {
        return Err(Error::InvalidInput(format!(
            "degree bound must be nonnegative, got {max_h_degree}"
        )));
    }
    let mut out: Vec<DivisorClass> = (0..=max_h_degree)
        .into_par_iter()
        .flat_map_iter(|h| {
            multiplicity_vectors(3 * h - 1, h * h + 1)
                .into_iter()
                .map(move |b| DivisorClass::from_ints(h, b.map(|x| -x)))
        })
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// Integer vectors of length 9 with the given sum and sum of squares.
fn multiplicity_vectors(sum: i64, sum_sq: i64) -> Vec<[i64; NUM_POINTS]> {
    fn rec(
        i: usize,
        cur: &mut [i64; NUM_POINTS],
        rem_sum: i64,
        rem_sq: i64,
        bound: i64,
        out: &mut Vec<[i64; NUM_POINTS]>,
    ) {
        let slots = (NUM_POINTS - i) as i64;
        if slots == 0 {
            if rem_sum == 0 && rem_sq == 0 {
                out.push(*cur);
            }
            return;
        }
        // Cauchy–Schwarz: (Σ b)² ≤ slots · Σ b²
        if rem_sq < 0 || rem_sum * rem_sum > slots * rem_sq {
            return;
        }
        for b in -bound..=bound {
            cur[i] = b;
            rec(i + 1, cur, rem_sum - b, rem_sq - b * b, bound, out);
        }
    }
    let bound = sum_sq.max(0).sqrt();
    let mut out = Vec::new();
    rec(0, &mut [0; NUM_POINTS], sum, sum_sq, bound, &mut out);
    out
}

fn degree_of(d: &DivisorClass) -> Option<i64> {
    if d.h().is_integer() {
        d.h().to_integer().to_i64()
    } else {
        None
    }
}

/// Breadth-first closure of `start` under the nine generator reflections,
/// restricted to H-degree `0..=max_h_degree`. Intermediate classes may leave the
/// window by up to [`MAX_DEGREE_SHIFT`] before being dropped.
pub fn weyl_orbit(start: &DivisorClass, max_h_degree: i64) -> Result<Vec<DivisorClass>> {
    Ok(orbit_with_words(start, max_h_degree)?
        .into_keys()
        .collect_sorted())
}

trait CollectSorted {
    fn collect_sorted(self) -> Vec<DivisorClass>;
}

impl<I: Iterator<Item = DivisorClass>> CollectSorted for I {
    fn collect_sorted(self) -> Vec<DivisorClass> {
        let mut v: Vec<DivisorClass> = self.collect();
        v.sort_by(|a, b| a.canonical_cmp(b));
        v
    }
}

/// Like [`weyl_orbit`], but records for each class a shortest word `w` in the
/// generators (by index into [`root_basis`]) with `apply_word(w, start) = class`.
pub fn orbit_with_words(
    start: &DivisorClass,
    max_h_degree: i64,
) -> Result<BTreeMap<DivisorClass, Vec<usize>>> {
    if max_h_degree < 0 {
        return Err(Error::InvalidInput(format!(
            "degree bound must be nonnegative, got {max_h_degree}"
        )));
    }
    if !start.is_integral() {
        return Err(Error::InvalidInput(format!("{start} is not integral")));
    }
    let roots = root_basis();
    let lo = -MAX_DEGREE_SHIFT;
    let hi = max_h_degree + MAX_DEGREE_SHIFT;
    let in_frontier_window =
        |d: &DivisorClass| degree_of(d).is_some_and(|h| (lo..=hi).contains(&h));

    let mut words: HashMap<DivisorClass, Vec<usize>> = HashMap::new();
    let mut frontier: Vec<DivisorClass> = Vec::new();
    if in_frontier_window(start) {
        words.insert(start.clone(), Vec::new());
        frontier.push(start.clone());
    }
    while !frontier.is_empty() {
        let candidates: Vec<(DivisorClass, DivisorClass, usize)> = frontier
            .par_iter()
            .flat_map_iter(|d| {
                roots
                    .iter()
                    .enumerate()
                    .map(move |(g, beta)| (reflect(beta, d), d.clone(), g))
            })
            .collect();
        let mut next = BTreeSet::new();
        for (img, parent, g) in candidates {
            if words.contains_key(&img) || !in_frontier_window(&img) {
                continue;
            }
            let mut w = words[&parent].clone();
            w.push(g);
            words.insert(img.clone(), w);
            next.insert(img);
        }
        frontier = next.into_iter().collect();
        frontier.sort_by(|a, b| a.canonical_cmp(b));
    }
    Ok(words
        .into_iter()
        .filter(|(d, _)| degree_of(d).is_some_and(|h| (0..=max_h_degree).contains(&h)))
        .collect())
}

/// Orbit type of an extremal ray of the nef cone of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NefOrbit {
    FiberOrbit,
    HOrbit,
    HminusE1Orbit,
    NotExtremalNef,
}

/// Classifies by the pair `(D², D·F)`, which every isometry fixing `F` preserves.
pub fn classify_nef_extremal(d: &DivisorClass) -> NefOrbit {
    let sq = d.square();
    let fd = d.fiber_degree();
    let f = DivisorClass::fiber();
    if sq.is_zero() && fd.is_zero() {
        if !d.is_zero() && d.is_multiple_of(&f) && d.h().is_positive() {
            return NefOrbit::FiberOrbit;
        }
        return NefOrbit::NotExtremalNef;
    }
    match (sq, fd) {
        (s, f) if s == int(1) && f == int(3) => NefOrbit::HOrbit,
        (s, f) if s.is_zero() && f == int(2) => NefOrbit::HminusE1Orbit,
        _ => NefOrbit::NotExtremalNef,
    }
}

/// Number of classes per H-degree, keyed by degree.
pub fn counts_by_degree(classes: &[DivisorClass]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for c in classes {
        *out.entry(c.h().to_string()).or_insert(0) += 1;
    }
    out
}
