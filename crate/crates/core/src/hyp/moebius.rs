use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::{Error, Result};

/// Tolerance for trace-based classification.
pub const CLASSIFY_EPS: f64 = 1e-9;
/// Tolerance for identifying two matrices or two points.
pub const DEDUP_EPS: f64 = 1e-7;

/// Element of `PSL(2,ℝ)` acting on the upper half-plane, with the generator
/// word that produced it when known.
#[derive(Clone, Debug)]
pub struct MoebiusMatrix {
    entries: [f64; 4],
    word: Option<Word>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl MoebiusMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || (det - 1.0).abs() > 1e-9 * (1.0 + a.abs().max(d.abs()).powi(2)) {
            return Err(Error::argument(format!(
                "Möbius matrix must have unit determinant, got {det}"
            )));
        }
        Ok(Self::from_entries_unchecked([a, b, c, d]))
    }

    pub(crate) fn from_entries_unchecked(e: [f64; 4]) -> Self {
        let mut m = Self {
            entries: e,
            word: None,
        };
        m.normalise_sign();
        m
    }

    pub fn identity() -> Self {
        Self::from_entries_unchecked([1.0, 0.0, 0.0, 1.0])
    }

    fn normalise_sign(&mut self) {
        if let Some(first) = self.entries.iter().find(|x| x.abs() > CLASSIFY_EPS) {
            if *first < 0.0 {
                for x in &mut self.entries {
                    *x = -*x;
                }
            }
        }
    }

    pub fn with_word(mut self, word: Word) -> Self {
        self.word = Some(word);
        self
    }

    pub fn word(&self) -> Option<&Word> {
        self.word.as_ref()
    }

    pub fn entries(&self) -> [f64; 4] {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries[0] + self.entries[3]
    }

    /// Product `self · other`; words concatenate when both are present.
    pub fn mul(&self, other: &Self) -> Self {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        let mut m =
            Self::from_entries_unchecked([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h]);
        if let (Some(u), Some(v)) = (&self.word, &other.word) {
            m.word = Some(u.concat(v));
        }
        m
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.entries;
        let mut m = Self::from_entries_unchecked([d, -b, -c, a]);
        m.word = self.word.as_ref().map(Word::inverse);
        m
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        if base.word.is_some() {
            out.word = Some(Word::empty());
        }
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Möbius action on the upper half-plane.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let [a, b, c, d] = self.entries;
        (z * a + b) / (z * c + d)
    }

    /// Action on a point of the unit disc, via the Cayley transform.
    pub fn apply_disc(&self, w: [f64; 2]) -> [f64; 2] {
        half_plane_to_disc(self.apply(disc_to_half_plane(w)))
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&Self::identity(), CLASSIFY_EPS.sqrt())
    }

    /// Entrywise comparison of canonical-sign representatives.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
    }

    /// Lexicographic order on entries with tolerance; used to deduplicate.
    pub fn tolerant_cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.entries.iter().zip(other.entries.iter()) {
            if (x - y).abs() > DEDUP_EPS * (1.0 + x.abs().max(y.abs())) {
                return x.total_cmp(y);
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for MoebiusMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.tolerant_cmp(other) == Ordering::Equal
    }
}

impl fmt::Display for MoebiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a:.6}, {b:.6}], [{c:.6}, {d:.6}]]")
    }
}

/// Classification by trace and translation length `2·arccosh(|tr|/2)`.
pub fn classify_and_length(m: &MoebiusMatrix) -> (IsometryClass, f64) {
    let t = m.trace().abs();
    if m.is_identity() {
        (IsometryClass::Identity, 0.0)
    } else if t < 2.0 - CLASSIFY_EPS {
        (IsometryClass::Elliptic, 0.0)
    } else if t <= 2.0 + CLASSIFY_EPS {
        (IsometryClass::Parabolic, 0.0)
    } else {
        (IsometryClass::Hyperbolic, 2.0 * (t / 2.0).acosh())
    }
}

pub fn disc_to_half_plane(w: [f64; 2]) -> Complex64 {
    let w = Complex64::new(w[0], w[1]);
    Complex64::i() * (Complex64::new(1.0, 0.0) + w) / (Complex64::new(1.0, 0.0) - w)
}

pub fn half_plane_to_disc(z: Complex64) -> [f64; 2] {
    let w = (z - Complex64::i()) / (z + Complex64::i());
    [w.re, w.im]
}

/// Poincaré-disc distance.
pub fn hyperbolic_distance(p: [f64; 2], q: [f64; 2]) -> Result<f64> {
    let np = p[0] * p[0] + p[1] * p[1];
    let nq = q[0] * q[0] + q[1] * q[1];
    if !(np < 1.0) || !(nq < 1.0) {
        return Err(Error::argument("point lies on or outside the unit circle"));
    }
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let delta = (dx * dx + dy * dy) / ((1.0 - np) * (1.0 - nq));
    Ok(2.0 * delta.sqrt().asinh())
}

/// Upper half-plane distance.
pub fn half_plane_distance(z: Complex64, w: Complex64) -> f64 {
    let s = (z - w).norm() / (2.0 * (z.im * w.im).sqrt());
    2.0 * s.asinh()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_class() {
        assert_eq!(
            classify_and_length(&MoebiusMatrix::identity()),
            (IsometryClass::Identity, 0.0)
        );
    }

    #[test]
    fn diagonal_translation_length_matches_axis_displacement() {
        let e = 0.5f64.exp();
        let m = MoebiusMatrix::new(e, 0.0, 0.0, 1.0 / e).unwrap();
        let (class, len) = classify_and_length(&m);
        assert_eq!(class, IsometryClass::Hyperbolic);
        // oracle: displacement of i along the imaginary axis
        let z = Complex64::i();
        let oracle = half_plane_distance(z, m.apply(z));
        assert!((len - 1.0).abs() < 1e-9);
        assert!((oracle - 1.0).abs() < 1e-9);
    }

    #[test]
    fn trace_three() {
        let m = MoebiusMatrix::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let (class, len) = classify_and_length(&m);
        assert_eq!(class, IsometryClass::Hyperbolic);
        assert!((len - 1.924_847).abs() < 1e-6);
    }

    #[test]
    fn parabolic_and_elliptic() {
        let p = MoebiusMatrix::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(classify_and_length(&p).0, IsometryClass::Parabolic);
        let t = 0.3f64;
        let r = MoebiusMatrix::new(t.cos(), t.sin(), -t.sin(), t.cos()).unwrap();
        assert_eq!(classify_and_length(&r).0, IsometryClass::Elliptic);
    }

    #[test]
    fn determinant_enforced() {
        assert!(MoebiusMatrix::new(2.0, 0.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn canonical_sign() {
        let m = MoebiusMatrix::new(-1.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(m.entries(), [1.0, 0.0, 0.0, 1.0]);
        let m = MoebiusMatrix::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(m.entries(), [0.0, 1.0, -1.0, 0.0]);
    }

    #[test]
    fn disc_distance_examples() {
        assert_eq!(hyperbolic_distance([0.0, 0.0], [0.0, 0.0]).unwrap(), 0.0);
        let d = hyperbolic_distance([0.0, 0.0], [0.5f64.tanh(), 0.0]).unwrap();
        assert!((d - 1.0).abs() < 1e-9);
        assert!(hyperbolic_distance([1.0, 0.0], [0.0, 0.0]).is_err());
    }

    #[test]
    fn cayley_round_trip() {
        let w = [0.3, -0.45];
        let back = half_plane_to_disc(disc_to_half_plane(w));
        assert!((back[0] - w[0]).abs() < 1e-14 && (back[1] - w[1]).abs() < 1e-14);
        assert!(half_plane_to_disc(Complex64::i())[0].abs() < 1e-15);
    }
}
