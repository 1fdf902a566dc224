use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{frac, mat_mul, mat_vec, Mat2, Metric, Vec2, Q};
use crate::error::{Error, Result};

/// A discrete planar isometry `x ↦ P·x + t` with exact rational entries.
///
/// Coordinates live in a frame whose inner product is a [`Metric`]; the point
/// part must preserve it (`Pᵀ·G·P = G`). In the Cartesian frame this is the
/// ordinary `P·Pᵀ = I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EuclideanIsometry {
    point_part: Mat2,
    translation: Vec2,
}

impl EuclideanIsometry {
    /// Isometry in the Cartesian frame.
    pub fn new(point_part: Mat2, translation: Vec2) -> Result<Self> {
        Self::new_in(&Metric::identity(), point_part, translation)
    }

    pub fn new_in(metric: &Metric, point_part: Mat2, translation: Vec2) -> Result<Self> {
        if !metric.preserved_by(&point_part) {
            return Err(Error::argument(format!(
                "point part {} is not orthogonal for the frame metric",
                fmt_mat(&point_part)
            )));
        }
        let det = point_part[0][0] * point_part[1][1] - point_part[0][1] * point_part[1][0];
        if det.abs() != Q::one() {
            return Err(Error::argument("point part must have determinant ±1"));
        }
        Ok(Self {
            point_part,
            translation,
        })
    }

    pub fn identity() -> Self {
        Self {
            point_part: super::mat_identity(),
            translation: [Q::zero(), Q::zero()],
        }
    }

    pub fn translation_by(v: Vec2) -> Self {
        Self {
            point_part: super::mat_identity(),
            translation: v,
        }
    }

    /// Rotation by a quarter turn about the origin (Cartesian frame).
    pub fn quarter_turn() -> Self {
        let o = Q::zero();
        let l = Q::one();
        Self {
            point_part: [[o, -l], [l, o]],
            translation: [o, o],
        }
    }

    pub fn point_part(&self) -> &Mat2 {
        &self.point_part
    }

    pub fn translation(&self) -> &Vec2 {
        &self.translation
    }

    pub fn is_translation(&self) -> bool {
        self.point_part == super::mat_identity()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let p = mat_mul(&self.point_part, &other.point_part);
        let pt = mat_vec(&self.point_part, &other.translation);
        Self {
            point_part: p,
            translation: [pt[0] + self.translation[0], pt[1] + self.translation[1]],
        }
    }

    pub fn inverse(&self) -> Self {
        let m = &self.point_part;
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let inv = [
            [m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det],
        ];
        let t = mat_vec(&inv, &self.translation);
        Self {
            point_part: inv,
            translation: [-t[0], -t[1]],
        }
    }

    pub fn apply(&self, x: &Vec2) -> Vec2 {
        let p = mat_vec(&self.point_part, x);
        [p[0] + self.translation[0], p[1] + self.translation[1]]
    }

    pub fn apply_f64(&self, x: [f64; 2]) -> [f64; 2] {
        let m = self.point_part.map(|row| row.map(|q| super::to_f64(&q)));
        let t = self.translation.map(|q| super::to_f64(&q));
        [
            m[0][0] * x[0] + m[0][1] * x[1] + t[0],
            m[1][0] * x[0] + m[1][1] * x[1] + t[1],
        ]
    }

    /// Reduced-fraction entry list `(P₀₀, P₀₁, P₁₀, P₁₁, t₀, t₁)`.
    pub fn canonical_form(&self) -> [Q; 6] {
        let p = &self.point_part;
        let t = &self.translation;
        [p[0][0], p[0][1], p[1][0], p[1][1], t[0], t[1]]
    }
}

impl fmt::Display for EuclideanIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, ({}, {}))",
            fmt_mat(&self.point_part),
            self.translation[0],
            self.translation[1]
        )
    }
}

fn fmt_mat(m: &Mat2) -> String {
    format!("({},{};{},{})", m[0][0], m[0][1], m[1][0], m[1][1])
}

/// All distinct group elements reachable by words of length at most `bound`
/// in the generators and their inverses, in breadth-first order.
pub fn word_ball(generators: &[EuclideanIsometry], bound: usize) -> Vec<EuclideanIsometry> {
    let mut letters: Vec<EuclideanIsometry> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        letters.push(g.clone());
        letters.push(g.inverse());
    }
    let mut seen: BTreeSet<EuclideanIsometry> = BTreeSet::new();
    let mut out = vec![EuclideanIsometry::identity()];
    seen.insert(EuclideanIsometry::identity());
    let mut frontier = out.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for g in &frontier {
            for l in &letters {
                let h = g.compose(l);
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Parse `"n/d"` or `"n"` into an exact rational.
pub fn parse_fraction(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i128 = n
        .parse()
        .map_err(|_| Error::parse(format!("bad fraction numerator in {s:?}")))?;
    let d: i128 = d
        .parse()
        .map_err(|_| Error::parse(format!("bad fraction denominator in {s:?}")))?;
    if d == 0 {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(frac(n, d))
}

pub fn format_fraction(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
