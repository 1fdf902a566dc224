use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{int, to_f64, word_ball, EuclideanIsometry, Metric, Vec2, Q};
use crate::error::{Error, Result};

pub const DEFAULT_WORD_BOUND: usize = 8;

/// Integer 2×2 matrix; rows are generator coordinates in some basis.
pub type IntMatrix = [[i64; 2]; 2];

/// A rank-2 lattice given by two rational basis vectors in a metric frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: [Vec2; 2],
    metric: Metric,
}

/// Lengths and angle of a basis, reported as metadata.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeInvariants {
    pub len1: f64,
    pub len2: f64,
    pub angle_degrees: f64,
}

impl Lattice {
    pub fn new(b1: Vec2, b2: Vec2) -> Result<Self> {
        Self::with_metric(b1, b2, Metric::identity())
    }

    pub fn with_metric(b1: Vec2, b2: Vec2, metric: Metric) -> Result<Self> {
        let det = b1[0] * b2[1] - b1[1] * b2[0];
        if det.is_zero() {
            return Err(Error::argument("lattice basis vectors are linearly dependent"));
        }
        Ok(Self {
            basis: [b1, b2],
            metric,
        })
    }

    pub fn basis(&self) -> &[Vec2; 2] {
        &self.basis
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn determinant(&self) -> Q {
        let [a, b] = &self.basis;
        a[0] * b[1] - a[1] * b[0]
    }

    pub fn length(&self, v: &Vec2) -> f64 {
        to_f64(&self.metric.norm2(v)).sqrt()
    }

    /// Vector with integer coordinates `c` in this basis.
    pub fn combine(&self, c: [i64; 2]) -> Vec2 {
        let [a, b] = &self.basis;
        let (x, y) = (int(c[0] as i128), int(c[1] as i128));
        [x * a[0] + y * b[0], x * a[1] + y * b[1]]
    }

    pub fn invariants(&self) -> LatticeInvariants {
        let [a, b] = &self.basis;
        let len1 = self.length(a);
        let len2 = self.length(b);
        let cos = to_f64(&self.metric.dot(a, b)) / (len1 * len2);
        LatticeInvariants {
            len1,
            len2,
            angle_degrees: cos.clamp(-1.0, 1.0).acos().to_degrees(),
        }
    }

    /// True when `v` is an integer combination of the basis.
    pub fn contains(&self, v: &Vec2) -> bool {
        let [a, b] = &self.basis;
        let det = self.determinant();
        let x = (v[0] * b[1] - v[1] * b[0]) / det;
        let y = (a[0] * v[1] - a[1] * v[0]) / det;
        x.is_integer() && y.is_integer()
    }
}

/// Collect the pure translations in the word ball of the generators and
/// return a basis of the lattice they span.
pub fn translation_subgroup(generators: &[EuclideanIsometry], word_bound: usize) -> Result<Lattice> {
    translation_subgroup_in(&Metric::identity(), generators, word_bound)
}

pub fn translation_subgroup_in(
    metric: &Metric,
    generators: &[EuclideanIsometry],
    word_bound: usize,
) -> Result<Lattice> {
    let ball = word_ball(generators, word_bound);
    check_discrete(&ball)?;
    let translations: Vec<Vec2> = ball
        .iter()
        .filter(|g| g.is_translation())
        .map(|g| *g.translation())
        .collect();
    let [b1, b2] = lattice_basis(&translations).ok_or_else(|| {
        Error::argument(format!(
            "not a wallpaper group at word bound {word_bound}: translations found span rank < 2"
        ))
    })?;
    Lattice::with_metric(b1, b2, metric.clone())
}

/// Two distinct elements that move a generic probe point to within 1e-9 of
/// each other mean the group accumulates.
fn check_discrete(ball: &[EuclideanIsometry]) -> Result<()> {
    const PROBE: [f64; 2] = [0.312_734_519, 0.577_215_664];
    let mut images: Vec<([f64; 2], usize)> = ball
        .iter()
        .enumerate()
        .map(|(i, g)| (g.apply_f64(PROBE), i))
        .collect();
    images.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[j].0[0] - images[i].0[0] > 1e-9 {
                break;
            }
            let d = (images[j].0[1] - images[i].0[1]).abs();
            if d < 1e-9 && ball[images[i].1] != ball[images[j].1] {
                return Err(Error::argument(format!(
                    "non-discrete: {} and {} agree on a probe point to 1e-9",
                    ball[images[i].1], ball[images[j].1]
                )));
            }
        }
    }
    Ok(())
}

/// Basis (Hermite form) of the lattice spanned by rational vectors, or
/// `None` if the span has rank below two.
fn lattice_basis(vectors: &[Vec2]) -> Option<[Vec2; 2]> {
    let den = vectors
        .iter()
        .flat_map(|v| v.iter())
        .fold(1i128, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<[i128; 2]> = vectors
        .iter()
        .map(|v| [(v[0] * int(den)).to_integer(), (v[1] * int(den)).to_integer()])
        .collect();
    let [[a, b], [_, d]] = hermite_i128(&ints)?;
    let s = |n: i128| Q::new(n, den);
    Some([[s(a), s(b)], [s(0), s(d)]])
}

/// Hermite normal form `[[a, b], [0, d]]` with `a, d > 0`, `0 ≤ b < d`, of
/// the integer row span.
fn hermite_i128(rows: &[[i128; 2]]) -> Option<[[i128; 2]; 2]> {
    let mut pivot = [0i128, 0i128];
    for r in rows {
        if r[0] == 0 {
            continue;
        }
        if pivot[0] == 0 {
            pivot = *r;
            continue;
        }
        let e = pivot[0].extended_gcd(&r[0]);
        pivot = [
            e.x * pivot[0] + e.y * r[0],
            e.x * pivot[1] + e.y * r[1],
        ];
    }
    if pivot[0] == 0 {
        return None;
    }
    if pivot[0] < 0 {
        pivot = [-pivot[0], -pivot[1]];
    }
    let mut d = 0i128;
    for r in rows {
        let k = r[0] / pivot[0];
        d = d.gcd(&(r[1] - k * pivot[1]));
    }
    if d == 0 {
        return None;
    }
    let b = pivot[1].rem_euclid(d);
    Some([[pivot[0], b], [0, d]])
}

/// Hermite normal form of an integer sublattice of `Z²`.
pub fn hermite_rows(m: &IntMatrix) -> Option<IntMatrix> {
    let rows: Vec<[i128; 2]> = m.iter().map(|r| [r[0] as i128, r[1] as i128]).collect();
    hermite_i128(&rows).map(|h| h.map(|r| r.map(|x| x as i64)))
}

/// Lagrange–Gauss reduced basis together with the unimodular change of
/// basis `U` (rows of `U` give the reduced vectors in the input basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBasis {
    pub lattice: Lattice,
    pub transform: IntMatrix,
}

pub fn reduce_basis(l: &Lattice) -> ReducedBasis {
    let m = &l.metric;
    let [mut b1, mut b2] = l.basis;
    let mut u: [[i128; 2]; 2] = [[1, 0], [0, 1]];
    loop {
        if m.norm2(&b1) > m.norm2(&b2) {
            std::mem::swap(&mut b1, &mut b2);
            u.swap(0, 1);
        }
        let mu = (m.dot(&b1, &b2) / m.norm2(&b1)).round();
        if mu.is_zero() {
            break;
        }
        b2 = [b2[0] - mu * b1[0], b2[1] - mu * b1[1]];
        let k = mu.to_integer();
        u[1] = [u[1][0] - k * u[0][0], u[1][1] - k * u[0][1]];
        if m.norm2(&b2) >= m.norm2(&b1) {
            break;
        }
    }
    // Sign: first nonzero coordinate positive. Ties in length: larger
    // vector (lexicographically) first.
    let [u0, u1] = &mut u;
    for (b, row) in [(&mut b1, u0), (&mut b2, u1)] {
        let first = if b[0].is_zero() { b[1] } else { b[0] };
        if first.is_negative() {
            *b = [-b[0], -b[1]];
            *row = [-row[0], -row[1]];
        }
    }
    if m.norm2(&b1) == m.norm2(&b2) && b1 < b2 {
        std::mem::swap(&mut b1, &mut b2);
        u.swap(0, 1);
    }
    ReducedBasis {
        lattice: Lattice {
            basis: [b1, b2],
            metric: m.clone(),
        },
        transform: u.map(|r| r.map(|x| x as i64)),
    }
}

/// Sublattice `diag(A, B)` of the reduced basis whose shortest nonzero vector
/// is at least `min_length`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledSublattice {
    pub scale: (i64, i64),
    pub reduced: ReducedBasis,
    /// Rows generate the sublattice, in coordinates of the input basis.
    pub generators: IntMatrix,
    pub index: i64,
    pub shortest: f64,
}

pub fn sublattice_for_length(l: &Lattice, min_length: f64) -> Result<ScaledSublattice> {
    if !(min_length > 0.0) || !min_length.is_finite() {
        return Err(Error::argument("target length must be positive and finite"));
    }
    let reduced = reduce_basis(l);
    let [r1, r2] = *reduced.lattice.basis();
    let shortest_of = |a: i64, b: i64| -> f64 {
        let s1 = [r1[0] * int(a as i128), r1[1] * int(a as i128)];
        let s2 = [r2[0] * int(b as i128), r2[1] * int(b as i128)];
        let sub = Lattice {
            basis: [s1, s2],
            metric: l.metric.clone(),
        };
        let red = reduce_basis(&sub);
        sub.length(&red.lattice.basis[0])
    };
    let lambda = l.length(&r1);
    let cap = (min_length / lambda).ceil().max(1.0) as i64;
    let max_product = cap * cap;
    let mut best: Option<(i64, i64, f64)> = None;
    for a in 1..=max_product {
        for b in 1..=max_product / a {
            if let Some((ba, bb, _)) = best {
                if (a * b, a) >= (ba * bb, ba) {
                    continue;
                }
            }
            let s = shortest_of(a, b);
            if s >= min_length {
                best = Some((a, b, s));
            }
        }
    }
    let (a, b, shortest) = best.ok_or_else(|| Error::Internal("no sublattice found".into()))?;
    let u = reduced.transform;
    let generators = [
        [a * u[0][0], a * u[0][1]],
        [b * u[1][0], b * u[1][1]],
    ];
    Ok(ScaledSublattice {
        scale: (a, b),
        reduced,
        generators,
        index: a * b,
        shortest,
    })
}

/// Corners `base, base+b₁, base+b₁+b₂, base+b₂`.
pub fn fundamental_parallelogram(l: &Lattice, base: Vec2) -> [Vec2; 4] {
    let [a, b] = l.basis;
    [
        base,
        [base[0] + a[0], base[1] + a[1]],
        [base[0] + a[0] + b[0], base[1] + a[1] + b[1]],
        [base[0] + b[0], base[1] + b[1]],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::frac;

    fn v(x: i128, y: i128) -> Vec2 {
        [int(x), int(y)]
    }

    fn lat(a: Vec2, b: Vec2) -> Lattice {
        Lattice::new(a, b).unwrap()
    }

    #[test]
    fn translation_generators_give_unit_lattice() {
        let gens = [
            EuclideanIsometry::translation_by(v(1, 0)),
            EuclideanIsometry::translation_by(v(0, 1)),
        ];
        let l = translation_subgroup(&gens, 3).unwrap();
        assert_eq!(l.basis(), &[v(1, 0), v(0, 1)]);
    }

    #[test]
    fn p4_lattice_is_unimodular() {
        let gens = [
            EuclideanIsometry::quarter_turn(),
            EuclideanIsometry::translation_by(v(1, 0)),
        ];
        let l = translation_subgroup(&gens, 6).unwrap();
        assert_eq!(l.determinant().abs(), int(1));
        assert!(l.contains(&v(1, 0)));
        assert!(l.contains(&v(0, 1)));
    }

    #[test]
    fn frieze_generators_are_rank_deficient() {
        let gens = [EuclideanIsometry::translation_by(v(1, 0))];
        let err = translation_subgroup(&gens, 8).unwrap_err();
        assert!(err.to_string().contains("not a wallpaper group"));
    }

    #[test]
    fn accumulating_translations_flagged() {
        let gens = [
            EuclideanIsometry::translation_by(v(1, 0)),
            EuclideanIsometry::translation_by(v(0, 1)),
            EuclideanIsometry::translation_by([frac(1, 100_000_000_000), int(0)]),
        ];
        let err = translation_subgroup(&gens, 2).unwrap_err();
        assert!(err.to_string().contains("non-discrete"), "{err}");
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_basis(&lat(v(1, 0), v(5, 1)));
        assert_eq!(r.lattice.basis(), &[v(1, 0), v(0, 1)]);
        let r = reduce_basis(&lat(v(2, 0), v(0, 3)));
        assert_eq!(r.lattice.basis(), &[v(2, 0), v(0, 3)]);
        let r = reduce_basis(&lat(v(3, 1), v(2, 1)));
        assert_eq!(r.lattice.basis(), &[v(1, 0), v(0, 1)]);
        let u = r.transform;
        assert_eq!((u[0][0] * u[1][1] - u[0][1] * u[1][0]).abs(), 1);
    }

    #[test]
    fn sublattice_examples() {
        let unit = lat(v(1, 0), v(0, 1));
        let s = sublattice_for_length(&unit, 3.0).unwrap();
        assert_eq!((s.scale, s.index), ((3, 3), 9));
        let s = sublattice_for_length(&unit, 1.0).unwrap();
        assert_eq!((s.scale, s.index), ((1, 1), 1));
        let s = sublattice_for_length(&lat(v(2, 0), v(0, 1)), 3.0).unwrap();
        // reduced basis puts (0,1) first; B scales (2,0)
        assert_eq!(s.index, 6);
        assert!((s.shortest - 3.0).abs() < 1e-12);
        let rows: Vec<Vec2> = s
            .generators
            .iter()
            .map(|r| lat(v(2, 0), v(0, 1)).combine(*r))
            .collect();
        assert!(rows.contains(&v(4, 0)) && rows.contains(&v(0, 3)));
    }

    #[test]
    fn parallelogram_corners() {
        let c = fundamental_parallelogram(&lat(v(1, 0), v(1, 1)), v(0, 0));
        assert_eq!(c, [v(0, 0), v(1, 0), v(2, 1), v(1, 1)]);
        let c = fundamental_parallelogram(&lat(v(2, 0), v(0, 2)), v(0, 0));
        assert_eq!(c, [v(0, 0), v(2, 0), v(2, 2), v(0, 2)]);
    }

    #[test]
    fn hermite_of_diagonal_and_skew() {
        assert_eq!(hermite_rows(&[[2, 0], [0, 3]]), Some([[2, 0], [0, 3]]));
        assert_eq!(hermite_rows(&[[1, 1], [1, -1]]), Some([[1, 1], [0, 2]]));
        assert_eq!(hermite_rows(&[[1, 1], [2, 2]]), None);
    }
}
