//! Exact arithmetic for discrete Euclidean isometry groups: isometries,
//! translation lattices, Lagrange–Gauss reduction and sublattice scaling.

mod isometry;
mod lattice;

pub use isometry::{format_fraction, parse_fraction, word_ball, EuclideanIsometry};
pub use lattice::{
    fundamental_parallelogram, hermite_rows, reduce_basis, sublattice_for_length,
    translation_subgroup, IntMatrix, Lattice, LatticeInvariants, ReducedBasis, ScaledSublattice,
    DEFAULT_WORD_BOUND,
};

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Q = Ratio<i128>;
pub type Vec2 = [Q; 2];
pub type Mat2 = [[Q; 2]; 2];

pub fn int(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn to_f64(q: &Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn mat_identity() -> Mat2 {
    [[Q::one(), Q::zero()], [Q::zero(), Q::one()]]
}

pub(crate) fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Q::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn mat_vec(a: &Mat2, v: &Vec2) -> Vec2 {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

/// Gram matrix of the coordinate frame. Identity means Cartesian
/// coordinates; a non-identity metric lets hexagonal groups be written with
/// rational entries in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric(pub Mat2);

impl Metric {
    pub fn identity() -> Self {
        Metric(mat_identity())
    }

    /// Hexagonal frame: unit basis vectors at 120°, scaled by `scale`.
    pub fn hexagonal(scale: Q) -> Self {
        let h = -scale / int(2);
        Metric([[scale, h], [h, scale]])
    }

    pub fn is_identity(&self) -> bool {
        self.0 == mat_identity()
    }

    pub fn dot(&self, a: &Vec2, b: &Vec2) -> Q {
        let g = &self.0;
        a[0] * (g[0][0] * b[0] + g[0][1] * b[1]) + a[1] * (g[1][0] * b[0] + g[1][1] * b[1])
    }

    pub fn norm2(&self, a: &Vec2) -> Q {
        self.dot(a, a)
    }

    pub fn norm2_f64(&self, a: [f64; 2]) -> f64 {
        let g = self.0.map(|r| r.map(|q| to_f64(&q)));
        a[0] * (g[0][0] * a[0] + g[0][1] * a[1]) + a[1] * (g[1][0] * a[0] + g[1][1] * a[1])
    }

    pub fn length_f64(&self, a: [f64; 2]) -> f64 {
        self.norm2_f64(a).max(0.0).sqrt()
    }

    /// `Pᵀ·G·P == G`.
    pub fn preserved_by(&self, p: &Mat2) -> bool {
        let cols = [[p[0][0], p[1][0]], [p[0][1], p[1][1]]];
        (0..2).all(|i| (0..2).all(|j| self.dot(&cols[i], &cols[j]) == self.0[i][j]))
    }

    /// Lower-triangular factor `F` with `x ↦ F·x` mapping frame coordinates
    /// to Cartesian ones.
    pub fn cartesian_factor(&self) -> [[f64; 2]; 2] {
        let g = self.0.map(|r| r.map(|q| to_f64(&q)));
        let l00 = g[0][0].sqrt();
        let l01 = g[0][1] / l00;
        let l11 = (g[1][1] - l01 * l01).max(0.0).sqrt();
        // x_cart = (l00*x0 + l01*x1, l11*x1)
        [[l00, l01], [0.0, l11]]
    }

    pub fn to_cartesian(&self, x: [f64; 2]) -> [f64; 2] {
        let f = self.cartesian_factor();
        [f[0][0] * x[0] + f[0][1] * x[1], f[1][1] * x[1]]
    }
}

impl Default for Metric {
    fn default() -> Self {
        Metric::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagonal_metric_preserved_by_sixfold_rotation() {
        let m = Metric::hexagonal(int(1));
        // In 120°-basis coordinates the 60° rotation sends e1 -> e1+e2... check
        // via the orthogonality predicate on a known order-6 integer matrix.
        let r = [[int(1), int(-1)], [int(1), int(0)]];
        assert!(m.preserved_by(&r));
        assert!(!Metric::identity().preserved_by(&r));
    }

    #[test]
    fn cartesian_factor_reproduces_lengths() {
        let m = Metric::hexagonal(int(3));
        for v in [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [2.0, -1.0]] {
            let c = m.to_cartesian(v);
            let len = (c[0] * c[0] + c[1] * c[1]).sqrt();
            assert!((len - m.length_f64(v)).abs() < 1e-12);
        }
    }
}
