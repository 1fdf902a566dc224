use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{half_plane_distance, MoebiusMatrix, Word};
use crate::error::{Error, Result};

/// Fuchsian signature `(g; m₁, …, m_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u32,
    pub periods: Vec<u32>,
}

impl Signature {
    pub fn new(genus: u32, periods: Vec<u32>) -> Self {
        Self { genus, periods }
    }
}

/// Finite presentation of a cocompact Fuchsian group with a matrix
/// realisation of each generator. The first `periods.len()` generators are
/// the elliptic ones, in period order.
#[derive(Clone, Debug)]
pub struct FuchsianPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
    signature: Signature,
    matrices: Vec<MoebiusMatrix>,
}

const RELATOR_TOL: f64 = 1e-6;

impl FuchsianPresentation {
    pub fn new(
        names: Vec<String>,
        relators: Vec<Word>,
        signature: Signature,
        matrices: Vec<MoebiusMatrix>,
    ) -> Result<Self> {
        if names.iter().any(|n| n.chars().count() != 1) {
            return Err(Error::argument("generator names must be single characters"));
        }
        if matrices.len() != names.len() {
            return Err(Error::argument(format!(
                "{} generators but {} matrices",
                names.len(),
                matrices.len()
            )));
        }
        if signature.periods.len() > names.len() {
            return Err(Error::argument("more periods than generators"));
        }
        if signature.periods.iter().any(|&m| m < 2) {
            return Err(Error::argument("periods must be at least 2"));
        }
        let matrices: Vec<MoebiusMatrix> = matrices
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.with_word(Word::generator(i)))
            .collect();
        let pres = Self {
            names,
            relators,
            signature,
            matrices,
        };
        pres.check_matrices()?;
        Ok(pres)
    }

    fn check_matrices(&self) -> Result<()> {
        for (i, &m) in self.signature.periods.iter().enumerate() {
            let p = self.matrices[i].pow(m as i64);
            if !p.approx_eq(&MoebiusMatrix::identity(), RELATOR_TOL) {
                return Err(Error::argument(format!(
                    "generator {} does not have order {m} as a matrix",
                    self.names[i]
                )));
            }
        }
        for r in &self.relators {
            let e = self.evaluate(r);
            if !e.approx_eq(&MoebiusMatrix::identity(), RELATOR_TOL) {
                return Err(Error::argument(format!(
                    "relator {} evaluates to {e}, not ±I",
                    r.format(&self.names)
                )));
            }
        }
        for (i, m) in self.matrices.iter().enumerate() {
            let t = m.trace().abs();
            if (t - 2.0).abs() <= super::CLASSIFY_EPS && !m.is_identity() {
                return Err(Error::Unsupported(format!(
                    "generator {} is parabolic; only cocompact groups are handled",
                    self.names[i]
                )));
            }
        }
        Ok(())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn matrices(&self) -> &[MoebiusMatrix] {
        &self.matrices
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.names)
    }

    /// Matrix of a word, carrying the word.
    pub fn evaluate(&self, w: &Word) -> MoebiusMatrix {
        let mut m = MoebiusMatrix::identity().with_word(Word::empty());
        for l in w.letters() {
            let g = &self.matrices[l.gen];
            m = m.mul(&if l.inverse { g.inverse() } else { g.clone() });
        }
        m
    }

    /// Same group with extra relators (for enumerating finite quotients).
    pub fn with_extra_relators(&self, extra: Vec<Word>) -> Self {
        let mut p = self.clone();
        p.relators.extend(extra);
        p
    }

    /// Period generator index and period, in order.
    pub fn period_generators(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.signature.periods.iter().copied().enumerate()
    }
}

/// The von Dyck group `⟨x,y,z | xᵖ, y^q, zʳ, xyz⟩` realised by rotations
/// about the vertices of a hyperbolic triangle with angles `π/p, π/q, π/r`.
/// The `z` vertex sits at `i` (the disc origin).
pub fn triangle_group(p: u32, q: u32, r: u32) -> Result<FuchsianPresentation> {
    if p < 2 || q < 2 || r < 2 {
        return Err(Error::argument("triangle group periods must be at least 2"));
    }
    let (pf, qf, rf) = (p as f64, q as f64, r as f64);
    // exact comparison of 1/p + 1/q + 1/r with 1: qr + pr + pq vs pqr
    let (pu, qu, ru) = (p as u64, q as u64, r as u64);
    let lhs = qu * ru + pu * ru + pu * qu;
    let rhs = pu * qu * ru;
    if lhs >= rhs {
        let kind = if lhs == rhs { "Euclidean" } else { "spherical" };
        return Err(Error::argument(format!(
            "({p},{q},{r}) is {kind}; hyperbolic triangle groups need 1/p+1/q+1/r < 1"
        )));
    }

    let (alpha, beta, gamma) = (PI / pf, PI / qf, PI / rf);
    // side Z–X is opposite the angle at Y
    let cosh_zx = (beta.cos() + alpha.cos() * gamma.cos()) / (alpha.sin() * gamma.sin());
    let d_zx = cosh_zx.acosh();

    let refl_axis = [-1.0, 0.0, 0.0, 1.0];
    let rot = |phi: f64| -> [f64; 4] {
        let (s, c) = (phi / 2.0).sin_cos();
        [c, s, -s, c]
    };
    let mul = |a: [f64; 4], b: [f64; 4]| -> [f64; 4] {
        [
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ]
    };
    // Reflections compose as ordinary matrix products (real entries).
    let reflect_through = |shift: f64, phi: f64| -> [f64; 4] {
        let t = [(shift / 2.0).exp(), 0.0, 0.0, (-shift / 2.0).exp()];
        let ti = [(-shift / 2.0).exp(), 0.0, 0.0, (shift / 2.0).exp()];
        mul(mul(mul(mul(t, rot(phi)), refl_axis), rot(-phi)), ti)
    };

    let m1 = refl_axis;
    for (s_shift, s_phi, s_psi) in [
        (1.0, 1.0, 1.0),
        (1.0, 1.0, -1.0),
        (1.0, -1.0, 1.0),
        (1.0, -1.0, -1.0),
        (-1.0, 1.0, 1.0),
        (-1.0, 1.0, -1.0),
        (-1.0, -1.0, 1.0),
        (-1.0, -1.0, -1.0),
    ] {
        let m3 = reflect_through(0.0, s_phi * gamma);
        let m2 = reflect_through(s_shift * d_zx, s_psi * alpha);
        let x = mul(m1, m2);
        let y = mul(m2, m3);
        let z = mul(m3, m1);
        // sides 2 and 3 must meet at angle π/q
        if ((y[0] + y[3]).abs() - 2.0 * beta.cos()).abs() > 1e-9 {
            continue;
        }
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let relators = vec![
            Word::power(0, p as i64),
            Word::power(1, q as i64),
            Word::power(2, r as i64),
            Word::from_letters(
                [0, 1, 2]
                    .into_iter()
                    .map(|g| super::Letter::new(g, false)),
            ),
        ];
        let mats = [x, y, z]
            .into_iter()
            .map(|e| MoebiusMatrix::from_entries_unchecked(e))
            .collect();
        if let Ok(pres) =
            FuchsianPresentation::new(names, relators, Signature::new(0, vec![p, q, r]), mats)
        {
            return Ok(pres);
        }
    }
    Err(Error::Internal(format!(
        "could not realise the ({p},{q},{r}) triangle"
    )))
}

/// Vertex, edge-midpoint and face-centre of the fundamental triangle of a
/// triangle group, as fixed points in the upper half-plane of `z`, `x`, `y`.
pub fn triangle_vertices(pres: &FuchsianPresentation) -> Option<[num_complex::Complex64; 3]> {
    let fixed = |m: &MoebiusMatrix| -> Option<num_complex::Complex64> {
        let [a, b, c, d] = m.entries();
        if c.abs() < 1e-15 {
            return None;
        }
        // c z² + (d − a) z − b = 0, upper root
        let disc = num_complex::Complex64::new((d - a) * (d - a) + 4.0 * b * c, 0.0).sqrt();
        let z1 = (num_complex::Complex64::new(a - d, 0.0) + disc) / (2.0 * c);
        let z2 = (num_complex::Complex64::new(a - d, 0.0) - disc) / (2.0 * c);
        Some(if z1.im > 0.0 { z1 } else { z2 })
    };
    let m = pres.matrices();
    if m.len() < 3 {
        return None;
    }
    Some([fixed(&m[2])?, fixed(&m[0])?, fixed(&m[1])?])
}

/// Largest distance from the `z` vertex to the other two triangle vertices;
/// every point of the plane lies within this distance of the orbit of the
/// `z` vertex.
pub fn covering_radius(pres: &FuchsianPresentation) -> Option<f64> {
    let [vz, vx, vy] = triangle_vertices(pres)?;
    Some(half_plane_distance(vz, vx).max(half_plane_distance(vz, vy)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::{classify_and_length, IsometryClass};

    #[test]
    fn two_three_seven_relators_hold() {
        let g = triangle_group(2, 3, 7).unwrap();
        let names = g.names().to_vec();
        let rel: Vec<String> = g.relators().iter().map(|r| r.format(&names)).collect();
        assert_eq!(rel, ["x^2", "y^3", "z^7", "xyz"]);
        for r in g.relators() {
            let e = g.evaluate(r);
            assert!(e.approx_eq(&MoebiusMatrix::identity(), 1e-6), "{e}");
        }
        // z fixes i
        let z = &g.matrices()[2];
        let w = z.apply(num_complex::Complex64::i());
        assert!((w - num_complex::Complex64::i()).norm() < 1e-12);
        for m in g.matrices() {
            assert_eq!(classify_and_length(m).0, IsometryClass::Elliptic);
        }
    }

    #[test]
    fn euclidean_triple_rejected() {
        let err = triangle_group(2, 4, 4).unwrap_err();
        assert!(err.to_string().contains("Euclidean"));
        assert!(triangle_group(2, 3, 5).is_err());
    }

    #[test]
    fn two_three_eight_signature() {
        let g = triangle_group(2, 3, 8).unwrap();
        assert_eq!(g.signature(), &Signature::new(0, vec![2, 3, 8]));
    }

    #[test]
    fn triangle_side_lengths() {
        let g = triangle_group(2, 3, 7).unwrap();
        let [vz, vx, vy] = triangle_vertices(&g).unwrap();
        // right angle at x: cosh(zx) = cos(π/3)/sin(π/7)
        let zx = half_plane_distance(vz, vx);
        assert!((zx.cosh() - (PI / 3.0).cos() / (PI / 7.0).sin()).abs() < 1e-9);
        // circumradius of the equilateral face: cosh = cot(π/3)cot(π/7)
        let zy = half_plane_distance(vz, vy);
        assert!((zy.cosh() - 1.0 / (PI / 3.0).tan() / (PI / 7.0).tan()).abs() < 1e-9);
    }
}
