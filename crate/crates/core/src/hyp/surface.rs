use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use super::Signature;
use crate::error::{Error, Result};

/// Genus of the quotient surface of a torsion-free subgroup of index `n`:
/// `g_T = (n/2)·(2g − 2 + Σ(1 − 1/mᵢ)) + 1`, evaluated exactly.
pub fn riemann_hurwitz_genus(sig: &Signature, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::argument("index must be at least 1"));
    }
    let one = Ratio::<i128>::one();
    let mut chi = Ratio::from_integer(2 * sig.genus as i128 - 2);
    for &m in &sig.periods {
        chi += one - Ratio::new(1, m as i128);
    }
    let g = Ratio::new(n as i128, 2) * chi + one;
    if !g.is_integer() || g < Ratio::zero() {
        return Err(Error::argument(format!(
            "index {n} inadmissible for a torsion-free subgroup (genus would be {g})"
        )));
    }
    g.to_integer()
        .to_u64()
        .ok_or_else(|| Error::argument("genus out of range"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourBudget {
    /// `⌊(7 + √(1 + 48g))/2⌋`, enough colours for any graph on the surface.
    pub ringel_youngs: u64,
    /// `2^(14g + 6)`: non-contractible cycles at least this long make five
    /// colours suffice.
    pub thomassen_threshold: BigUint,
}

pub fn colour_budget(genus: u64) -> Result<ColourBudget> {
    if genus == 0 {
        return Err(Error::argument("colour budget needs genus at least 1"));
    }
    let disc = 1u128 + 48 * genus as u128;
    let ringel_youngs = ((7 + disc.sqrt()) / 2) as u64;
    let thomassen_threshold = BigUint::one() << (14 * genus + 6);
    Ok(ColourBudget {
        ringel_youngs,
        thomassen_threshold,
    })
}
