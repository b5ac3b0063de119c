//! Multiple-preamble detection for grant-free access.

mod detect;
mod dictionary;
mod sets;
mod trial;

pub use detect::{crossamb_detect, crossamb_scores, ost_detect, ost_scores, top_k, OstMode};
pub use dictionary::{build_observation_matrix, build_with_sets, ObservationMatrix};
pub use sets::DelayDopplerSets;
pub use trial::{
    draw_access_trial, noise_variance_for_snr, simulate_access_trial, AccessChannelModel,
    AccessTrial,
};

use crate::arith::gcd;
use crate::dd::DDGrid;
use crate::error::{Error, Result};
use rand::seq::index::sample;

/// `count` roots coprime to `MN` whose pairwise differences are also
/// coprime to `MN`, so every pair has a flat cross-ambiguity. Candidates are
/// visited in a seeded random order and kept greedily; the result is sorted.
pub fn draw_preamble_roots(grid: &DDGrid, count: usize, seed: u64) -> Result<Vec<i64>> {
    let mn = grid.mn() as i64;
    let pool: Vec<i64> = (1..mn).filter(|&u| gcd(u, mn) == 1).collect();
    let mut rng = crate::rng_from_seed(seed);
    let order = sample(&mut rng, pool.len(), pool.len());
    let mut roots: Vec<i64> = Vec::with_capacity(count);
    for i in order {
        if roots.len() == count {
            break;
        }
        let u = pool[i];
        if roots.iter().all(|&w| gcd(u - w, mn) == 1) {
            roots.push(u);
        }
    }
    if roots.len() < count {
        return Err(Error::InvalidParameter(format!(
            "found only {} roots with pairwise differences coprime to MN={mn}",
            roots.len()
        )));
    }
    roots.sort_unstable();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_are_pairwise_compatible() {
        let g = DDGrid::new(31, 37, 30e3).unwrap();
        let r = draw_preamble_roots(&g, 16, 1).unwrap();
        assert_eq!(r.len(), 16);
        for (i, &a) in r.iter().enumerate() {
            assert_eq!(gcd(a, 1147), 1);
            for &b in &r[i + 1..] {
                assert_eq!(gcd(a - b, 1147), 1);
            }
        }
        assert_eq!(r, draw_preamble_roots(&g, 16, 1).unwrap());
        // residues mod 31 must be distinct and nonzero
        assert!(draw_preamble_roots(&g, 31, 1).is_err());
    }
}
