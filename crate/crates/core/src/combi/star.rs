//! Extended classes with an unrestricted box `S_0` of size `n0`.
//!
//! * `𝔖*(n0, 𝒏)`: permutations of `S_0 ∪ S_1 ∪ ⋯ ∪ S_m` with every `S_j`
//!   (`j ≥ 1`) deranged and `S_0` free.
//! * `𝒫*(n0, 𝒏)`: partitions of the same set where no block meets a box
//!   twice, and only elements of `S_0` may be singletons.
//! * `𝔖*_N`: for the mixed Laguerre/Meixner integrals; each "β" box `S_r`
//!   contributes a subset `S*_r` to the permutation and sends the rest
//!   injectively into `[N]`.

use super::{
    stat_distribution, BoxRole, BoxedGroundSet, EnumerationCaps, Filter, ObjectKind, Stat,
    StatDistribution,
};
use crate::error::{Error, Result};
use crate::scalar::{binomial, falling};

/// Where `S_0` sits in the linear order of the ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeBoxPosition {
    First,
    Last,
}

pub fn star_ground_set(n0: usize, sizes: &[usize], pos: FreeBoxPosition) -> BoxedGroundSet {
    let mut all = Vec::with_capacity(sizes.len() + 1);
    let mut roles = Vec::with_capacity(sizes.len() + 1);
    if pos == FreeBoxPosition::First {
        all.push(n0);
        roles.push(BoxRole::Free);
    }
    all.extend_from_slice(sizes);
    roles.extend(std::iter::repeat(BoxRole::Deranged).take(sizes.len()));
    if pos == FreeBoxPosition::Last {
        all.push(n0);
        roles.push(BoxRole::Free);
    }
    BoxedGroundSet::with_roles(&all, &roles).expect("lengths agree")
}

/// Statistic distribution over `𝔖*(n0, 𝒏)`.
pub fn star_permutations(
    n0: usize,
    sizes: &[usize],
    pos: FreeBoxPosition,
    stats: &[Stat],
    caps: &EnumerationCaps,
) -> Result<StatDistribution> {
    let g = star_ground_set(n0, sizes, pos);
    stat_distribution(&g, ObjectKind::Permutation, Filter::Inhomogeneous, stats, None, caps)
}

/// Statistic distribution over `𝒫*(n0, 𝒏)`.
pub fn star_partitions(
    n0: usize,
    sizes: &[usize],
    stats: &[Stat],
    caps: &EnumerationCaps,
) -> Result<StatDistribution> {
    let g = star_ground_set(n0, sizes, FreeBoxPosition::First);
    stat_distribution(&g, ObjectKind::Partition, Filter::Inhomogeneous, stats, None, caps)
}

/// Statistic distribution over `𝔖*_N(𝒏)`: `S_0` of size `m` is placed last,
/// the α-boxes `alpha_sizes` come first, then the β-boxes `beta_sizes`.
///
/// Only box-invariant statistics (`Cyc`, `ExcB`, `DropB`) are allowed, which
/// lets every subset `S*_r` of a given size be represented by one sample,
/// weighted by `binom(n_r, k) · (N)_{n_r − k}`.
pub fn star_injections(
    m: usize,
    alpha_sizes: &[usize],
    beta_sizes: &[usize],
    big_n: usize,
    stats: &[Stat],
    caps: &EnumerationCaps,
) -> Result<StatDistribution> {
    if let Some(s) = stats
        .iter()
        .find(|s| !matches!(s, Stat::Cyc | Stat::ExcB | Stat::DropB))
    {
        return Err(Error::NotAvailable(format!(
            "{s:?} depends on labels inside a box; 𝔖*_N sums use box statistics only"
        )));
    }
    let mut out = StatDistribution::empty(stats, None, &[]);
    let mut chosen = vec![0usize; beta_sizes.len()];
    loop {
        let mut mult: u128 = 1;
        for (&n, &k) in beta_sizes.iter().zip(&chosen) {
            let ways = binomial(n as i64, k as i64) * falling(big_n as i64, n - k);
            mult *= u128::try_from(ways).expect("nonnegative multiplicity");
        }
        if mult > 0 {
            let mut sizes = alpha_sizes.to_vec();
            sizes.extend_from_slice(&chosen);
            let d = star_permutations(m, &sizes, FreeBoxPosition::Last, stats, caps)?;
            for (key, c) in d.counts {
                out.add(key, c * mult);
            }
        }
        // Odometer over 0..=n_r for each β-box.
        let mut r = 0;
        while r < chosen.len() && chosen[r] == beta_sizes[r] {
            chosen[r] = 0;
            r += 1;
        }
        if r == chosen.len() {
            break;
        }
        chosen[r] += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_zero_one_one_one_is_three() {
        let d = star_permutations(
            1,
            &[1, 1],
            FreeBoxPosition::First,
            &[],
            &EnumerationCaps::default(),
        )
        .unwrap();
        assert_eq!(d.total(), 3);
    }

    #[test]
    fn free_box_partitions() {
        // 𝒫*(1, ()) = {{1}}, 𝒫*(2, ()) = {{1},{2}}.
        let caps = EnumerationCaps::default();
        assert_eq!(star_partitions(1, &[], &[Stat::Bl], &caps).unwrap().total(), 1);
        let d = star_partitions(2, &[], &[Stat::Bl], &caps).unwrap();
        assert_eq!(d.marginal(0), vec![0, 0, 1]);
    }

    #[test]
    fn injections_only_when_box_is_unused() {
        // One β-box of size 2, nothing else: S* must be empty, f is an
        // injection [2] → [N], so the count is N(N−1).
        let caps = EnumerationCaps::default();
        let d = star_injections(0, &[], &[2], 3, &[Stat::Cyc], &caps).unwrap();
        assert_eq!(d.total(), 6);
        let d = star_injections(0, &[], &[2], 1, &[Stat::Cyc], &caps).unwrap();
        assert_eq!(d.total(), 0);
    }
}
