//! Weight rules as data: a list of `(statistic, base)` factors plus an
//! optional per-box factor. Objects are first aggregated by their exponent
//! vector, so one enumeration serves every parameter sample.

use std::collections::BTreeMap;

use super::{
    for_each_matching, for_each_partition, for_each_permutation, partition_stats,
    permutation_stats, BoxedGroundSet, EnumerationCaps, Filter, ObjectKind, StatRecord,
};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::scalar::GaussianRational as Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stat {
    Cr,
    Bl,
    Sg,
    Tr,
    /// Blocks of size at least two.
    NonSingletonBl,
    Cyc,
    Exc,
    Wex,
    Drop,
    Fix,
    Ninv,
    ExcB,
    DropB,
}

impl Stat {
    pub fn read(self, r: &StatRecord) -> usize {
        match self {
            Stat::Cr => r.cr,
            Stat::Bl => r.bl,
            Stat::Sg => r.sg,
            Stat::Tr => r.tr,
            Stat::NonSingletonBl => r.bl - r.sg,
            Stat::Cyc => r.cyc,
            Stat::Exc => r.exc,
            Stat::Wex => r.wex,
            Stat::Drop => r.drop,
            Stat::Fix => r.fix,
            Stat::Ninv => r.ninv,
            Stat::ExcB => r.exc_b,
            Stat::DropB => r.drop_b,
        }
    }
}

/// Per-box statistic feeding a per-box factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxStat {
    /// `f_i = #{j ∈ S_i : σ(j) ∈ S_i}` with factor `(λ_i − 1)^{f_i} λ_i^{n_i − f_i}`.
    Fix,
    /// `hom_i` with factor `(λ_i² − 1)^{hom_i} λ_i^{n_i − 2 hom_i}`.
    Hom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxFactor {
    pub stat: BoxStat,
    pub lambdas: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRule {
    pub kind: ObjectKind,
    pub filter: Filter,
    pub factors: Vec<(Stat, Q)>,
    pub box_factor: Option<BoxFactor>,
}

impl WeightRule {
    pub fn new(kind: ObjectKind, filter: Filter, factors: Vec<(Stat, Q)>) -> Self {
        WeightRule {
            kind,
            filter,
            factors,
            box_factor: None,
        }
    }

    pub fn stats(&self) -> Vec<Stat> {
        self.factors.iter().map(|(s, _)| *s).collect()
    }

    pub fn bases(&self) -> Vec<Q> {
        self.factors.iter().map(|(_, b)| b.clone()).collect()
    }
}

/// Object counts keyed by exponent vector: the chosen statistics, followed
/// by the per-box statistic of every box when one is requested.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatDistribution {
    pub stats: Vec<Stat>,
    pub box_stat: Option<BoxStat>,
    pub box_sizes: Vec<usize>,
    pub counts: BTreeMap<Vec<usize>, u128>,
}

impl StatDistribution {
    pub fn empty(stats: &[Stat], box_stat: Option<BoxStat>, box_sizes: &[usize]) -> Self {
        StatDistribution {
            stats: stats.to_vec(),
            box_stat,
            box_sizes: box_sizes.to_vec(),
            counts: BTreeMap::new(),
        }
    }

    pub fn key(&self, r: &StatRecord) -> Vec<usize> {
        let mut key: Vec<usize> = self.stats.iter().map(|s| s.read(r)).collect();
        match self.box_stat {
            Some(BoxStat::Fix) => key.extend_from_slice(&r.fix_per_box),
            Some(BoxStat::Hom) => key.extend_from_slice(&r.hom_per_box),
            None => {}
        }
        key
    }

    pub fn add(&mut self, key: Vec<usize>, multiplicity: u128) {
        if multiplicity > 0 {
            *self.counts.entry(key).or_insert(0) += multiplicity;
        }
    }

    pub fn record(&mut self, r: &StatRecord) {
        let key = self.key(r);
        self.add(key, 1);
    }

    /// Number of objects (with multiplicity).
    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// `Σ count · ∏ base^exponent`, with the per-box factors when present.
    pub fn evaluate(&self, bases: &[Q], box_lambdas: Option<&[Q]>) -> Q {
        assert_eq!(bases.len(), self.stats.len(), "one base per statistic");
        let one = Q::one();
        let mut total = Q::zero();
        for (key, &count) in &self.counts {
            let mut w = Q::from_bigint(count.into());
            for (b, &e) in bases.iter().zip(key) {
                w *= b.pow(e as i64);
            }
            if let (Some(stat), Some(lams)) = (self.box_stat, box_lambdas) {
                for (i, lam) in lams.iter().enumerate() {
                    let e = key[self.stats.len() + i] as i64;
                    let n = self.box_sizes[i] as i64;
                    w *= match stat {
                        BoxStat::Fix => (lam - &one).pow(e) * lam.pow(n - e),
                        BoxStat::Hom => (lam * lam - &one).pow(e) * lam.pow(n - 2 * e),
                    };
                }
            }
            total += w;
        }
        total
    }

    /// Generating polynomial in the single statistic `stats[0]`:
    /// entry `k` is the number of objects with value `k`.
    pub fn marginal(&self, which: usize) -> Vec<u128> {
        let mut out = Vec::new();
        for (key, &c) in &self.counts {
            let k = key[which];
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] += c;
        }
        out
    }
}

/// Enumerates the class once and aggregates it by statistic values.
pub fn stat_distribution(
    g: &BoxedGroundSet,
    kind: ObjectKind,
    filter: Filter,
    stats: &[Stat],
    box_stat: Option<BoxStat>,
    caps: &EnumerationCaps,
) -> Result<StatDistribution> {
    let mut d = StatDistribution::empty(stats, box_stat, g.sizes());
    match kind {
        ObjectKind::Matching => {
            for_each_matching(g, filter, caps, |m| d.record(&partition_stats(m, g)))?
        }
        ObjectKind::Partition => {
            for_each_partition(g, filter, caps, |p| d.record(&partition_stats(p, g)))?
        }
        ObjectKind::Permutation => {
            for_each_permutation(g, filter, caps, |s| d.record(&permutation_stats(s, g)))?
        }
    }
    Ok(d)
}

pub fn weighted_sum(g: &BoxedGroundSet, rule: &WeightRule, caps: &EnumerationCaps) -> Result<Q> {
    let box_stat = rule.box_factor.as_ref().map(|b| b.stat);
    let d = stat_distribution(g, rule.kind, rule.filter, &rule.stats(), box_stat, caps)?;
    Ok(d.evaluate(
        &rule.bases(),
        rule.box_factor.as_ref().map(|b| b.lambdas.as_slice()),
    ))
}

/// The object class and weight whose sum equals the family's linearization
/// coefficient (after the family's prefactor rule). `lambdas` are the
/// argument scalings; only Hermite and Laguerre accept values other than 1.
pub fn family_rule(f: &FamilySpec, lambdas: &[Q]) -> Result<WeightRule> {
    use ObjectKind::*;
    let one = Q::one();
    let scaled = lambdas.iter().any(|l| !l.is_one());
    let p = |k: &str| f.param(k).clone();
    let rule = match f.kind() {
        FamilyKind::Hermite if scaled => WeightRule {
            kind: Matching,
            filter: Filter::All,
            factors: vec![],
            box_factor: Some(BoxFactor {
                stat: BoxStat::Hom,
                lambdas: lambdas.to_vec(),
            }),
        },
        FamilyKind::Laguerre if scaled => WeightRule {
            kind: Permutation,
            filter: Filter::All,
            factors: vec![(Stat::Cyc, p("alpha") + &one)],
            box_factor: Some(BoxFactor {
                stat: BoxStat::Fix,
                lambdas: lambdas.to_vec(),
            }),
        },
        _ if scaled => {
            return Err(Error::NotAvailable(format!(
                "no combinatorial model for {} with scaled arguments",
                f.name()
            )))
        }
        FamilyKind::Hermite => WeightRule::new(Matching, Filter::Inhomogeneous, vec![]),
        FamilyKind::QHermite => {
            WeightRule::new(Matching, Filter::Inhomogeneous, vec![(Stat::Cr, p("q"))])
        }
        FamilyKind::Charlier => {
            WeightRule::new(Partition, Filter::Inhomogeneous, vec![(Stat::Bl, p("a"))])
        }
        FamilyKind::QCharlier => WeightRule::new(
            Partition,
            Filter::Inhomogeneous,
            vec![
                (Stat::Bl, p("a")),
                (Stat::Tr, p("b")),
                (Stat::Sg, p("c")),
                (Stat::Cr, p("q")),
            ],
        ),
        FamilyKind::Laguerre => WeightRule::new(
            Permutation,
            Filter::Inhomogeneous,
            vec![(Stat::Cyc, p("alpha") + &one)],
        ),
        FamilyKind::Meixner => WeightRule::new(
            Permutation,
            Filter::Inhomogeneous,
            vec![(Stat::Cyc, p("beta")), (Stat::Exc, p("c"))],
        ),
        FamilyKind::MeixnerPollaczek => {
            let d = p("delta");
            WeightRule::new(
                Permutation,
                Filter::Inhomogeneous,
                vec![
                    (Stat::Drop, &d + &Q::i()),
                    (Stat::Exc, &d - &Q::i()),
                    (Stat::Cyc, p("eta")),
                ],
            )
        }
        FamilyKind::QLaguerre => WeightRule::new(
            Permutation,
            Filter::Inhomogeneous,
            vec![(Stat::Exc, p("y")), (Stat::Cr, p("q"))],
        ),
        _ => {
            return Err(Error::NotAvailable(format!(
                "no combinatorial model for {}",
                f.name()
            )))
        }
    };
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gr;

    fn caps() -> EnumerationCaps {
        EnumerationCaps::default()
    }

    #[test]
    fn q_charlier_two_two() {
        let (a, q) = (gr(2, 3), gr(1, 5));
        let f = FamilySpec::q_charlier(a.clone(), gr(7, 1), gr(11, 1), q.clone()).unwrap();
        let rule = family_rule(&f, &[gr(1, 1), gr(1, 1)]).unwrap();
        let v = weighted_sum(&BoxedGroundSet::new(&[2, 2]), &rule, &caps()).unwrap();
        assert_eq!(v, &a * &a * (gr(1, 1) + q));
    }

    #[test]
    fn laguerre_with_scaling_kills_identity() {
        let (alpha, lam) = (gr(1, 2), gr(3, 7));
        let f = FamilySpec::laguerre(alpha.clone()).unwrap();
        let rule = family_rule(&f, &[lam.clone(), gr(1, 1)]).unwrap();
        let v = weighted_sum(&BoxedGroundSet::new(&[1, 1]), &rule, &caps()).unwrap();
        assert_eq!(v, (alpha + gr(1, 1)) * lam);
    }

    #[test]
    fn q_laguerre_two_two() {
        let (y, q) = (gr(1, 2), gr(1, 3));
        let f = FamilySpec::q_laguerre(y.clone(), q.clone()).unwrap();
        let rule = family_rule(&f, &[gr(1, 1), gr(1, 1)]).unwrap();
        let v = weighted_sum(&BoxedGroundSet::new(&[2, 2]), &rule, &caps()).unwrap();
        let one_q = gr(1, 1) + q;
        assert_eq!(v, &y * &y * &one_q * &one_q);
    }

    #[test]
    fn q_hermite_and_meixner_small_cases() {
        let q = gr(2, 9);
        let f = FamilySpec::q_hermite(q.clone()).unwrap();
        let rule = family_rule(&f, &[gr(1, 1), gr(1, 1)]).unwrap();
        let v = weighted_sum(&BoxedGroundSet::new(&[2, 2]), &rule, &caps()).unwrap();
        assert_eq!(v, gr(1, 1) + q);

        let (b, c) = (gr(5, 2), gr(1, 3));
        let f = FamilySpec::meixner(b.clone(), c.clone()).unwrap();
        let rule = family_rule(&f, &[gr(1, 1), gr(1, 1)]).unwrap();
        let v = weighted_sum(&BoxedGroundSet::new(&[2, 2]), &rule, &caps()).unwrap();
        let c2 = &c * &c;
        assert_eq!(v, gr(2, 1) * &b * &b * &c2 + gr(2, 1) * &b * &c2);
    }

    #[test]
    fn meixner_pollaczek_single_swap() {
        let (d, e) = (gr(1, 3), gr(4, 1));
        let f = FamilySpec::meixner_pollaczek(d.clone(), e.clone()).unwrap();
        let rule = family_rule(&f, &[gr(1, 1), gr(1, 1)]).unwrap();
        let v = weighted_sum(&BoxedGroundSet::new(&[1, 1]), &rule, &caps()).unwrap();
        assert_eq!(v, (&d * &d + gr(1, 1)) * e);
    }
}
