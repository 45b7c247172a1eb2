//! The normalized moment functional `𝓛` of a family (with `μ_0 = 1`).
//!
//! Moments are sums over Motzkin paths: a level step at height `h` weighs
//! `b_h = −B_h/A_h` and a down step from height `h` weighs
//! `λ_h = C_h/(A_{h−1}A_h)`.

use std::cell::RefCell;

use crate::combi::{
    for_each_partition, for_each_permutation, partition_stats, permutation_stats,
    BoxedGroundSet, EnumerationCaps, Filter, Stat, StatDistribution,
};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::scalar::{GaussianRational as Q, Poly};

/// `μ_0..=μ_n` from level weights `b` (indexed by height) and down weights
/// `lambda` (indexed by the height the step starts from; `lambda[0]` unused).
pub fn motzkin_moments(b: &[Q], lambda: &[Q], n: usize) -> Vec<Q> {
    let mut row = vec![Q::one()];
    let mut out = vec![Q::one()];
    for k in 0..n {
        // A path at height h after k + 1 steps needs h more steps to return.
        let top = n - k - 1;
        let mut next = vec![Q::zero(); row.len().min(top) + 1];
        for (h, f) in row.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            if h + 1 <= top {
                next[h + 1] += f;
            }
            if h <= top {
                next[h] += f * &b[h];
            }
            if h > 0 && h - 1 <= top {
                next[h - 1] += f * &lambda[h];
            }
        }
        row = next;
        out.push(row[0].clone());
    }
    out
}

#[derive(Debug)]
pub struct MomentFunctional {
    family: FamilySpec,
    monic_b: RefCell<Vec<Q>>,
    monic_lambda: RefCell<Vec<Q>>,
    moments: RefCell<Vec<Q>>,
}

impl MomentFunctional {
    pub fn new(family: FamilySpec) -> Self {
        MomentFunctional {
            family,
            monic_b: RefCell::new(Vec::new()),
            monic_lambda: RefCell::new(Vec::new()),
            moments: RefCell::new(vec![Q::one()]),
        }
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    fn extend_monic(&self, upto: usize) -> Result<()> {
        let mut b = self.monic_b.borrow_mut();
        let mut lam = self.monic_lambda.borrow_mut();
        while b.len() <= upto {
            let n = b.len();
            let (a, bn, c) = self.family.recurrence_coeffs(n)?;
            b.push(-(&bn / &a));
            lam.push(if n == 0 {
                Q::zero()
            } else {
                let a_prev = self.family.recurrence_coeffs(n - 1)?.0;
                &c / &(&a_prev * &a)
            });
        }
        Ok(())
    }

    /// `b_n = −B_n/A_n`.
    pub fn monic_b(&self, n: usize) -> Result<Q> {
        self.extend_monic(n)?;
        Ok(self.monic_b.borrow()[n].clone())
    }

    /// `λ_n = C_n/(A_{n−1}A_n)` for `n ≥ 1`.
    pub fn monic_lambda(&self, n: usize) -> Result<Q> {
        self.extend_monic(n)?;
        Ok(self.monic_lambda.borrow()[n].clone())
    }

    /// `μ_n`, memoized. One pass of the path DP yields all of `μ_0..μ_n`.
    pub fn moment(&self, n: usize) -> Result<Q> {
        if let Some(m) = self.moments.borrow().get(n) {
            return Ok(m.clone());
        }
        self.extend_monic(n)?;
        let out = motzkin_moments(&self.monic_b.borrow(), &self.monic_lambda.borrow(), n);
        *self.moments.borrow_mut() = out;
        Ok(self.moments.borrow()[n].clone())
    }

    /// `Σ_k p_k μ_k`.
    pub fn apply(&self, p: &Poly) -> Result<Q> {
        let Some(d) = p.degree() else {
            return Ok(Q::zero());
        };
        self.moment(d)?;
        let mu = self.moments.borrow();
        Ok(p.coeffs().iter().zip(mu.iter()).map(|(c, m)| c * m).sum())
    }

    /// `det(μ_{i+j})_{0 ≤ i,j < order}`.
    pub fn hankel_determinant(&self, order: usize) -> Result<Q> {
        if order == 0 {
            return Ok(Q::one());
        }
        self.moment(2 * order - 2)?;
        let mu = self.moments.borrow();
        let rows = (0..order)
            .map(|i| (0..order).map(|j| mu[i + j].clone()).collect())
            .collect();
        Ok(crate::series::SquareMatrix::new(rows)?.determinant())
    }
}

/// Which printed form of a combinatorial moment formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentVariant {
    /// The form consistent with the recurrence.
    Consistent,
    /// The formula exactly as it appears in the literature; differs from
    /// `Consistent` for Meixner–Pollaczek, q-Charlier and q-Laguerre.
    AsPrinted,
}

pub(crate) fn stirling2_row(n: usize) -> Vec<num_bigint::BigInt> {
    let mut row = vec![num_bigint::BigInt::from(1u8)];
    for m in 1..=n {
        let mut next = vec![num_bigint::BigInt::from(0u8); m + 1];
        for k in 1..=m {
            let keep = if k < m { &row[k] * k } else { 0u8.into() };
            next[k] = keep + &row[k - 1];
        }
        row = next;
    }
    row
}

/// Combinatorial moment formula, evaluated by exhaustive enumeration.
///
/// * Charlier: `Σ_k S(n,k) a^k`
/// * Meixner: `Σ_{σ ∈ 𝔖_n} c^wex β^cyc / (1−c)^n`
/// * Meixner–Pollaczek: `Σ (δ+i)^drop (δ−i)^exc η^cyc δ^fix`
/// * q-Charlier: `Σ_{π ∈ Π_n} a^(bl−sg) b^tr c^sg q^cr`
/// * q-Laguerre: `Σ_{σ ∈ 𝔖_n} y^wex q^cr`
///
/// The printed variants drop `δ^fix`, use `a^bl`, and use `y^exc`
/// respectively.
pub fn moment_combinatorial(f: &FamilySpec, n: usize, variant: MomentVariant) -> Result<Q> {
    if n > 10 {
        return Err(Error::CapExceeded {
            what: "combinatorial moment order",
            size: n,
            cap: 10,
        });
    }
    let one = Q::one();
    let p = |k: &str| f.param(k).clone();
    let printed = variant == MomentVariant::AsPrinted;
    let singletons = BoxedGroundSet::new(&vec![1; n]);
    let caps = EnumerationCaps::uniform(10);
    let perms = |stats: &[Stat]| -> Result<StatDistribution> {
        let mut d = StatDistribution::empty(stats, None, &[]);
        for_each_permutation(&singletons, Filter::All, &caps, |s| {
            d.record(&permutation_stats(s, &singletons))
        })?;
        Ok(d)
    };
    match f.kind() {
        FamilyKind::Charlier => {
            let a = p("a");
            Ok(stirling2_row(n)
                .into_iter()
                .enumerate()
                .map(|(k, s)| Q::from_bigint(s) * a.pow(k as i64))
                .sum())
        }
        FamilyKind::Meixner => {
            let c = p("c");
            let d = perms(&[Stat::Wex, Stat::Cyc])?;
            let num = d.evaluate(&[c.clone(), p("beta")], None);
            let den = (&one - &c).pow(n as i64);
            num.checked_div(&den)
                .ok_or_else(|| Error::DivisionByZero("(1−c)^n with c = 1".into()))
        }
        FamilyKind::MeixnerPollaczek => {
            let delta = p("delta");
            let fix_base = if printed { one.clone() } else { delta.clone() };
            let d = perms(&[Stat::Drop, Stat::Exc, Stat::Cyc, Stat::Fix])?;
            Ok(d.evaluate(
                &[&delta + &Q::i(), &delta - &Q::i(), p("eta"), fix_base],
                None,
            ))
        }
        FamilyKind::QCharlier => {
            let blocks = if printed { Stat::Bl } else { Stat::NonSingletonBl };
            let stats = [blocks, Stat::Tr, Stat::Sg, Stat::Cr];
            let mut d = StatDistribution::empty(&stats, None, &[]);
            for_each_partition(&singletons, Filter::All, &caps, |pi| {
                d.record(&partition_stats(pi, &singletons))
            })?;
            Ok(d.evaluate(&[p("a"), p("b"), p("c"), p("q")], None))
        }
        FamilyKind::QLaguerre => {
            let exc = if printed { Stat::Exc } else { Stat::Wex };
            Ok(perms(&[exc, Stat::Cr])?.evaluate(&[p("y"), p("q")], None))
        }
        _ => Err(Error::NotAvailable(format!(
            "no combinatorial moment formula for {}",
            f.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gr;

    #[test]
    fn frozen_moments() {
        let a = gr(3, 4);
        let ch = MomentFunctional::new(FamilySpec::charlier(a.clone()).unwrap());
        assert_eq!(ch.moment(0).unwrap(), gr(1, 1));
        assert_eq!(ch.moment(2).unwrap(), &a + &a * &a);

        let y = gr(2, 5);
        let ql = MomentFunctional::new(FamilySpec::q_laguerre(y.clone(), gr(1, 3)).unwrap());
        assert_eq!(ql.moment(2).unwrap(), &y * &y + &y);
    }

    #[test]
    fn apply_examples() {
        let a = gr(5, 3);
        let ch = MomentFunctional::new(FamilySpec::charlier(a.clone()).unwrap());
        assert_eq!(ch.apply(&Poly::one()).unwrap(), gr(1, 1));
        assert_eq!(ch.apply(&Poly::linear(gr(1, 1), -a)).unwrap(), gr(0, 1));
        let he = MomentFunctional::new(FamilySpec::hermite());
        assert_eq!(he.apply(&Poly::monomial(2)).unwrap(), gr(1, 1));
        assert_eq!(he.moment(6).unwrap(), gr(15, 1));
    }

    #[test]
    fn combinatorial_examples() {
        let ch = FamilySpec::charlier(gr(1, 1)).unwrap();
        assert_eq!(moment_combinatorial(&ch, 3, MomentVariant::Consistent).unwrap(), gr(5, 1));
        let (b, c) = (gr(2, 3), gr(1, 4));
        let me = FamilySpec::meixner(b.clone(), c.clone()).unwrap();
        assert_eq!(
            moment_combinatorial(&me, 1, MomentVariant::Consistent).unwrap(),
            &b * &c / (gr(1, 1) - &c)
        );
        let qc = FamilySpec::q_charlier(gr(2, 1), gr(3, 1), gr(5, 7), gr(1, 2)).unwrap();
        assert_eq!(moment_combinatorial(&qc, 1, MomentVariant::Consistent).unwrap(), gr(5, 7));
        assert_eq!(
            moment_combinatorial(&qc, 1, MomentVariant::AsPrinted).unwrap(),
            gr(10, 7)
        );
    }

    #[test]
    fn moments_ignore_higher_coefficients() {
        let b: Vec<Q> = (1..8).map(|k| gr(k, 3)).collect();
        let lam: Vec<Q> = (0..8).map(|k| gr(2 * k + 1, 5)).collect();
        let base = motzkin_moments(&b, &lam, 5);
        let (mut b2, mut lam2) = (b.clone(), lam.clone());
        // Five steps never climb above height 2.
        b2[3] = gr(99, 1);
        lam2[3] = gr(-7, 1);
        lam2[0] = gr(42, 1);
        assert_eq!(motzkin_moments(&b2, &lam2, 5), base);
        b2[2] = gr(98, 1);
        assert_ne!(motzkin_moments(&b2, &lam2, 5), base);
    }

    #[test]
    fn stirling_rows() {
        let r: Vec<i64> = stirling2_row(4)
            .into_iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(r, vec![0, 1, 7, 6, 1]);
        assert_eq!(stirling2_row(0).len(), 1);
    }
}
