//! Registry of orthogonal polynomial families, each given by its three-term
//! recurrence
//!
//! ```text
//! p_{n+1}(x) = (A_n x + B_n) p_n(x) − C_n p_{n−1}(x),   p_0 = 1, p_{−1} = 0.
//! ```
//!
//! Families are stored in the combinatorially normalized form (no square
//! roots): for instance Laguerre is `p_n = (−1)^n n! L_n^(α)` and q-Hermite is
//! the rescaled `x H̃_n = H̃_{n+1} + [n]_q H̃_{n−1}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, pochhammer, q_int, GaussianRational as Q, Poly};

/// Degree up to which a family's coefficients are validated on construction.
pub const DEFAULT_MAX_DEGREE: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Hermite,
    Charlier,
    Laguerre,
    Meixner,
    MeixnerPollaczek,
    QHermite,
    QCharlier,
    QLaguerre,
    AlSalamChihara,
    BirthDeath(BirthDeathSpec),
    /// Classical `H_n` (`H_{n+1} = 2x H_n − 2n H_{n−1}`), used by the
    /// multiplication formula.
    HermiteClassical,
    /// Classical `L_n^(α)`, used by the multiplication formula.
    LaguerreClassical,
}

/// How the functional value relates to the combinatorial quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefactorRule {
    Identity,
    /// Multiply by `(−1)^Σn_j`; the combinatorial side is evaluated at `c ↦ 1/c`.
    MeixnerSign,
}

/// Birth and death rates, each a polynomial in `n` with rational coefficients
/// (stored in ascending powers of `n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirthDeathSpec {
    pub b: Vec<Q>,
    pub d: Vec<Q>,
}

impl BirthDeathSpec {
    pub fn new(b: Vec<Q>, d: Vec<Q>) -> Self {
        BirthDeathSpec { b, d }
    }

    pub fn b_at(&self, n: usize) -> Q {
        Poly::from_coeffs(self.b.clone()).eval(&Q::from_int(n as i64))
    }

    pub fn d_at(&self, n: usize) -> Q {
        Poly::from_coeffs(self.d.clone()).eval(&Q::from_int(n as i64))
    }
}

/// A named family with its parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    kind: FamilyKind,
    params: BTreeMap<String, Q>,
    max_degree_validated: usize,
}

/// Parameter keys accepted by [`FamilySpec::from_name`], in CLI order.
pub fn param_keys(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "hermite" | "hermite-classical" => &[],
        "charlier" => &["a"],
        "laguerre" | "laguerre-classical" => &["alpha"],
        "meixner" => &["beta", "c"],
        "meixner-pollaczek" => &["delta", "eta"],
        "q-hermite" => &["q"],
        "q-charlier" => &["a", "b", "c", "q"],
        "q-laguerre" => &["y", "q"],
        "al-salam-chihara" => &["t1", "t2", "q"],
        _ => return None,
    })
}

/// Names of the families available through [`FamilySpec::from_name`].
pub const FAMILY_NAMES: &[&str] = &[
    "hermite",
    "charlier",
    "laguerre",
    "meixner",
    "meixner-pollaczek",
    "q-hermite",
    "q-charlier",
    "q-laguerre",
    "al-salam-chihara",
    "birth-death",
    "hermite-classical",
    "laguerre-classical",
];

impl FamilySpec {
    fn build(kind: FamilyKind, params: &[(&str, Q)]) -> Result<Self> {
        let spec = FamilySpec {
            kind,
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            max_degree_validated: DEFAULT_MAX_DEGREE,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn hermite() -> Self {
        Self::build(FamilyKind::Hermite, &[]).expect("hermite is always valid")
    }

    pub fn charlier(a: Q) -> Result<Self> {
        Self::build(FamilyKind::Charlier, &[("a", a)])
    }

    pub fn laguerre(alpha: Q) -> Result<Self> {
        Self::build(FamilyKind::Laguerre, &[("alpha", alpha)])
    }

    pub fn meixner(beta: Q, c: Q) -> Result<Self> {
        Self::build(FamilyKind::Meixner, &[("beta", beta), ("c", c)])
    }

    pub fn meixner_pollaczek(delta: Q, eta: Q) -> Result<Self> {
        Self::build(FamilyKind::MeixnerPollaczek, &[("delta", delta), ("eta", eta)])
    }

    pub fn q_hermite(q: Q) -> Result<Self> {
        Self::build(FamilyKind::QHermite, &[("q", q)])
    }

    pub fn q_charlier(a: Q, b: Q, c: Q, q: Q) -> Result<Self> {
        Self::build(
            FamilyKind::QCharlier,
            &[("a", a), ("b", b), ("c", c), ("q", q)],
        )
    }

    pub fn q_laguerre(y: Q, q: Q) -> Result<Self> {
        Self::build(FamilyKind::QLaguerre, &[("y", y), ("q", q)])
    }

    pub fn al_salam_chihara(t1: Q, t2: Q, q: Q) -> Result<Self> {
        Self::build(
            FamilyKind::AlSalamChihara,
            &[("t1", t1), ("t2", t2), ("q", q)],
        )
    }

    pub fn hermite_classical() -> Self {
        Self::build(FamilyKind::HermiteClassical, &[]).expect("always valid")
    }

    pub fn laguerre_classical(alpha: Q) -> Result<Self> {
        Self::build(FamilyKind::LaguerreClassical, &[("alpha", alpha)])
    }

    /// Builds a family from its CLI name and a parameter map.
    ///
    /// Birth–death families are not built here; use [`from_birth_death`].
    pub fn from_name(name: &str, params: &BTreeMap<String, Q>) -> Result<Self> {
        let keys = param_keys(name).ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
        let get = |k: &str| {
            params.get(k).cloned().ok_or_else(|| Error::MissingParam {
                family: name.to_string(),
                param: k.to_string(),
            })
        };
        if let Some(extra) = params.keys().find(|k| !keys.contains(&k.as_str())) {
            return Err(Error::MissingParam {
                family: name.to_string(),
                param: format!("unexpected `{extra}`"),
            });
        }
        match name {
            "hermite" => Ok(Self::hermite()),
            "hermite-classical" => Ok(Self::hermite_classical()),
            "charlier" => Self::charlier(get("a")?),
            "laguerre" => Self::laguerre(get("alpha")?),
            "laguerre-classical" => Self::laguerre_classical(get("alpha")?),
            "meixner" => Self::meixner(get("beta")?, get("c")?),
            "meixner-pollaczek" => Self::meixner_pollaczek(get("delta")?, get("eta")?),
            "q-hermite" => Self::q_hermite(get("q")?),
            "q-charlier" => Self::q_charlier(get("a")?, get("b")?, get("c")?, get("q")?),
            "q-laguerre" => Self::q_laguerre(get("y")?, get("q")?),
            "al-salam-chihara" => Self::al_salam_chihara(get("t1")?, get("t2")?, get("q")?),
            _ => Err(Error::UnknownFamily(name.to_string())),
        }
    }

    /// Same family with one parameter replaced.
    pub fn with_param(&self, key: &str, value: Q) -> Result<Self> {
        if !self.params.contains_key(key) {
            return Err(Error::MissingParam {
                family: self.name().to_string(),
                param: key.to_string(),
            });
        }
        let mut out = self.clone();
        out.params.insert(key.to_string(), value);
        out.validate()?;
        Ok(out)
    }

    /// Lowers the validated degree range (cheaper construction is not needed;
    /// this only documents intent) or raises it, revalidating.
    pub fn with_max_degree(mut self, max_degree: usize) -> Result<Self> {
        self.max_degree_validated = max_degree;
        self.validate()?;
        Ok(self)
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::Hermite => "hermite",
            FamilyKind::Charlier => "charlier",
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Meixner => "meixner",
            FamilyKind::MeixnerPollaczek => "meixner-pollaczek",
            FamilyKind::QHermite => "q-hermite",
            FamilyKind::QCharlier => "q-charlier",
            FamilyKind::QLaguerre => "q-laguerre",
            FamilyKind::AlSalamChihara => "al-salam-chihara",
            FamilyKind::BirthDeath(_) => "birth-death",
            FamilyKind::HermiteClassical => "hermite-classical",
            FamilyKind::LaguerreClassical => "laguerre-classical",
        }
    }

    pub fn params(&self) -> &BTreeMap<String, Q> {
        &self.params
    }

    /// Parameter value; panics on a key the family does not have.
    pub fn param(&self, key: &str) -> &Q {
        self.params
            .get(key)
            .unwrap_or_else(|| panic!("family {} has no parameter {key}", self.name()))
    }

    pub fn max_degree_validated(&self) -> usize {
        self.max_degree_validated
    }

    pub fn prefactor_rule(&self) -> PrefactorRule {
        match self.kind {
            FamilyKind::Meixner => PrefactorRule::MeixnerSign,
            _ => PrefactorRule::Identity,
        }
    }

    fn invalid(&self, n: usize, reason: &str) -> Error {
        Error::FamilyInvalid {
            family: self.name().to_string(),
            n,
            reason: reason.to_string(),
        }
    }

    fn validate(&self) -> Result<()> {
        for n in 0..=self.max_degree_validated {
            self.recurrence_coeffs(n)?;
        }
        Ok(())
    }

    /// `(A_n, B_n, C_n)`.
    pub fn recurrence_coeffs(&self, n: usize) -> Result<(Q, Q, Q)> {
        let nq = Q::from_int(n as i64);
        let one = Q::one();
        let (a, b, c) = match &self.kind {
            FamilyKind::Hermite => (one, Q::zero(), nq),
            FamilyKind::HermiteClassical => (Q::from_int(2), Q::zero(), Q::from_int(2) * nq),
            FamilyKind::Charlier => {
                let a = self.param("a");
                (one, -(&nq + a), a * &nq)
            }
            FamilyKind::Laguerre => {
                let al = self.param("alpha");
                let two_n = Q::from_int(2 * n as i64);
                (one.clone(), -(&two_n + al + &one), &nq * &(&nq + al))
            }
            FamilyKind::LaguerreClassical => {
                let al = self.param("alpha");
                let n1 = Q::from_int(n as i64 + 1);
                let two_n = Q::from_int(2 * n as i64);
                (
                    -(&one / &n1),
                    (&two_n + al + &one) / &n1,
                    (&nq + al) / &n1,
                )
            }
            FamilyKind::Meixner => {
                let beta = self.param("beta");
                let c = self.param("c");
                let inv_c = c.inv().ok_or_else(|| self.invalid(n, "c = 0"))?;
                (
                    &one - &inv_c,
                    beta + &nq + &nq * &inv_c,
                    &nq * &(beta + &nq - &one) * &inv_c,
                )
            }
            FamilyKind::MeixnerPollaczek => {
                // B_n = −δ(η+2n): the form forced by the generating function.
                let delta = self.param("delta");
                let eta = self.param("eta");
                let two_n = Q::from_int(2 * n as i64);
                (
                    one.clone(),
                    -(delta * &(eta + &two_n)),
                    &nq * &(eta + &nq - &one) * &(&one + &(delta * delta)),
                )
            }
            FamilyKind::QHermite => (one, Q::zero(), q_int(n, self.param("q"))),
            FamilyKind::QCharlier => {
                let (a, b, c, q) = (
                    self.param("a"),
                    self.param("b"),
                    self.param("c"),
                    self.param("q"),
                );
                let nq = q_int(n, q);
                (one, -(c + &(b * &nq)), a * &nq)
            }
            FamilyKind::QLaguerre => {
                let (y, q) = (self.param("y"), self.param("q"));
                let nq = q_int(n, q);
                (one, -(y * &q_int(n + 1, q) + &nq), y * &nq * &nq)
            }
            FamilyKind::AlSalamChihara => {
                let (t1, t2, q) = (self.param("t1"), self.param("t2"), self.param("q"));
                let qn = q.pow(n as i64);
                let c = if n == 0 {
                    Q::zero()
                } else {
                    (&one - &qn) * (&one - &(t1 * t2 * q.pow(n as i64 - 1)))
                };
                (Q::from_int(2), -((t1 + t2) * &qn), c)
            }
            FamilyKind::BirthDeath(bd) => {
                let b = bd.b_at(n);
                let d = bd.d_at(n);
                let inv_b = b
                    .inv()
                    .ok_or_else(|| self.invalid(n, "birth rate b_n = 0"))?;
                (-inv_b.clone(), (&b + &d) * &inv_b, &d * &inv_b)
            }
        };
        if a.is_zero() {
            return Err(self.invalid(n, "A_n = 0"));
        }
        Ok((a, b, c))
    }

    /// `p_0, …, p_n` generated by the recurrence. `C_0` is never used since
    /// `p_{−1} = 0`.
    pub fn polynomials(&self, n: usize) -> Result<Vec<Poly>> {
        let mut out = vec![Poly::one()];
        let mut prev = Poly::zero();
        for k in 0..n {
            let (a, b, c) = self.recurrence_coeffs(k)?;
            let cur = out[k].clone();
            let next = &(&Poly::linear(a, b) * &cur) - &prev.scale(&c);
            prev = cur;
            out.push(next);
        }
        Ok(out)
    }

    pub fn polynomial(&self, n: usize) -> Result<Poly> {
        Ok(self.polynomials(n)?.pop().expect("nonempty"))
    }

    /// `ζ_n = (A_0/A_n) C_1 ⋯ C_n`, the squared norm `𝓛(p_n²)`.
    pub fn norm_zeta(&self, n: usize) -> Result<Q> {
        let (a0, _, _) = self.recurrence_coeffs(0)?;
        let (an, _, _) = self.recurrence_coeffs(n)?;
        let mut z = &a0 / &an;
        for k in 1..=n {
            z *= self.recurrence_coeffs(k)?.2;
        }
        Ok(z)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let FamilyKind::BirthDeath(bd) = &self.kind {
            return write!(f, "(b={:?}, d={:?})", bd.b, bd.d);
        }
        if !self.params.is_empty() {
            let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Converts birth–death rates into recurrence form by rearranging
/// `−x Q_n = b_n Q_{n+1} + d_n Q_{n−1} − (b_n + d_n) Q_n`, which gives
/// `A_n = −1/b_n`, `B_n = (b_n + d_n)/b_n`, `C_n = d_n/b_n` and therefore
/// `Q_1 = (b_0 + d_0 − x)/b_0`.
pub fn from_birth_death(bd: BirthDeathSpec) -> Result<FamilySpec> {
    for n in 0..=DEFAULT_MAX_DEGREE {
        if bd.b_at(n).is_zero() {
            return Err(Error::InvalidRates(format!("b_{n} = 0")));
        }
    }
    FamilySpec::build(FamilyKind::BirthDeath(bd), &[])
}

/// Which classical family a multiplication formula refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicationFamily {
    Laguerre { alpha: Q },
    Hermite,
}

/// Coefficients `a_k` with `P_n(cx) = Σ_k a_k P_k(x)` where `P` is the
/// classical `L^(α)` or `H` basis.
///
/// Laguerre uses `(α+1)_n/(α+1)_k = (α+1+k)_{n−k}`, so no division by a
/// Pochhammer symbol is needed. The expansion is recombined and compared
/// with `P_n(cx)` before returning.
pub fn multiplication_expand(family: &MultiplicationFamily, c: &Q, n: usize) -> Result<Vec<Q>> {
    let one = Q::one();
    let mut coeffs = vec![Q::zero(); n + 1];
    let basis = match family {
        MultiplicationFamily::Laguerre { alpha } => {
            let a1 = alpha + &one;
            for (k, slot) in coeffs.iter_mut().enumerate() {
                let num = pochhammer(&(&a1 + &Q::from_int(k as i64)), n - k)
                    * c.pow(k as i64)
                    * (&one - c).pow((n - k) as i64);
                *slot = num / Q::from_bigint(factorial(n - k));
            }
            FamilySpec::laguerre_classical(alpha.clone())?.polynomials(n)?
        }
        MultiplicationFamily::Hermite => {
            for k in 0..=n / 2 {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let num = Q::from_bigint(factorial(n) * sign)
                    * (&one - &(c * c)).pow(k as i64)
                    * c.pow((n - 2 * k) as i64);
                coeffs[n - 2 * k] = num / Q::from_bigint(factorial(k) * factorial(n - 2 * k));
            }
            FamilySpec::hermite_classical().polynomials(n)?
        }
    };
    let recombined = coeffs
        .iter()
        .zip(&basis)
        .fold(Poly::zero(), |acc, (a, p)| &acc + &p.scale(a));
    if recombined != basis[n].scale_arg(c) {
        return Err(Error::DegenerateParameter(format!(
            "multiplication formula failed to reproduce P_{n}(cx) at c = {c}"
        )));
    }
    Ok(coeffs)
}

/// `binom(n, k)` as a Gaussian rational.
pub(crate) fn binom_q(n: usize, k: usize) -> Q {
    Q::from_bigint(binomial(n as i64, k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gr;

    fn poly(c: &[Q]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn frozen_recurrence_coefficients() {
        assert_eq!(
            FamilySpec::hermite().recurrence_coeffs(3).unwrap(),
            (gr(1, 1), gr(0, 1), gr(3, 1))
        );
        let ql = FamilySpec::q_laguerre(gr(1, 2), gr(1, 3)).unwrap();
        assert_eq!(ql.recurrence_coeffs(0).unwrap(), (gr(1, 1), gr(-1, 2), gr(0, 1)));
        let ch = FamilySpec::charlier(gr(2, 1)).unwrap();
        assert_eq!(ch.recurrence_coeffs(1).unwrap(), (gr(1, 1), gr(-3, 1), gr(2, 1)));
    }

    #[test]
    fn birth_death_conversion() {
        let bd = BirthDeathSpec::new(vec![gr(1, 1), gr(1, 1)], vec![gr(0, 1), gr(1, 1)]);
        let f = from_birth_death(bd).unwrap();
        assert_eq!(f.recurrence_coeffs(1).unwrap(), (gr(-1, 2), gr(3, 2), gr(1, 2)));

        let pure = from_birth_death(BirthDeathSpec::new(vec![gr(1, 1)], vec![])).unwrap();
        let (a0, b0, _) = pure.recurrence_coeffs(0).unwrap();
        assert_eq!((a0, b0), (gr(-1, 1), gr(1, 1)));

        let half = BirthDeathSpec::new(vec![gr(1, 1), gr(1, 1)], vec![gr(1, 2), gr(1, 1)]);
        let f = from_birth_death(half).unwrap();
        assert_eq!(f.recurrence_coeffs(0).unwrap(), (gr(-1, 1), gr(3, 2), gr(1, 2)));

        let zero_birth = BirthDeathSpec::new(vec![gr(-2, 1), gr(1, 1)], vec![]);
        assert!(matches!(from_birth_death(zero_birth), Err(Error::InvalidRates(_))));
    }

    #[test]
    fn low_degree_polynomials() {
        let a = gr(2, 3);
        let ch = FamilySpec::charlier(a.clone()).unwrap();
        assert_eq!(ch.polynomial(1).unwrap(), poly(&[-a, gr(1, 1)]));
        let y = gr(1, 2);
        let ql = FamilySpec::q_laguerre(y.clone(), gr(1, 3)).unwrap();
        assert_eq!(ql.polynomial(1).unwrap(), poly(&[-y, gr(1, 1)]));
        assert_eq!(
            FamilySpec::hermite().polynomial(2).unwrap(),
            poly(&[gr(-1, 1), gr(0, 1), gr(1, 1)])
        );
    }

    #[test]
    fn meixner_with_c_one_is_rejected() {
        assert!(matches!(
            FamilySpec::meixner(gr(1, 1), gr(1, 1)),
            Err(Error::FamilyInvalid { .. })
        ));
        assert!(FamilySpec::meixner(gr(1, 1), gr(0, 1)).is_err());
    }

    #[test]
    fn from_name_checks_parameters() {
        let mut p = BTreeMap::new();
        p.insert("alpha".to_string(), gr(1, 2));
        assert!(FamilySpec::from_name("laguerre", &p).is_ok());
        assert!(matches!(
            FamilySpec::from_name("charlier", &p),
            Err(Error::MissingParam { .. })
        ));
        assert!(matches!(
            FamilySpec::from_name("jacobi", &p),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn multiplication_examples() {
        let alpha = gr(1, 3);
        let lag = MultiplicationFamily::Laguerre { alpha: alpha.clone() };
        for n in 0..6 {
            let v = multiplication_expand(&lag, &gr(1, 1), n).unwrap();
            for (k, a) in v.iter().enumerate() {
                assert_eq!(a, &if k == n { gr(1, 1) } else { gr(0, 1) });
            }
        }
        let c = gr(2, 5);
        let v = multiplication_expand(&lag, &c, 1).unwrap();
        assert_eq!(v, vec![(gr(1, 1) - &c) * (&alpha + gr(1, 1)), c.clone()]);

        let v = multiplication_expand(&MultiplicationFamily::Hermite, &c, 2).unwrap();
        assert_eq!(v[0], gr(-2, 1) * (gr(1, 1) - &c * &c));
        assert_eq!(v[2], &c * &c);
        let at_zero = multiplication_expand(&MultiplicationFamily::Hermite, &gr(0, 1), 2).unwrap();
        assert_eq!(at_zero, vec![gr(-2, 1), gr(0, 1), gr(0, 1)]);
    }

    #[test]
    fn meixner_pollaczek_matches_generating_function() {
        // P_2 from the generating function [(1+δt)²+t²]^{−η/2} exp(x·arctan(t/(1+δt))):
        // x² − δ(2η+2)x + η(η+1)δ² − η(1+δ²)... checked via the two lowest steps.
        let (d, e) = (gr(1, 2), gr(3, 1));
        let f = FamilySpec::meixner_pollaczek(d.clone(), e.clone()).unwrap();
        let (_, b1, c1) = f.recurrence_coeffs(1).unwrap();
        assert_eq!(b1, -(&d * &(&e + gr(2, 1))));
        assert_eq!(c1, &e * &(gr(1, 1) + &d * &d));
    }
}
