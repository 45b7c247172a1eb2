//! Linearization-type integrals through the moment functional, and the
//! difference systems they satisfy.
//!
//! `I(𝒏) = 𝓛(∏_j p_{n_j}(λ_j x))` with `λ_m = 1` by default.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Signed;

use crate::combi::star::{star_injections, star_partitions, star_permutations, FreeBoxPosition};
use crate::combi::{family_rule, weighted_sum, BoxedGroundSet, EnumerationCaps, Stat};
use crate::error::{Error, Result};
use crate::families::{binom_q, FamilyKind, FamilySpec, PrefactorRule};
use crate::moments::{stirling2_row, MomentFunctional};
use crate::scalar::{falling_factorial_poly, pochhammer, GaussianRational as Q, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<usize>,
    scalings: Vec<Q>,
}

impl MultiIndex {
    /// All scalings equal to 1.
    pub fn new(entries: &[usize]) -> Self {
        MultiIndex {
            entries: entries.to_vec(),
            scalings: vec![Q::one(); entries.len()],
        }
    }

    pub fn with_scalings(entries: &[usize], scalings: &[Q]) -> Result<Self> {
        if entries.len() != scalings.len() {
            return Err(Error::InvalidIndex(format!(
                "{} entries but {} scalings",
                entries.len(),
                scalings.len()
            )));
        }
        Ok(MultiIndex {
            entries: entries.to_vec(),
            scalings: scalings.to_vec(),
        })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn scalings(&self) -> &[Q] {
        &self.scalings
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn is_unscaled(&self) -> bool {
        self.scalings.iter().all(Q::is_one)
    }

    fn check(&self, j: usize) -> Result<()> {
        if j >= self.len() {
            return Err(Error::InvalidIndex(format!(
                "box {j} out of range for an index of length {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// `𝒏` with entry `j` increased by one.
    pub fn plus(&self, j: usize) -> Result<Self> {
        self.check(j)?;
        let mut out = self.clone();
        out.entries[j] += 1;
        Ok(out)
    }

    /// `𝒏` with entry `j` decreased by one; rejects a negative entry.
    pub fn minus(&self, j: usize) -> Result<Self> {
        self.check(j)?;
        if self.entries[j] == 0 {
            return Err(Error::InvalidIndex(format!("entry {j} is already 0")));
        }
        let mut out = self.clone();
        out.entries[j] -= 1;
        Ok(out)
    }

    /// Same index with the pairs `(n_j, λ_j)` reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        MultiIndex {
            entries: perm.iter().map(|&i| self.entries[i]).collect(),
            scalings: perm.iter().map(|&i| self.scalings[i].clone()).collect(),
        }
    }
}

/// How the extra power of `x` enters a generalized moment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XMode {
    None,
    Monomial,
    Falling,
}

impl XMode {
    fn poly(self, n0: usize) -> Poly {
        match self {
            XMode::None => Poly::one(),
            XMode::Monomial => Poly::monomial(n0),
            XMode::Falling => falling_factorial_poly(n0),
        }
    }
}

/// A family's functional with caches of its polynomials and of the values
/// computed so far.
#[derive(Debug)]
pub struct Linearizer {
    functional: MomentFunctional,
    polys: RefCell<Vec<Poly>>,
    values: RefCell<HashMap<MultiIndex, Q>>,
}

impl Linearizer {
    pub fn new(f: FamilySpec) -> Self {
        Linearizer {
            functional: MomentFunctional::new(f),
            polys: RefCell::new(vec![Poly::one()]),
            values: RefCell::new(HashMap::new()),
        }
    }

    pub fn family(&self) -> &FamilySpec {
        self.functional.family()
    }

    pub fn functional(&self) -> &MomentFunctional {
        &self.functional
    }

    pub fn poly(&self, n: usize) -> Result<Poly> {
        if self.polys.borrow().len() <= n {
            *self.polys.borrow_mut() = self.family().polynomials(n)?;
        }
        Ok(self.polys.borrow()[n].clone())
    }

    /// `∏_j p_{n_j}(λ_j x)`.
    pub fn product(&self, idx: &MultiIndex) -> Result<Poly> {
        let mut acc = Poly::one();
        for (n, lam) in idx.entries.iter().zip(&idx.scalings) {
            let p = self.poly(*n)?;
            let p = if lam.is_one() { p } else { p.scale_arg(lam) };
            acc = &acc * &p;
        }
        Ok(acc)
    }

    /// `I(𝒏) = 𝓛(∏_j p_{n_j}(λ_j x))`.
    pub fn value(&self, idx: &MultiIndex) -> Result<Q> {
        if let Some(v) = self.values.borrow().get(idx) {
            return Ok(v.clone());
        }
        let v = self.functional.apply(&self.product(idx)?)?;
        self.values.borrow_mut().insert(idx.clone(), v.clone());
        Ok(v)
    }

    /// `I(𝒏)` where a negative entry (from `I_j^−` at `n_j = 0`) gives 0.
    fn value_or_zero(&self, idx: Result<MultiIndex>) -> Result<Q> {
        match idx {
            Ok(i) => self.value(&i),
            Err(Error::InvalidIndex(_)) => Ok(Q::zero()),
            Err(e) => Err(e),
        }
    }

    /// `𝓛(x-part · ∏ p_{n_j}(λ_j x))` without any prefactor.
    pub fn with_x(&self, n0: usize, mode: XMode, idx: &MultiIndex) -> Result<Q> {
        let p = &mode.poly(n0) * &self.product(idx)?;
        self.functional.apply(&p)
    }
}

pub fn linearization(f: &FamilySpec, idx: &MultiIndex) -> Result<Q> {
    Linearizer::new(f.clone()).value(idx)
}

fn sign(total: usize) -> Q {
    if total % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// The functional value converted to the combinatorial normalization:
/// identity for most families, `(−1)^Σn_j` for Meixner.
pub fn prefactor_adjusted(f: &FamilySpec, idx: &MultiIndex, value: Q) -> Q {
    match f.prefactor_rule() {
        PrefactorRule::Identity => value,
        PrefactorRule::MeixnerSign => sign(idx.total()) * value,
    }
}

/// The parameter point at which the combinatorial sum must be evaluated to
/// match [`prefactor_adjusted`]: `c ↦ 1/c` for Meixner, unchanged otherwise.
pub fn combinatorial_family(f: &FamilySpec) -> Result<FamilySpec> {
    match f.prefactor_rule() {
        PrefactorRule::Identity => Ok(f.clone()),
        PrefactorRule::MeixnerSign => {
            let c = f.param("c");
            let inv = c
                .inv()
                .ok_or_else(|| Error::DegenerateParameter("c = 0".into()))?;
            f.with_param("c", inv)
        }
    }
}

/// Exhaustive weighted sum over the family's object class on `[𝒏]`, at the
/// family's own parameters.
pub fn combinatorial_value(f: &FamilySpec, idx: &MultiIndex, caps: &EnumerationCaps) -> Result<Q> {
    let rule = family_rule(f, idx.scalings())?;
    weighted_sum(&BoxedGroundSet::new(idx.entries()), &rule, caps)
}

/// Both sides of the fundamental identity: the prefactor-adjusted functional
/// value and the combinatorial sum at the matching parameter point.
pub fn fundamental_sides(
    f: &FamilySpec,
    idx: &MultiIndex,
    caps: &EnumerationCaps,
) -> Result<(Q, Q)> {
    let lhs = prefactor_adjusted(f, idx, linearization(f, idx)?);
    let rhs = combinatorial_value(&combinatorial_family(f)?, idx, caps)?;
    Ok((lhs, rhs))
}

/// Generalized moment with an extra factor `x^{n0}` or `(x)_{n0}`.
///
/// Meixner carries `(−1)^Σn_j c^{−n0} (1−c)^{n0}`; the family's mass factor
/// is absorbed by `μ_0 = 1`. Other families carry no prefactor.
pub fn generalized_moment_product(
    f: &FamilySpec,
    n0: usize,
    mode: XMode,
    idx: &MultiIndex,
) -> Result<Q> {
    let raw = Linearizer::new(f.clone()).with_x(n0, mode, idx)?;
    Ok(generalized_prefactor(f, n0, idx.total()) * raw)
}

fn generalized_prefactor(f: &FamilySpec, n0: usize, total: usize) -> Q {
    match f.kind() {
        FamilyKind::Meixner => {
            let c = f.param("c");
            let one = Q::one();
            sign(total)
                * c.inv().expect("validated c ≠ 0").pow(n0 as i64)
                * (&one - c).pow(n0 as i64)
        }
        _ => Q::one(),
    }
}

/// The combinatorial side of [`generalized_moment_product`]:
///
/// * Laguerre, `x^{n0}`: `Σ_{𝔖*(n0,𝒏)} (α+1)^cyc`
/// * Meixner, `(x)_{n0}`: `Σ_{𝔖*(n0,𝒏)} β^cyc c^{−exc_b}` with `S_0` last
/// * Meixner, `x^{n0}`: `Σ_{𝔖*(n0,𝒏)} β^cyc c^{−exc}` with `S_0` first
/// * Charlier, `(x)_{n0}`: `Σ_{𝒫*(n0,𝒏)} a^bl`
pub fn generalized_combinatorial(
    f: &FamilySpec,
    n0: usize,
    mode: XMode,
    idx: &MultiIndex,
    caps: &EnumerationCaps,
) -> Result<Q> {
    if !idx.is_unscaled() {
        return Err(Error::NotAvailable("scaled generalized moments".into()));
    }
    let sizes = idx.entries();
    let one = Q::one();
    match (f.kind(), mode) {
        (FamilyKind::Laguerre, XMode::Monomial) => {
            let d = star_permutations(n0, sizes, FreeBoxPosition::First, &[Stat::Cyc], caps)?;
            Ok(d.evaluate(&[f.param("alpha") + &one], None))
        }
        (FamilyKind::Meixner, XMode::Falling) => {
            let d = star_permutations(
                n0,
                sizes,
                FreeBoxPosition::Last,
                &[Stat::Cyc, Stat::ExcB],
                caps,
            )?;
            let inv_c = f.param("c").inv().expect("validated c ≠ 0");
            Ok(d.evaluate(&[f.param("beta").clone(), inv_c], None))
        }
        (FamilyKind::Meixner, XMode::Monomial) => {
            let d = star_permutations(
                n0,
                sizes,
                FreeBoxPosition::First,
                &[Stat::Cyc, Stat::Exc],
                caps,
            )?;
            let inv_c = f.param("c").inv().expect("validated c ≠ 0");
            Ok(d.evaluate(&[f.param("beta").clone(), inv_c], None))
        }
        (FamilyKind::Charlier, XMode::Falling) => {
            let d = star_partitions(n0, sizes, &[Stat::Bl], caps)?;
            Ok(d.evaluate(&[f.param("a").clone()], None))
        }
        _ => Err(Error::NotAvailable(format!(
            "no combinatorial model for {} with this x-mode",
            f.name()
        ))),
    }
}

/// Checks that two families can form a mixed integral and returns
/// `N = α − β` when it is a nonnegative integer.
fn mixed_pair(f_a: &FamilySpec, f_b: &FamilySpec) -> Result<(&'static str, Option<usize>)> {
    let key = match (f_a.kind(), f_b.kind()) {
        (FamilyKind::Laguerre, FamilyKind::Laguerre) => "alpha",
        (FamilyKind::Meixner, FamilyKind::Meixner) => {
            if f_a.param("c") != f_b.param("c") {
                return Err(Error::IncompatibleFamilies(
                    "Meixner pair must share c".into(),
                ));
            }
            "beta"
        }
        _ => {
            return Err(Error::IncompatibleFamilies(format!(
                "{} with {}",
                f_a.name(),
                f_b.name()
            )))
        }
    };
    let diff = f_a.param(key) - f_b.param(key);
    let n = if diff.is_real() && diff.re().is_integer() && !diff.re().is_negative() {
        usize::try_from(diff.re().to_integer()).ok()
    } else {
        None
    };
    Ok((key, n))
}

/// `W` (Laguerre pair, `x^m`) or `Y` (Meixner pair, `(x)_m`) with the
/// definitions' prefactors. The functional is `f_a`'s; the second group of
/// polynomials uses `f_b`'s recurrence.
pub fn mixed_linearization(
    f_a: &FamilySpec,
    f_b: &FamilySpec,
    m: usize,
    idx_a: &[usize],
    idx_b: &[usize],
) -> Result<Q> {
    mixed_pair(f_a, f_b)?;
    let la = Linearizer::new(f_a.clone());
    let lb = Linearizer::new(f_b.clone());
    let is_meixner = matches!(f_a.kind(), FamilyKind::Meixner);
    let mode = if is_meixner { XMode::Falling } else { XMode::Monomial };
    let p = &(&mode.poly(m) * &la.product(&MultiIndex::new(idx_a))?)
        * &lb.product(&MultiIndex::new(idx_b))?;
    let raw = la.functional().apply(&p)?;
    let total = idx_a.iter().sum::<usize>() + idx_b.iter().sum::<usize>();
    Ok(generalized_prefactor(f_a, m, total) * raw)
}

/// Combinatorial side of [`mixed_linearization`] over `𝔖*_N`, `N = α − β`:
/// `Σ (α+1)^cyc` for `W`, `Σ α^cyc c^{−exc_b}` for `Y`.
pub fn mixed_combinatorial(
    f_a: &FamilySpec,
    f_b: &FamilySpec,
    m: usize,
    idx_a: &[usize],
    idx_b: &[usize],
    caps: &EnumerationCaps,
) -> Result<Q> {
    let (key, n) = mixed_pair(f_a, f_b)?;
    let big_n = n.ok_or_else(|| {
        Error::Domain("the combinatorial model needs α − β to be a nonnegative integer".into())
    })?;
    let one = Q::one();
    if key == "alpha" {
        let d = star_injections(m, idx_a, idx_b, big_n, &[Stat::Cyc], caps)?;
        Ok(d.evaluate(&[f_a.param("alpha") + &one], None))
    } else {
        let d = star_injections(m, idx_a, idx_b, big_n, &[Stat::Cyc, Stat::ExcB], caps)?;
        let inv_c = f_a.param("c").inv().expect("validated c ≠ 0");
        Ok(d.evaluate(&[f_a.param("beta").clone(), inv_c], None))
    }
}

/// Both sides of an identity together with the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub label: String,
    pub holds: bool,
    pub lhs: Q,
    pub rhs: Q,
}

impl Report {
    pub fn new(label: impl Into<String>, lhs: Q, rhs: Q) -> Self {
        Report {
            label: label.into(),
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// The symmetric difference system
///
/// ```text
/// I_j^+/v_j − I_k^+/v_k = (B_{n_j}/v_j − B_{n_k}/v_k) I − C_{n_j}/v_j I_j^− + C_{n_k}/v_k I_k^−
/// ```
///
/// with `v_j = A_{n_j} λ_j`.
pub fn check_difference_system(
    lin: &Linearizer,
    idx: &MultiIndex,
    j: usize,
    k: usize,
) -> Result<Report> {
    if j == k {
        return Err(Error::InvalidIndex("j and k must differ".into()));
    }
    idx.check(j)?;
    idx.check(k)?;
    let f = lin.family();
    let side = |t: usize| -> Result<(Q, Q, Q)> {
        let n = idx.entries[t];
        let (a, b, c) = f.recurrence_coeffs(n)?;
        let v = &a * &idx.scalings[t];
        let inv_v = v.inv().ok_or_else(|| {
            Error::DivisionByZero(format!("v_{} = A_{n}·λ_{} vanishes", t + 1, t + 1))
        })?;
        let plus = lin.value(&idx.plus(t)?)?;
        let minus = lin.value_or_zero(idx.minus(t))?;
        Ok((
            &plus * &inv_v,
            &b * &inv_v,
            &c * &inv_v * &minus,
        ))
    };
    let (pj, bj, cj) = side(j)?;
    let (pk, bk, ck) = side(k)?;
    let i = lin.value(idx)?;
    let lhs = pj - pk;
    let rhs = (bj - bk) * i - cj + ck;
    Ok(Report::new(
        format!("difference system at {:?}, j={}, k={}", idx.entries, j + 1, k + 1),
        lhs,
        rhs,
    ))
}

/// The one-box recurrence obtained by expanding `p_1(x) p_{n_j}(λ_j x)`:
///
/// ```text
/// I(1, 𝒏) = A_0/(λ_j A_{n_j}) I_j^+ + [B_0 − A_0 B_{n_j}/(A_{n_j} λ_j)] I + A_0 C_{n_j}/(A_{n_j} λ_j) I_j^−
/// ```
pub fn check_one_box(lin: &Linearizer, idx: &MultiIndex, j: usize) -> Result<Report> {
    idx.check(j)?;
    let f = lin.family();
    let (a0, b0, _) = f.recurrence_coeffs(0)?;
    let n = idx.entries[j];
    let (a, b, c) = f.recurrence_coeffs(n)?;
    let denom = (&a * &idx.scalings[j])
        .inv()
        .ok_or_else(|| Error::DivisionByZero(format!("λ_{} A_{n} vanishes", j + 1)))?;
    let mut with_one = MultiIndex::new(&[1]);
    with_one.entries.extend_from_slice(&idx.entries);
    with_one.scalings.extend_from_slice(&idx.scalings);
    let lhs = lin.value(&with_one)?;
    let rhs = &a0 * &denom * lin.value(&idx.plus(j)?)?
        + (&b0 - &(&a0 * &b * &denom)) * lin.value(idx)?
        + &a0 * &c * &denom * lin.value_or_zero(idx.minus(j))?;
    Ok(Report::new(
        format!("one-box recurrence at {:?}, j={}", idx.entries, j + 1),
        lhs,
        rhs,
    ))
}

/// Boundary conditions for `m` boxes, scalings `lambdas` (the last must be 1):
///
/// * `I_j^+(0,…,0,n) = λ_j C_1 A_0/A_1 δ_{n,1} + B_0 (1 − λ_j) δ_{n,0}` for `n ∈ {0,1}`, `j < m`
/// * `I(0,…,0) = 1`
/// * `I(𝒏) = 0` whenever `Σ_{j<m} n_j < n_m`, scanned over entries `≤ grid`.
pub fn check_boundary(lin: &Linearizer, lambdas: &[Q], grid: usize) -> Result<Vec<Report>> {
    let m = lambdas.len();
    if m < 2 {
        return Err(Error::InvalidIndex("boundary conditions need m ≥ 2".into()));
    }
    if !lambdas[m - 1].is_one() {
        return Err(Error::InvalidIndex("λ_m must be 1".into()));
    }
    let f = lin.family();
    let (a0, b0, _) = f.recurrence_coeffs(0)?;
    let (a1, _, c1) = f.recurrence_coeffs(1)?;
    let one = Q::one();
    let mut out = Vec::new();
    let zero_idx = MultiIndex::with_scalings(&vec![0; m], lambdas)?;
    out.push(Report::new("I(0,…,0) = 1", lin.value(&zero_idx)?, one.clone()));
    for j in 0..m - 1 {
        for n in 0..=1usize {
            let mut e = vec![0; m];
            e[j] = 1;
            e[m - 1] = n;
            let idx = MultiIndex::with_scalings(&e, lambdas)?;
            let lam = &lambdas[j];
            let expected = if n == 1 {
                lam * &c1 * &a0 / &a1
            } else {
                &b0 * &(&one - lam)
            };
            out.push(Report::new(
                format!("I_{}^+(0,…,0,{n})", j + 1),
                lin.value(&idx)?,
                expected,
            ));
        }
    }
    // Odometer over {0..=grid}^m.
    let mut e = vec![0usize; m];
    loop {
        let head: usize = e[..m - 1].iter().sum();
        if head < e[m - 1] {
            let idx = MultiIndex::with_scalings(&e, lambdas)?;
            out.push(Report::new(
                format!("I({e:?}) = 0"),
                lin.value(&idx)?,
                Q::zero(),
            ));
        }
        let mut r = 0;
        while r < m && e[r] == grid {
            e[r] = 0;
            r += 1;
        }
        if r == m {
            break;
        }
        e[r] += 1;
    }
    Ok(out)
}

/// The closed form `cⁿ (1−c)^{−n} binom(n,k) (β+k)_{n−k} (−1)^k` for the
/// coefficients of `M_k(x; β, c)`. Recombined, these give the falling
/// factorial `(x)_n` rather than `x^n`; see [`connection_coefficients`].
pub fn connection_coefficients_printed(beta: &Q, c: &Q, n: usize) -> Result<Vec<Q>> {
    let one = Q::one();
    if c.is_one() {
        return Err(Error::DegenerateParameter("c = 1".into()));
    }
    let scale = c.pow(n as i64) / (&one - c).pow(n as i64);
    Ok((0..=n)
        .map(|k| {
            let s = if k % 2 == 0 { one.clone() } else { -one.clone() };
            &scale * &binom_q(n, k) * pochhammer(&(beta + &Q::from_int(k as i64)), n - k) * s
        })
        .collect())
}

fn combine(coeffs: &[Q], basis: &[Poly]) -> Poly {
    coeffs
        .iter()
        .zip(basis)
        .fold(Poly::zero(), |acc, (a, p)| &acc + &p.scale(a))
}

/// Coefficients `c(n,k)` with `x^n = Σ_k c(n,k) M_k(x; β, c)`, obtained from
/// `x^n = Σ_j S(n,j) (x)_j` and the falling-factorial expansion above. The
/// result is checked against `x^n` before it is returned.
pub fn connection_coefficients(beta: &Q, c: &Q, n: usize) -> Result<Vec<Q>> {
    if c.is_one() {
        return Err(Error::DegenerateParameter("c = 1".into()));
    }
    let f = FamilySpec::meixner(beta.clone(), c.clone())?;
    let basis = f.polynomials(n)?;
    let mut coeffs = vec![Q::zero(); n + 1];
    for (j, s) in stirling2_row(n).into_iter().enumerate() {
        let s = Q::from_bigint(s);
        if s.is_zero() {
            continue;
        }
        for (k, v) in connection_coefficients_printed(beta, c, j)?.into_iter().enumerate() {
            coeffs[k] += &s * &v;
        }
    }
    if combine(&coeffs, &basis) != Poly::monomial(n) {
        return Err(Error::DegenerateParameter(format!(
            "connection coefficients failed to rebuild x^{n}"
        )));
    }
    Ok(coeffs)
}

/// Recombines the printed coefficients and returns the polynomial they
/// produce, for comparison with `x^n` and `(x)_n`.
pub fn connection_rebuild_printed(beta: &Q, c: &Q, n: usize) -> Result<Poly> {
    let f = FamilySpec::meixner(beta.clone(), c.clone())?;
    Ok(combine(&connection_coefficients_printed(beta, c, n)?, &f.polynomials(n)?))
}

/// The birth–death difference system with the bracket printed as
/// `b_{n_j} d_{n_j}/λ_j − b_{n_k} d_{n_k}/λ_k`; the form consistent with the
/// recurrence has `(b_{n_j} + d_{n_j})/λ_j − (b_{n_k} + d_{n_k})/λ_k`.
pub fn birth_death_system(
    lin: &Linearizer,
    idx: &MultiIndex,
    j: usize,
    k: usize,
    printed: bool,
) -> Result<Report> {
    let FamilyKind::BirthDeath(bd) = lin.family().kind() else {
        return Err(Error::NotAvailable("not a birth–death family".into()));
    };
    let side = |t: usize| -> Result<(Q, Q, Q)> {
        let n = idx.entries[t];
        let lam = &idx.scalings[t];
        let (b, d) = (bd.b_at(n), bd.d_at(n));
        let bracket = if printed { &b * &d } else { &b + &d };
        Ok((
            &b / lam * lin.value(&idx.plus(t)?)?,
            bracket / lam,
            &d / lam * lin.value_or_zero(idx.minus(t))?,
        ))
    };
    let (pj, bj, dj) = side(j)?;
    let (pk, bk, dk) = side(k)?;
    let lhs = pj - pk;
    let rhs = (bj - bk) * lin.value(idx)? - dj + dk;
    Ok(Report::new(
        format!(
            "birth–death system ({}) at {:?}, j={}, k={}",
            if printed { "printed" } else { "consistent" },
            idx.entries,
            j + 1,
            k + 1
        ),
        lhs,
        rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{from_birth_death, BirthDeathSpec};
    use crate::scalar::gr;

    fn caps() -> EnumerationCaps {
        EnumerationCaps::default()
    }

    #[test]
    fn frozen_linearizations() {
        for alpha in [gr(0, 1), gr(1, 2), gr(3, 1)] {
            let f = FamilySpec::laguerre(alpha.clone()).unwrap();
            let v = linearization(&f, &MultiIndex::new(&[2, 2])).unwrap();
            assert_eq!(v, gr(2, 1) * (&alpha + gr(1, 1)) * (&alpha + gr(2, 1)));
        }
        let q = gr(2, 7);
        let f = FamilySpec::q_hermite(q.clone()).unwrap();
        assert_eq!(linearization(&f, &MultiIndex::new(&[2, 2])).unwrap(), gr(1, 1) + q);
        let a = gr(3, 5);
        let f = FamilySpec::q_charlier(a.clone(), gr(1, 2), gr(7, 3), gr(1, 4)).unwrap();
        assert_eq!(linearization(&f, &MultiIndex::new(&[1, 1])).unwrap(), a);
        assert_eq!(linearization(&f, &MultiIndex::new(&[0, 0, 0])).unwrap(), gr(1, 1));
    }

    #[test]
    fn combinatorial_examples() {
        let (b, c) = (gr(2, 1), gr(1, 3));
        let f = FamilySpec::meixner(b.clone(), c.clone()).unwrap();
        let v = combinatorial_value(&f, &MultiIndex::new(&[2, 2]), &caps()).unwrap();
        let c2 = &c * &c;
        assert_eq!(v, gr(2, 1) * &b * &b * &c2 + gr(2, 1) * &b * &c2);
        let (lhs, rhs) = fundamental_sides(&f, &MultiIndex::new(&[2, 1, 1]), &caps()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generalized_examples() {
        let f = FamilySpec::laguerre(gr(0, 1)).unwrap();
        let v = generalized_moment_product(&f, 1, XMode::Monomial, &MultiIndex::new(&[1, 1]))
            .unwrap();
        assert_eq!(v, gr(3, 1));
        let alpha = gr(2, 5);
        let f = FamilySpec::laguerre(alpha.clone()).unwrap();
        let v =
            generalized_moment_product(&f, 1, XMode::Monomial, &MultiIndex::new(&[1])).unwrap();
        assert_eq!(v, alpha + gr(1, 1));
        let a = gr(4, 3);
        let f = FamilySpec::charlier(a.clone()).unwrap();
        let v = generalized_moment_product(&f, 1, XMode::Falling, &MultiIndex::new(&[])).unwrap();
        assert_eq!(v, a);
    }

    #[test]
    fn generalized_meixner_both_modes() {
        let f = FamilySpec::meixner(gr(3, 2), gr(2, 5)).unwrap();
        for sizes in [&[][..], &[1], &[1, 1], &[2, 1], &[2, 2]] {
            for n0 in 0..3 {
                let idx = MultiIndex::new(sizes);
                for mode in [XMode::Falling, XMode::Monomial] {
                    let lhs = generalized_moment_product(&f, n0, mode, &idx).unwrap();
                    let rhs = generalized_combinatorial(&f, n0, mode, &idx, &caps()).unwrap();
                    assert_eq!(lhs, rhs, "{mode:?} n0={n0} {sizes:?}");
                }
            }
        }
    }

    #[test]
    fn mixed_examples() {
        let alpha = gr(3, 2);
        let fa = FamilySpec::laguerre(alpha.clone()).unwrap();
        let same = mixed_linearization(&fa, &fa, 0, &[1], &[1]).unwrap();
        assert_eq!(same, linearization(&fa, &MultiIndex::new(&[1, 1])).unwrap());
        let fb = FamilySpec::laguerre(gr(-7, 3)).unwrap();
        assert_eq!(mixed_linearization(&fa, &fb, 1, &[1], &[]).unwrap(), alpha + gr(1, 1));

        let fa = FamilySpec::laguerre(gr(1, 1)).unwrap();
        let fb = FamilySpec::laguerre(gr(0, 1)).unwrap();
        let w = mixed_linearization(&fa, &fb, 0, &[1], &[1]).unwrap();
        assert_eq!(w, mixed_combinatorial(&fa, &fb, 0, &[1], &[1], &caps()).unwrap());
        assert!(w.is_positive_real());
    }

    #[test]
    fn difference_system_examples() {
        let lin = Linearizer::new(FamilySpec::hermite());
        let r = check_difference_system(&lin, &MultiIndex::new(&[2, 1]), 0, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, gr(-2, 1));
        let lin = Linearizer::new(FamilySpec::q_laguerre(gr(1, 2), gr(1, 3)).unwrap());
        assert!(check_difference_system(&lin, &MultiIndex::new(&[2, 2]), 0, 1).unwrap().holds);
        assert!(check_one_box(&lin, &MultiIndex::new(&[2, 1]), 1).unwrap().holds);
    }

    #[test]
    fn boundary_examples() {
        let lin = Linearizer::new(FamilySpec::charlier(gr(2, 3)).unwrap());
        for r in check_boundary(&lin, &[gr(1, 1), gr(1, 1)], 3).unwrap() {
            assert!(r.holds, "{}", r.label);
        }
        let lin = Linearizer::new(FamilySpec::laguerre(gr(1, 2)).unwrap());
        for r in check_boundary(&lin, &[gr(2, 3), gr(5, 1), gr(1, 1)], 2).unwrap() {
            assert!(r.holds, "{}", r.label);
        }
        let lin = Linearizer::new(FamilySpec::hermite());
        assert_eq!(lin.value(&MultiIndex::new(&[1, 0, 2])).unwrap(), gr(0, 1));
    }

    #[test]
    fn birth_death_forms() {
        let bd = BirthDeathSpec::new(vec![gr(1, 1), gr(1, 1)], vec![gr(0, 1), gr(2, 1)]);
        let lin = Linearizer::new(from_birth_death(bd).unwrap());
        let idx = MultiIndex::new(&[2, 1, 1]);
        assert!(birth_death_system(&lin, &idx, 0, 1, false).unwrap().holds);
        assert!(!birth_death_system(&lin, &idx, 0, 1, true).unwrap().holds);
    }

    #[test]
    fn connection_examples() {
        let (b, c) = (gr(3, 4), gr(1, 3));
        let v = connection_coefficients(&b, &c, 1).unwrap();
        let s = &c / (gr(1, 1) - &c);
        assert_eq!(v, vec![&s * &b, -s]);
        assert_eq!(connection_coefficients(&b, &c, 0).unwrap(), vec![gr(1, 1)]);
        assert!(connection_coefficients(&gr(1, 1), &gr(1, 2), 6).is_ok());
        // The printed closed form rebuilds (x)_n.
        for n in 0..5 {
            assert_eq!(
                connection_rebuild_printed(&b, &c, n).unwrap(),
                falling_factorial_poly(n)
            );
        }
        assert_ne!(connection_rebuild_printed(&b, &c, 2).unwrap(), Poly::monomial(2));
        assert!(matches!(
            connection_coefficients(&b, &gr(1, 1), 2),
            Err(Error::DegenerateParameter(_))
        ));
    }
}
