//! Multivariate formal power series truncated at a total degree, small
//! determinants over a commutative ring, and the checks that compare series
//! coefficients with functional values.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::combi::{
    for_each_permutation, permutation_stats, BoxedGroundSet, EnumerationCaps, Filter,
};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::linearize::{
    generalized_moment_product, linearization, mixed_linearization, MultiIndex, Report, XMode,
};
use crate::scalar::{binomial, factorial, GaussianRational as Q};

/// Largest matrix dimension accepted by [`SquareMatrix`].
pub const MATRIX_DIM_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    num_vars: usize,
    cap: usize,
    terms: BTreeMap<Vec<usize>, Q>,
}

impl TruncatedSeries {
    pub fn zero(num_vars: usize, cap: usize) -> Self {
        TruncatedSeries {
            num_vars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, cap: usize, c: Q) -> Self {
        let mut s = Self::zero(num_vars, cap);
        s.set(vec![0; num_vars], c);
        s
    }

    pub fn one(num_vars: usize, cap: usize) -> Self {
        Self::constant(num_vars, cap, Q::one())
    }

    /// `c · ∏ x_i^{e_i}`, or zero if the degree exceeds the cap.
    pub fn monomial(num_vars: usize, cap: usize, exps: &[usize], c: Q) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut s = Self::zero(num_vars, cap);
        s.set(exps.to_vec(), c);
        s
    }

    pub fn var(num_vars: usize, cap: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(num_vars, cap, &e, Q::one())
    }

    fn set(&mut self, exps: Vec<usize>, c: Q) {
        if exps.iter().sum::<usize>() > self.cap {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, c);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeff(&self, exps: &[usize]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.num_vars])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.terms.iter()
    }

    fn same_shape(&self, other: &Self) {
        assert_eq!(
            (self.num_vars, self.cap),
            (other.num_vars, other.cap),
            "series shapes differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let v = out.coeff(e) + c;
            out.set(e.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = Self::zero(self.num_vars, self.cap);
        if !k.is_zero() {
            for (e, c) in &self.terms {
                out.terms.insert(e.clone(), c * k);
            }
        }
        out
    }

    /// Product with terms above the cap discarded.
    pub fn mul(&self, other: &Self) -> Self {
        self.same_shape(other);
        let mut acc: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            let d1: usize = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<usize>() > self.cap {
                    continue;
                }
                let e: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncatedSeries {
            num_vars: self.num_vars,
            cap: self.cap,
            terms: acc,
        }
    }

    fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&vec![0; self.num_vars]);
        out
    }

    /// `Σ_{k=0}^{cap} coeffs[k] u^k` for a series `u` without constant term.
    fn compose(&self, u: &Self, coeffs: impl Fn(usize) -> Q) -> Self {
        let mut out = Self::zero(self.num_vars, self.cap);
        let mut power = Self::one(self.num_vars, self.cap);
        for k in 0..=self.cap {
            out = out.add(&power.scale(&coeffs(k)));
            power = power.mul(u);
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let inv_c0 = c0
            .inv()
            .ok_or_else(|| Error::NotInvertible("zero constant term".into()))?;
        // s = c0 (1 + u)  ⇒  1/s = c0⁻¹ Σ (−u)^k
        let u = self.scale(&inv_c0).without_constant();
        let series = self.compose(&u, |k| if k % 2 == 0 { Q::one() } else { -Q::one() });
        Ok(series.scale(&inv_c0))
    }

    /// `log s` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::NotInvertible(
                "logarithm needs constant term 1".into(),
            ));
        }
        let u = self.without_constant();
        Ok(self.compose(&u, |k| {
            if k == 0 {
                Q::zero()
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                Q::ratio(s, k as i64)
            }
        }))
    }

    /// `exp s` for a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain("exp needs a zero constant term".into()));
        }
        Ok(self.compose(self, |k| {
            Q::one() / Q::from_bigint(factorial(k))
        }))
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.num_vars, self.cap);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        Ok(out)
    }

    /// `s^r`; integer exponents allow any invertible constant term, other
    /// rational exponents need constant term 1 and go through `exp(r log s)`.
    pub fn pow(&self, r: &Q) -> Result<Self> {
        if !r.is_real() {
            return Err(Error::Domain("complex exponent".into()));
        }
        if r.re().is_integer() {
            let e = i64::try_from(r.re().to_integer())
                .map_err(|_| Error::Domain("exponent too large".into()))?;
            if self.constant_term().is_zero() && e < 0 {
                return Err(Error::NotInvertible("zero constant term".into()));
            }
            return self.powi(e);
        }
        if self.constant_term().is_zero() {
            return Err(Error::NotInvertible("zero constant term".into()));
        }
        self.log()?.scale(r).exp()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})·x^{e:?}"))
            .collect();
        write!(f, "[{}] (cap {})", parts.join(" + "), self.cap)
    }
}

/// Minimal ring interface for the determinant.
pub trait RingElement: Clone {
    fn zero_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl RingElement for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl RingElement for TruncatedSeries {
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(self.num_vars, self.cap)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix<T = Q> {
    rows: Vec<Vec<T>>,
}

impl<T: RingElement> SquareMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("matrix must be square and nonempty".into()));
        }
        if n > MATRIX_DIM_CAP {
            return Err(Error::CapExceeded {
                what: "matrix dimension",
                size: n,
                cap: MATRIX_DIM_CAP,
            });
        }
        Ok(SquareMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    /// Laplace expansion along the first row.
    pub fn determinant(&self) -> T {
        let cols: Vec<usize> = (0..self.dim()).collect();
        self.minor_det(0, &cols)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> T {
        if cols.len() == 1 {
            return self.rows[row][cols[0]].clone();
        }
        let mut acc = self.rows[0][0].zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = self.rows[row][c].mul_ref(&self.minor_det(row + 1, &rest));
            acc = if k % 2 == 0 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        acc
    }
}

/// All exponent vectors with `num_vars` entries and total degree `≤ cap`.
pub fn exponent_vectors(num_vars: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; num_vars];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, cap, &mut cur, &mut out);
    out
}

fn factorial_product(exps: &[usize]) -> Q {
    exps.iter()
        .map(|&e| Q::from_bigint(factorial(e)))
        .product()
}

/// `det(I − XA)` with `X = diag(x_1, …, x_m)`.
pub fn det_i_minus_xa(a: &SquareMatrix<Q>, cap: usize) -> TruncatedSeries {
    let m = a.dim();
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let delta = if i == j {
                        TruncatedSeries::one(m, cap)
                    } else {
                        TruncatedSeries::zero(m, cap)
                    };
                    delta.sub(&TruncatedSeries::var(m, cap, i).scale(a.get(i, j)))
                })
                .collect()
        })
        .collect();
    SquareMatrix::new(rows).expect("square").determinant()
}

/// Compares `[x^𝒏] det(I − XA)^{−β}` with `(1/∏n_j!) Σ_{π ∈ 𝔖(𝒏)} β^cyc w(π)`
/// for every `𝒏` of total at most `cap`. When `β = 1`, also compares with
/// `[x^𝒏] ∏_i (Σ_j a_ij x_j)^{n_i}`.
pub fn macmahon_check(a: &SquareMatrix<Q>, beta: &Q, cap: usize) -> Result<Vec<Report>> {
    let m = a.dim();
    let lhs_series = det_i_minus_xa(a, cap).pow(&-beta.clone())?;
    let mut out = Vec::new();
    for exps in exponent_vectors(m, cap) {
        let g = BoxedGroundSet::new(&exps);
        let mut sum = Q::zero();
        let mut err = None;
        for_each_permutation(&g, Filter::All, &EnumerationCaps::uniform(cap), |s| {
            let mut w = beta.pow(permutation_stats(s, &g).cyc as i64);
            for (i, &v) in s.iter().enumerate() {
                w *= a.get(g.box_of(i), g.box_of(v));
            }
            sum += w;
        })
        .unwrap_or_else(|e| err = Some(e));
        if let Some(e) = err {
            return Err(e);
        }
        let rhs = sum / factorial_product(&exps);
        out.push(Report::new(
            format!("MacMahon coefficient {exps:?}"),
            lhs_series.coeff(&exps),
            rhs.clone(),
        ));
        if beta.is_one() {
            let mut prod = TruncatedSeries::one(m, cap);
            for (i, &n) in exps.iter().enumerate() {
                let mut row = TruncatedSeries::zero(m, cap);
                for j in 0..m {
                    row = row.add(&TruncatedSeries::var(m, cap, j).scale(a.get(i, j)));
                }
                prod = prod.mul(&row.powi(n as i64)?);
            }
            out.push(Report::new(
                format!("classical MacMahon coefficient {exps:?}"),
                prod.coeff(&exps),
                rhs,
            ));
        }
    }
    Ok(out)
}

/// `e_k(x_{vars})` as a series.
pub fn elementary_symmetric(num_vars: usize, cap: usize, vars: &[usize], k: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(num_vars, cap);
    let n = vars.len();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            let mut e = vec![0; num_vars];
            for (b, &v) in vars.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    e[v] += 1;
                }
            }
            out = out.add(&TruncatedSeries::monomial(num_vars, cap, &e, Q::one()));
        }
    }
    out
}

fn e_values(xs: &[Q], k: usize) -> Q {
    let mut e = vec![Q::zero(); xs.len() + 1];
    e[0] = Q::one();
    for x in xs {
        for j in (1..e.len()).rev() {
            let prev = e[j - 1].clone();
            e[j] += &prev * x;
        }
    }
    e.get(k).cloned().unwrap_or_else(Q::zero)
}

fn lemma_matrix(xs: &[Q], a: &Q, b: &Q) -> SquareMatrix<Q> {
    let n = xs.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => xs[i].clone(),
                    std::cmp::Ordering::Less => a.clone(),
                    std::cmp::Ordering::Greater => b.clone(),
                })
                .collect()
        })
        .collect();
    SquareMatrix::new(rows).expect("square")
}

/// Determinant identities at rational sample points:
///
/// * the bordered determinant with `a` above and `b` below the diagonal
///   equals `(a φ(b) − b φ(a))/(a − b)`, and for `a = b` equals
///   `φ(a) + a Σ_j ∏_{i≠j} (x_i − a)`, where `φ(t) = ∏ (x_i − t)`;
/// * `Δ_{m+1} = 1 − Σ_{k≥2} (c + ⋯ + c^{k−1}) e_k − x_0 ∏ (1 + c x_j)`;
/// * `∏ (1+t_j) [1 − Σ t_j/(1+t_j)] = 1 − e_2 − 2e_3 − ⋯ − (m−1) e_m`.
///
/// Each sample is `(x_0, x_1, …, x_m, a, b)`.
pub fn det_identities(m: usize, c: &Q, samples: &[Vec<Q>]) -> Result<Vec<Report>> {
    if m > 5 {
        return Err(Error::CapExceeded {
            what: "determinant identity size",
            size: m,
            cap: 5,
        });
    }
    let one = Q::one();
    let mut out = Vec::new();
    for (s_i, s) in samples.iter().enumerate() {
        if s.len() != m + 3 {
            return Err(Error::Domain(format!(
                "sample {s_i} needs {} values (x_0..x_m, a, b)",
                m + 3
            )));
        }
        let x0 = &s[0];
        let xs = &s[1..=m];
        let (a, b) = (&s[m + 1], &s[m + 2]);
        let phi = |t: &Q| xs.iter().map(|x| x - t).product::<Q>();

        if m >= 1 {
            let det = lemma_matrix(xs, a, b).determinant();
            let closed = if a == b {
                let mut sum = Q::zero();
                for j in 0..m {
                    sum += xs
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .map(|(_, x)| x - a)
                        .product::<Q>();
                }
                phi(a) + a * &sum
            } else {
                (a * &phi(b) - b * &phi(a)) / (a - b)
            };
            out.push(Report::new(format!("bordered determinant, sample {s_i}"), det, closed));
            // The limit form must agree with the general form at a = b.
            let mut limit = Q::zero();
            for j in 0..m {
                limit += xs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, x)| x - a)
                    .product::<Q>();
            }
            out.push(Report::new(
                format!("bordered determinant at a = b, sample {s_i}"),
                lemma_matrix(xs, a, a).determinant(),
                phi(a) + a * &limit,
            ));
        }

        // Δ_{m+1}: rows 1..m have −x_i left of the diagonal and −c x_i right
        // of it; the last row is −x_0 with 1 − x_0 on the diagonal.
        let n = m + 1;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == m {
                            if j == m {
                                &one - x0
                            } else {
                                -x0.clone()
                            }
                        } else if i == j {
                            one.clone()
                        } else if j < i {
                            -xs[i].clone()
                        } else {
                            -(c * &xs[i])
                        }
                    })
                    .collect()
            })
            .collect();
        let delta = SquareMatrix::new(rows)?.determinant();
        let mut closed = &one - &(x0 * &xs.iter().map(|x| &one + &(c * x)).product::<Q>());
        for k in 2..=m {
            let cs: Q = (1..k).map(|p| c.pow(p as i64)).sum();
            closed -= cs * e_values(xs, k);
        }
        out.push(Report::new(format!("Δ_{} expansion, sample {s_i}", m + 1), delta, closed));

        // The simplification identity, with t_j = x_j (skipped where 1 + t_j = 0).
        if xs.iter().all(|x| !(&one + x).is_zero()) {
            let prod: Q = xs.iter().map(|x| &one + x).product();
            let frac: Q = xs.iter().map(|x| x / &(&one + x)).sum();
            let lhs = prod * (&one - &frac);
            let mut rhs = one.clone();
            for k in 2..=m {
                rhs -= Q::from_int(k as i64 - 1) * e_values(xs, k);
            }
            out.push(Report::new(format!("product simplification, sample {s_i}"), lhs, rhs));
        }
    }
    Ok(out)
}

/// The generating functions whose coefficients are compared with
/// functional values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GfIdentity {
    /// `A^(α)(n_0, 𝒏)`, `m` box variables.
    LaguerreStar { alpha: Q, m: usize },
    /// `B^(β)(n_0, 𝒏)` at `c`.
    MeixnerStar { beta: Q, c: Q, m: usize },
    /// `W_{j,k}(m; α, β; 𝒎, 𝒏)`.
    MixedLaguerre { alpha: Q, beta: Q, j: usize, k: usize },
    /// `Y_{j,k}(m; α, β; c; 𝒎, 𝒏)`.
    MixedMeixner { alpha: Q, beta: Q, c: Q, j: usize, k: usize },
    /// `exp(Σ_{i<j} x_i x_j)` against `K(𝒏)`.
    HermiteExp { m: usize },
    /// `exp(a[x_0 + x_0 e_1 + (x_0 + 1)(e_2 + ⋯ + e_m)])` against `C^(a)(n_0, 𝒏)`.
    CharlierExp { a: Q, m: usize },
}

impl GfIdentity {
    pub fn name(&self) -> &'static str {
        match self {
            GfIdentity::LaguerreStar { .. } => "laguerre-star",
            GfIdentity::MeixnerStar { .. } => "meixner-star",
            GfIdentity::MixedLaguerre { .. } => "mixed-laguerre",
            GfIdentity::MixedMeixner { .. } => "mixed-meixner",
            GfIdentity::HermiteExp { .. } => "hermite-exp",
            GfIdentity::CharlierExp { .. } => "charlier-exp",
        }
    }
}

fn nonneg_integer(d: &Q) -> Option<i64> {
    (d.is_real() && d.re().is_integer() && !d.re().is_negative())
        .then(|| i64::try_from(d.re().to_integer()).ok())
        .flatten()
}

/// `1 − Σ_{k≥2} w_k e_k(x_1..x_m) − x_0 ∏ (1 + s x_j)` on variables
/// `x_0, x_1, …, x_m`.
fn star_base(m: usize, cap: usize, w: impl Fn(usize) -> Q, s: &Q) -> TruncatedSeries {
    let nv = m + 1;
    let vars: Vec<usize> = (1..=m).collect();
    let mut base = TruncatedSeries::one(nv, cap);
    for k in 2..=m {
        base = base.sub(&elementary_symmetric(nv, cap, &vars, k).scale(&w(k)));
    }
    let mut prod = TruncatedSeries::one(nv, cap);
    for &v in &vars {
        prod = prod.mul(&TruncatedSeries::one(nv, cap).add(&TruncatedSeries::var(nv, cap, v).scale(s)));
    }
    base.sub(&TruncatedSeries::var(nv, cap, 0).mul(&prod))
}

fn meixner_weight(c: &Q) -> impl Fn(usize) -> Q + '_ {
    move |k| {
        let one = Q::one();
        let num = &one - &c.pow(1 - k as i64);
        num / (c * &(&one - &c.inv().expect("c ≠ 0")))
    }
}

/// Expands the closed form and compares every coefficient of total degree
/// `≤ cap`, multiplied by the factorials, with the functional value.
pub fn gf_check(id: &GfIdentity, cap: usize) -> Result<Vec<Report>> {
    let one = Q::one();
    let mut out = Vec::new();
    match id {
        GfIdentity::LaguerreStar { alpha, m } => {
            let series = star_base(*m, cap, |k| Q::from_int(k as i64 - 1), &one)
                .pow(&-(alpha + &one))?;
            let f = FamilySpec::laguerre(alpha.clone())?;
            for e in exponent_vectors(m + 1, cap) {
                let v = generalized_moment_product(&f, e[0], XMode::Monomial, &MultiIndex::new(&e[1..]))?;
                out.push(Report::new(
                    format!("{} {e:?}", id.name()),
                    series.coeff(&e) * factorial_product(&e),
                    v,
                ));
            }
        }
        GfIdentity::MeixnerStar { beta, c, m } => {
            let inv_c = c.inv().ok_or_else(|| Error::DegenerateParameter("c = 0".into()))?;
            let series = star_base(*m, cap, meixner_weight(c), &inv_c).pow(&-beta.clone())?;
            let f = FamilySpec::meixner(beta.clone(), c.clone())?;
            for e in exponent_vectors(m + 1, cap) {
                let v = generalized_moment_product(&f, e[0], XMode::Falling, &MultiIndex::new(&e[1..]))?;
                out.push(Report::new(
                    format!("{} {e:?}", id.name()),
                    series.coeff(&e) * factorial_product(&e),
                    v,
                ));
            }
        }
        GfIdentity::MixedLaguerre { alpha, beta, j, k }
        | GfIdentity::MixedMeixner { alpha, beta, j, k, .. } => {
            let n = nonneg_integer(&(alpha - beta)).ok_or_else(|| {
                Error::Domain("α − β must be a nonnegative integer".into())
            })?;
            let m = j + k;
            let nv = m + 1;
            let (base, exponent, fa, fb) = match id {
                GfIdentity::MixedLaguerre { .. } => (
                    star_base(m, cap, |l| Q::from_int(l as i64 - 1), &one),
                    -(alpha + &one),
                    FamilySpec::laguerre(alpha.clone())?,
                    FamilySpec::laguerre(beta.clone())?,
                ),
                GfIdentity::MixedMeixner { c, .. } => {
                    let inv_c = c.inv().ok_or_else(|| Error::DegenerateParameter("c = 0".into()))?;
                    (
                        star_base(m, cap, meixner_weight(c), &inv_c),
                        -alpha.clone(),
                        FamilySpec::meixner(alpha.clone(), c.clone())?,
                        FamilySpec::meixner(beta.clone(), c.clone())?,
                    )
                }
                _ => unreachable!(),
            };
            let mut series = base.pow(&exponent)?;
            for r in 0..*k {
                let factor = TruncatedSeries::one(nv, cap)
                    .add(&TruncatedSeries::var(nv, cap, 1 + j + r))
                    .powi(n)?;
                series = series.mul(&factor);
            }
            for e in exponent_vectors(nv, cap) {
                let v = mixed_linearization(&fa, &fb, e[0], &e[1..=*j], &e[1 + j..])?;
                out.push(Report::new(
                    format!("{} {e:?}", id.name()),
                    series.coeff(&e) * factorial_product(&e),
                    v,
                ));
            }
        }
        GfIdentity::HermiteExp { m } => {
            let vars: Vec<usize> = (0..*m).collect();
            let series = elementary_symmetric(*m, cap, &vars, 2).exp()?;
            let f = FamilySpec::hermite();
            for e in exponent_vectors(*m, cap) {
                out.push(Report::new(
                    format!("{} {e:?}", id.name()),
                    series.coeff(&e) * factorial_product(&e),
                    linearization(&f, &MultiIndex::new(&e))?,
                ));
            }
        }
        GfIdentity::CharlierExp { a, m } => {
            let nv = m + 1;
            let vars: Vec<usize> = (1..=*m).collect();
            let x0 = TruncatedSeries::var(nv, cap, 0);
            let mut inner = x0.add(&x0.mul(&elementary_symmetric(nv, cap, &vars, 1)));
            let x0_plus_1 = x0.add(&TruncatedSeries::one(nv, cap));
            for k in 2..=*m {
                inner = inner.add(&x0_plus_1.mul(&elementary_symmetric(nv, cap, &vars, k)));
            }
            let series = inner.scale(a).exp()?;
            let f = FamilySpec::charlier(a.clone())?;
            for e in exponent_vectors(nv, cap) {
                let v = generalized_moment_product(&f, e[0], XMode::Falling, &MultiIndex::new(&e[1..]))?;
                out.push(Report::new(
                    format!("{} {e:?}", id.name()),
                    series.coeff(&e) * factorial_product(&e),
                    v,
                ));
            }
        }
    }
    Ok(out)
}

fn binom_q(n: usize, k: i64) -> Q {
    Q::from_bigint(binomial(n as i64, k))
}

fn fact_q(n: i64) -> Q {
    if n < 0 {
        Q::zero()
    } else {
        Q::from_bigint(factorial(n as usize))
    }
}

/// `A^(0)(m, n, s) = m! n! s! Σ_j binom(m,j) binom(s, n+j−m) binom(s+m−j, m)`,
/// where `(m, n)` are the box sizes and `s` is the exponent of `x`.
pub fn pos_closed_form(m: usize, n: usize, s: usize) -> Q {
    let sum: Q = (0..=m as i64)
        .map(|j| {
            binom_q(m, j)
                * binom_q(s, n as i64 + j - m as i64)
                * binom_q(s + m - j as usize, m as i64)
        })
        .sum();
    fact_q(m as i64) * fact_q(n as i64) * fact_q(s as i64) * sum
}

/// The single-sum expression for `B^(1)(m, n, s)`:
/// `m! n! s! Σ_j binom(m,j) binom(s, n+j−m) binom(s+m−j, m) c^{n−2m+j}`.
/// It does not agree with the integral in general; see
/// [`pos_meixner_double_sum`].
pub fn pos_meixner_printed(m: usize, n: usize, s: usize, c: &Q) -> Q {
    let sum: Q = (0..=m as i64)
        .map(|j| {
            binom_q(m, j)
                * binom_q(s, n as i64 + j - m as i64)
                * binom_q(s + m - j as usize, m as i64)
                * c.pow(n as i64 - 2 * m as i64 + j)
        })
        .sum();
    fact_q(m as i64) * fact_q(n as i64) * fact_q(s as i64) * sum
}

/// `B^(1)(m, n, s)` as `m! n! s!` times the coefficient of
/// `x_1^m x_2^n x_0^s` in `(x_2/c + x_0/c)^m (x_1 + x_0/c)^n (x_1 + x_2 + x_0)^s`:
///
/// `m! n! s! Σ_{i,j} binom(m,i) binom(n,j) s!/((m−j)! (n−i)! (s−m−n+i+j)!) c^{j−m−n}`.
pub fn pos_meixner_double_sum(m: usize, n: usize, s: usize, c: &Q) -> Q {
    let (mi, ni, si) = (m as i64, n as i64, s as i64);
    let mut sum = Q::zero();
    for i in 0..=mi {
        for j in 0..=ni {
            let rest = si - mi - ni + i + j;
            if rest < 0 || j > mi || i > ni {
                continue;
            }
            sum += binom_q(m, i) * binom_q(n, j) * fact_q(si)
                / (fact_q(mi - j) * fact_q(ni - i) * fact_q(rest))
                * c.pow(j - mi - ni);
        }
    }
    fact_q(mi) * fact_q(ni) * fact_q(si) * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gr;

    fn t(cap: usize) -> TruncatedSeries {
        TruncatedSeries::var(1, cap, 0)
    }

    #[test]
    fn series_arithmetic_examples() {
        let one = TruncatedSeries::one(1, 3);
        let geo = one.sub(&t(3)).inverse().unwrap();
        for k in 0..=3 {
            assert_eq!(geo.coeff(&[k]), gr(1, 1));
        }
        let p = TruncatedSeries::one(1, 3).sub(&t(3)).pow(&gr(-2, 1)).unwrap();
        assert_eq!(p.coeff(&[2]), gr(3, 1));
        let s = TruncatedSeries::one(1, 1).add(&t(1));
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&[1]), gr(2, 1));
        assert_eq!(sq.coeff(&[2]), gr(0, 1));
        assert!(TruncatedSeries::zero(1, 3).inverse().is_err());
    }

    #[test]
    fn fractional_power_round_trip() {
        let s = TruncatedSeries::one(2, 4)
            .add(&TruncatedSeries::var(2, 4, 0).scale(&gr(2, 3)))
            .sub(&TruncatedSeries::var(2, 4, 1).mul(&TruncatedSeries::var(2, 4, 0)));
        let r = gr(3, 7);
        let back = s.pow(&r).unwrap().pow(&r.inv().unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn macmahon_examples() {
        let swap = SquareMatrix::new(vec![vec![gr(0, 1), gr(1, 1)], vec![gr(1, 1), gr(0, 1)]]).unwrap();
        let beta = gr(5, 3);
        let reports = macmahon_check(&swap, &beta, 2).unwrap();
        let r = reports.iter().find(|r| r.label.ends_with("[1, 1]")).unwrap();
        assert_eq!(r.lhs, beta);
        assert!(reports.iter().all(|r| r.holds));

        let zero = SquareMatrix::new(vec![vec![gr(0, 1); 2]; 2]).unwrap();
        for r in macmahon_check(&zero, &gr(1, 1), 3).unwrap() {
            assert!(r.holds);
        }
        let s = det_i_minus_xa(&zero, 3).pow(&gr(-1, 1)).unwrap();
        assert_eq!(s.terms().count(), 1);
    }

    #[test]
    fn determinant_examples() {
        let samples = vec![
            vec![gr(1, 2), gr(0, 1), gr(0, 1), gr(1, 1), gr(2, 1)],
            vec![gr(1, 3), gr(2, 5), gr(-1, 2), gr(3, 1), gr(3, 1)],
        ];
        for r in det_identities(2, &gr(2, 7), &samples).unwrap() {
            assert!(r.holds, "{}: {} vs {}", r.label, r.lhs, r.rhs);
        }
        // Δ_2 = 1 − x_0(1 + c x_1).
        let rep = det_identities(1, &gr(3, 1), &[vec![gr(2, 1), gr(5, 1), gr(0, 1), gr(1, 1)]])
            .unwrap();
        let delta = rep.iter().find(|r| r.label.starts_with("Δ_2")).unwrap();
        assert_eq!(delta.lhs, gr(1, 1) - gr(2, 1) * (gr(1, 1) + gr(15, 1)));
    }

    #[test]
    fn small_generating_functions() {
        let cases = [
            GfIdentity::LaguerreStar { alpha: gr(1, 2), m: 1 },
            GfIdentity::HermiteExp { m: 2 },
            GfIdentity::CharlierExp { a: gr(2, 3), m: 2 },
            GfIdentity::MeixnerStar { beta: gr(1, 1), c: gr(1, 2), m: 2 },
        ];
        for id in cases {
            for r in gf_check(&id, 3).unwrap() {
                assert!(r.holds, "{}: {} vs {}", r.label, r.lhs, r.rhs);
            }
        }
    }

    #[test]
    fn mixed_requires_integer_difference() {
        let id = GfIdentity::MixedLaguerre { alpha: gr(1, 2), beta: gr(0, 1), j: 1, k: 1 };
        assert!(matches!(gf_check(&id, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_forms_against_integrals() {
        assert_eq!(pos_closed_form(1, 1, 1), gr(3, 1));
        let lag = FamilySpec::laguerre(gr(0, 1)).unwrap();
        for (m, n, s) in [(1, 1, 1), (2, 1, 0), (2, 2, 1), (0, 0, 3)] {
            let v = generalized_moment_product(&lag, s, XMode::Monomial, &MultiIndex::new(&[m, n]))
                .unwrap();
            assert_eq!(pos_closed_form(m, n, s), v, "({m},{n},{s})");
        }
        let c = gr(1, 3);
        let me = FamilySpec::meixner(gr(1, 1), c.clone()).unwrap();
        let mut printed_mismatch = false;
        for (m, n, s) in [(1, 1, 1), (2, 1, 0), (1, 2, 2), (0, 0, 2), (2, 2, 1)] {
            let v = generalized_moment_product(&me, s, XMode::Falling, &MultiIndex::new(&[m, n]))
                .unwrap();
            assert_eq!(pos_meixner_double_sum(m, n, s, &c), v, "({m},{n},{s})");
            printed_mismatch |= pos_meixner_printed(m, n, s, &c) != v;
        }
        assert!(printed_mismatch);
    }
}
