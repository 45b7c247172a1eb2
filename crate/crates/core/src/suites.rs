//! Batches of exact checks, grouped the way the command line and the
//! acceptance harness report them.
//!
//! Every check produces a [`Report`]. Checks of formulas whose printed form
//! is known to be wrong are filed separately as [`Erratum`]s, next to a
//! counted check of the corrected form. An erratum marked `blocking` belongs
//! to a statement that was asked for literally, so a failing blocking erratum
//! fails that statement even though the counted checks pass.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijections::{
    decompose, depths, phi, psi_blocks, psi_pairing, theta, inhomogeneous_partitions, Scheme,
};
use crate::combi::star::{star_injections, star_permutations, FreeBoxPosition};
use crate::combi::{
    enumerate, family_rule, set_partitions, stat_distribution, statistics, weighted_sum,
    BoxedGroundSet, EnumerationCaps, Filter, ObjectKind, SetPartition, Stat, StatDistribution,
};
use crate::error::Result;
use crate::families::{from_birth_death, BirthDeathSpec, FamilyKind, FamilySpec};
use crate::linearize::{
    birth_death_system, check_boundary, check_difference_system, combinatorial_family,
    connection_coefficients, connection_rebuild_printed, generalized_combinatorial,
    generalized_moment_product, mixed_combinatorial, mixed_linearization, prefactor_adjusted, Linearizer,
    MultiIndex, Report, XMode,
};
use crate::moments::{moment_combinatorial, MomentFunctional, MomentVariant};
use crate::scalar::{falling_factorial_poly, gr, GaussianRational as Q, Poly};
use crate::series::{
    det_identities, gf_check, macmahon_check, pos_closed_form, pos_meixner_double_sum,
    pos_meixner_printed, GfIdentity, SquareMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Linearization,
    DifferenceSystem,
    Boundary,
    Moments,
    ClosedForms,
    Series,
    Bijections,
    Symmetry,
    Positivity,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Linearization,
        Suite::DifferenceSystem,
        Suite::Boundary,
        Suite::Moments,
        Suite::ClosedForms,
        Suite::Series,
        Suite::Bijections,
        Suite::Symmetry,
        Suite::Positivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Linearization => "linearization",
            Suite::DifferenceSystem => "difference-system",
            Suite::Boundary => "boundary",
            Suite::Moments => "moments",
            Suite::ClosedForms => "closed-forms",
            Suite::Series => "series",
            Suite::Bijections => "bijections",
            Suite::Symmetry => "symmetry",
            Suite::Positivity => "positivity",
        }
    }

    /// The suites selected by a command-line name; `all` selects every one.
    pub fn select(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().find(|s| s.name() == name).map(|&s| vec![s])
    }

    /// Acceptance criterion (1–8) the suite belongs to.
    pub fn criterion(self) -> usize {
        match self {
            Suite::Linearization => 1,
            Suite::DifferenceSystem | Suite::Boundary => 2,
            Suite::Moments => 3,
            Suite::ClosedForms => 4,
            Suite::Series => 5,
            Suite::Bijections => 6,
            Suite::Symmetry => 7,
            Suite::Positivity => 8,
        }
    }
}

/// Size knobs shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest `Σ n_j` for multi-index sweeps.
    pub max_total: usize,
    /// Parameter points per family (at most 3 are defined).
    pub samples: usize,
    /// Largest ground set for the `𝔖*(n_0, 𝒏)` enumerations.
    pub star_total: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::with_max_total(8)
    }
}

impl SuiteConfig {
    /// `star_total` follows as `⌊3t/2⌋`, capped at 12.
    pub fn with_max_total(t: usize) -> Self {
        SuiteConfig {
            max_total: t,
            samples: 3,
            star_total: (3 * t / 2).min(12),
        }
    }
}

/// A check of a formula in the form it was printed, known to disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub report: Report,
    pub blocking: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub reports: Vec<Report>,
    pub errata: Vec<Erratum>,
    pub errors: Vec<String>,
}

impl Outcome {
    fn check(&mut self, r: Result<Report>) {
        match r {
            Ok(r) => self.reports.push(r),
            Err(e) => self.errors.push(e.to_string()),
        }
    }

    fn check_all(&mut self, r: Result<Vec<Report>>) {
        match r {
            Ok(rs) => self.reports.extend(rs),
            Err(e) => self.errors.push(e.to_string()),
        }
    }

    fn erratum(&mut self, r: Result<Report>, blocking: bool) {
        match r {
            Ok(report) => self.errata.push(Erratum { report, blocking }),
            Err(e) => self.errors.push(e.to_string()),
        }
    }

    pub fn merge(&mut self, other: Outcome) {
        self.reports.extend(other.reports);
        self.errata.extend(other.errata);
        self.errors.extend(other.errors);
    }

    /// Every counted check holds and nothing errored.
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.reports.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| !r.holds)
    }

    pub fn blocking_failures(&self) -> impl Iterator<Item = &Report> {
        self.errata
            .iter()
            .filter(|e| e.blocking && !e.report.holds)
            .map(|e| &e.report)
    }

    /// [`Outcome::passed`] and no blocking erratum fails.
    pub fn criterion_holds(&self) -> bool {
        self.passed() && self.blocking_failures().next().is_none()
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Outcome {
    match suite {
        Suite::Linearization => linearization_suite(cfg),
        Suite::DifferenceSystem => difference_suite(cfg),
        Suite::Boundary => boundary_suite(cfg),
        Suite::Moments => moments_suite(cfg),
        Suite::ClosedForms => closed_forms_suite(cfg),
        Suite::Series => series_suite(cfg),
        Suite::Bijections => bijections_suite(cfg),
        Suite::Symmetry => symmetry_suite(cfg),
        Suite::Positivity => positivity_suite(cfg),
    }
}

fn truth(label: impl Into<String>, holds: bool) -> Report {
    Report::new(label, Q::from_int(holds as i64), Q::one())
}

fn positive(label: impl Into<String>, v: Q) -> Report {
    Report {
        label: label.into(),
        holds: v.is_positive_real(),
        lhs: v,
        rhs: Q::zero(),
    }
}

fn count_q(n: usize) -> Q {
    Q::from_int(n as i64)
}

/// All vectors of length `m` with entries `≥ min_entry` and sum `≤ max_total`.
pub fn compositions(m: usize, max_total: usize, min_entry: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in min..=left {
            cur.push(v);
            go(m, left - v, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m * min_entry <= max_total {
        go(m, max_total, min_entry, &mut Vec::new(), &mut out);
    }
    out
}

/// The eight families with combinatorial models, each at up to `samples`
/// rational parameter points.
pub fn model_families(samples: usize) -> Vec<Vec<FamilySpec>> {
    let take = |v: Vec<Result<FamilySpec>>| -> Vec<FamilySpec> {
        v.into_iter()
            .take(samples.max(1))
            .map(|f| f.expect("sample parameters are valid"))
            .collect()
    };
    vec![
        vec![FamilySpec::hermite()],
        take(vec![
            FamilySpec::charlier(gr(1, 2)),
            FamilySpec::charlier(gr(2, 1)),
            FamilySpec::charlier(gr(5, 3)),
        ]),
        take(vec![
            FamilySpec::laguerre(gr(0, 1)),
            FamilySpec::laguerre(gr(1, 2)),
            FamilySpec::laguerre(gr(7, 3)),
        ]),
        take(vec![
            FamilySpec::meixner(gr(1, 1), gr(1, 2)),
            FamilySpec::meixner(gr(3, 2), gr(1, 3)),
            FamilySpec::meixner(gr(5, 2), gr(3, 4)),
        ]),
        take(vec![
            FamilySpec::meixner_pollaczek(gr(1, 2), gr(1, 1)),
            FamilySpec::meixner_pollaczek(gr(0, 1), gr(2, 1)),
            FamilySpec::meixner_pollaczek(gr(3, 2), gr(1, 3)),
        ]),
        take(vec![
            FamilySpec::q_hermite(gr(1, 2)),
            FamilySpec::q_hermite(gr(2, 3)),
            FamilySpec::q_hermite(gr(-1, 3)),
        ]),
        take(vec![
            FamilySpec::q_charlier(gr(1, 1), gr(1, 1), gr(1, 1), gr(1, 2)),
            FamilySpec::q_charlier(gr(2, 1), gr(1, 3), gr(3, 2), gr(2, 3)),
            FamilySpec::q_charlier(gr(1, 2), gr(2, 1), gr(1, 4), gr(-1, 2)),
        ]),
        take(vec![
            FamilySpec::q_laguerre(gr(1, 1), gr(1, 2)),
            FamilySpec::q_laguerre(gr(2, 3), gr(1, 3)),
            FamilySpec::q_laguerre(gr(3, 1), gr(-1, 2)),
        ]),
    ]
}

/// Three birth–death rate choices: `(n+1, n)`, `(3/2, 2n)` and
/// `(2n + 1/2, n² + 1/4)`.
pub fn birth_death_samples() -> Vec<FamilySpec> {
    [
        (vec![gr(1, 1), gr(1, 1)], vec![gr(0, 1), gr(1, 1)]),
        (vec![gr(3, 2)], vec![gr(0, 1), gr(2, 1)]),
        (vec![gr(1, 2), gr(2, 1)], vec![gr(1, 4), gr(0, 1), gr(1, 1)]),
    ]
    .into_iter()
    .map(|(b, d)| from_birth_death(BirthDeathSpec::new(b, d)).expect("rates are nonzero"))
    .collect()
}

/// The model families plus Al-Salam–Chihara, the classical normalizations
/// and the birth–death samples.
fn every_family(samples: usize) -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = model_families(samples).into_iter().flatten().collect();
    let extra = [
        FamilySpec::al_salam_chihara(gr(1, 2), gr(1, 3), gr(1, 2)),
        FamilySpec::al_salam_chihara(gr(2, 1), gr(-1, 1), gr(1, 3)),
        FamilySpec::al_salam_chihara(gr(1, 4), gr(3, 1), gr(2, 3)),
    ];
    out.extend(extra.into_iter().take(samples.max(1)).map(|f| f.expect("valid")));
    out.push(FamilySpec::hermite_classical());
    out.extend(
        [gr(0, 1), gr(1, 2), gr(3, 1)]
            .into_iter()
            .take(samples.max(1))
            .map(|a| FamilySpec::laguerre_classical(a).expect("valid")),
    );
    out.extend(birth_death_samples());
    out
}

const LAMBDA_POOL: [(i64, i64); 4] = [(1, 2), (2, 1), (2, 3), (3, 2)];

fn lambda_sample(m: usize, shift: usize) -> Vec<Q> {
    (0..m)
        .map(|i| {
            let (p, q) = LAMBDA_POOL[(i + shift) % LAMBDA_POOL.len()];
            gr(p, q)
        })
        .collect()
}

/// Statistic distributions keyed by object class and box sizes, so each
/// class is enumerated once however many parameter points use it.
#[derive(Default)]
struct DistributionCache {
    dists: HashMap<(String, Vec<usize>), StatDistribution>,
}

impl DistributionCache {
    /// The combinatorial side of the fundamental identity. Empty boxes are
    /// dropped first; they change neither the class nor its statistics.
    fn combinatorial(&mut self, f: &FamilySpec, idx: &MultiIndex) -> Result<Q> {
        let cf = combinatorial_family(f)?;
        let (sizes, lambdas): (Vec<usize>, Vec<Q>) = idx
            .entries()
            .iter()
            .zip(idx.scalings())
            .filter(|(n, _)| **n > 0)
            .map(|(n, l)| (*n, l.clone()))
            .unzip();
        let rule = family_rule(&cf, &lambdas)?;
        let box_stat = rule.box_factor.as_ref().map(|b| b.stat);
        let key = (
            format!("{:?}/{:?}/{:?}/{:?}", rule.kind, rule.filter, rule.stats(), box_stat),
            sizes,
        );
        if !self.dists.contains_key(&key) {
            let g = BoxedGroundSet::new(&key.1);
            let d = stat_distribution(
                &g,
                rule.kind,
                rule.filter,
                &rule.stats(),
                box_stat,
                &EnumerationCaps::default(),
            )?;
            self.dists.insert(key.clone(), d);
        }
        let lams = rule.box_factor.as_ref().map(|b| b.lambdas.as_slice());
        Ok(self.dists[&key].evaluate(&rule.bases(), lams))
    }
}

fn linearization_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let mut cache = DistributionCache::default();
    let mut one_point = |f: &FamilySpec, lin: &Linearizer, idx: &MultiIndex, label: String| {
        let sides = lin
            .value(idx)
            .map(|v| prefactor_adjusted(f, idx, v))
            .and_then(|l| Ok((l, cache.combinatorial(f, idx)?)));
        sides.map(|(l, r)| Report::new(label, l, r))
    };
    for points in model_families(cfg.samples) {
        for f in &points {
            let lin = Linearizer::new(f.clone());
            for m in 1..=4 {
                for e in compositions(m, cfg.max_total, 0) {
                    let idx = MultiIndex::new(&e);
                    let label = format!("{f} at {e:?}: functional = enumeration");
                    out.check(one_point(f, &lin, &idx, label));
                }
            }
        }
    }
    // Scaled arguments for the two families with a scaled model.
    let scaled_total = cfg.max_total.min(6);
    let scaled_families = [
        vec![FamilySpec::hermite()],
        model_families(cfg.samples)[2].clone(),
    ];
    for f in scaled_families.iter().flatten() {
        let lin = Linearizer::new(f.clone());
        for m in 1..=4 {
            for e in compositions(m, scaled_total, 0) {
                for shift in 0..cfg.samples.clamp(1, 3) {
                    let lambdas = lambda_sample(m, shift);
                    let idx = MultiIndex::with_scalings(&e, &lambdas).expect("lengths agree");
                    let label =
                        format!("{f} at {e:?} scaled by {lambdas:?}: functional = enumeration");
                    out.check(one_point(f, &lin, &idx, label));
                }
            }
        }
    }
    out
}

fn difference_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    for f in every_family(cfg.samples) {
        let lin = Linearizer::new(f.clone());
        let is_bd = matches!(f.kind(), FamilyKind::BirthDeath(_));
        for m in 2..=4 {
            for e in compositions(m, cfg.max_total, 0) {
                let plain = MultiIndex::new(&e);
                let scaled = MultiIndex::with_scalings(&e, &lambda_sample(m, 0)).expect("lengths");
                for j in 0..m {
                    for k in j + 1..m {
                        out.check(check_difference_system(&lin, &plain, j, k));
                        out.check(check_difference_system(&lin, &scaled, j, k));
                        if is_bd {
                            out.check(birth_death_system(&lin, &scaled, j, k, false));
                            out.erratum(birth_death_system(&lin, &scaled, j, k, true), false);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The birth–death boundary values exactly as printed:
/// `I_j^+(0,…,0,n) = λ_j d_1/b_0 δ_{n,1} + (1 + d_0/b_0) δ_{n,0}`.
fn birth_death_boundary_printed(lin: &Linearizer, lambdas: &[Q]) -> Result<Vec<Report>> {
    let FamilyKind::BirthDeath(bd) = lin.family().kind() else {
        return Ok(Vec::new());
    };
    let m = lambdas.len();
    let (b0, d0, d1) = (bd.b_at(0), bd.d_at(0), bd.d_at(1));
    let mut out = Vec::new();
    for j in 0..m - 1 {
        for n in 0..=1usize {
            let mut e = vec![0; m];
            e[j] = 1;
            e[m - 1] = n;
            let idx = MultiIndex::with_scalings(&e, lambdas)?;
            let expected = if n == 1 {
                &lambdas[j] * &d1 / &b0
            } else {
                Q::one() + &d0 / &b0
            };
            out.push(Report::new(
                format!("{} printed boundary I_{}^+(0,…,0,{n}), λ = {lambdas:?}", lin.family(), j + 1),
                lin.value(&idx)?,
                expected,
            ));
        }
    }
    Ok(out)
}

fn boundary_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let grid = (cfg.max_total / 2).clamp(1, 3);
    let lambda_sets = [
        vec![gr(1, 2), gr(1, 1)],
        vec![gr(2, 3), gr(3, 2), gr(1, 1)],
        vec![gr(1, 3), gr(2, 1), gr(5, 4), gr(1, 1)],
    ];
    for f in every_family(cfg.samples) {
        let lin = Linearizer::new(f.clone());
        for lambdas in &lambda_sets {
            out.check_all(check_boundary(&lin, lambdas, grid).map(|rs| {
                rs.into_iter()
                    .map(|r| Report {
                        label: format!("{f}, λ = {lambdas:?}: {}", r.label),
                        ..r
                    })
                    .collect()
            }));
            match birth_death_boundary_printed(&lin, lambdas) {
                Ok(rs) => {
                    for r in rs {
                        out.erratum(Ok(r), true);
                    }
                }
                Err(e) => out.errors.push(e.to_string()),
            }
        }
    }
    out
}

fn moments_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let models = model_families(cfg.samples);
    // Charlier, Meixner, Meixner–Pollaczek, q-Charlier, q-Laguerre.
    for points in [&models[1], &models[3], &models[4], &models[6], &models[7]] {
        for f in points {
            let lf = MomentFunctional::new(f.clone());
            let has_printed_variant = matches!(
                f.kind(),
                FamilyKind::MeixnerPollaczek | FamilyKind::QCharlier | FamilyKind::QLaguerre
            );
            for n in 0..=8 {
                let dp = lf.moment(n);
                out.check(dp.clone().and_then(|v| {
                    Ok(Report::new(
                        format!("{f}: path moment μ_{n} = combinatorial moment"),
                        v,
                        moment_combinatorial(f, n, MomentVariant::Consistent)?,
                    ))
                }));
                if has_printed_variant {
                    out.erratum(
                        dp.and_then(|v| {
                            Ok(Report::new(
                                format!("{f}: path moment μ_{n} = printed moment formula"),
                                v,
                                moment_combinatorial(f, n, MomentVariant::AsPrinted)?,
                            ))
                        }),
                        false,
                    );
                }
            }
        }
    }
    for f in every_family(cfg.samples) {
        let lin = Linearizer::new(f.clone());
        for m in 0..=8 {
            for n in 0..=8 {
                let expected = if m == n { f.norm_zeta(n) } else { Ok(Q::zero()) };
                out.check(expected.and_then(|z| {
                    Ok(Report::new(
                        format!("{f}: L(p_{m} p_{n})"),
                        lin.value(&MultiIndex::new(&[m, n]))?,
                        z,
                    ))
                }));
            }
        }
    }
    let hankel_families = [
        FamilySpec::hermite(),
        FamilySpec::charlier(gr(3, 2)).expect("valid"),
        FamilySpec::laguerre(gr(1, 2)).expect("valid"),
        FamilySpec::meixner(gr(2, 1), gr(1, 3)).expect("valid"),
    ];
    for f in hankel_families {
        let lf = MomentFunctional::new(f.clone());
        for order in 1..=4 {
            out.check(
                lf.hankel_determinant(order)
                    .map(|d| positive(format!("{f}: Hankel determinant of order {order} > 0"), d)),
            );
        }
    }
    out
}

fn closed_forms_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let lag = FamilySpec::laguerre(gr(0, 1)).expect("valid");
    let caps = EnumerationCaps {
        set_objects: 12,
        permutations: cfg.star_total.max(9),
    };
    out.check(
        generalized_moment_product(&lag, 1, XMode::Monomial, &MultiIndex::new(&[1, 1]))
            .map(|v| Report::new("A^(0)(1,1,1)", v, gr(3, 1))),
    );
    for m in 0..=4 {
        for n in 0..=4 {
            for s in 0..=4 {
                let idx = MultiIndex::new(&[m, n]);
                let Ok(v) = generalized_moment_product(&lag, s, XMode::Monomial, &idx) else {
                    out.errors.push(format!("A^(0)({m},{n},{s}) failed"));
                    continue;
                };
                out.reports.push(Report::new(
                    format!("A^(0)({m},{n},{s}): integral = closed form"),
                    v.clone(),
                    pos_closed_form(m, n, s),
                ));
                if m + n + s <= cfg.star_total {
                    out.check(generalized_combinatorial(&lag, s, XMode::Monomial, &idx, &caps).map(
                        |e| Report::new(format!("A^(0)({m},{n},{s}): integral = enumeration"), v, e),
                    ));
                }
            }
        }
    }
    for c in [gr(1, 2), gr(1, 3)] {
        let me = FamilySpec::meixner(gr(1, 1), c.clone()).expect("valid");
        for m in 0..=3 {
            for n in 0..=3 {
                for s in 0..=3 {
                    let idx = MultiIndex::new(&[m, n]);
                    let Ok(v) = generalized_moment_product(&me, s, XMode::Falling, &idx) else {
                        out.errors.push(format!("B^(1)({m},{n},{s}) at c = {c} failed"));
                        continue;
                    };
                    out.reports.push(Report::new(
                        format!("B^(1)({m},{n},{s}) at c = {c}: integral = double sum"),
                        v.clone(),
                        pos_meixner_double_sum(m, n, s, &c),
                    ));
                    out.check(
                        generalized_combinatorial(&me, s, XMode::Falling, &idx, &caps).map(|e| {
                            Report::new(
                                format!("B^(1)({m},{n},{s}) at c = {c}: integral = enumeration"),
                                v.clone(),
                                e,
                            )
                        }),
                    );
                    out.erratum(
                        Ok(Report::new(
                            format!("B^(1)({m},{n},{s}) at c = {c}: integral = printed single sum"),
                            v,
                            pos_meixner_printed(m, n, s, &c),
                        )),
                        true,
                    );
                }
            }
        }
    }
    for (beta, c) in [(gr(1, 1), gr(1, 2)), (gr(5, 2), gr(1, 3)), (gr(-1, 3), gr(3, 1))] {
        let Ok(basis) = FamilySpec::meixner(beta.clone(), c.clone()).and_then(|f| f.polynomials(6))
        else {
            out.errors.push(format!("Meixner basis at β = {beta}, c = {c}"));
            continue;
        };
        for n in 0..=6 {
            let target = Poly::monomial(n);
            match connection_coefficients(&beta, &c, n) {
                Ok(coeffs) => {
                    let rebuilt = coeffs
                        .iter()
                        .zip(&basis)
                        .fold(Poly::zero(), |acc, (a, p)| &acc + &p.scale(a));
                    push_poly_reports(
                        &mut out.reports,
                        &format!("x^{n} from connection coefficients (β = {beta}, c = {c})"),
                        &rebuilt,
                        &target,
                    );
                }
                Err(e) => out.errors.push(e.to_string()),
            }
            match connection_rebuild_printed(&beta, &c, n) {
                Ok(p) => {
                    push_poly_reports(
                        &mut out.reports,
                        &format!("(x)_{n} from printed connection coefficients (β = {beta}, c = {c})"),
                        &p,
                        &falling_factorial_poly(n),
                    );
                    let mut printed = Vec::new();
                    push_poly_reports(
                        &mut printed,
                        &format!("x^{n} from printed connection coefficients (β = {beta}, c = {c})"),
                        &p,
                        &target,
                    );
                    for r in printed {
                        out.erratum(Ok(r), true);
                    }
                }
                Err(e) => out.errors.push(e.to_string()),
            }
        }
    }
    out
}

fn push_poly_reports(dst: &mut Vec<Report>, label: &str, got: &Poly, want: &Poly) {
    let deg = got.degree().max(want.degree()).unwrap_or(0);
    for k in 0..=deg {
        dst.push(Report::new(
            format!("{label}: coefficient of x^{k}"),
            got.coeff(k),
            want.coeff(k),
        ));
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> SquareMatrix<Q> {
    let dim = rng.gen_range(1..=3);
    let rows = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let den = rng.gen_range(1..=5i64);
                    gr(rng.gen_range(-2 * den..=2 * den), den)
                })
                .collect()
        })
        .collect();
    SquareMatrix::new(rows).expect("square")
}

fn series_suite(_cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let mut ids = Vec::new();
    for alpha in [gr(0, 1), gr(1, 2), gr(2, 1)] {
        ids.push((GfIdentity::LaguerreStar { alpha, m: 2 }, 5));
    }
    ids.push((GfIdentity::LaguerreStar { alpha: gr(1, 3), m: 3 }, 4));
    for (beta, c) in [(gr(1, 1), gr(1, 2)), (gr(3, 2), gr(1, 3)), (gr(2, 1), gr(3, 1))] {
        ids.push((GfIdentity::MeixnerStar { beta, c, m: 2 }, 5));
    }
    for n in 0..=2 {
        for alpha in [gr(1, 2), gr(3, 1)] {
            let beta = &alpha - &Q::from_int(n);
            for (j, k) in [(1, 1), (1, 2)] {
                let cap = if j + k == 2 { 5 } else { 4 };
                ids.push((
                    GfIdentity::MixedLaguerre { alpha: alpha.clone(), beta: beta.clone(), j, k },
                    cap,
                ));
                ids.push((
                    GfIdentity::MixedMeixner {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        c: gr(1, 2),
                        j,
                        k,
                    },
                    cap,
                ));
            }
        }
    }
    ids.push((GfIdentity::HermiteExp { m: 3 }, 5));
    for a in [gr(1, 1), gr(3, 2)] {
        ids.push((GfIdentity::CharlierExp { a, m: 2 }, 5));
    }
    for (id, cap) in ids {
        let name = id.name();
        out.check_all(gf_check(&id, cap).map(|rs| {
            rs.into_iter()
                .map(|r| Report {
                    label: format!("{name}: {}", r.label),
                    ..r
                })
                .collect()
        }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_636d);
    for i in 0..20 {
        let a = random_matrix(&mut rng);
        for beta in [gr(1, 1), gr(2, 1), gr(1, 2), gr(-1, 3)] {
            out.check_all(macmahon_check(&a, &beta, 4).map(|rs| {
                rs.into_iter()
                    .map(|r| Report {
                        label: format!("matrix {i}, β = {beta}: {}", r.label),
                        ..r
                    })
                    .collect()
            }));
        }
    }
    for m in 1..=3 {
        let samples: Vec<Vec<Q>> = (0..3)
            .map(|_| {
                (0..m + 3)
                    .map(|_| gr(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
                    .collect()
            })
            .collect();
        out.check_all(det_identities(m, &gr(2, 3), &samples));
    }
    out
}

fn arc_set(p: &SetPartition) -> BTreeSet<(usize, usize)> {
    p.arcs().into_iter().collect()
}

fn bl_cr(p: &SetPartition) -> (usize, usize) {
    (p.blocks().len(), crate::bijections::crossings(p))
}

/// Bijectivity and properties (I), (II) of `map` from `P(domain)` onto
/// `P(codomain)`. Property (I) compares arcs with both ends `≥ from` in the
/// source with arcs shifted by `to − from` in the image.
fn bijection_reports(
    name: &str,
    domain: &[usize],
    codomain: &[usize],
    from: usize,
    to: usize,
    map: impl Fn(&SetPartition) -> Result<SetPartition>,
) -> Result<Vec<Report>> {
    let src = inhomogeneous_partitions(domain);
    let dst: BTreeSet<SetPartition> = inhomogeneous_partitions(codomain).into_iter().collect();
    let mut images = BTreeSet::new();
    let (mut outside, mut prop1, mut prop2) = (0usize, 0usize, 0usize);
    let n: usize = domain.iter().sum();
    for p in &src {
        let q = map(p)?;
        if !dst.contains(&q) {
            outside += 1;
        }
        let tail: BTreeSet<(usize, usize)> = arc_set(p)
            .into_iter()
            .filter(|&(a, _)| a >= from)
            .map(|(a, b)| (a - from + to, b - from + to))
            .collect();
        let image_tail: BTreeSet<(usize, usize)> = arc_set(&q)
            .into_iter()
            .filter(|&(a, b)| a >= to && b < n - from + to)
            .collect();
        if tail != image_tail {
            prop1 += 1;
        }
        if bl_cr(p) != bl_cr(&q) {
            prop2 += 1;
        }
        images.insert(q);
    }
    Ok(vec![
        Report::new(format!("{name}: image size = codomain size"), count_q(images.len()), count_q(dst.len())),
        Report::new(format!("{name}: domain size = codomain size"), count_q(src.len()), count_q(dst.len())),
        Report::new(format!("{name}: images outside the codomain"), count_q(outside), Q::zero()),
        Report::new(format!("{name}: violations of the arc property"), count_q(prop1), Q::zero()),
        Report::new(format!("{name}: violations of bl/cr preservation"), count_q(prop2), Q::zero()),
    ])
}

fn part(s: &str) -> SetPartition {
    SetPartition::parse(s).expect("fixture parses")
}

fn bijections_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let max_n = (cfg.max_total + 1).min(9);
    let ones = |k: usize| std::iter::repeat(1).take(k);
    for n in 2..=max_n {
        for k in 1..n {
            let dom: Vec<usize> = std::iter::once(k).chain(ones(n - k)).collect();
            let cod: Vec<usize> = ones(n - k).chain(std::iter::once(k)).collect();
            out.check_all(bijection_reports(&format!("Φ_{{{n},{k}}}"), &dom, &cod, k, 0, |p| {
                phi(n, k, p)
            }));
        }
    }
    for n in 2..=max_n {
        for n1 in 1..n {
            for n2 in 1..=(n - n1).min(6 - n1.min(6)) {
                let big = n1 + n2;
                let dom: Vec<usize> = [n1, n2].into_iter().chain(ones(n - big)).collect();
                let cod: Vec<usize> = [n2, n1].into_iter().chain(ones(n - big)).collect();
                let name = format!("Θ_{n}^({n1},{n2})");
                out.check_all(bijection_reports(&name, &dom, &cod, big, big, |p| theta(n1, n2, p)));
                let mut not_inverse = 0usize;
                for p in inhomogeneous_partitions(&dom) {
                    match theta(n1, n2, &p).and_then(|q| theta(n2, n1, &q)) {
                        Ok(back) if back == p => {}
                        _ => not_inverse += 1,
                    }
                }
                out.reports.push(Report::new(
                    format!("{name}: Θ^({n2},{n1}) ∘ Θ^({n1},{n2}) ≠ id"),
                    count_q(not_inverse),
                    Q::zero(),
                ));
            }
        }
    }
    // Restricted to P(𝒏) the maps rotate or swap the box sizes.
    for m in 2..=4 {
        for e in compositions(m, cfg.max_total.min(8), 1) {
            let n: usize = e.iter().sum();
            let src = inhomogeneous_partitions(&e);
            let mut rotated = e[1..].to_vec();
            rotated.push(e[0]);
            let mut swapped = e.clone();
            swapped.swap(0, 1);
            let want_r: BTreeSet<SetPartition> = inhomogeneous_partitions(&rotated).into_iter().collect();
            let want_s: BTreeSet<SetPartition> = inhomogeneous_partitions(&swapped).into_iter().collect();
            let got_r: Result<BTreeSet<SetPartition>> = src.iter().map(|p| phi(n, e[0], p)).collect();
            let got_s: Result<BTreeSet<SetPartition>> =
                src.iter().map(|p| theta(e[0], e[1], p)).collect();
            out.check(got_r.map(|g| truth(format!("Φ maps P({e:?}) onto P({rotated:?})"), g == want_r)));
            out.check(got_s.map(|g| truth(format!("Θ maps P({e:?}) onto P({swapped:?})"), g == want_s)));
        }
    }
    let depth_n = (cfg.max_total + 2).min(10);
    for n in 1..=depth_n {
        let mut bad = 0usize;
        for p in set_partitions(n) {
            let d = depths(&p);
            let psi = psi_pairing(&p);
            let mins = p.minima();
            let images: BTreeSet<usize> = psi.values().copied().collect();
            let maxs: BTreeSet<usize> = p.maxima().into_iter().collect();
            let keys_ok = psi.keys().copied().collect::<Vec<_>>() == mins;
            if !keys_ok || images != maxs || mins.iter().any(|&i| d[i] != d[psi[&i]]) {
                bad += 1;
            }
        }
        out.reports.push(Report::new(
            format!("ψ_π on partitions of {n}: not a depth-preserving bijection min → max"),
            count_q(bad),
            Q::zero(),
        ));
    }
    for n in 2..=max_n.min(8) {
        for p in set_partitions(n) {
            let mut schemes = Vec::new();
            for k in 1..n {
                schemes.push(Scheme::F { n, k });
                schemes.push(Scheme::G { n, k });
            }
            for n1 in 1..n {
                for n2 in 1..=n - n1 {
                    schemes.push(Scheme::H { n, n1, n2 });
                }
            }
            for s in schemes {
                if s.check_member(&p).is_err() {
                    continue;
                }
                let back = decompose(&p, s).and_then(|d| d.recompose());
                if !matches!(&back, Ok(q) if *q == p) {
                    out.reports.push(truth(format!("{s:?}: recompose ∘ decompose fixes {p}"), false));
                }
            }
        }
    }
    out.reports.push(truth("recompose ∘ decompose is the identity for n ≤ 8", true));
    let fig = part("1 4 15/2 3/5 6/7 10 13/8/9 11/12 14");
    let pairs: Vec<(usize, usize)> = psi_pairing(&fig).into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
    out.reports.push(truth(
        format!("ψ_π on the Motzkin path example gives {pairs:?}"),
        pairs == [(1, 15), (2, 3), (5, 6), (7, 14), (8, 8), (9, 11), (12, 13)],
    ));
    out.check(
        phi(13, 4, &part("1 6/2 9/3 5 8/4 7 11/10 12 13")).map(|q| {
            truth(format!("Φ_{{13,4}} worked example gives {q}"), q == part("1 4 10/2 12/3 7/5 13/6 8 9 11"))
        }),
    );
    out.check(
        theta(3, 4, &part("1 10/2 4 13/3 6/5 9/7 11 12/8 14")).map(|q| {
            truth(
                format!("Θ_14^(3,4) worked example gives {q}"),
                q == part("1 10/2 5 9/3 13/4 6/7 11 12/8 14"),
            )
        }),
    );
    let marked: Vec<usize> = [3, 5, 6, 7, 8, 10].iter().map(|x| x - 1).collect();
    out.check(psi_blocks(4, 6, &part("1 8/2 6/3/4 9/5/7/10"), &marked).map(|(q, a)| {
        let a1: Vec<usize> = a.iter().map(|x| x + 1).collect();
        truth(
            format!("ψ_(4,6) worked example gives ({q}, {a1:?})"),
            q == part("1/2 9/3 7/4/5 10/6/8") && a1 == [1, 4, 6, 7, 8, 9],
        )
    }));
    out
}

fn q_charlier_weighted(f: &FamilySpec, boxes: &[usize]) -> Result<Q> {
    let rule = family_rule(f, &vec![Q::one(); boxes.len()])?;
    weighted_sum(&BoxedGroundSet::new(boxes), &rule, &EnumerationCaps::default())
}

fn crossing_free(boxes: &[usize], kind: ObjectKind) -> Result<usize> {
    let g = BoxedGroundSet::new(boxes);
    Ok(enumerate(&g, kind, Filter::Inhomogeneous, &EnumerationCaps::default())?
        .iter()
        .filter(|o| statistics(o, &g).cr == 0)
        .count())
}

fn symmetry_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let models = model_families(cfg.samples);
    for f in &models[6] {
        let mut canonical: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        for m in 1..=cfg.max_total {
            for e in compositions(m, cfg.max_total, 1) {
                let mut sorted = e.clone();
                sorted.sort_unstable();
                let base = match canonical.get(&sorted) {
                    Some(v) => Ok(v.clone()),
                    None => q_charlier_weighted(f, &sorted).map(|v| {
                        canonical.insert(sorted.clone(), v.clone());
                        v
                    }),
                };
                out.check(base.and_then(|b| {
                    Ok(Report::new(
                        format!("{f}: F({e:?}) = F({sorted:?})"),
                        q_charlier_weighted(f, &e)?,
                        b,
                    ))
                }));
            }
        }
        let c = f.param("c").clone();
        let lf = MomentFunctional::new(f.clone());
        let shifted = Poly::linear(Q::one(), -c);
        for m in 1..=8 {
            out.check(q_charlier_weighted(f, &vec![1; m]).and_then(|v| {
                Ok(Report::new(
                    format!("{f}: F(1^{m}) = L((x − c)^{m})"),
                    v,
                    lf.apply(&shifted.pow(m))?,
                ))
            }));
        }
    }
    let degenerate = [
        (FamilySpec::q_hermite(Q::zero()), ObjectKind::Matching),
        (
            FamilySpec::q_charlier(Q::one(), Q::one(), gr(3, 2), Q::zero()),
            ObjectKind::Partition,
        ),
        (FamilySpec::q_laguerre(Q::one(), Q::zero()), ObjectKind::Permutation),
    ];
    for (f, kind) in degenerate {
        let f = match f {
            Ok(f) => f,
            Err(e) => {
                out.errors.push(e.to_string());
                continue;
            }
        };
        let lin = Linearizer::new(f.clone());
        for m in 1..=4 {
            for e in compositions(m, cfg.max_total, 1) {
                out.check(lin.value(&MultiIndex::new(&e)).and_then(|v| {
                    Ok(Report::new(
                        format!("{f} at {e:?}: value = number of crossing-free {kind:?}s"),
                        v,
                        count_q(crossing_free(&e, kind)?),
                    ))
                }));
            }
        }
    }
    out
}

fn positivity_suite(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::default();
    let caps = EnumerationCaps::uniform(12);
    let w_total = cfg.max_total.min(5);
    let groups: Vec<Vec<usize>> = (0..=2).flat_map(|len| compositions(len, w_total, 1)).collect();
    // The class 𝔖*_N and its cycle distribution do not depend on α.
    let mut injections: HashMap<(usize, Vec<usize>, Vec<usize>, usize), StatDistribution> =
        HashMap::new();
    for alpha in [gr(-1, 2), gr(0, 1), gr(1, 2), gr(5, 2)] {
        let weight = &alpha + &Q::one();
        for big_n in 0..=2usize {
            let beta = &alpha - &Q::from_int(big_n as i64);
            let (Ok(fa), Ok(fb)) = (
                FamilySpec::laguerre(alpha.clone()),
                FamilySpec::laguerre(beta.clone()),
            ) else {
                out.errors.push(format!("Laguerre pair α = {alpha}, β = {beta}"));
                continue;
            };
            for a in &groups {
                for b in &groups {
                    let used: usize = a.iter().chain(b).sum();
                    for m in 0..=w_total.saturating_sub(used).min(3) {
                        let label = format!("W(m={m}; α={alpha}, β={beta}; {a:?}, {b:?})");
                        let v = match mixed_linearization(&fa, &fb, m, a, b) {
                            Ok(v) => v,
                            Err(e) => {
                                out.errors.push(format!("{label}: {e}"));
                                continue;
                            }
                        };
                        let key = (m, a.clone(), b.clone(), big_n);
                        if !injections.contains_key(&key) {
                            match star_injections(m, a, b, big_n, &[Stat::Cyc], &caps) {
                                Ok(d) => {
                                    injections.insert(key.clone(), d);
                                }
                                Err(e) => {
                                    out.errors.push(format!("{label}: {e}"));
                                    continue;
                                }
                            }
                        }
                        let d = &injections[&key];
                        out.reports.push(Report::new(
                            format!("{label}: integral = Σ (α+1)^cyc over 𝔖*_N"),
                            v.clone(),
                            d.evaluate(&[weight.clone()], None),
                        ));
                        out.reports.push(sign_report(&label, v, d.total() == 0));
                    }
                }
            }
        }
    }
    out.check(
        FamilySpec::laguerre(gr(1, 1))
            .and_then(|fa| Ok((fa, FamilySpec::laguerre(gr(0, 1))?)))
            .and_then(|(fa, fb)| {
                Ok(Report::new(
                    "W(m=1; α=1, β=0; [1, 1], [2]): integral = enumeration",
                    mixed_linearization(&fa, &fb, 1, &[1, 1], &[2])?,
                    mixed_combinatorial(&fa, &fb, 1, &[1, 1], &[2], &caps)?,
                ))
            }),
    );
    let a_total = cfg.max_total.min(7);
    let alphas = [gr(0, 1), gr(1, 2), gr(1, 1)];
    let families: Vec<FamilySpec> =
        alphas.iter().map(|a| FamilySpec::laguerre(a.clone()).expect("valid")).collect();
    for len in 1..=3 {
        for e in compositions(len, a_total, 1) {
            let used: usize = e.iter().sum();
            for n0 in 0..=(a_total - used).min(4) {
                let d = match star_permutations(n0, &e, FreeBoxPosition::First, &[Stat::Cyc], &caps)
                {
                    Ok(d) => d,
                    Err(err) => {
                        out.errors.push(err.to_string());
                        continue;
                    }
                };
                for f in &families {
                    let alpha = f.param("alpha");
                    let label = format!("A^({alpha})({n0}, {e:?})");
                    match generalized_moment_product(f, n0, XMode::Monomial, &MultiIndex::new(&e)) {
                        Ok(v) => {
                            out.reports.push(Report::new(
                                format!("{label}: integral = Σ (α+1)^cyc over 𝔖*"),
                                v.clone(),
                                d.evaluate(&[alpha + &Q::one()], None),
                            ));
                            out.reports.push(sign_report(&label, v, d.total() == 0));
                        }
                        Err(err) => out.errors.push(format!("{label}: {err}")),
                    }
                }
            }
        }
    }
    out
}

/// Positive, or zero over an empty object class (the sum is then empty).
fn sign_report(label: &str, v: Q, class_empty: bool) -> Report {
    if v.is_zero() && class_empty {
        truth(format!("{label} = 0 over an empty class"), true)
    } else {
        positive(format!("{label} > 0"), v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 3, 0).len(), 10);
        assert_eq!(compositions(3, 4, 1).len(), 4);
        assert!(compositions(3, 2, 1).is_empty());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::select(s.name()), Some(vec![s]));
        }
        assert_eq!(Suite::select("all").unwrap().len(), 9);
        assert!(Suite::select("nope").is_none());
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig {
            max_total: 4,
            samples: 1,
            star_total: 6,
        };
        for s in [Suite::Linearization, Suite::Symmetry, Suite::Positivity] {
            let o = run(s, &cfg);
            assert!(o.passed(), "{}: {:?} {:?}", s.name(), o.errors, o.failures().next());
        }
    }
}
