//! Crossing- and block-preserving bijections between classes of
//! inhomogeneous set partitions.
//!
//! Partitions are on `0..n` internally and printed 1-based. Writing
//! `P(n_1, …, n_m)` for partitions without singletons and without an arc
//! inside any box:
//!
//! * `^(k)P_n = P(k, 1, …, 1)` and `P_n^(k) = P(1, …, 1, k)`;
//! * `P_n^(n1,n2) = P(n1, n2, 1, …, 1)`.
//!
//! `Φ_{n,k} : ^(k)P_n → P_n^(k)` is `F⁻¹ ∘ Ψ ∘ G` and
//! `Θ_n^(n1,n2) : P_n^(n1,n2) → P_n^(n2,n1)` is `H⁻¹ ∘ Γ ∘ H`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::combi::{for_each_partition, BoxedGroundSet, EnumerationCaps, Filter, SetPartition};
use crate::error::{Error, Result};

/// Number of arcs `(a, b)` with `a < i < b`, for every element `i`.
pub fn depths(p: &SetPartition) -> Vec<usize> {
    let n = p.size();
    // Prefix sums of (#openings − #closings) strictly before i.
    let mut delta = vec![0i64; n + 1];
    for (a, b) in p.arcs() {
        delta[a + 1] += 1;
        delta[b] -= 1;
    }
    let mut out = Vec::with_capacity(n);
    let mut acc = 0i64;
    for d in delta.iter().take(n) {
        acc += d;
        out.push(acc as usize);
    }
    out
}

/// Pairs `i < j` with `σ(i) < σ(j)`.
pub fn noninversions(sigma: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] < sigma[j] {
                c += 1;
            }
        }
    }
    c
}

/// Crossing count of the successive-element arcs.
pub fn crossings(p: &SetPartition) -> usize {
    let arcs = p.arcs();
    let mut c = 0;
    for (x, &(i1, j1)) in arcs.iter().enumerate() {
        for &(i2, j2) in &arcs[x + 1..] {
            if i1 < i2 && i2 < j1 && j1 < j2 {
                c += 1;
            }
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Ne,
    E,
    Se,
}

/// The Motzkin path of a partition: step `i` is NE at a non-singleton
/// minimum, SE at a non-singleton maximum and E otherwise. `heights[i]` is
/// the ordinate where step `i` starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotzkinProfile {
    pub steps: Vec<Step>,
    pub heights: Vec<usize>,
}

pub fn motzkin_profile(p: &SetPartition) -> MotzkinProfile {
    let n = p.size();
    let mut steps = vec![Step::E; n];
    for b in p.blocks().iter().filter(|b| b.len() > 1) {
        steps[b[0]] = Step::Ne;
        steps[*b.last().unwrap()] = Step::Se;
    }
    let mut heights = Vec::with_capacity(n);
    let mut h = 0usize;
    for s in &steps {
        heights.push(h);
        match s {
            Step::Ne => h += 1,
            Step::Se => h -= 1,
            Step::E => {}
        }
    }
    MotzkinProfile { steps, heights }
}

/// `ψ_π : min(π) → max(π)`. Singletons are fixed; an NE step at height `h`
/// is sent to the first SE step to its right that starts at height `h + 1`.
pub fn psi_pairing(p: &SetPartition) -> BTreeMap<usize, usize> {
    let prof = motzkin_profile(p);
    let mut out = BTreeMap::new();
    for s in p.singletons() {
        out.insert(s, s);
    }
    // At most one NE step per height can be waiting for its partner.
    let mut pending: Vec<Option<usize>> = vec![None; p.size() + 1];
    for (i, step) in prof.steps.iter().enumerate() {
        let h = prof.heights[i];
        match step {
            Step::Ne => pending[h] = Some(i),
            Step::Se => {
                let o = pending[h - 1].take().expect("path returns to the axis");
                out.insert(o, i);
            }
            Step::E => {}
        }
    }
    out
}

/// Which decomposition to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// `F_{n,k}` on `P_n^(k)`.
    F { n: usize, k: usize },
    /// `G_{n,k}` on `^(k)P_n`.
    G { n: usize, k: usize },
    /// `H_n^(n1,n2)` on `P_n^(n1,n2)`.
    H { n: usize, n1: usize, n2: usize },
}

impl Scheme {
    pub fn size(&self) -> usize {
        match *self {
            Scheme::F { n, .. } | Scheme::G { n, .. } | Scheme::H { n, .. } => n,
        }
    }

    /// Box sizes of the domain class.
    pub fn boxes(&self) -> Vec<usize> {
        match *self {
            Scheme::F { n, k } => {
                let mut b = vec![1; n - k];
                b.push(k);
                b
            }
            Scheme::G { n, k } => {
                let mut b = vec![k];
                b.extend(std::iter::repeat(1).take(n - k));
                b
            }
            Scheme::H { n, n1, n2 } => {
                let mut b = vec![n1, n2];
                b.extend(std::iter::repeat(1).take(n - n1 - n2));
                b
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Scheme::F { n, k } | Scheme::G { n, k } => k >= 1 && k < n,
            Scheme::H { n, n1, n2 } => n1 >= 1 && n2 >= 1 && n1 + n2 <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid scheme {self:?}")))
        }
    }

    /// Checks that `p` lies in the domain class, naming the first violation.
    pub fn check_member(&self, p: &SetPartition) -> Result<()> {
        self.validate()?;
        if p.size() != self.size() {
            return Err(Error::Domain(format!(
                "partition of {} elements, expected {}",
                p.size(),
                self.size()
            )));
        }
        check_inhomogeneous(p, &BoxedGroundSet::new(&self.boxes()), false)
    }
}

fn check_inhomogeneous(p: &SetPartition, g: &BoxedGroundSet, singletons_ok: bool) -> Result<()> {
    if !singletons_ok {
        if let Some(s) = p.singletons().first() {
            return Err(Error::SingletonFound(s + 1));
        }
    }
    for (a, b) in p.arcs() {
        if g.box_of(a) == g.box_of(b) {
            return Err(Error::HomogeneousArc(a + 1, b + 1));
        }
    }
    Ok(())
}

/// Partition of `0..n` from the arcs of `p` with both ends in `range`,
/// shifted down by `range.start`.
fn restrict(p: &SetPartition, range: std::ops::Range<usize>) -> SetPartition {
    let arcs: Vec<(usize, usize)> = p
        .arcs()
        .into_iter()
        .filter(|(a, b)| range.contains(a) && range.contains(b))
        .map(|(a, b)| (a - range.start, b - range.start))
        .collect();
    SetPartition::from_arcs(range.len(), &arcs).expect("restriction of a partition")
}

fn shifted_arcs(p: &SetPartition, by: usize) -> impl Iterator<Item = (usize, usize)> {
    p.arcs().into_iter().map(move |(a, b)| (a + by, b + by))
}

fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma.iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
}

/// `sing(τ) ⊆ marked ⊆ ends(τ)`, `marked` sorted and free of repeats.
fn check_marked(tau: &SetPartition, marked: &[usize], ends: &[usize], what: &str) -> Result<()> {
    let set: BTreeSet<usize> = marked.iter().copied().collect();
    if set.len() != marked.len() || !marked.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Domain(format!("{what} must be sorted without repeats")));
    }
    let ends: BTreeSet<usize> = ends.iter().copied().collect();
    if let Some(s) = tau.singletons().into_iter().find(|s| !set.contains(s)) {
        return Err(Error::Domain(format!("singleton {} missing from {what}", s + 1)));
    }
    if let Some(x) = marked.iter().find(|x| !ends.contains(x)) {
        return Err(Error::Domain(format!("{} in {what} cannot be extended", x + 1)));
    }
    Ok(())
}

/// The triple `(τ, marked, σ)` of `F` or `G`, or the triple
/// `((τ, A), (γ, B), σ)` of `H`.
///
/// `σ` is stored 0-based in one-line notation. `γ` lives on `0..n−N_2`;
/// add `N_2` (see [`Decomposition::gamma_offset`]) to recover its labels, and
/// likewise for `gamma_marked`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub scheme: Scheme,
    pub tau: SetPartition,
    pub marked: Vec<usize>,
    pub sigma: Vec<usize>,
    pub gamma: Option<SetPartition>,
    pub gamma_marked: Vec<usize>,
}

impl Decomposition {
    pub fn gamma_offset(&self) -> usize {
        match self.scheme {
            Scheme::H { n1, n2, .. } => n1 + n2,
            _ => 0,
        }
    }

    /// The inverse of [`decompose`]; fails if the triple is not in the image.
    pub fn recompose(&self) -> Result<SetPartition> {
        self.scheme.validate()?;
        if !is_permutation(&self.sigma) {
            return Err(Error::Domain("σ is not a permutation".into()));
        }
        let k = self.sigma.len();
        if self.marked.len() != k {
            return Err(Error::Domain("marked set and σ differ in size".into()));
        }
        match self.scheme {
            Scheme::F { n, k: kk } => {
                let t = n - kk;
                if k != kk || self.tau.size() != t {
                    return Err(Error::Domain("wrong sizes for F".into()));
                }
                check_marked(&self.tau, &self.marked, &self.tau.maxima(), "C")?;
                let mut arcs = self.tau.arcs();
                arcs.extend(self.marked.iter().zip(&self.sigma).map(|(&c, &s)| (c, t + s)));
                SetPartition::from_arcs(n, &arcs)
            }
            Scheme::G { n, k: kk } => {
                if k != kk || self.tau.size() != n - kk {
                    return Err(Error::Domain("wrong sizes for G".into()));
                }
                check_marked(&self.tau, &self.marked, &self.tau.minima(), "O")?;
                let mut arcs: Vec<_> = shifted_arcs(&self.tau, kk).collect();
                arcs.extend(self.marked.iter().zip(&self.sigma).map(|(&o, &s)| (s, o + kk)));
                SetPartition::from_arcs(n, &arcs)
            }
            Scheme::H { n, n1, n2 } => {
                let big = n1 + n2;
                let gamma = self
                    .gamma
                    .as_ref()
                    .ok_or_else(|| Error::Domain("H needs γ".into()))?;
                if self.tau.size() != big || gamma.size() != n - big {
                    return Err(Error::Domain("wrong sizes for H".into()));
                }
                if self.gamma_marked.len() != k {
                    return Err(Error::Domain("A and B differ in size".into()));
                }
                check_inhomogeneous(&self.tau, &BoxedGroundSet::new(&[n1, n2]), true)?;
                check_marked(&self.tau, &self.marked, &self.tau.maxima(), "A")?;
                check_marked(gamma, &self.gamma_marked, &gamma.minima(), "B")?;
                let mut arcs = self.tau.arcs();
                arcs.extend(shifted_arcs(gamma, big));
                arcs.extend(
                    self.marked
                        .iter()
                        .zip(&self.sigma)
                        .map(|(&a, &s)| (a, big + self.gamma_marked[s])),
                );
                SetPartition::from_arcs(n, &arcs)
            }
        }
    }
}

fn one_based(v: &[usize]) -> String {
    v.iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "τ = {}, marked = {{{}}}, σ = {}",
            self.tau,
            one_based(&self.marked),
            one_based(&self.sigma)
        )?;
        if let Some(g) = &self.gamma {
            let off = self.gamma_offset();
            let shifted: Vec<usize> = self.gamma_marked.iter().map(|b| b + off).collect();
            let blocks: Vec<String> = g
                .blocks()
                .iter()
                .map(|b| one_based(&b.iter().map(|x| x + off).collect::<Vec<_>>()))
                .collect();
            write!(f, ", γ = {}, B = {{{}}}", blocks.join("/"), one_based(&shifted))?;
        }
        Ok(())
    }
}

/// Applies `F`, `G` or `H` to a member of the scheme's domain.
pub fn decompose(p: &SetPartition, scheme: Scheme) -> Result<Decomposition> {
    scheme.check_member(p)?;
    let arcs = p.arcs();
    match scheme {
        Scheme::F { n, k } => {
            let t = n - k;
            let mut cross: Vec<(usize, usize)> =
                arcs.iter().copied().filter(|&(a, b)| a < t && b >= t).collect();
            cross.sort_unstable();
            Ok(Decomposition {
                scheme,
                tau: restrict(p, 0..t),
                marked: cross.iter().map(|&(a, _)| a).collect(),
                sigma: cross.iter().map(|&(_, b)| b - t).collect(),
                gamma: None,
                gamma_marked: Vec::new(),
            })
        }
        Scheme::G { n, k } => {
            let mut cross: Vec<(usize, usize)> =
                arcs.iter().copied().filter(|&(a, b)| a < k && b >= k).collect();
            cross.sort_unstable_by_key(|&(_, b)| b);
            Ok(Decomposition {
                scheme,
                tau: restrict(p, k..n),
                marked: cross.iter().map(|&(_, b)| b - k).collect(),
                sigma: cross.iter().map(|&(a, _)| a).collect(),
                gamma: None,
                gamma_marked: Vec::new(),
            })
        }
        Scheme::H { n, n1, n2 } => {
            let big = n1 + n2;
            let mut cross: Vec<(usize, usize)> =
                arcs.iter().copied().filter(|&(a, b)| a < big && b >= big).collect();
            cross.sort_unstable();
            let mut b_set: Vec<usize> = cross.iter().map(|&(_, b)| b - big).collect();
            b_set.sort_unstable();
            let sigma = cross
                .iter()
                .map(|&(_, b)| b_set.binary_search(&(b - big)).expect("present"))
                .collect();
            Ok(Decomposition {
                scheme,
                tau: restrict(p, 0..big),
                marked: cross.iter().map(|&(a, _)| a).collect(),
                sigma,
                gamma: Some(restrict(p, big..n)),
                gamma_marked: b_set,
            })
        }
    }
}

/// `Φ_{n,k}`.
pub fn phi(n: usize, k: usize, p: &SetPartition) -> Result<SetPartition> {
    let mut d = decompose(p, Scheme::G { n, k })?;
    let psi = psi_pairing(&d.tau);
    let mut closed: Vec<usize> = d.marked.iter().map(|o| psi[o]).collect();
    closed.sort_unstable();
    d.marked = closed;
    d.scheme = Scheme::F { n, k };
    d.recompose()
}

/// `ψ_(n1,n2)` on pairs `(τ, A)` with `τ ∈ P*(n1, n2)` and
/// `sing(τ) ⊆ A ⊆ max(τ)`.
///
/// With `x̄ = N_2 − 1 − x`, the image has the reflected right endpoints as
/// left endpoints and the reflected left endpoints as right endpoints,
/// joined in the same pattern `ρ` as the arcs of `τ` (this is the pairing
/// drawn in the worked example; it keeps `cr`, and the depth of every
/// marked element, and is an involution).
pub fn psi_blocks(
    n1: usize,
    n2: usize,
    tau: &SetPartition,
    marked: &[usize],
) -> Result<(SetPartition, Vec<usize>)> {
    let big = n1 + n2;
    if tau.size() != big {
        return Err(Error::Domain(format!("τ must partition {big} elements")));
    }
    check_inhomogeneous(tau, &BoxedGroundSet::new(&[n1, n2]), true)?;
    check_marked(tau, marked, &tau.maxima(), "A")?;
    let arcs = tau.arcs();
    let lefts: Vec<usize> = arcs.iter().map(|&(a, _)| a).collect();
    let mut rights: Vec<usize> = arcs.iter().map(|&(_, b)| b).collect();
    rights.sort_unstable();
    // ρ(r): rank of the partner of the r-th left endpoint.
    let rho: Vec<usize> = arcs
        .iter()
        .map(|&(_, b)| rights.binary_search(&b).expect("present"))
        .collect();
    let bar = |x: usize| big - 1 - x;
    let mut new_lefts: Vec<usize> = rights.iter().map(|&j| bar(j)).collect();
    new_lefts.sort_unstable();
    let mut new_rights: Vec<usize> = lefts.iter().map(|&i| bar(i)).collect();
    new_rights.sort_unstable();
    let new_arcs: Vec<(usize, usize)> = new_lefts
        .iter()
        .zip(&rho)
        .map(|(&l, &r)| (l, new_rights[r]))
        .collect();
    let image = SetPartition::from_arcs(big, &new_arcs)?;
    let singles: BTreeSet<usize> = tau.singletons().into_iter().collect();
    let mut new_marked: Vec<usize> = singles.iter().map(|&s| bar(s)).collect();
    for a in marked.iter().filter(|a| !singles.contains(a)) {
        let l = rights.binary_search(a).expect("a marked maximum closes an arc");
        new_marked.push(new_rights[l]);
    }
    new_marked.sort_unstable();
    Ok((image, new_marked))
}

/// `Γ`: replaces `(τ, A)` by `ψ_(n1,n2)(τ, A)`.
pub fn gamma_map(d: &Decomposition) -> Result<Decomposition> {
    let Scheme::H { n, n1, n2 } = d.scheme else {
        return Err(Error::Domain("Γ applies to H-decompositions".into()));
    };
    let (tau, marked) = psi_blocks(n1, n2, &d.tau, &d.marked)?;
    Ok(Decomposition {
        scheme: Scheme::H { n, n1: n2, n2: n1 },
        tau,
        marked,
        ..d.clone()
    })
}

/// `Θ_n^(n1,n2)`.
pub fn theta(n1: usize, n2: usize, p: &SetPartition) -> Result<SetPartition> {
    let d = decompose(p, Scheme::H { n: p.size(), n1, n2 })?;
    gamma_map(&d)?.recompose()
}

/// Every member of `P(boxes)`.
pub fn inhomogeneous_partitions(boxes: &[usize]) -> Vec<SetPartition> {
    let g = BoxedGroundSet::new(boxes);
    let mut out = Vec::new();
    for_each_partition(&g, Filter::Inhomogeneous, &EnumerationCaps::uniform(g.total()), |p| {
        out.push(p.clone())
    })
    .expect("cap equals size");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> SetPartition {
        SetPartition::parse(s).unwrap()
    }

    fn one(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x + 1).collect()
    }

    #[test]
    fn motzkin_path_pairing() {
        let p = part("1 4 15/2 3/5 6/7 10 13/8/9 11/12 14");
        let got: Vec<(usize, usize)> = psi_pairing(&p).into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
        assert_eq!(
            got,
            vec![(1, 15), (2, 3), (5, 6), (7, 14), (8, 8), (9, 11), (12, 13)]
        );
        let prof = motzkin_profile(&p);
        assert_eq!(prof.heights[..3], [0, 1, 2]);
        assert_eq!(prof.heights[14], 1);
        assert_eq!(psi_pairing(&part("1 2 3 4")), BTreeMap::from([(0, 3)]));
        assert_eq!(psi_pairing(&part("1/2/3")), BTreeMap::from([(0, 0), (1, 1), (2, 2)]));
    }

    #[test]
    fn depth_and_noninversions() {
        let p = part("1 4 6/2/3 5");
        assert_eq!(depths(&p), vec![0, 1, 1, 1, 1, 0]);
        assert_eq!(noninversions(&[2, 0, 3, 1]), 3);
        assert_eq!(crossings(&part("1 3/2 4")), 1);
    }

    // The 13-point example: π₁ ∈ ^(4)P_13 and π₂ = Φ(π₁) ∈ P_13^(4).
    fn pi1() -> SetPartition {
        part("1 6/2 9/3 5 8/4 7 11/10 12 13")
    }

    fn pi2() -> SetPartition {
        part("1 4 10/2 12/3 7/5 13/6 8 9 11")
    }

    #[test]
    fn f_and_g_examples() {
        let g = decompose(&pi1(), Scheme::G { n: 13, k: 4 }).unwrap();
        assert_eq!(g.tau, part("1 4/2/3 7/5/6 8 9"));
        assert_eq!(one(&g.marked), vec![1, 2, 3, 5]);
        assert_eq!(one(&g.sigma), vec![3, 1, 4, 2]);

        let f = decompose(&pi2(), Scheme::F { n: 13, k: 4 }).unwrap();
        assert_eq!(f.tau, g.tau);
        assert_eq!(one(&f.marked), vec![2, 4, 5, 9]);
        assert_eq!(one(&f.sigma), vec![3, 1, 4, 2]);

        let small = decompose(&part("1 3/2 4"), Scheme::F { n: 4, k: 2 }).unwrap();
        assert_eq!(small.tau, part("1/2"));
        assert_eq!(small.marked, vec![0, 1]);
        assert_eq!(small.sigma, vec![0, 1]);
        assert_eq!(small.recompose().unwrap(), part("1 3/2 4"));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(13, 4, &pi1()).unwrap(), pi2());
        assert_eq!(phi(4, 2, &part("1 3/2 4")).unwrap(), part("1 3/2 4"));
        assert_eq!(phi(3, 1, &part("1 2 3")).unwrap(), part("1 2 3"));
    }

    #[test]
    fn domain_errors() {
        assert_eq!(
            decompose(&part("1 3/2/4"), Scheme::F { n: 4, k: 2 }),
            Err(Error::SingletonFound(2))
        );
        assert_eq!(
            decompose(&part("1 2/3 4"), Scheme::G { n: 4, k: 2 }),
            Err(Error::HomogeneousArc(1, 2))
        );
        assert!(matches!(
            decompose(&part("1 2"), Scheme::F { n: 2, k: 2 }),
            Err(Error::Domain(_))
        ));
    }

    // The 14-point example for H, Γ and Θ with (n1, n2) = (3, 4).
    fn theta_pi1() -> SetPartition {
        part("1 10/2 4 13/3 6/5 9/7 11 12/8 14")
    }

    fn theta_pi2() -> SetPartition {
        part("1 10/2 5 9/3 13/4 6/7 11 12/8 14")
    }

    #[test]
    fn h_gamma_theta_examples() {
        let h = decompose(&theta_pi1(), Scheme::H { n: 14, n1: 3, n2: 4 }).unwrap();
        assert_eq!(h.tau, part("1/2 4/3 6/5/7"));
        assert_eq!(one(&h.marked), vec![1, 4, 5, 7]);
        assert_eq!(h.gamma, Some(part("1 7/2/3/4 5/6")));
        assert_eq!(one(&h.gamma_marked), vec![2, 3, 4, 6]);
        assert_eq!(one(&h.sigma), vec![2, 4, 1, 3]);
        assert!(h.to_string().contains("B = {9 10 11 13}"));

        let g = gamma_map(&h).unwrap();
        assert_eq!(g.tau, part("1/2 5/3/4 6/7"));
        assert_eq!(one(&g.marked), vec![1, 3, 5, 7]);

        assert_eq!(theta(3, 4, &theta_pi1()).unwrap(), theta_pi2());
        assert_eq!(theta(4, 3, &theta_pi2()).unwrap(), theta_pi1());
        assert_eq!(theta(1, 1, &part("1 2 3")).unwrap(), part("1 2 3"));
    }

    #[test]
    fn psi_blocks_example() {
        let tau = part("1 8/2 6/3/4 9/5/7/10");
        let (img, marked) = psi_blocks(4, 6, &tau, &[2, 4, 5, 6, 7, 9]).unwrap();
        assert_eq!(img, part("1/2 9/3 7/4/5 10/6/8"));
        assert_eq!(one(&marked), vec![1, 4, 6, 7, 8, 9]);
        let (back, back_marked) = psi_blocks(6, 4, &img, &marked).unwrap();
        assert_eq!(back, tau);
        assert_eq!(one(&back_marked), vec![3, 5, 6, 7, 8, 10]);
    }

    #[test]
    fn small_exhaustive_phi() {
        for n in 2..=6 {
            for k in 1..n {
                let domain = inhomogeneous_partitions(&Scheme::G { n, k }.boxes());
                let mut images = BTreeSet::new();
                for p in &domain {
                    let q = phi(n, k, p).unwrap();
                    assert_eq!(crossings(&q), crossings(p));
                    assert_eq!(q.blocks().len(), p.blocks().len());
                    images.insert(q);
                }
                assert_eq!(images.len(), domain.len());
            }
        }
    }
}
