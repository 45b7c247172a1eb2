use super::{BoxRole, BoxedGroundSet, DiagramObject, Filter, ObjectKind, SetPartition};
use crate::error::{Error, Result};

/// Largest ground sets the enumerators accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub set_objects: usize,
    pub permutations: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            set_objects: 12,
            permutations: 9,
        }
    }
}

impl EnumerationCaps {
    /// Same cap for every kind.
    pub fn uniform(n: usize) -> Self {
        EnumerationCaps {
            set_objects: n,
            permutations: n,
        }
    }

    pub fn check(&self, kind: ObjectKind, n: usize) -> Result<()> {
        let (what, cap) = match kind {
            ObjectKind::Matching => ("matching ground set", self.set_objects),
            ObjectKind::Partition => ("partition ground set", self.set_objects),
            ObjectKind::Permutation => ("permutation ground set", self.permutations),
        };
        if n > cap {
            return Err(Error::CapExceeded { what, size: n, cap });
        }
        Ok(())
    }
}

fn may_join(g: &BoxedGroundSet, filter: Filter, a: usize, b: usize) -> bool {
    filter == Filter::All || g.box_of(a) != g.box_of(b)
}

fn may_be_singleton(g: &BoxedGroundSet, filter: Filter, e: usize) -> bool {
    filter == Filter::All || g.role_of(e) == BoxRole::Free
}

/// Visits every perfect matching, smallest unmatched element first.
pub fn for_each_matching(
    g: &BoxedGroundSet,
    filter: Filter,
    caps: &EnumerationCaps,
    mut visit: impl FnMut(&SetPartition),
) -> Result<()> {
    let n = g.total();
    caps.check(ObjectKind::Matching, n)?;
    if n % 2 == 1 {
        return Ok(());
    }
    let mut partner = vec![usize::MAX; n];
    matching_rec(g, filter, &mut partner, &mut visit);
    Ok(())
}

fn matching_rec(
    g: &BoxedGroundSet,
    filter: Filter,
    partner: &mut [usize],
    visit: &mut impl FnMut(&SetPartition),
) {
    let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
        let blocks = (0..partner.len())
            .filter(|&i| partner[i] > i)
            .map(|i| vec![i, partner[i]])
            .collect();
        visit(&SetPartition::from_blocks(blocks));
        return;
    };
    for j in i + 1..partner.len() {
        if partner[j] == usize::MAX && may_join(g, filter, i, j) {
            partner[i] = j;
            partner[j] = i;
            matching_rec(g, filter, partner, visit);
            partner[i] = usize::MAX;
            partner[j] = usize::MAX;
        }
    }
}

/// Visits every set partition; element `e` either joins an earlier block or
/// opens a new one, with forbidden joins pruned at choice time.
pub fn for_each_partition(
    g: &BoxedGroundSet,
    filter: Filter,
    caps: &EnumerationCaps,
    mut visit: impl FnMut(&SetPartition),
) -> Result<()> {
    let n = g.total();
    caps.check(ObjectKind::Partition, n)?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    partition_rec(g, filter, 0, &mut blocks, &mut visit);
    Ok(())
}

fn partition_rec(
    g: &BoxedGroundSet,
    filter: Filter,
    e: usize,
    blocks: &mut Vec<Vec<usize>>,
    visit: &mut impl FnMut(&SetPartition),
) {
    let n = g.total();
    // Blocks that must still grow: singletons not allowed to stay alone.
    let needy = blocks
        .iter()
        .filter(|b| b.len() == 1 && !may_be_singleton(g, filter, b[0]))
        .count();
    if needy > n - e {
        return;
    }
    if e == n {
        visit(&SetPartition {
            blocks: blocks.clone(),
        });
        return;
    }
    for k in 0..blocks.len() {
        if blocks[k].iter().all(|&x| may_join(g, filter, x, e)) {
            blocks[k].push(e);
            partition_rec(g, filter, e + 1, blocks, visit);
            blocks[k].pop();
        }
    }
    blocks.push(vec![e]);
    partition_rec(g, filter, e + 1, blocks, visit);
    blocks.pop();
}

/// Visits every permutation as a function table; under the inhomogeneous
/// filter a deranged box never maps into itself.
pub fn for_each_permutation(
    g: &BoxedGroundSet,
    filter: Filter,
    caps: &EnumerationCaps,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    let n = g.total();
    caps.check(ObjectKind::Permutation, n)?;
    let mut sigma = vec![0; n];
    let mut used = vec![false; n];
    permutation_rec(g, filter, 0, &mut sigma, &mut used, &mut visit);
    Ok(())
}

fn permutation_rec(
    g: &BoxedGroundSet,
    filter: Filter,
    i: usize,
    sigma: &mut [usize],
    used: &mut [bool],
    visit: &mut impl FnMut(&[usize]),
) {
    let n = sigma.len();
    if i == n {
        visit(sigma);
        return;
    }
    let restricted = filter == Filter::Inhomogeneous && g.role_of(i) != BoxRole::Free;
    for v in 0..n {
        if used[v] || (restricted && g.box_of(v) == g.box_of(i)) {
            continue;
        }
        used[v] = true;
        sigma[i] = v;
        permutation_rec(g, filter, i + 1, sigma, used, visit);
        used[v] = false;
    }
}

/// Collects every object of the class in enumeration order.
pub fn enumerate(
    g: &BoxedGroundSet,
    kind: ObjectKind,
    filter: Filter,
    caps: &EnumerationCaps,
) -> Result<Vec<DiagramObject>> {
    let mut out = Vec::new();
    match kind {
        ObjectKind::Matching => {
            for_each_matching(g, filter, caps, |m| out.push(DiagramObject::Matching(m.clone())))?
        }
        ObjectKind::Partition => for_each_partition(g, filter, caps, |p| {
            out.push(DiagramObject::Partition(p.clone()))
        })?,
        ObjectKind::Permutation => for_each_permutation(g, filter, caps, |s| {
            out.push(DiagramObject::Permutation(s.to_vec()))
        })?,
    }
    Ok(out)
}

/// Size of the class without materializing it.
pub fn count(
    g: &BoxedGroundSet,
    kind: ObjectKind,
    filter: Filter,
    caps: &EnumerationCaps,
) -> Result<u64> {
    let mut c = 0u64;
    match kind {
        ObjectKind::Matching => for_each_matching(g, filter, caps, |_| c += 1)?,
        ObjectKind::Partition => for_each_partition(g, filter, caps, |_| c += 1)?,
        ObjectKind::Permutation => for_each_permutation(g, filter, caps, |_| c += 1)?,
    }
    Ok(c)
}

/// All set partitions of `0..n`, unrestricted.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    let g = BoxedGroundSet::new(&vec![1; n]);
    let mut out = Vec::new();
    for_each_partition(&g, Filter::All, &EnumerationCaps::uniform(n), |p| {
        out.push(p.clone())
    })
    .expect("cap equals size");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> EnumerationCaps {
        EnumerationCaps::default()
    }

    #[test]
    fn known_counts() {
        let g = BoxedGroundSet::new(&[2, 2]);
        let ms = enumerate(&g, ObjectKind::Matching, Filter::Inhomogeneous, &caps()).unwrap();
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, vec!["1 3/2 4", "1 4/2 3"]);
        assert_eq!(
            count(&g, ObjectKind::Permutation, Filter::Inhomogeneous, &caps()).unwrap(),
            4
        );
        let g = BoxedGroundSet::new(&[1, 1, 1]);
        let ps = enumerate(&g, ObjectKind::Partition, Filter::Inhomogeneous, &caps()).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].to_string(), "1 2 3");
    }

    #[test]
    fn unrestricted_counts_are_classical() {
        // Bell numbers, double factorials, factorials.
        let bell = [1u64, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            let g = BoxedGroundSet::new(&vec![1; n]);
            assert_eq!(count(&g, ObjectKind::Partition, Filter::All, &caps()).unwrap(), b);
        }
        let g = BoxedGroundSet::new(&[6]);
        assert_eq!(count(&g, ObjectKind::Matching, Filter::All, &caps()).unwrap(), 15);
        assert_eq!(count(&g, ObjectKind::Permutation, Filter::All, &caps()).unwrap(), 720);
        // Classical derangements: singleton boxes.
        let g = BoxedGroundSet::new(&[1; 5]);
        assert_eq!(
            count(&g, ObjectKind::Permutation, Filter::Inhomogeneous, &caps()).unwrap(),
            44
        );
    }

    #[test]
    fn free_box_allows_singletons_but_not_sharing() {
        let g = BoxedGroundSet::with_roles(&[2], &[BoxRole::Free]).unwrap();
        let ps = enumerate(&g, ObjectKind::Partition, Filter::Inhomogeneous, &caps()).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].to_string(), "1/2");
    }

    #[test]
    fn caps_are_enforced() {
        let g = BoxedGroundSet::new(&[5, 5]);
        assert!(matches!(
            count(&g, ObjectKind::Permutation, Filter::All, &caps()),
            Err(Error::CapExceeded { size: 10, cap: 9, .. })
        ));
    }
}
