use super::{BoxedGroundSet, DiagramObject, SetPartition};

/// Every statistic the weight rules can refer to. Fields that do not apply to
/// an object kind are zero (or empty).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatRecord {
    pub cr: usize,
    pub bl: usize,
    pub sg: usize,
    pub tr: usize,
    pub cyc: usize,
    pub exc: usize,
    pub wex: usize,
    pub drop: usize,
    pub fix: usize,
    pub ninv: usize,
    pub exc_b: usize,
    pub drop_b: usize,
    /// `#{j ∈ S_i : σ(j) ∈ S_i}` per box.
    pub fix_per_box: Vec<usize>,
    /// Arcs with both ends in `S_i`, per box.
    pub hom_per_box: Vec<usize>,
    /// Number of arcs `(a, b)` with `a < i < b`, per element.
    pub depth: Vec<usize>,
}

pub fn statistics(o: &DiagramObject, g: &BoxedGroundSet) -> StatRecord {
    match o {
        DiagramObject::Matching(p) | DiagramObject::Partition(p) => partition_stats(p, g),
        DiagramObject::Permutation(s) => permutation_stats(s, g),
    }
}

pub fn partition_stats(p: &SetPartition, g: &BoxedGroundSet) -> StatRecord {
    let n = p.size();
    let arcs = p.arcs();
    let mut cr = 0;
    for (x, &(i1, j1)) in arcs.iter().enumerate() {
        for &(i2, j2) in &arcs[x + 1..] {
            if (i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1) {
                cr += 1;
            }
        }
    }
    let mut hom_per_box = vec![0; g.num_boxes()];
    for &(a, b) in &arcs {
        if g.box_of(a) == g.box_of(b) {
            hom_per_box[g.box_of(a)] += 1;
        }
    }
    let depth = (0..n)
        .map(|i| arcs.iter().filter(|&&(a, b)| a < i && i < b).count())
        .collect();
    let sg = p.blocks().iter().filter(|b| b.len() == 1).count();
    let tr = p.blocks().iter().map(|b| b.len().saturating_sub(2)).sum();
    StatRecord {
        cr,
        bl: p.blocks().len(),
        sg,
        tr,
        hom_per_box,
        fix_per_box: vec![0; g.num_boxes()],
        depth,
        ..StatRecord::default()
    }
}

/// `Σ_i #{j < i ≤ σ(j) < σ(i)} + Σ_i #{j > i > σ(j) > σ(i)}`.
pub fn permutation_crossings(s: &[usize]) -> usize {
    let n = s.len();
    let mut cr = 0;
    for i in 0..n {
        for j in 0..n {
            if (j < i && i <= s[j] && s[j] < s[i]) || (j > i && i > s[j] && s[j] > s[i]) {
                cr += 1;
            }
        }
    }
    cr
}

pub fn permutation_stats(s: &[usize], g: &BoxedGroundSet) -> StatRecord {
    let n = s.len();
    let mut r = StatRecord {
        fix_per_box: vec![0; g.num_boxes()],
        hom_per_box: vec![0; g.num_boxes()],
        ..StatRecord::default()
    };
    let mut seen = vec![false; n];
    for start in 0..n {
        if !seen[start] {
            r.cyc += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = s[x];
            }
        }
    }
    for (i, &v) in s.iter().enumerate() {
        match v.cmp(&i) {
            std::cmp::Ordering::Greater => r.exc += 1,
            std::cmp::Ordering::Less => r.drop += 1,
            std::cmp::Ordering::Equal => r.fix += 1,
        }
        let (bi, bv) = (g.box_of(i), g.box_of(v));
        match bv.cmp(&bi) {
            std::cmp::Ordering::Greater => r.exc_b += 1,
            std::cmp::Ordering::Less => r.drop_b += 1,
            std::cmp::Ordering::Equal => r.fix_per_box[bi] += 1,
        }
        r.ninv += s[i + 1..].iter().filter(|&&w| w > v).count();
    }
    r.wex = r.exc + r.fix;
    r.cr = permutation_crossings(s);
    r
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate, EnumerationCaps, Filter, ObjectKind};
    use super::*;

    #[test]
    fn worked_examples() {
        let m = SetPartition::parse("1 4/2 6/3 7/5 8").unwrap();
        let g = BoxedGroundSet::new(&[8]);
        assert_eq!(partition_stats(&m, &g).cr, 5);

        let p = SetPartition::parse("1 4/2 3 7/5 8/6").unwrap();
        let r = partition_stats(&p, &g);
        assert_eq!((r.cr, r.bl, r.sg, r.tr), (2, 4, 1, 1));
    }

    #[test]
    fn identity_permutation() {
        let g = BoxedGroundSet::new(&[3]);
        let r = permutation_stats(&[0, 1, 2], &g);
        assert_eq!((r.exc, r.wex, r.cr, r.cyc, r.drop), (0, 3, 0, 3, 0));
        assert_eq!(r.fix_per_box, vec![3]);
    }

    #[test]
    fn crossings_of_two_two_derangements() {
        let g = BoxedGroundSet::new(&[2, 2]);
        let mut crs: Vec<usize> =
            enumerate(&g, ObjectKind::Permutation, Filter::Inhomogeneous, &EnumerationCaps::default())
                .unwrap()
                .iter()
                .map(|o| statistics(o, &g).cr)
                .collect();
        crs.sort_unstable();
        assert_eq!(crs, vec![0, 1, 1, 2]);
    }

    #[test]
    fn depth_counts_spanning_arcs() {
        let p = SetPartition::parse("1 3/2/4").unwrap();
        let r = partition_stats(&p, &BoxedGroundSet::new(&[4]));
        assert_eq!(r.depth, vec![0, 1, 0, 0]);
    }
}
