//! Cross-checks against brute-force oracles that share no code path with the
//! sweeps and enumerators they check.
//!
//! Separability oracle: a subset `A` of `T` is cut out of `T` by one
//! halfplane iff the hulls of `A` and `T ∖ A` are disjoint. `A ∈ I_k` iff some
//! `T ∈ I_{k-1}` contains `A` and `A` is 1-separable within `T`.

use std::collections::BTreeSet;

use coarseness::coloring::{balanced_coloring, random_coloring};
use coarseness::discrepancy::{max_disc_wedge_nested, AngularIndex};
use coarseness::instances::{generate, Shape};
use coarseness::partitions::{enumerate_convex_partitions, PartitionLimit};
use coarseness::point_set::{full_mask, members_of, Mask};
use coarseness::*;

fn hull_of_mask(ps: &ColoredPointSet, m: Mask) -> ConvexPolygon {
    convex_hull(&members_of(m).iter().map(|&i| ps.point(i)).collect::<Vec<_>>())
}

fn separable_within(ps: &ColoredPointSet, a: Mask, t: Mask) -> bool {
    hulls_disjoint(&hull_of_mask(ps, a), &hull_of_mask(ps, t & !a))
}

/// Oracle family `I_k` as masks.
fn oracle_family(ps: &ColoredPointSet, k: usize) -> BTreeSet<Mask> {
    let all = full_mask(ps.len());
    let subsets = || (0..=all).filter(move |m| m & !all == 0);
    let mut fam: BTreeSet<Mask> = subsets().filter(|&a| separable_within(ps, a, all)).collect();
    for _ in 1..k {
        let prev = fam.clone();
        for a in subsets() {
            if !fam.contains(&a) && prev.iter().any(|&t| t & a == a && separable_within(ps, a, t)) {
                fam.insert(a);
            }
        }
    }
    fam
}

fn mask_disc(ps: &ColoredPointSet, m: Mask) -> u32 {
    disc(ps, &members_of(m))
}

fn instances(max_n: usize, per_n: u64) -> Vec<ColoredPointSet> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for seed in 0..per_n {
            let shape = [Shape::RandomDisc, Shape::Grid, Shape::ConvexGon][(seed % 3) as usize];
            let pts = generate(shape, n, seed * 31 + n as u64, 400).unwrap();
            out.push(if seed % 2 == 0 { random_coloring(&pts, seed).unwrap() } else { balanced_coloring(&pts, seed).unwrap() });
        }
    }
    out
}

#[test]
fn one_separable_family_matches_oracle() {
    for ps in instances(8, 4) {
        let got: BTreeSet<Mask> = enumerate_islands(&ps, 1, &Budget::default())
            .unwrap()
            .iter()
            .map(|i| coarseness::point_set::mask_of(&i.members))
            .collect();
        assert_eq!(got, oracle_family(&ps, 1), "{:?}", ps.points());
    }
}

#[test]
fn k_separable_families_match_oracle() {
    for ps in instances(6, 3) {
        for k in 2..=3 {
            let islands = enumerate_islands(&ps, k, &Budget::default()).unwrap();
            let got: BTreeSet<Mask> = islands.iter().map(|i| coarseness::point_set::mask_of(&i.members)).collect();
            assert_eq!(got, oracle_family(&ps, k), "k={k} {:?}", ps.points());
            for isl in &islands {
                assert!(isl.certificate.len() <= k && isl.certificate_matches(&ps));
            }
        }
    }
}

#[test]
fn separability_number_matches_oracle_levels() {
    for ps in instances(6, 2) {
        let levels: Vec<BTreeSet<Mask>> = (1..=4).map(|k| oracle_family(&ps, k)).collect();
        for a in 0..=full_mask(ps.len()) {
            let members = members_of(a);
            match separability_number(&ps, &members, 4, &Budget::default()) {
                Ok(Some(sep)) => {
                    let expected = levels.iter().position(|l| l.contains(&a)).map(|p| p + 1);
                    assert_eq!(Some(sep.halfplanes), expected);
                }
                Ok(None) => assert!(!levels[3].contains(&a)),
                Err(Error::NotAnIsland { .. }) => assert!(!levels[3].contains(&a)),
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn sweeps_match_oracle_maxima() {
    for ps in instances(9, 6) {
        let o1 = oracle_family(&ps, 1).iter().map(|&m| mask_disc(&ps, m)).max().unwrap();
        let o2 = oracle_family(&ps, 2).iter().map(|&m| mask_disc(&ps, m)).max().unwrap();
        let d1 = max_disc_halfplane(&ps);
        let d2 = max_disc_wedge(&ps);
        let nested = max_disc_wedge_nested(&ps);
        assert_eq!((d1.value, d2.value, nested.value), (o1, o2, o2), "{:?} {:?}", ps.points(), ps.colors());
        for r in [&d1, &d2, &nested] {
            assert!(r.witness.certificate_matches(&ps));
            assert_eq!(disc(&ps, &r.witness.members), r.value);
        }
        assert_eq!(d1.witness.certificate.len(), 1);
        assert!(d2.witness.certificate.len() <= 2);
    }
}

#[test]
fn wedge_routes_agree_at_moderate_size() {
    for seed in 0..6 {
        let pts = generate(Shape::RandomDisc, 24, seed, 10_000).unwrap();
        let ps = random_coloring(&pts, seed).unwrap();
        let fast = max_disc_wedge(&ps);
        let nested = max_disc_wedge_nested(&ps);
        assert_eq!(fast.value, nested.value);
        assert!(fast.witness.certificate_matches(&ps));
    }
}

/// All restricted growth strings of length n, as block masks.
fn all_set_partitions(n: usize) -> Vec<Vec<Mask>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] |= 1 << i;
            rec(i + 1, n, blocks, out);
            blocks[b] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn partition_enumeration_matches_filtered_set_partitions() {
    for ps in instances(7, 3) {
        let expected: BTreeSet<Vec<Vec<usize>>> = all_set_partitions(ps.len())
            .into_iter()
            .map(|blocks| blocks.into_iter().map(members_of).collect::<Vec<_>>())
            .filter(|blocks| validate_partition(&ps, blocks).is_ok())
            .collect();
        let got = enumerate_convex_partitions(&ps, &PartitionLimit::default()).unwrap();
        let got_set: BTreeSet<Vec<Vec<usize>>> = got.iter().map(|p| p.block_members()).collect();
        assert_eq!(got.len(), got_set.len(), "duplicates emitted");
        assert_eq!(got_set, expected);
        let best = expected
            .iter()
            .map(|b| b.iter().map(|m| disc(&ps, m)).min().unwrap_or(0))
            .max()
            .unwrap_or(0);
        assert_eq!(exact_coarseness(&ps, &PartitionLimit::default()).unwrap().value, best);
    }
}

#[test]
fn angular_index_is_color_independent() {
    let pts = generate(Shape::Grid, 30, 2, 100_000).unwrap();
    let index = AngularIndex::new(&pts);
    for seed in 0..4 {
        let ps = random_coloring(&pts, seed).unwrap();
        assert_eq!(
            coarseness::discrepancy::max_disc_wedge_indexed(&ps, &index).value,
            max_disc_wedge(&ps).value
        );
    }
}
