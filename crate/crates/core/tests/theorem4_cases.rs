//! The auxiliary maps of the single-face single-zigzag argument, built with
//! per-rectangle role permutations, behave as the three cases require.

mod common;

use common::*;
use mapcalc::codec::{parse_rotation, zigzag_map_from_word};
use mapcalc::search::search_embedding;
use mapcalc::spaces::bond_of;
use mapcalc::zigzag::{face_word, ptilde_word};
use mapcalc::{Budget, FlagMap, GonKind, LoopBalance, RolePerm};
use rand::Rng;

/// Single-face single-zigzag maps: the K_4 fixture, zigzag maps of random
/// words that happen to have one face, and search results.
fn corpus() -> Vec<FlagMap> {
    let mut out = vec![parse_rotation(&data("k4.rot")).unwrap().to_map()];
    let mut rng = rng(44);
    while out.len() < 40 {
        let m = rng.random_range(1..=8);
        let map = zigzag_map_from_word(&random_word(&mut rng, m));
        if map.gon_count(GonKind::F) == 1 {
            out.push(map);
        }
    }
    for _ in 0..10 {
        let n = rng.random_range(2..=5);
        let g = random_connected_graph(&mut rng, n, 2);
        let budget = Budget {
            max_subdivisions: 2,
            ..Budget::default()
        };
        if let Some(map) = search_embedding(&g, &budget, 1).unwrap().map {
            out.push(map);
        }
    }
    out
}

#[test]
fn auxiliary_maps() {
    let (mut seen_i, mut seen_ii, mut seen_iii) = (0, 0, 0);
    for map in corpus() {
        assert_eq!(
            (map.gon_count(GonKind::F), map.gon_count(GonKind::Z)),
            (1, 1)
        );
        let d = map.dual();
        let ptilde = map.phial().antimap();
        let dw = face_word(&map).unwrap();
        let pw = ptilde_word(&map).unwrap();
        for x in 0..map.m() {
            let mut link = dw.interlacement(x).unwrap();
            assert!(!link.get(x));
            link.toggle(x);
            let in_d = d.loop_balance(x).unwrap();
            let in_p = ptilde.loop_balance(x).unwrap();
            if in_d == LoopBalance::Balanced {
                seen_i += 1;
                let d1 = d.apply_permutation(&[x], RolePerm::DUAL).unwrap();
                assert_eq!(d1.gon_count(GonKind::V), 2);
                assert_eq!(bond_of(&d1.induced_graph(GonKind::V), &[0]).unwrap(), link);
            } else if in_p == LoopBalance::Balanced {
                seen_ii += 1;
                let d2 = d.apply_permutation(&[x], RolePerm::PHIAL).unwrap();
                assert_eq!(d2.gon_count(GonKind::V), 2);
                assert_eq!(bond_of(&d2.induced_graph(GonKind::V), &[0]).unwrap(), link);
                let odd = dw
                    .interlacement(x)
                    .unwrap()
                    .bilinear_form(&pw.interlacement(x).unwrap());
                assert!(odd.unwrap());
            } else {
                seen_iii += 1;
                let d3 = d.apply_permutation(&[x], RolePerm::ANTIMAP).unwrap();
                assert_eq!(d3.gon_count(GonKind::V), 1);
                assert_eq!(d3.loop_balance(x).unwrap(), LoopBalance::Balanced);
                let odd = dw
                    .interlacement(x)
                    .unwrap()
                    .bilinear_form(&pw.interlacement(x).unwrap());
                assert!(odd.unwrap());
            }
        }
    }
    assert!(
        seen_i > 0 && seen_ii > 0 && seen_iii > 0,
        "{seen_i} {seen_ii} {seen_iii}"
    );
}
