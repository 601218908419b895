mod common;

use common::*;
use mapcalc::codec::{
    parse_gem, parse_graph, parse_rotation, parse_word, write_gem, zigzag_map_from_word,
};
use mapcalc::theorems::{check_theorem4, verify_all};
use mapcalc::zigzag::{word_operators, zigzag_word};
use mapcalc::{Gf2Vec, GonKind, LinearOp};

fn cols(table: [&[usize]; 6]) -> LinearOp {
    LinearOp::from_columns(
        table
            .iter()
            .map(|c| Gf2Vec::from_indices(6, c.iter().map(|i| i - 1)).unwrap())
            .collect(),
    )
    .unwrap()
}

#[test]
fn k4_rotation_reproduces_published_operators() {
    let rot = parse_rotation(&data("k4.rot")).unwrap();
    let map = rot.to_map();
    assert_eq!(map.gon_counts(), (4, 1, 1));
    let g = map.induced_graph(GonKind::V);
    assert_eq!(g.degrees(), vec![3; 4]);
    assert!(g.edges().iter().all(|&(a, b)| a != b));

    let ops = word_operators(&map);
    let c_pt = cols([
        &[1, 5, 4, 6],
        &[6, 5, 3],
        &[2, 4],
        &[4, 3, 1, 5],
        &[4, 1, 2],
        &[1, 2],
    ]);
    let c_d = cols([
        &[5, 3],
        &[3, 6, 5],
        &[3, 1, 6, 2],
        &[6, 5],
        &[4, 2, 1],
        &[6, 2, 3, 4],
    ]);
    assert_eq!(ops.c_ptilde.unwrap(), c_pt);
    assert_eq!(ops.c_d.unwrap(), c_d);
    let t4 = check_theorem4(&map);
    assert!(t4.applicable && t4.holds);
}

#[test]
fn k4_rotation_matches_edge_list() {
    let rot = parse_rotation(&data("k4.rot")).unwrap();
    let g = parse_graph(&data("k4.graph")).unwrap();
    let mut a: Vec<_> = rot
        .graph()
        .edges()
        .iter()
        .map(|&(x, y)| (x.min(y), x.max(y)))
        .collect();
    let mut b: Vec<_> = g
        .edges()
        .iter()
        .map(|&(x, y)| (x.min(y), x.max(y)))
        .collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn k33_word_file() {
    let w = parse_word(&data("k33.szw")).unwrap();
    assert_eq!(w.m(), 9);
    let map = zigzag_map_from_word(&w);
    assert!(zigzag_word(&map).unwrap().equivalent(&w));
    let reports = verify_all(&map).unwrap();
    assert!(reports.iter().all(|r| !r.violated()));
    // theorem 4 needs a single face; K_{3,3} here has four
    assert!(!reports.last().unwrap().applicable);
}

#[test]
fn sphere_loop_gem() {
    let map = parse_gem(&data("s1.gem")).unwrap();
    assert_eq!(map.gon_counts(), (1, 2, 1));
    let t4 = check_theorem4(&map);
    assert!(!t4.applicable);
    assert_eq!(t4.reason.as_deref(), Some("2 faces"));
    assert_eq!(parse_gem(&write_gem(&map)).unwrap(), map.normalize());
}
