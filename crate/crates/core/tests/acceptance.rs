//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use mapcalc::codec::{parse_word, zigzag_map_from_word};
use mapcalc::search::{enumerate_maps, search_embedding};
use mapcalc::spaces::space_bundle;
use mapcalc::theorems::{check_absorption, check_theorem2, check_theorem3, check_theorem4};
use mapcalc::zigzag::{face_word, ptilde_word, zigzag_word};
use mapcalc::{
    Budget, FlagMap, Gf2Subspace, Gf2Vec, GonKind, Graph, LinearOp, RolePerm, SearchStatus,
    SignedWord,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (fn() -> Outcome, Option<u64>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn set(len: usize, one_based: &[usize]) -> Gf2Vec {
    Gf2Vec::from_indices(len, one_based.iter().map(|i| i - 1)).unwrap()
}

/// `c(x) = κ(x) + i(x)` straight from the letters of the word.
fn oracle_c(w: &SignedWord) -> Vec<u64> {
    let pos = |x: usize| -> Vec<usize> {
        w.entries()
            .iter()
            .enumerate()
            .filter(|(_, &(e, _))| e == x)
            .map(|(k, _)| k)
            .collect()
    };
    (0..w.m())
        .map(|x| {
            let p = pos(x);
            let mut col = 0u64;
            for &(e, _) in &w.entries()[p[0] + 1..p[1]] {
                col ^= 1 << e;
            }
            col &= !(1 << x);
            if w.entries()[p[1]].1 {
                col |= 1 << x;
            }
            col
        })
        .collect()
}

fn op_masks(op: &LinearOp) -> Vec<u64> {
    op.columns().iter().map(mask).collect()
}

fn criterion1() -> Outcome {
    let map = zigzag_map_from_word(&parse_word(K33_WORD).unwrap());
    let counts = map.gon_counts();
    ensure!(counts == (6, 4, 1), "gon counts {counts:?}");
    let (chi, xi) = map.euler_connectivity();
    ensure!((chi, xi) == (1, 1), "chi, xi = {chi}, {xi}");
    let g = map.induced_graph(GonKind::V);
    ensure!(g.vertex_count() == 6, "{} vertices", g.vertex_count());
    ensure!(g.is_bipartite(), "G_M not bipartite");
    ensure!(
        g.degrees().iter().all(|&d| d == 3),
        "degrees {:?}",
        g.degrees()
    );

    let c_p = zigzag_word(&map).unwrap().c_operator();
    ensure!(
        *c_p.column(0) == set(9, &[1, 2, 6, 7]),
        "c_P(1) = {}",
        c_p.column(0)
    );
    ensure!(
        *c_p.column(6) == set(9, &[1, 4, 8, 9]),
        "c_P(7) = {}",
        c_p.column(6)
    );

    let t2 = check_theorem2(&map).unwrap();
    ensure!(
        t2.iter().all(|r| r.applicable && r.holds),
        "theorem 2 failed: {t2:?}"
    );
    ensure!(
        t2[0].dims["dim Im(c_P)"] == 4 && t2[1].dims["dim Ker(c_P)"] == 5,
        "theorem 2 dims {:?} {:?}",
        t2[0].dims,
        t2[1].dims
    );
    let t3 = check_theorem3(&map).unwrap();
    ensure!(
        t3.iter().all(|r| r.applicable && r.holds),
        "theorem 3 failed: {t3:?}"
    );
    ensure!(
        t3[0].dims["dim Im"] == 1,
        "dim Im = {}",
        t3[0].dims["dim Im"]
    );
    Ok("v=6 f=4 z=1 chi=1 xi=1, c_P(1), c_P(7) exact, Im 4, Ker 5, Im(c_P~ c_P) 1".into())
}

fn criterion2() -> Outcome {
    let cols = |table: [&[usize]; 6]| {
        LinearOp::from_columns(table.iter().map(|c| set(6, c)).collect()).unwrap()
    };
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
    let comp = LinearOp::compose(&c_pt, &c_d).unwrap();
    ensure!(comp.is_identity(), "composition is not the identity");
    // each column of c_D expanded as a sum of c_P~ columns
    for x in 0..6 {
        let mut acc = Gf2Vec::zeros(6);
        for y in c_d.column(x).ones() {
            acc ^= c_pt.column(y);
        }
        ensure!(
            acc == Gf2Vec::singleton(6, x),
            "c_P~ c_D({}) = {acc}",
            x + 1
        );
    }
    Ok("c_P~ ∘ c_D = I_6, all six columns".into())
}

fn criterion3() -> Outcome {
    let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let out = search_embedding(&k4, &Budget::default(), 0).unwrap();
    ensure!(out.status == SearchStatus::Found, "status {:?}", out.status);
    ensure!(
        out.subdivisions.iter().all(|&k| k == 0),
        "used subdivisions"
    );
    let map = out.map.unwrap();
    ensure!(
        map.gon_count(GonKind::F) == 1 && map.gon_count(GonKind::Z) == 1,
        "f/z != 1"
    );
    let t4 = check_theorem4(&map);
    ensure!(t4.applicable && t4.holds, "theorem 4: {t4:?}");
    Ok(format!(
        "found after {} candidates, theorem 4 holds",
        out.candidates
    ))
}

fn criterion4() -> Outcome {
    let mut total = 0;
    for m in 1..=3 {
        for map in enumerate_maps(m, false) {
            total += 1;
            let reports = check_absorption(&map).unwrap();
            let b = space_bundle(&map).unwrap();
            let mut brute = Vec::new();
            for kind in GonKind::ALL {
                let g = map.induced_graph(kind);
                let bonds = brute_bonds(&g);
                ensure!(
                    members(b.bond(kind)) == bonds,
                    "bond space of {kind} differs"
                );
                ensure!(
                    members(b.cycle(kind)) == brute_cycles(&g),
                    "cycle space of {kind} differs"
                );
                brute.push(bonds);
            }
            let (v, f, z) = (&brute[0], &brute[1], &brute[2]);
            for (r, (x, y, t)) in reports.iter().zip([(v, f, z), (f, z, v), (z, v, f)]) {
                let holds =
                    (0..1u64 << m).all(|e| !(x.contains(&e) && y.contains(&e)) || t.contains(&e));
                ensure!(
                    holds && r.holds,
                    "{} fails on alpha {:?}",
                    r.theorem.label(),
                    map.alpha_slice()
                );
            }
        }
    }
    Ok(format!("{total} connected maps with m <= 3"))
}

fn criterion5() -> Outcome {
    let mut rng = rng(5);
    for case in 0..100 {
        let m = rng.random_range(1..=8);
        let w = random_word(&mut rng, m);
        let map = zigzag_map_from_word(&w);
        let t2 = check_theorem2(&map).unwrap();
        let t3 = check_theorem3(&map).unwrap();
        ensure!(
            t2.iter().chain(&t3).all(|r| r.applicable && r.holds),
            "case {case} word {w}: {t2:?} {t3:?}"
        );
        let c_p = zigzag_word(&map).unwrap().c_operator();
        let c_pt = ptilde_word(&map).unwrap().c_operator();
        ensure!(
            c_p.add(&c_pt).unwrap().is_identity(),
            "case {case}: c_P + c_P~ != I"
        );
        let v_cycle = &space_bundle(&map).unwrap().v_cycle;
        let cycles = brute_cycles(&map.induced_graph(GonKind::V));
        for col in c_p.columns() {
            ensure!(
                v_cycle.contains(col).unwrap(),
                "case {case}: column outside V⊥"
            );
            ensure!(cycles.contains(&mask(col)), "case {case}: column not even");
        }
    }
    Ok("100/100 words".into())
}

fn criterion6() -> Outcome {
    let mut rng = rng(6);
    for case in 0..100 {
        let m = rng.random_range(1..=8);
        let w = random_word(&mut rng, m);
        let back = zigzag_word(&zigzag_map_from_word(&w)).unwrap();
        ensure!(
            back.canonical() == w.canonical(),
            "case {case}: {w} came back as {back}"
        );
        ensure!(
            op_masks(&back.c_operator()) == oracle_c(&w),
            "case {case}: c operator differs"
        );
    }
    Ok("100/100 words".into())
}

fn random_subspace(rng: &mut rand_chacha::ChaCha8Rng, len: usize) -> (Gf2Subspace, Vec<u64>) {
    let k = rng.random_range(0..=len);
    let gens: Vec<u64> = (0..k).map(|_| rng.random_range(0..1u64 << len)).collect();
    let vecs: Vec<Gf2Vec> = gens.iter().map(|&g| vec_of(len, g)).collect();
    (Gf2Subspace::span(len, &vecs).unwrap(), gens)
}

fn criterion7() -> Outcome {
    let mut rng = rng(7);
    for case in 0..200 {
        let len = rng.random_range(1..=10);
        let (u, ug) = random_subspace(&mut rng, len);
        let (w, wg) = random_subspace(&mut rng, len);
        let (us, ws) = (brute_span(&ug), brute_span(&wg));
        ensure!(members(&u) == us, "case {case}: span differs");
        let sum: HashSet<u64> = us
            .iter()
            .flat_map(|a| ws.iter().map(move |b| a ^ b))
            .collect();
        ensure!(
            members(&u.sum(&w).unwrap()) == sum,
            "case {case}: sum differs"
        );
        let meet: HashSet<u64> = us.intersection(&ws).copied().collect();
        ensure!(
            members(&u.intersect(&w).unwrap()) == meet,
            "case {case}: intersection differs"
        );
        ensure!(
            members(&u.orth_complement()) == brute_complement(len, &us),
            "case {case}: complement differs"
        );
    }
    for case in 0..200 {
        let len = rng.random_range(1..=10);
        let cols: Vec<u64> = (0..len).map(|_| rng.random_range(0..1u64 << len)).collect();
        let op = LinearOp::from_columns(cols.iter().map(|&c| vec_of(len, c)).collect()).unwrap();
        let image = brute_span(&cols);
        let kernel: Vec<u64> = (0..1u64 << len)
            .filter(|&x| {
                (0..len)
                    .filter(|j| x >> j & 1 == 1)
                    .fold(0, |a, j| a ^ cols[j])
                    == 0
            })
            .collect();
        ensure!(members(&op.image()) == image, "op {case}: image differs");
        ensure!(
            members(&op.kernel()) == kernel.iter().copied().collect(),
            "op {case}: kernel differs"
        );
        ensure!(
            op.rank() + op.kernel().dim() == len,
            "op {case}: rank-nullity"
        );
        ensure!(1usize << op.rank() == image.len(), "op {case}: rank");
    }
    Ok("200 subspace pairs, 200 operators".into())
}

fn kind_of(role: mapcalc::gem::Role) -> GonKind {
    GonKind::ALL.into_iter().find(|k| k.role() == role).unwrap()
}

fn criterion8() -> Outcome {
    let mut rng = rng(8);
    for case in 0..50 {
        let m = rng.random_range(1..=6);
        let map = random_map(&mut rng, m);
        let parts = |x: &FlagMap, k| x.gons(k).partition();
        for (name, op, fixed) in [
            ("dual", FlagMap::dual as fn(&FlagMap) -> FlagMap, GonKind::Z),
            ("phial", FlagMap::phial, GonKind::F),
            ("antimap", FlagMap::antimap, GonKind::V),
        ] {
            let image = op(&map);
            ensure!(image.validate().is_valid(), "case {case}: {name} invalid");
            ensure!(
                op(&image) == map,
                "case {case}: {name} is not an involution"
            );
            ensure!(
                parts(&image, fixed) == parts(&map, fixed),
                "case {case}: {name} moved {fixed}-gons"
            );
            let swapped: Vec<GonKind> = GonKind::ALL.into_iter().filter(|&k| k != fixed).collect();
            ensure!(
                parts(&image, swapped[0]) == parts(&map, swapped[1]),
                "case {case}: {name} does not swap {}/{}",
                swapped[0],
                swapped[1]
            );
        }
        let counts = [
            map.gon_count(GonKind::V),
            map.gon_count(GonKind::F),
            map.gon_count(GonKind::Z),
        ];
        let mut profiles = HashSet::new();
        for pi in RolePerm::all() {
            let image = map.permute_all(pi);
            for k in GonKind::ALL {
                let expect = counts[kind_of(pi.source(k.role())) as usize];
                ensure!(
                    image.gon_count(k) == expect,
                    "case {case}: {pi} count of {k}"
                );
            }
            profiles.insert(image.gon_counts());
        }
        let mut sorted = counts;
        sorted.sort();
        let distinct = sorted.windows(2).filter(|w| w[0] != w[1]).count() + 1;
        let expected = [1, 3, 6][distinct - 1];
        ensure!(
            profiles.len() == expected,
            "case {case}: {} profiles",
            profiles.len()
        );
    }
    Ok("50 maps".into())
}

fn criterion9() -> Outcome {
    let mut rng = rng(9);
    let mut graphs = vec![Graph::new(
        4,
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    )];
    for _ in 0..20 {
        let n = rng.random_range(2..=5);
        let extra = rng.random_range(0..=3);
        graphs.push(random_connected_graph(&mut rng, n, extra));
    }
    let budget = Budget {
        max_subdivisions: 2,
        ..Budget::default()
    };
    let (mut found, mut checked) = (0, 0);
    for (i, g) in graphs.iter().enumerate() {
        let out = search_embedding(g, &budget, 9).unwrap();
        let Some(map) = out.map else { continue };
        found += 1;
        ensure!(
            map.gon_count(GonKind::F) == 1 && map.gon_count(GonKind::Z) == 1,
            "graph {i}: f/z"
        );
        let h = out.graph.unwrap();
        ensure!(
            out.subdivisions.iter().sum::<usize>() <= 2,
            "graph {i}: too many subdivisions"
        );
        ensure!(
            map.induced_graph(GonKind::V).degree_sequence() == h.degree_sequence(),
            "graph {i}: induced graph differs from the subdivided input"
        );
        let t4 = check_theorem4(&map);
        ensure!(t4.applicable && t4.holds, "graph {i}: theorem 4 {t4:?}");
        let dual = map.dual();
        let dw = oracle_c(&face_word(&map).unwrap());
        let pw = oracle_c(&ptilde_word(&map).unwrap());
        for x in 0..map.m() {
            if dual.loop_balance(x).unwrap() != mapcalc::LoopBalance::Unbalanced {
                continue;
            }
            checked += 1;
            // unbalanced in D, so κ is empty and the column is i(x)
            let parity = (dw[x] & pw[x]).count_ones() % 2;
            ensure!(
                parity == 1,
                "graph {i}: edge {} has even intersection",
                x + 1
            );
        }
    }
    Ok(format!(
        "{found}/{} graphs embedded, {checked} unbalanced loops odd",
        graphs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (criterion1, Some(1)),
        (criterion2, Some(1)),
        (criterion3, Some(10)),
        (criterion4, Some(60)),
        (criterion5, Some(30)),
        (criterion6, None),
        (criterion7, None),
        (criterion8, None),
        (criterion9, None),
    ];
    let mut failed = 0;
    for (i, (run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let took = start.elapsed();
        if let (Ok(_), Some(secs)) = (&result, limit) {
            if took > Duration::from_secs(secs) {
                result = Err(format!("took {took:.2?}, limit {secs} s"));
            }
        }
        match result {
            Ok(msg) => println!("criterion {}: PASS ({msg}) [{took:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL ({msg}) [{took:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
