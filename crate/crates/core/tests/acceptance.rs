//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ohs::arena::corpus::{
    random_disc_points, random_disc_queries, random_general_position, random_halfplane_queries,
    random_itype,
};
use ohs::arena::enumerate::{connected_graphs, itype_hypergraphs};
use ohs::arena::{
    adversary_collinear_discs, adversary_parabola, exact_rho, floor_log2, opt_hitting_set,
    ratio_report, run_game, Bound, FixedSequence, NestedIntervals,
};
use ohs::decomp::{build_forest, derive_unique_min};
use ohs::geom::disc::{AlgD, DiscInstance, DiscQuery, Tile, Tiling};
use ohs::geom::exact::{rat, ExactPoint};
use ohs::geom::halfplane::{parabola_chord, parabola_points, AlgP, HalfPlaneInstance};
use ohs::hypercore::Coloring;
use ohs::online::{ColoringAlgorithm, LowestPoint, OnlineAlgorithm};
use ohs::umcolor::{
    is_vertex_ranking, rank_by_separator, rank_exact, rank_path, Graph, SeparatorStrategy,
};

/// Independent path check: two equal colors on a path need a larger color
/// strictly between them.
fn path_ranking_by_enumeration(colors: &[u32]) -> bool {
    for u in 0..colors.len() {
        for v in u + 1..colors.len() {
            if colors[u] == colors[v] && colors[u + 1..v].iter().all(|&w| w <= colors[u]) {
                return false;
            }
        }
    }
    true
}

fn within(label: &str, start: Instant, limit: Duration) -> String {
    let took = start.elapsed();
    assert!(took < limit, "{label} took {took:?}, limit {limit:?}");
    format!("{:.2}s", took.as_secs_f64())
}

fn criterion_1() -> String {
    let start = Instant::now();
    for n in 1..=4096 {
        let r = rank_path(n).unwrap();
        assert_eq!(r.palette_size(), floor_log2(n) + 1, "n = {n}");
        if n <= 512 {
            assert!(is_vertex_ranking(&Graph::path(n), &r.coloring), "n = {n}");
        }
        if n <= 10 {
            assert!(path_ranking_by_enumeration(r.coloring.colors()));
        }
    }
    // the component check and the path enumeration agree on every coloring
    // of short paths with up to 3 colors
    for n in 1..=7 {
        let g = Graph::path(n);
        let mut colors = vec![1u32; n];
        loop {
            let c = Coloring::new(colors.clone());
            assert_eq!(is_vertex_ranking(&g, &c), path_ranking_by_enumeration(&colors), "{colors:?}");
            let Some(i) = colors.iter().position(|&x| x < 3) else { break };
            colors[i] += 1;
            colors[..i].iter_mut().for_each(|x| *x = 1);
        }
    }
    format!("palettes n <= 4096 exact, {}", within("criterion 1", start, Duration::from_secs(10)))
}

fn criterion_2() -> String {
    for n in (2..=1024).step_by(2) {
        let log = floor_log2(n) + 1;
        let mut algc = ColoringAlgorithm::new(rank_path(n).unwrap().coloring);
        let t = run_game(&mut algc, &mut NestedIntervals::new(n)).unwrap();
        let opt = opt_hitting_set(&t.presented_ranges(), n).unwrap();
        assert_eq!((t.alg_size(), opt.len()), (log, 1), "algc n = {n}");

        let mut lowest = LowestPoint::new();
        let t = run_game(&mut lowest, &mut NestedIntervals::new(n)).unwrap();
        assert!(t.alg_size() >= log, "lowest n = {n}");

        let sep = rank_by_separator(&Graph::path(n), SeparatorStrategy::Centroid).unwrap();
        let mut algs = ColoringAlgorithm::new(sep.coloring).with_name("algc-centroid");
        let t = run_game(&mut algs, &mut NestedIntervals::new(n)).unwrap();
        assert!(t.alg_size() >= log, "centroid n = {n}");
        assert_eq!(opt_hitting_set(&t.presented_ranges(), n).unwrap().len(), 1);
    }
    "even n in [2, 1024]: algc = floor(log2 n)+1, OPT = 1".into()
}

fn criterion_3() -> String {
    let start = Instant::now();
    let mut count = 0;
    let mut separable = 0;
    for n in 1..=4 {
        for h in itype_hypergraphs(n) {
            let (chi, _) = h.um_chromatic_exact(n).unwrap();
            let rho = exact_rho(&h).unwrap();
            let chi = Ratio::from_integer(chi as u64);
            assert!(chi - 1 <= rho && rho <= chi, "{h:?}: chi {chi}, rho {rho}");
            if h.is_separable() {
                assert_eq!(rho, chi, "{h:?}");
                separable += 1;
            }
            count += 1;
        }
    }
    format!(
        "{count} hypergraphs ({separable} separable), {}",
        within("criterion 3", start, Duration::from_secs(300))
    )
}

fn criterion_4() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut max_seen = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=6);
        let h = random_itype(&mut rng, n, m);
        assert!(h.is_itype());
        let (_, coloring) = h.um_chromatic_exact(n).unwrap();
        let mut alg = ColoringAlgorithm::new(coloring);
        let forest = build_forest(&h, &mut alg).unwrap();
        forest.check_all(&mut alg).unwrap();
        let depth = forest.max_depth().map_or(0, |d| d + 1);
        let umin = derive_unique_min(n, &forest, forest.measured_rho() as u32);
        assert!(h.is_unique_min(&umin), "{h:?}");
        assert!(umin.palette_size() <= depth + 1, "{h:?}");
        if h.is_separable() {
            assert!(umin.palette_size() <= depth, "{h:?}");
        }
        max_seen = max_seen.max(depth);
    }
    format!("50 random hypergraphs, deepest forest {max_seen} levels")
}

fn criterion_5() -> String {
    let mut count = 0;
    for n in 1..=5 {
        for g in connected_graphs(n) {
            let h = g.connected_subgraph_hypergraph().unwrap();
            let rho = exact_rho(&h).unwrap();
            let vr = rank_exact(&g).unwrap().palette_size();
            assert_eq!(rho, Ratio::from_integer(vr as u64), "{g:?}");
            count += 1;
        }
    }
    format!("{count} connected graphs on <= 5 vertices")
}

fn criterion_6() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = Ratio::from_integer(0usize);
    for i in 0..100 {
        let n = rng.gen_range(3..=60);
        let pts = random_general_position(&mut rng, n);
        let m = rng.gen_range(1..=40);
        let queries = random_halfplane_queries(&mut rng, &pts, m);
        let mut alg = AlgP::new(HalfPlaneInstance::new(pts).unwrap());
        let t = run_game(&mut alg, &mut FixedSequence::new(queries)).unwrap();
        t.check().unwrap();
        alg.check_color_classes_disjoint().unwrap();
        let rep = ratio_report(&format!("halfplane-{i}"), &t, n, Some((Bound::Halfplane, 0))).unwrap();
        assert!(rep.passed(), "{rep:?}");
        worst = worst.max(rep.ratio_value());
    }
    for n in 1..=64 {
        let inst = HalfPlaneInstance::new(parabola_points(n)).unwrap();
        for i in 0..n {
            for j in i..n {
                assert_eq!(inst.range_of(&parabola_chord(i, j)), (i..=j).collect::<Vec<_>>());
            }
        }
    }
    format!(
        "100 instances, worst ratio {worst}; parabola chords exact for n <= 64, {}",
        within("criterion 6", start, Duration::from_secs(120))
    )
}

fn criterion_7() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tiling = Tiling::new((rat(1, 3), rat(2, 7)));
    let mut pairs = 0;
    while pairs < 100_000 {
        let t = Tile { i: rng.gen_range(-4..4), j: rng.gen_range(-4..4) };
        let (cx, cy) = tiling.center(t).to_f64();
        let d = DiscQuery::new(ExactPoint::new(
            rat(((cx + rng.gen_range(-1.3..1.3)) * 4096.0) as i64, 4096),
            rat(((cy + rng.gen_range(-1.3..1.3)) * 4096.0) as i64, 4096),
        ));
        if tiling.disc_meets_tile(t, &d) {
            tiling.type_of(t, &d).unwrap();
            pairs += 1;
        }
    }
    let mut max_tiles = 0;
    let mut worst = Ratio::from_integer(0usize);
    for i in 0..30 {
        let n = rng.gen_range(2..=50);
        let extent = rng.gen_range(1..=3);
        let pts = random_disc_points(&mut rng, n, extent);
        let queries = random_disc_queries(&mut rng, 40, extent);
        let mut alg = AlgD::new(DiscInstance::new(pts).unwrap());
        // hit extreme points are checked contiguous inside every step
        let t = run_game(&mut alg, &mut FixedSequence::new(queries)).unwrap();
        t.check().unwrap();
        alg.check_distinct_colors().unwrap();
        let tiles = alg.max_tiles_per_arrival();
        assert!(tiles <= 25, "{tiles} tiles");
        max_tiles = max_tiles.max(tiles);
        let opt = opt_hitting_set(&t.presented_ranges(), n).unwrap();
        let local = 64 * floor_log2(2 * n);
        for &x in opt.points() {
            let added: usize = t
                .unstabbed_events()
                .filter(|e| e.range.contains(&x))
                .map(|e| e.points_added.len())
                .sum();
            assert!(added <= local, "point {x}: {added} > {local}");
        }
        let rep = ratio_report(&format!("disc-{i}"), &t, n, Some((Bound::Disc, tiles))).unwrap();
        assert!(rep.passed(), "{rep:?}");
        worst = worst.max(rep.ratio_value());
    }
    format!(
        "1e5 tile pairs; 30 disc games, worst ratio {worst}, max tiles per disc {max_tiles}, {}",
        within("criterion 7", start, Duration::from_secs(300))
    )
}

fn criterion_8() -> String {
    let mut lines = Vec::new();
    for n in [8usize, 64, 256] {
        let log = floor_log2(n) + 1;
        let (inst, mut adv) = adversary_parabola(n).unwrap();
        let mut algp = AlgP::new(inst);
        let t = run_game(&mut algp, &mut adv).unwrap();
        let opt = opt_hitting_set(&t.presented_ranges(), n).unwrap();
        assert!(t.alg_size() >= log && opt.len() == 1, "parabola n = {n}: {}", t.alg_size());

        let (inst, mut adv) = adversary_collinear_discs(n).unwrap();
        let mut algd = AlgD::new(inst);
        let t = run_game(&mut algd, &mut adv).unwrap();
        let opt = opt_hitting_set(&t.presented_ranges(), n).unwrap();
        assert!(t.alg_size() >= log && opt.len() == 1, "discs n = {n}: {}", t.alg_size());
        lines.push(format!("n={n}: algp {} algd {}", algp.hitting_set().len(), t.alg_size()));
    }
    // grid lower bound vr(G_lxl) >= l
    for l in [2, 3] {
        assert!(rank_exact(&Graph::grid(l, l)).unwrap().palette_size() >= l);
    }
    lines.join(", ") + "; grid vr >= l for l in {2, 3}"
}

fn main() {
    type Criterion = (&'static str, fn() -> String);
    let criteria: [Criterion; 8] = [
        ("1 path ranking exactness", criterion_1),
        ("2 interval tightness", criterion_2),
        ("3 unique-max sandwich", criterion_3),
        ("4 decomposition soundness", criterion_4),
        ("5 graph equivalence", criterion_5),
        ("6 half-planes", criterion_6),
        ("7 unit discs", criterion_7),
        ("8 lower-bound reproductions", criterion_8),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = BTreeSet::new();
    for (name, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {name}: FAIL ({msg})");
                failed.insert(name);
            }
        }
    }
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
