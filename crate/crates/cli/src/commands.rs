use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{anyhow, bail, Result};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use ohs::arena::corpus::random_halfplane_queries;
use ohs::arena::{
    adversary_collinear_discs, adversary_parabola, ratio_report, run_game, Adversary,
    FixedSequence, NestedIntervals, RatioReport, Transcript,
};
use ohs::decomp::{build_forest, derive_unique_min, ConnectedSubgraphs, RangeFamily};
use ohs::geom::disc::{AlgD, DiscInstance, DiscQuery};
use ohs::geom::exact::{rat, ExactPoint};
use ohs::geom::halfplane::{AlgP, HalfPlaneInstance, HalfPlaneQuery};
use ohs::hypercore::{Coloring, Hypergraph, Range};
use ohs::online::{ColoringAlgorithm, LowestPoint, OnlineAlgorithm};
use ohs::umcolor::{
    is_vertex_ranking, rank_by_separator, rank_exact, rank_path, rank_tree_centroid, Graph,
    SeparatorStrategy,
};

use crate::files::{
    read_instance, read_json, read_json_lines, write_atomic, write_json, InputError, Instance,
};
use crate::{svg, AdversaryKind, Alg, RunArgs, Strategy, VerifyMode};

pub enum Outcome {
    Pass,
    Fail(String),
}

/// 1 for invariant or algorithm failures, 2 for everything the caller
/// supplied wrongly.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<ohs::Error>() {
        Some(err) if err.is_invariant_failure() => 1,
        _ => 2,
    }
}

/// The command-line spelling of a value.
fn tag<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn input(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn expect_graph(path: &Path) -> Result<Graph> {
    match read_instance(path)? {
        Instance::Graph(g) => Ok(g),
        _ => Err(input(format!("{}: expected a graph {{\"n\", \"edges\"}}", path.display()))),
    }
}

fn read_coloring(path: &Path, n: usize) -> Result<Coloring> {
    let c: Coloring = read_json(path)?;
    if c.len() != n {
        bail!(input(format!(
            "{}: {} colors for {n} points",
            path.display(),
            c.len()
        )));
    }
    Ok(c)
}

pub fn rank(path: &Path, strategy: Strategy, separator: SeparatorStrategy, out: Option<&Path>) -> Result<Outcome> {
    let g = expect_graph(path)?;
    let result = match strategy {
        Strategy::PathRuler => {
            if g != Graph::path(g.n()) {
                bail!(input("path-ruler needs the path 0-1-...-(n-1)"));
            }
            rank_path(g.n())?
        }
        Strategy::TreeCentroid => rank_tree_centroid(&g)?,
        Strategy::Separator => rank_by_separator(&g, separator)?,
        Strategy::Exact => rank_exact(&g)?,
    };
    if !is_vertex_ranking(&g, &result.coloring) {
        return Ok(Outcome::Fail("constructed coloring is not a vertex ranking".into()));
    }
    match out {
        Some(p) => {
            write_json(p, &result)?;
            println!("colors {}", result.palette_size());
        }
        None => println!("{}", serde_json::to_string(&result)?),
    }
    Ok(Outcome::Pass)
}

pub fn verify(instance: &Path, coloring: &Path, mode: VerifyMode) -> Result<Outcome> {
    let inst = read_instance(instance)?;
    let ok = match (mode, inst) {
        (VerifyMode::Ranking, Instance::Graph(g)) => {
            let c = read_coloring(coloring, g.n())?;
            is_vertex_ranking(&g, &c)
        }
        (VerifyMode::Ranking, _) => bail!(input("ranking mode needs a graph instance")),
        (mode, inst) => {
            let h = match inst {
                Instance::Hypergraph(h) => h,
                Instance::Graph(g) => g.connected_subgraph_hypergraph()?,
                Instance::Points(_) => bail!(input("um/umin modes need a hypergraph or graph")),
            };
            let c = read_coloring(coloring, h.n())?;
            if mode == VerifyMode::Um {
                h.is_unique_max(&c)
            } else {
                h.is_unique_min(&c)
            }
        }
    };
    if ok {
        println!("PASS");
        Ok(Outcome::Pass)
    } else {
        println!("FAIL");
        Ok(Outcome::Fail(format!("coloring is not valid in {} mode", tag(mode))))
    }
}

#[derive(Serialize)]
struct Decomposition<'a> {
    alg: &'a str,
    measured_rho: usize,
    unique_min: &'a Coloring,
    forest: &'a ohs::decomp::DecompositionForest,
}

fn decompose_with<A>(
    family: &dyn RangeFamily,
    check: Option<&Hypergraph>,
    mut alg: A,
    forest_out: Option<&Path>,
    coloring_out: Option<&Path>,
) -> Result<Outcome>
where
    A: OnlineAlgorithm<Query = Range>,
{
    let forest = build_forest(family, &mut alg)?;
    forest.check_all(&mut alg)?;
    let rho = forest.measured_rho();
    let umin = derive_unique_min(family.n(), &forest, rho as u32);
    if let Some(h) = check {
        if !h.is_unique_min(&umin) {
            return Ok(Outcome::Fail("derived coloring is not unique-min".into()));
        }
    }
    if let Some(p) = forest_out {
        write_json(
            p,
            &Decomposition {
                alg: alg.name(),
                measured_rho: rho,
                unique_min: &umin,
                forest: &forest,
            },
        )?;
    }
    if let Some(p) = coloring_out {
        write_json(p, &umin)?;
    }
    println!(
        "nodes {} depth {} colors {}",
        forest.nodes().len(),
        rho,
        umin.palette_size()
    );
    Ok(Outcome::Pass)
}

pub fn decompose(
    instance: &Path,
    alg: Alg,
    coloring: Option<&Path>,
    forest_out: Option<&Path>,
    coloring_out: Option<&Path>,
) -> Result<Outcome> {
    let inst = read_instance(instance)?;
    let (h, g) = match inst {
        Instance::Hypergraph(h) => (Some(h), None),
        Instance::Graph(g) => {
            let h = (g.n() <= 16).then(|| g.connected_subgraph_hypergraph()).transpose()?;
            (h, Some(g))
        }
        Instance::Points(_) => bail!(input("decompose needs a hypergraph or graph")),
    };
    let graph_family = g.as_ref().map(ConnectedSubgraphs);
    let family: &dyn RangeFamily = match (&graph_family, &h) {
        (Some(f), _) => f,
        (None, Some(h)) => h,
        (None, None) => unreachable!("one of the two is set"),
    };
    if h.as_ref().is_some_and(|h| !h.is_itype()) {
        bail!(input("hypergraph is not I-type"));
    }
    match alg {
        Alg::Lowest => decompose_with(family, h.as_ref(), LowestPoint::new(), forest_out, coloring_out),
        Alg::Algc => {
            let c = match (coloring, &g, &h) {
                (Some(p), _, _) => read_coloring(p, family.n())?,
                (None, Some(g), _) => rank_exact(g)?.coloring,
                (None, None, Some(h)) => h.um_chromatic_exact(h.n())?.1,
                (None, None, None) => unreachable!("one of the two is set"),
            };
            if let Some(h) = &h {
                if !h.is_unique_max(&c) {
                    bail!(input("coloring is not unique-max for the instance"));
                }
            }
            decompose_with(family, h.as_ref(), ColoringAlgorithm::new(c), forest_out, coloring_out)
        }
        other => bail!(input(format!("decompose runs algc or lowest, not {}", tag(other)))),
    }
}

/// A transcript together with the seed that generated its queries.
#[derive(Serialize, Deserialize)]
pub struct RunRecord<T> {
    pub seed: u64,
    pub transcript: T,
}

type Draw<'a, A> = &'a dyn Fn(&A, &Transcript<<A as OnlineAlgorithm>::Query>) -> String;

/// Everything the generic runner needs beyond the algorithm itself.
struct Play<'a, A: OnlineAlgorithm> {
    name: String,
    n: usize,
    tiles: fn(&A) -> usize,
    post: fn(&A) -> ohs::Result<()>,
    draw: Option<Draw<'a, A>>,
}

fn play<A>(args: &RunArgs, alg: &mut A, source: &mut dyn Adversary<Query = A::Query>, cfg: Play<A>) -> Result<Outcome>
where
    A: OnlineAlgorithm,
    A::Query: Serialize + DeserializeOwned,
{
    let t = run_game(alg, source)?;
    t.check()?;
    (cfg.post)(alg)?;
    let bound = args.check_bound.map(|b| (b, (cfg.tiles)(alg)));
    let report = ratio_report(&cfg.name, &t, cfg.n, bound)?;
    if let Some(p) = &args.report {
        write_json(p, &report)?;
    }
    if let Some(p) = &args.transcript {
        write_json(p, &RunRecord { seed: args.seed, transcript: &t })?;
    }
    if let (Some(p), Some(draw)) = (&args.svg_out, cfg.draw) {
        write_atomic(p, &draw(alg, &t))?;
    }
    println!("{}", RatioReport::CSV_HEADER);
    println!("{}", report.csv_row());
    if report.passed() {
        Ok(Outcome::Pass)
    } else {
        let bound = report.bound_checked.map(|b| b.bound).unwrap_or_default();
        Ok(Outcome::Fail(format!("ratio {} exceeds the bound {bound}", report.ratio)))
    }
}

fn instance_name(args: &RunArgs) -> String {
    match (&args.instance, args.adversary, args.n) {
        (Some(p), _, _) => p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        (None, Some(a), Some(n)) => format!("{}-{n}", tag(a)),
        _ => "run".into(),
    }
}

fn points_instance(args: &RunArgs) -> Result<Vec<ExactPoint>> {
    let path = args.instance.as_ref().ok_or_else(|| input("--instance is required"))?;
    match read_instance(path)? {
        Instance::Points(p) => Ok(p),
        _ => Err(input(format!("{}: expected {{\"points\": [...]}}", path.display()))),
    }
}

fn need_n(args: &RunArgs) -> Result<usize> {
    args.n.ok_or_else(|| input("--n is required with --adversary"))
}

fn fixed_or_random<Q: DeserializeOwned + Clone + 'static>(
    args: &RunArgs,
    random: impl FnOnce(&mut ChaCha8Rng, usize) -> Vec<Q>,
) -> Result<Box<dyn Adversary<Query = Q>>> {
    if let Some(p) = &args.queries {
        return Ok(Box::new(FixedSequence::new(read_json_lines::<Q>(p)?)));
    }
    if let Some(m) = args.random_queries {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        return Ok(Box::new(FixedSequence::new(random(&mut rng, m))));
    }
    Err(input("give --queries, --random-queries or --adversary"))
}

pub fn run(args: &RunArgs) -> Result<Outcome> {
    let name = instance_name(args);
    match args.alg {
        Alg::Algc | Alg::Lowest => run_ranges(args, name),
        Alg::Algp => {
            let (inst, mut source): (HalfPlaneInstance, Box<dyn Adversary<Query = HalfPlaneQuery>>) =
                match args.adversary {
                    Some(AdversaryKind::Parabola) => {
                        let (inst, adv) = adversary_parabola(need_n(args)?)?;
                        (inst, Box::new(adv))
                    }
                    Some(other) => bail!(input(format!("algp is played against parabola, not {}", tag(other)))),
                    None => {
                        let pts = points_instance(args)?;
                        let source = fixed_or_random(args, |rng, m| random_halfplane_queries(rng, &pts, m))?;
                        (HalfPlaneInstance::new(pts)?, source)
                    }
                };
            let n = inst.n();
            let draw = |a: &AlgP, t: &Transcript<HalfPlaneQuery>| {
                let qs: Vec<HalfPlaneQuery> = t.events.iter().map(|e| e.query.clone()).collect();
                svg::halfplane(a.instance(), &qs, a.hitting_set())
            };
            let mut alg = AlgP::new(inst);
            play(
                args,
                &mut alg,
                source.as_mut(),
                Play {
                    name,
                    n,
                    tiles: |_| 1,
                    post: AlgP::check_color_classes_disjoint,
                    draw: Some(&draw),
                },
            )
        }
        Alg::Algd => {
            let (inst, mut source): (DiscInstance, Box<dyn Adversary<Query = DiscQuery>>) = match args.adversary {
                Some(AdversaryKind::CollinearDiscs) => {
                    let (inst, adv) = adversary_collinear_discs(need_n(args)?)?;
                    (inst, Box::new(adv))
                }
                Some(other) => bail!(input(format!("algd is played against collinear-discs, not {}", tag(other)))),
                None => {
                    let pts = points_instance(args)?;
                    let source = fixed_or_random(args, |rng, m| random_discs_near(rng, &pts, m))?;
                    (DiscInstance::new(pts)?, source)
                }
            };
            let n = inst.n();
            let draw = |a: &AlgD, t: &Transcript<DiscQuery>| {
                let qs: Vec<DiscQuery> = t.events.iter().map(|e| e.query.clone()).collect();
                svg::disc(a.instance(), &qs, a.hitting_set())
            };
            let mut alg = AlgD::new(inst);
            play(
                args,
                &mut alg,
                source.as_mut(),
                Play {
                    name,
                    n,
                    tiles: AlgD::max_tiles_per_arrival,
                    post: AlgD::check_distinct_colors,
                    draw: Some(&draw),
                },
            )
        }
    }
}

/// Disc centers within one unit of a random instance point, on a 1/1000 grid.
fn random_discs_near(rng: &mut ChaCha8Rng, pts: &[ExactPoint], m: usize) -> Vec<DiscQuery> {
    if pts.is_empty() {
        return Vec::new();
    }
    (0..m)
        .map(|_| {
            let p = &pts[rng.gen_range(0..pts.len())];
            DiscQuery::new(ExactPoint::new(
                &p.x + rat(rng.gen_range(-1000..=1000), 1000),
                &p.y + rat(rng.gen_range(-1000..=1000), 1000),
            ))
        })
        .collect()
}

fn run_ranges(args: &RunArgs, name: String) -> Result<Outcome> {
    let (h, coloring, mut source): (Hypergraph, Coloring, Box<dyn Adversary<Query = Range>>) = match args.adversary {
        Some(AdversaryKind::Nested) => {
            let n = need_n(args)?;
            if n == 0 {
                bail!(input("--n must be positive"));
            }
            (Hypergraph::intervals(n), rank_path(n)?.coloring, Box::new(NestedIntervals::new(n)))
        }
        Some(other) => bail!(input(format!("range algorithms are played against nested, not {}", tag(other)))),
        None => {
            let path = args.instance.as_ref().ok_or_else(|| input("--instance is required"))?;
            let (h, default) = match read_instance(path)? {
                Instance::Hypergraph(h) => {
                    let c = if args.coloring.is_none() && args.alg == Alg::Algc {
                        Some(h.um_chromatic_exact(h.n())?.1)
                    } else {
                        None
                    };
                    (h, c)
                }
                Instance::Graph(g) => {
                    let c = rank_exact(&g)?.coloring;
                    (g.connected_subgraph_hypergraph()?, Some(c))
                }
                Instance::Points(_) => bail!(input("algc and lowest need a hypergraph or graph")),
            };
            let coloring = match &args.coloring {
                Some(p) => read_coloring(p, h.n())?,
                None => default.unwrap_or_else(|| Coloring::new(vec![1; h.n()])),
            };
            let ranges = h.ranges().to_vec();
            let source = fixed_or_random(args, |rng, m| {
                if ranges.is_empty() {
                    return Vec::new();
                }
                (0..m).map(|_| ranges[rng.gen_range(0..ranges.len())].clone()).collect()
            })?;
            (h, coloring, source)
        }
    };
    if args.alg == Alg::Algc && !h.is_unique_max(&coloring) {
        bail!(input("coloring is not unique-max for the instance"));
    }
    let known: BTreeSet<&Range> = h.ranges().iter().collect();
    let mut checked = Checked { inner: source.as_mut(), known: &known, stray: None };
    let outcome = match args.alg {
        Alg::Algc => {
            let mut alg = ColoringAlgorithm::new(coloring);
            play(
                args,
                &mut alg,
                &mut checked,
                Play {
                    name,
                    n: h.n(),
                    tiles: |_| 1,
                    post: |a| a.state().check_color_classes_disjoint(),
                    draw: None,
                },
            )
        }
        _ => {
            let mut alg = LowestPoint::new();
            play(
                args,
                &mut alg,
                &mut checked,
                Play {
                    name,
                    n: h.n(),
                    tiles: |_| 1,
                    post: |_| Ok(()),
                    draw: None,
                },
            )
        }
    };
    if let Some(r) = checked.stray {
        bail!(input(format!("query {:?} is not a range of the instance", r.members())));
    }
    outcome
}

/// Stops the game at the first query that is not a range of the instance.
struct Checked<'a> {
    inner: &'a mut dyn Adversary<Query = Range>,
    known: &'a BTreeSet<&'a Range>,
    stray: Option<Range>,
}

impl Adversary for Checked<'_> {
    type Query = Range;

    fn next_query(&mut self, hitting: &BTreeSet<usize>) -> Option<Range> {
        let q = self.inner.next_query(hitting)?;
        if self.known.contains(&q) {
            Some(q)
        } else {
            self.stray = Some(q);
            None
        }
    }
}

pub fn svg(instance: &Path, alg: Alg, transcript: Option<&Path>, out: &Path) -> Result<Outcome> {
    let pts = match read_instance(instance)? {
        Instance::Points(p) => p,
        _ => bail!(input("svg needs a points instance")),
    };
    fn load<Q: DeserializeOwned + Serialize>(p: Option<&Path>) -> Result<(Vec<Q>, BTreeSet<usize>)> {
        match p {
            None => Ok((Vec::new(), BTreeSet::new())),
            Some(p) => {
                let rec: RunRecord<Transcript<Q>> = read_json(p)?;
                let stabbers = rec.transcript.hitting_set.iter().copied().collect();
                Ok((rec.transcript.events.into_iter().map(|e| e.query).collect(), stabbers))
            }
        }
    }
    let n = pts.len();
    let drawing = match alg {
        Alg::Algp => {
            let (qs, stab) = load::<HalfPlaneQuery>(transcript)?;
            check_stabbers(&stab, n)?;
            svg::halfplane(&HalfPlaneInstance::new(pts)?, &qs, &stab)
        }
        Alg::Algd => {
            let (qs, stab) = load::<DiscQuery>(transcript)?;
            check_stabbers(&stab, n)?;
            svg::disc(&DiscInstance::new(pts)?, &qs, &stab)
        }
        other => bail!(input(format!("svg draws algp or algd runs, not {}", tag(other)))),
    };
    write_atomic(out, &drawing)?;
    Ok(Outcome::Pass)
}

fn check_stabbers(stab: &BTreeSet<usize>, n: usize) -> Result<()> {
    match stab.iter().find(|&&x| x >= n) {
        Some(x) => Err(anyhow!(InputError(format!("transcript point {x} outside the instance of {n} points")))),
        None => Ok(()),
    }
}
