//! Vertex-ranking constructors and the ranking validator.
//!
//! Every constructor colors with `1..=k`. A connected part is ranked by
//! removing a separator, ranking the remaining components with colors
//! `1..=h`, and giving the separator vertices the distinct colors above `h`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::hypercore::Coloring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankingStrategy {
    PathRuler,
    TreeCentroid,
    Separator,
    Exact,
}

/// How `rank_by_separator` picks the vertices removed at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparatorStrategy {
    /// Smallest vertex set leaving components of at most half the size,
    /// found by brute force. Tiny parts only.
    ExactMinimum,
    /// The single vertex minimizing the largest remaining component. On a
    /// tree this is the centroid, on a path the midpoint.
    Centroid,
    /// Highest-degree vertices of the largest remaining component until every
    /// component is at most half the size.
    GreedyDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingResult {
    #[serde(flatten)]
    pub coloring: Coloring,
    pub strategy: RankingStrategy,
}

impl RankingResult {
    pub fn palette_size(&self) -> usize {
        self.coloring.palette_size()
    }
}

/// `floor(log2 n) + 1` for `n >= 1`.
pub fn ruler_colors(n: usize) -> u32 {
    assert!(n >= 1);
    usize::BITS - n.leading_zeros()
}

/// Ruler ranking of the path `0 - 1 - ... - n-1`: the top color sits at the
/// left-of-center index of each segment and the halves recurse.
pub fn rank_path(n: usize) -> Result<RankingResult> {
    if n == 0 {
        return Err(Error::InvalidInput("rank_path needs n >= 1".into()));
    }
    let mut colors = vec![0u32; n];
    let mut stack = vec![(0usize, n)];
    while let Some((lo, len)) = stack.pop() {
        if len == 0 {
            continue;
        }
        let mid = lo + (len - 1) / 2;
        colors[mid] = ruler_colors(len);
        stack.push((lo, mid - lo));
        stack.push((mid + 1, lo + len - mid - 1));
    }
    Ok(RankingResult {
        coloring: Coloring::new(colors),
        strategy: RankingStrategy::PathRuler,
    })
}

/// Every path between two equally colored vertices passes through a
/// strictly higher color.
///
/// Checked color by color: among vertices colored at most `γ`, no connected
/// component may hold two vertices colored `γ`.
pub fn is_vertex_ranking(g: &Graph, c: &Coloring) -> bool {
    let n = g.n();
    if c.len() != n {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| c.color(v));
    let mut parent: Vec<usize> = (0..n).collect();
    let mut active = vec![false; n];

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut i = 0;
    while i < n {
        let color = c.color(order[i]);
        let mut j = i;
        while j < n && c.color(order[j]) == color {
            active[order[j]] = true;
            j += 1;
        }
        for &v in &order[i..j] {
            for &w in g.neighbors(v) {
                if active[w] {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut roots: Vec<usize> = order[i..j].iter().map(|&v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        if roots.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        i = j;
    }
    true
}

/// Centroid recursion on a tree: at most `floor(log2 n) + 1` colors.
pub fn rank_tree_centroid(g: &Graph) -> Result<RankingResult> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let mut colors = vec![0u32; g.n()];
    rank_component(g, (0..g.n()).collect(), SeparatorStrategy::Centroid, &mut colors)?;
    Ok(RankingResult {
        coloring: Coloring::new(colors),
        strategy: RankingStrategy::TreeCentroid,
    })
}

/// Separator-driven ranking. Components are ranked independently.
pub fn rank_by_separator(g: &Graph, strategy: SeparatorStrategy) -> Result<RankingResult> {
    let mut colors = vec![0u32; g.n()];
    for comp in g.components() {
        rank_component(g, comp, strategy, &mut colors)?;
    }
    Ok(RankingResult {
        coloring: Coloring::new(colors),
        strategy: RankingStrategy::Separator,
    })
}

/// Ranks the connected vertex set `comp`, returning the top color used.
fn rank_component(
    g: &Graph,
    comp: Vec<usize>,
    strategy: SeparatorStrategy,
    colors: &mut [u32],
) -> Result<u32> {
    if comp.len() == 1 {
        colors[comp[0]] = 1;
        return Ok(1);
    }
    let separator = match strategy {
        SeparatorStrategy::Centroid => vec![centroid(g, &comp)],
        SeparatorStrategy::GreedyDegree => greedy_degree_separator(g, &comp),
        SeparatorStrategy::ExactMinimum => exact_min_separator(g, &comp)?,
    };
    let mut alive = vec![false; g.n()];
    for &v in &comp {
        alive[v] = true;
    }
    for &v in &separator {
        alive[v] = false;
    }
    let mut height = 0;
    for sub in g.components_within(&alive) {
        height = height.max(rank_component(g, sub, strategy, colors)?);
    }
    for (i, &v) in separator.iter().enumerate() {
        colors[v] = height + separator.len() as u32 - i as u32;
    }
    Ok(height + separator.len() as u32)
}

fn largest_component_without(g: &Graph, comp: &[usize], removed: &[usize]) -> usize {
    let mut alive = vec![false; g.n()];
    for &v in comp {
        alive[v] = true;
    }
    for &v in removed {
        alive[v] = false;
    }
    g.components_within(&alive)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

fn centroid(g: &Graph, comp: &[usize]) -> usize {
    let mut best = (usize::MAX, comp[0]);
    for &v in comp {
        let worst = largest_component_without(g, comp, &[v]);
        if worst < best.0 {
            best = (worst, v);
        }
    }
    best.1
}

fn greedy_degree_separator(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let limit = comp.len() / 2;
    let mut alive = vec![false; g.n()];
    for &v in comp {
        alive[v] = true;
    }
    let mut removed = Vec::new();
    loop {
        let parts = g.components_within(&alive);
        let Some(largest) = parts.iter().max_by_key(|p| (p.len(), std::cmp::Reverse(p[0]))) else {
            return removed;
        };
        if largest.len() <= limit.max(1) {
            return removed;
        }
        let pick = *largest
            .iter()
            .max_by_key(|&&v| {
                let deg = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
                (deg, std::cmp::Reverse(v))
            })
            .expect("component is nonempty");
        alive[pick] = false;
        removed.push(pick);
    }
}

fn exact_min_separator(g: &Graph, comp: &[usize]) -> Result<Vec<usize>> {
    if comp.len() > 20 {
        return Err(Error::SizeGuard(format!(
            "exact separator search supports parts of <= 20 vertices, got {}",
            comp.len()
        )));
    }
    let limit = comp.len() / 2;
    for size in 1..=comp.len() {
        let mut chosen = Vec::with_capacity(size);
        if let Some(s) = first_subset(g, comp, size, 0, limit, &mut chosen) {
            return Ok(s);
        }
    }
    unreachable!("removing every vertex leaves no component")
}

fn first_subset(
    g: &Graph,
    comp: &[usize],
    size: usize,
    start: usize,
    limit: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == size {
        return (largest_component_without(g, comp, chosen) <= limit).then(|| chosen.clone());
    }
    for i in start..comp.len() {
        if comp.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(comp[i]);
        if let Some(s) = first_subset(g, comp, size, i + 1, limit, chosen) {
            return Some(s);
        }
        chosen.pop();
    }
    None
}

/// Minimum-palette vertex ranking.
///
/// A connected graph's top color occurs once, so
/// `vr(G) = 1 + min_v vr(G - v)` and a disconnected graph takes the maximum
/// over its components. Memoized over vertex subsets.
pub fn rank_exact(g: &Graph) -> Result<RankingResult> {
    let n = g.n();
    if n > 16 {
        return Err(Error::SizeGuard(format!("rank_exact supports n <= 16, got {n}")));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut memo: HashMap<u32, (u32, usize)> = HashMap::new();
    let mut colors = vec![0u32; n];
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    for comp in split_components(full, &adj) {
        assign_exact(comp, &adj, &mut memo, &mut colors);
    }
    Ok(RankingResult {
        coloring: Coloring::new(colors),
        strategy: RankingStrategy::Exact,
    })
}

fn split_components(mask: u32, adj: &[u32]) -> Vec<u32> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let seed = rest & rest.wrapping_neg();
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & mask & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// `(vr, best top vertex)` of a connected vertex set.
fn vr_connected(mask: u32, adj: &[u32], memo: &mut HashMap<u32, (u32, usize)>) -> (u32, usize) {
    if let Some(&hit) = memo.get(&mask) {
        return hit;
    }
    let result = if mask.count_ones() == 1 {
        (1, mask.trailing_zeros() as usize)
    } else {
        let mut best = (u32::MAX, 0);
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = mask & !(1 << v);
            let sub = split_components(rest, adj)
                .into_iter()
                .map(|c| vr_connected(c, adj, memo).0)
                .max()
                .unwrap_or(0);
            if 1 + sub < best.0 {
                best = (1 + sub, v);
            }
        }
        best
    };
    memo.insert(mask, result);
    result
}

fn assign_exact(mask: u32, adj: &[u32], memo: &mut HashMap<u32, (u32, usize)>, colors: &mut [u32]) {
    let (k, top) = vr_connected(mask, adj, memo);
    colors[top] = k;
    for comp in split_components(mask & !(1 << top), adj) {
        assign_exact(comp, adj, memo, colors);
    }
}
