//! Vertex rankings, graph-induced hypergraphs and the coloring-driven online
//! algorithm.

mod algc;
mod graph;
mod ranking;

pub use algc::AlgC;
pub use graph::Graph;
pub use ranking::{
    is_vertex_ranking, rank_by_separator, rank_exact, rank_path, rank_tree_centroid,
    ruler_colors, RankingResult, RankingStrategy, SeparatorStrategy,
};
