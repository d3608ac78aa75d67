//! Exact optimisers for the two tiling objectives and colour-blind clique
//! tiling search.

mod bowtie;
mod clique_tiling;
mod packing;

pub use bowtie::{bowtie_at, find_bowtie};
pub use clique_tiling::{
    clique_tiling_interpolated, find_perfect_clique_tiling, pack_cliques, InterpolatedTiling, TilingSearch, TILING_BUDGET,
};
pub use packing::{max_mixed_tiling, max_single_colour_tiling, SolveOptions, SolveResult};
