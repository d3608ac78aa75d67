//! Constructive tilers that realise the known minimum-degree guarantees, and
//! the small-clique extraction lemmas they are built from.

mod bes_large;
mod moon;
mod phased;
mod small;

pub use bes_large::{bes_large, bes_large_traced, BesLargeTrace};
pub use moon::{bes_small, generalized_moon_small, moon_large, moon_small, RAMSEY_2_3, SPECIAL_RAMSEY_2_3};
pub use phased::{find_mono_clique, phased_tiler, PhasedMode, PhasedReport, PHASED_CLIQUE_SIZE};
pub use small::{
    bowtie_through_vertex_k6, extract_mono_triangle_k6, extract_three_disjoint_k7x2, extract_two_disjoint_k8,
    k7x2_pairs, second_bowtie_k7, two_disjoint_same_colour_k10,
};
