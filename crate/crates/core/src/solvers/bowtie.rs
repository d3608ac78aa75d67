use crate::graph::{Bowtie, Colour, ColouredGraph, MonoClique, VertexSet};

/// First bowtie (by centre, then by the two triangles in lexicographic
/// order) avoiding `forbidden`, or `None` if the graph has none.
pub fn find_bowtie(g: &ColouredGraph, forbidden: VertexSet) -> Option<Bowtie> {
    let allowed = g.vertices() - forbidden;
    for v in allowed.iter() {
        if let Some(b) = bowtie_at(g, v, allowed) {
            return Some(b);
        }
    }
    None
}

/// First bowtie centred at `v` with all vertices in `allowed`.
pub fn bowtie_at(g: &ColouredGraph, v: usize, allowed: VertexSet) -> Option<Bowtie> {
    let through = |c: Colour| -> Vec<(usize, usize)> {
        let nb = g.colour_neighbours(v, c) & allowed;
        let mut out = Vec::new();
        for a in nb.iter() {
            for b in (nb & g.colour_neighbours(a, c)).iter().filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    };
    for c1 in 0..g.r() {
        let first = through(Colour(c1 as u8));
        if first.is_empty() {
            continue;
        }
        for c2 in c1 + 1..g.r() {
            let second = through(Colour(c2 as u8));
            for &(a, b) in &first {
                if let Some(&(x, y)) = second.iter().find(|&&(x, y)| x != a && x != b && y != a && y != b) {
                    return Some(Bowtie {
                        t1: MonoClique::new_unchecked(vec![v, a, b], Colour(c1 as u8)),
                        t2: MonoClique::new_unchecked(vec![v, x, y], Colour(c2 as u8)),
                    });
                }
            }
        }
    }
    None
}
