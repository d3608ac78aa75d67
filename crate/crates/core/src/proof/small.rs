//! Constructive versions of the small-clique lemmas: every extractor works on
//! a vertex list inside a larger host and returns objects in host labels.

use crate::error::{Error, Result};
use crate::graph::{Bowtie, Colour, ColouredGraph, MonoClique, VertexSet};

fn check_complete(g: &ColouredGraph, verts: &[usize], step: &str) -> Result<()> {
    if verts.iter().any(|&v| v >= g.n()) || !g.is_clique(verts) {
        return Err(Error::Precondition(format!("{step}: {verts:?} does not span a complete graph")));
    }
    Ok(())
}

fn triangles_in(g: &ColouredGraph, verts: &[usize]) -> Vec<MonoClique> {
    g.mono_triangles_within(verts.iter().collect())
}

/// First monochromatic triangle among the first six vertices of `verts`,
/// which must span a complete two-coloured graph.
pub fn extract_mono_triangle_k6(g: &ColouredGraph, verts: &[usize]) -> Result<MonoClique> {
    if verts.len() < 6 {
        return Err(Error::Precondition(format!("need six vertices, got {}", verts.len())));
    }
    let six = &verts[..6];
    check_complete(g, six, "mono triangle in K6")?;
    triangles_in(g, six)
        .into_iter()
        .next()
        .ok_or_else(|| Error::anomaly("mono triangle in K6", format!("no monochromatic triangle in {six:?}"), g))
}

/// First (lexicographic) pair of vertex-disjoint monochromatic triangles in
/// the complete graph on `verts` (eight vertices).
pub fn extract_two_disjoint_k8(g: &ColouredGraph, verts: &[usize]) -> Result<(MonoClique, MonoClique)> {
    if verts.len() != 8 {
        return Err(Error::Precondition(format!("need eight vertices, got {}", verts.len())));
    }
    check_complete(g, verts, "two disjoint triangles in K8")?;
    first_disjoint_pair(&triangles_in(g, verts), |_, _| true).ok_or_else(|| {
        Error::anomaly(
            "two disjoint triangles in K8",
            format!("no two disjoint monochromatic triangles in {verts:?}"),
            g,
        )
    })
}

/// Two vertex-disjoint triangles of one colour inside a complete graph on
/// ten vertices, by exhaustive search.
pub fn two_disjoint_same_colour_k10(g: &ColouredGraph, verts: &[usize]) -> Result<(MonoClique, MonoClique)> {
    if verts.len() != 10 {
        return Err(Error::Precondition(format!("need ten vertices, got {}", verts.len())));
    }
    check_complete(g, verts, "two same-colour triangles in K10")?;
    first_disjoint_pair(&triangles_in(g, verts), |a, b| a.colour == b.colour).ok_or_else(|| {
        Error::anomaly(
            "two same-colour triangles in K10",
            format!("no two disjoint same-colour triangles in {verts:?}"),
            g,
        )
    })
}

fn first_disjoint_pair(
    tris: &[MonoClique],
    accept: impl Fn(&MonoClique, &MonoClique) -> bool,
) -> Option<(MonoClique, MonoClique)> {
    for (i, a) in tris.iter().enumerate() {
        let sa = a.vertex_set();
        if let Some(b) = tris[i + 1..]
            .iter()
            .find(|b| sa.is_disjoint(&b.vertex_set()) && accept(a, b))
        {
            return Some((a.clone(), b.clone()));
        }
    }
    None
}

/// Bowtie containing `v` inside the complete graph on six vertices `verts`,
/// which must contain two disjoint monochromatic triangles of different
/// colours.
///
/// With `P` the triangle of colour `p` and `Q` the other: if some vertex of
/// the triangle containing `v` has two `q`-coloured edges into the other
/// triangle, those edges and that triangle form the bowtie. Otherwise two
/// vertices of the triangle containing `v` (one of them `v`) each have at
/// most one such edge, so some vertex `i` of the other triangle is joined to
/// both in the triangle's colour.
pub fn bowtie_through_vertex_k6(g: &ColouredGraph, verts: &[usize], v: usize) -> Result<Bowtie> {
    if verts.len() != 6 || !verts.contains(&v) {
        return Err(Error::Precondition(format!("need six vertices containing {v}, got {verts:?}")));
    }
    check_complete(g, verts, "bowtie through a vertex")?;
    let tris = triangles_in(g, verts);
    let (p, q) = first_disjoint_pair(&tris, |a, b| a.colour != b.colour).ok_or_else(|| {
        Error::Precondition(format!("{verts:?} has no two disjoint triangles of different colours"))
    })?;
    let (own, other) = if p.vertices.contains(&v) { (p, q) } else { (q, p) };
    let (own_c, other_c) = (own.colour, other.colour);
    let other_set = other.vertex_set();

    for &a in &own.vertices {
        let hits = g.colour_neighbours(a, other_c) & other_set;
        if hits.len() >= 2 {
            let mut pair = hits.iter();
            let (x, y) = (pair.next().expect("two"), pair.next().expect("two"));
            return Ok(Bowtie {
                t1: own.clone(),
                t2: MonoClique::new_unchecked(vec![a, x, y], other_c),
            });
        }
    }
    let partner = own.vertices.iter().copied().find(|&a| a != v).expect("triangle has three vertices");
    let i = (other_set & g.colour_neighbours(v, own_c) & g.colour_neighbours(partner, own_c))
        .first()
        .ok_or_else(|| Error::anomaly("bowtie through a vertex", format!("no apex for {v} in {verts:?}"), g))?;
    Ok(Bowtie {
        t1: MonoClique::new_unchecked(vec![v, partner, i], own_c),
        t2: other,
    })
}

/// Given a bowtie inside the complete graph on seven vertices `verts`,
/// returns a bowtie on a different vertex set.
///
/// Let `x, y` be the two vertices outside the bowtie and `Q` its triangle
/// whose colour differs from `xy`. Either some `z ∈ Q` closes `xyz` in the
/// colour of `xy`, or two vertices of `Q` send edges of `Q`'s colour to the
/// same `w ∈ {x, y}`. Either way there is a monochromatic triangle `K`
/// through `x` or `y`. If `K` meets the bowtie triangle of the other colour
/// they form the new bowtie; otherwise the six vertices of the two triangles
/// contain a bowtie through `K`'s outside vertex.
pub fn second_bowtie_k7(g: &ColouredGraph, verts: &[usize], known: &Bowtie) -> Result<Bowtie> {
    let all: VertexSet = verts.iter().collect();
    let inner = known.vertex_set();
    if verts.len() != 7 || all.len() != 7 || !inner.is_subset(&all) {
        return Err(Error::Precondition(format!(
            "need seven vertices containing the bowtie, got {verts:?}"
        )));
    }
    check_complete(g, verts, "second bowtie in K7")?;
    known
        .verify(g)
        .map_err(|e| Error::Precondition(format!("second bowtie in K7: {e}")))?;
    let outside = (all - inner).to_vec();
    let (x, y) = (outside[0], outside[1]);
    let c = g.colour(x, y).expect("complete");

    let q = known
        .triangle_of(c.flip())
        .expect("bowtie triangles have both colours");
    let qc = q.colour;
    let k = if let Some(&z) = q
        .vertices
        .iter()
        .find(|&&z| g.colour(x, z) == Some(c) && g.colour(y, z) == Some(c))
    {
        MonoClique::new_unchecked(vec![x, y, z], c)
    } else {
        let pick = [x, y].into_iter().find_map(|w| {
            let hits: Vec<usize> = q.vertices.iter().copied().filter(|&z| g.colour(w, z) == Some(qc)).collect();
            (hits.len() >= 2).then(|| MonoClique::new_unchecked(vec![w, hits[0], hits[1]], qc))
        });
        pick.ok_or_else(|| Error::anomaly("second bowtie in K7", "no triangle through the outside pair", g))?
    };

    let opposite = known
        .triangle_of(k.colour.flip())
        .expect("bowtie triangles have both colours");
    let shared = k.vertex_set() & opposite.vertex_set();
    let found = if shared.is_empty() {
        let anchor = if k.vertices.contains(&x) { x } else { y };
        let mut six = k.vertices.clone();
        six.extend_from_slice(&opposite.vertices);
        six.sort_unstable();
        bowtie_through_vertex_k6(g, &six, anchor)?
    } else {
        Bowtie {
            t1: k,
            t2: opposite.clone(),
        }
    };
    if found.vertex_set() == inner || found.verify(g).is_err() {
        return Err(Error::anomaly("second bowtie in K7", "extracted bowtie is not new", g));
    }
    Ok(found)
}

/// Two-coloured `K_7(2)` skeleton: `u_i = i` and `v_i = 7 + i` for
/// `i in 0..7`, every pair adjacent except `u_i v_i`.
pub fn k7x2_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(84);
    for a in 0..14 {
        for b in a + 1..14 {
            if b != a + 7 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Three vertex-disjoint monochromatic triangles in a two-coloured
/// `K_7(2)` labelled as in [`k7x2_pairs`].
///
/// Two triangles in the `v`-side sharing at most one vertex are found by
/// search. If disjoint, any triangle of the `u`-side completes the triple.
/// Otherwise they are `v_a v_b v_c` and `v_c v_d v_e`; a triangle `I` in
/// `U \ {u_c}` misses one of `{a, b}` or one of `{d, e}`, say `a`, and the
/// six vertices `u_a, u_c` and the `v`-vertices outside `{a, b, c}` span a
/// complete graph disjoint from both, holding the third triangle.
pub fn extract_three_disjoint_k7x2(g: &ColouredGraph) -> Result<[MonoClique; 3]> {
    const STEP: &str = "three disjoint triangles in K7(2)";
    if g.n() != 14 || g.edge_count() != 84 || (0..7).any(|i| g.has_edge(i, i + 7)) {
        return Err(Error::Precondition(format!("{STEP}: input is not the K7(2) skeleton")));
    }
    let u: Vec<usize> = (0..7).collect();
    let v: Vec<usize> = (7..14).collect();
    let v_tris = triangles_in(g, &v);
    let pair = (|| {
        for (i, a) in v_tris.iter().enumerate() {
            for b in &v_tris[i + 1..] {
                if (a.vertex_set() & b.vertex_set()).len() <= 1 {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    })()
    .ok_or_else(|| Error::anomaly(STEP, "no two triangles on the v-side sharing at most one vertex", g))?;

    let (t1, t2) = pair;
    if t1.vertex_set().is_disjoint(&t2.vertex_set()) {
        let third = extract_mono_triangle_k6(g, &u)?;
        return Ok([t1, t2, third]);
    }
    let idx = |w: usize| w - 7;
    let c = (t1.vertex_set() & t2.vertex_set()).first().expect("shared vertex");
    let side = |t: &MonoClique| -> Vec<usize> { t.vertices.iter().copied().filter(|&w| w != c).map(idx).collect() };
    let (ab, de) = (side(&t1), side(&t2));

    let u_rest: Vec<usize> = u.iter().copied().filter(|&w| w != idx(c)).collect();
    let ui = extract_mono_triangle_k6(g, &u_rest)?;
    let in_i = |i: usize| ui.vertices.contains(&i);

    let (kept, free) = if ab.iter().filter(|&&i| in_i(i)).count() <= 1 {
        (t1, ab.iter().copied().find(|&i| !in_i(i)).expect("one of the pair is free"))
    } else {
        (t2, de.iter().copied().find(|&i| !in_i(i)).expect("pigeonhole"))
    };
    let kept_idx: Vec<usize> = kept.vertices.iter().map(|&w| idx(w)).collect();
    let mut s: Vec<usize> = vec![free, idx(c)];
    s.extend((0..7).filter(|i| !kept_idx.contains(i)).map(|i| i + 7));
    s.sort_unstable();
    let third = extract_mono_triangle_k6(g, &s)?;
    let out = [kept, ui, third];
    let union = out.iter().fold(VertexSet::empty(), |acc, t| acc | t.vertex_set());
    if union.len() != 9 {
        return Err(Error::anomaly(STEP, "extracted triangles overlap", g));
    }
    Ok(out)
}

/// Colour majority helper: the colour with most cliques, ties to the lower
/// index.
pub(crate) fn majority_colour(cliques: &[MonoClique], r: usize) -> Colour {
    (0..r)
        .map(|c| Colour(c as u8))
        .max_by_key(|&c| (cliques.iter().filter(|k| k.colour == c).count(), std::cmp::Reverse(c)))
        .unwrap_or(Colour::RED)
}
