//! Extremal constructions and the closed-form bounds they are measured
//! against.
//!
//! Every generator returns the graph together with its named vertex classes
//! (contiguous ranges, in the order listed by each generator). Admissibility is
//! checked with exact integer arithmetic.

mod bounds;
pub mod random;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph};

pub use bounds::{
    bound_report, ceil_div, floor_div, trivial_degree_threshold, BesPiece, BoundReport, BoundStatus,
    ExtremalPiece, MoonPiece,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    ExTriangle,
    ExTriangleAlt,
    #[serde(rename = "ex-bes-1")]
    ExBes1,
    #[serde(rename = "ex-bes-2")]
    ExBes2,
    #[serde(rename = "ex-bes-3")]
    ExBes3,
    BadlyK5,
    PinnedApex,
    SpecialBlowup,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::ExTriangle,
        Variant::ExTriangleAlt,
        Variant::ExBes1,
        Variant::ExBes2,
        Variant::ExBes3,
        Variant::BadlyK5,
        Variant::PinnedApex,
        Variant::SpecialBlowup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::ExTriangle => "ex-triangle",
            Variant::ExTriangleAlt => "ex-triangle-alt",
            Variant::ExBes1 => "ex-bes-1",
            Variant::ExBes2 => "ex-bes-2",
            Variant::ExBes3 => "ex-bes-3",
            Variant::BadlyK5 => "badly-k5",
            Variant::PinnedApex => "pinned-apex",
            Variant::SpecialBlowup => "special-blowup",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Inadmissible(format!("unknown variant {s:?}")))
    }
}

/// Full description of one extremal graph.
///
/// `extra` is only read by [`Variant::SpecialBlowup`]: `[r, ell]` selects the
/// minimum-degree construction on `(n, delta)`, `[r, ell, t]` the
/// complete-host construction for `t` copies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub variant: Variant,
    pub n: usize,
    pub delta: usize,
    #[serde(default)]
    pub extra: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedClass {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

impl NamedClass {
    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub params: ConstructionParams,
    pub graph: ColouredGraph,
    pub classes: Vec<NamedClass>,
}

/// JSON sidecar written next to a generated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSidecar {
    pub schema: u32,
    #[serde(flatten)]
    pub params: ConstructionParams,
    pub min_degree: usize,
    pub classes: Vec<NamedClass>,
}

impl Construction {
    pub fn class(&self, name: &str) -> Option<&NamedClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn sidecar(&self) -> ConstructionSidecar {
        ConstructionSidecar {
            schema: 1,
            params: self.params.clone(),
            min_degree: self.graph.min_degree(),
            classes: self.classes.clone(),
        }
    }
}

pub fn build(params: &ConstructionParams) -> Result<Construction> {
    let (n, d) = (params.n, params.delta);
    let mut c = match params.variant {
        Variant::ExTriangle => ex_triangle(n, d)?,
        Variant::ExTriangleAlt => ex_triangle_alt(n, d)?,
        Variant::ExBes1 => ex_bes_1(n, d)?,
        Variant::ExBes2 => ex_bes_2(n, d)?,
        Variant::ExBes3 => ex_bes_3(n, d)?,
        Variant::BadlyK5 => badly_k5_blowup(n)?,
        Variant::PinnedApex => pinned_apex(n, d)?,
        Variant::SpecialBlowup => match params.extra.as_slice() {
            [r, ell] => special_blowup(*r, *ell, SpecialMode::MinDegree { n, delta: d })?,
            [r, ell, t] => special_blowup(*r, *ell, SpecialMode::CompleteHost { t: *t })?,
            other => {
                return Err(Error::Inadmissible(format!(
                    "special-blowup needs extra = [r, ell] or [r, ell, t], got {other:?}"
                )))
            }
        },
    };
    c.params.extra.clone_from(&params.extra);
    Ok(c)
}

/// Builds a graph from consecutive vertex classes and a colour rule on
/// pairs of class indices (the rule is also consulted for pairs inside one
/// class).
fn from_classes(
    params: ConstructionParams,
    classes: &[(&str, usize)],
    rule: impl Fn(usize, usize) -> Option<Colour>,
) -> Result<Construction> {
    let n: usize = classes.iter().map(|c| c.1).sum();
    let mut named = Vec::with_capacity(classes.len());
    let mut owner = Vec::with_capacity(n);
    let mut start = 0;
    for (i, &(name, size)) in classes.iter().enumerate() {
        named.push(NamedClass {
            name: name.to_string(),
            start,
            end: start + size,
        });
        owner.extend(std::iter::repeat(i).take(size));
        start += size;
    }
    let mut g = ColouredGraph::new(n, 2)?;
    for u in 0..n {
        for v in u + 1..n {
            if let Some(c) = rule(owner[u], owner[v]) {
                g.set_edge(u, v, Some(c));
            }
        }
    }
    Ok(Construction {
        params,
        graph: g,
        classes: named,
    })
}

/// Colour of the pair `{a, b}` of distinct vertices in the badly coloured K5
/// whose red edges form the cycle 0-1-2-3-4-0.
fn badly_k5_colour(a: usize, b: usize) -> Colour {
    debug_assert!(a != b && a < 5 && b < 5);
    match (a + 5 - b) % 5 {
        1 | 4 => Colour::RED,
        _ => Colour::BLUE,
    }
}

/// Two-coloured K5 whose red edges form the 5-cycle 0-1-2-3-4-0 and whose
/// blue edges form the complementary 5-cycle 0-2-4-1-3-0.
pub fn badly_coloured_k5() -> ColouredGraph {
    ColouredGraph::complete_with(5, 2, badly_k5_colour).expect("five vertices")
}

/// Balanced blow-up of the badly coloured K5 on `n >= 5` vertices (class
/// sizes differ by at most one); minimum degree `floor(4n/5)`.
pub fn badly_k5_blowup(n: usize) -> Result<Construction> {
    if n < 5 {
        return Err(Error::Inadmissible(format!("badly-k5 blow-up needs n >= 5, got {n}")));
    }
    let names = ["V1", "V2", "V3", "V4", "V5"];
    let classes: Vec<(&str, usize)> = (0..5).map(|i| (names[i], n / 5 + usize::from(i < n % 5))).collect();
    let params = ConstructionParams {
        variant: Variant::BadlyK5,
        n,
        delta: n - (n + 4) / 5,
        extra: vec![],
    };
    from_classes(params, &classes, |a, b| (a != b).then(|| badly_k5_colour(a, b)))
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inadmissible(what()))
    }
}

fn params(variant: Variant, n: usize, delta: usize) -> ConstructionParams {
    ConstructionParams {
        variant,
        n,
        delta,
        extra: vec![],
    }
}

/// Blow-up of a badly coloured K5 with an extra clique class `V0` glued to
/// `V1`. Classes: `V0` (size `5δ-4n`), `V1..V5` (size `n-δ` each). The pair
/// `(V0 ∪ V1, V2..V5)` is a badly coloured K5 blow-up with red cycle
/// `V1 V2 V3 V4 V5`, so all edges from `V0 ∪ V1` to `V3 ∪ V4` are blue. Edges
/// inside `V0` and between `V0` and `V1` are red.
pub fn ex_triangle(n: usize, delta: usize) -> Result<Construction> {
    require(4 * n <= 5 * delta && delta < n, || {
        format!("ex-triangle needs 4n/5 <= delta <= n-1, got n={n}, delta={delta}")
    })?;
    let s = n - delta;
    let classes = [("V0", 5 * delta - 4 * n), ("V1", s), ("V2", s), ("V3", s), ("V4", s), ("V5", s)];
    let k5 = |c: usize| c.saturating_sub(1);
    from_classes(params(Variant::ExTriangle, n, delta), &classes, |a, b| match (a, b) {
        (0, 0) | (0, 1) | (1, 0) => Some(Colour::RED),
        _ if a == b => None,
        _ => Some(badly_k5_colour(k5(a), k5(b))),
    })
}

/// Classes `S1`, `S2` (independent, size `n-δ`) and `R` (clique, size
/// `2δ-n`). Edges between `S1 ∪ S2` and `R` are blue, all others red.
pub fn ex_triangle_alt(n: usize, delta: usize) -> Result<Construction> {
    require(7 * n <= 8 * delta && delta < n, || {
        format!("ex-triangle-alt needs 7n/8 <= delta <= n-1, got n={n}, delta={delta}")
    })?;
    let s = n - delta;
    let classes = [("S1", s), ("S2", s), ("R", 2 * delta - n)];
    from_classes(params(Variant::ExTriangleAlt, n, delta), &classes, |a, b| match (a, b) {
        (0, 0) | (1, 1) => None,
        (2, 2) | (0, 1) | (1, 0) => Some(Colour::RED),
        _ => Some(Colour::BLUE),
    })
}

/// Classes `R` (size `3⌊(δ+1)/5⌋+2`), `B` (the rest) and `S` (independent,
/// size `n-δ`). Red: inside `R`, between `S` and `B`. Blue: inside `B`,
/// between `R` and `S ∪ B`.
pub fn ex_bes_1(n: usize, delta: usize) -> Result<Construction> {
    require((5..n).contains(&delta), || {
        format!("ex-bes-1 needs 5 <= delta <= n-1, got n={n}, delta={delta}")
    })?;
    let r = 3 * ((delta + 1) / 5) + 2;
    let classes = [("R", r), ("B", delta - r), ("S", n - delta)];
    from_classes(params(Variant::ExBes1, n, delta), &classes, |a, b| match (a.min(b), a.max(b)) {
        (2, 2) => None,
        (0, 0) | (1, 2) => Some(Colour::RED),
        _ => Some(Colour::BLUE),
    })
}

/// Classes `R`, `B` (together `V1`, size `4δ-3n`, with
/// `|R| = 2⌊(4δ-3n+1)/3⌋+1`) and `V2..V5` (independent, size `n-δ`). The
/// partition `(V1, V2, .., V5)` is a badly coloured K5 blow-up; inside `V1`
/// the `R` edges are red and every edge touching `B` is blue.
pub fn ex_bes_2(n: usize, delta: usize) -> Result<Construction> {
    require(n >= 25 && 4 * n <= 5 * delta && delta < n, || {
        format!("ex-bes-2 needs n >= 25 and 4n/5 <= delta <= n-1, got n={n}, delta={delta}")
    })?;
    let v1 = 4 * delta - 3 * n;
    let r = 2 * ((v1 + 1) / 3) + 1;
    let s = n - delta;
    let classes = [("R", r), ("B", v1 - r), ("V2", s), ("V3", s), ("V4", s), ("V5", s)];
    let k5 = |c: usize| c.saturating_sub(1);
    from_classes(params(Variant::ExBes2, n, delta), &classes, |a, b| match (a.min(b), a.max(b)) {
        (0, 0) => Some(Colour::RED),
        (0, 1) | (1, 1) => Some(Colour::BLUE),
        _ if a == b => None,
        _ => Some(badly_k5_colour(k5(a), k5(b))),
    })
}

/// Classes `R` (size `⌈(5δ-4n)/2⌉`), `B` (size `⌊(5δ-4n)/2⌋`), `S`
/// (independent, size `n-δ`) forming `V1`, then `V2..V5` (independent, size
/// `n-δ`). `(V1, .., V5)` is a badly coloured K5 blow-up; inside `V1` the
/// edges within `R ∪ S` are red and every edge touching `B` is blue.
pub fn ex_bes_3(n: usize, delta: usize) -> Result<Construction> {
    require(4 * n <= 5 * delta && delta < n, || {
        format!("ex-bes-3 needs 4n/5 <= delta <= n-1, got n={n}, delta={delta}")
    })?;
    let k = 5 * delta - 4 * n;
    let s = n - delta;
    let classes = [
        ("R", k.div_ceil(2)),
        ("B", k / 2),
        ("S", s),
        ("V2", s),
        ("V3", s),
        ("V4", s),
        ("V5", s),
    ];
    let k5 = |c: usize| c.saturating_sub(2);
    from_classes(params(Variant::ExBes3, n, delta), &classes, |a, b| match (a.min(b), a.max(b)) {
        (2, 2) => None,
        (0, 0) | (0, 2) => Some(Colour::RED),
        (0, 1) | (1, 1) | (1, 2) => Some(Colour::BLUE),
        _ if a == b => None,
        _ => Some(badly_k5_colour(k5(a), k5(b))),
    })
}

/// Ramsey number `R_2(3)`.
const R23: usize = 6;

/// Badly coloured K5 plus an apex whose edges are red to the first two K5
/// vertices and blue to the other three, blown up with apex class size
/// `apex` and every K5 class of size `other`. Classes: `A`, `V1..V5`.
pub fn pinned_apex_colouring(apex: usize, other: usize) -> Result<Construction> {
    require(apex >= 1 && other >= 1, || "pinned-apex class sizes must be positive".to_string())?;
    let n = apex + 5 * other;
    let classes = [("A", apex), ("V1", other), ("V2", other), ("V3", other), ("V4", other), ("V5", other)];
    let p = ConstructionParams {
        variant: Variant::PinnedApex,
        n,
        delta: (n - other).min(5 * other),
        extra: vec![],
    };
    from_classes(p, &classes, |a, b| match (a.min(b), a.max(b)) {
        _ if a == b => None,
        (0, 1) | (0, 2) => Some(Colour::RED),
        (0, _) => Some(Colour::BLUE),
        (x, y) => Some(badly_k5_colour(x - 1, y - 1)),
    })
}

/// [`pinned_apex_colouring`] sized for `(n, δ)` with `4n/5 < δ <= 5n/6`: apex
/// class `(R-1)δ-(R-2)n = 5δ-4n`, other classes `n-δ`.
pub fn pinned_apex(n: usize, delta: usize) -> Result<Construction> {
    require(4 * n < 5 * delta && 6 * delta <= 5 * n, || {
        format!("pinned-apex needs 4n/5 < delta <= 5n/6, got n={n}, delta={delta}")
    })?;
    let mut c = pinned_apex_colouring((R23 - 1) * delta - (R23 - 2) * n, n - delta)?;
    c.params.delta = delta;
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialMode {
    /// Complete host on `tℓ + SR - 3` vertices without `t` disjoint
    /// monochromatic `K_ℓ`.
    CompleteHost { t: usize },
    /// `n`-vertex host of minimum degree `δ` whose monochromatic `K_ℓ` all
    /// lie in one class.
    MinDegree { n: usize, delta: usize },
}

/// Special 2-colouring of `K_{SR_2(3)-1} = K_3` with no monochromatic
/// triangle: vertex 0 meets only blue edges, the edge `12` is red. Red is the
/// colour missing at vertex 0.
fn special_k3() -> (ColouredGraph, Colour) {
    let g = ColouredGraph::from_edges(
        3,
        2,
        [(0, 1, Colour::BLUE), (0, 2, Colour::BLUE), (1, 2, Colour::RED)],
    )
    .expect("valid");
    (g, Colour::RED)
}

/// Blow-ups of a stored special colouring witnessing the sharpness of the
/// near-complete tiling bounds. Only `(r, ℓ) = (2, 3)` is shipped.
///
/// In both modes the special vertex becomes a clique class whose internal
/// edges take the colour missing at that vertex; the class is `A` (size
/// `tℓ-1`) in [`SpecialMode::CompleteHost`] and `U` (size
/// `n-(n-δ)(SR-2)`) in [`SpecialMode::MinDegree`], where the other vertices
/// become independent classes of size `n-δ`.
pub fn special_blowup(r: usize, ell: usize, mode: SpecialMode) -> Result<Construction> {
    if (r, ell) != (2, 3) {
        return Err(Error::Unsupported(format!(
            "no stored special colouring for (r, ell) = ({r}, {ell})"
        )));
    }
    const SR: usize = 4;
    let (h, missing) = special_k3();
    let (sizes, other_size, name, n, delta) = match mode {
        SpecialMode::CompleteHost { t } => {
            require(t >= 1, || "t must be positive".into())?;
            let a = t * ell - 1;
            (vec![a, 1, 1], 1, "A", a + 2, a + 1)
        }
        SpecialMode::MinDegree { n, delta } => {
            // δ > (1 - 1/(SR-2)) n, i.e. the class U is non-empty.
            require(delta < n && (SR - 2) * (n - delta) < n, || {
                format!("special-blowup needs n/2 < delta <= n-1 here, got n={n}, delta={delta}")
            })?;
            let u = n - (n - delta) * (SR - 2);
            (vec![u, n - delta, n - delta], n - delta, "U", n, delta)
        }
    };
    let (mut g, ranges) = h.blow_up(&sizes)?;
    for a in ranges[0].clone() {
        for b in a + 1..ranges[0].end {
            g.set_edge(a, b, Some(missing));
        }
    }
    let _ = other_size;
    let classes = vec![
        NamedClass {
            name: name.to_string(),
            start: ranges[0].start,
            end: ranges[0].end,
        },
        NamedClass {
            name: "X1".into(),
            start: ranges[1].start,
            end: ranges[1].end,
        },
        NamedClass {
            name: "X2".into(),
            start: ranges[2].start,
            end: ranges[2].end,
        },
    ];
    let extra = match mode {
        SpecialMode::CompleteHost { t } => vec![r, ell, t],
        SpecialMode::MinDegree { .. } => vec![r, ell],
    };
    Ok(Construction {
        params: ConstructionParams {
            variant: Variant::SpecialBlowup,
            n,
            delta,
            extra,
        },
        graph: g,
        classes,
    })
}
