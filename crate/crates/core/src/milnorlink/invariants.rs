use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::freelie::{project_to_lyndon, sl_quotient, LieElement, TensorElement, TensorElementJson};
use crate::groupwords::{magnus_expand, GroupWord, MagnusPoly};
use crate::limits::Limits;

/// A Wirtinger arc: a maximal run of edges between two undercrossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerArc {
    /// 1-based component.
    pub component: usize,
    /// Edges in traversal order; empty for a crossingless circle.
    pub edges: Vec<u32>,
}

/// `outgoing = over^-sign · incoming · over^sign`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WirtingerRelation {
    pub incoming: usize,
    pub over: usize,
    pub outgoing: usize,
    pub sign: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub arcs: Vec<WirtingerArc>,
    pub relations: Vec<WirtingerRelation>,
    /// Arc of every edge label.
    pub arc_of: BTreeMap<u32, usize>,
}

/// One passage of a component under another strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Undercrossing {
    over: usize,
    sign: i32,
    next: usize,
}

/// Each component's base arc and the undercrossings met from there.
struct Traversal {
    base: usize,
    events: Vec<Undercrossing>,
}

pub fn wirtinger(d: &LinkDiagram) -> WirtingerPresentation {
    let crossings = d.crossings();
    // the crossing where each edge ends, and whether it goes under there
    let mut end_under: BTreeMap<u32, Option<usize>> = BTreeMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        end_under.insert(x.under_in_edge(), Some(ci));
        end_under.insert(x.over_in_edge(), None);
    }
    let mut arcs = Vec::new();
    let mut arc_of = BTreeMap::new();
    for c in 1..=d.m() {
        let es = d.edges(c);
        if es.is_empty() {
            arcs.push(WirtingerArc {
                component: c,
                edges: Vec::new(),
            });
            continue;
        }
        // start right after an undercrossing when there is one
        let start = es
            .iter()
            .position(|e| end_under[e].is_some())
            .map_or(0, |i| (i + 1) % es.len());
        let mut current = WirtingerArc {
            component: c,
            edges: Vec::new(),
        };
        for k in 0..es.len() {
            let e = es[(start + k) % es.len()];
            current.edges.push(e);
            arc_of.insert(e, arcs.len());
            if end_under[&e].is_some() {
                arcs.push(std::mem::replace(
                    &mut current,
                    WirtingerArc {
                        component: c,
                        edges: Vec::new(),
                    },
                ));
            }
        }
        if !current.edges.is_empty() {
            arcs.push(current);
        }
    }
    let relations = crossings
        .iter()
        .map(|x| WirtingerRelation {
            incoming: arc_of[&x.under_in_edge()],
            over: arc_of[&x.over_in_edge()],
            outgoing: arc_of[&x.under_out_edge()],
            sign: x.sign,
        })
        .collect();
    WirtingerPresentation { arcs, relations, arc_of }
}

fn traversals(d: &LinkDiagram, p: &WirtingerPresentation) -> Vec<Traversal> {
    let mut under_at: BTreeMap<u32, usize> = BTreeMap::new();
    for (ci, x) in d.crossings().iter().enumerate() {
        under_at.insert(x.under_in_edge(), ci);
    }
    (1..=d.m())
        .map(|c| {
            let order = d.traversal(c);
            let base = match order.first() {
                Some(e) => p.arc_of[e],
                None => p.arcs.iter().position(|a| a.component == c).expect("arc per circle"),
            };
            let events = order
                .iter()
                .filter_map(|e| under_at.get(e))
                .map(|&ci| {
                    let r = p.relations[ci];
                    Undercrossing {
                        over: r.over,
                        sign: r.sign,
                        next: r.outgoing,
                    }
                })
                .collect();
            Traversal { base, events }
        })
        .collect()
}

#[derive(Clone, Copy)]
struct Shape {
    m: usize,
    q: usize,
}

/// Values assigned to arcs by the nilpotent rewriting, either as words or
/// as Magnus expansions truncated above degree `q`.
trait ArcValue: Clone {
    fn identity(s: Shape) -> Self;
    fn generator(s: Shape, c: usize) -> Self;
    fn inverse(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl ArcValue for GroupWord {
    fn identity(s: Shape) -> Self {
        GroupWord::identity(s.m)
    }

    fn generator(s: Shape, c: usize) -> Self {
        GroupWord::generator(s.m, c).expect("component in range")
    }

    fn inverse(&self) -> Self {
        GroupWord::inverse(self)
    }

    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// A Magnus expansion together with that of its inverse.
#[derive(Clone)]
struct Expanded {
    value: MagnusPoly,
    inverse: MagnusPoly,
}

impl ArcValue for Expanded {
    fn identity(s: Shape) -> Self {
        let one = MagnusPoly::one(s.m, s.q);
        Expanded {
            value: one.clone(),
            inverse: one,
        }
    }

    fn generator(s: Shape, c: usize) -> Self {
        let x = GroupWord::generator(s.m, c).expect("component in range");
        Expanded {
            value: magnus_expand(&x, s.q),
            inverse: magnus_expand(&x.inverse(), s.q),
        }
    }

    fn inverse(&self) -> Self {
        Expanded {
            value: self.inverse.clone(),
            inverse: self.value.clone(),
        }
    }

    fn times(&self, other: &Self) -> Self {
        Expanded {
            value: self.value.mul(&other.value),
            inverse: other.inverse.mul(&self.inverse),
        }
    }
}

fn power<V: ArcValue>(v: &V, sign: i32) -> V {
    if sign > 0 {
        v.clone()
    } else {
        v.inverse()
    }
}

fn rewrite<V: ArcValue>(s: Shape, p: &WirtingerPresentation, ts: &[Traversal], levels: usize) -> Vec<V> {
    let mut values: Vec<V> = p.arcs.iter().map(|a| V::generator(s, a.component)).collect();
    for _ in 1..levels {
        let mut next = values.clone();
        for (c, t) in ts.iter().enumerate() {
            let x = V::generator(s, c + 1);
            let mut w = V::identity(s);
            for ev in &t.events {
                w = w.times(&power(&values[ev.over], ev.sign));
                if ev.next != t.base {
                    next[ev.next] = w.inverse().times(&x).times(&w);
                }
            }
            next[t.base] = x;
        }
        values = next;
    }
    values
}

fn assemble<V: ArcValue>(s: Shape, d: &LinkDiagram, ts: &[Traversal], arcs: &[V]) -> Vec<V> {
    ts.iter()
        .enumerate()
        .map(|(c, t)| {
            let mut w = V::identity(s);
            for ev in &t.events {
                w = w.times(&power(&arcs[ev.over], ev.sign));
            }
            let e = d.framings()[c] - d.writhe(c + 1);
            let x = power(&V::generator(s, c + 1), if e < 0 { -1 } else { 1 });
            for _ in 0..e.unsigned_abs() {
                w = w.times(&x);
            }
            w
        })
        .collect()
}

/// Words for the arc meridians in the base meridians `x_1..x_m`, correct
/// modulo the `(q+1)`-st lower central subgroup.
pub fn nilpotent_arc_words(d: &LinkDiagram, q: usize) -> Vec<GroupWord> {
    let p = wirtinger(d);
    let ts = traversals(d, &p);
    rewrite(Shape { m: d.m(), q }, &p, &ts, q.max(1))
}

/// Framed longitudes as words, correct modulo the `(q+1)`-st lower central
/// subgroup: the product of the over-arc meridians met along component `i`,
/// times `x_i` to the framing minus the writhe of the component.
pub fn longitudes(d: &LinkDiagram, q: usize) -> Vec<GroupWord> {
    let p = wirtinger(d);
    let ts = traversals(d, &p);
    let s = Shape { m: d.m(), q };
    let arcs = rewrite::<GroupWord>(s, &p, &ts, q.max(1));
    assemble(s, d, &ts, &arcs)
}

/// Magnus expansions of the longitudes truncated above degree `q`.
pub fn longitude_expansions(d: &LinkDiagram, q: usize) -> Vec<MagnusPoly> {
    let p = wirtinger(d);
    let ts = traversals(d, &p);
    let s = Shape { m: d.m(), q };
    let arcs = rewrite::<Expanded>(s, &p, &ts, q + 1);
    assemble(s, d, &ts, &arcs).into_iter().map(|e| e.value).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorResult {
    pub order: usize,
    pub lower_orders_vanish: bool,
    /// Smallest order with a nonzero invariant, when below `order`.
    pub first_nonvanishing_order: Option<usize>,
    pub total: Option<TensorElement>,
    /// Magnus coefficient of `X_{i_1}..X_{i_{n+1}}` in `λ_i`, keyed by
    /// `(i_1, .., i_{n+1}, i)`; nonzero entries only.
    pub coefficients: BTreeMap<Vec<usize>, BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuBarJson {
    pub indices: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorResultJson {
    pub name: String,
    pub order: usize,
    pub lower_orders_vanish: bool,
    pub first_nonvanishing_order: Option<usize>,
    pub total: Option<TensorElementJson>,
    pub coefficients: Vec<MuBarJson>,
}

impl MilnorResult {
    pub fn to_json(&self, name: &str) -> MilnorResultJson {
        MilnorResultJson {
            name: name.to_string(),
            order: self.order,
            lower_orders_vanish: self.lower_orders_vanish,
            first_nonvanishing_order: self.first_nonvanishing_order,
            total: self.total.as_ref().map(|t| t.to_json()),
            coefficients: self
                .coefficients
                .iter()
                .map(|(k, v)| MuBarJson {
                    indices: k.clone(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

/// The order `n` Milnor invariant `μ_n = Σ X_i ⊗ λ_i`, read from the degree
/// `n+1` part of the longitude expansions. Refuses, with the first nonzero
/// order, when some longitude has a lower-degree term.
pub fn milnor_mu(d: &LinkDiagram, n: usize) -> Result<MilnorResult> {
    Limits::from_env().check_order(n)?;
    let m = d.m();
    let q = n + 1;
    let expansions = longitude_expansions(d, q);
    let first = expansions.iter().filter_map(|p| p.lowest_nonconstant_degree()).min();
    if let Some(deg) = first.filter(|&deg| deg <= n) {
        return Ok(MilnorResult {
            order: n,
            lower_orders_vanish: false,
            first_nonvanishing_order: Some(deg - 1),
            total: None,
            coefficients: BTreeMap::new(),
        });
    }
    let mut parts = Vec::with_capacity(m);
    let mut coefficients = BTreeMap::new();
    for (i, p) in expansions.iter().enumerate() {
        let top = p.homogeneous(q);
        for (w, c) in &top {
            let mut key: Vec<usize> = w.iter().map(|&l| l as usize).collect();
            key.push(i + 1);
            coefficients.insert(key, c.clone());
        }
        parts.push(project_to_lyndon(m, q, &top)?);
    }
    let total = TensorElement::from_parts(m, n, &parts)?;
    if !total.in_dn() {
        return Err(Error::NotInKernel);
    }
    Ok(MilnorResult {
        order: n,
        lower_orders_vanish: true,
        first_nonvanishing_order: None,
        total: Some(total),
        coefficients,
    })
}

/// Class of each longitude word in `L_{n+1}`, computed from the words.
pub fn longitude_classes(d: &LinkDiagram, n: usize) -> Result<Vec<LieElement>> {
    longitudes(d, n + 2)
        .iter()
        .map(|w| crate::groupwords::lie_class(w, n + 1))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatoLevine {
    Value(Vec<bool>),
    Refused { first_nonvanishing_order: usize },
}

/// `SL_{2k-1}(L) = sl_{2k}(μ_{2k}(L))`, defined when every invariant of
/// order below `2k` vanishes.
pub fn sato_levine(d: &LinkDiagram, k: usize) -> Result<SatoLevine> {
    let r = milnor_mu(d, 2 * k)?;
    match (r.total, r.first_nonvanishing_order) {
        (Some(total), _) => Ok(SatoLevine::Value(sl_quotient(&total, d.m(), k)?)),
        (None, Some(o)) => Ok(SatoLevine::Refused {
            first_nonvanishing_order: o,
        }),
        (None, None) => unreachable!("refusal always names an order"),
    }
}
