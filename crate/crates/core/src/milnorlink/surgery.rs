use std::collections::BTreeMap;

use super::diagram::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

/// One side of an edge on the boundary of a face, walked with the face on
/// the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceSide {
    pub edge: u32,
    pub component: usize,
    /// True when the walk follows the edge orientation.
    pub forward: bool,
}

fn occurrences(d: &LinkDiagram) -> BTreeMap<u32, Vec<(usize, usize)>> {
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, x) in d.crossings().iter().enumerate() {
        for (s, &l) in x.slots.iter().enumerate() {
            occ.entry(l).or_default().push((ci, s));
        }
    }
    occ
}

/// Faces of the diagram as cyclic sequences of edge sides.
pub fn faces(d: &LinkDiagram) -> Vec<Vec<FaceSide>> {
    let crossings = d.crossings();
    let occ = occurrences(d);
    let mut seen = vec![[false; 4]; crossings.len()];
    let mut out = Vec::new();
    for c0 in 0..crossings.len() {
        for s0 in 0..4 {
            if seen[c0][s0] {
                continue;
            }
            let mut face = Vec::new();
            let (mut c, mut s) = (c0, s0);
            while !seen[c][s] {
                seen[c][s] = true;
                let leave = (s + 3) % 4;
                let edge = crossings[c].slots[leave];
                let &(c2, s2) = occ[&edge]
                    .iter()
                    .find(|&&o| o != (c, leave))
                    .expect("every edge has two ends");
                face.push(FaceSide {
                    edge,
                    component: d.component_of(edge).expect("edge listed"),
                    forward: !crossings[c].is_incoming(leave),
                });
                (c, s) = (c2, s2);
            }
            out.push(face);
        }
    }
    out
}

/// Disjoint union, with the second diagram drawn beside the first. Edges and
/// components of `b` are renumbered after those of `a`.
pub fn split_union(a: &LinkDiagram, b: &LinkDiagram) -> Result<LinkDiagram> {
    let offset = a.component_map().keys().max().copied().unwrap_or(0);
    let mut pd = a.pd().to_vec();
    pd.extend(b.pd().iter().map(|x| x.map(|l| l + offset)));
    let mut comps = a.component_map().clone();
    let mut framings = a.framings().to_vec();
    framings.extend_from_slice(b.framings());
    comps.extend(b.component_map().iter().map(|(&l, &c)| (l + offset, c + a.m())));
    let m = a.m() + b.m();
    for c in 1..=m {
        if !comps.values().any(|&v| v == c) {
            let fresh = comps.keys().max().copied().unwrap_or(0) + 1;
            comps.insert(fresh, c);
        }
    }
    LinkDiagram::new(
        format!("{} + {}", a.name(), b.name()),
        m,
        pd,
        comps,
        framings,
    )
}

/// Picks, in a face of `a` and a face of `b`, one side per component so
/// that untwisted bands joining them are disjoint and orientation
/// compatible: the cyclic orders must be opposite and the sides must run
/// the same way relative to their faces.
fn choose_band_sides(a: &LinkDiagram, b: &LinkDiagram) -> Option<(Vec<u32>, Vec<u32>)> {
    let m = a.m();
    let fa = faces(a);
    let fb = faces(b);
    for f in &fa {
        for g in &fb {
            let mut choice = vec![(0usize, 0usize); m];
            if search(f, g, m, 0, &mut choice) {
                return Some((
                    choice.iter().map(|&(p, _)| f[p].edge).collect(),
                    choice.iter().map(|&(_, p)| g[p].edge).collect(),
                ));
            }
        }
    }
    None
}

fn search(f: &[FaceSide], g: &[FaceSide], m: usize, c: usize, choice: &mut Vec<(usize, usize)>) -> bool {
    if c == m {
        return opposite_cyclic_orders(choice);
    }
    for (p, side) in f.iter().enumerate().filter(|(_, s)| s.component == c + 1) {
        for (q, other) in g.iter().enumerate().filter(|(_, s)| s.component == c + 1) {
            if side.forward != other.forward {
                continue;
            }
            choice[c] = (p, q);
            if search(f, g, m, c + 1, choice) {
                return true;
            }
        }
    }
    false
}

fn opposite_cyclic_orders(choice: &[(usize, usize)]) -> bool {
    let m = choice.len();
    let mut by_a: Vec<usize> = (0..m).collect();
    by_a.sort_by_key(|&c| choice[c].0);
    let mut by_b: Vec<usize> = (0..m).collect();
    by_b.sort_by_key(|&c| std::cmp::Reverse(choice[c].1));
    (0..m).any(|r| (0..m).all(|i| by_a[i] == by_b[(i + r) % m]))
}

/// Component-wise band sum of two diagrams with the same number of
/// components: component `i` of `a` is joined to component `i` of `b` by
/// an untwisted band through a common face of the split union, so no
/// crossings are added. Edges are relabelled along each new component.
pub fn band_sum(a: &LinkDiagram, b: &LinkDiagram) -> Result<LinkDiagram> {
    if a.m() != b.m() {
        return Err(Error::GeneratorMismatch(a.m(), b.m()));
    }
    if (1..=a.m()).any(|c| a.edges(c).is_empty() || b.edges(c).is_empty()) {
        return Err(Error::Diagram("band sums need every component to have crossings".into()));
    }
    let (ea, eb) = choose_band_sides(a, b)
        .ok_or_else(|| Error::Diagram("no face admits disjoint compatible bands".into()))?;
    let u = split_union(a, b)?;
    let offset = a.component_map().keys().max().copied().unwrap_or(0);
    let crossings: Vec<Crossing> = u.crossings().to_vec();
    let mut pd: Vec<[u32; 4]> = u.pd().to_vec();

    let end_slot = |label: u32| -> (usize, usize) {
        crossings
            .iter()
            .enumerate()
            .find_map(|(ci, x)| (0..4).find(|&s| x.slots[s] == label && x.is_incoming(s)).map(|s| (ci, s)))
            .expect("every edge ends somewhere")
    };
    for (&e, &f) in ea.iter().zip(&eb) {
        let f = f + offset;
        let (ce, se) = end_slot(e);
        let (cf, sf) = end_slot(f);
        pd[ce][se] = f;
        pd[cf][sf] = e;
    }

    let mut end_of: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        for (s, &label) in pd[ci].iter().enumerate() {
            if x.is_incoming(s) {
                end_of.insert(label, (ci, s));
            }
        }
    }
    let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
    let mut comps = BTreeMap::new();
    for c in 1..=a.m() {
        let start = a.edges(c)[0];
        let mut e = start;
        loop {
            let label = relabel.len() as u32 + 1;
            if relabel.insert(e, label).is_some() {
                return Err(Error::Diagram(format!("edge {e} visited twice while relabelling")));
            }
            comps.insert(label, c);
            let (ci, s) = end_of[&e];
            e = pd[ci][Crossing::through(s)];
            if e == start {
                break;
            }
        }
    }
    if relabel.len() != end_of.len() {
        return Err(Error::Diagram("band sum left a separate component".into()));
    }
    let pd = pd.iter().map(|x| x.map(|l| relabel[&l])).collect();
    let framings = a.framings().iter().zip(b.framings()).map(|(x, y)| x + y).collect();
    LinkDiagram::new(format!("{} # {}", a.name(), b.name()), a.m(), pd, comps, framings)
}

/// Mirror image by switching every crossing.
pub fn mirror(d: &LinkDiagram) -> Result<LinkDiagram> {
    let pd = d
        .crossings()
        .iter()
        .map(|x| {
            let [a, b, c, e] = x.slots;
            if x.sign > 0 {
                [e, a, b, c]
            } else {
                [b, c, e, a]
            }
        })
        .collect();
    let framings = d.framings().iter().map(|f| -f).collect();
    LinkDiagram::new(format!("mirror {}", d.name()), d.m(), pd, d.component_map().clone(), framings)
}

/// Reverses the orientation of every component.
pub fn reverse(d: &LinkDiagram) -> Result<LinkDiagram> {
    let mut relabel = BTreeMap::new();
    for c in 1..=d.m() {
        let es = d.edges(c);
        for (k, &e) in es.iter().enumerate() {
            relabel.insert(e, es[es.len() - 1 - k]);
        }
    }
    let pd = d
        .pd()
        .iter()
        .map(|x| [x[2], x[3], x[0], x[1]].map(|l| relabel.get(&l).copied().unwrap_or(l)))
        .collect();
    LinkDiagram::new(
        format!("reversed {}", d.name()),
        d.m(),
        pd,
        d.component_map().clone(),
        d.framings().to_vec(),
    )
}

/// Renumbers components: component `c` becomes `perm[c - 1]`.
pub fn permute_components(d: &LinkDiagram, perm: &[usize]) -> Result<LinkDiagram> {
    let m = d.m();
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=m).collect::<Vec<_>>() {
        return Err(Error::Diagram(format!("{perm:?} is not a permutation of 1..{m}")));
    }
    let comps = d.component_map().iter().map(|(&l, &c)| (l, perm[c - 1])).collect();
    let mut framings = vec![0; m];
    for (c, &f) in d.framings().iter().enumerate() {
        framings[perm[c] - 1] = f;
    }
    LinkDiagram::new(d.name(), m, d.pd().to_vec(), comps, framings)
}
