use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of an edge in a PD tuple `[a, b, c, d]`, counterclockwise from
/// the incoming under-strand.
pub const UNDER_IN: usize = 0;
pub const UNDER_OUT: usize = 2;

/// One crossing with the over-strand direction resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub slots: [u32; 4],
    /// Slot of the incoming over-strand edge, 1 or 3.
    pub over_in: usize,
    /// +1 when the over-strand runs from slot 3 to slot 1.
    pub sign: i32,
}

impl Crossing {
    pub fn over_out(&self) -> usize {
        4 - self.over_in
    }

    pub fn under_in_edge(&self) -> u32 {
        self.slots[UNDER_IN]
    }

    pub fn under_out_edge(&self) -> u32 {
        self.slots[UNDER_OUT]
    }

    pub fn over_in_edge(&self) -> u32 {
        self.slots[self.over_in]
    }

    pub fn over_out_edge(&self) -> u32 {
        self.slots[self.over_out()]
    }

    /// True when slot `s` is where its edge ends.
    pub fn is_incoming(&self, s: usize) -> bool {
        s == UNDER_IN || s == self.over_in
    }

    /// The slot on the same strand on the other side of the crossing.
    pub fn through(s: usize) -> usize {
        (s + 2) % 4
    }
}

/// An oriented link diagram given by a planar-diagram code.
///
/// Each crossing is `[a, b, c, d]`: edge labels counterclockwise starting
/// from the incoming under-strand, so the under-strand runs `a → c`. Within a
/// component, edges are oriented in increasing label order (cyclically),
/// which fixes the over-strand direction; the crossing is positive when the
/// over-strand runs `d → b`. A component whose labels never occur in the
/// code, or which has no labels at all, is a crossingless circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    name: String,
    m: usize,
    pd: Vec<[u32; 4]>,
    component_of: BTreeMap<u32, usize>,
    framings: Vec<i64>,
    crossings: Vec<Crossing>,
    edges: Vec<Vec<u32>>,
    base_edges: Vec<Option<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub m: usize,
    pub pd: Vec<[u32; 4]>,
    #[serde(default)]
    pub components: BTreeMap<String, usize>,
    #[serde(default)]
    pub framings: Vec<i64>,
    #[serde(default)]
    pub name: String,
}

fn diagram_error(msg: impl Into<String>) -> Error {
    Error::Diagram(msg.into())
}

impl LinkDiagram {
    /// Builds and validates a diagram. Components are numbered from 1.
    pub fn new(
        name: impl Into<String>,
        m: usize,
        pd: Vec<[u32; 4]>,
        component_of: BTreeMap<u32, usize>,
        framings: Vec<i64>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(diagram_error("a link needs at least one component"));
        }
        let framings = if framings.is_empty() { vec![0; m] } else { framings };
        if framings.len() != m {
            return Err(diagram_error(format!("expected {m} framings, got {}", framings.len())));
        }
        let mut edges = vec![Vec::new(); m];
        for (&label, &c) in &component_of {
            if label == 0 {
                return Err(diagram_error("edge labels must be positive"));
            }
            if c == 0 || c > m {
                return Err(diagram_error(format!("edge {label} assigned to unknown component {c}")));
            }
            edges[c - 1].push(label);
        }

        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &pd {
            for &l in x {
                if !component_of.contains_key(&l) {
                    return Err(diagram_error(format!("edge {l} has no component")));
                }
                *count.entry(l).or_default() += 1;
            }
        }
        for (&l, &n) in &count {
            if n != 2 {
                return Err(diagram_error(format!("edge {l} appears {n} times, expected 2")));
            }
        }
        for (c, es) in edges.iter_mut().enumerate() {
            let used = es.iter().filter(|l| count.contains_key(l)).count();
            if used == 0 {
                es.clear();
            } else if used != es.len() {
                return Err(diagram_error(format!("component {} has edges missing from the code", c + 1)));
            }
        }

        let succ = |l: u32| -> u32 {
            let es = &edges[component_of[&l] - 1];
            let i = es.binary_search(&l).expect("edge listed");
            es[(i + 1) % es.len()]
        };

        // Under-strands are fixed by the slot convention; over-strands are
        // fixed by label order, except in components with at most two edges
        // where both directions are successors. Those are resolved by
        // requiring each edge to start and end exactly once.
        let mut starts: BTreeMap<u32, usize> = BTreeMap::new();
        let mut ends: BTreeMap<u32, usize> = BTreeMap::new();
        let mut over_in: Vec<Option<usize>> = vec![None; pd.len()];
        for (ci, x) in pd.iter().enumerate() {
            if succ(x[0]) != x[2] {
                return Err(diagram_error(format!(
                    "crossing {} {:?}: under-strand {} → {} does not follow the component orientation",
                    ci + 1,
                    x,
                    x[0],
                    x[2]
                )));
            }
            *ends.entry(x[0]).or_default() += 1;
            *starts.entry(x[2]).or_default() += 1;
            let forward = succ(x[3]) == x[1];
            let backward = succ(x[1]) == x[3];
            match (forward, backward) {
                (true, false) => over_in[ci] = Some(3),
                (false, true) => over_in[ci] = Some(1),
                (false, false) => {
                    return Err(diagram_error(format!(
                        "crossing {} {:?}: over-strand edges {} and {} are not consecutive",
                        ci + 1,
                        x,
                        x[1],
                        x[3]
                    )))
                }
                (true, true) => {}
            }
            if let Some(s) = over_in[ci] {
                *ends.entry(x[s]).or_default() += 1;
                *starts.entry(x[4 - s]).or_default() += 1;
            }
        }
        loop {
            let mut progress = false;
            let mut pending = false;
            for (ci, x) in pd.iter().enumerate() {
                if over_in[ci].is_some() {
                    continue;
                }
                let ended = |l: u32| ends.get(&l).copied().unwrap_or(0) > 0;
                let started = |l: u32| starts.get(&l).copied().unwrap_or(0) > 0;
                let choice = if ended(x[1]) || started(x[3]) {
                    Some(3)
                } else if ended(x[3]) || started(x[1]) {
                    Some(1)
                } else {
                    None
                };
                match choice {
                    Some(s) => {
                        over_in[ci] = Some(s);
                        *ends.entry(x[s]).or_default() += 1;
                        *starts.entry(x[4 - s]).or_default() += 1;
                        progress = true;
                    }
                    None => pending = true,
                }
            }
            if !pending {
                break;
            }
            if !progress {
                return Err(diagram_error("over-strand direction is ambiguous; use more edge labels"));
            }
        }
        for &l in count.keys() {
            if starts.get(&l) != Some(&1) || ends.get(&l) != Some(&1) {
                return Err(diagram_error(format!("edge {l} does not have one start and one end")));
            }
        }

        let crossings = pd
            .iter()
            .zip(&over_in)
            .map(|(x, s)| {
                let s = s.expect("resolved");
                Crossing {
                    slots: *x,
                    over_in: s,
                    sign: if s == 3 { 1 } else { -1 },
                }
            })
            .collect();
        Ok(LinkDiagram {
            name: name.into(),
            m,
            pd,
            component_of,
            framings,
            crossings,
            edges,
            base_edges: vec![None; m],
        })
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let mut component_of = BTreeMap::new();
        for (k, &c) in &json.components {
            let label: u32 = k
                .trim()
                .parse()
                .map_err(|_| diagram_error(format!("bad edge label {k:?}")))?;
            component_of.insert(label, c);
        }
        Self::new(json.name.clone(), json.m, json.pd.clone(), component_of, json.framings.clone())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            m: self.m,
            pd: self.pd.clone(),
            components: self.component_of.iter().map(|(l, c)| (l.to_string(), *c)).collect(),
            framings: self.framings.clone(),
            name: self.name.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pd(&self) -> &[[u32; 4]] {
        &self.pd
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn component_map(&self) -> &BTreeMap<u32, usize> {
        &self.component_of
    }

    /// Component (1-based) of an edge.
    pub fn component_of(&self, label: u32) -> Option<usize> {
        self.component_of.get(&label).copied()
    }

    /// Edges of component `c` (1-based) in traversal order; empty for a
    /// crossingless circle.
    pub fn edges(&self, c: usize) -> &[u32] {
        &self.edges[c - 1]
    }

    pub fn successor(&self, label: u32) -> u32 {
        let es = &self.edges[self.component_of[&label] - 1];
        let i = es.binary_search(&label).expect("edge listed");
        es[(i + 1) % es.len()]
    }

    pub fn with_framings(mut self, framings: Vec<i64>) -> Result<Self> {
        if framings.len() != self.m {
            return Err(diagram_error(format!("expected {} framings, got {}", self.m, framings.len())));
        }
        self.framings = framings;
        Ok(self)
    }

    /// Starts the traversal of component `c` (1-based) at `label`, which
    /// changes the arc whose meridian is the base generator.
    pub fn with_base_edge(mut self, c: usize, label: u32) -> Result<Self> {
        if c == 0 || c > self.m || self.component_of(label) != Some(c) || self.edges[c - 1].is_empty() {
            return Err(diagram_error(format!("edge {label} is not on component {c}")));
        }
        self.base_edges[c - 1] = Some(label);
        Ok(self)
    }

    /// Edges of component `c` starting at its base edge.
    pub fn traversal(&self, c: usize) -> Vec<u32> {
        let es = &self.edges[c - 1];
        if es.is_empty() {
            return Vec::new();
        }
        let start = self.base_edges[c - 1].unwrap_or(es[0]);
        let i = es.binary_search(&start).expect("edge listed");
        es[i..].iter().chain(&es[..i]).copied().collect()
    }

    /// Sum of the signs of the crossings of component `c` with itself.
    pub fn writhe(&self, c: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|x| self.component_of[&x.under_in_edge()] == c && self.component_of[&x.over_in_edge()] == c)
            .map(|x| x.sign as i64)
            .sum()
    }

    /// Linking number of components `a` and `b`.
    pub fn linking_number(&self, a: usize, b: usize) -> i64 {
        let total: i64 = self
            .crossings
            .iter()
            .filter(|x| {
                let (u, o) = (self.component_of[&x.under_in_edge()], self.component_of[&x.over_in_edge()]);
                (u, o) == (a, b) || (u, o) == (b, a)
            })
            .map(|x| x.sign as i64)
            .sum();
        total / 2
    }

    /// All edge labels that occur in the code.
    pub fn used_edges(&self) -> BTreeSet<u32> {
        self.pd.iter().flatten().copied().collect()
    }
}
