//! Rooted, unrooted and twisted decorated trees.
//!
//! Every trivalent vertex carries a cyclic ordering of its three edges. For
//! a rooted tree `Node(l, r)` the order is (root side, `l`, `r`). Swapping
//! the two children of a vertex reverses its orientation and multiplies the
//! represented element by -1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootedTree {
    Leaf(u8),
    Node(Box<RootedTree>, Box<RootedTree>),
}

/// A canonical representative together with the sign relating it to the
/// original tree, `original = sign * tree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical<T> {
    pub tree: T,
    pub sign: i32,
    /// Set when the tree equals its own negative under antisymmetry, so it
    /// is 2-torsion in any quotient by AS.
    pub self_negative: bool,
}

impl RootedTree {
    pub fn leaf(label: u8) -> Self {
        RootedTree::Leaf(label)
    }

    pub fn node(left: RootedTree, right: RootedTree) -> Self {
        RootedTree::Node(Box::new(left), Box::new(right))
    }

    /// Number of trivalent vertices.
    pub fn order(&self) -> usize {
        match self {
            RootedTree::Leaf(_) => 0,
            RootedTree::Node(a, b) => 1 + a.order() + b.order(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.order() + 1
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, RootedTree::Leaf(_))
    }

    pub fn labels(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<u8>) {
        match self {
            RootedTree::Leaf(l) => out.push(*l),
            RootedTree::Node(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
        }
    }

    pub fn check_labels(&self, m: usize) -> Result<()> {
        match self.labels().into_iter().find(|&l| l == 0 || l as usize > m) {
            Some(l) => Err(Error::LabelOutOfRange { label: l as usize, m }),
            None => Ok(()),
        }
    }

    /// Canonical form under antisymmetry: at every vertex the smaller child
    /// (in the derived order) comes first.
    pub fn canonical(&self) -> Canonical<RootedTree> {
        match self {
            RootedTree::Leaf(_) => Canonical {
                tree: self.clone(),
                sign: 1,
                self_negative: false,
            },
            RootedTree::Node(a, b) => {
                let ca = a.canonical();
                let cb = b.canonical();
                let sign = ca.sign * cb.sign;
                let self_negative = ca.self_negative || cb.self_negative || ca.tree == cb.tree;
                if ca.tree <= cb.tree {
                    Canonical {
                        tree: RootedTree::node(ca.tree, cb.tree),
                        sign,
                        self_negative,
                    }
                } else {
                    Canonical {
                        tree: RootedTree::node(cb.tree, ca.tree),
                        sign: -sign,
                        self_negative,
                    }
                }
            }
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            RootedTree::Leaf(l) => out.push_str(&l.to_string()),
            RootedTree::Node(a, b) => {
                out.push('(');
                a.write(out);
                out.push(',');
                b.write(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

/// An unrooted tree, stored canonically as the join `<a, b>` of two rooted
/// trees across one edge. The representative is the least pair over all
/// edges of the tree, each side canonical, with `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnrootedTree {
    a: RootedTree,
    b: RootedTree,
    self_negative: bool,
}

impl UnrootedTree {
    /// The inner product `<a, b>`: join the roots of `a` and `b`.
    pub fn join(a: &RootedTree, b: &RootedTree) -> Canonical<UnrootedTree> {
        let graph = TreeGraph::join(a, b);
        let mut best: Option<((RootedTree, RootedTree), i32)> = None;
        let mut self_negative = false;
        for (u, w) in graph.edges() {
            let x = graph.hang(u, w).canonical();
            let y = graph.hang(w, u).canonical();
            let sign = x.sign * y.sign;
            let pair = if x.tree <= y.tree {
                (x.tree, y.tree)
            } else {
                (y.tree, x.tree)
            };
            let flags = x.self_negative || y.self_negative;
            match &best {
                Some((p, s)) if *p == pair => {
                    if *s != sign {
                        self_negative = true;
                    }
                    self_negative |= flags;
                }
                Some((p, _)) if *p < pair => {}
                _ => {
                    best = Some((pair, sign));
                    self_negative = flags;
                }
            }
        }
        let ((a, b), sign) = best.expect("a tree has at least one edge");
        Canonical {
            tree: UnrootedTree { a, b, self_negative },
            sign,
            self_negative,
        }
    }

    pub fn sides(&self) -> (&RootedTree, &RootedTree) {
        (&self.a, &self.b)
    }

    pub fn order(&self) -> usize {
        self.a.order() + self.b.order()
    }

    pub fn is_self_negative(&self) -> bool {
        self.self_negative
    }

    pub fn labels(&self) -> Vec<u8> {
        let mut l = self.a.labels();
        l.extend(self.b.labels());
        l
    }

    pub fn check_labels(&self, m: usize) -> Result<()> {
        self.a.check_labels(m)?;
        self.b.check_labels(m)
    }

    pub fn graph(&self) -> TreeGraph {
        TreeGraph::join(&self.a, &self.b)
    }
}

impl fmt::Display for UnrootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.a, self.b)
    }
}

/// A twisted tree: a rooted tree whose root carries the twist decoration.
/// Twisted trees are insensitive to sign, `(-J)^twist = J^twist`, so the
/// body is kept in canonical form with the sign discarded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedTree {
    body: RootedTree,
}

impl TwistedTree {
    pub fn new(body: &RootedTree) -> Self {
        TwistedTree {
            body: body.canonical().tree,
        }
    }

    pub fn body(&self) -> &RootedTree {
        &self.body
    }

    pub fn order(&self) -> usize {
        self.body.order()
    }

    /// The doubled tree `<J, J>`, as a graph whose first copy of `J` holds
    /// the lower vertex indices.
    pub fn doubled_graph(&self) -> TreeGraph {
        TreeGraph::join(&self.body, &self.body)
    }
}

impl fmt::Display for TwistedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "twist:{}", self.body)
    }
}

#[derive(Clone, Debug)]
enum Vertex {
    Leaf { label: u8, neighbor: usize },
    Trivalent([usize; 3]),
}

/// Adjacency form of an unrooted tree with cyclic orders at trivalent
/// vertices. Built from a join `<a, b>`: the vertices of `a` come first, in
/// depth-first order.
#[derive(Clone, Debug)]
pub struct TreeGraph {
    vertices: Vec<Vertex>,
    first_side: usize,
}

const UNSET: usize = usize::MAX;

impl TreeGraph {
    pub fn join(a: &RootedTree, b: &RootedTree) -> Self {
        let mut g = TreeGraph {
            vertices: Vec::with_capacity(2 * (a.leaf_count() + b.leaf_count())),
            first_side: 0,
        };
        let ra = g.add(a, UNSET);
        g.first_side = g.vertices.len();
        let rb = g.add(b, ra);
        match &mut g.vertices[ra] {
            Vertex::Leaf { neighbor, .. } => *neighbor = rb,
            Vertex::Trivalent(n) => n[0] = rb,
        }
        g
    }

    fn add(&mut self, t: &RootedTree, parent: usize) -> usize {
        let idx = self.vertices.len();
        match t {
            RootedTree::Leaf(l) => self.vertices.push(Vertex::Leaf {
                label: *l,
                neighbor: parent,
            }),
            RootedTree::Node(l, r) => {
                self.vertices.push(Vertex::Trivalent([parent, UNSET, UNSET]));
                let il = self.add(l, idx);
                let ir = self.add(r, idx);
                self.vertices[idx] = Vertex::Trivalent([parent, il, ir]);
            }
        }
        idx
    }

    /// Univalent vertices as `(vertex, label)`, in construction order.
    pub fn leaves(&self) -> Vec<(usize, u8)> {
        self.vertices
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match v {
                Vertex::Leaf { label, .. } => Some((i, *label)),
                _ => None,
            })
            .collect()
    }

    /// Whether a vertex belongs to the first side of the join it was built from.
    pub fn in_first_side(&self, v: usize) -> bool {
        v < self.first_side
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            match v {
                Vertex::Leaf { neighbor, .. } => {
                    if i < *neighbor {
                        out.push((i, *neighbor));
                    }
                }
                Vertex::Trivalent(n) => out.extend(n.iter().filter(|&&j| i < j).map(|&j| (i, j))),
            }
        }
        out
    }

    /// The rooted tree on the far side of the directed edge `from -> to`,
    /// rooted at that edge.
    pub fn hang(&self, from: usize, to: usize) -> RootedTree {
        match &self.vertices[to] {
            Vertex::Leaf { label, .. } => RootedTree::Leaf(*label),
            Vertex::Trivalent(n) => {
                let k = n.iter().position(|&x| x == from).expect("adjacent vertices");
                let p = n[(k + 1) % 3];
                let q = n[(k + 2) % 3];
                RootedTree::node(self.hang(to, p), self.hang(to, q))
            }
        }
    }

    /// The rooted tree `t_v`: the tree re-rooted at the univalent vertex `v`
    /// with the label of `v` removed.
    pub fn rooted_at_leaf(&self, v: usize) -> RootedTree {
        match &self.vertices[v] {
            Vertex::Leaf { neighbor, .. } => self.hang(v, *neighbor),
            Vertex::Trivalent(_) => panic!("vertex {v} is not univalent"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn rooted(&mut self) -> Result<RootedTree> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let a = self.rooted()?;
                self.expect(b',')?;
                let b = self.rooted()?;
                self.expect(b')')?;
                Ok(RootedTree::node(a, b))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                match text.parse::<u8>() {
                    Ok(l) if l >= 1 => Ok(RootedTree::Leaf(l)),
                    _ => Err(self.error("labels must be integers in 1..=255")),
                }
            }
            _ => Err(self.error("expected a label or '('")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let t = p.rooted()?;
        p.finish()?;
        Ok(t)
    }
}

/// Parses `<a,b>` into the two rooted sides, before canonicalization.
pub fn parse_join(s: &str) -> Result<(RootedTree, RootedTree)> {
    let mut p = Parser::new(s);
    p.expect(b'<')?;
    let a = p.rooted()?;
    p.expect(b',')?;
    let b = p.rooted()?;
    p.expect(b'>')?;
    p.finish()?;
    Ok((a, b))
}

/// Parses a twisted tree body, with or without the `twist:` prefix.
pub fn parse_twisted(s: &str) -> Result<RootedTree> {
    let body = s.trim();
    let body = body.strip_prefix("twist:").unwrap_or(body);
    body.parse()
}
