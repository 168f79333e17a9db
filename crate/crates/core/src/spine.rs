//! Spines: oriented, labeled dual trees of dissections, with blossoms on
//! boundary edges.
//!
//! Each node stores its ports (incident arcs and blossoms) in the
//! counter-clockwise order of the cell's edges, starting at the edge that
//! leaves the cell's leftmost vertex. Every port remembers the directed
//! polygon edge it crosses, so the embedding and the dual diagonals travel
//! together with the tree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{AssoError, Result};
use crate::labels::LabelSet;
use crate::polygon::{cells_within, Cell, Diagonal, Dissection, Label, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// What sits at the far end of a port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Link {
    Arc(usize),
    Blossom(usize),
}

/// A port of a node: the polygon edge `tail → head` (counter-clockwise
/// around the cell) together with its orientation and link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub tail: Label,
    pub head: Label,
    pub dir: Direction,
    pub link: Link,
}

impl Port {
    pub fn edge(&self) -> Diagonal {
        Diagonal::new(self.tail, self.head).expect("cell edge")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpineNode {
    pub labels: LabelSet,
    pub ports: Vec<Port>,
}

impl SpineNode {
    pub fn indegree(&self) -> usize {
        self.ports.iter().filter(|p| p.dir == Direction::In).count()
    }

    pub fn outdegree(&self) -> usize {
        self.ports.len() - self.indegree()
    }

    /// Vertices of the underlying cell, counter-clockwise from the leftmost.
    pub fn cell_vertices(&self) -> Vec<Label> {
        self.ports.iter().map(|p| p.tail).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpineArc {
    pub from: usize,
    pub to: usize,
    pub diagonal: Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blossom {
    pub node: usize,
    pub edge: Diagonal,
    pub dir: Direction,
}

/// Canonical spine: nodes sorted by smallest label, arcs by diagonal,
/// blossoms by edge. Structural equality is spine isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spine {
    nodes: Vec<SpineNode>,
    arcs: Vec<SpineArc>,
    blossoms: Vec<Blossom>,
}

type RawNode = (LabelSet, Vec<(Label, Label, Direction)>);

impl Spine {
    pub fn nodes(&self) -> &[SpineNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[SpineArc] {
        &self.arcs
    }

    pub fn blossoms(&self) -> &[Blossom] {
        &self.blossoms
    }

    /// Index of the node carrying `label`.
    pub fn node_of(&self, label: Label) -> Option<usize> {
        self.nodes.iter().position(|n| n.labels.contains(label))
    }

    /// Diagonals dual to the arcs, i.e. the underlying dissection.
    pub fn diagonals(&self) -> Vec<Diagonal> {
        self.arcs.iter().map(|a| a.diagonal).collect()
    }

    pub fn arc_of(&self, d: Diagonal) -> Option<usize> {
        self.arcs.binary_search_by(|a| a.diagonal.cmp(&d)).ok()
    }

    pub fn is_triangulation_spine(&self) -> bool {
        self.nodes.iter().all(|n| n.labels.len() == 1 && n.ports.len() == 3)
    }

    /// Builds the canonical spine from nodes given as label sets plus
    /// directed cell edges. Edges shared by two nodes become arcs, the
    /// others blossoms.
    fn assemble(mut raw: Vec<RawNode>) -> Result<Spine> {
        for (labels, ports) in &raw {
            if labels.is_empty() {
                return Err(AssoError::MalformedSpine("node without labels".into()));
            }
            if ports.len() < 3 {
                return Err(AssoError::MalformedSpine("node with fewer than 3 ports".into()));
            }
        }
        raw.sort_by_key(|(labels, _)| LabelSet::min(*labels));
        for w in raw.windows(2) {
            if !w[0].0.intersection(w[1].0).is_empty() {
                return Err(AssoError::MalformedSpine("label sets overlap".into()));
            }
        }
        let mut occurrences: BTreeMap<Diagonal, Vec<(usize, usize)>> = BTreeMap::new();
        for (v, (_, ports)) in raw.iter().enumerate() {
            for (i, &(tail, head, _)) in ports.iter().enumerate() {
                let edge = Diagonal::new(tail, head)?;
                occurrences.entry(edge).or_default().push((v, i));
            }
        }
        let mut links: Vec<Vec<Option<Link>>> = raw.iter().map(|(_, p)| vec![None; p.len()]).collect();
        let mut arcs = Vec::new();
        let mut blossoms = Vec::new();
        for (edge, occ) in occurrences {
            match occ.as_slice() {
                &[(v, i)] => {
                    links[v][i] = Some(Link::Blossom(blossoms.len()));
                    blossoms.push(Blossom {
                        node: v,
                        edge,
                        dir: raw[v].1[i].2,
                    });
                }
                &[(v, i), (w, j)] => {
                    let (dv, dw) = (raw[v].1[i].2, raw[w].1[j].2);
                    let (from, to) = match (dv, dw) {
                        (Direction::Out, Direction::In) => (v, w),
                        (Direction::In, Direction::Out) => (w, v),
                        _ => {
                            return Err(AssoError::MalformedSpine(format!(
                                "edge {edge:?} has inconsistent orientation"
                            )))
                        }
                    };
                    links[v][i] = Some(Link::Arc(arcs.len()));
                    links[w][j] = Some(Link::Arc(arcs.len()));
                    arcs.push(SpineArc {
                        from,
                        to,
                        diagonal: edge,
                    });
                }
                _ => {
                    return Err(AssoError::MalformedSpine(format!(
                        "edge {edge:?} used by more than two nodes"
                    )))
                }
            }
        }
        let nodes = raw
            .into_iter()
            .zip(links)
            .map(|((labels, ports), links)| {
                let mut ports: Vec<Port> = ports
                    .into_iter()
                    .zip(links)
                    .map(|((tail, head, dir), link)| Port {
                        tail,
                        head,
                        dir,
                        link: link.expect("every port linked"),
                    })
                    .collect();
                let start = ports
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, p)| p.tail)
                    .map(|(i, _)| i)
                    .expect("non-empty");
                ports.rotate_left(start);
                SpineNode { labels, ports }
            })
            .collect();
        Ok(Spine {
            nodes,
            arcs,
            blossoms,
        })
    }

    pub(crate) fn from_raw(raw: Vec<(LabelSet, Vec<(Label, Label, Direction)>)>) -> Result<Spine> {
        Spine::assemble(raw)
    }

    fn raw_nodes(&self) -> Vec<RawNode> {
        self.nodes
            .iter()
            .map(|n| (n.labels, n.ports.iter().map(|p| (p.tail, p.head, p.dir)).collect()))
            .collect()
    }

    /// Node on the other side of `arc` as seen from `node`.
    fn across(&self, arc: usize, node: usize) -> usize {
        let a = self.arcs[arc];
        if a.from == node {
            a.to
        } else {
            a.from
        }
    }

    /// Labels and blossom count of the component containing `node` once
    /// `arc` is removed.
    pub fn side_of_arc(&self, arc: usize, node: usize) -> (LabelSet, usize) {
        let mut labels = LabelSet::EMPTY;
        let mut blossoms = 0;
        let mut stack = vec![(node, arc)];
        while let Some((v, via)) = stack.pop() {
            labels = labels.union(self.nodes[v].labels);
            for p in &self.nodes[v].ports {
                match p.link {
                    Link::Blossom(_) => blossoms += 1,
                    Link::Arc(a) if a != via => stack.push((self.across(a, v), a)),
                    Link::Arc(_) => {}
                }
            }
        }
        (labels, blossoms)
    }

    /// Labels and blossom count beyond port `port` of node `node`.
    pub fn beyond_port(&self, node: usize, port: usize) -> (LabelSet, usize) {
        match self.nodes[node].ports[port].link {
            Link::Blossom(_) => (LabelSet::EMPTY, 1),
            Link::Arc(a) => self.side_of_arc(a, self.across(a, node)),
        }
    }

    /// For each node, the labels reachable along directed paths (itself included).
    pub fn reachable(&self) -> Vec<LabelSet> {
        let k = self.nodes.len();
        let mut reach: Vec<Option<LabelSet>> = vec![None; k];
        fn go(s: &Spine, v: usize, reach: &mut Vec<Option<LabelSet>>) -> LabelSet {
            if let Some(r) = reach[v] {
                return r;
            }
            let mut r = s.nodes[v].labels;
            for p in &s.nodes[v].ports {
                if let (Direction::Out, Link::Arc(a)) = (p.dir, p.link) {
                    r = r.union(go(s, s.arcs[a].to, reach));
                }
            }
            reach[v] = Some(r);
            r
        }
        (0..k).map(|v| go(self, v, &mut reach)).collect()
    }

    /// Unlabeled plane structure.
    pub fn shape(&self) -> SpineShape {
        SpineShape {
            nodes: self
                .nodes
                .iter()
                .map(|n| {
                    n.ports
                        .iter()
                        .map(|p| ShapePort {
                            dir: p.dir,
                            arc: match p.link {
                                Link::Arc(a) => Some(a),
                                Link::Blossom(_) => None,
                            },
                        })
                        .collect()
                })
                .collect(),
            arcs: self.arcs.iter().map(|a| (a.from, a.to)).collect(),
        }
    }

    pub fn to_doc(&self) -> SpineDoc {
        SpineDoc {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| NodeDoc {
                    id,
                    labels: n.labels.to_vec(),
                })
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcDoc {
                    from: a.from,
                    to: a.to,
                    diagonal: a.diagonal,
                })
                .collect(),
            blossoms: self
                .blossoms
                .iter()
                .map(|b| BlossomDoc {
                    node: b.node,
                    edge: b.edge,
                    dir: b.dir,
                })
                .collect(),
        }
    }

    /// Rebuilds a spine from its JSON document. The cyclic port order is
    /// recovered from the polygon.
    pub fn from_doc(sig: &Signature, doc: &SpineDoc) -> Result<Spine> {
        let mut raw: Vec<(LabelSet, Vec<(Diagonal, Direction)>)> = Vec::new();
        let mut index = BTreeMap::new();
        for node in &doc.nodes {
            for &l in &node.labels {
                if l == 0 || l > sig.n() + 1 {
                    return Err(AssoError::MalformedSpine(format!("label {l} out of range")));
                }
            }
            index.insert(node.id, raw.len());
            raw.push((node.labels.iter().copied().collect(), Vec::new()));
        }
        let lookup = |id: usize| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| AssoError::MalformedSpine(format!("unknown node id {id}")))
        };
        for a in &doc.arcs {
            raw[lookup(a.from)?].1.push((a.diagonal, Direction::Out));
            raw[lookup(a.to)?].1.push((a.diagonal, Direction::In));
        }
        for b in &doc.blossoms {
            raw[lookup(b.node)?].1.push((b.edge, b.dir));
        }
        let mut nodes = Vec::with_capacity(raw.len());
        for (labels, edges) in raw {
            let mut verts: Vec<Label> = edges.iter().flat_map(|(d, _)| [d.a, d.b]).collect();
            verts.sort_by_key(|&v| sig.position(v));
            verts.dedup();
            let cell = Cell::from_ccw(verts);
            let mut ports = Vec::new();
            for (tail, head) in cell.edges() {
                let edge = Diagonal::new(tail, head)?;
                let dir = edges
                    .iter()
                    .find(|(d, _)| *d == edge)
                    .map(|&(_, dir)| dir)
                    .ok_or_else(|| {
                        AssoError::MalformedSpine(format!("node edges do not close up at {edge:?}"))
                    })?;
                ports.push((tail, head, dir));
            }
            if ports.len() != edges.len() {
                return Err(AssoError::MalformedSpine("node edges do not bound a cell".into()));
            }
            nodes.push((labels, ports));
        }
        Spine::assemble(nodes)
    }
}

/// Plane structure of a spine with labels and diagonals erased.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineShape {
    /// Ports per node in counter-clockwise order; `arc` is `None` for blossoms.
    pub nodes: Vec<Vec<ShapePort>>,
    /// `(from, to)` node indices per arc.
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapePort {
    pub dir: Direction,
    pub arc: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineDoc {
    pub nodes: Vec<NodeDoc>,
    pub arcs: Vec<ArcDoc>,
    pub blossoms: Vec<BlossomDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: usize,
    pub labels: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDoc {
    pub from: usize,
    pub to: usize,
    pub diagonal: Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlossomDoc {
    pub node: usize,
    pub edge: Diagonal,
    pub dir: Direction,
}

fn raw_from_cells(cells: &[Cell]) -> Vec<RawNode> {
    cells
        .iter()
        .map(|c| {
            let lower = c.lower_len();
            let ports = c
                .edges()
                .enumerate()
                .map(|(i, (t, h))| (t, h, if i < lower { Direction::In } else { Direction::Out }))
                .collect();
            (c.intermediate(), ports)
        })
        .collect()
}

/// Spine of the dissection `diagonals` of the sub-polygon `outer` (counter-clockwise).
pub(crate) fn spine_within(sig: &Signature, outer: &[Label], diagonals: &[Diagonal]) -> Spine {
    let cells = cells_within(sig, outer, diagonals);
    Spine::assemble(raw_from_cells(&cells)).expect("cells of a dissection form a spine")
}

pub fn spine_of(sig: &Signature, w: &Dissection) -> Spine {
    spine_within(sig, sig.cyclic_order(), w.diagonals())
}

/// Spine of the dissection induced by `w` on `cell`.
pub fn spine_of_cell(sig: &Signature, cell: &Cell, w: &Dissection) -> Spine {
    let inside: Vec<Diagonal> = w
        .diagonals()
        .iter()
        .copied()
        .filter(|d| {
            cell.vertices().contains(&d.a)
                && cell.vertices().contains(&d.b)
                && !cell.edges().any(|(t, h)| Diagonal::new(t, h).ok() == Some(*d))
        })
        .collect();
    spine_within(sig, cell.vertices(), &inside)
}

/// Checks the label characterization of dissection spines on `s` and that
/// its stored embedding is exactly the spine of its arc diagonals.
pub fn validate_spine(sig: &Signature, s: &Spine) -> bool {
    satisfies_characterization(sig, s) && matches_dissection(sig, s)
}

fn matches_dissection(sig: &Signature, s: &Spine) -> bool {
    Dissection::new(sig, s.diagonals()).is_ok_and(|w| spine_of(sig, &w) == *s)
}

/// Purely structural test: tree with `n+3` blossoms, labels partitioning
/// `[n+1]`, degree counts per node, and separated subtree labels.
pub fn satisfies_characterization(sig: &Signature, s: &Spine) -> bool {
    let k = s.nodes.len();
    if s.arcs.len() + 1 != k || s.blossoms.len() != sig.vertex_count() {
        return false;
    }
    let mut seen = LabelSet::EMPTY;
    for node in &s.nodes {
        if node.labels.is_empty() || !node.labels.intersection(seen).is_empty() {
            return false;
        }
        seen = seen.union(node.labels);
    }
    if seen != sig.labels() {
        return false;
    }
    if s.side_of_arc_free_labels() != sig.labels() {
        // disconnected
        return false;
    }
    for (v, node) in s.nodes.iter().enumerate() {
        let x = node.labels;
        let ins = x.intersection(sig.down()).len() + 1;
        let outs = x.intersection(sig.up()).len() + 1;
        if node.indegree() != ins || node.outdegree() != outs {
            return false;
        }
        let deg = node.ports.len();
        // start right after the last outgoing port so ports read: incoming
        // left to right, then outgoing right to left
        let Some(start) = (0..deg).find(|&i| {
            node.ports[i].dir == Direction::In && node.ports[(i + deg - 1) % deg].dir == Direction::Out
        }) else {
            return false;
        };
        let ordered: Vec<usize> = (0..deg).map(|i| (start + i) % deg).collect();
        if ordered[..ins].iter().any(|&i| node.ports[i].dir != Direction::In) {
            return false;
        }
        let far: Vec<LabelSet> = ordered.iter().map(|&i| s.beyond_port(v, i).0).collect();
        if !separated(&far[..ins], sig.labels().difference(x.intersection(sig.down())), false)
            || !separated(&far[ins..], sig.labels().difference(x.intersection(sig.up())), true)
        {
            return false;
        }
    }
    true
}

/// Non-empty sets must lie in distinct maximal intervals of `universe`, in
/// increasing (or decreasing when `reversed`) order.
fn separated(sets: &[LabelSet], universe: LabelSet, reversed: bool) -> bool {
    let interval_of = |l: Label| -> Option<usize> {
        if !universe.contains(l) {
            return None;
        }
        // count gaps before l
        Some((1..l).filter(|&m| !universe.contains(m)).count())
    };
    let mut last: Option<usize> = None;
    let iter: Box<dyn Iterator<Item = &LabelSet>> = if reversed {
        Box::new(sets.iter().rev())
    } else {
        Box::new(sets.iter())
    };
    for set in iter {
        if set.is_empty() {
            continue;
        }
        let ids: Vec<Option<usize>> = set.iter().map(interval_of).collect();
        let Some(first) = ids[0] else { return false };
        if ids.iter().any(|&i| i != Some(first)) {
            return false;
        }
        if last.is_some_and(|l| l >= first) {
            return false;
        }
        last = Some(first);
    }
    true
}

impl Spine {
    /// Labels of the component containing node 0 (all labels iff connected).
    fn side_of_arc_free_labels(&self) -> LabelSet {
        if self.nodes.is_empty() {
            return LabelSet::EMPTY;
        }
        self.side_of_arc(usize::MAX, 0).0
    }
}

/// Reconstructs labels (and dual diagonals) of an unlabeled spine by
/// walking its contour counter-clockwise.
pub fn relabel_by_traversal(sig: &Signature, shape: &SpineShape) -> Result<Spine> {
    let bad = |msg: &str| AssoError::MalformedSpine(msg.to_string());
    let k = shape.nodes.len();
    if k == 0 || shape.arcs.len() + 1 != k {
        return Err(bad("not a tree"));
    }
    // each arc must appear once as outgoing at its source, once as incoming at its target
    let mut arc_port = vec![[None, None]; shape.arcs.len()];
    for (v, ports) in shape.nodes.iter().enumerate() {
        if ports.len() < 3 {
            return Err(bad("node with fewer than 3 ports"));
        }
        for (i, p) in ports.iter().enumerate() {
            if let Some(a) = p.arc {
                let &(from, to) = shape.arcs.get(a).ok_or_else(|| bad("unknown arc"))?;
                let slot = match p.dir {
                    Direction::Out if from == v => 0,
                    Direction::In if to == v => 1,
                    _ => return Err(bad("arc endpoints disagree with port orientation")),
                };
                if arc_port[a][slot].replace((v, i)).is_some() {
                    return Err(bad("arc used twice"));
                }
            }
        }
    }
    if arc_port.iter().any(|s| s[0].is_none() || s[1].is_none()) {
        return Err(bad("dangling arc"));
    }
    let blossom_total: usize = shape
        .nodes
        .iter()
        .map(|ps| ps.iter().filter(|p| p.arc.is_none()).count())
        .sum();
    if blossom_total != sig.vertex_count() {
        return Err(bad("wrong number of blossoms"));
    }
    let next = |(v, p): (usize, usize)| -> (usize, usize) {
        let q = (p + 1) % shape.nodes[v].len();
        match shape.nodes[v][q].arc {
            None => (v, q),
            Some(a) => {
                let slot = if shape.nodes[v][q].dir == Direction::Out { 1 } else { 0 };
                arc_port[a][slot].expect("checked")
            }
        }
    };
    let total_ports: usize = shape.nodes.iter().map(Vec::len).sum();
    let first = shape
        .nodes
        .iter()
        .enumerate()
        .find_map(|(v, ps)| ps.iter().position(|p| p.arc.is_none()).map(|i| (v, i)))
        .expect("blossoms exist");
    // contour order of blossoms
    let mut contour = vec![first];
    let mut cur = first;
    for _ in 0..=2 * total_ports {
        cur = next(cur);
        if cur == first {
            break;
        }
        if shape.nodes[cur.0][cur.1].arc.is_none() {
            contour.push(cur);
        }
    }
    if cur != first || contour.len() != blossom_total {
        return Err(bad("contour does not visit every blossom"));
    }
    let dir_at = |(v, p): (usize, usize)| shape.nodes[v][p].dir;
    let starts: Vec<usize> = (0..contour.len())
        .filter(|&i| {
            dir_at(contour[i]) == Direction::Out
                && dir_at(contour[(i + 1) % contour.len()]) == Direction::In
        })
        .collect();
    let &[s0] = starts.as_slice() else {
        return Err(bad("no unique outgoing blossom followed by an incoming one"));
    };
    let start = contour[s0];

    let sigma: Vec<Label> = sig
        .down()
        .iter()
        .chain(sig.up().iter().collect::<Vec<_>>().into_iter().rev())
        .collect();
    let order = sig.cyclic_order();
    let mut next_label = sigma.iter();
    let mut labels = vec![LabelSet::EMPTY; k];
    let mut tails: Vec<Vec<Option<Label>>> = shape.nodes.iter().map(|ps| vec![None; ps.len()]).collect();
    let mut heads = tails.clone();
    let mut vertex = 0usize;
    let mut at = start;
    loop {
        let (v, p) = at;
        let q = (p + 1) % shape.nodes[v].len();
        let corner = order[vertex];
        heads[v][p] = Some(corner);
        tails[v][q] = Some(corner);
        if shape.nodes[v][p].dir == shape.nodes[v][q].dir {
            let l = next_label.next().ok_or_else(|| bad("more direction changes than labels"))?;
            labels[v].insert(*l);
        }
        if (v, q) == start {
            break;
        }
        if shape.nodes[v][q].arc.is_none() {
            vertex += 1;
            if vertex >= order.len() {
                return Err(bad("contour longer than the polygon"));
            }
        }
        at = next(at);
    }
    if next_label.next().is_some() {
        return Err(bad("fewer direction changes than labels"));
    }
    let raw: Vec<RawNode> = (0..k)
        .map(|v| {
            let ports = (0..shape.nodes[v].len())
                .map(|i| {
                    Ok((
                        tails[v][i].ok_or_else(|| bad("port not visited"))?,
                        heads[v][i].ok_or_else(|| bad("port not visited"))?,
                        shape.nodes[v][i].dir,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((labels[v], ports))
        })
        .collect::<Result<_>>()?;
    for (_, ports) in &raw {
        if ports.iter().any(|&(t, h, _)| t == h) {
            return Err(bad("degenerate edge"));
        }
    }
    let spine = Spine::assemble(raw)?;
    if !validate_spine(sig, &spine) {
        return Err(bad("plane structure is not the spine of a dissection"));
    }
    Ok(spine)
}

/// Contracts the arcs dual to `diagonals`, merging their endpoints.
pub fn contract(s: &Spine, diagonals: &[Diagonal]) -> Result<Spine> {
    let mut nodes: Vec<Option<RawNode>> = s.raw_nodes().into_iter().map(Some).collect();
    // which merged node currently owns each original node
    let mut owner: Vec<usize> = (0..nodes.len()).collect();
    fn find(owner: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while owner[r] != r {
            r = owner[r];
        }
        owner[v] = r;
        r
    }
    for &d in diagonals {
        let a = s
            .arc_of(d)
            .ok_or_else(|| AssoError::MalformedSpine(format!("no arc dual to {d:?}")))?;
        let arc = s.arcs[a];
        let x = find(&mut owner, arc.from);
        let y = find(&mut owner, arc.to);
        if x == y {
            return Err(AssoError::MalformedSpine(format!("arc {d:?} contracted twice")));
        }
        let (lx, px) = nodes[x].take().expect("live");
        let (ly, py) = nodes[y].take().expect("live");
        let locate = |ports: &[(Label, Label, Direction)]| {
            ports
                .iter()
                .position(|&(t, h, _)| Diagonal::new(t, h).ok() == Some(d))
                .expect("arc port present")
        };
        let (i, j) = (locate(&px), locate(&py));
        let mut merged = Vec::with_capacity(px.len() + py.len() - 2);
        merged.extend_from_slice(&px[..i]);
        merged.extend_from_slice(&py[j + 1..]);
        merged.extend_from_slice(&py[..j]);
        merged.extend_from_slice(&px[i + 1..]);
        nodes[x] = Some((lx.union(ly), merged));
        owner[y] = x;
    }
    Spine::assemble(nodes.into_iter().flatten().collect())
}

/// Replaces node `node` of `s` by the spine `sub`, whose blossoms must match
/// the node's ports and whose labels must match the node's labels.
pub fn substitute(s: &Spine, node: usize, sub: &Spine) -> Result<Spine> {
    let target = s
        .nodes
        .get(node)
        .ok_or_else(|| AssoError::InterfaceMismatch(format!("no node {node}")))?;
    let mut slots: Vec<(Diagonal, Direction)> = target.ports.iter().map(|p| (p.edge(), p.dir)).collect();
    let mut offered: Vec<(Diagonal, Direction)> = sub.blossoms.iter().map(|b| (b.edge, b.dir)).collect();
    slots.sort();
    offered.sort();
    if slots != offered {
        return Err(AssoError::InterfaceMismatch(
            "blossoms of the replacement do not match the node's ports".into(),
        ));
    }
    let sub_labels = sub.nodes.iter().fold(LabelSet::EMPTY, |acc, n| acc.union(n.labels));
    if sub_labels != target.labels {
        return Err(AssoError::InterfaceMismatch(format!(
            "replacement carries labels {sub_labels}, node has {}",
            target.labels
        )));
    }
    let mut raw = s.raw_nodes();
    raw.remove(node);
    raw.extend(sub.raw_nodes());
    Spine::assemble(raw)
}

/// Arcs `δ → δ'` of the directed line graph: `δ` enters a node that `δ'` leaves.
pub fn directed_line_graph(s: &Spine) -> Vec<(Diagonal, Diagonal)> {
    let mut out = Vec::new();
    for node in &s.nodes {
        for p in node.ports.iter().filter(|p| p.dir == Direction::In) {
            for q in node.ports.iter().filter(|q| q.dir == Direction::Out) {
                out.push((p.edge(), q.edge()));
            }
        }
    }
    out.sort();
    out
}

/// Blossom-count products at each node of a triangulation spine.
pub fn chor_counts(s: &Spine) -> Result<BTreeMap<Label, i64>> {
    if !s.is_triangulation_spine() {
        return Err(AssoError::NotTriangulationSpine);
    }
    let mut out = BTreeMap::new();
    for (v, node) in s.nodes.iter().enumerate() {
        let label = node.labels.min().expect("singleton");
        let majority = if node.indegree() == 2 {
            Direction::In
        } else {
            Direction::Out
        };
        let product: usize = (0..3)
            .filter(|&i| node.ports[i].dir == majority)
            .map(|i| s.beyond_port(v, i).1)
            .product();
        out.insert(label, product as i64);
    }
    Ok(out)
}
