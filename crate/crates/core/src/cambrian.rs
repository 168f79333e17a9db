//! Surjections from permutations and ordered partitions onto triangulations
//! and dissections, the slope-increasing flip lattice, canopy words, and
//! the preposets describing normal cones.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{AssoError, Result};
use crate::exec;
use crate::geometry::{vertex_point, Rational};
use crate::labels::LabelSet;
use crate::polygon::{
    cells, enumerate_triangulations, flip, greedy_extremes, lift_diagonals, Diagonal, Dissection,
    Label, Signature, Triangulation,
};
use crate::spine::{spine_of, Direction, Spine};

/// A permutation in one-line notation: `values[j-1]` is the level of label `j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Permutation> {
        let m = values.len();
        let mut seen = vec![false; m + 1];
        for &v in &values {
            if v == 0 || v > m || seen[v] {
                return Err(AssoError::MalformedPermutation(format!(
                    "{values:?} is not a permutation of 1..={m}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(m: usize) -> Permutation {
        Permutation((1..=m).collect())
    }

    pub fn longest(m: usize) -> Permutation {
        Permutation((1..=m).rev().collect())
    }

    /// All permutations of `[m]` in lexicographic order.
    pub fn all(m: usize) -> Vec<Permutation> {
        (1..=m).permutations(m).map(Permutation).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Level of label `j` (1-based).
    pub fn at(&self, j: Label) -> usize {
        self.0[j - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Pairs `(i, j)`, `i < j`, with `σ(i) > σ(j)`, as a bit matrix.
    pub fn inversions(&self) -> PairSet {
        let m = self.len();
        let mut set = PairSet::new(m);
        for i in 1..=m {
            for j in i + 1..=m {
                if self.at(i) > self.at(j) {
                    set.insert(i, j);
                }
            }
        }
        set
    }

    /// Rebuilds the permutation with the given inversion set.
    pub fn from_inversions(inv: &PairSet) -> Permutation {
        let m = inv.m;
        let values = (1..=m)
            .map(|a| {
                let before = (1..a).filter(|&b| !inv.contains(b, a)).count()
                    + (a + 1..=m).filter(|&b| inv.contains(a, b)).count();
                before + 1
            })
            .collect();
        Permutation(values)
    }

    pub fn weak_le(&self, other: &Permutation) -> bool {
        self.inversions().is_subset(&other.inversions())
    }

    pub fn join(&self, other: &Permutation) -> Permutation {
        let mut inv = self.inversions().union(&other.inversions());
        inv.close();
        Permutation::from_inversions(&inv)
    }

    pub fn meet(&self, other: &Permutation) -> Permutation {
        let mut keep = self.inversions().complement().union(&other.inversions().complement());
        keep.close();
        Permutation::from_inversions(&keep.complement())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = AssoError;

    fn from_str(s: &str) -> Result<Permutation> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let values = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| AssoError::MalformedPermutation(format!("bad entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Set of pairs `(i, j)` with `1 <= i < j <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    m: usize,
    rows: Vec<LabelSet>,
}

impl PairSet {
    pub fn new(m: usize) -> PairSet {
        PairSet {
            m,
            rows: vec![LabelSet::EMPTY; m + 1],
        }
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        PairSet {
            m: self.m,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.union(*b)).collect(),
        }
    }

    pub fn complement(&self) -> PairSet {
        PairSet {
            m: self.m,
            rows: (0..=self.m)
                .map(|i| {
                    if i == 0 {
                        LabelSet::EMPTY
                    } else {
                        LabelSet::range(i + 1, self.m).difference(self.rows[i])
                    }
                })
                .collect(),
        }
    }

    /// Closes under `(i, j), (j, k) ⇒ (i, k)`.
    pub fn close(&mut self) {
        for i in (1..=self.m).rev() {
            let mut row = self.rows[i];
            for j in self.rows[i].iter() {
                row = row.union(self.rows[j]);
            }
            self.rows[i] = row;
        }
    }
}

/// Blocks `B_1 | B_2 | ...` of `[m]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<LabelSet>,
}

impl OrderedPartition {
    pub fn new(m: usize, blocks: Vec<LabelSet>) -> Result<OrderedPartition> {
        let mut seen = LabelSet::EMPTY;
        for b in &blocks {
            if b.is_empty() || !b.intersection(seen).is_empty() {
                return Err(AssoError::MalformedPartition(
                    "blocks must be non-empty and disjoint".into(),
                ));
            }
            seen = seen.union(*b);
        }
        if seen != LabelSet::range(1, m) {
            return Err(AssoError::MalformedPartition(format!(
                "blocks cover {seen}, expected 1..={m}"
            )));
        }
        Ok(OrderedPartition { blocks })
    }

    /// Parses `{3,4,6,8}|{1,2,5,7}` over `[m]`.
    pub fn parse(m: usize, s: &str) -> Result<OrderedPartition> {
        let blocks = s
            .split('|')
            .map(|b| {
                let inner = b.trim().trim_start_matches('{').trim_end_matches('}');
                inner
                    .split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| {
                        x.trim()
                            .parse::<Label>()
                            .ok()
                            .filter(|&l| l >= 1 && l <= m)
                            .ok_or_else(|| AssoError::MalformedPartition(format!("bad label {x:?}")))
                    })
                    .collect::<Result<LabelSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        OrderedPartition::new(m, blocks)
    }

    /// From a surjection: `levels[j-1]` is the block index (1-based) of label `j`.
    pub fn from_surjection(levels: &[usize]) -> Result<OrderedPartition> {
        let k = levels.iter().copied().max().unwrap_or(0);
        let mut blocks = vec![LabelSet::EMPTY; k];
        for (j, &l) in levels.iter().enumerate() {
            if l == 0 {
                return Err(AssoError::MalformedPartition("levels start at 1".into()));
            }
            blocks[l - 1].insert(j + 1);
        }
        OrderedPartition::new(levels.len(), blocks)
    }

    /// Singletons in the order of increasing level.
    pub fn from_permutation(sigma: &Permutation) -> OrderedPartition {
        OrderedPartition {
            blocks: sigma.inverse().values().iter().map(|&j| LabelSet::singleton(j)).collect(),
        }
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    /// Block index (1-based) of each label.
    pub fn surjection(&self) -> Vec<usize> {
        let m = self.blocks.iter().map(|b| b.len()).sum();
        let mut out = vec![0; m];
        for (k, b) in self.blocks.iter().enumerate() {
            for j in b.iter() {
                out[j - 1] = k + 1;
            }
        }
        out
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.blocks.iter().map(|b| b.to_string()).join("|"))
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

/// The x-monotone path `0, D △ set, n+2`.
pub fn sweep_path(sig: &Signature, set: LabelSet) -> Vec<Label> {
    let mut path = vec![0];
    path.extend(sig.down().symmetric_difference(set).iter());
    path.push(sig.last());
    path
}

fn path_edges(path: &[Label]) -> impl Iterator<Item = Diagonal> + '_ {
    path.windows(2).map(|w| Diagonal::new(w[0], w[1]).expect("increasing path"))
}

/// Internal diagonals on the sweep paths of the prefix unions of `rho`.
pub fn kappa_bar(sig: &Signature, rho: &OrderedPartition) -> Dissection {
    let mut edges = BTreeSet::new();
    let mut prefix = LabelSet::EMPTY;
    for k in 0..=rho.blocks.len() {
        if k > 0 {
            prefix = prefix.union(rho.blocks[k - 1]);
        }
        edges.extend(path_edges(&sweep_path(sig, prefix)).filter(|&d| sig.is_internal(d)));
    }
    Dissection::new(sig, edges.into_iter().collect()).expect("sweep paths never cross")
}

pub fn kappa(sig: &Signature, sigma: &Permutation) -> Triangulation {
    let w = kappa_bar(sig, &OrderedPartition::from_permutation(sigma));
    Triangulation::new(sig, w.diagonals().to_vec()).expect("singleton blocks give a triangulation")
}

/// A spine whose nodes carry the level (block rank, 1-based) they were created at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledSpine {
    pub spine: Spine,
    pub level: Vec<usize>,
}

impl LeveledSpine {
    /// Every arc climbs strictly.
    pub fn is_increasing(&self) -> bool {
        self.spine
            .arcs()
            .iter()
            .all(|a| self.level[a.from] < self.level[a.to])
    }
}

/// Builds the spine level by level with strands sweeping upward through
/// the gaps between consecutive labels.
pub fn leveled_spine(sig: &Signature, rho: &OrderedPartition) -> LeveledSpine {
    let n = sig.n();
    // strands: occupied gaps, gap g lies between vertex g and vertex g+1
    let mut strands: BTreeSet<usize> = sig.down().iter().map(|d| d - 1).collect();
    strands.insert(n + 1);
    let mut prefix = LabelSet::EMPTY;
    let mut raw = Vec::new();
    let mut levels = Vec::new();
    for (k, &block) in rho.blocks.iter().enumerate() {
        let old_path = sweep_path(sig, prefix);
        prefix = prefix.union(block);
        let new_path = sweep_path(sig, prefix);
        // strands each label touches
        let labels: Vec<Label> = block.iter().collect();
        let touched: Vec<Vec<usize>> = labels
            .iter()
            .map(|&p| {
                let right = *strands.range(p..).next().expect("rightmost strand at n+1");
                if sig.is_up(p) {
                    vec![right]
                } else {
                    let left = *strands.range(..p).next_back().expect("strand left of a down label");
                    vec![left, right]
                }
            })
            .collect();
        // group labels sharing a strand
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn root(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        for a in 0..labels.len() {
            for b in a + 1..labels.len() {
                if touched[a].iter().any(|g| touched[b].contains(g)) {
                    let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let groups = (0..labels.len()).into_group_map_by(|&i| root(&mut parent.clone(), i));
        let mut next = strands.clone();
        for members in groups.values() {
            let mut inputs: BTreeSet<usize> = BTreeSet::new();
            let mut node_labels = LabelSet::EMPTY;
            for &i in members {
                inputs.extend(&touched[i]);
                node_labels.insert(labels[i]);
            }
            let rightmost = *inputs.iter().next_back().expect("at least one strand");
            let mut outputs: BTreeSet<usize> = node_labels
                .iter()
                .filter(|&p| sig.is_up(p))
                .map(|p| p - 1)
                .collect();
            outputs.insert(rightmost);
            for g in &inputs {
                next.remove(g);
            }
            next.extend(&outputs);
            let mut ports = Vec::new();
            for &g in &inputs {
                let e = edge_across(&old_path, g);
                ports.push((e.a, e.b, Direction::In));
            }
            for &g in outputs.iter().rev() {
                let e = edge_across(&new_path, g);
                ports.push((e.b, e.a, Direction::Out));
            }
            raw.push((node_labels, ports));
            levels.push((node_labels, k + 1));
        }
        strands = next;
    }
    let spine = Spine::from_raw(raw).expect("strand sweep yields a spine");
    let level = spine
        .nodes()
        .iter()
        .map(|node| {
            levels
                .iter()
                .find(|(l, _)| *l == node.labels)
                .map(|&(_, k)| k)
                .expect("node created by the sweep")
        })
        .collect();
    LeveledSpine { spine, level }
}

/// The edge of an x-monotone path spanning gap `g`.
fn edge_across(path: &[Label], g: usize) -> Diagonal {
    path_edges(path)
        .find(|d| d.a <= g && g < d.b)
        .expect("path spans every gap")
}

/// All permutations mapped to `t`: linear extensions of the spine order, sorted.
pub fn fiber(sig: &Signature, t: &Triangulation) -> Vec<Permutation> {
    let spine = spine_of(sig, t.as_dissection());
    let p = spine_preposet(&spine);
    let mut out: Vec<Permutation> = p
        .linear_extensions_with(true)
        .into_iter()
        .map(|rho| Permutation::new(rho.surjection()).expect("singleton blocks"))
        .collect();
    out.sort();
    out
}

/// Weak-order minimum and maximum of a fiber.
pub fn fiber_bounds(sig: &Signature, t: &Triangulation) -> (Permutation, Permutation) {
    let f = fiber(sig, t);
    let count = |p: &Permutation| p.inversions().rows.iter().map(|r| r.len()).sum::<usize>();
    let lo = f.iter().min_by_key(|p| count(p)).expect("fibers are non-empty").clone();
    let hi = f.iter().max_by_key(|p| count(p)).expect("fibers are non-empty").clone();
    (lo, hi)
}

/// The unique permutation of a singleton fiber: the spine is a directed path.
pub fn is_singleton_fiber(sig: &Signature, t: &Triangulation) -> Option<Permutation> {
    let spine = spine_of(sig, t.as_dissection());
    let k = spine.nodes().len();
    let mut outs = vec![Vec::new(); k];
    let mut indeg = vec![0; k];
    for a in spine.arcs() {
        outs[a.from].push(a.to);
        indeg[a.to] += 1;
    }
    if outs.iter().any(|o| o.len() > 1) || indeg.iter().any(|&d| d > 1) {
        return None;
    }
    let mut cur = (0..k).find(|&v| indeg[v] == 0)?;
    let mut values = vec![0; sig.n() + 1];
    for level in 1..=k {
        let label = spine.nodes()[cur].labels.min().expect("label");
        values[label - 1] = level;
        if level < k {
            cur = outs[cur][0];
        }
    }
    Permutation::new(values).ok()
}

/// Letters over `{+1, 0, -1}`: `+1` when `i` is below `i+1`, `-1` when
/// above, `0` when they share a node.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanopyWord(pub Vec<i8>);

impl CanopyWord {
    /// Boolean-lattice join: `-1` dominates.
    pub fn join(&self, other: &CanopyWord) -> CanopyWord {
        CanopyWord(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn meet(&self, other: &CanopyWord) -> CanopyWord {
        CanopyWord(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn le(&self, other: &CanopyWord) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a >= b)
    }
}

impl fmt::Display for CanopyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            f.write_str(match l {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanopyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanopyWord({self})")
    }
}

impl Serialize for CanopyWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

pub fn canopy_of_spine(spine: &Spine, n: usize) -> CanopyWord {
    let reach = spine.reachable();
    CanopyWord(
        (1..=n)
            .map(|i| {
                let (a, b) = (
                    spine.node_of(i).expect("label present"),
                    spine.node_of(i + 1).expect("label present"),
                );
                if a == b {
                    0
                } else if reach[a].contains(i + 1) {
                    1
                } else {
                    debug_assert!(reach[b].contains(i), "consecutive labels are comparable");
                    -1
                }
            })
            .collect(),
    )
}

pub fn canopy(sig: &Signature, w: &Dissection) -> CanopyWord {
    canopy_of_spine(&spine_of(sig, w), sig.n())
}

/// The slope-increasing flip graph.
#[derive(Clone, Debug)]
pub struct FlipDigraph {
    pub triangulations: Vec<Triangulation>,
    /// `(from, to)` indices, sorted.
    pub arcs: Vec<(usize, usize)>,
}

/// True iff flipping `d` out of `t` is slope increasing: the arc dual to
/// `d` runs from the smaller to the larger quadrilateral label.
pub fn is_increasing_flip(sig: &Signature, t: &Triangulation, d: Diagonal) -> bool {
    let sp = spine_of(sig, t.as_dissection());
    let arc = sp.arcs()[sp.arc_of(d).expect("diagonal of t")];
    sp.nodes()[arc.from].labels.min() < sp.nodes()[arc.to].labels.min()
}

pub fn flip_digraph(sig: &Signature) -> FlipDigraph {
    let triangulations = enumerate_triangulations(sig);
    let per_vertex = exec::map_range(triangulations.len(), |i| {
        let t = &triangulations[i];
        let sp = spine_of(sig, t.as_dissection());
        sp.arcs()
            .iter()
            .filter(|a| sp.nodes()[a.from].labels.min() < sp.nodes()[a.to].labels.min())
            .map(|a| {
                let (t2, _) = flip(sig, t, a.diagonal).expect("arc diagonal in t");
                (i, triangulations.binary_search(&t2).expect("enumerated"))
            })
            .collect::<Vec<_>>()
    });
    let mut arcs: Vec<(usize, usize)> = per_vertex.into_iter().flatten().collect();
    arcs.sort();
    FlipDigraph {
        triangulations,
        arcs,
    }
}

impl FlipDigraph {
    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        self.triangulations.binary_search(t).ok()
    }

    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.triangulations.len()];
        for &(_, b) in &self.arcs {
            has_in[b] = true;
        }
        (0..has_in.len()).filter(|&i| !has_in[i]).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.triangulations.len()];
        for &(a, _) in &self.arcs {
            has_out[a] = true;
        }
        (0..has_out.len()).filter(|&i| !has_out[i]).collect()
    }

    /// Reflexive-transitive closure as `le[a][b]` (`a` below `b`); `None` on a cycle.
    pub fn closure(&self) -> Option<Vec<Vec<bool>>> {
        let k = self.triangulations.len();
        let mut succ = vec![Vec::new(); k];
        let mut indeg = vec![0; k];
        for &(a, b) in &self.arcs {
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(k);
        let mut ready: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if order.len() != k {
            return None;
        }
        let mut le = vec![vec![false; k]; k];
        for &v in order.iter().rev() {
            le[v][v] = true;
            for &w in &succ[v] {
                let (row_v, row_w) = if v < w {
                    let (lo, hi) = le.split_at_mut(w);
                    (&mut lo[v], &hi[0])
                } else {
                    let (lo, hi) = le.split_at_mut(v);
                    (&mut hi[0], &lo[w])
                };
                for (x, &y) in row_v.iter_mut().zip(row_w.iter()) {
                    *x |= y;
                }
            }
        }
        Some(le)
    }

    /// DOT rendering with triangulations and their points as labels.
    pub fn to_dot(&self, sig: &Signature) -> String {
        let mut out = String::from("digraph flips {\n");
        for (i, t) in self.triangulations.iter().enumerate() {
            let x = vertex_point(sig, t).coords;
            out.push_str(&format!(
                "  {i} [label=\"{t}\\n({})\"];\n",
                x.iter().join(",")
            ));
        }
        for &(a, b) in &self.arcs {
            out.push_str(&format!("  {a} -> {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Greatest lower bound in a finite order given by `le`, if it exists.
pub fn order_meet(le: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..le.len()).filter(|&c| le[c][a] && le[c][b]).collect();
    lower
        .iter()
        .copied()
        .find(|&c| lower.iter().all(|&d| le[d][c]))
}

pub fn order_join(le: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..le.len()).filter(|&c| le[a][c] && le[b][c]).collect();
    upper
        .iter()
        .copied()
        .find(|&c| upper.iter().all(|&d| le[c][d]))
}

fn per_cell_extreme(sig: &Signature, t1: &Triangulation, t2: &Triangulation, lower: bool) -> Triangulation {
    let common = t1.as_dissection().intersection(t2.as_dissection());
    let mut diagonals = common.diagonals().to_vec();
    for cell in cells(sig, &common) {
        let (local, map) = cell.local_signature(sig);
        let (tmin, tmax) = greedy_extremes(&local);
        let chosen = if lower { tmin } else { tmax };
        diagonals.extend(lift_diagonals(&map, chosen.diagonals()));
    }
    Triangulation::new(sig, diagonals).expect("cell triangulations glue")
}

/// Common diagonals completed by the minimal triangulation of every cell:
/// the bottom of the face shared by `t1` and `t2`. This is a lower bound
/// for the lattice meet and coincides with it only in special cases.
pub fn greedy_meet(sig: &Signature, t1: &Triangulation, t2: &Triangulation) -> Triangulation {
    per_cell_extreme(sig, t1, t2, true)
}

/// Top of the face shared by `t1` and `t2`; an upper bound for the join.
pub fn greedy_join(sig: &Signature, t1: &Triangulation, t2: &Triangulation) -> Triangulation {
    per_cell_extreme(sig, t1, t2, false)
}

/// A linear extension of the spine order, taking the smallest available label first.
pub fn representative(sig: &Signature, t: &Triangulation) -> Permutation {
    let spine = spine_of(sig, t.as_dissection());
    let k = spine.nodes().len();
    let mut indeg = vec![0; k];
    for a in spine.arcs() {
        indeg[a.to] += 1;
    }
    let mut ready: BTreeSet<(Label, usize)> = (0..k)
        .filter(|&v| indeg[v] == 0)
        .map(|v| (spine.nodes()[v].labels.min().expect("label"), v))
        .collect();
    let mut values = vec![0; sig.n() + 1];
    let mut level = 0;
    while let Some((label, v)) = ready.pop_first() {
        level += 1;
        values[label - 1] = level;
        for a in spine.arcs().iter().filter(|a| a.from == v) {
            indeg[a.to] -= 1;
            if indeg[a.to] == 0 {
                ready.insert((spine.nodes()[a.to].labels.min().expect("label"), a.to));
            }
        }
    }
    Permutation::new(values).expect("topological order of a tree")
}

/// Meet in the slope-increasing flip lattice, pulled back through the weak order.
pub fn meet(sig: &Signature, t1: &Triangulation, t2: &Triangulation) -> Triangulation {
    kappa(sig, &representative(sig, t1).meet(&representative(sig, t2)))
}

pub fn join(sig: &Signature, t1: &Triangulation, t2: &Triangulation) -> Triangulation {
    kappa(sig, &representative(sig, t1).join(&representative(sig, t2)))
}

/// Reflexive and transitive relation on `[m]`: `up[i]` holds every `j` with `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preposet {
    m: usize,
    up: Vec<LabelSet>,
}

impl Preposet {
    /// Closure of the given pairs `(i, j)` meaning `i ≤ j`.
    pub fn from_relations(m: usize, pairs: &[(Label, Label)]) -> Preposet {
        let mut up: Vec<LabelSet> = (0..=m)
            .map(|i| if i == 0 { LabelSet::EMPTY } else { LabelSet::singleton(i) })
            .collect();
        for &(i, j) in pairs {
            up[i].insert(j);
        }
        loop {
            let mut changed = false;
            for i in 1..=m {
                let mut row = up[i];
                for j in up[i].iter() {
                    row = row.union(up[j]);
                }
                if row != up[i] {
                    up[i] = row;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Preposet { m, up }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn le(&self, i: Label, j: Label) -> bool {
        self.up[i].contains(j)
    }

    pub fn equivalent(&self, i: Label, j: Label) -> bool {
        self.le(i, j) && self.le(j, i)
    }

    /// Labels forced below `j`.
    fn down(&self, j: Label) -> LabelSet {
        (1..=self.m).filter(|&i| self.le(i, j)).collect()
    }

    /// Normal-cone membership: `u_i <= u_j` whenever `i ≤ j`.
    pub fn cone_contains(&self, u: &[Rational]) -> bool {
        (1..=self.m).all(|i| self.up[i].iter().all(|j| u[i - 1] <= u[j - 1]))
    }

    /// Ordered partitions extending the preposet, lexicographically by blocks.
    pub fn linear_extensions(&self) -> Vec<OrderedPartition> {
        self.linear_extensions_with(false)
    }

    /// With `singletons`, only partitions into singletons (linear orders).
    pub(crate) fn linear_extensions_with(&self, singletons: bool) -> Vec<OrderedPartition> {
        fn go(
            p: &Preposet,
            remaining: LabelSet,
            singletons: bool,
            prefix: &mut Vec<LabelSet>,
            out: &mut Vec<OrderedPartition>,
        ) {
            if remaining.is_empty() {
                out.push(OrderedPartition {
                    blocks: prefix.clone(),
                });
                return;
            }
            let closed = |block: LabelSet| {
                block
                    .iter()
                    .all(|j| p.down(j).intersection(remaining).is_subset(block))
            };
            if singletons {
                for j in remaining.iter() {
                    let block = LabelSet::singleton(j);
                    if closed(block) {
                        prefix.push(block);
                        go(p, remaining.difference(block), singletons, prefix, out);
                        prefix.pop();
                    }
                }
                return;
            }
            let mask = remaining.0;
            let mut sub = mask;
            while sub != 0 {
                let block = LabelSet(sub);
                if closed(block) {
                    prefix.push(block);
                    go(p, remaining.difference(block), singletons, prefix, out);
                    prefix.pop();
                }
                sub = (sub - 1) & mask;
            }
        }
        let mut out = Vec::new();
        go(self, LabelSet::range(1, self.m), singletons, &mut Vec::new(), &mut out);
        out.sort_by_key(|rho| rho.blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
        out
    }
}

/// Transitive closure of the arcs, with labels of a node equivalent.
pub fn spine_preposet(spine: &Spine) -> Preposet {
    let m = spine.nodes().iter().map(|n| n.labels.len()).sum();
    let mut pairs = Vec::new();
    for node in spine.nodes() {
        let ls: Vec<Label> = node.labels.iter().collect();
        for w in ls.windows(2) {
            pairs.push((w[0], w[1]));
            pairs.push((w[1], w[0]));
        }
    }
    for a in spine.arcs() {
        let (i, j) = (
            spine.nodes()[a.from].labels.min().expect("label"),
            spine.nodes()[a.to].labels.min().expect("label"),
        );
        pairs.push((i, j));
    }
    Preposet::from_relations(m, &pairs)
}

/// Outcome of checking that κ and the canopy respect the lattice operations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub permutation_pairs: usize,
    pub triangulation_pairs: usize,
    pub kappa_join_failures: usize,
    pub kappa_meet_failures: usize,
    pub kappa_monotonicity_failures: usize,
    pub canopy_join_failures: usize,
    pub canopy_meet_failures: usize,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.kappa_join_failures
            + self.kappa_meet_failures
            + self.kappa_monotonicity_failures
            + self.canopy_join_failures
            + self.canopy_meet_failures
            == 0
    }
}

pub fn homomorphism_check(sig: &Signature) -> HomomorphismReport {
    let m = sig.n() + 1;
    let perms = Permutation::all(m);
    let images: Vec<Triangulation> = exec::map(&perms, |p| kappa(sig, p));
    let digraph = flip_digraph(sig);
    let le = digraph.closure().expect("acyclic");
    let idx: Vec<usize> = images
        .iter()
        .map(|t| digraph.index_of(t).expect("enumerated"))
        .collect();
    let per_row = exec::map_range(perms.len(), |a| {
        let mut r = HomomorphismReport::default();
        for b in 0..perms.len() {
            r.permutation_pairs += 1;
            let (p, q) = (&perms[a], &perms[b]);
            let j = kappa(sig, &p.join(q));
            let top = order_join(&le, idx[a], idx[b]).expect("lattice");
            if j != digraph.triangulations[top] {
                r.kappa_join_failures += 1;
            }
            let mt = kappa(sig, &p.meet(q));
            let bottom = order_meet(&le, idx[a], idx[b]).expect("lattice");
            if mt != digraph.triangulations[bottom] {
                r.kappa_meet_failures += 1;
            }
            if p.weak_le(q) && !le[idx[a]][idx[b]] {
                r.kappa_monotonicity_failures += 1;
            }
        }
        r
    });
    let ts = &digraph.triangulations;
    let words: Vec<CanopyWord> = exec::map(ts, |t| canopy(sig, t.as_dissection()));
    let canopy_rows = exec::map_range(ts.len(), |a| {
        let mut r = HomomorphismReport::default();
        for b in 0..ts.len() {
            r.triangulation_pairs += 1;
            let jt = &ts[order_join(&le, a, b).expect("lattice")];
            if canopy(sig, jt.as_dissection()) != words[a].join(&words[b]) {
                r.canopy_join_failures += 1;
            }
            let mt = &ts[order_meet(&le, a, b).expect("lattice")];
            if canopy(sig, mt.as_dissection()) != words[a].meet(&words[b]) {
                r.canopy_meet_failures += 1;
            }
        }
        r
    });
    per_row
        .into_iter()
        .chain(canopy_rows)
        .fold(HomomorphismReport::default(), |acc, r| HomomorphismReport {
            permutation_pairs: acc.permutation_pairs + r.permutation_pairs,
            triangulation_pairs: acc.triangulation_pairs + r.triangulation_pairs,
            kappa_join_failures: acc.kappa_join_failures + r.kappa_join_failures,
            kappa_meet_failures: acc.kappa_meet_failures + r.kappa_meet_failures,
            kappa_monotonicity_failures: acc.kappa_monotonicity_failures
                + r.kappa_monotonicity_failures,
            canopy_join_failures: acc.canopy_join_failures + r.canopy_join_failures,
            canopy_meet_failures: acc.canopy_meet_failures + r.canopy_meet_failures,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vertex_point;
    use crate::polygon::Diagonal;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn decagon() -> Signature {
        sig("duududud")
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn example_triangulation() -> Triangulation {
        kappa(&decagon(), &perm("4,6,2,1,7,5,8,3"))
    }

    #[test]
    fn permutation_parsing_and_inverse() {
        let p = perm("4,6,2,1,7,5,8,3");
        assert_eq!(p.at(1), 4);
        assert_eq!(p.inverse().inverse(), p);
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
        assert_eq!(perm("[2,1]").values(), &[2, 1]);
    }

    #[test]
    fn inversion_round_trip() {
        for p in Permutation::all(5) {
            assert_eq!(Permutation::from_inversions(&p.inversions()), p);
        }
    }

    #[test]
    fn weak_order_lattice() {
        let all = Permutation::all(4);
        for p in &all {
            for q in &all {
                let j = p.join(q);
                let m = p.meet(q);
                assert!(p.weak_le(&j) && q.weak_le(&j));
                assert!(m.weak_le(p) && m.weak_le(q));
                for r in &all {
                    if p.weak_le(r) && q.weak_le(r) {
                        assert!(j.weak_le(r));
                    }
                    if r.weak_le(p) && r.weak_le(q) {
                        assert!(r.weak_le(&m));
                    }
                }
            }
        }
    }

    #[test]
    fn partition_parsing() {
        let rho = OrderedPartition::parse(8, "{3,4,6,8}|{1,2,5,7}").unwrap();
        assert_eq!(rho.surjection(), vec![2, 2, 1, 1, 2, 1, 2, 1]);
        assert_eq!(OrderedPartition::from_surjection(&[2, 2, 1, 1, 2, 1, 2, 1]).unwrap(), rho);
        assert_eq!(rho.to_string(), "{3,4,6,8}|{1,2,5,7}");
        assert!(OrderedPartition::parse(3, "{1,2}|{2,3}").is_err());
        assert!(OrderedPartition::parse(3, "{1,2}").is_err());
        assert!(OrderedPartition::parse(3, "{1,2}|{}|{3}").is_err());
    }

    #[test]
    fn example_vertex_and_flip() {
        let s = decagon();
        let t = example_triangulation();
        assert_eq!(vertex_point(&s, &t).coords, vec![7, 8, -6, 1, 7, 10, 8, 1]);
        let sp = spine_of(&s, t.as_dissection());
        let arc = sp
            .arcs()
            .iter()
            .find(|a| {
                let ends = [sp.nodes()[a.from].labels.min(), sp.nodes()[a.to].labels.min()];
                ends.contains(&Some(3)) && ends.contains(&Some(6))
            })
            .copied()
            .unwrap();
        let (t2, _) = flip(&s, &t, arc.diagonal).unwrap();
        assert_eq!(vertex_point(&s, &t2).coords, vec![7, 8, 0, 1, 7, 4, 8, 1]);
        assert!(is_increasing_flip(&s, &t, arc.diagonal));
        let d = flip_digraph(&s);
        let (a, b) = (d.index_of(&t).unwrap(), d.index_of(&t2).unwrap());
        assert!(d.arcs.binary_search(&(a, b)).is_ok());
    }

    #[test]
    fn example_fiber() {
        let s = decagon();
        let t = example_triangulation();
        let f = fiber(&s, &t);
        assert_eq!(f.len(), 35);
        let (lo, hi) = fiber_bounds(&s, &t);
        assert_eq!(lo, perm("3,4,2,1,7,6,8,5"));
        assert_eq!(hi, perm("7,8,3,2,5,4,6,1"));
        for p in &f {
            assert!(lo.weak_le(p) && p.weak_le(&hi));
            assert_eq!(kappa(&s, p), t);
        }
    }

    #[test]
    fn kappa_extremes() {
        for n in 0..=5 {
            for s in Signature::all(n) {
                let (tmin, tmax) = greedy_extremes(&s);
                assert_eq!(kappa(&s, &Permutation::identity(n + 1)), tmin);
                assert_eq!(kappa(&s, &Permutation::longest(n + 1)), tmax);
                assert_eq!(is_singleton_fiber(&s, &tmin), Some(Permutation::identity(n + 1)));
                assert_eq!(is_singleton_fiber(&s, &tmax), Some(Permutation::longest(n + 1)));
                assert_eq!(canopy(&s, tmin.as_dissection()).0, vec![1; n]);
                assert_eq!(canopy(&s, tmax.as_dissection()).0, vec![-1; n]);
            }
        }
    }

    #[test]
    fn fibers_partition_permutations() {
        for n in 0..=4 {
            for s in Signature::all(n) {
                let perms = Permutation::all(n + 1);
                let mut total = 0;
                for t in enumerate_triangulations(&s) {
                    let f = fiber(&s, &t);
                    let brute: Vec<Permutation> =
                        perms.iter().filter(|p| kappa(&s, p) == t).cloned().collect();
                    assert_eq!(f, brute);
                    total += f.len();
                    let single = is_singleton_fiber(&s, &t);
                    assert_eq!(single.is_some(), f.len() == 1);
                    if let Some(p) = single {
                        let x: Vec<i64> = p.values().iter().map(|&v| v as i64).collect();
                        assert_eq!(vertex_point(&s, &t).coords, x);
                    }
                    let ext = spine_preposet(&spine_of(&s, t.as_dissection())).linear_extensions_with(true);
                    assert_eq!(ext.len(), f.len());
                }
                assert_eq!(total, perms.len());
            }
        }
    }

    #[test]
    fn singleton_count_loday_n2() {
        let s = Signature::loday(2);
        let count = enumerate_triangulations(&s)
            .iter()
            .filter(|t| is_singleton_fiber(&s, t).is_some())
            .count();
        assert_eq!(count, 4);
    }

    #[test]
    fn kappa_bar_example() {
        let s = decagon();
        let rho = OrderedPartition::parse(8, "{3,4,6,8}|{1,2,5,7}").unwrap();
        let w = kappa_bar(&s, &rho);
        let expected = vec![Diagonal::new(1, 3).unwrap(), Diagonal::new(3, 9).unwrap()];
        assert_eq!(w.diagonals(), &expected[..]);
        let lev = leveled_spine(&s, &rho);
        assert_eq!(lev.spine, spine_of(&s, &w));
        let labels: Vec<Vec<usize>> = lev.spine.nodes().iter().map(|n| n.labels.to_vec()).collect();
        assert_eq!(labels, vec![vec![1, 2], vec![3, 4, 6, 8], vec![5, 7]]);
        assert_eq!(lev.level, vec![2, 1, 2]);
        assert!(lev.is_increasing());

        let ext = spine_preposet(&lev.spine).linear_extensions();
        let shown: Vec<String> = ext.iter().map(|r| r.to_string()).collect();
        let mut expected = vec![
            "{1,2,3,4,5,6,7,8}",
            "{3,4,5,6,7,8}|{1,2}",
            "{1,2,3,4,6,8}|{5,7}",
            "{3,4,6,8}|{1,2,5,7}",
            "{3,4,6,8}|{1,2}|{5,7}",
            "{3,4,6,8}|{5,7}|{1,2}",
        ];
        expected.sort_by_key(|s| {
            OrderedPartition::parse(8, s)
                .unwrap()
                .blocks()
                .iter()
                .map(|b| b.to_vec())
                .collect::<Vec<_>>()
        });
        assert_eq!(shown, expected);
    }

    #[test]
    fn one_block_gives_single_node() {
        let s = sig("udud");
        let rho = OrderedPartition::parse(4, "{1,2,3,4}").unwrap();
        assert!(kappa_bar(&s, &rho).is_empty());
        let lev = leveled_spine(&s, &rho);
        assert_eq!(lev.spine.nodes().len(), 1);
        let p = spine_preposet(&lev.spine);
        assert_eq!(p.linear_extensions().len(), 1);
        // the empty preposet is extended by every ordered partition (Fubini number 75)
        assert_eq!(Preposet::from_relations(4, &[]).linear_extensions().len(), 75);
    }

    #[test]
    fn leveled_spine_matches_sweep() {
        for n in 0..=4 {
            for s in Signature::all(n) {
                for p in Permutation::all(n + 1) {
                    let rho = OrderedPartition::from_permutation(&p);
                    let lev = leveled_spine(&s, &rho);
                    assert_eq!(lev.spine, spine_of(&s, kappa(&s, &p).as_dissection()), "{s} {p:?}");
                    assert!(lev.is_increasing());
                }
            }
        }
    }

    #[test]
    fn coarse_leveled_spines_match_sweep() {
        for n in 0..=4 {
            for s in Signature::all(n) {
                for rho in Preposet::from_relations(n + 1, &[]).linear_extensions() {
                    let lev = leveled_spine(&s, &rho);
                    assert_eq!(lev.spine, spine_of(&s, &kappa_bar(&s, &rho)), "{s} {rho}");
                    assert!(lev.is_increasing());
                }
            }
        }
    }

    #[test]
    fn kappa_is_the_cone_containing_the_permutation() {
        for n in 0..=3 {
            for s in Signature::all(n) {
                for p in Permutation::all(n + 1) {
                    let u: Vec<Rational> = p.values().iter().map(|&v| Rational::from(v as i64)).collect();
                    let hits: Vec<Triangulation> = enumerate_triangulations(&s)
                        .into_iter()
                        .filter(|t| spine_preposet(&spine_of(&s, t.as_dissection())).cone_contains(&u))
                        .collect();
                    assert_eq!(hits, vec![kappa(&s, &p)]);
                }
            }
        }
    }

    #[test]
    fn loday_kappa_is_bst_insertion() {
        // insert σ⁻¹(n+1), ..., σ⁻¹(1) into a binary search tree; the spine
        // arcs point from child to parent
        let s = Signature::loday(4);
        for p in Permutation::all(5) {
            let order: Vec<Label> = p.inverse().values().iter().rev().copied().collect();
            let mut parent = vec![0usize; 6];
            let mut left = vec![0usize; 6];
            let mut right = vec![0usize; 6];
            let root = order[0];
            for &x in &order[1..] {
                let mut cur = root;
                loop {
                    let slot = if x < cur { &mut left[cur] } else { &mut right[cur] };
                    if *slot == 0 {
                        *slot = x;
                        parent[x] = cur;
                        break;
                    }
                    cur = *slot;
                }
            }
            let sp = spine_of(&s, kappa(&s, &p).as_dissection());
            let mut arcs: Vec<(usize, usize)> = sp
                .arcs()
                .iter()
                .map(|a| (sp.nodes()[a.from].labels.min().unwrap(), sp.nodes()[a.to].labels.min().unwrap()))
                .collect();
            arcs.sort();
            let mut bst: Vec<(usize, usize)> = (1..=5).filter(|&x| x != root).map(|x| (x, parent[x])).collect();
            bst.sort();
            assert_eq!(arcs, bst);
        }
    }

    #[test]
    fn canopy_examples() {
        let s = sig("ud");
        let t = Triangulation::new(&s, vec![Diagonal::new(1, 2).unwrap()]).unwrap();
        assert_eq!(canopy(&s, t.as_dissection()).0, vec![1]);
        let w = Dissection::empty();
        assert_eq!(canopy(&sig("udd"), &w).0, vec![0, 0]);
        assert_eq!(CanopyWord(vec![1, -1, 0]).to_string(), "+-0");
    }

    #[test]
    fn flip_digraph_structure() {
        for n in 0..=5 {
            for s in Signature::all(n) {
                let d = flip_digraph(&s);
                let (tmin, tmax) = greedy_extremes(&s);
                assert_eq!(d.sources(), vec![d.index_of(&tmin).unwrap()]);
                assert_eq!(d.sinks(), vec![d.index_of(&tmax).unwrap()]);
                assert!(d.closure().is_some());
                let dir = s.direction();
                for &(a, b) in &d.arcs {
                    let x = vertex_point(&s, &d.triangulations[a]).coords;
                    let y = vertex_point(&s, &d.triangulations[b]).coords;
                    let dot: i64 = dir.iter().zip(y.iter().zip(&x)).map(|(u, (p, q))| u * (p - q)).sum();
                    assert!(dot > 0);
                }
                // every flip appears in exactly one direction
                let k = d.triangulations.len();
                assert_eq!(d.arcs.len(), k * n / 2);
            }
        }
        assert_eq!(flip_digraph(&sig("dd")).arcs, vec![(0, 1)]);
    }

    #[test]
    fn meet_join_match_closure() {
        for n in 1..=4 {
            for s in Signature::all(n) {
                let d = flip_digraph(&s);
                let le = d.closure().unwrap();
                let ts = &d.triangulations;
                for a in 0..ts.len() {
                    for b in 0..ts.len() {
                        let m = order_meet(&le, a, b).expect("lattice");
                        let j = order_join(&le, a, b).expect("lattice");
                        assert_eq!(meet(&s, &ts[a], &ts[b]), ts[m]);
                        assert_eq!(join(&s, &ts[a], &ts[b]), ts[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_face_extremes_bound_meet_and_join() {
        for n in 1..=4 {
            for s in Signature::all(n) {
                let d = flip_digraph(&s);
                let le = d.closure().unwrap();
                let ts = &d.triangulations;
                for a in 0..ts.len() {
                    for b in 0..ts.len() {
                        let gm = d.index_of(&greedy_meet(&s, &ts[a], &ts[b])).unwrap();
                        let gj = d.index_of(&greedy_join(&s, &ts[a], &ts[b])).unwrap();
                        let m = order_meet(&le, a, b).unwrap();
                        let j = order_join(&le, a, b).unwrap();
                        assert!(le[gm][m] && le[j][gj]);
                        if a == b || d.arcs.contains(&(a, b)) || d.arcs.contains(&(b, a)) {
                            assert_eq!((gm, gj), (m, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_meet_misses_comparable_pairs_without_common_diagonal() {
        let s = sig("ddd");
        let low = Triangulation::parse(&s, "0-3,1-3").unwrap();
        let top = Triangulation::parse(&s, "1-4,2-4").unwrap();
        assert_eq!(meet(&s, &low, &top), low);
        assert_eq!(join(&s, &low, &top), top);
        assert_eq!(greedy_meet(&s, &low, &top), Triangulation::parse(&s, "0-2,0-3").unwrap());
    }

    #[test]
    fn lattice_homomorphisms() {
        for n in 0..=3 {
            for s in Signature::all(n) {
                let r = homomorphism_check(&s);
                assert!(r.passed(), "{s}: {r:?}");
            }
        }
    }

    #[test]
    fn canopy_cones_cover_their_triangulation_cones() {
        // σ lies in the cone of κ(σ) and in the cone of its up/down word,
        // so the canopy of κ(σ) must be that word
        for n in 1..=4 {
            for s in Signature::all(n) {
                for p in Permutation::all(n + 1) {
                    let w = canopy(&s, kappa(&s, &p).as_dissection());
                    let expected: Vec<i8> = (1..=n).map(|i| if p.at(i) < p.at(i + 1) { 1 } else { -1 }).collect();
                    assert_eq!(w.0, expected);
                }
            }
        }
    }
}
