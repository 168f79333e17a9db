//! Combinatorial model of the up/down labeled convex polygon.
//!
//! The polygon has vertices `0, 1, ..., n+2` ordered by x-coordinate.
//! Intermediate vertices `1..=n+1` are either up (upper hull) or down
//! (lower hull). No coordinates are ever needed: the counter-clockwise
//! cyclic order is `0`, the down labels ascending, `n+2`, then the up
//! labels descending, and every side test below is derived from it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AssoError, Result};
use crate::labels::LabelSet;

pub type Label = usize;

/// Largest supported dimension. Keeps every diagonal index inside a `u128`.
pub const MAX_N: usize = 12;

/// The combinatorial polygon: dimension `n` and the up labels `U ⊆ [n+1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    n: usize,
    up: LabelSet,
    order: Vec<Label>,
    position: Vec<usize>,
}

impl Signature {
    pub fn new(n: usize, up: LabelSet) -> Result<Signature> {
        if n > MAX_N {
            return Err(AssoError::MalformedSignature(format!(
                "n = {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        if !up.is_subset(LabelSet::range(1, n + 1)) {
            return Err(AssoError::MalformedSignature(format!(
                "up labels {up} not contained in [1, {}]",
                n + 1
            )));
        }
        let down = LabelSet::range(1, n + 1).difference(up);
        let mut order = Vec::with_capacity(n + 3);
        order.push(0);
        order.extend(down.iter());
        order.push(n + 2);
        order.extend(up.iter().collect::<Vec<_>>().into_iter().rev());
        let mut position = vec![0; n + 3];
        for (pos, &label) in order.iter().enumerate() {
            position[label] = pos;
        }
        Ok(Signature {
            n,
            up,
            order,
            position,
        })
    }

    /// The all-down polygon.
    pub fn loday(n: usize) -> Signature {
        Signature::new(n, LabelSet::EMPTY).expect("n within range")
    }

    /// Every signature of dimension `n`, in increasing order of the up mask.
    pub fn all(n: usize) -> Vec<Signature> {
        (0u64..1 << (n + 1))
            .map(|mask| Signature::new(n, LabelSet(mask << 1)).expect("valid mask"))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polygon vertices, `n + 3`.
    pub fn vertex_count(&self) -> usize {
        self.n + 3
    }

    /// The rightmost label `n + 2`.
    pub fn last(&self) -> Label {
        self.n + 2
    }

    /// `[n+1]`.
    pub fn labels(&self) -> LabelSet {
        LabelSet::range(1, self.n + 1)
    }

    pub fn up(&self) -> LabelSet {
        self.up
    }

    pub fn down(&self) -> LabelSet {
        self.labels().difference(self.up)
    }

    pub fn is_up(&self, label: Label) -> bool {
        self.up.contains(label)
    }

    /// True for intermediate labels on the lower hull (never for `0` or `n+2`).
    pub fn is_down(&self, label: Label) -> bool {
        label >= 1 && label <= self.n + 1 && !self.up.contains(label)
    }

    /// Counter-clockwise cyclic order of the polygon vertices.
    pub fn cyclic_order(&self) -> &[Label] {
        &self.order
    }

    /// Position of a label in [`Signature::cyclic_order`].
    pub fn position(&self, label: Label) -> usize {
        self.position[label]
    }

    /// The orientation direction `(n, n-2, ..., -n)`.
    pub fn direction(&self) -> Vec<i64> {
        let n = self.n as i64;
        (0..=n).map(|k| n - 2 * k).collect()
    }

    /// Signature string over `{u, d}`, one letter per label `1..=n+1`.
    pub fn word(&self) -> String {
        (1..=self.n + 1)
            .map(|j| if self.is_up(j) { 'u' } else { 'd' })
            .collect()
    }

    pub fn check_label(&self, label: Label) -> Result<()> {
        if label > self.n + 2 {
            return Err(AssoError::MalformedDiagonal(format!(
                "label {label} outside [0, {}]",
                self.n + 2
            )));
        }
        Ok(())
    }

    /// Validates a chord of this polygon (any pair of distinct vertices).
    pub fn chord(&self, a: Label, b: Label) -> Result<Diagonal> {
        self.check_label(a)?;
        self.check_label(b)?;
        Diagonal::new(a, b)
    }

    pub fn is_boundary(&self, d: Diagonal) -> bool {
        let m = self.vertex_count();
        let (p, q) = (self.position(d.a), self.position(d.b));
        let gap = p.abs_diff(q);
        gap == 1 || gap == m - 1
    }

    pub fn is_internal(&self, d: Diagonal) -> bool {
        !self.is_boundary(d)
    }

    /// Boundary edges on the lower hull: consecutive vertices of `0, D, n+2`.
    pub fn is_bottom_edge(&self, d: Diagonal) -> bool {
        let last_bottom = self.down().len() + 1;
        let (p, q) = (self.position(d.a), self.position(d.b));
        p.abs_diff(q) == 1 && p.max(q) <= last_bottom
    }

    pub fn is_top_edge(&self, d: Diagonal) -> bool {
        self.is_boundary(d) && !self.is_bottom_edge(d)
    }

    /// All `n + 3` boundary edges, sorted.
    pub fn boundary_edges(&self) -> Vec<Diagonal> {
        let m = self.vertex_count();
        let mut edges: Vec<Diagonal> = (0..m)
            .map(|p| Diagonal::new(self.order[p], self.order[(p + 1) % m]).expect("distinct"))
            .collect();
        edges.sort();
        edges
    }

    /// All internal diagonals, sorted.
    pub fn internal_diagonals(&self) -> Vec<Diagonal> {
        let top = self.last();
        let mut out = Vec::new();
        for a in 0..=top {
            for b in a + 1..=top {
                let d = Diagonal { a, b };
                if self.is_internal(d) {
                    out.push(d);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({})", self.word())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl FromStr for Signature {
    type Err = AssoError;

    fn from_str(s: &str) -> Result<Signature> {
        if s.is_empty() {
            return Err(AssoError::MalformedSignature(
                "signature must have at least one letter".into(),
            ));
        }
        let mut up = LabelSet::EMPTY;
        for (i, c) in s.chars().enumerate() {
            match c {
                'u' => up.insert(i + 1),
                'd' => {}
                other => {
                    return Err(AssoError::MalformedSignature(format!(
                        "unexpected character {other:?} (expected 'u' or 'd')"
                    )))
                }
            }
        }
        Signature::new(s.chars().count() - 1, up)
    }
}

/// Cyclic order: `0`, down labels ascending, `n+2`, up labels descending.
pub fn cyclic_order(sig: &Signature) -> Vec<Label> {
    sig.cyclic_order().to_vec()
}

/// A chord `(a, b)` with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    pub a: Label,
    pub b: Label,
}

impl Diagonal {
    pub fn new(x: Label, y: Label) -> Result<Diagonal> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Diagonal { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(Diagonal { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(AssoError::MalformedDiagonal(format!(
                "degenerate chord ({x},{y})"
            ))),
        }
    }

    pub fn has_endpoint(self, v: Label) -> bool {
        self.a == v || self.b == v
    }
}

impl fmt::Debug for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl FromStr for Diagonal {
    type Err = AssoError;

    /// Accepts `a-b` or `(a,b)`.
    fn from_str(s: &str) -> Result<Diagonal> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(['-', ',']).map(str::trim).collect();
        if parts.len() != 2 {
            return Err(AssoError::MalformedDiagonal(format!("cannot parse {s:?}")));
        }
        let parse = |p: &str| {
            p.parse::<Label>()
                .map_err(|_| AssoError::MalformedDiagonal(format!("bad label {p:?} in {s:?}")))
        };
        Diagonal::new(parse(parts[0])?, parse(parts[1])?)
    }
}

impl Serialize for Diagonal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Diagonal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Label; 2]>::deserialize(deserializer)?;
        Diagonal::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// True iff the endpoints strictly interleave in the cyclic order.
pub fn crosses(sig: &Signature, d1: Diagonal, d2: Diagonal) -> bool {
    let (mut p1, mut q1) = (sig.position(d1.a), sig.position(d1.b));
    let (mut p2, mut q2) = (sig.position(d2.a), sig.position(d2.b));
    if p1 > q1 {
        std::mem::swap(&mut p1, &mut q1);
    }
    if p2 > q2 {
        std::mem::swap(&mut p2, &mut q2);
    }
    (p1 < p2 && p2 < q1 && q1 < q2) || (p2 < p1 && p1 < q2 && q2 < q1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

/// Side of the line supporting `d` on which vertex `v` lies (`v` not an endpoint).
///
/// A vertex strictly between the endpoints in x-order is above iff it is
/// up. Vertices left of `a` sit above iff `a` is not up, and vertices right
/// of `b` sit above iff `b` is not up.
pub fn side_of(sig: &Signature, v: Label, d: Diagonal) -> Side {
    debug_assert!(!d.has_endpoint(v));
    let above = if v < d.a {
        !sig.is_up(d.a)
    } else if v > d.b {
        !sig.is_up(d.b)
    } else {
        sig.is_up(v)
    };
    if above {
        Side::Above
    } else {
        Side::Below
    }
}

/// `(Abo(d), Bel(d))`: down endpoints count above, up endpoints below.
pub fn side_sets(sig: &Signature, d: Diagonal) -> (LabelSet, LabelSet) {
    let mut abo = LabelSet::EMPTY;
    let mut bel = LabelSet::EMPTY;
    for j in 1..=sig.n() + 1 {
        let above = if d.has_endpoint(j) {
            sig.is_down(j)
        } else {
            side_of(sig, j, d) == Side::Above
        };
        if above {
            abo.insert(j);
        } else {
            bel.insert(j);
        }
    }
    (abo, bel)
}

pub fn below_set(sig: &Signature, d: Diagonal) -> LabelSet {
    side_sets(sig, d).1
}

pub fn above_set(sig: &Signature, d: Diagonal) -> LabelSet {
    side_sets(sig, d).0
}

/// A crossing-free set of internal diagonals, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Dissection {
    diagonals: Vec<Diagonal>,
}

impl Dissection {
    pub fn empty() -> Dissection {
        Dissection::default()
    }

    pub fn new(sig: &Signature, mut diagonals: Vec<Diagonal>) -> Result<Dissection> {
        diagonals.sort();
        diagonals.dedup();
        for &d in &diagonals {
            sig.check_label(d.b)?;
            if !sig.is_internal(d) {
                return Err(AssoError::NotADissection(format!("{d:?} is a boundary edge")));
            }
        }
        for (i, &d1) in diagonals.iter().enumerate() {
            for &d2 in &diagonals[i + 1..] {
                if crosses(sig, d1, d2) {
                    return Err(AssoError::NotADissection(format!("{d1:?} crosses {d2:?}")));
                }
            }
        }
        Ok(Dissection { diagonals })
    }

    pub(crate) fn from_sorted_unchecked(diagonals: Vec<Diagonal>) -> Dissection {
        Dissection { diagonals }
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    /// True iff every diagonal of `self` is in `other` (`other` refines `self`).
    pub fn is_coarsening_of(&self, other: &Dissection) -> bool {
        self.diagonals.iter().all(|&d| other.contains(d))
    }

    pub fn intersection(&self, other: &Dissection) -> Dissection {
        Dissection {
            diagonals: self
                .diagonals
                .iter()
                .copied()
                .filter(|&d| other.contains(d))
                .collect(),
        }
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Dissection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.diagonals.serialize(serializer)
    }
}

/// Parses a comma-separated list of `a-b` diagonals (empty string = no diagonals).
pub fn parse_diagonals(s: &str) -> Result<Vec<Diagonal>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains('(') {
        // `(a,b),(c,d)` form
        return s
            .split(')')
            .map(|p| p.trim().trim_start_matches(',').trim())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse())
            .collect();
    }
    s.split(',').map(|p| p.parse()).collect()
}

/// A maximal dissection: exactly `n` pairwise non-crossing internal diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation(Dissection);

impl Triangulation {
    pub fn new(sig: &Signature, diagonals: Vec<Diagonal>) -> Result<Triangulation> {
        let w = Dissection::new(sig, diagonals)?;
        if w.len() != sig.n() {
            return Err(AssoError::NotATriangulation(format!(
                "{} diagonals given, a triangulation has {}",
                w.len(),
                sig.n()
            )));
        }
        Ok(Triangulation(w))
    }

    pub fn parse(sig: &Signature, s: &str) -> Result<Triangulation> {
        Triangulation::new(sig, parse_diagonals(s)?)
    }

    pub(crate) fn from_sorted_unchecked(diagonals: Vec<Diagonal>) -> Triangulation {
        Triangulation(Dissection::from_sorted_unchecked(diagonals))
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        self.0.diagonals()
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.0.contains(d)
    }

    pub fn as_dissection(&self) -> &Dissection {
        &self.0
    }

    /// True iff this triangulation refines `w`.
    pub fn refines(&self, w: &Dissection) -> bool {
        w.is_coarsening_of(&self.0)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

fn positions_to_diagonal(sig: &Signature, p: usize, q: usize) -> Diagonal {
    Diagonal::new(sig.cyclic_order()[p], sig.cyclic_order()[q]).expect("distinct positions")
}

/// All triangulations, sorted lexicographically on their sorted diagonal lists.
pub fn enumerate_triangulations(sig: &Signature) -> Vec<Triangulation> {
    fn fan(lo: usize, hi: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
        // triangulations of the sub-polygon on positions lo..=hi, as internal chords
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for apex in lo + 1..hi {
            let left = fan(lo, apex, m);
            let right = fan(apex, hi, m);
            for l in &left {
                for r in &right {
                    let mut chords = Vec::with_capacity(l.len() + r.len() + 2);
                    chords.extend_from_slice(l);
                    chords.extend_from_slice(r);
                    for (p, q) in [(lo, apex), (apex, hi)] {
                        if q - p >= 2 && !(p == 0 && q == m - 1) {
                            chords.push((p, q));
                        }
                    }
                    out.push(chords);
                }
            }
        }
        out
    }
    let m = sig.vertex_count();
    let mut all: Vec<Triangulation> = fan(0, m - 1, m)
        .into_iter()
        .map(|chords| {
            let mut ds: Vec<Diagonal> = chords
                .into_iter()
                .map(|(p, q)| positions_to_diagonal(sig, p, q))
                .collect();
            ds.sort();
            Triangulation::from_sorted_unchecked(ds)
        })
        .collect();
    all.sort();
    all
}

/// Pairwise crossing masks over the sorted internal diagonals.
pub(crate) struct CrossingTable {
    pub diagonals: Vec<Diagonal>,
    pub crossing: Vec<u128>,
}

impl CrossingTable {
    pub fn new(sig: &Signature) -> CrossingTable {
        let diagonals = sig.internal_diagonals();
        let crossing = diagonals
            .iter()
            .map(|&d1| {
                diagonals
                    .iter()
                    .enumerate()
                    .filter(|&(_, &d2)| d1 != d2 && crosses(sig, d1, d2))
                    .fold(0u128, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        CrossingTable {
            diagonals,
            crossing,
        }
    }
}

/// All dissections with exactly `k` diagonals, in lexicographic order.
pub fn enumerate_dissections(sig: &Signature, k: usize) -> Vec<Dissection> {
    fn go(
        table: &CrossingTable,
        start: usize,
        k: usize,
        blocked: u128,
        chosen: &mut Vec<Diagonal>,
        out: &mut Vec<Dissection>,
    ) {
        if chosen.len() == k {
            out.push(Dissection::from_sorted_unchecked(chosen.clone()));
            return;
        }
        let need = k - chosen.len();
        for i in start..table.diagonals.len() {
            if table.diagonals.len() - i < need {
                break;
            }
            if blocked >> i & 1 == 1 {
                continue;
            }
            chosen.push(table.diagonals[i]);
            go(table, i + 1, k, blocked | table.crossing[i], chosen, out);
            chosen.pop();
        }
    }
    if k > sig.n() {
        return Vec::new();
    }
    let table = CrossingTable::new(sig);
    let mut out = Vec::new();
    go(&table, 0, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Adjacency (diagonals plus boundary edges) as label sets per vertex.
pub(crate) fn adjacency(sig: &Signature, diagonals: &[Diagonal]) -> Vec<LabelSet> {
    let mut adj = vec![LabelSet::EMPTY; sig.vertex_count()];
    for d in sig.boundary_edges().into_iter().chain(diagonals.iter().copied()) {
        adj[d.a].insert(d.b);
        adj[d.b].insert(d.a);
    }
    adj
}

/// Replaces `d` by the other diagonal of its quadrilateral.
pub fn flip(sig: &Signature, t: &Triangulation, d: Diagonal) -> Result<(Triangulation, Diagonal)> {
    if !t.contains(d) {
        return Err(AssoError::NotInTriangulation(format!("{d:?} not in {t}")));
    }
    let adj = adjacency(sig, t.diagonals());
    let apexes: Vec<Label> = adj[d.a].intersection(adj[d.b]).iter().collect();
    // exactly one apex on each side of d
    let (above, below): (Vec<Label>, Vec<Label>) = apexes
        .iter()
        .partition(|&&v| side_of(sig, v, d) == Side::Above);
    if above.len() != 1 || below.len() != 1 {
        return Err(AssoError::NotATriangulation(format!(
            "{d:?} does not bound two triangles in {t}"
        )));
    }
    let flipped = Diagonal::new(above[0], below[0])?;
    let mut ds: Vec<Diagonal> = t.diagonals().iter().copied().filter(|&x| x != d).collect();
    ds.push(flipped);
    ds.sort();
    Ok((Triangulation::from_sorted_unchecked(ds), flipped))
}

/// An element of the dihedral group acting on cyclic positions: optional
/// reflection `p ↦ -p` followed by rotation `p ↦ p + rotation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub rotation: usize,
    pub reflect: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement {
        rotation: 0,
        reflect: false,
    };

    pub fn apply_position(self, m: usize, p: usize) -> usize {
        let q = if self.reflect { (m - p) % m } else { p };
        (q + self.rotation) % m
    }

    pub fn apply_label(self, sig: &Signature, label: Label) -> Label {
        let m = sig.vertex_count();
        sig.cyclic_order()[self.apply_position(m, sig.position(label))]
    }
}

/// All `2(n+3)` group elements.
pub fn dihedral_group(sig: &Signature) -> Vec<DihedralElement> {
    let m = sig.vertex_count();
    [false, true]
        .into_iter()
        .flat_map(|reflect| (0..m).map(move |rotation| DihedralElement { rotation, reflect }))
        .collect()
}

pub fn dihedral_apply(sig: &Signature, g: DihedralElement, t: &Triangulation) -> Triangulation {
    let mut ds: Vec<Diagonal> = t
        .diagonals()
        .iter()
        .map(|d| Diagonal::new(g.apply_label(sig, d.a), g.apply_label(sig, d.b)).expect("bijection"))
        .collect();
    ds.sort();
    Triangulation::from_sorted_unchecked(ds)
}

/// The greedy source and sink triangulations of the slope-increasing flip graph.
pub fn greedy_extremes(sig: &Signature) -> (Triangulation, Triangulation) {
    let n = sig.n();
    let (up, down) = (sig.up(), sig.down());
    let mut tmin = Vec::with_capacity(n);
    let mut tmax = Vec::with_capacity(n);
    for i in 1..=n {
        let prefix = LabelSet::range(1, i);
        let left = up.intersection(prefix).max().unwrap_or(0);
        let right = down.difference(prefix).min().unwrap_or(n + 2);
        tmin.push(Diagonal::new(left, right).expect("distinct"));

        let head = LabelSet::range(1, n + 1 - i);
        let right = up.difference(head).min().unwrap_or(n + 2);
        let left = down.intersection(head).max().unwrap_or(0);
        tmax.push(Diagonal::new(left, right).expect("distinct"));
    }
    tmin.sort();
    tmax.sort();
    (
        Triangulation::from_sorted_unchecked(tmin),
        Triangulation::from_sorted_unchecked(tmax),
    )
}

/// A cell of a dissection, as its vertices in counter-clockwise order
/// starting at the leftmost vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    vertices: Vec<Label>,
}

impl Cell {
    pub(crate) fn from_ccw(mut vertices: Vec<Label>) -> Cell {
        let start = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap_or(0);
        vertices.rotate_left(start);
        Cell { vertices }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn leftmost(&self) -> Label {
        self.vertices[0]
    }

    pub fn rightmost(&self) -> Label {
        *self.vertices.iter().max().expect("non-empty cell")
    }

    /// Number of edges on the lower chain (leftmost to rightmost, counter-clockwise).
    pub fn lower_len(&self) -> usize {
        let right = self.rightmost();
        self.vertices.iter().position(|&v| v == right).expect("present")
    }

    /// Intermediate vertices: all but the leftmost and rightmost.
    pub fn intermediate(&self) -> LabelSet {
        let (l, r) = (self.leftmost(), self.rightmost());
        self.vertices
            .iter()
            .copied()
            .filter(|&v| v != l && v != r)
            .collect()
    }

    /// Directed boundary edges in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// The cell viewed as a polygon on its own: its signature plus the map
    /// from local labels `0..` to the original labels.
    pub fn local_signature(&self, sig: &Signature) -> (Signature, Vec<Label>) {
        let mut sorted = self.vertices.clone();
        sorted.sort();
        let up: LabelSet = sorted[1..sorted.len() - 1]
            .iter()
            .enumerate()
            .filter(|&(_, &v)| sig.is_up(v))
            .map(|(i, _)| i + 1)
            .collect();
        let local = Signature::new(sorted.len() - 3, up).expect("cell fits in parent bounds");
        (local, sorted)
    }
}

/// Cells of `w` within the outer polygon given by `outer` (counter-clockwise).
pub(crate) fn cells_within(sig: &Signature, outer: &[Label], w: &[Diagonal]) -> Vec<Cell> {
    let mut cells: Vec<Vec<Label>> = vec![outer.to_vec()];
    for &d in w {
        let idx = cells
            .iter()
            .position(|c| c.contains(&d.a) && c.contains(&d.b))
            .expect("diagonal lies inside one cell");
        let cell = cells.swap_remove(idx);
        let i = cell.iter().position(|&v| v == d.a).expect("present");
        let j = cell.iter().position(|&v| v == d.b).expect("present");
        let (i, j) = (i.min(j), i.max(j));
        let first: Vec<Label> = cell[i..=j].to_vec();
        let mut second: Vec<Label> = cell[j..].to_vec();
        second.extend_from_slice(&cell[..=i]);
        cells.push(first);
        cells.push(second);
    }
    let _ = sig;
    let mut out: Vec<Cell> = cells.into_iter().map(Cell::from_ccw).collect();
    out.sort();
    out
}

/// Cells of a dissection of the whole polygon, sorted by vertex list.
pub fn cells(sig: &Signature, w: &Dissection) -> Vec<Cell> {
    cells_within(sig, sig.cyclic_order(), w.diagonals())
}

/// Maps a dissection of a cell's local polygon back to original labels.
pub(crate) fn lift_diagonals(map: &[Label], ds: &[Diagonal]) -> Vec<Diagonal> {
    ds.iter()
        .map(|d| Diagonal::new(map[d.a], map[d.b]).expect("distinct"))
        .collect()
}

pub fn catalan(k: usize) -> u64 {
    // C(2k, k) / (k + 1)
    let mut c: u64 = 1;
    for i in 0..k as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
