//! Exact vertex and facet descriptions of the associahedron, the
//! permutahedron it is carved from, barycenters and face statistics.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{AssoError, Result};
use crate::exec;
use crate::labels::LabelSet;
use crate::polygon::{
    binomial, dihedral_apply, dihedral_group, enumerate_dissections, enumerate_triangulations,
    flip, side_sets, Diagonal, Dissection, Label, Signature, Triangulation,
};
use crate::spine::{chor_counts, spine_of, Direction, Spine};

/// The point of a triangulation together with the blossom counts it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPoint {
    pub coords: Vec<i64>,
    pub chor: BTreeMap<Label, i64>,
}

pub fn point_from_chor(sig: &Signature, chor: &BTreeMap<Label, i64>) -> Vec<i64> {
    let top = sig.last() as i64;
    (1..=sig.n() + 1)
        .map(|j| if sig.is_up(j) { top - chor[&j] } else { chor[&j] })
        .collect()
}

pub fn vertex_point(sig: &Signature, t: &Triangulation) -> VertexPoint {
    let chor = chor_counts(&spine_of(sig, t.as_dissection())).expect("triangulation spine");
    VertexPoint {
        coords: point_from_chor(sig, &chor),
        chor,
    }
}

/// `Σ_{j∈support} x_j ≥ rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Halfspace {
    pub support: LabelSet,
    pub rhs: i64,
}

impl Halfspace {
    pub fn value(&self, x: &[i64]) -> i64 {
        self.support.iter().map(|j| x[j - 1]).sum()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.value(x) >= self.rhs
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.value(x) == self.rhs
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ineq J={} rhs={}", self.support.iter().join(","), self.rhs)
    }
}

/// Half-space of a diagonal: support `Bel(d)`, right-hand side `C(|Bel(d)|+1, 2)`.
/// Top boundary edges give the ambient hyperplane, bottom ones are rejected.
pub fn facet_halfspace(sig: &Signature, d: Diagonal) -> Result<Halfspace> {
    sig.check_label(d.b)?;
    if sig.is_bottom_edge(d) {
        return Err(AssoError::BottomBoundary(format!("{d:?}")));
    }
    let bel = side_sets(sig, d).1;
    Ok(Halfspace {
        support: bel,
        rhs: binomial(bel.len() as i64 + 1, 2),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Incidence {
    StrictlyInside,
    OnHyperplane,
}

/// Position of `x(t)` relative to the hyperplane of `d`, computed from coordinates.
pub fn check_incidence(sig: &Signature, t: &Triangulation, d: Diagonal) -> Result<Incidence> {
    let h = facet_halfspace(sig, d)?;
    let x = vertex_point(sig, t).coords;
    Ok(if h.is_tight(&x) {
        Incidence::OnHyperplane
    } else {
        Incidence::StrictlyInside
    })
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for k in c + 1..cols {
                m[i][k] = (m[r][c] * m[i][k] - m[i][c] * m[r][k]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of `points` (`-1` encoded as `None` for no points).
pub fn affine_dimension(points: &[Vec<i64>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<i64>> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

#[derive(Clone, Debug, Serialize)]
pub struct Associahedron {
    pub triangulations: Vec<Triangulation>,
    pub vertices: Vec<VertexPoint>,
    pub facets: Vec<(Diagonal, Halfspace)>,
    /// `incidence[v][f]`: vertex `v` lies on facet `f`.
    pub incidence: Vec<Vec<bool>>,
}

pub fn build_associahedron(sig: &Signature) -> Associahedron {
    let triangulations = enumerate_triangulations(sig);
    let vertices = exec::map(&triangulations, |t| vertex_point(sig, t));
    let facets: Vec<(Diagonal, Halfspace)> = sig
        .internal_diagonals()
        .into_iter()
        .map(|d| (d, facet_halfspace(sig, d).expect("internal")))
        .collect();
    let incidence = exec::map(&vertices, |v| {
        facets.iter().map(|(_, h)| h.is_tight(&v.coords)).collect()
    });
    Associahedron {
        triangulations,
        vertices,
        facets,
        incidence,
    }
}

impl Associahedron {
    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        self.triangulations.binary_search(t).ok()
    }

    /// Every vertex satisfies every inequality.
    pub fn all_vertices_inside(&self) -> bool {
        exec::all(&self.vertices, |v| {
            self.facets.iter().all(|(_, h)| h.contains(&v.coords))
        })
    }

    /// Tight facets of each vertex are exactly the diagonals of its triangulation.
    pub fn incidence_matches_containment(&self) -> bool {
        self.triangulations.iter().zip(&self.incidence).all(|(t, row)| {
            self.facets
                .iter()
                .zip(row)
                .all(|((d, _), &tight)| tight == t.contains(*d))
        })
    }

    /// The flip neighbors of each vertex span an `n`-dimensional cone.
    pub fn flip_stars_independent(&self, sig: &Signature) -> bool {
        exec::map_range(self.triangulations.len(), |i| {
            let t = &self.triangulations[i];
            let x = &self.vertices[i].coords;
            let rows: Vec<Vec<i64>> = t
                .diagonals()
                .iter()
                .map(|&d| {
                    let (t2, _) = flip(sig, t, d).expect("diagonal of t");
                    let y = &self.vertices[self.index_of(&t2).expect("enumerated")].coords;
                    y.iter().zip(x).map(|(a, b)| a - b).collect()
                })
                .collect();
            rank(&rows) == sig.n()
        })
        .into_iter()
        .all(|ok| ok)
    }

    /// V-representation rows for export.
    pub fn vrep(&self) -> Vec<VertexRecord> {
        self.triangulations
            .iter()
            .zip(&self.vertices)
            .map(|(t, v)| VertexRecord {
                triangulation: t.diagonals().to_vec(),
                coords: v.coords.clone(),
            })
            .collect()
    }

    /// H-representation, one line per facet.
    pub fn hrep_text(&self) -> String {
        self.facets.iter().map(|(_, h)| format!("{h}\n")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRecord {
    pub triangulation: Vec<Diagonal>,
    pub coords: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Indices into the sorted triangulation list.
    pub vertices: Vec<usize>,
    pub tight: Vec<Diagonal>,
    /// Diagonals compatible with but not in the dissection: the face's own facets.
    pub facets: Vec<Diagonal>,
}

pub fn face_of_dissection(sig: &Signature, w: &Dissection) -> Face {
    let vertices = enumerate_triangulations(sig)
        .iter()
        .enumerate()
        .filter(|(_, t)| t.refines(w))
        .map(|(i, _)| i)
        .collect();
    let facets = sig
        .internal_diagonals()
        .into_iter()
        .filter(|&d| {
            !w.contains(d)
                && w
                    .diagonals()
                    .iter()
                    .all(|&e| !crate::polygon::crosses(sig, d, e))
        })
        .collect();
    Face {
        vertices,
        tight: w.diagonals().to_vec(),
        facets,
    }
}

/// Vertices (all permutations of `1..=n+1`, lexicographic) and facets of the permutahedron.
pub fn permutahedron(n: usize) -> (Vec<Vec<i64>>, Vec<Halfspace>) {
    let vertices = (1..=n as i64 + 1).permutations(n + 1).collect();
    let full = LabelSet::range(1, n + 1);
    let facets = (1u64..(1 << (n + 1)) - 1)
        .map(|mask| {
            let support = LabelSet(mask << 1);
            Halfspace {
                support,
                rhs: binomial(support.len() as i64 + 1, 2),
            }
        })
        .filter(|h| h.support != full)
        .collect();
    (vertices, facets)
}

pub type Rational = Ratio<i64>;

fn mean(points: &[Vec<i64>]) -> Vec<Rational> {
    let dim = points.first().map_or(0, Vec::len);
    let count = points.len() as i64;
    (0..dim)
        .map(|j| Rational::new(points.iter().map(|p| p[j]).sum(), count))
        .collect()
}

/// Vertex barycenter of the associahedron.
pub fn barycenter(sig: &Signature) -> Vec<Rational> {
    let ts = enumerate_triangulations(sig);
    let points = exec::map(&ts, |t| vertex_point(sig, t).coords);
    mean(&points)
}

/// Mean of `x(g·t)` over all dihedral group elements `g`, with multiplicity.
pub fn orbit_barycenter(sig: &Signature, t: &Triangulation) -> Vec<Rational> {
    let points: Vec<Vec<i64>> = dihedral_group(sig)
        .into_iter()
        .map(|g| vertex_point(sig, &dihedral_apply(sig, g, t)).coords)
        .collect();
    mean(&points)
}

/// `Σ_g chor_{g·t}(j)` for each label `j`.
pub fn orbit_chor_sums(sig: &Signature, t: &Triangulation) -> BTreeMap<Label, i64> {
    let mut sums: BTreeMap<Label, i64> = BTreeMap::new();
    for g in dihedral_group(sig) {
        for (j, c) in vertex_point(sig, &dihedral_apply(sig, g, t)).chor {
            *sums.entry(j).or_insert(0) += c;
        }
    }
    sums
}

/// Arcs whose source label is smaller than their target label.
pub fn ordered_arc_count(s: &Spine) -> usize {
    s.arcs()
        .iter()
        .filter(|a| s.nodes()[a.from].labels.min() < s.nodes()[a.to].labels.min())
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FhStatistics {
    /// `f[k]`: number of `k`-dimensional faces.
    pub f: Vec<i64>,
    /// Coefficients of `h(X) = f(X - 1)`.
    pub h: Vec<i64>,
    /// Triangulations by number of ordered arcs in their spine.
    pub ordered_arcs: Vec<i64>,
    /// `C(n+1, l) C(n+1, l+1) / (n+1)`, for comparison.
    pub narayana: Vec<i64>,
}

pub fn h_from_f(f: &[i64]) -> Vec<i64> {
    (0..f.len())
        .map(|l| {
            (l..f.len())
                .map(|k| {
                    let sign = if (k - l) % 2 == 0 { 1 } else { -1 };
                    sign * f[k] * binomial(k as i64, l as i64)
                })
                .sum()
        })
        .collect()
}

pub fn narayana(n: usize, l: usize) -> i64 {
    let m = n as i64 + 1;
    binomial(m, l as i64) * binomial(m, l as i64 + 1) / m
}

pub fn fh_statistics(sig: &Signature) -> FhStatistics {
    let n = sig.n();
    let f: Vec<i64> = (0..=n)
        .map(|k| enumerate_dissections(sig, n - k).len() as i64)
        .collect();
    let h = h_from_f(&f);
    let ts = enumerate_triangulations(sig);
    let counts = exec::map(&ts, |t| ordered_arc_count(&spine_of(sig, t.as_dissection())));
    let mut ordered_arcs = vec![0; n + 1];
    for c in counts {
        ordered_arcs[c] += 1;
    }
    FhStatistics {
        f,
        h,
        ordered_arcs,
        narayana: (0..=n).map(|l| narayana(n, l)).collect(),
    }
}

/// Permutations of `[m]` counted by descents.
pub fn eulerian(m: usize) -> Vec<i64> {
    let mut counts = vec![0; m.max(1)];
    for p in (1..=m).permutations(m) {
        let descents = p.windows(2).filter(|w| w[0] > w[1]).count();
        counts[descents] += 1;
    }
    counts
}

/// Flip of `t` along `d` seen as an edge of the polytope: the two
/// intermediate labels of the quadrilateral and the direction of `d`'s arc.
pub fn flip_edge(sig: &Signature, t: &Triangulation, d: Diagonal) -> Result<(Label, Label, Direction)> {
    let (_, d2) = flip(sig, t, d)?;
    let mut quad = [d.a, d.b, d2.a, d2.b];
    quad.sort();
    let (i, j) = (quad[1], quad[2]);
    let sp = spine_of(sig, t.as_dissection());
    let arc = sp.arcs()[sp.arc_of(d).expect("arc of d")];
    let from = sp.nodes()[arc.from].labels.min().expect("label");
    Ok((i, j, if from == i { Direction::Out } else { Direction::In }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{catalan, greedy_extremes};

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn dg(a: Label, b: Label) -> Diagonal {
        Diagonal::new(a, b).unwrap()
    }

    #[test]
    fn square_points() {
        let s = sig("dd");
        let a = Triangulation::new(&s, vec![dg(0, 2)]).unwrap();
        let b = Triangulation::new(&s, vec![dg(1, 3)]).unwrap();
        assert_eq!(vertex_point(&s, &a).coords, vec![1, 2]);
        assert_eq!(vertex_point(&s, &b).coords, vec![2, 1]);
        let asso = build_associahedron(&s);
        assert_eq!(asso.facets.len(), 2);
        let supports: Vec<(Vec<usize>, i64)> =
            asso.facets.iter().map(|(_, h)| (h.support.to_vec(), h.rhs)).collect();
        assert_eq!(supports, vec![(vec![1], 1), (vec![2], 1)]);
    }

    #[test]
    fn facet_examples() {
        let s = sig("duududud");
        let h = facet_halfspace(&s, dg(2, 8)).unwrap();
        assert_eq!((h.support.to_vec(), h.rhs), (vec![1, 2, 4, 6], 10));
        let h = facet_halfspace(&s, dg(3, 9)).unwrap();
        assert_eq!((h.support.to_vec(), h.rhs), (vec![1, 2, 3, 4, 6, 8], 21));
        assert!(matches!(facet_halfspace(&s, dg(0, 1)), Err(AssoError::BottomBoundary(_))));
        let top = facet_halfspace(&s, dg(0, 2)).unwrap();
        assert_eq!((top.support, top.rhs), (s.labels(), 36));
        assert_eq!(h.to_string(), "ineq J=1,2,3,4,6,8 rhs=21");
        let loday = Signature::loday(5);
        for i in 0..=7 {
            for j in i + 2..=7 {
                let d = dg(i, j);
                if loday.is_internal(d) {
                    let h = facet_halfspace(&loday, d).unwrap();
                    assert_eq!(h.support, LabelSet::range(i + 1, j - 1));
                    assert_eq!(h.rhs, binomial((j - i) as i64, 2));
                }
            }
        }
    }

    #[test]
    fn polytope_structure() {
        for n in 1..=5 {
            for s in Signature::all(n) {
                let asso = build_associahedron(&s);
                assert_eq!(asso.vertices.len() as u64, catalan(n + 1));
                assert_eq!(asso.facets.len(), n * (n + 3) / 2);
                assert!(asso.all_vertices_inside());
                assert!(asso.incidence_matches_containment());
                assert!(asso.incidence.iter().all(|row| row.iter().filter(|&&b| b).count() == n));
                assert!(asso.flip_stars_independent(&s));
                let total = binomial(n as i64 + 2, 2);
                assert!(asso.vertices.iter().all(|v| v.coords.iter().sum::<i64>() == total));
            }
        }
    }

    #[test]
    fn extremes_have_monotone_points() {
        for n in 0..=6 {
            for s in Signature::all(n) {
                let (tmin, tmax) = greedy_extremes(&s);
                let up: Vec<i64> = (1..=n as i64 + 1).collect();
                let down: Vec<i64> = up.iter().rev().copied().collect();
                assert_eq!(vertex_point(&s, &tmin).coords, up);
                assert_eq!(vertex_point(&s, &tmax).coords, down);
            }
        }
    }

    #[test]
    fn edge_law() {
        for n in 1..=5 {
            for s in Signature::all(n) {
                for t in enumerate_triangulations(&s) {
                    let x = vertex_point(&s, &t).coords;
                    for &d in t.diagonals() {
                        let (t2, _) = flip(&s, &t, d).unwrap();
                        let y = vertex_point(&s, &t2).coords;
                        let (i, j, dir) = flip_edge(&s, &t, d).unwrap();
                        let diff: Vec<i64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
                        let alpha = diff[i - 1];
                        let sign = if dir == Direction::Out { 1 } else { -1 };
                        assert!(alpha * sign > 0);
                        assert_eq!(diff[j - 1], -alpha);
                        assert_eq!(diff.iter().filter(|&&v| v != 0).count(), 2);
                    }
                }
            }
        }
    }

    #[test]
    fn face_dimensions() {
        for n in 1..=4 {
            for s in Signature::all(n) {
                let ts = enumerate_triangulations(&s);
                let points: Vec<Vec<i64>> = ts.iter().map(|t| vertex_point(&s, t).coords).collect();
                for k in 0..=n {
                    for w in enumerate_dissections(&s, k) {
                        let face = face_of_dissection(&s, &w);
                        let pts: Vec<Vec<i64>> = face.vertices.iter().map(|&i| points[i].clone()).collect();
                        assert_eq!(affine_dimension(&pts), Some(n - k));
                        for &i in &face.vertices {
                            for &d in w.diagonals() {
                                assert!(facet_halfspace(&s, d).unwrap().is_tight(&points[i]));
                            }
                        }
                    }
                }
                let whole = face_of_dissection(&s, &Dissection::empty());
                assert_eq!(whole.vertices.len(), ts.len());
                assert!(whole.tight.is_empty());
                let single = face_of_dissection(&s, ts[0].as_dissection());
                assert_eq!(single.vertices, vec![0]);
                assert_eq!(single.tight.len(), n);
            }
        }
    }

    #[test]
    fn permutahedron_examples() {
        let (v, f) = permutahedron(1);
        assert_eq!(v, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(f.len(), 2);
        let (v, f) = permutahedron(2);
        assert_eq!((v.len(), f.len()), (6, 6));
        let (_, f) = permutahedron(4);
        for s in Signature::all(4) {
            for d in s.internal_diagonals() {
                assert!(f.contains(&facet_halfspace(&s, d).unwrap()));
            }
        }
    }

    #[test]
    fn barycenters() {
        assert_eq!(barycenter(&sig("dd")), vec![Rational::new(3, 2); 2]);
        for n in 0..=5 {
            for s in Signature::all(n) {
                let expect = vec![Rational::new(n as i64 + 2, 2); n + 1];
                assert_eq!(barycenter(&s), expect);
            }
        }
        let s = sig("duududud");
        assert_eq!(barycenter(&s), vec![Rational::new(9, 2); 8]);
    }

    #[test]
    fn orbit_identity() {
        for n in 0..=4 {
            for s in Signature::all(n) {
                for t in enumerate_triangulations(&s) {
                    let sums = orbit_chor_sums(&s, &t);
                    assert!(sums.values().all(|&v| v == ((n + 2) * (n + 3)) as i64));
                    assert_eq!(orbit_barycenter(&s, &t), vec![Rational::new(n as i64 + 2, 2); n + 1]);
                }
            }
        }
    }

    #[test]
    fn statistics_n3() {
        for s in Signature::all(3) {
            let st = fh_statistics(&s);
            assert_eq!(st.f, vec![14, 21, 9, 1]);
            assert_eq!(st.h, vec![1, 6, 6, 1]);
            assert_eq!(st.ordered_arcs, vec![1, 6, 6, 1]);
            assert_eq!(st.narayana, vec![1, 6, 6, 1]);
        }
        assert_eq!(eulerian(3), vec![1, 4, 1]);
    }

    #[test]
    fn statistics_are_signature_independent() {
        for n in 0..=5 {
            let reference = fh_statistics(&Signature::loday(n));
            for s in Signature::all(n) {
                let st = fh_statistics(&s);
                assert_eq!(st, reference);
                assert_eq!(st.h, st.ordered_arcs);
                let rev: Vec<i64> = st.h.iter().rev().copied().collect();
                assert_eq!(st.h, rev);
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 0]]), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![2, 3, 5], vec![7, 11, 13], vec![17, 19, 23]]), 3);
    }
}
