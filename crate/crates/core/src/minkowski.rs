//! Generalized-permutahedron data: tight right hand sides `z_J`, dilation
//! factors `y_I` and the closed-form big top weights.
//!
//! The geometric values (vertex minima and their Möbius inverse) are the
//! reference. The closed forms are kept as diagnostics and every
//! disagreement is reported rather than hidden.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::cambrian::{kappa_bar, spine_preposet, sweep_path, OrderedPartition};
use crate::exec;
use crate::geometry::{vertex_point, Rational};
use crate::labels::LabelSet;
use crate::polygon::{binomial, enumerate_triangulations, side_sets, Diagonal, Dissection, Label, Signature};
use crate::spine::spine_of;

/// Subsets of `[n+1]`, ordered by cardinality and then lexicographically.
pub fn subsets_in_report_order(n: usize) -> Vec<LabelSet> {
    let mut all: Vec<LabelSet> = (1u64..1 << (n + 1)).map(|mask| LabelSet(mask << 1)).collect();
    all.sort_by(LabelSet::report_cmp);
    all
}

fn index(set: LabelSet) -> usize {
    (set.0 >> 1) as usize
}

/// A value for every subset of `[n+1]`, stored by bitmask; the empty set holds 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetTable {
    n: usize,
    values: Vec<i64>,
}

impl SubsetTable {
    fn from_fn(n: usize, f: impl Fn(LabelSet) -> i64 + Sync + Send) -> SubsetTable {
        let values = exec::map_range(1 << (n + 1), |mask| {
            if mask == 0 {
                0
            } else {
                f(LabelSet((mask as u64) << 1))
            }
        });
        SubsetTable { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, set: LabelSet) -> i64 {
        self.values[index(set)]
    }

    /// Nonempty subsets with their values, in report order.
    pub fn entries(&self) -> Vec<(LabelSet, i64)> {
        subsets_in_report_order(self.n)
            .into_iter()
            .map(|s| (s, self.get(s)))
            .collect()
    }

    /// Subset-sum transform: `out[J] = Σ_{I⊆J} self[I]`.
    pub fn zeta(&self) -> SubsetTable {
        let mut values = self.values.clone();
        for bit in 0..=self.n {
            for mask in 0..values.len() {
                if mask >> bit & 1 == 1 {
                    values[mask] += values[mask ^ 1 << bit];
                }
            }
        }
        SubsetTable { n: self.n, values }
    }

    /// Inverse of [`SubsetTable::zeta`].
    pub fn mobius(&self) -> SubsetTable {
        let mut values = self.values.clone();
        for bit in 0..=self.n {
            for mask in 0..values.len() {
                if mask >> bit & 1 == 1 {
                    values[mask] -= values[mask ^ 1 << bit];
                }
            }
        }
        SubsetTable { n: self.n, values }
    }
}

impl Serialize for SubsetTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = self.entries();
        let mut map = serializer.serialize_map(Some(entries.len()))?;
        for (set, value) in entries {
            let key = set.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(",");
            map.serialize_entry(&key, &value)?;
        }
        map.end()
    }
}

/// `z_J = min_T Σ_{j∈J} x_j(T)`, tight by construction.
pub fn support_values(sig: &Signature) -> SubsetTable {
    let points: Vec<Vec<i64>> = enumerate_triangulations(sig)
        .iter()
        .map(|t| vertex_point(sig, t).coords)
        .collect();
    SubsetTable::from_fn(sig.n(), |set| {
        points
            .iter()
            .map(|x| set.iter().map(|j| x[j - 1]).sum::<i64>())
            .min()
            .expect("at least one vertex")
    })
}

/// Dilation factors `y_I` of the Minkowski decomposition into simplex faces.
pub fn mobius_y(z: &SubsetTable) -> SubsetTable {
    z.mobius()
}

fn choose2(k: usize) -> i64 {
    binomial(k as i64 + 1, 2)
}

fn bel_weight(sig: &Signature, d: Diagonal) -> i64 {
    choose2(side_sets(sig, d).1.len())
}

/// The dissection whose face minimizes `Σ_{j∈J} x_j`: sweep paths of `∅`, `J` and `[n+1]`.
pub fn minimizing_dissection(sig: &Signature, set: LabelSet) -> Dissection {
    let rest = sig.labels().difference(set);
    let blocks: Vec<LabelSet> = [set, rest].into_iter().filter(|b| !b.is_empty()).collect();
    let rho = OrderedPartition::new(sig.n() + 1, blocks).expect("two complementary blocks");
    kappa_bar(sig, &rho)
}

/// Closed form for `z_J`, read with the sum over the internal diagonals of
/// the minimizing dissection together with every boundary edge.
pub fn closed_form_z(sig: &Signature, set: LabelSet) -> i64 {
    let w = minimizing_dissection(sig, set);
    let sum: i64 = w
        .diagonals()
        .iter()
        .chain(sig.boundary_edges().iter())
        .map(|&d| bel_weight(sig, d))
        .sum();
    sum - choose2(sig.n() + 1) * set.intersection(sig.up()).len() as i64
}

/// Same closed form summed along the single sweep path `0, D △ J, n+2`.
pub fn path_z(sig: &Signature, set: LabelSet) -> i64 {
    let path = sweep_path(sig, set);
    let sum: i64 = path
        .windows(2)
        .map(|w| bel_weight(sig, Diagonal::new(w[0], w[1]).expect("increasing path")))
        .sum();
    sum - choose2(sig.n() + 1) * set.intersection(sig.up()).len() as i64
}

/// A cell whose lower hull runs along the lower hull of the polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigTop {
    pub labels: LabelSet,
    /// Vertices of the cell in x-order.
    pub cell: Vec<Label>,
    pub left_edge: Diagonal,
    pub right_edge: Diagonal,
}

/// The big top with intermediate vertices `set`, if there is one.
///
/// Its extreme vertices are forced: the nearest lower-hull vertices outside
/// the span of `set`. It exists iff no down label inside the span is missing.
pub fn big_top(sig: &Signature, set: LabelSet) -> Option<BigTop> {
    let (lo, hi) = (set.min()?, set.max()?);
    let down = sig.down();
    if !down.intersection(LabelSet::range(lo, hi)).is_subset(set) {
        return None;
    }
    let left = down.intersection(LabelSet::range(1, lo - 1)).max().unwrap_or(0);
    let right = down
        .intersection(LabelSet::range(hi + 1, sig.n() + 1))
        .min()
        .unwrap_or(sig.last());
    let mut cell = vec![left];
    cell.extend(set.iter());
    cell.push(right);
    Some(BigTop {
        labels: set,
        left_edge: Diagonal::new(left, lo).expect("left < lo"),
        right_edge: Diagonal::new(hi, right).expect("hi < right"),
        cell,
    })
}

pub fn big_tops(sig: &Signature) -> Vec<BigTop> {
    subsets_in_report_order(sig.n())
        .into_iter()
        .filter_map(|s| big_top(sig, s))
        .collect()
}

/// How `ℓ(C)` and `r(C)` are read off a cell edge that is not on its lower hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightReading {
    /// The number of labels above the edge.
    Above,
    /// The number of blossoms beyond the dual arc, one more than the labels above.
    Blossoms,
}

fn side_weight(sig: &Signature, edge: Diagonal, inner: Label, reading: WeightReading) -> i64 {
    if sig.is_down(inner) {
        return -1;
    }
    let abo = side_sets(sig, edge).0.len() as i64;
    match reading {
        WeightReading::Above => abo,
        WeightReading::Blossoms => abo + 1,
    }
}

/// `Ω(C) = (-1)^{|C∩U|} ℓ(C) r(C)`.
pub fn omega(sig: &Signature, top: &BigTop, reading: WeightReading) -> i64 {
    let sign = if top.labels.intersection(sig.up()).len() % 2 == 0 { 1 } else { -1 };
    let lo = top.labels.min().expect("nonempty");
    let hi = top.labels.max().expect("nonempty");
    sign * side_weight(sig, top.left_edge, lo, reading) * side_weight(sig, top.right_edge, hi, reading)
}

/// Closed-form dilation factor: zero off big tops, shifted by `n+2` on up singletons.
pub fn closed_form_y(sig: &Signature, set: LabelSet, reading: WeightReading) -> i64 {
    let Some(top) = big_top(sig, set) else {
        return 0;
    };
    let w = omega(sig, &top, reading);
    if set.len() == 1 && sig.is_up(set.min().expect("nonempty")) {
        w + sig.last() as i64
    } else {
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub set: LabelSet,
    pub formula: i64,
    pub geometric: i64,
}

fn divergences(reference: &SubsetTable, formula: impl Fn(LabelSet) -> i64 + Sync + Send) -> Vec<Divergence> {
    let sets = subsets_in_report_order(reference.n());
    exec::map(&sets, |&set| (set, formula(set)))
        .into_iter()
        .filter(|&(set, value)| value != reference.get(set))
        .map(|(set, value)| Divergence {
            set,
            formula: value,
            geometric: reference.get(set),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkowskiReport {
    pub z: SubsetTable,
    pub y: SubsetTable,
    pub closed_form_z_divergences: Vec<Divergence>,
    pub closed_form_y_divergences: Vec<Divergence>,
    pub path_z_divergences: Vec<Divergence>,
    pub blossom_y_divergences: Vec<Divergence>,
}

impl MinkowskiReport {
    pub fn round_trip_exact(&self) -> bool {
        self.y.zeta() == self.z
    }
}

pub fn minkowski_report(sig: &Signature) -> MinkowskiReport {
    let z = support_values(sig);
    let y = mobius_y(&z);
    MinkowskiReport {
        closed_form_z_divergences: divergences(&z, |s| closed_form_z(sig, s)),
        closed_form_y_divergences: divergences(&y, |s| closed_form_y(sig, s, WeightReading::Above)),
        path_z_divergences: divergences(&z, |s| path_z(sig, s)),
        blossom_y_divergences: divergences(&y, |s| closed_form_y(sig, s, WeightReading::Blossoms)),
        z,
        y,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubmodularityReport {
    pub pairs: usize,
    pub violations: Vec<(LabelSet, LabelSet)>,
}

/// Checks `z_I + z_J ≤ z_{I∪J} + z_{I∩J}` over all pairs, with `z_∅ = 0`.
pub fn submodularity_report(z: &SubsetTable) -> SubmodularityReport {
    let sets = subsets_in_report_order(z.n());
    let rows = exec::map(&sets, |&i| {
        sets.iter()
            .filter(|&&j| z.get(i) + z.get(j) > z.get(i.union(j)) + z.get(i.intersection(j)))
            .map(|&j| (i, j))
            .collect::<Vec<_>>()
    });
    SubmodularityReport {
        pairs: sets.len() * sets.len(),
        violations: rows.into_iter().flatten().collect(),
    }
}

/// Internal diagonals `δ` with `z_{Bel(δ)} ≠ C(bel(δ)+1, 2)`.
pub fn facet_support_mismatches(sig: &Signature, z: &SubsetTable) -> Vec<Diagonal> {
    sig.internal_diagonals()
        .into_iter()
        .filter(|&d| {
            let bel = side_sets(sig, d).1;
            bel.is_empty() || z.get(bel) != choose2(bel.len())
        })
        .collect()
}

/// For every `J`, the common diagonals of the minimizing vertices form the
/// sweep dissection of `(J, [n+1]∖J)`, and its spine cone contains `-1_J`.
pub fn support_faces_consistent(sig: &Signature, z: &SubsetTable) -> bool {
    let ts = enumerate_triangulations(sig);
    let points: Vec<Vec<i64>> = ts.iter().map(|t| vertex_point(sig, t).coords).collect();
    let sets = subsets_in_report_order(sig.n());
    exec::all(&sets, |&set| {
        let value = |x: &Vec<i64>| set.iter().map(|j| x[j - 1]).sum::<i64>();
        let mut face: Option<Dissection> = None;
        for (t, x) in ts.iter().zip(&points) {
            if value(x) == z.get(set) {
                face = Some(match face {
                    None => t.as_dissection().clone(),
                    Some(w) => w.intersection(t.as_dissection()),
                });
            }
        }
        let Some(face) = face else {
            return false;
        };
        let u: Vec<Rational> = (1..=sig.n() + 1)
            .map(|j| Rational::from_integer(if set.contains(j) { -1 } else { 0 }))
            .collect();
        face == minimizing_dissection(sig, set) && spine_preposet(&spine_of(sig, &face)).cone_contains(&u)
    })
}
