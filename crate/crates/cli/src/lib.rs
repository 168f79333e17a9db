//! Command-line front end: parsing, dispatch and rendering.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a violated invariant,
//! 2 on malformed input. Errors are reported as a single
//! `error: <kind>: <reason>` line on stderr.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use asso_core::cambrian::{
    canopy, fiber, fiber_bounds, flip_digraph, join, kappa, leveled_spine, meet, OrderedPartition, Permutation,
};
use asso_core::geometry::{
    barycenter, build_associahedron, fh_statistics, orbit_barycenter, vertex_point, Rational,
};
use asso_core::minkowski::{
    big_tops, minkowski_report, omega, submodularity_report, BigTop, Divergence, SubsetTable, SubmodularityReport,
    WeightReading,
};
use asso_core::polygon::greedy_extremes;
use asso_core::spine::SpineDoc;
use asso_core::verify::{verify, Level};
use asso_core::{Diagonal, Signature, Triangulation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "asso", version, about = "Associahedra of up/down labeled polygons, via spines")]
struct Cli {
    /// Worker threads for data-parallel enumeration (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Labels 1..n+1 from left to right, `u` for up and `d` for down.
    #[arg(long, short)]
    signature: String,
    #[arg(long, short, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex coordinates of every triangulation.
    Vertices(Common),
    /// Facet inequalities, one per internal diagonal.
    Facets(Common),
    /// Slope-increasing flip graph.
    Flipgraph(Common),
    /// Triangulation of a permutation.
    Kappa {
        #[command(flatten)]
        common: Common,
        /// One-line notation, e.g. `4,6,2,1,7,5,8,3`.
        #[arg(long)]
        perm: String,
    },
    /// Dissection and leveled spine of an ordered partition.
    KappaBar {
        #[command(flatten)]
        common: Common,
        /// Blocks separated by `|`, e.g. `{3,4,6,8}|{1,2,5,7}`.
        #[arg(long)]
        partition: String,
    },
    /// Permutations mapped to a triangulation.
    Fiber {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: Target,
    },
    /// Canopy word of a triangulation.
    Canopy {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: Target,
    },
    /// Minimal and maximal triangulations.
    Extremes(Common),
    /// Lattice meet of two triangulations.
    Meet(Pair),
    /// Lattice join of two triangulations.
    Join(Pair),
    /// Support values, dilation factors and closed-form divergences.
    Minkowski {
        #[command(flatten)]
        common: Common,
        /// Include big tops, corrected readings and supermodularity.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Vertex barycenter, or the barycenter of a dihedral orbit.
    Barycenter {
        #[command(flatten)]
        common: Common,
        /// Triangulation whose orbit is averaged.
        #[arg(long)]
        orbit: Option<String>,
    },
    /// f-vector, h-vector and ordered-arc histogram.
    Hvector(Common),
    /// Run the invariant suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "fast")]
        level: Level,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    perm: Option<String>,
    /// Diagonals such as `0-2,2-4`.
    #[arg(long)]
    triangulation: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Pair {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
}

/// A failure that ends the run with a given exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    reason: String,
}

fn malformed(reason: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        kind: "malformed-input",
        reason: reason.to_string(),
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Parse `args` (including the program name), run, and write to the given streams.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "error: malformed-input: {first}");
            return EXIT_INPUT;
        }
    };
    match with_threads(cli.threads, || dispatch(&cli.command)) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}: {}", f.kind, f.reason.replace('\n', " "));
            f.code
        }
    }
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn signature(common: &Common) -> Result<Signature, Failure> {
    common.signature.parse().map_err(malformed)
}

fn triangulation(sig: &Signature, s: &str) -> Result<Triangulation, Failure> {
    Triangulation::parse(sig, s).map_err(malformed)
}

fn permutation(sig: &Signature, s: &str) -> Result<Permutation, Failure> {
    let p: Permutation = s.parse().map_err(malformed)?;
    if p.len() != sig.n() + 1 {
        return Err(malformed(format!(
            "permutation has {} entries, signature needs {}",
            p.len(),
            sig.n() + 1
        )));
    }
    Ok(p)
}

fn target(sig: &Signature, t: &Target) -> Result<Triangulation, Failure> {
    match (&t.perm, &t.triangulation) {
        (Some(p), _) => Ok(kappa(sig, &permutation(sig, p)?)),
        (None, Some(s)) => triangulation(sig, s),
        (None, None) => Err(malformed("one of --perm or --triangulation is required")),
    }
}

/// Resolve the requested format against the ones a subcommand supports; the first is the default.
fn format(common: &Common, supported: &[Format], command: &str) -> Result<Format, Failure> {
    let f = common.format.unwrap_or(supported[0]);
    if supported.contains(&f) {
        Ok(f)
    } else {
        Err(malformed(format!("format {f:?} not supported by {command}").to_lowercase()))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn diagonals(t: &Triangulation) -> String {
    t.diagonals().iter().map(Diagonal::to_string).collect::<Vec<_>>().join(",")
}

fn tuple(x: &[i64]) -> String {
    let inner: Vec<String> = x.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}

fn ok(text: String) -> Outcome {
    Ok((text, EXIT_OK))
}

#[derive(Serialize)]
struct TriangulationRecord {
    triangulation: Vec<Diagonal>,
    coords: Vec<i64>,
}

impl TriangulationRecord {
    fn new(sig: &Signature, t: &Triangulation) -> TriangulationRecord {
        TriangulationRecord {
            triangulation: t.diagonals().to_vec(),
            coords: vertex_point(sig, t).coords,
        }
    }

    fn text(&self) -> String {
        let ds: Vec<String> = self.triangulation.iter().map(Diagonal::to_string).collect();
        format!("{} {}", tuple(&self.coords), ds.join(","))
    }
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Vertices(c) => {
            let sig = signature(c)?;
            let f = format(c, &[Format::Json, Format::Text], "vertices")?;
            let asso = build_associahedron(&sig);
            let records: Vec<TriangulationRecord> = asso
                .vrep()
                .into_iter()
                .map(|r| TriangulationRecord {
                    triangulation: r.triangulation,
                    coords: r.coords,
                })
                .collect();
            ok(match f {
                Format::Json => json(&records),
                _ => records.iter().map(|r| r.text() + "\n").collect(),
            })
        }
        Command::Facets(c) => {
            let sig = signature(c)?;
            let f = format(c, &[Format::Json, Format::Text], "facets")?;
            let asso = build_associahedron(&sig);
            #[derive(Serialize)]
            struct FacetRecord {
                diagonal: Diagonal,
                support: asso_core::LabelSet,
                rhs: i64,
            }
            ok(match f {
                Format::Json => json(
                    &asso
                        .facets
                        .iter()
                        .map(|(d, h)| FacetRecord {
                            diagonal: *d,
                            support: h.support,
                            rhs: h.rhs,
                        })
                        .collect::<Vec<_>>(),
                ),
                _ => asso.facets.iter().map(|(d, h)| format!("{d} {h}\n")).collect(),
            })
        }
        Command::Flipgraph(c) => {
            let sig = signature(c)?;
            let f = format(c, &[Format::Dot, Format::Json, Format::Text], "flipgraph")?;
            let d = flip_digraph(&sig);
            ok(match f {
                Format::Dot => d.to_dot(&sig),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Graph<'a> {
                        triangulations: Vec<&'a [Diagonal]>,
                        arcs: &'a [(usize, usize)],
                    }
                    json(&Graph {
                        triangulations: d.triangulations.iter().map(|t| t.diagonals()).collect(),
                        arcs: &d.arcs,
                    })
                }
                Format::Text => d.arcs.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect(),
            })
        }
        Command::Kappa { common, perm } => {
            let sig = signature(common)?;
            let f = format(common, &[Format::Json, Format::Text], "kappa")?;
            let t = kappa(&sig, &permutation(&sig, perm)?);
            let r = TriangulationRecord::new(&sig, &t);
            ok(match f {
                Format::Json => json(&r),
                _ => r.text() + "\n",
            })
        }
        Command::KappaBar { common, partition } => {
            let sig = signature(common)?;
            let f = format(common, &[Format::Json, Format::Text], "kappa-bar")?;
            let rho = OrderedPartition::parse(sig.n() + 1, partition).map_err(malformed)?;
            let lev = leveled_spine(&sig, &rho);
            #[derive(Serialize)]
            struct Leveled {
                partition: OrderedPartition,
                dissection: Vec<Diagonal>,
                spine: SpineDoc,
                levels: Vec<usize>,
            }
            let doc = Leveled {
                dissection: lev.spine.diagonals(),
                spine: lev.spine.to_doc(),
                levels: lev.level.clone(),
                partition: rho,
            };
            ok(match f {
                Format::Json => json(&doc),
                _ => {
                    let mut s = format!("dissection {}\n", doc.dissection.iter().map(Diagonal::to_string).collect::<Vec<_>>().join(","));
                    for (node, level) in lev.spine.nodes().iter().zip(&lev.level) {
                        s.push_str(&format!("node {} level {level}\n", node.labels));
                    }
                    s
                }
            })
        }
        Command::Fiber { common, target: tg } => {
            let sig = signature(common)?;
            let f = format(common, &[Format::Json, Format::Text], "fiber")?;
            let t = target(&sig, tg)?;
            let perms = fiber(&sig, &t);
            let (min, max) = fiber_bounds(&sig, &t);
            #[derive(Serialize)]
            struct FiberDoc {
                triangulation: Vec<Diagonal>,
                size: usize,
                min: Permutation,
                max: Permutation,
                permutations: Vec<Permutation>,
            }
            let doc = FiberDoc {
                triangulation: t.diagonals().to_vec(),
                size: perms.len(),
                min,
                max,
                permutations: perms,
            };
            ok(match f {
                Format::Json => json(&doc),
                _ => format!("size {}\nmin {:?}\nmax {:?}\n", doc.size, doc.min, doc.max),
            })
        }
        Command::Canopy { common, target: tg } => {
            let sig = signature(common)?;
            let f = format(common, &[Format::Json, Format::Text], "canopy")?;
            let t = target(&sig, tg)?;
            let word = canopy(&sig, t.as_dissection());
            ok(match f {
                Format::Json => json(&word),
                _ => format!("{word}\n"),
            })
        }
        Command::Extremes(c) => {
            let sig = signature(c)?;
            let f = format(c, &[Format::Json, Format::Text], "extremes")?;
            let (lo, hi) = greedy_extremes(&sig);
            #[derive(Serialize)]
            struct Extremes {
                min: TriangulationRecord,
                max: TriangulationRecord,
            }
            let doc = Extremes {
                min: TriangulationRecord::new(&sig, &lo),
                max: TriangulationRecord::new(&sig, &hi),
            };
            ok(match f {
                Format::Json => json(&doc),
                _ => format!("min {}\nmax {}\n", doc.min.text(), doc.max.text()),
            })
        }
        Command::Meet(p) | Command::Join(p) => {
            let is_meet = matches!(command, Command::Meet(_));
            let name = if is_meet { "meet" } else { "join" };
            let sig = signature(&p.common)?;
            let f = format(&p.common, &[Format::Json, Format::Text], name)?;
            let (a, b) = (triangulation(&sig, &p.left)?, triangulation(&sig, &p.right)?);
            let t = if is_meet { meet(&sig, &a, &b) } else { join(&sig, &a, &b) };
            let r = TriangulationRecord::new(&sig, &t);
            ok(match f {
                Format::Json => json(&r),
                _ => format!("{}\n", diagonals(&t)),
            })
        }
        Command::Minkowski { common, diagnostics } => {
            let sig = signature(common)?;
            format(common, &[Format::Json], "minkowski")?;
            let r = minkowski_report(&sig);
            #[derive(Serialize)]
            struct TopDoc {
                #[serde(flatten)]
                top: BigTop,
                omega: i64,
                omega_blossoms: i64,
            }
            #[derive(Serialize)]
            struct Extra {
                big_tops: Vec<TopDoc>,
                path_z_divergences: Vec<Divergence>,
                blossom_y_divergences: Vec<Divergence>,
                supermodularity: SubmodularityReport,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                z: &'a SubsetTable,
                y: &'a SubsetTable,
                closed_form_z_divergences: &'a [Divergence],
                closed_form_y_divergences: &'a [Divergence],
                #[serde(flatten, skip_serializing_if = "Option::is_none")]
                diagnostics: Option<Extra>,
            }
            let extra = diagnostics.then(|| Extra {
                big_tops: big_tops(&sig)
                    .into_iter()
                    .map(|top| TopDoc {
                        omega: omega(&sig, &top, WeightReading::Above),
                        omega_blossoms: omega(&sig, &top, WeightReading::Blossoms),
                        top,
                    })
                    .collect(),
                path_z_divergences: r.path_z_divergences.clone(),
                blossom_y_divergences: r.blossom_y_divergences.clone(),
                supermodularity: submodularity_report(&r.z),
            });
            ok(json(&Doc {
                z: &r.z,
                y: &r.y,
                closed_form_z_divergences: &r.closed_form_z_divergences,
                closed_form_y_divergences: &r.closed_form_y_divergences,
                diagnostics: extra,
            }))
        }
        Command::Barycenter { common, orbit } => {
            let sig = signature(common)?;
            let f = format(common, &[Format::Json, Format::Text], "barycenter")?;
            let b = match orbit {
                Some(s) => orbit_barycenter(&sig, &triangulation(&sig, s)?),
                None => barycenter(&sig),
            };
            let b = rationals(&b);
            ok(match f {
                Format::Json => json(&b),
                _ => format!("({})\n", b.join(",")),
            })
        }
        Command::Hvector(c) => {
            let sig = signature(c)?;
            let f = format(c, &[Format::Json, Format::Text], "hvector")?;
            let st = fh_statistics(&sig);
            let list = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            ok(match f {
                Format::Json => json(&st),
                _ => format!(
                    "f {}\nh {}\nordered-arcs {}\nnarayana {}\n",
                    list(&st.f),
                    list(&st.h),
                    list(&st.ordered_arcs),
                    list(&st.narayana)
                ),
            })
        }
        Command::Verify { common, level } => {
            let sig = signature(common)?;
            let f = format(common, &[Format::Text, Format::Json], "verify")?;
            let report = verify(&sig, *level);
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY };
            let text = match f {
                Format::Json => json(&report),
                _ => report.to_text(),
            };
            Ok((text, code))
        }
    }
}
