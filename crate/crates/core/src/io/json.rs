//! JSON documents for periodic graphs, colourings, orientations and
//! reduction traces. Output is canonical: fixed key order, one array entry
//! per line for long arrays.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::colouring::{quotient_mod_subgroup, PeriodicColouring, QuotientColouring};
use crate::error::{Error, Result};
use crate::euclid::{
    format_fraction, parse_fraction, translation_subgroup, EuclideanIsometry, Lattice, Mat2, Metric, Vec2,
    DEFAULT_WORD_BOUND,
};
use crate::hyp::{CosetTable, FuchsianPresentation, MoebiusMatrix, Signature, Word};
use crate::voltage::{Dart, PeriodicGraph, SubgroupDescriptor, Voltage, VoltageGroup};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    orbits: usize,
    darts: Vec<(usize, usize, VoltageDoc)>,
    geometry: Vec<[f64; 2]>,
    group: GroupDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum VoltageDoc {
    Lattice([i64; 2]),
    Word(String),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
enum GroupDoc {
    Euclidean(EuclideanDoc),
    Fuchsian(FuchsianDoc),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EuclideanDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<[[String; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<[[String; 2]; 2]>,
    #[serde(default = "two")]
    rank: u8,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<IsometryDoc>,
}

fn two() -> u8 {
    2
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsometryDoc {
    matrix: [[String; 2]; 2],
    vector: [String; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuchsianDoc {
    generators: Vec<String>,
    relators: Vec<String>,
    signature: Signature,
    /// Generator name to `[a, b, c, d]`; optional for triangle groups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<(String, [f64; 4])>>,
    /// Per orbit: stabiliser word and its order, or null.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    stabilisers: Vec<Option<(String, u32)>>,
}

fn q2s(v: &Vec2) -> [String; 2] {
    [format_fraction(&v[0]), format_fraction(&v[1])]
}

fn m2s(m: &Mat2) -> [[String; 2]; 2] {
    [q2s(&m[0]), q2s(&m[1])]
}

fn s2q(v: &[String; 2], field: &str) -> Result<Vec2> {
    let f = |s: &String| parse_fraction(s).map_err(|e| Error::parse(format!("{field}: {e}")));
    Ok([f(&v[0])?, f(&v[1])?])
}

fn s2m(m: &[[String; 2]; 2], field: &str) -> Result<Mat2> {
    Ok([s2q(&m[0], field)?, s2q(&m[1], field)?])
}

fn identity_basis() -> [Vec2; 2] {
    let one = crate::euclid::int(1);
    let zero = crate::euclid::int(0);
    [[one, zero], [zero, one]]
}

fn to_doc(pg: &PeriodicGraph) -> GraphDoc {
    let (kind, group) = match &pg.group {
        VoltageGroup::Lattice {
            lattice,
            rank,
            symmetry,
        } => {
            let basis = lattice.basis();
            let metric = lattice.metric();
            let euclid = EuclideanDoc {
                basis: (*basis != identity_basis()).then(|| [q2s(&basis[0]), q2s(&basis[1])]),
                metric: (!metric.is_identity()).then(|| m2s(&metric.0)),
                rank: *rank,
                generators: symmetry
                    .iter()
                    .map(|g| IsometryDoc {
                        matrix: m2s(g.point_part()),
                        vector: q2s(g.translation()),
                    })
                    .collect(),
            };
            ("euclidean-lattice", GroupDoc::Euclidean(euclid))
        }
        VoltageGroup::Fuchsian {
            presentation,
            stabilisers,
        } => {
            let names = presentation.names().to_vec();
            let fuchs = FuchsianDoc {
                generators: names.clone(),
                relators: presentation.relators().iter().map(|r| r.format(&names)).collect(),
                signature: presentation.signature().clone(),
                matrices: Some(
                    names
                        .iter()
                        .zip(presentation.matrices())
                        .map(|(n, m)| (n.clone(), m.entries()))
                        .collect(),
                ),
                stabilisers: if stabilisers.iter().all(Option::is_none) {
                    Vec::new()
                } else {
                    stabilisers
                        .iter()
                        .map(|s| s.as_ref().map(|(w, k)| (w.format(&names), *k)))
                        .collect()
                },
            };
            ("fuchsian", GroupDoc::Fuchsian(fuchs))
        }
    };
    let names = pg.presentation().map(|p| p.names().to_vec());
    GraphDoc {
        kind: kind.into(),
        name: pg.name.clone(),
        orbits: pg.orbit_count,
        darts: pg
            .darts
            .iter()
            .map(|d| {
                let v = match &d.voltage {
                    Voltage::Lattice(c) => VoltageDoc::Lattice(*c),
                    Voltage::Word(w) => VoltageDoc::Word(w.format(names.as_ref().unwrap())),
                };
                (d.u, d.v, v)
            })
            .collect(),
        geometry: pg.geometry.clone(),
        group,
    }
}

fn from_doc(doc: GraphDoc) -> Result<PeriodicGraph> {
    let group = match doc.group {
        GroupDoc::Euclidean(e) => {
            if doc.kind != "euclidean-lattice" {
                return Err(Error::parse(format!("kind {:?} does not match group \"euclidean\"", doc.kind)));
            }
            if !(1..=2).contains(&e.rank) {
                return Err(Error::parse("group.euclidean.rank must be 1 or 2"));
            }
            let metric = match &e.metric {
                Some(m) => Metric(s2m(m, "group.euclidean.metric")?),
                None => Metric::identity(),
            };
            let symmetry = e
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let field = format!("group.euclidean.generators[{i}]");
                    EuclideanIsometry::new_in(&metric, s2m(&g.matrix, &field)?, s2q(&g.vector, &field)?)
                        .map_err(|err| Error::parse(format!("{field}: {err}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let lattice = match &e.basis {
                Some(b) => Lattice::with_metric(
                    s2q(&b[0], "group.euclidean.basis")?,
                    s2q(&b[1], "group.euclidean.basis")?,
                    metric,
                )
                .map_err(|err| Error::parse(format!("group.euclidean.basis: {err}")))?,
                None if !symmetry.is_empty() && metric.is_identity() => {
                    translation_subgroup(&symmetry, DEFAULT_WORD_BOUND)?
                }
                None => {
                    let [b1, b2] = identity_basis();
                    Lattice::with_metric(b1, b2, metric)?
                }
            };
            VoltageGroup::Lattice {
                lattice,
                rank: e.rank,
                symmetry,
            }
        }
        GroupDoc::Fuchsian(f) => {
            if doc.kind != "fuchsian" {
                return Err(Error::parse(format!("kind {:?} does not match group \"fuchsian\"", doc.kind)));
            }
            let presentation = presentation_from(&f)?;
            let names = presentation.names().to_vec();
            let stabilisers = if f.stabilisers.is_empty() {
                vec![None; doc.orbits]
            } else {
                f.stabilisers
                    .iter()
                    .map(|s| {
                        s.as_ref()
                            .map(|(w, k)| Ok((Word::parse(w, &names)?, *k)))
                            .transpose()
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            VoltageGroup::Fuchsian {
                presentation,
                stabilisers,
            }
        }
    };
    let names = match &group {
        VoltageGroup::Fuchsian { presentation, .. } => Some(presentation.names().to_vec()),
        VoltageGroup::Lattice { .. } => None,
    };
    let darts = doc
        .darts
        .into_iter()
        .enumerate()
        .map(|(i, (u, v, vd))| {
            let voltage = match (vd, &names) {
                (VoltageDoc::Lattice(c), None) => Voltage::Lattice(c),
                (VoltageDoc::Word(w), Some(n)) => Voltage::Word(
                    Word::parse(&w, n).map_err(|e| Error::parse(format!("darts[{i}]: {e}")))?,
                ),
                _ => return Err(Error::parse(format!("darts[{i}]: voltage does not match the group kind"))),
            };
            Ok(Dart::new(u, v, voltage))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodicGraph {
        orbit_count: doc.orbits,
        darts,
        geometry: doc.geometry,
        group,
        name: doc.name,
    })
}

fn presentation_from(f: &FuchsianDoc) -> Result<FuchsianPresentation> {
    let sig = &f.signature;
    match &f.matrices {
        None if sig.genus == 0 && sig.periods.len() == 3 && f.generators == ["x", "y", "z"] => {
            let p = crate::hyp::triangle_group(sig.periods[0], sig.periods[1], sig.periods[2])?;
            let relators: Vec<String> = p.relators().iter().map(|r| p.format_word(r)).collect();
            if relators != f.relators {
                return Err(Error::parse("relators differ from the standard triangle-group relators; give matrices"));
            }
            Ok(p)
        }
        None => Err(Error::parse("group.fuchsian.matrices is required unless the group is a triangle group")),
        Some(ms) => {
            let mut mats = Vec::new();
            for name in &f.generators {
                let e = ms
                    .iter()
                    .find(|(n, _)| n == name)
                    .ok_or_else(|| Error::parse(format!("group.fuchsian.matrices: no matrix for {name:?}")))?
                    .1;
                mats.push(MoebiusMatrix::new(e[0], e[1], e[2], e[3])?);
            }
            let relators = f
                .relators
                .iter()
                .map(|r| Word::parse(r, &f.generators))
                .collect::<Result<Vec<_>>>()?;
            FuchsianPresentation::new(f.generators.clone(), relators, sig.clone(), mats)
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("{what}: {e} (line {}, column {})", e.line(), e.column()))
    })
}

/// Parse and validate; any violation is an argument error.
pub fn parse_periodic_graph(text: &str) -> Result<PeriodicGraph> {
    let pg = parse_periodic_graph_unchecked(text)?;
    let report = pg.validate();
    if !report.is_pass() {
        return Err(Error::argument(format!("invalid periodic graph: {report}")));
    }
    Ok(pg)
}

/// Schema checks only; run [`PeriodicGraph::validate`] for the invariants.
pub fn parse_periodic_graph_unchecked(text: &str) -> Result<PeriodicGraph> {
    from_doc(parse_json(text, "periodic graph")?)
}

pub fn serialize_periodic_graph(pg: &PeriodicGraph) -> String {
    canonical(&serde_json::to_value(to_doc(pg)).expect("serialisable"))
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
enum SubgroupDoc {
    Sublattice([[i64; 2]; 2]),
    Cosets(Vec<Vec<u32>>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColouringDoc {
    subgroup: SubgroupDoc,
    colours: Vec<u32>,
    palette: usize,
}

fn subgroup_doc(t: &SubgroupDescriptor) -> SubgroupDoc {
    match t {
        SubgroupDescriptor::Sublattice(m) => SubgroupDoc::Sublattice(*m),
        SubgroupDescriptor::Cosets(c) => SubgroupDoc::Cosets(c.permutations().to_vec()),
    }
}

pub fn parse_subgroup(value: Value) -> Result<SubgroupDescriptor> {
    let doc: SubgroupDoc =
        serde_json::from_value(value).map_err(|e| Error::parse(format!("subgroup: {e}")))?;
    match doc {
        SubgroupDoc::Sublattice(m) => SubgroupDescriptor::sublattice(m),
        SubgroupDoc::Cosets(p) => Ok(SubgroupDescriptor::Cosets(CosetTable::from_permutations(p)?)),
    }
}

pub fn serialize_subgroup(t: &SubgroupDescriptor) -> Value {
    serde_json::to_value(subgroup_doc(t)).expect("serialisable")
}

pub fn serialize_colouring(pc: &PeriodicColouring) -> String {
    let doc = ColouringDoc {
        subgroup: subgroup_doc(&pc.subgroup),
        colours: pc.colours.clone(),
        palette: pc.palette,
    };
    canonical(&serde_json::to_value(doc).expect("serialisable"))
}

/// Parse a colouring and rebuild its quotient from the graph. Properness is
/// not checked here.
pub fn parse_colouring(text: &str, pg: &PeriodicGraph) -> Result<PeriodicColouring> {
    let doc: ColouringDoc = parse_json(text, "periodic colouring")?;
    let t = parse_subgroup(serde_json::to_value(&doc.subgroup).expect("serialisable"))?;
    let q = quotient_mod_subgroup(pg, &t)?;
    if doc.colours.len() != q.vertex_count() {
        return Err(Error::parse(format!(
            "colours has {} entries but the quotient has {} vertices",
            doc.colours.len(),
            q.vertex_count()
        )));
    }
    let qc = QuotientColouring::new(doc.colours);
    if qc.palette > doc.palette {
        return Err(Error::parse(format!(
            "palette {} is smaller than the colours used (max colour + 1 = {})",
            doc.palette, qc.palette
        )));
    }
    let mut pc = crate::colouring::lift_colouring(qc, q, t)?;
    pc.palette = doc.palette;
    Ok(pc)
}

/// Any serialisable report in canonical form.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    canonical(&serde_json::to_value(value).expect("serialisable"))
}

const INLINE_WIDTH: usize = 72;

/// Objects one key per line in sorted order; arrays inline when short,
/// else one entry per line.
pub fn canonical(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            let n = map.len();
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                if i + 1 < n {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) => {
            let inline = serde_json::to_string(v).unwrap();
            if inline.len() <= INLINE_WIDTH && !items.iter().any(|x| matches!(x, Value::Object(m) if !m.is_empty())) {
                out.push_str(&inline);
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        other => out.push_str(&serde_json::to_string(other).unwrap()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::corpus;

    #[test]
    fn round_trips() {
        for (name, _) in corpus::EXAMPLES {
            let pg = corpus::by_name(name).unwrap();
            let text = serialize_periodic_graph(&pg);
            let back = parse_periodic_graph(&text).unwrap();
            assert_eq!(serialize_periodic_graph(&back), text, "{name}");
            assert_eq!(back.darts, pg.darts);
        }
    }

    #[test]
    fn missing_reverse_dart_is_rejected() {
        let text = r#"{"kind": "euclidean-lattice", "orbits": 1,
            "darts": [[0, 0, [1, 0]], [0, 0, [-1, 0]], [0, 0, [0, 1]]],
            "geometry": [[0, 0]], "group": {"euclidean": {}}}"#;
        let e = parse_periodic_graph(text).unwrap_err();
        assert!(e.to_string().contains("missing reverse dart"), "{e}");
    }

    #[test]
    fn schema_errors_name_the_position() {
        let e = parse_periodic_graph("{\"kind\": \"euclidean-lattice\",\n \"orbits\": \"one\"}").unwrap_err();
        assert!(matches!(e, Error::Parse(_)));
        assert!(e.to_string().contains("line 2"), "{e}");
    }

    #[test]
    fn wallpaper_generators_give_the_lattice() {
        let text = r#"{"kind": "euclidean-lattice", "orbits": 1,
            "darts": [[0, 0, [1, 0]], [0, 0, [-1, 0]], [0, 0, [0, 1]], [0, 0, [0, -1]]],
            "geometry": [[0, 0]],
            "group": {"euclidean": {"generators": [
                {"matrix": [["0", "-1"], ["1", "0"]], "vector": ["0", "0"]},
                {"matrix": [["1", "0"], ["0", "1"]], "vector": ["1", "0"]}]}}}"#;
        let pg = parse_periodic_graph(text).unwrap();
        assert_eq!(pg.lattice().unwrap().invariants().len1, 1.0);
    }

    #[test]
    fn colouring_round_trip() {
        let pg = corpus::square();
        let out = crate::colouring::euclid_pipeline(&pg, &Default::default()).unwrap();
        let text = serialize_colouring(&out.colouring);
        let back = parse_colouring(&text, &pg).unwrap();
        assert_eq!(back.colours, out.colouring.colours);
        assert_eq!(serialize_colouring(&back), text);
    }
}
