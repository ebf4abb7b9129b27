//! Batch command-line front end over a single JSON family file.
//!
//! [`run`] never touches the process: it returns the exit code and both
//! output streams so that the binary and the tests share one code path.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Debug, Display};
use std::marker::PhantomData;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::compose::{are_disjoint, coincidence, compose_seq, PartialMap};
use crate::families::{
    closure_check, edge_add, edge_toggle, graph_add, graph_edge_add, graph_toggle, ClosureKind, Counterexample,
};
use crate::hypergraph::{direct_sum, raw_edges, validate, EdgeSet, Family, Hypergraph, Label, LoopPolicy, RawHypergraph};
use crate::partition::VertexPartition;
use crate::quotient::{e_equivalent, quotient, vertex_augmented_quotient};
use crate::quotient_transform::{equiv_edge_add, quotient_transformation};
use crate::transform::{derive, DistinguishedSet, TransformSpec, Transformation};

/// Reserved hypergraph name for 𝒩.
pub const NULL_NAME: &str = "null";

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "hyperform", version, about = "Transformations on families of labelled hypergraphs")]
struct Cli {
    /// Family file (JSON).
    #[arg(long, global = true)]
    family: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the family file and print a summary (or the canonical file).
    Validate,
    /// Connected components of a hypergraph.
    Components { name: String },
    /// Direct sum of the named hypergraphs.
    Sum { names: Vec<String> },
    /// Direct difference X ⊖ Z.
    Diff { x: String, z: String },
    /// Quotient X/R with R restricted to V(X).
    Quotient { x: String, partition: String },
    /// Vertex-augmented quotient X//R.
    Vquotient { x: String, partition: String },
    /// Derive a spec and print its full table.
    Derive { spec: String },
    /// Apply a spec to one hypergraph.
    Apply { spec: String, x: String },
    /// Support of a spec.
    Support { spec: String },
    /// Support reduction to the named distinguished members.
    Reduce { spec: String, subset: Vec<String> },
    /// Whether two specs are disjoint.
    Disjoint { first: String, second: String },
    /// Sequential composition, first spec applied first.
    Compose {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Coincidence set over all orderings.
    Coincidence {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Quotient transformation of a spec by a partition.
    Amenable { spec: String, partition: String },
    /// Closure predicate: h-add|h-delete|h-full <edges>, wh-add <summand> <edges>,
    /// e-add|e-amenable <edge> <partition>.
    Closure { kind: String, params: Vec<String> },
    /// Hyperedges toggling transformation.
    MkEdgeToggle { edges: String },
    /// Hyperedges addition transformation.
    MkEdgeAdd { edges: String },
    /// Hypergraph toggling transformation.
    MkGraphToggle { summand: String },
    /// Hypergraph addition transformation.
    MkGraphAdd { summand: String },
    /// Hypergraph and hyperedges addition transformation.
    MkGraphEdgeAdd { summand: String, edges: String },
    /// Equivalent hyperedges addition transformation for a single-edge set.
    MkEquivEdgeAdd { edge: String, partition: String },
}

/// A failure with its stable code and exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub exit: i32,
}

impl CliError {
    fn usage(code: &str, message: impl Display) -> Self {
        CliError { code: code.to_owned(), message: message.to_string(), exit: 2 }
    }

    /// A library error, coded `<area>/<variant>`.
    fn domain(area: &str, err: &(impl Debug + Display)) -> Self {
        CliError { code: format!("{area}/{}", variant_code(err)), message: err.to_string(), exit: 1 }
    }

    /// A library error raised while loading the family file.
    fn input(area: &str, err: &(impl Debug + Display)) -> Self {
        CliError { exit: 2, ..Self::domain(area, err) }
    }

    fn context(mut self, what: impl Display) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

/// Kebab-cased name of the outermost enum variant in a `Debug` rendering.
fn variant_code(err: &impl Debug) -> String {
    let dbg = format!("{err:?}");
    let name: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

/// Map deserializer that rejects repeated keys.
mod unique {
    use super::*;

    pub fn deserialize<'de, D, T>(d: D) -> Result<BTreeMap<String, T>, D::Error>
    where
        D: Deserializer<'de>,
        T: Deserialize<'de>,
    {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = BTreeMap<String, T>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object with unique names")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.contains_key(&k) {
                        return Err(serde::de::Error::custom(format!("duplicate name {k:?}")));
                    }
                    out.insert(k, v);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

/// An edge set as written in the file: `{"label": ["v", ...]}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RawEdgeSet(#[serde(with = "raw_edges")] pub Vec<(String, Vec<String>)>);

/// A transformation spec as written in the file, by hypergraph name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    #[serde(default)]
    pub distinguished: Vec<String>,
    #[serde(default, deserialize_with = "unique::deserialize")]
    pub images: BTreeMap<String, String>,
}

/// The on-disk family file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    #[serde(default)]
    pub loop_policy: LoopPolicy,
    #[serde(default)]
    pub extra_universe_vertices: Vec<String>,
    /// Names of the family members.
    #[serde(default)]
    pub family: Vec<String>,
    #[serde(default, deserialize_with = "unique::deserialize")]
    pub hypergraphs: BTreeMap<String, RawHypergraph>,
    #[serde(default, deserialize_with = "unique::deserialize")]
    pub partitions: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, deserialize_with = "unique::deserialize")]
    pub edge_sets: BTreeMap<String, RawEdgeSet>,
    #[serde(default, deserialize_with = "unique::deserialize")]
    pub summands: BTreeMap<String, RawHypergraph>,
    #[serde(default, deserialize_with = "unique::deserialize")]
    pub specs: BTreeMap<String, RawSpec>,
}

impl FamilyFile {
    /// # Errors
    /// `parse/json` on malformed input.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::usage("parse/json", e))
    }

    /// Canonical JSON: sorted names, vertices, edges and blocks, two-space
    /// indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("family files always serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values always serialize");
        s.push('\n');
        s
    }
}

/// A resolved family file.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub family: Family,
    pub family_names: BTreeSet<String>,
    pub hypergraphs: BTreeMap<String, Hypergraph>,
    pub partitions: BTreeMap<String, VertexPartition>,
    pub edge_sets: BTreeMap<String, EdgeSet>,
    pub summands: BTreeMap<String, Hypergraph>,
    pub specs: BTreeMap<String, TransformSpec>,
    raw_specs: BTreeMap<String, RawSpec>,
    raw_partitions: BTreeMap<String, BTreeSet<BTreeSet<Label>>>,
}

fn label(text: &str) -> Result<Label, CliError> {
    Label::new(text).map_err(|e| CliError::input("label", &e).context(format!("{text:?}")))
}

fn check_name(section: &str, name: &str) -> Result<(), CliError> {
    if name == NULL_NAME {
        return Err(CliError::usage("file/reserved-name", format!("{section} may not define {NULL_NAME:?}")));
    }
    Ok(())
}

impl Workspace {
    /// # Errors
    /// Any unresolved name, invalid hypergraph, partition or spec, all with exit 2.
    pub fn load(file: &FamilyFile) -> Result<Self, CliError> {
        let policy = file.loop_policy;
        let raw_hg = |section: &str, name: &String, raw: &RawHypergraph| {
            check_name(section, name)?;
            validate(raw, policy).map_err(|vs| {
                let msg = vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
                CliError::usage("file/invalid-hypergraph", format!("{section} {name}: {msg}"))
            })
        };
        let hypergraphs = file
            .hypergraphs
            .iter()
            .map(|(n, r)| Ok((n.clone(), raw_hg("hypergraphs", n, r)?)))
            .collect::<Result<BTreeMap<_, _>, CliError>>()?;
        let summands = file
            .summands
            .iter()
            .map(|(n, r)| Ok((n.clone(), raw_hg("summands", n, r)?)))
            .collect::<Result<BTreeMap<_, _>, CliError>>()?;
        if let Some(n) = hypergraphs.keys().find(|n| summands.contains_key(*n)) {
            return Err(CliError::usage("file/duplicate-name", format!("{n:?} names both a hypergraph and a summand")));
        }

        let mut ws = Workspace {
            family: Family::new([], policy, []).expect("empty family"),
            family_names: BTreeSet::new(),
            hypergraphs,
            partitions: BTreeMap::new(),
            edge_sets: BTreeMap::new(),
            summands,
            specs: BTreeMap::new(),
            raw_specs: BTreeMap::new(),
            raw_partitions: BTreeMap::new(),
        };
        let mut members = Vec::new();
        for n in &file.family {
            if !ws.family_names.insert(n.clone()) {
                return Err(CliError::usage("file/duplicate-name", format!("family lists {n:?} twice")));
            }
            members.push(ws.hypergraph(n)?);
        }
        let extras = file.extra_universe_vertices.iter().map(|v| label(v)).collect::<Result<Vec<_>, _>>()?;
        ws.family = Family::new(members, policy, extras).map_err(|e| CliError::input("family", &e))?;

        let universe = ws.family.universe_vertices();
        for (n, blocks) in &file.partitions {
            let blocks = blocks
                .iter()
                .map(|b| b.iter().map(|v| label(v)).collect::<Result<BTreeSet<_>, _>>())
                .collect::<Result<BTreeSet<_>, _>>()?;
            let p = VertexPartition::new(universe.iter().cloned(), blocks.iter().map(|b| b.iter().cloned()))
                .map_err(|e| CliError::input("partition", &e).context(format!("partition {n}")))?;
            ws.partitions.insert(n.clone(), p);
            ws.raw_partitions.insert(n.clone(), blocks.into_iter().filter(|b| !b.is_empty()).collect());
        }
        for (n, raw) in &file.edge_sets {
            let mut seen = BTreeSet::new();
            if let Some((l, _)) = raw.0.iter().find(|(l, _)| !seen.insert(l.clone())) {
                return Err(CliError::usage("file/duplicate-name", format!("edge set {n} repeats label {l:?}")));
            }
            let h = EdgeSet::from_parts(raw.0.iter().map(|(l, vs)| (l.as_str(), vs.iter().map(String::as_str).collect())))
                .map_err(|e| CliError::input("edge-set", &e).context(format!("edge set {n}")))?;
            ws.edge_sets.insert(n.clone(), h);
        }
        for (n, raw) in &file.specs {
            let s = raw.distinguished.iter().map(|m| ws.hypergraph(m)).collect::<Result<DistinguishedSet, _>>()?;
            let images = raw
                .images
                .iter()
                .map(|(k, v)| Ok((ws.hypergraph(k)?, ws.hypergraph(v)?)))
                .collect::<Result<BTreeMap<_, _>, CliError>>()?;
            let spec = TransformSpec::new(ws.family.clone(), s, images)
                .map_err(|e| CliError::input("spec", &e).context(format!("spec {n}")))?;
            ws.specs.insert(n.clone(), spec);
            let mut canon = raw.clone();
            canon.distinguished.sort();
            canon.distinguished.dedup();
            ws.raw_specs.insert(n.clone(), canon);
        }
        Ok(ws)
    }

    /// The canonical form of the loaded file.
    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            loop_policy: self.family.loop_policy(),
            extra_universe_vertices: self.family.extra_vertices().iter().map(ToString::to_string).collect(),
            family: self.family_names.iter().cloned().collect(),
            hypergraphs: self.hypergraphs.iter().map(|(n, h)| (n.clone(), RawHypergraph::from(h))).collect(),
            partitions: self
                .raw_partitions
                .iter()
                .map(|(n, bs)| (n.clone(), bs.iter().map(|b| b.iter().map(ToString::to_string).collect()).collect()))
                .collect(),
            edge_sets: self
                .edge_sets
                .iter()
                .map(|(n, h)| {
                    let edges = h
                        .iter()
                        .map(|e| (e.label().to_string(), e.vertices().iter().map(ToString::to_string).collect()))
                        .collect();
                    (n.clone(), RawEdgeSet(edges))
                })
                .collect(),
            summands: self.summands.iter().map(|(n, h)| (n.clone(), RawHypergraph::from(h))).collect(),
            specs: self.raw_specs.clone(),
        }
    }

    /// Resolves a hypergraph or summand name, with `null` for 𝒩.
    pub fn hypergraph(&self, name: &str) -> Result<Hypergraph, CliError> {
        if name == NULL_NAME {
            return Ok(Hypergraph::null());
        }
        self.hypergraphs
            .get(name)
            .or_else(|| self.summands.get(name))
            .cloned()
            .ok_or_else(|| CliError::usage("name/hypergraph", format!("no hypergraph named {name:?}")))
    }

    /// Summand names resolve like hypergraph names.
    fn summand(&self, name: &str) -> Result<Hypergraph, CliError> {
        self.hypergraph(name)
    }

    fn partition(&self, name: &str) -> Result<&VertexPartition, CliError> {
        self.partitions
            .get(name)
            .ok_or_else(|| CliError::usage("name/partition", format!("no partition named {name:?}")))
    }

    fn edge_set(&self, name: &str) -> Result<&EdgeSet, CliError> {
        self.edge_sets
            .get(name)
            .ok_or_else(|| CliError::usage("name/edge-set", format!("no edge set named {name:?}")))
    }

    fn spec(&self, name: &str) -> Result<&TransformSpec, CliError> {
        self.specs.get(name).ok_or_else(|| CliError::usage("name/spec", format!("no spec named {name:?}")))
    }

    fn derived(&self, name: &str) -> Result<Transformation, CliError> {
        derive(self.spec(name)?.clone()).map_err(|e| CliError::domain("invalid-spec", &e).context(format!("spec {name}")))
    }

    fn single_edge(&self, name: &str) -> Result<crate::Hyperedge, CliError> {
        let h = self.edge_set(name)?;
        match h.iter().collect::<Vec<_>>().as_slice() {
            [e] => Ok((*e).clone()),
            _ => Err(CliError::usage("usage/single-edge", format!("edge set {name} must hold exactly one edge"))),
        }
    }
}

/// What a command produced, before rendering.
enum Report {
    Summary(Workspace),
    Graph(Hypergraph),
    Graphs(Vec<Hypergraph>),
    Quotient { quotient: Hypergraph, projection: BTreeMap<Label, Label> },
    Derivation(Transformation),
    Table(BTreeMap<Hypergraph, Hypergraph>),
    Bool(bool),
    Coincidence { orderings: usize, common_domain: BTreeSet<Hypergraph>, coincidence: BTreeSet<Hypergraph> },
    Closure(Option<Counterexample>),
}

fn graph_json(h: &Hypergraph) -> Value {
    serde_json::to_value(h).expect("hypergraphs serialize")
}

fn set_text<'a>(xs: impl IntoIterator<Item = &'a Hypergraph>) -> String {
    let parts: Vec<String> = xs.into_iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn table_json(t: &BTreeMap<Hypergraph, Hypergraph>) -> Value {
    Value::Array(t.iter().map(|(x, y)| json!({"input": graph_json(x), "output": graph_json(y)})).collect())
}

fn table_text(t: &BTreeMap<Hypergraph, Hypergraph>, out: &mut String) {
    for (x, y) in t {
        out.push_str(&format!("{x} -> {y}\n"));
    }
}

fn list_text<'a>(xs: impl IntoIterator<Item = &'a Hypergraph>, indent: &str, out: &mut String) {
    let mut any = false;
    for x in xs {
        any = true;
        out.push_str(&format!("{indent}{x}\n"));
    }
    if !any {
        out.push_str(&format!("{indent}(none)\n"));
    }
}

impl Report {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.structured()).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Summary(ws) => {
                out.push_str(&format!(
                    "ok: {} members, {} hypergraphs, {} summands, {} partitions, {} edge sets, {} specs\n",
                    ws.family.len(),
                    ws.hypergraphs.len(),
                    ws.summands.len(),
                    ws.partitions.len(),
                    ws.edge_sets.len(),
                    ws.specs.len()
                ));
            }
            Report::Graph(h) => out.push_str(&format!("{h}\n")),
            Report::Graphs(hs) => list_text(hs, "", &mut out),
            Report::Quotient { quotient, projection } => {
                out.push_str(&format!("{quotient}\n"));
                for (v, c) in projection {
                    out.push_str(&format!("  {v} -> {c}\n"));
                }
            }
            Report::Derivation(t) => {
                for (x, y) in t.table() {
                    out.push_str(&format!("{x} -> {y}\n"));
                    let d = t.maximal_subset(x).map(|d| set_text(&d.members)).unwrap_or_default();
                    let a = t.active_set(x).map(set_text).unwrap_or_default();
                    out.push_str(&format!("  maximal: {d}\n  active: {a}\n"));
                }
            }
            Report::Table(t) => table_text(t, &mut out),
            Report::Bool(b) => out.push_str(&format!("{b}\n")),
            Report::Coincidence { orderings, common_domain, coincidence } => {
                out.push_str(&format!("orderings: {orderings}\ncommon domain:\n"));
                list_text(common_domain, "  ", &mut out);
                out.push_str("coincidence:\n");
                list_text(coincidence, "  ", &mut out);
            }
            Report::Closure(None) => out.push_str("closed\n"),
            Report::Closure(Some(c)) => out.push_str(&format!("not closed: {c}\n")),
        }
        out
    }

    fn structured(&self) -> Value {
        match self {
            Report::Summary(ws) => serde_json::to_value(ws.to_file()).expect("family files serialize"),
            Report::Graph(h) => graph_json(h),
            Report::Graphs(hs) => Value::Array(hs.iter().map(graph_json).collect()),
            Report::Quotient { quotient, projection } => json!({
                "quotient": graph_json(quotient),
                "projection": projection,
            }),
            Report::Derivation(t) => Value::Array(
                t.table()
                    .iter()
                    .map(|(x, y)| {
                        let d: Vec<Value> =
                            t.maximal_subset(x).map(|d| d.members.iter().map(graph_json).collect()).unwrap_or_default();
                        let a: Vec<Value> =
                            t.active_set(x).map(|a| a.iter().map(graph_json).collect()).unwrap_or_default();
                        json!({"input": graph_json(x), "output": graph_json(y), "maximal": d, "active": a})
                    })
                    .collect(),
            ),
            Report::Table(t) => table_json(t),
            Report::Bool(b) => json!(b),
            Report::Coincidence { orderings, common_domain, coincidence } => json!({
                "orderings": orderings,
                "common_domain": common_domain.iter().map(graph_json).collect::<Vec<_>>(),
                "coincidence": coincidence.iter().map(graph_json).collect::<Vec<_>>(),
            }),
            Report::Closure(c) => json!({"closed": c.is_none(), "counterexample": c}),
        }
    }
}

fn construction(t: Result<Transformation, impl Debug + Display>) -> Result<Report, CliError> {
    t.map(Report::Derivation).map_err(|e| CliError::domain("construction", &e))
}

fn execute(ws: &Workspace, command: &Command) -> Result<Report, CliError> {
    let policy = ws.family.loop_policy();
    match command {
        Command::Validate => Ok(Report::Summary(ws.clone())),
        Command::Components { name } => Ok(Report::Graphs(ws.hypergraph(name)?.components().into_iter().collect())),
        Command::Sum { names } => {
            let hs = names.iter().map(|n| ws.hypergraph(n)).collect::<Result<Vec<_>, _>>()?;
            direct_sum(&hs).map(Report::Graph).map_err(|e| CliError::domain("hypergraph", &e))
        }
        Command::Diff { x, z } => ws
            .hypergraph(x)?
            .direct_difference(&ws.hypergraph(z)?)
            .map(Report::Graph)
            .map_err(|e| CliError::domain("hypergraph", &e)),
        Command::Quotient { x, partition } => {
            let x = ws.hypergraph(x)?;
            let r = ws.partition(partition)?;
            if let Some(v) = x.vertices().iter().find(|v| !r.universe().contains(*v)) {
                return Err(CliError::domain("quotient", &crate::QuotientError::UniverseTooSmall(v.clone())));
            }
            let q = quotient(&x, &r.restrict(x.vertices()), policy).map_err(|e| CliError::domain("quotient", &e))?;
            Ok(Report::Quotient { quotient: q.quotient, projection: q.projection })
        }
        Command::Vquotient { x, partition } => {
            let q = vertex_augmented_quotient(&ws.hypergraph(x)?, ws.partition(partition)?, policy)
                .map_err(|e| CliError::domain("quotient", &e))?;
            Ok(Report::Quotient { quotient: q.quotient, projection: q.projection })
        }
        Command::Derive { spec } => Ok(Report::Derivation(ws.derived(spec)?)),
        Command::Apply { spec, x } => ws
            .derived(spec)?
            .apply(&ws.hypergraph(x)?)
            .cloned()
            .map(Report::Graph)
            .map_err(|e| CliError::domain("transform", &e)),
        Command::Support { spec } => Ok(Report::Graphs(ws.derived(spec)?.support().into_iter().collect())),
        Command::Reduce { spec, subset } => {
            let sub = subset.iter().map(|n| ws.hypergraph(n)).collect::<Result<DistinguishedSet, _>>()?;
            ws.derived(spec)?
                .support_reduction(&sub)
                .map(Report::Derivation)
                .map_err(|e| CliError::domain("transform", &e))
        }
        Command::Disjoint { first, second } => Ok(Report::Bool(are_disjoint(&ws.derived(first)?, &ws.derived(second)?))),
        Command::Compose { specs } => {
            let maps = specs.iter().map(|s| Ok(PartialMap::from(&ws.derived(s)?))).collect::<Result<Vec<_>, CliError>>()?;
            let refs: Vec<&PartialMap> = maps.iter().collect();
            Ok(Report::Table(compose_seq(&refs, ws.family.members().iter()).entries().clone()))
        }
        Command::Coincidence { specs } => {
            let maps = specs.iter().map(|s| Ok(PartialMap::from(&ws.derived(s)?))).collect::<Result<Vec<_>, CliError>>()?;
            let refs: Vec<&PartialMap> = maps.iter().collect();
            let r = coincidence(&refs).map_err(|e| CliError::domain("compose", &e))?;
            Ok(Report::Coincidence {
                orderings: r.ordering_count,
                common_domain: r.common_domain,
                coincidence: r.coincidence,
            })
        }
        Command::Amenable { spec, partition } => {
            let q = quotient_transformation(&ws.derived(spec)?, ws.partition(partition)?)
                .map_err(|e| CliError::domain("quotient-transform", &e))?;
            Ok(Report::Table(q.quotient_table))
        }
        Command::Closure { kind, params } => closure(ws, kind, params),
        Command::MkEdgeToggle { edges } => construction(edge_toggle(&ws.family, ws.edge_set(edges)?)),
        Command::MkEdgeAdd { edges } => construction(edge_add(&ws.family, ws.edge_set(edges)?)),
        Command::MkGraphToggle { summand } => construction(graph_toggle(&ws.family, &ws.summand(summand)?)),
        Command::MkGraphAdd { summand } => construction(graph_add(&ws.family, &ws.summand(summand)?)),
        Command::MkGraphEdgeAdd { summand, edges } => {
            construction(graph_edge_add(&ws.family, &ws.summand(summand)?, ws.edge_set(edges)?))
        }
        Command::MkEquivEdgeAdd { edge, partition } => {
            construction(equiv_edge_add(&ws.family, &ws.single_edge(edge)?, ws.partition(partition)?).map(|t| t.transformation))
        }
    }
}

fn closure(ws: &Workspace, kind: &str, params: &[String]) -> Result<Report, CliError> {
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(CliError::usage("usage/arity", format!("closure {kind} takes {n} parameter(s), got {}", params.len())))
        }
    };
    let check = |k: ClosureKind<'_>| Report::Closure(closure_check(&ws.family, k).err());
    match kind {
        "h-add" | "h-delete" | "h-full" => {
            arity(1)?;
            let h = ws.edge_set(&params[0])?;
            Ok(check(match kind {
                "h-add" => ClosureKind::HAdd(h),
                "h-delete" => ClosureKind::HDelete(h),
                _ => ClosureKind::HFull(h),
            }))
        }
        "wh-add" => {
            arity(2)?;
            Ok(check(ClosureKind::WhAdd(&ws.summand(&params[0])?, ws.edge_set(&params[1])?)))
        }
        "e-add" | "e-amenable" => {
            arity(2)?;
            let e = ws.single_edge(&params[0])?;
            let class = e_equivalent(&e, ws.partition(&params[1])?, &ws.family)
                .map_err(|err| CliError::domain("quotient", &err))?;
            Ok(check(if kind == "e-add" { ClosureKind::EAdd(&class) } else { ClosureKind::EAmenable(&class) }))
        }
        other => Err(CliError::usage("usage/closure-kind", format!("unknown closure kind {other:?}"))),
    }
}

fn load(path: Option<&PathBuf>) -> Result<Workspace, CliError> {
    let file = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::usage("io/read", format!("{}: {e}", p.display())))?;
            FamilyFile::parse(&text)?
        }
        None => FamilyFile::default(),
    };
    Workspace::load(&file)
}

/// Parses `argv` (including the program name), executes the command and
/// renders its result.
pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output { code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("error[usage/arguments]: {}\n", rendered.trim_end()),
                },
            };
        }
    };
    let result = load(cli.family.as_ref()).and_then(|ws| execute(&ws, &cli.command)).map(|r| r.render(cli.format));
    match result {
        Ok(text) => match &cli.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Output { code: 0, stdout: String::new(), stderr: String::new() },
                Err(e) => Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("error[io/write]: {}: {e}\n", path.display()),
                },
            },
            None => Output { code: 0, stdout: text, stderr: String::new() },
        },
        Err(e) => Output { code: e.exit, stdout: String::new(), stderr: format!("{e}\n") },
    }
}
