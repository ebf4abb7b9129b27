//! The CLI golden cases and how their output is rendered.

use std::path::{Path, PathBuf};

use hyperform::cli::Output;

pub const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/family.json");

/// (golden name, arguments after the global flags)
pub const CASES: &[(&str, &[&str])] = &[
    ("validate", &["validate"]),
    ("validate_structured", &["--format", "structured", "validate"]),
    ("components", &["components", "AB"]),
    ("components_structured", &["--format", "structured", "components", "AB"]),
    ("sum_empty", &["sum"]),
    ("sum", &["sum", "A", "B"]),
    ("sum_overlap", &["sum", "A", "A"]),
    ("diff", &["diff", "AB", "B"]),
    ("diff_not_component", &["diff", "AB", "A0"]),
    ("quotient", &["quotient", "AB", "ac"]),
    ("quotient_structured", &["--format", "structured", "quotient", "AB", "ac"]),
    ("vquotient", &["vquotient", "A", "ab"]),
    ("derive", &["derive", "toggleB"]),
    ("derive_structured", &["--format", "structured", "derive", "toggleH"]),
    ("derive_invalid", &["derive", "bad"]),
    ("apply", &["apply", "toggleB", "null"]),
    ("apply_outside", &["apply", "toggleB", "C"]),
    ("support", &["support", "toggleH"]),
    ("reduce", &["reduce", "toggleB", "B"]),
    ("reduce_not_upward", &["reduce", "toggleB", "null"]),
    ("disjoint", &["disjoint", "toggleB", "toggleH"]),
    ("disjoint_false", &["disjoint", "toggleB", "addP"]),
    ("compose", &["compose", "toggleB", "toggleH"]),
    ("compose_leaves_family", &["compose", "addP", "addQ"]),
    ("coincidence", &["coincidence", "toggleB", "toggleH"]),
    ("coincidence_structured", &["--format", "structured", "coincidence", "toggleB", "toggleH"]),
    ("amenable", &["amenable", "addP", "pq"]),
    ("amenable_ill_defined", &["amenable", "toggleB", "ac"]),
    ("closure_h_full", &["closure", "h-full", "H"]),
    ("closure_h_delete", &["closure", "h-delete", "H"]),
    ("closure_h_add", &["closure", "h-add", "G"]),
    ("closure_wh_add", &["closure", "wh-add", "P", "G"]),
    ("closure_wh_add_structured", &["--format", "structured", "closure", "wh-add", "P", "G"]),
    ("closure_e_add", &["closure", "e-add", "H", "ab"]),
    ("closure_e_amenable", &["closure", "e-amenable", "H", "ab"]),
    ("closure_unknown", &["closure", "x-add", "H"]),
    ("mk_edge_toggle", &["mk-edge-toggle", "H"]),
    ("mk_edge_add", &["mk-edge-add", "H"]),
    ("mk_graph_toggle", &["mk-graph-toggle", "B"]),
    ("mk_graph_toggle_outside", &["mk-graph-toggle", "P"]),
    ("mk_graph_add", &["mk-graph-add", "P"]),
    ("mk_graph_edge_add", &["mk-graph-edge-add", "P", "G"]),
    ("mk_equiv_edge_add", &["mk-equiv-edge-add", "H", "ab"]),
    ("unknown_name", &["apply", "nope", "null"]),
    ("usage", &["frobnicate"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

pub fn argv(args: &[&str]) -> Vec<String> {
    let mut v = vec!["hyperform".to_owned(), "--family".to_owned(), FIXTURE.to_owned()];
    v.extend(args.iter().map(|s| (*s).to_owned()));
    v
}

pub fn render(out: &Output) -> String {
    // The fixture path is machine specific; goldens store it symbolically.
    let clean = |s: &str| s.replace(FIXTURE, "<fixture>");
    format!("exit: {}\n--- stdout\n{}--- stderr\n{}", out.code, clean(&out.stdout), clean(&out.stderr))
}
