use std::fmt::Write;

use super::{RenderOptions, Renderable};
use crate::dfg::DfgView;
use crate::discovery::{NodeRef, PetriNet, ProcessTree};
use crate::graph::BehaviorGraph;
use crate::udfg::{FreqRange, Udfg};

const START: &str = "_start";
const END: &str = "_end";

/// Maps an arbitrary token to a DOT identifier. ASCII alphanumerics pass
/// through, `_` doubles, any other byte becomes `_XX` (uppercase hex), and a
/// leading digit gets a `_d` prefix. The mapping is injective and never
/// produces `_start` or `_end`.
pub fn dot_id(token: &str) -> String {
    let mut out = String::with_capacity(token.len());
    if token.starts_with(|c: char| c.is_ascii_digit()) {
        out.push_str("_d");
    }
    for b in token.bytes() {
        match b {
            b'_' => out.push_str("__"),
            b if b.is_ascii_alphanumeric() => out.push(b as char),
            b => {
                let _ = write!(out, "_{b:02X}");
            }
        }
    }
    if out.is_empty() {
        out.push_str("_empty");
    }
    out
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders `object` as a DOT digraph. Statements are sorted by node id so the
/// output depends only on the object.
pub fn to_dot(object: Renderable<'_>, opts: &RenderOptions) -> String {
    match object {
        Renderable::BehaviorGraph(g) => behavior_graph(g),
        Renderable::Udfg(u) => udfg(u, opts.annotate),
        Renderable::Slice(v) => view(v),
        Renderable::Tree(t) => tree(t),
        Renderable::Net(n) => net(n),
    }
}

struct Doc {
    name: &'static str,
    header: Vec<String>,
    nodes: Vec<(String, String)>,
    edges: Vec<(String, String, String)>,
}

impl Doc {
    fn new(name: &'static str) -> Self {
        Doc {
            name,
            header: Vec::new(),
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn node(&mut self, id: String, attrs: String) {
        self.nodes.push((id, attrs));
    }

    fn edge(&mut self, from: String, to: String, attrs: String) {
        self.edges.push((from, to, attrs));
    }

    fn finish(mut self, sort: bool) -> String {
        if sort {
            self.nodes.sort();
            self.edges.sort();
        }
        let mut out = format!("digraph {} {{\n", self.name);
        for h in &self.header {
            let _ = writeln!(out, "  {h};");
        }
        for (id, attrs) in &self.nodes {
            let _ = writeln!(out, "  {id}{};", bracket(attrs));
        }
        for (from, to, attrs) in &self.edges {
            let _ = writeln!(out, "  {from} -> {to}{};", bracket(attrs));
        }
        out.push_str("}\n");
        out
    }
}

fn bracket(attrs: &str) -> String {
    if attrs.is_empty() {
        String::new()
    } else {
        format!(" [{attrs}]")
    }
}

fn behavior_graph(g: &BehaviorGraph) -> String {
    let mut doc = Doc::new("behavior_graph");
    if !g.is_empty() {
        doc.header.push("node [shape=circle]".into());
    }
    for event in g.events() {
        let labels: Vec<&str> = event.activities.iter().map(|a| a.as_str()).collect();
        let mut attrs = format!(
            "label={}",
            quote(&format!("{}\n{{{}}}", event.id, labels.join(",")))
        );
        if !event.determinate {
            attrs.push_str(", style=dashed");
        }
        doc.node(dot_id(&event.id), attrs);
    }
    for (v, w) in g.edges() {
        doc.edge(
            dot_id(&g.event(v).id),
            dot_id(&g.event(w).id),
            String::new(),
        );
    }
    doc.finish(true)
}

fn boundary(doc: &mut Doc, start: bool) {
    let (id, shape) = if start {
        (START, "circle")
    } else {
        (END, "doublecircle")
    };
    doc.node(id.into(), format!("label=\"\", shape={shape}, width=0.2"));
}

fn udfg(u: &Udfg, annotate: bool) -> String {
    let range = |r: &FreqRange| {
        if annotate {
            format!("label={}", quote(&r.to_string()))
        } else {
            String::new()
        }
    };
    let mut doc = Doc::new("udfg");
    if !u.nodes.is_empty() {
        doc.header.push("node [shape=box]".into());
    }
    for (a, r) in &u.nodes {
        let label = if annotate {
            format!("{a}\n{r}")
        } else {
            a.to_string()
        };
        doc.node(dot_id(a.as_str()), format!("label={}", quote(&label)));
    }
    for ((a, b), r) in &u.arcs {
        doc.edge(dot_id(a.as_str()), dot_id(b.as_str()), range(r));
    }
    let starts: Vec<_> = u
        .start
        .iter()
        .filter(|(a, r)| r.max > 0 && u.nodes.contains_key(*a))
        .collect();
    let ends: Vec<_> = u
        .end
        .iter()
        .filter(|(a, r)| r.max > 0 && u.nodes.contains_key(*a))
        .collect();
    if !starts.is_empty() {
        boundary(&mut doc, true);
    }
    if !ends.is_empty() {
        boundary(&mut doc, false);
    }
    for (a, r) in starts {
        doc.edge(START.into(), dot_id(a.as_str()), range(r));
    }
    for (a, r) in ends {
        doc.edge(dot_id(a.as_str()), END.into(), range(r));
    }
    doc.finish(true)
}

fn view(v: &DfgView) -> String {
    let mut doc = Doc::new("dfg");
    if !v.activities.is_empty() {
        doc.header.push("node [shape=box]".into());
    }
    for a in &v.activities {
        doc.node(dot_id(a.as_str()), format!("label={}", quote(a.as_str())));
    }
    for (a, b) in &v.edges {
        doc.edge(dot_id(a.as_str()), dot_id(b.as_str()), String::new());
    }
    if !v.start.is_empty() {
        boundary(&mut doc, true);
    }
    if !v.end.is_empty() {
        boundary(&mut doc, false);
    }
    for a in &v.start {
        doc.edge(START.into(), dot_id(a.as_str()), String::new());
    }
    for a in &v.end {
        doc.edge(dot_id(a.as_str()), END.into(), String::new());
    }
    doc.finish(true)
}

fn tree(t: &ProcessTree) -> String {
    fn walk(doc: &mut Doc, t: &ProcessTree, next: &mut usize) -> String {
        let id = format!("n{next}");
        *next += 1;
        let attrs = match t {
            ProcessTree::Activity(a) => format!("label={}, shape=box", quote(a.as_str())),
            ProcessTree::Silent => "label=\"tau\", shape=box, style=dashed".to_owned(),
            ProcessTree::Sequence(_) => "label=\"seq\"".to_owned(),
            ProcessTree::Choice(_) => "label=\"xor\"".to_owned(),
            ProcessTree::Parallel(_) => "label=\"and\"".to_owned(),
            ProcessTree::Loop(_) => "label=\"loop\"".to_owned(),
        };
        doc.node(id.clone(), attrs);
        for child in t.children() {
            let c = walk(doc, child, next);
            doc.edge(id.clone(), c, String::new());
        }
        id
    }
    let mut doc = Doc::new("process_tree");
    doc.header.push("node [shape=ellipse]".into());
    walk(&mut doc, t, &mut 0);
    doc.finish(false)
}

fn net(n: &PetriNet) -> String {
    let mut doc = Doc::new("petri_net");
    doc.header.push("rankdir=LR".into());
    let node_id = |r: NodeRef| dot_id(n.node_id(r));
    for (p, place) in n.places.iter().enumerate() {
        let tokens = n.initial_marking.get(&p).copied().unwrap_or(0);
        let label = if tokens > 0 {
            tokens.to_string()
        } else {
            String::new()
        };
        let shape = if n.final_marking.contains_key(&p) {
            "doublecircle"
        } else {
            "circle"
        };
        doc.node(
            dot_id(&place.id),
            format!("label={}, shape={shape}", quote(&label)),
        );
    }
    for t in &n.transitions {
        let attrs = match &t.label {
            Some(a) => format!("label={}, shape=box", quote(a.as_str())),
            None => "label=\"\", shape=box, style=filled, fillcolor=black, height=0.3, width=0.1"
                .to_owned(),
        };
        doc.node(dot_id(&t.id), attrs);
    }
    for arc in &n.arcs {
        doc.edge(node_id(arc.source), node_id(arc.target), String::new());
    }
    doc.finish(true)
}
