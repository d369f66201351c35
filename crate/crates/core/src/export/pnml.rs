use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use super::ExportError;
use crate::discovery::{Arc, Marking, NodeRef, PetriNet, Place, Transition};
use crate::model::ActivityLabel;

const NET_TYPE: &str = "http://www.pnml.org/version-2009/grammar/ptnet";

#[derive(Debug, Error)]
pub enum PnmlError {
    #[error("malformed XML: {0}")]
    Xml(#[from] roxmltree::Error),
    #[error("no <net> element")]
    MissingNet,
    #[error("<{element}> without an id attribute")]
    MissingId { element: &'static str },
    #[error("duplicate node id {0:?}")]
    DuplicateId(String),
    #[error("arc {arc:?} refers to undeclared node {node:?}")]
    UnknownNode { arc: String, node: String },
    #[error("arc {0:?} connects two nodes of the same kind")]
    BadArc(String),
    #[error("invalid token count {0:?}")]
    BadMarking(String),
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Writes a workflow net as PNML. Silent transitions have no `<name>`; the
/// final marking goes into a `<finalmarkings>` block.
pub fn to_pnml(net: &PetriNet) -> Result<String, ExportError> {
    net.check_workflow()?;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<pnml>\n");
    let _ = writeln!(out, "  <net id=\"net1\" type=\"{NET_TYPE}\">");
    out.push_str("    <page id=\"page1\">\n");
    for (p, place) in net.places.iter().enumerate() {
        let id = escape(&place.id);
        match net.initial_marking.get(&p) {
            Some(&k) if k > 0 => {
                let _ = writeln!(out, "      <place id=\"{id}\">");
                let _ = writeln!(
                    out,
                    "        <initialMarking><text>{k}</text></initialMarking>"
                );
                out.push_str("      </place>\n");
            }
            _ => {
                let _ = writeln!(out, "      <place id=\"{id}\"/>");
            }
        }
    }
    for t in &net.transitions {
        let id = escape(&t.id);
        match &t.label {
            Some(label) => {
                let _ = writeln!(out, "      <transition id=\"{id}\">");
                let _ = writeln!(
                    out,
                    "        <name><text>{}</text></name>",
                    escape(label.as_str())
                );
                out.push_str("      </transition>\n");
            }
            None => {
                let _ = writeln!(out, "      <transition id=\"{id}\"/>");
            }
        }
    }
    for (i, arc) in net.arcs.iter().enumerate() {
        let _ = writeln!(
            out,
            "      <arc id=\"arc{i}\" source=\"{}\" target=\"{}\"/>",
            escape(net.node_id(arc.source)),
            escape(net.node_id(arc.target))
        );
    }
    out.push_str("    </page>\n");
    out.push_str("    <finalmarkings>\n      <marking>\n");
    for (&p, &k) in &net.final_marking {
        let _ = writeln!(
            out,
            "        <place idref=\"{}\"><text>{k}</text></place>",
            escape(&net.places[p].id)
        );
    }
    out.push_str("      </marking>\n    </finalmarkings>\n");
    out.push_str("  </net>\n</pnml>\n");
    Ok(out)
}

fn text_child(node: roxmltree::Node<'_, '_>, tag: &str) -> Option<String> {
    let child = node.children().find(|c| c.has_tag_name(tag))?;
    let text = child.children().find(|c| c.has_tag_name("text"))?;
    Some(text.text().unwrap_or("").to_owned())
}

fn tokens(text: &str) -> Result<u32, PnmlError> {
    text.trim()
        .parse()
        .map_err(|_| PnmlError::BadMarking(text.to_owned()))
}

/// Reads the first `<net>` of a PNML document. Pages are flattened; nodes and
/// arcs keep document order.
pub fn from_pnml(text: &str) -> Result<PetriNet, PnmlError> {
    let doc = roxmltree::Document::parse(text)?;
    let net_el = doc
        .descendants()
        .find(|n| n.has_tag_name("net"))
        .ok_or(PnmlError::MissingNet)?;
    let mut net = PetriNet::default();
    let mut index: HashMap<String, NodeRef> = HashMap::new();
    let id_of = |n: roxmltree::Node<'_, '_>, element: &'static str| {
        n.attribute("id")
            .map(str::to_owned)
            .ok_or(PnmlError::MissingId { element })
    };

    for node in net_el.descendants() {
        if node.has_tag_name("place") && node.parent().is_some_and(|p| !p.has_tag_name("marking")) {
            let id = id_of(node, "place")?;
            let p = net.places.len();
            if index.insert(id.clone(), NodeRef::Place(p)).is_some() {
                return Err(PnmlError::DuplicateId(id));
            }
            if let Some(k) = text_child(node, "initialMarking") {
                let k = tokens(&k)?;
                if k > 0 {
                    net.initial_marking.insert(p, k);
                }
            }
            net.places.push(Place { id });
        } else if node.has_tag_name("transition") {
            let id = id_of(node, "transition")?;
            if index
                .insert(id.clone(), NodeRef::Transition(net.transitions.len()))
                .is_some()
            {
                return Err(PnmlError::DuplicateId(id));
            }
            let label = text_child(node, "name").map(ActivityLabel::new);
            net.transitions.push(Transition { id, label });
        }
    }

    for node in net_el.descendants().filter(|n| n.has_tag_name("arc")) {
        let arc_id = id_of(node, "arc")?;
        let resolve = |attr: &str| {
            let name = node.attribute(attr).unwrap_or("");
            index
                .get(name)
                .copied()
                .ok_or_else(|| PnmlError::UnknownNode {
                    arc: arc_id.clone(),
                    node: name.to_owned(),
                })
        };
        let (source, target) = (resolve("source")?, resolve("target")?);
        if matches!(
            (source, target),
            (NodeRef::Place(_), NodeRef::Place(_))
                | (NodeRef::Transition(_), NodeRef::Transition(_))
        ) {
            return Err(PnmlError::BadArc(arc_id));
        }
        net.arcs.push(Arc { source, target });
    }

    let mut final_marking = Marking::new();
    if let Some(marking) = net_el
        .descendants()
        .find(|n| n.has_tag_name("finalmarkings"))
        .and_then(|f| f.children().find(|n| n.has_tag_name("marking")))
    {
        for place in marking.children().filter(|n| n.has_tag_name("place")) {
            let idref = place.attribute("idref").unwrap_or("");
            let Some(&NodeRef::Place(p)) = index.get(idref) else {
                return Err(PnmlError::UnknownNode {
                    arc: "finalmarkings".into(),
                    node: idref.to_owned(),
                });
            };
            let k = tokens(&text_child_direct(place))?;
            if k > 0 {
                final_marking.insert(p, k);
            }
        }
    }
    net.final_marking = final_marking;
    Ok(net)
}

fn text_child_direct(node: roxmltree::Node<'_, '_>) -> String {
    node.children()
        .find(|c| c.has_tag_name("text"))
        .and_then(|t| t.text())
        .unwrap_or("")
        .to_owned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discovery::tree_to_petri;

    fn net(s: &str) -> PetriNet {
        tree_to_petri(&s.parse().unwrap())
    }

    #[test]
    fn leaf_document() {
        let xml = to_pnml(&net("'a'")).unwrap();
        let doc = roxmltree::Document::parse(&xml).unwrap();
        let count = |tag| {
            doc.descendants()
                .filter(|n| n.has_tag_name(tag) && n.attribute("id").is_some())
                .count()
        };
        assert_eq!(count("place"), 2);
        assert_eq!(count("transition"), 1);
        assert!(xml.contains("<name><text>a</text></name>"));
        assert!(xml.contains(
            "<place id=\"p0\">\n        <initialMarking><text>1</text></initialMarking>"
        ));
    }

    #[test]
    fn sequence_counts() {
        let xml = to_pnml(&net("seq('a', 'b')")).unwrap();
        assert_eq!(xml.matches("<place id=").count(), 3);
        assert_eq!(xml.matches("<transition id=").count(), 2);
        assert_eq!(xml.matches("<arc id=").count(), 4);
    }

    #[test]
    fn silent_transitions_are_unnamed() {
        let n = net("loop(tau, 'a', 'b')");
        let xml = to_pnml(&n).unwrap();
        assert_eq!(xml.matches("<name>").count(), 2);
        assert_eq!(xml.matches("<transition id=").count(), n.transitions.len());
    }

    #[test]
    fn round_trip() {
        for tree in [
            "loop(tau, 'a', 'b')",
            "seq('a&b', and('<c>', xor('d', tau)))",
        ] {
            let n = net(tree);
            let back = from_pnml(&to_pnml(&n).unwrap()).unwrap();
            assert_eq!(back, n);
            assert_eq!(to_pnml(&back).unwrap(), to_pnml(&n).unwrap());
        }
    }

    #[test]
    fn rejects_non_workflow_nets() {
        let mut n = net("'a'");
        n.places.push(Place { id: "stray".into() });
        assert!(matches!(to_pnml(&n), Err(ExportError::NotWorkflow(_))));
    }

    #[test]
    fn reader_errors() {
        assert!(matches!(from_pnml("<pnml>"), Err(PnmlError::Xml(_))));
        assert!(matches!(from_pnml("<pnml/>"), Err(PnmlError::MissingNet)));
        let dangling =
            r#"<pnml><net id="n"><place id="p"/><arc id="x" source="p" target="t"/></net></pnml>"#;
        assert!(matches!(
            from_pnml(dangling),
            Err(PnmlError::UnknownNode { .. })
        ));
    }
}
