//! Report trees and their renderings.
//!
//! The structured format is line oriented. A scalar entry is `key: value`, a
//! nested entry is `key:` followed by its children indented two spaces, and
//! list items start with `- `. Rationals and polynomials are always strings,
//! never floats. The same tree also renders as JSON.

use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Str(String),
    Int(u64),
    Bool(bool),
    List(Vec<Node>),
    Map(Vec<(String, Node)>),
}

impl Node {
    pub fn map() -> MapBuilder {
        MapBuilder(Vec::new())
    }

    pub fn str(s: impl ToString) -> Node {
        Node::Str(s.to_string())
    }

    pub fn strs<I: IntoIterator<Item = S>, S: ToString>(items: I) -> Node {
        Node::List(items.into_iter().map(Node::str).collect())
    }
}

pub struct MapBuilder(Vec<(String, Node)>);

impl MapBuilder {
    pub fn with(mut self, key: &str, value: Node) -> Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn str(self, key: &str, value: impl ToString) -> Self {
        self.with(key, Node::str(value))
    }

    pub fn int(self, key: &str, value: u64) -> Self {
        self.with(key, Node::Int(value))
    }

    pub fn bool(self, key: &str, value: bool) -> Self {
        self.with(key, Node::Bool(value))
    }

    pub fn build(self) -> Node {
        Node::Map(self.0)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Node::Str(v) => s.serialize_str(v),
            Node::Int(v) => s.serialize_u64(*v),
            Node::Bool(v) => s.serialize_bool(*v),
            Node::List(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for item in items {
                    seq.serialize_element(item)?;
                }
                seq.end()
            }
            Node::Map(entries) => {
                let mut map = s.serialize_map(Some(entries.len()))?;
                for (k, v) in entries {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
    }
}

fn scalar(node: &Node) -> Option<String> {
    match node {
        Node::Str(v) => Some(v.clone()),
        Node::Int(v) => Some(v.to_string()),
        Node::Bool(v) => Some(v.to_string()),
        Node::List(v) if v.is_empty() => Some("[]".into()),
        Node::Map(v) if v.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn write_entries(entries: &[(String, Node)], indent: usize, out: &mut String) {
    for (k, v) in entries {
        write_keyed(k, v, indent, out);
    }
}

fn write_keyed(key: &str, value: &Node, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match scalar(value) {
        Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
        None => {
            out.push_str(&format!("{pad}{key}:\n"));
            write_block(value, indent + 2, out);
        }
    }
}

fn write_block(node: &Node, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match node {
        Node::Map(entries) => write_entries(entries, indent, out),
        Node::List(items) => {
            for item in items {
                match (item, scalar(item)) {
                    (_, Some(s)) => out.push_str(&format!("{pad}- {s}\n")),
                    (Node::Map(entries), None) => {
                        // first entry shares the dash line, the rest align under it
                        let mut first = String::new();
                        write_keyed(&entries[0].0, &entries[0].1, indent + 2, &mut first);
                        out.push_str(&format!("{pad}- {}", &first[indent + 2..]));
                        write_entries(&entries[1..], indent + 2, out);
                    }
                    (_, None) => {
                        out.push_str(&format!("{pad}-\n"));
                        write_block(item, indent + 2, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(node).unwrap_or_default())),
    }
}

pub fn to_structured(node: &Node) -> String {
    let mut out = String::new();
    write_block(node, 0, &mut out);
    out
}

pub fn to_json(node: &Node) -> String {
    let mut s = serde_json::to_string_pretty(node).expect("report trees always serialize");
    s.push('\n');
    s
}

/// A named cross-check; the process exit status is zero iff all pass.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl ToString, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            passed,
        }
    }
}

pub fn checks_node(checks: &[Check]) -> Node {
    Node::List(
        checks
            .iter()
            .map(|c| Node::map().str("name", &c.name).bool("passed", c.passed).build())
            .collect(),
    )
}

pub fn checks_text(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| format!("check {}: {}\n", c.name, if c.passed { "ok" } else { "FAILED" }))
        .collect()
}

/// Output of one command: a report tree, its human-readable text, and the
/// cross-checks it ran.
pub struct Outcome {
    pub node: Node,
    pub text: String,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_layout() {
        let node = Node::map()
            .str("command", "demo")
            .with("values", Node::strs(["1/2", "-3"]))
            .with(
                "items",
                Node::List(vec![Node::map().int("a", 1).with("b", Node::strs(["x"])).build()]),
            )
            .with("empty", Node::List(vec![]))
            .build();
        let want = "command: demo\nvalues:\n  - 1/2\n  - -3\nitems:\n  - a: 1\n    b:\n      - x\nempty: []\n";
        assert_eq!(to_structured(&node), want);
    }

    #[test]
    fn json_keeps_insertion_order() {
        let node = Node::map().str("z", "1/3").bool("a", true).build();
        assert_eq!(to_json(&node), "{\n  \"z\": \"1/3\",\n  \"a\": true\n}\n");
    }
}
