//! Printing with the minimal parentheses the parser needs.

use std::fmt;

use super::{Formula, Node};

const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

fn write_prec(f: Formula, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (prec, node) = match f.node() {
        n @ Node::Or(..) => (OR, n),
        n @ Node::And(..) => (AND, n),
        n => (UNARY, n),
    };
    let paren = prec < ctx;
    if paren {
        out.write_str("(")?;
    }
    match node {
        Node::Prop(name) => out.write_str(&name)?,
        Node::Top => out.write_str("true")?,
        Node::Bot => out.write_str("false")?,
        Node::Neg(a) => {
            out.write_str("~")?;
            write_prec(a, UNARY, out)?;
        }
        Node::Diamond(a) => {
            out.write_str("<>")?;
            write_prec(a, UNARY, out)?;
        }
        Node::Box(a) => {
            out.write_str("[]")?;
            write_prec(a, UNARY, out)?;
        }
        Node::And(a, b) => {
            write_prec(a, AND, out)?;
            out.write_str(" & ")?;
            write_prec(b, UNARY, out)?;
        }
        Node::Or(a, b) => {
            write_prec(a, OR, out)?;
            out.write_str(" | ")?;
            write_prec(b, AND, out)?;
        }
        Node::Nabla(kids) => {
            out.write_str("nabla{")?;
            for (i, k) in kids.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_prec(*k, OR, out)?;
            }
            out.write_str("}")?;
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(*self, OR, f)
    }
}

/// Render a formula as a list of shared definitions, one per DAG node with
/// more than one parent, followed by the root. Useful when the tree form is
/// exponentially larger than the DAG.
pub fn render_shared(root: Formula) -> String {
    use std::collections::HashMap;
    let order = super::dag_nodes(&[root]);
    let mut parents: HashMap<Formula, usize> = HashMap::new();
    for &g in &order {
        for c in g.children() {
            *parents.entry(c).or_default() += 1;
        }
    }
    let mut names: HashMap<Formula, String> = HashMap::new();
    let mut lines = Vec::new();
    let mut next = 0;
    for &g in &order {
        let shared =
            parents.get(&g).copied().unwrap_or(0) > 1 && !matches!(g.node(), Node::Prop(_) | Node::Top | Node::Bot);
        let body = render_node(g, &names);
        if shared {
            let name = format!("$d{next}");
            next += 1;
            lines.push(format!("{name} := {body}"));
            names.insert(g, name);
        } else {
            names.insert(g, body);
        }
    }
    lines.push(names[&root].clone());
    lines.join("\n")
}

fn render_node(g: Formula, names: &std::collections::HashMap<Formula, String>) -> String {
    let wrap = |c: &Formula| {
        let s = &names[c];
        if matches!(c.node(), Node::And(..) | Node::Or(..)) && !s.starts_with('$') {
            format!("({s})")
        } else {
            s.clone()
        }
    };
    match g.node() {
        Node::Prop(name) => name.to_string(),
        Node::Top => "true".into(),
        Node::Bot => "false".into(),
        Node::Neg(a) => format!("~{}", wrap(&a)),
        Node::Diamond(a) => format!("<>{}", wrap(&a)),
        Node::Box(a) => format!("[]{}", wrap(&a)),
        Node::And(a, b) => format!("{} & {}", wrap(&a), wrap(&b)),
        Node::Or(a, b) => format!("{} | {}", wrap(&a), wrap(&b)),
        Node::Nabla(kids) => format!(
            "nabla{{{}}}",
            kids.iter().map(|k| names[k].clone()).collect::<Vec<_>>().join(", ")
        ),
    }
}
