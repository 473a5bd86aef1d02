//! Global hash-consing table for formula nodes.
//!
//! Every structurally distinct node is stored exactly once, so two formulas
//! are structurally equal iff their handles are equal. The table is append
//! only: reads take a shared lock, inserts an exclusive one.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use parking_lot::RwLock;

/// Handle to an interned formula node.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(u32);

/// One layer of formula structure. Children are handles into the table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Node {
    Prop(Arc<str>),
    Top,
    Bot,
    Neg(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Diamond(Formula),
    Box(Formula),
    /// Sorted, duplicate-free child list.
    Nabla(Arc<[Formula]>),
}

struct Table {
    nodes: Vec<Node>,
    index: HashMap<Node, Formula>,
}

static TABLE: LazyLock<RwLock<Table>> = LazyLock::new(|| {
    RwLock::new(Table {
        nodes: Vec::new(),
        index: HashMap::new(),
    })
});

fn intern(node: Node) -> Formula {
    if let Some(&f) = TABLE.read().index.get(&node) {
        return f;
    }
    let mut table = TABLE.write();
    if let Some(&f) = table.index.get(&node) {
        return f;
    }
    let id = Formula(u32::try_from(table.nodes.len()).expect("formula table overflow"));
    table.nodes.push(node.clone());
    table.index.insert(node, id);
    id
}

/// Number of nodes interned so far in this process.
pub fn table_len() -> usize {
    TABLE.read().nodes.len()
}

impl Formula {
    pub fn node(self) -> Node {
        TABLE.read().nodes[self.0 as usize].clone()
    }

    /// Raw handle value; stable for the lifetime of the process only.
    pub fn id(self) -> u32 {
        self.0
    }

    pub fn prop(name: &str) -> Formula {
        intern(Node::Prop(Arc::from(name)))
    }

    pub fn top() -> Formula {
        intern(Node::Top)
    }

    pub fn bot() -> Formula {
        intern(Node::Bot)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        intern(Node::Neg(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        intern(Node::And(a, b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        intern(Node::Or(a, b))
    }

    /// `a -> b`, which is sugar for `~a | b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// `a <-> b` as `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a, b), Formula::implies(b, a))
    }

    pub fn diamond(f: Formula) -> Formula {
        intern(Node::Diamond(f))
    }

    pub fn boxed(f: Formula) -> Formula {
        intern(Node::Box(f))
    }

    pub fn nabla<I: IntoIterator<Item = Formula>>(children: I) -> Formula {
        let mut kids: Vec<Formula> = children.into_iter().collect();
        kids.sort_unstable();
        kids.dedup();
        intern(Node::Nabla(kids.into()))
    }

    /// Left-folded conjunction with `true`/`false` absorption and duplicate
    /// removal. The empty conjunction is `true`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let top = Formula::top();
        let bot = Formula::bot();
        let mut seen = Vec::new();
        for f in items {
            if f == bot {
                return bot;
            }
            if f != top && !seen.contains(&f) {
                seen.push(f);
            }
        }
        seen.into_iter().reduce(Formula::and).unwrap_or(top)
    }

    /// Left-folded disjunction with `true`/`false` absorption and duplicate
    /// removal. The empty disjunction is `false`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let top = Formula::top();
        let bot = Formula::bot();
        let mut seen = Vec::new();
        for f in items {
            if f == top {
                return top;
            }
            if f != bot && !seen.contains(&f) {
                seen.push(f);
            }
        }
        seen.into_iter().reduce(Formula::or).unwrap_or(bot)
    }

    /// Negation that folds constants and double negation.
    pub fn negate(f: Formula) -> Formula {
        match f.node() {
            Node::Top => Formula::bot(),
            Node::Bot => Formula::top(),
            Node::Neg(g) => g,
            _ => Formula::not(f),
        }
    }

    pub fn children(self) -> Vec<Formula> {
        match self.node() {
            Node::Prop(_) | Node::Top | Node::Bot => Vec::new(),
            Node::Neg(a) | Node::Diamond(a) | Node::Box(a) => vec![a],
            Node::And(a, b) | Node::Or(a, b) => vec![a, b],
            Node::Nabla(kids) => kids.to_vec(),
        }
    }

    pub fn is_nabla_free(self) -> bool {
        dag_nodes(&[self])
            .into_iter()
            .all(|g| !matches!(g.node(), Node::Nabla(_)))
    }

    pub fn as_prop(self) -> Option<Arc<str>> {
        match self.node() {
            Node::Prop(name) => Some(name),
            _ => None,
        }
    }

    /// `Some((letter, positive))` for `p` and `~p`.
    pub fn as_literal(self) -> Option<(Arc<str>, bool)> {
        match self.node() {
            Node::Prop(name) => Some((name, true)),
            Node::Neg(g) => g.as_prop().map(|name| (name, false)),
            _ => None,
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}:{}", self.0, self)
    }
}

/// All nodes reachable from `roots`, each once, children before parents.
pub fn dag_nodes(roots: &[Formula]) -> Vec<Formula> {
    let mut order = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack: Vec<(Formula, bool)> = roots.iter().rev().map(|&r| (r, false)).collect();
    while let Some((f, expanded)) = stack.pop() {
        if expanded {
            order.push(f);
            continue;
        }
        if !seen.insert(f) {
            continue;
        }
        stack.push((f, true));
        for c in f.children().into_iter().rev() {
            if !seen.contains(&c) {
                stack.push((c, false));
            }
        }
    }
    order
}
