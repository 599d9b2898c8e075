//! Binary search trees built by leaf insertion, and the sylvester,
//! #-sylvester and Baxter insertion maps.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::words::{AWord, Letter};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Node {
    label: Letter,
    left: Tree,
    right: Tree,
}

/// Persistent labelled binary tree; insertion shares untouched subtrees.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Tree(Option<Arc<Node>>);

/// Which side a label equal to the current node descends to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Left subtree `≤ x`, right subtree `> x`.
    Right,
    /// Left subtree `< x`, right subtree `≥ x`.
    Left,
}

impl Tree {
    pub fn empty() -> Tree {
        Tree(None)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn label(&self) -> Option<Letter> {
        self.0.as_ref().map(|n| n.label)
    }

    pub fn left(&self) -> Option<&Tree> {
        self.0.as_ref().map(|n| &n.left)
    }

    pub fn right(&self) -> Option<&Tree> {
        self.0.as_ref().map(|n| &n.right)
    }

    pub fn leaf(label: Letter) -> Tree {
        Tree::node(label, Tree::empty(), Tree::empty())
    }

    pub fn node(label: Letter, left: Tree, right: Tree) -> Tree {
        Tree(Some(Arc::new(Node { label, left, right })))
    }

    pub fn insert(&self, a: Letter, strict: Strictness) -> Tree {
        match &self.0 {
            None => Tree::leaf(a),
            Some(n) => {
                let go_right = match strict {
                    Strictness::Right => a > n.label,
                    Strictness::Left => a >= n.label,
                };
                if go_right {
                    Tree::node(n.label, n.left.clone(), n.right.insert(a, strict))
                } else {
                    Tree::node(n.label, n.left.insert(a, strict), n.right.clone())
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        match &self.0 {
            None => 0,
            Some(n) => 1 + n.left.size() + n.right.size(),
        }
    }

    /// Labels in in-order.
    pub fn inorder(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.inorder_into(&mut out);
        out
    }

    fn inorder_into(&self, out: &mut Vec<Letter>) {
        if let Some(n) = &self.0 {
            n.left.inorder_into(out);
            out.push(n.label);
            n.right.inorder_into(out);
        }
    }

    /// Checks the search-tree property for the given strictness.
    pub fn is_search_tree(&self, strict: Strictness) -> bool {
        fn ok(t: &Tree, lo: Option<(Letter, bool)>, hi: Option<(Letter, bool)>, s: Strictness) -> bool {
            // Bounds carry whether equality is allowed.
            let Some(n) = &t.0 else { return true };
            if let Some((b, eq)) = lo {
                if n.label < b || (n.label == b && !eq) {
                    return false;
                }
            }
            if let Some((b, eq)) = hi {
                if n.label > b || (n.label == b && !eq) {
                    return false;
                }
            }
            let (left_eq, right_eq) = match s {
                Strictness::Right => (true, false),
                Strictness::Left => (false, true),
            };
            ok(&n.left, lo, Some((n.label, left_eq)), s) && ok(&n.right, Some((n.label, right_eq)), hi, s)
        }
        ok(self, None, None, strict)
    }

    /// Graphviz rendering; node ids follow pre-order, so output is stable.
    pub fn to_dot(&self, name: &str) -> String {
        fn walk(t: &Tree, next: &mut usize, out: &mut String) -> Option<usize> {
            let n = t.0.as_ref()?;
            let id = *next;
            *next += 1;
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", n.label);
            for (child, side) in [(&n.left, "L"), (&n.right, "R")] {
                match walk(child, next, out) {
                    Some(c) => {
                        let _ = writeln!(out, "  n{id} -> n{c} [label=\"{side}\"];");
                    }
                    None => {
                        let nil = *next;
                        *next += 1;
                        let _ = writeln!(out, "  n{nil} [shape=point];");
                        let _ = writeln!(out, "  n{id} -> n{nil} [label=\"{side}\"];");
                    }
                }
            }
            Some(id)
        }
        let mut out = format!("digraph {name} {{\n");
        let mut next = 0;
        walk(self, &mut next, &mut out);
        out.push_str("}\n");
        out
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            None => s.serialize_none(),
            Some(n) => {
                let mut st = s.serialize_struct("Tree", 3)?;
                st.serialize_field("label", &n.label)?;
                st.serialize_field("left", &n.left)?;
                st.serialize_field("right", &n.right)?;
                st.end()
            }
        }
    }
}

/// Right-strict tree of `w`, reading letters right to left.
pub fn p_sylv(w: &AWord) -> Tree {
    w.letters().iter().rev().fold(Tree::empty(), |t, &a| t.insert(a, Strictness::Right))
}

/// Left-strict tree of `w`, reading letters left to right.
pub fn p_sylv_sharp(w: &AWord) -> Tree {
    w.letters().iter().fold(Tree::empty(), |t, &a| t.insert(a, Strictness::Left))
}

/// The pair `(P_sylv#(w), P_sylv(w))`; equal pairs iff Baxter congruent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct TwinTrees {
    pub left_strict: Tree,
    pub right_strict: Tree,
}

pub fn p_baxt(w: &AWord) -> TwinTrees {
    TwinTrees { left_strict: p_sylv_sharp(w), right_strict: p_sylv(w) }
}

impl TwinTrees {
    pub fn to_dot(&self) -> String {
        let mut out = self.left_strict.to_dot("left_strict");
        out.push_str(&self.right_strict.to_dot("right_strict"));
        out
    }
}
