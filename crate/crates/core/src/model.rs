//! Clusterings, expert hierarchies and the flattened column list.
//!
//! Both input files are JSON documents of the shape
//!
//! ```json
//! { "name": "optional", "classes": [ { "label": "ANIMAL", "members": ["cat"], "children": [] } ] }
//! ```
//!
//! `children` is only accepted in hierarchy files. Words and labels are trimmed
//! and NFC-normalized on the way in and compared as exact strings afterwards.

use std::fmt;

use indexmap::{IndexMap, IndexSet};
use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

/// Insertion-ordered, duplicate-free set of words.
pub type MemberSet = IndexSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{location}: document has no classes")]
    NoClasses { location: String },

    #[error("{location}: empty label")]
    EmptyLabel { location: String },

    #[error("{location}: duplicate label {label:?} (first defined at {first})")]
    DuplicateLabel {
        label: String,
        location: String,
        first: String,
    },

    #[error("{location}: empty member string")]
    EmptyMember { location: String },

    #[error("{location}: duplicate member {member:?} in class {label:?}")]
    DuplicateMember {
        label: String,
        member: String,
        location: String,
    },

    #[error("{location}: class {label:?} has no members")]
    EmptyClass { label: String, location: String },

    #[error("{location}: `children` is not allowed in a flat clustering file")]
    ChildrenNotAllowed { location: String },

    #[error("column {path} has no effective members")]
    EmptyColumn { path: String },
}

/// Normalizes one word or label: surrounding whitespace trimmed, then NFC.
pub fn normalize_word(raw: &str) -> String {
    raw.trim().nfc().collect()
}

/// One named class of words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledClass {
    pub label: String,
    pub members: MemberSet,
}

impl LabeledClass {
    /// Builds a class from raw strings, normalizing and validating them.
    pub fn new<L, I, S>(label: L, members: I) -> Result<Self, ModelError>
    where
        L: AsRef<str>,
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let label = checked_label(label.as_ref(), "class")?;
        let members = checked_members(&label, members, "class")?;
        if members.is_empty() {
            return Err(ModelError::EmptyClass {
                label,
                location: "class".into(),
            });
        }
        Ok(Self { label, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// System-side clustering: an ordered list of possibly overlapping classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clustering {
    pub name: Option<String>,
    pub classes: Vec<LabeledClass>,
}

impl Clustering {
    pub fn new(name: Option<String>, classes: Vec<LabeledClass>) -> Result<Self, ModelError> {
        if classes.is_empty() {
            return Err(ModelError::NoClasses {
                location: "classes".into(),
            });
        }
        let mut seen = IndexMap::new();
        for (i, class) in classes.iter().enumerate() {
            let location = format!("classes[{i}]");
            if let Some(first) = seen.insert(class.label.clone(), location.clone()) {
                return Err(ModelError::DuplicateLabel {
                    label: class.label.clone(),
                    location,
                    first,
                });
            }
        }
        Ok(Self { name, classes })
    }

    /// Total (class, member) incidences, counting a word once per class it is in.
    pub fn incidence_count(&self) -> usize {
        self.classes.iter().map(LabeledClass::len).sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(|c| c.label.as_str())
    }

    /// `true` when no word appears in more than one class.
    pub fn is_partition(&self) -> bool {
        let mut seen = IndexSet::new();
        self.classes
            .iter()
            .flat_map(|c| c.members.iter())
            .all(|w| seen.insert(w))
    }

    pub fn to_json(&self) -> String {
        let doc = RawDocument {
            name: self.name.clone(),
            classes: self
                .classes
                .iter()
                .map(|c| RawNode {
                    label: c.label.clone(),
                    members: Some(c.members.iter().cloned().collect()),
                    children: None,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("clustering serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyNode {
    pub label: String,
    pub own_members: MemberSet,
    pub children: Vec<HierarchyNode>,
}

impl HierarchyNode {
    pub fn leaf(class: LabeledClass) -> Self {
        Self {
            label: class.label,
            own_members: class.members,
            children: Vec::new(),
        }
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(HierarchyNode::count).sum::<usize>()
    }

    fn depth(&self) -> usize {
        1 + self.children.iter().map(HierarchyNode::depth).max().unwrap_or(0)
    }
}

/// Expert-side gold standard: a forest of labeled nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpertHierarchy {
    pub name: Option<String>,
    pub roots: Vec<HierarchyNode>,
}

impl ExpertHierarchy {
    /// Validates labels and node contents of an already-built tree.
    pub fn new(name: Option<String>, roots: Vec<HierarchyNode>) -> Result<Self, ModelError> {
        if roots.is_empty() {
            return Err(ModelError::NoClasses {
                location: "classes".into(),
            });
        }
        let mut seen = IndexMap::new();
        let mut stack: Vec<(String, &HierarchyNode)> = roots
            .iter()
            .enumerate()
            .rev()
            .map(|(i, n)| (format!("classes[{i}]"), n))
            .collect();
        while let Some((location, node)) = stack.pop() {
            if node.label.is_empty() {
                return Err(ModelError::EmptyLabel { location });
            }
            if node.own_members.is_empty() && node.children.is_empty() {
                return Err(ModelError::EmptyClass {
                    label: node.label.clone(),
                    location,
                });
            }
            if let Some(first) = seen.insert(node.label.clone(), location.clone()) {
                return Err(ModelError::DuplicateLabel {
                    label: node.label.clone(),
                    location,
                    first,
                });
            }
            for (i, child) in node.children.iter().enumerate().rev() {
                stack.push((format!("{location}.children[{i}]"), child));
            }
        }
        Ok(Self { name, roots })
    }

    /// Degenerate hierarchy with every class as a childless root.
    pub fn flat(clustering: Clustering) -> Self {
        Self {
            name: clustering.name,
            roots: clustering.classes.into_iter().map(HierarchyNode::leaf).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.roots.iter().map(HierarchyNode::count).sum()
    }

    pub fn depth(&self) -> usize {
        self.roots.iter().map(HierarchyNode::depth).max().unwrap_or(0)
    }

    pub fn is_flat(&self) -> bool {
        self.roots.iter().all(|r| r.children.is_empty())
    }

    pub fn to_json(&self) -> String {
        fn raw(node: &HierarchyNode) -> RawNode {
            RawNode {
                label: node.label.clone(),
                members: Some(node.own_members.iter().cloned().collect()),
                children: if node.children.is_empty() {
                    None
                } else {
                    Some(node.children.iter().map(raw).collect())
                },
            }
        }
        let doc = RawDocument {
            name: self.name.clone(),
            classes: self.roots.iter().map(raw).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("hierarchy serializes")
    }
}

/// How a hierarchy node's members are computed when flattened into a column.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlattenMode {
    /// Own members plus the members of every descendant.
    #[default]
    Inherit,
    /// Own members only.
    OwnOnly,
}

impl FlattenMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FlattenMode::Inherit => "inherit",
            FlattenMode::OwnOnly => "own-only",
        }
    }
}

impl fmt::Display for FlattenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One flattened hierarchy node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Column {
    /// Labels from the root down to this node.
    pub path: Vec<String>,
    pub members: MemberSet,
    pub is_leaf: bool,
}

impl Column {
    pub fn label(&self) -> &str {
        self.path.last().map(String::as_str).unwrap_or_default()
    }

    pub fn is_top_level(&self) -> bool {
        self.path.len() == 1
    }

    pub fn display_path(&self) -> String {
        self.path.join("/")
    }
}

/// Pre-order list of expert columns, one per hierarchy node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnList {
    pub mode: FlattenMode,
    pub columns: Vec<Column>,
}

impl ColumnList {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn incidence_count(&self) -> usize {
        self.columns.iter().map(|c| c.members.len()).sum()
    }
}

/// Flattens `hierarchy` into one column per node, in pre-order.
pub fn flatten(hierarchy: &ExpertHierarchy, mode: FlattenMode) -> Result<ColumnList, ModelError> {
    // Returns the node's effective members so parents can absorb them.
    fn visit(
        node: &HierarchyNode,
        path: &mut Vec<String>,
        mode: FlattenMode,
        out: &mut Vec<Column>,
    ) -> MemberSet {
        path.push(node.label.clone());
        let slot = out.len();
        out.push(Column {
            path: path.clone(),
            members: MemberSet::new(),
            is_leaf: node.children.is_empty(),
        });
        let mut effective = node.own_members.clone();
        for child in &node.children {
            let below = visit(child, path, mode, out);
            if mode == FlattenMode::Inherit {
                effective.extend(below);
            }
        }
        path.pop();
        out[slot].members = effective.clone();
        effective
    }

    let mut columns = Vec::with_capacity(hierarchy.node_count());
    let mut path = Vec::new();
    for root in &hierarchy.roots {
        visit(root, &mut path, mode, &mut columns);
    }
    if mode == FlattenMode::Inherit {
        if let Some(empty) = columns.iter().find(|c| c.members.is_empty()) {
            return Err(ModelError::EmptyColumn {
                path: empty.display_path(),
            });
        }
    }
    Ok(ColumnList { mode, columns })
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    classes: Vec<RawNode>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawNode {
    label: String,
    #[serde(default)]
    members: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<Vec<RawNode>>,
}

fn read_document(text: &str) -> Result<RawDocument, ModelError> {
    serde_json::from_str(text).map_err(|e| ModelError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn checked_label(raw: &str, location: &str) -> Result<String, ModelError> {
    let label = normalize_word(raw);
    if label.is_empty() {
        return Err(ModelError::EmptyLabel {
            location: location.to_string(),
        });
    }
    Ok(label)
}

fn checked_members<I, S>(label: &str, raw: I, location: &str) -> Result<MemberSet, ModelError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut members = MemberSet::new();
    for (j, word) in raw.into_iter().enumerate() {
        let word = normalize_word(word.as_ref());
        let location = format!("{location}.members[{j}]");
        if word.is_empty() {
            return Err(ModelError::EmptyMember { location });
        }
        if members.contains(&word) {
            return Err(ModelError::DuplicateMember {
                label: label.to_string(),
                member: word,
                location,
            });
        }
        members.insert(word);
    }
    Ok(members)
}

/// Parses a flat clustering file.
pub fn parse_clustering(text: &str) -> Result<Clustering, ModelError> {
    let doc = read_document(text)?;
    let mut classes = Vec::with_capacity(doc.classes.len());
    for (i, node) in doc.classes.into_iter().enumerate() {
        let location = format!("classes[{i}]");
        if node.children.is_some() {
            return Err(ModelError::ChildrenNotAllowed { location });
        }
        let label = checked_label(&node.label, &location)?;
        let members = checked_members(&label, node.members.unwrap_or_default(), &location)?;
        if members.is_empty() {
            return Err(ModelError::EmptyClass { label, location });
        }
        classes.push(LabeledClass { label, members });
    }
    Clustering::new(doc.name, classes)
}

/// Parses a hierarchy file; a file without any `children` is a flat hierarchy.
pub fn parse_hierarchy(text: &str) -> Result<ExpertHierarchy, ModelError> {
    fn node(raw: RawNode, location: String) -> Result<HierarchyNode, ModelError> {
        let label = checked_label(&raw.label, &location)?;
        let own_members = checked_members(&label, raw.members.unwrap_or_default(), &location)?;
        let children = raw
            .children
            .unwrap_or_default()
            .into_iter()
            .enumerate()
            .map(|(i, c)| node(c, format!("{location}.children[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HierarchyNode {
            label,
            own_members,
            children,
        })
    }

    let doc = read_document(text)?;
    let roots = doc
        .classes
        .into_iter()
        .enumerate()
        .map(|(i, raw)| node(raw, format!("classes[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    ExpertHierarchy::new(doc.name, roots)
}
