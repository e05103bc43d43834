//! Newick serialization of dendrograms, plus a small parser used to check
//! round trips.
//!
//! Branch lengths are parent height minus child height with leaves at
//! height zero, which preserves the ultrametric reading of single linkage:
//! the distance from any leaf up to a node is that node's merge height.

use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Serialize a dendrogram as a Newick string terminated by `;`.
///
/// Leaves print their row label when `labels` is given, otherwise the
/// original vertex id. Labels containing Newick metacharacters are
/// single-quoted.
pub fn to_newick<T: Scalar>(d: &Dendrogram<T>, labels: Option<&[String]>) -> Result<String> {
    if let Some(labels) = labels {
        if labels.len() != d.n() {
            return Err(Error::LabelLengthMismatch {
                expected: d.n(),
                found: labels.len(),
            });
        }
    }

    // Explicit stack; recursion would overflow on caterpillar trees.
    enum Step<T> {
        Node { id: usize, parent_height: Option<T> },
        Text(&'static str),
        Branch { parent_height: T, child_height: T },
    }

    let mut out = String::new();
    let mut stack = vec![Step::Node {
        id: d.root(),
        parent_height: None,
    }];
    while let Some(step) = stack.pop() {
        match step {
            Step::Text(s) => out.push_str(s),
            Step::Branch {
                parent_height,
                child_height,
            } => {
                out.push(':');
                out.push_str(&format!("{}", parent_height - child_height));
            }
            Step::Node { id, parent_height } => {
                let node = d.node(id);
                match node.children() {
                    None => {
                        let vertex = d.members(id)[0];
                        match labels {
                            Some(labels) => out.push_str(&quote_label(&labels[vertex])),
                            None => out.push_str(&vertex.to_string()),
                        }
                        if let Some(ph) = parent_height {
                            stack.push(Step::Branch {
                                parent_height: ph,
                                child_height: T::zero(),
                            });
                        }
                    }
                    Some((left, right)) => {
                        let height = node.height().expect("internal node");
                        if let Some(ph) = parent_height {
                            stack.push(Step::Branch {
                                parent_height: ph,
                                child_height: height,
                            });
                        }
                        stack.push(Step::Text(")"));
                        stack.push(Step::Node {
                            id: right,
                            parent_height: Some(height),
                        });
                        stack.push(Step::Text(","));
                        stack.push(Step::Node {
                            id: left,
                            parent_height: Some(height),
                        });
                        stack.push(Step::Text("("));
                    }
                }
            }
        }
    }
    out.push(';');
    Ok(out)
}

fn needs_quoting(label: &str) -> bool {
    label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ',' | ':' | ';' | '\'' | '[' | ']'))
}

fn quote_label(label: &str) -> String {
    if needs_quoting(label) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

/// Parsed Newick node.
#[derive(Debug, Clone, PartialEq)]
pub struct NewickNode<T> {
    pub label: Option<String>,
    pub length: Option<T>,
    pub children: Vec<NewickNode<T>>,
}

impl<T> NewickNode<T> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Labels of all leaves below this node, left to right.
    pub fn leaf_labels(&self) -> Vec<&str> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if node.is_leaf() {
                out.push(node.label.as_deref().unwrap_or(""));
            } else {
                for child in node.children.iter().rev() {
                    stack.push(child);
                }
            }
        }
        out
    }
}

/// Parse a Newick string. Supports quoted labels and branch lengths; this
/// is intentionally a subset parser matched to [`to_newick`] output.
pub fn parse_newick<T: Scalar + std::str::FromStr>(text: &str) -> Result<NewickNode<T>> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let root = parser.subtree()?;
    parser.expect(b';')?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing characters after ';'"));
    }
    Ok(root)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, detail: &str) -> Error {
        Error::NewickParse {
            pos: self.pos,
            detail: detail.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn subtree<T: Scalar + std::str::FromStr>(&mut self) -> Result<NewickNode<T>> {
        self.skip_ws();
        let mut node = if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut children = vec![self.subtree()?];
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        children.push(self.subtree()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
            NewickNode {
                label: self.label()?,
                length: None,
                children,
            }
        } else {
            let label = self.label()?;
            if label.is_none() {
                return Err(self.error("expected a label or '('"));
            }
            NewickNode {
                label,
                length: None,
                children: Vec::new(),
            }
        };
        self.skip_ws();
        if self.peek() == Some(b':') {
            self.pos += 1;
            node.length = Some(self.number()?);
        }
        Ok(node)
    }

    fn label(&mut self) -> Result<Option<String>> {
        self.skip_ws();
        match self.peek() {
            Some(b'\'') => {
                self.pos += 1;
                let mut out = String::new();
                loop {
                    match self.peek() {
                        Some(b'\'') if self.bytes.get(self.pos + 1) == Some(&b'\'') => {
                            out.push('\'');
                            self.pos += 2;
                        }
                        Some(b'\'') => {
                            self.pos += 1;
                            break;
                        }
                        Some(b) => {
                            out.push(b as char);
                            self.pos += 1;
                        }
                        None => return Err(self.error("unterminated quoted label")),
                    }
                }
                Ok(Some(out))
            }
            _ => {
                let start = self.pos;
                while let Some(b) = self.peek() {
                    if b.is_ascii_whitespace()
                        || matches!(b, b'(' | b')' | b',' | b':' | b';' | b'[' | b']' | b'\'')
                    {
                        break;
                    }
                    self.pos += 1;
                }
                if self.pos == start {
                    Ok(None)
                } else {
                    Ok(Some(
                        std::str::from_utf8(&self.bytes[start..self.pos])
                            .map_err(|_| self.error("label is not utf-8"))?
                            .to_string(),
                    ))
                }
            }
        }
    }

    fn number<T: Scalar + std::str::FromStr>(&mut self) -> Result<T> {
        self.skip_ws();
        let start = self.pos;
        while let Some(b) = self.peek() {
            if matches!(b, b'0'..=b'9' | b'.' | b'-' | b'+' | b'e' | b'E') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| self.error("number is not utf-8"))?;
        text.parse()
            .map_err(|_| self.error(&format!("cannot parse '{text}' as a branch length")))
    }
}
