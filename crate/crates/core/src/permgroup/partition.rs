use std::collections::HashMap;

use thiserror::Error;

use crate::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("class {class} has {size} points, expected {expected}")]
    UnequalClasses { class: usize, size: usize, expected: usize },
    #[error("empty partition")]
    Empty,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A partition of `[0, v)` into `v1` classes of equal size `v0`.
///
/// Class indices are canonical: classes are numbered in order of their
/// smallest point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
    v0: usize,
    v1: usize,
}

impl Partition {
    /// Builds a partition from arbitrary per-point labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self, PartitionError> {
        if labels.is_empty() {
            return Err(PartitionError::Empty);
        }
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let class_of: Vec<usize> = labels
            .iter()
            .map(|&l| {
                let next = relabel.len();
                *relabel.entry(l).or_insert(next)
            })
            .collect();
        let v1 = relabel.len();
        let mut sizes = vec![0usize; v1];
        for &c in &class_of {
            sizes[c] += 1;
        }
        let v0 = sizes[0];
        if let Some((class, &size)) = sizes.iter().enumerate().find(|(_, &s)| s != v0) {
            return Err(PartitionError::UnequalClasses {
                class,
                size,
                expected: v0,
            });
        }
        Ok(Partition { class_of, v0, v1 })
    }

    pub fn from_classes(v: usize, classes: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut labels = vec![usize::MAX; v];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= v || labels[x] != usize::MAX {
                    return Err(PartitionError::WrongLength {
                        expected: v,
                        found: classes.iter().map(Vec::len).sum(),
                    });
                }
                labels[x] = c;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(PartitionError::WrongLength {
                expected: v,
                found: classes.iter().map(Vec::len).sum(),
            });
        }
        Partition::from_labels(&labels)
    }

    /// Parses `v` whitespace-separated class labels, on one line or many.
    pub fn parse(text: &str, v: usize) -> Result<Self, PartitionError> {
        let mut labels = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            labels.extend(crate::design::parse_numbers(trimmed, i + 1)?);
        }
        if labels.len() != v {
            return Err(PartitionError::WrongLength {
                expected: v,
                found: labels.len(),
            });
        }
        Partition::from_labels(&labels)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.class_of.iter().map(|c| c.to_string()).collect();
        parts.join(" ") + "\n"
    }

    pub fn v(&self) -> usize {
        self.class_of.len()
    }

    pub fn v0(&self) -> usize {
        self.v0
    }

    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.v()).filter(|&x| self.class_of[x] == c).collect()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::with_capacity(self.v0); self.v1];
        for (x, &c) in self.class_of.iter().enumerate() {
            classes[c].push(x);
        }
        classes
    }

    pub fn is_trivial(&self) -> bool {
        self.v0 == 1 || self.v1 == 1
    }

    /// Applies a point relabeling `x -> map[x]`.
    pub fn relabel(&self, map: &[usize]) -> Partition {
        let mut labels = vec![0; self.v()];
        for (x, &c) in self.class_of.iter().enumerate() {
            labels[map[x]] = c;
        }
        Partition::from_labels(&labels).expect("relabeling keeps class sizes")
    }
}
