use std::collections::HashMap;

use crate::error::CoreError;

pub type Alt = usize;
pub type Pair = (Alt, Alt);

/// A finite, indexed set of labelled alternatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, Alt>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(CoreError::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (id, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(CoreError::EmptyLabel);
            }
            if index.insert(label.clone(), id).is_some() {
                return Err(CoreError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Universe { labels, index })
    }

    /// Universe with labels `0..n`.
    pub fn numbered(n: usize) -> Result<Self, CoreError> {
        Universe::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: Alt) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Option<Alt> {
        self.index.get(label).copied()
    }

    pub fn check(&self, id: Alt) -> Result<Alt, CoreError> {
        if id < self.len() {
            Ok(id)
        } else {
            Err(CoreError::InvalidId { id, size: self.len() })
        }
    }

    pub fn fmt_pair(&self, (x, y): Pair) -> String {
        format!("({}, {})", self.label(x), self.label(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_labels() {
        assert_eq!(Universe::new(Vec::<String>::new()), Err(CoreError::EmptyUniverse));
        assert_eq!(Universe::new(["a", ""]), Err(CoreError::EmptyLabel));
        assert_eq!(
            Universe::new(["a", "b", "a"]),
            Err(CoreError::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn dense_ids() {
        let u = Universe::new(["x", "y", "z"]).unwrap();
        assert_eq!(u.len(), 3);
        assert_eq!(u.id("z"), Some(2));
        assert_eq!(u.label(1), "y");
        assert!(u.check(3).is_err());
    }
}
