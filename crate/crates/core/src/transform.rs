use crate::error::CoreError;
use crate::universe::Alt;

/// A partial function on a universe of `n` alternatives.
///
/// Equality and hashing are extensional: the name is ignored.
#[derive(Debug, Clone)]
pub struct PartialTransform {
    name: String,
    map: Vec<Option<Alt>>,
}

impl PartialEq for PartialTransform {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for PartialTransform {}

impl std::hash::Hash for PartialTransform {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.map.hash(state);
    }
}

impl PartialTransform {
    pub fn identity(n: usize) -> Self {
        PartialTransform { name: "id".into(), map: (0..n).map(Some).collect() }
    }

    pub fn from_pairs<I>(name: impl Into<String>, n: usize, pairs: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (Alt, Alt)>,
    {
        let name = name.into();
        let mut map = vec![None; n];
        for (x, y) in pairs {
            for id in [x, y] {
                if id >= n {
                    return Err(CoreError::InvalidId { id, size: n });
                }
            }
            match map[x] {
                Some(prev) if prev != y => {
                    return Err(CoreError::ConflictingImage { name, from: x });
                }
                _ => map[x] = Some(y),
            }
        }
        Ok(PartialTransform { name, map })
    }

    /// Builds a transform from a closure; `None` means outside the domain.
    pub fn from_fn(name: impl Into<String>, n: usize, f: impl Fn(Alt) -> Option<Alt>) -> Self {
        let map = (0..n)
            .map(|x| {
                let y = f(x);
                assert!(y.is_none_or(|y| y < n), "image out of range");
                y
            })
            .collect();
        PartialTransform { name: name.into(), map }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn universe_len(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, x: Alt) -> Option<Alt> {
        self.map[x]
    }

    pub fn contains(&self, x: Alt) -> bool {
        self.map[x].is_some()
    }

    pub fn domain(&self) -> impl Iterator<Item = Alt> + '_ {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|_| x))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Alt, Alt)> + '_ {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn domain_len(&self) -> usize {
        self.map.iter().filter(|y| y.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    /// Empty-domain transforms constrain nothing.
    pub fn is_vacuous(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, y)| *y == Some(x))
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &PartialTransform) -> PartialTransform {
        compose(outer, self)
    }
}

/// `outer ∘ inner`: defined at x iff x ∈ D_inner and inner(x) ∈ D_outer.
pub fn compose(outer: &PartialTransform, inner: &PartialTransform) -> PartialTransform {
    assert_eq!(outer.map.len(), inner.map.len(), "transforms over different universes");
    let map = inner.map.iter().map(|y| y.and_then(|y| outer.map[y])).collect();
    let name = match (outer.is_identity(), inner.is_identity()) {
        (true, _) => inner.name.clone(),
        (_, true) => outer.name.clone(),
        _ => format!("{}∘{}", outer.name, inner.name),
    };
    PartialTransform { name, map }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_identity() {
        let w = PartialTransform::from_pairs("w", 3, [(0, 1), (1, 2)]).unwrap();
        let id = PartialTransform::identity(3);
        assert_eq!(compose(&id, &w), w);
        assert_eq!(compose(&w, &id), w);
    }

    #[test]
    fn prepend_twice_is_empty() {
        // x, y, ax, ay
        let a = PartialTransform::from_pairs("a", 4, [(0, 2), (1, 3)]).unwrap();
        let aa = compose(&a, &a);
        assert!(aa.is_vacuous());
    }

    #[test]
    fn shift_twice() {
        let s = PartialTransform::from_pairs("s", 3, [(0, 1), (1, 2)]).unwrap();
        let ss = compose(&s, &s);
        assert_eq!(ss.domain().collect::<Vec<_>>(), vec![0]);
        assert_eq!(ss.apply(0), Some(2));
    }

    #[test]
    fn conflicting_image_rejected() {
        let err = PartialTransform::from_pairs("w", 3, [(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(err, CoreError::ConflictingImage { from: 0, .. }));
        assert!(PartialTransform::from_pairs("w", 3, [(0, 3)]).is_err());
    }
}
