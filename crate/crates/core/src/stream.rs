//! A finite, ordered stream of alternatives for backtracking search.

/// Solutions in the order they were found. Streams are materialized, so
/// they can be replayed and compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionStream<T>(Vec<T>);

impl<T> SolutionStream<T> {
    /// `fail`
    pub fn empty() -> Self {
        SolutionStream(Vec::new())
    }

    /// `return`
    pub fn single(x: T) -> Self {
        SolutionStream(vec![x])
    }

    /// Non-deterministic choice: every alternative of `self`, then every
    /// alternative of `other`.
    pub fn or(mut self, other: SolutionStream<T>) -> Self {
        self.0.extend(other.0);
        self
    }

    /// Backtracking bind: feeds each alternative to `k` and concatenates the
    /// results in order.
    pub fn bind<U>(self, mut k: impl FnMut(T) -> SolutionStream<U>) -> SolutionStream<U> {
        let mut out = Vec::new();
        for x in self.0 {
            out.extend(k(x).0);
        }
        SolutionStream(out)
    }

    pub fn filter(self, mut keep: impl FnMut(&T) -> bool) -> Self {
        SolutionStream(self.0.into_iter().filter(|x| keep(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

impl<T: PartialEq> SolutionStream<T> {
    /// Drops later copies of structurally equal alternatives.
    pub fn dedup(self) -> Self {
        let mut out: Vec<T> = Vec::with_capacity(self.0.len());
        for x in self.0 {
            if !out.contains(&x) {
                out.push(x);
            }
        }
        SolutionStream(out)
    }
}

impl<T> FromIterator<T> for SolutionStream<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        SolutionStream(iter.into_iter().collect())
    }
}

impl<T> IntoIterator for SolutionStream<T> {
    type Item = T;
    type IntoIter = std::vec::IntoIter<T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}
