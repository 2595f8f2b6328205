/// Two-mode Fock basis `|n1, n2>` with `n1 + n2 <= n_max`, ordered by total
/// level `n` and then by `n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedFock {
    n_max: usize,
}

impl TruncatedFock {
    pub fn new(n_max: usize) -> Self {
        TruncatedFock { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 2) / 2
    }

    /// First basis index of level `n`.
    pub fn level_offset(n: usize) -> usize {
        n * (n + 1) / 2
    }

    pub fn index(&self, n1: usize, n2: usize) -> Option<usize> {
        let n = n1 + n2;
        (n <= self.n_max).then(|| Self::level_offset(n) + n2)
    }

    pub fn state(&self, index: usize) -> (usize, usize) {
        let n = self.level(index);
        let n2 = index - Self::level_offset(n);
        (n - n2, n2)
    }

    pub fn level(&self, index: usize) -> usize {
        // Largest n with n(n+1)/2 <= index.
        let mut n = (((8 * index + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
        while Self::level_offset(n + 1) <= index {
            n += 1;
        }
        while Self::level_offset(n) > index {
            n -= 1;
        }
        n
    }

    /// Basis indices of level `n`.
    pub fn level_range(&self, n: usize) -> std::ops::Range<usize> {
        Self::level_offset(n)..Self::level_offset(n + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_levels() {
        let space = TruncatedFock::new(7);
        assert_eq!(space.dim(), 36);
        for n in 0..=7 {
            assert_eq!(space.level_range(n).len(), n + 1);
        }
    }

    #[test]
    fn index_round_trip() {
        let space = TruncatedFock::new(30);
        for i in 0..space.dim() {
            let (n1, n2) = space.state(i);
            assert_eq!(space.index(n1, n2), Some(i));
            assert_eq!(space.level(i), n1 + n2);
        }
        assert_eq!(space.index(20, 11), None);
    }
}
