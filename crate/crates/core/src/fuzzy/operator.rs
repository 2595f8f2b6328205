use num_complex::Complex64;

use super::fock::TruncatedFock;

/// Complex operator over a [`TruncatedFock`] basis, stored as sparse rows.
///
/// `pollution` is the number of top levels whose matrix columns (kets) may be
/// wrong because a creation operator was truncated somewhere in the
/// construction. Products add pollution; sums take the maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    space: TruncatedFock,
    rows: Vec<Vec<(usize, Complex64)>>,
    pollution: usize,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl OperatorMatrix {
    pub fn zeros(space: TruncatedFock) -> Self {
        OperatorMatrix {
            space,
            rows: vec![Vec::new(); space.dim()],
            pollution: 0,
        }
    }

    pub fn identity(space: TruncatedFock) -> Self {
        Self::level_diagonal(space, |_| Complex64::new(1.0, 0.0))
    }

    /// Diagonal operator whose value on level `n` is `f(n)`.
    pub fn level_diagonal(space: TruncatedFock, f: impl Fn(usize) -> Complex64) -> Self {
        let mut op = Self::zeros(space);
        for n in 0..=space.n_max() {
            let v = f(n);
            if v != ZERO {
                for i in space.level_range(n) {
                    op.rows[i].push((i, v));
                }
            }
        }
        op
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        space: TruncatedFock,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut op = Self::zeros(space);
        for (r, c, v) in triplets {
            op.rows[r].push((c, v));
        }
        for row in &mut op.rows {
            normalize_row(row);
        }
        op
    }

    pub fn space(&self) -> TruncatedFock {
        self.space
    }

    pub fn pollution(&self) -> usize {
        self.pollution
    }

    pub fn with_pollution(mut self, depth: usize) -> Self {
        self.pollution = depth;
        self
    }

    /// Highest level whose columns are trustworthy, if any.
    pub fn trusted_max_level(&self) -> Option<usize> {
        self.space.n_max().checked_sub(self.pollution)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row]
            .binary_search_by_key(&col, |e| e.0)
            .map(|k| self.rows[row][k].1)
            .unwrap_or(ZERO)
    }

    pub fn row(&self, row: usize) -> &[(usize, Complex64)] {
        &self.rows[row]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            for e in row.iter_mut() {
                e.1 *= s;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, Complex64::new(-1.0, 0.0))
    }

    fn combine(&self, other: &Self, s: Complex64) -> Self {
        assert_eq!(self.space, other.space, "operators over different spaces");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row: Vec<_> = a.iter().copied().chain(b.iter().map(|&(c, v)| (c, s * v))).collect();
                normalize_row(&mut row);
                row
            })
            .collect();
        OperatorMatrix {
            space: self.space,
            rows,
            pollution: self.pollution.max(other.pollution),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space, "operators over different spaces");
        let dim = self.space.dim();
        let mut acc = vec![ZERO; dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut seen = vec![false; dim];
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        if !seen[c] {
                            seen[c] = true;
                            touched.push(c);
                        }
                        acc[c] += a * b;
                    }
                }
                touched.sort_unstable();
                let out: Vec<_> = touched
                    .iter()
                    .filter_map(|&c| {
                        let v = acc[c];
                        acc[c] = ZERO;
                        seen[c] = false;
                        (v != ZERO).then_some((c, v))
                    })
                    .collect();
                touched.clear();
                out
            })
            .collect();
        OperatorMatrix {
            space: self.space,
            rows,
            pollution: self.pollution + other.pollution,
        }
    }

    /// `[self, other]`
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn adjoint(&self) -> Self {
        let mut op = Self::zeros(self.space);
        for (r, c, v) in self.entries() {
            op.rows[c].push((r, v.conj()));
        }
        for row in &mut op.rows {
            row.sort_unstable_by_key(|e| e.0);
        }
        op.pollution = self.pollution;
        op
    }

    /// `f(N) * self`, with `f` evaluated on the row level.
    pub fn left_level_scale(&self, f: impl Fn(usize) -> Complex64) -> Self {
        let mut out = self.clone();
        for n in 0..=self.space.n_max() {
            let s = f(n);
            for i in self.space.level_range(n) {
                for e in out.rows[i].iter_mut() {
                    e.1 *= s;
                }
            }
        }
        out
    }

    /// Dense copy of the block mapping level `col_level` into level `row_level`.
    pub fn block(&self, row_level: usize, col_level: usize) -> Vec<Vec<Complex64>> {
        let rows = self.space.level_range(row_level);
        let cols = self.space.level_range(col_level);
        rows.map(|r| cols.clone().map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// Largest entry modulus over columns on trusted levels of both operands.
    pub fn max_abs_diff_trusted(&self, other: &Self) -> f64 {
        let depth = self.pollution.max(other.pollution);
        let Some(top) = self.space.n_max().checked_sub(depth) else {
            return 0.0;
        };
        let limit = TruncatedFock::level_offset(top + 1);
        self.sub(other)
            .entries()
            .filter(|&(_, c, _)| c < limit)
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus over columns on levels `<= max_level`.
    pub fn max_abs_up_to(&self, max_level: usize) -> f64 {
        let limit = TruncatedFock::level_offset(max_level + 1);
        self.entries()
            .filter(|&(_, c, _)| c < limit)
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// `sum_{cols on levels <= max_level} w(level) sum_rows |A_{row,col}|^2`.
    pub fn weighted_column_norm_sq(&self, max_level: usize, weight: impl Fn(usize) -> f64) -> f64 {
        let limit = TruncatedFock::level_offset(max_level + 1);
        let mut per_col = vec![0.0; limit.min(self.space.dim())];
        for (_, c, v) in self.entries() {
            if c < limit {
                per_col[c] += v.norm_sqr();
            }
        }
        per_col
            .iter()
            .enumerate()
            .map(|(c, s)| weight(self.space.level(c)) * s)
            .sum()
    }
}

fn normalize_row(row: &mut Vec<(usize, Complex64)>) {
    row.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
    for &(c, v) in row.iter() {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != ZERO);
    *row = out;
}

/// Operator in the sector with equal numbers of creation and annihilation
/// operators, optionally labelled by angular quantum numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveOperator {
    pub op: OperatorMatrix,
    pub labels: Option<(u32, i32)>,
}

impl WaveOperator {
    pub fn new(op: OperatorMatrix) -> Self {
        WaveOperator { op, labels: None }
    }

    pub fn labelled(op: OperatorMatrix, j: u32, m: i32) -> Self {
        WaveOperator {
            op,
            labels: Some((j, m)),
        }
    }

    pub fn space(&self) -> TruncatedFock {
        self.op.space()
    }

    /// True when no entry couples different levels.
    pub fn is_level_diagonal(&self) -> bool {
        let space = self.op.space();
        self.op
            .entries()
            .all(|(r, c, _)| space.level(r) == space.level(c))
    }
}
