//! Sparse linear algebra over a field.

use std::collections::BTreeMap;

use super::field::Field;

/// Sparse vector as `(column, value)` pairs with increasing columns and
/// nonzero values.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Row echelon form built incrementally. Each stored row is normalised to
/// a leading one at its pivot, which is its smallest column.
#[derive(Clone, Debug, Default)]
pub struct RowSpace<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> RowSpace<F> {
    pub fn new() -> Self {
        RowSpace { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).map(|(c, _)| *c).find(|c| self.rows.contains_key(c));
            let Some(col) = next else { break };
            let coef = acc.remove(&col).unwrap();
            for (c, a) in &self.rows[&col][1..] {
                let entry = acc.entry(*c).or_insert_with(F::zero);
                *entry = entry.sub(&a.mul(&coef));
                if entry.is_zero() {
                    acc.remove(c);
                }
            }
            cursor = col + 1;
        }
        acc.into_iter().collect()
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        let row: SparseVec<F> = r.into_iter().map(|(c, a)| (c, a.mul(&inv))).collect();
        self.rows.insert(row[0].0, row);
        true
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduced rows: no row has a nonzero entry in another pivot column.
    fn reduced_rows(&self) -> BTreeMap<usize, SparseVec<F>> {
        let mut done: RowSpace<F> = RowSpace::new();
        for (&p, row) in self.rows.iter().rev() {
            let head = row[0].clone();
            let tail = done.reduce(&row[1..]);
            let mut r = vec![head];
            r.extend(tail);
            done.rows.insert(p, r);
        }
        done.rows
    }

    /// Basis of the solutions of `row . x = 0` for all rows, in `ncols`
    /// unknowns; one vector per free column, in increasing column order.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec<F>> {
        let rows = self.reduced_rows();
        let mut by_free: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for (&p, row) in &rows {
            for (c, a) in &row[1..] {
                by_free.entry(*c).or_default().push((p, a.neg()));
            }
        }
        let mut out = Vec::new();
        for f in 0..ncols {
            if rows.contains_key(&f) {
                continue;
            }
            let mut v = by_free.remove(&f).unwrap_or_default();
            v.push((f, F::one()));
            v.sort_by_key(|(c, _)| *c);
            out.push(v);
        }
        out
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(rows: &[SparseVec<F>]) -> usize {
    let mut rs = RowSpace::new();
    for r in rows {
        rs.insert(r);
    }
    rs.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn nullspace_of_single_equation() {
        // x0 + 2 x1 - x2 = 0 in three unknowns
        let mut rs = RowSpace::new();
        rs.insert(&[(0, q(1)), (1, q(2)), (2, q(-1))]);
        let ns = rs.nullspace(3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = v.iter().fold(q(0), |acc, (c, a)| acc + a * [q(1), q(2), q(-1)][*c].clone());
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let rows = vec![
            vec![(0, q(1)), (3, q(1))],
            vec![(1, q(1)), (3, q(2))],
            vec![(0, q(2)), (1, q(2)), (3, q(6))],
        ];
        assert_eq!(rank(&rows), 2);
    }
}
