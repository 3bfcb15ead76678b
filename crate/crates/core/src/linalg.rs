//! Exact rank computations for sparse matrices.
//!
//! Over the rationals, rows are cleared to primitive integer vectors and eliminated
//! fraction-free (cross-multiplication followed by division by the row content). Over `F_p` the
//! elimination is ordinary modular row reduction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Scalar};

/// A sparse matrix given by rows; columns are indexed `0..ncols`.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row given as `(column, value)` pairs. Repeated columns are summed by the caller.
    pub fn push_row(&mut self, row: BTreeMap<usize, Scalar>) {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        self.rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    /// Builds the matrix whose rows are the given columns, i.e. the transpose. Rank is unchanged,
    /// so callers may feed images of basis vectors directly.
    pub fn from_columns(nrows: usize, columns: Vec<BTreeMap<usize, Scalar>>) -> Self {
        let mut m = Self::new(nrows);
        for c in columns {
            m.push_row(c);
        }
        m
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rational => rank_integer(self),
            Field::Prime(p) => rank_mod_p(self, p),
        }
    }

    pub fn nullity(&self, field: Field) -> usize {
        self.ncols - self.rank(field)
    }
}

type IntRow = BTreeMap<usize, BigInt>;

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
    if let Some((_, lead)) = row.iter().next() {
        if lead.is_negative() {
            for v in row.values_mut() {
                *v = -&*v;
            }
        }
    }
    row
}

fn to_integer_row(row: &BTreeMap<usize, Scalar>) -> IntRow {
    let mut lcm = BigInt::one();
    for v in row.values() {
        lcm = lcm.lcm(v.as_rational().denom());
    }
    row.iter()
        .map(|(&c, v)| {
            let q = v.as_rational();
            (c, q.numer() * (&lcm / q.denom()))
        })
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

fn rank_integer(m: &SparseMatrix) -> usize {
    // pivot column -> primitive row whose leading column is the key
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for row in &m.rows {
        let mut row = primitive(to_integer_row(row));
        loop {
            let Some((&lead_col, lead_val)) = row.iter().next() else {
                break;
            };
            let Some(pivot) = pivots.get(&lead_col) else {
                pivots.insert(lead_col, row);
                break;
            };
            let a = pivot[&lead_col].clone();
            let b = lead_val.clone();
            let g = a.gcd(&b);
            let (a, b) = (&a / &g, &b / &g);
            // row := a*row - b*pivot
            let mut next: IntRow = IntRow::new();
            for (&c, v) in &row {
                next.insert(c, &a * v);
            }
            for (&c, v) in pivot {
                let entry = next.entry(c).or_insert_with(BigInt::zero);
                *entry -= &b * v;
            }
            next.retain(|_, v| !v.is_zero());
            row = primitive(next);
        }
    }
    pivots.len()
}

fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let inv = |a: u64| -> u64 {
        // Fermat; p is prime
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    };
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for row in &m.rows {
        let mut row: BTreeMap<usize, u64> = row
            .iter()
            .map(|(&c, v)| {
                let n = v.as_rational().numer().mod_floor(&BigInt::from(p));
                (c, u64::try_from(n).expect("reduced below p"))
            })
            .filter(|&(_, v)| v != 0)
            .collect();
        loop {
            let Some((&lead_col, &lead_val)) = row.iter().next() else {
                break;
            };
            let Some(pivot) = pivots.get(&lead_col) else {
                let s = inv(lead_val);
                for v in row.values_mut() {
                    *v = *v * s % p;
                }
                pivots.insert(lead_col, row);
                break;
            };
            // pivot is monic
            for (&c, &v) in pivot {
                let e = row.entry(c).or_insert(0);
                *e = (*e + p - lead_val * v % p) % p;
            }
            row.retain(|_, v| *v != 0);
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(field: Field, rows: &[&[i64]]) -> SparseMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, field.from_int(v)))
                    .collect(),
            );
        }
        m
    }

    #[test]
    fn rank_small() {
        let m = dense(Field::Rational, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(Field::Rational), 2);
        assert_eq!(m.nullity(Field::Rational), 1);
        let empty = SparseMatrix::new(4);
        assert_eq!(empty.rank(Field::Rational), 0);
        assert_eq!(empty.nullity(Field::Rational), 4);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(dense(Field::Rational, rows).rank(Field::Rational), 2);
        let f2 = Field::Prime(2);
        assert_eq!(dense(f2, rows).rank(f2), 1);
    }

    #[test]
    fn rational_entries() {
        let f = Field::Rational;
        let mut m = SparseMatrix::new(2);
        let half = Scalar(num_rational::BigRational::new(1.into(), 2.into()));
        m.push_row([(0, half.clone()), (1, f.from_int(1))].into_iter().collect());
        m.push_row([(0, f.from_int(1)), (1, f.from_int(2))].into_iter().collect());
        assert_eq!(m.rank(f), 1);
    }
}
