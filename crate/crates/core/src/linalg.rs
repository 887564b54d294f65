//! Exact sparse linear systems over the rationals.
//!
//! Unknowns are columns given as sparse maps from row keys to coefficients.
//! The system splits into connected blocks (columns sharing a row), each
//! eliminated fraction-free over the integers with primitive-row
//! normalization. Pivot columns are taken greedily in column order and
//! free variables are set to zero, so the solution is independent of how
//! rows are picked and of block scheduling.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

type Row = Vec<(usize, BigInt)>;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
}

/// Scales a rational row to a primitive integer row; the last entry of the
/// returned pair is the scaled right-hand side.
fn integer_row(entries: &[(usize, Rational)], rhs: &Rational) -> (Row, BigInt) {
    let mut l = rhs.denom();
    for (_, c) in entries {
        l = l.lcm(&c.denom());
    }
    let conv = |c: &Rational| -> BigInt { c.numer() * (&l / c.denom()) };
    let row: Row = entries.iter().map(|(j, c)| (*j, conv(c))).collect();
    let b = conv(rhs);
    normalize(row, b)
}

fn normalize(row: Row, b: BigInt) -> (Row, BigInt) {
    let mut g = b.abs();
    for (_, c) in &row {
        g = g.gcd(c);
        if g.is_one() {
            return (row, b);
        }
    }
    if g.is_zero() || g.is_one() {
        return (row, b);
    }
    (row.into_iter().map(|(j, c)| (j, c / &g)).collect(), b / &g)
}

/// `p*row - a*pivot` restricted to nonzero entries, both rows sorted by column.
fn combine(row: &Row, rb: &BigInt, p: &BigInt, pivot: &Row, pb: &BigInt, a: &BigInt) -> (Row, BigInt) {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, p * &row[i].1));
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(a * &pivot[j].1)));
            j += 1;
        } else {
            let v = p * &row[i].1 - a * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    let b = p * rb - a * pb;
    normalize(out, b)
}

/// Outcome of eliminating one block.
struct Echelon {
    /// (pivot column, row, rhs) in pivot order
    pivots: Vec<(usize, Row, BigInt)>,
    consistent: bool,
}

fn eliminate(mut rows: Vec<(Row, BigInt)>, cols: &[usize]) -> Echelon {
    let mut pivots = Vec::new();
    for &c in cols {
        // among remaining rows containing c, take the sparsest
        let mut best: Option<usize> = None;
        for (i, (r, _)) in rows.iter().enumerate() {
            if r.first().map(|e| e.0) == Some(c) && best.is_none_or(|b| r.len() < rows[b].0.len()) {
                best = Some(i);
            }
        }
        let Some(bi) = best else { continue };
        let (prow, pb) = rows.swap_remove(bi);
        let p = prow[0].1.clone();
        for (r, b) in rows.iter_mut() {
            if r.first().map(|e| e.0) == Some(c) {
                let a = r[0].1.clone();
                let (nr, nb) = combine(r, b, &p, &prow, &pb, &a);
                *r = nr;
                *b = nb;
            }
        }
        rows.retain(|(r, b)| !(r.is_empty() && b.is_zero()));
        pivots.push((c, prow, pb));
    }
    let consistent = rows.iter().all(|(r, b)| !r.is_empty() || b.is_zero());
    Echelon { pivots, consistent }
}

/// Column ids and row ids of one connected block.
type Block = (Vec<usize>, Vec<usize>);

/// Columns share one row-key space; returns the blocks, the row numbering,
/// and whether every rhs key occurs in some column.
fn blocks<K: Ord + Clone>(
    columns: &[BTreeMap<K, Rational>],
    rhs: &BTreeMap<K, Rational>,
) -> (Vec<Block>, BTreeMap<K, usize>, bool) {
    let mut row_ids: BTreeMap<K, usize> = BTreeMap::new();
    for col in columns {
        for k in col.keys() {
            let n = row_ids.len();
            row_ids.entry(k.clone()).or_insert(n);
        }
    }
    // rhs entries no column reaches make the system inconsistent
    let covered = rhs.keys().all(|k| row_ids.contains_key(k));
    let nrows = row_ids.len();
    let mut uf = UnionFind::new(columns.len() + nrows);
    for (j, col) in columns.iter().enumerate() {
        for k in col.keys() {
            uf.union(j, columns.len() + row_ids[k]);
        }
    }
    let mut by_root: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for j in 0..columns.len() {
        let r = uf.find(j);
        by_root.entry(r).or_default().0.push(j);
    }
    for i in 0..nrows {
        let r = uf.find(columns.len() + i);
        by_root.entry(r).or_default().1.push(i);
    }
    (by_root.into_values().filter(|(c, _)| !c.is_empty()).collect(), row_ids, covered)
}

fn block_rows<K: Ord + Clone>(
    columns: &[BTreeMap<K, Rational>],
    rhs: &BTreeMap<K, Rational>,
    row_ids: &BTreeMap<K, usize>,
    cols: &[usize],
    rows: &[usize],
) -> Vec<(Row, BigInt)> {
    let local: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(li, &gi)| (gi, li)).collect();
    let mut entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows.len()];
    let mut b: Vec<Rational> = vec![Rational::zero(); rows.len()];
    for &j in cols {
        for (k, c) in &columns[j] {
            entries[local[&row_ids[k]]].push((j, c.clone()));
        }
    }
    for (k, c) in rhs {
        if let Some(gi) = row_ids.get(k) {
            if let Some(&li) = local.get(gi) {
                b[li] = c.clone();
            }
        }
    }
    entries
        .into_iter()
        .zip(b)
        .map(|(mut e, b)| {
            e.sort_by_key(|x| x.0);
            integer_row(&e, &b)
        })
        .filter(|(r, b)| !(r.is_empty() && b.is_zero()))
        .collect()
}

/// Solves `sum_j x_j * columns[j] = rhs`. Free variables are zero.
pub fn solve<K: Ord + Clone>(columns: &[BTreeMap<K, Rational>], rhs: &BTreeMap<K, Rational>) -> Option<Vec<Rational>> {
    let (blocks, row_ids, covered) = blocks(columns, rhs);
    if !covered {
        return None;
    }
    let mut x = vec![Rational::zero(); columns.len()];
    for (cols, rows) in &blocks {
        let brhs: bool = rows.is_empty();
        if brhs {
            continue;
        }
        let ech = eliminate(block_rows(columns, rhs, &row_ids, cols, rows), cols);
        if !ech.consistent {
            return None;
        }
        for (c, row, b) in ech.pivots.iter().rev() {
            let mut acc = Rational::from(b.clone());
            for (j, v) in &row[1..] {
                if !x[*j].is_zero() {
                    acc -= &(&Rational::from(v.clone()) * &x[*j]);
                }
            }
            x[*c] = &acc / &Rational::from(row[0].1.clone());
        }
    }
    Some(x)
}

/// Rank of the column set.
pub fn rank<K: Ord + Clone>(columns: &[BTreeMap<K, Rational>]) -> usize {
    let empty = BTreeMap::new();
    let (blocks, row_ids, _) = blocks(columns, &empty);
    blocks.iter().map(|(cols, rows)| eliminate(block_rows(columns, &empty, &row_ids, cols, rows), cols).pivots.len()).sum()
}
