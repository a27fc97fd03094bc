//! Sparse exact linear algebra: rank over Q (fraction-free), rank mod p,
//! and exact null spaces.
//!
//! All eliminations use a Markowitz-style pivot order: the shortest active
//! row is pivoted next, on its column with the fewest occupants.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lie::Scalar;

/// Sparse matrix with exact rational entries, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseExactMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseExactMatrix {
    pub fn new(ncols: usize) -> Self {
        Self {
            nrows: 0,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Self {
        let mut m = Self::new(ncols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    /// Appends a row; entries are sorted, merged and zeros dropped.
    pub fn push_row(&mut self, mut row: Vec<(usize, Scalar)>) {
        row.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.ncols, "column {c} out of range");
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        self.rows.push(out);
        self.nrows += 1;
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(usize, Scalar)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseExactMatrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        SparseExactMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols,
        }
    }

    /// `self * v` for a sparse vector `v`.
    pub fn mul_sparse(&self, v: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        let dense: std::collections::HashMap<usize, &Scalar> = v.iter().map(|(k, x)| (*k, x)).collect();
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let s = row
                    .iter()
                    .filter_map(|(c, a)| dense.get(c).map(|b| a * *b))
                    .fold(Scalar::zero(), |acc, x| acc + x);
                (!s.is_zero()).then_some((r, s))
            })
            .collect()
    }

    /// Exact rank by fraction-free elimination over the integers.
    pub fn rank_exact(&self) -> usize {
        let rows = self.rows.iter().map(|r| integer_row(r)).collect();
        Eliminator::<IntField>::new(rows, self.ncols, IntField).rank()
    }

    /// Rank modulo the prime `p < 2^32`; `None` when `p` divides a denominator.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| scalar_mod_p(v, p).map(|x| (*c, x)))
                    .collect::<Option<Vec<_>>>()
                    .map(|mut row| {
                        row.retain(|(_, x)| *x != 0);
                        row
                    })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Eliminator::new(rows, self.ncols, ModP(p)).rank())
    }

    /// Basis of `{v : M v = 0}` as sparse vectors, exact.
    pub fn nullspace(&self) -> Vec<Vec<(usize, Scalar)>> {
        let rows = self.rows.clone();
        let mut e = Eliminator::new(rows, self.ncols, RatField);
        e.jordan = true;
        e.run();
        e.nullspace()
    }
}

/// Clears denominators and divides by the content.
fn integer_row(row: &[(usize, Scalar)]) -> Vec<(usize, BigInt)> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    normalize_content(&mut out);
    out
}

fn normalize_content(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

pub fn scalar_mod_p(v: &Scalar, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let reduce = |x: &BigInt| -> u64 {
        let r = x.mod_floor(&pb);
        r.to_u64().expect("residue fits")
    };
    let num = reduce(v.numer());
    let den = reduce(v.denom());
    if den == 0 {
        return None;
    }
    Some(mulmod(num, inv_mod(den, p), p))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `below`.
pub fn primes_below(below: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = below - 1;
    while out.len() < count && n > 2 {
        if is_prime(n) {
            out.push(n);
        }
        n -= 1;
    }
    out
}

/// Field operations used by the eliminator.
trait ElimField {
    type V: Clone;
    fn is_zero(&self, v: &Self::V) -> bool;
    /// Returns `a*target - b*pivot` style combination eliminating the pivot
    /// column from `target`, where `tv`/`pv` are the entries in that column.
    fn combine(
        &self,
        target: &[(usize, Self::V)],
        pivot: &[(usize, Self::V)],
        tv: &Self::V,
        pv: &Self::V,
    ) -> Vec<(usize, Self::V)>;
    /// Called on pivot rows in Gauss-Jordan mode.
    fn normalize_pivot(&self, _row: &mut Vec<(usize, Self::V)>, _col: usize) {}
}

struct ModP(u64);

impl ElimField for ModP {
    type V = u64;
    fn is_zero(&self, v: &u64) -> bool {
        *v == 0
    }
    fn combine(&self, target: &[(usize, u64)], pivot: &[(usize, u64)], tv: &u64, pv: &u64) -> Vec<(usize, u64)> {
        let p = self.0;
        // target - (tv / pv) * pivot
        let f = mulmod(*tv, inv_mod(*pv, p), p);
        let nf = (p - f) % p;
        merge(target, pivot, |a| Some(*a), |b| Some(mulmod(*b, nf, p)), |a, b| {
            let s = (a + mulmod(*b, nf, p)) % p;
            (s != 0).then_some(s)
        })
    }
}

struct IntField;

impl ElimField for IntField {
    type V = BigInt;
    fn is_zero(&self, v: &BigInt) -> bool {
        v.is_zero()
    }
    fn combine(
        &self,
        target: &[(usize, BigInt)],
        pivot: &[(usize, BigInt)],
        tv: &BigInt,
        pv: &BigInt,
    ) -> Vec<(usize, BigInt)> {
        // pv * target - tv * pivot, with the common factor removed first.
        let g = tv.gcd(pv);
        let (a, b) = (pv / &g, tv / &g);
        let mut out = merge(
            target,
            pivot,
            |x| Some(x * &a),
            |y| Some(-(y * &b)),
            |x, y| {
                let s = x * &a - y * &b;
                (!s.is_zero()).then_some(s)
            },
        );
        normalize_content(&mut out);
        if out.first().is_some_and(|(_, v)| v.sign() == Sign::Minus) {
            for (_, v) in out.iter_mut() {
                *v = -&*v;
            }
        }
        out
    }
}

struct RatField;

impl ElimField for RatField {
    type V = Scalar;
    fn is_zero(&self, v: &Scalar) -> bool {
        v.is_zero()
    }
    fn combine(
        &self,
        target: &[(usize, Scalar)],
        pivot: &[(usize, Scalar)],
        tv: &Scalar,
        pv: &Scalar,
    ) -> Vec<(usize, Scalar)> {
        let f = tv / pv;
        merge(
            target,
            pivot,
            |x| Some(x.clone()),
            |y| Some(-(y * &f)),
            |x, y| {
                let s = x - y * &f;
                (!s.is_zero()).then_some(s)
            },
        )
    }
    fn normalize_pivot(&self, row: &mut Vec<(usize, Scalar)>, col: usize) {
        let pv = row.iter().find(|(c, _)| *c == col).map(|(_, v)| v.clone()).unwrap();
        if !pv.is_one() {
            let inv = pv.recip();
            for (_, v) in row.iter_mut() {
                *v *= &inv;
            }
        }
    }
}

fn merge<V, W>(
    a: &[(usize, V)],
    b: &[(usize, V)],
    only_a: impl Fn(&V) -> Option<W>,
    only_b: impl Fn(&V) -> Option<W>,
    both: impl Fn(&V, &V) -> Option<W>,
) -> Vec<(usize, W)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0);
        let cb = b.get(j).map(|x| x.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                if let Some(v) = both(&a[i].1, &b[j].1) {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                if let Some(v) = only_a(&a[i].1) {
                    out.push((x, v));
                }
                i += 1;
            }
            (Some(x), None) => {
                if let Some(v) = only_a(&a[i].1) {
                    out.push((x, v));
                }
                i += 1;
            }
            (_, Some(y)) => {
                if let Some(v) = only_b(&b[j].1) {
                    out.push((y, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct Eliminator<F: ElimField> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<(usize, F::V)>>,
    /// Row has been used as a pivot (pivot column recorded).
    pivot_of: Vec<Option<usize>>,
    col_rows: Vec<Vec<usize>>,
    /// Gauss-Jordan: also clear pivot columns from earlier pivot rows.
    jordan: bool,
    rank: usize,
}

impl<F: ElimField> Eliminator<F> {
    fn new(rows: Vec<Vec<(usize, F::V)>>, ncols: usize, field: F) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c].push(r);
            }
        }
        let n = rows.len();
        Self {
            field,
            ncols,
            rows,
            pivot_of: vec![None; n],
            col_rows,
            jordan: false,
            rank: 0,
        }
    }

    fn rank(mut self) -> usize {
        self.run();
        self.rank
    }

    fn run(&mut self) {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(i, r)| Reverse((r.len(), i)))
            .collect();
        while let Some(Reverse((len, r))) = heap.pop() {
            if self.pivot_of[r].is_some() || self.rows[r].len() != len || len == 0 {
                continue;
            }
            let col = self.rows[r]
                .iter()
                .map(|(c, _)| *c)
                .min_by_key(|c| self.col_rows[*c].len())
                .unwrap();
            self.pivot_of[r] = Some(col);
            self.rank += 1;
            if self.jordan {
                let mut row = std::mem::take(&mut self.rows[r]);
                self.field.normalize_pivot(&mut row, col);
                self.rows[r] = row;
            }
            let pivot = std::mem::take(&mut self.rows[r]);
            let pv = pivot.iter().find(|(c, _)| *c == col).unwrap().1.clone();
            let occupants = std::mem::take(&mut self.col_rows[col]);
            for s in occupants {
                if s == r || (!self.jordan && self.pivot_of[s].is_some()) {
                    continue;
                }
                let Ok(pos) = self.rows[s].binary_search_by_key(&col, |(c, _)| *c) else {
                    continue;
                };
                let tv = self.rows[s][pos].1.clone();
                if self.field.is_zero(&tv) {
                    continue;
                }
                let old: Vec<usize> = self.rows[s].iter().map(|(c, _)| *c).collect();
                let new = self.field.combine(&self.rows[s], &pivot, &tv, &pv);
                for (c, _) in &new {
                    if old.binary_search(c).is_err() {
                        self.col_rows[*c].push(s);
                    }
                }
                self.rows[s] = new;
                if self.pivot_of[s].is_none() && !self.rows[s].is_empty() {
                    heap.push(Reverse((self.rows[s].len(), s)));
                }
            }
            self.rows[r] = pivot;
            if self.jordan {
                self.col_rows[col] = vec![r];
            }
        }
    }
}

impl Eliminator<RatField> {
    fn nullspace(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut pivot_row_of_col = vec![None; self.ncols];
        for (r, p) in self.pivot_of.iter().enumerate() {
            if let Some(c) = p {
                pivot_row_of_col[*c] = Some(r);
            }
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if pivot_row_of_col[f].is_some() {
                continue;
            }
            let mut v = vec![(f, Scalar::one())];
            for &r in &self.col_rows[f] {
                let Some(pc) = self.pivot_of[r] else { continue };
                if let Ok(pos) = self.rows[r].binary_search_by_key(&f, |(c, _)| *c) {
                    v.push((pc, -self.rows[r][pos].1.clone()));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            v.dedup_by_key(|(c, _)| *c);
            out.push(v);
        }
        out
    }
}

/// `|v|_inf` helper for reports.
pub fn max_abs(v: &[(usize, Scalar)]) -> Scalar {
    v.iter().map(|(_, x)| x.abs()).max().unwrap_or_else(Scalar::zero)
}
