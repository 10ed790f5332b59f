//! Exact integer and rational linear algebra.
//!
//! The workhorse is [`integer_nullspace`]: a sparse row-echelon reduction
//! over the integers where every combined row is divided by the gcd of its
//! entries. This keeps coefficients small without fraction-free pivoting
//! tricks, and the resulting nullspace basis vectors are primitive integer
//! vectors with a deterministic sign and order.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Rational scalar for torus coordinates and other user-facing values.
pub type Q = Ratio<i64>;

/// Wider rational scalar for internal solves.
pub type Q128 = Ratio<i128>;

/// Parses `3`, `-3`, `3/2`, `-3/2`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let n: i64 = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: i64 = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Formats a rational without spaces: `3`, `-3/2`.
pub fn format_rational(q: &Q) -> String {
    if q.denom() == &1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A sparse row: (column, coefficient), sorted by column, no zeros.
type Row = Vec<(usize, i128)>;

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in exact elimination")
}

fn normalize_row(row: &mut Row) {
    let mut g: i128 = 0;
    for &(_, v) in row.iter() {
        g = g.gcd(&v);
    }
    if g > 1 {
        for e in row.iter_mut() {
            e.1 /= g;
        }
    }
    if let Some(&(_, lead)) = row.first() {
        if lead < 0 {
            for e in row.iter_mut() {
                e.1 = -e.1;
            }
        }
    }
}

/// `row * b - pivot * a`, merged by column. With `a`, `b` chosen from the
/// coefficients at a shared column, that column cancels.
fn combine(row: &Row, b: i128, pivot: &Row, a: i128) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let (col, val) = if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            let e = (row[i].0, checked_mul(row[i].1, b));
            i += 1;
            e
        } else if i >= row.len() || pivot[j].0 < row[i].0 {
            let e = (pivot[j].0, -checked_mul(pivot[j].1, a));
            j += 1;
            e
        } else {
            let v = checked_mul(row[i].1, b)
                .checked_sub(checked_mul(pivot[j].1, a))
                .expect("integer overflow in exact elimination");
            let e = (row[i].0, v);
            i += 1;
            j += 1;
            e
        };
        if val != 0 {
            out.push((col, val));
        }
    }
    let mut out = out;
    normalize_row(&mut out);
    out
}

/// Row echelon form as a map from pivot column to its (normalized) row.
fn echelon(rows: impl IntoIterator<Item = Vec<(usize, i64)>>) -> std::collections::BTreeMap<usize, Row> {
    let mut pivots: std::collections::BTreeMap<usize, Row> = std::collections::BTreeMap::new();
    for raw in rows {
        let mut row: Row = raw
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|(c, v)| (c, v as i128))
            .collect();
        row.sort_unstable_by_key(|e| e.0);
        // Merge duplicate columns defensively.
        let mut merged: Row = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        let mut row = merged;
        normalize_row(&mut row);
        loop {
            let Some(&(lead, a)) = row.first() else { break };
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, row);
                    break;
                }
                Some(p) => {
                    let b = p.first().unwrap().1;
                    let g = a.gcd(&b);
                    row = combine(&row, b / g, p, a / g);
                }
            }
        }
    }
    pivots
}

/// Rank of a sparse integer matrix.
pub fn integer_rank(rows: impl IntoIterator<Item = Vec<(usize, i64)>>) -> usize {
    echelon(rows).len()
}

/// Basis of the right nullspace `{x : A x = 0}` of a sparse integer matrix
/// with `ncols` columns. Each basis vector is a primitive integer vector;
/// vectors are ordered by their free column and the free coordinate is 1
/// after clearing denominators (so the entry at the free column is positive).
pub fn integer_nullspace(
    rows: impl IntoIterator<Item = Vec<(usize, i64)>>,
    ncols: usize,
) -> Vec<Vec<i64>> {
    let pivots = echelon(rows);
    // Fully reduce: eliminate every later pivot column from each pivot row,
    // walking pivot columns in descending order.
    let pivot_cols: Vec<usize> = pivots.keys().copied().collect();
    let mut reduced: std::collections::BTreeMap<usize, Row> = std::collections::BTreeMap::new();
    for &c in pivot_cols.iter().rev() {
        let mut row = pivots[&c].clone();
        loop {
            let Some(&(col, a)) = row.iter().find(|&&(col, _)| col != c && reduced.contains_key(&col))
            else {
                break;
            };
            let p = &reduced[&col];
            let b = p.first().unwrap().1;
            let g = a.gcd(&b);
            // The lead of p is col, so the combination cancels col from row
            // and introduces only free columns; the lead of row stays c.
            row = combine(&row, b / g, p, a / g);
        }
        reduced.insert(c, row);
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if reduced.contains_key(&f) {
            continue;
        }
        // x_f = 1, pivot variables solve a_c x_c + a_f = 0.
        let mut entries: Vec<(usize, Q128)> = vec![(f, Q128::one())];
        for (&c, row) in &reduced {
            let a_c = row.first().unwrap().1;
            debug_assert_eq!(row.first().unwrap().0, c);
            if let Some(&(_, a_f)) = row.iter().find(|&&(col, _)| col == f) {
                entries.push((c, Q128::new(-a_f, a_c)));
            }
        }
        // Clear denominators and divide by the gcd.
        let mut denom: i128 = 1;
        for (_, q) in &entries {
            denom = denom.lcm(q.denom());
        }
        let mut vec_out = vec![0i64; ncols];
        let mut g: i128 = 0;
        let mut ints: Vec<(usize, i128)> = Vec::with_capacity(entries.len());
        for (c, q) in entries {
            let v = q.numer() * (denom / q.denom());
            if v != 0 {
                g = g.gcd(&v);
                ints.push((c, v));
            }
        }
        for (c, v) in ints {
            let scaled = v / g;
            vec_out[c] = i64::try_from(scaled).expect("nullspace entry exceeds i64");
        }
        if vec_out[f] < 0 {
            for v in vec_out.iter_mut() {
                *v = -*v;
            }
        }
        basis.push(vec_out);
    }
    basis
}

/// Equations stating that an unknown `n x n` matrix `X` commutes with every
/// matrix in `mats`. Unknown `X[i][j]` has column index `i * n + j`.
pub fn commutant_equations(mats: &[Vec<Vec<i64>>], n: usize) -> Vec<Vec<(usize, i64)>> {
    let mut rows = Vec::new();
    for m in mats {
        assert_eq!(m.len(), n);
        for i in 0..n {
            for j in 0..n {
                // (X M - M X)[i][j] = sum_k X[i][k] M[k][j] - M[i][k] X[k][j]
                let mut row: Vec<(usize, i64)> = Vec::new();
                for k in 0..n {
                    if m[k][j] != 0 {
                        row.push((i * n + k, m[k][j]));
                    }
                    if m[i][k] != 0 {
                        row.push((k * n + j, -m[i][k]));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Dense rational matrix, used only for small eigenprojection computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat(pub Vec<Vec<Q128>>);

impl QMat {
    pub fn identity(n: usize) -> QMat {
        let mut m = vec![vec![Q128::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Q128::one();
        }
        QMat(m)
    }

    pub fn from_int(m: &[Vec<i64>]) -> QMat {
        QMat(
            m.iter()
                .map(|row| row.iter().map(|&v| Q128::from_integer(v as i128)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        let n = self.n();
        assert_eq!(other.n(), n);
        let mut out = vec![vec![Q128::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.0[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.0[k][j];
                    if !b.is_zero() {
                        out[i][j] += a * b;
                    }
                }
            }
        }
        QMat(out)
    }

    pub fn add_scaled(&self, other: &QMat, c: Q128) -> QMat {
        let n = self.n();
        let mut out = self.0.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] += c * other.0[i][j];
            }
        }
        QMat(out)
    }

    pub fn scale(&self, c: Q128) -> QMat {
        QMat(
            self.0
                .iter()
                .map(|row| row.iter().map(|&v| v * c).collect())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|row| row.iter().all(|v| v.is_zero()))
    }

    /// Rank over the rationals, via clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<(usize, i64)>> = self.0.iter().map(|row| clear_row(row)).collect();
        integer_rank(rows)
    }
}

/// Scales a rational row to a primitive integer sparse row.
pub fn clear_row(row: &[Q128]) -> Vec<(usize, i64)> {
    let mut denom: i128 = 1;
    for q in row {
        denom = denom.lcm(q.denom());
    }
    let mut g: i128 = 0;
    let ints: Vec<(usize, i128)> = row
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| {
            let v = q.numer() * (denom / q.denom());
            (i, v)
        })
        .collect();
    for &(_, v) in &ints {
        g = g.gcd(&v);
    }
    if g == 0 {
        return Vec::new();
    }
    ints.into_iter()
        .map(|(i, v)| (i, i64::try_from(v / g).expect("rational row entry exceeds i64")))
        .collect()
}

/// Rational roots of an integer polynomial `c[0] + c[1] x + ... + c[d] x^d`,
/// found by trial division over divisors of the outer coefficients. Returns
/// `None` if the polynomial does not split into distinct rational roots.
pub fn distinct_rational_roots(coeffs: &[i128]) -> Option<Vec<Q128>> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[d];
    assert!(lead != 0, "leading coefficient must be nonzero");
    // Trailing zero coefficients mean a root at zero.
    let mut poly: Vec<Q128> = coeffs.iter().map(|&c| Q128::from_integer(c)).collect();
    let mut roots = Vec::new();
    let eval = |p: &[Q128], x: Q128| -> Q128 {
        let mut acc = Q128::zero();
        for &c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let divisors = |v: i128| -> Vec<i128> {
        let v = v.abs();
        let mut out = Vec::new();
        let mut k = 1;
        while k * k <= v {
            if v % k == 0 {
                out.push(k);
                out.push(v / k);
            }
            k += 1;
        }
        out.sort_unstable();
        out.dedup();
        out
    };
    while poly.len() > 1 {
        if poly[0].is_zero() {
            roots.push(Q128::zero());
            poly.remove(0);
            continue;
        }
        // Clear to integers for the divisor search.
        let mut denom: i128 = 1;
        for q in &poly {
            denom = denom.lcm(q.denom());
        }
        let ints: Vec<i128> = poly.iter().map(|q| q.numer() * (denom / q.denom())).collect();
        let p0 = ints[0];
        let pl = *ints.last().unwrap();
        let mut found = None;
        'search: for p in divisors(p0) {
            for q in divisors(pl) {
                for sign in [1i128, -1] {
                    let cand = Q128::new(sign * p, q);
                    if eval(&poly, cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let root = found?;
        roots.push(root);
        // Synthetic division by (x - root).
        let mut quot = vec![Q128::zero(); poly.len() - 1];
        let mut carry = Q128::zero();
        for i in (0..poly.len() - 1).rev() {
            carry = poly[i + 1] + carry * root;
            quot[i] = carry;
        }
        debug_assert!((poly[0] + root * quot[0]).is_zero(), "nonzero division remainder");
        poly = quot;
    }
    let mut sorted = roots.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != roots.len() {
        return None;
    }
    roots.sort();
    Some(roots)
}

/// Solves `sum_j x_j cols[j] = target` exactly over the rationals by dense
/// elimination. Returns `None` when the system is inconsistent; free
/// coefficients are set to zero.
pub fn q128_solve(cols: &[Vec<Q128>], target: &[Q128]) -> Option<Vec<Q128>> {
    let k = cols.len();
    let n = target.len();
    for c in cols {
        assert_eq!(c.len(), n, "column length mismatch");
    }
    // Augmented rows [cols | target].
    let mut rows: Vec<Vec<Q128>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q128> = cols.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    let mut next_row = 0usize;
    for col in 0..k {
        let Some(p) = (next_row..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, p);
        let lead = rows[next_row][col];
        for r in 0..n {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col] / lead;
            for c in col..=k {
                let sub = factor * rows[next_row][c];
                rows[r][c] -= sub;
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == n {
            break;
        }
    }
    // Inconsistent when a zero coefficient row has nonzero right side.
    for (r, row) in rows.iter().enumerate() {
        if row[k].is_zero() {
            continue;
        }
        let is_pivot_row = pivot_of_col.iter().any(|p| *p == Some(r));
        if !is_pivot_row && row[..k].iter().all(|v| v.is_zero()) {
            return None;
        }
    }
    let mut x = vec![Q128::zero(); k];
    for col in 0..k {
        if let Some(r) = pivot_of_col[col] {
            x[col] = rows[r][k] / rows[r][col];
        }
    }
    Some(x)
}
