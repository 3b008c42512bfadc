//! Smith normal form of sparse integer matrices.
//!
//! Elimination runs in checked `i64` arithmetic and is redone over
//! arbitrary-precision integers if any intermediate value overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer matrix stored as sorted sparse rows.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ({} nonzeros)", self.rows, self.cols, self.nnz())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let data = dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect())
            .collect();
        IntMatrix { rows, cols, data }
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triples {
            assert!(i < rows && j < cols, "entry ({i}, {j}) outside {rows}x{cols}");
            m.data[i].push((j, v));
        }
        for row in &mut m.data {
            row.sort_unstable_by_key(|&(j, _)| j);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match merged.last_mut() {
                    Some((k, w)) if *k == j => *w += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *row = merged;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let row = &self.data[i];
        row.binary_search_by_key(&j, |&(k, _)| k).map_or(0, |p| row[p].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for &(j, v) in row {
                d[i][j] = v;
            }
        }
        d
    }

    /// Nonzero entries in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |&(j, v)| (i, j, v)))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = vec![0i64; other.cols];
            for &(k, a) in row {
                for &(j, b) in &other.data[k] {
                    acc[j] += a * b;
                }
            }
            out.data[i] = acc.into_iter().enumerate().filter(|(_, v)| *v != 0).collect();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// `d1 | d2 | ... | d_rank`, all positive.
    pub invariant_factors: Vec<u64>,
}

impl SmithForm {
    /// Factors above 1, i.e. the torsion they contribute to homology.
    pub fn torsion(&self) -> Vec<u64> {
        self.invariant_factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let diagonal = match eliminate::<i64>(m) {
        Some(d) => d.into_iter().map(|v| BigInt::from(v.unsigned_abs())).collect(),
        None => eliminate::<BigInt>(m).expect("arbitrary precision cannot overflow"),
    };
    let rank = diagonal.len();
    let invariant_factors = divisibility_chain(diagonal)?;
    Ok(SmithForm { rank, invariant_factors })
}

/// Smith form using only the checked `i64` path; fails with
/// [`Error::IntegerOverflow`] instead of escalating.
pub fn smith_normal_form_i64(m: &IntMatrix) -> Result<SmithForm> {
    let diagonal: Vec<BigInt> = eliminate::<i64>(m)
        .ok_or(Error::IntegerOverflow)?
        .into_iter()
        .map(|v| BigInt::from(v.unsigned_abs()))
        .collect();
    let rank = diagonal.len();
    Ok(SmithForm { rank, invariant_factors: divisibility_chain(diagonal)? })
}

/// Turns the diagonal of any equivalent diagonal matrix into invariant factors
/// via `(a, b) -> (gcd, lcm)` sweeps.
fn divisibility_chain(mut d: Vec<BigInt>) -> Result<Vec<u64>> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if num_traits::Zero::is_zero(&(&d[j] % &d[i])) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.iter().map(|v| v.to_u64().ok_or(Error::IntegerOverflow)).collect()
}

trait Scalar: Clone + PartialEq + fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Ordering key for pivot choice.
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    /// Truncated quotient and remainder, `|r| < |d|`.
    fn div_rem_trunc(&self, d: &Self) -> Option<(Self, Self)>;
    /// `self - q * b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn abs_value(&self) -> Option<Self>;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn div_rem_trunc(&self, d: &Self) -> Option<(Self, Self)> {
        Some((self.checked_div(*d)?, self.checked_rem(*d)?))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn abs_value(&self) -> Option<Self> {
        self.checked_abs()
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude() == &num_bigint::BigUint::from(1u8)
    }
    fn div_rem_trunc(&self, d: &Self) -> Option<(Self, Self)> {
        Some((self / d, self % d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn abs_value(&self) -> Option<Self> {
        Some(self.abs())
    }
}

type Row<T> = Vec<(usize, T)>;

fn entry<T>(row: &Row<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(j, _)| *j).ok().map(|p| &row[p].1)
}

/// `target - q * source`, merged over sorted sparse rows.
fn axpy<T: Scalar>(target: &Row<T>, q: &T, source: &Row<T>) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut a, mut b) = (0, 0);
    let zero = T::from_i64(0);
    while a < target.len() || b < source.len() {
        let ca = target.get(a).map_or(usize::MAX, |e| e.0);
        let cb = source.get(b).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(target[a].clone());
            a += 1;
        } else if cb < ca {
            let v = zero.sub_mul(q, &source[b].1)?;
            out.push((cb, v));
            b += 1;
        } else {
            let v = target[a].1.sub_mul(q, &source[b].1)?;
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some(out)
}

/// Diagonalizes by unimodular row and column operations, returning the
/// nonzero diagonal (not yet in divisibility form). `None` on overflow.
fn eliminate<T: Scalar>(m: &IntMatrix) -> Option<Vec<T>> {
    let mut rows: Vec<Row<T>> = m.data.iter().map(|r| r.iter().map(|&(j, v)| (j, T::from_i64(v))).collect()).collect();
    let mut active: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut diagonal = Vec::new();

    while let Some((mut r, mut c)) = choose_pivot(&rows, &active) {
        loop {
            // Clear column c below/above the pivot with row operations.
            let p = entry(&rows[r], c).expect("pivot present").clone();
            let mut smallest: Option<(usize, T)> = None;
            for &i in &active {
                if i == r {
                    continue;
                }
                let Some(a) = entry(&rows[i], c) else { continue };
                let (q, rem) = a.div_rem_trunc(&p)?;
                if !q.is_zero() {
                    rows[i] = axpy(&rows[i], &q, &rows[r])?;
                }
                if !rem.is_zero() && smallest.as_ref().is_none_or(|(_, s)| rem.magnitude_lt(s)) {
                    smallest = Some((i, rem));
                }
            }
            active.retain(|&i| !rows[i].is_empty());
            if let Some((i, _)) = smallest {
                r = i;
                continue;
            }
            // Column c is now zero outside row r; column operations on row r
            // touch nothing else.
            let mut rest: Row<T> = Vec::new();
            let mut kept_pivot = None;
            for (j, b) in rows[r].drain(..) {
                if j == c {
                    kept_pivot = Some((j, b));
                } else {
                    let (_, rem) = b.div_rem_trunc(&p)?;
                    if !rem.is_zero() {
                        rest.push((j, rem));
                    }
                }
            }
            let pivot_entry = kept_pivot.expect("pivot present");
            if rest.is_empty() {
                diagonal.push(pivot_entry.1.abs_value()?);
                active.retain(|&i| i != r);
                break;
            }
            let (next_c, _) = rest
                .iter()
                .fold(None::<&(usize, T)>, |best, e| match best {
                    Some(b) if !e.1.magnitude_lt(&b.1) => Some(b),
                    _ => Some(e),
                })
                .expect("nonempty")
                .clone();
            rest.push(pivot_entry);
            rest.sort_by_key(|e| e.0);
            rows[r] = rest;
            c = next_c;
        }
    }
    Some(diagonal)
}

/// Entry of least magnitude; ties go to the shorter row, then lower indices.
fn choose_pivot<T: Scalar>(rows: &[Row<T>], active: &[usize]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, &T)> = None;
    for &i in active {
        for (j, v) in &rows[i] {
            let better = match best {
                None => true,
                Some((bi, _, bv)) => v.magnitude_lt(bv) || (!bv.magnitude_lt(v) && rows[i].len() < rows[bi].len()),
            };
            if better {
                best = Some((i, *j, v));
            }
        }
        if let Some((bi, _, bv)) = best {
            if bv.is_unit() && rows[bi].len() <= 2 {
                break;
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
