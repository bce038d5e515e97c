//! Exact characteristic polynomials and walk counts.
//!
//! `char_poly` runs the division-free Berkowitz recurrence, first in
//! checked `i128` arithmetic and, if any intermediate overflows, again over
//! `BigInt`. No floating point is involved anywhere.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::bijection::Bijection;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Coefficients of `det(xI - A)`; `coeffs[i]` multiplies `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> CharPoly {
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree as a big-endian `u32`, then for each coefficient from `x^0`
    /// upwards: a sign byte (0 zero, 1 positive, 2 negative), the magnitude
    /// length as a big-endian `u32`, and the big-endian magnitude bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.coeffs.len() * 6);
        out.extend_from_slice(&(self.degree() as u32).to_be_bytes());
        for c in &self.coeffs {
            let (sign, mag) = c.to_bytes_be();
            let (tag, mag) = match sign {
                Sign::NoSign => (0u8, Vec::new()),
                Sign::Plus => (1, mag),
                Sign::Minus => (2, mag),
            };
            out.push(tag);
            out.extend_from_slice(&(mag.len() as u32).to_be_bytes());
            out.extend_from_slice(&mag);
        }
        out
    }

    /// Coefficients from `x^n` down to `x^0`, space separated.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .rev()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn from_text(s: &str) -> Result<CharPoly> {
        let mut coeffs = s
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Validation(format!("bad coefficient {:?}", t)))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Validation("empty polynomial".into()));
        }
        coeffs.reverse();
        Ok(CharPoly { coeffs })
    }

    /// Value at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            match (show_mag, i) {
                (true, 0) => write!(f, "{}", mag)?,
                (true, 1) => write!(f, "{}x", mag)?,
                (true, _) => write!(f, "{}x^{}", mag, i)?,
                (false, 1) => f.write_str("x")?,
                (false, _) => write!(f, "x^{}", i)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({})", self)
    }
}

/// Exact characteristic polynomial of the adjacency matrix.
pub fn char_poly(g: &Graph) -> CharPoly {
    if let Some(c) = berkowitz::<i128>(g) {
        return CharPoly {
            coeffs: c.into_iter().map(BigInt::from).collect(),
        };
    }
    let c = berkowitz::<BigInt>(g).expect("BigInt arithmetic cannot overflow");
    CharPoly { coeffs: c }
}

/// Berkowitz: starting from the empty trailing block, each step prepends a
/// row/column and multiplies the running coefficient vector by a lower
/// triangular Toeplitz matrix with first column
/// `1, -a, -R C, -R A1 C, -R A1^2 C, ...`.
///
/// Returns coefficients lowest degree first, or `None` on overflow of `T`.
fn berkowitz<T>(g: &Graph) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul,
{
    let n = g.order();
    // highest degree first while iterating
    let mut p: Vec<T> = vec![T::one()];
    for k in (0..n).rev() {
        let r = n - k;
        let mut toeplitz: Vec<T> = Vec::with_capacity(r + 1);
        toeplitz.push(T::one());
        // diagonal entries of an adjacency matrix are zero
        toeplitz.push(T::zero());
        // v = A1^i C, C = column k below the diagonal
        let mut v: Vec<T> = (k + 1..n)
            .map(|i| if g.has_edge(i, k) { T::one() } else { T::zero() })
            .collect();
        for i in 0..r.saturating_sub(1) {
            if i > 0 {
                let mut next = Vec::with_capacity(v.len());
                for row in k + 1..n {
                    let mut acc = T::zero();
                    for col in crate::graph::bits(g.row(row) >> (k + 1)) {
                        acc = acc.checked_add(&v[col])?;
                    }
                    next.push(acc);
                }
                v = next;
            }
            // R v with R = row k to the right of the diagonal
            let mut acc = T::zero();
            for col in crate::graph::bits(g.row(k) >> (k + 1)) {
                acc = acc.checked_add(&v[col])?;
            }
            toeplitz.push(T::zero().checked_sub(&acc)?);
        }
        let mut next = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let mut acc = T::zero();
            for j in 0..p.len().min(i + 1) {
                let t = &toeplitz[i - j];
                if t.is_zero() || p[j].is_zero() {
                    continue;
                }
                acc = acc.checked_add(&t.checked_mul(&p[j])?)?;
            }
            next.push(acc);
        }
        p = next;
    }
    p.reverse();
    Some(p)
}

/// Largest order accepted by [`char_poly_oracle`].
pub const ORACLE_MAX_ORDER: usize = 10;

/// Independent reference: Laplace expansion of `det(xI - A)` along rows,
/// memoised over the set of columns already consumed. Test use only.
pub fn char_poly_oracle(g: &Graph) -> Result<CharPoly> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::SizeGuard {
            what: "oracle order",
            got: n,
            limit: ORACLE_MAX_ORDER,
        });
    }
    // entry (r, c) of xI - A as a polynomial, lowest degree first
    let entry = |r: usize, c: usize| -> Vec<i128> {
        if r == c {
            vec![0, 1]
        } else if g.has_edge(r, c) {
            vec![-1]
        } else {
            vec![0]
        }
    };
    let mut minors: Vec<Vec<i128>> = vec![Vec::new(); 1 << n];
    minors[0] = vec![1];
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc: Vec<i128> = vec![0];
        for col in 0..n {
            if mask >> col & 1 == 0 {
                continue;
            }
            let position = (mask & ((1 << col) - 1)).count_ones() as usize;
            let sign = if (row + position).is_multiple_of(2) { 1 } else { -1 };
            let term = poly_mul(&entry(row, col), &minors[mask & !(1 << col)]);
            acc = poly_add(&acc, &term, sign);
        }
        minors[mask] = acc;
    }
    let mut top = minors[(1 << n) - 1].clone();
    top.resize(n + 1, 0);
    Ok(CharPoly {
        coeffs: top.into_iter().map(BigInt::from).collect(),
    })
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i128], b: &[i128], sign: i128) -> Vec<i128> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += sign * y;
    }
    out
}

/// Same order and identical characteristic polynomials.
pub fn cospectral(g1: &Graph, g2: &Graph) -> bool {
    g1.order() == g2.order() && char_poly(g1) == char_poly(g2)
}

/// Walk counts `A^r` for `r` in `0..=r_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCountTable {
    n: usize,
    counts: Vec<Vec<BigInt>>,
}

impl WalkCountTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn r_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// Number of `i`-`j` walks of length `r`.
    pub fn get(&self, r: usize, i: usize, j: usize) -> &BigInt {
        &self.counts[r][i * self.n + j]
    }

    /// Sum of closed walks of length `r`, i.e. the `r`-th spectral power sum.
    pub fn trace(&self, r: usize) -> BigInt {
        (0..self.n).map(|i| self.get(r, i, i)).sum()
    }
}

pub fn walk_counts(g: &Graph, r_max: usize) -> WalkCountTable {
    let n = g.order();
    let mut counts = Vec::with_capacity(r_max + 1);
    let mut cur: Vec<BigInt> = (0..n * n)
        .map(|k| if k / n == k % n { BigInt::one() } else { BigInt::zero() })
        .collect();
    for _ in 0..r_max {
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for m in g.neighbors(i) {
                for j in 0..n {
                    next[i * n + j] += &cur[m * n + j];
                }
            }
        }
        counts.push(std::mem::replace(&mut cur, next));
    }
    counts.push(cur);
    WalkCountTable { n, counts }
}

/// Default truncation depth for walk-generating-function comparisons.
pub fn default_walk_depth(g: &Graph) -> usize {
    2 * g.order()
}

/// Truncated walk-generating-matrix agreement: for all `i, j` in `s` and
/// `r <= r_max`, the `i`-`j` walk count in `g1` equals the
/// `f(i)`-`f(j)` walk count in `g2`.
pub fn walks_match(g1: &Graph, s: &VertexSet, g2: &Graph, t: &VertexSet, f: &Bijection, r_max: usize) -> Result<bool> {
    f.check_between(s, t)?;
    for v in s.iter() {
        g1.check_vertex(v)?;
    }
    for v in t.iter() {
        g2.check_vertex(v)?;
    }
    let w1 = walk_counts(g1, r_max);
    let w2 = walk_counts(g2, r_max);
    for r in 0..=r_max {
        for &(i, fi) in f.pairs() {
            for &(j, fj) in f.pairs() {
                if w1.get(r, i, j) != w2.get(r, fi, fj) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
