//! Exact integer and rational linear algebra: Smith normal form with full
//! transform tracking, cokernel presentations, matrix powers, primitivity,
//! and Perron sign certificates.

mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{FgAbGroup, GroupElement};
use crate::error::KError;
use poly::RPoly;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, KError> {
        if rows == 0 || cols == 0 {
            return Err(KError::invalid("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(KError::invalid(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Convenience constructor from machine integers; rows must be nonempty
    /// and rectangular.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty(), "matrix must be nonempty");
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, val: BigInt) {
        self.entries[i * self.cols + j] = val;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "dimension mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "dimension mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.cols == other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Parses the text format: one row per line, whitespace-separated
    /// integers. Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, KError> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut width = None;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for tok in trimmed.split_whitespace() {
                let val: BigInt = tok
                    .parse()
                    .map_err(|_| KError::parse(lineno, format!("not an integer: {:?}", tok)))?;
                row.push(val);
            }
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(KError::parse(
                        lineno,
                        format!("row has {} entries, previous rows have {}", row.len(), w),
                    ));
                }
                _ => {}
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(KError::parse(1, "matrix has no rows"));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(KError::parse(1, "matrix has no columns"));
        }
        IntMatrix::new(rows.len(), cols, rows.into_iter().flatten().collect())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row i -= q * row j
    fn row_sub_mul(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let d = q * self.get(j, c);
            let val = self.get(i, c) - d;
            self.set(i, c, val);
        }
    }

    /// row i += q * row j
    fn row_add_mul(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let d = q * self.get(j, c);
            let val = self.get(i, c) + d;
            self.set(i, c, val);
        }
    }

    /// col i -= q * col j
    fn col_sub_mul(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let d = q * self.get(r, j);
            let val = self.get(r, i) - d;
            self.set(r, i, val);
        }
    }

    /// col i += q * col j
    fn col_add_mul(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let d = q * self.get(r, j);
            let val = self.get(r, i) + d;
            self.set(r, i, val);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let val = -self.get(i, c);
            self.set(i, c, val);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let val = -self.get(r, j);
            self.set(r, j, val);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form decomposition: u * input * v = d with u, v unimodular,
/// d diagonal, and every diagonal entry dividing the next.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Diagonal entries greater than 1.
    pub invariant_factors: Vec<BigInt>,
    /// Number of zero diagonal entries.
    pub zero_count: usize,
}

impl SnfResult {
    /// Full diagonal, length min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct SnfWork {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row i -= q * row t, on a and the row transforms.
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        self.a.row_sub_mul(i, t, q);
        self.u.row_sub_mul(i, t, q);
        self.u_inv.col_add_mul(t, i, q);
    }

    /// col j -= q * col t, on a and the column transforms.
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        self.a.col_sub_mul(j, t, q);
        self.v.col_sub_mul(j, t, q);
        self.v_inv.row_add_mul(t, j, q);
    }

    /// row t += row i
    fn row_add_row(&mut self, t: usize, i: usize) {
        let one = BigInt::one();
        self.a.row_add_mul(t, i, &one);
        self.u.row_add_mul(t, i, &one);
        self.u_inv.col_sub_mul(i, t, &one);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Quotient closest to a/b, leaving |a - q*b| <= |b|/2.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2u8 > b.abs() {
        if r.is_negative() == b.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Nonzero entry of minimal absolute value in the submatrix starting at
/// (t, t); first such position in row-major order on ties.
fn min_abs_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            let ab = e.abs();
            if best.is_none() || ab < best_abs {
                best = Some((i, j));
                best_abs = ab;
            }
        }
    }
    best
}

/// First entry of the submatrix below and right of (t, t) not divisible by
/// the pivot a[t][t], in row-major order.
fn nondivisible_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let p = a.get(t, t);
    for i in t + 1..a.rows() {
        for j in t + 1..a.cols() {
            if !a.get(i, j).mod_floor(p).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Smith normal form with the minimal-absolute-value pivot rule. Fully
/// deterministic; tracks u, v and their inverses.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = SnfWork {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let k = rows.min(cols);
    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = min_abs_pivot(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        'clear: loop {
            for i in t + 1..rows {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = div_nearest(w.a.get(i, t), w.a.get(t, t));
                if !q.is_zero() {
                    w.row_sub(i, t, &q);
                }
                if !w.a.get(i, t).is_zero() {
                    w.swap_rows(t, i);
                    continue 'clear;
                }
            }
            for j in t + 1..cols {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = div_nearest(w.a.get(t, j), w.a.get(t, t));
                if !q.is_zero() {
                    w.col_sub(j, t, &q);
                }
                if !w.a.get(t, j).is_zero() {
                    w.swap_cols(t, j);
                    continue 'clear;
                }
            }
            if let Some((bi, _)) = nondivisible_entry(&w.a, t) {
                w.row_add_row(t, bi);
                continue 'clear;
            }
            break;
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    debug_assert_eq!(w.u.mul(m).mul(&w.v), w.a, "transform identity violated");
    debug_assert_eq!(w.u.mul(&w.u_inv), IntMatrix::identity(rows));
    debug_assert_eq!(w.v_inv.mul(&w.v), IntMatrix::identity(cols));
    let diag: Vec<BigInt> = (0..k).map(|i| w.a.get(i, i).clone()).collect();
    let invariant_factors = diag.iter().filter(|x| **x > BigInt::one()).cloned().collect();
    let zero_count = diag.iter().filter(|x| x.is_zero()).count();
    SnfResult {
        d: w.a,
        u: w.u,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        invariant_factors,
        zero_count,
    }
}

/// Solves m * x = b over the integers.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows(), "dimension mismatch");
    let s = snf(m);
    let ub = s.u.mul_vec(b);
    let k = m.rows().min(m.cols());
    let mut w = vec![BigInt::zero(); m.cols()];
    for (i, val) in ub.iter().enumerate() {
        let d = if i < k { s.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !val.is_zero() {
                return None;
            }
        } else {
            let (q, r) = val.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        }
    }
    Some(s.v.mul_vec(&w))
}

/// Cokernel of the column span: the group Z^rows / im(m), in canonical
/// invariant-factor form, together with computable projection and section
/// maps between Z^rows and the canonical coordinates.
#[derive(Debug, Clone)]
pub struct CokernelPresentation {
    group: FgAbGroup,
    u: IntMatrix,
    u_inv: IntMatrix,
    diag: Vec<BigInt>,
    free_idx: Vec<usize>,
    tor_idx: Vec<usize>,
}

impl CokernelPresentation {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    /// Class of a vector of Z^rows in the canonical quotient coordinates.
    pub fn project(&self, x: &[BigInt]) -> Result<GroupElement, KError> {
        if x.len() != self.u.rows() {
            return Err(KError::invalid(format!(
                "vector length {} does not match presentation rank {}",
                x.len(),
                self.u.rows()
            )));
        }
        let y = self.u.mul_vec(x);
        let mut coords = Vec::with_capacity(self.free_idx.len() + self.tor_idx.len());
        for &i in &self.free_idx {
            coords.push(y[i].clone());
        }
        for &i in &self.tor_idx {
            coords.push(y[i].mod_floor(&self.diag[i]));
        }
        self.group.element(coords)
    }

    /// A representative in Z^rows of a canonical quotient element.
    /// project(section(g)) = g.
    pub fn section(&self, g: &GroupElement) -> Vec<BigInt> {
        let coords = g.coords();
        assert_eq!(coords.len(), self.free_idx.len() + self.tor_idx.len());
        let mut lift = vec![BigInt::zero(); self.u.rows()];
        for (p, &i) in self.free_idx.iter().enumerate() {
            lift[i] = coords[p].clone();
        }
        for (p, &i) in self.tor_idx.iter().enumerate() {
            lift[i] = coords[self.free_idx.len() + p].clone();
        }
        self.u_inv.mul_vec(&lift)
    }
}

/// Presents coker(m: Z^cols -> Z^rows) = Z^rows / (column span of m).
pub fn cokernel(m: &IntMatrix) -> CokernelPresentation {
    let s = snf(m);
    let k = m.rows().min(m.cols());
    let mut diag = vec![BigInt::zero(); m.rows()];
    for (i, d) in diag.iter_mut().enumerate().take(k) {
        *d = s.d.get(i, i).clone();
    }
    let mut free_idx = Vec::new();
    let mut tor_idx = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_zero() {
            free_idx.push(i);
        } else if !d.is_one() {
            tor_idx.push(i);
        }
    }
    let torsion: Vec<BigInt> = tor_idx.iter().map(|&i| diag[i].clone()).collect();
    let group = FgAbGroup::new(free_idx.len(), torsion).expect("SNF yields a canonical chain");
    CokernelPresentation { group, u: s.u, u_inv: s.u_inv, diag, free_idx, tor_idx }
}

/// Exact k-th power of a square matrix.
pub fn mat_pow(m: &IntMatrix, k: u64) -> Result<IntMatrix, KError> {
    if !m.is_square() {
        return Err(KError::invalid("matrix power requires a square matrix"));
    }
    let mut result = IntMatrix::identity(m.rows());
    let mut base = m.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    Ok(result)
}

fn bool_pattern(m: &IntMatrix) -> Vec<bool> {
    m.entries().iter().map(|e| e.is_positive()).collect()
}

fn bool_mul(a: &[bool], b: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for k in 0..n {
            if !a[i * n + k] {
                continue;
            }
            for j in 0..n {
                if b[k * n + j] {
                    out[i * n + j] = true;
                }
            }
        }
    }
    out
}

/// Primitivity of a nonnegative square matrix: some power is entrywise
/// strictly positive. Only powers up to n^2 - 2n + 2 need checking.
pub fn is_primitive(m: &IntMatrix) -> Result<bool, KError> {
    if !m.is_square() {
        return Err(KError::invalid("primitivity requires a square matrix"));
    }
    if !m.is_nonnegative() {
        return Err(KError::invalid("primitivity requires a nonnegative matrix"));
    }
    let n = m.rows();
    let bound = if n == 1 { 1 } else { n * n - 2 * n + 2 };
    let base = bool_pattern(m);
    let mut p = base.clone();
    for step in 1..=bound {
        if p.iter().all(|&x| x) {
            return Ok(true);
        }
        if step < bound {
            p = bool_mul(&p, &base, n);
        }
    }
    Ok(false)
}

/// Characteristic polynomial data of a square matrix b, by the
/// Faddeev-LeVerrier recurrence: coeffs is char(b) ascending and monic;
/// adj[k] are the matrix coefficients of adj(xI - b) = sum adj[k] x^(n-1-k).
pub(crate) struct CharData {
    pub coeffs: Vec<BigInt>,
    pub adj: Vec<IntMatrix>,
}

pub(crate) fn char_data(b: &IntMatrix) -> CharData {
    assert!(b.is_square());
    let n = b.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut adj = Vec::with_capacity(n);
    let mut cur = IntMatrix::identity(n);
    for k in 1..=n {
        adj.push(cur.clone());
        let prod = b.mul(&cur);
        let tr: BigInt = (0..n).map(|i| prod.get(i, i).clone()).sum();
        let (c, rem) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "trace division must be exact");
        coeffs[n - k] = c.clone();
        cur = prod;
        for i in 0..n {
            let val = cur.get(i, i) + &c;
            cur.set(i, i, val);
        }
    }
    debug_assert!(cur.is_zero(), "recurrence must terminate at zero");
    CharData { coeffs, adj }
}

/// Characteristic polynomial, coefficients ascending (constant term first),
/// monic of degree n.
pub fn char_poly(m: &IntMatrix) -> Result<Vec<BigInt>, KError> {
    if !m.is_square() {
        return Err(KError::invalid("characteristic polynomial requires a square matrix"));
    }
    Ok(char_data(m).coeffs)
}

/// Integer vector with a common positive denominator, kept normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatVector {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl RatVector {
    pub fn new(numerators: Vec<BigInt>, denominator: BigInt) -> Result<Self, KError> {
        if denominator.is_zero() {
            return Err(KError::invalid("denominator must be nonzero"));
        }
        let mut nums = numerators;
        let mut den = denominator;
        if den.is_negative() {
            den = -den;
            for n in nums.iter_mut() {
                *n = -n.clone();
            }
        }
        let mut g = den.clone();
        for n in &nums {
            g = g.gcd(n);
        }
        if g > BigInt::one() {
            for n in nums.iter_mut() {
                *n = n.div_floor(&g);
            }
            den = den.div_floor(&g);
        }
        Ok(RatVector { numerators: nums, denominator: den })
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        RatVector::new(v.to_vec(), BigInt::one()).expect("unit denominator")
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }
}

/// Sign of a pairing against the left Perron eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Unknown,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Unknown => "unknown",
        };
        write!(f, "{}", s)
    }
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// adj(xI - b) evaluated at an integer x, from the stored matrix coefficients.
fn eval_adj(adj: &[IntMatrix], x: &BigInt) -> IntMatrix {
    let n = adj[0].rows();
    let mut out = IntMatrix::zero(n, n);
    for m in adj {
        for i in 0..n {
            for j in 0..n {
                let val = out.get(i, j) * x + m.get(i, j);
                out.set(i, j, val);
            }
        }
    }
    out
}

/// Isolating interval (lo, hi] for the largest real root of a squarefree
/// polynomial, with its Sturm chain.
struct RootIso {
    poly: RPoly,
    chain: Vec<RPoly>,
    lo: BigRational,
    hi: BigRational,
}

const REFINE_CAP: usize = 512;

/// A point s strictly inside (lo, hi) at which none of the given polynomials
/// vanish. Deterministic: first admissible grid point.
fn pick_split(lo: &BigRational, hi: &BigRational, avoid: &[&RPoly]) -> BigRational {
    let total_deg: usize = avoid.iter().filter_map(|p| poly::degree(p)).sum();
    let d = BigInt::from(total_deg + 2);
    let width = hi - lo;
    for j in 1..total_deg + 2 {
        let frac = BigRational::new(BigInt::from(j), d.clone());
        let s = lo + &width * frac;
        if avoid.iter().all(|p| !poly::eval(p, &s).is_zero()) {
            return s;
        }
    }
    unreachable!("more grid points than roots");
}

/// Isolates the largest real root of q_work in (lo0, hi0]; endpoints must not
/// be roots. Returns None when the refinement cap is hit.
fn isolate_largest_root(q_work: &RPoly, lo0: BigRational, hi0: BigRational) -> Option<RootIso> {
    let chain = poly::sturm_chain(q_work);
    let mut lo = lo0;
    let mut hi = hi0;
    if poly::roots_between(&chain, &lo, &hi) == 0 {
        return None;
    }
    for _ in 0..REFINE_CAP {
        if poly::roots_between(&chain, &lo, &hi) == 1 {
            return Some(RootIso { poly: q_work.clone(), chain, lo, hi });
        }
        let s = pick_split(&lo, &hi, &[q_work]);
        if poly::roots_between(&chain, &s, &hi) >= 1 {
            lo = s;
        } else {
            hi = s;
        }
    }
    None
}

/// Exact sign of f at the isolated root; None when the cap is hit.
fn sign_at_root(f: &RPoly, iso: &RootIso) -> Option<i32> {
    let f = poly::normalize(f.clone());
    if f.is_empty() {
        return Some(0);
    }
    // f vanishes at the root exactly when gcd(f, q) does.
    let g = poly::gcd(&f, &iso.poly);
    if poly::degree(&g).is_some_and(|d| d >= 1) {
        let gchain = poly::sturm_chain(&g);
        if poly::roots_between(&gchain, &iso.lo, &iso.hi) > 0 {
            return Some(0);
        }
    }
    let fchain = poly::sturm_chain(&f);
    let mut lo = iso.lo.clone();
    let mut hi = iso.hi.clone();
    for _ in 0..REFINE_CAP {
        let lo_ok = !poly::eval(&f, &lo).is_zero();
        let hi_ok = !poly::eval(&f, &hi).is_zero();
        if lo_ok && hi_ok && poly::roots_between(&fchain, &lo, &hi) == 0 {
            return Some(poly::sign_of(&poly::eval(&f, &hi)));
        }
        let s = pick_split(&lo, &hi, &[&f, &iso.poly]);
        if poly::roots_between(&iso.chain, &s, &hi) >= 1 {
            lo = s;
        } else {
            hi = s;
        }
    }
    None
}

/// Sign of the pairing of v against the left Perron eigenvector of a
/// primitive matrix m. Exact when the Perron root is an integer; otherwise
/// decided by exact root isolation, with Unknown only on refinement-cap
/// exhaustion.
pub fn perron_sign(m: &IntMatrix, v: &RatVector) -> Result<Sign, KError> {
    if !is_primitive(m)? {
        return Err(KError::Hypothesis(
            "Perron pairing requires a primitive matrix".to_string(),
        ));
    }
    let n = m.rows();
    if v.len() != n {
        return Err(KError::invalid(format!(
            "vector length {} does not match matrix size {}",
            v.len(),
            n
        )));
    }
    // Left eigenvectors of m are right eigenvectors of the transpose.
    let b = m.transpose();
    let cd = char_data(&b);
    let mut low = 0;
    while cd.coeffs[low].is_zero() {
        low += 1;
    }
    let q: Vec<BigInt> = cd.coeffs[low..].to_vec();
    // The Perron root lies in [1, max row sum].
    let u_bound: BigInt = (0..n)
        .map(|i| m.row(i).iter().sum::<BigInt>())
        .max()
        .expect("nonempty");
    // Integer roots of the monic polynomial q, largest first.
    let mut int_roots: Vec<BigInt> = Vec::new();
    if let Some(cap) = u_bound.to_u64().filter(|&x| x <= 1_000_000) {
        let q0 = q[0].abs();
        for d in 1..=cap {
            let cand = BigInt::from(d);
            if q0.mod_floor(&cand).is_zero() && eval_int_poly(&q, &cand).is_zero() {
                int_roots.push(cand);
            }
        }
    }
    // Deflate integer roots to full multiplicity.
    let mut q_defl = poly::from_int_coeffs(&q);
    for r in &int_roots {
        let factor: RPoly = poly::from_int_coeffs(&[-r.clone(), BigInt::one()]);
        loop {
            let (quo, rem) = poly::divmod(&q_defl, &factor);
            if rem.is_empty() && !quo.is_empty() {
                q_defl = quo;
            } else {
                break;
            }
        }
    }
    let hi0 = BigRational::from_integer(&u_bound + 1);
    if let Some(r_max) = int_roots.last().cloned() {
        let above = if poly::degree(&q_defl).is_none_or(|d| d == 0) {
            0
        } else {
            let sf = poly::squarefree_part(&q_defl);
            let chain = poly::sturm_chain(&sf);
            poly::roots_between(&chain, &BigRational::from_integer(r_max.clone()), &hi0)
        };
        if above == 0 {
            // The Perron root is exactly r_max; the adjugate column is an
            // exact eigenvector, strictly positive for primitive matrices.
            let w_mat = eval_adj(&cd.adj, &r_max);
            let w: Vec<BigInt> = (0..n).map(|i| w_mat.get(i, 0).clone()).collect();
            assert!(w.iter().all(|x| x.is_positive()), "Perron adjugate column must be positive");
            let pairing: BigInt = w.iter().zip(v.numerators()).map(|(a, b)| a * b).sum();
            return Ok(if pairing.is_zero() {
                Sign::Zero
            } else if pairing.is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            });
        }
    }
    // Irrational Perron root: exact isolation via Sturm sequences.
    let lo0 = BigRational::from_integer(
        int_roots.last().cloned().unwrap_or_else(BigInt::zero),
    );
    let q_work = poly::squarefree_part(&q_defl);
    let Some(iso) = isolate_largest_root(&q_work, lo0, hi0) else {
        return Ok(Sign::Unknown);
    };
    // Column 0 of adj(xI - b) at the root is a positive multiple of the
    // Perron eigenvector; entry (0,0) certifies the orientation.
    let mut h_coeffs = vec![BigInt::zero(); n];
    let mut g_coeffs = vec![BigInt::zero(); n];
    for (k, mat) in cd.adj.iter().enumerate() {
        let deg = n - 1 - k;
        h_coeffs[deg] = mat.get(0, 0).clone();
        g_coeffs[deg] = (0..n).map(|i| mat.get(i, 0) * &v.numerators()[i]).sum();
    }
    let h = poly::from_int_coeffs(&h_coeffs);
    let g = poly::from_int_coeffs(&g_coeffs);
    let Some(sh) = sign_at_root(&h, &iso) else { return Ok(Sign::Unknown) };
    if sh == 0 {
        debug_assert!(false, "adjugate entry cannot vanish at the Perron root");
        return Ok(Sign::Unknown);
    }
    let Some(sg) = sign_at_root(&g, &iso) else { return Ok(Sign::Unknown) };
    Ok(match sg * sh {
        0 => Sign::Zero,
        x if x > 0 => Sign::Positive,
        _ => Sign::Negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn parse_and_display_round_trip() {
        let text = "1 2 3\n4 5 6";
        let m = IntMatrix::parse(text).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.to_string(), text);
        let with_comments = "# adjacency\n\n1 2 3\n4 5 6\n";
        assert_eq!(IntMatrix::parse(with_comments).unwrap(), m);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = IntMatrix::parse("1 2\n3\n").unwrap_err();
        match err {
            KError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        let err = IntMatrix::parse("1 x\n").unwrap_err();
        match err {
            KError::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    // Oracle: product of the first k invariant factors equals the gcd of all
    // k x k minors.
    fn minors_gcd(m: &IntMatrix, k: usize) -> BigInt {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in combos(n - first - 1, k - 1) {
                    for r in rest.iter_mut() {
                        *r += first + 1;
                    }
                    let mut c = vec![first];
                    c.append(&mut rest);
                    out.push(c);
                }
            }
            out
        }
        fn det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = BigInt::zero();
            for (p, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(m, &rows[1..], &sub_cols);
                let term = m.get(rows[0], c) * minor;
                if p % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let mut g = BigInt::zero();
        for rs in combos(m.rows(), k) {
            for cs in combos(m.cols(), k) {
                g = g.gcd(&det(m, &rs, &cs));
            }
        }
        g
    }

    #[test]
    fn snf_small_example_against_minor_oracle() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(minors_gcd(&m, 1), bi(2));
        assert_eq!(minors_gcd(&m, 2), bi(8));
        let s = snf(&m);
        assert_eq!(s.diagonal(), vec![bi(2), bi(4)]);
        assert_eq!(s.invariant_factors, vec![bi(2), bi(4)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_identity_and_single_entry() {
        let s = snf(&IntMatrix::identity(4));
        assert_eq!(s.diagonal(), vec![bi(1); 4]);
        assert!(s.invariant_factors.is_empty());
        assert_eq!(s.zero_count, 0);
        // coker([n-1]) = Z/(n-1) for a rose with n = 3 loops
        let s = snf(&IntMatrix::from_i64(&[&[2]]));
        assert_eq!(s.invariant_factors, vec![bi(2)]);
    }

    #[test]
    fn snf_zero_and_rectangular() {
        let s = snf(&IntMatrix::zero(2, 3));
        assert_eq!(s.zero_count, 2);
        assert!(s.invariant_factors.is_empty());
        let m = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 6, 0]]);
        let s = snf(&m);
        assert_eq!(s.diagonal(), vec![bi(1), bi(6)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn solve_linear_system() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let x = solve(&m, &[bi(4), bi(9)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![bi(4), bi(9)]);
        assert!(solve(&m, &[bi(1), bi(0)]).is_none());
        // underdetermined but solvable
        let m = IntMatrix::from_i64(&[&[1, 2]]);
        let x = solve(&m, &[bi(7)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![bi(7)]);
    }

    #[test]
    fn cokernel_examples() {
        // coker(A^t - I) for the one-vertex graph with n loops is Z/(n-1)
        for n in 2..=6i64 {
            let m = IntMatrix::from_i64(&[&[n - 1]]);
            let c = cokernel(&m);
            let expected = crate::abelian::FgAbGroup::new(0, vec![bi(n - 1)]).unwrap();
            assert_eq!(c.group(), &expected);
        }
        let z2 = cokernel(&IntMatrix::from_i64(&[&[0, 1], &[2, -1]]));
        assert_eq!(z2.group().free_rank(), 0);
        assert_eq!(z2.group().torsion(), &[bi(2)]);
        let free = cokernel(&IntMatrix::zero(2, 2));
        assert_eq!(free.group().free_rank(), 2);
        assert!(free.group().torsion().is_empty());
    }

    #[test]
    fn cokernel_projection_and_section() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let c = cokernel(&m);
        let g = c.project(&[bi(1), bi(1)]).unwrap();
        let lift = c.section(&g);
        let back = c.project(&lift).unwrap();
        assert_eq!(g, back);
        // the column span projects to zero
        let z = c.project(&[bi(2), bi(0)]).unwrap();
        assert_eq!(z, c.group().zero());
    }

    #[test]
    fn mat_pow_examples() {
        let m = IntMatrix::from_i64(&[&[1, 1], &[2, 0]]);
        assert_eq!(mat_pow(&m, 2).unwrap(), IntMatrix::from_i64(&[&[3, 1], &[2, 2]]));
        assert_eq!(mat_pow(&m, 0).unwrap(), IntMatrix::identity(2));
        assert_eq!(mat_pow(&IntMatrix::from_i64(&[&[2]]), 5).unwrap(), IntMatrix::from_i64(&[&[32]]));
        assert!(mat_pow(&IntMatrix::zero(2, 3), 2).is_err());
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&IntMatrix::from_i64(&[&[1, 1], &[2, 0]])).unwrap());
        assert!(!is_primitive(&IntMatrix::identity(2)).unwrap());
        assert!(!is_primitive(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(is_primitive(&IntMatrix::from_i64(&[&[1]])).unwrap());
        assert!(!is_primitive(&IntMatrix::from_i64(&[&[0]])).unwrap());
        assert!(is_primitive(&IntMatrix::from_i64(&[&[0, 1], &[1, 1]])).unwrap());
        assert!(is_primitive(&IntMatrix::from_i64(&[&[1, -1], &[0, 1]])).is_err());
    }

    #[test]
    fn char_poly_of_known_matrix() {
        // x^2 - x - 2 for [[1,1],[2,0]]
        let m = IntMatrix::from_i64(&[&[1, 1], &[2, 0]]);
        assert_eq!(char_poly(&m).unwrap(), vec![bi(-2), bi(-1), bi(1)]);
        let id = IntMatrix::identity(2);
        assert_eq!(char_poly(&id).unwrap(), vec![bi(1), bi(-2), bi(1)]);
    }

    #[test]
    fn perron_sign_integer_root() {
        // left Perron eigenvector of [[1,1],[2,0]] is (2,1)
        let m = IntMatrix::from_i64(&[&[1, 1], &[2, 0]]);
        let sign = |v: &[i64]| {
            let rv = RatVector::from_ints(&v.iter().map(|&x| bi(x)).collect::<Vec<_>>());
            perron_sign(&m, &rv).unwrap()
        };
        assert_eq!(sign(&[1, -1]), Sign::Positive);
        assert_eq!(sign(&[-1, 1]), Sign::Negative);
        assert_eq!(sign(&[1, -2]), Sign::Zero);
    }

    #[test]
    fn perron_sign_rejects_non_primitive() {
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let v = RatVector::from_ints(&[bi(1), bi(1)]);
        assert!(perron_sign(&m, &v).is_err());
    }

    #[test]
    fn perron_sign_irrational_root() {
        // [[1,1],[1,0]]: Perron root is the golden ratio, left eigenvector
        // (phi, 1); pairing with (1,-1) is phi - 1 > 0, with (-1,1) negative,
        // with (1, -phi)... use (2,-3): 2*phi - 3 with phi = 1.618 -> 0.236 > 0
        let m = IntMatrix::from_i64(&[&[1, 1], &[1, 0]]);
        let sign = |v: &[i64]| {
            let rv = RatVector::from_ints(&v.iter().map(|&x| bi(x)).collect::<Vec<_>>());
            perron_sign(&m, &rv).unwrap()
        };
        assert_eq!(sign(&[1, -1]), Sign::Positive);
        assert_eq!(sign(&[-1, 1]), Sign::Negative);
        assert_eq!(sign(&[2, -3]), Sign::Positive);
        assert_eq!(sign(&[-2, 3]), Sign::Negative);
        // rational pairing: v = (1, -phi) is impossible over Q, so no Zero here
        assert_eq!(sign(&[0, 0]), Sign::Zero);
    }

    #[test]
    fn rat_vector_normalizes() {
        let v = RatVector::new(vec![bi(2), bi(-4)], bi(-6)).unwrap();
        assert_eq!(v.numerators(), &[bi(-1), bi(2)]);
        assert_eq!(v.denominator(), &bi(3));
        assert!(RatVector::new(vec![bi(1)], bi(0)).is_err());
    }
}
