//! Dimension triples of nonnegative integer matrices, as modules with a
//! shift action: element arithmetic and equality, positivity against the
//! cone, order unit, and shift-equivalence witnesses, refutation, and
//! bounded search.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abelian::FgAbGroup;
use crate::error::KError;
use crate::linalg::{
    char_poly, cokernel, is_primitive, mat_pow, perron_sign, IntMatrix, RatVector, Sign,
};

/// The direct-limit module of a square nonnegative matrix, together with
/// its positive cone and shift automorphism. Elements are pairs [v, k].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTriple {
    a: IntMatrix,
}

impl DimensionTriple {
    pub fn new(a: IntMatrix) -> Result<Self, KError> {
        if !a.is_square() {
            return Err(KError::invalid("dimension triple needs a square matrix"));
        }
        if !a.is_nonnegative() {
            return Err(KError::invalid("dimension triple needs a nonnegative matrix"));
        }
        Ok(DimensionTriple { a })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn element(&self, v: Vec<BigInt>, k: u64) -> Result<DmElement, KError> {
        if v.len() != self.n() {
            return Err(KError::invalid(format!(
                "vector length {} does not match triple size {}",
                v.len(),
                self.n()
            )));
        }
        Ok(DmElement { v, k })
    }

    pub fn element_from_i64(&self, v: &[i64], k: u64) -> Result<DmElement, KError> {
        self.element(v.iter().map(|&x| BigInt::from(x)).collect(), k)
    }

    pub fn zero_element(&self) -> DmElement {
        DmElement { v: vec![BigInt::zero(); self.n()], k: 0 }
    }

    /// Parses `(v1,...,vn)@k`.
    pub fn parse_element(&self, text: &str) -> Result<DmElement, KError> {
        let t = text.trim();
        let (vec_part, k_part) = t
            .rsplit_once('@')
            .ok_or_else(|| KError::invalid(format!("bad element literal {:?} (expected (v1,...,vn)@k)", t)))?;
        let inner = vec_part
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| KError::invalid(format!("bad vector in {:?}", t)))?;
        let v: Result<Vec<BigInt>, KError> = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| KError::invalid(format!("bad coordinate {:?}", s.trim())))
            })
            .collect();
        let k: u64 = k_part
            .trim()
            .parse()
            .map_err(|_| KError::invalid(format!("bad exponent {:?}", k_part.trim())))?;
        self.element(v?, k)
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.a.mul_vec(v)
    }

    fn apply_pow(&self, v: &[BigInt], k: u64) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for _ in 0..k {
            out = self.apply(&out);
        }
        out
    }
}

/// Element [v, k] of a dimension triple; k is the telescope stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmElement {
    v: Vec<BigInt>,
    k: u64,
}

impl DmElement {
    pub fn vector(&self) -> &[BigInt] {
        &self.v
    }

    pub fn stage(&self) -> u64 {
        self.k
    }
}

impl fmt::Display for DmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.v.iter().map(|c| c.to_string()).collect();
        write!(f, "({})@{}", parts.join(","), self.k)
    }
}

fn check_element(t: &DimensionTriple, x: &DmElement) -> Result<(), KError> {
    if x.v.len() != t.n() {
        return Err(KError::invalid(format!(
            "element has {} coordinates, triple has size {}",
            x.v.len(),
            t.n()
        )));
    }
    Ok(())
}

/// Equality in the direct limit: [v,k] = [w,k'] iff A^m (A^{k'} v - A^k w)
/// vanishes for some m, which stabilizes by m = n.
pub fn dm_equal(t: &DimensionTriple, x: &DmElement, y: &DmElement) -> Result<bool, KError> {
    check_element(t, x)?;
    check_element(t, y)?;
    let left = t.apply_pow(&x.v, y.k);
    let right = t.apply_pow(&y.v, x.k);
    let mut d: Vec<BigInt> =
        left.iter().zip(&right).map(|(a, b)| a - b).collect();
    for _ in 0..t.n() {
        if d.iter().all(|c| c.is_zero()) {
            return Ok(true);
        }
        d = t.apply(&d);
    }
    Ok(d.iter().all(|c| c.is_zero()))
}

/// [v,k] + [w,k'] = [A^{k'} v + A^k w, k + k'].
pub fn dm_add(t: &DimensionTriple, x: &DmElement, y: &DmElement) -> Result<DmElement, KError> {
    check_element(t, x)?;
    check_element(t, y)?;
    let left = t.apply_pow(&x.v, y.k);
    let right = t.apply_pow(&y.v, x.k);
    let v = left.iter().zip(&right).map(|(a, b)| a + b).collect();
    Ok(DmElement { v, k: x.k + y.k })
}

/// Shift automorphism: [v,k] maps to [Av,k].
pub fn dm_shift(t: &DimensionTriple, x: &DmElement) -> Result<DmElement, KError> {
    check_element(t, x)?;
    Ok(DmElement { v: t.apply(&x.v), k: x.k })
}

/// Inverse of the shift: [v,k] maps to [v,k+1].
pub fn dm_unshift(t: &DimensionTriple, x: &DmElement) -> Result<DmElement, KError> {
    check_element(t, x)?;
    Ok(DmElement { v: x.v.clone(), k: x.k + 1 })
}

/// The class of (1,...,1) at stage 0.
pub fn order_unit(t: &DimensionTriple) -> DmElement {
    DmElement { v: vec![BigInt::one(); t.n()], k: 0 }
}

/// Outcome of a cone-membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositivityResult {
    /// A^t v is entrywise nonnegative at the witness exponent, and the
    /// element is nonzero.
    Positive(u64),
    Zero,
    /// Certified by the exact sign of the pairing against the left Perron
    /// eigenvector.
    NotPositive(Sign),
    /// Neither a witness within the bound nor a primitivity certificate.
    Unknown(u64),
}

/// Default exponent bound for positivity searches.
pub fn default_positivity_bound(n: usize) -> u64 {
    let wielandt = if n <= 1 { 1 } else { (n * n - 2 * n + 2) as u64 };
    wielandt.max(64)
}

/// Cone membership of [v,k]: the class is nonnegative iff A^t v lands in
/// the nonnegative orthant for some t. Searches t up to the bound, then
/// falls back to the Perron pairing certificate for primitive matrices.
pub fn dm_positive(
    t: &DimensionTriple,
    x: &DmElement,
    bound: u64,
) -> Result<PositivityResult, KError> {
    check_element(t, x)?;
    if dm_equal(t, x, &t.zero_element())? {
        return Ok(PositivityResult::Zero);
    }
    let mut w = x.v.clone();
    for step in 0..=bound {
        if w.iter().all(|c| !c.is_negative()) {
            return Ok(PositivityResult::Positive(step));
        }
        if step < bound {
            w = t.apply(&w);
        }
    }
    if is_primitive(&t.a)? {
        let rv = RatVector::from_ints(&x.v);
        if perron_sign(&t.a, &rv)? == Sign::Negative {
            return Ok(PositivityResult::NotPositive(Sign::Negative));
        }
    }
    Ok(PositivityResult::Unknown(bound))
}

/// Presents the quotient of the triple's module by the subgroup generated
/// by all shift differences, via a truncated telescope with n + 1 levels.
/// The canonical form equals the cokernel of A - I.
pub fn shift_relation_quotient(t: &DimensionTriple) -> FgAbGroup {
    let n = t.n();
    let levels = n + 1;
    let rows = n * levels;
    let link_cols = n * (levels - 1);
    let quot_cols = n * levels;
    let mut m = IntMatrix::zero(rows, link_cols + quot_cols);
    let gen = |i: usize, k: usize| k * n + i;
    let mut col = 0;
    // level-linking relations: [e_i, k] equals the stage-(k+1) expansion
    for k in 0..levels - 1 {
        for i in 0..n {
            m.set(gen(i, k), col, BigInt::one());
            for j in 0..n {
                let coeff = -t.a.get(j, i).clone();
                m.set(gen(j, k + 1), col, coeff);
            }
            col += 1;
        }
    }
    // shift-difference relations at every level
    for k in 0..levels {
        for i in 0..n {
            for j in 0..n {
                let mut coeff = t.a.get(j, i).clone();
                if i == j {
                    coeff -= 1;
                }
                m.set(gen(j, k), col, coeff);
            }
            col += 1;
        }
    }
    cokernel(&m).group().clone()
}

/// Checks a shift-equivalence witness of lag l exactly: A^l = RS,
/// B^l = SR, AR = RB, SA = BS, with R, S nonnegative.
pub fn verify_se_witness(
    a: &IntMatrix,
    b: &IntMatrix,
    r: &IntMatrix,
    s: &IntMatrix,
    l: u64,
) -> Result<bool, KError> {
    if !a.is_square() || !b.is_square() {
        return Err(KError::invalid("shift equivalence relates square matrices"));
    }
    if l == 0 {
        return Err(KError::invalid("lag must be positive"));
    }
    let (n, m) = (a.rows(), b.rows());
    if r.rows() != n || r.cols() != m || s.rows() != m || s.cols() != n {
        return Err(KError::invalid(format!(
            "witness dimensions must be {n}x{m} and {m}x{n}"
        )));
    }
    if !r.is_nonnegative() || !s.is_nonnegative() {
        return Ok(false);
    }
    Ok(mat_pow(a, l)? == r.mul(s)
        && mat_pow(b, l)? == s.mul(r)
        && a.mul(r) == r.mul(b)
        && s.mul(a) == b.mul(s))
}

/// Checks one elementary step exactly: A = RS and B = SR with R, S
/// nonnegative.
pub fn verify_ese_step(
    a: &IntMatrix,
    b: &IntMatrix,
    r: &IntMatrix,
    s: &IntMatrix,
) -> Result<bool, KError> {
    if !a.is_square() || !b.is_square() {
        return Err(KError::invalid("elementary steps relate square matrices"));
    }
    let (n, m) = (a.rows(), b.rows());
    if r.rows() != n || r.cols() != m || s.rows() != m || s.cols() != n {
        return Err(KError::invalid(format!(
            "step dimensions must be {n}x{m} and {m}x{n}"
        )));
    }
    if !r.is_nonnegative() || !s.is_nonnegative() {
        return Ok(false);
    }
    Ok(*a == r.mul(s) && *b == s.mul(r))
}

/// One elementary step of a strong-shift-equivalence chain; the matrix
/// after the step is S R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseStep {
    pub r: IntMatrix,
    pub s: IntMatrix,
}

/// Chain of elementary steps from one matrix to another.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SseChain {
    pub steps: Vec<SseStep>,
}

impl SseChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Checks a whole chain: each step is elementary and the final matrix is b.
pub fn verify_sse_chain(
    a: &IntMatrix,
    b: &IntMatrix,
    chain: &SseChain,
) -> Result<bool, KError> {
    let mut cur = a.clone();
    for step in &chain.steps {
        let next = step.s.mul(&step.r);
        if !verify_ese_step(&cur, &next, &step.r, &step.s)? {
            return Ok(false);
        }
        cur = next;
    }
    Ok(cur == *b)
}

/// All nonnegative solutions x of R x = target with entries <= max_entry,
/// in lexicographic order.
fn knapsack_column(
    r: &IntMatrix,
    target: &[BigInt],
    max_entry: u64,
) -> Vec<Vec<BigInt>> {
    let q = r.cols();
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); q];
    // increasing one entry only shrinks the remainder, so the break on the
    // first infeasible value is sound for nonnegative r
    fn rec(
        r: &IntMatrix,
        max_entry: u64,
        pos: usize,
        remaining: &mut Vec<BigInt>,
        x: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if pos == r.cols() {
            if remaining.iter().all(|c| c.is_zero()) {
                out.push(x.clone());
            }
            return;
        }
        for val in 0..=max_entry {
            let v = BigInt::from(val);
            let feasible = (0..r.rows()).all(|i| &v * r.get(i, pos) <= remaining[i]);
            if !feasible {
                break;
            }
            let backup: Vec<BigInt> = remaining.clone();
            for i in 0..r.rows() {
                remaining[i] -= &v * r.get(i, pos);
            }
            x[pos] = v;
            rec(r, max_entry, pos + 1, remaining, x, out);
            *remaining = backup;
        }
        x[pos] = BigInt::zero();
    }
    let mut remaining = target.to_vec();
    if remaining.iter().any(|c| c.is_negative()) {
        return out;
    }
    rec(r, max_entry, 0, &mut remaining, &mut x, &mut out);
    out
}

/// Every factorization M = R S with the given inner-dimension and entry
/// bounds, ordered by inner dimension, then R in row-major lexicographic
/// order, then S columns left to right.
fn factorizations(
    m: &IntMatrix,
    max_inner_dim: usize,
    max_entry: u64,
) -> Vec<(IntMatrix, IntMatrix)> {
    let n = m.rows();
    let mut out = Vec::new();
    for q in 1..=max_inner_dim {
        // enumerate R row-major lexicographically
        let cells = n * q;
        let mut digits = vec![0u64; cells];
        loop {
            let r = IntMatrix::new(
                n,
                q,
                digits.iter().map(|&d| BigInt::from(d)).collect(),
            )
            .expect("positive dimensions");
            // solve R * s_j = column j of m for every column independently
            let mut per_col: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(n);
            let mut ok = true;
            for j in 0..n {
                let target: Vec<BigInt> = (0..n).map(|i| m.get(i, j).clone()).collect();
                let sols = knapsack_column(&r, &target, max_entry);
                if sols.is_empty() {
                    ok = false;
                    break;
                }
                per_col.push(sols);
            }
            if ok {
                // product order over column choices, rightmost varying fastest
                let mut idx = vec![0usize; n];
                loop {
                    let mut s = IntMatrix::zero(q, n);
                    for j in 0..n {
                        for i in 0..q {
                            s.set(i, j, per_col[j][idx[j]][i].clone());
                        }
                    }
                    out.push((r.clone(), s));
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < per_col[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                    if idx.iter().all(|&i| i == 0) {
                        break;
                    }
                }
            }
            // advance R digits
            let mut pos = cells;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] <= max_entry {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    out
}

/// Bounded breadth-first search for a strong-shift-equivalence chain from
/// a to b. Factors every frontier matrix as R S with inner dimension and
/// entries bounded, stepping to S R. Deterministic; the first chain in
/// enumeration order is returned. None is not a refutation.
pub fn sse_search(
    a: &IntMatrix,
    b: &IntMatrix,
    max_inner_dim: usize,
    max_entry: u64,
    max_depth: usize,
) -> Result<Option<SseChain>, KError> {
    for m in [a, b] {
        if !m.is_square() {
            return Err(KError::invalid("search needs square matrices"));
        }
        if !m.is_nonnegative() {
            return Err(KError::invalid("search needs nonnegative matrices"));
        }
    }
    if a == b {
        return Ok(Some(SseChain::default()));
    }
    let mut visited: BTreeSet<IntMatrix> = BTreeSet::new();
    visited.insert(a.clone());
    let mut frontier: Vec<(IntMatrix, SseChain)> = vec![(a.clone(), SseChain::default())];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for (m, chain) in &frontier {
            for (r, s) in factorizations(m, max_inner_dim, max_entry) {
                let succ = s.mul(&r);
                let mut extended = chain.clone();
                extended.steps.push(SseStep { r, s });
                if succ == *b {
                    debug_assert!(verify_sse_chain(a, b, &extended)?);
                    return Ok(Some(extended));
                }
                if visited.insert(succ.clone()) {
                    next.push((succ, extended));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(None)
}

/// Invariant mismatch refuting shift equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// Canonical forms of coker(A - I) and coker(B - I) differ.
    CokernelMismatch { left: FgAbGroup, right: FgAbGroup },
    /// Characteristic polynomials differ after removing all factors of x.
    SpectrumMismatch { left: Vec<BigInt>, right: Vec<BigInt> },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::CokernelMismatch { left, right } => {
                write!(f, "unit-quotient groups differ: {} vs {}", left, right)
            }
            Refutation::SpectrumMismatch { left, right } => {
                let fmt_poly = |c: &[BigInt]| {
                    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    parts.join(",")
                };
                write!(
                    f,
                    "nonzero spectra differ: [{}] vs [{}]",
                    fmt_poly(left),
                    fmt_poly(right)
                )
            }
        }
    }
}

fn stripped_char_poly(m: &IntMatrix) -> Result<Vec<BigInt>, KError> {
    let coeffs = char_poly(m)?;
    let low = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("characteristic polynomial is monic");
    Ok(coeffs[low..].to_vec())
}

/// Tries to refute shift equivalence of two nonnegative square matrices by
/// comparing the cokernel of A - I and the nonzero spectrum. None is not a
/// proof of equivalence.
pub fn se_refute(a: &IntMatrix, b: &IntMatrix) -> Result<Option<Refutation>, KError> {
    for m in [a, b] {
        if !m.is_square() {
            return Err(KError::invalid("refutation needs square matrices"));
        }
        if !m.is_nonnegative() {
            return Err(KError::invalid("refutation needs nonnegative matrices"));
        }
    }
    let ca = cokernel(&a.sub(&IntMatrix::identity(a.rows())));
    let cb = cokernel(&b.sub(&IntMatrix::identity(b.rows())));
    if ca.group() != cb.group() {
        return Ok(Some(Refutation::CokernelMismatch {
            left: ca.group().clone(),
            right: cb.group().clone(),
        }));
    }
    let pa = stripped_char_poly(a)?;
    let pb = stripped_char_poly(b)?;
    if pa != pb {
        return Ok(Some(Refutation::SpectrumMismatch { left: pa, right: pb }));
    }
    Ok(None)
}
