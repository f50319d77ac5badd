//! Shifted matrix algebras over graded division rings, reduced to coset
//! combinatorics: entry degrees, homogeneous component dimensions, zero
//! component block structure, graded-isomorphism decision, and the
//! strongly-graded / crossed-product predicates with their brute-force
//! component-multiplication oracles.

use std::fmt;

use num_bigint::BigInt;

use crate::abelian::{
    coset_multiset, multiset_translation_match, quotient_by, CosetMultiset, FgAbGroup,
    GroupElement, QuotientData, SubgroupPresentation,
};
use crate::error::KError;

/// Descriptor of a graded division ring: grade group, support subgroup, and
/// a display label. The support of a graded division ring is a subgroup and
/// coincides with the set of degrees of invertible homogeneous elements.
#[derive(Debug, Clone)]
pub struct GradedDivisionRingDesc {
    grade_group: FgAbGroup,
    support: SubgroupPresentation,
    label: String,
}

impl GradedDivisionRingDesc {
    pub fn new(
        grade_group: FgAbGroup,
        support: SubgroupPresentation,
        label: String,
    ) -> Result<Self, KError> {
        if support.ambient() != &grade_group {
            return Err(KError::invalid("support subgroup has a different ambient group"));
        }
        Ok(GradedDivisionRingDesc { grade_group, support, label })
    }

    /// The field K placed in degree 0 of a Z-grading.
    pub fn field_k() -> Self {
        let z = FgAbGroup::integers();
        GradedDivisionRingDesc {
            support: SubgroupPresentation::trivial(z.clone()),
            grade_group: z,
            label: "K".to_string(),
        }
    }

    /// Laurent ring K[x^m, x^-m], Z-graded with support mZ.
    pub fn laurent(m: u64) -> Result<Self, KError> {
        if m == 0 {
            return Err(KError::invalid("Laurent period must be positive"));
        }
        let z = FgAbGroup::integers();
        let gen = z.element(vec![BigInt::from(m)])?;
        let support = SubgroupPresentation::new(z.clone(), vec![gen])?;
        let label = if m == 1 {
            "K[x,x^-1]".to_string()
        } else {
            format!("K[x^{m},x^-{m}]")
        };
        Ok(GradedDivisionRingDesc { grade_group: z, support, label })
    }

    pub fn grade_group(&self) -> &FgAbGroup {
        &self.grade_group
    }

    pub fn support(&self) -> &SubgroupPresentation {
        &self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same grade group and the same support subgroup (compared as spans).
    pub fn same_base(&self, other: &GradedDivisionRingDesc) -> Result<bool, KError> {
        if self.grade_group != other.grade_group {
            return Ok(false);
        }
        self.support.span_eq(&other.support)
    }

    /// Parses `K` or `K[x^m,x^-m]` (also `K[x,x^-1]`).
    pub fn parse(text: &str) -> Result<Self, KError> {
        let t = text.trim();
        if t == "K" {
            return Ok(GradedDivisionRingDesc::field_k());
        }
        let inner = t
            .strip_prefix("K[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| {
                KError::invalid(format!("bad base {:?} (expected K or K[x^m,x^-m])", t))
            })?;
        let (pos, neg) = inner
            .split_once(',')
            .ok_or_else(|| KError::invalid(format!("bad base {:?}", t)))?;
        let parse_exp = |s: &str, sign: i64| -> Result<u64, KError> {
            let s = s.trim();
            let body = s
                .strip_prefix('x')
                .ok_or_else(|| KError::invalid(format!("bad base {:?}", t)))?;
            if body.is_empty() {
                if sign > 0 {
                    return Ok(1);
                }
                return Err(KError::invalid(format!("bad base {:?}", t)));
            }
            let e: i64 = body
                .strip_prefix('^')
                .ok_or_else(|| KError::invalid(format!("bad base {:?}", t)))?
                .parse()
                .map_err(|_| KError::invalid(format!("bad base {:?}", t)))?;
            if e.signum() != sign || e == 0 {
                return Err(KError::invalid(format!("bad base {:?}", t)));
            }
            Ok(e.unsigned_abs())
        };
        let m = parse_exp(pos, 1)?;
        let m2 = parse_exp(neg, -1)?;
        if m != m2 {
            return Err(KError::invalid(format!(
                "mismatched exponents in base {:?}",
                t
            )));
        }
        GradedDivisionRingDesc::laurent(m)
    }
}

impl fmt::Display for GradedDivisionRingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// M_n(A)(d_1,...,d_n): the n x n matrix algebra over the base, with row i
/// and column i suspended by the shift d_i.
#[derive(Debug, Clone)]
pub struct ShiftedMatrixAlgebra {
    base: GradedDivisionRingDesc,
    shifts: Vec<GroupElement>,
}

impl ShiftedMatrixAlgebra {
    pub fn new(base: GradedDivisionRingDesc, shifts: Vec<GroupElement>) -> Result<Self, KError> {
        if shifts.is_empty() {
            return Err(KError::invalid("matrix size must be positive"));
        }
        let mut checked = Vec::with_capacity(shifts.len());
        for s in shifts {
            checked.push(base.grade_group.element(s.coords().to_vec())?);
        }
        Ok(ShiftedMatrixAlgebra { base, shifts: checked })
    }

    pub fn base(&self) -> &GradedDivisionRingDesc {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[GroupElement] {
        &self.shifts
    }

    /// Quotient of the grade group by the support.
    pub fn quotient(&self) -> QuotientData {
        quotient_by(&self.base.support)
    }

    pub fn shift_cosets(&self) -> Result<CosetMultiset, KError> {
        coset_multiset(&self.shifts, &self.quotient())
    }

    /// Shifts reordered: entry i of the result is shift perm[i] (0-based
    /// bijection). Produces a graded-isomorphic algebra.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, KError> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(KError::invalid("not a permutation"));
            }
            seen[p] = true;
        }
        if perm.len() != n {
            return Err(KError::invalid("not a permutation"));
        }
        let shifts = perm.iter().map(|&p| self.shifts[p].clone()).collect();
        Ok(ShiftedMatrixAlgebra { base: self.base.clone(), shifts })
    }

    /// Every shift translated by alpha. Produces a graded-isomorphic
    /// algebra.
    pub fn translated(&self, alpha: &GroupElement) -> Result<Self, KError> {
        let g = &self.base.grade_group;
        let alpha = g.element(alpha.coords().to_vec())?;
        let shifts = self.shifts.iter().map(|s| g.add(s, &alpha)).collect();
        Ok(ShiftedMatrixAlgebra { base: self.base.clone(), shifts })
    }

    /// Shift i translated by tau_i; every tau must lie in the support.
    /// Produces a graded-isomorphic algebra.
    pub fn with_support_shifts(&self, taus: &[GroupElement]) -> Result<Self, KError> {
        if taus.len() != self.n() {
            return Err(KError::invalid("need one support element per shift"));
        }
        let g = &self.base.grade_group;
        let mut shifts = Vec::with_capacity(self.n());
        for (s, t) in self.shifts.iter().zip(taus) {
            if !self.base.support.contains(t)? {
                return Err(KError::invalid(format!(
                    "translation {} is outside the support",
                    t
                )));
            }
            shifts.push(g.add(s, t));
        }
        Ok(ShiftedMatrixAlgebra { base: self.base.clone(), shifts })
    }

    /// Parses `M<n>(<base>)(d1,...,dn)` with an integer grade group.
    pub fn parse(text: &str) -> Result<Self, KError> {
        let t = text.trim();
        let rest = t
            .strip_prefix('M')
            .ok_or_else(|| KError::invalid(format!("bad algebra literal {:?}", t)))?;
        let open = rest
            .find('(')
            .ok_or_else(|| KError::invalid(format!("bad algebra literal {:?}", t)))?;
        let n: usize = rest[..open]
            .trim()
            .parse()
            .map_err(|_| KError::invalid(format!("bad matrix size in {:?}", t)))?;
        let after = &rest[open + 1..];
        let close = after
            .find(')')
            .ok_or_else(|| KError::invalid(format!("bad algebra literal {:?}", t)))?;
        let base = GradedDivisionRingDesc::parse(&after[..close])?;
        let shifts_part = after[close + 1..].trim();
        let inner = shifts_part
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| KError::invalid(format!("bad shift list in {:?}", t)))?;
        let shifts: Result<Vec<GroupElement>, KError> = inner
            .split(',')
            .map(|s| base.grade_group.parse_element(s))
            .collect();
        let shifts = shifts?;
        if shifts.len() != n {
            return Err(KError::invalid(format!(
                "algebra {:?} declares size {} but lists {} shifts",
                t,
                n,
                shifts.len()
            )));
        }
        ShiftedMatrixAlgebra::new(base, shifts)
    }
}

impl fmt::Display for ShiftedMatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shifts: Vec<String> = self
            .shifts
            .iter()
            .map(|s| {
                if s.coords().len() == 1 {
                    s.coords()[0].to_string()
                } else {
                    s.to_string()
                }
            })
            .collect();
        write!(f, "M{}({})({})", self.n(), self.base, shifts.join(","))
    }
}

/// Degree of a matrix with a single entry of degree deg_x in slot (i, j),
/// both 1-based: deg_x + d_i - d_j.
pub fn entry_degree(
    alg: &ShiftedMatrixAlgebra,
    i: usize,
    j: usize,
    deg_x: &GroupElement,
) -> Result<GroupElement, KError> {
    let n = alg.n();
    if i == 0 || j == 0 || i > n || j > n {
        return Err(KError::invalid(format!(
            "indices ({}, {}) out of range for size {}",
            i, j, n
        )));
    }
    let g = alg.base.grade_group();
    let d = g.sub(&alg.shifts[i - 1], &alg.shifts[j - 1]);
    Ok(g.add(deg_x, &d))
}

/// Dimension over the degree-0 part of the homogeneous component of degree
/// lambda: the number of slots (i, j) with lambda + d_j - d_i in the
/// support.
pub fn component_dim(alg: &ShiftedMatrixAlgebra, lambda: &GroupElement) -> Result<usize, KError> {
    let g = alg.base.grade_group();
    let lambda = g.element(lambda.coords().to_vec())?;
    let n = alg.n();
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            let d = g.add(&lambda, &g.sub(&alg.shifts[j], &alg.shifts[i]));
            if alg.base.support.contains(&d)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Block sizes of the degree-0 component: the multiplicities of the shift
/// cosets, in coset order. The degree-0 part is a product of matrix rings
/// of these sizes over the base's degree-0 part; the sizes sum to n.
pub fn zero_component_blocks(alg: &ShiftedMatrixAlgebra) -> Result<Vec<usize>, KError> {
    Ok(alg.shift_cosets()?.multiplicities().values().copied().collect())
}

/// Witness for a graded isomorphism between two shifted matrix algebras
/// over the same base: shifts_b[i] = shifts_a[perm[i]] + taus[i] + sigma
/// with every tau in the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub permutation: Vec<usize>,
    pub sigma: GroupElement,
    pub taus: Vec<GroupElement>,
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi: Vec<String> = self.permutation.iter().map(|p| (p + 1).to_string()).collect();
        let taus: Vec<String> = self.taus.iter().map(|t| t.to_string()).collect();
        write!(f, "pi=[{}] sigma={} taus=[{}]", pi.join(","), self.sigma, taus.join(","))
    }
}

/// Checks an isomorphism witness exactly.
pub fn verify_iso_witness(
    a: &ShiftedMatrixAlgebra,
    b: &ShiftedMatrixAlgebra,
    w: &IsoWitness,
) -> Result<bool, KError> {
    if !a.base.same_base(&b.base)? {
        return Err(KError::invalid("algebras have different base descriptors"));
    }
    let n = a.n();
    if b.n() != n || w.permutation.len() != n || w.taus.len() != n {
        return Ok(false);
    }
    let mut seen = vec![false; n];
    for &p in &w.permutation {
        if p >= n || seen[p] {
            return Ok(false);
        }
        seen[p] = true;
    }
    let g = a.base.grade_group();
    for i in 0..n {
        if !a.base.support.contains(&w.taus[i])? {
            return Ok(false);
        }
        let rhs = g.add(&g.add(&a.shifts[w.permutation[i]], &w.taus[i]), &w.sigma);
        if b.shifts[i] != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides graded isomorphism over a common base: the two shift coset
/// multisets must agree up to a uniform translation. On success the witness
/// (permutation, sigma, taus) is reconstructed and checked.
pub fn graded_iso(
    a: &ShiftedMatrixAlgebra,
    b: &ShiftedMatrixAlgebra,
) -> Result<Option<IsoWitness>, KError> {
    if !a.base.same_base(&b.base)? {
        return Err(KError::invalid("algebras have different base descriptors"));
    }
    if a.n() != b.n() {
        return Ok(None);
    }
    let q = a.quotient();
    let ma = coset_multiset(&a.shifts, &q)?;
    let mb = coset_multiset(&b.shifts, &q)?;
    // sigma_q translates a's cosets onto b's, so project(b_i) =
    // project(a_j) + sigma_q pairs the shifts
    let Some(sigma_q) = multiset_translation_match(&ma, &mb)? else {
        return Ok(None);
    };
    let g = a.base.grade_group();
    let sigma = q.section(&sigma_q)?;
    let qa: Result<Vec<GroupElement>, KError> =
        a.shifts.iter().map(|s| q.project(s)).collect();
    let qb: Result<Vec<GroupElement>, KError> =
        b.shifts.iter().map(|s| q.project(s)).collect();
    let (qa, qb) = (qa?, qb?);
    let n = a.n();
    let mut used = vec![false; n];
    let mut permutation = Vec::with_capacity(n);
    let mut taus = Vec::with_capacity(n);
    for i in 0..n {
        let want = q.quotient().sub(&qb[i], &sigma_q);
        let j = (0..n)
            .find(|&j| !used[j] && qa[j] == want)
            .expect("multiset match guarantees a pairing");
        used[j] = true;
        permutation.push(j);
        let tau = g.sub(&g.sub(&b.shifts[i], &a.shifts[j]), &sigma);
        debug_assert!(a.base.support.contains(&tau).unwrap_or(false));
        taus.push(tau);
    }
    let w = IsoWitness { permutation, sigma, taus };
    debug_assert!(verify_iso_witness(a, b, &w)?);
    Ok(Some(w))
}

/// True when the algebra has an invertible homogeneous element of degree
/// gamma: translating the shift coset multiset by gamma's coset fixes it.
pub fn has_invertible_of_degree(
    alg: &ShiftedMatrixAlgebra,
    gamma: &GroupElement,
) -> Result<bool, KError> {
    let q = alg.quotient();
    let m = coset_multiset(&alg.shifts, &q)?;
    let shift = q.project(gamma)?;
    Ok(m.translate(&shift) == m)
}

/// Multiplicity of every element of the (finite) support quotient, in
/// element order; None when the quotient is infinite.
fn full_multiplicity_profile(alg: &ShiftedMatrixAlgebra) -> Result<Option<Vec<usize>>, KError> {
    let q = alg.quotient();
    if !q.quotient().is_finite() {
        return Ok(None);
    }
    let m = coset_multiset(&alg.shifts, &q)?;
    let profile = q
        .quotient()
        .elements()?
        .iter()
        .map(|e| m.multiplicities().get(e).copied().unwrap_or(0))
        .collect();
    Ok(Some(profile))
}

/// Strongly graded: every homogeneous component contains a unit sum, which
/// for a shifted matrix algebra happens exactly when every coset of the
/// support carries at least one shift. An infinite support quotient can
/// never be covered by finitely many shifts, so the answer is false there.
pub fn is_strongly_graded(alg: &ShiftedMatrixAlgebra) -> Result<bool, KError> {
    match full_multiplicity_profile(alg)? {
        None => Ok(false),
        Some(profile) => Ok(profile.iter().all(|&c| c > 0)),
    }
}

/// Crossed product: an invertible homogeneous element exists in every
/// degree, which happens exactly when all cosets carry the same number of
/// shifts. False over an infinite support quotient.
pub fn is_crossed_product(alg: &ShiftedMatrixAlgebra) -> Result<bool, KError> {
    match full_multiplicity_profile(alg)? {
        None => Ok(false),
        Some(profile) => Ok(profile.windows(2).all(|w| w[0] == w[1])),
    }
}

/// Slot incidence matrix of the degree-gamma component: entry (i, k) is
/// true when slot (i, k) admits a nonzero entry of total degree gamma.
fn component_slots(
    alg: &ShiftedMatrixAlgebra,
    gamma: &GroupElement,
) -> Result<Vec<Vec<bool>>, KError> {
    let g = alg.base.grade_group();
    let n = alg.n();
    let mut slots = vec![vec![false; n]; n];
    for (i, row) in slots.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            let d = g.add(gamma, &g.sub(&alg.shifts[k], &alg.shifts[i]));
            *slot = alg.base.support.contains(&d)?;
        }
    }
    Ok(slots)
}

fn transversal(alg: &ShiftedMatrixAlgebra) -> Result<Vec<GroupElement>, KError> {
    let q = alg.quotient();
    if !q.quotient().is_finite() {
        return Err(KError::Hypothesis(
            "oracle needs a finite support quotient".to_string(),
        ));
    }
    q.quotient().elements()?.iter().map(|e| q.section(e)).collect()
}

/// Brute-force check that 1 lies in R_gamma R_{-gamma} for every coset
/// representative gamma, by multiplying slot incidence matrices: each
/// diagonal position must be reachable as a product of two admissible
/// slots. Validation oracle for is_strongly_graded on small inputs.
pub fn strongly_graded_oracle(alg: &ShiftedMatrixAlgebra) -> Result<bool, KError> {
    let g = alg.base.grade_group();
    let n = alg.n();
    for gamma in transversal(alg)? {
        let pos = component_slots(alg, &gamma)?;
        let neg = component_slots(alg, &g.neg(&gamma))?;
        for i in 0..n {
            if !(0..n).any(|k| pos[i][k] && neg[k][i]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn augment(
    r: usize,
    slots: &[Vec<bool>],
    seen: &mut [bool],
    matched: &mut [Option<usize>],
) -> bool {
    for c in 0..slots.len() {
        if slots[r][c] && !seen[c] {
            seen[c] = true;
            if matched[c].is_none_or(|m| augment(m, slots, seen, matched)) {
                matched[c] = Some(r);
                return true;
            }
        }
    }
    false
}

fn has_perfect_matching(slots: &[Vec<bool>]) -> bool {
    let n = slots.len();
    let mut matched: Vec<Option<usize>> = vec![None; n];
    (0..n).all(|r| {
        let mut seen = vec![false; n];
        augment(r, slots, &mut seen, &mut matched)
    })
}

/// Brute-force check that every degree carries an invertible homogeneous
/// matrix: the degree-gamma slot matrix must admit a perfect matching for
/// every coset representative gamma. Validation oracle for
/// is_crossed_product on small inputs.
pub fn crossed_product_oracle(alg: &ShiftedMatrixAlgebra) -> Result<bool, KError> {
    for gamma in transversal(alg)? {
        if !has_perfect_matching(&component_slots(alg, &gamma)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
