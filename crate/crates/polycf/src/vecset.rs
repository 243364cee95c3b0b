//! Vectors over N₀ and Q, linear and semilinear sets.
//!
//! A linear set `L(c; P)` is `{c + Σ αᵢ pᵢ : αᵢ ∈ N₀}`; a semilinear set is a
//! finite union of linear sets of a common dimension. All arithmetic is
//! arbitrary precision.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VecSetError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation acts on {perm} points but the set has dimension {set}")]
    ArityMismatch { perm: usize, set: usize },
    #[error("vectors must have length at least 1")]
    EmptyVector,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("box [0,{bound}]^{dim} is too large to enumerate")]
    BoxTooLarge { bound: u64, dim: usize },
}

fn check_dim(expected: usize, found: usize) -> Result<(), VecSetError> {
    if expected == found {
        Ok(())
    } else {
        Err(VecSetError::DimensionMismatch { expected, found })
    }
}

/// A vector in N₀^r.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec0 {
    entries: Vec<BigUint>,
}

impl Vec0 {
    pub fn new(entries: Vec<BigUint>) -> Result<Self, VecSetError> {
        if entries.is_empty() {
            return Err(VecSetError::EmptyVector);
        }
        Ok(Vec0 { entries })
    }

    /// Builds a vector from machine integers. Panics on an empty slice.
    pub fn from_u64s(values: &[u64]) -> Self {
        assert!(!values.is_empty(), "vectors must have length at least 1");
        Vec0 { entries: values.iter().map(|&x| BigUint::from(x)).collect() }
    }

    pub fn zeros(r: usize) -> Self {
        Vec0 { entries: vec![BigUint::zero(); r.max(1)] }
    }

    /// The unit vector with a 1 at 0-based position `i`.
    pub fn unit(r: usize, i: usize) -> Self {
        let mut v = Self::zeros(r);
        v.entries[i] = BigUint::from(1u32);
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &BigUint {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Sum of all entries.
    pub fn sigma(&self) -> BigUint {
        self.entries.iter().sum()
    }

    pub fn max_entry(&self) -> BigUint {
        self.entries.iter().max().cloned().unwrap_or_default()
    }

    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Concatenation `(a; b)`.
    pub fn concat(&self, other: &Vec0) -> Vec0 {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Vec0 { entries }
    }

    /// Splits into the first `r` entries and the rest.
    pub fn split_at(&self, r: usize) -> (Vec0, Vec0) {
        let (a, b) = self.entries.split_at(r);
        (Vec0 { entries: a.to_vec() }, Vec0 { entries: b.to_vec() })
    }

    pub fn add(&self, other: &Vec0) -> Vec0 {
        Vec0 { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: &BigUint) -> Vec0 {
        Vec0 { entries: self.entries.iter().map(|a| a * k).collect() }
    }

    /// `self - other` when `other ≤ self` componentwise.
    pub fn checked_sub(&self, other: &Vec0) -> Option<Vec0> {
        if !other.le(self) {
            return None;
        }
        Some(Vec0 { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &Vec0) -> bool {
        self.entries.len() == other.entries.len() && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn to_qvec(&self) -> QVec {
        QVec::new(self.entries.iter().map(|x| BigRational::from_integer(x.clone().into())).collect())
    }

    /// Entries as `u64` when they all fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Applies `τ(v) = (v(τ(1)), …, v(τ(r)))`.
    pub fn permute(&self, tau: &Permutation) -> Result<Vec0, VecSetError> {
        if tau.len() != self.len() {
            return Err(VecSetError::ArityMismatch { perm: tau.len(), set: self.len() });
        }
        Ok(Vec0 { entries: tau.images().iter().map(|&j| self.entries[j].clone()).collect() })
    }
}

impl fmt::Display for Vec0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A vector in Q^r.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QVec {
    entries: Vec<BigRational>,
}

impl QVec {
    pub fn new(entries: Vec<BigRational>) -> Self {
        QVec { entries }
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dot(&self, other: &QVec) -> BigRational {
        linalg::dot(&self.entries, &other.entries)
    }

    /// 0-based indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A bijection of {1,…,r}, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds from 1-based images `τ(1), …, τ(r)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, VecSetError> {
        let r = images.len();
        let mut seen = vec![false; r];
        let mut zero_based = Vec::with_capacity(r);
        for &x in images {
            if x == 0 || x > r || seen[x - 1] {
                return Err(VecSetError::InvalidPermutation(format!("{images:?} is not a bijection of 1..={r}")));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    pub fn identity(r: usize) -> Self {
        Permutation { images: (0..r).collect() }
    }

    /// The transposition swapping 1-based points `i` and `j`.
    pub fn transposition(r: usize, i: usize, j: usize) -> Result<Self, VecSetError> {
        if i == 0 || j == 0 || i > r || j > r {
            return Err(VecSetError::InvalidPermutation(format!("({i},{j}) outside 1..={r}")));
        }
        let mut images: Vec<usize> = (0..r).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

/// Point plus basis description of the rational affine hull `L^Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub point: QVec,
    pub basis: Vec<QVec>,
}

/// `L(c; P)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSet {
    constant: Vec0,
    periods: Vec<Vec0>,
}

impl LinearSet {
    pub fn new(constant: Vec0, periods: Vec<Vec0>) -> Result<Self, VecSetError> {
        for p in &periods {
            check_dim(constant.len(), p.len())?;
        }
        Ok(LinearSet { constant, periods })
    }

    /// Convenience constructor from machine integers. Panics on inconsistent
    /// dimensions, so it is meant for literals.
    pub fn from_u64s(constant: &[u64], periods: &[&[u64]]) -> Self {
        Self::new(Vec0::from_u64s(constant), periods.iter().map(|p| Vec0::from_u64s(p)).collect())
            .expect("consistent dimensions")
    }

    pub fn constant(&self) -> &Vec0 {
        &self.constant
    }

    pub fn periods(&self) -> &[Vec0] {
        &self.periods
    }

    pub fn dim(&self) -> usize {
        self.constant.len()
    }

    /// Sorted periods with zero vectors and duplicates removed. The
    /// underlying set is unchanged.
    pub fn normalized(&self) -> LinearSet {
        let mut periods: Vec<Vec0> = self.periods.iter().filter(|p| !p.is_zero()).cloned().collect();
        periods.sort();
        periods.dedup();
        LinearSet { constant: self.constant.clone(), periods }
    }

    fn period_rows(&self) -> Vec<linalg::QRow> {
        self.periods.iter().map(|p| p.to_qvec().entries).collect()
    }

    /// Rank over Q of the periods.
    pub fn dimension(&self) -> usize {
        linalg::rank(&self.period_rows(), self.dim())
    }

    /// `L^Q`: the constant together with a basis of span(P) chosen among the
    /// periods themselves.
    pub fn rational_hull(&self) -> AffineHull {
        let rows = self.period_rows();
        let basis =
            linalg::independent_subset(&rows, self.dim()).into_iter().map(|i| self.periods[i].to_qvec()).collect();
        AffineHull { point: self.constant.to_qvec(), basis }
    }

    /// `L^0 = L(0; P)`.
    pub fn zero_shadow(&self) -> LinearSet {
        LinearSet { constant: Vec0::zeros(self.dim()), periods: self.periods.clone() }
    }

    pub fn permute(&self, tau: &Permutation) -> Result<LinearSet, VecSetError> {
        Ok(LinearSet {
            constant: self.constant.permute(tau)?,
            periods: self.periods.iter().map(|p| p.permute(tau)).collect::<Result<_, _>>()?,
        })
    }

    pub fn member(&self, v: &Vec0) -> Result<bool, VecSetError> {
        Ok(self.certificate(v)?.is_some())
    }

    /// Decides membership and, for members, returns coefficients α (one per
    /// period, in the original period order) with `c + Σ αᵢpᵢ = v`.
    pub fn certificate(&self, v: &Vec0) -> Result<Option<Vec<BigUint>>, VecSetError> {
        check_dim(self.dim(), v.len())?;
        let Some(residual) = v.checked_sub(&self.constant) else {
            return Ok(None);
        };
        let active: Vec<usize> = (0..self.periods.len()).filter(|&i| !self.periods[i].is_zero()).collect();
        let mut failed = HashSet::new();
        let mut coeffs = vec![BigUint::zero(); active.len()];
        if self.search(&active, 0, residual, &mut coeffs, &mut failed) {
            let mut alpha = vec![BigUint::zero(); self.periods.len()];
            for (slot, &i) in active.iter().enumerate() {
                alpha[i] = coeffs[slot].clone();
            }
            Ok(Some(alpha))
        } else {
            Ok(None)
        }
    }

    /// Depth-first search over period coefficients, memoizing residuals that
    /// are known to be unreachable from a given period index onward.
    fn search(
        &self,
        active: &[usize],
        idx: usize,
        residual: Vec0,
        coeffs: &mut [BigUint],
        failed: &mut HashSet<(usize, Vec0)>,
    ) -> bool {
        if residual.is_zero() {
            for c in coeffs[idx..].iter_mut() {
                *c = BigUint::zero();
            }
            return true;
        }
        if idx == active.len() {
            return false;
        }
        let key = (idx, residual);
        if failed.contains(&key) {
            return false;
        }
        let residual = key.1.clone();
        let p = &self.periods[active[idx]];
        let max_alpha = p
            .entries()
            .iter()
            .zip(residual.entries())
            .filter(|(pi, _)| !pi.is_zero())
            .map(|(pi, ri)| ri / pi)
            .min()
            .unwrap_or_default();
        let mut alpha = max_alpha;
        loop {
            let used = p.scale(&alpha);
            let rest = residual.checked_sub(&used).expect("alpha within bound");
            if self.search(active, idx + 1, rest, coeffs, failed) {
                coeffs[idx] = alpha;
                return true;
            }
            if alpha.is_zero() {
                break;
            }
            alpha -= 1u32;
        }
        failed.insert(key);
        false
    }
}

impl fmt::Display for LinearSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lin c= {} |", self.constant)?;
        let parts: Vec<String> = self.periods.iter().map(|p| format!(" p= {p}")).collect();
        write!(f, "{}", parts.join(" ;"))
    }
}

/// Component index and coefficients proving membership in a semilinear set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub component: usize,
    pub coefficients: Vec<BigUint>,
}

impl MembershipCertificate {
    /// Re-evaluates `c + Σ αᵢpᵢ` for the named component.
    pub fn replay(&self, set: &SemilinearSet) -> Option<Vec0> {
        let comp = set.components().get(self.component)?;
        if comp.periods().len() != self.coefficients.len() {
            return None;
        }
        Some(
            comp.periods()
                .iter()
                .zip(&self.coefficients)
                .fold(comp.constant().clone(), |acc, (p, a)| acc.add(&p.scale(a))),
        )
    }
}

/// Finite union of linear sets of a fixed dimension. No components means the
/// empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    dim: usize,
    components: Vec<LinearSet>,
}

impl SemilinearSet {
    pub fn new(dim: usize, components: Vec<LinearSet>) -> Result<Self, VecSetError> {
        for c in &components {
            check_dim(dim, c.dim())?;
        }
        Ok(SemilinearSet { dim, components })
    }

    pub fn empty(dim: usize) -> Self {
        SemilinearSet { dim, components: Vec::new() }
    }

    pub fn single(l: LinearSet) -> Self {
        SemilinearSet { dim: l.dim(), components: vec![l] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LinearSet] {
        &self.components
    }

    pub fn is_empty_presentation(&self) -> bool {
        self.components.is_empty()
    }

    pub fn member(&self, v: &Vec0) -> Result<bool, VecSetError> {
        Ok(self.certificate(v)?.is_some())
    }

    pub fn certificate(&self, v: &Vec0) -> Result<Option<MembershipCertificate>, VecSetError> {
        check_dim(self.dim, v.len())?;
        for (i, comp) in self.components.iter().enumerate() {
            if let Some(coefficients) = comp.certificate(v)? {
                return Ok(Some(MembershipCertificate { component: i, coefficients }));
            }
        }
        Ok(None)
    }

    /// Concatenates component lists, removing exact duplicates while keeping
    /// first occurrences in order.
    pub fn union(&self, other: &SemilinearSet) -> Result<SemilinearSet, VecSetError> {
        check_dim(self.dim, other.dim)?;
        let mut components: Vec<LinearSet> = Vec::new();
        for c in self.components.iter().chain(&other.components) {
            let n = c.normalized();
            if !components.iter().any(|x| x.normalized() == n) {
                components.push(c.clone());
            }
        }
        Ok(SemilinearSet { dim: self.dim, components })
    }

    pub fn permute(&self, tau: &Permutation) -> Result<SemilinearSet, VecSetError> {
        if tau.len() != self.dim {
            return Err(VecSetError::ArityMismatch { perm: tau.len(), set: self.dim });
        }
        Ok(SemilinearSet {
            dim: self.dim,
            components: self.components.iter().map(|c| c.permute(tau)).collect::<Result<_, _>>()?,
        })
    }

    /// Every member of the set inside `[0, bound]^dim`.
    pub fn box_members(&self, bound: u64) -> Result<BoxSet, VecSetError> {
        let mut out = BoxSet::new(self.dim, bound)?;
        for comp in &self.components {
            out.fill_linear(comp);
        }
        Ok(out)
    }
}

impl fmt::Display for SemilinearSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "slset dim={}", self.dim)?;
        for c in &self.components {
            writeln!(f, "{c}")?;
        }
        write!(f, "end")
    }
}

/// A subset of the box `[0, bound]^dim`, stored as a dense bitmap in
/// mixed-radix order (first coordinate most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSet {
    dim: usize,
    bound: u64,
    bits: Vec<bool>,
}

const BOX_LIMIT: u128 = 1 << 28;

impl BoxSet {
    pub fn new(dim: usize, bound: u64) -> Result<Self, VecSetError> {
        let size = (bound as u128 + 1).checked_pow(dim as u32).filter(|&s| s <= BOX_LIMIT);
        let Some(size) = size else {
            return Err(VecSetError::BoxTooLarge { bound, dim });
        };
        Ok(BoxSet { dim, bound, bits: vec![false; size as usize] })
    }

    /// Builds a box set from a predicate evaluated at every point.
    pub fn from_predicate(dim: usize, bound: u64, mut pred: impl FnMut(&[u64]) -> bool) -> Result<Self, VecSetError> {
        let mut out = Self::new(dim, bound)?;
        for idx in 0..out.bits.len() {
            let p = out.point(idx);
            out.bits[idx] = pred(&p);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn index(&self, point: &[u64]) -> Option<usize> {
        let radix = self.bound as usize + 1;
        let mut idx = 0usize;
        for &x in point {
            if x > self.bound {
                return None;
            }
            idx = idx * radix + x as usize;
        }
        Some(idx)
    }

    pub fn point(&self, mut idx: usize) -> Vec<u64> {
        let radix = self.bound as usize + 1;
        let mut p = vec![0u64; self.dim];
        for slot in p.iter_mut().rev() {
            *slot = (idx % radix) as u64;
            idx /= radix;
        }
        p
    }

    pub fn contains(&self, point: &[u64]) -> bool {
        self.index(point).is_some_and(|i| self.bits[i])
    }

    pub fn insert(&mut self, point: &[u64]) {
        if let Some(i) = self.index(point) {
            self.bits[i] = true;
        }
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn members(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| self.point(i))
    }

    pub fn intersect(&self, other: &BoxSet) -> BoxSet {
        assert_eq!((self.dim, self.bound), (other.dim, other.bound), "box shape mismatch");
        BoxSet {
            dim: self.dim,
            bound: self.bound,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect(),
        }
    }

    /// First point where the two sets disagree, if any.
    pub fn first_difference(&self, other: &BoxSet) -> Option<Vec<u64>> {
        self.bits.iter().zip(&other.bits).position(|(a, b)| a != b).map(|i| self.point(i))
    }

    fn fill_linear(&mut self, l: &LinearSet) {
        let Some(c) = l.constant().to_u64s() else { return };
        let Some(start) = self.index(&c) else { return };
        let mut local = vec![false; self.bits.len()];
        local[start] = true;
        for p in l.periods() {
            if p.is_zero() {
                continue;
            }
            let Some(step) = p.to_u64s() else { continue };
            // Periods are nonnegative, so adding one strictly increases the
            // mixed-radix index and a single ascending sweep is a closure.
            for idx in 0..local.len() {
                if !local[idx] {
                    continue;
                }
                let pt = self.point(idx);
                let next: Vec<u64> = pt.iter().zip(&step).map(|(a, b)| a.saturating_add(*b)).collect();
                if let Some(j) = self.index(&next) {
                    local[j] = true;
                }
            }
        }
        for (dst, src) in self.bits.iter_mut().zip(local) {
            *dst |= src;
        }
    }
}

// ---------------------------------------------------------------------------
// Text format

fn parse_uints(tokens: &[&str], line: usize) -> Result<Vec<BigUint>, VecSetError> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<BigUint>()
                .map_err(|_| VecSetError::Parse { line, message: format!("not a nonnegative integer: {t:?}") })
        })
        .collect()
}

/// Parses `v: 2 3 2 3`.
pub fn parse_vector(text: &str, line: usize) -> Result<Vec0, VecSetError> {
    let body =
        text.trim().strip_prefix("v:").ok_or_else(|| VecSetError::Parse { line, message: "expected `v:`".into() })?;
    let toks: Vec<&str> = body.split_whitespace().collect();
    Vec0::new(parse_uints(&toks, line)?).map_err(|e| VecSetError::Parse { line, message: e.to_string() })
}

/// Parses `lin c= 0 0 | p= 1 0 ; p= 0 1`. An empty period list is written
/// `lin c= 5 |`.
pub fn parse_linear(text: &str, line: usize) -> Result<LinearSet, VecSetError> {
    let err = |message: &str| VecSetError::Parse { line, message: message.to_string() };
    let body = text.trim().strip_prefix("lin").ok_or_else(|| err("expected `lin`"))?;
    let (cpart, ppart) = body.split_once('|').ok_or_else(|| err("missing `|` separator"))?;
    let ctoks: Vec<&str> = cpart.split_whitespace().collect();
    if ctoks.first() != Some(&"c=") {
        return Err(err("expected `c=`"));
    }
    let constant = Vec0::new(parse_uints(&ctoks[1..], line)?).map_err(|e| err(&e.to_string()))?;
    let mut periods = Vec::new();
    for chunk in ppart.split(';') {
        let toks: Vec<&str> = chunk.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks[0] != "p=" {
            return Err(err("expected `p=`"));
        }
        periods.push(Vec0::new(parse_uints(&toks[1..], line)?).map_err(|e| err(&e.to_string()))?);
    }
    LinearSet::new(constant, periods).map_err(|e| err(&e.to_string()))
}

/// Parses a `slset` block. The header may carry `dim=r`, which is required
/// for the empty set and checked otherwise.
pub fn parse_semilinear(text: &str) -> Result<SemilinearSet, VecSetError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(VecSetError::Parse { line: 1, message: "empty input".into() })?;
    let mut htoks = header.split_whitespace();
    if htoks.next() != Some("slset") {
        return Err(VecSetError::Parse { line: hline, message: "expected `slset` header".into() });
    }
    let mut dim: Option<usize> = None;
    for t in htoks {
        let d = t
            .strip_prefix("dim=")
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| VecSetError::Parse { line: hline, message: format!("unexpected header token {t:?}") })?;
        dim = Some(d);
    }
    let mut comps = Vec::new();
    let mut ended = false;
    for (ln, l) in lines.by_ref() {
        if l == "end" {
            ended = true;
            break;
        }
        let lin = parse_linear(l, ln)?;
        match dim {
            Some(d) if d != lin.dim() => {
                return Err(VecSetError::Parse {
                    line: ln,
                    message: format!("dimension {} differs from {d}", lin.dim()),
                })
            }
            _ => dim = Some(lin.dim()),
        }
        comps.push(lin);
    }
    if !ended {
        return Err(VecSetError::Parse { line: text.lines().count().max(1), message: "missing `end`".into() });
    }
    let dim = dim.ok_or(VecSetError::Parse { line: hline, message: "empty set needs `dim=`".into() })?;
    SemilinearSet::new(dim, comps)
}
