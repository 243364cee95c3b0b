//! Stratified period sets, the coordinate partition induced by two-entry
//! periods, block bases of the orthogonal complement, and the `S^(n,k)`
//! family together with its covering sets.
//!
//! Coordinates are 1-based in every public interface of this module.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg;
use crate::vecset::{LinearSet, QVec, SemilinearSet, Vec0, VecSetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StratifyError {
    #[error("period set is not stratified: {0}")]
    NotStratified(StratificationViolation),
    #[error("linear set must have constant zero")]
    NonZeroConstant,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("orthogonal complement does not split along the partition: {0}")]
    BlockFormViolation(String),
    #[error("family parameters must satisfy n, k >= 1 (got n={n}, k={k})")]
    BadFamily { n: usize, k: usize },
    #[error(transparent)]
    VecSet(#[from] VecSetError),
}

/// Why a period set fails to be stratified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratificationViolation {
    /// A period with three or more nonzero entries (0-based index into the list).
    TooManyEntries { period: usize, support: Vec<usize> },
    /// Two periods with supports `{i,k}` and `{j,l}` where `i<j<k<l`.
    Crossing { first: (usize, usize), second: (usize, usize) },
}

impl std::fmt::Display for StratificationViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StratificationViolation::TooManyEntries { period, support } => {
                write!(f, "period #{} has {} nonzero components {:?}", period + 1, support.len(), support)
            }
            StratificationViolation::Crossing { first, second } => {
                write!(f, "crossing supports ({},{}) and ({},{})", first.0, first.1, second.0, second.1)
            }
        }
    }
}

/// 1-based indices of nonzero entries.
fn support(p: &Vec0) -> Vec<usize> {
    p.entries().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i + 1).collect()
}

/// Checks both stratification conditions, returning the first violation.
pub fn stratification_violation(periods: &[Vec0]) -> Option<StratificationViolation> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, p) in periods.iter().enumerate() {
        let s = support(p);
        if s.len() > 2 {
            return Some(StratificationViolation::TooManyEntries { period: idx, support: s });
        }
        if s.len() == 2 {
            pairs.push((s[0], s[1]));
        }
    }
    pairs.sort();
    pairs.dedup();
    for &(i, k) in &pairs {
        for &(j, l) in &pairs {
            if i < j && j < k && k < l {
                return Some(StratificationViolation::Crossing { first: (i, k), second: (j, l) });
            }
        }
    }
    None
}

pub fn is_stratified_period_set(periods: &[Vec0]) -> bool {
    stratification_violation(periods).is_none()
}

/// A partition of `{1,…,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodClassPartition {
    r: usize,
    class_of: Vec<usize>,
}

impl PeriodClassPartition {
    /// Builds from explicit blocks of 1-based points; they must cover
    /// `{1,…,r}` exactly once.
    pub fn from_blocks(r: usize, blocks: &[Vec<usize>]) -> Result<Self, StratifyError> {
        let mut class_of = vec![usize::MAX; r];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x == 0 || x > r || class_of[x - 1] != usize::MAX {
                    return Err(StratifyError::Precondition(format!("blocks {blocks:?} do not partition 1..={r}")));
                }
                class_of[x - 1] = b;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(StratifyError::Precondition(format!("blocks {blocks:?} do not cover 1..={r}")));
        }
        Ok(Self::canonical(class_of))
    }

    fn canonical(raw: Vec<usize>) -> Self {
        let mut rename = BTreeMap::new();
        let class_of = raw
            .iter()
            .map(|c| {
                let next = rename.len();
                *rename.entry(*c).or_insert(next)
            })
            .collect();
        PeriodClassPartition { r: raw.len(), class_of }
    }

    pub fn size(&self) -> usize {
        self.r
    }

    /// Blocks as sorted lists of 1-based points, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let count = self.class_of.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i + 1);
        }
        out
    }

    /// Whether 1-based points `m` and `n` share a block.
    pub fn related(&self, m: usize, n: usize) -> bool {
        self.class_of[m - 1] == self.class_of[n - 1]
    }
}

/// Plain union-find over 0-based indices.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }
}

/// The partition generated by joining `m` and `n` whenever some period has
/// nonzero entries exactly at `m` and `n`.
pub fn partition_pi(l: &LinearSet) -> Result<PeriodClassPartition, StratifyError> {
    if let Some(v) = stratification_violation(l.periods()) {
        return Err(StratifyError::NotStratified(v));
    }
    let r = l.dim();
    let mut uf = UnionFind::new(r);
    for p in l.periods() {
        if let [a, b] = support(p)[..] {
            uf.union(a - 1, b - 1);
        }
    }
    let raw: Vec<usize> = (0..r).map(|i| uf.find(i)).collect();
    Ok(PeriodClassPartition::canonical(raw))
}

/// For `m1 < n1 < m2 < n2` with `m1 ≁ n1` and `m2 ≁ n2`, returns `false`
/// exactly when both `m1 ∼ m2` and `n1 ∼ n2` hold.
pub fn check_no_crossing(
    part: &PeriodClassPartition,
    m1: usize,
    n1: usize,
    m2: usize,
    n2: usize,
) -> Result<bool, StratifyError> {
    if !(1 <= m1 && m1 < n1 && n1 < m2 && m2 < n2 && n2 <= part.size()) {
        return Err(StratifyError::Precondition(format!("need 1 <= m1 < n1 < m2 < n2 <= {}", part.size())));
    }
    if part.related(m1, n1) || part.related(m2, n2) {
        return Err(StratifyError::Precondition(format!("({m1},{n1}) or ({m2},{n2}) lie in a common class")));
    }
    Ok(!(part.related(m1, m2) && part.related(n1, n2)))
}

/// Basis of the orthogonal complement of span(P), each vector supported in
/// a single class of the partition.
pub fn perp_block_basis(l: &LinearSet) -> Result<Vec<QVec>, StratifyError> {
    if !l.constant().is_zero() {
        return Err(StratifyError::NonZeroConstant);
    }
    let part = partition_pi(l)?;
    let r = l.dim();
    let rows: Vec<linalg::QRow> = l.periods().iter().map(|p| p.to_qvec().entries().to_vec()).collect();
    let full = linalg::nullspace(&rows, r);
    let mut out: Vec<QVec> = Vec::new();
    for block in part.blocks() {
        // Periods of a stratified set live inside one class, so restricting
        // to the block loses no equations.
        let local_rows: Vec<linalg::QRow> = l
            .periods()
            .iter()
            .filter(|p| support(p).iter().all(|i| block.contains(i)) && !p.is_zero())
            .map(|p| block.iter().map(|&i| BigRational::from_integer(p.get(i - 1).clone().into())).collect())
            .collect();
        for local in linalg::nullspace(&local_rows, block.len()) {
            let mut v = vec![BigRational::zero(); r];
            for (slot, &i) in block.iter().enumerate() {
                v[i - 1] = local[slot].clone();
            }
            out.push(QVec::new(v));
        }
    }
    if out.len() != full.len() {
        return Err(StratifyError::BlockFormViolation(format!(
            "block vectors span dimension {} but the complement has dimension {}",
            out.len(),
            full.len()
        )));
    }
    for v in &out {
        for p in &rows {
            if !linalg::dot(v.entries(), p).is_zero() {
                return Err(StratifyError::BlockFormViolation(format!("{v} is not orthogonal to a period")));
            }
        }
    }
    let as_rows: Vec<linalg::QRow> = out.iter().map(|v| v.entries().to_vec()).collect();
    if linalg::rank(&as_rows, r) != out.len() {
        return Err(StratifyError::BlockFormViolation("block vectors are dependent".into()));
    }
    Ok(out)
}

/// Parameters of the family `S^(n,k) ⊆ N₀^{2nk}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkFamilySpec {
    n: usize,
    k: usize,
}

impl SkFamilySpec {
    pub fn new(n: usize, k: usize) -> Result<Self, StratifyError> {
        if n == 0 || k == 0 {
            return Err(StratifyError::BadFamily { n, k });
        }
        Ok(SkFamilySpec { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Ambient dimension `2nk`.
    pub fn dim(&self) -> usize {
        2 * self.n * self.k
    }

    /// The defining equalities: the second half repeats the first, and each
    /// run of `n` consecutive entries is constant.
    pub fn contains(&self, v: &[u64]) -> bool {
        let (n, k) = (self.n, self.k);
        if v.len() != self.dim() {
            return false;
        }
        let half = n * k;
        (0..half).all(|i| v[i] == v[i + half]) && (0..k).all(|j| (1..n).all(|l| v[n * j] == v[n * j + l]))
    }

    pub fn contains_vec(&self, v: &Vec0) -> bool {
        v.to_u64s().is_some_and(|xs| self.contains(&xs))
    }

    /// The generator `u_j` (0-based `j < k`): ones on both copies of the
    /// `j`-th run.
    pub fn generator(&self, j: usize) -> Vec0 {
        let (n, k) = (self.n, self.k);
        let mut entries = vec![0u64; self.dim()];
        for l in 0..n {
            entries[n * j + l] = 1;
            entries[n * (k + j) + l] = 1;
        }
        Vec0::from_u64s(&entries)
    }
}

/// `S^(n,k)` as the linear set `L(0; u₀, …, u_{k−1})`.
pub fn build_snk(spec: SkFamilySpec) -> LinearSet {
    let periods = (0..spec.k).map(|j| spec.generator(j)).collect();
    LinearSet::new(Vec0::zeros(spec.dim()), periods).expect("generators share the ambient dimension")
}

/// The sets `S₁, …, S_k ⊆ N₀^{2k}` where `Sᵢ` is spanned by `eᵢ + e_{k+i}` and
/// every `e_j` with `j ∉ {i, k+i}`.
pub fn build_sk_cover(k: usize) -> Result<Vec<LinearSet>, StratifyError> {
    if k == 0 {
        return Err(StratifyError::BadFamily { n: 1, k });
    }
    let r = 2 * k;
    Ok((0..k)
        .map(|i| {
            let mut periods = vec![Vec0::unit(r, i).add(&Vec0::unit(r, k + i))];
            periods.extend((0..r).filter(|&j| j != i && j != k + i).map(|j| Vec0::unit(r, j)));
            LinearSet::new(Vec0::zeros(r), periods).expect("consistent dimension")
        })
        .collect())
}

/// Parses a word of symbols `a1 … a_{2nk}` (concatenated, e.g. `a1a2a2`) and
/// returns the exponent tuple when the blocks appear in index order.
pub fn exponents_in_block_order(word: &str, symbols: usize) -> Option<Vec<u64>> {
    let mut exps = vec![0u64; symbols];
    let mut last = 0usize;
    let bytes = word.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if bytes[pos] != b'a' {
            return None;
        }
        pos += 1;
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let idx: usize = word[start..pos].parse().ok()?;
        if idx == 0 || idx > symbols || idx < last {
            return None;
        }
        last = idx;
        exps[idx - 1] += 1;
    }
    Some(exps)
}

/// Membership in `L^(n,k) = {a₁^{m₁} … a_{2nk}^{m_{2nk}} : (m) ∈ S^(n,k)}`.
pub fn membership_lnk(word: &str, spec: SkFamilySpec) -> bool {
    exponents_in_block_order(word, spec.dim()).is_some_and(|e| spec.contains(&e))
}

/// Outcome of the bounded search for a stratified presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratifiedSearch {
    Found(LinearSet),
    Unknown,
}

/// Looks for a stratified period set presenting the same linear set.
///
/// The constant of a linear set is its componentwise minimum, so only the
/// periods can change. Candidates are vectors with at most two nonzero
/// entries, each at most `max_period_norm`, lying in `L(0; P)`; subsets are
/// tried in increasing size. `Unknown` means nothing was found within the
/// bound, not that no presentation exists.
pub fn search_stratified_presentation(l: &LinearSet, max_period_norm: u64) -> Result<StratifiedSearch, StratifyError> {
    let normal = l.normalized();
    if is_stratified_period_set(normal.periods()) {
        return Ok(StratifiedSearch::Found(normal));
    }
    let r = l.dim();
    let monoid = normal.zero_shadow();
    let mut candidates: Vec<Vec0> = Vec::new();
    for i in 0..r {
        for a in 1..=max_period_norm {
            let mut e = vec![0u64; r];
            e[i] = a;
            candidates.push(Vec0::from_u64s(&e));
            for j in i + 1..r {
                for b in 1..=max_period_norm {
                    let mut e2 = e.clone();
                    e2[j] = b;
                    candidates.push(Vec0::from_u64s(&e2));
                }
            }
        }
    }
    candidates.retain(|c| monoid.member(c).unwrap_or(false));
    // Keep only candidates not generated by smaller ones; a generating set of
    // the monoid must contain all of its irreducible elements.
    let mut irreducible: Vec<Vec0> = Vec::new();
    candidates.sort_by_key(|c| c.sigma());
    for c in candidates {
        let span = LinearSet::new(Vec0::zeros(r), irreducible.clone())?;
        if !span.member(&c)? {
            irreducible.push(c);
        }
    }
    const SUBSET_LIMIT: usize = 16;
    if irreducible.len() > SUBSET_LIMIT {
        return Ok(StratifiedSearch::Unknown);
    }
    let generates = |ps: &[Vec0]| -> Result<bool, StratifyError> {
        let span = LinearSet::new(Vec0::zeros(r), ps.to_vec())?;
        for p in normal.periods() {
            if !span.member(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let n = irreducible.len();
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let subset: Vec<Vec0> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| irreducible[i].clone()).collect();
        if is_stratified_period_set(&subset) && generates(&subset)? {
            return Ok(StratifiedSearch::Found(LinearSet::new(normal.constant().clone(), subset)?));
        }
    }
    Ok(StratifiedSearch::Unknown)
}

/// Evaluates the defining predicate on every point of `[0,bound]^{2nk}` and
/// compares with the linear presentation. Returns the first disagreement.
pub fn presentation_matches_predicate(spec: SkFamilySpec, bound: u64) -> Result<Option<Vec<u64>>, StratifyError> {
    let set = SemilinearSet::single(build_snk(spec));
    let from_presentation = set.box_members(bound)?;
    let from_predicate = crate::vecset::BoxSet::from_predicate(spec.dim(), bound, |p| spec.contains(p))?;
    Ok(from_presentation.first_difference(&from_predicate))
}
