//! Nonnegative solutions of linear Diophantine systems and the exact
//! intersection of linear sets built on top of them.
//!
//! Minimal solutions are found with a completion search: starting from unit
//! vectors (or from zero for an inhomogeneous system), a partial vector `x`
//! is extended by `e_j` only when the residual `Ax - b` and the column `Ae_j`
//! point in opposite directions (`⟨Ax - b, Ae_j⟩ < 0`). Every minimal
//! solution is reachable this way, and pruning candidates that dominate a
//! known solution keeps the output minimal.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg;
use crate::vecset::{LinearSet, SemilinearSet, Vec0, VecSetError};

/// Default cap on the number of vectors in a single search level.
pub const DEFAULT_FRONTIER_LIMIT: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiophantineError {
    #[error("search frontier exceeded the configured bound of {limit} vectors")]
    FrontierLimit { limit: usize },
    #[error("every row must have {expected} entries, row {row} has {found}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("right-hand side has {found} entries but the system has {expected} rows")]
    RhsLength { expected: usize, found: usize },
    #[error("at least one linear set is required")]
    NoSets,
    #[error("linear set {index} has a nonzero constant")]
    NonZeroConstant { index: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    VecSet(#[from] VecSetError),
}

/// Search configuration shared by all solvers in this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub frontier: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { frontier: DEFAULT_FRONTIER_LIMIT }
    }
}

/// An integer matrix `A`; rows are equations, columns are unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSystem {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl HomSystem {
    pub fn new(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, DiophantineError> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(DiophantineError::RowLength { row: i + 1, expected: cols, found: r.len() });
            }
        }
        Ok(HomSystem { cols, rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn column(&self, j: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// `A x` for a nonnegative vector `x`.
    pub fn apply(&self, x: &[BigUint]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).fold(BigInt::zero(), |acc, (a, b)| acc + a * BigInt::from(b.clone())))
            .collect()
    }
}

impl fmt::Display for HomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sys rows={} cols={}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "\n{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses `sys rows=R cols=C` followed by `R` rows of integers, optionally
/// followed by a line `rhs b1 … bR`.
pub fn parse_system(text: &str) -> Result<(HomSystem, Option<Vec<BigInt>>), DiophantineError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line: usize, message: String| DiophantineError::Parse { line, message };
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("sys") {
        return Err(perr(hl, "expected `sys` header".into()));
    }
    let mut nrows = None;
    let mut ncols = None;
    for t in toks {
        if let Some(v) = t.strip_prefix("rows=") {
            nrows = v.parse::<usize>().ok();
        } else if let Some(v) = t.strip_prefix("cols=") {
            ncols = v.parse::<usize>().ok();
        } else {
            return Err(perr(hl, format!("unexpected header token {t:?}")));
        }
    }
    let (Some(nrows), Some(ncols)) = (nrows, ncols) else {
        return Err(perr(hl, "header needs rows= and cols=".into()));
    };
    let parse_ints = |line: usize, toks: Vec<&str>| -> Result<Vec<BigInt>, DiophantineError> {
        toks.iter().map(|t| t.parse::<BigInt>().map_err(|_| perr(line, format!("not an integer: {t:?}")))).collect()
    };
    let mut rows = Vec::new();
    let mut rhs = None;
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] == "rhs" {
            let b = parse_ints(ln, toks[1..].to_vec())?;
            if b.len() != nrows {
                return Err(perr(ln, format!("rhs needs {nrows} entries")));
            }
            rhs = Some(b);
        } else {
            let r = parse_ints(ln, toks)?;
            if r.len() != ncols {
                return Err(perr(ln, format!("row needs {ncols} entries, found {}", r.len())));
            }
            rows.push(r);
        }
    }
    if rows.len() != nrows {
        return Err(perr(hl, format!("expected {nrows} rows, found {}", rows.len())));
    }
    Ok((HomSystem::new(ncols, rows)?, rhs))
}

fn dominates(x: &[u64], s: &[u64]) -> bool {
    x.iter().zip(s).all(|(a, b)| a >= b)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Core completion search. `start` is the initial level; `value` is the
/// residual `Ax - b` of each start vector.
/// Candidates dominating an entry of `blockers` are discarded, as are
/// candidates dominating an already found solution and candidates leaving
/// the box `x ≤ bound`. Search paths only ever increase coordinates, so a
/// box containing every minimal solution loses nothing.
fn completion_search(
    sys: &HomSystem,
    start: Vec<(Vec<u64>, Vec<BigInt>)>,
    blockers: &[Vec<u64>],
    bound: &[u64],
    limits: SearchLimits,
) -> Result<Vec<Vec<u64>>, DiophantineError> {
    let columns: Vec<Vec<BigInt>> = (0..sys.cols).map(|j| sys.column(j)).collect();
    let blocked = |x: &[u64]| x.iter().zip(bound).any(|(v, b)| v > b) || blockers.iter().any(|b| dominates(x, b));
    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<(Vec<u64>, Vec<BigInt>)> = start;
    while !frontier.is_empty() {
        if frontier.len() > limits.frontier {
            return Err(DiophantineError::FrontierLimit { limit: limits.frontier });
        }
        let mut open = Vec::new();
        for (x, val) in frontier {
            if blocked(&x) || solutions.iter().any(|s| dominates(&x, s)) {
                continue;
            }
            if val.iter().all(Zero::is_zero) {
                solutions.push(x);
            } else {
                open.push((x, val));
            }
        }
        let mut next: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut values: Vec<(Vec<u64>, Vec<BigInt>)> = Vec::new();
        for (x, val) in &open {
            for (j, col) in columns.iter().enumerate() {
                if !dot(val, col).is_negative() {
                    continue;
                }
                let mut y = x.clone();
                y[j] += 1;
                if blocked(&y) || solutions.iter().any(|s| dominates(&y, s)) || next.contains(&y) {
                    continue;
                }
                let v: Vec<BigInt> = val.iter().zip(col).map(|(a, b)| a + b).collect();
                next.insert(y.clone());
                values.push((y, v));
                if next.len() > limits.frontier {
                    return Err(DiophantineError::FrontierLimit { limit: limits.frontier });
                }
            }
        }
        values.sort();
        frontier = values;
    }
    solutions.sort();
    Ok(solutions)
}

fn to_vec0(x: &[u64], len: usize) -> Vec0 {
    if len == 0 {
        return Vec0::zeros(1);
    }
    Vec0::from_u64s(x)
}

/// All ≤-minimal nonzero solutions of `Ax = 0` over N₀, sorted
/// lexicographically.
pub fn hilbert_basis(sys: &HomSystem, limits: SearchLimits) -> Result<Vec<Vec0>, DiophantineError> {
    Ok(hilbert_basis_raw(sys, limits)?.iter().map(|x| to_vec0(x, sys.cols)).collect())
}

fn hilbert_basis_raw(sys: &HomSystem, limits: SearchLimits) -> Result<Vec<Vec<u64>>, DiophantineError> {
    if sys.cols == 0 {
        return Ok(Vec::new());
    }
    let rays = cone_generators(sys, None);
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let bound = saturate(&(0..sys.cols).map(|j| rays.iter().map(|r| &r[j]).sum()).collect::<Vec<BigInt>>());
    let start = (0..sys.cols)
        .map(|j| {
            let mut x = vec![0u64; sys.cols];
            x[j] = 1;
            (x, sys.column(j))
        })
        .collect();
    completion_search(sys, start, &[], &bound, limits)
}

/// Generators of `{(x, y) ≥ 0 : Ax = y·rhs}`, or of `{x ≥ 0 : Ax = 0}` when
/// `rhs` is absent.
fn cone_generators(sys: &HomSystem, rhs: Option<&[BigInt]>) -> Vec<Vec<BigInt>> {
    let extra = usize::from(rhs.is_some());
    let rows: Vec<linalg::QRow> = sys
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().cloned().chain(rhs.map(|b| -b[i].clone())).map(BigRational::from_integer).collect())
        .collect();
    linalg::nonnegative_kernel_rays(&rows, sys.cols + extra)
}

fn saturate(bound: &[BigInt]) -> Vec<u64> {
    bound.iter().map(|b| b.to_u64().unwrap_or(u64::MAX)).collect()
}

/// Coordinatewise bound on the minimal solutions of `Ax = rhs`, or `None`
/// when the system has no nonnegative rational solution.
///
/// Write a minimal solution as a convex combination of points of the
/// polyhedron plus `Σ λᵢ rᵢ` over integral recession rays. If some `λᵢ ≥ 1`
/// then `x - rᵢ` is a smaller solution, so every `λᵢ < 1`.
fn inhom_bound(sys: &HomSystem, rhs: &[BigInt]) -> Option<Vec<u64>> {
    let gens = cone_generators(sys, Some(rhs));
    let n = sys.cols;
    let (points, rays): (Vec<_>, Vec<_>) = gens.iter().partition(|g| g[n].is_positive());
    if points.is_empty() {
        return None;
    }
    let bound: Vec<BigInt> = (0..n)
        .map(|j| {
            let top = points.iter().map(|p| p[j].div_floor(&p[n])).max().unwrap_or_default();
            top + rays.iter().map(|r| &r[j]).sum::<BigInt>()
        })
        .collect();
    Some(saturate(&bound))
}

/// All ≤-minimal solutions of `Ax = rhs` over N₀. An infeasible system gives
/// an empty list.
pub fn minimal_inhom_solutions(
    sys: &HomSystem,
    rhs: &[BigInt],
    limits: SearchLimits,
) -> Result<Vec<Vec0>, DiophantineError> {
    let basis = hilbert_basis_raw(sys, limits)?;
    minimal_inhom_with_basis(sys, rhs, &basis, limits)
}

/// A minimal inhomogeneous solution never dominates a nonzero homogeneous
/// solution, so the Hilbert basis doubles as a pruning set; this is also
/// what bounds the search.
fn minimal_inhom_with_basis(
    sys: &HomSystem,
    rhs: &[BigInt],
    basis: &[Vec<u64>],
    limits: SearchLimits,
) -> Result<Vec<Vec0>, DiophantineError> {
    if rhs.len() != sys.rows.len() {
        return Err(DiophantineError::RhsLength { expected: sys.rows.len(), found: rhs.len() });
    }
    if sys.cols == 0 {
        return Ok(if rhs.iter().all(Zero::is_zero) { vec![Vec0::zeros(1)] } else { Vec::new() });
    }
    let Some(bound) = inhom_bound(sys, rhs) else {
        return Ok(Vec::new());
    };
    let start = vec![(vec![0u64; sys.cols], rhs.iter().map(|b| -b).collect())];
    Ok(completion_search(sys, start, basis, &bound, limits)?.iter().map(|x| to_vec0(x, sys.cols)).collect())
}

/// Maps an α-block of a solution through the periods of a linear set.
fn combine(periods: &[Vec0], alpha: &[BigUint], dim: usize) -> Vec0 {
    periods.iter().zip(alpha).fold(Vec0::zeros(dim), |acc, (p, a)| acc.add(&p.scale(a)))
}

/// Exact presentation of `L₁ ∩ … ∩ Lₙ`.
///
/// The unknowns are the coefficient blocks of every set and the equations
/// force `cᵢ + Pᵢαᵢ = c₁ + P₁α₁`. Periods of the result are the images of the
/// homogeneous Hilbert basis, constants the images of the minimal
/// inhomogeneous solutions. Constants already covered by another component
/// are dropped.
pub fn intersect_linear(sets: &[LinearSet], limits: SearchLimits) -> Result<SemilinearSet, DiophantineError> {
    let first = sets.first().ok_or(DiophantineError::NoSets)?;
    let r = first.dim();
    for s in sets {
        if s.dim() != r {
            return Err(VecSetError::DimensionMismatch { expected: r, found: s.dim() }.into());
        }
    }
    let sets: Vec<LinearSet> = sets.iter().map(LinearSet::normalized).collect();
    if sets.len() == 1 {
        return Ok(SemilinearSet::single(sets[0].clone()));
    }
    let mut offsets = Vec::with_capacity(sets.len());
    let mut cols = 0usize;
    for s in &sets {
        offsets.push(cols);
        cols += s.periods().len();
    }
    let signed = |x: &BigUint| BigInt::from(x.clone());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, s) in sets.iter().enumerate().skip(1) {
        for t in 0..r {
            let mut row = vec![BigInt::zero(); cols];
            for (j, p) in sets[0].periods().iter().enumerate() {
                row[offsets[0] + j] = -signed(p.get(t));
            }
            for (j, p) in s.periods().iter().enumerate() {
                row[offsets[i] + j] = signed(p.get(t));
            }
            rows.push(row);
            rhs.push(signed(sets[0].constant().get(t)) - signed(s.constant().get(t)));
        }
    }
    let first_block = |x: &Vec0| -> Vec0 {
        let alpha = if cols == 0 { &[][..] } else { &x.entries()[..sets[0].periods().len()] };
        combine(sets[0].periods(), alpha, r)
    };
    let sys = HomSystem::new(cols, rows)?;
    let raw_basis = hilbert_basis_raw(&sys, limits)?;
    let consts = minimal_inhom_with_basis(&sys, &rhs, &raw_basis, limits)?;
    if consts.is_empty() {
        return Ok(SemilinearSet::empty(r));
    }
    let basis: Vec<Vec0> = raw_basis.iter().map(|x| to_vec0(x, cols)).collect();
    let mut periods: Vec<Vec0> = basis.iter().map(first_block).filter(|p| !p.is_zero()).collect();
    periods.sort();
    periods.dedup();
    let mut constants: Vec<Vec0> = consts.iter().map(|m| sets[0].constant().add(&first_block(m))).collect();
    constants.sort();
    constants.dedup();
    let components: Vec<LinearSet> =
        constants.iter().map(|c| LinearSet::new(c.clone(), periods.clone())).collect::<Result<_, _>>()?;
    let mut kept: Vec<LinearSet> = Vec::new();
    for (i, comp) in components.iter().enumerate() {
        let covered = components.iter().enumerate().any(|(j, other)| {
            j != i && other.constant() != comp.constant() && other.member(comp.constant()).unwrap_or(false)
        });
        if !covered {
            kept.push(comp.clone());
        }
    }
    Ok(SemilinearSet::new(r, kept)?)
}

/// Intersection of semilinear sets: the union over every choice of one
/// component per set of the linear intersection.
pub fn intersect_semilinear(sets: &[SemilinearSet], limits: SearchLimits) -> Result<SemilinearSet, DiophantineError> {
    let first = sets.first().ok_or(DiophantineError::NoSets)?;
    let r = first.dim();
    let mut out = SemilinearSet::empty(r);
    let mut choice = vec![0usize; sets.len()];
    if sets.iter().any(SemilinearSet::is_empty_presentation) {
        return Ok(out);
    }
    loop {
        let picked: Vec<LinearSet> = sets.iter().zip(&choice).map(|(s, &i)| s.components()[i].clone()).collect();
        out = out.union(&intersect_linear(&picked, limits)?)?;
        let Some(pos) = (0..sets.len()).find(|&j| choice[j] + 1 < sets[j].components().len()) else {
            return Ok(out);
        };
        choice[pos] += 1;
        choice[..pos].iter_mut().for_each(|c| *c = 0);
    }
}

/// Dimension of the rational subspace `span(P₁) ∩ … ∩ span(Pₙ)`.
pub fn rational_intersection_dimension(sets: &[LinearSet]) -> Result<usize, DiophantineError> {
    let first = sets.first().ok_or(DiophantineError::NoSets)?;
    let r = first.dim();
    let mut perp_rows = Vec::new();
    for s in sets {
        if s.dim() != r {
            return Err(VecSetError::DimensionMismatch { expected: r, found: s.dim() }.into());
        }
        let rows: Vec<linalg::QRow> = s.periods().iter().map(|p| p.to_qvec().entries().to_vec()).collect();
        perp_rows.extend(linalg::nullspace(&rows, r));
    }
    Ok(r - linalg::rank(&perp_rows, r))
}

fn same_monoid(a: &SemilinearSet, b: &SemilinearSet) -> bool {
    let periods = |s: &SemilinearSet| -> Vec<Vec0> {
        s.components().first().map(|c| c.normalized().periods().to_vec()).unwrap_or_default()
    };
    a.components().len() == b.components().len() && periods(a) == periods(b)
}

/// For zero-constant sets, looks for a period whose removal leaves the
/// intersection unchanged. Returns 1-based `(set, period)` indices into the
/// input lists; duplicate and zero periods are ignored.
///
/// When the intersection has smaller dimension than the intersection of the
/// rational spans such a period must exist, and failing to find one is
/// reported as an inconsistency.
pub fn find_removable_period(
    sets: &[LinearSet],
    limits: SearchLimits,
) -> Result<Option<(usize, usize)>, DiophantineError> {
    if sets.is_empty() {
        return Err(DiophantineError::NoSets);
    }
    for (i, s) in sets.iter().enumerate() {
        if !s.constant().is_zero() {
            return Err(DiophantineError::NonZeroConstant { index: i + 1 });
        }
    }
    let normal: Vec<LinearSet> = sets.iter().map(LinearSet::normalized).collect();
    let full = intersect_linear(&normal, limits)?;
    let dim_int = full.components().first().map_or(0, LinearSet::dimension);
    let dim_q = rational_intersection_dimension(&normal)?;
    for (i, s) in normal.iter().enumerate() {
        for (j, p) in s.periods().iter().enumerate() {
            let mut reduced_periods = s.periods().to_vec();
            reduced_periods.remove(j);
            let mut trial = normal.clone();
            trial[i] = LinearSet::new(s.constant().clone(), reduced_periods)?;
            let reduced = intersect_linear(&trial, limits)?;
            if same_monoid(&full, &reduced) {
                let original = sets[i].periods().iter().position(|q| q == p).expect("period from input");
                return Ok(Some((i + 1, original + 1)));
            }
        }
    }
    if dim_int < dim_q {
        return Err(DiophantineError::Inconsistent(format!(
            "intersection has dimension {dim_int} < {dim_q} but no period is removable"
        )));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[u64]) -> Vec0 {
        Vec0::from_u64s(xs)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hilbert_basis_examples() {
        let lim = SearchLimits::default();
        assert_eq!(hilbert_basis(&HomSystem::from_i64(&[&[1, -1]]), lim).unwrap(), vec![v(&[1, 1])]);
        assert_eq!(hilbert_basis(&HomSystem::from_i64(&[&[1, -2]]), lim).unwrap(), vec![v(&[2, 1])]);
        assert_eq!(
            hilbert_basis(&HomSystem::from_i64(&[&[1, 1, -1]]), lim).unwrap(),
            vec![v(&[0, 1, 1]), v(&[1, 0, 1])]
        );
    }

    #[test]
    fn inhomogeneous_examples() {
        let lim = SearchLimits::default();
        assert_eq!(
            minimal_inhom_solutions(&HomSystem::from_i64(&[&[1, -1]]), &ints(&[1]), lim).unwrap(),
            vec![v(&[1, 0])]
        );
        assert_eq!(minimal_inhom_solutions(&HomSystem::from_i64(&[&[1]]), &ints(&[3]), lim).unwrap(), vec![v(&[3])]);
        assert_eq!(
            minimal_inhom_solutions(&HomSystem::from_i64(&[&[2, 3]]), &ints(&[12]), lim).unwrap(),
            vec![v(&[0, 4]), v(&[3, 2]), v(&[6, 0])]
        );
        assert!(minimal_inhom_solutions(&HomSystem::from_i64(&[&[2]]), &ints(&[3]), lim).unwrap().is_empty());
    }

    #[test]
    fn frontier_limit_is_reported() {
        let sys = HomSystem::from_i64(&[&[7, 11, -13, -17]]);
        let err = hilbert_basis(&sys, SearchLimits { frontier: 3 }).unwrap_err();
        assert_eq!(err, DiophantineError::FrontierLimit { limit: 3 });
    }

    #[test]
    fn intersection_examples() {
        let lim = SearchLimits::default();
        let s1 = LinearSet::from_u64s(&[0, 0, 0, 0], &[&[1, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let s2 = LinearSet::from_u64s(&[0, 0, 0, 0], &[&[0, 1, 0, 1], &[1, 0, 0, 0], &[0, 0, 1, 0]]);
        let out = intersect_linear(&[s1, s2], lim).unwrap();
        assert_eq!(out.components(), &[LinearSet::from_u64s(&[0, 0, 0, 0], &[&[0, 1, 0, 1], &[1, 0, 1, 0]])]);

        let a = LinearSet::from_u64s(&[0, 0], &[&[1, 0], &[0, 1]]);
        let b = LinearSet::from_u64s(&[0, 0], &[&[1, 1]]);
        assert_eq!(intersect_linear(&[a, b], lim).unwrap().components(), &[LinearSet::from_u64s(&[0, 0], &[&[1, 1]])]);

        let a = LinearSet::from_u64s(&[1, 0], &[&[0, 1]]);
        let b = LinearSet::from_u64s(&[0, 0], &[&[1, 0], &[0, 1]]);
        assert_eq!(intersect_linear(&[a, b], lim).unwrap().components(), &[LinearSet::from_u64s(&[1, 0], &[&[0, 1]])]);
    }

    #[test]
    fn empty_intersection() {
        let a = LinearSet::from_u64s(&[1], &[&[2]]);
        let b = LinearSet::from_u64s(&[0], &[&[2]]);
        let out = intersect_linear(&[a, b], SearchLimits::default()).unwrap();
        assert!(out.is_empty_presentation());
        assert_eq!(out.dim(), 1);
    }

    #[test]
    fn removable_period_examples() {
        let lim = SearchLimits::default();
        let l1 = LinearSet::from_u64s(&[0, 0], &[&[1, 0], &[1, 1]]);
        let l2 = LinearSet::from_u64s(&[0, 0], &[&[1, 1]]);
        assert_eq!(find_removable_period(&[l1, l2], lim).unwrap(), Some((1, 1)));

        let e1 = LinearSet::from_u64s(&[0], &[&[1]]);
        assert_eq!(find_removable_period(&[e1.clone(), e1], lim).unwrap(), None);

        let s1 = LinearSet::from_u64s(&[0, 0, 0, 0], &[&[1, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let s2 = LinearSet::from_u64s(&[0, 0, 0, 0], &[&[0, 1, 0, 1], &[1, 0, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(find_removable_period(&[s1, s2], lim).unwrap(), None);

        let bad = LinearSet::from_u64s(&[1], &[&[1]]);
        assert_eq!(find_removable_period(&[bad], lim), Err(DiophantineError::NonZeroConstant { index: 1 }));
    }

    #[test]
    fn system_text_round_trip() {
        let sys = HomSystem::from_i64(&[&[1, -1, 0], &[0, 2, -3]]);
        let (parsed, rhs) = parse_system(&sys.to_string()).unwrap();
        assert_eq!(parsed, sys);
        assert!(rhs.is_none());
        let (_, rhs) = parse_system("sys rows=1 cols=2\n2 3\nrhs 12").unwrap();
        assert_eq!(rhs.unwrap(), ints(&[12]));
        assert!(matches!(parse_system("sys rows=1 cols=2\n2 x"), Err(DiophantineError::Parse { line: 2, .. })));
    }
}
