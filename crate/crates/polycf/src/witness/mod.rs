//! Witness families for non-semilinearity and the tools that check them.
//!
//! A family names, for each level `k`, a vector `a_k ∈ N₀^r` and a bound
//! `f(k)`. Together with a membership oracle for a set `L ⊆ N₀^{r+s}` the
//! checker verifies three conditions at every level: some `(a_k; b)` lies
//! in `L`, every such `b` has a coordinate of at least `k·σ(a_k)`, and any
//! two such `b` differ by at least `f(k)` in some coordinate. Passing at
//! finitely many levels is bounded evidence only. Against an explicit
//! semilinear presentation, though, [`refute_presentation`] produces a
//! concrete vector on which the presentation and the oracle disagree.

mod gc;
mod phi;

pub use gc::{gc_pipeline, gc_witness_language, ColumnType, GcPipelineState, GcWitness, PadicCtx};
pub use phi::{abc_lk_phi, bounded_parikh, search_bounded, wreath_lk_phi, PhiSample, TemplateItem};

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::automata::AutomataError;
use crate::groups::GroupError;
use crate::vecset::{MembershipCertificate, SemilinearSet, Vec0, VecSetError};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("spec {0} has both end coefficients ±1; use the polycyclic criterion instead")]
    NotProper(String),
    #[error("no exponent i ≤ {bound} reaches valuation {k}")]
    GrowthBound { k: u64, bound: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    VecSet(#[from] VecSetError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A vector `(a; b) ∈ N₀^{r+s}` kept as its two parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitVec {
    a: Vec0,
    b: Vec0,
}

impl SplitVec {
    pub fn new(a: Vec0, b: Vec0) -> Self {
        SplitVec { a, b }
    }

    /// Splits after the first `r` coordinates; needs `1 ≤ r < len`.
    pub fn split(v: &Vec0, r: usize) -> Result<Self, WitnessError> {
        if r == 0 || r >= v.len() {
            return Err(WitnessError::Invalid(format!("cannot split a vector of length {} after {r}", v.len())));
        }
        let (a, b) = v.split_at(r);
        Ok(SplitVec { a, b })
    }

    pub fn a(&self) -> &Vec0 {
        &self.a
    }

    pub fn b(&self) -> &Vec0 {
        &self.b
    }

    pub fn joined(&self) -> Vec0 {
        self.a.concat(&self.b)
    }

    /// Simple vectors have an all-zero first part.
    pub fn is_simple(&self) -> bool {
        self.a.is_zero()
    }
}

impl fmt::Display for SplitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.joined())
    }
}

/// Per-component data behind [`complex_period_constant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBound {
    /// Least `t` with `q(j) < t·σ(p)` for every complex period `(p; q)`.
    pub t: BigUint,
    /// Largest second-part coordinate of the constant.
    pub q: BigUint,
}

/// Per-component `t` and `q` for a presentation in `N₀^{r+s}`.
pub fn component_bounds(set: &SemilinearSet, r: usize) -> Result<Vec<ComponentBound>, WitnessError> {
    if r == 0 || r >= set.dim() {
        return Err(WitnessError::Invalid(format!("split point {r} outside 1..{}", set.dim())));
    }
    let mut out = Vec::new();
    for comp in set.components() {
        let mut t = BigUint::one();
        for p in comp.periods() {
            let (pa, pb) = p.split_at(r);
            let sigma = pa.sigma();
            if sigma.is_zero() {
                continue;
            }
            let need = pb.max_entry() / &sigma + 1u32;
            t = t.max(need);
        }
        let q = comp.constant().split_at(r).1.max_entry();
        out.push(ComponentBound { t, q });
    }
    Ok(out)
}

/// A constant `C ≥ 1` such that every `(a; b)` in the presentation with
/// `σ(a) ≥ 1` that uses only complex periods satisfies `b(j) < C·σ(a)`
/// for all `j`.
pub fn complex_period_constant(set: &SemilinearSet, r: usize) -> Result<BigUint, WitnessError> {
    let bounds = component_bounds(set, r)?;
    let top = bounds.iter().map(|c| c.t.clone().max(c.q.clone())).max().unwrap_or_default();
    Ok((top * 2u32).max(BigUint::one()))
}

/// A witness family: level map, gap function and a membership oracle for
/// the set under test.
pub struct WitnessFamily<'a> {
    r: usize,
    s: usize,
    a_of: Box<dyn Fn(u64) -> Option<Vec0> + 'a>,
    f: Box<dyn Fn(u64) -> BigUint + 'a>,
    member: Box<dyn Fn(&SplitVec) -> bool + 'a>,
}

impl<'a> WitnessFamily<'a> {
    /// `a_of` may return `None` for levels it cannot produce (for instance
    /// beyond a computed depth).
    pub fn new(
        r: usize,
        s: usize,
        a_of: impl Fn(u64) -> Option<Vec0> + 'a,
        f: impl Fn(u64) -> BigUint + 'a,
        member: impl Fn(&SplitVec) -> bool + 'a,
    ) -> Result<Self, WitnessError> {
        if r == 0 || s == 0 {
            return Err(WitnessError::Invalid("both parts need at least one coordinate".into()));
        }
        Ok(WitnessFamily { r, s, a_of: Box::new(a_of), f: Box::new(f), member: Box::new(member) })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn a(&self, k: u64) -> Option<Vec0> {
        (self.a_of)(k)
    }

    pub fn f(&self, k: u64) -> BigUint {
        (self.f)(k)
    }

    pub fn member(&self, v: &SplitVec) -> bool {
        v.a.len() == self.r && v.b.len() == self.s && (self.member)(v)
    }

    /// Membership of a joined vector; wrong lengths are non-members.
    pub fn member_joined(&self, v: &Vec0) -> bool {
        v.len() == self.r + self.s && SplitVec::split(v, self.r).is_ok_and(|sv| self.member(&sv))
    }
}

/// Lists every `b` with `(a; b)` in the family's set and all `b(j) ≤ cap`.
pub trait BEnumerator {
    fn enumerate(&self, a: &Vec0, cap: u64) -> Vec<Vec0>;
}

impl<F: Fn(&Vec0, u64) -> Vec<Vec0>> BEnumerator for F {
    fn enumerate(&self, a: &Vec0, cap: u64) -> Vec<Vec0> {
        self(a, cap)
    }
}

/// Enumerator that tests every point of `[0, cap]^s` against the oracle.
pub fn box_enumerator<'f, 'a>(family: &'f WitnessFamily<'a>) -> impl Fn(&Vec0, u64) -> Vec<Vec0> + 'f {
    move |a: &Vec0, cap: u64| {
        let s = family.s();
        let mut out = Vec::new();
        let mut point = vec![0u64; s];
        loop {
            let b = Vec0::from_u64s(&point);
            if family.member(&SplitVec::new(a.clone(), b.clone())) {
                out.push(b);
            }
            let Some(i) = point.iter().position(|&x| x < cap) else { break };
            point[i] += 1;
            point[..i].iter_mut().for_each(|x| *x = 0);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub k: u64,
    pub a: Option<Vec0>,
    pub f_k: BigUint,
    pub members: usize,
    pub exists: Verdict,
    pub large: Verdict,
    pub separated: Verdict,
}

impl LevelReport {
    pub fn passed(&self) -> bool {
        [self.exists, self.large, self.separated].iter().all(|v| *v == Verdict::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub cap: u64,
    pub levels: Vec<LevelReport>,
    /// Whether `f` kept reaching new maxima over the sampled levels,
    /// including at the last one. Says nothing beyond the horizon.
    pub f_growing_on_horizon: bool,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.f_growing_on_horizon && self.levels.iter().all(LevelReport::passed)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cap {}", self.cap)?;
        writeln!(f, "f growing on sampled horizon: {}", self.f_growing_on_horizon)?;
        writeln!(f, "k\ta\tf(k)\tmembers\t(i)\t(ii)\t(iii)")?;
        for l in &self.levels {
            let a = l.a.as_ref().map_or("-".to_string(), Vec0::to_string);
            writeln!(f, "{}\t{}\t{}\t{}\t{}\t{}\t{}", l.k, a, l.f_k, l.members, l.exists, l.large, l.separated)?;
        }
        Ok(())
    }
}

/// Checks the three witness conditions at each level, using `enumerator`
/// for the `b` vectors below `cap`. Each enumerated `b` is replayed
/// through the family oracle; an enumerator that reports a non-member
/// makes the existence condition fail.
pub fn check_witness_family(
    family: &WitnessFamily<'_>,
    levels: &[u64],
    enumerator: &impl BEnumerator,
    cap: u64,
) -> WitnessReport {
    let mut reports = Vec::new();
    let mut best: Option<BigUint> = None;
    let mut new_maxima = 0usize;
    let mut last_is_max = false;
    for &k in levels {
        let f_k = family.f(k);
        last_is_max = best.as_ref().is_none_or(|m| f_k > *m);
        if last_is_max {
            new_maxima += 1;
            best = Some(f_k.clone());
        }
        let Some(a) = family.a(k) else {
            let ind = Verdict::Indeterminate;
            reports.push(LevelReport { k, a: None, f_k, members: 0, exists: ind, large: ind, separated: ind });
            continue;
        };
        let bs = enumerator.enumerate(&a, cap);
        let genuine = bs.iter().all(|b| family.member(&SplitVec::new(a.clone(), b.clone())));
        let (exists, large, separated) = if !genuine {
            (Verdict::Fail, Verdict::Indeterminate, Verdict::Indeterminate)
        } else if bs.is_empty() {
            (Verdict::Indeterminate, Verdict::Indeterminate, Verdict::Indeterminate)
        } else {
            let threshold = a.sigma() * k;
            let large = bs.iter().all(|b| b.entries().iter().any(|x| *x >= threshold));
            let separated = bs
                .iter()
                .enumerate()
                .all(|(i, x)| bs[i + 1..].iter().all(|y| x == y || max_coordinate_gap(x, y) >= f_k));
            (Verdict::Pass, verdict(large), verdict(separated))
        };
        reports.push(LevelReport { k, a: Some(a), f_k, members: bs.len(), exists, large, separated });
    }
    let f_growing_on_horizon = levels.len() < 2 || (new_maxima >= 2 && last_is_max);
    WitnessReport { cap, levels: reports, f_growing_on_horizon }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn max_coordinate_gap(x: &Vec0, y: &Vec0) -> BigUint {
    x.entries().iter().zip(y.entries()).map(|(p, q)| if p > q { p - q } else { q - p }).max().unwrap_or_default()
}

/// A vector on which an explicit presentation and a witness oracle
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// In the oracle's set but not in the presentation.
    MissingMember { vector: Vec0 },
    /// In the presentation but not in the oracle's set. `base` is a member
    /// of both, and `vector = base + period` for a simple period used by
    /// `membership`'s component.
    SpuriousMember { vector: Vec0, base: Vec0, period: Vec0, membership: MembershipCertificate },
}

impl Certificate {
    pub fn vector(&self) -> &Vec0 {
        match self {
            Certificate::MissingMember { vector } | Certificate::SpuriousMember { vector, .. } => vector,
        }
    }

    /// Re-checks every claim against the presentation and the oracle.
    pub fn replay(&self, set: &SemilinearSet, family: &WitnessFamily<'_>) -> Result<bool, WitnessError> {
        Ok(match self {
            Certificate::MissingMember { vector } => family.member_joined(vector) && !set.member(vector)?,
            Certificate::SpuriousMember { vector, base, period, membership } => {
                membership.replay(set).as_ref() == Some(vector)
                    && &base.add(period) == vector
                    && family.member_joined(base)
                    && !family.member_joined(vector)
            }
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::MissingMember { vector } => {
                write!(f, "missing {vector}: in the oracle set, not in the presentation")
            }
            Certificate::SpuriousMember { vector, base, period, membership } => write!(
                f,
                "spurious {vector} = {base} + {period} (component {}): in the presentation, not in the oracle set",
                membership.component + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Certificate { constant: BigUint, level: u64, certificate: Certificate },
    Indeterminate { reason: String },
}

/// Searches for a vector separating `set` from the family's set.
///
/// The level is the first `k > C` (with `C` from
/// [`complex_period_constant`]) where `f(k)` exceeds every coordinate of
/// every simple period of `set`; levels are tried up to `max_level`. Each
/// enumerated `b` either is missing from `set`, or its membership uses a
/// simple period whose addition leaves the family's set.
pub fn refute_presentation(
    set: &SemilinearSet,
    family: &WitnessFamily<'_>,
    enumerator: &impl BEnumerator,
    cap: u64,
    max_level: u64,
) -> Result<Refutation, WitnessError> {
    let r = family.r();
    if set.dim() != r + family.s() {
        return Err(WitnessError::Invalid(format!(
            "presentation has dimension {}, family {}",
            set.dim(),
            r + family.s()
        )));
    }
    let constant = complex_period_constant(set, r)?;
    let simple_max = set
        .components()
        .iter()
        .flat_map(|c| c.periods())
        .filter(|p| p.split_at(r).0.is_zero())
        .map(Vec0::max_entry)
        .max()
        .unwrap_or_default();
    let start = u64::try_from(&constant).map_err(|_| WitnessError::Invalid("constant does not fit in u64".into()))? + 1;
    for level in start..=max_level {
        if family.f(level) <= simple_max {
            continue;
        }
        let Some(a) = family.a(level) else { continue };
        for b in enumerator.enumerate(&a, cap) {
            let sv = SplitVec::new(a.clone(), b);
            if !family.member(&sv) {
                continue;
            }
            let vector = sv.joined();
            let Some(membership) = set.certificate(&vector)? else {
                return Ok(Refutation::Certificate {
                    constant,
                    level,
                    certificate: Certificate::MissingMember { vector },
                });
            };
            let comp = &set.components()[membership.component];
            let used = comp
                .periods()
                .iter()
                .zip(&membership.coefficients)
                .find(|(p, alpha)| !alpha.is_zero() && !p.is_zero() && p.split_at(r).0.is_zero());
            if let Some((period, _)) = used {
                let grown = vector.add(period);
                if !family.member_joined(&grown) {
                    let membership = MembershipCertificate {
                        component: membership.component,
                        coefficients: bump_coefficient(comp.periods(), &membership.coefficients, period),
                    };
                    return Ok(Refutation::Certificate {
                        constant,
                        level,
                        certificate: Certificate::SpuriousMember {
                            vector: grown,
                            base: vector,
                            period: period.clone(),
                            membership,
                        },
                    });
                }
            }
        }
    }
    Ok(Refutation::Indeterminate {
        reason: format!("no separating vector for levels {start}..={max_level} with cap {cap}"),
    })
}

fn bump_coefficient(periods: &[Vec0], coefficients: &[BigUint], period: &Vec0) -> Vec<BigUint> {
    let mut out = coefficients.to_vec();
    if let Some(i) = periods.iter().position(|p| p == period) {
        out[i] += 1u32;
    }
    out
}

/// The family `L = {(n, 2ⁿ) : 1 ≤ n ≤ limit}` with `a_k = (n_k)` for the
/// least `n_k` with `2^{n_k} ≥ k·n_k` and `f(k) = k`.
pub fn powers_of_two_family(limit: u64) -> WitnessFamily<'static> {
    let a_of = move |k: u64| {
        let n = (1..=limit).find(|&n| BigUint::one() << n >= BigUint::from(k) * n)?;
        Some(Vec0::from_u64s(&[n]))
    };
    let member = move |v: &SplitVec| {
        let n = v.a().get(0);
        !n.is_zero() && *n <= BigUint::from(limit) && *v.b().get(0) == BigUint::one() << u64::try_from(n).unwrap_or(0)
    };
    WitnessFamily::new(1, 1, a_of, BigUint::from, member).expect("r = s = 1")
}

/// Exact enumerator for [`powers_of_two_family`]: the single `b = 2ⁿ`
/// when it fits under the cap.
pub fn powers_of_two_enumerator(limit: u64) -> impl Fn(&Vec0, u64) -> Vec<Vec0> {
    move |a: &Vec0, cap: u64| {
        let n = a.get(0);
        if n.is_zero() || *n > BigUint::from(limit) {
            return Vec::new();
        }
        let b = BigUint::one() << u64::try_from(n).unwrap_or(0);
        if b <= BigUint::from(cap) {
            vec![Vec0::new(vec![b]).expect("one entry")]
        } else {
            Vec::new()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vecset::LinearSet;

    fn lin(c: &[u64], ps: &[&[u64]]) -> LinearSet {
        LinearSet::from_u64s(c, ps)
    }

    #[test]
    fn constant_examples() {
        let s = SemilinearSet::single(lin(&[1, 2], &[&[1, 3]]));
        let bounds = component_bounds(&s, 1).unwrap();
        assert_eq!(bounds[0].t, BigUint::from(4u32));
        assert_eq!(complex_period_constant(&s, 1).unwrap(), BigUint::from(8u32));
        let simple = SemilinearSet::single(lin(&[2, 5], &[&[0, 1], &[0, 7]]));
        assert_eq!(complex_period_constant(&simple, 1).unwrap(), BigUint::from(10u32));
        let zero = SemilinearSet::single(lin(&[0, 0], &[]));
        assert_eq!(complex_period_constant(&zero, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(complex_period_constant(&SemilinearSet::empty(2), 1).unwrap(), BigUint::one());
        assert!(complex_period_constant(&zero, 2).is_err());
    }

    #[test]
    fn powers_of_two_pass_all_levels() {
        let fam = powers_of_two_family(1024);
        let levels: Vec<u64> = (1..=8).collect();
        let report = check_witness_family(&fam, &levels, &powers_of_two_enumerator(1024), 1 << 20);
        assert!(report.all_pass(), "{report}");
        let brute = check_witness_family(&fam, &levels[..4], &box_enumerator(&fam), 64);
        assert!(brute.all_pass(), "{brute}");
    }

    #[test]
    fn diagonal_fails_largeness() {
        let fam =
            WitnessFamily::new(1, 1, |k| Some(Vec0::from_u64s(&[k])), BigUint::from, |v: &SplitVec| v.a() == v.b())
                .unwrap();
        let report = check_witness_family(&fam, &[1, 2, 3], &box_enumerator(&fam), 10);
        assert_eq!(report.levels[0].large, Verdict::Pass);
        assert!(report.levels[1..].iter().all(|l| l.large == Verdict::Fail && l.exists == Verdict::Pass));
    }

    #[test]
    fn full_quadrant_fails_separation() {
        let fam =
            WitnessFamily::new(1, 1, |k| Some(Vec0::from_u64s(&[k])), BigUint::from, |_: &SplitVec| true).unwrap();
        let report = check_witness_family(&fam, &[2], &box_enumerator(&fam), 20);
        assert_eq!(report.levels[0].separated, Verdict::Fail);
        let lying = |_: &Vec0, _: u64| vec![Vec0::from_u64s(&[1])];
        let never =
            WitnessFamily::new(1, 1, |k| Some(Vec0::from_u64s(&[k])), BigUint::from, |_: &SplitVec| false).unwrap();
        assert_eq!(check_witness_family(&never, &[1], &lying, 5).levels[0].exists, Verdict::Fail);
        assert_eq!(
            check_witness_family(&never, &[1], &box_enumerator(&never), 5).levels[0].exists,
            Verdict::Indeterminate
        );
    }

    fn refute(set: &SemilinearSet) -> Certificate {
        let fam = powers_of_two_family(1024);
        let en = powers_of_two_enumerator(1024);
        match refute_presentation(set, &fam, &en, 1 << 20, 64).unwrap() {
            Refutation::Certificate { certificate, .. } => {
                assert!(certificate.replay(set, &fam).unwrap(), "{certificate}");
                certificate
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn refutation_examples() {
        let diag = SemilinearSet::single(lin(&[0, 0], &[&[1, 1]]));
        assert!(matches!(refute(&diag), Certificate::MissingMember { .. }));
        let c = refute(&SemilinearSet::empty(2));
        assert_eq!(c, Certificate::MissingMember { vector: Vec0::from_u64s(&[1, 2]) });
        let two = SemilinearSet::new(2, vec![lin(&[0, 0], &[&[1, 2]]), lin(&[0, 0], &[&[0, 1]])]).unwrap();
        assert!(matches!(refute(&two), Certificate::MissingMember { .. }));
        let quadrant = SemilinearSet::single(lin(&[0, 0], &[&[1, 0], &[0, 1]]));
        match refute(&quadrant) {
            Certificate::SpuriousMember { period, .. } => assert_eq!(period, Vec0::from_u64s(&[0, 1])),
            other => panic!("{other}"),
        }
    }
}
