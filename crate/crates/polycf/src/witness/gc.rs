use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{SplitVec, WitnessError, WitnessFamily};
use crate::groups::{GcGroup, GcSpec, GroupOracle};
use crate::linalg::QMatrix;
use crate::vecset::{Permutation, Vec0};

/// Valuations at a fixed prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicCtx {
    p: u64,
}

impl PadicCtx {
    pub fn new(p: u64) -> Result<Self, WitnessError> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(WitnessError::NotPrime(p));
        }
        Ok(PadicCtx { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn int_valuation(&self, n: &BigInt) -> i64 {
        let p = BigInt::from(self.p);
        let mut n = n.abs();
        let mut v = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            v += 1;
        }
        v
    }

    /// `v_p(x)`, or `None` for `x = 0`.
    pub fn valuation(&self, x: &BigRational) -> Option<i64> {
        (!x.is_zero()).then(|| self.int_valuation(x.numer()) - self.int_valuation(x.denom()))
    }

    /// `v̄_p(x) = −v_p(x)`: positive exactly when `p` divides the reduced
    /// denominator. `None` for `x = 0`.
    pub fn neg_valuation(&self, x: &BigRational) -> Option<i64> {
        self.valuation(x).map(|v| -v)
    }
}

/// Sign class of the final column of `M^{ι_k}` at one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColumnType {
    /// Nonnegative entry.
    One,
    /// Negative entry.
    Two,
}

impl ColumnType {
    fn of(x: &BigRational) -> Self {
        if x.is_negative() {
            ColumnType::Two
        } else {
            ColumnType::One
        }
    }

    /// The exponent sign `ε` used for this row's block in the test language.
    pub fn epsilon(self) -> i64 {
        match self {
            ColumnType::One => -1,
            ColumnType::Two => 1,
        }
    }
}

/// Everything the growth argument computes for a Gc-group up to depth `K`.
///
/// Vectors indexed by level store level `k` at position `k − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcPipelineState {
    /// The spec actually used; reversed from the input when its last
    /// coefficient was `±1`.
    pub spec: GcSpec,
    pub reversed: bool,
    pub matrix: QMatrix,
    pub padic: PadicCtx,
    /// 1-based row index `N`.
    pub row: usize,
    /// `max_i v̄_p(a_i)` over the last column of the matrix.
    pub top_valuation: i64,
    pub depth: u64,
    pub iota: Vec<u64>,
    /// `ℓ_i` for `i = 1..=depth·s`.
    pub ell: Vec<BigInt>,
    pub lambda: Vec<BigInt>,
    /// Final column of `M^{ι_k}`.
    pub columns: Vec<Vec<BigRational>>,
    /// Levels sharing the most common sign pattern, increasing.
    pub n_seq: Vec<u64>,
    /// That sign pattern, one entry per row.
    pub types: Vec<ColumnType>,
}

impl GcPipelineState {
    pub fn p(&self) -> u64 {
        self.padic.p()
    }

    pub fn iota(&self, k: u64) -> Option<u64> {
        self.iota.get(usize::try_from(k).ok()?.checked_sub(1)?).copied()
    }

    pub fn lambda(&self, k: u64) -> Option<&BigInt> {
        self.lambda.get(usize::try_from(k).ok()?.checked_sub(1)?)
    }

    pub fn ell(&self, i: u64) -> Option<&BigInt> {
        self.ell.get(usize::try_from(i).ok()?.checked_sub(1)?)
    }

    /// `v̄_p` of the entry `(N, s)` of `M^{ι_k}`.
    pub fn pivot_valuation(&self, k: u64) -> Option<i64> {
        let col = self.columns.get(usize::try_from(k).ok()?.checked_sub(1)?)?;
        self.padic.neg_valuation(&col[self.row - 1])
    }

    /// The level of the sequence used for witness level `t`: the first
    /// `n` in `n_seq` with `n ≥ t` and `λ_n ≥ 2t·ι_n`.
    pub fn level_for(&self, t: u64) -> Option<u64> {
        self.n_seq.iter().copied().find(|&n| {
            n >= t && {
                let iota = BigInt::from(self.iota(n).expect("n_seq within depth"));
                *self.lambda(n).expect("n_seq within depth") >= BigInt::from(2 * t) * iota
            }
        })
    }
}

fn lcm_of_denominators(col: &[BigRational]) -> BigInt {
    col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Runs the growth computation to depth `depth`.
pub fn gc_pipeline(spec: &GcSpec, depth: u64) -> Result<GcPipelineState, WitnessError> {
    if spec.is_polycyclic_case() {
        return Err(WitnessError::NotProper(spec.to_string()));
    }
    if depth == 0 {
        return Err(WitnessError::Invalid("depth must be at least 1".into()));
    }
    let reversed = spec.coeffs()[spec.s()].abs() == 1;
    let spec = if reversed { spec.reverse() } else { spec.clone() };
    let s = spec.s();
    let matrix = crate::groups::gc_matrix(&spec);
    let last = matrix.column(s - 1);
    let p = last
        .iter()
        .filter_map(|x| smallest_prime_factor(x.denom()))
        .next()
        .ok_or_else(|| WitnessError::Invalid("every entry of the last column is an integer".into()))?;
    let padic = PadicCtx::new(p)?;
    let top_valuation = last.iter().filter_map(|x| padic.neg_valuation(x)).max().expect("some entry is nonzero");
    let row =
        (0..s).rev().find(|&i| padic.neg_valuation(&last[i]) == Some(top_valuation)).expect("maximum attained") + 1;

    let horizon = depth * s as u64;
    let mut power = QMatrix::identity(s);
    let mut finals = Vec::new();
    let mut ell = Vec::new();
    for _ in 0..horizon {
        power = power.mul(&matrix);
        let col = power.column(s - 1);
        ell.push(lcm_of_denominators(&col));
        finals.push(col);
    }
    let mut iota = Vec::new();
    let mut lambda = Vec::new();
    let mut columns = Vec::new();
    for k in 1..=depth {
        let bound = k * s as u64;
        let i = (1..=bound)
            .find(|&i| padic.neg_valuation(&finals[i as usize - 1][row - 1]).is_some_and(|v| v >= k as i64))
            .ok_or(WitnessError::GrowthBound { k, bound })?;
        iota.push(i);
        lambda.push(ell[i as usize - 1].clone());
        columns.push(finals[i as usize - 1].clone());
    }

    let mut buckets: BTreeMap<Vec<ColumnType>, Vec<u64>> = BTreeMap::new();
    for (idx, col) in columns.iter().enumerate() {
        buckets.entry(col.iter().map(ColumnType::of).collect()).or_default().push(idx as u64 + 1);
    }
    let (types, n_seq) =
        buckets.into_iter().max_by(|(_, x), (_, y)| x.len().cmp(&y.len()).then(y[0].cmp(&x[0]))).expect("depth ≥ 1");

    Ok(GcPipelineState {
        spec,
        reversed,
        matrix,
        padic,
        row,
        top_valuation,
        depth,
        iota,
        ell,
        lambda,
        columns,
        n_seq,
        types,
    })
}

fn smallest_prime_factor(n: &BigInt) -> Option<u64> {
    let n = n.abs();
    if n <= BigInt::one() {
        return None;
    }
    let mut d = 2u64;
    loop {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            return u64::try_from(&n).ok();
        }
        if n.is_multiple_of(&bd) {
            return Some(d);
        }
        d += 1;
    }
}

/// The test language for a Gc-group together with its witness family.
///
/// A tuple `(k, λ, k′, v₁, …, v_s)` stands for the word
/// `(y⁻¹)^k x_s^λ y^{k′} (x₁^{ε₁})^{v₁} ⋯ (x_s^{ε_s})^{v_s}`, with `ε_i`
/// from the column types and `λ ≥ 1`. After swapping the second and third
/// coordinates the first part is `(k, k′)` and the second `(λ, v)`.
pub struct GcWitness {
    state: GcPipelineState,
    group: GcGroup,
}

impl GcWitness {
    pub fn state(&self) -> &GcPipelineState {
        &self.state
    }

    pub fn group(&self) -> &GcGroup {
        &self.group
    }

    /// `τ = (2, 3)` on `N₀^{s+3}`.
    pub fn tau(&self) -> Permutation {
        Permutation::transposition(self.state.spec.s() + 3, 2, 3).expect("s + 3 ≥ 4")
    }

    /// Letters conjugating `x_s` towards `M^k e_s`.
    fn stable_letters(&self) -> (usize, usize) {
        let al = self.group.alphabet();
        let (y, yinv) = (al.index("y").expect("y"), al.index("Y").expect("Y"));
        if self.group.uses_inverse_action() {
            (yinv, y)
        } else {
            (y, yinv)
        }
    }

    fn basis_letter(&self, i: usize, sign: i64) -> usize {
        let name = if sign > 0 { format!("x{i}") } else { format!("X{i}") };
        self.group.alphabet().index(&name).expect("basis letter")
    }

    /// The word of a tuple in the unswapped order, or `None` if the tuple
    /// is outside the test language.
    pub fn word(&self, tuple: &[u64]) -> Option<Vec<usize>> {
        let s = self.state.spec.s();
        if tuple.len() != s + 3 || tuple[1] == 0 || tuple[0] != tuple[2] {
            return None;
        }
        let (down, up) = self.stable_letters();
        let mut w = vec![down; tuple[0] as usize];
        w.extend(std::iter::repeat_n(self.basis_letter(s, 1), tuple[1] as usize));
        w.extend(std::iter::repeat_n(up, tuple[2] as usize));
        for (i, &v) in tuple[3..].iter().enumerate() {
            let letter = self.basis_letter(i + 1, self.state.types[i].epsilon());
            w.extend(std::iter::repeat_n(letter, v as usize));
        }
        Some(w)
    }

    /// Whether an unswapped tuple is in the Parikh image of the word
    /// problem intersected with the test language.
    pub fn phi_member(&self, tuple: &[u64]) -> bool {
        self.word(tuple).is_some_and(|w| self.group.in_word_problem(&w))
    }

    /// All unswapped tuples with first coordinate `k` and entries at most
    /// `cap`. The conjugated prefix is evaluated in the group; the suffix
    /// blocks act on independent coordinates, so at most one `v` fits each
    /// `λ`. Every candidate is replayed through the word problem.
    pub fn members_at(&self, k: u64, cap: u64) -> Vec<Vec<u64>> {
        let (down, up) = self.stable_letters();
        let s = self.state.spec.s();
        let xs = self.basis_letter(s, 1);
        let mut prefix = self.group.eval(&vec![down; k as usize]);
        let tail = self.group.eval(&vec![up; k as usize]);
        let mut out = Vec::new();
        for lambda in 1..=cap {
            self.group.mul_letter(&mut prefix, xs);
            let conj = self.group.mul(&prefix, &tail);
            debug_assert_eq!(conj.shift, 0);
            let Some(v) = self.cancelling_exponents(&conj.vec, cap) else { continue };
            let mut tuple = vec![k, lambda, k];
            tuple.extend(v);
            if self.phi_member(&tuple) {
                out.push(tuple);
            }
        }
        out
    }

    fn cancelling_exponents(&self, u: &[BigRational], cap: u64) -> Option<Vec<u64>> {
        u.iter()
            .zip(&self.state.types)
            .map(|(x, t)| {
                let needed = -x * BigRational::from_integer(BigInt::from(t.epsilon()));
                if !needed.is_integer() || needed.is_negative() {
                    return None;
                }
                u64::try_from(needed.to_integer()).ok().filter(|&e| e <= cap)
            })
            .collect()
    }

    /// Swapped members with first part `a`.
    pub fn enumerate_b(&self, a: &Vec0, cap: u64) -> Vec<Vec0> {
        let (Some(k), Some(k2)) = (a.get(0).try_into().ok(), a.get(1).try_into().ok()) else {
            return Vec::new();
        };
        if a.len() != 2 || k != k2 {
            return Vec::new();
        }
        self.members_at(k, cap)
            .into_iter()
            .map(|t| Vec0::from_u64s(&t[1..2].iter().chain(&t[3..]).copied().collect::<Vec<_>>()))
            .collect()
    }

    /// The family with `a_t = (ι_n, ι_n)` for `n = level_for(t)` and
    /// `f(t) = p^t`, over swapped coordinates.
    pub fn family(&self) -> WitnessFamily<'_> {
        let s = self.state.spec.s();
        let a_of = move |t: u64| {
            let n = self.state.level_for(t)?;
            let i = self.state.iota(n)?;
            Some(Vec0::from_u64s(&[i, i]))
        };
        let p = self.state.p();
        let f = move |t: u64| BigUint::from(p).pow(u32::try_from(t).unwrap_or(u32::MAX));
        let member = move |v: &SplitVec| {
            let a = v.a().to_u64s();
            let b = v.b().to_u64s();
            match (a, b) {
                (Some(a), Some(b)) => {
                    let mut tuple = vec![a[0], b[0], a[1]];
                    tuple.extend(&b[1..]);
                    self.phi_member(&tuple)
                }
                _ => false,
            }
        };
        WitnessFamily::new(2, s + 1, a_of, f, member).expect("r = 2, s + 1 ≥ 2")
    }

    /// Expected generator `b` for witness level `t`: `(λ_n, λ_n·|m_{is}|)`
    /// with `n = level_for(t)`.
    pub fn generator(&self, t: u64) -> Option<Vec0> {
        let n = self.state.level_for(t)?;
        let lambda = BigRational::from_integer(self.state.lambda(n)?.clone());
        let col = self.state.columns.get(n as usize - 1)?;
        let mut entries = vec![lambda.to_integer().to_biguint()?];
        for x in col {
            entries.push((x.abs() * &lambda).to_integer().to_biguint()?);
        }
        Vec0::new(entries).ok()
    }
}

/// Builds the witness language from a computed pipeline.
pub fn gc_witness_language(state: GcPipelineState) -> Result<GcWitness, WitnessError> {
    let group = GcGroup::new(state.spec.clone())?;
    Ok(GcWitness { state, group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::check_witness_family;

    fn spec(c: &[i64]) -> GcSpec {
        GcSpec::new(c.to_vec()).unwrap()
    }

    #[test]
    fn valuations() {
        let ctx = PadicCtx::new(2).unwrap();
        assert_eq!(ctx.neg_valuation(&BigRational::new(3.into(), 8.into())), Some(3));
        assert_eq!(ctx.neg_valuation(&BigRational::new(12.into(), 1.into())), Some(-2));
        assert_eq!(ctx.neg_valuation(&BigRational::zero()), None);
        assert!(PadicCtx::new(9).is_err());
    }

    #[test]
    fn halving_spec() {
        let st = gc_pipeline(&spec(&[1, -2]), 10).unwrap();
        assert!(!st.reversed);
        assert_eq!((st.p(), st.row), (2, 1));
        for k in 1..=10u64 {
            assert_eq!(st.iota(k), Some(k));
            assert_eq!(st.lambda(k), Some(&(BigInt::one() << k)));
            assert_eq!(st.ell(k), Some(&(BigInt::one() << k)));
        }
        assert_eq!(st.types, vec![ColumnType::One]);
        assert_eq!(st.n_seq, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn reversal_and_rejection() {
        let st = gc_pipeline(&spec(&[-2, 1]), 4).unwrap();
        assert!(st.reversed);
        assert_eq!(st.spec.coeffs(), &[1, -2]);
        assert!(matches!(gc_pipeline(&spec(&[-1, 3, 1]), 4), Err(WitnessError::NotProper(_))));
    }

    #[test]
    fn two_dimensional_growth() {
        let st = gc_pipeline(&spec(&[-1, 0, 2]), 12).unwrap();
        assert_eq!(st.p(), 2);
        for k in 1..=12u64 {
            assert!(st.iota(k).unwrap() <= 2 * k);
            assert!(st.pivot_valuation(k).unwrap() >= k as i64);
            assert!(*st.lambda(k).unwrap() >= BigInt::one() << k);
        }
    }

    #[test]
    fn language_examples() {
        let w = gc_witness_language(gc_pipeline(&spec(&[1, -2]), 8).unwrap()).unwrap();
        assert!(w.phi_member(&[3, 8, 3, 1]));
        assert!(w.phi_member(&[1, 2, 1, 1]));
        assert!(!w.phi_member(&[3, 12, 3, 1]));
        assert!(!w.phi_member(&[3, 8, 2, 1]));
        let tuple = Vec0::from_u64s(&[3, 8, 3, 1]).permute(&w.tau()).unwrap();
        assert_eq!(tuple, Vec0::from_u64s(&[3, 3, 8, 1]));
        assert_eq!(w.members_at(3, 20), vec![vec![3, 8, 3, 1], vec![3, 16, 3, 2]]);
    }

    #[test]
    fn family_passes_small_levels() {
        let w = gc_witness_language(gc_pipeline(&spec(&[1, -2]), 10).unwrap()).unwrap();
        let fam = w.family();
        let en = |a: &Vec0, cap: u64| w.enumerate_b(a, cap);
        let report = check_witness_family(&fam, &[1, 2, 3], &en, 256);
        assert!(report.all_pass(), "{report}");
        assert_eq!(w.generator(1), Some(Vec0::from_u64s(&[2, 1])));
    }
}
