use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{commutator_word, conjugate_by_power, power_word, Alphabet, GroupError, GroupOracle};
use crate::linalg::QMatrix;

/// Coefficients `(c₀, …, c_s)` of the relator `b^{c₀} (b^a)^{c₁} ⋯ (b^{a^s})^{c_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GcSpec {
    coeffs: Vec<i64>,
}

impl GcSpec {
    /// Requires `s ≥ 1`, nonzero end coefficients and coprime entries.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, GroupError> {
        if coeffs.len() < 2 {
            return Err(GroupError::InvalidSpec("need at least two coefficients".into()));
        }
        if coeffs[0] == 0 || coeffs[coeffs.len() - 1] == 0 {
            return Err(GroupError::InvalidSpec("end coefficients must be nonzero".into()));
        }
        if coeffs.iter().fold(0i64, |g, &c| g.gcd(&c)) != 1 {
            return Err(GroupError::InvalidSpec("coefficients must be coprime".into()));
        }
        Ok(GcSpec { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn s(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `(c_s, …, c₀)`, which presents an isomorphic group.
    pub fn reverse(&self) -> GcSpec {
        GcSpec { coeffs: self.coeffs.iter().rev().copied().collect() }
    }

    /// `|c₀| = |c_s| = 1`, where the group is polycyclic.
    pub fn is_polycyclic_case(&self) -> bool {
        self.coeffs[0].abs() == 1 && self.coeffs[self.s()].abs() == 1
    }
}

impl fmt::Display for GcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The `s × s` matrix with ones on the subdiagonal and last column
/// `(−c₀/c_s, …, −c_{s−1}/c_s)`.
pub fn gc_matrix(spec: &GcSpec) -> QMatrix {
    let s = spec.s();
    let cs = BigInt::from(spec.coeffs[s]);
    let mut m = QMatrix::zero(s);
    for i in 0..s - 1 {
        m.set(i + 1, i, BigRational::one());
    }
    for i in 0..s {
        m.set(i, s - 1, -BigRational::new(BigInt::from(spec.coeffs[i]), cs.clone()));
    }
    m
}

/// `G(c)` realised inside `Q^s ⋊ Z`, with `b` the first basis vector and
/// `a` the generator of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcGroup {
    spec: GcSpec,
    matrix: QMatrix,
    inverse: QMatrix,
    /// With `true`, `(v₁,t₁)(v₂,t₂) = (v₁ + A^{−t₁}v₂, t₁+t₂)`; with `false`
    /// the exponent is `+t₁`.
    inverse_action: bool,
    alphabet: Alphabet,
}

/// `v · y^shift` with `v ∈ Q^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcElt {
    pub vec: Vec<BigRational>,
    pub shift: i64,
}

impl fmt::Display for GcElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vec.iter().map(BigRational::to_string).collect();
        write!(f, "vec=({}) shift={}", parts.join(", "), self.shift)
    }
}

/// What a letter stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Stable(i64),
    Basis(usize, i64),
}

impl GcGroup {
    /// Builds the group and fixes the action convention by requiring the
    /// coefficient relator to evaluate to the identity.
    pub fn new(spec: GcSpec) -> Result<Self, GroupError> {
        let matrix = gc_matrix(&spec);
        let inverse = matrix.inverse().expect("c₀ ≠ 0 makes the matrix invertible");
        let mut pairs: Vec<(String, String)> = [("a", "A"), ("y", "Y"), ("b", "B"), ("x", "X")]
            .iter()
            .map(|(p, q)| (p.to_string(), q.to_string()))
            .collect();
        for i in 1..=spec.s() {
            pairs.push((format!("x{i}"), format!("X{i}")));
        }
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let alphabet = Alphabet::from_pairs(&refs);
        for inverse_action in [true, false] {
            let g = GcGroup {
                spec: spec.clone(),
                matrix: matrix.clone(),
                inverse: inverse.clone(),
                inverse_action,
                alphabet: alphabet.clone(),
            };
            if g.in_word_problem(&g.coefficient_relator()) {
                return Ok(g);
            }
        }
        Err(GroupError::NoConvention)
    }

    pub fn spec(&self) -> &GcSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    /// Whether the action uses `A^{−t}` (the convention in which
    /// `y⁻¹ v y = A v`).
    pub fn uses_inverse_action(&self) -> bool {
        self.inverse_action
    }

    fn letter(&self, letter: usize) -> Letter {
        let sign = if letter.is_multiple_of(2) { 1 } else { -1 };
        match letter / 2 {
            0 | 1 => Letter::Stable(sign),
            2 | 3 => Letter::Basis(0, sign),
            k => Letter::Basis(k - 4, sign),
        }
    }

    /// `φ(t) v` where `φ(t)` is `A^{−t}` or `A^{t}` depending on the
    /// convention.
    fn act(&self, t: i64, v: &[BigRational]) -> Vec<BigRational> {
        let t = if self.inverse_action { -t } else { t };
        let m = if t >= 0 { &self.matrix } else { &self.inverse };
        let mut out = v.to_vec();
        for _ in 0..t.unsigned_abs() {
            out = m.mul_vec(&out);
        }
        out
    }

    fn b(&self) -> usize {
        4
    }

    fn a(&self) -> usize {
        0
    }

    /// `b^{c₀} (b^a)^{c₁} ⋯ (b^{a^s})^{c_s}` over letters `a`, `b`.
    pub fn coefficient_relator(&self) -> Vec<usize> {
        let mut w = Vec::new();
        for (i, &c) in self.spec.coeffs.iter().enumerate() {
            let bc = power_word(&self.alphabet, self.b(), c);
            w.extend(conjugate_by_power(&self.alphabet, &bc, self.a(), i as i64));
        }
        w
    }

    /// Rewrites a word over any letters into the letters `a A b B`. Basis
    /// letters `x_i` become the conjugates of `b` they equal.
    pub fn expand_to_ab(&self, word: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for &l in word {
            match self.letter(l) {
                Letter::Stable(1) => out.push(self.a()),
                Letter::Stable(_) => out.push(self.a() + 1),
                Letter::Basis(i, sign) => {
                    let j = if self.inverse_action { i as i64 } else { -(i as i64) };
                    let b = if sign > 0 { self.b() } else { self.b() + 1 };
                    out.extend(conjugate_by_power(&self.alphabet, &[b], self.a(), j));
                }
            }
        }
        out
    }

    /// Maps a word of the group with reversed coefficients into this group
    /// through `a' ↦ a⁻¹`, `b' ↦ b^{a^s}`.
    pub fn translate_from_reverse(&self, reversed: &GcGroup, word: &[usize]) -> Vec<usize> {
        let s = self.spec.s() as i64;
        let mut out = Vec::new();
        for l in reversed.expand_to_ab(word) {
            match l {
                0 => out.push(self.a() + 1),
                1 => out.push(self.a()),
                4 => out.extend(conjugate_by_power(&self.alphabet, &[self.b()], self.a(), s)),
                _ => out.extend(conjugate_by_power(&self.alphabet, &[self.b() + 1], self.a(), s)),
            }
        }
        out
    }
}

impl GroupOracle for GcGroup {
    type Elt = GcElt;

    fn name(&self) -> String {
        let parts: Vec<String> = self.spec.coeffs.iter().map(i64::to_string).collect();
        format!("gc:{}", parts.join(","))
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> GcElt {
        GcElt { vec: vec![BigRational::zero(); self.spec.s()], shift: 0 }
    }

    fn mul_letter(&self, e: &mut GcElt, letter: usize) {
        match self.letter(letter) {
            Letter::Stable(d) => e.shift += d,
            Letter::Basis(i, sign) => {
                let mut unit = vec![BigRational::zero(); self.spec.s()];
                unit[i] = BigRational::from_integer(BigInt::from(sign));
                for (x, y) in e.vec.iter_mut().zip(self.act(e.shift, &unit)) {
                    *x += y;
                }
            }
        }
    }

    fn mul(&self, x: &GcElt, y: &GcElt) -> GcElt {
        let moved = self.act(x.shift, &y.vec);
        GcElt { vec: x.vec.iter().zip(moved).map(|(a, b)| a + b).collect(), shift: x.shift + y.shift }
    }

    fn inv(&self, x: &GcElt) -> GcElt {
        let back = self.act(-x.shift, &x.vec);
        GcElt { vec: back.into_iter().map(|a| -a).collect(), shift: -x.shift }
    }

    fn is_identity(&self, e: &GcElt) -> bool {
        e.shift == 0 && e.vec.iter().all(Zero::is_zero)
    }

    fn relators(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (-5..=5)
            .map(|i| {
                commutator_word(
                    &self.alphabet,
                    &[self.b()],
                    &conjugate_by_power(&self.alphabet, &[self.b()], self.a(), i),
                )
            })
            .collect();
        out.push(self.coefficient_relator());
        out
    }
}
