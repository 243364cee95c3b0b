use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{power_word, Alphabet, GroupOracle};

/// `BS(m, n) = ⟨x, t | t⁻¹ xᵐ t = xⁿ⟩`, evaluated by Britton reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaumslagSolitar {
    m: i64,
    n: i64,
    alphabet: Alphabet,
}

/// `x^head t^{e₁} x^{g₁} … t^{e_r} x^{g_r}` with no pinch `t⁻¹ x^{mk} t`
/// or `t x^{nk} t⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsElt {
    head: BigInt,
    tail: Vec<(bool, BigInt)>,
}

impl BsElt {
    /// Number of stable letters in the reduced form.
    pub fn stable_length(&self) -> usize {
        self.tail.len()
    }
}

impl fmt::Display for BsElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.head.is_zero() && self.tail.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        if !self.head.is_zero() {
            parts.push(format!("x^{}", self.head));
        }
        for (up, g) in &self.tail {
            parts.push(if *up { "t".to_string() } else { "t^-1".to_string() });
            if !g.is_zero() {
                parts.push(format!("x^{g}"));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

const X: usize = 0;
const T: usize = 2;

impl BaumslagSolitar {
    pub fn new(m: i64, n: i64) -> Self {
        assert!(m != 0 && n != 0, "BS(m, n) needs nonzero m and n");
        BaumslagSolitar { m, n, alphabet: Alphabet::from_pairs(&[("x", "X"), ("t", "T")]) }
    }

    fn last_exponent<'a>(&self, e: &'a mut BsElt) -> &'a mut BigInt {
        match e.tail.last_mut() {
            Some((_, g)) => g,
            None => &mut e.head,
        }
    }

    fn push_stable(&self, e: &mut BsElt, up: bool) {
        // t⁻¹ x^{mk} t = x^{nk} and t x^{nk} t⁻¹ = x^{mk}
        let (divisor, multiplier) = if up { (self.m, self.n) } else { (self.n, self.m) };
        if let Some((prev_up, g)) = e.tail.last() {
            if *prev_up != up && g.is_multiple_of(&BigInt::from(divisor)) {
                let replaced = g / divisor * multiplier;
                e.tail.pop();
                *self.last_exponent(e) += replaced;
                return;
            }
        }
        e.tail.push((up, BigInt::zero()));
    }

    fn to_word(&self, e: &BsElt) -> Vec<usize> {
        let xs = |g: &BigInt| -> Vec<usize> {
            let count = g.abs().try_into().expect("exponent fits in memory");
            vec![if g.is_negative() { X + 1 } else { X }; count]
        };
        let mut w = xs(&e.head);
        for (up, g) in &e.tail {
            w.push(if *up { T } else { T + 1 });
            w.extend(xs(g));
        }
        w
    }
}

impl GroupOracle for BaumslagSolitar {
    type Elt = BsElt;

    fn name(&self) -> String {
        format!("bs:{},{}", self.m, self.n)
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> BsElt {
        BsElt { head: BigInt::zero(), tail: Vec::new() }
    }

    fn mul_letter(&self, e: &mut BsElt, letter: usize) {
        match letter {
            0 => *self.last_exponent(e) += 1,
            1 => *self.last_exponent(e) -= 1,
            2 => self.push_stable(e, true),
            _ => self.push_stable(e, false),
        }
    }

    fn mul(&self, x: &BsElt, y: &BsElt) -> BsElt {
        let mut out = x.clone();
        for a in self.to_word(y) {
            self.mul_letter(&mut out, a);
        }
        out
    }

    fn inv(&self, x: &BsElt) -> BsElt {
        self.eval(&self.alphabet.invert_word(&self.to_word(x)))
    }

    fn is_identity(&self, e: &BsElt) -> bool {
        e.tail.is_empty() && e.head.is_zero()
    }

    fn relators(&self) -> Vec<Vec<usize>> {
        let mut w = vec![T + 1];
        w.extend(power_word(&self.alphabet, X, self.m));
        w.push(T);
        w.extend(power_word(&self.alphabet, X, -self.n));
        vec![w]
    }
}
