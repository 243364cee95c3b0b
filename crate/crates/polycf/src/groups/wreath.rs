use std::collections::BTreeMap;
use std::fmt;

use super::{commutator_word, conjugate_by_power, power_word, Alphabet, GroupOracle};

/// `⟨b⟩ ≀ ⟨a⟩` with `b` of order `p` (lamplighter-type) or infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathProduct {
    modulus: Option<u64>,
    alphabet: Alphabet,
}

/// `(Π b_j^{f(j)}) · a^shift` where `b_j = b^{a^j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElt {
    pub shift: i64,
    pub support: BTreeMap<i64, i64>,
}

impl fmt::Display for WreathElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|(j, c)| format!("{j}:{c}")).collect();
        write!(f, "shift={} support={{{}}}", self.shift, parts.join(", "))
    }
}

const A: usize = 0;
const B: usize = 2;

impl WreathProduct {
    /// `C_p ≀ Z`; `None` for `p < 2`.
    pub fn cyclic(p: u64) -> Option<Self> {
        (p >= 2).then(|| WreathProduct { modulus: Some(p), alphabet: Self::letters() })
    }

    /// `Z ≀ Z`.
    pub fn integral() -> Self {
        WreathProduct { modulus: None, alphabet: Self::letters() }
    }

    fn letters() -> Alphabet {
        Alphabet::from_pairs(&[("a", "A"), ("b", "B")])
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    fn add_at(&self, e: &mut WreathElt, pos: i64, delta: i64) {
        let slot = e.support.entry(pos).or_insert(0);
        *slot += delta;
        if let Some(p) = self.modulus {
            *slot = slot.rem_euclid(p as i64);
        }
        if *slot == 0 {
            e.support.remove(&pos);
        }
    }
}

impl GroupOracle for WreathProduct {
    type Elt = WreathElt;

    fn name(&self) -> String {
        match self.modulus {
            Some(p) => format!("wreath:p={p}"),
            None => "wreath:Z".to_string(),
        }
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> WreathElt {
        WreathElt { shift: 0, support: BTreeMap::new() }
    }

    fn mul_letter(&self, e: &mut WreathElt, letter: usize) {
        match letter {
            0 => e.shift += 1,
            1 => e.shift -= 1,
            // a^s b = b_{-s} a^s
            2 => self.add_at(e, -e.shift, 1),
            _ => self.add_at(e, -e.shift, -1),
        }
    }

    fn mul(&self, x: &WreathElt, y: &WreathElt) -> WreathElt {
        let mut out = x.clone();
        for (&j, &c) in &y.support {
            self.add_at(&mut out, j - x.shift, c);
        }
        out.shift += y.shift;
        out
    }

    fn inv(&self, x: &WreathElt) -> WreathElt {
        let mut out = WreathElt { shift: -x.shift, support: BTreeMap::new() };
        for (&j, &c) in &x.support {
            self.add_at(&mut out, j + x.shift, -c);
        }
        out
    }

    fn is_identity(&self, e: &WreathElt) -> bool {
        e.shift == 0 && e.support.is_empty()
    }

    fn relators(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (-5..=5)
            .map(|i| commutator_word(&self.alphabet, &[B], &conjugate_by_power(&self.alphabet, &[B], A, i)))
            .collect();
        if let Some(p) = self.modulus {
            out.push(power_word(&self.alphabet, B, p as i64));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates_land_on_expected_positions() {
        let g = WreathProduct::cyclic(2).unwrap();
        let e = g.eval(&g.parse_word("AbaB").unwrap());
        assert_eq!(e.support, BTreeMap::from([(0, 1), (1, 1)]));
        let z = WreathProduct::integral();
        let e = z.eval(&z.parse_word("AbaB").unwrap());
        assert_eq!(e.support, BTreeMap::from([(0, -1), (1, 1)]));
        assert!(!z.in_word_problem(&z.parse_word("bb").unwrap()));
    }
}
