use std::collections::BTreeMap;
use std::fmt;

use super::{commutator_word, conjugate_by_power, power_word, Alphabet, GroupOracle};

/// The group generated by `a` and `b = b₀` with `b_i^a = b_{i+1}`,
/// `[b_i, b_{i+j}] = c_j`, `b_i^p = c_j^p = 1` and every `c_j` central.
///
/// Elements are kept as `(Π_{i ascending} b_i^{f_i}) (Π c_j^{g_j}) a^shift`.
/// Moving `b_j^e` left past `b_i^f` with `i > j` contributes
/// `[b_i, b_j]^{fe} = c_{i−j}^{−fe}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcGroup {
    p: u64,
    alphabet: Alphabet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcElt {
    pub shift: i64,
    pub bpart: BTreeMap<i64, u64>,
    pub cpart: BTreeMap<i64, u64>,
}

impl fmt::Display for AbcElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &BTreeMap<i64, u64>| m.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(", ");
        write!(f, "shift={} b={{{}}} c={{{}}}", self.shift, show(&self.bpart), show(&self.cpart))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

const A: usize = 0;
const B: usize = 2;

impl AbcGroup {
    /// `None` unless `p` is prime.
    pub fn new(p: u64) -> Option<Self> {
        is_prime(p).then(|| AbcGroup { p, alphabet: Alphabet::from_pairs(&[("a", "A"), ("b", "B")]) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn bump(&self, map: &mut BTreeMap<i64, u64>, key: i64, delta: u64) {
        let slot = map.entry(key).or_insert(0);
        *slot = (*slot + delta) % self.p;
        if *slot == 0 {
            map.remove(&key);
        }
    }

    /// Right multiplication by `b_j^e`.
    fn push_b(&self, e: &mut AbcElt, j: i64, exp: u64) {
        let exp = exp % self.p;
        if exp == 0 {
            return;
        }
        let above: Vec<(i64, u64)> = e.bpart.range(j + 1..).map(|(&i, &f)| (i, f)).collect();
        for (i, f) in above {
            let product = f * exp % self.p;
            self.bump(&mut e.cpart, i - j, self.p - product);
        }
        self.bump(&mut e.bpart, j, exp);
    }

    fn b_conjugate(&self, i: i64) -> Vec<usize> {
        conjugate_by_power(&self.alphabet, &[B], A, i)
    }

    /// `c_j = [b₀, b_j]` as a word.
    pub fn c_word(&self, j: i64) -> Vec<usize> {
        commutator_word(&self.alphabet, &[B], &self.b_conjugate(j))
    }
}

impl GroupOracle for AbcGroup {
    type Elt = AbcElt;

    fn name(&self) -> String {
        format!("abc:p={}", self.p)
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> AbcElt {
        AbcElt { shift: 0, bpart: BTreeMap::new(), cpart: BTreeMap::new() }
    }

    fn mul_letter(&self, e: &mut AbcElt, letter: usize) {
        match letter {
            0 => e.shift += 1,
            1 => e.shift -= 1,
            // a^s b₀ a^{−s} = b_{−s}
            2 => self.push_b(e, -e.shift, 1),
            _ => self.push_b(e, -e.shift, self.p - 1),
        }
    }

    fn mul(&self, x: &AbcElt, y: &AbcElt) -> AbcElt {
        let mut out = x.clone();
        for (&i, &f) in &y.bpart {
            self.push_b(&mut out, i - x.shift, f);
        }
        for (&j, &g) in &y.cpart {
            self.bump(&mut out.cpart, j, g);
        }
        out.shift += y.shift;
        out
    }

    fn inv(&self, x: &AbcElt) -> AbcElt {
        // a^{−s} C⁻¹ F⁻¹, with F⁻¹ collected in descending order and every
        // index moved by +s when the power of a is carried to the right.
        let mut out = self.identity();
        for (&i, &f) in x.bpart.iter().rev() {
            self.push_b(&mut out, i + x.shift, self.p - f);
        }
        for (&j, &g) in &x.cpart {
            self.bump(&mut out.cpart, j, self.p - g);
        }
        out.shift = -x.shift;
        out
    }

    fn is_identity(&self, e: &AbcElt) -> bool {
        e.shift == 0 && e.bpart.is_empty() && e.cpart.is_empty()
    }

    fn relators(&self) -> Vec<Vec<usize>> {
        let al = &self.alphabet;
        let b_power = power_word(al, B, self.p as i64);
        let mut out: Vec<Vec<usize>> = (-4..=4).map(|i| conjugate_by_power(al, &b_power, A, i)).collect();
        for j in 1..=4 {
            let c = self.c_word(j);
            out.push(c.repeat(self.p as usize));
            out.push(commutator_word(al, &c, &[A]));
            for i in -4..=4 {
                let mut w = commutator_word(al, &self.b_conjugate(i), &self.b_conjugate(i + j));
                w.extend(al.invert_word(&c));
                out.push(w);
                out.push(commutator_word(al, &c, &self.b_conjugate(i)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_is_central_generator() {
        let g = AbcGroup::new(2).unwrap();
        let e = g.eval(&g.parse_word("BABabAba").unwrap());
        assert_eq!(e.cpart, BTreeMap::from([(1, 1)]));
        assert!(e.bpart.is_empty() && e.shift == 0);
        let g3 = AbcGroup::new(3).unwrap();
        let e = g3.eval(&g3.c_word(2));
        assert_eq!(e.cpart, BTreeMap::from([(2, 1)]));
        assert!(AbcGroup::new(4).is_none());
    }
}
