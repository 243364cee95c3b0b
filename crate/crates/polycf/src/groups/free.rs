use std::fmt;

use super::{commutator_word, Alphabet, GroupOracle};

const SHORT_NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// Free group of finite rank. Generators are `x y z w` up to rank 4 and
/// `x1 .. xn` beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
    alphabet: Alphabet,
}

/// Freely reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElt {
    letters: Vec<usize>,
    names: Vec<String>,
}

impl FreeElt {
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}

impl fmt::Display for FreeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for &a in &self.letters {
            f.write_str(&self.names[a])?;
        }
        Ok(())
    }
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        let names: Vec<(String, String)> = (1..=rank)
            .map(|i| {
                let g = if rank <= SHORT_NAMES.len() { SHORT_NAMES[i - 1].to_string() } else { format!("x{i}") };
                let inv = g.to_uppercase();
                (g, inv)
            })
            .collect();
        let pairs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        FreeGroup { rank, alphabet: Alphabet::from_pairs(&pairs) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl GroupOracle for FreeGroup {
    type Elt = FreeElt;

    fn name(&self) -> String {
        format!("free:{}", self.rank)
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> FreeElt {
        FreeElt { letters: Vec::new(), names: self.alphabet.names().to_vec() }
    }

    fn mul_letter(&self, e: &mut FreeElt, letter: usize) {
        if e.letters.last() == Some(&self.alphabet.inverse(letter)) {
            e.letters.pop();
        } else {
            e.letters.push(letter);
        }
    }

    fn mul(&self, x: &FreeElt, y: &FreeElt) -> FreeElt {
        let mut out = x.clone();
        for &a in &y.letters {
            self.mul_letter(&mut out, a);
        }
        out
    }

    fn inv(&self, x: &FreeElt) -> FreeElt {
        FreeElt { letters: self.alphabet.invert_word(&x.letters), names: x.names.clone() }
    }

    fn is_identity(&self, e: &FreeElt) -> bool {
        e.letters.is_empty()
    }

    fn relators(&self) -> Vec<Vec<usize>> {
        Vec::new()
    }
}

/// `Z^k` on generators `x1 .. xk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAbelian {
    rank: usize,
    alphabet: Alphabet,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Self {
        let names: Vec<(String, String)> = (1..=rank).map(|i| (format!("x{i}"), format!("X{i}"))).collect();
        let pairs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        FreeAbelian { rank, alphabet: Alphabet::from_pairs(&pairs) }
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVec(pub Vec<i64>);

impl fmt::Display for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl GroupOracle for FreeAbelian {
    type Elt = ExponentVec;

    fn name(&self) -> String {
        format!("zn:{}", self.rank)
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> ExponentVec {
        ExponentVec(vec![0; self.rank])
    }

    fn mul_letter(&self, e: &mut ExponentVec, letter: usize) {
        e.0[letter / 2] += if letter.is_multiple_of(2) { 1 } else { -1 };
    }

    fn mul(&self, x: &ExponentVec, y: &ExponentVec) -> ExponentVec {
        ExponentVec(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    fn inv(&self, x: &ExponentVec) -> ExponentVec {
        ExponentVec(x.0.iter().map(|a| -a).collect())
    }

    fn is_identity(&self, e: &ExponentVec) -> bool {
        e.0.iter().all(|&a| a == 0)
    }

    fn relators(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                out.push(commutator_word(&self.alphabet, &[2 * i], &[2 * j]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let f = FreeGroup::new(2);
        let w = f.parse_word("xyYXy").unwrap();
        assert_eq!(f.eval(&w).to_string(), "y");
        assert_eq!(f.eval(&[]).to_string(), "1");
        let big = FreeGroup::new(5);
        assert!(big.in_word_problem(&big.parse_word("x5X5").unwrap()));
    }

    #[test]
    fn abelian_exponents() {
        let z = FreeAbelian::new(2);
        let e = z.eval(&z.parse_word("x1x1X2").unwrap());
        assert_eq!(e.to_string(), "(2, -1)");
    }
}
