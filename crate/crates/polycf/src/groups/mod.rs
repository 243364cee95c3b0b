//! Exact word-problem oracles. Every family evaluates words letter by letter
//! into a canonical element representation; a word lies in the word problem
//! exactly when its value is the identity.
//!
//! Words are strings of generator names, an uppercase name denoting the
//! inverse of the lowercase one (`x` and `X`).

mod abc;
mod bs;
mod free;
mod gc;
mod wreath;

pub use abc::{AbcElt, AbcGroup};
pub use bs::{BaumslagSolitar, BsElt};
pub use free::{FreeAbelian, FreeElt, FreeGroup};
pub use gc::{gc_matrix, GcElt, GcGroup, GcSpec};
pub use wreath::{WreathElt, WreathProduct};

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::automata::{tokenize, AutomataError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("unknown generator in {0:?}")]
    UnknownGenerator(String),
    #[error("bad group descriptor {descriptor:?}: {reason}")]
    Descriptor { descriptor: String, reason: String },
    #[error("invalid coefficient tuple: {0}")]
    InvalidSpec(String),
    #[error("the convention check failed: the defining relator is not trivial under either action")]
    NoConvention,
}

impl From<AutomataError> for GroupError {
    fn from(e: AutomataError) -> Self {
        match e {
            AutomataError::UnknownSymbol(s) | AutomataError::Untokenizable(s) => GroupError::UnknownGenerator(s),
            other => GroupError::UnknownGenerator(other.to_string()),
        }
    }
}

/// Generator names with their formal inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    inverse: Vec<usize>,
}

impl Alphabet {
    /// Builds from `(letter, inverse letter)` pairs; each pair contributes two
    /// letters in the given order.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        let mut names = Vec::new();
        let mut inverse = Vec::new();
        for (i, (g, h)) in pairs.iter().enumerate() {
            names.push(g.to_string());
            names.push(h.to_string());
            inverse.push(2 * i + 1);
            inverse.push(2 * i);
        }
        Alphabet { names, inverse }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn inverse(&self, letter: usize) -> usize {
        self.inverse[letter]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse(&self, word: &str) -> Result<Vec<usize>, GroupError> {
        Ok(tokenize(word, &self.names)?)
    }

    pub fn render(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.names[a].as_str()).collect()
    }

    pub fn invert_word(&self, word: &[usize]) -> Vec<usize> {
        word.iter().rev().map(|&a| self.inverse[a]).collect()
    }
}

/// Exact evaluation of words in a concrete group.
pub trait GroupOracle {
    type Elt: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn name(&self) -> String;
    fn alphabet(&self) -> &Alphabet;
    fn identity(&self) -> Self::Elt;
    /// Right multiplication by one letter.
    fn mul_letter(&self, e: &mut Self::Elt, letter: usize);
    fn mul(&self, x: &Self::Elt, y: &Self::Elt) -> Self::Elt;
    fn inv(&self, x: &Self::Elt) -> Self::Elt;
    fn is_identity(&self, e: &Self::Elt) -> bool;
    /// Defining relators (as far as they are words in the alphabet) that
    /// must evaluate to the identity.
    fn relators(&self) -> Vec<Vec<usize>>;

    fn eval(&self, word: &[usize]) -> Self::Elt {
        let mut e = self.identity();
        for &a in word {
            self.mul_letter(&mut e, a);
        }
        e
    }

    fn in_word_problem(&self, word: &[usize]) -> bool {
        self.is_identity(&self.eval(word))
    }

    fn parse_word(&self, text: &str) -> Result<Vec<usize>, GroupError> {
        self.alphabet().parse(text)
    }

    fn same_element(&self, x: &Self::Elt, y: &Self::Elt) -> bool {
        self.is_identity(&self.mul(x, &self.inv(y)))
    }
}

/// `x⁻¹ y⁻¹ x y` on words.
pub(crate) fn commutator_word(alphabet: &Alphabet, x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut w = alphabet.invert_word(x);
    w.extend(alphabet.invert_word(y));
    w.extend_from_slice(x);
    w.extend_from_slice(y);
    w
}

/// `letter^e` with negative exponents using the inverse letter.
pub(crate) fn power_word(alphabet: &Alphabet, letter: usize, e: i64) -> Vec<usize> {
    let l = if e < 0 { alphabet.inverse(letter) } else { letter };
    vec![l; e.unsigned_abs() as usize]
}

/// The conjugate `g^{a^i} = a^{-i} g a^i` as a word, with `a` the given
/// letter.
pub(crate) fn conjugate_by_power(alphabet: &Alphabet, g: &[usize], a: usize, i: i64) -> Vec<usize> {
    let mut w = power_word(alphabet, a, -i);
    w.extend_from_slice(g);
    w.extend(power_word(alphabet, a, i));
    w
}

/// Uniform random word over the whole alphabet.
pub fn random_word<R: Rng>(alphabet: &Alphabet, len: usize, rng: &mut R) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..alphabet.len())).collect()
}

/// A group instance chosen at run time from a descriptor string.
#[derive(Clone, Debug)]
pub enum AnyGroup {
    Free(FreeGroup),
    FreeAbelian(FreeAbelian),
    Bs(BaumslagSolitar),
    Wreath(WreathProduct),
    Gc(GcGroup),
    Abc(AbcGroup),
}

macro_rules! dispatch {
    ($self:expr, $g:ident => $body:expr) => {
        match $self {
            AnyGroup::Free($g) => $body,
            AnyGroup::FreeAbelian($g) => $body,
            AnyGroup::Bs($g) => $body,
            AnyGroup::Wreath($g) => $body,
            AnyGroup::Gc($g) => $body,
            AnyGroup::Abc($g) => $body,
        }
    };
}

/// Outcome of running a relator suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorReport {
    pub checked: usize,
    /// Rendered relators that did not evaluate to the identity.
    pub failures: Vec<String>,
}

impl AnyGroup {
    /// Parses `free:n`, `zn:k`, `bs:m,n`, `wreath:p=P`, `wreath:Z`,
    /// `gc:c0,..,cs` or `abc:p=P`.
    pub fn from_descriptor(text: &str) -> Result<AnyGroup, GroupError> {
        let bad = |reason: &str| GroupError::Descriptor { descriptor: text.to_string(), reason: reason.to_string() };
        let (kind, args) = text.trim().split_once(':').ok_or_else(|| bad("expected `kind:arguments`"))?;
        let ints = |s: &str| -> Result<Vec<i64>, GroupError> {
            s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad("expected integers"))).collect()
        };
        let modulus = |s: &str| -> Result<u64, GroupError> {
            s.trim().strip_prefix("p=").and_then(|v| v.parse().ok()).ok_or_else(|| bad("expected `p=<integer>`"))
        };
        match kind.trim() {
            "free" => {
                let n = ints(args)?;
                match n.as_slice() {
                    [n] if *n >= 1 => Ok(AnyGroup::Free(FreeGroup::new(*n as usize))),
                    _ => Err(bad("rank must be a positive integer")),
                }
            }
            "zn" => {
                let k = ints(args)?;
                match k.as_slice() {
                    [k] if *k >= 1 => Ok(AnyGroup::FreeAbelian(FreeAbelian::new(*k as usize))),
                    _ => Err(bad("rank must be a positive integer")),
                }
            }
            "bs" => match ints(args)?.as_slice() {
                [m, n] if *m != 0 && *n != 0 => Ok(AnyGroup::Bs(BaumslagSolitar::new(*m, *n))),
                _ => Err(bad("expected two nonzero integers m,n")),
            },
            "wreath" => {
                if args.trim() == "Z" {
                    Ok(AnyGroup::Wreath(WreathProduct::integral()))
                } else {
                    let p = modulus(args)?;
                    WreathProduct::cyclic(p).map(AnyGroup::Wreath).ok_or_else(|| bad("p must be at least 2"))
                }
            }
            "gc" => Ok(AnyGroup::Gc(GcGroup::new(GcSpec::new(ints(args)?)?)?)),
            "abc" => {
                let p = modulus(args)?;
                AbcGroup::new(p).map(AnyGroup::Abc).ok_or_else(|| bad("p must be prime"))
            }
            _ => Err(bad("unknown group kind")),
        }
    }

    pub fn name(&self) -> String {
        dispatch!(self, g => g.name())
    }

    pub fn alphabet(&self) -> &Alphabet {
        dispatch!(self, g => g.alphabet())
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, GroupError> {
        self.alphabet().parse(text)
    }

    pub fn in_word_problem(&self, word: &[usize]) -> bool {
        dispatch!(self, g => g.in_word_problem(word))
    }

    /// The canonical form of the value of `word`, rendered as text.
    pub fn eval_display(&self, word: &[usize]) -> String {
        dispatch!(self, g => g.eval(word).to_string())
    }

    pub fn relators(&self) -> Vec<Vec<usize>> {
        dispatch!(self, g => g.relators())
    }

    pub fn check_relators(&self) -> RelatorReport {
        let relators = self.relators();
        let failures =
            relators.iter().filter(|r| !self.in_word_problem(r)).map(|r| self.alphabet().render(r)).collect();
        RelatorReport { checked: relators.len(), failures }
    }

    /// Whether `eval(u v) = eval(u) eval(v)` holds for this pair.
    pub fn multiplicative_on(&self, u: &[usize], v: &[usize]) -> bool {
        dispatch!(self, g => {
            let mut uv = u.to_vec();
            uv.extend_from_slice(v);
            g.same_element(&g.eval(&uv), &g.mul(&g.eval(u), &g.eval(v)))
        })
    }

    /// Whether `w w⁻¹` (formal inverse) evaluates to the identity, and the
    /// element inverse agrees with the formal one.
    pub fn inverse_consistent_on(&self, w: &[usize]) -> bool {
        dispatch!(self, g => {
            let inv = g.alphabet().invert_word(w);
            let mut ww = w.to_vec();
            ww.extend_from_slice(&inv);
            g.in_word_problem(&ww) && g.same_element(&g.eval(&inv), &g.inv(&g.eval(w)))
        })
    }
}

impl fmt::Display for AnyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_descriptors() -> Vec<&'static str> {
        vec![
            "free:2",
            "free:3",
            "zn:1",
            "zn:3",
            "bs:1,2",
            "bs:2,2",
            "bs:2,3",
            "bs:-1,3",
            "wreath:p=2",
            "wreath:p=3",
            "wreath:Z",
            "gc:-2,1",
            "gc:1,-2",
            "gc:-1,0,2",
            "gc:-1,3,1",
            "gc:2,1,-3",
            "abc:p=2",
            "abc:p=3",
        ]
    }

    #[test]
    fn descriptors_parse_and_reject() {
        for d in all_descriptors() {
            AnyGroup::from_descriptor(d).unwrap_or_else(|e| panic!("{d}: {e}"));
        }
        for d in ["free", "free:0", "bs:0,1", "wreath:p=1", "abc:p=4", "gc:0,1", "gc:2,4", "gc:3", "knot:1"] {
            assert!(AnyGroup::from_descriptor(d).is_err(), "{d}");
        }
    }

    #[test]
    fn relator_suites_hold() {
        for d in all_descriptors() {
            let g = AnyGroup::from_descriptor(d).unwrap();
            let report = g.check_relators();
            assert!(report.failures.is_empty(), "{d}: {:?}", report.failures);
        }
    }

    #[test]
    fn homomorphism_and_inverses_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in all_descriptors() {
            let g = AnyGroup::from_descriptor(d).unwrap();
            for _ in 0..40 {
                let lu = rng.gen_range(0..10);
                let lv = rng.gen_range(0..10);
                let u = random_word(g.alphabet(), lu, &mut rng);
                let v = random_word(g.alphabet(), lv, &mut rng);
                assert!(g.multiplicative_on(&u, &v), "{d}: {:?} {:?}", u, v);
                assert!(g.inverse_consistent_on(&u), "{d}: {:?}", u);
            }
        }
    }

    #[test]
    fn spec_word_examples() {
        let check = |d: &str, w: &str, expected: bool| {
            let g = AnyGroup::from_descriptor(d).unwrap();
            let word = g.parse_word(w).unwrap();
            assert_eq!(g.in_word_problem(&word), expected, "{d} {w}");
        };
        check("free:2", "xyYX", true);
        check("free:2", "xyXY", false);
        check("wreath:p=2", "bb", true);
        check("wreath:p=2", "AbaB", false);
        check("zn:3", "x1x2x3X1X2X3", true);
        check("wreath:Z", "abA", false);
        check("wreath:Z", "aaAbaB", false);
        check("wreath:p=2", "AbaAbaBABa", false);
        check("wreath:p=2", "AbaABa", true);
        check("bs:1,2", "TxtXX", true);
        check("bs:2,2", "TxxtXX", true);
        check("bs:2,3", "TxtX", false);
        check("gc:-2,1", "BBAba", true);
        check("gc:-2,1", "y", false);
        check("abc:p=2", "bb", true);
        check("abc:p=2", "BABabAba", false);
        check("abc:p=2", "BABabAbaBABabAba", true);
        check("abc:p=3", "BABabAbaBABabAba", false);
        let g = AnyGroup::from_descriptor("free:2").unwrap();
        assert!(matches!(g.parse_word("xq"), Err(GroupError::UnknownGenerator(_))));
    }
}
