//! Pushdown automata, their grammar-based membership test, finite automata,
//! and recognizers given as intersections of several pushdown languages.

mod cfg;
mod dfa;
mod families;
mod pda;
mod recognizer;

pub use cfg::{Cfg, CnfGrammar, Sym};
pub use dfa::{parse_dfa, Dfa, PatternItem};
pub use families::{
    build_mk_abc, build_mk_wreath, dyck_pda, mk_abc_shape, mk_wreath_shape, one_counter_pda, wreath_alphabet,
    zk_recognizer,
};
pub use pda::{parse_pda, ExploreOutcome, Npda, NpdaBuilder, Transition};
pub use recognizer::{CompiledRecognizer, KcfRecognizer};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("symbol {0:?} is not in the input alphabet")]
    UnknownSymbol(String),
    #[error("cannot split {0:?} into alphabet symbols")]
    Untokenizable(String),
    #[error("alphabets overlap on {0:?}")]
    AlphabetOverlap(String),
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("a recognizer needs at least one pushdown automaton")]
    EmptyRecognizer,
    #[error("component index {index} out of range for {count} components")]
    NoSuchComponent { index: usize, count: usize },
    #[error("homomorphism image of {0:?} is missing")]
    MissingImage(String),
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Splits a word into alphabet symbols by greedy longest match, ignoring
/// whitespace. Returns symbol indices.
pub fn tokenize(word: &str, alphabet: &[String]) -> Result<Vec<usize>, AutomataError> {
    let mut out = Vec::new();
    let mut rest = word.trim_start();
    while !rest.is_empty() {
        let best = alphabet
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_empty() && rest.starts_with(a.as_str()))
            .max_by_key(|(_, a)| a.len());
        match best {
            Some((i, a)) => {
                out.push(i);
                rest = rest[a.len()..].trim_start();
            }
            None => {
                let bad: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                return Err(if alphabet.iter().any(|a| bad.contains(a.as_str())) {
                    AutomataError::Untokenizable(bad)
                } else {
                    AutomataError::UnknownSymbol(bad)
                });
            }
        }
    }
    Ok(out)
}

/// Alphabet as owned strings.
pub fn alphabet_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_greedy() {
        let a = alphabet_of(&["x1", "x2", "X1", "X2", "x"]);
        assert_eq!(tokenize("x1X2 x", &a).unwrap(), vec![0, 3, 4]);
        assert!(matches!(tokenize("y", &a), Err(AutomataError::UnknownSymbol(_))));
        let d = alphabet_of(&["(", ")"]);
        assert_eq!(tokenize("(())", &d).unwrap(), vec![0, 0, 1, 1]);
        assert!(tokenize("", &d).unwrap().is_empty());
    }

    fn counter() -> Npda {
        one_counter_pda(&alphabet_of(&["x", "X"]), "x", "X")
    }

    fn all_words(len: usize, letters: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for a in 0..letters {
                    let mut w2: Vec<usize> = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn net_zero(w: &[usize], up: usize, down: usize) -> bool {
        w.iter().filter(|&&a| a == up).count() == w.iter().filter(|&&a| a == down).count()
    }

    #[test]
    fn counter_and_dyck_membership() {
        let c = counter();
        assert!(c.accepts_str("xX").unwrap());
        assert!(!c.accepts_str("xx").unwrap());
        assert!(c.accepts_str("").unwrap());
        assert!(c.accepts_str("XxxXXx").unwrap());
        assert!(matches!(c.accepts_str("y"), Err(AutomataError::UnknownSymbol(_))));
        let d = dyck_pda();
        assert!(d.accepts_str("(()())").unwrap());
        assert!(!d.accepts_str("())(").unwrap());
    }

    #[test]
    fn cyk_agrees_with_explorer_and_raw_grammar() {
        for pda in [counter(), dyck_pda()] {
            let cfg = Cfg::from_pda(&pda);
            let cnf = cfg.to_cnf();
            for w in all_words(8, 2) {
                let exact = cnf.accepts(&w);
                let explored = pda.explore_default(&w);
                if explored.accepted {
                    assert!(exact, "{w:?}");
                }
                if !explored.truncated {
                    assert_eq!(exact, explored.accepted, "{w:?}");
                }
                if w.len() <= 6 {
                    assert_eq!(exact, cfg.derives(&w), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn epsilon_cycles_are_handled() {
        let a = alphabet_of(&["x"]);
        let mut b = NpdaBuilder::new(&a);
        b.start("p", "Z").accept("f");
        b.rule("p", None, "Z", "q", &["Y", "Z"])
            .rule("q", None, "Y", "p", &["Z", "Y"])
            .rule("p", None, "Y", "p", &[])
            .rule("p", Some("x"), "Z", "p", &["Z"])
            .rule("p", None, "Z", "f", &[]);
        let pda = b.build().unwrap();
        assert!(pda.accepts_str("").unwrap());
        assert!(pda.accepts_str("xxx").unwrap());
    }

    #[test]
    fn text_round_trip() {
        let d = dyck_pda();
        let back = parse_pda(&d.to_string()).unwrap();
        assert_eq!(d, back);
        let shape = mk_wreath_shape(1);
        assert_eq!(parse_dfa(&shape.to_string()).unwrap(), shape);
        assert!(matches!(parse_pda("pda states=q\nstart r"), Err(AutomataError::Parse { line: 2, .. })));
    }

    #[test]
    fn zk_recognizer_examples() {
        let z2 = zk_recognizer(2).unwrap();
        assert_eq!(z2.len(), 2);
        assert!(z2.accepts_str("x1x2X1X2").unwrap());
        assert!(!z2.accepts_str("x1x2X2").unwrap());
        assert!(!z2.accepts_str("x1X2").unwrap());
        let single = KcfRecognizer::new(vec![counter()]).unwrap();
        for w in all_words(6, 2) {
            assert_eq!(single.accepts(&w), counter().accepts(&w));
        }
    }

    #[test]
    fn product_matches_erasure_definition() {
        let z2 = zk_recognizer(2).unwrap().compile();
        // x1 X1 x2 X2
        for w in all_words(6, 4) {
            assert_eq!(z2.accepts(&w), net_zero(&w, 0, 1) && net_zero(&w, 2, 3), "{w:?}");
        }
        let z = KcfRecognizer::new(vec![counter()]).unwrap();
        assert!(matches!(z.direct_product(&z), Err(AutomataError::AlphabetOverlap(_))));
        // Product with the trivial group on a fresh letter `e`.
        let e = alphabet_of(&["e"]);
        let mut b = NpdaBuilder::new(&e);
        b.start("q", "Z").accept("f");
        b.rule("q", Some("e"), "Z", "q", &["Z"]).rule("q", None, "Z", "f", &[]);
        let trivial = KcfRecognizer::new(vec![b.build().unwrap()]).unwrap();
        let prod = z.direct_product(&trivial).unwrap().compile();
        for w in all_words(6, 3) {
            let erased: Vec<usize> = w.iter().copied().filter(|&a| a < 2).collect();
            assert_eq!(prod.accepts(&w), counter().accepts(&erased));
        }
    }

    #[test]
    fn inverse_homomorphism_examples() {
        let z2 = zk_recognizer(2).unwrap();
        let domain = alphabet_of(&["x1", "X1", "x2", "X2", "z"]);
        let pre = z2.inverse_homomorphism(&domain, &["x1", "X1", "x2", "X2", "x1x2"]).unwrap();
        assert!(pre.accepts_str("zX1X2").unwrap());
        assert!(!pre.accepts_str("zX1").unwrap());
        let pre = pre.compile();
        for w in all_words(5, 5) {
            let image: Vec<usize> = w.iter().flat_map(|&g| if g == 4 { vec![0, 2] } else { vec![g] }).collect();
            assert_eq!(pre.accepts(&w), z2.compile().accepts(&image), "{w:?}");
        }
        let erase = z2.inverse_homomorphism(&alphabet_of(&["u", "v"]), &["", ""]).unwrap().compile();
        for w in all_words(4, 2) {
            assert!(erase.accepts(&w));
        }
        assert!(matches!(z2.inverse_homomorphism(&domain, &["x1"]), Err(AutomataError::MissingImage(_))));
    }

    #[test]
    fn intersecting_coordinate_preimages() {
        let z = KcfRecognizer::new(vec![counter()]).unwrap();
        let domain = alphabet_of(&["x1", "X1", "x2", "X2"]);
        let first = z.inverse_homomorphism(&domain, &["x", "X", "", ""]).unwrap();
        let second = z.inverse_homomorphism(&domain, &["", "", "x", "X"]).unwrap();
        let both = first.intersect(&second).unwrap();
        assert_eq!(both.len(), 2);
        let both = both.compile();
        for w in all_words(5, 4) {
            assert_eq!(both.accepts(&w), net_zero(&w, 0, 1) && net_zero(&w, 2, 3), "{w:?}");
        }
        assert!(matches!(z.intersect(&first), Err(AutomataError::AlphabetMismatch(_))));
    }

    #[test]
    fn regular_intersection_examples() {
        let a = alphabet_of(&["x", "X"]);
        let z = KcfRecognizer::new(vec![counter()]).unwrap();
        let shape = Dfa::from_pattern(&a, &[PatternItem::Star(0), PatternItem::Star(1)]);
        let r = z.intersect_regular(&shape, 0).unwrap().compile();
        for w in all_words(8, 2) {
            let n = w.iter().filter(|&&x| x == 0).count();
            let expected = w.len() == 2 * n && w[..n].iter().all(|&x| x == 0);
            assert_eq!(r.accepts(&w), expected, "{w:?}");
        }
        let all = z.intersect_regular(&Dfa::all_accepting(&a), 0).unwrap();
        let none = z.intersect_regular(&Dfa::empty(&a), 0).unwrap();
        for w in all_words(6, 2) {
            assert_eq!(all.accepts(&w), z.accepts(&w));
            assert!(!none.accepts(&w));
        }
        assert!(matches!(
            z.intersect_regular(&Dfa::all_accepting(&alphabet_of(&["y"])), 0),
            Err(AutomataError::AlphabetMismatch(_))
        ));
        assert!(matches!(z.intersect_regular(&shape, 3), Err(AutomataError::NoSuchComponent { index: 3, count: 1 })));
    }

    #[test]
    fn union_examples() {
        let a = alphabet_of(&["x", "X"]);
        let z = KcfRecognizer::new(vec![counter()]).unwrap();
        let balanced =
            z.intersect_regular(&Dfa::from_pattern(&a, &[PatternItem::Star(0), PatternItem::Star(1)]), 0).unwrap();
        let mut b = NpdaBuilder::new(&a);
        b.start("q", "Z").accept("f");
        b.rule("q", Some("x"), "Z", "q", &["Z"]).rule("q", None, "Z", "f", &[]);
        let xs = KcfRecognizer::new(vec![b.build().unwrap()]).unwrap();
        let u = balanced.kcf_union(&xs).unwrap();
        assert!(u.accepts_str("xxx").unwrap());
        assert!(u.accepts_str("xxXX").unwrap());
        assert!(!u.accepts_str("xXX").unwrap());
        let empty = z.intersect_regular(&Dfa::empty(&a), 0).unwrap();
        let self_union = z.kcf_union(&z).unwrap().compile();
        let with_empty = z.kcf_union(&empty).unwrap().compile();
        for w in all_words(6, 2) {
            let expected = z.accepts(&w);
            assert_eq!(self_union.accepts(&w), expected);
            assert_eq!(with_empty.accepts(&w), expected);
            assert_eq!(u.compile().accepts(&w), balanced.accepts(&w) || w.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn wreath_recognizer_examples() {
        let r1 = build_mk_wreath(1).unwrap().compile();
        assert!(r1.accepts_str("AbaABa").unwrap());
        assert!(r1.accepts_str("bB").unwrap());
        assert!(!r1.accepts_str("bA").unwrap());
        assert!(!r1.accepts_str("AbaBB").unwrap());
        assert!(!r1.accepts_str("AbaaABa").unwrap());
        let r2 = build_mk_wreath(2).unwrap().compile();
        // m = (0, 1 | 0, 1)
        assert!(r2.accepts_str("bAbaBABa").unwrap());
        // m_2 must exceed n_1
        assert!(!r2.accepts_str("AbabBABa").unwrap());
        assert!(!r2.accepts_str("AbaAbaBABa").unwrap());
        assert!(!r2.accepts_str("AbaAAbaaBB").unwrap());
        assert!(r2.accepts_str("AbaAAbaaBABa").unwrap());
        assert!(matches!(build_mk_wreath(0), Err(AutomataError::Invalid(_))));
    }

    #[test]
    fn abc_recognizer_examples() {
        let r1 = build_mk_abc(1).unwrap().compile();
        assert!(r1.accepts_str("BABabAba BAbabABa").unwrap());
        assert!(r1.accepts_str("BBbbBbbB").unwrap());
        // m ≠ μ in the first block
        assert!(!r1.accepts_str("BABabba BAbabABa").unwrap());
        let r2 = build_mk_abc(2).unwrap().compile();
        let block = |m: usize, s: [&str; 4]| {
            let (up, down) = ("A".repeat(m), "a".repeat(m));
            format!("{}{up}{}{down}{}{up}{}{down}", s[0], s[1], s[2], s[3])
        };
        let word = |ms: [usize; 4]| {
            let first = ["B", "B", "b", "b"];
            let second = ["B", "b", "b", "B"];
            format!("{}{}{}{}", block(ms[0], first), block(ms[1], first), block(ms[2], second), block(ms[3], second))
        };
        assert!(r2.accepts_str(&word([0, 1, 0, 1])).unwrap());
        assert!(r2.accepts_str(&word([1, 2, 0, 2])).unwrap());
        assert!(!r2.accepts_str(&word([1, 1, 0, 1])).unwrap());
        assert!(!r2.accepts_str(&word([2, 1, 0, 1])).unwrap());
        assert!(!r2.accepts_str(&word([0, 1, 1, 1])).unwrap());
    }
}
