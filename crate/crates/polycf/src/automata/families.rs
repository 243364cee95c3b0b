//! Concrete automata: counters for free abelian groups, the Dyck language,
//! and the bounded-shape recognizers used for wreath products and for the
//! metabelian-by-abelian `abc` groups.

use super::dfa::{Dfa, PatternItem};
use super::pda::{Npda, NpdaBuilder};
use super::recognizer::KcfRecognizer;
use super::{alphabet_of, AutomataError};

/// One-counter automaton for the words over `alphabet` in which `up` and
/// `down` occur equally often (no other letter is readable). The sign of the
/// counter is stored in the symbol type above the bottom marker.
pub fn one_counter_pda(alphabet: &[String], up: &str, down: &str) -> Npda {
    let mut b = NpdaBuilder::new(alphabet);
    b.start("q", "Z").accept("f");
    b.rule("q", Some(up), "Z", "q", &["P", "Z"])
        .rule("q", Some(up), "P", "q", &["P", "P"])
        .rule("q", Some(up), "N", "q", &[])
        .rule("q", Some(down), "Z", "q", &["N", "Z"])
        .rule("q", Some(down), "N", "q", &["N", "N"])
        .rule("q", Some(down), "P", "q", &[])
        .rule("q", None, "Z", "f", &[]);
    b.build().expect("counter automaton is well formed")
}

/// Balanced parentheses over `(` and `)`.
pub fn dyck_pda() -> Npda {
    let mut b = NpdaBuilder::new(&alphabet_of(&["(", ")"]));
    b.start("q", "Z").accept("f");
    b.rule("q", Some("("), "Z", "q", &["I", "Z"])
        .rule("q", Some("("), "I", "q", &["I", "I"])
        .rule("q", Some(")"), "I", "q", &[])
        .rule("q", None, "Z", "f", &[]);
    b.build().expect("Dyck automaton is well formed")
}

/// Recognizer for the word problem of `Z^k` on generators `x1..xk` with
/// inverses `X1..Xk`: the direct product of `k` counters. The alphabet is
/// ordered `x1, X1, x2, X2, ...`.
pub fn zk_recognizer(k: usize) -> Result<KcfRecognizer, AutomataError> {
    let mut acc: Option<KcfRecognizer> = None;
    for i in 1..=k {
        let (up, down) = (format!("x{i}"), format!("X{i}"));
        let alphabet = vec![up.clone(), down.clone()];
        let r = KcfRecognizer::new(vec![one_counter_pda(&alphabet, &up, &down)])?;
        acc = Some(match acc {
            None => r,
            Some(prev) => prev.direct_product(&r)?,
        });
    }
    acc.ok_or(AutomataError::EmptyRecognizer)
}

/// `a, A, b, B` with uppercase letters the inverses.
pub fn wreath_alphabet() -> Vec<String> {
    alphabet_of(&["a", "A", "b", "B"])
}

const LOWER_A: usize = 0;
const UPPER_A: usize = 1;
const LOWER_B: usize = 2;
const UPPER_B: usize = 3;

/// Shape `(A* b a*)^k (A* B a*)^k`.
pub fn mk_wreath_shape(k: usize) -> Dfa {
    let block = |sep| [PatternItem::Star(UPPER_A), PatternItem::Lit(sep), PatternItem::Star(LOWER_A)];
    let mut pattern = Vec::new();
    for _ in 0..k {
        pattern.extend(block(LOWER_B));
    }
    for _ in 0..k {
        pattern.extend(block(UPPER_B));
    }
    Dfa::from_pattern(&wreath_alphabet(), &pattern)
}

/// Shape `(B A* B a* b A* b a*)^k (B A* b a* b A* B a*)^k`.
pub fn mk_abc_shape(k: usize) -> Dfa {
    use PatternItem::{Lit, Star};
    let block = |s: [usize; 4]| {
        [Lit(s[0]), Star(UPPER_A), Lit(s[1]), Star(LOWER_A), Lit(s[2]), Star(UPPER_A), Lit(s[3]), Star(LOWER_A)]
    };
    let mut pattern = Vec::new();
    for _ in 0..k {
        pattern.extend(block([UPPER_B, UPPER_B, LOWER_B, LOWER_B]));
    }
    for _ in 0..k {
        pattern.extend(block([UPPER_B, LOWER_B, LOWER_B, UPPER_B]));
    }
    Dfa::from_pattern(&wreath_alphabet(), &pattern)
}

const SEPARATORS: [&str; 2] = ["b", "B"];

/// Checks that every run of `A`s followed by a separator and a run of `a`s
/// has equal lengths. Extra separators with empty runs are allowed, so the
/// same automaton serves both the wreath and the `abc` shapes.
fn paired_runs_pda() -> Npda {
    let mut b = NpdaBuilder::new(&wreath_alphabet());
    b.start("rest", "Z").accept("end");
    b.rule("rest", Some("A"), "Z", "up", &["I", "Z"]).rule("up", Some("A"), "I", "up", &["I", "I"]);
    for sep in SEPARATORS {
        b.rule("up", Some(sep), "I", "down", &["I"]).rule("rest", Some(sep), "Z", "rest", &["Z"]);
    }
    b.rule("down", Some("a"), "I", "down", &[]).rule("down", None, "Z", "rest", &["Z"]);
    b.rule("rest", None, "Z", "end", &[]);
    b.build().expect("paired-run automaton is well formed")
}

/// `abc` blocks `s A^m s a^n s A^μ s a^ν`: checks `m = μ` in every block.
fn first_third_runs_pda() -> Npda {
    let mut b = NpdaBuilder::new(&wreath_alphabet());
    b.start("r4", "Z").accept("end");
    for x in ["Z", "I"] {
        b.rule("r1", Some("A"), x, "r1", &["I", x]);
        b.rule("r2", Some("a"), x, "r2", &[x]);
        b.rule("r4", Some("a"), x, "r4", &[x]);
    }
    b.rule("r3", Some("A"), "I", "r3", &[]);
    for sep in SEPARATORS {
        b.rule("r4", Some(sep), "Z", "r1", &["Z"]);
        for x in ["Z", "I"] {
            b.rule("r1", Some(sep), x, "r2", &[x]);
            b.rule("r2", Some(sep), x, "r3", &[x]);
        }
        b.rule("r3", Some(sep), "Z", "r4", &["Z"]);
    }
    b.rule("r4", None, "Z", "end", &[]);
    b.build().expect("block automaton is well formed")
}

/// Checks, over `2k` blocks, that the final `a`-run of block `i` is shorter
/// than the leading `A`-run of block `i + 1` whenever `i ∉ {k, 2k}`.
///
/// A block is `segments` runs separated by `b`/`B`; the first run is of
/// `A`s and the last of `a`s. With `lead_sep` each block opens with a
/// separator; otherwise consecutive blocks meet directly.
fn increasing_blocks_pda(k: usize, segments: &[&str], lead_sep: bool) -> Npda {
    let last = segments.len() - 1;
    let mut b = NpdaBuilder::new(&wreath_alphabet());
    let seg = |i: usize, j: usize| format!("b{i}s{j}");
    let cmp = |i: usize| format!("b{i}cmp");
    let exempt = |i: usize| i == k || i == 2 * k;
    // State in which block `i` begins reading its leading `A`-run.
    let opening = |i: usize| if i == 1 || i == k + 1 { seg(i, 0) } else { cmp(i) };
    let init = if lead_sep { "init".to_string() } else { opening(1) };
    b.start(&init, "Z").accept("end");
    if lead_sep {
        for sep in SEPARATORS {
            b.rule("init", Some(sep), "Z", &opening(1), &["Z"]);
        }
    }
    for i in 1..=2 * k {
        let stack_syms: &[&str] = &["Z", "I"];
        for (j, letter) in segments.iter().enumerate() {
            let here = seg(i, j);
            for &x in stack_syms {
                if j == last && !exempt(i) {
                    b.rule(&here, Some(letter), x, &here, &["I", x]);
                } else {
                    b.rule(&here, Some(letter), x, &here, &[x]);
                }
                if j < last {
                    for sep in SEPARATORS {
                        b.rule(&here, Some(sep), x, &seg(i, j + 1), &[x]);
                    }
                }
            }
        }
        if i > 1 && i != k + 1 {
            // Leading run must outlast the counter: pop while possible, then
            // require one further `A` on the bare bottom marker.
            b.rule(&cmp(i), Some("A"), "I", &cmp(i), &[]);
            b.rule(&cmp(i), Some("A"), "Z", &seg(i, 0), &["Z"]);
        }
        if i < 2 * k {
            let next = opening(i + 1);
            let end_state = seg(i, last);
            for x in ["Z", "I"] {
                if lead_sep {
                    for sep in SEPARATORS {
                        b.rule(&end_state, Some(sep), x, &next, &[x]);
                    }
                } else {
                    b.rule(&end_state, None, x, &next, &[x]);
                }
            }
        }
    }
    b.rule(&seg(2 * k, last), None, "Z", "end", &[]);
    b.build().expect("block automaton is well formed")
}

fn check_k(k: usize) -> Result<(), AutomataError> {
    if k == 0 {
        return Err(AutomataError::Invalid("block count k must be at least 1".into()));
    }
    Ok(())
}

/// Recognizer for the wreath-product test language `M_k`: blocks
/// `A^{m_i} b a^{n_i}` then `A^{m_i} B a^{n_i}` (`k` of each) with
/// `m_i = n_i` and `n_i < m_{i+1}` for `i ∉ {k, 2k}`.
pub fn build_mk_wreath(k: usize) -> Result<KcfRecognizer, AutomataError> {
    check_k(k)?;
    let base = KcfRecognizer::new(vec![paired_runs_pda(), increasing_blocks_pda(k, &["A", "a"], false)])?;
    base.intersect_regular(&mk_wreath_shape(k), 0)
}

/// Recognizer for the `abc` test language: blocks `s A^m s a^n s A^μ s a^ν`
/// (separator patterns fixed by the shape) with `m = n = μ = ν` in each
/// block and `m_i < m_{i+1}` for `i ∉ {k, 2k}`.
pub fn build_mk_abc(k: usize) -> Result<KcfRecognizer, AutomataError> {
    check_k(k)?;
    let base = KcfRecognizer::new(vec![
        paired_runs_pda(),
        first_third_runs_pda(),
        increasing_blocks_pda(k, &["A", "a", "A", "a"], true),
    ])?;
    base.intersect_regular(&mk_abc_shape(k), 0)
}
