use crate::automata::{build_mk_abc, build_mk_wreath, wreath_alphabet, KcfRecognizer};
use crate::groups::{AbcGroup, GroupOracle, WreathProduct};
use crate::linalg;
use crate::stratify::SkFamilySpec;
use crate::vecset::BoxSet;
use num_rational::BigRational;

use super::WitnessError;

/// `{(m₁,…,m_n) ∈ [0,cap]ⁿ : w₁^{m₁} ⋯ w_n^{m_n} accepted}`, by testing
/// every point of the box.
pub fn bounded_parikh(
    words: &[Vec<usize>],
    cap: u64,
    mut accepts: impl FnMut(&[usize]) -> bool,
) -> Result<BoxSet, WitnessError> {
    if words.is_empty() {
        return Err(WitnessError::Invalid("need at least one word".into()));
    }
    Ok(BoxSet::from_predicate(words.len(), cap, |exps| {
        let mut w = Vec::new();
        for (word, &m) in words.iter().zip(exps) {
            for _ in 0..m {
                w.extend_from_slice(word);
            }
        }
        accepts(&w)
    })?)
}

/// One piece of a bounded-language template: a fixed word, or a letter
/// repeated a free number of times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TemplateItem {
    Fixed(Vec<usize>),
    Run(usize),
}

/// Exponent tuples (one per [`TemplateItem::Run`]) with entries at most
/// `cap` whose word satisfies `accepts`.
///
/// The search extends the word one run at a time and drops any branch
/// whose prefix fails `viable`, so `viable` must hold for every prefix of
/// an accepted word. Results are sorted.
pub fn search_bounded(
    template: &[TemplateItem],
    cap: u64,
    viable: &impl Fn(&[usize]) -> bool,
    accepts: &impl Fn(&[usize]) -> bool,
) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut word = Vec::new();
    let mut exps = Vec::new();
    extend(template, cap, viable, accepts, &mut word, &mut exps, &mut out);
    out.sort();
    out
}

fn extend(
    rest: &[TemplateItem],
    cap: u64,
    viable: &impl Fn(&[usize]) -> bool,
    accepts: &impl Fn(&[usize]) -> bool,
    word: &mut Vec<usize>,
    exps: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    let Some((item, tail)) = rest.split_first() else {
        if accepts(word) {
            out.push(exps.clone());
        }
        return;
    };
    let mark = word.len();
    match item {
        TemplateItem::Fixed(w) => {
            word.extend_from_slice(w);
            if viable(word) {
                extend(tail, cap, viable, accepts, word, exps, out);
            }
        }
        TemplateItem::Run(letter) => {
            for m in 0..=cap {
                if m > 0 {
                    word.push(*letter);
                }
                if !viable(word) {
                    break;
                }
                exps.push(m);
                extend(tail, cap, viable, accepts, word, exps, out);
                exps.pop();
                word.truncate(mark + m as usize);
            }
        }
    }
    word.truncate(mark);
}

/// A finite sample of a Parikh image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSample {
    pub dim: usize,
    pub cap: u64,
    pub points: Vec<Vec<u64>>,
}

impl PhiSample {
    /// Rank over Q of the differences `v − v₀` to the first point.
    pub fn difference_rank(&self) -> usize {
        let Some(first) = self.points.first() else { return 0 };
        let rows: Vec<Vec<BigRational>> = self.points[1..]
            .iter()
            .map(|v| {
                v.iter().zip(first).map(|(&x, &y)| BigRational::from_integer((x as i64 - y as i64).into())).collect()
            })
            .collect();
        linalg::rank(&rows, self.dim)
    }

    pub fn all_in(&self, spec: SkFamilySpec) -> bool {
        self.points.iter().all(|p| spec.contains(p))
    }
}

fn recognizer_search<G: GroupOracle>(
    recognizer: &KcfRecognizer,
    group: &G,
    template: &[TemplateItem],
    cap: u64,
) -> Vec<Vec<u64>> {
    let compiled = recognizer.compile();
    let pdas = recognizer.pdas();
    let viable = |w: &[usize]| pdas.iter().all(|p| p.viable_prefix(w, w.len() + 8));
    // Both recognizers share the letters `a A b B`; the groups list them
    // in the same order.
    let accepts = |w: &[usize]| compiled.accepts(w) && group.in_word_problem(w);
    search_bounded(template, cap, &viable, &accepts)
}

fn letter(name: &str) -> usize {
    wreath_alphabet().iter().position(|x| x == name).expect("letter of a A b B")
}

/// `Φ(W(G) ∩ M_k)` for `G = C_p ≀ Z` (or `Z ≀ Z` with `None`), with every
/// run of length at most `cap`. Coordinates are the `A`- and `a`-runs of
/// the `2k` blocks in order.
pub fn wreath_lk_phi(modulus: Option<u64>, k: usize, cap: u64) -> Result<PhiSample, WitnessError> {
    let group = match modulus {
        Some(p) => WreathProduct::cyclic(p).ok_or_else(|| WitnessError::Invalid(format!("modulus {p} below 2")))?,
        None => WreathProduct::integral(),
    };
    let recognizer = build_mk_wreath(k)?;
    let mut template = Vec::new();
    for i in 0..2 * k {
        let sep = if i < k { "b" } else { "B" };
        template.extend([
            TemplateItem::Run(letter("A")),
            TemplateItem::Fixed(vec![letter(sep)]),
            TemplateItem::Run(letter("a")),
        ]);
    }
    let points = recognizer_search(&recognizer, &group, &template, cap);
    Ok(PhiSample { dim: 4 * k, cap, points })
}

/// `Φ(W(G) ∩ M_k)` for the `abc` group at prime `p`. Each block
/// contributes four runs `A, a, A, a` between its separators.
pub fn abc_lk_phi(p: u64, k: usize, cap: u64) -> Result<PhiSample, WitnessError> {
    let group = AbcGroup::new(p).ok_or(WitnessError::NotPrime(p))?;
    let recognizer = build_mk_abc(k)?;
    let mut template = Vec::new();
    for i in 0..2 * k {
        let seps = if i < k { ["B", "B", "b", "b"] } else { ["B", "b", "b", "B"] };
        for (j, sep) in seps.iter().enumerate() {
            template.push(TemplateItem::Fixed(vec![letter(sep)]));
            template.push(TemplateItem::Run(letter(if j % 2 == 0 { "A" } else { "a" })));
        }
    }
    let points = recognizer_search(&recognizer, &group, &template, cap);
    Ok(PhiSample { dim: 8 * k, cap, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{AnyGroup, FreeAbelian};

    #[test]
    fn parikh_of_cyclic_word_problem() {
        let z = FreeAbelian::new(1);
        let al = z.alphabet();
        let words = vec![vec![al.index("x1").unwrap()], vec![al.index("X1").unwrap()]];
        let phi = bounded_parikh(&words, 3, |w| z.in_word_problem(w)).unwrap();
        let pts: Vec<Vec<u64>> = phi.members().collect();
        assert_eq!(pts, (0..=3).map(|m| vec![m, m]).collect::<Vec<_>>());
    }

    #[test]
    fn parikh_of_plane_word_problem() {
        let g = AnyGroup::from_descriptor("zn:2").unwrap();
        let words: Vec<Vec<usize>> = ["x1", "x2", "X1", "X2"].iter().map(|n| g.parse_word(n).unwrap()).collect();
        let phi = bounded_parikh(&words, 2, |w| g.in_word_problem(w)).unwrap();
        assert!(phi.members().all(|v| v[0] == v[2] && v[1] == v[3]));
        assert_eq!(phi.count(), 9);
    }

    #[test]
    fn wreath_small_cases() {
        let one = wreath_lk_phi(Some(2), 1, 3).unwrap();
        assert_eq!(one.points, (0..=3).map(|m| vec![m; 4]).collect::<Vec<_>>());
        let two = wreath_lk_phi(Some(2), 2, 3).unwrap();
        assert!(two.points.contains(&vec![0, 0, 1, 1, 0, 0, 1, 1]));
        assert!(!two.points.contains(&vec![0, 0, 1, 1, 1, 1, 0, 0]));
        assert_eq!(two.difference_rank(), 2);
        assert!(two.all_in(SkFamilySpec::new(2, 2).unwrap()));
    }

    #[test]
    fn abc_single_block() {
        let one = abc_lk_phi(2, 1, 2).unwrap();
        assert_eq!(one.points, (0..=2).map(|m| vec![m; 8]).collect::<Vec<_>>());
        assert!(abc_lk_phi(4, 1, 2).is_err());
    }
}
