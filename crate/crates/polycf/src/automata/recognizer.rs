use std::collections::HashMap;

use super::cfg::{Cfg, CnfGrammar};
use super::dfa::Dfa;
use super::pda::{Npda, Transition};
use super::{tokenize, AutomataError};

/// Intersection of finitely many pushdown languages over one alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KcfRecognizer {
    alphabet: Vec<String>,
    pdas: Vec<Npda>,
}

/// A recognizer with every component converted to CNF once, for repeated
/// membership queries.
#[derive(Clone, Debug)]
pub struct CompiledRecognizer {
    alphabet: Vec<String>,
    grammars: Vec<CnfGrammar>,
}

impl CompiledRecognizer {
    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.grammars.iter().all(|g| g.accepts(word))
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool, AutomataError> {
        Ok(self.accepts(&tokenize(word, &self.alphabet)?))
    }

    /// Per-component verdicts.
    pub fn component_verdicts(&self, word: &[usize]) -> Vec<bool> {
        self.grammars.iter().map(|g| g.accepts(word)).collect()
    }
}

impl KcfRecognizer {
    pub fn new(pdas: Vec<Npda>) -> Result<Self, AutomataError> {
        let first = pdas.first().ok_or(AutomataError::EmptyRecognizer)?;
        let alphabet = first.input().to_vec();
        for p in &pdas[1..] {
            if p.input() != alphabet.as_slice() {
                return Err(AutomataError::AlphabetMismatch(format!(
                    "{} vs {}",
                    alphabet.join(","),
                    p.input().join(",")
                )));
            }
        }
        Ok(KcfRecognizer { alphabet, pdas })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn pdas(&self) -> &[Npda] {
        &self.pdas
    }

    pub fn len(&self) -> usize {
        self.pdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pdas.is_empty()
    }

    pub fn tokenize(&self, word: &str) -> Result<Vec<usize>, AutomataError> {
        tokenize(word, &self.alphabet)
    }

    pub fn compile(&self) -> CompiledRecognizer {
        CompiledRecognizer {
            alphabet: self.alphabet.clone(),
            grammars: self.pdas.iter().map(|p| Cfg::from_pda(p).to_cnf()).collect(),
        }
    }

    /// Accepts when every component accepts. Compiles on each call; use
    /// [`KcfRecognizer::compile`] for batches.
    pub fn accepts(&self, word: &[usize]) -> bool {
        self.pdas.iter().all(|p| p.accepts(word))
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool, AutomataError> {
        Ok(self.accepts(&self.tokenize(word)?))
    }

    /// Intersection with another recognizer over the same alphabet: the
    /// component lists are concatenated.
    pub fn intersect(&self, other: &KcfRecognizer) -> Result<KcfRecognizer, AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet.join(","),
                other.alphabet.join(",")
            )));
        }
        KcfRecognizer::new(self.pdas.iter().chain(&other.pdas).cloned().collect())
    }

    /// Recognizer over the disjoint union of both alphabets. Each component
    /// skips the letters of the other factor.
    pub fn direct_product(&self, other: &KcfRecognizer) -> Result<KcfRecognizer, AutomataError> {
        if let Some(a) = self.alphabet.iter().find(|a| other.alphabet.contains(a)) {
            return Err(AutomataError::AlphabetOverlap(a.clone()));
        }
        let mut alphabet = self.alphabet.clone();
        alphabet.extend(other.alphabet.iter().cloned());
        let n1 = self.alphabet.len();
        let left: Vec<usize> = (0..n1).collect();
        let right: Vec<usize> = (n1..alphabet.len()).collect();
        let mut pdas = Vec::new();
        for (side, relabel, foreign) in [(&self.pdas, &left, &right), (&other.pdas, &right, &left)] {
            for p in side.iter() {
                let mut g = guarded(&p.with_input(alphabet.clone(), relabel));
                let loops: Vec<Transition> = (0..g.states().len())
                    .flat_map(|q| {
                        (0..g.stack().len()).flat_map(move |x| {
                            foreign.iter().map(move |&a| Transition {
                                from: q,
                                input: Some(a),
                                top: x,
                                to: q,
                                push: vec![x],
                            })
                        })
                    })
                    .collect();
                g.push_transitions(loops);
                pdas.push(g);
            }
        }
        KcfRecognizer::new(pdas)
    }

    /// Preimage under the homomorphism sending `domain[i]` to the word
    /// `images[i]` over this recognizer's alphabet.
    pub fn inverse_homomorphism(&self, domain: &[String], images: &[&str]) -> Result<KcfRecognizer, AutomataError> {
        if images.len() != domain.len() {
            let missing = domain.get(images.len()).cloned().unwrap_or_default();
            return Err(AutomataError::MissingImage(missing));
        }
        let images: Vec<Vec<usize>> = images.iter().map(|w| tokenize(w, &self.alphabet)).collect::<Result<_, _>>()?;
        let pdas = self.pdas.iter().map(|p| inverse_one(&guarded(p), domain, &images)).collect::<Result<_, _>>()?;
        KcfRecognizer::new(pdas)
    }

    /// Intersects component `index` with a regular language.
    pub fn intersect_regular(&self, dfa: &Dfa, index: usize) -> Result<KcfRecognizer, AutomataError> {
        if dfa.input() != self.alphabet.as_slice() {
            return Err(AutomataError::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet.join(","),
                dfa.input().join(",")
            )));
        }
        let count = self.pdas.len();
        if index >= count {
            return Err(AutomataError::NoSuchComponent { index, count });
        }
        let mut pdas = self.pdas.clone();
        pdas[index] = pda_times_dfa(&pdas[index], dfa)?;
        KcfRecognizer::new(pdas)
    }

    /// Union: one component `L_i ∪ M_j` per pair of components.
    pub fn kcf_union(&self, other: &KcfRecognizer) -> Result<KcfRecognizer, AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet.join(","),
                other.alphabet.join(",")
            )));
        }
        let mut pdas = Vec::new();
        for l in &self.pdas {
            for m in &other.pdas {
                pdas.push(union_pda(l, m)?);
            }
        }
        KcfRecognizer::new(pdas)
    }
}

fn unused_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Adds a fresh bottom marker below the original stack so that the stack is
/// never empty before the final pop. The language is unchanged.
fn guarded(p: &Npda) -> Npda {
    let mut states = p.states().to_vec();
    let mut stack = p.stack().to_vec();
    let entry = states.len();
    states.push(unused_name(&states, "enter"));
    let exit = states.len();
    states.push(unused_name(&states, "done"));
    let guard = stack.len();
    stack.push(unused_name(&stack, "G"));
    let mut ts = p.transitions().to_vec();
    ts.push(Transition { from: entry, input: None, top: guard, to: p.start(), push: vec![p.bottom(), guard] });
    for f in p.accepting_states() {
        ts.push(Transition { from: f, input: None, top: guard, to: exit, push: Vec::new() });
    }
    Npda::new(states, p.input().to_vec(), stack, entry, guard, vec![exit], ts)
        .expect("guarded automaton is well formed")
}

fn inverse_one(p: &Npda, domain: &[String], images: &[Vec<usize>]) -> Result<Npda, AutomataError> {
    let mut states = p.states().to_vec();
    let n = states.len();
    // mid[(q, g, i)]: in state q having simulated the first i letters of h(g)
    let mut mid: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (g, img) in images.iter().enumerate() {
        for i in 1..img.len() {
            for q in 0..n {
                mid.insert((q, g, i), states.len());
                states.push(format!("{}|{}|{}", p.states()[q], domain[g], i));
            }
        }
    }
    let at = |q: usize, g: usize, i: usize, len: usize| if i == len { q } else { mid[&(q, g, i)] };
    let mut ts = Vec::new();
    for t in p.transitions() {
        match t.input {
            None => {
                ts.push(t.clone());
                for (g, img) in images.iter().enumerate() {
                    for i in 1..img.len() {
                        ts.push(Transition {
                            from: mid[&(t.from, g, i)],
                            input: None,
                            top: t.top,
                            to: mid[&(t.to, g, i)],
                            push: t.push.clone(),
                        });
                    }
                }
            }
            Some(a) => {
                for (g, img) in images.iter().enumerate() {
                    for (i, &letter) in img.iter().enumerate() {
                        if letter != a {
                            continue;
                        }
                        ts.push(Transition {
                            from: if i == 0 { t.from } else { mid[&(t.from, g, i)] },
                            input: if i == 0 { Some(g) } else { None },
                            top: t.top,
                            to: at(t.to, g, i + 1, img.len()),
                            push: t.push.clone(),
                        });
                    }
                }
            }
        }
    }
    for (g, img) in images.iter().enumerate() {
        if img.is_empty() {
            for q in 0..n {
                for x in 0..p.stack().len() {
                    ts.push(Transition { from: q, input: Some(g), top: x, to: q, push: vec![x] });
                }
            }
        }
    }
    Npda::new(states, domain.to_vec(), p.stack().to_vec(), p.start(), p.bottom(), p.accepting_states(), ts)
}

fn pda_times_dfa(p: &Npda, d: &Dfa) -> Result<Npda, AutomataError> {
    let nd = d.states().len();
    let id = |q: usize, s: usize| q * nd + s;
    let mut states = Vec::new();
    for q in p.states() {
        for s in d.states() {
            states.push(format!("{q}&{s}"));
        }
    }
    let mut ts = Vec::new();
    for t in p.transitions() {
        for s in 0..nd {
            let s2 = t.input.map_or(s, |a| d.step(s, a));
            ts.push(Transition {
                from: id(t.from, s),
                input: t.input,
                top: t.top,
                to: id(t.to, s2),
                push: t.push.clone(),
            });
        }
    }
    let accepting = p
        .accepting_states()
        .into_iter()
        .flat_map(|q| (0..nd).filter(|&s| d.is_accepting(s)).map(move |s| id(q, s)))
        .collect();
    Npda::new(states, p.input().to_vec(), p.stack().to_vec(), id(p.start(), d.start()), p.bottom(), accepting, ts)
}

fn union_pda(l: &Npda, m: &Npda) -> Result<Npda, AutomataError> {
    let mut states: Vec<String> = l.states().iter().map(|s| format!("L.{s}")).collect();
    states.extend(m.states().iter().map(|s| format!("R.{s}")));
    let mut stack: Vec<String> = l.stack().iter().map(|s| format!("L.{s}")).collect();
    stack.extend(m.stack().iter().map(|s| format!("R.{s}")));
    let (qs, gs) = (l.states().len(), l.stack().len());
    let entry = states.len();
    states.push("choose".into());
    let bottom = stack.len();
    stack.push("Z".into());
    let mut ts: Vec<Transition> = l.transitions().to_vec();
    ts.extend(m.transitions().iter().map(|t| Transition {
        from: t.from + qs,
        input: t.input,
        top: t.top + gs,
        to: t.to + qs,
        push: t.push.iter().map(|x| x + gs).collect(),
    }));
    ts.push(Transition { from: entry, input: None, top: bottom, to: l.start(), push: vec![l.bottom()] });
    ts.push(Transition { from: entry, input: None, top: bottom, to: m.start() + qs, push: vec![m.bottom() + gs] });
    let mut accepting = l.accepting_states();
    accepting.extend(m.accepting_states().into_iter().map(|q| q + qs));
    Npda::new(states, l.input().to_vec(), stack, entry, bottom, accepting, ts)
}
