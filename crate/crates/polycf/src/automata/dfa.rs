use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{tokenize, AutomataError};

/// Complete deterministic finite automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    states: Vec<String>,
    input: Vec<String>,
    start: usize,
    accepting: Vec<bool>,
    /// `delta[q][a]`
    delta: Vec<Vec<usize>>,
}

/// One item of a regular pattern made of literal letters and starred
/// letters, e.g. `A* b a*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternItem {
    Lit(usize),
    Star(usize),
}

impl Dfa {
    pub fn new(
        states: Vec<String>,
        input: Vec<String>,
        start: usize,
        accepting: Vec<usize>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self, AutomataError> {
        let n = states.len();
        if start >= n {
            return Err(AutomataError::Invalid(format!("start state {start} undeclared")));
        }
        if delta.len() != n || delta.iter().any(|row| row.len() != input.len() || row.iter().any(|&q| q >= n)) {
            return Err(AutomataError::Invalid("transition table is not total over declared states".into()));
        }
        let mut acc = vec![false; n];
        for a in accepting {
            *acc.get_mut(a).ok_or_else(|| AutomataError::Invalid(format!("accepting state {a} undeclared")))? = true;
        }
        Ok(Dfa { states, input, start, accepting: acc, delta })
    }

    /// Accepts every word.
    pub fn all_accepting(input: &[String]) -> Self {
        Dfa {
            states: vec!["all".into()],
            input: input.to_vec(),
            start: 0,
            accepting: vec![true],
            delta: vec![vec![0; input.len()]],
        }
    }

    /// Accepts nothing.
    pub fn empty(input: &[String]) -> Self {
        Dfa {
            states: vec!["none".into()],
            input: input.to_vec(),
            start: 0,
            accepting: vec![false],
            delta: vec![vec![0; input.len()]],
        }
    }

    /// Subset construction for a pattern of literals and single-letter stars.
    pub fn from_pattern(input: &[String], pattern: &[PatternItem]) -> Self {
        let len = pattern.len();
        let closure = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
            let mut out = set.clone();
            for &i in set {
                let mut j = i;
                while j < len && matches!(pattern[j], PatternItem::Star(_)) {
                    j += 1;
                    out.insert(j);
                }
            }
            out
        };
        let step = |set: &BTreeSet<usize>, a: usize| -> BTreeSet<usize> {
            let mut next = BTreeSet::new();
            for &i in set {
                match pattern.get(i) {
                    Some(PatternItem::Lit(s)) if *s == a => {
                        next.insert(i + 1);
                    }
                    Some(PatternItem::Star(s)) if *s == a => {
                        next.insert(i);
                    }
                    _ => {}
                }
            }
            closure(&next)
        };
        let init = closure(&BTreeSet::from([0]));
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::from([(init.clone(), 0)]);
        let mut sets = vec![init];
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = Vec::with_capacity(input.len());
            for a in 0..input.len() {
                let next = step(&sets[i], a);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    sets.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        Dfa {
            states: (0..sets.len()).map(|i| format!("d{i}")).collect(),
            input: input.to_vec(),
            start: 0,
            accepting: sets.iter().map(|s| s.contains(&len)).collect(),
            delta,
        }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn input(&self) -> &[String] {
        &self.input
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q][a]
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[word.iter().fold(self.start, |q, &a| self.delta[q][a])]
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool, AutomataError> {
        Ok(self.accepts(&tokenize(word, &self.input)?))
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dfa states={} input={}", self.states.join(","), self.input.join(","))?;
        writeln!(f, "start {}", self.states[self.start])?;
        let acc: Vec<&str> =
            (0..self.states.len()).filter(|&q| self.accepting[q]).map(|q| self.states[q].as_str()).collect();
        writeln!(f, "accept {}", acc.join(" "))?;
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &to) in row.iter().enumerate() {
                writeln!(f, "t {} {} -> {}", self.states[q], self.input[a], self.states[to])?;
            }
        }
        Ok(())
    }
}

/// Parses `dfa states=.. input=..`, `start q`, `accept q..` and one
/// `t q a -> q'` line per state and letter.
pub fn parse_dfa(text: &str) -> Result<Dfa, AutomataError> {
    let perr = |line: usize, message: String| AutomataError::Parse { line, message };
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("dfa") {
        return Err(perr(hl, "expected `dfa` header".into()));
    }
    let list = |s: &str| -> Vec<String> { s.split(',').filter(|x| !x.is_empty()).map(str::to_string).collect() };
    let (mut states, mut input) = (Vec::new(), Vec::new());
    for t in toks {
        if let Some(v) = t.strip_prefix("states=") {
            states = list(v);
        } else if let Some(v) = t.strip_prefix("input=") {
            input = list(v);
        } else {
            return Err(perr(hl, format!("unexpected header token {t:?}")));
        }
    }
    let find = |names: &[String], n: &str, line: usize| -> Result<usize, AutomataError> {
        names.iter().position(|x| x == n).ok_or_else(|| perr(line, format!("undeclared name {n:?}")))
    };
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; input.len()]; states.len()];
    let (mut start, mut accepting) = (None, Vec::new());
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts.as_slice() {
            ["start", q] => start = Some(find(&states, q, ln)?),
            ["accept", qs @ ..] => {
                for q in qs {
                    accepting.push(find(&states, q, ln)?);
                }
            }
            ["t", q, a, "->", q2] => {
                let (q, a, q2) = (find(&states, q, ln)?, find(&input, a, ln)?, find(&states, q2, ln)?);
                if delta[q][a].replace(q2).is_some_and(|old| old != q2) {
                    return Err(perr(ln, "conflicting transitions".into()));
                }
            }
            _ => return Err(perr(ln, format!("unrecognized line {l:?}"))),
        }
    }
    let start = start.ok_or_else(|| perr(hl, "missing `start` line".into()))?;
    let delta = delta
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<usize>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| perr(hl, "transition function is not total".into()))?;
    Dfa::new(states, input, start, accepting, delta)
}
