use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use super::{cfg::Cfg, tokenize, AutomataError};

/// One move: in `from` with `top` on the stack, optionally reading `input`,
/// go to `to` replacing `top` by `push` (first element becomes the new top).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub input: Option<usize>,
    pub top: usize,
    pub to: usize,
    pub push: Vec<usize>,
}

/// Nondeterministic pushdown automaton. A word is accepted when some run
/// consumes it and ends in an accepting state with an empty stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Npda {
    states: Vec<String>,
    input: Vec<String>,
    stack: Vec<String>,
    start: usize,
    bottom: usize,
    accepting: Vec<bool>,
    transitions: Vec<Transition>,
}

/// Result of the bounded configuration search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOutcome {
    pub accepted: bool,
    /// Some configuration was dropped because its stack exceeded the cap.
    pub truncated: bool,
}

impl Npda {
    pub fn new(
        states: Vec<String>,
        input: Vec<String>,
        stack: Vec<String>,
        start: usize,
        bottom: usize,
        accepting: Vec<usize>,
        transitions: Vec<Transition>,
    ) -> Result<Self, AutomataError> {
        let bad = |m: String| Err(AutomataError::Invalid(m));
        if start >= states.len() {
            return bad(format!("start state {start} undeclared"));
        }
        if bottom >= stack.len() {
            return bad(format!("bottom symbol {bottom} undeclared"));
        }
        let mut acc = vec![false; states.len()];
        for a in accepting {
            if a >= states.len() {
                return bad(format!("accepting state {a} undeclared"));
            }
            acc[a] = true;
        }
        for t in &transitions {
            if t.from >= states.len() || t.to >= states.len() {
                return bad(format!("transition {t:?} uses an undeclared state"));
            }
            if t.top >= stack.len() || t.push.iter().any(|&s| s >= stack.len()) {
                return bad(format!("transition {t:?} uses an undeclared stack symbol"));
            }
            if t.input.is_some_and(|a| a >= input.len()) {
                return bad(format!("transition {t:?} uses an undeclared input symbol"));
            }
        }
        let mut transitions = transitions;
        transitions.sort();
        transitions.dedup();
        Ok(Npda { states, input, stack, start, bottom, accepting: acc, transitions })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn input(&self) -> &[String] {
        &self.input
    }

    pub fn stack(&self) -> &[String] {
        &self.stack
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn max_push(&self) -> usize {
        self.transitions.iter().map(|t| t.push.len()).max().unwrap_or(0)
    }

    pub fn tokenize(&self, word: &str) -> Result<Vec<usize>, AutomataError> {
        tokenize(word, &self.input)
    }

    /// Exact membership through grammar conversion, CNF and CYK.
    pub fn accepts(&self, word: &[usize]) -> bool {
        Cfg::from_pda(self).to_cnf().accepts(word)
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool, AutomataError> {
        Ok(self.accepts(&self.tokenize(word)?))
    }

    /// States reachable from each state in the transition graph, ignoring the
    /// stack. Used to prune impossible grammar triples.
    pub(crate) fn state_reachability(&self) -> Vec<Vec<bool>> {
        let n = self.states.len();
        let mut adj = vec![Vec::new(); n];
        for t in &self.transitions {
            adj[t.from].push(t.to);
        }
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                seen[s] = true;
                let mut queue = vec![s];
                while let Some(u) = queue.pop() {
                    for &v in &adj[u] {
                        if !seen[v] {
                            seen[v] = true;
                            queue.push(v);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    fn moves_from(&self) -> HashMap<(usize, usize), Vec<&Transition>> {
        let mut m: HashMap<(usize, usize), Vec<&Transition>> = HashMap::new();
        for t in &self.transitions {
            m.entry((t.from, t.top)).or_default().push(t);
        }
        m
    }

    /// Breadth-first search over configurations `(position, state, stack)`
    /// with stacks longer than `depth_cap` discarded. Any acceptance found is
    /// genuine; a rejection is only conclusive when nothing was truncated.
    pub fn explore(&self, word: &[usize], depth_cap: usize) -> ExploreOutcome {
        let moves = self.moves_from();
        let mut seen: HashSet<(usize, usize, Vec<usize>)> = HashSet::new();
        let mut queue = VecDeque::new();
        let init = (0usize, self.start, vec![self.bottom]);
        seen.insert(init.clone());
        queue.push_back(init);
        let mut truncated = false;
        while let Some((pos, q, stack)) = queue.pop_front() {
            if pos == word.len() && stack.is_empty() && self.accepting[q] {
                return ExploreOutcome { accepted: true, truncated };
            }
            let Some(&top) = stack.last() else { continue };
            let Some(ts) = moves.get(&(q, top)) else { continue };
            for t in ts {
                let next_pos = match t.input {
                    None => pos,
                    Some(a) if pos < word.len() && word[pos] == a => pos + 1,
                    Some(_) => continue,
                };
                let mut ns = stack[..stack.len() - 1].to_vec();
                ns.extend(t.push.iter().rev());
                if ns.len() > depth_cap {
                    truncated = true;
                    continue;
                }
                let cfg = (next_pos, t.to, ns);
                if seen.insert(cfg.clone()) {
                    queue.push_back(cfg);
                }
            }
        }
        ExploreOutcome { accepted: false, truncated }
    }

    /// The default cap `|w|·maxpush + 8`.
    pub fn explore_default(&self, word: &[usize]) -> ExploreOutcome {
        self.explore(word, word.len() * self.max_push().max(1) + 8)
    }

    /// Whether some run can read `prefix` at all. `false` is conclusive only
    /// because stacks beyond `depth_cap` count as viable.
    pub fn viable_prefix(&self, prefix: &[usize], depth_cap: usize) -> bool {
        let moves = self.moves_from();
        let mut current: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        current.insert((self.start, vec![self.bottom]));
        for pos in 0..=prefix.len() {
            // ε-closure
            let mut stack_work: Vec<(usize, Vec<usize>)> = current.iter().cloned().collect();
            while let Some((q, st)) = stack_work.pop() {
                let Some(&top) = st.last() else { continue };
                for t in moves.get(&(q, top)).into_iter().flatten() {
                    if t.input.is_some() {
                        continue;
                    }
                    let mut ns = st[..st.len() - 1].to_vec();
                    ns.extend(t.push.iter().rev());
                    if ns.len() > depth_cap {
                        return true;
                    }
                    if current.insert((t.to, ns.clone())) {
                        stack_work.push((t.to, ns));
                    }
                }
            }
            if pos == prefix.len() {
                break;
            }
            let a = prefix[pos];
            let mut next = BTreeSet::new();
            for (q, st) in &current {
                let Some(&top) = st.last() else { continue };
                for t in moves.get(&(*q, top)).into_iter().flatten() {
                    if t.input != Some(a) {
                        continue;
                    }
                    let mut ns = st[..st.len() - 1].to_vec();
                    ns.extend(t.push.iter().rev());
                    if ns.len() > depth_cap {
                        return true;
                    }
                    next.insert((t.to, ns));
                }
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        !current.is_empty()
    }

    /// Copy with a different input alphabet; `relabel[i]` is the new index of
    /// old symbol `i`.
    pub(crate) fn with_input(&self, input: Vec<String>, relabel: &[usize]) -> Npda {
        let mut out = self.clone();
        out.input = input;
        for t in out.transitions.iter_mut() {
            t.input = t.input.map(|a| relabel[a]);
        }
        out.transitions.sort();
        out
    }

    pub(crate) fn push_transitions(&mut self, extra: impl IntoIterator<Item = Transition>) {
        self.transitions.extend(extra);
        self.transitions.sort();
        self.transitions.dedup();
    }
}

impl fmt::Display for Npda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "pda states={} input={} stack={}",
            self.states.join(","),
            self.input.join(","),
            self.stack.join(",")
        )?;
        writeln!(f, "start {}", self.states[self.start])?;
        writeln!(f, "bottom {}", self.stack[self.bottom])?;
        let acc: Vec<&str> = self.accepting_states().iter().map(|&q| self.states[q].as_str()).collect();
        writeln!(f, "accept {}", acc.join(" "))?;
        for t in &self.transitions {
            let a = t.input.map_or("_", |a| self.input[a].as_str());
            let push = if t.push.is_empty() {
                "_".to_string()
            } else {
                t.push.iter().map(|&s| self.stack[s].as_str()).collect::<Vec<_>>().join(",")
            };
            writeln!(f, "t {} {} {} -> {} {}", self.states[t.from], a, self.stack[t.top], self.states[t.to], push)?;
        }
        Ok(())
    }
}

/// Parses the text form produced by `Display`:
///
/// ```text
/// pda states=q,f input=x,X stack=Z,P,N
/// start q
/// bottom Z
/// accept f
/// t q x Z -> q P,Z
/// t q _ Z -> f _
/// ```
pub fn parse_pda(text: &str) -> Result<Npda, AutomataError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line: usize, message: String| AutomataError::Parse { line, message };
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("pda") {
        return Err(perr(hl, "expected `pda` header".into()));
    }
    let list = |s: &str| -> Vec<String> { s.split(',').filter(|x| !x.is_empty()).map(str::to_string).collect() };
    let (mut states, mut input, mut stack) = (Vec::new(), Vec::new(), Vec::new());
    for t in toks {
        if let Some(v) = t.strip_prefix("states=") {
            states = list(v);
        } else if let Some(v) = t.strip_prefix("input=") {
            input = list(v);
        } else if let Some(v) = t.strip_prefix("stack=") {
            stack = list(v);
        } else {
            return Err(perr(hl, format!("unexpected header token {t:?}")));
        }
    }
    let find = |names: &[String], n: &str, what: &str, line: usize| -> Result<usize, AutomataError> {
        names.iter().position(|x| x == n).ok_or_else(|| perr(line, format!("undeclared {what} {n:?}")))
    };
    let (mut start, mut bottom, mut accepting, mut transitions) = (None, None, Vec::new(), Vec::new());
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts.as_slice() {
            ["start", q] => start = Some(find(&states, q, "state", ln)?),
            ["bottom", z] => bottom = Some(find(&stack, z, "stack symbol", ln)?),
            ["accept", qs @ ..] => {
                for q in qs {
                    accepting.push(find(&states, q, "state", ln)?);
                }
            }
            ["t", q, a, s, "->", q2, push] => {
                let push = if *push == "_" {
                    Vec::new()
                } else {
                    push.split(',').map(|x| find(&stack, x, "stack symbol", ln)).collect::<Result<_, _>>()?
                };
                transitions.push(Transition {
                    from: find(&states, q, "state", ln)?,
                    input: if *a == "_" { None } else { Some(find(&input, a, "input symbol", ln)?) },
                    top: find(&stack, s, "stack symbol", ln)?,
                    to: find(&states, q2, "state", ln)?,
                    push,
                });
            }
            _ => return Err(perr(ln, format!("unrecognized line {l:?}"))),
        }
    }
    let start = start.ok_or_else(|| perr(hl, "missing `start` line".into()))?;
    let bottom = bottom.ok_or_else(|| perr(hl, "missing `bottom` line".into()))?;
    Npda::new(states, input, stack, start, bottom, accepting, transitions)
}

/// Name-based construction helper.
pub struct NpdaBuilder {
    states: Vec<String>,
    input: Vec<String>,
    stack: Vec<String>,
    start: Option<usize>,
    bottom: Option<usize>,
    accepting: Vec<usize>,
    transitions: Vec<Transition>,
}

impl NpdaBuilder {
    pub fn new(input: &[String]) -> Self {
        NpdaBuilder {
            states: Vec::new(),
            input: input.to_vec(),
            stack: Vec::new(),
            start: None,
            bottom: None,
            accepting: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn state(&mut self, name: &str) -> usize {
        intern(&mut self.states, name)
    }

    pub fn symbol(&mut self, name: &str) -> usize {
        intern(&mut self.stack, name)
    }

    pub fn start(&mut self, state: &str, bottom: &str) -> &mut Self {
        self.start = Some(self.state(state));
        self.bottom = Some(self.symbol(bottom));
        self
    }

    pub fn accept(&mut self, state: &str) -> &mut Self {
        let q = self.state(state);
        self.accepting.push(q);
        self
    }

    /// Adds a transition; `input` of `None` is an ε-move, `push` lists stack
    /// symbols top first.
    pub fn rule(&mut self, from: &str, input: Option<&str>, top: &str, to: &str, push: &[&str]) -> &mut Self {
        let t = Transition {
            from: self.state(from),
            input: input
                .map(|a| self.input.iter().position(|x| x == a).unwrap_or_else(|| panic!("undeclared input {a}"))),
            top: self.symbol(top),
            to: self.state(to),
            push: push.iter().map(|s| self.symbol(s)).collect(),
        };
        self.transitions.push(t);
        self
    }

    pub fn build(self) -> Result<Npda, AutomataError> {
        let start = self.start.ok_or_else(|| AutomataError::Invalid("no start state".into()))?;
        let bottom = self.bottom.expect("set together with start");
        Npda::new(self.states, self.input, self.stack, start, bottom, self.accepting, self.transitions)
    }
}

fn intern(names: &mut Vec<String>, name: &str) -> usize {
    if let Some(i) = names.iter().position(|x| x == name) {
        i
    } else {
        names.push(name.to_string());
        names.len() - 1
    }
}
