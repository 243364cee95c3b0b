use std::collections::{HashMap, HashSet};

use super::pda::Npda;

/// Grammar symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T(usize),
    N(usize),
}

/// Context-free grammar with integer-indexed symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    pub nonterminals: usize,
    pub terminals: usize,
    pub start: usize,
    pub rules: Vec<(usize, Vec<Sym>)>,
}

impl Cfg {
    /// Triple construction: nonterminal `[p X q]` derives the words that take
    /// the automaton from `p` with `X` on top to `q` with `X` popped. Triples
    /// whose end state is unreachable from the start state are skipped.
    pub fn from_pda(pda: &Npda) -> Cfg {
        let n = pda.states().len();
        let g = pda.stack().len();
        let reach = pda.state_reachability();
        let id = |p: usize, x: usize, q: usize| 1 + (p * g + x) * n + q;
        let mut rules: Vec<(usize, Vec<Sym>)> = Vec::new();
        for f in pda.accepting_states() {
            if reach[pda.start()][f] {
                rules.push((0, vec![Sym::N(id(pda.start(), pda.bottom(), f))]));
            }
        }
        for t in pda.transitions() {
            let lead: Vec<Sym> = t.input.map(Sym::T).into_iter().collect();
            if t.push.is_empty() {
                rules.push((id(t.from, t.top, t.to), lead));
                continue;
            }
            // Enumerate intermediate state sequences r1..rk along reachable
            // states.
            let k = t.push.len();
            let mut seqs: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..k {
                let mut next = Vec::new();
                for s in &seqs {
                    let prev = *s.last().unwrap_or(&t.to);
                    for (r, &reachable) in reach[prev].iter().enumerate() {
                        if reachable {
                            let mut s2 = s.clone();
                            s2.push(r);
                            next.push(s2);
                        }
                    }
                }
                seqs = next;
            }
            for seq in seqs {
                let mut body = lead.clone();
                let mut cur = t.to;
                for (i, &y) in t.push.iter().enumerate() {
                    body.push(Sym::N(id(cur, y, seq[i])));
                    cur = seq[i];
                }
                rules.push((id(t.from, t.top, cur), body));
            }
        }
        Cfg { nonterminals: 1 + n * g * n, terminals: pda.input().len(), start: 0, rules }.trimmed()
    }

    /// Removes rules mentioning non-generating or unreachable nonterminals.
    pub fn trimmed(&self) -> Cfg {
        let mut generating = vec![false; self.nonterminals];
        loop {
            let mut changed = false;
            for (a, body) in &self.rules {
                if !generating[*a]
                    && body.iter().all(|s| matches!(s, Sym::T(_)) || matches!(s, Sym::N(b) if generating[*b]))
                {
                    generating[*a] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let useful: Vec<&(usize, Vec<Sym>)> = self
            .rules
            .iter()
            .filter(|(a, body)| generating[*a] && body.iter().all(|s| !matches!(s, Sym::N(b) if !generating[*b])))
            .collect();
        let mut by_lhs: HashMap<usize, Vec<&Vec<Sym>>> = HashMap::new();
        for (a, body) in &useful {
            by_lhs.entry(*a).or_default().push(body);
        }
        let mut reachable = vec![false; self.nonterminals];
        reachable[self.start] = true;
        let mut work = vec![self.start];
        while let Some(a) = work.pop() {
            for body in by_lhs.get(&a).into_iter().flatten() {
                for s in body.iter() {
                    if let Sym::N(b) = s {
                        if !reachable[*b] {
                            reachable[*b] = true;
                            work.push(*b);
                        }
                    }
                }
            }
        }
        let mut rules: Vec<(usize, Vec<Sym>)> = useful.into_iter().filter(|(a, _)| reachable[*a]).cloned().collect();
        rules.sort();
        rules.dedup();
        Cfg { nonterminals: self.nonterminals, terminals: self.terminals, start: self.start, rules }
    }

    fn nullable(&self) -> Vec<bool> {
        let mut nullable = vec![false; self.nonterminals];
        loop {
            let mut changed = false;
            for (a, body) in &self.rules {
                if !nullable[*a] && body.iter().all(|s| matches!(s, Sym::N(b) if nullable[*b])) {
                    nullable[*a] = true;
                    changed = true;
                }
            }
            if !changed {
                return nullable;
            }
        }
    }

    /// Chomsky normal form: terminals isolated, long bodies split, ε-rules
    /// and unit rules eliminated. Whether the start symbol derives ε is kept
    /// as a flag.
    pub fn to_cnf(&self) -> CnfGrammar {
        let mut next_id = self.nonterminals;
        let mut fresh = || {
            next_id += 1;
            next_id - 1
        };
        let mut term_nt: HashMap<usize, usize> = HashMap::new();
        let mut rules: Vec<(usize, Vec<Sym>)> = Vec::new();
        for (a, body) in &self.rules {
            if body.len() <= 1 {
                rules.push((*a, body.clone()));
                continue;
            }
            let body: Vec<Sym> = body
                .iter()
                .map(|s| match s {
                    Sym::T(t) => Sym::N(*term_nt.entry(*t).or_insert_with(&mut fresh)),
                    n => *n,
                })
                .collect();
            let mut lhs = *a;
            for &sym in &body[..body.len() - 2] {
                let n = fresh();
                rules.push((lhs, vec![sym, Sym::N(n)]));
                lhs = n;
            }
            rules.push((lhs, body[body.len() - 2..].to_vec()));
        }
        for (t, n) in &term_nt {
            rules.push((*n, vec![Sym::T(*t)]));
        }
        let total = next_id;
        let binarized = Cfg { nonterminals: total, terminals: self.terminals, start: self.start, rules };
        let nullable = binarized.nullable();
        let start_nullable = nullable[self.start];

        let mut no_eps: HashSet<(usize, Vec<Sym>)> = HashSet::new();
        for (a, body) in &binarized.rules {
            match body.as_slice() {
                [] => {}
                [x] => {
                    no_eps.insert((*a, vec![*x]));
                }
                [x, y] => {
                    no_eps.insert((*a, vec![*x, *y]));
                    if matches!(y, Sym::N(b) if nullable[*b]) {
                        no_eps.insert((*a, vec![*x]));
                    }
                    if matches!(x, Sym::N(b) if nullable[*b]) {
                        no_eps.insert((*a, vec![*y]));
                    }
                }
                _ => unreachable!("bodies are binarized"),
            }
        }
        // Unit closure.
        let mut unit_edges: Vec<Vec<usize>> = vec![Vec::new(); total];
        let mut proper: Vec<Vec<Vec<Sym>>> = vec![Vec::new(); total];
        for (a, body) in &no_eps {
            match body.as_slice() {
                [Sym::N(b)] => {
                    if b != a {
                        unit_edges[*a].push(*b);
                    }
                }
                _ => proper[*a].push(body.clone()),
            }
        }
        let mut final_rules: HashSet<(usize, Vec<Sym>)> = HashSet::new();
        for a in 0..total {
            if unit_edges[a].is_empty() && proper[a].is_empty() {
                continue;
            }
            let mut seen = vec![false; total];
            seen[a] = true;
            let mut work = vec![a];
            while let Some(b) = work.pop() {
                for body in &proper[b] {
                    final_rules.insert((a, body.clone()));
                }
                for &c in &unit_edges[b] {
                    if !seen[c] {
                        seen[c] = true;
                        work.push(c);
                    }
                }
            }
        }
        let mut rules: Vec<(usize, Vec<Sym>)> = final_rules.into_iter().collect();
        rules.sort();
        let cnf = Cfg { nonterminals: total, terminals: self.terminals, start: self.start, rules }.trimmed();
        CnfGrammar::from_rules(&cnf, start_nullable)
    }

    /// Independent membership test for arbitrary grammars: a fixpoint over
    /// `(nonterminal, span)` facts that handles ε- and unit-rules directly.
    /// Intended for cross-checking the CNF pipeline on short words.
    pub fn derives(&self, word: &[usize]) -> bool {
        let n = word.len();
        let mut known: HashSet<(usize, usize, usize)> = HashSet::new();
        loop {
            let mut changed = false;
            for (a, body) in &self.rules {
                for i in 0..=n {
                    // ends[j] = body prefix can derive word[i..j]
                    let mut ends: HashSet<usize> = HashSet::from([i]);
                    for s in body {
                        let mut next = HashSet::new();
                        for &j in &ends {
                            match s {
                                Sym::T(t) => {
                                    if j < n && word[j] == *t {
                                        next.insert(j + 1);
                                    }
                                }
                                Sym::N(b) => {
                                    for k in j..=n {
                                        if known.contains(&(*b, j, k)) {
                                            next.insert(k);
                                        }
                                    }
                                }
                            }
                        }
                        ends = next;
                        if ends.is_empty() {
                            break;
                        }
                    }
                    for j in ends {
                        if known.insert((*a, i, j)) {
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        known.contains(&(self.start, 0, n))
    }
}

/// A grammar in Chomsky normal form indexed for CYK parsing.
#[derive(Clone, Debug)]
pub struct CnfGrammar {
    nonterminals: usize,
    start: usize,
    start_nullable: bool,
    /// Per terminal, the nonterminals `A` with a rule `A → a`.
    by_terminal: Vec<Vec<usize>>,
    /// Per left child `B`, the pairs `(A, C)` with a rule `A → B C`.
    by_left: Vec<Vec<(usize, usize)>>,
    rule_count: usize,
}

impl CnfGrammar {
    fn from_rules(cfg: &Cfg, start_nullable: bool) -> Self {
        let mut by_terminal = vec![Vec::new(); cfg.terminals];
        let mut by_left = vec![Vec::new(); cfg.nonterminals];
        for (a, body) in &cfg.rules {
            match body.as_slice() {
                [Sym::T(t)] => by_terminal[*t].push(*a),
                [Sym::N(b), Sym::N(c)] => by_left[*b].push((*a, *c)),
                other => unreachable!("non-CNF body {other:?}"),
            }
        }
        CnfGrammar {
            nonterminals: cfg.nonterminals,
            start: cfg.start,
            start_nullable,
            by_terminal,
            by_left,
            rule_count: cfg.rules.len(),
        }
    }

    pub fn rule_count(&self) -> usize {
        self.rule_count
    }

    /// CYK over bitsets of nonterminals.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let n = word.len();
        if n == 0 {
            return self.start_nullable;
        }
        let words = self.nonterminals.div_ceil(64);
        // table[i * (n + 1) + len]: nonterminals deriving word[i..i+len]
        let mut table = vec![vec![0u64; words]; n * (n + 1)];
        let cell = |i: usize, len: usize| i * (n + 1) + len;
        for (i, &a) in word.iter().enumerate() {
            let Some(heads) = self.by_terminal.get(a) else { return false };
            for &h in heads {
                table[cell(i, 1)][h / 64] |= 1 << (h % 64);
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                let mut acc = vec![0u64; words];
                for split in 1..len {
                    let left = &table[cell(i, split)];
                    let right = &table[cell(i + split, len - split)];
                    for (wi, &bits) in left.iter().enumerate() {
                        let mut bits = bits;
                        while bits != 0 {
                            let b = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for &(a, c) in &self.by_left[b] {
                                if right[c / 64] >> (c % 64) & 1 == 1 {
                                    acc[a / 64] |= 1 << (a % 64);
                                }
                            }
                        }
                    }
                }
                table[cell(i, len)] = acc;
            }
        }
        table[cell(0, n)][self.start / 64] >> (self.start % 64) & 1 == 1
    }
}
