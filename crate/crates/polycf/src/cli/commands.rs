use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{in_file, read_file, selftest, Cli, CliError, Command, Outcome, Report};
use super::{DiophAction, FamilyArgs, FamilyEmit, GroupAction, ParikhArgs, PdaAction, SlsetAction, WitnessAction};
use crate::automata::{build_mk_abc, build_mk_wreath, parse_dfa, parse_pda, tokenize, zk_recognizer, KcfRecognizer};
use crate::diophantine::{hilbert_basis, intersect_semilinear, minimal_inhom_solutions, parse_system, SearchLimits};
use crate::groups::{random_word, AnyGroup};
use crate::stratify::{
    build_sk_cover, build_snk, presentation_matches_predicate, stratification_violation, SkFamilySpec,
};
use crate::vecset::{parse_semilinear, Permutation, SemilinearSet, Vec0};
use crate::witness::{
    abc_lk_phi, bounded_parikh, check_witness_family, complex_period_constant, gc_pipeline, gc_witness_language,
    powers_of_two_enumerator, powers_of_two_family, refute_presentation, wreath_lk_phi, PhiSample, Refutation,
};

pub(super) fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Slset(a) => slset(&a.action, seed),
        Command::Dioph(a) => dioph(&a.action, seed),
        Command::Family(a) => family(a, seed),
        Command::Pda(a) => pda(&a.action, seed),
        Command::Group(a) => group(&a.action, seed),
        Command::Parikh(a) => parikh(a, seed),
        Command::Witness(a) => witness(&a.action, seed),
        Command::Selftest(a) => selftest::run(a.bound, seed),
    }
}

fn ok(report: Report) -> Result<Outcome, CliError> {
    Ok(Outcome { report, ok: true })
}

fn load_slset(path: &std::path::Path) -> Result<SemilinearSet, CliError> {
    in_file(path, parse_semilinear(&read_file(path)?))
}

fn parse_entries(text: &str) -> Result<Vec0, CliError> {
    let entries = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("not a nonnegative integer: {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Vec0::new(entries).map_err(|e| CliError::Usage(e.to_string()))
}

fn slset(action: &SlsetAction, seed: u64) -> Result<Outcome, CliError> {
    match action {
        SlsetAction::Show { input } => {
            let set = load_slset(input)?;
            let mut rep = Report::new("slset show", seed, &[]);
            rep.line(set.to_string().trim_end());
            for (i, c) in set.components().iter().enumerate() {
                rep.line(format!("component {} dimension {}", i + 1, c.dimension()));
            }
            ok(rep)
        }
        SlsetAction::Member { input, vec } => {
            let set = load_slset(input)?;
            let v = parse_entries(vec)?;
            let mut rep = Report::new("slset member", seed, &[]);
            match set.certificate(&v)? {
                Some(cert) => {
                    rep.line("member: true");
                    let coeffs: Vec<String> = cert.coefficients.iter().map(ToString::to_string).collect();
                    rep.line(format!("component: {} coefficients: {}", cert.component + 1, coeffs.join(" ")));
                }
                None => rep.line("member: false"),
            }
            ok(rep)
        }
        SlsetAction::Intersect { inputs } => {
            let sets = inputs.iter().map(|p| load_slset(p)).collect::<Result<Vec<_>, _>>()?;
            let out = intersect_semilinear(&sets, SearchLimits::default())?;
            let mut rep = Report::new("slset intersect", seed, &[]);
            rep.line(out.to_string().trim_end());
            ok(rep)
        }
        SlsetAction::Box { input, bound } => {
            let set = load_slset(input)?;
            let members = set.box_members(*bound)?;
            let mut rep = Report::new("slset box", seed, &[("box", bound.to_string())]);
            rep.line(format!("count: {}", members.count()));
            for p in members.members() {
                rep.line(join(&p));
            }
            ok(rep)
        }
        SlsetAction::Permute { input, tau } => {
            let set = load_slset(input)?;
            let tau = Permutation::from_one_based(tau).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut rep = Report::new("slset permute", seed, &[]);
            rep.line(set.permute(&tau)?.to_string().trim_end());
            ok(rep)
        }
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn dioph(action: &DiophAction, seed: u64) -> Result<Outcome, CliError> {
    let DiophAction::Solve { input, cap } = action;
    let (sys, rhs) = in_file(input, parse_system(&read_file(input)?))?;
    let limits = SearchLimits { frontier: *cap };
    let mut rep = Report::new("dioph solve", seed, &[("frontier", cap.to_string())]);
    let basis = hilbert_basis(&sys, limits)?;
    rep.line(format!("hilbert basis ({}):", basis.len()));
    for v in &basis {
        rep.line(format!("  {v}"));
    }
    if let Some(rhs) = rhs {
        let sols = minimal_inhom_solutions(&sys, &rhs, limits)?;
        rep.line(format!("minimal solutions ({}):", sols.len()));
        for v in &sols {
            rep.line(format!("  {v}"));
        }
    }
    ok(rep)
}

fn family(args: &FamilyArgs, seed: u64) -> Result<Outcome, CliError> {
    let spec = SkFamilySpec::new(args.n, args.k)?;
    let caps = [("box", args.bound.to_string())];
    let mut rep = Report::new("family", seed, &caps);
    let mut all_ok = true;
    match args.emit {
        FamilyEmit::Slset => rep.line(SemilinearSet::single(build_snk(spec)).to_string().trim_end()),
        FamilyEmit::PredicateCheck => match presentation_matches_predicate(spec, args.bound)? {
            None => rep.line(format!("predicate-check: pass on [0,{}]^{}", args.bound, spec.dim())),
            Some(p) => {
                all_ok = false;
                rep.line(format!("predicate-check: FAIL at {}", join(&p)));
            }
        },
        FamilyEmit::Cover => {
            let cover = build_sk_cover(args.k)?;
            rep.line(format!("cover of S^({}) in dimension {}", args.k, 2 * args.k));
            for (i, c) in cover.iter().enumerate() {
                rep.line(format!("S_{} {c}", i + 1));
            }
        }
        FamilyEmit::Stratification => {
            let set = build_snk(spec);
            match stratification_violation(set.periods()) {
                None => rep.line("stratified: true"),
                Some(v) => rep.line(format!("stratified: false ({v})")),
            }
        }
    }
    Ok(Outcome { report: rep, ok: all_ok })
}

fn builtin(name: &str) -> Result<KcfRecognizer, CliError> {
    let (kind, k) = name.split_once(':').ok_or_else(|| CliError::Usage(format!("expected KIND:K, got {name:?}")))?;
    let k: usize = k.parse().map_err(|_| CliError::Usage(format!("bad block count in {name:?}")))?;
    Ok(match kind {
        "zk" => zk_recognizer(k)?,
        "mk-wreath" => build_mk_wreath(k)?,
        "mk-abc" => build_mk_abc(k)?,
        _ => return Err(CliError::Usage(format!("unknown recognizer {kind:?}; use zk, mk-wreath or mk-abc"))),
    })
}

fn pda(action: &PdaAction, seed: u64) -> Result<Outcome, CliError> {
    let command = match action {
        PdaAction::Run { .. } => "pda run",
        PdaAction::Dfa { .. } => "pda dfa",
        PdaAction::Builtin { .. } => "pda builtin",
        PdaAction::Emit { .. } => "pda emit",
    };
    let mut rep = Report::new(command, seed, &[]);
    match action {
        PdaAction::Run { machine, word } => {
            let m = in_file(machine, parse_pda(&read_file(machine)?))?;
            let w = m.tokenize(word)?;
            let explored = m.explore_default(&w);
            rep.line(format!("accept: {}", m.accepts(&w)));
            rep.line(format!("explorer: accepted={} truncated={}", explored.accepted, explored.truncated));
        }
        PdaAction::Dfa { machine, word } => {
            let d = in_file(machine, parse_dfa(&read_file(machine)?))?;
            rep.line(format!("accept: {}", d.accepts_str(word)?));
        }
        PdaAction::Builtin { name, word } => {
            let r = builtin(name)?.compile();
            let w = tokenize(word, r.alphabet())?;
            rep.line(format!("accept: {}", r.accepts(&w)));
            let verdicts: Vec<String> = r.component_verdicts(&w).iter().map(ToString::to_string).collect();
            rep.line(format!("components: {}", verdicts.join(" ")));
        }
        PdaAction::Emit { name } => {
            for (i, p) in builtin(name)?.pdas().iter().enumerate() {
                rep.line(format!("# component {}", i + 1));
                rep.line(p.to_string().trim_end());
            }
        }
    }
    ok(rep)
}

fn load_group(desc: &str) -> Result<AnyGroup, CliError> {
    Ok(AnyGroup::from_descriptor(desc)?)
}

fn group(action: &GroupAction, seed: u64) -> Result<Outcome, CliError> {
    match action {
        GroupAction::Eval { group, word } => {
            let g = load_group(group)?;
            let w = g.parse_word(word)?;
            let mut rep = Report::new("group eval", seed, &[]);
            rep.line(format!("group: {}", g.name()));
            rep.line(format!("element: {}", g.eval_display(&w)));
            rep.line(format!("identity: {}", g.in_word_problem(&w)));
            ok(rep)
        }
        GroupAction::Relators { group } => {
            let g = load_group(group)?;
            let r = g.check_relators();
            let mut rep = Report::new("group relators", seed, &[]);
            rep.line(format!("group: {}", g.name()));
            rep.line(format!("checked: {} failures: {}", r.checked, r.failures.len()));
            for f in &r.failures {
                rep.line(format!("FAIL {f}"));
            }
            Ok(Outcome { ok: r.failures.is_empty(), report: rep })
        }
        GroupAction::Random { group, count, len } => {
            let g = load_group(group)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let caps = [("count", count.to_string()), ("len", len.to_string())];
            let mut rep = Report::new("group random", seed, &caps);
            let mut failures = 0usize;
            for _ in 0..*count {
                let u = random_word(g.alphabet(), *len, &mut rng);
                let v = random_word(g.alphabet(), *len, &mut rng);
                if !g.inverse_consistent_on(&u) || !g.multiplicative_on(&u, &v) {
                    failures += 1;
                    rep.line(format!("FAIL {}", g.alphabet().render(&u)));
                }
            }
            rep.line(format!("checked: {count} failures: {failures}"));
            Ok(Outcome { ok: failures == 0, report: rep })
        }
    }
}

fn parikh(args: &ParikhArgs, seed: u64) -> Result<Outcome, CliError> {
    let mut rep = Report::new("parikh", seed, &[("box", args.bound.to_string())]);
    let phi = match (&args.group, &args.machine) {
        (Some(desc), None) => {
            let g = load_group(desc)?;
            let words = args.words.iter().map(|w| g.parse_word(w)).collect::<Result<Vec<_>, _>>()?;
            bounded_parikh(&words, args.bound, |w| g.in_word_problem(w))?
        }
        (None, Some(path)) => {
            let m = in_file(path, parse_pda(&read_file(path)?))?;
            let words = args.words.iter().map(|w| m.tokenize(w)).collect::<Result<Vec<_>, _>>()?;
            let cnf = crate::automata::Cfg::from_pda(&m).to_cnf();
            bounded_parikh(&words, args.bound, |w| cnf.accepts(w))?
        }
        _ => return Err(CliError::Usage("give exactly one of --group or --machine".into())),
    };
    rep.line(format!("count: {}", phi.count()));
    for p in phi.members() {
        rep.line(join(&p));
    }
    ok(rep)
}

fn phi_lines(rep: &mut Report, sample: &PhiSample, spec: SkFamilySpec) {
    rep.line(format!("members: {}", sample.points.len()));
    rep.line(format!("inside S^({},{}): {}", spec.n(), spec.k(), sample.all_in(spec)));
    rep.line(format!("difference rank: {}", sample.difference_rank()));
    for p in &sample.points {
        rep.line(join(p));
    }
}

fn witness(action: &WitnessAction, seed: u64) -> Result<Outcome, CliError> {
    match action {
        WitnessAction::Gc { c, depth, cap, levels } => {
            let spec = crate::groups::GcSpec::new(c.clone())?;
            let caps = [("depth", depth.to_string()), ("cap", cap.to_string()), ("levels", levels.to_string())];
            let mut rep = Report::new("witness gc", seed, &caps);
            let state = gc_pipeline(&spec, *depth)?;
            rep.line(format!("spec: {} (reversed: {})", state.spec, state.reversed));
            rep.line(format!("p: {} row N: {} max valuation: {}", state.p(), state.row, state.top_valuation));
            let types: Vec<&str> = state.types.iter().map(|t| if t.epsilon() < 0 { "1" } else { "2" }).collect();
            rep.line(format!("types: {} levels used: {}", types.join(" "), join(&state.n_seq)));
            rep.line("k\tiota_k\tell_k\tlambda_k\tvaluation");
            for k in 1..=*depth {
                let ell = state.ell(k).map_or("-".into(), ToString::to_string);
                let lambda = state.lambda(k).map_or("-".into(), ToString::to_string);
                let val = state.pivot_valuation(k).map_or("-".into(), |v| v.to_string());
                rep.line(format!("{k}\t{}\t{ell}\t{lambda}\t{val}", state.iota(k).unwrap_or(0)));
            }
            let w = gc_witness_language(state)?;
            let fam = w.family();
            let en = |a: &Vec0, cap: u64| w.enumerate_b(a, cap);
            let lv: Vec<u64> = (1..=*levels).collect();
            let report = check_witness_family(&fam, &lv, &en, *cap);
            rep.line(report.to_string().trim_end());
            rep.line("note: bounded-scale evidence at the listed levels and cap");
            Ok(Outcome { ok: report.all_pass(), report: rep })
        }
        WitnessAction::Wreath { p, k, cap } => {
            let modulus = match p.as_str() {
                "Z" | "z" => None,
                other => Some(
                    other.parse().map_err(|_| CliError::Usage(format!("--p expects a number or Z, got {other:?}")))?,
                ),
            };
            let caps = [("cap", cap.to_string())];
            let mut rep = Report::new("witness wreath", seed, &caps);
            let sample = wreath_lk_phi(modulus, *k, *cap)?;
            phi_lines(&mut rep, &sample, SkFamilySpec::new(2, *k)?);
            ok(rep)
        }
        WitnessAction::Abc { p, k, cap } => {
            let mut rep = Report::new("witness abc", seed, &[("cap", cap.to_string())]);
            let sample = abc_lk_phi(*p, *k, *cap)?;
            phi_lines(&mut rep, &sample, SkFamilySpec::new(4, *k)?);
            ok(rep)
        }
        WitnessAction::Constant { input, r } => {
            let set = load_slset(input)?;
            let mut rep = Report::new("witness constant", seed, &[]);
            rep.line(format!("C: {}", complex_period_constant(&set, *r)?));
            ok(rep)
        }
        WitnessAction::Refute { input, depth } => {
            let set = load_slset(input)?;
            const LIMIT: u64 = 1024;
            let cap = u64::MAX;
            let mut rep =
                Report::new("witness refute", seed, &[("depth", depth.to_string()), ("n-limit", LIMIT.to_string())]);
            let fam = powers_of_two_family(LIMIT);
            let en = powers_of_two_enumerator(LIMIT);
            match refute_presentation(&set, &fam, &en, cap, *depth)? {
                Refutation::Certificate { constant, level, certificate } => {
                    let replayed = certificate.replay(&set, &fam)?;
                    rep.line(format!("C: {constant} level: {level}"));
                    rep.line(format!("certificate: {certificate}"));
                    rep.line(format!("replayed: {replayed}"));
                    Ok(Outcome { ok: replayed, report: rep })
                }
                Refutation::Indeterminate { reason } => {
                    rep.line(format!("indeterminate: {reason}"));
                    Ok(Outcome { ok: false, report: rep })
                }
            }
        }
    }
}
