//! Scaled-down runs of the invariant suites, one `pass`/`FAIL` line each.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CliError, Outcome, Report};
use crate::automata::{alphabet_of, one_counter_pda, zk_recognizer, KcfRecognizer};
use crate::diophantine::{intersect_linear, SearchLimits};
use crate::groups::{random_word, AnyGroup, BaumslagSolitar, GcGroup, GcSpec, GroupOracle};
use crate::stratify::{
    build_sk_cover, build_snk, is_stratified_period_set, partition_pi, perp_block_basis, SkFamilySpec,
};
use crate::vecset::{BoxSet, LinearSet, SemilinearSet, Vec0};
use crate::witness::{
    abc_lk_phi, check_witness_family, complex_period_constant, gc_pipeline, gc_witness_language,
    powers_of_two_enumerator, powers_of_two_family, refute_presentation, wreath_lk_phi, Refutation,
};

type Check = fn(u64, &mut ChaCha8Rng) -> Result<String, String>;

const SUITES: &[(&str, Check)] = &[
    ("intersection-oracle", intersection_oracle),
    ("sk-cover", sk_cover),
    ("stratification", stratification),
    ("perp-block-form", perp_block_form),
    ("complex-period-constant", constant_bound),
    ("gc-growth", gc_growth),
    ("gc-witness", gc_witness),
    ("wreath-phi", wreath_phi),
    ("abc-phi", abc_phi),
    ("recognizer-oracle", recognizer_oracle),
    ("relators", relators),
    ("bs-gc-agreement", bs_gc_agreement),
    ("refutation", refutation),
];

pub(super) fn run(bound: u64, seed: u64) -> Result<Outcome, CliError> {
    if bound == 0 {
        return Err(CliError::Usage("--box must be positive".into()));
    }
    let mut rep = Report::new("selftest", seed, &[("box", bound.to_string())]);
    let mut all = true;
    for (i, (name, check)) in SUITES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        match check(bound, &mut rng) {
            Ok(detail) => rep.line(format!("pass {name} {detail}")),
            Err(detail) => {
                all = false;
                rep.line(format!("FAIL {name} {detail}"));
            }
        }
    }
    rep.line(format!("summary: {}", if all { "all suites passed" } else { "failures present" }));
    Ok(Outcome { report: rep, ok: all })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_linear(rng: &mut ChaCha8Rng, r: usize, max_periods: usize, max_entry: u64) -> LinearSet {
    let vec = |rng: &mut ChaCha8Rng| Vec0::from_u64s(&(0..r).map(|_| rng.gen_range(0..=max_entry)).collect::<Vec<_>>());
    let c = vec(rng);
    let n = rng.gen_range(0..=max_periods);
    let periods = (0..n).map(|_| vec(rng)).collect();
    LinearSet::new(c, periods).expect("consistent dimension")
}

fn intersection_oracle(bound: u64, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let cases = 40;
    for case in 0..cases {
        let r = rng.gen_range(1..=3);
        let sets: Vec<LinearSet> = (0..rng.gen_range(2..=3)).map(|_| random_linear(rng, r, 2, 2)).collect();
        let inter = intersect_linear(&sets, SearchLimits::default()).map_err(|e| format!("case {case}: {e}"))?;
        let box_bound = bound * 2;
        let got = inter.box_members(box_bound).map_err(|e| e.to_string())?;
        let mut want: Option<BoxSet> = None;
        for s in &sets {
            let m = SemilinearSet::single(s.clone()).box_members(box_bound).map_err(|e| e.to_string())?;
            want = Some(match want {
                None => m,
                Some(w) => w.intersect(&m),
            });
        }
        if let Some(p) = got.first_difference(&want.expect("at least two sets")) {
            return Err(format!("case {case}: disagreement at {p:?}"));
        }
    }
    Ok(format!("cases={cases}"))
}

fn sk_cover(bound: u64, _: &mut ChaCha8Rng) -> Result<String, String> {
    for k in 1..=3usize {
        let cover = build_sk_cover(k).map_err(|e| e.to_string())?;
        let inter = intersect_linear(&cover, SearchLimits::default()).map_err(|e| e.to_string())?;
        let spec = SkFamilySpec::new(1, k).expect("k ≥ 1");
        let b = bound.min(4);
        let got = inter.box_members(b).map_err(|e| e.to_string())?;
        let want = BoxSet::from_predicate(2 * k, b, |p| spec.contains(p)).map_err(|e| e.to_string())?;
        ensure(got.first_difference(&want).is_none(), || format!("k={k} differs from the predicate"))?;
        let dims: Vec<usize> = inter.components().iter().map(LinearSet::dimension).collect();
        ensure(dims.iter().all(|&d| d == k), || format!("k={k} dimensions {dims:?}"))?;
    }
    Ok("k=1..3".into())
}

fn stratification(_: u64, _: &mut ChaCha8Rng) -> Result<String, String> {
    for k in 1..=5usize {
        let cover = build_sk_cover(k).map_err(|e| e.to_string())?;
        ensure(cover.iter().all(|c| is_stratified_period_set(c.periods())), || format!("cover k={k} not stratified"))?;
        if k >= 2 {
            let canonical = build_snk(SkFamilySpec::new(1, k).expect("k ≥ 1"));
            ensure(!is_stratified_period_set(canonical.periods()), || format!("S^({k}) reported stratified"))?;
        }
    }
    Ok("k=1..5".into())
}

fn random_stratified(rng: &mut ChaCha8Rng, r: usize) -> LinearSet {
    loop {
        let mut periods = Vec::new();
        for _ in 0..rng.gen_range(1..=r) {
            let mut e = vec![0u64; r];
            let i = rng.gen_range(0..r);
            e[i] = rng.gen_range(1..=3);
            if rng.gen_bool(0.6) {
                let j = rng.gen_range(0..r);
                if j != i {
                    e[j] = rng.gen_range(1..=3);
                }
            }
            periods.push(Vec0::from_u64s(&e));
        }
        if is_stratified_period_set(&periods) {
            return LinearSet::new(Vec0::zeros(r), periods).expect("consistent dimension");
        }
    }
}

fn perp_block_form(_: u64, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let cases = 40;
    for case in 0..cases {
        let r = rng.gen_range(1..=6);
        let l = random_stratified(rng, r);
        let basis = perp_block_basis(&l).map_err(|e| format!("case {case}: {e}"))?;
        ensure(basis.len() == r - l.dimension(), || format!("case {case}: wrong count"))?;
        let blocks = partition_pi(&l).map_err(|e| e.to_string())?.blocks();
        for v in &basis {
            for p in l.periods() {
                ensure(v.dot(&p.to_qvec()).is_zero(), || format!("case {case}: not orthogonal"))?;
            }
            let supp: Vec<usize> = v.support().iter().map(|i| i + 1).collect();
            ensure(blocks.iter().any(|b| supp.iter().all(|i| b.contains(i))), || {
                format!("case {case}: support spans blocks")
            })?;
        }
    }
    Ok(format!("cases={cases}"))
}

fn constant_bound(_: u64, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let cases = 30;
    for case in 0..cases {
        let comps = (0..rng.gen_range(1..=2)).map(|_| random_linear(rng, 2, 2, 3)).collect();
        let set = SemilinearSet::new(2, comps).expect("dimension 2");
        let c = complex_period_constant(&set, 1).map_err(|e| e.to_string())?;
        for comp in set.components() {
            let complex: Vec<&Vec0> = comp.periods().iter().filter(|p| !p.get(0).is_zero()).collect();
            for alpha in 0..=6u64 {
                for beta in 0..=6u64 {
                    let coeffs = [alpha, beta];
                    let v = complex
                        .iter()
                        .zip(coeffs)
                        .fold(comp.constant().clone(), |acc, (p, k)| acc.add(&p.scale(&BigUint::from(k))));
                    let sigma = v.get(0).clone();
                    if sigma.is_zero() {
                        continue;
                    }
                    ensure(*v.get(1) < &c * &sigma, || format!("case {case}: {v} breaks C={c}"))?;
                }
            }
        }
    }
    Ok(format!("cases={cases}"))
}

fn gc_growth(_: u64, _: &mut ChaCha8Rng) -> Result<String, String> {
    let depth = 10u64;
    for c in [vec![1, -2], vec![-1, 0, 2]] {
        let spec = GcSpec::new(c.clone()).map_err(|e| e.to_string())?;
        let st = gc_pipeline(&spec, depth).map_err(|e| e.to_string())?;
        let s = st.spec.s() as u64;
        for k in 1..=depth {
            let iota = st.iota(k).expect("within depth");
            ensure(iota <= k * s, || format!("{c:?}: iota_{k} = {iota}"))?;
            ensure(st.pivot_valuation(k).is_some_and(|v| v >= k as i64), || format!("{c:?}: valuation at {k}"))?;
            let lambda = st.lambda(k).expect("within depth");
            ensure(*lambda >= num_bigint::BigInt::from(1u8) << k, || format!("{c:?}: lambda_{k} = {lambda}"))?;
        }
    }
    Ok(format!("depth={depth}"))
}

fn gc_witness(bound: u64, _: &mut ChaCha8Rng) -> Result<String, String> {
    let st = gc_pipeline(&GcSpec::new(vec![1, -2]).expect("valid"), 8).map_err(|e| e.to_string())?;
    let w = gc_witness_language(st).map_err(|e| e.to_string())?;
    let fam = w.family();
    let cap = 256;
    let levels: Vec<u64> = (1..=bound.min(4)).collect();
    let report = check_witness_family(&fam, &levels, &|a: &Vec0, cap: u64| w.enumerate_b(a, cap), cap);
    ensure(report.all_pass(), || report.to_string().replace('\n', "; "))?;
    Ok(format!("levels={} cap={cap}", levels.len()))
}

fn doubled(points: &[u64], k: usize, reps: usize) -> Vec<u64> {
    let half: Vec<u64> = points.iter().flat_map(|&m| std::iter::repeat_n(m, reps)).collect();
    let mut out = half.clone();
    out.extend(half);
    debug_assert_eq!(out.len(), 2 * reps * k);
    out
}

fn increasing_tuples(k: usize, cap: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                let start = t.last().map_or(0, |&x| x + 1);
                (start..=cap).map(move |m| {
                    let mut t = t.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    out
}

fn wreath_phi(bound: u64, _: &mut ChaCha8Rng) -> Result<String, String> {
    let cap = bound.min(3);
    for k in 1..=2usize {
        let sample = wreath_lk_phi(Some(2), k, cap).map_err(|e| e.to_string())?;
        let mut want: Vec<Vec<u64>> = increasing_tuples(k, cap).iter().map(|t| doubled(t, k, 2)).collect();
        want.sort();
        ensure(sample.points == want, || format!("k={k}: {} members, expected {}", sample.points.len(), want.len()))?;
        ensure(sample.difference_rank() == k, || format!("k={k}: rank {}", sample.difference_rank()))?;
    }
    Ok(format!("k=1..2 cap={cap}"))
}

fn abc_phi(_: u64, _: &mut ChaCha8Rng) -> Result<String, String> {
    let cap = 2;
    let sample = abc_lk_phi(2, 1, cap).map_err(|e| e.to_string())?;
    let want: Vec<Vec<u64>> = (0..=cap).map(|m| vec![m; 8]).collect();
    ensure(sample.points == want, || format!("{:?}", sample.points))?;
    ensure(sample.all_in(SkFamilySpec::new(4, 1).expect("valid")), || "outside S^(4,1)".into())?;
    Ok(format!("k=1 cap={cap}"))
}

fn all_words(len: usize, letters: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn recognizer_oracle(_: u64, _: &mut ChaCha8Rng) -> Result<String, String> {
    let product = zk_recognizer(2).map_err(|e| e.to_string())?.compile();
    let z =
        KcfRecognizer::new(vec![one_counter_pda(&alphabet_of(&["x", "X"]), "x", "X")]).map_err(|e| e.to_string())?;
    let domain = alphabet_of(&["x1", "X1", "x2", "X2"]);
    let regenerated = z
        .inverse_homomorphism(&domain, &["x", "X", "", ""])
        .and_then(|a| a.intersect(&z.inverse_homomorphism(&domain, &["", "", "x", "X"])?))
        .map_err(|e| e.to_string())?
        .compile();
    let group = AnyGroup::from_descriptor("zn:2").map_err(|e| e.to_string())?;
    let words = all_words(6, 4);
    for w in &words {
        let expected = group.in_word_problem(w);
        ensure(product.accepts(w) == expected && regenerated.accepts(w) == expected, || format!("{w:?}"))?;
    }
    Ok(format!("words={}", words.len()))
}

fn relators(_: u64, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let descriptors =
        ["free:2", "zn:3", "bs:1,2", "bs:2,3", "wreath:p=2", "wreath:Z", "gc:1,-2", "gc:-1,0,2", "abc:p=2", "abc:p=3"];
    for d in descriptors {
        let g = AnyGroup::from_descriptor(d).map_err(|e| e.to_string())?;
        let report = g.check_relators();
        ensure(report.failures.is_empty(), || format!("{d}: {:?}", report.failures))?;
        for _ in 0..20 {
            let w = random_word(g.alphabet(), 10, rng);
            ensure(g.inverse_consistent_on(&w), || format!("{d}: {}", g.alphabet().render(&w)))?;
        }
    }
    Ok(format!("groups={}", descriptors.len()))
}

fn bs_gc_agreement(_: u64, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut checked = 0;
    for m in [2i64, 3] {
        let bs = BaumslagSolitar::new(1, m);
        let gc = GcGroup::new(GcSpec::new(vec![-m, 1]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let translate = |w: &[usize]| -> Vec<usize> {
            let text: String = bs
                .alphabet()
                .render(w)
                .chars()
                .map(|c| match c {
                    'x' => 'b',
                    'X' => 'B',
                    't' => 'a',
                    _ => 'A',
                })
                .collect();
            gc.parse_word(&text).expect("letters a A b B")
        };
        for _ in 0..50 {
            let u = random_word(bs.alphabet(), rng.gen_range(0..=12), rng);
            let v = random_word(bs.alphabet(), rng.gen_range(0..=12), rng);
            let mut uv = u.clone();
            uv.extend(bs.alphabet().invert_word(&v));
            ensure(bs.in_word_problem(&uv) == gc.in_word_problem(&translate(&uv)), || format!("m={m}"))?;
            checked += 1;
        }
    }
    Ok(format!("pairs={checked}"))
}

fn refutation(_: u64, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let fam = powers_of_two_family(1024);
    let en = powers_of_two_enumerator(1024);
    let cases = 10;
    for case in 0..cases {
        let comps = (0..rng.gen_range(0..=3)).map(|_| random_linear(rng, 2, 3, 3)).collect();
        let set = SemilinearSet::new(2, comps).expect("dimension 2");
        match refute_presentation(&set, &fam, &en, u64::MAX, 64).map_err(|e| e.to_string())? {
            Refutation::Certificate { certificate, .. } => {
                let ok = certificate.replay(&set, &fam).map_err(|e| e.to_string())?;
                ensure(ok, || format!("case {case}: certificate does not replay"))?;
            }
            Refutation::Indeterminate { reason } => return Err(format!("case {case}: {reason}")),
        }
    }
    Ok(format!("cases={cases}"))
}
