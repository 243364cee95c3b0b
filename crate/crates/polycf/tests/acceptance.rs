//! The twelve acceptance criteria. Each test writes one `pass`/`FAIL` line
//! straight to stderr (so it shows even under captured output) and then
//! asserts on the outcome.

use std::io::Write;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polycf::automata::{alphabet_of, one_counter_pda, zk_recognizer, KcfRecognizer};
use polycf::diophantine::{intersect_linear, SearchLimits};
use polycf::groups::{random_word, AnyGroup, BaumslagSolitar, GcGroup, GcSpec, GroupOracle};
use polycf::stratify::{
    build_sk_cover, build_snk, is_stratified_period_set, partition_pi, perp_block_basis, stratification_violation,
    SkFamilySpec, StratificationViolation,
};
use polycf::vecset::{BoxSet, LinearSet, SemilinearSet, Vec0};
use polycf::witness::{
    abc_lk_phi, check_witness_family, gc_pipeline, gc_witness_language, powers_of_two_enumerator, powers_of_two_family,
    refute_presentation, wreath_lk_phi, Refutation,
};

type Outcome = Result<String, String>;

fn record(n: usize, name: &str, budget_secs: u64, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = body();
    let secs = start.elapsed().as_secs_f64();
    let outcome = match outcome {
        Ok(detail) if secs > budget_secs as f64 => Err(format!("{detail}; took {secs:.1}s, budget {budget_secs}s")),
        other => other,
    };
    let line = match &outcome {
        Ok(detail) => format!("acceptance criterion {n:>2} {name}: pass ({detail}; {secs:.2}s)"),
        Err(detail) => format!("acceptance criterion {n:>2} {name}: FAIL ({detail})"),
    };
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(outcome.is_ok(), "{line}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_vec(rng: &mut ChaCha8Rng, r: usize, max_entry: u64) -> Vec0 {
    Vec0::from_u64s(&(0..r).map(|_| rng.gen_range(0..=max_entry)).collect::<Vec<_>>())
}

fn random_linear(rng: &mut ChaCha8Rng, r: usize, max_periods: usize, max_entry: u64) -> LinearSet {
    let c = random_vec(rng, r, max_entry);
    let n = rng.gen_range(0..=max_periods);
    let periods = (0..n).map(|_| random_vec(rng, r, max_entry)).collect();
    LinearSet::new(c, periods).unwrap()
}

#[test]
fn criterion_01_intersection_matches_pointwise_and() {
    record(1, "intersection oracle equivalence", 120, || {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let bound = 25;
        let mut points = 0usize;
        for case in 0..200 {
            let r = rng.gen_range(1..=4);
            let count = rng.gen_range(2..=3);
            let sets: Vec<LinearSet> = (0..count).map(|_| random_linear(&mut rng, r, 3, 3)).collect();
            let inter =
                intersect_linear(&sets, SearchLimits::default()).map_err(|e| format!("case {case}: {sets:?}: {e}"))?;
            let got = inter.box_members(bound).map_err(|e| e.to_string())?;
            let mut want: Option<BoxSet> = None;
            for s in &sets {
                let m = SemilinearSet::single(s.clone()).box_members(bound).map_err(|e| e.to_string())?;
                want = Some(match want {
                    None => m,
                    Some(w) => w.intersect(&m),
                });
            }
            if let Some(p) = got.first_difference(&want.unwrap()) {
                return Err(format!("case {case}: {sets:?} disagree at {p:?}"));
            }
            points += 26usize.pow(r as u32);
        }
        Ok(format!("200 cases, {points} box points"))
    });
}

#[test]
fn criterion_02_sk_is_intersection_of_cover() {
    record(2, "S^(k) reconstruction", 60, || {
        for k in 1..=4usize {
            let cover = build_sk_cover(k).map_err(|e| e.to_string())?;
            let inter = intersect_linear(&cover, SearchLimits::default()).map_err(|e| e.to_string())?;
            let spec = SkFamilySpec::new(1, k).unwrap();
            let got = inter.box_members(6).map_err(|e| e.to_string())?;
            let want = BoxSet::from_predicate(2 * k, 6, |p| spec.contains(p)).map_err(|e| e.to_string())?;
            ensure(got.first_difference(&want).is_none(), || format!("k={k}: differs from the predicate"))?;
            let dims: Vec<usize> = inter.components().iter().map(LinearSet::dimension).collect();
            ensure(!dims.is_empty() && dims.iter().all(|&d| d == k), || format!("k={k}: dimensions {dims:?}"))?;
        }
        Ok("k=1..4 on [0,6]^{2k}".into())
    });
}

#[test]
fn criterion_03_stratification_facts() {
    record(3, "stratification facts", 5, || {
        for k in 1..=5usize {
            for (i, c) in build_sk_cover(k).map_err(|e| e.to_string())?.iter().enumerate() {
                ensure(is_stratified_period_set(c.periods()), || format!("k={k}: cover set {} not stratified", i + 1))?;
            }
        }
        for k in 2..=5usize {
            let canonical = build_snk(SkFamilySpec::new(1, k).unwrap());
            match stratification_violation(canonical.periods()) {
                Some(StratificationViolation::Crossing { first, second }) => {
                    let (i, kk) = first;
                    let (j, l) = second;
                    ensure(i < j && j < kk && kk < l, || {
                        format!("k={k}: certificate {first:?} {second:?} is not a crossing")
                    })?;
                }
                other => return Err(format!("k={k}: expected a crossing, got {other:?}")),
            }
        }
        Ok("covers k=1..5 stratified, S^(k) k=2..5 crossing".into())
    });
}

fn random_stratified(rng: &mut ChaCha8Rng, r: usize) -> LinearSet {
    loop {
        let periods: Vec<Vec0> = (0..rng.gen_range(1..=r + 1))
            .map(|_| {
                let mut e = vec![0u64; r];
                e[rng.gen_range(0..r)] = rng.gen_range(1..=3);
                if rng.gen_bool(0.6) {
                    e[rng.gen_range(0..r)] = rng.gen_range(1..=3);
                }
                Vec0::from_u64s(&e)
            })
            .collect();
        if is_stratified_period_set(&periods) {
            return LinearSet::new(Vec0::zeros(r), periods).unwrap();
        }
    }
}

#[test]
fn criterion_04_perp_block_form() {
    record(4, "perp block form", 30, || {
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for case in 0..100 {
            let r = rng.gen_range(1..=6);
            let l = random_stratified(&mut rng, r);
            let basis = perp_block_basis(&l).map_err(|e| format!("case {case}: {e}"))?;
            ensure(basis.len() == r - l.dimension(), || format!("case {case}: {} vectors for r={r}", basis.len()))?;
            let blocks = partition_pi(&l).map_err(|e| e.to_string())?.blocks();
            for v in &basis {
                for p in l.periods() {
                    ensure(v.dot(&p.to_qvec()).is_zero(), || format!("case {case}: {v} not orthogonal to {p}"))?;
                }
                let supp: Vec<usize> = v.support().iter().map(|i| i + 1).collect();
                ensure(blocks.iter().any(|b| supp.iter().all(|i| b.contains(i))), || {
                    format!("case {case}: {v} spans classes")
                })?;
            }
        }
        Ok("100 stratified sets".into())
    });
}

#[test]
fn criterion_05_matrix_growth() {
    record(5, "growth of matrix powers", 10, || {
        for c in [vec![1, -2], vec![-1, 0, 2]] {
            let st = gc_pipeline(&GcSpec::new(c.clone()).unwrap(), 12).map_err(|e| e.to_string())?;
            let s = st.spec.s() as u64;
            for k in 1..=12u64 {
                let iota = st.iota(k).unwrap();
                ensure(iota <= k * s, || format!("{c:?}: iota_{k} = {iota}"))?;
                ensure(st.pivot_valuation(k).is_some_and(|v| v >= k as i64), || {
                    format!("{c:?}: valuation at level {k}")
                })?;
                let lambda = st.lambda(k).unwrap();
                let two_k = BigInt::from(1u8) << k;
                ensure(*lambda >= two_k, || format!("{c:?}: lambda_{k} = {lambda}"))?;
                if c == [1, -2] {
                    ensure(*lambda == two_k, || format!("lambda_{k} = {lambda}, expected 2^{k}"))?;
                }
            }
        }
        Ok("specs (1,-2), (-1,0,2), k=1..12".into())
    });
}

#[test]
fn criterion_06_gc_witness_family() {
    record(6, "Gc witness family", 60, || {
        let st = gc_pipeline(&GcSpec::new(vec![1, -2]).unwrap(), 12).map_err(|e| e.to_string())?;
        let w = gc_witness_language(st).map_err(|e| e.to_string())?;
        let fam = w.family();
        for t in 1..=6u64 {
            ensure(fam.f(t) == BigUint::from(1u8) << t, || format!("f({t}) = {}", fam.f(t)))?;
        }
        let levels: Vec<u64> = (1..=6).collect();
        let report = check_witness_family(&fam, &levels, &|a: &Vec0, cap: u64| w.enumerate_b(a, cap), 1 << 10);
        ensure(report.all_pass(), || report.to_string())?;
        let members: usize = report.levels.iter().map(|l| l.members).sum();
        Ok(format!("t=1..6, cap 1024, {members} members checked"))
    });
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

/// `(m₁^reps, …, m_k^reps)` written twice.
fn repeated(ms: &[u64], reps: usize) -> Vec<u64> {
    let half: Vec<u64> = ms.iter().flat_map(|&m| std::iter::repeat_n(m, reps)).collect();
    [half.clone(), half].concat()
}

#[test]
fn criterion_07_wreath_phi_structure() {
    record(7, "wreath Parikh structure", 60, || {
        let mut sizes = Vec::new();
        for k in 1..=3usize {
            let sample = wreath_lk_phi(Some(2), k, 4).map_err(|e| e.to_string())?;
            let mut want: Vec<Vec<u64>> = increasing_tuples(k, 4).iter().map(|t| repeated(t, 2)).collect();
            want.sort();
            ensure(sample.points == want, || format!("k={k}: got {:?}", sample.points))?;
            ensure(sample.all_in(SkFamilySpec::new(2, k).unwrap()), || format!("k={k}: outside S^(2,k)"))?;
            ensure(sample.difference_rank() == k, || format!("k={k}: rank {}", sample.difference_rank()))?;
            sizes.push(sample.points.len());
        }
        Ok(format!("k=1..3 cap 4, sizes {sizes:?}"))
    });
}

#[test]
fn criterion_08_abc_phi_structure() {
    record(8, "abc Parikh structure", 120, || {
        let mut sizes = Vec::new();
        for k in 1..=2usize {
            let sample = abc_lk_phi(2, k, 3).map_err(|e| e.to_string())?;
            let mut want: Vec<Vec<u64>> = increasing_tuples(k, 3).iter().map(|t| repeated(t, 4)).collect();
            want.sort();
            ensure(sample.points == want, || format!("k={k}: got {:?}", sample.points))?;
            ensure(sample.all_in(SkFamilySpec::new(4, k).unwrap()), || format!("k={k}: outside S^(4,k)"))?;
            sizes.push(sample.points.len());
        }
        Ok(format!("k=1..2 cap 3, sizes {sizes:?}"))
    });
}

#[test]
fn criterion_09_recognizers_match_oracle() {
    record(9, "recognizer and oracle agreement", 120, || {
        let product = zk_recognizer(2).map_err(|e| e.to_string())?;
        let z = KcfRecognizer::new(vec![one_counter_pda(&alphabet_of(&["x", "X"]), "x", "X")]).unwrap();
        let domain = alphabet_of(&["x1", "X1", "x2", "X2"]);
        let first = z.inverse_homomorphism(&domain, &["x", "X", "", ""]).map_err(|e| e.to_string())?;
        let second = z.inverse_homomorphism(&domain, &["", "", "x", "X"]).map_err(|e| e.to_string())?;
        let regenerated = first.intersect(&second).map_err(|e| e.to_string())?;
        ensure(product.alphabet() == regenerated.alphabet(), || "alphabets differ".into())?;
        let (product, regenerated) = (product.compile(), regenerated.compile());
        let group = AnyGroup::from_descriptor("zn:2").unwrap();
        ensure(group.alphabet().names() == domain.as_slice(), || "group alphabet order".into())?;
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        let mut checked = 0usize;
        for len in 0..=8 {
            for w in &layer {
                let expected = group.in_word_problem(w);
                ensure(product.accepts(w) == expected, || {
                    format!("product disagrees on {}", group.alphabet().render(w))
                })?;
                ensure(regenerated.accepts(w) == expected, || {
                    format!("preimage disagrees on {}", group.alphabet().render(w))
                })?;
                checked += 1;
            }
            if len < 8 {
                layer = layer
                    .iter()
                    .flat_map(|w| {
                        (0..4).map(move |a| {
                            let mut w = w.clone();
                            w.push(a);
                            w
                        })
                    })
                    .collect();
            }
        }
        Ok(format!("{checked} words"))
    });
}

#[test]
fn criterion_10_relator_suite() {
    record(10, "relator suite", 30, || {
        let descriptors = [
            "free:2",
            "free:5",
            "zn:3",
            "bs:1,2",
            "bs:2,3",
            "bs:-2,3",
            "wreath:p=2",
            "wreath:p=3",
            "wreath:Z",
            "gc:1,-2",
            "gc:-1,0,2",
            "gc:2,1,-3",
            "abc:p=2",
            "abc:p=3",
        ];
        let groups: Vec<AnyGroup> = descriptors.iter().map(|d| AnyGroup::from_descriptor(d).unwrap()).collect();
        let mut relators = 0usize;
        for g in &groups {
            let report = g.check_relators();
            ensure(report.failures.is_empty(), || format!("{}: {:?}", g.name(), report.failures))?;
            relators += report.checked;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1010);
        for i in 0..500 {
            let g = &groups[i % groups.len()];
            let len = rng.gen_range(0..=16);
            let w = random_word(g.alphabet(), len, &mut rng);
            let mut ww = w.clone();
            ww.extend(g.alphabet().invert_word(&w));
            ensure(g.in_word_problem(&ww), || format!("{}: w·w⁻¹ ≠ 1 for {}", g.name(), g.alphabet().render(&w)))?;
        }
        Ok(format!("{relators} relators over {} groups, 500 random words", groups.len()))
    });
}

#[test]
fn criterion_11_soluble_baumslag_solitar_differential() {
    record(11, "BS(1,m) and G((-m,1)) agreement", 30, || {
        let mut rng = ChaCha8Rng::seed_from_u64(1111);
        let mut identities = 0usize;
        for m in [2i64, 3] {
            let bs = BaumslagSolitar::new(1, m);
            let gc = GcGroup::new(GcSpec::new(vec![-m, 1]).unwrap()).unwrap();
            // x ↦ b, t ↦ a
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
                gc.parse_word(&text).unwrap()
            };
            let relator = bs.relators()[0].clone();
            for i in 0..300 {
                let u = random_word(bs.alphabet(), rng.gen_range(0..=12), &mut rng);
                let probe = match i % 3 {
                    0 => u.clone(),
                    1 => {
                        let v = random_word(bs.alphabet(), rng.gen_range(0..=12), &mut rng);
                        [u.clone(), bs.alphabet().invert_word(&v)].concat()
                    }
                    _ => [u.clone(), relator.clone(), bs.alphabet().invert_word(&u)].concat(),
                };
                let verdict = bs.in_word_problem(&probe);
                identities += usize::from(verdict);
                ensure(verdict == gc.in_word_problem(&translate(&probe)), || {
                    format!("m={m}: {}", bs.alphabet().render(&probe))
                })?;
            }
        }
        Ok(format!("600 probes, {identities} identities"))
    });
}

#[test]
fn criterion_12_refutation_certificates_replay() {
    record(12, "refutation certificates", 60, || {
        let fam = powers_of_two_family(1024);
        let en = powers_of_two_enumerator(1024);
        let mut rng = ChaCha8Rng::seed_from_u64(1212);
        let (mut missing, mut spurious) = (0, 0);
        for case in 0..20 {
            let comps = (0..rng.gen_range(0..=3)).map(|_| random_linear(&mut rng, 2, 3, 3)).collect();
            let set = SemilinearSet::new(2, comps).unwrap();
            match refute_presentation(&set, &fam, &en, u64::MAX, 64).map_err(|e| e.to_string())? {
                Refutation::Certificate { certificate, .. } => {
                    ensure(certificate.replay(&set, &fam).map_err(|e| e.to_string())?, || {
                        format!("case {case}: {certificate} does not replay")
                    })?;
                    match certificate {
                        polycf::witness::Certificate::MissingMember { .. } => missing += 1,
                        polycf::witness::Certificate::SpuriousMember { .. } => spurious += 1,
                    }
                }
                Refutation::Indeterminate { reason } => return Err(format!("case {case}: {reason}")),
            }
        }
        Ok(format!("20 presentations, {missing} missing-member and {spurious} spurious-member certificates"))
    });
}
