//! Release gate: one verdict line per shipped guarantee. Each criterion
//! runs in isolation; the test fails unless every line is a PASS.

use cliffbraid::brace::ybe_from_brace;
use cliffbraid::io::YbeWire;
use cliffbraid::post::{self, enumerate_post};
use cliffbraid::relative::{
    check_relative, graph_characterization, lambda_semidirect, natural_iso_check,
};
use cliffbraid::rota_baxter::{
    check_rb, circ_r, enumerate_rb, structure_suite, weight_correspondence, EnumBudget,
    RbFailure, Weight,
};
use cliffbraid::semigroup::is_endomorphism;
use cliffbraid::{braided, catalog, CliffordTable, ElementMap};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<String, String>)> = vec![
        ("enumeration-oracle", c01_enumeration_oracle),
        ("absorbing-constant-counterexample", c02_counterexample),
        ("brace-generation", c03_brace_generation),
        ("ybe-soundness", c04_ybe_soundness),
        ("category-round-trips", c05_round_trips),
        ("kernel-image-structure", c06_structure),
        ("weight-correspondence", c07_weight_correspondence),
        ("graph-characterization", c08_graph_characterization),
        ("derived-identity-suites", c09_derived_suites),
        ("determinism", c10_determinism),
    ];
    let mut failures = 0;
    for (index, (name, body)) in criteria.into_iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(body));
        let line = match verdict {
            Ok(Ok(detail)) => format!("criterion {:02} {name}: PASS {detail}", index + 1),
            Ok(Err(reason)) => {
                failures += 1;
                format!("criterion {:02} {name}: FAIL {reason}", index + 1)
            }
            Err(payload) => {
                failures += 1;
                let msg = payload
                    .downcast_ref::<&str>()
                    .map(|s| s.to_string())
                    .or_else(|| payload.downcast_ref::<String>().cloned())
                    .unwrap_or_else(|| "opaque panic".to_string());
                format!("criterion {:02} {name}: FAIL panic: {msg}", index + 1)
            }
        };
        println!("{line}");
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}

fn budget() -> EnumBudget {
    EnumBudget::default()
}

fn positive_entries() -> Vec<(String, CliffordTable)> {
    catalog::entries()
        .into_iter()
        .filter(|e| !e.negative)
        .map(|e| {
            let ct = e.clifford().expect("positive entries are Clifford");
            (e.key.to_string(), ct)
        })
        .collect()
}

/// Every map from an n-element set to itself, lexicographically.
fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Direct recomputation of both axioms, independent of the enumerator.
fn rb_holds(ct: &CliffordTable, r: &[usize], weight: Weight) -> bool {
    let n = ct.order();
    for a in 0..n {
        for b in 0..n {
            let arg = match weight {
                Weight::Plus => ct.sub(ct.add(ct.add(a, r[a]), b), r[a]),
                Weight::Minus => ct.add(ct.sub(ct.add(r[a], b), r[a]), a),
            };
            if ct.add(r[a], r[b]) != r[arg] {
                return false;
            }
        }
    }
    (0..n).all(|a| ct.add(a, ct.zero(r[a])) == a)
}

fn strong_holds(ct: &CliffordTable, r: &[usize]) -> bool {
    ct.idempotents().iter().all(|&e| r[e] == e)
}

fn c01_enumeration_oracle() -> Result<String, String> {
    let start = Instant::now();
    let mut carriers = 0;
    let mut named = Vec::new();
    for (key, ct) in positive_entries() {
        if ct.order() > 4 {
            continue;
        }
        carriers += 1;
        let maps = all_maps(ct.order());
        for weight in [Weight::Plus, Weight::Minus] {
            let fast: Vec<Vec<usize>> = enumerate_rb(&ct, weight, false, &budget())
                .map_err(|e| format!("{key}: {e}"))?
                .iter()
                .map(|op| op.map().as_slice().to_vec())
                .collect();
            let mut brute: Vec<Vec<usize>> =
                maps.iter().filter(|m| rb_holds(&ct, m, weight)).cloned().collect();
            brute.sort();
            if fast != brute {
                return Err(format!(
                    "{key} weight {weight:?}: enumerator found {} maps, brute force {}",
                    fast.len(),
                    brute.len()
                ));
            }
            let strong_fast: Vec<Vec<usize>> = enumerate_rb(&ct, weight, true, &budget())
                .map_err(|e| format!("{key}: {e}"))?
                .iter()
                .map(|op| op.map().as_slice().to_vec())
                .collect();
            let strong_brute: Vec<Vec<usize>> =
                brute.iter().filter(|m| strong_holds(&ct, m)).cloned().collect();
            if strong_fast != strong_brute {
                return Err(format!("{key} weight {weight:?}: strong filter disagrees"));
            }
            if weight == Weight::Plus {
                if key == "z2" && fast.len() != 2 {
                    return Err(format!("z2 count {}", fast.len()));
                }
                if key == "z3" && fast.len() != 3 {
                    return Err(format!("z3 count {}", fast.len()));
                }
                if key == "sl2" && (fast.len() != 2 || strong_fast.len() != 1) {
                    return Err(format!("sl2 counts {}/{}", fast.len(), strong_fast.len()));
                }
                if ["z2", "z3", "sl2"].contains(&key.as_str()) {
                    named.push(format!("{key}={}", fast.len()));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}, bound is 1s"));
    }
    Ok(format!(
        "counts {} over {carriers} carriers, both weights, in {}ms",
        named.join(" "),
        elapsed.as_millis()
    ))
}

fn c02_counterexample() -> Result<String, String> {
    let ct = catalog::clifford("sl2").expect("catalog entry");
    let constant = ElementMap::endo(2, vec![0, 0]).expect("in range");
    if !is_endomorphism(&constant, ct.base()) {
        return Err("constant map to the absorbing element is not an endomorphism".into());
    }
    match check_rb(&ct, &constant, Weight::Plus) {
        Err(RbFailure::IdempotentPart { witness: 1 }) => {
            Ok("endomorphism rejected with the expected witness".into())
        }
        other => Err(format!("expected the idempotent-part failure at 1, got {other:?}")),
    }
}

fn c03_brace_generation() -> Result<String, String> {
    let mut braces = 0;
    for (key, ct) in positive_entries() {
        for weight in [Weight::Plus, Weight::Minus] {
            for op in enumerate_rb(&ct, weight, false, &budget())
                .map_err(|e| format!("{key}: {e}"))?
            {
                // The induced pair lives on the weight +1 side; a -1
                // operator contributes through its canonical reflection
                // a ↦ L(-a).
                let plus_op = if weight == Weight::Plus {
                    op
                } else {
                    let flipped: Vec<usize> =
                        (0..ct.order()).map(|a| op.apply(ct.neg(a))).collect();
                    let map = ElementMap::endo(ct.order(), flipped).expect("in range");
                    check_rb(&ct, &map, Weight::Plus)
                        .map_err(|e| format!("{key}: reflected operator invalid: {e}"))?
                };
                circ_r(&plus_op).map_err(|e| format!("{key}: {e}"))?;
                braces += 1;
            }
        }
    }
    Ok(format!("{braces} operators induced verified braces, zero failures"))
}

fn c04_ybe_soundness() -> Result<String, String> {
    let mut instances = 0;
    let mut slowest = Duration::ZERO;
    for (key, ct) in positive_entries() {
        if ct.order() > 8 {
            continue;
        }
        for op in
            enumerate_rb(&ct, Weight::Plus, true, &budget()).map_err(|e| format!("{key}: {e}"))?
        {
            let start = Instant::now();
            let brace = circ_r(&op).map_err(|e| format!("{key}: {e}"))?;
            let p = post::from_brace(&brace);
            let sys = cliffbraid::relative::from_post(&p);
            let braided_table = braided::from_post(&p);
            let routes = [
                ybe_from_brace(&brace),
                post::ybe_from_post(&p),
                cliffbraid::relative::ybe_from_relative(&sys),
                braided::sigma_as_ybe(&braided_table),
            ];
            let mut docs = Vec::new();
            for solution in &routes {
                if let Some(w) = solution.braid_failure() {
                    return Err(format!("{key}: braid relation fails at {w:?}"));
                }
                docs.push(
                    serde_json::to_string(&YbeWire::from_ybe(solution)).expect("serializes"),
                );
            }
            if docs.iter().any(|d| d != &docs[0]) {
                return Err(format!("{key}: routes disagree byte-wise"));
            }
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            if elapsed > Duration::from_secs(1) {
                return Err(format!("{key}: instance took {elapsed:?}, bound is 1s"));
            }
            instances += 1;
        }
    }
    // Non-strong emissions must still braid, even though the four
    // routes are only required to coincide on strong inputs.
    let mut weak = 0;
    for (key, ct) in positive_entries() {
        if ct.order() > 4 {
            continue;
        }
        for p in enumerate_post(&ct, false, &budget()).map_err(|e| format!("{key}: {e}"))? {
            if post::ybe_from_post(&p).braid_failure().is_some() {
                return Err(format!("{key}: a post-route solution fails the braid check"));
            }
            weak += 1;
        }
    }
    Ok(format!(
        "{instances} strong instances agree on all four routes (slowest {}ms), {weak} further post emissions braid",
        slowest.as_millis()
    ))
}

fn c05_round_trips() -> Result<String, String> {
    let mut strong_trips = 0;
    let mut unconditional = 0;
    let mut bijective = 0;
    for (key, ct) in positive_entries() {
        if ct.order() <= 4 {
            for p in enumerate_post(&ct, false, &budget()).map_err(|e| format!("{key}: {e}"))? {
                post::brace_post_roundtrip(&post::to_brace(&p));
                braided::braided_post_roundtrip(&braided::from_post(&p));
                cliffbraid::relative::post_system_roundtrip(&p);
                unconditional += 3;
                let sys = cliffbraid::relative::from_post(&p);
                natural_iso_check(&sys).map_err(|e| format!("{key}: {e}"))?;
                bijective += 1;
                if p.is_strong() {
                    post::post_brace_roundtrip(&p).map_err(|e| format!("{key}: {e}"))?;
                    braided::post_braided_roundtrip(&p).map_err(|e| format!("{key}: {e}"))?;
                    strong_trips += 2;
                } else {
                    if post::post_brace_roundtrip(&p).is_ok() {
                        return Err(format!("{key}: a weak table slipped through the gate"));
                    }
                }
            }
        }
        // Braces induced by operators feed the other direction.
        for op in
            enumerate_rb(&ct, Weight::Plus, false, &budget()).map_err(|e| format!("{key}: {e}"))?
        {
            let brace = circ_r(&op).map_err(|e| format!("{key}: {e}"))?;
            post::brace_post_roundtrip(&brace);
            unconditional += 1;
        }
    }
    Ok(format!(
        "{strong_trips} gated trips, {unconditional} unconditional trips, {bijective} bijective systems verified as isomorphic"
    ))
}

fn c06_structure() -> Result<String, String> {
    let mut reports = 0;
    for (key, ct) in positive_entries() {
        for op in
            enumerate_rb(&ct, Weight::Plus, true, &budget()).map_err(|e| format!("{key}: {e}"))?
        {
            let report = structure_suite(&op).map_err(|e| format!("{key}: {e}"))?;
            if !report.strong {
                return Err(format!("{key}: strong flag lost"));
            }
            if !(report.sum_covers
                && report.kernels_normal_in_circ
                && report.ker_r_normal_in_im_r_plus)
            {
                return Err(format!("{key}: a structural claim failed"));
            }
            if report.item4.is_none() || report.item5.is_none() {
                return Err(format!("{key}: strong-case items missing"));
            }
            reports += 1;
        }
    }
    Ok(format!("{reports} strong operators satisfy all five structural items"))
}

fn c07_weight_correspondence() -> Result<String, String> {
    let mut pairs = 0;
    for (key, ct) in positive_entries() {
        let corr = weight_correspondence(&ct, &budget()).map_err(|e| format!("{key}: {e}"))?;
        if corr.pairing.len() != corr.plus.len() || corr.pairing.len() != corr.minus.len() {
            return Err(format!("{key}: pairing is not a bijection"));
        }
        pairs += corr.pairing.len();
    }
    Ok(format!("{pairs} strong operator pairs exchanged across weights"))
}

fn c08_graph_characterization() -> Result<String, String> {
    let mut agreements = 0;
    for (index, fixture) in catalog::action_fixtures().into_iter().enumerate() {
        let t_n = fixture.action.t().order();
        let s_n = fixture.action.s().order();
        let mut rng = StdRng::seed_from_u64(0xace5 + index as u64);
        for _ in 0..200 {
            let values: Vec<usize> = (0..t_n).map(|_| rng.random_range(0..s_n)).collect();
            let r = ElementMap::new(t_n, s_n, values).expect("in range");
            let report = graph_characterization(&fixture.action, &r);
            let axioms = check_relative(&fixture.action, &r).is_ok();
            if report.graph_ok != axioms || report.axioms_ok != axioms {
                return Err(format!(
                    "{}: graph={} axioms={} checker={axioms} for {:?}",
                    fixture.key,
                    report.graph_ok,
                    report.axioms_ok,
                    r.as_slice()
                ));
            }
            agreements += 1;
        }
    }
    Ok(format!("{agreements} sampled maps classified identically by both tests"))
}

fn c09_derived_suites() -> Result<String, String> {
    // Every validator asserts its derived-identity battery internally;
    // the criterion is that a sweep across all of them finishes without
    // a single assertion firing.
    let mut validated = 0;
    for (key, ct) in positive_entries() {
        if ct.order() > 4 {
            continue;
        }
        for weight in [Weight::Plus, Weight::Minus] {
            for op in enumerate_rb(&ct, weight, false, &budget())
                .map_err(|e| format!("{key}: {e}"))?
            {
                validated += 1;
                if weight == Weight::Plus {
                    let brace = circ_r(&op).map_err(|e| format!("{key}: {e}"))?;
                    ybe_from_brace(&brace);
                    validated += 1;
                }
            }
        }
        for p in enumerate_post(&ct, false, &budget()).map_err(|e| format!("{key}: {e}"))? {
            post::to_brace(&p);
            braided::from_post(&p);
            cliffbraid::relative::from_post(&p);
            post::ybe_from_post(&p);
            validated += 4;
        }
    }
    for fixture in catalog::action_fixtures() {
        lambda_semidirect(&fixture.action);
        validated += 1;
    }
    Ok(format!("{validated} validated structures, zero assertion failures"))
}

fn c10_determinism() -> Result<String, String> {
    let exe = env!("CARGO_BIN_EXE_cliffbraid");
    let dir = tempfile::tempdir().expect("tempdir");
    let brace_path = dir.path().join("brace.json");
    std::fs::write(&brace_path, r#"{"add":[[0,1],[1,0]],"circ":[[0,1],[1,0]]}"#)
        .expect("write fixture");
    let post_path = dir.path().join("post.json");
    std::fs::write(
        &post_path,
        concat!(
            r#"{"add":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],"#,
            r#""rhd":[[0,1,2,3],[0,3,2,1],[0,1,2,3],[0,3,2,1]]}"#
        ),
    )
    .expect("write fixture");
    let brace = brace_path.to_str().expect("utf8 path");
    let post = post_path.to_str().expect("utf8 path");

    let commands: Vec<Vec<&str>> = vec![
        vec!["catalog"],
        vec!["catalog", "--format", "json"],
        vec!["check", "--kind", "rb", "--weight", "1", "--semigroup", "z2", "--map", "0,1"],
        vec!["check", "--kind", "rb", "--semigroup", "z3", "--map", "1,1,1"],
        vec!["enumerate", "--kind", "rb", "--semigroup", "z4"],
        vec!["enumerate", "--kind", "rb", "--semigroup", "z4", "--format", "json"],
        vec!["enumerate", "--kind", "rb", "--semigroup", "z3", "--weight", "-1"],
        vec!["enumerate", "--kind", "post", "--semigroup", "sl2"],
        vec!["construct", "--kind", "rb", "--method", "tilde", "--semigroup", "z3", "--map", "0,2,1"],
        vec!["construct", "--kind", "semidirect", "--fixture", "z2-on-z3-negation"],
        vec!["ybe", "--from", "brace", "--input", brace],
        vec!["convert", "--from", "post", "--to", "brace", "--input", post],
        vec!["convert", "--from", "post", "--to", "relative", "--input", post],
        vec!["roundtrip", "--pair", "post-brace", "--input", post],
        vec!["check", "--kind", "relative", "--fixture", "z2-on-z3-negation", "--map", "0,0,0"],
        vec!["graph-test", "--fixture", "z2-on-z3-negation", "--map", "0,0,0"],
    ];

    let run_once = |args: &[&str]| -> (Option<i32>, Vec<u8>) {
        let out = std::process::Command::new(exe)
            .args(args)
            .output()
            .expect("spawn the release binary");
        (out.status.code(), out.stdout)
    };

    let mut first_pass = Vec::new();
    for args in &commands {
        first_pass.push(run_once(args));
    }
    for (args, first) in commands.iter().zip(&first_pass) {
        let second = run_once(args);
        if &second != first {
            return Err(format!("bytes differ across reruns of {args:?}"));
        }
    }
    Ok(format!("{} commands byte-identical across repeated runs", commands.len()))
}
