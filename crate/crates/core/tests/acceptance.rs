//! Acceptance runner: one `criterion N: PASS|FAIL` line per criterion, exit
//! status 1 if any fails. Built with `harness = false`.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::catch_unwind;
use std::process::Command;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use g3lr::algebra::{Algebra3LR, Space};
use g3lr::axioms::run_all;
use g3lr::catalog::{builtin, direct_sum, tight_pair, BUILTIN_NAMES};
use g3lr::connections::{
    audit_classes, compute_supports, lambda_classes, lambda_connected, replay_lambda, replay_sigma, sigma_classes,
    sigma_connected, ConnectionClass, SupportSets,
};
use g3lr::decompose::closure::{gr_simple_a_within, gr_simple_within, graded_ideal_generated_by, Verdict};
use g3lr::decompose::ideals::{is_graded, verify_ideal_a, verify_ideal_l, verify_triple_orthogonality};
use g3lr::decompose::structure::structure_ideals;
use g3lr::decompose::{decompose, support_of, FineStatus};
use g3lr::group::{GroupElem, GroupSpec};
use g3lr::io::{emit_instance, parse_instance};
use g3lr::linalg::{rat, Subspace, Vector};

struct Outcome {
    title: &'static str,
    ok: bool,
    detail: String,
}

fn verdict(title: &'static str, ok: bool, detail: &str) -> Outcome {
    Outcome {
        title,
        ok,
        detail: detail.to_string(),
    }
}

/// A random vector with every coordinate nonzero, entries in `[-3, 3]`.
fn dense(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    let coords: Vec<i64> = (0..n)
        .map(|_| {
            let c = rng.gen_range(1..=3);
            if rng.gen_bool(0.5) {
                c
            } else {
                -c
            }
        })
        .collect();
    Vector::from_ints(&coords)
}

/// Adds a dense vector to one table entry chosen uniformly among all keys of
/// the bracket, product, action and rho tables.
fn perturb(alg: &Algebra3LR, rng: &mut ChaCha8Rng) -> (Algebra3LR, String) {
    let (n, m) = (alg.dim_l(), alg.dim_a());
    let mut keys: Vec<(char, usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                keys.push(('b', i, j, k));
            }
        }
    }
    for i in 0..m {
        for j in i..m {
            keys.push(('m', i, j, 0));
        }
        for x in 0..n {
            keys.push(('a', i, x, 0));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for i in 0..m {
                keys.push(('r', x, y, i));
            }
        }
    }
    let &(table, i, j, k) = keys.choose(rng).unwrap();
    let mut b = alg.to_builder();
    let (ul, ua) = (|i| alg.unit(Space::L, i), |i| alg.unit(Space::A, i));
    let label = match table {
        'b' => {
            let v = alg.eval_bracket(&ul(i), &ul(j), &ul(k)).unwrap().sum(&dense(rng, n));
            b.set_bracket(i, j, k, v).unwrap();
            format!("bracket({i},{j},{k})")
        }
        'm' => {
            let v = alg.eval_amul(&ua(i), &ua(j)).unwrap().sum(&dense(rng, m));
            b.set_amul(i, j, v).unwrap();
            format!("amul({i},{j})")
        }
        'a' => {
            let v = alg.eval_action(&ua(i), &ul(j)).unwrap().sum(&dense(rng, n));
            b.set_action(i, j, v).unwrap();
            format!("action({i},{j})")
        }
        _ => {
            let v = alg.eval_rho(&ul(i), &ul(j), &ua(k)).unwrap().sum(&dense(rng, m));
            b.set_rho(i, j, k, v).unwrap();
            format!("rho({i},{j},{k})")
        }
    };
    (b.build(), label)
}

fn criterion_1_axiom_soundness() -> Outcome {
    let mut problems = Vec::new();
    for name in BUILTIN_NAMES {
        let report = run_all(&builtin(name).unwrap());
        if !report.pass() {
            problems.push(format!("{name} fails {:?}", report.failing()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut caught = 0;
    for name in ["a4", "gl2-trace"] {
        let alg = builtin(name).unwrap();
        for _ in 0..20 {
            let (bad, label) = perturb(&alg, &mut rng);
            if run_all(&bad).total_violations() > 0 {
                caught += 1;
            } else {
                problems.push(format!("{name} {label} went unnoticed"));
            }
        }
    }
    let detail = format!(
        "{} builtins valid, {caught}/40 perturbations caught {problems:?}",
        BUILTIN_NAMES.len()
    );
    verdict("axiom soundness", problems.is_empty(), &detail)
}

/// Problems with the partition and the pairwise connectivity relation.
fn equivalence_problems(sup: &SupportSets, tag: &str) -> Vec<String> {
    let mut out = Vec::new();
    let sigma = sigma_classes(sup);
    let lambda = lambda_classes(sup);
    for (kind, classes, base) in [("sigma", &sigma, &sup.sigma1), ("lambda", &lambda, &sup.lambda1)] {
        for p in audit_classes(sup, classes) {
            out.push(format!("{tag} {kind}: {p}"));
        }
        let connected = |g: &GroupElem, h: &GroupElem| -> bool {
            let chain = if kind == "sigma" {
                sigma_connected(sup, g, h).unwrap()
            } else {
                lambda_connected(sup, g, h).unwrap()
            };
            match chain {
                Some(c) => {
                    let ok = if kind == "sigma" {
                        replay_sigma(sup, &c, g, h)
                    } else {
                        replay_lambda(sup, &c, g, h)
                    };
                    assert!(ok, "{tag} {kind}: chain {g} -> {h} does not replay");
                    true
                }
                None => false,
            }
        };
        let elems: Vec<&GroupElem> = base.iter().collect();
        let rel: Vec<Vec<bool>> = elems
            .iter()
            .map(|g| elems.iter().map(|h| connected(g, h)).collect())
            .collect();
        let class_of = |g: &GroupElem| classes.iter().position(|c: &ConnectionClass| c.contains(g));
        for (i, g) in elems.iter().enumerate() {
            if !rel[i][i] {
                out.push(format!("{tag} {kind}: {g} not connected to itself"));
            }
            for (j, h) in elems.iter().enumerate() {
                if rel[i][j] != rel[j][i] {
                    out.push(format!("{tag} {kind}: asymmetric at {g}, {h}"));
                }
                if rel[i][j] != (class_of(g) == class_of(h)) {
                    out.push(format!("{tag} {kind}: {g} ~ {h} disagrees with the partition"));
                }
                for k in 0..elems.len() {
                    if rel[i][j] && rel[j][k] && !rel[i][k] {
                        out.push(format!("{tag} {kind}: not transitive at {g}, {h}, {}", elems[k]));
                    }
                }
            }
        }
    }
    out
}

fn criterion_2_equivalence_relation() -> Outcome {
    let mut problems = Vec::new();
    for name in BUILTIN_NAMES {
        problems.extend(equivalence_problems(&compute_supports(&builtin(name).unwrap()), name));
    }
    let groups: [&[u64]; 14] = [
        &[2],
        &[3],
        &[5],
        &[7],
        &[8],
        &[16],
        &[2, 2],
        &[2, 4],
        &[3, 3],
        &[2, 6],
        &[4, 4],
        &[2, 8],
        &[2, 2, 2],
        &[2, 2, 2, 2],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for round in 0..50 {
        let group = GroupSpec::new(groups.choose(&mut rng).unwrap().to_vec()).unwrap();
        let rest: Vec<GroupElem> = group
            .elements()
            .unwrap()
            .into_iter()
            .filter(|g| !group.is_identity(g))
            .collect();
        let cap = rest.len().min(12);
        let s = rng.gen_range(1..=cap);
        let l = rng.gen_range(0..=cap);
        let sigma1: Vec<GroupElem> = rest.choose_multiple(&mut rng, s).cloned().collect();
        let lambda1: Vec<GroupElem> = rest.choose_multiple(&mut rng, l).cloned().collect();
        let sup = SupportSets::from_sets(group.clone(), sigma1, lambda1).unwrap();
        problems.extend(equivalence_problems(
            &sup,
            &format!("synthetic #{round} {:?}", group.moduli()),
        ));
    }
    let detail = format!(
        "{} builtins and 50 synthetic support sets {problems:?}",
        BUILTIN_NAMES.len()
    );
    verdict("equivalence relation", problems.is_empty(), &detail)
}

fn criterion_3_class_ideals() -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for name in BUILTIN_NAMES {
        let alg = builtin(name).unwrap();
        let r = decompose(&alg).unwrap();
        for i in &r.l_ideals {
            checked += 1;
            let check = verify_ideal_l(&alg, &i.subspace);
            if !check.holds || !is_graded(&alg, Space::L, &i.subspace) {
                problems.push(format!("{name} I[{}] {:?}", i.representative, check.certificate));
            }
        }
        for i in &r.a_ideals {
            checked += 1;
            let check = verify_ideal_a(&alg, &i.subspace);
            if !check.holds || !is_graded(&alg, Space::A, &i.subspace) {
                problems.push(format!("{name} A[{}] {:?}", i.representative, check.certificate));
            }
        }
    }
    verdict(
        "class ideals",
        problems.is_empty(),
        &format!("{checked} ideals checked {problems:?}"),
    )
}

fn criterion_4_orthogonality() -> Outcome {
    let x = builtin("a4-dual-numbers").unwrap();
    let y = builtin("gl2-trace").unwrap();
    let sum = direct_sum(&x, &y).unwrap();
    let alg = &sum.algebra;
    let mut problems = Vec::new();

    let sup = [0, 1].map(|f| support_of(alg, Space::L, &sum.l_factors[f]));
    if !sup[0].is_disjoint(&sup[1]) {
        problems.push("embedded L supports overlap".to_string());
    }

    let r = decompose(alg).unwrap();
    let ls: Vec<Subspace> = r.l_ideals.iter().map(|i| i.subspace.clone()).collect();
    let as_: Vec<Subspace> = r.a_ideals.iter().map(|i| i.subspace.clone()).collect();
    let by_class = verify_triple_orthogonality(alg, &ls, &as_);
    if !by_class.holds {
        problems.push(format!("class ideals: {:?}", by_class.certificate));
    }
    let by_factor = verify_triple_orthogonality(alg, &sum.l_factors, &sum.a_factors);
    if !by_factor.holds {
        problems.push(format!("factors: {:?}", by_factor.certificate));
    }

    // every mixed basis tuple, directly
    let (n, m) = (alg.dim_l(), alg.dim_a());
    let lf = |i: usize| usize::from(i >= x.dim_l());
    let af = |i: usize| usize::from(i >= x.dim_a());
    let (ul, ua) = (|i| alg.unit(Space::L, i), |i| alg.unit(Space::A, i));
    let mut mixed = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if lf(i) != lf(j) || lf(j) != lf(k) {
                    mixed += 1;
                    if !alg.eval_bracket(&ul(i), &ul(j), &ul(k)).unwrap().is_zero() {
                        problems.push(format!("bracket ({i},{j},{k})"));
                    }
                }
            }
            for a in 0..m {
                if lf(i) != lf(j) || lf(i) != af(a) {
                    mixed += 1;
                    if !alg.eval_rho(&ul(i), &ul(j), &ua(a)).unwrap().is_zero() {
                        problems.push(format!("rho ({i},{j},{a})"));
                    }
                }
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            if af(a) != af(b) {
                mixed += 1;
                if !alg.eval_amul(&ua(a), &ua(b)).unwrap().is_zero() {
                    problems.push(format!("amul ({a},{b})"));
                }
            }
        }
        for i in 0..n {
            if af(a) != lf(i) {
                mixed += 1;
                if !alg.eval_action(&ua(a), &ul(i)).unwrap().is_zero() {
                    problems.push(format!("action ({a},{i})"));
                }
            }
        }
    }
    let detail = format!(
        "{} sigma / {} lambda classes, {mixed} mixed basis tuples {problems:?}",
        r.sigma_classes.len(),
        r.lambda_classes.len()
    );
    verdict("orthogonality", problems.is_empty(), &detail)
}

fn criterion_5_directness() -> Outcome {
    let alg = builtin("tight-pair").unwrap();
    let r = decompose(&alg).unwrap();
    let st = structure_ideals(&alg);
    let l_total: usize = r.l_ideals.iter().map(|i| i.subspace.dim()).sum();
    let a_total: usize = r.a_ideals.iter().map(|i| i.subspace.dim()).sum();
    let checks = [
        ("center zero", st.center.is_zero()),
        ("L1 generated", r.tightness.l1_generated),
        ("dim L = sum dim I", l_total == alg.dim_l()),
        ("L sum direct", r.l_sum.direct),
        ("Ann(A) zero", st.ann_a.is_zero()),
        ("A1 generated", r.tightness.a1_generated),
        ("dim A = sum dim ideal", a_total == alg.dim_a()),
        ("A sum direct", r.a_sum.direct),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let detail = format!(
        "L {l_total}/{}, A {a_total}/{} failed {failed:?}",
        alg.dim_l(),
        alg.dim_a()
    );
    verdict("directness", failed.is_empty(), &detail)
}

/// Pairs of subspaces, compared through their canonical bases.
type Pairs = BTreeSet<(Vec<Vec<String>>, Vec<Vec<String>>)>;

fn criterion_6_pairing() -> Outcome {
    let sum = tight_pair().unwrap();
    let alg = &sum.algebra;
    let r = decompose(alg).unwrap();
    let p = &r.pairing;
    // the constructor pairs the i-th L factor with the i-th A factor
    let oracle: Pairs = (0..2)
        .map(|f| (sum.l_factors[f].to_strings(), sum.a_factors[f].to_strings()))
        .collect();
    let computed: Pairs = r
        .l_ideals
        .iter()
        .zip(&p.partners)
        .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
        .map(|(i, j)| (i.subspace.to_strings(), r.a_ideals[j].subspace.to_strings()))
        .collect();
    let total = p.is_total();
    let single = p.is_single_valued();
    let matches = computed == oracle;
    let detail = format!(
        "{} L-ideals, {} A-ideals, partners {:?}, total {total}, single-valued {single}, matches factors {matches}",
        r.l_ideals.len(),
        r.a_ideals.len(),
        p.partners
    );
    verdict("pairing", total && single && matches, &detail)
}

fn criterion_7_fine_decomposition() -> Outcome {
    // the catalog's tight direct sum of two copies of one factor
    let sum = tight_pair().unwrap();
    let alg = &sum.algebra;
    let r = decompose(alg).unwrap();
    let factor_verdicts: Vec<(&str, &str)> = (0..2)
        .map(|f| {
            (
                gr_simple_within(alg, &sum.l_factors[f]).verdict.name(),
                gr_simple_a_within(alg, &sum.a_factors[f]).verdict.name(),
            )
        })
        .collect();
    let yes = r
        .fine
        .components
        .iter()
        .filter(|c| c.simple.verdict == Verdict::Yes)
        .count();
    let checks = [
        ("maximal length", r.maximal_length),
        ("G-multiplicative", r.g_multiplicative.holds),
        ("tight", r.tightness.tight),
        ("fine complete", r.fine.status == FineStatus::Complete),
        ("two components", r.fine.components.len() == 2),
        ("both gr-simple", yes == 2 && r.fine.components.len() == 2),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let blockers = match &r.fine.status {
        FineStatus::NotAttempted(why) => why.clone(),
        _ => Vec::new(),
    };
    let detail = format!(
        "factor verdicts {factor_verdicts:?}, {} G-mult failures, fine {}, components {}, failed {failed:?}, blockers {blockers:?}",
        r.g_multiplicative.failures.len(),
        r.fine.status.name(),
        r.fine.components.len()
    );
    verdict("fine decomposition", failed.is_empty(), &detail)
}

fn criterion_8_closure_oracle() -> Outcome {
    let names: Vec<&str> = BUILTIN_NAMES
        .iter()
        .copied()
        .filter(|n| builtin(n).unwrap().dim_l() > 0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    let mut spot_checks = 0;
    let mut pools: Vec<Vec<Subspace>> = names
        .iter()
        .map(|n| {
            let alg = builtin(n).unwrap();
            let r = decompose(&alg).unwrap();
            let st = &r.structure;
            let mut pool: Vec<Subspace> = r.l_ideals.iter().map(|i| i.subspace.clone()).collect();
            pool.extend([
                Subspace::full(alg.dim_l()),
                st.center.clone(),
                st.bracket_center.clone(),
                st.ker_rho.clone(),
                st.ann_l_a.clone(),
            ]);
            // keep only those that really are graded ideals
            pool.retain(|s| verify_ideal_l(&alg, s).holds && is_graded(&alg, Space::L, s));
            pool
        })
        .collect();
    for draw in 0..100 {
        let which = rng.gen_range(0..names.len());
        let alg = builtin(names[which]).unwrap();
        let degrees: Vec<GroupElem> = alg.degrees_present(Space::L).into_iter().collect();
        let g = degrees.choose(&mut rng).unwrap();
        let idx = alg.l().indices_of(g);
        let mut v = Vector::zeros(alg.dim_l());
        while v.is_zero() {
            for &i in &idx {
                v.set(i, rat(rng.gen_range(-3..=3)));
            }
        }
        let s = graded_ideal_generated_by(&alg, &v);
        let tag = format!("#{draw} {} degree {g}", names[which]);
        if !s.contains(&v).unwrap() {
            problems.push(format!("{tag}: generator missing"));
        }
        let check = verify_ideal_l(&alg, &s);
        if !check.holds {
            problems.push(format!("{tag}: {:?}", check.certificate));
        }
        if !is_graded(&alg, Space::L, &s) {
            problems.push(format!("{tag}: not graded"));
        }
        for t in &pools[which] {
            if t.contains(&v).unwrap() {
                spot_checks += 1;
                if !s.is_subspace_of(t).unwrap() {
                    problems.push(format!("{tag}: escapes an ideal containing the generator"));
                }
            }
        }
        pools[which].push(s);
    }
    let detail = format!("100 generators, {spot_checks} containment checks {problems:?}");
    verdict("closure oracle", problems.is_empty(), &detail)
}

fn criterion_9_determinism_and_round_trip() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_g3lr");
    let dir = tempfile::tempdir().unwrap();
    let mut problems = Vec::new();
    for name in BUILTIN_NAMES {
        let alg = builtin(name).unwrap();
        let text = emit_instance(&alg);
        match parse_instance(&text) {
            Ok(back) if back == alg && emit_instance(&back) == text => {}
            _ => problems.push(format!("{name}: emit/parse not the identity")),
        }
        let file = dir.path().join(format!("{name}.json"));
        let status = Command::new(exe)
            .args(["builtin", name, "--emit"])
            .arg(&file)
            .status()
            .unwrap();
        if !status.success() || std::fs::read_to_string(&file).unwrap() != text {
            problems.push(format!("{name}: emitted file differs"));
        }
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("{name}.report{run}.json"));
            let status = Command::new(exe)
                .arg("report")
                .arg(&file)
                .arg("--out")
                .arg(&out)
                .status()
                .unwrap();
            if !status.success() {
                problems.push(format!("{name}: report exited {status}"));
            }
            outputs.push(std::fs::read(&out).unwrap());
        }
        if outputs[0] != outputs[1] {
            problems.push(format!("{name}: reports differ"));
        }
    }
    let detail = format!("{} builtins {problems:?}", BUILTIN_NAMES.len());
    verdict("determinism and round trip", problems.is_empty(), &detail)
}

fn main() {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1_axiom_soundness,
        criterion_2_equivalence_relation,
        criterion_3_class_ideals,
        criterion_4_orthogonality,
        criterion_5_directness,
        criterion_6_pairing,
        criterion_7_fine_decomposition,
        criterion_8_closure_oracle,
        criterion_9_determinism_and_round_trip,
    ];
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (n, run) in criteria.iter().enumerate() {
        let o = catch_unwind(run).unwrap_or_else(|_| verdict("(panicked)", false, "see stderr"));
        failed += usize::from(!o.ok);
        let status = if o.ok { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {}: {status} {} ({})", n + 1, o.title, o.detail).unwrap();
        out.flush().unwrap();
    }
    writeln!(out, "acceptance: {} passed, {failed} failed", criteria.len() - failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
