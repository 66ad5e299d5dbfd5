//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_complex::Complex64;
use polyad::action::conjugacy_classes;
use polyad::binary::permutations;
use polyad::cmatrix::CMatrix;
use polyad::cover::{cover_h, cover_inverse_formula, covering_group, verify_embedding, CoverElement};
use polyad::rep::{
    c_ter_holds, character, der_b_lift_criteria, hat_char, hat_rep, kernel, lift_from_retract, linear_characters,
    maschke_decompose, one_dim_exponents, one_dim_exponents_by_search, one_dim_reps, orthogonality_check,
    root_of_unity, verify_representation, GModule, Representation,
};
use polyad::structure::{
    classify_simplicity, coset, cosets, is_normal, normal_subgroups, quotient, subgroups, Simplicity,
};
use polyad::{fixtures, BinaryGroup, Budget, NaryGroup, SubgroupRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SEED: u64 = 0xC0FFEE;
const EPS: f64 = 1e-9;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn all_fixtures() -> Vec<(&'static str, NaryGroup)> {
    fixtures::NAMES
        .iter()
        .map(|&n| (n, fixtures::by_name(n).unwrap().with_budget(Budget::MAX)))
        .collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Lowest tuple of the given length on which `pred` fails, scanning lexicographically.
fn first_failing(m: usize, len: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut t = vec![0; len];
    loop {
        if !pred(&t) {
            return Some(t);
        }
        let mut i = len;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < m {
                break;
            }
            t[i] = 0;
        }
    }
}

fn criterion_1() -> Outcome {
    for (name, g) in all_fixtures() {
        let r = g.verify_nary_group();
        ensure!(r.passed() && !r.sampled(), "{name}: {r}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..20 {
        let n = 3 + i % 3;
        let g = fixtures::random_hg_data(&mut rng, 8, n)
            .construct()
            .to_dense()
            .unwrap()
            .with_budget(Budget::MAX);
        let r = g.verify_nary_group();
        ensure!(
            r.passed() && !r.sampled(),
            "random group {i} (m={}, n={n}): {r}",
            g.order()
        );
    }
    let dir = tempfile::tempdir().unwrap();
    let mut mutations = Vec::new();
    let t2 = fixtures::t2();
    for pos in 0..8 {
        mutations.push(("T2", t2.clone(), pos, 1));
    }
    let z4m = fixtures::z4m();
    while mutations.len() < 50 {
        let pos = rng.gen_range(0..64);
        let delta = rng.gen_range(1..4);
        if !mutations.iter().any(|m| m.0 == "Z4M" && m.2 == pos && m.3 == delta) {
            mutations.push(("Z4M", z4m.clone(), pos, delta));
        }
    }
    for (k, (name, g, pos, delta)) in mutations.iter().enumerate() {
        let mut table = g.table().unwrap();
        table[*pos] = (table[*pos] + delta) % g.order();
        let path = dir.path().join(format!("mut{k}.json"));
        let doc = serde_json::json!({"arity": g.arity(), "order": g.order(), "kind": "dense", "table": table});
        std::fs::write(&path, doc.to_string()).unwrap();
        let out = polyad(&["verify", path.to_str().unwrap()], None);
        ensure!(
            out.status.code() == Some(1),
            "{name} mutation at {pos}: exit {:?}",
            out.status.code()
        );
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let witness = &report["report"]["failures"][0]["witness"];
        ensure!(
            witness.as_array().is_some_and(|w| !w.is_empty()),
            "{name} mutation at {pos}: no witness"
        );
    }
    Ok("5 fixtures, 20 random HG groups exhaustively; 50/50 mutations detected".into())
}

fn criterion_2() -> Outcome {
    for (name, g) in all_fixtures() {
        let (m, n) = (g.order(), g.arity());
        ensure!(g.verify_dornte().passed(), "{name}: verify_dornte");
        for x in 0..m {
            let brute: Vec<usize> = (0..m)
                .filter(|&z| g.eval(&[vec![x; n - 1], vec![z]].concat()).unwrap() == x)
                .collect();
            ensure!(brute == [g.skew(x).unwrap()], "{name}: skew({x}) {brute:?}");
            let xb = brute[0];
            for y in 0..m {
                for i in 2..=n {
                    let mut left = vec![x; n];
                    left[i - 2] = xb;
                    left[n - 1] = y;
                    ensure!(g.eval(&left).unwrap() == y, "{name}: left identity x={x} y={y} i={i}");
                    let mut right = vec![x; n];
                    right[0] = y;
                    right[n + 1 - i] = xb;
                    ensure!(g.eval(&right).unwrap() == y, "{name}: right identity x={x} y={y} j={i}");
                }
            }
            for k in 0..n {
                let mut t = vec![x; n];
                t[k] = xb;
                ensure!(g.eval(&t).unwrap() == x, "{name}: skew at place {k} for {x}");
            }
        }
    }
    let skews = |name: &str| fixtures::by_name(name).unwrap().skew_table().unwrap();
    ensure!(skews("Z4M") == [0, 1, 2, 3], "Z4M skew table");
    ensure!(skews("Q4") == [1, 1], "Q4 skew table");
    ensure!(skews("T2b") == [1, 0], "T2b skew table");
    Ok("skew identities at every element and place; skew tables as derived".into())
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (name, g) in all_fixtures() {
        for a in 0..g.order() {
            let data = g.hg_decompose(a).map_err(|e| format!("{name} at {a}: {e}"))?;
            let report = data.check();
            ensure!(report.passed(), "{name} at {a}: {report}");
            let rebuilt = data.construct();
            ensure!(
                rebuilt.first_difference(&g).is_none(),
                "{name} at {a}: {:?}",
                rebuilt.first_difference(&g)
            );
            count += 1;
        }
    }
    Ok(format!("{count} decompositions rebuilt entrywise"))
}

fn criterion_4() -> Outcome {
    for (name, g) in all_fixtures() {
        let m = g.order();
        for a in 0..m {
            let r = g.retract(a).unwrap();
            for x in 0..m {
                let brute: Vec<usize> = (0..m).filter(|&y| r.mul(x, y) == r.identity()).collect();
                ensure!(
                    brute == [g.retract_inverse(a, x).unwrap()],
                    "{name}: inverse of {x} at {a}"
                );
            }
            for p in 0..m {
                let map = g.retract_isomorphism(a, p).unwrap();
                ensure!(
                    r.is_isomorphism_to(&g.retract(p).unwrap(), &map),
                    "{name}: Ret_{a} -> Ret_{p}"
                );
            }
        }
    }
    Ok("retract inverses match brute force; all retracts pairwise isomorphic".into())
}

fn criterion_5() -> Outcome {
    let klein = covering_group(&fixtures::t2(), 0).unwrap();
    let kg = klein.group();
    ensure!(
        kg.order() == 4 && (0..4).all(|x| kg.mul(x, x) == kg.identity()),
        "T2 cover is not Klein"
    );
    ensure!(
        kg.is_isomorphic(&BinaryGroup::klein()).unwrap(),
        "T2 cover not isomorphic to Klein"
    );
    let cyc = covering_group(&fixtures::t2b(), 0).unwrap();
    ensure!(
        (0..4).any(|x| cyc.group().element_order(x) == 4),
        "T2b cover is not cyclic"
    );
    for (name, g) in all_fixtures() {
        let n = g.arity();
        for a in 0..g.order() {
            let cov = covering_group(&g, a).map_err(|e| format!("{name} at {a}: {e}"))?;
            let grp = cov.group();
            let h = cover_h(&cov).map_err(|e| format!("{name} at {a}: {e}"))?;
            ensure!(grp.is_normal_subgroup(&h), "{name} at {a}: H not normal");
            // the image of ⟨a,0⟩ generates the quotient
            let mut member = vec![false; grp.order()];
            h.iter().for_each(|&x| member[x] = true);
            let gen = cov.embed(a);
            let mut p = gen;
            let mut k = 1;
            while !member[p] {
                p = grp.mul(p, gen);
                k += 1;
            }
            ensure!(
                k == n - 1 && grp.order() == h.len() * (n - 1),
                "{name} at {a}: quotient order {k}"
            );
            let abar = g.skew(a).unwrap();
            ensure!(
                grp.identity() == cov.index(CoverElement { x: abar, t: n - 2 }),
                "{name} at {a}: identity"
            );
            for i in 0..grp.order() {
                let f = cov.index(cover_inverse_formula(&g, a, cov.element(i)).unwrap());
                ensure!(grp.mul(i, f) == grp.identity(), "{name} at {a}: inverse of {i}");
            }
            let emb = verify_embedding(&cov);
            ensure!(emb.passed() && !emb.sampled(), "{name} at {a}: {emb}");
        }
    }
    Ok("T2 cover = Klein, T2b cover = Z4; H, identity, inverse, embedding at every anchor".into())
}

fn values_of(rep: &Representation) -> Vec<Complex64> {
    rep.images().iter().map(|m| m[(0, 0)]).collect()
}

fn criterion_6() -> Outcome {
    let mut counts = Vec::new();
    for (name, want) in [("T2", 3), ("T2b", 1), ("Z4M", 3)] {
        let g = fixtures::by_name(name).unwrap();
        let table = one_dim_exponents(&g).unwrap();
        ensure!(table.exponents.len() == want, "{name}: {} reps", table.exponents.len());
        let oracle = one_dim_exponents_by_search(&g, table.modulus).representations();
        let mine = table.representations();
        ensure!(oracle.len() == mine.len(), "{name}: oracle found {}", oracle.len());
        for r in &mine {
            ensure!(verify_representation(&g, r).passed(), "{name}: not a representation");
            let v = values_of(r);
            ensure!(
                oracle
                    .iter()
                    .any(|o| values_of(o).iter().zip(&v).all(|(a, b)| close(*a, *b, EPS))),
                "{name}: {v:?} missing from oracle"
            );
        }
        counts.push(format!("{name}={want}"));
    }
    Ok(format!("counts {} agree with direct root search", counts.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut pairs = 0;
    for (name, g) in all_fixtures() {
        let reps = one_dim_reps(&g).unwrap();
        let classes = conjugacy_classes(&g).unwrap();
        let mut chars = Vec::new();
        for r in &reps {
            let chi = character(&g, r).map_err(|e| format!("{name}: {e}"))?;
            for block in classes.blocks() {
                ensure!(
                    block.iter().all(|&x| close(chi.value(x), chi.value(block[0]), EPS)),
                    "{name}: class {block:?}"
                );
            }
            let ker = kernel(&g, r).map_err(|e| format!("{name}: {e}"))?;
            let by_value: Vec<usize> = (0..g.order())
                .filter(|&x| close(chi.value(x), c(1.0, 0.0), EPS))
                .collect();
            ensure!(
                ker.elements() == by_value && by_value == r.kernel_elements(),
                "{name}: kernel"
            );
            let p = by_value[0];
            for e in 0..g.order() {
                let hat = hat_char(&g, &chi, e, p).unwrap();
                let traces = hat_rep(&g, r, e).unwrap().traces();
                ensure!(
                    hat.values().iter().zip(&traces).all(|(a, b)| close(*a, *b, EPS)),
                    "{name}: hat at {e}"
                );
            }
            chars.push((chi, p, r.clone()));
        }
        for (c1, p1, r1) in &chars {
            for (c2, p2, r2) in &chars {
                for e in 0..g.order() {
                    let o = orthogonality_check(&g, c1, *p1, c2, *p2, e).unwrap();
                    // δ from the hat representations' traces
                    let h1 = hat_rep(&g, r1, e).unwrap().traces();
                    let h2 = hat_rep(&g, r2, e).unwrap().traces();
                    let delta = if h1.iter().zip(&h2).all(|(a, b)| close(*a, *b, 1e-6)) {
                        1.0
                    } else {
                        0.0
                    };
                    ensure!(
                        close(c(o.value[0], o.value[1]), c(delta, 0.0), 1e-6),
                        "{name}: orthogonality {:?} vs {delta} at {e}",
                        o.value
                    );
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "class constancy, kernels, hat traces; {pairs} orthogonality sums within 1e-6"
    ))
}

fn retract_reps(g: &NaryGroup, e: usize) -> Vec<Representation> {
    let r = g.retract(e).unwrap();
    let modulus = r.order() as u64;
    let mut out: Vec<Representation> = linear_characters(&r, modulus)
        .into_iter()
        .map(|k| {
            Representation::from_scalars(&k.iter().map(|&k| root_of_unity(k, modulus)).collect::<Vec<_>>()).unwrap()
        })
        .collect();
    if g.order() == 6 {
        // x ↦ P(x·e) is a representation of Ret_e of the derived S3
        let perms = permutations(3);
        let s3 = BinaryGroup::symmetric(3);
        let images = (0..6)
            .map(|x| {
                let p = &perms[s3.mul(x, e)];
                let rows = (0..3)
                    .map(|i| {
                        (0..3)
                            .map(|j| if p[j] == i { c(1.0, 0.0) } else { c(0.0, 0.0) })
                            .collect()
                    })
                    .collect();
                CMatrix::from_rows(rows).unwrap()
            })
            .collect();
        out.push(Representation::new(images).unwrap());
    }
    out
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    let mut with_der_b = 0;
    for (name, g) in all_fixtures().into_iter().filter(|(_, g)| g.arity() == 3) {
        for e in 0..g.order() {
            for gamma in retract_reps(&g, e) {
                let lifts = lift_from_retract(&g, e, &gamma)
                    .map_err(|err| format!("{name} at {e}: {err}"))?
                    .is_some();
                let cter = c_ter_holds(&g, &gamma).unwrap();
                ensure!(lifts == cter, "{name} at {e}: lift {lifts} vs C-ter {cter}");
                if g.is_central(e) {
                    let d = der_b_lift_criteria(&g, e, &gamma).map_err(|err| format!("{name} at {e}: {err}"))?;
                    ensure!(d.lifts == lifts && !d.mismatch(), "{name} at {e}: {d:?}");
                    with_der_b += 1;
                }
                checked += 1;
            }
        }
    }
    let z4m = fixtures::z4m();
    let mut lifting = Vec::new();
    for k in 0..4u64 {
        let chi: Vec<Complex64> = (0..4).map(|x| root_of_unity(k * x, 4)).collect();
        let gamma = Representation::from_scalars(&chi).unwrap();
        if lift_from_retract(&z4m, 0, &gamma).unwrap().is_some() {
            lifting.push(k);
        }
    }
    ensure!(lifting == [0, 2], "Z4M lifting characters {lifting:?}");
    Ok(format!(
        "{checked} retract representations ({with_der_b} at central anchors); Z4M lifts k in {{0,2}}"
    ))
}

fn apply(m: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

fn parallel(u: &[Complex64], v: &[Complex64]) -> bool {
    (u[0] * v[1] - u[1] * v[0]).norm() <= EPS
}

fn criterion_9() -> Outcome {
    let g = fixtures::t2();
    let sum = Representation::from_scalars(&[c(1.0, 0.0), c(1.0, 0.0)])
        .unwrap()
        .direct_sum(&Representation::from_scalars(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap())
        .unwrap();
    let s = CMatrix::from_rows(vec![vec![c(1.0, 0.5), c(2.0, 0.0)], vec![c(-0.5, 0.0), c(1.0, -1.0)]]).unwrap();
    let rep = sum.conjugated(&s).unwrap();
    let w = vec![s.column(0)];
    let module = GModule::new(&g, rep.clone(), 0).unwrap();
    let split = maschke_decompose(&g, &module, &w).map_err(|e| e.to_string())?;
    let theta = &split.theta;
    ensure!(theta.mul(theta).approx_eq(theta, EPS), "theta not idempotent");
    for x in 0..2 {
        ensure!(
            theta.mul(rep.image(x)).approx_eq(&rep.image(x).mul(theta), EPS),
            "theta not equivariant at {x}"
        );
    }
    ensure!(
        split.complement.len() == 1,
        "kernel dimension {}",
        split.complement.len()
    );
    let k = &split.complement[0];
    ensure!(
        apply(theta, k).iter().all(|z| z.norm() <= EPS),
        "complement not in ker theta"
    );
    ensure!(
        apply(theta, &w[0]).iter().zip(&w[0]).all(|(a, b)| close(*a, *b, EPS)),
        "theta does not fix W"
    );
    ensure!(!parallel(&w[0], k), "W and ker theta overlap");
    for x in 0..2 {
        ensure!(
            parallel(&apply(rep.image(x), &w[0]), &w[0]),
            "W not invariant under {x}"
        );
        ensure!(
            parallel(&apply(rep.image(x), k), k),
            "ker theta not invariant under {x}"
        );
    }
    Ok("theta idempotent, equivariant; V = W + ker theta, both invariant".into())
}

fn criterion_10() -> Outcome {
    let s3t = fixtures::s3t();
    let subs = subgroups(&s3t).unwrap();
    ensure!(subs.len() == 10, "{} subgroups of S3T", subs.len());
    let normal = normal_subgroups(&s3t).unwrap();
    ensure!(normal.len() == 4, "{} normal subgroups", normal.len());
    let mut proper: Vec<Vec<usize>> = normal
        .iter()
        .filter(|h| h.len() > 1 && h.len() < 6)
        .map(|h| h.elements().to_vec())
        .collect();
    proper.sort();
    ensure!(proper == [vec![0, 3, 4], vec![1, 2, 5]], "proper normal {proper:?}");
    for (name, g) in all_fixtures() {
        for h in subgroups(&g).unwrap() {
            for a in 0..g.order() {
                let ah = coset(&g, &h, a).unwrap();
                ensure!(ah.len() == h.len(), "{name}: |{a}H| for {:?}", h.elements());
            }
        }
    }
    let a3 = SubgroupRef::new(&s3t, [0, 3, 4]).unwrap();
    let q = quotient(&s3t, &a3).unwrap();
    ensure!(q.group().verify_nary_group().passed(), "quotient does not verify");
    ensure!(q.cosets().blocks()[q.identity_block()] == [0, 3, 4], "identity block");
    // exhaustive well-definedness against the coset partition
    let part = cosets(&s3t, &a3).unwrap();
    let bad = first_failing(6, 3, |t| {
        let blocks: Vec<usize> = t.iter().map(|&x| part.block_of(x)).collect();
        part.block_of(s3t.eval(t).unwrap()) == q.group().eval(&blocks).unwrap()
    });
    ensure!(bad.is_none(), "quotient not well defined at {bad:?}");
    Ok("10 subgroups, 4 normal; coset sizes; S3T/A3 verifies and is well defined".into())
}

fn criterion_11() -> Outcome {
    let s3t = fixtures::s3t();
    let class = classify_simplicity(&s3t).unwrap();
    ensure!(class.name() == "has-proper-normal", "S3T: {}", class.name());
    let t2 = fixtures::t2();
    let Simplicity::BDerivedAbelian { central, .. } = classify_simplicity(&t2).unwrap() else {
        return Err("T2 is not classified b-derived-abelian".into());
    };
    let single = SubgroupRef::new(&t2, [central]).unwrap();
    ensure!(is_normal(&t2, &single).unwrap(), "{{{central}}} is not normal");
    let n = t2.arity();
    let commutes = first_failing(2, n - 1, |rest| {
        let vals: Vec<usize> = (0..n)
            .map(|i| t2.eval(&[&rest[..i], &[central][..], &rest[i..]].concat()).unwrap())
            .collect();
        vals.iter().all(|&v| v == vals[0])
    });
    ensure!(commutes.is_none(), "{central} not central: {commutes:?}");
    Ok(format!(
        "S3T has-proper-normal; T2 b-derived-abelian via central {{{central}}}"
    ))
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_polyad")
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn polyad(args: &[&str], workers: Option<u16>) -> Output {
    let mut cmd = Command::new(bin());
    if let Some(w) = workers {
        cmd.arg("--workers").arg(w.to_string());
    }
    cmd.args(args).output().expect("run polyad")
}

fn criterion_12() -> Outcome {
    let dir = fixture_dir();
    let mut runs = 0;
    for name in fixtures::NAMES {
        let file = dir.join(format!("{name}.json"));
        let f = file.to_str().unwrap();
        let printed = polyad(&["fixture", name], None);
        ensure!(
            printed.stdout == std::fs::read(&file).unwrap(),
            "{name}.json differs from `fixture {name}`"
        );
        let mut commands: Vec<Vec<&str>> = vec![
            vec!["verify", f],
            vec!["skew-table", f],
            vec!["retract", f, "--at", "0"],
            vec!["hg", f, "--at", "0"],
            vec!["cover", f, "--at", "0"],
            vec!["classes", f],
            vec!["centralizer", f, "--of", "0"],
            vec!["subgroups", f],
            vec!["subgroups", f, "--normal"],
            vec!["reps", f, "--dim", "1"],
            vec!["chars", f, "--orthogonality"],
            vec!["classify", f],
        ];
        if name == "S3T" {
            commands.push(vec!["quotient", f, "--subgroup", "0,3,4"]);
        }
        for args in &commands {
            let a = polyad(args, None);
            let b = polyad(args, None);
            let w1 = polyad(args, Some(1));
            let w4 = polyad(args, Some(4));
            ensure!(a.status.code() == Some(0), "{args:?}: exit {:?}", a.status.code());
            ensure!(a.stdout == b.stdout, "{args:?}: output differs between runs");
            ensure!(
                w1.stdout == w4.stdout && w1.stdout == a.stdout,
                "{args:?}: output depends on workers"
            );
            runs += 4;
        }
    }
    let json = |o: &Output| -> serde_json::Value { serde_json::from_slice(&o.stdout).unwrap() };
    let t2 = dir.join("T2.json");
    let t2 = t2.to_str().unwrap();
    let cover = json(&polyad(&["cover", t2, "--at", "0"], None));
    ensure!(
        cover["order"] == 4 && cover["isomorphism"] == "klein",
        "cover T2: {cover}"
    );
    let reps = json(&polyad(
        &["reps", dir.join("T2b.json").to_str().unwrap(), "--dim", "1"],
        None,
    ));
    ensure!(reps["count"] == 1, "reps T2b: {}", reps["count"]);
    let normal = json(&polyad(
        &["subgroups", dir.join("S3T.json").to_str().unwrap(), "--normal"],
        None,
    ));
    ensure!(normal["count"] == 4, "normal subgroups of S3T: {}", normal["count"]);

    // emitted groups re-verify
    let tmp = tempfile::tempdir().unwrap();
    let out_file = tmp.path().join("cover.json");
    let q4 = dir.join("Q4.json");
    let q4 = q4.to_str().unwrap();
    polyad(&["cover", q4, "--at", "1", "--out", out_file.to_str().unwrap()], None);
    let mut emitted = vec![out_file];
    for (k, args) in [
        vec!["hg", q4, "--at", "1"],
        vec!["retract", q4, "--at", "0"],
        vec![
            "quotient",
            dir.join("S3T.json").to_str().unwrap(),
            "--subgroup",
            "0,3,4",
        ],
    ]
    .iter()
    .map(|a| a.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    .enumerate()
    {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let path = tmp.path().join(format!("emitted{k}.json"));
        std::fs::write(&path, polyad(&args, None).stdout).unwrap();
        emitted.push(path);
    }
    for path in &emitted {
        let o = polyad(&["verify", path.to_str().unwrap()], None);
        ensure!(o.status.code() == Some(0), "{} does not re-verify", path.display());
    }

    // exit-code contract
    let bad = tmp.path().join("mutated.json");
    let mut doc = json(&polyad(&["fixture", "Z4M"], None));
    doc["table"][5] = serde_json::json!((doc["table"][5].as_u64().unwrap() + 1) % 4);
    std::fs::write(&bad, doc.to_string()).unwrap();
    let truncated = tmp.path().join("truncated.json");
    let text = std::fs::read_to_string(dir.join("T2.json")).unwrap();
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let cases: [(Vec<&str>, i32); 7] = [
        (vec!["verify", t2], 0),
        (vec!["verify", bad.to_str().unwrap()], 1),
        (vec!["classes", bad.to_str().unwrap()], 1),
        (vec!["verify", truncated.to_str().unwrap()], 2),
        (vec!["verify", "/nonexistent/group.json"], 2),
        (vec!["frobnicate", t2], 2),
        (vec!["quotient", t2, "--subgroup", "5"], 1),
    ];
    for (args, code) in &cases {
        let o = polyad(args, None);
        ensure!(
            o.status.code() == Some(*code),
            "{args:?}: exit {:?}, expected {code}",
            o.status.code()
        );
    }
    Ok(format!(
        "{runs} runs byte-identical (repeat, 1 vs 4 workers); re-verify and exit codes honored"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axiom suite", criterion_1),
        ("skew identities", criterion_2),
        ("Hosszu-Gluskin round trip", criterion_3),
        ("retracts", criterion_4),
        ("covering groups", criterion_5),
        ("1-dim representation counts", criterion_6),
        ("characters", criterion_7),
        ("lifting equivalences", criterion_8),
        ("Maschke", criterion_9),
        ("structure", criterion_10),
        ("classification", criterion_11),
        ("CLI", criterion_12),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
