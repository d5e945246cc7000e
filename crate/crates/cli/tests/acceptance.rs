//! End-to-end acceptance criteria. Each criterion is checked against an
//! oracle written here, independently of the library code path it tests,
//! and reported on its own PASS/FAIL line.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use redvar_core::admissible::{
    aut_group, check_pair, cone_invariants, is_w_admissible, reconstruct_sigma, toric_aut_group,
    toric_side, wall_set,
};
use redvar_core::algebra::{
    associativity_check, scalar_solution_group, semigroup_scalar_check, sl2_oracle, ScalarSystem,
};
use redvar_core::complexes::{
    aut_chain_complex, cohomology, irreducible_components, validate_complex,
};
use redvar_core::degen::{self, HeightFunction};
use redvar_core::vinberg;
use redvar_core::{AdmissibleCone, CharRing, Cone, Group, Reps, RingContext, RootDatum, Weight};

type Check = Result<(), String>;

fn corpus(name: &str) -> Vec<Value> {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    let text = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    serde_json::from_str::<Value>(&text)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

fn corpus_cones() -> Vec<(Group, Cone)> {
    corpus("cones.json")
        .iter()
        .map(|e| {
            let g = Group::named(e["type"].as_str().unwrap()).unwrap();
            let c = Cone::from_json(&e["cone"], g.rank()).unwrap();
            (g, c)
        })
        .collect()
}

fn redvar(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_redvar"))
        .args(args)
        .env_remove("REDVAR_CAPS")
        .output()
        .expect("redvar runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reps(g: &Group) -> Arc<Reps> {
    Arc::new(Reps::new(g.rd().clone(), *g.caps()))
}

fn context(g: &Group, sigma: Cone, k: Vec<usize>, degree: i64) -> RingContext {
    RingContext {
        sigma,
        k,
        gamma: g.rd().coweight_sum(&g.simple_indices()),
        degree,
        floor: None,
    }
}

fn mat_row(f: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    (0..m[0].len())
        .map(|j| f.iter().zip(m).map(|(a, row)| a * row[j]).sum())
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn gcd_all(v: impl IntoIterator<Item = i64>) -> i64 {
    v.into_iter().fold(0, gcd)
}

/// `(free rank, torsion)` of `Z^n / rows` for `n ≤ 2`, by determinantal
/// divisors.
fn quotient_oracle(n: usize, rows: &[Vec<i64>]) -> (usize, Vec<u64>) {
    assert!(n <= 2);
    let d1 = gcd_all(rows.iter().flatten().copied());
    let d2 = if n == 2 {
        let mut g = 0;
        for a in rows {
            for b in rows {
                g = gcd(g, a[0] * b[1] - a[1] * b[0]);
            }
        }
        g
    } else {
        0
    };
    let mut torsion = Vec::new();
    let mut rank = 0;
    let divisors = [d1, d2];
    for k in 0..n {
        let (dk, prev) = (divisors[k], if k == 0 { 1 } else { divisors[k - 1] });
        if dk == 0 {
            continue;
        }
        rank += 1;
        if dk / prev > 1 {
            torsion.push((dk / prev) as u64);
        }
    }
    (n - rank, torsion)
}

/// Weyl's dimension formula with `ρ` the sum of fundamental weights.
fn weyl_dimension(rd: &RootDatum, lambda: &[i64]) -> i64 {
    let mut num = 1i128;
    let mut den = 1i128;
    for b in rd.positive_roots() {
        let pair_l: i64 = lambda.iter().zip(&b.coroot).map(|(x, y)| x * y).sum();
        let rho: i64 = b.coroot_coeffs.iter().sum();
        num *= i128::from(pair_l + rho);
        den *= i128::from(rho);
    }
    (num / den) as i64
}

fn add(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

// 1. Classification round trip.
fn round_trip() -> Check {
    let start = Instant::now();
    let cones = corpus_cones();
    ensure(cones.len() >= 20, || {
        format!("corpus has {} cones", cones.len())
    })?;
    for ty in ["A1", "A1xA1", "A2", "B2"] {
        let g = Group::named(ty).unwrap();
        let r = g.rank();
        // Every face of the dominant chamber is in the corpus.
        for f in g.chamber().faces() {
            ensure(
                cones
                    .iter()
                    .any(|(h, c)| h.rd().name() == Some(ty) && *c == f),
                || {
                    format!(
                        "{ty}: chamber face {:?} missing from the corpus",
                        f.generators()
                    )
                },
            )?;
        }
        ensure(
            cones
                .iter()
                .any(|(h, c)| h.rd().name() == Some(ty) && *c == Cone::full(r)),
            || format!("{ty}: the full translate Λ_R is missing"),
        )?;
    }
    for (g, sigma) in &cones {
        let (c, k) = cone_invariants(g, sigma).map_err(|e| e.to_string())?;
        let back = reconstruct_sigma(g, &c, &k).map_err(|e| e.to_string())?;
        ensure(back == *sigma, || {
            format!(
                "{:?} reconstructs to {:?}",
                sigma.generators(),
                back.generators()
            )
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))
}

// 2. (C_σ, K_σ) satisfy the wall conditions of the classification.
fn walls_lemma() -> Check {
    for (g, sigma) in corpus_cones() {
        let (c, k) = cone_invariants(&g, &sigma).map_err(|e| e.to_string())?;
        let roots = g.rd().simple_roots();
        // (1) lin C contains K.
        let lin = c.linear_span();
        for &i in &k {
            ensure(lin.contains(&roots[i]), || {
                format!("a{} ∉ lin C for {:?}", i + 1, sigma.generators())
            })?;
        }
        // (2) C = lin C ∩ Λ⁺_R ∩ {v ≥ 0 : v ≤ 0 on K}, taking for v the
        // W_K-translates of the facet normals of σ that are ≤ 0 on K.
        let mut family = Vec::new();
        for f in sigma.facets() {
            for w in g.weyl().parabolic(&k) {
                let v = mat_row(f, g.weyl().matrix(w));
                let ok = k
                    .iter()
                    .all(|&i| v.iter().zip(&roots[i]).map(|(a, b)| a * b).sum::<i64>() <= 0);
                if ok {
                    family.push(v);
                }
            }
        }
        let mut ineqs: Vec<Vec<i64>> = g.rd().simple_coroots().to_vec();
        ineqs.extend(family);
        let cut = Cone::from_inequalities(g.rank(), &ineqs, lin.equations());
        ensure(cut == c, || {
            format!("condition (2) fails for {:?}", sigma.generators())
        })?;
        check_pair(&g, &c, &k).map_err(|e| format!("check_pair: {e}"))?;
    }
    Ok(())
}

// 3. Aut consistency.
fn aut_consistency() -> Check {
    for (g, sigma) in corpus_cones() {
        let ac = AdmissibleCone::new(&g, sigma.clone()).map_err(|e| e.to_string())?;
        let aut = aut_group(&g, &ac);
        ensure(aut == toric_aut_group(&g, &sigma), || {
            format!("toric side differs for {:?}", sigma.generators())
        })?;
        // Independent Smith-form computation of (Λ ∩ lin σ) / ZK.
        let n = g.rank();
        let roots: Vec<Vec<i64>> = ac
            .k()
            .iter()
            .map(|&i| g.rd().simple_roots()[i].clone())
            .collect();
        let expected = match sigma.dim() {
            0 => (0, vec![]),
            d if d == n => quotient_oracle(n, &roots),
            1 => {
                let v = sigma.span_basis()[0].clone();
                let p = gcd_all(v.iter().copied());
                let v: Vec<i64> = v.iter().map(|x| x / p).collect();
                let j = v.iter().position(|&x| x != 0).unwrap();
                let coords: Vec<Vec<i64>> = roots.iter().map(|a| vec![a[j] / v[j]]).collect();
                quotient_oracle(1, &coords)
            }
            d => return Err(format!("no oracle for dim {d}")),
        };
        ensure((aut.free_rank, aut.torsion.clone()) == expected, || {
            format!(
                "{:?}: Aut {} but oracle {:?}",
                sigma.generators(),
                aut,
                expected
            )
        })?;
    }
    let g = Group::named("A1").unwrap();
    let ac = AdmissibleCone::new(&g, Cone::full(1)).unwrap();
    let aut = aut_group(&g, &ac);
    ensure(aut.free_rank == 0 && aut.torsion == vec![2], || {
        format!("A1 Λ_R: {aut}")
    })
}

// 4. Tensor products against formal character multiplication.
fn tensor_oracle() -> Check {
    let mut pairs = 0;
    for ty in ["A1", "A2", "B2"] {
        let g = Group::named(ty).unwrap();
        let reps = reps(&g);
        let rd = g.rd();
        let r = g.rank();
        let mut weights: Vec<Weight> = Vec::new();
        let mut frontier = vec![vec![0; r]];
        let mut seen = BTreeSet::new();
        while let Some(w) = frontier.pop() {
            if weyl_dimension(rd, &w) > 400 || !seen.insert(w.clone()) {
                continue;
            }
            weights.push(w.clone());
            for i in 0..r {
                let mut x = w.clone();
                x[i] += 1;
                frontier.push(x);
            }
        }
        for a in &weights {
            for b in &weights {
                let (da, db) = (weyl_dimension(rd, a), weyl_dimension(rd, b));
                if da * db > 400 || a > b {
                    continue;
                }
                pairs += 1;
                let got = reps.tensor_decompose(a, b).map_err(|e| e.to_string())?;
                // Multiply the formal characters and peel off highest weights.
                let ca = reps.weight_multiplicities(a).unwrap();
                let cb = reps.weight_multiplicities(b).unwrap();
                let mut prod: BTreeMap<Weight, i64> = BTreeMap::new();
                for (x, m) in ca.iter() {
                    for (y, n) in cb.iter() {
                        *prod.entry(add(x, y)).or_default() += (m * n) as i64;
                    }
                }
                let mut expected: BTreeMap<Weight, u64> = BTreeMap::new();
                while let Some((top, &m)) = prod
                    .iter()
                    .filter(|(w, &m)| m != 0 && rd.is_dominant(w))
                    .max_by_key(|(w, _)| rd.height_functional(w))
                {
                    let top = top.clone();
                    if m < 0 {
                        return Err(format!("{ty} {a:?}⊗{b:?}: negative remainder at {top:?}"));
                    }
                    expected.insert(top.clone(), m as u64);
                    for (x, k) in reps.weight_multiplicities(&top).unwrap().iter() {
                        *prod.entry(x.clone()).or_default() -= m * *k as i64;
                    }
                }
                ensure(prod.values().all(|&m| m == 0), || {
                    format!("{ty} {a:?}⊗{b:?}: leftover character")
                })?;
                ensure(got == expected, || {
                    format!("{ty} {a:?}⊗{b:?}: {got:?} vs {expected:?}")
                })?;
                let total: i64 = got
                    .iter()
                    .map(|(w, &c)| c as i64 * weyl_dimension(rd, w))
                    .sum();
                ensure(total == da * db, || {
                    format!("{ty} {a:?}⊗{b:?}: dimensions {total} ≠ {}", da * db)
                })?;
            }
        }
    }
    ensure(pairs > 100, || format!("only {pairs} pairs checked"))
}

// 5. Explicit SL₂ products.
fn sl2() -> Check {
    let rows = sl2_oracle(6).map_err(|e| e.to_string())?;
    ensure(rows.len() == 2 * 49, || format!("{} rows", rows.len()))?;
    ensure(rows.iter().all(|r| r.observed == r.predicted), || {
        "mismatch".into()
    })?;
    let (code, out) = redvar(&["oracle", "--N", "6"]);
    ensure(code == 0, || format!("CLI oracle exit {code}"))?;
    let v: Value = serde_json::from_str(&out).unwrap();
    ensure(v["passed"] == json!(true), || {
        "CLI oracle did not pass".into()
    })
}

// 6. Ring axioms on every corpus cone at both extreme levels.
fn algebra_laws() -> Check {
    for (g, sigma) in corpus_cones() {
        let reps = reps(&g);
        for k in [vec![], wall_set(&g, &sigma)] {
            let ring =
                CharRing::new(reps.clone(), context(&g, sigma.clone(), k.clone(), 8)).unwrap();
            let ok = associativity_check(&g, &ring).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{:?} at level {k:?}", sigma.generators()))?;
        }
    }
    Ok(())
}

fn scalars(z_order: u64, image: i64) -> ScalarSystem {
    ScalarSystem::from_json(
        1,
        &json!({"value_group": {"z": z_order}, "linear": [{"z": image}]}),
    )
    .unwrap()
}

// 7. Semigroup scalar systems.
fn semigroup_torsor() -> Check {
    for (g, sigma) in corpus_cones() {
        let ring = CharRing::new(
            reps(&g),
            context(&g, sigma.clone(), wall_set(&g, &sigma), 8),
        )
        .unwrap();
        let one = ScalarSystem::one(g.rank());
        ensure(semigroup_scalar_check(&g, &ring, &one).unwrap(), || {
            format!("c ≡ 1 fails on {:?}", sigma.generators())
        })?;
    }
    let g = Group::named("A1").unwrap();
    let line = CharRing::new(reps(&g), context(&g, Cone::full(1), vec![0], 8)).unwrap();
    let sols = scalar_solution_group(&g, &line).unwrap();
    let aut = aut_group(&g, &AdmissibleCone::new(&g, Cone::full(1)).unwrap());
    ensure(
        sols == aut && sols.torsion == vec![2] && sols.free_rank == 0,
        || format!("A1 Λ_R: {sols}"),
    )?;
    // Scalars c_λ = z^λ in Z/m solve the system iff z² = 1: there are
    // exactly gcd(2, m) of them.
    for m in [2u64, 3, 4, 6] {
        let count = (0..m as i64)
            .filter(|&t| semigroup_scalar_check(&g, &line, &scalars(m, t)).unwrap())
            .count() as u64;
        ensure(count == gcd(2, m as i64) as u64, || {
            format!("Z/{m}: {count} solutions")
        })?;
    }
    let ray = CharRing::new(reps(&g), context(&g, g.chamber().clone(), vec![], 8)).unwrap();
    let sols = scalar_solution_group(&g, &ray).unwrap();
    ensure(sols.free_rank == 1 && sols.torsion.is_empty(), || {
        format!("A1 Λ⁺_R: {sols}")
    })?;
    for t in [1, 2, 5] {
        ensure(
            semigroup_scalar_check(&g, &ray, &scalars(0, t)).unwrap(),
            || format!("z^{t}λ fails"),
        )?;
    }
    Ok(())
}

fn boundaries_compose_to_zero(g: &Group, wc: &redvar_core::WComplex) -> Check {
    let ac = aut_chain_complex(g, wc).map_err(|e| e.to_string())?;
    for i in 2..ac.boundaries.len() {
        let (a, b) = (&ac.boundaries[i - 1], &ac.boundaries[i]);
        for row in 0..ac.ranks[i - 2] {
            for col in 0..ac.ranks[i] {
                let s: i64 = (0..ac.ranks[i - 1]).map(|k| a[row][k] * b[k][col]).sum();
                ensure(s == 0, || format!("∂∂ ≠ 0 in degree {i}"))?;
            }
        }
    }
    Ok(())
}

// 8. Cohomology of W-complexes.
fn cohomology_checks() -> Check {
    for (g, sigma) in corpus_cones() {
        let ac = AdmissibleCone::new(&g, sigma.clone()).unwrap();
        let wc = toric_side(&g, &ac);
        ensure(validate_complex(&g, &wc).valid, || {
            format!("elementary complex of {:?} invalid", sigma.generators())
        })?;
        let (h0, h1) = cohomology(&g, &wc).map_err(|e| e.to_string())?;
        ensure(h1.is_trivial(), || {
            format!("H¹ = {h1} for {:?}", sigma.generators())
        })?;
        ensure(h0 == aut_group(&g, &ac), || {
            format!("H⁰ = {h0} for {:?}", sigma.generators())
        })?;
        boundaries_compose_to_zero(&g, &wc)?;
    }
    for e in corpus("complexes.json") {
        let ty = e["type"].as_str().unwrap();
        let g = Group::named(ty).unwrap();
        let wc = redvar_core::WComplex::from_json(&g, &e["complex"]).unwrap();
        boundaries_compose_to_zero(&g, &wc)?;
        if let Some(cyc) = e.get("cocycle") {
            let cx = e["complex"].to_string();
            let (code, out) = redvar(&[
                "cohomology",
                "--type",
                ty,
                "--complex",
                &cx,
                "--cocycle",
                &cyc.to_string(),
            ]);
            ensure(code == 0, || format!("cohomology exit {code}"))?;
            let v: Value = serde_json::from_str(&out).unwrap();
            ensure(v["H1"]["display"] != json!("0"), || {
                "H¹ of the non-elementary complex is trivial".into()
            })?;
            ensure(v["cocycle"]["coboundary"] == json!(false), || {
                "non-coboundary accepted".into()
            })?;
            let broken = e["broken_cocycle"].to_string();
            let (code, out) = redvar(&[
                "cohomology",
                "--type",
                ty,
                "--complex",
                &cx,
                "--cocycle",
                &broken,
            ]);
            ensure(code == 1 && out.contains("NotACocycle"), || {
                format!("broken cocycle: exit {code}")
            })?;
        }
    }
    Ok(())
}

// 9. Reduced special fiber ⟺ no nilpotent monomial.
fn degeneration_dichotomy() -> Check {
    let heights = corpus("heights.json");
    ensure(heights.len() >= 10, || format!("{} heights", heights.len()))?;
    let (mut integral, mut fractional) = (0, 0);
    for e in heights {
        let g = Group::named(e["type"].as_str().unwrap()).unwrap();
        let h = HeightFunction::from_json(&e["height"], g.rank()).unwrap();
        ensure(degen::validate_height(&g, &h).valid, || {
            format!("invalid height {}", e["height"])
        })?;
        let reduced = degen::special_fiber_reduced(&g, &h).unwrap();
        ensure(reduced == e["integral"].as_bool().unwrap(), || {
            format!("corpus label wrong for {}", e["height"])
        })?;
        if reduced {
            integral += 1;
        } else {
            fractional += 1;
        }
        let gamma = g.rd().coweight_sum(&g.simple_indices());
        let hb = h.sigma().intersect(g.chamber()).hilbert_basis(5).unwrap();
        let top = hb
            .iter()
            .map(|b| b.iter().zip(&gamma).map(|(x, y)| x * y).sum::<i64>())
            .max()
            .unwrap_or(0);
        let (_, mut ctx) = degen::special_fiber(&g, &h, gamma, 6 * top);
        ctx.k = vec![];
        let ring = CharRing::new(reps(&g), ctx).unwrap();
        let power = |lambda: &[i64], p: u32| {
            let x = ring.basis_elem(lambda).unwrap();
            let mut acc = ring.one();
            for _ in 0..p {
                acc = ring.product(&acc, &x).unwrap();
            }
            acc
        };
        let nilpotent = hb.iter().any(|b| power(b, 6).is_zero());
        ensure(nilpotent == !reduced, || {
            format!("search disagrees for {}", e["height"])
        })?;
        match degen::nilpotent_witness(&g, &h).unwrap() {
            None => ensure(reduced, || "missing witness".into())?,
            Some((lambda, m)) => {
                ensure(!reduced, || "witness for a reduced fiber".into())?;
                ensure(
                    h.sigma().contains(&lambda) && g.rd().is_dominant(&lambda),
                    || "witness outside σ".into(),
                )?;
                ensure(!h.value(&lambda).is_integer(), || {
                    "witness has integral height".into()
                })?;
                ensure(
                    power(&lambda, m).is_zero() && !power(&lambda, m - 1).is_zero(),
                    || format!("χ_{lambda:?}^{m} is not the first vanishing power"),
                )?;
            }
        }
    }
    ensure(integral > 0 && fractional > 0, || {
        "corpus lacks one of the two cases".into()
    })?;
    for e in corpus("height_systems.json") {
        let (code, out) = redvar(&[
            "degenerate",
            "--type",
            e["type"].as_str().unwrap(),
            "--height",
            &e["system"].to_string(),
        ]);
        ensure(code == 0, || format!("height system exit {code}"))?;
        let v: Value = serde_json::from_str(&out).unwrap();
        ensure(v["valid"] == e["valid"], || {
            format!("height system {} misjudged", e["name"])
        })?;
    }
    Ok(())
}

// 10. Σ_h for max(x, y) on the A1×A1 quadrant.
fn subdivision() -> Check {
    let g = Group::named("A1xA1").unwrap();
    let h = HeightFunction::from_json(
        &json!({"sigma": [[1, 0], [0, 1]], "pieces": [[1, 0], [0, 1]]}),
        2,
    )
    .unwrap();
    let regions = h.regions();
    let expected = [
        Cone::from_generators(2, &[vec![1, 0], vec![1, 1]]),
        Cone::from_generators(2, &[vec![0, 1], vec![1, 1]]),
    ];
    ensure(
        regions.len() == 2 && expected.iter().all(|c| regions.contains(c)),
        || format!("{regions:?}"),
    )?;
    let wc = degen::subdivision(&g, &h);
    ensure(validate_complex(&g, &wc).valid, || "Σ_h invalid".into())?;
    // Components X_τ, one per W-orbit of maximal cones; each orbit has a
    // unique member meeting the chamber in its interior.
    let cells = wc.cells();
    let maximal: Vec<usize> = (0..cells.len())
        .filter(|&a| !cells.iter().any(|c| c.faces.contains(&a)))
        .collect();
    let dominant = maximal
        .iter()
        .filter(|&&m| g.meets_chamber(&cells[m].cone))
        .count();
    let comps = irreducible_components(&g, &wc);
    ensure(comps.len() == 2 && dominant == 2, || {
        format!("{} components, {dominant} dominant", comps.len())
    })?;
    let (code, out) = redvar(&[
        "degenerate",
        "--type",
        "A1xA1",
        "--height",
        &json!({"sigma": [[1, 0], [0, 1]], "pieces": [[1, 0], [0, 1]]}).to_string(),
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    ensure(
        code == 0 && v["components"].as_array().map(Vec::len) == Some(2),
        || "CLI components".into(),
    )
}

// 11. Vinberg fibers.
fn vinberg_fibers() -> Check {
    for ty in ["A1", "A2"] {
        let g = Group::named(ty).unwrap();
        let reps = reps(&g);
        let fiber = vinberg::vinberg_fiber(&g, &[], None, 6).unwrap();
        ensure(fiber.sigma == Cone::full(g.rank()), || {
            format!("{ty}: generic σ")
        })?;
        let ring = CharRing::new(reps.clone(), fiber.context.clone()).unwrap();
        let basis = ring.basis(&g).unwrap();
        for a in &basis {
            for b in &basis {
                if ring.degree_of(&add(a, b)) > 6 {
                    continue;
                }
                let p = ring
                    .product(&ring.basis_elem(a).unwrap(), &ring.basis_elem(b).unwrap())
                    .unwrap();
                let full: BTreeMap<Weight, i64> = reps
                    .tensor_decompose(a, b)
                    .unwrap()
                    .into_iter()
                    .map(|(w, c)| (w, c as i64))
                    .collect();
                ensure(p.terms == full, || format!("{ty}: {a:?}·{b:?}"))?;
            }
        }
        for mask in 0..(1 << g.rank()) {
            let zeros: Vec<usize> = (0..g.rank()).filter(|i| mask >> i & 1 == 1).collect();
            let f = vinberg::vinberg_fiber(&g, &zeros, None, 6).unwrap();
            ensure(is_w_admissible(&g, &f.sigma).admissible, || {
                format!("{ty} {zeros:?}: σ not admissible")
            })?;
            let (c, k) = cone_invariants(&g, &f.sigma).unwrap();
            ensure(c == *g.chamber() && k == f.level, || {
                format!("{ty} {zeros:?}: invariants")
            })?;
        }
        let support =
            vinberg::vinberg_ring_support(&g, &reps, &g.rd().coweight_sum(&g.simple_indices()), 6)
                .unwrap();
        ensure(support.closed, || {
            format!("{ty}: support not closed: {:?}", support.counterexample)
        })?;
    }
    let (code, out) = redvar(&["vinberg-fiber", "--type", "A1", "--crosscheck", "--N", "6"]);
    ensure(code == 0, || format!("crosscheck exit {code}"))?;
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = v["crosscheck"]["rows"].as_array().unwrap();
    ensure(
        rows.len() == 2 && rows.iter().all(|r| r["orthogonal_level"] == json!(true)),
        || format!("crosscheck rows {rows:?}"),
    )?;
    ensure(
        v["crosscheck"]["resolution"]
            .as_str()
            .is_some_and(|s| !s.is_empty()),
        || "no resolution".into(),
    )
}

fn corpus_requests() -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = Vec::new();
    for e in corpus("cones.json") {
        let ty = e["type"].as_str().unwrap();
        let g = Group::named(ty).unwrap();
        let cone = e["cone"].to_string();
        for cmd in ["classify", "admissible", "hilbert"] {
            out.push(s(&[cmd, "--type", ty, "--cone", &cone, "--N", "6"]
                [..if cmd == "hilbert" { 7 } else { 5 }]));
        }
        out.push(s(&[
            "semigroup-check",
            "--type",
            ty,
            "--cone",
            &cone,
            "--N",
            "6",
        ]));
        let sigma = Cone::from_json(&e["cone"], g.rank()).unwrap();
        let c = sigma.intersect(g.chamber());
        let w = c
            .hilbert_basis(5)
            .unwrap()
            .into_iter()
            .next()
            .unwrap_or(vec![0; g.rank()]);
        let w = w.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        out.push(s(&[
            "product", "--type", ty, "--cone", &cone, "--l", &w, "--m", &w, "--N", "6",
        ]));
        out.push(s(&["tensor", "--type", ty, "--l", &w, "--m", &w]));
    }
    for e in corpus("complexes.json") {
        let ty = e["type"].as_str().unwrap();
        let cx = e["complex"].to_string();
        out.push(s(&["complex", "--type", ty, "--complex", &cx]));
        out.push(s(&["cohomology", "--type", ty, "--complex", &cx]));
        out.push(s(&["semigroup-check", "--type", ty, "--complex", &cx]));
    }
    for e in corpus("heights.json") {
        out.push(s(&[
            "degenerate",
            "--type",
            e["type"].as_str().unwrap(),
            "--height",
            &e["height"].to_string(),
        ]));
    }
    for e in corpus("height_systems.json") {
        out.push(s(&[
            "degenerate",
            "--type",
            e["type"].as_str().unwrap(),
            "--height",
            &e["system"].to_string(),
        ]));
    }
    for (ty, zeros) in [
        ("A1", ""),
        ("A1", "a1"),
        ("A2", ""),
        ("A2", "a1"),
        ("A2", "a1,a2"),
        ("B2", "a2"),
    ] {
        out.push(s(&[
            "vinberg-fiber",
            "--type",
            ty,
            "--zeros",
            zeros,
            "--N",
            "4",
            "--support",
        ]));
    }
    out.push(s(&[
        "vinberg-fiber",
        "--type",
        "A1",
        "--crosscheck",
        "--N",
        "4",
    ]));
    out.push(s(&["oracle", "--N", "3"]));
    out
}

// 12. Byte-identical output across runs.
fn determinism() -> Check {
    let requests = corpus_requests();
    let mut commands = BTreeSet::new();
    for r in &requests {
        let args: Vec<&str> = r.iter().map(String::as_str).collect();
        let (c1, o1) = redvar(&args);
        let (c2, o2) = redvar(&args);
        ensure(c1 == 0, || format!("{args:?} exited {c1}: {o1}"))?;
        ensure(c1 == c2 && o1 == o2, || {
            format!("{args:?} differs between runs")
        })?;
        commands.insert(r[0].clone());
    }
    ensure(commands.len() == 11, || {
        format!("only {commands:?} exercised")
    })
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("classification round trip", round_trip),
        (
            "walls lemma: (C, K) satisfy the classification conditions",
            walls_lemma,
        ),
        ("Aut matches the toric side and Smith form", aut_consistency),
        (
            "tensor products match character multiplication",
            tensor_oracle,
        ),
        ("explicit SL2 products match the level-K rule", sl2),
        (
            "character ring associativity, commutativity, unit",
            algebra_laws,
        ),
        (
            "semigroup scalar systems and torsor structure",
            semigroup_torsor,
        ),
        ("W-complex cohomology", cohomology_checks),
        ("degeneration dichotomy", degeneration_dichotomy),
        (
            "subdivision of max(x, y) on the A1xA1 quadrant",
            subdivision,
        ),
        ("Vinberg fibers and ring support", vinberg_fibers),
        ("CLI determinism on the corpus", determinism),
    ];
    let results: Vec<(Check, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (r, t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    // Written to the raw handle so the lines survive output capture.
    let mut err = std::io::stderr().lock();
    let mut failed = Vec::new();
    for (i, ((name, _), (r, t))) in criteria.iter().zip(&results).enumerate() {
        let line = match r {
            Ok(()) => format!("PASS {:>2}. {name} ({:.1}s)", i + 1, t.as_secs_f64()),
            Err(e) => {
                failed.push(i + 1);
                format!("FAIL {:>2}. {name}: {e}", i + 1)
            }
        };
        writeln!(err, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
