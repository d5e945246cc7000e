use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use redvar_core::admissible::{
    self, aut_group, cone_invariants, fixedpoint_groups, is_w_admissible, orbit_dimension,
    orbit_poset, quasiaffine_check, reconstruct_sigma, toric_aut_group, wall_set,
};
use redvar_core::algebra::{
    self, hilbert_function, idempotent_faces, weight_key, weight_map_json, ScalarSystem,
};
use redvar_core::complexes::{self, validate_complex};
use redvar_core::degen::{self, HeightFunction, HeightSystem};
use redvar_core::{
    vinberg, AbelianGroup, AdmissibleCone, CharRing, Cocycle, Cone, Group, Reps, RingContext,
    Triple, WComplex,
};

use crate::input::{self, malformed, Outcome};

pub fn abelian(a: &AbelianGroup) -> Value {
    json!({"free_rank": a.free_rank, "torsion": a.torsion, "display": a.to_string()})
}

fn names(g: &Group, set: &[usize]) -> Value {
    json!(g.root_names(set))
}

fn triple(g: &Group, t: &Triple) -> Value {
    json!({"K": names(g, &t.k), "lambda_prime": t.lambda_prime, "J": names(g, &t.j)})
}

fn context(g: &Group, ctx: &RingContext) -> Value {
    let floor = ctx.floor.as_ref().map(|f| {
        f.pieces
            .iter()
            .map(|(a, d)| json!({"numerator": a, "denominator": d}))
            .collect::<Vec<_>>()
    });
    json!({
        "sigma": ctx.sigma.to_json(),
        "level": names(g, &ctx.k),
        "grading": ctx.gamma,
        "degree": ctx.degree,
        "floor": floor,
    })
}

/// Options shared by the commands that build a truncated character ring.
pub struct RingOpts<'a> {
    pub cone: Option<&'a str>,
    pub level: Option<&'a str>,
    pub gamma: Option<&'a str>,
    pub degree: Option<i64>,
}

fn grading(g: &Group, s: Option<&str>) -> Outcome<Vec<i64>> {
    match s {
        Some(s) => input::weight(g, s),
        None => Ok(g.rd().coweight_sum(&g.simple_indices())),
    }
}

fn degree(g: &Group, d: Option<i64>) -> i64 {
    d.unwrap_or(g.caps().degree)
}

fn ring(g: &Group, o: &RingOpts) -> Outcome<CharRing> {
    let sigma = match o.cone {
        Some(c) => input::cone(g, c)?,
        None => Cone::full(g.rank()),
    };
    let k = match o.level {
        Some(l) => input::roots(g, l)?,
        None => wall_set(g, &sigma),
    };
    let ctx = RingContext {
        sigma,
        k,
        gamma: grading(g, o.gamma)?,
        degree: degree(g, o.degree),
        floor: None,
    };
    let reps = Arc::new(Reps::new(g.rd().clone(), *g.caps()));
    Ok(CharRing::new(reps, ctx)?)
}

pub fn classify(g: &Group, cone: &str) -> Outcome<Value> {
    let sigma = input::cone(g, cone)?;
    let ac = AdmissibleCone::new(g, sigma.clone())?;
    let t = ac.triple();
    let poset = orbit_poset(g, &ac)?;
    let classes: Vec<Value> = poset
        .classes
        .iter()
        .map(|c| {
            json!({
                "face": c.face.to_json(),
                "cone_dim": c.cone_dim,
                "orbit_dim": c.orbit_dim,
                "triple": triple(g, &c.triple),
                "aut": abelian(&c.aut),
            })
        })
        .collect();
    let (fixer, stabilizer) = fixedpoint_groups(&t);
    let idempotents: Vec<Value> = idempotent_faces(g, &ac)?
        .iter()
        .map(|f| json!({"face": f.face.to_json(), "class": f.class}))
        .collect();
    Ok(json!({
        "sigma": sigma.to_json(),
        "C": ac.c().to_json(),
        "K": names(g, ac.k()),
        "triple": triple(g, &t),
        "orbit_dim": orbit_dimension(g, &t),
        "aut": abelian(&aut_group(g, &ac)),
        "toric_aut": abelian(&toric_aut_group(g, &sigma)),
        "quasiaffine": quasiaffine_check(g, &t)?,
        "fixed_points": {"fixer": names(g, &fixer), "stabilizer": names(g, &stabilizer)},
        "round_trip": reconstruct_sigma(g, ac.c(), ac.k())? == sigma,
        "orbits": {"classes": classes, "order": poset.order, "covers": poset.covers},
        "idempotents": idempotents,
        "toric_side": admissible::toric_side(g, &ac).to_json(),
    }))
}

pub fn admissible(g: &Group, cone: &str) -> Outcome<Value> {
    let sigma = input::cone(g, cone)?;
    let rep = is_w_admissible(g, &sigma);
    let mut out = json!({
        "sigma": sigma.to_json(),
        "admissible": rep.admissible,
        "failure": rep.failure,
    });
    if rep.admissible {
        let (c, k) = cone_invariants(g, &sigma)?;
        out["C"] = c.to_json();
        out["K"] = names(g, &k);
    }
    Ok(out)
}

fn complex_arg(g: &Group, s: Option<&str>) -> Outcome<(Value, WComplex)> {
    let Some(s) = s else {
        return malformed("this subcommand needs --complex");
    };
    let v = input::json_arg(s)?;
    let wc = WComplex::from_json(g, &v)?;
    Ok((v, wc))
}

fn cocycle_arg(g: &Group, wc: &WComplex, s: Option<&str>) -> Outcome<Cocycle> {
    match s {
        Some(s) => Ok(Cocycle::from_json(g, wc, &input::json_arg(s)?)?),
        None => Ok(Cocycle::trivial()),
    }
}

pub fn complex(g: &Group, cx: Option<&str>) -> Outcome<Value> {
    let (_, wc) = complex_arg(g, cx)?;
    let report = validate_complex(g, &wc);
    let mut out = json!({
        "complex": wc.to_json(),
        "valid": report.valid,
        "violation": report.violation,
        "globally_injective": complexes::is_globally_injective(&wc),
    });
    if report.valid {
        let comps = complexes::irreducible_components(g, &wc);
        out["components"] = json!(comps.iter().map(|&c| wc.id(c)).collect::<Vec<_>>());
        let orbits: Vec<Value> = complexes::orbit_classes(g, &wc)?
            .iter()
            .map(|o| {
                json!({
                    "representative": o.representative,
                    "members": o.members,
                    "cone_dim": o.cone_dim,
                    "triple": triple(g, &o.triple),
                    "aut": abelian(&o.aut),
                })
            })
            .collect();
        out["orbits"] = json!(orbits);
    }
    Ok(out)
}

pub fn cohomology(g: &Group, cx: Option<&str>, cocycle: Option<&str>) -> Outcome<Value> {
    let (_, wc) = complex_arg(g, cx)?;
    let ac = complexes::aut_chain_complex(g, &wc)?;
    let mut out = json!({
        "H0": abelian(&ac.homology(0)),
        "H1": abelian(&ac.homology(1)),
        "chain_complex": ac.to_json(),
    });
    if cocycle.is_some() {
        let t = cocycle_arg(g, &wc, cocycle)?;
        complexes::check_cocycle(g, &wc, &ac, &t)?;
        out["cocycle"] = json!({
            "class": complexes::cocycle_class(g, &wc, &t)?,
            "coboundary": complexes::is_coboundary(g, &wc, &t)?,
        });
    }
    Ok(out)
}

pub fn tensor(g: &Group, l: &str, m: &str) -> Outcome<Value> {
    let reps = Reps::new(g.rd().clone(), *g.caps());
    let lw = input::weight(g, l)?;
    let mw = input::weight(g, m)?;
    Ok(weight_map_json(&reps.tensor_decompose(&lw, &mw)?))
}

pub fn product(g: &Group, l: &str, m: &str, o: &RingOpts) -> Outcome<Value> {
    let ring = ring(g, o)?;
    let x = ring.basis_elem(&input::weight(g, l)?)?;
    let y = ring.basis_elem(&input::weight(g, m)?)?;
    let p = ring.product(&x, &y)?;
    Ok(json!({"product": p.to_json(), "context": context(g, ring.ctx())}))
}

pub fn semigroup_check(
    g: &Group,
    cx: Option<&str>,
    cocycle: Option<&str>,
    scalars: Option<&str>,
    compare: Option<&str>,
    o: &RingOpts,
) -> Outcome<Value> {
    if cx.is_some() {
        let (_, wc) = complex_arg(g, cx)?;
        let t = cocycle_arg(g, &wc, cocycle)?;
        return Ok(json!({
            "globally_injective": complexes::is_globally_injective(&wc),
            "semigroup_admissible": complexes::semigroup_admissible(g, &wc, &t)?,
        }));
    }
    if o.cone.is_none() {
        return malformed("semigroup-check needs --complex or --cone");
    }
    let ring = ring(g, o)?;
    let scalar = |s: Option<&str>| -> Outcome<ScalarSystem> {
        match s {
            Some(s) => Ok(ScalarSystem::from_json(g.rank(), &input::json_arg(s)?)?),
            None => Ok(ScalarSystem::one(g.rank())),
        }
    };
    let c = scalar(scalars)?;
    let mut out = json!({
        "context": context(g, ring.ctx()),
        "scalar_check": algebra::semigroup_scalar_check(g, &ring, &c)?,
        "solution_group": abelian(&algebra::scalar_solution_group(g, &ring)?),
        "submonoid_hilbert": algebra::submonoid_hilbert(g, &ring)?,
    });
    if compare.is_some() {
        let c2 = scalar(compare)?;
        out["torsor_check"] = json!(algebra::scalar_torsor_check(g, &ring, &c, &c2)?);
    }
    Ok(out)
}

pub fn degenerate(
    g: &Group,
    height: Option<&str>,
    gamma: Option<&str>,
    deg: Option<i64>,
) -> Outcome<Value> {
    let Some(height) = height else {
        return malformed("degenerate needs --height");
    };
    let v = input::json_arg(height)?;
    if v.get("complex").is_some() {
        let hs = HeightSystem::from_json(g, &v)?;
        let verdict = degen::validate_height_system(g, &hs);
        return Ok(json!({"valid": verdict.valid, "violation": verdict.violation}));
    }
    let h = HeightFunction::from_json(&v, g.rank())?;
    let verdict = degen::validate_height(g, &h);
    if !verdict.valid {
        return Ok(json!({"height": h.to_json(), "valid": false, "violation": verdict.violation}));
    }
    let (sub, ctx) = degen::special_fiber(g, &h, grading(g, gamma)?, degree(g, deg));
    let comps = complexes::irreducible_components(g, &sub);
    let (lifted, lift_error) = match degen::lifted_cone(g, &h) {
        Ok(c) => (c.to_json(), Value::Null),
        Err(e) => (Value::Null, json!(e.to_string())),
    };
    let witness = degen::nilpotent_witness(g, &h)?.map(|(w, m)| json!({"weight": w, "power": m}));
    let regions: Vec<Value> = h.regions().iter().map(Cone::to_json).collect();
    Ok(json!({
        "height": h.to_json(),
        "valid": true,
        "regions": regions,
        "subdivision": sub.to_json(),
        "components": comps.iter().map(|&c| sub.id(c)).collect::<Vec<_>>(),
        "lifted_cone": lifted,
        "lift_error": lift_error,
        "reduced": witness.is_none(),
        "nilpotent_witness": witness,
        "special_fiber": context(g, &ctx),
    }))
}

pub struct VinbergOpts<'a> {
    pub zeros: Option<&'a str>,
    pub cone: Option<&'a str>,
    pub gamma: Option<&'a str>,
    pub degree: Option<i64>,
    pub crosscheck: bool,
    pub support: bool,
}

pub fn vinberg_fiber(g: &Group, o: &VinbergOpts) -> Outcome<Value> {
    let zeros = input::roots(g, o.zeros.unwrap_or(""))?;
    let n = degree(g, o.degree);
    let gamma = o.gamma.map(|s| input::weight(g, s)).transpose()?;
    let fiber = vinberg::vinberg_fiber(g, &zeros, gamma, n)?;
    let mut out = json!({
        "zeros": names(g, &fiber.zeros),
        "level": names(g, &fiber.level),
        "one_parameter_subgroup": fiber.one_parameter_subgroup,
        "sigma": fiber.sigma.to_json(),
        "context": context(g, &fiber.context),
    });
    if let Some(c) = o.cone {
        let sigma = input::cone(g, c)?;
        let ctx = vinberg::x_star_v_fiber(g, &sigma, &zeros, grading(g, o.gamma)?, n)?;
        out["x_star_v"] = context(g, &ctx);
    }
    let reps = Reps::new(g.rd().clone(), *g.caps());
    if o.crosscheck {
        let rows = vinberg::parametrization_crosscheck(g, &reps, n)?;
        let orth = rows.iter().all(|r| r.orthogonal_level);
        let lit = rows.iter().all(|r| r.zero_pattern_level);
        let resolution = match (orth, lit) {
            (true, false) => "the fiber level is the set of simple roots with nonzero coordinate",
            (false, true) => "the fiber level is the zero pattern",
            (true, true) => "both readings agree at this degree",
            (false, false) => "neither reading matches the explicit fiber products",
        };
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "zeros": names(g, &r.zeros),
                    "zero_pattern_level": r.zero_pattern_level,
                    "orthogonal_level": r.orthogonal_level,
                })
            })
            .collect();
        out["crosscheck"] = json!({"rows": rows, "resolution": resolution});
    }
    if o.support {
        let gamma = grading(g, o.gamma)?;
        let s = vinberg::vinberg_ring_support(g, &reps, &gamma, n)?;
        out["ring_support"] = json!({
            "pairs": s.pairs.len(),
            "closed": s.closed,
            "counterexample": s.counterexample,
        });
    }
    Ok(out)
}

pub fn hilbert(
    g: &Group,
    cone: Option<&str>,
    gamma: Option<&str>,
    deg: Option<i64>,
) -> Outcome<Value> {
    let sigma = match cone {
        Some(c) => input::cone(g, c)?,
        None => Cone::full(g.rank()),
    };
    let gamma = grading(g, gamma)?;
    let n = degree(g, deg);
    let counts = hilbert_function(g, &sigma, &gamma, n)?;
    let by_degree: BTreeMap<String, u64> = counts
        .iter()
        .enumerate()
        .map(|(d, &c)| (d.to_string(), c))
        .collect();
    let points: Vec<String> = algebra::dominant_points(g, &sigma, &gamma, n)?
        .iter()
        .map(|w| weight_key(w))
        .collect();
    Ok(json!({"hilbert_function": by_degree, "points": points, "grading": gamma}))
}

pub fn oracle(deg: Option<i64>) -> Outcome<Value> {
    let n = deg.unwrap_or(6);
    if !(0..=6).contains(&n) {
        return malformed("the oracle runs for 0 <= N <= 6");
    }
    let rows = algebra::sl2_oracle(n as u32)?;
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let m = |x: &BTreeMap<u32, u64>| -> BTreeMap<String, u64> {
                x.iter().map(|(k, v)| (k.to_string(), *v)).collect()
            };
            json!({"n": r.n, "m": r.m, "level": r.level, "observed": m(&r.observed), "predicted": m(&r.predicted)})
        })
        .collect();
    Ok(json!({"passed": true, "rows": rows}))
}
