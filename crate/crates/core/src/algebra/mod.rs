//! Character-level models of the coordinate rings `k[X_σ]` and
//! `k[G]_(K)`: truncated products, Hilbert functions, scalar systems and
//! idempotents.

mod sl2;

pub use sl2::{sl2_oracle, OracleRow};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;
use serde_json::Value;

use crate::abelian::AbelianGroup;
use crate::admissible::{orbit_poset, AdmissibleCone};
use crate::complexes::ValueGroup;
use crate::cones::{parse_int_vec, Cone};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{self, dot_i, Int, Rat};
use crate::repthy::{Reps, WeightMap};
use crate::root_datum::Weight;

/// The data fixing a truncated character ring: the weights `Λ⁺ ∩ σ`, the
/// level `K`, a grading covector and the truncation degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingContext {
    pub sigma: Cone,
    pub k: Vec<usize>,
    pub gamma: Vec<i64>,
    pub degree: i64,
    /// Special-fiber rule: keep `ν` only if `⌊h(ν)⌋ = ⌊h(λ)⌋ + ⌊h(μ)⌋`.
    pub floor: Option<FloorRule>,
}

/// `h(x) = max_i (a_i · x) / d_i`, a height function in integer form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FloorRule {
    pub pieces: Vec<(Vec<i64>, i64)>,
}

impl FloorRule {
    pub fn value(&self, x: &[i64]) -> Rat {
        self.pieces
            .iter()
            .map(|(a, d)| linalg::rat_frac(dot_i(a, x), *d))
            .max()
            .expect("a height function has at least one piece")
    }

    pub fn floor(&self, x: &[i64]) -> Int {
        linalg::floor_rat(&self.value(x))
    }
}

/// An integer combination of the basis functions `χ_{λ,K}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharElem {
    pub ctx: RingContext,
    pub terms: BTreeMap<Weight, i64>,
}

impl CharElem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let terms: BTreeMap<String, i64> = self
            .terms
            .iter()
            .map(|(w, &c)| (weight_key(w), c))
            .collect();
        serde_json::json!(terms)
    }
}

/// `"1,-2"` for the weight `(1, -2)`.
pub fn weight_key(w: &[i64]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn weight_map_json(m: &WeightMap) -> Value {
    let out: BTreeMap<String, u64> = m.iter().map(|(w, &c)| (weight_key(w), c)).collect();
    serde_json::json!(out)
}

/// A truncated character ring with a memoized product table.
#[derive(Debug)]
pub struct CharRing {
    reps: Arc<Reps>,
    ctx: RingContext,
    table: Mutex<HashMap<(Weight, Weight), Arc<WeightMap>>>,
}

impl CharRing {
    pub fn new(reps: Arc<Reps>, ctx: RingContext) -> Result<CharRing> {
        let n = reps.rd().rank();
        if ctx.gamma.len() != n || ctx.sigma.ambient() != n {
            return Err(Error::RankMismatch(format!(
                "ring context is not of rank {n}"
            )));
        }
        if ctx.k.iter().any(|&i| i >= reps.rd().semisimple_rank()) {
            return Err(Error::BadInput("K names a nonexistent simple root".into()));
        }
        Ok(CharRing {
            reps,
            ctx,
            table: Mutex::new(HashMap::new()),
        })
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn reps(&self) -> &Reps {
        &self.reps
    }

    pub fn degree_of(&self, w: &[i64]) -> i64 {
        dot_i(w, &self.ctx.gamma)
    }

    /// `χ_{λ,K}`; `λ` must be a dominant weight of `σ` within the degree.
    pub fn basis_elem(&self, lambda: &[i64]) -> Result<CharElem> {
        if !self.reps.rd().is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        if !self.ctx.sigma.contains(lambda) {
            return Err(Error::BadInput(format!("{lambda:?} is not in σ")));
        }
        let mut terms = BTreeMap::new();
        if self.degree_of(lambda) <= self.ctx.degree {
            terms.insert(lambda.to_vec(), 1);
        }
        Ok(CharElem {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn one(&self) -> CharElem {
        self.basis_elem(&vec![0; self.reps.rd().rank()])
            .expect("0 lies in every cone")
    }

    /// Dominant weights of `σ` of degree at most `N`, sorted.
    pub fn basis(&self, g: &Group) -> Result<Vec<Weight>> {
        dominant_points(g, &self.ctx.sigma, &self.ctx.gamma, self.ctx.degree)
    }

    fn basis_product(&self, a: &[i64], b: &[i64]) -> Result<Arc<WeightMap>> {
        let key = if a <= b {
            (a.to_vec(), b.to_vec())
        } else {
            (b.to_vec(), a.to_vec())
        };
        if let Some(m) = self.table.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let full = self.reps.product_support_level(a, b, &self.ctx.k)?;
        let keep = |nu: &Weight| match &self.ctx.floor {
            None => true,
            Some(h) => h.floor(nu) == h.floor(a) + h.floor(b),
        };
        let m: WeightMap = full
            .into_iter()
            .filter(|(nu, _)| self.degree_of(nu) <= self.ctx.degree && keep(nu))
            .collect();
        let m = Arc::new(m);
        self.table.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    pub fn product(&self, x: &CharElem, y: &CharElem) -> Result<CharElem> {
        if x.ctx != self.ctx || y.ctx != self.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (a, &ca) in &x.terms {
            for (b, &cb) in &y.terms {
                for (nu, &c) in self.basis_product(a, b)?.iter() {
                    *acc.entry(nu.clone()).or_default() += ca * cb * c as i64;
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(CharElem {
            ctx: self.ctx.clone(),
            terms: acc,
        })
    }
}

pub fn char_product(ring: &CharRing, x: &CharElem, y: &CharElem) -> Result<CharElem> {
    ring.product(x, y)
}

/// Lattice points of `C = σ ∩ Λ⁺_R` of degree at most `n`.
pub fn dominant_points(g: &Group, sigma: &Cone, gamma: &[i64], n: i64) -> Result<Vec<Weight>> {
    let c = sigma.intersect(g.chamber());
    if !c.lineality().is_empty() || c.rays().iter().any(|r| dot_i(r, gamma) <= 0) {
        return Err(Error::BadInput(
            "the grading covector must be positive on σ ∩ Λ⁺_R minus the origin".into(),
        ));
    }
    let hb = c.hilbert_basis(g.caps().hilbert_dim)?;
    let zero = vec![0; g.rank()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for h in &hb {
            let y = linalg::add_i(&x, h);
            if dot_i(&y, gamma) <= n && seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Number of `λ ∈ Λ⁺ ∩ σ` in each degree `0..=n`.
pub fn hilbert_function(g: &Group, sigma: &Cone, gamma: &[i64], n: i64) -> Result<Vec<u64>> {
    let pts = dominant_points(g, sigma, gamma, n)?;
    let mut out = vec![0u64; (n.max(-1) + 1) as usize];
    for p in pts {
        out[dot_i(&p, gamma) as usize] += 1;
    }
    Ok(out)
}

/// Rejects weight monoids given by generators that are not saturated in
/// `Λ`: reductive varieties have saturated weight monoids.
pub fn require_saturated(g: &Group, gens: &[Vec<i64>]) -> Result<Cone> {
    if !crate::admissible::is_saturated_in_lattice(g.rank(), gens, g.caps().hilbert_dim)? {
        return Err(Error::NotSaturated(format!(
            "the monoid generated by {gens:?} is not Λ ∩ cone"
        )));
    }
    Ok(Cone::from_generators(g.rank(), gens))
}

/// Exhaustive associativity, commutativity and unit check on the basis.
///
/// Truncation discards high-degree terms whose products may reach lower
/// degrees when `K ≠ ∅`, so it is a projection rather than a quotient
/// ring; associativity is tested on the triples whose total degree is at
/// most `N`, where no truncation occurs.
pub fn associativity_check(g: &Group, ring: &CharRing) -> Result<bool> {
    let basis = ring.basis(g)?;
    let elems: Vec<CharElem> = basis
        .iter()
        .map(|b| ring.basis_elem(b))
        .collect::<Result<_>>()?;
    let one = ring.one();
    for x in &elems {
        if ring.product(&one, x)? != *x || ring.product(x, &one)? != *x {
            return Ok(false);
        }
    }
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i..] {
            let xy = ring.product(x, y)?;
            if xy != ring.product(y, x)? {
                return Ok(false);
            }
            if xy.terms.keys().any(|nu| !ring.ctx.sigma.contains(nu)) {
                return Ok(false);
            }
            for z in &elems {
                let total: i64 = [x, y, z]
                    .iter()
                    .map(|e| e.terms.keys().map(|w| ring.degree_of(w)).sum::<i64>())
                    .sum();
                if total > ring.ctx.degree {
                    continue;
                }
                let left = ring.product(&xy, z)?;
                let right = ring.product(x, &ring.product(y, z)?)?;
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarRule {
    /// `c_λ = Σ λ_i · image_i`.
    Linear(Vec<Vec<i64>>),
    Table(BTreeMap<Weight, Vec<i64>>),
}

/// Scalars `c_λ` in a symbolic value group, written additively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSystem {
    pub value_group: ValueGroup,
    pub rule: ScalarRule,
}

impl ScalarSystem {
    /// The system `c ≡ 1`.
    pub fn one(rank: usize) -> ScalarSystem {
        ScalarSystem {
            value_group: ValueGroup {
                symbols: Vec::new(),
                orders: Vec::new(),
            },
            rule: ScalarRule::Linear(vec![Vec::new(); rank]),
        }
    }

    pub fn value(&self, lambda: &[i64]) -> Option<Vec<i64>> {
        let mut v = match &self.rule {
            ScalarRule::Linear(imgs) => {
                let mut v = vec![0; self.value_group.symbols.len()];
                for (x, img) in lambda.iter().zip(imgs) {
                    for (o, i) in v.iter_mut().zip(img) {
                        *o += x * i;
                    }
                }
                v
            }
            ScalarRule::Table(t) => t.get(lambda)?.clone(),
        };
        self.value_group.reduce(&mut v);
        Some(v)
    }

    /// `{"value_group": {"z": 2}, "linear": [{"z": 1}, ...]}` or
    /// `{"value_group": ..., "values": {"1,0": {"z": 1}, ...}}`.
    pub fn from_json(rank: usize, v: &Value) -> Result<ScalarSystem> {
        let bad = |m: &str| Error::BadInput(m.to_string());
        let vg = v
            .get("value_group")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("scalar system needs a \"value_group\" object"))?;
        let mut symbols = Vec::new();
        let mut orders = Vec::new();
        for (s, o) in vg {
            symbols.push(s.clone());
            orders.push(
                o.as_u64()
                    .ok_or_else(|| bad("symbol orders are nonnegative integers"))?,
            );
        }
        let value_group = ValueGroup { symbols, orders };
        let elem = |x: &Value| -> Result<Vec<i64>> {
            match x {
                Value::Object(o) => {
                    let mut r = vec![0; value_group.symbols.len()];
                    for (s, e) in o {
                        let k = value_group
                            .symbols
                            .iter()
                            .position(|t| t == s)
                            .ok_or_else(|| Error::BadInput(format!("unknown symbol {s:?}")))?;
                        r[k] = e.as_i64().ok_or_else(|| bad("exponents are integers"))?;
                    }
                    Ok(r)
                }
                _ => {
                    let r = parse_int_vec(x)?;
                    if r.len() != value_group.symbols.len() {
                        return Err(bad("value has the wrong number of exponents"));
                    }
                    Ok(r)
                }
            }
        };
        let rule = if let Some(l) = v.get("linear") {
            let imgs = l
                .as_array()
                .ok_or_else(|| bad("\"linear\" must be a list"))?;
            if imgs.len() != rank {
                return Err(Error::RankMismatch(format!(
                    "\"linear\" needs {rank} images"
                )));
            }
            ScalarRule::Linear(imgs.iter().map(elem).collect::<Result<_>>()?)
        } else if let Some(t) = v.get("values").and_then(Value::as_object) {
            let mut table = BTreeMap::new();
            for (k, x) in t {
                let w: Vec<i64> = k
                    .split(',')
                    .map(|s| s.trim().replace('−', "-").parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::BadInput(format!("bad weight key {k:?}")))?;
                if w.len() != rank {
                    return Err(Error::RankMismatch(format!("weight key {k:?}")));
                }
                table.insert(w, elem(x)?);
            }
            ScalarRule::Table(table)
        } else {
            return Err(bad("scalar system needs \"linear\" or \"values\""));
        };
        Ok(ScalarSystem { value_group, rule })
    }
}

fn scalar(c: &ScalarSystem, w: &[i64]) -> Result<Vec<i64>> {
    c.value(w)
        .ok_or_else(|| Error::BadInput(format!("scalar system has no value at {w:?}")))
}

/// `c_λ c_μ = c_ν` for every `ν` in the level-K product of `λ, μ` within
/// the truncation degree.
pub fn semigroup_scalar_check(g: &Group, ring: &CharRing, c: &ScalarSystem) -> Result<bool> {
    let basis = ring.basis(g)?;
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let mut lhs = linalg::add_i(&scalar(c, a)?, &scalar(c, b)?);
            c.value_group.reduce(&mut lhs);
            for nu in ring.basis_product(a, b)?.keys() {
                if scalar(c, nu)? != lhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `λ ↦ c_λ / c'_λ` is additive on the truncated monoid and constant on
/// classes modulo `ZK`: a character of `(Λ ∩ lin σ)/ZK`.
pub fn scalar_torsor_check(
    g: &Group,
    ring: &CharRing,
    c: &ScalarSystem,
    c2: &ScalarSystem,
) -> Result<bool> {
    if c.value_group != c2.value_group {
        return Err(Error::ContextMismatch);
    }
    let basis = ring.basis(g)?;
    let mut ratio = HashMap::new();
    for b in &basis {
        let mut d = linalg::sub_i(&scalar(c, b)?, &scalar(c2, b)?);
        c.value_group.reduce(&mut d);
        ratio.insert(b.clone(), d);
    }
    for a in &basis {
        for b in &basis {
            let s = linalg::add_i(a, b);
            if let Some(ds) = ratio.get(&s) {
                let mut sum = linalg::add_i(&ratio[a], &ratio[b]);
                c.value_group.reduce(&mut sum);
                if *ds != sum {
                    return Ok(false);
                }
            }
        }
    }
    let roots: Vec<Vec<i64>> = ring
        .ctx
        .k
        .iter()
        .map(|&i| g.rd().simple_roots()[i].clone())
        .collect();
    let zk = linalg::hnf_rows(&roots, g.rank());
    for a in &basis {
        for b in &basis {
            let diff = linalg::sub_i(a, b);
            let in_zk = linalg::is_zero_i(&diff)
                || (!zk.is_empty() && linalg::coords_in_lattice(&zk, &diff).is_some());
            if in_zk && ratio[a] != ratio[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The group whose characters are the scalar systems `c` with `c_λ c_μ =
/// c_ν` up to the truncation degree: `Z^{basis}` modulo the relations
/// `e_λ + e_μ − e_ν`.
pub fn scalar_solution_group(g: &Group, ring: &CharRing) -> Result<AbelianGroup> {
    let basis = ring.basis(g)?;
    let pos: HashMap<&Weight, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut rels = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            for nu in ring.basis_product(a, b)?.keys() {
                let mut r = vec![0i64; basis.len()];
                r[pos[a]] += 1;
                r[pos[b]] += 1;
                r[pos[nu]] -= 1;
                rels.push(r);
            }
        }
    }
    Ok(AbelianGroup::quotient(basis.len(), &rels))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentFace {
    pub face: Cone,
    /// Index of the orbit class in `orbit_poset`.
    pub class: usize,
}

/// Faces of `σ` modulo `Stab_W(σ)`, each tagged with its orbit class.
pub fn idempotent_faces(g: &Group, ac: &AdmissibleCone) -> Result<Vec<IdempotentFace>> {
    let poset = orbit_poset(g, ac)?;
    let stab = g.stabilizer(ac.sigma());
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in ac.sigma().faces() {
        let key = stab
            .iter()
            .map(|&w| g.translate(w, &f))
            .min()
            .expect("identity stabilizes");
        if !seen.insert(key) {
            continue;
        }
        let canonical = (0..g.weyl().len())
            .map(|w| g.translate(w, &f))
            .find(|t| g.meets_chamber(t))
            .expect("every face has a dominant translate");
        let class = poset
            .classes
            .iter()
            .position(|c| c.face == canonical)
            .ok_or_else(|| Error::BadInput("face class missing from the orbit poset".into()))?;
        out.push(IdempotentFace { face: f, class });
    }
    Ok(out)
}

/// `Σ (dim V_{λ,K})²` over the weights of each degree: the Hilbert
/// function of `k[eXe]`.
pub fn submonoid_hilbert(g: &Group, ring: &CharRing) -> Result<Vec<u64>> {
    let n = ring.ctx.degree;
    let mut out = vec![0u64; (n.max(-1) + 1) as usize];
    for b in ring.basis(g)? {
        let d: u64 = ring.reps.levi_truncation(&b, &ring.ctx.k)?.values().sum();
        out[ring.degree_of(&b) as usize] += d * d;
    }
    Ok(out)
}

/// The context of `gr_γ`: level `K = {α : ⟨α, γ⟩ = 0}`.
pub fn graded_degeneration_support(
    g: &Group,
    sigma: Cone,
    gamma: Vec<i64>,
    degree: i64,
) -> Result<RingContext> {
    let roots = g.rd().simple_roots();
    if roots.iter().any(|a| dot_i(a, &gamma) < 0) {
        return Err(Error::BadInput(
            "the grading covector is not dominant".into(),
        ));
    }
    let k = (0..roots.len())
        .filter(|&i| dot_i(&roots[i], &gamma) == 0)
        .collect();
    Ok(RingContext {
        sigma,
        k,
        gamma,
        degree,
        floor: None,
    })
}
