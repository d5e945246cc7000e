//! One-parameter degenerations given by height functions on admissible
//! cones.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::admissible::{is_w_admissible, wall_set};
use crate::algebra::{FloorRule, RingContext};
use crate::complexes::{validate_complex, WComplex};
use crate::cones::{parse_int_vec, parse_rat_matrix, Cone};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{self, dot_ir, dot_r, Rat};
use crate::root_datum::{covec_mat, Weight};

/// `h(x) = max_i ℓ_i(x)` on a cone, with rational covectors `ℓ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction {
    sigma: Cone,
    pieces: Vec<Vec<Rat>>,
}

/// A function that is linear on each of finitely many cones covering its
/// domain.
type Pl = Vec<(Cone, Vec<Rat>)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub violation: Option<String>,
}

impl Verdict {
    fn ok() -> Verdict {
        Verdict {
            valid: true,
            violation: None,
        }
    }

    fn fail(msg: impl Into<String>) -> Verdict {
        Verdict {
            valid: false,
            violation: Some(msg.into()),
        }
    }
}

fn restrict(cone: &Cone, ineqs: &[Vec<Rat>]) -> Cone {
    let mut all: Vec<Vec<Rat>> = cone
        .facets()
        .iter()
        .map(|f| linalg::ivec_to_rat(f))
        .collect();
    all.extend(ineqs.iter().cloned());
    let eqs: Vec<Vec<Rat>> = cone
        .equations()
        .iter()
        .map(|e| linalg::ivec_to_rat(e))
        .collect();
    Cone::from_inequalities_q(cone.ambient(), &all, &eqs)
}

fn sub_r(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_r(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Equality of two PL functions whose pieces cover the same domain: on
/// each intersection of pieces both are linear, so agreement on the
/// generators of the intersection suffices.
fn pl_equal(a: &Pl, b: &Pl) -> bool {
    a.iter().all(|(ra, la)| {
        b.iter().all(|(rb, lb)| {
            ra.intersect(rb)
                .generators()
                .iter()
                .all(|v| dot_ir(v, la) == dot_ir(v, lb))
        })
    })
}

impl HeightFunction {
    pub fn new(sigma: Cone, pieces: Vec<Vec<Rat>>) -> Result<HeightFunction> {
        if pieces.is_empty() {
            return Err(Error::BadInput(
                "a height function needs at least one piece".into(),
            ));
        }
        if pieces.iter().any(|p| p.len() != sigma.ambient()) {
            return Err(Error::RankMismatch(
                "height piece has the wrong length".into(),
            ));
        }
        Ok(HeightFunction { sigma, pieces })
    }

    /// Reads `{"sigma": cone, "pieces": [covectors]}`.
    pub fn from_json(v: &Value, ambient: usize) -> Result<HeightFunction> {
        let sigma = Cone::from_json(
            v.get("sigma")
                .ok_or_else(|| Error::BadInput("height needs \"sigma\"".into()))?,
            ambient,
        )?;
        let pieces = parse_rat_matrix(
            v.get("pieces")
                .ok_or_else(|| Error::BadInput("height needs \"pieces\"".into()))?,
        )?;
        HeightFunction::new(sigma, pieces)
    }

    pub fn to_json(&self) -> Value {
        let pieces: Vec<Vec<String>> = self
            .pieces
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect())
            .collect();
        serde_json::json!({"sigma": self.sigma.generators(), "pieces": pieces})
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn pieces(&self) -> &[Vec<Rat>] {
        &self.pieces
    }

    pub fn value(&self, x: &[i64]) -> Rat {
        self.pieces
            .iter()
            .map(|p| dot_ir(x, p))
            .max()
            .expect("nonempty")
    }

    /// `q · h` for a positive rational `q`.
    pub fn scaled(&self, q: &Rat) -> HeightFunction {
        assert!(*q > Rat::zero());
        HeightFunction {
            sigma: self.sigma.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| p.iter().map(|x| x * q).collect())
                .collect(),
        }
    }

    /// Full-dimensional linearity domains `σ ∩ {ℓ_i ≥ ℓ_j}` with their
    /// covectors, in canonical cone order and without repeats.
    pub fn linear_pieces(&self) -> Pl {
        let mut out: BTreeMap<Cone, Vec<Rat>> = BTreeMap::new();
        for li in &self.pieces {
            let ineqs: Vec<Vec<Rat>> = self.pieces.iter().map(|lj| sub_r(li, lj)).collect();
            let region = restrict(&self.sigma, &ineqs);
            if region.dim() == self.sigma.dim() {
                out.entry(region).or_insert_with(|| li.clone());
            }
        }
        out.into_iter().collect()
    }

    pub fn regions(&self) -> Vec<Cone> {
        self.linear_pieces().into_iter().map(|(c, _)| c).collect()
    }

    /// The pieces restricted to a subcone of `σ`.
    fn restricted_to(&self, tau: &Cone) -> Pl {
        self.linear_pieces()
            .into_iter()
            .map(|(r, l)| (r.intersect(tau), l))
            .collect()
    }

    pub fn floor_rule(&self) -> FloorRule {
        FloorRule {
            pieces: self
                .pieces
                .iter()
                .map(|p| {
                    let (num, den) = linalg::clear_denominators(p);
                    (linalg::bigvec_to_i64(&num), linalg::to_i64(&den))
                })
                .collect(),
        }
    }
}

/// Admissibility of `σ` and `Stab_W(σ)`-invariance of `h`; convexity,
/// rationality and piecewise linearity hold by construction.
pub fn validate_height(g: &Group, h: &HeightFunction) -> Verdict {
    if h.sigma.ambient() != g.rank() {
        return Verdict::fail("σ is not in Λ_R");
    }
    let rep = is_w_admissible(g, &h.sigma);
    if !rep.admissible {
        return Verdict::fail(format!("σ is not W-admissible: {:?}", rep.failure));
    }
    let base = h.linear_pieces();
    for w in g.stabilizer(&h.sigma) {
        let m = g.weyl().matrix(w);
        let inv = g.weyl().matrix(g.weyl().inverse(w));
        let moved: Pl = base
            .iter()
            .map(|(r, l)| (r.apply_matrix(inv), covec_mat(l, m)))
            .collect();
        if !pl_equal(&base, &moved) {
            return Verdict::fail(format!(
                "h is not invariant under the stabilizer element with reduced word {:?}",
                g.weyl().reduced_word(w)
            ));
        }
    }
    Verdict::ok()
}

/// `Σ_h`: the linearity domains of `h`, their faces and W-translates.
pub fn subdivision(g: &Group, h: &HeightFunction) -> WComplex {
    WComplex::from_cones(g, &h.regions())
}

/// `{(x, y) : x ∈ σ, y ≥ h(x)}`, checked to be W-admissible for `G × G_m`.
pub fn lifted_cone(g: &Group, h: &HeightFunction) -> Result<Cone> {
    let n = g.rank();
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for (r, l) in h.linear_pieces() {
        for v in r.generators() {
            let mut x = linalg::ivec_to_rat(&v);
            x.push(dot_ir(&v, &l));
            gens.push(x);
        }
    }
    let mut up = vec![Rat::zero(); n + 1];
    up[n] = Rat::one();
    gens.push(up);
    let lifted = Cone::from_generators_q(n + 1, &gens);
    let big = Group::new(g.rd().with_torus(1), *g.caps())?;
    let rep = is_w_admissible(&big, &lifted);
    if !rep.admissible {
        return Err(Error::NotAdmissibleLift(format!("{:?}", rep.failure)));
    }
    Ok(lifted)
}

/// The first dominant Hilbert-basis element of a linearity domain where
/// `h` is not an integer. Integrality there implies integrality on all of
/// `Λ ∩ σ`, by additivity on each domain and `Stab_W(σ)`-invariance.
fn non_integral_point(g: &Group, h: &HeightFunction) -> Result<Option<Weight>> {
    for r in h.regions() {
        let dom = r.intersect(g.chamber());
        for lambda in dom.hilbert_basis(g.caps().hilbert_dim)? {
            if !h.value(&lambda).is_integer() {
                return Ok(Some(lambda));
            }
        }
    }
    Ok(None)
}

pub fn special_fiber_reduced(g: &Group, h: &HeightFunction) -> Result<bool> {
    Ok(non_integral_point(g, h)?.is_none())
}

/// `(λ, m)` with `h(λ) ∉ Z` and `m` least with `⌊m h(λ)⌋ > m ⌊h(λ)⌋`,
/// certifying `χ_λ^m = 0` in the special fiber.
pub fn nilpotent_witness(g: &Group, h: &HeightFunction) -> Result<Option<(Weight, u32)>> {
    let Some(lambda) = non_integral_point(g, h)? else {
        return Ok(None);
    };
    let q = h.value(&lambda);
    let fl = q.floor();
    let mut m = 2u32;
    loop {
        let mr = Rat::from_integer(m.into());
        if (&mr * &q).floor() > &mr * &fl {
            return Ok(Some((lambda, m)));
        }
        m += 1;
    }
}

/// `Σ_h` (with trivial cocycle) and the ring context of the special fiber.
pub fn special_fiber(
    g: &Group,
    h: &HeightFunction,
    gamma: Vec<i64>,
    degree: i64,
) -> (WComplex, RingContext) {
    let ctx = RingContext {
        sigma: h.sigma.clone(),
        k: wall_set(g, &h.sigma),
        gamma,
        degree,
        floor: Some(h.floor_rule()),
    };
    (subdivision(g, h), ctx)
}

/// Heights on the maximal cells of a complex, with declared differences
/// `γ` on shared faces.
#[derive(Debug, Clone)]
pub struct HeightSystem {
    pub complex: WComplex,
    pub heights: BTreeMap<usize, HeightFunction>,
    /// `(τ, σ_1, σ_2) ↦ γ`, with `(h_{σ_1} − h_{σ_2})|_τ = γ`.
    pub gamma: BTreeMap<(usize, usize, usize), Vec<i64>>,
}

impl HeightSystem {
    /// Reads `{"complex": ..., "heights": {"id": [covectors]}, "gamma":
    /// [{"face", "cones": [id1, id2], "covector"}]}`.
    pub fn from_json(g: &Group, v: &Value) -> Result<HeightSystem> {
        let bad = |m: String| Error::BadInput(m);
        let complex = WComplex::from_json(
            g,
            v.get("complex")
                .ok_or_else(|| bad("height system needs \"complex\"".into()))?,
        )?;
        let cell = |id: &str| {
            complex
                .index_of(id)
                .ok_or_else(|| bad(format!("unknown cone id {id:?}")))
        };
        let mut heights = BTreeMap::new();
        let hs = v
            .get("heights")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("height system needs a \"heights\" object".into()))?;
        for (id, p) in hs {
            let c = cell(id)?;
            let pieces = parse_rat_matrix(p.get("pieces").unwrap_or(p))?;
            heights.insert(
                c,
                HeightFunction::new(complex.cells()[c].cone.clone(), pieces)?,
            );
        }
        let mut gamma = BTreeMap::new();
        if let Some(list) = v.get("gamma").and_then(Value::as_array) {
            for e in list {
                let face = cell(
                    e.get("face")
                        .and_then(Value::as_str)
                        .ok_or_else(|| bad("gamma entry needs \"face\"".into()))?,
                )?;
                let cones = e
                    .get("cones")
                    .and_then(Value::as_array)
                    .filter(|c| c.len() == 2)
                    .ok_or_else(|| bad("gamma entry needs two \"cones\"".into()))?;
                let ids: Vec<usize> = cones
                    .iter()
                    .map(|c| cell(c.as_str().unwrap_or_default()))
                    .collect::<Result<_>>()?;
                let cov = parse_int_vec(
                    e.get("covector")
                        .ok_or_else(|| bad("gamma entry needs \"covector\"".into()))?,
                )?;
                if cov.len() != g.rank() {
                    return Err(Error::RankMismatch(
                        "gamma covector has the wrong length".into(),
                    ));
                }
                gamma.insert((face, ids[0], ids[1]), cov);
            }
        }
        Ok(HeightSystem {
            complex,
            heights,
            gamma,
        })
    }

    fn declared(&self, tau: usize, a: usize, b: usize) -> Option<Vec<i64>> {
        if let Some(v) = self.gamma.get(&(tau, a, b)) {
            return Some(v.clone());
        }
        self.gamma.get(&(tau, b, a)).map(|v| linalg::scale_i(v, -1))
    }
}

pub fn validate_height_system(g: &Group, hs: &HeightSystem) -> Verdict {
    let wc = &hs.complex;
    if let Some(v) = validate_complex(g, wc).violation {
        return Verdict::fail(format!(
            "invalid complex, axiom ({}): {}",
            v.axiom, v.detail
        ));
    }
    let cells = wc.cells();
    let maximal: Vec<usize> = (0..cells.len())
        .filter(|&a| !cells.iter().any(|c| c.faces.contains(&a)))
        .collect();
    for &m in &maximal {
        let Some(h) = hs.heights.get(&m) else {
            return Verdict::fail(format!("maximal cone {:?} has no height", wc.id(m)));
        };
        // Heights off the dominant chamber are tied to their dominant
        // translates by equivariance below.
        if g.meets_chamber(&cells[m].cone) {
            if let Some(v) = validate_height(g, h).violation {
                return Verdict::fail(format!("height on {:?}: {v}", wc.id(m)));
            }
        }
    }
    for &m in &maximal {
        for i in g.simple_indices() {
            let image = wc.act(i, m);
            let s = g.rd().simple_reflection_matrix(i);
            let moved: Pl = hs.heights[&m]
                .linear_pieces()
                .into_iter()
                .map(|(r, l)| (r.apply_matrix(&s), covec_mat(&l, &s)))
                .collect();
            if !pl_equal(&hs.heights[&image].linear_pieces(), &moved) {
                return Verdict::fail(format!(
                    "heights on {:?} and {:?} are not related by s{}",
                    wc.id(m),
                    wc.id(image),
                    i + 1
                ));
            }
        }
    }
    for (&(tau, a, b), v) in &hs.gamma {
        let name = format!("({:?}, {:?}, {:?})", wc.id(tau), wc.id(a), wc.id(b));
        if !maximal.contains(&a)
            || !maximal.contains(&b)
            || !wc.is_face(tau, a)
            || !wc.is_face(tau, b)
        {
            return Verdict::fail(format!(
                "gamma at {name} is not on a shared face of two maximal cones"
            ));
        }
        let t = &cells[tau].cone;
        if !t.linear_span().contains(v) {
            return Verdict::fail(format!("gamma at {name} is not in lin τ"));
        }
        for i in wall_set(g, t) {
            if linalg::dot_i(v, &g.rd().simple_roots()[i]) != 0 {
                return Verdict::fail(format!("gamma at {name} does not vanish on a{}", i + 1));
            }
        }
        if let Some(w) = hs.gamma.get(&(tau, b, a)) {
            if linalg::add_i(v, w).iter().any(|&x| x != 0) {
                return Verdict::fail(format!("gamma at {name} is not antisymmetric"));
            }
        }
    }
    let n = g.rank();
    for (x, &a) in maximal.iter().enumerate() {
        for &b in &maximal[x + 1..] {
            for tau in 0..cells.len() {
                if !wc.is_face(tau, a) || !wc.is_face(tau, b) {
                    continue;
                }
                let gam = hs.declared(tau, a, b).unwrap_or_else(|| vec![0; n]);
                let t = &cells[tau].cone;
                let lhs = hs.heights[&a].restricted_to(t);
                let shift = linalg::ivec_to_rat(&gam);
                let rhs: Pl = hs.heights[&b]
                    .restricted_to(t)
                    .into_iter()
                    .map(|(r, l)| (r, add_r(&l, &shift)))
                    .collect();
                if !pl_equal(&lhs, &rhs) {
                    return Verdict::fail(format!(
                        "h_{:?} − h_{:?} is not the declared linear function on {:?}",
                        wc.id(a),
                        wc.id(b),
                        wc.id(tau)
                    ));
                }
            }
        }
    }
    for &a in &maximal {
        for &b in &maximal {
            for &c in &maximal {
                if a == b || b == c || a == c {
                    continue;
                }
                for tau in 0..cells.len() {
                    if ![a, b, c].iter().all(|&s| wc.is_face(tau, s)) {
                        continue;
                    }
                    let z = vec![0; n];
                    let ab = hs.declared(tau, a, b).unwrap_or_else(|| z.clone());
                    let bc = hs.declared(tau, b, c).unwrap_or_else(|| z.clone());
                    let ac = hs.declared(tau, a, c).unwrap_or(z);
                    let diff = linalg::sub_i(&linalg::add_i(&ab, &bc), &ac);
                    if cells[tau]
                        .cone
                        .generators()
                        .iter()
                        .any(|v| linalg::dot_i(v, &diff) != 0)
                    {
                        return Verdict::fail(format!(
                            "gamma fails the cocycle identity on {:?}",
                            wc.id(tau)
                        ));
                    }
                }
            }
        }
    }
    Verdict::ok()
}

/// `h` evaluated at a rational point, for callers working with
/// generators of rational cones.
pub fn value_q(h: &HeightFunction, x: &[Rat]) -> Rat {
    h.pieces
        .iter()
        .map(|p| dot_r(x, p))
        .max()
        .expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_frac};

    fn quadrant_height(pieces: Vec<Vec<Rat>>) -> (Group, HeightFunction) {
        let g = Group::named("A1xA1").unwrap();
        let q = g.chamber().clone();
        (g, HeightFunction::new(q, pieces).unwrap())
    }

    #[test]
    fn max_on_quadrant() {
        let (g, h) = quadrant_height(vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
        assert!(validate_height(&g, &h).valid);
        assert_eq!(h.regions().len(), 2);
        let wc = subdivision(&g, &h);
        assert!(validate_complex(&g, &wc).valid);
        assert!(special_fiber_reduced(&g, &h).unwrap());
        let lifted = lifted_cone(&g, &h).unwrap();
        assert_eq!(lifted.dim(), 3);
        assert!(lifted.contains(&[1, 1, 1]));
        assert!(!lifted.contains(&[1, 1, 0]));
    }

    #[test]
    fn half_sum_is_not_reduced() {
        let half = rat_frac(1, 2);
        let (g, h) = quadrant_height(vec![vec![half.clone(), half]]);
        assert!(!special_fiber_reduced(&g, &h).unwrap());
        assert_eq!(nilpotent_witness(&g, &h).unwrap(), Some((vec![1, 0], 2)));
    }

    #[test]
    fn a1_line() {
        let g = Group::named("A1").unwrap();
        let line = Cone::from_generators(1, &[vec![1], vec![-1]]);
        let abs = HeightFunction::new(line.clone(), vec![vec![rat(1)], vec![rat(-1)]]).unwrap();
        assert!(validate_height(&g, &abs).valid);
        assert_eq!(abs.regions().len(), 2);
        let id = HeightFunction::new(line, vec![vec![rat(1)]]).unwrap();
        assert!(!validate_height(&g, &id).valid);
        let ray = Cone::from_generators(1, &[vec![1]]);
        let third = HeightFunction::new(ray.clone(), vec![vec![rat_frac(1, 3)]]).unwrap();
        assert_eq!(nilpotent_witness(&g, &third).unwrap(), Some((vec![1], 3)));
        let ident = HeightFunction::new(ray, vec![vec![rat(1)]]).unwrap();
        assert_eq!(
            lifted_cone(&g, &ident).unwrap(),
            Cone::from_generators(2, &[vec![1, 1], vec![0, 1]])
        );
    }
}
