//! W-admissible cones and the invariants of the reductive varieties they
//! classify.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::abelian::AbelianGroup;
use crate::complexes::WComplex;
use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{self, dot_i};
use crate::root_datum::reflection_matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AdmissibilityFailure {
    /// The relative interior misses the dominant chamber.
    InteriorMissesChamber,
    /// `w σ ≠ σ` but the relative interiors of `σ` and `w σ` meet.
    OverlappingTranslate { w: usize, word: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub failure: Option<AdmissibilityFailure>,
}

pub fn is_w_admissible(g: &Group, sigma: &Cone) -> AdmissibilityReport {
    let fail = |f| AdmissibilityReport {
        admissible: false,
        failure: Some(f),
    };
    if !g.meets_chamber(sigma) {
        return fail(AdmissibilityFailure::InteriorMissesChamber);
    }
    let weyl = g.weyl();
    for w in 0..weyl.len() {
        let t = g.translate(w, sigma);
        if t != *sigma && sigma.interiors_intersect(&t) {
            return fail(AdmissibilityFailure::OverlappingTranslate {
                w,
                word: weyl.reduced_word(w),
            });
        }
    }
    AdmissibilityReport {
        admissible: true,
        failure: None,
    }
}

/// Simple roots whose walls meet the relative interior of `sigma` without
/// containing `sigma`. A wall containing `sigma` is fixed pointwise and
/// does not contribute (this keeps `K ⊆ lin σ`, and gives `K = ∅` for the
/// zero cone).
pub fn wall_set(g: &Group, sigma: &Cone) -> Vec<usize> {
    (0..g.rd().semisimple_rank())
        .filter(|&i| {
            let coroot = &g.rd().simple_coroots()[i];
            if sigma.generators().iter().all(|x| dot_i(x, coroot) == 0) {
                return false;
            }
            let h = sigma.intersect_hyperplane(coroot);
            sigma.contains_in_relint(&h.relint_point())
        })
        .collect()
}

/// `(C, K)` with `C = σ ∩ Λ⁺_R` and `K` the simple roots whose walls meet
/// the relative interior of `σ`.
pub fn cone_invariants(g: &Group, sigma: &Cone) -> Result<(Cone, Vec<usize>)> {
    let rep = is_w_admissible(g, sigma);
    if !rep.admissible {
        return Err(Error::NotAdmissible(format!("{:?}", rep.failure.unwrap())));
    }
    Ok((sigma.intersect(g.chamber()), wall_set(g, sigma)))
}

/// Checks the two conditions characterizing the pairs `(C, K)`:
/// `lin C ⊇ K`, and `C` is cut out of `lin C ∩ Λ⁺_R` by half-spaces whose
/// covectors are nonpositive on `K`.
///
/// For (2) it suffices to test the facet normals of `C` that are
/// nonpositive on `K`: any admissible family contributes, for each facet
/// of `C` not lying on a wall, a covector agreeing with that facet normal
/// on `lin C ⊇ K`.
pub fn check_pair(g: &Group, c: &Cone, k: &[usize]) -> std::result::Result<(), String> {
    if !g.chamber().contains_cone(c) {
        return Err("C is not contained in the dominant chamber".into());
    }
    let span = c.linear_span();
    for &i in k {
        if !span.contains(&g.rd().simple_roots()[i]) {
            return Err(format!("lin C does not contain a{}", i + 1));
        }
    }
    let roots = g.rd().simple_roots();
    let mut ineqs: Vec<Vec<i64>> = c
        .facets()
        .iter()
        .filter(|f| k.iter().all(|&i| dot_i(f, &roots[i]) <= 0))
        .cloned()
        .collect();
    ineqs.extend(g.rd().simple_coroots().iter().cloned());
    let cut = Cone::from_inequalities(g.rank(), &ineqs, c.equations());
    if cut != *c {
        return Err("C is not cut out by half-spaces nonpositive on K".into());
    }
    Ok(())
}

/// `σ = W_K · C`, verified to be convex and to round-trip to `(C, K)`.
pub fn reconstruct_sigma(g: &Group, c: &Cone, k: &[usize]) -> Result<Cone> {
    check_pair(g, c, k).map_err(Error::BadPair)?;
    let weyl = g.weyl();
    let mut gens = Vec::new();
    for w in weyl.parabolic(k) {
        gens.extend(c.generators().iter().map(|x| weyl.apply(w, x)));
    }
    let sigma = Cone::from_generators(g.rank(), &gens);
    // The union of the W_K-translates is convex iff the hull meets the
    // fundamental domain of W_K exactly in C.
    let walls: Vec<Vec<i64>> = k
        .iter()
        .map(|&i| g.rd().simple_coroots()[i].clone())
        .collect();
    let domain = Cone::from_inequalities(g.rank(), &walls, &[]);
    if sigma.intersect(&domain) != *c {
        return Err(Error::BadPair(
            "the union of the W_K-translates of C is not convex".into(),
        ));
    }
    let (c2, k2) = cone_invariants(g, &sigma).map_err(|e| Error::BadPair(e.to_string()))?;
    if c2 != *c || k2 != k {
        return Err(Error::BadPair("cone_invariants does not round-trip".into()));
    }
    Ok(sigma)
}

/// The combinatorial invariant `(K, Λ', J)` of an isotropy group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub k: Vec<usize>,
    /// Hermite basis of `Λ'`.
    pub lambda_prime: Vec<Vec<i64>>,
    pub j: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleCone {
    sigma: Cone,
    c: Cone,
    k: Vec<usize>,
    lambda_prime: Vec<Vec<i64>>,
    j: Vec<usize>,
}

impl AdmissibleCone {
    pub fn new(g: &Group, sigma: Cone) -> Result<AdmissibleCone> {
        let (c, k) = cone_invariants(g, &sigma)?;
        AdmissibleCone::assemble(g, sigma, c, k)
    }

    /// Invariants of a cone whose admissibility is not re-checked (used
    /// for cells of a validated W-complex).
    pub(crate) fn new_unchecked(g: &Group, sigma: Cone) -> Result<AdmissibleCone> {
        let c = sigma.intersect(g.chamber());
        let k = wall_set(g, &sigma);
        AdmissibleCone::assemble(g, sigma, c, k)
    }

    fn assemble(g: &Group, sigma: Cone, c: Cone, k: Vec<usize>) -> Result<AdmissibleCone> {
        let hb = c.hilbert_basis(g.caps().hilbert_dim)?;
        let lambda_prime = linalg::hnf_rows(&hb, g.rank());
        let gens = c.generators();
        let j = (0..g.rd().semisimple_rank())
            .filter(|&i| gens.iter().all(|x| g.rd().pair(x, i) == 0))
            .collect();
        Ok(AdmissibleCone {
            sigma,
            c,
            k,
            lambda_prime,
            j,
        })
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    /// `C = σ ∩ Λ⁺_R`.
    pub fn c(&self) -> &Cone {
        &self.c
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn lambda_prime(&self) -> &[Vec<i64>] {
        &self.lambda_prime
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn triple(&self) -> Triple {
        Triple {
            k: self.k.clone(),
            lambda_prime: self.lambda_prime.clone(),
            j: self.j.clone(),
        }
    }
}

pub fn isotropy_invariant(ac: &AdmissibleCone) -> Triple {
    ac.triple()
}

/// `rank Λ' + |Φ - Φ_J|`.
pub fn orbit_dimension(g: &Group, t: &Triple) -> usize {
    let all: Vec<usize> = g.simple_indices();
    t.lambda_prime.len() + g.rd().num_roots_in(&all) - g.rd().num_roots_in(&t.j)
}

/// `(Λ ∩ lin σ) / ZK`, the character group of the automorphism group.
pub fn aut_group(g: &Group, ac: &AdmissibleCone) -> AbelianGroup {
    character_group(g, ac.sigma(), ac.k())
}

/// `(Λ ∩ lin σ) / Z{roots}` for an arbitrary root subset.
pub fn character_group(g: &Group, sigma: &Cone, k: &[usize]) -> AbelianGroup {
    let lat = linalg::saturated_lattice(&sigma.generators(), g.rank());
    let rels: Vec<Vec<i64>> = k
        .iter()
        .map(|&i| {
            linalg::coords_in_lattice(&lat, &g.rd().simple_roots()[i])
                .expect("roots of K lie in lin σ")
        })
        .collect();
    AbelianGroup::quotient(lat.len(), &rels)
}

/// The same group computed on the toric side: `Λ ∩ lin σ` modulo the
/// roots of the reflections in `Stab_W(σ)` acting nontrivially on `lin σ`.
pub fn toric_aut_group(g: &Group, sigma: &Cone) -> AbelianGroup {
    let lat = linalg::saturated_lattice(&sigma.generators(), g.rank());
    let span = sigma.span_basis();
    let mut rels = Vec::new();
    for beta in g.rd().positive_roots() {
        let s = reflection_matrix(&beta.weight, &beta.coroot);
        if sigma.apply_matrix(&s) != *sigma {
            continue;
        }
        if span.iter().all(|v| dot_i(v, &beta.coroot) == 0) {
            continue;
        }
        rels.push(
            linalg::coords_in_lattice(&lat, &beta.weight)
                .expect("a root reflected by the stabilizer lies in lin σ"),
        );
    }
    AbelianGroup::quotient(lat.len(), &rels)
}

/// Quasi-affineness test for a triple: `Λ' ∩ Λ⁺` spans `Λ'` and `J` is
/// exactly the set of simple roots whose coroots vanish on `Λ'`.
pub fn quasiaffine_check(g: &Group, t: &Triple) -> Result<bool> {
    let n = g.rank();
    for &i in &t.k {
        if linalg::coords_in_lattice(&t.lambda_prime, &g.rd().simple_roots()[i]).is_none() {
            return Err(Error::InvalidTriple(format!("a{} is not in Λ'", i + 1)));
        }
    }
    let spans = if t.lambda_prime.is_empty() {
        true
    } else {
        let eqs = linalg::orth_complement_i(&t.lambda_prime, n);
        let cone = Cone::from_inequalities(n, g.rd().simple_coroots(), &eqs);
        let hb = cone.hilbert_basis_in(&t.lambda_prime, g.caps().hilbert_dim)?;
        linalg::hnf_rows(&hb, n) == linalg::hnf_rows(&t.lambda_prime, n)
    };
    let expected_j: Vec<usize> = (0..g.rd().semisimple_rank())
        .filter(|&i| t.lambda_prime.iter().all(|v| g.rd().pair(v, i) == 0))
        .collect();
    Ok(spans && expected_j == t.j)
}

/// Generators of the pointwise fixer `W_J` and the stabilizer `W_J × W_K`
/// of the fixed points, as simple-root index sets.
pub fn fixedpoint_groups(t: &Triple) -> (Vec<usize>, Vec<usize>) {
    let mut both: BTreeSet<usize> = t.j.iter().copied().collect();
    both.extend(t.k.iter().copied());
    (t.j.clone(), both.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    /// The canonical representative: the face whose relative interior
    /// meets the dominant chamber.
    pub face: Cone,
    pub triple: Triple,
    pub cone_dim: usize,
    pub orbit_dim: usize,
    pub aut: AbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPoset {
    pub classes: Vec<OrbitClass>,
    /// Pairs `(a, b)` with class `a` strictly below class `b`.
    pub order: Vec<(usize, usize)>,
    pub covers: Vec<(usize, usize)>,
}

/// W-orbits of faces of the translates of `σ`, one canonical face each.
pub fn orbit_poset(g: &Group, ac: &AdmissibleCone) -> Result<OrbitPoset> {
    let faces = ac.sigma().faces();
    let reps: Vec<Cone> = faces.into_iter().filter(|f| g.meets_chamber(f)).collect();
    let mut classes = Vec::new();
    for f in &reps {
        let fac = AdmissibleCone::new(g, f.clone())?;
        let triple = fac.triple();
        classes.push(OrbitClass {
            face: f.clone(),
            cone_dim: f.dim(),
            orbit_dim: orbit_dimension(g, &triple),
            aut: aut_group(g, &fac),
            triple,
        });
    }
    // Canonical representatives are ordered by the face relation itself.
    let face_sets: Vec<BTreeSet<Cone>> = reps
        .iter()
        .map(|f| f.faces().into_iter().collect())
        .collect();
    let mut order = Vec::new();
    for (a, fa) in reps.iter().enumerate() {
        for b in 0..reps.len() {
            if a != b && face_sets[b].contains(fa) {
                order.push((a, b));
            }
        }
    }
    let covers = order
        .iter()
        .filter(|&&(a, b)| {
            !order
                .iter()
                .any(|&(x, y)| x == a && order.contains(&(y, b)))
        })
        .copied()
        .collect();
    Ok(OrbitPoset {
        classes,
        order,
        covers,
    })
}

/// The elementary W-complex of all translates of `σ` and their faces.
pub fn toric_side(g: &Group, ac: &AdmissibleCone) -> WComplex {
    WComplex::from_cones(g, std::slice::from_ref(ac.sigma()))
}

/// Membership in the monoid generated by `gens` inside a pointed cone.
fn monoid_contains(
    gens: &[Vec<i64>],
    cone: &Cone,
    x: &[i64],
    memo: &mut HashMap<Vec<i64>, bool>,
) -> bool {
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    if let Some(&b) = memo.get(x) {
        return b;
    }
    let mut found = false;
    for g in gens {
        let y = linalg::sub_i(x, g);
        if cone.contains(&y) && monoid_contains(gens, cone, &y, memo) {
            found = true;
            break;
        }
    }
    memo.insert(x.to_vec(), found);
    found
}

fn saturated_against(gens: &[Vec<i64>], hb: &[Vec<i64>], cone: &Cone) -> bool {
    let mut memo = HashMap::new();
    hb.iter().all(|h| monoid_contains(gens, cone, h, &mut memo))
}

fn monoid_cone(n: usize, gens: &[Vec<i64>]) -> Result<Cone> {
    let cone = Cone::from_generators(n, gens);
    if !cone.is_pointed() {
        return Err(Error::BadInput(
            "saturation test needs a monoid whose cone is pointed".into(),
        ));
    }
    Ok(cone)
}

/// Whether the monoid generated by `gens` equals `cone(gens) ∩ Z^n`.
pub fn is_saturated_in_lattice(n: usize, gens: &[Vec<i64>], max_dim: usize) -> Result<bool> {
    let cone = monoid_cone(n, gens)?;
    let hb = cone.hilbert_basis(max_dim)?;
    Ok(saturated_against(gens, &hb, &cone))
}

/// Whether the monoid generated by `gens` equals `cone(gens) ∩ L` for the
/// lattice `L` it generates.
pub fn is_saturated_in_span(n: usize, gens: &[Vec<i64>], max_dim: usize) -> Result<bool> {
    let cone = monoid_cone(n, gens)?;
    let lat = linalg::hnf_rows(gens, n);
    if lat.is_empty() {
        return Ok(true);
    }
    let hb = cone.hilbert_basis_in(&lat, max_dim)?;
    Ok(saturated_against(gens, &hb, &cone))
}
