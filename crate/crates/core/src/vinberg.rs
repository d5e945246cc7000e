//! Fibers of the Vinberg family over `A^Π` at the character level.
//!
//! The base coordinates are `s_α = e^α`, `α ∈ Π`. A point with zero
//! pattern `Z` is the limit of the one-parameter subgroup
//! `γ = Σ_{α∈Z} ω̌_α`, so the fiber is `gr_γ k[G]`: its level is the set of
//! simple roots orthogonal to `γ`, namely `Π ∖ Z`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::admissible::{reconstruct_sigma, wall_set};
use crate::algebra::{dominant_points, RingContext};
use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{self, dot_i};
use crate::repthy::{Reps, WeightMap};
use crate::root_datum::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VinbergFiber {
    /// Simple roots whose coordinate vanishes.
    pub zeros: Vec<usize>,
    /// Level of the product rule on the fiber.
    pub level: Vec<usize>,
    /// A dominant one-parameter subgroup degenerating to this fiber.
    pub one_parameter_subgroup: Vec<i64>,
    pub sigma: Cone,
    pub context: RingContext,
}

fn complement(g: &Group, set: &[usize]) -> Vec<usize> {
    (0..g.rd().semisimple_rank())
        .filter(|i| !set.contains(i))
        .collect()
}

fn check_roots(g: &Group, set: &[usize]) -> Result<()> {
    match set.iter().find(|&&i| i >= g.rd().semisimple_rank()) {
        Some(i) => Err(Error::BadInput(format!("no simple root a{}", i + 1))),
        None => Ok(()),
    }
}

/// The fiber at a point with zero pattern `zeros`, truncated at `degree`
/// for the grading `grading` (default: the sum of all fundamental
/// coweights).
pub fn vinberg_fiber(
    g: &Group,
    zeros: &[usize],
    grading: Option<Vec<i64>>,
    degree: i64,
) -> Result<VinbergFiber> {
    check_roots(g, zeros)?;
    let zeros: Vec<usize> = zeros
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let level = complement(g, &zeros);
    let sigma = reconstruct_sigma(g, g.chamber(), &level)?;
    let gamma = grading.unwrap_or_else(|| g.rd().coweight_sum(&g.simple_indices()));
    if gamma.len() != g.rank() {
        return Err(Error::RankMismatch(
            "grading covector has the wrong length".into(),
        ));
    }
    Ok(VinbergFiber {
        one_parameter_subgroup: g.rd().coweight_sum(&zeros),
        context: RingContext {
            sigma: sigma.clone(),
            k: level.clone(),
            gamma,
            degree,
            floor: None,
        },
        zeros,
        level,
        sigma,
    })
}

/// Fiber of `X * V` over a point with zero pattern `zeros`, for `X` with
/// weight cone `sigma`: `gr_γ k[X]`, of level `K_σ ∖ Z`.
pub fn x_star_v_fiber(
    g: &Group,
    sigma: &Cone,
    zeros: &[usize],
    grading: Vec<i64>,
    degree: i64,
) -> Result<RingContext> {
    check_roots(g, zeros)?;
    let rep = crate::admissible::is_w_admissible(g, sigma);
    if !rep.admissible {
        return Err(Error::NotAdmissible(format!("{:?}", rep.failure)));
    }
    let k = wall_set(g, sigma)
        .into_iter()
        .filter(|i| !zeros.contains(i))
        .collect();
    Ok(RingContext {
        sigma: sigma.clone(),
        k,
        gamma: grading,
        degree,
        floor: None,
    })
}

/// `gr_γ` of a character ring context: the level shrinks to the roots
/// orthogonal to `γ`.
pub fn associated_graded(g: &Group, ctx: &RingContext, gamma: &[i64]) -> Result<RingContext> {
    let roots = g.rd().simple_roots();
    if roots.iter().any(|a| dot_i(a, gamma) < 0) {
        return Err(Error::BadInput(
            "the one-parameter subgroup is not dominant".into(),
        ));
    }
    let mut out = ctx.clone();
    out.k.retain(|&i| dot_i(&roots[i], gamma) == 0);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VinbergSupport {
    /// Pairs `(μ, λ)` with `λ` dominant and `λ ≤_Π μ`, both of degree at
    /// most `N`.
    pub pairs: Vec<(Weight, Weight)>,
    pub closed: bool,
    /// A product leaving the support, if any.
    pub counterexample: Option<((Weight, Weight), (Weight, Weight), Weight)>,
}

fn in_ring(g: &Group, mu: &[i64], lambda: &[i64]) -> bool {
    g.rd().is_dominant(lambda) && g.rd().dominance_le(lambda, mu, &g.simple_indices())
}

/// The bigraded support of the Vinberg ring `R` in degrees `≤ N` and its
/// closure under multiplication.
pub fn vinberg_ring_support(
    g: &Group,
    reps: &Reps,
    gamma: &[i64],
    n: i64,
) -> Result<VinbergSupport> {
    let lambdas = dominant_points(g, g.chamber(), gamma, n)?;
    let roots = g.rd().simple_roots();
    if roots.iter().any(|a| dot_i(a, gamma) <= 0) {
        return Err(Error::BadInput(
            "the grading must be positive on the simple roots".into(),
        ));
    }
    let mut pairs = Vec::new();
    for lambda in &lambdas {
        let mut seen = BTreeSet::from([lambda.clone()]);
        let mut stack = vec![lambda.clone()];
        while let Some(mu) = stack.pop() {
            for a in roots {
                let next = linalg::add_i(&mu, a);
                if dot_i(&next, gamma) <= n && seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        pairs.extend(seen.into_iter().map(|mu| (mu, lambda.clone())));
    }
    pairs.sort();
    let mut counterexample = None;
    'outer: for (i, p) in pairs.iter().enumerate() {
        for q in &pairs[i..] {
            let support: WeightMap = reps.tensor_decompose(&p.1, &q.1)?;
            let top = linalg::add_i(&p.1, &q.1);
            let mu = linalg::add_i(&p.0, &q.0);
            for nu in support.keys() {
                if g.rd().dominance_le(nu, &top, &g.simple_indices()) && !in_ring(g, &mu, nu) {
                    counterexample = Some((p.clone(), q.clone(), nu.clone()));
                    break 'outer;
                }
            }
        }
    }
    Ok(VinbergSupport {
        closed: counterexample.is_none(),
        pairs,
        counterexample,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckRow {
    pub zeros: Vec<usize>,
    /// Explicit fiber products agree with the level `K = Z`.
    pub zero_pattern_level: bool,
    /// Explicit fiber products agree with the level `K = Π ∖ Z`.
    pub orthogonal_level: bool,
}

/// Compares the two readings of the fiber level against products computed
/// in the Vinberg ring itself: on the fiber, `e^{λ₁} f₁ · e^{λ₂} f₂` has
/// `ν`-component `e^{λ₁+λ₂−ν} · e^ν f_ν`, and the monomial
/// `e^{λ₁+λ₂−ν} = ∏ s_α^{c_α}` survives iff `c_α = 0` wherever `s_α = 0`.
pub fn parametrization_crosscheck(g: &Group, reps: &Reps, n: i64) -> Result<Vec<CrossCheckRow>> {
    let r = g.rd().semisimple_rank();
    let gamma = g.rd().coweight_sum(&g.simple_indices());
    let lambdas = dominant_points(g, g.chamber(), &gamma, n)?;
    let mut rows = Vec::new();
    for mask in 0u32..(1 << r) {
        let zeros: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let others = complement(g, &zeros);
        let (mut lit, mut orth) = (true, true);
        for a in &lambdas {
            for b in &lambdas {
                let full = reps.tensor_decompose(a, b)?;
                let top = linalg::add_i(a, b);
                let explicit: WeightMap = full
                    .iter()
                    .filter(|(nu, _)| {
                        let c = g
                            .rd()
                            .root_coords_int(&linalg::sub_i(&top, nu))
                            .expect("in the root lattice");
                        c.iter()
                            .enumerate()
                            .all(|(i, &ci)| ci == 0 || !zeros.contains(&i))
                    })
                    .map(|(nu, &m)| (nu.clone(), m))
                    .collect();
                lit &= explicit == reps.product_support_level(a, b, &zeros)?;
                orth &= explicit == reps.product_support_level(a, b, &others)?;
            }
        }
        rows.push(CrossCheckRow {
            zeros,
            zero_pattern_level: lit,
            orthogonal_level: orth,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::cone_invariants;

    #[test]
    fn a1_fibers() {
        let g = Group::named("A1").unwrap();
        let generic = vinberg_fiber(&g, &[], None, 4).unwrap();
        assert_eq!(generic.level, vec![0]);
        assert_eq!(
            generic.sigma,
            Cone::from_generators(1, &[vec![1], vec![-1]])
        );
        let origin = vinberg_fiber(&g, &[0], None, 4).unwrap();
        assert!(origin.level.is_empty());
        assert_eq!(origin.sigma, *g.chamber());
        assert_eq!(origin.one_parameter_subgroup, vec![1]);
        assert_eq!(
            cone_invariants(&g, &origin.sigma).unwrap(),
            (g.chamber().clone(), vec![])
        );
    }

    #[test]
    fn a1_support() {
        let g = Group::named("A1").unwrap();
        let reps = Reps::new(g.rd().clone(), *g.caps());
        let s = vinberg_ring_support(&g, &reps, &[1], 4).unwrap();
        assert!(s.closed);
        assert!(s.pairs.contains(&(vec![1], vec![1])));
        assert!(!s.pairs.contains(&(vec![1], vec![0])));
        assert!(s.pairs.contains(&(vec![2], vec![0])));
    }

    #[test]
    fn crosscheck_prefers_orthogonal_level() {
        let g = Group::named("A1").unwrap();
        let reps = Reps::new(g.rd().clone(), *g.caps());
        let rows = parametrization_crosscheck(&g, &reps, 3).unwrap();
        assert!(rows
            .iter()
            .all(|r| r.orthogonal_level && !r.zero_pattern_level));
    }
}
