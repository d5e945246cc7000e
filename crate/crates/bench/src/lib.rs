//! Fixtures shared by the kernel benchmarks.

use std::sync::Arc;

use redvar_core::{AdmissibleCone, Caps, CharRing, Cone, Group, Reps, RingContext};

pub fn group(ty: &str) -> Group {
    Group::named(ty).expect("named type")
}

/// Fresh representation tables, so each run pays for its own caches.
pub fn reps(g: &Group) -> Arc<Reps> {
    Arc::new(Reps::new(g.rd().clone(), Caps::default()))
}

/// The ray through the first fundamental weight, as an admissible cone.
pub fn first_ray(g: &Group) -> AdmissibleCone {
    let mut w = vec![0; g.rank()];
    w[0] = 1;
    AdmissibleCone::new(g, Cone::from_generators(g.rank(), &[w])).expect("dominant ray")
}

/// The truncated character ring of the group itself (σ = Λ_R, full level).
pub fn full_ring(g: &Group, degree: i64) -> CharRing {
    let k: Vec<usize> = (0..g.rd().semisimple_rank()).collect();
    let sigma =
        redvar_core::admissible::reconstruct_sigma(g, g.chamber(), &k).expect("reconstructs");
    let ctx = RingContext {
        sigma,
        k,
        gamma: vec![1; g.rank()],
        degree,
        floor: None,
    };
    CharRing::new(reps(g), ctx).expect("ring")
}
