use std::collections::HashMap;

use proptest::prelude::*;

use redvar_core::linalg::{rat, Rat};
use redvar_core::{Cone, Error};

fn quadrant() -> Cone {
    Cone::from_generators(2, &[vec![1, 0], vec![0, 1]])
}

#[test]
fn examples() {
    assert_eq!(quadrant().faces().len(), 4);
    let mut hb = Cone::from_generators(2, &[vec![1, 0], vec![1, 2]])
        .hilbert_basis(6)
        .unwrap();
    hb.sort();
    assert_eq!(hb, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    let ray = Cone::from_generators(2, &[vec![1, 0]]);
    let other = Cone::from_generators(2, &[vec![0, 1]]);
    assert!(!ray.interiors_intersect(&other));
    assert!(quadrant().interiors_intersect(&quadrant()));
    assert!(matches!(
        Cone::full(8).hilbert_basis(6),
        Err(Error::DimensionTooLarge { dim: 8, bound: 6 })
    ));
    let half = Cone::from_inequalities(2, &[vec![1, 0]], &[]);
    assert_eq!((half.dim(), half.lineality_dim()), (2, 1));
    assert!(Cone::zero(3).is_zero());
}

/// Membership by brute force: Carathéodory says x lies in the cone iff
/// it is a nonnegative combination of some linearly independent subset
/// of the generators.
fn in_cone_oracle(gens: &[Vec<i64>], x: &[i64]) -> bool {
    let n = x.len();
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    let m = gens.len();
    for mask in 1u32..(1 << m) {
        let cols: Vec<&Vec<i64>> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &gens[i])
            .collect();
        if cols.len() > n {
            continue;
        }
        if let Some(coef) = solve(&cols, x) {
            if coef.iter().all(|c| *c >= rat(0)) {
                return true;
            }
        }
    }
    false
}

/// Solves Σ c_j cols[j] = x when the columns are independent.
fn solve(cols: &[&Vec<i64>], x: &[i64]) -> Option<Vec<Rat>> {
    let n = x.len();
    let k = cols.len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| rat(c[r])).collect();
            row.push(rat(x[r]));
            row
        })
        .collect();
    let mut row = 0;
    for col in 0..k {
        let p = (row..n).find(|&r| a[r][col] != rat(0))?;
        a.swap(row, p);
        let pivot = a[row][col].clone();
        for v in a[row].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..n {
            if r != row && a[r][col] != rat(0) {
                let f = a[r][col].clone();
                for c in 0..=k {
                    let d = &f * &a[row][c];
                    a[r][c] -= d;
                }
            }
        }
        row += 1;
    }
    if a[k..].iter().any(|r| r[k] != rat(0)) {
        return None;
    }
    Some((0..k).map(|i| a[i][k].clone()).collect())
}

fn box_points(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-r..=r).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn generated(hb: &[Vec<i64>], cone: &Cone, p: &[i64], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
    if p.iter().all(|&c| c == 0) {
        return true;
    }
    if let Some(&b) = memo.get(p) {
        return b;
    }
    let ok = hb.iter().any(|h| {
        let rest: Vec<i64> = p.iter().zip(h).map(|(a, b)| a - b).collect();
        cone.contains(&rest) && generated(hb, cone, &rest, memo)
    });
    memo.insert(p.to_vec(), ok);
    ok
}

fn gens(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn representations_round_trip(g in gens(3)) {
        let c = Cone::from_generators(3, &g);
        let h = Cone::from_inequalities(3, c.facets(), c.equations());
        prop_assert_eq!(&h, &c);
        prop_assert_eq!(Cone::from_generators(3, &c.generators()), c);
    }

    #[test]
    fn membership_matches_brute_force(g in gens(3), x in prop::collection::vec(-4i64..=4, 3)) {
        let c = Cone::from_generators(3, &g);
        prop_assert_eq!(c.contains(&x), in_cone_oracle(&g, &x));
    }

    #[test]
    fn hilbert_basis_is_irreducible_and_generating(g in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..4)) {
        let c = Cone::from_generators(2, &g);
        prop_assume!(c.is_pointed());
        let hb = c.hilbert_basis(6).unwrap();
        let pts: Vec<Vec<i64>> = box_points(2, 6).into_iter().filter(|p| c.contains(p)).collect();
        for h in &hb {
            prop_assert!(c.contains(h));
            for y in &pts {
                let rest: Vec<i64> = h.iter().zip(y).map(|(a, b)| a - b).collect();
                let trivial = y.iter().all(|&v| v == 0) || rest.iter().all(|&v| v == 0);
                prop_assert!(trivial || !c.contains(&rest), "{:?} = {:?} + {:?}", h, y, rest);
            }
        }
        let mut memo = HashMap::new();
        for p in &pts {
            prop_assert!(generated(&hb, &c, p, &mut memo), "{:?} not generated by {:?}", p, hb);
        }
    }

    #[test]
    fn interiors_intersect_is_symmetric_and_reflexive(a in gens(2), b in gens(2)) {
        let a = Cone::from_generators(2, &a);
        let b = Cone::from_generators(2, &b);
        prop_assert_eq!(a.interiors_intersect(&b), b.interiors_intersect(&a));
        prop_assert!(a.interiors_intersect(&a));
    }

    #[test]
    fn faces_are_faces(g in gens(3)) {
        let c = Cone::from_generators(3, &g);
        for f in c.faces() {
            prop_assert!(f.is_face_of(&c));
            prop_assert!(c.contains_cone(&f));
        }
    }
}
