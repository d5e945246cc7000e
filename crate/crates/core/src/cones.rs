//! Rational polyhedral cones with exact double description.
//!
//! A [`Cone`] is stored in a canonical form so that structural equality is
//! equality of point sets: the lineality space as reduced echelon rows, the
//! extreme rays of the pointed part projected onto the orthogonal complement
//! of the lineality space, the equations of the linear span, and the facet
//! normals projected into the span. Everything is primitive integral and
//! sorted in decreasing lexicographic order.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, dot_big, dot_i, dot_ir, Int, Rat};
use crate::root_datum::{mat_vec, IMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cone {
    ambient: usize,
    dim: usize,
    lineality: Vec<Vec<i64>>,
    rays: Vec<Vec<i64>>,
    equations: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
}

fn sort_desc(v: &mut Vec<Vec<i64>>) {
    v.sort_by(|a, b| b.cmp(a));
    v.dedup();
}

/// Double description: the cone `{x : a.x >= 0 for a in ineqs}` as a
/// lineality basis plus extreme rays of a pointed complement.
fn double_description(ineqs: &[Vec<Int>], n: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let mut lin: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut done: Vec<Vec<Rat>> = Vec::new();
    let mut done_big: Vec<Vec<Int>> = Vec::new();
    for a in ineqs {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !dot_big(a, l).is_zero()) {
            let mut l0 = lin.remove(p);
            let mut v0 = dot_big(a, &l0);
            if v0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                v0 = -v0;
            }
            let project = |x: &Vec<Int>| -> Vec<Int> {
                let ax = dot_big(a, x);
                let y: Vec<Int> = x
                    .iter()
                    .zip(&l0)
                    .map(|(xi, li)| &v0 * xi - &ax * li)
                    .collect();
                linalg::primitive_big(&y)
            };
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(linalg::primitive_big(&l0));
        } else {
            let vals: Vec<Int> = rays.iter().map(|r| dot_big(a, r)).collect();
            let zero_sets: Vec<Vec<usize>> = rays
                .iter()
                .map(|r| {
                    done_big
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| dot_big(c, r).is_zero())
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect();
            let target = n as i64 - lin.len() as i64 - 2;
            let mut next: Vec<Vec<Int>> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, vp) in vals.iter().enumerate() {
                if !vp.is_positive() {
                    continue;
                }
                for (j, vn) in vals.iter().enumerate() {
                    if !vn.is_negative() {
                        continue;
                    }
                    let common: Vec<usize> = zero_sets[i]
                        .iter()
                        .filter(|x| zero_sets[j].contains(x))
                        .copied()
                        .collect();
                    if (common.len() as i64) < target {
                        continue;
                    }
                    let rows: Vec<Vec<Rat>> = common.iter().map(|&c| done[c].clone()).collect();
                    if linalg::rank(&rows, n) as i64 != target {
                        continue;
                    }
                    let y: Vec<Int> = rays[j]
                        .iter()
                        .zip(&rays[i])
                        .map(|(nj, pi)| vp * nj - vn * pi)
                        .collect();
                    next.push(linalg::primitive_big(&y));
                }
            }
            let mut seen = HashSet::new();
            next.retain(|r| seen.insert(r.clone()));
            rays = next;
        }
        done.push(a.iter().map(|x| Rat::from_integer(x.clone())).collect());
        done_big.push(a.clone());
    }
    (lin, rays)
}

fn big_rows(v: &[Vec<i64>]) -> Vec<Vec<Int>> {
    v.iter().map(|r| linalg::ivec_to_big(r)).collect()
}

fn rat_rows_big(v: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    v.iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

fn rat_rows(v: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    v.iter().map(|r| linalg::ivec_to_rat(r)).collect()
}

/// Projects each vector onto the orthogonal complement of `span` and
/// scales it to a primitive integer vector.
fn project_out(vs: &[Vec<Int>], span: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let basis = rat_rows(span);
    vs.iter()
        .map(|v| {
            let vr: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let p = linalg::project_onto(&basis, &vr);
            let d: Vec<Rat> = vr.iter().zip(&p).map(|(a, b)| a - b).collect();
            linalg::primitive(&d)
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

impl Cone {
    pub fn zero(ambient: usize) -> Cone {
        Cone::from_generators(ambient, &[])
    }

    pub fn full(ambient: usize) -> Cone {
        Cone::from_inequalities(ambient, &[], &[])
    }

    /// The cone generated by integer vectors.
    pub fn from_generators(ambient: usize, gens: &[Vec<i64>]) -> Cone {
        let g: Vec<Vec<Int>> = gens
            .iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .map(|v| linalg::primitive_big(&linalg::ivec_to_big(v)))
            .collect();
        Cone::from_big_generators(ambient, &g)
    }

    /// The cone generated by rational vectors.
    pub fn from_generators_q(ambient: usize, gens: &[Vec<Rat>]) -> Cone {
        let g: Vec<Vec<i64>> = gens.iter().map(|v| linalg::primitive(v)).collect();
        Cone::from_generators(ambient, &g)
    }

    fn from_big_generators(n: usize, gens: &[Vec<Int>]) -> Cone {
        // Dual cone: lineality = span^perp, extreme rays = facet normals.
        let (dlin, drays) = double_description(gens, n);
        let equations = linalg::canonical_span(&rat_rows_big(&dlin), n);
        let mut facets = project_out(&drays, &equations);
        sort_desc(&mut facets);
        let mut cons = big_rows(&facets);
        for e in &equations {
            cons.push(linalg::ivec_to_big(e));
            cons.push(e.iter().map(|&x| Int::from(-x)).collect());
        }
        let (plin, prays) = double_description(&cons, n);
        let lineality = linalg::canonical_span(&rat_rows_big(&plin), n);
        let mut rays = project_out(&prays, &lineality);
        sort_desc(&mut rays);
        Cone {
            ambient: n,
            dim: n - equations.len(),
            lineality,
            rays,
            equations,
            facets,
        }
    }

    /// The cone `{x : f.x >= 0 for f in ineqs, e.x = 0 for e in eqs}`.
    pub fn from_inequalities(ambient: usize, ineqs: &[Vec<i64>], eqs: &[Vec<i64>]) -> Cone {
        let mut cons = big_rows(ineqs);
        for e in eqs {
            cons.push(linalg::ivec_to_big(e));
            cons.push(e.iter().map(|&x| Int::from(-x)).collect());
        }
        let (lin, rays) = double_description(&cons, ambient);
        let mut gens = rays;
        for l in lin {
            gens.push(l.iter().map(|x| -x).collect());
            gens.push(l);
        }
        Cone::from_big_generators(ambient, &gens)
    }

    /// Like [`Cone::from_inequalities`] with rational covectors.
    pub fn from_inequalities_q(ambient: usize, ineqs: &[Vec<Rat>], eqs: &[Vec<Rat>]) -> Cone {
        let i: Vec<Vec<i64>> = ineqs.iter().map(|v| linalg::primitive(v)).collect();
        let e: Vec<Vec<i64>> = eqs.iter().map(|v| linalg::primitive(v)).collect();
        Cone::from_inequalities(ambient, &i, &e)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality(&self) -> &[Vec<i64>] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_linear_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    /// Generators: the rays followed by `+-` each lineality basis vector.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    /// Canonical basis of the linear span.
    pub fn span_basis(&self) -> Vec<Vec<i64>> {
        linalg::orth_complement_i(&self.equations, self.ambient)
    }

    /// The linear span as a cone.
    pub fn linear_span(&self) -> Cone {
        Cone::from_inequalities(self.ambient, &[], &self.equations)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| dot_i(e, x) == 0)
            && self.facets.iter().all(|f| dot_i(f, x) >= 0)
    }

    pub fn contains_q(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_ir(e, x).is_zero())
            && self.facets.iter().all(|f| !dot_ir(f, x).is_negative())
    }

    pub fn contains_in_relint(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| dot_i(e, x) == 0)
            && self.facets.iter().all(|f| dot_i(f, x) > 0)
    }

    pub fn contains_in_relint_q(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_ir(e, x).is_zero())
            && self.facets.iter().all(|f| dot_ir(f, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Sum of the rays: a canonical point of the relative interior.
    pub fn relint_point(&self) -> Vec<i64> {
        let mut p = vec![0i64; self.ambient];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient, "ambient dimensions differ");
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    /// Intersection with a hyperplane `f = 0`.
    pub fn intersect_hyperplane(&self, f: &[i64]) -> Cone {
        let mut eqs = self.equations.clone();
        eqs.push(f.to_vec());
        Cone::from_inequalities(self.ambient, &self.facets, &eqs)
    }

    /// Image under a linear map given by an integer matrix.
    pub fn apply_matrix(&self, m: &IMatrix) -> Cone {
        let gens: Vec<Vec<i64>> = self.generators().iter().map(|g| mat_vec(m, g)).collect();
        Cone::from_generators(m.len(), &gens)
    }

    /// The face cut out by a facet normal (or any valid covector).
    pub fn face_of(&self, f: &[i64]) -> Cone {
        let mut gens: Vec<Vec<i64>> = self
            .rays
            .iter()
            .filter(|r| dot_i(f, r) == 0)
            .cloned()
            .collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        Cone::from_generators(self.ambient, &gens)
    }

    /// All faces, including the cone itself and its minimal face (the
    /// lineality space), by decreasing dimension.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        seen.insert(self.clone());
        while let Some(c) = stack.pop() {
            for f in &c.facets {
                let face = c.face_of(f);
                if seen.insert(face.clone()) {
                    stack.push(face);
                }
            }
        }
        let mut out: Vec<Cone> = seen.into_iter().collect();
        out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.cmp(b)));
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.faces().contains(self)
    }

    /// Whether the relative interiors meet. Exact in all cases: when the
    /// relative interiors meet, the relative interior of the intersection
    /// is their intersection.
    pub fn interiors_intersect(&self, other: &Cone) -> bool {
        let c = self.intersect(other);
        let p = c.relint_point();
        self.contains_in_relint(&p) && other.contains_in_relint(&p)
    }

    /// Hilbert basis of the monoid `Z^n ∩ self`: the rays of the pointed
    /// part up to reduction, plus `+-` a basis of the lineality lattice.
    pub fn hilbert_basis(&self, max_dim: usize) -> Result<Vec<Vec<i64>>> {
        if self.dim > max_dim {
            return Err(Error::DimensionTooLarge {
                dim: self.dim as u64,
                bound: max_dim as u64,
            });
        }
        if self.is_pointed() {
            return Ok(pointed_hilbert_basis(self));
        }
        let n = self.ambient;
        let lat = linalg::saturated_lattice(&self.lineality, n);
        let l = lat.len();
        let s = linalg::smith_i(&lat, l, n);
        // Coordinates y = x Q split off the lineality lattice in the
        // first l entries.
        let q = &s.q;
        let qinv = linalg::unimodular_inverse(q);
        let project = |x: &Vec<i64>| -> Vec<i64> {
            (l..n)
                .map(|j| linalg::to_i64(&(0..n).map(|i| Int::from(x[i]) * &q[i][j]).sum::<Int>()))
                .collect()
        };
        let quotient_gens: Vec<Vec<i64>> = self.rays.iter().map(project).collect();
        let quotient = Cone::from_generators(n - l, &quotient_gens);
        let mut out: Vec<Vec<i64>> = pointed_hilbert_basis(&quotient)
            .iter()
            .map(|p| {
                (0..n)
                    .map(|j| {
                        linalg::to_i64(
                            &(0..n - l)
                                .map(|i| Int::from(p[i]) * &qinv[l + i][j])
                                .sum::<Int>(),
                        )
                    })
                    .collect()
            })
            .collect();
        for b in &lat {
            out.push(b.clone());
            out.push(b.iter().map(|x| -x).collect());
        }
        Ok(out)
    }

    /// Hilbert basis of `L ∩ self` for the sublattice `L` spanned by the
    /// independent rows of `lattice`.
    pub fn hilbert_basis_in(&self, lattice: &[Vec<i64>], max_dim: usize) -> Result<Vec<Vec<i64>>> {
        let k = lattice.len();
        let pull = |f: &Vec<i64>| -> Vec<i64> { lattice.iter().map(|b| dot_i(f, b)).collect() };
        let ineqs: Vec<Vec<i64>> = self.facets.iter().map(pull).collect();
        let eqs: Vec<Vec<i64>> = self.equations.iter().map(pull).collect();
        let local = Cone::from_inequalities(k, &ineqs, &eqs);
        let hb = local.hilbert_basis(max_dim)?;
        Ok(hb
            .iter()
            .map(|y| {
                (0..self.ambient)
                    .map(|j| y.iter().zip(lattice).map(|(yi, b)| yi * b[j]).sum())
                    .collect()
            })
            .collect())
    }

    /// Canonical JSON rendering.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "generators": self.generators(),
            "inequalities": self.facets,
            "equations": self.equations,
        })
    }
}

fn pointed_hilbert_basis(cone: &Cone) -> Vec<Vec<i64>> {
    let n = cone.ambient;
    if cone.rays.is_empty() {
        return Vec::new();
    }
    let lat = linalg::saturated_lattice(&cone.rays, n);
    let k = lat.len();
    let rays: Vec<Vec<i64>> = cone
        .rays
        .iter()
        .map(|r| linalg::coords_in_lattice(&lat, r).expect("ray lies in the span lattice"))
        .collect();
    let local = Cone::from_generators(k, &rays);
    let mut candidates: BTreeSet<Vec<i64>> = rays.iter().cloned().collect();
    for subset in combinations(rays.len(), k) {
        let cols: Vec<&Vec<i64>> = subset.iter().map(|&i| &rays[i]).collect();
        let m: Vec<Vec<i64>> = (0..k)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        if linalg::det_i(&m).is_zero() {
            continue;
        }
        for p in parallelepiped_points(&m) {
            if p.iter().any(|&x| x != 0) {
                candidates.insert(p);
            }
        }
    }
    let cand: Vec<Vec<i64>> = candidates.into_iter().collect();
    let mut basis: Vec<Vec<i64>> = cand
        .iter()
        .filter(|x| {
            !cand
                .iter()
                .any(|y| y != *x && local.contains(&linalg::sub_i(x, y)))
        })
        .map(|y| {
            (0..n)
                .map(|j| y.iter().zip(&lat).map(|(yi, b)| yi * b[j]).sum())
                .collect()
        })
        .collect();
    sort_desc(&mut basis);
    basis
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Lattice points `M t` with `t in [0,1)^k` for a nonsingular square `M`
/// (columns are the generators), one per coset of `Z^k / M Z^k`.
fn parallelepiped_points(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = m.len();
    let s = linalg::smith_i(m, k, k);
    let pinv = linalg::unimodular_inverse(&s.p);
    let mrat: Vec<Vec<Rat>> = m.iter().map(|r| linalg::ivec_to_rat(r)).collect();
    let cols: Vec<Vec<Rat>> = (0..k)
        .map(|j| (0..k).map(|i| mrat[i][j].clone()).collect())
        .collect();
    let orders: Vec<i64> = s.diag.iter().map(linalg::to_i64).collect();
    let mut out = Vec::new();
    let mut a = vec![0i64; k];
    loop {
        let c: Vec<Rat> = (0..k)
            .map(|i| Rat::from_integer((0..k).map(|j| &pinv[i][j] * Int::from(a[j])).sum::<Int>()))
            .collect();
        let t = linalg::coords_in_basis(&cols, &c).expect("nonsingular");
        let frac: Vec<Rat> = t.iter().map(|x| x - x.floor()).collect();
        let x: Vec<i64> = (0..k)
            .map(|i| {
                let v = (0..k).fold(Rat::zero(), |acc, j| acc + &mrat[i][j] * &frac[j]);
                linalg::to_i64(&v.to_integer())
            })
            .collect();
        out.push(x);
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            a[i] += 1;
            if a[i] < orders[i] {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Parses a rational entry: an integer, a `[num, den]` pair, or a string
/// such as `"-3/2"` (the Unicode minus sign is accepted).
pub fn parse_rat(v: &serde_json::Value) -> Result<Rat> {
    use serde_json::Value;
    let bad = || Error::BadInput(format!("not a rational number: {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(linalg::rat).ok_or_else(bad),
        Value::Array(p) if p.len() == 2 => {
            let num = p[0].as_i64().ok_or_else(bad)?;
            let den = p[1].as_i64().ok_or_else(bad)?;
            if den == 0 {
                return Err(bad());
            }
            Ok(linalg::rat_frac(num, den))
        }
        Value::String(s) => {
            let s = s.replace('\u{2212}', "-");
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n.trim().to_string(), d.trim().to_string()),
                None => (s.trim().to_string(), "1".to_string()),
            };
            let num: i64 = n.parse().map_err(|_| bad())?;
            let den: i64 = d.parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(linalg::rat_frac(num, den))
        }
        _ => Err(bad()),
    }
}

pub fn parse_rat_vec(v: &serde_json::Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::BadInput(format!("expected a vector, got {v}")))?
        .iter()
        .map(parse_rat)
        .collect()
}

pub fn parse_rat_matrix(v: &serde_json::Value) -> Result<Vec<Vec<Rat>>> {
    v.as_array()
        .ok_or_else(|| Error::BadInput(format!("expected a list of vectors, got {v}")))?
        .iter()
        .map(parse_rat_vec)
        .collect()
}

pub fn parse_int_vec(v: &serde_json::Value) -> Result<Vec<i64>> {
    parse_rat_vec(v)?
        .iter()
        .map(|q| {
            if q.is_integer() {
                Ok(linalg::to_i64(&q.to_integer()))
            } else {
                Err(Error::BadInput(format!("expected integers, got {v}")))
            }
        })
        .collect()
}

pub fn parse_int_matrix(v: &serde_json::Value) -> Result<Vec<Vec<i64>>> {
    v.as_array()
        .ok_or_else(|| Error::BadInput(format!("expected a list of vectors, got {v}")))?
        .iter()
        .map(parse_int_vec)
        .collect()
}

impl Cone {
    /// Reads `{"generators": [...], "inequalities": [...]}` or a bare list
    /// of generators. Declared inequalities are verified against the
    /// computed cone: each must be valid, and together with the span they
    /// must cut out exactly the cone.
    pub fn from_json(v: &serde_json::Value, ambient: usize) -> Result<Cone> {
        let (gens_v, ineqs_v) = match v {
            serde_json::Value::Array(_) => (v.clone(), None),
            serde_json::Value::Object(o) => (
                o.get("generators")
                    .cloned()
                    .ok_or_else(|| Error::BadInput("cone needs \"generators\"".into()))?,
                o.get("inequalities").cloned(),
            ),
            _ => return Err(Error::BadInput(format!("not a cone: {v}"))),
        };
        let gens = parse_rat_matrix(&gens_v)?;
        if let Some(g) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::BadInput(format!(
                "generator of length {} in rank-{ambient} lattice",
                g.len()
            )));
        }
        let cone = Cone::from_generators_q(ambient, &gens);
        if let Some(iv) = ineqs_v {
            let ineqs = parse_rat_matrix(&iv)?;
            if ineqs.iter().any(|f| f.len() != ambient) {
                return Err(Error::BadInput("inequality has the wrong length".into()));
            }
            let declared = Cone::from_inequalities_q(
                ambient,
                &ineqs,
                &cone
                    .equations
                    .iter()
                    .map(|e| linalg::ivec_to_rat(e))
                    .collect::<Vec<_>>(),
            );
            if declared != cone {
                return Err(Error::BadInput(
                    "declared inequalities do not describe the generated cone".into(),
                ));
            }
        }
        Ok(cone)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(g: &[&[i64]]) -> Cone {
        let gens: Vec<Vec<i64>> = g.iter().map(|v| v.to_vec()).collect();
        Cone::from_generators(g[0].len(), &gens)
    }

    #[test]
    fn quadrant() {
        let q = c(&[&[1, 0], &[0, 1]]);
        assert_eq!(q.rays(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(q.facets(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.faces().len(), 4);
        assert_eq!(q.relint_point(), vec![1, 1]);
        assert!(q.contains_in_relint(&q.relint_point()));
    }

    #[test]
    fn line_and_scaling() {
        let l = c(&[&[1, 0], &[-1, 0]]);
        assert_eq!(l.dim(), 1);
        assert!(l.facets().is_empty());
        assert_eq!(l.lineality(), &[vec![1, 0]]);
        assert_eq!(l.faces().len(), 1);
        let r = c(&[&[2, 0]]);
        assert_eq!(r.rays(), &[vec![1, 0]]);
    }

    #[test]
    fn intersections() {
        let q = c(&[&[1, 0], &[0, 1]]);
        let h = Cone::from_inequalities(2, &[vec![1, -1]], &[]);
        assert_eq!(q.intersect(&h), c(&[&[1, 0], &[1, 1]]));
        let third = c(&[&[-1, 0], &[0, -1]]);
        assert!(q.intersect(&third).is_zero());
        assert!(!q.interiors_intersect(&third));
        assert!(q.interiors_intersect(&q));
        let a = c(&[&[1, 0], &[-1, 2]]);
        let b = a.apply_matrix(&vec![vec![-1, 0], vec![0, 1]]);
        assert!(a.interiors_intersect(&b));
    }

    #[test]
    fn hilbert_bases() {
        let hb = c(&[&[1, 0], &[1, 2]]).hilbert_basis(5).unwrap();
        assert_eq!(hb, vec![vec![1, 2], vec![1, 1], vec![1, 0]]);
        assert_eq!(c(&[&[1, 0], &[0, 1]]).hilbert_basis(5).unwrap().len(), 2);
        assert_eq!(c(&[&[1, 0]]).hilbert_basis(5).unwrap(), vec![vec![1, 0]]);
        let half = Cone::from_inequalities(2, &[vec![0, 1]], &[]);
        let hb = half.hilbert_basis(5).unwrap();
        assert_eq!(hb.len(), 3);
        let big = Cone::full(6);
        assert!(matches!(
            big.hilbert_basis(5),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn json_parsing() {
        let v: serde_json::Value = serde_json::json!({"generators": [[1, 0], [[1, 2], 1]], "inequalities": [[0, 1], [2, -1]]});
        let k = Cone::from_json(&v, 2).unwrap();
        assert_eq!(k, c(&[&[1, 0], &[1, 2]]));
        let bad = serde_json::json!({"generators": [[1, 0], [1, 2]], "inequalities": [[0, 1]]});
        assert!(Cone::from_json(&bad, 2).is_err());
        let s = serde_json::json!([["\u{2212}1"], [1]]);
        assert_eq!(Cone::from_json(&s, 1).unwrap().dim(), 1);
    }
}
