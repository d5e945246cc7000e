//! Root data, Weyl groups and dominance orders.
//!
//! Weights are integer vectors in a fixed basis of the weight lattice;
//! coroots are integer covectors in the dual basis, so the pairing is the
//! ordinary dot product. Named types use the fundamental-weight basis, in
//! which the coroots are the standard basis covectors.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::linalg::{self, dot_i, Rat};

pub type Weight = Vec<i64>;
/// Row-major integer matrix acting on column vectors.
pub type IMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    pub weight: Weight,
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i64>,
    pub coroot: Vec<i64>,
    /// Coefficients of the coroot in the simple coroots.
    pub coroot_coeffs: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `<rho, coroot>`.
    pub fn coheight(&self) -> i64 {
        self.coroot_coeffs.iter().sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootDatum {
    #[serde(skip_serializing_if = "Option::is_none", rename = "type")]
    name: Option<String>,
    rank: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Vec<i64>>,
    #[serde(skip)]
    cartan: IMatrix,
    /// Half squared lengths of the simple roots, scaled to coprime integers.
    #[serde(skip)]
    root_len: Vec<i64>,
    #[serde(skip)]
    positive: Vec<PositiveRoot>,
    /// det of the Cartan matrix and the adjugate of its transpose, used to
    /// solve for root coordinates in integers.
    #[serde(skip)]
    det: i64,
    #[serde(skip)]
    adj_t: IMatrix,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl Eq for RootDatum {}

fn cartan_of(kind: char, n: usize) -> Result<IMatrix> {
    let bad = || Error::UnknownType(format!("{kind}{n}"));
    let min = match kind {
        'A' => 1,
        'B' | 'C' => 2,
        'D' => 3,
        'G' => 2,
        _ => return Err(bad()),
    };
    if n < min || (kind == 'G' && n != 2) {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    match kind {
        'A' | 'B' | 'C' => {
            for i in 0..n - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            // a[i][j] = <alpha_i, coroot_j>
            if kind == 'B' {
                a[n - 2][n - 1] = -2;
            } else if kind == 'C' {
                a[n - 1][n - 2] = -2;
            }
        }
        'D' => {
            for i in 0..n - 2 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        'G' => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
        _ => unreachable!(),
    }
    Ok(a)
}

/// Standard realization in the fundamental-weight basis: the simple root
/// `alpha_i` has coordinates `<alpha_i, coroot_j>` and the coroots are
/// the standard basis.
fn simply_connected(cartan: &IMatrix) -> (Vec<Weight>, Vec<Vec<i64>>) {
    let n = cartan.len();
    let roots = cartan.clone();
    let coroots = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    (roots, coroots)
}

struct Factor {
    rank: usize,
    roots: Vec<Weight>,
    coroots: Vec<Vec<i64>>,
}

fn parse_factor(tok: &str) -> Result<Factor> {
    let t = tok.trim();
    let unknown = || Error::UnknownType(t.to_string());
    let upper = t.to_ascii_uppercase();
    if let Some(rest) = upper.strip_prefix("GL") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        let mut roots = Vec::new();
        for i in 0..n - 1 {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            roots.push(v);
        }
        return Ok(Factor {
            rank: n,
            coroots: roots.clone(),
            roots,
        });
    }
    if let Some(rest) = upper.strip_prefix('T') {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        return Ok(Factor {
            rank: n,
            roots: vec![],
            coroots: vec![],
        });
    }
    let mut chars = upper.chars();
    let kind = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let c = cartan_of(kind, n).map_err(|_| unknown())?;
    let (roots, coroots) = simply_connected(&c);
    Ok(Factor {
        rank: n,
        roots,
        coroots,
    })
}

impl RootDatum {
    /// Builds a named root datum: `A2`, `B3`, `G2`, `GL3`, `T1`, and
    /// products such as `A1xA1` (also `A1×A1`, `A1*A1`).
    pub fn named(spec: &str) -> Result<RootDatum> {
        let normalized = spec.replace(['×', '*'], "x");
        let factors: Vec<Factor> = normalized
            .split(['x', 'X'])
            .map(parse_factor)
            .collect::<Result<_>>()?;
        let rank: usize = factors.iter().map(|f| f.rank).sum();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut off = 0;
        for f in &factors {
            for (r, c) in f.roots.iter().zip(&f.coroots) {
                let mut rv = vec![0; rank];
                let mut cv = vec![0; rank];
                rv[off..off + f.rank].copy_from_slice(r);
                cv[off..off + f.rank].copy_from_slice(c);
                roots.push(rv);
                coroots.push(cv);
            }
            off += f.rank;
        }
        let mut rd = RootDatum::explicit(rank, roots, coroots)?;
        rd.name = Some(spec.trim().to_string());
        Ok(rd)
    }

    /// Builds and validates a root datum from explicit data.
    pub fn explicit(
        rank: usize,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<RootDatum> {
        if rank == 0 {
            return Err(Error::RankMismatch("rank must be positive".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::RankMismatch(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        if let Some(v) = simple_roots
            .iter()
            .chain(&simple_coroots)
            .find(|v| v.len() != rank)
        {
            return Err(Error::RankMismatch(format!(
                "vector {v:?} does not have length {rank}"
            )));
        }
        let s = simple_roots.len();
        if s > rank {
            return Err(Error::RankMismatch(format!(
                "semisimple rank {s} exceeds rank {rank}"
            )));
        }
        if linalg::rank_i(&simple_roots, rank) != s {
            return Err(Error::RankMismatch(
                "simple roots are linearly dependent".into(),
            ));
        }
        if linalg::rank_i(&simple_coroots, rank) != s {
            return Err(Error::RankMismatch(
                "simple coroots are linearly dependent".into(),
            ));
        }
        let cartan: IMatrix = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| dot_i(&simple_roots[i], &simple_coroots[j]))
                    .collect()
            })
            .collect();
        let root_len = check_finite_type(&cartan)?;
        let (det, adj_t) = adjugate_transpose(&cartan);
        let mut rd = RootDatum {
            name: None,
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            root_len,
            positive: Vec::new(),
            det,
            adj_t,
        };
        rd.positive = rd.enumerate_positive_roots();
        Ok(rd)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &IMatrix {
        &self.cartan
    }

    pub fn root_lengths(&self) -> &[i64] {
        &self.root_len
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    /// Number of roots (positive and negative) whose support lies in `set`.
    pub fn num_roots_in(&self, set: &[usize]) -> usize {
        2 * self
            .positive
            .iter()
            .filter(|r| {
                r.coeffs
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || set.contains(&i))
            })
            .count()
    }

    /// `<x, coroot_i>`.
    pub fn pair(&self, x: &[i64], i: usize) -> i64 {
        dot_i(x, &self.simple_coroots[i])
    }

    pub fn pair_q(&self, x: &[Rat], i: usize) -> Rat {
        linalg::dot_ir(&self.simple_coroots[i], x)
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        (0..self.semisimple_rank()).all(|i| self.pair(x, i) >= 0)
    }

    /// Simple reflection `s_i(x) = x - <x, coroot_i> alpha_i`.
    pub fn reflect(&self, i: usize, x: &[i64]) -> Weight {
        let p = self.pair(x, i);
        x.iter()
            .zip(&self.simple_roots[i])
            .map(|(a, b)| a - p * b)
            .collect()
    }

    /// Dot action `s_i . x = s_i(x + rho) - rho`.
    pub fn reflect_dot(&self, i: usize, x: &[i64]) -> Weight {
        let p = self.pair(x, i) + 1;
        x.iter()
            .zip(&self.simple_roots[i])
            .map(|(a, b)| a - p * b)
            .collect()
    }

    /// The dominant W-conjugate of `x`, with the number of reflections used.
    pub fn dominant_conjugate(&self, x: &[i64]) -> (Weight, usize) {
        let mut y = x.to_vec();
        let mut steps = 0;
        while let Some(i) = (0..self.semisimple_rank()).find(|&i| self.pair(&y, i) < 0) {
            y = self.reflect(i, &y);
            steps += 1;
        }
        (y, steps)
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> IMatrix {
        reflection_matrix(&self.simple_roots[i], &self.simple_coroots[i])
    }

    /// Coordinates of `x` in the simple roots, or `None` if `x` is not in
    /// their rational span.
    pub fn root_coords(&self, x: &[i64]) -> Option<Vec<Rat>> {
        let s = self.semisimple_rank();
        let q: Vec<i64> = (0..s).map(|j| self.pair(x, j)).collect();
        let num: Vec<i64> = (0..s).map(|i| dot_i(&self.adj_t[i], &q)).collect();
        // det * x must equal sum num_i alpha_i.
        for k in 0..self.rank {
            let lhs = self.det * x[k];
            let rhs: i64 = (0..s).map(|i| num[i] * self.simple_roots[i][k]).sum();
            if lhs != rhs {
                return None;
            }
        }
        Some(num.iter().map(|&v| linalg::rat_frac(v, self.det)).collect())
    }

    /// Integral root coordinates of `x`, if `x` is in the root lattice.
    pub fn root_coords_int(&self, x: &[i64]) -> Option<Vec<i64>> {
        let c = self.root_coords(x)?;
        c.iter()
            .map(|q| q.is_integer().then(|| q.to_integer().to_i64().unwrap()))
            .collect()
    }

    /// `nu <=_K lambda`: `lambda - nu` is a nonnegative integer combination
    /// of the simple roots indexed by `k`.
    pub fn dominance_le(&self, nu: &[i64], lambda: &[i64], k: &[usize]) -> bool {
        let diff = linalg::sub_i(lambda, nu);
        match self.root_coords_int(&diff) {
            Some(c) => c
                .iter()
                .enumerate()
                .all(|(i, &ci)| ci >= 0 && (ci == 0 || k.contains(&i))),
            None => false,
        }
    }

    /// A functional that is positive on every positive root: `det` times
    /// the sum of the root coordinates. Used to order weights.
    pub fn height_functional(&self, x: &[i64]) -> i64 {
        let s = self.semisimple_rank();
        let q: Vec<i64> = (0..s).map(|j| self.pair(x, j)).collect();
        (0..s).map(|i| dot_i(&self.adj_t[i], &q)).sum()
    }

    /// The dominant chamber `{x : <x, coroot> >= 0}`.
    pub fn dominant_chamber(&self) -> Cone {
        Cone::from_inequalities(self.rank, &self.simple_coroots, &[])
    }

    /// Primitive integer covector proportional to the sum of the
    /// fundamental coweights indexed by `set` (taken in the span of the
    /// simple coroots). It pairs positively with `alpha_i` for `i` in
    /// `set` and vanishes on the other simple roots.
    pub fn coweight_sum(&self, set: &[usize]) -> Vec<i64> {
        let s = self.semisimple_rank();
        // gamma = sum_k c_k coroot_k with <alpha_j, gamma> = [j in set],
        // i.e. A c = e_set, so c = adj(A) e / det.
        let e: Vec<i64> = (0..s).map(|j| i64::from(set.contains(&j))).collect();
        // adj(A) = adj(A^T)^T
        let c: Vec<i64> = (0..s)
            .map(|k| (0..s).map(|j| self.adj_t[j][k] * e[j]).sum())
            .collect();
        let mut g = vec![0i64; self.rank];
        for (k, ck) in c.iter().enumerate() {
            for (gi, cv) in g.iter_mut().zip(&self.simple_coroots[k]) {
                *gi += ck * cv;
            }
        }
        linalg::primitive_i(&g)
    }

    /// Extends the datum by a trivial torus factor of rank `extra`.
    pub fn with_torus(&self, extra: usize) -> RootDatum {
        let pad = |v: &Vec<i64>| {
            let mut w = v.clone();
            w.extend(std::iter::repeat_n(0, extra));
            w
        };
        let mut rd = RootDatum::explicit(
            self.rank + extra,
            self.simple_roots.iter().map(pad).collect(),
            self.simple_coroots.iter().map(pad).collect(),
        )
        .expect("extending by a torus keeps a valid datum");
        rd.name = self.name.as_ref().map(|n| format!("{n}xT{extra}"));
        rd
    }

    fn enumerate_positive_roots(&self) -> Vec<PositiveRoot> {
        let s = self.semisimple_rank();
        let mut out: Vec<PositiveRoot> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..s {
            let mut e = vec![0; s];
            e[i] = 1;
            let r = PositiveRoot {
                weight: self.simple_roots[i].clone(),
                coeffs: e.clone(),
                coroot: self.simple_coroots[i].clone(),
                coroot_coeffs: e.clone(),
            };
            seen.insert(e, ());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..s {
                let p = self.pair(&r.weight, i);
                if p == 0 {
                    continue;
                }
                let mut coeffs = r.coeffs.clone();
                coeffs[i] -= p;
                if coeffs.iter().any(|&c| c < 0) || seen.contains_key(&coeffs) {
                    continue;
                }
                let q = dot_i(&self.simple_roots[i], &r.coroot);
                let weight = self.reflect(i, &r.weight);
                let coroot: Vec<i64> = r
                    .coroot
                    .iter()
                    .zip(&self.simple_coroots[i])
                    .map(|(a, b)| a - q * b)
                    .collect();
                let mut coroot_coeffs = r.coroot_coeffs.clone();
                coroot_coeffs[i] -= q;
                seen.insert(coeffs.clone(), ());
                queue.push_back(PositiveRoot {
                    weight,
                    coeffs,
                    coroot,
                    coroot_coeffs,
                });
            }
            out.push(r);
        }
        out.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.coeffs.cmp(&a.coeffs))
        });
        out
    }

    /// Weyl group by breadth-first closure of the simple reflections.
    pub fn weyl_group(&self, cap: usize) -> Result<WeylGroup> {
        WeylGroup::generate(self, cap)
    }
}

pub fn reflection_matrix(root: &[i64], coroot: &[i64]) -> IMatrix {
    let n = root.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::from(i == j) - root[i] * coroot[j])
                .collect()
        })
        .collect()
}

/// Checks finite type and returns the integer root lengths `e_j` with
/// `A_ij e_j = A_ji e_i`.
fn check_finite_type(a: &IMatrix) -> Result<Vec<i64>> {
    let s = a.len();
    for i in 0..s {
        if a[i][i] != 2 {
            return Err(Error::NotFiniteType(format!(
                "diagonal entry {} is {}, expected 2",
                i, a[i][i]
            )));
        }
        for j in 0..s {
            if i != j {
                if a[i][j] > 0 {
                    return Err(Error::NotFiniteType(format!(
                        "off-diagonal entry ({i},{j}) is positive"
                    )));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::NotFiniteType(format!(
                        "entries ({i},{j}) and ({j},{i}) are not both zero"
                    )));
                }
            }
        }
    }
    // Symmetrize: e_j / e_i = A_ji / A_ij along edges.
    let mut e: Vec<Option<Rat>> = vec![None; s];
    for start in 0..s {
        if e[start].is_some() {
            continue;
        }
        e[start] = Some(linalg::rat(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..s {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let want = e[i].clone().unwrap() * linalg::rat_frac(a[j][i], a[i][j]);
                match &e[j] {
                    None => {
                        e[j] = Some(want);
                        stack.push(j);
                    }
                    Some(v) if *v != want => {
                        return Err(Error::NotFiniteType(
                            "Cartan matrix is not symmetrizable".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let e: Vec<Rat> = e.into_iter().map(Option::unwrap).collect();
    // Leading principal minors of B_ij = A_ij e_j must be positive.
    for k in 1..=s {
        let rows: Vec<Vec<Rat>> = (0..k)
            .map(|i| (0..k).map(|j| linalg::rat(a[i][j]) * &e[j]).collect())
            .collect();
        if !det_rat(rows).is_positive() {
            return Err(Error::NotFiniteType(
                "symmetrized Cartan matrix is not positive definite".into(),
            ));
        }
    }
    Ok(linalg::primitive(&e))
}

fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = linalg::rat(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let t = &m[c][k] * &f;
                m[r][k] -= t;
            }
        }
    }
    det
}

fn adjugate_transpose(a: &IMatrix) -> (i64, IMatrix) {
    let s = a.len();
    let det = linalg::to_i64(&linalg::det_i(a));
    let at: IMatrix = (0..s).map(|i| (0..s).map(|j| a[j][i]).collect()).collect();
    // adj(M)_ij = (-1)^{i+j} det(M without row j, column i)
    let adj = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let minor: IMatrix = (0..s)
                        .filter(|&r| r != j)
                        .map(|r| (0..s).filter(|&c| c != i).map(|c| at[r][c]).collect())
                        .collect();
                    let d = linalg::to_i64(&linalg::det_i(&minor));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect();
    (det, adj)
}

pub fn mat_mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IMatrix, x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| dot_i(row, x)).collect()
}

/// `f o a` for a covector `f`, i.e. `a^T f`.
pub fn covec_mat(f: &[Rat], a: &IMatrix) -> Vec<Rat> {
    let n = a.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| {
            f.iter()
                .zip(a)
                .fold(Rat::zero(), |acc, (fi, row)| acc + fi * linalg::rat(row[j]))
        })
        .collect()
}

fn identity(n: usize) -> IMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<IMatrix>,
    lengths: Vec<usize>,
    simple: Vec<usize>,
    index: HashMap<IMatrix, usize>,
    /// `mul_simple[w][i]` is the index of `s_i w`.
    mul_simple: Vec<Vec<usize>>,
}

impl WeylGroup {
    fn generate(rd: &RootDatum, cap: usize) -> Result<WeylGroup> {
        let n = rd.rank();
        let gens: Vec<IMatrix> = (0..rd.semisimple_rank())
            .map(|i| rd.simple_reflection_matrix(i))
            .collect();
        let mut elements = vec![identity(n)];
        let mut lengths = vec![0];
        let mut index: HashMap<IMatrix, usize> = HashMap::new();
        index.insert(identity(n), 0);
        let mut frontier = vec![0usize];
        let mut len = 0;
        while !frontier.is_empty() {
            len += 1;
            let mut next: Vec<IMatrix> = Vec::new();
            for &w in &frontier {
                for g in &gens {
                    let m = mat_mul(g, &elements[w]);
                    if !index.contains_key(&m) && !next.contains(&m) {
                        next.push(m);
                    }
                }
            }
            next.sort();
            frontier.clear();
            for m in next {
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                index.insert(m.clone(), elements.len());
                frontier.push(elements.len());
                elements.push(m);
                lengths.push(len);
            }
        }
        let mul_simple = elements
            .iter()
            .map(|w| gens.iter().map(|g| index[&mat_mul(g, w)]).collect())
            .collect();
        let simple = gens.iter().map(|g| index[g]).collect();
        Ok(WeylGroup {
            elements,
            lengths,
            simple,
            index,
            mul_simple,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[IMatrix] {
        &self.elements
    }

    pub fn matrix(&self, w: usize) -> &IMatrix {
        &self.elements[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn simple_reflections(&self) -> &[usize] {
        &self.simple
    }

    pub fn index_of(&self, m: &IMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn apply(&self, w: usize, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.elements[w], x)
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.index[&mat_mul(&self.elements[a], &self.elements[b])]
    }

    pub fn inverse(&self, w: usize) -> usize {
        (0..self.len())
            .find(|&v| self.lengths[v] == self.lengths[w] && self.compose(v, w) == 0)
            .expect("group is closed under inverses")
    }

    /// Index of `s_i w`.
    pub fn left_mul_simple(&self, i: usize, w: usize) -> usize {
        self.mul_simple[w][i]
    }

    /// A reduced word `w = s_{i_1} ... s_{i_k}`, leftmost first.
    pub fn reduced_word(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w;
        while self.lengths[cur] > 0 {
            let i = (0..self.simple.len())
                .find(|&i| self.lengths[self.mul_simple[cur][i]] < self.lengths[cur])
                .expect("nontrivial element has a descent");
            word.push(i);
            cur = self.mul_simple[cur][i];
        }
        word
    }

    /// Elements of the parabolic subgroup generated by `{s_i : i in k}`.
    pub fn parabolic(&self, k: &[usize]) -> Vec<usize> {
        let mut out = vec![0usize];
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut i = 0;
        while i < out.len() {
            let w = out[i];
            for &s in k {
                let v = self.mul_simple[w][s];
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_types() {
        let a1 = RootDatum::named("A1").unwrap();
        assert_eq!(a1.simple_roots(), &[vec![2]]);
        assert_eq!(a1.cartan_matrix(), &vec![vec![2]]);
        let a2 = RootDatum::named("A2").unwrap();
        assert_eq!(a2.cartan_matrix(), &vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.positive_roots().len(), 3);
        assert_eq!(RootDatum::named("B2").unwrap().positive_roots().len(), 4);
        assert_eq!(RootDatum::named("G2").unwrap().positive_roots().len(), 6);
        assert_eq!(RootDatum::named("B3").unwrap().positive_roots().len(), 9);
        assert_eq!(RootDatum::named("D4").unwrap().positive_roots().len(), 12);
        let gl2 = RootDatum::named("GL2").unwrap();
        assert_eq!((gl2.rank(), gl2.semisimple_rank()), (2, 1));
        assert!(matches!(RootDatum::named("E6"), Err(Error::UnknownType(_))));
    }

    #[test]
    fn explicit_rejects_bad_cartan() {
        let r = RootDatum::explicit(1, vec![vec![1]], vec![vec![1]]);
        assert!(matches!(r, Err(Error::NotFiniteType(_))));
        let r = RootDatum::explicit(2, vec![vec![1, 0]], vec![vec![1]]);
        assert!(matches!(r, Err(Error::RankMismatch(_))));
        // Affine A1: positive semidefinite only.
        let r = RootDatum::explicit(
            2,
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![1, 0], vec![0, 1]],
        );
        assert!(r.is_err());
    }

    #[test]
    fn weyl_orders() {
        for (t, n) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A3", 24),
            ("A1xA1", 4),
            ("B3", 48),
        ] {
            let rd = RootDatum::named(t).unwrap();
            assert_eq!(rd.weyl_group(40320).unwrap().len(), n, "{t}");
        }
        let rd = RootDatum::named("A3").unwrap();
        assert_eq!(
            rd.weyl_group(10).unwrap_err(),
            Error::GroupTooLarge { cap: 10 }
        );
    }

    #[test]
    fn dominance_examples() {
        let a1 = RootDatum::named("A1").unwrap();
        assert!(a1.dominance_le(&[0], &[2], &[0]));
        assert!(!a1.dominance_le(&[1], &[2], &[0]));
        assert!(a1.dominance_le(&[3], &[3], &[]));
        assert_eq!(a1.reflect(0, &[1]), vec![-1]);
        let gl2 = RootDatum::named("GL2").unwrap();
        assert!(gl2.dominance_le(&[0, 1], &[1, 0], &[0]));
        assert!(!gl2.dominance_le(&[0, 0], &[1, 0], &[0]));
    }

    #[test]
    fn coweights() {
        let a2 = RootDatum::named("A2").unwrap();
        let g = a2.coweight_sum(&[1]);
        assert_eq!(dot_i(&a2.simple_roots()[0], &g), 0);
        assert!(dot_i(&a2.simple_roots()[1], &g) > 0);
        let g = a2.coweight_sum(&[0, 1]);
        assert_eq!(g, vec![1, 1]);
    }
}
