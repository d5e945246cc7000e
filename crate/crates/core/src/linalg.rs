//! Exact linear algebra over `Q` and `Z`.
//!
//! Everything here works on arbitrary-precision integers and rationals.
//! Public vectors that leave the crate are `Vec<i64>`; conversion back from
//! big integers is checked and panics only if a coordinate genuinely does
//! not fit, which does not happen at the sizes this crate targets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(x: i64) -> Int {
    BigInt::from(x)
}

pub fn rat(x: i64) -> Rat {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_i64(x: &Int) -> i64 {
    x.to_i64().expect("integer coordinate does not fit in i64")
}

pub fn ivec_to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn ivec_to_big(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn bigvec_to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(to_i64).collect()
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_mul(*y).expect("dot product overflow"))
        .fold(0i64, |acc, t| {
            acc.checked_add(t).expect("dot product overflow")
        })
}

pub fn dot_r(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_ir(a: &[i64], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + y * rat(*x))
}

pub fn dot_big(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_i(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero_i(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction. The zero vector maps to the zero vector.
pub fn primitive(v: &[Rat]) -> Vec<i64> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    bigvec_to_i64(&primitive_big(&ints))
}

pub fn primitive_big(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn primitive_i(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Reduced row echelon form. Returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn rank_i(rows: &[Vec<i64>], ncols: usize) -> usize {
    let r: Vec<Vec<Rat>> = rows.iter().map(|v| ivec_to_rat(v)).collect();
    rank(&r, ncols)
}

/// Basis of `{x : rows . x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Canonical integer basis of the rational span of `vs`: the rows of the
/// reduced echelon form, each scaled to a primitive integer vector.
pub fn canonical_span(vs: &[Vec<Rat>], ncols: usize) -> Vec<Vec<i64>> {
    rref(vs, ncols).0.iter().map(|r| primitive(r)).collect()
}

pub fn canonical_span_i(vs: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let r: Vec<Vec<Rat>> = vs.iter().map(|v| ivec_to_rat(v)).collect();
    canonical_span(&r, ncols)
}

/// Canonical integer basis of the orthogonal complement (standard dot
/// product) of the span of `vs`.
pub fn orth_complement(vs: &[Vec<Rat>], ncols: usize) -> Vec<Vec<i64>> {
    let ns = nullspace(vs, ncols);
    canonical_span(&ns, ncols)
}

pub fn orth_complement_i(vs: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let r: Vec<Vec<Rat>> = vs.iter().map(|v| ivec_to_rat(v)).collect();
    orth_complement(&r, ncols)
}

/// Solves `x = sum_i c_i basis_i`. Returns `None` if `x` is not in the span.
/// `basis` must be linearly independent.
pub fn coords_in_basis(basis: &[Vec<Rat>], x: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let n = x.len();
    // Augmented system: columns are basis vectors, rows are coordinates.
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rat> = basis.iter().map(|b| b[j].clone()).collect();
            r.push(x[j].clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&rows, k + 1);
    rows.clear();
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        c[p] = m[i][k].clone();
    }
    Some(c)
}

/// Orthogonal projection of `x` onto the span of `basis` (standard dot
/// product). `basis` must be linearly independent.
pub fn project_onto(basis: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    let n = x.len();
    if basis.is_empty() {
        return vec![Rat::zero(); n];
    }
    let k = basis.len();
    // Solve Gram * c = B^T x.
    let mut rows: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            let mut r: Vec<Rat> = (0..k).map(|j| dot_r(&basis[i], &basis[j])).collect();
            r.push(dot_r(&basis[i], x));
            r
        })
        .collect();
    let (m, pivots) = rref(&rows, k + 1);
    rows.clear();
    let mut c = vec![Rat::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        c[p] = m[i][k].clone();
    }
    let mut out = vec![Rat::zero(); n];
    for (ci, b) in c.iter().zip(basis) {
        for j in 0..n {
            out[j] += ci * &b[j];
        }
    }
    out
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
pub fn det_i(m: &[Vec<i64>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.iter().map(|r| ivec_to_big(r)).collect();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Smith normal form `P * A * Q = D` over `Z`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Diagonal entries, all positive, each dividing the next; length = rank.
    pub diag: Vec<Int>,
    pub p: Vec<Vec<Int>>,
    pub q: Vec<Vec<Int>>,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

pub fn smith_i(a: &[Vec<i64>], rows: usize, cols: usize) -> Smith {
    let big: Vec<Vec<Int>> = a.iter().map(|r| ivec_to_big(r)).collect();
    smith(&big, rows, cols)
}

pub fn smith(a: &[Vec<Int>], rows: usize, cols: usize) -> Smith {
    let mut m: Vec<Vec<Int>> = a.to_vec();
    debug_assert!(m.len() == rows && m.iter().all(|r| r.len() == cols));
    let mut p = identity_big(rows);
    let mut q = identity_big(cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        p.swap(t, bi);
        for r in m.iter_mut() {
            r.swap(t, bj);
        }
        for r in q.iter_mut() {
            r.swap(t, bj);
        }
        loop {
            let mut changed = false;
            // Clear column t.
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let f = m[i][t].div_floor(&m[t][t]);
                row_axpy(&mut m, i, t, &f);
                row_axpy(&mut p, i, t, &f);
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    p.swap(t, i);
                    changed = true;
                }
            }
            // Clear row t.
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let f = m[t][j].div_floor(&m[t][t]);
                col_axpy(&mut m, j, t, &f);
                col_axpy(&mut q, j, t, &f);
                if !m[t][j].is_zero() {
                    for r in m.iter_mut() {
                        r.swap(t, j);
                    }
                    for r in q.iter_mut() {
                        r.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let mut bad = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m[i][j].is_multiple_of(&m[t][t]) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    // row_t += row_i, then continue reducing.
                    let neg_one = -Int::one();
                    row_axpy(&mut m, t, i, &neg_one);
                    row_axpy(&mut p, t, i, &neg_one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in p[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag.push(m[t][t].clone());
        t += 1;
    }
    Smith {
        diag,
        p,
        q,
        rows,
        cols,
    }
}

fn identity_big(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

/// row_i -= f * row_src
fn row_axpy(m: &mut [Vec<Int>], i: usize, src: usize, f: &Int) {
    let s = m[src].clone();
    for (x, y) in m[i].iter_mut().zip(s) {
        *x -= f * y;
    }
}

/// col_j -= f * col_src
fn col_axpy(m: &mut [Vec<Int>], j: usize, src: usize, f: &Int) {
    for r in m.iter_mut() {
        let v = &r[src] * f;
        r[j] -= v;
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = m.len();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rat> = m[i].iter().map(|x| Rat::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (e, _) = rref(&rows, 2 * n);
    e.iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "matrix is not unimodular");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Hermite normal form of the row lattice spanned by `rows`: a canonical
/// basis (nonzero rows, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`).
pub fn hnf_rows(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<Int>> = rows.iter().map(|r| ivec_to_big(r)).collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            // Pick the smallest nonzero |entry| in column c among rows r..
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if !m[i][c].is_zero() && best.is_none_or(|b| m[i][c].abs() < m[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let f = m[i][c].div_floor(&m[r][c]);
                    row_axpy(&mut m, i, r, &f);
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let f = m[i][c].div_floor(&m[r][c]);
                if !f.is_zero() {
                    row_axpy(&mut m, i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    m.truncate(r);
    m.iter().map(|row| bigvec_to_i64(row)).collect()
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}` in Hermite form.
pub fn int_kernel(a: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let s = smith_i(a, a.len(), ncols);
    let r = s.rank();
    let cols: Vec<Vec<i64>> = (r..ncols)
        .map(|j| (0..ncols).map(|i| to_i64(&s.q[i][j])).collect())
        .collect();
    hnf_rows(&cols, ncols)
}

/// `Z^n` intersected with the rational span of `vs`, as a Hermite basis.
pub fn saturated_lattice(vs: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let eqs = orth_complement_i(vs, ncols);
    int_kernel(&eqs, ncols)
}

/// Integer coordinates of `x` in the lattice basis `basis` (rows).
pub fn coords_in_lattice(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let b: Vec<Vec<Rat>> = basis.iter().map(|v| ivec_to_rat(v)).collect();
    let c = coords_in_basis(&b, &ivec_to_rat(x))?;
    if c.iter().all(|q| q.is_integer()) {
        Some(c.iter().map(|q| to_i64(&q.to_integer())).collect())
    } else {
        None
    }
}

/// Rational vector to the smallest positive multiple that is integral.
pub fn clear_denominators(v: &[Rat]) -> (Vec<Int>, Int) {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    (v.iter().map(|x| (x * &l).to_integer()).collect(), l)
}

pub fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrices() {
        let s = smith_i(&[vec![2]], 1, 1);
        assert_eq!(s.diag, vec![int(2)]);
        let s = smith_i(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3, 3);
        assert_eq!(s.diag, vec![int(2), int(6), int(12)]);
        // P A Q = D
        let a = [vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        for i in 0..3 {
            for j in 0..3 {
                let mut v = Int::zero();
                for k in 0..3 {
                    for l in 0..3 {
                        v += &s.p[i][k] * int(a[k][l]) * &s.q[l][j];
                    }
                }
                let want = if i == j {
                    s.diag[i].clone()
                } else {
                    Int::zero()
                };
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn kernel_and_hnf() {
        let k = int_kernel(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        assert_eq!(
            hnf_rows(&[vec![2, 0], vec![0, 2], vec![1, 1]], 2),
            vec![vec![1, 1], vec![0, 2]]
        );
        assert_eq!(saturated_lattice(&[vec![2, 4]], 2), vec![vec![1, 2]]);
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(&[rat_frac(1, 2), rat_frac(3, 4)]), vec![2, 3]);
        assert_eq!(primitive_i(&[4, -6]), vec![2, -3]);
        assert_eq!(primitive_i(&[0, 0]), vec![0, 0]);
    }

    #[test]
    fn det_and_inverse() {
        assert_eq!(det_i(&[vec![2, -1], vec![-1, 2]]), int(3));
        assert_eq!(det_i(&[vec![0, 1], vec![1, 0]]), int(-1));
        let inv = unimodular_inverse(&[vec![int(2), int(1)], vec![int(1), int(1)]]);
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
    }
}
