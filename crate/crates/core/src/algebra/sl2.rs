//! An explicit model of `k[SL₂]` on the matrix entries `a, b, c, d`,
//! used to check the level-K product rule independently.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{rat, Rat};
use crate::repthy::Reps;
use crate::root_datum::RootDatum;

/// Exponents of `a, b, c, d`.
type Mono = [u32; 4];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Poly(BTreeMap<Mono, Rat>);

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

impl Poly {
    fn constant(x: i64) -> Poly {
        let mut p = Poly::default();
        p.add_term([0; 4], rat(x));
        p
    }

    fn var(i: usize) -> Poly {
        let mut m = [0; 4];
        m[i] = 1;
        let mut p = Poly::default();
        p.add_term(m, Rat::one());
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        let e = self.0.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.0 {
            p.add_term(*m, c.clone());
        }
        p
    }

    fn scale(&self, k: &Rat) -> Poly {
        let mut p = Poly::default();
        for (m, c) in &self.0 {
            p.add_term(*m, c * k);
        }
        p
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&rat(-1)))
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]];
                p.add_term(m, c1 * c2);
            }
        }
        p
    }

    /// `x_to ∂/∂x_from`.
    fn shift(&self, to: usize, from: usize) -> Poly {
        let mut p = Poly::default();
        for (m, c) in &self.0 {
            if m[from] == 0 {
                continue;
            }
            let mut n = *m;
            n[from] -= 1;
            n[to] += 1;
            p.add_term(n, c * rat(i64::from(m[from])));
        }
        p
    }

    /// Normal form modulo `ad − bc`, rewriting `ad → bc`.
    fn reduce_det(&self) -> Poly {
        let mut p = Poly::default();
        for (m, c) in &self.0 {
            let k = m[A].min(m[D]);
            p.add_term([m[A] - k, m[B] + k, m[C] + k, m[D] - k], c.clone());
        }
        p
    }

    /// The single `λ` with `self = λ · other`, if any.
    fn ratio(&self, other: &Poly) -> Option<Rat> {
        let (m, c) = other.0.iter().next()?;
        let k = self.0.get(m).cloned().unwrap_or_else(Rat::zero) / c;
        (other.scale(&k) == *self).then_some(k)
    }
}

fn det() -> Poly {
    Poly::var(A)
        .mul(&Poly::var(D))
        .sub(&Poly::var(B).mul(&Poly::var(C)))
}

/// Traces of `Sym^n` of the generic matrix: `χ_n = (a+d) χ_{n-1} − det χ_{n-2}`.
fn characters(max: usize) -> Vec<Poly> {
    let tr = Poly::var(A).add(&Poly::var(D));
    let mut out = vec![Poly::constant(1), tr.clone()];
    while out.len() <= max {
        let k = out.len();
        let next = tr.mul(&out[k - 1]).sub(&det().mul(&out[k - 2]));
        out.push(next);
    }
    out.truncate(max + 1);
    out
}

/// Twice the Casimir of the right `sl₂`-action; `k(k+2)` on `End V_k`.
fn casimir(p: &Poly) -> Poly {
    let e = |q: &Poly| q.shift(A, B).add(&q.shift(C, D));
    let f = |q: &Poly| q.shift(B, A).add(&q.shift(D, C));
    let h = |q: &Poly| {
        q.shift(A, A)
            .sub(&q.shift(B, B))
            .add(&q.shift(C, C))
            .sub(&q.shift(D, D))
    };
    e(&f(p)).add(&f(&e(p))).scale(&rat(2)).add(&h(&h(p)))
}

/// Component of a homogeneous polynomial of degree `deg` in the isotypic
/// part `End V_k`, by Lagrange interpolation in the Casimir.
fn component(p: &Poly, deg: u32, k: u32) -> Poly {
    let ev = |j: u32| rat(i64::from(j * (j + 2)));
    let mut out = p.clone();
    let mut j = deg % 2;
    while j <= deg {
        if j != k {
            let shifted = casimir(&out).sub(&out.scale(&ev(j)));
            out = shifted.scale(&(Rat::one() / (ev(k) - ev(j))));
        }
        j += 2;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub n: u32,
    pub m: u32,
    /// `"empty"` or `"full"`.
    pub level: &'static str,
    /// Observed `k ↦ coefficient` for the components `χ_k`.
    pub observed: BTreeMap<u32, u64>,
    pub predicted: BTreeMap<u32, u64>,
}

/// Compares the explicit products `χ_n χ_m` in `k[SL₂]` and in its
/// associated graded for the degree filtration with the level-K rule, for
/// all `n, m ≤ max`.
pub fn sl2_oracle(max: u32) -> Result<Vec<OracleRow>> {
    if max > 6 {
        return Err(Error::BadInput("the SL2 oracle runs up to N = 6".into()));
    }
    let reps = Reps::new(RootDatum::named("A1")?, Caps::default());
    let chars = characters(2 * max as usize);
    let d = det();
    let mut rows = Vec::new();
    for n in 0..=max {
        for m in 0..=max {
            let p = chars[n as usize].mul(&chars[m as usize]);
            let deg = n + m;
            let mut full = BTreeMap::new();
            let mut graded = BTreeMap::new();
            let mut total = Poly::default();
            let mut k = deg % 2;
            while k <= deg {
                let comp = component(&p, deg, k);
                total = total.add(&comp);
                let mut basis = chars[k as usize].clone();
                for _ in 0..(deg - k) / 2 {
                    basis = basis.mul(&d);
                }
                let mismatch = |detail: String| Error::OracleMismatch { n, m, detail };
                let c = if comp.is_zero() {
                    Rat::zero()
                } else {
                    comp.ratio(&basis).ok_or_else(|| {
                        mismatch(format!("component {k} is not a multiple of det^j χ_{k}"))
                    })?
                };
                if !c.is_integer() || c < Rat::zero() {
                    return Err(mismatch(format!("component {k} has coefficient {c}")));
                }
                let ci = c.to_integer().try_into().unwrap_or(u64::MAX);
                if ci > 0 {
                    full.insert(k, ci);
                }
                // In the associated graded, det-multiples fall to lower
                // filtration degree.
                let red = comp.reduce_det();
                if !red.is_zero() {
                    let g = red.ratio(&chars[k as usize].reduce_det()).ok_or_else(|| {
                        mismatch(format!("graded component {k} is not a multiple of χ_{k}"))
                    })?;
                    graded.insert(k, g.to_integer().try_into().unwrap_or(u64::MAX));
                }
                k += 2;
            }
            if total != p {
                return Err(Error::OracleMismatch {
                    n,
                    m,
                    detail: "isotypic components do not sum to the product".into(),
                });
            }
            for (level, k_set, observed) in [("empty", vec![], graded), ("full", vec![0], full)] {
                let predicted: BTreeMap<u32, u64> = reps
                    .product_support_level(&[i64::from(n)], &[i64::from(m)], &k_set)?
                    .into_iter()
                    .map(|(w, c)| (w[0] as u32, c))
                    .collect();
                if observed != predicted {
                    return Err(Error::OracleMismatch {
                        n,
                        m,
                        detail: format!(
                            "level {level}: observed {observed:?}, predicted {predicted:?}"
                        ),
                    });
                }
                rows.push(OracleRow {
                    n,
                    m,
                    level,
                    observed,
                    predicted,
                });
            }
        }
    }
    Ok(rows)
}
