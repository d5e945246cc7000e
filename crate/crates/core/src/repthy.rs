//! Weight multiplicities, Weyl dimensions, tensor products, Levi
//! truncations and level-K product supports.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{ToPrimitive, Zero};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{self, Int};
use crate::root_datum::{RootDatum, Weight};

/// Weight → multiplicity, or highest weight → tensor coefficient.
pub type WeightMap = BTreeMap<Weight, u64>;

/// Representation-theoretic kernels for one root datum, with memoized
/// dominant multiplicities.
#[derive(Debug)]
pub struct Reps {
    rd: RootDatum,
    caps: Caps,
    dominant: Mutex<HashMap<Weight, Arc<WeightMap>>>,
    full: Mutex<HashMap<Weight, Arc<WeightMap>>>,
}

impl Reps {
    pub fn new(rd: RootDatum, caps: Caps) -> Reps {
        Reps {
            rd,
            caps,
            dominant: Mutex::new(HashMap::new()),
            full: Mutex::new(HashMap::new()),
        }
    }

    pub fn rd(&self) -> &RootDatum {
        &self.rd
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    fn check_dominant(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rd.rank() {
            return Err(Error::RankMismatch(format!(
                "weight {lambda:?} does not have length {}",
                self.rd.rank()
            )));
        }
        if !self.rd.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        Ok(())
    }

    /// `dim V_λ` by Weyl's dimension formula.
    pub fn weyl_dim(&self, lambda: &[i64]) -> Int {
        weyl_dim(&self.rd, lambda)
    }

    fn bounded_dim(&self, lambda: &[i64]) -> Result<u64> {
        let d = self.weyl_dim(lambda);
        let bound = self.caps.rep_dim;
        match d.to_u64() {
            Some(x) if x <= bound => Ok(x),
            _ => Err(Error::DimensionTooLarge {
                dim: d.to_u64().unwrap_or(u64::MAX),
                bound,
            }),
        }
    }

    /// Multiplicities of the dominant weights of `V_λ` (Freudenthal).
    pub fn dominant_multiplicities(&self, lambda: &[i64]) -> Result<Arc<WeightMap>> {
        self.check_dominant(lambda)?;
        if let Some(m) = self.dominant.lock().unwrap().get(lambda) {
            return Ok(m.clone());
        }
        self.bounded_dim(lambda)?;
        let m = Arc::new(freudenthal(&self.rd, lambda));
        self.dominant
            .lock()
            .unwrap()
            .insert(lambda.to_vec(), m.clone());
        Ok(m)
    }

    /// The full weight system of `V_λ` with multiplicities.
    pub fn weight_multiplicities(&self, lambda: &[i64]) -> Result<Arc<WeightMap>> {
        self.check_dominant(lambda)?;
        if let Some(m) = self.full.lock().unwrap().get(lambda) {
            return Ok(m.clone());
        }
        let dom = self.dominant_multiplicities(lambda)?;
        let mut out = WeightMap::new();
        for (mu, &m) in dom.iter() {
            for x in self.orbit(mu) {
                out.insert(x, m);
            }
        }
        let out = Arc::new(out);
        self.full
            .lock()
            .unwrap()
            .insert(lambda.to_vec(), out.clone());
        Ok(out)
    }

    /// The W-orbit of a weight, by closure under simple reflections.
    pub fn orbit(&self, x: &[i64]) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::from([x.to_vec()]);
        let mut stack = vec![x.to_vec()];
        while let Some(y) = stack.pop() {
            for i in 0..self.rd.semisimple_rank() {
                let z = self.rd.reflect(i, &y);
                if seen.insert(z.clone()) {
                    stack.push(z);
                }
            }
        }
        seen
    }

    /// `c^ν_{λμ}` by Brauer–Klimyk over the weights of the smaller factor.
    pub fn tensor_decompose(&self, lambda: &[i64], mu: &[i64]) -> Result<WeightMap> {
        self.check_dominant(lambda)?;
        self.check_dominant(mu)?;
        let (dl, dm) = (self.weyl_dim(lambda), self.weyl_dim(mu));
        let prod = &dl * &dm;
        let bound = self.caps.rep_dim;
        if prod > Int::from(bound) {
            return Err(Error::DimensionTooLarge {
                dim: prod.to_u64().unwrap_or(u64::MAX),
                bound,
            });
        }
        let (big, small) = if dl >= dm { (lambda, mu) } else { (mu, lambda) };
        let weights = self.weight_multiplicities(small)?;
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (nu, &m) in weights.iter() {
            if let Some((x, sign)) = dot_dominant(&self.rd, &linalg::add_i(big, nu)) {
                *acc.entry(x).or_default() += sign * m as i64;
            }
        }
        Ok(acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(x, c)| {
                debug_assert!(c > 0, "tensor coefficients are nonnegative");
                (x, c as u64)
            })
            .collect())
    }

    /// Weights `χ ≤_K λ` of `V_λ`: the weight system of the simple
    /// `L_K`-module with highest weight `λ`.
    pub fn levi_truncation(&self, lambda: &[i64], k: &[usize]) -> Result<WeightMap> {
        let all = self.weight_multiplicities(lambda)?;
        Ok(all
            .iter()
            .filter(|(chi, _)| self.rd.dominance_le(chi, lambda, k))
            .map(|(chi, &m)| (chi.clone(), m))
            .collect())
    }

    /// `{ν : c^ν_{λμ} ≠ 0, ν ≤_K λ + μ}` with the coefficients.
    pub fn product_support_level(
        &self,
        lambda: &[i64],
        mu: &[i64],
        k: &[usize],
    ) -> Result<WeightMap> {
        let top = linalg::add_i(lambda, mu);
        Ok(self
            .tensor_decompose(lambda, mu)?
            .into_iter()
            .filter(|(nu, _)| self.rd.dominance_le(nu, &top, k))
            .collect())
    }

    /// `2λ − α` is dominant and occurs in the level-K product of `V_λ`
    /// with itself.
    pub fn transvectant_check(&self, lambda: &[i64], alpha: usize, k: &[usize]) -> Result<bool> {
        self.check_dominant(lambda)?;
        if alpha >= self.rd.semisimple_rank() {
            return Err(Error::BadInput(format!("no simple root a{}", alpha + 1)));
        }
        if !k.contains(&alpha) {
            return Err(Error::BadInput(format!("a{} is not in K", alpha + 1)));
        }
        if self.rd.pair(lambda, alpha) == 0 {
            return Err(Error::BadInput(format!(
                "the weight is orthogonal to the coroot of a{}",
                alpha + 1
            )));
        }
        let target = linalg::sub_i(&linalg::scale_i(lambda, 2), &self.rd.simple_roots()[alpha]);
        if !self.rd.is_dominant(&target) {
            return Ok(false);
        }
        let support = self.product_support_level(lambda, lambda, k)?;
        Ok(support.get(&target).is_some_and(|&c| c >= 1))
    }
}

/// `∏_{β>0} ⟨λ+ρ, β̌⟩ / ⟨ρ, β̌⟩`.
pub fn weyl_dim(rd: &RootDatum, lambda: &[i64]) -> Int {
    let mut num = Int::from(1);
    let mut den = Int::from(1);
    for b in rd.positive_roots() {
        let h = b.coheight();
        num *= Int::from(linalg::dot_i(lambda, &b.coroot) + h);
        den *= Int::from(h);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// The dominant representative of `x` under the dot action, with the sign
/// of the Weyl group element used; `None` if `x + ρ` lies on a wall.
pub fn dot_dominant(rd: &RootDatum, x: &[i64]) -> Option<(Weight, i64)> {
    let mut y = x.to_vec();
    let mut sign = 1;
    loop {
        let mut moved = false;
        for i in 0..rd.semisimple_rank() {
            let p = rd.pair(&y, i);
            if p == -1 {
                return None;
            }
            if p < -1 {
                y = rd.reflect_dot(i, &y);
                sign = -sign;
                moved = true;
                break;
            }
        }
        if !moved {
            return Some((y, sign));
        }
    }
}

/// Dominant weights `μ ≤ λ`, reached from `λ` by subtracting positive
/// roots while staying dominant.
fn dominant_weights_below(rd: &RootDatum, lambda: &[i64]) -> Vec<Weight> {
    let mut seen = BTreeSet::from([lambda.to_vec()]);
    let mut stack = vec![lambda.to_vec()];
    while let Some(mu) = stack.pop() {
        for b in rd.positive_roots() {
            let nu = linalg::sub_i(&mu, &b.weight);
            if rd.is_dominant(&nu) && seen.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by_key(|w| std::cmp::Reverse(rd.height_functional(w)));
    out
}

/// `(x, β)` for `β = Σ a_i α_i`, in units where `(α_i, α_i) = 2 e_i`.
fn form_with_root(rd: &RootDatum, x: &[i64], coeffs: &[i64]) -> i64 {
    let e = rd.root_lengths();
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &a)| a * e[i] * rd.pair(x, i))
        .sum()
}

fn freudenthal(rd: &RootDatum, lambda: &[i64]) -> WeightMap {
    let dom = dominant_weights_below(rd, lambda);
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    let e = rd.root_lengths();
    for mu in &dom {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let c = rd
            .root_coords_int(&linalg::sub_i(lambda, mu))
            .expect("dominant weights below λ differ by roots");
        let top = linalg::add_i(lambda, mu);
        let lhs: i64 = c
            .iter()
            .enumerate()
            .map(|(i, &ci)| ci * e[i] * (rd.pair(&top, i) + 2))
            .sum();
        let mut rhs: i64 = 0;
        for b in rd.positive_roots() {
            let mut x = linalg::add_i(mu, &b.weight);
            loop {
                let (d, _) = rd.dominant_conjugate(&x);
                let Some(&m) = mult.get(&d) else { break };
                rhs += 2 * form_with_root(rd, &x, &b.coeffs) * m as i64;
                x = linalg::add_i(&x, &b.weight);
            }
        }
        debug_assert!(lhs > 0 && rhs % lhs == 0);
        mult.insert(mu.clone(), (rhs / lhs) as u64);
    }
    dom.into_iter()
        .map(|w| {
            let m = mult[&w];
            (w, m)
        })
        .collect()
}
