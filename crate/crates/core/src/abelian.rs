use serde::Serialize;

use crate::linalg;

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `Z^n / <relations>`, relations given as rows.
    pub fn quotient(n: usize, relations: &[Vec<i64>]) -> AbelianGroup {
        if relations.is_empty() {
            return AbelianGroup::free(n);
        }
        let s = linalg::smith_i(relations, relations.len(), n);
        let torsion = s
            .diag
            .iter()
            .map(|d| u64::try_from(linalg::to_i64(d)).expect("positive invariant factor"))
            .filter(|&d| d > 1)
            .collect();
        AbelianGroup {
            free_rank: n - s.rank(),
            torsion,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"free_rank": self.free_rank, "torsion": self.torsion})
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
