#![allow(dead_code)]

use serde_json::Value;

use redvar_core::{AdmissibleCone, Cone, Group};

pub fn corpus(name: &str) -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/");
    let text = std::fs::read_to_string(format!("{path}{name}")).expect("corpus file");
    serde_json::from_str(&text).expect("corpus JSON")
}

/// Every admissible cone in the corpus with its group.
pub fn admissible_corpus() -> Vec<(Group, AdmissibleCone)> {
    corpus("cones.json")
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let g = Group::named(e["type"].as_str().unwrap()).unwrap();
            let sigma = Cone::from_json(&e["cone"], g.rank()).unwrap();
            let ac = AdmissibleCone::new(&g, sigma).unwrap();
            (g, ac)
        })
        .collect()
}

pub fn gens(rank: usize, v: &[&[i64]]) -> Cone {
    Cone::from_generators(rank, &v.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
}
