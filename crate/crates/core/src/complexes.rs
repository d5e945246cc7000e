//! W-complexes of cones, glueing cocycles and the cohomology of the
//! automorphism complex.
//!
//! A complex is a finite set of abstract cells, each realized as a cone in
//! `Λ_R`, closed under faces and under a W-action given by one permutation
//! of the cells per simple reflection. Realizations of distinct cells may
//! coincide: the complex need not embed in `Λ_R`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::AbelianGroup;
use crate::admissible::{wall_set, AdmissibleCone, Triple};
use crate::cones::{parse_int_vec, Cone};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub cone: Cone,
    /// Indices of all proper faces.
    pub faces: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WComplex {
    cells: Vec<Cell>,
    /// One permutation of the cells per simple reflection.
    generators: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: u8,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}

impl WComplex {
    /// The complex of all W-translates of `maximal` and their faces, with
    /// cells named `c0, c1, ...` in canonical cone order.
    pub fn from_cones(g: &Group, maximal: &[Cone]) -> WComplex {
        let weyl = g.weyl();
        let mut all = BTreeSet::new();
        for m in maximal {
            for w in 0..weyl.len() {
                all.extend(g.translate(w, m).faces());
            }
        }
        let mut cones: Vec<Cone> = all.into_iter().collect();
        cones.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.cmp(b)));
        let pos: HashMap<Cone, usize> = cones
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let cells = cones
            .iter()
            .enumerate()
            .map(|(i, c)| Cell {
                id: format!("c{i}"),
                cone: c.clone(),
                faces: c
                    .faces()
                    .iter()
                    .filter(|f| *f != c)
                    .map(|f| pos[f])
                    .collect(),
            })
            .collect();
        let generators = (0..g.rd().semisimple_rank())
            .map(|i| {
                let s = g.rd().simple_reflection_matrix(i);
                cones.iter().map(|c| pos[&c.apply_matrix(&s)]).collect()
            })
            .collect();
        WComplex::assemble(cells, generators)
    }

    fn assemble(cells: Vec<Cell>, generators: Vec<Vec<usize>>) -> WComplex {
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.clone(), i))
            .collect();
        WComplex {
            cells,
            generators,
            index,
        }
    }

    /// Reads `{"cones": [{"id", "generators", "faces"}], "w_action": [...]}`.
    ///
    /// `w_action` lists, for each simple reflection, `{"generator": "a1",
    /// "map": {"id": "id'"}}`; unlisted ids are fixed. Without `w_action`
    /// the action is derived from the realizations, which must then be
    /// pairwise distinct.
    pub fn from_json(g: &Group, v: &Value) -> Result<WComplex> {
        let n = g.rank();
        let list = v
            .get("cones")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("complex needs a \"cones\" list"))?;
        let mut ids = Vec::new();
        let mut index = HashMap::new();
        for c in list {
            let id = match c.get("id") {
                Some(Value::String(s)) => s.clone(),
                Some(Value::Number(x)) => x.to_string(),
                _ => return Err(bad("every cone needs an \"id\"")),
            };
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(bad(format!("duplicate cone id {id:?}")));
            }
            ids.push(id);
        }
        let lookup = |id: &Value| -> Result<usize> {
            let s = match id {
                Value::String(s) => s.clone(),
                Value::Number(x) => x.to_string(),
                _ => return Err(bad(format!("bad cone id {id}"))),
            };
            index
                .get(&s)
                .copied()
                .ok_or_else(|| bad(format!("unknown cone id {s:?}")))
        };
        let mut cells = Vec::new();
        for (i, c) in list.iter().enumerate() {
            let cone = if c.get("generators").is_some() {
                Cone::from_json(c, n)?
            } else {
                return Err(bad(format!("cone {:?} needs \"generators\"", ids[i])));
            };
            let mut faces = BTreeSet::new();
            if let Some(fs) = c.get("faces") {
                for f in fs
                    .as_array()
                    .ok_or_else(|| bad("\"faces\" must be a list"))?
                {
                    let j = lookup(f)?;
                    if j != i {
                        faces.insert(j);
                    }
                }
            }
            cells.push(Cell {
                id: ids[i].clone(),
                cone,
                faces,
            });
        }
        close_faces(&mut cells)?;
        let r = g.rd().semisimple_rank();
        let generators = match v.get("w_action") {
            Some(Value::Array(acts)) => {
                let mut gens: Vec<Vec<usize>> = vec![(0..cells.len()).collect(); r];
                for a in acts {
                    let gi = match a.get("generator") {
                        Some(Value::Number(x)) => x
                            .as_u64()
                            .filter(|&x| x >= 1)
                            .map(|x| x as usize - 1)
                            .ok_or_else(|| bad("generator index is 1-based"))?,
                        Some(Value::String(s)) => g.parse_roots(std::slice::from_ref(s))?[0],
                        _ => return Err(bad("w_action entry needs \"generator\"")),
                    };
                    if gi >= r {
                        return Err(bad(format!("no simple reflection {}", gi + 1)));
                    }
                    let map = a
                        .get("map")
                        .and_then(Value::as_object)
                        .ok_or_else(|| bad("w_action entry needs a \"map\" object"))?;
                    for (from, to) in map {
                        let f = lookup(&Value::String(from.clone()))?;
                        gens[gi][f] = lookup(to)?;
                    }
                }
                gens
            }
            Some(_) => return Err(bad("\"w_action\" must be a list")),
            None => derive_action(g, &cells)?,
        };
        for p in &generators {
            let set: BTreeSet<usize> = p.iter().copied().collect();
            if set.len() != p.len() {
                return Err(bad("w_action generator is not a permutation"));
            }
        }
        Ok(WComplex::assemble(cells, generators))
    }

    pub fn to_json(&self) -> Value {
        let cones: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "generators": c.cone.generators(),
                    "faces": c.faces.iter().map(|&f| self.cells[f].id.clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let action: Vec<Value> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let map: BTreeMap<String, String> = p
                    .iter()
                    .enumerate()
                    .filter(|(a, b)| a != *b)
                    .map(|(a, &b)| (self.cells[a].id.clone(), self.cells[b].id.clone()))
                    .collect();
                json!({"generator": format!("a{}", i + 1), "map": map})
            })
            .collect();
        json!({"cones": cones, "w_action": action})
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn id(&self, cell: usize) -> &str {
        &self.cells[cell].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// `b` is `a` or a face of `a`.
    pub fn is_face(&self, b: usize, a: usize) -> bool {
        a == b || self.cells[a].faces.contains(&b)
    }

    /// The image of a cell under the `i`-th simple reflection.
    pub fn act(&self, i: usize, a: usize) -> usize {
        self.generators[i][a]
    }

    /// The cell together with its faces.
    fn closed_star(&self, a: usize) -> BTreeSet<usize> {
        let mut s = self.cells[a].faces.clone();
        s.insert(a);
        s
    }

    /// The W-orbit of a cell, sorted.
    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for p in &self.generators {
                if seen.insert(p[x]) {
                    stack.push(p[x]);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All W-orbits, each sorted, in order of their first cell.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.len()];
        let mut out = Vec::new();
        for a in 0..self.len() {
            if !done[a] {
                let o = self.orbit(a);
                for &x in &o {
                    done[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// The unique cell of each orbit whose realization meets the dominant
    /// chamber in its relative interior.
    fn canonical(&self, g: &Group, orbit: &[usize]) -> Option<usize> {
        let mut reps = orbit
            .iter()
            .copied()
            .filter(|&c| g.meets_chamber(&self.cells[c].cone));
        let first = reps.next()?;
        if reps.next().is_some() {
            None
        } else {
            Some(first)
        }
    }

    /// Canonical representatives, one per orbit, ascending. Panics on a
    /// complex that fails validation.
    pub fn canonical_cells(&self, g: &Group) -> Vec<usize> {
        let mut reps: Vec<usize> = self
            .orbits()
            .iter()
            .map(|o| self.canonical(g, o).expect("validated complex"))
            .collect();
        reps.sort();
        reps
    }
}

/// Replaces declared face lists by their transitive closures.
fn close_faces(cells: &mut [Cell]) -> Result<()> {
    let n = cells.len();
    loop {
        let mut changed = false;
        for a in 0..n {
            let extra: BTreeSet<usize> = cells[a]
                .faces
                .iter()
                .flat_map(|&f| cells[f].faces.iter().copied())
                .collect();
            for x in extra {
                if x == a {
                    return Err(bad(format!(
                        "face relation has a cycle through {:?}",
                        cells[a].id
                    )));
                }
                if cells[a].faces.insert(x) {
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

fn derive_action(g: &Group, cells: &[Cell]) -> Result<Vec<Vec<usize>>> {
    let r = g.rd().semisimple_rank();
    let mut by_cone: HashMap<&Cone, usize> = HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        if by_cone.insert(&c.cone, i).is_some() && r > 0 {
            return Err(bad(
                "cells share a realization; the complex needs an explicit \"w_action\"",
            ));
        }
    }
    (0..r)
        .map(|i| {
            let s = g.rd().simple_reflection_matrix(i);
            cells
                .iter()
                .map(|c| {
                    by_cone
                        .get(&c.cone.apply_matrix(&s))
                        .copied()
                        .ok_or_else(|| {
                            bad(format!(
                                "the W-translates of {:?} are not in the complex",
                                c.id
                            ))
                        })
                })
                .collect()
        })
        .collect()
}

/// Checks the four axioms of a W-complex, reporting the first failure.
pub fn validate_complex(g: &Group, wc: &WComplex) -> ComplexReport {
    match first_violation(g, wc) {
        None => ComplexReport {
            valid: true,
            violation: None,
        },
        Some((axiom, detail)) => ComplexReport {
            valid: false,
            violation: Some(Violation { axiom, detail }),
        },
    }
}

fn first_violation(g: &Group, wc: &WComplex) -> Option<(u8, String)> {
    let cells = &wc.cells;
    let n = g.rank();
    // (1) realizations are cones in Λ_R and declared faces are faces.
    for c in cells {
        if c.cone.ambient() != n {
            return Some((1, format!("{:?} is not realized in Λ_R", c.id)));
        }
        for &f in &c.faces {
            if cells[f].cone == c.cone || !cells[f].cone.is_face_of(&c.cone) {
                return Some((
                    1,
                    format!(
                        "{:?} is declared a face of {:?} but is not a proper face",
                        cells[f].id, c.id
                    ),
                ));
            }
        }
    }
    // (2) every face of a realization is realized by exactly one face cell.
    for c in cells {
        let mut seen: HashMap<&Cone, &str> = HashMap::new();
        for &f in &c.faces {
            if let Some(other) = seen.insert(&cells[f].cone, &cells[f].id) {
                return Some((
                    2,
                    format!(
                        "{other:?} and {:?} realize the same face of {:?}",
                        cells[f].id, c.id
                    ),
                ));
            }
        }
        for face in c.cone.faces() {
            if face != c.cone && !seen.contains_key(&face) {
                return Some((
                    2,
                    format!(
                        "a face of {:?} with generators {:?} is missing",
                        c.id,
                        face.generators()
                    ),
                ));
            }
        }
    }
    // (3) realizations of two cells meet in a face of each.
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            let i = cells[a].cone.intersect(&cells[b].cone);
            if !i.is_face_of(&cells[a].cone) || !i.is_face_of(&cells[b].cone) {
                return Some((
                    3,
                    format!(
                        "{:?} and {:?} overlap outside a common face",
                        cells[a].id, cells[b].id
                    ),
                ));
            }
        }
    }
    // (4) the action is a W-action by complex automorphisms, ρ is
    // equivariant and injective on every W-closure.
    let r = g.rd().semisimple_rank();
    if wc.generators.len() != r {
        return Some((4, format!("expected {r} generator permutations")));
    }
    for (i, p) in wc.generators.iter().enumerate() {
        let s = g.rd().simple_reflection_matrix(i);
        for (a, &b) in p.iter().enumerate() {
            if cells[a].cone.apply_matrix(&s) != cells[b].cone {
                return Some((
                    4,
                    format!(
                        "a{} maps {:?} to {:?}, which is not its reflection",
                        i + 1,
                        cells[a].id,
                        cells[b].id
                    ),
                ));
            }
            let image: BTreeSet<usize> = cells[a].faces.iter().map(|&f| p[f]).collect();
            if image != cells[b].faces {
                return Some((
                    4,
                    format!(
                        "a{} does not preserve the faces of {:?}",
                        i + 1,
                        cells[a].id
                    ),
                ));
            }
        }
    }
    let cartan = g.rd().cartan_matrix();
    for i in 0..r {
        for j in i..r {
            let m = if i == j {
                1
            } else {
                match cartan[i][j] * cartan[j][i] {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    _ => 6,
                }
            };
            for a in 0..cells.len() {
                let mut x = a;
                for _ in 0..m {
                    x = wc.generators[i][wc.generators[j][x]];
                }
                if x != a {
                    return Some((
                        4,
                        format!(
                            "w_action violates the braid relation of a{} and a{}",
                            i + 1,
                            j + 1
                        ),
                    ));
                }
            }
        }
    }
    for a in 0..cells.len() {
        let orbit = wc.orbit(a);
        for (x, &p) in orbit.iter().enumerate() {
            for &q in &orbit[x + 1..] {
                let i = cells[p].cone.intersect(&cells[q].cone);
                let common = wc
                    .closed_star(p)
                    .intersection(&wc.closed_star(q))
                    .any(|&c| cells[c].cone == i);
                if !common {
                    return Some((
                        4,
                        format!("ρ is not injective on the W-closure of {:?}: {:?} and {:?} meet outside common faces", cells[a].id, cells[p].id, cells[q].id),
                    ));
                }
            }
        }
    }
    for o in wc.orbits() {
        if wc.canonical(g, &o).is_none() {
            return Some((
                4,
                format!(
                    "the orbit of {:?} has no unique dominant representative",
                    cells[o[0]].id
                ),
            ));
        }
    }
    None
}

fn validated(g: &Group, wc: &WComplex) -> Result<()> {
    match validate_complex(g, wc).violation {
        None => Ok(()),
        Some(v) => Err(bad(format!(
            "invalid complex, axiom ({}): {}",
            v.axiom, v.detail
        ))),
    }
}

/// Maximal cells whose realization meets the dominant chamber in its
/// relative interior, one per W-orbit.
pub fn irreducible_components(g: &Group, wc: &WComplex) -> Vec<usize> {
    let maximal: BTreeSet<usize> = (0..wc.len())
        .filter(|&a| !wc.cells.iter().any(|c| c.faces.contains(&a)))
        .collect();
    wc.canonical_cells(g)
        .into_iter()
        .filter(|c| maximal.contains(c))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexOrbit {
    pub representative: String,
    pub members: Vec<String>,
    pub cone_dim: usize,
    pub triple: Triple,
    pub aut: AbelianGroup,
}

/// W-orbits of cells labelled by the invariants of their canonical
/// representatives.
pub fn orbit_classes(g: &Group, wc: &WComplex) -> Result<Vec<ComplexOrbit>> {
    validated(g, wc)?;
    let mut out = Vec::new();
    for o in wc.orbits() {
        let rep = wc.canonical(g, &o).expect("validated complex");
        let ac = AdmissibleCone::new_unchecked(g, wc.cells[rep].cone.clone())?;
        out.push(ComplexOrbit {
            representative: wc.cells[rep].id.clone(),
            members: o.iter().map(|&c| wc.cells[c].id.clone()).collect(),
            cone_dim: wc.cells[rep].cone.dim(),
            aut: crate::admissible::aut_group(g, &ac),
            triple: ac.triple(),
        });
    }
    Ok(out)
}

/// The chain complex of character lattices over the poset of orbits.
///
/// Degree `i` is a sum over chains `τ_0 < ... < τ_i` of orbits of
/// `M_{τ_0} = (Λ ∩ lin τ_0) / ZK_{τ_0}`, presented as a free module on the
/// concatenated lattice bases modulo relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutComplex {
    /// Canonical cells of the orbits, ascending.
    pub orbits: Vec<usize>,
    /// Lattice basis of `Λ ∩ lin τ` per orbit.
    pub lattices: Vec<Vec<Vec<i64>>>,
    /// `ZK_τ` in lattice coordinates per orbit.
    pub walls: Vec<Vec<Vec<i64>>>,
    /// Chains of orbit positions per degree.
    pub chains: Vec<Vec<Vec<usize>>>,
    /// Offset of each chain's block inside the free module of its degree.
    pub offsets: Vec<Vec<usize>>,
    pub ranks: Vec<usize>,
    /// Relation vectors per degree.
    pub relations: Vec<Vec<Vec<i64>>>,
    /// `boundaries[i]` maps degree `i` to degree `i - 1`, stored as a
    /// `ranks[i-1] × ranks[i]` matrix; `boundaries[0]` is empty.
    pub boundaries: Vec<Vec<Vec<i64>>>,
    pub terms: Vec<AbelianGroup>,
}

pub fn aut_chain_complex(g: &Group, wc: &WComplex) -> Result<AutComplex> {
    validated(g, wc)?;
    let n = g.rank();
    let orbits = wc.canonical_cells(g);
    let m = orbits.len();
    let mut lattices = Vec::new();
    let mut wall_roots = Vec::new();
    let mut walls = Vec::new();
    for &c in &orbits {
        let cone = &wc.cells[c].cone;
        let lat = linalg::saturated_lattice(&cone.generators(), n);
        let k = wall_set(g, cone);
        let roots: Vec<Vec<i64>> = k
            .iter()
            .map(|&i| g.rd().simple_roots()[i].clone())
            .collect();
        walls.push(
            roots
                .iter()
                .map(|a| linalg::coords_in_lattice(&lat, a).expect("K lies in lin τ"))
                .collect::<Vec<_>>(),
        );
        wall_roots.push(roots);
        lattices.push(lat);
    }
    let below = |a: usize, b: usize| a != b && wc.is_face(orbits[a], orbits[b]);
    // Restriction along τ < σ must carry ZK_τ into ZK_σ.
    for a in 0..m {
        for b in 0..m {
            if !below(a, b) {
                continue;
            }
            let target = linalg::hnf_rows(&wall_roots[b], n);
            for alpha in &wall_roots[a] {
                if linalg::coords_in_lattice(&target, alpha).is_none() {
                    return Err(Error::IllDefinedRestriction(format!(
                        "root {alpha:?} of K at {:?} is not in ZK at {:?}",
                        wc.id(orbits[a]),
                        wc.id(orbits[b])
                    )));
                }
            }
        }
    }
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..m).map(|a| vec![a]).collect()];
    loop {
        let next: Vec<Vec<usize>> = chains
            .last()
            .unwrap()
            .iter()
            .flat_map(|c| {
                let top = *c.last().unwrap();
                (0..m).filter(move |&b| below(top, b)).map(move |b| {
                    let mut d = c.clone();
                    d.push(b);
                    d
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        chains.push(next);
    }
    let mut offsets = Vec::new();
    let mut ranks = Vec::new();
    let mut relations = Vec::new();
    let mut terms = Vec::new();
    for deg in &chains {
        let mut off = Vec::new();
        let mut total = 0;
        for c in deg {
            off.push(total);
            total += lattices[c[0]].len();
        }
        let mut rels = Vec::new();
        for (c, &o) in deg.iter().zip(&off) {
            for w in &walls[c[0]] {
                let mut v = vec![0; total];
                v[o..o + w.len()].copy_from_slice(w);
                rels.push(v);
            }
        }
        terms.push(AbelianGroup::quotient(total, &rels));
        offsets.push(off);
        ranks.push(total);
        relations.push(rels);
    }
    let mut boundaries = vec![Vec::new()];
    for i in 1..chains.len() {
        let pos: HashMap<&Vec<usize>, usize> = chains[i - 1]
            .iter()
            .enumerate()
            .map(|(k, c)| (c, k))
            .collect();
        let mut d = vec![vec![0i64; ranks[i]]; ranks[i - 1]];
        for (ci, c) in chains[i].iter().enumerate() {
            let lat = &lattices[c[0]];
            for j in 0..c.len() {
                let mut face = c.clone();
                face.remove(j);
                let target = pos[&face];
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let base = offsets[i - 1][target];
                for (k, v) in lat.iter().enumerate() {
                    let col = offsets[i][ci] + k;
                    if j == 0 {
                        let coords = linalg::coords_in_lattice(&lattices[c[1]], v)
                            .expect("face lattice is a sublattice");
                        for (t, x) in coords.iter().enumerate() {
                            d[base + t][col] += sign * x;
                        }
                    } else {
                        d[base + k][col] += sign;
                    }
                }
            }
        }
        boundaries.push(d);
    }
    for i in 2..chains.len() {
        let (a, b) = (&boundaries[i - 1], &boundaries[i]);
        for col in 0..ranks[i] {
            for row in 0..ranks[i - 2] {
                let s: i64 = (0..ranks[i - 1]).map(|k| a[row][k] * b[k][col]).sum();
                if s != 0 {
                    return Err(Error::IllDefinedRestriction(format!(
                        "boundary maps do not compose to zero in degree {i}"
                    )));
                }
            }
        }
    }
    Ok(AutComplex {
        orbits,
        lattices,
        walls,
        chains,
        offsets,
        ranks,
        relations,
        boundaries,
        terms,
    })
}

impl AutComplex {
    pub fn degrees(&self) -> usize {
        self.ranks.len()
    }

    /// Basis of the relative cycles `{x : ∂x ∈ R_{i-1}}` in degree `i`.
    pub fn cycles(&self, i: usize) -> Vec<Vec<i64>> {
        if i >= self.degrees() {
            return Vec::new();
        }
        let r = self.ranks[i];
        if i == 0 {
            return linalg::int_kernel(&[], r);
        }
        let rels = &self.relations[i - 1];
        let rows: Vec<Vec<i64>> = (0..self.ranks[i - 1])
            .map(|row| {
                let mut v = self.boundaries[i][row].clone();
                v.extend(rels.iter().map(|rel| -rel[row]));
                v
            })
            .collect();
        let ker = linalg::int_kernel(&rows, r + rels.len());
        let gens: Vec<Vec<i64>> = ker.iter().map(|v| v[..r].to_vec()).collect();
        linalg::hnf_rows(&gens, r)
    }

    /// Boundaries plus relations in degree `i`.
    fn boundary_lattice(&self, i: usize) -> Vec<Vec<i64>> {
        let mut gens = self.relations[i].clone();
        if i + 1 < self.degrees() {
            let d = &self.boundaries[i + 1];
            gens.extend(
                (0..self.ranks[i + 1])
                    .map(|col| (0..self.ranks[i]).map(|row| d[row][col]).collect()),
            );
        }
        gens
    }

    pub fn homology(&self, i: usize) -> AbelianGroup {
        if i >= self.degrees() {
            return AbelianGroup::trivial();
        }
        let z = self.cycles(i);
        let rels: Vec<Vec<i64>> = self
            .boundary_lattice(i)
            .iter()
            .filter(|v| !linalg::is_zero_i(v))
            .map(|v| linalg::coords_in_lattice(&z, v).expect("boundaries are cycles"))
            .collect();
        AbelianGroup::quotient(z.len(), &rels)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(AbelianGroup::to_json).collect::<Vec<_>>(),
            "ranks": self.ranks,
            "boundaries": self.boundaries[1..],
            "relations": self.relations,
        })
    }
}

/// `(H⁰, H¹)` as character groups: the lattice homology `H_0, H_1`.
pub fn cohomology(g: &Group, wc: &WComplex) -> Result<(AbelianGroup, AbelianGroup)> {
    let ac = aut_chain_complex(g, wc)?;
    Ok((ac.homology(0), ac.homology(1)))
}

/// A finitely generated group of formal symbols; order 0 means infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueGroup {
    pub symbols: Vec<String>,
    pub orders: Vec<u64>,
}

impl ValueGroup {
    pub fn reduce(&self, v: &mut [i64]) {
        for (x, &o) in v.iter_mut().zip(&self.orders) {
            if o > 0 {
                *x = x.rem_euclid(o as i64);
            }
        }
    }

    pub fn is_identity(&self, v: &[i64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        linalg::is_zero_i(&w)
    }
}

/// Glueing data: for incidences `τ < σ` of canonical cells, a homomorphism
/// `Λ → V` given by the images of the standard basis. Missing incidences
/// carry the trivial homomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub value_group: ValueGroup,
    pub entries: BTreeMap<(usize, usize), Vec<Vec<i64>>>,
}

impl Cocycle {
    pub fn trivial() -> Cocycle {
        Cocycle {
            value_group: ValueGroup {
                symbols: Vec::new(),
                orders: Vec::new(),
            },
            entries: BTreeMap::new(),
        }
    }

    /// Reads `{"value_group": {"z": 2}, "entries": [{"face", "cone",
    /// "images"}]}`, each image being `{"z": 1}` or an exponent list.
    pub fn from_json(g: &Group, wc: &WComplex, v: &Value) -> Result<Cocycle> {
        let vg = v
            .get("value_group")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("cocycle needs a \"value_group\" object"))?;
        let mut symbols = Vec::new();
        let mut orders = Vec::new();
        for (s, o) in vg {
            symbols.push(s.clone());
            orders.push(
                o.as_u64()
                    .ok_or_else(|| bad(format!("order of {s:?} must be a nonnegative integer")))?,
            );
        }
        let value_group = ValueGroup { symbols, orders };
        let reps: BTreeSet<usize> = wc.canonical_cells(g).into_iter().collect();
        let mut entries = BTreeMap::new();
        let empty = Vec::new();
        for e in v.get("entries").and_then(Value::as_array).unwrap_or(&empty) {
            let cell = |key: &str| -> Result<usize> {
                let id = e
                    .get(key)
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad(format!("cocycle entry needs {key:?}")))?;
                wc.index_of(id)
                    .ok_or_else(|| bad(format!("unknown cone id {id:?}")))
            };
            let (tau, sigma) = (cell("face")?, cell("cone")?);
            if !reps.contains(&tau) || !reps.contains(&sigma) {
                return Err(bad(format!(
                    "cocycle entries use canonical representatives; {:?} < {:?} is not canonical",
                    wc.id(tau),
                    wc.id(sigma)
                )));
            }
            if tau == sigma || !wc.is_face(tau, sigma) {
                return Err(bad(format!(
                    "{:?} is not a face of {:?}",
                    wc.id(tau),
                    wc.id(sigma)
                )));
            }
            let imgs = e
                .get("images")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("cocycle entry needs \"images\""))?;
            if imgs.len() != g.rank() {
                return Err(bad(format!("expected {} images", g.rank())));
            }
            let mut rows = Vec::new();
            for im in imgs {
                let row = match im {
                    Value::Object(o) => {
                        let mut r = vec![0; value_group.symbols.len()];
                        for (s, x) in o {
                            let k = value_group
                                .symbols
                                .iter()
                                .position(|t| t == s)
                                .ok_or_else(|| bad(format!("unknown symbol {s:?}")))?;
                            r[k] = x.as_i64().ok_or_else(|| bad("exponents are integers"))?;
                        }
                        r
                    }
                    _ => {
                        let r = parse_int_vec(im)?;
                        if r.len() != value_group.symbols.len() {
                            return Err(bad("image has the wrong number of exponents"));
                        }
                        r
                    }
                };
                rows.push(row);
            }
            entries.insert((tau, sigma), rows);
        }
        Ok(Cocycle {
            value_group,
            entries,
        })
    }

    /// Value at the incidence `(τ, σ)` of the lattice vector `x`.
    pub fn eval(&self, tau: usize, sigma: usize, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.value_group.symbols.len()];
        if let Some(rows) = self.entries.get(&(tau, sigma)) {
            for (xi, row) in x.iter().zip(rows) {
                for (o, r) in out.iter_mut().zip(row) {
                    *o += xi * r;
                }
            }
        }
        self.value_group.reduce(&mut out);
        out
    }
}

/// Checks that `t` kills each `ZK_τ` and satisfies the cocycle condition.
pub fn check_cocycle(g: &Group, wc: &WComplex, ac: &AutComplex, t: &Cocycle) -> Result<()> {
    let orbits = &ac.orbits;
    for &(tau, sigma) in t.entries.keys() {
        for &i in &wall_set(g, &wc.cells[tau].cone) {
            let alpha = &g.rd().simple_roots()[i];
            if !t.value_group.is_identity(&t.eval(tau, sigma, alpha)) {
                return Err(Error::NotACocycle(format!(
                    "entry at {:?} < {:?} does not kill a{}",
                    wc.id(tau),
                    wc.id(sigma),
                    i + 1
                )));
            }
        }
    }
    if ac.chains.len() > 2 {
        for c in &ac.chains[2] {
            let (a, b, s) = (orbits[c[0]], orbits[c[1]], orbits[c[2]]);
            for v in &ac.lattices[c[0]] {
                let lhs = t.eval(a, s, v);
                let mut rhs = linalg::add_i(&t.eval(a, b, v), &t.eval(b, s, v));
                t.value_group.reduce(&mut rhs);
                if lhs != rhs {
                    return Err(Error::NotACocycle(format!(
                        "condition fails on {:?} < {:?} < {:?}",
                        wc.id(a),
                        wc.id(b),
                        wc.id(s)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Values of `t` on a basis of the relative 1-cycles: the class of `t` as
/// a homomorphism `H_1 → V`.
pub fn cocycle_class(g: &Group, wc: &WComplex, t: &Cocycle) -> Result<Vec<Vec<i64>>> {
    let ac = aut_chain_complex(g, wc)?;
    check_cocycle(g, wc, &ac, t)?;
    if ac.degrees() < 2 {
        return Ok(Vec::new());
    }
    let n = g.rank();
    Ok(ac
        .cycles(1)
        .iter()
        .map(|z| {
            let mut total = vec![0; t.value_group.symbols.len()];
            for (ci, c) in ac.chains[1].iter().enumerate() {
                let lat = &ac.lattices[c[0]];
                let off = ac.offsets[1][ci];
                let mut x = vec![0; n];
                for (k, b) in lat.iter().enumerate() {
                    x = linalg::add_i(&x, &linalg::scale_i(b, z[off + k]));
                }
                total = linalg::add_i(&total, &t.eval(ac.orbits[c[0]], ac.orbits[c[1]], &x));
            }
            t.value_group.reduce(&mut total);
            total
        })
        .collect())
}

pub fn is_coboundary(g: &Group, wc: &WComplex, t: &Cocycle) -> Result<bool> {
    Ok(cocycle_class(g, wc, t)?
        .iter()
        .all(|v| t.value_group.is_identity(v)))
}

/// Realizations of distinct cells meet only in realizations of common
/// faces.
pub fn is_globally_injective(wc: &WComplex) -> bool {
    let cells = &wc.cells;
    (0..cells.len()).all(|a| {
        (a + 1..cells.len()).all(|b| {
            let i = cells[a].cone.intersect(&cells[b].cone);
            wc.closed_star(a)
                .intersection(&wc.closed_star(b))
                .any(|&c| cells[c].cone == i)
        })
    })
}

pub fn semigroup_admissible(g: &Group, wc: &WComplex, t: &Cocycle) -> Result<bool> {
    if validate_complex(g, wc).violation.is_some() {
        return Ok(false);
    }
    Ok(is_globally_injective(wc) && is_coboundary(g, wc, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::RootDatum;
    use crate::Caps;

    fn cone(n: usize, g: &[&[i64]]) -> Cone {
        let gens: Vec<Vec<i64>> = g.iter().map(|v| v.to_vec()).collect();
        Cone::from_generators(n, &gens)
    }

    #[test]
    fn elementary_a1() {
        let g = Group::named("A1").unwrap();
        let line = WComplex::from_cones(&g, &[cone(1, &[&[1], &[-1]])]);
        assert!(validate_complex(&g, &line).valid);
        assert_eq!(line.len(), 1);
        let (h0, h1) = cohomology(&g, &line).unwrap();
        assert_eq!(h0.to_string(), "Z/2");
        assert!(h1.is_trivial());

        let chambers = WComplex::from_cones(&g, &[cone(1, &[&[1]])]);
        assert!(validate_complex(&g, &chambers).valid);
        assert_eq!(irreducible_components(&g, &chambers).len(), 1);
        assert_eq!(orbit_classes(&g, &chambers).unwrap().len(), 2);
        let (h0, h1) = cohomology(&g, &chambers).unwrap();
        assert_eq!(h0, AbelianGroup::free(1));
        assert!(h1.is_trivial());
        assert!(semigroup_admissible(&g, &chambers, &Cocycle::trivial()).unwrap());
    }

    #[test]
    fn doubled_ray() {
        let g = Group::new(RootDatum::named("T1").unwrap(), Caps::default()).unwrap();
        let v = json!({"cones": [
            {"id": "r1", "generators": [[1]], "faces": ["o"]},
            {"id": "r2", "generators": [[1]], "faces": ["o"]},
            {"id": "o", "generators": []}
        ]});
        let wc = WComplex::from_json(&g, &v).unwrap();
        assert!(validate_complex(&g, &wc).valid);
        assert_eq!(irreducible_components(&g, &wc).len(), 2);
        let (h0, h1) = cohomology(&g, &wc).unwrap();
        assert_eq!(h0, AbelianGroup::free(2));
        assert!(h1.is_trivial());
        assert!(!semigroup_admissible(&g, &wc, &Cocycle::trivial()).unwrap());
    }

    #[test]
    fn overlapping_cones_violate_axiom_3() {
        let g = Group::named("T2").unwrap();
        let v = json!({"cones": [
            {"id": "a", "generators": [[1, 0], [0, 1]], "faces": ["x", "y", "o"]},
            {"id": "c", "generators": [[2, 1], [1, -1]], "faces": ["p", "q", "o"]},
            {"id": "x", "generators": [[1, 0]], "faces": ["o"]},
            {"id": "y", "generators": [[0, 1]], "faces": ["o"]},
            {"id": "p", "generators": [[2, 1]], "faces": ["o"]},
            {"id": "q", "generators": [[1, -1]], "faces": ["o"]},
            {"id": "o", "generators": []}
        ]});
        let wc = WComplex::from_json(&g, &v).unwrap();
        let rep = validate_complex(&g, &wc);
        assert_eq!(rep.violation.unwrap().axiom, 3);
        let v = json!({"cones": [
            {"id": "a", "generators": [[1, 0], [0, 1]]},
            {"id": "o", "generators": []}
        ]});
        let wc = WComplex::from_json(&g, &v).unwrap();
        assert_eq!(validate_complex(&g, &wc).violation.unwrap().axiom, 2);
    }

    pub(crate) fn two_squares() -> Value {
        let mut cones = Vec::new();
        for s in ["s1", "s2"] {
            cones.push(
                json!({"id": s, "generators": [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]],
                "faces": ["Fa", "Fb", format!("G23{s}"), format!("G41{s}")]}),
            );
            cones.push(json!({"id": format!("G23{s}"), "generators": [[0, 1, 1], [-1, 0, 1]], "faces": ["r2", "r3"]}));
            cones.push(json!({"id": format!("G41{s}"), "generators": [[0, -1, 1], [1, 0, 1]], "faces": ["r4", "r1"]}));
        }
        cones
            .push(json!({"id": "Fa", "generators": [[1, 0, 1], [0, 1, 1]], "faces": ["r1", "r2"]}));
        cones.push(
            json!({"id": "Fb", "generators": [[-1, 0, 1], [0, -1, 1]], "faces": ["r3", "r4"]}),
        );
        for (i, r) in [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]
            .iter()
            .enumerate()
        {
            cones.push(json!({"id": format!("r{}", i + 1), "generators": [r], "faces": ["o"]}));
        }
        cones.push(json!({"id": "o", "generators": []}));
        json!({"cones": cones})
    }

    #[test]
    fn two_squares_have_a_cycle() {
        let g = Group::named("T3").unwrap();
        let wc = WComplex::from_json(&g, &two_squares()).unwrap();
        assert!(validate_complex(&g, &wc).valid);
        let (h0, h1) = cohomology(&g, &wc).unwrap();
        assert_eq!(h0.to_string(), "Z^3 + Z/2");
        assert_eq!(h1, AbelianGroup::free(1));
        assert!(is_coboundary(&g, &wc, &Cocycle::trivial()).unwrap());
        let t = Cocycle::from_json(
            &g,
            &wc,
            &json!({
                "value_group": {"z": 2},
                "entries": [
                    {"face": "Fa", "cone": "s1", "images": [{"z": 1}, {}, {}]},
                    {"face": "r1", "cone": "s1", "images": [{"z": 1}, {}, {}]},
                    {"face": "r1", "cone": "G41s1", "images": [{"z": 1}, {}, {}]}
                ]
            }),
        )
        .unwrap();
        assert!(!is_coboundary(&g, &wc, &t).unwrap());
        let broken = Cocycle::from_json(
            &g,
            &wc,
            &json!({
                "value_group": {"z": 2},
                "entries": [{"face": "Fa", "cone": "s1", "images": [{"z": 1}, {}, {}]}]
            }),
        )
        .unwrap();
        assert!(matches!(
            is_coboundary(&g, &wc, &broken),
            Err(Error::NotACocycle(_))
        ));
    }
}
