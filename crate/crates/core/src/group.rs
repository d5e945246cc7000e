use crate::caps::Caps;
use crate::cones::Cone;
use crate::error::Result;
use crate::root_datum::{RootDatum, WeylGroup};

/// A root datum together with its Weyl group and dominant chamber, the
/// shared context of every geometric computation.
#[derive(Debug, Clone)]
pub struct Group {
    rd: RootDatum,
    weyl: WeylGroup,
    chamber: Cone,
    caps: Caps,
}

impl Group {
    pub fn new(rd: RootDatum, caps: Caps) -> Result<Group> {
        let weyl = rd.weyl_group(caps.weyl_order)?;
        let chamber = rd.dominant_chamber();
        Ok(Group {
            rd,
            weyl,
            chamber,
            caps,
        })
    }

    pub fn named(name: &str) -> Result<Group> {
        Group::new(RootDatum::named(name)?, Caps::default())
    }

    pub fn rd(&self) -> &RootDatum {
        &self.rd
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// The dominant chamber as a cone.
    pub fn chamber(&self) -> &Cone {
        &self.chamber
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    pub fn simple_indices(&self) -> Vec<usize> {
        (0..self.rd.semisimple_rank()).collect()
    }

    pub fn translate(&self, w: usize, c: &Cone) -> Cone {
        c.apply_matrix(self.weyl.matrix(w))
    }

    /// `{w : w c = c}`.
    pub fn stabilizer(&self, c: &Cone) -> Vec<usize> {
        (0..self.weyl.len())
            .filter(|&w| self.translate(w, c) == *c)
            .collect()
    }

    /// Whether the relative interior of `c` meets the dominant chamber.
    pub fn meets_chamber(&self, c: &Cone) -> bool {
        let p = c.intersect(&self.chamber).relint_point();
        c.contains_in_relint(&p)
    }

    /// Simple-root names `a1, a2, ...`.
    pub fn root_names(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|i| format!("a{}", i + 1)).collect()
    }

    /// Parses simple-root names (`a1`, `alpha2`, or a bare 1-based index).
    pub fn parse_roots(&self, names: &[String]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for n in names {
            let t = n.trim();
            let digits = t.trim_start_matches(|c: char| c.is_alphabetic() || c == '_');
            let i: usize = digits
                .parse()
                .map_err(|_| crate::Error::BadInput(format!("bad simple root name {t:?}")))?;
            if i == 0 || i > self.rd.semisimple_rank() {
                return Err(crate::Error::BadInput(format!("no simple root {t:?}")));
            }
            if !out.contains(&(i - 1)) {
                out.push(i - 1);
            }
        }
        out.sort();
        Ok(out)
    }
}
