use serde_json::Value;

use redvar_core::{Caps, Cone, Error, Group, RootDatum};

/// Why a request failed: malformed input exits with 2, domain errors
/// with 1.
#[derive(Debug)]
pub enum Failure {
    Malformed(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadInput(m) => Failure::Malformed(m),
            Error::RankMismatch(_) | Error::UnknownType(_) => Failure::Malformed(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub fn malformed<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Malformed(msg.into()))
}

/// Inline JSON (anything starting with `{` or `[`) or a path to a JSON
/// file.
pub fn json_arg(s: &str) -> Outcome<Value> {
    let t = s.trim();
    let text = if t.starts_with('{') || t.starts_with('[') {
        t.to_string()
    } else {
        std::fs::read_to_string(t)
            .map_err(|e| Failure::Malformed(format!("cannot read {t}: {e}")))?
    };
    serde_json::from_str(&text.replace('\u{2212}', "-"))
        .map_err(|e| Failure::Malformed(format!("invalid JSON: {e}")))
}

pub fn caps_from_env() -> Outcome<Caps> {
    match std::env::var("REDVAR_CAPS") {
        Ok(s) if !s.trim().is_empty() => Ok(Caps::from_str_or_path(&s)?),
        _ => Ok(Caps::default()),
    }
}

/// `--type A2` or `--root-datum '{"rank", "simple_roots", "simple_coroots"}'`.
pub fn group(ty: Option<&str>, datum: Option<&str>, caps: Caps) -> Outcome<Group> {
    let rd = match (ty, datum) {
        (Some(t), None) => RootDatum::named(t)?,
        (None, Some(d)) => {
            let v = json_arg(d)?;
            let field = |k: &str| {
                v.get(k)
                    .ok_or_else(|| Failure::Malformed(format!("root datum needs \"{k}\"")))
            };
            let rank = field("rank")?.as_u64().ok_or_else(|| {
                Failure::Malformed("\"rank\" must be a nonnegative integer".into())
            })?;
            let roots = redvar_core::cones::parse_int_matrix(field("simple_roots")?)?;
            let coroots = redvar_core::cones::parse_int_matrix(field("simple_coroots")?)?;
            RootDatum::explicit(rank as usize, roots, coroots)?
        }
        (Some(_), Some(_)) => return malformed("give either --type or --root-datum, not both"),
        (None, None) => return malformed("this subcommand needs --type or --root-datum"),
    };
    Ok(Group::new(rd, caps)?)
}

pub fn cone(g: &Group, s: &str) -> Outcome<Cone> {
    Ok(Cone::from_json(&json_arg(s)?, g.rank())?)
}

/// `1,0`, `[1,0]` or `(1,0)`.
pub fn weight(g: &Group, s: &str) -> Outcome<Vec<i64>> {
    let t = s.replace('\u{2212}', "-");
    let inner = t
        .trim()
        .trim_start_matches(['[', '('])
        .trim_end_matches([']', ')']);
    let w: Vec<i64> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Failure::Malformed(format!("bad weight {s:?}: {e}")))?
    };
    if w.len() != g.rank() {
        return malformed(format!(
            "weight {s:?} does not have {} coordinates",
            g.rank()
        ));
    }
    Ok(w)
}

/// Comma-separated simple-root names; empty means the empty set.
pub fn roots(g: &Group, s: &str) -> Outcome<Vec<usize>> {
    let names: Vec<String> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty() && *x != "-" && *x != "none")
        .map(String::from)
        .collect();
    let mut out = g.parse_roots(&names)?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
