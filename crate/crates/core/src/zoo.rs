//! Built-in catalog of named operads.
//!
//! Each entry is a source file in the presentation language, embedded at build
//! time. The free operads `mag_p_q_r` are generated on demand.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::presentation::{parse, OperadPresentation};

#[derive(Debug, Clone, Copy)]
pub struct ZooEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub source: &'static str,
}

macro_rules! entry {
    ($key:literal, $description:literal) => {
        ZooEntry {
            key: $key,
            description: $description,
            source: include_str!(concat!("../zoo/", $key, ".op")),
        }
    };
}

pub const ENTRIES: &[ZooEntry] = &[
    entry!("ass", "associative algebras"),
    entry!("com", "commutative associative algebras"),
    entry!("lie", "Lie algebras"),
    entry!("prelie", "right pre-Lie algebras"),
    entry!("leib", "right Leibniz algebras"),
    entry!("zinb", "right Zinbiel algebras"),
    entry!("perm", "right permutative algebras"),
    entry!("dend", "dendriform algebras"),
    entry!("diass", "diassociative algebras"),
    entry!("nilass", "two step nilpotent associative algebras"),
    entry!("nillie", "two step nilpotent Lie algebras"),
    entry!("pois", "Poisson algebras"),
    entry!("postlie", "post-Lie algebras"),
    entry!("postcom", "post-commutative algebras"),
    entry!("postcomdual", "Koszul dual of post-commutative algebras"),
    entry!("tridend", "dendriform trialgebras"),
    entry!("triass", "triassociative algebras"),
    entry!("comtrias", "commutative trialgebras"),
    entry!("lieadm", "Lie-admissible algebras"),
    entry!("prepois", "right pre-Poisson algebras"),
    entry!("dualprepois", "dual pre-Poisson algebras"),
    entry!("ldend", "L-dendriform algebras"),
    entry!("assBulletPois", "black product of Ass and Pois"),
    entry!("preLieBulletLeib", "black product of preLie and Leib"),
    entry!("preLieBulletPerm", "black product of preLie and Perm"),
    entry!("permCircPreLie", "white product of Perm and preLie"),
    entry!("assCircLeib", "white product of Ass and Leib"),
];

/// Keys of the fixed entries, in catalog order.
pub fn keys() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.key).collect()
}

/// Every fixed entry, parsed once.
pub fn all() -> &'static [OperadPresentation] {
    static ALL: OnceLock<Vec<OperadPresentation>> = OnceLock::new();
    ALL.get_or_init(|| {
        ENTRIES
            .iter()
            .map(|e| parse(e.source).unwrap_or_else(|err| panic!("zoo entry {}: {err}", e.key)))
            .collect()
    })
}

/// Accepts `mag_p_q_r` and `mag_{p,q,r}`.
pub fn parse_mag_key(key: &str) -> Option<(usize, usize, usize)> {
    let rest = key.strip_prefix("mag_")?;
    let inner = rest
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .map(|r| r.split(',').collect::<Vec<_>>())
        .unwrap_or_else(|| rest.split('_').collect());
    match inner.as_slice() {
        [p, q, r] => Some((p.trim().parse().ok()?, q.trim().parse().ok()?, r.trim().parse().ok()?)),
        _ => None,
    }
}

pub fn entry(key: &str) -> Option<&'static ZooEntry> {
    ENTRIES.iter().find(|e| e.key == key)
}

pub fn get(key: &str) -> Result<OperadPresentation> {
    if let Some((p, q, r)) = parse_mag_key(key) {
        return Ok(OperadPresentation::mag(p, q, r));
    }
    match ENTRIES.iter().position(|e| e.key == key) {
        Some(i) => Ok(all()[i].clone()),
        None => Err(Error::UnknownOperad {
            key: key.to_string(),
            valid: keys()
                .into_iter()
                .map(String::from)
                .chain(std::iter::once("mag_p_q_r".to_string()))
                .collect(),
        }),
    }
}
