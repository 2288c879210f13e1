//! Three-valued admissibility decisions combining number-field, group and
//! Brauer data.

mod abelian;
mod local;
mod tame;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};

pub use abelian::{abelian_admissible, abelian_preadmissible, place_order_key};
pub use local::{n_p, preadmissible, semicyclic_admissible, TAME_PLACE_BOUND};
pub use tame::{
    choose_presentation, liedahl_check, tame_admissible_solvable, tame_supporting_set, SieveOutcome, SupportEntry, SupportingSet,
    DEFAULT_SIEVE_BOUND,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Value {
    Yes,
    No,
    Undecided,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Value::Yes => "yes",
            Value::No => "no",
            Value::Undecided => "undecided",
        })
    }
}

/// A decision with its witness. Yes and no always carry a certificate;
/// undecided carries the reason.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: Value,
    pub certificate: Json,
    pub cites: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    pub fn yes(certificate: Json, cites: &[&str]) -> Self {
        Verdict { value: Value::Yes, certificate, cites: cites.iter().map(|s| s.to_string()).collect(), reason: None }
    }

    pub fn no(certificate: Json, cites: &[&str]) -> Self {
        Verdict { value: Value::No, certificate, cites: cites.iter().map(|s| s.to_string()).collect(), reason: None }
    }

    pub fn undecided(reason: impl Into<String>, cites: &[&str]) -> Self {
        Verdict {
            value: Value::Undecided,
            certificate: Json::Null,
            cites: cites.iter().map(|s| s.to_string()).collect(),
            reason: Some(reason.into()),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.value == Value::Yes
    }

    pub fn is_no(&self) -> bool {
        self.value == Value::No
    }

    pub fn cites(&self, tag: &str) -> bool {
        self.cites.iter().any(|c| c == tag)
    }

    fn add_cite(&mut self, tag: &str) {
        if !self.cites(tag) {
            self.cites.push(tag.to_string());
        }
    }

    /// Process exit status: 0 yes, 1 no, 2 undecided.
    pub fn exit_code(&self) -> i32 {
        match self.value {
            Value::Yes => 0,
            Value::No => 1,
            Value::Undecided => 2,
        }
    }
}

/// Merges per-prime verdicts: no if any component is no, else undecided if
/// any is undecided, else yes.
fn combine(parts: Vec<(u64, Verdict)>, cites: &[&str]) -> Verdict {
    let value = if parts.iter().any(|(_, v)| v.is_no()) {
        Value::No
    } else if parts.iter().any(|(_, v)| v.value == Value::Undecided) {
        Value::Undecided
    } else {
        Value::Yes
    };
    let mut out = Verdict { value, certificate: Json::Null, cites: Vec::new(), reason: None };
    for c in cites {
        out.add_cite(c);
    }
    let mut comps = serde_json::Map::new();
    let mut reasons = Vec::new();
    for (p, v) in &parts {
        for c in &v.cites {
            out.add_cite(c);
        }
        if let Some(r) = &v.reason {
            reasons.push(format!("p = {p}: {r}"));
        }
        let mut entry = json!({ "value": v.value, "cites": v.cites });
        if !v.certificate.is_null() {
            entry["certificate"] = v.certificate.clone();
        }
        if let Some(r) = &v.reason {
            entry["reason"] = json!(r);
        }
        comps.insert(p.to_string(), entry);
    }
    out.certificate = json!({ "components": comps });
    if value == Value::Undecided {
        out.reason = Some(reasons.join("; "));
    }
    out
}

/// Splits errors into hard failures and the ones that only make a verdict
/// undecided (precision exhaustion, size bounds).
fn soft<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ (Error::PrecisionExhausted { .. } | Error::SizeBound { .. })) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

/// Lexicographic order on (n, q) pairs.
pub fn lex_le(a: (u32, u64), b: (u32, u64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
}
