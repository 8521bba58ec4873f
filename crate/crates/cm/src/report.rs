//! Reports: a fixed field order for JSON and a plain text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use cmalg::{Coefficients, Invariants};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u64 = 1;

/// What a group's invariants count: abelian groups, or vector spaces over the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Abelian,
    Vector(Coefficients),
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupEntry {
    pub name: String,
    pub free_rank: usize,
    pub torsion: Vec<Value>,
    #[serde(skip)]
    pub text: String,
}

impl GroupEntry {
    pub fn new(name: &str, inv: &Invariants, kind: Kind) -> GroupEntry {
        GroupEntry {
            name: name.to_string(),
            free_rank: inv.free_rank,
            torsion: inv.torsion.iter().map(number).collect(),
            text: match kind {
                Kind::Abelian => inv.to_string(),
                Kind::Vector(c) => vector_space(inv, c),
            },
        }
    }
}

fn number(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

/// "0", "Q^2", "F7" and so on.
fn vector_space(inv: &Invariants, c: Coefficients) -> String {
    let (field, dim) = match c {
        Coefficients::PrimeField(p) => (format!("F{p}"), inv.torsion.len() + inv.free_rank),
        _ => ("Q".to_string(), inv.free_rank + inv.torsion.len()),
    };
    match dim {
        0 => "0".into(),
        1 => field,
        d => format!("{field}^{d}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    HypothesesViolatedYes,
    HypothesesViolatedNo,
    Error,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::HypothesesViolatedYes => "hypotheses-violated-yes",
            Verdict::HypothesesViolatedNo => "hypotheses-violated-no",
            Verdict::Error => "error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Yes | Verdict::HypothesesViolatedYes => 0,
            Verdict::No | Verdict::HypothesesViolatedNo => 2,
            Verdict::Error => 1,
        }
    }
}

impl From<cmalg::milnork::Verdict> for Verdict {
    fn from(v: cmalg::milnork::Verdict) -> Self {
        use cmalg::milnork::Verdict as V;
        match v {
            V::Yes => Verdict::Yes,
            V::No => Verdict::No,
            V::HypothesesViolatedYes => Verdict::HypothesesViolatedYes,
            V::HypothesesViolatedNo => Verdict::HypothesesViolatedNo,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u64,
    pub check: String,
    pub input: Value,
    pub groups: Vec<GroupEntry>,
    pub hypotheses: BTreeMap<String, bool>,
    pub verdict: Option<Verdict>,
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Report {
    pub fn new(check: &str, input: Value) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            check: check.to_string(),
            input,
            groups: Vec::new(),
            hypotheses: BTreeMap::new(),
            verdict: None,
            details: BTreeMap::new(),
            runtime_ms: None,
        }
    }

    pub fn group(&mut self, name: &str, inv: &Invariants, kind: Kind) {
        self.groups.push(GroupEntry::new(name, inv, kind));
    }

    pub fn detail(&mut self, key: &str, v: impl Into<Value>) {
        self.details.insert(key.to_string(), v.into());
    }

    pub fn hypothesis(&mut self, key: &str, v: bool) {
        self.hypotheses.insert(key.to_string(), v);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// A lone group prints as just the group; anything else gets one line per item.
    pub fn to_text(&self) -> String {
        let bare = self.groups.len() == 1 && self.verdict.is_none() && self.hypotheses.is_empty() && self.details.is_empty();
        if bare {
            return format!("{}\n", self.groups[0].text);
        }
        let mut out = String::new();
        for g in &self.groups {
            let _ = writeln!(out, "{} = {}", g.name, g.text);
        }
        for (k, v) in &self.details {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{k}: {v}");
        }
        for (k, v) in &self.hypotheses {
            let _ = writeln!(out, "hypothesis {k}: {}", if *v { "holds" } else { "fails" });
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(out, "verdict: {}", v.as_str());
        }
        if let Some(ms) = self.runtime_ms {
            let _ = writeln!(out, "runtime_ms: {ms}");
        }
        out
    }
}
