use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::args::Format;

#[derive(Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Unequal,
    Skipped,
}

#[derive(Serialize, Debug, Clone)]
pub struct Route {
    pub name: String,
    pub value: Value,
}

/// Two independent computations of the same quantity.
#[derive(Serialize, Debug, Clone)]
pub struct CrossCheck {
    pub name: String,
    pub routes: Vec<Route>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CrossCheck {
    pub fn compare(name: &str, a: (&str, Value), b: (&str, Value)) -> Self {
        let verdict = if a.1 == b.1 { Verdict::Equal } else { Verdict::Unequal };
        CrossCheck {
            name: name.into(),
            routes: vec![Route { name: a.0.into(), value: a.1 }, Route { name: b.0.into(), value: b.1 }],
            verdict,
            note: None,
        }
    }

    pub fn skipped(name: &str, why: impl Into<String>) -> Self {
        CrossCheck { name: name.into(), routes: Vec::new(), verdict: Verdict::Skipped, note: Some(why.into()) }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub results: Value,
    pub cross_checks: Vec<CrossCheck>,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    /// Human-readable lines, printed above the machine section.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: &Value) -> Self {
        let digest = Sha256::digest(serde_json::to_vec(inputs).expect("plain JSON"));
        Report {
            command: command.into(),
            inputs_digest: hex::encode(digest),
            results: Value::Null,
            cross_checks: Vec::new(),
            assumptions: Vec::new(),
            notes: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn check(&mut self, c: CrossCheck) {
        self.cross_checks.push(c);
    }

    /// False iff some cross-check came out unequal.
    pub fn passed(&self) -> bool {
        self.cross_checks.iter().all(|c| c.verdict != Verdict::Unequal)
    }

    /// The deterministic machine-readable section.
    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain JSON")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.machine()),
            Format::Text => {
                let mut out = format!("# {}\n", self.command);
                for l in &self.summary {
                    out.push_str(l);
                    out.push('\n');
                }
                if !self.cross_checks.is_empty() {
                    out.push_str("\ncross-checks:\n");
                    for c in &self.cross_checks {
                        let v = match c.verdict {
                            Verdict::Equal => "equal",
                            Verdict::Unequal => "UNEQUAL",
                            Verdict::Skipped => "skipped",
                        };
                        let routes: Vec<String> = c.routes.iter().map(|r| format!("{} = {}", r.name, r.value)).collect();
                        let mut parts = vec![v.to_string()];
                        if !routes.is_empty() {
                            parts.push(routes.join(", "));
                        }
                        parts.extend(c.note.clone());
                        out.push_str(&format!("  {}: {}\n", c.name, parts.join("; ")));
                    }
                }
                for a in &self.assumptions {
                    out.push_str(&format!("assumption: {a}\n"));
                }
                for n in &self.notes {
                    out.push_str(&format!("note: {n}\n"));
                }
                out.push_str(MACHINE_BEGIN);
                out.push('\n');
                out.push_str(&self.machine());
                out.push('\n');
                out.push_str(MACHINE_END);
                out.push('\n');
                out
            }
        }
    }
}

pub const MACHINE_BEGIN: &str = "----- machine -----";
pub const MACHINE_END: &str = "----- end machine -----";

/// The machine section of rendered output in either format.
pub fn machine_section(rendered: &str) -> Option<&str> {
    match (rendered.find(MACHINE_BEGIN), rendered.find(MACHINE_END)) {
        (Some(a), Some(b)) if a < b => Some(rendered[a + MACHINE_BEGIN.len()..b].trim()),
        (None, None) => Some(rendered.trim()),
        _ => None,
    }
}
