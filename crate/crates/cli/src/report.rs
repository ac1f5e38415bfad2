use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub enum Verdict {
    Pass,
    /// Carries the first counterexample found.
    Fail(Value),
    Skipped(String),
}

impl Verdict {
    fn to_json(&self) -> Value {
        match self {
            Verdict::Pass => json!({ "status": "pass" }),
            Verdict::Fail(c) => json!({ "status": "fail", "counterexample": c }),
            Verdict::Skipped(r) => json!({ "status": "skipped", "reason": r }),
        }
    }

    fn word(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "FAIL",
            Verdict::Skipped(_) => "skipped",
        }
    }
}

/// Everything a subcommand produces. Rendered as text, JSON or CSV.
#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub spec: String,
    pub family: Option<String>,
    pub pdim: Option<u32>,
    pub result: Map<String, Value>,
    pub betti: Option<Value>,
    pub graded: Option<Vec<(usize, u64, u64)>>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub timing: Option<Duration>,
    /// Human-readable body, printed after the header.
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, spec: &str) -> Self {
        Report { command: command.into(), spec: spec.into(), ..Report::default() }
    }

    pub fn failed(&self) -> bool {
        self.verdicts.values().any(|v| matches!(v, Verdict::Fail(_)))
    }

    pub fn verdict(&mut self, name: &str, v: Verdict) {
        self.verdicts.insert(name.into(), v);
    }

    /// serde_json's default map keeps keys sorted, so equal inputs give
    /// byte-identical output.
    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("spec".into(), json!(self.spec));
        top.insert("family".into(), json!(self.family));
        top.insert("pdim".into(), json!(self.pdim));
        top.insert("result".into(), Value::Object(self.result.clone()));
        top.insert("betti".into(), self.betti.clone().unwrap_or(Value::Null));
        let graded = self
            .graded
            .as_ref()
            .map(|g| g.iter().map(|&(i, j, b)| json!({ "i": i, "j": j, "beta": b })).collect::<Vec<_>>());
        top.insert("graded".into(), json!(graded));
        let verdicts: Map<String, Value> = self.verdicts.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        top.insert("verdicts".into(), Value::Object(verdicts));
        if let Some(t) = self.timing {
            top.insert("timing_ms".into(), json!(t.as_secs_f64() * 1000.0));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,beta\n");
        for &(i, j, b) in self.graded.iter().flatten() {
            s.push_str(&format!("{i},{j},{b}\n"));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("spec: {}\n", self.spec);
        if let Some(f) = &self.family {
            s.push_str(&format!("family: {f}\n"));
        }
        if let Some(p) = self.pdim {
            s.push_str(&format!("pdim: {p}\n"));
        }
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        if !self.verdicts.is_empty() {
            s.push_str("verdicts:\n");
            for (k, v) in &self.verdicts {
                s.push_str(&format!("  {k}: {}", v.word()));
                match v {
                    Verdict::Fail(c) => s.push_str(&format!(" (first counterexample: {c})")),
                    Verdict::Skipped(r) => s.push_str(&format!(" ({r})")),
                    Verdict::Pass => {}
                }
                s.push('\n');
            }
        }
        if let Some(t) = self.timing {
            s.push_str(&format!("time: {:.3}s\n", t.as_secs_f64()));
        }
        s
    }
}
