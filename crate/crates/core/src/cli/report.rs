//! Structured text reports.

use std::fmt::{self, Write as _};

use serde::Serialize;

/// Verdict of one report section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    /// The statement this section checks.
    pub certifies: String,
    pub status: Status,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Section {
    pub fn new(title: impl Into<String>, certifies: impl Into<String>, status: Status) -> Self {
        Self { title: title.into(), certifies: certifies.into(), status, lines: Vec::new() }
    }

    pub fn check(title: impl Into<String>, certifies: impl Into<String>, ok: bool) -> Self {
        Self::new(title, certifies, Status::of(ok))
    }

    pub fn info(title: impl Into<String>, certifies: impl Into<String>) -> Self {
        Self::new(title, certifies, Status::Info)
    }

    pub fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }

    pub fn push(&mut self, l: impl Into<String>) {
        self.lines.push(l.into());
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub sections: usize,
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

/// A report: header, summary block, then one block per section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub parameters: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Self { command: command.into(), seed, parameters: Vec::new(), sections: Vec::new() }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.parameters.push((key.into(), value.to_string()));
    }

    pub fn add(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn summary(&self) -> Summary {
        let count = |st: Status| self.sections.iter().filter(|s| s.status == st).count();
        Summary { sections: self.sections.len(), passed: count(Status::Pass), failed: count(Status::Fail), info: count(Status::Info) }
    }

    pub fn passes(&self) -> bool {
        self.summary().failed == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let s = self.summary();
        let _ = writeln!(out, "# catloc report");
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "seed: {}", self.seed);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "summary: {}", serde_json::to_string(&s).expect("summary serializes"));
        let _ = writeln!(out, "verdict: {}", if s.failed == 0 { "PASS" } else { "FAIL" });
        for sec in &self.sections {
            let _ = writeln!(out);
            let _ = writeln!(out, "## [{}] {}", sec.status.tag(), sec.title);
            let _ = writeln!(out, "certifies: {}", sec.certifies);
            for l in &sec.lines {
                let _ = writeln!(out, "  {l}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_sections() {
        let mut r = Report::new("demo", 7);
        r.add(Section::check("a", "x", true));
        r.add(Section::check("b", "y", false).line("witness"));
        r.add(Section::info("c", "z"));
        let text = r.render();
        assert!(text.contains(r#"summary: {"sections":3,"passed":1,"failed":1,"info":1}"#));
        assert!(text.contains("## [FAIL] b\ncertifies: y\n  witness\n"));
        assert!(!r.passes());
    }
}
