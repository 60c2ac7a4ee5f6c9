//! Structured check results with deterministic JSON output.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Where the expected value of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Published tables and displays, stored in the catalog.
    Published,
    /// Frozen output of an independent computation.
    Computed,
    /// Structural property checked directly.
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub actual: Option<String>,
    pub origin: Origin,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub sections: Vec<Report>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool, origin: Origin) {
        self.add(name, ok, origin);
    }

    fn add(&mut self, name: impl Into<String>, ok: bool, origin: Origin) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: None,
            actual: None,
            origin,
        });
        self.checks.last_mut().unwrap()
    }

    /// Record a comparison; the values are kept only when they differ.
    pub fn compare<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, expected: &T, actual: &T, origin: Origin) {
        let ok = expected == actual;
        let c = self.add(name, ok, origin);
        if !ok {
            c.expected = Some(format!("{expected:?}"));
            c.actual = Some(format!("{actual:?}"));
        }
    }

    /// Record an operation that failed before it could be compared.
    pub fn error(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        let c = self.add(name, false, Origin::Structural);
        c.actual = Some(format!("error: {err}"));
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skip,
            expected: None,
            actual: Some(why.into()),
            origin: Origin::Structural,
        });
    }

    pub fn section(&mut self, r: Report) {
        self.sections.push(r);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail) && self.sections.iter().all(Report::all_pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
            + self.sections.iter().map(|s| s.count(status)).sum::<usize>()
    }

    /// Failed checks as `section / name` paths.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_failures("", &mut out);
        out
    }

    fn collect_failures(&self, prefix: &str, out: &mut Vec<String>) {
        let here = if prefix.is_empty() { self.title.clone() } else { format!("{prefix} / {}", self.title) };
        for c in &self.checks {
            if c.status == Status::Fail {
                let mut line = format!("{here} / {}", c.name);
                if let (Some(e), Some(a)) = (&c.expected, &c.actual) {
                    line.push_str(&format!(": expected {e}, got {a}"));
                } else if let Some(a) = &c.actual {
                    line.push_str(&format!(": {a}"));
                }
                out.push(line);
            }
        }
        for s in &self.sections {
            s.collect_failures(&here, out);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Indented text rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        out.push_str(&format!("{pad}{}\n", self.title));
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            out.push_str(&format!("{pad}  [{tag}] {}", c.name));
            match (&c.expected, &c.actual) {
                (Some(e), Some(a)) => out.push_str(&format!(" (expected {e}, got {a})")),
                (None, Some(a)) => out.push_str(&format!(" ({a})")),
                _ => {}
            }
            out.push('\n');
        }
        for s in &self.sections {
            s.render_into(depth + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("top");
        r.compare("dims", &vec![1, 2], &vec![1, 3], Origin::Published);
        let mut s = Report::new("inner");
        s.push("ok", true, Origin::Structural);
        s.skip("later", "not run");
        r.section(s);
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        assert!(!r.all_pass());
        assert_eq!(r.failures().len(), 1);
        assert_eq!(r.count(Status::Skip), 1);
    }
}
