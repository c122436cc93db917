//! Verification reports and the accumulator used by every check.

use serde::{Deserialize, Serialize};

use crate::rational::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DeviationDocumented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateLabel {
    pub m: usize,
    pub n: usize,
}

/// One addressable check. Failing and deviating checks carry the first
/// counterexample with both exact sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateLabel>,
    pub cases: usize,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub m_max: usize,
    pub n_max: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { m_max: 6, n_max: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub suite: String,
    pub params: Vec<Params>,
    pub bounds: Bounds,
    pub timestamp: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, params: Vec<Params>, bounds: Bounds, checks: Vec<Check>) -> Self {
        let mut report = Report {
            meta: Meta {
                tool: "superint".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                suite: suite.into(),
                params,
                bounds,
                timestamp: None,
            },
            checks,
        };
        report.sort();
        report
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn merge(&mut self, other: Report) {
        self.meta.params.extend(other.meta.params);
        self.checks.extend(other.checks);
        self.sort();
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// How a mismatch is classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// A required identity: any mismatch fails.
    Holds,
    /// A printed formula compared with the derived one: a mismatch is a
    /// documented deviation.
    Printed,
}

/// Collects the outcome of one identity over many states.
#[derive(Debug)]
pub struct CheckBuilder {
    id: String,
    anchor: String,
    expect: Expect,
    cases: usize,
    mismatches: usize,
    first: Option<(Option<StateLabel>, String, String)>,
    notes: Vec<String>,
}

impl CheckBuilder {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, expect: Expect) -> Self {
        CheckBuilder {
            id: id.into(),
            anchor: anchor.into(),
            expect,
            cases: 0,
            mismatches: 0,
            first: None,
            notes: Vec::new(),
        }
    }

    /// Records one case. Sides are rendered only when needed.
    pub fn record(
        &mut self,
        state: Option<(usize, usize)>,
        ok: bool,
        lhs: impl FnOnce() -> String,
        rhs: impl FnOnce() -> String,
    ) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.first.is_none() {
                let state = state.map(|(m, n)| StateLabel { m, n });
                self.first = Some((state, lhs(), rhs()));
            }
        }
    }

    /// Records an equality between two displayable values.
    pub fn compare<T: PartialEq + std::fmt::Display>(&mut self, state: Option<(usize, usize)>, lhs: &T, rhs: &T) {
        self.record(state, lhs == rhs, || lhs.to_string(), || rhs.to_string());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn mismatches(&self) -> usize {
        self.mismatches
    }

    pub fn finish(self) -> Check {
        let status = match (self.mismatches, self.expect) {
            (0, _) => Status::Pass,
            (_, Expect::Holds) => Status::Fail,
            (_, Expect::Printed) => Status::DeviationDocumented,
        };
        let mut details = if self.mismatches == 0 {
            format!("{} case(s) verified exactly", self.cases)
        } else {
            format!("{} of {} case(s) differ", self.mismatches, self.cases)
        };
        for n in &self.notes {
            details.push_str("; ");
            details.push_str(n);
        }
        let (state, lhs, rhs) = match self.first {
            Some((s, l, r)) => (s, Some(l), Some(r)),
            None => (None, None, None),
        };
        Check {
            id: self.id,
            anchor: self.anchor,
            status,
            lhs,
            rhs,
            state,
            cases: self.cases,
            details,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_mismatch_is_a_deviation() {
        let mut b = CheckBuilder::new("x", "a", Expect::Printed);
        b.compare(Some((1, 2)), &1, &2);
        let c = b.finish();
        assert_eq!(c.status, Status::DeviationDocumented);
        assert_eq!(c.state, Some(StateLabel { m: 1, n: 2 }));
        assert_eq!(c.lhs.as_deref(), Some("1"));
    }

    #[test]
    fn report_round_trips_through_json() {
        let mut b = CheckBuilder::new("b", "a", Expect::Holds);
        b.compare(None, &3, &4);
        let c1 = b.finish();
        let c2 = CheckBuilder::new("a", "a", Expect::Holds).finish();
        let r = Report::new("unit", vec![], Bounds::default(), vec![c1, c2]);
        assert_eq!(r.checks[0].id, "a");
        assert!(r.has_failures());
        let text = serde_json::to_string_pretty(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }
}
