//! Structured run reports.
//!
//! Every CLI invocation produces one [`Report`]: the command echo, a
//! sha256 digest per input file, named computed values rendered as
//! canonical weight literals, per-check lines, and a verdict. PASS means
//! every asserted identity held exactly; FAIL means some identity was
//! violated; ERROR means the run never got to assert anything. Both
//! renderings are byte-deterministic for identical inputs.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::ring::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub check: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub inputs: Vec<InputDigest>,
    pub values: Vec<NamedValue>,
    pub checks: Vec<CheckLine>,
    pub verdict: Verdict,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            mode: None,
            inputs: Vec::new(),
            values: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
            exit_code: 0,
        }
    }

    pub fn set_mode(&mut self, mode: Mode) {
        self.mode = Some(mode.to_string());
    }

    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn add_value(&mut self, name: &str, value: impl ToString) {
        self.values.push(NamedValue {
            name: name.to_string(),
            value: value.to_string(),
        });
    }

    pub fn add_check(&mut self, check: &str, ok: bool, note: &str) {
        self.checks.push(CheckLine {
            check: check.to_string(),
            ok,
            note: note.to_string(),
        });
    }

    /// Settles verdict and exit code from the accumulated check lines.
    pub fn finalize(mut self) -> Report {
        if self.checks.iter().all(|c| c.ok) {
            self.verdict = Verdict::Pass;
            self.exit_code = 0;
        } else {
            self.verdict = Verdict::Fail;
            self.exit_code = 1;
        }
        self
    }

    /// Report for a run that failed before asserting anything.
    pub fn from_error(command: impl Into<String>, inputs: Vec<InputDigest>, err: &Error) -> Report {
        Report {
            command: command.into(),
            mode: None,
            inputs,
            values: Vec::new(),
            checks: vec![CheckLine {
                check: "error".into(),
                ok: false,
                note: err.to_string(),
            }],
            verdict: Verdict::Error,
            exit_code: err.exit_code(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kw = self
            .values
            .iter()
            .map(|v| v.name.len())
            .chain([9])
            .max()
            .unwrap()
            + 2;
        out.push_str(&format!("{:<kw$}{}\n", "command", self.command));
        if let Some(mode) = &self.mode {
            out.push_str(&format!("{:<kw$}{mode}\n", "mode"));
        }
        for i in &self.inputs {
            out.push_str(&format!("{:<kw$}{}  sha256={}\n", "input", i.path, i.sha256));
        }
        for v in &self.values {
            out.push_str(&format!("{:<kw$}{}\n", v.name, v.value));
        }
        for c in &self.checks {
            let flag = if c.ok { "[ok]  " } else { "[FAIL]" };
            if c.note.is_empty() {
                out.push_str(&format!("{flag} {}\n", c.check));
            } else {
                out.push_str(&format!("{flag} {} ({})\n", c.check, c.note));
            }
        }
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        };
        out.push_str(&format!("{:<kw$}{verdict}\n", "verdict"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn verdict_and_exit_code_follow_checks() {
        let mut r = Report::new("det --matrix m.json");
        r.set_mode(Mode::Rational);
        r.add_value("det", "-2");
        r.add_check("determinant equals charpoly route", true, "");
        let r = r.finalize();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.exit_code, 0);

        let mut f = Report::new("newton");
        f.add_check("residual vanishes", false, "residual = 3");
        let f = f.finalize();
        assert_eq!(f.verdict, Verdict::Fail);
        assert_eq!(f.exit_code, 1);

        let e = Report::from_error("det", vec![], &Error::Singular);
        assert_eq!(e.verdict, Verdict::Error);
        assert_eq!(e.exit_code, 2);
        assert!(e.to_text().contains("SINGULAR"));

        let c = Report::from_error(
            "det",
            vec![],
            &Error::CapExceeded {
                what: "matrix dimension",
                actual: 12,
                limit: 10,
            },
        );
        assert_eq!(c.exit_code, 3);
    }

    #[test]
    fn json_round_trips_and_text_is_aligned() {
        let mut r = Report::new("lgv --graph g.json --sources 0,1 --sinks 2,3");
        r.set_mode(Mode::Rational);
        r.add_input("g.json", b"{}");
        r.add_value("det_path_matrix", "10");
        r.add_value("vd_signed_sum", "10");
        r.add_check("determinant equals vd signed sum", true, "1 vd system");
        let r = r.finalize();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let text = r.to_text();
        assert!(text.contains("det_path_matrix  10"));
        assert!(text.ends_with("verdict          PASS\n"));
        assert!(text.contains("[ok]   determinant equals vd signed sum (1 vd system)"));
    }

    #[test]
    fn verdicts_serialize_screaming() {
        let r = Report::new("x").finalize();
        assert!(r.to_json().contains("\"PASS\""));
    }
}
