use std::fmt::Write as _;
use std::time::Instant;

use ncimc_core::Check;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Value,
}

/// One output line. Field order is the serialization order.
#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub instance: String,
    pub name: String,
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
    pub millis: u64,
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Collects records for one command invocation.
pub struct Recorder {
    command: String,
    instance: String,
    pub records: Vec<ResultRecord>,
}

impl Recorder {
    pub fn new(command: &str, instance_text: &str) -> Self {
        Recorder {
            command: command.into(),
            instance: digest(instance_text),
            records: Vec::new(),
        }
    }

    pub fn value(&mut self, name: &str, value: String, started: Instant) {
        self.push(name, value, String::new(), Verdict::Value, started);
    }

    pub fn check(&mut self, check: Check, started: Instant) {
        let verdict = if check.pass { Verdict::Pass } else { Verdict::Fail };
        self.push(&check.name, check.left, check.right, verdict, started);
    }

    fn push(&mut self, name: &str, left: String, right: String, verdict: Verdict, started: Instant) {
        self.records.push(ResultRecord {
            command: self.command.clone(),
            instance: self.instance.clone(),
            name: name.into(),
            left,
            right,
            verdict,
            millis: started.elapsed().as_millis() as u64,
        });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

/// Text output leaves out timings so that it is byte-stable.
pub fn render(records: &[ResultRecord], format: Format) -> String {
    let mut out = String::new();
    for r in records {
        match format {
            Format::JsonLines => {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
            Format::Text => {
                let _ = match r.verdict {
                    Verdict::Value => writeln!(out, "{}: {}", r.name, r.left),
                    Verdict::Pass | Verdict::Fail => writeln!(
                        out,
                        "[{}] {}: {} | {}",
                        if r.verdict == Verdict::Pass { "PASS" } else { "FAIL" },
                        r.name,
                        r.left,
                        r.right
                    ),
                };
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(
            digest(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn text_lines() {
        let mut rec = Recorder::new("lfun euler", "x");
        let t = Instant::now();
        rec.value("euler", "1 + T".into(), t);
        rec.check(Check::new("twist", "a", "a", true), t);
        assert_eq!(render(&rec.records, Format::Text), "euler: 1 + T\n[PASS] twist: a | a\n");
        let json = render(&rec.records, Format::JsonLines);
        assert!(json.starts_with("{\"command\":\"lfun euler\",\"instance\":"));
    }
}
