use std::io::Write;
use std::process::{Command, Stdio};

use rand::RngCore;

use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::Learner;

/// Environment variable through which a subprocess learner receives a seed
/// for its internal randomness.
pub const LEARNER_SEED_ENV: &str = "REVCURVE_LEARNER_SEED";

/// Runs an external program as a black-box learner.
///
/// Protocol: the program reads the sample size `n` followed by `n`
/// whitespace-separated values on stdin and writes one price to stdout.
#[derive(Debug, Clone)]
pub struct SubprocessLearner {
    program: String,
    args: Vec<String>,
    deterministic: bool,
}

impl SubprocessLearner {
    pub fn new(program: impl Into<String>, args: Vec<String>, deterministic: bool) -> Self {
        Self {
            program: program.into(),
            args,
            deterministic,
        }
    }

    /// Splits a command line on whitespace.
    pub fn from_command_line(cmd: &str, deterministic: bool) -> Result<Self> {
        let mut parts = cmd.split_whitespace().map(str::to_string);
        let program = parts
            .next()
            .ok_or_else(|| Error::parse(cmd, "empty subprocess command"))?;
        Ok(Self::new(program, parts.collect(), deterministic))
    }

    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::Learner {
            name: self.name_string(),
            reason: reason.into(),
        }
    }

    fn name_string(&self) -> String {
        let kind = if self.deterministic {
            "subprocess"
        } else {
            "subprocess-randomized"
        };
        let mut s = format!("{kind}:{}", self.program);
        for a in &self.args {
            s.push(' ');
            s.push_str(a);
        }
        s
    }
}

impl<T: Real> Learner<T> for SubprocessLearner {
    fn name(&self) -> String {
        self.name_string()
    }

    fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    fn decide(&self, sample: &Sample<T>, rng: &mut dyn RngCore) -> Result<T> {
        let mut input = format!("{}\n", sample.len());
        let body: Vec<String> = sample.values().iter().map(|v| v.to_string()).collect();
        input.push_str(&body.join(" "));
        input.push('\n');

        let mut child = Command::new(&self.program)
            .args(&self.args)
            .env(LEARNER_SEED_ENV, rng.next_u64().to_string())
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| self.fail(format!("spawn: {e}")))?;
        child
            .stdin
            .take()
            .expect("stdin piped")
            .write_all(input.as_bytes())
            .map_err(|e| self.fail(format!("write: {e}")))?;
        let out = child
            .wait_with_output()
            .map_err(|e| self.fail(format!("wait: {e}")))?;
        if !out.status.success() {
            return Err(self.fail(format!(
                "exit {}: {}",
                out.status,
                String::from_utf8_lossy(&out.stderr).trim()
            )));
        }
        let text = String::from_utf8_lossy(&out.stdout);
        let token = text
            .split_whitespace()
            .next()
            .ok_or_else(|| self.fail("no output"))?;
        let price: f64 = token
            .parse()
            .map_err(|_| self.fail(format!("unparseable price `{token}`")))?;
        if !(price >= 0.0) || !price.is_finite() {
            return Err(self.fail(format!("invalid price {price}")));
        }
        Ok(T::lit(price))
    }
}
