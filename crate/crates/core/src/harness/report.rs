use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// The outcome of one identity on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub instance: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckReport {
    /// Compares two sides exactly, recording both on failure.
    pub fn compare<T: PartialEq + fmt::Debug>(
        identity: &str,
        instance: &str,
        left: &T,
        right: &T,
    ) -> CheckReport {
        let (verdict, detail) = if left == right {
            (Verdict::Pass, String::new())
        } else {
            (Verdict::Fail, format!("left={left:?} right={right:?}"))
        };
        CheckReport { identity: identity.into(), instance: instance.into(), verdict, detail }
    }

    pub fn pass(identity: &str, instance: &str) -> CheckReport {
        CheckReport {
            identity: identity.into(),
            instance: instance.into(),
            verdict: Verdict::Pass,
            detail: String::new(),
        }
    }

    pub fn skip(identity: &str, instance: &str, reason: impl fmt::Display) -> CheckReport {
        CheckReport {
            identity: identity.into(),
            instance: instance.into(),
            verdict: Verdict::Skip,
            detail: reason.to_string(),
        }
    }

    pub fn fail(identity: &str, instance: &str, detail: impl fmt::Display) -> CheckReport {
        CheckReport {
            identity: identity.into(),
            instance: instance.into(),
            verdict: Verdict::Fail,
            detail: detail.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "skip",
        };
        write!(f, "{v} {} [{}]", self.identity, self.instance)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = CheckReport::compare("x", "i", &1, &2);
        assert_eq!(
            r.to_json_line(),
            r#"{"identity":"x","instance":"i","verdict":"fail","detail":"left=1 right=2"}"#
        );
        assert!(CheckReport::compare("x", "i", &1, &1).passed());
    }
}
