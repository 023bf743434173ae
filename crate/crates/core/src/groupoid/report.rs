use serde::Serialize;

/// Outcome of checking one identity over a finite set of instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    #[serde(rename = "pass")]
    pub passed: bool,
    pub checked: usize,
    /// First failing instance, `null` on pass.
    pub counterexample: Option<String>,
}

impl LawCheck {
    /// Runs `check` on every instance, stopping at the first failure.
    pub fn run<T, I, F>(law: &str, instances: I, mut check: F) -> LawCheck
    where
        I: IntoIterator<Item = T>,
        F: FnMut(T) -> std::result::Result<(), String>,
    {
        let mut checked = 0;
        for item in instances {
            checked += 1;
            if let Err(e) = check(item) {
                return LawCheck {
                    law: law.to_string(),
                    passed: false,
                    checked,
                    counterexample: Some(e),
                };
            }
        }
        LawCheck {
            law: law.to_string(),
            passed: true,
            checked,
            counterexample: None,
        }
    }
}

/// Per-law results for one construction, with the truncation bounds used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    #[serde(rename = "maxAbsM")]
    pub max_abs_m: usize,
    #[serde(rename = "maxWitness")]
    pub max_witness: usize,
    pub elements: usize,
    pub laws: Vec<LawCheck>,
    #[serde(rename = "pass")]
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(subject: &str, max_abs_m: usize, max_witness: usize, elements: usize, laws: Vec<LawCheck>) -> Self {
        let passed = laws.iter().all(|l| l.passed);
        VerificationReport {
            subject: subject.to_string(),
            max_abs_m,
            max_witness,
            elements,
            laws,
            passed,
        }
    }

    pub fn law(&self, name: &str) -> Option<&LawCheck> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn failures(&self) -> Vec<&LawCheck> {
        self.laws.iter().filter(|l| !l.passed).collect()
    }
}

/// `Ok` when `a == b`, otherwise a message built lazily.
pub(crate) fn ensure<F: FnOnce() -> String>(ok: bool, msg: F) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}
