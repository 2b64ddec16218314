use serde::Serialize;

/// Cap on the number of violations any exhaustive checker will keep.
pub const MAX_VIOLATIONS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Number of instances examined.
    pub checked: u64,
    /// True when violations were dropped because of the cap.
    pub truncated: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(v);
        } else {
            self.truncated = true;
        }
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checked += other.checked;
        self.truncated |= other.truncated;
        for v in other.violations {
            self.push(v);
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.passed() {
            out.push_str(&format!("pass ({} instances checked)\n", self.checked));
            return out;
        }
        out.push_str(&format!(
            "fail: {} violation(s){} over {} instances\n",
            self.violations.len(),
            if self.truncated { " (truncated)" } else { "" },
            self.checked
        ));
        for v in &self.violations {
            out.push_str(&format!("  {} at {:?}: {}\n", v.rule, v.witness, v.detail));
        }
        out
    }
}
