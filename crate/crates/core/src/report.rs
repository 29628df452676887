use serde::Serialize;

/// Outcome of one named check item.  Failures carry a witness string.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A group of related check items, e.g. one verification pass.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            items: Vec::new(),
        }
    }

    pub fn record(&mut self, label: impl Into<String>, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.items.push(CheckItem {
            label: label.into(),
            passed,
            detail: if passed { None } else { detail },
        });
    }

    pub fn pass(&mut self, label: impl Into<String>) {
        self.record(label, true, None);
    }

    pub fn fail(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.record(label, false, Some(detail.into()));
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}
