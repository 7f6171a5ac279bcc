use serde::Serialize;

/// Outcome of an exhaustive check. A failure carries the lexicographically
/// least counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "counterexample", rename_all = "lowercase")]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn counterexample(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }

    pub fn into_counterexample(self) -> Option<W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }

    pub(crate) fn from_option(w: Option<W>) -> Self {
        w.map_or(Check::Pass, Check::Fail)
    }
}
