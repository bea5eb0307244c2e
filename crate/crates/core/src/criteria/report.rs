use serde::Serialize;

/// Outcome of one condition check. Sampled passes are never reported as
/// plain `pass`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    PassSampled,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::PassSampled)
    }
}

/// Whatever decides a verdict: an index, a time, a point, a pair or a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Index(usize),
    Scalar(f64),
    Point(Vec<f64>),
    Pair(Vec<f64>, Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionRecord {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub near_ties: Option<usize>,
    /// Sufficient-condition checks whose failure alone decides nothing.
    /// Excluded from [`CriteriaReport::overall`].
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub advisory: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl ConditionRecord {
    pub fn new(id: impl Into<String>, verdict: Verdict) -> Self {
        Self {
            id: id.into(),
            verdict,
            worst: None,
            witness: None,
            samples: 0,
            seed: None,
            near_ties: None,
            advisory: false,
            note: String::new(),
        }
    }

    pub fn worst(mut self, v: f64) -> Self {
        self.worst = Some(v);
        self
    }

    pub fn witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn samples(mut self, k: usize) -> Self {
        self.samples = k;
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = Some(s);
        self
    }

    pub fn near_ties(mut self, k: usize) -> Self {
        self.near_ties = Some(k);
        self
    }

    pub fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.note = s.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriteriaReport {
    pub model: String,
    pub n: usize,
    pub seed: u64,
    pub conditions: Vec<ConditionRecord>,
}

impl CriteriaReport {
    pub fn get(&self, id: &str) -> Option<&ConditionRecord> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn overall(&self) -> Verdict {
        let verdicts = self.conditions.iter().filter(|c| !c.advisory).map(|c| c.verdict);
        if verdicts.clone().any(|v| v == Verdict::Fail) {
            Verdict::Fail
        } else if verdicts.clone().any(|v| v == Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else if verdicts.clone().all(|v| v == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::PassSampled
        }
    }

    /// 0 when everything passes, 1 on any failure, 2 when inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.overall() {
            Verdict::Pass | Verdict::PassSampled => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}
