//! Machine-readable verification reports.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::ntheory::GraphParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Thm1,
    Corollary,
    Lemma2,
    Thm2Stated,
    Thm2Recurrence,
    FactI,
    FactIi,
    Lemma1,
    PerturbedBlocks,
}

impl Claim {
    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Thm1 => "thm1",
            Claim::Corollary => "corollary",
            Claim::Lemma2 => "lemma2",
            Claim::Thm2Stated => "thm2_stated",
            Claim::Thm2Recurrence => "thm2_recurrence",
            Claim::FactI => "fact_i",
            Claim::FactIi => "fact_ii",
            Claim::Lemma1 => "lemma1",
            Claim::PerturbedBlocks => "perturbed_blocks",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Violation,
}

/// Parameters a report was produced for. Absent fields are omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ParamRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl From<&GraphParams> for ParamRecord {
    fn from(params: &GraphParams) -> Self {
        ParamRecord {
            p: Some(params.p()),
            n: Some(params.n()),
            q: Some(params.q()),
            ..Default::default()
        }
    }
}

pub(crate) fn as_decimal<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_str_radix(10))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    /// `k` for per-length claims, `n` for per-level claims, a residue or
    /// configuration number for structural checks.
    pub index: u64,
    /// Walk length, for rows indexed by level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(serialize_with = "as_decimal")]
    pub observed: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub bound: BigUint,
    pub satisfied: bool,
}

/// Outcome of checking one claim on one parameter set.
///
/// `verdict` is `Pass` exactly when every row is satisfied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    claim: Claim,
    params: ParamRecord,
    rows: Vec<ReportRow>,
    verdict: Verdict,
    notes: String,
}

impl VerificationReport {
    pub fn new(claim: Claim, params: ParamRecord) -> Self {
        VerificationReport {
            claim,
            params,
            rows: Vec::new(),
            verdict: Verdict::Pass,
            notes: String::new(),
        }
    }

    pub fn push_row(
        &mut self,
        index: u64,
        observed: impl Into<BigUint>,
        bound: impl Into<BigUint>,
        satisfied: bool,
    ) {
        self.push(ReportRow {
            index,
            k: None,
            observed: observed.into(),
            bound: bound.into(),
            satisfied,
        });
    }

    pub fn push(&mut self, row: ReportRow) {
        if !row.satisfied {
            self.verdict = Verdict::Violation;
        }
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl AsRef<str>) {
        if !self.notes.is_empty() {
            self.notes.push('\n');
        }
        self.notes.push_str(text.as_ref());
    }

    pub fn claim(&self) -> Claim {
        self.claim
    }

    pub fn params(&self) -> &ParamRecord {
        &self.params
    }

    pub fn rows(&self) -> &[ReportRow] {
        &self.rows
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn notes(&self) -> &str {
        &self.notes
    }

    pub fn first_violation(&self) -> Option<&ReportRow> {
        self.rows.iter().find(|row| !row.satisfied)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Orders reports by parameter tuple, then claim, so merged output does not
/// depend on the order workers finished in.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| (&a.params, a.claim).cmp(&(&b.params, b.claim)));
}
