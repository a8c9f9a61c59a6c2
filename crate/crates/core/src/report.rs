//! Check records shared by every verifier, and fixed-precision float
//! serialization.

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Could not be decided (truncated enumeration, borderline margins).
    Inconclusive,
    /// Hypothesis of an implication not met; nothing asserted.
    Vacuous,
}

/// How `lhs` and `rhs` are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "=")]
    Equal,
    /// Hypothesis `lhs > rhs` implies the conclusion named in `note`.
    #[serde(rename = "=>")]
    Implies,
}

/// One verified relation on one instance.
///
/// `slack` is always `lhs - rhs`. For `>=`/`<=` checks the relation holds
/// when the signed slack stays within `tolerance` of the right side; for `=`
/// checks `|slack| <= tolerance`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub relation: String,
    pub instance: String,
    pub k: Option<i64>,
    #[serde(serialize_with = "ser_f64")]
    pub lhs: f64,
    #[serde(serialize_with = "ser_f64")]
    pub rhs: f64,
    #[serde(serialize_with = "ser_f64")]
    pub slack: f64,
    #[serde(serialize_with = "ser_f64")]
    pub tolerance: f64,
    pub comparison: Comparison,
    pub status: Status,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    fn base(check: &str, relation: &str, k: Option<i64>, lhs: f64, rhs: f64) -> Self {
        let slack = if lhs == rhs { 0.0 } else { lhs - rhs };
        CheckRecord {
            check: check.into(),
            relation: relation.into(),
            instance: String::new(),
            k,
            lhs,
            rhs,
            slack,
            tolerance: 0.0,
            comparison: Comparison::Equal,
            status: Status::Pass,
            pass: true,
            note: None,
        }
    }

    /// `lhs >= rhs - tol`. Infinite `lhs` satisfies any finite bound.
    pub fn at_least(check: &str, relation: &str, k: Option<i64>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut r = Self::base(check, relation, k, lhs, rhs);
        r.tolerance = tol;
        r.comparison = Comparison::AtLeast;
        r.set_status(if lhs >= rhs - tol { Status::Pass } else { Status::Fail });
        r
    }

    /// `lhs <= rhs + tol`.
    pub fn at_most(check: &str, relation: &str, k: Option<i64>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut r = Self::base(check, relation, k, lhs, rhs);
        r.tolerance = tol;
        r.comparison = Comparison::AtMost;
        r.set_status(if lhs <= rhs + tol { Status::Pass } else { Status::Fail });
        r
    }

    /// `|lhs - rhs| <= tol`.
    pub fn equal(check: &str, relation: &str, k: Option<i64>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut r = Self::base(check, relation, k, lhs, rhs);
        r.tolerance = tol;
        r.set_status(if (lhs - rhs).abs() <= tol || lhs == rhs {
            Status::Pass
        } else {
            Status::Fail
        });
        r
    }

    /// Equality with tolerance `rel · (1 + max(|lhs|, |rhs|))`.
    pub fn equal_relative(check: &str, relation: &str, k: Option<i64>, lhs: f64, rhs: f64, rel: f64) -> Self {
        Self::equal(check, relation, k, lhs, rhs, rel * (1.0 + lhs.abs().max(rhs.abs())))
    }

    /// Implication record: `lhs > rhs` is the hypothesis, `status` says
    /// whether the conclusion was asserted and held.
    pub fn implication(check: &str, relation: &str, k: Option<i64>, lhs: f64, rhs: f64, status: Status) -> Self {
        let mut r = Self::base(check, relation, k, lhs, rhs);
        r.comparison = Comparison::Implies;
        r.set_status(status);
        r
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.set_status(status);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_instance(mut self, instance: impl Into<String>) -> Self {
        self.instance = instance.into();
        self
    }

    fn set_status(&mut self, status: Status) {
        self.status = status;
        self.pass = status != Status::Fail;
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

pub fn any_failed(records: &[CheckRecord]) -> bool {
    records.iter().any(CheckRecord::failed)
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Finite values at 12 significant digits; `±inf` as the strings `"inf"`
/// and `"-inf"`; NaN as `null`.
pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_nan() {
        s.serialize_none()
    } else if x.is_infinite() {
        s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(round_sig(*x))
    }
}

pub fn ser_f64_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Rounded(*x))?;
    }
    seq.end()
}

/// `f64` wrapper with the [`ser_f64`] encoding.
#[derive(Clone, Copy, Debug)]
pub struct Rounded(pub f64);

impl Serialize for Rounded {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_f64(&self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(-1e-17), -1e-17);
        assert_eq!(round_sig(123456789012345.0), 123456789012000.0);
        assert_eq!(serde_json::to_string(&Rounded(f64::INFINITY)).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Rounded(f64::NAN)).unwrap(), "null");
        assert_eq!(serde_json::to_string(&Rounded(2.0)).unwrap(), "2.0");
        assert_eq!(serde_json::to_string(&Rounded(-0.0)).unwrap(), "0.0");
    }

    #[test]
    fn statuses() {
        let r = CheckRecord::at_least("c", "a >= b", Some(1), 1.0, 1.0 + 1e-9, 1e-7);
        assert!(r.pass);
        let r = CheckRecord::at_least("c", "a >= b", None, 1.0, 2.0, 1e-7);
        assert_eq!(r.status, Status::Fail);
        assert!(CheckRecord::at_least("c", "", None, f64::INFINITY, f64::INFINITY, 0.0).pass);
        let r = CheckRecord::equal_relative("c", "", None, 1e6, 1e6 + 1e-4, 1e-9);
        assert!(r.pass);
        let r = CheckRecord::implication("c", "", None, 0.0, 1.0, Status::Inconclusive);
        assert!(r.pass && !r.failed());
    }
}
