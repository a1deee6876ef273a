use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Identities the verifier knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    /// Addition formula for `G~_n(x)`.
    #[serde(rename = "eq4")]
    Eq4,
    /// Distribution relation for `G~_n(dx)`, `d` odd.
    #[serde(rename = "eq5")]
    Eq5,
    /// `n * int [x+xi]^(n-1) dmu_q` against the closed form.
    #[serde(rename = "eq1_vs_eq23")]
    Eq1VsEq23,
    /// Scaled `S~` against the `E~` sum.
    #[serde(rename = "eq6")]
    Eq6,
    /// Splitting the fermionic integral modulo an odd `d`.
    #[serde(rename = "eq7")]
    Eq7,
    /// The `N -> pN` step.
    #[serde(rename = "eq8")]
    Eq8,
    #[serde(rename = "etilde_dist")]
    EtildeDist,
    #[serde(rename = "etilde_interp")]
    EtildeInterp,
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "q_to_1")]
    QTo1,
    #[serde(rename = "euler_reflection")]
    EulerReflection,
    #[serde(rename = "measure_total")]
    MeasureTotal,
    /// `mu_q(a + p^n) = sum_i mu_q(a + i p^n + p^(n+1))` modulo `p^K`.
    #[serde(rename = "measure_dist")]
    MeasureDist,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::Eq4,
        IdentityId::Eq5,
        IdentityId::Eq1VsEq23,
        IdentityId::Eq6,
        IdentityId::Eq7,
        IdentityId::Eq8,
        IdentityId::EtildeDist,
        IdentityId::EtildeInterp,
        IdentityId::Theorem1,
        IdentityId::QTo1,
        IdentityId::EulerReflection,
        IdentityId::MeasureTotal,
        IdentityId::MeasureDist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Eq4 => "eq4",
            IdentityId::Eq5 => "eq5",
            IdentityId::Eq1VsEq23 => "eq1_vs_eq23",
            IdentityId::Eq6 => "eq6",
            IdentityId::Eq7 => "eq7",
            IdentityId::Eq8 => "eq8",
            IdentityId::EtildeDist => "etilde_dist",
            IdentityId::EtildeInterp => "etilde_interp",
            IdentityId::Theorem1 => "theorem1",
            IdentityId::QTo1 => "q_to_1",
            IdentityId::EulerReflection => "euler_reflection",
            IdentityId::MeasureTotal => "measure_total",
            IdentityId::MeasureDist => "measure_dist",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "symbolic-exact")]
    SymbolicExact,
    #[serde(rename = "padic-congruence")]
    PadicCongruence,
}

/// `v_p(LHS - RHS)`, or exact (in)equality in the symbolic mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffValuation {
    Exact,
    Unequal,
    Valuation(u32),
}

impl Serialize for DiffValuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DiffValuation::Exact => s.serialize_str("exact"),
            DiffValuation::Unequal => s.serialize_str("unequal"),
            DiffValuation::Valuation(v) => s.serialize_u32(*v),
        }
    }
}

impl<'de> Deserialize<'de> for DiffValuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "exact" => Ok(DiffValuation::Exact),
            serde_json::Value::String(s) if s == "unequal" => Ok(DiffValuation::Unequal),
            serde_json::Value::Number(n) => n
                .as_u64()
                .and_then(|v| u32::try_from(v).ok())
                .map(DiffValuation::Valuation)
                .ok_or_else(|| D::Error::custom("valuation out of range")),
            other => Err(D::Error::custom(format!("invalid difference valuation {other}"))),
        }
    }
}

impl fmt::Display for DiffValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffValuation::Exact => f.write_str("exact"),
            DiffValuation::Unequal => f.write_str("unequal"),
            DiffValuation::Valuation(v) => write!(f, "{v}"),
        }
    }
}

/// Outcome of one identity check at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity_id: IdentityId,
    pub parameters: BTreeMap<String, String>,
    pub mode: Mode,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub difference_valuation: DiffValuation,
    pub pass: bool,
    /// Which side condition the point was checked under, when the identity
    /// has more than one admissible regime.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_condition: Option<String>,
    /// `as-printed` or `as-interpreted` when a reading choice was made.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
    /// Inter-level difference valuations of the integrals involved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_history: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub mutated: bool,
}
