//! JSON network and scheme files.

use bncontrol::{BnError, BooleanNetwork, ControlNodeSet, ControlScheme, NodeRule, RuleKind};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const NETWORK_FORMAT: &str = "bnctl-network";
pub const SCHEME_FORMAT: &str = "bnctl-scheme";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub rules: Vec<RuleEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control_set: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RuleEntry {
    Xor { inputs: Vec<usize> },
    Majority { inputs: Vec<usize> },
    Mtbi { inputs: Vec<usize> },
    Phi { inputs: Vec<usize> },
    Threshold { inputs: Vec<usize>, coeffs: Vec<i64>, threshold: i64 },
    /// Output bits as a 0/1 string; character t is the output for tuple index t.
    Table { inputs: Vec<usize>, table: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RuleEntry {
    pub fn from_rule(r: &NodeRule) -> Self {
        let inputs = r.inputs.clone();
        match &r.kind {
            RuleKind::Xor => RuleEntry::Xor { inputs },
            RuleKind::Majority => RuleEntry::Majority { inputs },
            RuleKind::Mtbi => RuleEntry::Mtbi { inputs },
            RuleKind::PhiK => RuleEntry::Phi { inputs },
            RuleKind::IntThreshold { coeffs, threshold } => {
                RuleEntry::Threshold { inputs, coeffs: coeffs.clone(), threshold: *threshold }
            }
            RuleKind::TruthTable(t) => {
                RuleEntry::Table { inputs, table: t.iter().map(|&b| if b { '1' } else { '0' }).collect() }
            }
        }
    }

    pub fn to_rule(&self) -> Result<NodeRule, CliError> {
        Ok(match self {
            RuleEntry::Xor { inputs } => NodeRule::xor(inputs.clone()),
            RuleEntry::Majority { inputs } => NodeRule::majority(inputs.clone()),
            RuleEntry::Mtbi { inputs } => NodeRule::mtbi(inputs.clone()),
            RuleEntry::Phi { inputs } => NodeRule::phi(inputs.clone()),
            RuleEntry::Threshold { inputs, coeffs, threshold } => {
                NodeRule::new(RuleKind::IntThreshold { coeffs: coeffs.clone(), threshold: *threshold }, inputs.clone())
            }
            RuleEntry::Table { inputs, table } => {
                let bits = table
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(CliError::Malformed(format!("truth table contains '{c}'"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                NodeRule::new(RuleKind::TruthTable(bits), inputs.clone())
            }
        })
    }
}

impl NetworkFile {
    pub fn from_network(bn: &BooleanNetwork, u: Option<&ControlNodeSet>, metadata: Option<Metadata>) -> Self {
        NetworkFile {
            format: NETWORK_FORMAT.into(),
            version: VERSION,
            n: bn.n(),
            rules: bn.rules().iter().map(RuleEntry::from_rule).collect(),
            control_set: u.map(|u| u.members().to_vec()),
            metadata,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let f: NetworkFile = serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        if f.format != NETWORK_FORMAT {
            return Err(CliError::Malformed(format!("expected format '{NETWORK_FORMAT}', found '{}'", f.format)));
        }
        if f.version != VERSION {
            return Err(CliError::Malformed(format!("unsupported version {}", f.version)));
        }
        Ok(f)
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("network files serialize");
        s.push('\n');
        s
    }

    pub fn network(&self) -> Result<BooleanNetwork, CliError> {
        if self.rules.len() != self.n {
            return Err(BnError::DimensionMismatch { expected: self.n, found: self.rules.len() }.into());
        }
        let rules = self.rules.iter().map(RuleEntry::to_rule).collect::<Result<Vec<_>, _>>()?;
        Ok(BooleanNetwork::new(rules)?)
    }

    pub fn control_set(&self) -> Result<Option<ControlNodeSet>, CliError> {
        match &self.control_set {
            None => Ok(None),
            Some(v) => Ok(Some(ControlNodeSet::new(self.n, v.iter().copied())?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub control_set: Vec<usize>,
    /// u(0), u(1), ... as 0/1 strings, x1 leftmost.
    pub signals: Vec<String>,
}

impl SchemeFile {
    pub fn new(n: usize, u: &ControlNodeSet, scheme: &ControlScheme) -> Self {
        SchemeFile {
            format: SCHEME_FORMAT.into(),
            version: VERSION,
            n,
            control_set: u.members().to_vec(),
            signals: scheme.signals.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let f: SchemeFile = serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        if f.format != SCHEME_FORMAT || f.version != VERSION {
            return Err(CliError::Malformed(format!("expected {SCHEME_FORMAT} version {VERSION}")));
        }
        Ok(f)
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scheme files serialize");
        s.push('\n');
        s
    }

    pub fn scheme(&self) -> Result<(ControlNodeSet, ControlScheme), CliError> {
        let u = ControlNodeSet::new(self.n, self.control_set.iter().copied())?;
        let signals = self.signals.iter().map(|s| crate::parse_bits(s, self.n)).collect::<Result<Vec<_>, _>>()?;
        Ok((u, ControlScheme::new(signals)))
    }
}

