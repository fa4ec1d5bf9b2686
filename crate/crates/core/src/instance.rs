//! Instances and their text / JSON encodings.
//!
//! Text format:
//!
//! ```text
//! # comment
//! p 2/1
//! kp 56            # or: k 7.4833   or: kp 6*6^p + 24*12^p
//! 1111111
//! 1111000
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::{hamming_unchecked, BinaryString};
use crate::cost::CostBudget;
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;

/// The `m × n` instance matrix. Non-empty, all rows of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryStringSet {
    strings: Vec<BinaryString>,
    n: usize,
}

impl BinaryStringSet {
    pub fn new(strings: Vec<BinaryString>) -> Result<Self> {
        let first = strings.first().ok_or(HdcError::Empty("a string set needs at least one string"))?;
        let n = first.len();
        for s in &strings {
            if s.len() != n {
                return Err(HdcError::IncompatibleLengths { left: n, right: s.len() });
            }
        }
        Ok(BinaryStringSet { strings, n })
    }

    pub fn parse_lines<S: AsRef<str>>(lines: &[S]) -> Result<Self> {
        let strings = lines
            .iter()
            .map(|l| l.as_ref().parse())
            .collect::<Result<Vec<BinaryString>>>()?;
        Self::new(strings)
    }

    /// Number of strings.
    pub fn m(&self) -> usize {
        self.strings.len()
    }

    /// String length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strings(&self) -> &[BinaryString] {
        &self.strings
    }

    pub fn get(&self, i: usize) -> &BinaryString {
        &self.strings[i]
    }

    /// Hamming distances of `candidate` to each string.
    pub fn distances(&self, candidate: &BinaryString) -> Result<Vec<usize>> {
        if candidate.len() != self.n {
            return Err(HdcError::IncompatibleLengths { left: candidate.len(), right: self.n });
        }
        Ok(self.strings.iter().map(|s| hamming_unchecked(candidate, s)).collect())
    }

    /// Column `j` (1-based) as a bit vector over the strings.
    pub fn column(&self, j: usize) -> Vec<bool> {
        self.strings.iter().map(|s| s.get(j).expect("column in range")).collect()
    }

    /// Keeps the listed 1-based columns in every string.
    pub fn select_columns(&self, columns: &[usize]) -> BinaryStringSet {
        BinaryStringSet {
            strings: self.strings.iter().map(|s| s.select(columns)).collect(),
            n: columns.len(),
        }
    }

    pub fn push(&mut self, s: BinaryString) -> Result<()> {
        if s.len() != self.n {
            return Err(HdcError::IncompatibleLengths { left: self.n, right: s.len() });
        }
        self.strings.push(s);
        Ok(())
    }

    /// Whether the strings are pairwise distinct.
    pub fn all_distinct(&self) -> bool {
        let mut sorted: Vec<&BinaryString> = self.strings.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Budget line as written, parsed once the exponent is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BudgetLine {
    /// `kp <value>`: the budget on the p-th-power cost.
    Power(String),
    /// `k <value>`: the budget on the norm.
    Norm(String),
}

/// A parsed instance file whose `p` and budget lines may be missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDraft {
    pub set: BinaryStringSet,
    pub p: Option<PExponent>,
    /// The budget line and its 1-based line number.
    pub budget: Option<(usize, BudgetLine)>,
}

impl InstanceDraft {
    pub fn parse(text: &str, allow_p_one: bool) -> Result<Self> {
        let mut p: Option<PExponent> = None;
        let mut budget: Option<(usize, BudgetLine)> = None;
        let mut strings = Vec::new();
        let at = |line: usize, e: HdcError| match e {
            HdcError::Parse { msg, .. } => HdcError::Parse { line, msg },
            other => HdcError::Parse { line, msg: other.to_string() },
        };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let directive = if let Some(rest) = line.strip_prefix("kp ") {
                Some(BudgetLine::Power(rest.trim().to_string()))
            } else {
                line.strip_prefix("k ").map(|rest| BudgetLine::Norm(rest.trim().to_string()))
            };
            if let Some(rest) = line.strip_prefix("p ") {
                if p.is_some() {
                    return Err(HdcError::Parse { line: line_no, msg: "duplicate p line".into() });
                }
                p = Some(PExponent::parse_with(rest, allow_p_one).map_err(|e| at(line_no, e))?);
            } else if let Some(b) = directive {
                if budget.is_some() {
                    return Err(HdcError::Parse { line: line_no, msg: "duplicate budget line".into() });
                }
                budget = Some((line_no, b));
            } else {
                let s: BinaryString = line.parse().map_err(|e| at(line_no, e))?;
                if let Some(first) = strings.first().map(|f: &BinaryString| f.len()) {
                    if s.len() != first {
                        return Err(HdcError::Parse {
                            line: line_no,
                            msg: format!("string has length {} but earlier strings have length {first}", s.len()),
                        });
                    }
                }
                strings.push(s);
            }
        }
        let last = text.lines().count().max(1);
        let set = BinaryStringSet::new(strings).map_err(|e| HdcError::Parse { line: last, msg: e.to_string() })?;
        Ok(InstanceDraft { set, p, budget })
    }

    /// Fixes the exponent (from the file or `p`, which must agree) and parses the budget.
    pub fn resolve(self, p: Option<PExponent>) -> Result<(BinaryStringSet, PExponent, Option<CostBudget>)> {
        let p = match (self.p, p) {
            (Some(a), Some(b)) if a != b => {
                return Err(HdcError::InvalidExponent(format!("the file uses p = {a} but p = {b} was requested")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(HdcError::Parse { line: 1, msg: "missing `p <a>/<b>` line".into() }),
        };
        let budget = match self.budget {
            None => None,
            Some((line, BudgetLine::Power(v))) => Some(
                CostBudget::parse_power(p, &v).map_err(|e| HdcError::Parse { line, msg: e.to_string() })?,
            ),
            Some((line, BudgetLine::Norm(v))) => {
                Some(CostBudget::from_norm(p, &v).map_err(|e| HdcError::Parse { line, msg: e.to_string() })?)
            }
        };
        Ok((self.set, p, budget))
    }
}

/// A complete decision instance: strings, exponent and budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub set: BinaryStringSet,
    pub p: PExponent,
    pub budget: CostBudget,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    p: PExponent,
    power_budget: String,
    strings: Vec<BinaryString>,
}

impl Instance {
    pub fn new(set: BinaryStringSet, p: PExponent, budget: CostBudget) -> Result<Self> {
        if budget.exponent() != p {
            return Err(HdcError::InvalidBudget(format!(
                "budget uses p = {} but the instance uses p = {p}",
                budget.exponent()
            )));
        }
        Ok(Instance { set, p, budget })
    }

    /// Parses the text format. Errors carry 1-based line numbers.
    pub fn parse_text(text: &str, allow_p_one: bool) -> Result<Self> {
        let draft = InstanceDraft::parse(text, allow_p_one)?;
        let (set, p, budget) = draft.resolve(None)?;
        let budget = budget.ok_or(HdcError::Parse { line: 2, msg: "missing `k` or `kp` budget line".into() })?;
        Instance::new(set, p, budget)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {}", self.p).unwrap();
        match self.budget.norm_value() {
            Some(k) => writeln!(out, "k {k}").unwrap(),
            None => writeln!(out, "kp {}", self.budget).unwrap(),
        }
        for s in self.set.strings() {
            writeln!(out, "{s}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(InstanceJson {
            p: self.p,
            power_budget: self.budget.to_string(),
            strings: self.set.strings().to_vec(),
        })
        .expect("instance serializes")
    }

    pub fn from_json(value: &str) -> Result<Self> {
        let raw: InstanceJson =
            serde_json::from_str(value).map_err(|e| HdcError::Parse { line: e.line(), msg: e.to_string() })?;
        let budget = CostBudget::parse_power(raw.p, &raw.power_budget)?;
        Instance::new(BinaryStringSet::new(raw.strings)?, raw.p, budget)
    }
}
