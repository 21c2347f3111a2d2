//! Rendering of a system's multioperations and quantifier folds.

use std::fmt::Write as _;

use serde::Serialize;

use crate::nmatrix::{NmatrixError, SystemSpec, TruthValue, ValueSet};

#[derive(Debug, Serialize)]
pub struct Tables {
    pub system: String,
    pub quantifier: String,
    pub values: Vec<TruthValue>,
    pub designated: Vec<TruthValue>,
    pub neg: Vec<UnaryEntry>,
    #[serde(rename = "box")]
    pub nec: Vec<UnaryEntry>,
    pub diamond: Vec<UnaryEntry>,
    pub imp: Vec<BinaryEntry>,
    pub or: Vec<BinaryEntry>,
    pub and: Vec<BinaryEntry>,
    pub forall: Vec<FoldEntry>,
    pub exists: Vec<FoldEntry>,
}

#[derive(Debug, Serialize)]
pub struct UnaryEntry {
    pub arg: TruthValue,
    pub result: ValueSet,
}

#[derive(Debug, Serialize)]
pub struct BinaryEntry {
    pub left: TruthValue,
    pub right: TruthValue,
    pub result: ValueSet,
}

#[derive(Debug, Serialize)]
pub struct FoldEntry {
    pub arg: ValueSet,
    pub result: ValueSet,
}

type Unary = fn(&SystemSpec, TruthValue) -> Result<ValueSet, NmatrixError>;
type Binary = fn(&SystemSpec, TruthValue, TruthValue) -> Result<ValueSet, NmatrixError>;

impl Tables {
    pub fn of(sys: &SystemSpec) -> Result<Tables, NmatrixError> {
        let values: Vec<TruthValue> = sys.values().iter().collect();
        let unary = |op: Unary| -> Result<Vec<UnaryEntry>, NmatrixError> {
            values.iter().map(|&arg| Ok(UnaryEntry { arg, result: op(sys, arg)? })).collect()
        };
        let binary = |op: Binary| -> Result<Vec<BinaryEntry>, NmatrixError> {
            let mut out = Vec::new();
            for &left in &values {
                for &right in &values {
                    out.push(BinaryEntry { left, right, result: op(sys, left, right)? });
                }
            }
            Ok(out)
        };
        let fold = |op: fn(&SystemSpec, ValueSet) -> Result<ValueSet, NmatrixError>| {
            let mut subsets: Vec<ValueSet> = sys.values().nonempty_subsets().collect();
            subsets.sort_by_key(|s| (s.len(), s.iter().map(|v| v.index()).collect::<Vec<_>>()));
            subsets.into_iter().map(|arg| Ok(FoldEntry { arg, result: op(sys, arg)? })).collect::<Result<Vec<_>, _>>()
        };
        Ok(Tables {
            system: sys.name(),
            quantifier: sys.quantifier_mode().to_string(),
            designated: sys.designated().iter().collect(),
            neg: unary(SystemSpec::neg_of)?,
            nec: unary(SystemSpec::box_of)?,
            diamond: unary(SystemSpec::diamond_of)?,
            imp: binary(SystemSpec::imp_of)?,
            or: binary(SystemSpec::or_of)?,
            and: binary(SystemSpec::and_of)?,
            forall: fold(SystemSpec::forall_fold)?,
            exists: fold(SystemSpec::exists_fold)?,
            values,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |vs: &[TruthValue]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "system: {} ({} quantifiers)", self.system, self.quantifier);
        let _ = writeln!(out, "values: {}", list(&self.values));
        let _ = writeln!(out, "designated: {}", list(&self.designated));
        for (symbol, rows) in [("¬", &self.neg), ("□", &self.nec), ("◇", &self.diamond)] {
            out.push('\n');
            for row in rows {
                let _ = writeln!(out, "{symbol} {} → {}", row.arg, row.result);
            }
        }
        let width = self.imp.iter().chain(&self.or).chain(&self.and).map(|e| e.result.to_string().chars().count());
        let width = width.max().unwrap_or(4).max(4);
        for (symbol, rows) in [("→", &self.imp), ("∨", &self.or), ("∧", &self.and)] {
            out.push('\n');
            let _ = write!(out, "{symbol:<4}");
            for v in &self.values {
                let _ = write!(out, " {:<width$}", v.to_string());
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
            for chunk in rows.chunks(self.values.len()) {
                let _ = write!(out, "{:<4}", chunk[0].left.to_string());
                for e in chunk {
                    let _ = write!(out, " {:<width$}", e.result.to_string());
                }
                out.truncate(out.trim_end().len());
                out.push('\n');
            }
        }
        for (symbol, rows) in [("∀", &self.forall), ("∃", &self.exists)] {
            out.push('\n');
            for row in rows {
                let _ = writeln!(out, "{symbol} {} → {}", row.arg, row.result);
            }
        }
        out
    }
}
