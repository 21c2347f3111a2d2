//! Finite non-deterministic value algebras.
//!
//! A [`SystemSpec`] picks a carrier (four, six or eight values), a variant
//! of the `□` table, an identity mode and a quantifier mode. All
//! multioperations are read off the eight-valued constant tables and
//! restricted to the active carrier; the `□` variants for axioms (4) and
//! (5) override that table on V4 only.

mod quant;
mod tables;
mod value;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use value::{ParseValueError, TruthValue, ValueSet};

use value::TruthValue::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NmatrixError {
    #[error("truth value {value} is outside the carrier {carrier}")]
    OutsideCarrier { value: TruthValue, carrier: Carrier },
    #[error("the {0} box variant is only defined on V4")]
    VariantNeedsV4(BoxVariant),
    #[error("cannot restrict from {from} to {to}")]
    InvalidRestriction { from: Carrier, to: Carrier },
    #[error("quantifier argument set is empty")]
    EmptyArgument,
    #[error("quantifier argument {set} is not inside the carrier {carrier}")]
    ArgumentOutsideCarrier { set: ValueSet, carrier: Carrier },
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Carrier {
    V4,
    V6,
    V8,
}

impl Carrier {
    pub fn values(self) -> ValueSet {
        match self {
            Carrier::V4 => ValueSet::of(&[TPos, CPos, CNeg, FNeg]),
            Carrier::V6 => ValueSet::ALL.minus(ValueSet::of(&[IPos, INeg])),
            Carrier::V8 => ValueSet::ALL,
        }
    }

    pub fn contains(self, v: TruthValue) -> bool {
        self.values().contains(v)
    }

    pub fn size(self) -> usize {
        self.values().len()
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}", self.size())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxVariant {
    Base,
    Axiom4,
    Axiom45,
}

impl fmt::Display for BoxVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoxVariant::Base => "base",
            BoxVariant::Axiom4 => "(4)",
            BoxVariant::Axiom45 => "(4)+(5)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityMode {
    Necessary,
    Contingent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantifierMode {
    #[serde(rename = "nd")]
    Nondeterministic,
    #[serde(rename = "det")]
    Deterministic,
}

impl FromStr for QuantifierMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nd" | "nondeterministic" => Ok(QuantifierMode::Nondeterministic),
            "det" | "deterministic" => Ok(QuantifierMode::Deterministic),
            other => Err(format!("unknown quantifier mode `{other}` (expected nd or det)")),
        }
    }
}

impl fmt::Display for QuantifierMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuantifierMode::Nondeterministic => "nd",
            QuantifierMode::Deterministic => "det",
        })
    }
}

/// A named logic: carrier, `□` variant, identity mode and quantifier mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    carrier: Carrier,
    box_variant: BoxVariant,
    identity_mode: IdentityMode,
    quantifier_mode: QuantifierMode,
}

impl SystemSpec {
    pub fn new(
        carrier: Carrier,
        box_variant: BoxVariant,
        identity_mode: IdentityMode,
        quantifier_mode: QuantifierMode,
    ) -> Result<Self, NmatrixError> {
        if box_variant != BoxVariant::Base && carrier != Carrier::V4 {
            return Err(NmatrixError::VariantNeedsV4(box_variant));
        }
        Ok(SystemSpec { carrier, box_variant, identity_mode, quantifier_mode })
    }

    /// `Tm*` with deterministic quantifiers.
    pub fn tm() -> Self {
        SystemSpec {
            carrier: Carrier::V4,
            box_variant: BoxVariant::Base,
            identity_mode: IdentityMode::Necessary,
            quantifier_mode: QuantifierMode::Deterministic,
        }
    }

    pub fn t4m() -> Self {
        SystemSpec { box_variant: BoxVariant::Axiom4, ..Self::tm() }
    }

    pub fn t45m() -> Self {
        SystemSpec { box_variant: BoxVariant::Axiom45, ..Self::tm() }
    }

    pub fn dm() -> Self {
        SystemSpec { carrier: Carrier::V6, ..Self::tm() }
    }

    pub fn km() -> Self {
        SystemSpec { carrier: Carrier::V8, ..Self::tm() }
    }

    pub fn with_quantifier_mode(self, quantifier_mode: QuantifierMode) -> Self {
        SystemSpec { quantifier_mode, ..self }
    }

    pub fn with_identity_mode(self, identity_mode: IdentityMode) -> Self {
        SystemSpec { identity_mode, ..self }
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn box_variant(&self) -> BoxVariant {
        self.box_variant
    }

    pub fn identity_mode(&self) -> IdentityMode {
        self.identity_mode
    }

    pub fn quantifier_mode(&self) -> QuantifierMode {
        self.quantifier_mode
    }

    pub fn values(&self) -> ValueSet {
        self.carrier.values()
    }

    /// The `+` values of the carrier.
    pub fn designated(&self) -> ValueSet {
        self.values().intersect(ValueSet::POSITIVE)
    }

    pub fn undesignated(&self) -> ValueSet {
        self.values().minus(ValueSet::POSITIVE)
    }

    pub fn is_designated(&self, v: TruthValue) -> bool {
        self.designated().contains(v)
    }

    /// Short lowercase name, e.g. `t45m-c`.
    pub fn name(&self) -> String {
        let base = match (self.carrier, self.box_variant) {
            (Carrier::V4, BoxVariant::Base) => "tm",
            (Carrier::V4, BoxVariant::Axiom4) => "t4m",
            (Carrier::V4, BoxVariant::Axiom45) => "t45m",
            (Carrier::V6, _) => "dm",
            (Carrier::V8, _) => "km",
        };
        match self.identity_mode {
            IdentityMode::Necessary => base.to_string(),
            IdentityMode::Contingent => format!("{base}-c"),
        }
    }

    fn check(&self, v: TruthValue) -> Result<usize, NmatrixError> {
        if self.carrier.contains(v) {
            Ok(v.index())
        } else {
            Err(NmatrixError::OutsideCarrier { value: v, carrier: self.carrier })
        }
    }

    fn check_set(&self, x: ValueSet) -> Result<(), NmatrixError> {
        if x.is_empty() {
            Err(NmatrixError::EmptyArgument)
        } else if !x.is_subset(self.values()) {
            Err(NmatrixError::ArgumentOutsideCarrier { set: x, carrier: self.carrier })
        } else {
            Ok(())
        }
    }

    pub fn neg_of(&self, v: TruthValue) -> Result<ValueSet, NmatrixError> {
        let i = self.check(v)?;
        Ok(tables::NEG8[i].intersect(self.values()))
    }

    pub fn box_of(&self, v: TruthValue) -> Result<ValueSet, NmatrixError> {
        let i = self.check(v)?;
        Ok(match self.box_variant {
            BoxVariant::Base => tables::BOX8[i].intersect(self.values()),
            BoxVariant::Axiom4 if v == TPos => ValueSet::single(TPos),
            BoxVariant::Axiom4 => ValueSet::of(&[CNeg, FNeg]),
            BoxVariant::Axiom45 if v == TPos => ValueSet::single(TPos),
            BoxVariant::Axiom45 => ValueSet::single(FNeg),
        })
    }

    /// `◇ = ¬□¬`, lifted to sets.
    pub fn diamond_of(&self, v: TruthValue) -> Result<ValueSet, NmatrixError> {
        let inner = self.lift(self.neg_of(v)?, |u| self.box_of(u))?;
        self.lift(inner, |u| self.neg_of(u))
    }

    pub fn imp_of(&self, a: TruthValue, b: TruthValue) -> Result<ValueSet, NmatrixError> {
        let (i, j) = (self.check(a)?, self.check(b)?);
        Ok(tables::IMP8[i][j].intersect(self.values()))
    }

    pub fn or_of(&self, a: TruthValue, b: TruthValue) -> Result<ValueSet, NmatrixError> {
        let (i, j) = (self.check(a)?, self.check(b)?);
        Ok(tables::OR8[i][j].intersect(self.values()))
    }

    pub fn and_of(&self, a: TruthValue, b: TruthValue) -> Result<ValueSet, NmatrixError> {
        let (i, j) = (self.check(a)?, self.check(b)?);
        Ok(tables::AND8[i][j].intersect(self.values()))
    }

    /// Applies a multioperation to every member of `x` and unions the results.
    pub fn lift<F>(&self, x: ValueSet, op: F) -> Result<ValueSet, NmatrixError>
    where
        F: Fn(TruthValue) -> Result<ValueSet, NmatrixError>,
    {
        x.iter().try_fold(ValueSet::EMPTY, |acc, v| Ok(acc.union(op(v)?)))
    }

    /// Set-lifted negation `¬̃X = {¬̃x : x ∈ X}`.
    pub fn neg_set(&self, x: ValueSet) -> Result<ValueSet, NmatrixError> {
        self.lift(x, |v| self.neg_of(v))
    }

    pub fn forall_fold(&self, x: ValueSet) -> Result<ValueSet, NmatrixError> {
        self.check_set(x)?;
        Ok(quant::forall(self.carrier, self.quantifier_mode, x))
    }

    pub fn exists_fold(&self, x: ValueSet) -> Result<ValueSet, NmatrixError> {
        self.check_set(x)?;
        Ok(quant::exists(self.carrier, self.quantifier_mode, x))
    }

    /// Same system over a smaller carrier. Tables restrict pointwise.
    pub fn restrict(&self, small: Carrier) -> Result<SystemSpec, NmatrixError> {
        if small > self.carrier || (small != self.carrier && self.box_variant != BoxVariant::Base) {
            return Err(NmatrixError::InvalidRestriction { from: self.carrier, to: small });
        }
        Ok(SystemSpec { carrier: small, ..*self })
    }
}

/// Free-function form of [`SystemSpec::restrict`].
pub fn restrict_system(big: &SystemSpec, small: Carrier) -> Result<SystemSpec, NmatrixError> {
    big.restrict(small)
}

impl FromStr for SystemSpec {
    type Err = NmatrixError;

    /// Parses `tm`, `t4m`, `t45m`, `dm`, `km`, optionally with a `-c` suffix.
    /// The quantifier mode defaults to deterministic.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let (base, identity) = match lower.strip_suffix("-c") {
            Some(b) => (b, IdentityMode::Contingent),
            None => (lower.as_str(), IdentityMode::Necessary),
        };
        let sys = match base {
            "tm" => SystemSpec::tm(),
            "t4m" => SystemSpec::t4m(),
            "t45m" => SystemSpec::t45m(),
            "dm" => SystemSpec::dm(),
            "km" => SystemSpec::km(),
            _ => return Err(NmatrixError::UnknownSystem(s.to_string())),
        };
        Ok(sys.with_identity_mode(identity))
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} quantifiers)", self.name(), self.quantifier_mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[TruthValue]) -> ValueSet {
        ValueSet::of(v)
    }

    #[test]
    fn names_round_trip() {
        for name in ["tm", "t4m", "t45m", "dm", "km", "tm-c", "t45m-c", "km-c"] {
            let sys: SystemSpec = name.parse().unwrap();
            assert_eq!(sys.name(), name);
        }
        assert!("s5".parse::<SystemSpec>().is_err());
    }

    #[test]
    fn box_variants_need_v4() {
        assert_eq!(
            SystemSpec::new(Carrier::V8, BoxVariant::Axiom4, IdentityMode::Necessary, QuantifierMode::Deterministic),
            Err(NmatrixError::VariantNeedsV4(BoxVariant::Axiom4))
        );
    }

    #[test]
    fn spot_entries() {
        let tm = SystemSpec::tm();
        let km = SystemSpec::km();
        assert_eq!(tm.neg_of(TPos).unwrap(), vs(&[FNeg]));
        assert_eq!(tm.neg_of(CNeg).unwrap(), vs(&[CPos]));
        assert_eq!(km.neg_of(IPos).unwrap(), vs(&[INeg]));
        assert_eq!(tm.box_of(TPos).unwrap(), vs(&[TPos, CPos]));
        assert_eq!(SystemSpec::t45m().box_of(CPos).unwrap(), vs(&[FNeg]));
        assert_eq!(km.box_of(TNeg).unwrap(), vs(&[TPos, CPos, FPos, IPos]));
        assert_eq!(tm.diamond_of(FNeg).unwrap(), vs(&[CNeg, FNeg]));
        assert_eq!(SystemSpec::t4m().diamond_of(CNeg).unwrap(), vs(&[TPos, CPos]));
        assert_eq!(SystemSpec::t45m().diamond_of(CPos).unwrap(), vs(&[TPos]));
        assert_eq!(tm.imp_of(CPos, CPos).unwrap(), vs(&[TPos, CPos]));
        assert_eq!(tm.imp_of(FNeg, FNeg).unwrap(), vs(&[TPos]));
        assert_eq!(km.imp_of(IPos, TNeg).unwrap(), vs(&[INeg]));
        assert_eq!(tm.or_of(CPos, CNeg).unwrap(), vs(&[TPos, CPos]));
        assert_eq!(tm.and_of(CPos, CPos).unwrap(), vs(&[CPos]));
        assert_eq!(tm.and_of(CPos, CNeg).unwrap(), vs(&[FNeg, CNeg]));
    }

    #[test]
    fn values_outside_carrier_are_rejected() {
        let tm = SystemSpec::tm();
        assert!(matches!(tm.neg_of(IPos), Err(NmatrixError::OutsideCarrier { .. })));
        assert!(matches!(SystemSpec::dm().box_of(INeg), Err(NmatrixError::OutsideCarrier { .. })));
        assert!(tm.imp_of(TPos, FPos).is_err());
        assert_eq!(tm.forall_fold(ValueSet::EMPTY), Err(NmatrixError::EmptyArgument));
        assert!(tm.exists_fold(vs(&[TNeg])).is_err());
    }

    #[test]
    fn restriction_rules() {
        let km = SystemSpec::km();
        assert_eq!(km.restrict(Carrier::V6).unwrap(), SystemSpec::dm());
        assert_eq!(restrict_system(&km, Carrier::V4).unwrap(), SystemSpec::tm());
        assert!(SystemSpec::tm().restrict(Carrier::V8).is_err());
        assert_eq!(km.restrict(Carrier::V4).unwrap().neg_of(CPos).unwrap(), vs(&[CNeg]));
        assert_eq!(km.restrict(Carrier::V4).unwrap().imp_of(CPos, CPos).unwrap(), vs(&[TPos, CPos]));
    }

    #[test]
    fn designated_is_positive_part() {
        assert_eq!(SystemSpec::tm().designated(), vs(&[TPos, CPos]));
        assert_eq!(SystemSpec::dm().designated(), vs(&[TPos, CPos, FPos]));
        assert_eq!(SystemSpec::km().designated(), ValueSet::POSITIVE);
    }

    #[test]
    fn every_output_nonempty() {
        for sys in [SystemSpec::tm(), SystemSpec::t4m(), SystemSpec::t45m(), SystemSpec::dm(), SystemSpec::km()] {
            for a in sys.values().iter() {
                assert!(!sys.neg_of(a).unwrap().is_empty());
                assert!(!sys.box_of(a).unwrap().is_empty());
                for b in sys.values().iter() {
                    assert!(!sys.imp_of(a, b).unwrap().is_empty());
                    assert!(!sys.and_of(a, b).unwrap().is_empty());
                    assert!(!sys.or_of(a, b).unwrap().is_empty());
                }
            }
            for x in sys.values().nonempty_subsets() {
                assert!(!sys.forall_fold(x).unwrap().is_empty());
                assert!(!sys.exists_fold(x).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn tm_box_designated_only_on_top() {
        let tm = SystemSpec::tm();
        for v in tm.values().iter() {
            let inside = tm.box_of(v).unwrap().is_subset(tm.designated());
            assert_eq!(inside, v == TPos);
        }
    }
}
