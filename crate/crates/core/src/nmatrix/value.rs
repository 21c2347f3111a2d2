use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One of the eight symbolic truth values.
///
/// The discriminant doubles as the bit position inside a [`ValueSet`], and
/// the declaration order is the fixed enumeration order used everywhere a
/// deterministic walk over values is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum TruthValue {
    TPos = 0,
    CPos = 1,
    FPos = 2,
    IPos = 3,
    TNeg = 4,
    CNeg = 5,
    FNeg = 6,
    INeg = 7,
}

pub use TruthValue::*;

impl TruthValue {
    pub const ALL: [TruthValue; 8] = [TPos, CPos, FPos, IPos, TNeg, CNeg, FNeg, INeg];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<TruthValue> {
        Self::ALL.get(i).copied()
    }

    /// `true` for the actually-true (`+`) values.
    pub fn is_positive(self) -> bool {
        self.index() < 4
    }

    /// Display form with a typographic minus, e.g. `C−`.
    pub fn symbol(self) -> &'static str {
        match self {
            TPos => "T+",
            CPos => "C+",
            FPos => "F+",
            IPos => "I+",
            TNeg => "T−",
            CNeg => "C−",
            FNeg => "F−",
            INeg => "I−",
        }
    }

    /// ASCII form used in JSON documents, e.g. `C-`.
    pub fn ascii(self) -> &'static str {
        match self {
            TPos => "T+",
            CPos => "C+",
            FPos => "F+",
            IPos => "I+",
            TNeg => "T-",
            CNeg => "C-",
            FNeg => "F-",
            INeg => "I-",
        }
    }

    /// Rank in the chain `F− ≤ C− ≤ C+ ≤ T+`. Only meaningful on V4.
    pub fn chain_rank(self) -> Option<u8> {
        match self {
            FNeg => Some(0),
            CNeg => Some(1),
            CPos => Some(2),
            TPos => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown truth value `{0}`")]
pub struct ParseValueError(pub String);

impl FromStr for TruthValue {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().replace('−', "-");
        TruthValue::ALL.into_iter().find(|v| v.ascii() == t).ok_or_else(|| ParseValueError(s.to_string()))
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.ascii())
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of truth values, stored as a bitmask.
///
/// Multioperation results are always nonempty; the empty set only shows up
/// transiently (intersections, filters) and is rejected where a proper
/// value set is required.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ValueSet(u8);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);
    pub const ALL: ValueSet = ValueSet(0xff);
    pub const POSITIVE: ValueSet = ValueSet(0x0f);
    pub const NEGATIVE: ValueSet = ValueSet(0xf0);

    pub const fn from_bits(bits: u8) -> ValueSet {
        ValueSet(bits)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub const fn single(v: TruthValue) -> ValueSet {
        ValueSet(1 << v as u8)
    }

    pub fn of(values: &[TruthValue]) -> ValueSet {
        values.iter().copied().collect()
    }

    pub fn contains(self, v: TruthValue) -> bool {
        self.0 & (1 << v as u8) != 0
    }

    pub fn insert(&mut self, v: TruthValue) {
        self.0 |= 1 << v as u8;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 | other.0)
    }

    pub fn intersect(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 & other.0)
    }

    pub fn minus(self, other: ValueSet) -> ValueSet {
        ValueSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ValueSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// The only member, if this is a singleton.
    pub fn as_single(self) -> Option<TruthValue> {
        if self.len() == 1 {
            TruthValue::from_index(self.0.trailing_zeros() as usize)
        } else {
            None
        }
    }

    pub fn iter(self) -> impl Iterator<Item = TruthValue> {
        TruthValue::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    /// Every nonempty subset of `self`, in increasing bitmask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = ValueSet> {
        (1u16..=255).map(|b| ValueSet(b as u8)).filter(move |s| s.is_subset(self))
    }
}

impl FromIterator<TruthValue> for ValueSet {
    fn from_iter<I: IntoIterator<Item = TruthValue>>(iter: I) -> Self {
        let mut s = ValueSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(v.symbol())?;
        }
        f.write_str("}")
    }
}

impl Serialize for ValueSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ValueSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let values = Vec::<TruthValue>::deserialize(d)?;
        Ok(values.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_both_minus_signs() {
        assert_eq!("C-".parse::<TruthValue>().unwrap(), CNeg);
        assert_eq!("C−".parse::<TruthValue>().unwrap(), CNeg);
        assert!("X+".parse::<TruthValue>().is_err());
    }

    #[test]
    fn polarity_splits_in_half() {
        assert_eq!(ValueSet::POSITIVE, ValueSet::of(&[TPos, CPos, FPos, IPos]));
        assert!(TruthValue::ALL.iter().all(|v| v.is_positive() == ValueSet::POSITIVE.contains(*v)));
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(ValueSet::ALL.nonempty_subsets().count(), 255);
        assert_eq!(ValueSet::of(&[TPos, CPos, CNeg, FNeg]).nonempty_subsets().count(), 15);
    }

    #[test]
    fn display_and_json() {
        let s = ValueSet::of(&[CNeg, TPos]);
        assert_eq!(s.to_string(), "{T+,C−}");
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"["T+","C-"]"#);
    }
}
