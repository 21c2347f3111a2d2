//! Constant multioperation data for the eight-valued algebra.
//!
//! Everything smaller (the six- and four-valued algebras) is obtained by
//! pointwise restriction; see [`super::SystemSpec`].

use super::value::{TruthValue, TruthValue::*, ValueSet};

const fn s1(a: TruthValue) -> ValueSet {
    ValueSet::single(a)
}

const fn s2(a: TruthValue, b: TruthValue) -> ValueSet {
    ValueSet::from_bits(ValueSet::single(a).bits() | ValueSet::single(b).bits())
}

pub(crate) const NEG8: [ValueSet; 8] = [
    s1(FNeg), // T+
    s1(CNeg), // C+
    s1(TNeg), // F+
    s1(INeg), // I+
    s1(FPos), // T-
    s1(CPos), // C-
    s1(TPos), // F-
    s1(IPos), // I-
];

const P: ValueSet = ValueSet::POSITIVE;
const N: ValueSet = ValueSet::NEGATIVE;

pub(crate) const BOX8: [ValueSet; 8] = [P, N, N, P, P, N, N, P];

pub(crate) const IMP8: [[ValueSet; 8]; 8] = [
    // T+
    [s1(TPos), s1(CPos), s1(FPos), s1(IPos), s1(TNeg), s1(CNeg), s1(FNeg), s1(INeg)],
    // C+
    [s1(TPos), s2(TPos, CPos), s1(CPos), s1(IPos), s1(TNeg), s2(TNeg, CNeg), s1(CNeg), s1(INeg)],
    // F+
    [s1(TPos), s1(TPos), s1(TPos), s1(IPos), s1(TNeg), s1(TNeg), s1(TNeg), s1(INeg)],
    // I+
    [s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(INeg), s1(INeg), s1(INeg), s1(INeg)],
    // T-
    [s1(TPos), s1(CPos), s1(FPos), s1(IPos), s1(TPos), s1(CPos), s1(FPos), s1(IPos)],
    // C-
    [s1(TPos), s2(TPos, CPos), s1(CPos), s1(IPos), s1(TPos), s2(TPos, CPos), s1(CPos), s1(IPos)],
    // F-
    [s1(TPos), s1(TPos), s1(TPos), s1(IPos), s1(TPos), s1(TPos), s1(TPos), s1(IPos)],
    // I-
    [s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos)],
];

pub(crate) const OR8: [[ValueSet; 8]; 8] = [
    // T+
    [s1(TPos), s1(TPos), s1(TPos), s1(IPos), s1(TPos), s1(TPos), s1(TPos), s1(IPos)],
    // C+
    [s1(TPos), s2(TPos, CPos), s1(CPos), s1(IPos), s1(TPos), s2(TPos, CPos), s1(CPos), s1(IPos)],
    // F+
    [s1(TPos), s1(CPos), s1(FPos), s1(IPos), s1(TPos), s1(CPos), s1(FPos), s1(IPos)],
    // I+
    [s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(IPos)],
    // T-
    [s1(TPos), s1(TPos), s1(TPos), s1(IPos), s1(TNeg), s1(TNeg), s1(TNeg), s1(INeg)],
    // C-
    [s1(TPos), s2(TPos, CPos), s1(CPos), s1(IPos), s1(TNeg), s2(TNeg, CNeg), s1(CNeg), s1(INeg)],
    // F-
    [s1(TPos), s1(CPos), s1(FPos), s1(IPos), s1(TNeg), s1(CNeg), s1(FNeg), s1(INeg)],
    // I-
    [s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(INeg), s1(INeg), s1(INeg), s1(INeg)],
];

pub(crate) const AND8: [[ValueSet; 8]; 8] = [
    // T+
    [s1(TPos), s1(CPos), s1(FPos), s1(IPos), s1(TNeg), s1(CNeg), s1(FNeg), s1(INeg)],
    // C+
    [s1(CPos), s2(FPos, CPos), s1(FPos), s1(IPos), s1(CNeg), s2(FNeg, CNeg), s1(FNeg), s1(INeg)],
    // F+
    [s1(FPos), s1(FPos), s1(FPos), s1(IPos), s1(FNeg), s1(FNeg), s1(FNeg), s1(INeg)],
    // I+
    [s1(IPos), s1(IPos), s1(IPos), s1(IPos), s1(INeg), s1(INeg), s1(INeg), s1(INeg)],
    // T-
    [s1(TNeg), s1(CNeg), s1(FNeg), s1(INeg), s1(TNeg), s1(CNeg), s1(FNeg), s1(INeg)],
    // C-
    [s1(CNeg), s2(FNeg, CNeg), s1(FNeg), s1(INeg), s1(CNeg), s2(FNeg, CNeg), s1(FNeg), s1(INeg)],
    // F-
    [s1(FNeg), s1(FNeg), s1(FNeg), s1(INeg), s1(FNeg), s1(FNeg), s1(FNeg), s1(INeg)],
    // I-
    [s1(INeg), s1(INeg), s1(INeg), s1(INeg), s1(INeg), s1(INeg), s1(INeg), s1(INeg)],
];
