//! The published truth tables, transcribed row by row.
//!
//! Cells are written as value lists such as `"T+C+"`. Rows and columns
//! follow the published order: T+ C+ F+ I+ T- C- F- I- for Km and
//! T+ C+ C- F- for Tm.

use ivlev::nmatrix::{TruthValue, TruthValue::*, ValueSet};

pub const KM_ORDER: [TruthValue; 8] = [TPos, CPos, FPos, IPos, TNeg, CNeg, FNeg, INeg];
pub const TM_ORDER: [TruthValue; 4] = [TPos, CPos, CNeg, FNeg];

/// Parses a cell such as `"T+C-"`, or `+`/`-` for the (un)designated half
/// of V8.
pub fn cell(text: &str) -> ValueSet {
    match text {
        "+" => return ValueSet::of(&[TPos, CPos, FPos, IPos]),
        "-" => return ValueSet::of(&[TNeg, CNeg, FNeg, INeg]),
        _ => {}
    }
    let bytes = text.as_bytes();
    assert!(bytes.len() % 2 == 0 && !bytes.is_empty(), "bad cell {text}");
    let mut out = ValueSet::EMPTY;
    for pair in bytes.chunks(2) {
        let v = match (pair[0], pair[1]) {
            (b'T', b'+') => TPos,
            (b'C', b'+') => CPos,
            (b'F', b'+') => FPos,
            (b'I', b'+') => IPos,
            (b'T', b'-') => TNeg,
            (b'C', b'-') => CNeg,
            (b'F', b'-') => FNeg,
            (b'I', b'-') => INeg,
            _ => panic!("bad cell {text}"),
        };
        out.insert(v);
    }
    out
}

fn position(order: &[TruthValue], v: TruthValue) -> usize {
    order.iter().position(|&w| w == v).unwrap_or_else(|| panic!("{v} is outside the table"))
}

pub struct Unary {
    pub order: &'static [TruthValue],
    pub rows: &'static [&'static str],
}

impl Unary {
    pub fn get(&self, v: TruthValue) -> ValueSet {
        cell(self.rows[position(self.order, v)])
    }
}

pub struct Binary {
    pub order: &'static [TruthValue],
    pub rows: &'static [&'static [&'static str]],
}

impl Binary {
    pub fn get(&self, a: TruthValue, b: TruthValue) -> ValueSet {
        cell(self.rows[position(self.order, a)][position(self.order, b)])
    }
}

pub const TM_NEG: Unary = Unary { order: &TM_ORDER, rows: &["F-", "C-", "C+", "T+"] };
pub const TM_BOX: Unary = Unary { order: &TM_ORDER, rows: &["T+C+", "C-F-", "C-F-", "C-F-"] };
pub const TM_DIAMOND: Unary = Unary { order: &TM_ORDER, rows: &["T+C+", "T+C+", "T+C+", "C-F-"] };

pub const TM_IMP: Binary = Binary {
    order: &TM_ORDER,
    rows: &[
        &["T+", "C+", "C-", "F-"],
        &["T+", "T+C+", "C-", "C-"],
        &["T+", "T+C+", "T+C+", "C+"],
        &["T+", "T+", "T+", "T+"],
    ],
};

pub const TM_OR: Binary = Binary {
    order: &TM_ORDER,
    rows: &[
        &["T+", "T+", "T+", "T+"],
        &["T+", "T+C+", "T+C+", "C+"],
        &["T+", "T+C+", "C-", "C-"],
        &["T+", "C+", "C-", "F-"],
    ],
};

pub const TM_AND: Binary = Binary {
    order: &TM_ORDER,
    rows: &[
        &["T+", "C+", "C-", "F-"],
        &["C+", "C+", "F-C-", "F-"],
        &["C-", "F-C-", "F-C-", "F-"],
        &["F-", "F-", "F-", "F-"],
    ],
};

pub const KM_NEG: Unary = Unary { order: &KM_ORDER, rows: &["F-", "C-", "T-", "I-", "F+", "C+", "T+", "I+"] };
pub const KM_BOX: Unary = Unary { order: &KM_ORDER, rows: &["+", "-", "-", "+", "+", "-", "-", "+"] };
pub const KM_DIAMOND: Unary = Unary { order: &KM_ORDER, rows: &["+", "+", "-", "-", "+", "+", "-", "-"] };

pub const KM_IMP: Binary = Binary {
    order: &KM_ORDER,
    rows: &[
        &["T+", "C+", "F+", "I+", "T-", "C-", "F-", "I-"],
        &["T+", "T+C+", "C+", "I+", "T-", "T-C-", "C-", "I-"],
        &["T+", "T+", "T+", "I+", "T-", "T-", "T-", "I-"],
        &["I+", "I+", "I+", "I+", "I-", "I-", "I-", "I-"],
        &["T+", "C+", "F+", "I+", "T+", "C+", "F+", "I+"],
        &["T+", "T+C+", "C+", "I+", "T+", "T+C+", "C+", "I+"],
        &["T+", "T+", "T+", "I+", "T+", "T+", "T+", "I+"],
        &["I+", "I+", "I+", "I+", "I+", "I+", "I+", "I+"],
    ],
};

pub const KM_OR: Binary = Binary {
    order: &KM_ORDER,
    rows: &[
        &["T+", "T+", "T+", "I+", "T+", "T+", "T+", "I+"],
        &["T+", "T+C+", "C+", "I+", "T+", "T+C+", "C+", "I+"],
        &["T+", "C+", "F+", "I+", "T+", "C+", "F+", "I+"],
        &["I+", "I+", "I+", "I+", "I+", "I+", "I+", "I+"],
        &["T+", "T+", "T+", "I+", "T-", "T-", "T-", "I-"],
        &["T+", "T+C+", "C+", "I+", "T-", "T-C-", "C-", "I-"],
        &["T+", "C+", "F+", "I+", "T-", "C-", "F-", "I-"],
        &["I+", "I+", "I+", "I+", "I-", "I-", "I-", "I-"],
    ],
};

pub const KM_AND: Binary = Binary {
    order: &KM_ORDER,
    rows: &[
        &["T+", "C+", "F+", "I+", "T-", "C-", "F-", "I-"],
        &["C+", "F+C+", "F+", "I+", "C-", "F-C-", "F-", "I-"],
        &["F+", "F+", "F+", "I+", "F-", "F-", "F-", "I-"],
        &["I+", "I+", "I+", "I+", "I-", "I-", "I-", "I-"],
        &["T-", "C-", "F-", "I-", "T-", "C-", "F-", "I-"],
        &["C-", "F-C-", "F-", "I-", "C-", "F-C-", "F-", "I-"],
        &["F-", "F-", "F-", "I-", "F-", "F-", "F-", "I-"],
        &["I-", "I-", "I-", "I-", "I-", "I-", "I-", "I-"],
    ],
};

/// The four-valued quantifier tables. `deterministic` selects the `d`
/// variants, which differ only on the two mixed rows.
pub fn forall4(x: ValueSet, deterministic: bool) -> ValueSet {
    assert!(x.is_subset(ValueSet::of(&TM_ORDER)) && !x.is_empty());
    if x.contains(FNeg) {
        return cell("F-");
    }
    let mixed = x.contains(CPos) && x.contains(CNeg);
    if mixed {
        return if deterministic { cell("C-") } else { cell("F-C-") };
    }
    if x.contains(CNeg) {
        cell("C-")
    } else if x.contains(CPos) {
        cell("C+")
    } else {
        cell("T+")
    }
}

pub fn exists4(x: ValueSet, deterministic: bool) -> ValueSet {
    assert!(x.is_subset(ValueSet::of(&TM_ORDER)) && !x.is_empty());
    if x.contains(TPos) {
        return cell("T+");
    }
    let mixed = x.contains(CPos) && x.contains(CNeg);
    if mixed {
        return if deterministic { cell("C+") } else { cell("T+C+") };
    }
    if x.contains(CPos) {
        cell("C+")
    } else if x.contains(CNeg) {
        cell("C-")
    } else {
        cell("F-")
    }
}

/// Every nonempty subset of `order`.
pub fn subsets(order: &[TruthValue]) -> Vec<ValueSet> {
    (1u32..1 << order.len())
        .map(|mask| {
            let members: Vec<TruthValue> =
                order.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
            ValueSet::of(&members)
        })
        .collect()
}
