//! Quantifier multioperators, memoized per carrier.
//!
//! The non-deterministic `∀`/`∃` send a set `X` to every value reachable by
//! `∧̃`/`∨̃`-folding the members of `X` in some order. The deterministic
//! forms are the chain minimum/maximum on V4 and the patched folds on V6
//! and V8.

use std::sync::OnceLock;

use super::tables::{AND8, OR8};
use super::value::{TruthValue::*, ValueSet};
use super::{Carrier, QuantifierMode};

struct QuantTables {
    forall_nd: [ValueSet; 256],
    exists_nd: [ValueSet; 256],
    forall_det: [ValueSet; 256],
    exists_det: [ValueSet; 256],
}

/// Reachable accumulators after folding all of `x` in any order, for every
/// subset `x` of `carrier`. Indexed by bitmask.
pub(crate) fn fold_closure(carrier: ValueSet, op: &[[ValueSet; 8]; 8]) -> [ValueSet; 256] {
    let mut reach = [ValueSet::EMPTY; 256];
    for bits in 1u16..=255 {
        let x = ValueSet::from_bits(bits as u8);
        if !x.is_subset(carrier) {
            continue;
        }
        if let Some(v) = x.as_single() {
            reach[bits as usize] = ValueSet::single(v);
            continue;
        }
        let mut out = ValueSet::EMPTY;
        for last in x.iter() {
            let rest = x.minus(ValueSet::single(last));
            for acc in reach[rest.bits() as usize].iter() {
                out = out.union(op[acc.index()][last.index()].intersect(carrier));
            }
        }
        reach[bits as usize] = out;
    }
    reach
}

fn chain_extreme(x: ValueSet, min: bool) -> ValueSet {
    let pick = x.iter().filter_map(|v| v.chain_rank().map(|r| (r, v)));
    let v = if min { pick.min() } else { pick.max() };
    v.map(|(_, v)| ValueSet::single(v)).unwrap_or_default()
}

fn build(carrier: Carrier) -> QuantTables {
    let values = carrier.values();
    let forall_nd = fold_closure(values, &AND8);
    let exists_nd = fold_closure(values, &OR8);
    let mut forall_det = forall_nd;
    let mut exists_det = exists_nd;
    match carrier {
        Carrier::V4 => {
            for x in values.nonempty_subsets() {
                forall_det[x.bits() as usize] = chain_extreme(x, true);
                exists_det[x.bits() as usize] = chain_extreme(x, false);
            }
        }
        Carrier::V6 | Carrier::V8 => {
            for x in [ValueSet::of(&[CPos, CNeg]), ValueSet::of(&[CPos, CNeg, TPos])] {
                forall_det[x.bits() as usize] = ValueSet::single(CNeg);
            }
            for y in [ValueSet::of(&[CPos, CNeg]), ValueSet::of(&[CPos, CNeg, FNeg])] {
                exists_det[y.bits() as usize] = ValueSet::single(CPos);
            }
        }
    }
    QuantTables { forall_nd, exists_nd, forall_det, exists_det }
}

fn tables(carrier: Carrier) -> &'static QuantTables {
    static V4: OnceLock<QuantTables> = OnceLock::new();
    static V6: OnceLock<QuantTables> = OnceLock::new();
    static V8: OnceLock<QuantTables> = OnceLock::new();
    let cell = match carrier {
        Carrier::V4 => &V4,
        Carrier::V6 => &V6,
        Carrier::V8 => &V8,
    };
    cell.get_or_init(|| build(carrier))
}

pub(crate) fn forall(carrier: Carrier, mode: QuantifierMode, x: ValueSet) -> ValueSet {
    let t = tables(carrier);
    match mode {
        QuantifierMode::Nondeterministic => t.forall_nd[x.bits() as usize],
        QuantifierMode::Deterministic => t.forall_det[x.bits() as usize],
    }
}

pub(crate) fn exists(carrier: Carrier, mode: QuantifierMode, x: ValueSet) -> ValueSet {
    let t = tables(carrier);
    match mode {
        QuantifierMode::Nondeterministic => t.exists_nd[x.bits() as usize],
        QuantifierMode::Deterministic => t.exists_det[x.bits() as usize],
    }
}
