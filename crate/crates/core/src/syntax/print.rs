use super::{Formula, IdentityKind};

// Binding strength, loosest first.
const QUANT: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

/// Sugared view of one node.
enum View<'a> {
    Atom,
    Ident,
    Quant(&'static str, &'a str, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Or(&'a Formula, &'a Formula),
    And(&'a Formula, &'a Formula),
    Prefix(&'static str, &'a Formula),
}

fn view(f: &Formula) -> View<'_> {
    match f {
        Formula::Atom(..) => View::Atom,
        Formula::Identity(..) => View::Ident,
        Formula::Box(inner) => match inner.as_ref() {
            Formula::Identity(IdentityKind::Necessary, _, _) => View::Ident,
            _ => View::Prefix("[]", inner),
        },
        Formula::Forall(x, body) => View::Quant("forall", x, body),
        Formula::Neg(inner) => match inner.as_ref() {
            Formula::Box(b) => match b.as_ref() {
                Formula::Neg(a) => View::Prefix("<>", a),
                _ => View::Prefix("~", inner),
            },
            Formula::Forall(x, body) => match body.as_ref() {
                Formula::Neg(a) => View::Quant("exists", x, a),
                _ => View::Prefix("~", inner),
            },
            Formula::Imp(a, b) => match b.as_ref() {
                Formula::Neg(nb) => View::And(a, nb),
                _ => View::Prefix("~", inner),
            },
            _ => View::Prefix("~", inner),
        },
        Formula::Imp(a, b) => match a.as_ref() {
            Formula::Neg(na) if matches!(view(a), View::Prefix("~", _)) => View::Or(na, b),
            _ => View::Imp(a, b),
        },
    }
}

fn level(v: &View<'_>) -> u8 {
    match v {
        View::Atom => ATOM,
        // parenthesized under prefix operators for readability
        View::Ident => AND,
        View::Quant(..) => QUANT,
        View::Imp(..) => IMP,
        View::Or(..) => OR,
        View::And(..) => AND,
        View::Prefix(..) => UNARY,
    }
}

fn atom(f: &Formula, out: &mut String) {
    use std::fmt::Write;
    match f {
        Formula::Atom(p, args) if args.is_empty() => out.push_str(p),
        Formula::Atom(p, args) => {
            out.push_str(p);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{a}");
            }
            out.push(')');
        }
        Formula::Identity(kind, a, b) => {
            let op = match kind {
                IdentityKind::Necessary => "=",
                IdentityKind::Contingent => "=c",
            };
            let _ = write!(out, "{a} {op} {b}");
        }
        Formula::Box(inner) => match inner.as_ref() {
            Formula::Identity(_, a, b) => {
                let _ = write!(out, "{a} =! {b}");
            }
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

/// Whether the printed form of `f` would end in an unparenthesized
/// quantifier, whose scope would swallow anything printed after it.
fn open_tail(f: &Formula, min: u8) -> bool {
    let v = view(f);
    match v {
        View::Quant(..) => true,
        _ if level(&v) < min => false,
        View::Atom | View::Ident => false,
        View::Prefix(_, a) => open_tail(a, UNARY),
        View::Imp(_, b) => open_tail(b, IMP),
        View::Or(_, b) => open_tail(b, AND),
        View::And(_, b) => open_tail(b, UNARY),
    }
}

/// `tail`: the text printed here runs to the end of its enclosing group, so
/// a quantifier can appear unparenthesized.
fn go(f: &Formula, min: u8, tail: bool, out: &mut String) {
    let v = view(f);
    let wrap = level(&v) < min && !matches!(v, View::Quant(..)) || !tail && open_tail(f, min);
    if wrap {
        out.push('(');
    }
    let tail = tail || wrap;
    match v {
        View::Atom | View::Ident => atom(f, out),
        View::Quant(q, x, body) => {
            out.push_str(q);
            out.push(' ');
            out.push_str(x);
            out.push_str(". ");
            go(body, QUANT, true, out);
        }
        View::Prefix(op, a) => {
            out.push_str(op);
            go(a, UNARY, tail, out);
        }
        View::Imp(a, b) => {
            go(a, OR, false, out);
            out.push_str(" -> ");
            go(b, IMP, tail, out);
        }
        View::Or(a, b) => {
            go(a, OR, false, out);
            out.push_str(" | ");
            go(b, AND, tail, out);
        }
        View::And(a, b) => {
            go(a, AND, false, out);
            out.push_str(" & ");
            go(b, UNARY, tail, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

pub(super) fn render(f: &Formula) -> String {
    let mut out = String::new();
    go(f, QUANT, true, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, Signature};

    fn sig() -> Signature {
        Signature::new().with_predicate("P", 1).with_predicate("A", 0).with_predicate("B", 0).with_constant("c")
    }

    #[test]
    fn sugar_is_restored() {
        for text in [
            "<>A",
            "A | B",
            "A & B",
            "exists x. P(x)",
            "c =! x",
            "forall x. []P(x) -> []forall x. P(x)",
            "(forall x. P(x)) -> A",
            "~~A",
            "A -> B -> A",
            "(A -> B) -> A",
            "[](A | ~A)",
            "A & forall x. P(x)",
            "(A & forall x. P(x)) | B",
            "x = y -> P(x) -> P(y)",
            "~(x =c y)",
        ] {
            let f = parse_formula(text, &sig()).unwrap();
            assert_eq!(f.to_string(), text);
        }
    }
}
