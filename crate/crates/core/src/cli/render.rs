//! Machine-readable (JSON) forms of library reports.

use serde_json::{json, Value};

use super::wire::{encode_filter, encode_menu};
use crate::axioms::{PropertyReport, Witness};
use crate::report::{Mode, TheoremReport};
use crate::representation::{Block, WarpReport, WarpViolation};
use crate::sequential::OrderWitness;
use crate::universe::{Alt, Menu, Universe};

pub const SCHEMA_VERSION: u32 = 1;

fn menu(u: &Universe, m: Menu) -> Value {
    json!(encode_menu(u, m))
}

fn alt(u: &Universe, a: Alt) -> Value {
    json!(u.name(a))
}

pub fn mode(m: Mode) -> Value {
    match m {
        Mode::Exhaustive => json!("exhaustive"),
        Mode::Sampled { count, seed } => json!({"sampled": {"count": count, "seed": seed}}),
    }
}

pub fn witness(u: &Universe, w: &Witness) -> Value {
    match w {
        Witness::Alpha { x, subset, superset } => json!({
            "type": "alpha", "x": alt(u, *x), "subset": menu(u, *subset), "superset": menu(u, *superset),
        }),
        Witness::Beta {
            x1,
            x2,
            subset,
            superset,
        } => json!({
            "type": "beta", "x1": alt(u, *x1), "x2": alt(u, *x2),
            "subset": menu(u, *subset), "superset": menu(u, *superset),
        }),
        Witness::Tau { x, subset, superset } => json!({
            "type": "tau", "x": alt(u, *x), "subset": menu(u, *subset), "superset": menu(u, *superset),
        }),
        Witness::Io {
            x,
            considered_in,
            dropped_in,
        } => json!({
            "type": "io", "x": alt(u, *x),
            "considered_in": menu(u, *considered_in), "dropped_in": menu(u, *dropped_in),
        }),
        Witness::Dio {
            first,
            second,
            first_image,
            second_image,
        } => json!({
            "type": "dio",
            "first": first.iter().map(|a| u.name(*a)).collect::<Vec<_>>(),
            "second": second.iter().map(|a| u.name(*a)).collect::<Vec<_>>(),
            "first_image": menu(u, *first_image), "second_image": menu(u, *second_image),
        }),
        Witness::ConstantNumber { menu: m, image_size } => json!({
            "type": "constant-number", "menu": menu(u, *m), "image_size": image_size,
        }),
    }
}

pub fn property(u: &Universe, r: &PropertyReport) -> Value {
    json!({
        "property": r.property.to_string(),
        "holds": r.holds,
        "considered": r.considered.map(|y| menu(u, y)),
        "witness": r.witness.as_ref().map(|w| witness(u, w)),
        "explanation": r.describe(u),
    })
}

pub fn theorem(u: &Universe, r: &TheoremReport, unit: &str) -> Value {
    json!({
        "claim": r.claim,
        "mode": mode(r.mode),
        "universe_size": r.universe_size,
        "unit": unit,
        "checked": r.checked,
        "agreements": r.agreements,
        "holds": r.holds(),
        "preconditions_failed": r.preconditions_failed,
        "counterexamples": r.counterexamples.iter().map(|c| json!({
            "label": c.label,
            "detail": c.detail,
            "menu": c.menu.map(|m| menu(u, m)),
            "filters": c.filters.iter().map(|f| serde_json::to_value(encode_filter(f)).expect("serializable")).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn order_witness(u: &Universe, w: &OrderWitness) -> Value {
    let one_based = |o: &[usize]| o.iter().map(|i| i + 1).collect::<Vec<_>>();
    json!({
        "menu": menu(u, w.menu),
        "reference_order": one_based(&w.reference),
        "other_order": one_based(&w.other),
        "reference_image": menu(u, w.reference_image),
        "other_image": menu(u, w.other_image),
    })
}

fn block(u: &Universe, b: &Block) -> Value {
    match b {
        Block::Overload { candidate, t, t_prime } => json!({
            "candidate": alt(u, *candidate), "clause": "overload",
            "t": menu(u, *t), "t_prime": menu(u, *t_prime),
        }),
        Block::NotChosen { candidate } => json!({
            "candidate": alt(u, *candidate), "clause": "not the recorded choice of S",
        }),
        Block::PairwiseMismatch { candidate, t, pair } => json!({
            "candidate": alt(u, *candidate), "clause": "pairwise",
            "t": menu(u, *t), "lost_pair": pair.map(|q| menu(u, q)),
        }),
    }
}

pub fn violation(u: &Universe, v: &WarpViolation) -> Value {
    let body = match v {
        WarpViolation::Reversal { x, y, s, t } => json!({
            "x": alt(u, *x), "y": alt(u, *y), "s": menu(u, *s), "t": menu(u, *t),
        }),
        WarpViolation::NoViableCandidate { menu: m, blocks } => json!({
            "menu": menu(u, *m), "blocks": blocks.iter().map(|b| block(u, b)).collect::<Vec<_>>(),
        }),
        WarpViolation::ChosenAfterDeclined { alt: a, chosen_from } => json!({
            "alt": alt(u, *a), "chosen_from": menu(u, *chosen_from),
        }),
    };
    json!({"clause": v.clause(), "explanation": describe_violation(u, v), "detail": body})
}

pub fn warp(u: &Universe, r: &WarpReport) -> Value {
    json!({
        "axiom": r.axiom.name(),
        "satisfied": r.satisfied,
        "violations": r.violations.iter().map(|v| violation(u, v)).collect::<Vec<_>>(),
        "coverage_gaps": r.coverage_gaps.iter().map(|m| menu(u, *m)).collect::<Vec<_>>(),
        "rationalizing_preference": r.rationalizing_preference.as_ref().map(|p| p.names()),
        "notes": r.notes,
    })
}

pub fn describe_violation(u: &Universe, v: &WarpViolation) -> String {
    let s = |m: Menu| u.show(m);
    let n = |a: Alt| u.name(a);
    match v {
        WarpViolation::Reversal { x, y, s: sm, t } => format!(
            "c({}) = {} with {} available, but c({}) = {} with {} available",
            s(*sm),
            n(*x),
            n(*y),
            s(*t),
            n(*y),
            n(*x)
        ),
        WarpViolation::NoViableCandidate { menu: m, blocks } => {
            let parts: Vec<String> = blocks
                .iter()
                .map(|b| match b {
                    Block::Overload { candidate, t, t_prime } => format!(
                        "{}: c({}) in S and {} = c({}) with {} inside it, but c({}) != {}",
                        n(*candidate),
                        s(*t),
                        n(*candidate),
                        s(*t_prime),
                        s(*t),
                        s(*t),
                        n(*candidate)
                    ),
                    Block::NotChosen { candidate } => {
                        format!("{}: not the recorded choice from {}", n(*candidate), s(*m))
                    }
                    Block::PairwiseMismatch { candidate, t, pair } => match pair {
                        Some(q) => format!(
                            "{}: c({}) = {} but c({}) != {}",
                            n(*candidate),
                            s(*t),
                            n(*candidate),
                            s(*q),
                            n(*candidate)
                        ),
                        None => format!(
                            "{}: wins every pair in {} but c({}) != {}",
                            n(*candidate),
                            s(*t),
                            s(*t),
                            n(*candidate)
                        ),
                    },
                })
                .collect();
            format!("S = {} has no viable b* ({})", s(*m), parts.join("; "))
        }
        WarpViolation::ChosenAfterDeclined { alt: a, chosen_from } => {
            format!("c({{{}}}) is no choice, but c({}) = {}", n(*a), s(*chosen_from), n(*a))
        }
    }
}
