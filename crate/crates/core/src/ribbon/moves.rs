//! Diagram fragments for the thirteen local moves. Each pair evaluates to the
//! two sides of the matching tensor identity in `axioms`.

use crate::axioms::Axiom;

use super::{parse, RibbonDiagram};

fn texts(which: Axiom) -> (&'static str, &'static str) {
    match which {
        Axiom::A1 => ("bottom 1 / id cup / cap id", "bottom 1 / id"),
        Axiom::A2 => ("bottom 2 / id id cup / node id", "bottom 2 / cup id id / id node"),
        Axiom::A3 => (
            "bottom 4 / id id cup id id / node id id id / node",
            "bottom 4 / id id id cup id / id node id id / node",
        ),
        Axiom::A4 => (
            "R 1 / bottom 3 / id id cup id / id cup id id id / id id node id / id id cup id id / node id id id / node",
            "bottom 3 / node",
        ),
        Axiom::A5 => ("bottom 3 / id x / cap id", "bottom 3 / x id / id cap"),
        Axiom::A6 => ("bottom 4 / x id id / id node", "bottom 4 / id x id / id id x / node id"),
        Axiom::A7 => ("bottom 1 / cup id / id x / cap id", "bottom 1 / id cup / x id / id cap"),
        Axiom::A8 => ("bottom 2 / x / x", "bottom 2 / id id"),
        Axiom::A9 => ("bottom 3 / id x / x id / id x", "bottom 3 / x id / id x / x id"),
        Axiom::A10 => ("bottom 2 / id t+ / cap", "bottom 2 / t+ id / cap"),
        Axiom::A11 => ("bottom 3 / id id t+ / node", "bottom 3 / t+ t+ id / x id / node"),
        Axiom::A12 => ("bottom 2 / t+ id / x", "bottom 2 / x / id t+"),
        Axiom::A13 => ("bottom 1 / t+ / t+", "bottom 1 / id cup / x id / id cap"),
    }
}

/// The two sides of a local move.
pub fn move_pair(which: Axiom) -> (RibbonDiagram, RibbonDiagram) {
    let (l, r) = texts(which);
    (
        parse(l).expect("built-in fragment parses"),
        parse(r).expect("built-in fragment parses"),
    )
}
