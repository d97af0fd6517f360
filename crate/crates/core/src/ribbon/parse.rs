//! Line-oriented diagram language.
//!
//! ```text
//! R 1          # r_power, optional, before any slice
//! bottom 0     # input width, optional; otherwise taken from the first slice
//! cup
//! id t+        # tokens fill strands left to right; missing ones are `id`
//! cap
//! ```
//!
//! A `/` ends a line early, so `R 1 / cup / id t+ / cap` is the same diagram.
//! `mul` (2 -> 1) expands to a cup followed by a node; `eta` is `cap`.

use crate::error::{Error, Result};

use super::{Generator, RibbonDiagram};

enum Token {
    Id,
    Gen(Generator),
    Mul,
}

impl Token {
    fn lookup(word: &str) -> Option<Token> {
        Some(match word {
            "id" => Token::Id,
            "node" => Token::Gen(Generator::Node),
            "cap" | "eta" => Token::Gen(Generator::Cap),
            "cup" => Token::Gen(Generator::Cup),
            "x" => Token::Gen(Generator::Cross),
            "t+" => Token::Gen(Generator::TwistR),
            "t-" => Token::Gen(Generator::TwistL),
            "mul" => Token::Mul,
            _ => return None,
        })
    }

    fn inputs(&self) -> usize {
        match self {
            Token::Id => 1,
            Token::Gen(g) => g.arity().0,
            Token::Mul => 2,
        }
    }
}

/// Words of one logical line with their 1-based columns.
fn segments(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut start = 0;
        for part in line.split('/') {
            let mut words = Vec::new();
            let mut off = 0;
            for w in part.split_whitespace() {
                let at = part[off..].find(w).expect("word is in its segment") + off;
                off = at + w.len();
                words.push((start + at + 1, w));
            }
            if !words.is_empty() {
                out.push((ln + 1, words));
            }
            start += part.len() + 1;
        }
    }
    out
}

fn directive_value(line: usize, words: &[(usize, &str)]) -> Result<usize> {
    let (col, name) = words[0];
    match words {
        [_, (vcol, v)] => v
            .parse::<usize>()
            .map_err(|_| Error::parse(line, *vcol, format!("'{name}' expects a nonnegative integer, got '{v}'"))),
        _ => Err(Error::parse(line, col, format!("'{name}' expects exactly one integer"))),
    }
}

pub fn parse(text: &str) -> Result<RibbonDiagram> {
    let mut r_power: Option<u32> = None;
    let mut bottom: Option<usize> = None;
    let mut d = RibbonDiagram::default();
    let mut width = 0;
    let mut started = false;

    for (line, words) in segments(text) {
        let (col, head) = words[0];
        if head == "R" || head == "bottom" {
            if started {
                return Err(Error::parse(line, col, format!("'{head}' must come before the first slice")));
            }
            let v = directive_value(line, &words)?;
            let slot_taken = if head == "R" {
                let taken = r_power.is_some();
                r_power = Some(u32::try_from(v).map_err(|_| Error::parse(line, col, "R power too large"))?);
                taken
            } else {
                let taken = bottom.is_some();
                bottom = Some(v);
                taken
            };
            if slot_taken {
                return Err(Error::parse(line, col, format!("duplicate '{head}'")));
            }
            continue;
        }

        let mut tokens = Vec::with_capacity(words.len());
        for &(c, w) in &words {
            let t = Token::lookup(w).ok_or_else(|| Error::parse(line, c, format!("unknown token '{w}'")))?;
            tokens.push((c, t));
        }
        if !started {
            started = true;
            width = bottom.unwrap_or_else(|| tokens.iter().map(|(_, t)| t.inputs()).sum());
            d.bottom = width;
        }

        let mut pos = 0;
        for (c, t) in tokens {
            if pos + t.inputs() > width {
                return Err(Error::parse(
                    line,
                    c,
                    format!("token needs strands {}..{} but the width is {width}", pos, pos + t.inputs()),
                ));
            }
            match t {
                Token::Id => pos += 1,
                Token::Gen(g) => {
                    let (i, o) = g.arity();
                    d.push(g, pos);
                    width = width - i + o;
                    pos += o;
                }
                Token::Mul => {
                    d.push(Generator::Cup, pos + 2);
                    d.push(Generator::Node, pos);
                    width -= 1;
                    pos += 1;
                }
            }
        }
    }
    if !started {
        d.bottom = bottom.unwrap_or(0);
    }
    d.r_power = r_power.unwrap_or(0);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::Slice;

    fn s(gen: Generator, pos: usize) -> Slice {
        Slice { gen, pos }
    }

    #[test]
    fn rp2_diagram() {
        let d = parse("R 1 / cup / id t+ / cap").unwrap();
        assert_eq!(d.r_power, 1);
        assert_eq!(d.bottom, 0);
        assert_eq!(
            d.slices,
            vec![s(Generator::Cup, 0), s(Generator::TwistR, 1), s(Generator::Cap, 0)]
        );
        let multi = parse("# projective plane\nR 1\ncup\nid t+   # twist\ncap\n").unwrap();
        assert_eq!(multi, d);
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse("").unwrap(), RibbonDiagram::default());
        assert_eq!(parse("  # nothing\n\n").unwrap(), RibbonDiagram::default());
        assert_eq!(parse("bottom 2").unwrap().validate().unwrap(), (2, 2));
    }

    #[test]
    fn cap_on_empty_bottom_is_an_arity_error() {
        let e = parse("bottom 0\ncap").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, .. }), "{e:?}");
    }

    #[test]
    fn node_on_two_strands_fails() {
        let e = parse("bottom 2 / node").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 12, .. }), "{e:?}");
    }

    #[test]
    fn unknown_token_position() {
        let e = parse("cup\nid  t* ").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 5, .. }), "{e:?}");
    }

    #[test]
    fn directives_after_slices_are_rejected() {
        assert!(parse("cup / R 1").is_err());
        assert!(parse("R 1 / R 2").is_err());
        assert!(parse("R -1").is_err());
        assert!(parse("bottom").is_err());
    }

    #[test]
    fn multi_generator_lines_expand_left_to_right() {
        let d = parse("bottom 4 / x t+ t-").unwrap();
        assert_eq!(
            d.slices,
            vec![s(Generator::Cross, 0), s(Generator::TwistR, 2), s(Generator::TwistL, 3)]
        );
        let d = parse("bottom 2 / cup cup id id").unwrap();
        assert_eq!(d.slices, vec![s(Generator::Cup, 0), s(Generator::Cup, 2)]);
        assert_eq!(d.validate().unwrap(), (2, 6));
    }

    #[test]
    fn macros() {
        let d = parse("bottom 3 / id mul").unwrap();
        assert_eq!(d.slices, vec![s(Generator::Cup, 3), s(Generator::Node, 1)]);
        assert_eq!(d.validate().unwrap(), (3, 2));
        assert_eq!(parse("cup / eta").unwrap(), parse("cup / cap").unwrap());
    }

    #[test]
    fn bottom_inferred_from_first_slice() {
        assert_eq!(parse("node").unwrap().validate().unwrap(), (3, 0));
        assert_eq!(parse("id t+ id").unwrap().validate().unwrap(), (3, 3));
    }
}
