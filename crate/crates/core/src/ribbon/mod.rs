//! Ribbon diagrams: layered compositions of nodes, caps, cups, crossings and
//! half twists, read bottom to top.

mod eval;
mod moves;
mod parse;

use std::fmt;

use crate::error::{Error, Result};

pub use eval::{evaluate, evaluate_with, EvalOptions, LinearBlock};
pub use moves::move_pair;
pub use parse::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Three legs in, none out; weight `C_abc`.
    Node,
    /// Two legs in, none out; weight `B_ab`.
    Cap,
    /// None in, two out; weight `B^ab`.
    Cup,
    /// Two in, two out; weight `lambda_ab^cd`.
    Cross,
    /// Right-handed half twist `tau`.
    TwistR,
    /// Left-handed half twist `tau^-1`.
    TwistL,
}

impl Generator {
    /// `(inputs, outputs)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::Node => (3, 0),
            Generator::Cap => (2, 0),
            Generator::Cup => (0, 2),
            Generator::Cross => (2, 2),
            Generator::TwistR | Generator::TwistL => (1, 1),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Generator::Node => "node",
            Generator::Cap => "cap",
            Generator::Cup => "cup",
            Generator::Cross => "x",
            Generator::TwistR => "t+",
            Generator::TwistL => "t-",
        }
    }
}

/// One generator acting on strands `pos..pos+inputs`, identity elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slice {
    pub gen: Generator,
    pub pos: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RibbonDiagram {
    /// Number of internal vertices; the diagram is weighted by `R^r_power`.
    pub r_power: u32,
    /// Input width.
    pub bottom: usize,
    pub slices: Vec<Slice>,
}

impl RibbonDiagram {
    pub fn new(bottom: usize) -> Self {
        RibbonDiagram {
            r_power: 0,
            bottom,
            slices: Vec::new(),
        }
    }

    pub fn push(&mut self, gen: Generator, pos: usize) -> &mut Self {
        self.slices.push(Slice { gen, pos });
        self
    }

    /// Widths before each slice and after the last one.
    pub fn widths(&self) -> Result<Vec<usize>> {
        let mut w = self.bottom;
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        out.push(w);
        for (k, s) in self.slices.iter().enumerate() {
            let (i, o) = s.gen.arity();
            if s.pos + i > w {
                return Err(Error::Arity {
                    slice: k,
                    message: format!(
                        "{} at strand {} needs {} inputs but width is {w}",
                        s.gen.token(),
                        s.pos,
                        i
                    ),
                });
            }
            w = w - i + o;
            out.push(w);
        }
        Ok(out)
    }

    /// `(bottom width, top width)`, or the first inconsistent slice.
    pub fn validate(&self) -> Result<(usize, usize)> {
        let w = self.widths()?;
        Ok((self.bottom, *w.last().unwrap_or(&self.bottom)))
    }

    /// `self` followed by `upper` (stacked on top).
    pub fn compose(&self, upper: &RibbonDiagram) -> Result<RibbonDiagram> {
        let (_, m) = self.validate()?;
        let (n, _) = upper.validate()?;
        if m != n {
            return Err(Error::Mismatch(format!(
                "cannot compose: lower diagram has top width {m}, upper has bottom width {n}"
            )));
        }
        let mut out = self.clone();
        out.r_power += upper.r_power;
        out.slices.extend_from_slice(&upper.slices);
        Ok(out)
    }

    /// Replaces every left-handed twist by three right-handed ones.
    pub fn expand_left_twists(&self) -> RibbonDiagram {
        let mut out = RibbonDiagram {
            r_power: self.r_power,
            bottom: self.bottom,
            slices: Vec::with_capacity(self.slices.len()),
        };
        for s in &self.slices {
            if s.gen == Generator::TwistL {
                for _ in 0..3 {
                    out.push(Generator::TwistR, s.pos);
                }
            } else {
                out.slices.push(*s);
            }
        }
        out
    }

    pub fn count(&self, gen: Generator) -> usize {
        self.slices.iter().filter(|s| s.gen == gen).count()
    }
}

impl fmt::Display for RibbonDiagram {
    /// DSL text with one generator per line; parses back to the same diagram.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r_power > 0 {
            writeln!(f, "R {}", self.r_power)?;
        }
        writeln!(f, "bottom {}", self.bottom)?;
        for s in &self.slices {
            for _ in 0..s.pos {
                write!(f, "id ")?;
            }
            writeln!(f, "{}", s.gen.token())?;
        }
        Ok(())
    }
}
