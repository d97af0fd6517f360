//! Quadratic enhancements on closed surfaces written as connect sums of tori
//! and projective planes, their Arf-Brown-Kervaire invariants, and the
//! self-linking count of ribbon curves.
//!
//! Values of `q` live in Z/4 and are stored as `u8` in `0..4`.

use std::fmt;
use std::str::FromStr;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};

/// Largest `2g + c` accepted by [`abk`].
pub const MAX_ABK_RANK: usize = 20;

/// A closed surface `T^#g # RP2^#c` with `q` given on the standard basis
/// `x_1, y_1, ..., x_g, y_g, z_1, ..., z_c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PinSurfacePresentation {
    torus: Vec<(u8, u8)>,
    crosscaps: Vec<u8>,
}

impl PinSurfacePresentation {
    /// Torus values must be even and crosscap values odd (mod 4).
    pub fn new(torus: Vec<(u8, u8)>, crosscaps: Vec<u8>) -> Result<Self> {
        let torus: Vec<(u8, u8)> = torus.into_iter().map(|(a, b)| (a % 4, b % 4)).collect();
        let crosscaps: Vec<u8> = crosscaps.into_iter().map(|z| z % 4).collect();
        if let Some(&(a, b)) = torus.iter().find(|(a, b)| a % 2 != 0 || b % 2 != 0) {
            return Err(Error::InvalidArgument(format!(
                "torus values must be 0 or 2 mod 4, got ({a},{b})"
            )));
        }
        if let Some(&z) = crosscaps.iter().find(|z| *z % 2 != 1) {
            return Err(Error::InvalidArgument(format!(
                "crosscap values must be 1 or 3 mod 4, got {z}"
            )));
        }
        Ok(PinSurfacePresentation { torus, crosscaps })
    }

    pub fn sphere() -> Self {
        PinSurfacePresentation::default()
    }

    pub fn torus(qx: u8, qy: u8) -> Result<Self> {
        Self::new(vec![(qx, qy)], vec![])
    }

    pub fn crosscap_sum(ks: &[u8]) -> Result<Self> {
        Self::new(vec![], ks.to_vec())
    }

    pub fn g(&self) -> usize {
        self.torus.len()
    }

    pub fn c(&self) -> usize {
        self.crosscaps.len()
    }

    /// `2g + c`, the dimension of `H_1(-; Z/2)`.
    pub fn rank(&self) -> usize {
        2 * self.g() + self.c()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.g() as i64 - self.c() as i64
    }

    pub fn torus_values(&self) -> &[(u8, u8)] {
        &self.torus
    }

    pub fn crosscap_values(&self) -> &[u8] {
        &self.crosscaps
    }

    /// `q` on the basis in order.
    pub fn basis_values(&self) -> Vec<u8> {
        self.torus
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.crosscaps.iter().copied())
            .collect()
    }

    /// Intersection form on the basis: hyperbolic pairs for tori, 1 on each
    /// crosscap, 0 elsewhere.
    pub fn pairing(&self, i: usize, j: usize) -> u8 {
        let t = 2 * self.g();
        if i < t && j < t {
            u8::from(i / 2 == j / 2 && i != j)
        } else {
            u8::from(i == j)
        }
    }

    /// Every basis value negated mod 4.
    pub fn negated(&self) -> Self {
        PinSurfacePresentation {
            torus: self.torus.iter().map(|&(a, b)| ((4 - a) % 4, (4 - b) % 4)).collect(),
            crosscaps: self.crosscaps.iter().map(|&z| (4 - z) % 4).collect(),
        }
    }
}

/// `q(x)` for `x` given by its coordinates in the basis, built up one basis
/// vector at a time with `q(u + v) = q(u) + q(v) + 2<u, v>`.
pub fn q_eval(p: &PinSurfacePresentation, x: &[bool]) -> Result<u8> {
    if x.len() != p.rank() {
        return Err(Error::Shape(format!(
            "vector has length {}, surface has rank {}",
            x.len(),
            p.rank()
        )));
    }
    let basis = p.basis_values();
    let mut partial: Vec<usize> = Vec::new();
    let mut q = 0u8;
    for (i, _) in x.iter().enumerate().filter(|(_, &b)| b) {
        let pair: u8 = partial.iter().map(|&j| p.pairing(j, i)).sum::<u8>() % 2;
        q = (q + basis[i] + 2 * pair) % 4;
        partial.push(i);
    }
    Ok(q)
}

/// Arf-Brown-Kervaire invariant `2^{-n/2} sum_x i^{q(x)}`, by enumeration.
pub fn abk(p: &PinSurfacePresentation) -> Result<Cyclo> {
    let n = p.rank();
    if n > MAX_ABK_RANK {
        return Err(Error::LimitExceeded(format!(
            "2g + c = {n} exceeds the enumeration cap of {MAX_ABK_RANK}"
        )));
    }
    let basis = p.basis_values();
    let g = p.g();
    let mut counts = [0i64; 4];
    for mask in 0u32..(1u32 << n) {
        let bit = |i: usize| (mask >> i) & 1;
        let mut q: u32 = 0;
        for (i, &v) in basis.iter().enumerate() {
            q += bit(i) * v as u32;
        }
        for k in 0..g {
            q += 2 * bit(2 * k) * bit(2 * k + 1);
        }
        counts[(q % 4) as usize] += 1;
    }
    let sum: Cyclo = (0..4)
        .map(|k| Cyclo::i_pow(k as i64).scale_int(counts[k]))
        .sum();
    Ok(&sum * &Cyclo::sqrt2_pow(-(n as i64)))
}

/// Equal ABK invariants on the same `(g, c)`.
pub fn are_equivalent(a: &PinSurfacePresentation, b: &PinSurfacePresentation) -> Result<bool> {
    if (a.g(), a.c()) != (b.g(), b.c()) {
        return Err(Error::Mismatch(format!(
            "surfaces (g={}, c={}) and (g={}, c={}) are not compared",
            a.g(),
            a.c(),
            b.g(),
            b.c()
        )));
    }
    Ok(abk(a)? == abk(b)?)
}

/// The effect of a Dehn twist along `x` on a torus: `y -> x + y`.
pub fn dehn_twist_torus(p: &PinSurfacePresentation) -> Result<PinSurfacePresentation> {
    match (p.torus.as_slice(), p.crosscaps.len()) {
        ([(qx, qy)], 0) => PinSurfacePresentation::torus(*qx, (qx + qy + 2) % 4),
        _ => Err(Error::InvalidArgument(format!(
            "Dehn twist needs a torus, got g={}, c={}",
            p.g(),
            p.c()
        ))),
    }
}

impl fmt::Display for PinSurfacePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torus.iter().map(|(a, b)| format!("{a},{b}")).collect();
        let z: Vec<String> = self.crosscaps.iter().map(u8::to_string).collect();
        write!(f, "g={},c={},q=[{}|{}]", self.g(), self.c(), t.join(";"), z.join(","))
    }
}

impl FromStr for PinSurfacePresentation {
    type Err = Error;

    /// `g=<int>,c=<int>,q=[qx1,qy1;qx2,qy2|qz1,qz2]`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::parse(1, 1, format!("{msg} in presentation '{s}'"));
        let rest = s.strip_prefix("g=").ok_or_else(|| err("expected 'g='"))?;
        let (g, rest) = rest.split_once(",c=").ok_or_else(|| err("expected ',c='"))?;
        let (c, rest) = rest.split_once(",q=[").ok_or_else(|| err("expected ',q=['"))?;
        let body = rest.strip_suffix(']').ok_or_else(|| err("expected closing ']'"))?;
        let g: usize = g.parse().map_err(|_| err("bad g"))?;
        let c: usize = c.parse().map_err(|_| err("bad c"))?;
        let (tor, caps) = body.split_once('|').unwrap_or((body, ""));
        let num = |t: &str| t.parse::<u8>().map_err(|_| err(&format!("bad value '{t}'")));
        let mut torus = Vec::new();
        for pair in tor.split(';').filter(|t| !t.is_empty()) {
            let (a, b) = pair.split_once(',').ok_or_else(|| err("torus entries are 'qx,qy'"))?;
            torus.push((num(a)?, num(b)?));
        }
        let crosscaps = caps
            .split(',')
            .filter(|t| !t.is_empty())
            .map(num)
            .collect::<Result<Vec<u8>>>()?;
        if torus.len() != g || crosscaps.len() != c {
            return Err(err(&format!(
                "g={g}, c={c} but {} torus pairs and {} crosscap values given",
                torus.len(),
                crosscaps.len()
            )));
        }
        PinSurfacePresentation::new(torus, crosscaps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveToken {
    RightTwist,
    LeftTwist,
    Crossing,
}

/// A closed ribbon curve recorded by its half twists and self-crossings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RibbonCurve(pub Vec<CurveToken>);

impl FromStr for RibbonCurve {
    type Err = Error;

    /// Tokens `rh`, `lh`, `crossing` (or `x`), separated by spaces or commas.
    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t {
                "rh" => Ok(CurveToken::RightTwist),
                "lh" => Ok(CurveToken::LeftTwist),
                "crossing" | "x" => Ok(CurveToken::Crossing),
                other => Err(Error::parse(1, 1, format!("unknown curve token '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(RibbonCurve)
    }
}

/// `#rh - #lh + 2 #crossings` mod 4.
pub fn self_linking(curve: &RibbonCurve) -> u8 {
    let total: i64 = curve
        .0
        .iter()
        .map(|t| match t {
            CurveToken::RightTwist => 1,
            CurveToken::LeftTwist => -1,
            CurveToken::Crossing => 2,
        })
        .sum();
    total.rem_euclid(4) as u8
}
