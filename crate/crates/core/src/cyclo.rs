//! Exact arithmetic in the eighth cyclotomic field.
//!
//! Every element is stored as `c0 + c1 z + c2 z^2 + c3 z^3` with rational
//! coefficients and `z = e^{i pi/4}`, so `z^4 = -1`. The power basis makes the
//! representation canonical: two values are equal iff their coefficients are.
//! Square roots of two, the imaginary unit and all eighth roots of unity are
//! exact members.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// An element of Q(z), z a primitive eighth root of unity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclo {
    c: [Q; 4],
}

impl Cyclo {
    pub fn from_coeffs(c: [BigRational; 4]) -> Self {
        Cyclo {
            c: c.map(Q::from_big),
        }
    }

    pub fn coeffs(&self) -> [BigRational; 4] {
        [self.c[0].to_big(), self.c[1].to_big(), self.c[2].to_big(), self.c[3].to_big()]
    }

    pub fn zero() -> Self {
        Cyclo::default()
    }

    pub fn one() -> Self {
        Cyclo::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut c = Cyclo::zero();
        c.c[0] = Q::int(n);
        c
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut c = Cyclo::zero();
        c.c[0] = Q::from_big(r);
        c
    }

    /// `p/q` as an element of the rational subfield. Panics if `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        Cyclo::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `z^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = Cyclo::zero();
        if k < 4 {
            c.c[k] = Q::int(1);
        } else {
            c.c[k - 4] = Q::int(-1);
        }
        c
    }

    pub fn zeta() -> Self {
        Cyclo::zeta_pow(1)
    }

    /// The imaginary unit, `z^2`.
    pub fn i() -> Self {
        Cyclo::zeta_pow(2)
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        Cyclo::zeta_pow(2 * k)
    }

    /// The positive square root of two, `z - z^3`.
    pub fn sqrt2() -> Self {
        &Cyclo::zeta_pow(1) - &Cyclo::zeta_pow(3)
    }

    /// `sqrt(2)^k` for any integer `k`.
    pub fn sqrt2_pow(k: i64) -> Self {
        let two = BigInt::from(2);
        let half = k.div_euclid(2);
        let mut base = if half >= 0 {
            Cyclo::from_rational(BigRational::from_integer(num_traits::pow(two, half as usize)))
        } else {
            Cyclo::from_rational(BigRational::new(
                BigInt::one(),
                num_traits::pow(two, (-half) as usize),
            ))
        };
        if k.rem_euclid(2) == 1 {
            base = &base * &Cyclo::sqrt2();
        }
        base
    }

    /// `(-1)^k`.
    pub fn sign(k: u64) -> Self {
        if k.is_multiple_of(2) {
            Cyclo::one()
        } else {
            Cyclo::from_int(-1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Q::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Q::is_zero)
    }

    /// Rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.c[1..]
            .iter()
            .all(Q::is_zero)
            .then(|| self.c[0].to_big())
    }

    /// Applies the Galois automorphism `z -> z^k` (k odd).
    fn galois(&self, k: usize) -> Self {
        debug_assert!(k % 2 == 1);
        let mut out = Cyclo::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let e = (j * k) % 8;
            if e < 4 {
                out.c[e] = out.c[e].add(cj);
            } else {
                out.c[e - 4] = out.c[e - 4].sub(cj);
            }
        }
        out
    }

    /// Complex conjugation, `z -> z^{-1} = -z^3`.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c[1..].iter().all(Q::is_zero) {
            let mut out = Cyclo::zero();
            out.c[0] = self.c[0].recip();
            return Ok(out);
        }
        // x * s3(x) s5(x) s7(x) is the field norm, a rational number.
        let rest = &(&self.galois(3) * &self.galois(5)) * &self.galois(7);
        let norm = (self * &rest).c[0].clone();
        Ok(rest.scale_q(&norm.recip()))
    }

    pub fn checked_div(&self, rhs: &Cyclo) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    fn scale_q(&self, r: &Q) -> Self {
        Cyclo {
            c: [self.c[0].mul(r), self.c[1].mul(r), self.c[2].mul(r), self.c[3].mul(r)],
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        self.scale_q(&Q::from_big(r.clone()))
    }

    /// Multiplies by a small integer.
    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_q(&Q::int(n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    pub fn is_real(&self) -> bool {
        self.c[2].is_zero() && self.c[3].add(&self.c[1]).is_zero()
    }

    /// True iff the element is real and strictly positive.
    ///
    /// A real element is `a + b sqrt2`; its sign is decided exactly by
    /// comparing `a^2` against `2 b^2` when the two terms disagree in sign.
    pub fn is_real_positive(&self) -> bool {
        self.is_real() && sign_of_a_plus_b_sqrt2(&self.c[0], &self.c[1]) > 0
    }

    /// The positive real square root, when it exists in the field.
    pub fn sqrt_positive_real(&self) -> Option<Cyclo> {
        if !self.is_real_positive() {
            return None;
        }
        let (a, b) = (self.c[0].to_big(), self.c[1].to_big());
        let two = BigRational::from_integer(2.into());
        // (c + d sqrt2)^2 = c^2 + 2 d^2 + 2cd sqrt2
        let mut candidates = Vec::new();
        if b.is_zero() {
            if let Some(c) = rational_sqrt(&a) {
                candidates.push((c, BigRational::zero()));
            }
            if let Some(d) = rational_sqrt(&(&a / &two)) {
                candidates.push((BigRational::zero(), d));
            }
        } else {
            // c^2 solves t^2 - a t + b^2/2 = 0
            let root = rational_sqrt(&(&a * &a - &two * &b * &b))?;
            for t in [(&a + &root) / &two, (&a - &root) / &two] {
                if let Some(c) = rational_sqrt(&t) {
                    if !c.is_zero() {
                        let d = &b / (&two * &c);
                        candidates.push((c, d));
                    }
                }
            }
        }
        candidates
            .into_iter()
            .map(|(c, d)| &Cyclo::from_rational(c) + &Cyclo::sqrt2().scale(&d))
            .find(|x| x.is_real_positive() && &(x * x) == self)
    }

    /// Short rendering that omits zero terms, e.g. `1/2 - z^3`.
    pub fn compact(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = if neg { c.neg() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push_str(if k == 1 { "z" } else if k == 2 { "z^2" } else { "z^3" });
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Floating-point image under z -> (1+i)/sqrt(2).
    pub fn to_complex(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [c0, c1, c2, c3] = [0, 1, 2, 3].map(|k| self.c[k].to_f64());
        (c0 + h * (c1 - c3), c2 + h * (c1 + c3))
    }

    /// Decimal rendering `re+imi` with ten fractional digits.
    pub fn to_decimal(&self) -> String {
        let (re, im) = self.to_complex();
        let re = if re.abs() < 5e-11 { 0.0 } else { re };
        let im = if im.abs() < 5e-11 { 0.0 } else { im };
        if im < 0.0 {
            format!("{re:.10}-{:.10}i", -im)
        } else {
            format!("{re:.10}+{im:.10}i")
        }
    }

    /// Writes the element as `r * z^k` with `r` positive real, when possible.
    pub fn polar(&self) -> Option<(Cyclo, u8)> {
        if self.is_zero() {
            return None;
        }
        (0..8u8).find_map(|k| {
            let r = self * &Cyclo::zeta_pow(-(k as i64));
            r.is_real_positive().then_some((r, k))
        })
    }

    /// Human-readable polar form, e.g. `e^{i*pi/4}`, `-sqrt2*i` or `2 * e^{i*3pi/4}`.
    pub fn polar_label(&self) -> String {
        let Some((r, k)) = self.polar() else {
            return if self.is_zero() { "0".into() } else { self.to_string() };
        };
        let modulus = render_real(&r);
        if k % 2 == 1 {
            let phase = if k == 1 { "e^{i*pi/4}".to_string() } else { format!("e^{{i*{k}pi/4}}") };
            return if r.is_one() { phase } else { format!("{modulus} * {phase}") };
        }
        let sign = if k >= 4 { "-" } else { "" };
        match (k % 4, r.is_one()) {
            (0, _) => format!("{sign}{modulus}"),
            (_, true) => format!("{sign}i"),
            (_, false) => format!("{sign}{modulus}*i"),
        }
    }
}

fn render_real(r: &Cyclo) -> String {
    let (a, b) = (&r.c[0], &r.c[1]);
    let root = if b.is_one() { "sqrt2".to_string() } else { format!("{b}*sqrt2") };
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.to_string(),
        (true, false) => root,
        (false, false) => format!("({a} + {root})"),
    }
}

fn sign_of_a_plus_b_sqrt2(a: &Q, b: &Q) -> i32 {
    let sa = a.signum();
    let sb = b.signum();
    if sa == 0 {
        return sb;
    }
    if sb == 0 || sa == sb {
        return sa;
    }
    let a2 = a.mul(a);
    let b2 = b.mul(b).mul(&Q::int(2));
    match a2.cmp_value(&b2) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

impl fmt::Display for Cyclo {
    /// Canonical rendering `c0 + c1*z + c2*z^2 + c3*z^3`; parsed back exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*z + {}*z^2 + {}*z^3",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

// ---------------------------------------------------------------------------
// Arithmetic

fn mul_coeffs(a: &[Q; 4], b: &[Q; 4]) -> [Q; 4] {
    let mut out: [Q; 4] = Default::default();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let p = ai.mul(bj);
            let k = i + j;
            if k < 4 {
                out[k] = out[k].add(&p);
            } else {
                out[k - 4] = out[k - 4].sub(&p);
            }
        }
    }
    out
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &'a Cyclo) -> Cyclo {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &'a Cyclo) -> Cyclo {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &'a Cyclo) -> Cyclo {
        Cyclo {
            c: mul_coeffs(&self.c, &rhs.c),
        }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            c: [self.c[0].neg(), self.c[1].neg(), self.c[2].neg(), self.c[3].neg()],
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &'a Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !b.is_zero() {
                *a = a.add(b);
            }
        }
    }
}

impl AddAssign<Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: Cyclo) {
        *self += &rhs;
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !b.is_zero() {
                *a = a.sub(b);
            }
        }
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, rhs: &Cyclo) {
        self.c = mul_coeffs(&self.c, &rhs.c);
    }
}

impl Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Cyclo> for Cyclo {
    fn sum<I: Iterator<Item = &'a Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Cyclo {
    fn product<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::one(), |acc, x| &acc * &x)
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

// ---------------------------------------------------------------------------
// Parsing
//
// Accepts the canonical rendering as well as free-form sums such as
// `1/2 - z^3`, `sqrt2`, `2*i` or `(1+i)*sqrt2/2`.

impl FromStr for Cyclo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = LitParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct LitParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl LitParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Cyclo> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyclo> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let start = self.pos;
                let d = self.factor()?;
                acc = acc.checked_div(&d).map_err(|_| Error::parse(1, start + 1, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Cyclo> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Cyclo::from_rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                let base = match word {
                    "z" => Cyclo::zeta(),
                    "i" => Cyclo::i(),
                    "sqrt2" => Cyclo::sqrt2(),
                    _ => {
                        return Err(Error::parse(1, start + 1, format!("unknown symbol '{word}'")))
                    }
                };
                if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    let e = self.integer()?;
                    let e = e
                        .to_i64()
                        .ok_or_else(|| self.error("exponent out of range"))?;
                    let e = if neg { -e } else { e };
                    base.powi(e).map_err(|_| self.error("zero to a negative power"))
                } else {
                    Ok(base)
                }
            }
            _ => Err(self.error("expected a number, 'z', 'i' or 'sqrt2'")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
        text.parse::<BigInt>().map_err(|_| self.error("bad integer"))
    }
}
