//! Rational numbers with an allocation-free fast path.
//!
//! Values whose numerator and denominator fit in `i64` stay in the small
//! representation; anything larger spills to `BigRational`. The choice is
//! canonical (small whenever possible) so derived equality and hashing agree
//! with numeric equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Q {
    S(Ratio<i64>),
    B(BigRational),
}

impl Default for Q {
    fn default() -> Self {
        Q::S(Ratio::from_integer(0))
    }
}

impl Q {
    pub fn int(n: i64) -> Self {
        Q::small(Ratio::from_integer(n))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            // i64::MIN is kept big so that negation never overflows
            (Some(n), Some(d)) if n != i64::MIN => Q::S(Ratio::new_raw(n, d)),
            _ => Q::B(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::S(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Q::B(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Q::S(r) => r.numer() == &0,
            Q::B(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Q::S(r) => r.numer() == &1 && r.denom() == &1,
            Q::B(r) => r.is_one(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Q::S(r) => r.numer().signum() as i32,
            Q::B(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn add(&self, o: &Q) -> Q {
        if let (Q::S(a), Q::S(b)) = (self, o) {
            if let Some(c) = a.checked_add(b) {
                return Q::small(c);
            }
        }
        Q::from_big(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Q) -> Q {
        if let (Q::S(a), Q::S(b)) = (self, o) {
            if let Some(c) = a.checked_sub(b) {
                return Q::small(c);
            }
        }
        Q::from_big(self.to_big() - o.to_big())
    }

    pub fn mul(&self, o: &Q) -> Q {
        if let (Q::S(a), Q::S(b)) = (self, o) {
            if let Some(c) = a.checked_mul(b) {
                return Q::small(c);
            }
        }
        Q::from_big(self.to_big() * o.to_big())
    }

    pub fn neg(&self) -> Q {
        match self {
            Q::S(r) => Q::S(Ratio::new_raw(-r.numer(), *r.denom())),
            Q::B(r) => Q::from_big(-r),
        }
    }

    /// Reciprocal; the caller guarantees a nonzero value.
    pub fn recip(&self) -> Q {
        Q::from_big(self.to_big().recip())
    }

    fn small(r: Ratio<i64>) -> Q {
        if *r.numer() == i64::MIN {
            Q::B(BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
        } else {
            Q::S(r)
        }
    }

    pub fn cmp_value(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::S(a), Q::S(b)) => {
                // Compare a/b against c/d via 128-bit cross multiplication.
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Q::S(r) => *r.numer() as f64 / *r.denom() as f64,
            Q::B(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::S(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Q::S(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Q::B(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Q::B(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
