//! Real and complex Clifford superalgebras.
//!
//! Basis monomials `G1^N1 ... Gn^Nn` (times `I^M` in the complex case) are
//! ordered lexicographically in the exponent string, unit first, with `M`
//! the least significant bit.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::tensor::Tensor;

use super::{require_real_alpha, supervector_crossing, Family, HalfTwistAlgebra};

pub const MAX_CLIFFORD_REAL: usize = 8;
pub const MAX_CLIFFORD_COMPLEX: usize = 7;

/// A monomial: generator bits (bit `n-j` holds `N_j`) and the `I` exponent.
#[derive(Clone, Copy)]
struct Mono {
    gens: u32,
    imag: u32,
}

/// `Gamma_S Gamma_T = sign * Gamma_{S xor T}` with every generator squaring to 1.
fn gamma_sign(s: u32, t: u32) -> u32 {
    // Generator j sits at bit n-j, so a larger index means a lower bit.
    // Count pairs (x in S, y in T) with x after y, i.e. x at a lower bit.
    let mut swaps = 0;
    let mut s = s;
    while s != 0 {
        let low = s & s.wrapping_neg();
        swaps += (t & !(low | (low - 1))).count_ones();
        s &= s - 1;
    }
    swaps & 1
}

fn mono_mul(x: Mono, y: Mono) -> (u32, Mono) {
    let mut sign = gamma_sign(x.gens, y.gens);
    sign ^= x.imag & y.imag;
    (
        sign,
        Mono {
            gens: x.gens ^ y.gens,
            imag: x.imag ^ y.imag,
        },
    )
}

fn gens_label(gens: u32, n: usize) -> String {
    (1..=n)
        .filter(|j| gens >> (n - j) & 1 == 1)
        .map(|j| format!("G{j}"))
        .collect()
}

fn build(p: usize, q: usize, complex: bool, alpha: &Cyclo) -> Result<HalfTwistAlgebra> {
    require_real_alpha(alpha)?;
    let n = p + q;
    let monos: Vec<Mono> = (0..1u32 << n)
        .flat_map(|g| {
            let ms: &[u32] = if complex { &[0, 1] } else { &[0] };
            ms.iter().map(move |&m| Mono { gens: g, imag: m })
        })
        .collect();
    let d = monos.len();
    let index = |m: Mono| -> usize {
        if complex {
            (m.gens as usize) << 1 | m.imag as usize
        } else {
            m.gens as usize
        }
    };
    let labels: Vec<String> = monos
        .iter()
        .map(|m| {
            let mut l = gens_label(m.gens, n);
            if m.imag == 1 {
                l.push('I');
            }
            if l.is_empty() {
                l.push('1');
            }
            l
        })
        .collect();
    let parity: Vec<u8> = monos.iter().map(|m| (m.gens.count_ones() & 1) as u8).collect();

    // eps(1) = alpha 2^{n/2} (real) or alpha 2^{(n+2)/2} (complex).
    let eps1 = alpha * &Cyclo::sqrt2_pow(if complex { n as i64 + 2 } else { n as i64 });
    let neg_eps1 = -&eps1;
    let eps_of = |sign: u32, m: Mono| -> Option<&Cyclo> {
        (m.gens == 0 && m.imag == 0).then_some(if sign == 1 { &neg_eps1 } else { &eps1 })
    };

    let mut b = Tensor::zeros(2, d);
    let mut b_inv = Tensor::zeros(2, d);
    let mut c = Tensor::zeros(3, d);
    let eps_inv = eps1.inv()?;
    for (ia, &x) in monos.iter().enumerate() {
        for (ib, &y) in monos.iter().enumerate() {
            let (s1, xy) = mono_mul(x, y);
            if let Some(v) = eps_of(s1, xy) {
                b.set(&[ia, ib], v.clone());
                // B is diagonal-like with entries +-eps1; its inverse has the
                // same sign pattern scaled by 1/eps1^2.
                let vi = if s1 == 1 { -&eps_inv } else { eps_inv.clone() };
                b_inv.set(&[ib, ia], vi);
            }
            // The third factor must be the inverse monomial of xy.
            let z = xy;
            let (s2, xyz) = mono_mul(xy, z);
            if let Some(v) = eps_of(s1 ^ s2, xyz) {
                c.set(&[ia, ib, index(z)], v.clone());
            }
        }
    }

    let mut tau = Tensor::zeros(2, d);
    let mut star = Tensor::zeros(2, d);
    let q_mask: u32 = if q == 0 { 0 } else { (1u32 << q) - 1 };
    for (i, m) in monos.iter().enumerate() {
        let k = m.gens.count_ones() as i64;
        // Generators with index > p occupy the low q bits.
        let kq = (m.gens & q_mask).count_ones() as u64;
        let t = if complex {
            &Cyclo::sign(m.imag as u64) * &Cyclo::i_pow(k)
        } else {
            &Cyclo::i_pow(k) * &Cyclo::sign(kq)
        };
        tau.set(&[i, i], t);
        let reversal = (k * (k - 1) / 2) as u64;
        star.set(&[i, i], Cyclo::sign(reversal + m.imag as u64));
    }

    let r = alpha * &Cyclo::sqrt2_pow(-(n as i64));
    let family = if complex {
        Family::CliffordComplex { n }
    } else {
        Family::CliffordReal { p, q }
    };
    let lam = supervector_crossing(&parity);
    Ok(HalfTwistAlgebra::assemble(
        labels,
        parity,
        c,
        b,
        b_inv,
        lam,
        tau,
        r,
        alpha.clone(),
        Some(star),
        family,
    ))
}

/// `cl(p,q)`: `p + q` odd anticommuting generators; the last `q` get an
/// extra sign in the half twist.
pub fn build_clifford_real(p: usize, q: usize, alpha: &Cyclo) -> Result<HalfTwistAlgebra> {
    if p + q > MAX_CLIFFORD_REAL {
        return Err(Error::InvalidArgument(format!(
            "cl({p},{q}) exceeds the generator cap p+q <= {MAX_CLIFFORD_REAL}"
        )));
    }
    build(p, q, false, alpha)
}

/// `clc(n)`: `n` odd generators plus an even central `I` with `I^2 = -1`.
pub fn build_clifford_complex(n: usize, alpha: &Cyclo) -> Result<HalfTwistAlgebra> {
    if n > MAX_CLIFFORD_COMPLEX {
        return Err(Error::InvalidArgument(format!(
            "clc({n}) exceeds the generator cap n <= {MAX_CLIFFORD_COMPLEX}"
        )));
    }
    build(n, 0, true, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Cyclo {
        Cyclo::one()
    }

    #[test]
    fn basis_order_and_labels() {
        let a = build_clifford_real(2, 0, &one()).unwrap();
        assert_eq!(a.labels(), ["1", "G2", "G1", "G1G2"]);
        assert_eq!(a.parity(), [0, 1, 1, 0]);
        let c = build_clifford_complex(1, &one()).unwrap();
        assert_eq!(c.labels(), ["1", "I", "G1", "G1I"]);
        assert_eq!(c.parity(), [0, 0, 1, 1]);
    }

    #[test]
    fn cl10_tensors() {
        let a = build_clifford_real(1, 0, &one()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.b().get(&[0, 0]), Cyclo::sqrt2());
        assert_eq!(a.b().get(&[1, 1]), Cyclo::sqrt2());
        assert_eq!(a.b().get(&[0, 1]), Cyclo::zero());
        assert_eq!(a.tau().get(&[1, 1]), Cyclo::i());
        assert_eq!(a.r(), &Cyclo::sqrt2().inv().unwrap());
    }

    #[test]
    fn ground_field() {
        let alpha = Cyclo::frac(3, 2);
        let a = build_clifford_real(0, 0, &alpha).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.b().get(&[0, 0]), alpha);
        assert_eq!(a.tau().get(&[0, 0]), one());
        assert_eq!(a.r(), &alpha);
    }

    #[test]
    fn negative_generator_twist() {
        let a = build_clifford_real(0, 1, &one()).unwrap();
        assert_eq!(a.tau().get(&[1, 1]), -Cyclo::i());
    }

    #[test]
    fn products_anticommute() {
        let a = build_clifford_real(2, 0, &one()).unwrap();
        let (g1, g2) = (a.basis(2), a.basis(1));
        assert_eq!(a.mul(&g1, &g2), a.basis(3));
        assert_eq!(a.mul(&g2, &g1), a.basis(3).scale(&Cyclo::from_int(-1)));
        assert_eq!(a.mul(&g1, &g1), a.basis(0));
    }

    #[test]
    fn complex_twist_and_unit() {
        let a = build_clifford_complex(1, &one()).unwrap();
        let t: Vec<Cyclo> = (0..4).map(|i| a.tau().get(&[i, i])).collect();
        assert_eq!(t, vec![one(), -one(), Cyclo::i(), -Cyclo::i()]);
        assert_eq!(a.unit(), a.basis(0));
        assert_eq!(a.counit(&a.basis(1)), Cyclo::zero());
        let i = a.basis(1);
        assert_eq!(a.mul(&i, &i), a.basis(0).scale(&-one()));

        let b = build_clifford_complex(0, &one()).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.tau().get(&[1, 1]), -one());
    }

    #[test]
    fn argument_errors() {
        assert!(build_clifford_real(5, 4, &one()).is_err());
        assert!(build_clifford_complex(8, &one()).is_err());
        assert!(build_clifford_real(1, 0, &Cyclo::zero()).is_err());
        assert!(build_clifford_real(1, 0, &Cyclo::zeta()).is_err());
    }

    #[test]
    fn sign_rule_matches_brute_force() {
        for n in 0..5usize {
            for s in 0..1u32 << n {
                for t in 0..1u32 << n {
                    let mut swaps = 0;
                    for x in 1..=n {
                        for y in 1..=n {
                            let xin = s >> (n - x) & 1 == 1;
                            let yin = t >> (n - y) & 1 == 1;
                            if xin && yin && x > y {
                                swaps += 1;
                            }
                        }
                    }
                    assert_eq!(gamma_sign(s, t), swaps & 1, "n={n} s={s} t={t}");
                }
            }
        }
    }
}
