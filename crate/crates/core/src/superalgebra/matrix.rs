//! Matrix superalgebras `mat(p|q)` on `C^{p|q}`.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::tensor::Tensor;

use super::{require_real_alpha, supervector_crossing, Family, HalfTwistAlgebra};

/// Basis `e_ij` in row-major order, graded by `|i| xor |j|`, with the trace
/// form scaled by `alpha` and half twist `e_ij -> i^{|e_ij|} e_ji`.
pub fn build_matrix(p: usize, q: usize, alpha: &Cyclo) -> Result<HalfTwistAlgebra> {
    require_real_alpha(alpha)?;
    let n = p + q;
    if n == 0 {
        return Err(Error::InvalidArgument("mat(0|0) has no basis".into()));
    }
    let grade = |i: usize| u8::from(i >= p);
    let d = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let labels: Vec<String> = (0..d)
        .map(|k| {
            let (i, j) = (k / n + 1, k % n + 1);
            if n < 10 {
                format!("e{i}{j}")
            } else {
                format!("e{i},{j}")
            }
        })
        .collect();
    let parity: Vec<u8> = (0..d).map(|k| grade(k / n) ^ grade(k % n)).collect();

    let alpha_inv = alpha.inv()?;
    let mut c = Tensor::zeros(3, d);
    let mut b = Tensor::zeros(2, d);
    let mut b_inv = Tensor::zeros(2, d);
    let mut tau = Tensor::zeros(2, d);
    let mut star = Tensor::zeros(2, d);
    for i in 0..n {
        for j in 0..n {
            // alpha tr(e_ij e_ji) = alpha
            b.set(&[idx(i, j), idx(j, i)], alpha.clone());
            b_inv.set(&[idx(i, j), idx(j, i)], alpha_inv.clone());
            // alpha tr(e_ij e_jl e_li) = alpha
            for l in 0..n {
                c.set(&[idx(i, j), idx(j, l), idx(l, i)], alpha.clone());
            }
            tau.set(&[idx(i, j), idx(j, i)], Cyclo::i_pow(parity[idx(i, j)] as i64));
            star.set(&[idx(i, j), idx(j, i)], Cyclo::one());
        }
    }
    let r = alpha * &Cyclo::frac(1, n as i64);
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
        Family::Matrix { p, q },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mat11_twist() {
        let a = build_matrix(1, 1, &Cyclo::one()).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), ["e11", "e12", "e21", "e22"]);
        assert_eq!(a.parity(), [0, 1, 1, 0]);
        // tau(e12) = i e21, tau(e11) = e11
        assert_eq!(a.tau().get(&[1, 2]), Cyclo::i());
        assert_eq!(a.tau().get(&[0, 0]), Cyclo::one());
        assert_eq!(a.r(), &Cyclo::frac(1, 2));
    }

    #[test]
    fn even_matrix_algebra_is_transpose() {
        let a = build_matrix(2, 0, &Cyclo::one()).unwrap();
        assert!(a.parity().iter().all(|&p| p == 0));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a.tau().get(&[i * 2 + j, j * 2 + i]), Cyclo::one());
                for k in 0..2 {
                    for l in 0..2 {
                        let expect = u8::from(j == k && i == l);
                        assert_eq!(
                            a.b().get(&[i * 2 + j, k * 2 + l]),
                            Cyclo::from_int(expect as i64)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_units_multiply() {
        let a = build_matrix(2, 1, &Cyclo::sqrt2()).unwrap();
        let e = |i: usize, j: usize| a.basis(i * 3 + j);
        assert_eq!(a.mul(&e(0, 1), &e(1, 2)), e(0, 2));
        assert!(a.mul(&e(0, 1), &e(0, 2)).is_zero());
        let unit = e(0, 0).add(&e(1, 1)).add(&e(2, 2));
        assert_eq!(a.unit(), unit);
    }

    #[test]
    fn empty_matrix_algebra_is_rejected() {
        assert!(build_matrix(0, 0, &Cyclo::one()).is_err());
    }
}
