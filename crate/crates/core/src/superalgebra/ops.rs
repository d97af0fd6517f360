//! Direct sums and supertensor products of half twist algebras.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::tensor::Tensor;

use super::{supervector_crossing, Family, HalfTwistAlgebra};

fn shift(t: &Tensor, offset: usize) -> impl Iterator<Item = (Vec<usize>, Cyclo)> + '_ {
    t.iter().map(move |(k, v)| {
        (
            k.iter().map(|&i| i as usize + offset).collect::<Vec<_>>(),
            v.clone(),
        )
    })
}

fn block_sum(x: &Tensor, y: &Tensor, dx: usize, d: usize) -> Tensor {
    let mut out = Tensor::zeros(x.rank(), d);
    for (k, v) in shift(x, 0).chain(shift(y, dx)) {
        out.set(&k, v);
    }
    out
}

/// Block-diagonal sum; both summands must share alpha and R.
pub fn direct_sum(a: &HalfTwistAlgebra, b: &HalfTwistAlgebra) -> Result<HalfTwistAlgebra> {
    if a.dim() == 0 || b.dim() == 0 {
        return Err(Error::InvalidArgument(
            "direct sum with a 0-dimensional algebra".into(),
        ));
    }
    if a.alpha() != b.alpha() {
        return Err(Error::Mismatch(format!(
            "alpha differs between summands: {} vs {}",
            a.alpha().compact(),
            b.alpha().compact()
        )));
    }
    if a.r() != b.r() {
        return Err(Error::Mismatch(format!(
            "R differs between summands: {} vs {}",
            a.r().compact(),
            b.r().compact()
        )));
    }
    let (da, d) = (a.dim(), a.dim() + b.dim());
    let mut parity = a.parity().to_vec();
    parity.extend_from_slice(b.parity());
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("0:{l}"))
        .chain(b.labels().iter().map(|l| format!("1:{l}")))
        .collect();

    // Crossings between the blocks are the plain super swap.
    let mut lam = supervector_crossing(&parity);
    for x in 0..d {
        for y in 0..d {
            if (x < da) == (y < da) {
                lam.set(&[x, y, y, x], Cyclo::zero());
            }
        }
    }
    for (k, v) in shift(a.lam(), 0).chain(shift(b.lam(), da)) {
        lam.set(&k, v);
    }

    let star = match (a.star(), b.star()) {
        (Some(x), Some(y)) => Some(block_sum(x, y, da, d)),
        _ => None,
    };
    Ok(HalfTwistAlgebra::assemble(
        labels,
        parity,
        block_sum(a.c(), b.c(), da, d),
        block_sum(a.b(), b.b(), da, d),
        block_sum(a.b_inv(), b.b_inv(), da, d),
        lam,
        block_sum(a.tau(), b.tau(), da, d),
        a.r().clone(),
        a.alpha().clone(),
        star,
        Family::DirectSum(Box::new(a.family().clone()), Box::new(b.family().clone())),
    ))
}

/// Graded tensor product; basis `e_a (x) f_b` has flat index `a * dim_B + b`.
///
/// The product carries the Koszul sign `(-1)^{|b||a'|}`, the form is
/// `(eta_A (x) eta_B)(1 (x) lambda (x) 1)`, and the half twist is the plain
/// tensor product of the factors' twists.
pub fn supertensor(a: &HalfTwistAlgebra, b: &HalfTwistAlgebra) -> Result<HalfTwistAlgebra> {
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let ix = |x: usize, y: usize| x * db + y;
    let (pa, pb) = (a.parity(), b.parity());
    let parity: Vec<u8> = (0..d).map(|k| pa[k / db] ^ pb[k % db]).collect();
    let labels = (0..d)
        .map(|k| format!("{}.{}", a.labels()[k / db], b.labels()[k % db]))
        .collect();
    let sgn = |e: u8| if e & 1 == 1 { -Cyclo::one() } else { Cyclo::one() };

    let pair2 = |ta: &Tensor, tb: &Tensor, koszul: bool| -> Tensor {
        let mut out = Tensor::zeros(2, d);
        for (ka, va) in ta.iter() {
            for (kb, vb) in tb.iter() {
                let (a1, a2) = (ka[0] as usize, ka[1] as usize);
                let (b1, b2) = (kb[0] as usize, kb[1] as usize);
                let mut v = va * vb;
                if koszul {
                    v = &v * &sgn(pb[b1] & pa[a2]);
                }
                out.set(&[ix(a1, b1), ix(a2, b2)], v);
            }
        }
        out
    };

    let mut c = Tensor::zeros(3, d);
    for (ka, va) in a.c().iter() {
        for (kb, vb) in b.c().iter() {
            let (a1, a2, a3) = (ka[0] as usize, ka[1] as usize, ka[2] as usize);
            let (b1, b2, b3) = (kb[0] as usize, kb[1] as usize, kb[2] as usize);
            let e = (pb[b1] & pa[a2]) ^ ((pb[b1] ^ pb[b2]) & pa[a3]);
            c.set(&[ix(a1, b1), ix(a2, b2), ix(a3, b3)], &(va * vb) * &sgn(e));
        }
    }

    let star = match (a.star(), b.star()) {
        (Some(sa), Some(sb)) => {
            let mut out = Tensor::zeros(2, d);
            for (ka, va) in sa.iter() {
                for (kb, vb) in sb.iter() {
                    let (a1, a2) = (ka[0] as usize, ka[1] as usize);
                    let (b1, b2) = (kb[0] as usize, kb[1] as usize);
                    let v = &(va * vb) * &sgn(pa[a1] & pb[b1]);
                    out.set(&[ix(a1, b1), ix(a2, b2)], v);
                }
            }
            Some(out)
        }
        _ => None,
    };

    let lam = supervector_crossing(&parity);
    Ok(HalfTwistAlgebra::assemble(
        labels,
        parity,
        c,
        pair2(a.b(), b.b(), true),
        pair2(a.b_inv(), b.b_inv(), true),
        lam,
        pair2(a.tau(), b.tau(), false),
        a.r() * b.r(),
        a.alpha() * b.alpha(),
        star,
        Family::Supertensor(Box::new(a.family().clone()), Box::new(b.family().clone())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{build_clifford_real, build_matrix};

    fn cl(p: usize, q: usize) -> HalfTwistAlgebra {
        build_clifford_real(p, q, &Cyclo::one()).unwrap()
    }

    #[test]
    fn koszul_signs() {
        let t = supertensor(&cl(1, 0), &cl(1, 0)).unwrap();
        // index a*2+b: 1.1, 1.G1, G1.1, G1.G1
        let g_1 = t.basis(2);
        let one_g = t.basis(1);
        assert_eq!(t.mul(&g_1, &one_g), t.basis(3));
        assert_eq!(t.mul(&one_g, &g_1), t.basis(3).scale(&-Cyclo::one()));
    }

    #[test]
    fn twist_matches_cl20() {
        let t = supertensor(&cl(1, 0), &cl(1, 0)).unwrap();
        let c = cl(2, 0);
        assert_eq!(t.tau().get(&[3, 3]), -Cyclo::one());
        assert_eq!(c.tau().get(&[3, 3]), -Cyclo::one());
        // Gamma1 -> G1.1, Gamma2 -> 1.G1 identifies the bases in order
        for i in 0..4 {
            assert_eq!(t.tau().get(&[i, i]), c.tau().get(&[i, i]));
        }
        assert_eq!(t.r(), c.r());
    }

    #[test]
    fn associativity_under_flattening() {
        let (x, y, z) = (cl(1, 0), cl(0, 1), build_matrix(1, 1, &Cyclo::one()).unwrap());
        let l = supertensor(&supertensor(&x, &y).unwrap(), &z).unwrap();
        let r = supertensor(&x, &supertensor(&y, &z).unwrap()).unwrap();
        assert_eq!(l.c(), r.c());
        assert_eq!(l.b(), r.b());
        assert_eq!(l.b_inv(), r.b_inv());
        assert_eq!(l.tau(), r.tau());
        assert_eq!(l.lam(), r.lam());
        assert_eq!(l.star(), r.star());
        assert_eq!(l.r(), r.r());
    }

    #[test]
    fn direct_sum_blocks() {
        let s = direct_sum(&cl(1, 0), &cl(1, 0)).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.labels(), ["0:1", "0:G1", "1:1", "1:G1"]);
        assert_eq!(s.b().get(&[2, 2]), Cyclo::sqrt2());
        assert_eq!(s.b().get(&[0, 2]), Cyclo::zero());
        assert_eq!(s.lam().get(&[1, 3, 3, 1]), -Cyclo::one());
    }

    #[test]
    fn direct_sum_mismatches() {
        let a = cl(1, 0);
        let two = build_clifford_real(1, 0, &Cyclo::from_int(2)).unwrap();
        assert!(matches!(direct_sum(&a, &two), Err(Error::Mismatch(m)) if m.contains("alpha")));
        let m = build_matrix(2, 0, &Cyclo::one()).unwrap();
        assert!(matches!(direct_sum(&a, &m), Err(Error::Mismatch(m)) if m.contains("R")));
    }
}
