//! Circle state spaces and the projections onto them.

use std::collections::BTreeMap;

use crate::axioms::gram_matrix;
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};
use crate::ribbon::LinearBlock;
use crate::superalgebra::{AlgebraElement, HalfTwistAlgebra};
use crate::tensor::{contract, Tensor};

use super::Sector;

/// Solutions `a` of `m(b, a) = m(lam(b', a))` for all `b`, where `b' = b`
/// in the NS sector and `b' = phi(b)` in the R sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub sector: Sector,
    /// Even vectors first, then odd ones.
    pub basis: Vec<AlgebraElement>,
    pub parities: Vec<u8>,
}

impl StateSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|&&p| p == 0).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    /// `(even | odd)`.
    pub fn superdim(&self) -> (usize, usize) {
        (self.even_dim(), self.odd_dim())
    }
}

/// `K[b, a, c]`: coefficient of `e_c` in `m(b, a) - m(lam(b', a))`.
fn defining_tensor(a: &HalfTwistAlgebra, sector: Sector) -> Result<Tensor> {
    let m = a.product();
    let twisted = match sector {
        Sector::NS => contract("baef,efc->bac", &[a.lam(), m])?,
        Sector::R => contract("bx,xaef,efc->bac", &[&a.full_twist(), a.lam(), m])?,
    };
    Ok(m.sub(&twisted))
}

pub fn state_space(a: &HalfTwistAlgebra, sector: Sector) -> Result<StateSpace> {
    let k = defining_tensor(a, sector)?;
    let mut basis = Vec::new();
    let mut parities = Vec::new();
    for parity in [0u8, 1] {
        let cols: Vec<usize> = (0..a.dim()).filter(|&i| a.parity()[i] == parity).collect();
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        let mut rows: BTreeMap<(u32, u32), SparseRow> = BTreeMap::new();
        for (idx, v) in k.iter() {
            if let Some(&j) = pos.get(&(idx[1] as usize)) {
                rows.entry((idx[0], idx[2])).or_default().insert(j, v.clone());
            }
        }
        for v in linalg::nullspace(rows.into_values(), cols.len()) {
            let mut coeffs = vec![Cyclo::zero(); a.dim()];
            for (j, x) in v.into_iter().enumerate() {
                coeffs[cols[j]] = x;
            }
            basis.push(AlgebraElement::new(coeffs));
            parities.push(parity);
        }
    }
    Ok(StateSpace { sector, basis, parities })
}

/// Why an orthogonal projection is unavailable, or `None` if it is.
pub fn projector_obstruction(a: &HalfTwistAlgebra) -> Option<String> {
    if !a.alpha().is_real_positive() {
        return Some(format!("alpha = {} is not a positive real", a.alpha().compact()));
    }
    let Ok(h) = gram_matrix(a) else {
        return Some("algebra has no star structure".into());
    };
    linalg::check_positive_definite(&h, a.dim())
        .err()
        .map(|e| format!("inner product is not positive definite ({e:?})"))
}

/// The projection onto the sector's state space that is orthogonal for
/// `<x, y> = eta(*x, y)`.
pub fn projector(a: &HalfTwistAlgebra, sector: Sector) -> Result<LinearBlock> {
    if let Some(why) = projector_obstruction(a) {
        return Err(Error::NotUnitary(why));
    }
    let h = gram_matrix(a)?;
    let space = state_space(a, sector)?;
    let d = a.dim();
    let r = space.dim();
    // columns of v are the basis vectors
    let mut v = Tensor::zeros(2, d);
    for (i, b) in space.basis.iter().enumerate() {
        for (x, c) in b.coeffs().iter().enumerate() {
            v.set(&[x, i], c.clone());
        }
    }
    let v_bar = v.map(Cyclo::conj);
    let g = contract("ai,ab,bj->ij", &[&v_bar, &h, &v])?;
    let g_inv = linalg::inverse(&g, r)?;
    // p[a][b]: a-th coordinate of P(e_b)
    let p = contract("ai,ij,cj,cb->ab", &[&v, &g_inv, &v_bar, &h])?;
    LinearBlock::from_matrix(&p.permute(&[1, 0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{build_clifford_complex, build_clifford_real, build_matrix};

    fn rank(vs: &[AlgebraElement]) -> usize {
        let mut e = linalg::Echelon::new();
        for v in vs {
            e.insert(v.coeffs().iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
        e.rank()
    }

    fn same_span(x: &[AlgebraElement], y: &[AlgebraElement]) -> bool {
        let both: Vec<AlgebraElement> = x.iter().chain(y).cloned().collect();
        rank(x) == rank(y) && rank(&both) == rank(x)
    }

    #[test]
    fn cl10_sectors() {
        let a = build_clifford_real(1, 0, &Cyclo::one()).unwrap();
        let ns = state_space(&a, Sector::NS).unwrap();
        assert_eq!(ns.superdim(), (1, 0));
        assert!(same_span(&ns.basis, &[a.unit()]));
        let r = state_space(&a, Sector::R).unwrap();
        assert_eq!(r.superdim(), (0, 1));
        let gamma = a.basis(a.label_index("G1").unwrap());
        assert!(same_span(&r.basis, &[gamma]));
    }

    #[test]
    fn clc1_sectors() {
        let a = build_clifford_complex(1, &Cyclo::one()).unwrap();
        assert_eq!(state_space(&a, Sector::NS).unwrap().superdim(), (2, 0));
        assert_eq!(state_space(&a, Sector::R).unwrap().superdim(), (0, 2));
    }

    #[test]
    fn cl10_projectors() {
        let a = build_clifford_real(1, 0, &Cyclo::one()).unwrap();
        let unit_ix = (0..2).find(|&i| !a.unit().coeffs()[i].is_zero()).unwrap();
        let other = 1 - unit_ix;
        let p = projector(&a, Sector::NS).unwrap().to_matrix().unwrap();
        let mut expect = Tensor::zeros(2, 2);
        expect.set(&[unit_ix, unit_ix], Cyclo::one());
        assert_eq!(p, expect);
        let n = projector(&a, Sector::R).unwrap().to_matrix().unwrap();
        let mut expect = Tensor::zeros(2, 2);
        expect.set(&[other, other], Cyclo::one());
        assert_eq!(n, expect);
    }

    #[test]
    fn projectors_are_idempotent_and_fix_the_space() {
        for a in [
            build_matrix(1, 1, &Cyclo::one()).unwrap(),
            build_clifford_real(2, 1, &Cyclo::sqrt2()).unwrap(),
            build_clifford_complex(2, &Cyclo::one()).unwrap(),
        ] {
            for s in Sector::BOTH {
                let p = projector(&a, s).unwrap();
                assert_eq!(p.then(&p).unwrap(), p);
                let pm = p.to_matrix().unwrap();
                let space = state_space(&a, s).unwrap();
                for v in &space.basis {
                    assert_eq!(&a.apply(&pm, v), v);
                }
                let image: Vec<AlgebraElement> = (0..a.dim()).map(|i| a.apply(&pm, &a.basis(i))).collect();
                assert!(same_span(&image, &space.basis));
            }
        }
    }

    #[test]
    fn matrix_ns_is_scalars() {
        let a = build_matrix(1, 1, &Cyclo::one()).unwrap();
        let ns = state_space(&a, Sector::NS).unwrap();
        assert_eq!(ns.dim(), 1);
        assert!(same_span(&ns.basis, &[a.unit()]));
        let p = projector(&a, Sector::NS).unwrap().to_matrix().unwrap();
        let image: Vec<AlgebraElement> = (0..a.dim()).map(|i| a.apply(&p, &a.basis(i))).collect();
        assert_eq!(rank(&image), 1);
    }

    #[test]
    fn projector_needs_positive_alpha() {
        let a = build_clifford_real(1, 0, &Cyclo::from_int(-1)).unwrap();
        assert!(matches!(projector(&a, Sector::NS), Err(Error::NotUnitary(_))));
    }
}
