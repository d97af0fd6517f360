//! Half twist algebras: the tensor data `(C, B, B^-1, lambda, tau, R)` that
//! feeds the state sum, built from separable superalgebras.

mod clifford;
mod matrix;
mod ops;
mod serial;
mod spec;

use std::fmt;
use std::sync::OnceLock;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg;
use crate::tensor::{contract, Tensor};

pub use clifford::{build_clifford_complex, build_clifford_real, MAX_CLIFFORD_COMPLEX, MAX_CLIFFORD_REAL};
pub use matrix::build_matrix;
pub use ops::{direct_sum, supertensor};
pub use serial::{from_text, to_text};
pub use spec::parse_algebra_spec;

/// Where an algebra came from; constructor families are trusted by the
/// connect-sum machinery, custom tensors are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    CliffordReal { p: usize, q: usize },
    CliffordComplex { n: usize },
    Matrix { p: usize, q: usize },
    DirectSum(Box<Family>, Box<Family>),
    Supertensor(Box<Family>, Box<Family>),
    Custom,
}

impl Family {
    pub fn is_constructed(&self) -> bool {
        match self {
            Family::Custom => false,
            Family::DirectSum(a, b) | Family::Supertensor(a, b) => {
                a.is_constructed() && b.is_constructed()
            }
            _ => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::CliffordReal { p, q } => write!(f, "cl({p},{q})"),
            Family::CliffordComplex { n } => write!(f, "clc({n})"),
            Family::Matrix { p, q } => write!(f, "mat({p}|{q})"),
            Family::DirectSum(a, b) => write!(f, "[{a} (+) {b}]"),
            Family::Supertensor(a, b) => write!(f, "[{a} (x) {b}]"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// Raw tensor data for [`custom_from_tensors`].
#[derive(Clone, Debug)]
pub struct CustomData {
    pub parity: Vec<u8>,
    pub c: Tensor,
    pub b: Tensor,
    /// Computed from `b` when absent (left zero if `b` is singular).
    pub b_inv: Option<Tensor>,
    pub lam: Tensor,
    pub tau: Tensor,
    pub r: Cyclo,
    /// Defaults to 1.
    pub alpha: Option<Cyclo>,
    pub star: Option<Tensor>,
    /// Defaults to `e0, e1, ...`.
    pub labels: Option<Vec<String>>,
}

/// The state-sum input datum.
#[derive(Clone, Debug)]
pub struct HalfTwistAlgebra {
    dim: usize,
    labels: Vec<String>,
    parity: Vec<u8>,
    c: Tensor,
    b: Tensor,
    b_inv: Tensor,
    lam: Tensor,
    tau: Tensor,
    r: Cyclo,
    alpha: Cyclo,
    star: Option<Tensor>,
    family: Family,
    product: OnceLock<Tensor>,
    tau_inv: OnceLock<Option<Tensor>>,
}

/// An element of the algebra in the basis `e_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    coeffs: Vec<Cyclo>,
}

impl AlgebraElement {
    pub fn new(coeffs: Vec<Cyclo>) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coeffs: vec![Cyclo::zero(); dim],
        }
    }

    pub fn basis(dim: usize, a: usize) -> Self {
        let mut e = AlgebraElement::zero(dim);
        e.coeffs[a] = Cyclo::one();
        e
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Cyclo::is_zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, s: &Cyclo) -> AlgebraElement {
        AlgebraElement::new(self.coeffs.iter().map(|a| a * s).collect())
    }

    /// Renders as a sum over basis labels, e.g. `1 + (z^2)*G1`.
    pub fn render(&self, labels: &[String]) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if c.is_one() {
                    l.clone()
                } else {
                    format!("({})*{l}", c.compact())
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// The structures derived from the raw tensors.
#[derive(Clone, Debug)]
pub struct DerivedStructures {
    /// `m_{ab}^c = C_{abd} B^{dc}`.
    pub product: Tensor,
    pub unit: AlgebraElement,
    /// `counit[a] = eps(e_a)`.
    pub counit: Vec<Cyclo>,
    pub full_twist: Tensor,
    pub nakayama: Tensor,
}

fn check_rank(name: &str, t: &Tensor, rank: usize, dim: usize) -> Result<()> {
    if t.rank() != rank {
        return Err(Error::Shape(format!("{name} has rank {}, expected {rank}", t.rank())));
    }
    if t.dim() != dim && !(dim == 0 && t.nnz() == 0) {
        return Err(Error::Shape(format!(
            "{name} has leg dimension {}, expected {dim}",
            t.dim()
        )));
    }
    Ok(())
}

/// Wraps raw tensors without validating any axiom.
pub fn custom_from_tensors(data: CustomData) -> Result<HalfTwistAlgebra> {
    let dim = data.parity.len();
    check_rank("C", &data.c, 3, dim)?;
    check_rank("B", &data.b, 2, dim)?;
    check_rank("lam", &data.lam, 4, dim)?;
    check_rank("tau", &data.tau, 2, dim)?;
    if let Some(bi) = &data.b_inv {
        check_rank("Binv", bi, 2, dim)?;
    }
    if let Some(s) = &data.star {
        check_rank("star", s, 2, dim)?;
    }
    if data.parity.iter().any(|&p| p > 1) {
        return Err(Error::Shape("parity bits must be 0 or 1".into()));
    }
    let labels = match data.labels {
        Some(l) if l.len() == dim => l,
        Some(l) => {
            return Err(Error::Shape(format!("{} labels for dimension {dim}", l.len())));
        }
        None => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    let b_inv = match data.b_inv {
        Some(bi) => bi,
        None => linalg::inverse(&data.b, dim).unwrap_or_else(|_| Tensor::zeros(2, dim)),
    };
    let alpha = data.alpha.unwrap_or_else(Cyclo::one);
    Ok(HalfTwistAlgebra::assemble(
        labels,
        data.parity,
        data.c,
        data.b,
        b_inv,
        data.lam,
        data.tau,
        data.r,
        alpha,
        data.star,
        Family::Custom,
    ))
}

/// The symmetric crossing `lambda(e_a (x) e_b) = (-1)^{|a||b|} e_b (x) e_a`.
pub fn supervector_crossing(parity: &[u8]) -> Tensor {
    let d = parity.len();
    let mut lam = Tensor::zeros(4, d);
    for a in 0..d {
        for b in 0..d {
            lam.set(&[a, b, b, a], Cyclo::sign((parity[a] & parity[b]) as u64));
        }
    }
    lam
}

pub(crate) fn require_real_alpha(alpha: &Cyclo) -> Result<()> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    if !alpha.is_real() {
        return Err(Error::InvalidArgument(format!(
            "alpha must be real, got {}",
            alpha.compact()
        )));
    }
    Ok(())
}

impl HalfTwistAlgebra {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        labels: Vec<String>,
        parity: Vec<u8>,
        c: Tensor,
        b: Tensor,
        b_inv: Tensor,
        lam: Tensor,
        tau: Tensor,
        r: Cyclo,
        alpha: Cyclo,
        star: Option<Tensor>,
        family: Family,
    ) -> Self {
        HalfTwistAlgebra {
            dim: parity.len(),
            labels,
            parity,
            c,
            b,
            b_inv,
            lam,
            tau,
            r,
            alpha,
            star,
            family,
            product: OnceLock::new(),
            tau_inv: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn parity(&self) -> &[u8] {
        &self.parity
    }
    pub fn c(&self) -> &Tensor {
        &self.c
    }
    pub fn b(&self) -> &Tensor {
        &self.b
    }
    pub fn b_inv(&self) -> &Tensor {
        &self.b_inv
    }
    pub fn lam(&self) -> &Tensor {
        &self.lam
    }
    pub fn tau(&self) -> &Tensor {
        &self.tau
    }
    pub fn r(&self) -> &Cyclo {
        &self.r
    }
    pub fn alpha(&self) -> &Cyclo {
        &self.alpha
    }
    pub fn star(&self) -> Option<&Tensor> {
        self.star.as_ref()
    }
    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The raw data, e.g. to perturb and rebuild as a custom algebra.
    pub fn to_custom_data(&self) -> CustomData {
        CustomData {
            parity: self.parity.clone(),
            c: self.c.clone(),
            b: self.b.clone(),
            b_inv: Some(self.b_inv.clone()),
            lam: self.lam.clone(),
            tau: self.tau.clone(),
            r: self.r.clone(),
            alpha: Some(self.alpha.clone()),
            star: self.star.clone(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, a: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, a)
    }

    /// Structure constants `m_{ab}^c`.
    pub fn product(&self) -> &Tensor {
        self.product.get_or_init(|| {
            contract("abd,dc->abc", &[&self.c, &self.b_inv]).expect("well-formed tensors")
        })
    }

    /// `tau^{-1}`, or `None` when tau is singular.
    pub fn tau_inv(&self) -> Option<&Tensor> {
        self.tau_inv
            .get_or_init(|| linalg::inverse(&self.tau, self.dim).ok())
            .as_ref()
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim);
        for (k, v) in self.product().iter() {
            let (a, b, c) = (k[0] as usize, k[1] as usize, k[2] as usize);
            let (xa, yb) = (&x.coeffs[a], &y.coeffs[b]);
            if xa.is_zero() || yb.is_zero() {
                continue;
            }
            out.coeffs[c] += &(&(xa * yb) * v);
        }
        out
    }

    /// Applies a map given by a rank-2 tensor `T_a^b`: `e_a -> sum_b T_a^b e_b`.
    pub fn apply(&self, t: &Tensor, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim);
        for (k, v) in t.iter() {
            let (a, b) = (k[0] as usize, k[1] as usize);
            if !x.coeffs[a].is_zero() {
                out.coeffs[b] += &(&x.coeffs[a] * v);
            }
        }
        out
    }

    pub fn apply_tau(&self, x: &AlgebraElement, times: usize) -> AlgebraElement {
        (0..times).fold(x.clone(), |acc, _| self.apply(&self.tau, &acc))
    }

    /// The grading automorphism `e_a -> (-1)^{|a|} e_a`.
    pub fn grading(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(
            x.coeffs
                .iter()
                .zip(&self.parity)
                .map(|(c, &p)| if p == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// The antilinear star, when present.
    pub fn apply_star(&self, x: &AlgebraElement) -> Option<AlgebraElement> {
        let s = self.star.as_ref()?;
        let conj = AlgebraElement::new(x.coeffs.iter().map(Cyclo::conj).collect());
        Some(self.apply(s, &conj))
    }

    /// `eta(x, y) = x_a B_{ab} y_b`.
    pub fn eta(&self, x: &AlgebraElement, y: &AlgebraElement) -> Cyclo {
        let mut acc = Cyclo::zero();
        for (k, v) in self.b.iter() {
            let (a, b) = (k[0] as usize, k[1] as usize);
            if x.coeffs[a].is_zero() || y.coeffs[b].is_zero() {
                continue;
            }
            acc += &(&(&x.coeffs[a] * v) * &y.coeffs[b]);
        }
        acc
    }

    /// The unit `R B^{ab} C_{bcd} B^{cd} e_a`.
    pub fn unit(&self) -> AlgebraElement {
        let t = contract("ab,bcd,cd->a", &[&self.b_inv, &self.c, &self.b_inv])
            .expect("well-formed tensors");
        let mut u = AlgebraElement::zero(self.dim);
        for (k, v) in t.iter() {
            u.coeffs[k[0] as usize] = v * &self.r;
        }
        u
    }

    pub fn counit(&self, x: &AlgebraElement) -> Cyclo {
        self.eta(&self.unit(), x)
    }

    /// `phi_a^b = lambda_{ac}^{bd} B^{ce} B_{de}`.
    pub fn full_twist(&self) -> Tensor {
        contract("acbd,ce,de->ab", &[&self.lam, &self.b_inv, &self.b]).expect("well-formed")
    }

    /// `sigma_a^b = B_{ac} B^{bc}`.
    pub fn nakayama(&self) -> Tensor {
        contract("ac,bc->ab", &[&self.b, &self.b_inv]).expect("well-formed")
    }

    pub fn derived_structures(&self) -> Result<DerivedStructures> {
        linalg::inverse(&self.b, self.dim)
            .map_err(|_| Error::Singular("the cap weight B is not invertible".into()))?;
        let unit = self.unit();
        let counit = (0..self.dim).map(|a| self.eta(&unit, &self.basis(a))).collect();
        Ok(DerivedStructures {
            product: self.product().clone(),
            unit,
            counit,
            full_twist: self.full_twist(),
            nakayama: self.nakayama(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl10() -> HalfTwistAlgebra {
        build_clifford_real(1, 0, &Cyclo::one()).unwrap()
    }

    #[test]
    fn cl10_derived_structures() {
        let a = cl10();
        let d = a.derived_structures().unwrap();
        assert_eq!(d.unit, a.basis(0));
        assert_eq!(d.counit, vec![Cyclo::sqrt2(), Cyclo::zero()]);
        let mut phi = Tensor::zeros(2, 2);
        phi.set(&[0, 0], Cyclo::one());
        phi.set(&[1, 1], Cyclo::from_int(-1));
        assert_eq!(d.full_twist, phi);
        assert_eq!(d.nakayama, Tensor::identity(2));
    }

    #[test]
    fn unitality_for_constructors() {
        for a in [
            cl10(),
            build_clifford_real(1, 2, &Cyclo::sqrt2()).unwrap(),
            build_clifford_complex(1, &Cyclo::one()).unwrap(),
            build_matrix(2, 1, &Cyclo::from_int(3)).unwrap(),
        ] {
            let u = a.unit();
            for i in 0..a.dim() {
                let e = a.basis(i);
                assert_eq!(a.mul(&u, &e), e);
                assert_eq!(a.mul(&e, &u), e);
            }
        }
    }

    #[test]
    fn custom_round_trip_and_shapes() {
        let a = cl10();
        let b = custom_from_tensors(a.to_custom_data()).unwrap();
        assert_eq!(b.c(), a.c());
        assert_eq!(b.tau(), a.tau());
        assert_eq!(b.family(), &Family::Custom);

        let mut bad = a.to_custom_data();
        bad.parity.push(0);
        assert!(matches!(custom_from_tensors(bad), Err(Error::Shape(_))));
    }

    #[test]
    fn singular_cap_is_accepted_but_has_no_derived_structures() {
        let mut data = cl10().to_custom_data();
        data.b = Tensor::zeros(2, 2);
        data.b_inv = None;
        let a = custom_from_tensors(data).unwrap();
        assert!(matches!(a.derived_structures(), Err(Error::Singular(_))));
    }

    #[test]
    fn element_rendering() {
        let a = cl10();
        let x = a.basis(0).add(&a.basis(1).scale(&Cyclo::i()));
        assert_eq!(x.render(a.labels()), "1 + (z^2)*G1");
        assert_eq!(AlgebraElement::zero(2).render(a.labels()), "0");
    }
}
