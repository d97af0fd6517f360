//! Closed-surface partition functions, circle state spaces, stacking and the
//! classification of invertible theories.

mod states;
mod surface;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::ribbon::{evaluate, parse};
use crate::superalgebra::{supertensor, AlgebraElement, HalfTwistAlgebra};
use crate::tensor::contract;

pub use states::{projector, projector_obstruction, state_space, StateSpace};
pub use surface::{Sector, SurfaceSpec};

/// DSL for the projective plane with `k` half twists.
pub fn rp2_diagram(k: u8) -> String {
    let mut s = String::from("R 1\ncup\n");
    for _ in 0..k {
        s.push_str("id t+\n");
    }
    s.push_str("cap\n");
    s
}

pub const SPHERE_DIAGRAM: &str = "R 2\ncup\ncap\n";

fn closed(a: &HalfTwistAlgebra, text: &str) -> Result<Cyclo> {
    let d = parse(text)?;
    Ok(evaluate(&d, a)?.scalar().expect("closed diagram"))
}

/// `sum_{ab} B^{ab} e_a tau^k(e_b)`: a Moebius band with its boundary circle
/// pushed into the algebra.
pub fn moebius_state(a: &HalfTwistAlgebra, k: u8) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.dim());
    for (idx, w) in a.b_inv().iter() {
        let left = a.basis(idx[0] as usize);
        let right = a.apply_tau(&a.basis(idx[1] as usize), k as usize);
        out = out.add(&a.mul(&left, &right).scale(w));
    }
    out
}

/// `R eps(x)`: closes a state with a disk.
pub fn cap_off(a: &HalfTwistAlgebra, x: &AlgebraElement) -> Cyclo {
    a.r() * &a.counit(x)
}

fn product_of(a: &HalfTwistAlgebra, xs: &[AlgebraElement]) -> AlgebraElement {
    xs.iter().fold(a.unit(), |acc, x| a.mul(&acc, x))
}

fn torus_value(a: &HalfTwistAlgebra, s1: Sector, s2: Sector) -> Result<Cyclo> {
    if projector_obstruction(a).is_some() {
        // Trace over the image only depends on the grading there.
        let space = state_space(a, s1)?;
        let (e, o) = space.superdim();
        return Ok(Cyclo::from_int(match s2 {
            Sector::NS => (e + o) as i64,
            Sector::R => e as i64 - o as i64,
        }));
    }
    let p = projector(a, s1)?.to_matrix().expect("1 -> 1 block");
    let t = match s2 {
        Sector::NS => contract("aa->", &[&p])?,
        Sector::R => contract("ab,ba->", &[&p, &a.full_twist()])?,
    };
    Ok(t.scalar_value())
}

pub fn partition_function(a: &HalfTwistAlgebra, s: &SurfaceSpec) -> Result<Cyclo> {
    match s {
        SurfaceSpec::Sphere => closed(a, SPHERE_DIAGRAM),
        SurfaceSpec::Rp2(k) => closed(a, &rp2_diagram(*k)),
        SurfaceSpec::Torus(s1, s2) => torus_value(a, *s1, *s2),
        SurfaceSpec::Klein(..) | SurfaceSpec::CrosscapSum(_) => {
            let states: Vec<AlgebraElement> = s.crosscaps().iter().map(|&k| moebius_state(a, k)).collect();
            Ok(cap_off(a, &product_of(a, &states)))
        }
    }
}

/// A once-punctured torus as an algebra element, from the trace formula:
/// `h = sum_{ik} (G^-1)_{ki} v_i phi^j(v_k)` with `G_ik = R eps(v_i v_k)`
/// over a basis `v` of the first sector.
pub fn handle_state(a: &HalfTwistAlgebra, s1: Sector, s2: Sector) -> Result<AlgebraElement> {
    if !a.family().is_constructed() {
        return Err(Error::OutsideValidatedFamily(format!(
            "custom algebra (family {})",
            a.family()
        )));
    }
    let space = state_space(a, s1)?;
    let v = &space.basis;
    let n = v.len();
    let mut g = crate::tensor::Tensor::zeros(2, a.dim().max(n));
    for i in 0..n {
        for k in 0..n {
            g.set(&[i, k], cap_off(a, &a.mul(&v[i], &v[k])));
        }
    }
    let g_inv = crate::linalg::inverse(&g, n)
        .map_err(|_| Error::OutsideValidatedFamily("the closing pairing on the state space is degenerate".into()))?;
    let phi = a.full_twist();
    let mut h = AlgebraElement::zero(a.dim());
    for (idx, w) in g_inv.iter() {
        let (k, i) = (idx[0] as usize, idx[1] as usize);
        let right = match s2 {
            Sector::NS => v[k].clone(),
            Sector::R => a.apply(&phi, &v[k]),
        };
        h = h.add(&a.mul(&v[i], &right).scale(w));
    }
    let expect = torus_value(a, s1, s2)?;
    let got = cap_off(a, &h);
    if got != expect {
        return Err(Error::OutsideValidatedFamily(format!(
            "closing the handle gives {} but the torus value is {}",
            got.compact(),
            expect.compact()
        )));
    }
    Ok(h)
}

/// `R eps(prod u_i)` over Moebius and handle states of the summands.
/// Spheres contribute nothing; an empty sum is the sphere.
pub fn connect_sum_pf(a: &HalfTwistAlgebra, specs: &[SurfaceSpec]) -> Result<Cyclo> {
    let mut states = Vec::new();
    for s in specs {
        match s {
            SurfaceSpec::Torus(s1, s2) => states.push(handle_state(a, *s1, *s2)?),
            other => states.extend(other.crosscaps().iter().map(|&k| moebius_state(a, k))),
        }
    }
    Ok(cap_off(a, &product_of(a, &states)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `Z(RP2_1) = alpha' e^{i k pi/4}` with `alpha' = sqrt Z(S^2)`.
    Invertible { k: u8, euler_alpha: Cyclo },
    NonInvertible { ns_dim: usize, r_dim: usize },
}

pub fn classify(a: &HalfTwistAlgebra) -> Result<Classification> {
    let ns_dim = state_space(a, Sector::NS)?.dim();
    let r_dim = state_space(a, Sector::R)?.dim();
    if ns_dim != 1 || r_dim != 1 {
        return Ok(Classification::NonInvertible { ns_dim, r_dim });
    }
    let sphere = partition_function(a, &SurfaceSpec::Sphere)?;
    let euler_alpha = sphere.sqrt_positive_real().ok_or_else(|| {
        Error::NotInvertibleFamily(format!("Z(S^2) = {} has no positive square root", sphere.compact()))
    })?;
    let rp2 = partition_function(a, &SurfaceSpec::Rp2(1))?;
    let ratio = rp2.checked_div(&euler_alpha)?;
    match ratio.polar() {
        Some((r, k)) if r.is_one() => Ok(Classification::Invertible { k, euler_alpha }),
        _ => Err(Error::NotInvertibleFamily(format!(
            "Z(RP2_1)/alpha' = {} is not an eighth root of unity",
            ratio.compact()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackRow {
    pub surface: SurfaceSpec,
    pub stacked: Cyclo,
    pub left: Cyclo,
    pub right: Cyclo,
}

impl StackRow {
    pub fn ok(&self) -> bool {
        self.stacked == &self.left * &self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorRow {
    pub sector: Sector,
    pub stacked: (usize, usize),
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl SectorRow {
    /// Super vector space tensor product of the factors.
    pub fn expected(&self) -> (usize, usize) {
        let ((e1, o1), (e2, o2)) = (self.left, self.right);
        (e1 * e2 + o1 * o2, e1 * o2 + o1 * e2)
    }

    pub fn ok(&self) -> bool {
        self.stacked == self.expected()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackingReport {
    pub surfaces: Vec<StackRow>,
    pub sectors: Vec<SectorRow>,
}

impl StackingReport {
    pub fn passed(&self) -> bool {
        self.surfaces.iter().all(StackRow::ok) && self.sectors.iter().all(SectorRow::ok)
    }
}

/// Compares the theory of `A (x) B` with the product of the two theories.
pub fn stacking_check(a: &HalfTwistAlgebra, b: &HalfTwistAlgebra, specs: &[SurfaceSpec]) -> Result<StackingReport> {
    let ab = supertensor(a, b)?;
    let mut surfaces = Vec::with_capacity(specs.len());
    for s in specs {
        surfaces.push(StackRow {
            surface: s.clone(),
            stacked: partition_function(&ab, s)?,
            left: partition_function(a, s)?,
            right: partition_function(b, s)?,
        });
    }
    let mut sectors = Vec::new();
    for sector in Sector::BOTH {
        sectors.push(SectorRow {
            sector,
            stacked: state_space(&ab, sector)?.superdim(),
            left: state_space(a, sector)?.superdim(),
            right: state_space(b, sector)?.superdim(),
        });
    }
    Ok(StackingReport { surfaces, sectors })
}
