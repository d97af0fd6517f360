//! Slice-by-slice evaluation of ribbon diagrams.
//!
//! The state after `k` slices is a sparse table keyed by
//! `(input colors ++ colors of the live strands)`. Each generator touches only
//! the strands it acts on, so the cost is proportional to the number of
//! nonzero states rather than `dim^width`. Input strands stay symbolic until
//! something acts on them, which keeps wide identity regions cheap.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::superalgebra::HalfTwistAlgebra;
use crate::tensor::Tensor;

use super::{Generator, RibbonDiagram};

type Key = SmallVec<[u32; 12]>;

/// Guards against runaway evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest number of strands (inputs plus live strands) allowed at any
    /// height of the diagram.
    pub max_width: usize,
    /// Largest number of nonzero entries in the running state.
    pub max_states: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_width: 16,
            max_states: 1 << 22,
        }
    }
}

/// A linear map `A^{(x)n} -> A^{(x)m}` as a sparse table over
/// `(inputs ++ outputs)` index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBlock {
    n: usize,
    m: usize,
    dim: usize,
    entries: HashMap<Key, Cyclo>,
}

impl LinearBlock {
    pub fn identity(dim: usize, n: usize) -> Result<LinearBlock> {
        let mut entries = HashMap::new();
        for t in tuples(dim, n)? {
            let mut k = t.clone();
            k.extend_from_slice(&t);
            entries.insert(k, Cyclo::one());
        }
        Ok(LinearBlock { n, m: n, dim, entries })
    }

    /// A 0 -> 0 block holding one scalar.
    pub fn scalar_block(dim: usize, v: Cyclo) -> LinearBlock {
        let mut entries = HashMap::new();
        if !v.is_zero() {
            entries.insert(Key::new(), v);
        }
        LinearBlock { n: 0, m: 0, dim, entries }
    }

    /// The 1 -> 1 block of a matrix `M[a][b]` (coefficient of `e_b` in the image of `e_a`).
    pub fn from_matrix(t: &Tensor) -> Result<LinearBlock> {
        if t.rank() != 2 {
            return Err(Error::Shape(format!("expected a rank-2 tensor, got rank {}", t.rank())));
        }
        let entries = t
            .iter()
            .map(|(k, v)| (k.iter().copied().collect(), v.clone()))
            .collect();
        Ok(LinearBlock { n: 1, m: 1, dim: t.dim(), entries })
    }

    pub fn to_matrix(&self) -> Option<Tensor> {
        if self.n != 1 || self.m != 1 {
            return None;
        }
        let mut t = Tensor::zeros(2, self.dim);
        for (k, v) in &self.entries {
            t.set(&[k[0] as usize, k[1] as usize], v.clone());
        }
        Some(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, inputs: &[usize], outputs: &[usize]) -> Cyclo {
        let k: Key = inputs.iter().chain(outputs).map(|&x| x as u32).collect();
        self.entries.get(&k).cloned().unwrap_or_default()
    }

    /// Entries sorted by index tuple.
    pub fn sorted_entries(&self) -> Vec<(Vec<usize>, Cyclo)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .map(|(k, c)| (k.iter().map(|&x| x as usize).collect::<Vec<_>>(), c.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// The value of a closed diagram.
    pub fn scalar(&self) -> Option<Cyclo> {
        (self.n == 0 && self.m == 0).then(|| self.entries.get(&Key::new()).cloned().unwrap_or_default())
    }

    pub fn scale(&self, s: &Cyclo) -> LinearBlock {
        let mut out = self.clone();
        out.entries = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), v * s))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// `next` after `self`.
    pub fn then(&self, next: &LinearBlock) -> Result<LinearBlock> {
        if self.m != next.n || self.dim != next.dim {
            return Err(Error::Mismatch(format!(
                "cannot compose {}->{} with {}->{}",
                self.n, self.m, next.n, next.m
            )));
        }
        let mut by_input: HashMap<&[u32], Vec<(&[u32], &Cyclo)>> = HashMap::new();
        for (k, v) in &next.entries {
            let (i, o) = k.split_at(next.n);
            by_input.entry(i).or_default().push((o, v));
        }
        let mut entries: HashMap<Key, Cyclo> = HashMap::new();
        for (k, v) in &self.entries {
            let (i, mid) = k.split_at(self.n);
            let Some(row) = by_input.get(mid) else { continue };
            for &(o, w) in row {
                let mut key: Key = i.into();
                key.extend_from_slice(o);
                *entries.entry(key).or_default() += &(v * w);
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(LinearBlock { n: self.n, m: next.m, dim: self.dim, entries })
    }

    /// First index tuple (in sorted order) where the blocks differ.
    pub fn first_difference(&self, other: &LinearBlock) -> Option<(Vec<usize>, Cyclo, Cyclo)> {
        let mut keys: Vec<&Key> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let a = self.entries.get(k).cloned().unwrap_or_default();
            let b = other.entries.get(k).cloned().unwrap_or_default();
            (a != b).then(|| (k.iter().map(|&x| x as usize).collect(), a, b))
        })
    }
}

fn tuples(dim: usize, n: usize) -> Result<Vec<Key>> {
    if (dim as u128).checked_pow(n as u32).is_none_or(|c| c > u32::MAX as u128) {
        return Err(Error::LimitExceeded(format!("{dim}^{n} basis tuples")));
    }
    let mut out = vec![Key::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|k| {
                (0..dim as u32).map(move |a| {
                    let mut k = k.clone();
                    k.push(a);
                    k
                })
            })
            .collect();
    }
    Ok(out)
}

type Rows = Vec<Vec<(u32, Cyclo)>>;
type CrossTable = HashMap<(u32, u32), Vec<(u32, u32, Cyclo)>>;

/// Generator weights arranged for lookup by their input colors.
struct Weights {
    cup: Vec<(u32, u32, Cyclo)>,
    cap: HashMap<(u32, u32), Cyclo>,
    node: HashMap<(u32, u32, u32), Cyclo>,
    cross: CrossTable,
    twist: Rows,
    twist_inv: Option<Rows>,
}

fn rows(t: &Tensor, dim: usize) -> Rows {
    let mut out = vec![Vec::new(); dim];
    for (k, v) in t.iter() {
        out[k[0] as usize].push((k[1], v.clone()));
    }
    out
}

impl Weights {
    fn new(a: &HalfTwistAlgebra, need_inverse: bool) -> Result<Weights> {
        let dim = a.dim();
        let twist_inv = if need_inverse {
            let inv = a
                .tau_inv()
                .ok_or_else(|| Error::Singular("tau is not invertible, cannot evaluate t-".into()))?;
            Some(rows(inv, dim))
        } else {
            None
        };
        let mut cross = CrossTable::new();
        for (k, v) in a.lam().iter() {
            cross.entry((k[0], k[1])).or_default().push((k[2], k[3], v.clone()));
        }
        Ok(Weights {
            cup: a.b_inv().iter().map(|(k, v)| (k[0], k[1], v.clone())).collect(),
            cap: a.b().iter().map(|(k, v)| ((k[0], k[1]), v.clone())).collect(),
            node: a.c().iter().map(|(k, v)| ((k[0], k[1], k[2]), v.clone())).collect(),
            cross,
            twist: rows(a.tau(), dim),
            twist_inv,
        })
    }
}

pub fn evaluate(d: &RibbonDiagram, a: &HalfTwistAlgebra) -> Result<LinearBlock> {
    evaluate_with(d, a, &EvalOptions::default())
}

pub fn evaluate_with(d: &RibbonDiagram, a: &HalfTwistAlgebra, opts: &EvalOptions) -> Result<LinearBlock> {
    let widths = d.widths()?;
    let n = d.bottom;
    if let Some(w) = widths.iter().map(|w| w + n).max().filter(|&w| w > opts.max_width) {
        return Err(Error::LimitExceeded(format!(
            "diagram needs {w} simultaneous strands, limit is {}",
            opts.max_width
        )));
    }
    let dim = a.dim();
    let weights = Weights::new(a, d.count(Generator::TwistL) > 0)?;

    // Input strands start out uncolored and are only split into basis
    // colors when a generator first touches them.
    let mut start = Key::from_elem(UNSET, n);
    start.extend((0..n as u32).map(|i| PENDING + i));
    let mut state: HashMap<Key, Cyclo> = HashMap::from([(start, Cyclo::one())]);

    for (idx, s) in d.slices.iter().enumerate() {
        let p = n + s.pos;
        let legs = s.gen.arity().0;
        let mut next: HashMap<Key, Cyclo> = HashMap::with_capacity(state.len());
        let mut put = |k: Key, v: Cyclo| {
            *next.entry(k).or_default() += &v;
        };
        for (k0, v) in &state {
            for k in resolve(k0, n, p..p + legs, dim) {
                match s.gen {
                    Generator::Cup => {
                        for (x, y, w) in &weights.cup {
                            let mut key: Key = k[..p].into();
                            key.push(*x);
                            key.push(*y);
                            key.extend_from_slice(&k[p..]);
                            put(key, v * w);
                        }
                    }
                    Generator::Cap => {
                        if let Some(w) = weights.cap.get(&(k[p], k[p + 1])) {
                            let mut key: Key = k[..p].into();
                            key.extend_from_slice(&k[p + 2..]);
                            put(key, v * w);
                        }
                    }
                    Generator::Node => {
                        if let Some(w) = weights.node.get(&(k[p], k[p + 1], k[p + 2])) {
                            let mut key: Key = k[..p].into();
                            key.extend_from_slice(&k[p + 3..]);
                            put(key, v * w);
                        }
                    }
                    Generator::Cross => {
                        if let Some(outs) = weights.cross.get(&(k[p], k[p + 1])) {
                            for (x, y, w) in outs {
                                let mut key = k.clone();
                                key[p] = *x;
                                key[p + 1] = *y;
                                put(key, v * w);
                            }
                        }
                    }
                    Generator::TwistR | Generator::TwistL => {
                        let table = match s.gen {
                            Generator::TwistR => &weights.twist,
                            _ => weights.twist_inv.as_ref().expect("inverse prepared"),
                        };
                        for (x, w) in &table[k[p] as usize] {
                            let mut key = k.clone();
                            key[p] = *x;
                            put(key, v * w);
                        }
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        if next.len() > opts.max_states {
            return Err(Error::LimitExceeded(format!(
                "{} nonzero states after slice {idx}, limit is {}",
                next.len(),
                opts.max_states
            )));
        }
        state = next;
    }

    let m = *widths.last().expect("at least the bottom width");
    let mut entries: HashMap<Key, Cyclo> = HashMap::new();
    for (k, v) in &state {
        let pending = k[n..].iter().filter(|&&c| c >= PENDING).count() as u32;
        if entries.len() as u128 + (dim as u128).pow(pending) > opts.max_states as u128 {
            return Err(Error::LimitExceeded(format!(
                "the result has more than {} nonzero entries",
                opts.max_states
            )));
        }
        for key in resolve(k, n, n..n + m, dim) {
            *entries.entry(key).or_default() += v;
        }
    }
    let block = LinearBlock { n, m, dim, entries };
    Ok(if d.r_power == 0 {
        block
    } else {
        block.scale(&a.r().pow(d.r_power))
    })
}

/// Marks an input slot whose color is not yet fixed.
const UNSET: u32 = u32::MAX;
/// Strand values at or above this carry input `value - PENDING` unchanged.
const PENDING: u32 = 1 << 31;

/// Every way of coloring the pending strands in `range`, recording each
/// choice in the matching input slot.
fn resolve(k: &Key, n: usize, range: std::ops::Range<usize>, dim: usize) -> Vec<Key> {
    let mut out = vec![k.clone()];
    for pos in range {
        let c = k[pos];
        if c < PENDING {
            continue;
        }
        let input = (c - PENDING) as usize;
        debug_assert!(input < n);
        out = out
            .into_iter()
            .flat_map(|key| {
                (0..dim as u32).map(move |x| {
                    let mut key = key.clone();
                    key[input] = x;
                    key[pos] = x;
                    key
                })
            })
            .collect();
    }
    out
}
