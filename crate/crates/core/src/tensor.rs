//! Sparse exact tensors and an einsum-style contraction engine.
//!
//! Only nonzero entries are stored. Contractions are evaluated pairwise from
//! left to right as hash joins on the shared labels, summing out every label
//! that is not needed by a later operand or by the output. Dense
//! intermediates are never formed, so cost tracks the number of nonzeros.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};

pub type Index = SmallVec<[u32; 8]>;

/// A sparse tensor with every leg ranging over `0..dim`.
#[derive(Clone, Debug)]
pub struct Tensor {
    rank: usize,
    dim: usize,
    entries: HashMap<Index, Cyclo>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for Tensor {}

impl Tensor {
    pub fn zeros(rank: usize, dim: usize) -> Self {
        Tensor {
            rank,
            dim,
            entries: HashMap::new(),
        }
    }

    /// The Kronecker delta on `dim` basis vectors.
    pub fn identity(dim: usize) -> Self {
        let mut t = Tensor::zeros(2, dim);
        for a in 0..dim {
            t.set(&[a, a], Cyclo::one());
        }
        t
    }

    pub fn scalar(v: Cyclo) -> Self {
        let mut t = Tensor::zeros(0, 0);
        t.set(&[], v);
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, idx: &[usize]) -> Cyclo {
        self.entries
            .get(&to_index(idx))
            .cloned()
            .unwrap_or_default()
    }

    /// Sets an entry; zero values remove it.
    pub fn set(&mut self, idx: &[usize], v: Cyclo) {
        assert_eq!(idx.len(), self.rank, "index rank");
        debug_assert!(idx.iter().all(|&i| i < self.dim.max(1)));
        let key = to_index(idx);
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub fn add_at(&mut self, idx: &[usize], v: &Cyclo) {
        add_entry(&mut self.entries, to_index(idx), v);
    }

    /// Nonzero entries in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Cyclo)> {
        self.entries.iter()
    }

    /// Nonzero entries in lexicographic index order.
    pub fn sorted_entries(&self) -> Vec<(Vec<usize>, Cyclo)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .map(|(k, x)| (k.iter().map(|&i| i as usize).collect::<Vec<_>>(), x.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn scale(&self, s: &Cyclo) -> Tensor {
        let mut out = Tensor::zeros(self.rank, self.dim);
        if s.is_zero() {
            return out;
        }
        out.entries = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), v * s))
            .collect();
        out
    }

    pub fn map(&self, f: impl Fn(&Cyclo) -> Cyclo) -> Tensor {
        let mut out = Tensor::zeros(self.rank, self.dim);
        for (k, v) in &self.entries {
            let w = f(v);
            if !w.is_zero() {
                out.entries.insert(k.clone(), w);
            }
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            add_entry(&mut out.entries, k.clone(), &-v);
        }
        out
    }

    /// Value of a rank-0 tensor.
    pub fn scalar_value(&self) -> Cyclo {
        self.get(&[])
    }

    /// Reorders legs: output leg `i` is input leg `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let mut out = Tensor::zeros(self.rank, self.dim);
        for (k, v) in &self.entries {
            let nk: Index = perm.iter().map(|&p| k[p]).collect();
            out.entries.insert(nk, v.clone());
        }
        out
    }

    /// Smallest index tuple (lexicographic) at which the two tensors differ.
    pub fn first_difference(&self, other: &Tensor) -> Option<(Vec<usize>, Cyclo, Cyclo)> {
        let mut keys: Vec<&Index> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .filter(|k| self.entries.get(*k) != other.entries.get(*k))
            .collect();
        keys.sort();
        keys.first().map(|k| {
            (
                k.iter().map(|&i| i as usize).collect(),
                self.entries.get(*k).cloned().unwrap_or_default(),
                other.entries.get(*k).cloned().unwrap_or_default(),
            )
        })
    }
}

pub(crate) fn to_index(idx: &[usize]) -> Index {
    idx.iter().map(|&i| i as u32).collect()
}

pub(crate) fn add_entry(map: &mut HashMap<Index, Cyclo>, key: Index, v: &Cyclo) {
    if v.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(v.clone());
        }
    }
}

/// Intermediate result: a tensor together with the label of each leg.
struct Labeled {
    labels: Vec<char>,
    entries: HashMap<Index, Cyclo>,
}

impl Labeled {
    fn from_tensor(labels: &[char], t: &Tensor) -> Labeled {
        // Repeated labels select the diagonal.
        let mut uniq: Vec<char> = Vec::new();
        let mut pos: Vec<usize> = Vec::new();
        for &l in labels {
            match uniq.iter().position(|&u| u == l) {
                Some(p) => pos.push(p),
                None => {
                    pos.push(uniq.len());
                    uniq.push(l);
                }
            }
        }
        let mut entries = HashMap::with_capacity(t.entries.len());
        'outer: for (k, v) in &t.entries {
            let mut nk: Index = SmallVec::from_elem(0, uniq.len());
            let mut seen = [false; 32];
            for (leg, &p) in pos.iter().enumerate() {
                if seen[p] {
                    if nk[p] != k[leg] {
                        continue 'outer;
                    }
                } else {
                    seen[p] = true;
                    nk[p] = k[leg];
                }
            }
            add_entry(&mut entries, nk, v);
        }
        Labeled {
            labels: uniq,
            entries,
        }
    }

    /// Sums out every leg whose label is not in `keep`.
    fn reduce(self, keep: &[char]) -> Labeled {
        if self.labels.iter().all(|l| keep.contains(l)) {
            return self;
        }
        let kept: Vec<usize> = (0..self.labels.len())
            .filter(|&i| keep.contains(&self.labels[i]))
            .collect();
        let mut entries = HashMap::new();
        for (k, v) in &self.entries {
            add_entry(&mut entries, kept.iter().map(|&i| k[i]).collect(), v);
        }
        Labeled {
            labels: kept.iter().map(|&i| self.labels[i]).collect(),
            entries,
        }
    }

    /// Product with `other`, keeping only labels in `keep`.
    fn join(&self, other: &Labeled, keep: &[char]) -> Labeled {
        let shared: Vec<(usize, usize)> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| other.labels.iter().position(|m| m == l).map(|j| (i, j)))
            .collect();
        let mut out_labels = Vec::new();
        let mut out_src: Vec<(bool, usize)> = Vec::new();
        for (i, &l) in self.labels.iter().enumerate() {
            if keep.contains(&l) {
                out_labels.push(l);
                out_src.push((false, i));
            }
        }
        for (j, &l) in other.labels.iter().enumerate() {
            if keep.contains(&l) && !self.labels.contains(&l) {
                out_labels.push(l);
                out_src.push((true, j));
            }
        }
        // Hash the smaller operand by its shared-label projection.
        let (small, large, swap) = if self.entries.len() <= other.entries.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let small_key: Vec<usize> = shared.iter().map(|&(i, j)| if swap { j } else { i }).collect();
        let large_key: Vec<usize> = shared.iter().map(|&(i, j)| if swap { i } else { j }).collect();
        let mut buckets: HashMap<Index, Vec<(&Index, &Cyclo)>> = HashMap::new();
        for (k, v) in &small.entries {
            let key: Index = small_key.iter().map(|&p| k[p]).collect();
            buckets.entry(key).or_default().push((k, v));
        }
        let mut entries = HashMap::new();
        for (lk, lv) in &large.entries {
            let key: Index = large_key.iter().map(|&p| lk[p]).collect();
            let Some(matches) = buckets.get(&key) else {
                continue;
            };
            for (sk, sv) in matches {
                let (ak, bk) = if swap { (lk, *sk) } else { (*sk, lk) };
                let nk: Index = out_src
                    .iter()
                    .map(|&(from_b, p)| if from_b { bk[p] } else { ak[p] })
                    .collect();
                add_entry(&mut entries, nk, &(*sv * lv));
            }
        }
        Labeled {
            labels: out_labels,
            entries,
        }
    }
}

/// Einstein-summation contraction, e.g. `contract("abd,dc->abc", &[&c, &binv])`.
///
/// Every label is a single character; labels absent from the output are
/// summed. Operands are joined left to right, so callers control the order.
pub fn contract(spec: &str, operands: &[&Tensor]) -> Result<Tensor> {
    let (lhs, out) = spec
        .split_once("->")
        .ok_or_else(|| Error::Shape(format!("contraction spec '{spec}' lacks '->'")))?;
    let inputs: Vec<Vec<char>> = lhs.split(',').map(|s| s.trim().chars().collect()).collect();
    let out: Vec<char> = out.trim().chars().collect();
    if inputs.len() != operands.len() {
        return Err(Error::Shape(format!(
            "spec '{spec}' names {} operands, got {}",
            inputs.len(),
            operands.len()
        )));
    }
    let mut dim = 0;
    for (labels, t) in inputs.iter().zip(operands) {
        if labels.len() != t.rank {
            return Err(Error::Shape(format!(
                "operand of rank {} given labels '{}'",
                t.rank,
                labels.iter().collect::<String>()
            )));
        }
        if t.rank > 0 {
            if dim != 0 && t.dim != dim {
                return Err(Error::Shape(format!("mixed leg dimensions {dim} and {}", t.dim)));
            }
            dim = t.dim;
        }
    }
    // Labels still needed after operand k.
    let needed_after = |k: usize| -> Vec<char> {
        let mut v = out.clone();
        for labels in &inputs[k + 1..] {
            v.extend(labels.iter().copied());
        }
        v
    };
    let mut acc = Labeled::from_tensor(&inputs[0], operands[0]).reduce(&needed_after(0));
    for k in 1..operands.len() {
        let next = Labeled::from_tensor(&inputs[k], operands[k]);
        acc = acc.join(&next, &needed_after(k));
    }
    let acc = acc.reduce(&out);
    let perm: Vec<usize> = out
        .iter()
        .map(|l| {
            acc.labels
                .iter()
                .position(|m| m == l)
                .ok_or_else(|| Error::Shape(format!("output label '{l}' not bound")))
        })
        .collect::<Result<_>>()?;
    let mut t = Tensor::zeros(out.len(), if out.is_empty() { 0 } else { dim });
    for (k, v) in acc.entries {
        t.entries.insert(perm.iter().map(|&p| k[p]).collect(), v);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Tensor {
        let mut t = Tensor::zeros(2, rows.len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                t.set(&[i, j], Cyclo::from_int(x));
            }
        }
        t
    }

    #[test]
    fn matrix_product() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 1], &[1, 0]]);
        let c = contract("ij,jk->ik", &[&a, &b]).unwrap();
        assert_eq!(c, mat(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn trace_and_diagonal() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(contract("ii->", &[&a]).unwrap().scalar_value(), Cyclo::from_int(5));
        let d = contract("ii->i", &[&a]).unwrap();
        assert_eq!(d.get(&[1]), Cyclo::from_int(4));
    }

    #[test]
    fn transpose_and_outer() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(contract("ij->ji", &[&a]).unwrap(), mat(&[&[1, 3], &[2, 4]]));
        let o = contract("ij,kl->ijkl", &[&a, &a]).unwrap();
        assert_eq!(o.get(&[0, 1, 1, 0]), Cyclo::from_int(6));
    }

    #[test]
    fn shape_errors() {
        let a = mat(&[&[1]]);
        assert!(contract("ijk->i", &[&a]).is_err());
        assert!(contract("ij", &[&a]).is_err());
        assert!(contract("ij->x", &[&a]).is_err());
    }

    #[test]
    fn first_difference_is_lexicographically_smallest() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[1, 2], &[0, 5]]);
        let (idx, l, r) = a.first_difference(&b).unwrap();
        assert_eq!(idx, vec![1, 0]);
        assert_eq!((l, r), (Cyclo::from_int(3), Cyclo::zero()));
        assert!(a.first_difference(&a).is_none());
    }
}
