//! Bit-packed linear algebra over F2.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// A subspace of `F2^ambient`, kept as a fully reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| BitVec::unit(ambient, i)))
    }

    pub fn span(ambient: usize, vecs: impl IntoIterator<Item = BitVec>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for b in self.basis.iter_mut() {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        self.basis.push(r);
        self.pivots.push(p);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone());
        }
        s
    }

    /// Vectors completing a basis of `self` to one of `self + other`,
    /// drawn from `other`'s basis.
    pub fn complement_in(&self, other: &Subspace) -> Vec<BitVec> {
        let mut s = self.clone();
        other.basis.iter().filter(|b| s.insert((*b).clone())).cloned().collect()
    }
}

/// Rank of a list of vectors.
pub fn rank(vecs: &[BitVec]) -> usize {
    let ambient = vecs.first().map(BitVec::len).unwrap_or(0);
    Subspace::span(ambient, vecs.iter().cloned()).dim()
}

/// Kernel of the linear map sending the `i`-th source basis vector to
/// `images[i]`, as vectors in `F2^images.len()`.
pub fn kernel(images: &[BitVec]) -> Subspace {
    let n = images.len();
    let mut rows: Vec<(BitVec, BitVec)> = images
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), BitVec::unit(n, i)))
        .collect();
    let mut out = Subspace::zero(n);
    let mut done = 0;
    while done < rows.len() {
        match rows[done].0.first_one() {
            None => {
                out.insert(rows[done].1.clone());
                done += 1;
            }
            Some(p) => {
                let (head, tail) = rows.split_at_mut(done + 1);
                let pivot = &head[done];
                for r in tail.iter_mut() {
                    if r.0.get(p) {
                        r.0.xor_assign(&pivot.0);
                        r.1.xor_assign(&pivot.1);
                    }
                }
                done += 1;
            }
        }
    }
    out
}

/// Applies the map given by `images` to a source vector.
pub fn apply(images: &[BitVec], target_len: usize, v: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(target_len);
    for i in v.ones() {
        out.xor_assign(&images[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(bits: &[u8]) -> BitVec {
        BitVec::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i))
    }

    #[test]
    fn small_rank_and_kernel() {
        let imgs = vec![bv(&[1, 0, 1]), bv(&[0, 1, 1]), bv(&[1, 1, 0])];
        assert_eq!(rank(&imgs), 2);
        let k = kernel(&imgs);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&bv(&[1, 1, 1])));
    }

    #[test]
    fn wide_vectors() {
        let v = BitVec::from_indices(130, [0, 64, 129]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.count_ones(), 3);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(0u8..2, 7), 0..9)) {
            let imgs: Vec<BitVec> = rows.iter().map(|r| bv(r)).collect();
            let k = kernel(&imgs);
            prop_assert_eq!(k.dim() + rank(&imgs), imgs.len());
            for v in k.basis() {
                prop_assert!(apply(&imgs, 7, v).is_zero());
            }
        }

        #[test]
        fn span_membership(rows in prop::collection::vec(prop::collection::vec(0u8..2, 5), 1..6)) {
            let vecs: Vec<BitVec> = rows.iter().map(|r| bv(r)).collect();
            let s = Subspace::span(5, vecs.iter().cloned());
            for v in &vecs {
                prop_assert!(s.contains(v));
            }
            let mut sum = vecs[0].clone();
            for v in &vecs[1..] {
                sum.xor_assign(v);
            }
            prop_assert!(s.contains(&sum));
        }
    }
}
