//! Linear algebra over GF(2) with bit-packed rows.
//!
//! Vectors live in GF(2)^d for d <= 64, so a vector is one machine
//! word and a matrix is a `Vec<u64>` of rows. Subspaces are kept in
//! reduced row echelon form, which makes equality of subspaces plain
//! equality of their basis vectors; a [`SubspaceIndex`] hands out
//! dense integer ids for canonical subspaces so DP tables can key on
//! `u32` instead of basis lists.

use num_bigint::BigUint;
use std::collections::HashMap;
use std::fmt;

/// Hard upper bound on vector dimensions; one u64 per row.
pub const MAX_DIM: usize = 64;

fn dim_mask(dim: usize) -> u64 {
    assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A vector in GF(2)^dim, coordinate i stored in bit i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: u64,
    dim: u8,
}

impl BitVector {
    pub fn zero(dim: usize) -> Self {
        dim_mask(dim);
        BitVector { bits: 0, dim: dim as u8 }
    }

    pub fn from_bits(bits: u64, dim: usize) -> Self {
        assert!(
            bits & !dim_mask(dim) == 0,
            "bits 0x{bits:x} do not fit in dimension {dim}"
        );
        BitVector { bits, dim: dim as u8 }
    }

    /// Standard basis vector e_{coord+1} (bit `coord` set).
    pub fn unit(dim: usize, coord: usize) -> Self {
        assert!(coord < dim, "coordinate {coord} out of range for dimension {dim}");
        BitVector { bits: 1 << coord, dim: dim as u8 }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, coord: usize) -> bool {
        assert!(coord < self.dim());
        (self.bits >> coord) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Inner product over GF(2): parity of the common support.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.dim, other.dim, "dot of vectors with different dimensions");
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.dim, other.dim);
        BitVector { bits: self.bits ^ other.bits, dim: self.dim }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        if self.dim == 0 {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A matrix over GF(2); row i is `rows[i]`, column j is bit j.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<u64>,
    ncols: usize,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        dim_mask(ncols);
        BitMatrix { rows: vec![0; nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        dim_mask(n);
        BitMatrix { rows: (0..n).map(|i| 1u64 << i).collect(), ncols: n }
    }

    pub fn from_row_bits(rows: Vec<u64>, ncols: usize) -> Self {
        let mask = dim_mask(ncols);
        for (i, &r) in rows.iter().enumerate() {
            assert!(r & !mask == 0, "row {i} does not fit in {ncols} columns");
        }
        BitMatrix { rows, ncols }
    }

    pub fn from_rows(rows: &[BitVector]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.dim());
        BitMatrix::from_row_bits(
            rows.iter()
                .map(|r| {
                    assert_eq!(r.dim(), ncols, "rows of mixed dimension");
                    r.bits()
                })
                .collect(),
            ncols,
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(j < self.ncols);
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(j < self.ncols);
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector { bits: self.rows[i], dim: self.ncols as u8 }
    }

    pub fn row_bits(&self) -> &[u64] {
        &self.rows
    }

    pub fn transposed(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.ncols, self.nrows());
        for i in 0..self.nrows() {
            let mut r = self.rows[i];
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                t.rows[j] |= 1 << i;
                r &= r - 1;
            }
        }
        t
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.rows.iter().copied())
    }

    /// Row vector times matrix: `v * M`, the combination of rows of M
    /// selected by the support of v. Requires `v.dim == nrows`.
    pub fn left_mul(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.dim(), self.nrows(), "vector/matrix dimension mismatch");
        let mut acc = 0u64;
        let mut bits = v.bits;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= self.rows[i];
            bits &= bits - 1;
        }
        BitVector { bits: acc, dim: self.ncols as u8 }
    }

    /// Row vector times the transpose: `v * M^T`. Requires
    /// `v.dim == ncols`; coordinate i of the result is `v . row_i`.
    pub fn left_mul_transpose(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.dim(), self.ncols(), "vector/matrix dimension mismatch");
        let mut acc = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            if (v.bits & row).count_ones() % 2 == 1 {
                acc |= 1 << i;
            }
        }
        BitVector { bits: acc, dim: self.nrows() as u8 }
    }

    /// Matrix product, mostly for tests.
    pub fn matmul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|&r| other.left_mul(&BitVector { bits: r, dim: self.ncols as u8 }).bits)
            .collect();
        BitMatrix { rows, ncols: other.ncols }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Rows as a string like "[101;010]", row-major.
    pub fn bit_string(&self) -> String {
        let mut s = String::from("[");
        for (i, &row) in self.rows.iter().enumerate() {
            if i > 0 {
                s.push(';');
            }
            for j in 0..self.ncols {
                s.push(if (row >> j) & 1 == 1 { '1' } else { '0' });
            }
        }
        s.push(']');
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{} {})", self.nrows(), self.ncols, self.bit_string())
    }
}

fn rank_of_rows(rows: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut r in rows {
        for &b in &basis {
            if (r >> b.trailing_zeros()) & 1 == 1 {
                r ^= b;
            }
        }
        if r != 0 {
            basis.push(r);
        }
    }
    basis.len()
}

/// A linear subspace of GF(2)^ambient in reduced row echelon form.
///
/// The basis rows are sorted by pivot (lowest set bit) and each pivot
/// column is zero in every other row, so equal subspaces have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Vec<u64>,
    ambient: usize,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        dim_mask(ambient);
        Subspace { basis: Vec::new(), ambient }
    }

    /// Span of a set of vectors, all of dimension `ambient`.
    pub fn span(vectors: &[BitVector], ambient: usize) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            assert_eq!(v.dim(), ambient, "span of vectors with mixed dimension");
            s.insert_bits(v.bits);
        }
        s
    }

    fn insert_bits(&mut self, mut v: u64) {
        for &row in &self.basis {
            if (v >> row.trailing_zeros()) & 1 == 1 {
                v ^= row;
            }
        }
        if v == 0 {
            return;
        }
        let pivot = v.trailing_zeros();
        for row in &mut self.basis {
            if (*row >> pivot) & 1 == 1 {
                *row ^= v;
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|r| r.trailing_zeros() > pivot)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, v);
    }

    /// Smallest subspace containing both operands.
    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "join of subspaces with different ambients");
        let mut s = self.clone();
        for &row in &other.basis {
            s.insert_bits(row);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = BitVector> + '_ {
        let dim = self.ambient as u8;
        self.basis.iter().map(move |&bits| BitVector { bits, dim })
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.dim(), self.ambient);
        let mut bits = v.bits;
        for &row in &self.basis {
            if (bits >> row.trailing_zeros()) & 1 == 1 {
                bits ^= row;
            }
        }
        bits == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.basis().all(|b| other.contains(&b))
    }

    /// True iff v has even inner product with every element of the
    /// subspace (equivalently, with every basis vector).
    pub fn is_orthogonal_to(&self, v: &BitVector) -> bool {
        assert_eq!(v.dim(), self.ambient, "orthogonality test across dimensions");
        self.basis.iter().all(|&row| (row & v.bits).count_ones() % 2 == 0)
    }

    /// All 2^dim elements; intended for small subspaces.
    pub fn elements(&self) -> Vec<BitVector> {
        let dim = self.ambient as u8;
        let mut out = vec![BitVector { bits: 0, dim }];
        for &row in &self.basis {
            let half: Vec<BitVector> = out.iter().map(|v| BitVector { bits: v.bits ^ row, dim }).collect();
            out.extend(half);
        }
        out
    }

    /// Image under a matrix acting on the right: span of `b * M` over
    /// basis vectors b. Requires `ambient == M.nrows`.
    pub fn image(&self, m: &BitMatrix) -> Subspace {
        assert_eq!(self.ambient, m.nrows(), "image dimension mismatch");
        let vs: Vec<BitVector> = self.basis().map(|b| m.left_mul(&b)).collect();
        Subspace::span(&vs, m.ncols())
    }

    /// Image under the transposed matrix: span of `b * M^T`.
    pub fn image_transpose(&self, m: &BitMatrix) -> Subspace {
        assert_eq!(self.ambient, m.ncols(), "transposed image dimension mismatch");
        let vs: Vec<BitVector> = self.basis().map(|b| m.left_mul_transpose(&b)).collect();
        Subspace::span(&vs, m.nrows())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.basis().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, ">/{}", self.ambient)
    }
}

/// Dense id registry for canonical subspaces of one fixed ambient
/// dimension. Id 0 is always the zero subspace.
pub struct SubspaceIndex {
    ambient: usize,
    ids: HashMap<Vec<u64>, u32>,
    spaces: Vec<Subspace>,
}

impl SubspaceIndex {
    pub fn new(ambient: usize) -> Self {
        let mut idx = SubspaceIndex { ambient, ids: HashMap::new(), spaces: Vec::new() };
        idx.register(&Subspace::zero(ambient));
        idx
    }

    /// Id of the subspace, registering it on first sight. Ids are
    /// assigned in registration order.
    pub fn register(&mut self, s: &Subspace) -> u32 {
        assert_eq!(s.ambient, self.ambient, "registering subspace of wrong ambient");
        if let Some(&id) = self.ids.get(&s.basis) {
            return id;
        }
        let id = self.spaces.len() as u32;
        self.ids.insert(s.basis.clone(), id);
        self.spaces.push(s.clone());
        id
    }

    pub fn get(&self, id: u32) -> &Subspace {
        &self.spaces[id as usize]
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the zero subspace is always present
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
}

/// Number of subspaces of GF(2)^t: the sum of Gaussian binomials
/// [t choose k]_2 over k.
pub fn galois_number(t: usize) -> BigUint {
    (0..=t).map(|k| gaussian_binomial(t, k)).sum()
}

/// Gaussian binomial coefficient [n choose k]_2.
pub fn gaussian_binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 0..k {
        num *= (BigUint::from(1u32) << (n - i)) - &one;
        den *= (BigUint::from(1u32) << (i + 1)) - &one;
    }
    num / den
}

/// Every subspace of GF(2)^t in canonical form, enumerated by pivot
/// column set and free entries. Exponential in t; meant for small t.
pub fn enumerate_subspaces(t: usize) -> Vec<Subspace> {
    dim_mask(t);
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    enumerate_pivot_sets(t, 0, &mut pivots, &mut out);
    out
}

fn enumerate_pivot_sets(t: usize, from: usize, pivots: &mut Vec<usize>, out: &mut Vec<Subspace>) {
    let mut rows = vec![0u64; pivots.len()];
    fill_free_entries(t, pivots, 0, &mut rows, out);
    for p in from..t {
        pivots.push(p);
        enumerate_pivot_sets(t, p + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free_entries(t: usize, pivots: &[usize], row: usize, rows: &mut Vec<u64>, out: &mut Vec<Subspace>) {
    if row == pivots.len() {
        out.push(Subspace { basis: rows.clone(), ambient: t });
        return;
    }
    let free: Vec<usize> = (pivots[row] + 1..t).filter(|j| !pivots.contains(j)).collect();
    for assignment in 0u64..(1 << free.len()) {
        let mut bits = 1u64 << pivots[row];
        for (idx, &col) in free.iter().enumerate() {
            if (assignment >> idx) & 1 == 1 {
                bits |= 1 << col;
            }
        }
        rows[row] = bits;
        fill_free_entries(t, pivots, row + 1, rows, out);
    }
    rows[row] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// Exhaustive reference: the XOR-closure of a set of vectors,
    /// computed without any echelon-form machinery.
    fn xor_closure(vectors: &[u64]) -> HashSet<u64> {
        let mut set = HashSet::new();
        set.insert(0u64);
        for &v in vectors {
            let extra: Vec<u64> = set.iter().map(|&e| e ^ v).collect();
            set.extend(extra);
        }
        set
    }

    /// Exhaustive reference: count the subsets of GF(2)^t that contain
    /// 0 and are closed under XOR, by testing every subset. Only
    /// feasible for t <= 4.
    fn count_closed_subsets(t: usize) -> u64 {
        let n = 1usize << t;
        let mut count = 0u64;
        for mask in 0u64..(1 << n) {
            if mask & 1 == 0 {
                continue; // must contain the zero vector
            }
            let members: Vec<u64> = (0..n as u64).filter(|&v| (mask >> v) & 1 == 1).collect();
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| (mask >> (a ^ b)) & 1 == 1));
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        // rows (0,0,1) and (1,0,0): coordinate k is bit k
        let m = BitMatrix::from_row_bits(vec![0b100, 0b001], 3);
        assert_eq!(m.rank(), 2);
        assert_eq!(BitMatrix::zeros(4, 2).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn rank_equals_transpose_rank_dense_check() {
        // all 3x3 matrices
        for bits in 0u64..(1 << 9) {
            let rows = vec![bits & 7, (bits >> 3) & 7, (bits >> 6) & 7];
            let m = BitMatrix::from_row_bits(rows, 3);
            assert_eq!(m.rank(), m.transposed().rank());
        }
    }

    #[test]
    fn span_canonical_examples() {
        assert_eq!(Subspace::span(&[], 2), Subspace::zero(2));
        let e1 = BitVector::unit(2, 0);
        let e2 = BitVector::unit(2, 1);
        let full = Subspace::span(&[e1, e2], 2);
        assert_eq!(full.dim(), 2);
        let v11 = BitVector::from_bits(0b11, 2);
        let s = Subspace::span(&[v11, v11], 2);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v11));
        assert!(!s.contains(&e1));
    }

    #[test]
    fn span_matches_xor_closure() {
        // Every generating set over GF(2)^3: spanned subspace must hold
        // exactly the brute-force closure of the generators.
        for g1 in 0u64..8 {
            for g2 in 0u64..8 {
                for g3 in 0u64..8 {
                    let vs = [
                        BitVector::from_bits(g1, 3),
                        BitVector::from_bits(g2, 3),
                        BitVector::from_bits(g3, 3),
                    ];
                    let s = Subspace::span(&vs, 3);
                    let closure = xor_closure(&[g1, g2, g3]);
                    let elems: HashSet<u64> = s.elements().iter().map(|v| v.bits()).collect();
                    assert_eq!(elems, closure);
                    assert_eq!(s.elements().len(), 1 << s.dim());
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        // Subspaces with the same element set must compare equal even
        // when built from different generators in different orders.
        let t = 4;
        let mut by_elements: HashMap<Vec<u64>, Subspace> = HashMap::new();
        let mut seed = 0x9e3779b97f4a7c15u64;
        for _ in 0..2000 {
            let mut gens = Vec::new();
            for _ in 0..3 {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                gens.push(BitVector::from_bits(seed >> 60, t));
            }
            let s = Subspace::span(&gens, t);
            let mut elems: Vec<u64> = s.elements().iter().map(|v| v.bits()).collect();
            elems.sort_unstable();
            if let Some(prev) = by_elements.get(&elems) {
                assert_eq!(prev, &s);
            } else {
                by_elements.insert(elems, s);
            }
        }
    }

    #[test]
    fn join_examples() {
        let e1 = BitVector::unit(2, 0);
        let e2 = BitVector::unit(2, 1);
        let a = Subspace::span(&[e1], 2);
        let b = Subspace::span(&[e2], 2);
        let j = a.join(&b);
        assert_eq!(j.dim(), 2);
        assert_eq!(a.join(&Subspace::zero(2)), a);
        assert_eq!(a.join(&a), a);
    }

    #[test]
    fn orthogonality_matches_elementwise_definition() {
        for gens in 0u64..(1 << 8) {
            let vs = [BitVector::from_bits(gens & 15, 4), BitVector::from_bits(gens >> 4, 4)];
            let s = Subspace::span(&vs, 4);
            for v in 0u64..16 {
                let v = BitVector::from_bits(v, 4);
                let all_even = s.elements().iter().all(|e| !e.dot(&v));
                assert_eq!(s.is_orthogonal_to(&v), all_even);
            }
        }
    }

    #[test]
    fn image_matches_elementwise_map() {
        // image under M must equal the span of pointwise images of all
        // subspace elements, for a sweep of small matrices and spaces.
        let mut seed = 0xdeadbeefu64;
        for _ in 0..500 {
            let mut next = || {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(99991);
                seed >> 58
            };
            let m = BitMatrix::from_row_bits(vec![next() & 7, next() & 7, next() & 7], 3);
            let s = Subspace::span(
                &[BitVector::from_bits(next() & 7, 3), BitVector::from_bits(next() & 7, 3)],
                3,
            );
            let img = s.image(&m);
            let pointwise: Vec<BitVector> = s.elements().iter().map(|e| m.left_mul(e)).collect();
            assert_eq!(img, Subspace::span(&pointwise, 3));
            let img_t = s.image_transpose(&m);
            let pointwise_t: Vec<BitVector> =
                s.elements().iter().map(|e| m.left_mul_transpose(e)).collect();
            assert_eq!(img_t, Subspace::span(&pointwise_t, 3));
        }
    }

    #[test]
    fn image_under_identity_and_zero() {
        let s = Subspace::span(&[BitVector::from_bits(0b101, 3)], 3);
        assert_eq!(s.image(&BitMatrix::identity(3)), s);
        assert_eq!(s.image(&BitMatrix::zeros(3, 3)), Subspace::zero(3));
    }

    #[test]
    fn index_assigns_dense_ids() {
        let mut idx = SubspaceIndex::new(2);
        assert_eq!(idx.register(&Subspace::zero(2)), 0);
        let all = enumerate_subspaces(2);
        for s in &all {
            idx.register(s);
        }
        assert_eq!(idx.len(), 5);
        // re-registration returns the existing id
        for s in &all {
            let id = idx.register(s);
            assert_eq!(idx.get(id), s);
        }
        assert_eq!(idx.len(), 5);
    }

    #[test]
    fn galois_numbers_match_exhaustive_closure_count() {
        let expected = [1u64, 2, 5, 16, 67];
        for (t, &want) in expected.iter().enumerate() {
            assert_eq!(galois_number(t), BigUint::from(want));
            assert_eq!(count_closed_subsets(t), want, "closed-subset count at t={t}");
            assert_eq!(enumerate_subspaces(t).len() as u64, want);
        }
    }

    #[test]
    fn enumerated_subspaces_are_canonical_and_distinct() {
        for t in 0..=4 {
            let all = enumerate_subspaces(t);
            let set: HashSet<&Subspace> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            for s in &all {
                let regenerated = Subspace::span(&s.basis().collect::<Vec<_>>(), t);
                assert_eq!(&regenerated, s);
            }
        }
    }

    #[test]
    fn zero_dimension_space_is_degenerate() {
        let s = Subspace::zero(0);
        assert_eq!(s.elements().len(), 1);
        assert!(s.is_orthogonal_to(&BitVector::zero(0)));
        assert_eq!(galois_number(0), BigUint::from(1u32));
    }

    proptest! {
        #[test]
        fn join_is_commutative_associative_idempotent(a in 0u64..256, b in 0u64..256, c in 0u64..256) {
            let t = 8;
            let sa = Subspace::span(&[BitVector::from_bits(a, t)], t);
            let sb = Subspace::span(&[BitVector::from_bits(b, t)], t);
            let sc = Subspace::span(&[BitVector::from_bits(c, t)], t);
            prop_assert_eq!(sa.join(&sb), sb.join(&sa));
            prop_assert_eq!(sa.join(&sb).join(&sc), sa.join(&sb.join(&sc)));
            prop_assert_eq!(sa.join(&sa), sa);
        }

        #[test]
        fn rank_is_transpose_invariant(rows in proptest::collection::vec(0u64..256, 0..8)) {
            let m = BitMatrix::from_row_bits(rows, 8);
            prop_assert_eq!(m.rank(), m.transposed().rank());
        }

        #[test]
        fn span_contains_generators(xs in proptest::collection::vec(0u64..64, 1..6)) {
            let vs: Vec<BitVector> = xs.iter().map(|&x| BitVector::from_bits(x, 6)).collect();
            let s = Subspace::span(&vs, 6);
            for v in &vs {
                prop_assert!(s.contains(v));
            }
            prop_assert!(s.dim() <= vs.len().min(6));
        }
    }
}
