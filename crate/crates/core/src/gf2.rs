//! Bit-packed vectors and matrices over GF(2).
//!
//! Public coordinates are 1-based.

use std::fmt;

use crate::error::{BnError, Result};

const W: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(W)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = !0;
        }
        v.mask_tail();
        v
    }

    /// Standard unit vector e_i.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            if b {
                v.set(k + 1, true);
            }
        }
        v
    }

    /// Parses a string of '0'/'1' characters, x_1 first.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(BnError::InvalidParameter(format!(
                        "bitstring contains '{c}'"
                    )))
                }
            }
        }
        Ok(Self::from_bits(&bits))
    }

    /// Builds a vector of length `len` from the low bits of `x` (bit i-1 = coordinate i).
    pub fn from_u64(len: usize, x: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = x;
            v.mask_tail();
        }
        v
    }

    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn mask_tail(&mut self) {
        let r = self.len % W;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    fn check(&self, i: usize) {
        assert!(i >= 1 && i <= self.len, "coordinate {i} out of range 1..={}", self.len);
    }

    pub fn get(&self, i: usize) -> bool {
        self.check(i);
        let k = i - 1;
        (self.words[k / W] >> (k % W)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        self.check(i);
        let k = i - 1;
        if b {
            self.words[k / W] |= 1 << (k % W);
        } else {
            self.words[k / W] &= !(1 << (k % W));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.check(i);
        let k = i - 1;
        self.words[k / W] ^= 1 << (k % W);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first nonzero coordinate.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * W + w.trailing_zeros() as usize + 1);
            }
        }
        None
    }

    /// Iterates the indices of the nonzero coordinates in ascending order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * W + t + 1)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (1..=self.len).map(|i| self.get(i)).collect()
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut r = self.clone();
        r.xor_assign(other);
        r
    }

    pub fn and(&self, other: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.len, other.len, "length mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Gf2Vector { len: self.len, words }
    }

    pub fn complement(&self) -> Gf2Vector {
        let mut r = self.clone();
        for w in r.words.iter_mut() {
            *w = !*w;
        }
        r.mask_tail();
        r
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Coordinates lo..=hi as a new vector.
    pub fn slice(&self, lo: usize, hi: usize) -> Gf2Vector {
        if hi < lo {
            return Gf2Vector::zeros(0);
        }
        Gf2Vector::from_bits(&(lo..=hi).map(|i| self.get(i)).collect::<Vec<_>>())
    }

    pub fn concat(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut bits = self.to_bits();
        bits.extend(other.to_bits());
        Gf2Vector::from_bits(&bits)
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix { rows, cols, data: vec![Gf2Vector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..=n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<Gf2Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != cols {
                return Err(BnError::DimensionMismatch { expected: cols, found: r.len() });
            }
        }
        Ok(Gf2Matrix { rows: rows.len(), cols, data: rows })
    }

    /// Parses rows of '0'/'1' strings.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| Gf2Vector::parse(r)).collect::<Result<Vec<_>>>()?)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i - 1].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.data[i - 1].set(j, b)
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.data[i - 1]
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_bits(&(1..=self.rows).map(|i| self.get(i, j)).collect::<Vec<_>>())
    }

    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(BnError::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.xor(b)).collect();
        Ok(Gf2Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.rows {
            return Err(BnError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for j in row.ones_iter() {
                acc.xor_assign(&other.data[j - 1]);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u64) -> Result<Gf2Matrix> {
        if !self.is_square() {
            return Err(BnError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut result = Gf2Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(result)
    }

    pub fn rank(&self) -> usize {
        let mut b = EchelonBasis::new(self.cols);
        for r in &self.data {
            b.insert(r);
        }
        b.rank()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

pub fn mat_vec_mul(a: &Gf2Matrix, v: &Gf2Vector) -> Result<Gf2Vector> {
    if a.cols != v.len() {
        return Err(BnError::DimensionMismatch { expected: a.cols, found: v.len() });
    }
    let mut out = Gf2Vector::zeros(a.rows);
    for (i, row) in a.data.iter().enumerate() {
        if row.dot(v) {
            out.set(i + 1, true);
        }
    }
    Ok(out)
}

/// A^k v by k repeated products.
pub fn mat_pow_vec(a: &Gf2Matrix, k: usize, v: &Gf2Vector) -> Result<Gf2Vector> {
    if !a.is_square() {
        return Err(BnError::DimensionMismatch { expected: a.rows, found: a.cols });
    }
    if a.cols != v.len() {
        return Err(BnError::DimensionMismatch { expected: a.cols, found: v.len() });
    }
    let mut x = v.clone();
    for _ in 0..k {
        x = mat_vec_mul(a, &x)?;
    }
    Ok(x)
}

/// Reduced row-echelon spanning set with incremental insertion.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    pivots: Vec<(usize, Gf2Vector)>,
    originals: Vec<Gf2Vector>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, pivots: Vec::new(), originals: Vec::new() }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.dim
    }

    /// (pivot column, reduced vector) pairs, pivot columns increasing.
    pub fn pivots(&self) -> &[(usize, Gf2Vector)] {
        &self.pivots
    }

    /// Raw vectors accepted by `insert`, in insertion order.
    pub fn originals(&self) -> &[Gf2Vector] {
        &self.originals
    }

    fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut r = v.clone();
        for (p, row) in &self.pivots {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        self.reduce(v).is_zero()
    }

    pub fn try_contains(&self, v: &Gf2Vector) -> Result<bool> {
        if v.len() != self.dim {
            return Err(BnError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self.contains(v))
    }

    /// Inserts `v` if it is independent of the current span; reports whether it was.
    pub fn insert(&mut self, v: &Gf2Vector) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for (_, row) in self.pivots.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let pos = self.pivots.partition_point(|(q, _)| *q < p);
        self.pivots.insert(pos, (p, r));
        self.originals.push(v.clone());
        true
    }

    pub fn try_insert(&mut self, v: &Gf2Vector) -> Result<bool> {
        if v.len() != self.dim {
            return Err(BnError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self.insert(v))
    }
}

pub fn echelon_insert(basis: &mut EchelonBasis, v: &Gf2Vector) -> Result<bool> {
    basis.try_insert(v)
}

pub fn span_contains(basis: &EchelonBasis, v: &Gf2Vector) -> Result<bool> {
    basis.try_contains(v)
}

/// Finds c with sum c_j * columns_j = b.
pub fn solve_coeffs(columns: &[Gf2Vector], b: &Gf2Vector) -> Result<Vec<bool>> {
    let n = b.len();
    let m = columns.len();
    for c in columns {
        if c.len() != n {
            return Err(BnError::DimensionMismatch { expected: n, found: c.len() });
        }
    }
    // Each row carries (vector, combination of input columns producing it).
    let mut rows: Vec<(usize, Gf2Vector, Gf2Vector)> = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let mut v = c.clone();
        let mut comb = Gf2Vector::unit(m, j + 1);
        for (p, rv, rc) in &rows {
            if v.get(*p) {
                v.xor_assign(rv);
                comb.xor_assign(rc);
            }
        }
        if let Some(p) = v.first_one() {
            for (_, rv, rc) in rows.iter_mut() {
                if rv.get(p) {
                    rv.xor_assign(&v);
                    rc.xor_assign(&comb);
                }
            }
            rows.push((p, v, comb));
        }
    }
    let mut target = b.clone();
    let mut coeffs = Gf2Vector::zeros(m);
    for (p, rv, rc) in &rows {
        if target.get(*p) {
            target.xor_assign(rv);
            coeffs.xor_assign(rc);
        }
    }
    if !target.is_zero() {
        return Err(BnError::NoSolution);
    }
    Ok(coeffs.to_bits())
}

/// True iff the n given length-n vectors are linearly independent.
pub fn is_full_rank(columns: &[Gf2Vector]) -> Result<bool> {
    let n = columns.first().map_or(0, |c| c.len());
    for c in columns {
        if c.len() != n {
            return Err(BnError::DimensionMismatch { expected: n, found: c.len() });
        }
    }
    if columns.len() != n {
        return Err(BnError::DimensionMismatch { expected: n, found: columns.len() });
    }
    let mut b = EchelonBasis::new(n);
    Ok(columns.iter().all(|c| b.insert(c)))
}
