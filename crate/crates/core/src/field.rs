//! Classical reference arithmetic for GF(2^n) in polynomial basis.
//!
//! Everything here is the ground truth the synthesized circuits are
//! checked against, and the source of the synthesis matrices: the
//! Toeplitz factors L and U, the reduction matrix M and the Frobenius
//! maps. Bit 0 of every bit vector is the constant-term coefficient.

use std::fmt;

use thiserror::Error;

use crate::bitmat::BitMatrix;
use crate::bits;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("elements belong to different field specs (n={0} vs n={1})")]
    SpecMismatch(usize, usize),
    #[error("modulus must have degree exactly n with constant term 1")]
    BadModulus,
    #[error("modulus is reducible over F2")]
    Reducible,
    #[error("no low-weight irreducible polynomial found for n={0}")]
    NoModulus(usize),
    #[error("malformed field description: {0}")]
    BadDescription(String),
}

/// The extension degree and the defining irreducible polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldSpec {
    n: usize,
    /// n+1 coefficient bits of the irreducible p, constant term at bit 0.
    modulus: Vec<u64>,
}

/// An element of GF(2^n): n coefficient bits alpha_0..alpha_{n-1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    n: usize,
    words: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", bits::to_hex(&self.words, self.n))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", bits::to_hex(&self.words, self.n))
    }
}

impl FieldElement {
    pub fn zero(n: usize) -> Self {
        FieldElement { n, words: vec![0; bits::words_for(n)] }
    }

    pub fn one(n: usize) -> Self {
        let mut e = Self::zero(n);
        e.set_bit(0, true);
        e
    }

    /// Element from the integer whose bit i is coefficient i. Only valid
    /// for n <= 64; handy for tests and small sweeps.
    pub fn from_index(n: usize, bits_le: u64) -> Self {
        assert!(n <= 64 && (n == 64 || bits_le < (1u64 << n)));
        FieldElement { n, words: vec![bits_le] }
    }

    pub fn to_index(&self) -> u64 {
        assert!(self.n <= 64);
        self.words[0]
    }

    pub fn from_hex(n: usize, s: &str) -> Option<Self> {
        Some(FieldElement { n, words: bits::from_hex(s, n)? })
    }

    pub fn to_hex(&self) -> String {
        bits::to_hex(&self.words, self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.n);
        bits::get(&self.words, i)
    }

    pub fn set_bit(&mut self, i: usize, v: bool) {
        assert!(i < self.n);
        bits::set(&mut self.words, i, v);
    }

    pub fn is_zero(&self) -> bool {
        bits::is_zero(&self.words)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.n)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), bits::words_for(n));
        FieldElement { n, words }
    }
}

// Raw polynomial helpers on word vectors (coefficients over F2).

fn poly_mul(a: &[u64], alen: usize, b: &[u64], blen: usize) -> Vec<u64> {
    let mut out = vec![0u64; bits::words_for(alen + blen)];
    for i in 0..alen {
        if bits::get(a, i) {
            bits::shl_xor(&mut out, b, i);
        }
    }
    out
}

/// Reduces v (any degree) modulo p of degree n, in place semantics.
fn poly_rem(mut v: Vec<u64>, p: &[u64], n: usize) -> Vec<u64> {
    while let Some(d) = bits::degree(&v) {
        if d < n {
            break;
        }
        bits::shl_xor(&mut v, p, d - n);
    }
    v.truncate(bits::words_for(n).max(1));
    v.resize(bits::words_for(n).max(1), 0);
    v
}

fn poly_gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    loop {
        let (dx, dy) = (bits::degree(&x), bits::degree(&y));
        match (dx, dy) {
            (_, None) => return x,
            (None, _) => return y,
            (Some(dx), Some(dy)) => {
                if dx < dy {
                    std::mem::swap(&mut x, &mut y);
                    continue;
                }
                let shift = dx - dy;
                let ycopy = y.clone();
                if x.len() < y.len() + bits::words_for(shift + 1) {
                    x.resize(y.len() + bits::words_for(shift + 1), 0);
                }
                bits::shl_xor(&mut x, &ycopy, shift);
            }
        }
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Deterministic irreducibility test for p of degree n: checks
/// x^(2^n) = x mod p and gcd(x^(2^(n/q)) - x, p) = 1 for prime q | n.
fn is_irreducible(p: &[u64], n: usize) -> bool {
    if n == 1 {
        return true;
    }
    let checkpoints: Vec<usize> = prime_factors(n).iter().map(|q| n / q).collect();
    let mut r = vec![0u64; bits::words_for(n)];
    bits::set(&mut r, 1, true); // r = x
    for step in 1..=n {
        let sq = poly_mul(&r, n, &r, n);
        r = poly_rem(sq, p, n);
        if checkpoints.contains(&step) {
            // gcd(r - x, p) must be 1
            let mut diff = r.clone();
            let flipped = !bits::get(&diff, 1);
            bits::set(&mut diff, 1, flipped);
            let g = poly_gcd(&diff, p);
            if bits::degree(&g) != Some(0) {
                return false;
            }
        }
    }
    // r = x^(2^n) must equal x
    let mut x = vec![0u64; r.len()];
    bits::set(&mut x, 1, true);
    r == x
}

/// Fixed low-weight moduli for the degrees exercised most; everything
/// else falls back to a deterministic trinomial/pentanomial search.
const MODULUS_TABLE: &[(usize, &[usize])] = &[
    (2, &[0, 1, 2]),
    (3, &[0, 1, 3]),
    (4, &[0, 1, 4]),
    (5, &[0, 2, 5]),
    (8, &[0, 1, 3, 4, 8]),
    (163, &[0, 3, 6, 7, 163]),
    (233, &[0, 74, 233]),
];

impl FieldSpec {
    /// Builds a spec from the modulus coefficient bits (length n+1,
    /// constant term at index 0); verifies degree and irreducibility.
    pub fn new(n: usize, modulus_bits: &[bool]) -> Result<Self, FieldError> {
        if n == 0 || modulus_bits.len() != n + 1 || !modulus_bits[n] || !modulus_bits[0] {
            return Err(FieldError::BadModulus);
        }
        let mut modulus = vec![0u64; bits::words_for(n + 1)];
        for (i, &b) in modulus_bits.iter().enumerate() {
            bits::set(&mut modulus, i, b);
        }
        if !is_irreducible(&modulus, n) {
            return Err(FieldError::Reducible);
        }
        Ok(FieldSpec { n, modulus })
    }

    /// Spec with the default modulus for degree n: the fixed table entry
    /// when present, otherwise the first irreducible trinomial
    /// x^n + x^k + 1 (smallest k), otherwise the lexicographically first
    /// irreducible pentanomial.
    pub fn with_default_modulus(n: usize) -> Result<Self, FieldError> {
        if n == 0 {
            return Err(FieldError::BadModulus);
        }
        if n == 1 {
            return Self::new(1, &[true, true]); // x + 1
        }
        if let Some((_, exps)) = MODULUS_TABLE.iter().find(|(d, _)| *d == n) {
            let mut v = vec![false; n + 1];
            for &e in *exps {
                v[e] = true;
            }
            return Self::new(n, &v);
        }
        for k in 1..n {
            let mut v = vec![false; n + 1];
            v[0] = true;
            v[k] = true;
            v[n] = true;
            if let Ok(spec) = Self::new(n, &v) {
                return Ok(spec);
            }
        }
        for k3 in 3..n {
            for k2 in 2..k3 {
                for k1 in 1..k2 {
                    let mut v = vec![false; n + 1];
                    v[0] = true;
                    v[k1] = true;
                    v[k2] = true;
                    v[k3] = true;
                    v[n] = true;
                    if let Ok(spec) = Self::new(n, &v) {
                        return Ok(spec);
                    }
                }
            }
        }
        Err(FieldError::NoModulus(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus_bit(&self, i: usize) -> bool {
        assert!(i <= self.n);
        bits::get(&self.modulus, i)
    }

    pub fn modulus_hex(&self) -> String {
        bits::to_hex(&self.modulus, self.n + 1)
    }

    /// Text form used in circuit file headers: `gf2n n=<n> poly=0x<hex>`.
    pub fn describe(&self) -> String {
        format!("gf2n n={} poly=0x{}", self.n, self.modulus_hex())
    }

    pub fn parse_description(s: &str) -> Result<Self, FieldError> {
        let err = |m: &str| FieldError::BadDescription(m.to_string());
        let mut parts = s.split_whitespace();
        if parts.next() != Some("gf2n") {
            return Err(err("expected leading 'gf2n'"));
        }
        let mut n = None;
        let mut poly = None;
        for part in parts {
            match part.split_once('=') {
                Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| err("bad n"))?),
                Some(("poly", v)) => poly = Some(v.to_string()),
                _ => return Err(err("unknown key")),
            }
        }
        let n = n.ok_or_else(|| err("missing n"))?;
        let poly = poly.ok_or_else(|| err("missing poly"))?;
        let words = bits::from_hex(&poly, n + 1).ok_or_else(|| err("bad poly hex"))?;
        let v: Vec<bool> = (0..=n).map(|i| bits::get(&words, i)).collect();
        Self::new(n, &v)
    }

    fn check(&self, e: &FieldElement) -> Result<(), FieldError> {
        if e.n != self.n {
            return Err(FieldError::SpecMismatch(self.n, e.n));
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        bits::xor_in(&mut out.words, &b.words);
        Ok(out)
    }

    /// Reference product in F2[x]/(p): the oracle every multiplier
    /// circuit and the L/U/M decomposition are checked against.
    pub fn mul_schoolbook(
        &self,
        a: &FieldElement,
        b: &FieldElement,
    ) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let prod = poly_mul(&a.words, self.n, &b.words, self.n);
        let red = poly_rem(prod, &self.modulus, self.n);
        Ok(FieldElement::from_words(self.n, red))
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul_schoolbook(a, a).expect("element belongs to this spec")
    }

    /// Fermat-exponent inverse a^(2^n - 2), totalized with inv(0) = 0.
    pub fn inv_fermat(&self, a: &FieldElement) -> FieldElement {
        // a^(2^n - 2) = prod_{i=1}^{n-1} a^(2^i)
        let mut s = a.clone();
        let mut r = FieldElement::one(self.n);
        for _ in 1..self.n {
            s = self.square(&s);
            r = self.mul_schoolbook(&r, &s).unwrap();
        }
        if self.n == 1 {
            return a.clone(); // GF(2): every nonzero element is its own inverse
        }
        r
    }

    /// Inverse via the Itoh-Tsuji addition chain on n-1 (binary method),
    /// returning the number of general multiplications used.
    pub fn itoh_tsuji_inverse(&self, a: &FieldElement) -> (FieldElement, usize) {
        if self.n == 1 {
            return (a.clone(), 0);
        }
        let e = self.n - 1;
        let nbits = usize::BITS - e.leading_zeros();
        let mut t = a.clone(); // t = a^(2^len - 1)
        let mut len = 1usize;
        let mut count = 0usize;
        for i in (0..nbits - 1).rev() {
            let mut f = t.clone();
            for _ in 0..len {
                f = self.square(&f);
            }
            t = self.mul_schoolbook(&f, &t).unwrap();
            count += 1;
            len *= 2;
            if (e >> i) & 1 == 1 {
                t = self.mul_schoolbook(&self.square(&t), a).unwrap();
                count += 1;
                len += 1;
            }
        }
        debug_assert_eq!(len, e);
        (self.square(&t), count)
    }

    /// Absolute trace Tr(a) = sum of a^(2^i); always lands in F2.
    pub fn trace(&self, a: &FieldElement) -> u8 {
        let mut s = a.clone();
        let mut acc = a.clone();
        for _ in 1..self.n {
            s = self.square(&s);
            acc = self.add(&acc, &s).unwrap();
        }
        if acc.is_zero() {
            0
        } else {
            debug_assert!(acc.is_one(), "trace must lie in F2");
            1
        }
    }

    /// Lower-triangular Toeplitz factor: L[i][j] = alpha_{i-j} for i >= j.
    pub fn build_toeplitz_l(&self, a: &FieldElement) -> BitMatrix {
        let n = self.n;
        let mut m = BitMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, a.bit(i - j));
            }
        }
        m
    }

    /// Upper shift factor, (n-1) x n: row i has alpha_{n+i-j} at column j
    /// for j >= i+1, so U*beta yields the high coefficients c_n..c_{2n-2}
    /// of the unreduced product.
    pub fn build_toeplitz_u(&self, a: &FieldElement) -> BitMatrix {
        let n = self.n;
        assert!(n >= 2, "U is empty for n < 2");
        let mut m = BitMatrix::zero(n - 1, n);
        for i in 0..n - 1 {
            for j in i + 1..n {
                m.set(i, j, a.bit(n + i - j));
            }
        }
        m
    }

    /// Reduction matrix M, n x (n-1): column j holds x^(n+j) mod p, so
    /// L*beta + M*(U*beta) is the reduced product for every pair.
    pub fn reduction_matrix(&self) -> BitMatrix {
        let n = self.n;
        assert!(n >= 2, "M is empty for n < 2");
        let mut m = BitMatrix::zero(n, n - 1);
        let mut pow = FieldElement::zero(n); // x^n mod p = p - x^n truncated
        for i in 0..n {
            pow.set_bit(i, self.modulus_bit(i));
        }
        for j in 0..n - 1 {
            for i in 0..n {
                m.set(i, j, pow.bit(i));
            }
            pow = self.mul_by_x(&pow);
        }
        m
    }

    fn mul_by_x(&self, a: &FieldElement) -> FieldElement {
        let n = self.n;
        let mut out = FieldElement::zero(n);
        for i in (0..n - 1).rev() {
            out.set_bit(i + 1, a.bit(i));
        }
        if a.bit(n - 1) {
            for i in 0..n {
                if self.modulus_bit(i) {
                    out.set_bit(i, !out.bit(i));
                }
            }
        }
        out
    }

    /// The squaring map as an n x n matrix (e = 1), and more generally
    /// the e-fold Frobenius a -> a^(2^e) as a fixed linear map.
    pub fn frobenius_matrix(&self, e: usize) -> BitMatrix {
        let n = self.n;
        let mut sq = BitMatrix::zero(n, n);
        for j in 0..n {
            let mut basis = FieldElement::zero(n);
            basis.set_bit(j, true);
            let s = self.square(&basis);
            for i in 0..n {
                sq.set(i, j, s.bit(i));
            }
        }
        sq.pow(e)
    }

    /// Convenience: the matrix of multiplication by the fixed element c.
    pub fn const_mul_matrix(&self, c: &FieldElement) -> BitMatrix {
        let n = self.n;
        let mut m = BitMatrix::zero(n, n);
        let mut col = c.clone(); // c * x^j
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, col.bit(i));
            }
            col = self.mul_by_x(&col);
        }
        m
    }

    /// Applies an n x n (or rows x n) matrix to an element's coefficients.
    pub fn apply_matrix(&self, m: &BitMatrix, a: &FieldElement) -> FieldElement {
        assert_eq!(m.cols(), self.n);
        assert_eq!(m.rows(), self.n);
        FieldElement::from_words(self.n, m.mul_vec(a.words()))
    }

    /// All elements, in index order; only sensible for small n.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        assert!(self.n <= 32, "exhaustive element iteration needs small n");
        (0..(1u64 << self.n)).map(|i| FieldElement::from_index(self.n, i))
    }
}
