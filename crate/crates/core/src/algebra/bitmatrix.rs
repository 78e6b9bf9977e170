use core::fmt;

use crate::gf2n::MAX_DEGREE;

const MAX: usize = MAX_DEGREE as usize;

/// An n×n matrix over GF(2) acting on row vectors: `x ↦ xM`.
///
/// Row `i` holds the image of the i-th basis vector, so applying the matrix
/// XORs together the rows selected by the bits of `x`, and `A.then(B)` is the
/// product `AB`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: u8,
    rows: [u32; MAX],
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in self.rows() {
            list.entry(&format_args!("{:0width$b}", r.reverse_bits() >> (32 - self.n), width = self.n as usize));
        }
        list.finish()
    }
}

impl BitMatrix {
    pub fn zero(n: u32) -> Self {
        assert!(n as usize <= MAX);
        BitMatrix { n: n as u8, rows: [0; MAX] }
    }

    pub fn identity(n: u32) -> Self {
        Self::from_fn(n, |i| 1 << i)
    }

    /// Matrix whose i-th row is `image(i)`.
    pub fn from_fn(n: u32, mut image: impl FnMut(u32) -> u32) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i as usize] = image(i);
        }
        m
    }

    pub fn from_rows(rows: &[u32]) -> Self {
        let mut m = Self::zero(rows.len() as u32);
        m.rows[..rows.len()].copy_from_slice(rows);
        m
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n as u32
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.n as usize]
    }

    #[inline]
    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    pub fn set_row(&mut self, i: usize, v: u32) {
        self.rows[i] = v;
    }

    /// Entry in row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros();
            acc ^= self.rows[i as usize];
            bits &= bits - 1;
        }
        acc
    }

    /// Entrywise sum over GF(2).
    #[inline]
    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.rows.iter_mut().zip(other.rows.iter()) {
            *a ^= *b;
        }
        m
    }

    /// Product `self · other`: first `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self::from_fn(self.n(), |i| other.apply(self.rows[i as usize]))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        Self::from_fn(n, |j| {
            let mut r = 0;
            for i in 0..n {
                r |= (self.rows[i as usize] >> j & 1) << i;
            }
            r
        })
    }

    #[inline]
    pub fn rank(&self) -> u32 {
        rank_of_rows(self.rows())
    }

    /// Number of vectors `x` with `xM = 0`.
    pub fn kernel_size(&self) -> u64 {
        1u64 << (self.n() - self.rank())
    }

    /// Basis of the left kernel `{x : xM = 0}`.
    pub fn kernel_basis(&self) -> alloc::vec::Vec<u32> {
        // Track row combinations while eliminating.
        let n = self.n() as usize;
        let mut work: alloc::vec::Vec<(u32, u32)> = (0..n).map(|i| (self.rows[i], 1u32 << i)).collect();
        let mut basis = alloc::vec::Vec::new();
        for i in 0..n {
            let (v, tag) = work[i];
            if v == 0 {
                basis.push(tag);
                continue;
            }
            let low = v & v.wrapping_neg();
            for w in work.iter_mut().skip(i + 1) {
                if w.0 & low != 0 {
                    w.0 ^= v;
                    w.1 ^= tag;
                }
            }
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n() as usize;
        let mut a = *self;
        let mut inv = Self::identity(self.n());
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.rows[r] >> col & 1 == 1)?;
            a.rows.swap(col, pivot);
            inv.rows.swap(col, pivot);
            for r in 0..n {
                if r != col && a.rows[r] >> col & 1 == 1 {
                    a.rows[r] ^= a.rows[col];
                    inv.rows[r] ^= inv.rows[col];
                }
            }
        }
        Some(inv)
    }

    pub fn is_zero(&self) -> bool {
        self.rows().iter().all(|&r| r == 0)
    }
}

/// GF(2) rank of a list of row vectors.
#[inline]
pub fn rank_of_rows(rows: &[u32]) -> u32 {
    let mut work = [0u32; MAX];
    let n = rows.len();
    work[..n].copy_from_slice(rows);
    let mut rank = 0;
    for i in 0..n {
        let v = work[i];
        if v == 0 {
            continue;
        }
        rank += 1;
        let low = v & v.wrapping_neg();
        for w in work[i + 1..n].iter_mut() {
            if *w & low != 0 {
                *w ^= v;
            }
        }
    }
    rank
}
