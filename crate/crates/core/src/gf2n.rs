//! Arithmetic in GF(2^n) for odd n, polynomial basis over a primitive modulus.
//!
//! Elements are bit patterns: bit `i` is the coefficient of `ω^i`, where `ω`
//! is a root of the modulus. Multiplication goes through discrete-log tables,
//! which every context builds (n ≤ 21 keeps them below 16 MiB).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign};

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 3;
pub const MAX_DEGREE: u32 = 21;

/// Lowest primitive polynomial (as an integer) of each supported odd degree.
const DEFAULT_MODULI: [(u32, u32); 10] = [
    (3, 0xb),
    (5, 0x25),
    (7, 0x83),
    (9, 0x211),
    (11, 0x805),
    (13, 0x201b),
    (15, 0x8003),
    (17, 0x20009),
    (19, 0x80027),
    (21, 0x20_0005),
];

/// Default modulus for degree `n`, if `n` is a supported odd degree.
pub fn default_modulus(n: u32) -> Option<u32> {
    DEFAULT_MODULI.iter().find(|(d, _)| *d == n).map(|&(_, m)| m)
}

/// An element of GF(2^n) in the polynomial basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

impl AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Carry-less product of `a` and `b` reduced modulo `modulus` of degree `n`.
fn clmul_reduce(mut a: u32, mut b: u32, modulus: u32, n: u32) -> u32 {
    let top = 1u32 << n;
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

/// The field GF(2^n) with its modulus, log/exp tables and trace functional.
#[derive(Clone)]
pub struct FieldContext {
    n: u32,
    modulus: u32,
    /// `exp[i] = ω^i` for `0 ≤ i < 2(q-1)`, doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `Tr(x) = parity(x & trace_mask)`.
    trace_mask: u32,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Builds GF(2^n). Without a modulus the built-in default for `n` is used.
    pub fn new(n: u32, modulus: Option<u32>) -> Result<Self> {
        if n % 2 == 0 {
            return Err(Error::EvenDegree(n));
        }
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        let modulus = match modulus {
            Some(m) => m,
            None => default_modulus(n).ok_or(Error::UnsupportedDegree(n))?,
        };
        if modulus >> n != 1 {
            return Err(Error::NonPrimitiveModulus(modulus));
        }

        let q = 1usize << n;
        let order = q - 1;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            if i > 0 && x == 1 {
                // ω has order i < q-1
                return Err(Error::NonPrimitiveModulus(modulus));
            }
            *slot = x;
            log[x as usize] = i as u32;
            x = clmul_reduce(x, 2, modulus, n);
        }
        if x != 1 {
            return Err(Error::NonPrimitiveModulus(modulus));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }

        let mut ctx = FieldContext { n, modulus, exp, log, trace_mask: 0 };
        let mut mask = 0;
        for i in 0..n {
            if ctx.trace_slow(Fe(1 << i)) {
                mask |= 1 << i;
            }
        }
        ctx.trace_mask = mask;
        Ok(ctx)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field order `q = 2^n`.
    #[inline]
    pub fn q(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Mask selecting the n coefficient bits.
    #[inline]
    pub fn mask(&self) -> u32 {
        (1 << self.n) - 1
    }

    /// All field elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q() as u32).map(Fe)
    }

    /// The primitive element ω.
    pub fn omega(&self) -> Fe {
        Fe(2)
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        if x.0 == 0 || y.0 == 0 {
            return Fe::ZERO;
        }
        let i = self.log[x.0 as usize] + self.log[y.0 as usize];
        Fe(self.exp[i as usize])
    }

    /// Reference multiplication without tables.
    pub fn mul_slow(&self, x: Fe, y: Fe) -> Fe {
        Fe(clmul_reduce(x.0, y.0, self.modulus, self.n))
    }

    #[inline]
    pub fn square(&self, x: Fe) -> Fe {
        self.mul(x, x)
    }

    pub fn pow(&self, x: Fe, mut e: u64) -> Fe {
        let mut base = x;
        let mut acc = Fe::ONE;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^(q-2)`, the inverse of a nonzero `x`.
    pub fn inv(&self, x: Fe) -> Result<Fe> {
        if x.is_zero() {
            return Err(Error::InvertZero);
        }
        Ok(self.pow(x, self.q() as u64 - 2))
    }

    pub fn div(&self, x: Fe, y: Fe) -> Result<Fe> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^(2^k)`; `k` is taken modulo n.
    #[inline]
    pub fn frob(&self, x: Fe, k: u32) -> Fe {
        if x.0 == 0 {
            return x;
        }
        let k = k % self.n;
        let order = (self.q() - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        Fe(self.exp[((l << k) % order) as usize])
    }

    /// `x^(2^(n-k))`, the inverse of `frob(·, k)`.
    #[inline]
    pub fn frob_inv(&self, x: Fe, k: u32) -> Fe {
        self.frob(x, (self.n - k % self.n) % self.n)
    }

    #[inline]
    pub fn sqrt(&self, x: Fe) -> Fe {
        self.frob(x, self.n - 1)
    }

    /// Absolute trace to GF(2).
    #[inline]
    pub fn trace(&self, x: Fe) -> bool {
        (x.0 & self.trace_mask).count_ones() & 1 == 1
    }

    /// Trace as a field element (0 or 1).
    #[inline]
    pub fn trace_fe(&self, x: Fe) -> Fe {
        Fe(self.trace(x) as u32)
    }

    /// `Σ x^(2^i)` evaluated directly.
    pub fn trace_slow(&self, x: Fe) -> bool {
        let mut acc = Fe::ZERO;
        let mut y = x;
        for _ in 0..self.n {
            acc += y;
            y = self.mul_slow(y, y);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// Discrete log base ω of a nonzero element.
    pub fn log(&self, x: Fe) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    /// `ω^k`.
    pub fn exp(&self, k: u32) -> Fe {
        Fe(self.exp[(k as usize) % (self.q() - 1)])
    }

    /// Number of solutions of `x³ + x = t`.
    ///
    /// For `t ≠ 0` with `Tr(t⁻¹) = 0` there is exactly one root. Otherwise the
    /// cubic has zero or three roots, decided by whether `X^q ≡ X` modulo it.
    pub fn dickson3_count(&self, t: Fe) -> u32 {
        if t.is_zero() {
            return 2;
        }
        if !self.trace(self.inv(t).expect("t is nonzero")) {
            return 1;
        }
        // residues mod X³ + X + t: X³ = X + t, X⁴ = X² + tX
        let mut c = [Fe::ZERO, Fe::ONE, Fe::ZERO];
        for _ in 0..self.n {
            let [c0, c1, c2] = c.map(|v| self.square(v));
            c = [c0, self.mul(c2, t), c1 + c2];
        }
        if c == [Fe::ZERO, Fe::ONE, Fe::ZERO] {
            3
        } else {
            0
        }
    }

    /// The count predicted by the textbook trace criterion: 2 for `t ∈ {0, 1}`,
    /// otherwise 3 or 1 according to `Tr(t⁻¹)`.
    ///
    /// Kept for comparison only. It disagrees with [`FieldContext::dickson3_count`]
    /// at `t = 1` and on every `t` with `Tr(t⁻¹) = 1` whose cubic has no root.
    pub fn dickson3_trace_criterion(&self, t: Fe) -> u32 {
        if t.0 <= 1 {
            return 2;
        }
        if self.trace(self.inv(t).expect("t is nonzero")) {
            3
        } else {
            1
        }
    }

    /// Formats `x` as a power of ω (`0`, `1`, `ω`, `ω^k`).
    pub fn omega_power(&self, x: Fe) -> OmegaPower {
        OmegaPower(self.log(x))
    }
}

/// Display helper rendering an element as a power of ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaPower(pub Option<u32>);

impl fmt::Display for OmegaPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("0"),
            Some(0) => f.write_str("1"),
            Some(1) => f.write_str("ω"),
            Some(k) => write!(f, "ω^{k}"),
        }
    }
}
