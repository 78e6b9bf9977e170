use alloc::vec::Vec;
use core::fmt;

use super::bitmatrix::BitMatrix;
use crate::gf2n::{Fe, FieldContext};

/// `L(X) = Σ a_i X^(2^i)` over GF(2^n), stored as `a_0 .. a_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearizedPoly {
    coeffs: Vec<Fe>,
}

/// Coarse classification of an additive map by kernel size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Permutation,
    TwoToOne,
    Other,
}

#[derive(Clone, Debug)]
pub struct LinpolyAnalysis {
    pub matrix: BitMatrix,
    pub kernel_size: u64,
    pub class: MapClass,
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<Fe>) -> Self {
        LinearizedPoly { coeffs }
    }

    pub fn zero(n: u32) -> Self {
        LinearizedPoly { coeffs: alloc::vec![Fe::ZERO; n as usize] }
    }

    /// Sum of monomials `X^(2^i)` with coefficient 1.
    pub fn from_exponents(n: u32, degrees: &[u32]) -> Self {
        let mut p = Self::zero(n);
        for &i in degrees {
            p.coeffs[(i % n) as usize] += Fe::ONE;
        }
        p
    }

    /// Coefficients given as powers of ω, `None` meaning zero.
    pub fn from_omega_exponents(ctx: &FieldContext, exps: &[Option<u32>]) -> Self {
        assert_eq!(exps.len(), ctx.n() as usize);
        LinearizedPoly { coeffs: exps.iter().map(|e| e.map_or(Fe::ZERO, |k| ctx.exp(k))).collect() }
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs[i]
    }

    pub fn n(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn eval(&self, ctx: &FieldContext, x: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc += ctx.mul(a, ctx.frob(x, i as u32));
            }
        }
        acc
    }

    /// Adjoint with respect to `(x, y) ↦ Tr(xy)`: the coefficient of
    /// `X^(2^(n-i))` is `a_i^(2^(n-i))`.
    pub fn adjoint(&self, ctx: &FieldContext) -> Self {
        let n = self.n();
        let mut out = Self::zero(n);
        for (i, &a) in self.coeffs.iter().enumerate() {
            let j = (n - i as u32) % n;
            out.coeffs[j as usize] = ctx.frob(a, j);
        }
        out
    }

    /// Matrix of the map in the polynomial basis.
    pub fn matrix(&self, ctx: &FieldContext) -> BitMatrix {
        BitMatrix::from_fn(ctx.n(), |i| self.eval(ctx, Fe(1 << i)).0)
    }

    pub fn analyze(&self, ctx: &FieldContext) -> LinpolyAnalysis {
        let matrix = self.matrix(ctx);
        let kernel_size = matrix.kernel_size();
        let class = match kernel_size {
            1 => MapClass::Permutation,
            2 => MapClass::TwoToOne,
            _ => MapClass::Other,
        };
        LinpolyAnalysis { matrix, kernel_size, class }
    }

    /// The unique linearized polynomial agreeing with an additive map given by
    /// its values on the basis `1, ω, …, ω^(n-1)`.
    ///
    /// Solves the Moore system `Σ_i a_i (ω^j)^(2^i) = values[j]` over GF(2^n).
    pub fn interpolate(ctx: &FieldContext, values: &[Fe]) -> Self {
        let n = ctx.n() as usize;
        assert_eq!(values.len(), n);
        // augmented rows: [ (ω^j)^(2^0) .. (ω^j)^(2^(n-1)) | values[j] ]
        let mut rows: Vec<Vec<Fe>> = (0..n)
            .map(|j| {
                let b = Fe(1 << j);
                let mut r: Vec<Fe> = (0..n as u32).map(|i| ctx.frob(b, i)).collect();
                r.push(values[j]);
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !rows[r][col].is_zero()).expect("Moore matrix is nonsingular");
            rows.swap(col, pivot);
            let inv = ctx.inv(rows[col][col]).expect("nonzero pivot");
            for x in rows[col].iter_mut() {
                *x = ctx.mul(*x, inv);
            }
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col];
                    for c in col..=n {
                        let t = ctx.mul(f, rows[col][c]);
                        rows[r][c] += t;
                    }
                }
            }
        }
        LinearizedPoly { coeffs: rows.iter().map(|r| r[n]).collect() }
    }

    /// Renders `L` in ω-power notation with variable `var`, highest degree first.
    pub fn display<'a>(&'a self, ctx: &'a FieldContext, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ctx, var }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a LinearizedPoly,
    ctx: &'a FieldContext,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.poly.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if a != Fe::ONE {
                write!(f, "{}", self.ctx.omega_power(a))?;
            }
            match i {
                0 => f.write_str(self.var)?,
                _ => write!(f, "{}^{}", self.var, 1u64 << i)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
