//! Dense univariate polynomials in `q` with arbitrary precision integer
//! coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients are stored little-endian (`coeffs[k]` multiplies `q^k`) and the
/// vector never ends in a zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest `k` with `q^k` dividing `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// True when the polynomial is `c * q^k`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.valuation() + 1 == self.coeffs.len()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.valuation() || self.is_zero());
        if self.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = o.coeffs.get(k);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_int(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        UPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self` divided by its content, with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_exact_int(&c)
    }

    /// Pseudo-remainder of `self` by `d` (d nonzero).
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().unwrap().clone();
            let shift = rd - dd;
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (k, c) in d.coeffs.iter().enumerate() {
                coeffs[k + shift] -= c * &rl;
            }
            r = Self::from_coeffs(coeffs);
        }
        r
    }

    /// Exact division; returns `None` when `d` does not divide `self` in `Z[q]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * c;
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive().scale(&o.content());
        }
        if o.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let content = self.content().gcd(&o.content());
        let v = self.valuation().min(o.valuation());
        let a = self.shift_down(self.valuation()).primitive();
        let b = o.shift_down(o.valuation()).primitive();
        let g = if a.is_constant() || b.is_constant() {
            UPoly::one()
        } else if a == b {
            a
        } else {
            let (mut a, mut b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
            while !b.is_zero() {
                let r = a.pseudo_rem(&b);
                a = b;
                b = r.primitive();
            }
            a.primitive()
        };
        g.shift_up(v).scale(&content)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Term comparison used only for sorting displays.
    pub fn cmp_degree(&self, o: &Self) -> Ordering {
        self.coeffs.len().cmp(&o.coeffs.len())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UPoly {
    /// Decimal rendering in descending powers, e.g. `2*q^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
