use std::fmt;

use super::PrimeField;
use crate::error::{param, Result};

/// A polynomial over `F_q`, coefficients in ascending degree, no trailing
/// zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl Polynomial {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Polynomial::new(field, vec![1])
    }

    /// `X + b`.
    pub fn linear(field: PrimeField, b: u64) -> Self {
        Polynomial::new(field, vec![b, 1])
    }

    /// Builds a monic polynomial of degree `d` from its coefficients below the
    /// leading one, given in descending order: `X^d + c_1 X^{d−1} + … + c_d`.
    pub fn monic_from_descending(field: PrimeField, lower: &[u64]) -> Self {
        let mut coeffs: Vec<u64> = lower.iter().rev().copied().collect();
        coeffs.push(1);
        Polynomial::new(field, coeffs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Polynomial::new(f, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                f.sub(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Polynomial::new(f, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, out)
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let f = self.field;
        let dd = divisor.degree()?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Polynomial::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Some((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.leading()) {
            Some(inv) => Polynomial::new(
                self.field,
                self.coeffs
                    .iter()
                    .map(|&c| self.field.mul(c, inv))
                    .collect(),
            ),
            None => self.clone(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// The characteristic function `∏_{b ∈ B} (X + b)`.
pub fn char_polynomial(field: PrimeField, set: &[u64]) -> Polynomial {
    set.iter().fold(Polynomial::one(field), |acc, &b| {
        acc.mul(&Polynomial::linear(field, field.reduce(b)))
    })
}

/// Monic greatest common divisor by the Euclidean algorithm.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return param("gcd of two zero polynomials is undefined");
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// A root of a polynomial and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Root {
    pub value: u64,
    pub multiplicity: usize,
}

/// All roots in `F_q` by exhaustive evaluation, with multiplicities.
///
/// Returns an empty list for nonzero constants. The zero polynomial has
/// every element as a root; callers never ask for it, so it yields nothing.
pub fn find_roots(poly: &Polynomial) -> Vec<Root> {
    let field = poly.field();
    if poly.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    for x in 0..field.modulus() {
        if poly.eval(x) != 0 {
            continue;
        }
        let factor = Polynomial::linear(field, field.neg(x));
        let mut rest = poly.clone();
        let mut multiplicity = 0;
        loop {
            let (q, r) = rest.div_rem(&factor).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            multiplicity += 1;
            rest = q;
        }
        roots.push(Root {
            value: x,
            multiplicity,
        });
    }
    roots
}
