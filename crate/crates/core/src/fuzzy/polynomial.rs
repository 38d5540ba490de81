//! Polynomials in the embedding coordinates of the unit sphere.
//!
//! A polynomial is a finite sum of monomials `c * x1^a x2^b x3^c` with
//! complex coefficients. The Poisson bracket induced by the round
//! symplectic form `omega = d(sigma) ^ d(phi)` acts on these as the
//! so(3) Lie-Poisson bracket on R^3,
//!
//! `{f, g} = sum_{ijk} eps_{ijk} x_k (df/dx_i)(dg/dx_j)`,
//!
//! oriented so that `{x1, x2} = x3`.

use crate::scalar::Real;
use num_complex::Complex;
use std::collections::BTreeMap;

/// Exponents of `x1^a x2^b x3^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e1: u32,
    pub e2: u32,
    pub e3: u32,
}

impl Monomial {
    pub fn new(e1: u32, e2: u32, e3: u32) -> Self {
        Self { e1, e2, e3 }
    }

    pub fn degree(&self) -> u32 {
        self.e1 + self.e2 + self.e3
    }

    fn exp(&self, axis: usize) -> u32 {
        match axis {
            0 => self.e1,
            1 => self.e2,
            _ => self.e3,
        }
    }

    fn with_exp(mut self, axis: usize, v: u32) -> Self {
        match axis {
            0 => self.e1 = v,
            1 => self.e2 = v,
            _ => self.e3 = v,
        }
        self
    }

    fn raised(mut self, axis: usize) -> Self {
        match axis {
            0 => self.e1 += 1,
            1 => self.e2 += 1,
            _ => self.e3 += 1,
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    terms: BTreeMap<Monomial, Complex<T>>,
}

impl<T: Real> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> Polynomial<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Complex<T>) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(0, 0, 0), c);
        p
    }

    pub fn constant_real(c: T) -> Self {
        Self::constant(Complex::new(c, T::zero()))
    }

    /// The coordinate function `x1`, `x2` or `x3` (axis 0, 1, 2).
    pub fn coordinate(axis: usize) -> Self {
        assert!(axis < 3, "axis must be 0, 1 or 2");
        let mut p = Self::zero();
        let m = Monomial::new(0, 0, 0).raised(axis);
        p.add_term(m, Complex::new(T::one(), T::zero()));
        p
    }

    pub fn monomial(m: Monomial, c: Complex<T>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Complex<T>) {
        let entry = self
            .terms
            .entry(m)
            .or_insert_with(|| Complex::new(T::zero(), T::zero()));
        *entry = *entry + c;
        if entry.re == T::zero() && entry.im == T::zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True when every coefficient has negligible imaginary part.
    pub fn is_real(&self, tol: T) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms.iter() {
            out.add_term(*m, *c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                let m = Monomial::new(m1.e1 + m2.e1, m1.e2 + m2.e2, m1.e3 + m2.e3);
                out.add_term(m, *c1 * *c2);
            }
        }
        out
    }

    /// Partial derivative with respect to `x_{axis}`.
    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms.iter() {
            let e = m.exp(axis);
            if e == 0 {
                continue;
            }
            let lowered = m.with_exp(axis, e - 1);
            out.add_term(lowered, *c * Complex::new(T::from_usize_c(e as usize), T::zero()));
        }
        out
    }

    /// Lie-Poisson bracket on R^3, oriented so `{x1, x2} = x3`.
    pub fn poisson_bracket(&self, other: &Self) -> Self {
        const EPSILON: [(usize, usize, usize, f64); 6] = [
            (0, 1, 2, 1.0),
            (1, 2, 0, 1.0),
            (2, 0, 1, 1.0),
            (0, 2, 1, -1.0),
            (2, 1, 0, -1.0),
            (1, 0, 2, -1.0),
        ];
        let mut out = Self::zero();
        for &(i, j, k, sign) in EPSILON.iter() {
            let df = self.derivative(i);
            if df.is_zero() {
                continue;
            }
            let dg = other.derivative(j);
            if dg.is_zero() {
                continue;
            }
            let s = Complex::new(T::from_f64_c(sign), T::zero());
            for (m1, c1) in df.terms.iter() {
                for (m2, c2) in dg.terms.iter() {
                    let m = Monomial::new(m1.e1 + m2.e1, m1.e2 + m2.e2, m1.e3 + m2.e3).raised(k);
                    out.add_term(m, *c1 * *c2 * s);
                }
            }
        }
        out
    }

    /// Azimuthal derivative: the vector field `x1 d/dx2 - x2 d/dx1`.
    pub fn phi_derivative(&self) -> Self {
        let x1 = Self::coordinate(0);
        let x2 = Self::coordinate(1);
        x1.mul(&self.derivative(1)).sub(&x2.mul(&self.derivative(0)))
    }

    /// Substitutes `x1 -> cos(a) x1 - sin(a) x2`, `x2 -> sin(a) x1 + cos(a) x2`,
    /// i.e. composes with the rotation of the sphere about the third axis.
    pub fn rotate_z(&self, alpha: T) -> Self {
        let (s, c) = alpha.sin_cos();
        let cos = Complex::new(c, T::zero());
        let sin = Complex::new(s, T::zero());
        let new_x1 = {
            let mut p = Self::zero();
            p.add_term(Monomial::new(1, 0, 0), cos);
            p.add_term(Monomial::new(0, 1, 0), -sin);
            p
        };
        let new_x2 = {
            let mut p = Self::zero();
            p.add_term(Monomial::new(1, 0, 0), sin);
            p.add_term(Monomial::new(0, 1, 0), cos);
            p
        };
        let mut out = Self::zero();
        for (m, coeff) in self.terms.iter() {
            let mut term = Self::constant(*coeff);
            for _ in 0..m.e1 {
                term = term.mul(&new_x1);
            }
            for _ in 0..m.e2 {
                term = term.mul(&new_x2);
            }
            if m.e3 > 0 {
                term = term.mul(&Self::monomial(
                    Monomial::new(0, 0, m.e3),
                    Complex::new(T::one(), T::zero()),
                ));
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, x: [T; 3]) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (m, c) in self.terms.iter() {
            let v = x[0].powi(m.e1 as i32) * x[1].powi(m.e2 as i32) * x[2].powi(m.e3 as i32);
            acc = acc + *c * Complex::new(v, T::zero());
        }
        acc
    }

    /// Spherical average `(1/2pi) \int omega f` by the exact monomial
    /// moment formula: odd exponents vanish, and for `(2a, 2b, 2c)` the
    /// moment is `4 (2a)! (2b)! (2c)! (s+1)! / (a! b! c! (2s+2)!)`, `s = a+b+c`.
    pub fn sphere_moment(&self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (m, c) in self.terms.iter() {
            acc = acc + *c * Complex::new(monomial_moment::<T>(m), T::zero());
        }
        acc
    }
}

fn monomial_moment<T: Real>(m: &Monomial) -> T {
    if m.e1 % 2 == 1 || m.e2 % 2 == 1 || m.e3 % 2 == 1 {
        return T::zero();
    }
    let (a, b, c) = ((m.e1 / 2) as u64, (m.e2 / 2) as u64, (m.e3 / 2) as u64);
    let s = a + b + c;
    let num = 4.0 * fact(2 * a) * fact(2 * b) * fact(2 * c) * fact(s + 1);
    let den = fact(a) * fact(b) * fact(c) * fact(2 * s + 2);
    T::from_f64_c(num / den)
}

fn fact(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}
