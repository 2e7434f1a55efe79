//! Truncated bivariate power series ("2-jets") and their univariate cousins.
//!
//! A [`Jet2`] of order `N` stores the Taylor coefficients `c[a][b]` of an
//! analytic function of two local variables `(u1, u2)` for every `a + b <= N`,
//! in graded-lexicographic order: degrees ascend, and inside a degree the
//! `u2`-exponent ascends, so the layout is
//! `1, u1, u2, u1^2, u1*u2, u2^2, ...`.
//!
//! The variables are always deviations from a base point; base points
//! themselves live in the types that own the jets. Every operation is pure
//! and returns fresh values, so jets can be shared freely across threads.

use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Number of coefficients of a bivariate jet of order `n`.
pub fn jet2_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Offset of the first coefficient of total degree `d`.
fn degree_offset(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Dense truncated bivariate power series.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    order: usize,
    coeffs: Vec<f64>,
}

impl Jet2 {
    /// The zero jet of the given truncation order.
    pub fn zero(order: usize) -> Self {
        Jet2 {
            order,
            coeffs: vec![0.0; jet2_len(order)],
        }
    }

    /// A constant jet.
    pub fn constant(value: f64, order: usize) -> Self {
        let mut j = Jet2::zero(order);
        j.coeffs[0] = value;
        j
    }

    /// The coordinate jet `u1` (direction 1) or `u2` (direction 2).
    pub fn variable(direction: usize, order: usize) -> Self {
        assert!(direction == 1 || direction == 2, "direction must be 1 or 2");
        assert!(order >= 1, "variable jet needs order >= 1");
        let mut j = Jet2::zero(order);
        if direction == 1 {
            j.set(1, 0, 1.0);
        } else {
            j.set(0, 1, 1.0);
        }
        j
    }

    /// Builds a jet from a flat graded-lex coefficient list.
    pub fn from_coeffs(order: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != jet2_len(order) {
            return Err(Error::ConfigError(format!(
                "jet of order {} needs {} coefficients, got {}",
                order,
                jet2_len(order),
                coeffs.len()
            )));
        }
        Ok(Jet2 { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Flat coefficient slice in graded-lex order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn index(a: usize, b: usize) -> usize {
        degree_offset(a + b) + b
    }

    /// Coefficient of `u1^a * u2^b` (zero beyond the truncation order).
    pub fn get(&self, a: usize, b: usize) -> f64 {
        if a + b > self.order {
            0.0
        } else {
            self.coeffs[Self::index(a, b)]
        }
    }

    pub fn set(&mut self, a: usize, b: usize, value: f64) {
        assert!(a + b <= self.order, "exponent beyond truncation order");
        self.coeffs[Self::index(a, b)] = value;
    }

    /// Iterates `(a, b, coefficient)` over all stored monomials.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.order).flat_map(move |d| {
            (0..=d).map(move |b| (d - b, b, self.coeffs[degree_offset(d) + b]))
        })
    }

    /// Same coefficients re-truncated to `order` (never extends information).
    pub fn truncated(&self, order: usize) -> Jet2 {
        let mut out = Jet2::zero(order);
        for (a, b, c) in self.iter() {
            if a + b <= order {
                out.set(a, b, c);
            }
        }
        out
    }

    /// The homogeneous part of total degree `d`, carried at the same order.
    pub fn homogeneous_part(&self, d: usize) -> Jet2 {
        let mut out = Jet2::zero(self.order);
        if d <= self.order {
            for b in 0..=d {
                out.set(d - b, b, self.get(d - b, b));
            }
        }
        out
    }

    /// Largest |coefficient| in total degree `d`.
    pub fn max_abs_in_degree(&self, d: usize) -> f64 {
        if d > self.order {
            return 0.0;
        }
        (0..=d)
            .map(|b| self.get(d - b, b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest |coefficient| over all degrees.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest |coefficient| over degrees `0..=d`.
    pub fn max_abs_through_degree(&self, d: usize) -> f64 {
        (0..=d.min(self.order))
            .map(|k| self.max_abs_in_degree(k))
            .fold(0.0, f64::max)
    }

    /// Evaluates the truncated polynomial at a concrete offset.
    pub fn eval(&self, u1: f64, u2: f64) -> f64 {
        let mut total = 0.0;
        for d in (0..=self.order).rev() {
            for b in 0..=d {
                let a = d - b;
                let c = self.coeffs[degree_offset(d) + b];
                if c != 0.0 {
                    total += c * u1.powi(a as i32) * u2.powi(b as i32);
                }
            }
        }
        total
    }

    /// Coefficient-wise comparison with a relative tolerance on unit scale.
    pub fn approx_eq(&self, other: &Jet2, tol: f64) -> bool {
        let n = self.order.min(other.order);
        for d in 0..=n {
            for b in 0..=d {
                let x = self.get(d - b, b);
                let y = other.get(d - b, b);
                if (x - y).abs() > tol * 1.0_f64.max(x.abs()).max(y.abs()) {
                    return false;
                }
            }
        }
        true
    }

    fn zip(&self, other: &Jet2, f: impl Fn(f64, f64) -> f64) -> Jet2 {
        let order = self.order.min(other.order);
        let mut out = Jet2::zero(order);
        for d in 0..=order {
            for b in 0..=d {
                out.set(d - b, b, f(self.get(d - b, b), other.get(d - b, b)));
            }
        }
        out
    }

    pub fn scale(&self, k: f64) -> Jet2 {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Truncated Cauchy product, at the minimum of the two orders.
    pub fn mul(&self, other: &Jet2) -> Jet2 {
        let order = self.order.min(other.order);
        let mut out = Jet2::zero(order);
        for (a1, b1, c1) in self.iter() {
            if c1 == 0.0 || a1 + b1 > order {
                continue;
            }
            for (a2, b2, c2) in other.iter() {
                let (a, b) = (a1 + a2, b1 + b2);
                if a + b > order {
                    continue;
                }
                if c2 != 0.0 {
                    out.coeffs[Self::index(a, b)] += c1 * c2;
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Result<Jet2> {
        let c0 = self.coeffs[0];
        if c0 == 0.0 || !c0.is_finite() {
            return Err(Error::DivisionByZeroConstantTerm);
        }
        // 1/b = (1/c0) * 1/(1 - x) with x = (c0 - b)/c0, expanded by Horner.
        let x = Jet2::constant(1.0, self.order) - self.scale(1.0 / c0);
        let mut acc = Jet2::constant(1.0, self.order);
        for _ in 0..self.order {
            acc = acc.mul(&x) + Jet2::constant(1.0, self.order);
        }
        Ok(acc.scale(1.0 / c0))
    }

    /// Truncated quotient `self / other`.
    pub fn div(&self, other: &Jet2) -> Result<Jet2> {
        Ok(self.mul(&other.recip()?))
    }

    /// Formal partial derivative; the order drops by one.
    pub fn partial(&self, direction: usize) -> Result<Jet2> {
        assert!(direction == 1 || direction == 2, "direction must be 1 or 2");
        if self.order == 0 {
            return Err(Error::OrderTooSmall { needed: 1, have: 0 });
        }
        let mut out = Jet2::zero(self.order - 1);
        for (a, b, c) in self.iter() {
            if direction == 1 && a >= 1 {
                out.coeffs[Self::index(a - 1, b)] += a as f64 * c;
            } else if direction == 2 && b >= 1 {
                out.coeffs[Self::index(a, b - 1)] += b as f64 * c;
            }
        }
        Ok(out)
    }

    /// Composes `self(v1, v2)` with the pair `inner = (v1(u), v2(u))`.
    ///
    /// The inner jets must have zero constant term: the composition is a
    /// statement about deviations from matched base points.
    pub fn compose(&self, inner: (&Jet2, &Jet2)) -> Result<Jet2> {
        for j in [inner.0, inner.1] {
            let c0 = j.coeffs[0];
            let scale = 1.0_f64.max(j.max_abs());
            if c0.abs() > 1e-14 * scale {
                return Err(Error::BasePointMismatch { offset: c0 });
            }
        }
        let order = self.order.min(inner.0.order).min(inner.1.order);
        // Two-level Horner: sum_a i1^a * (sum_b c[a][b] i2^b).
        let i1 = inner.0.truncated(order);
        let i2 = inner.1.truncated(order);
        let mut acc = Jet2::zero(order);
        for a in (0..=order).rev() {
            let mut row = Jet2::zero(order);
            for b in (0..=(self.order.saturating_sub(a)).min(order)).rev() {
                row = row.mul(&i2) + Jet2::constant(self.get(a, b), order);
            }
            acc = acc.mul(&i1) + row;
        }
        Ok(acc)
    }

    /// Applies an outer analytic function given by its scaled derivatives
    /// `derivs[k] = f^(k)(c0) / k!` at the jet's constant term.
    fn apply_univariate(&self, derivs: &[f64]) -> Jet2 {
        let dev = self.clone() - Jet2::constant(self.coeffs[0], self.order);
        let mut acc = Jet2::zero(self.order);
        for k in (0..=self.order).rev() {
            acc = acc.mul(&dev) + Jet2::constant(derivs.get(k).copied().unwrap_or(0.0), self.order);
        }
        acc
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.coeffs[0].exp();
        let mut derivs = vec![0.0; self.order + 1];
        let mut fact = 1.0;
        for (k, d) in derivs.iter_mut().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            *d = e / fact;
        }
        self.apply_univariate(&derivs)
    }

    pub fn ln(&self) -> Result<Jet2> {
        let c0 = self.coeffs[0];
        if c0 <= 0.0 {
            return Err(Error::DomainError(format!(
                "log of non-positive constant term {c0}"
            )));
        }
        let mut derivs = vec![0.0; self.order + 1];
        derivs[0] = c0.ln();
        let mut pw = c0;
        for (k, d) in derivs.iter_mut().enumerate().skip(1) {
            *d = if k % 2 == 1 { 1.0 } else { -1.0 } / (k as f64 * pw);
            pw *= c0;
        }
        Ok(self.apply_univariate(&derivs))
    }

    pub fn sqrt(&self) -> Result<Jet2> {
        let c0 = self.coeffs[0];
        if c0 <= 0.0 {
            return Err(Error::DomainError(format!(
                "sqrt of non-positive constant term {c0}"
            )));
        }
        let s = c0.sqrt();
        let mut derivs = vec![0.0; self.order + 1];
        let mut binom = 1.0; // binom(1/2, k)
        let mut pw = 1.0; // c0^k
        for (k, d) in derivs.iter_mut().enumerate() {
            if k > 0 {
                binom *= (0.5 - (k as f64 - 1.0)) / k as f64;
                pw *= c0;
            }
            *d = s * binom / pw;
        }
        Ok(self.apply_univariate(&derivs))
    }

    pub fn sin(&self) -> Jet2 {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet2 {
        self.sin_cos().1
    }

    fn sin_cos(&self) -> (Jet2, Jet2) {
        let (s, c) = self.coeffs[0].sin_cos();
        let cycle = [s, c, -s, -c];
        let mut sd = vec![0.0; self.order + 1];
        let mut cd = vec![0.0; self.order + 1];
        let mut fact = 1.0;
        for k in 0..=self.order {
            if k > 0 {
                fact *= k as f64;
            }
            sd[k] = cycle[k % 4] / fact;
            cd[k] = cycle[(k + 1) % 4] / fact;
        }
        (self.apply_univariate(&sd), self.apply_univariate(&cd))
    }

    /// Integer power; negative exponents require a nonzero constant term.
    pub fn powi(&self, exponent: i64) -> Result<Jet2> {
        let base = if exponent < 0 {
            self.recip()?
        } else {
            self.clone()
        };
        let mut out = Jet2::constant(1.0, self.order);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Coefficients along `u2 = 0` as a univariate jet.
    pub fn restrict_to_axis(&self) -> Jet1 {
        Jet1 {
            coeffs: (0..=self.order).map(|a| self.get(a, 0)).collect(),
        }
    }
}

/// Inverts a formal map `(u1, u2) -> (x1, x2)` with zero constant terms.
///
/// Returns `y = (y1, y2)` with `y(x(u)) = u` and `x(y(v)) = v` to the
/// common truncation order. Degree-by-degree Newton on the composition
/// residual; each step only touches one homogeneous degree, so the
/// iteration is exact in `order - 1` steps.
pub fn invert_map(x: (&Jet2, &Jet2)) -> Result<(Jet2, Jet2)> {
    let order = x.0.order().min(x.1.order());
    for j in [x.0, x.1] {
        let c0 = j.get(0, 0);
        if c0.abs() > 1e-14 * 1.0_f64.max(j.max_abs()) {
            return Err(Error::BasePointMismatch { offset: c0 });
        }
    }
    let a = [
        [x.0.get(1, 0), x.0.get(0, 1)],
        [x.1.get(1, 0), x.1.get(0, 1)],
    ];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let scale = a
        .iter()
        .flatten()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(1.0);
    if det.abs() <= 1e-12 * scale * scale {
        return Err(Error::SingularJacobian { det });
    }
    let ainv = [
        [a[1][1] / det, -a[0][1] / det],
        [-a[1][0] / det, a[0][0] / det],
    ];
    let lin = |row: [f64; 2]| {
        let mut j = Jet2::zero(order);
        if order >= 1 {
            j.set(1, 0, row[0]);
            j.set(0, 1, row[1]);
        }
        j
    };
    let ainv1 = lin(ainv[0]);
    let ainv2 = lin(ainv[1]);
    let mut y1 = ainv1.clone();
    let mut y2 = ainv2.clone();
    let x1 = x.0.truncated(order);
    let x2 = x.1.truncated(order);
    for d in 2..=order {
        let r1 = y1.compose((&x1, &x2))? - Jet2::variable(1, order);
        let r2 = y2.compose((&x1, &x2))? - Jet2::variable(2, order);
        // Kill the degree-d error: delta(v) = -r_d(A^{-1} v).
        let d1 = r1.homogeneous_part(d).compose((&ainv1, &ainv2))?;
        let d2 = r2.homogeneous_part(d).compose((&ainv1, &ainv2))?;
        y1 = y1 - d1;
        y2 = y2 - d2;
    }
    Ok((y1, y2))
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl Add for &Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl Sub for &Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &Jet2) -> Jet2 {
        Jet2::mul(self, rhs)
    }
}

impl Add<&Jet2> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&Jet2> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl fmt::Display for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b, c) in self.iter() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if a > 0 {
                write!(f, "*u1^{a}")?;
            }
            if b > 0 {
                write!(f, "*u2^{b}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense truncated univariate power series in a parameter `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1 {
    coeffs: Vec<f64>,
}

impl Jet1 {
    pub fn zero(order: usize) -> Self {
        Jet1 {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet carries at least a constant term");
        Jet1 { coeffs }
    }

    /// The coordinate jet `t`.
    pub fn variable(order: usize) -> Self {
        let mut j = Jet1::zero(order);
        j.coeffs[1] = 1.0;
        j
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut j = Jet1::zero(order);
        j.coeffs[0] = value;
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, k: usize, value: f64) {
        self.coeffs[k] = value;
    }

    pub fn truncated(&self, order: usize) -> Jet1 {
        let mut out = Jet1::zero(order);
        for k in 0..=order.min(self.order()) {
            out.coeffs[k] = self.coeffs[k];
        }
        out
    }

    pub fn add(&self, rhs: &Jet1) -> Jet1 {
        let order = self.order().min(rhs.order());
        Jet1 {
            coeffs: (0..=order).map(|k| self.get(k) + rhs.get(k)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Jet1) -> Jet1 {
        let order = self.order().min(rhs.order());
        Jet1 {
            coeffs: (0..=order).map(|k| self.get(k) - rhs.get(k)).collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Jet1 {
        Jet1 {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, rhs: &Jet1) -> Jet1 {
        let order = self.order().min(rhs.order());
        let mut out = Jet1::zero(order);
        for i in 0..=order {
            for j in 0..=(order - i) {
                out.coeffs[i + j] += self.get(i) * rhs.get(j);
            }
        }
        out
    }

    pub fn div(&self, rhs: &Jet1) -> Result<Jet1> {
        let c0 = rhs.coeffs[0];
        if c0 == 0.0 || !c0.is_finite() {
            return Err(Error::DivisionByZeroConstantTerm);
        }
        let order = self.order().min(rhs.order());
        let mut out = Jet1::zero(order);
        for k in 0..=order {
            let mut acc = self.get(k);
            for j in 0..k {
                acc -= out.coeffs[j] * rhs.get(k - j);
            }
            out.coeffs[k] = acc / c0;
        }
        Ok(out)
    }

    /// Derivative with respect to `t`; order drops by one.
    pub fn derivative(&self) -> Result<Jet1> {
        if self.order() == 0 {
            return Err(Error::OrderTooSmall { needed: 1, have: 0 });
        }
        Ok(Jet1 {
            coeffs: (1..=self.order())
                .map(|k| k as f64 * self.coeffs[k])
                .collect(),
        })
    }

    /// Antiderivative with prescribed constant term; order grows by one.
    pub fn antiderivative(&self, constant: f64) -> Jet1 {
        let mut coeffs = vec![constant];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as f64 + 1.0)),
        );
        Jet1 { coeffs }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Embeds the curve jet as a `Jet2` constant in `u2`.
    pub fn along_u1(&self, order: usize) -> Jet2 {
        let mut out = Jet2::zero(order);
        for k in 0..=order.min(self.order()) {
            out.set(k, 0, self.coeffs[k]);
        }
        out
    }
}

impl fmt::Display for Jet1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*t^{k}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
