//! Exact rational generating functions over the integers.
//!
//! [`IntPolynomial`] holds arbitrary-precision coefficients, [`RationalGF`] is
//! a ratio of two of them with an invertible constant term in the
//! denominator, and [`RiordanArray`] packages a `(d, h)` pair. Every
//! expansion is exact; truncation orders are always supplied by the caller.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("denominator has zero constant term; no power series expansion")]
    SingularDenominator,
    #[error("series coefficient {index} is not an integer")]
    NonIntegral { index: usize },
    #[error("h(0) must be nonzero for a Riordan array")]
    DegenerateRiordan,
}

/// Polynomial with big-integer coefficients, stored lowest degree first with
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self` on division by `divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor
            .degree()
            .expect("pseudo-division by zero polynomial");
        let lc = divisor.leading();
        let mut rem = self.clone();
        let mut steps = match self.degree() {
            Some(d) if d >= dd => d - dd + 1,
            _ => 0,
        };
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading();
            rem = &rem.scale(&lc) - &divisor.scale(&factor).shift(rd - dd);
            steps -= 1;
        }
        let mut lc_pow = BigInt::one();
        for _ in 0..steps {
            lc_pow *= &lc;
        }
        rem.scale(&lc_pow)
    }

    /// Exact division; `None` if `divisor` does not divide `self` over the
    /// integers.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let lc = divisor.leading();
        let mut rem = self.clone();
        let mut quotient = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let (q, r) = rem.leading().div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &divisor.scale(&q).shift(rd - dd);
            quotient[rd - dd] = q;
        }
        Some(Self::new(quotient))
    }

    /// Greatest common divisor over `Z[x]`, primitive with positive leading
    /// coefficient. Primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().with_content(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().with_content(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().with_content(&content)
    }

    fn with_content(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            self.clone()
        } else {
            self.scale(c)
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, self, "q")
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &IntPolynomial, var: &str) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match i {
            0 => write!(f, "{abs}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                if i == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{i}")?;
                }
            }
        }
    }
    Ok(())
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned_ops!(Add add, Sub sub, Mul mul);

/// A rational function `numerator / denominator` whose denominator has a
/// nonzero constant term, so that it has a formal power series expansion.
#[derive(Debug, Clone)]
pub struct RationalGF {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalGF {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self, GfError> {
        if denominator.constant_term().is_zero() {
            return Err(GfError::SingularDenominator);
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }

    /// Convenience constructor from small coefficient lists.
    pub fn from_i64(numerator: &[i64], denominator: &[i64]) -> Result<Self, GfError> {
        Self::new(
            IntPolynomial::from_i64(numerator),
            IntPolynomial::from_i64(denominator),
        )
    }

    pub fn polynomial(p: IntPolynomial) -> Self {
        RationalGF {
            numerator: p,
            denominator: IntPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(IntPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::polynomial(IntPolynomial::one())
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        Self::polynomial(IntPolynomial::x_pow(k))
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    /// Coefficients of `x^0 ..= x^order`, computed with the linear recurrence
    /// `den_0 a_n = num_n - sum_{i >= 1} den_i a_{n-i}`.
    pub fn series(&self, order: usize) -> Result<Vec<BigInt>, GfError> {
        let den = self.denominator.coeffs();
        let d0 = &den[0];
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.numerator.coeff(n);
            for (i, di) in den.iter().enumerate().skip(1).take(n) {
                acc -= di * &out[n - i];
            }
            let (q, r) = acc.div_rem(d0);
            if !r.is_zero() {
                return Err(GfError::NonIntegral { index: n });
            }
            out.push(q);
        }
        Ok(out)
    }

    /// Single coefficient `[x^n]`.
    pub fn coefficient(&self, n: usize) -> Result<BigInt, GfError> {
        Ok(self.series(n)?.pop().unwrap_or_default())
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalGF {
            numerator: &(&self.numerator * &other.denominator)
                + &(&other.numerator * &self.denominator),
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalGF {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalGF {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    /// `self / other`; fails when the quotient has no power series, i.e. when
    /// `other`'s numerator vanishes at 0.
    pub fn div(&self, other: &Self) -> Result<Self, GfError> {
        Self::new(
            &self.numerator * &other.denominator,
            &self.denominator * &other.numerator,
        )
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        RationalGF {
            numerator: self.numerator.shift(k),
            denominator: self.denominator.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalGF {
            numerator: self.numerator.pow(e),
            denominator: self.denominator.pow(e),
        }
    }

    /// Cancel the polynomial gcd of numerator and denominator and normalize
    /// the denominator's constant term to be positive.
    pub fn reduced(&self) -> Self {
        if self.numerator.is_zero() {
            return Self::zero();
        }
        let g = self.numerator.gcd(&self.denominator);
        let mut num = self.numerator.exact_div(&g).expect("gcd divides numerator");
        let mut den = self
            .denominator
            .exact_div(&g)
            .expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        let sign = if den.constant_term().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let unit = c * sign;
        num = IntPolynomial::new(num.coeffs().iter().map(|a| a / &unit).collect());
        den = IntPolynomial::new(den.coeffs().iter().map(|a| a / &unit).collect());
        RationalGF {
            numerator: num,
            denominator: den,
        }
    }
}

/// Exact equality of rational functions by cross-multiplication.
pub fn rgf_equal(f: &RationalGF, g: &RationalGF) -> bool {
    &f.numerator * &g.denominator == &g.numerator * &f.denominator
}

impl PartialEq for RationalGF {
    fn eq(&self, other: &Self) -> bool {
        rgf_equal(self, other)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        fmt_poly(f, &self.numerator, "q")?;
        f.write_str(") / (")?;
        fmt_poly(f, &self.denominator, "q")?;
        f.write_str(")")
    }
}

/// `1 / (1 - q - q^2)`, generating `F_{n+1}`.
pub fn fibonacci_gf() -> RationalGF {
    RationalGF::from_i64(&[1], &[1, -1, -1]).expect("valid denominator")
}

/// Generating function of `w(n,0)` in its reduced closed form
/// `(1 - q + q^3) / (1 - 2q + 2q^3 - q^4)`.
pub fn w0_gf() -> RationalGF {
    RationalGF::from_i64(&[1, -1, 0, 1], &[1, -2, 0, 2, -1]).expect("valid denominator")
}

/// The same generating function as the sum `1/(1-q) + q^2/((1-q)^2 (1-q^2))`
/// counting `(1^n)` plus two-colored-ones partitions with at least one 2.
pub fn w0_gf_as_sum() -> RationalGF {
    let one_minus_q = IntPolynomial::from_i64(&[1, -1]);
    let one_minus_q2 = IntPolynomial::from_i64(&[1, 0, -1]);
    let ones = RationalGF::new(IntPolynomial::one(), one_minus_q.clone()).expect("valid");
    let with_two = RationalGF::new(IntPolynomial::x_pow(2), &one_minus_q.pow(2) * &one_minus_q2)
        .expect("valid");
    ones.add(&with_two)
}

/// Generating function of column `k` of the water-cell triangle: the closed
/// form above for `k = 0`, otherwise `q^(k+4) / ((1-q)^2 (1-q^2)^(k+1))`.
pub fn column_gf(k: u32) -> RationalGF {
    if k == 0 {
        return w0_gf();
    }
    let den = &IntPolynomial::from_i64(&[1, -1]).pow(2)
        * &IntPolynomial::from_i64(&[1, 0, -1]).pow(k + 1);
    RationalGF::new(IntPolynomial::x_pow(k as usize + 4), den).expect("valid denominator")
}

/// `(1 - q^2 + q^3) / (1 - q - 2q^2 + 2q^3)`, the diagonal-sum generating
/// function in its displayed closed form.
pub fn diagonal_gf() -> RationalGF {
    RationalGF::from_i64(&[1, 0, -1, 1], &[1, -1, -2, 2]).expect("valid denominator")
}

/// Truncated bivariate series: `rows[n]` is the polynomial in `z` multiplying
/// `q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    rows: Vec<IntPolynomial>,
}

impl BivariateSeries {
    /// Truncation order in `q`.
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[IntPolynomial] {
        &self.rows
    }

    /// `[q^n z^k]`, zero beyond the truncation order.
    pub fn coefficient(&self, n: usize, k: usize) -> BigInt {
        self.rows.get(n).map(|p| p.coeff(k)).unwrap_or_default()
    }

    /// Substitute `z = 1`.
    pub fn at_z_one(&self) -> Vec<BigInt> {
        self.rows.iter().map(|p| p.coeffs().iter().sum()).collect()
    }
}

/// Expand `num(q,z) / den(q,z)` in `q` to the given order, where both are given
/// as polynomials in `q` with polynomial-in-`z` coefficients and `den` has
/// constant term `1`.
fn expand_bivariate(
    num: &[IntPolynomial],
    den: &[IntPolynomial],
    order: usize,
) -> Vec<IntPolynomial> {
    debug_assert_eq!(den.first(), Some(&IntPolynomial::one()));
    let mut out: Vec<IntPolynomial> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num.get(n).cloned().unwrap_or_default();
        for (i, di) in den.iter().enumerate().skip(1).take(n) {
            acc = &acc - &(di * &out[n - i]);
        }
        out.push(acc);
    }
    out
}

/// Expand `sum w(n,k) q^n z^k = 1/(1-q) + q^2 (1 - zq) / ((1-q)^2 (1 - zq - q^2))`
/// through `q^order`.
pub fn bivariate_expand(order: usize) -> BivariateSeries {
    let c = |v: i64| IntPolynomial::from_i64(&[v]);
    let z = |v: i64| IntPolynomial::from_i64(&[0, v]);
    let zero = IntPolynomial::zero;

    // 1 / (1 - q)
    let ones = expand_bivariate(&[c(1)], &[c(1), c(-1)], order);

    // q^2 (1 - zq) over (1-q)^2 (1 - zq - q^2); both written as polynomials in q.
    let num = [zero(), zero(), c(1), z(-1)];
    let one_minus_q_sq = [c(1), c(-2), c(1)];
    let fib_like = [c(1), z(-1), c(-1)];
    let mut den = vec![zero(); one_minus_q_sq.len() + fib_like.len() - 1];
    for (i, a) in one_minus_q_sq.iter().enumerate() {
        for (j, b) in fib_like.iter().enumerate() {
            den[i + j] = &den[i + j] + &(a * b);
        }
    }
    let water = expand_bivariate(&num, &den, order);

    BivariateSeries {
        rows: ones.iter().zip(&water).map(|(a, b)| a + b).collect(),
    }
}

/// A Riordan array `(d(t), h(t))`: column `j` has generating function
/// `d(t) * (t h(t))^j`.
#[derive(Debug, Clone)]
pub struct RiordanArray {
    d: RationalGF,
    h: RationalGF,
}

impl RiordanArray {
    pub fn new(d: RationalGF, h: RationalGF) -> Result<Self, GfError> {
        if h.numerator().constant_term().is_zero() {
            return Err(GfError::DegenerateRiordan);
        }
        Ok(RiordanArray { d, h })
    }

    /// `(1/((1-t)^2 (1-t^2)^2), 1/(1-t^2))`: the water-cell triangle restricted
    /// to `k >= 1`, shifted so that `entry(i, j) = w(i + 5, j + 1)`.
    pub fn positive_water() -> Self {
        let d = RationalGF::new(
            IntPolynomial::one(),
            &IntPolynomial::from_i64(&[1, -1]).pow(2)
                * &IntPolynomial::from_i64(&[1, 0, -1]).pow(2),
        )
        .expect("valid");
        let h = RationalGF::from_i64(&[1], &[1, 0, -1]).expect("valid");
        RiordanArray { d, h }
    }

    pub fn d(&self) -> &RationalGF {
        &self.d
    }

    pub fn h(&self) -> &RationalGF {
        &self.h
    }

    pub fn column_gf(&self, j: usize) -> RationalGF {
        self.d.mul(&self.h.pow(j as u32)).shift(j)
    }

    /// `[t^i] d(t) (t h(t))^j`; zero above the diagonal.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        if j > i {
            return BigInt::zero();
        }
        self.column_gf(j)
            .coefficient(i)
            .expect("Riordan columns have unit-free integer expansions")
    }

    /// `d(t) / (1 - t h(t))`.
    pub fn row_sums(&self) -> RationalGF {
        let t_h = self.h.shift(1);
        self.d
            .div(&RationalGF::one().sub(&t_h))
            .expect("1 - t h(t) is invertible")
    }

    /// `d(t) / (1 - t^2 h(t))`.
    pub fn diagonal_sums(&self) -> RationalGF {
        let t2_h = self.h.shift(2);
        self.d
            .div(&RationalGF::one().sub(&t2_h))
            .expect("1 - t^2 h(t) is invertible")
    }

    /// Row sums computed entry by entry.
    pub fn row_sums_termwise(&self, order: usize) -> Vec<BigInt> {
        (0..=order)
            .map(|i| (0..=i).map(|j| self.entry(i, j)).sum())
            .collect()
    }

    /// Diagonal sums `sum_j entry(i - j, j)` computed entry by entry.
    pub fn diagonal_sums_termwise(&self, order: usize) -> Vec<BigInt> {
        (0..=order)
            .map(|i| (0..=i / 2).map(|j| self.entry(i - j, j)).sum())
            .collect()
    }
}

/// `1 / ((1-t)^2 (1-t^2) (1-t-t^2))`, the closed form of the row sums of
/// [`RiordanArray::positive_water`].
pub fn positive_water_row_sums_closed() -> RationalGF {
    let den = &(&IntPolynomial::from_i64(&[1, -1]).pow(2) * &IntPolynomial::from_i64(&[1, 0, -1]))
        * &IntPolynomial::from_i64(&[1, -1, -1]);
    RationalGF::new(IntPolynomial::one(), den).expect("valid")
}

/// `1 / ((1-t)^3 (1+t) (1-2t^2))`, the closed form of the diagonal sums of
/// [`RiordanArray::positive_water`].
pub fn positive_water_diagonal_sums_closed() -> RationalGF {
    let den = &(&IntPolynomial::from_i64(&[1, -1]).pow(3) * &IntPolynomial::from_i64(&[1, 1]))
        * &IntPolynomial::from_i64(&[1, 0, -2]);
    RationalGF::new(IntPolynomial::one(), den).expect("valid")
}

/// Diagonal sums `d(n)`: the zero-water column plus the Riordan diagonal sums
/// moved to start at `t^6` (the first diagonal with a positive-water summand is
/// `d(6) = w(6,0) + w(5,1)`). Returned reduced.
pub fn dgf_assemble() -> RationalGF {
    let rest = RiordanArray::positive_water().diagonal_sums().shift(6);
    w0_gf().add(&rest).reduced()
}

/// The zero-water column as total count minus positive-water count:
/// `1/(1-t-t^2) - t^5 * rowsums(t)`, reduced.
pub fn w0_from_fibonacci() -> RationalGF {
    let rest = RiordanArray::positive_water().row_sums().shift(5);
    fibonacci_gf().sub(&rest).reduced()
}
