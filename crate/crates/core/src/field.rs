//! Exact fields used for explicit matrix realizations: `F_p` for odd primes
//! `p` and the Gaussian rationals `Q(i)`, plus square matrices over them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    /// Data needed to build constants (the modulus for `F_p`).
    type Ctx: Clone + PartialEq + Eq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    /// Some square root, or [`Error::NotASquare`].
    fn sqrt(&self) -> Result<Self>;
    /// Sign convention: for nonzero `x` exactly one of `x`, `-x` is positive.
    fn is_positive(&self) -> bool;
    /// A random element with small representatives.
    fn random<R: Rng>(ctx: &Self::Ctx, rng: &mut R) -> Self;

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 0)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `self^e` for any integer `e`.
    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field `F_p`, `p` an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not an odd prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: i64) -> Fp {
        Fp::from_i64(self, v)
    }

    /// All nonzero elements, in increasing order of representative.
    pub fn units(&self) -> impl Iterator<Item = Fp> + '_ {
        (1..self.p).map(move |v| Fp { v, field: *self })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    field: PrimeField,
}

impl Fp {
    /// Representative in `[0, p)`.
    pub fn value(&self) -> u64 {
        self.v
    }

    fn make(&self, v: u64) -> Fp {
        Fp { v, field: self.field }
    }

    fn is_residue(&self) -> bool {
        self.is_zero() || self.pow((self.field.p - 1) / 2).v == 1
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        self.field
    }

    fn from_i64(ctx: &PrimeField, v: i64) -> Self {
        Fp { v: v.rem_euclid(ctx.p as i64) as u64, field: *ctx }
    }

    fn add(&self, other: &Self) -> Self {
        self.make(((self.v as u128 + other.v as u128) % self.field.p as u128) as u64)
    }

    fn mul(&self, other: &Self) -> Self {
        self.make(((self.v as u128 * other.v as u128) % self.field.p as u128) as u64)
    }

    fn neg(&self) -> Self {
        self.make(if self.v == 0 { 0 } else { self.field.p - self.v })
    }

    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.p - 2))
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    /// Representative in `[1, (p-1)/2]`.
    fn is_positive(&self) -> bool {
        self.v != 0 && self.v <= (self.field.p - 1) / 2
    }

    fn random<R: Rng>(ctx: &PrimeField, rng: &mut R) -> Self {
        Fp { v: rng.gen_range(0..ctx.p), field: *ctx }
    }

    fn to_json(&self) -> serde_json::Value {
        self.v.into()
    }

    /// Tonelli–Shanks.
    fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(*self);
        }
        if !self.is_residue() {
            return Err(Error::NotASquare(format!("{} mod {}", self.v, self.field.p)));
        }
        let p = self.field.p;
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).map(|v| self.make(v)).find(|c| !c.is_residue()).expect("non-residue exists");
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while t.v != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.v != 1 {
                t2 = t2.mul(&t2);
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = b.mul(&b);
            t = t.mul(&c);
            r = r.mul(&b);
        }
        Ok(r)
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_ints(1, 0),
            1 => Self::from_ints(0, 1),
            2 => Self::from_ints(-1, 0),
            _ => Self::from_ints(0, -1),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Field for GaussianRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn from_i64(_: &(), v: i64) -> Self {
        Self::from_ints(v, 0)
    }

    fn add(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn mul(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn neg(&self) -> Self {
        GaussianRational { re: -&self.re, im: -&self.im }
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// First nonzero of `(re, im)` is positive.
    fn is_positive(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_positive()
        } else {
            self.re.is_positive()
        }
    }

    fn random<R: Rng>(_: &(), rng: &mut R) -> Self {
        let mut part = || BigRational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into());
        GaussianRational::new(part(), part())
    }

    fn sqrt(&self) -> Result<Self> {
        let not_square = || Error::NotASquare(self.to_string());
        let modulus = rational_sqrt(&self.norm()).ok_or_else(not_square)?;
        let two = BigRational::from_integer(2.into());
        let x = rational_sqrt(&((&self.re + &modulus) / &two)).ok_or_else(not_square)?;
        let y = if x.is_zero() {
            rational_sqrt(&(-&self.re)).ok_or_else(not_square)?
        } else {
            &self.im / (&two * &x)
        };
        let root = GaussianRational { re: x, im: y };
        if root.mul(&root) != *self {
            return Err(not_square());
        }
        Ok(root)
    }
}

/// Square matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMatrix<F: Field> {
    n: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

impl<F: Field> FMatrix<F> {
    pub fn from_rows(ctx: &F::Ctx, rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            check_len(n, r.len())?;
            if r.iter().any(|x| x.ctx() != *ctx) {
                return Err(Error::FieldMismatch("entries from different fields".into()));
            }
        }
        Ok(FMatrix { n, ctx: ctx.clone(), data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(ctx: &F::Ctx, n: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        FMatrix { n, ctx: ctx.clone(), data }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        Self::scalar(ctx, n, &F::one(ctx))
    }

    pub fn scalar(ctx: &F::Ctx, n: usize, c: &F) -> Self {
        Self::from_fn(ctx, n, |i, j| if i == j { c.clone() } else { F::zero(ctx) })
    }

    pub fn diagonal(ctx: &F::Ctx, d: &[F]) -> Self {
        Self::from_fn(ctx, d.len(), |i, j| if i == j { d[i].clone() } else { F::zero(ctx) })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|c| c.to_vec()).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch("matrices over different fields".into()));
        }
        check_len(self.n, other.n)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n;
        Ok(Self::from_fn(&self.ctx, n, |i, j| {
            (0..n).fold(F::zero(&self.ctx), |acc, k| acc.add(&self.get(i, k).mul(other.get(k, j))))
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_fn(&self.ctx, self.n, |i, j| self.get(i, j).add(other.get(i, j))))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_fn(&self.ctx, self.n, |i, j| self.get(i, j).mul(c))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ctx, self.n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(&self.ctx, self.n);
        for _ in 0..e {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let ctx = &self.ctx;
        let mut a = self.rows();
        let mut inv = Self::identity(ctx, n).rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            a.swap(p, c);
            inv.swap(p, c);
            let piv = a[c][c].inv()?;
            for j in 0..n {
                a[c][j] = a[c][j].mul(&piv);
                inv[c][j] = inv[c][j].mul(&piv);
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        a[r][j] = a[r][j].sub(&f.mul(&a[c][j]));
                        inv[r][j] = inv[r][j].sub(&f.mul(&inv[c][j]));
                    }
                }
            }
        }
        Self::from_rows(ctx, inv)
    }

    pub fn det(&self) -> F {
        let n = self.n;
        let mut a = self.rows();
        let mut det = F::one(&self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return F::zero(&self.ctx) };
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            det = det.mul(&a[c][c]);
            let piv = a[c][c].inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = a[r][c].mul(&piv);
                for j in c..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[c][j]));
                }
            }
        }
        det
    }
}

impl<F: Field> fmt::Display for FMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub type GaussianMatrix = FMatrix<GaussianRational>;

impl GaussianMatrix {
    pub fn from_ints(rows: &[Vec<(i64, i64)>]) -> Result<Self> {
        Self::from_rows(&(), rows.iter().map(|r| r.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect()).collect())
    }

    /// `diag(i^{λ_1}, ..., i^{λ_n})`, the value at `i` of the cocharacter `λ`.
    pub fn cocharacter_at_i(lambda: &[BigInt]) -> Self {
        let four = BigInt::from(4);
        let d: Vec<GaussianRational> = lambda
            .iter()
            .map(|l| {
                let k: i64 = ((l % &four + &four) % &four).try_into().expect("small");
                GaussianRational::i_pow(k)
            })
            .collect();
        Self::diagonal(&(), &d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1_000_000_007).is_ok());
    }

    #[test]
    fn fp_sqrt_exhaustive() {
        for p in [3u64, 5, 7, 13, 17, 41] {
            let f = PrimeField::new(p).unwrap();
            let squares: std::collections::HashSet<u64> = f.units().map(|x| x.mul(&x).value()).collect();
            for x in f.units() {
                match x.sqrt() {
                    Ok(r) => assert_eq!(r.mul(&r), x),
                    Err(_) => assert!(!squares.contains(&x.value())),
                }
            }
        }
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = GaussianRational::i();
        assert_eq!(i.mul(&i), GaussianRational::from_ints(-1, 0));
        let z = GaussianRational::from_ints(3, 4);
        assert_eq!(z.mul(&z.inv().unwrap()), GaussianRational::from_ints(1, 0));
        // (1+2i)^2 = -3+4i
        let s = GaussianRational::from_ints(-3, 4).sqrt().unwrap();
        assert_eq!(s.mul(&s), GaussianRational::from_ints(-3, 4));
        assert_eq!(GaussianRational::from_ints(-4, 0).sqrt().unwrap().mul(&GaussianRational::from_ints(-4, 0).sqrt().unwrap()), GaussianRational::from_ints(-4, 0));
        assert!(GaussianRational::from_ints(2, 0).sqrt().is_err());
        assert!(GaussianRational::from_ints(0, 1).sqrt().is_err());
    }

    #[test]
    fn matrix_inverse() {
        let m = GaussianMatrix::from_ints(&[vec![(1, 1), (2, 0)], vec![(0, -1), (3, 0)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let f = PrimeField::new(11).unwrap();
        let a = FMatrix::from_fn(&f, 3, |i, j| f.element((i * 3 + j * j + 1) as i64));
        if !a.det().is_zero() {
            assert!(a.mul(&a.inverse().unwrap()).unwrap().is_identity());
        }
    }

    #[test]
    fn sign_rule_splits_units() {
        let f = PrimeField::new(13).unwrap();
        for x in f.units() {
            assert_ne!(x.is_positive(), x.neg().is_positive());
        }
        for (re, im) in [(1, 0), (-1, 2), (0, -3), (0, 1)] {
            let z = GaussianRational::from_ints(re, im);
            assert_ne!(z.is_positive(), z.neg().is_positive());
        }
        assert!(!Fp::zero(&f).is_positive());
    }
}
