use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::{check_len, Error, Result};
use crate::field::{Field, GaussianMatrix, GaussianRational};

/// Matrices of `λ_σ(i)`, `λ_τ(i)` and `r(j)` in a faithful realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationElement {
    pub lambda_sigma_i: GaussianMatrix,
    pub lambda_tau_i: GaussianMatrix,
    pub r_j: GaussianMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationResult {
    /// `α_∞ = λ_σ(i) λ_τ(i) r(j)`.
    pub alpha: GaussianMatrix,
    pub order_divides_two: bool,
    /// `α_∞` is unchanged when `σ` and `τ` are exchanged.
    pub swap_invariant: bool,
    /// Conjugating by `λ_σ(-1)` gives the element built from `-i`.
    pub minus_i_conjugate: bool,
}

impl ConjugationElement {
    /// Diagonal realization in `GL_n` for integral `λ_σ`, `λ_τ`.
    pub fn diagonal(lambda_sigma: &[BigInt], lambda_tau: &[BigInt], r_j: GaussianMatrix) -> Result<Self> {
        check_len(lambda_sigma.len(), lambda_tau.len())?;
        check_len(lambda_sigma.len(), r_j.size())?;
        Ok(ConjugationElement {
            lambda_sigma_i: GaussianMatrix::cocharacter_at_i(lambda_sigma),
            lambda_tau_i: GaussianMatrix::cocharacter_at_i(lambda_tau),
            r_j,
        })
    }

    /// Checks the Weil group relations on the generators `z = i`, `j`.
    pub fn validate(&self) -> Result<()> {
        let (s, t, r) = (&self.lambda_sigma_i, &self.lambda_tau_i, &self.r_j);
        check_len(s.size(), t.size())?;
        check_len(s.size(), r.size())?;
        let violation = |what: &str| Err(Error::RelationViolation(what.to_string()));
        if s.pow(4) != GaussianMatrix::identity(&(), s.size()) || !t.pow(4).is_identity() {
            return violation("λ(i)^4 ≠ 1");
        }
        if s.mul(t)? != t.mul(s)? {
            return violation("λ_σ(i) and λ_τ(i) do not commute");
        }
        if s.mul(r)? != r.mul(t)? {
            return violation("λ_σ(i) r(j) ≠ r(j) λ_τ(i)");
        }
        if t.mul(r)? != r.mul(s)? {
            return violation("λ_τ(i) r(j) ≠ r(j) λ_σ(i)");
        }
        if r.mul(r)? != s.pow(2).mul(&t.pow(2))? {
            return violation("r(j)^2 ≠ λ_σ(-1) λ_τ(-1)");
        }
        Ok(())
    }

    pub fn alpha_infinity(&self) -> Result<ConjugationResult> {
        self.validate()?;
        let (s, t, r) = (&self.lambda_sigma_i, &self.lambda_tau_i, &self.r_j);
        let alpha = s.mul(t)?.mul(r)?;
        let swapped = t.mul(s)?.mul(r)?;
        // λ(-i) = λ(i)^3, λ_σ(-1) = λ_σ(i)^2
        let minus_i = s.pow(3).mul(&t.pow(3))?.mul(r)?;
        let c = s.pow(2);
        let conj = c.mul(&alpha)?.mul(&c.inverse()?)?;
        Ok(ConjugationResult {
            order_divides_two: alpha.mul(&alpha)?.is_identity(),
            swap_invariant: swapped == alpha,
            minus_i_conjugate: conj == minus_i,
            alpha,
        })
    }

    /// Conjugates all three matrices by `g`.
    pub fn conjugate(&self, g: &GaussianMatrix) -> Result<Self> {
        let gi = g.inverse()?;
        let c = |m: &GaussianMatrix| g.mul(m)?.mul(&gi);
        Ok(ConjugationElement { lambda_sigma_i: c(&self.lambda_sigma_i)?, lambda_tau_i: c(&self.lambda_tau_i)?, r_j: c(&self.r_j)? })
    }
}

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

fn nonzero_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    loop {
        let z = GaussianRational::new(small_rational(rng), small_rational(rng));
        if !z.is_zero() {
            return z;
        }
    }
}

/// A random valid input in `GL_n`: `λ_τ = π λ_σ` for a random involution
/// `π`, `r(j) = P_π D` with `D` chosen so the relations hold, optionally
/// conjugated by a random invertible matrix.
pub fn random_conjugation_fixture<R: Rng>(rng: &mut R, n: usize, conjugate: bool) -> Result<ConjugationElement> {
    let lambda: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut free: Vec<usize> = (0..n).collect();
    while free.len() >= 2 && rng.gen_bool(0.7) {
        let a = free.swap_remove(rng.gen_range(0..free.len()));
        let b = free.swap_remove(rng.gen_range(0..free.len()));
        perm[a] = b;
        perm[b] = a;
    }
    let lambda_tau: Vec<i64> = (0..n).map(|k| lambda[perm[k]]).collect();
    let mut d: Vec<Option<GaussianRational>> = vec![None; n];
    for a in 0..n {
        let b = perm[a];
        if d[a].is_some() {
            continue;
        }
        if a == b {
            d[a] = Some(GaussianRational::from_ints(if rng.gen_bool(0.5) { 1 } else { -1 }, 0));
        } else {
            let da = nonzero_gaussian(rng);
            let sign = GaussianRational::from_ints(if (lambda[a] + lambda[b]).rem_euclid(2) == 0 { 1 } else { -1 }, 0);
            d[b] = Some(sign.div(&da)?);
            d[a] = Some(da);
        }
    }
    // r(j)[k][perm k] = d[perm k]
    let zero = GaussianRational::from_ints(0, 0);
    let r = GaussianMatrix::from_fn(&(), n, |k, l| if l == perm[k] { d[l].clone().expect("filled") } else { zero.clone() });
    let to_big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let ce = ConjugationElement::diagonal(&to_big(&lambda), &to_big(&lambda_tau), r)?;
    if !conjugate {
        return Ok(ce);
    }
    loop {
        let entries: Vec<GaussianRational> =
            (0..n * n).map(|_| GaussianRational::new(small_rational(rng), small_rational(rng))).collect();
        let g = GaussianMatrix::from_fn(&(), n, |i, j| entries[i * n + j].clone());
        if !g.det().is_zero() {
            return ce.conjugate(&g);
        }
    }
}
