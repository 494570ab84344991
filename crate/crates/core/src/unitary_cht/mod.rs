//! The group `𝒢_n` and the C-group of a definite unitary group in `n`
//! variables, with the comparison maps `j` and `j′`.
//!
//! `Γ = {1, c}` is the Galois group of the splitting quadratic extension.
//! Elements are `(g, µ) × γ` with `(x × γ)(y × δ) = (x · γ(y)) × γδ`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{check_len, Error, Result};
use crate::field::{FMatrix, Field, Fp, GaussianRational, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gamma {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "c")]
    C,
}

impl Gamma {
    pub fn mul(self, o: Gamma) -> Gamma {
        if self == o {
            Gamma::One
        } else {
            Gamma::C
        }
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gamma::One => "1",
            Gamma::C => "c",
        })
    }
}

/// `(-1)^{n-1}`.
pub fn epsilon<F: Field>(ctx: &F::Ctx, n: usize) -> F {
    F::from_i64(ctx, if n % 2 == 1 { 1 } else { -1 })
}

/// Antidiagonal with entries `1, -1, 1, …` starting at the top right.
pub fn phi_matrix<F: Field>(ctx: &F::Ctx, n: usize) -> FMatrix<F> {
    FMatrix::from_fn(ctx, n, |i, j| {
        if i + j + 1 == n {
            F::from_i64(ctx, if i % 2 == 0 { 1 } else { -1 })
        } else {
            F::zero(ctx)
        }
    })
}

/// Checks `Φ^{-1} = Φ^t = (-1)^{n-1} Φ`.
pub fn check_phi_identities<F: Field>(ctx: &F::Ctx, n: usize) -> Result<bool> {
    let phi = phi_matrix::<F>(ctx, n);
    let inv = phi.inverse()?;
    Ok(inv == phi.transpose() && inv == phi.scale(&epsilon(ctx, n)))
}

fn inverse_transpose<F: Field>(g: &FMatrix<F>) -> Result<FMatrix<F>> {
    Ok(g.inverse()?.transpose())
}

fn check_unit<F: Field>(g: &FMatrix<F>, mu: &F) -> Result<()> {
    if *g.ctx() != mu.ctx() {
        return Err(Error::FieldMismatch("matrix and scalar over different fields".into()));
    }
    if g.det().is_zero() {
        return Err(Error::InvalidParameter("matrix is singular".into()));
    }
    if mu.is_zero() {
        return Err(Error::InvalidParameter("µ = 0".into()));
    }
    Ok(())
}

fn element_json<F: Field>(g: &FMatrix<F>, mu: &F, gamma: Gamma) -> Value {
    let rows: Vec<Vec<Value>> = g.rows().iter().map(|r| r.iter().map(Field::to_json).collect()).collect();
    json!({ "g": rows, "mu": mu.to_json(), "gamma": gamma.to_string() })
}

/// Element of `𝒢_n = (GL_n × GL_1) ⋊ Γ`, `c` acting by `(g, µ) ↦ (µ g^{-t}, µ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnElement<F: Field> {
    g: FMatrix<F>,
    mu: F,
    gamma: Gamma,
}

impl<F: Field> GnElement<F> {
    pub fn new(g: FMatrix<F>, mu: F, gamma: Gamma) -> Result<Self> {
        check_unit(&g, &mu)?;
        Ok(GnElement { g, mu, gamma })
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        GnElement { g: FMatrix::identity(ctx, n), mu: F::one(ctx), gamma: Gamma::One }
    }

    pub fn g(&self) -> &FMatrix<F> {
        &self.g
    }

    pub fn mu(&self) -> &F {
        &self.mu
    }

    pub fn gamma(&self) -> Gamma {
        self.gamma
    }

    pub fn n(&self) -> usize {
        self.g.size()
    }

    fn act(gamma: Gamma, g: &FMatrix<F>, mu: &F) -> Result<(FMatrix<F>, F)> {
        Ok(match gamma {
            Gamma::One => (g.clone(), mu.clone()),
            Gamma::C => (inverse_transpose(g)?.scale(mu), mu.clone()),
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        check_len(self.n(), o.n())?;
        let (g, mu) = Self::act(self.gamma, &o.g, &o.mu)?;
        Ok(GnElement { g: self.g.mul(&g)?, mu: self.mu.mul(&mu), gamma: self.gamma.mul(o.gamma) })
    }

    pub fn inverse(&self) -> Result<Self> {
        let (g, mu) = Self::act(self.gamma, &self.g.inverse()?, &self.mu.inv()?)?;
        Ok(GnElement { g, mu, gamma: self.gamma })
    }

    /// Conjugation by `1 × c`.
    pub fn c_conjugate(&self) -> Result<Self> {
        let (g, mu) = Self::act(Gamma::C, &self.g, &self.mu)?;
        Ok(GnElement { g, mu, gamma: self.gamma })
    }

    /// Projection to the `GL_1` factor.
    pub fn multiplier(&self) -> F {
        self.mu.clone()
    }

    pub fn to_json(&self) -> Value {
        element_json(&self.g, &self.mu, self.gamma)
    }
}

/// Element of `ᶜU(n) = ((GL_n × GL_1) / ((-1)^{n-1}, -1)) ⋊ Γ`, `c` acting by
/// `(g, µ) ↦ (Φ g^{-t} Φ^{-1}, µ)`.
///
/// The stored representative has `µ` positive in the sense of
/// [`Field::is_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGroupUnitaryElement<F: Field> {
    g: FMatrix<F>,
    mu: F,
    gamma: Gamma,
}

impl<F: Field> CGroupUnitaryElement<F> {
    pub fn new(g: FMatrix<F>, mu: F, gamma: Gamma) -> Result<Self> {
        check_unit(&g, &mu)?;
        Ok(Self::normalized(g, mu, gamma))
    }

    fn normalized(g: FMatrix<F>, mu: F, gamma: Gamma) -> Self {
        if mu.is_positive() {
            CGroupUnitaryElement { g, mu, gamma }
        } else {
            let eps = epsilon(g.ctx(), g.size());
            CGroupUnitaryElement { g: g.scale(&eps), mu: mu.neg(), gamma }
        }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        CGroupUnitaryElement { g: FMatrix::identity(ctx, n), mu: F::one(ctx), gamma: Gamma::One }
    }

    /// `1 × c`.
    pub fn c(ctx: &F::Ctx, n: usize) -> Self {
        CGroupUnitaryElement { gamma: Gamma::C, ..Self::identity(ctx, n) }
    }

    pub fn g(&self) -> &FMatrix<F> {
        &self.g
    }

    pub fn mu(&self) -> &F {
        &self.mu
    }

    pub fn gamma(&self) -> Gamma {
        self.gamma
    }

    pub fn n(&self) -> usize {
        self.g.size()
    }

    /// The two pairs `(g, µ)` and `((-1)^{n-1} g, -µ)` in the class.
    pub fn representatives(&self) -> [(FMatrix<F>, F); 2] {
        let eps = epsilon(self.g.ctx(), self.n());
        [(self.g.clone(), self.mu.clone()), (self.g.scale(&eps), self.mu.neg())]
    }

    fn act(gamma: Gamma, g: &FMatrix<F>, mu: &F) -> Result<(FMatrix<F>, F)> {
        Ok(match gamma {
            Gamma::One => (g.clone(), mu.clone()),
            Gamma::C => {
                let phi = phi_matrix::<F>(g.ctx(), g.size());
                (phi.mul(&inverse_transpose(g)?)?.mul(&phi.inverse()?)?, mu.clone())
            }
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        check_len(self.n(), o.n())?;
        let (g, mu) = Self::act(self.gamma, &o.g, &o.mu)?;
        Ok(Self::normalized(self.g.mul(&g)?, self.mu.mul(&mu), self.gamma.mul(o.gamma)))
    }

    pub fn inverse(&self) -> Result<Self> {
        let (g, mu) = Self::act(self.gamma, &self.g.inverse()?, &self.mu.inv()?)?;
        Ok(Self::normalized(g, mu, self.gamma))
    }

    /// Conjugation by `1 × c`.
    pub fn c_conjugate(&self) -> Result<Self> {
        let (g, mu) = Self::act(Gamma::C, &self.g, &self.mu)?;
        Ok(Self::normalized(g, mu, self.gamma))
    }

    /// `d(g, µ, γ) = µ²`.
    pub fn d(&self) -> F {
        self.mu.mul(&self.mu)
    }

    pub fn to_json(&self) -> Value {
        element_json(&self.g, &self.mu, self.gamma)
    }
}

/// `j` evaluated on a representative `(g, µ) × γ`.
fn j_on_pair<F: Field>(g: &FMatrix<F>, mu: &F, gamma: Gamma) -> Result<GnElement<F>> {
    let n = g.size();
    let ctx = g.ctx();
    let e = 1 - n as i64;
    let base = GnElement { g: g.scale(&mu.powi(e)?), mu: mu.powi(2 * e)?, gamma: Gamma::One };
    match gamma {
        Gamma::One => Ok(base),
        Gamma::C => base.mul(&GnElement { g: phi_matrix(ctx, n), mu: epsilon(ctx, n), gamma: Gamma::C }),
    }
}

/// `j((g, µ) × γ) = (g µ^{1-n}, µ^{2(1-n)}) · j(γ)` with
/// `j(1 × c) = (Φ_n, (-1)^{n-1}) × c`.
pub fn j_map<F: Field>(x: &CGroupUnitaryElement<F>) -> Result<GnElement<F>> {
    let [(g0, mu0), (g1, mu1)] = x.representatives();
    let a = j_on_pair(&g0, &mu0, x.gamma)?;
    if a != j_on_pair(&g1, &mu1, x.gamma)? {
        return Err(Error::ConstructionFailure("j differs on the two representatives".into()));
    }
    Ok(a)
}

/// Primitive `m`-th root of unity in `F_p`, `m | p - 1`.
fn primitive_root_of_unity(field: &PrimeField, m: u64) -> Fp {
    let p = field.modulus();
    let mut prime_divisors = Vec::new();
    let mut r = m;
    let mut q = 2;
    while q * q <= r {
        if r.is_multiple_of(q) {
            prime_divisors.push(q);
            while r.is_multiple_of(q) {
                r /= q;
            }
        }
        q += 1;
    }
    if r > 1 {
        prime_divisors.push(r);
    }
    (2..p)
        .map(|a| field.element(a as i64).pow((p - 1) / m))
        .find(|z| prime_divisors.iter().all(|&q| z.pow(m / q).value() != 1))
        .expect("F_p^* is cyclic")
}

/// Elements `(µ^{n-1} I, µ)` with `µ^{2(n-1)} = 1`, one per class.
pub fn kernel_of_j(n: usize, field: &PrimeField) -> Result<Vec<CGroupUnitaryElement<Fp>>> {
    if n < 2 {
        return Err(Error::InvalidParameter("j is an isogeny only for n ≥ 2".into()));
    }
    let m = 2 * (n as u64 - 1);
    let p = field.modulus();
    if !(p - 1).is_multiple_of(m) {
        return Err(Error::FieldTooSmall(format!("need p ≡ 1 mod {m}, got p = {p}")));
    }
    let zeta = primitive_root_of_unity(field, m);
    let mut out: Vec<CGroupUnitaryElement<Fp>> = Vec::new();
    for k in 0..m {
        let mu = zeta.pow(k);
        let x = CGroupUnitaryElement::new(FMatrix::scalar(field, n, &mu.pow(n as u64 - 1)), mu, Gamma::One)?;
        if j_map(&x)? != GnElement::identity(field, n) {
            return Err(Error::ConstructionFailure(format!("µ = {} is not in the kernel", zeta.pow(k))));
        }
        if !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

fn j_prime_with_root<F: Field>(x: &GnElement<F>, s: &F) -> Result<CGroupUnitaryElement<F>> {
    let n = x.n();
    let mut g = x.g.scale(&s.pow(n as u64 - 1));
    if x.gamma == Gamma::C {
        g = g.mul(&phi_matrix::<F>(x.g.ctx(), n).inverse()?)?;
    }
    CGroupUnitaryElement::new(g, s.clone(), x.gamma)
}

/// `j′((h, ν) × γ, λ) = (h s^{n-1}, s) · j′(γ)` with `s² = λ` and
/// `j′(1 × c) = (Φ_n^{-1}, 1) × c`.
///
/// When `sqrt_choice` is `None` a square root is computed. The other root is
/// also evaluated and must give the same class.
pub fn j_prime<F: Field>(x: &GnElement<F>, lambda: &F, sqrt_choice: Option<&F>) -> Result<CGroupUnitaryElement<F>> {
    let s = match sqrt_choice {
        Some(s) => s.clone(),
        None => lambda.sqrt()?,
    };
    if s.mul(&s) != *lambda || s.is_zero() {
        return Err(Error::NotASquare(format!("{s} is not a square root of {lambda}")));
    }
    let a = j_prime_with_root(x, &s)?;
    if a != j_prime_with_root(x, &s.neg())? {
        return Err(Error::ConstructionFailure("j′ depends on the choice of square root".into()));
    }
    Ok(a)
}

/// Multiplier of `j(x)` predicted from `d(x)`: `d^{1-n}`, times `(-1)^{n-1}`
/// on the non-identity component.
pub fn expected_multiplier<F: Field>(x: &CGroupUnitaryElement<F>) -> Result<F> {
    let n = x.n();
    let m = x.d().powi(1 - n as i64)?;
    Ok(match x.gamma {
        Gamma::One => m,
        Gamma::C => m.mul(&epsilon(x.g.ctx(), n)),
    })
}

/// The coefficient field used for an explicit check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientField {
    RationalsI,
    PrimeField { p: u64 },
}

impl std::str::FromStr for CoefficientField {
    type Err = Error;

    /// `"qi"`, `"gaussian"` or `"rationals_i"`, or `"F<p>"`/a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "qi" | "q(i)" | "gaussian" | "rationals_i") {
            return Ok(CoefficientField::RationalsI);
        }
        let digits = t.strip_prefix('f').unwrap_or(&t);
        let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        PrimeField::new(p)?;
        Ok(CoefficientField::PrimeField { p })
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::RationalsI => f.write_str("Q(i)"),
            CoefficientField::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

/// Outcome of the sampled checks for one `n` and field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitaryReport {
    pub n: usize,
    pub field: String,
    pub samples: usize,
    pub phi_identities: bool,
    pub gn_associative: bool,
    pub cgroup_associative: bool,
    pub c_conjugation_involutive: bool,
    pub quotient_consistent: bool,
    pub j_kills_central_element: bool,
    pub j_homomorphism: bool,
    pub j_prime_round_trip: bool,
    pub multiplier_matches_d: bool,
    /// `None` unless the field is `F_p` with `p ≡ 1 mod 2(n-1)`.
    pub kernel_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_note: Option<String>,
}

impl UnitaryReport {
    pub fn all_pass(&self) -> bool {
        self.phi_identities
            && self.gn_associative
            && self.cgroup_associative
            && self.c_conjugation_involutive
            && self.quotient_consistent
            && self.j_kills_central_element
            && self.j_homomorphism
            && self.j_prime_round_trip
            && self.multiplier_matches_d
            && self.kernel_order.is_none_or(|k| k == self.n - 1)
    }
}

fn random_matrix<F: Field, R: Rng>(ctx: &F::Ctx, n: usize, rng: &mut R) -> FMatrix<F> {
    loop {
        let entries: Vec<F> = (0..n * n).map(|_| F::random(ctx, rng)).collect();
        let g = FMatrix::from_fn(ctx, n, |i, j| entries[i * n + j].clone());
        if !g.det().is_zero() {
            return g;
        }
    }
}

fn random_unit<F: Field, R: Rng>(ctx: &F::Ctx, rng: &mut R) -> F {
    loop {
        let x = F::random(ctx, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_gamma<R: Rng>(rng: &mut R) -> Gamma {
    if rng.gen_bool(0.5) {
        Gamma::C
    } else {
        Gamma::One
    }
}

pub fn random_gn<F: Field, R: Rng>(ctx: &F::Ctx, n: usize, rng: &mut R) -> GnElement<F> {
    GnElement { g: random_matrix(ctx, n, rng), mu: random_unit(ctx, rng), gamma: random_gamma(rng) }
}

pub fn random_cgroup<F: Field, R: Rng>(ctx: &F::Ctx, n: usize, rng: &mut R) -> CGroupUnitaryElement<F> {
    CGroupUnitaryElement::normalized(random_matrix(ctx, n, rng), random_unit(ctx, rng), random_gamma(rng))
}

struct Checks {
    phi: bool,
    gn_assoc: bool,
    cg_assoc: bool,
    involutive: bool,
    quotient: bool,
    central: bool,
    hom: bool,
    round_trip: bool,
    multiplier: bool,
}

fn sampled_checks<F: Field, R: Rng>(ctx: &F::Ctx, n: usize, samples: usize, rng: &mut R) -> Result<Checks> {
    let mut c = Checks {
        phi: check_phi_identities::<F>(ctx, n)?,
        gn_assoc: true,
        cg_assoc: true,
        involutive: true,
        quotient: true,
        central: true,
        hom: true,
        round_trip: true,
        multiplier: true,
    };
    let eps = epsilon::<F>(ctx, n);
    for gamma in [Gamma::One, Gamma::C] {
        let z = CGroupUnitaryElement { g: FMatrix::scalar(ctx, n, &eps), mu: F::from_i64(ctx, -1), gamma };
        let one_gamma = CGroupUnitaryElement { gamma, ..CGroupUnitaryElement::identity(ctx, n) };
        c.central &= j_on_pair(&z.g, &z.mu, gamma)? == j_map(&one_gamma)?;
        c.central &= CGroupUnitaryElement::new(z.g.clone(), z.mu.clone(), gamma)? == one_gamma;
    }
    for _ in 0..samples {
        let (a, b, d) = (random_gn::<F, _>(ctx, n, rng), random_gn(ctx, n, rng), random_gn(ctx, n, rng));
        c.gn_assoc &= a.mul(&b)?.mul(&d)? == a.mul(&b.mul(&d)?)?;
        c.gn_assoc &= a.mul(&a.inverse()?)? == GnElement::identity(ctx, n);
        c.involutive &= a.c_conjugate()?.c_conjugate()? == a;
        c.involutive &= a.mul(&b)?.c_conjugate()? == a.c_conjugate()?.mul(&b.c_conjugate()?)?;

        let (x, y, w) = (random_cgroup::<F, _>(ctx, n, rng), random_cgroup(ctx, n, rng), random_cgroup(ctx, n, rng));
        c.cg_assoc &= x.mul(&y)?.mul(&w)? == x.mul(&y.mul(&w)?)?;
        c.cg_assoc &= x.mul(&x.inverse()?)? == CGroupUnitaryElement::identity(ctx, n);
        c.involutive &= x.c_conjugate()?.c_conjugate()? == x;
        c.involutive &= x.mul(&y)?.c_conjugate()? == x.c_conjugate()?.mul(&y.c_conjugate()?)?;

        let [(g0, m0), (g1, m1)] = x.representatives();
        c.quotient &= CGroupUnitaryElement::new(g1.clone(), m1.clone(), x.gamma)? == x;
        c.quotient &= j_on_pair(&g0, &m0, x.gamma)? == j_on_pair(&g1, &m1, x.gamma)?;

        let jx = j_map(&x)?;
        c.hom &= j_map(&x.mul(&y)?)? == jx.mul(&j_map(&y)?)?;
        c.hom &= j_map(&x.c_conjugate()?)? == jx.c_conjugate_by_j_c(ctx)?;
        c.round_trip &= j_prime(&jx, &x.d(), None)? == x;
        c.multiplier &= jx.multiplier() == expected_multiplier(&x)?;
        if x.gamma == Gamma::One {
            c.multiplier &= jx.multiplier() == x.d().powi(1 - n as i64)?;
        }
    }
    Ok(c)
}

impl<F: Field> GnElement<F> {
    /// Conjugation by `j(1 × c)`.
    fn c_conjugate_by_j_c(&self, ctx: &F::Ctx) -> Result<Self> {
        let jc = j_map(&CGroupUnitaryElement::c(ctx, self.n()))?;
        jc.mul(self)?.mul(&jc.inverse()?)
    }
}

/// Runs every sampled identity for `ᶜU(n)`, `𝒢_n`, `j` and `j′`.
pub fn unitary_check<R: Rng>(n: usize, field: CoefficientField, samples: usize, rng: &mut R) -> Result<UnitaryReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let (checks, kernel_order, kernel_note) = match field {
        CoefficientField::RationalsI => {
            let c = sampled_checks::<GaussianRational, _>(&(), n, samples, rng)?;
            (c, None, Some("kernel is enumerated over prime fields only".to_string()))
        }
        CoefficientField::PrimeField { p } => {
            let f = PrimeField::new(p)?;
            let c = sampled_checks::<Fp, _>(&f, n, samples, rng)?;
            match kernel_of_j(n, &f) {
                Ok(k) => (c, Some(k.len()), None),
                Err(e @ (Error::FieldTooSmall(_) | Error::InvalidParameter(_))) => (c, None, Some(e.to_string())),
                Err(e) => return Err(e),
            }
        }
    };
    Ok(UnitaryReport {
        n,
        field: field.to_string(),
        samples,
        phi_identities: checks.phi,
        gn_associative: checks.gn_assoc,
        cgroup_associative: checks.cg_assoc,
        c_conjugation_involutive: checks.involutive,
        quotient_consistent: checks.quotient,
        j_kills_central_element: checks.central,
        j_homomorphism: checks.hom,
        j_prime_round_trip: checks.round_trip,
        multiplier_matches_d: checks.multiplier,
        kernel_order,
        kernel_note,
    })
}
