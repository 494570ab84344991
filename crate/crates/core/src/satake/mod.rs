//! Unramified Satake parameters with half-integral powers of `p`.
//!
//! Frobenius is geometric throughout. [`SatakeParamGL::inverse_class`] is the
//! passage to arithmetic Frobenius (`p^{e/2} ↦ p^{-e/2}` on eigenvalues).

mod scalar;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraicity::{is_c_algebraic, is_l_algebraic, InfinitesimalParameter};
use crate::error::{check_len, Error, Result};
use crate::lattice::{parse_rational, RationalVector};
use crate::root_datum::{standard, GroupName};

pub use scalar::SqrtPScalar;
use scalar::twice;

/// Semisimple class in `GL_n(C)` given by its characteristic polynomial
/// `X^n + c_{n-1} X^{n-1} + … + c_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParam", into = "RawParam")]
pub struct SatakeParamGL {
    /// `coeffs[i]` is the coefficient of `X^{n-1-i}`.
    coeffs: Vec<SqrtPScalar>,
}

#[derive(Serialize, Deserialize)]
struct RawParam {
    n: usize,
    coeffs: Vec<SqrtPScalar>,
}

impl From<SatakeParamGL> for RawParam {
    fn from(s: SatakeParamGL) -> Self {
        RawParam { n: s.coeffs.len(), coeffs: s.coeffs }
    }
}

impl TryFrom<RawParam> for SatakeParamGL {
    type Error = Error;

    fn try_from(r: RawParam) -> Result<Self> {
        check_len(r.n, r.coeffs.len())?;
        SatakeParamGL::new(r.coeffs)
    }
}

impl SatakeParamGL {
    pub fn new(coeffs: Vec<SqrtPScalar>) -> Result<Self> {
        let last = coeffs.last().ok_or_else(|| Error::InvalidParameter("empty characteristic polynomial".into()))?;
        let p = last.prime();
        if let Some(c) = coeffs.iter().find(|c| c.prime() != p) {
            return Err(Error::PrimeMismatch(p, c.prime()));
        }
        if last.is_zero() {
            return Err(Error::InvalidParameter("constant coefficient is zero".into()));
        }
        Ok(SatakeParamGL { coeffs })
    }

    /// `∏ (X - t)` over the given eigenvalues.
    pub fn from_eigenvalues(eigen: &[SqrtPScalar]) -> Result<Self> {
        let first = eigen.first().ok_or_else(|| Error::InvalidParameter("no eigenvalues".into()))?;
        let p = first.prime();
        // poly[j] = coefficient of X^j, built up one linear factor at a time
        let mut poly = vec![SqrtPScalar::one(p)];
        for t in eigen {
            let mut next = vec![SqrtPScalar::zero(p); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] = next[j + 1].add(c)?;
                next[j] = next[j].sub(&c.mul(t)?)?;
            }
            poly = next;
        }
        poly.pop();
        poly.reverse();
        Self::new(poly)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn prime(&self) -> u64 {
        self.coeffs[0].prime()
    }

    pub fn coeffs(&self) -> &[SqrtPScalar] {
        &self.coeffs
    }

    /// Coefficient of `X^j` for `0 ≤ j ≤ n`.
    pub fn coeff_of_degree(&self, j: usize) -> SqrtPScalar {
        let n = self.n();
        if j == n {
            SqrtPScalar::one(self.prime())
        } else {
            self.coeffs[n - 1 - j].clone()
        }
    }

    /// Class of the inverse: `X^n P(1/X) / P(0)`.
    pub fn inverse_class(&self) -> Result<Self> {
        let n = self.n();
        let c0_inv = self.coeffs[n - 1].inv()?;
        let coeffs = (0..n).map(|i| self.coeff_of_degree(i + 1).mul(&c0_inv)).collect::<Result<_>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for SatakeParamGL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        write!(f, "X^{n}")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match n - 1 - i {
                0 => write!(f, " + ({c})")?,
                1 => write!(f, " + ({c})X")?,
                d => write!(f, " + ({c})X^{d}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Holomorphic,
    #[serde(alias = "maass")]
    MaassLanglandsTunnell,
}

/// Twists `|det|^s ⊗ π` of a weight `k` holomorphic newform or of a weight
/// zero Maass form with Laplace eigenvalue `1/4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct GL2FamilySpec {
    kind: FamilyKind,
    k: Option<i64>,
    s: BigRational,
    hecke: Vec<(u64, BigRational)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    kind: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<i64>,
    s: String,
    #[serde(default)]
    hecke: Vec<(u64, String)>,
}

impl From<GL2FamilySpec> for RawFamily {
    fn from(f: GL2FamilySpec) -> Self {
        RawFamily {
            kind: f.kind,
            k: f.k,
            s: f.s.to_string(),
            hecke: f.hecke.into_iter().map(|(p, a)| (p, a.to_string())).collect(),
        }
    }
}

impl TryFrom<RawFamily> for GL2FamilySpec {
    type Error = Error;

    fn try_from(r: RawFamily) -> Result<Self> {
        let hecke = r.hecke.iter().map(|(p, a)| Ok((*p, parse_rational(a)?))).collect::<Result<_>>()?;
        GL2FamilySpec::new(r.kind, r.k, parse_rational(&r.s)?, hecke)
    }
}

impl GL2FamilySpec {
    pub fn new(kind: FamilyKind, k: Option<i64>, s: BigRational, hecke: Vec<(u64, BigRational)>) -> Result<Self> {
        match (kind, k) {
            (FamilyKind::Holomorphic, None) => return Err(Error::InvalidParameter("holomorphic family needs a weight".into())),
            (FamilyKind::Holomorphic, Some(k)) if k < 2 => {
                return Err(Error::InvalidParameter(format!("weight {k} < 2")))
            }
            (FamilyKind::MaassLanglandsTunnell, Some(_)) => {
                return Err(Error::InvalidParameter("Maass family has no weight".into()))
            }
            _ => {}
        }
        let mut seen = std::collections::BTreeSet::new();
        for (p, _) in &hecke {
            if *p < 2 || !seen.insert(*p) {
                return Err(Error::InvalidParameter(format!("bad or repeated prime {p}")));
            }
        }
        Ok(GL2FamilySpec { kind, k, s, hecke })
    }

    pub fn holomorphic(k: i64, s: BigRational, hecke: Vec<(u64, BigRational)>) -> Result<Self> {
        Self::new(FamilyKind::Holomorphic, Some(k), s, hecke)
    }

    pub fn maass(s: BigRational) -> Self {
        GL2FamilySpec { kind: FamilyKind::MaassLanglandsTunnell, k: None, s, hecke: vec![] }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn weight(&self) -> Option<i64> {
        self.k
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    pub fn hecke(&self) -> &[(u64, BigRational)] {
        &self.hecke
    }

    pub fn with_s(&self, s: BigRational) -> Self {
        GL2FamilySpec { s, ..self.clone() }
    }

    fn a_p(&self, p: u64) -> Result<&BigRational> {
        self.hecke.iter().find(|(q, _)| *q == p).map(|(_, a)| a).ok_or(Error::UnknownPrime(p))
    }

    fn holomorphic_weight(&self) -> Result<i64> {
        match (self.kind, self.k) {
            (FamilyKind::Holomorphic, Some(k)) => Ok(k),
            _ => Err(Error::Unsupported("Hecke data is only modelled for holomorphic families".into())),
        }
    }

    /// `λ_σ` at the real place: `(s+k-3/2, s-1/2)` or `(s, s)`.
    pub fn infinitesimal_parameter(&self) -> InfinitesimalParameter {
        let half = BigRational::new(1.into(), 2.into());
        let lambda = match self.kind {
            FamilyKind::Holomorphic => {
                let k = BigRational::from_integer(self.k.unwrap_or(2).into());
                vec![&self.s + k - BigRational::new(3.into(), 2.into()), &self.s - half]
            }
            FamilyKind::MaassLanglandsTunnell => vec![self.s.clone(), self.s.clone()],
        };
        InfinitesimalParameter::real(RationalVector(lambda))
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `(a_p p^{2-k-s}, p^{2-k-2s})`.
pub fn hecke_eigenvalues_gl2(spec: &GL2FamilySpec, p: u64) -> Result<(SqrtPScalar, SqrtPScalar)> {
    let k = spec.holomorphic_weight()?;
    let a = spec.a_p(p)?;
    let t = SqrtPScalar::p_pow(p, &(rat(2 - k) - &spec.s))?.scale(a);
    let s = SqrtPScalar::p_pow(p, &(rat(2 - k) - rat(2) * &spec.s))?;
    Ok((t, s))
}

/// `X² - a_p p^{3/2-k-s} X + p^{2-k-2s}`.
pub fn satake_charpoly_gl2(spec: &GL2FamilySpec, p: u64) -> Result<SatakeParamGL> {
    let k = spec.holomorphic_weight()?;
    let a = spec.a_p(p)?;
    let mid = SqrtPScalar::p_pow(p, &(BigRational::new(3.into(), 2.into()) - rat(k) - &spec.s))?.scale(&-a);
    let constant = SqrtPScalar::p_pow(p, &(rat(2 - k) - rat(2) * &spec.s))?;
    SatakeParamGL::new(vec![mid, constant])
}

/// Every nonzero value is a rational times an integral power of its prime.
pub fn integral_exponent_test(values: &[SqrtPScalar]) -> bool {
    values.iter().all(|v| v.is_zero() || v.is_rational())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyClassification {
    pub l_algebraic: bool,
    pub c_algebraic: bool,
    pub l_arithmetic: bool,
    pub c_arithmetic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn is_half_integer(s: &BigRational) -> bool {
    (s * rat(2)).is_integer()
}

/// Algebraicity and arithmeticity of the twist `π_s`.
///
/// The algebraicity flags come from closed forms and are checked against
/// the infinitesimal parameter on `GL_2`. The arithmeticity flags are the
/// known equivalences with algebraicity for these families; for a
/// holomorphic family with nonzero Hecke data the L-flag is also compared
/// with [`integral_exponent_test`] on the Satake traces.
pub fn classify_gl2_family(spec: &GL2FamilySpec) -> Result<FamilyClassification> {
    let s = &spec.s;
    if !is_half_integer(s) {
        return Ok(FamilyClassification {
            l_algebraic: false,
            c_algebraic: false,
            l_arithmetic: false,
            c_arithmetic: false,
            note: Some(Error::NonRational(format!("s = {s} is not a half-integer")).to_string()),
        });
    }
    let s_integral = s.is_integer();
    let (l, c) = match spec.kind {
        FamilyKind::Holomorphic => (!s_integral, s_integral),
        FamilyKind::MaassLanglandsTunnell => (s_integral, !s_integral),
    };

    let (gl2, _) = standard(GroupName::GL, 2)?;
    let lambda = spec.infinitesimal_parameter();
    let (l2, c2) = (is_l_algebraic(&lambda, &gl2)?, is_c_algebraic(&lambda, &gl2)?);
    if (l, c) != (l2, c2) {
        return Err(Error::ConstructionFailure(format!(
            "closed form gives (L, C) = ({l}, {c}) but λ_σ = {:?} gives ({l2}, {c2})",
            lambda.lambda_sigma()
        )));
    }

    if spec.kind == FamilyKind::Holomorphic {
        let mut traces = Vec::new();
        for (p, a) in &spec.hecke {
            if !a.is_zero() {
                traces.push(satake_charpoly_gl2(spec, *p)?.coeffs[0].clone());
            }
        }
        if !traces.is_empty() && integral_exponent_test(&traces) != l {
            return Err(Error::ConstructionFailure("Satake traces disagree with the L-arithmetic criterion".into()));
        }
    }

    Ok(FamilyClassification { l_algebraic: l, c_algebraic: c, l_arithmetic: l, c_arithmetic: c, note: None })
}

/// `log_p q` when `q` is a power of `p`.
fn residue_degree(p: u64, q: u64) -> Result<i64> {
    let mut f = 0;
    let mut x = q;
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
        f += 1;
    }
    if x != 1 || f == 0 {
        return Err(Error::InvalidParameter(format!("{q} is not a power of {p}")));
    }
    Ok(f)
}

/// `q^{-s m}` as a scalar over `p`.
fn q_power(p: u64, q: u64, s: &BigRational, m: &BigInt) -> Result<SqrtPScalar> {
    let f = residue_degree(p, q)?;
    let e = -twice(s)? * f;
    let m = i64::try_from(m).map_err(|_| Error::InvalidParameter("exponent too large".into()))?;
    Ok(SqrtPScalar::p_pow_half(p, e * m))
}

/// Twist of a torus parameter by `|ξ|^s`: coordinate `j` is multiplied by
/// `q^{-s ξ_j}`.
pub fn unramified_twist_torus(values: &[SqrtPScalar], xi: &[BigInt], s: &BigRational, q: u64) -> Result<Vec<SqrtPScalar>> {
    check_len(values.len(), xi.len())?;
    values.iter().zip(xi).map(|(v, m)| v.mul(&q_power(v.prime(), q, s, m)?)).collect()
}

/// Twist of a `GL_n` class by `|ξ|^s` where `ξ = det^m`, given as the
/// constant vector `(m, …, m)`.
///
/// The coefficient of `X^{n-i}` is multiplied by `q^{-s m i}`.
pub fn unramified_twist_gl(param: &SatakeParamGL, xi: &[BigInt], s: &BigRational, q: u64) -> Result<SatakeParamGL> {
    check_len(param.n(), xi.len())?;
    let m = &xi[0];
    if xi.iter().any(|x| x != m) {
        return Err(Error::InvalidParameter("a character of GL_n is a power of det".into()));
    }
    let p = param.prime();
    let coeffs = param
        .coeffs
        .iter()
        .enumerate()
        .map(|(idx, c)| c.mul(&q_power(p, q, s, &(m * BigInt::from(idx + 1)))?))
        .collect::<Result<_>>()?;
    SatakeParamGL::new(coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinedOver {
    pub coeffs_in_field: bool,
    /// Companion matrix in `GL_n(Q)` with the given characteristic polynomial.
    pub companion: Option<Vec<Vec<BigRational>>>,
}

/// Whether the class contains a rational matrix.
pub fn defined_over_equivalence_gln(param: &SatakeParamGL) -> DefinedOver {
    let n = param.n();
    let rational: Option<Vec<BigRational>> = (0..n).map(|j| param.coeff_of_degree(j).to_rational()).collect();
    let Some(c) = rational else {
        return DefinedOver { coeffs_in_field: false, companion: None };
    };
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        if i > 0 {
            m[i][i - 1] = BigRational::one();
        }
        m[i][n - 1] = -&c[i];
    }
    DefinedOver { coeffs_in_field: true, companion: Some(m) }
}

/// Renders a rational matrix with entries as strings.
pub fn rational_rows(m: &[Vec<BigRational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// The trivial representation of `GL_n`: eigenvalues `p^{(n-1)/2}, …, p^{-(n-1)/2}`.
pub fn trivial_representation(n: usize, p: u64) -> Result<SatakeParamGL> {
    let top = n as i64 - 1;
    let eigen: Vec<_> = (0..n as i64).map(|i| SqrtPScalar::p_pow_half(p, top - 2 * i)).collect();
    SatakeParamGL::from_eigenvalues(&eigen)
}

impl FamilyClassification {
    pub fn any(&self) -> bool {
        self.l_algebraic || self.c_algebraic
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn holo(k: i64, s: BigRational, hecke: &[(u64, i64)]) -> GL2FamilySpec {
        GL2FamilySpec::holomorphic(k, s, hecke.iter().map(|&(p, a)| (p, rat(a))).collect()).unwrap()
    }

    /// Characteristic polynomial by Faddeev–LeVerrier, returned as the
    /// coefficients of `X^{n-1}, …, X^0`.
    fn charpoly(m: &[Vec<BigRational>]) -> Vec<BigRational> {
        let n = m.len();
        let mul = |a: &[Vec<BigRational>], b: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
        };
        let mut mk = vec![vec![BigRational::zero(); n]; n];
        let mut c = BigRational::one();
        let mut out = Vec::new();
        for k in 1..=n {
            let mut next = mul(m, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c;
            }
            mk = next;
            let am = mul(m, &mk);
            let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
            c = -tr / rat(k as i64);
            out.push(c.clone());
        }
        out
    }

    #[test]
    fn hecke_eigenvalue_examples() {
        let (t, s) = hecke_eigenvalues_gl2(&holo(2, rat(0), &[(5, 1)]), 5).unwrap();
        assert_eq!((t, s), (SqrtPScalar::one(5), SqrtPScalar::one(5)));

        let (t, s) = hecke_eigenvalues_gl2(&holo(12, rat(0), &[(2, -24)]), 2).unwrap();
        assert_eq!(t, SqrtPScalar::rational(2, q(-24, 1 << 10)));
        // p^{2-k-2s} = 2^{-10}
        assert_eq!(s, SqrtPScalar::rational(2, q(1, 1 << 10)));

        let (t, s) = hecke_eigenvalues_gl2(&holo(2, q(1, 2), &[(3, 0)]), 3).unwrap();
        assert!(t.is_zero());
        assert_eq!(s, SqrtPScalar::rational(3, q(1, 3)));

        assert_eq!(hecke_eigenvalues_gl2(&holo(2, rat(0), &[(5, 1)]), 7), Err(Error::UnknownPrime(7)));
        assert!(matches!(hecke_eigenvalues_gl2(&GL2FamilySpec::maass(rat(0)), 5), Err(Error::Unsupported(_))));
    }

    #[test]
    fn charpoly_examples() {
        let c = satake_charpoly_gl2(&holo(2, q(-1, 2), &[(7, 3)]), 7).unwrap();
        assert_eq!(c.coeffs(), &[SqrtPScalar::from_i64(7, -3), SqrtPScalar::from_i64(7, 7)]);

        // trace T_p / √p, determinant S_p
        let spec = holo(12, q(1, 2), &[(2, -24)]);
        let (t, s) = hecke_eigenvalues_gl2(&spec, 2).unwrap();
        let c = satake_charpoly_gl2(&spec, 2).unwrap();
        assert_eq!(c.coeffs()[0], t.mul(&SqrtPScalar::p_pow_half(2, -1)).unwrap().neg());
        assert_eq!(c.coeffs()[1], s);
    }

    #[test]
    fn trivial_representation_is_not_rational() {
        for p in [2, 3, 5] {
            let triv = trivial_representation(2, p).unwrap();
            // trace √p + 1/√p = (p+1)/√p
            let trace = triv.coeffs()[0].neg();
            assert_eq!(trace, SqrtPScalar::new(p, q(p as i64 + 1, p as i64), 1));
            assert_eq!(triv.coeffs()[1], SqrtPScalar::one(p));
            let d = defined_over_equivalence_gln(&triv);
            assert!(!d.coeffs_in_field && d.companion.is_none());
        }
        let traces: Vec<_> = [2, 3, 5].iter().map(|&p| trivial_representation(2, p).unwrap().coeffs()[0].clone()).collect();
        assert!(!integral_exponent_test(&traces));
    }

    #[test]
    fn half_det_twist_in_both_orientations() {
        for p in [2u64, 3, 5, 11] {
            let triv = trivial_representation(2, p).unwrap();
            let twisted = unramified_twist_gl(&triv, &int_vec(&[1, 1]), &q(1, 2), p).unwrap();
            let pi = rat(p as i64);
            let geometric = SatakeParamGL::from_eigenvalues(&[SqrtPScalar::one(p), SqrtPScalar::rational(p, pi.recip())]).unwrap();
            assert_eq!(twisted, geometric);
            // arithmetic Frobenius: (X-1)(X-p)
            let arith = twisted.inverse_class().unwrap();
            let expected = SatakeParamGL::from_eigenvalues(&[SqrtPScalar::one(p), SqrtPScalar::from_i64(p, p as i64)]).unwrap();
            assert_eq!(arith, expected);
            let d = defined_over_equivalence_gln(&arith);
            assert!(d.coeffs_in_field);
            let comp = d.companion.unwrap();
            assert_eq!(comp, vec![vec![rat(0), -pi.clone()], vec![rat(1), rat(1) + &pi]]);
            assert_eq!(charpoly(&comp), vec![-(rat(1) + &pi), pi]);
        }
    }

    #[test]
    fn x_squared_plus_one() {
        let c = SatakeParamGL::new(vec![SqrtPScalar::zero(5), SqrtPScalar::one(5)]).unwrap();
        let d = defined_over_equivalence_gln(&c);
        assert!(d.coeffs_in_field);
        assert_eq!(charpoly(&d.companion.unwrap()), vec![rat(0), rat(1)]);
    }

    #[test]
    fn companion_has_right_charpoly() {
        let coeffs = vec![SqrtPScalar::from_i64(3, 4), SqrtPScalar::rational(3, q(-2, 9)), SqrtPScalar::from_i64(3, 7)];
        let param = SatakeParamGL::new(coeffs.clone()).unwrap();
        let m = defined_over_equivalence_gln(&param).companion.unwrap();
        let expected: Vec<_> = coeffs.iter().map(|c| c.to_rational().unwrap()).collect();
        assert_eq!(charpoly(&m), expected);
    }

    #[test]
    fn integral_exponent_examples() {
        assert!(integral_exponent_test(&[SqrtPScalar::one(2), SqrtPScalar::from_i64(3, 3), SqrtPScalar::from_i64(5, 25)]));
        let spec = holo(4, q(1, 2), &[(2, 3), (3, -5), (5, 7)]);
        let mids: Vec<_> = [2, 3, 5].iter().map(|&p| satake_charpoly_gl2(&spec, p).unwrap().coeffs()[0].clone()).collect();
        assert!(integral_exponent_test(&mids));
        // a_p p^{1-k}
        assert_eq!(mids[0], SqrtPScalar::rational(2, q(-3, 8)));
        assert!(integral_exponent_test(&[SqrtPScalar::zero(7)]));
    }

    #[test]
    fn classification_examples() {
        let c = classify_gl2_family(&holo(2, rat(0), &[(5, 1)])).unwrap();
        assert_eq!((c.l_algebraic, c.c_algebraic, c.l_arithmetic, c.c_arithmetic), (false, true, false, true));
        for k in [2, 4, 6, 12] {
            let c = classify_gl2_family(&holo(k, rat(1 - k / 2), &[])).unwrap();
            assert!(c.c_algebraic && c.c_arithmetic && !c.l_algebraic);
        }
        let c = classify_gl2_family(&GL2FamilySpec::maass(rat(0))).unwrap();
        assert_eq!((c.l_algebraic, c.c_algebraic, c.l_arithmetic, c.c_arithmetic), (true, false, true, false));
        let c = classify_gl2_family(&GL2FamilySpec::maass(q(1, 2))).unwrap();
        assert!(c.c_algebraic && !c.l_algebraic);
        let c = classify_gl2_family(&holo(3, q(1, 3), &[])).unwrap();
        assert!(!c.any() && !c.l_arithmetic && !c.c_arithmetic);
        assert!(c.note.unwrap().contains("half-integer"));
    }

    #[test]
    fn truth_table_matches_infinitesimal_parameter() {
        let (gl2, _) = standard(GroupName::GL, 2).unwrap();
        for k in 2..=12 {
            for twice_s in -4..=4 {
                let spec = holo(k, q(twice_s, 2), &[(2, 1), (3, -1)]);
                let c = classify_gl2_family(&spec).unwrap();
                let lambda = spec.infinitesimal_parameter();
                assert_eq!(c.l_algebraic, is_l_algebraic(&lambda, &gl2).unwrap());
                assert_eq!(c.c_algebraic, is_c_algebraic(&lambda, &gl2).unwrap());
                // λ(H) = k - 1, λ(Z) = 2s + k - 2
                let l = &lambda.lambda_sigma().0;
                assert_eq!(&l[0] - &l[1], rat(k - 1));
                assert_eq!(&l[0] + &l[1], q(twice_s, 1) + rat(k - 2));
            }
        }
    }

    #[test]
    fn twist_commutes_with_charpoly() {
        let spec = holo(6, q(-1, 2), &[(3, 5)]);
        let base = satake_charpoly_gl2(&spec, 3).unwrap();
        for twice_t in -4..=4 {
            let t = q(twice_t, 2);
            let twisted = unramified_twist_gl(&base, &int_vec(&[1, 1]), &t, 3).unwrap();
            let direct = satake_charpoly_gl2(&spec.with_s(spec.s() + &t), 3).unwrap();
            assert_eq!(twisted, direct);
        }
        assert_eq!(unramified_twist_gl(&base, &int_vec(&[1, 1]), &rat(0), 3).unwrap(), base);
    }

    #[test]
    fn torus_twist() {
        let v = vec![SqrtPScalar::one(5), SqrtPScalar::from_i64(5, 2)];
        let out = unramified_twist_torus(&v, &int_vec(&[1, -2]), &q(1, 2), 25).unwrap();
        assert_eq!(out, vec![SqrtPScalar::rational(5, q(1, 5)), SqrtPScalar::from_i64(5, 50)]);
        assert!(matches!(unramified_twist_torus(&v, &int_vec(&[1]), &rat(1), 5), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(unramified_twist_torus(&v, &int_vec(&[1, 1]), &rat(1), 6), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn family_json() {
        let s = r#"{"kind":"holomorphic","k":12,"s":"1/2","hecke":[[2,"-24"]]}"#;
        let spec: GL2FamilySpec = serde_json::from_str(s).unwrap();
        assert_eq!(spec, holo(12, q(1, 2), &[(2, -24)]));
        assert_eq!(serde_json::to_string(&spec).unwrap(), s);
        let m: GL2FamilySpec = serde_json::from_str(r#"{"kind":"maass","s":"0"}"#).unwrap();
        assert_eq!(m.kind(), FamilyKind::MaassLanglandsTunnell);
        assert!(serde_json::from_str::<GL2FamilySpec>(r#"{"kind":"holomorphic","k":1,"s":"0"}"#).is_err());
        let p = trivial_representation(3, 2).unwrap();
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<SatakeParamGL>(&js).unwrap(), p);
    }

    #[test]
    fn display() {
        let p = SatakeParamGL::from_eigenvalues(&[SqrtPScalar::one(3), SqrtPScalar::from_i64(3, 3)]).unwrap();
        assert_eq!(p.to_string(), "X^2 + (-4)X + (3)");
    }
}
