//! Archimedean infinitesimal parameters and their algebraicity.

mod conjugation;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::lattice::{dot, IntVector, LatticeMap, RationalVector};
use crate::lgroup_cgroup::{build_g_tilde, is_twisting_element};
use crate::root_datum::{weyl_group, BasedRootDatum, GaloisActionData};

pub use conjugation::{random_conjugation_fixture, ConjugationElement, ConjugationResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Real,
    Complex,
}

/// The pair `(λ_σ, λ_τ)` in `X* ⊗ Q` attached to an archimedean place.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParameter")]
pub struct InfinitesimalParameter {
    lambda_sigma: RationalVector,
    lambda_tau: RationalVector,
    place: PlaceKind,
}

#[derive(Deserialize)]
struct RawParameter {
    lambda_sigma: RationalVector,
    lambda_tau: RationalVector,
    place: PlaceKind,
}

impl TryFrom<RawParameter> for InfinitesimalParameter {
    type Error = Error;

    fn try_from(r: RawParameter) -> Result<Self> {
        Self::new(r.lambda_sigma, r.lambda_tau, r.place)
    }
}

impl InfinitesimalParameter {
    /// Requires `λ_σ - λ_τ` integral.
    pub fn new(lambda_sigma: RationalVector, lambda_tau: RationalVector, place: PlaceKind) -> Result<Self> {
        check_len(lambda_sigma.len(), lambda_tau.len())?;
        if !lambda_sigma.sub(&lambda_tau)?.is_integral() {
            return Err(Error::InvalidParameter(format!(
                "λ_σ - λ_τ = {} is not integral",
                lambda_sigma.sub(&lambda_tau)?
            )));
        }
        Ok(InfinitesimalParameter { lambda_sigma, lambda_tau, place })
    }

    /// `λ_σ = λ_τ = λ` at a real place.
    pub fn real(lambda: RationalVector) -> Self {
        InfinitesimalParameter { lambda_sigma: lambda.clone(), lambda_tau: lambda, place: PlaceKind::Real }
    }

    pub fn lambda_sigma(&self) -> &RationalVector {
        &self.lambda_sigma
    }

    pub fn lambda_tau(&self) -> &RationalVector {
        &self.lambda_tau
    }

    pub fn place(&self) -> PlaceKind {
        self.place
    }

    pub fn rank(&self) -> usize {
        self.lambda_sigma.len()
    }

    fn map(&self, f: impl Fn(&RationalVector) -> Result<RationalVector>) -> Result<Self> {
        Self::new(f(&self.lambda_sigma)?, f(&self.lambda_tau)?, self.place)
    }

    /// Lexicographically least representative of the diagonal Weyl orbit;
    /// at complex places the pair is also unordered.
    pub fn canonical(&self, rd: &BasedRootDatum) -> Result<Self> {
        check_len(rd.rank(), self.rank())?;
        let mut best: Option<(RationalVector, RationalVector)> = None;
        for w in weyl_group(rd)? {
            let a = RationalVector(w.mul_rat_vec(&self.lambda_sigma.0)?);
            let b = RationalVector(w.mul_rat_vec(&self.lambda_tau.0)?);
            let mut cands = vec![(a.clone(), b.clone())];
            if self.place == PlaceKind::Complex {
                cands.push((b, a));
            }
            for c in cands {
                if best.as_ref().is_none_or(|x| c < *x) {
                    best = Some(c);
                }
            }
        }
        let (a, b) = best.expect("Weyl group contains the identity");
        Self::new(a, b, self.place)
    }
}

pub fn is_l_algebraic(p: &InfinitesimalParameter, rd: &BasedRootDatum) -> Result<bool> {
    check_len(rd.rank(), p.rank())?;
    let s = p.lambda_sigma.is_integral();
    debug_assert_eq!(s, p.lambda_tau.is_integral());
    Ok(s)
}

pub fn is_c_algebraic(p: &InfinitesimalParameter, rd: &BasedRootDatum) -> Result<bool> {
    check_len(rd.rank(), p.rank())?;
    let delta = rd.half_sum_positive_roots()?;
    let s = p.lambda_sigma.sub(&delta)?.is_integral();
    debug_assert_eq!(s, p.lambda_tau.sub(&delta)?.is_integral());
    Ok(s)
}

/// Shifts both components by `shift`, which must pair to zero with every
/// simple coroot, be Galois-stable, and lie in `½X*`.
pub fn twist_parameter(
    p: &InfinitesimalParameter,
    rd: &BasedRootDatum,
    galois: &GaloisActionData,
    shift: &RationalVector,
) -> Result<InfinitesimalParameter> {
    check_len(rd.rank(), shift.len())?;
    check_len(rd.rank(), p.rank())?;
    for c in rd.simple_coroots() {
        if !shift.pair(&c)?.is_zero() {
            return Err(Error::InvalidShift(format!("{shift} pairs nontrivially with a simple coroot")));
        }
    }
    for m in galois.matrices() {
        if RationalVector(m.mul_rat_vec(&shift.0)?) != *shift {
            return Err(Error::InvalidShift(format!("{shift} is not Galois-stable")));
        }
    }
    if !shift.scale(&BigRational::from_integer(2.into())).is_integral() {
        return Err(Error::InvalidShift(format!("{shift} is not in ½X*")));
    }
    p.map(|v| v.add(shift))
}

/// Twist by `θ - δ` for a twisting element `θ`; C-algebraicity of the input
/// becomes L-algebraicity of the output.
pub fn twist_by_twisting_element(
    p: &InfinitesimalParameter,
    rd: &BasedRootDatum,
    galois: &GaloisActionData,
    theta: &[BigInt],
) -> Result<InfinitesimalParameter> {
    if !is_twisting_element(rd, galois, theta)? {
        return Err(Error::InvalidShift("θ is not a twisting element".into()));
    }
    let shift = RationalVector::from_ints(theta).sub(&rd.half_sum_positive_roots()?)?;
    let out = twist_parameter(p, rd, galois, &shift)?;
    if is_c_algebraic(p, rd)? != is_l_algebraic(&out, rd)? {
        return Err(Error::ConstructionFailure("twist by θ - δ does not exchange the two notions".into()));
    }
    Ok(out)
}

/// `λ_σ = λ_τ = µ + δ` for a dominant integral weight `µ`.
pub fn infchar_of_algebraic_rep(mu: &[BigInt], rd: &BasedRootDatum) -> Result<InfinitesimalParameter> {
    check_len(rd.rank(), mu.len())?;
    for c in rd.simple_coroots() {
        if dot(mu, &c).is_negative() {
            return Err(Error::NonDominant(format!("{} pairs negatively with a simple coroot", crate::root_datum::fmt_vec(mu))));
        }
    }
    let p = InfinitesimalParameter::real(RationalVector::from_ints(mu).add(&rd.half_sum_positive_roots()?)?);
    if !is_c_algebraic(&p, rd)? {
        return Err(Error::ConstructionFailure("infinitesimal character is not C-algebraic".into()));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HodgeTateRoute {
    /// Orbit of `λ_σ` in `X*(T)`.
    L,
    /// Orbit of `λ̃_σ + ½ξ` in `X*(T̃)`.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTatePrediction {
    pub route: HodgeTateRoute,
    /// Sorted, deduplicated.
    pub orbit: Vec<IntVector>,
}

fn orbit(rd: &BasedRootDatum, v: &IntVector) -> Result<Vec<IntVector>> {
    let mut out = weyl_group(rd)?.iter().map(|w| w.mul_vec(v)).collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Uses the L route when possible, otherwise the C-group route.
pub fn hodge_tate_prediction(
    p: &InfinitesimalParameter,
    rd: &BasedRootDatum,
    galois: &GaloisActionData,
) -> Result<HodgeTatePrediction> {
    if is_l_algebraic(p, rd)? {
        let v = p.lambda_sigma.to_integral().expect("integral");
        return Ok(HodgeTatePrediction { route: HodgeTateRoute::L, orbit: orbit(rd, &v)? });
    }
    if is_c_algebraic(p, rd)? {
        return hodge_tate_via_c_group(p, rd, galois);
    }
    Err(Error::NotAlgebraic)
}

/// Orbit of `λ̃_σ + ½ξ` under the Weyl group of `G̃`, for C-algebraic input.
pub fn hodge_tate_via_c_group(
    p: &InfinitesimalParameter,
    rd: &BasedRootDatum,
    galois: &GaloisActionData,
) -> Result<HodgeTatePrediction> {
    if !is_c_algebraic(p, rd)? {
        return Err(Error::NotAlgebraic);
    }
    let pkg = build_g_tilde(rd, galois)?;
    let lifted = pkg.projection.apply_rational(&p.lambda_sigma)?;
    let half_xi = RationalVector::from_ints(&pkg.xi).scale(&BigRational::new(1.into(), 2.into()));
    let v = lifted
        .add(&half_xi)?
        .to_integral()
        .ok_or_else(|| Error::ConstructionFailure("λ̃ + ½ξ is not integral".into()))?;
    Ok(HodgeTatePrediction { route: HodgeTateRoute::C, orbit: orbit(&pkg.g_tilde.datum, &v)? })
}

/// Pushes both components forward along a map of dual-torus cocharacter
/// lattices.
pub fn transfer_parameter(p: &InfinitesimalParameter, hom: &LatticeMap) -> Result<InfinitesimalParameter> {
    check_len(hom.source().rank, p.rank())?;
    let out = p.map(|v| hom.apply_rational(v))?;
    if p.lambda_sigma.is_integral() && !out.lambda_sigma.is_integral() {
        return Err(Error::ConstructionFailure("transfer lost integrality".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_vec, IntMatrix};
    use crate::root_datum::{standard, GroupName};

    fn gl2() -> (BasedRootDatum, GaloisActionData) {
        standard(GroupName::GL, 2).unwrap()
    }

    fn real(v: &[(i64, i64)]) -> InfinitesimalParameter {
        InfinitesimalParameter::real(RationalVector::from_fracs(v))
    }

    #[test]
    fn gl2_examples() {
        let (rd, _) = gl2();
        let det_half = real(&[(1, 1), (0, 1)]);
        assert!(is_l_algebraic(&det_half, &rd).unwrap());
        assert!(!is_c_algebraic(&det_half, &rd).unwrap());
        let trivial = real(&[(1, 2), (-1, 2)]);
        assert!(!is_l_algebraic(&trivial, &rd).unwrap());
        assert!(is_c_algebraic(&trivial, &rd).unwrap());
        assert!(is_l_algebraic(&real(&[(0, 1), (0, 1)]), &rd).unwrap());
    }

    #[test]
    fn weight_two_discrete_series() {
        let (rd, _) = gl2();
        let p = InfinitesimalParameter::new(
            RationalVector::from_fracs(&[(1, 2), (-1, 2)]),
            RationalVector::from_fracs(&[(-1, 2), (1, 2)]),
            PlaceKind::Real,
        )
        .unwrap();
        assert!(is_c_algebraic(&p, &rd).unwrap());
        assert!(!is_l_algebraic(&p, &rd).unwrap());
    }

    #[test]
    fn non_integral_difference_rejected() {
        let r = InfinitesimalParameter::new(
            RationalVector::from_fracs(&[(1, 2), (0, 1)]),
            RationalVector::from_fracs(&[(0, 1), (0, 1)]),
            PlaceKind::Complex,
        );
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn sl2_notions_coincide() {
        let rd = standard(GroupName::SL, 2).unwrap().0;
        for num in -6..=6 {
            for den in [1, 2, 3] {
                let p = real(&[(num, den)]);
                assert_eq!(is_l_algebraic(&p, &rd).unwrap(), is_c_algebraic(&p, &rd).unwrap());
            }
        }
    }

    #[test]
    fn twist_examples() {
        let (rd, g) = gl2();
        let trivial = real(&[(1, 2), (-1, 2)]);
        let shift = RationalVector::from_fracs(&[(1, 2), (1, 2)]);
        let out = twist_parameter(&trivial, &rd, &g, &shift).unwrap();
        assert_eq!(out, real(&[(1, 1), (0, 1)]));
        assert!(is_l_algebraic(&out, &rd).unwrap());
        assert_eq!(twist_by_twisting_element(&trivial, &rd, &g, &int_vec(&[1, 0])).unwrap(), out);
        assert_eq!(twist_parameter(&trivial, &rd, &g, &RationalVector::zeros(2)).unwrap(), trivial);
        let bad = RationalVector::from_fracs(&[(1, 2), (0, 1)]);
        assert!(matches!(twist_parameter(&trivial, &rd, &g, &bad), Err(Error::InvalidShift(_))));
        let third = RationalVector::from_fracs(&[(1, 3), (1, 3)]);
        assert!(matches!(twist_parameter(&trivial, &rd, &g, &third), Err(Error::InvalidShift(_))));
    }

    #[test]
    fn holomorphic_family_flips() {
        let (rd, g) = gl2();
        let k = 2;
        for twice_s in -6..=6i64 {
            // λ = (s + k - 3/2, s - 1/2)
            let p = real(&[(twice_s + 2 * k - 3, 2), (twice_s - 1, 2)]);
            let shifted = twist_parameter(&p, &rd, &g, &RationalVector::from_fracs(&[(1, 2), (1, 2)])).unwrap();
            assert_eq!(is_l_algebraic(&shifted, &rd).unwrap(), twice_s % 2 == 0);
        }
    }

    #[test]
    fn infchar_examples() {
        let (rd, _) = gl2();
        assert_eq!(infchar_of_algebraic_rep(&int_vec(&[0, 0]), &rd).unwrap(), real(&[(1, 2), (-1, 2)]));
        let p = infchar_of_algebraic_rep(&int_vec(&[1, 0]), &rd).unwrap();
        assert_eq!(p, real(&[(3, 2), (-1, 2)]));
        assert!(!is_l_algebraic(&p, &rd).unwrap());
        assert!(matches!(infchar_of_algebraic_rep(&int_vec(&[0, 1]), &rd), Err(Error::NonDominant(_))));
        let t = BasedRootDatum::torus(2);
        let p = infchar_of_algebraic_rep(&int_vec(&[3, -1]), &t).unwrap();
        assert!(is_l_algebraic(&p, &t).unwrap() && is_c_algebraic(&p, &t).unwrap());
    }

    #[test]
    fn hodge_tate_examples() {
        let (rd, g) = gl2();
        let ht = hodge_tate_prediction(&real(&[(1, 1), (0, 1)]), &rd, &g).unwrap();
        assert_eq!(ht.route, HodgeTateRoute::L);
        assert_eq!(ht.orbit, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        let ht = hodge_tate_prediction(&real(&[(0, 1), (0, 1)]), &rd, &g).unwrap();
        assert_eq!(ht.orbit, vec![int_vec(&[0, 0])]);
        assert!(matches!(hodge_tate_prediction(&real(&[(1, 3), (1, 3)]), &rd, &g), Err(Error::NotAlgebraic)));

        let (pgl2, g1) = standard(GroupName::PGL, 2).unwrap();
        let trivial = real(&[(1, 2)]);
        let ht = hodge_tate_prediction(&trivial, &pgl2, &g1).unwrap();
        assert_eq!(ht.route, HodgeTateRoute::C);
        assert_eq!(ht.orbit.len(), 2);
        assert!(ht.orbit.iter().all(|v| v.len() == 2));
        // agrees with i(λ - δ) + θ
        let pkg = build_g_tilde(&pgl2, &g1).unwrap();
        let alt: IntVector = pkg.theta.clone();
        assert!(ht.orbit.contains(&alt));
    }

    #[test]
    fn transfer_examples() {
        let p = real(&[(1, 1)]);
        assert_eq!(transfer_parameter(&p, &LatticeMap::identity(1)).unwrap(), p);
        let adjoint = LatticeMap::from_matrix(IntMatrix::from_i64(3, 1, &[2, 0, -2]));
        let out = transfer_parameter(&p, &adjoint).unwrap();
        assert_eq!(out, real(&[(2, 1), (0, 1), (-2, 1)]));
        let zero = LatticeMap::from_matrix(IntMatrix::zeros(2, 1));
        let out = transfer_parameter(&real(&[(1, 2)]), &zero).unwrap();
        assert!(out.lambda_sigma().is_integral());
    }

    #[test]
    fn canonical_forms() {
        let (rd, _) = gl2();
        let p = real(&[(1, 1), (3, 1)]);
        assert_eq!(p.canonical(&rd).unwrap(), real(&[(1, 1), (3, 1)]));
        assert_eq!(real(&[(3, 1), (1, 1)]).canonical(&rd).unwrap(), real(&[(1, 1), (3, 1)]));
        let c = InfinitesimalParameter::new(
            RationalVector::from_i64(&[2, 0]),
            RationalVector::from_i64(&[0, 1]),
            PlaceKind::Complex,
        )
        .unwrap();
        let canon = c.canonical(&rd).unwrap();
        assert_eq!(canon.lambda_sigma(), &RationalVector::from_i64(&[0, 1]));
        assert_eq!(canon.lambda_tau(), &RationalVector::from_i64(&[2, 0]));
    }

    #[test]
    fn json_round_trip() {
        let p = real(&[(1, 2), (-1, 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"lambda_sigma":["1/2","-1/2"],"lambda_tau":["1/2","-1/2"],"place":"real"}"#);
        assert_eq!(serde_json::from_str::<InfinitesimalParameter>(&s).unwrap(), p);
        let bad = r#"{"lambda_sigma":["1/2"],"lambda_tau":["0"],"place":"complex"}"#;
        assert!(serde_json::from_str::<InfinitesimalParameter>(bad).is_err());
    }
}
