use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    cokernel_invariants, dot, pullback_over_quotient, pushout_lattice, smith_normal_form, solve_integer,
    IntMatrix, IntVector, LatticeMap,
};
use crate::root_datum::{derived_covers, dual_action, BasedRootDatum, GaloisActionData, GroupDatum, LGroupData};

use super::twisting::{check_box, fixed_affine_system, is_twisting_element};

/// The central extension `1 -> Gm -> G̃ -> G -> 1` at the level of
/// character lattices, with its canonical twisting element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPackage {
    pub g_tilde: GroupDatum,
    pub theta: IntVector,
    /// The character `G̃ -> Gm` restricting to squaring on the central `Gm`.
    pub xi: IntVector,
    /// Cocharacter of the central `Gm`; pairing with it is `X*(T̃) -> Z`.
    pub gm_cochar: IntVector,
    /// `X*(T) -> X*(T̃)`.
    pub projection: LatticeMap,
    /// `2δ` reduced to `{0,1}` entries.
    pub e_class: IntVector,
    /// Sum of the positive roots of `G`.
    pub two_delta: IntVector,
    pub c_group: LGroupData,
}

/// Integer solution of `a x = b` when `a` has full column rank.
fn solve_exact(a: &IntMatrix, b: &[BigInt]) -> Result<IntVector> {
    let rhs: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
    solve_integer(a, &rhs)?
        .map(|s| s.particular)
        .ok_or_else(|| Error::ConstructionFailure("expected an integral solution".into()))
}

/// Integer `r` with `q r = I` for a surjective `q`.
fn right_inverse(q: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(q);
    let k = q.rows();
    if snf.diagonal().len() != k || snf.diagonal().iter().any(|d| !d.is_one()) {
        return Err(Error::ConstructionFailure("quotient map is not surjective".into()));
    }
    let mut ident = IntMatrix::zeros(q.cols(), k);
    for i in 0..k {
        ident[(i, i)] = BigInt::one();
    }
    Ok(&(&snf.v * &ident) * &snf.u)
}

fn permutation_matrix(perm: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(perm.len(), perm.len());
    for (i, &j) in perm.iter().enumerate() {
        m[(j, i)] = BigInt::one();
    }
    m
}

fn fail(what: &str) -> Error {
    Error::ConstructionFailure(what.to_string())
}

/// Builds `G̃`, `θ`, `ξ`, the class `e` and the C-group `ᴸG̃`.
pub fn build_g_tilde(rd: &BasedRootDatum, galois: &GaloisActionData) -> Result<ExtensionPackage> {
    rd.ensure_valid()?;
    galois.validate_for(rd)?;
    let n = rd.rank();
    let r = rd.semisimple_rank();
    let covers = derived_covers(rd)?;
    let iota = covers.ad_to_sc.matrix().clone();

    // X*(T¹) = {(y, m) in X*(T^sc) ⊕ Z : y ≡ m η mod ι X*(T^ad)}
    let eta = IntMatrix::from_cols(&[vec![BigInt::one(); r]], r);
    let (t1, p1, p2) = pullback_over_quotient(
        &LatticeMap::identity(r),
        &LatticeMap::from_matrix(eta.clone()),
        &iota,
    )?;
    if t1.rank != r + 1 {
        return Err(fail("T¹ has the wrong rank"));
    }
    let e1 = p1.matrix().vstack(p2.matrix())?;
    let in_t1 = |y: &[BigInt], m: BigInt| -> Result<IntVector> {
        let mut v = y.to_vec();
        v.push(m);
        solve_exact(&e1, &v)
    };

    // X*(T^ad) -> X*(T¹), α -> (ια, 0)
    let ad_cols = (0..r)
        .map(|i| in_t1(&iota.col(i), BigInt::zero()))
        .collect::<Result<Vec<_>>>()?;
    let ad_to_t1 = LatticeMap::from_matrix(IntMatrix::from_cols(&ad_cols, r + 1));

    let push = pushout_lattice(&ad_to_t1, &covers.ad_to_x)?;
    if push.lattice.rank != n + 1 {
        return Err(fail("X*(T̃) has the wrong rank"));
    }
    let q = &push.quotient;
    let i1 = &push.left;
    let i2 = push.right.clone();

    let theta = i1.apply(&in_t1(&vec![BigInt::one(); r], BigInt::one())?)?;
    let xi = i1.apply(&in_t1(&vec![BigInt::zero(); r], BigInt::from(2))?)?;

    // functionals on X*(T¹) ⊕ X*(T), transported to X*(T̃) by solving qᵀ c = F
    let qt = q.transpose();
    let descend = |f: &[BigInt]| solve_exact(&qt, f);
    let sc_coroot_on_t1 = |c_sc: &[BigInt]| -> Result<IntVector> {
        let row = IntMatrix::from_rows(&[c_sc.to_vec()], r).checked_mul(p1.matrix())?;
        Ok(row.row(0))
    };
    let mut coroots = Vec::with_capacity(rd.roots().len());
    for (c_sc, c) in covers.sc.coroots().iter().zip(rd.coroots()) {
        let mut f = sc_coroot_on_t1(c_sc)?;
        f.extend(c.iter().cloned());
        coroots.push(descend(&f)?);
    }
    let mut gm_functional = p2.matrix().row(0);
    gm_functional.extend(std::iter::repeat_n(BigInt::zero(), n));
    let gm_cochar = descend(&gm_functional)?;

    let roots = rd.roots().iter().map(|a| i2.apply(a)).collect::<Result<Vec<_>>>()?;
    let g_tilde = BasedRootDatum::new(n + 1, roots, coroots, rd.simple_indices().to_vec())?;

    // Galois: permutation of simple positions on T^sc, trivial on Z, induced on T̃
    let e1_inv = e1.to_rational().inverse().ok_or_else(|| fail("T¹ embedding is singular"))?;
    let rinv = right_inverse(q)?;
    let mut tilde_mats = Vec::with_capacity(galois.order());
    for (g, a) in galois.matrices().iter().enumerate() {
        let p = permutation_matrix(&galois.simple_permutation(rd, g)?);
        let moved = p.block_diag(&IntMatrix::identity(1)).checked_mul(&e1)?;
        let on_t1 = e1_inv
            .mul(&moved.to_rational())
            .to_integer()
            .ok_or_else(|| fail("Galois action does not preserve X*(T¹)"))?;
        let big = on_t1.block_diag(a);
        let b = &(q * &big) * &rinv;
        if &b * q != q * &big {
            return Err(fail("Galois action does not descend to X*(T̃)"));
        }
        tilde_mats.push(b);
    }
    let tilde_galois = galois.with_matrices(tilde_mats)?;

    let two_delta = rd
        .sum_positive_roots()?
        .to_integral()
        .ok_or_else(|| fail("sum of positive roots is not integral"))?;
    let pkg = ExtensionPackage {
        c_group: LGroupData { dual_datum: g_tilde.dual(), galois: dual_action(&tilde_galois)? },
        g_tilde: GroupDatum::new(g_tilde, tilde_galois).map_err(|e| fail(&e.to_string()))?,
        theta,
        xi,
        gm_cochar,
        projection: i2,
        e_class: element_e(rd)?,
        two_delta,
    };
    verify_package(rd, &pkg)?;
    Ok(pkg)
}

fn verify_package(rd: &BasedRootDatum, pkg: &ExtensionPackage) -> Result<()> {
    let inv = cokernel_invariants(&pkg.projection);
    if !inv.is_torsion_free() || inv.free_rank != 1 {
        return Err(fail("X*(T) -> X*(T̃) does not have cokernel Z"));
    }
    if !dot(&pkg.theta, &pkg.gm_cochar).is_one() {
        return Err(fail("θ does not map to 1"));
    }
    if dot(&pkg.xi, &pkg.gm_cochar) != BigInt::from(2) {
        return Err(fail("ξ does not restrict to squaring"));
    }
    let p = pkg.projection.matrix();
    if !is_zero_matrix(&p.transpose().mul_vec(&pkg.gm_cochar)?) {
        return Err(fail("central Gm is not killed by X*(T)"));
    }
    let (gt, gg) = (&pkg.g_tilde.datum, &pkg.g_tilde.galois);
    if !is_twisting_element(gt, gg, &pkg.theta)? {
        return Err(fail("θ is not a twisting element of G̃"));
    }
    if gt.simple_coroots().iter().any(|c| !dot(&pkg.xi, c).is_zero())
        || gg.matrices().iter().any(|m| m.mul_vec(&pkg.xi).ok().as_ref() != Some(&pkg.xi))
    {
        return Err(fail("ξ is not an invariant character"));
    }
    // coroots of G̃ restrict to those of G
    for (c_tilde, c) in gt.coroots().iter().zip(rd.coroots()) {
        if &p.transpose().mul_vec(c_tilde)? != c {
            return Err(fail("coroots of G̃ do not restrict to coroots of G"));
        }
    }
    if !verify_chi_maps_to_2theta(pkg)? {
        return Err(fail("(2δ, 1) does not map to 2θ"));
    }
    Ok(())
}

fn is_zero_matrix(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// The dual isogeny sends `(2δ, 1)` to `2θ`: `i(2δ) + ξ = 2θ` in `X*(T̃)`.
pub fn verify_chi_maps_to_2theta(pkg: &ExtensionPackage) -> Result<bool> {
    let image = pkg.projection.apply(&pkg.two_delta)?;
    let lhs: IntVector = image.iter().zip(&pkg.xi).map(|(a, b)| a + b).collect();
    let rhs: IntVector = pkg.theta.iter().map(|t| t * 2).collect();
    Ok(lhs == rhs)
}

/// Class of `2δ` in `X* / 2X*`, entries in `{0, 1}`. Checked central
/// (`<2δ, α^∨>` even) and invariant under simple reflections.
pub fn element_e(rd: &BasedRootDatum) -> Result<IntVector> {
    let two_delta = rd
        .sum_positive_roots()?
        .to_integral()
        .ok_or_else(|| fail("sum of positive roots is not integral"))?;
    let two = BigInt::from(2);
    for c in rd.coroots() {
        if !(dot(&two_delta, c) % &two).is_zero() {
            return Err(fail("e is not central"));
        }
    }
    let class: IntVector = two_delta.iter().map(|x| ((x % &two) + &two) % &two).collect();
    for (a, c) in rd.simple_roots().iter().zip(rd.simple_coroots()) {
        let k = dot(&two_delta, &c);
        let moved: IntVector = two_delta.iter().zip(a).map(|(x, y)| x - &k * y).collect();
        if moved.iter().zip(&two_delta).any(|(x, y)| !((x - y) % &two).is_zero()) {
            return Err(fail("class of 2δ is not Weyl-invariant"));
        }
    }
    Ok(class)
}

/// A section character `χ` of `X*(T̃) -> Z` and the twisting element `θ - χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub chi: IntVector,
    pub twisting: IntVector,
}

/// Invariant characters `χ` of `G̃` (in the box) with `<χ, gm> = 1`, each
/// paired with the twisting element of `G` it determines.
pub fn splittings(
    rd: &BasedRootDatum,
    galois: &GaloisActionData,
    pkg: &ExtensionPackage,
    bound: i64,
) -> Result<Vec<Splitting>> {
    check_box(bound)?;
    let gt = &pkg.g_tilde.datum;
    let mut functionals: Vec<(IntVector, i64)> = gt.simple_coroots().into_iter().map(|c| (c, 0)).collect();
    functionals.push((pkg.gm_cochar.clone(), 1));
    let Some(sol) = fixed_affine_system(gt.rank(), &functionals, &pkg.g_tilde.galois)? else {
        return Ok(vec![]);
    };
    let p = pkg.projection.matrix();
    let mut out = Vec::new();
    for chi in sol.points_in_box(bound) {
        let diff: IntVector = pkg.theta.iter().zip(&chi).map(|(a, b)| a - b).collect();
        let t = solve_exact(p, &diff).map_err(|_| fail("θ - χ is not in X*(T)"))?;
        if !is_twisting_element(rd, galois, &t)? {
            return Err(fail("θ - χ is not a twisting element"));
        }
        let back: IntVector = pkg.theta.iter().zip(p.mul_vec(&t)?).map(|(a, b)| a - b).collect();
        if back != chi {
            return Err(fail("splitting bijection does not invert"));
        }
        out.push(Splitting { chi, twisting: t });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use crate::lgroup_cgroup::enumerate_twisting_elements;
    use crate::root_datum::{based_isomorphism, standard, GroupName};

    fn pkg(name: GroupName, n: usize) -> (BasedRootDatum, GaloisActionData, ExtensionPackage) {
        let (rd, g) = standard(name, n).unwrap();
        let p = build_g_tilde(&rd, &g).unwrap();
        (rd, g, p)
    }

    #[test]
    fn pgl2_gives_gl2() {
        let (_, _, p) = pkg(GroupName::PGL, 2);
        let gl2 = standard(GroupName::GL, 2).unwrap().0;
        assert!(based_isomorphism(&p.g_tilde.datum, &gl2).unwrap().is_some());
        let c = p.g_tilde.datum.simple_coroots();
        assert!(dot(&p.theta, &c[0]).is_one());
    }

    #[test]
    fn split_when_twisting_exists() {
        for (name, n) in [(GroupName::GL, 2), (GroupName::GL, 3), (GroupName::SL, 2), (GroupName::Sp, 2)] {
            let (rd, _, p) = pkg(name, n);
            let prod = rd.product(&BasedRootDatum::torus(1));
            assert!(based_isomorphism(&p.g_tilde.datum, &prod).unwrap().is_some(), "{name}({n})");
        }
    }

    #[test]
    fn torus1() {
        let (_, _, p) = pkg(GroupName::Torus, 1);
        assert_eq!(p.g_tilde.datum.rank(), 2);
        assert!(p.g_tilde.datum.roots().is_empty());
        assert!(dot(&p.theta, &p.gm_cochar).is_one());
        assert!(verify_chi_maps_to_2theta(&p).unwrap());
    }

    #[test]
    fn whole_catalog_builds() {
        for name in [GroupName::Torus, GroupName::GL, GroupName::SL, GroupName::PGL, GroupName::Sp, GroupName::UnitaryQuasiSplit] {
            for n in 1..=4 {
                let (_, _, p) = pkg(name, n);
                assert!(verify_chi_maps_to_2theta(&p).unwrap());
                assert!(is_twisting_element(&p.g_tilde.datum, &p.g_tilde.galois, &p.theta).unwrap());
            }
        }
    }

    #[test]
    fn e_examples() {
        for n in 1..=5usize {
            let rd = standard(GroupName::GL, n).unwrap().0;
            let expected: Vec<i64> = (0..n as i64).map(|i| (n as i64 - 1 - 2 * i).rem_euclid(2)).collect();
            assert_eq!(element_e(&rd).unwrap(), int_vec(&expected));
        }
        assert_eq!(element_e(&standard(GroupName::SL, 2).unwrap().0).unwrap(), int_vec(&[0]));
        assert_eq!(element_e(&BasedRootDatum::torus(2)).unwrap(), int_vec(&[0, 0]));
    }

    #[test]
    fn splitting_examples() {
        let (rd, g, p) = pkg(GroupName::PGL, 2);
        assert!(splittings(&rd, &g, &p, 5).unwrap().is_empty());

        let (rd, g, p) = pkg(GroupName::GL, 2);
        let s = splittings(&rd, &g, &p, 2).unwrap();
        assert!(!s.is_empty());
        let found: Vec<_> = s.iter().map(|x| x.twisting.clone()).collect();
        let mut dedup = found.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), found.len());
        let all = enumerate_twisting_elements(&rd, &g, 100).unwrap().elements;
        assert!(found.iter().all(|t| all.contains(t)));

        let (rd, g, p) = pkg(GroupName::Torus, 1);
        assert!(!splittings(&rd, &g, &p, 1).unwrap().is_empty());
    }

    #[test]
    fn unitary_even_does_not_split() {
        let (rd, g, p) = pkg(GroupName::UnitaryQuasiSplit, 2);
        assert!(splittings(&rd, &g, &p, 5).unwrap().is_empty());
    }
}
