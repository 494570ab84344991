use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_len, Error, Result};
use crate::lattice::{dot, solve_integer, AffineLattice, IntMatrix, IntVector};
use crate::root_datum::{BasedRootDatum, GaloisActionData};

pub const MAX_BOX_BOUND: i64 = 100;

/// Twisting elements found in a box, plus whether any exist at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingSearch {
    pub elements: Vec<IntVector>,
    pub exists: bool,
}

/// Galois-stable and pairing to 1 with every simple coroot.
pub fn is_twisting_element(rd: &BasedRootDatum, galois: &GaloisActionData, theta: &[BigInt]) -> Result<bool> {
    check_len(rd.rank(), theta.len())?;
    if rd.simple_coroots().iter().any(|c| !dot(theta, c).is_one()) {
        return Ok(false);
    }
    for m in galois.matrices() {
        if m.mul_vec(theta)? != theta {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn check_box(bound: i64) -> Result<()> {
    if !(0..=MAX_BOX_BOUND).contains(&bound) {
        return Err(Error::RankGuard(format!("box bound {bound} outside [0, {MAX_BOX_BOUND}]")));
    }
    Ok(())
}

/// Integer solutions of `<x, c_i> = b_i` for the given functionals, together
/// with `A_γ x = x` for every group element.
pub(crate) fn fixed_affine_system(
    rank: usize,
    functionals: &[(IntVector, i64)],
    galois: &GaloisActionData,
) -> Result<Option<AffineLattice>> {
    let mut rows: Vec<IntVector> = functionals.iter().map(|(c, _)| c.clone()).collect();
    let mut rhs: Vec<BigRational> = functionals.iter().map(|(_, b)| BigRational::from_integer((*b).into())).collect();
    let id = IntMatrix::identity(rank);
    for m in galois.matrices() {
        for i in 0..rank {
            let row: IntVector = (0..rank).map(|j| &m[(i, j)] - &id[(i, j)]).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
                rhs.push(BigRational::zero());
            }
        }
    }
    solve_integer(&IntMatrix::from_rows(&rows, rank), &rhs)
}

/// All twisting elements with coordinates in `[-bound, bound]`, sorted.
/// Existence is decided exactly, independently of the box.
pub fn enumerate_twisting_elements(
    rd: &BasedRootDatum,
    galois: &GaloisActionData,
    bound: i64,
) -> Result<TwistingSearch> {
    check_box(bound)?;
    let functionals: Vec<(IntVector, i64)> = rd.simple_coroots().into_iter().map(|c| (c, 1)).collect();
    match fixed_affine_system(rd.rank(), &functionals, galois)? {
        None => Ok(TwistingSearch { elements: vec![], exists: false }),
        Some(sol) => Ok(TwistingSearch { elements: sol.points_in_box(bound), exists: true }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use crate::root_datum::{standard, GroupName};

    fn std(name: GroupName, n: usize) -> (BasedRootDatum, GaloisActionData) {
        standard(name, n).unwrap()
    }

    #[test]
    fn gl2_examples() {
        let (rd, g) = std(GroupName::GL, 2);
        assert!(is_twisting_element(&rd, &g, &int_vec(&[1, 0])).unwrap());
        assert!(!is_twisting_element(&rd, &g, &int_vec(&[1, 1])).unwrap());
        let s = enumerate_twisting_elements(&rd, &g, 1).unwrap();
        assert!(s.exists);
        assert!(s.elements.contains(&int_vec(&[1, 0])));
        assert!(s.elements.contains(&int_vec(&[0, -1])));
    }

    #[test]
    fn pgl2_has_none() {
        let (rd, g) = std(GroupName::PGL, 2);
        for x in -10..=10 {
            assert!(!is_twisting_element(&rd, &g, &int_vec(&[x])).unwrap());
        }
        let s = enumerate_twisting_elements(&rd, &g, 10).unwrap();
        assert!(!s.exists);
        assert!(s.elements.is_empty());
    }

    #[test]
    fn sl2_half_sum() {
        let (rd, g) = std(GroupName::SL, 2);
        let delta = rd.half_sum_positive_roots().unwrap().to_integral().unwrap();
        assert_eq!(delta, int_vec(&[1]));
        assert!(is_twisting_element(&rd, &g, &delta).unwrap());
    }

    #[test]
    fn torus_everything_qualifies() {
        let (rd, g) = std(GroupName::Torus, 1);
        let s = enumerate_twisting_elements(&rd, &g, 1).unwrap();
        assert_eq!(s.elements, vec![int_vec(&[-1]), int_vec(&[0]), int_vec(&[1])]);
    }

    /// Brute force over the box as an oracle for the enumeration.
    #[test]
    fn matches_brute_force() {
        for (name, n) in [(GroupName::GL, 3), (GroupName::UnitaryQuasiSplit, 3), (GroupName::Sp, 2)] {
            let (rd, g) = std(name, n);
            let mut brute = Vec::new();
            let b = 2i64;
            let w = (2 * b + 1) as usize;
            for code in 0..w.pow(n as u32) {
                let mut c = code;
                let v: Vec<i64> = (0..n)
                    .map(|_| {
                        let x = (c % w) as i64 - b;
                        c /= w;
                        x
                    })
                    .collect();
                let iv = int_vec(&v);
                if is_twisting_element(&rd, &g, &iv).unwrap() {
                    brute.push(iv);
                }
            }
            brute.sort();
            assert_eq!(enumerate_twisting_elements(&rd, &g, b).unwrap().elements, brute, "{name}({n})");
        }
    }

    #[test]
    fn unitary_has_no_twisting_in_even_rank() {
        // c acts by -reverse; θ = -reverse(θ) and <θ, e_i - e_{i+1}> = 1
        let (rd, g) = std(GroupName::UnitaryQuasiSplit, 2);
        assert!(!enumerate_twisting_elements(&rd, &g, 5).unwrap().exists);
        let (rd, g) = std(GroupName::UnitaryQuasiSplit, 3);
        assert!(enumerate_twisting_elements(&rd, &g, 5).unwrap().exists);
    }

    #[test]
    fn box_guard() {
        let (rd, g) = std(GroupName::GL, 2);
        assert!(enumerate_twisting_elements(&rd, &g, 101).is_err());
    }
}
