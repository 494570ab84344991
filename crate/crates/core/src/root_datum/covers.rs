use crate::error::Result;
use crate::lattice::{dot, IntMatrix, IntVector, LatticeMap};

use super::BasedRootDatum;

/// Simply connected and adjoint forms of the derived group, with the
/// character-lattice maps `X*(T^ad) -> X*(T) -> X*(T^sc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedCovers {
    /// `X*` in the basis of fundamental weights.
    pub sc: BasedRootDatum,
    /// `X*` in the basis of simple roots.
    pub ad: BasedRootDatum,
    /// Columns are the simple roots.
    pub ad_to_x: LatticeMap,
    /// `x -> (<x, α_j^∨>)_j`.
    pub x_to_sc: LatticeMap,
    /// `x_to_sc ∘ ad_to_x`, the transposed Cartan matrix.
    pub ad_to_sc: LatticeMap,
}

pub fn derived_covers(rd: &BasedRootDatum) -> Result<DerivedCovers> {
    let r = rd.semisimple_rank();
    let n = rd.rank();
    let simple_roots = rd.simple_roots();
    let simple_coroots = rd.simple_coroots();
    let root_coeffs = rd.root_coefficients()?;
    let coroot_coeffs = rd.coroot_coefficients()?;

    let sc_roots: Vec<IntVector> =
        rd.roots().iter().map(|a| simple_coroots.iter().map(|c| dot(a, c)).collect()).collect();
    let ad_coroots: Vec<IntVector> =
        rd.coroots().iter().map(|c| simple_roots.iter().map(|a| dot(a, c)).collect()).collect();

    let sc = BasedRootDatum::new(r, sc_roots, coroot_coeffs, rd.simple_indices().to_vec())?;
    let ad = BasedRootDatum::new(r, root_coeffs, ad_coroots, rd.simple_indices().to_vec())?;

    let ad_to_x = LatticeMap::from_matrix(IntMatrix::from_cols(&simple_roots, n));
    let x_to_sc = LatticeMap::from_matrix(IntMatrix::from_rows(&simple_coroots, n));
    let ad_to_sc = x_to_sc.compose(&ad_to_x)?;
    Ok(DerivedCovers { sc, ad, ad_to_x, x_to_sc, ad_to_sc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{standard, GroupName};

    #[test]
    fn covers_of_pgl2_and_gl2() {
        let sl2 = standard(GroupName::SL, 2).unwrap().0;
        let pgl2 = standard(GroupName::PGL, 2).unwrap().0;
        for rd in [pgl2.clone(), standard(GroupName::GL, 2).unwrap().0] {
            let c = derived_covers(&rd).unwrap();
            assert_eq!(c.sc, sl2);
            assert_eq!(c.ad, pgl2);
            assert_eq!(c.ad_to_sc.matrix(), &IntMatrix::from_i64(1, 1, &[2]));
        }
    }

    #[test]
    fn torus_covers_are_trivial() {
        let c = derived_covers(&BasedRootDatum::torus(3)).unwrap();
        assert_eq!(c.sc.rank(), 0);
        assert_eq!(c.ad.rank(), 0);
        assert_eq!(c.ad_to_x.matrix().rows(), 3);
    }

    #[test]
    fn ad_to_sc_is_cartan_transpose() {
        for (name, n) in [(GroupName::GL, 4), (GroupName::Sp, 3)] {
            let rd = standard(name, n).unwrap().0;
            let c = derived_covers(&rd).unwrap();
            assert_eq!(c.ad_to_sc.matrix(), &rd.cartan_matrix().transpose());
            assert!(c.sc.validate().valid);
            assert!(c.ad.validate().valid);
        }
    }
}
