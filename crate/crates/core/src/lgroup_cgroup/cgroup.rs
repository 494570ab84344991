use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{column_hermite_basis, IntMatrix, IntVector};
use crate::root_datum::{based_isomorphism_with, dual_action, BasedRootDatum, GaloisActionData, LGroupData};

use super::extension::{build_g_tilde, element_e};

/// `(Ĝ × Gm) / <(e, -1)>`: characters are `{(µ, m) : <µ, 2δ> + m even}`.
pub fn c_group_via_quotient(rd: &BasedRootDatum, galois: &GaloisActionData) -> Result<LGroupData> {
    rd.ensure_valid()?;
    galois.validate_for(rd)?;
    let n = rd.rank();
    let e = element_e(rd)?;

    let mut gens: Vec<IntVector> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n + 1];
            v[i] = BigInt::one();
            v[n] = e[i].clone();
            v
        })
        .collect();
    let mut last = vec![BigInt::zero(); n + 1];
    last[n] = BigInt::from(2);
    gens.push(last);
    let m = column_hermite_basis(&IntMatrix::from_cols(&gens, n + 1));
    let m_inv = m.to_rational().inverse().ok_or_else(|| Error::ConstructionFailure("singular basis".into()))?;
    let into_basis = |v: &IntVector| -> Result<IntVector> {
        let rv = m_inv.mul(&IntMatrix::from_cols(std::slice::from_ref(v), n + 1).to_rational());
        rv.to_integer()
            .map(|c| c.col(0))
            .ok_or_else(|| Error::ConstructionFailure("root of Ĝ does not lie in the quotient lattice".into()))
    };
    let extend = |v: &IntVector| {
        let mut w = v.clone();
        w.push(BigInt::zero());
        w
    };
    let mt = m.transpose();

    let dual = rd.dual();
    let roots = dual.roots().iter().map(|a| into_basis(&extend(a))).collect::<Result<Vec<_>>>()?;
    let coroots = dual.coroots().iter().map(|c| mt.mul_vec(&extend(c))).collect::<Result<Vec<_>>>()?;
    let datum = BasedRootDatum::new(n + 1, roots, coroots, dual.simple_indices().to_vec())?;

    let hat = dual_action(galois)?;
    let mats = hat
        .matrices()
        .iter()
        .map(|a| {
            let big = a.block_diag(&IntMatrix::identity(1)).checked_mul(&m)?;
            m_inv
                .mul(&big.to_rational())
                .to_integer()
                .ok_or_else(|| Error::ConstructionFailure("Galois action does not preserve the quotient lattice".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = LGroupData { dual_datum: datum, galois: galois.with_matrices(mats)? };
    out.dual_datum.ensure_valid()?;
    out.galois.validate_for(&out.dual_datum)?;
    Ok(out)
}

/// Comparison of the two C-group constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    pub agree: bool,
    /// Based isomorphism from the `G̃` route to the quotient route,
    /// intertwining the Galois actions.
    pub witness: Option<IntMatrix>,
}

pub fn c_group_agreement(rd: &BasedRootDatum, galois: &GaloisActionData) -> Result<Agreement> {
    let via_tilde = build_g_tilde(rd, galois)?.c_group;
    let via_quotient = c_group_via_quotient(rd, galois)?;
    let witness = based_isomorphism_with(&via_tilde.dual_datum, &via_quotient.dual_datum, |phi| {
        via_tilde
            .galois
            .matrices()
            .iter()
            .zip(via_quotient.galois.matrices())
            .all(|(a, b)| phi * a == b * phi)
    })?;
    Ok(Agreement { agree: witness.is_some(), witness })
}
