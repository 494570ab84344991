use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, IntMatrix};

use super::BasedRootDatum;

pub const ISO_RANK_LIMIT: usize = 6;

/// A lattice isomorphism `φ: X*(a) -> X*(b)` carrying simple roots to simple
/// roots, roots to roots and (via `φ^{-T}`) coroots to coroots.
pub fn based_isomorphism(a: &BasedRootDatum, b: &BasedRootDatum) -> Result<Option<IntMatrix>> {
    based_isomorphism_with(a, b, |_| true)
}

/// Like [`based_isomorphism`], returning the first candidate that `accept`
/// also approves.
///
/// Candidates: every Cartan-preserving bijection of simple roots, combined
/// with a bounded family of automorphisms of the central part (signed
/// permutations, plus small-entry unimodular matrices in ranks up to 3).
pub fn based_isomorphism_with(
    a: &BasedRootDatum,
    b: &BasedRootDatum,
    mut accept: impl FnMut(&IntMatrix) -> bool,
) -> Result<Option<IntMatrix>> {
    for rd in [a, b] {
        if rd.rank() > ISO_RANK_LIMIT {
            return Err(Error::RankGuard(format!("isomorphism search for rank {} > {ISO_RANK_LIMIT}", rd.rank())));
        }
    }
    if a.rank() != b.rank() || a.roots().len() != b.roots().len() || a.semisimple_rank() != b.semisimple_rank() {
        return Ok(None);
    }
    let n = a.rank();
    let r = a.semisimple_rank();
    let k = n - r;
    let (ca, cb) = (a.cartan_matrix(), b.cartan_matrix());

    let frame = |rd: &BasedRootDatum| -> Result<(IntMatrix, IntMatrix)> {
        let s = IntMatrix::from_cols(&rd.simple_roots(), n);
        let kern = kernel_basis(&IntMatrix::from_rows(&rd.simple_coroots(), n));
        Ok((s, kern))
    };
    let (sa, na) = frame(a)?;
    let (sb, nb) = frame(b)?;
    let ma = sa.hstack(&na)?;
    let da = ma.det()?;
    let db = sb.hstack(&nb)?.det()?;
    if da.is_zero() || da.abs() != db.abs() {
        return Ok(None);
    }
    // ma^{-1} = adj / da
    let adj = ma
        .to_rational()
        .inverse()
        .expect("nonsingular")
        .mul(&IntMatrix::identity(n).scale(&da).to_rational())
        .to_integer()
        .expect("adjugate is integral");

    let index = b.root_index();
    let candidates = central_candidates(k);
    for pi in permutations(r) {
        if (0..r).any(|i| (0..r).any(|j| ca[(i, j)] != cb[(pi[i], pi[j])])) {
            continue;
        }
        let bs_pi = IntMatrix::from_cols(&pi.iter().map(|&i| sb.col(i)).collect::<Vec<_>>(), n);
        for g in &candidates {
            let x = bs_pi.hstack(&(&nb * g))?;
            let num = &x * &adj;
            let Some(phi) = exact_div(&num, &da) else { continue };
            if !phi.is_unimodular() {
                continue;
            }
            if maps_datum(&phi, a, b, &index)? && accept(&phi) {
                return Ok(Some(phi));
            }
        }
    }
    Ok(None)
}

fn exact_div(m: &IntMatrix, d: &BigInt) -> Option<IntMatrix> {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let (q, rem) = m[(i, j)].div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            out[(i, j)] = q;
        }
    }
    Some(out)
}

fn maps_datum(
    phi: &IntMatrix,
    a: &BasedRootDatum,
    b: &BasedRootDatum,
    index: &std::collections::HashMap<Vec<BigInt>, usize>,
) -> Result<bool> {
    let phi_t = phi.transpose();
    for (root, coroot) in a.roots().iter().zip(a.coroots()) {
        let Some(&j) = index.get(&phi.mul_vec(root)?) else { return Ok(false) };
        if &phi_t.mul_vec(&b.coroots()[j])? != coroot {
            return Ok(false);
        }
    }
    Ok(true)
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

fn central_candidates(k: usize) -> Vec<IntMatrix> {
    let mut out = vec![IntMatrix::identity(k)];
    for p in permutations(k) {
        for signs in 0..(1u32 << k) {
            let mut m = IntMatrix::zeros(k, k);
            for (i, &j) in p.iter().enumerate() {
                m[(j, i)] = if signs >> i & 1 == 1 { -BigInt::one() } else { BigInt::one() };
            }
            if m != out[0] {
                out.push(m);
            }
        }
    }
    let bound: i64 = match k {
        1 => 1,
        2 => 2,
        3 => 1,
        _ => return out,
    };
    let cells = k * k;
    let width = (2 * bound + 1) as usize;
    let total = width.pow(cells as u32);
    let mut seen: std::collections::HashSet<IntMatrix> = out.iter().cloned().collect();
    for code in 0..total {
        let mut c = code;
        let mut entries = Vec::with_capacity(cells);
        for _ in 0..cells {
            entries.push((c % width) as i64 - bound);
            c /= width;
        }
        let m = IntMatrix::from_i64(k, k, &entries);
        if m.is_unimodular() && seen.insert(m.clone()) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{standard, GroupName};

    #[test]
    fn gl2_identity() {
        let gl2 = standard(GroupName::GL, 2).unwrap().0;
        assert_eq!(based_isomorphism(&gl2, &gl2).unwrap(), Some(IntMatrix::identity(2)));
    }

    #[test]
    fn sl2_pgl2_not_isomorphic() {
        let sl2 = standard(GroupName::SL, 2).unwrap().0;
        let pgl2 = standard(GroupName::PGL, 2).unwrap().0;
        assert_eq!(based_isomorphism(&sl2, &pgl2).unwrap(), None);
    }

    #[test]
    fn gl_is_self_dual() {
        for n in 1..=4 {
            let gl = standard(GroupName::GL, n).unwrap().0;
            let phi = based_isomorphism(&gl.dual(), &gl).unwrap();
            assert!(phi.is_some(), "GL_{n}");
        }
    }

    #[test]
    fn changed_basis_is_recovered() {
        let gl2 = standard(GroupName::GL, 2).unwrap().0;
        let basis = IntMatrix::from_i64(2, 2, &[1, 0, 1, 1]);
        let other = gl2.change_basis(&basis).unwrap();
        assert!(other.validate().valid);
        let phi = based_isomorphism(&gl2, &other).unwrap().unwrap();
        assert_eq!(&phi * &basis, IntMatrix::identity(2));
    }

    #[test]
    fn sp2_vs_gl_torus_product() {
        let sp1 = standard(GroupName::Sp, 1).unwrap().0;
        let sl2 = standard(GroupName::SL, 2).unwrap().0;
        assert!(based_isomorphism(&sp1, &sl2).unwrap().is_some());
        let gl2 = standard(GroupName::GL, 2).unwrap().0;
        let pgl2_t = standard(GroupName::PGL, 2).unwrap().0.product(&BasedRootDatum::torus(1));
        assert!(based_isomorphism(&gl2, &pgl2_t).unwrap().is_none());
    }

    #[test]
    fn rank_guard() {
        let t = BasedRootDatum::torus(7);
        assert!(matches!(based_isomorphism(&t, &t), Err(Error::RankGuard(_))));
    }
}
