use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

use super::BasedRootDatum;

pub const WEYL_RANK_LIMIT: usize = 8;
pub const WEYL_SIZE_LIMIT: usize = 1_000_000;

/// `x -> x - <x, α^∨> α` on `X*`.
pub fn reflection_matrix(alpha: &[BigInt], coroot: &[BigInt]) -> IntMatrix {
    let n = alpha.len();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= &alpha[i] * &coroot[j];
        }
    }
    m
}

/// The Weyl group as a sorted set of matrices on `X*`.
pub fn weyl_group(rd: &BasedRootDatum) -> Result<Vec<IntMatrix>> {
    if rd.rank() > WEYL_RANK_LIMIT {
        return Err(Error::RankGuard(format!("Weyl group requested for rank {} > {WEYL_RANK_LIMIT}", rd.rank())));
    }
    let gens: Vec<IntMatrix> = rd
        .simple_roots()
        .iter()
        .zip(rd.simple_coroots())
        .map(|(a, c)| reflection_matrix(a, &c))
        .collect();
    let id = IntMatrix::identity(rd.rank());
    let mut seen = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(w) = frontier.pop() {
        for s in &gens {
            let sw = s * &w;
            if seen.insert(sw.clone()) {
                if seen.len() > WEYL_SIZE_LIMIT {
                    return Err(Error::RankGuard(format!("Weyl group exceeds {WEYL_SIZE_LIMIT} elements")));
                }
                frontier.push(sw);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
