use crate::error::{check_len, Error, Result};
use crate::lattice::IntMatrix;

use super::BasedRootDatum;

/// A finite group `Γ` (given by its multiplication table, element 0 the
/// identity) acting on `X*` through integer matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisActionData {
    table: Vec<Vec<usize>>,
    matrices: Vec<IntMatrix>,
}

/// The dual datum together with the Galois action on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGroupData {
    pub dual_datum: BasedRootDatum,
    pub galois: GaloisActionData,
}

impl LGroupData {
    pub fn of(rd: &BasedRootDatum, galois: &GaloisActionData) -> Result<Self> {
        galois.validate_for(rd)?;
        Ok(LGroupData { dual_datum: rd.dual(), galois: dual_action(galois)? })
    }
}

impl GaloisActionData {
    /// Checks shapes only; see [`Self::validate_for`].
    pub fn new(table: Vec<Vec<usize>>, matrices: Vec<IntMatrix>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidAction("empty group".into()));
        }
        check_len(order, matrices.len())?;
        for row in &table {
            check_len(order, row.len())?;
            if row.iter().any(|&x| x >= order) {
                return Err(Error::InvalidAction("table entry out of range".into()));
            }
        }
        let n = matrices[0].rows();
        for m in &matrices {
            check_len(n, m.rows())?;
            check_len(n, m.cols())?;
        }
        Ok(GaloisActionData { table, matrices })
    }

    pub fn trivial(rank: usize) -> Self {
        GaloisActionData { table: vec![vec![0]], matrices: vec![IntMatrix::identity(rank)] }
    }

    /// `Γ = {1, c}` with `c` acting by `m`.
    pub fn involution(m: IntMatrix) -> Self {
        let n = m.rows();
        GaloisActionData { table: vec![vec![0, 1], vec![1, 0]], matrices: vec![IntMatrix::identity(n), m] }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn rank(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &IntMatrix {
        &self.matrices[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(|m| *m == IntMatrix::identity(m.rows()))
    }

    /// Same group, new matrices.
    pub fn with_matrices(&self, matrices: Vec<IntMatrix>) -> Result<Self> {
        Self::new(self.table.clone(), matrices)
    }

    /// Group axioms and the homomorphism property, independent of any datum.
    pub fn validate_group(&self) -> Result<()> {
        let order = self.order();
        let t = &self.table;
        for a in 0..order {
            if t[0][a] != a || t[a][0] != a {
                return Err(Error::InvalidAction("element 0 is not the identity".into()));
            }
            let mut seen = vec![false; order];
            for &x in &t[a] {
                seen[x] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::InvalidAction("table row is not a permutation".into()));
            }
            for b in 0..order {
                for c in 0..order {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return Err(Error::InvalidAction("table is not associative".into()));
                    }
                }
            }
        }
        if self.matrices[0] != IntMatrix::identity(self.rank()) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for (a, ma) in self.matrices.iter().enumerate() {
            if !ma.is_unimodular() {
                return Err(Error::InvalidAction(format!("matrix of element {a} is not invertible over Z")));
            }
            for (b, mb) in self.matrices.iter().enumerate() {
                if (ma * mb) != self.matrices[t[a][b]] {
                    return Err(Error::InvalidAction(format!("not a homomorphism at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    /// Full check against a datum: group axioms, roots and coroots preserved
    /// compatibly, simple roots permuted.
    pub fn validate_for(&self, rd: &BasedRootDatum) -> Result<()> {
        check_len(rd.rank(), self.rank())?;
        self.validate_group()?;
        for g in 0..self.order() {
            self.simple_permutation(rd, g)?;
        }
        Ok(())
    }

    /// Permutation `π` of simple positions with `A_g α_i = α_{π(i)}`.
    pub fn simple_permutation(&self, rd: &BasedRootDatum, g: usize) -> Result<Vec<usize>> {
        let a = &self.matrices[g];
        let inv_t = a.inverse_unimodular()?.transpose();
        let index = rd.root_index();
        let mut images = Vec::with_capacity(rd.roots().len());
        for (r, c) in rd.roots().iter().zip(rd.coroots()) {
            let ar = a.mul_vec(r)?;
            let j = *index
                .get(&ar)
                .ok_or_else(|| Error::InvalidAction(format!("element {g} does not preserve the roots")))?;
            if inv_t.mul_vec(c)? != rd.coroots()[j] {
                return Err(Error::InvalidAction(format!("element {g} does not preserve the coroots compatibly")));
            }
            images.push(j);
        }
        let simple = rd.simple_indices();
        simple
            .iter()
            .map(|&i| {
                simple.iter().position(|&s| s == images[i]).ok_or_else(|| {
                    Error::InvalidAction(format!("element {g} does not preserve the simple roots (action is not pinned)"))
                })
            })
            .collect()
    }
}

/// The action on the dual datum: each matrix replaced by its inverse transpose.
pub fn dual_action(g: &GaloisActionData) -> Result<GaloisActionData> {
    let matrices = g
        .matrices
        .iter()
        .map(|m| Ok(m.inverse_unimodular()?.transpose()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GaloisActionData { table: g.table.clone(), matrices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{standard, GroupName};

    #[test]
    fn trivial_dualizes_to_trivial() {
        let g = GaloisActionData::trivial(3);
        assert_eq!(dual_action(&g).unwrap(), g);
    }

    #[test]
    fn unitary_action_is_self_dual() {
        for n in 1..=5 {
            let (rd, g) = standard(GroupName::UnitaryQuasiSplit, n).unwrap();
            g.validate_for(&rd).unwrap();
            let d = dual_action(&g).unwrap();
            assert_eq!(d, g);
            d.validate_for(&rd.dual()).unwrap();
        }
    }

    #[test]
    fn torus_swap_dualizes_to_swap() {
        let swap = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let g = GaloisActionData::involution(swap.clone());
        assert_eq!(dual_action(&g).unwrap().matrix(1), &swap);
    }

    #[test]
    fn unpinned_action_rejected() {
        // w0 of GL_2 swaps α and -α: preserves roots but not the base
        let (rd, _) = standard(GroupName::GL, 2).unwrap();
        let g = GaloisActionData::involution(IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]));
        let err = g.validate_for(&rd).unwrap_err();
        assert!(err.to_string().contains("pinned"));
    }

    #[test]
    fn non_homomorphism_rejected() {
        let g = GaloisActionData::new(
            vec![vec![0, 1], vec![1, 0]],
            vec![IntMatrix::identity(1), IntMatrix::from_i64(1, 1, &[1])],
        )
        .unwrap();
        assert!(g.validate_group().is_ok());
        let bad = GaloisActionData::new(
            vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]],
            vec![IntMatrix::identity(1); 3],
        )
        .unwrap();
        assert!(bad.validate_group().is_err());
    }
}
