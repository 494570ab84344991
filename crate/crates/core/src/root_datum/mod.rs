//! Based root data `(X*, Δ*, X_*, Δ_*)` with finite pinned Galois actions.
//!
//! Both lattices are `Z^rank` and the pairing is the standard dot product.
//! Roots and coroots are stored in bijection by index.

mod catalog;
mod covers;
mod galois;
mod iso;
mod json;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{check_len, Error, Result};
use crate::lattice::{dot, is_zero_vec, rank, solve_rational, IntMatrix, IntVector, RatMatrix, RationalVector};

pub use catalog::{standard, GroupName};
pub use covers::{derived_covers, DerivedCovers};
pub use galois::{dual_action, GaloisActionData, LGroupData};
pub use iso::{based_isomorphism, based_isomorphism_with, ISO_RANK_LIMIT};
pub use json::GroupDatum;
pub use weyl::{reflection_matrix, weyl_group, WEYL_RANK_LIMIT, WEYL_SIZE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasedRootDatum {
    rank: usize,
    roots: Vec<IntVector>,
    coroots: Vec<IntVector>,
    simple: Vec<usize>,
    sum_positive: Cache,
}

/// Memoized `2δ`; ignored by comparisons and hashing.
#[derive(Clone, Default)]
struct Cache(OnceLock<Result<RationalVector>>);

impl PartialEq for Cache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Cache {}

impl Hash for Cache {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Cache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("_")
    }
}

/// Outcome of [`BasedRootDatum::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    /// First failing axiom, if any.
    pub diagnostic: Option<String>,
}

impl BasedRootDatum {
    /// Builds a datum after checking only shapes; see [`Self::validate`].
    pub fn new(rank: usize, roots: Vec<IntVector>, coroots: Vec<IntVector>, simple: Vec<usize>) -> Result<Self> {
        check_len(roots.len(), coroots.len())?;
        for v in roots.iter().chain(&coroots) {
            check_len(rank, v.len())?;
        }
        if let Some(&i) = simple.iter().find(|&&i| i >= roots.len()) {
            return Err(Error::InvalidDatum(format!("simple index {i} out of range")));
        }
        Ok(BasedRootDatum { rank, roots, coroots, simple, sum_positive: Cache::default() })
    }

    /// [`Self::new`] followed by full validation.
    pub fn checked(rank: usize, roots: Vec<IntVector>, coroots: Vec<IntVector>, simple: Vec<usize>) -> Result<Self> {
        let rd = Self::new(rank, roots, coroots, simple)?;
        rd.ensure_valid()?;
        Ok(rd)
    }

    /// Rank-`n` datum with no roots.
    pub fn torus(n: usize) -> Self {
        BasedRootDatum { rank: n, roots: vec![], coroots: vec![], simple: vec![], sum_positive: Cache::default() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[IntVector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[IntVector] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<IntVector> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<IntVector> {
        self.simple.iter().map(|&i| self.coroots[i].clone()).collect()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    /// Cartan matrix `C[i][j] = <α_i, α_j^∨>` over the simple roots.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let r = self.simple.len();
        let mut c = IntMatrix::zeros(r, r);
        for (i, &a) in self.simple.iter().enumerate() {
            for (j, &b) in self.simple.iter().enumerate() {
                c[(i, j)] = dot(&self.roots[a], &self.coroots[b]);
            }
        }
        c
    }

    /// Swaps the roles of characters and cocharacters.
    pub fn dual(&self) -> BasedRootDatum {
        BasedRootDatum {
            rank: self.rank,
            roots: self.coroots.clone(),
            coroots: self.roots.clone(),
            simple: self.simple.clone(),
            sum_positive: Cache::default(),
        }
    }

    /// Direct product; the roots of `other` follow those of `self`.
    pub fn product(&self, other: &BasedRootDatum) -> BasedRootDatum {
        let n = self.rank + other.rank;
        let pad_left = |v: &IntVector| {
            let mut w = v.clone();
            w.resize(n, BigInt::zero());
            w
        };
        let pad_right = |v: &IntVector| {
            let mut w = vec![BigInt::zero(); self.rank];
            w.extend(v.iter().cloned());
            w
        };
        let offset = self.roots.len();
        BasedRootDatum {
            rank: n,
            roots: self.roots.iter().map(pad_left).chain(other.roots.iter().map(pad_right)).collect(),
            coroots: self.coroots.iter().map(pad_left).chain(other.coroots.iter().map(pad_right)).collect(),
            simple: self.simple.iter().cloned().chain(other.simple.iter().map(|&i| i + offset)).collect(),
            sum_positive: Cache::default(),
        }
    }

    /// Rewrites the datum in a new basis of `X*`: `basis` has the new basis
    /// vectors as columns (in old coordinates) and must be unimodular.
    pub fn change_basis(&self, basis: &IntMatrix) -> Result<BasedRootDatum> {
        check_len(self.rank, basis.rows())?;
        let inv = basis.inverse_unimodular()?;
        let bt = basis.transpose();
        Ok(BasedRootDatum {
            rank: self.rank,
            roots: self.roots.iter().map(|r| inv.mul_vec(r)).collect::<Result<_>>()?,
            coroots: self.coroots.iter().map(|c| bt.mul_vec(c)).collect::<Result<_>>()?,
            simple: self.simple.clone(),
            sum_positive: Cache::default(),
        })
    }

    pub(crate) fn root_index(&self) -> HashMap<IntVector, usize> {
        self.roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect()
    }

    /// Coefficients of `v` in the simple roots, if it lies in their rational span.
    pub fn simple_root_coefficients(&self, v: &[BigInt]) -> Result<Option<Vec<BigRational>>> {
        let a = IntMatrix::from_cols(&self.simple_roots(), self.rank);
        let b: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        solve_rational(&a, &b)
    }

    /// Coefficients of `v` in the simple coroots.
    pub fn simple_coroot_coefficients(&self, v: &[BigInt]) -> Result<Option<Vec<BigRational>>> {
        let a = IntMatrix::from_cols(&self.simple_coroots(), self.rank);
        let b: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        solve_rational(&a, &b)
    }

    /// Integer coefficients of every root in the simple roots.
    pub(crate) fn root_coefficients(&self) -> Result<Vec<IntVector>> {
        let (simple, dual) = (self.simple_roots(), self.simple_coroots());
        batch_coefficients(&self.roots, &simple, &dual, |v| self.simple_root_coefficients(v))
            .map_err(|r| Error::InvalidDatum(format!("root {r:?} is not an integer combination of simple roots")))
    }

    pub(crate) fn coroot_coefficients(&self) -> Result<Vec<IntVector>> {
        let (simple, dual) = (self.simple_coroots(), self.simple_roots());
        batch_coefficients(&self.coroots, &simple, &dual, |v| self.simple_coroot_coefficients(v))
            .map_err(|r| Error::InvalidDatum(format!("coroot {r:?} is not an integer combination of simple coroots")))
    }

    /// Indices of the positive roots with respect to the simple system.
    pub fn positive_roots(&self) -> Result<Vec<usize>> {
        let coeffs = self.root_coefficients()?;
        Ok(coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().all(|x| !x.is_negative()))
            .map(|(i, _)| i)
            .collect())
    }

    /// Half the sum of the positive roots.
    pub fn half_sum_positive_roots(&self) -> Result<RationalVector> {
        Ok(self.sum_positive_roots()?.scale(&BigRational::new(1.into(), 2.into())))
    }

    /// Sum of the positive roots, `2δ`.
    pub fn sum_positive_roots(&self) -> Result<RationalVector> {
        self.sum_positive.0.get_or_init(|| self.compute_sum_positive_roots()).clone()
    }

    fn compute_sum_positive_roots(&self) -> Result<RationalVector> {
        let mut sum = vec![BigInt::zero(); self.rank];
        for i in self.positive_roots()? {
            for (s, x) in sum.iter_mut().zip(&self.roots[i]) {
                *s += x;
            }
        }
        Ok(RationalVector::from_ints(&sum))
    }

    pub fn validate(&self) -> Validation {
        match self.first_failure() {
            None => Validation { valid: true, diagnostic: None },
            Some(msg) => Validation { valid: false, diagnostic: Some(msg) },
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(msg) => Err(Error::InvalidDatum(msg)),
        }
    }

    fn first_failure(&self) -> Option<String> {
        let n = self.rank;
        if self.roots.len() != self.coroots.len() {
            return Some("roots and coroots differ in number".into());
        }
        if self.roots.iter().chain(&self.coroots).any(|v| v.len() != n) {
            return Some("vector length differs from rank".into());
        }
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            if dot(a, c) != BigInt::from(2) {
                return Some(format!("pairing ⟨α,α∨⟩≠2 for α={}", fmt_vec(a)));
            }
        }
        let index = self.root_index();
        if index.len() != self.roots.len() {
            return Some("duplicate roots".into());
        }
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            let neg: IntVector = a.iter().map(|x| -x).collect();
            match index.get(&neg) {
                Some(&j) if self.coroots[j] == c.iter().map(|x| -x).collect::<IntVector>() => {}
                _ => return Some(format!("roots not closed under negation at α={}", fmt_vec(a))),
            }
            let twice: IntVector = a.iter().map(|x| x * 2).collect();
            if index.contains_key(&twice) {
                return Some(format!("non-reduced: 2α is a root for α={}", fmt_vec(a)))
            }
        }
        // reflections permute roots and coroots compatibly
        for (a, ac) in self.roots.iter().zip(&self.coroots) {
            for (b, bc) in self.roots.iter().zip(&self.coroots) {
                let k = dot(b, ac);
                let image: IntVector = b.iter().zip(a).map(|(x, y)| x - &k * y).collect();
                let kc = dot(a, bc);
                let image_c: IntVector = bc.iter().zip(ac).map(|(x, y)| x - &kc * y).collect();
                match index.get(&image) {
                    Some(&j) if self.coroots[j] == image_c => {}
                    _ => {
                        return Some(format!(
                            "reflection in α={} does not permute roots/coroots (image of β={})",
                            fmt_vec(a),
                            fmt_vec(b)
                        ))
                    }
                }
            }
        }
        let mut seen = self.simple.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.simple.len() {
            return Some("repeated simple index".into());
        }
        let simple_mat = IntMatrix::from_cols(&self.simple_roots(), n);
        if rank(&simple_mat) != self.simple.len() {
            return Some("simple roots are linearly dependent".into());
        }
        let coeffs = match self.root_coefficients() {
            Ok(c) => c,
            Err(e) => return Some(e.to_string()),
        };
        let co_coeffs = match self.coroot_coefficients() {
            Ok(c) => c,
            Err(e) => return Some(e.to_string()),
        };
        for ((a, c), cc) in self.roots.iter().zip(&coeffs).zip(&co_coeffs) {
            let pos = c.iter().all(|x| !x.is_negative());
            let neg = c.iter().all(|x| !x.is_positive());
            if !pos && !neg {
                return Some(format!("root {} has mixed-sign simple coefficients", fmt_vec(a)));
            }
            let cpos = cc.iter().all(|x| !x.is_negative());
            let cneg = cc.iter().all(|x| !x.is_positive());
            if (pos && !cpos) || (neg && !cneg) {
                return Some(format!("coroot of {} has inconsistent sign", fmt_vec(a)));
            }
        }
        if self.roots.iter().any(|r| is_zero_vec(r)) {
            return Some("zero root".into());
        }
        None
    }
}

pub(crate) fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Integer coefficients of each of `vectors` in `simple`.
///
/// Uses the inverse of the pairing matrix `<simple_i, dual_j>` and checks
/// each answer by reconstruction; falls back to `solve` per vector when
/// that matrix is singular. Returns the first vector with no integral
/// expansion as the error.
fn batch_coefficients(
    vectors: &[IntVector],
    simple: &[IntVector],
    dual: &[IntVector],
    solve: impl Fn(&[BigInt]) -> Result<Option<Vec<BigRational>>>,
) -> std::result::Result<Vec<IntVector>, IntVector> {
    let s = simple.len();
    let pairing: Vec<Vec<BigRational>> =
        (0..s).map(|j| (0..s).map(|i| BigRational::from_integer(dot(&simple[i], &dual[j]))).collect()).collect();
    let inverse = RatMatrix::from_rows(&pairing, s).inverse();
    let integral = |c: Vec<BigRational>| -> Option<IntVector> {
        c.iter().all(|x| x.is_integer()).then(|| c.into_iter().map(|x| x.to_integer()).collect())
    };
    vectors
        .iter()
        .map(|v| {
            let coeffs = match &inverse {
                Some(inv) => {
                    let b: Vec<BigInt> = dual.iter().map(|d| dot(v, d)).collect();
                    let c: Vec<BigRational> =
                        (0..s).map(|i| (0..s).map(|j| inv.get(i, j) * &b[j]).sum()).collect();
                    integral(c).filter(|c| {
                        let mut back = vec![BigInt::zero(); v.len()];
                        for (k, a) in c.iter().zip(simple) {
                            for (x, y) in back.iter_mut().zip(a) {
                                *x += k * y;
                            }
                        }
                        back == *v
                    })
                }
                None => solve(v).ok().flatten().and_then(integral),
            };
            coeffs.ok_or_else(|| v.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    fn gl2() -> BasedRootDatum {
        standard(GroupName::GL, 2).unwrap().0
    }

    #[test]
    fn catalog_entries_validate() {
        assert!(gl2().validate().valid);
        assert!(standard(GroupName::PGL, 3).unwrap().0.validate().valid);
    }

    #[test]
    fn broken_coroot_reports_pairing() {
        let rd = gl2();
        let mut coroots = rd.coroots().to_vec();
        coroots[0] = int_vec(&[0, 0]);
        let bad = BasedRootDatum::new(2, rd.roots().to_vec(), coroots, rd.simple_indices().to_vec()).unwrap();
        let v = bad.validate();
        assert!(!v.valid);
        assert!(v.diagnostic.unwrap().contains("pairing ⟨α,α∨⟩≠2"));
    }

    #[test]
    fn dual_examples() {
        let sl2 = standard(GroupName::SL, 2).unwrap().0;
        let pgl2 = standard(GroupName::PGL, 2).unwrap().0;
        assert_eq!(sl2.dual(), pgl2);
        let t = BasedRootDatum::torus(3);
        assert_eq!(t.dual(), t);
        assert!(based_isomorphism(&gl2().dual(), &gl2()).unwrap().is_some());
    }

    #[test]
    fn half_sums() {
        assert_eq!(gl2().half_sum_positive_roots().unwrap(), RationalVector::from_fracs(&[(1, 2), (-1, 2)]));
        let gl3 = standard(GroupName::GL, 3).unwrap().0;
        assert_eq!(gl3.half_sum_positive_roots().unwrap(), RationalVector::from_i64(&[1, 0, -1]));
        assert_eq!(
            BasedRootDatum::torus(2).half_sum_positive_roots().unwrap(),
            RationalVector::from_i64(&[0, 0])
        );
    }

    /// GL_3 oracle: sum e_i - e_j over i<j directly, independent of the
    /// simple-coefficient positivity test.
    #[test]
    fn gl3_half_sum_by_enumeration() {
        let n = 3;
        let mut sum = vec![0i64; n];
        for i in 0..n {
            for j in i + 1..n {
                sum[i] += 1;
                sum[j] -= 1;
            }
        }
        let expected = RationalVector::from_fracs(&sum.iter().map(|&x| (x, 2)).collect::<Vec<_>>());
        let gl3 = standard(GroupName::GL, 3).unwrap().0;
        assert_eq!(gl3.half_sum_positive_roots().unwrap(), expected);
    }

    #[test]
    fn product_with_torus() {
        let p = gl2().product(&BasedRootDatum::torus(1));
        assert_eq!(p.rank(), 3);
        assert!(p.validate().valid);
    }

    #[test]
    fn non_reduced_rejected() {
        // BC_1: roots ±1, ±2 in Z
        let rd = BasedRootDatum::new(
            1,
            vec![int_vec(&[1]), int_vec(&[-1]), int_vec(&[2]), int_vec(&[-2])],
            vec![int_vec(&[2]), int_vec(&[-2]), int_vec(&[1]), int_vec(&[-1])],
            vec![0],
        )
        .unwrap();
        assert!(rd.validate().diagnostic.unwrap().contains("non-reduced"));
    }
}
