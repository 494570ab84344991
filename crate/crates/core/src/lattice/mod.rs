//! Exact lattice arithmetic over Z: maps, cokernels, membership, fiber
//! products and pushouts, and integer affine systems.
//!
//! Lattices are always `Z^rank` in their standard basis. A sublattice is the
//! column span of an explicit integer matrix.

pub mod matrix;
pub mod normal_form;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_len, Error, Result};
pub use matrix::{dot, int_vec, is_zero_vec, rank, solve_rational, IntMatrix, IntVector, RatMatrix};
pub use normal_form::{column_hermite_basis, row_hermite, smith_normal_form, SmithForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lattice {
    pub rank: usize,
}

impl Lattice {
    pub fn new(rank: usize) -> Self {
        Lattice { rank }
    }
}

/// Homomorphism `Z^source -> Z^target`; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    source: Lattice,
    target: Lattice,
    matrix: IntMatrix,
}

impl LatticeMap {
    pub fn new(source: Lattice, target: Lattice, matrix: IntMatrix) -> Result<Self> {
        check_len(target.rank, matrix.rows())?;
        check_len(source.rank, matrix.cols())?;
        Ok(LatticeMap { source, target, matrix })
    }

    pub fn from_matrix(matrix: IntMatrix) -> Self {
        LatticeMap { source: Lattice::new(matrix.cols()), target: Lattice::new(matrix.rows()), matrix }
    }

    pub fn identity(rank: usize) -> Self {
        Self::from_matrix(IntMatrix::identity(rank))
    }

    pub fn source(&self) -> Lattice {
        self.source
    }

    pub fn target(&self) -> Lattice {
        self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<IntVector> {
        self.matrix.mul_vec(v)
    }

    pub fn apply_rational(&self, v: &RationalVector) -> Result<RationalVector> {
        Ok(RationalVector(self.matrix.mul_rat_vec(&v.0)?))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap> {
        check_len(self.source.rank, other.target.rank)?;
        Ok(LatticeMap::from_matrix(self.matrix.checked_mul(&other.matrix)?))
    }
}

/// Structure of a finitely generated abelian group: torsion invariant factors
/// `d_1 | d_2 | ...` (each at least 2) plus a free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianInvariants {
    #[serde(with = "bigint_list")]
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl FiniteAbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// Invariant factors of `target / image(f)`.
pub fn cokernel_invariants(f: &LatticeMap) -> FiniteAbelianInvariants {
    let snf = smith_normal_form(f.matrix());
    let diag = snf.diagonal();
    FiniteAbelianInvariants {
        invariant_factors: diag.iter().filter(|d| !d.is_one()).cloned().collect(),
        free_rank: f.target().rank - diag.len(),
    }
}

/// Vector with exact rational entries, always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        RationalVector(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// Entries given as `(numerator, denominator)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        RationalVector(v.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_integral(&self) -> Option<IntVector> {
        self.0.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
    }

    pub fn add(&self, other: &RationalVector) -> Result<RationalVector> {
        check_len(self.len(), other.len())?;
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &RationalVector) -> Result<RationalVector> {
        check_len(self.len(), other.len())?;
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &BigRational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn pair(&self, v: &[BigInt]) -> Result<BigRational> {
        check_len(self.len(), v.len())?;
        Ok(self
            .0
            .iter()
            .zip(v)
            .map(|(a, b)| a * BigRational::from_integer(b.clone()))
            .fold(BigRational::zero(), |x, y| x + y))
    }

    /// Least common denominator of the entries.
    pub fn denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Rationals travel as `"p/q"` strings (integers as `"p"`).
impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RationalVector)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s:?}: zero denominator")));
        }
        Ok(BigRational::new(n, d))
    } else {
        BigInt::from_str(s).map(BigRational::from_integer).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

/// Decides whether `v` lies in the column span of `generators`.
pub fn contains(v: &RationalVector, generators: &IntMatrix) -> Result<bool> {
    check_len(generators.rows(), v.len())?;
    let snf = smith_normal_form(generators);
    let w = snf.u.mul_rat_vec(&v.0)?;
    let diag = snf.diagonal();
    for (i, wi) in w.iter().enumerate() {
        match diag.get(i) {
            Some(d) => {
                if !(wi / BigRational::from_integer(d.clone())).is_integer() {
                    return Ok(false);
                }
            }
            None => {
                if !wi.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Integer coordinates of `v` with respect to the (independent) columns of
/// `basis`, if `v` lies in their span.
pub fn coordinates(v: &[BigInt], basis: &IntMatrix) -> Result<Option<IntVector>> {
    let rhs: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
    Ok(solve_integer(basis, &rhs)?.map(|a| a.particular))
}

/// Canonical basis (columns, Hermite form) of `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let k = snf.v.submatrix(0..m.cols(), r..m.cols());
    if k.cols() == 0 {
        return k;
    }
    column_hermite_basis(&k)
}

/// Integer solution set `particular + span(kernel columns)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    pub particular: IntVector,
    pub kernel: IntMatrix,
}

/// Solves `a x = b` over Z. `None` if there is no integer solution.
pub fn solve_integer(a: &IntMatrix, b: &[BigRational]) -> Result<Option<AffineLattice>> {
    check_len(a.rows(), b.len())?;
    let snf = smith_normal_form(a);
    let w = snf.u.mul_rat_vec(b)?;
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, wi) in w.iter().enumerate() {
        match diag.get(i) {
            Some(d) => {
                let q = wi / BigRational::from_integer(d.clone());
                if !q.is_integer() {
                    return Ok(None);
                }
                y[i] = q.to_integer();
            }
            None => {
                if !wi.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    let particular = snf.v.mul_vec(&y)?;
    Ok(Some(AffineLattice { particular, kernel: kernel_basis(a) }))
}

impl AffineLattice {
    pub fn dim(&self) -> usize {
        self.particular.len()
    }

    /// Every point with all coordinates in `[-bound, bound]`, sorted.
    pub fn points_in_box(&self, bound: i64) -> Vec<IntVector> {
        let b = BigInt::from(bound);
        let n = self.dim();
        let k = self.kernel.cols();
        let mut out = Vec::new();
        if k == 0 {
            if self.particular.iter().all(|x| x.abs() <= b) {
                out.push(self.particular.clone());
            }
            return out;
        }
        // The kernel basis is column-Hermite: column i vanishes above its pivot row.
        let pivots: Vec<usize> = (0..k)
            .map(|i| (0..n).find(|&r| !self.kernel[(r, i)].is_zero()).expect("zero kernel column"))
            .collect();
        let mut current = self.particular.clone();
        self.enumerate(0, &pivots, &b, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(
        &self,
        i: usize,
        pivots: &[usize],
        bound: &BigInt,
        current: &mut IntVector,
        out: &mut Vec<IntVector>,
    ) {
        let n = self.dim();
        let k = pivots.len();
        // rows strictly before the next pivot are fixed by the choices so far
        let upto = if i < k { pivots[i] } else { n };
        let from = if i == 0 { 0 } else { pivots[i - 1] };
        for r in from..upto {
            if current[r].abs() > *bound {
                return;
            }
        }
        if i == k {
            out.push(current.clone());
            return;
        }
        let p = pivots[i];
        let h = self.kernel[(p, i)].clone();
        let h_abs = h.abs();
        // t*h + current[p] within [-bound, bound]
        let lo_num = -bound - &current[p];
        let hi_num = bound - &current[p];
        let (lo, hi) = if h.is_positive() {
            (lo_num.div_ceil(&h_abs), hi_num.div_floor(&h_abs))
        } else {
            ((-hi_num).div_ceil(&h_abs), (-lo_num).div_floor(&h_abs))
        };
        let mut t = lo;
        while t <= hi {
            let col = self.kernel.col(i);
            for r in 0..n {
                current[r] += &t * &col[r];
            }
            self.enumerate(i + 1, pivots, bound, current, out);
            for r in 0..n {
                current[r] -= &t * &col[r];
            }
            t += 1;
        }
    }
}

/// Fiber product `{(x, y) : f(x) = g(y)}` of two maps into a common lattice.
pub fn pullback_lattice(f: &LatticeMap, g: &LatticeMap) -> Result<(Lattice, LatticeMap, LatticeMap)> {
    pullback_over_quotient(f, g, &IntMatrix::zeros(f.target().rank, 0))
}

/// Fiber product over the quotient `C / span(relations)`: the pairs `(x, y)`
/// with `f(x) - g(y)` in the column span of `relations`.
///
/// Returns the lattice (in a Hermite basis) and its two projections.
pub fn pullback_over_quotient(
    f: &LatticeMap,
    g: &LatticeMap,
    relations: &IntMatrix,
) -> Result<(Lattice, LatticeMap, LatticeMap)> {
    check_len(f.target().rank, g.target().rank)?;
    check_len(f.target().rank, relations.rows())?;
    let (a, b) = (f.source().rank, g.source().rank);
    let big = f.matrix().hstack(&g.matrix().scale(&BigInt::from(-1)))?.hstack(&relations.scale(&BigInt::from(-1)))?;
    let k = kernel_basis(&big);
    let gens = k.submatrix(0..a + b, 0..k.cols());
    let basis = if gens.cols() == 0 { gens } else { column_hermite_basis(&gens) };
    let rank = basis.cols();
    let p1 = LatticeMap::from_matrix(basis.submatrix(0..a, 0..rank));
    let p2 = LatticeMap::from_matrix(basis.submatrix(a..a + b, 0..rank));
    Ok((Lattice::new(rank), p1, p2))
}

/// Description of a pushout `(B ⊕ C) / {(f a, -g a)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub lattice: Lattice,
    pub left: LatticeMap,
    pub right: LatticeMap,
    /// The quotient map `B ⊕ C -> pushout`, in Hermite form.
    pub quotient: IntMatrix,
}

/// Pushout of `f: A -> B` and `g: A -> C`. The anti-diagonal image of `A`
/// must be a saturated rank-`A` sublattice; otherwise [`Error::TorsionCokernel`].
pub fn pushout_lattice(f: &LatticeMap, g: &LatticeMap) -> Result<Pushout> {
    check_len(f.source().rank, g.source().rank)?;
    let (nb, nc) = (f.target().rank, g.target().rank);
    let embed = f.matrix().vstack(&g.matrix().scale(&BigInt::from(-1)))?;
    let snf = smith_normal_form(&embed);
    let diag = snf.diagonal();
    if diag.len() != f.source().rank || diag.iter().any(|d| !d.is_one()) {
        return Err(Error::TorsionCokernel(diag.iter().map(|d| d.to_string()).collect()));
    }
    let r = diag.len();
    let total = nb + nc;
    let q = snf.u.submatrix(r..total, 0..total);
    let quotient = if q.rows() == 0 { q } else { row_hermite(&q).0 };
    let rank = quotient.rows();
    let left = LatticeMap::from_matrix(quotient.submatrix(0..rank, 0..nb));
    let right = LatticeMap::from_matrix(quotient.submatrix(0..rank, nb..total));
    Ok(Pushout { lattice: Lattice::new(rank), left, right, quotient })
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter().map(|s| BigInt::from_str(s).map_err(serde::de::Error::custom)).collect()
    }
}
