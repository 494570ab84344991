use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntVector};

use super::{derived_covers, BasedRootDatum, GaloisActionData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Torus,
    GL,
    SL,
    PGL,
    /// `Sp(n)` is the rank-`n` group `Sp_{2n}`.
    Sp,
    /// Quasi-split unitary group in `n` variables; dual group `GL_n`.
    UnitaryQuasiSplit,
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "torus" | "t" => Ok(GroupName::Torus),
            "gl" => Ok(GroupName::GL),
            "sl" => Ok(GroupName::SL),
            "pgl" => Ok(GroupName::PGL),
            "sp" => Ok(GroupName::Sp),
            "u" | "unitary" | "unitaryquasisplit" => Ok(GroupName::UnitaryQuasiSplit),
            _ => Err(Error::Unsupported(format!("unknown group name {s:?}"))),
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupName::Torus => "Torus",
            GroupName::GL => "GL",
            GroupName::SL => "SL",
            GroupName::PGL => "PGL",
            GroupName::Sp => "Sp",
            GroupName::UnitaryQuasiSplit => "UnitaryQuasiSplit",
        };
        f.write_str(s)
    }
}

/// Catalog datum and Galois action.
///
/// Root order: simple roots first, then the remaining positive roots, then
/// the negatives of all positive roots in the same order. For `GL_n` the
/// simple roots are `e_i - e_{i+1}`.
pub fn standard(name: GroupName, n: usize) -> Result<(BasedRootDatum, GaloisActionData)> {
    if n == 0 {
        return Err(Error::Unsupported(format!("{name}({n}): rank parameter must be positive")));
    }
    let rd = match name {
        GroupName::Torus => BasedRootDatum::torus(n),
        GroupName::GL | GroupName::UnitaryQuasiSplit => gl(n),
        GroupName::SL => derived_covers(&gl(n))?.sc,
        GroupName::PGL => derived_covers(&gl(n))?.ad,
        GroupName::Sp => sp(n),
    };
    let galois = match name {
        GroupName::UnitaryQuasiSplit => {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                m[(i, n - 1 - i)] = BigInt::from(-1);
            }
            GaloisActionData::involution(m)
        }
        _ => GaloisActionData::trivial(rd.rank()),
    };
    Ok((rd, galois))
}

fn unit(n: usize, i: usize, c: i64) -> IntVector {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(c);
    v
}

fn add(a: &IntVector, b: &IntVector) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &IntVector) -> IntVector {
    a.iter().map(|x| -x).collect()
}

/// Assembles a datum from positive roots/coroots listed simple-first.
fn from_positive(n: usize, pos: Vec<(IntVector, IntVector)>, num_simple: usize) -> BasedRootDatum {
    let mut roots: Vec<IntVector> = pos.iter().map(|p| p.0.clone()).collect();
    let mut coroots: Vec<IntVector> = pos.iter().map(|p| p.1.clone()).collect();
    roots.extend(pos.iter().map(|p| neg(&p.0)));
    coroots.extend(pos.iter().map(|p| neg(&p.1)));
    BasedRootDatum::new(n, roots, coroots, (0..num_simple).collect()).expect("catalog shapes are consistent")
}

fn gl(n: usize) -> BasedRootDatum {
    let e_ij = |i: usize, j: usize| add(&unit(n, i, 1), &unit(n, j, -1));
    let mut pos: Vec<(IntVector, IntVector)> = (0..n.saturating_sub(1)).map(|i| (e_ij(i, i + 1), e_ij(i, i + 1))).collect();
    for i in 0..n {
        for j in i + 2..n {
            pos.push((e_ij(i, j), e_ij(i, j)));
        }
    }
    from_positive(n, pos, n - 1)
}

fn sp(n: usize) -> BasedRootDatum {
    let diff = |i: usize, j: usize| add(&unit(n, i, 1), &unit(n, j, -1));
    let sum = |i: usize, j: usize| add(&unit(n, i, 1), &unit(n, j, 1));
    let mut pos: Vec<(IntVector, IntVector)> = (0..n - 1).map(|i| (diff(i, i + 1), diff(i, i + 1))).collect();
    pos.push((unit(n, n - 1, 2), unit(n, n - 1, 1)));
    for i in 0..n {
        for j in i + 2..n {
            pos.push((diff(i, j), diff(i, j)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            pos.push((sum(i, j), sum(i, j)));
        }
    }
    for i in 0..n - 1 {
        pos.push((unit(n, i, 2), unit(n, i, 1)));
    }
    from_positive(n, pos, n)
}
