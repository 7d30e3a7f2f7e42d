//! Total Chern classes of the standard bundles on `P^n`.

use num::{BigInt, BigRational, One, Zero};

use crate::chow_ring::{rat, ChowClass};
use crate::error::{Error, Result};

/// Total Chern class of a vector bundle on `P^n`, together with its rank.
///
/// The rank is carried explicitly because twisting by a line bundle needs it
/// even when the top Chern classes are killed by truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleChern {
    rank: usize,
    total: ChowClass,
}

impl BundleChern {
    /// Checks that `total` has constant term 1 and no Chern classes above `rank`.
    pub fn new(rank: usize, total: ChowClass) -> Result<Self> {
        if !total.constant_term().is_one() {
            return Err(Error::TotalNotUnit);
        }
        if let Some(degree) = (rank + 1..=total.ambient_dim()).find(|&j| !total.coeffs()[j].is_zero()) {
            return Err(Error::RankExceeded { rank, degree });
        }
        Ok(BundleChern { rank, total })
    }

    /// The rank-zero bundle, `c = 1`.
    pub fn trivial_zero(ambient_dim: usize) -> Self {
        BundleChern {
            rank: 0,
            total: ChowClass::one(ambient_dim),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total(&self) -> &ChowClass {
        &self.total
    }

    pub fn ambient_dim(&self) -> usize {
        self.total.ambient_dim()
    }

    /// `E ⊗ L` where `c1 = c_1(L)`, via the Chern-root shift
    /// `c_j(E⊗L) = sum_i binom(m-i, j-i) c_i(E) c_1(L)^{j-i}`.
    pub fn twist(&self, c1: &ChowClass) -> Result<BundleChern> {
        if c1.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim(),
                right: c1.ambient_dim(),
            });
        }
        let slope = c1.degree_one_coefficient()?;
        let n = self.ambient_dim();
        let m = self.rank;
        let top = m.min(n);
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (j, slot) in coeffs.iter_mut().enumerate().take(top + 1) {
            let mut acc = BigRational::zero();
            for i in 0..=j {
                let ci = &self.total.coeffs()[i];
                if ci.is_zero() {
                    continue;
                }
                let b = binomial(m - i, j - i);
                acc += ci * BigRational::from_integer(b) * pow_rational(&slope, j - i);
            }
            *slot = acc;
        }
        BundleChern::new(m, ChowClass::new(n, coeffs)?)
    }
}

fn pow_rational(base: &BigRational, exp: usize) -> BigRational {
    (0..exp).fold(BigRational::one(), |acc, _| acc * base)
}

pub(crate) fn binomial(top: usize, k: usize) -> BigInt {
    if k > top {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

fn require_positive_dim(n: usize) -> Result<()> {
    if n < 1 {
        Err(Error::AmbientTooSmall { min: 1, got: n })
    } else {
        Ok(())
    }
}

/// `c(TP^n) = (1+H)^{n+1}`.
pub fn chern_tangent(n: usize) -> Result<BundleChern> {
    require_positive_dim(n)?;
    BundleChern::new(n, ChowClass::linear_unit(n, rat(1)).pow(n as i64 + 1)?)
}

/// `c(T*P^n) = (1-H)^{n+1}`.
pub fn chern_cotangent(n: usize) -> Result<BundleChern> {
    require_positive_dim(n)?;
    BundleChern::new(n, ChowClass::linear_unit(n, rat(-1)).pow(n as i64 + 1)?)
}

/// `c(O(d)) = 1 + dH`; any integer `d`.
pub fn chern_line(n: usize, d: i64) -> BundleChern {
    BundleChern {
        rank: 1,
        total: ChowClass::linear_unit(n, rat(d)),
    }
}

/// Whitney sum: ranks add, totals multiply.
pub fn chern_sum(bundles: &[BundleChern]) -> Result<BundleChern> {
    let (first, rest) = bundles.split_first().ok_or(Error::Empty)?;
    let mut out = first.clone();
    for b in rest {
        out = BundleChern {
            rank: out.rank + b.rank,
            total: out.total.checked_mul(&b.total)?,
        };
    }
    Ok(out)
}

/// `E ⊗ L`; see [`BundleChern::twist`].
pub fn chern_twist(e: &BundleChern, c1: &ChowClass) -> Result<BundleChern> {
    e.twist(c1)
}

/// Segre class of a smooth subvariety: `c(N)^{-1} ∩ [Z]`.
pub fn segre_smooth(normal: &BundleChern, z_class: &ChowClass) -> Result<ChowClass> {
    normal.total.invert()?.checked_mul(z_class)
}

/// `[X] = (prod d_i) H^r` for a complete intersection of hypersurfaces of the given degrees.
pub fn fundamental_class_ci(n: usize, degrees: &[i64]) -> Result<ChowClass> {
    if degrees.len() > n {
        return Err(Error::TooManyHypersurfaces {
            count: degrees.len(),
            ambient_dim: n,
        });
    }
    if let Some(&bad) = degrees.iter().find(|&&d| d <= 0) {
        return Err(Error::NonPositiveDegree(bad));
    }
    let product: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    Ok(ChowClass::monomial(
        n,
        degrees.len(),
        BigRational::from_integer(product),
    ))
}

/// Normal bundle `O(d_1) ⊕ ... ⊕ O(d_r)` of a complete intersection.
pub fn normal_bundle_ci(n: usize, degrees: &[i64]) -> Result<BundleChern> {
    if degrees.is_empty() {
        return Ok(BundleChern::trivial_zero(n));
    }
    let lines: Vec<BundleChern> = degrees.iter().map(|&d| chern_line(n, d)).collect();
    chern_sum(&lines)
}
