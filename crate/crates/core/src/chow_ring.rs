//! Exact arithmetic in the Chow ring of projective space.
//!
//! `A(P^n) = Q[H]/(H^{n+1})`, graded by codimension in the ambient space. A
//! homology class of dimension `k` (for instance `[P^k]`) is stored as its
//! pushforward, a multiple of `H^{n-k}`. Cap products with Chern classes and
//! intersection products of pushed-forward cycles are both plain truncated
//! polynomial multiplication in this representation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses an exact rational from `"7"`, `"-3"` or `"5/2"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let trimmed = text.trim();
    BigRational::from_str(trimmed)
        .ok()
        .filter(|_| !trimmed.is_empty())
        .ok_or_else(|| Error::BadCoefficient(text.to_string()))
}

pub(crate) fn rat(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// An element of `Q[H]/(H^{n+1})`.
///
/// `coeffs[j]` is the coefficient of `H^j`; the vector always has exactly
/// `ambient_dim + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    coeffs: Vec<BigRational>,
}

impl ChowClass {
    /// Builds `sum coeffs[j] H^j`, zero-padding up to `H^n`.
    ///
    /// Sequences longer than `n + 1` are rejected rather than truncated.
    pub fn new<I, Q>(ambient_dim: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = Q>,
        Q: Into<BigRational>,
    {
        let mut values: Vec<BigRational> = coeffs.into_iter().map(Into::into).collect();
        if values.len() > ambient_dim + 1 {
            return Err(Error::TooManyCoefficients {
                ambient_dim,
                len: values.len(),
            });
        }
        values.resize(ambient_dim + 1, BigRational::zero());
        Ok(ChowClass { coeffs: values })
    }

    pub fn from_ints(ambient_dim: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(ambient_dim, coeffs.iter().map(|&c| rat(c)))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        ChowClass {
            coeffs: vec![BigRational::zero(); ambient_dim + 1],
        }
    }

    pub fn one(ambient_dim: usize) -> Self {
        Self::constant(ambient_dim, BigRational::one())
    }

    pub fn constant(ambient_dim: usize, value: BigRational) -> Self {
        Self::monomial(ambient_dim, 0, value)
    }

    /// `value * H^degree`; zero when `degree > n`.
    pub fn monomial(ambient_dim: usize, degree: usize, value: BigRational) -> Self {
        let mut class = Self::zero(ambient_dim);
        if degree <= ambient_dim {
            class.coeffs[degree] = value;
        }
        class
    }

    /// `H^degree`, the pushforward of a linear subspace of codimension `degree`.
    pub fn hyperplane_power(ambient_dim: usize, degree: usize) -> Self {
        Self::monomial(ambient_dim, degree, BigRational::one())
    }

    /// `1 + value * H`, the total Chern class of a line bundle with `c_1 = value * H`.
    pub fn linear_unit(ambient_dim: usize, value: BigRational) -> Self {
        let mut class = Self::one(ambient_dim);
        if ambient_dim >= 1 {
            class.coeffs[1] = value;
        }
        class
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `H^degree`, or `None` past the truncation.
    pub fn coeff(&self, degree: usize) -> Option<&BigRational> {
        self.coeffs.get(degree)
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Smallest codimension carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn same_ring(&self, other: &ChowClass) -> Result<()> {
        if self.ambient_dim() == other.ambient_dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            })
        }
    }

    pub fn checked_add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.same_ring(other)?;
        Ok(ChowClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.same_ring(other)?;
        Ok(ChowClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: &BigRational) -> ChowClass {
        ChowClass {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_int(&self, factor: i64) -> ChowClass {
        self.scale(&rat(factor))
    }

    /// Truncated polynomial product.
    pub fn checked_mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.same_ring(other)?;
        let n = self.ambient_dim();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(ChowClass { coeffs: out })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    ///
    /// Solves `sum_{i<=k} u_i v_{k-i} = [k == 0]` degree by degree.
    pub fn invert(&self) -> Result<ChowClass> {
        let lead = self.constant_term();
        if lead.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv_lead = lead.recip();
        let n = self.ambient_dim();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv_lead.clone());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-(acc * &inv_lead));
        }
        Ok(ChowClass { coeffs: out })
    }

    /// `self^k`; negative exponents go through [`ChowClass::invert`].
    pub fn pow(&self, k: i64) -> Result<ChowClass> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = ChowClass::one(self.ambient_dim());
        let mut square = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.checked_mul(&square)?;
            }
            exp >>= 1;
            if exp > 0 {
                square = square.checked_mul(&square)?;
            }
        }
        Ok(result)
    }

    /// Codimension-`j` piece multiplied by `(-1)^j`.
    pub fn dual(&self) -> ChowClass {
        ChowClass {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `sum_j a^j / c(L)^j` for the line bundle with first Chern class `c1`.
    ///
    /// `j` is the codimension in the ambient space.
    pub fn tensor_line(&self, c1: &ChowClass) -> Result<ChowClass> {
        self.same_ring(c1)?;
        let slope = c1.degree_one_coefficient()?;
        let n = self.ambient_dim();
        let line = ChowClass::linear_unit(n, slope);
        let line_inv = line.invert()?;
        let mut factor = ChowClass::one(n);
        let mut out = ChowClass::zero(n);
        for j in 0..=n {
            if !self.coeffs[j].is_zero() {
                let piece = factor.scale(&self.coeffs[j]);
                let shifted = piece.checked_mul(&ChowClass::hyperplane_power(n, j))?;
                out = out.checked_add(&shifted)?;
            }
            factor = factor.checked_mul(&line_inv)?;
        }
        Ok(out)
    }

    /// Coefficient of `H` for a class concentrated in degree one (zero allowed).
    pub fn degree_one_coefficient(&self) -> Result<BigRational> {
        let stray = self
            .coeffs
            .iter()
            .enumerate()
            .any(|(j, c)| j != 1 && !c.is_zero());
        if stray {
            return Err(Error::NotDegreeOne);
        }
        Ok(self.coeffs.get(1).cloned().unwrap_or_else(BigRational::zero))
    }

    /// The codimension-`j` component as a class.
    pub fn component(&self, j: i64) -> Result<ChowClass> {
        let n = self.ambient_dim();
        if j < 0 || j as usize > n {
            return Err(Error::ComponentOutOfRange {
                index: j,
                ambient_dim: n,
            });
        }
        let j = j as usize;
        Ok(ChowClass::monomial(n, j, self.coeffs[j].clone()))
    }

    /// Degree of the zero-dimensional part (coefficient of `H^n`).
    pub fn integral(&self) -> &BigRational {
        &self.coeffs[self.ambient_dim()]
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;

    fn neg(self) -> ChowClass {
        ChowClass {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for ChowClass {
    type Output = ChowClass;

    fn neg(self) -> ChowClass {
        -&self
    }
}

// Operator forms panic on mismatched ambient dimensions; use the checked
// methods where the dimensions come from user input.
impl Add for &ChowClass {
    type Output = ChowClass;

    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.checked_add(rhs).expect("ambient dimensions differ")
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;

    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.checked_sub(rhs).expect("ambient dimensions differ")
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;

    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.checked_mul(rhs).expect("ambient dimensions differ")
    }
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, magnitude: &BigRational, degree: usize) -> fmt::Result {
    let unit = magnitude.is_one();
    match degree {
        0 => write!(f, "{magnitude}"),
        _ => {
            if !unit {
                if magnitude.is_integer() {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            if degree == 1 {
                write!(f, "H")
            } else {
                write!(f, "H^{degree}")
            }
        }
    }
}

/// Renders `a0 + a1 H + a2 H^2 + ...` with zero terms omitted, e.g. `H^2 - 5H^3 + 19H^4`.
impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (degree, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_coeff_term(f, &magnitude, degree)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    ambient_dim: usize,
    coeffs: Vec<CoeffRepr>,
}

/// A coefficient as written in JSON: a decimal string (`"-5"`, `"3/2"`) or a plain integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Int(i64),
    Text(String),
}

impl CoeffRepr {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            CoeffRepr::Int(v) => Ok(rat(*v)),
            CoeffRepr::Text(s) => parse_rational(s),
        }
    }
}

impl Serialize for ChowClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRepr {
            ambient_dim: self.ambient_dim(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| CoeffRepr::Text(c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChowClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ClassRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(CoeffRepr::to_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ChowClass::new(repr.ambient_dim, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: usize, c: &[i64]) -> ChowClass {
        ChowClass::from_ints(n, c).unwrap()
    }

    /// Independent series oracle: expands `prod (1 + a_k H)^{e_k}` by the
    /// generalized binomial theorem in plain integer arithmetic.
    fn binomial_series(n: usize, factors: &[(i64, i64)]) -> Vec<i64> {
        let mut acc = vec![0i64; n + 1];
        acc[0] = 1;
        for &(a, e) in factors {
            // (1 + aH)^e = sum_k binom(e, k) a^k H^k with generalized binomials
            let mut series = vec![0i64; n + 1];
            let mut binom: i128 = 1;
            let mut power: i128 = 1;
            for (k, slot) in series.iter_mut().enumerate() {
                *slot = (binom * power) as i64;
                binom = binom * (e as i128 - k as i128) / (k as i128 + 1);
                power *= a as i128;
            }
            let mut next = vec![0i64; n + 1];
            for i in 0..=n {
                for j in 0..=n - i {
                    next[i + j] += acc[i] * series[j];
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn make_class_pads_and_rejects() {
        let c = class(4, &[0, 2, 6, 8, 4]);
        assert_eq!(c.to_string(), "2H + 6H^2 + 8H^3 + 4H^4");
        assert!(class(3, &[]).is_zero());
        assert_eq!(class(3, &[]).coeffs().len(), 4);
        assert_eq!(
            ChowClass::from_ints(2, &[1, 5, 7, 9]),
            Err(Error::TooManyCoefficients {
                ambient_dim: 2,
                len: 4
            })
        );
    }

    #[test]
    fn additive_operations() {
        assert_eq!(
            &class(3, &[0, 0, 1, 1]) + &class(3, &[0, 0, 0, 1]),
            class(3, &[0, 0, 1, 2])
        );
        let cfj = class(4, &[0, 2, 6, 8, 4]);
        let csm = class(4, &[0, 2, 7, 9, 5]);
        assert_eq!(&cfj - &csm, class(4, &[0, 0, -1, -1, -1]));
        assert!((&cfj + &(-&cfj)).is_zero());
        assert_eq!(cfj.scale_int(-2), class(4, &[0, -4, -12, -16, -8]));
        assert_eq!(
            cfj.checked_add(&class(3, &[1])),
            Err(Error::DimensionMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn multiplication_truncates() {
        let csm_z2 = class(4, &[0, 1, 4, 6, 4]);
        let milnor_z1 = class(4, &[0, 0, 1, 1, 1]);
        assert_eq!(&csm_z2 * &milnor_z1, class(4, &[0, 0, 0, 1, 5]));
        assert_eq!(&csm_z2 * &ChowClass::one(4), csm_z2);
        assert!((&class(4, &[0, 0, 2]) * &class(4, &[0, 0, 0, 1])).is_zero());
        assert!(csm_z2.checked_mul(&class(2, &[1])).is_err());
    }

    #[test]
    fn invert_matches_geometric_series() {
        let u = class(4, &[1, 2]);
        let expected = binomial_series(4, &[(2, -1)]);
        assert_eq!(expected, vec![1, -2, 4, -8, 16]);
        assert_eq!(u.invert().unwrap(), class(4, &expected));
        assert_eq!(ChowClass::one(4).invert().unwrap(), ChowClass::one(4));
        assert_eq!(class(4, &[0, 1]).invert(), Err(Error::NotAUnit));
        // non-unit constant terms are scaled out
        let v = class(3, &[2, 1]);
        assert_eq!(&v * &v.invert().unwrap(), ChowClass::one(3));
    }

    #[test]
    fn powers_match_binomial_expansion() {
        assert_eq!(
            class(4, &[1, 1]).pow(5).unwrap(),
            class(4, &binomial_series(4, &[(1, 5)]))
        );
        assert_eq!(class(4, &[1, 1]).pow(5).unwrap(), class(4, &[1, 5, 10, 10, 5]));
        assert_eq!(class(4, &[1, 2]).pow(3).unwrap(), class(4, &[1, 6, 12, 8]));
        assert_eq!(class(4, &[0, 3, 1]).pow(0).unwrap(), ChowClass::one(4));
        assert_eq!(
            class(4, &[1, 2]).pow(-3).unwrap(),
            class(4, &binomial_series(4, &[(2, -3)]))
        );
        assert_eq!(class(4, &[0, 1]).pow(-1), Err(Error::NotAUnit));
    }

    #[test]
    fn dual_flips_odd_codimensions() {
        assert_eq!(class(4, &[0, 0, 1, 1, 1]).dual(), class(4, &[0, 0, 1, -1, 1]));
        assert_eq!(ChowClass::one(4).dual(), ChowClass::one(4));
        let a = class(5, &[3, -1, 4, 1, -5, 9]);
        assert_eq!(a.dual().dual(), a);
    }

    #[test]
    fn tensor_line_expands_by_series() {
        // H^2/(1+2H)^2 - H^3/(1+2H)^3 + H^4/(1+2H)^4 truncated at H^4
        let n = 4;
        let mut oracle = vec![0i64; n + 1];
        for (j, sign) in [(2usize, 1i64), (3, -1), (4, 1)] {
            let s = binomial_series(n, &[(2, -(j as i64))]);
            for k in 0..=n - j {
                oracle[j + k] += sign * s[k];
            }
        }
        assert_eq!(oracle, vec![0, 0, 1, -5, 19]);
        let a = class(4, &[0, 0, 1, -1, 1]);
        let two_h = class(4, &[0, 2]);
        assert_eq!(a.tensor_line(&two_h).unwrap(), class(4, &oracle));
        assert_eq!(a.tensor_line(&ChowClass::zero(4)).unwrap(), a);
        assert_eq!(a.tensor_line(&class(4, &[1, 2])), Err(Error::NotDegreeOne));
        assert_eq!(a.tensor_line(&class(4, &[0, 0, 1])), Err(Error::NotDegreeOne));
    }

    #[test]
    fn component_and_integral() {
        let a = class(4, &[0, 2, 7]);
        assert_eq!(a.component(2).unwrap(), class(4, &[0, 0, 7]));
        assert!(a.component(5).is_err());
        assert!(a.component(-1).is_err());
        assert_eq!(*class(4, &[0, 2, 7, 9, 5]).integral(), rat(5));
        assert_eq!(*ChowClass::zero(3).integral(), rat(0));
    }

    #[test]
    fn display_normalizes_signs() {
        assert_eq!(class(4, &[0, 0, 1, -5, 19]).to_string(), "H^2 - 5H^3 + 19H^4");
        assert_eq!(class(4, &[0, 0, 0, -1]).to_string(), "-H^3");
        assert_eq!(class(4, &[1, -2]).to_string(), "1 - 2H");
        assert_eq!(ChowClass::zero(2).to_string(), "0");
        let half = ChowClass::new(2, [rat(0), BigRational::new(1.into(), 2.into())]).unwrap();
        assert_eq!(half.to_string(), "(1/2)H");
    }

    #[test]
    fn serde_uses_decimal_strings() {
        let c = ChowClass::new(2, [rat(-3), BigRational::new(5.into(), 2.into())]).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"ambient_dim":2,"coeffs":["-3","5/2","0"]}"#);
        assert_eq!(serde_json::from_str::<ChowClass>(&json).unwrap(), c);
        let ints: ChowClass = serde_json::from_str(r#"{"ambient_dim":3,"coeffs":[0,1]}"#).unwrap();
        assert_eq!(ints, class(3, &[0, 1]));
        assert!(serde_json::from_str::<ChowClass>(r#"{"ambient_dim":1,"coeffs":[0,1,2]}"#).is_err());
        assert!(serde_json::from_str::<ChowClass>(r#"{"ambient_dim":1,"coeffs":["x"]}"#).is_err());
    }
}
