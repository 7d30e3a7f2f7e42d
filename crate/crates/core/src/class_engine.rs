//! Fulton-Johnson, Schwartz-MacPherson and Milnor classes.
//!
//! Every class on a subvariety `X ⊂ P^n` is handled through its pushforward
//! to `P^n`, so intersection products and cap products are both truncated
//! multiplication in [`ChowClass`]. The Milnor class
//! `M(X) = (-1)^{dim X} (c^FJ(X) - c^SM(X))` is computed along six routes:
//!
//! * `definition`: the defining difference, with `c^SM` from a smooth model,
//!   inclusion-exclusion or supplied data;
//! * `thm1`: the product formula `(-1)^{dim X} c(TM^{⊕ r-1})^{-1} ∩ (∏ c^FJ_i - ∏ c^SM_i)`;
//! * `expansion`: the signed sum over all products of `M(X_i)` and `c^SM(X_i)`;
//! * `cor11`: the telescoped sum with one Milnor factor per term;
//! * `aluffi`: the μ-class formula (hypersurfaces only);
//! * `pp`: the stratified formula with the `γ_S` weights.

use std::fmt;
use std::str::FromStr;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::bundle_calc;
use crate::chow_ring::{rat, ChowClass};
use crate::error::{Error, Result};
use crate::variety_model::{
    csm_smooth_complete_intersection, strata_topological_order, LocusData, ResolvedHypersurface,
    ResolvedSingularity, Stratification, ValidSpec,
};

/// Route names as accepted on the command line and in input documents.
pub const ROUTE_NAMES: [&str; 6] = ["definition", "thm1", "expansion", "cor11", "aluffi", "pp"];

/// Sign applied on top of `(-1)^{n-1}` in the μ-class formula.
///
/// With codimension measured in the ambient space, this value reproduces
/// `M({x0 x1 = 0} ⊂ P^4) = H^2 + H^3 + H^4` and the odd-dimensional analogue
/// in `P^3` under the convention `M = (-1)^{dim X}(c^FJ - c^SM)`.
pub const ALUFFI_SIGN: i64 = -1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Definition,
    Thm1,
    Expansion,
    Cor11,
    Aluffi,
    Pp,
}

impl Route {
    pub const ALL: [Route; 6] = [
        Route::Definition,
        Route::Thm1,
        Route::Expansion,
        Route::Cor11,
        Route::Aluffi,
        Route::Pp,
    ];

    pub fn name(self) -> &'static str {
        ROUTE_NAMES[self as usize]
    }

    /// Routes that rely on the transversality of the hypersurfaces.
    pub fn needs_transversality(self) -> bool {
        matches!(self, Route::Thm1 | Route::Expansion | Route::Cor11 | Route::Pp)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown route {s:?}"))
    }
}

fn sign(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn product(n: usize, factors: &[&ChowClass]) -> Result<ChowClass> {
    factors
        .iter()
        .try_fold(ChowClass::one(n), |acc, f| acc.checked_mul(f))
}

/// `c((TM)^{⊕ r-1})^{-1}` for `M = P^n`.
pub fn tangent_correction(n: usize, r: usize) -> Result<ChowClass> {
    if r <= 1 {
        return Ok(ChowClass::one(n));
    }
    let tangent = bundle_calc::chern_tangent(n)?;
    tangent.total().pow(-(r as i64 - 1))
}

fn same_length(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LengthMismatch(a, b))
    }
}

/// `c^FJ(X) = c(TP^n) c(⊕ O(d_i))^{-1} ∩ [X]`.
pub fn cfj_ci(n: usize, degrees: &[i64]) -> Result<ChowClass> {
    let fundamental = bundle_calc::fundamental_class_ci(n, degrees)?;
    let normal = bundle_calc::normal_bundle_ci(n, degrees)?;
    bundle_calc::chern_tangent(n)?
        .total()
        .checked_mul(&normal.total().invert()?)?
        .checked_mul(&fundamental)
}

/// `c^SM` of a smooth hypersurface, which equals its Fulton-Johnson class.
pub fn csm_smooth_ci(n: usize, hypersurface: &ResolvedHypersurface) -> Result<ChowClass> {
    if !hypersurface.is_smooth() {
        return Err(Error::MissingData(format!("{} is not smooth", hypersurface.name)));
    }
    cfj_ci(n, &[hypersurface.degree])
}

/// `c^SM` of `X_1 ∩ ... ∩ X_r` where each `X_i` is a union of smooth
/// components in general position (`arrangements[i]` lists their degrees).
///
/// `X` is the union over choices of one component per `X_i`; every
/// intersection of such pieces is the smooth complete intersection of the
/// distinct components involved, so inclusion-exclusion applies.
pub fn csm_arrangement_intersection(n: usize, arrangements: &[Vec<i64>]) -> Result<ChowClass> {
    if arrangements.is_empty() {
        return Err(Error::Empty);
    }
    let mut offsets = Vec::with_capacity(arrangements.len());
    let mut degrees: Vec<i64> = Vec::new();
    for components in arrangements {
        if components.is_empty() {
            return Err(Error::Empty);
        }
        offsets.push(degrees.len());
        degrees.extend(components);
    }
    // each piece is a bitmask over the global component list
    let mut pieces: Vec<u64> = vec![0];
    for (components, &offset) in arrangements.iter().zip(&offsets) {
        pieces = pieces
            .iter()
            .flat_map(|&mask| (0..components.len()).map(move |k| mask | 1 << (offset + k)))
            .collect();
    }
    if pieces.len() > 20 || degrees.len() > 64 {
        return Err(Error::MissingData(format!(
            "inclusion-exclusion over {} pieces is too large",
            pieces.len()
        )));
    }
    let mut total = ChowClass::zero(n);
    for subset in 1u64..(1 << pieces.len()) {
        let members = subset.count_ones() as i64;
        let union = pieces
            .iter()
            .enumerate()
            .filter(|(p, _)| subset >> p & 1 == 1)
            .fold(0u64, |acc, (_, &mask)| acc | mask);
        let chosen: Vec<i64> = (0..degrees.len())
            .filter(|&c| union >> c & 1 == 1)
            .map(|c| degrees[c])
            .collect();
        let term = csm_smooth_complete_intersection(n, &chosen)?;
        total = total.checked_add(&term.scale_int(sign(members + 1)))?;
    }
    Ok(total)
}

/// `c^SM` of a hypersurface that is a transversal arrangement of smooth components.
pub fn csm_inclusion_exclusion(n: usize, hypersurface: &ResolvedHypersurface) -> Result<ChowClass> {
    match &hypersurface.singularity {
        ResolvedSingularity::Arrangement(components) => {
            csm_arrangement_intersection(n, std::slice::from_ref(components))
        }
        ResolvedSingularity::Smooth => csm_smooth_ci(n, hypersurface),
        ResolvedSingularity::Stratified => Err(Error::MissingData(format!(
            "{} is not an arrangement",
            hypersurface.name
        ))),
    }
}

/// `M(X) = (-1)^{dim X} (c^FJ(X) - c^SM(X))`.
pub fn milnor_definition(cfj: &ChowClass, csm: &ChowClass, dim_x: i64) -> Result<ChowClass> {
    Ok(cfj.checked_sub(csm)?.scale_int(sign(dim_x)))
}

/// `c^SM(X) = c(TM^{⊕ r-1})^{-1} ∩ ∏ c^SM(X_i)` for transversal `X_i`.
pub fn csm_thm1(csm_list: &[ChowClass], n: usize) -> Result<ChowClass> {
    product_formula(csm_list, n)
}

/// `c^FJ(X) = c(TM^{⊕ r-1})^{-1} ∩ ∏ c^FJ(X_i)`.
pub fn cfj_thm1(cfj_list: &[ChowClass], n: usize) -> Result<ChowClass> {
    product_formula(cfj_list, n)
}

fn product_formula(list: &[ChowClass], n: usize) -> Result<ChowClass> {
    if list.is_empty() {
        return Err(Error::Empty);
    }
    let refs: Vec<&ChowClass> = list.iter().collect();
    tangent_correction(n, list.len())?.checked_mul(&product(n, &refs)?)
}

/// Milnor class of a transversal intersection from the classes of its factors.
pub fn milnor_thm1(
    cfj_list: &[ChowClass],
    csm_list: &[ChowClass],
    n: usize,
    dim_x: i64,
) -> Result<ChowClass> {
    same_length(cfj_list.len(), csm_list.len())?;
    if cfj_list.is_empty() {
        return Err(Error::Empty);
    }
    let cfj_refs: Vec<&ChowClass> = cfj_list.iter().collect();
    let csm_refs: Vec<&ChowClass> = csm_list.iter().collect();
    let difference = product(n, &cfj_refs)?.checked_sub(&product(n, &csm_refs)?)?;
    Ok(tangent_correction(n, cfj_list.len())?
        .checked_mul(&difference)?
        .scale_int(sign(dim_x)))
}

/// Which class fills one slot of a term in the signed expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Milnor,
    Csm,
}

/// Factor patterns of the signed expansion: every choice of `M(X_i)` or
/// `c^SM(X_i)` per slot except all `c^SM`. Slot `i` is `Csm` when bit `i`
/// of the enumeration index is set.
pub fn expansion_terms(r: usize) -> Vec<Vec<Factor>> {
    let all_csm = (1u64 << r) - 1;
    (0..all_csm)
        .map(|mask| {
            (0..r)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Factor::Csm
                    } else {
                        Factor::Milnor
                    }
                })
                .collect()
        })
        .collect()
}

/// Exponent of `(-1)` attached to a term: `nr - n + sum_{slots with c^SM} (n - d_i)`,
/// where `d_i` is the codimension of `X_i`.
pub fn expansion_sign_exponent(pattern: &[Factor], ranks: &[i64], n: usize) -> i64 {
    let n = n as i64;
    let r = pattern.len() as i64;
    let csm_part: i64 = pattern
        .iter()
        .zip(ranks)
        .filter(|(f, _)| **f == Factor::Csm)
        .map(|(_, d)| n - d)
        .sum();
    n * r - n + csm_part
}

/// Milnor class as the signed sum over products of `M(X_i)` and `c^SM(X_i)`.
///
/// `ranks[i]` is the codimension of `X_i` (1 for a hypersurface).
pub fn milnor_expansion(
    m_list: &[ChowClass],
    csm_list: &[ChowClass],
    ranks: &[i64],
    n: usize,
) -> Result<ChowClass> {
    same_length(m_list.len(), csm_list.len())?;
    same_length(m_list.len(), ranks.len())?;
    let r = m_list.len();
    if r == 0 {
        return Err(Error::Empty);
    }
    let mut sum = ChowClass::zero(n);
    for pattern in expansion_terms(r) {
        let factors: Vec<&ChowClass> = pattern
            .iter()
            .enumerate()
            .map(|(i, f)| match f {
                Factor::Milnor => &m_list[i],
                Factor::Csm => &csm_list[i],
            })
            .collect();
        let term = product(n, &factors)?;
        sum = sum.checked_add(&term.scale_int(sign(expansion_sign_exponent(&pattern, ranks, n))))?;
    }
    tangent_correction(n, r)?.checked_mul(&sum)
}

/// Milnor class as `c(TM^{⊕ r-1})^{-1} ∩ sum_i (-1)^{D - d_i} a_{1,i} ⋯ a_{r-1,i} M(X_i)`
/// with `a_{j,i} = c^SM(X_{j+1})` for `i <= j` and `c^FJ(X_j)` for `i > j`
/// (1-based), `D = sum d_i` over codimensions.
pub fn milnor_cor11(
    m_list: &[ChowClass],
    csm_list: &[ChowClass],
    cfj_list: &[ChowClass],
    ranks: &[i64],
    n: usize,
) -> Result<ChowClass> {
    let r = m_list.len();
    same_length(r, csm_list.len())?;
    same_length(r, cfj_list.len())?;
    same_length(r, ranks.len())?;
    if r == 0 {
        return Err(Error::Empty);
    }
    let total_rank: i64 = ranks.iter().sum();
    let mut sum = ChowClass::zero(n);
    for i in 1..=r {
        let mut factors: Vec<&ChowClass> = (1..r)
            .map(|j| if i <= j { &csm_list[j] } else { &cfj_list[j - 1] })
            .collect();
        factors.push(&m_list[i - 1]);
        let term = product(n, &factors)?;
        sum = sum.checked_add(&term.scale_int(sign(total_rank - ranks[i - 1])))?;
    }
    tangent_correction(n, r)?.checked_mul(&sum)
}

/// `μ_L(Sing X) = c(T*P^n ⊗ O(d)) ∩ s(Sing X, P^n)`; zero for an empty singular locus.
pub fn mu_class(n: usize, degree: i64, sing: Option<&LocusData>) -> Result<ChowClass> {
    let Some(sing) = sing else {
        return Ok(ChowClass::zero(n));
    };
    let normal = sing
        .normal
        .as_ref()
        .ok_or_else(|| Error::MissingData("singular locus without normal bundle".into()))?;
    let twisted = bundle_calc::chern_cotangent(n)?.twist(&ChowClass::monomial(n, 1, rat(degree)))?;
    let segre = bundle_calc::segre_smooth(normal, &sing.class)?;
    twisted.total().checked_mul(&segre)
}

/// `M(X) = σ (-1)^{n-1} c(O(d))^{n-1} ∩ (μ^∨ ⊗ O(d))` with `σ = ALUFFI_SIGN`.
pub fn milnor_aluffi(mu: &ChowClass, degree: i64, n: usize) -> Result<ChowClass> {
    let c1 = ChowClass::monomial(n, 1, rat(degree));
    let line = ChowClass::linear_unit(n, rat(degree));
    let twisted = mu.dual().tensor_line(&c1)?;
    let scaled = line.pow(n as i64 - 1)?.checked_mul(&twisted)?;
    Ok(scaled.scale_int(ALUFFI_SIGN * sign(n as i64 - 1)))
}

/// `μ(x) = (-1)^{dim X} (χ(F_x) - 1)` for a hypersurface `X` of dimension `dim_x`.
pub fn local_milnor_number(chi_milnor_fiber: i64, dim_x: i64) -> i64 {
    sign(dim_x) * (chi_milnor_fiber - 1)
}

/// Fills `mu` and `gamma` on every stratum of a hypersurface of dimension `dim_x`.
///
/// `γ_S = μ_S - sum γ_{S'}` over the strata `S'` whose closure contains `S`,
/// processed from the open stratum downward.
pub fn gamma_from_mu(s: &Stratification, dim_x: i64) -> Result<Stratification> {
    let order = strata_topological_order(s).map_err(Error::MissingData)?;
    let mut out = s.clone();
    for &idx in &order {
        let mu = local_milnor_number(out.strata[idx].chi_milnor_fiber, dim_x);
        let above: i64 = (0..out.strata.len())
            .filter(|&other| other != idx && out.contains[other][idx])
            .map(|other| {
                out.strata[other]
                    .gamma
                    .expect("closure order is a linear extension")
            })
            .sum();
        out.strata[idx].mu = Some(mu);
        out.strata[idx].gamma = Some(mu - above);
    }
    Ok(out)
}

fn filled_gamma(s: &Stratification, index: usize) -> Result<i64> {
    s.strata[index]
        .gamma
        .ok_or_else(|| Error::MissingData(format!("γ of stratum {} not computed", s.strata[index].name)))
}

fn closure_csm<'a>(
    s: &'a Stratification,
    index: usize,
    csm_hypersurface: Option<&'a ChowClass>,
) -> Result<&'a ChowClass> {
    let stratum = &s.strata[index];
    stratum
        .csm_closure
        .as_ref()
        .or(if s.is_open(index) { csm_hypersurface } else { None })
        .ok_or_else(|| Error::MissingData(format!("c^SM of the closure of stratum {}", stratum.name)))
}

/// `M(X) = sum_S γ_S c(O(d))^{-1} ∩ c^SM(closure S)` for a hypersurface of degree `d`.
///
/// Strata need `gamma` filled (see [`gamma_from_mu`]).
pub fn milnor_pp_hypersurface(s: &Stratification, degree: i64, n: usize) -> Result<ChowClass> {
    let line_inv = ChowClass::linear_unit(n, rat(degree)).invert()?;
    let mut sum = ChowClass::zero(n);
    for index in 0..s.strata.len() {
        let gamma = filled_gamma(s, index)?;
        if gamma == 0 {
            continue;
        }
        let csm = closure_csm(s, index, None)?;
        sum = sum.checked_add(&csm.scale_int(gamma))?;
    }
    line_inv.checked_mul(&sum)
}

/// Stratified formula for a complete intersection of hypersurfaces.
///
/// Sums over all tuples of strata except the all-regular one, with weight
/// `(-1)^{(n-1) sum ε_i} ∏ γ_{S_i}^{1-ε_i}` and bundle factor
/// `∏ c(L_i)^{ε_i} / c(⊕ L_i)`, where `ε_i = 1` exactly for the open stratum.
/// `csm_hypersurfaces[i]` is `c^SM(X_i)`, used for open strata without closure data.
pub fn milnor_pp_ci(
    stratifications: &[Stratification],
    csm_hypersurfaces: &[Option<ChowClass>],
    degrees: &[i64],
    n: usize,
) -> Result<ChowClass> {
    let r = stratifications.len();
    same_length(r, degrees.len())?;
    same_length(r, csm_hypersurfaces.len())?;
    if r == 0 {
        return Err(Error::Empty);
    }
    let lines: Vec<ChowClass> = degrees
        .iter()
        .map(|&d| ChowClass::linear_unit(n, rat(d)))
        .collect();
    let line_refs: Vec<&ChowClass> = lines.iter().collect();
    let sum_inv = product(n, &line_refs)?.invert()?;

    let sizes: Vec<usize> = stratifications.iter().map(|s| s.strata.len()).collect();
    let mut tuple = vec![0usize; r];
    let mut sum = ChowClass::zero(n);
    loop {
        let all_open = tuple.iter().zip(stratifications).all(|(&idx, s)| s.is_open(idx));
        if !all_open {
            let mut weight = BigRational::from_integer(1.into());
            let mut eps_total = 0i64;
            let mut bundle = sum_inv.clone();
            let mut factors: Vec<&ChowClass> = Vec::with_capacity(r);
            for (i, (&idx, s)) in tuple.iter().zip(stratifications).enumerate() {
                if s.is_open(idx) {
                    eps_total += 1;
                    bundle = bundle.checked_mul(&lines[i])?;
                } else {
                    weight *= rat(filled_gamma(s, idx)?);
                }
                if weight.is_zero() {
                    break;
                }
                factors.push(closure_csm(s, idx, csm_hypersurfaces[i].as_ref())?);
            }
            if !weight.is_zero() {
                weight *= rat(sign((n as i64 - 1) * eps_total));
                let term = bundle.checked_mul(&product(n, &factors)?)?;
                sum = sum.checked_add(&term.scale(&weight))?;
            }
        }
        // odometer over stratum tuples
        let mut slot = 0;
        loop {
            if slot == r {
                let prefactor = sign((n * r) as i64 - n as i64);
                return Ok(tangent_correction(n, r)?.checked_mul(&sum)?.scale_int(prefactor));
            }
            tuple[slot] += 1;
            if tuple[slot] < sizes[slot] {
                break;
            }
            tuple[slot] = 0;
            slot += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarietyKind {
    Hypersurface,
    Intersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// At least two routes computed and all equal.
    Agree,
    Disagree,
    /// Exactly one route computed.
    Single,
    Unavailable,
}

/// Result of one route: the class, or the reason the route does not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteOutcome {
    pub route: Route,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ChowClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RouteOutcome {
    fn computed(route: Route, class: ChowClass) -> Self {
        RouteOutcome {
            route,
            class: Some(class),
            note: None,
        }
    }

    fn skipped(route: Route, note: impl Into<String>) -> Self {
        RouteOutcome {
            route,
            class: None,
            note: Some(note.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourcedClass {
    pub class: ChowClass,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyReport {
    pub name: String,
    pub kind: VarietyKind,
    pub dim: usize,
    pub degrees: Vec<i64>,
    pub fundamental_class: ChowClass,
    pub cfj: ChowClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csm: Option<SourcedClass>,
    /// `c^SM` from the product formula, reported alongside for intersections.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csm_product: Option<ChowClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<String>,
    pub milnor: Vec<RouteOutcome>,
    pub verdict: Verdict,
}

impl VarietyReport {
    pub fn route(&self, route: Route) -> Option<&ChowClass> {
        self.milnor
            .iter()
            .find(|o| o.route == route)
            .and_then(|o| o.class.as_ref())
    }
}

/// Conventions under which the classes were computed and compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub representation: String,
    pub aluffi_grading: String,
    pub aluffi_sign: i64,
    pub pp_milnor_number_exponent: String,
    pub transversality: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            representation: "pushforward to H_*(P^n) = Z[H]/(H^{n+1}); routes are compared after pushforward"
                .into(),
            aluffi_grading: "codimension in the ambient P^n".into(),
            aluffi_sign: ALUFFI_SIGN,
            pp_milnor_number_exponent: "dim X_i".into(),
            transversality: "asserted by the input, not verified".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub ambient_dim: usize,
    pub transversality_asserted: bool,
    pub conventions: Conventions,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub varieties: Vec<VarietyReport>,
    pub integrality_checked: bool,
}

impl ClassReport {
    pub fn has_disagreement(&self) -> bool {
        self.varieties.iter().any(|v| v.verdict == Verdict::Disagree)
    }

    pub fn variety(&self, name: &str) -> Option<&VarietyReport> {
        self.varieties.iter().find(|v| v.name == name)
    }
}

/// Banner shown whenever a product-formula route is reported for an intersection.
pub fn transversality_warning(asserted: bool) -> String {
    if asserted {
        "WARNING: transversality of the hypersurfaces is asserted by the input and has not been verified; \
         the thm1, expansion, cor11 and pp routes are valid only under that hypothesis"
            .to_string()
    } else {
        "WARNING: transversality is NOT asserted; the thm1, expansion, cor11 and pp routes assume it and \
         may disagree with the definition route for this input"
            .to_string()
    }
}

struct HypersurfaceClasses {
    dim: i64,
    cfj: ChowClass,
    csm: Option<SourcedClass>,
    csm_independent: bool,
    milnor: Option<ChowClass>,
    stratification: Option<Stratification>,
}

fn verdict(outcomes: &[RouteOutcome], extra_mismatch: bool) -> Verdict {
    let classes: Vec<&ChowClass> = outcomes.iter().filter_map(|o| o.class.as_ref()).collect();
    match classes.as_slice() {
        _ if extra_mismatch => Verdict::Disagree,
        [] => Verdict::Unavailable,
        [_] => Verdict::Single,
        [first, rest @ ..] => {
            if rest.iter().all(|c| c == first) {
                Verdict::Agree
            } else {
                Verdict::Disagree
            }
        }
    }
}

fn ensure_integral(class: &ChowClass, route: &str, variety: &str) -> Result<()> {
    if class.is_integral() {
        Ok(())
    } else {
        Err(Error::NonIntegral {
            route: route.to_string(),
            variety: variety.to_string(),
            class: class.to_string(),
        })
    }
}

fn compute_hypersurface(
    n: usize,
    h: &ResolvedHypersurface,
    selected: &[Route],
    warnings: &mut Vec<String>,
) -> Result<(HypersurfaceClasses, VarietyReport)> {
    let dim = n as i64 - 1;
    let cfj = cfj_ci(n, &[h.degree])?;

    let computed_csm = match &h.singularity {
        ResolvedSingularity::Smooth => Some(SourcedClass {
            class: csm_smooth_ci(n, h)?,
            source: "smooth".into(),
        }),
        ResolvedSingularity::Arrangement(_) => Some(SourcedClass {
            class: csm_inclusion_exclusion(n, h)?,
            source: "inclusion-exclusion".into(),
        }),
        ResolvedSingularity::Stratified => None,
    };
    let mut csm_mismatch = false;
    let csm = match (computed_csm, &h.csm_supplied) {
        (Some(computed), Some(supplied)) => {
            if computed.class != *supplied {
                csm_mismatch = true;
                warnings.push(format!(
                    "{}: supplied c^SM {} differs from the {} value {}",
                    h.name, supplied, computed.source, computed.class
                ));
            }
            Some(computed)
        }
        (Some(computed), None) => Some(computed),
        (None, Some(supplied)) => Some(SourcedClass {
            class: supplied.clone(),
            source: "supplied".into(),
        }),
        (None, None) => None,
    };

    let aluffi = match (&h.singularity, &h.sing_locus) {
        (ResolvedSingularity::Smooth, _) => Some(ChowClass::zero(n)),
        (_, Some(locus)) => {
            let mu = mu_class(n, h.degree, Some(locus))?;
            Some(milnor_aluffi(&mu, h.degree, n)?)
        }
        _ => None,
    };
    let stratification = h
        .stratification
        .as_ref()
        .map(|s| gamma_from_mu(s, dim))
        .transpose()?;
    let pp = stratification
        .as_ref()
        .map(|s| milnor_pp_hypersurface(s, h.degree, n))
        .transpose()?;
    let definition = csm
        .as_ref()
        .map(|c| milnor_definition(&cfj, &c.class, dim))
        .transpose()?;

    let best_milnor = definition
        .clone()
        .or_else(|| pp.clone())
        .or_else(|| aluffi.clone());
    let best_source = if definition.is_some() {
        "definition"
    } else if pp.is_some() {
        "pp"
    } else {
        "aluffi"
    };
    let csm_independent = csm.is_some();
    let csm = csm.or_else(|| {
        best_milnor.as_ref().map(|m| SourcedClass {
            class: &cfj - &m.scale_int(sign(dim)),
            source: format!("derived from the {best_source} Milnor class"),
        })
    });

    let mut outcomes = Vec::new();
    for &route in selected {
        let outcome = match route {
            Route::Definition => match &definition {
                Some(m) => RouteOutcome::computed(route, m.clone()),
                None => RouteOutcome::skipped(route, "c^SM not available independently"),
            },
            Route::Thm1 => match (&csm, csm_independent) {
                (Some(c), true) => RouteOutcome::computed(
                    route,
                    milnor_thm1(std::slice::from_ref(&cfj), std::slice::from_ref(&c.class), n, dim)?,
                ),
                _ => RouteOutcome::skipped(route, "c^SM not available independently"),
            },
            Route::Expansion => match (&best_milnor, &csm) {
                (Some(m), Some(c)) => RouteOutcome::computed(
                    route,
                    milnor_expansion(std::slice::from_ref(m), std::slice::from_ref(&c.class), &[1], n)?,
                ),
                _ => RouteOutcome::skipped(route, "no Milnor class available for the factor"),
            },
            Route::Cor11 => match (&best_milnor, &csm) {
                (Some(m), Some(c)) => RouteOutcome::computed(
                    route,
                    milnor_cor11(
                        std::slice::from_ref(m),
                        std::slice::from_ref(&c.class),
                        std::slice::from_ref(&cfj),
                        &[1],
                        n,
                    )?,
                ),
                _ => RouteOutcome::skipped(route, "no Milnor class available for the factor"),
            },
            Route::Aluffi => match &aluffi {
                Some(m) => RouteOutcome::computed(route, m.clone()),
                None => RouteOutcome::skipped(route, "no singular-locus descriptor"),
            },
            Route::Pp => match &pp {
                Some(m) => RouteOutcome::computed(route, m.clone()),
                None => RouteOutcome::skipped(route, "no stratification"),
            },
        };
        if let Some(class) = &outcome.class {
            ensure_integral(class, route.name(), &h.name)?;
        }
        outcomes.push(outcome);
    }
    ensure_integral(&cfj, "cfj", &h.name)?;
    if let Some(c) = &csm {
        ensure_integral(&c.class, "csm", &h.name)?;
    }

    let report = VarietyReport {
        name: h.name.clone(),
        kind: VarietyKind::Hypersurface,
        dim: n - 1,
        degrees: vec![h.degree],
        fundamental_class: bundle_calc::fundamental_class_ci(n, &[h.degree])?,
        cfj: cfj.clone(),
        csm: csm.clone(),
        csm_product: None,
        euler_characteristic: csm.as_ref().map(|c| c.class.integral().to_string()),
        verdict: verdict(&outcomes, csm_mismatch),
        milnor: outcomes,
    };
    Ok((
        HypersurfaceClasses {
            dim,
            cfj,
            csm,
            csm_independent,
            milnor: best_milnor,
            stratification,
        },
        report,
    ))
}

fn compute_intersection(
    spec: &ValidSpec,
    parts: &[HypersurfaceClasses],
    selected: &[Route],
    warnings: &mut Vec<String>,
) -> Result<VarietyReport> {
    let n = spec.ambient_dim();
    let r = parts.len();
    let degrees = spec.degrees();
    let dim = spec.dim() as i64;
    let name = spec.intersection_name();
    let ranks = vec![1i64; r];
    let cfj = cfj_ci(n, &degrees)?;

    let all_arrangements = spec
        .hypersurfaces()
        .iter()
        .all(|h| h.singularity != ResolvedSingularity::Stratified);
    let csm_direct = if let Some((_, locus)) = spec.intersection() {
        locus.csm.clone().map(|class| SourcedClass {
            class,
            source: "supplied".into(),
        })
    } else if all_arrangements && spec.transversality_asserted() {
        let arrangements: Vec<Vec<i64>> = spec
            .hypersurfaces()
            .iter()
            .map(|h| match &h.singularity {
                ResolvedSingularity::Arrangement(c) => c.clone(),
                _ => vec![h.degree],
            })
            .collect();
        Some(SourcedClass {
            class: csm_arrangement_intersection(n, &arrangements)?,
            source: "inclusion-exclusion".into(),
        })
    } else {
        None
    };

    let csm_list: Option<Vec<ChowClass>> = parts
        .iter()
        .map(|p| p.csm.as_ref().map(|c| c.class.clone()))
        .collect();
    let independent_csm = parts.iter().all(|p| p.csm_independent);
    let cfj_list: Vec<ChowClass> = parts.iter().map(|p| p.cfj.clone()).collect();
    let m_list: Option<Vec<ChowClass>> = parts.iter().map(|p| p.milnor.clone()).collect();
    let csm_product = csm_list.as_ref().map(|l| csm_thm1(l, n)).transpose()?;

    let mut csm_mismatch = false;
    if let (Some(direct), Some(prod)) = (&csm_direct, &csm_product) {
        if direct.class != *prod && independent_csm {
            csm_mismatch = true;
            warnings.push(format!(
                "{name}: c^SM from {} ({}) differs from the product formula ({})",
                direct.source, direct.class, prod
            ));
        }
    }

    let mut outcomes = Vec::new();
    for &route in selected {
        let outcome = match route {
            Route::Definition => match &csm_direct {
                Some(c) => RouteOutcome::computed(route, milnor_definition(&cfj, &c.class, dim)?),
                None => RouteOutcome::skipped(route, "c^SM of the intersection not available independently"),
            },
            Route::Thm1 => match &csm_list {
                Some(l) => RouteOutcome::computed(route, milnor_thm1(&cfj_list, l, n, dim)?),
                None => RouteOutcome::skipped(route, "c^SM of some factor unavailable"),
            },
            Route::Expansion => match (&m_list, &csm_list) {
                (Some(m), Some(c)) => RouteOutcome::computed(route, milnor_expansion(m, c, &ranks, n)?),
                _ => RouteOutcome::skipped(route, "Milnor class of some factor unavailable"),
            },
            Route::Cor11 => match (&m_list, &csm_list) {
                (Some(m), Some(c)) => {
                    RouteOutcome::computed(route, milnor_cor11(m, c, &cfj_list, &ranks, n)?)
                }
                _ => RouteOutcome::skipped(route, "Milnor class of some factor unavailable"),
            },
            Route::Aluffi => RouteOutcome::skipped(route, "hypersurface-only route"),
            Route::Pp => {
                let strata: Option<Vec<Stratification>> =
                    parts.iter().map(|p| p.stratification.clone()).collect();
                match strata {
                    Some(s) => {
                        let csm_h: Vec<Option<ChowClass>> = parts
                            .iter()
                            .map(|p| p.csm.as_ref().map(|c| c.class.clone()))
                            .collect();
                        match milnor_pp_ci(&s, &csm_h, &degrees, n) {
                            Ok(m) => RouteOutcome::computed(route, m),
                            Err(Error::MissingData(what)) => {
                                RouteOutcome::skipped(route, format!("missing {what}"))
                            }
                            Err(e) => return Err(e),
                        }
                    }
                    None => RouteOutcome::skipped(route, "stratification of some factor unavailable"),
                }
            }
        };
        if let Some(class) = &outcome.class {
            ensure_integral(class, route.name(), &name)?;
        }
        outcomes.push(outcome);
    }

    let csm = csm_direct.or_else(|| {
        csm_product.clone().map(|class| SourcedClass {
            class,
            source: "product formula".into(),
        })
    });
    ensure_integral(&cfj, "cfj", &name)?;
    if let Some(c) = &csm {
        ensure_integral(&c.class, "csm", &name)?;
    }
    Ok(VarietyReport {
        name,
        kind: VarietyKind::Intersection,
        dim: spec.dim(),
        fundamental_class: bundle_calc::fundamental_class_ci(n, &degrees)?,
        degrees,
        cfj,
        euler_characteristic: csm.as_ref().map(|c| c.class.integral().to_string()),
        csm,
        csm_product,
        verdict: verdict(&outcomes, csm_mismatch),
        milnor: outcomes,
    })
}

/// Computes all classes of every hypersurface and of their intersection along the selected routes.
///
/// Fails with [`Error::NonIntegral`] when a reported class has a non-integral coefficient.
pub fn compute_report(spec: &ValidSpec, routes: &[Route]) -> Result<ClassReport> {
    let n = spec.ambient_dim();
    let mut selected: Vec<Route> = routes.to_vec();
    selected.sort();
    selected.dedup();
    let mut warnings = Vec::new();
    let mut varieties = Vec::new();
    let mut parts = Vec::new();
    for h in spec.hypersurfaces() {
        let (classes, report) = compute_hypersurface(n, h, &selected, &mut warnings)?;
        parts.push(classes);
        varieties.push(report);
    }
    debug_assert!(parts.iter().all(|p| p.dim == n as i64 - 1));
    if parts.len() >= 2 {
        if selected.iter().any(|r| r.needs_transversality()) {
            warnings.insert(0, transversality_warning(spec.transversality_asserted()));
        }
        varieties.push(compute_intersection(spec, &parts, &selected, &mut warnings)?);
    }
    Ok(ClassReport {
        ambient_dim: n,
        transversality_asserted: spec.transversality_asserted(),
        conventions: Conventions::default(),
        warnings,
        varieties,
        integrality_checked: true,
    })
}
