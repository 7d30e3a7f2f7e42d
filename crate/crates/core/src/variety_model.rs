//! Input model for hypersurfaces, complete intersections and their stratifications.
//!
//! The serde types mirror the JSON input document one to one and keep raw
//! (signed) integers so that out-of-range values can be reported with a field
//! path instead of failing deserialization. [`validate`] checks every invariant,
//! aggregates the violations and resolves the geometric data the class engine
//! consumes.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::bundle_calc::{self, BundleChern};
use crate::chow_ring::{rat, ChowClass, CoeffRepr};
use crate::error::{Error, Result};

/// Pushforward of `c^SM(P^k)` to `P^n`: `(1+H)^{k+1} H^{n-k}`.
pub fn csm_linear_subspace(n: usize, k: i64) -> Result<ChowClass> {
    if k < 0 || k as usize > n {
        return Err(Error::SubspaceOutOfRange { k, ambient_dim: n });
    }
    let k = k as usize;
    let chern = ChowClass::linear_unit(n, rat(1)).pow(k as i64 + 1)?;
    chern.checked_mul(&ChowClass::hyperplane_power(n, n - k))
}

/// `c(TP^n) c(N)^{-1} ∩ [X]` for the smooth complete intersection of the given degrees.
///
/// An intersection of more than `n` general hypersurfaces is empty and gets the zero class.
pub fn csm_smooth_complete_intersection(n: usize, degrees: &[i64]) -> Result<ChowClass> {
    if degrees.len() > n {
        return Ok(ChowClass::zero(n));
    }
    let fundamental = bundle_calc::fundamental_class_ci(n, degrees)?;
    let normal = bundle_calc::normal_bundle_ci(n, degrees)?;
    let tangent = bundle_calc::chern_tangent(n)?;
    tangent
        .total()
        .checked_mul(&normal.total().invert()?)?
        .checked_mul(&fundamental)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambient {
    pub kind: String,
    pub dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSpec {
    pub rank: i64,
    pub total: Vec<CoeffRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedLocus {
    pub coeff: i64,
    pub locus: Locus,
}

/// A closed subvariety of `P^n` described by one of the supported models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    /// A linear subspace `P^dim`.
    Linear { dim: i64 },
    /// A smooth complete intersection of hypersurfaces of these degrees.
    CompleteIntersection { degrees: Vec<i64> },
    /// Classes supplied directly (pushforwards to `P^n`).
    Explicit {
        class: Vec<CoeffRepr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        csm: Option<Vec<CoeffRepr>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normal: Option<NormalSpec>,
    },
    /// A union given by an inclusion-exclusion expansion `sum coeff * locus`.
    InclusionExclusion { terms: Vec<WeightedLocus> },
}

/// Geometric data of a resolved [`Locus`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusData {
    pub dim: usize,
    pub class: ChowClass,
    pub csm: Option<ChowClass>,
    pub normal: Option<BundleChern>,
}

fn parse_class(n: usize, coeffs: &[CoeffRepr]) -> std::result::Result<ChowClass, String> {
    let values = coeffs
        .iter()
        .map(CoeffRepr::to_rational)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    ChowClass::new(n, values).map_err(|e| e.to_string())
}

fn homogeneous_degree(class: &ChowClass) -> Option<usize> {
    let low = class.lowest_degree()?;
    class.coeffs()[low + 1..].iter().all(Zero::is_zero).then_some(low)
}

impl Locus {
    pub fn resolve(&self, n: usize) -> std::result::Result<LocusData, String> {
        match self {
            Locus::Linear { dim } => {
                let csm = csm_linear_subspace(n, *dim).map_err(|e| e.to_string())?;
                let k = *dim as usize;
                let codim = n - k;
                let normal = bundle_calc::normal_bundle_ci(n, &vec![1; codim]).map_err(|e| e.to_string())?;
                Ok(LocusData {
                    dim: k,
                    class: ChowClass::hyperplane_power(n, codim),
                    csm: Some(csm),
                    normal: Some(normal),
                })
            }
            Locus::CompleteIntersection { degrees } => {
                if degrees.len() > n {
                    return Err(format!(
                        "{} equations in P^{n} leave an empty locus",
                        degrees.len()
                    ));
                }
                let class = bundle_calc::fundamental_class_ci(n, degrees).map_err(|e| e.to_string())?;
                let csm = csm_smooth_complete_intersection(n, degrees).map_err(|e| e.to_string())?;
                let normal = bundle_calc::normal_bundle_ci(n, degrees).map_err(|e| e.to_string())?;
                Ok(LocusData {
                    dim: n - degrees.len(),
                    class,
                    csm: Some(csm),
                    normal: Some(normal),
                })
            }
            Locus::Explicit { class, csm, normal } => {
                let class = parse_class(n, class)?;
                let codim = homogeneous_degree(&class)
                    .ok_or_else(|| "class must be nonzero and concentrated in one codimension".to_string())?;
                let csm = csm.as_ref().map(|c| parse_class(n, c)).transpose()?;
                let normal = match normal {
                    None => None,
                    Some(spec) => {
                        if spec.rank < 0 {
                            return Err(format!("normal bundle rank {} is negative", spec.rank));
                        }
                        if spec.rank as usize != codim {
                            return Err(format!(
                                "normal bundle rank {} differs from codimension {codim}",
                                spec.rank
                            ));
                        }
                        let total = parse_class(n, &spec.total)?;
                        Some(BundleChern::new(spec.rank as usize, total).map_err(|e| e.to_string())?)
                    }
                };
                Ok(LocusData {
                    dim: n - codim,
                    class,
                    csm,
                    normal,
                })
            }
            Locus::InclusionExclusion { terms } => {
                if terms.is_empty() {
                    return Err("inclusion-exclusion needs at least one term".to_string());
                }
                let resolved = terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| t.locus.resolve(n).map_err(|e| format!("terms[{i}]: {e}")))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let dim = resolved.iter().map(|d| d.dim).max().unwrap_or(0);
                let mut class = ChowClass::zero(n);
                let mut csm = Some(ChowClass::zero(n));
                for (term, data) in terms.iter().zip(&resolved) {
                    let weight = rat(term.coeff);
                    if data.dim == dim {
                        class = &class + &data.class.scale(&weight);
                    }
                    csm = match (csm, &data.csm) {
                        (Some(acc), Some(c)) => Some(&acc + &c.scale(&weight)),
                        _ => None,
                    };
                }
                if homogeneous_degree(&class).is_none() {
                    return Err(
                        "top-dimensional terms cancel; the union has no fundamental class".to_string()
                    );
                }
                Ok(LocusData {
                    dim,
                    class,
                    csm,
                    normal: None,
                })
            }
        }
    }
}

fn default_true() -> bool {
    true
}

/// How the singularities of a hypersurface are described.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Singularity {
    Smooth,
    /// Union of smooth hypersurfaces of the given degrees meeting transversally.
    Arrangement {
        components: Vec<i64>,
        #[serde(default = "default_true")]
        transversal: bool,
    },
    /// Singularities described only through the `strata` field.
    Stratified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSpec {
    pub name: String,
    pub dim: i64,
    /// Euler characteristic of the local Milnor fibre at points of the stratum.
    #[serde(rename = "chiF")]
    pub chi_milnor_fiber: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<Locus>,
    /// Strata whose closures contain this one (the open stratum is implied).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub in_closure_of: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceSpec {
    pub name: String,
    pub degree: i64,
    pub singularity: Singularity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sing_locus: Option<Locus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumSpec>>,
    /// Optional pushforward of `c^SM` of the hypersurface itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csm: Option<Vec<CoeffRepr>>,
}

/// Optional description of the intersection itself, for the definition route
/// when it cannot be derived from the hypersurfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub locus: Locus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteIntersectionSpec {
    pub ambient: Ambient,
    #[serde(rename = "transversal", default)]
    pub transversality_asserted: bool,
    pub hypersurfaces: Vec<HypersurfaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub routes: Option<Vec<String>>,
}

/// One invariant violation, located by a JSON-style field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

#[derive(Default)]
struct Collector(Vec<ValidationError>);

impl Collector {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(ValidationError {
            path: path.into(),
            message: message.into(),
        });
    }
}

/// A stratum with resolved closure data; `mu` and `gamma` are filled by the class engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub name: String,
    pub dim: usize,
    pub chi_milnor_fiber: i64,
    pub closure_class: Option<ChowClass>,
    pub csm_closure: Option<ChowClass>,
    pub mu: Option<i64>,
    pub gamma: Option<i64>,
}

/// Strata of one hypersurface with the closure order.
///
/// `contains[a][b]` is true when the closure of stratum `a` contains stratum
/// `b` (`a != b`), transitively closed. Index `open` is the regular part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub strata: Vec<Stratum>,
    pub contains: Vec<Vec<bool>>,
    pub open: usize,
}

impl Stratification {
    /// Builds a stratification from strata and direct closure relations
    /// `(above, below)`; the relation is closed transitively.
    pub fn from_relations(strata: Vec<Stratum>, open: usize, relations: &[(usize, usize)]) -> Self {
        let k = strata.len();
        let mut contains = vec![vec![false; k]; k];
        for (b, row) in contains[open].iter_mut().enumerate() {
            *row = b != open;
        }
        for &(a, b) in relations {
            contains[a][b] = true;
        }
        for mid in 0..k {
            for a in 0..k {
                if contains[a][mid] {
                    let below = contains[mid].clone();
                    for (slot, reached) in contains[a].iter_mut().zip(below) {
                        *slot |= reached;
                    }
                }
            }
        }
        Stratification {
            strata,
            contains,
            open,
        }
    }

    /// The one-stratum stratification of a smooth hypersurface of dimension `dim`.
    pub fn smooth(dim: usize) -> Self {
        Stratification {
            strata: vec![Stratum {
                name: "reg".to_string(),
                dim,
                chi_milnor_fiber: 1,
                closure_class: None,
                csm_closure: None,
                mu: None,
                gamma: None,
            }],
            contains: vec![vec![false]],
            open: 0,
        }
    }

    pub fn is_open(&self, index: usize) -> bool {
        index == self.open
    }
}

/// Linear extension of the closure order: decreasing dimension, ties broken by name.
///
/// Fails on cyclic closure relations.
pub fn strata_topological_order(s: &Stratification) -> std::result::Result<Vec<usize>, String> {
    let k = s.strata.len();
    let mut indegree = vec![0usize; k];
    for (a, row) in s.contains.iter().enumerate() {
        for (b, &inside) in row.iter().enumerate() {
            if a != b && inside {
                indegree[b] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<(usize, Reverse<&str>, usize)> = (0..k)
        .filter(|&i| indegree[i] == 0)
        .map(|i| (s.strata[i].dim, Reverse(s.strata[i].name.as_str()), i))
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some((_, _, i)) = ready.pop() {
        order.push(i);
        for (b, &inside) in s.contains[i].iter().enumerate() {
            if b != i && inside {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push((s.strata[b].dim, Reverse(s.strata[b].name.as_str()), b));
                }
            }
        }
    }
    if order.len() == k && (0..k).all(|i| !s.contains[i][i]) {
        Ok(order)
    } else {
        Err("closure order contains a cycle".to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolvedSingularity {
    Smooth,
    Arrangement(Vec<i64>),
    Stratified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedHypersurface {
    pub name: String,
    pub degree: i64,
    pub singularity: ResolvedSingularity,
    pub sing_locus: Option<LocusData>,
    pub stratification: Option<Stratification>,
    /// `c^SM` of the hypersurface when supplied directly or through the open stratum's closure.
    pub csm_supplied: Option<ChowClass>,
}

impl ResolvedHypersurface {
    pub fn is_smooth(&self) -> bool {
        self.singularity == ResolvedSingularity::Smooth
    }
}

/// A complete intersection that passed [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidSpec {
    spec: CompleteIntersectionSpec,
    ambient_dim: usize,
    hypersurfaces: Vec<ResolvedHypersurface>,
    intersection: Option<(String, LocusData)>,
}

impl ValidSpec {
    pub fn spec(&self) -> &CompleteIntersectionSpec {
        &self.spec
    }

    pub fn into_spec(self) -> CompleteIntersectionSpec {
        self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hypersurfaces(&self) -> &[ResolvedHypersurface] {
        &self.hypersurfaces
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.hypersurfaces.iter().map(|h| h.degree).collect()
    }

    pub fn transversality_asserted(&self) -> bool {
        self.spec.transversality_asserted
    }

    /// Supplied description of the full intersection, if any.
    pub fn intersection(&self) -> Option<(&str, &LocusData)> {
        self.intersection.as_ref().map(|(n, d)| (n.as_str(), d))
    }

    /// Dimension of `X = X_1 ∩ ... ∩ X_r`.
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.hypersurfaces.len()
    }

    /// Name of the intersection; the hypersurface names joined with `∩` unless supplied.
    pub fn intersection_name(&self) -> String {
        self.spec
            .intersection
            .as_ref()
            .and_then(|i| i.name.clone())
            .unwrap_or_else(|| {
                self.hypersurfaces
                    .iter()
                    .map(|h| h.name.as_str())
                    .collect::<Vec<_>>()
                    .join("∩")
            })
    }
}

fn validate_strata(
    n: usize,
    path: &str,
    strata: &[StratumSpec],
    errors: &mut Collector,
) -> Option<(Stratification, Option<ChowClass>)> {
    let before = errors.0.len();
    let hyper_dim = n as i64 - 1;
    let mut names: HashMap<&str, usize> = HashMap::new();
    for (i, s) in strata.iter().enumerate() {
        if s.name.is_empty() {
            errors.push(format!("{path}[{i}].name"), "stratum name must not be empty");
        }
        if names.insert(s.name.as_str(), i).is_some() {
            errors.push(
                format!("{path}[{i}].name"),
                format!("duplicate stratum name {:?}", s.name),
            );
        }
        if s.dim < 0 || s.dim > hyper_dim {
            errors.push(
                format!("{path}[{i}].dim"),
                format!("stratum dimension {} outside 0..={hyper_dim}", s.dim),
            );
        }
    }
    let open: Vec<usize> = (0..strata.len())
        .filter(|&i| strata[i].dim == hyper_dim)
        .collect();
    match open.as_slice() {
        [] => errors.push(path.to_string(), "no open stratum of dimension n-1"),
        [o] => {
            if strata[*o].chi_milnor_fiber != 1 {
                errors.push(
                    format!("{path}[{o}].chiF"),
                    "the open stratum consists of smooth points, so its Milnor fibre has chi = 1",
                );
            }
            if !strata[*o].in_closure_of.is_empty() {
                errors.push(
                    format!("{path}[{o}].in_closure_of"),
                    "the open stratum is maximal",
                );
            }
        }
        _ => errors.push(path.to_string(), "more than one open stratum"),
    }

    let mut resolved: Vec<Stratum> = Vec::with_capacity(strata.len());
    let mut open_csm = None;
    for (i, s) in strata.iter().enumerate() {
        let mut closure_class = None;
        let mut csm_closure = None;
        let is_open = open.first() == Some(&i);
        match &s.closure {
            Some(locus) => match locus.resolve(n) {
                Ok(data) => {
                    if s.dim >= 0 && data.dim as i64 != s.dim {
                        errors.push(
                            format!("{path}[{i}].closure"),
                            format!(
                                "closure class lies in codimension {} but the stratum has dimension {}",
                                n - data.dim,
                                s.dim
                            ),
                        );
                    }
                    if data.csm.is_none() {
                        errors.push(format!("{path}[{i}].closure"), "closure needs a c^SM class");
                    }
                    closure_class = Some(data.class);
                    csm_closure = data.csm;
                }
                Err(msg) => errors.push(format!("{path}[{i}].closure"), msg),
            },
            None if !is_open => errors.push(format!("{path}[{i}].closure"), "singular strata need a closure"),
            None => {}
        }
        if is_open {
            open_csm = csm_closure.clone();
        }
        resolved.push(Stratum {
            name: s.name.clone(),
            dim: s.dim.max(0) as usize,
            chi_milnor_fiber: s.chi_milnor_fiber,
            closure_class,
            csm_closure,
            mu: None,
            gamma: None,
        });
    }

    let mut relations = Vec::new();
    for (i, s) in strata.iter().enumerate() {
        let mut seen = HashSet::new();
        for (k, above) in s.in_closure_of.iter().enumerate() {
            let field = format!("{path}[{i}].in_closure_of[{k}]");
            match names.get(above.as_str()) {
                None => errors.push(field, format!("unknown stratum {above:?}")),
                Some(&a) if a == i => errors.push(field, "a stratum is not in the closure of itself"),
                Some(&a) => {
                    if !seen.insert(a) {
                        continue;
                    }
                    if strata[a].dim <= s.dim {
                        errors.push(
                            field,
                            format!(
                                "dimension must strictly decrease along the closure order ({} has dim {}, {} has dim {})",
                                above, strata[a].dim, s.name, s.dim
                            ),
                        );
                    }
                    relations.push((a, i));
                }
            }
        }
    }
    if errors.0.len() > before {
        return None;
    }
    let stratification = Stratification::from_relations(resolved, open[0], &relations);
    if let Err(msg) = strata_topological_order(&stratification) {
        errors.push(path.to_string(), msg);
        return None;
    }
    Some((stratification, open_csm))
}

fn validate_hypersurface(
    n: usize,
    index: usize,
    h: &HypersurfaceSpec,
    errors: &mut Collector,
) -> Option<ResolvedHypersurface> {
    let before = errors.0.len();
    let path = format!("hypersurfaces[{index}]");
    if h.name.is_empty() {
        errors.push(format!("{path}.name"), "name must not be empty");
    }
    if h.degree < 1 {
        errors.push(
            format!("{path}.degree"),
            format!("degree must be at least 1, got {}", h.degree),
        );
    }
    let singularity = match &h.singularity {
        Singularity::Smooth => {
            if h.sing_locus.is_some() {
                errors.push(
                    format!("{path}.sing_locus"),
                    "a smooth hypersurface has no singular locus",
                );
            }
            ResolvedSingularity::Smooth
        }
        Singularity::Arrangement {
            components,
            transversal,
        } => {
            if components.is_empty() {
                errors.push(
                    format!("{path}.singularity.components"),
                    "arrangement needs components",
                );
            }
            for (k, &d) in components.iter().enumerate() {
                if d < 1 {
                    errors.push(
                        format!("{path}.singularity.components[{k}]"),
                        format!("component degree must be at least 1, got {d}"),
                    );
                }
            }
            let sum: i64 = components.iter().sum();
            if sum != h.degree {
                errors.push(
                    format!("{path}.singularity.components"),
                    format!("component degrees sum to {sum}, expected the degree {}", h.degree),
                );
            }
            if !transversal {
                errors.push(
                    format!("{path}.singularity.transversal"),
                    "only transversal arrangements are supported",
                );
            }
            ResolvedSingularity::Arrangement(components.clone())
        }
        Singularity::Stratified => {
            if h.strata.is_none() {
                errors.push(format!("{path}.strata"), "stratified singularity needs strata");
            }
            ResolvedSingularity::Stratified
        }
    };

    let sing_locus = match &h.sing_locus {
        None => None,
        Some(locus) => match locus.resolve(n) {
            Ok(data) => {
                if data.dim + 1 >= n {
                    errors.push(
                        format!("{path}.sing_locus"),
                        format!(
                            "singular locus of dimension {} is not proper in a hypersurface",
                            data.dim
                        ),
                    );
                }
                if data.normal.is_none() {
                    errors.push(
                        format!("{path}.sing_locus"),
                        "singular locus must be smooth with known normal bundle",
                    );
                }
                Some(data)
            }
            Err(msg) => {
                errors.push(format!("{path}.sing_locus"), msg);
                None
            }
        },
    };

    let mut csm_supplied = match &h.csm {
        None => None,
        Some(coeffs) => match parse_class(n, coeffs) {
            Ok(c) => Some(c),
            Err(msg) => {
                errors.push(format!("{path}.csm"), msg);
                None
            }
        },
    };

    let stratification = match &h.strata {
        Some(strata) => {
            let spath = format!("{path}.strata");
            match validate_strata(n, &spath, strata, errors) {
                Some((s, open_csm)) => {
                    if let Some(open_csm) = open_csm {
                        match &csm_supplied {
                            Some(c) if *c != open_csm => errors.push(
                                format!("{path}.csm"),
                                "differs from the c^SM class of the open stratum's closure",
                            ),
                            _ => csm_supplied = Some(open_csm),
                        }
                    }
                    Some(s)
                }
                None => None,
            }
        }
        None if singularity == ResolvedSingularity::Smooth => Some(Stratification::smooth(n - 1)),
        None => None,
    };

    if errors.0.len() > before {
        return None;
    }
    Some(ResolvedHypersurface {
        name: h.name.clone(),
        degree: h.degree,
        singularity,
        sing_locus,
        stratification,
        csm_supplied,
    })
}

/// Checks every invariant of the input and resolves the geometric data.
///
/// All violations are reported, each with a field path.
pub fn validate(spec: CompleteIntersectionSpec) -> std::result::Result<ValidSpec, ValidationErrors> {
    let mut errors = Collector::default();
    if spec.ambient.kind != "projective" {
        errors.push(
            "ambient.kind",
            format!(
                "unsupported ambient space {:?}; only \"projective\"",
                spec.ambient.kind
            ),
        );
    }
    if spec.ambient.dim < 1 {
        errors.push(
            "ambient.dim",
            format!("dimension must be at least 1, got {}", spec.ambient.dim),
        );
        return Err(ValidationErrors(errors.0));
    }
    let n = spec.ambient.dim as usize;
    let r = spec.hypersurfaces.len();
    if r == 0 {
        errors.push("hypersurfaces", "at least one hypersurface is required");
    }
    if r > n {
        errors.push(
            "hypersurfaces",
            format!(
                "{r} hypersurfaces in P^{n} give dimension {} < 0",
                n as i64 - r as i64
            ),
        );
    }
    let mut names = HashSet::new();
    for (i, h) in spec.hypersurfaces.iter().enumerate() {
        if !names.insert(h.name.as_str()) {
            errors.push(
                format!("hypersurfaces[{i}].name"),
                format!("duplicate name {:?}", h.name),
            );
        }
    }
    if let Some(routes) = &spec.routes {
        for (i, route) in routes.iter().enumerate() {
            if !crate::class_engine::ROUTE_NAMES.contains(&route.as_str()) && route != "all" {
                errors.push(format!("routes[{i}]"), format!("unknown route {route:?}"));
            }
        }
    }
    let hypersurfaces: Vec<Option<ResolvedHypersurface>> = spec
        .hypersurfaces
        .iter()
        .enumerate()
        .map(|(i, h)| validate_hypersurface(n, i, h, &mut errors))
        .collect();

    let mut intersection = None;
    if let Some(ispec) = &spec.intersection {
        if r < 2 {
            errors.push("intersection", "only meaningful for two or more hypersurfaces");
        }
        match ispec.locus.resolve(n) {
            Ok(data) => {
                if data.csm.is_none() {
                    errors.push("intersection.locus", "intersection needs a c^SM class");
                }
                let degrees: Vec<i64> = spec.hypersurfaces.iter().map(|h| h.degree).collect();
                if r <= n && degrees.iter().all(|&d| d >= 1) {
                    if let Ok(expected) = bundle_calc::fundamental_class_ci(n, &degrees) {
                        if data.class != expected {
                            errors.push(
                                "intersection.locus",
                                format!(
                                    "class {} differs from the complete intersection class {expected}",
                                    data.class
                                ),
                            );
                        }
                    }
                }
                let name = ispec.name.clone().unwrap_or_else(|| {
                    spec.hypersurfaces
                        .iter()
                        .map(|h| h.name.as_str())
                        .collect::<Vec<_>>()
                        .join("∩")
                });
                intersection = Some((name, data));
            }
            Err(msg) => errors.push("intersection.locus", msg),
        }
    }

    if !errors.0.is_empty() {
        return Err(ValidationErrors(errors.0));
    }
    Ok(ValidSpec {
        ambient_dim: n,
        hypersurfaces: hypersurfaces.into_iter().map(|h| h.expect("validated")).collect(),
        intersection,
        spec,
    })
}
