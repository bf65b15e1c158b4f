//! Augmentations of a DGA and the augmentation variety.
//!
//! An augmentation sends every degree-0 generator to a complex number, every
//! other generator to 0, and coefficients to their values at a torus point;
//! it must annihilate `∂` of every degree-1 generator. Treating the values of
//! the degree-0 generators as unknowns gives a polynomial system whose
//! elimination ideal cuts out the augmentation variety.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::groebner::{contains_one, groebner_basis, GroebnerLimits};
use crate::poly::{LaurentPolynomial, Ring};
use crate::scalar::Scalar;

/// A point of the torus `(C*)^n`: every coordinate nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    values: BTreeMap<String, Scalar>,
}

impl TorusPoint {
    pub fn new<I, S>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Scalar)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, v) in values {
            let name = name.into();
            if v.is_zero() {
                return Err(Error::Domain(format!(
                    "torus coordinate `{name}` must be nonzero"
                )));
            }
            map.insert(name, v);
        }
        Ok(TorusPoint { values: map })
    }

    /// Parses `X=2,P=1/3,Q=1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, part) in text.split(',').enumerate() {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                Error::parse(format!("point entry {}", i + 1), format!("expected `name=value`, got `{part}`"))
            })?;
            let v: Scalar = v.trim().parse().map_err(|e: Error| {
                Error::parse(format!("point entry {}", i + 1), e.to_string())
            })?;
            pairs.push((k.trim().to_string(), v));
        }
        Self::new(pairs)
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.values.get(name)
    }

    fn covering(&self, ring: &Ring) -> Result<Vec<Scalar>> {
        ring.vars()
            .iter()
            .map(|v| {
                self.values
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("point has no value for `{v}`")))
            })
            .collect()
    }
}

/// One equation `ε(∂a) = 0` per degree-1 generator `a`.
#[derive(Clone, Debug)]
pub struct AugmentationSystem {
    /// Torus variables of the source DGA.
    pub torus: Ring,
    /// Names of the degree-0 generators, used as unknowns.
    pub unknowns: Vec<String>,
    /// Polynomials over `torus` followed by `unknowns`.
    pub equations: Vec<LaurentPolynomial>,
    /// Degree-1 generator each equation came from.
    pub sources: Vec<String>,
}

impl AugmentationSystem {
    /// Ring of the equations: torus variables then unknowns.
    pub fn ring(&self) -> Ring {
        self.torus.extended(&self.unknowns).expect("names checked at load")
    }
}

/// Outcome of eliminating the unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationVarietyResult {
    /// Reduced generators of the saturated elimination ideal, each
    /// normalized like an augmentation polynomial.
    pub generators: Vec<LaurentPolynomial>,
    pub principal: bool,
    pub polynomial: Option<LaurentPolynomial>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct VarietyJson<'a> {
    principal: bool,
    polynomial: Option<String>,
    generators: Vec<String>,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    notes: &'a [String],
}

impl AugmentationVarietyResult {
    /// `{"principal": bool, "polynomial": string|null, "generators": [string]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&VarietyJson {
            principal: self.principal,
            polynomial: self.polynomial.as_ref().map(|p| p.to_string()),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            notes: &self.notes,
        })
        .expect("serializable")
    }
}

/// Builds `ε(∂a) = 0` for every degree-1 generator `a`.
pub fn augmentation_system(d: &Dga) -> Result<AugmentationSystem> {
    let torus = d.ring().clone();
    let zero_degree: Vec<usize> = (0..d.generators().len())
        .filter(|&i| d.degree(i) == 0)
        .collect();
    let unknowns: Vec<String> = zero_degree
        .iter()
        .map(|&i| d.generators()[i].name.clone())
        .collect();
    let ring = torus.extended(&unknowns)?;
    let slot: HashMap<usize, usize> = zero_degree
        .iter()
        .enumerate()
        .map(|(k, &g)| (g, torus.len() + k))
        .collect();

    let mut equations = Vec::new();
    let mut sources = Vec::new();
    for (gi, g) in d.generators().iter().enumerate() {
        if g.degree != 1 {
            continue;
        }
        let mut eq = LaurentPolynomial::zero(&ring);
        for (word, coef) in d.differential_of(gi).terms() {
            if word.iter().any(|w| !slot.contains_key(w)) {
                continue;
            }
            let mut shift = vec![0i64; ring.len()];
            for w in word {
                shift[slot[w]] += 1;
            }
            eq = &eq + &coef.embed(&ring)?.shift(&shift);
        }
        equations.push(eq);
        sources.push(g.name.clone());
    }
    Ok(AugmentationSystem {
        torus,
        unknowns,
        equations,
        sources,
    })
}

fn equations_at(sys: &AugmentationSystem, pt: &TorusPoint) -> Result<Vec<LaurentPolynomial>> {
    let unknown_ring = Ring::new(&sys.unknowns)?;
    sys.torus.vars().iter().try_for_each(|v| {
        pt.get(v)
            .map(|_| ())
            .ok_or_else(|| Error::InvalidArgument(format!("point has no value for `{v}`")))
    })?;
    sys.equations
        .iter()
        .map(|eq| {
            let mut e = eq.clone();
            for v in sys.torus.vars() {
                e = e.substitute(v, pt.get(v).unwrap())?;
            }
            e.embed(&unknown_ring)
        })
        .collect()
}

/// Whether the given values of the degree-0 generators define an
/// augmentation at `pt`.
pub fn is_augmentation(
    d: &Dga,
    pt: &TorusPoint,
    assignment: &HashMap<String, Scalar>,
) -> Result<bool> {
    let sys = augmentation_system(d)?;
    let mut values = pt.covering(&sys.torus)?;
    for u in &sys.unknowns {
        values.push(
            assignment
                .get(u)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("no value for unknown `{u}`")))?,
        );
    }
    for eq in &sys.equations {
        if !eq.eval_slice(&values)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact decision: does the DGA admit an augmentation at `pt`? True iff `1`
/// is not in the ideal generated by the specialized system.
pub fn augmentation_exists(d: &Dga, pt: &TorusPoint, limits: GroebnerLimits) -> Result<bool> {
    let sys = augmentation_system(d)?;
    let eqs = equations_at(&sys, pt)?;
    if sys.unknowns.is_empty() {
        return Ok(eqs.iter().all(|e| e.is_zero()));
    }
    Ok(!contains_one(&eqs, limits)?)
}

/// Normal form of an augmentation polynomial: no negative exponents, no
/// monomial factor, coprime Gaussian-integer coefficients, leading
/// coefficient in the first quadrant.
pub fn normalize_augmentation_polynomial(p: &LaurentPolynomial) -> LaurentPolynomial {
    p.clear_monomial_factor().0.primitive_part()
}

/// Eliminates the unknowns after saturating by the product of the torus
/// variables.
pub fn eliminate_augmentation_ideal(
    sys: &AugmentationSystem,
    limits: GroebnerLimits,
) -> Result<AugmentationVarietyResult> {
    let mut notes = Vec::new();
    let nonzero: Vec<&LaurentPolynomial> =
        sys.equations.iter().filter(|e| !e.is_zero()).collect();
    if nonzero.is_empty() {
        notes.push("zero ideal: full-dimensional, no codimension-1 polynomial".to_string());
        return Ok(AugmentationVarietyResult {
            generators: Vec::new(),
            principal: false,
            polynomial: None,
            notes,
        });
    }

    // elimination ring: saturation variable, unknowns, then torus variables
    let sat = fresh_name("T_sat", &sys.torus, &sys.unknowns);
    let mut names: Vec<String> = vec![sat.clone()];
    names.extend(sys.unknowns.iter().cloned());
    names.extend(sys.torus.vars().iter().cloned());
    let elim_ring = Ring::new(&names)?;
    let elim = 1 + sys.unknowns.len();

    let torus_len = sys.torus.len();
    let mut gens = Vec::new();
    for eq in &nonzero {
        let mut shift = vec![0i64; eq.ring().len()];
        let mins = eq.min_exponents();
        for i in 0..torus_len {
            shift[i] = -mins[i];
        }
        gens.push(eq.shift(&shift).embed(&elim_ring)?);
    }
    let mut rabinowitsch = vec![0i64; elim_ring.len()];
    rabinowitsch[0] = 1;
    for r in rabinowitsch.iter_mut().skip(elim) {
        *r = 1;
    }
    gens.push(
        &LaurentPolynomial::one(&elim_ring)
            - &LaurentPolynomial::monomial(&elim_ring, rabinowitsch, Scalar::one()),
    );

    let gb = groebner_basis(&gens, elim, limits)?;
    let mut generators: Vec<LaurentPolynomial> = Vec::new();
    for g in gb {
        let mut free = true;
        for v in &names[..elim] {
            if g.involves(v)? {
                free = false;
                break;
            }
        }
        if free {
            generators.push(normalize_augmentation_polynomial(&g.embed(&sys.torus)?));
        }
    }

    if generators.is_empty() {
        notes.push(
            "elimination ideal is zero: full-dimensional, no codimension-1 polynomial".to_string(),
        );
        return Ok(AugmentationVarietyResult {
            generators,
            principal: false,
            polynomial: None,
            notes,
        });
    }
    if generators.len() == 1 && generators[0].is_constant() {
        notes.push("ideal contains 1: no augmentations at any torus point".to_string());
        return Ok(AugmentationVarietyResult {
            generators,
            principal: false,
            polynomial: None,
            notes,
        });
    }
    if generators.len() == 1 {
        let poly = generators[0].clone();
        return Ok(AugmentationVarietyResult {
            generators,
            principal: true,
            polynomial: Some(poly),
            notes,
        });
    }
    notes.push(format!(
        "elimination ideal needs {} generators; no single augmentation polynomial",
        generators.len()
    ));
    Ok(AugmentationVarietyResult {
        generators,
        principal: false,
        polynomial: None,
        notes,
    })
}

fn fresh_name(base: &str, torus: &Ring, unknowns: &[String]) -> String {
    let mut name = base.to_string();
    while torus.contains(&name) || unknowns.contains(&name) {
        name.push('_');
    }
    name
}

/// Convenience: system, elimination and normalization in one call.
pub fn augmentation_polynomial(d: &Dga, limits: GroebnerLimits) -> Result<AugmentationVarietyResult> {
    eliminate_augmentation_ideal(&augmentation_system(d)?, limits)
}
