//! The general filter `F(E) = Σ m(Y)·w(E, Y)` over the members of a family,
//! and the named estimators built from it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::indicators::{eval_indicator, IndicatorKind, Share};
use crate::mass::{MassFunction, ProbabilityMeasure, SUM_TOLERANCE};
use crate::universe::{NeighbourhoodFamily, SubsetMask};

/// The weighting `w(E, Y)` of a filter.
#[derive(Debug, Clone, PartialEq)]
pub enum FilterSpec {
    /// A 0/1 indicator.
    Indicator(IndicatorKind),
    /// `|E ∩ Y| / noa(Y)` on nonempty `Y`; needs an algebra.
    Pignistic,
    /// `|E ∩ Y| / |Y|` on nonempty `Y`.
    ContextualMass,
    /// `|E ∩ Y| / K`.
    ContextualProb(f64),
    /// The inner filter if `E` is a member of the family, else 0.
    RestrictToFamily(Box<FilterSpec>),
}

impl FilterSpec {
    /// Checks the spec against a family before any evaluation.
    pub fn validate(&self, family: &NeighbourhoodFamily) -> Result<()> {
        match self {
            FilterSpec::Indicator(kind) => kind.validate(family.universe().len()).map(|_| ()),
            FilterSpec::Pignistic => family.atoms().map(|_| ()).ok_or(Error::NoAtoms),
            FilterSpec::ContextualMass => Ok(()),
            FilterSpec::ContextualProb(k) => {
                if k.is_finite() && *k > 0.0 {
                    Ok(())
                } else {
                    Err(Error::BadNormalization(*k))
                }
            }
            FilterSpec::RestrictToFamily(inner) => match **inner {
                FilterSpec::RestrictToFamily(_) => Err(Error::NestedRestriction),
                ref inner => inner.validate(family),
            },
        }
    }

    /// Whether values are guaranteed to lie in [0, 1] for a valid mass.
    fn is_bounded(&self) -> bool {
        match self {
            FilterSpec::Indicator(_) | FilterSpec::ContextualMass => true,
            FilterSpec::RestrictToFamily(inner) => inner.is_bounded(),
            FilterSpec::Pignistic | FilterSpec::ContextualProb(_) => false,
        }
    }
}

/// Evaluates `Σ m(Y)·w(e, Y)` in one pass over the family's members, in
/// canonical order.
pub fn eval_filter(m: &MassFunction, spec: &FilterSpec, e: SubsetMask) -> Result<f64> {
    let family = m.family();
    spec.validate(family)?;
    family.universe().check(e)?;
    let value = sum_weighted(m, spec, e);
    if spec.is_bounded() && !(-SUM_TOLERANCE..=1.0 + SUM_TOLERANCE).contains(&value) {
        return Err(Error::OutOfRange { value });
    }
    Ok(value)
}

fn sum_weighted(m: &MassFunction, spec: &FilterSpec, e: SubsetMask) -> f64 {
    let family = m.family();
    match spec {
        FilterSpec::Indicator(kind) => {
            let mut acc = 0.0;
            for (y, v) in m.iter() {
                if eval_indicator(*kind, e, y) {
                    acc += v;
                }
            }
            acc
        }
        FilterSpec::Pignistic => {
            let atoms = family.atoms().expect("validated");
            let mut acc = 0.0;
            for (y, v) in m.iter() {
                if !y.is_empty() {
                    let noa = atoms.iter().filter(|a| a.is_subset_of(y)).count();
                    acc += v * (e.intersection(y).len() as f64 / noa as f64);
                }
            }
            acc
        }
        FilterSpec::ContextualMass => {
            let mut acc = 0.0;
            for (y, v) in m.iter() {
                if !y.is_empty() {
                    acc += v * (e.intersection(y).len() as f64 / y.len() as f64);
                }
            }
            acc
        }
        FilterSpec::ContextualProb(k) => {
            let mut acc = 0.0;
            for (y, v) in m.iter() {
                acc += v * (e.intersection(y).len() as f64 / k);
            }
            acc
        }
        FilterSpec::RestrictToFamily(inner) => {
            if family.contains(e) {
                sum_weighted(m, inner, e)
            } else {
                0.0
            }
        }
    }
}

fn indicator(m: &MassFunction, kind: IndicatorKind, e: SubsetMask) -> Result<f64> {
    eval_filter(m, &FilterSpec::Indicator(kind), e)
}

/// Degree of belief: mass of the members contained in `e`.
pub fn belief(m: &MassFunction, e: SubsetMask) -> Result<f64> {
    indicator(m, IndicatorKind::Lower, e)
}

/// Degree of plausibility: mass of the members meeting `e`.
pub fn plausibility(m: &MassFunction, e: SubsetMask) -> Result<f64> {
    indicator(m, IndicatorKind::Upper, e)
}

/// Pignistic probability; the family must be an algebra.
pub fn pignistic(m: &MassFunction, e: SubsetMask) -> Result<f64> {
    eval_filter(m, &FilterSpec::Pignistic, e)
}

/// Contextual probability of a mass function.
pub fn contextual_mass(m: &MassFunction, e: SubsetMask) -> Result<f64> {
    eval_filter(m, &FilterSpec::ContextualMass, e)
}

/// Belief without the empty pattern: mass of the nonempty members inside
/// `e`. Equals `belief(m, e) - m(∅)` up to rounding.
pub fn belief_plus(m: &MassFunction, e: SubsetMask) -> Result<f64> {
    indicator(m, IndicatorKind::LowerK(1), e)
}

/// Belief gated on membership: `belief(m, e)` if `e` is in the family, else 0.
pub fn belief_min(m: &MassFunction, e: SubsetMask) -> Result<f64> {
    eval_filter(
        m,
        &FilterSpec::RestrictToFamily(Box::new(FilterSpec::Indicator(IndicatorKind::Lower))),
        e,
    )
}

/// Mass of the members that contain `e`.
pub fn plausibility_min(m: &MassFunction, e: SubsetMask) -> Result<f64> {
    indicator(m, IndicatorKind::Subset, e)
}

/// Plausibility demanding `min(k, |e|)` common elements (at least one), so
/// singletons keep their plain plausibility while larger events need `k`.
pub fn plausibility_k(m: &MassFunction, k: usize, e: SubsetMask) -> Result<f64> {
    IndicatorKind::UpperK(k).validate(m.family().universe().len())?;
    indicator(m, IndicatorKind::UpperK(k.min(e.len()).max(1)), e)
}

/// `K = Σ p(Y)·|Y|` over every member of the algebra.
pub fn contextual_normalization(p: &ProbabilityMeasure) -> f64 {
    p.algebra()
        .members()
        .iter()
        .map(|&y| p.measure(y) * y.len() as f64)
        .sum()
}

/// Contextual probability with respect to a probability measure:
/// `Σ p(Y)·|e ∩ Y| / K` over every member.
pub fn contextual_prob(p: &ProbabilityMeasure, e: SubsetMask) -> Result<f64> {
    p.algebra().universe().check(e)?;
    let k = contextual_normalization(p);
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::BadNormalization(k));
    }
    let mut acc = 0.0;
    for &y in p.algebra().members() {
        acc += p.measure(y) * (e.intersection(y).len() as f64 / k);
    }
    Ok(acc)
}

/// The mass-based estimators by name, as used on the command line and in
/// simulation configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFilter {
    Bel,
    Pl,
    BelPlus,
    BelMin,
    PlMin,
    Pignistic,
    Contextual,
    /// `pl[k]`, see [`plausibility_k`].
    UpperK(usize),
    LowerK(usize),
    UpperS(Share),
    LowerS(Share),
}

impl NamedFilter {
    pub fn validate(self, family: &NeighbourhoodFamily) -> Result<()> {
        let n = family.universe().len();
        match self {
            NamedFilter::Pignistic => FilterSpec::Pignistic.validate(family),
            NamedFilter::UpperK(k) => IndicatorKind::UpperK(k).validate(n).map(|_| ()),
            NamedFilter::LowerK(k) => IndicatorKind::LowerK(k).validate(n).map(|_| ()),
            _ => Ok(()),
        }
    }

    pub fn eval(self, m: &MassFunction, e: SubsetMask) -> Result<f64> {
        match self {
            NamedFilter::Bel => belief(m, e),
            NamedFilter::Pl => plausibility(m, e),
            NamedFilter::BelPlus => belief_plus(m, e),
            NamedFilter::BelMin => belief_min(m, e),
            NamedFilter::PlMin => plausibility_min(m, e),
            NamedFilter::Pignistic => pignistic(m, e),
            NamedFilter::Contextual => contextual_mass(m, e),
            NamedFilter::UpperK(k) => plausibility_k(m, k, e),
            NamedFilter::LowerK(k) => indicator(m, IndicatorKind::LowerK(k), e),
            NamedFilter::UpperS(s) => indicator(m, IndicatorKind::UpperS(s), e),
            NamedFilter::LowerS(s) => indicator(m, IndicatorKind::LowerS(s), e),
        }
    }
}

impl fmt::Display for NamedFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFilter::Bel => f.write_str("bel"),
            NamedFilter::Pl => f.write_str("pl"),
            NamedFilter::BelPlus => f.write_str("bel+"),
            NamedFilter::BelMin => f.write_str("bel_min"),
            NamedFilter::PlMin => f.write_str("pl_min"),
            NamedFilter::Pignistic => f.write_str("pp"),
            NamedFilter::Contextual => f.write_str("cp"),
            NamedFilter::UpperK(k) => write!(f, "upper_k:{k}"),
            NamedFilter::LowerK(k) => write!(f, "lower_k:{k}"),
            NamedFilter::UpperS(s) => write!(f, "upper_s:{s}"),
            NamedFilter::LowerS(s) => write!(f, "lower_s:{s}"),
        }
    }
}

impl FromStr for NamedFilter {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let unknown = || Error::Config(format!("unknown filter `{text}`"));
        let t = text.trim();
        if let Some((name, arg)) = t.split_once(':') {
            let k = || arg.parse::<usize>().map_err(|_| unknown());
            return match name {
                "upper_k" => Ok(NamedFilter::UpperK(k()?)),
                "lower_k" => Ok(NamedFilter::LowerK(k()?)),
                "upper_s" => Ok(NamedFilter::UpperS(arg.parse()?)),
                "lower_s" => Ok(NamedFilter::LowerS(arg.parse()?)),
                _ => Err(unknown()),
            };
        }
        Ok(match t {
            "bel" => NamedFilter::Bel,
            "pl" => NamedFilter::Pl,
            "bel+" => NamedFilter::BelPlus,
            "bel_min" => NamedFilter::BelMin,
            "pl_min" => NamedFilter::PlMin,
            "pp" => NamedFilter::Pignistic,
            "cp" => NamedFilter::Contextual,
            _ => return Err(unknown()),
        })
    }
}
