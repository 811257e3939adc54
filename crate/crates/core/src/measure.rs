//! Haar measures, rho-functions and the quasi-invariant measures they induce on `G/H`.
//!
//! Everything here is exact rational arithmetic. Finite groups are unimodular,
//! but the modular function is still computed from its defining identity rather
//! than assumed, so the rho-function axiom is checked in its literal form.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{GroupFunction, QuotientFunction};
use crate::group::{CosetSpace, Element, FiniteGroup, SpaceId, Subgroup};
use crate::linalg::{int, Rational};

/// How a finite (sub)group is weighted: mass 1 per element, or total mass 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum HaarConvention {
    #[default]
    Counting,
    Normalized,
}

impl HaarConvention {
    /// Mass of a single point in a group of the given order.
    pub fn point_mass(self, order: usize) -> Rational {
        match self {
            HaarConvention::Counting => Rational::one(),
            HaarConvention::Normalized => Rational::new(1.into(), order.into()),
        }
    }
}

impl std::str::FromStr for HaarConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "counting" => Ok(HaarConvention::Counting),
            "normalized" => Ok(HaarConvention::Normalized),
            other => Err(Error::Config(format!("unknown convention {other:?}"))),
        }
    }
}

impl std::fmt::Display for HaarConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HaarConvention::Counting => "counting",
            HaarConvention::Normalized => "normalized",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaarMeasure {
    pub order: usize,
    pub convention: HaarConvention,
    pub weight: Rational,
}

impl HaarMeasure {
    pub fn new(order: usize, convention: HaarConvention) -> Self {
        HaarMeasure { order, convention, weight: convention.point_mass(order) }
    }

    pub fn on_group(group: &FiniteGroup, convention: HaarConvention) -> Self {
        HaarMeasure::new(group.order(), convention)
    }

    pub fn on_subgroup(subgroup: &Subgroup, convention: HaarConvention) -> Self {
        HaarMeasure::new(subgroup.len(), convention)
    }

    pub fn integrate<'a>(&self, values: impl IntoIterator<Item = &'a Rational>) -> Rational {
        values.into_iter().fold(Rational::zero(), |acc, v| acc + v) * &self.weight
    }
}

/// Modular function of the subgroup `sub` (pass the whole group for `Δ_G`), indexed by
/// element of `G`; entries for elements outside `sub` are zero.
///
/// `Δ(x)` is solved from `∫ f(y) dy = Δ(x) ∫ f(yx) dy` with `f` the point mass
/// at each element, and the answers for different test points must agree.
pub fn modular_function_of(group: &FiniteGroup, sub: &Subgroup) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); group.order()];
    for &x in sub.elements() {
        let mut ratio: Option<Rational> = None;
        for &z in sub.elements() {
            // ∫ δ_z(y) dy = 1; ∫ δ_z(yx) dy counts y ∈ sub with yx = z.
            let translated = sub.elements().iter().filter(|&&y| group.mul(y, x) == z).count();
            let r = Rational::new(1.into(), translated.into());
            match &ratio {
                None => ratio = Some(r),
                Some(prev) => assert_eq!(prev, &r, "right translates of counting measure disagree"),
            }
        }
        out[x] = ratio.unwrap_or_else(Rational::one);
    }
    out
}

pub fn modular_function(group: &FiniteGroup) -> Vec<Rational> {
    modular_function_of(group, &Subgroup::whole(group))
}

/// A positive function on `G` with `ρ(xh) = Δ_H(h) Δ_G(h)⁻¹ ρ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoFunction {
    space: SpaceId,
    values: Vec<Rational>,
}

impl RhoFunction {
    pub fn new(group: &FiniteGroup, space: &CosetSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: values.len() });
        }
        if let Some(x) = values.iter().position(|v| *v <= Rational::zero()) {
            return Err(Error::InvalidRho(format!("value at {x} is not positive")));
        }
        let delta_g = modular_function(group);
        let delta_h = modular_function_of(group, space.subgroup());
        for x in group.elements() {
            for &h in space.subgroup().elements() {
                let expected = &delta_h[h] / &delta_g[h] * &values[x];
                let xh = group.mul(x, h);
                if values[xh] != expected {
                    return Err(Error::InvalidRho(format!(
                        "rho({xh}) = {} but rho({x}) scaled by the modular ratio of {h} is {expected}",
                        values[xh]
                    )));
                }
            }
        }
        Ok(RhoFunction { space: space.id().clone(), values })
    }

    pub fn constant(group: &FiniteGroup, space: &CosetSpace) -> Self {
        RhoFunction::new(group, space, vec![Rational::one(); group.order()]).expect("constant rho")
    }

    /// Lifts per-coset values `ρ(xH)` to a rho-function on `G`.
    pub fn from_coset_values(group: &FiniteGroup, space: &CosetSpace, coset_values: &[Rational]) -> Result<Self> {
        if coset_values.len() != space.len() {
            return Err(Error::DimensionMismatch { expected: space.len(), found: coset_values.len() });
        }
        let values = group.elements().map(|x| coset_values[space.coset_of(x)].clone()).collect();
        RhoFunction::new(group, space, values)
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, x: Element) -> &Rational {
        &self.values[x]
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// Positive weights on the cosets of a [`CosetSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMeasure {
    space: SpaceId,
    weights: Vec<Rational>,
}

impl QuotientMeasure {
    pub fn new(space: &CosetSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::DimensionMismatch { expected: space.len(), found: weights.len() });
        }
        if let Some(c) = weights.iter().position(|w| *w <= Rational::zero()) {
            return Err(Error::InvalidMeasure(format!("weight of coset {c} is not positive")));
        }
        Ok(QuotientMeasure { space: space.id().clone(), weights })
    }

    /// Invariant measure; normalized gives total mass 1, counting gives mass 1 per coset.
    pub fn invariant(space: &CosetSpace, convention: HaarConvention) -> Self {
        let w = convention.point_mass(space.len());
        QuotientMeasure { space: space.id().clone(), weights: vec![w; space.len()] }
    }

    pub fn normalized(space: &CosetSpace) -> Self {
        QuotientMeasure::invariant(space, HaarConvention::Normalized)
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, coset: usize) -> &Rational {
        &self.weights[coset]
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// Constant weights. On a finite homogeneous space this is the same as
    /// invariance under the transitive left action.
    pub fn is_invariant(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }

    /// Translate `μ_x(E) = μ(xE)` evaluated on the singleton `{c}`.
    pub fn translate_weight(&self, group: &FiniteGroup, space: &CosetSpace, x: Element, coset: usize) -> Rational {
        self.weights[space.act(group, x, coset)].clone()
    }

    pub fn integrate(&self, f: &[Rational]) -> Result<Rational> {
        if f.len() != self.weights.len() {
            return Err(Error::DimensionMismatch { expected: self.weights.len(), found: f.len() });
        }
        Ok(f.iter().zip(&self.weights).fold(Rational::zero(), |acc, (v, w)| acc + v * w))
    }
}

/// The measure `μ` on `G/H` with `∫_G f ρ dx = ∫_{G/H} ∫_H f(xh) dh dμ(xH)` for all `f`.
///
/// Substituting the point mass at `x` gives `μ(xH) = ρ(x) w_G / w_H`, with `w_G`
/// and `w_H` the point masses of the two Haar measures.
pub fn measure_from_rho(
    group: &FiniteGroup,
    space: &CosetSpace,
    rho: &RhoFunction,
    group_haar: HaarConvention,
    subgroup_haar: HaarConvention,
) -> Result<QuotientMeasure> {
    space.check_same(rho.space())?;
    let w_g = group_haar.point_mass(group.order());
    let w_h = subgroup_haar.point_mass(space.subgroup().len());
    let weights = space.reps().iter().map(|&x| rho.at(x) * &w_g / &w_h).collect();
    QuotientMeasure::new(space, weights)
}

/// `T_H f(xH) = ∫_H f(xh)/ρ(xh) dh`.
pub fn project_th(
    group: &FiniteGroup,
    space: &CosetSpace,
    f: &GroupFunction,
    rho: &RhoFunction,
    subgroup_haar: HaarConvention,
) -> Result<QuotientFunction> {
    f.check_order(group)?;
    space.check_same(rho.space())?;
    let w_h = subgroup_haar.point_mass(space.subgroup().len());
    let values = space
        .reps()
        .iter()
        .map(|&x| {
            let s = space.subgroup().elements().iter().fold(Rational::zero(), |acc, &h| {
                let xh = group.mul(x, h);
                acc + &f.values()[xh] / rho.at(xh)
            });
            s * &w_h
        })
        .collect();
    Ok(QuotientFunction::new(space, values))
}

/// `∫_G f dx − ∫_{G/H} T_H f dμ`; zero whenever `μ` comes from `ρ` with the same conventions.
pub fn verify_quotient_integral(
    group: &FiniteGroup,
    space: &CosetSpace,
    f: &GroupFunction,
    rho: &RhoFunction,
    mu: &QuotientMeasure,
    group_haar: HaarConvention,
    subgroup_haar: HaarConvention,
) -> Result<Rational> {
    space.check_same(mu.space())?;
    let lhs = HaarMeasure::on_group(group, group_haar).integrate(f.values());
    let th = project_th(group, space, f, rho, subgroup_haar)?;
    Ok(lhs - mu.integrate(th.values())?)
}

/// `∫_G f ρ dx − ∫_{G/H} ∫_H f(xh) dh dμ(xH)`, the rho-weighted form of the same formula.
pub fn verify_rho_integral(
    group: &FiniteGroup,
    space: &CosetSpace,
    f: &GroupFunction,
    rho: &RhoFunction,
    mu: &QuotientMeasure,
    group_haar: HaarConvention,
    subgroup_haar: HaarConvention,
) -> Result<Rational> {
    f.check_order(group)?;
    space.check_same(mu.space())?;
    let weighted: Vec<Rational> = f.values().iter().zip(rho.values()).map(|(a, b)| a * b).collect();
    let lhs = HaarMeasure::on_group(group, group_haar).integrate(&weighted);
    let haar_h = HaarMeasure::on_subgroup(space.subgroup(), subgroup_haar);
    let inner: Vec<Rational> = space
        .reps()
        .iter()
        .map(|&x| {
            let vals: Vec<Rational> =
                space.subgroup().elements().iter().map(|&h| f.values()[group.mul(x, h)].clone()).collect();
            haar_h.integrate(&vals)
        })
        .collect();
    Ok(lhs - mu.integrate(&inner)?)
}

/// `dμ_x/dμ (yH) = ρ(xy)/ρ(y)`.
pub fn radon_nikodym_ratio(group: &FiniteGroup, rho: &RhoFunction, x: Element, y: Element) -> Rational {
    rho.at(group.mul(x, y)) / rho.at(y)
}

/// Convenience: a rho-function that is `values[c]` on coset `c`, given as integers.
pub fn rho_from_integers(group: &FiniteGroup, space: &CosetSpace, values: &[i64]) -> Result<RhoFunction> {
    let vals: Vec<Rational> = values.iter().map(|&v| int(v)).collect();
    RhoFunction::from_coset_values(group, space, &vals)
}
