//! Functions on `G` and on coset spaces, the projections `P_H` and `P*_H`,
//! right-invariant subspaces `C(G/L : H)`, and the lifted convolution.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{CosetSpace, Element, FiniteGroup, SpaceId, Subgroup};
use crate::linalg::Rational;
use crate::measure::HaarConvention;

/// A function `G → Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFunction {
    values: Vec<Rational>,
}

impl GroupFunction {
    pub fn new(group: &FiniteGroup, values: Vec<Rational>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: values.len() });
        }
        Ok(GroupFunction { values })
    }

    pub fn constant(group: &FiniteGroup, c: Rational) -> Self {
        GroupFunction { values: vec![c; group.order()] }
    }

    pub fn indicator(group: &FiniteGroup, support: &[Element]) -> Self {
        let mut values = vec![Rational::zero(); group.order()];
        for &x in support {
            values[x] = Rational::one();
        }
        GroupFunction { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn check_order(&self, group: &FiniteGroup) -> Result<()> {
        if self.values.len() == group.order() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: group.order(), found: self.values.len() })
        }
    }

    pub fn sup_norm(&self) -> Rational {
        crate::linalg::max_abs(&self.values)
    }

    /// L¹ norm for counting measure on `G`.
    pub fn l1_norm(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v.abs())
    }

    /// `f(xk) = f(x)` for all `x ∈ G`, `k ∈ K`.
    pub fn is_right_invariant(&self, group: &FiniteGroup, k: &Subgroup) -> bool {
        group.elements().all(|x| k.elements().iter().all(|&h| self.values[group.mul(x, h)] == self.values[x]))
    }
}

/// A function on the cosets of a [`CosetSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientFunction {
    space: SpaceId,
    values: Vec<Rational>,
}

impl QuotientFunction {
    /// Panics if `values` does not have one entry per coset; see [`QuotientFunction::try_new`].
    pub fn new(space: &CosetSpace, values: Vec<Rational>) -> Self {
        Self::try_new(space, values).expect("one value per coset")
    }

    pub fn try_new(space: &CosetSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch { expected: space.len(), found: values.len() });
        }
        Ok(QuotientFunction { space: space.id().clone(), values })
    }

    pub fn zero(space: &CosetSpace) -> Self {
        QuotientFunction::new(space, vec![Rational::zero(); space.len()])
    }

    pub fn constant(space: &CosetSpace, c: Rational) -> Self {
        QuotientFunction::new(space, vec![c; space.len()])
    }

    pub fn indicator(space: &CosetSpace, cosets: &[usize]) -> Self {
        let mut f = QuotientFunction::zero(space);
        for &c in cosets {
            f.values[c] = Rational::one();
        }
        f
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, coset: usize) -> &Rational {
        &self.values[coset]
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&c| !self.values[c].is_zero()).collect()
    }

    pub fn pointwise_mul(&self, other: &QuotientFunction) -> Result<QuotientFunction> {
        self.same_space(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(QuotientFunction { space: self.space.clone(), values })
    }

    pub fn scale(&self, c: &Rational) -> QuotientFunction {
        QuotientFunction { space: self.space.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn sup_norm(&self) -> Rational {
        crate::linalg::max_abs(&self.values)
    }

    fn same_space(&self, other: &QuotientFunction) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { expected: self.space.label().into(), found: other.space.label().into() })
        }
    }
}

fn check_on(space: &CosetSpace, f: &QuotientFunction) -> Result<()> {
    space.check_same(f.space())
}

/// `P_H f(xH) = ∫_H f(xh) dh`.
pub fn project_ph(
    group: &FiniteGroup,
    space: &CosetSpace,
    f: &GroupFunction,
    convention: HaarConvention,
) -> Result<QuotientFunction> {
    f.check_order(group)?;
    let w = convention.point_mass(space.subgroup().len());
    let values = (0..space.len())
        .map(|c| space.members(c).iter().fold(Rational::zero(), |acc, &y| acc + &f.values[y]) * &w)
        .collect();
    Ok(QuotientFunction::new(space, values))
}

/// `P*_H φ = φ ∘ π_H`.
pub fn pullback_to_group(space: &CosetSpace, phi: &QuotientFunction) -> Result<GroupFunction> {
    check_on(space, phi)?;
    let values = (0..space.group_order()).map(|x| phi.values[space.coset_of(x)].clone()).collect();
    Ok(GroupFunction { values })
}

/// `φ ∘ π_{L,H}` from `coarse = G/H` up to `fine = G/L`, for `L ⊆ H`.
pub fn pullback(fine: &CosetSpace, coarse: &CosetSpace, phi: &QuotientFunction) -> Result<QuotientFunction> {
    check_on(coarse, phi)?;
    let map = fine.projection_onto(coarse)?;
    Ok(QuotientFunction::new(fine, map.into_iter().map(|c| phi.values[c].clone()).collect()))
}

/// Right-L-invariant lift of a function on `G/L` to `G`.
pub fn lift(space: &CosetSpace, f: &QuotientFunction) -> Result<GroupFunction> {
    pullback_to_group(space, f)
}

/// Descends a right-L-invariant function on `G` to `G/L`, checking invariance.
pub fn descend(group: &FiniteGroup, space: &CosetSpace, f: &GroupFunction) -> Result<QuotientFunction> {
    f.check_order(group)?;
    for c in 0..space.len() {
        let v = &f.values[space.rep(c)];
        if space.members(c).iter().any(|&y| &f.values[y] != v) {
            return Err(Error::NotInvariant(format!("function varies on coset {c} of {}", space.id())));
        }
    }
    Ok(QuotientFunction::new(space, space.reps().iter().map(|&x| f.values[x].clone()).collect()))
}

/// The subspace `C(G/L : H) = {f : f(xhL) = f(xL) for all x ∈ G, h ∈ H}`, stored as
/// the partition of `G/L` into blocks on which its members are constant.
///
/// Blocks are the images of the `⟨H, L⟩`-cosets, ordered by smallest coset index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSubspace {
    ambient: SpaceId,
    acting: Subgroup,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl InvariantSubspace {
    pub fn ambient(&self) -> &SpaceId {
        &self.ambient
    }

    pub fn acting(&self) -> &Subgroup {
        &self.acting
    }

    pub fn dimension(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, coset: usize) -> usize {
        self.block_of[coset]
    }

    pub fn basis(&self, space: &CosetSpace) -> Vec<QuotientFunction> {
        self.blocks.iter().map(|b| QuotientFunction::indicator(space, b)).collect()
    }

    /// Coordinates in the partition basis; fails if `f` is not constant on blocks.
    pub fn coordinates(&self, f: &QuotientFunction) -> Result<Vec<Rational>> {
        if f.space() != &self.ambient {
            return Err(Error::SpaceMismatch { expected: self.ambient.label().into(), found: f.space().label().into() });
        }
        self.blocks
            .iter()
            .map(|b| {
                let v = &f.values[b[0]];
                if b.iter().all(|&c| &f.values[c] == v) {
                    Ok(v.clone())
                } else {
                    Err(Error::NotInvariant(format!("function varies on block {b:?}")))
                }
            })
            .collect()
    }

    pub fn expand(&self, space: &CosetSpace, coords: &[Rational]) -> Result<QuotientFunction> {
        if coords.len() != self.blocks.len() {
            return Err(Error::DimensionMismatch { expected: self.blocks.len(), found: coords.len() });
        }
        let values = self.block_of.iter().map(|&b| coords[b].clone()).collect();
        QuotientFunction::try_new(space, values)
    }

    /// Orthogonal projection for counting measure: replaces each value by its block mean.
    pub fn average_onto(&self, space: &CosetSpace, f: &QuotientFunction) -> Result<QuotientFunction> {
        check_on(space, f)?;
        let means: Vec<Rational> = self
            .blocks
            .iter()
            .map(|b| {
                let s = b.iter().fold(Rational::zero(), |acc, &c| acc + &f.values[c]);
                s / Rational::from_integer(b.len().into())
            })
            .collect();
        self.expand(space, &means)
    }

    /// Exhaustive test of `f(xhL) = f(xL)` over all `x ∈ G` and `h ∈ H`.
    pub fn contains(&self, group: &FiniteGroup, space: &CosetSpace, f: &QuotientFunction) -> Result<bool> {
        if space.id() != &self.ambient {
            return Err(Error::SpaceMismatch { expected: self.ambient.label().into(), found: space.id().label().into() });
        }
        membership(group, space, &self.acting, f)
    }
}

/// Blocks of the right `H`-action `xL ↦ xhL` on `G/L`.
pub fn invariant_subspace(group: &FiniteGroup, space: &CosetSpace, h: &Subgroup) -> InvariantSubspace {
    let n = space.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in space.ambient().elements().iter().copied() {
        let c = space.coset_of(x);
        for &g in h.elements() {
            let d = space.coset_of(group.mul(x, g));
            let (a, b) = (find(&mut parent, c), find(&mut parent, d));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut block_index = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0; n];
    for c in 0..n {
        let root = find(&mut parent, c);
        if block_index[root] == usize::MAX {
            block_index[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_index[root]].push(c);
        block_of[c] = block_index[root];
    }
    InvariantSubspace { ambient: space.id().clone(), acting: h.clone(), blocks, block_of }
}

/// `f(xhL) = f(xL)` for every `x ∈ G`, `h ∈ H`.
pub fn membership(group: &FiniteGroup, space: &CosetSpace, h: &Subgroup, f: &QuotientFunction) -> Result<bool> {
    check_on(space, f)?;
    Ok(space.ambient().elements().iter().all(|&x| {
        let base = &f.values[space.coset_of(x)];
        h.elements().iter().all(|&g| &f.values[space.coset_of(group.mul(x, g))] == base)
    }))
}

/// `(f̃ ∗ g̃)(x) = c Σ_y f̃(y) g̃(y⁻¹x)` on right-L-invariant lifts, descended to `G/L`.
pub fn convolve(
    group: &FiniteGroup,
    space: &CosetSpace,
    f: &QuotientFunction,
    g: &QuotientFunction,
    normalization: &Rational,
) -> Result<QuotientFunction> {
    let lf = lift(space, f)?;
    let lg = lift(space, g)?;
    let conv = convolve_on_group(group, &lf, &lg)?;
    let scaled = GroupFunction { values: conv.values.into_iter().map(|v| v * normalization).collect() };
    descend(group, space, &scaled)
}

/// Counting-measure convolution on `G`.
pub fn convolve_on_group(group: &FiniteGroup, f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    f.check_order(group)?;
    g.check_order(group)?;
    let mut values = vec![Rational::zero(); group.order()];
    for y in group.elements() {
        let fy = &f.values[y];
        if fy.is_zero() {
            continue;
        }
        let y_inv = group.inv(y);
        for (x, out) in values.iter_mut().enumerate() {
            let gv = &g.values[group.mul(y_inv, x)];
            if !gv.is_zero() {
                *out += fy * gv;
            }
        }
    }
    Ok(GroupFunction { values })
}

/// `(f ∗ μ)(x) = ∫ f(xy) dμ(y)` for a measure given by point masses on `G`.
pub fn convolve_measure(group: &FiniteGroup, f: &GroupFunction, mu: &[Rational]) -> Result<GroupFunction> {
    f.check_order(group)?;
    if mu.len() != group.order() {
        return Err(Error::DimensionMismatch { expected: group.order(), found: mu.len() });
    }
    let values = group
        .elements()
        .map(|x| {
            group
                .elements()
                .filter(|&y| !mu[y].is_zero())
                .fold(Rational::zero(), |acc, y| acc + &f.values[group.mul(x, y)] * &mu[y])
        })
        .collect();
    Ok(GroupFunction { values })
}

/// Haar measure of `H` pushed into `G`, as point masses.
pub fn subgroup_measure(group: &FiniteGroup, h: &Subgroup, convention: HaarConvention) -> Vec<Rational> {
    let w = convention.point_mass(h.len());
    group.elements().map(|x| if h.contains(x) { w.clone() } else { Rational::zero() }).collect()
}

/// `χ_{H/L}`: indicator of the cosets `hL ⊆ H` inside `G/L`.
pub fn chi_hl(space: &CosetSpace, h: &Subgroup) -> Result<QuotientFunction> {
    space.subgroup().require_within(h)?;
    let cosets: Vec<usize> = (0..space.len()).filter(|&c| h.contains(space.rep(c))).collect();
    Ok(QuotientFunction::indicator(space, &cosets))
}

/// Equal partitions, hence equal subspaces.
pub fn subspace_equal(a: &InvariantSubspace, b: &InvariantSubspace) -> Result<bool> {
    if a.ambient != b.ambient {
        return Err(Error::SpaceMismatch { expected: a.ambient.label().into(), found: b.ambient.label().into() });
    }
    Ok(a.blocks == b.blocks)
}

/// `C(G : K)`, the right-K-invariant functions on `G`, as a partition of `G/{e}`.
pub fn fixed_space_on_group(group: &FiniteGroup, k: &Subgroup) -> Result<(CosetSpace, InvariantSubspace)> {
    let points = CosetSpace::new(group, &Subgroup::trivial(group))?;
    let sub = invariant_subspace(group, &points, k);
    Ok((points, sub))
}

/// Reads a function on `G` as a function on `G/{e}`.
pub fn as_point_function(points: &CosetSpace, f: &GroupFunction) -> Result<QuotientFunction> {
    if !points.subgroup().is_trivial() {
        return Err(Error::NotSubgroup(format!("{} is not the trivial coset space", points.id())));
    }
    let values = points.reps().iter().map(|&x| f.values[x].clone()).collect();
    QuotientFunction::try_new(points, values)
}
