//! Radon transforms between coset spaces and their duals.
//!
//! The nested transform `R_{L,H}: C(G/L) → C(G/H)` (with `L ⊆ H`) integrates over
//! the fibers of `π_{L,H}` against an invariant measure `η` on `H/L`; its dual is
//! pullback along `π_{L,H}`. The general transform `R_{K,H}` for arbitrary
//! subgroups uses `L = H ∩ K`. Invariant measures default to total mass 1.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{invariant_subspace, pullback, InvariantSubspace, QuotientFunction};
use crate::group::{CosetSpace, FiniteGroup, Subgroup};
use crate::linalg::{nullspace, Matrix, MatrixRecord, Rational};
use crate::measure::QuotientMeasure;
use crate::par::{self, Execution};

fn require_invariant_on(measure: &QuotientMeasure, space: &CosetSpace) -> Result<()> {
    space.check_same(measure.space())?;
    if !measure.is_invariant() {
        return Err(Error::InvalidMeasure(format!("measure on {} is not invariant", space.id())));
    }
    Ok(())
}

/// `R_{L,H}` and `R*_{L,H}` for `L ⊆ H`.
#[derive(Debug, Clone)]
pub struct NestedRadon<'g> {
    group: &'g FiniteGroup,
    fine: CosetSpace,
    coarse: CosetSpace,
    fiber: CosetSpace,
    eta: QuotientMeasure,
    projection: Vec<usize>,
}

impl<'g> NestedRadon<'g> {
    /// Uses the normalized invariant measure on `H/L`.
    pub fn new(group: &'g FiniteGroup, l: &Subgroup, h: &Subgroup) -> Result<Self> {
        l.require_within(h)?;
        let fiber = CosetSpace::within(group, h, l)?;
        let eta = QuotientMeasure::normalized(&fiber);
        Self::with_measure(group, l, h, eta)
    }

    pub fn with_measure(group: &'g FiniteGroup, l: &Subgroup, h: &Subgroup, eta: QuotientMeasure) -> Result<Self> {
        l.require_within(h)?;
        let fine = CosetSpace::new(group, l)?;
        let coarse = CosetSpace::new(group, h)?;
        let fiber = CosetSpace::within(group, h, l)?;
        require_invariant_on(&eta, &fiber)?;
        let projection = fine.projection_onto(&coarse)?;
        Ok(NestedRadon { group, fine, coarse, fiber, eta, projection })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    /// `G/L`.
    pub fn fine(&self) -> &CosetSpace {
        &self.fine
    }

    /// `G/H`.
    pub fn coarse(&self) -> &CosetSpace {
        &self.coarse
    }

    /// `H/L`.
    pub fn fiber(&self) -> &CosetSpace {
        &self.fiber
    }

    pub fn eta(&self) -> &QuotientMeasure {
        &self.eta
    }

    /// `π_{L,H}` on coset indices.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// `R_{L,H} f(xH) = ∫_{H/L} f(xhL) dη(hL)`.
    pub fn apply(&self, f: &QuotientFunction) -> Result<QuotientFunction> {
        self.fine.check_same(f.space())?;
        let values = self
            .coarse
            .reps()
            .iter()
            .map(|&x| {
                (0..self.fiber.len()).fold(Rational::zero(), |acc, d| {
                    let c = self.fine.coset_of(self.group.mul(x, self.fiber.rep(d)));
                    acc + f.at(c) * self.eta.weight(d)
                })
            })
            .collect();
        Ok(QuotientFunction::new(&self.coarse, values))
    }

    /// `R*φ(xL) = φ(xH)`, with the unit point mass on `L/L`.
    pub fn dual(&self, phi: &QuotientFunction) -> Result<QuotientFunction> {
        pullback(&self.fine, &self.coarse, phi)
    }

    /// The unique `f ∈ C(G/L : H)` with `R f = φ`, namely `φ ∘ π_{L,H}`.
    pub fn reconstruct(&self, phi: &QuotientFunction) -> Result<QuotientFunction> {
        self.dual(phi)
    }

    /// `C(G/L : H)`.
    pub fn invariant_subspace(&self) -> InvariantSubspace {
        invariant_subspace(self.group, &self.fine, self.coarse.subgroup())
    }

    pub fn matrix(&self, exec: Execution) -> Result<OperatorMatrix> {
        assemble(exec, &self.fine, &self.coarse, |f| self.apply(f))
    }

    pub fn dual_matrix(&self, exec: Execution) -> Result<OperatorMatrix> {
        assemble(exec, &self.coarse, &self.fine, |phi| self.dual(phi))
    }

    /// `R_{L,H}` restricted to `C(G/L : H)`, in the partition basis, against point indicators of `G/H`.
    pub fn restricted_matrix(&self) -> Result<Matrix> {
        let sub = self.invariant_subspace();
        let columns = sub
            .basis(&self.fine)
            .iter()
            .map(|b| self.apply(b).map(QuotientFunction::into_values))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.coarse.len(), &columns)
    }
}

/// `R_{K,H}` and `R*_{K,H}` for arbitrary subgroups, with `L = H ∩ K`.
#[derive(Debug, Clone)]
pub struct GeneralRadon<'g> {
    group: &'g FiniteGroup,
    k_space: CosetSpace,
    h_space: CosetSpace,
    l_space: CosetSpace,
    h_fiber: CosetSpace,
    k_fiber: CosetSpace,
    eta: QuotientMeasure,
    sigma: QuotientMeasure,
}

impl<'g> GeneralRadon<'g> {
    /// Normalized invariant measures on `H/L` and `K/L`.
    pub fn new(group: &'g FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<Self> {
        let l = h.intersection(k);
        let eta = QuotientMeasure::normalized(&CosetSpace::within(group, h, &l)?);
        let sigma = QuotientMeasure::normalized(&CosetSpace::within(group, k, &l)?);
        Self::with_measures(group, k, h, eta, sigma)
    }

    pub fn with_measures(
        group: &'g FiniteGroup,
        k: &Subgroup,
        h: &Subgroup,
        eta: QuotientMeasure,
        sigma: QuotientMeasure,
    ) -> Result<Self> {
        let l = h.intersection(k);
        let h_fiber = CosetSpace::within(group, h, &l)?;
        let k_fiber = CosetSpace::within(group, k, &l)?;
        require_invariant_on(&eta, &h_fiber)?;
        require_invariant_on(&sigma, &k_fiber)?;
        Ok(GeneralRadon {
            group,
            k_space: CosetSpace::new(group, k)?,
            h_space: CosetSpace::new(group, h)?,
            l_space: CosetSpace::new(group, &l)?,
            h_fiber,
            k_fiber,
            eta,
            sigma,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn k_space(&self) -> &CosetSpace {
        &self.k_space
    }

    pub fn h_space(&self) -> &CosetSpace {
        &self.h_space
    }

    /// `G/L` with `L = H ∩ K`.
    pub fn l_space(&self) -> &CosetSpace {
        &self.l_space
    }

    /// Sums `Σ_d f(x·rep_d)·w_d` over every representative `x` of each target coset
    /// and rejects the result if the representatives disagree.
    fn integrate(
        &self,
        source: &CosetSpace,
        target: &CosetSpace,
        fiber: &CosetSpace,
        measure: &QuotientMeasure,
        f: &QuotientFunction,
    ) -> Result<QuotientFunction> {
        source.check_same(f.space())?;
        let at = |x: usize| {
            (0..fiber.len()).fold(Rational::zero(), |acc, d| {
                acc + f.at(source.coset_of(self.group.mul(x, fiber.rep(d)))) * measure.weight(d)
            })
        };
        let values = (0..target.len())
            .map(|c| {
                let v = at(target.rep(c));
                if target.members(c).iter().any(|&x| at(x) != v) {
                    return Err(Error::NotWellDefined { coset: c });
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientFunction::new(target, values))
    }

    /// `R_{K,H} f(xH) = ∫_{H/L} f(xhK) dη(hL)`.
    pub fn apply(&self, f: &QuotientFunction) -> Result<QuotientFunction> {
        self.integrate(&self.k_space, &self.h_space, &self.h_fiber, &self.eta, f)
    }

    /// `R*_{K,H} φ(xK) = ∫_{K/L} φ(xkH) dσ(kL)`.
    pub fn dual(&self, phi: &QuotientFunction) -> Result<QuotientFunction> {
        self.integrate(&self.h_space, &self.k_space, &self.k_fiber, &self.sigma, phi)
    }

    /// `C(G/K : H)`.
    pub fn domain_subspace(&self) -> InvariantSubspace {
        invariant_subspace(self.group, &self.k_space, self.h_space.subgroup())
    }

    /// `C(G/H : K)`.
    pub fn range_subspace(&self) -> InvariantSubspace {
        invariant_subspace(self.group, &self.h_space, self.k_space.subgroup())
    }

    pub fn matrix(&self, exec: Execution) -> Result<OperatorMatrix> {
        assemble(exec, &self.k_space, &self.h_space, |f| self.apply(f))
    }

    pub fn dual_matrix(&self, exec: Execution) -> Result<OperatorMatrix> {
        assemble(exec, &self.h_space, &self.k_space, |f| self.dual(f))
    }

    /// `R_{K,H}: C(G/K : H) → C(G/H : K)` in the two partition bases. Fails if an
    /// image leaves `C(G/H : K)`.
    pub fn restricted_matrix(&self) -> Result<Matrix> {
        restricted(&self.domain_subspace(), &self.k_space, &self.range_subspace(), |f| self.apply(f))
    }

    /// `R*_{K,H}: C(G/H : K) → C(G/K : H)` in the two partition bases.
    pub fn restricted_dual_matrix(&self) -> Result<Matrix> {
        restricted(&self.range_subspace(), &self.h_space, &self.domain_subspace(), |f| self.dual(f))
    }
}

fn restricted(
    domain: &InvariantSubspace,
    domain_space: &CosetSpace,
    codomain: &InvariantSubspace,
    op: impl Fn(&QuotientFunction) -> Result<QuotientFunction>,
) -> Result<Matrix> {
    let columns = domain
        .basis(domain_space)
        .iter()
        .map(|b| codomain.coordinates(&op(b)?))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(codomain.dimension(), &columns)
}

/// A function space named by label, with its dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceLabel {
    pub name: String,
    pub dim: usize,
}

impl SpaceLabel {
    pub fn of(space: &CosetSpace) -> Self {
        SpaceLabel { name: format!("C({})", space.id()), dim: space.len() }
    }
}

/// Matrix of a linear operator in the point-indicator bases of its domain and codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub domain: SpaceLabel,
    pub codomain: SpaceLabel,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorRecord {
    pub domain: SpaceLabel,
    pub codomain: SpaceLabel,
    #[serde(flatten)]
    pub matrix: MatrixRecord,
}

impl OperatorMatrix {
    pub fn new(domain: SpaceLabel, codomain: SpaceLabel, matrix: Matrix) -> Result<Self> {
        if matrix.cols() != domain.dim || matrix.rows() != codomain.dim {
            return Err(Error::DimensionMismatch { expected: domain.dim * codomain.dim, found: matrix.rows() * matrix.cols() });
        }
        Ok(OperatorMatrix { domain, codomain, matrix })
    }

    pub fn record(&self) -> OperatorRecord {
        OperatorRecord { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix: MatrixRecord::from(&self.matrix) }
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.matrix)
    }
}

/// Builds a matrix column by column from the images of the point indicators.
pub fn assemble(
    exec: Execution,
    domain: &CosetSpace,
    codomain: &CosetSpace,
    op: impl Fn(&QuotientFunction) -> Result<QuotientFunction> + Sync + Send,
) -> Result<OperatorMatrix> {
    let columns = par::map_range(exec, domain.len(), |c| {
        let image = op(&QuotientFunction::indicator(domain, &[c]))?;
        codomain.check_same(image.space())?;
        Ok(image.into_values())
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    OperatorMatrix::new(SpaceLabel::of(domain), SpaceLabel::of(codomain), Matrix::from_columns(codomain.len(), &columns)?)
}

/// Exact kernel basis.
pub fn kernel_basis(m: &OperatorMatrix) -> Vec<Vec<Rational>> {
    nullspace(&m.matrix)
}

pub fn radon_nested(group: &FiniteGroup, l: &Subgroup, h: &Subgroup, f: &QuotientFunction) -> Result<QuotientFunction> {
    NestedRadon::new(group, l, h)?.apply(f)
}

pub fn radon_dual_nested(group: &FiniteGroup, l: &Subgroup, h: &Subgroup, phi: &QuotientFunction) -> Result<QuotientFunction> {
    NestedRadon::new(group, l, h)?.dual(phi)
}

pub fn radon_general(group: &FiniteGroup, k: &Subgroup, h: &Subgroup, f: &QuotientFunction) -> Result<QuotientFunction> {
    GeneralRadon::new(group, k, h)?.apply(f)
}

pub fn radon_dual_general(group: &FiniteGroup, k: &Subgroup, h: &Subgroup, phi: &QuotientFunction) -> Result<QuotientFunction> {
    GeneralRadon::new(group, k, h)?.dual(phi)
}

pub fn reconstruct(group: &FiniteGroup, l: &Subgroup, h: &Subgroup, phi: &QuotientFunction) -> Result<QuotientFunction> {
    NestedRadon::new(group, l, h)?.reconstruct(phi)
}
