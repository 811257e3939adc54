//! Transport between `G/K` and `G/H` for conjugate subgroups `g0⁻¹ K g0 = H`.

use crate::error::{Error, Result};
use crate::functions::{descend, fixed_space_on_group, as_point_function, GroupFunction, InvariantSubspace, QuotientFunction};
use crate::group::{conjugate_subgroup, find_conjugator, CosetSpace, Element, FiniteGroup, Subgroup};
use crate::linalg::{invert, Matrix};
use crate::measure::{project_th, HaarConvention, RhoFunction};
use crate::par::Execution;
use crate::radon::{assemble, OperatorMatrix};

/// An element `g0` with `g0⁻¹ K g0 = H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyWitness {
    g0: Element,
    k: Subgroup,
    h: Subgroup,
}

impl ConjugacyWitness {
    pub fn new(group: &FiniteGroup, k: &Subgroup, h: &Subgroup, g0: Element) -> Result<Self> {
        group.check_element(g0)?;
        if &conjugate_subgroup(group, k, g0) != h {
            return Err(Error::InvalidWitness { k: k.elements().to_vec(), h: h.elements().to_vec(), g0 });
        }
        Ok(ConjugacyWitness { g0, k: k.clone(), h: h.clone() })
    }

    /// Witness from the smallest conjugating element, or `None` if `K` and `H` are not conjugate.
    pub fn find(group: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Option<Self> {
        find_conjugator(group, k, h).map(|g0| ConjugacyWitness { g0, k: k.clone(), h: h.clone() })
    }

    pub fn g0(&self) -> Element {
        self.g0
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }
}

#[derive(Debug, Clone)]
pub struct Transport<'g> {
    group: &'g FiniteGroup,
    witness: ConjugacyWitness,
    k_space: CosetSpace,
    h_space: CosetSpace,
}

impl<'g> Transport<'g> {
    pub fn new(group: &'g FiniteGroup, witness: ConjugacyWitness) -> Result<Self> {
        // Re-validate: the witness may have been built against another group.
        let witness = ConjugacyWitness::new(group, &witness.k, &witness.h, witness.g0)?;
        let k_space = CosetSpace::new(group, &witness.k)?;
        let h_space = CosetSpace::new(group, &witness.h)?;
        Ok(Transport { group, witness, k_space, h_space })
    }

    pub fn witness(&self) -> &ConjugacyWitness {
        &self.witness
    }

    pub fn k_space(&self) -> &CosetSpace {
        &self.k_space
    }

    pub fn h_space(&self) -> &CosetSpace {
        &self.h_space
    }

    /// `θ(gK) = g g0 H`.
    pub fn theta(&self, k_coset: usize) -> usize {
        self.h_space.coset_of(self.group.mul(self.k_space.rep(k_coset), self.witness.g0))
    }

    /// `θ⁻¹(gH) = g g0⁻¹ K`.
    pub fn theta_inverse(&self, h_coset: usize) -> usize {
        self.k_space.coset_of(self.group.mul(self.h_space.rep(h_coset), self.group.inv(self.witness.g0)))
    }

    /// `θ` evaluated on every representative of `gK`; `None` if they disagree.
    pub fn theta_checked(&self, k_coset: usize) -> Option<usize> {
        let images: Vec<usize> = self
            .k_space
            .members(k_coset)
            .iter()
            .map(|&x| self.h_space.coset_of(self.group.mul(x, self.witness.g0)))
            .collect();
        images.windows(2).all(|w| w[0] == w[1]).then(|| images[0])
    }

    /// `(τf)(x) = f(x g0⁻¹)` on right-K-invariant `f`.
    pub fn tau(&self, f: &GroupFunction) -> Result<GroupFunction> {
        f.check_order(self.group)?;
        if !f.is_right_invariant(self.group, &self.witness.k) {
            return Err(Error::NotInvariant(format!("function is not right-invariant under {}", self.witness.k)));
        }
        let g0_inv = self.group.inv(self.witness.g0);
        let values = self.group.elements().map(|x| f.values()[self.group.mul(x, g0_inv)].clone()).collect();
        GroupFunction::new(self.group, values)
    }

    /// `(τ⁻¹f)(x) = f(x g0)` on right-H-invariant `f`.
    pub fn tau_inverse(&self, f: &GroupFunction) -> Result<GroupFunction> {
        f.check_order(self.group)?;
        if !f.is_right_invariant(self.group, &self.witness.h) {
            return Err(Error::NotInvariant(format!("function is not right-invariant under {}", self.witness.h)));
        }
        let values = self.group.elements().map(|x| f.values()[self.group.mul(x, self.witness.g0)].clone()).collect();
        GroupFunction::new(self.group, values)
    }

    /// `τ(φ ∘ π_K) = φ ∘ θ⁻¹ ∘ π_H`, computed through the coset map.
    pub fn tau_via_theta(&self, f: &GroupFunction) -> Result<GroupFunction> {
        let phi = descend(self.group, &self.k_space, f)?;
        let values = self
            .group
            .elements()
            .map(|x| phi.at(self.theta_inverse(self.h_space.coset_of(x))).clone())
            .collect();
        GroupFunction::new(self.group, values)
    }

    /// `Tφ(xH) = φ(x g0⁻¹ K)`.
    pub fn apply(&self, phi: &QuotientFunction) -> Result<QuotientFunction> {
        self.k_space.check_same(phi.space())?;
        let values = (0..self.h_space.len()).map(|c| phi.at(self.theta_inverse(c)).clone()).collect();
        Ok(QuotientFunction::new(&self.h_space, values))
    }

    pub fn matrix(&self, exec: Execution) -> Result<OperatorMatrix> {
        assemble(exec, &self.k_space, &self.h_space, |phi| self.apply(phi))
    }

    fn fixed(&self, sub: &Subgroup) -> Result<(CosetSpace, InvariantSubspace)> {
        fixed_space_on_group(self.group, sub)
    }

    /// `τ: C(G:K) → C(G:H)` in the coset-indicator bases.
    pub fn tau_matrix(&self) -> Result<Matrix> {
        let (points, fixed_k) = self.fixed(&self.witness.k)?;
        let (_, fixed_h) = self.fixed(&self.witness.h)?;
        let columns = fixed_k
            .basis(&points)
            .iter()
            .map(|b| {
                let f = GroupFunction::new(self.group, b.values().to_vec())?;
                fixed_h.coordinates(&as_point_function(&points, &self.tau(&f)?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(fixed_h.dimension(), &columns)
    }

    /// `T_S` with `ρ ≡ 1` restricted to `C(G:S)`, from coset indicators to points of `G/S`.
    pub fn descent_matrix(&self, sub: &Subgroup, convention: HaarConvention) -> Result<Matrix> {
        let (points, fixed) = self.fixed(sub)?;
        let space = CosetSpace::new(self.group, sub)?;
        let rho = RhoFunction::constant(self.group, &space);
        let columns = fixed
            .basis(&points)
            .iter()
            .map(|b| {
                let f = GroupFunction::new(self.group, b.values().to_vec())?;
                Ok(project_th(self.group, &space, &f, &rho, convention)?.into_values())
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(space.len(), &columns)
    }

    /// `T_H · τ · T_K⁻¹`.
    pub fn composed_matrix(&self, convention: HaarConvention) -> Result<Matrix> {
        let th = self.descent_matrix(&self.witness.h, convention)?;
        let tk_inv = invert(&self.descent_matrix(&self.witness.k, convention)?)?;
        th.try_mul(&self.tau_matrix()?)?.try_mul(&tk_inv)
    }
}

pub fn theta(group: &FiniteGroup, witness: &ConjugacyWitness, k_coset: usize) -> Result<usize> {
    Ok(Transport::new(group, witness.clone())?.theta(k_coset))
}

pub fn tau(group: &FiniteGroup, witness: &ConjugacyWitness, f: &GroupFunction) -> Result<GroupFunction> {
    Transport::new(group, witness.clone())?.tau(f)
}

pub fn transport_t(group: &FiniteGroup, witness: &ConjugacyWitness, phi: &QuotientFunction) -> Result<QuotientFunction> {
    Transport::new(group, witness.clone())?.apply(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn s3_pair() -> (FiniteGroup, Subgroup, Subgroup) {
        let g = FiniteGroup::symmetric(3).unwrap();
        let k = g.generate(&[g.element_by_label("(12)").unwrap()]).unwrap();
        let h = g.generate(&[g.element_by_label("(23)").unwrap()]).unwrap();
        (g, k, h)
    }

    #[test]
    fn identity_witness_gives_identity_maps() {
        let (g, k, _) = s3_pair();
        let w = ConjugacyWitness::new(&g, &k, &k, g.identity()).unwrap();
        let t = Transport::new(&g, w).unwrap();
        assert!((0..3).all(|c| t.theta(c) == c));
        assert!(t.matrix(Execution::Sequential).unwrap().matrix.is_identity());
        let f = GroupFunction::indicator(&g, t.k_space().members(1));
        assert_eq!(t.tau(&f).unwrap(), f);
    }

    #[test]
    fn theta_is_equivariant_bijection() {
        let (g, k, h) = s3_pair();
        let t = Transport::new(&g, ConjugacyWitness::find(&g, &k, &h).unwrap()).unwrap();
        for c in 0..3 {
            assert_eq!(t.theta_checked(c), Some(t.theta(c)));
            assert_eq!(t.theta_inverse(t.theta(c)), c);
            assert_eq!(t.theta(t.theta_inverse(c)), c);
            for x in g.elements() {
                assert_eq!(t.theta(t.k_space().act(&g, x, c)), t.h_space().act(&g, x, t.theta(c)));
            }
        }
    }

    #[test]
    fn tau_translates_coset_indicators() {
        let (g, k, h) = s3_pair();
        let t = Transport::new(&g, ConjugacyWitness::find(&g, &k, &h).unwrap()).unwrap();
        let f = GroupFunction::indicator(&g, k.elements());
        let out = t.tau(&f).unwrap();
        assert!(out.is_right_invariant(&g, &h));
        assert_eq!(out, t.tau_via_theta(&f).unwrap());
        assert_eq!(out.sup_norm(), f.sup_norm());
        assert_eq!(t.tau_inverse(&out).unwrap(), f);
        assert!(t.tau_matrix().unwrap().is_permutation());
    }

    #[test]
    fn tau_rejects_non_invariant_input() {
        let (g, k, h) = s3_pair();
        let t = Transport::new(&g, ConjugacyWitness::find(&g, &k, &h).unwrap()).unwrap();
        assert!(t.tau(&GroupFunction::indicator(&g, &[0])).is_err());
    }

    #[test]
    fn invalid_witness() {
        let (g, k, h) = s3_pair();
        assert!(matches!(ConjugacyWitness::new(&g, &k, &h, g.identity()), Err(Error::InvalidWitness { .. })));
    }

    #[test]
    fn composed_matrix_matches_closed_form() {
        let (g, k, h) = s3_pair();
        let t = Transport::new(&g, ConjugacyWitness::find(&g, &k, &h).unwrap()).unwrap();
        let direct = t.matrix(Execution::Sequential).unwrap().matrix;
        for conv in [HaarConvention::Counting, HaarConvention::Normalized] {
            assert_eq!(t.composed_matrix(conv).unwrap(), direct);
        }
        let phi = QuotientFunction::new(t.k_space(), vec![int(3), int(-1), int(5)]);
        let psi = QuotientFunction::new(t.k_space(), vec![int(2), int(7), int(-4)]);
        let lhs = t.apply(&phi.pointwise_mul(&psi).unwrap()).unwrap();
        let rhs = t.apply(&phi).unwrap().pointwise_mul(&t.apply(&psi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
