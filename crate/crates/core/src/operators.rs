//! Named operators, assembled into matrices on request.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::functions::{as_point_function, project_ph, pullback_to_group, GroupFunction};
use crate::group::{CosetSpace, FiniteGroup, Subgroup};
use crate::measure::{project_th, HaarConvention, RhoFunction};
use crate::par::Execution;
use crate::radon::{assemble, GeneralRadon, NestedRadon, OperatorMatrix, SpaceLabel};
use crate::transport::{ConjugacyWitness, Transport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// `R_{L,H}: C(G/L) → C(G/H)`.
    RadonNested,
    /// `R*_{L,H}: C(G/H) → C(G/L)`.
    RadonDualNested,
    /// `R_{K,H}: C(G/K) → C(G/H)`.
    RadonGeneral,
    /// `R*_{K,H}: C(G/H) → C(G/K)`.
    RadonDualGeneral,
    /// `P_H: C(G) → C(G/H)`.
    ProjectP,
    /// `P*_H: C(G/H) → C(G)`.
    Pullback,
    /// `T_H: C(G) → C(G/H)` with `ρ ≡ 1`.
    ProjectT,
    /// `τ: C(G:K) → C(G:H)` in the coset-indicator bases.
    Tau,
    /// `T: C(G/K) → C(G/H)` for conjugate `K`, `H`.
    Transport,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 9] = [
        OperatorKind::RadonNested,
        OperatorKind::RadonDualNested,
        OperatorKind::RadonGeneral,
        OperatorKind::RadonDualGeneral,
        OperatorKind::ProjectP,
        OperatorKind::Pullback,
        OperatorKind::ProjectT,
        OperatorKind::Tau,
        OperatorKind::Transport,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorKind::RadonNested => "radon-nested",
            OperatorKind::RadonDualNested => "radon-dual-nested",
            OperatorKind::RadonGeneral => "radon-general",
            OperatorKind::RadonDualGeneral => "radon-dual-general",
            OperatorKind::ProjectP => "project-p",
            OperatorKind::Pullback => "pullback",
            OperatorKind::ProjectT => "project-t",
            OperatorKind::Tau => "tau",
            OperatorKind::Transport => "transport",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidOperator(format!("unknown operator {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub l: Option<Subgroup>,
    pub h: Option<Subgroup>,
    pub k: Option<Subgroup>,
    /// Haar convention on `H` for `P_H` and `T_H`.
    pub convention: HaarConvention,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind) -> Self {
        OperatorSpec { kind, l: None, h: None, k: None, convention: HaarConvention::Counting }
    }
}

fn need<'a>(s: &'a Option<Subgroup>, name: &str, kind: OperatorKind) -> Result<&'a Subgroup> {
    s.as_ref().ok_or_else(|| Error::InvalidOperator(format!("{kind} needs subgroup {name}")))
}

/// Matrix of the described operator in point-indicator bases (coset-indicator bases for `tau`).
pub fn operator_matrix(group: &FiniteGroup, spec: &OperatorSpec, exec: Execution) -> Result<OperatorMatrix> {
    let kind = spec.kind;
    let points = || CosetSpace::new(group, &Subgroup::trivial(group));
    match kind {
        OperatorKind::RadonNested | OperatorKind::RadonDualNested => {
            let radon = NestedRadon::new(group, need(&spec.l, "L", kind)?, need(&spec.h, "H", kind)?)?;
            if kind == OperatorKind::RadonNested {
                radon.matrix(exec)
            } else {
                radon.dual_matrix(exec)
            }
        }
        OperatorKind::RadonGeneral | OperatorKind::RadonDualGeneral => {
            let radon = GeneralRadon::new(group, need(&spec.k, "K", kind)?, need(&spec.h, "H", kind)?)?;
            if kind == OperatorKind::RadonGeneral {
                radon.matrix(exec)
            } else {
                radon.dual_matrix(exec)
            }
        }
        OperatorKind::ProjectP | OperatorKind::ProjectT => {
            let space = CosetSpace::new(group, need(&spec.h, "H", kind)?)?;
            let rho = RhoFunction::constant(group, &space);
            let points = points()?;
            assemble(exec, &points, &space, |f| {
                let f = GroupFunction::new(group, f.values().to_vec())?;
                if kind == OperatorKind::ProjectP {
                    project_ph(group, &space, &f, spec.convention)
                } else {
                    project_th(group, &space, &f, &rho, spec.convention)
                }
            })
        }
        OperatorKind::Pullback => {
            let space = CosetSpace::new(group, need(&spec.h, "H", kind)?)?;
            let points = points()?;
            assemble(exec, &space, &points, |phi| as_point_function(&points, &pullback_to_group(&space, phi)?))
        }
        OperatorKind::Tau | OperatorKind::Transport => {
            let (k, h) = (need(&spec.k, "K", kind)?, need(&spec.h, "H", kind)?);
            let witness = ConjugacyWitness::find(group, k, h)
                .ok_or_else(|| Error::InvalidOperator(format!("K = {k} and H = {h} are not conjugate")))?;
            let t = Transport::new(group, witness)?;
            if kind == OperatorKind::Transport {
                return t.matrix(exec);
            }
            let m = t.tau_matrix()?;
            let label = |s: &Subgroup| SpaceLabel { name: format!("C({}:{s})", group.name()), dim: m.rows() };
            OperatorMatrix::new(label(k), label(h), m)
        }
    }
}
