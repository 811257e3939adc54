//! The verification suite: configuration, case planning and the runner.
//!
//! A run expands its configuration into an ordered list of cases (group, claim
//! family, subgroup choice), evaluates the cases independently, possibly in
//! parallel, and returns reports in planning order. Every random test function
//! is drawn from a generator seeded by `(seed, case index)`, so a configuration
//! always produces the same bytes.

mod emit;
mod families;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use emit::{canonical_json, emit, write_output, Entity, Format};
pub use families::manifest;
pub use report::{exit_code, summarize, CaseId, ClaimKind, ClaimResult, Status, Summary, VerificationReport};

use crate::error::{Error, Result};
use crate::group::{find_conjugator, Element, FiniteGroup, GroupSpec, Subgroup};
use crate::measure::HaarConvention;
use crate::par::{self, Execution};

/// Environment variable overriding the default corpus (comma-separated group names or JSON paths).
pub const CORPUS_ENV: &str = "COSET_RADON_CORPUS";

pub const DEFAULT_CORPUS: [&str; 7] = ["Z4", "Z6", "Z2xZ2", "S3", "D4", "Q8", "S4"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Measures,
    Projections,
    RadonNested,
    RadonGeneral,
    Algebra,
    Transport,
    Example,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Measures,
        Family::Projections,
        Family::RadonNested,
        Family::RadonGeneral,
        Family::Algebra,
        Family::Transport,
        Family::Example,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Measures => "measures",
            Family::Projections => "projections",
            Family::RadonNested => "radon-nested",
            Family::RadonGeneral => "radon-general",
            Family::Algebra => "algebra",
            Family::Transport => "transport",
            Family::Example => "example",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown claim family {s:?}")))
    }
}

/// A group given by short name or by full specification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Spec(GroupSpec),
}

impl GroupRef {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Name(n) => GroupSpec::resolve(n)?.build(),
            GroupRef::Spec(s) => s.build(),
        }
    }
}

/// A subgroup given by generators: element indices or element labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupRef {
    /// `"e"` / `"trivial"`, `"G"` / `"whole"`, or comma-separated generators.
    Text(String),
    Generators(Vec<Element>),
}

impl SubgroupRef {
    pub fn resolve(&self, group: &FiniteGroup) -> Result<Subgroup> {
        match self {
            SubgroupRef::Generators(g) => group.generate(g),
            SubgroupRef::Text(t) => parse_subgroup(group, t),
        }
    }
}

/// Parses `e`, `G`, or comma-separated generators given as indices or labels.
pub fn parse_subgroup(group: &FiniteGroup, text: &str) -> Result<Subgroup> {
    let text = text.trim();
    match text {
        "" | "e" | "trivial" => return Ok(Subgroup::trivial(group)),
        "G" | "whole" => return Ok(Subgroup::whole(group)),
        _ => {}
    }
    let gens = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<Element>()
                .ok()
                .or_else(|| group.element_by_label(tok))
                .ok_or_else(|| Error::Config(format!("unknown element {tok:?} in {}", group.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    group.generate(&gens)
}

/// Which subgroups each case uses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PairSelection {
    /// Every pair the family applies to.
    #[default]
    All,
    /// A single case per group; unset subgroups default to `L = e`, `H = G`, `K = L`.
    Explicit {
        #[serde(rename = "L", default)]
        l: Option<SubgroupRef>,
        #[serde(rename = "H", default)]
        h: Option<SubgroupRef>,
        #[serde(rename = "K", default)]
        k: Option<SubgroupRef>,
    },
}

fn default_samples() -> usize {
    100
}

fn default_rho_samples() -> usize {
    10
}

fn default_tolerance() -> f64 {
    1e-12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub groups: Vec<GroupRef>,
    #[serde(default)]
    pub families: Vec<Family>,
    #[serde(default)]
    pub pairs: PairSelection,
    /// Haar convention on subgroups inside `P_H` and `T_H`.
    #[serde(default)]
    pub convention: HaarConvention,
    #[serde(default)]
    pub seed: u64,
    /// Random test functions per case.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Random nonconstant rho-functions per case.
    #[serde(default = "default_rho_samples")]
    pub rho_samples: usize,
    /// Tolerance for the floating-point example.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub include_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            groups: Vec::new(),
            families: Vec::new(),
            pairs: PairSelection::All,
            convention: HaarConvention::Counting,
            seed: 0,
            samples: default_samples(),
            rho_samples: default_rho_samples(),
            tolerance: default_tolerance(),
            include_timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        SuiteConfig::from_json(&std::fs::read_to_string(path)?)
    }

    /// Groups to run: the configured list, else the corpus override, else the default corpus.
    pub fn resolved_groups(&self) -> Result<Vec<FiniteGroup>> {
        if !self.groups.is_empty() {
            return self.groups.iter().map(GroupRef::build).collect();
        }
        default_corpus()
    }

    pub fn resolved_families(&self) -> Vec<Family> {
        if self.families.is_empty() {
            Family::ALL.to_vec()
        } else {
            let mut f = self.families.clone();
            f.sort();
            f.dedup();
            f
        }
    }
}

pub fn default_corpus() -> Result<Vec<FiniteGroup>> {
    match std::env::var(CORPUS_ENV) {
        Ok(list) if !list.trim().is_empty() => {
            list.split(',').map(|s| GroupSpec::resolve(s.trim())?.build()).collect()
        }
        _ => DEFAULT_CORPUS.iter().map(|n| GroupSpec::from_name(n)?.build()).collect(),
    }
}

/// One planned case.
#[derive(Debug, Clone)]
pub struct CasePlan {
    pub index: usize,
    pub group: usize,
    pub family: Family,
    pub l: Option<Subgroup>,
    pub h: Option<Subgroup>,
    pub k: Option<Subgroup>,
}

/// Ordered pairs `(L, H)` with `L ⊆ H`.
pub fn nested_pairs(subgroups: &[Subgroup]) -> Vec<(Subgroup, Subgroup)> {
    let mut out = Vec::new();
    for h in subgroups {
        for l in subgroups {
            if l.is_subgroup_of(h) {
                out.push((l.clone(), h.clone()));
            }
        }
    }
    out
}

/// Ordered pairs `(K, H)` of conjugate subgroups, including `K = H`.
pub fn conjugate_pairs(group: &FiniteGroup, subgroups: &[Subgroup]) -> Vec<(Subgroup, Subgroup)> {
    let mut out = Vec::new();
    for k in subgroups {
        for h in subgroups {
            if find_conjugator(group, k, h).is_some() {
                out.push((k.clone(), h.clone()));
            }
        }
    }
    out
}

pub fn plan(config: &SuiteConfig, groups: &[FiniteGroup]) -> Result<Vec<CasePlan>> {
    let families = config.resolved_families();
    let mut plans = Vec::new();
    let mut push = |group: usize, family: Family, l: Option<Subgroup>, h: Option<Subgroup>, k: Option<Subgroup>| {
        let index = plans.len();
        plans.push(CasePlan { index, group, family, l, h, k });
    };
    for (gi, group) in groups.iter().enumerate() {
        let explicit = match &config.pairs {
            PairSelection::All => None,
            PairSelection::Explicit { l, h, k } => {
                let l = l.as_ref().map(|s| s.resolve(group)).transpose()?.unwrap_or_else(|| Subgroup::trivial(group));
                let h = h.as_ref().map(|s| s.resolve(group)).transpose()?.unwrap_or_else(|| Subgroup::whole(group));
                let k = k.as_ref().map(|s| s.resolve(group)).transpose()?.unwrap_or_else(|| l.clone());
                Some((l, h, k))
            }
        };
        let subgroups = if explicit.is_none() { group.subgroups() } else { Vec::new() };
        for &family in &families {
            if family == Family::Example {
                continue;
            }
            match (&explicit, family) {
                (Some((_, h, _)), Family::Measures | Family::Projections) => push(gi, family, None, Some(h.clone()), None),
                (Some((l, h, _)), Family::RadonNested | Family::Algebra) => {
                    push(gi, family, Some(l.clone()), Some(h.clone()), None)
                }
                (Some((_, h, k)), Family::RadonGeneral | Family::Transport) => {
                    push(gi, family, None, Some(h.clone()), Some(k.clone()))
                }
                (None, Family::Measures | Family::Projections) => {
                    for h in &subgroups {
                        push(gi, family, None, Some(h.clone()), None);
                    }
                }
                (None, Family::RadonNested | Family::Algebra) => {
                    for (l, h) in nested_pairs(&subgroups) {
                        push(gi, family, Some(l), Some(h), None);
                    }
                }
                (None, Family::RadonGeneral) => {
                    for k in &subgroups {
                        for h in &subgroups {
                            push(gi, family, None, Some(h.clone()), Some(k.clone()));
                        }
                    }
                }
                (None, Family::Transport) => {
                    for (k, h) in conjugate_pairs(group, &subgroups) {
                        push(gi, family, None, Some(h), Some(k));
                    }
                }
                (_, Family::Example) => unreachable!(),
            }
        }
    }
    if families.contains(&Family::Example) {
        push(usize::MAX, Family::Example, None, None, None);
    }
    Ok(plans)
}

/// Runs the suite with the build's default execution mode.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    run_suite_with(config, Execution::default())
}

pub fn run_suite_with(config: &SuiteConfig, exec: Execution) -> Result<Vec<VerificationReport>> {
    let groups = config.resolved_groups()?;
    let plans = plan(config, &groups)?;
    Ok(par::map(exec, &plans, |p| {
        let start = Instant::now();
        let mut report = families::run_case(config, &groups, p);
        if config.include_timing {
            report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        report
    }))
}

fn subgroup_ids(s: &Option<Subgroup>) -> Option<Vec<usize>> {
    s.as_ref().map(|s| s.elements().to_vec())
}

pub(crate) fn case_id(config: &SuiteConfig, groups: &[FiniteGroup], p: &CasePlan) -> CaseId {
    let group = groups.get(p.group).map_or_else(|| "CX".to_string(), |g| g.name().to_string());
    let fmt_sub = |name: &str, s: &Option<Subgroup>| s.as_ref().map(|s| format!(" {name}={s}")).unwrap_or_default();
    CaseId {
        id: format!(
            "{:05} {} {}{}{}{}",
            p.index,
            group,
            p.family,
            fmt_sub("L", &p.l),
            fmt_sub("H", &p.h),
            fmt_sub("K", &p.k)
        ),
        group,
        family: p.family,
        l: subgroup_ids(&p.l),
        h: subgroup_ids(&p.h),
        k: subgroup_ids(&p.k),
        convention: config.convention,
        seed: config.seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_nested_pairs_by_brute_force() {
        let g = FiniteGroup::symmetric(3).unwrap();
        // Brute force: every subset of S3 that is a subgroup, then every containment.
        let mut subs = Vec::new();
        for mask in 0u32..(1 << 6) {
            let elems: Vec<usize> = (0..6).filter(|i| mask & (1 << i) != 0).collect();
            if let Ok(s) = Subgroup::new(&g, elems) {
                subs.push(s);
            }
        }
        assert_eq!(subs.len(), 6);
        let brute = subs.iter().flat_map(|h| subs.iter().filter(move |l| l.is_subgroup_of(h))).count();
        assert_eq!(nested_pairs(&g.subgroups()).len(), brute);
        assert_eq!(brute, 15);
    }

    #[test]
    fn config_parsing() {
        let c = SuiteConfig::from_json(
            r#"{"groups":["S3",{"kind":"cyclic","n":4}],"families":["radon-nested"],"pairs":{"explicit":{"L":"e","H":[2]}},"seed":7}"#,
        )
        .unwrap();
        assert_eq!(c.groups.len(), 2);
        assert_eq!(c.families, vec![Family::RadonNested]);
        assert_eq!(c.seed, 7);
        assert_eq!(c.samples, 100);
        let groups = c.resolved_groups().unwrap();
        let plans = plan(&c, &groups).unwrap();
        assert_eq!(plans.len(), 2);
        assert!(SuiteConfig::from_json(r#"{"bogus":1}"#).is_err());
    }

    #[test]
    fn subgroup_text() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(parse_subgroup(&g, "e").unwrap().len(), 1);
        assert_eq!(parse_subgroup(&g, "G").unwrap().len(), 6);
        assert_eq!(parse_subgroup(&g, "(12)").unwrap().elements(), &[0, 2]);
        assert_eq!(parse_subgroup(&g, "2,1").unwrap().len(), 6);
        assert!(parse_subgroup(&g, "(99)").is_err());
    }
}
