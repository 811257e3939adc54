//! Finite groups as validated Cayley tables, their subgroups, and left coset spaces.
//!
//! Elements are dense indices `0..order`. The named constructors fix the
//! numbering so that examples and reports are reproducible:
//!
//! * `cyclic(n)`: `k` is the residue `k mod n`, product is addition.
//! * `dihedral(n)` (order `2n`): index `k + n*j` is `r^k s^j`, with `s r s = r^-1`.
//! * `symmetric(n)`: permutations of `0..n` in lexicographic order of their
//!   one-line notation; `x*y` applies `y` first. Labels use 1-based cycle notation,
//!   so in `S3` index 2 is `(12)`, index 1 is `(23)` and index 5 is `(13)`.
//! * `quaternion8()`: `1, -1, i, -i, j, -j, k, -k` in that order.
//! * `product(a, b)`: index `i*|b| + j` is `(a_i, b_j)`.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Element = usize;

const OUTSIDE: usize = usize::MAX;

fn fingerprint<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// JSON group specification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Quaternion8,
    Product { factors: Vec<GroupSpec> },
}

impl GroupSpec {
    /// Parses short names such as `Z4`, `C6`, `D4`, `S3`, `Q8` and products `Z2xZ2`.
    pub fn from_name(name: &str) -> Result<GroupSpec> {
        let name = name.trim();
        let factors: Vec<&str> = name.split(['x', '×']).collect();
        if factors.len() > 1 {
            let specs = factors.iter().map(|f| GroupSpec::from_name(f)).collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Product { factors: specs });
        }
        let bad = || Error::InvalidSpec(format!("unknown group name {name:?}"));
        if name == "Q8" {
            return Ok(GroupSpec::Quaternion8);
        }
        let (kind, n) = name.split_at(1.min(name.len()));
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "Z" | "C" => Ok(GroupSpec::Cyclic { n }),
            "D" => Ok(GroupSpec::Dihedral { n }),
            "S" => Ok(GroupSpec::Symmetric { n }),
            _ => Err(bad()),
        }
    }

    /// Accepts either a short name or a path to a JSON specification.
    pub fn resolve(arg: &str) -> Result<GroupSpec> {
        if arg.ends_with(".json") || Path::new(arg).is_file() {
            let text = std::fs::read_to_string(arg)?;
            Ok(serde_json::from_str(&text)?)
        } else {
            GroupSpec::from_name(arg)
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        build_group(self)
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Table { table, name } => {
            FiniteGroup::from_table(name.clone().unwrap_or_else(|| "G".into()), table.clone())
        }
        GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
        GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n),
        GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n),
        GroupSpec::Quaternion8 => Ok(FiniteGroup::quaternion8()),
        GroupSpec::Product { factors } => {
            let mut it = factors.iter();
            let first = it.next().ok_or_else(|| Error::InvalidSpec("empty product".into()))?;
            let mut acc = build_group(first)?;
            for f in it {
                acc = FiniteGroup::product(&acc, &build_group(f)?)?;
            }
            Ok(acc)
        }
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: Element,
    inverse: Vec<Element>,
    labels: Vec<String>,
    fingerprint: u64,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a raw multiplication table (row `x`, column `y` holds `x*y`).
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(Error::RaggedTable { row, len: r.len(), expected: order });
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or(Error::NoIdentity)?;
        for (x, r) in rows.iter().enumerate() {
            for (y, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange { x, y, value, order });
                }
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| rows[x][y] == identity && rows[y][x] == identity)
                .ok_or(Error::NoInverse(x))?;
            inverse.push(inv);
        }
        for x in 0..order {
            for y in 0..order {
                let xy = rows[x][y];
                for z in 0..order {
                    let left = rows[xy][z];
                    let right = rows[x][rows[y][z]];
                    if left != right {
                        return Err(Error::NotAssociative { x, y, z, left, right });
                    }
                }
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let fingerprint = fingerprint(&table);
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table,
            identity,
            inverse,
            labels: (0..order).map(|x| x.to_string()).collect(),
            fingerprint,
        })
    }

    fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.order);
        self.labels = labels;
        self
    }

    fn from_rule(name: String, order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..order).map(|x| (0..order).map(|y| mul(x, y)).collect()).collect();
        FiniteGroup::from_table(name, rows)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("cyclic group of order 0".into()));
        }
        FiniteGroup::from_rule(format!("Z{n}"), n, |x, y| (x + y) % n)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("dihedral group with n = 0".into()));
        }
        let g = FiniteGroup::from_rule(format!("D{n}"), 2 * n, |x, y| {
            let (a, i) = (x % n, x / n);
            let (b, j) = (y % n, y / n);
            let rot = if i == 0 { (a + b) % n } else { (a + n - b) % n };
            rot + n * ((i + j) % 2)
        })?;
        let labels = (0..2 * n)
            .map(|x| {
                let (k, j) = (x % n, x / n);
                match (k, j) {
                    (0, 0) => "e".to_string(),
                    (0, _) => "s".to_string(),
                    (1, 0) => "r".to_string(),
                    (k, 0) => format!("r{k}"),
                    (1, _) => "rs".to_string(),
                    (k, _) => format!("r{k}s"),
                }
            })
            .collect();
        Ok(g.with_labels(labels))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidSpec(format!("symmetric group S{n} is outside 1..=5")));
        }
        let perms = permutations(n);
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
        let g = FiniteGroup::from_rule(format!("S{n}"), perms.len(), |x, y| {
            let composed: Vec<usize> = (0..n).map(|i| perms[x][perms[y][i]]).collect();
            index_of(&composed)
        })?;
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        Ok(g.with_labels(labels))
    }

    pub fn quaternion8() -> Self {
        // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k; index = 2*unit + sign.
        let unit_mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, u) | (u, 0) => (0, u),
                (u, v) if u == v => (1, 0),
                (1, 2) => (0, 3),
                (2, 1) => (1, 3),
                (2, 3) => (0, 1),
                (3, 2) => (1, 1),
                (3, 1) => (0, 2),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        let g = FiniteGroup::from_rule("Q8".into(), 8, |x, y| {
            let (sx, ux) = (x % 2, x / 2);
            let (sy, uy) = (y % 2, y / 2);
            let (s, u) = unit_mul(ux, uy);
            2 * u + (s + sx + sy) % 2
        })
        .expect("quaternion table is a group");
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        g.with_labels(labels)
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let nb = b.order;
        let g = FiniteGroup::from_rule(format!("{}x{}", a.name, b.name), a.order * nb, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })?;
        let labels = (0..a.order * nb).map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb])).collect();
        Ok(g.with_labels(labels))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Element) -> Element {
        self.inverse[x]
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, x: Element) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, order: self.order })
        }
    }

    /// Subgroup generated by `gens` (closure under products; inverses follow from finiteness).
    pub fn generate(&self, gens: &[Element]) -> Result<Subgroup> {
        for &g in gens {
            self.check_element(g)?;
        }
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut elements = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        elements.sort_unstable();
        Ok(Subgroup { group_order: self.order, elements, member })
    }

    /// Every subgroup, sorted by order then by element list.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<Element>> = BTreeSet::new();
        let mut list: Vec<Subgroup> = Vec::new();
        for x in self.elements() {
            let s = self.generate(&[x]).expect("element in range");
            if found.insert(s.elements.clone()) {
                list.push(s);
            }
        }
        let mut start = 0;
        loop {
            let snapshot = list.len();
            for i in 0..snapshot {
                for j in start.max(i + 1)..snapshot {
                    let joined = list[i].join(self, &list[j]);
                    if found.insert(joined.elements.clone()) {
                        list.push(joined);
                    }
                }
            }
            if list.len() == snapshot {
                break;
            }
            start = snapshot;
        }
        list.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
        list
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// A subgroup of a finite group, stored as a sorted element list plus a membership mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group_order: usize,
    elements: Vec<Element>,
    member: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elements)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Subgroup {
    /// Validates that `elements` is a subgroup of `group`.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut member = vec![false; group.order()];
        for x in elements {
            group.check_element(x)?;
            member[x] = true;
        }
        let elements: Vec<Element> = (0..group.order()).filter(|&x| member[x]).collect();
        if !member[group.identity()] {
            return Err(Error::NotSubgroup(format!("{elements:?} does not contain the identity")));
        }
        for &x in &elements {
            if !member[group.inv(x)] {
                return Err(Error::NotSubgroup(format!("{elements:?} lacks the inverse of {x}")));
            }
            for &y in &elements {
                if !member[group.mul(x, y)] {
                    return Err(Error::NotSubgroup(format!("{elements:?} is not closed: {x}*{y}")));
                }
            }
        }
        Ok(Subgroup { group_order: group.order(), elements, member })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        group.generate(&[]).expect("no generators")
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup { group_order: group.order(), elements: group.elements().collect(), member: vec![true; group.order()] }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// `[G : self]`.
    pub fn index(&self) -> usize {
        self.group_order / self.elements.len()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let member: Vec<bool> = self.member.iter().zip(&other.member).map(|(a, b)| *a && *b).collect();
        let elements = (0..self.group_order).filter(|&x| member[x]).collect();
        Subgroup { group_order: self.group_order, elements, member }
    }

    /// Subgroup generated by the union.
    pub fn join(&self, group: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = self.elements.iter().chain(&other.elements).copied().collect();
        group.generate(&gens).expect("elements in range")
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        group.elements().all(|g| conjugate_subgroup(group, self, g).elements == self.elements)
    }

    pub(crate) fn require_within(&self, outer: &Subgroup) -> Result<()> {
        if self.is_subgroup_of(outer) {
            Ok(())
        } else {
            Err(Error::NotContained { inner: self.elements.clone(), outer: outer.elements.clone() })
        }
    }
}

/// Identifies a coset space for mismatch checks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpaceId {
    group: u64,
    ambient: u64,
    subgroup: u64,
    label: String,
}

impl SpaceId {
    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Left cosets `aH` of `H` inside an ambient subgroup `A` of `G` (usually `A = G`).
///
/// Cosets are numbered in increasing order of their representatives, and each
/// representative is the smallest element index of its coset.
#[derive(Clone)]
pub struct CosetSpace {
    id: SpaceId,
    group_order: usize,
    ambient: Subgroup,
    subgroup: Subgroup,
    reps: Vec<Element>,
    coset_of: Vec<usize>,
    members: Vec<Vec<Element>>,
}

impl fmt::Debug for CosetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetSpace({}, reps {:?})", self.id, self.reps)
    }
}

impl CosetSpace {
    /// `G/H`.
    pub fn new(group: &FiniteGroup, subgroup: &Subgroup) -> Result<Self> {
        CosetSpace::within(group, &Subgroup::whole(group), subgroup)
    }

    /// `A/H` for `H ⊆ A ⊆ G`, with elements still indexed in `G`.
    pub fn within(group: &FiniteGroup, ambient: &Subgroup, subgroup: &Subgroup) -> Result<Self> {
        if subgroup.group_order != group.order() || ambient.group_order != group.order() {
            return Err(Error::NotSubgroup(format!("{subgroup} does not belong to {}", group.name())));
        }
        subgroup.require_within(ambient)?;
        let mut coset_of = vec![OUTSIDE; group.order()];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for &x in ambient.elements() {
            if coset_of[x] != OUTSIDE {
                continue;
            }
            let idx = reps.len();
            let mut coset: Vec<Element> = subgroup.elements().iter().map(|&h| group.mul(x, h)).collect();
            coset.sort_unstable();
            for &y in &coset {
                coset_of[y] = idx;
            }
            reps.push(x);
            members.push(coset);
        }
        let label = if ambient.len() == group.order() {
            format!("{}/{}", group.name(), subgroup)
        } else {
            format!("{}:{}/{}", group.name(), ambient, subgroup)
        };
        let id = SpaceId {
            group: group.fingerprint(),
            ambient: fingerprint(&ambient.elements),
            subgroup: fingerprint(&subgroup.elements),
            label,
        };
        Ok(CosetSpace {
            id,
            group_order: group.order(),
            ambient: ambient.clone(),
            subgroup: subgroup.clone(),
            reps,
            coset_of,
            members,
        })
    }

    pub fn id(&self) -> &SpaceId {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn reps(&self) -> &[Element] {
        &self.reps
    }

    pub fn rep(&self, coset: usize) -> Element {
        self.reps[coset]
    }

    pub fn members(&self, coset: usize) -> &[Element] {
        &self.members[coset]
    }

    /// The canonical projection `x ↦ xH`. Panics for `x` outside the ambient subgroup.
    #[inline]
    pub fn coset_of(&self, x: Element) -> usize {
        let c = self.coset_of[x];
        assert!(c != OUTSIDE, "element {x} is outside the ambient subgroup of {}", self.id);
        c
    }

    pub fn try_coset_of(&self, x: Element) -> Option<usize> {
        self.coset_of.get(x).copied().filter(|&c| c != OUTSIDE)
    }

    /// Left action `x · (gH) = (xg)H`.
    #[inline]
    pub fn act(&self, group: &FiniteGroup, x: Element, coset: usize) -> usize {
        self.coset_of(group.mul(x, self.reps[coset]))
    }

    pub fn check_same(&self, other: &SpaceId) -> Result<()> {
        if &self.id == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { expected: self.id.label.clone(), found: other.label.clone() })
        }
    }

    /// `π_{L,H}` from this space `G/L` onto `coarse = G/H`; requires `L ⊆ H`.
    pub fn projection_onto(&self, coarse: &CosetSpace) -> Result<Vec<usize>> {
        self.subgroup.require_within(&coarse.subgroup)?;
        Ok(self.reps.iter().map(|&x| coarse.coset_of(x)).collect())
    }
}

pub fn coset_space(group: &FiniteGroup, subgroup: &Subgroup) -> Result<CosetSpace> {
    CosetSpace::new(group, subgroup)
}

/// The map `xL ↦ xH` on coset indices, for `L ⊆ H`.
pub fn refine_projection(group: &FiniteGroup, l: &Subgroup, h: &Subgroup) -> Result<Vec<usize>> {
    l.require_within(h)?;
    CosetSpace::new(group, l)?.projection_onto(&CosetSpace::new(group, h)?)
}

/// `g0⁻¹ K g0`.
pub fn conjugate_subgroup(group: &FiniteGroup, k: &Subgroup, g0: Element) -> Subgroup {
    let g0_inv = group.inv(g0);
    let elements = k.elements().iter().map(|&x| group.mul(group.mul(g0_inv, x), g0));
    Subgroup::new(group, elements).expect("conjugate of a subgroup is a subgroup")
}

/// Smallest `g0` with `g0⁻¹ K g0 = H`, if any.
pub fn find_conjugator(group: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Option<Element> {
    if k.len() != h.len() {
        return None;
    }
    group.elements().find(|&g| conjugate_subgroup(group, k, g).elements == h.elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    fn sub(g: &FiniteGroup, labels: &[&str]) -> Subgroup {
        let gens: Vec<_> = labels.iter().map(|l| g.element_by_label(l).unwrap()).collect();
        g.generate(&gens).unwrap()
    }

    #[test]
    fn cyclic_four() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.mul(1, 3), 0);
    }

    #[test]
    fn s3_involutions_by_enumeration() {
        let g = s3();
        assert_eq!(g.order(), 6);
        // Count involutions directly on the permutations of three letters.
        let brute = permutations(3)
            .into_iter()
            .filter(|p| (0..3).any(|i| p[i] != i) && (0..3).all(|i| p[p[i]] == i))
            .count();
        let from_table = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(brute, 3);
        assert_eq!(from_table, brute);
    }

    #[test]
    fn s3_labels_match_documented_numbering() {
        let g = s3();
        assert_eq!(g.label(0), "e");
        assert_eq!(g.label(1), "(23)");
        assert_eq!(g.label(2), "(12)");
        assert_eq!(g.label(5), "(13)");
    }

    #[test]
    fn degenerate_table_fails_identity() {
        let err = FiniteGroup::from_table("bad", vec![vec![1]]).unwrap_err();
        assert_eq!(err, Error::NoIdentity);
    }

    #[test]
    fn non_associative_table_names_triple() {
        // Identity 0, every element self-inverse, but 1*2 = 2*1 = 1 breaks associativity.
        let t = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        match FiniteGroup::from_table("bad", t).unwrap_err() {
            Error::NotAssociative { .. } => {}
            other => panic!("unexpected {other:?}"),
        }
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 2]];
        assert!(FiniteGroup::from_table("bad", t).is_err());
    }

    #[test]
    fn named_groups_have_expected_orders() {
        for (name, order) in [("Z6", 6), ("Z2xZ2", 4), ("D4", 8), ("Q8", 8), ("S4", 24)] {
            let g = GroupSpec::from_name(name).unwrap().build().unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
        let q8 = FiniteGroup::quaternion8();
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 4).count(), 6);
        assert!(!FiniteGroup::dihedral(4).unwrap().is_abelian());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(s3().subgroups().len(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().subgroups().len(), 30);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().subgroups().len(), 10);
        assert_eq!(FiniteGroup::quaternion8().subgroups().len(), 6);
        assert_eq!(GroupSpec::from_name("Z2xZ2").unwrap().build().unwrap().subgroups().len(), 5);
    }

    #[test]
    fn coset_space_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::new(&z4, [0, 2]).unwrap();
        let cs = CosetSpace::new(&z4, &h).unwrap();
        assert_eq!(cs.reps(), &[0, 1]);

        let g = s3();
        let cs = CosetSpace::new(&g, &sub(&g, &["(12)"])).unwrap();
        assert_eq!(cs.len(), 3);

        let full = CosetSpace::new(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(full.reps(), &[g.identity()]);
    }

    #[test]
    fn not_a_subgroup() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert!(Subgroup::new(&z4, [0, 1]).is_err());
        assert!(Subgroup::new(&z4, [1, 3]).is_err());
    }

    #[test]
    fn refine_projection_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let l = Subgroup::trivial(&z4);
        let h = Subgroup::new(&z4, [0, 2]).unwrap();
        assert_eq!(refine_projection(&z4, &l, &h).unwrap(), vec![0, 1, 0, 1]);
        assert_eq!(refine_projection(&z4, &h, &h).unwrap(), vec![0, 1]);
        assert!(matches!(refine_projection(&z4, &h, &l), Err(Error::NotContained { .. })));

        let g = s3();
        let h = sub(&g, &["(12)"]);
        let map = refine_projection(&g, &Subgroup::trivial(&g), &h).unwrap();
        let mut fibers = vec![0; 3];
        for c in map {
            fibers[c] += 1;
        }
        assert_eq!(fibers, vec![2, 2, 2]);
    }

    #[test]
    fn conjugation_examples() {
        let g = s3();
        let k = sub(&g, &["(12)"]);
        let t13 = g.element_by_label("(13)").unwrap();
        assert_eq!(conjugate_subgroup(&g, &k, t13), sub(&g, &["(23)"]));
        assert_eq!(conjugate_subgroup(&g, &k, g.identity()), k);
        let a3 = sub(&g, &["(123)"]);
        assert!(g.elements().all(|x| conjugate_subgroup(&g, &a3, x) == a3));
        assert!(a3.is_normal(&g));

        let h = sub(&g, &["(23)"]);
        let g0 = find_conjugator(&g, &k, &h).unwrap();
        assert_eq!(conjugate_subgroup(&g, &k, g0), h);
        assert!((0..g0).all(|x| conjugate_subgroup(&g, &k, x) != h));
        assert_eq!(find_conjugator(&g, &k, &k), Some(g.identity()));
        assert_eq!(find_conjugator(&g, &k, &a3), None);
    }

    #[test]
    fn json_spec_roundtrip() {
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"product","factors":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":2}]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 4);
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"table","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 2);
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"quaternion8"}"#).unwrap();
        assert_eq!(spec, GroupSpec::Quaternion8);
    }
}
