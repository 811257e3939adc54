//! Claim manifests and the checks behind them, one function per family.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{rationals, ClaimKind, Outcome, Recorder, VerificationReport};
use super::{case_id, CasePlan, Family, SuiteConfig};
use crate::circle::{example_f, standard_grid, tent_phi, verify_example};
use crate::error::{Error, Result};
use crate::functions::{
    as_point_function, chi_hl, convolve, convolve_measure, fixed_space_on_group, invariant_subspace, membership,
    project_ph, pullback, pullback_to_group, subgroup_measure, subspace_equal, GroupFunction, InvariantSubspace,
    QuotientFunction,
};
use crate::group::{conjugate_subgroup, CosetSpace, FiniteGroup, Subgroup};
use crate::linalg::{int, nullspace, rank, Matrix, Rational};
use crate::measure::{
    measure_from_rho, modular_function, modular_function_of, project_th, radon_nikodym_ratio, verify_quotient_integral,
    verify_rho_integral, HaarConvention, HaarMeasure, QuotientMeasure, RhoFunction,
};
use crate::par::Execution;
use crate::radon::{GeneralRadon, NestedRadon};
use crate::random::{self, case_rng};
use crate::transport::{ConjugacyWitness, Transport};

use num_complex::Complex64;

const A: ClaimKind = ClaimKind::Asserted;
const R: ClaimKind = ClaimKind::Recorded;

type Manifest = &'static [(&'static str, ClaimKind)];

const MEASURES: Manifest = &[
    ("modular-function-trivial", A),
    ("modular-function-homomorphism", A),
    ("invariant-measure-from-constant-rho", A),
    ("quotient-integral-constant-rho", A),
    ("quotient-integral-random-rho", A),
    ("radon-nikodym-cocycle", A),
];

const PROJECTIONS: Manifest = &[
    ("ph-surjective", A),
    ("ph-kernel-dimension", A),
    ("pullback-after-projection-is-convolution", A),
    ("projection-after-pullback-identity", A),
    ("th-matches-ph-for-constant-rho", A),
    ("th-l1-contraction", A),
    ("th-surjective", A),
    ("fixed-space-dimension", A),
    ("fixed-space-descent-bijective", A),
];

const RADON_NESTED: Manifest = &[
    ("projection-surjective-fibers", A),
    ("invariant-subspace-dimension", A),
    ("reconstruction-on-basis", A),
    ("reconstruction-random", A),
    ("radon-after-dual-identity", A),
    ("dual-after-radon-is-pullback", A),
    ("rank-law", A),
    ("module-property", A),
    ("support-containment", A),
    ("restricted-bijective", A),
    ("trivial-l-matches-ph", A),
    ("dual-in-invariant-subspace", A),
    ("counting-eta-scaling", A),
];

const ALGEBRA: Manifest = &[
    ("left-ideal", A),
    ("subalgebra", A),
    ("chi-idempotent", A),
    ("right-unit", A),
    ("left-unit", R),
    ("subspace-equality-restricted", A),
    ("subspace-equality-unrestricted", R),
    ("subspace-dimension-join", A),
];

const TRANSPORT: Manifest = &[
    ("witness-valid", A),
    ("theta-well-defined", A),
    ("theta-bijective", A),
    ("theta-equivariant", A),
    ("tau-permutation", A),
    ("tau-matches-theta", A),
    ("tau-inverse", A),
    ("tau-norms-preserved", A),
    ("composition-counting", A),
    ("composition-normalized", A),
    ("closed-form", A),
    ("pointwise-multiplicative", A),
    ("transport-rank", A),
    ("convolution-multiplicative", R),
];

const RADON_GENERAL: Manifest = &[
    ("well-defined", A),
    ("subspace-dimensions", A),
    ("restricted-bijective", A),
    ("restricted-dual-bijective", A),
    ("restricted-mutual-inverse", A),
    ("pullback-identity", A),
    ("evaluation-identity", A),
    ("nested-consistency", A),
];

const EXAMPLE: Manifest = &[
    ("example-reconstruction", A),
    ("example-invariance", A),
    ("example-support", A),
    ("example-f-value", A),
];

/// Claim names and kinds for a family, in report order.
pub fn manifest(family: Family) -> &'static [(&'static str, ClaimKind)] {
    match family {
        Family::Measures => MEASURES,
        Family::Projections => PROJECTIONS,
        Family::RadonNested => RADON_NESTED,
        Family::RadonGeneral => RADON_GENERAL,
        Family::Algebra => ALGEBRA,
        Family::Transport => TRANSPORT,
        Family::Example => EXAMPLE,
    }
}

struct Ctx<'a> {
    config: &'a SuiteConfig,
    group: &'a FiniteGroup,
    rng: ChaCha8Rng,
}

pub(crate) fn run_case(config: &SuiteConfig, groups: &[FiniteGroup], plan: &CasePlan) -> VerificationReport {
    let mut rec = Recorder::new(manifest(plan.family));
    let outcome = if plan.family == Family::Example {
        example(config, &mut rec)
    } else {
        let mut ctx = Ctx { config, group: &groups[plan.group], rng: case_rng(config.seed, plan.index as u64) };
        let (l, h, k) = (plan.l.as_ref(), plan.h.as_ref(), plan.k.as_ref());
        match plan.family {
            Family::Measures => measures(&mut ctx, h.expect("H"), &mut rec),
            Family::Projections => projections(&mut ctx, h.expect("H"), &mut rec),
            Family::RadonNested => radon_nested(&mut ctx, l.expect("L"), h.expect("H"), &mut rec),
            Family::Algebra => algebra(&mut ctx, l.expect("L"), h.expect("H"), &mut rec),
            Family::Transport => transport(&mut ctx, k.expect("K"), h.expect("H"), &mut rec),
            Family::RadonGeneral => radon_general(&mut ctx, k.expect("K"), h.expect("H"), &mut rec),
            Family::Example => unreachable!(),
        }
    };
    if let Err(e) = outcome {
        rec.abort(&e.to_string());
    }
    VerificationReport { case: case_id(config, groups, plan), claims: rec.finish(), timing_ms: None }
}

const CONVENTIONS: [HaarConvention; 2] = [HaarConvention::Counting, HaarConvention::Normalized];

fn sub_json(s: &Subgroup) -> serde_json::Value {
    json!(s.elements())
}

/// Indicator of a single element, as a function on `G`.
fn point(group: &FiniteGroup, x: usize) -> GroupFunction {
    GroupFunction::indicator(group, &[x])
}

fn random_group_function(ctx: &mut Ctx<'_>) -> Result<GroupFunction> {
    GroupFunction::new(ctx.group, random::vector(&mut ctx.rng, ctx.group.order()))
}

fn random_on(ctx: &mut Ctx<'_>, space: &CosetSpace) -> QuotientFunction {
    QuotientFunction::new(space, random::vector(&mut ctx.rng, space.len()))
}

/// About half the entries are zero.
fn sparse_on(ctx: &mut Ctx<'_>, space: &CosetSpace) -> QuotientFunction {
    let values = (0..space.len())
        .map(|_| if ctx.rng.gen_bool(0.5) { Rational::zero() } else { random::rational(&mut ctx.rng) })
        .collect();
    QuotientFunction::new(space, values)
}

fn random_in(ctx: &mut Ctx<'_>, sub: &InvariantSubspace, space: &CosetSpace) -> Result<QuotientFunction> {
    let coords = random::vector(&mut ctx.rng, sub.dimension());
    sub.expand(space, &coords)
}

/// A rho-function with positive random values per coset, nonconstant whenever `[G:H] > 1`.
fn random_rho(ctx: &mut Ctx<'_>, space: &CosetSpace) -> Result<RhoFunction> {
    let mut values: Vec<Rational> = (0..space.len()).map(|_| random::positive(&mut ctx.rng)).collect();
    if values.len() > 1 && values.windows(2).all(|w| w[0] == w[1]) {
        values[1] += Rational::one();
    }
    RhoFunction::from_coset_values(ctx.group, space, &values)
}

fn matrix_from(rows: usize, cols: usize, column: impl Fn(usize) -> Result<Vec<Rational>>) -> Result<Matrix> {
    let columns = (0..cols).map(column).collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(rows, &columns)
}

fn is_invertible(m: &Matrix) -> bool {
    m.rows() == m.cols() && rank(m) == m.rows()
}

fn bijective(m: &Matrix) -> Outcome {
    let ok = is_invertible(m);
    Outcome::holds(ok).detail(format!("{}x{} matrix of rank {}", m.rows(), m.cols(), rank(m)))
}

fn index_of(group: &FiniteGroup, s: &Subgroup) -> usize {
    group.order() / s.len()
}

fn measures(ctx: &mut Ctx<'_>, h: &Subgroup, rec: &mut Recorder) -> Result<()> {
    let g = ctx.group;
    let space = CosetSpace::new(g, h)?;
    let delta = modular_function(g);
    let delta_h = modular_function_of(g, h);
    rec.put(
        "modular-function-trivial",
        delta.iter().all(One::is_one) && h.elements().iter().all(|&x| delta_h[x].is_one()),
    );
    let hom = g.elements().all(|x| g.elements().all(|y| delta[g.mul(x, y)] == &delta[x] * &delta[y]));
    rec.put("modular-function-homomorphism", hom);

    let constant = RhoFunction::constant(g, &space);
    let mut invariant = Vec::new();
    for gc in CONVENTIONS {
        for hc in CONVENTIONS {
            let mu = measure_from_rho(g, &space, &constant, gc, hc)?;
            let expected = gc.point_mass(g.order()) / hc.point_mass(h.len());
            invariant.push(
                Outcome::holds(mu.is_invariant() && mu.weight(0) == &expected)
                    .detail(format!("group {gc}, subgroup {hc}")),
            );
        }
    }
    rec.put("invariant-measure-from-constant-rho", Outcome::all(invariant));

    let mut tests: Vec<GroupFunction> = g.elements().map(|x| point(g, x)).collect();
    for _ in 0..ctx.config.samples {
        tests.push(random_group_function(ctx)?);
    }
    let basis_len = g.order();
    let configured_hc = ctx.config.convention;
    let integral = |rho: &RhoFunction, fs: &[GroupFunction]| -> Result<Outcome> {
        let mut out = Vec::new();
        for gc in CONVENTIONS {
            for hc in CONVENTIONS {
                let mu = measure_from_rho(g, &space, rho, gc, hc)?;
                let configured = gc == HaarConvention::Counting && hc == configured_hc;
                let count = if configured { fs.len() } else { basis_len };
                for f in &fs[..count] {
                    let r1 = verify_quotient_integral(g, &space, f, rho, &mu, gc, hc)?;
                    let r2 = verify_rho_integral(g, &space, f, rho, &mu, gc, hc)?;
                    let o = Outcome::compare(&[Rational::zero(), Rational::zero()], &[r1, r2]);
                    out.push(if o.holds {
                        o
                    } else {
                        o.witness(json!({ "f": rationals(f.values()), "rho": rationals(rho.values()) }))
                            .detail(format!("group {gc}, subgroup {hc}"))
                    });
                }
            }
        }
        Ok(Outcome::all(out))
    };
    rec.put_result("quotient-integral-constant-rho", integral(&constant, &tests));

    let mut rhos = Vec::new();
    for _ in 0..ctx.config.rho_samples {
        rhos.push(random_rho(ctx, &space)?);
    }
    let per_rho = (basis_len + 10).min(tests.len());
    let mut outcomes = Vec::new();
    for rho in &rhos {
        outcomes.push(integral(rho, &tests[..per_rho])?);
    }
    let nonconstant = rhos.iter().filter(|r| !r.is_constant()).count();
    rec.put(
        "quotient-integral-random-rho",
        Outcome::all(outcomes).detail(format!("{} rho-functions, {nonconstant} nonconstant", rhos.len())),
    );

    let mut cocycle = true;
    let mut witness = None;
    if let Some(rho) = rhos.first() {
        let mu = measure_from_rho(g, &space, rho, HaarConvention::Counting, ctx.config.convention)?;
        'outer: for c in 0..space.len() {
            for x in g.elements() {
                // Density of μ_x against μ at the point c, from two representatives.
                let lambda = radon_nikodym_ratio(g, rho, x, space.rep(c));
                let consistent = space.members(c).iter().all(|&y| radon_nikodym_ratio(g, rho, x, y) == lambda);
                let density = mu.translate_weight(g, &space, x, c) == &lambda * mu.weight(c);
                let chain = g.elements().all(|y| {
                    let yc = space.act(g, y, c);
                    radon_nikodym_ratio(g, rho, g.mul(x, y), space.rep(c))
                        == radon_nikodym_ratio(g, rho, x, space.rep(yc)) * radon_nikodym_ratio(g, rho, y, space.rep(c))
                });
                if !(consistent && density && chain) {
                    cocycle = false;
                    witness = Some(json!({ "x": x, "coset": c, "rho": rationals(rho.values()) }));
                    break 'outer;
                }
            }
        }
    }
    rec.put("radon-nikodym-cocycle", Outcome::with_witness(cocycle, witness));
    Ok(())
}

fn ph_matrix(g: &FiniteGroup, space: &CosetSpace, conv: HaarConvention) -> Result<Matrix> {
    matrix_from(space.len(), g.order(), |x| Ok(project_ph(g, space, &point(g, x), conv)?.into_values()))
}

fn th_matrix(g: &FiniteGroup, space: &CosetSpace, rho: &RhoFunction, conv: HaarConvention) -> Result<Matrix> {
    matrix_from(space.len(), g.order(), |x| Ok(project_th(g, space, &point(g, x), rho, conv)?.into_values()))
}

/// `T_S` with `ρ ≡ 1` on `C(G:S)`, from the coset-indicator basis to points of `G/S`.
fn fixed_descent(g: &FiniteGroup, s: &Subgroup, conv: HaarConvention) -> Result<Matrix> {
    let (points, fixed) = fixed_space_on_group(g, s)?;
    let space = CosetSpace::new(g, s)?;
    let rho = RhoFunction::constant(g, &space);
    let basis = fixed.basis(&points);
    matrix_from(space.len(), basis.len(), |i| {
        let f = GroupFunction::new(g, basis[i].values().to_vec())?;
        Ok(project_th(g, &space, &f, &rho, conv)?.into_values())
    })
}

fn projections(ctx: &mut Ctx<'_>, h: &Subgroup, rec: &mut Recorder) -> Result<()> {
    let g = ctx.group;
    let space = CosetSpace::new(g, h)?;
    let conv = ctx.config.convention;
    let index = index_of(g, h);
    let ph = ph_matrix(g, &space, conv)?;
    let r = rank(&ph);
    rec.put("ph-surjective", Outcome::holds(r == index).detail(format!("rank {r}, [G:H] = {index}")));
    let nullity = g.order() - r;
    rec.put(
        "ph-kernel-dimension",
        Outcome::holds(nullity == g.order() - index && (nullity > 0) == (h.len() > 1))
            .detail(format!("kernel dimension {nullity}")),
    );

    let mut tests: Vec<GroupFunction> = g.elements().map(|x| point(g, x)).collect();
    for _ in 0..ctx.config.samples {
        tests.push(random_group_function(ctx)?);
    }
    let mut conv_checks = Vec::new();
    for c in CONVENTIONS {
        let mu = subgroup_measure(g, h, c);
        for f in &tests {
            let lhs = pullback_to_group(&space, &project_ph(g, &space, f, c)?)?;
            let rhs = convolve_measure(g, f, &mu)?;
            conv_checks.push(Outcome::compare(rhs.values(), lhs.values()));
        }
    }
    rec.put("pullback-after-projection-is-convolution", Outcome::all(conv_checks));

    let mut identity = Vec::new();
    for c in CONVENTIONS {
        let m = matrix_from(space.len(), space.len(), |j| {
            let phi = QuotientFunction::indicator(&space, &[j]);
            Ok(project_ph(g, &space, &pullback_to_group(&space, &phi)?, c)?.into_values())
        })?;
        let expected = match c {
            HaarConvention::Normalized => Matrix::identity(space.len()),
            HaarConvention::Counting => Matrix::identity(space.len()).scale(&int(h.len() as i64)),
        };
        identity.push(Outcome::compare(expected.entries(), m.entries()).detail(format!("{c} convention")));
    }
    rec.put("projection-after-pullback-identity", Outcome::all(identity));

    let constant = RhoFunction::constant(g, &space);
    let mut th_ph = Vec::new();
    for c in CONVENTIONS {
        let th = th_matrix(g, &space, &constant, c)?;
        th_ph.push(Outcome::compare(ph_matrix(g, &space, c)?.entries(), th.entries()));
    }
    rec.put("th-matches-ph-for-constant-rho", Outcome::all(th_ph));

    let random_rho = random_rho(ctx, &space)?;
    let mut nonneg: Vec<GroupFunction> = g.elements().map(|x| point(g, x)).collect();
    for _ in 0..ctx.config.samples {
        let values = (0..g.order()).map(|_| random::nonnegative(&mut ctx.rng)).collect();
        nonneg.push(GroupFunction::new(g, values)?);
    }
    let haar = HaarMeasure::on_group(g, HaarConvention::Counting);
    let mut contraction = true;
    let mut witness = None;
    for rho in [&constant, &random_rho] {
        let mu = measure_from_rho(g, &space, rho, HaarConvention::Counting, conv)?;
        for f in &nonneg {
            let t = project_th(g, &space, f, rho, conv)?;
            let abs: Vec<Rational> = t.values().iter().map(Signed::abs).collect();
            let lhs = mu.integrate(&abs)?;
            let f_abs: Vec<Rational> = f.values().iter().map(Signed::abs).collect();
            let rhs = haar.integrate(&f_abs);
            if lhs > rhs {
                contraction = false;
                witness.get_or_insert_with(|| {
                    json!({ "f": rationals(f.values()), "rho": rationals(rho.values()), "norm_tf": lhs.to_string(), "norm_f": rhs.to_string() })
                });
            }
        }
    }
    rec.put("th-l1-contraction", Outcome::with_witness(contraction, witness));

    let th = th_matrix(g, &space, &random_rho, conv)?;
    let tr = rank(&th);
    rec.put("th-surjective", Outcome::holds(tr == index).detail(format!("rank {tr}, [G:H] = {index}")));

    let (_, fixed) = fixed_space_on_group(g, h)?;
    rec.put(
        "fixed-space-dimension",
        Outcome::holds(fixed.dimension() == index).detail(format!("dimension {}", fixed.dimension())),
    );
    let mut desc = Vec::new();
    for c in CONVENTIONS {
        desc.push(bijective(&fixed_descent(g, h, c)?));
    }
    rec.put("fixed-space-descent-bijective", Outcome::all(desc));
    Ok(())
}

fn radon_nested(ctx: &mut Ctx<'_>, l: &Subgroup, h: &Subgroup, rec: &mut Recorder) -> Result<()> {
    if !l.is_subgroup_of(h) {
        rec.precondition_violated(&format!("L = {l} is not contained in H = {h}"));
        return Ok(());
    }
    let g = ctx.group;
    let radon = NestedRadon::new(g, l, h)?;
    let (fine, coarse) = (radon.fine(), radon.coarse());
    let seq = Execution::Sequential;
    let index_h = coarse.len();
    let index_l = fine.len();
    let fiber_size = h.len() / l.len();

    let mut counts = vec![0usize; index_h];
    for &c in radon.projection() {
        counts[c] += 1;
    }
    rec.put(
        "projection-surjective-fibers",
        Outcome::holds(counts.iter().all(|&n| n == fiber_size)).witness(json!({ "fiber_sizes": counts })),
    );

    let sub = radon.invariant_subspace();
    let pulled: Result<Vec<Vec<usize>>> = (0..index_h)
        .map(|c| Ok(radon.reconstruct(&QuotientFunction::indicator(coarse, &[c]))?.support()))
        .collect();
    let pulled = pulled?;
    let mut blocks = sub.blocks().to_vec();
    let mut pulled_sorted = pulled.clone();
    blocks.sort();
    pulled_sorted.sort();
    rec.put(
        "invariant-subspace-dimension",
        Outcome::holds(sub.dimension() == index_h && blocks == pulled_sorted)
            .detail(format!("dimension {}, [G:H] = {index_h}", sub.dimension())),
    );

    let basis = sub.basis(fine);
    let on_basis = basis
        .iter()
        .map(|b| Ok(Outcome::compare(b.values(), radon.reconstruct(&radon.apply(b)?)?.values())))
        .collect::<Result<Vec<_>>>()?;
    rec.put("reconstruction-on-basis", Outcome::all(on_basis));

    let mut random_checks = Vec::new();
    for _ in 0..ctx.config.samples {
        let f = random_in(ctx, &sub, fine)?;
        random_checks.push(Outcome::compare(f.values(), radon.reconstruct(&radon.apply(&f)?)?.values()));
    }
    rec.put("reconstruction-random", Outcome::all(random_checks));

    let rm = radon.matrix(seq)?.matrix;
    let dm = radon.dual_matrix(seq)?.matrix;
    let rrs = rm.try_mul(&dm)?;
    rec.put("radon-after-dual-identity", Outcome::compare(Matrix::identity(index_h).entries(), rrs.entries()));

    let rsr = dm.try_mul(&rm)?;
    let mut composition = Vec::new();
    for _ in 0..ctx.config.samples {
        let f = random_on(ctx, fine);
        let via_matrix = rsr.apply(f.values())?;
        let direct = pullback(fine, coarse, &radon.apply(&f)?)?;
        composition.push(Outcome::compare(direct.values(), &via_matrix));
    }
    rec.put("dual-after-radon-is-pullback", Outcome::all(composition));

    let r = rank(&rm);
    let kernel = nullspace(&rm);
    let kernel_ok = kernel.iter().all(|v| rm.apply(v).is_ok_and(|w| w.iter().all(Zero::is_zero)))
        && (kernel.is_empty() || rank(&Matrix::from_columns(index_l, &kernel)?) == kernel.len());
    rec.put(
        "rank-law",
        Outcome::holds(r == index_h && kernel.len() == index_l - index_h && kernel_ok)
            .detail(format!("rank {r}, kernel dimension {}", kernel.len())),
    );

    let mut module = Vec::new();
    let mut support = true;
    let mut support_witness = None;
    for _ in 0..ctx.config.samples {
        let phi = random_on(ctx, coarse);
        let f = random_on(ctx, fine);
        let lhs = radon.apply(&pullback(fine, coarse, &phi)?.pointwise_mul(&f)?)?;
        let rhs = phi.pointwise_mul(&radon.apply(&f)?)?;
        module.push(Outcome::compare(rhs.values(), lhs.values()));

        let s = sparse_on(ctx, fine);
        let image: Vec<usize> = s.support().iter().map(|&c| radon.projection()[c]).collect();
        let rs = radon.apply(&s)?;
        if !rs.support().iter().all(|c| image.contains(c)) {
            support = false;
            support_witness.get_or_insert_with(|| json!({ "f": rationals(s.values()), "rf": rationals(rs.values()) }));
        }
    }
    rec.put("module-property", Outcome::all(module));
    rec.put("support-containment", Outcome::with_witness(support, support_witness));

    let restricted = radon.restricted_matrix()?;
    let inverse = matrix_from(sub.dimension(), index_h, |c| {
        sub.coordinates(&radon.reconstruct(&QuotientFunction::indicator(coarse, &[c]))?)
    })?;
    let two_sided = is_invertible(&restricted)
        && restricted.try_mul(&inverse)?.is_identity()
        && inverse.try_mul(&restricted)?.is_identity();
    rec.put(
        "restricted-bijective",
        Outcome::holds(two_sided).detail(format!("{}x{} restricted matrix", restricted.rows(), restricted.cols())),
    );

    if l.is_trivial() {
        let fiber = radon.fiber();
        let counting = NestedRadon::with_measure(g, l, h, QuotientMeasure::invariant(fiber, HaarConvention::Counting))?;
        let mut checks = Vec::new();
        for x in g.elements() {
            let f = point(g, x);
            let via_radon = counting.apply(&as_point_function(fine, &f)?)?;
            let via_ph = project_ph(g, coarse, &f, HaarConvention::Counting)?;
            checks.push(Outcome::compare(via_ph.values(), via_radon.values()));
        }
        rec.put("trivial-l-matches-ph", Outcome::all(checks));
    } else {
        rec.put("trivial-l-matches-ph", Outcome::holds(true).detail("not applicable: L is nontrivial"));
    }

    let mut dual_in = true;
    for _ in 0..ctx.config.samples {
        let phi = random_on(ctx, coarse);
        dual_in &= membership(g, fine, h, &radon.dual(&phi)?)?;
    }
    rec.put("dual-in-invariant-subspace", dual_in);

    let counting =
        NestedRadon::with_measure(g, l, h, QuotientMeasure::invariant(radon.fiber(), HaarConvention::Counting))?;
    let scaled = rm.scale(&int(fiber_size as i64));
    rec.put(
        "counting-eta-scaling",
        Outcome::compare(scaled.entries(), counting.matrix(seq)?.matrix.entries()).detail(format!("[H:L] = {fiber_size}")),
    );
    Ok(())
}

fn algebra(ctx: &mut Ctx<'_>, l: &Subgroup, h: &Subgroup, rec: &mut Recorder) -> Result<()> {
    if !l.is_subgroup_of(h) {
        rec.precondition_violated(&format!("L = {l} is not contained in H = {h}"));
        return Ok(());
    }
    let g = ctx.group;
    let fine = CosetSpace::new(g, l)?;
    let sub = invariant_subspace(g, &fine, h);
    let c = Rational::new(1.into(), h.len().into());
    let chi = chi_hl(&fine, h)?;
    let pairs = ctx.config.samples.div_ceil(10);

    let mut ideal = true;
    let mut closed = true;
    for _ in 0..pairs {
        let f = random_on(ctx, &fine);
        let a = random_in(ctx, &sub, &fine)?;
        let b = random_in(ctx, &sub, &fine)?;
        ideal &= membership(g, &fine, h, &convolve(g, &fine, &f, &a, &c)?)?;
        closed &= membership(g, &fine, h, &convolve(g, &fine, &a, &b, &c)?)?;
    }
    rec.put("left-ideal", ideal);
    rec.put("subalgebra", closed);
    rec.put("chi-idempotent", Outcome::compare(chi.values(), convolve(g, &fine, &chi, &chi, &c)?.values()));

    let basis = sub.basis(&fine);
    let mut right = Vec::new();
    let mut left = Vec::new();
    for b in &basis {
        right.push(Outcome::compare(b.values(), convolve(g, &fine, b, &chi, &c)?.values()));
        let lhs = convolve(g, &fine, &chi, b, &c)?;
        let o = Outcome::compare(b.values(), lhs.values());
        left.push(if o.holds {
            o
        } else {
            o.witness(json!({ "f": rationals(b.values()), "chi_star_f": rationals(lhs.values()) }))
                .detail(format!("left unit fails for the block indicator of {:?}", b.support()))
        });
    }
    rec.put("right-unit", Outcome::all(right));
    rec.put("left-unit", Outcome::all(left));

    let subgroups = g.subgroups();
    let mut restricted = true;
    let mut restricted_witness = None;
    let mut unrestricted = true;
    let mut unrestricted_witness = None;
    let mut join = true;
    let mut join_witness = None;
    for k in &subgroups {
        let other = invariant_subspace(g, &fine, k);
        let equal = subspace_equal(&sub, &other)?;
        let iff = equal == (k == h);
        if l.is_subgroup_of(k) && !iff && restricted {
            restricted = false;
            restricted_witness = Some(json!({ "K": sub_json(k), "equal": equal }));
        }
        if !iff && unrestricted {
            unrestricted = false;
            unrestricted_witness = Some(json!({
                "L": sub_json(l),
                "H": sub_json(h),
                "K": sub_json(k),
                "equal": equal,
                "partition": sub.blocks(),
            }));
        }
        let expected = index_of(g, &k.join(g, l));
        if other.dimension() != expected && join {
            join = false;
            join_witness = Some(json!({ "K": sub_json(k), "dimension": other.dimension(), "expected": expected }));
        }
    }
    rec.put("subspace-equality-restricted", Outcome::with_witness(restricted, restricted_witness));
    let mut o = Outcome::with_witness(unrestricted, unrestricted_witness);
    if !unrestricted {
        o = o.detail("C(G/L:H) = C(G/L:K) for some K != H with L not contained in K");
    }
    rec.put("subspace-equality-unrestricted", o);
    rec.put("subspace-dimension-join", Outcome::with_witness(join, join_witness));
    Ok(())
}

fn transport(ctx: &mut Ctx<'_>, k: &Subgroup, h: &Subgroup, rec: &mut Recorder) -> Result<()> {
    let g = ctx.group;
    let Some(witness) = ConjugacyWitness::find(g, k, h) else {
        rec.precondition_violated(&format!("K = {k} and H = {h} are not conjugate"));
        return Ok(());
    };
    let g0 = witness.g0();
    let back = conjugate_subgroup(g, h, g.inv(g0));
    rec.put(
        "witness-valid",
        Outcome::holds(&conjugate_subgroup(g, k, g0) == h && &back == k).witness(json!({ "g0": g0 })),
    );
    let t = Transport::new(g, witness)?;
    let (ks, hs) = (t.k_space(), t.h_space());
    let n = ks.len();

    rec.put("theta-well-defined", (0..n).all(|c| t.theta_checked(c) == Some(t.theta(c))));
    rec.put(
        "theta-bijective",
        n == hs.len() && (0..n).all(|c| t.theta_inverse(t.theta(c)) == c && t.theta(t.theta_inverse(c)) == c),
    );
    rec.put(
        "theta-equivariant",
        g.elements().all(|x| (0..n).all(|c| t.theta(ks.act(g, x, c)) == hs.act(g, x, t.theta(c)))),
    );
    rec.put("tau-permutation", t.tau_matrix()?.is_permutation());

    let (points, fixed_k) = fixed_space_on_group(g, k)?;
    let mut inputs: Vec<GroupFunction> = fixed_k
        .basis(&points)
        .iter()
        .map(|b| GroupFunction::new(g, b.values().to_vec()))
        .collect::<Result<_>>()?;
    for _ in 0..ctx.config.samples {
        let f = random_in(ctx, &fixed_k, &points)?;
        inputs.push(GroupFunction::new(g, f.into_values())?);
    }
    let mut via_theta = Vec::new();
    let mut inverse = Vec::new();
    let mut norms = true;
    for f in &inputs {
        let tf = t.tau(f)?;
        via_theta.push(Outcome::compare(t.tau_via_theta(f)?.values(), tf.values()));
        inverse.push(Outcome::compare(f.values(), t.tau_inverse(&tf)?.values()));
        norms &= tf.sup_norm() == f.sup_norm() && tf.l1_norm() == f.l1_norm() && tf.is_right_invariant(g, h);
    }
    rec.put("tau-matches-theta", Outcome::all(via_theta));
    rec.put("tau-inverse", Outcome::all(inverse));
    rec.put("tau-norms-preserved", Outcome::holds(norms).detail("sup norm and counting L1 norm"));

    let direct = t.matrix(Execution::Sequential)?.matrix;
    for (name, conv) in [("composition-counting", HaarConvention::Counting), ("composition-normalized", HaarConvention::Normalized)] {
        rec.put_result(name, t.composed_matrix(conv).map(|m| Outcome::compare(direct.entries(), m.entries())));
    }

    let g0_inv = g.inv(g0);
    let mut closed = true;
    let mut multiplicative = Vec::new();
    for _ in 0..ctx.config.samples {
        let phi = random_on(ctx, ks);
        let psi = random_on(ctx, ks);
        let tphi = t.apply(&phi)?;
        closed &= g.elements().all(|x| tphi.at(hs.coset_of(x)) == phi.at(ks.coset_of(g.mul(x, g0_inv))));
        let lhs = t.apply(&phi.pointwise_mul(&psi)?)?;
        let rhs = tphi.pointwise_mul(&t.apply(&psi)?)?;
        multiplicative.push(Outcome::compare(rhs.values(), lhs.values()));
    }
    rec.put("closed-form", closed);
    rec.put("pointwise-multiplicative", Outcome::all(multiplicative));
    let r = rank(&direct);
    rec.put("transport-rank", Outcome::holds(r == hs.len() && r == n).detail(format!("rank {r}")));

    let one = Rational::one();
    let mut conv_checks = Vec::new();
    for _ in 0..ctx.config.samples.div_ceil(10) {
        let phi = random_on(ctx, ks);
        let psi = random_on(ctx, ks);
        let lhs = t.apply(&convolve(g, ks, &phi, &psi, &one)?)?;
        let rhs = convolve(g, hs, &t.apply(&phi)?, &t.apply(&psi)?, &one)?;
        conv_checks.push(Outcome::compare(lhs.values(), rhs.values()));
    }
    rec.put("convolution-multiplicative", Outcome::all(conv_checks).detail("lift convolution with counting measure"));
    Ok(())
}

fn radon_general(ctx: &mut Ctx<'_>, k: &Subgroup, h: &Subgroup, rec: &mut Recorder) -> Result<()> {
    let g = ctx.group;
    let radon = GeneralRadon::new(g, k, h)?;
    let seq = Execution::Sequential;
    let (ks, hs, ls) = (radon.k_space(), radon.h_space(), radon.l_space());
    let m = radon.matrix(seq);
    let dm = radon.dual_matrix(seq);
    let well_defined = match (&m, &dm) {
        (Ok(_), Ok(_)) => Outcome::holds(true),
        (Err(Error::NotWellDefined { coset }), _) | (_, Err(Error::NotWellDefined { coset })) => {
            Outcome::holds(false).witness(json!({ "coset": coset }))
        }
        (Err(e), _) | (_, Err(e)) => return Err(e.clone()),
    };
    rec.put("well-defined", well_defined);
    let (m, dm) = (m?.matrix, dm?.matrix);

    let domain = radon.domain_subspace();
    let range = radon.range_subspace();
    let expected = index_of(g, &h.join(g, k));
    rec.put(
        "subspace-dimensions",
        Outcome::holds(domain.dimension() == expected && range.dimension() == expected).detail(format!(
            "dim C(G/K:H) = {}, dim C(G/H:K) = {}, [G:<H,K>] = {expected}",
            domain.dimension(),
            range.dimension()
        )),
    );
    let restricted = radon.restricted_matrix()?;
    let restricted_dual = radon.restricted_dual_matrix()?;
    rec.put("restricted-bijective", bijective(&restricted));
    rec.put("restricted-dual-bijective", bijective(&restricted_dual));
    rec.put(
        "restricted-mutual-inverse",
        restricted_dual.try_mul(&restricted)?.is_identity() && restricted.try_mul(&restricted_dual)?.is_identity(),
    );

    // Both identities are linear in f, so the basis already covers them; random inputs are a spot check.
    let spot = ctx.config.samples.div_ceil(10);
    let mut inputs = domain.basis(ks);
    for _ in 0..spot {
        inputs.push(random_in(ctx, &domain, ks)?);
    }
    let mut pull = Vec::new();
    let mut eval = true;
    for f in &inputs {
        let rf = radon.apply(f)?;
        pull.push(Outcome::compare(pullback(ls, ks, f)?.values(), pullback(ls, hs, &rf)?.values()));
        eval &= g.elements().all(|x| rf.at(hs.coset_of(x)) == f.at(ks.coset_of(x)));
    }
    let mut duals = range.basis(hs);
    for _ in 0..spot {
        duals.push(random_in(ctx, &range, hs)?);
    }
    for phi in &duals {
        let rphi = radon.dual(phi)?;
        eval &= g.elements().all(|x| rphi.at(ks.coset_of(x)) == phi.at(hs.coset_of(x)));
    }
    rec.put("pullback-identity", Outcome::all(pull));
    rec.put("evaluation-identity", eval);

    let mut nested = Vec::new();
    let mut notes = Vec::new();
    if k.is_subgroup_of(h) {
        let n = NestedRadon::new(g, k, h)?.matrix(seq)?.matrix;
        nested.push(Outcome::compare(n.entries(), m.entries()));
        notes.push("K in H: matches the nested transform");
    }
    if h.is_subgroup_of(k) {
        let n = NestedRadon::new(g, h, k)?.matrix(seq)?.matrix;
        nested.push(Outcome::compare(n.entries(), dm.entries()));
        notes.push("H in K: dual matches the nested transform");
    }
    if k == h {
        nested.push(Outcome::holds(m.is_identity() && dm.is_identity()));
        notes.push("K = H: identity");
    }
    let detail = if notes.is_empty() { "not applicable: H and K are not nested".to_string() } else { notes.join("; ") };
    rec.put("nested-consistency", Outcome::all(nested).detail(detail));
    Ok(())
}

fn example(config: &SuiteConfig, rec: &mut Recorder) -> Result<()> {
    let report = verify_example(&standard_grid(100, 8), config.tolerance, Execution::Sequential)?;
    rec.put(
        "example-reconstruction",
        Outcome::holds(report.max_deviation < config.tolerance)
            .detail(format!("{} samples, max deviation {:e}", report.samples, report.max_deviation)),
    );
    rec.put(
        "example-invariance",
        Outcome::holds(report.max_invariance_deviation < config.tolerance)
            .detail(format!("max deviation {:e}", report.max_invariance_deviation)),
    );
    rec.put(
        "example-support",
        Outcome::holds(report.support_violations == 0).detail(format!("{} violations", report.support_violations)),
    );
    let value = example_f(&tent_phi(), Complex64::new(0.5, 0.0))?;
    rec.put("example-f-value", Outcome::holds(value == 1.0).detail(format!("f(0.5) = {value}")));
    Ok(())
}
