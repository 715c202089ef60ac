use std::fmt::Display;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Claim, SuiteConfig, SuiteResult};
use crate::ddf::DiscreteDDF;
use crate::delta::{check_dominance_delta, check_scaling_law, check_specialization, check_triangle_axioms, DeltaError, DeltaOp};
use crate::generate::{
    corrupt, dirac_space, distinct_sum_weights, non_metric_space, random_ddf, random_ddfs, random_metric,
    random_quadruples, random_ultrametric, rng_for,
};
use crate::hausdorff::{check_lambda_theorem, check_restriction_measure, enumerate_measurable, HausdorffContext, TheoremStatus};
use crate::measures::{
    aggregate, build_dirac, build_scaled_profile, check_characterization, classify, transform, FiniteSetFunction,
    MeasureError, NumericSetFunction, PointwiseAggregation, TransformMode,
};
use crate::oracle::check_oracle_agreement;
use crate::ppm::{
    check_semilattice, check_translation_invariance, from_submeasure, product_space, FinitePpMSpace, Oplus,
    PseudoMetric, PseudoMetricFamily, EXHAUSTIVE_TRIPLES_LIMIT, SAMPLED_TRIPLES,
};
use crate::report::Check;
use crate::scalar::{check_lop_laws, check_pointwise_order, check_scalar_dominance, check_tnorm_laws, LOp, ScalarOp};
use crate::subset::Universe;

pub const SUITE_NAMES: [&str; 12] = [
    "ddf",
    "scalar",
    "triangle-axioms",
    "dominance",
    "measures",
    "characterization",
    "constructions",
    "ppm",
    "semilattice",
    "product",
    "hausdorff",
    "measurable",
];

/// Universe size for the pseudo-metric suites: `2^4 = 16` points.
const PPM_UNIVERSE: usize = 4;
const INSTANCES: usize = 10;
const CONSTRUCTION_INSTANCES: usize = 5;
const PSEUDO_METRICS: usize = 5;

pub fn suite_anchor(name: &str) -> &'static str {
    match name {
        "ddf" => "composition laws of tau_T, Pi_T, tau_{K_2,M} and convolution on Dirac DDFs; exact operations agree with brute-force oracles",
        "scalar" => "laws of the basic t-norms, their pointwise order, and dominance of AM over W",
        "triangle-axioms" => "tau_T, Pi_T and convolution are triangle functions; tau_T and Pi_T are instances of tau_{L,A}",
        "dominance" => "Pi_M dominates each triangle function",
        "measures" => "eps_mu of an additive mu is a tau_T-measure but not a Pi_M-measure; m ⊙ Phi is a tau_{+,M}-measure but need not be a tau_{+,Pi}-measure",
        "characterization" => "gamma is a tau-measure iff tau(gamma(E ∪ F), gamma(E ∩ F)) = tau(gamma(E), gamma(F)) for all E, F",
        "constructions" => "scaling, tau-combination, theta-combination and Pi_alpha aggregation preserve measures and submeasures",
        "ppm" => "an antimonotone tau-submeasure generates a translation invariant probabilistic pseudo-metric on the power set",
        "semilattice" => "generated pseudo-metrics form a bounded join semilattice under ⊕ and ⊕_theta is monotone",
        "product" => "the Pi_alpha product of probabilistic pseudo-metric spaces is a probabilistic pseudo-metric space",
        "hausdorff" => "Lambda^H(∅) = eps_0, Lambda^H is antimonotone and Lambda^H(E ∪ F) <= Pi_M(Lambda^H(E), Lambda^H(F))",
        "measurable" => "S_tau contains ∅ and Omega, is closed under complements and unions, and Lambda^H restricted to S_tau is a tau-measure",
        _ => "",
    }
}

type R<T> = Result<T, String>;

fn s<E: Display>(e: E) -> String {
    e.to_string()
}

pub(super) fn run(name: &str, cfg: &SuiteConfig) -> SuiteResult {
    let claims = match name {
        "ddf" => ddf(cfg),
        "scalar" => scalar(cfg),
        "triangle-axioms" => triangle_axioms(cfg),
        "dominance" => dominance(cfg),
        "measures" => per_size(cfg, measures),
        "characterization" => per_size(cfg, characterization),
        "constructions" => per_size(cfg, constructions),
        "ppm" => ppm(cfg),
        "semilattice" => semilattice(cfg),
        "product" => product(cfg),
        "hausdorff" => per_size(cfg, hausdorff),
        "measurable" => per_size(cfg, measurable),
        other => Err(format!("unknown suite {other}")),
    };
    let claims = claims.unwrap_or_else(|e| vec![Claim::new("suite completed", vec![Check::failed("suite aborted", e)])]);
    SuiteResult {
        suite: name.to_string(),
        anchor: suite_anchor(name).to_string(),
        passed: claims.iter().all(|c| c.passed),
        claims,
    }
}

fn per_size(cfg: &SuiteConfig, f: fn(&SuiteConfig, usize) -> R<Vec<Claim>>) -> R<Vec<Claim>> {
    let mut out = Vec::new();
    for &n in &cfg.universe_sizes {
        out.extend(f(cfg, n)?);
    }
    Ok(out)
}

fn eps(a: f64) -> DiscreteDDF {
    DiscreteDDF::epsilon(a).expect("non-negative location")
}

fn k(alpha: f64) -> LOp {
    LOp::k_alpha(alpha).expect("alpha >= 1")
}

const TNORMS: [ScalarOp; 3] = [ScalarOp::Minimum, ScalarOp::Product, ScalarOp::Lukasiewicz];

fn tau_plus(a: ScalarOp) -> DeltaOp {
    DeltaOp::tau_la(LOp::Plus, a)
}

fn dirac_law(op: &DeltaOp, pairs: &[(f64, f64)], want: fn(f64, f64) -> f64) -> Check {
    let mut c = Check::new(format!("{op} on Dirac pairs"));
    for &(a, b) in pairs {
        let w = want(a, b);
        let got = op.apply(&eps(a), &eps(b));
        let ok = match &got {
            Ok(r) => r.dirac_location().is_some_and(|x| (x - w).abs() <= 1e-9),
            Err(_) => false,
        };
        c.record(ok, || format!("a={a}, b={b}: got {got:?}, want eps({w})"));
    }
    c
}

fn ddf(cfg: &SuiteConfig) -> R<Vec<Claim>> {
    let mut rng = rng_for(cfg.seed, "ddf/dirac");
    let pairs: Vec<(f64, f64)> = (0..100)
        .map(|_| (rng.gen_range(0.0..=10.0), rng.gen_range(0.0..=10.0)))
        .collect();
    let mut laws: Vec<Check> = TNORMS
        .iter()
        .map(|t| dirac_law(&DeltaOp::tau_t(t.clone()), &pairs, |a, b| a + b))
        .collect();
    for top in TNORMS.iter().cloned().chain([ScalarOp::Drastic]) {
        laws.push(dirac_law(&DeltaOp::pi_top(top), &pairs, f64::max));
    }
    laws.push(dirac_law(&DeltaOp::tau_la(k(2.0), ScalarOp::Minimum), &pairs, f64::hypot));
    laws.push(dirac_law(&DeltaOp::Convolution, &pairs, |a, b| a + b));

    let mut rng = rng_for(cfg.seed, "ddf/oracle");
    let inputs: Vec<(DiscreteDDF, DiscreteDDF, Vec<f64>)> = (0..20)
        .map(|_| {
            let g = random_ddf(&mut rng, 4, 5.0, 0.2);
            let h = random_ddf(&mut rng, 4, 5.0, 0.2);
            let xs = (0..50).map(|_| rng.gen_range(0.0..12.0)).collect();
            (g, h, xs)
        })
        .collect();
    let mut ops = Vec::new();
    for l in [k(1.0), k(2.0), LOp::KInfinity] {
        for a in TNORMS {
            ops.push(DeltaOp::tau_la(l.clone(), a));
        }
        ops.push(DeltaOp::rho_lq(l, ScalarOp::Lukasiewicz));
    }
    let oracle: Vec<Check> = ops
        .par_iter()
        .map(|op| {
            let mut c = Check::new(format!("{op} against the grid oracle"));
            for (g, h, xs) in &inputs {
                let r = op.apply(g, h).map_err(s)?;
                c.absorb(check_oracle_agreement(op, g, h, &r, xs, cfg.oracle_step, cfg.tolerance));
            }
            Ok(c)
        })
        .collect::<R<_>>()?;

    let basics = vec![
        Check::single("grid_sample(eps_1, 2, 1)", eps(1.0).grid_sample(2.0, 1.0) == Ok(vec![(0.0, 0.0), (1.0, 0.0), (2.0, 1.0)]), || {
            format!("{:?}", eps(1.0).grid_sample(2.0, 1.0))
        }),
        Check::single("eps_3 <= eps_1 and not eps_1 <= eps_3", eps(3.0).leq(&eps(1.0), 0.0) && !eps(1.0).leq(&eps(3.0), 0.0), String::new),
    ];
    Ok(vec![
        Claim::new("Dirac composition laws", laws),
        Claim::new(
            format!("exact operations agree with the brute-force oracle (step {})", cfg.oracle_step),
            oracle,
        ),
        Claim::new("sampling and order on step functions", basics),
    ])
}

fn scalar(cfg: &SuiteConfig) -> R<Vec<Claim>> {
    let mut laws = Vec::new();
    for t in TNORMS.iter().chain([&ScalarOp::Drastic]) {
        for c in check_tnorm_laws(t, 0.02).map_err(s)? {
            let name = format!("{t}: {}", c.name);
            laws.push(c.renamed(name));
        }
    }
    let chain = [ScalarOp::Drastic, ScalarOp::Lukasiewicz, ScalarOp::Product, ScalarOp::Minimum];
    let order = chain
        .windows(2)
        .map(|w| check_pointwise_order(&w[0], &w[1], 0.01))
        .collect::<Result<Vec<_>, _>>()
        .map_err(s)?;
    let rep = check_scalar_dominance(&ScalarOp::ArithmeticMean, &ScalarOp::Lukasiewicz, 0.01).map_err(s)?;
    let dom = Check {
        name: "AM >> W on the 0.01 grid".into(),
        passed: rep.dominates,
        checked: rep.points_checked,
        failures: rep.violations,
        witness: (!rep.dominates).then(|| format!("worst quadruple {:?}, margin {}", rep.worst, rep.min_margin)),
    };
    let samples = [0.0, 0.25, 1.0, 2.5, 7.0];
    let mut lops = Vec::new();
    for l in [LOp::Plus, k(2.0), LOp::KInfinity] {
        for c in check_lop_laws(&l, &samples, cfg.tolerance) {
            let name = format!("{l}: {}", c.name);
            lops.push(c.renamed(name));
        }
    }
    let mut claims = vec![
        Claim::new("M, Pi, W and D are t-norms", laws),
        Claim::new("D <= W <= Pi <= M", order),
        Claim::new("AM dominates W", vec![dom]).with_notes(vec![format!("minimum margin {}", rep.min_margin)]),
        Claim::new("laws of the L operations +, K_2 and K_inf", lops),
    ];
    if cfg.negative_tests {
        let bad = check_scalar_dominance(&ScalarOp::Product, &ScalarOp::Minimum, 0.1).map_err(s)?;
        claims.push(Claim::detector(
            "the dominance scan refutes Pi >> M",
            vec![Check::single("violation found", !bad.dominates, String::new)],
        )
        .with_notes(vec![format!("witness {:?}", bad.worst)]));
    }
    Ok(claims)
}

fn triangle_axioms(cfg: &SuiteConfig) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let mut rng = rng_for(cfg.seed, "triangle-axioms");
    let samples = random_ddfs(&mut rng, 20, 4, 5.0);
    let mut claims: Vec<Claim> = cfg
        .delta_ops
        .par_iter()
        .map(|op| Claim::new(format!("{op} is a triangle function"), check_triangle_axioms(op, &samples, tol)))
        .collect();
    let few = &samples[..8];
    let specialized: Vec<Check> = TNORMS.iter().flat_map(|t| check_specialization(t, few, tol)).collect();
    claims.push(Claim::new("tau_T = tau_{+,T} and Pi_T = tau_{K_inf,T}", specialized));
    let constants = [0.5, 1.0, 2.0, 3.0];
    claims.push(Claim::new(
        "tau_{L,M}(c1 ⊙ H, c2 ⊙ H) = L(c1, c2) ⊙ H",
        [LOp::Plus, k(2.0), LOp::KInfinity]
            .iter()
            .map(|l| check_scaling_law(l, &constants, few, tol))
            .collect(),
    ));
    if cfg.negative_tests {
        let op = DeltaOp::tau_la(k(1.0), ScalarOp::Drastic);
        let (g, h) = samples
            .iter()
            .zip(&samples[1..])
            .find(|(g, h)| !(g.is_crisp() && h.is_crisp()))
            .ok_or("no non-crisp sample")?;
        let rejected = matches!(op.apply(g, h), Err(DeltaError::NonLeftContinuousScalar(_)));
        claims.push(Claim::detector(
            "the exact algorithm refuses a scalar that is not left-continuous",
            vec![Check::single(format!("{op} rejected"), rejected, || format!("G={g}, H={h}"))],
        ));
    }
    Ok(claims)
}

fn dominance(cfg: &SuiteConfig) -> R<Vec<Claim>> {
    let mut rng = rng_for(cfg.seed, "dominance");
    let quads = random_quadruples(&mut rng, 200, 3, 5.0);
    let theta = DeltaOp::pi_top(ScalarOp::Minimum);
    let taus = [
        DeltaOp::tau_t(ScalarOp::Lukasiewicz),
        DeltaOp::tau_t(ScalarOp::Product),
        DeltaOp::pi_top(ScalarOp::Lukasiewicz),
        DeltaOp::Convolution,
    ];
    let checks: Vec<Check> = taus
        .par_iter()
        .map(|tau| check_dominance_delta(&theta, tau, &quads, cfg.tolerance))
        .collect();
    let mut claims = vec![Claim::new("Pi_M dominates tau_T(W), tau_T(Pi), Pi_W and convolution", checks)];
    if cfg.negative_tests {
        let bad = check_dominance_delta(
            &DeltaOp::pi_top(ScalarOp::Lukasiewicz),
            &DeltaOp::pi_top(ScalarOp::Minimum),
            &quads,
            cfg.tolerance,
        );
        claims.push(Claim::detector(
            "the dominance checker refutes Pi_W >> Pi_M",
            vec![Check::single("violation found", !bad.passed, String::new)],
        )
        .with_notes(bad.witness.into_iter().collect()));
    }
    Ok(claims)
}

fn universe(n: usize) -> R<Universe> {
    Universe::of_size(n).map_err(s)
}

fn dirac_additive(u: &Universe, w: &[f64]) -> R<FiniteSetFunction> {
    Ok(build_dirac(&NumericSetFunction::additive(u.clone(), w).map_err(s)?))
}

fn dirac_maxitive(u: &Universe, w: &[f64]) -> R<FiniteSetFunction> {
    Ok(build_dirac(&NumericSetFunction::maxitive(u.clone(), w).map_err(s)?))
}

/// A profile with two atoms and no mass at `+inf`.
fn two_atom_phi(rng: &mut ChaCha8Rng) -> DiscreteDDF {
    let a = rng.gen_range(0.5..2.0);
    let b = a + rng.gen_range(0.5..2.0);
    let p = rng.gen_range(0.2..0.8);
    DiscreteDDF::new(vec![(a, p), (b, 1.0 - p)], 0.0).expect("normalized")
}

fn profile(u: &Universe, w: &[f64], phi: &DiscreteDDF, tol: f64) -> R<FiniteSetFunction> {
    let m = NumericSetFunction::additive(u.clone(), w).map_err(s)?;
    build_scaled_profile(&m, &LOp::Plus, phi, tol).map_err(s)
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.5..5.0)).collect()
}

fn pow(base: usize, n: usize) -> usize {
    base.pow(n as u32)
}

fn measures(cfg: &SuiteConfig, n: usize) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let u = universe(n)?;
    let mut rng = rng_for(cfg.seed, &format!("measures/{n}"));
    let tt_pi = DeltaOp::tau_t(ScalarOp::Product);
    let pi_m = DeltaOp::pi_top(ScalarOp::Minimum);
    let mut pos = Check::new(format!("eps_mu is a {tt_pi}-measure on all {} disjoint pairs", pow(3, n)));
    let mut neg = Check::new(format!("{pi_m}-decomposability fails with a witness"));
    let mut first_witness = None;
    for _ in 0..INSTANCES {
        let w = distinct_sum_weights(&mut rng, n, 0.5, 5.0);
        let mu = NumericSetFunction::additive(u.clone(), &w).map_err(s)?;
        let gamma = build_dirac(&mu);
        let c = classify(&gamma, &tt_pi, tol).map_err(s)?;
        pos.record(c.is_measure && c.disjoint_pairs == pow(3, n), || format!("weights {w:?}"));
        let c = classify(&gamma, &pi_m, tol).map_err(s)?;
        let found = !c.is_measure && c.measure_witness.is_some();
        neg.record(found || n < 2, || format!("weights {w:?}"));
        if let (None, Some(pw)) = (&first_witness, &c.measure_witness) {
            let e = u.parse_bits(&pw.e).map_err(s)?;
            let f = u.parse_bits(&pw.f).map_err(s)?;
            first_witness = Some(format!(
                "weights {w:?}: E={}, F={}, mu(E)={}, mu(F)={}",
                pw.e,
                pw.f,
                mu.get(e),
                mu.get(f)
            ));
        }
    }

    let plus_m = tau_plus(ScalarOp::Minimum);
    let plus_pi = tau_plus(ScalarOp::Product);
    let mut prof_m = Check::new(format!("m ⊙ Phi is a {plus_m}-measure"));
    let mut failures = 0;
    for _ in 0..INSTANCES {
        let w = random_weights(&mut rng, n);
        let phi = two_atom_phi(&mut rng);
        let gamma = profile(&u, &w, &phi, tol)?;
        prof_m.record(classify(&gamma, &plus_m, tol).map_err(s)?.is_measure, || {
            format!("weights {w:?}, Phi={phi}")
        });
        if !classify(&gamma, &plus_pi, tol).map_err(s)?.is_measure {
            failures += 1;
        }
    }
    let prof_pi = Check::single(
        format!("m ⊙ Phi fails {plus_pi}-decomposability on some instance"),
        failures > 0 || n < 2,
        || format!("all {INSTANCES} instances decomposable"),
    );
    Ok(vec![
        Claim::new(format!("Dirac measures of additive mu, n={n}"), vec![pos, neg])
            .with_notes(first_witness.into_iter().collect()),
        Claim::new(format!("scaled profiles with two-atom Phi, n={n}"), vec![prof_m, prof_pi])
            .with_notes(vec![format!("{plus_pi}-decomposability fails on {failures} of {INSTANCES} instances")]),
    ])
}

fn characterization(cfg: &SuiteConfig, n: usize) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let u = universe(n)?;
    let tau = DeltaOp::tau_t(ScalarOp::Product);
    let mut rng = rng_for(cfg.seed, &format!("characterization/{n}"));
    let gammas = (0..INSTANCES)
        .map(|_| dirac_additive(&u, &distinct_sum_weights(&mut rng, n, 0.5, 5.0)))
        .collect::<R<Vec<_>>>()?;
    let mut identity = Check::new(format!("identity on all {} pairs agrees with the definition", pow(4, n)));
    for g in &gammas {
        let rep = check_characterization(g, &tau, tol).map_err(s)?;
        identity.record(rep.identity_holds && rep.agree && rep.pairs_checked == pow(4, n), || {
            format!("{:?}", rep.witness)
        });
    }
    let mut claims = vec![Claim::new(format!("characterization of {tau}-measures, n={n}"), vec![identity])];
    if cfg.negative_tests {
        let mut detected = Check::new("corrupted replica rejected with a witness");
        for g in &gammas {
            let (bad, target) = corrupt(g, &mut rng);
            let rep = check_characterization(&bad, &tau, tol).map_err(s)?;
            detected.record(!rep.identity_holds && rep.witness.is_some() && rep.agree, || {
                format!("corruption at {} not detected", u.bits(target))
            });
        }
        claims.push(Claim::detector(format!("planted single-value corruption, n={n}"), vec![detected]));
    }
    Ok(claims)
}

fn constructions(cfg: &SuiteConfig, n: usize) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let u = universe(n)?;
    let mut rng = rng_for(cfg.seed, &format!("constructions/{n}"));
    let tt_pi = DeltaOp::tau_t(ScalarOp::Product);
    let tt_w = DeltaOp::tau_t(ScalarOp::Lukasiewicz);
    let plus_m = tau_plus(ScalarOp::Minimum);
    let plus_w = tau_plus(ScalarOp::Lukasiewicz);
    let pi_m = DeltaOp::pi_top(ScalarOp::Minimum);

    let mut scale = Check::new("c ⊙ gamma is a measure for c in {0.5, 2, 7}");
    let mut combine = Check::new("tau(gamma1, gamma2) is a measure");
    let mut theta = Check::new(format!("{pi_m}(gamma1, gamma2) is a {tt_w}-submeasure"));
    let mut agg = Check::new(format!("Pi_AM(gamma1, gamma2) is a {plus_w}-submeasure"));
    let mut premises = Check::new("sampled premises of the constructions");
    for _ in 0..CONSTRUCTION_INSTANCES {
        let d1 = dirac_additive(&u, &random_weights(&mut rng, n))?;
        let d2 = dirac_additive(&u, &random_weights(&mut rng, n))?;
        let phi = two_atom_phi(&mut rng);
        let p1 = profile(&u, &random_weights(&mut rng, n), &phi, tol)?;
        let p2 = profile(&u, &random_weights(&mut rng, n), &phi, tol)?;

        for (g, tau) in [(&d1, &tt_pi), (&p1, &plus_m)] {
            for c in [0.5, 2.0, 7.0] {
                let out = transform(&TransformMode::Scale(c), &[g], tau, tol).map_err(s)?;
                scale.record(out.classification.is_measure, || format!("c={c} under {tau}"));
            }
        }
        for (a, b, tau) in [(&d1, &d2, &tt_pi), (&p1, &p2, &plus_m)] {
            let out = transform(&TransformMode::CombineTau, &[a, b], tau, tol).map_err(s)?;
            combine.record(out.classification.is_measure, || format!("under {tau}"));
        }
        let out = transform(&TransformMode::CombineTheta(pi_m.clone()), &[&d1, &d2], &tt_w, tol).map_err(s)?;
        theta.record(out.classification.is_submeasure, || format!("{:?}", out.classification.submeasure_witness));
        if let Some(d) = out.dominance {
            premises.absorb(d);
        }
        let out = aggregate(
            PointwiseAggregation::Mean,
            &[&p1, &d2],
            &plus_w,
            &[plus_w.clone(), plus_w.clone()],
            tol,
        )
        .map_err(s)?;
        agg.record(out.classification.is_submeasure && out.boundary, || {
            format!("{:?}", out.classification.submeasure_witness)
        });
        premises.absorb(out.dominance);
        premises.absorb(out.order);
    }
    let mut claims = vec![Claim::new(
        format!("construction theorems, n={n}"),
        vec![scale, combine, theta, agg, premises],
    )];
    if cfg.negative_tests {
        let g = dirac_additive(&u, &random_weights(&mut rng, n))?;
        let (bad, _) = corrupt(&g, &mut rng);
        let r = transform(&TransformMode::Scale(2.0), &[&bad], &tt_pi, tol);
        claims.push(Claim::detector(
            format!("a corrupted input is refused by the constructions, n={n}"),
            vec![Check::single("InputNotMeasure raised", matches!(r, Err(MeasureError::InputNotMeasure { .. })), || {
                format!("{r:?}")
            })],
        ));
    }
    Ok(claims)
}

fn ppm_tau() -> DeltaOp {
    DeltaOp::tau_t(ScalarOp::Minimum)
}

/// Antimonotone `tau_T(M)`-submeasures of three kinds.
fn submeasures(cfg: &SuiteConfig, stream: &str, n: usize, count: usize) -> R<Vec<FiniteSetFunction>> {
    let u = universe(n)?;
    let mut rng = rng_for(cfg.seed, stream);
    (0..count)
        .map(|i| {
            let w = distinct_sum_weights(&mut rng, n, 0.5, 5.0);
            match i % 3 {
                0 => dirac_additive(&u, &w),
                1 => dirac_maxitive(&u, &w),
                _ => profile(&u, &w, &two_atom_phi(&mut rng), cfg.tolerance),
            }
        })
        .collect()
}

/// `gamma` with `gamma(Omega)` moved beyond every combination of the other
/// values, which breaks the submeasure inequality.
fn plant_at_full(gamma: &FiniteSetFunction) -> Vec<DiscreteDDF> {
    let u = gamma.universe();
    let reach: f64 = gamma
        .values()
        .iter()
        .filter_map(|v| v.max_location())
        .sum();
    let mut values = gamma.values().to_vec();
    let full = u.full().index();
    values[full] = values[full].translate(reach + 1.0);
    values
}

fn absorb_by_name(into: &mut Vec<Check>, checks: Vec<Check>) {
    for c in checks {
        match into.iter_mut().find(|x| x.name == c.name) {
            Some(x) => x.absorb(c),
            None => into.push(c),
        }
    }
}

fn ppm(cfg: &SuiteConfig) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let tau = ppm_tau();
    let gammas = submeasures(cfg, "ppm/members", PPM_UNIVERSE, PSEUDO_METRICS)?;
    let mut premise = Check::new(format!("inputs are antimonotone {tau}-submeasures"));
    let mut axioms = Vec::new();
    let mut exhaustive = Check::new(format!("triangle scan covers all {} triples", pow(16, 3)));
    let mut invariance = Vec::new();
    for g in &gammas {
        let c = classify(g, &tau, tol).map_err(s)?;
        premise.record(c.is_submeasure && c.is_antimonotone, || format!("{c:?}"));
        let space = from_submeasure(g, &tau, tol).map_err(s)?;
        let rep = space.verify(tol).map_err(s)?;
        exhaustive.record(rep.triangle_exhaustive, String::new);
        absorb_by_name(&mut axioms, rep.checks);
        absorb_by_name(&mut invariance, vec![check_translation_invariance(&space, tol)]);
    }
    let mut checks = vec![premise];
    checks.extend(axioms);
    checks.push(exhaustive);
    checks.extend(invariance);
    let mut claims = vec![Claim::new(
        format!("rho(E, F) = gamma(E △ F) on |Omega| = {PPM_UNIVERSE}"),
        checks,
    )];
    if cfg.negative_tests {
        let mut caught = Check::new("planted violation at Omega rejected by the axiom check");
        let mut refused = Check::new("planted violation refused as a generator");
        for g in &gammas {
            let bad = plant_at_full(g);
            let rho = PseudoMetric::from_table(g.universe().clone(), bad.clone());
            let rep = rho.to_space(tau.clone()).verify(tol).map_err(s)?;
            caught.record(!rep.passed, String::new);
            let bad = FiniteSetFunction::new(g.universe().clone(), bad).map_err(s)?;
            refused.record(PseudoMetric::generated(&bad, &tau, tol).is_err(), String::new);
        }
        claims.push(Claim::detector("corrupted generated pseudo-metrics", vec![caught, refused]));
    }
    Ok(claims)
}

fn semilattice(cfg: &SuiteConfig) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let tau = ppm_tau();
    let gammas = submeasures(cfg, "ppm/members", PPM_UNIVERSE, PSEUDO_METRICS)?;
    let u = gammas[0].universe().clone();
    let members = gammas
        .iter()
        .map(|g| PseudoMetric::generated(g, &tau, tol))
        .collect::<Result<Vec<_>, _>>()
        .map_err(s)?;
    let theta = Oplus::new(DeltaOp::pi_top(ScalarOp::Minimum), tau.clone(), cfg.seed, tol).map_err(s)?;
    let family = PseudoMetricFamily::new(u.clone(), members.clone()).map_err(s)?;
    let rep = check_semilattice(&family, &theta, tol).map_err(s)?;
    let mut checks = vec![theta.dominance().clone()];
    checks.extend(rep.checks);
    let mut claims = vec![Claim::new(
        "bounded semilattice laws, properties (i) and (ii), monotonicity of ⊕_theta with theta = Pi_M",
        checks,
    )
    .with_notes(vec![format!("closure of {} generators has {} members", members.len(), rep.closure_size)])];
    if cfg.negative_tests {
        let mut planted = members;
        planted.push(PseudoMetric::from_table(u.clone(), plant_at_full(&gammas[0])));
        let family = PseudoMetricFamily::new(u, planted).map_err(s)?;
        let rep = check_semilattice(&family, &theta, tol).map_err(s)?;
        let member_check = rep.checks.iter().find(|c| c.name == "members are pseudo-metrics");
        claims.push(Claim::detector(
            "a family with a corrupted member fails the semilattice check",
            vec![Check::single(
                "corrupted member detected",
                !rep.passed && member_check.is_some_and(|c| !c.passed),
                String::new,
            )],
        ));
    }
    Ok(claims)
}

fn product(cfg: &SuiteConfig) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let tau = ppm_tau();
    let mut claims = Vec::new();
    for (n, label) in [(2usize, "4 x 4 points, exhaustive triangle scan"), (PPM_UNIVERSE, "16 x 16 points, sampled triangle scan")] {
        let gammas = submeasures(cfg, &format!("product/{n}"), n, 2)?;
        let spaces = gammas
            .iter()
            .map(|g| from_submeasure(g, &tau, tol))
            .collect::<Result<Vec<_>, _>>()
            .map_err(s)?;
        let refs: Vec<&FinitePpMSpace> = spaces.iter().collect();
        let out = product_space(&refs, PointwiseAggregation::Min, &tau, cfg.seed, tol).map_err(s)?;
        let rep = out
            .space
            .verify_with(tol, EXHAUSTIVE_TRIPLES_LIMIT, SAMPLED_TRIPLES, cfg.seed)
            .map_err(s)?;
        let mut checks = vec![out.dominance];
        checks.extend(out.order);
        checks.extend(rep.checks);
        let note = if rep.triangle_exhaustive {
            format!("all {} triples", pow(out.space.len(), 3))
        } else {
            format!("{SAMPLED_TRIPLES} sampled triples of {}", pow(out.space.len(), 3))
        };
        claims.push(Claim::new(format!("Pi_M product, {label}"), checks).with_notes(vec![note]));
    }
    if cfg.negative_tests {
        let g = &submeasures(cfg, "product/negative", 2, 1)?[0];
        let good = from_submeasure(g, &tau, tol).map_err(s)?;
        let mut rng = rng_for(cfg.seed, "product/negative");
        let bad = non_metric_space(&mut rng, 3, tau.clone());
        let out = product_space(&[&good, &bad], PointwiseAggregation::Min, &tau, cfg.seed, tol).map_err(s)?;
        let rep = out.space.verify(tol).map_err(s)?;
        claims.push(Claim::detector(
            "a product with a non-metric factor fails the axiom check",
            vec![Check::single("triangle violation found", !rep.passed, String::new)],
        ));
    }
    Ok(claims)
}

/// Dirac spaces: shortest-path metrics for `tau_T(M)` and ultrametrics for `Pi_M`.
fn hausdorff_spaces(cfg: &SuiteConfig, n: usize) -> R<Vec<(DeltaOp, Vec<HausdorffContext>)>> {
    let mut out = Vec::new();
    for (tau, ultra) in [(DeltaOp::tau_t(ScalarOp::Minimum), false), (DeltaOp::pi_top(ScalarOp::Minimum), true)] {
        let mut rng = rng_for(cfg.seed, &format!("hausdorff/{n}/{}", tau.short_name()));
        let ctxs = (0..INSTANCES)
            .map(|_| {
                let d = if ultra {
                    random_ultrametric(&mut rng, n, 1.0, 10.0)
                } else {
                    random_metric(&mut rng, n, 1.0, 10.0)
                };
                HausdorffContext::new(dirac_space(&d, tau.clone())).map_err(s)
            })
            .collect::<R<Vec<_>>>()?;
        out.push((tau, ctxs));
    }
    Ok(out)
}

fn hausdorff(cfg: &SuiteConfig, n: usize) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let mut claims = Vec::new();
    for (tau, ctxs) in hausdorff_spaces(cfg, n)? {
        let mut pre = Check::new(format!("spaces satisfy the axioms under {tau}"));
        let mut checks = Vec::new();
        for ctx in &ctxs {
            let rep = check_lambda_theorem(ctx, tol).map_err(s)?;
            pre.record(rep.status != TheoremStatus::PreconditionUnmet, || format!("{:?}", rep.precondition));
            absorb_by_name(&mut checks, rep.checks);
        }
        checks.insert(0, pre);
        claims.push(Claim::new(format!("Lambda^H on {INSTANCES} Dirac spaces under {tau}, n={n}"), checks));
    }
    if cfg.negative_tests {
        let mut rng = rng_for(cfg.seed, &format!("hausdorff/{n}/negative"));
        let space = non_metric_space(&mut rng, n.max(3), ppm_tau());
        let ctx = HausdorffContext::new(space).map_err(s)?;
        let rep = check_lambda_theorem(&ctx, tol).map_err(s)?;
        claims.push(Claim::detector(
            "a space violating the triangle inequality is reported as outside the theorem",
            vec![Check::single("PRECONDITION_UNMET reported", rep.status == TheoremStatus::PreconditionUnmet, || {
                format!("{:?}", rep.status)
            })],
        ));
    }
    Ok(claims)
}

fn measurable(cfg: &SuiteConfig, n: usize) -> R<Vec<Claim>> {
    let tol = cfg.tolerance;
    let mut claims = Vec::new();
    for (tau, ctxs) in hausdorff_spaces(cfg, n)? {
        let mut empty = Check::new("∅ in S_tau");
        let mut full = Check::new("Omega in S_tau");
        let mut comp = Check::new("closed under complement");
        let mut union = Check::new("closed under union");
        let mut additive = Check::new("restriction is a measure");
        let mut classified = Check::new("restriction classified as a measure");
        let mut trivial = 0;
        let mut sizes = Vec::new();
        for ctx in &ctxs {
            let rep = enumerate_measurable(ctx, &tau, tol).map_err(s)?;
            empty.record(rep.contains_empty, String::new);
            full.record(rep.contains_full, String::new);
            comp.absorb(rep.complement_closed);
            union.absorb(rep.union_closed);
            trivial += usize::from(rep.trivial);
            sizes.push(rep.members.len());
            let r = check_restriction_measure(ctx, &tau, tol).map_err(s)?;
            additive.absorb(r.additivity);
            classified.record(r.classification.is_measure, || format!("{:?}", r.classification.measure_witness));
        }
        claims.push(
            Claim::new(
                format!("S_tau and the restriction of Lambda^H under {tau}, n={n}"),
                vec![empty, full, comp, union, additive, classified],
            )
            .with_notes(vec![format!(
                "|S_tau| per space {sizes:?}; S_tau = {{∅, Omega}} on {trivial} of {INSTANCES} spaces"
            )]),
        );
    }
    Ok(claims)
}
