//! Acceptance criteria, run as a plain binary so every line is printed.
//! Exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lfunction::catalog::Catalog;
use lfunction::gamma::{dist_to_integers, ln_gamma, sin_pi, sine_bound_constant};
use lfunction::group::{
    double_cosets, generate_group, permutation_subgroup, preserves_hyperplane, shared_group,
    verify_coxeter_presentation, Generator, Group, GroupElement, TemplateId, DIM,
};
use lfunction::lfunc::eval_l_barnes;
use lfunction::series::Method;
use lfunction::verify::{
    random_elements, representatives, run_classical, verify_invariance, verify_representation_consistency,
    ClassicalConfig, ClassicalSuite, SampleConstraints, Sampler, VerificationReport,
};
use lfunction::{ComplexValue, RationalValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn within(elapsed: Duration, limit: Duration, detail: String) -> Outcome {
    if elapsed <= limit {
        Ok(format!("{detail} in {:.2?}", elapsed))
    } else {
        Err(format!("{detail} but took {:.2?} (limit {:.0?})", elapsed, limit))
    }
}

fn report_outcome(r: &VerificationReport, what: &str) -> Outcome {
    let s = r.summary;
    let detail = format!("{what}: {}/{} pass, worst abs_diff/tol {:.2e}", s.passed, s.total, r.worst_ratio());
    if r.all_pass() {
        Ok(detail)
    } else {
        let first = r.checks.iter().find(|c| !c.pass).expect("a failing check");
        Err(format!("{detail}; first failure {first:?}"))
    }
}

const PRINTED: [(TemplateId, &str); 6] = [
    (TemplateId::I, "a,b,c,d;e;f,g"),
    (TemplateId::II, "a,b,g-c,g-d;1+a+b-f;1+a+b-e,g"),
    (TemplateId::III, "1+a-e,g-c,a,f-c;1+a-c;1+a+b-e,1+a+d-e"),
    (TemplateId::IV, "1+d-e,1+a-e,g-c,g-b;1+g-b-c;1+a+d-e,1+g-e"),
    (TemplateId::V, "g-a,g-b,g-c,g-d;1+g-f;1+g-e,g"),
    (TemplateId::VI, "1+c-e,1+d-e,1+a-e,1+b-e;2-e;1+g-e,1+f-e"),
];

fn group_order() -> Outcome {
    let t = Instant::now();
    let g = generate_group().map_err(|e| e.to_string())?;
    let el = t.elapsed();
    if g.order() != 1920 {
        return Err(format!("order {}", g.order()));
    }
    within(el, Duration::from_secs(2), "order 1920".into())
}

fn permutation_subgroup_48() -> Outcome {
    let g = shared_group();
    let sigma = permutation_subgroup(g);
    let gen = Group::generate(&[Generator::S12, Generator::S23, Generator::S34, Generator::S67])
        .map_err(|e| e.to_string())?;
    let a: HashSet<_> = sigma.iter().map(|e| e.matrix.clone()).collect();
    let b: HashSet<_> = gen.elements().iter().map(|e| e.matrix.clone()).collect();
    if sigma.len() == 48 && a == b {
        Ok("48 permutation matrices, equal to <(12),(23),(34),(67)>".into())
    } else {
        Err(format!("{} permutation matrices, generated subgroup has {}", sigma.len(), gen.order()))
    }
}

fn coxeter() -> Outcome {
    let r = verify_coxeter_presentation().map_err(|e| e.to_string())?;
    if r.ok() && r.pairs.len() == 25 {
        Ok("all 25 relations (a_i a_j)^m_ij = 1 hold".into())
    } else {
        Err(format!("{r:?}"))
    }
}

fn cosets() -> Outcome {
    let t = Instant::now();
    let g = generate_group().map_err(|e| e.to_string())?;
    let classes = double_cosets(&g, &permutation_subgroup(&g)).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    let sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
    let mut sorted = sizes.clone();
    sorted.sort_unstable();
    if sorted != [48, 48, 96, 576, 576, 576] {
        return Err(format!("sizes {sizes:?}"));
    }
    for c in &classes {
        if c.size != c.template.expected_size() {
            return Err(format!("class {} has size {}", c.template.as_str(), c.size));
        }
    }
    let total: usize = sizes.iter().sum();
    if total != 1920 {
        return Err(format!("classes cover {total} elements"));
    }
    within(el, Duration::from_secs(5), format!("six classes {sizes:?}, representatives distinct"))
}

fn hyperplane() -> Outcome {
    let bad = shared_group().elements().iter().filter(|e| !preserves_hyperplane(&e.matrix)).count();
    if bad == 0 {
        Ok("phi·M = phi for all 1920 elements".into())
    } else {
        Err(format!("{bad} elements move the hyperplane"))
    }
}

fn rational_point(rng: &mut ChaCha8Rng) -> [RationalValue; DIM] {
    let mut x: [RationalValue; DIM] = std::array::from_fn(|_| {
        RationalValue::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=9).into())
    });
    // g = 1 + a + b + c + d - e - f
    x[6] = RationalValue::from_integer(1.into()) + &x[0] + &x[1] + &x[2] + &x[3] - &x[4] - &x[5];
    x
}

fn catalog_fidelity() -> Outcome {
    let catalog = Catalog::build().map_err(|e| e.to_string())?;
    for (t, printed) in PRINTED {
        if catalog.find_params(t, printed).is_none() {
            return Err(format!("{printed} not found in class {}", t.as_str()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let points: Vec<_> = (0..10).map(|_| rational_point(&mut rng)).collect();
    for r in catalog.relations() {
        for x in &points {
            if r.eval_rational(x) != r.element.matrix.apply_rational(x) {
                return Err(format!("{} disagrees with its matrix", r.text_line()));
            }
        }
    }
    Ok("six printed lists found in their classes; 1920 × 10 exact re-evaluations agree".into())
}

fn fundamental_relation() -> Outcome {
    let t = Instant::now();
    let a = GroupElement::from_word(vec![Generator::A]);
    let mut sampler = Sampler::new(SampleConstraints::with_seed(7)).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = sampler.sample_point(std::slice::from_ref(&a)).map_err(|e| e.to_string())?;
        let q = a.apply(&p).map_err(|e| e.to_string())?;
        let lp = eval_l_barnes(&p).map_err(|e| format!("L(p) at {p}: {e}"))?;
        let lq = eval_l_barnes(&q).map_err(|e| format!("L(Ap) at {q}: {e}"))?;
        if lp.method != Method::Barnes || lq.method != Method::Barnes {
            return Err("evaluator did not use the Barnes integral".into());
        }
        let ratio = (lp.value - lq.value).norm() / (1e-6 * (1.0 + lp.value.norm()));
        worst = worst.max(ratio);
        if ratio > 1.0 {
            return Err(format!("|L(p) - L(Ap)| too large at {p}: {} vs {}", lp.value, lq.value));
        }
    }
    within(
        t.elapsed(),
        Duration::from_secs(120),
        format!("20/20 points, worst abs_diff/tol {worst:.2e}"),
    )
}

fn full_sweep() -> Outcome {
    let t = Instant::now();
    let reps = verify_invariance(&representatives(), 20, 1e-6, &SampleConstraints::with_seed(8))
        .map_err(|e| e.to_string())?;
    let random = random_elements(50, 8).map_err(|e| e.to_string())?;
    let rand = verify_invariance(&random, 5, 1e-6, &SampleConstraints::with_seed(9)).map_err(|e| e.to_string())?;
    let report = VerificationReport::merge([reps, rand]);
    if report.summary.total != 6 * 20 + 50 * 5 {
        return Err(format!("ran {} checks", report.summary.total));
    }
    let detail = report_outcome(&report, "6×20 + 50×5 pairs")?;
    within(t.elapsed(), Duration::from_secs(600), detail)
}

fn representation_consistency() -> Outcome {
    let mut sampler = Sampler::new(SampleConstraints::with_seed(10)).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    let mut points = 0;
    while points < 10 {
        let p = sampler.sample_point(&[]).map_err(|e| e.to_string())?;
        // all three representations must take part
        if (p.f() - p.d()).re <= 0.0 {
            continue;
        }
        checks.extend(verify_representation_consistency(&p, 1e-5));
        points += 1;
    }
    let report = VerificationReport::new(checks);
    if report.summary.total != 30 {
        return Err(format!("{} pairwise checks", report.summary.total));
    }
    report_outcome(&report, "10 points × 3 pairs")
}

fn classical(suite: ClassicalSuite, what: &str, expect: usize) -> Outcome {
    let report = run_classical(suite, 11, &ClassicalConfig::default()).map_err(|e| e.to_string())?;
    if report.summary.total != expect {
        return Err(format!("{what}: ran {} checks, expected {expect}", report.summary.total));
    }
    report_outcome(&report, what)
}

fn bailey() -> Outcome {
    let t = Instant::now();
    let report = run_classical(ClassicalSuite::Bailey, 12, &ClassicalConfig::default()).map_err(|e| e.to_string())?;
    if report.summary.total != 100 || report.checks.iter().any(|c| c.abs_diff != Some(0.0)) {
        return Err(format!("{:?}", report.summary));
    }
    let detail = report_outcome(&report, "100 exact rational instances")?;
    within(t.elapsed(), Duration::from_secs(30), detail)
}

fn kernel_accuracy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let pi = ComplexValue::new(std::f64::consts::PI, 0.0);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 1000 {
        let z = ComplexValue::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        if z.norm() >= 20.0 || dist_to_integers(z) <= 0.1 {
            continue;
        }
        let prod = (ln_gamma(z).map_err(|e| e.to_string())? + ln_gamma(1.0 - z).map_err(|e| e.to_string())?).exp();
        let r = (prod * sin_pi(z) - pi).norm() / std::f64::consts::PI;
        worst = worst.max(r);
        n += 1;
    }
    if worst > 1e-10 {
        return Err(format!("reflection residual {worst:.2e}"));
    }
    let mut min_margin = f64::INFINITY;
    for eps in [0.1, 0.3, 0.5] {
        let k = sine_bound_constant(eps);
        let mut n = 0;
        while n < 1000 {
            let z = ComplexValue::new(rng.gen_range(-10.0..10.0), rng.gen_range(-3.0..3.0));
            if dist_to_integers(z) < eps {
                continue;
            }
            let margin = sin_pi(z).norm() / (k * (std::f64::consts::PI * z.im.abs()).exp());
            if margin < 1.0 {
                return Err(format!("sine bound fails at {z} for eps {eps}"));
            }
            min_margin = min_margin.min(margin);
            n += 1;
        }
    }
    Ok(format!(
        "reflection residual {worst:.2e} over 1000 samples; sine bound holds over 3×1000, min |sin|/bound {min_margin:.3}"
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("group order", Box::new(group_order)),
        ("permutation subgroup", Box::new(permutation_subgroup_48)),
        ("coxeter presentation", Box::new(coxeter)),
        ("double cosets", Box::new(cosets)),
        ("hyperplane preservation", Box::new(hyperplane)),
        ("catalog fidelity", Box::new(catalog_fidelity)),
        ("fundamental relation", Box::new(fundamental_relation)),
        ("full invariance sweep", Box::new(full_sweep)),
        ("representation consistency", Box::new(representation_consistency)),
        ("barnes first lemma", Box::new(|| classical(ClassicalSuite::Barnes1, "10 instances at 1e-8", 10))),
        ("barnes second lemma", Box::new(|| classical(ClassicalSuite::Barnes2, "10 instances at 1e-6", 10))),
        (
            "thomae and two-term 3F2 relation",
            Box::new(|| {
                let a = classical(ClassicalSuite::TwoTerm, "two-term: 10 instances + involution", 11)?;
                let b = classical(ClassicalSuite::Thomae, "thomae: 10 instances + fixed point + composition", 12)?;
                Ok(format!("{a}; {b}"))
            }),
        ),
        ("bailey", Box::new(bailey)),
        ("kernel accuracy", Box::new(kernel_accuracy)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
