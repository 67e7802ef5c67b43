//! Acceptance gate. Runs every criterion, prints one line each and exits
//! nonzero if any fails.

use std::process::ExitCode;

use contact_atlas_core::chow::{
    chern_classes, pair, pairing_table, self_intersection, shokurov_threshold_check, surface_mul, CurveClass,
    DivisorClassP, RuledSurfaceParams, SurfaceClass,
};
use contact_atlas_core::contact::{
    fav_action, parse_action, quot_action, quotient_verdict, OmegaTransform, QuotientVerdict, BUNDLED_ACTIONS,
};
use contact_atlas_core::nilpotent::{
    fav_flips, kk_pullback_check, orbit_poset, stratification_parity, verify_homogeneity, verify_image_on_samples,
    verify_invariance, NilpotentMap, SamplePlan, KK_TOLERANCE,
};
use contact_atlas_core::report::{
    chow_report, fav_report, nilpotent_report, p5_report, quotient_report, threefold_report, NilpotentTarget,
    PipelineReport, VerdictExpectation,
};
use contact_atlas_core::toric::pipelines::{fav_closed_form_rays, FavPipeline, P5Pipeline};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(g: i64, e: i64) -> Result<RuledSurfaceParams, String> {
    RuledSurfaceParams::new(g, e).map_err(|err| err.to_string())
}

const GRID: [(i64, i64); 4] = [(0, 0), (0, 1), (1, 0), (2, 3)];

fn xi_cubed() -> Outcome {
    let xi = DivisorClassP::from_i64(0, 0, 1);
    let mut cases = 0;
    for g in [0, 1, 2, 5, 10] {
        for e in [0, 1, 3] {
            let got = self_intersection(&xi, &params(g, e)?);
            ensure(got == q(4 * (1 - g)), || format!("(g,e)=({g},{e}): xi^3 = {got}"))?;
            cases += 1;
        }
    }
    Ok(format!("xi^3 = 4(1-g) on {cases} cases"))
}

fn pairing_tables() -> Outcome {
    for (g, e) in GRID {
        let t = pairing_table(&params(g, e)?);
        let want = [[0, 1, 0], [1, -e, 0], [0, 2 - 2 * g, 1]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                ensure(t[i][j] == q(w), || format!("(g,e)=({g},{e}) entry ({i},{j}) = {}", t[i][j]))?;
            }
        }
    }
    Ok("tables match on (0,0), (0,1), (1,0), (2,3)".into())
}

fn chern_numbers() -> Outcome {
    for (g, e) in GRID {
        let p = params(g, e)?;
        let (c1, c2) = chern_classes(&p);
        let c1_sq = surface_mul(&c1, &c1, &p).map_err(|err| err.to_string())?;
        ensure(c1_sq == SurfaceClass::pt().scale(&q(8 * (1 - g))), || format!("c1^2 at ({g},{e}): {c1_sq:?}"))?;
        let p_a = -g;
        ensure(&c1_sq.cpt + &c2.cpt == q(12 * (1 + p_a)), || format!("Noether fails at ({g},{e})"))?;
    }
    Ok("c1^2 = 8(1-g), c1^2 + c2 = 12(1+p_a)".into())
}

fn all_pass(r: &PipelineReport) -> Result<(), String> {
    match r.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("{}: {} failed (expected {}, got {})", r.pipeline, c.name, c.expected, c.actual)),
    }
}

fn fav() -> Outcome {
    for n in 1..=3 {
        let p = FavPipeline::run(n).map_err(|e| e.to_string())?;
        let mut got = p.quotient.rays().to_vec();
        let mut want = fav_closed_form_rays(n);
        got.sort();
        want.sort();
        ensure(got == want, || format!("n={n}: rays differ"))?;
        ensure(p.singular_cones.len() == n + 1, || format!("n={n}: {} singular cones", p.singular_cones.len()))?;
        ensure(p.singular_cones.iter().all(|c| c.len() == 2), || format!("n={n}: singular cone not 2-dim"))?;
        ensure(p.discrepancies.iter().all(|d| d.value.is_zero()), || format!("n={n}: not crepant"))?;
        ensure(p.resolved_singular_cones.is_empty(), || format!("n={n}: resolution not smooth"))?;
        ensure(p.anticanonical_divisible, || format!("n={n}: -K not divisible by n+1"))?;
        ensure(p.quotient_fano, || format!("n={n}: quotient not Fano"))?;
        ensure(p.projection_to_lines, || format!("n={n}: projection check"))?;
        all_pass(&fav_report(n).map_err(|e| e.to_string())?)?;
    }
    Ok("n = 1, 2, 3: rays, n+1 singular cones, crepant, smooth, -K divisible, Fano, projection".into())
}

fn p5() -> Outcome {
    let p = P5Pipeline::run().map_err(|e| e.to_string())?;
    let positive = p.full_discrepancies.iter().filter(|d| d.value.is_positive()).count();
    ensure(positive > 0, || "full resolution has no positive discrepancy".into())?;
    ensure(!p.full_anticanonical_divisible_by_3, || "full -K divisible by 3".into())?;
    ensure(p.partial_crepant(), || "partial resolution not crepant".into())?;
    all_pass(&p5_report().map_err(|e| e.to_string())?)?;
    Ok(format!("{positive} positive discrepancy, -K not divisible by 3, partial crepant"))
}

fn quotient_checks() -> Outcome {
    let v = quotient_verdict(&quot_action()).map_err(|e| e.to_string())?;
    ensure(
        v == QuotientVerdict::Fails {
            generator: 0,
            classification: OmegaTransform::Negates,
        },
        || format!("quot verdict {v:?}"),
    )?;
    for n in 1..=3 {
        let v = quotient_verdict(&fav_action(n)).map_err(|e| e.to_string())?;
        ensure(v == QuotientVerdict::InducedContactStructure, || format!("fav n={n}: {v:?}"))?;
    }
    let mut min = usize::MAX;
    for (name, src) in BUNDLED_ACTIONS {
        let a = parse_action(src).map_err(|e| format!("{name}: {e}"))?;
        let c = a.min_fixed_codimension().map_err(|e| format!("{name}: {e}"))?;
        ensure(c >= 2, || format!("{name}: codimension {c}"))?;
        min = min.min(c);
        let expect = match quotient_verdict(&a).map_err(|e| e.to_string())? {
            QuotientVerdict::InducedContactStructure => VerdictExpectation::Induced,
            QuotientVerdict::Fails { .. } => VerdictExpectation::Fails,
        };
        all_pass(&quotient_report(&a, name, Some(expect)).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("quot negates, fav passes, min fixed codimension {min} over {} bundled groups", BUNDLED_ACTIONS.len()))
}

fn nilpotent_suite() -> Outcome {
    let plan = SamplePlan::new(1000, 42).map_err(|e| e.to_string())?;
    let err = |e: contact_atlas_core::nilpotent::NilpotentError| e.to_string();
    let mut maps: Vec<(NilpotentMap, Vec<Vec<usize>>)> =
        (1..=3).map(|n| (NilpotentMap::Psi(n), fav_flips(n))).collect();
    maps.push((NilpotentMap::Phi, vec![vec![1, 4]]));
    for (map, group) in &maps {
        let props = verify_image_on_samples(*map, &plan).map_err(err)?;
        ensure(props.all(), || format!("{map:?}: {props:?}"))?;
        ensure(verify_invariance(*map, group, &plan).map_err(err)?, || format!("{map:?}: invariance"))?;
        ensure(verify_homogeneity(*map, &plan).map_err(err)?, || format!("{map:?}: homogeneity"))?;
    }
    for k in 1..=5 {
        let p = orbit_poset(k).map_err(err)?;
        ensure(p.len() == 1 << k, || format!("k={k}: size {}", p.len()))?;
        let size = p.len() as u32;
        for a in 0..size {
            for b in 0..size {
                let boolean = a & !b == 0;
                ensure(p.leq(a, b) == boolean, || format!("k={k}: order at ({a},{b})"))?;
                if boolean {
                    ensure((p.dim(b) - p.dim(a)) % 2 == 0, || format!("k={k}: odd codimension"))?;
                }
            }
        }
        let r = stratification_parity(k).map_err(err)?;
        ensure(r.all_even && r.formula_holds, || format!("k={k}: {r:?}"))?;
    }
    Ok("psi (n <= 3) and phi on 1000 samples; Boolean posets k <= 5 with even codimensions".into())
}

fn shokurov() -> Outcome {
    let mut cases = 0;
    for g in 0..=2 {
        for e in 0..=3 {
            let a = 3 * (2 * g - 2).max(e) + 1;
            let p = params(g, e)?;
            let s = shokurov_threshold_check(&p, a as u64);
            let c = CurveClass::basis();
            let d = DivisorClassP::d_a(a);
            let on_l = pair(&d, &c[0], &p);
            let on_b0 = pair(&d, &c[1], &p);
            let on_fibre = pair(&d, &c[2], &p);
            let cube = self_intersection(&d, &p);
            ensure(on_l.is_zero(), || format!("({g},{e}): D.l = {on_l}"))?;
            ensure(on_b0.is_positive(), || format!("({g},{e}): D.B0 = {on_b0}"))?;
            ensure(on_fibre == q(1), || format!("({g},{e}): D.C = {on_fibre}"))?;
            ensure(cube == q(6 * a + 4 * (1 - g)) && cube.is_positive(), || format!("({g},{e}): D^3 = {cube}"))?;
            ensure(s.threshold_ok && s.positivity_holds, || format!("({g},{e}): {s:?}"))?;
            all_pass(&threefold_report(g, e, a as u64).map_err(|e| e.to_string())?)?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases with a = 3 max(2g-2, e) + 1"))
}

fn kk() -> Outcome {
    let plan = SamplePlan::new(100, 7).map_err(|e| e.to_string())?;
    let r = kk_pullback_check(1, &plan).map_err(|e| e.to_string())?;
    ensure(r.passed && r.max_residual < KK_TOLERANCE, || format!("{r:?}"))?;
    Ok(format!(
        "constant {}, max residual {:.1e} over {} points (tolerance {:.0e})",
        r.constant, r.max_residual, r.evaluated, KK_TOLERANCE
    ))
}

fn every_report() -> Result<Vec<PipelineReport>, String> {
    let s = |e: contact_atlas_core::report::ReportError| e.to_string();
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(fav_report(n).map_err(s)?);
    }
    out.push(p5_report().map_err(s)?);
    for (g, e, a) in [(0, 1, 4), (1, 0, 1), (2, 3, 19)] {
        out.push(threefold_report(g, e, a).map_err(s)?);
    }
    for (name, src) in BUNDLED_ACTIONS {
        let a = parse_action(src).map_err(|e| e.to_string())?;
        out.push(quotient_report(&a, name, None).map_err(s)?);
    }
    let plan = SamplePlan::new(100, 42).map_err(|e| e.to_string())?;
    out.push(nilpotent_report(NilpotentTarget::Maps(1), &plan).map_err(s)?);
    out.push(nilpotent_report(NilpotentTarget::Poset(4), &plan).map_err(s)?);
    out.push(chow_report("(xi + l)^2 * B0", 1, 0, None).map_err(s)?);
    Ok(out)
}

fn determinism() -> Outcome {
    let first = every_report()?;
    let second = every_report()?;
    for (a, b) in first.iter().zip(&second) {
        let (ja, jb) = (a.to_json(), b.to_json());
        ensure(ja == jb, || format!("{} differs between runs", a.pipeline))?;
        ensure(ja.contains("\"schema\": \"1\""), || format!("{} lacks schema", a.pipeline))?;
    }
    Ok(format!("{} reports byte-identical across two runs", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("xi^3 = 4(1-g)", xi_cubed),
        ("pairing table", pairing_tables),
        ("Chern numbers", chern_numbers),
        ("fav pipeline", fav),
        ("p5 pipeline", p5),
        ("quotient check", quotient_checks),
        ("nilpotent suite", nilpotent_suite),
        ("threshold property", shokurov),
        ("KK pullback", kk),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why})", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
