//! End-to-end pipelines and the report they produce.
//!
//! ```text
//! {
//!   "schema": "1",
//!   "pipeline": string,
//!   "inputs": { .. },
//!   "checks": [ { "name", "anchor", "expected", "actual", "pass" } ],
//!   "artifacts": { .. },
//!   "warnings": [ string ]
//! }
//! ```
//!
//! Object keys inside `inputs` and `artifacts` are sorted, so equal inputs
//! give byte-identical JSON.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::chow::{
    self, cp_example_numbers, degree3, evaluate, pairing_table, shokurov_threshold_check, ChowError,
    CurveClass, DivisorClassP, RuledSurfaceParams,
};
use crate::contact::{
    self, eigenvalue_relation_check, omega_transform, quotient_verdict, theta_invariant, ContactError,
    LinearContactAction, OmegaTransform, QuotientVerdict,
};
use crate::nilpotent::{
    fav_flips, kk_pullback_check, orbit_poset, stratification_parity, verify_homogeneity,
    verify_image_on_samples, verify_invariance, NilpotentError, NilpotentMap, SamplePlan, KK_TOLERANCE,
    PHI_ORBIT_LABEL,
};
use crate::toric::pipelines::{FavPipeline, P5Pipeline};
use crate::toric::{Discrepancy, ToricError};

pub const SCHEMA_VERSION: &str = "1";

/// Largest `n` accepted by [`fav_report`].
pub const FAV_MAX_N: usize = 6;

/// Largest `n` accepted by [`nilpotent_report`].
pub const NILPOTENT_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("{name} = {value} outside {range}")]
    Range {
        name: &'static str,
        value: i64,
        range: &'static str,
    },
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub schema: String,
    pub pipeline: String,
    pub inputs: Map<String, Value>,
    pub checks: Vec<Check>,
    pub artifacts: Map<String, Value>,
    pub warnings: Vec<String>,
}

fn to_value<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn int(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn q(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn qi(x: i64) -> Value {
    Value::String(x.to_string())
}

impl PipelineReport {
    pub fn new(pipeline: &str) -> Self {
        Self {
            schema: SCHEMA_VERSION.to_string(),
            pipeline: pipeline.to_string(),
            inputs: Map::new(),
            checks: Vec::new(),
            artifacts: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), to_value(&value));
        self
    }

    pub fn artifact(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.artifacts.insert(key.to_string(), to_value(&value));
        self
    }

    /// A check passing when `actual` serializes to the same JSON as `expected`.
    pub fn check(&mut self, name: &str, anchor: &str, expected: impl Serialize, actual: impl Serialize) -> &mut Self {
        let (expected, actual) = (to_value(&expected), to_value(&actual));
        let pass = expected == actual;
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            expected,
            actual,
            pass,
        });
        self
    }

    /// A check whose pass condition is not plain equality.
    pub fn check_with(
        &mut self,
        name: &str,
        anchor: &str,
        expected: impl Serialize,
        actual: impl Serialize,
        pass: bool,
    ) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            expected: to_value(&expected),
            actual: to_value(&actual),
            pass,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.pipeline);
        for (k, v) in &self.inputs {
            out += &format!("  {k} = {v}\n");
        }
        for w in &self.warnings {
            out += &format!("warning: {w}\n");
        }
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            out += &format!("[{mark}] {}: expected {}, got {}\n", c.name, c.expected, c.actual);
            out += &format!("       \"{}\"\n", c.anchor);
        }
        for (k, v) in &self.artifacts {
            let s = v.to_string();
            if s.len() <= 120 {
                out += &format!("{k}: {s}\n");
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out += &format!("{passed}/{} checks passed\n", self.checks.len());
        out
    }
}

fn discrepancy_json(ds: &[Discrepancy]) -> Value {
    Value::Array(
        ds.iter()
            .map(|d| json!({ "ray": d.ray.iter().map(int).collect::<Vec<_>>(), "value": q(&d.value) }))
            .collect(),
    )
}

pub fn fav_report(n: usize) -> Result<PipelineReport, ReportError> {
    if !(1..=FAV_MAX_N).contains(&n) {
        return Err(ReportError::Range {
            name: "n",
            value: n as i64,
            range: "1..=6",
        });
    }
    let p = FavPipeline::run(n)?;
    let mut r = PipelineReport::new("fav");
    r.input("n", n);
    let index = BigInt::from(1u32) << n;
    r.check("sublattice_index", "G \\simeq \\mathbb{Z}_2^n", int(&index), int(&p.index))
        .check(
            "cokernel_invariants",
            "G \\simeq \\mathbb{Z}_2^n",
            vec![2; n],
            p.cokernel.iter().map(int).collect::<Vec<_>>(),
        )
        .check(
            "quotient_rays_closed_form",
            "The fan of $X$ is spanned by the following $2n+2$ rays",
            true,
            p.rays_match_closed_form(),
        )
        .check(
            "singular_cone_count",
            "$\\sigma_i$ for $i=0,...,n$ (mind the case $i=0$)",
            n + 1,
            p.singular_cones.len(),
        )
        .check(
            "singular_cones_two_dimensional",
            "it corresponds to a codimension 2 singular subvariety of $X$",
            vec![2; n + 1],
            p.singular_cones.iter().map(Vec::len).collect::<Vec<_>>(),
        )
        .check(
            "exceptional_rays_are_midpoints",
            "$\\rho'_{E_i} = \\frac{1}{2}(\\rho'_i +\\rho'_{i+n+1})$",
            true,
            p.exceptional_rays_are_midpoints,
        )
        .check(
            "resolution_crepant",
            "the resolution is crepant",
            true,
            p.is_crepant(),
        )
        .check(
            "resolved_fan_smooth",
            "we obtain a smooth projective toric variety",
            Vec::<Vec<usize>>::new(),
            &p.resolved_singular_cones,
        )
        .check(
            "anticanonical_cartier",
            "$-K_X$ is a Cartier divisor",
            true,
            p.anticanonical_cartier,
        )
        .check(
            "anticanonical_divisible_by_n_plus_1",
            "$\\mathcal{O}(-K_X) = L^{\\otimes (n+1)}$",
            true,
            p.anticanonical_divisible,
        )
        .check(
            "quotient_fano",
            "is Fano for every possible dimension",
            true,
            p.quotient_fano,
        )
        .check(
            "resolved_anticanonical_nef_not_ample",
            "it admits a crepant contraction",
            [true, false],
            [p.resolved_anticanonical_nef, p.resolved_anticanonical_ample],
        )
        .check(
            "projection_to_product_of_lines",
            "the image of $\\Sigma'$ is a product fan for $n+1$ copies of $\\mathbb{P}^1$",
            true,
            p.projection_to_lines,
        )
        .check(
            "kernel_contains_projective_space",
            "The kernel of the lattice projection contains a standard fan of $\\mathbb{P}^{n}$",
            true,
            p.kernel_contains_projective_space,
        );
    r.artifact("quotient_fan", &p.quotient)
        .artifact("resolved_fan", &p.resolved)
        .artifact("singular_cones", &p.singular_cones)
        .artifact(
            "exceptional_rays",
            p.exceptional_rays
                .iter()
                .map(|v| v.iter().map(int).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
        .artifact("discrepancies", discrepancy_json(&p.discrepancies))
        .artifact("anticanonical_divisor", p.quotient.canonical_divisor().neg());
    Ok(r)
}

pub fn p5_report() -> Result<PipelineReport, ReportError> {
    let p = P5Pipeline::run()?;
    let mut r = PipelineReport::new("p5");
    let positive_discrepancy = p.full_discrepancies.iter().any(|d| d.value > BigRational::from_integer(0.into()));
    let verdict = quotient_verdict(&contact::p5_action())?;
    r.check(
        "contact_form_invariant",
        "it preserves the twisted form",
        to_value(&QuotientVerdict::InducedContactStructure),
        &verdict,
    )
    .check(
        "fixed_component_dimensions",
        "$x_1 = x_4 = 0$ ($\\mathbb{P}^3$) and $x_0 =x_2 =x_3= x_5 = 0$ ($\\mathbb{P}^1$)",
        [3, 1],
        p.singular_loci.iter().map(|l| l.dimension).collect::<Vec<_>>(),
    )
    .check(
        "fixed_component_equations",
        "$x_1 = x_4 = 0$ ($\\mathbb{P}^3$) and $x_0 =x_2 =x_3= x_5 = 0$ ($\\mathbb{P}^1$)",
        vec![vec![1, 4], vec![0, 2, 3, 5]],
        p.singular_loci
            .iter()
            .map(|l| l.vanishing_coordinates.clone())
            .collect::<Vec<_>>(),
    )
    .check(
        "full_resolution_smooth",
        "the resulting smooth variety $\\widetilde{X}$",
        true,
        p.full_smooth,
    )
    .check(
        "full_resolution_crepant",
        "has no chance of being contact",
        json!({ "crepant": false, "positive_discrepancy": true }),
        json!({ "crepant": p.full_crepant(), "positive_discrepancy": positive_discrepancy }),
    )
    .check(
        "full_resolution_anticanonical_divisible_by_3",
        "not divisible by 3 in the class group",
        false,
        p.full_anticanonical_divisible_by_3,
    )
    .check(
        "partial_resolution_crepant",
        "is crepant, so it is another projective contact variety",
        true,
        p.partial_crepant(),
    )
    .check(
        "partial_resolution_anticanonical_divisible_by_3",
        "$\\mathcal{O}(-K_X) = L^{\\otimes (n+1)}$",
        true,
        p.partial_anticanonical_divisible_by_3,
    );
    r.artifact("quotient_fan", &p.quotient)
        .artifact("full_resolution_fan", &p.full)
        .artifact("partial_resolution_fan", &p.partial)
        .artifact("full_discrepancies", discrepancy_json(&p.full_discrepancies))
        .artifact("partial_discrepancies", discrepancy_json(&p.partial_discrepancies))
        .artifact(
            "singular_loci",
            p.singular_loci
                .iter()
                .map(|l| json!({ "cone": l.cone, "dimension": l.dimension, "vanishing_coordinates": l.vanishing_coordinates }))
                .collect::<Vec<_>>(),
        );
    Ok(r)
}

fn table_json(t: &[[BigRational; 3]; 3]) -> Value {
    Value::Array(t.iter().map(|row| Value::Array(row.iter().map(q).collect())).collect())
}

pub fn threefold_report(g: i64, e: i64, a: u64) -> Result<PipelineReport, ReportError> {
    let p = RuledSurfaceParams::new(g, e)?;
    let mut r = PipelineReport::new("threefold");
    r.input("g", g).input("e", e).input("a", a);
    r.warnings = p.warnings();

    let xi = DivisorClassP::from_i64(0, 0, 1);
    let (c1, c2) = chow::chern_classes(&p);
    let c1_sq = chow::surface_mul(&c1, &c1, &p)?.cpt;
    let table = pairing_table(&p);
    let printed = [[0, 1, 0], [1, -e, 0], [0, 2 - 2 * g, 1]];
    let shok = shokurov_threshold_check(&p, a);
    let a_int = i64::try_from(a).map_err(|_| ReportError::Range {
        name: "a",
        value: i64::MAX,
        range: "0..=2^63-1",
    })?;
    let [c_l, c_b, c_pi] = CurveClass::basis();

    r.check(
        "xi_cubed",
        "\\xi^3 = 4(1-g)",
        qi(4 * (1 - g)),
        q(&chow::self_intersection(&xi, &p)),
    )
    .check("c1_squared", "c_1(TS)^2 = 8(1-g)", qi(8 * (1 - g)), q(&c1_sq))
    .check(
        "riemann_roch",
        "12(1+ p_a) = c_1(TS)^2 + c_2(TS)",
        qi(12 * (1 - g)),
        q(&(&c1_sq + &c2.cpt)),
    )
    .check(
        "pairing_table",
        "We have the following intersection table",
        printed.map(|row| row.map(qi)),
        table_json(&table),
    )
    .check(
        "anticanonical_on_section_ruling",
        "as $K_{\\mathbb{P}(TS)} \\cdot \\sigma_*[\\ell] = 0$, the morphism is crepant",
        qi(0),
        q(&chow::pair(&DivisorClassP::anticanonical(), &c_l, &p)),
    )
    .check(
        "d_a_pairings",
        "$D_a \\cdot \\sigma_*[\\ell] = 0$ from Proposition",
        [qi(0), qi(a_int + 2 - 2 * g), qi(1)],
        [&c_l, &c_b, &c_pi].map(|c| q(&chow::pair(&DivisorClassP::d_a(a_int), c, &p))),
    )
    .check(
        "d_a_cubed",
        "D_a = a \\cdot \\pi^* \\ell + \\xi",
        qi(6 * a_int + 4 * (1 - g)),
        q(&shok.top_self_intersection),
    )
    .check_with(
        "threshold_positivity",
        "a positive integer $a$ such that $a > 3\\cdot \\max \\{ 2g-2, e\\}$",
        json!({ "threshold_ok": shok.threshold_ok, "positivity_holds": true }),
        json!({ "threshold_ok": shok.threshold_ok, "positivity_holds": shok.positivity_holds }),
        shok.positivity_holds,
    );

    if (g, e) == (1, 0) {
        let cp = cp_example_numbers();
        r.check(
            "elliptic_xi_cubed",
            "$\\xi^3 =0$",
            qi(0),
            q(&cp.xi_cubed),
        )
        .check(
            "elliptic_anticanonical_pairings",
            "two rays lying on the hyperplane $K_{\\mathbb{P}(TS)} = 0$",
            [qi(0), qi(0), qi(2)],
            cp.anticanonical_pairings.each_ref().map(q),
        );
        r.artifact("elliptic_example", &cp);
    }
    r.artifact("pairing_table", table_json(&table))
        .artifact("shokurov", &shok)
        .artifact("c1", c1.to_string())
        .artifact("c2", c2.to_string());
    Ok(r)
}

/// What the caller expects `quotient_report` to conclude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictExpectation {
    Induced,
    Fails,
}

pub fn quotient_report(
    action: &LinearContactAction,
    source: &str,
    expect: Option<VerdictExpectation>,
) -> Result<PipelineReport, ReportError> {
    let verdict = quotient_verdict(action)?;
    let amb = action.ambient();
    let mut r = PipelineReport::new("quotient-check");
    r.input("source", source).input("n", action.n());

    let transforms = action
        .generators()
        .iter()
        .map(|g| omega_transform(g, amb))
        .collect::<Result<Vec<_>, _>>()?;
    let preserves_distribution = transforms.iter().all(|t| *t != OmegaTransform::NonScalar);

    let mut relations = Vec::new();
    let mut relations_hold = true;
    for (i, g) in action.elements().iter().enumerate().skip(1) {
        if !g.is_diagonal() {
            continue;
        }
        let invariant = theta_invariant(g, amb)?;
        for axis in 0..amb.dim() {
            let rel = eigenvalue_relation_check(g, amb, axis)?;
            if invariant {
                relations_hold &= rel.holds;
            }
            relations.push(json!({ "element": i, "theta_invariant": invariant, "relation": rel }));
        }
    }

    if preserves_distribution {
        let table = action.fixed_component_table()?;
        let min = match action.min_fixed_codimension() {
            Ok(c) => Some(c),
            Err(ContactError::NoNonIdentity) => None,
            Err(e) => return Err(e.into()),
        };
        r.check_with(
            "fixed_codimension_at_least_2",
            "its codimension in $X$ is at least 2",
            json!({ "min_codimension_at_least": 2 }),
            json!({ "min_codimension": min }),
            min.is_none_or(|c| c >= 2),
        );
        r.artifact("fixed_components", table);
    } else {
        r.warnings
            .push("the group does not preserve the contact distribution; fixed-locus checks skipped".into());
    }
    r.check(
        "eigenvalue_relation_on_invariant_elements",
        "$\\forall_{g \\in G}$ $g^* \\vartheta = \\vartheta$",
        true,
        relations_hold,
    );
    if let Some(want) = expect {
        let expected = match want {
            VerdictExpectation::Induced => "InducedContactStructure",
            VerdictExpectation::Fails => "Fails",
        };
        let got = match verdict {
            QuotientVerdict::InducedContactStructure => "InducedContactStructure",
            QuotientVerdict::Fails { .. } => "Fails",
        };
        r.check(
            "verdict",
            "The quotient $X/G$ has the induced contact structure $(F',L', \\vartheta')$ if and only if",
            expected,
            got,
        );
    }
    r.artifact("verdict", &verdict)
        .artifact("group_order", action.order())
        .artifact("omega_transforms", &transforms)
        .artifact("eigenvalue_relations", relations);
    Ok(r)
}

/// Which part of [`nilpotent_report`] to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilpotentTarget {
    /// Orbit poset of `sl(2)^k` only.
    Poset(usize),
    /// Map checks for `psi` on `C^{2n+2}` and `phi`, the pullback check, and
    /// the poset for `k = n + 1`.
    Maps(usize),
}

fn poset_checks(r: &mut PipelineReport, k: usize) -> Result<(), ReportError> {
    let poset = orbit_poset(k)?;
    let parity = stratification_parity(k)?;
    r.check("poset_size", "Codimensions of the strata are even.", 1u64 << k, poset.len())
        .check(
            "covering_pairs",
            "Codimensions of the strata are even.",
            k << (k - 1),
            poset.covers().count(),
        )
        .check(
            "closure_codimensions_even",
            "Codimensions of the strata are even.",
            true,
            parity.all_even,
        )
        .check(
            "closure_codimension_formula",
            "Codimensions of the strata are even.",
            true,
            parity.formula_holds,
        );
    let mut by_weight = vec![0u64; k + 1];
    for m in 0..poset.len() as u32 {
        by_weight[m.count_ones() as usize] += 1;
    }
    let dims: Vec<usize> = (0..=k).map(|w| poset.dim((1u32 << w) - 1)).collect();
    r.artifact(
        "poset",
        json!({ "k": k, "size": poset.len(), "orbits_by_weight": by_weight, "dimension_by_weight": dims }),
    )
    .artifact("parity", parity);
    Ok(())
}

pub fn nilpotent_report(target: NilpotentTarget, plan: &SamplePlan) -> Result<PipelineReport, ReportError> {
    let mut r = PipelineReport::new("nilpotent");
    let all_true = json!({ "traceless": true, "algebra_membership": true, "rank_le_1": true, "nilpotent": true });
    match target {
        NilpotentTarget::Poset(k) => {
            r.input("k", k);
            poset_checks(&mut r, k)?;
        }
        NilpotentTarget::Maps(n) => {
            if !(1..=NILPOTENT_MAX_N).contains(&n) {
                return Err(ReportError::Range {
                    name: "n",
                    value: n as i64,
                    range: "1..=6",
                });
            }
            r.input("n", n)
                .input("samples", plan.sample_count)
                .input("seed", plan.seed)
                .input("coordinate_range", plan.coordinate_range);
            let psi = NilpotentMap::Psi(n);
            let kk = kk_pullback_check(n, plan)?;
            r.check(
                "psi_image_properties",
                "the image of the affine space is precisely the nilpotent cone",
                &all_true,
                verify_image_on_samples(psi, plan)?,
            )
            .check(
                "psi_invariance",
                "the projectivization of our map is constant on orbits of this action",
                true,
                verify_invariance(psi, &fav_flips(n), plan)?,
            )
            .check(
                "psi_homogeneity",
                "the map descends to the morphism between the projectivizations",
                true,
                verify_homogeneity(psi, plan)?,
            )
            .check(
                "phi_image_properties",
                "it is traceless and of rank 1, so it is nilpotent",
                &all_true,
                verify_image_on_samples(NilpotentMap::Phi, plan)?,
            )
            .check(
                "phi_invariance",
                "it is constant on $\\mathbb{Z}_2$-orbits",
                true,
                verify_invariance(NilpotentMap::Phi, &[vec![1, 4]], plan)?,
            )
            .check(
                "phi_homogeneity",
                "we pass to the map between projective spaces",
                true,
                verify_homogeneity(NilpotentMap::Phi, plan)?,
            )
            .check_with(
                "kk_pullback",
                "by a direct computation we may verify that the symplectic forms agree",
                json!({ "max_residual_below": KK_TOLERANCE }),
                json!({ "max_residual": kk.max_residual, "constant": kk.constant }),
                kk.passed,
            );
            poset_checks(&mut r, n + 1)?;
            r.artifact("kk", &kk).artifact("phi_orbit_label", PHI_ORBIT_LABEL);
        }
    }
    Ok(r)
}

pub fn chow_report(
    expression: &str,
    g: i64,
    e: i64,
    expect_degree: Option<&BigRational>,
) -> Result<PipelineReport, ReportError> {
    let p = RuledSurfaceParams::new(g, e)?;
    let class = evaluate(&chow::parse(expression)?, &p)?;
    let mut r = PipelineReport::new("chow");
    r.input("expression", expression).input("g", g).input("e", e);
    r.warnings = p.warnings();
    let top = class.is_homogeneous_of_degree(3).then(|| degree3(&class)).transpose()?;
    if let Some(want) = expect_degree {
        r.check(
            "degree",
            "expected degree supplied by the caller",
            q(want),
            top.as_ref().map(q),
        );
    }
    r.artifact("class", class.to_string())
        .artifact("degree", class.degree())
        .artifact("degree3", top.as_ref().map(q));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fav_one_passes() {
        let r = fav_report(1).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.checks.iter().any(|c| c.anchor == "the resolution is crepant"));
        assert!(fav_report(0).is_err());
        assert!(fav_report(7).is_err());
    }

    #[test]
    fn json_has_schema() {
        let v: Value = serde_json::from_str(&fav_report(1).unwrap().to_json()).unwrap();
        assert_eq!(v["schema"], "1");
        assert_eq!(v["pipeline"], "fav");
    }

    #[test]
    fn failing_check_is_named() {
        let mut r = PipelineReport::new("t");
        r.check("a", "x", 1, 1).check("b", "y", 1, 2).check("c", "z", 1, 3);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "b");
    }

    #[test]
    fn threefold_examples() {
        let r = threefold_report(2, 3, 19).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.artifacts["shokurov"]["top_self_intersection"], "110");
        let r = threefold_report(1, 0, 1).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.artifacts.contains_key("elliptic_example"));
    }

    #[test]
    fn chow_expression() {
        let r = chow_report("xi^3", 0, 0, Some(&BigRational::from_integer(4.into()))).unwrap();
        assert!(r.passed());
        let r = chow_report("xi*l", 0, 0, None).unwrap();
        assert_eq!(r.artifacts["degree3"], Value::Null);
        assert!(chow_report("xi +", 0, 0, None).is_err());
    }
}
