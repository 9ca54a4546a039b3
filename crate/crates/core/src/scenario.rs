//! The two bundled worked examples, run end to end: catalog, Grassmannian
//! counts and strata, generic types, the Auslander lift and the
//! desingularization checks, compared against golden expectations.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::auslander::build_auslander;
use crate::desing::{verify_desingularization, DesingReport};
use crate::error::{Error, Result};
use crate::ffla::{Polynomial, PrimeField};
use crate::gorenstein::{gproj_catalog, is_gorenstein_projective};
use crate::grassmannian::{
    counting_report, enumerate_grassmannian, generic_types, stratify, tangent_dim, CountReport, FingerprintBasis,
};
use crate::io::{parse_dim_vector, parse_module};
use crate::quiver::{cycles, is_gentle, is_one_gorenstein, parse_quiver, BoundQuiver, DimVector};
use crate::rep::Representation;
use crate::samples;

#[derive(Clone, Debug)]
pub struct Golden {
    pub catalog_size: usize,
    pub generic: &'static [&'static str],
    pub dimv_hat: &'static str,
    pub x_polynomial: Option<&'static [i64]>,
    pub x_degree: usize,
    pub y_polynomial: Option<&'static [i64]>,
    /// Point counts at `q = 2`.
    pub x_points_2: u64,
    pub y_points_2: Option<u64>,
    pub max_tangent_2: usize,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub id: &'static str,
    pub quiver: &'static str,
    pub module: &'static str,
    /// `e` in `vertex=n` form.
    pub e: &'static str,
    pub desing_primes: &'static [u64],
    /// Alternative names for the `@α` vertices used in printed figures.
    pub figure_names: &'static [(&'static str, &'static str)],
    pub golden: Golden,
}

pub fn scenarios() -> Vec<Scenario> {
    vec![
        Scenario {
            id: "5.1",
            quiver: samples::N3,
            module: samples::N3_MODULE,
            e: "1=2,3=1",
            desing_primes: &[2, 3],
            figure_names: &[],
            golden: Golden {
                catalog_size: 6,
                generic: &["P3+S1"],
                dimv_hat: "2e_1 + e_3 + e_@gamma",
                x_polynomial: Some(&[1, 2, 3, 1]),
                x_degree: 3,
                y_polynomial: Some(&[1, 3, 3, 1]),
                x_points_2: 25,
                y_points_2: Some(27),
                max_tangent_2: 4,
            },
        },
        Scenario {
            id: "5.2",
            quiver: samples::CT5,
            module: samples::CT5_MODULE,
            e: "1=2,3=1,4=2",
            desing_primes: &[2],
            figure_names: &[("@a3", "6"), ("@a1", "7"), ("@a2", "8"), ("@a4", "9"), ("@a5", "10"), ("@a6", "11")],
            golden: Golden {
                catalog_size: 11,
                generic: &["P3+S1+S4"],
                dimv_hat: "2e_1 + e_3 + 2e_4 + e_@a3 + e_@a4",
                x_polynomial: Some(&[1, 3, 6, 5, 1]),
                x_degree: 4,
                y_polynomial: None,
                x_points_2: 87,
                y_points_2: Some(99),
                max_tangent_2: 5,
            },
        },
    ]
}

pub fn find_scenario(id: &str) -> Result<Scenario> {
    scenarios()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::Precondition(format!("unknown example `{id}` (available: 5.1, 5.2)")))
}

#[derive(Clone, Debug)]
pub struct ScenarioOptions {
    /// Primes for point counting (extended automatically to the degree bound).
    pub primes: Vec<u64>,
    /// Primes for the desingularization checks; the scenario default if `None`.
    pub desing_primes: Option<Vec<u64>>,
    pub length_bound: usize,
    pub seed: u64,
    pub experiment: bool,
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub text: String,
    pub x_counts: CountReport,
    pub y_counts: CountReport,
    pub generic: Vec<String>,
    pub dimv_hat: Vec<String>,
    pub max_tangent: usize,
    pub catalog_size: usize,
    pub desing: DesingReport,
    pub golden_failures: Vec<String>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.golden_failures.is_empty() && self.desing.passed()
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Renames `e_@α` terms to the figure numbering.
pub fn figure_dimv(s: &Scenario, display: &str) -> String {
    let mut out = display.to_string();
    for (from, to) in s.figure_names {
        out = out.replace(&format!("e_{from}"), &format!("e_{to}"));
    }
    out
}

pub fn run_scenario(s: &Scenario, opts: &ScenarioOptions) -> Result<ScenarioReport> {
    let q: Arc<BoundQuiver> = Arc::new(parse_quiver(s.quiver)?);
    let e = parse_dim_vector(s.e, &q)?;
    let first = *opts.primes.first().ok_or_else(|| Error::Precondition("no primes given".into()))?;
    let f0 = PrimeField::new(first as u32)?;
    let build = |f: PrimeField| parse_module(s.module, &q, f);
    let m = build(f0)?;
    let mut t = String::new();
    let name = q.name().unwrap_or("Q");
    let _ = writeln!(t, "example {}: {name}, e = {}", s.id, e.display(&q));

    let gentle = is_gentle(&q).ok;
    let gor = is_one_gorenstein(&q)?;
    let cs = cycles(&q)?;
    let _ = writeln!(t, "gentle: {}; 1-Gorenstein: {}; cycles: {}", yes(gentle), yes(gor.one_gorenstein), cs.classes.len());
    let cat = gproj_catalog(&q, f0)?;
    let _ = writeln!(t, "Gproj catalog: {} indecomposables ({} non-projective)", cat.len(), cat.non_projective_count());
    t.push_str(&cat.table());
    let gp = is_gorenstein_projective(&m, &cat, opts.seed)?;
    let _ = writeln!(t, "M = {} (dimv {}), Gorenstein projective: {:?}", gp.describe(&cat), m.dim_vector().compact(), gp.verdict);

    // X = Gr_e(M)
    let x_counts = counting_report(build, &e, &opts.primes)?;
    t.push_str("X = Gr_e(M):\n");
    for line in x_counts.render().lines() {
        let _ = writeln!(t, "  {line}");
    }
    let points = enumerate_grassmannian(&m, &e)?;
    let basis = FingerprintBasis::new(&m, opts.length_bound)?;
    let strata = stratify(&m, &points, &basis, opts.seed)?;
    let generic = generic_types(&strata);
    let tangents: Vec<usize> = points.iter().map(|u| tangent_dim(&m, u)).collect::<Result<_>>()?;
    let max_tangent = tangents.iter().copied().max().unwrap_or(0);
    let _ = writeln!(t, "strata at q={first}:");
    let _ = writeln!(t, "  {:<20} {:>6} {:>8} {:>12}  fingerprint", "type", "points", "exp.dim", "max tangent");
    for (i, st) in strata.iter().enumerate() {
        let mt = st.members.iter().map(|&k| tangents[k]).max().unwrap_or(0);
        let mark = if generic.indices.contains(&i) { " (generic)" } else { "" };
        let _ = writeln!(
            t,
            "  {:<20} {:>6} {:>8} {:>12}  {}{mark}",
            st.name(),
            st.count,
            st.expected_dim,
            mt,
            st.fingerprint_hash()
        );
    }
    let generic_names: Vec<String> = generic.indices.iter().map(|&i| strata[i].name()).collect();
    let _ = writeln!(
        t,
        "generic subrepresentation types: {}{}",
        generic_names.join(", "),
        if generic.heuristic { " (heuristic)" } else { "" }
    );

    // Γ and the lift
    let aus = build_auslander(&q)?;
    let g = &aus.gamma;
    let _ = writeln!(
        t,
        "Auslander algebra: {} vertices, {} arrows, {} relations",
        g.vertex_count(),
        g.arrow_count(),
        g.relations().len()
    );
    let m_hat = aus.phi(&m)?;
    let _ = writeln!(t, "dimv M^ = {}", m_hat.dim_vector().display(g));
    let mut dimv_hat = Vec::new();
    let mut targets: Vec<DimVector> = Vec::new();
    for &i in &generic.indices {
        let (d, _) = aus.dimv_phi(&strata[i].module)?;
        let disp = d.display(g);
        if s.figure_names.is_empty() {
            let _ = writeln!(t, "dimv N^ for {} = {disp}", strata[i].name());
        } else {
            let _ = writeln!(t, "dimv N^ for {} = {disp} = {} in figure numbering", strata[i].name(), figure_dimv(s, &disp));
        }
        dimv_hat.push(disp);
        targets.push(d);
    }
    let first_target = targets.first().cloned().unwrap_or_else(|| DimVector::zero(g.vertex_count()));
    let y_counts = counting_report(|f| aus.phi(&build(f)?), &first_target, &opts.primes)?;
    t.push_str("Y = Gr_{dimv N^}(M^):\n");
    for line in y_counts.render().lines() {
        let _ = writeln!(t, "  {line}");
    }

    let desing_primes = opts.desing_primes.clone().unwrap_or_else(|| s.desing_primes.to_vec());
    let desing = verify_desingularization(build, &e, &desing_primes, opts.length_bound, opts.seed, opts.experiment)?;
    t.push_str("desingularization:\n");
    for line in desing.render(false).lines() {
        let _ = writeln!(t, "  {line}");
    }

    let x0 = x_counts.count_at(first).unwrap_or(0);
    let y0 = y_counts.count_at(first).unwrap_or(0);
    let _ = writeln!(t, "X points({first})={x0}, Y points({first})={y0}, singular tangent={max_tangent}");

    let gold = &s.golden;
    let mut fails = Vec::new();
    let mut expect = |ok: bool, what: String| {
        if !ok {
            fails.push(what);
        }
    };
    expect(cat.len() == gold.catalog_size, format!("catalog size {} (expected {})", cat.len(), gold.catalog_size));
    expect(
        generic_names.iter().map(String::as_str).eq(gold.generic.iter().copied()),
        format!("generic types {:?} (expected {:?})", generic_names, gold.generic),
    );
    expect(!generic.heuristic, "generic type detection is heuristic".into());
    expect(dimv_hat.first().map(String::as_str) == Some(gold.dimv_hat), format!("dimv N^ {:?}", dimv_hat));
    if let Some(c) = gold.x_polynomial {
        expect(x_counts.polynomial == Polynomial::from_integers(c), format!("X polynomial {}", x_counts.polynomial));
    }
    expect(x_counts.polynomial.degree() == Some(gold.x_degree), format!("X degree {:?}", x_counts.polynomial.degree()));
    if let Some(c) = gold.y_polynomial {
        expect(y_counts.polynomial == Polynomial::from_integers(c), format!("Y polynomial {}", y_counts.polynomial));
    }
    if first == 2 {
        expect(x0 == gold.x_points_2, format!("X points(2) = {x0}"));
        if let Some(y2) = gold.y_points_2 {
            expect(y0 == y2, format!("Y points(2) = {y0}"));
        }
        expect(max_tangent == gold.max_tangent_2, format!("max tangent {max_tangent}"));
    }
    expect(desing.passed(), "desingularization checks".into());
    if fails.is_empty() {
        t.push_str("golden: all expectations met\n");
    } else {
        for f in &fails {
            let _ = writeln!(t, "golden mismatch: {f}");
        }
    }
    Ok(ScenarioReport {
        text: t,
        x_counts,
        y_counts,
        generic: generic_names,
        dimv_hat,
        max_tangent,
        catalog_size: cat.len(),
        desing,
        golden_failures: fails,
    })
}

/// The module of a scenario over a given field.
pub fn scenario_module(s: &Scenario, f: PrimeField) -> Result<Representation> {
    let q = Arc::new(parse_quiver(s.quiver)?);
    parse_module(s.module, &q, f)
}
