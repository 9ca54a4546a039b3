//! The map `π : Gr_{dimv N̂}(M̂) → Gr_e(M)`, `F ↦ res(F)`, for each generic
//! subrepresentation type `[N]`, and its pointwise verification over `F_q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::auslander::{build_auslander, AuslanderQuiver};
use crate::error::{Error, Result};
use crate::ffla::PrimeField;
use crate::gorenstein::{gproj_catalog, is_gorenstein_projective, GprojCatalog, Verdict};
use crate::grassmannian::{
    enumerate_grassmannian, generic_types, stratify, tangent_dim, FingerprintBasis, GenericTypes, Stratum,
};
use crate::quiver::{is_one_gorenstein, BoundQuiver, DimVector};
use crate::rep::{end_dim, hom_dim, Representation, SubrepPoint};

/// Pairs `(U, F)` beyond this are not checked exhaustively for the
/// containment characterisation of the fibers.
const PAIR_LIMIT: usize = 4_000_000;

/// `res(F)`: the old-vertex components of a subrepresentation of `M̂`.
pub fn project_point(aus: &AuslanderQuiver, f: &SubrepPoint) -> SubrepPoint {
    SubrepPoint { spaces: f.spaces[..aus.base.vertex_count()].to_vec() }
}

/// `Û = Φ(U)` as a subrepresentation of `M̂ = Φ(M)`, via `Φ` of the inclusion.
pub fn lift_point(aus: &AuslanderQuiver, m: &Representation, u: &SubrepPoint) -> Result<SubrepPoint> {
    let (sub, incl) = m.subrepresentation(u)?;
    Ok(aus.phi_on_morphism(&incl, &sub, m)?.image())
}

#[derive(Clone, Debug)]
pub struct GenericTarget {
    pub label: String,
    pub module: Representation,
    /// `dimv N̂` from the Hom formula.
    pub dimv_hat: DimVector,
    /// Arrows where the Hom formula had no correction term.
    pub flagged: Vec<usize>,
}

/// The data of the desingularization over one prime field.
pub struct DesingProblem {
    pub aus: AuslanderQuiver,
    pub catalog: GprojCatalog,
    pub m: Representation,
    pub m_hat: Representation,
    pub e: DimVector,
    pub points: Vec<SubrepPoint>,
    pub strata: Vec<Stratum>,
    pub generic: GenericTypes,
    pub targets: Vec<GenericTarget>,
}

impl DesingProblem {
    pub fn new(m: &Representation, e: &DimVector, length_bound: usize, seed: u64) -> Result<DesingProblem> {
        let q: &Arc<BoundQuiver> = m.quiver();
        if !is_one_gorenstein(q)?.one_gorenstein {
            return Err(Error::Precondition("algebra is not 1-Gorenstein".into()));
        }
        let aus = build_auslander(q)?;
        let catalog = gproj_catalog(q, m.field())?;
        let report = is_gorenstein_projective(m, &catalog, seed)?;
        if report.verdict != Verdict::Yes {
            return Err(Error::Precondition(format!(
                "module is not certified Gorenstein projective ({:?})",
                report.verdict
            )));
        }
        let m_hat = aus.phi(m)?;
        let points = enumerate_grassmannian(m, e)?;
        let basis = FingerprintBasis::new(m, length_bound)?;
        let strata = stratify(m, &points, &basis, seed)?;
        let generic = generic_types(&strata);
        let mut targets = Vec::new();
        for &i in &generic.indices {
            let n = &strata[i].module;
            let (dimv_hat, flagged) = aus.dimv_phi(n)?;
            targets.push(GenericTarget { label: strata[i].name(), module: n.clone(), dimv_hat, flagged });
        }
        Ok(DesingProblem { aus, catalog, m: m.clone(), m_hat, e: e.clone(), points, strata, generic, targets })
    }

    pub fn field(&self) -> PrimeField {
        self.m.field()
    }

    fn stratum_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.points.len()];
        for (s, st) in self.strata.iter().enumerate() {
            for &i in &st.members {
                out[i] = s;
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub base: SubrepPoint,
    pub stratum: String,
    pub actual: usize,
    pub predicted: usize,
}

impl FiberReport {
    pub fn matches(&self) -> bool {
        self.actual == self.predicted
    }
}

/// For every `U ∈ Gr_e(M)`: the size of `π^{-1}(U)` in `Gr_{dimv N̂}(M̂)`
/// against `|Gr_{dimv N̂ − dimv Û}(M̂/Û)|`.
pub fn fiber_check(problem: &DesingProblem, target: &GenericTarget, source: &[SubrepPoint]) -> Result<Vec<FiberReport>> {
    let aus = &problem.aus;
    let mut actual: HashMap<SubrepPoint, usize> = HashMap::new();
    for f in source {
        *actual.entry(project_point(aus, f)).or_default() += 1;
    }
    let stratum_of = problem.stratum_of();
    problem
        .points
        .par_iter()
        .enumerate()
        .map(|(i, u)| {
            let u_hat = lift_point(aus, &problem.m, u)?;
            let predicted = match target.dimv_hat.checked_sub(&u_hat.dim_vector()) {
                None => 0,
                Some(rest) => {
                    let (quot, _) = problem.m_hat.quotient(&u_hat)?;
                    enumerate_grassmannian(&quot, &rest)?.len()
                }
            };
            Ok(FiberReport {
                base: u.clone(),
                stratum: problem.strata[stratum_of[i]].name(),
                actual: actual.get(u).copied().unwrap_or(0),
                predicted,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct TargetReport {
    pub q: u64,
    pub label: String,
    pub dimv_hat: String,
    pub x_points: usize,
    pub y_points: usize,
    /// Tangent dimension → number of points, over `Gr_e(M)` and over `Y`.
    pub x_tangents: BTreeMap<usize, usize>,
    pub y_tangents: BTreeMap<usize, usize>,
    pub fibers: Vec<FiberReport>,
    pub checks: Vec<CheckResult>,
    pub experiment: Option<String>,
}

impl TargetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Default)]
pub struct DesingReport {
    pub targets: Vec<TargetReport>,
}

impl DesingReport {
    pub fn passed(&self) -> bool {
        self.targets.iter().all(TargetReport::passed)
    }

    pub fn render(&self, show_fibers: bool) -> String {
        let mut s = String::new();
        for t in &self.targets {
            let _ = writeln!(s, "[N] = {} at q={}: dimv N^ = {}", t.label, t.q, t.dimv_hat);
            let _ = writeln!(s, "  X points = {}, Y points = {}", t.x_points, t.y_points);
            let _ = writeln!(s, "  X tangent dims: {}", histogram(&t.x_tangents));
            let _ = writeln!(s, "  Y tangent dims: {}", histogram(&t.y_tangents));
            for c in &t.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(s, "  ({}) {mark}: {}", c.name, c.detail);
            }
            s.push_str("  (ii)/(iii) properness and closedness: not checkable pointwise, excluded\n");
            if let Some(x) = &t.experiment {
                let _ = writeln!(s, "  experiment: {x}");
            }
            if show_fibers {
                let _ = writeln!(s, "  {:<28} {:>6} {:>9}  base point", "stratum", "fiber", "predicted");
                for f in &t.fibers {
                    let _ = writeln!(s, "  {:<28} {:>6} {:>9}  {}", f.stratum, f.actual, f.predicted, f.base.display());
                }
            }
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "pass" } else { "FAIL" });
        s
    }
}

fn histogram(h: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(t, n)| format!("{t}:{n}")).collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

fn tangent_histogram(m: &Representation, pts: &[SubrepPoint]) -> Result<BTreeMap<usize, usize>> {
    let ts: Vec<usize> = pts.par_iter().map(|u| tangent_dim(m, u)).collect::<Result<_>>()?;
    let mut h = BTreeMap::new();
    for t in ts {
        *h.entry(t).or_default() += 1;
    }
    Ok(h)
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name, passed, detail }
}

/// Runs checks (a)–(e) for one generic type over the problem's field.
pub fn verify_target(problem: &DesingProblem, target: &GenericTarget, experiment: bool) -> Result<TargetReport> {
    let aus = &problem.aus;
    let m_hat = &problem.m_hat;
    let y = enumerate_grassmannian(m_hat, &target.dimv_hat)?;
    let x_tangents = tangent_histogram(&problem.m, &problem.points)?;
    let y_tangents = tangent_histogram(m_hat, &y)?;
    let mut checks = Vec::new();

    // N̂ inside M̂ through Φ of an embedding of N
    let rep_point = problem
        .strata
        .iter()
        .find(|s| s.name() == target.label)
        .map(|s| s.representative.clone())
        .expect("generic stratum");
    let n_hat_point = lift_point(aus, &problem.m, &rep_point)?;
    let (n_hat, _) = m_hat.subrepresentation(&n_hat_point)?;
    let (quot, _) = m_hat.quotient(&n_hat_point)?;
    let hom_quot = hom_dim(&n_hat, &quot)?;
    let hom_m = hom_dim(&n_hat, m_hat)?;
    let end = end_dim(&n_hat);

    // (a) smoothness evidence
    let constant = y_tangents.len() <= 1;
    let value_ok = y_tangents.keys().all(|&t| t == hom_quot);
    checks.push(check(
        "a",
        constant && value_ok,
        format!("tangent dims on Y {}; dim Hom(N^, M^/N^) = {hom_quot}", histogram(&y_tangents)),
    ));

    let fibers = fiber_check(problem, target, &y)?;
    let in_stratum: Vec<&FiberReport> = fibers.iter().filter(|f| f.stratum == target.label).collect();
    // (b) image contains the stratum
    let missing = in_stratum.iter().filter(|f| f.actual == 0).count();
    checks.push(check(
        "b",
        missing == 0,
        format!("{} of {} points of S_[N] in the image", in_stratum.len() - missing, in_stratum.len()),
    ));
    // (c) one-to-one over the stratum
    let not_one = in_stratum.iter().filter(|f| f.actual != 1).count();
    checks.push(check("c", not_one == 0, format!("{not_one} points of S_[N] with fiber size other than 1")));

    // (d) fiber sizes, projection identities, containment criterion
    let mismatched = fibers.iter().filter(|f| !f.matches()).count();
    let total: usize = fibers.iter().map(|f| f.actual).sum();
    let mut roundtrip_ok = true;
    let mut containment_ok = true;
    let lifts: Vec<SubrepPoint> =
        problem.points.par_iter().map(|u| lift_point(aus, &problem.m, u)).collect::<Result<_>>()?;
    for (u, uh) in problem.points.iter().zip(&lifts) {
        roundtrip_ok &= project_point(aus, uh) == *u;
    }
    let pairs_checked = problem.points.len().saturating_mul(y.len()) <= PAIR_LIMIT;
    if pairs_checked {
        containment_ok = y.par_iter().all(|f| {
            let pf = project_point(aus, f);
            problem.points.iter().zip(&lifts).all(|(u, uh)| f.contains(uh) == (pf == *u))
        });
    }
    let mut detail = format!("{mismatched} mismatches over {} base points; Σ fibers = {total} of {} Y points", fibers.len(), y.len());
    detail.push_str(if roundtrip_ok { "; π(Û) = U for all U" } else { "; π(Û) ≠ U somewhere" });
    if pairs_checked {
        detail.push_str(if containment_ok { "; Û ⊂ F ⇔ π(F) = U" } else { "; containment criterion fails" });
    }
    checks.push(check("d", mismatched == 0 && total == y.len() && roundtrip_ok && containment_ok, detail));

    // (e) stratum dimension identity
    checks.push(check(
        "e",
        hom_quot + end == hom_m,
        format!("dim Hom(N^, M^/N^) = {hom_quot}, dim Hom(N^, M^) - dim End(N^) = {}", hom_m as i64 - end as i64),
    ));
    if !target.flagged.is_empty() {
        checks.push(check("dimv", false, format!("{} cyclic arrows without a relation predecessor", target.flagged.len())));
    }
    let phi_dims = aus.phi(&target.module)?.dim_vector();
    checks.push(check(
        "dimv",
        phi_dims == target.dimv_hat && n_hat.dim_vector() == target.dimv_hat,
        format!("Hom formula {} vs dims Φ(N) {}", target.dimv_hat.compact(), phi_dims.compact()),
    ));

    let experiment = if experiment { Some(probe_components(aus, m_hat, &y)?) } else { None };
    Ok(TargetReport {
        q: problem.field().order(),
        label: target.label.clone(),
        dimv_hat: target.dimv_hat.display(&aus.gamma),
        x_points: problem.points.len(),
        y_points: y.len(),
        x_tangents,
        y_tangents,
        fibers,
        checks,
        experiment,
    })
}

/// Irreducibility probe: stratify `Y` and ask whether one stratum lies below
/// all others in the Hom order.
fn probe_components(_aus: &AuslanderQuiver, m_hat: &Representation, y: &[SubrepPoint]) -> Result<String> {
    let basis = FingerprintBasis::new(m_hat, 4)?;
    let strata = stratify(m_hat, y, &basis, 0)?;
    let g = generic_types(&strata);
    let unique = g.indices.len() == 1;
    Ok(format!(
        "Y has {} fingerprint strata; single minimal stratum: {}",
        strata.len(),
        if unique { "yes" } else { "no" }
    ))
}

/// Builds the problem at each prime and verifies every generic type.
pub fn verify_desingularization<F>(
    build: F,
    e: &DimVector,
    primes: &[u64],
    length_bound: usize,
    seed: u64,
    experiment: bool,
) -> Result<DesingReport>
where
    F: Fn(PrimeField) -> Result<Representation>,
{
    let mut report = DesingReport::default();
    for &p in primes {
        let m = build(PrimeField::new(p as u32)?)?;
        let problem = DesingProblem::new(&m, e, length_bound, seed)?;
        for t in &problem.targets {
            report.targets.push(verify_target(&problem, t, experiment)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_module;
    use crate::samples;

    fn n3_module(f: PrimeField) -> Result<Representation> {
        let q = Arc::new(samples::n3());
        parse_module(samples::N3_MODULE_MATRICES, &q, f)
    }

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn n3_fibers() {
        let m = n3_module(fp(2)).unwrap();
        let e = DimVector(vec![2, 0, 1]);
        let problem = DesingProblem::new(&m, &e, 6, 0).unwrap();
        assert_eq!(problem.targets.len(), 1);
        let t = &problem.targets[0];
        assert_eq!(t.label, "P3+S1");
        assert_eq!(t.dimv_hat.display(&problem.aus.gamma), "2e_1 + e_3 + e_@gamma");
        let r = verify_target(&problem, t, false).unwrap();
        assert!(r.passed(), "{}", DesingReport { targets: vec![r.clone()] }.render(true));
        assert_eq!(r.y_points, 27);
        assert_eq!(r.y_tangents, BTreeMap::from([(3, 27)]));
        let singular = r.fibers.iter().find(|f| f.actual == 3).unwrap();
        assert_eq!(tangent_dim(&problem.m, &singular.base).unwrap(), 4);
        assert!(r.fibers.iter().all(|f| f.actual == 1 || f.actual == 3));
    }

    #[test]
    fn projection_of_lift_and_zero() {
        let m = n3_module(fp(3)).unwrap();
        let aus = build_auslander(m.quiver()).unwrap();
        let z = SubrepPoint::zero(&m);
        assert_eq!(lift_point(&aus, &m, &z).unwrap(), SubrepPoint::zero(&aus.phi(&m).unwrap()));
        for u in enumerate_grassmannian(&m, &DimVector(vec![1, 0, 1])).unwrap() {
            assert_eq!(project_point(&aus, &lift_point(&aus, &m, &u).unwrap()), u);
        }
    }

    #[test]
    fn degenerate_dimension_vectors_pass() {
        let e0 = DimVector(vec![0, 0, 0]);
        let r = verify_desingularization(n3_module, &e0, &[2], 4, 0, false).unwrap();
        assert!(r.passed());
        let full = DimVector(vec![3, 0, 3]);
        let r = verify_desingularization(n3_module, &full, &[2], 4, 0, true).unwrap();
        assert!(r.passed());
        assert_eq!(r.targets[0].fibers.len(), 1);
        assert_eq!(r.targets[0].fibers[0].actual, 1);
    }

    #[test]
    fn non_gorenstein_projective_is_rejected() {
        let q = Arc::new(samples::n3());
        let f = PrimeField::new(2).unwrap();
        let i = crate::rep::injective_module(&q, f, 0).unwrap();
        let cat = gproj_catalog(&q, f).unwrap();
        if is_gorenstein_projective(&i, &cat, 0).unwrap().verdict != Verdict::Yes {
            assert!(matches!(DesingProblem::new(&i, &i.dim_vector(), 4, 0), Err(Error::Precondition(_))));
        }
    }
}
