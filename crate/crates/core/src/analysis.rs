//! Structural classification of hypersurfaces and censuses of point counts
//! over all normalized forms of a given degree.
//!
//! The census walks the same canonical message space as the code spectra
//! (first nonzero coefficient 1, so each form appears exactly once up to
//! scalar) and cross-checks the observed maxima against the bounds module.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{second_max_points, serre_bound, third_weight_curve, zanella_bound};
use crate::enumerate::{CollectExact, EnumOptions, Enumerator, Tally};
use crate::error::{Error, Result};
use crate::geometry::{
    hyperplanes, line_intersection, projective_points, LinearForm, ProjectivePoint,
};
use crate::gf::{Field, FieldSpec};
use crate::poly::{
    binom, linear_factors, monomial_basis, zero_count, Form, LinearFactorization, Space,
};

/// Structural features detected by [`classify`].
///
/// The three hyperplane tags partition nonzero forms by how much of the form
/// splits into linear factors: all of it (`IsUnionOfLines`), none of it
/// (`LineFree`), or a proper part (`ContainsHyperplane`). `Pencil` and
/// `NearPencil` refine `IsUnionOfLines` for plane curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// Plane curve: distinct lines, all through one common point.
    Pencil,
    /// Plane curve: d ≥ 3 distinct lines, exactly d−1 through a common point.
    NearPencil,
    /// The form is a product of linear forms (with multiplicity).
    IsUnionOfLines,
    /// Some hyperplane divides the form, but a nonlinear part remains.
    ContainsHyperplane,
    /// No hyperplane divides the form.
    LineFree,
}

/// Truth value of one of the four structural conditions on a plane curve
/// that splits as s lines plus a line-free part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionStatus {
    Holds,
    Fails,
    NotApplicable,
}

/// The four conditions under which a curve of degree d with s linear factors
/// can compete for the second weight without being a union of lines:
/// degree window on the residual, maximal residual count, concurrent linear
/// part, and rational disjointness of the two parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CConditions {
    /// 2 ≤ d − s ≤ d − 1.
    pub c1: ConditionStatus,
    /// The line-free part N has exactly (d−s−1)q + 1 rational points.
    pub c2: ConditionStatus,
    /// The s lines are concurrent.
    pub c3: ConditionStatus,
    /// The lines and N share no rational point.
    pub c4: ConditionStatus,
}

/// Output of [`classify`]: degree, rational point count, the split into
/// linear and line-free parts, and the structural tags.
#[derive(Debug, Clone, Serialize)]
pub struct CurveClassification {
    pub degree: u32,
    pub points: u64,
    /// Number of linear factors, with multiplicity.
    pub s: u32,
    /// Degree of the residual after all linear factors are removed.
    pub linefree_degree: u32,
    pub tags: BTreeSet<Tag>,
    /// Filled for plane curves only.
    pub c_conditions: Option<CConditions>,
}

impl CurveClassification {
    /// Short label for histogram keys: the most specific tag, or the
    /// (s, residual-degree) split for mixed forms.
    pub fn label(&self) -> String {
        if self.tags.contains(&Tag::Pencil) {
            "pencil".into()
        } else if self.tags.contains(&Tag::NearPencil) {
            "near-pencil".into()
        } else if self.tags.contains(&Tag::IsUnionOfLines) {
            "union-of-lines".into()
        } else if self.tags.contains(&Tag::LineFree) {
            "line-free".into()
        } else {
            format!("s{}-linefree{}", self.s, self.linefree_degree)
        }
    }
}

// Distinct hyperplanes in P² always meet; the factor lists we feed in hold
// distinct lines, so the intersection is well defined.
fn concurrent(field: &FieldSpec, lines: &[&LinearForm]) -> bool {
    if lines.len() <= 1 {
        return true;
    }
    let center =
        line_intersection(field, lines[0], lines[1]).expect("distinct plane lines meet");
    lines.iter().all(|l| l.contains(field, &center))
}

fn is_near_pencil(field: &FieldSpec, lines: &[&LinearForm]) -> bool {
    let d = lines.len();
    if d < 3 {
        return false;
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let p = line_intersection(field, lines[i], lines[j])
                .expect("distinct plane lines meet");
            if lines.iter().filter(|l| l.contains(field, &p)).count() == d - 1 {
                return true;
            }
        }
    }
    false
}

fn c_conditions_for(form: &Form, fac: &LinearFactorization) -> Result<CConditions> {
    use ConditionStatus::*;
    let field = form.field();
    let q = field.q() as u64;
    let d = form.degree() as u64;
    let s = fac.s() as u64;
    let r = d - s;

    let c1 = if 2 <= r && r + 1 <= d { Holds } else { Fails };
    let c2 = if r == 0 {
        NotApplicable
    } else if zero_count(&fac.residual, Space::Projective)? == (r - 1) * q + 1 {
        Holds
    } else {
        Fails
    };
    let c3 = if s == 0 {
        NotApplicable
    } else {
        let lines: Vec<&LinearForm> = fac.linear_part.iter().map(|(l, _)| l).collect();
        if concurrent(field, &lines) {
            Holds
        } else {
            Fails
        }
    };
    let c4 = if s == 0 || r == 0 {
        NotApplicable
    } else {
        let mut disjoint = true;
        for p in projective_points(field, 2) {
            let on_lines = fac.linear_part.iter().any(|(l, _)| l.contains(field, &p));
            if on_lines && fac.residual.evaluate(p.coords())?.value() == 0 {
                disjoint = false;
                break;
            }
        }
        if disjoint {
            Holds
        } else {
            Fails
        }
    };
    Ok(CConditions { c1, c2, c3, c4 })
}

/// Classify a nonzero homogeneous form: count its rational points, split off
/// the linear factors, and attach structural tags. The pencil tags apply to
/// plane curves only; the hyperplane tags apply in any dimension.
pub fn classify(form: &Form) -> Result<CurveClassification> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !form.homogeneous() {
        return Err(Error::DomainViolation(
            "classification expects a homogeneous form".into(),
        ));
    }
    if form.degree() == 0 {
        return Err(Error::DomainViolation(
            "classification expects positive degree".into(),
        ));
    }
    let field = form.field();
    let m = form.nvars() - 1;
    let d = form.degree();
    let points = zero_count(form, Space::Projective)?;
    let fac = linear_factors(form)?;
    let s = fac.s();
    let linefree_degree = d - s;

    let mut tags = BTreeSet::new();
    if s == 0 {
        tags.insert(Tag::LineFree);
    } else if linefree_degree == 0 {
        tags.insert(Tag::IsUnionOfLines);
    } else {
        tags.insert(Tag::ContainsHyperplane);
    }

    if m == 2 && linefree_degree == 0 {
        let all_simple = fac.linear_part.iter().all(|(_, mult)| *mult == 1);
        if all_simple {
            let lines: Vec<&LinearForm> = fac.linear_part.iter().map(|(l, _)| l).collect();
            if concurrent(field, &lines) {
                tags.insert(Tag::Pencil);
            } else if is_near_pencil(field, &lines) {
                tags.insert(Tag::NearPencil);
            }
        }
    }

    let c_conditions = if m == 2 { Some(c_conditions_for(form, &fac)?) } else { None };

    Ok(CurveClassification { degree: d, points, s, linefree_degree, tags, c_conditions })
}

/// Evaluate the four structural conditions for a plane curve.
pub fn c_conditions_check(form: &Form) -> Result<CConditions> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !form.homogeneous() || form.nvars() != 3 {
        return Err(Error::DomainViolation(
            "the structural conditions apply to plane curves".into(),
        ));
    }
    let fac = linear_factors(form)?;
    c_conditions_for(form, &fac)
}

/// Result of the hyperplane-section bound test: `a` is the largest number of
/// the given points on any single hyperplane, and any point set satisfies
/// |S| ≤ aq + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZanellaCheck {
    pub a: u64,
    pub bound: i64,
    pub holds: bool,
}

/// Check Zanella's hyperplane-section bound for an arbitrary point set in P^m.
pub fn zanella_check(field: &Field, m: u32, points: &[ProjectivePoint]) -> ZanellaCheck {
    let a = hyperplanes(field, m)
        .iter()
        .map(|h| points.iter().filter(|p| h.contains(field, p)).count() as u64)
        .max()
        .unwrap_or(0);
    let bound = zanella_bound(a, field.q() as u64);
    ZanellaCheck { a, bound, holds: points.len() as i64 <= bound }
}

/// How a census walks the form space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    /// Every normalized form of the given degree, subject to the budget.
    Exhaustive,
    /// `n_samples` draws from the same space; reproducible from `seed`
    /// independent of worker count.
    Sampled { n_samples: u64, seed: u64 },
}

/// One of the top point counts found by a census.
#[derive(Debug, Clone, Serialize)]
pub struct TopEntry {
    /// Number of rational zeros.
    pub count: u64,
    /// Number of normalized forms attaining it.
    pub tally: u64,
    /// The attaining form with the smallest canonical index.
    pub witness: Form,
}

/// One bound compared against the census outcome.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub bound: String,
    pub value: i64,
    pub ok: bool,
}

/// Census outcome: the top point counts with tallies and witnesses, plus the
/// bound checks that apply at this (q, d, m).
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub q: u64,
    pub d: u32,
    pub m: u32,
    pub mode: CensusMode,
    pub top: Vec<TopEntry>,
    pub checks: Vec<BoundCheck>,
    /// Full count → tally histogram; exported via [`CensusReport::to_csv`]
    /// rather than the JSON report.
    #[serde(skip)]
    pub histogram: BTreeMap<u64, u64>,
}

impl CensusReport {
    /// Full histogram as CSV, highest count first.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("count,tally\n");
        for (count, tally) in self.histogram.iter().rev() {
            out.push_str(&format!("{count},{tally}\n"));
        }
        out
    }
}

// Evaluation matrix of the full degree-d monomial basis at the points of P^m,
// one row per monomial in the same order Form uses for coefficients.
pub(crate) fn form_rows(field: &Field, d: u32, m: u32) -> Vec<Vec<u16>> {
    let pts = projective_points(field, m);
    monomial_basis(m as usize + 1, d, true)
        .iter()
        .map(|mono| pts.iter().map(|p| mono.eval(field, p.coords()).value()).collect())
        .collect()
}

pub(crate) fn witness_form(field: &Field, d: u32, m: u32, engine: &Enumerator, idx: u128) -> Form {
    let coeffs = engine
        .message_at(idx)
        .iter()
        .map(|&v| field.element(v as u64).expect("engine encodings are in range"))
        .collect();
    Form::new(field.clone(), m as usize + 1, d, true, coeffs)
        .expect("basis-aligned coefficient vector")
}

fn census_guard(d: u32, m: u32) -> Result<()> {
    if d == 0 || m == 0 {
        return Err(Error::DomainViolation(
            "census expects positive degree and dimension".into(),
        ));
    }
    Ok(())
}

/// Tally point counts over all normalized degree-d forms in m+1 variables
/// (or a seeded sample of them) and report the `top_k` highest counts with
/// witnesses, cross-checked against the applicable bounds.
pub fn census(
    field: &Field,
    d: u32,
    m: u32,
    mode: CensusMode,
    top_k: usize,
    opts: &EnumOptions,
) -> Result<CensusReport> {
    census_guard(d, m)?;
    let engine = Enumerator::new(field.clone(), form_rows(field, d, m))?;
    let n = engine.n();

    // count → (tally, smallest canonical index attaining it)
    let mut hist: BTreeMap<u64, (u64, u128)> = BTreeMap::new();
    match mode {
        CensusMode::Exhaustive => {
            let tally = engine.run(opts, || Tally::new(n))?;
            for (z, &c) in tally.counts.iter().enumerate() {
                if c > 0 {
                    hist.insert(z as u64, (c, tally.first_idx[z] as u128));
                }
            }
        }
        CensusMode::Sampled { n_samples, seed } => {
            let total = engine.total();
            hist = (0..n_samples)
                .into_par_iter()
                .fold(BTreeMap::new, |mut acc: BTreeMap<u64, (u64, u128)>, i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    let idx = rng.gen_range(0..total);
                    let zeros = engine.zeros_of_message(&engine.message_at(idx));
                    let entry = acc.entry(zeros as u64).or_insert((0, idx));
                    entry.0 += 1;
                    entry.1 = entry.1.min(idx);
                    acc
                })
                .reduce(BTreeMap::new, |mut a, b| {
                    for (z, (c, idx)) in b {
                        let entry = a.entry(z).or_insert((0, idx));
                        entry.0 += c;
                        entry.1 = entry.1.min(idx);
                    }
                    a
                });
        }
    }

    let top: Vec<TopEntry> = hist
        .iter()
        .rev()
        .take(top_k)
        .map(|(&count, &(tally, idx))| TopEntry {
            count,
            tally,
            witness: witness_form(field, d, m, &engine, idx),
        })
        .collect();

    let q = field.q() as u64;
    let mut checks = Vec::new();
    let serre = serre_bound(q, d as u64, m as u64);
    if serre.valid {
        let ok = top.first().map_or(true, |t| (t.count as i64) <= serre.value);
        // Exceeding the first-weight bound means the enumeration itself is
        // broken, not that a theorem failed; refuse to report.
        assert!(ok, "census found a count above the Serre bound {}", serre.value);
        checks.push(BoundCheck { bound: "serre".into(), value: serre.value, ok });
    }
    let second = second_max_points(q, d as u64, m as u64);
    if second.valid {
        let ok = top.get(1).map_or(true, |t| (t.count as i64) <= second.value);
        checks.push(BoundCheck { bound: "second".into(), value: second.value, ok });
    }
    if m == 2 {
        if let Ok(third) = third_weight_curve(q, d as u64) {
            let ok = top.get(2).map_or(true, |t| (t.count as i64) <= third.value);
            checks.push(BoundCheck { bound: "third".into(), value: third.value, ok });
        }
    }

    let histogram = hist.into_iter().map(|(z, (c, _))| (z, c)).collect();
    Ok(CensusReport { q, d, m, mode, top, checks, histogram })
}

/// Closed-form count of near-pencil forms compared against a census tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaComparison {
    /// (q² + q + 1) · q² · C(q+1, d−1).
    pub formula_count: u64,
    pub matches_tally: bool,
    /// At d = 3 the formula counts each triangle once per vertex, so it comes
    /// out at exactly three times the tally. Reported, not corrected.
    pub threefold_at_cubic: bool,
}

/// Every normalized form attaining exactly `target` points, classified.
#[derive(Debug, Clone, Serialize)]
pub struct AttainerCensus {
    pub target: u64,
    pub tally: u64,
    /// Classification label → number of attainers.
    pub histogram: BTreeMap<String, u64>,
    /// Present when the target is the second-highest plane count dq − d + 3.
    pub formula: Option<FormulaComparison>,
}

fn near_pencil_formula(q: u64, d: u64) -> Option<u64> {
    let planes = q.checked_mul(q)?.checked_add(q)?.checked_add(1)?;
    planes.checked_mul(q.checked_mul(q)?)?.checked_mul(binom(q + 1, d - 1))
}

/// Collect and classify every normalized form with exactly `target` rational
/// zeros. For the second-highest plane count the near-pencil counting formula
/// is evaluated alongside the tally.
pub fn attainer_census(
    field: &Field,
    d: u32,
    m: u32,
    target: u64,
    opts: &EnumOptions,
) -> Result<AttainerCensus> {
    census_guard(d, m)?;
    let engine = Enumerator::new(field.clone(), form_rows(field, d, m))?;
    let collected = engine.run(opts, || CollectExact::new(target as u32))?;

    let mut histogram: BTreeMap<String, u64> = BTreeMap::new();
    for &idx in &collected.indices {
        let form = witness_form(field, d, m, &engine, idx as u128);
        let class = classify(&form)?;
        debug_assert_eq!(class.points, target);
        *histogram.entry(class.label()).or_insert(0) += 1;
    }

    let q = field.q() as u64;
    let tally = collected.indices.len() as u64;
    let formula = if m == 2 && d >= 3 && (d as u64) <= q && target == (d as u64) * q - (d as u64) + 3
    {
        near_pencil_formula(q, d as u64).map(|formula_count| FormulaComparison {
            formula_count,
            matches_tally: formula_count == tally,
            threefold_at_cubic: d == 3 && formula_count == 3 * tally,
        })
    } else {
        None
    };

    Ok(AttainerCensus { target, tally, histogram, formula })
}

/// Number of lines through `p` meeting a nonsingular conic in no rational
/// point. Always at most (q+1)/2.
pub fn passant_profile(conic: &Form, p: &ProjectivePoint) -> Result<u64> {
    let field = conic.field().clone();
    let q = field.q() as u64;
    if conic.nvars() != 3 || conic.degree() != 2 || !conic.homogeneous() {
        return Err(Error::DomainViolation("expected a plane conic".into()));
    }
    // Nonsingular over F_q ⟺ q+1 rational points and no linear factor.
    if zero_count(conic, Space::Projective)? != q + 1 || linear_factors(conic)?.s() != 0 {
        return Err(Error::DomainViolation("conic is singular".into()));
    }
    if conic.evaluate(p.coords())?.value() == 0 {
        return Err(Error::PointOnConic);
    }

    let conic_pts: Vec<ProjectivePoint> = projective_points(&field, 2)
        .into_iter()
        .filter(|pt| conic.evaluate(pt.coords()).map(|v| v.value() == 0).unwrap_or(false))
        .collect();
    let passants = hyperplanes(&field, 2)
        .iter()
        .filter(|l| l.contains(&field, p))
        .filter(|l| conic_pts.iter().all(|cp| !l.contains(&field, cp)))
        .count() as u64;
    assert!(passants <= (q + 1) / 2, "passant count {passants} breaks the conic bound");
    Ok(passants)
}
