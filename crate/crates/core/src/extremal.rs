//! Deterministic constructors for the configurations that attain the bounds:
//! pencils of hyperplanes, near-pencils, parallel/concurrent affine families,
//! Hermitian curves and cones, hyperbolic quadrics, and the small plane
//! arrangements behind the third-highest counts.
//!
//! Every constructor makes frozen choices (first suitable lines in the global
//! hyperplane order), computes its predicted count in closed form, and
//! asserts the measured zero count agrees before returning.

use std::fmt;

use serde::Serialize;

use crate::bounds::{geil_second, hk_elementary, serre_bound};
use crate::error::{Error, Result};
use crate::geometry::{hyperplanes, line_intersection, pencil, projective_points, LinearForm};
use crate::gf::{Field, FieldElement};
use crate::poly::{multiply, product_of_linear, zero_count, Form, Space};

/// Which attainer family a construction belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigTag {
    Pencil,
    NearPencil,
    TypeI,
    TypeII,
    PencilDoubleLine,
    Hermitian,
    HermitianSurfaceCone,
    HyperbolicQuadric,
    LinePlusConic,
    FourLinesGeneral,
    SerreHyperplanes,
}

impl fmt::Display for ConfigTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConfigTag::Pencil => "pencil",
            ConfigTag::NearPencil => "near-pencil",
            ConfigTag::TypeI => "type-i",
            ConfigTag::TypeII => "type-ii",
            ConfigTag::PencilDoubleLine => "pencil-double-line",
            ConfigTag::Hermitian => "hermitian",
            ConfigTag::HermitianSurfaceCone => "hermitian-surface-cone",
            ConfigTag::HyperbolicQuadric => "hyperbolic-quadric",
            ConfigTag::LinePlusConic => "line-plus-conic",
            ConfigTag::FourLinesGeneral => "four-lines-general",
            ConfigTag::SerreHyperplanes => "serre-hyperplanes",
        };
        f.write_str(s)
    }
}

/// A concrete form together with the count its family predicts. The
/// constructor has already verified `zero_count(form) == predicted_count`.
#[derive(Debug, Clone, Serialize)]
pub struct Construction {
    pub form: Form,
    pub predicted_count: u64,
    pub config_tag: ConfigTag,
}

fn finish(form: Form, predicted: u64, tag: ConfigTag, space: Space) -> Result<Construction> {
    let measured = zero_count(&form, space)?;
    assert_eq!(
        measured, predicted,
        "{tag} construction measured {measured} points, predicted {predicted}"
    );
    Ok(Construction { form, predicted_count: predicted, config_tag: tag })
}

/// The first two hyperplanes in frozen order (x_m = 0 and x_{m-1} = 0) span
/// the reference pencil; its members are every hyperplane through the
/// codimension-2 flat {x_{m-1} = x_m = 0}.
fn reference_pencil(field: &Field, m: u32) -> Result<Vec<LinearForm>> {
    let n = m as usize + 1;
    let mut a = vec![FieldElement::ZERO; n];
    a[n - 1] = FieldElement::ONE;
    let mut b = vec![FieldElement::ZERO; n];
    b[n - 2] = FieldElement::ONE;
    pencil(
        field,
        &LinearForm::new(field, a)?,
        &LinearForm::new(field, b)?,
    )
}

/// Union of `d` distinct hyperplanes in `P^m` through a common
/// codimension-2 flat: `d q^{m-1} + p_{m-2}` points, the maximum any
/// degree-`d` hypersurface can have.
pub fn pencil_of_lines(field: &Field, d: u64, m: u32) -> Result<Construction> {
    let q = field.q() as u64;
    if m < 2 {
        return Err(Error::DomainViolation(format!(
            "pencil construction needs m >= 2, got m = {m}"
        )));
    }
    if d < 1 {
        return Err(Error::DomainViolation("pencil construction needs d >= 1".into()));
    }
    if d > q + 1 {
        return Err(Error::TooManyHyperplanes { requested: d, max: q + 1 });
    }
    let members = reference_pencil(field, m)?;
    let parts: Vec<(LinearForm, u32)> =
        members[..d as usize].iter().cloned().map(|l| (l, 1)).collect();
    let form = product_of_linear(field, m as usize + 1, &parts, FieldElement::ONE)?;
    let predicted = serre_bound(q, d, m as u64).value as u64;
    let tag = if m == 2 { ConfigTag::Pencil } else { ConfigTag::SerreHyperplanes };
    finish(form, predicted, tag, Space::Projective)
}

/// Plane curve made of `d-1` concurrent lines plus a transversal that
/// misses their common point: `dq - d + 3` points, the second-highest
/// count for `3 <= d <= q`.
pub fn near_pencil(field: &Field, d: u64) -> Result<Construction> {
    let q = field.q() as u64;
    if d < 3 || d > q {
        return Err(Error::DomainViolation(format!(
            "near-pencil needs 3 <= d <= q, got d = {d}, q = {q}"
        )));
    }
    let members = reference_pencil(field, 2)?;
    let center = line_intersection(field, &members[0], &members[1])?;
    let transversal = hyperplanes(field, 2)
        .into_iter()
        .find(|l| !l.contains(field, &center))
        .expect("some line misses the pencil center");
    let mut parts: Vec<(LinearForm, u32)> =
        members[..d as usize - 1].iter().cloned().map(|l| (l, 1)).collect();
    parts.push((transversal, 1));
    let form = product_of_linear(field, 3, &parts, FieldElement::ONE)?;
    finish(form, d * q - d + 3, ConfigTag::NearPencil, Space::Projective)
}

/// Affine linear polynomial `x_i + c` in `m` variables.
fn affine_linear(field: &Field, m: usize, var: usize, c: FieldElement) -> Form {
    let mut f = Form::zero(field.clone(), m, 1, false);
    let mut exps = vec![0u8; m];
    exps[var] = 1;
    f.set_coeff(&exps, FieldElement::ONE).expect("variable monomial in basis");
    f.set_coeff(&vec![0u8; m], c).expect("constant monomial in basis");
    f
}

fn affine_product(field: &Field, m: usize, factors: &[Form]) -> Result<Form> {
    let mut acc = Form::zero(field.clone(), m, 0, false);
    acc.set_coeff(&vec![0u8; m], FieldElement::ONE)?;
    for f in factors {
        acc = multiply(&acc, f)?;
    }
    Ok(acc)
}

fn affine_domain_check(q: u64, d: u64, m: u32) -> Result<()> {
    if m < 2 || d < 2 || d >= q {
        return Err(Error::DomainViolation(format!(
            "affine maximal family needs 2 <= d < q and m >= 2, got d = {d}, q = {q}, m = {m}"
        )));
    }
    Ok(())
}

/// Union of `d` affine hyperplanes through a common codimension-2 affine
/// subspace: `d q^{m-1} - (d-1) q^{m-2}` zeros, the affine maximum below
/// Ore's bound.
pub fn affine_type1(field: &Field, d: u64, m: u32) -> Result<Construction> {
    let q = field.q() as u64;
    affine_domain_check(q, d, m)?;
    let mv = m as usize;
    // x0, x1, then x0 + λ x1 for nonzero λ: all through {x0 = x1 = 0}.
    let mut factors = vec![
        affine_linear(field, mv, 0, FieldElement::ZERO),
        affine_linear(field, mv, 1, FieldElement::ZERO),
    ];
    let elems = field.elements();
    for j in 2..d as usize {
        let mut f = affine_linear(field, mv, 0, FieldElement::ZERO);
        let mut exps = vec![0u8; mv];
        exps[1] = 1;
        f.set_coeff(&exps, elems[j - 1])?;
        factors.push(f);
    }
    let form = affine_product(field, mv, &factors[..d as usize])?;
    let predicted = geil_second(q, d, m as u64).value as u64;
    finish(form, predicted, ConfigTag::TypeI, Space::Affine)
}

/// Union of `d-1` parallel affine hyperplanes plus one transversal:
/// the same `d q^{m-1} - (d-1) q^{m-2}` zeros as the concurrent family.
pub fn affine_type2(field: &Field, d: u64, m: u32) -> Result<Construction> {
    let q = field.q() as u64;
    affine_domain_check(q, d, m)?;
    let mv = m as usize;
    let elems = field.elements();
    let mut factors: Vec<Form> = (0..d as usize - 1)
        .map(|j| affine_linear(field, mv, 0, field.neg(elems[j])))
        .collect();
    factors.push(affine_linear(field, mv, 1, FieldElement::ZERO));
    let form = affine_product(field, mv, &factors)?;
    let predicted = geil_second(q, d, m as u64).value as u64;
    finish(form, predicted, ConfigTag::TypeII, Space::Affine)
}

/// Degree-`d` plane curve supported on `d-1` concurrent lines, the first
/// taken with multiplicity two: exactly `(d-1)q + 1` points.
pub fn pencil_with_double_line(field: &Field, d: u64) -> Result<Construction> {
    let q = field.q() as u64;
    if d < 2 || d > q + 2 {
        return Err(Error::DomainViolation(format!(
            "doubled pencil needs 2 <= d <= q+2, got d = {d}, q = {q}"
        )));
    }
    let members = reference_pencil(field, 2)?;
    let mut parts: Vec<(LinearForm, u32)> = vec![(members[0].clone(), 2)];
    for l in &members[1..d as usize - 1] {
        parts.push((l.clone(), 1));
    }
    let form = product_of_linear(field, 3, &parts, FieldElement::ONE)?;
    finish(form, (d - 1) * q + 1, ConfigTag::PencilDoubleLine, Space::Projective)
}

fn square_root_of_order(field: &Field) -> Result<u64> {
    let q = field.q() as u64;
    let r = (q as f64).sqrt().round() as u64;
    if r * r != q {
        return Err(Error::NonSquareOrder { q });
    }
    Ok(r)
}

/// Diagonal form `x0^{r+1} + ... + x_k^{r+1}` over a field of order `r^2`.
fn diagonal_hermitian(field: &Field, nvars: usize, r: u64) -> Result<Form> {
    let d = r + 1;
    if d > u8::MAX as u64 {
        return Err(Error::DomainViolation(format!(
            "Hermitian degree {d} exceeds the supported monomial exponent range"
        )));
    }
    let mut f = Form::zero(field.clone(), nvars, d as u32, true);
    for var in 0..nvars.min(4) {
        let mut exps = vec![0u8; nvars];
        exps[var] = d as u8;
        f.set_coeff(&exps, FieldElement::ONE)?;
    }
    Ok(f)
}

/// Nonsingular Hermitian curve `x0^{r+1} + x1^{r+1} + x2^{r+1}` over
/// `GF(r^2)`: `q r + 1` points, attaining the line-free plane bound.
pub fn hermitian_curve(field: &Field) -> Result<Construction> {
    let q = field.q() as u64;
    let r = square_root_of_order(field)?;
    let form = diagonal_hermitian(field, 3, r)?;
    finish(form, q * r + 1, ConfigTag::Hermitian, Space::Projective)
}

/// Cone in `P^m` over the hyperbolic quadric surface `x0 x2 + x1 x3`:
/// attains the hyperplane-free maximum for degree 2.
pub fn hyperbolic_quadric(field: &Field, m: u32) -> Result<Construction> {
    if m < 3 {
        return Err(Error::DomainViolation(format!(
            "quadric cone lives in P^m with m >= 3, got m = {m}"
        )));
    }
    let n = m as usize + 1;
    let mut form = Form::zero(field.clone(), n, 2, true);
    let mut e02 = vec![0u8; n];
    e02[0] = 1;
    e02[2] = 1;
    form.set_coeff(&e02, FieldElement::ONE)?;
    let mut e13 = vec![0u8; n];
    e13[1] = 1;
    e13[3] = 1;
    form.set_coeff(&e13, FieldElement::ONE)?;
    let predicted = hk_elementary(field.q() as u64, 2, m as u64).value as u64;
    finish(form, predicted, ConfigTag::HyperbolicQuadric, Space::Projective)
}

/// Cone in `P^m` over the nondegenerate Hermitian surface
/// `x0^{r+1} + x1^{r+1} + x2^{r+1} + x3^{r+1}` over `GF(r^2)`: attains the
/// hyperplane-free maximum for degree `r + 1`.
pub fn hermitian_surface_cone(field: &Field, m: u32) -> Result<Construction> {
    let r = square_root_of_order(field)?;
    if m < 3 {
        return Err(Error::DomainViolation(format!(
            "Hermitian cone lives in P^m with m >= 3, got m = {m}"
        )));
    }
    let form = diagonal_hermitian(field, m as usize + 1, r)?;
    let predicted = hk_elementary(field.q() as u64, r + 1, m as u64).value as u64;
    finish(form, predicted, ConfigTag::HermitianSurfaceCone, Space::Projective)
}

/// The reference nonsingular conic `x0 x2 - x1^2` (valid in every
/// characteristic) as a form, plus its rational points.
pub(crate) fn reference_conic(field: &Field) -> (Form, Vec<crate::geometry::ProjectivePoint>) {
    let mut conic = Form::zero(field.clone(), 3, 2, true);
    conic.set_coeff(&[1, 0, 1], FieldElement::ONE).expect("x0x2 in basis");
    conic
        .set_coeff(&[0, 2, 0], field.neg(FieldElement::ONE))
        .expect("x1^2 in basis");
    let pts = projective_points(field, 2)
        .into_iter()
        .filter(|p| conic.evaluate(p.coords()).expect("conic evaluates") == FieldElement::ZERO)
        .collect();
    (conic, pts)
}

/// Cubic made of a nonsingular conic and a line avoiding all its rational
/// points: `2q + 2` points, the third-highest cubic count.
pub fn line_plus_conic(field: &Field) -> Result<Construction> {
    let q = field.q() as u64;
    let (conic, conic_pts) = reference_conic(field);
    debug_assert_eq!(conic_pts.len() as u64, q + 1);
    let passant = hyperplanes(field, 2)
        .into_iter()
        .find(|l| conic_pts.iter().all(|p| !l.contains(field, p)))
        .ok_or(Error::NoPassantFound)?;
    let form = multiply(&Form::from_linear(field.clone(), &passant), &conic)?;
    finish(form, 2 * q + 2, ConfigTag::LinePlusConic, Space::Projective)
}

/// Quartic made of four lines with all six pairwise intersections distinct:
/// `4q - 2` points, the third-highest quartic count.
pub fn four_lines_general_position(field: &Field) -> Result<Construction> {
    let q = field.q() as u64;
    if q < 4 {
        return Err(Error::DomainViolation(format!(
            "four lines in general position need q >= 4, got q = {q}"
        )));
    }
    let mut chosen: Vec<LinearForm> = Vec::new();
    let mut vertices = Vec::new(); // pairwise intersections of chosen lines
    for l in hyperplanes(field, 2) {
        // General position = the new line avoids every existing vertex.
        if vertices.iter().any(|v| l.contains(field, v)) {
            continue;
        }
        for c in &chosen {
            vertices.push(line_intersection(field, c, &l)?);
        }
        chosen.push(l);
        if chosen.len() == 4 {
            break;
        }
    }
    assert_eq!(chosen.len(), 4, "P^2 over GF({q}) has four lines in general position");
    let parts: Vec<(LinearForm, u32)> = chosen.into_iter().map(|l| (l, 1)).collect();
    let form = product_of_linear(field, 3, &parts, FieldElement::ONE)?;
    finish(form, 4 * q - 2, ConfigTag::FourLinesGeneral, Space::Projective)
}
