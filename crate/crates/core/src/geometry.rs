//! Point sets, hyperplanes, and incidence over GF(q).
//!
//! Every enumeration here is frozen: projective points and hyperplanes come
//! out in ascending lexicographic order of their normalized tuples (first
//! nonzero entry scaled to 1), affine points in plain odometer order. Code
//! generator matrices, census witnesses, and every "first such object" choice
//! downstream inherit determinism from these orders, so they must not change.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, FieldSpec};

/// A point of P^m: m+1 coordinates, first nonzero coordinate equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint {
    coords: Vec<FieldElement>,
}

/// A point of affine m-space: m unconstrained coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffinePoint {
    coords: Vec<FieldElement>,
}

/// A hyperplane of P^m as a normalized linear form: coefficients (a_0..a_m)
/// with first nonzero coefficient 1, cutting out {x : Σ a_i x_i = 0}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    coeffs: Vec<FieldElement>,
}

impl ProjectivePoint {
    /// Normalizing constructor; rejects the zero vector.
    pub fn new(field: &FieldSpec, mut coords: Vec<FieldElement>) -> Result<Self> {
        field
            .normalize(&mut coords)
            .ok_or_else(|| Error::DomainViolation("projective point cannot be the zero vector".into()))?;
        Ok(ProjectivePoint { coords })
    }

    pub(crate) fn from_normalized(coords: Vec<FieldElement>) -> Self {
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Index of the first nonzero (= 1) coordinate.
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("normalized point is nonzero")
    }
}

impl AffinePoint {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        AffinePoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }
}

impl LinearForm {
    /// Normalizing constructor; rejects the zero form.
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        field
            .normalize(&mut coeffs)
            .ok_or_else(|| Error::DomainViolation("linear form cannot be identically zero".into()))?;
        Ok(LinearForm { coeffs })
    }

    pub(crate) fn from_normalized(coeffs: Vec<FieldElement>) -> Self {
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Value of the form at a point (projective points give a well-defined
    /// zero/nonzero answer; the actual value depends on the representative).
    pub fn eval(&self, field: &FieldSpec, point: &ProjectivePoint) -> FieldElement {
        self.eval_coords(field, point.coords())
    }

    pub fn eval_coords(&self, field: &FieldSpec, coords: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(self.coeffs.len(), coords.len());
        let mut acc = FieldElement::ZERO;
        for (&a, &x) in self.coeffs.iter().zip(coords) {
            acc = field.add(acc, field.mul(a, x));
        }
        acc
    }

    pub fn contains(&self, field: &FieldSpec, point: &ProjectivePoint) -> bool {
        self.eval(field, point).is_zero()
    }
}

/// Number of points of P^m over GF(q): q^m + q^{m-1} + ... + 1.
pub fn projective_count(q: u64, m: u32) -> u64 {
    let mut total = 0u64;
    let mut pow = 1u64;
    for _ in 0..=m {
        total += pow;
        pow *= q;
    }
    total
}

/// All normalized tuples of the given length in ascending lexicographic
/// order. Shared by point and hyperplane enumeration (projective duality).
fn normalized_tuples(field: &FieldSpec, len: usize) -> Vec<Vec<FieldElement>> {
    let q = field.q() as usize;
    let mut out = Vec::with_capacity(projective_count(field.q() as u64, (len - 1) as u32) as usize);
    // ascending lex puts the pivot as late as possible first: (0,...,0,1) is
    // the global minimum, the pivot-0 block (1,*,...,*) comes last
    for pivot in (0..len).rev() {
        let free = len - pivot - 1;
        let mut suffix = vec![0usize; free];
        loop {
            let mut coords = vec![FieldElement::ZERO; len];
            coords[pivot] = FieldElement::ONE;
            for (i, &v) in suffix.iter().enumerate() {
                coords[pivot + 1 + i] = FieldElement::raw(v as u16);
            }
            out.push(coords);
            // odometer, last digit fastest
            let mut i = free;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                suffix[i] += 1;
                if suffix[i] < q {
                    break;
                }
                suffix[i] = 0;
            }
            if suffix.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    out
}

/// The p_m(q) points of P^m in frozen ascending lexicographic order.
pub fn projective_points(field: &Field, m: u32) -> Vec<ProjectivePoint> {
    normalized_tuples(field, m as usize + 1)
        .into_iter()
        .map(ProjectivePoint::from_normalized)
        .collect()
}

/// The q^m points of affine m-space in ascending lexicographic order.
pub fn affine_points(field: &Field, m: u32) -> Vec<AffinePoint> {
    let q = field.q() as usize;
    let m = m as usize;
    let total = (q as u64).pow(m as u32) as usize;
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; m];
    for _ in 0..total {
        out.push(AffinePoint::new(
            digits.iter().map(|&v| FieldElement::raw(v as u16)).collect(),
        ));
        let mut i = m;
        while i > 0 {
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
    }
    out
}

/// The p_m(q) hyperplanes of P^m in frozen ascending lexicographic order of
/// their normalized coefficient tuples.
pub fn hyperplanes(field: &Field, m: u32) -> Vec<LinearForm> {
    normalized_tuples(field, m as usize + 1)
        .into_iter()
        .map(LinearForm::from_normalized)
        .collect()
}

/// The q+1 hyperplanes containing the codimension-2 flat cut out by two
/// independent forms, sorted in the frozen order.
pub fn pencil(field: &Field, h1: &LinearForm, h2: &LinearForm) -> Result<Vec<LinearForm>> {
    if h1.coeffs().len() != h2.coeffs().len() {
        return Err(Error::DimensionMismatch { expected: h1.coeffs().len(), got: h2.coeffs().len() });
    }
    if h1 == h2 {
        // both are normalized, so dependent <=> identical
        return Err(Error::DependentForms);
    }
    let len = h1.coeffs().len();
    let mut out: Vec<LinearForm> = Vec::with_capacity(field.q() as usize + 1);
    out.push(h2.clone());
    for mu in field.elements() {
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(field.add(h1.coeffs()[i], field.mul(mu, h2.coeffs()[i])));
        }
        out.push(LinearForm::new(field, coeffs)?);
    }
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]), "independent forms give q+1 distinct members");
    Ok(out)
}

/// Subset of `points` lying on the hyperplane `h`, in input order.
pub fn hyperplane_section(
    field: &FieldSpec,
    points: &[ProjectivePoint],
    h: &LinearForm,
) -> Vec<ProjectivePoint> {
    points.iter().filter(|p| h.contains(field, p)).cloned().collect()
}

/// Intersection point of two distinct lines of P^2 (cross product of the
/// coefficient vectors).
pub fn line_intersection(field: &FieldSpec, a: &LinearForm, b: &LinearForm) -> Result<ProjectivePoint> {
    if a.coeffs().len() != 3 || b.coeffs().len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: a.coeffs().len().max(b.coeffs().len()) });
    }
    if a == b {
        return Err(Error::DependentForms);
    }
    let (a, b) = (a.coeffs(), b.coeffs());
    let det = |i: usize, j: usize| field.sub(field.mul(a[i], b[j]), field.mul(a[j], b[i]));
    let coords = vec![det(1, 2), field.neg(det(0, 2)), det(0, 1)];
    ProjectivePoint::new(field, coords)
}
