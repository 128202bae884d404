//! Dense multivariate polynomial arithmetic over GF(q).
//!
//! Forms are coefficient vectors over a frozen graded-lex monomial basis,
//! highest degree block first and lexicographically descending inside a
//! block, so x0^d is always the first basis element and (for bounded-degree
//! affine bases) the constant is the last. Homogeneous forms in m+1
//! variables are the message space of projective codes; bounded-degree
//! affine forms in m variables the message space of affine ones.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{affine_points, hyperplanes, projective_points, LinearForm};
use crate::gf::{make_field, Field, FieldElement, FieldSpec};

/// C(n, k) without overflow at the sizes handled here.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// A monomial as an exponent tuple (one entry per variable).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    pub fn new(exps: Vec<u8>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn eval(&self, field: &FieldSpec, coords: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(coords.len(), self.exps.len());
        let mut acc = FieldElement::ONE;
        for (&x, &e) in coords.iter().zip(&self.exps) {
            if e > 0 {
                acc = field.mul(acc, field.pow(x, e as u64));
            }
        }
        acc
    }
}

/// The frozen monomial basis: total degree exactly `degree` when
/// `homogeneous`, at most `degree` otherwise; graded-lex descending.
pub fn monomial_basis(nvars: usize, degree: u32, homogeneous: bool) -> Vec<Monomial> {
    let mut out = Vec::new();
    let degrees: Vec<u32> =
        if homogeneous { vec![degree] } else { (0..=degree).rev().collect() };
    for d in degrees {
        let mut exps = vec![0u8; nvars];
        emit_compositions(&mut exps, 0, d, &mut out);
    }
    out
}

/// Exponent tuples of the given total degree in lex-descending order.
fn emit_compositions(exps: &mut Vec<u8>, var: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if var + 1 == exps.len() {
        exps[var] = remaining as u8;
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        exps[var] = e as u8;
        emit_compositions(exps, var + 1, remaining - e, out);
    }
    exps[var] = 0;
}

fn basis_index_map(nvars: usize, degree: u32, homogeneous: bool) -> HashMap<Vec<u8>, usize> {
    monomial_basis(nvars, degree, homogeneous)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m.exps, i))
        .collect()
}

/// Which point set a zero count ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Projective,
    Affine,
}

/// A polynomial as a dense coefficient vector over the frozen basis.
#[derive(Clone)]
pub struct Form {
    field: Field,
    nvars: usize,
    degree: u32,
    homogeneous: bool,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.nvars == other.nvars
            && self.degree == other.degree
            && self.homogeneous == other.homogeneous
            && self.coeffs == other.coeffs
    }
}
impl Eq for Form {}

impl std::fmt::Debug for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Form(q={}, nvars={}, deg={}{}, coeffs={:?})",
            self.field.q(),
            self.nvars,
            self.degree,
            if self.homogeneous { ", homog" } else { "" },
            self.coeffs.iter().map(|c| c.value()).collect::<Vec<_>>()
        )
    }
}

impl Form {
    pub fn new(
        field: Field,
        nvars: usize,
        degree: u32,
        homogeneous: bool,
        coeffs: Vec<FieldElement>,
    ) -> Result<Form> {
        let expected = basis_size(nvars, degree, homogeneous);
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch { expected, got: coeffs.len() });
        }
        Ok(Form { field, nvars, degree, homogeneous, coeffs })
    }

    pub fn zero(field: Field, nvars: usize, degree: u32, homogeneous: bool) -> Form {
        let len = basis_size(nvars, degree, homogeneous);
        Form { field, nvars, degree, homogeneous, coeffs: vec![FieldElement::ZERO; len] }
    }

    /// Degree-1 homogeneous form with the same coefficients as a hyperplane.
    /// The degree-1 basis lists the variables in order, so the coefficient
    /// vectors coincide.
    pub fn from_linear(field: Field, l: &LinearForm) -> Form {
        Form {
            field,
            nvars: l.coeffs().len(),
            degree: 1,
            homogeneous: true,
            coeffs: l.coeffs().to_vec(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn basis(&self) -> Vec<Monomial> {
        monomial_basis(self.nvars, self.degree, self.homogeneous)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, exps: &[u8]) -> FieldElement {
        let map = basis_index_map(self.nvars, self.degree, self.homogeneous);
        map.get(exps).map(|&i| self.coeffs[i]).unwrap_or(FieldElement::ZERO)
    }

    pub fn set_coeff(&mut self, exps: &[u8], c: FieldElement) -> Result<()> {
        let map = basis_index_map(self.nvars, self.degree, self.homogeneous);
        match map.get(exps) {
            Some(&i) => {
                self.coeffs[i] = c;
                Ok(())
            }
            None => Err(Error::Malformed(format!(
                "exponents {exps:?} not in the degree-{} basis",
                self.degree
            ))),
        }
    }

    pub fn scaled(&self, c: FieldElement) -> Form {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = self.field.mul(*x, c);
        }
        out
    }

    /// Split into (unit, monic-normalized form): the unit is the first
    /// nonzero coefficient in basis order and unit * normalized == self.
    pub fn normalized(&self) -> (FieldElement, Form) {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => (FieldElement::ONE, self.clone()),
            Some(&lead) => {
                let inv = self.field.inv(lead).expect("lead is nonzero");
                (lead, self.scaled(inv))
            }
        }
    }

    pub fn evaluate(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        if coords.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: coords.len() });
        }
        let basis = self.basis();
        let mut acc = FieldElement::ZERO;
        for (mono, &c) in basis.iter().zip(&self.coeffs) {
            if !c.is_zero() {
                acc = self.field.add(acc, self.field.mul(c, mono.eval(&self.field, coords)));
            }
        }
        Ok(acc)
    }
}

fn basis_size(nvars: usize, degree: u32, homogeneous: bool) -> usize {
    let n = nvars as u64;
    let d = degree as u64;
    if homogeneous {
        binom(d + n - 1, n - 1) as usize
    } else {
        binom(d + n, n) as usize
    }
}

/// Number of points where the form vanishes, over the projective space
/// P^{nvars-1} (homogeneous forms only) or the affine space A^{nvars}.
pub fn zero_count(f: &Form, space: Space) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let basis = f.basis();
    let field = f.field();
    let mut zeros = 0u64;
    match space {
        Space::Projective => {
            if !f.homogeneous {
                return Err(Error::DomainViolation(
                    "projective zero count requires a homogeneous form".into(),
                ));
            }
            for p in projective_points(field, f.nvars as u32 - 1) {
                if eval_basis(field, &basis, &f.coeffs, p.coords()).is_zero() {
                    zeros += 1;
                }
            }
        }
        Space::Affine => {
            for p in affine_points(field, f.nvars as u32) {
                if eval_basis(field, &basis, &f.coeffs, p.coords()).is_zero() {
                    zeros += 1;
                }
            }
        }
    }
    Ok(zeros)
}

fn eval_basis(
    field: &FieldSpec,
    basis: &[Monomial],
    coeffs: &[FieldElement],
    coords: &[FieldElement],
) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    for (mono, &c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = field.add(acc, field.mul(c, mono.eval(field, coords)));
        }
    }
    acc
}

pub fn multiply(f: &Form, g: &Form) -> Result<Form> {
    if *f.field != *g.field {
        return Err(Error::FieldMismatch);
    }
    if f.nvars != g.nvars {
        return Err(Error::DimensionMismatch { expected: f.nvars, got: g.nvars });
    }
    if f.homogeneous != g.homogeneous {
        return Err(Error::DomainViolation("cannot multiply homogeneous by affine form".into()));
    }
    let field = f.field.clone();
    let degree = f.degree + g.degree;
    let mut acc: HashMap<Vec<u8>, FieldElement> = HashMap::new();
    let fb = f.basis();
    let gb = g.basis();
    for (mf, &cf) in fb.iter().zip(&f.coeffs) {
        if cf.is_zero() {
            continue;
        }
        for (mg, &cg) in gb.iter().zip(&g.coeffs) {
            if cg.is_zero() {
                continue;
            }
            let exps: Vec<u8> =
                mf.exps().iter().zip(mg.exps()).map(|(&a, &b)| a + b).collect();
            let e = acc.entry(exps).or_insert(FieldElement::ZERO);
            *e = field.add(*e, field.mul(cf, cg));
        }
    }
    form_from_map(field, f.nvars, degree, f.homogeneous, &acc)
}

/// Product unit * Π form_i^{mult_i} as a homogeneous form in `nvars` vars.
pub fn product_of_linear(
    field: &Field,
    nvars: usize,
    parts: &[(LinearForm, u32)],
    unit: FieldElement,
) -> Result<Form> {
    let mut acc = Form::new(field.clone(), nvars, 0, true, vec![unit])?;
    for (l, mult) in parts {
        let lf = Form::from_linear(field.clone(), l);
        for _ in 0..*mult {
            acc = multiply(&acc, &lf)?;
        }
    }
    Ok(acc)
}

fn form_from_map(
    field: Field,
    nvars: usize,
    degree: u32,
    homogeneous: bool,
    map: &HashMap<Vec<u8>, FieldElement>,
) -> Result<Form> {
    let index = basis_index_map(nvars, degree, homogeneous);
    let mut coeffs = vec![FieldElement::ZERO; index.len()];
    for (exps, &c) in map {
        if c.is_zero() {
            continue;
        }
        match index.get(exps) {
            Some(&i) => coeffs[i] = c,
            None => {
                return Err(Error::Malformed(format!(
                    "monomial {exps:?} outside the degree-{degree} basis"
                )))
            }
        }
    }
    Form::new(field, nvars, degree, homogeneous, coeffs)
}

/// Exact division of a homogeneous form by a linear form. `Ok(None)` means
/// the linear form is not a factor; this is a normal outcome, not an error.
///
/// Synthetic division in the pivot variable of L: writing L = x_j - α with α
/// supported off j, and f = Σ A_k x_j^k, the quotient coefficients are
/// B_{d-1} = A_d, B_{k-1} = A_k + α·B_k, with remainder R = A_0 + α·B_0.
pub fn divide_by_linear(f: &Form, l: &LinearForm) -> Result<Option<Form>> {
    if !f.homogeneous {
        return Err(Error::DomainViolation("division by a linear form needs a homogeneous input".into()));
    }
    if l.coeffs().len() != f.nvars {
        return Err(Error::DimensionMismatch { expected: f.nvars, got: l.coeffs().len() });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree as usize;
    if d == 0 {
        return Ok(None);
    }
    let field = f.field.clone();
    let j = l.coeffs().iter().position(|c| !c.is_zero()).expect("linear form is nonzero");

    // alpha_i = -l_i off the pivot (and l_j = 1 by normalization)
    let alpha: Vec<FieldElement> = l.coeffs().iter().map(|&c| field.neg(c)).collect();
    let mul_alpha = |m: &HashMap<Vec<u8>, FieldElement>| -> HashMap<Vec<u8>, FieldElement> {
        let mut out: HashMap<Vec<u8>, FieldElement> = HashMap::new();
        for (exps, &c) in m {
            for (i, &a) in alpha.iter().enumerate() {
                if i == j || a.is_zero() {
                    continue;
                }
                let mut e2 = exps.clone();
                e2[i] += 1;
                let slot = out.entry(e2).or_insert(FieldElement::ZERO);
                *slot = field.add(*slot, field.mul(c, a));
            }
        }
        out
    };
    let add_maps = |a: &HashMap<Vec<u8>, FieldElement>, b: &HashMap<Vec<u8>, FieldElement>| {
        let mut out = a.clone();
        for (exps, &c) in b {
            let slot = out.entry(exps.clone()).or_insert(FieldElement::ZERO);
            *slot = field.add(*slot, c);
        }
        out
    };

    // bucket the coefficients of f by their x_j exponent
    let mut a: Vec<HashMap<Vec<u8>, FieldElement>> = vec![HashMap::new(); d + 1];
    for (mono, &c) in f.basis().iter().zip(&f.coeffs) {
        if c.is_zero() {
            continue;
        }
        let k = mono.exps()[j] as usize;
        let mut stripped = mono.exps().to_vec();
        stripped[j] = 0;
        a[k].insert(stripped, c);
    }

    let mut b = vec![HashMap::new(); d];
    b[d - 1] = a[d].clone();
    for k in (1..d).rev() {
        b[k - 1] = add_maps(&a[k], &mul_alpha(&b[k]));
    }
    let remainder = add_maps(&a[0], &mul_alpha(&b[0]));
    if remainder.values().any(|c| !c.is_zero()) {
        return Ok(None);
    }

    let mut quotient: HashMap<Vec<u8>, FieldElement> = HashMap::new();
    for (k, part) in b.iter().enumerate() {
        for (exps, &c) in part {
            if c.is_zero() {
                continue;
            }
            let mut e2 = exps.clone();
            e2[j] = k as u8;
            quotient.insert(e2, c);
        }
    }
    Ok(Some(form_from_map(field, f.nvars, f.degree - 1, true, &quotient)?))
}

/// Complete splitting of a homogeneous form into its GF(q)-rational linear
/// factors and a factor-free residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFactorization {
    /// Normalized linear factors with multiplicities, in the frozen
    /// hyperplane order.
    pub linear_part: Vec<(LinearForm, u32)>,
    /// Monic residual with no linear factor over GF(q); degree d - s.
    pub residual: Form,
    /// Scalar making unit * product(linear_part) * residual == input.
    pub unit: FieldElement,
}

impl LinearFactorization {
    /// Total multiplicity s of the linear part.
    pub fn s(&self) -> u32 {
        self.linear_part.iter().map(|&(_, m)| m).sum()
    }

    /// Distinct linear factors.
    pub fn distinct(&self) -> usize {
        self.linear_part.len()
    }

    pub fn reconstruct(&self) -> Result<Form> {
        let f = product_of_linear(
            self.residual.field(),
            self.residual.nvars(),
            &self.linear_part,
            self.unit,
        )?;
        multiply(&f, &self.residual)
    }
}

/// Extract every linear factor of a homogeneous form.
///
/// A single pass over the frozen hyperplane order suffices: linear forms are
/// prime, so a form that does not divide f cannot divide a quotient of f.
/// The inner loop re-probes the same form until it stops dividing, so
/// multiplicities are exact.
pub fn linear_factors(f: &Form) -> Result<LinearFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.homogeneous {
        return Err(Error::DomainViolation("linear factor extraction needs a homogeneous form".into()));
    }
    let mut rest = f.clone();
    let mut linear_part = Vec::new();
    for h in hyperplanes(f.field(), f.nvars as u32 - 1) {
        let mut mult = 0u32;
        while let Some(q) = divide_by_linear(&rest, &h)? {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            linear_part.push((h, mult));
        }
    }
    let (unit, residual) = rest.normalized();
    Ok(LinearFactorization { linear_part, residual, unit })
}

/// Restrict a homogeneous form to the affine chart h = 1, eliminating the
/// pivot variable of h. The result is an affine form in nvars-1 variables
/// whose zeros correspond to the projective zeros off the hyperplane h = 0.
///
/// When the restriction collapses to a constant c (e.g. f = c·h^d) there is
/// no affine polynomial worth returning: the zero set off h is empty when
/// c != 0 and all of A^m when c = 0. That case is reported as
/// `Error::ZeroForm` carrying c.
pub fn dehomogenize(f: &Form, h: &LinearForm) -> Result<Form> {
    if !f.homogeneous {
        return Err(Error::DomainViolation("dehomogenization needs a homogeneous form".into()));
    }
    if h.coeffs().len() != f.nvars {
        return Err(Error::DimensionMismatch { expected: f.nvars, got: h.coeffs().len() });
    }
    let field = f.field.clone();
    let j = h.coeffs().iter().position(|c| !c.is_zero()).expect("hyperplane form is nonzero");
    let m = f.nvars - 1;
    // old variable i (i != j) becomes new variable (i minus the gap at j)
    let remap = |i: usize| if i < j { i } else { i - 1 };

    // substitution for the pivot: x_j = 1 - Σ_{i≠j} h_i x_i on the chart h=1
    let mut sub: HashMap<Vec<u8>, FieldElement> = HashMap::new();
    sub.insert(vec![0u8; m], FieldElement::ONE);
    for (i, &c) in h.coeffs().iter().enumerate() {
        if i == j || c.is_zero() {
            continue;
        }
        let mut e = vec![0u8; m];
        e[remap(i)] = 1;
        sub.insert(e, field.neg(c));
    }

    let map_mul = |a: &HashMap<Vec<u8>, FieldElement>, b: &HashMap<Vec<u8>, FieldElement>| {
        let mut out: HashMap<Vec<u8>, FieldElement> = HashMap::new();
        for (ea, &ca) in a {
            if ca.is_zero() {
                continue;
            }
            for (eb, &cb) in b {
                if cb.is_zero() {
                    continue;
                }
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                let slot = out.entry(exps).or_insert(FieldElement::ZERO);
                *slot = field.add(*slot, field.mul(ca, cb));
            }
        }
        out
    };

    // powers of the substitution polynomial up to the largest pivot exponent
    let max_pow = f
        .basis()
        .iter()
        .zip(&f.coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(mono, _)| mono.exps()[j] as usize)
        .max()
        .unwrap_or(0);
    let mut sub_pows: Vec<HashMap<Vec<u8>, FieldElement>> = Vec::with_capacity(max_pow + 1);
    let mut one = HashMap::new();
    one.insert(vec![0u8; m], FieldElement::ONE);
    sub_pows.push(one);
    for k in 1..=max_pow {
        sub_pows.push(map_mul(&sub_pows[k - 1], &sub));
    }

    let mut acc: HashMap<Vec<u8>, FieldElement> = HashMap::new();
    for (mono, &c) in f.basis().iter().zip(&f.coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut base = vec![0u8; m];
        for (i, &e) in mono.exps().iter().enumerate() {
            if i != j {
                base[remap(i)] = e;
            }
        }
        let k = mono.exps()[j] as usize;
        for (eb, &cb) in &sub_pows[k] {
            let exps: Vec<u8> = base.iter().zip(eb).map(|(&x, &y)| x + y).collect();
            let slot = acc.entry(exps).or_insert(FieldElement::ZERO);
            *slot = field.add(*slot, field.mul(c, cb));
        }
    }

    let result = form_from_map(field, m, f.degree, false, &acc)?;
    let constant_only = result
        .basis()
        .iter()
        .zip(result.coeffs())
        .all(|(mono, c)| c.is_zero() || mono.degree() == 0);
    if constant_only {
        let value = result.coeffs().last().copied().unwrap_or(FieldElement::ZERO);
        return Err(Error::ZeroForm { value: value.value() });
    }
    Ok(result)
}

/// Apply the coordinate change x_i <- Σ_k mat[i][k]·x_k to a homogeneous
/// form. The matrix must be square of size nvars; invertibility is the
/// caller's concern (a singular change collapses the form).
pub fn linear_change(f: &Form, mat: &[Vec<FieldElement>]) -> Result<Form> {
    if !f.homogeneous {
        return Err(Error::DomainViolation("coordinate change needs a homogeneous form".into()));
    }
    if mat.len() != f.nvars || mat.iter().any(|row| row.len() != f.nvars) {
        return Err(Error::DimensionMismatch { expected: f.nvars, got: mat.len() });
    }
    let field = f.field.clone();
    let n = f.nvars;

    let map_mul = |a: &HashMap<Vec<u8>, FieldElement>, b: &HashMap<Vec<u8>, FieldElement>| {
        let mut out: HashMap<Vec<u8>, FieldElement> = HashMap::new();
        for (ea, &ca) in a {
            for (eb, &cb) in b {
                if ca.is_zero() || cb.is_zero() {
                    continue;
                }
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                let slot = out.entry(exps).or_insert(FieldElement::ZERO);
                *slot = field.add(*slot, field.mul(ca, cb));
            }
        }
        out
    };

    // image of each variable as a degree-1 map
    let images: Vec<HashMap<Vec<u8>, FieldElement>> = (0..n)
        .map(|i| {
            let mut im = HashMap::new();
            for (k, &c) in mat[i].iter().enumerate() {
                if !c.is_zero() {
                    let mut e = vec![0u8; n];
                    e[k] = 1;
                    im.insert(e, c);
                }
            }
            im
        })
        .collect();

    let mut acc: HashMap<Vec<u8>, FieldElement> = HashMap::new();
    for (mono, &c) in f.basis().iter().zip(&f.coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut term = HashMap::new();
        term.insert(vec![0u8; n], c);
        for (i, &e) in mono.exps().iter().enumerate() {
            for _ in 0..e {
                term = map_mul(&term, &images[i]);
            }
        }
        for (exps, cv) in term {
            let slot = acc.entry(exps).or_insert(FieldElement::ZERO);
            *slot = field.add(*slot, cv);
        }
    }
    form_from_map(field, n, f.degree, true, &acc)
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    p: u32,
    e: u32,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    field: FieldRepr,
    nvars: usize,
    degree: u32,
    homogeneous: bool,
    coeffs: Vec<u16>,
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            field: FieldRepr { p: self.field.p(), e: self.field.e() },
            nvars: self.nvars,
            degree: self.degree,
            homogeneous: self.homogeneous,
            coeffs: self.coeffs.iter().map(|c| c.value()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Form, D::Error> {
        let repr = FormRepr::deserialize(deserializer)?;
        let field = make_field(repr.field.p, repr.field.e).map_err(D::Error::custom)?;
        let q = field.q();
        let coeffs = repr
            .coeffs
            .iter()
            .map(|&v| {
                if (v as u32) < q {
                    Ok(FieldElement::raw(v))
                } else {
                    Err(D::Error::custom(format!("coefficient {v} out of range for GF({q})")))
                }
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Form::new(field, repr.nvars, repr.degree, repr.homogeneous, coeffs)
            .map_err(D::Error::custom)
    }
}
