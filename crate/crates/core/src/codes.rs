//! Evaluation codes: generalized (affine) and projective Reed–Muller codes,
//! their generator matrices, and weight spectra.
//!
//! Generator rows are basis monomials evaluated over the frozen point order;
//! the code dimension is the matrix rank. For d <= q-1 the evaluation map is
//! injective and the rank equals the basis size (asserted). At and above
//! d = q dependent rows can appear (x^q evaluates like x on GF(q)), so
//! spectra always enumerate over a greedily chosen independent row subset,
//! which visits every codeword exactly once up to scalar.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{EnumOptions, Enumerator, Tally};
use crate::error::{Error, Result};
use crate::geometry::{affine_points, projective_points};
use crate::gf::{Field, FieldElement};
use crate::poly::{monomial_basis, Form};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    /// Affine evaluation code: polynomials of total degree <= d over A^m.
    Grm,
    /// Projective evaluation code: homogeneous degree-d forms over P^m.
    Prm,
}

/// An evaluation code with its full generator matrix.
pub struct Code {
    kind: CodeKind,
    field: Field,
    d: u32,
    m: u32,
    n: usize,
    k: usize,
    /// One row per basis monomial (possibly dependent when d >= q).
    generator: Vec<Vec<FieldElement>>,
    /// Indices of the greedy maximal independent row subset, in basis order.
    indep: Vec<usize>,
}

pub fn build_code(kind: CodeKind, field: &Field, d: u32, m: u32) -> Result<Code> {
    if d < 1 {
        return Err(Error::DegreeOutOfRange { d: d as i64, reason: "degree must be at least 1".into() });
    }
    if m < 1 {
        return Err(Error::DomainViolation("dimension m must be at least 1".into()));
    }
    let q = field.q();
    let (basis, points): (Vec<_>, Vec<Vec<FieldElement>>) = match kind {
        CodeKind::Prm => (
            monomial_basis(m as usize + 1, d, true),
            projective_points(field, m).into_iter().map(|p| p.coords().to_vec()).collect(),
        ),
        CodeKind::Grm => (
            monomial_basis(m as usize, d, false),
            affine_points(field, m).into_iter().map(|p| p.coords().to_vec()).collect(),
        ),
    };
    let n = points.len();
    let generator: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|mono| points.iter().map(|p| mono.eval(field, p)).collect())
        .collect();
    let indep = independent_rows(field, &generator);
    let k = indep.len();
    if d <= q - 1 {
        assert_eq!(
            k,
            generator.len(),
            "evaluation map must be injective for d <= q-1 (q={q}, d={d}, m={m})"
        );
    }
    Ok(Code { kind, field: field.clone(), d, m, n, k, generator, indep })
}

/// Greedy row-rank profile by Gaussian elimination.
fn independent_rows(field: &Field, rows: &[Vec<FieldElement>]) -> Vec<usize> {
    let mut pivots: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    let mut indep = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (col, prow) in &pivots {
            let factor = r[*col];
            if !factor.is_zero() {
                for (x, &p) in r.iter_mut().zip(prow) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        if let Some(col) = r.iter().position(|x| !x.is_zero()) {
            let inv = field.inv(r[col]).expect("pivot is nonzero");
            for x in r.iter_mut() {
                *x = field.mul(*x, inv);
            }
            pivots.push((col, r));
            indep.push(i);
        }
    }
    indep
}

impl Code {
    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension (rank of the generator matrix).
    pub fn k(&self) -> usize {
        self.k
    }

    /// Full generator matrix, one row per basis monomial.
    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    /// Number of basis monomials (= k except possibly when d >= q).
    pub fn basis_dim(&self) -> usize {
        self.generator.len()
    }

    /// Codeword of a k-entry message over the independent rows.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: message.len() });
        }
        let f = &self.field;
        let mut acc = vec![FieldElement::ZERO; self.n];
        for (&c, &ri) in message.iter().zip(&self.indep) {
            if c.is_zero() {
                continue;
            }
            for (a, &g) in acc.iter_mut().zip(&self.generator[ri]) {
                *a = f.add(*a, f.mul(c, g));
            }
        }
        Ok(acc)
    }

    /// The polynomial a message encodes: coefficients over the full basis
    /// (message entry i attaches to independent row i's monomial).
    pub fn message_form(&self, message: &[FieldElement]) -> Result<Form> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: message.len() });
        }
        let mut coeffs = vec![FieldElement::ZERO; self.basis_dim()];
        for (&c, &ri) in message.iter().zip(&self.indep) {
            coeffs[ri] = c;
        }
        let (nvars, homogeneous) = match self.kind {
            CodeKind::Prm => (self.m as usize + 1, true),
            CodeKind::Grm => (self.m as usize, false),
        };
        Form::new(self.field.clone(), nvars, self.d, homogeneous, coeffs)
    }

    /// Rows of the independent-row submatrix as plain encodings, the shape
    /// the enumeration engine wants.
    pub(crate) fn engine_rows(&self) -> Vec<Vec<u16>> {
        self.indep
            .iter()
            .map(|&ri| self.generator[ri].iter().map(|x| x.value()).collect())
            .collect()
    }

    /// Number of canonical (up-to-scalar) messages, (q^k - 1)/(q - 1).
    pub fn canonical_messages(&self) -> u128 {
        let q = self.field.q() as u128;
        (0..self.k).fold(0u128, |acc, _| acc * q + 1)
    }
}

pub fn codeword_weight(code: &Code, message: &[FieldElement]) -> Result<u64> {
    let w = code.encode(message)?.iter().filter(|x| !x.is_zero()).count();
    Ok(w as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMode {
    /// One count per codeword line: (q^k-1)/(q-1) messages total.
    ExhaustiveUpToScalar,
    /// All q^k codewords, derived by scaling line counts by q-1.
    ExhaustiveFull,
    /// Independent uniform draws from the canonical message space.
    Sampled { n_samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSpectrum {
    pub mode: SpectrumMode,
    /// weight -> number of codewords (or samples, in sampled mode).
    pub counts: BTreeMap<u64, u64>,
}

impl WeightSpectrum {
    pub fn min_weight(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// Ascending nonzero weights with counts, at most top_k entries. The
    /// first entry is the minimum weight, the second the second weight, the
    /// third the third weight.
    pub fn distinct_weights(&self, top_k: usize) -> Vec<(u64, u64)> {
        self.counts.iter().filter(|&(&w, _)| w > 0).map(|(&w, &c)| (w, c)).take(top_k).collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in &self.counts {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }
}

/// Ascending nonzero (weight, count) pairs; entry 0 is the minimum weight.
pub fn distinct_weights(spectrum: &WeightSpectrum, top_k: usize) -> Vec<(u64, u64)> {
    spectrum.distinct_weights(top_k)
}

pub fn weight_spectrum(code: &Code, mode: SpectrumMode, opts: &EnumOptions) -> Result<WeightSpectrum> {
    match mode {
        SpectrumMode::ExhaustiveUpToScalar => {
            let engine = Enumerator::new(code.field.clone(), code.engine_rows())?;
            let tally = engine.run(opts, || Tally::new(code.n))?;
            let mut counts = BTreeMap::new();
            for (z, &c) in tally.counts.iter().enumerate() {
                if c > 0 {
                    counts.insert((code.n - z) as u64, c);
                }
            }
            Ok(WeightSpectrum { mode, counts })
        }
        SpectrumMode::ExhaustiveFull => {
            let up = weight_spectrum(code, SpectrumMode::ExhaustiveUpToScalar, opts)?;
            let scale = (code.field.q() - 1) as u64;
            let mut counts: BTreeMap<u64, u64> =
                up.counts.into_iter().map(|(w, c)| (w, c * scale)).collect();
            counts.insert(0, 1);
            Ok(WeightSpectrum { mode, counts })
        }
        SpectrumMode::Sampled { n_samples, seed } => {
            let engine = Enumerator::new(code.field.clone(), code.engine_rows())?;
            let total = engine.total();
            let counts = (0..n_samples)
                .into_par_iter()
                .fold(BTreeMap::new, |mut acc: BTreeMap<u64, u64>, i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    let idx = rng.gen_range(0..total);
                    let zeros = engine.zeros_of_message(&engine.message_at(idx));
                    *acc.entry(code.n as u64 - zeros as u64).or_insert(0) += 1;
                    acc
                })
                .reduce(BTreeMap::new, |mut a, b| {
                    for (w, c) in b {
                        *a.entry(w).or_insert(0) += c;
                    }
                    a
                });
            Ok(WeightSpectrum { mode, counts })
        }
    }
}

/// JSON-facing report: code metadata plus the spectrum as [weight, count]
/// pairs in ascending weight order.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub code: CodeMeta,
    pub mode: SpectrumMode,
    pub spectrum: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeMeta {
    pub kind: CodeKind,
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub d: u32,
    pub m: u32,
    pub n: usize,
    pub k: usize,
}

impl CodeMeta {
    pub fn of(code: &Code) -> CodeMeta {
        CodeMeta {
            kind: code.kind,
            p: code.field.p(),
            e: code.field.e(),
            q: code.field.q(),
            d: code.d,
            m: code.m,
            n: code.n,
            k: code.k,
        }
    }
}

impl SpectrumReport {
    pub fn of(code: &Code, spectrum: &WeightSpectrum) -> SpectrumReport {
        SpectrumReport {
            code: CodeMeta::of(code),
            mode: spectrum.mode,
            spectrum: spectrum.counts.iter().map(|(&w, &c)| (w, c)).collect(),
        }
    }
}

/// Expected minimum distance of the projective code for d <= q: the maximal
/// zero set of a degree-d hypersurface has dq^{m-1} + p_{m-2} points.
pub fn prm_expected_min_weight(q: u64, d: u64, m: u32) -> u64 {
    let pm = crate::geometry::projective_count(q, m);
    let pm2 = if m >= 2 { crate::geometry::projective_count(q, m - 2) } else { 0 };
    pm - d * q.pow(m - 1) - pm2
}

/// Expected minimum distance of the affine code for d < q.
pub fn grm_expected_min_weight(q: u64, d: u64, m: u32) -> u64 {
    q.pow(m) - d * q.pow(m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::poly::{zero_count, Space};

    fn fe(v: u16) -> FieldElement {
        FieldElement::raw(v)
    }

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn build_code_oracles() {
        let f2 = make_field(2, 1).unwrap();
        let c = build_code(CodeKind::Prm, &f2, 1, 1).unwrap();
        assert_eq!((c.n(), c.k()), (3, 2));

        let f3 = make_field(3, 1).unwrap();
        let c = build_code(CodeKind::Prm, &f3, 2, 2).unwrap();
        assert_eq!((c.n(), c.k()), (13, 6));

        let c = build_code(CodeKind::Grm, &f3, 2, 2).unwrap();
        assert_eq!((c.n(), c.k()), (9, 6));

        assert!(matches!(
            build_code(CodeKind::Prm, &f3, 0, 2),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn rank_stays_full_at_degree_q_projective() {
        for (p, e, m) in [(2u32, 1u32, 2u32), (3, 1, 2), (2, 2, 2), (3, 1, 3)] {
            let f = make_field(p, e).unwrap();
            let d = f.q();
            let c = build_code(CodeKind::Prm, &f, d, m).unwrap();
            assert_eq!(c.k(), c.basis_dim(), "PRM rank at d=q, q={}, m={m}", f.q());
        }
    }

    #[test]
    fn affine_code_drops_rank_at_degree_q() {
        // x^q evaluates like x on GF(q), so the affine basis is dependent
        let f2 = make_field(2, 1).unwrap();
        let c = build_code(CodeKind::Grm, &f2, 2, 1).unwrap();
        assert_eq!(c.basis_dim(), 3);
        assert_eq!(c.k(), 2);
        // the code is all of GF(2)^2: spectrum {0:1, 1:2, 2:1}
        let s = weight_spectrum(&c, SpectrumMode::ExhaustiveFull, &opts()).unwrap();
        let expect: BTreeMap<u64, u64> = [(0, 1), (1, 2), (2, 1)].into_iter().collect();
        assert_eq!(s.counts, expect);
    }

    #[test]
    fn codeword_weight_oracles() {
        let f3 = make_field(3, 1).unwrap();
        let c = build_code(CodeKind::Prm, &f3, 1, 2).unwrap();
        assert_eq!(codeword_weight(&c, &[fe(0), fe(0), fe(0)]).unwrap(), 0);
        // x0 vanishes on a line: 13 - 4 = 9
        assert_eq!(codeword_weight(&c, &[fe(1), fe(0), fe(0)]).unwrap(), 9);

        // x0*x1*(x0+x1) = x0^2*x1 + x0*x1^2 has 10 zeros: weight 3
        let c3 = build_code(CodeKind::Prm, &f3, 3, 2).unwrap();
        let mut msg = vec![FieldElement::ZERO; c3.k()];
        let basis = monomial_basis(3, 3, true);
        for (i, mono) in basis.iter().enumerate() {
            if mono.exps() == [2, 1, 0] || mono.exps() == [1, 2, 0] {
                msg[i] = fe(1);
            }
        }
        assert_eq!(codeword_weight(&c3, &msg).unwrap(), 3);

        assert!(matches!(
            codeword_weight(&c, &[fe(1)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn spectrum_oracles() {
        let f2 = make_field(2, 1).unwrap();
        let c = build_code(CodeKind::Prm, &f2, 1, 1).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::ExhaustiveFull, &opts()).unwrap();
        let expect: BTreeMap<u64, u64> = [(0, 1), (2, 3)].into_iter().collect();
        assert_eq!(s.counts, expect);

        let f3 = make_field(3, 1).unwrap();
        let c = build_code(CodeKind::Prm, &f3, 2, 2).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();
        assert_eq!(s.total(), 364);
        assert_eq!(s.min_weight(), Some(6)); // 13 - (2q+1) zeros

        let c = build_code(CodeKind::Grm, &f3, 2, 2).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();
        // max zeros 6 and second-highest 5 give weights 3 and 4
        let low: Vec<u64> = s.distinct_weights(2).iter().map(|&(w, _)| w).collect();
        assert_eq!(low, vec![3, 4]);
    }

    #[test]
    fn full_spectrum_matches_brute_force() {
        // the (q-1)-scaling derivation against a literal walk of all q^k
        // messages
        for (p, e, kind, d, m) in [
            (2u32, 1u32, CodeKind::Prm, 1, 1u32),
            (3, 1, CodeKind::Prm, 2, 2),
            (3, 1, CodeKind::Grm, 2, 2),
            (2, 2, CodeKind::Prm, 1, 2),
        ] {
            let f = make_field(p, e).unwrap();
            let code = build_code(kind, &f, d, m).unwrap();
            let s = weight_spectrum(&code, SpectrumMode::ExhaustiveFull, &opts()).unwrap();

            let q = f.q() as u64;
            let mut brute: BTreeMap<u64, u64> = BTreeMap::new();
            let total = q.pow(code.k() as u32);
            for raw in 0..total {
                let mut v = raw;
                let mut msg = vec![FieldElement::ZERO; code.k()];
                for slot in msg.iter_mut() {
                    *slot = fe((v % q) as u16);
                    v /= q;
                }
                *brute.entry(codeword_weight(&code, &msg).unwrap()).or_insert(0) += 1;
            }
            assert_eq!(s.counts, brute, "kind={kind:?} q={q} d={d} m={m}");
            assert_eq!(s.total(), total);
        }
    }

    #[test]
    fn distinct_weights_oracles() {
        let f3 = make_field(3, 1).unwrap();
        let c = build_code(CodeKind::Prm, &f3, 3, 2).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();
        let first3: Vec<u64> = s.distinct_weights(3).iter().map(|&(w, _)| w).collect();
        assert_eq!(first3, vec![3, 4, 5]);

        let f2 = make_field(2, 1).unwrap();
        let c = build_code(CodeKind::Prm, &f2, 1, 1).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::ExhaustiveFull, &opts()).unwrap();
        assert_eq!(distinct_weights(&s, 5), vec![(2, 3)]);
    }

    #[test]
    fn projective_minimum_weights_match_formula() {
        // d q^{m-1} + p_{m-2} zeros is the maximum, so the minimum weight is
        // p_m minus that
        let cases: &[(u32, u32, u32, u32)] = &[
            // (p, e, m, d_max)
            (2, 1, 2, 2),
            (3, 1, 2, 3),
            (2, 2, 2, 3),
            (5, 1, 2, 3),
            (7, 1, 2, 2),
            (2, 1, 3, 2),
            (3, 1, 3, 2),
        ];
        for &(p, e, m, d_max) in cases {
            let f = make_field(p, e).unwrap();
            let q = f.q() as u64;
            for d in 1..=d_max {
                let c = build_code(CodeKind::Prm, &f, d, m).unwrap();
                let s = weight_spectrum(&c, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();
                assert_eq!(
                    s.min_weight().unwrap(),
                    prm_expected_min_weight(q, d as u64, m),
                    "q={q} d={d} m={m}"
                );
            }
        }
    }

    #[test]
    fn affine_first_two_weights_match_formulas() {
        let cases: &[(u32, u32, u32, u32)] =
            &[(3, 1, 2, 2), (2, 2, 2, 3), (5, 1, 2, 3), (3, 1, 3, 2), (5, 1, 3, 2)];
        for &(p, e, m, d_max) in cases {
            let f = make_field(p, e).unwrap();
            let q = f.q() as u64;
            for d in 2..=d_max {
                let c = build_code(CodeKind::Grm, &f, d, m).unwrap();
                let s = weight_spectrum(&c, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();
                let low = s.distinct_weights(2);
                assert_eq!(low[0].0, grm_expected_min_weight(q, d as u64, m), "min q={q} d={d} m={m}");
                let second = q.pow(m) - d as u64 * q.pow(m - 1) + (d as u64 - 1) * q.pow(m - 2);
                assert_eq!(low[1].0, second, "second q={q} d={d} m={m}");
            }
        }
    }

    #[test]
    fn matrix_and_polynomial_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
        let f3 = make_field(3, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        for code in [
            build_code(CodeKind::Prm, &f3, 2, 2).unwrap(),
            build_code(CodeKind::Prm, &f4, 2, 2).unwrap(),
            build_code(CodeKind::Grm, &f3, 2, 2).unwrap(),
        ] {
            let q = code.field().q() as u16;
            for _ in 0..10_000 {
                let msg: Vec<FieldElement> =
                    (0..code.k()).map(|_| fe(rng.gen_range(0..q))).collect();
                let w = codeword_weight(&code, &msg).unwrap();
                let f = code.message_form(&msg).unwrap();
                let zeros = if f.is_zero() {
                    code.n() as u64
                } else {
                    match code.kind() {
                        CodeKind::Prm => zero_count(&f, Space::Projective).unwrap(),
                        CodeKind::Grm => zero_count(&f, Space::Affine).unwrap(),
                    }
                };
                assert_eq!(w, code.n() as u64 - zeros);
            }
        }
    }

    #[test]
    fn spectrum_invariant_under_column_permutation() {
        use rand::seq::SliceRandom;
        let f3 = make_field(3, 1).unwrap();
        let code = build_code(CodeKind::Prm, &f3, 2, 2).unwrap();
        let base = weight_spectrum(&code, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut perm: Vec<usize> = (0..code.n()).collect();
        perm.shuffle(&mut rng);
        let rows: Vec<Vec<u16>> = code
            .engine_rows()
            .iter()
            .map(|row| perm.iter().map(|&i| row[i]).collect())
            .collect();
        let engine = Enumerator::new(f3.clone(), rows).unwrap();
        let tally = engine.run(&opts(), || Tally::new(code.n())).unwrap();
        let mut counts = BTreeMap::new();
        for (z, &c) in tally.counts.iter().enumerate() {
            if c > 0 {
                counts.insert((code.n() - z) as u64, c);
            }
        }
        assert_eq!(counts, base.counts);
    }

    #[test]
    fn sampled_spectrum_is_seed_deterministic() {
        let f5 = make_field(5, 1).unwrap();
        let code = build_code(CodeKind::Prm, &f5, 2, 2).unwrap();
        let mode = SpectrumMode::Sampled { n_samples: 2000, seed: 7 };
        let a = weight_spectrum(&code, mode, &opts()).unwrap();
        let b = weight_spectrum(&code, mode, &EnumOptions { workers: 2, ..opts() }).unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.total(), 2000);
        // samples only ever hit weights the exhaustive spectrum contains
        let full = weight_spectrum(&code, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();
        for w in a.counts.keys() {
            assert!(full.counts.contains_key(w));
        }
    }

    #[test]
    fn budget_exceeded_surfaces() {
        let f3 = make_field(3, 1).unwrap();
        let code = build_code(CodeKind::Prm, &f3, 2, 2).unwrap();
        let err = weight_spectrum(
            &code,
            SpectrumMode::ExhaustiveUpToScalar,
            &EnumOptions { budget: 10, workers: 0 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn spectrum_report_schema_is_frozen() {
        let f2 = make_field(2, 1).unwrap();
        let code = build_code(CodeKind::Prm, &f2, 1, 1).unwrap();
        let s = weight_spectrum(&code, SpectrumMode::ExhaustiveFull, &opts()).unwrap();
        let report = SpectrumReport::of(&code, &s);
        let js = serde_json::to_string(&report).unwrap();
        assert_eq!(
            js,
            r#"{"code":{"kind":"prm","p":2,"e":1,"q":2,"d":1,"m":1,"n":3,"k":2},"mode":"exhaustive-full","spectrum":[[0,1],[2,3]]}"#
        );
        assert_eq!(s.to_csv(), "weight,count\n0,1\n2,3\n");
    }

    #[test]
    fn spectrum_on_a_large_field_without_dense_tables() {
        // exercises the non-table arithmetic fallback end to end
        let f = make_field(2, 11).unwrap(); // q = 2048
        let code = build_code(CodeKind::Prm, &f, 1, 1).unwrap();
        assert_eq!(code.n(), 2049);
        let s = weight_spectrum(&code, SpectrumMode::ExhaustiveUpToScalar, &opts()).unwrap();
        // every nonzero linear form on P^1 vanishes at exactly one point
        let expect: BTreeMap<u64, u64> = [(2048, 2049)].into_iter().collect();
        assert_eq!(s.counts, expect);
    }
}
