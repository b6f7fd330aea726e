//! Linear-form sampling, multiplication maps, and Weak/Strong Lefschetz
//! verdicts with reproducible certificates.
//!
//! "General linear form" is realized by certified sampling: over the
//! rationals the achieved rank is the maximum over a few independently
//! sampled integer-coefficient forms, which by semicontinuity is a lower
//! bound on the generic rank and equals it except with probability bounded
//! by Schwartz-Zippel at `degree / bound` per sample. Over a small prime
//! field every projective linear form is enumerated instead, since a
//! general form need not exist there.

use crate::field::{random_scalar, FieldSpec, Scalar};
use crate::linalg::ScalarMat;
use crate::poly::{monomial_basis, HomogeneousForm, Monomial, RingCtx};
use crate::quotient::{hilbert_function, GradedIdeal, QuotientAlgebra, QuotientError};
use crate::bounds::HilbertSeq;
use crate::{DEFAULT_BOUND, DEFAULT_SEED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

/// How a linear form was obtained.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum FormProvenance {
    Sampled { seed: u64, bound: u64, index: u32 },
    Exhaustive { index: usize },
    UserGiven,
}

/// A linear form given by its coefficient vector; never all zero.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearForm {
    coeffs: Vec<Scalar>,
    provenance: FormProvenance,
}

impl LinearForm {
    pub fn user_given(coeffs: Vec<Scalar>) -> LinearForm {
        assert!(
            coeffs.iter().any(|c| !c.is_zero()),
            "linear form must be nonzero"
        );
        LinearForm {
            coeffs,
            provenance: FormProvenance::UserGiven,
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn provenance(&self) -> &FormProvenance {
        &self.provenance
    }

    /// The form `c_1 x_1 + ... + c_n x_n` in the given ring.
    pub fn form(&self, ctx: &RingCtx) -> HomogeneousForm {
        assert_eq!(self.coeffs.len(), ctx.num_vars());
        HomogeneousForm::from_terms(
            ctx,
            1,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::var(ctx.num_vars(), i), c.clone())),
        )
        .expect("linear form")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Sampling policy for general linear forms.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SampleOptions {
    pub num_samples: u32,
    pub seed: u64,
    pub bound: u64,
    /// Enumerate all projective linear forms over GF(p) when their number is
    /// at most this limit.
    pub exhaustive_limit: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            num_samples: 3,
            seed: DEFAULT_SEED,
            bound: DEFAULT_BOUND,
            exhaustive_limit: 4096,
        }
    }
}

/// Draws candidate general linear forms. Over the rationals: `num_samples`
/// forms with integer coefficients in `[1, bound]`, one derived seed per
/// sample. Over GF(p) with few enough projective forms: all of them.
pub fn sample_general_forms(ctx: &RingCtx, opts: &SampleOptions) -> Vec<LinearForm> {
    assert!(opts.num_samples >= 1, "need at least one sample");
    let n = ctx.num_vars();
    match ctx.field() {
        FieldSpec::Rationals => (0..opts.num_samples)
            .map(|index| {
                let mut rng = ChaCha8Rng::seed_from_u64(crate::derive_seed(opts.seed, index as u64));
                let coeffs = (0..n)
                    .map(|_| random_scalar(FieldSpec::Rationals, &mut rng, opts.bound))
                    .collect();
                LinearForm {
                    coeffs,
                    provenance: FormProvenance::Sampled {
                        seed: opts.seed,
                        bound: opts.bound,
                        index,
                    },
                }
            })
            .collect(),
        FieldSpec::PrimeField(p) => {
            let count = projective_count(p, n);
            if count.map(|c| c <= opts.exhaustive_limit).unwrap_or(false) {
                enumerate_projective_forms(p, n)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                (0..opts.num_samples)
                    .map(|index| {
                        let coeffs = loop {
                            let c: Vec<Scalar> = (0..n)
                                .map(|_| FieldSpec::PrimeField(p).from_int(rng.gen_range(0..p) as i64))
                                .collect();
                            if c.iter().any(|s| !s.is_zero()) {
                                break c;
                            }
                        };
                        LinearForm {
                            coeffs,
                            provenance: FormProvenance::Sampled {
                                seed: opts.seed,
                                bound: p,
                                index,
                            },
                        }
                    })
                    .collect()
            }
        }
    }
}

fn projective_count(p: u64, n: usize) -> Option<usize> {
    // (p^n - 1) / (p - 1), None on overflow.
    let mut acc: usize = 0;
    let mut power: usize = 1;
    for _ in 0..n {
        acc = acc.checked_add(power)?;
        power = power.checked_mul(usize::try_from(p).ok()?)?;
    }
    Some(acc)
}

/// All nonzero linear forms up to scale: representatives whose first nonzero
/// coefficient is 1, in odometer order.
fn enumerate_projective_forms(p: u64, n: usize) -> Vec<LinearForm> {
    let field = FieldSpec::PrimeField(p);
    let mut out = Vec::new();
    let mut digits = vec![0u64; n];
    loop {
        // Advance odometer.
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
        if digits.iter().find(|&&d| d != 0) == Some(&1) {
            let coeffs = digits.iter().map(|&d| field.from_int(d as i64)).collect();
            out.push(LinearForm {
                coeffs,
                provenance: FormProvenance::Exhaustive { index: out.len() },
            });
        }
    }
}

/// The exact matrix of multiplication by `L^power` from the degree-`d`
/// component to the degree-`d+power` component, in standard-monomial
/// coordinates.
#[derive(Clone, Debug)]
pub struct MultiplicationMap {
    pub source_degree: usize,
    pub power: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: ScalarMat,
    pub rank: usize,
}

pub fn mult_map(
    algebra: &QuotientAlgebra,
    l: &LinearForm,
    d: usize,
    power: usize,
) -> MultiplicationMap {
    assert!(power >= 1, "power must be at least 1");
    let h = algebra.hilbert();
    let source_dim = h.get(d);
    let target_dim = h.get(d + power);
    if source_dim == 0 || target_dim == 0 {
        return MultiplicationMap {
            source_degree: d,
            power,
            source_dim,
            target_dim,
            matrix: ScalarMat::zero(algebra.ctx().field(), target_dim, source_dim),
            rank: 0,
        };
    }
    let ctx = algebra.ctx();
    let lform = l
        .form(ctx)
        .pow(power)
        .expect("power of a linear form");
    let target_slice = algebra.ideal().component(d + power);
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(source_dim); target_dim];
    for u in algebra.quotient_basis(d) {
        let uf = HomogeneousForm::from_monomial(ctx, u.clone(), ctx.field().one())
            .expect("monomial form")
            .multiply(&lform)
            .expect("same ring");
        let coords = target_slice.reduce_to_standard(&uf);
        for (t, c) in coords.into_iter().enumerate() {
            rows[t].push(c);
        }
    }
    let matrix = ScalarMat::from_rows(ctx.field(), rows);
    let rank = matrix.rank();
    MultiplicationMap {
        source_degree: d,
        power,
        source_dim,
        target_dim,
        matrix,
        rank,
    }
}

/// Which side of the maximal-rank condition is active.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Expectation {
    Injective,
    Surjective,
    Bijective,
}

fn expectation(source: usize, target: usize) -> Expectation {
    use std::cmp::Ordering::*;
    match source.cmp(&target) {
        Less => Expectation::Injective,
        Greater => Expectation::Surjective,
        Equal => Expectation::Bijective,
    }
}

/// One row of a Lefschetz report: the map from degree `d` by `L^power`.
#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub degree: usize,
    pub power: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub expected: usize,
    pub achieved: usize,
    pub expectation: Expectation,
    /// True when the rank was not computed but inferred from surjectivity /
    /// injectivity propagation for level algebras.
    pub inferred: bool,
}

/// A failure certificate: either a nonzero kernel element (with `L * w` in
/// the ideal and `w` outside it) or the cokernel dimension.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub degree: usize,
    pub power: usize,
    #[serde(skip)]
    pub kernel_form: Option<HomogeneousForm>,
    pub kernel_form_text: Option<String>,
    pub cokernel_dim: Option<usize>,
    pub sample_text: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    HasProperty,
    Fails,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CheckKind {
    Wlp,
    Slp,
}

/// Sampling metadata carried by every report so verdicts are reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct SamplingInfo {
    pub field: FieldSpec,
    pub num_samples: usize,
    pub seed: u64,
    pub bound: u64,
    pub exhaustive: bool,
    pub shortcut_used: bool,
}

/// Verdict plus per-degree ranks, failing degrees, witness, and sampling
/// metadata.
#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub kind: CheckKind,
    pub verdict: Verdict,
    pub rows: Vec<RankRow>,
    /// (degree, power) pairs where the achieved rank missed the expected one.
    pub failing: Vec<(usize, usize)>,
    pub witness: Option<Witness>,
    pub sampling: SamplingInfo,
}

impl LefschetzReport {
    pub fn has_property(&self) -> bool {
        self.verdict == Verdict::HasProperty
    }

    /// The row for a given (degree, power).
    pub fn row(&self, degree: usize, power: usize) -> Option<&RankRow> {
        self.rows
            .iter()
            .find(|r| r.degree == degree && r.power == power)
    }
}

/// Options for the WLP / SLP checks.
#[derive(Clone, Copy, Debug)]
pub struct LefschetzOptions {
    pub samples: SampleOptions,
    /// For level algebras, compute only the pivotal degree(s) and infer the
    /// rest by surjectivity / injectivity propagation.
    pub use_level_shortcut: bool,
}

impl Default for LefschetzOptions {
    fn default() -> Self {
        LefschetzOptions {
            samples: SampleOptions::default(),
            use_level_shortcut: false,
        }
    }
}

struct DegreeOutcome {
    achieved: usize,
    best_sample: usize,
}

/// Max rank over the samples at one (degree, power), with the best sample.
fn achieved_rank(
    algebra: &QuotientAlgebra,
    samples: &[LinearForm],
    d: usize,
    power: usize,
) -> DegreeOutcome {
    let mut best = DegreeOutcome {
        achieved: 0,
        best_sample: 0,
    };
    let expected = algebra
        .hilbert()
        .get(d)
        .min(algebra.hilbert().get(d + power));
    for (i, l) in samples.iter().enumerate() {
        let rank = mult_map(algebra, l, d, power).rank;
        if rank > best.achieved || i == 0 {
            best = DegreeOutcome {
                achieved: rank,
                best_sample: i,
            };
        }
        if best.achieved == expected {
            break;
        }
    }
    best
}

fn build_witness(
    algebra: &QuotientAlgebra,
    samples: &[LinearForm],
    row: &RankRow,
    best_sample: usize,
) -> Witness {
    let l = &samples[best_sample];
    let map = mult_map(algebra, l, row.degree, row.power);
    let kernel = map.matrix.kernel_basis();
    let (kernel_form, kernel_form_text) = match kernel.first() {
        Some(v) if row.source_dim > 0 => {
            let w = algebra.element_from_coords(row.degree, v);
            // Re-verify: L^s * w lands in the ideal, w does not.
            let lf = l.form(algebra.ctx()).pow(row.power).expect("power");
            let prod = lf.multiply(&w).expect("same ring");
            let target = algebra.ideal().component(row.degree + row.power);
            debug_assert!(target.contains_form(&prod));
            debug_assert!(!algebra
                .ideal()
                .component(row.degree)
                .contains_form(&w));
            let text = w.to_string();
            (Some(w), Some(text))
        }
        _ => (None, None),
    };
    let cokernel_dim = if row.target_dim > map.rank {
        Some(row.target_dim - map.rank)
    } else {
        None
    };
    Witness {
        degree: row.degree,
        power: row.power,
        kernel_form,
        kernel_form_text,
        cokernel_dim,
        sample_text: l.to_string(),
    }
}

fn sampling_info(
    ctx: &RingCtx,
    samples: &[LinearForm],
    opts: &LefschetzOptions,
    shortcut_used: bool,
) -> SamplingInfo {
    let exhaustive = samples
        .iter()
        .all(|l| matches!(l.provenance(), FormProvenance::Exhaustive { .. }));
    SamplingInfo {
        field: ctx.field(),
        num_samples: samples.len(),
        seed: opts.samples.seed,
        bound: opts.samples.bound,
        exhaustive,
        shortcut_used,
    }
}

/// Decides the Weak Lefschetz Property: multiplication by a general linear
/// form has maximal rank between every pair of consecutive degrees.
pub fn wlp_check(algebra: &QuotientAlgebra, opts: &LefschetzOptions) -> LefschetzReport {
    let samples = sample_general_forms(algebra.ctx(), &opts.samples);
    let e = algebra.socle_degree();
    let h = algebra.hilbert().clone();

    if opts.use_level_shortcut
        && algebra.classification().is_level
        && h.is_unimodal()
        && e >= 1
    {
        if let Some(report) = wlp_shortcut(algebra, &samples, opts, e, &h) {
            return report;
        }
    }

    let mut rows = Vec::new();
    let mut failing = Vec::new();
    let mut witness = None;
    for d in 0..e {
        let outcome = achieved_rank(algebra, &samples, d, 1);
        let expected = h.get(d).min(h.get(d + 1));
        let row = RankRow {
            degree: d,
            power: 1,
            source_dim: h.get(d),
            target_dim: h.get(d + 1),
            expected,
            achieved: outcome.achieved,
            expectation: expectation(h.get(d), h.get(d + 1)),
            inferred: false,
        };
        if outcome.achieved < expected {
            failing.push((d, 1));
            if witness.is_none() {
                witness = Some(build_witness(algebra, &samples, &row, outcome.best_sample));
            }
        }
        rows.push(row);
    }
    let verdict = if failing.is_empty() {
        Verdict::HasProperty
    } else {
        Verdict::Fails
    };
    LefschetzReport {
        kind: CheckKind::Wlp,
        verdict,
        rows,
        failing,
        witness,
        sampling: sampling_info(algebra.ctx(), &samples, opts, false),
    }
}

/// Fast path for level algebras with unimodal Hilbert function: check the
/// smallest degree d0 with h(d0) >= h(d0+1) (surjectivity propagates
/// upward from there) and, when the pivot is strictly decreasing, also
/// d0 - 1 (injectivity propagates downward for level algebras). On any
/// pivot failure fall back to the full scan so failing degrees are honest.
fn wlp_shortcut(
    algebra: &QuotientAlgebra,
    samples: &[LinearForm],
    opts: &LefschetzOptions,
    e: usize,
    h: &HilbertSeq,
) -> Option<LefschetzReport> {
    let d0 = (0..e).find(|&d| h.get(d) >= h.get(d + 1)).unwrap_or(e - 1);
    let mut pivots = vec![d0];
    if h.get(d0) > h.get(d0 + 1) && d0 > 0 {
        pivots.insert(0, d0 - 1);
    }
    let mut pivot_outcomes = Vec::new();
    for &d in &pivots {
        let outcome = achieved_rank(algebra, samples, d, 1);
        let expected = h.get(d).min(h.get(d + 1));
        if outcome.achieved < expected {
            return None; // fall back to the full scan
        }
        pivot_outcomes.push(outcome);
    }
    let rows = (0..e)
        .map(|d| {
            let expected = h.get(d).min(h.get(d + 1));
            RankRow {
                degree: d,
                power: 1,
                source_dim: h.get(d),
                target_dim: h.get(d + 1),
                expected,
                achieved: expected,
                expectation: expectation(h.get(d), h.get(d + 1)),
                inferred: !pivots.contains(&d),
            }
        })
        .collect();
    Some(LefschetzReport {
        kind: CheckKind::Wlp,
        verdict: Verdict::HasProperty,
        rows,
        failing: Vec::new(),
        witness: None,
        sampling: sampling_info(algebra.ctx(), samples, opts, true),
    })
}

/// Decides the Strong Lefschetz Property: maximal rank for every power of a
/// general linear form.
pub fn slp_check(algebra: &QuotientAlgebra, opts: &LefschetzOptions) -> LefschetzReport {
    let samples = sample_general_forms(algebra.ctx(), &opts.samples);
    let e = algebra.socle_degree();
    let h = algebra.hilbert().clone();
    let mut rows = Vec::new();
    let mut failing = Vec::new();
    let mut witness = None;
    for s in 1..=e.max(1) {
        for d in 0..=e.saturating_sub(s) {
            if d + s > e {
                continue;
            }
            let outcome = achieved_rank(algebra, &samples, d, s);
            let expected = h.get(d).min(h.get(d + s));
            let row = RankRow {
                degree: d,
                power: s,
                source_dim: h.get(d),
                target_dim: h.get(d + s),
                expected,
                achieved: outcome.achieved,
                expectation: expectation(h.get(d), h.get(d + s)),
                inferred: false,
            };
            if outcome.achieved < expected {
                failing.push((d, s));
                if witness.is_none() {
                    witness = Some(build_witness(algebra, &samples, &row, outcome.best_sample));
                }
            }
            rows.push(row);
        }
    }
    let verdict = if failing.is_empty() {
        Verdict::HasProperty
    } else {
        Verdict::Fails
    };
    LefschetzReport {
        kind: CheckKind::Slp,
        verdict,
        rows,
        failing,
        witness,
        sampling: sampling_info(algebra.ctx(), &samples, opts, false),
    }
}

/// Hilbert function of `R/(I, L)` for a concrete linear form.
pub fn quotient_by_linear_hf(
    algebra: &QuotientAlgebra,
    l: &LinearForm,
) -> Result<HilbertSeq, QuotientError> {
    let lf = l.form(algebra.ctx());
    let bigger = algebra.ideal().plus_form(&lf)?;
    hilbert_function(&bigger, algebra.socle_degree() + 2)
}

/// Positive part of the first difference of `h`: the reduction row that the
/// WLP forces.
pub fn positive_first_difference(h: &HilbertSeq) -> HilbertSeq {
    let diff = h.first_difference();
    HilbertSeq::new(diff.iter().map(|&c| c.max(0) as usize).collect())
}

/// Errors from the three-generator GCD criterion.
#[derive(Clone, PartialEq, Debug)]
pub enum CriterionError {
    /// Requires characteristic zero.
    CharNotZero { characteristic: u64 },
    /// The ideal does not have exactly three minimal generators of degrees
    /// (a, b, b) with 2 <= a <= b.
    WrongShape(String),
    Quotient(QuotientError),
}

impl fmt::Display for CriterionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionError::CharNotZero { characteristic } => {
                write!(f, "criterion needs characteristic 0, got {}", characteristic)
            }
            CriterionError::WrongShape(msg) => write!(f, "wrong generator shape: {}", msg),
            CriterionError::Quotient(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CriterionError {}

impl From<QuotientError> for CriterionError {
    fn from(e: QuotientError) -> Self {
        CriterionError::Quotient(e)
    }
}

/// Outcome of the three-generator GCD criterion: `dim [R/(J,L)]_b` equals
/// `a - 1` exactly when the generators have a GCD of degree `a - 1`, and
/// `a - 2` otherwise (characteristic zero).
#[derive(Clone, Debug, Serialize)]
pub struct GcdCriterionReport {
    pub deg_a: usize,
    pub deg_b: usize,
    pub dim_b: usize,
    pub gcd_degree: usize,
    pub criterion_consistent: bool,
    pub sample_text: String,
}

/// Checks both sides of the criterion independently for a concrete linear
/// form. `allow_positive_characteristic` bypasses the characteristic-zero
/// requirement so the failure of the criterion over small prime fields can
/// be demonstrated.
pub fn gcd_criterion_check(
    ideal: &GradedIdeal,
    l: &LinearForm,
    allow_positive_characteristic: bool,
) -> Result<GcdCriterionReport, CriterionError> {
    let p = ideal.ctx().field().characteristic();
    if p != 0 && !allow_positive_characteristic {
        return Err(CriterionError::CharNotZero { characteristic: p });
    }
    let gens = ideal.generators();
    if gens.len() != 3 {
        return Err(CriterionError::WrongShape(format!(
            "expected 3 generators, found {}",
            gens.len()
        )));
    }
    let mut degrees: Vec<usize> = gens.iter().map(|g| g.degree()).collect();
    degrees.sort_unstable();
    let (a, b) = (degrees[0], degrees[2]);
    if degrees[1] != b {
        return Err(CriterionError::WrongShape(format!(
            "generator degrees {:?} are not of shape (a, b, b)",
            degrees
        )));
    }
    if a < 2 {
        return Err(CriterionError::WrongShape(format!(
            "smallest degree must be at least 2, got {}",
            a
        )));
    }
    // Minimality: the right number of fresh generators in each degree <= b
    // and none elsewhere below b.
    for d in 1..=b {
        let fresh = ideal.fresh_generator_count(d);
        let expected = if a == b && d == a {
            3
        } else if d == a {
            1
        } else if d == b {
            2
        } else {
            0
        };
        if fresh != expected {
            return Err(CriterionError::WrongShape(format!(
                "degree {} has {} minimal generators, expected {}",
                d, fresh, expected
            )));
        }
    }
    // dim [R/(J,L)]_b by direct elimination on J_b + L*R_{b-1}.
    let ctx = ideal.ctx();
    let slice = ideal.component(b);
    let lform = l.form(ctx);
    let mut rows: Vec<Vec<Scalar>> = slice.echelon().rows().to_vec();
    let target = slice.monomials().to_vec();
    for m in monomial_basis(ctx, b - 1) {
        let prod = HomogeneousForm::from_monomial(ctx, m, ctx.field().one())
            .expect("monomial form")
            .multiply(&lform)
            .expect("same ring");
        rows.push(prod.coefficient_vector(&target));
    }
    let rank = ScalarMat::from_rows(ctx.field(), rows).rank();
    let dim_b = slice.ambient_dim() - rank;
    let gcd = crate::poly::gcd_forms(gens).map_err(QuotientError::from)?;
    let gcd_degree = gcd.degree();
    let criterion_consistent = if gcd_degree == a - 1 {
        dim_b == a - 1
    } else {
        dim_b == a - 2
    };
    Ok(GcdCriterionReport {
        deg_a: a,
        deg_b: b,
        dim_b,
        gcd_degree,
        criterion_consistent,
        sample_text: l.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_forms, parse_ring};
    use crate::quotient::GradedIdeal;

    fn algebra(ring: &str, gens: &str) -> QuotientAlgebra {
        let ctx = parse_ring(ring).unwrap();
        let forms = parse_forms(&ctx, gens).unwrap();
        QuotientAlgebra::new(GradedIdeal::new(&ctx, forms).unwrap(), 64).unwrap()
    }

    #[test]
    fn gf2_enumerates_seven_forms() {
        let ctx = parse_ring("GF(2)[x,y,z]").unwrap();
        let forms = sample_general_forms(&ctx, &SampleOptions::default());
        assert_eq!(forms.len(), 7);
        for f in &forms {
            assert!(matches!(f.provenance(), FormProvenance::Exhaustive { .. }));
        }
    }

    #[test]
    fn rational_sampling_deterministic() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        let opts = SampleOptions::default();
        let a = sample_general_forms(&ctx, &opts);
        let b = sample_general_forms(&ctx, &opts);
        assert_eq!(a.len(), 3);
        assert_eq!(a, b);
    }

    #[test]
    fn squares_have_wlp_over_qq() {
        let a = algebra("QQ[x,y,z]", "x^2, y^2, z^2");
        let report = wlp_check(&a, &LefschetzOptions::default());
        assert!(report.has_property());
        // Injective 3 -> 3 at degree 1.
        assert_eq!(report.row(1, 1).unwrap().achieved, 3);
    }

    #[test]
    fn squares_fail_wlp_over_gf2() {
        let a = algebra("GF(2)[x,y,z]", "x^2, y^2, z^2");
        let report = wlp_check(&a, &LefschetzOptions::default());
        assert!(!report.has_property());
        assert!(report.sampling.exhaustive);
        assert_eq!(report.sampling.num_samples, 7);
        assert_eq!(report.failing, vec![(1, 1)]);
        assert_eq!(report.row(1, 1).unwrap().achieved, 2);
        // Every single form stays at rank <= 2.
        for l in sample_general_forms(a.ctx(), &SampleOptions::default()) {
            assert!(mult_map(&a, &l, 1, 1).rank <= 2);
        }
        let w = report.witness.as_ref().unwrap();
        assert!(w.kernel_form.is_some());
    }

    #[test]
    fn map_beyond_socle_is_zero() {
        let a = algebra("QQ[x,y,z]", "x^2, y^2, z^2");
        let l = &sample_general_forms(a.ctx(), &SampleOptions::default())[0];
        let m = mult_map(&a, l, 7, 1);
        assert_eq!(m.rank, 0);
        assert_eq!(m.source_dim, 0);
    }

    #[test]
    fn squares_have_slp() {
        let a = algebra("QQ[x,y,z]", "x^2, y^2, z^2");
        let report = slp_check(&a, &LefschetzOptions::default());
        assert!(report.has_property());
        // All (d, s) with d + s <= 3 are covered.
        assert_eq!(report.rows.len(), 3 + 2 + 1);
    }

    #[test]
    fn reduction_row_examples() {
        let a = algebra("QQ[x,y,z]", "x^2, y^2, z^2");
        let l = &sample_general_forms(a.ctx(), &SampleOptions::default())[0];
        let row = quotient_by_linear_hf(&a, l).unwrap();
        assert_eq!(row, positive_first_difference(a.hilbert()));

        // Over GF(2) with L = x+y+z the reduction stays positive in degree 2,
        // certifying the surjectivity failure.
        let b = algebra("GF(2)[x,y,z]", "x^2, y^2, z^2");
        let gf2 = FieldSpec::prime_field(2).unwrap();
        let l = LinearForm::user_given(vec![gf2.one(), gf2.one(), gf2.one()]);
        let row = quotient_by_linear_hf(&b, &l).unwrap();
        assert!(row.get(2) > 0);
        assert!(mult_map(&b, &l, 1, 1).rank < b.hilbert().get(2));
    }

    #[test]
    fn shortcut_agrees_on_level_examples() {
        for (ring, gens) in [
            ("QQ[x,y,z]", "x^2, y^2, z^2"),
            ("QQ[x,y,z]", "x^3, y^3, z^3, x*y*z"),
        ] {
            let a = algebra(ring, gens);
            let full = wlp_check(&a, &LefschetzOptions::default());
            let fast = wlp_check(
                &a,
                &LefschetzOptions {
                    use_level_shortcut: true,
                    ..Default::default()
                },
            );
            assert_eq!(full.verdict, fast.verdict, "{}", gens);
        }
    }

    #[test]
    fn gcd_criterion_shared_factor() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        // F = x * q1 (degree 2), G1 = x * c1, G2 = x * c2 (degree 3):
        // GCD of degree 1 = a - 1.
        let gens = parse_forms(
            &ctx,
            "x*(x + 2*y + 3*z), x*(x^2 + y*z), x*(y^2 + 5*z^2)",
        )
        .unwrap();
        let ideal = GradedIdeal::new(&ctx, gens).unwrap();
        let l = &sample_general_forms(&ctx, &SampleOptions::default())[0];
        let report = gcd_criterion_check(&ideal, l, false).unwrap();
        assert_eq!((report.deg_a, report.deg_b), (2, 3));
        assert_eq!(report.gcd_degree, 1);
        assert_eq!(report.dim_b, 1);
        assert!(report.criterion_consistent);
    }

    #[test]
    fn gcd_criterion_coprime() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        let gens = parse_forms(
            &ctx,
            "x^2 + y*z, x^3 + y^3 + z^3, x*y^2 + 7*z^3",
        )
        .unwrap();
        let ideal = GradedIdeal::new(&ctx, gens).unwrap();
        let l = &sample_general_forms(&ctx, &SampleOptions::default())[0];
        let report = gcd_criterion_check(&ideal, l, false).unwrap();
        assert_eq!(report.gcd_degree, 0);
        assert_eq!(report.dim_b, 0);
        assert!(report.criterion_consistent);
    }

    #[test]
    fn gcd_criterion_char2_violation() {
        let ctx = parse_ring("GF(2)[x,y,z]").unwrap();
        let gens = parse_forms(&ctx, "x^2, y^2, z^2").unwrap();
        let ideal = GradedIdeal::new(&ctx, gens).unwrap();
        assert!(matches!(
            gcd_criterion_check(
                &ideal,
                &sample_general_forms(&ctx, &SampleOptions::default())[0],
                false
            ),
            Err(CriterionError::CharNotZero { characteristic: 2 })
        ));
        // With the characteristic guard bypassed, every linear form violates
        // the criterion: dim is a-1 = 1 but there is no degree-1 GCD.
        for l in sample_general_forms(&ctx, &SampleOptions::default()) {
            let report = gcd_criterion_check(&ideal, &l, true).unwrap();
            assert_eq!(report.dim_b, 1);
            assert_eq!(report.gcd_degree, 0);
            assert!(!report.criterion_consistent);
        }
    }

    #[test]
    fn gcd_criterion_rejects_wrong_shape() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        let gens = parse_forms(&ctx, "x^2, y^2, x^2 + y^2").unwrap();
        let ideal = GradedIdeal::new(&ctx, gens).unwrap();
        let l = &sample_general_forms(&ctx, &SampleOptions::default())[0];
        assert!(matches!(
            gcd_criterion_check(&ideal, l, false),
            Err(CriterionError::WrongShape(_))
        ));
    }
}
