//! Macaulay inverse systems: dual modules, contraction spans, annihilator
//! ideals, level/Gorenstein construction from dual generators, seeded random
//! instance generators, and the Hessian cross-check.
//!
//! The pairing is divided-power contraction, so everything here is valid in
//! positive characteristic as well; over the rationals the spans agree
//! degreewise with the ones differentiation would give.

use crate::field::Scalar;
use crate::lefschetz::{sample_general_forms, LefschetzOptions};
use crate::linalg::{Echelon, ScalarMat};
use crate::poly::{
    contract, contract_form, hessian_det, monomial_basis, HomogeneousForm, PolyError, RingCtx,
};
use crate::quotient::{ideal_from_components, DegreeBasis, QuotientAlgebra, QuotientError};
use crate::bounds::HilbertSeq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Errors from dual-module construction and sampling.
#[derive(Clone, PartialEq, Debug)]
pub enum DualError {
    ZeroGenerator,
    ContextMismatch,
    /// Constrained sampling failed to meet the constraint.
    ConstraintUnsatisfied { max_retries: u32 },
    /// Random level generators stayed linearly dependent.
    DependentGenerators { max_retries: u32 },
    /// Hessian checks need characteristic zero.
    CharNotZero { characteristic: u64 },
    Poly(PolyError),
    Quotient(QuotientError),
}

impl fmt::Display for DualError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualError::ZeroGenerator => write!(f, "dual generators must be nonzero"),
            DualError::ContextMismatch => write!(f, "mixed ring contexts"),
            DualError::ConstraintUnsatisfied { max_retries } => {
                write!(f, "constraint not met after {} retries", max_retries)
            }
            DualError::DependentGenerators { max_retries } => {
                write!(f, "generators dependent after {} retries", max_retries)
            }
            DualError::CharNotZero { characteristic } => {
                write!(f, "needs characteristic 0, got {}", characteristic)
            }
            DualError::Poly(e) => write!(f, "{}", e),
            DualError::Quotient(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for DualError {}

impl From<PolyError> for DualError {
    fn from(e: PolyError) -> Self {
        DualError::Poly(e)
    }
}

impl From<QuotientError> for DualError {
    fn from(e: QuotientError) -> Self {
        DualError::Quotient(e)
    }
}

/// A finitely generated inverse system: forms in the dual variables, closed
/// under contraction.
///
/// The pairing is divided-power contraction throughout. Over characteristic
/// zero, input forms are read as ordinary polynomials and embedded into the
/// divided-power module (each coefficient multiplied by the factorial of its
/// exponent vector), so spans and annihilators agree degreewise with the
/// classical differentiation convention. Over GF(p) the coefficients are
/// taken verbatim as divided-power coordinates, which keeps the module
/// well-defined in small characteristic.
#[derive(Clone, Debug)]
pub struct DualModule {
    ctx: RingCtx,
    generators: Vec<HomogeneousForm>,
}

impl DualModule {
    pub fn new(ctx: &RingCtx, generators: Vec<HomogeneousForm>) -> Result<DualModule, DualError> {
        if generators.is_empty() {
            return Err(DualError::ZeroGenerator);
        }
        let mut stored = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.ctx() != ctx {
                return Err(DualError::ContextMismatch);
            }
            if g.is_zero() {
                return Err(DualError::ZeroGenerator);
            }
            stored.push(match ctx.field() {
                crate::field::FieldSpec::Rationals => divided_power_embedding(g),
                crate::field::FieldSpec::PrimeField(_) => g.clone(),
            });
        }
        Ok(DualModule {
            ctx: ctx.clone(),
            generators: stored,
        })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn generators(&self) -> &[HomogeneousForm] {
        &self.generators
    }

    /// Largest generator degree: the socle degree of the dual algebra.
    pub fn top_degree(&self) -> usize {
        self.generators
            .iter()
            .map(|g| g.degree())
            .max()
            .expect("nonempty")
    }

    /// Reduced basis of the degree-`d` component: the span of all
    /// contractions of the generators down to degree `d`.
    pub fn derivative_span(&self, d: usize) -> DegreeBasis {
        let basis = monomial_basis(&self.ctx, d);
        let mut rows = Vec::new();
        for g in &self.generators {
            if g.degree() < d {
                continue;
            }
            for m in monomial_basis(&self.ctx, g.degree() - d) {
                let derived = contract(&m, g).expect("degree checked");
                if !derived.is_zero() {
                    rows.push(derived.coefficient_vector(&basis));
                }
            }
        }
        let ech = if rows.is_empty() {
            Echelon::empty(self.ctx.field(), basis.len())
        } else {
            ScalarMat::from_rows(self.ctx.field(), rows).rref()
        };
        DegreeBasis::new(&self.ctx, d, ech)
    }

    /// Dimensions of the components from degree 0 through the top degree;
    /// by Macaulay duality this is the Hilbert function of `R/Ann`.
    pub fn dual_hilbert(&self) -> HilbertSeq {
        let e = self.top_degree();
        HilbertSeq::new((0..=e).map(|d| self.derivative_span(d).rank()).collect())
    }

    /// The degree-`d` slice of the annihilator: the kernel of contraction
    /// against every generator simultaneously.
    pub fn annihilator_component(&self, d: usize) -> DegreeBasis {
        let source = monomial_basis(&self.ctx, d);
        // One block of constraint rows per generator of degree >= d.
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(source.len());
        let mut total_rows = 0;
        let active: Vec<&HomogeneousForm> = self
            .generators
            .iter()
            .filter(|g| g.degree() >= d)
            .collect();
        let target_bases: Vec<Vec<crate::poly::Monomial>> = active
            .iter()
            .map(|g| monomial_basis(&self.ctx, g.degree() - d))
            .collect();
        for m in &source {
            let mut col = Vec::new();
            for (g, tbasis) in active.iter().zip(&target_bases) {
                let image = contract(m, g).expect("degree checked");
                col.extend(image.coefficient_vector(tbasis));
            }
            total_rows = col.len();
            columns.push(col);
        }
        let kernel = if total_rows == 0 {
            (0..source.len())
                .map(|i| {
                    (0..source.len())
                        .map(|j| {
                            if i == j {
                                self.ctx.field().one()
                            } else {
                                self.ctx.field().zero()
                            }
                        })
                        .collect()
                })
                .collect()
        } else {
            let rows: Vec<Vec<Scalar>> = (0..total_rows)
                .map(|r| columns.iter().map(|c| c[r].clone()).collect())
                .collect();
            ScalarMat::from_rows(self.ctx.field(), rows).kernel_basis()
        };
        let ech = if kernel.is_empty() {
            Echelon::empty(self.ctx.field(), source.len())
        } else {
            ScalarMat::from_rows(self.ctx.field(), kernel).rref()
        };
        DegreeBasis::new(&self.ctx, d, ech)
    }
}

/// Multiplies each coefficient by the factorial of its exponent vector:
/// the embedding of an ordinary polynomial into divided powers.
fn divided_power_embedding(g: &HomogeneousForm) -> HomogeneousForm {
    let field = g.ctx().field();
    HomogeneousForm::from_terms(
        g.ctx(),
        g.degree(),
        g.terms().map(|(m, c)| {
            let mut fact = num_bigint::BigInt::from(1);
            for &e in m.exponents() {
                for k in 2..=e as u64 {
                    fact *= k;
                }
            }
            let mult = Scalar::from_bigint(field, fact);
            (m.clone(), c.mul(&mult).expect("same field"))
        }),
    )
    .expect("rescaled terms stay homogeneous")
}

/// The quotient by the annihilator ideal of `M`, with generators extracted
/// degreewise through `top_degree + 1` (beyond which the annihilator is all
/// of `R`). Equal-degree independent generators give a level algebra whose
/// type is the number of generators.
pub fn algebra_from_dual(module: &DualModule, cap: usize) -> Result<QuotientAlgebra, DualError> {
    let e = module.top_degree();
    let components = (0..=e + 1)
        .map(|d| Arc::new(module.annihilator_component(d)))
        .collect();
    let ideal = ideal_from_components(module.ctx(), components)?;
    Ok(QuotientAlgebra::new(ideal, cap.max(e + 2))?)
}

/// A random form of the given degree with integer coefficients in
/// `[-999, 999]`; resamples in the unlikely event of the zero form.
pub fn random_dual_form(ctx: &RingCtx, degree: usize, rng: &mut ChaCha8Rng) -> HomogeneousForm {
    let basis = monomial_basis(ctx, degree);
    loop {
        let form = HomogeneousForm::from_terms(
            ctx,
            degree,
            basis
                .iter()
                .cloned()
                .map(|m| (m, ctx.field().from_int(rng.gen_range(-999i64..=999)))),
        )
        .expect("random form");
        if !form.is_zero() {
            return form;
        }
    }
}

/// Gorenstein by construction: the algebra dual to a single random form of
/// degree `e`.
pub fn random_gorenstein(
    ctx: &RingCtx,
    e: usize,
    rng: &mut ChaCha8Rng,
) -> Result<QuotientAlgebra, DualError> {
    assert!(e >= 1, "socle degree must be at least 1");
    let f = random_dual_form(ctx, e, rng);
    let module = DualModule::new(ctx, vec![f])?;
    algebra_from_dual(&module, e + 2)
}

/// An upper bound `h_degree <= bound` imposed on one entry of the Hilbert
/// function of a constrained random Gorenstein algebra.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DegreeBound {
    pub degree: usize,
    pub bound: usize,
}

/// Gorenstein with `h_s <= c`: the dual form is drawn from the joint kernel
/// of contraction by `dim R_s - c` random degree-`s` forms, which forces
/// that many forms into the annihilator. Rejection alone essentially never
/// lands in the constrained locus, so the kernel construction does the work
/// and the loop only guards degenerate draws.
pub fn random_gorenstein_constrained(
    ctx: &RingCtx,
    e: usize,
    constraint: DegreeBound,
    rng: &mut ChaCha8Rng,
    max_retries: u32,
) -> Result<QuotientAlgebra, DualError> {
    assert!(e >= 1, "socle degree must be at least 1");
    let s = constraint.degree;
    let ambient = monomial_basis(ctx, s).len();
    if constraint.bound >= ambient || s > e {
        return random_gorenstein(ctx, e, rng);
    }
    let forced = ambient - constraint.bound;
    let e_basis = monomial_basis(ctx, e);
    for _ in 0..max_retries {
        // Stack the contraction-by-q_j constraints on the degree-e dual
        // space. The columns go through the same divided-power embedding the
        // module constructor applies, so the kernel really does force q_j
        // into the annihilator of the stored generator.
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let drop_basis = monomial_basis(ctx, e - s);
        for _ in 0..forced {
            let q = random_dual_form(ctx, s, rng);
            let mut block: Vec<Vec<Scalar>> = vec![Vec::with_capacity(e_basis.len()); drop_basis.len()];
            for m in &e_basis {
                let unit = HomogeneousForm::from_monomial(ctx, m.clone(), ctx.field().one())
                    .expect("monomial form");
                let embedded = match ctx.field() {
                    crate::field::FieldSpec::Rationals => divided_power_embedding(&unit),
                    crate::field::FieldSpec::PrimeField(_) => unit,
                };
                let image = contract_form(&q, &embedded).expect("degrees checked");
                let coords = image.coefficient_vector(&drop_basis);
                for (r, c) in coords.into_iter().enumerate() {
                    block[r].push(c);
                }
            }
            rows.extend(block);
        }
        let kernel = ScalarMat::from_rows(ctx.field(), rows).kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        // A random integer combination of the kernel basis.
        let mut coords = vec![ctx.field().zero(); e_basis.len()];
        for v in &kernel {
            let c = ctx.field().from_int(rng.gen_range(-999i64..=999));
            for (i, entry) in v.iter().enumerate() {
                if !entry.is_zero() {
                    coords[i] = coords[i].add(&entry.mul(&c).expect("field")).expect("field");
                }
            }
        }
        let f = HomogeneousForm::from_vector(ctx, e, &e_basis, &coords);
        if f.is_zero() {
            continue;
        }
        let module = DualModule::new(ctx, vec![f])?;
        let algebra = algebra_from_dual(&module, e + 2)?;
        if algebra.hilbert().get(s) <= constraint.bound
            && algebra.socle_degree() == e
        {
            return Ok(algebra);
        }
    }
    Err(DualError::ConstraintUnsatisfied { max_retries })
}

/// Level of type `t` by construction: `t` independent random forms of
/// degree `e`; retries internally while the sampled generators are
/// dependent.
pub fn random_level(
    ctx: &RingCtx,
    e: usize,
    t: usize,
    rng: &mut ChaCha8Rng,
) -> Result<QuotientAlgebra, DualError> {
    assert!(t >= 1, "type must be at least 1");
    let max_retries = 50;
    for _ in 0..max_retries {
        let gens: Vec<HomogeneousForm> = (0..t).map(|_| random_dual_form(ctx, e, rng)).collect();
        let module = DualModule::new(ctx, gens)?;
        if module.derivative_span(e).rank() != t {
            continue;
        }
        return algebra_from_dual(&module, e + 2);
    }
    Err(DualError::DependentGenerators { max_retries })
}

/// Both sides of the Hessian criterion, computed independently: the Hessian
/// determinant of `F`, and whether multiplication by a certified-general
/// `L^(deg F - 2)` from degree 1 of the dual algebra has rank equal to the
/// number of variables. For cones (a variable can be eliminated) the map
/// cannot reach full ambient rank, matching the vanishing Hessian.
#[derive(Clone, Debug, Serialize)]
pub struct HessianCheck {
    pub hessian_zero: bool,
    pub map_rank: usize,
    pub expected_rank: usize,
    pub map_full_rank: bool,
    pub consistent: bool,
}

pub fn watanabe_check(
    form: &HomogeneousForm,
    opts: &LefschetzOptions,
) -> Result<HessianCheck, DualError> {
    let p = form.ctx().field().characteristic();
    if p != 0 {
        return Err(DualError::CharNotZero { characteristic: p });
    }
    let s = form.degree();
    assert!(s >= 3, "hessian criterion needs degree >= 3");
    let hessian_zero = hessian_det(form)?.is_zero();
    let module = DualModule::new(form.ctx(), vec![form.clone()])?;
    let algebra = algebra_from_dual(&module, s + 2)?;
    let n = form.ctx().num_vars();
    let samples = sample_general_forms(algebra.ctx(), &opts.samples);
    let mut map_rank = 0;
    for l in &samples {
        map_rank = map_rank.max(crate::lefschetz::mult_map(&algebra, l, 1, s - 2).rank);
        if map_rank == n {
            break;
        }
    }
    let map_full_rank = map_rank == n;
    Ok(HessianCheck {
        hessian_zero,
        map_rank,
        expected_rank: n,
        map_full_rank,
        consistent: hessian_zero == !map_full_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::wlp_check;
    use crate::poly::{parse_forms, parse_ring};
    use crate::quotient::GradedIdeal;

    fn module(ring: &str, gens: &str) -> DualModule {
        let ctx = parse_ring(ring).unwrap();
        let forms = parse_forms(&ctx, gens).unwrap();
        DualModule::new(&ctx, forms).unwrap()
    }

    #[test]
    fn brenner_kaid_dual_span() {
        let m = module("QQ[y1,y2,y3]", "y1^2*y2^2, y2^2*y3^2, y1^2*y3^2");
        let span3 = m.derivative_span(3);
        assert_eq!(span3.rank(), 6);
        let ctx = m.ctx().clone();
        for text in [
            "y1^2*y2", "y1^2*y3", "y1*y2^2", "y1*y3^2", "y2^2*y3", "y2*y3^2",
        ] {
            assert!(span3.contains_form(&crate::poly::parse_form(&ctx, text).unwrap()));
        }
        assert!(!span3.contains_form(&crate::poly::parse_form(&ctx, "y1*y2*y3").unwrap()));
    }

    #[test]
    fn type_two_module_matches_in_degree_three() {
        let bk = module("QQ[y1,y2,y3]", "y1^2*y2^2, y2^2*y3^2, y1^2*y3^2");
        let m = module(
            "QQ[y1,y2,y3]",
            "y1^2*y2^2 + y1^2*y3^2, y1^2*y2^2 + y2^2*y3^2",
        );
        let a = bk.derivative_span(3);
        let b = m.derivative_span(3);
        assert_eq!(a.rank(), 6);
        // Canonical echelon rows: span equality is row-by-row equality.
        assert_eq!(a.echelon(), b.echelon());
    }

    #[test]
    fn single_generator_span() {
        let m = module("QQ[y1,y2,y3]", "y1^2*y2^2 + y2^2*y3^2");
        let top = m.derivative_span(4);
        assert_eq!(top.rank(), 1);
        assert!(top.contains_form(&m.generators()[0]));
    }

    #[test]
    fn dual_hilbert_examples() {
        let m = module(
            "QQ[y1,y2,y3]",
            "y1^2*y2^2 + y1^2*y3^2, y1^2*y2^2 + y2^2*y3^2",
        );
        assert_eq!(m.dual_hilbert().values(), &[1, 3, 6, 6, 2]);
        let single = module("QQ[y1,y2,y3]", "y1^4");
        assert_eq!(single.dual_hilbert().values(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn annihilator_matches_ideal() {
        let m = module("QQ[y1,y2,y3]", "y1^2*y2^2, y2^2*y3^2, y1^2*y3^2");
        let ctx = m.ctx().clone();
        let gens = parse_forms(&ctx, "y1^3, y2^3, y3^3, y1*y2*y3").unwrap();
        let ideal = GradedIdeal::new(&ctx, gens).unwrap();
        for d in 0..=4 {
            let ann = m.annihilator_component(d);
            assert_eq!(
                ann.echelon(),
                ideal.component(d).echelon(),
                "degree {}",
                d
            );
        }
    }

    #[test]
    fn annihilator_of_pure_power() {
        let m = module("QQ[y1,y2,y3]", "y1^5");
        let ann1 = m.annihilator_component(1);
        assert_eq!(ann1.rank(), 2);
        let ctx = m.ctx().clone();
        assert!(ann1.contains_form(&crate::poly::parse_form(&ctx, "y2").unwrap()));
        assert!(ann1.contains_form(&crate::poly::parse_form(&ctx, "y3").unwrap()));
    }

    #[test]
    fn pairing_rank_nullity() {
        let m = module(
            "QQ[y1,y2,y3]",
            "y1^2*y2^2 + y1^2*y3^2, y1^2*y2^2 + y2^2*y3^2",
        );
        for d in 0..=4 {
            let ambient = crate::poly::monomial_count(3, d);
            assert_eq!(
                m.annihilator_component(d).rank() + m.derivative_span(d).rank(),
                ambient,
                "degree {}",
                d
            );
        }
    }

    #[test]
    fn level_algebra_from_dual() {
        let m = module(
            "QQ[y1,y2,y3]",
            "y1^2*y2^2 + y1^2*y3^2, y1^2*y2^2 + y2^2*y3^2",
        );
        let a = algebra_from_dual(&m, 16).unwrap();
        assert_eq!(a.hilbert().values(), &[1, 3, 6, 6, 2]);
        let c = a.classification();
        assert!(c.is_level && !c.is_gorenstein);
        assert_eq!(c.cm_type, 2);
        let report = wlp_check(&a, &LefschetzOptions::default());
        assert!(!report.has_property());
        assert_eq!(report.failing[0], (2, 1));
    }

    #[test]
    fn random_gorenstein_generic_hilbert() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        // Sampling oracle: a generic socle-degree-6 form gives the full
        // catalecticant ranks min(dim R_d, dim R_{6-d}).
        for seed in 0..3u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_gorenstein(&ctx, 6, &mut rng).unwrap();
            assert_eq!(a.hilbert().values(), &[1, 3, 6, 10, 6, 3, 1], "seed {}", seed);
            assert!(a.classification().is_gorenstein);
            assert!(a.hilbert().is_symmetric());
            assert!(a.hilbert().is_si_sequence().unwrap());
        }
    }

    #[test]
    fn random_gorenstein_socle_degree_one() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_gorenstein(&ctx, 1, &mut rng).unwrap();
        assert_eq!(a.hilbert().values(), &[1, 1]);
        assert!(a.classification().is_gorenstein);
        assert_eq!(a.classification().socle_degree, 1);
    }

    #[test]
    fn constrained_gorenstein_forces_quadric() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_gorenstein_constrained(
            &ctx,
            6,
            DegreeBound { degree: 2, bound: 5 },
            &mut rng,
            50,
        )
        .unwrap();
        assert!(a.hilbert().get(2) <= 5);
        assert!(a.classification().initial_degree <= 2);
        // Vacuous constraint falls through to the plain sampler.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b = random_gorenstein_constrained(
            &ctx,
            4,
            DegreeBound { degree: 2, bound: 6 },
            &mut rng,
            50,
        )
        .unwrap();
        assert!(b.classification().is_gorenstein);
    }

    #[test]
    fn random_level_type_matches() {
        let ctx = parse_ring("QQ[x,y,z]").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for t in 1..=4usize {
            let a = random_level(&ctx, 2, t, &mut rng).unwrap();
            let c = a.classification();
            assert!(c.is_level, "t = {}", t);
            assert_eq!(c.cm_type, t);
            assert_eq!(a.hilbert().get(2), t);
        }
    }

    #[test]
    fn watanabe_examples() {
        let ctx = parse_ring("QQ[y1,y2,y3]").unwrap();
        let opts = LefschetzOptions::default();
        let fermat = crate::poly::parse_form(&ctx, "y1^3 + y2^3 + y3^3").unwrap();
        let check = watanabe_check(&fermat, &opts).unwrap();
        assert!(!check.hessian_zero && check.map_full_rank && check.consistent);

        let cone = crate::poly::parse_form(&ctx, "y1^3").unwrap();
        let check = watanabe_check(&cone, &opts).unwrap();
        assert!(check.hessian_zero && !check.map_full_rank && check.consistent);
        assert_eq!(check.map_rank, 1);

        let gf = parse_ring("GF(5)[y1,y2,y3]").unwrap();
        let f = crate::poly::parse_form(&gf, "y1^3 + y2^3 + y3^3").unwrap();
        assert!(matches!(
            watanabe_check(&f, &opts),
            Err(DualError::CharNotZero { characteristic: 5 })
        ));
    }

    #[test]
    fn watanabe_random_quartics() {
        let ctx = parse_ring("QQ[y1,y2,y3,y4]").unwrap();
        let opts = LefschetzOptions::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..3 {
            let f = random_dual_form(&ctx, 4, &mut rng);
            let check = watanabe_check(&f, &opts).unwrap();
            assert!(check.consistent);
        }
    }
}
