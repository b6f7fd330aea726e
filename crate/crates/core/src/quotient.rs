//! Homogeneous ideals, artinian quotients, and their invariants.
//!
//! A [`GradedIdeal`] caches one reduced echelon basis per degree; components
//! are built incrementally from `R_1 * I_{d-1}` plus the degree-`d`
//! generators, which keeps elimination sizes proportional to ranks rather
//! than to the number of generator multiples. A [`QuotientAlgebra`] wraps an
//! ideal whose quotient is finite-dimensional, together with its Hilbert
//! function, socle dimensions, and classification data.

use crate::bounds::HilbertSeq;
use crate::field::Scalar;
use crate::linalg::{Echelon, ScalarMat};
use crate::poly::{gcd_forms, monomial_basis, HomogeneousForm, Monomial, PolyError, RingCtx};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Errors from ideal and quotient construction.
#[derive(Clone, PartialEq, Debug)]
pub enum QuotientError {
    /// The quotient stayed positive-dimensional up to the degree cap.
    NotArtinian { cap: usize },
    InvalidGenerator(String),
    ContextMismatch,
    /// Component GCD of a zero component.
    EmptyComponent { degree: usize },
    ZeroForm,
    Poly(PolyError),
}

impl fmt::Display for QuotientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientError::NotArtinian { cap } => {
                write!(f, "quotient is not artinian up to degree {}", cap)
            }
            QuotientError::InvalidGenerator(msg) => write!(f, "invalid generator: {}", msg),
            QuotientError::ContextMismatch => write!(f, "mixed ring contexts"),
            QuotientError::EmptyComponent { degree } => {
                write!(f, "ideal component in degree {} is zero", degree)
            }
            QuotientError::ZeroForm => write!(f, "form must be nonzero"),
            QuotientError::Poly(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for QuotientError {}

impl From<PolyError> for QuotientError {
    fn from(e: PolyError) -> Self {
        QuotientError::Poly(e)
    }
}

/// The degree-`d` slice of an ideal: the monomial basis of `R_d` and a
/// reduced echelon basis of the rows spanning `I_d` in those coordinates.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    ctx: RingCtx,
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
}

impl DegreeBasis {
    pub(crate) fn new(ctx: &RingCtx, degree: usize, echelon: Echelon) -> DegreeBasis {
        let monomials = monomial_basis(ctx, degree);
        debug_assert_eq!(echelon.cols(), monomials.len());
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        DegreeBasis {
            ctx: ctx.clone(),
            degree,
            monomials,
            index,
            echelon,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// dim of the component.
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// dim of the ambient space `R_d`.
    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The echelon rows reconstituted as forms.
    pub fn basis_forms(&self) -> Vec<HomogeneousForm> {
        self.echelon
            .rows()
            .iter()
            .map(|row| HomogeneousForm::from_vector(&self.ctx, self.degree, &self.monomials, row))
            .collect()
    }

    /// Monomials of `R_d` outside the span: coset representatives for the
    /// quotient, in descending graded lex.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.echelon
            .free_columns()
            .into_iter()
            .map(|c| self.monomials[c].clone())
            .collect()
    }

    pub fn contains_form(&self, f: &HomogeneousForm) -> bool {
        debug_assert_eq!(f.degree(), self.degree);
        self.echelon.contains(&f.coefficient_vector(&self.monomials))
    }

    /// Normal form of `f` modulo the component, as coordinates over the
    /// standard monomials.
    pub fn reduce_to_standard(&self, f: &HomogeneousForm) -> Vec<Scalar> {
        let mut v = f.coefficient_vector(&self.monomials);
        self.echelon.reduce_vec(&mut v);
        self.echelon
            .free_columns()
            .into_iter()
            .map(|c| v[c].clone())
            .collect()
    }
}

/// A homogeneous ideal presented by generators, with cached degree slices.
#[derive(Debug)]
pub struct GradedIdeal {
    ctx: RingCtx,
    generators: Vec<HomogeneousForm>,
    cache: Mutex<BTreeMap<usize, Arc<DegreeBasis>>>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        GradedIdeal {
            ctx: self.ctx.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl GradedIdeal {
    pub fn new(ctx: &RingCtx, generators: Vec<HomogeneousForm>) -> Result<GradedIdeal, QuotientError> {
        for g in &generators {
            if g.ctx() != ctx {
                return Err(QuotientError::ContextMismatch);
            }
            if g.is_zero() {
                return Err(QuotientError::InvalidGenerator("zero generator".into()));
            }
            if g.degree() == 0 {
                return Err(QuotientError::InvalidGenerator(
                    "unit ideal: degree-0 generator".into(),
                ));
            }
        }
        Ok(GradedIdeal {
            ctx: ctx.clone(),
            generators,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// An ideal whose slices up to some degree are already known (used for
    /// annihilators and colon ideals). The generators must reproduce the
    /// seeded slices.
    pub(crate) fn with_seeded_components(
        ctx: &RingCtx,
        generators: Vec<HomogeneousForm>,
        components: Vec<Arc<DegreeBasis>>,
    ) -> GradedIdeal {
        let cache = components.into_iter().map(|c| (c.degree(), c)).collect();
        GradedIdeal {
            ctx: ctx.clone(),
            generators,
            cache: Mutex::new(cache),
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn generators(&self) -> &[HomogeneousForm] {
        &self.generators
    }

    /// The reduced basis of `I_d`, computed incrementally and cached.
    pub fn component(&self, d: usize) -> Arc<DegreeBasis> {
        let mut cache = self.cache.lock().unwrap();
        if let Some(hit) = cache.get(&d) {
            return hit.clone();
        }
        let start = cache
            .range(..d)
            .next_back()
            .map(|(deg, _)| deg + 1)
            .unwrap_or(0);
        for dd in start..=d {
            if cache.contains_key(&dd) {
                continue;
            }
            let prev = if dd == 0 { None } else { cache.get(&(dd - 1)).cloned() };
            let basis = self.build_component(dd, prev.as_deref());
            cache.insert(dd, Arc::new(basis));
        }
        cache.get(&d).unwrap().clone()
    }

    fn build_component(&self, d: usize, prev: Option<&DegreeBasis>) -> DegreeBasis {
        let rows = self.spanning_rows(d, prev, true);
        let mat = ScalarMat::from_rows(self.ctx.field(), rows);
        let ech = if mat.rows() == 0 {
            Echelon::empty(self.ctx.field(), monomial_basis(&self.ctx, d).len())
        } else {
            mat.rref()
        };
        DegreeBasis::new(&self.ctx, d, ech)
    }

    /// Rows spanning `R_1 * I_{d-1}` (from the reduced previous slice) plus,
    /// when `with_new_gens`, the coefficient vectors of the degree-`d`
    /// generators.
    fn spanning_rows(
        &self,
        d: usize,
        prev: Option<&DegreeBasis>,
        with_new_gens: bool,
    ) -> Vec<Vec<Scalar>> {
        let target = monomial_basis(&self.ctx, d);
        let target_index: HashMap<&Monomial, usize> =
            target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let zero = self.ctx.field().zero();
        let mut rows = Vec::new();
        if let Some(prev) = prev {
            for row in prev.echelon().rows() {
                for var in 0..self.ctx.num_vars() {
                    let mut out = vec![zero.clone(); target.len()];
                    for (col, coeff) in row.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let m = prev.monomials()[col].mul_var(var);
                        out[target_index[&m]] = coeff.clone();
                    }
                    rows.push(out);
                }
            }
        }
        if with_new_gens {
            for g in &self.generators {
                if g.degree() == d {
                    rows.push(g.coefficient_vector(&target));
                }
            }
        }
        rows
    }

    /// Number of minimal generators the ideal needs in degree `d`, measured
    /// as `dim I_d - dim(R_1 * I_{d-1})`.
    pub fn fresh_generator_count(&self, d: usize) -> usize {
        if d == 0 {
            return 0;
        }
        let full = self.component(d).rank();
        let prev = self.component(d - 1);
        let rows = self.spanning_rows(d, Some(&prev), false);
        if rows.is_empty() {
            return full;
        }
        let grown = ScalarMat::from_rows(self.ctx.field(), rows).rank();
        full - grown
    }

    /// Appends a form to the generators.
    pub fn plus_form(&self, f: &HomogeneousForm) -> Result<GradedIdeal, QuotientError> {
        if f.ctx() != &self.ctx {
            return Err(QuotientError::ContextMismatch);
        }
        if f.is_zero() {
            return Err(QuotientError::ZeroForm);
        }
        let mut generators = self.generators.clone();
        generators.push(f.clone());
        GradedIdeal::new(&self.ctx, generators)
    }

    /// The degree-`d` slice of the colon ideal `(I : F)`: the kernel of
    /// multiplication by `F` into `R_{d + deg F} / I_{d + deg F}`.
    pub fn colon_form_component(
        &self,
        f: &HomogeneousForm,
        d: usize,
    ) -> Result<DegreeBasis, QuotientError> {
        if f.is_zero() {
            return Err(QuotientError::ZeroForm);
        }
        if f.ctx() != &self.ctx {
            return Err(QuotientError::ContextMismatch);
        }
        let source = monomial_basis(&self.ctx, d);
        let target_slice = self.component(d + f.degree());
        let target_std = target_slice.standard_monomials();
        // Constraint matrix: rows are the standard coordinates of m*F.
        let mut columns = Vec::with_capacity(source.len());
        for m in &source {
            let prod = HomogeneousForm::from_monomial(&self.ctx, m.clone(), self.ctx.field().one())
                .expect("monomial form")
                .multiply(f)?;
            columns.push(target_slice.reduce_to_standard(&prod));
        }
        let mut rows = Vec::with_capacity(target_std.len());
        for r in 0..target_std.len() {
            rows.push(columns.iter().map(|col| col[r].clone()).collect());
        }
        let kernel = if rows.is_empty() {
            // Everything multiplies into I.
            let eye: Vec<Vec<Scalar>> = (0..source.len())
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
                .collect();
            eye
        } else {
            ScalarMat::from_rows(self.ctx.field(), rows).kernel_basis()
        };
        let ech = if kernel.is_empty() {
            Echelon::empty(self.ctx.field(), source.len())
        } else {
            ScalarMat::from_rows(self.ctx.field(), kernel).rref()
        };
        Ok(DegreeBasis::new(&self.ctx, d, ech))
    }

    /// GCD of a basis of `I_d`; degree 0 means the component has no common
    /// divisor.
    pub fn component_gcd(&self, d: usize) -> Result<(HomogeneousForm, usize), QuotientError> {
        let slice = self.component(d);
        if slice.rank() == 0 {
            return Err(QuotientError::EmptyComponent { degree: d });
        }
        let g = gcd_forms(&slice.basis_forms())?;
        let deg = g.degree();
        Ok((g, deg))
    }
}

/// Hilbert function of `R/I` scanned up to `cap`.
///
/// Stops at the first zero value: once `I_d = R_d`, every later component is
/// all of `R` as well, so the required second zero is implied.
pub fn hilbert_function(ideal: &GradedIdeal, cap: usize) -> Result<HilbertSeq, QuotientError> {
    assert!(cap >= 1, "cap must be at least 1");
    let mut values = Vec::new();
    for d in 0..=cap {
        let slice = ideal.component(d);
        let h = slice.ambient_dim() - slice.rank();
        if h == 0 {
            return Ok(HilbertSeq::new(values));
        }
        values.push(h);
    }
    Err(QuotientError::NotArtinian { cap })
}

/// Classification data computed from socle dimensions.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Classification {
    /// h(1), the embedding codimension of the quotient.
    pub codim: usize,
    /// Smallest degree with a nonzero ideal component.
    pub initial_degree: usize,
    /// Largest degree with a nonzero quotient component.
    pub socle_degree: usize,
    pub is_level: bool,
    pub is_gorenstein: bool,
    /// Socle dimension in the socle degree when level; total socle
    /// dimension otherwise.
    pub cm_type: usize,
}

/// An artinian graded quotient `R/I` with its cached invariants.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    ideal: GradedIdeal,
    hilbert: HilbertSeq,
    socle_dims: Vec<usize>,
    classification: Classification,
    standard: Vec<Vec<Monomial>>,
}

impl QuotientAlgebra {
    pub fn new(ideal: GradedIdeal, cap: usize) -> Result<QuotientAlgebra, QuotientError> {
        let hilbert = hilbert_function(&ideal, cap)?;
        if hilbert.is_empty() {
            return Err(QuotientError::InvalidGenerator("unit ideal".into()));
        }
        let e = hilbert.socle_degree();
        let standard: Vec<Vec<Monomial>> = (0..=e)
            .map(|d| ideal.component(d).standard_monomials())
            .collect();
        let socle_dims = compute_socle(&ideal, &hilbert, &standard);
        let mut initial_degree = e + 1;
        for d in 1..=e + 1 {
            if ideal.component(d).rank() > 0 {
                initial_degree = d;
                break;
            }
        }
        let is_level = socle_dims[..e].iter().all(|&s| s == 0);
        let cm_type = if is_level {
            socle_dims[e]
        } else {
            socle_dims.iter().sum()
        };
        let classification = Classification {
            codim: hilbert.get(1),
            initial_degree,
            socle_degree: e,
            is_level,
            is_gorenstein: is_level && cm_type == 1,
            cm_type,
        };
        Ok(QuotientAlgebra {
            ideal,
            hilbert,
            socle_dims,
            classification,
            standard,
        })
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn ctx(&self) -> &RingCtx {
        self.ideal.ctx()
    }

    pub fn hilbert(&self) -> &HilbertSeq {
        &self.hilbert
    }

    pub fn socle_degree(&self) -> usize {
        self.hilbert.socle_degree()
    }

    /// Per-degree dimensions of the socle (elements killed by every
    /// variable).
    pub fn socle_dims(&self) -> &[usize] {
        &self.socle_dims
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    /// Standard-monomial coset representatives of the degree-`d`
    /// component, descending graded lex; empty beyond the socle degree.
    pub fn quotient_basis(&self, d: usize) -> &[Monomial] {
        static EMPTY: Vec<Monomial> = Vec::new();
        self.standard.get(d).unwrap_or(&EMPTY)
    }

    /// Coordinates of `f` in the standard-monomial basis of its degree.
    pub fn coords_mod_ideal(&self, f: &HomogeneousForm) -> Vec<Scalar> {
        let d = f.degree();
        if d > self.socle_degree() {
            return Vec::new();
        }
        self.ideal.component(d).reduce_to_standard(f)
    }

    /// Rebuilds a quotient element from standard coordinates.
    pub fn element_from_coords(&self, d: usize, coords: &[Scalar]) -> HomogeneousForm {
        HomogeneousForm::from_vector(self.ctx(), d, self.quotient_basis(d), coords)
    }

    /// The quotient by `(I : F)`, presented with honest generators extracted
    /// degreewise. When `R/I` is Gorenstein and `F` is outside `I`, the
    /// result is Gorenstein of socle degree `e - deg F`.
    pub fn colon(&self, f: &HomogeneousForm) -> Result<QuotientAlgebra, QuotientError> {
        let e = self.socle_degree();
        let mut components = Vec::new();
        for d in 0..=e + 1 {
            components.push(Arc::new(self.ideal.colon_form_component(f, d)?));
        }
        let ideal = ideal_from_components(self.ctx(), components)?;
        QuotientAlgebra::new(ideal, e + 2)
    }
}

fn compute_socle(
    ideal: &GradedIdeal,
    hilbert: &HilbertSeq,
    standard: &[Vec<Monomial>],
) -> Vec<usize> {
    let e = hilbert.socle_degree();
    let n = ideal.ctx().num_vars();
    let field = ideal.ctx().field();
    let mut socle = vec![0usize; e + 1];
    socle[e] = hilbert.get(e);
    for d in 0..e {
        let h_d = hilbert.get(d);
        let h_next = hilbert.get(d + 1);
        if h_next == 0 {
            socle[d] = h_d;
            continue;
        }
        let next_slice = ideal.component(d + 1);
        let next_std = standard[d + 1].clone();
        // Columns are the images (x_i * u) for each standard monomial u,
        // stacked over all variables.
        let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(h_d); n * h_next];
        for u in &standard[d] {
            for (i, coords) in (0..n)
                .map(|var| {
                    let m = u.mul_var(var);
                    let form = HomogeneousForm::from_monomial(ideal.ctx(), m, field.one())
                        .expect("monomial form");
                    next_slice.reduce_to_standard(&form)
                })
                .enumerate()
            {
                debug_assert_eq!(coords.len(), next_std.len());
                for (t, c) in coords.into_iter().enumerate() {
                    rows[i * h_next + t].push(c);
                }
            }
        }
        let rank = ScalarMat::from_rows(field, rows).rank();
        socle[d] = h_d - rank;
    }
    socle
}

/// Builds an ideal from explicit degree slices `(I_0, ..., I_max)`,
/// extracting a generating set degreewise: in each degree the rows of the
/// slice that are not already in `R_1` times the previous slice become
/// generators. The slices are kept as the component cache.
pub(crate) fn ideal_from_components(
    ctx: &RingCtx,
    components: Vec<Arc<DegreeBasis>>,
) -> Result<GradedIdeal, QuotientError> {
    let mut generators: Vec<HomogeneousForm> = Vec::new();
    for (d, slice) in components.iter().enumerate() {
        debug_assert_eq!(slice.degree(), d);
        if slice.rank() == 0 {
            continue;
        }
        let grown = if d == 0 {
            Echelon::empty(ctx.field(), 1)
        } else {
            let prev = &components[d - 1];
            let scratch = GradedIdeal {
                ctx: ctx.clone(),
                generators: Vec::new(),
                cache: Mutex::new(BTreeMap::new()),
            };
            let rows = scratch.spanning_rows(d, Some(prev), false);
            if rows.is_empty() {
                Echelon::empty(ctx.field(), slice.ambient_dim())
            } else {
                ScalarMat::from_rows(ctx.field(), rows).rref()
            }
        };
        for (form, row) in slice.basis_forms().into_iter().zip(slice.echelon().rows()) {
            if !grown.contains(row) {
                if form.degree() == 0 {
                    return Err(QuotientError::InvalidGenerator("unit ideal".into()));
                }
                generators.push(form);
            }
        }
    }
    Ok(GradedIdeal::with_seeded_components(
        ctx,
        generators,
        components,
    ))
}

/// Result of checking the degreewise rank identity induced by
/// `0 -> R/(I:F)(-deg F) -> R/I -> R/(I,F) -> 0`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ExactSequenceCheck {
    pub holds: bool,
    /// True when `F` lies in `I`, which collapses the leftmost term.
    pub degenerate: bool,
    pub shift: usize,
    pub h_total: HilbertSeq,
    pub h_quotient: HilbertSeq,
    pub h_colon: HilbertSeq,
}

/// Verifies `h_{R/I}(t) = h_{R/(I:F)}(t - deg F) + h_{R/(I,F)}(t)` for all t,
/// computing all three rows independently.
pub fn check_exact_sequence(
    algebra: &QuotientAlgebra,
    f: &HomogeneousForm,
) -> Result<ExactSequenceCheck, QuotientError> {
    if f.is_zero() {
        return Err(QuotientError::ZeroForm);
    }
    let e = algebra.socle_degree();
    let cap = e + 2;
    let ideal = algebra.ideal();
    let degenerate = ideal.component(f.degree()).contains_form(f);
    let h_total = algebra.hilbert().clone();
    let h_quotient = match ideal.plus_form(f) {
        Ok(bigger) => hilbert_function(&bigger, cap)?,
        Err(QuotientError::ZeroForm) => unreachable!(),
        Err(e) => return Err(e),
    };
    let mut colon_values = Vec::new();
    for d in 0..=e {
        let slice = ideal.colon_form_component(f, d)?;
        colon_values.push(slice.ambient_dim() - slice.rank());
    }
    let h_colon = HilbertSeq::new(colon_values);
    let mut holds = true;
    for t in 0..=e + 1 {
        let colon_part = if t >= f.degree() {
            h_colon.get(t - f.degree())
        } else {
            0
        };
        if h_total.get(t) != colon_part + h_quotient.get(t) {
            holds = false;
        }
    }
    Ok(ExactSequenceCheck {
        holds,
        degenerate,
        shift: f.degree(),
        h_total,
        h_quotient,
        h_colon,
    })
}
