//! Sparse homogeneous multivariate polynomial arithmetic.
//!
//! Monomials are exponent vectors ordered by graded lex (degree first, then
//! lexicographic with the first variable largest); graded lex is the canonical
//! order everywhere in this crate — bases, normalization, printing. Forms are
//! immutable after construction and safe to share between threads.

mod gcd;
mod parse;

pub use gcd::gcd_forms;
pub use parse::{parse_form, parse_forms, parse_ring, ParseError, ParseErrorKind};

use crate::field::{FieldError, FieldSpec, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Errors from polynomial construction and arithmetic.
#[derive(Clone, PartialEq, Debug)]
pub enum PolyError {
    ContextMismatch,
    DegreeMismatch { expected: usize, found: usize },
    /// Contraction by a monomial of degree larger than the form's degree.
    DegreeUnderflow,
    /// GCD of an empty or all-zero family.
    AllZero,
    /// Hessians need characteristic 0 or p larger than the degree.
    CharTooSmall { characteristic: u64, degree: usize },
    InvalidRing(String),
    Field(FieldError),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ContextMismatch => write!(f, "polynomials from different rings"),
            PolyError::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {}, found {}", expected, found)
            }
            PolyError::DegreeUnderflow => write!(f, "contraction degree underflow"),
            PolyError::AllZero => write!(f, "all forms are zero"),
            PolyError::CharTooSmall {
                characteristic,
                degree,
            } => write!(
                f,
                "characteristic {} too small for degree {}",
                characteristic, degree
            ),
            PolyError::InvalidRing(msg) => write!(f, "invalid ring: {}", msg),
            PolyError::Field(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for PolyError {}

impl From<FieldError> for PolyError {
    fn from(e: FieldError) -> Self {
        PolyError::Field(e)
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: FieldSpec,
    vars: Vec<String>,
}

/// A polynomial ring context: the base field and the ordered variables.
/// Cheap to clone; equality compares field and variable names.
#[derive(Clone, Debug)]
pub struct RingCtx(Arc<RingData>);

impl PartialEq for RingCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for RingCtx {}

impl std::hash::Hash for RingCtx {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl RingCtx {
    pub fn new(field: FieldSpec, vars: Vec<String>) -> Result<RingCtx, PolyError> {
        if vars.is_empty() {
            return Err(PolyError::InvalidRing("need at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(PolyError::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!(
                    "duplicate variable name {:?}",
                    v
                )));
            }
        }
        Ok(RingCtx(Arc::new(RingData { field, vars })))
    }

    /// `n` variables named `x1..xn`.
    pub fn with_default_vars(field: FieldSpec, n: usize) -> RingCtx {
        let vars = (1..=n).map(|i| format!("x{}", i)).collect();
        RingCtx::new(field, vars).expect("default names are valid")
    }

    /// `n` variables named `y1..yn`, the conventional dual-side names.
    pub fn with_dual_vars(field: FieldSpec, n: usize) -> RingCtx {
        let vars = (1..=n).map(|i| format!("y{}", i)).collect();
        RingCtx::new(field, vars).expect("default names are valid")
    }

    pub fn num_vars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.0.vars[i]
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// The form `x_i`.
    pub fn var_form(&self, i: usize) -> HomogeneousForm {
        HomogeneousForm::from_monomial(self, Monomial::var(self.num_vars(), i), self.field().one())
            .expect("variable form")
    }
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.vars().join(","))
    }
}

/// An exponent vector. Ordering is graded lex: degree first, then
/// lexicographic on the exponents, so `x1^d` is the largest monomial of
/// degree `d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(num_vars: usize) -> Monomial {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Monomial {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u16>) -> Monomial {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when it divides exactly.
    pub fn checked_div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of monomials of degree `d` in `n` variables: C(n-1+d, n-1).
pub fn monomial_count(n: usize, d: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 1..n {
        acc = acc * (d + i) as u128 / i as u128;
    }
    acc as usize
}

/// All monomials of degree `d`, in descending graded-lex order.
pub fn monomial_basis(ctx: &RingCtx, d: usize) -> Vec<Monomial> {
    let n = ctx.num_vars();
    let mut out = Vec::with_capacity(monomial_count(n, d));
    let mut current = vec![0u16; n];
    fill_basis(&mut out, &mut current, 0, d);
    out
}

fn fill_basis(out: &mut Vec<Monomial>, current: &mut Vec<u16>, var: usize, rem: usize) {
    if var + 1 == current.len() {
        current[var] = rem as u16;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=rem).rev() {
        current[var] = e as u16;
        fill_basis(out, current, var + 1, rem - e);
    }
    current[var] = 0;
}

/// A homogeneous polynomial: a sparse monomial-to-coefficient map in which
/// every stored monomial has the declared degree and no coefficient is zero.
/// The zero form is the empty map with a declared degree.
#[derive(Clone, PartialEq, Debug)]
pub struct HomogeneousForm {
    ctx: RingCtx,
    degree: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomogeneousForm {
    pub fn zero(ctx: &RingCtx, degree: usize) -> HomogeneousForm {
        HomogeneousForm {
            ctx: ctx.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &RingCtx) -> HomogeneousForm {
        HomogeneousForm::from_monomial(ctx, Monomial::one(ctx.num_vars()), ctx.field().one())
            .expect("unit form")
    }

    pub fn from_monomial(
        ctx: &RingCtx,
        mono: Monomial,
        coeff: Scalar,
    ) -> Result<HomogeneousForm, PolyError> {
        if mono.num_vars() != ctx.num_vars() {
            return Err(PolyError::ContextMismatch);
        }
        if coeff.field() != ctx.field() {
            return Err(PolyError::Field(FieldError::FieldMismatch));
        }
        let degree = mono.degree();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Ok(HomogeneousForm {
            ctx: ctx.clone(),
            degree,
            terms,
        })
    }

    pub fn from_terms<I>(
        ctx: &RingCtx,
        degree: usize,
        terms: I,
    ) -> Result<HomogeneousForm, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.num_vars() != ctx.num_vars() {
                return Err(PolyError::ContextMismatch);
            }
            if m.degree() != degree {
                return Err(PolyError::DegreeMismatch {
                    expected: degree,
                    found: m.degree(),
                });
            }
            if c.field() != ctx.field() {
                return Err(PolyError::Field(FieldError::FieldMismatch));
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&c)?;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Ok(HomogeneousForm {
            ctx: ctx.clone(),
            degree,
            terms: map,
        })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant form 1 (degree 0, single unit coefficient).
    pub fn is_one_like(&self) -> bool {
        self.degree == 0 && self.terms.len() == 1 && self.leading_coeff().unwrap().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ctx.field().zero())
    }

    /// Largest monomial in graded lex.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    pub fn add(&self, other: &HomogeneousForm) -> Result<HomogeneousForm, PolyError> {
        self.check_same_ring(other)?;
        if self.degree != other.degree {
            // Adding into a zero form of the wrong declared degree is still a bug.
            return Err(PolyError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(c)?;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Ok(HomogeneousForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            terms,
        })
    }

    pub fn sub(&self, other: &HomogeneousForm) -> Result<HomogeneousForm, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomogeneousForm {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        HomogeneousForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<HomogeneousForm, PolyError> {
        if s.field() != self.ctx.field() {
            return Err(PolyError::Field(FieldError::FieldMismatch));
        }
        if s.is_zero() {
            return Ok(HomogeneousForm::zero(&self.ctx, self.degree));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let p = c.mul(s)?;
            if !p.is_zero() {
                terms.insert(m.clone(), p);
            }
        }
        Ok(HomogeneousForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            terms,
        })
    }

    pub fn multiply(&self, other: &HomogeneousForm) -> Result<HomogeneousForm, PolyError> {
        self.check_same_ring(other)?;
        let degree = self.degree + other.degree;
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2)?;
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !c.is_zero() {
                            e.insert(c);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&c)?;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(HomogeneousForm {
            ctx: self.ctx.clone(),
            degree,
            terms,
        })
    }

    pub fn pow(&self, k: usize) -> Result<HomogeneousForm, PolyError> {
        let mut acc = HomogeneousForm::one(&self.ctx);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Rescales so the graded-lex leading coefficient is 1.
    pub fn normalized(&self) -> HomogeneousForm {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv).expect("same field")
            }
        }
    }

    /// True partial derivative with the integer multiplier; terms whose
    /// exponent vanishes in the field are dropped.
    pub fn partial_derivative(&self, var: usize) -> HomogeneousForm {
        if self.degree == 0 {
            return HomogeneousForm::zero(&self.ctx, 0);
        }
        let field = self.ctx.field();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            let mult = field.from_int(e as i64);
            let coeff = c.mul(&mult).expect("same field");
            if !coeff.is_zero() {
                terms.insert(Monomial::from_exponents(exps), coeff);
            }
        }
        HomogeneousForm {
            ctx: self.ctx.clone(),
            degree: self.degree - 1,
            terms,
        }
    }

    /// Exact division by another form; `None` when the division leaves a
    /// remainder.
    pub fn divide_exact(&self, divisor: &HomogeneousForm) -> Option<HomogeneousForm> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            let deg = self.degree.checked_sub(divisor.degree)?;
            return Some(HomogeneousForm::zero(&self.ctx, deg));
        }
        let deg = self.degree.checked_sub(divisor.degree)?;
        let lm_g = divisor.leading_monomial().unwrap().clone();
        let lc_g = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = HomogeneousForm::zero(&self.ctx, deg);
        while !rem.is_zero() {
            let lm_r = rem.leading_monomial().unwrap().clone();
            let t = lm_g.checked_div_into(&lm_r)?;
            let c = rem
                .leading_coeff()
                .unwrap()
                .div(&lc_g)
                .expect("nonzero leading coefficient");
            let term =
                HomogeneousForm::from_monomial(&self.ctx, t, c).expect("quotient term");
            rem = rem
                .sub(&term.multiply(divisor).expect("same ring"))
                .expect("same degree");
            quot = quot.add(&term).expect("same degree");
        }
        Some(quot)
    }

    /// Coefficient vector with respect to an explicit monomial basis.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    /// Rebuilds a form from coordinates over a monomial basis.
    pub fn from_vector(
        ctx: &RingCtx,
        degree: usize,
        basis: &[Monomial],
        coords: &[Scalar],
    ) -> HomogeneousForm {
        debug_assert_eq!(basis.len(), coords.len());
        HomogeneousForm::from_terms(
            ctx,
            degree,
            basis
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
        .expect("vector over matching basis")
    }

    fn check_same_ring(&self, other: &HomogeneousForm) -> Result<(), PolyError> {
        if self.ctx != other.ctx {
            return Err(PolyError::ContextMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending graded lex, the canonical print order.
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = match c {
                Scalar::Rational(r) if r.numer().sign() == num_bigint::Sign::Minus => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = monomial_text(&self.ctx, m);
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

fn monomial_text(ctx: &RingCtx, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 1 {
            parts.push(ctx.var_name(i).to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", ctx.var_name(i), e));
        }
    }
    parts.join("*")
}

/// Divided-power contraction of a form by a monomial:
/// `x^a . y^b = y^(b-a)` when `b >= a` componentwise and 0 otherwise,
/// extended bilinearly, with no factorial multipliers. This is the
/// characteristic-safe pairing behind inverse systems.
pub fn contract(m: &Monomial, form: &HomogeneousForm) -> Result<HomogeneousForm, PolyError> {
    if m.num_vars() != form.ctx.num_vars() {
        return Err(PolyError::ContextMismatch);
    }
    if m.degree() > form.degree {
        return Err(PolyError::DegreeUnderflow);
    }
    let degree = form.degree - m.degree();
    let mut terms = BTreeMap::new();
    for (b, c) in &form.terms {
        if let Some(q) = m.checked_div_into(b) {
            terms.insert(q, c.clone());
        }
    }
    Ok(HomogeneousForm {
        ctx: form.ctx.clone(),
        degree,
        terms,
    })
}

/// Bilinear extension of [`contract`] to a contracting form.
pub fn contract_form(
    q: &HomogeneousForm,
    form: &HomogeneousForm,
) -> Result<HomogeneousForm, PolyError> {
    if q.ctx.num_vars() != form.ctx.num_vars() || q.ctx.field() != form.ctx.field() {
        return Err(PolyError::ContextMismatch);
    }
    if q.degree > form.degree {
        return Err(PolyError::DegreeUnderflow);
    }
    let mut acc = HomogeneousForm::zero(&form.ctx, form.degree - q.degree);
    for (m, c) in &q.terms {
        let piece = contract(m, form)?.scale(c)?;
        acc = acc.add(&piece)?;
    }
    Ok(acc)
}

/// Determinant of the matrix of second partial derivatives (true
/// derivatives, with integer multipliers): a form of degree
/// `n * (deg F - 2)`, possibly zero. Requires characteristic 0 or
/// `p > deg F`.
pub fn hessian_det(form: &HomogeneousForm) -> Result<HomogeneousForm, PolyError> {
    let s = form.degree();
    assert!(s >= 2, "hessian needs degree >= 2");
    let p = form.ctx.field().characteristic();
    if p != 0 && p <= s as u64 {
        return Err(PolyError::CharTooSmall {
            characteristic: p,
            degree: s,
        });
    }
    let n = form.ctx.num_vars();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let di = form.partial_derivative(i);
        let row: Vec<HomogeneousForm> = (0..n).map(|j| di.partial_derivative(j)).collect();
        rows.push(row);
    }
    Ok(det_forms(&form.ctx, &rows, s.saturating_sub(2)))
}

fn det_forms(ctx: &RingCtx, mat: &[Vec<HomogeneousForm>], entry_degree: usize) -> HomogeneousForm {
    let n = mat.len();
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = HomogeneousForm::zero(ctx, n * entry_degree);
    for (k, pivot) in mat[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<HomogeneousForm>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, f)| f.clone())
                    .collect()
            })
            .collect();
        let sub = det_forms(ctx, &minor, entry_degree);
        let signed = if k % 2 == 0 { sub } else { sub.neg() };
        acc = acc
            .add(&pivot.multiply(&signed).expect("same ring"))
            .expect("same degree");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use proptest::prelude::*;

    fn qq3() -> RingCtx {
        RingCtx::new(
            FieldSpec::Rationals,
            vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap()
    }

    fn form(ctx: &RingCtx, text: &str) -> HomogeneousForm {
        parse_form(ctx, text).unwrap()
    }

    #[test]
    fn basis_examples() {
        let ctx = qq3();
        let b0 = monomial_basis(&ctx, 0);
        assert_eq!(b0.len(), 1);
        assert_eq!(b0[0], Monomial::one(3));
        let b1 = monomial_basis(&ctx, 1);
        assert_eq!(
            b1,
            vec![Monomial::var(3, 0), Monomial::var(3, 1), Monomial::var(3, 2)]
        );
        assert_eq!(monomial_basis(&ctx, 3).len(), 10);
    }

    // Oracle: count compositions of d into n parts by Pascal recursion,
    // independent of the enumeration code.
    fn count_oracle(n: usize, d: usize) -> usize {
        if n == 1 {
            return 1;
        }
        (0..=d).map(|e| count_oracle(n - 1, d - e)).sum()
    }

    #[test]
    fn basis_counts_match_oracle() {
        for n in 1..=6usize {
            let ctx = RingCtx::with_default_vars(FieldSpec::Rationals, n);
            for d in 0..=12usize {
                let basis = monomial_basis(&ctx, d);
                assert_eq!(basis.len(), monomial_count(n, d));
                assert_eq!(basis.len(), count_oracle(n, d));
                // Strictly descending graded lex.
                for w in basis.windows(2) {
                    assert!(w[0] > w[1]);
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let ctx = qq3();
        let x = form(&ctx, "x");
        assert_eq!(x.multiply(&x).unwrap(), form(&ctx, "x^2"));
        let a = form(&ctx, "x+y");
        let b = form(&ctx, "x-y");
        assert_eq!(a.multiply(&b).unwrap(), form(&ctx, "x^2-y^2"));
    }

    #[test]
    fn char_two_square() {
        let gf2 = RingCtx::new(
            FieldSpec::prime_field(2).unwrap(),
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let a = form(&gf2, "x+y");
        assert_eq!(a.multiply(&a).unwrap(), form(&gf2, "x^2+y^2"));
    }

    #[test]
    fn contraction_examples() {
        let ctx = RingCtx::with_dual_vars(FieldSpec::Rationals, 3);
        let f = form(&ctx, "y1^2*y2^2");
        let got = contract(&Monomial::var(3, 0), &f).unwrap();
        assert_eq!(got, form(&ctx, "y1*y2^2"));
        let zero = contract(&Monomial::from_exponents(vec![1, 1, 1]), &f).unwrap();
        assert!(zero.is_zero());
        let g = form(&ctx, "y1^2*y2^2 + y1^2*y3^2");
        let d1 = contract(&Monomial::var(3, 0), &g).unwrap();
        assert_eq!(d1, form(&ctx, "y1*y2^2 + y1*y3^2"));
        assert_eq!(
            contract(&Monomial::from_exponents(vec![3, 3, 0]), &f),
            Err(PolyError::DegreeUnderflow)
        );
    }

    #[test]
    fn hessian_examples() {
        let ctx = qq3();
        // Oracle: explicit 3x3 determinant of the second partials.
        let f = form(&ctx, "x^3+y^3+z^3");
        let h = |i: usize, j: usize, g: &HomogeneousForm| {
            g.partial_derivative(i).partial_derivative(j)
        };
        let det3 = |g: &HomogeneousForm| {
            let m: Vec<Vec<HomogeneousForm>> = (0..3)
                .map(|i| (0..3).map(|j| h(i, j, g)).collect())
                .collect();
            let t1 = m[0][0]
                .multiply(&m[1][1].multiply(&m[2][2]).unwrap())
                .unwrap()
                .sub(&m[0][0].multiply(&m[1][2].multiply(&m[2][1]).unwrap()).unwrap())
                .unwrap();
            let t2 = m[0][1]
                .multiply(&m[1][0].multiply(&m[2][2]).unwrap())
                .unwrap()
                .sub(&m[0][1].multiply(&m[1][2].multiply(&m[2][0]).unwrap()).unwrap())
                .unwrap();
            let t3 = m[0][2]
                .multiply(&m[1][0].multiply(&m[2][1]).unwrap())
                .unwrap()
                .sub(&m[0][2].multiply(&m[1][1].multiply(&m[2][0]).unwrap()).unwrap())
                .unwrap();
            t1.sub(&t2).unwrap().add(&t3).unwrap()
        };
        assert_eq!(hessian_det(&f).unwrap(), det3(&f));
        assert_eq!(hessian_det(&f).unwrap(), form(&ctx, "216*x*y*z"));
        let cone = form(&ctx, "x^3");
        assert!(hessian_det(&cone).unwrap().is_zero());
        let xyz = form(&ctx, "x*y*z");
        assert_eq!(hessian_det(&xyz).unwrap(), form(&ctx, "2*x*y*z"));
        assert_eq!(hessian_det(&xyz).unwrap(), det3(&xyz));
    }

    #[test]
    fn hessian_char_guard() {
        let gf2 = RingCtx::new(
            FieldSpec::prime_field(2).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap();
        let f = form(&gf2, "x^3+y^3+z^3");
        assert!(matches!(
            hessian_det(&f),
            Err(PolyError::CharTooSmall { .. })
        ));
    }

    #[test]
    fn divide_exact_works() {
        let ctx = qq3();
        let f = form(&ctx, "x^2 - y^2");
        let g = form(&ctx, "x - y");
        assert_eq!(f.divide_exact(&g).unwrap(), form(&ctx, "x + y"));
        let h = form(&ctx, "x^2 + y^2");
        assert!(h.divide_exact(&g).is_none());
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = qq3();
        let b = RingCtx::with_default_vars(FieldSpec::Rationals, 3);
        let f = form(&a, "x");
        let g = form(&b, "x1");
        assert_eq!(f.multiply(&g), Err(PolyError::ContextMismatch));
    }

    fn small_form(ctx: RingCtx, degree: usize) -> impl Strategy<Value = HomogeneousForm> {
        let basis = monomial_basis(&ctx, degree);
        proptest::collection::vec(-4i64..=4, basis.len()).prop_map(move |coeffs| {
            HomogeneousForm::from_terms(
                &ctx,
                degree,
                basis
                    .iter()
                    .cloned()
                    .zip(coeffs.iter().map(|&c| ctx.field().from_int(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

        #[test]
        fn multiply_commutative_associative(
            f in small_form(qq3(), 1),
            g in small_form(qq3(), 2),
            h in small_form(qq3(), 1),
        ) {
            prop_assert_eq!(f.multiply(&g).unwrap(), g.multiply(&f).unwrap());
            let left = f.multiply(&g).unwrap().multiply(&h).unwrap();
            let right = f.multiply(&g.multiply(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn contraction_composes(
            f in small_form(RingCtx::with_dual_vars(FieldSpec::Rationals, 3), 4),
        ) {
            let m1 = Monomial::var(3, 0);
            let m2 = Monomial::var(3, 1);
            let combined = contract(&m1.mul(&m2), &f).unwrap();
            let nested = contract(&m1, &contract(&m2, &f).unwrap()).unwrap();
            prop_assert_eq!(combined, nested);
        }
    }
}
