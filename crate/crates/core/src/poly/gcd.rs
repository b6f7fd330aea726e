//! Multivariate GCD of homogeneous forms by a primitive
//! polynomial-remainder-sequence recursion on the last variable, with the
//! classical content / primitive-part split. Sized for small rings
//! (n <= 6, degree <= 12); no modular machinery.
//!
//! Homogeneity is preserved throughout: pseudo-division with respect to one
//! variable multiplies by homogeneous leading coefficients and subtracts
//! same-degree terms, and contents of homogeneous coefficient families are
//! homogeneous.

use super::{HomogeneousForm, Monomial, PolyError};

/// A greatest common divisor of the given forms, normalized so the
/// graded-lex leading coefficient is 1. A degree-0 result means coprime.
pub fn gcd_forms(forms: &[HomogeneousForm]) -> Result<HomogeneousForm, PolyError> {
    let nonzero: Vec<&HomogeneousForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let first = *nonzero.first().ok_or(PolyError::AllZero)?;
    for f in &nonzero[1..] {
        if f.ctx() != first.ctx() {
            return Err(PolyError::ContextMismatch);
        }
    }
    let n = first.ctx().num_vars();
    let mut acc = first.clone();
    for f in &nonzero[1..] {
        if acc.degree() == 0 {
            break;
        }
        acc = gcd_rec(&acc, f, n);
    }
    Ok(acc.normalized())
}

/// GCD of two forms (inputs may be zero), using variables below `active`.
fn gcd_rec(f: &HomogeneousForm, g: &HomogeneousForm, active: usize) -> HomogeneousForm {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    if f.degree() == 0 || g.degree() == 0 {
        return HomogeneousForm::one(f.ctx());
    }
    debug_assert!(active >= 1);
    if active == 1 {
        // Single-variable homogeneous forms are monomials c * x^k.
        let ctx = f.ctx();
        let k = f.degree().min(g.degree());
        let mono = Monomial::from_exponents(
            (0..ctx.num_vars())
                .map(|i| if i == 0 { k as u16 } else { 0 })
                .collect(),
        );
        return HomogeneousForm::from_monomial(ctx, mono, ctx.field().one()).expect("monomial");
    }
    let v = active - 1;
    if degree_in_var(f, v) == 0 && degree_in_var(g, v) == 0 {
        return gcd_rec(f, g, active - 1);
    }

    let cf = content(f, v, active);
    let cg = content(g, v, active);
    let c = gcd_rec(&cf, &cg, active - 1);
    let mut a = f.divide_exact(&cf).expect("content divides");
    let mut b = g.divide_exact(&cg).expect("content divides");
    if degree_in_var(&a, v) < degree_in_var(&b, v) {
        std::mem::swap(&mut a, &mut b);
    }
    // Primitive PRS on the primitive parts.
    loop {
        if b.is_zero() {
            break;
        }
        if degree_in_var(&b, v) == 0 {
            // b is primitive with respect to x_v, so once it is free of x_v
            // it is a unit and the primitive parts are coprime.
            debug_assert_eq!(b.degree(), 0);
            a = HomogeneousForm::one(f.ctx());
            break;
        }
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            a = b;
            break;
        }
        let cr = content(&r, v, active);
        a = b;
        b = r.divide_exact(&cr).expect("content divides");
    }
    let ca = content(&a, v, active);
    let pa = a.divide_exact(&ca).expect("content divides");
    c.multiply(&pa).expect("same ring").normalized()
}

fn degree_in_var(f: &HomogeneousForm, v: usize) -> usize {
    f.terms()
        .map(|(m, _)| m.exponent(v) as usize)
        .max()
        .unwrap_or(0)
}

/// Coefficient of `x_v^k`, with the `x_v` exponent stripped.
fn coeff_of_power(f: &HomogeneousForm, v: usize, k: usize) -> HomogeneousForm {
    let deg = f.degree().saturating_sub(k);
    let terms = f
        .terms()
        .filter(|(m, _)| m.exponent(v) as usize == k)
        .map(|(m, c)| {
            let mut exps = m.exponents().to_vec();
            exps[v] = 0;
            (Monomial::from_exponents(exps), c.clone())
        });
    HomogeneousForm::from_terms(f.ctx(), deg, terms).expect("stripped terms are homogeneous")
}

/// GCD of the `x_v`-coefficients; homogeneous because the input is.
fn content(f: &HomogeneousForm, v: usize, active: usize) -> HomogeneousForm {
    let mut acc: Option<HomogeneousForm> = None;
    for k in 0..=degree_in_var(f, v) {
        let coeff = coeff_of_power(f, v, k);
        if coeff.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => coeff.normalized(),
            Some(prev) => {
                if prev.degree() == 0 {
                    prev
                } else {
                    gcd_rec(&prev, &coeff, active - 1)
                }
            }
        });
    }
    acc.expect("nonzero polynomial has nonzero content")
}

/// Pseudo-remainder of `a` by `b` with respect to `x_v`; multiplies `a` by
/// powers of the leading coefficient of `b` as needed so every division is
/// exact.
fn pseudo_rem(a: &HomogeneousForm, b: &HomogeneousForm, v: usize) -> HomogeneousForm {
    let db = degree_in_var(b, v);
    debug_assert!(db >= 1);
    let lc_b = coeff_of_power(b, v, db);
    let ctx = a.ctx().clone();
    let xv = ctx.var_form(v);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = degree_in_var(&r, v);
        if dr < db {
            break;
        }
        let lc_r = coeff_of_power(&r, v, dr);
        // r := lc_b * r - lc_r * x_v^(dr-db) * b
        let shift = xv.pow(dr - db).expect("power");
        let sub = lc_r
            .multiply(&shift)
            .and_then(|t| t.multiply(b))
            .expect("same ring");
        r = lc_b
            .multiply(&r)
            .and_then(|t| t.sub(&sub))
            .expect("same degree");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::RingCtx;
    use crate::poly::parse_form;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq(vars: &[&str]) -> RingCtx {
        RingCtx::new(
            FieldSpec::Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn form(ctx: &RingCtx, text: &str) -> HomogeneousForm {
        parse_form(ctx, text).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        let ctx = qq(&["x", "y"]);
        let g = gcd_forms(&[form(&ctx, "x^2*y"), form(&ctx, "x*y^2")]).unwrap();
        assert_eq!(g, form(&ctx, "x*y"));
    }

    #[test]
    fn shared_linear_factor() {
        let ctx = qq(&["x", "y"]);
        let g = gcd_forms(&[form(&ctx, "x^2 + x*y"), form(&ctx, "x^2")]).unwrap();
        assert_eq!(g, form(&ctx, "x"));
    }

    // Oracle for coprimality of two quadrics f, g: no linear syzygy, i.e. the
    // six products {x f, y f, z f, x g, y g, z g} are independent in degree 3.
    fn coprime_by_rank_oracle(f: &HomogeneousForm, g: &HomogeneousForm) -> bool {
        use crate::linalg::ScalarMat;
        use crate::poly::monomial_basis;
        let ctx = f.ctx();
        let basis = monomial_basis(ctx, 3);
        let mut rows = Vec::new();
        for q in [f, g] {
            for i in 0..ctx.num_vars() {
                let prod = ctx.var_form(i).multiply(q).unwrap();
                rows.push(prod.coefficient_vector(&basis));
            }
        }
        ScalarMat::from_rows(ctx.field(), rows).rank() == 6
    }

    #[test]
    fn coprime_quadrics() {
        let ctx = qq(&["x", "y", "z"]);
        let f = form(&ctx, "x^2 + y^2");
        let g = form(&ctx, "y^2 + z^2");
        assert!(coprime_by_rank_oracle(&f, &g));
        let gcd = gcd_forms(&[f, g]).unwrap();
        assert_eq!(gcd.degree(), 0);
        assert!(gcd.is_one_like());
    }

    #[test]
    fn all_zero_rejected() {
        let ctx = qq(&["x", "y"]);
        let z = HomogeneousForm::zero(&ctx, 2);
        assert_eq!(gcd_forms(&[z.clone(), z]), Err(PolyError::AllZero));
    }

    #[test]
    fn gf2_gcd() {
        let ctx = RingCtx::new(
            FieldSpec::prime_field(2).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap();
        // (x+y)^2 = x^2 + y^2 in characteristic 2.
        let f = form(&ctx, "x^2 + y^2");
        let g = form(&ctx, "x + y");
        let gcd = gcd_forms(&[f.clone(), f.multiply(&g).unwrap()]).unwrap();
        assert_eq!(gcd, f);
    }

    fn random_form(ctx: &RingCtx, degree: usize, rng: &mut ChaCha8Rng) -> HomogeneousForm {
        use crate::poly::monomial_basis;
        let basis = monomial_basis(ctx, degree);
        HomogeneousForm::from_terms(
            ctx,
            degree,
            basis
                .into_iter()
                .map(|m| (m, ctx.field().from_int(rng.gen_range(-6i64..=6)))),
        )
        .unwrap()
    }

    #[test]
    fn gcd_divides_and_cofactors_coprime() {
        let ctx = qq(&["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            let common = random_form(&ctx, 1 + (trial % 2), &mut rng);
            if common.is_zero() {
                continue;
            }
            let f = common.multiply(&random_form(&ctx, 2, &mut rng)).unwrap();
            let g = common.multiply(&random_form(&ctx, 1, &mut rng)).unwrap();
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let gcd = gcd_forms(&[f.clone(), g.clone()]).unwrap();
            assert!(gcd.degree() >= common.degree(), "trial {}", trial);
            let qf = f.divide_exact(&gcd).expect("gcd divides f");
            let qg = g.divide_exact(&gcd).expect("gcd divides g");
            let again = gcd_forms(&[qf, qg]).unwrap();
            assert_eq!(again.degree(), 0, "cofactors share a factor");
        }
    }
}
