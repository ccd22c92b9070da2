//! Multivariate gcd in `Z[Z^n]` via recursive primitive remainder sequences.

use num_integer::Integer;
use num_traits::Signed;

use super::LaurentPoly;

/// A gcd of `a` and `b`, defined up to `±` monomials and returned in
/// canonical form (see [`LaurentPoly::canonical`]).
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.nvars(), b.nvars());
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    let n = a.nvars();
    gcd_rec(&a.canonical(), &b.canonical(), n).canonical()
}

/// Coefficients of `p` viewed as a polynomial in variable `k`, indexed by
/// degree. Requires nonnegative exponents.
fn coefficients(p: &LaurentPoly, k: usize) -> Vec<LaurentPoly> {
    let n = p.nvars();
    let deg = p.terms().map(|(e, _)| e[k]).max().unwrap_or(0);
    let mut out = vec![LaurentPoly::zero(n); deg as usize + 1];
    for (e, c) in p.terms() {
        let mut rest = e.clone();
        rest[k] = 0;
        out[e[k] as usize].add_term(rest, c.clone());
    }
    out
}

fn assemble(coeffs: &[LaurentPoly], k: usize, n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n);
    for (d, c) in coeffs.iter().enumerate() {
        let mut shift = vec![0; n];
        shift[k] = d as i64;
        out += &c.shift(&shift);
    }
    out
}

fn trim(v: &mut Vec<LaurentPoly>) {
    while v.last().is_some_and(LaurentPoly::is_zero) {
        v.pop();
    }
}

/// gcd of polynomials with nonnegative exponents involving only the first
/// `k` variables.
fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> LaurentPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if k == 0 {
        return LaurentPoly::constant(n, a.content().gcd(&b.content()));
    }
    let var = k - 1;
    let (ca, pa) = split_content(a, var, k);
    let (cb, pb) = split_content(b, var, k);
    let c = gcd_rec(&ca, &cb, var);
    let mut u = coefficients(&pa, var);
    let mut v = coefficients(&pb, var);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    let g = loop {
        if v.len() == 1 {
            // a nonzero constant in `var` after removing content
            break vec![LaurentPoly::one(n)];
        }
        let mut r = u.clone();
        let lc_v = v.last().unwrap().clone();
        while r.len() >= v.len() {
            let lc_r = r.last().unwrap().clone();
            let off = r.len() - v.len();
            for x in r.iter_mut() {
                *x = &*x * &lc_v;
            }
            for (i, vi) in v.iter().enumerate() {
                r[i + off] -= &(vi * &lc_r);
            }
            trim(&mut r);
        }
        if r.is_empty() {
            break v;
        }
        let (_, pr) = split_content(&assemble(&r, var, n), var, k);
        u = v;
        v = coefficients(&pr, var);
    };
    let (_, pg) = split_content(&assemble(&g, var, n), var, k);
    &c * &pg
}

/// Content (gcd of coefficients in the remaining variables) and primitive
/// part of `p` with respect to `var`.
fn split_content(p: &LaurentPoly, var: usize, k: usize) -> (LaurentPoly, LaurentPoly) {
    let n = p.nvars();
    let coeffs = coefficients(p, var);
    let mut cont = LaurentPoly::zero(n);
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = gcd_rec(&cont, c, k - 1);
        if cont.is_one() {
            break;
        }
    }
    // keep a positive leading coefficient so primitive parts are stable
    if cont.leading_lex().is_some_and(|(_, c)| c.is_negative()) {
        cont = -cont;
    }
    if cont.is_zero() {
        return (LaurentPoly::one(n), p.clone());
    }
    let prim = p.exact_div(&cont).expect("content divides polynomial");
    (cont, prim)
}
