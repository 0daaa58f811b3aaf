//! Reference oracles shared by the integration tests. They use only the
//! public polynomial arithmetic and none of the engine's algorithms.

#![allow(dead_code)]

use std::sync::Arc;

use minvar::poly::{Field, Monomial, Poly, PrimeField, Ring, TermOrder};
use rand::Rng;

pub fn ring3(order: TermOrder) -> Arc<Ring<PrimeField>> {
    Ring::with_names(&["a", "b", "c"], PrimeField::default(), order).unwrap()
}

/// Leading term of `p` as a one-term polynomial.
fn lead<F: Field>(p: &Poly<F>) -> Poly<F> {
    Poly::monomial(p.ring(), p.lc().clone(), p.lm().clone())
}

/// Textbook division: reduce the leading term by the first divisor whose
/// leading monomial divides it, otherwise move it to the remainder.
pub fn naive_nf<F: Field>(f: &Poly<F>, divisors: &[Poly<F>]) -> Poly<F> {
    let ring = f.ring();
    let field = ring.field();
    let mut p = f.clone();
    let mut r = Poly::zero(ring);
    while !p.is_zero() {
        match divisors.iter().find(|g| !g.is_zero() && g.lm().divides(p.lm())) {
            Some(g) => {
                let c = field.div(p.lc(), g.lc()).unwrap();
                let m = p.lm().div(g.lm());
                p = &p - &(g * &Poly::monomial(ring, c, m));
            }
            None => {
                let lt = lead(&p);
                r = &r + &lt;
                p = &p - &lt;
            }
        }
    }
    r
}

pub fn naive_spoly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let ring = f.ring();
    let field = ring.field();
    let l = f.lm().lcm(g.lm());
    let a = Poly::monomial(ring, field.inv(f.lc()).unwrap(), l.div(f.lm()));
    let b = Poly::monomial(ring, field.inv(g.lc()).unwrap(), l.div(g.lm()));
    &(f * &a) - &(g * &b)
}

fn make_monic<F: Field>(p: &Poly<F>) -> Poly<F> {
    let inv = p.field().inv(p.lc()).unwrap();
    p.scale(&inv)
}

/// Reduced Gröbner basis by plain Buchberger, no criteria; monic and
/// sorted by leading monomial ascending.
pub fn naive_reduced_gb<F: Field>(gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut g: Vec<Poly<F>> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let Some(first) = gens.first() else { return Vec::new() };
    let ring = first.ring().clone();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let r = naive_nf(&naive_spoly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    if g.iter().any(|p| p.is_unit()) {
        return vec![Poly::one(&ring)];
    }
    // minimal
    let mut min: Vec<Poly<F>> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let dominated = g
            .iter()
            .enumerate()
            .any(|(l, q)| l != k && q.lm().divides(p.lm()) && (q.lm() != p.lm() || l < k));
        if !dominated {
            min.push(make_monic(p));
        }
    }
    // tail-reduce
    let reduced: Vec<Poly<F>> = (0..min.len())
        .map(|k| {
            let others: Vec<Poly<F>> = min
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, q)| q.clone())
                .collect();
            let tail = &min[k] - &lead(&min[k]);
            &lead(&min[k]) + &naive_nf(&tail, &others)
        })
        .collect();
    let mut out = reduced;
    let order = ring.order().clone();
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

pub fn naive_member<F: Field>(f: &Poly<F>, gens: &[Poly<F>]) -> bool {
    naive_nf(f, &naive_reduced_gb(gens)).is_zero()
}

/// `Some(k)` for the least `k <= max_k` with `f^k ∈ (gens)`.
pub fn power_search<F: Field>(f: &Poly<F>, gens: &[Poly<F>], max_k: u32) -> Option<u32> {
    let gb = naive_reduced_gb(gens);
    let mut p = f.clone();
    for k in 1..=max_k {
        if naive_nf(&p, &gb).is_zero() {
            return Some(k);
        }
        p = &p * f;
    }
    None
}

/// Krull dimension by brute force: the largest variable subset `S` such
/// that no leading monomial of the basis uses only variables of `S`.
pub fn brute_dimension<F: Field>(gens: &[Poly<F>]) -> usize {
    let gb = naive_reduced_gb(gens);
    let n = gens[0].ring().nvars();
    let masks: Vec<u32> = gb
        .iter()
        .map(|g| g.lm().support().fold(0u32, |m, v| m | (1 << v)))
        .collect();
    (0u32..1 << n)
        .filter(|s| masks.iter().all(|m| m & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Random polynomial with up to `terms` terms of degree at most `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, ring: &Arc<Ring<PrimeField>>, terms: usize, deg: u16) -> Poly<PrimeField> {
    let n = ring.nvars();
    let field = ring.field();
    let mut acc = Poly::zero(ring);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut exps = vec![0u16; n];
        let mut left = rng.gen_range(0..=deg);
        while left > 0 {
            exps[rng.gen_range(0..n)] += 1;
            left -= 1;
        }
        let c = field.from_i64(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
        acc = &acc + &Poly::monomial(ring, c, Monomial::from_exponents(&exps));
    }
    acc
}

/// Nonconstant random polynomial.
pub fn random_nonconstant<R: Rng>(
    rng: &mut R,
    ring: &Arc<Ring<PrimeField>>,
    terms: usize,
    deg: u16,
) -> Poly<PrimeField> {
    loop {
        let p = random_poly(rng, ring, terms, deg);
        if p.total_degree().unwrap_or(0) > 0 {
            return p;
        }
    }
}
