//! Buchberger's algorithm with the product and chain criteria, multivariate
//! division and reduced Gröbner bases.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::GroebnerError;
use crate::poly::{Field, Monomial, Poly, Ring, Term};

/// Default cap on elementary reduction steps per Gröbner computation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerOptions {
    /// Maximum number of elementary reduction steps.
    pub budget: u64,
    /// Return `{1}` as soon as a nonzero constant appears.
    pub stop_on_unit: bool,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions {
            budget: DEFAULT_BUDGET,
            stop_on_unit: false,
        }
    }
}

impl GroebnerOptions {
    pub fn with_budget(budget: u64) -> Self {
        GroebnerOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub reductions: u64,
    pub pairs_created: u64,
    pub product_criterion: u64,
    pub chain_criterion: u64,
    pub zero_reductions: u64,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    basis: Vec<Poly<F>>,
    reduced: bool,
    stats: GroebnerStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn basis(&self) -> &[Poly<F>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Poly<F>> {
        self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True iff the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_unit())
    }

    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        normal_form(f, &self.basis)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.lm().clone()).collect()
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn unlimited() -> Self {
        Budget {
            used: 0,
            limit: u64::MAX,
        }
    }

    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.used += 1;
        if self.used > self.limit {
            Err(GroebnerError::ResourceLimit { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Full multivariate division remainder of `f` by `divisors`.
///
/// At every step the first divisor (in sequence order) whose leading
/// monomial divides the current leading term is used. No term of the result
/// is divisible by any divisor's leading monomial. Zero divisors are ignored.
pub fn normal_form<F: Field>(f: &Poly<F>, divisors: &[Poly<F>]) -> Poly<F> {
    normal_form_budgeted(f, divisors, &mut Budget::unlimited()).expect("unlimited budget")
}

fn normal_form_budgeted<F: Field>(
    f: &Poly<F>,
    divisors: &[Poly<F>],
    budget: &mut Budget,
) -> Result<Poly<F>, GroebnerError> {
    let ring = f.ring().clone();
    let field = ring.field();
    let divisors: Vec<&Poly<F>> = divisors.iter().filter(|g| !g.is_zero()).collect();
    let mut rem: Vec<Term<F>> = Vec::new();
    let mut work: Vec<Term<F>> = f.terms().to_vec();
    let mut start = 0;
    while start < work.len() {
        let lead = &work[start];
        match divisors.iter().find(|g| g.lm().divides(&lead.mono)) {
            Some(g) => {
                budget.tick()?;
                let m = lead.mono.div(g.lm());
                let c = field.div(&lead.coeff, g.lc()).expect("nonzero leading coefficient");
                let neg = field.neg(&c);
                work = crate::poly::merge_scaled(&ring, &work[start + 1..], &g.terms()[1..], &neg, &m);
                start = 0;
            }
            None => {
                rem.push(lead.clone());
                start += 1;
            }
        }
    }
    Ok(Poly::from_sorted_terms(&ring, rem))
}

/// Result of division with explicit quotients: `f = sum q_i g_i + remainder`.
#[derive(Clone, Debug)]
pub struct Division<F: Field> {
    pub quotients: Vec<Poly<F>>,
    pub remainder: Poly<F>,
}

/// Division tracking quotients. Uses the same divisor-selection rule as
/// [`normal_form`], so the remainders agree.
pub fn divide<F: Field>(f: &Poly<F>, divisors: &[Poly<F>]) -> Division<F> {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut quotients: Vec<Vec<(F::Elem, Monomial)>> = vec![Vec::new(); divisors.len()];
    let mut rem = Vec::new();
    let mut p = f.clone();
    while let Ok((lc, lm)) = p.leading_term() {
        let hit = divisors.iter().position(|g| !g.is_zero() && g.lm().divides(lm));
        match hit {
            Some(k) => {
                let g = &divisors[k];
                let m = lm.div(g.lm());
                let c = field.div(lc, g.lc()).expect("nonzero leading coefficient");
                p = p.sub_mul_term(&c, &m, g);
                quotients[k].push((c, m));
            }
            None => {
                rem.push((lc.clone(), lm.clone()));
                p = &p - &Poly::monomial(&ring, lc.clone(), lm.clone());
            }
        }
    }
    Division {
        quotients: quotients.into_iter().map(|q| Poly::from_terms(&ring, q)).collect(),
        remainder: Poly::from_terms(&ring, rem),
    }
}

/// `lcm/lm(f) * f/lc(f) - lcm/lm(g) * g/lc(g)`.
pub fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let field = f.field();
    let l = f.lm().lcm(g.lm());
    let cf = field.inv(f.lc()).expect("nonzero");
    let cg = field.inv(g.lc()).expect("nonzero");
    let a = f.mul_term(&cf, &l.div(f.lm()));
    a.sub_mul_term(&cg, &l.div(g.lm()), g)
}

/// Checks Buchberger's criterion with no shortcuts: every S-polynomial of
/// every pair reduces to zero.
pub fn is_groebner_basis<F: Field>(polys: &[Poly<F>]) -> bool {
    let g: Vec<Poly<F>> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !normal_form(&s_polynomial(&g[i], &g[j]), &g).is_zero() {
                return false;
            }
        }
    }
    true
}

fn unit_basis<F: Field>(ring: &Arc<Ring<F>>, stats: GroebnerStats) -> GroebnerBasis<F> {
    GroebnerBasis {
        ring: ring.clone(),
        basis: vec![Poly::one(ring)],
        reduced: true,
        stats,
    }
}

// Queue key: (lcm degree, i, j), smallest first.
type PairKey = (u32, usize, usize);

struct State<F: Field> {
    basis: Vec<Poly<F>>,
    live: Vec<bool>,
    pairs: BTreeMap<PairKey, Monomial>,
    stats: GroebnerStats,
}

impl<F: Field> State<F> {
    /// Adds `h` to the basis and updates the pair set with the
    /// Gebauer-Möller criteria (chain criterion in the forms M, F, B_k, and
    /// the product criterion).
    fn insert(&mut self, h: Poly<F>) {
        let new = self.basis.len();
        let h_lm = h.lm().clone();
        self.basis.push(h);
        self.live.push(true);

        let cands: Vec<(usize, Monomial, bool)> = (0..new)
            .filter(|&i| self.live[i])
            .map(|i| {
                let lm = self.basis[i].lm();
                (i, lm.lcm(&h_lm), lm.is_coprime(&h_lm))
            })
            .collect();
        self.stats.pairs_created += cands.len() as u64;
        // keep (i, new) unless a remaining candidate or an already kept pair
        // has an lcm dividing its lcm
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, (i, lcm, coprime)) in cands.iter().enumerate() {
            let dominated =
                cands[k + 1..].iter().any(|(_, l, _)| l.divides(lcm)) || kept.iter().any(|(_, l, _)| l.divides(lcm));
            if *coprime || !dominated {
                kept.push((*i, lcm.clone(), *coprime));
            } else {
                self.stats.chain_criterion += 1;
            }
        }

        let before = self.pairs.len();
        let basis = &self.basis;
        self.pairs.retain(|&(_, i, j), lcm| {
            !(h_lm.divides(lcm) && basis[i].lm().lcm(&h_lm) != *lcm && basis[j].lm().lcm(&h_lm) != *lcm)
        });
        self.stats.chain_criterion += (before - self.pairs.len()) as u64;

        for (i, lcm, coprime) in kept {
            if coprime {
                self.stats.product_criterion += 1;
                continue;
            }
            self.pairs.insert((lcm.degree(), i, new), lcm);
        }
        for i in 0..new {
            if self.live[i] && h_lm.divides(self.basis[i].lm()) {
                self.live[i] = false;
            }
        }
    }

    fn reducers(&self) -> Vec<Poly<F>> {
        self.basis
            .iter()
            .zip(&self.live)
            .filter(|(_, &l)| l)
            .map(|(g, _)| g.clone())
            .collect()
    }
}

/// Computes a Gröbner basis of the ideal generated by `gens` in `ring`.
///
/// Pairs are selected by the normal strategy: smallest lcm degree, then
/// pair indices. This beat sugar selection on the determinantal inputs here.
/// Useless pairs are discarded by the product criterion and by the chain
/// criterion in Gebauer-Möller form. The returned basis is reduced.
pub fn buchberger<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Poly<F>],
    opts: &GroebnerOptions,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let mut budget = Budget {
        used: 0,
        limit: opts.budget,
    };
    let mut state = State {
        basis: Vec::new(),
        live: Vec::new(),
        pairs: BTreeMap::new(),
        stats: GroebnerStats::default(),
    };
    for g in gens {
        if !g.ring().same_as(ring) {
            return Err(GroebnerError::RingMismatch);
        }
        if g.is_zero() {
            continue;
        }
        if g.is_unit() {
            return Ok(unit_basis(ring, state.stats));
        }
        state.insert(g.monic());
    }

    let mut reducers = state.reducers();
    let mut reducers_len = state.basis.len();
    while let Some(((_, i, j), _)) = state.pairs.pop_first() {
        if reducers_len != state.basis.len() {
            reducers = state.reducers();
            reducers_len = state.basis.len();
        }
        let s = s_polynomial(&state.basis[i], &state.basis[j]);
        let used_before = budget.used;
        let h = normal_form_budgeted(&s, &reducers, &mut budget);
        state.stats.reductions += budget.used - used_before;
        let h = h?;
        if h.is_zero() {
            state.stats.zero_reductions += 1;
            continue;
        }
        if h.is_unit() && opts.stop_on_unit {
            return Ok(unit_basis(ring, state.stats));
        }
        state.insert(h.monic());
    }

    let basis: Vec<Poly<F>> = state
        .basis
        .into_iter()
        .zip(state.live)
        .filter(|(_, l)| *l)
        .map(|(g, _)| g)
        .collect();
    let gb = GroebnerBasis {
        ring: ring.clone(),
        basis,
        reduced: false,
        stats: state.stats,
    };
    Ok(reduce_basis(&gb))
}

/// The unique reduced Gröbner basis of the ideal generated by `gb`, which
/// must already be a Gröbner basis. Elements are monic and sorted by
/// leading monomial, smallest first.
pub fn reduce_basis<F: Field>(gb: &GroebnerBasis<F>) -> GroebnerBasis<F> {
    let ring = gb.ring.clone();
    if gb.basis.iter().any(|g| g.is_unit()) {
        return unit_basis(&ring, gb.stats.clone());
    }
    let order = ring.order().clone();
    let mut elems: Vec<Poly<F>> = gb.basis.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    elems.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    // minimalize: drop elements whose leading monomial is a multiple of an
    // earlier (smaller or equal) one
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for g in elems {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let reduced: Vec<Poly<F>> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Poly<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[k], &others).monic()
        })
        .collect();
    GroebnerBasis {
        ring,
        basis: reduced,
        reduced: true,
        stats: gb.stats.clone(),
    }
}

/// Wraps a polynomial list known to be a Gröbner basis.
pub(crate) fn from_known_basis<F: Field>(ring: &Arc<Ring<F>>, basis: Vec<Poly<F>>) -> GroebnerBasis<F> {
    GroebnerBasis {
        ring: ring.clone(),
        basis,
        reduced: false,
        stats: GroebnerStats::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, PrimeField, Rationals, TermOrder};

    fn ring() -> Arc<Ring<Rationals>> {
        Ring::with_names(&["x1", "x2", "x3", "x4", "z1"], Rationals, TermOrder::DegRevLex).unwrap()
    }

    fn p(r: &Arc<Ring<Rationals>>, s: &str) -> Poly<Rationals> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn normal_form_by_variable() {
        let r = ring();
        assert!(normal_form(&p(&r, "x1*z1"), &[p(&r, "x1")]).is_zero());
        assert_eq!(normal_form(&p(&r, "x1*z1 + x2"), &[p(&r, "x1")]), p(&r, "x2"));
    }

    #[test]
    fn single_generator() {
        let r = ring();
        let gb = buchberger(&r, &[p(&r, "x1")], &GroebnerOptions::default()).unwrap();
        assert_eq!(gb.basis(), &[p(&r, "x1")]);
    }

    #[test]
    fn reduce_small_example() {
        let r = ring();
        let gens = vec![p(&r, "x1"), p(&r, "x1*x4 - x2*x3"), p(&r, "x2*x3")];
        let gb = from_known_basis(&r, gens);
        let red = reduce_basis(&gb);
        assert_eq!(red.basis(), &[p(&r, "x1"), p(&r, "x2*x3")]);
        let again = reduce_basis(&red);
        assert_eq!(again.basis(), red.basis());
    }

    #[test]
    fn unit_ideal_collapses() {
        let r = ring();
        let gb = buchberger(&r, &[p(&r, "x1"), p(&r, "x1 + 1")], &GroebnerOptions::default()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.basis(), &[Poly::one(&r)]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = Ring::with_names(&["x", "y", "z"], PrimeField::default(), TermOrder::DegRevLex).unwrap();
        let gens: Vec<_> = ["x^2*y + y*z - 1", "x*y^2 + z^2", "x*y*z - y^2 + x"]
            .iter()
            .map(|s| parse_polynomial(s, &r).unwrap())
            .collect();
        let err = buchberger(&r, &gens, &GroebnerOptions::with_budget(5)).unwrap_err();
        assert_eq!(err, GroebnerError::ResourceLimit { budget: 5 });
        let gb = buchberger(&r, &gens, &GroebnerOptions::default()).unwrap();
        assert!(is_groebner_basis(gb.basis()));
    }

    #[test]
    fn division_identity() {
        let r = ring();
        let gs = vec![p(&r, "x1*x4 - x2*x3"), p(&r, "x1*z1"), p(&r, "x2*z1")];
        let f = p(&r, "x1^2*x4*z1 + 3*x2*x3*x4 - x2*z1^2 + 7");
        let d = divide(&f, &gs);
        let mut recon = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gs) {
            recon = recon + q * g;
        }
        assert_eq!(recon, f);
        assert_eq!(d.remainder, normal_form(&f, &gs));
    }
}
