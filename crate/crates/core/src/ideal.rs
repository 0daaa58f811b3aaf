//! Ideals with a lazily computed reduced Gröbner basis, and the predicates
//! built on it: membership, radical membership (Rabinowitsch), radical
//! containment and equality, intersection, dimension and height.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::IdealError;
use crate::groebner::{self, GroebnerBasis, GroebnerOptions};
use crate::poly::{Field, Monomial, Poly, Ring, TermOrder};

pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Poly<F>>,
    opts: GroebnerOptions,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            opts: self.opts,
            gb,
        }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

/// Outcome of one Rabinowitsch check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadicalEvidence {
    pub in_radical: bool,
    /// Size of the reduced basis of `I + (1 - w f)`.
    pub gb_size: usize,
    pub reductions: u64,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Poly<F>>) -> Result<Self, IdealError> {
        if gens.iter().any(|g| !g.ring().same_as(ring)) {
            return Err(IdealError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            opts: GroebnerOptions::default(),
            gb: OnceLock::new(),
        })
    }

    /// The whole ring.
    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Self::new(ring, vec![Poly::one(ring)]).expect("same ring")
    }

    pub fn with_options(mut self, opts: GroebnerOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn options(&self) -> &GroebnerOptions {
        &self.opts
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    /// Reduced Gröbner basis in the ring's order, computed once.
    pub fn groebner(&self) -> Result<&GroebnerBasis<F>, IdealError> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let gb = groebner::buchberger(&self.ring, &self.gens, &self.opts)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn contains(&self, f: &Poly<F>) -> Result<bool, IdealError> {
        ideal_membership(f, self)
    }

    pub fn is_unit(&self) -> Result<bool, IdealError> {
        Ok(self.groebner()?.is_unit())
    }

    /// Same ideal: identical reduced Gröbner bases.
    pub fn same_ideal(&self, other: &Ideal<F>) -> Result<bool, IdealError> {
        if !self.ring.same_as(&other.ring) {
            return Err(IdealError::RingMismatch);
        }
        Ok(self.groebner()?.basis() == other.groebner()?.basis())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>, IdealError> {
        if !self.ring.same_as(&other.ring) {
            return Err(IdealError::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens)?.with_options(self.opts))
    }

    fn check_poly(&self, f: &Poly<F>) -> Result<(), IdealError> {
        if f.ring().same_as(&self.ring) {
            Ok(())
        } else {
            Err(IdealError::RingMismatch)
        }
    }
}

/// `f ∈ I`: the normal form with respect to the reduced basis vanishes.
pub fn ideal_membership<F: Field>(f: &Poly<F>, ideal: &Ideal<F>) -> Result<bool, IdealError> {
    ideal.check_poly(f)?;
    Ok(ideal.groebner()?.contains(f))
}

/// `f ∈ √I`, decided by `1 ∈ I + (1 - w f)` with a fresh last variable `w`
/// under degrevlex.
pub fn radical_membership<F: Field>(f: &Poly<F>, ideal: &Ideal<F>) -> Result<RadicalEvidence, IdealError> {
    ideal.check_poly(f)?;
    if f.is_zero() {
        return Ok(RadicalEvidence {
            in_radical: true,
            gb_size: 0,
            reductions: 0,
        });
    }
    let ring = &ideal.ring;
    let (ext, added) = ring.append_vars(&["w"], TermOrder::DegRevLex);
    let w = Poly::var(&ext, added[0]);
    let ident: Vec<usize> = (0..ring.nvars()).collect();
    let mut gens: Vec<Poly<F>> = ideal.gens.iter().map(|g| g.remap(&ext, &ident)).collect();
    gens.push(Poly::one(&ext) - w * f.remap(&ext, &ident));
    let opts = GroebnerOptions {
        stop_on_unit: true,
        ..ideal.opts
    };
    let gb = groebner::buchberger(&ext, &gens, &opts)?;
    Ok(RadicalEvidence {
        in_radical: gb.is_unit(),
        gb_size: gb.len(),
        reductions: gb.stats().reductions,
    })
}

/// `I ⊆ √J`, checked generator by generator (in parallel).
pub fn radical_contains<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool, IdealError> {
    if !i.ring.same_as(&j.ring) {
        return Err(IdealError::RingMismatch);
    }
    let results: Vec<Result<bool, IdealError>> = i
        .gens
        .par_iter()
        .map(|g| radical_membership(g, j).map(|e| e.in_radical))
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `√I = √J`.
pub fn radical_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool, IdealError> {
    Ok(radical_contains(i, j)? && radical_contains(j, i)?)
}

/// `I ∩ J` via `(u I + (1 - u) J) ∩ R` with a fresh tag variable `u`
/// eliminated by a block order.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>, IdealError> {
    if !i.ring.same_as(&j.ring) {
        return Err(IdealError::RingMismatch);
    }
    let ring = &i.ring;
    let n = ring.nvars();
    let ext = ring.prepend_vars(&["u"], TermOrder::block(1, ring.order().clone()));
    let shift: Vec<usize> = (1..=n).collect();
    let u = Poly::var(&ext, 0);
    let one_minus_u = Poly::one(&ext) - &u;
    let mut gens: Vec<Poly<F>> = i.gens.iter().map(|g| &u * g.remap(&ext, &shift)).collect();
    gens.extend(j.gens.iter().map(|g| &one_minus_u * g.remap(&ext, &shift)));
    let gb = groebner::buchberger(&ext, &gens, &i.opts)?;
    let contracted: Vec<Poly<F>> = gb
        .basis()
        .iter()
        .filter(|g| g.terms().iter().all(|t| t.mono.exponent(0) == 0))
        .map(|g| {
            Poly::from_terms(
                ring,
                g.terms()
                    .iter()
                    .map(|t| (t.coeff.clone(), Monomial::from_exponents(&t.mono.exponents()[1..]))),
            )
        })
        .collect();
    let result = Ideal::new(ring, contracted.clone())?.with_options(i.opts);
    // the contracted elements already form a Gröbner basis in the ring's order
    let _ = result
        .gb
        .set(groebner::reduce_basis(&groebner::from_known_basis(ring, contracted)));
    Ok(result)
}

/// Krull dimension of `R/I`: the largest set of variables containing the
/// support of no leading monomial of the reduced basis.
pub fn krull_dimension<F: Field>(ideal: &Ideal<F>) -> Result<usize, IdealError> {
    let n = ideal.ring.nvars();
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Err(IdealError::UnitIdeal);
    }
    if n > 64 {
        return Err(IdealError::TooManyVariables(n));
    }
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u64, |acc, v| acc | 1 << v))
        .collect();
    Ok(n - min_transversal(&supports))
}

/// `N - dim(R/I)`.
pub fn height<F: Field>(ideal: &Ideal<F>) -> Result<usize, IdealError> {
    Ok(ideal.ring.nvars() - krull_dimension(ideal)?)
}

/// Size of the smallest variable set meeting every support. Its complement
/// is a maximal independent set, so `dim = N - min_transversal`.
pub(crate) fn min_transversal(supports: &[u64]) -> usize {
    let mut sets: Vec<u64> = supports.to_vec();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    // only inclusion-minimal supports matter
    let minimal: Vec<u64> = sets
        .iter()
        .enumerate()
        .filter(|(k, s)| !sets[..*k].iter().any(|&t| t & !**s == 0))
        .map(|(_, s)| *s)
        .collect();
    let mut best = usize::MAX;
    cover(&minimal, 0, 0, &mut best);
    if best == usize::MAX {
        0
    } else {
        best
    }
}

fn cover(sets: &[u64], chosen: u64, count: usize, best: &mut usize) {
    if count >= *best {
        return;
    }
    // branch on the smallest support not yet met
    let open = sets.iter().filter(|s| **s & chosen == 0).min_by_key(|s| s.count_ones());
    let Some(&s) = open else {
        *best = count;
        return;
    };
    if count + 1 >= *best {
        return;
    }
    let mut bits = s;
    while bits != 0 {
        let v = bits & bits.wrapping_neg();
        cover(sets, chosen | v, count + 1, best);
        bits &= bits - 1;
    }
}
